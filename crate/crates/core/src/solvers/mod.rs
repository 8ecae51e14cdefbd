//! Polynomial-time constructions for acyclic communication graphs.

mod dp;
mod guarantee;
mod individual;
mod star;

pub use dp::{dp_table, solve_dp, DpEntry, DpTable};
pub use guarantee::{guarantee_levels, solve_core, solve_core_is, GuaranteeTable};
pub use individual::{solve_is, solve_is_report, BlockChange, IsReport, IsSolverState};
pub use star::{star_greedy_enemy_ns, star_greedy_ir_ins};
