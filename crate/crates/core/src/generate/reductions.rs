use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::game::UtilityMatrix;
use crate::graph::Graph;
use crate::{Game, Rational};

use super::{fresh_name, int};

/// An undirected graph with non-negative integer edge weights; absent pairs
/// weigh zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: BTreeMap<(usize, usize), u64>,
}

impl WeightedGraph {
    pub fn new<S: Into<String>>(names: Vec<S>, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let graph = Graph::new(names, &pairs)?;
        let weights = edges
            .iter()
            .map(|&(u, v, w)| ((u.min(v), u.max(v)), w))
            .collect();
        Ok(WeightedGraph { graph, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn weight(&self, u: usize, v: usize) -> u64 {
        self.weights
            .get(&(u.min(v), u.max(v)))
            .copied()
            .unwrap_or(0)
    }

    /// Edges as `(u, v, w)` with `u < v`.
    pub fn weighted_edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    /// Total weight of edges crossing between `side` and the rest.
    pub fn cut_weight(&self, side: &[bool]) -> u64 {
        self.weighted_edges()
            .filter(|&(u, v, _)| side[u] != side[v])
            .map(|(_, _, w)| w)
            .sum()
    }
}

fn taken(g: &Graph) -> HashSet<String> {
    g.names().iter().cloned().collect()
}

fn to_i64(t: usize) -> i64 {
    i64::try_from(t).expect("threshold fits in i64")
}

/// Players `extra ++ V`, with `hub` (an index into `extra`) linked to every
/// vertex of `g` and the listed extra edges.
fn hub_graph(g: &Graph, extra: &[&str], links: &[(usize, usize)], hub: usize) -> Result<Graph> {
    let taken = taken(g);
    let k = extra.len();
    let mut names: Vec<String> = extra.iter().map(|b| fresh_name(b, &taken)).collect();
    names.extend(g.names().iter().cloned());
    let mut edges = links.to_vec();
    edges.extend((0..g.len()).map(|v| (hub, k + v)));
    Graph::new(names, &edges)
}

/// The star with center `s` linked to every vertex of `g`, where `s` likes
/// everyone and two vertices like each other exactly when adjacent in `g`.
/// Utilities are symmetric and enemy-oriented: `1` for friends and
/// `-|V|-1 = -|N|` between non-adjacent vertices.
pub fn reduce_clique_enemy_star(g: &Graph) -> Game {
    let graph = hub_graph(g, &["s"], &[], 0).expect("star over fresh names");
    let n = graph.len();
    let enemy = -to_i64(g.len()) - 1;
    let mut u = UtilityMatrix::zeros(n);
    for v in 1..n {
        u.set_mutual(0, v, int(1));
        for w in v + 1..n {
            let value = if g.has_edge(v - 1, w - 1) { 1 } else { enemy };
            u.set_mutual(v, w, int(value));
        }
    }
    u.mark_symmetric().expect("built symmetric");
    Game::additive(graph, u).expect("sizes agree")
}

/// Star with center `b`, leaves `a`, `c` and the vertices of `g`: a strictly
/// core stable partition exists iff `g` has a clique of size `t` (`t >= 2`).
/// Symmetric, with `-1/(t-1)` between adjacent vertices.
pub fn reduce_clique_scr_star(g: &Graph, t: usize) -> Result<Game> {
    if t < 2 {
        return Err(Error::BadParameter(format!("threshold {t} is below 2")));
    }
    let graph = hub_graph(g, &["a", "b", "c"], &[(0, 1), (1, 2)], 1)?;
    let n = graph.len();
    let m = int(to_i64(n) + 1);
    let t = to_i64(t);
    let (a, b, c) = (0, 1, 2);
    let mut u = UtilityMatrix::zeros(n);
    u.set_mutual(a, b, int(t - 1));
    u.set_mutual(c, b, int(t - 1));
    u.set_mutual(a, c, -m);
    for v in 3..n {
        u.set_mutual(a, v, -m);
        u.set_mutual(c, v, -m);
        u.set_mutual(b, v, int(1));
        for w in v + 1..n {
            let value = if g.has_edge(v - 3, w - 3) {
                Rational::new(-1, t - 1)
            } else {
                -m
            };
            u.set_mutual(v, w, value);
        }
    }
    u.mark_symmetric()?;
    Game::additive(graph, u)
}

/// Same star as [`reduce_clique_scr_star`] with asymmetric utilities: an
/// in-neighbor stable (and a Nash stable) partition exists iff `g` has a
/// clique of size `t` (`t >= 1`).
pub fn reduce_clique_ins_star(g: &Graph, t: usize) -> Result<Game> {
    if t < 1 {
        return Err(Error::BadParameter("threshold must be positive".into()));
    }
    let graph = hub_graph(g, &["a", "b", "c"], &[(0, 1), (1, 2)], 1)?;
    let n = graph.len();
    let m = int(to_i64(n) + 1);
    let (a, b, c) = (0, 1, 2);
    let mut u = UtilityMatrix::zeros(n);
    u.set(a, b, int(1));
    u.set(a, c, int(-2));
    u.set(b, a, int(to_i64(t)));
    u.set(c, b, int(2));
    for v in 3..n {
        for x in [a, c] {
            u.set(x, v, -m);
            u.set(v, x, -m);
        }
        u.set(b, v, int(1));
        for w in 3..n {
            if v != w && !g.has_edge(v - 3, w - 3) {
                u.set(v, w, -m);
            }
        }
    }
    Game::additive(graph, u)
}

/// The tree with spine `a-b-c-d-e` and the vertices of `g` hanging off `c`:
/// an IR-in-neighbor stable partition exists iff `g` has a clique of size
/// `t` (`t >= 1`).
pub fn reduce_clique_irins_tree(g: &Graph, t: usize) -> Result<Game> {
    if t < 1 {
        return Err(Error::BadParameter("threshold must be positive".into()));
    }
    let graph = hub_graph(
        g,
        &["a", "b", "c", "d", "e"],
        &[(0, 1), (1, 2), (2, 3), (3, 4)],
        2,
    )?;
    let n = graph.len();
    let m = to_i64(n) + 1;
    let t = to_i64(t);
    let (a, b, c, d, e) = (0, 1, 2, 3, 4);
    let spine = [
        (a, b, -1),
        (a, c, 2),
        (b, d, -m),
        (c, a, -t),
        (c, b, t),
        (c, d, t),
        (c, e, -t),
        (d, b, -m),
        (e, c, 2),
        (e, d, -1),
    ];
    let mut u = UtilityMatrix::zeros(n);
    for (i, j, v) in spine {
        u.set(i, j, int(v));
    }
    for v in 5..n {
        for x in [a, b, d, e] {
            u.set(x, v, int(-m));
            u.set(v, x, int(-m));
        }
        u.set(c, v, int(1));
        for w in 5..n {
            if v != w && !g.has_edge(v - 5, w - 5) {
                u.set(v, w, int(-m));
            }
        }
    }
    Game::additive(graph, u)
}

/// The symmetric star with center `s` over the nodes of `wg`, where
/// `U(u,s)` is the total weight at `u` and adjacent nodes get `-2 w(u,v)`.
/// In-neighbor stable partitions correspond to local max cuts through the
/// set of nodes grouped with `s`.
pub fn reduce_maxcut_star(wg: &WeightedGraph) -> Game {
    let g = wg.graph();
    let graph = hub_graph(g, &["s"], &[], 0).expect("star over fresh names");
    let n = graph.len();
    let mut u = UtilityMatrix::zeros(n);
    for x in 0..g.len() {
        let total: u64 = (0..g.len()).map(|y| wg.weight(x, y)).sum();
        u.set_mutual(0, x + 1, int(weight_i64(total)));
    }
    for (x, y, w) in wg.weighted_edges() {
        u.set_mutual(x + 1, y + 1, int(-2 * weight_i64(w)));
    }
    u.mark_symmetric().expect("built symmetric");
    Game::additive(graph, u).expect("sizes agree")
}

fn weight_i64(w: u64) -> i64 {
    i64::try_from(w).expect("weight fits in i64")
}

/// `g` plus a disjoint fresh clique on `s` vertices. The maximum clique of
/// the result is unique exactly when `s` exceeds the clique number of `g`.
pub fn unique_clique_family(g: &Graph, s: usize) -> Result<Graph> {
    if s == 0 {
        return Err(Error::BadParameter("clique size must be positive".into()));
    }
    let taken = taken(g);
    let base = g.len();
    let mut names: Vec<String> = g.names().to_vec();
    names.extend((1..=s).map(|k| fresh_name(&format!("k{k}"), &taken)));
    let mut edges = g.edges().to_vec();
    for x in 0..s {
        for y in x + 1..s {
            edges.push((base + x, base + y));
        }
    }
    Graph::new(names, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::new(vec!["x", "y", "z"], &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn enemy_star_is_enemy_oriented() {
        let game = reduce_clique_enemy_star(&Graph::new(vec!["s", "t"], &[]).unwrap());
        let u = game.utilities().unwrap();
        assert!(u.is_symmetric() && u.is_enemy_oriented());
        assert_eq!(game.graph().name(0), "s'");
        assert_eq!(*u.get(1, 2), int(-3));
    }

    #[test]
    fn scr_star_values() {
        let game = reduce_clique_scr_star(&k3(), 3).unwrap();
        let u = game.utilities().unwrap();
        assert!(u.check_symmetric());
        assert_eq!(*u.get(3, 4), Rational::new(-1, 2));
        assert_eq!(*u.get(0, 2), int(-7));
        assert_eq!(game.graph().star_center(), Some(1));
        assert!(reduce_clique_scr_star(&k3(), 1).is_err());
    }

    #[test]
    fn irins_tree_shape() {
        let game = reduce_clique_irins_tree(&k3(), 2).unwrap();
        assert!(game.graph().is_tree());
        assert_eq!(game.graph().degree(2), 5);
        let u = game.utilities().unwrap();
        assert_eq!(*u.get(2, 0), int(-2));
        assert_eq!(*u.get(5, 6), int(0));
    }

    #[test]
    fn maxcut_star_values() {
        let wg = WeightedGraph::new(vec!["u", "v", "w"], &[(0, 1, 2), (1, 2, 3)]).unwrap();
        let game = reduce_maxcut_star(&wg);
        let u = game.utilities().unwrap();
        assert_eq!(*u.get(2, 0), int(5));
        assert_eq!(*u.get(2, 3), int(-6));
        assert_eq!(*u.get(1, 3), int(0));
        assert_eq!(wg.cut_weight(&[true, false, true]), 5);
    }

    #[test]
    fn unique_clique_sizes() {
        let h = unique_clique_family(&k3(), 4).unwrap();
        assert_eq!(h.len(), 7);
        assert_eq!(h.edges().len(), 3 + 6);
        assert!(unique_clique_family(&k3(), 0).is_err());
    }
}
