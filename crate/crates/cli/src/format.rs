//! JSON files for games, graphs, weighted graphs and partitions.
//!
//! A game file lists `players`, `edges` as name pairs, and `preferences`,
//! either additive (`"p/q"` or integer strings, missing entries zero) or
//! explicit rankings (tiers best first, each coalition an array of names).
//! A graph file is a game file without preferences; a weighted graph file
//! gives edges as `[u, v, w]`.

use std::collections::BTreeMap;
use std::fmt;

use hedonic_core::{
    Coalition, ExplicitPreferences, Game, Graph, Partition, Preferences, Rational, UtilityMatrix,
    WeightedGraph,
};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError(format!("malformed JSON: {e}"))
    }
}

impl From<hedonic_core::Error> for FormatError {
    fn from(e: hedonic_core::Error) -> Self {
        FormatError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, FormatError>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Text(String),
    Int(i64),
}

impl Number {
    fn parse(&self) -> Result<Rational> {
        match self {
            Number::Int(v) => Ok(Rational::from_integer(*v)),
            Number::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || FormatError(format!("not a rational number: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeEntry {
    Weighted(String, String, u64),
    Pair(String, String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PreferencesFile {
    Additive {
        #[serde(default)]
        symmetric: bool,
        #[serde(default)]
        utilities: BTreeMap<String, BTreeMap<String, Number>>,
    },
    Explicit {
        rankings: BTreeMap<String, Vec<Vec<Vec<String>>>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GameFile {
    pub players: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preferences: Option<PreferencesFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionFile {
    pub partition: Vec<Vec<String>>,
}

fn index(graph: &Graph, name: &str) -> Result<usize> {
    graph
        .index_of(name)
        .ok_or_else(|| FormatError(format!("unknown player {name:?}")))
}

fn coalition(graph: &Graph, names: &[String]) -> Result<Coalition> {
    let members = names
        .iter()
        .map(|n| index(graph, n))
        .collect::<Result<Vec<_>>>()?;
    let len = members.len();
    let x = Coalition::new(members)?;
    if x.len() != len {
        return Err(FormatError(format!("coalition {names:?} repeats a player")));
    }
    Ok(x)
}

pub fn coalition_names(graph: &Graph, x: &Coalition) -> Vec<String> {
    x.iter().map(|p| graph.name(p).to_string()).collect()
}

impl GameFile {
    fn graph(&self) -> Result<Graph> {
        let placeholder = Graph::new(self.players.clone(), &[])?;
        let edges = self
            .edges
            .iter()
            .map(|e| match e {
                EdgeEntry::Pair(u, v) | EdgeEntry::Weighted(u, v, _) => {
                    Ok((index(&placeholder, u)?, index(&placeholder, v)?))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Graph::new(self.players.clone(), &edges)?)
    }

    pub fn to_graph(&self) -> Result<Graph> {
        self.graph()
    }

    pub fn to_weighted_graph(&self) -> Result<WeightedGraph> {
        let graph = self.graph()?;
        let edges = self
            .edges
            .iter()
            .map(|e| match e {
                EdgeEntry::Weighted(u, v, w) => Ok((index(&graph, u)?, index(&graph, v)?, *w)),
                EdgeEntry::Pair(u, v) => Err(FormatError(format!("edge [{u}, {v}] has no weight"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightedGraph::new(self.players.clone(), &edges)?)
    }

    pub fn to_game(&self) -> Result<Game> {
        let graph = self.graph()?;
        let n = graph.len();
        let prefs = self
            .preferences
            .as_ref()
            .ok_or_else(|| FormatError("game file has no preferences".into()))?;
        match prefs {
            PreferencesFile::Additive {
                symmetric,
                utilities,
            } => {
                let mut entries = Vec::new();
                for (i, row) in utilities {
                    let i = index(&graph, i)?;
                    for (j, v) in row {
                        entries.push((i, index(&graph, j)?, v.parse()?));
                    }
                }
                let u = UtilityMatrix::from_entries(n, entries, *symmetric)?;
                Ok(Game::additive(graph, u)?)
            }
            PreferencesFile::Explicit { rankings } => {
                let mut tiers = vec![Vec::new(); n];
                for (i, player_tiers) in rankings {
                    let p = index(&graph, i)?;
                    tiers[p] = player_tiers
                        .iter()
                        .map(|tier| tier.iter().map(|x| coalition(&graph, x)).collect())
                        .collect::<Result<Vec<Vec<Coalition>>>>()?;
                }
                let explicit = ExplicitPreferences::new(&graph, tiers)?;
                Ok(Game::explicit(graph, explicit)?)
            }
        }
    }

    pub fn from_graph(graph: &Graph) -> Self {
        GameFile {
            players: graph.names().to_vec(),
            edges: graph
                .edges()
                .iter()
                .map(|&(u, v)| EdgeEntry::Pair(graph.name(u).into(), graph.name(v).into()))
                .collect(),
            preferences: None,
        }
    }

    pub fn from_weighted_graph(wg: &WeightedGraph) -> Self {
        let g = wg.graph();
        GameFile {
            players: g.names().to_vec(),
            edges: wg
                .weighted_edges()
                .map(|(u, v, w)| EdgeEntry::Weighted(g.name(u).into(), g.name(v).into(), w))
                .collect(),
            preferences: None,
        }
    }

    pub fn from_game(game: &Game) -> Self {
        let graph = game.graph();
        let mut file = GameFile::from_graph(graph);
        let prefs = match game.preferences() {
            Preferences::Additive(u) => {
                let mut utilities = BTreeMap::new();
                for i in graph.players() {
                    let row: BTreeMap<String, Number> = graph
                        .players()
                        .filter(|&j| j != i && *u.get(i, j) != Rational::from_integer(0))
                        .map(|j| {
                            (
                                graph.name(j).to_string(),
                                Number::Text(u.get(i, j).to_string()),
                            )
                        })
                        .collect();
                    if !row.is_empty() {
                        utilities.insert(graph.name(i).to_string(), row);
                    }
                }
                PreferencesFile::Additive {
                    symmetric: u.is_symmetric(),
                    utilities,
                }
            }
            Preferences::Explicit(e) => PreferencesFile::Explicit {
                rankings: graph
                    .players()
                    .map(|i| {
                        let tiers = e
                            .tiers(i)
                            .iter()
                            .map(|tier| tier.iter().map(|x| coalition_names(graph, x)).collect())
                            .collect();
                        (graph.name(i).to_string(), tiers)
                    })
                    .collect(),
            },
        };
        file.preferences = Some(prefs);
        file
    }
}

pub fn parse_game(text: &str) -> Result<Game> {
    serde_json::from_str::<GameFile>(text)?.to_game()
}

pub fn game_to_json(game: &Game) -> String {
    serde_json::to_string_pretty(&GameFile::from_game(game)).expect("serializable")
}

pub fn parse_partition(graph: &Graph, text: &str) -> Result<Partition> {
    let file: PartitionFile = serde_json::from_str(text)?;
    let blocks = file
        .partition
        .iter()
        .map(|b| coalition(graph, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::new(graph.len(), blocks)?)
}

pub fn partition_names(graph: &Graph, p: &Partition) -> Vec<Vec<String>> {
    p.blocks()
        .iter()
        .map(|b| coalition_names(graph, b))
        .collect()
}

/// `{l, c} {r}`.
pub fn partition_display(graph: &Graph, p: &Partition) -> String {
    p.blocks()
        .iter()
        .map(|b| coalition_display(graph, b))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn coalition_display(graph: &Graph, x: &Coalition) -> String {
    format!("{{{}}}", coalition_names(graph, x).join(", "))
}
