//! Communication graphs, their rooted orientations, and connected-subset
//! enumeration.

use std::collections::{HashMap, VecDeque};

use crate::coalition::Coalition;
use crate::error::{Error, Result};

/// Default ceiling on how many connected subsets a single enumeration may
/// produce before giving up with [`Error::CapExceeded`].
pub const DEFAULT_SUBSET_CAP: usize = 1_000_000;

/// Undirected simple graph over named players.
///
/// Players are addressed by dense indices `0..n`; names are only kept for
/// input and output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

/// Most specific shape a graph has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Path,
    Star,
    Tree,
    Forest,
    Cyclic,
}

impl Topology {
    pub fn is_acyclic(self) -> bool {
        self != Topology::Cyclic
    }
}

impl Graph {
    pub fn new<S: Into<String>>(names: Vec<S>, edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidGraph(
                "a graph needs at least one player".into(),
            ));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate player `{name}`")));
            }
        }
        let n = names.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut canonical = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on `{}`", names[u])));
            }
            canonical.push((u.min(v), u.max(v)));
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            let (u, v) = w[0];
            return Err(Error::InvalidGraph(format!(
                "duplicate edge `{}`-`{}`",
                names[u], names[v]
            )));
        }
        for &(u, v) in &canonical {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            names,
            index,
            adjacency,
            edges: canonical,
        })
    }

    pub fn from_named_edges<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut indexed = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let find = |s: &S| {
                lookup
                    .get(s.as_ref())
                    .copied()
                    .ok_or_else(|| Error::InvalidGraph(format!("unknown player `{}`", s.as_ref())))
            };
            indexed.push((find(u)?, find(v)?));
        }
        Graph::new(names, &indexed)
    }

    /// Path `0 - 1 - ... - (n-1)` with the given names.
    pub fn path<S: Into<String>>(names: Vec<S>) -> Result<Self> {
        let n = names.len();
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(names, &edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn players(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn name(&self, player: usize) -> &str {
        &self.names[player]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn neighbors(&self, player: usize) -> &[usize] {
        &self.adjacency[player]
    }

    pub fn degree(&self, player: usize) -> usize {
        self.adjacency[player].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().len() == self.len()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.len() && self.components().len() == 1
    }

    /// Center of a star, if the graph is one. Ties (one- and two-node
    /// graphs) resolve to the lowest index.
    pub fn star_center(&self) -> Option<usize> {
        if !self.is_tree() {
            return None;
        }
        self.players().find(|&c| self.degree(c) + 1 == self.len())
    }

    pub fn classify(&self) -> Topology {
        if !self.is_forest() {
            return Topology::Cyclic;
        }
        if self.components().len() > 1 {
            return Topology::Forest;
        }
        if self.players().all(|p| self.degree(p) <= 2) {
            Topology::Path
        } else if self.star_center().is_some() {
            Topology::Star
        } else {
            Topology::Tree
        }
    }

    /// True iff the subgraph induced by `x` is connected.
    pub fn is_connected(&self, x: &Coalition) -> bool {
        let members = x.members();
        if members.len() == 1 {
            return true;
        }
        let mut seen = vec![false; members.len()];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut reached = 1;
        while let Some(k) = stack.pop() {
            for &v in &self.adjacency[members[k]] {
                if let Ok(pos) = members.binary_search(&v) {
                    if !seen[pos] {
                        seen[pos] = true;
                        reached += 1;
                        stack.push(pos);
                    }
                }
            }
        }
        reached == members.len()
    }

    /// Splits `x` into the connected components of its induced subgraph.
    pub fn connected_parts(&self, x: &Coalition) -> Vec<Coalition> {
        let members = x.members();
        let mut seen = vec![false; members.len()];
        let mut parts = Vec::new();
        for start in 0..members.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut part = vec![members[start]];
            let mut stack = vec![start];
            while let Some(k) = stack.pop() {
                for &v in &self.adjacency[members[k]] {
                    if let Ok(pos) = members.binary_search(&v) {
                        if !seen[pos] {
                            seen[pos] = true;
                            part.push(v);
                            stack.push(pos);
                        }
                    }
                }
            }
            part.sort_unstable();
            parts.push(Coalition::from_sorted(part));
        }
        parts
    }

    /// Every connected subset, optionally only those containing `anchor`
    /// and/or contained in `within`, each exactly once, in canonical
    /// coalition order.
    pub fn connected_subsets(
        &self,
        anchor: Option<usize>,
        within: Option<&Coalition>,
        cap: usize,
    ) -> Result<Vec<Coalition>> {
        let n = self.len();
        let mut allowed = vec![within.is_none(); n];
        if let Some(w) = within {
            for p in w.iter() {
                allowed[p] = true;
            }
        }
        let mut out = Vec::new();
        match anchor {
            Some(a) => {
                if allowed[a] {
                    let mut grower = Grower::new(self, allowed, cap);
                    grower.run(a, &mut out)?;
                }
            }
            None => {
                let mut grower = Grower::new(self, allowed, cap);
                for a in 0..n {
                    if !grower.allowed[a] {
                        continue;
                    }
                    grower.run(a, &mut out)?;
                    // sets anchored at `a` are done; later anchors must avoid it
                    grower.allowed[a] = false;
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Number of connected subsets, counted without sorting.
    pub fn count_connected_subsets(&self, cap: usize) -> Result<usize> {
        Ok(self.connected_subsets(None, None, cap)?.len())
    }
}

/// Grows connected sets from an anchor by branching on each frontier node:
/// take it (its unseen neighbours join the frontier) or ban it.
struct Grower<'g> {
    graph: &'g Graph,
    allowed: Vec<bool>,
    in_set: Vec<bool>,
    on_frontier: Vec<bool>,
    banned: Vec<bool>,
    current: Vec<usize>,
    frontier: Vec<usize>,
    cap: usize,
}

impl<'g> Grower<'g> {
    fn new(graph: &'g Graph, allowed: Vec<bool>, cap: usize) -> Self {
        let n = graph.len();
        Grower {
            graph,
            allowed,
            in_set: vec![false; n],
            on_frontier: vec![false; n],
            banned: vec![false; n],
            current: Vec::new(),
            frontier: Vec::new(),
            cap,
        }
    }

    fn run(&mut self, anchor: usize, out: &mut Vec<Coalition>) -> Result<()> {
        self.include(anchor);
        let pushed = self.push_neighbours(anchor);
        let result = self.recurse(out);
        self.pop_neighbours(pushed);
        self.exclude_last(anchor);
        result
    }

    fn include(&mut self, v: usize) {
        self.in_set[v] = true;
        self.current.push(v);
    }

    fn exclude_last(&mut self, v: usize) {
        self.in_set[v] = false;
        self.current.pop();
    }

    fn push_neighbours(&mut self, v: usize) -> usize {
        let mut pushed = 0;
        for &u in self.graph.neighbors(v) {
            if self.allowed[u] && !self.in_set[u] && !self.on_frontier[u] && !self.banned[u] {
                self.on_frontier[u] = true;
                self.frontier.push(u);
                pushed += 1;
            }
        }
        pushed
    }

    fn pop_neighbours(&mut self, pushed: usize) {
        for _ in 0..pushed {
            let u = self.frontier.pop().expect("frontier underflow");
            self.on_frontier[u] = false;
        }
    }

    fn recurse(&mut self, out: &mut Vec<Coalition>) -> Result<()> {
        let Some(w) = self.frontier.pop() else {
            if out.len() >= self.cap {
                return Err(Error::CapExceeded { limit: self.cap });
            }
            let mut members = self.current.clone();
            members.sort_unstable();
            out.push(Coalition::from_sorted(members));
            return Ok(());
        };
        self.on_frontier[w] = false;

        self.include(w);
        let pushed = self.push_neighbours(w);
        let taken = self.recurse(out);
        self.pop_neighbours(pushed);
        self.exclude_last(w);

        let skipped = if taken.is_ok() {
            self.banned[w] = true;
            let r = self.recurse(out);
            self.banned[w] = false;
            r
        } else {
            taken
        };

        self.on_frontier[w] = true;
        self.frontier.push(w);
        skipped
    }
}

/// Orientation of a forest away from one chosen root per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    roots: Vec<usize>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    height: Vec<usize>,
    // pre-order interval of each subtree
    enter: Vec<usize>,
    exit: Vec<usize>,
    preorder: Vec<usize>,
}

impl RootedTree {
    /// Roots a tree at `root`.
    pub fn new(graph: &Graph, root: usize) -> Result<Self> {
        if root >= graph.len() {
            return Err(Error::BadParameter(format!("root {root} out of range")));
        }
        if !graph.is_tree() {
            return Err(Error::NotATree);
        }
        Ok(Self::orient(graph, &[root]))
    }

    /// Roots every component of a forest. `root` picks the root of its own
    /// component; every other component is rooted at its lowest index.
    pub fn forest(graph: &Graph, root: Option<usize>) -> Result<Self> {
        if let Some(r) = root {
            if r >= graph.len() {
                return Err(Error::BadParameter(format!("root {r} out of range")));
            }
        }
        if !graph.is_forest() {
            return Err(Error::NotAForest);
        }
        let roots: Vec<usize> = graph
            .components()
            .into_iter()
            .map(|comp| match root {
                Some(r) if comp.binary_search(&r).is_ok() => r,
                _ => comp[0],
            })
            .collect();
        Ok(Self::orient(graph, &roots))
    }

    fn orient(graph: &Graph, roots: &[usize]) -> Self {
        let n = graph.len();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut visited = vec![false; n];
        let mut bfs = Vec::with_capacity(n);
        for &r in roots {
            visited[r] = true;
            let mut queue = VecDeque::from([r]);
            while let Some(u) = queue.pop_front() {
                bfs.push(u);
                for &v in graph.neighbors(u) {
                    if !visited[v] {
                        visited[v] = true;
                        parent[v] = Some(u);
                        children[u].push(v);
                        queue.push_back(v);
                    }
                }
            }
        }
        let mut height = vec![0usize; n];
        for &u in bfs.iter().rev() {
            if let Some(p) = parent[u] {
                height[p] = height[p].max(height[u] + 1);
            }
        }
        let mut enter = vec![0; n];
        let mut exit = vec![0; n];
        let mut preorder = Vec::with_capacity(n);
        for &r in roots {
            // iterative DFS; children visited in ascending order
            let mut stack = vec![(r, 0usize)];
            enter[r] = preorder.len();
            preorder.push(r);
            while let Some(&mut (u, ref mut next)) = stack.last_mut() {
                if let Some(&c) = children[u].get(*next) {
                    *next += 1;
                    enter[c] = preorder.len();
                    preorder.push(c);
                    stack.push((c, 0));
                } else {
                    exit[u] = preorder.len();
                    stack.pop();
                }
            }
        }
        RootedTree {
            roots: roots.to_vec(),
            parent,
            children,
            height,
            enter,
            exit,
            preorder,
        }
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn root(&self) -> usize {
        self.roots[0]
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    pub fn height(&self, node: usize) -> usize {
        self.height[node]
    }

    /// True iff `node` lies in the subtree of `ancestor` (inclusive).
    pub fn in_subtree(&self, node: usize, ancestor: usize) -> bool {
        self.enter[ancestor] <= self.enter[node] && self.enter[node] < self.exit[ancestor]
    }

    /// `node` together with everything below it.
    pub fn subtree(&self, node: usize) -> Coalition {
        let slice = &self.preorder[self.enter[node]..self.exit[node]];
        Coalition::new(slice.iter().copied()).expect("subtree contains its root")
    }

    /// Nodes outside `x` whose parent lies in `x`, ascending.
    pub fn children_of_set(&self, x: &Coalition) -> Vec<usize> {
        let mut out: Vec<usize> = x
            .iter()
            .flat_map(|p| self.children[p].iter().copied())
            .filter(|&c| !x.contains(c))
            .collect();
        out.sort_unstable();
        out
    }

    /// The unique member of a connected `x` closest to its root.
    pub fn top(&self, x: &Coalition) -> usize {
        x.iter()
            .find(|&p| self.parent[p].is_none_or(|q| !x.contains(q)))
            .expect("connected coalition has a top node")
    }

    /// All nodes ordered by height, ties by index: the bottom-up sweep order.
    pub fn bottom_up(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.parent.len()).collect();
        order.sort_by_key(|&u| (self.height[u], u));
        order
    }
}
