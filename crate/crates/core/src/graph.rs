//! Finite directed multigraphs over an ordered vertex basis.
//!
//! Vertices carry string names at the interface and are addressed by dense
//! indices internally. The input order of the vertices is the basis order of
//! every matrix derived from the graph. Parallel edges are kept as distinct
//! edges with distinct ids.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Suffix marking a ghost (reversed) edge.
pub const GHOST_SUFFIX: char = '*';

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

impl Edge {
    pub fn is_ghost(&self) -> bool {
        self.id.ends_with(GHOST_SUFFIX)
    }
}

/// Toggles the ghost marker, so that starring twice gives back the original id.
fn ghost_id(id: &str) -> String {
    match id.strip_suffix(GHOST_SUFFIX) {
        Some(base) => base.to_string(),
        None => format!("{id}{GHOST_SUFFIX}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let n = vertices.len();
        let mut ids = HashSet::new();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            for index in [e.src, e.dst] {
                if index >= n {
                    return Err(Error::VertexOutOfRange { index, len: n });
                }
            }
            if !ids.insert(e.id.as_str()) {
                return Err(Error::DuplicateEdge(e.id.clone()));
            }
            out[e.src].push(k);
            inc[e.dst].push(k);
        }
        Ok(Graph { vertices, edges, out, inc })
    }

    /// A graph with vertices named `v1 .. vn` and no edges.
    pub fn edgeless(n: usize) -> Self {
        Graph::new(default_names(n), Vec::new()).expect("generated names are distinct")
    }

    /// Builds a graph from an adjacency matrix, naming the vertices `v1 .. vn`.
    pub fn from_adjacency(rows: &[Vec<u64>]) -> Result<Self> {
        Self::from_named_adjacency(default_names(rows.len()), rows)
    }

    /// Builds a graph from an adjacency matrix. Entry `(i, j)` becomes that
    /// many parallel edges `v_i -> v_j`, with ids `e0, e1, ..` in row-major order.
    pub fn from_named_adjacency(names: Vec<String>, rows: &[Vec<u64>]) -> Result<Self> {
        let n = names.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!(
                "adjacency matrix must be {n}x{n} to match the vertex list"
            )));
        }
        let mut edges = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, &count) in row.iter().enumerate() {
                for _ in 0..count {
                    let id = format!("e{}", edges.len());
                    edges.push(Edge { id, src: i, dst: j });
                }
            }
        }
        Graph::new(names, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { index: v, len: self.vertex_count() })
        }
    }

    /// The edges emitted by `v`, in input order.
    pub fn out_edges(&self, v: usize) -> Result<Vec<&Edge>> {
        self.check(v)?;
        Ok(self.out[v].iter().map(|&k| &self.edges[k]).collect())
    }

    /// Indices (into [`Graph::edges`]) of the edges emitted by `v`.
    pub fn out_edge_indices(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Indices of the edges received by `v`.
    pub fn in_edge_indices(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc[v].len()
    }

    pub fn is_sink(&self, v: usize) -> Result<bool> {
        self.check(v)?;
        Ok(self.out[v].is_empty())
    }

    pub fn is_source(&self, v: usize) -> Result<bool> {
        self.check(v)?;
        Ok(self.inc[v].is_empty())
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.out[v].is_empty()).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.inc[v].is_empty()).collect()
    }

    /// Distinct out-neighbours of `v`.
    pub fn successors(&self, v: usize) -> BTreeSet<usize> {
        self.out[v].iter().map(|&k| self.edges[k].dst).collect()
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.vertex_count())
    }

    /// Parses a vertex set given by names.
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        let idx = names
            .iter()
            .map(|n| self.vertex_index(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        VertexSet::new(self.vertex_count(), idx)
    }

    pub fn set_names(&self, h: &VertexSet) -> Vec<String> {
        h.iter().map(|v| self.vertices[v].clone()).collect()
    }

    /// The subgraph on `h`: vertices of `h` in basis order, and the edges with
    /// both endpoints in `h`. Edge ids are preserved.
    pub fn induced_subgraph(&self, h: &VertexSet) -> Graph {
        self.restrict(h, |e| h.contains(e.src) && h.contains(e.dst))
    }

    fn restrict(&self, keep: &VertexSet, edge_filter: impl Fn(&Edge) -> bool) -> Graph {
        let mut position = vec![usize::MAX; self.vertex_count()];
        for (new, old) in keep.iter().enumerate() {
            position[old] = new;
        }
        let vertices = keep.iter().map(|v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| edge_filter(e))
            .map(|e| Edge { id: e.id.clone(), src: position[e.src], dst: position[e.dst] })
            .collect();
        Graph::new(vertices, edges).expect("restriction of a valid graph")
    }

    /// The quotient graph `E/H`: vertices outside `h`, edges avoiding `h`.
    ///
    /// With `checked` set, `h` must be hereditary and saturated.
    pub fn quotient_graph(&self, h: &VertexSet, checked: bool) -> Result<Graph> {
        if checked && !crate::ideals::is_hereditary_saturated(self, h) {
            return Err(Error::NotHereditarySaturated(format!(
                "{:?}",
                self.set_names(h)
            )));
        }
        let rest = h.complement();
        Ok(self.restrict(&rest, |e| !h.contains(e.src) && !h.contains(e.dst)))
    }

    /// The quotient `big / small` for nested vertex sets: vertices of
    /// `big \ small` and the edges running between them. No saturation check
    /// is made.
    pub fn quotient_between(&self, small: &VertexSet, big: &VertexSet) -> Graph {
        let keep = big.difference(small);
        self.restrict(&keep, |e| keep.contains(e.src) && keep.contains(e.dst))
    }

    /// The opposite graph: every edge reversed, ids starred.
    pub fn opposite(&self) -> Graph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { id: ghost_id(&e.id), src: e.dst, dst: e.src })
            .collect();
        Graph::new(self.vertices.clone(), edges).expect("reversal keeps ids distinct")
    }

    /// The double graph: the edges of the graph followed by all ghost edges.
    pub fn double(&self) -> Result<Graph> {
        let mut edges = self.edges.clone();
        edges.extend(self.opposite().edges);
        Graph::new(self.vertices.clone(), edges)
    }

    /// Reorders the vertex basis: vertex `order[i]` becomes vertex `i`.
    pub fn relabel(&self, order: &Permutation) -> Result<Graph> {
        if order.len() != self.vertex_count() {
            return Err(Error::InvalidPermutation {
                len: self.vertex_count(),
                detail: format!("permutation has length {}", order.len()),
            });
        }
        let inverse = order.inverse();
        let vertices = order.iter().map(|v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { id: e.id.clone(), src: inverse[e.src], dst: inverse[e.dst] })
            .collect();
        Graph::new(vertices, edges)
    }

    /// Vertices reachable from `v` by a path of length >= 0.
    pub fn reachable_from(&self, v: usize) -> VertexSet {
        let seen = self.search(v, |g, u| g.out[u].iter().map(|&k| g.edges[k].dst).collect());
        VertexSet::from_flags(&seen)
    }

    /// Vertices from which `v` is reachable.
    pub fn reaching(&self, v: usize) -> VertexSet {
        let seen = self.search(v, |g, u| g.inc[u].iter().map(|&k| g.edges[k].src).collect());
        VertexSet::from_flags(&seen)
    }

    fn search(&self, start: usize, next: impl Fn(&Self, usize) -> Vec<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            for w in next(self, u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Every ordered pair of vertices is joined by a path. A graph with at
    /// most one vertex counts as strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        self.reachable_from(0).len() == n && self.reaching(0).len() == n
    }

    /// All vertex-simple cycles, as edge sequences.
    ///
    /// Each cycle is rotated to start at its smallest vertex. Parallel edges
    /// give distinct cycles. Output is sorted by vertex sequence, then by
    /// edge indices.
    pub fn find_all_cycles(&self) -> Vec<CycleSeq> {
        let n = self.vertex_count();
        let mut found = Vec::new();
        let mut on_path = vec![false; n];
        let mut edges = Vec::new();
        for start in 0..n {
            on_path[start] = true;
            self.extend_cycles(start, start, &mut on_path, &mut edges, &mut found);
            on_path[start] = false;
        }
        found.sort_by(|a: &CycleSeq, b: &CycleSeq| {
            a.vertices.cmp(&b.vertices).then_with(|| a.edges.cmp(&b.edges))
        });
        found
    }

    fn extend_cycles(
        &self,
        start: usize,
        at: usize,
        on_path: &mut [bool],
        edges: &mut Vec<usize>,
        found: &mut Vec<CycleSeq>,
    ) {
        for &k in &self.out[at] {
            let next = self.edges[k].dst;
            if next == start {
                edges.push(k);
                found.push(CycleSeq::from_edges_unchecked(self, edges.clone()));
                edges.pop();
            } else if next > start && !on_path[next] {
                on_path[next] = true;
                edges.push(k);
                self.extend_cycles(start, next, on_path, edges, found);
                edges.pop();
                on_path[next] = false;
            }
        }
    }

    /// Strongly connected components, each sorted, listed by smallest member.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        // Kosaraju: finishing order on the graph, then sweeps on the reverse.
        let mut order = Vec::with_capacity(n);
        let mut visited = vec![false; n];
        for root in 0..n {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some((v, next)) = stack.last_mut() {
                let v = *v;
                if let Some(&k) = self.out[v].get(*next) {
                    *next += 1;
                    let w = self.edges[k].dst;
                    if !visited[w] {
                        visited[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    order.push(v);
                    stack.pop();
                }
            }
        }
        let mut component = vec![usize::MAX; n];
        let mut components = Vec::new();
        for &root in order.iter().rev() {
            if component[root] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![root];
            component[root] = id;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &k in &self.inc[v] {
                    let u = self.edges[k].src;
                    if component[u] == usize::MAX {
                        component[u] = id;
                        members.push(u);
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components.sort();
        components
    }

    /// For each component that carries a cycle, the number of edges each of
    /// its vertices sends inside the component.
    fn cyclic_components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let comps = self.strongly_connected_components();
        let mut which = vec![0; self.vertex_count()];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                which[v] = c;
            }
        }
        comps
            .into_iter()
            .enumerate()
            .filter_map(|(c, members)| {
                let internal: Vec<usize> = members
                    .iter()
                    .map(|&v| {
                        self.out[v].iter().filter(|&&k| which[self.edges[k].dst] == c).count()
                    })
                    .collect();
                internal.iter().any(|&d| d > 0).then_some((members, internal))
            })
            .collect()
    }

    /// No cycles at all.
    pub fn is_acyclic(&self) -> bool {
        self.cyclic_components().is_empty()
    }

    /// No two distinct cycles share a vertex.
    ///
    /// Equivalent to every cyclic component being a single simple cycle, i.e.
    /// each of its vertices sends exactly one edge inside the component.
    pub fn has_disjoint_cycles(&self) -> bool {
        self.cyclic_components()
            .iter()
            .all(|(_, internal)| internal.iter().all(|&d| d == 1))
    }

    /// Exactly one cycle, and that cycle has no exit.
    pub fn is_comet(&self) -> bool {
        match self.cyclic_components().as_slice() {
            [(members, internal)] => {
                internal.iter().all(|&d| d == 1)
                    && members.iter().all(|&v| self.out[v].len() == 1)
            }
            _ => false,
        }
    }

    /// The graph in its JSON interchange form, one entry per edge.
    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertices.clone(),
            edges: Some(
                self.edges
                    .iter()
                    .map(|e| EdgeSpec {
                        id: Some(e.id.clone()),
                        src: self.vertices[e.src].clone(),
                        dst: self.vertices[e.dst].clone(),
                        count: None,
                    })
                    .collect(),
            ),
            adjacency: None,
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: GraphSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        spec.build()
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

/// JSON form of a graph. Either `edges` or `adjacency` (or both, if they agree).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjacency: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub src: String,
    pub dst: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

impl GraphSpec {
    /// Edge lists are authoritative; an adjacency matrix given alongside
    /// them must agree or the input is rejected.
    pub fn build(&self) -> Result<Graph> {
        match (&self.edges, &self.adjacency) {
            (None, None) => Err(Error::InvalidInput(
                "graph needs either `edges` or `adjacency`".into(),
            )),
            (None, Some(rows)) => Graph::from_named_adjacency(self.vertices.clone(), rows),
            (Some(list), adjacency) => {
                let graph = self.build_from_edges(list)?;
                if let Some(rows) = adjacency {
                    let from_matrix = Graph::from_named_adjacency(self.vertices.clone(), rows)?;
                    if crate::matrix::adjacency(&graph) != crate::matrix::adjacency(&from_matrix) {
                        return Err(Error::InvalidInput(
                            "`edges` and `adjacency` describe different graphs".into(),
                        ));
                    }
                }
                Ok(graph)
            }
        }
    }

    fn build_from_edges(&self, list: &[EdgeSpec]) -> Result<Graph> {
        let names = self.vertices.clone();
        let lookup = |name: &str| {
            names
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let mut edges = Vec::new();
        for spec in list {
            let src = lookup(&spec.src)?;
            let dst = lookup(&spec.dst)?;
            let count = spec.count.unwrap_or(1);
            for copy in 0..count {
                let id = match (&spec.id, count) {
                    (Some(id), 1) => id.clone(),
                    (Some(id), _) => format!("{id}.{copy}"),
                    (None, _) => format!("e{}", edges.len()),
                };
                edges.push(Edge { id, src, dst });
            }
        }
        Graph::new(names, edges)
    }
}

/// A subset of the vertex basis of some graph, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    universe: usize,
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&index) = members.iter().find(|&&m| m >= universe) {
            return Err(Error::VertexOutOfRange { index, len: universe });
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateIndex(members));
        }
        Ok(VertexSet { universe, members })
    }

    pub fn empty(universe: usize) -> Self {
        VertexSet { universe, members: Vec::new() }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet { universe, members: (0..universe).collect() }
    }

    pub fn from_flags(flags: &[bool]) -> Self {
        VertexSet {
            universe: flags.len(),
            members: flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i).collect(),
        }
    }

    /// Bit `i` of `mask` selects vertex `i`. Requires `universe <= 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= 64);
        VertexSet { universe, members: (0..universe).filter(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn mask(&self) -> u64 {
        debug_assert!(self.universe <= 64);
        self.members.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.universe
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn insert(&mut self, v: usize) {
        if let Err(pos) = self.members.binary_search(&v) {
            self.members.insert(pos, v);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let members: BTreeSet<usize> = self.iter().chain(other.iter()).collect();
        VertexSet { universe: self.universe, members: members.into_iter().collect() }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            universe: self.universe,
            members: self.iter().filter(|&v| other.contains(v)).collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            universe: self.universe,
            members: self.iter().filter(|&v| !other.contains(v)).collect(),
        }
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet {
            universe: self.universe,
            members: (0..self.universe).filter(|&v| !self.contains(v)).collect(),
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "v{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

/// A reordering of the vertex basis: position `i` of the new basis holds
/// old vertex `order[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let len = order.len();
        let mut seen = vec![false; len];
        for &i in &order {
            if i >= len || seen[i] {
                return Err(Error::InvalidPermutation { len, detail: format!("{order:?}") });
            }
            seen[i] = true;
        }
        Ok(Permutation(order))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Lists the vertices of `first` (in basis order) and then the rest.
    pub fn stable_partition(first: &VertexSet) -> Self {
        Permutation(first.iter().chain(first.complement().iter()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// `inverse()[old] == new`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.0.len()];
        for (new, &old) in self.0.iter().enumerate() {
            inv[old] = new;
        }
        inv
    }
}

/// A non-empty sequence of composable edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathSeq {
    edges: Vec<usize>,
    src: usize,
    dst: usize,
}

impl PathSeq {
    pub fn new(g: &Graph, edges: Vec<usize>) -> Result<Self> {
        let (&first, &last) = match (edges.first(), edges.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::NotAPath("empty edge list".into())),
        };
        if let Some(&bad) = edges.iter().find(|&&k| k >= g.edge_count()) {
            return Err(Error::NotAPath(format!("no edge with index {bad}")));
        }
        for pair in edges.windows(2) {
            if g.edge(pair[0]).dst != g.edge(pair[1]).src {
                return Err(Error::NotAPath(format!(
                    "`{}` does not end where `{}` starts",
                    g.edge(pair[0]).id,
                    g.edge(pair[1]).id
                )));
            }
        }
        Ok(PathSeq { src: g.edge(first).src, dst: g.edge(last).dst, edges })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A closed, vertex-simple path rotated to start at its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleSeq {
    edges: Vec<usize>,
    vertices: Vec<usize>,
}

impl CycleSeq {
    /// Validates `edges` as a cycle of `g` and rotates it into canonical form.
    pub fn new(g: &Graph, edges: Vec<usize>) -> Result<Self> {
        let path = PathSeq::new(g, edges).map_err(|e| Error::NotACycle(e.to_string()))?;
        if path.src() != path.dst() {
            return Err(Error::NotACycle("path is not closed".into()));
        }
        let sources: Vec<usize> = path.edges().iter().map(|&k| g.edge(k).src).collect();
        let distinct: HashSet<usize> = sources.iter().copied().collect();
        if distinct.len() != sources.len() {
            return Err(Error::NotACycle("a vertex repeats".into()));
        }
        let start = (0..sources.len()).min_by_key(|&i| sources[i]).unwrap_or(0);
        let mut edges = path.edges;
        edges.rotate_left(start);
        Ok(Self::from_edges_unchecked(g, edges))
    }

    fn from_edges_unchecked(g: &Graph, edges: Vec<usize>) -> Self {
        let vertices = edges.iter().map(|&k| g.edge(k).src).collect();
        CycleSeq { edges, vertices }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// Vertices in cycle order, starting with the smallest.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex_set(&self, g: &Graph) -> VertexSet {
        VertexSet::new(g.vertex_count(), self.vertices.iter().copied())
            .expect("cycle vertices are distinct")
    }

    /// Edges not on the cycle whose source lies on the cycle.
    pub fn exits(&self, g: &Graph) -> Vec<usize> {
        self.vertices
            .iter()
            .flat_map(|&v| g.out_edge_indices(v).iter().copied())
            .filter(|k| !self.edges.contains(k))
            .collect()
    }

    pub fn has_exit(&self, g: &Graph) -> bool {
        !self.exits(g).is_empty()
    }

    pub fn describe(&self, g: &Graph) -> String {
        self.vertices.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>().join("->")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn out_edges_of_example_four_sixteen() {
        let g = fixtures::ideal_example();
        let v4 = g.vertex_index("v4").unwrap();
        let dsts: Vec<&str> =
            g.out_edges(v4).unwrap().iter().map(|e| g.vertex_name(e.dst)).collect();
        assert_eq!(dsts, ["v1", "v2", "v4"]);
        assert!(g.out_edges(9).is_err());
    }

    #[test]
    fn isolated_vertex_and_rose() {
        let g = Graph::edgeless(1);
        assert!(g.out_edges(0).unwrap().is_empty());
        let rose = fixtures::rose(2);
        let ids: Vec<&str> = rose.out_edges(0).unwrap().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["e0", "e1"]);
    }

    #[test]
    fn sinks_and_sources() {
        let g = fixtures::ideal_example();
        assert!(g.is_sink(0).unwrap());
        assert!(g.is_source(2).unwrap());
        assert!(!g.is_source(1).unwrap());
        let lp = fixtures::rose(1);
        assert!(!lp.is_sink(0).unwrap() && !lp.is_source(0).unwrap());
        assert!(g.is_sink(4).is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let g = fixtures::ideal_example();
        let h = g.vertex_set(&["v1", "v2"]).unwrap();
        let sub = g.induced_subgraph(&h);
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.edge_count(), 1);
        assert_eq!(sub.edges()[0].src, 1);
        assert_eq!(sub.edges()[0].dst, 1);
        assert_eq!(g.induced_subgraph(&g.full_set()), g);
        let empty = g.induced_subgraph(&g.empty_set());
        assert_eq!((empty.vertex_count(), empty.edge_count()), (0, 0));
    }

    #[test]
    fn quotients() {
        let g = fixtures::ideal_example();
        let h = g.vertex_set(&["v1", "v2", "v3"]).unwrap();
        let q = g.quotient_graph(&h, true).unwrap();
        assert_eq!(q.vertices(), ["v4"]);
        assert_eq!(q.edge_count(), 1);
        assert_eq!(g.quotient_graph(&g.empty_set(), true).unwrap(), g);
        let not_saturated = g.vertex_set(&["v1", "v2"]).unwrap();
        assert!(matches!(
            g.quotient_graph(&not_saturated, true),
            Err(Error::NotHereditarySaturated(_))
        ));
        assert_eq!(g.quotient_graph(&not_saturated, false).unwrap().vertex_count(), 2);
    }

    #[test]
    fn quotient_by_unreached_part_is_a_comet() {
        // a 2-cycle on {v1,v2} feeding v3 -> v4, with v4 a sink.
        let g = Graph::from_adjacency(&[
            vec![0, 1, 1, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 0, 0],
        ])
        .unwrap();
        assert!(!g.is_comet());
        let unreached = g.vertex_set(&["v3", "v4"]).unwrap();
        let q = g.quotient_graph(&unreached, true).unwrap();
        assert!(q.is_comet());
    }

    #[test]
    fn opposite_and_double() {
        let g = fixtures::path_count_example();
        let op = g.opposite();
        assert_eq!(
            crate::matrix::adjacency(&op),
            crate::matrix::ExactMatrix::from_u64(&[vec![0, 0], vec![2, 1]])
        );
        assert!(op.edges().iter().all(Edge::is_ghost));
        assert_eq!(op.opposite(), g);
        let d = fixtures::rose(1).double().unwrap();
        assert_eq!(d.edge_count(), 2);
        assert_eq!(d.out_degree(0), 2);
    }

    #[test]
    fn strong_connectivity() {
        assert!(fixtures::four_cycle().is_strongly_connected());
        assert!(!fixtures::ideal_example().is_strongly_connected());
        assert!(Graph::edgeless(1).is_strongly_connected());
        assert!(!Graph::edgeless(2).is_strongly_connected());
    }

    #[test]
    fn comets() {
        assert!(fixtures::rose(1).is_comet());
        assert!(!fixtures::e_prime().is_comet());
        assert!(!Graph::from_adjacency(&[vec![0, 1], vec![0, 0]]).unwrap().is_comet());
        assert!(!fixtures::rose(2).is_comet());
    }

    #[test]
    fn components() {
        let g = fixtures::ideal_example();
        assert_eq!(g.strongly_connected_components(), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert!(!g.is_acyclic());
        assert!(g.has_disjoint_cycles());
        let g = fixtures::census_example();
        assert_eq!(g.strongly_connected_components(), vec![vec![0, 1, 2]]);
        assert!(!g.has_disjoint_cycles());
        assert!(fixtures::chain(4).is_acyclic());
        assert!(fixtures::four_cycle().has_disjoint_cycles());
        assert!(!fixtures::rose(2).has_disjoint_cycles());
    }

    #[test]
    fn cycle_listing() {
        let g = fixtures::census_example();
        let cycles = g.find_all_cycles();
        assert_eq!(cycles.len(), 6);
        let shapes: Vec<String> = cycles.iter().map(|c| c.describe(&g)).collect();
        assert_eq!(shapes, ["v1", "v1->v2", "v1->v2->v3", "v1->v2->v3", "v2->v3", "v2->v3"]);
        assert!(Graph::from_adjacency(&[vec![0, 1], vec![0, 0]]).unwrap().find_all_cycles().is_empty());
        assert_eq!(fixtures::rose(5).find_all_cycles().len(), 5);
    }

    #[test]
    fn cycle_validation_rotates() {
        let g = fixtures::four_cycle();
        let c = CycleSeq::new(&g, vec![2, 3, 0, 1]).unwrap();
        assert_eq!(c.vertices(), [0, 1, 2, 3]);
        assert_eq!(c.edges(), [0, 1, 2, 3]);
        assert!(CycleSeq::new(&g, vec![0, 1]).is_err());
        assert!(PathSeq::new(&g, vec![0, 2]).is_err());
    }

    #[test]
    fn json_forms() {
        let text = r#"{"vertices":["a","b"],"edges":[{"src":"a","dst":"b","count":2},{"src":"b","dst":"b"}]}"#;
        let g = Graph::from_json_str(text).unwrap();
        assert_eq!(g.edge_count(), 3);
        let m = r#"{"vertices":["a","b"],"adjacency":[[0,2],[0,1]]}"#;
        assert_eq!(
            crate::matrix::adjacency(&Graph::from_json_str(m).unwrap()),
            crate::matrix::adjacency(&g)
        );
        let both = r#"{"vertices":["a","b"],"edges":[{"src":"a","dst":"b"}],"adjacency":[[0,2],[0,1]]}"#;
        assert!(matches!(Graph::from_json_str(both), Err(Error::InvalidInput(_))));
        let unknown = r#"{"vertices":["a"],"edges":[{"src":"a","dst":"z"}]}"#;
        assert!(matches!(Graph::from_json_str(unknown), Err(Error::UnknownVertex(_))));
        let round = Graph::from_json_str(&serde_json::to_string(&g.to_spec()).unwrap()).unwrap();
        assert_eq!(round, g);
    }
}
