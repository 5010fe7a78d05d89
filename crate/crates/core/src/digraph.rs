//! Simple digraphs (no loops, no parallel arcs) and undirected graphs over
//! dense `0..n` vertex indices.
//!
//! A digraph is immutable once built. Out- and in-neighbourhoods are kept as
//! sorted vectors for iteration, and the arc set is hashed for constant-time
//! membership queries.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arcs: HashSet<(usize, usize)>,
}

/// Relabelling produced by [`Digraph::induced`] and [`Digraph::remove_vertices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    /// `to_parent[new] = old`.
    pub to_parent: Vec<usize>,
    to_child: Vec<Option<usize>>,
}

impl VertexMap {
    pub fn child(&self, parent: usize) -> Option<usize> {
        self.to_child.get(parent).copied().flatten()
    }

    pub fn parent(&self, child: usize) -> usize {
        self.to_parent[child]
    }

    pub fn lift(&self, children: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = children.iter().map(|&c| self.to_parent[c]).collect();
        out.sort_unstable();
        out
    }
}

impl Digraph {
    /// Builds a digraph, deduplicating repeated arcs.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = HashSet::new();
        for (u, v) in arcs {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u, v));
        }
        Ok(Self::from_set(n, set))
    }

    /// Caller guarantees endpoints are in range and distinct.
    pub(crate) fn from_arcs_unchecked<I>(n: usize, arcs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let set: HashSet<(usize, usize)> = arcs.into_iter().collect();
        debug_assert!(set.iter().all(|&(u, v)| u < n && v < n && u != v));
        Self::from_set(n, set)
    }

    fn from_set(n: usize, arcs: HashSet<(usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out[u].push(v);
            inn[v].push(u);
        }
        for l in out.iter_mut().chain(inn.iter_mut()) {
            l.sort_unstable();
        }
        Digraph { n, out, inn, arcs }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_set(n, HashSet::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn is_digon(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    pub fn out_neighbours(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbours(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    /// Digons as pairs `(u, v)` with `u < v`.
    pub fn digons(&self) -> Vec<(usize, usize)> {
        self.arcs()
            .filter(|&(u, v)| u < v && self.has_arc(v, u))
            .collect()
    }

    pub fn simple_arcs(&self) -> Vec<(usize, usize)> {
        self.arcs().filter(|&(u, v)| !self.has_arc(v, u)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(v, u))
    }

    pub fn is_oriented(&self) -> bool {
        self.arcs().all(|(u, v)| !self.has_arc(v, u))
    }

    /// Replaces every edge of `g` by a digon.
    pub fn symmetric_closure(g: &Graph) -> Digraph {
        Digraph::from_arcs_unchecked(g.n(), g.edges().flat_map(|(u, v)| [(u, v), (v, u)]))
    }

    /// The graph whose edges are the digons of `self`.
    pub fn symmetric_part(&self) -> Graph {
        Graph::from_edges_unchecked(self.n, self.digons())
    }

    pub fn underlying_graph(&self) -> Graph {
        Graph::from_edges_unchecked(self.n, self.arcs().map(|(u, v)| (u.min(v), u.max(v))))
    }

    pub fn reverse(&self) -> Digraph {
        Digraph::from_arcs_unchecked(self.n, self.arcs().map(|(u, v)| (v, u)))
    }

    /// Subdigraph induced by `s`, relabelled in ascending order of `s`.
    pub fn induced(&self, s: &[usize]) -> (Digraph, VertexMap) {
        let mut to_parent: Vec<usize> = s.to_vec();
        to_parent.sort_unstable();
        to_parent.dedup();
        let mut to_child = vec![None; self.n];
        for (i, &v) in to_parent.iter().enumerate() {
            to_child[v] = Some(i);
        }
        let arcs = to_parent.iter().enumerate().flat_map(|(i, &u)| {
            let to_child = &to_child;
            self.out[u].iter().filter_map(move |&w| to_child[w].map(|j| (i, j)))
        });
        let d = Digraph::from_arcs_unchecked(to_parent.len(), arcs.collect::<Vec<_>>());
        (d, VertexMap { to_parent, to_child })
    }

    pub fn remove_vertices(&self, s: &[usize]) -> (Digraph, VertexMap) {
        let mut removed = vec![false; self.n];
        for &v in s {
            removed[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !removed[v]).collect();
        self.induced(&keep)
    }

    /// Whether `D⟨s⟩` has no directed cycle; a digon counts as a 2-cycle.
    pub fn is_acyclic(&self, s: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &v in s {
            inside[v] = true;
        }
        self.is_acyclic_mask(&inside)
    }

    pub(crate) fn is_acyclic_mask(&self, inside: &[bool]) -> bool {
        // Kahn: repeatedly delete sources of the induced subdigraph.
        let mut indeg = vec![0usize; self.n];
        let mut total = 0;
        for v in (0..self.n).filter(|&v| inside[v]) {
            total += 1;
            indeg[v] = self.inn[v].iter().filter(|&&u| inside[u]).count();
        }
        let mut queue: VecDeque<usize> =
            (0..self.n).filter(|&v| inside[v] && indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(u) = queue.pop_front() {
            removed += 1;
            for &w in &self.out[u] {
                if inside[w] {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        queue.push_back(w);
                    }
                }
            }
        }
        removed == total
    }

    pub fn is_acyclic_digraph(&self) -> bool {
        self.is_acyclic_mask(&vec![true; self.n])
    }

    /// Components of the underlying graph, each sorted, ordered by least vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in self.out[u].iter().chain(self.inn[u].iter()) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.weak_components().len() == 1
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let shift = self.n;
        Digraph::from_arcs_unchecked(
            self.n + other.n,
            self.arcs()
                .chain(other.arcs().map(|(u, v)| (u + shift, v + shift)))
                .collect::<Vec<_>>(),
        )
    }

    /// Returns a copy with the extra arcs added.
    pub fn with_arcs<I>(&self, extra: I) -> Result<Digraph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Digraph::from_arcs(self.n, self.arcs().chain(extra).collect::<Vec<_>>())
    }

    /// Returns a copy with `extra` additional isolated vertices.
    pub fn with_vertices(&self, extra: usize) -> Digraph {
        Digraph::from_arcs_unchecked(self.n + extra, self.arcs().collect::<Vec<_>>())
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.out == other.out
    }
}

impl Eq for Digraph {}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct DigraphRepr {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Serialize for Digraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DigraphRepr { n: self.n, arcs: self.arcs().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Digraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DigraphRepr::deserialize(d)?;
        Digraph::from_arcs(r.n, r.arcs).map_err(serde::de::Error::custom)
    }
}

/// Simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u, v));
        }
        Ok(Self::from_edges_unchecked(n, list))
    }

    pub(crate) fn from_edges_unchecked<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        Graph { n, adj }
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges_unchecked(self.n, edges)
    }

    pub fn induced(&self, s: &[usize]) -> (Graph, VertexMap) {
        let mut to_parent: Vec<usize> = s.to_vec();
        to_parent.sort_unstable();
        to_parent.dedup();
        let mut to_child = vec![None; self.n];
        for (i, &v) in to_parent.iter().enumerate() {
            to_child[v] = Some(i);
        }
        let mut edges = Vec::new();
        for (i, &u) in to_parent.iter().enumerate() {
            for &w in &self.adj[u] {
                if let Some(j) = to_child[w] {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let g = Graph::from_edges_unchecked(to_parent.len(), edges);
        (g, VertexMap { to_parent, to_child })
    }
}
