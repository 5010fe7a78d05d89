//! Degree, density and clique parameters of a digraph.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, Graph};
use crate::error::{Error, Result};

/// Default cap on the number of maximum bicliques listed by [`biclique_report`].
pub const DEFAULT_CLIQUE_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexDegrees {
    pub d_out: usize,
    pub d_in: usize,
}

impl VertexDegrees {
    pub fn max(&self) -> usize {
        self.d_out.max(self.d_in)
    }

    pub fn min(&self) -> usize {
        self.d_out.min(self.d_in)
    }

    /// `d⁺ · d⁻`, the squared geometric mean.
    pub fn geo_sq(&self) -> u64 {
        (self.d_out as u64) * (self.d_in as u64)
    }
}

/// Degree aggregates. The maximum geometric mean Δ̃ is irrational in
/// general, so only its square is stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub vertices: Vec<VertexDegrees>,
    pub delta_max: usize,
    pub delta_min: usize,
    pub delta_plus: usize,
    pub delta_tilde_sq: u64,
}

pub fn degree_profile(d: &Digraph) -> DegreeProfile {
    let vertices: Vec<VertexDegrees> = (0..d.n())
        .map(|v| VertexDegrees { d_out: d.out_degree(v), d_in: d.in_degree(v) })
        .collect();
    DegreeProfile {
        delta_max: vertices.iter().map(VertexDegrees::max).max().unwrap_or(0),
        delta_min: vertices.iter().map(VertexDegrees::min).max().unwrap_or(0),
        delta_plus: vertices.iter().map(|x| x.d_out).max().unwrap_or(0),
        delta_tilde_sq: vertices.iter().map(VertexDegrees::geo_sq).max().unwrap_or(0),
        vertices,
    }
}

impl DegreeProfile {
    /// Builds a profile holding only the aggregates, for bound evaluation.
    pub fn from_aggregates(delta_max: usize, delta_min: usize, delta_tilde_sq: u64) -> Self {
        DegreeProfile { vertices: Vec::new(), delta_max, delta_min, delta_plus: delta_max, delta_tilde_sq }
    }
}

/// Which neighbourhood of a vertex is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Out,
    In,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub delta: usize,
    /// Arc count of `D⟨N⁺(v)⟩`.
    pub m_plus: Vec<usize>,
    /// Arc count of `D⟨N⁻(v)⟩`.
    pub m_minus: Vec<usize>,
    /// `Δ(Δ−1) − min(m⁺(v), m⁻(v))`.
    pub b: Vec<u64>,
}

impl DensityReport {
    pub fn min_m(&self, v: usize) -> usize {
        self.m_plus[v].min(self.m_minus[v])
    }

    /// Largest `B` for which the digraph is `B`-sparse.
    pub fn sparsity(&self) -> i64 {
        let full = (self.delta * self.delta.saturating_sub(1)) as i64;
        (0..self.m_plus.len())
            .map(|v| full - self.min_m(v) as i64)
            .min()
            .unwrap_or(full)
    }
}

/// Number of arcs with both ends in `set`.
pub(crate) fn arcs_within(d: &Digraph, set: &[usize], mark: &mut [bool]) -> usize {
    for &u in set {
        mark[u] = true;
    }
    let count = set
        .iter()
        .map(|&u| d.out_neighbours(u).iter().filter(|&&w| mark[w]).count())
        .sum();
    for &u in set {
        mark[u] = false;
    }
    count
}

pub fn density_report(d: &Digraph) -> DensityReport {
    let delta = degree_profile(d).delta_max;
    let mut mark = vec![false; d.n()];
    let m_plus: Vec<usize> =
        (0..d.n()).map(|v| arcs_within(d, d.out_neighbours(v), &mut mark)).collect();
    let m_minus: Vec<usize> =
        (0..d.n()).map(|v| arcs_within(d, d.in_neighbours(v), &mut mark)).collect();
    let full = (delta * delta.saturating_sub(1)) as u64;
    let b = (0..d.n()).map(|v| full - m_plus[v].min(m_minus[v]) as u64).collect();
    DensityReport { delta, m_plus, m_minus, b }
}

/// `min(m⁺(v), m⁻(v)) ≤ Δ(Δ−1) − B` for every vertex, with `Δ = Δmax(d)`.
pub fn is_b_sparse(d: &Digraph, b: i64) -> bool {
    density_report(d).sparsity() >= b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicliqueReport {
    pub omega: usize,
    /// Every biclique of size `omega`, each sorted; list sorted.
    pub maximum_bicliques: Vec<Vec<usize>>,
    /// Connected components of the intersection graph, as indices into
    /// `maximum_bicliques`.
    pub components: Vec<Vec<usize>>,
}

impl BicliqueReport {
    pub fn component_intersection(&self, c: usize) -> Vec<usize> {
        let mut iter = self.components[c].iter().map(|&i| &self.maximum_bicliques[i]);
        let first = iter.next().cloned().unwrap_or_default();
        iter.fold(first, |acc, s| acc.into_iter().filter(|v| s.binary_search(v).is_ok()).collect())
    }

    pub fn component_union(&self, c: usize) -> Vec<usize> {
        let mut all: Vec<usize> = self.components[c]
            .iter()
            .flat_map(|&i| self.maximum_bicliques[i].iter().copied())
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Vertices lying in at least one maximum biclique.
    pub fn covered(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.maximum_bicliques.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

pub(crate) fn adjacency_bits(g: &Graph) -> Vec<FixedBitSet> {
    (0..g.n())
        .map(|v| {
            let mut b = FixedBitSet::with_capacity(g.n());
            for &w in g.neighbours(v) {
                b.insert(w);
            }
            b
        })
        .collect()
}

struct MaxCliqueCollector<'a> {
    adj: &'a [FixedBitSet],
    best: usize,
    found: Vec<Vec<usize>>,
    cap: usize,
}

impl MaxCliqueCollector<'_> {
    // Bron–Kerbosch with Tomita pivoting, pruned to cliques that can still
    // reach the best size seen so far.
    fn expand(&mut self, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet) -> Result<()> {
        let p_count = p.count_ones(..);
        if r.len() + p_count < self.best {
            return Ok(());
        }
        if p_count == 0 {
            if x.is_clear() {
                if r.len() > self.best {
                    self.best = r.len();
                    self.found.clear();
                }
                let mut c = r.clone();
                c.sort_unstable();
                self.found.push(c);
                if self.found.len() > self.cap {
                    return Err(Error::CapExceeded(self.cap));
                }
            }
            return Ok(());
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| self.adj[u].intersection(&p).count())
            .expect("P is non-empty");
        let candidates: Vec<usize> = p.difference(&self.adj[pivot]).collect();
        for v in candidates {
            r.push(v);
            let np = &p & &self.adj[v];
            let nx = &x & &self.adj[v];
            self.expand(r, np, nx)?;
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
        Ok(())
    }
}

/// All maximum cliques of `g`, sorted, each sorted.
pub fn maximum_cliques(g: &Graph, cap: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    if g.n() == 0 {
        return Ok((0, Vec::new()));
    }
    let adj = adjacency_bits(g);
    let mut all = FixedBitSet::with_capacity(g.n());
    all.insert_range(..);
    let mut c = MaxCliqueCollector { adj: &adj, best: 1, found: Vec::new(), cap };
    c.expand(&mut Vec::new(), all, FixedBitSet::with_capacity(g.n()))?;
    let mut found = c.found;
    found.sort();
    Ok((c.best, found))
}

/// Size of a largest clique of `adj` inside `cand`.
pub(crate) fn max_clique_within(adj: &[FixedBitSet], cand: &FixedBitSet) -> usize {
    fn go(adj: &[FixedBitSet], size: usize, p: FixedBitSet, best: &mut usize) {
        let count = p.count_ones(..);
        if size + count <= *best {
            return;
        }
        if count == 0 {
            *best = size;
            return;
        }
        let mut p = p;
        while let Some(v) = p.minimum() {
            if size + p.count_ones(..) <= *best {
                return;
            }
            let np = &p & &adj[v];
            go(adj, size + 1, np, best);
            p.set(v, false);
        }
    }
    let mut best = 0;
    go(adj, 0, cand.clone(), &mut best);
    best
}

pub fn biclique_number(d: &Digraph) -> usize {
    let s = d.symmetric_part();
    let adj = adjacency_bits(&s);
    let mut all = FixedBitSet::with_capacity(s.n());
    all.insert_range(..);
    max_clique_within(&adj, &all)
}

pub fn biclique_report(d: &Digraph) -> Result<BicliqueReport> {
    biclique_report_with_cap(d, DEFAULT_CLIQUE_CAP)
}

pub fn biclique_report_with_cap(d: &Digraph, cap: usize) -> Result<BicliqueReport> {
    let (omega, maximum_bicliques) = maximum_cliques(&d.symmetric_part(), cap)?;
    let components = intersection_components(&maximum_bicliques, d.n());
    Ok(BicliqueReport { omega, maximum_bicliques, components })
}

/// Components of the intersection graph of `sets`, via union–find over
/// shared vertices.
pub(crate) fn intersection_components(sets: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..sets.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner = vec![usize::MAX; n];
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            if owner[v] == usize::MAX {
                owner[v] = i;
            } else {
                let (a, b) = (find(&mut parent, owner[v]), find(&mut parent, i));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; sets.len()];
    for i in 0..sets.len() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Largest `X1 ∪ X2` with `X1`, `X2` bicliques and every arc `X1 → X2`
/// present.
pub fn directed_clique_number(d: &Digraph) -> usize {
    let n = d.n();
    if n == 0 {
        return 0;
    }
    let s = d.symmetric_part();
    let sym = adjacency_bits(&s);
    let outs: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut b = FixedBitSet::with_capacity(n);
            for &w in d.out_neighbours(v) {
                b.insert(w);
            }
            b
        })
        .collect();

    struct Search<'a> {
        sym: &'a [FixedBitSet],
        outs: &'a [FixedBitSet],
        best: usize,
    }

    impl Search<'_> {
        // `x1_size` vertices chosen for X1; `ext` = vertices that may still
        // join X1; `targets` = common out-neighbourhood of X1 minus X1.
        fn go(&mut self, x1_size: usize, ext: FixedBitSet, targets: FixedBitSet) {
            let x2 = max_clique_within(self.sym, &targets);
            self.best = self.best.max(x1_size + x2);
            let mut ext = ext;
            while let Some(v) = ext.minimum() {
                let mut reach = ext.clone();
                reach.union_with(&targets);
                if x1_size + reach.count_ones(..) <= self.best {
                    return;
                }
                ext.set(v, false);
                let next_ext = &ext & &self.sym[v];
                let mut next_targets = &targets & &self.outs[v];
                next_targets.set(v, false);
                self.go(x1_size + 1, next_ext, next_targets);
            }
        }
    }

    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut search = Search { sym: &sym, outs: &outs, best: 0 };
    search.go(0, all.clone(), all);
    search.best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn profiles() {
        let p = degree_profile(&directed_cycle(3));
        assert_eq!((p.delta_max, p.delta_min, p.delta_tilde_sq, p.delta_plus), (1, 1, 1, 1));
        let p = degree_profile(&complete_digraph(4));
        assert_eq!((p.delta_max, p.delta_min, p.delta_tilde_sq), (3, 3, 9));
        let p = degree_profile(&obstruction(5, 2).unwrap());
        assert_eq!((p.delta_max, p.delta_tilde_sq), (5, 25));
    }

    #[test]
    fn densities() {
        let r = density_report(&complete_digraph(4));
        assert!(r.m_plus.iter().chain(&r.m_minus).all(|&m| m == 6));
        assert!(is_b_sparse(&complete_digraph(4), 0));
        assert!(!is_b_sparse(&complete_digraph(4), 1));

        let r = density_report(&directed_cycle(5));
        assert!(r.m_plus.iter().all(|&m| m == 0));
        assert!(is_b_sparse(&directed_cycle(5), 0));
    }

    #[test]
    fn obstruction_density_brute_force() {
        let d = obstruction(5, 2).unwrap();
        let r = density_report(&d);
        for v in 0..d.n() {
            let nb = d.out_neighbours(v);
            let brute = nb
                .iter()
                .flat_map(|&a| nb.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| a != b && d.has_arc(a, b))
                .count();
            assert_eq!(r.m_plus[v], brute);
        }
        // N⁺(0) = {1} ∪ Q_1 ∪ Q_4: vertex 1 sees all four others, and Q_1,
        // Q_4 are digons with nothing between them, so 6 digons.
        assert_eq!(r.m_plus[0], 12);
    }

    #[test]
    fn bicliques() {
        let r = biclique_report(&complete_digraph(5)).unwrap();
        assert_eq!(r.omega, 5);
        assert_eq!(r.maximum_bicliques.len(), 1);

        let r = biclique_report(&random_tournament(6, 4)).unwrap();
        assert_eq!(r.omega, 1);
        assert_eq!(r.maximum_bicliques.len(), 6);

        let r = biclique_report(&obstruction(5, 2).unwrap()).unwrap();
        assert_eq!(r.omega, 4);
        assert_eq!(r.maximum_bicliques.len(), 5);
        assert_eq!(r.components.len(), 1);
        assert!(r.maximum_bicliques.iter().all(|c| c.len() == 4));
        assert!(r.maximum_bicliques.contains(&vec![0, 1, 2, 3]));
        assert!(r.maximum_bicliques.contains(&vec![0, 1, 8, 9]));
        assert!(r.component_intersection(0).is_empty());
        assert_eq!(r.component_union(0).len(), 10);
    }

    #[test]
    fn cap_exceeded() {
        let d = random_tournament(6, 2);
        assert_eq!(biclique_report_with_cap(&d, 3), Err(Error::CapExceeded(3)));
    }

    #[test]
    fn directed_cliques() {
        assert_eq!(directed_clique_number(&complete_digraph(5)), 5);
        assert_eq!(directed_clique_number(&transitive_tournament(4)), 2);
        assert_eq!(directed_clique_number(&directed_cycle(3)), 2);
        assert_eq!(directed_clique_number(&Digraph::empty(3)), 1);
        assert_eq!(directed_clique_number(&Digraph::empty(0)), 0);
        // ↔K2 → ↔K2 with all arcs from the first pair to the second
        let d = Digraph::from_arcs(
            4,
            [(0, 1), (1, 0), (2, 3), (3, 2), (0, 2), (0, 3), (1, 2), (1, 3)],
        )
        .unwrap();
        assert_eq!(directed_clique_number(&d), 4);
        assert_eq!(biclique_number(&d), 2);
    }
}
