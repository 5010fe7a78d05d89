//! Colouring around a vertex whose out- (or in-) neighbourhood is nearly
//! complete.
//!
//! With `N = N⁺(v) ∪ {v}` padded to `Δ + 1` vertices, `N` splits into
//! `N_1` (many arcs leaving `N`), `N_2` (many arcs into `N̄ ∪ N_1`) and the
//! rest `N_3 ∋ v`. A colouring of `D − N_3` is extended to `N_3` by list
//! dicolouring with `L(u) = [k] ∖ α(N⁺(u) ∖ N_3)`; `D⟨N_3⟩` is a complete
//! digraph minus a matching up to acyclic arcs, which keeps the lists long
//! enough.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::bounds::Rational;
use crate::digraph::{Digraph, Graph};
use crate::error::{Error, Result};
use crate::exact::to_big;
use crate::matching::{matching_edges, maximum_matching};
use crate::params::{biclique_number, degree_profile, density_report, Side};
use crate::solver::{dichromatic_number, is_valid, k_dicolourable, list_dicolourable, Dicolouring};

fn check_a(a: Rational) -> Result<()> {
    if !a.is_positive() || a >= Rational::one() {
        return Err(Error::InvalidParameter(format!("a = {a} must lie in (0, 1)")));
    }
    Ok(())
}

fn big(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `m > (1 − a)Δ(Δ − 1)`, exactly.
fn exceeds(m: usize, delta: usize, a: Rational) -> bool {
    big(m) > (BigRational::one() - to_big(a)) * big(delta * delta.saturating_sub(1))
}

/// `x < c·√a·Δ` for `x ≥ 0`, decided as `x² < c²·a·Δ²`.
fn below_root_a(x: usize, c: usize, a: Rational, delta: usize) -> bool {
    big(x * x) < big(c * c) * to_big(a) * big(delta * delta)
}

/// The least vertex with `max(m⁻(v), m⁺(v)) > (1 − a)Δ(Δ − 1)`, with the
/// side achieving it (out-side on ties).
pub fn find_dense_vertex(d: &Digraph, a: Rational) -> Result<Option<(usize, Side)>> {
    check_a(a)?;
    let r = density_report(d);
    Ok((0..d.n()).find_map(|v| {
        if exceeds(r.m_plus[v], r.delta, a) {
            Some((v, Side::Out))
        } else if exceeds(r.m_minus[v], r.delta, a) {
            Some((v, Side::In))
        } else {
            None
        }
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensePartition {
    pub v: usize,
    pub side: Side,
    pub delta: usize,
    /// `d` reversed when `side` is `In`, plus the padding vertices
    /// `d.n()..d.n() + padding`, each with a single arc from `v`.
    pub digraph: Digraph,
    pub padding: usize,
    pub n: Vec<usize>,
    pub n_bar: Vec<usize>,
    pub n1: Vec<usize>,
    pub n2: Vec<usize>,
    pub n3: Vec<usize>,
}

impl DensePartition {
    /// Vertices of `N_3` that belong to the input digraph.
    pub fn n3_original(&self) -> Vec<usize> {
        let orig = self.digraph.n() - self.padding;
        self.n3.iter().copied().filter(|&u| u < orig).collect()
    }
}

pub fn partition_n123(d: &Digraph, v: usize, side: Side, a: Rational) -> Result<DensePartition> {
    check_a(a)?;
    if v >= d.n() {
        return Err(Error::InvalidVertex { vertex: v, n: d.n() });
    }
    let r = density_report(d);
    let delta = r.delta;
    let m = match side {
        Side::Out => r.m_plus[v],
        Side::In => r.m_minus[v],
    };
    if !exceeds(m, delta, a) {
        return Err(Error::NotDense(v));
    }
    let work = match side {
        Side::Out => d.clone(),
        Side::In => d.reverse(),
    };
    let n0 = d.n();
    let padding = delta - work.out_degree(v);
    let digraph = work.with_vertices(padding).with_arcs((n0..n0 + padding).map(|p| (v, p)))?;
    let total = digraph.n();
    let mut in_n = vec![false; total];
    in_n[v] = true;
    for &u in digraph.out_neighbours(v) {
        in_n[u] = true;
    }
    let n: Vec<usize> = (0..total).filter(|&u| in_n[u]).collect();
    let n_bar: Vec<usize> = (0..total).filter(|&u| !in_n[u]).collect();
    let n1: Vec<usize> = n
        .iter()
        .copied()
        .filter(|&u| 2 * digraph.out_neighbours(u).iter().filter(|&&w| !in_n[w]).count() >= delta)
        .collect();
    let mut in_n1 = vec![false; total];
    for &u in &n1 {
        in_n1[u] = true;
    }
    let n2: Vec<usize> = n
        .iter()
        .copied()
        .filter(|&u| !in_n1[u])
        .filter(|&u| {
            let out = digraph.out_neighbours(u).iter().filter(|&&w| !in_n[w] || in_n1[w]).count();
            !below_root_a(out, 2, a, delta)
        })
        .collect();
    let n3: Vec<usize> = n.iter().copied().filter(|u| !n1.contains(u) && !n2.contains(u)).collect();
    Ok(DensePartition { v, side, delta, digraph, padding, n, n_bar, n1, n2, n3 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseColouring {
    pub colouring: Dicolouring,
    pub partition: DensePartition,
    /// `(u, L(u))` for every `u ∈ N_3`, padding included.
    pub lists: Vec<(usize, Vec<usize>)>,
    /// Maximum matching of the complement of `D⟨N_3⟩`.
    pub matching: Vec<(usize, usize)>,
    /// Vertices of `N_3` the matching leaves uncovered.
    pub uncovered: Vec<usize>,
    /// False when `D⟨N_3⟩` has no `L`-dicolouring.
    pub extended: bool,
}

/// Extends `base`, a `k`-dicolouring of `D − N_3` (entries on `N_3` are
/// ignored), to all of `d` by list dicolouring `D⟨N_3⟩`.
pub fn dense_colour(
    d: &Digraph,
    v: usize,
    side: Side,
    a: Rational,
    k: usize,
    base: &Dicolouring,
) -> Result<DenseColouring> {
    let part = partition_n123(d, v, side, a)?;
    let n0 = d.n();
    if base.n() != n0 {
        return Err(Error::InvalidParameter(format!("base colouring has {} entries, expected {n0}", base.n())));
    }
    let h = &part.digraph;
    let mut in_n3 = vec![false; h.n()];
    for &u in &part.n3 {
        in_n3[u] = true;
    }
    let mut restricted = Dicolouring::empty(n0);
    for u in (0..n0).filter(|&u| !in_n3[u]) {
        match base.colours[u] {
            Some(c) if c < k => restricted.colours[u] = Some(c),
            _ => {
                return Err(Error::InvalidParameter(format!("base colouring must give vertex {u} a colour below {k}")))
            }
        }
    }
    if !is_valid(d, &restricted, false) {
        return Err(Error::InvalidParameter("base colouring is not a dicolouring of D − N_3".into()));
    }

    let lists: Vec<(usize, Vec<usize>)> = part
        .n3
        .iter()
        .map(|&u| {
            let mut taken = vec![false; k];
            for &w in h.out_neighbours(u) {
                if !in_n3[w] {
                    taken[restricted.colours[w].expect("coloured outside N_3")] = true;
                }
            }
            (u, (0..k).filter(|&c| !taken[c]).collect())
        })
        .collect();

    let (sub, _) = h.induced(&part.n3);
    let m = sub.n();
    let complement = Graph::from_edges(m, (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).filter(|&(i, j)| !sub.is_digon(i, j)))?;
    let mate = maximum_matching(&complement);
    let matching: Vec<(usize, usize)> =
        matching_edges(&mate).into_iter().map(|(i, j)| (part.n3[i], part.n3[j])).collect();
    let uncovered: Vec<usize> = (0..m).filter(|&i| mate[i].is_none()).map(|i| part.n3[i]).collect();
    if uncovered.iter().any(|&x| uncovered.iter().any(|&y| x != y && !h.is_digon(x, y))) {
        return Err(Error::InternalInconsistency("vertices missed by a maximum matching are not a biclique".into()));
    }

    let sub_lists: Vec<Vec<usize>> = lists.iter().map(|(_, l)| l.clone()).collect();
    let found = list_dicolourable(&sub, &sub_lists)?;
    let extended = found.is_some();
    let mut colouring = restricted;
    if let Some(c) = found {
        for (i, &u) in part.n3.iter().enumerate() {
            if u < n0 {
                colouring.colours[u] = c.colours[i];
            }
        }
        if !is_valid(d, &colouring, true) {
            return Err(Error::InternalInconsistency("extended colouring is not a dicolouring".into()));
        }
    }
    Ok(DenseColouring { colouring, partition: part, lists, matching, uncovered, extended })
}

/// `0 < ε ≤ 1/6 − 4√a`, decided as `ε ≤ 1/6` and `(1/6 − ε)² ≥ 16a`.
pub fn eps_admissible(a: Rational, eps: Rational) -> bool {
    let sixth = Rational::new(1, 6);
    let (a, eps, sixth) = (to_big(a), to_big(eps), to_big(sixth));
    eps.is_positive() && eps <= sixth && {
        let gap = &sixth - &eps;
        &gap * &gap >= a * BigRational::from_integer(16.into())
    }
}

/// `Δ ≥ max((1−a)/(√a − a), (1−a)/a)`, with the square root eliminated.
pub fn delta_at_least_delta_of_a(delta: usize, a: Rational) -> bool {
    let a = to_big(a);
    let one = BigRational::one();
    let d = big(delta);
    let first = &d * &a >= &one - &a;
    // Δ(√a − a) ≥ 1 − a  ⇔  Δ²a ≥ (1 − a + Δa)²
    let rhs = &one - &a + &d * &a;
    first && &d * &d * &a >= &rhs * &rhs
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseClaims {
    /// `|N_1| < 2√a·Δ`.
    pub n1_small: bool,
    /// `|N_2| < 2√a·Δ`.
    pub n2_small: bool,
    /// `|N⁺(u) ∖ N_3| < 4√a·Δ` for every `u ∈ N_3`.
    pub outside_small: bool,
    /// `|L(u)| ≥ ⌊5(Δ + 1)/6⌋` for every `u ∈ N_3`.
    pub lists_large: bool,
    /// `|M| + |X| ≤ 5(Δ + 1)/6`.
    pub matching_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseRun {
    pub v: usize,
    pub side: Side,
    pub chi_minus_v: usize,
    /// `⌊(1 − ε)(Δ + 1)⌋`.
    pub floor_term: usize,
    pub k: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub padding: usize,
    pub matching_size: usize,
    pub uncovered: usize,
    pub min_list: usize,
    pub claims: DenseClaims,
    pub colouring: Option<Dicolouring>,
    /// A valid colouring with at most `k` colours was produced.
    pub achieved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseTheoremReport {
    pub a: String,
    pub eps: String,
    pub delta: usize,
    pub omega: usize,
    /// `Δ ≥ Δ(a)`.
    pub large_delta: bool,
    /// `ω↔ ≤ (2/3)(Δ + 1)`.
    pub omega_small: bool,
    /// `None` when no vertex is dense.
    pub run: Option<DenseRun>,
}

/// Runs the dense-vertex step end to end with exact `χ⃗(D − v)`.
pub fn dense_reduce_theorem(d: &Digraph, a: Rational, eps: Rational) -> Result<DenseTheoremReport> {
    check_a(a)?;
    if !eps_admissible(a, eps) {
        return Err(Error::PreconditionViolated(format!("ε = {eps} is not in (0, 1/6 − 4√a] for a = {a}")));
    }
    let delta = degree_profile(d).delta_max;
    let omega = biclique_number(d);
    let mut report = DenseTheoremReport {
        a: a.to_string(),
        eps: eps.to_string(),
        delta,
        omega,
        large_delta: delta_at_least_delta_of_a(delta, a),
        omega_small: 3 * omega <= 2 * (delta + 1),
        run: None,
    };
    let Some((v, side)) = find_dense_vertex(d, a)? else {
        return Ok(report);
    };
    let chi_minus_v = dichromatic_number(&d.remove_vertices(&[v]).0);
    let floor_term = ((BigRational::one() - to_big(eps)) * big(delta + 1))
        .floor()
        .to_integer()
        .to_usize()
        .expect("non-negative");
    let k = chi_minus_v.max(floor_term);
    let part = partition_n123(d, v, side, a)?;
    let rest: Vec<usize> = part.n3_original();
    let (outside, map) = d.remove_vertices(&rest);
    let base_sub = k_dicolourable(&outside, k)
        .ok_or_else(|| Error::InternalInconsistency("D − N_3 is not k-dicolourable although D − v is".into()))?;
    let mut base = Dicolouring::empty(d.n());
    for (i, c) in base_sub.colours.iter().enumerate() {
        base.colours[map.parent(i)] = *c;
    }
    let out = dense_colour(d, v, side, a, k, &base)?;
    let h = &out.partition.digraph;
    let mut in_n3 = vec![false; h.n()];
    for &u in &out.partition.n3 {
        in_n3[u] = true;
    }
    let min_list = out.lists.iter().map(|(_, l)| l.len()).min().unwrap_or(0);
    let claims = DenseClaims {
        n1_small: below_root_a(out.partition.n1.len(), 2, a, delta),
        n2_small: below_root_a(out.partition.n2.len(), 2, a, delta),
        outside_small: out
            .partition
            .n3
            .iter()
            .all(|&u| below_root_a(h.out_neighbours(u).iter().filter(|&&w| !in_n3[w]).count(), 4, a, delta)),
        lists_large: min_list >= 5 * (delta + 1) / 6,
        matching_bound: 6 * (out.matching.len() + out.uncovered.len()) <= 5 * (delta + 1),
    };
    let achieved = out.extended && out.colouring.palette_size() <= k;
    report.run = Some(DenseRun {
        v,
        side,
        chi_minus_v,
        floor_term,
        k,
        n1: out.partition.n1.len(),
        n2: out.partition.n2.len(),
        n3: out.partition.n3.len(),
        padding: out.partition.padding,
        matching_size: out.matching.len(),
        uncovered: out.uncovered.len(),
        min_list,
        claims,
        colouring: out.extended.then_some(out.colouring),
        achieved,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::default_a;
    use crate::generators::*;

    #[test]
    fn dense_vertices() {
        assert_eq!(find_dense_vertex(&complete_digraph(5), default_a()).unwrap(), Some((0, Side::Out)));
        assert_eq!(find_dense_vertex(&directed_cycle(5), default_a()).unwrap(), None);
        assert!(find_dense_vertex(&directed_cycle(5), Rational::new(0, 1)).is_err());
    }

    #[test]
    fn complete_partition() {
        let p = partition_n123(&complete_digraph(5), 0, Side::Out, default_a()).unwrap();
        assert!(p.n1.is_empty() && p.n2.is_empty());
        assert_eq!(p.n3, vec![0, 1, 2, 3, 4]);
        assert_eq!(p.padding, 0);
        assert!(p.n_bar.is_empty());
    }

    #[test]
    fn padding_and_not_dense() {
        // ↔K4 plus a digon 1 ↔ 4: Δ = 4 but d⁺(0) = 3
        let d = complete_digraph(4).with_vertices(1).with_arcs([(1, 4), (4, 1)]).unwrap();
        let delta = degree_profile(&d).delta_max;
        assert_eq!(delta, 4);
        let p = partition_n123(&d, 0, Side::Out, Rational::new(3, 4)).unwrap();
        assert_eq!(p.padding, 1);
        assert_eq!(p.n.len(), delta + 1);
        assert!(p.n3.contains(&0));
        assert!(matches!(partition_n123(&d, 4, Side::Out, default_a()), Err(Error::NotDense(4))));
    }

    #[test]
    fn complete_colouring() {
        let d = complete_digraph(4);
        let out = dense_colour(&d, 0, Side::Out, default_a(), 4, &Dicolouring::empty(4)).unwrap();
        assert!(out.extended);
        assert!(out.matching.is_empty());
        assert_eq!(out.uncovered.len(), 4);
        assert!(is_valid(&d, &out.colouring, true));
        assert_eq!(out.colouring.colour_count(), 4);
    }

    #[test]
    fn eps_relation() {
        let a = default_a();
        // 1/6 − 4√(1/600) ≈ 0.00340
        assert!(eps_admissible(a, Rational::new(1, 300)));
        assert!(!eps_admissible(a, Rational::new(1, 290)));
        assert!(!eps_admissible(a, Rational::new(1, 6)));
        assert!(!eps_admissible(a, Rational::new(0, 1)));
        assert!(delta_at_least_delta_of_a(599, a));
        assert!(!delta_at_least_delta_of_a(598, a));
    }

    #[test]
    fn theorem_report_flags_hypotheses() {
        let r = dense_reduce_theorem(&complete_digraph(4), default_a(), Rational::new(1, 300)).unwrap();
        assert!(!r.omega_small && !r.large_delta);
        // k = max(χ⃗(↔K3), ⌊(1 − ε)·4⌋) = 3 < χ⃗(↔K4)
        let run = r.run.unwrap();
        assert_eq!(run.k, 3);
        assert!(!run.achieved && run.colouring.is_none());
        assert!(matches!(
            dense_reduce_theorem(&complete_digraph(4), default_a(), Rational::new(1, 5)),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
