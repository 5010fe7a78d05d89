//! Acyclic sets meeting every maximum biclique.
//!
//! [`biclique_transversal`] runs the recursive procedure: drop vertices in
//! no maximum biclique, use [`acyclic_hitting_set`] when every component of
//! the intersection graph has a common vertex, and otherwise split a
//! component into cliques `Q_1, …, Q_n` whose consecutive unions are its
//! maximum bicliques. An odd closed chain of these is the obstruction
//! `↔(C_n ∘ K_p)`; an open chain is contracted to `Q_1 ∪ Q_n` and the
//! recursive answer lifted back by parity.

use serde::Serialize;

use crate::asr::{acyclic_hitting_set, AcyclicGrower};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::generators::obstruction;
use crate::params::{biclique_number, biclique_report, degree_profile};

/// Largest order for which validation failures fall back to
/// [`brute_transversal_oracle`].
pub const ORACLE_LIMIT: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionWitness {
    pub n_cycle: usize,
    pub p: usize,
    /// `isomorphism[v]` is the image of `v` in [`obstruction`]`(n_cycle, p)`.
    pub isomorphism: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransversalOutcome {
    HittingSet(Vec<usize>),
    Obstruction(ObstructionWitness),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransversalRoute {
    Structural,
    OracleFallback,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalReport {
    pub omega: usize,
    pub outcome: TransversalOutcome,
    pub route: TransversalRoute,
}

/// `set` is acyclic and `ω↔(D − set) = ω↔(D) − 1`.
pub fn is_biclique_transversal(d: &Digraph, set: &[usize]) -> bool {
    let omega = biclique_number(d);
    omega > 0 && d.is_acyclic(set) && biclique_number(&d.remove_vertices(set).0) + 1 == omega
}

/// `witness` maps `d` onto `↔(C_n ∘ K_p)` arc for arc.
pub fn verify_obstruction(d: &Digraph, witness: &ObstructionWitness) -> bool {
    let Ok(target) = obstruction(witness.n_cycle, witness.p) else {
        return false;
    };
    let iso = &witness.isomorphism;
    if iso.len() != d.n() || target.n() != d.n() {
        return false;
    }
    let mut seen = vec![false; d.n()];
    for &i in iso {
        if i >= d.n() || std::mem::replace(&mut seen[i], true) {
            return false;
        }
    }
    Digraph::from_arcs(d.n(), d.arcs().map(|(u, v)| (iso[u], iso[v]))).is_ok_and(|m| m == target)
}

enum Found {
    Set(Vec<usize>),
    OddCycle(ObstructionWitness),
}

/// Structural preconditions that failed during the recursion.
struct Degraded(String);

type Step = std::result::Result<Found, Degraded>;

struct Chain {
    q: Vec<Vec<usize>>,
    closed: bool,
}

/// Splits the union of one intersection-graph component into cliques
/// `Q_1..Q_n` of size `ω/2` whose consecutive unions are exactly the
/// component's bicliques (cyclically when `closed`).
fn christofides_chain(cs: &[&Vec<usize>], omega: usize) -> Option<Chain> {
    if omega % 2 == 1 || cs.len() < 3 {
        return None;
    }
    let p = omega / 2;
    let m = cs.len();
    let meets = |a: &Vec<usize>, b: &Vec<usize>| a.iter().any(|v| b.binary_search(v).is_ok());
    let adj: Vec<Vec<usize>> = (0..m).map(|i| (0..m).filter(|&j| j != i && meets(cs[i], cs[j])).collect()).collect();
    if adj.iter().any(|a| a.len() > 2 || a.is_empty()) {
        return None;
    }
    let ends: Vec<usize> = (0..m).filter(|&i| adj[i].len() == 1).collect();
    let closed = ends.is_empty();
    if !closed && ends.len() != 2 {
        return None;
    }
    let start = if closed { 0 } else { ends[0] };
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&j| j != prev) {
        if next == start {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
        if order.len() > m {
            return None;
        }
    }
    if order.len() != m {
        return None;
    }
    let c: Vec<&Vec<usize>> = order.iter().map(|&i| cs[i]).collect();
    let inter = |a: &Vec<usize>, b: &Vec<usize>| a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect::<Vec<_>>();
    let minus = |a: &Vec<usize>, b: &Vec<usize>| a.iter().copied().filter(|v| b.binary_search(v).is_err()).collect::<Vec<_>>();
    let q: Vec<Vec<usize>> = if closed {
        // Q_i = C_{i−1} ∩ C_i, so C_i = Q_i ∪ Q_{i+1}
        (0..m).map(|i| inter(c[(i + m - 1) % m], c[i])).collect()
    } else {
        let mut q = vec![minus(c[0], c[1])];
        q.extend((0..m - 1).map(|i| inter(c[i], c[i + 1])));
        q.push(minus(c[m - 1], c[m - 2]));
        q
    };
    let nq = q.len();
    if q.iter().any(|s| s.len() != p) {
        return None;
    }
    for (i, ci) in c.iter().enumerate() {
        let mut u: Vec<usize> = q[i].iter().chain(&q[(i + 1) % nq]).copied().collect();
        u.sort_unstable();
        if u != **ci {
            return None;
        }
    }
    let mut q = q;
    if closed {
        // start at the clique holding the least vertex, towards its smaller neighbour
        let first = (0..nq).min_by_key(|&i| q[i][0]).expect("non-empty chain");
        q.rotate_left(first);
        if q[nq - 1][0] < q[1][0] {
            q[1..].reverse();
        }
    }
    let mut all: Vec<usize> = q.iter().flatten().copied().collect();
    let total = all.len();
    all.sort_unstable();
    all.dedup();
    (all.len() == total).then_some(Chain { q, closed })
}

struct Procedure {
    omega: usize,
    delta: usize,
}

impl Procedure {
    fn run(&self, d: &Digraph) -> Step {
        let report = biclique_report(d).map_err(|e| Degraded(e.to_string()))?;
        if report.omega != self.omega {
            return Err(Degraded(format!("biclique number changed from {} to {}", self.omega, report.omega)));
        }
        let covered = report.covered();
        if covered.len() < d.n() {
            let (sub, map) = d.induced(&covered);
            return match self.run(&sub)? {
                Found::Set(s) => Ok(Found::Set(map.lift(&s))),
                Found::OddCycle(_) => Err(Degraded("odd chain after stripping".into())),
            };
        }
        let empty = (0..report.components.len()).find(|&c| report.component_intersection(c).is_empty());
        let Some(c) = empty else {
            let parts: Vec<Vec<usize>> =
                (0..report.components.len()).map(|c| report.component_intersection(c)).collect();
            let all: Vec<usize> = parts.iter().flatten().copied().collect();
            let (sub, map) = d.induced(&all);
            let sub_parts: Vec<Vec<usize>> =
                parts.iter().map(|p| p.iter().map(|&v| map.child(v).expect("in induced set")).collect()).collect();
            let k = (self.delta + 1) / 3;
            let set = acyclic_hitting_set(&sub, &sub_parts, k).map_err(|e| Degraded(e.to_string()))?;
            return Ok(Found::Set(map.lift(&set)));
        };
        let cs: Vec<&Vec<usize>> = report.components[c].iter().map(|&i| &report.maximum_bicliques[i]).collect();
        let chain = christofides_chain(&cs, self.omega)
            .ok_or_else(|| Degraded("component with empty intersection is not a chain of cliques".into()))?;
        let q = &chain.q;
        let n = q.len();
        if chain.closed {
            let y: Vec<usize> = q.iter().flatten().copied().collect();
            if n % 2 == 1 {
                if y.len() != d.n() {
                    return Err(Degraded("odd closed chain is not the whole digraph".into()));
                }
                let p = self.omega / 2;
                let mut iso = vec![0; d.n()];
                for (i, qi) in q.iter().enumerate() {
                    for (j, &v) in qi.iter().enumerate() {
                        iso[v] = i * p + j;
                    }
                }
                return Ok(Found::OddCycle(ObstructionWitness { n_cycle: n, p, isomorphism: iso }));
            }
            let reps: Vec<usize> = (0..n).step_by(2).map(|i| q[i][0]).collect();
            let (rest, map) = d.remove_vertices(&y);
            if rest.n() == 0 {
                return Ok(Found::Set(reps));
            }
            let lifted = match self.run_rest(&rest)? {
                Found::Set(s) => map.lift(&s),
                Found::OddCycle(_) => return Err(Degraded("odd chain in another component".into())),
            };
            return Ok(Found::Set(reps.into_iter().chain(lifted).collect()));
        }

        let middle: Vec<usize> = q[1..n - 1].iter().flatten().copied().collect();
        let (sub, map) = d.remove_vertices(&middle);
        let q1: Vec<usize> = q[0].iter().map(|&v| map.child(v).expect("kept")).collect();
        let qn: Vec<usize> = q[n - 1].iter().map(|&v| map.child(v).expect("kept")).collect();
        let join = q1.iter().flat_map(|&a| qn.iter().flat_map(move |&b| [(a, b), (b, a)]));
        let contracted = sub.with_arcs(join).map_err(|e| Degraded(e.to_string()))?;
        let inner = match self.run(&contracted)? {
            Found::Set(s) => map.lift(&s),
            Found::OddCycle(_) => return Err(Degraded("contracted digraph is an obstruction".into())),
        };
        let hits = |qi: &Vec<usize>| inner.iter().any(|v| qi.contains(v));
        // orient the chain so that the inner set meets Q_1
        let order: Vec<&Vec<usize>> = if hits(&q[0]) {
            q.iter().collect()
        } else if hits(&q[n - 1]) {
            q.iter().rev().collect()
        } else {
            return Err(Degraded("contracted set misses Q_1 ∪ Q_n".into()));
        };
        let mut set = inner;
        if n % 2 == 0 {
            set.extend((2..n - 1).step_by(2).map(|i| order[i][0]));
        } else {
            set.retain(|v| !order[0].contains(v));
            set.extend((1..n - 1).step_by(2).map(|i| order[i][0]));
        }
        set.sort_unstable();
        Ok(Found::Set(set))
    }

    /// Components left after removing an even closed chain may have a
    /// smaller biclique number; only those attaining `ω` need hitting.
    fn run_rest(&self, d: &Digraph) -> Step {
        if biclique_number(d) < self.omega {
            return Ok(Found::Set(Vec::new()));
        }
        self.run(d)
    }
}

/// An acyclic set whose removal lowers `ω↔` by one, or the witness that `d`
/// is `↔(C_n ∘ K_p)` with `n ≥ 5` odd, for connected `d` with
/// `Δmax(d) ≤ delta` and `3ω↔(d) ≥ 2(delta + 1)`.
pub fn biclique_transversal(d: &Digraph, delta: usize) -> Result<TransversalReport> {
    if !d.is_connected() {
        return Err(Error::PreconditionViolated("digraph must be connected".into()));
    }
    let profile = degree_profile(d);
    if profile.delta_max > delta {
        return Err(Error::PreconditionViolated(format!("Δmax = {} exceeds Δ = {delta}", profile.delta_max)));
    }
    let omega = biclique_number(d);
    if 3 * omega < 2 * (delta + 1) {
        return Err(Error::PreconditionViolated(format!("3ω↔ = {} < 2(Δ + 1) = {}", 3 * omega, 2 * (delta + 1))));
    }
    let proc = Procedure { omega, delta };
    let mut reason = String::from("validation failed");
    let structural = match proc.run(d) {
        Ok(Found::Set(mut s)) => {
            s.sort_unstable();
            s.dedup();
            is_biclique_transversal(d, &s).then_some(TransversalOutcome::HittingSet(s))
        }
        Ok(Found::OddCycle(w)) => verify_obstruction(d, &w).then_some(TransversalOutcome::Obstruction(w)),
        Err(Degraded(why)) => {
            reason = why;
            None
        }
    };
    if let Some(outcome) = structural {
        return Ok(TransversalReport { omega, outcome, route: TransversalRoute::Structural });
    }
    if d.n() > ORACLE_LIMIT {
        return Err(Error::InternalInconsistency(format!("structural procedure failed: {reason}")));
    }
    match brute_transversal_oracle(d)? {
        Some(s) => Ok(TransversalReport {
            omega,
            outcome: TransversalOutcome::HittingSet(s),
            route: TransversalRoute::OracleFallback,
        }),
        None => Err(Error::InternalInconsistency("no transversal exists but the digraph is not an obstruction".into())),
    }
}

/// A smallest acyclic set meeting every maximum biclique, by branching on
/// the first biclique not yet met with iterative deepening on the size.
/// Exponential; intended for `n ≤ 14`.
pub fn brute_transversal_oracle(d: &Digraph) -> Result<Option<Vec<usize>>> {
    let report = biclique_report(d)?;
    if report.omega == 0 {
        return Ok(None);
    }
    let cs = &report.maximum_bicliques;
    fn go(cs: &[Vec<usize>], budget: usize, g: &mut AcyclicGrower, chosen: &mut Vec<usize>) -> bool {
        let Some(c) = cs.iter().find(|c| !c.iter().any(|v| chosen.contains(v))) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for &v in c {
            if g.can_add(v) {
                g.add(v);
                chosen.push(v);
                if go(cs, budget - 1, g, chosen) {
                    return true;
                }
                chosen.pop();
                g.remove(v);
            }
        }
        false
    }
    for size in 1..=cs.len() {
        let mut g = AcyclicGrower::new(d);
        let mut chosen = Vec::new();
        if go(cs, size, &mut g, &mut chosen) {
            chosen.sort_unstable();
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}
