//! Deterministic and seeded digraph families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Digraph, Graph};
use crate::error::{Error, Result};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// ↔Kn.
pub fn complete_digraph(n: usize) -> Digraph {
    Digraph::from_arcs_unchecked(
        n,
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect::<Vec<_>>(),
    )
}

pub fn directed_cycle(n: usize) -> Digraph {
    match n {
        0 | 1 => Digraph::empty(n),
        2 => complete_digraph(2),
        _ => Digraph::from_arcs_unchecked(n, (0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()),
    }
}

/// Arcs `i → j` for all `i < j`.
pub fn transitive_tournament(n: usize) -> Digraph {
    Digraph::from_arcs_unchecked(
        n,
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect::<Vec<_>>(),
    )
}

/// ↔Kn with the digons `{2i, 2i+1}` removed for `i < p`.
pub fn complete_minus_matching(n: usize, p: usize) -> Result<Digraph> {
    if 2 * p > n {
        return Err(Error::InvalidParameter(format!(
            "a matching of size {p} does not fit in {n} vertices"
        )));
    }
    let matched = |u: usize, v: usize| u / 2 == v / 2 && u / 2 < p;
    Ok(Digraph::from_arcs_unchecked(
        n,
        (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u && !matched(u, v)).map(move |v| (u, v)))
            .collect::<Vec<_>>(),
    ))
}

/// ↔(C_n ∘ K_p): part `Q_i` is `{i·p, …, i·p + p − 1}`; digons join every
/// pair inside a part and every pair across consecutive parts (indices mod n).
pub fn obstruction(n_cycle: usize, p: usize) -> Result<Digraph> {
    if n_cycle < 3 {
        return Err(Error::InvalidParameter(format!("cycle length {n_cycle} < 3")));
    }
    if p == 0 {
        return Err(Error::InvalidParameter("part size must be positive".into()));
    }
    let n = n_cycle * p;
    let part = |v: usize| v / p;
    let adjacent = |u: usize, v: usize| {
        let (a, b) = (part(u), part(v));
        a == b || (a + 1) % n_cycle == b || (b + 1) % n_cycle == a
    };
    Ok(Digraph::from_arcs_unchecked(
        n,
        (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u && adjacent(u, v)).map(move |v| (u, v)))
            .collect::<Vec<_>>(),
    ))
}

/// Alias of [`obstruction`].
pub fn lex_product_symmetric(n_cycle: usize, p: usize) -> Result<Digraph> {
    obstruction(n_cycle, p)
}

/// Each unordered pair independently becomes a digon with probability
/// `p_digon`, otherwise a single arc of uniformly random direction with
/// probability `p_simple`.
pub fn random_digraph(n: usize, p_digon: f64, p_simple: f64, seed: u64) -> Result<Digraph> {
    for p in [p_digon, p_simple] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
        }
    }
    let mut r = rng(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p_digon) {
                arcs.push((u, v));
                arcs.push((v, u));
            } else if r.gen_bool(p_simple) {
                if r.gen_bool(0.5) {
                    arcs.push((u, v));
                } else {
                    arcs.push((v, u));
                }
            }
        }
    }
    Ok(Digraph::from_arcs_unchecked(n, arcs))
}

pub fn random_tournament(n: usize, seed: u64) -> Digraph {
    let mut r = rng(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(0.5) {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
        }
    }
    Digraph::from_arcs_unchecked(n, arcs)
}

/// Erdős–Rényi G(n, p).
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges_unchecked(n, edges))
}
