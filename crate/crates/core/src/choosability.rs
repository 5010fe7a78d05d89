//! Exhaustive k-dichoosability.
//!
//! A list assignment is determined, up to renaming colours, by the multiset
//! of colour supports `S_c = {v : c ∈ L(v)}`, each vertex lying in exactly
//! `k` of them. The search enumerates these multisets directly, which
//! removes all colour symmetry, after three exact reductions:
//!
//! * a vertex with `min(d⁺, d⁻) < k` always has a colour missing on one side,
//!   so it can be deleted;
//! * directed cycles live inside strong components, which are checked
//!   independently;
//! * when the colour universe has at least `k·n` colours, a colour private
//!   to one list lets that vertex be coloured last, so only assignments in
//!   which every colour is shared need checking, provided every `D − v` is
//!   itself k-dichoosable.

use std::collections::HashMap;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`is_k_dichoosable`].
pub const MAX_VERTICES: usize = 64;
const TABLE_LIMIT: usize = 20;

struct Chooser {
    k: usize,
    universe: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
    /// Acyclicity of every vertex subset, when `n` is small enough.
    acyclic_table: Option<Vec<bool>>,
    memo: HashMap<u64, bool>,
}

#[derive(Clone, Copy)]
struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

fn bits(m: u64) -> Bits {
    Bits(m)
}

fn acyclic_mask(inn: &[u64], mask: u64) -> bool {
    // Kahn on the induced subdigraph.
    let mut remaining = mask;
    loop {
        let sources: u64 = bits(remaining).filter(|&v| inn[v] & remaining == 0).fold(0, |a, v| a | 1 << v);
        if sources == 0 {
            return remaining == 0;
        }
        remaining &= !sources;
    }
}

impl Chooser {
    fn new(d: &Digraph, k: usize, universe: usize) -> Self {
        let n = d.n();
        let to_mask = |nb: &[usize]| nb.iter().fold(0u64, |a, &w| a | 1 << w);
        let out: Vec<u64> = (0..n).map(|v| to_mask(d.out_neighbours(v))).collect();
        let inn: Vec<u64> = (0..n).map(|v| to_mask(d.in_neighbours(v))).collect();
        let acyclic_table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![true; 1 << n];
            for m in 1..(1u64 << n) {
                // a set is acyclic iff it has a source whose removal leaves an
                // acyclic set
                let m_us = m as usize;
                t[m_us] = bits(m).any(|v| inn[v] & m == 0 && t[(m & !(1 << v)) as usize]);
            }
            t
        });
        Chooser { k, universe, out, inn, acyclic_table, memo: HashMap::new() }
    }

    fn acyclic(&self, mask: u64) -> bool {
        match &self.acyclic_table {
            Some(t) => t[mask as usize],
            None => acyclic_mask(&self.inn, mask),
        }
    }

    fn full_universe(&self, size: usize) -> bool {
        self.universe >= self.k * size
    }

    /// Repeatedly drop vertices with `min(d⁺, d⁻) < k` inside `mask`.
    fn strip_low_degree(&self, mut mask: u64) -> u64 {
        loop {
            let low = bits(mask)
                .filter(|&v| {
                    let dout = (self.out[v] & mask).count_ones() as usize;
                    let din = (self.inn[v] & mask).count_ones() as usize;
                    dout.min(din) < self.k
                })
                .fold(0u64, |a, v| a | 1 << v);
            if low == 0 {
                return mask;
            }
            mask &= !low;
        }
    }

    fn reach(&self, from: usize, mask: u64, adj: &[u64]) -> u64 {
        let mut seen = 1u64 << from;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= adj[v] & mask;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    fn strong_components(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut comps = Vec::new();
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let c = self.reach(v, mask, &self.out) & self.reach(v, mask, &self.inn);
            comps.push(c);
            rest &= !c;
        }
        comps
    }

    fn choosable(&mut self, mask: u64) -> bool {
        if let Some(&r) = self.memo.get(&mask) {
            return r;
        }
        let reduced = self.strip_low_degree(mask);
        let comps = self.strong_components(reduced);
        let r = if comps.len() == 1 && comps[0] == mask {
            self.choosable_strong(mask)
        } else {
            comps.into_iter().filter(|c| c.count_ones() > 1).all(|c| self.choosable(c))
        };
        self.memo.insert(mask, r);
        r
    }

    fn choosable_strong(&mut self, mask: u64) -> bool {
        let size = mask.count_ones() as usize;
        let shared_only = self.full_universe(size);
        if shared_only && !bits(mask).all(|v| self.choosable(mask & !(1 << v))) {
            return false;
        }
        let verts: Vec<usize> = bits(mask).collect();
        let mut e = Enumeration {
            c: self,
            verts: &verts,
            deg: vec![0; verts.len()],
            supports: Vec::new(),
            shared_only,
            found_bad: false,
        };
        e.vertex(0);
        !e.found_bad
    }
}

struct Enumeration<'a> {
    c: &'a Chooser,
    verts: &'a [usize],
    /// Number of supports containing each position so far.
    deg: Vec<usize>,
    /// Supports chosen so far, as masks over original vertex indices.
    supports: Vec<u64>,
    shared_only: bool,
    found_bad: bool,
}

impl Enumeration<'_> {
    /// Choose the supports whose least member is position `i`.
    fn vertex(&mut self, i: usize) {
        if self.found_bad {
            return;
        }
        if i == self.verts.len() {
            if !self.colourable(u64::MAX) {
                self.found_bad = true;
            }
            return;
        }
        if i > 0 && self.shared_only {
            // positions < i have complete lists; an uncolourable prefix
            // extends to a bad assignment using private colours
            let prefix = self.verts[..i].iter().fold(0u64, |a, &v| a | 1 << v);
            if !self.colourable(prefix) {
                self.found_bad = true;
                return;
            }
        }
        if self.deg[i] > self.c.k {
            return;
        }
        let need = self.c.k - self.deg[i];
        if !self.shared_only && self.supports.len() + need > self.c.universe {
            return;
        }
        let rest = self.verts.len() - i - 1;
        self.choose(i, need, 0, rest);
    }

    /// Add `need` supports `{i} ∪ T` with `T` a subset of the later
    /// positions, encoded as `code`, in non-decreasing code order.
    fn choose(&mut self, i: usize, need: usize, min_code: u64, rest: usize) {
        if self.found_bad {
            return;
        }
        if need == 0 {
            self.vertex(i + 1);
            return;
        }
        let start = if self.shared_only { min_code.max(1) } else { min_code };
        for code in start..(1u64 << rest) {
            let later = bits(code).map(|b| i + 1 + b);
            if later.clone().any(|p| self.deg[p] >= self.c.k) {
                continue;
            }
            let mut support = 1u64 << self.verts[i];
            for p in later.clone() {
                support |= 1 << self.verts[p];
                self.deg[p] += 1;
            }
            self.supports.push(support);
            self.choose(i, need - 1, code, rest);
            self.supports.pop();
            for p in later {
                self.deg[p] -= 1;
            }
            if self.found_bad {
                return;
            }
        }
    }

    /// Whether the vertices of `within` can each pick a support containing
    /// them with every chosen class acyclic.
    fn colourable(&self, within: u64) -> bool {
        let order: Vec<usize> = self.verts.iter().copied().filter(|&v| within >> v & 1 == 1).collect();
        let mut classes = vec![0u64; self.supports.len()];
        self.assign(&order, 0, &mut classes)
    }

    fn assign(&self, order: &[usize], i: usize, classes: &mut [u64]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for s in 0..self.supports.len() {
            if self.supports[s] >> v & 1 == 0 {
                continue;
            }
            // an empty class behaves like an earlier empty class with the
            // same support
            if classes[s] == 0 && s > 0 && self.supports[s - 1] == self.supports[s] && classes[s - 1] == 0 {
                continue;
            }
            let next = classes[s] | 1 << v;
            if !self.c.acyclic(next) {
                continue;
            }
            let prev = classes[s];
            classes[s] = next;
            if self.assign(order, i + 1, classes) {
                classes[s] = prev;
                return true;
            }
            classes[s] = prev;
        }
        false
    }
}

/// Whether every assignment of `k`-subsets of a `universe`-colour palette to
/// the vertices admits a list dicolouring. `universe = None` means `k·n`,
/// which is enough colours to realise every assignment.
pub fn is_k_dichoosable(d: &Digraph, k: usize, universe: Option<usize>) -> Result<bool> {
    let n = d.n();
    if n > MAX_VERTICES {
        return Err(Error::InvalidParameter(format!("dichoosability needs n ≤ {MAX_VERTICES}, got {n}")));
    }
    let universe = universe.unwrap_or(k * n);
    if universe < k {
        return Err(Error::InvalidParameter(format!("universe {universe} is smaller than k = {k}")));
    }
    if n == 0 {
        return Ok(true);
    }
    if k == 0 {
        return Ok(false);
    }
    let mut c = Chooser::new(d, k, universe);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(c.choosable(all))
}
