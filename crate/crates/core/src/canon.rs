//! Canonical labelling of digraphs by colour refinement and
//! individualisation, with twin pruning.

use std::collections::BTreeMap;

use crate::digraph::Digraph;

/// Arc type between an ordered pair, as seen from the first vertex.
fn arc_type(d: &Digraph, u: usize, v: usize) -> u8 {
    match (d.has_arc(u, v), d.has_arc(v, u)) {
        (true, true) => 3,
        (true, false) => 1,
        (false, true) => 2,
        (false, false) => 0,
    }
}

/// A colour and the sorted multiset of (neighbour colour, arc type).
type Signature = (usize, Vec<(usize, u8)>);

/// Refine `colour` to the coarsest equitable colouring finer than it.
/// Colours are renumbered by sorted signature, so the result depends only on
/// the isomorphism type of `(d, colour)`.
fn refine(d: &Digraph, colour: &mut [usize]) {
    let n = d.n();
    let mut classes = count_classes(colour);
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|v| {
                let mut s: Vec<(usize, u8)> = d
                    .out_neighbours(v)
                    .iter()
                    .chain(d.in_neighbours(v))
                    .map(|&w| (colour[w], arc_type(d, v, w)))
                    .collect();
                s.sort_unstable();
                (colour[v], s)
            })
            .collect();
        let mut rank: BTreeMap<&Signature, usize> = BTreeMap::new();
        for s in &sigs {
            rank.insert(s, 0);
        }
        for (i, r) in rank.values_mut().enumerate() {
            *r = i;
        }
        for v in 0..n {
            colour[v] = rank[&sigs[v]];
        }
        let now = rank.len();
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colour: &[usize]) -> usize {
    let mut c = colour.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Swapping `u` and `v` is an automorphism.
fn twins(d: &Digraph, u: usize, v: usize) -> bool {
    if d.has_arc(u, v) != d.has_arc(v, u) {
        return false;
    }
    let strip = |s: &[usize], x: usize| s.iter().copied().filter(move |&w| w != x).collect::<Vec<_>>();
    strip(d.out_neighbours(u), v) == strip(d.out_neighbours(v), u)
        && strip(d.in_neighbours(u), v) == strip(d.in_neighbours(v), u)
}

struct Search<'a> {
    d: &'a Digraph,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn encode(&self, label: &[usize]) -> Vec<u64> {
        let n = self.d.n();
        let words = n.div_ceil(64).max(1);
        let mut inverse = vec![0; n];
        for (v, &l) in label.iter().enumerate() {
            inverse[l] = v;
        }
        let mut code = vec![0u64; n * words];
        for (i, &v) in inverse.iter().enumerate() {
            for &w in self.d.out_neighbours(v) {
                let j = label[w];
                code[i * words + j / 64] |= 1 << (63 - j % 64);
            }
        }
        code
    }

    fn descend(&mut self, colour: Vec<usize>) {
        let n = self.d.n();
        let mut sizes = vec![0usize; n];
        for &c in &colour {
            sizes[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
            let code = self.encode(&colour);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, colour));
            }
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colour[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| twins(self.d, u, v)) {
                continue;
            }
            tried.push(v);
            // individualise v: it precedes the rest of its cell
            let mut next: Vec<usize> = colour.iter().map(|&c| 2 * c + 1).collect();
            next[v] = 2 * target;
            refine(self.d, &mut next);
            self.descend(next);
        }
    }
}

/// A permutation `label[v]` such that isomorphic digraphs get identical
/// relabelled arc sets.
pub fn canonical_labelling(d: &Digraph) -> Vec<usize> {
    let mut colour = vec![0; d.n()];
    refine(d, &mut colour);
    let mut s = Search { d, best: None };
    s.descend(colour);
    s.best.map(|(_, l)| l).unwrap_or_default()
}

/// The digraph relabelled by [`canonical_labelling`].
pub fn canonical_form(d: &Digraph) -> Digraph {
    let label = canonical_labelling(d);
    Digraph::from_arcs(d.n(), d.arcs().map(|(u, v)| (label[u], label[v]))).expect("relabelling is a bijection")
}

pub fn are_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    a.n() == b.n() && a.arc_count() == b.arc_count() && canonical_form(a) == canonical_form(b)
}
