//! Exact dicolouring: validity, k-dicolourability, list-dicolourability,
//! the dichromatic number, and greedy completion of partial
//! (k, ℓ)-dicolourings.

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::params::{biclique_number, degree_profile};

/// A possibly partial assignment of colours `0, 1, …` to vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dicolouring {
    pub colours: Vec<Option<usize>>,
}

impl Dicolouring {
    pub fn empty(n: usize) -> Self {
        Dicolouring { colours: vec![None; n] }
    }

    pub fn total(colours: Vec<usize>) -> Self {
        Dicolouring { colours: colours.into_iter().map(Some).collect() }
    }

    pub fn n(&self) -> usize {
        self.colours.len()
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.colours[v]
    }

    pub fn is_total(&self) -> bool {
        self.colours.iter().all(Option::is_some)
    }

    pub fn coloured(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.colours.iter().enumerate().filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    /// Number of distinct colours used.
    pub fn colour_count(&self) -> usize {
        let mut used: Vec<usize> = self.colours.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    /// One past the largest colour used.
    pub fn palette_size(&self) -> usize {
        self.colours.iter().flatten().map(|&c| c + 1).max().unwrap_or(0)
    }

    /// Vertices of each colour, indexed by colour.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.palette_size()];
        for (v, c) in self.coloured() {
            classes[c].push(v);
        }
        classes
    }
}

/// Every colour class of `c` induces an acyclic subdigraph, and `c` is total
/// when `require_total` is set.
pub fn is_valid(d: &Digraph, c: &Dicolouring, require_total: bool) -> bool {
    if c.n() != d.n() || (require_total && !c.is_total()) {
        return false;
    }
    // Kahn's algorithm on the union of the monochromatic arcs.
    let mono = |u: usize, v: usize| c.colours[u].is_some() && c.colours[u] == c.colours[v];
    let mut indeg: Vec<usize> =
        (0..d.n()).map(|v| d.in_neighbours(v).iter().filter(|&&u| mono(u, v)).count()).collect();
    let mut stack: Vec<usize> = (0..d.n()).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = stack.pop() {
        seen += 1;
        for &w in d.out_neighbours(u) {
            if mono(u, w) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
    }
    seen == d.n()
}

const NONE: usize = usize::MAX;

/// Backtracking state shared by the k-dicolouring and list searches.
struct Search<'a> {
    d: &'a Digraph,
    colour: Vec<usize>,
    target: Vec<u32>,
    visited: Vec<u32>,
    stamp: u32,
    stack: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(d: &'a Digraph) -> Self {
        Search {
            d,
            colour: vec![NONE; d.n()],
            target: vec![0; d.n()],
            visited: vec![0; d.n()],
            stamp: 0,
            stack: Vec::new(),
        }
    }

    /// Whether `v` can join class `c` without closing a directed cycle:
    /// no path inside the class from an out-neighbour of `v` back to an
    /// in-neighbour of `v`.
    fn can_place(&mut self, v: usize, c: usize) -> bool {
        self.stamp += 1;
        let s = self.stamp;
        let mut any = false;
        for &u in self.d.in_neighbours(v) {
            if self.colour[u] == c {
                self.target[u] = s;
                any = true;
            }
        }
        if !any {
            return true;
        }
        self.stack.clear();
        for &w in self.d.out_neighbours(v) {
            if self.colour[w] == c {
                if self.target[w] == s {
                    return false;
                }
                if self.visited[w] != s {
                    self.visited[w] = s;
                    self.stack.push(w);
                }
            }
        }
        while let Some(x) = self.stack.pop() {
            for &y in self.d.out_neighbours(x) {
                if self.colour[y] == c && self.visited[y] != s {
                    if self.target[y] == s {
                        return false;
                    }
                    self.visited[y] = s;
                    self.stack.push(y);
                }
            }
        }
        true
    }

    fn k_colour(&mut self, order: &[usize], i: usize, k: usize, used: usize) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        // colours above `used` are interchangeable, so only the first is tried
        for c in 0..k.min(used + 1) {
            if self.can_place(v, c) {
                self.colour[v] = c;
                if self.k_colour(order, i + 1, k, used.max(c + 1)) {
                    return true;
                }
                self.colour[v] = NONE;
            }
        }
        false
    }

    fn list_colour(&mut self, order: &[usize], i: usize, lists: &[Vec<usize>]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for &c in &lists[v] {
            if self.can_place(v, c) {
                self.colour[v] = c;
                if self.list_colour(order, i + 1, lists) {
                    return true;
                }
                self.colour[v] = NONE;
            }
        }
        false
    }

    fn result(&self) -> Dicolouring {
        Dicolouring { colours: self.colour.iter().map(|&c| (c != NONE).then_some(c)).collect() }
    }
}

/// Vertices by descending `d⁺ + d⁻`, ties by index.
pub fn branching_order(d: &Digraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(d.out_degree(v) + d.in_degree(v)), v));
    order
}

pub fn k_dicolourable(d: &Digraph, k: usize) -> Option<Dicolouring> {
    if d.n() == 0 {
        return Some(Dicolouring::empty(0));
    }
    if k == 0 {
        return None;
    }
    let order = branching_order(d);
    let mut s = Search::new(d);
    s.k_colour(&order, 0, k, 0).then(|| s.result())
}

/// `χ⃗(d)` together with an optimal dicolouring.
pub fn dichromatic_number_with_witness(d: &Digraph) -> (usize, Dicolouring) {
    if d.n() == 0 {
        return (0, Dicolouring::empty(0));
    }
    let mut k = biclique_number(d).max(1);
    loop {
        if let Some(c) = k_dicolourable(d, k) {
            return (k, c);
        }
        k += 1;
    }
}

pub fn dichromatic_number(d: &Digraph) -> usize {
    dichromatic_number_with_witness(d).0
}

/// An `L`-dicolouring, where `lists[v]` is the list of `v`.
pub fn list_dicolourable(d: &Digraph, lists: &[Vec<usize>]) -> Result<Option<Dicolouring>> {
    if lists.len() < d.n() {
        return Err(Error::MissingList(lists.len()));
    }
    let lists: Vec<Vec<usize>> = lists[..d.n()]
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect();
    let mut order: Vec<usize> = (0..d.n()).collect();
    order.sort_by_key(|&v| {
        (lists[v].len(), std::cmp::Reverse(d.out_degree(v) + d.in_degree(v)), v)
    });
    let mut s = Search::new(d);
    Ok(s.list_colour(&order, 0, &lists).then(|| s.result()))
}

fn repeated_colours(c: &Dicolouring, nbrs: &[usize], counts: &mut [usize]) -> usize {
    let mut repeated = 0;
    for &u in nbrs {
        if let Some(x) = c.colours[u] {
            counts[x] += 1;
            if counts[x] == 2 {
                repeated += 1;
            }
        }
    }
    for &u in nbrs {
        if let Some(x) = c.colours[u] {
            counts[x] = 0;
        }
    }
    repeated
}

/// Whether `v` sees at least `ell` colours twice in its in-neighbourhood
/// (`Some(true)`), otherwise in its out-neighbourhood (`Some(false)`).
fn repeated_side(d: &Digraph, c: &Dicolouring, v: usize, ell: usize, counts: &mut [usize]) -> Option<bool> {
    if repeated_colours(c, d.in_neighbours(v), counts) >= ell {
        Some(true)
    } else if repeated_colours(c, d.out_neighbours(v), counts) >= ell {
        Some(false)
    } else {
        None
    }
}

/// `partial` is a valid partial dicolouring with colours in `[k]` and every
/// vertex sees `ell` colours repeated in its in- or out-neighbourhood.
pub fn check_partial_kl(d: &Digraph, partial: &Dicolouring, k: usize, ell: usize) -> bool {
    if !is_valid(d, partial, false) || partial.palette_size() > k {
        return false;
    }
    if ell == 0 {
        return true;
    }
    let mut counts = vec![0; partial.palette_size()];
    (0..d.n()).all(|v| repeated_side(d, partial, v, ell, &mut counts).is_some())
}

/// Completes a partial (k, ℓ)-dicolouring to a dicolouring with colours in
/// `[Δ + 1 − ℓ]`, colouring the remaining vertices in ascending order.
pub fn greedy_complete(d: &Digraph, partial: &Dicolouring, k: usize, ell: usize) -> Result<Dicolouring> {
    if partial.n() != d.n() || !check_partial_kl(d, partial, k, ell) {
        return Err(Error::NotPartialKL { k, ell });
    }
    let delta = degree_profile(d).delta_max;
    if delta + 1 < ell + k {
        return Err(Error::InvalidParameter(format!(
            "palette Δ + 1 − ℓ = {} + 1 − {ell} is smaller than k = {k}",
            delta
        )));
    }
    let palette = delta + 1 - ell;
    let mut out = partial.clone();
    let mut counts = vec![0; partial.palette_size().max(palette)];
    let mut seen = vec![false; palette];
    for v in 0..d.n() {
        if out.colours[v].is_some() {
            continue;
        }
        let use_in = repeated_side(d, partial, v, ell, &mut counts).expect("checked above");
        let side = if use_in { d.in_neighbours(v) } else { d.out_neighbours(v) };
        for &u in side {
            if let Some(x) = out.colours[u] {
                if x < palette {
                    seen[x] = true;
                }
            }
        }
        let free = (0..palette).find(|&x| !seen[x]);
        for &u in side {
            if let Some(x) = out.colours[u] {
                if x < palette {
                    seen[x] = false;
                }
            }
        }
        out.colours[v] = Some(free.ok_or(Error::CompletionStuck(v))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn validity() {
        let k2 = complete_digraph(2);
        assert!(!is_valid(&k2, &Dicolouring::total(vec![0, 0]), true));
        assert!(is_valid(&k2, &Dicolouring::total(vec![0, 1]), true));
        assert!(is_valid(&directed_cycle(4), &Dicolouring::total(vec![0, 1, 0, 1]), true));
        assert!(is_valid(&directed_cycle(4), &Dicolouring::empty(4), false));
        assert!(!is_valid(&directed_cycle(4), &Dicolouring::empty(4), true));
        assert!(!is_valid(&directed_cycle(3), &Dicolouring::total(vec![0, 0, 0]), true));
    }

    #[test]
    fn k_colouring() {
        assert!(k_dicolourable(&directed_cycle(3), 1).is_none());
        let c = k_dicolourable(&directed_cycle(3), 2).unwrap();
        assert!(is_valid(&directed_cycle(3), &c, true));
        let ob = obstruction(5, 2).unwrap();
        assert!(k_dicolourable(&ob, 4).is_none());
        let c = k_dicolourable(&ob, 5).unwrap();
        assert!(is_valid(&ob, &c, true) && c.palette_size() <= 5);
    }

    #[test]
    fn chromatic_numbers() {
        for n in 0..6 {
            assert_eq!(dichromatic_number(&complete_digraph(n)), n);
        }
        assert_eq!(dichromatic_number(&transitive_tournament(6)), 1);
        assert_eq!(dichromatic_number(&obstruction(5, 2).unwrap()), 5);
        assert_eq!(dichromatic_number(&obstruction(7, 2).unwrap()), 5);
        assert_eq!(dichromatic_number(&obstruction(4, 2).unwrap()), 4);
    }

    #[test]
    fn lists() {
        let k2 = complete_digraph(2);
        assert!(list_dicolourable(&k2, &[vec![1], vec![1]]).unwrap().is_none());
        let c = list_dicolourable(&k2, &[vec![1], vec![2]]).unwrap().unwrap();
        assert_eq!(c.colours, vec![Some(1), Some(2)]);
        let d = complete_minus_matching(3, 1).unwrap();
        assert!(list_dicolourable(&d, &[vec![1, 2], vec![1, 2], vec![1, 2]]).unwrap().is_some());
        assert_eq!(list_dicolourable(&k2, &[vec![1]]), Err(Error::MissingList(1)));
    }

    #[test]
    fn partial_kl() {
        let c5 = directed_cycle(5);
        assert!(check_partial_kl(&c5, &Dicolouring::empty(5), 3, 0));
        let k2 = complete_digraph(2);
        assert!(!check_partial_kl(&k2, &Dicolouring::total(vec![0, 1]), 2, 1));
        assert!(!check_partial_kl(&k2, &Dicolouring::empty(2), 2, 1));
    }

    /// Centre 0 with in-neighbours 1..=4; feeders 5 and 6 each point to
    /// every leaf so the leaves see a repeated colour too.
    fn in_star_instance() -> (Digraph, Dicolouring) {
        let mut arcs: Vec<(usize, usize)> = (1..=4).map(|l| (l, 0)).collect();
        for f in [5, 6] {
            arcs.extend((1..=4).map(|l| (f, l)));
        }
        let d = Digraph::from_arcs(7, arcs).unwrap();
        let c = Dicolouring {
            colours: vec![None, Some(0), Some(0), Some(1), Some(1), Some(2), Some(2)],
        };
        (d, c)
    }

    #[test]
    fn greedy_in_star() {
        let (d, partial) = in_star_instance();
        assert_eq!(degree_profile(&d).delta_max, 4);
        assert!(check_partial_kl(&d, &partial, 3, 1));
        let out = greedy_complete(&d, &partial, 3, 1).unwrap();
        // N⁻(0) uses colours 0 and 1, so the centre gets 2
        assert_eq!(out.colours[0], Some(2));
        assert!(is_valid(&d, &out, true) && out.palette_size() <= 4);
    }

    #[test]
    fn greedy_basics() {
        let d = complete_digraph(3);
        let total = Dicolouring::total(vec![0, 1, 2]);
        assert_eq!(greedy_complete(&d, &total, 3, 0).unwrap(), total);
        let d = random_digraph(12, 0.2, 0.4, 5).unwrap();
        let delta = degree_profile(&d).delta_max;
        let out = greedy_complete(&d, &Dicolouring::empty(12), delta + 1, 0).unwrap();
        assert!(is_valid(&d, &out, true) && out.palette_size() <= delta + 1);
        assert_eq!(
            greedy_complete(&complete_digraph(2), &Dicolouring::empty(2), 2, 1),
            Err(Error::NotPartialKL { k: 2, ell: 1 })
        );
    }
}
