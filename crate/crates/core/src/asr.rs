//! Acyclic systems of representatives (ASR): acyclic vertex sets meeting
//! every part of a partition into independent sets exactly once.
//!
//! [`find_asr`] follows the augmentation argument: recursively find an ASR
//! of all parts but the anchor's, then grow partial systems `Y_1 ⊂ Y_2 ⊂ …`
//! by picking vertices `x_{i+1}` with no in-neighbour among the earlier
//! `x_j` and no out-neighbour in `Y_i`. A configuration where no such vertex
//! exists is a *good triplet*, which the degree condition rules out.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::solver::{is_valid, Dicolouring};

/// Incrementally grown vertex set kept acyclic.
pub(crate) struct AcyclicGrower<'a> {
    d: &'a Digraph,
    inside: Vec<bool>,
    target: Vec<u32>,
    seen: Vec<u32>,
    stamp: u32,
    stack: Vec<usize>,
}

impl<'a> AcyclicGrower<'a> {
    pub(crate) fn new(d: &'a Digraph) -> Self {
        let n = d.n();
        AcyclicGrower { d, inside: vec![false; n], target: vec![0; n], seen: vec![0; n], stamp: 0, stack: Vec::new() }
    }

    pub(crate) fn can_add(&mut self, v: usize) -> bool {
        self.stamp += 1;
        let s = self.stamp;
        let mut any = false;
        for &u in self.d.in_neighbours(v) {
            if self.inside[u] {
                self.target[u] = s;
                any = true;
            }
        }
        if !any {
            return true;
        }
        self.stack.clear();
        for &w in self.d.out_neighbours(v) {
            if self.inside[w] && self.seen[w] != s {
                if self.target[w] == s {
                    return false;
                }
                self.seen[w] = s;
                self.stack.push(w);
            }
        }
        while let Some(x) = self.stack.pop() {
            for &y in self.d.out_neighbours(x) {
                if self.inside[y] && self.seen[y] != s {
                    if self.target[y] == s {
                        return false;
                    }
                    self.seen[y] = s;
                    self.stack.push(y);
                }
            }
        }
        true
    }

    pub(crate) fn add(&mut self, v: usize) {
        self.inside[v] = true;
    }

    pub(crate) fn remove(&mut self, v: usize) {
        self.inside[v] = false;
    }
}

/// A digraph with its vertices partitioned into independent sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsrInstance {
    digraph: Digraph,
    parts: Vec<Vec<usize>>,
    k: usize,
    part_of: Vec<usize>,
}

impl AsrInstance {
    pub fn new(digraph: Digraph, parts: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be positive".into()));
        }
        let n = digraph.n();
        let mut part_of = vec![usize::MAX; n];
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                if v >= n {
                    return Err(Error::InvalidVertex { vertex: v, n });
                }
                if part_of[v] != usize::MAX {
                    return Err(Error::InvalidParameter(format!("vertex {v} lies in two parts")));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidParameter(format!("vertex {v} lies in no part")));
        }
        if let Some((u, v)) = digraph.arcs().find(|&(u, v)| part_of[u] == part_of[v]) {
            return Err(Error::InvalidParameter(format!("part {} is not independent: arc {u} → {v}", part_of[u])));
        }
        let parts = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        Ok(AsrInstance { digraph, parts, k, part_of })
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// Every part is non-empty and every `v ∈ V_i` has `d⁺(v) ≤ k` and
    /// `d⁻(v) ≤ |V_i| − k`.
    pub fn precondition_holds(&self) -> bool {
        self.parts.iter().all(|p| {
            !p.is_empty()
                && p.iter().all(|&v| {
                    self.digraph.out_degree(v) <= self.k && self.digraph.in_degree(v) + self.k <= p.len()
                })
        })
    }

    /// `set` is acyclic and meets every part exactly once.
    pub fn is_asr(&self, set: &[usize]) -> bool {
        let mut hits = vec![0usize; self.parts.len()];
        for &v in set {
            if v >= self.digraph.n() {
                return false;
            }
            hits[self.part_of[v]] += 1;
        }
        hits.iter().all(|&h| h == 1) && self.digraph.is_acyclic(set)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AsrStrategy {
    /// Each `R_{i+1}` minimises `|N⁺(x_{i+1}) ∩ R|` over all ASRs of the
    /// other parts agreeing with the earlier `Y'_j` (branch and bound).
    #[default]
    Minimize,
    /// `R_{i+1} = R_i`; when `x_{i+1}` has no out-neighbour in `R` it is
    /// swapped in for the representative of its part, strictly shrinking an
    /// earlier `Y'_j`.
    Exchange,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AsrRoute {
    Augmentation,
    ExhaustiveFallback,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsrOutcome {
    /// Sorted vertex set.
    pub set: Vec<usize>,
    pub route: AsrRoute,
    pub precondition_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodTriplet {
    /// Indices of the parts in `I`.
    pub parts: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// Search context over a fixed instance; `parts` arguments are lists of part
/// indices describing the subinstance `D⟨V_I⟩`.
struct Ctx<'a> {
    inst: &'a AsrInstance,
    strategy: AsrStrategy,
    steps: usize,
}

const STEP_LIMIT: usize = 10_000_000;

impl Ctx<'_> {
    fn d(&self) -> &Digraph {
        &self.inst.digraph
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        self.inst.digraph.has_arc(u, v)
    }

    /// An ASR of the parts `idx` containing `x1`, which lies in the last of them.
    fn asr(&mut self, idx: &[usize], x1: usize) -> Result<Vec<usize>> {
        let m = idx.len();
        if m == 1 {
            return Ok(vec![x1]);
        }
        let prev = &idx[..m - 1];
        let last = prev[m - 2];
        let sub_anchor = self.inst.parts[last][0];
        let mut r = self.asr(prev, sub_anchor)?;
        if self.strategy == AsrStrategy::Minimize {
            r = self.constrained_min(prev, &[], &[], x1, r);
        }

        let mut xs = vec![x1];
        let mut ys: Vec<Vec<usize>> = vec![self.out_in(x1, &r)];
        loop {
            self.steps += 1;
            if self.steps > STEP_LIMIT {
                return Err(Error::InternalInconsistency("augmentation did not terminate".into()));
            }
            let i = xs.len() - 1;
            if ys[i].is_empty() {
                if i == 0 {
                    r.push(x1);
                    r.sort_unstable();
                    return Ok(r);
                }
                if self.strategy == AsrStrategy::Minimize {
                    return Err(Error::InternalInconsistency(format!(
                        "x_{} has no out-neighbour in a minimising R, contradicting an earlier minimum",
                        i + 1
                    )));
                }
                // swap x_{i+1} in for the representative y_j of its part
                let xi = xs[i];
                let p = self.inst.part_of[xi];
                let j = (0..i)
                    .find(|&j| ys[j].iter().any(|&y| self.inst.part_of[y] == p))
                    .ok_or_else(|| Error::InternalInconsistency("x lies outside ι(Y)".into()))?;
                let pos = r.iter().position(|&v| self.inst.part_of[v] == p).expect("R meets every part");
                r[pos] = xi;
                xs.truncate(j + 1);
                ys.truncate(j + 1);
                ys[j] = self.out_in(xs[j], &r);
                continue;
            }
            let y_all: Vec<usize> = ys.iter().flatten().copied().collect();
            let Some(next) = self.select_next(&xs, &y_all) else {
                let t = self.triplet(&xs, &y_all);
                let detail = if is_good_triplet(self.inst, x1, &t) { "a good triplet" } else { "a stuck state" };
                return Err(Error::InternalInconsistency(format!(
                    "augmentation reached {detail} (parts {:?}) although the degree condition holds",
                    t.parts
                )));
            };
            if self.strategy == AsrStrategy::Minimize {
                r = self.constrained_min(prev, &xs, &ys, next, r);
            }
            xs.push(next);
            ys.push(self.out_in(next, &r));
        }
    }

    fn out_in(&self, x: usize, r: &[usize]) -> Vec<usize> {
        r.iter().copied().filter(|&v| self.has_arc(x, v)).collect()
    }

    /// A vertex of `V_{ι(Y)} ∖ (X ∪ Y)` with no in-neighbour in `X` and no
    /// out-neighbour in `Y`; the least such vertex.
    fn select_next(&self, xs: &[usize], ys: &[usize]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for &y in ys {
            for &v in &self.inst.parts[self.inst.part_of[y]] {
                if xs.contains(&v) || ys.contains(&v) {
                    continue;
                }
                if xs.iter().any(|&x| self.has_arc(x, v)) || ys.iter().any(|&w| self.has_arc(v, w)) {
                    continue;
                }
                best = Some(best.map_or(v, |b: usize| b.min(v)));
            }
        }
        best
    }

    fn triplet(&self, xs: &[usize], ys: &[usize]) -> GoodTriplet {
        let mut parts: Vec<usize> = ys.iter().map(|&y| self.inst.part_of[y]).collect();
        parts.sort_unstable();
        let mut x = xs.to_vec();
        x.sort_unstable();
        let mut y = ys.to_vec();
        y.sort_unstable();
        GoodTriplet { parts, x, y }
    }

    /// Among ASRs `R` of the parts `idx` with `R ∩ N⁺(x_j) = Y'_j` for every
    /// earlier step, one minimising `|N⁺(target) ∩ R|`. `incumbent` must
    /// satisfy the constraints.
    fn constrained_min(
        &self,
        idx: &[usize],
        xs: &[usize],
        ys: &[Vec<usize>],
        target: usize,
        incumbent: Vec<usize>,
    ) -> Vec<usize> {
        let forced: Vec<Option<usize>> = idx
            .iter()
            .map(|&p| ys.iter().flatten().copied().find(|&y| self.inst.part_of[y] == p))
            .collect();
        let mut slots: Vec<Vec<usize>> = idx
            .iter()
            .zip(&forced)
            .map(|(&p, f)| match f {
                Some(y) => vec![*y],
                None => {
                    let mut c: Vec<usize> = self.inst.parts[p]
                        .iter()
                        .copied()
                        .filter(|&v| xs.iter().all(|&x| !self.has_arc(x, v)))
                        .collect();
                    c.sort_by_key(|&v| (self.has_arc(target, v), v));
                    c
                }
            })
            .collect();
        slots.sort_by_key(|s| s.len());
        let cost = |set: &[usize]| set.iter().filter(|&&v| self.has_arc(target, v)).count();
        let mut best_cost = cost(&incumbent);
        let mut best = incumbent;
        if best_cost == 0 {
            return best;
        }
        let mut grower = AcyclicGrower::new(self.d());
        let mut chosen = Vec::with_capacity(slots.len());
        self.branch(&slots, 0, 0, target, &mut grower, &mut chosen, &mut best_cost, &mut best);
        best.sort_unstable();
        best
    }

    #[allow(clippy::too_many_arguments)]
    fn branch(
        &self,
        slots: &[Vec<usize>],
        i: usize,
        cost: usize,
        target: usize,
        grower: &mut AcyclicGrower,
        chosen: &mut Vec<usize>,
        best_cost: &mut usize,
        best: &mut Vec<usize>,
    ) {
        if cost >= *best_cost {
            return;
        }
        if i == slots.len() {
            *best_cost = cost;
            *best = chosen.clone();
            return;
        }
        for &v in &slots[i] {
            if !grower.can_add(v) {
                continue;
            }
            grower.add(v);
            chosen.push(v);
            let c = cost + usize::from(self.has_arc(target, v));
            self.branch(slots, i + 1, c, target, grower, chosen, best_cost, best);
            chosen.pop();
            grower.remove(v);
            if *best_cost == 0 {
                return;
            }
        }
    }
}

/// Exhaustive search for an ASR containing `anchor` (when given).
pub fn exhaustive_asr(inst: &AsrInstance, anchor: Option<usize>) -> Option<Vec<usize>> {
    let mut slots: Vec<Vec<usize>> = inst
        .parts
        .iter()
        .map(|p| match anchor {
            Some(a) if p.contains(&a) => vec![a],
            _ => p.clone(),
        })
        .collect();
    slots.sort_by_key(|s| s.len());
    fn go(slots: &[Vec<usize>], i: usize, g: &mut AcyclicGrower, chosen: &mut Vec<usize>) -> bool {
        if i == slots.len() {
            return true;
        }
        for &v in &slots[i] {
            if g.can_add(v) {
                g.add(v);
                chosen.push(v);
                if go(slots, i + 1, g, chosen) {
                    return true;
                }
                chosen.pop();
                g.remove(v);
            }
        }
        false
    }
    let mut g = AcyclicGrower::new(&inst.digraph);
    let mut chosen = Vec::new();
    go(&slots, 0, &mut g, &mut chosen).then(|| {
        chosen.sort_unstable();
        chosen
    })
}

pub fn find_asr(inst: &AsrInstance, anchor: Option<usize>) -> Result<AsrOutcome> {
    find_asr_with(inst, anchor, AsrStrategy::default())
}

/// An ASR containing `anchor` (default: the least vertex of the last part).
///
/// Under the degree condition the augmentation procedure runs and any
/// failure is reported as [`Error::InternalInconsistency`]. Otherwise an
/// exhaustive search is tried and [`Error::NoAsr`] returned if it fails.
pub fn find_asr_with(inst: &AsrInstance, anchor: Option<usize>, strategy: AsrStrategy) -> Result<AsrOutcome> {
    if let Some(a) = anchor {
        if a >= inst.digraph.n() {
            return Err(Error::InvalidVertex { vertex: a, n: inst.digraph.n() });
        }
    }
    if inst.parts.is_empty() {
        return Ok(AsrOutcome { set: Vec::new(), route: AsrRoute::Augmentation, precondition_holds: true });
    }
    let holds = inst.precondition_holds();
    if !holds {
        return match exhaustive_asr(inst, anchor) {
            Some(set) => Ok(AsrOutcome { set, route: AsrRoute::ExhaustiveFallback, precondition_holds: false }),
            None => Err(Error::NoAsr),
        };
    }
    let anchor_part = anchor.map_or(inst.parts.len() - 1, |a| inst.part_of[a]);
    let x1 = anchor.unwrap_or(inst.parts[anchor_part][0]);
    let mut idx: Vec<usize> = (0..inst.parts.len()).filter(|&p| p != anchor_part).collect();
    idx.push(anchor_part);
    let mut ctx = Ctx { inst, strategy, steps: 0 };
    let set = ctx.asr(&idx, x1)?;
    if !inst.is_asr(&set) || !set.contains(&x1) {
        return Err(Error::InternalInconsistency(format!("augmentation returned an invalid set {set:?}")));
    }
    Ok(AsrOutcome { set, route: AsrRoute::Augmentation, precondition_holds: true })
}

/// The four good-triplet properties, relative to the anchor `x1`:
/// `X`, `Y` disjoint acyclic with `x1 ∈ X`; `Y` an ASR of `D⟨V_I⟩`; every
/// `y ∈ Y` has exactly one in-neighbour in `X` and every `x ∈ X` an
/// out-neighbour in `Y`; every vertex of `V_I ∪ {x1}` has an in-neighbour
/// in `X` or an out-neighbour in `Y`.
pub fn is_good_triplet(inst: &AsrInstance, x1: usize, t: &GoodTriplet) -> bool {
    let d = &inst.digraph;
    let n = d.n();
    if x1 >= n || t.x.iter().chain(&t.y).any(|&v| v >= n) || t.parts.iter().any(|&p| p >= inst.parts.len()) {
        return false;
    }
    let anchor_part = inst.part_of[x1];
    let mut in_i = vec![false; inst.parts.len()];
    for &p in &t.parts {
        if p == anchor_part || in_i[p] {
            return false;
        }
        in_i[p] = true;
    }
    let in_vi = |v: usize| in_i[inst.part_of[v]];
    // 1.
    let mut in_x = vec![false; n];
    for &x in &t.x {
        in_x[x] = true;
    }
    if !in_x[x1] || t.y.iter().any(|&y| in_x[y]) || !d.is_acyclic(&t.x) || !d.is_acyclic(&t.y) {
        return false;
    }
    if t.x.iter().any(|&x| x != x1 && !in_vi(x)) {
        return false;
    }
    // 2.
    let mut hits = vec![0usize; inst.parts.len()];
    for &y in &t.y {
        if !in_vi(y) {
            return false;
        }
        hits[inst.part_of[y]] += 1;
    }
    if t.parts.iter().any(|&p| hits[p] != 1) {
        return false;
    }
    // 3.
    if t.y.iter().any(|&y| d.in_neighbours(y).iter().filter(|&&u| in_x[u]).count() != 1) {
        return false;
    }
    if t.x.iter().any(|&x| !t.y.iter().any(|&y| d.has_arc(x, y))) {
        return false;
    }
    // 4.
    let dominated = |v: usize| {
        d.in_neighbours(v).iter().any(|&u| in_x[u]) || t.y.iter().any(|&y| d.has_arc(v, y))
    };
    t.parts.iter().flat_map(|&p| inst.parts[p].iter().copied()).chain([x1]).all(dominated)
}

/// Exhaustive search for a good triplet with anchor `x1`.
pub fn find_good_triplet(inst: &AsrInstance, x1: usize) -> Option<GoodTriplet> {
    let anchor_part = inst.part_of[x1];
    let others: Vec<usize> = (0..inst.parts.len()).filter(|&p| p != anchor_part).collect();
    let d = &inst.digraph;
    for mask in 1u64..(1u64 << others.len().min(63)) {
        let parts: Vec<usize> = (0..others.len()).filter(|&b| mask >> b & 1 == 1).map(|b| others[b]).collect();
        let mut found = None;
        // Y: one acyclic representative per part in I
        let mut y = Vec::with_capacity(parts.len());
        enumerate_y(inst, &parts, 0, &mut y, &mut |y| {
            if !y.iter().any(|&w| d.has_arc(x1, w)) {
                return false;
            }
            // X: for each y its unique in-neighbour in X
            let mut picks = Vec::with_capacity(y.len());
            enumerate_x(inst, x1, &parts, y, 0, &mut picks, &mut |x| {
                let t = GoodTriplet { parts: parts.clone(), x: x.to_vec(), y: { let mut s = y.to_vec(); s.sort_unstable(); s } };
                if is_good_triplet(inst, x1, &t) {
                    found = Some(t);
                    true
                } else {
                    false
                }
            })
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn enumerate_y(
    inst: &AsrInstance,
    parts: &[usize],
    i: usize,
    y: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if i == parts.len() {
        return inst.digraph.is_acyclic(y) && f(y);
    }
    for &v in &inst.parts[parts[i]] {
        y.push(v);
        if enumerate_y(inst, parts, i + 1, y, f) {
            return true;
        }
        y.pop();
    }
    false
}

fn enumerate_x(
    inst: &AsrInstance,
    x1: usize,
    parts: &[usize],
    y: &[usize],
    i: usize,
    picks: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if i == y.len() {
        let mut x = picks.clone();
        x.sort_unstable();
        x.dedup();
        return x.contains(&x1) && f(&x);
    }
    let allowed = |u: usize| (u == x1 || parts.contains(&inst.part_of[u])) && !y.contains(&u);
    for &u in inst.digraph.in_neighbours(y[i]) {
        if allowed(u) {
            picks.push(u);
            if enumerate_x(inst, x1, parts, y, i + 1, picks, f) {
                return true;
            }
            picks.pop();
        }
    }
    false
}

/// `H`, its parts, and the pair `(v, c)` behind each vertex of `H`.
pub type Representatives = (Digraph, Vec<Vec<usize>>, Vec<(usize, usize)>);

/// The representative digraph `H` on pairs `(v, c)`, `c ∈ L(v)`, with an arc
/// `(u, c) → (v, c)` whenever `u → v`, and its parts `{(v, c) : c ∈ L(v)}`.
pub fn representative_digraph(d: &Digraph, lists: &[Vec<usize>]) -> Result<Representatives> {
    if lists.len() < d.n() {
        return Err(Error::MissingList(lists.len()));
    }
    let mut pairs = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut parts = Vec::with_capacity(d.n());
    for (v, l) in lists[..d.n()].iter().enumerate() {
        let mut l = l.clone();
        l.sort_unstable();
        l.dedup();
        let mut part = Vec::with_capacity(l.len());
        for c in l {
            index.insert((v, c), pairs.len());
            part.push(pairs.len());
            pairs.push((v, c));
        }
        parts.push(part);
    }
    let arcs: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .flat_map(|(i, &(u, c))| {
            let index = &index;
            d.out_neighbours(u).iter().filter_map(move |&v| index.get(&(v, c)).map(|&j| (i, j)))
        })
        .collect();
    Ok((Digraph::from_arcs(pairs.len(), arcs)?, parts, pairs))
}

/// An `L`-dicolouring read off an ASR of the representative digraph, when
/// every `v` and `c ∈ L(v)` satisfy
/// `|N⁺(v) ∩ {u : c ∈ L(u)}| ≤ k` and `|N⁻(v) ∩ {u : c ∈ L(u)}| ≤ |L(v)| − k`.
pub fn list_dicolour_asr(d: &Digraph, lists: &[Vec<usize>], k: usize) -> Result<Dicolouring> {
    let (h, parts, pairs) = representative_digraph(d, lists)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    for (v, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::PreconditionViolated(format!("vertex {v} has an empty list")));
        }
        for &i in part {
            if h.out_degree(i) > k || h.in_degree(i) + k > part.len() {
                return Err(Error::PreconditionViolated(format!(
                    "colour {} at vertex {v}: {} out- and {} in-neighbours share it, list size {}",
                    pairs[i].1,
                    h.out_degree(i),
                    h.in_degree(i),
                    part.len()
                )));
            }
        }
    }
    let inst = AsrInstance::new(h, parts, k)?;
    let out = find_asr(&inst, None)?;
    let mut colouring = Dicolouring::empty(d.n());
    for i in out.set {
        let (v, c) = pairs[i];
        colouring.colours[v] = Some(c);
    }
    if !is_valid(d, &colouring, true) {
        return Err(Error::InternalInconsistency("ASR of the representative digraph is not a dicolouring".into()));
    }
    Ok(colouring)
}

/// An acyclic set with one vertex in each biclique `C_i` of the partition,
/// when every `v ∈ C_i` has at most `k` out-neighbours and at most
/// `|C_i| − k` in-neighbours outside `C_i`.
pub fn acyclic_hitting_set(d: &Digraph, bicliques: &[Vec<usize>], k: usize) -> Result<Vec<usize>> {
    let n = d.n();
    let mut part_of = vec![usize::MAX; n];
    for (i, c) in bicliques.iter().enumerate() {
        for &v in c {
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if part_of[v] != usize::MAX {
                return Err(Error::InvalidParameter(format!("vertex {v} lies in two bicliques")));
            }
            part_of[v] = i;
        }
        for &u in c {
            for &v in c {
                if u != v && !d.has_arc(u, v) {
                    return Err(Error::InvalidParameter(format!("part {i} is not a biclique")));
                }
            }
        }
    }
    if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
        return Err(Error::InvalidParameter(format!("vertex {v} lies in no biclique")));
    }
    let reduced = Digraph::from_arcs(n, d.arcs().filter(|&(u, v)| part_of[u] != part_of[v]))?;
    let inst = AsrInstance::new(reduced, bicliques.to_vec(), k.max(1))?;
    if k == 0 || !inst.precondition_holds() {
        return Err(Error::PreconditionViolated(format!(
            "some vertex has more than k = {k} out-neighbours or more than |C_i| − k in-neighbours outside its biclique"
        )));
    }
    let set = find_asr(&inst, None)?.set;
    if !d.is_acyclic(&set) {
        return Err(Error::InternalInconsistency("hitting set is not acyclic".into()));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn single_part() {
        let inst = AsrInstance::new(Digraph::empty(1), vec![vec![0]], 1).unwrap();
        assert_eq!(find_asr(&inst, None).unwrap().set, vec![0]);
    }

    #[test]
    fn two_parts() {
        // V1 = {a, b} = {0, 1}, V2 = {c, d} = {2, 3}; arcs a→c, d→b
        let d = Digraph::from_arcs(4, [(0, 2), (3, 1)]).unwrap();
        let inst = AsrInstance::new(d, vec![vec![0, 1], vec![2, 3]], 1).unwrap();
        assert!(inst.precondition_holds());
        for anchor in 0..4 {
            for s in [AsrStrategy::Minimize, AsrStrategy::Exchange] {
                let out = find_asr_with(&inst, Some(anchor), s).unwrap();
                assert!(inst.is_asr(&out.set) && out.set.contains(&anchor));
            }
        }
        assert!(inst.is_asr(&[0, 3]));
    }

    #[test]
    fn instance_validation() {
        let d = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        assert!(AsrInstance::new(d.clone(), vec![vec![0, 1]], 1).is_err());
        assert!(AsrInstance::new(d.clone(), vec![vec![0]], 1).is_err());
        assert!(AsrInstance::new(d, vec![vec![0], vec![1]], 0).is_err());
    }

    #[test]
    fn fallback_and_failure() {
        // two singleton parts joined by a digon: no ASR at all
        let inst = AsrInstance::new(complete_digraph(2), vec![vec![0], vec![1]], 1).unwrap();
        assert!(!inst.precondition_holds());
        assert_eq!(find_asr(&inst, None), Err(Error::NoAsr));
        // a single arc violates the in-degree bound but an ASR exists
        let inst = AsrInstance::new(Digraph::from_arcs(2, [(0, 1)]).unwrap(), vec![vec![0], vec![1]], 1).unwrap();
        let out = find_asr(&inst, None).unwrap();
        assert_eq!(out.route, AsrRoute::ExhaustiveFallback);
        assert_eq!(out.set, vec![0, 1]);
    }

    #[test]
    fn triplet_properties() {
        let d = Digraph::from_arcs(4, [(0, 2), (3, 1)]).unwrap();
        let inst = AsrInstance::new(d, vec![vec![0, 1], vec![2, 3]], 1).unwrap();
        let t = GoodTriplet { parts: vec![], x: vec![2], y: vec![] };
        assert!(!is_good_triplet(&inst, 2, &t));
        let t = GoodTriplet { parts: vec![0], x: vec![2, 0], y: vec![0] };
        assert!(!is_good_triplet(&inst, 2, &t));
        assert!(find_good_triplet(&inst, 2).is_none());
    }

    /// The anchor points at every singleton part, so the out-degree bound
    /// fails and good triplets exist.
    #[test]
    fn good_triplet_when_degree_condition_fails() {
        // parts {0}, {1}, {2, 3}; anchor 2 → 0, 2 → 1; 0 → 3, 1 → 3
        let d = Digraph::from_arcs(4, [(2, 0), (2, 1), (0, 3), (1, 3)]).unwrap();
        let inst = AsrInstance::new(d, vec![vec![0], vec![1], vec![2, 3]], 1).unwrap();
        assert!(!inst.precondition_holds());
        let t = find_good_triplet(&inst, 2).unwrap();
        assert!(is_good_triplet(&inst, 2, &t));
        assert_eq!((t.parts, t.x, t.y), (vec![0], vec![2], vec![0]));
        let wide = GoodTriplet { parts: vec![0, 1], x: vec![2], y: vec![0, 1] };
        assert!(is_good_triplet(&inst, 2, &wide));
    }

    #[test]
    fn list_colouring() {
        let d = Digraph::empty(3);
        let c = list_dicolour_asr(&d, &[vec![4, 2], vec![7], vec![1, 0]], 1).unwrap();
        assert!(is_valid(&d, &c, true));
        let k2 = complete_digraph(2);
        let c = list_dicolour_asr(&k2, &[vec![1, 2], vec![1, 2]], 1).unwrap();
        assert!(is_valid(&k2, &c, true) && c.colours[0] != c.colours[1]);
        assert!(matches!(
            list_dicolour_asr(&directed_cycle(3), &[vec![1], vec![1], vec![1]], 1),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn hitting_sets() {
        let s = acyclic_hitting_set(&complete_digraph(3), &[vec![0, 1, 2]], 1).unwrap();
        assert_eq!(s.len(), 1);
        let two = complete_digraph(3).disjoint_union(&complete_digraph(3));
        let s = acyclic_hitting_set(&two, &[vec![0, 1, 2], vec![3, 4, 5]], 2).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s[0] < 3 && s[1] >= 3);
        let ob = obstruction(4, 2).unwrap();
        let s = acyclic_hitting_set(&ob, &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]], 2).unwrap();
        assert_eq!(s.len(), 2);
        assert!(ob.is_acyclic(&s));
        assert!(matches!(
            acyclic_hitting_set(&ob, &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]], 1),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
