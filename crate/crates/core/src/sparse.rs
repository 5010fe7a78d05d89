//! Randomised dicolouring of sparse digraphs.
//!
//! Pipeline: embed the digraph in a `Δ`-diregular one, colour every vertex
//! uniformly from `[⌊Δ/2⌋]`, uncolour each vertex with an in-neighbour and
//! an out-neighbour of its colour, retry until every vertex sees `ℓ`
//! repeated colours on one side, then complete greedily with `Δ + 1 − ℓ`
//! colours.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constants::ell_floor;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::generators::rng;
use crate::params::{degree_profile, density_report, is_b_sparse, Side};
use crate::solver::{check_partial_kl, dichromatic_number_with_witness, greedy_complete, Dicolouring};

/// Largest digraph [`diregularize`] will build.
pub const DIREGULAR_VERTEX_CAP: usize = 1 << 22;

/// Embeds `d` as an induced subdigraph of a `delta`-diregular digraph by
/// repeatedly adding a reversed copy and joining each deficient vertex to
/// its copy. Vertices `0..d.n()` of the result are those of `d`.
pub fn diregularize(d: &Digraph, delta: usize) -> Result<Digraph> {
    if degree_profile(d).delta_max > delta {
        return Err(Error::InvalidParameter(format!("Δmax(d) exceeds Δ = {delta}")));
    }
    let mut cur = d.clone();
    while (0..cur.n()).any(|v| cur.out_degree(v) != delta || cur.in_degree(v) != delta) {
        let n = cur.n();
        if 2 * n > DIREGULAR_VERTEX_CAP {
            return Err(Error::CapExceeded(DIREGULAR_VERTEX_CAP));
        }
        let mut arcs: Vec<(usize, usize)> = cur.arcs().collect();
        arcs.extend(cur.arcs().map(|(u, v)| (v + n, u + n)));
        for v in 0..n {
            if cur.out_degree(v) < delta {
                arcs.push((v, v + n));
            }
            if cur.in_degree(v) < delta {
                arcs.push((v + n, v));
            }
        }
        cur = Digraph::from_arcs(2 * n, arcs)?;
    }
    Ok(cur)
}

/// One random colouring and its per-vertex counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseTrialState {
    /// Palette size `⌊Δ/2⌋`.
    pub k: usize,
    pub assignment: Vec<usize>,
    pub retained: Vec<bool>,
    /// `N_v` is the out-neighbourhood when `m⁺(v) ≤ m⁻(v)`.
    pub side: Vec<Side>,
    /// `Δ(Δ − 1) − min(m⁺(v), m⁻(v))`.
    pub b: Vec<u64>,
    /// Colours on a digon-free pair in `N_v`, all of whose vertices in
    /// `N_v` are retained.
    pub x: Vec<usize>,
    /// Colours on a digon-free pair in `N_v`.
    pub y: Vec<usize>,
    /// Colours counted by `y` with an unretained vertex in `N_v`.
    pub z: Vec<usize>,
    /// Colours on at least two vertices of `N_v`, all retained.
    pub x_any_pair: Vec<usize>,
}

impl SparseTrialState {
    /// The retained vertices with their colours.
    pub fn partial(&self) -> Dicolouring {
        Dicolouring {
            colours: self.assignment.iter().zip(&self.retained).map(|(&c, &r)| r.then_some(c)).collect(),
        }
    }
}

/// Per-vertex data that does not depend on the random colours.
struct Layout {
    delta: usize,
    side: Vec<Side>,
    b: Vec<u64>,
}

impl Layout {
    fn new(d: &Digraph) -> Self {
        let r = density_report(d);
        let side = (0..d.n()).map(|v| if r.m_plus[v] <= r.m_minus[v] { Side::Out } else { Side::In }).collect();
        Layout { delta: r.delta, side, b: r.b }
    }

    fn nv<'a>(&self, d: &'a Digraph, v: usize) -> &'a [usize] {
        match self.side[v] {
            Side::Out => d.out_neighbours(v),
            Side::In => d.in_neighbours(v),
        }
    }
}

fn draw(n: usize, k: usize, r: &mut ChaCha8Rng) -> Vec<usize> {
    (0..n).map(|_| r.gen_range(0..k)).collect()
}

fn retains(d: &Digraph, colour: &[usize], v: usize) -> bool {
    let c = colour[v];
    !(d.in_neighbours(v).iter().any(|&u| colour[u] == c) && d.out_neighbours(v).iter().any(|&w| colour[w] == c))
}

/// `(x, y, z, x_any_pair)` for one vertex; `retained` is queried lazily.
fn counts(d: &Digraph, nv: &[usize], colour: &[usize], retained: impl Fn(usize) -> bool) -> (usize, usize, usize, usize) {
    let mut by_colour: Vec<(usize, usize)> = nv.iter().map(|&u| (colour[u], u)).collect();
    by_colour.sort_unstable();
    let (mut x, mut y, mut z, mut xa) = (0, 0, 0, 0);
    for group in by_colour.chunk_by(|a, b| a.0 == b.0) {
        if group.len() < 2 {
            continue;
        }
        let all_kept = group.iter().all(|&(_, u)| retained(u));
        if all_kept {
            xa += 1;
        }
        let digon_free = group
            .iter()
            .enumerate()
            .any(|(i, &(_, u))| group[i + 1..].iter().any(|&(_, w)| !d.is_digon(u, w)));
        if digon_free {
            y += 1;
            if all_kept {
                x += 1;
            } else {
                z += 1;
            }
        }
    }
    (x, y, z, xa)
}

fn run_trial(d: &Digraph, layout: &Layout, r: &mut ChaCha8Rng) -> SparseTrialState {
    let n = d.n();
    let k = layout.delta / 2;
    let assignment = draw(n, k, r);
    let retained: Vec<bool> = (0..n).map(|v| retains(d, &assignment, v)).collect();
    let (mut x, mut y, mut z, mut xa) = (vec![0; n], vec![0; n], vec![0; n], vec![0; n]);
    for v in 0..n {
        (x[v], y[v], z[v], xa[v]) = counts(d, layout.nv(d, v), &assignment, |u| retained[u]);
    }
    SparseTrialState { k, assignment, retained, side: layout.side.clone(), b: layout.b.clone(), x, y, z, x_any_pair: xa }
}

fn require_delta(d: &Digraph) -> Result<usize> {
    let delta = degree_profile(d).delta_max;
    if delta < 2 {
        return Err(Error::DegreeTooSmall(delta));
    }
    Ok(delta)
}

/// Random stream for trial `index` under `seed`.
fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = rng(seed);
    r.set_stream(index);
    r
}

pub fn trial(d: &Digraph, seed: u64) -> Result<SparseTrialState> {
    require_delta(d)?;
    Ok(run_trial(d, &Layout::new(d), &mut trial_rng(seed, 0)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialSample {
    pub colouring: Dicolouring,
    pub k: usize,
    /// Number of trials drawn, including the accepted one.
    pub tries: usize,
}

/// The retained colouring of the first of `max_tries` independent trials in
/// which every vertex has `x ≥ ell`; `None` if all fail.
pub fn sample_partial(d: &Digraph, ell: usize, max_tries: usize, seed: u64) -> Result<Option<PartialSample>> {
    require_delta(d)?;
    let layout = Layout::new(d);
    for t in 0..max_tries {
        let s = run_trial(d, &layout, &mut trial_rng(seed, t as u64));
        if s.x.iter().all(|&x| x >= ell) {
            let colouring = s.partial();
            if !check_partial_kl(d, &colouring, s.k, ell) {
                return Err(Error::InternalInconsistency("accepted trial is not a partial (k, ℓ)-dicolouring".into()));
            }
            return Ok(Some(PartialSample { colouring, k: s.k, tries: t + 1 }));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SparseConfig {
    pub max_tries: usize,
    pub seed: u64,
}

impl Default for SparseConfig {
    fn default() -> Self {
        SparseConfig { max_tries: 200, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseOutcome {
    pub colouring: Dicolouring,
    pub delta: usize,
    pub ell: usize,
    /// Vertices of the diregular digraph the trials ran on.
    pub diregular_order: usize,
    /// Trials drawn; 0 when the exact solver handled `Δ ≤ 1`.
    pub tries: usize,
}

pub fn sparse_dicolour(d: &Digraph, b: u64) -> Result<Option<SparseOutcome>> {
    sparse_dicolour_with(d, b, SparseConfig::default())
}

/// A dicolouring of a `b`-sparse digraph with at most
/// `Δ + 1 − ⌊b/(4e⁷Δ)⌋` colours, or `None` when sampling fails.
pub fn sparse_dicolour_with(d: &Digraph, b: u64, cfg: SparseConfig) -> Result<Option<SparseOutcome>> {
    if !is_b_sparse(d, i64::try_from(b).unwrap_or(i64::MAX)) {
        return Err(Error::PreconditionViolated(format!("digraph is not {b}-sparse")));
    }
    let delta = degree_profile(d).delta_max;
    if delta <= 1 {
        let (_, colouring) = dichromatic_number_with_witness(d);
        return Ok(Some(SparseOutcome { colouring, delta, ell: 0, diregular_order: d.n(), tries: 0 }));
    }
    let h = diregularize(d, delta)?;
    let ell = usize::try_from(ell_floor(b, delta as u64)).expect("ℓ ≤ Δ");
    let Some(sample) = sample_partial(&h, ell, cfg.max_tries, cfg.seed)? else {
        return Ok(None);
    };
    let full = greedy_complete(&h, &sample.colouring, sample.k, ell)?;
    let colouring = Dicolouring { colours: full.colours[..d.n()].to_vec() };
    Ok(Some(SparseOutcome { colouring, delta, ell, diregular_order: h.n(), tries: sample.tries }))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    fn of(samples: &[f64]) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = if samples.len() > 1 {
            samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Estimate { mean, std_error: (var / n).sqrt() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub vertex: usize,
    pub trials: usize,
    pub delta: usize,
    pub b_v: u64,
    pub x: Estimate,
    pub y: Estimate,
    pub z: Estimate,
    pub x_any_pair: Estimate,
    /// Frequency of `|X_v − mean(X_v)| > ln Δ · √mean(X_v)`.
    pub deviation: Estimate,
    /// `B_v / (2e⁷Δ)`, the lower bound on the mean of `X_v`.
    pub x_lower_bound: f64,
    /// `3B_v / Δ`, the upper bound on the mean of `Y_v`.
    pub y_upper_bound: f64,
}

/// Sample means of `X_v`, `Y_v`, `Z_v` over independent trials, run in
/// parallel with one random stream per trial.
pub fn monte_carlo(d: &Digraph, v: usize, trials: usize, seed: u64) -> Result<MonteCarloReport> {
    if v >= d.n() {
        return Err(Error::InvalidVertex { vertex: v, n: d.n() });
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let layout = Layout::new(d);
    let delta = layout.delta;
    let nv = layout.nv(d, v);
    let samples: Vec<(usize, usize, usize, usize)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            if delta < 2 {
                return (0, 0, 0, 0);
            }
            let colour = draw(d.n(), delta / 2, &mut trial_rng(seed, t));
            counts(d, nv, &colour, |u| retains(d, &colour, u))
        })
        .collect();
    let col = |f: fn(&(usize, usize, usize, usize)) -> usize| samples.iter().map(|s| f(s) as f64).collect::<Vec<_>>();
    let xs = col(|s| s.0);
    let x = Estimate::of(&xs);
    let radius = (delta.max(1) as f64).ln() * x.mean.sqrt();
    let dev: Vec<f64> = xs.iter().map(|&s| f64::from(u8::from((s - x.mean).abs() > radius))).collect();
    let b_v = layout.b[v];
    let e7 = 7f64.exp();
    let (x_lower_bound, y_upper_bound) = if delta == 0 {
        (0.0, 0.0)
    } else {
        (b_v as f64 / (2.0 * e7 * delta as f64), 3.0 * b_v as f64 / delta as f64)
    };
    Ok(MonteCarloReport {
        vertex: v,
        trials,
        delta,
        b_v,
        x,
        y: Estimate::of(&col(|s| s.1)),
        z: Estimate::of(&col(|s| s.2)),
        x_any_pair: Estimate::of(&col(|s| s.3)),
        deviation: Estimate::of(&dev),
        x_lower_bound,
        y_upper_bound,
    })
}
