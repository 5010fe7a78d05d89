//! Checking the conjectured upper bounds on single instances, and the
//! reduction that trades `Δmin` for `Δ⁺`.

use std::time::Instant;

use dichroma_core::bounds::{delmin_biclique_bound, delmin_directed_bound, epsilon_bound, reed_bound, Rational};
use dichroma_core::constants::{omega_small, MainConstants};
use dichroma_core::params::{biclique_number, degree_profile, directed_clique_number};
use dichroma_core::solver::dichromatic_number;
use dichroma_core::Digraph;
use serde::Serialize;

use crate::HarnessError;

/// Largest order for which the exact dichromatic number is computed.
pub const DEFAULT_EXACT_CAP: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Holds {
    pub reed: bool,
    pub eps: bool,
    pub delmin_directed: bool,
    pub delmin_biclique: bool,
}

impl Holds {
    pub fn all(&self) -> bool {
        self.reed && self.eps && self.delmin_directed && self.delmin_biclique
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelminRecord {
    pub delta_min: usize,
    pub omega_dir: usize,
    pub omega_bi: usize,
    pub chi: usize,
    pub eps: String,
    /// `⌈(1−ε)Δmin + ε·ω⃗⌉`.
    pub directed_bound: usize,
    /// `⌈(1−ε)Δmin + 2ε·ω↔⌉`.
    pub biclique_bound: usize,
    pub holds_directed: bool,
    pub holds_biclique: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub id: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub n: usize,
    pub arcs: usize,
    pub delta_max: usize,
    pub delta_tilde_sq: u64,
    pub omega_bi: usize,
    pub chi: usize,
    pub eps: String,
    /// `⌈(Δ̃ + 1 + ω↔)/2⌉`.
    pub reed_bound: usize,
    /// `⌈(1−ε)(Δ̃ + 1) + ε·ω↔⌉`.
    pub eps_bound: usize,
    pub delmin: DelminRecord,
    pub holds: Holds,
    pub runtime_us: u64,
    /// Present on records that violate a bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digraph: Option<Digraph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<ClaimCheck>,
}

impl VerificationRecord {
    /// The flags as implied by the stored numbers.
    pub fn recompute_holds(&self) -> Holds {
        Holds {
            reed: self.chi <= self.reed_bound,
            eps: self.chi <= self.eps_bound,
            delmin_directed: self.delmin.chi <= self.delmin.directed_bound,
            delmin_biclique: self.delmin.chi <= self.delmin.biclique_bound,
        }
    }

    pub fn violates(&self, bound: Bound) -> bool {
        match bound {
            Bound::Reed => !self.holds.reed,
            Bound::Eps => !self.holds.eps,
            Bound::Delmin => !(self.holds.delmin_directed && self.holds.delmin_biclique),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Reed,
    Eps,
    Delmin,
}

fn check_size(d: &Digraph, cap: usize) -> Result<(), HarnessError> {
    if d.n() > cap {
        return Err(HarnessError::InstanceTooLarge { n: d.n(), cap });
    }
    Ok(())
}

fn delmin_record(d: &Digraph, chi: usize, eps: Rational) -> Result<DelminRecord, HarnessError> {
    let delta_min = degree_profile(d).delta_min;
    let omega_dir = directed_clique_number(d);
    let omega_bi = biclique_number(d);
    let directed_bound = delmin_directed_bound(delta_min, omega_dir, eps)?;
    let biclique_bound = delmin_biclique_bound(delta_min, omega_bi, eps)?;
    Ok(DelminRecord {
        delta_min,
        omega_dir,
        omega_bi,
        chi,
        eps: eps.to_string(),
        directed_bound,
        biclique_bound,
        holds_directed: chi <= directed_bound,
        holds_biclique: chi <= biclique_bound,
    })
}

/// Both `Δmin` bounds against the exact dichromatic number.
pub fn verify_delmin(d: &Digraph, eps: Rational, cap: usize) -> Result<DelminRecord, HarnessError> {
    check_size(d, cap)?;
    delmin_record(d, dichromatic_number(d), eps)
}

/// Every bound against the exact dichromatic number.
pub fn verify_instance(d: &Digraph, eps: Rational, cap: usize) -> Result<VerificationRecord, HarnessError> {
    check_size(d, cap)?;
    let start = Instant::now();
    let profile = degree_profile(d);
    let omega_bi = biclique_number(d);
    let chi = dichromatic_number(d);
    let reed = reed_bound(&profile, omega_bi);
    let eps_b = epsilon_bound(&profile, omega_bi, eps)?;
    let delmin = delmin_record(d, chi, eps)?;
    let mut r = VerificationRecord {
        id: 0,
        seed: None,
        n: d.n(),
        arcs: d.arc_count(),
        delta_max: profile.delta_max,
        delta_tilde_sq: profile.delta_tilde_sq,
        omega_bi,
        chi,
        eps: eps.to_string(),
        reed_bound: reed,
        eps_bound: eps_b,
        delmin,
        holds: Holds { reed: true, eps: true, delmin_directed: true, delmin_biclique: true },
        runtime_us: 0,
        digraph: None,
        claims: None,
    };
    r.holds = r.recompute_holds();
    if !r.holds.all() {
        r.digraph = Some(d.clone());
    }
    if !(r.holds.reed && r.holds.eps) {
        r.claims = Some(claim_check(d, &MainConstants::default_constants()));
    }
    r.runtime_us = start.elapsed().as_micros() as u64;
    Ok(r)
}

/// Properties a minimum counterexample to the main bound must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    /// `Δmax ≤ (1 + γ_ε)·Δ̃`.
    pub delta_close: bool,
    /// `ω↔ ≤ (2/3)(Δmax + 1)`.
    pub omega_small: bool,
}

pub fn claim_check(d: &Digraph, c: &MainConstants) -> ClaimCheck {
    let profile = degree_profile(d);
    ClaimCheck {
        delta_close: c.deltil_close_delmax(&profile),
        omega_small: omega_small(profile.delta_max, biclique_number(d)),
    }
}

/// With `X = {v : d⁺(v) ≤ Δmin}` and `Y` the rest: drop arcs from `Y` to
/// `X`, turn arcs from `X` to `Y` into digons, and reverse the arcs inside
/// `Y`.
pub fn delmin_reduction(d: &Digraph) -> Digraph {
    let dmin = degree_profile(d).delta_min;
    let in_x: Vec<bool> = (0..d.n()).map(|v| d.out_degree(v) <= dmin).collect();
    let mut arcs = Vec::new();
    for (u, v) in d.arcs() {
        match (in_x[u], in_x[v]) {
            (true, true) => arcs.push((u, v)),
            (true, false) => arcs.extend([(u, v), (v, u)]),
            (false, true) => {}
            (false, false) => arcs.push((v, u)),
        }
    }
    Digraph::from_arcs(d.n(), arcs).expect("endpoints come from d")
}
