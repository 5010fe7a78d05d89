//! Streams of small instances checked against a bound, looking for
//! counterexamples.

use std::collections::HashSet;

use dichroma_core::bounds::Rational;
use dichroma_core::canon::canonical_form;
use dichroma_core::generators::{random_digraph, random_tournament, rng};
use dichroma_core::Digraph;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::verify::{verify_instance, Bound, VerificationRecord};
use crate::HarnessError;

/// Largest tournament order enumerated exhaustively.
pub const EXHAUSTIVE_TOURNAMENT_MAX: usize = 7;
/// Largest digraph order enumerated exhaustively.
pub const EXHAUSTIVE_DIGRAPH_MAX: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum HuntMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum InstanceClass {
    Tournament,
    Digraph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntConfig {
    pub mode: HuntMode,
    pub class: InstanceClass,
    pub n_min: usize,
    pub n_max: usize,
    /// Instances drawn in random mode; ignored when exhaustive.
    pub count: usize,
    pub seed: u64,
    pub bound: Bound,
    pub eps: Rational,
    pub exact_cap: usize,
}

impl Default for HuntConfig {
    fn default() -> Self {
        HuntConfig {
            mode: HuntMode::Random,
            class: InstanceClass::Digraph,
            n_min: 1,
            n_max: 7,
            count: 100,
            seed: 0,
            bound: Bound::Reed,
            eps: Rational::new(1, 2),
            exact_cap: crate::verify::DEFAULT_EXACT_CAP,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HuntReport {
    pub mode: HuntMode,
    pub class: InstanceClass,
    pub bound: Bound,
    pub eps: String,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub instances: usize,
    /// `(n, instances of order n)`.
    pub per_order: Vec<(usize, usize)>,
    /// Ids of records violating the chosen bound.
    pub violations: Vec<u64>,
    #[serde(skip)]
    pub records: Vec<VerificationRecord>,
}

impl HuntReport {
    pub fn violating_records(&self) -> Vec<&VerificationRecord> {
        self.violations.iter().map(|&id| &self.records[id as usize]).collect()
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// The labelled instance with index `code`: base 2 per pair for
/// tournaments, base 4 (none, forward, backward, digon) for digraphs.
fn decode(class: InstanceClass, n: usize, pairs: &[(usize, usize)], mut code: u64) -> Digraph {
    let base = match class {
        InstanceClass::Tournament => 2,
        InstanceClass::Digraph => 4,
    };
    let mut arcs = Vec::new();
    for &(u, v) in pairs {
        let s = code % base;
        code /= base;
        match (class, s) {
            (InstanceClass::Tournament, 0) | (InstanceClass::Digraph, 1) => arcs.push((u, v)),
            (InstanceClass::Tournament, _) | (InstanceClass::Digraph, 2) => arcs.push((v, u)),
            (InstanceClass::Digraph, 3) => arcs.extend([(u, v), (v, u)]),
            _ => {}
        }
    }
    Digraph::from_arcs(n, arcs).expect("pairs are in range")
}

/// One representative per isomorphism class, in canonical-form order.
pub fn isomorphism_classes(class: InstanceClass, n: usize) -> Result<Vec<Digraph>, HarnessError> {
    let max = match class {
        InstanceClass::Tournament => EXHAUSTIVE_TOURNAMENT_MAX,
        InstanceClass::Digraph => EXHAUSTIVE_DIGRAPH_MAX,
    };
    if n > max {
        return Err(HarnessError::Invalid(format!("exhaustive {class:?} enumeration is limited to n ≤ {max}")));
    }
    let pairs = pairs(n);
    let bits = match class {
        InstanceClass::Tournament => pairs.len(),
        InstanceClass::Digraph => 2 * pairs.len(),
    };
    let classes: HashSet<Vec<(usize, usize)>> = (0..1u64 << bits)
        .into_par_iter()
        .map(|code| canonical_form(&decode(class, n, &pairs, code)).arcs().collect())
        .collect();
    let mut keys: Vec<Vec<(usize, usize)>> = classes.into_iter().collect();
    keys.sort_unstable();
    Ok(keys.into_iter().map(|arcs| Digraph::from_arcs(n, arcs).expect("canonical arcs")).collect())
}

fn random_instances(cfg: &HuntConfig) -> Vec<(Digraph, u64)> {
    (0..cfg.count as u64)
        .map(|i| {
            let mut r = rng(cfg.seed);
            r.set_stream(i);
            let n = r.gen_range(cfg.n_min..=cfg.n_max);
            let inst_seed: u64 = r.gen();
            let d = match cfg.class {
                InstanceClass::Tournament => random_tournament(n, inst_seed),
                InstanceClass::Digraph => {
                    let (pd, ps) = (r.gen_range(0.0..0.5), r.gen_range(0.0..1.0));
                    random_digraph(n, pd, ps, inst_seed).expect("probabilities in range")
                }
            };
            (d, inst_seed)
        })
        .collect()
}

pub fn hunt(cfg: &HuntConfig) -> Result<HuntReport, HarnessError> {
    if cfg.n_min > cfg.n_max {
        return Err(HarnessError::Invalid(format!("n-min {} exceeds n-max {}", cfg.n_min, cfg.n_max)));
    }
    if cfg.n_max > cfg.exact_cap {
        return Err(HarnessError::InstanceTooLarge { n: cfg.n_max, cap: cfg.exact_cap });
    }
    let instances: Vec<(Digraph, Option<u64>)> = match cfg.mode {
        HuntMode::Exhaustive => {
            let mut all = Vec::new();
            for n in cfg.n_min..=cfg.n_max {
                all.extend(isomorphism_classes(cfg.class, n)?.into_iter().map(|d| (d, None)));
            }
            all
        }
        HuntMode::Random => random_instances(cfg).into_iter().map(|(d, s)| (d, Some(s))).collect(),
    };
    let records: Vec<VerificationRecord> = instances
        .par_iter()
        .enumerate()
        .map(|(i, (d, seed))| {
            let mut r = verify_instance(d, cfg.eps, cfg.exact_cap)?;
            r.id = i as u64;
            r.seed = *seed;
            Ok(r)
        })
        .collect::<Result<_, HarnessError>>()?;
    let mut per_order: Vec<(usize, usize)> = Vec::new();
    for r in &records {
        match per_order.last_mut() {
            Some((n, c)) if *n == r.n => *c += 1,
            _ => per_order.push((r.n, 1)),
        }
    }
    if cfg.mode == HuntMode::Random {
        per_order.sort_unstable();
        per_order.dedup_by(|b, a| {
            let same = a.0 == b.0;
            if same {
                a.1 += b.1;
            }
            same
        });
    }
    let violations = records.iter().filter(|r| r.violates(cfg.bound)).map(|r| r.id).collect();
    Ok(HuntReport {
        mode: cfg.mode,
        class: cfg.class,
        bound: cfg.bound,
        eps: cfg.eps.to_string(),
        n_min: cfg.n_min,
        n_max: cfg.n_max,
        seed: cfg.seed,
        instances: records.len(),
        per_order,
        violations,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let t: Vec<usize> =
            (1..=5).map(|n| isomorphism_classes(InstanceClass::Tournament, n).unwrap().len()).collect();
        assert_eq!(t, vec![1, 1, 2, 4, 12]);
        let d: Vec<usize> = (1..=5).map(|n| isomorphism_classes(InstanceClass::Digraph, n).unwrap().len()).collect();
        assert_eq!(d, vec![1, 3, 16, 218, 9608]);
        assert_eq!(isomorphism_classes(InstanceClass::Tournament, 6).unwrap().len(), 56);
        assert!(isomorphism_classes(InstanceClass::Digraph, 6).is_err());
    }

    #[test]
    fn empty_random_hunt() {
        let r = hunt(&HuntConfig { count: 0, ..HuntConfig::default() }).unwrap();
        assert_eq!(r.instances, 0);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn random_hunt_is_deterministic() {
        let cfg = HuntConfig { count: 40, n_max: 6, seed: 5, ..HuntConfig::default() };
        let (a, b) = (hunt(&cfg).unwrap(), hunt(&cfg).unwrap());
        let strip = |r: &HuntReport| r.records.iter().map(|x| (x.id, x.seed, x.chi)).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
        assert!(a.violations.is_empty());
        assert_eq!(a.per_order.iter().map(|p| p.1).sum::<usize>(), 40);
    }
}
