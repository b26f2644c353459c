//! Seeded random instances.
//!
//! The generator is part of the report contract, so it is pinned here rather
//! than delegated to `rand`'s distribution code:
//!
//! - The stream is SplitMix64 seeded with `seed`.
//! - An integer in `[lo, hi]` takes draws `x` from the stream until
//!   `x < 2^64 − (2^64 mod span)`, then returns `lo + x mod span`, where
//!   `span = hi − lo + 1`.
//! - A rational takes a numerator in `[−max_mag, max_mag]`, then a
//!   denominator in `[1, max_den]`, and reduces.
//! - Instance `i` draws `a`, then `b` until `b ≠ a`, then `c` until
//!   `c ∉ {a, b}`, then `t`. When `include_t_zero` is set, every instance
//!   with `i mod 10 = 0` uses `t = 0` and skips the `t` draw.

use std::fmt;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use thiserror::Error;

use super::{audit_printed_formulas, run_checks, AuditReport};
use crate::numeric::Rational;
use crate::simson::{build_scene, Params, SceneError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: usize,
    pub max_mag: u64,
    pub max_den: u64,
    pub include_t_zero: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 42,
            count: 100,
            max_mag: 10,
            max_den: 10,
            include_t_zero: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzConfigError {
    #[error("count must be at least 1")]
    ZeroCount,
    #[error("max magnitude must be at least 1")]
    ZeroMagnitude,
    #[error("max denominator must be at least 1")]
    ZeroDenominator,
    #[error("max magnitude and denominator must be below 2^62")]
    TooLarge,
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<(), FuzzConfigError> {
        if self.count == 0 {
            return Err(FuzzConfigError::ZeroCount);
        }
        if self.max_mag == 0 {
            return Err(FuzzConfigError::ZeroMagnitude);
        }
        if self.max_den == 0 {
            return Err(FuzzConfigError::ZeroDenominator);
        }
        if self.max_mag >= 1 << 62 || self.max_den >= 1 << 62 {
            return Err(FuzzConfigError::TooLarge);
        }
        Ok(())
    }
}

pub struct ParamGenerator {
    rng: SplitMix64,
    max_mag: i64,
    max_den: i64,
    include_t_zero: bool,
    index: usize,
}

impl ParamGenerator {
    pub fn new(config: &FuzzConfig) -> Result<Self, FuzzConfigError> {
        config.validate()?;
        Ok(ParamGenerator {
            rng: SplitMix64::seed_from_u64(config.seed),
            max_mag: config.max_mag as i64,
            max_den: config.max_den as i64,
            include_t_zero: config.include_t_zero,
            index: 0,
        })
    }

    fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo) as u64 + 1;
        // 2^64 mod span
        let rem = (u64::MAX % span + 1) % span;
        loop {
            let x = self.rng.next_u64();
            if rem == 0 || x <= u64::MAX - rem {
                return lo + (x % span) as i64;
            }
        }
    }

    fn rational(&mut self) -> Rational {
        let num = self.int_in(-self.max_mag, self.max_mag);
        let den = self.int_in(1, self.max_den);
        Rational::new(num, den).expect("denominator is at least 1")
    }

    fn distinct_from(&mut self, taken: &[&Rational]) -> Rational {
        loop {
            let r = self.rational();
            if !taken.contains(&&r) {
                return r;
            }
        }
    }

    /// Next instance. The smallest bounds still offer three distinct values
    /// (−1, 0, 1), so the redraw loops terminate.
    pub fn next_params(&mut self) -> Params<Rational> {
        let a = self.rational();
        let b = self.distinct_from(&[&a]);
        let c = self.distinct_from(&[&a, &b]);
        let t = if self.include_t_zero && self.index.is_multiple_of(10) {
            Rational::zero()
        } else {
            self.rational()
        };
        self.index += 1;
        Params::new(a, b, c, t).expect("parameters are pairwise distinct")
    }
}

/// The first `config.count` instances of the seeded stream.
pub fn generate_params(config: &FuzzConfig) -> Result<Vec<Params<Rational>>, FuzzConfigError> {
    let mut generator = ParamGenerator::new(config)?;
    Ok((0..config.count).map(|_| generator.next_params()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceStatus {
    Pass,
    /// Names of the failing checks.
    Fail(Vec<&'static str>),
    /// Construction failed on parameters that should be valid.
    Error(String),
    /// Excluded configuration (orthocentre at J).
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceOutcome {
    pub index: usize,
    pub params: [String; 4],
    pub status: InstanceStatus,
    pub flags: Vec<String>,
}

impl fmt::Display for InstanceOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, t] = &self.params;
        write!(f, "#{:<5} a={a} b={b} c={c} t={t}: ", self.index)?;
        match &self.status {
            InstanceStatus::Pass => f.write_str("PASS")?,
            InstanceStatus::Fail(names) => write!(f, "FAIL {}", names.join(","))?,
            InstanceStatus::Error(e) => write!(f, "ERROR {e}")?,
            InstanceStatus::Skipped(why) => write!(f, "SKIP {why}")?,
        }
        if !self.flags.is_empty() {
            write!(f, " [{}]", self.flags.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub instances: Vec<InstanceOutcome>,
}

impl FuzzReport {
    pub fn passed(&self) -> usize {
        self.count(|s| matches!(s, InstanceStatus::Pass))
    }

    pub fn skipped(&self) -> usize {
        self.count(|s| matches!(s, InstanceStatus::Skipped(_)))
    }

    pub fn failed(&self) -> usize {
        self.instances.len() - self.passed() - self.skipped()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    fn count(&self, pred: impl Fn(&InstanceStatus) -> bool) -> usize {
        self.instances.iter().filter(|i| pred(&i.status)).count()
    }

    /// Summary line, e.g. `1000/1000 pass`.
    pub fn summary(&self) -> String {
        let mut s = format!("{}/{} pass", self.passed(), self.instances.len());
        if self.skipped() > 0 {
            s.push_str(&format!(", {} skipped", self.skipped()));
        }
        if self.failed() > 0 {
            s.push_str(&format!(", {} failed", self.failed()));
        }
        s
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "fuzz seed={} count={} max-mag={} max-den={} t-zero={}",
            c.seed, c.count, c.max_mag, c.max_den, c.include_t_zero
        )?;
        for outcome in self
            .instances
            .iter()
            .filter(|i| i.status != InstanceStatus::Pass)
        {
            writeln!(f, "{outcome}")?;
        }
        write!(f, "{}", self.summary())
    }
}

fn param_strings(p: &Params<Rational>) -> [String; 4] {
    [&p.a, &p.b, &p.c, &p.t].map(ToString::to_string)
}

fn run_instance(index: usize, params: &Params<Rational>) -> InstanceOutcome {
    let (status, flags) = match build_scene(params) {
        Ok(scene) => {
            let report = run_checks(&scene);
            let status = if report.all_pass() {
                InstanceStatus::Pass
            } else {
                InstanceStatus::Fail(report.failing_names())
            };
            (status, report.flags)
        }
        Err(SceneError::JEqualsH) => (InstanceStatus::Skipped("H = J".into()), Vec::new()),
        Err(e) => (InstanceStatus::Error(e.to_string()), Vec::new()),
    };
    InstanceOutcome {
        index,
        params: param_strings(params),
        status,
        flags,
    }
}

/// Builds and checks `config.count` seeded instances on the exact backend.
/// Instances run in parallel; the report is ordered by instance index.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzReport, FuzzConfigError> {
    let params = generate_params(config)?;
    let instances = params
        .par_iter()
        .enumerate()
        .map(|(i, p)| run_instance(i, p))
        .collect();
    Ok(FuzzReport {
        config: *config,
        instances,
    })
}

/// Audits the printed closed forms on each seeded instance.
pub fn audit_sample(
    config: &FuzzConfig,
) -> Result<Vec<Result<AuditReport, SceneError>>, FuzzConfigError> {
    let params = generate_params(config)?;
    Ok(params.par_iter().map(audit_printed_formulas).collect())
}
