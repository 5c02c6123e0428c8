//! Exhaustive counting for power-sum congruence systems over prime powers.
//!
//! For an odd prime p, a degree k, a shift eta and a fixed target tuple y
//! with pairwise distinct residues mod p, this module counts the k-tuples x
//! mod p^k, pairwise distinct mod p, satisfying
//!
//! ```text
//! (x_1-eta)^j + ... + (x_k-eta)^j  =  (y_1-eta)^j + ... + (y_k-eta)^j  (mod p^j)
//! ```
//!
//! for every j = 1..k. Lifting solutions through successive prime powers
//! caps the count at k! p^{k(k-1)/2}; the deep variant works mod p^{jk} with
//! all variables in one residue class mod p and distinct mod p^2, capped at
//! k! p^{k*k(k-1)/2 + k(k-1)/2}. Both caps are verified per call.
//!
//! Counting goes through a census: one enumeration of every admissible
//! x-tuple, bucketed by its congruence signature, answers arbitrarily many
//! y queries for the same (k, p, eta).

use std::collections::HashMap;

use crate::config::ComputeConfig;
use crate::error::{invalid, Error, Result};
use crate::parallel;

/// One shallow counting problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceInstance {
    pub k: u32,
    pub p: u64,
    pub eta: u64,
    pub y: Vec<u64>,
}

impl CongruenceInstance {
    pub fn new(k: u32, p: u64, eta: u64, y: Vec<u64>) -> Result<Self> {
        if k < 1 {
            return Err(invalid("degree k must be at least 1"));
        }
        check_odd_prime(p)?;
        // The lifting cap needs p > k: at p = k the linear congruence is
        // vacuous (the k distinct residues always sum to 0 mod p) and the
        // count overshoots the cap by a factor of p. Exhaustive scan at
        // k = p = 3 realizes 486 against a nominal cap of 162.
        if (k as u64) >= p {
            return Err(invalid(format!(
                "the lifting cap requires p > k, got k={k}, p={p}"
            )));
        }
        if y.len() != k as usize {
            return Err(invalid(format!(
                "expected {k} target entries, got {}",
                y.len()
            )));
        }
        let modulus = checked_pow(p, k).ok_or_else(|| invalid("p^k overflows"))?;
        if y.iter().any(|&v| v < 1 || v > modulus) {
            return Err(invalid(format!(
                "target entries must lie in [1, p^k] = [1, {modulus}]"
            )));
        }
        check_distinct_mod(&y, p)?;
        Ok(CongruenceInstance { k, p, eta, y })
    }
}

/// A verified count together with the lifting cap it must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftCount {
    pub count: u64,
    pub bound: u128,
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::NotPrime(p));
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return Err(Error::NotPrime(p));
        }
        d += 2;
    }
    Ok(())
}

fn check_distinct_mod(values: &[u64], modulus: u64) -> Result<()> {
    for i in 0..values.len() {
        for j in 0..i {
            if values[i] % modulus == values[j] % modulus {
                return Err(Error::ResiduesNotDistinct);
            }
        }
    }
    Ok(())
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// k! p^e as u128, erring only on genuine overflow.
fn factorial_times_power(k: u32, p: u64, e: u32) -> Result<u128> {
    let mut v: u128 = (1..=k as u128).product();
    for _ in 0..e {
        v = v
            .checked_mul(p as u128)
            .ok_or_else(|| invalid("lifting bound overflows 128 bits"))?;
    }
    Ok(v)
}

/// k! p^{k(k-1)/2}.
pub fn lift_bound(k: u32, p: u64) -> Result<u128> {
    factorial_times_power(k, p, k * (k - 1) / 2)
}

/// k! p^{k * k(k-1)/2 + k(k-1)/2}.
pub fn deep_lift_bound(k: u32, p: u64) -> Result<u128> {
    factorial_times_power(k, p, (k + 1) * (k * (k - 1) / 2))
}

const ENUMERATION_CAP: u64 = 200_000_000;
const VALUE_CAP: u64 = 10_000_000;

/// The signature census for one (k, p, eta): every admissible x-tuple mod
/// p^k, keyed by its vector of power sums mod (p, p^2, ..., p^k).
pub struct CongruenceCensus {
    k: u32,
    p: u64,
    eta: u64,
    moduli: Vec<u64>,
    buckets: HashMap<Vec<u64>, u64>,
}

/// Shared enumeration core: tuples drawn from `values`, "distinct" meaning
/// distinct mod `distinct_mod`, signatures accumulated mod `moduli`.
fn census_map(
    values: &[u64],
    k: u32,
    eta: u64,
    moduli: &[u64],
    distinct_mod: u64,
    cfg: &ComputeConfig,
) -> Result<HashMap<Vec<u64>, u64>> {
    let m = values.len() as u64;
    let mut work: u128 = 1;
    for _ in 0..k {
        work = work.saturating_mul(m as u128);
    }
    if work > ENUMERATION_CAP as u128 {
        return Err(Error::ResourceExceeded {
            needed_bytes: u64::MAX,
            budget_bytes: ENUMERATION_CAP,
            hint: "congruence tuple space too large; reduce p or k",
        });
    }
    // (v - eta)^j mod p^j for every candidate value, flat k entries per value
    let top_modulus = *moduli.last().unwrap();
    let eta_red = eta % top_modulus;
    let mut powers = vec![0u64; values.len() * k as usize];
    let mut residue = vec![0u64; values.len()];
    for (i, &v) in values.iter().enumerate() {
        residue[i] = v % distinct_mod;
        for (j, &mj) in moduli.iter().enumerate() {
            let base = (v % mj + mj - eta_red % mj) % mj;
            powers[i * k as usize + j] = pow_mod(base, j as u32 + 1, mj);
        }
    }

    let chunks = parallel::fixed_chunks(values.len() as u64, 512);
    cfg.progress.begin(values.len() as u64);
    let partials = parallel::run_jobs(chunks.len(), cfg.threads, |job| {
        let (lo, hi) = chunks[job];
        let mut map: HashMap<Vec<u64>, u64> = HashMap::new();
        let mut sums = vec![0u64; k as usize];
        let mut used: Vec<u64> = Vec::with_capacity(k as usize);
        for first in lo..hi {
            extend_tuple(
                first as usize,
                1,
                k as usize,
                values.len(),
                moduli,
                &powers,
                &residue,
                &mut sums,
                &mut used,
                &mut map,
            );
        }
        cfg.progress.advance(hi - lo);
        map
    });
    let mut total: HashMap<Vec<u64>, u64> = HashMap::new();
    for part in partials {
        for (sig, c) in part {
            *total.entry(sig).or_insert(0) += c;
        }
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn extend_tuple(
    value_idx: usize,
    depth: usize,
    k: usize,
    n_values: usize,
    moduli: &[u64],
    powers: &[u64],
    residue: &[u64],
    sums: &mut [u64],
    used: &mut Vec<u64>,
    map: &mut HashMap<Vec<u64>, u64>,
) {
    let r = residue[value_idx];
    if used.contains(&r) {
        return;
    }
    for (j, &mj) in moduli.iter().enumerate() {
        sums[j] = (sums[j] + powers[value_idx * k + j]) % mj;
    }
    used.push(r);
    if depth == k {
        *map.entry(sums.to_vec()).or_insert(0) += 1;
    } else {
        for next in 0..n_values {
            extend_tuple(
                next,
                depth + 1,
                k,
                n_values,
                moduli,
                powers,
                residue,
                sums,
                used,
                map,
            );
        }
    }
    used.pop();
    for (j, &mj) in moduli.iter().enumerate() {
        sums[j] = (sums[j] + mj - powers[value_idx * k + j]) % mj;
    }
}

fn pow_mod(base: u64, exp: u32, modulus: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b: u128 = (base % modulus) as u128;
    let m = modulus as u128;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

impl CongruenceCensus {
    /// Enumerates every k-tuple mod p^k with pairwise distinct residues
    /// mod p and buckets them by signature.
    pub fn build(k: u32, p: u64, eta: u64, cfg: &ComputeConfig) -> Result<Self> {
        if k < 1 {
            return Err(invalid("degree k must be at least 1"));
        }
        check_odd_prime(p)?;
        if k as u64 > p {
            return Err(invalid("distinct residues mod p need k <= p"));
        }
        let modulus =
            checked_pow(p, k)
                .filter(|&m| m <= VALUE_CAP)
                .ok_or(Error::ResourceExceeded {
                    needed_bytes: u64::MAX,
                    budget_bytes: VALUE_CAP,
                    hint: "p^k exceeds enumerable range",
                })?;
        let moduli: Vec<u64> = (1..=k).map(|j| p.pow(j)).collect();
        let values: Vec<u64> = (1..=modulus).collect();
        let buckets = census_map(&values, k, eta, &moduli, p, cfg)?;
        Ok(CongruenceCensus {
            k,
            p,
            eta,
            moduli,
            buckets,
        })
    }

    pub fn signature_of(&self, y: &[u64]) -> Vec<u64> {
        let eta_red = self.eta % self.moduli.last().unwrap();
        self.moduli
            .iter()
            .enumerate()
            .map(|(j, &mj)| {
                y.iter()
                    .map(|&v| pow_mod((v % mj + mj - eta_red % mj) % mj, j as u32 + 1, mj))
                    .fold(0u64, |a, b| (a + b) % mj)
            })
            .collect()
    }

    /// Number of admissible x-tuples sharing y's signature, checked against
    /// the lifting cap.
    pub fn count_for(&self, y: &[u64]) -> Result<LiftCount> {
        let inst = CongruenceInstance::new(self.k, self.p, self.eta, y.to_vec())?;
        let count = *self.buckets.get(&self.signature_of(&inst.y)).unwrap_or(&0);
        let bound = lift_bound(self.k, self.p)?;
        if count as u128 > bound {
            return Err(Error::InvariantViolation(format!(
                "congruence count {count} exceeds lifting cap {bound} (k={}, p={})",
                self.k, self.p
            )));
        }
        Ok(LiftCount { count, bound })
    }

    /// Largest count over all signatures, for tightness diagnostics.
    pub fn max_count(&self) -> u64 {
        self.buckets.values().copied().max().unwrap_or(0)
    }
}

/// Counts solutions of the shallow congruence system for one instance.
pub fn count_congruence_solutions(
    inst: &CongruenceInstance,
    cfg: &ComputeConfig,
) -> Result<LiftCount> {
    let census = CongruenceCensus::build(inst.k, inst.p, inst.eta, cfg)?;
    census.count_for(&inst.y)
}

/// Counts solutions of the deep system: x mod p^{k^2}, all congruent to xi
/// mod p, pairwise distinct mod p^2, power sums matching y mod p^{jk}.
pub fn count_deep_congruence_solutions(
    k: u32,
    p: u64,
    xi: u64,
    eta: u64,
    y: &[u64],
    cfg: &ComputeConfig,
) -> Result<LiftCount> {
    if k < 1 {
        return Err(invalid("degree k must be at least 1"));
    }
    check_odd_prime(p)?;
    if y.len() != k as usize {
        return Err(invalid(format!(
            "expected {k} target entries, got {}",
            y.len()
        )));
    }
    let modulus =
        checked_pow(p, k * k)
            .filter(|&m| m <= VALUE_CAP)
            .ok_or(Error::ResourceExceeded {
                needed_bytes: u64::MAX,
                budget_bytes: VALUE_CAP,
                hint: "p^{k^2} exceeds enumerable range",
            })?;
    let xi_red = xi % p;
    if y.iter().any(|&v| v < 1 || v > modulus) {
        return Err(invalid(format!(
            "target entries must lie in [1, {modulus}]"
        )));
    }
    if y.iter().any(|&v| v % p != xi_red) {
        return Err(invalid("target entries must be congruent to xi mod p"));
    }
    if (k as u64) >= p {
        return Err(invalid(format!(
            "the lifting cap requires p > k, got k={k}, p={p}"
        )));
    }
    if k >= 2 {
        check_distinct_mod(y, p * p)?;
    }
    let moduli: Vec<u64> = (1..=k).map(|j| p.pow(j * k)).collect();
    let values: Vec<u64> = (1..=modulus).filter(|v| v % p == xi_red).collect();
    let buckets = census_map(&values, k, eta, &moduli, p * p, cfg)?;
    let signature: Vec<u64> = {
        let eta_red = eta % moduli.last().unwrap();
        moduli
            .iter()
            .enumerate()
            .map(|(j, &mj)| {
                y.iter()
                    .map(|&v| pow_mod((v % mj + mj - eta_red % mj) % mj, j as u32 + 1, mj))
                    .fold(0u64, |a, b| (a + b) % mj)
            })
            .collect()
    };
    let count = *buckets.get(&signature).unwrap_or(&0);
    let bound = deep_lift_bound(k, p)?;
    if count as u128 > bound {
        return Err(Error::InvariantViolation(format!(
            "deep congruence count {count} exceeds lifting cap {bound} (k={k}, p={p})"
        )));
    }
    Ok(LiftCount { count, bound })
}
