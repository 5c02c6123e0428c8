//! Exact solution counts for translation-dilation invariant systems.
//!
//! The central quantity is the number of ordered 2s-tuples
//! (x_1..x_s, y_1..y_s) in [1,X]^{2s} with
//!
//! ```text
//! x_1^j + ... + x_s^j = y_1^j + ... + y_s^j    (1 <= j <= k).
//! ```
//!
//! Writing r(v) for the number of ordered s-tuples whose power-sum vector
//! equals v, the count is sum_v r(v)^2. Two strategies compute it:
//!
//! * `BruteForce` enumerates every ordered s-tuple into a hash table.
//! * `MeetInMiddle` splits s into halves, enumerates non-decreasing tuples
//!   weighted by their number of orderings, and convolves the two sorted
//!   half tables. Sorted-array merging keeps memory predictable and the
//!   result independent of scheduling.
//!
//! All counts are exact; totals are arbitrary-precision.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::config::ComputeConfig;
use crate::error::{invalid, Error, Result};
use crate::parallel;

/// Number of variables per side, degree, and box height.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemParams {
    pub s: u32,
    pub k: u32,
    pub x_max: u64,
}

impl SystemParams {
    pub fn new(s: u32, k: u32, x_max: u64) -> Result<Self> {
        if s < 1 || k < 1 || x_max < 1 {
            return Err(invalid(format!(
                "system parameters must be positive, got s={s}, k={k}, X={x_max}"
            )));
        }
        Ok(SystemParams { s, k, x_max })
    }
}

/// Exact nonnegative solution count.
pub type ExactCount = BigUint;

/// The vector (sum_i x_i^j) for j = 1..k of a tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerSumVector(pub Vec<u64>);

impl PowerSumVector {
    /// Power sums of orders 1..=k of `tuple`. Fails if any component would
    /// overflow a 64-bit key.
    pub fn from_tuple(tuple: &[u64], k: u32) -> Result<Self> {
        check_key_width(
            tuple.len() as u32,
            k,
            tuple.iter().copied().max().unwrap_or(1),
        )?;
        let mut sums = vec![0u64; k as usize];
        for &x in tuple {
            let mut p = 1u64;
            for slot in sums.iter_mut() {
                p *= x;
                *slot += p;
            }
        }
        Ok(PowerSumVector(sums))
    }
}

/// How to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    BruteForce,
    MeetInMiddle,
}

/// Ensures s * hi^k fits in u64 so every power-sum component is representable.
fn check_key_width(s: u32, k: u32, hi: u64) -> Result<()> {
    let mut p: u128 = 1;
    for _ in 0..k {
        p = p.saturating_mul(hi as u128);
    }
    if p.saturating_mul(s as u128) > u64::MAX as u128 {
        return Err(Error::ResourceExceeded {
            needed_bytes: u64::MAX,
            budget_bytes: u64::MAX,
            hint: "power sums exceed 64-bit keys; reduce X or k",
        });
    }
    Ok(())
}

const TABLE_BYTES_SLACK: u64 = 48; // map/sort overhead per entry, rough

fn entry_bytes(key_len: usize) -> u64 {
    key_len as u64 * 8 + 16 + TABLE_BYTES_SLACK
}

// ---------------------------------------------------------------------------
// Representation tables
// ---------------------------------------------------------------------------

/// Sorted association of power-sum vectors with the number of ordered tuples
/// realizing them. Keys are stored flat (`key_len` consecutive u64 per entry)
/// in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationTable {
    key_len: usize,
    keys: Vec<u64>,
    counts: Vec<u128>,
}

impl RepresentationTable {
    pub fn key_len(&self) -> usize {
        self.key_len
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn key(&self, i: usize) -> &[u64] {
        &self.keys[i * self.key_len..(i + 1) * self.key_len]
    }

    pub fn count(&self, i: usize) -> u128 {
        self.counts[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u64], u128)> + '_ {
        (0..self.len()).map(move |i| (self.key(i), self.count(i)))
    }

    /// Total number of tuples represented: sum of all counts.
    pub fn total_tuples(&self) -> BigUint {
        let mut acc = Accumulator::default();
        for &c in &self.counts {
            acc.add_u128(c);
        }
        acc.finish()
    }

    /// Sum of squared counts — the mean value when the table covers full
    /// s-tuples.
    pub fn sum_of_squared_counts(&self) -> BigUint {
        let mut acc = Accumulator::default();
        for &c in &self.counts {
            acc.add_square(c);
        }
        acc.finish()
    }

    /// Checks sum_v r(v) = X^s for a table built over [1, x_max]^s.
    pub fn validate_mass(&self, s: u32, x_max: u64) -> Result<()> {
        let expected = BigUint::from(x_max).pow(s);
        let got = self.total_tuples();
        if got != expected {
            return Err(Error::InvariantViolation(format!(
                "table mass {got} != X^s = {expected}"
            )));
        }
        Ok(())
    }

    /// Writes the table as a sorted binary stream: a fixed header, then per
    /// entry the key components as little-endian u64 followed by the count as
    /// a length-prefixed big-endian magnitude.
    pub fn write_to(&self, w: &mut impl std::io::Write) -> std::io::Result<()> {
        w.write_all(b"PSTB")?;
        w.write_all(&[1u8, self.key_len as u8, 0, 0])?;
        w.write_all(&(self.len() as u64).to_le_bytes())?;
        for (key, count) in self.iter() {
            for &c in key {
                w.write_all(&c.to_le_bytes())?;
            }
            let mag = magnitude_be(count);
            w.write_all(&[mag.len() as u8])?;
            w.write_all(&mag)?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl std::io::Read) -> std::io::Result<Self> {
        use std::io::{Error, ErrorKind};
        let mut head = [0u8; 8];
        r.read_exact(&mut head)?;
        if &head[0..4] != b"PSTB" || head[4] != 1 {
            return Err(Error::new(ErrorKind::InvalidData, "bad table header"));
        }
        let key_len = head[5] as usize;
        let mut n_buf = [0u8; 8];
        r.read_exact(&mut n_buf)?;
        let n = u64::from_le_bytes(n_buf) as usize;
        let mut keys = Vec::with_capacity(n * key_len);
        let mut counts = Vec::with_capacity(n);
        let mut word = [0u8; 8];
        for _ in 0..n {
            for _ in 0..key_len {
                r.read_exact(&mut word)?;
                keys.push(u64::from_le_bytes(word));
            }
            let mut len = [0u8; 1];
            r.read_exact(&mut len)?;
            if len[0] as usize > 16 {
                return Err(Error::new(ErrorKind::InvalidData, "count too wide"));
            }
            let mut mag = [0u8; 16];
            r.read_exact(&mut mag[16 - len[0] as usize..])?;
            counts.push(u128::from_be_bytes(mag));
        }
        Ok(RepresentationTable {
            key_len,
            keys,
            counts,
        })
    }
}

fn magnitude_be(v: u128) -> Vec<u8> {
    let bytes = v.to_be_bytes();
    let first = bytes.iter().position(|&b| b != 0).unwrap_or(15);
    bytes[first..].to_vec()
}

/// Exact accumulator: u128 fast path spilling into a BigUint.
#[derive(Default)]
struct Accumulator {
    fast: u128,
    big: BigUint,
}

impl Accumulator {
    fn add_u128(&mut self, v: u128) {
        match self.fast.checked_add(v) {
            Some(f) => self.fast = f,
            None => {
                self.big += self.fast;
                self.fast = v;
            }
        }
    }

    fn add_square(&mut self, v: u128) {
        if v <= u64::MAX as u128 {
            self.add_u128(v * v);
        } else {
            let b = BigUint::from(v);
            self.big += &b * &b;
        }
    }

    fn finish(mut self) -> BigUint {
        self.big += self.fast;
        self.big
    }
}

// ---------------------------------------------------------------------------
// Flat (key, weight) batches used while building tables
// ---------------------------------------------------------------------------

struct FlatEntries {
    key_len: usize,
    keys: Vec<u64>,
    weights: Vec<u128>,
}

impl FlatEntries {
    fn new(key_len: usize) -> Self {
        FlatEntries {
            key_len,
            keys: Vec::new(),
            weights: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.weights.len()
    }

    fn push(&mut self, key: &[u64], weight: u128) {
        debug_assert_eq!(key.len(), self.key_len);
        self.keys.extend_from_slice(key);
        self.weights.push(weight);
    }

    fn key(&self, i: usize) -> &[u64] {
        &self.keys[i * self.key_len..(i + 1) * self.key_len]
    }

    /// Sorts by key and merges equal keys, summing weights exactly.
    fn sort_aggregate(self) -> Result<Self> {
        let n = self.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by(|&a, &b| self.key(a as usize).cmp(self.key(b as usize)));
        let mut out = FlatEntries::new(self.key_len);
        out.keys.reserve(self.keys.len());
        out.weights.reserve(n);
        for &idx in &order {
            let i = idx as usize;
            let last = out.len();
            if last > 0 && out.key(last - 1) == self.key(i) {
                out.weights[last - 1] = out.weights[last - 1]
                    .checked_add(self.weights[i])
                    .ok_or_else(|| {
                        Error::InvariantViolation("representation count exceeds 128 bits".into())
                    })?;
            } else {
                let (keys, w) = (self.key(i), self.weights[i]);
                out.keys.extend_from_slice(keys);
                out.weights.push(w);
            }
        }
        Ok(out)
    }

    /// Merges already-sorted batches in one pass, summing equal keys.
    fn merge_sorted(batches: Vec<FlatEntries>, key_len: usize) -> Result<FlatEntries> {
        // Batches are few (one per job); an iterative two-way merge keeps
        // this simple and the cost is dominated by enumeration anyway.
        let mut concat = FlatEntries::new(key_len);
        for b in &batches {
            for i in 0..b.len() {
                concat.push(b.key(i), b.weights[i]);
            }
        }
        concat.sort_aggregate()
    }

    fn into_table(self) -> RepresentationTable {
        RepresentationTable {
            key_len: self.key_len,
            keys: self.keys,
            counts: self.weights,
        }
    }
}

// ---------------------------------------------------------------------------
// Non-decreasing tuple enumeration (shared with the equal-power-sum search)
// ---------------------------------------------------------------------------

/// Calls `f(tuple, orderings)` for every non-decreasing `len`-tuple with
/// entries in [lo, hi], where `orderings` is the number of distinct ordered
/// rearrangements of the tuple.
pub(crate) fn for_each_nondecreasing_tuple<F: FnMut(&[u64], u64)>(
    len: u32,
    lo: u64,
    hi: u64,
    mut f: F,
) {
    let mut tuple = vec![0u64; len as usize];
    descend(&mut tuple, 0, lo, hi, &mut f);
}

fn descend<F: FnMut(&[u64], u64)>(tuple: &mut [u64], depth: usize, lo: u64, hi: u64, f: &mut F) {
    if depth == tuple.len() {
        f(tuple, orderings(tuple));
        return;
    }
    for v in lo..=hi {
        tuple[depth] = v;
        descend(tuple, depth + 1, v, hi, f);
    }
}

/// Number of distinct orderings of a non-decreasing tuple: n!/prod(run!).
fn orderings(tuple: &[u64]) -> u64 {
    let mut result = FACTORIALS[tuple.len()];
    let mut run = 1usize;
    for i in 1..tuple.len() {
        if tuple[i] == tuple[i - 1] {
            run += 1;
        } else {
            result /= FACTORIALS[run];
            run = 1;
        }
    }
    result / FACTORIALS[run]
}

const FACTORIALS: [u64; 21] = {
    let mut f = [1u64; 21];
    let mut i = 1;
    while i < 21 {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

// ---------------------------------------------------------------------------
// Table construction
// ---------------------------------------------------------------------------

/// Multiset count C(x + len - 1, len) saturating at u64::MAX, used for
/// budget estimates.
fn multiset_count(x: u64, len: u32) -> u64 {
    let mut num: u128 = 1;
    for i in 0..len as u128 {
        num = num.saturating_mul(x as u128 + i);
        if num > (u64::MAX as u128) * FACTORIALS[len as usize] as u128 {
            return u64::MAX;
        }
    }
    (num / FACTORIALS[len as usize] as u128).min(u64::MAX as u128) as u64
}

/// Builds the table of power-sum vectors of ordered `len`-tuples over
/// [1, x_max], partitioned by leading (smallest) coordinate for parallelism.
fn build_half_table(
    len: u32,
    k: u32,
    x_max: u64,
    cfg: &ComputeConfig,
) -> Result<RepresentationTable> {
    check_key_width(len, k, x_max)?;
    let est_entries = multiset_count(x_max, len);
    cfg.charge(
        est_entries.saturating_mul(entry_bytes(k as usize)),
        "reduce X or use brute_force",
    )?;
    cfg.progress.begin(x_max);
    let batches = parallel::run_jobs(x_max as usize, cfg.threads, |job| {
        let lead = job as u64 + 1;
        let mut local = FlatEntries::new(k as usize);
        let mut key = vec![0u64; k as usize];
        if len == 1 {
            fill_key(&mut key, &[lead]);
            local.push(&key, 1);
        } else {
            let mut tuple = vec![0u64; len as usize];
            tuple[0] = lead;
            let mut emit = |t: &[u64], w: u64| {
                fill_key(&mut key, t);
                local.push(&key, w as u128);
            };
            descend_with_head(&mut tuple, 1, lead, x_max, &mut emit);
        }
        cfg.progress.advance(1);
        local.sort_aggregate()
    });
    let mut ok = Vec::with_capacity(batches.len());
    for b in batches {
        ok.push(b?);
    }
    let merged = FlatEntries::merge_sorted(ok, k as usize)?;
    Ok(merged.into_table())
}

fn descend_with_head<F: FnMut(&[u64], u64)>(
    tuple: &mut [u64],
    depth: usize,
    lo: u64,
    hi: u64,
    f: &mut F,
) {
    if depth == tuple.len() {
        f(tuple, orderings(tuple));
        return;
    }
    for v in lo..=hi {
        tuple[depth] = v;
        descend_with_head(tuple, depth + 1, v, hi, f);
    }
}

fn fill_key(key: &mut [u64], tuple: &[u64]) {
    key.fill(0);
    for &x in tuple {
        let mut p = 1u64;
        for slot in key.iter_mut() {
            p *= x;
            *slot += p;
        }
    }
}

/// Convolves two sorted tables: keys add componentwise, weights multiply.
fn convolve(
    a: &RepresentationTable,
    b: &RepresentationTable,
    cfg: &ComputeConfig,
) -> Result<RepresentationTable> {
    assert_eq!(a.key_len(), b.key_len());
    let key_len = a.key_len();
    let pairs = a.len() as u64 * b.len() as u64;
    cfg.charge(
        pairs.saturating_mul(entry_bytes(key_len)),
        "reduce X or use brute_force",
    )?;
    let chunks = parallel::fixed_chunks(a.len() as u64, 2048);
    cfg.progress.begin(a.len() as u64);
    let batches = parallel::run_jobs(chunks.len(), cfg.threads, |job| {
        let (lo, hi) = chunks[job];
        let mut local = FlatEntries::new(key_len);
        let mut key = vec![0u64; key_len];
        for i in lo..hi {
            let (ka, ca) = (a.key(i as usize), a.count(i as usize));
            for (kb, cb) in b.iter() {
                for (slot, (&x, &y)) in key.iter_mut().zip(ka.iter().zip(kb)) {
                    *slot = x + y;
                }
                let w = ca.checked_mul(cb).ok_or_else(|| {
                    Error::InvariantViolation("convolution weight exceeds 128 bits".into())
                })?;
                local.push(&key, w);
            }
        }
        cfg.progress.advance(hi - lo);
        local.sort_aggregate()
    });
    let mut ok = Vec::with_capacity(batches.len());
    for b in batches {
        ok.push(b?);
    }
    let merged = FlatEntries::merge_sorted(ok, key_len)?;
    Ok(merged.into_table())
}

/// Full table of power-sum vectors of ordered s-tuples over [1, x_max],
/// built by convolving two half tables.
pub fn representation_table(
    s: u32,
    k: u32,
    x_max: u64,
    cfg: &ComputeConfig,
) -> Result<RepresentationTable> {
    if s < 1 || k < 1 || x_max < 1 {
        return Err(invalid("s, k, X must be positive"));
    }
    if s > 40 {
        // half tuples must stay within the 64-bit factorial table
        return Err(invalid("table construction supports s <= 40"));
    }
    if k > 64 {
        return Err(invalid("table construction supports k <= 64"));
    }
    check_key_width(s, k, x_max)?;
    let a_len = s.div_ceil(2);
    let b_len = s - a_len;
    let a = build_half_table(a_len, k, x_max, cfg)?;
    let table = if b_len == 0 {
        a
    } else if b_len == a_len {
        convolve(&a, &a, cfg)?
    } else {
        let b = build_half_table(b_len, k, x_max, cfg)?;
        convolve(&a, &b, cfg)?
    };
    table.validate_mass(s, x_max)?;
    Ok(table)
}

// ---------------------------------------------------------------------------
// Counting operations
// ---------------------------------------------------------------------------

/// Exact count of ordered 2s-tuples solving the degree-k system over
/// [1, X]^{2s}. Both strategies return identical values.
pub fn count_mean_value(
    params: &SystemParams,
    strategy: Strategy,
    cfg: &ComputeConfig,
) -> Result<ExactCount> {
    match strategy {
        Strategy::MeetInMiddle => {
            let table = representation_table(params.s, params.k, params.x_max, cfg)?;
            Ok(table.sum_of_squared_counts())
        }
        Strategy::BruteForce => {
            brute_force_over_values(params.s, params.k, &range_values(params.x_max), cfg)
        }
    }
}

fn range_values(x_max: u64) -> Vec<u64> {
    (1..=x_max).collect()
}

/// Exact count of ordered 2s-tuples with equal sums of k-th powers alone —
/// the single-equation moment. Dropping the lower-order equations can only
/// gain solutions bounded by the number of admissible shift vectors, giving
/// the exact integer inequality
///
/// ```text
/// count_single_equation(s, k, X) <= J_{s,k}(X) * prod_{j<k} (2 s X^j + 1),
/// ```
///
/// verified in the tests as the desk-scale shadow of the moment surrogate.
pub fn count_single_equation(
    s: u32,
    k: u32,
    x_max: u64,
    cfg: &ComputeConfig,
) -> Result<ExactCount> {
    if s < 1 || k < 1 || x_max < 1 {
        return Err(invalid("s, k, X must be positive"));
    }
    if s > 40 {
        return Err(invalid("supports s <= 40"));
    }
    check_key_width(s, k, x_max)?;
    cfg.charge(
        multiset_count(x_max, s).saturating_mul(entry_bytes(1)),
        "reduce X",
    )?;
    let mut sums: HashMap<u64, u128> = HashMap::new();
    for_each_nondecreasing_tuple(s, 1, x_max, |tuple, orderings| {
        let key: u64 = tuple.iter().map(|&x| x.pow(k)).sum();
        *sums.entry(key).or_insert(0) += orderings as u128;
    });
    let mut acc = Accumulator::default();
    for &c in sums.values() {
        acc.add_square(c);
    }
    Ok(acc.finish())
}

/// Direct enumeration of every ordered s-tuple drawn from `values` into a
/// hash table keyed by power-sum vector; the count is sum of squared
/// multiplicities. Kept free of the sorted-merge machinery so the two
/// strategies stay independent.
fn brute_force_over_values(
    s: u32,
    k: u32,
    values: &[u64],
    cfg: &ComputeConfig,
) -> Result<ExactCount> {
    if values.is_empty() {
        return Ok(BigUint::zero());
    }
    let hi = *values.iter().max().unwrap();
    check_key_width(s, k, hi)?;
    let tuples = (values.len() as u64)
        .checked_pow(s)
        .ok_or(Error::ResourceExceeded {
            needed_bytes: u64::MAX,
            budget_bytes: cfg.memory_budget_bytes,
            hint: "brute force space too large",
        })?;
    cfg.charge(tuples.saturating_mul(entry_bytes(k as usize)), "reduce X")?;
    let mut map: HashMap<Vec<u64>, u64> = HashMap::new();
    let mut sums = vec![0u64; k as usize];
    let mut stack_pows: Vec<Vec<u64>> = Vec::with_capacity(s as usize);
    // Odometer over positions; each step adds/removes one value's powers.
    let pow_of = |x: u64| -> Vec<u64> {
        let mut p = 1u64;
        (0..k)
            .map(|_| {
                p *= x;
                p
            })
            .collect()
    };
    let value_pows: Vec<Vec<u64>> = values.iter().map(|&x| pow_of(x)).collect();
    let mut idx = vec![0usize; s as usize];
    let mut depth = 0usize;
    loop {
        if depth == s as usize {
            *map.entry(sums.clone()).or_insert(0) += 1;
            // backtrack to the deepest position that can still advance
            loop {
                if depth == 0 {
                    let mut acc = Accumulator::default();
                    for &c in map.values() {
                        acc.add_square(c as u128);
                    }
                    return Ok(acc.finish());
                }
                depth -= 1;
                let pows = stack_pows.pop().unwrap();
                for (s_j, p_j) in sums.iter_mut().zip(&pows) {
                    *s_j -= p_j;
                }
                idx[depth] += 1;
                if idx[depth] < values.len() {
                    break;
                }
                idx[depth] = 0;
            }
        }
        let pows = &value_pows[idx[depth]];
        for (s_j, p_j) in sums.iter_mut().zip(pows) {
            *s_j += p_j;
        }
        stack_pows.push(pows.clone());
        depth += 1;
    }
}

/// Number of ordered pairs (x, y) in [1,X]^{2s} where y is a permutation of
/// x: sum over multisets of (number of orderings)^2. Evaluated exactly by
/// summing over multiplicity patterns, so it stays cheap for large X.
pub fn count_diagonal(s: u32, x_max: u64) -> Result<ExactCount> {
    if s < 1 || x_max < 1 {
        return Err(invalid("s and X must be positive"));
    }
    if s > 20 {
        return Err(invalid("diagonal count supports s <= 20"));
    }
    let mut total = BigUint::zero();
    let mut partition = Vec::new();
    sum_over_partitions(s as u64, s as u64, &mut partition, x_max, &mut total);
    Ok(total)
}

/// Accumulates C(X, m) * (arrangements of the pattern) * (orderings)^2 over
/// all partitions of s, where m is the number of parts.
fn sum_over_partitions(
    remaining: u64,
    max_part: u64,
    partition: &mut Vec<u64>,
    x_max: u64,
    total: &mut BigUint,
) {
    if remaining == 0 {
        let m = partition.len() as u64;
        if m > x_max {
            return;
        }
        // choose which m distinct values appear
        let mut term = binomial_big(x_max, m);
        // ways to assign multiplicities to the chosen values: m! / prod over
        // groups of equal parts
        let mut pattern_ways = BigUint::from(FACTORIALS[m as usize]);
        let mut i = 0;
        while i < partition.len() {
            let mut j = i;
            while j < partition.len() && partition[j] == partition[i] {
                j += 1;
            }
            pattern_ways /= BigUint::from(FACTORIALS[j - i]);
            i = j;
        }
        term *= pattern_ways;
        // orderings of one such multiset: s! / prod part!
        let s_total: u64 = partition.iter().sum();
        let mut orderings = BigUint::from(FACTORIALS[s_total as usize]);
        for &part in partition.iter() {
            orderings /= BigUint::from(FACTORIALS[part as usize]);
        }
        term *= &orderings * &orderings;
        *total += term;
        return;
    }
    let cap = max_part.min(remaining);
    for part in (1..=cap).rev() {
        partition.push(part);
        sum_over_partitions(remaining - part, part, partition, x_max, total);
        partition.pop();
    }
}

fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::from(1u32);
    for i in 0..k {
        num *= BigUint::from(n - i);
    }
    num / BigUint::from(FACTORIALS[k as usize])
}

/// The pigeonhole floor L = ceil(X^{2s} / prod_j (2sX^j + 1)) together with
/// the exact count J. Guarantees J >= L and J >= T_s(X) as exact integer
/// inequalities.
pub fn lower_bound_certificate(
    params: &SystemParams,
    cfg: &ComputeConfig,
) -> Result<(ExactCount, ExactCount)> {
    let j = count_mean_value(params, Strategy::MeetInMiddle, cfg)?;
    let l = pigeonhole_floor(params);
    if j < l {
        return Err(Error::InvariantViolation(format!(
            "count {j} below pigeonhole floor {l}"
        )));
    }
    let diag = count_diagonal(params.s, params.x_max)?;
    if j < diag {
        return Err(Error::InvariantViolation(format!(
            "count {j} below diagonal count {diag}"
        )));
    }
    Ok((l, j))
}

/// ceil(X^{2s} / prod_{j=1..k} (2 s X^j + 1)), exactly.
pub fn pigeonhole_floor(params: &SystemParams) -> ExactCount {
    let numerator = BigUint::from(params.x_max).pow(2 * params.s);
    let mut denom = BigUint::from(1u32);
    let x = BigUint::from(params.x_max);
    let two_s = BigUint::from(2 * params.s);
    let mut xj = BigUint::from(1u32);
    for _ in 0..params.k {
        xj *= &x;
        denom *= &two_s * &xj + 1u32;
    }
    // ceil division
    (&numerator + &denom - 1u32) / denom
}

/// True iff the mean value equals the diagonal count for every s in [1, k],
/// i.e. power sums of orders up to s determine the multiset.
pub fn check_newton_identity(k: u32, x_max: u64, cfg: &ComputeConfig) -> Result<bool> {
    for s in 1..=k {
        let params = SystemParams::new(s, k, x_max)?;
        let j = count_mean_value(&params, Strategy::MeetInMiddle, cfg)?;
        let t = count_diagonal(s, x_max)?;
        if j != t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Counts solutions with every variable in [1, X] congruent to xi mod q, and
/// cross-checks against the same count over the contracted range implied by
/// substituting x = q z + xi. The two must agree exactly; disagreement is
/// reported as an invariant violation.
pub fn count_in_progression(
    params: &SystemParams,
    q: u64,
    xi: i64,
    cfg: &ComputeConfig,
) -> Result<ExactCount> {
    if q < 1 {
        return Err(invalid("modulus q must be positive"));
    }
    let r = xi.rem_euclid(q as i64) as u64;
    let first = if r == 0 { q } else { r };
    if first > params.x_max {
        return Ok(BigUint::zero());
    }
    let n_elements = (params.x_max - first) / q + 1;
    // Direct count over the progression values themselves.
    let values: Vec<u64> = (0..n_elements).map(|i| first + i * q).collect();
    let direct = brute_force_over_values(params.s, params.k, &values, cfg)?;
    // Contracted count over [1, n]: dilation by q and translation by xi map
    // the progression bijectively onto an integer interval.
    let contracted_params = SystemParams::new(params.s, params.k, n_elements)?;
    let contracted = count_mean_value(&contracted_params, Strategy::MeetInMiddle, cfg)?;
    if direct != contracted {
        return Err(Error::InvariantViolation(format!(
            "progression count {direct} != contracted count {contracted} (q={q}, xi={xi})"
        )));
    }
    Ok(direct)
}

/// Least-squares slope of log J against log X over the given heights.
pub fn fit_empirical_exponent(s: u32, k: u32, x_list: &[u64], cfg: &ComputeConfig) -> Result<f64> {
    if x_list.len() < 3 {
        return Err(invalid("need at least three heights to fit a slope"));
    }
    if x_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("heights must be strictly ascending"));
    }
    let mut points = Vec::with_capacity(x_list.len());
    for &x in x_list {
        let params = SystemParams::new(s, k, x)?;
        let j = count_mean_value(&params, Strategy::MeetInMiddle, cfg)?;
        points.push(((x as f64).ln(), crate::numeric::ln_biguint(&j)));
    }
    Ok(least_squares_slope(&points))
}

pub(crate) fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for &(x, y) in points {
        sxy += (x - mean_x) * (y - mean_y);
        sxx += (x - mean_x) * (x - mean_x);
    }
    sxy / sxx
}
