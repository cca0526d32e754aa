//! Exhaustive enumeration.
//!
//! Positive sets are searched depth-first over nondecreasing tuples, so every
//! leaf is already canonical and no deduplication pass is needed. Entries of a
//! positive solution of size `n` never exceed `n^2`, which makes the default
//! search complete. Zero-sum sets are found by a meet-in-the-middle join of
//! the negative part against the positive part on `(sum, cube sum)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiset::{CsSet, Multiset};

/// Largest `element_bound` accepted by the positive search.
pub const MAX_ELEMENT_BOUND: u64 = 1 << 20;
/// Largest `magnitude_bound` accepted by the zero-sum search.
pub const MAX_MAGNITUDE_BOUND: u32 = 128;
/// Upper limit on half-sets held in memory by the zero-sum join.
pub const MAX_HALF_SETS: u128 = 50_000_000;

/// Positive search parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub element_bound: u64,
    pub prune: bool,
    pub prefix: Vec<u64>,
}

impl SearchConfig {
    /// Complete search for size `n`: bound `n^2`, pruning on, no prefix.
    pub fn new(n: usize) -> Self {
        SearchConfig {
            n,
            element_bound: default_bound(n),
            prune: true,
            prefix: Vec::new(),
        }
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.element_bound = bound;
        self
    }

    pub fn with_prefix(mut self, prefix: Vec<u64>) -> Self {
        self.prefix = prefix;
        self
    }

    pub fn unpruned(mut self) -> Self {
        self.prune = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.element_bound == 0 || self.element_bound > MAX_ELEMENT_BOUND {
            return bad(format!(
                "element bound must lie in 1..={MAX_ELEMENT_BOUND}, got {}",
                self.element_bound
            ));
        }
        if self.prefix.len() > self.n {
            return bad(format!("prefix longer than n = {}", self.n));
        }
        if self.prefix.windows(2).any(|w| w[0] > w[1]) {
            return bad("prefix must be nondecreasing".into());
        }
        if self.prefix.iter().any(|&p| p == 0 || p > self.element_bound) {
            return bad(format!("prefix entries must lie in 1..={}", self.element_bound));
        }
        Ok(())
    }

    /// Whether the bound covers the proven maximum entry `n^2`.
    pub fn is_complete(&self) -> bool {
        self.element_bound >= default_bound(self.n)
    }
}

pub fn default_bound(n: usize) -> u64 {
    (n as u64).saturating_mul(n as u64)
}

struct Dfs<'a> {
    n: usize,
    bound: i128,
    prune: bool,
    stack: Vec<i128>,
    out: &'a mut Vec<Vec<i128>>,
}

impl Dfs<'_> {
    fn run(&mut self, s: i128, c: i128) {
        let r = (self.n - self.stack.len()) as i128;
        if r == 0 {
            if c == s * s {
                self.out.push(self.stack.clone());
            }
            return;
        }
        let last = self.stack.last().copied().unwrap_or(1);
        if !self.prune {
            for x in last..=self.bound {
                self.stack.push(x);
                self.run(s + x, c + x * x * x);
                self.stack.pop();
            }
            return;
        }
        if r == 1 {
            for z in final_roots(s, c, last, self.bound) {
                self.stack.push(z);
                self.out.push(self.stack.clone());
                self.stack.pop();
            }
            return;
        }
        for x in last..=self.bound {
            let (s2, c2) = (s + x, c + x * x * x);
            if !feasible(s2, c2, x, r - 1, self.bound) {
                continue;
            }
            self.stack.push(x);
            self.run(s2, c2);
            self.stack.pop();
        }
    }
}

/// Necessary condition for completing a partial tuple with sum `s` and cube
/// sum `c` by `r` more entries from `[last, bound]`.
#[inline]
fn feasible(s: i128, c: i128, last: i128, r: i128, bound: i128) -> bool {
    // cube sum already beyond the largest reachable square
    let hi = s + r * bound;
    if c + r * last * last * last > hi * hi {
        return false;
    }
    // smallest reachable square beyond the largest reachable cube sum
    let lo = s + r * last;
    if c + r * bound * bound * bound < lo * lo {
        return false;
    }
    // with remaining sum t, the remaining cube sum lies in
    // [max(t^3 / r^2, t last^2), t bound^2] and must equal (s + t)^2 - c
    let r2 = r * r;
    let b2 = bound * bound;
    let l2 = last * last;
    let mut t = r * last;
    while t <= hi - s {
        let need = (s + t) * (s + t) - c;
        if need >= t * l2 && need * r2 >= t * t * t && need <= t * b2 {
            return true;
        }
        t += 1;
    }
    false
}

/// Integer roots `z` in `[lo, hi]` of `c + z^3 = (s + z)^2`, ascending.
fn final_roots(s: i128, c: i128, lo: i128, hi: i128) -> Vec<i128> {
    let p = |z: i128| z * z * z - z * z - 2 * s * z + (c - s * s);
    // p' = 3z^2 - 2z - 2s is nonnegative from `turn` on
    let disc = 4 + 24 * s.max(0);
    let turn = (2 + isqrt(disc) + 1) / 6 + 1;
    let mut roots = Vec::new();
    let scan_end = turn.min(hi);
    let mut z = lo;
    while z <= scan_end {
        if p(z) == 0 {
            roots.push(z);
        }
        z += 1;
    }
    // increasing on [max(lo, turn + 1), hi]: bisect for the single root
    let (mut a, mut b) = (lo.max(scan_end + 1), hi);
    if a <= b && p(a) <= 0 && p(b) >= 0 {
        while a < b {
            let mid = a + (b - a) / 2;
            if p(mid) < 0 {
                a = mid + 1;
            } else {
                b = mid;
            }
        }
        if p(a) == 0 {
            roots.push(a);
        }
    }
    roots
}

fn isqrt(v: i128) -> i128 {
    if v <= 0 {
        return 0;
    }
    let mut x = (v as f64).sqrt() as i128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

fn search_from(cfg: &SearchConfig, prefix: &[u64]) -> Vec<Vec<i128>> {
    let mut out = Vec::new();
    let stack: Vec<i128> = prefix.iter().map(|&p| p as i128).collect();
    let s: i128 = stack.iter().sum();
    let c: i128 = stack.iter().map(|x| x * x * x).sum();
    let mut dfs = Dfs {
        n: cfg.n,
        bound: cfg.element_bound as i128,
        prune: cfg.prune,
        stack,
        out: &mut out,
    };
    dfs.run(s, c);
    out
}

fn to_cs_sets(raw: Vec<Vec<i128>>) -> Vec<CsSet> {
    raw.into_iter()
        .map(|t| {
            let m = Multiset::from_sorted_unchecked(t.into_iter().map(BigInt::from).collect());
            CsSet::new(m).expect("search leaves satisfy the identity and are positive")
        })
        .collect()
}

/// All positive sets of size `cfg.n` with entries in `[1, element_bound]`
/// (and starting with `cfg.prefix`), in lexicographic order.
pub fn enumerate_positive(cfg: &SearchConfig) -> Result<Vec<CsSet>> {
    cfg.validate()?;
    Ok(to_cs_sets(search_from(cfg, &cfg.prefix)))
}

/// Same result as [`enumerate_positive`], split over the next entry after the
/// prefix and run on the current rayon pool.
pub fn enumerate_positive_par(cfg: &SearchConfig) -> Result<Vec<CsSet>> {
    cfg.validate()?;
    if cfg.prefix.len() == cfg.n {
        return enumerate_positive(cfg);
    }
    let first = cfg.prefix.last().copied().unwrap_or(1);
    let parts: Vec<Vec<Vec<i128>>> = (first..=cfg.element_bound)
        .into_par_iter()
        .map(|x| {
            let mut prefix = cfg.prefix.clone();
            prefix.push(x);
            search_from(cfg, &prefix)
        })
        .collect();
    Ok(to_cs_sets(parts.into_iter().flatten().collect()))
}

/// Number of positive sets of size `n` (complete search).
pub fn count_positive(n: usize) -> Result<usize> {
    Ok(enumerate_positive(&SearchConfig::new(n))?.len())
}

/// The single positive set of size `n` with distinct entries, `<1, ..., n>`.
/// Any other outcome is reported as [`Error::AssertionViolation`].
pub fn distinct_positive(n: usize) -> Result<CsSet> {
    let distinct: Vec<CsSet> = enumerate_positive(&SearchConfig::new(n))?
        .into_iter()
        .filter(|s| s.elements().is_distinct())
        .collect();
    match distinct.as_slice() {
        [only] if *only.elements() == Multiset::range(n) => Ok(only.clone()),
        _ => Err(Error::AssertionViolation {
            n,
            found: distinct.len(),
        }),
    }
}

/// Discriminant of `a^2 - (b + 1) a + (b^2 - b)` in `a`.
pub fn cs2_discriminant(b: i64) -> i64 {
    -3 * b * b + 6 * b + 1
}

/// Every set of size two, from the integer roots of the quadratic in `a`
/// over the finitely many `b` with a nonnegative discriminant.
pub fn enumerate_cs2() -> Vec<CsSet> {
    // the discriminant is a downward parabola with apex at b = 1
    let mut bs = vec![];
    let mut b = 1;
    while cs2_discriminant(b) >= 0 {
        bs.push(b);
        b += 1;
    }
    let mut b = 0;
    while cs2_discriminant(b) >= 0 {
        bs.push(b);
        b -= 1;
    }
    let mut found: Vec<CsSet> = Vec::new();
    for b in bs {
        let disc = cs2_discriminant(b);
        let root = isqrt(disc as i128) as i64;
        if root * root != disc {
            continue;
        }
        for a2 in [b + 1 + root, b + 1 - root] {
            if a2 % 2 != 0 {
                continue;
            }
            let a = a2 / 2;
            if let Ok(m) = Multiset::canonicalize([a, b]) {
                if let Ok(set) = m.verify_cs() {
                    if !found.contains(&set) {
                        found.push(set);
                    }
                }
            }
        }
    }
    found.sort();
    found
}

/// Zero-sum search parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroSumSearchConfig {
    pub n: usize,
    pub magnitude_bound: u32,
}

impl ZeroSumSearchConfig {
    pub fn new(n: usize, magnitude_bound: u32) -> Self {
        ZeroSumSearchConfig { n, magnitude_bound }
    }

    pub fn validate(&self) -> Result<()> {
        if self.magnitude_bound == 0 || self.magnitude_bound > MAX_MAGNITUDE_BOUND {
            return Err(Error::InvalidConfig(format!(
                "magnitude bound must lie in 1..={MAX_MAGNITUDE_BOUND}, got {}",
                self.magnitude_bound
            )));
        }
        let half = multisets_up_to(self.magnitude_bound as u128, self.n.saturating_sub(1) as u128);
        if half > MAX_HALF_SETS {
            return Err(Error::InvalidConfig(format!(
                "n = {} with magnitude bound {} needs {half} half-sets (limit {MAX_HALF_SETS})",
                self.n, self.magnitude_bound
            )));
        }
        Ok(())
    }
}

/// Number of nonempty multisets of size at most `k` over `v` values.
fn multisets_up_to(v: u128, k: u128) -> u128 {
    // C(v + k, k) - 1, computed incrementally with saturation
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.saturating_mul(v + i) / i;
        if acc > u64::MAX as u128 {
            return u128::MAX;
        }
    }
    acc - 1
}

/// `(support mask, arena offset)` of each half-set with a given key.
type Bucket = Vec<(u128, u32)>;

/// Positive half-sets grouped by size, then by `(sum, cube sum)`.
struct HalfTable {
    arena: Vec<u8>,
    by_size: Vec<HashMap<(u64, u64), Bucket>>,
}

impl HalfTable {
    fn build(max_size: usize, bound: u32) -> Self {
        let mut table = HalfTable {
            arena: Vec::new(),
            by_size: (0..=max_size).map(|_| HashMap::new()).collect(),
        };
        let mut stack = Vec::with_capacity(max_size);
        table.fill(&mut stack, 1, bound, 0, 0, 0, max_size);
        table
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(&mut self, stack: &mut Vec<u8>, from: u32, bound: u32, s: u64, c: u64, mask: u128, max: usize) {
        if !stack.is_empty() {
            let start = self.arena.len() as u32;
            self.arena.extend_from_slice(stack);
            self.by_size[stack.len()].entry((s, c)).or_default().push((mask, start));
        }
        if stack.len() == max {
            return;
        }
        for v in from..=bound {
            let w = v as u64;
            stack.push(v as u8);
            self.fill(stack, v, bound, s + w, c + w * w * w, mask | 1u128 << (v - 1), max);
            stack.pop();
        }
    }

    fn slice(&self, size: usize, start: u32) -> &[u8] {
        &self.arena[start as usize..start as usize + size]
    }
}

/// All admissible zero-sum sets of size `n` with `|entry| <= magnitude_bound`,
/// in lexicographic order.
pub fn zero_sum_search(cfg: &ZeroSumSearchConfig) -> Result<Vec<CsSet>> {
    cfg.validate()?;
    let n = cfg.n;
    if n < 2 {
        return Ok(Vec::new());
    }
    let table = HalfTable::build(n - 1, cfg.magnitude_bound);
    let mut found: Vec<Vec<i64>> = Vec::new();
    for neg_size in 1..n {
        let pos_size = n - neg_size;
        for (key, negs) in &table.by_size[neg_size] {
            let Some(poss) = table.by_size[pos_size].get(key) else {
                continue;
            };
            for &(neg_mask, neg_start) in negs {
                for &(pos_mask, pos_start) in poss {
                    if neg_mask & pos_mask != 0 {
                        continue;
                    }
                    let mut entries: Vec<i64> = table
                        .slice(neg_size, neg_start)
                        .iter()
                        .rev()
                        .map(|&v| -(v as i64))
                        .collect();
                    entries.extend(table.slice(pos_size, pos_start).iter().map(|&v| v as i64));
                    found.push(entries);
                }
            }
        }
    }
    found.sort();
    found
        .into_iter()
        .map(|e| Multiset::canonicalize(e)?.verify_cs())
        .collect()
}

/// Outcome of a positive run, with the bound-sensitivity report.
#[derive(Debug, Clone, Serialize)]
pub struct EnumerationReport {
    pub n: usize,
    pub bound: u64,
    pub default_bound: u64,
    pub count: usize,
    /// Largest entry over all returned sets.
    pub max_entry: u64,
    /// Sets of the complete search that the chosen bound excludes; only
    /// computed when the bound is below `n^2`.
    pub excluded: Option<Vec<String>>,
}

/// Runs `cfg` (in parallel) and, if its bound is below `n^2`, also the
/// complete search to list which known sets the smaller bound misses.
pub fn enumerate_with_report(cfg: &SearchConfig) -> Result<(Vec<CsSet>, EnumerationReport)> {
    let sets = enumerate_positive_par(cfg)?;
    let max_entry = max_entry(&sets);
    let excluded = if cfg.is_complete() {
        None
    } else {
        let full = SearchConfig {
            element_bound: default_bound(cfg.n),
            ..cfg.clone()
        };
        let limit = BigInt::from(cfg.element_bound);
        Some(
            enumerate_positive_par(&full)?
                .into_iter()
                .filter(|s| s.entries().iter().any(|e| *e > limit))
                .map(|s| s.to_string())
                .collect(),
        )
    };
    let report = EnumerationReport {
        n: cfg.n,
        bound: cfg.element_bound,
        default_bound: default_bound(cfg.n),
        count: sets.len(),
        max_entry,
        excluded,
    };
    Ok((sets, report))
}

pub fn max_entry(sets: &[CsSet]) -> u64 {
    sets.iter()
        .filter_map(|s| s.entries().last())
        .map(|e| u64::try_from(e).unwrap_or(u64::MAX))
        .max()
        .unwrap_or(0)
}
