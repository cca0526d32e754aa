//! Infinite families of solutions.
//!
//! * zero-sum sets of size five `<-(3r+1)/2, -(3r-1)/2, r-s, r, r+s>` from
//!   `8 s^2 - 5 r^2 = 3`, solved as `t^2 - 10 r^2 = 6` with `t = 4s`;
//! * zero-sum sets from square pairs (equal-length lists with equal sums of
//!   squares), translated by `c` so that the sum and cube sum both vanish;
//! * triples with `x^3 + y^3 + z^3 = x + y + z` from `9 phi^2 - 5 psi^2 = 4`,
//!   scaled into solutions of size three and four;
//! * solutions with `n` distinct entries for every `n >= 5`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multiset::{CsSet, Multiset};
use crate::pell::{self, PellProblem, PellSolution, PellStream};

/// Integers whose first `n - 1` squares sum to the square of the last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PythTuple {
    entries: Vec<BigInt>,
}

impl PythTuple {
    pub fn new<I, T>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let entries: Vec<BigInt> = entries.into_iter().map(Into::into).collect();
        if entries.len() < 3 {
            return Err(Error::InvalidTuple(format!(
                "need at least two legs and a hypotenuse, got {} entries",
                entries.len()
            )));
        }
        if entries.iter().any(Zero::is_zero) {
            return Err(Error::DegenerateTuple);
        }
        let (hyp, legs) = entries.split_last().expect("length checked");
        let lhs: BigInt = legs.iter().map(|l| l * l).sum();
        if lhs != hyp * hyp {
            return Err(Error::InvalidTuple(format!(
                "sum of squared legs {lhs} differs from squared hypotenuse {}",
                hyp * hyp
            )));
        }
        Ok(PythTuple { entries })
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn legs(&self) -> &[BigInt] {
        &self.entries[..self.entries.len() - 1]
    }

    pub fn hypotenuse(&self) -> &BigInt {
        self.entries.last().expect("nonempty")
    }

    /// Number of entries, hypotenuse included.
    pub fn arity(&self) -> usize {
        self.entries.len()
    }
}

/// `(a^2 - b, 2a l_1, ..., 2a l_k, a^2 + b)` with `b = sum l_i^2`.
pub fn pyth_tuple(a: &BigInt, legs: &[BigInt], allow_repeats: bool) -> Result<PythTuple> {
    if a.is_zero() {
        return Err(Error::InvalidTuple("generator a must be nonzero".into()));
    }
    if legs.is_empty() {
        return Err(Error::InvalidTuple("at least one leg parameter is required".into()));
    }
    if !allow_repeats {
        let mut sorted = legs.to_vec();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTuple("repeated leg parameters".into()));
        }
    }
    let b: BigInt = legs.iter().map(|l| l * l).sum();
    let a2 = a * a;
    let two_a: BigInt = a * 2u32;
    let mut entries = Vec::with_capacity(legs.len() + 2);
    entries.push(&a2 - &b);
    entries.extend(legs.iter().map(|l| &two_a * l));
    entries.push(&a2 + &b);
    PythTuple::new(entries)
}

/// Two equal-length lists with equal sums of squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpPair {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

impl SpPair {
    pub fn new(a: Vec<BigInt>, b: Vec<BigInt>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::ArityMismatch(a.len(), b.len()));
        }
        let sa: BigInt = a.iter().map(|v| v * v).sum();
        let sb: BigInt = b.iter().map(|v| v * v).sum();
        if sa != sb {
            return Err(Error::InvalidTuple(format!("sums of squares differ ({sa} vs {sb})")));
        }
        Ok(SpPair { a, b })
    }

    pub fn a(&self) -> &[BigInt] {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// True when some absolute value occurs on both sides.
    pub fn shares_elements(&self) -> bool {
        self.a.iter().any(|x| self.b.iter().any(|y| x.abs() == y.abs()))
    }
}

/// Legs against the hypotenuse padded with zeros.
pub fn pyth_to_sp(t: &PythTuple) -> SpPair {
    let legs = t.legs().to_vec();
    let mut other = vec![BigInt::zero(); legs.len() - 1];
    other.push(t.hypotenuse().clone());
    SpPair { a: legs, b: other }
}

/// `A = legs(t1) + [hyp(t2)]`, `B = legs(t2) + [hyp(t1)]`.
pub fn combine_sp(t1: &PythTuple, t2: &PythTuple) -> Result<SpPair> {
    if t1.arity() != t2.arity() {
        return Err(Error::ArityMismatch(t1.arity(), t2.arity()));
    }
    let mut a = t1.legs().to_vec();
    a.push(t2.hypotenuse().clone());
    let mut b = t2.legs().to_vec();
    b.push(t1.hypotenuse().clone());
    SpPair::new(a, b)
}

/// `{c - a_k} u {c + a_k} u {-c + b_k} u {-c - b_k}`, zeros kept.
pub fn frolov_union(sp: &SpPair, c: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(4 * sp.len());
    out.extend(sp.a.iter().map(|a| c - a));
    out.extend(sp.a.iter().map(|a| c + a));
    out.extend(sp.b.iter().map(|b| b - c));
    out.extend(sp.b.iter().map(|b| -c - b));
    out
}

/// The translated union with its zero entries dropped, verified.
pub fn frolov_zero_sum(sp: &SpPair, c: &BigInt) -> Result<CsSet> {
    let nonzero = frolov_union(sp, c).into_iter().filter(|e| !e.is_zero());
    let set = Multiset::canonicalize(nonzero)?.verify_cs()?;
    debug_assert!(set.sum().is_zero() && set.cube_sum().is_zero());
    Ok(set)
}

/// `(legs, removed)` for a target size: `4 legs - removed = n_target`.
/// Sizes 1 to 6 and 9 have no construction.
pub fn frolov_shape(n_target: usize) -> Result<(usize, usize)> {
    let legs = n_target.div_ceil(4);
    let removed = 4 * legs - n_target;
    let ok = legs >= 2 && (removed <= 1 || (removed == 2 && legs >= 3) || (removed == 3 && legs >= 4));
    if ok {
        Ok((legs, removed))
    } else {
        Err(Error::UnsupportedSize(n_target))
    }
}

/// Translations to try for `tuple` when none is given: values of legs
/// occurring `removed` times (and their negations) to cancel entries, or
/// small positive integers when nothing is to be removed.
fn candidate_translations(tuple: &PythTuple, removed: usize) -> Vec<BigInt> {
    if removed == 0 {
        return (1..=256).map(BigInt::from).collect();
    }
    let mut counts: BTreeMap<&BigInt, usize> = BTreeMap::new();
    for leg in tuple.legs() {
        *counts.entry(leg).or_default() += 1;
    }
    let mut out: Vec<BigInt> = counts
        .into_iter()
        .filter(|&(_, k)| k == removed)
        .map(|(v, _)| v.clone())
        .collect();
    out.sort_by_key(|v| v.abs());
    out.into_iter().flat_map(|v| [v.clone(), -v]).collect()
}

/// Zero-sum solution of exactly `n_target` entries from a tuple with
/// `(n_target + 3) / 4` legs. Without `c`, the first translation giving an
/// admissible set of the right size is used.
pub fn frolov_target_size(n_target: usize, tuple: &PythTuple, c: Option<&BigInt>) -> Result<CsSet> {
    Ok(frolov_target_member(n_target, tuple, c)?.set)
}

/// [`frolov_target_size`] with the translation that was used.
pub fn frolov_target_member(n_target: usize, tuple: &PythTuple, c: Option<&BigInt>) -> Result<FrolovMember> {
    let (legs, removed) = frolov_shape(n_target)?;
    if tuple.arity() != legs + 1 {
        return Err(Error::ArityMismatch(tuple.arity(), legs + 1));
    }
    let sp = pyth_to_sp(tuple);
    let check = |set: CsSet| {
        if set.len() == n_target {
            Ok(set)
        } else {
            Err(Error::SizeMismatch {
                want: n_target,
                got: set.len(),
            })
        }
    };
    let member = |c: &BigInt| -> Result<FrolovMember> {
        Ok(FrolovMember {
            tuple: tuple.clone(),
            c: c.clone(),
            set: check(frolov_zero_sum(&sp, c)?)?,
        })
    };
    if let Some(c) = c {
        return member(c);
    }
    let mut last_err = Error::SizeMismatch {
        want: n_target,
        got: 4 * legs,
    };
    for c in candidate_translations(tuple, removed) {
        match member(&c) {
            Ok(m) => return Ok(m),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// A member of the Frolov family for a size, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrolovMember {
    pub tuple: PythTuple,
    pub c: BigInt,
    pub set: CsSet,
}

/// Maximum generator `a` tried by [`frolov_member`].
const FROLOV_SEARCH_LIMIT: u32 = 10_000;

/// The `index`-th distinct member of a deterministic infinite family of
/// zero-sum solutions with `n_target` entries. Tuples come from
/// [`pyth_tuple`] with generator `a = 1, 2, ...` and leg parameters
/// `[1; removed]` followed by `4, 7, 10, ...`.
pub fn frolov_member(n_target: usize, index: usize) -> Result<FrolovMember> {
    let (legs, removed) = frolov_shape(n_target)?;
    let repeated = if removed >= 2 { removed } else { 1 };
    let params: Vec<BigInt> = std::iter::repeat_n(1u32, repeated)
        .chain((4u32..).step_by(3))
        .take(legs - 1)
        .map(BigInt::from)
        .collect();
    let mut seen: Vec<Multiset> = Vec::new();
    for a in 1..=FROLOV_SEARCH_LIMIT {
        let Ok(tuple) = pyth_tuple(&BigInt::from(a), &params, true) else {
            continue;
        };
        let sp = pyth_to_sp(&tuple);
        for c in candidate_translations(&tuple, removed) {
            let Ok(set) = frolov_zero_sum(&sp, &c) else {
                continue;
            };
            if set.len() != n_target {
                continue;
            }
            if seen.contains(set.elements()) {
                break;
            }
            if seen.len() == index {
                return Ok(FrolovMember { tuple, c, set });
            }
            seen.push(set.elements().clone());
            break;
        }
    }
    Err(Error::UnsupportedSize(n_target))
}

/// A zero-sum solution of size five with its Pell parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop7Member {
    pub r: BigInt,
    pub s: BigInt,
    pub t: BigInt,
    pub set: CsSet,
}

/// `t^2 - 10 r^2 = 6`.
pub fn prop7_problem() -> PellProblem {
    PellProblem::new(10, 6).expect("valid problem")
}

/// `<-(3r+1)/2, -(3r-1)/2, r-s, r, r+s>`.
pub fn prop7_set(r: &BigInt, s: &BigInt) -> Result<CsSet> {
    let three_r: BigInt = r * 3u32;
    let entries = vec![
        -((&three_r + 1u32) / 2u32),
        -((&three_r - 1u32) / 2u32),
        r - s,
        r.clone(),
        r + s,
    ];
    Multiset::canonicalize(entries)?.verify_cs()
}

/// The first `count` members, ascending in `r` over every orbit of
/// `t^2 - 10 r^2 = 6`; solutions giving a zero entry are skipped.
pub fn prop7_members(count: usize) -> Result<Vec<Prop7Member>> {
    let mut out = Vec::with_capacity(count);
    for sol in PellStream::new(&prop7_problem())?.take(pell::MAX_SCAN) {
        if out.len() == count {
            break;
        }
        let PellSolution { x: t, y: r } = sol;
        let (s, rem) = t.div_rem(&BigInt::from(4));
        debug_assert!(rem.is_zero(), "t = {t} is not a multiple of 4");
        if !rem.is_zero() || r == s {
            continue;
        }
        let set = prop7_set(&r, &s)?;
        out.push(Prop7Member { r, s, t, set });
    }
    Ok(out)
}

pub fn prop7_family(count: usize) -> Result<Vec<CsSet>> {
    Ok(prop7_members(count)?.into_iter().map(|m| m.set).collect())
}

/// `x^3 + y^3 + z^3 = x + y + z = psi` with `x + y = 3 psi`, `z = -2 psi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowlaTriple {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
    pub psi: BigInt,
    /// Exponent `k` in `(3 + sqrt 5)(9 + 4 sqrt 5)^k`.
    pub k: usize,
}

impl ChowlaTriple {
    pub fn multiset(&self) -> Result<Multiset> {
        Multiset::canonicalize([self.x.clone(), self.y.clone(), self.z.clone()])
    }

    pub fn is_admissible(&self) -> bool {
        self.multiset().map(|m| m.is_admissible()).unwrap_or(false)
    }

    /// `q = (x + y) / 3`.
    pub fn q(&self) -> BigInt {
        (&self.x + &self.y) / 3u32
    }
}

/// `alpha^2 - 5 beta^2 = 4`.
pub fn chowla_problem() -> PellProblem {
    PellProblem::new(5, 4).expect("valid problem")
}

/// Triples from the orbit of `(3, 1)` under `(9, 4)`, keeping the members
/// with `alpha` divisible by 3 (the even exponents). Inadmissible triples are
/// included; see [`ChowlaTriple::is_admissible`].
pub fn chowla_triples(count: usize) -> Result<Vec<ChowlaTriple>> {
    let problem = chowla_problem();
    let seed = PellSolution::new(&problem, 3, 1)?;
    let unit = pell::fundamental_unit(problem.d())?;
    let mut out = Vec::with_capacity(count);
    for (k, sol) in pell::orbit(seed, unit).enumerate() {
        if out.len() == count {
            break;
        }
        let (phi, rem) = sol.x.div_rem(&BigInt::from(3));
        if !rem.is_zero() {
            continue;
        }
        let psi = sol.y;
        let three_psi: BigInt = &psi * 3u32;
        out.push(ChowlaTriple {
            x: (&phi + &three_psi) / 2u32,
            y: (&three_psi - &phi) / 2u32,
            z: -(&psi * 2u32),
            psi,
            k,
        });
    }
    Ok(out)
}

/// A set of size three or four built from a triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowlaMember {
    pub triple: ChowlaTriple,
    /// `1` or `-1` for size four.
    pub appended: Option<BigInt>,
    /// Factor applied to the triple (and appended entry).
    pub scale: BigInt,
    pub set: CsSet,
}

/// Solutions of size 3 (the triple scaled by `psi`) or 4 (the triple plus
/// `1` or `-1`, then scaled), from the first `count` usable triples.
/// Triples giving an inadmissible or repeated entry are skipped.
pub fn chowla_members(count: usize, n: usize) -> Result<Vec<ChowlaMember>> {
    if n != 3 && n != 4 {
        return Err(Error::InvalidConfig(format!("n must be 3 or 4, got {n}")));
    }
    let mut out = Vec::with_capacity(count);
    let mut batch = count.max(1) + 1;
    while out.len() < count {
        out.clear();
        for triple in chowla_triples(batch)? {
            if out.len() == count {
                break;
            }
            let Ok(base) = triple.multiset() else { continue };
            let candidates: Vec<(Option<BigInt>, Multiset)> = if n == 3 {
                vec![(None, base)]
            } else {
                [BigInt::one(), -BigInt::one()]
                    .into_iter()
                    .filter_map(|e| base.with(e.clone()).ok().map(|m| (Some(e), m)))
                    .collect()
            };
            let found = candidates
                .into_iter()
                .filter(|(_, m)| m.is_admissible() && m.is_distinct())
                .find_map(|(appended, m)| {
                    let p = m.power_sums();
                    let set = m.scale_to_cs().ok()?;
                    let scale = &p.sum * &p.sum / &p.cube_sum;
                    Some((appended, scale, set))
                });
            if let Some((appended, scale, set)) = found {
                out.push(ChowlaMember {
                    triple,
                    appended,
                    scale,
                    set,
                });
            }
        }
        batch *= 2;
    }
    Ok(out)
}

pub fn chowla_cs(count: usize, n: usize) -> Result<Vec<CsSet>> {
    Ok(chowla_members(count, n)?.into_iter().map(|m| m.set).collect())
}

/// `<1, ..., n - 5>` joined with a zero-sum size-five member whose smallest
/// absolute entry exceeds `n - 5`. Candidates are the size-five members in
/// order, each scaled by the least factor reaching that modulus; `index`
/// selects among them.
pub fn distinct_cs_n(n: usize, index: usize) -> Result<CsSet> {
    if n < 5 {
        return Err(Error::InvalidConfig(format!("n must be at least 5, got {n}")));
    }
    let prefix = Multiset::range(n - 5);
    let floor = BigInt::from(n - 5);
    let member = prop7_family(index + 1)?
        .pop()
        .expect("prop7_family returns the requested count");
    let min_abs = member.elements().min_abs();
    let factor: BigInt = &floor / &min_abs + 1u32;
    let scaled = member.elements().scale(&factor)?;
    let set = prefix.union(&scaled).verify_cs()?;
    debug_assert!(set.elements().is_distinct());
    Ok(set)
}
