//! Generalized Pell equations `x^2 - D y^2 = N`.
//!
//! Solutions of a fixed problem split into finitely many orbits under
//! multiplication by the fundamental unit of `x^2 - D y^2 = 1`. Orbits are
//! found by brute force over a bounded `y` range and walked lazily.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Upper bound on orbit members scanned by [`generate`] before giving up on
/// the predicate.
pub const MAX_SCAN: usize = 100_000;

/// `x^2 - D y^2 = N` with `D > 0` nonsquare and `N != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellProblem {
    d: BigInt,
    n: BigInt,
}

impl PellProblem {
    pub fn new(d: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<Self> {
        let (d, n) = (d.into(), n.into());
        check_d(&d)?;
        if n.is_zero() {
            return Err(Error::ZeroN);
        }
        Ok(PellProblem { d, n })
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn norm(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * x - &self.d * y * y
    }

    pub fn is_solution(&self, x: &BigInt, y: &BigInt) -> bool {
        self.norm(x, y) == self.n
    }
}

impl fmt::Display for PellProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^2 - {} y^2 = {}", self.d, self.n)
    }
}

/// A pair `(x, y)` on some [`PellProblem`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellSolution {
    pub x: BigInt,
    pub y: BigInt,
}

impl PellSolution {
    pub fn new(problem: &PellProblem, x: impl Into<BigInt>, y: impl Into<BigInt>) -> Result<Self> {
        let (x, y) = (x.into(), y.into());
        if !problem.is_solution(&x, &y) {
            return Err(Error::NotASolution {
                x,
                y,
                equation: format!("x^2 - {} y^2 = {}", problem.d, problem.n),
            });
        }
        Ok(PellSolution { x, y })
    }

    fn raw(x: BigInt, y: BigInt) -> Self {
        PellSolution { x, y }
    }

    fn is_nonnegative(&self) -> bool {
        !self.x.is_negative() && !self.y.is_negative()
    }

    /// Ordering used for representatives: smaller `y` first, then
    /// nonnegative `x` before negative `x`.
    fn rep_key(&self) -> (&BigInt, bool) {
        (&self.y, self.x.is_negative())
    }

    /// Ordering used for listings: by `y`, then by `x`.
    fn listing_cmp(&self, other: &Self) -> Ordering {
        self.y.cmp(&other.y).then_with(|| self.x.cmp(&other.x))
    }
}

impl fmt::Display for PellSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.x, self.y)
    }
}

/// Minimal positive solution of `x^2 - D y^2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellUnit {
    pub x: BigInt,
    pub y: BigInt,
    d: BigInt,
}

impl PellUnit {
    pub fn d(&self) -> &BigInt {
        &self.d
    }
}

fn check_d(d: &BigInt) -> Result<()> {
    if !d.is_positive() {
        return Err(Error::NonPositiveD(d.clone()));
    }
    let r = d.sqrt();
    if &r * &r == *d {
        return Err(Error::SquareD(d.clone()));
    }
    Ok(())
}

/// Fundamental unit from the continued fraction expansion of `sqrt(D)`.
pub fn fundamental_unit(d: &BigInt) -> Result<PellUnit> {
    check_d(d)?;
    let a0 = d.sqrt();
    let (mut m, mut den, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    loop {
        if &p * &p - d * &q * &q == BigInt::one() {
            return Ok(PellUnit {
                x: p,
                y: q,
                d: d.clone(),
            });
        }
        m = &den * &a - &m;
        den = (d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// Multiplies `s` by the unit: `(x u + D y v, x v + y u)`.
pub fn advance(s: &PellSolution, unit: &PellUnit) -> PellSolution {
    PellSolution::raw(
        &s.x * &unit.x + &unit.d * &s.y * &unit.y,
        &s.x * &unit.y + &s.y * &unit.x,
    )
}

/// Multiplies `s` by the inverse unit: `(x u - D y v, y u - x v)`.
pub fn retreat(s: &PellSolution, unit: &PellUnit) -> PellSolution {
    PellSolution::raw(
        &s.x * &unit.x - &unit.d * &s.y * &unit.y,
        &s.y * &unit.x - &s.x * &unit.y,
    )
}

/// Default brute-force bound: `max(10, ceil(sqrt(|N| (u + 1) / D)) + 1)`.
pub fn default_y_bound(problem: &PellProblem, unit: &PellUnit) -> BigInt {
    let num = problem.n.abs() * (&unit.x + 1u32);
    let (q, r) = (&num / &problem.d, &num % &problem.d);
    // ceil(sqrt(num / D)) via ceil of the quotient, then ceil of the root
    let q = if r.is_zero() { q } else { q + 1u32 };
    let root = q.sqrt();
    let root = if &root * &root == q { root } else { root + 1u32 };
    std::cmp::max(BigInt::from(10), root + 1u32)
}

/// Representative of the orbit of `s`: the member with `y >= 0` minimizing
/// `(y, x < 0)`. `None` when the orbit has no member with `y >= 0`.
fn orbit_representative(s: &PellSolution, unit: &PellUnit) -> Option<PellSolution> {
    let mut cur = s.clone();
    while cur.y.is_negative() {
        let (a, r) = (advance(&cur, unit), retreat(&cur, unit));
        let best = if a.y >= r.y { a } else { r };
        if best.y <= cur.y {
            return None;
        }
        cur = best;
    }
    loop {
        let better = [advance(&cur, unit), retreat(&cur, unit)]
            .into_iter()
            .filter(|n| !n.y.is_negative() && n.rep_key() < cur.rep_key())
            .min_by(|a, b| a.rep_key().cmp(&b.rep_key()));
        match better {
            Some(next) => cur = next,
            None => return Some(cur),
        }
    }
}

/// Orbit-distinct representatives of all solutions found with
/// `0 <= y <= y_bound`, including sign variants, sorted by `(y, x)`.
pub fn solution_classes(problem: &PellProblem, y_bound: &BigInt) -> Result<Vec<PellSolution>> {
    let unit = fundamental_unit(&problem.d)?;
    Ok(classes_with_unit(problem, &unit, y_bound))
}

fn classes_with_unit(problem: &PellProblem, unit: &PellUnit, y_bound: &BigInt) -> Vec<PellSolution> {
    let mut reps: Vec<PellSolution> = Vec::new();
    let mut y = BigInt::zero();
    while &y <= y_bound {
        let x2 = &problem.n + &problem.d * &y * &y;
        if !x2.is_negative() {
            let x = x2.sqrt();
            if &x * &x == x2 {
                for (sx, sy) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
                    let variant = PellSolution::raw(&x * sx, &y * sy);
                    if let Some(rep) = orbit_representative(&variant, unit) {
                        if !reps.contains(&rep) {
                            reps.push(rep);
                        }
                    }
                }
            }
        }
        y += 1u32;
    }
    reps.sort_by(PellSolution::listing_cmp);
    reps
}

/// Lazy merge of the nonnegative parts of every orbit, ascending by `y`.
#[derive(Debug, Clone)]
pub struct PellStream {
    unit: PellUnit,
    heads: Vec<PellSolution>,
}

impl PellStream {
    /// Streams all orbits of `problem` found within the default bound.
    pub fn new(problem: &PellProblem) -> Result<Self> {
        let unit = fundamental_unit(&problem.d)?;
        let bound = default_y_bound(problem, &unit);
        let reps = classes_with_unit(problem, &unit, &bound);
        Ok(Self::from_seeds(reps, unit))
    }

    /// Streams the orbits through the given seeds only.
    pub fn from_seeds(seeds: Vec<PellSolution>, unit: PellUnit) -> Self {
        let mut heads = Vec::new();
        for seed in seeds {
            if let Some(start) = first_nonnegative(seed, &unit) {
                if !heads.contains(&start) {
                    heads.push(start);
                }
            }
        }
        PellStream { unit, heads }
    }

    pub fn unit(&self) -> &PellUnit {
        &self.unit
    }

    pub fn orbit_count(&self) -> usize {
        self.heads.len()
    }
}

/// First member of the forward orbit of `s` with `x, y >= 0`, if the orbit
/// has one.
fn first_nonnegative(s: PellSolution, unit: &PellUnit) -> Option<PellSolution> {
    // x + y sqrt(D) > 0 exactly when the forward orbit turns nonnegative
    let positive = if s.x.is_negative() {
        s.y.is_positive() && &s.x * &s.x < &unit.d * &s.y * &s.y
    } else {
        !s.y.is_negative() || &s.x * &s.x > &unit.d * &s.y * &s.y
    };
    if !positive {
        return None;
    }
    let mut cur = s;
    while !cur.is_nonnegative() {
        cur = advance(&cur, unit);
    }
    // step back to the smallest nonnegative member
    loop {
        let prev = retreat(&cur, unit);
        if prev.is_nonnegative() && prev.listing_cmp(&cur) == Ordering::Less {
            cur = prev;
        } else {
            return Some(cur);
        }
    }
}

impl Iterator for PellStream {
    type Item = PellSolution;

    fn next(&mut self) -> Option<PellSolution> {
        let (idx, _) = self.heads.iter().enumerate().min_by(|a, b| a.1.listing_cmp(b.1))?;
        let next = advance(&self.heads[idx], &self.unit);
        Some(std::mem::replace(&mut self.heads[idx], next))
    }
}

/// Forward orbit `seed, seed * u, seed * u^2, ...`.
pub fn orbit(seed: PellSolution, unit: PellUnit) -> impl Iterator<Item = PellSolution> {
    std::iter::successors(Some(seed), move |s| Some(advance(s, &unit)))
}

/// First `count` nonnegative solutions across all orbits, ascending by `y`,
/// that satisfy `predicate`.
pub fn generate<F>(problem: &PellProblem, count: usize, predicate: F) -> Result<Vec<PellSolution>>
where
    F: FnMut(&PellSolution) -> bool,
{
    let stream = PellStream::new(problem)?;
    if stream.orbit_count() == 0 {
        return Err(exhausted(problem));
    }
    let out: Vec<PellSolution> = stream.take(MAX_SCAN).filter(predicate).take(count).collect();
    if out.len() < count {
        return Err(exhausted(problem));
    }
    Ok(out)
}

fn exhausted(problem: &PellProblem) -> Error {
    Error::Exhausted {
        d: problem.d.clone(),
        n: problem.n.clone(),
    }
}

/// Predicate helper: `x` divisible by `m`.
pub fn x_divisible_by(m: u32) -> impl Fn(&PellSolution) -> bool {
    move |s| (&s.x % m).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pair(s: &PellSolution) -> (BigInt, BigInt) {
        (s.x.clone(), s.y.clone())
    }

    fn brute_unit(d: i64) -> (i64, i64) {
        (1i64..)
            .find_map(|y| {
                let x2 = 1 + d * y * y;
                let x = (x2 as f64).sqrt().round() as i64;
                (x * x == x2).then_some((x, y))
            })
            .unwrap()
    }

    #[test]
    fn unit_fixtures() {
        let u = fundamental_unit(&b(10)).unwrap();
        assert_eq!((u.x, u.y), (b(19), b(6)));
        let u = fundamental_unit(&b(5)).unwrap();
        assert_eq!((u.x, u.y), (b(9), b(4)));
        assert_eq!(brute_unit(2), (3, 2));
        let u = fundamental_unit(&b(2)).unwrap();
        assert_eq!((u.x, u.y), (b(3), b(2)));
        assert_eq!(fundamental_unit(&b(49)), Err(Error::SquareD(b(49))));
    }

    #[test]
    fn unit_minimal_for_small_d() {
        for d in 2..=50i64 {
            let r = (d as f64).sqrt() as i64;
            if r * r == d {
                continue;
            }
            let u = fundamental_unit(&b(d)).unwrap();
            let (x, y) = brute_unit(d);
            assert_eq!((u.x, u.y), (b(x), b(y)), "D = {d}");
        }
    }

    #[test]
    fn class_fixtures() {
        let p = PellProblem::new(10, 6).unwrap();
        let reps: Vec<_> = solution_classes(&p, &b(10)).unwrap().iter().map(pair).collect();
        assert_eq!(reps, vec![(b(-4), b(1)), (b(4), b(1)), (b(-16), b(5)), (b(16), b(5))]);

        let p = PellProblem::new(5, 4).unwrap();
        let reps: Vec<_> = solution_classes(&p, &b(10)).unwrap().iter().map(pair).collect();
        assert!(reps.contains(&(b(3), b(1))));

        let p = PellProblem::new(2, -1).unwrap();
        let reps: Vec<_> = solution_classes(&p, &b(5)).unwrap().iter().map(pair).collect();
        assert_eq!(reps, vec![(b(1), b(1))]);
    }

    #[test]
    fn advance_fixtures() {
        let u5 = fundamental_unit(&b(5)).unwrap();
        let s = advance(&PellSolution::raw(b(3), b(1)), &u5);
        assert_eq!(pair(&s), (b(47), b(21)));
        let u10 = fundamental_unit(&b(10)).unwrap();
        let s = advance(&PellSolution::raw(b(4), b(1)), &u10);
        assert_eq!(pair(&s), (b(136), b(43)));
        assert!(PellProblem::new(10, 6).unwrap().is_solution(&s.x, &s.y));
        let s = advance(&PellSolution::raw(b(1), b(0)), &u10);
        assert_eq!(pair(&s), (b(19), b(6)));
        assert_eq!(retreat(&s, &u10), PellSolution::raw(b(1), b(0)));
    }

    #[test]
    fn generate_with_filters() {
        let p = PellProblem::new(10, 6).unwrap();
        let got: Vec<_> = generate(&p, 2, x_divisible_by(4)).unwrap().iter().map(pair).collect();
        assert_eq!(got, vec![(b(4), b(1)), (b(16), b(5))]);

        // all orbits of x^2 - 5 y^2 = 4 contribute, including (18, 8) = 2 (9, 4)
        let p = PellProblem::new(5, 4).unwrap();
        let got: Vec<_> = generate(&p, 2, x_divisible_by(3)).unwrap().iter().map(pair).collect();
        assert_eq!(got, vec![(b(3), b(1)), (b(18), b(8))]);

        // restricted to the orbit of (3, 1)
        let u5 = fundamental_unit(&b(5)).unwrap();
        let got: Vec<_> = orbit(PellSolution::raw(b(3), b(1)), u5)
            .filter(x_divisible_by(3))
            .take(2)
            .map(|s| pair(&s))
            .collect();
        assert_eq!(got, vec![(b(3), b(1)), (b(843), b(377))]);

        let p = PellProblem::new(10, 7).unwrap();
        assert!(matches!(generate(&p, 1, |_| true), Err(Error::Exhausted { .. })));
    }

    #[test]
    fn stream_ascends_and_solves() {
        let p = PellProblem::new(10, 6).unwrap();
        let sols: Vec<_> = PellStream::new(&p).unwrap().take(12).collect();
        for w in sols.windows(2) {
            assert!(w[0].y < w[1].y);
        }
        for s in &sols {
            assert!(p.is_solution(&s.x, &s.y));
            assert!((&s.x % 4u32).is_zero());
        }
    }

    #[test]
    fn problem_validation() {
        assert_eq!(PellProblem::new(9, 1), Err(Error::SquareD(b(9))));
        assert_eq!(PellProblem::new(10, 0), Err(Error::ZeroN));
        assert!(PellProblem::new(-3, 1).is_err());
        let p = PellProblem::new(10, 6).unwrap();
        assert!(PellSolution::new(&p, 4, 1).is_ok());
        assert!(PellSolution::new(&p, 4, 2).is_err());
    }

    #[test]
    fn default_bound_matches_formula() {
        let p = PellProblem::new(10, 6).unwrap();
        let u = fundamental_unit(&b(10)).unwrap();
        // sqrt(6 * 20 / 10) = 3.46 -> 4 + 1 = 5, floored at 10
        assert_eq!(default_y_bound(&p, &u), b(10));
        let p = PellProblem::new(2, 1000).unwrap();
        let u = fundamental_unit(&b(2)).unwrap();
        // sqrt(1000 * 4 / 2) = 44.7 -> 45 + 1
        assert_eq!(default_y_bound(&p, &u), b(46));
    }
}
