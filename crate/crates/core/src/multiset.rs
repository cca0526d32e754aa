//! Canonical integer multisets and the cube-sum / squared-sum identity.
//!
//! A [`Multiset`] is a nondecreasing list of nonzero integers. A [`CsSet`] is a
//! multiset that has been checked to satisfy `sum(a^3) == sum(a)^2` and to be
//! admissible (no `k` together with `-k`). All arithmetic is exact.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Nondecreasing list of nonzero integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    entries: Vec<BigInt>,
}

impl Multiset {
    /// Sorts `raw` into canonical order. Fails on a zero entry.
    pub fn canonicalize<I, T>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut entries: Vec<BigInt> = raw.into_iter().map(Into::into).collect();
        if entries.iter().any(Zero::is_zero) {
            return Err(Error::ZeroEntry);
        }
        entries.sort();
        Ok(Multiset { entries })
    }

    /// Builds a multiset from an already sorted, zero-free vector.
    pub(crate) fn from_sorted_unchecked(entries: Vec<BigInt>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(entries.iter().all(|e| !e.is_zero()));
        Multiset { entries }
    }

    /// `<1, 2, ..., n>`.
    pub fn range(n: usize) -> Self {
        Multiset::from_sorted_unchecked((1..=n).map(BigInt::from).collect())
    }

    pub fn empty() -> Self {
        Multiset::default()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, value: &BigInt) -> bool {
        self.entries.binary_search(value).is_ok()
    }

    pub fn count_of(&self, value: &BigInt) -> usize {
        self.entries.iter().filter(|e| *e == value).count()
    }

    /// True when all entries are pairwise different.
    pub fn is_distinct(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] != w[1])
    }

    /// Largest absolute value, or zero for the empty set.
    pub fn max_abs(&self) -> BigInt {
        self.entries.iter().map(Signed::abs).max().unwrap_or_else(BigInt::zero)
    }

    /// Smallest absolute value, or zero for the empty set.
    pub fn min_abs(&self) -> BigInt {
        self.entries.iter().map(Signed::abs).min().unwrap_or_else(BigInt::zero)
    }

    /// Gcd of all entries (zero for the empty set).
    pub fn gcd(&self) -> BigInt {
        self.entries.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e))
    }

    /// The first `k` such that both `k` and `-k` occur, if any.
    pub fn opposite_pair(&self) -> Option<BigInt> {
        let positives: HashSet<&BigInt> = self.entries.iter().filter(|e| e.is_positive()).collect();
        self.entries
            .iter()
            .filter(|e| e.is_negative())
            .map(|e| -e)
            .find(|k| positives.contains(k))
    }

    /// Zero-free and without an opposite pair.
    pub fn is_admissible(&self) -> bool {
        self.opposite_pair().is_none()
    }

    pub fn power_sums(&self) -> PowerSums {
        let mut sum = BigInt::zero();
        let mut cube_sum = BigInt::zero();
        for e in &self.entries {
            sum += e;
            cube_sum += e * e * e;
        }
        PowerSums { sum, cube_sum }
    }

    /// Checks the identity and admissibility.
    pub fn verify_cs(&self) -> Result<CsSet> {
        CsSet::new(self.clone())
    }

    /// Multiplies every entry by `t`.
    pub fn scale(&self, t: &BigInt) -> Result<Multiset> {
        if t.is_zero() {
            return Err(Error::ZeroScale);
        }
        let mut entries: Vec<BigInt> = self.entries.iter().map(|e| e * t).collect();
        if t.is_negative() {
            entries.reverse();
        }
        Ok(Multiset::from_sorted_unchecked(entries))
    }

    /// Multiset union; multiplicities add.
    pub fn union(&self, other: &Multiset) -> Multiset {
        let mut entries = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                entries.push(a[i].clone());
                i += 1;
            } else {
                entries.push(b[j].clone());
                j += 1;
            }
        }
        entries.extend_from_slice(&a[i..]);
        entries.extend_from_slice(&b[j..]);
        Multiset::from_sorted_unchecked(entries)
    }

    /// Inserts one copy of a nonzero `value`.
    pub fn with(&self, value: BigInt) -> Result<Multiset> {
        if value.is_zero() {
            return Err(Error::ZeroEntry);
        }
        let mut entries = self.entries.clone();
        let at = entries.partition_point(|e| *e <= value);
        entries.insert(at, value);
        Ok(Multiset::from_sorted_unchecked(entries))
    }

    /// Removes one copy of `value`; `None` when absent.
    pub fn without(&self, value: &BigInt) -> Option<Multiset> {
        let at = self.entries.binary_search(value).ok()?;
        let mut entries = self.entries.clone();
        entries.remove(at);
        Some(Multiset::from_sorted_unchecked(entries))
    }

    /// All `|a| * |b|` pairwise products.
    pub fn bag_product(&self, other: &Multiset) -> Multiset {
        let mut entries = Vec::with_capacity(self.len() * other.len());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a * b);
            }
        }
        entries.sort();
        Multiset::from_sorted_unchecked(entries)
    }

    /// Scales by `t = v^2 / u` so the result satisfies the identity.
    pub fn scale_to_cs(&self) -> Result<CsSet> {
        let PowerSums { sum, cube_sum } = self.power_sums();
        if cube_sum.is_zero() {
            return Err(Error::ZeroCubeSum);
        }
        let sum_squared = &sum * &sum;
        let (t, rem) = sum_squared.div_rem(&cube_sum);
        if !rem.is_zero() {
            return Err(Error::NotDivisible { cube_sum, sum_squared });
        }
        self.scale(&t)?.verify_cs()
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

/// Parses `[-8,-7,1,5,9]` or the bare list `-8,-7,1,5,9`.
impl FromStr for Multiset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
            (Some(_), Some(_)) => &trimmed[1..trimmed.len() - 1],
            (None, None) => trimmed,
            _ => return Err(Error::Parse(format!("unbalanced brackets in {trimmed:?}"))),
        };
        if inner.trim().is_empty() {
            return Ok(Multiset::empty());
        }
        let values = inner
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.strip_prefix('+')
                    .unwrap_or(tok)
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("not an integer: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Multiset::canonicalize(values)
    }
}

/// Sum and cube sum of a multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSums {
    pub sum: BigInt,
    pub cube_sum: BigInt,
}

impl PowerSums {
    pub fn is_cs(&self) -> bool {
        self.cube_sum == &self.sum * &self.sum
    }
}

/// A verified, admissible solution of `sum(a^3) == sum(a)^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CsSet {
    elements: Multiset,
    sum: BigInt,
    cube_sum: BigInt,
}

impl CsSet {
    pub fn new(elements: Multiset) -> Result<Self> {
        let PowerSums { sum, cube_sum } = elements.power_sums();
        let sum_squared = &sum * &sum;
        if cube_sum != sum_squared {
            return Err(Error::NotCs { cube_sum, sum_squared });
        }
        if let Some(k) = elements.opposite_pair() {
            return Err(Error::Inadmissible(k));
        }
        Ok(CsSet {
            elements,
            sum,
            cube_sum,
        })
    }

    pub fn elements(&self) -> &Multiset {
        &self.elements
    }

    pub fn into_elements(self) -> Multiset {
        self.elements
    }

    pub fn entries(&self) -> &[BigInt] {
        self.elements.entries()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sum(&self) -> &BigInt {
        &self.sum
    }

    pub fn cube_sum(&self) -> &BigInt {
        &self.cube_sum
    }

    pub fn power_sums(&self) -> PowerSums {
        PowerSums {
            sum: self.sum.clone(),
            cube_sum: self.cube_sum.clone(),
        }
    }

    pub fn is_zero_sum(&self) -> bool {
        self.sum.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.entries().iter().all(Signed::is_positive)
    }
}

impl fmt::Display for CsSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.elements.fmt(f)
    }
}

/// Multiplicative identity for [`Multiset::bag_product`].
pub fn unit_set() -> Multiset {
    Multiset::from_sorted_unchecked(vec![BigInt::one()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(v: &[i64]) -> Multiset {
        Multiset::canonicalize(v.iter().copied()).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn canonicalize_sorts_and_rejects_zero() {
        assert_eq!(ms(&[9, -8, 1, 5, -7]).to_string(), "[-8,-7,1,5,9]");
        assert_eq!(ms(&[2, 2]).to_string(), "[2,2]");
        assert_eq!(Multiset::canonicalize([0i64, 1]), Err(Error::ZeroEntry));
    }

    #[test]
    fn admissibility() {
        assert!(ms(&[-8, -7, 1, 5, 9]).is_admissible());
        assert!(!ms(&[-2, 1, 2]).is_admissible());
        assert!(ms(&[2, 2]).is_admissible());
    }

    #[test]
    fn power_sum_fixtures() {
        let p = ms(&[1, 2, 3]).power_sums();
        assert_eq!((p.sum, p.cube_sum), (big(6), big(36)));
        let p = ms(&[-8, -7, 1, 5, 9]).power_sums();
        assert_eq!((p.sum, p.cube_sum), (big(0), big(0)));
        let p = ms(&[3, 3, 3, 3, 4, 6, 8]).power_sums();
        assert_eq!((p.sum, p.cube_sum), (big(30), big(900)));
    }

    #[test]
    fn verify_reports_distinct_failures() {
        let s = ms(&[1, 2, 2, 4]).verify_cs().unwrap();
        assert_eq!((s.sum(), s.cube_sum()), (&big(9), &big(81)));
        assert_eq!(
            ms(&[1, 2, 4]).verify_cs(),
            Err(Error::NotCs {
                cube_sum: big(73),
                sum_squared: big(49)
            })
        );
        assert_eq!(ms(&[-2, 1, 2]).verify_cs(), Err(Error::Inadmissible(big(2))));
    }

    #[test]
    fn scaling() {
        assert_eq!(
            ms(&[-8, -7, 1, 5, 9]).scale(&big(2)).unwrap(),
            ms(&[-16, -14, 2, 10, 18])
        );
        assert_eq!(ms(&[1, 2]).scale(&big(1)).unwrap(), ms(&[1, 2]));
        assert_eq!(ms(&[1, 5]).scale(&big(-1)).unwrap(), ms(&[-5, -1]));
        assert_eq!(ms(&[1, 5]).scale(&big(0)), Err(Error::ZeroScale));
    }

    #[test]
    fn unions() {
        assert_eq!(ms(&[1, 2]).union(&ms(&[2, 2])), ms(&[1, 2, 2, 2]));
        let u = ms(&[-8, -7, 1, 5, 9]).union(&ms(&[1]));
        assert_eq!(u, ms(&[-8, -7, 1, 1, 5, 9]));
        let s = u.verify_cs().unwrap();
        assert_eq!((s.sum(), s.cube_sum()), (&big(1), &big(1)));
        assert_eq!(Multiset::empty().union(&ms(&[3, 3, 3])), ms(&[3, 3, 3]));
    }

    #[test]
    fn bag_products() {
        assert_eq!(
            ms(&[1, 2, 3, 4]).bag_product(&ms(&[1, 2])),
            ms(&[1, 2, 2, 3, 4, 4, 6, 8])
        );
        let m = ms(&[-3, 5, 5, 7]);
        assert_eq!(unit_set().bag_product(&m), m);
        let p = ms(&[2, 2]).bag_product(&ms(&[2, 2]));
        assert_eq!(p, ms(&[4, 4, 4, 4]));
        p.verify_cs().unwrap();
    }

    #[test]
    fn scale_to_cs_cases() {
        let s = ms(&[1, 2, 2, 4]);
        assert_eq!(s.scale_to_cs().unwrap().elements(), &s);
        let chowla = ms(&[706, 425, -754]);
        let p = chowla.power_sums();
        assert_eq!((p.sum, p.cube_sum), (big(377), big(377)));
        assert_eq!(
            chowla.scale_to_cs().unwrap().elements(),
            &ms(&[-284258, 160225, 266162])
        );
        assert!(matches!(ms(&[1, 2, 4]).scale_to_cs(), Err(Error::NotDivisible { .. })));
        assert_eq!(ms(&[-8, -7, 1, 5, 9]).scale_to_cs(), Err(Error::ZeroCubeSum));
        // v = 0 with u != 0 gives t = 0
        assert_eq!(ms(&[-2, -1, 3]).scale_to_cs(), Err(Error::ZeroScale));
    }

    #[test]
    fn literal_parsing() {
        assert_eq!("[-8,-7,1,5,9]".parse::<Multiset>().unwrap(), ms(&[-8, -7, 1, 5, 9]));
        assert_eq!(" 9, -8 ,1,5,-7 ".parse::<Multiset>().unwrap(), ms(&[-8, -7, 1, 5, 9]));
        assert_eq!("[]".parse::<Multiset>().unwrap(), Multiset::empty());
        assert!("[1,2".parse::<Multiset>().is_err());
        assert!("[1,x]".parse::<Multiset>().is_err());
        assert_eq!("[0,1]".parse::<Multiset>(), Err(Error::ZeroEntry));
    }

    #[test]
    fn with_and_without() {
        let m = ms(&[1, 3]);
        assert_eq!(m.with(big(2)).unwrap(), ms(&[1, 2, 3]));
        assert_eq!(m.with(big(0)), Err(Error::ZeroEntry));
        assert_eq!(m.without(&big(3)).unwrap(), ms(&[1]));
        assert!(m.without(&big(2)).is_none());
    }
}
