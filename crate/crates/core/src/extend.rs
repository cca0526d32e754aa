//! Extending a solution by one or two entries.
//!
//! A solution with sum `a` extends by one entry `z` exactly when
//! `a = z (z - 1) / 2`, and by two entries exactly when
//! `2 (2a + 1) = u^2 + v^2 + (u + v)^2`, with appended `x = u + 1` and
//! `y = u + v + 1`. When the negation of an appended entry is already
//! present, removing it has the same effect on both power sums.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiset::{CsSet, Multiset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionAction {
    Append,
    DeleteNegation,
}

/// One way of moving from a solution to another by a single entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionOption {
    pub z: BigInt,
    pub action: ExtensionAction,
    pub result: Multiset,
    pub admissible: bool,
}

impl ExtensionOption {
    /// The result as a verified set, when admissible.
    pub fn verified(&self) -> Result<CsSet> {
        self.result.verify_cs()
    }
}

/// Integer roots of `z^2 - z - 2a = 0`, larger root first; `z = 0` omitted.
pub fn single_extension_roots(a: &BigInt) -> Vec<BigInt> {
    let disc: BigInt = BigInt::one() + a * 8u32;
    if disc.is_negative() {
        return Vec::new();
    }
    let root = disc.sqrt();
    if &root * &root != disc {
        return Vec::new();
    }
    // disc is odd, so its root is odd and both (1 +- root) / 2 are integers
    let hi: BigInt = (BigInt::one() + &root) / 2u32;
    let lo: BigInt = (BigInt::one() - &root) / 2u32;
    let mut roots = Vec::with_capacity(2);
    for z in [hi, lo] {
        if !z.is_zero() && !roots.contains(&z) {
            roots.push(z);
        }
    }
    roots
}

/// Every single-entry extension of `s`.
pub fn extend_one(s: &CsSet) -> Result<Vec<ExtensionOption>> {
    let roots = single_extension_roots(s.sum());
    if roots.is_empty() {
        return Err(Error::NoExtension(s.sum().clone()));
    }
    let mut options = Vec::new();
    for z in roots {
        let appended = s.elements().with(z.clone())?;
        debug_assert!(appended.power_sums().is_cs());
        options.push(ExtensionOption {
            z: z.clone(),
            action: ExtensionAction::Append,
            admissible: appended.is_admissible(),
            result: appended,
        });
        if let Some(reduced) = s.elements().without(&-&z) {
            options.push(ExtensionOption {
                z,
                action: ExtensionAction::DeleteNegation,
                admissible: reduced.is_admissible(),
                result: reduced,
            });
        }
    }
    Ok(options)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootChoice {
    Positive,
    Negative,
}

/// Applies the chosen root `steps` times, deleting `-z` instead of
/// appending `z` whenever `-z` is present. Returns every intermediate set.
pub fn chain(s: &CsSet, steps: usize, choice: RootChoice) -> Result<Vec<CsSet>> {
    let mut out = Vec::with_capacity(steps);
    let mut cur = s.clone();
    for _ in 0..steps {
        let z = single_extension_roots(cur.sum())
            .into_iter()
            .find(|z| match choice {
                RootChoice::Positive => z.is_positive(),
                RootChoice::Negative => z.is_negative(),
            })
            .ok_or_else(|| Error::NoExtension(cur.sum().clone()))?;
        let next = match cur.elements().without(&-&z) {
            Some(reduced) => reduced,
            None => cur.elements().with(z)?,
        };
        cur = next.verify_cs()?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// A representation `u^2 + u v + v^2 = 2a + 1` and the entries it appends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoExtensionRep {
    #[serde(serialize_with = "ser_big")]
    pub u: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub v: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub x: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub y: BigInt,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl TwoExtensionRep {
    pub fn new(u: BigInt, v: BigInt) -> Self {
        let x = &u + 1u32;
        let y = &u + &v + 1u32;
        TwoExtensionRep { u, v, x, y }
    }

    /// Rep appending `x` and `y`.
    pub fn from_entries(x: BigInt, y: BigInt) -> Self {
        let u = &x - 1u32;
        let v = &y - &x;
        TwoExtensionRep { u, v, x, y }
    }

    pub fn is_valid_for(&self, a: &BigInt) -> bool {
        let (u, v) = (&self.u, &self.v);
        u * u + u * v + v * v == a * 2u32 + 1u32
    }

    fn unordered(&self) -> (BigInt, BigInt) {
        if self.x <= self.y {
            (self.x.clone(), self.y.clone())
        } else {
            (self.y.clone(), self.x.clone())
        }
    }
}

/// All reps for sum `a`, one per unordered appended pair `{x, y}`; reps
/// appending a zero are dropped. Sorted by the unordered pair.
pub fn two_extension_reps(a: &BigInt) -> Vec<TwoExtensionRep> {
    let k: BigInt = a * 2u32 + 1u32;
    if !k.is_positive() {
        return Vec::new();
    }
    // v^2 + u v + (u^2 - k) = 0 has real roots iff 3 u^2 <= 4 k
    let limit = (&k * 4u32 / 3u32).sqrt();
    let mut reps: Vec<TwoExtensionRep> = Vec::new();
    let mut u = -&limit;
    while u <= limit {
        let disc: BigInt = &k * 4u32 - &u * &u * 3u32;
        if !disc.is_negative() {
            let root = disc.sqrt();
            if &root * &root == disc {
                for r in [root.clone(), -&root] {
                    let twice_v = -&u + r;
                    if (&twice_v % 2u32).is_zero() {
                        let rep = TwoExtensionRep::new(u.clone(), twice_v / 2u32);
                        if rep.x.is_zero() || rep.y.is_zero() {
                            continue;
                        }
                        let key = rep.unordered();
                        if !reps.iter().any(|r| r.unordered() == key) {
                            reps.push(rep);
                        }
                    }
                }
            }
        }
        u += 1u32;
    }
    reps.sort_by_key(TwoExtensionRep::unordered);
    reps
}

/// Appends the rep's `x` and `y`; an entry whose negation is present
/// removes that negation instead.
pub fn extend_two(s: &CsSet, rep: &TwoExtensionRep) -> Result<CsSet> {
    if !rep.is_valid_for(s.sum()) {
        return Err(Error::InvalidRep {
            u: rep.u.clone(),
            v: rep.v.clone(),
            sum: s.sum().clone(),
        });
    }
    let mut cur = s.elements().clone();
    for e in [&rep.x, &rep.y] {
        cur = match cur.without(&-e) {
            Some(reduced) => reduced,
            None => cur.with(e.clone())?,
        };
    }
    cur.verify_cs()
}

/// `(y - x)^2 + (x + 1)^2 + (y + 1)^2`, which equals `2 (2b + 1)` for the
/// sum `b` after a two-entry extension.
pub fn continuation_form(rep: &TwoExtensionRep) -> BigInt {
    let (x, y) = (&rep.x, &rep.y);
    let d = y - x;
    let xp = x + 1u32;
    let yp = y + 1u32;
    &d * &d + &xp * &xp + &yp * &yp
}
