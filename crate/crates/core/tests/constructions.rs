use std::collections::BTreeSet;

use cubesum::extend::{extend_two, two_extension_reps, TwoExtensionRep};
use cubesum::families::{
    chowla_cs, chowla_triples, combine_sp, distinct_cs_n, frolov_member, frolov_union, frolov_zero_sum, prop7_members,
    pyth_to_sp, pyth_tuple,
};
use cubesum::{Error, Multiset};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn three_term_cube_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10_000 {
        let [a, b, c]: [BigInt; 3] =
            std::array::from_fn(|_| BigInt::from(rng.gen_range(-1_000_000_000i64..=1_000_000_000)));
        let s = &a + &b + &c;
        let lhs = &s * &s * &s - (&a * &a * &a + &b * &b * &b + &c * &c * &c);
        let rhs = (&a + &b) * (&b + &c) * (&c + &a) * 3u32;
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn two_extension_reps_match_a_box_search() {
    for a in -500i64..=500 {
        let mut expected = BTreeSet::new();
        for x in -100i64..=100 {
            for y in x..=100 {
                if x == 0 || y == 0 || x + y == 0 {
                    continue;
                }
                // (a + x + y)^2 = a^2 + x^3 + y^3
                if (a + x + y).pow(2) == a * a + x.pow(3) + y.pow(3) {
                    expected.insert((x, y));
                }
            }
        }
        let got: BTreeSet<(i64, i64)> = two_extension_reps(&BigInt::from(a))
            .into_iter()
            .map(|r| {
                let (x, y): (i64, i64) = ((&r.x).try_into().unwrap(), (&r.y).try_into().unwrap());
                (x.min(y), x.max(y))
            })
            .filter(|&(x, y)| x >= -100 && y <= 100 && x + y != 0)
            .collect();
        assert_eq!(got, expected, "a = {a}");
    }
}

#[test]
fn extend_two_fixture() {
    let s = Multiset::canonicalize([3, 3, 3, 3, 4, 6, 8])
        .unwrap()
        .verify_cs()
        .unwrap();
    let rep = TwoExtensionRep::from_entries(BigInt::from(5), BigInt::from(-4));
    assert_eq!(extend_two(&s, &rep).unwrap().to_string(), "[3,3,3,3,5,6,8]");
}

#[test]
fn random_frolov_translations() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut built = 0;
    let mut rejected = 0;
    while built + rejected < 1000 {
        let a = BigInt::from(rng.gen_range(1i64..=60));
        let k = rng.gen_range(1usize..=4);
        let legs: Vec<BigInt> = (0..k).map(|_| BigInt::from(rng.gen_range(1i64..=30))).collect();
        let Ok(t1) = pyth_tuple(&a, &legs, true) else { continue };
        let sp = if rng.gen_bool(0.5) {
            pyth_to_sp(&t1)
        } else {
            let a2 = BigInt::from(rng.gen_range(1i64..=60));
            let legs2: Vec<BigInt> = (0..k).map(|_| BigInt::from(rng.gen_range(1i64..=30))).collect();
            let Ok(t2) = pyth_tuple(&a2, &legs2, true) else {
                continue;
            };
            combine_sp(&t1, &t2).unwrap()
        };
        let c = BigInt::from(rng.gen_range(-200i64..=200));
        // the raw union always has vanishing sum and cube sum
        let raw = frolov_union(&sp, &c);
        assert!(raw.iter().sum::<BigInt>().is_zero());
        assert!(raw.iter().map(|v| v * v * v).sum::<BigInt>().is_zero());
        match frolov_zero_sum(&sp, &c) {
            Ok(set) => {
                assert!(set.sum().is_zero() && set.cube_sum().is_zero());
                assert_eq!(set.len(), raw.iter().filter(|v| !v.is_zero()).count());
                built += 1;
            }
            Err(Error::Inadmissible(_)) => rejected += 1,
            Err(Error::ZeroEntry) => unreachable!("zeros are dropped"),
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    assert!(built > 0);
}

#[test]
fn frolov_members_for_every_supported_size() {
    for n in (7..=48).filter(|&n| n != 9) {
        let m = frolov_member(n, 0).unwrap_or_else(|e| panic!("n = {n}: {e}"));
        assert_eq!(m.set.len(), n);
        assert!(m.set.sum().is_zero() && m.set.cube_sum().is_zero());
    }
    for n in [1, 2, 3, 4, 5, 6, 9] {
        assert_eq!(frolov_member(n, 0).unwrap_err(), Error::UnsupportedSize(n));
    }
}

#[test]
fn size_five_family() {
    let members = prop7_members(12).unwrap();
    for m in &members {
        assert_eq!(&m.t * &m.t - &m.r * &m.r * 10u32, BigInt::from(6));
        assert_eq!(&m.s * &m.s * 8u32 - &m.r * &m.r * 5u32, BigInt::from(3));
        assert_eq!(m.set.len(), 5);
        assert!(m.set.sum().is_zero() && m.set.cube_sum().is_zero());
        assert!(m.set.elements().gcd().is_one());
    }
    assert!(members.windows(2).all(|w| w[0].r < w[1].r));
}

#[test]
fn chowla_constructions() {
    for t in chowla_triples(6).unwrap() {
        let m = t.multiset().unwrap();
        assert_eq!(m.power_sums().sum, t.psi);
        assert_eq!(m.power_sums().cube_sum, t.psi);
        let q = t.q();
        assert_eq!(&t.x * &t.y * 9u32, &q * &q * 19u32 - 1u32);
    }
    for n in [3, 4] {
        for s in chowla_cs(4, n).unwrap() {
            assert_eq!(s.len(), n);
            assert!(s.elements().is_distinct());
        }
    }
}

#[test]
fn distinct_solutions_for_every_size() {
    for n in 5..=40 {
        for index in 0..3 {
            let s = distinct_cs_n(n, index).unwrap();
            assert_eq!(s.len(), n, "n = {n}");
            assert!(s.elements().is_distinct(), "n = {n}");
            assert!(s.is_positive() || s.entries()[0] < BigInt::zero());
        }
    }
}

#[test]
fn size_five_family_beyond_64_bits() {
    let members = prop7_members(24).unwrap();
    let limit = BigInt::from(i64::MAX);
    let first_wide = members.iter().position(|m| m.set.elements().max_abs() > limit);
    assert_eq!(first_wide, Some(23));
    let wide = &members[23].set;
    wide.elements().verify_cs().unwrap();
    assert!(wide.sum().is_zero() && wide.cube_sum().is_zero());
    // cubes leave 64 bits much earlier
    let cube_wide = members.iter().position(|m| {
        let e = m.set.elements().max_abs();
        &e * &e * &e > limit
    });
    assert_eq!(cube_wide, Some(7));
}
