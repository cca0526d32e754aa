use cubesum::liouville::{liouville_by_bag_product, liouville_set, tau, Factorization};
use cubesum::pell::{fundamental_unit, PellProblem, PellStream};
use cubesum::Multiset;
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIEVE: usize = 100_000;

#[test]
fn liouville_sets_up_to_the_sieve_limit() {
    // divisor lists by sieving; tau as list length
    let mut divisors: Vec<Vec<u32>> = vec![Vec::new(); SIEVE + 1];
    for d in 1..=SIEVE {
        for m in (d..=SIEVE).step_by(d) {
            divisors[m].push(d as u32);
        }
    }
    for m in 1..=SIEVE {
        let expected = Multiset::canonicalize(divisors[m].iter().map(|&d| divisors[d as usize].len() as i64)).unwrap();
        let got = liouville_set(m as i128).unwrap();
        assert_eq!(got.elements(), &expected, "m = {m}");
        assert_eq!(tau(m as i128).unwrap(), divisors[m].len() as u64);
        if m % 97 == 0 {
            assert_eq!(liouville_by_bag_product(m as i128).unwrap(), got, "m = {m}");
        }
    }
}

#[test]
fn liouville_bag_product_for_every_m_up_to_the_limit() {
    for m in 1..=SIEVE as i128 {
        assert_eq!(
            liouville_by_bag_product(m).unwrap(),
            liouville_set(m).unwrap(),
            "m = {m}"
        );
    }
}

fn naive_divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[test]
fn liouville_sets_for_random_large_m() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let m: u64 = rng.gen_range(1..=1_000_000_000);
        let divs = naive_divisors(m);
        let taus = divs
            .iter()
            .map(|&d| divs.iter().filter(|&&e| d % e == 0).count() as i64);
        let expected = Multiset::canonicalize(taus).unwrap();
        let got = liouville_set(m as i128).unwrap();
        assert_eq!(got.elements(), &expected, "m = {m}");
        assert_eq!(liouville_by_bag_product(m as i128).unwrap(), got);
        assert_eq!(Factorization::of(m).unwrap().value(), m as u128);
    }
}

#[test]
fn tau_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 2000 {
        let a: i128 = rng.gen_range(1..=1_000_000);
        let b: i128 = rng.gen_range(1..=1_000_000);
        if a.gcd(&b) != 1 {
            continue;
        }
        assert_eq!(tau(a * b).unwrap(), tau(a).unwrap() * tau(b).unwrap());
        checked += 1;
    }
}

fn is_square(v: u64) -> bool {
    let r = (v as f64).sqrt() as u64;
    (r.saturating_sub(2)..=r + 2).any(|s| s * s == v)
}

#[test]
fn pell_units_are_minimal() {
    for d in 2u64..=200 {
        if is_square(d) {
            continue;
        }
        let unit = fundamental_unit(&BigInt::from(d)).unwrap();
        let y: u64 = (&unit.y).try_into().unwrap_or(u64::MAX);
        // unit y values grow fast; only search where brute force is cheap
        if y > 200_000 {
            continue;
        }
        let first = (1..=y).find(|&t| is_square(d * t * t + 1)).unwrap();
        assert_eq!(first, y, "D = {d}");
    }
}

#[test]
fn pell_stream_matches_brute_force() {
    for d in 2i64..=30 {
        if is_square(d as u64) {
            continue;
        }
        for n in -20i64..=20 {
            if n == 0 {
                continue;
            }
            let y_max = 2000i64;
            let mut expected = Vec::new();
            for y in 0..=y_max {
                let v = n + d * y * y;
                if v >= 0 && is_square(v as u64) {
                    let x = (v as f64).sqrt().round() as i64;
                    expected.push((BigInt::from(x), BigInt::from(y)));
                }
            }
            let problem = PellProblem::new(d, n).unwrap();
            let got: Vec<(BigInt, BigInt)> = PellStream::new(&problem)
                .unwrap()
                .take_while(|s| s.y <= BigInt::from(y_max))
                .map(|s| (s.x, s.y))
                .collect();
            assert_eq!(got, expected, "D = {d}, N = {n}");
        }
    }
}
