mod common;

use common::q;
use jl_core::padic::{hensel_lift, is_square_in_qp, is_unit_square, padic_norm, PAdicNumber, Valuation};
use jl_core::poly::MonicPoly;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn norm_examples() {
    let seven = PAdicNumber::from_integer(7, 7, 20).unwrap();
    assert_eq!(padic_norm(&seven), q(1, 7));
    let x = PAdicNumber::from_rational(&q(4, 21), 7, 20).unwrap();
    assert_eq!(padic_norm(&x), q(7, 1));
    assert_eq!(padic_norm(&PAdicNumber::zero(5, 10)), q(0, 1));
}

#[test]
fn hensel_example() {
    let poly = MonicPoly::from_ints(&[-2, 0, 1]).unwrap();
    let r = hensel_lift(&poly, &BigInt::from(3), 7, 2).unwrap();
    assert_eq!(r.residue_mod(2).unwrap(), BigInt::from(10));
}

#[test]
fn hensel_rejects_bad_roots() {
    let poly = MonicPoly::from_ints(&[-2, 0, 1]).unwrap();
    assert_eq!(hensel_lift(&poly, &BigInt::from(2), 7, 3).unwrap_err().kind(), "PreconditionError");
    let double = MonicPoly::from_ints(&[0, 0, 1]).unwrap();
    assert_eq!(hensel_lift(&double, &BigInt::from(0), 7, 3).unwrap_err().kind(), "SimpleRootViolated");
}

#[test]
fn unit_square_examples() {
    let two = PAdicNumber::from_integer(2, 7, 10).unwrap();
    assert!(is_unit_square(&two).unwrap());
    let three = PAdicNumber::from_integer(3, 7, 10).unwrap();
    assert!(!is_unit_square(&three).unwrap());
    let seven = PAdicNumber::from_integer(7, 7, 10).unwrap();
    assert_eq!(is_unit_square(&seven).unwrap_err().kind(), "NotAUnit");
    assert!(is_unit_square(&PAdicNumber::from_integer(17, 2, 10).unwrap()).unwrap());
    assert!(!is_unit_square(&PAdicNumber::from_integer(5, 2, 10).unwrap()).unwrap());
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn nonzero_rational() -> impl Strategy<Value = (i64, i64)> {
    (-5000i64..5000, 1i64..5000).prop_filter("nonzero", |(n, _)| *n != 0)
}

proptest! {
    #[test]
    fn norm_is_multiplicative((a, b) in nonzero_rational(), (c, d) in nonzero_rational(), pi in 0usize..6) {
        let p = PRIMES[pi];
        let x = PAdicNumber::from_rational(&q(a, b), p, 30).unwrap();
        let y = PAdicNumber::from_rational(&q(c, d), p, 30).unwrap();
        prop_assert_eq!(padic_norm(&x.mul(&y).unwrap()), padic_norm(&x) * padic_norm(&y));
    }

    #[test]
    fn ultrametric_inequality((a, b) in nonzero_rational(), (c, d) in nonzero_rational(), pi in 0usize..6) {
        let p = PRIMES[pi];
        let x = PAdicNumber::from_rational(&q(a, b), p, 30).unwrap();
        let y = PAdicNumber::from_rational(&q(c, d), p, 30).unwrap();
        let s = x.add(&y).unwrap();
        let bound = padic_norm(&x).max(padic_norm(&y));
        prop_assert!(padic_norm(&s) <= bound);
        if padic_norm(&x) != padic_norm(&y) {
            prop_assert_eq!(padic_norm(&s), bound);
        }
    }

    #[test]
    fn valuation_matches_direct_count((a, b) in nonzero_rational(), pi in 0usize..6) {
        let p = PRIMES[pi] as i64;
        let count = |mut n: i64| { let mut k = 0; while n % p == 0 { n /= p; k += 1; } k };
        let x = PAdicNumber::from_rational(&q(a, b), p as u64, 20).unwrap();
        prop_assert_eq!(x.valuation(), Valuation::Finite(count(a) - count(b)));
    }

    #[test]
    fn inverse_is_inverse((a, b) in nonzero_rational(), pi in 0usize..6) {
        let p = PRIMES[pi];
        let x = PAdicNumber::from_rational(&q(a, b), p, 25).unwrap();
        prop_assert!(x.mul(&x.inverse().unwrap()).unwrap().is_one());
    }

    #[test]
    fn hensel_lift_is_a_root(r0 in 1i64..13, c in -30i64..30, pi in 1usize..6, n in 1u32..12) {
        // P = (X - r0)(X - c) + p·k has r0 as a simple root mod p when c ≢ r0.
        let p = PRIMES[pi] as i64;
        prop_assume!((r0 - c).rem_euclid(p) != 0);
        let poly = MonicPoly::from_ints(&[r0 * c + p, -(r0 + c), 1]).unwrap();
        let root = hensel_lift(&poly, &BigInt::from(r0), p as u64, n).unwrap();
        let r = root.residue_mod(n).unwrap();
        let m = BigInt::from(p).pow(n);
        let value = &r * &r - BigInt::from(r0 + c) * &r + BigInt::from(r0 * c + p);
        prop_assert_eq!(((value % &m) + &m) % &m, BigInt::from(0));
        prop_assert_eq!(((&r - r0) % p + p) % p, BigInt::from(0));
    }

    #[test]
    fn unit_squares_match_residue_squares(u in 1i64..10_000, pi in 1usize..6) {
        let p = PRIMES[pi] as i64;
        prop_assume!(u % p != 0);
        let brute = (1..p).any(|z| (z * z - u).rem_euclid(p) == 0);
        let x = PAdicNumber::from_integer(u, p as u64, 10).unwrap();
        prop_assert_eq!(is_unit_square(&x).unwrap(), brute);
    }

    #[test]
    fn squares_are_squares((a, b) in nonzero_rational(), pi in 0usize..6) {
        let p = PRIMES[pi];
        prop_assert!(is_square_in_qp(&(q(a, b) * q(a, b)), p).unwrap());
        prop_assert!(!is_square_in_qp(&(q(a, b) * q(a, b) * q(p as i64, 1)), p).unwrap());
    }
}
