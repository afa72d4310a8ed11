//! Exact coefficient arithmetic: arbitrary-precision rationals and prime
//! fields GF(p) with p < 2^31.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// The coefficient field of a ring: the rationals, or GF(p) for prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => u64::from(*p),
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            FieldSpec::Rational => FieldElem::Rat(BigRational::zero()),
            FieldSpec::Prime(p) => FieldElem::Fp { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            FieldSpec::Rational => FieldElem::Rat(BigRational::one()),
            FieldSpec::Prime(p) => FieldElem::Fp { value: 1, modulus: *p },
        }
    }

    /// Map an integer into the field.
    pub fn from_int(&self, n: &BigInt) -> FieldElem {
        match self {
            FieldSpec::Rational => FieldElem::Rat(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(*p);
                let mut r = n % &m;
                if r.is_negative() {
                    r += &m;
                }
                let digits = r.to_u32_digits().1;
                let value = digits.first().copied().unwrap_or(0);
                FieldElem::Fp { value, modulus: *p }
            }
        }
    }

    /// Map a fraction `num/den` into the field. In GF(p) this fails when p
    /// divides the denominator.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<FieldElem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Rational => Ok(FieldElem::Rat(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::Prime(_) => {
                let d = self.from_int(den);
                let n = self.from_int(num);
                Ok(n.mul(&d.inverse()?))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (num-rational maintains this); prime-field values live in
/// [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(BigRational),
    Fp { value: u32, modulus: u32 },
}

impl FieldElem {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElem::Rat(_) => FieldSpec::Rational,
            FieldElem::Fp { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_one(),
            FieldElem::Fp { value, .. } => *value == 1,
        }
    }

    /// True for rationals < 0. Prime-field elements have no sign; they
    /// report false so printing stays canonical in [0, p).
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_negative(),
            FieldElem::Fp { .. } => false,
        }
    }

    fn fp_pair(a: &FieldElem, b: &FieldElem) -> (u64, u64, u64) {
        match (a, b) {
            (FieldElem::Fp { value: x, modulus: p }, FieldElem::Fp { value: y, modulus: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                (u64::from(*x), u64::from(*y), u64::from(*p))
            }
            _ => unreachable!(),
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            (FieldElem::Fp { .. }, FieldElem::Fp { .. }) => {
                let (x, y, p) = Self::fp_pair(self, other);
                FieldElem::Fp { value: ((x + y) % p) as u32, modulus: p as u32 }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            (FieldElem::Fp { .. }, FieldElem::Fp { .. }) => {
                let (x, y, p) = Self::fp_pair(self, other);
                FieldElem::Fp { value: ((x * y) % p) as u32, modulus: p as u32 }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::Fp { value, modulus } => {
                let v = if *value == 0 { 0 } else { modulus - value };
                FieldElem::Fp { value: v, modulus: *modulus }
            }
        }
    }

    pub fn inverse(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldElem::Rat(a) => Ok(FieldElem::Rat(a.recip())),
            FieldElem::Fp { value, modulus } => {
                let inv = mod_inverse(u64::from(*value), u64::from(*modulus));
                Ok(FieldElem::Fp { value: inv as u32, modulus: *modulus })
            }
        }
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn from_i64(spec: FieldSpec, n: i64) -> FieldElem {
        spec.from_int(&BigInt::from(n))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime and a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "inverse of non-unit");
    (t.rem_euclid(p as i128)) as u64
}

/// Deterministic primality test, adequate for moduli below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> FieldElem {
        FieldElem::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn rational_canonical_form() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(-1, -2), rat(1, 2));
        assert_eq!(rat(3, -6), rat(-1, 2));
    }

    #[test]
    fn prime_field_ops() {
        let f = FieldSpec::Prime(7);
        let a = f.from_int(&BigInt::from(10)); // 3
        let b = f.from_int(&BigInt::from(-1)); // 6
        assert_eq!(a.add(&b), f.from_int(&BigInt::from(2)));
        assert_eq!(a.mul(&b), f.from_int(&BigInt::from(4)));
        assert!(a.mul(&a.inverse().unwrap()).is_one());
    }

    #[test]
    fn fraction_into_prime_field() {
        let f = FieldSpec::Prime(5);
        // 1/2 = 3 mod 5
        let half = f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half, FieldElem::Fp { value: 3, modulus: 5 });
        // characteristic divides the denominator
        assert!(f.from_fraction(&BigInt::from(1), &BigInt::from(10)).is_err());
    }

    #[test]
    fn zero_inverse_rejected() {
        assert_eq!(FieldSpec::Rational.zero().inverse(), Err(Error::DivisionByZero));
        assert_eq!(FieldSpec::Prime(3).zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(31) && is_prime(2147483647));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(2147483646));
    }

    fn arb_elem(p: Option<u32>) -> impl Strategy<Value = FieldElem> {
        (any::<i32>(), 1..1000i32).prop_map(move |(n, d)| match p {
            None => rat(n.into(), d.into()),
            Some(p) => FieldSpec::Prime(p).from_int(&BigInt::from(n)),
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        // field axioms over QQ: associativity, commutativity, distributivity,
        // inverses
        #[test]
        fn field_axioms_rational((a, b, c) in (arb_elem(None), arb_elem(None), arb_elem(None))) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.add(&a.neg()).is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn field_axioms_gf31((a, b, c) in (arb_elem(Some(31)), arb_elem(Some(31)), arb_elem(Some(31)))) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inverse().unwrap()).is_one());
            }
        }
    }
}
