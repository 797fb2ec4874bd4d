//! Exact scalars: arbitrary-precision rationals and prime-field residues.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("prime {0} is not admissible (need a prime p with 5 <= p < 2^31)")]
    BadPrime(u64),
    #[error("denominator of {0} vanishes modulo {1}")]
    DenominatorVanishes(String, u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// Coefficient field: the rationals, or a prime field `F_p`.
///
/// Primes are restricted to `p >= 5`; the small-characteristic cases degenerate
/// for several of the integer constants that occur in the models (2, 3, 16, 48).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// Deterministic trial-division primality test; fine for the sizes we admit.
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

impl Field {
    /// A verified prime field. Rejects p < 5 and composite p.
    pub fn prime(p: u64) -> Result<Field, ScalarError> {
        if p < 5 || p >= (1 << 31) || !is_prime(p) {
            return Err(ScalarError::BadPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { r: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::one()),
            Field::Prime(p) => Scalar::Fp { r: 1, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { r: m, p: *p }
            }
        }
    }

    /// A small "random" element: uniform residue over `F_p`, a small integer
    /// (range -20..=20) over the rationals to keep coefficient growth tame.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Rationals => self.from_i64(rng.gen_range(-20..=20)),
            Field::Prime(p) => Scalar::Fp {
                r: rng.gen_range(0..*p),
                p: *p,
            },
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{}", p),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (the `BigRational` representation invariant); prime-field
/// residues satisfy `0 <= r < p`.
///
/// Arithmetic between scalars of different fields (or different moduli) is a
/// programming error and panics; moving a rational into `F_p` is the explicit
/// [`Scalar::reduce_mod`] operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { r: u64, p: u64 },
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn from_rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { r, .. } => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { r, .. } => *r == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Q(q) => {
                if q.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Q(q.recip()))
                }
            }
            Scalar::Fp { r, p } => {
                if *r == 0 {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Fp {
                        r: powmod(*r, p - 2, *p),
                        p: *p,
                    })
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// Ring-homomorphic image of a rational in `F_p`. Prime-field inputs pass
    /// through unchanged when the modulus matches.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Fp { r, p: q } => {
                assert_eq!(*q, p, "residue of modulus {} reduced mod {}", q, p);
                Ok(Scalar::Fp { r: *r, p })
            }
            Scalar::Q(q) => {
                let pb = BigInt::from(p);
                let den = q.denom().mod_floor_u64(&pb);
                if den == 0 {
                    return Err(ScalarError::DenominatorVanishes(q.to_string(), p));
                }
                let num = q.numer().mod_floor_u64(&pb);
                Ok(Scalar::Fp {
                    r: mulmod(num, powmod(den, p - 2, p), p),
                    p,
                })
            }
        }
    }

    /// Exact text form: `num/den` (or `num` for integers) over Q, `r mod p` over F_p.
    pub fn text(&self) -> String {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { r, p } => format!("{} mod {}", r, p),
        }
    }

    /// Residue as a u64 (prime-field scalars only).
    pub fn residue(&self) -> u64 {
        match self {
            Scalar::Fp { r, .. } => *r,
            Scalar::Q(_) => panic!("residue() on a rational scalar"),
        }
    }

    /// For rationals that happen to be integers in i64 range.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    q.numer().to_i64()
                } else {
                    None
                }
            }
            Scalar::Fp { r, .. } => Some(*r as i64),
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: &BigInt) -> u64 {
        let m = self % p;
        let m = if m.is_negative() { m + p } else { m };
        m.to_u64().expect("residue fits in u64")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $qop:tt, $fpexpr:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a $qop b),
                    (Scalar::Fp { r: a, p }, Scalar::Fp { r: b, p: q }) => {
                        assert_eq!(p, q, "mixed prime-field moduli {} and {}", p, q);
                        let f: fn(u64, u64, u64) -> u64 = $fpexpr;
                        Scalar::Fp { r: f(*a, *b, *p), p: *p }
                    }
                    _ => panic!("mixed rational/prime-field arithmetic"),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, +, |a, b, p| (a + b) % p);
forward_binop!(Sub, sub, -, |a, b, p| (a + p - b) % p);
forward_binop!(Mul, mul, *, mulmod);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { r, p } => Scalar::Fp {
                r: if *r == 0 { 0 } else { p - r },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// Parse a rational from `a` or `a/b` text (used for lambda sets in configs).
pub fn parse_rational(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        Some(Scalar::from_rational(n, d))
    } else {
        let n: i64 = s.parse().ok()?;
        Some(Scalar::from_rational(n, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reduce_mod_examples() {
        // 3/2 mod 5: 2^-1 = 3, 3*3 = 9 = 4
        let x = Scalar::from_rational(3, 2);
        assert_eq!(x.reduce_mod(5).unwrap(), Scalar::Fp { r: 4, p: 5 });
        // zero maps to zero
        let z = Scalar::from_rational(0, 1);
        assert_eq!(z.reduce_mod(101).unwrap(), Scalar::Fp { r: 0, p: 101 });
        // -1/3 mod 7: 3^-1 = 5, -5 = 2
        let y = Scalar::from_rational(-1, 3);
        assert_eq!(y.reduce_mod(7).unwrap(), Scalar::Fp { r: 2, p: 7 });
        // denominator divisible by p
        let w = Scalar::from_rational(1, 10);
        assert!(matches!(
            w.reduce_mod(5),
            Err(ScalarError::DenominatorVanishes(_, 5))
        ));
    }

    #[test]
    fn prime_policy() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(3).is_err());
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(5).is_ok());
        assert!(Field::prime(101).is_ok());
        assert!(Field::prime(1007).is_err()); // 19*53
    }

    #[test]
    fn field_axioms_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [Field::Rationals, Field::prime(101).unwrap()] {
            for _ in 0..200 {
                let a = field.random(&mut rng);
                let b = field.random(&mut rng);
                let c = field.random(&mut rng);
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&a + &(-&a), field.zero());
                if !a.is_zero() {
                    assert_eq!(&a * &a.inv().unwrap(), field.one());
                }
            }
        }
    }

    #[test]
    fn reduce_commutes_with_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = Field::Rationals;
        for p in [5u64, 7, 101] {
            for _ in 0..100 {
                let a = q.random(&mut rng);
                let b = q.random(&mut rng);
                let lhs = (&a * &b).reduce_mod(p).unwrap();
                let rhs = &a.reduce_mod(p).unwrap() * &b.reduce_mod(p).unwrap();
                assert_eq!(lhs, rhs);
                let lhs = (&a + &b).reduce_mod(p).unwrap();
                let rhs = &a.reduce_mod(p).unwrap() + &b.reduce_mod(p).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn text_format() {
        assert_eq!(Scalar::from_rational(3, 2).text(), "3/2");
        assert_eq!(Scalar::from_rational(-4, 2).text(), "-2");
        assert_eq!(Scalar::Fp { r: 9, p: 11 }.text(), "9 mod 11");
        assert_eq!(parse_rational("1/2").unwrap(), Scalar::from_rational(1, 2));
        assert_eq!(parse_rational("-2").unwrap(), Scalar::from_rational(-2, 1));
    }
}
