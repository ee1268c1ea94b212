//! Exact scalars: arbitrary-precision rationals, or `𝔽_p` with `p < 2^61`.
//!
//! A [`Field`] value pins the ground field of a computation; mixing two
//! different moduli is a hard error rather than a silent wrap.  `𝔽_p`
//! elements are kept reduced in `[0, p)`; multiplication goes through
//! `u128`, so any modulus below `2^61` is safe (the suite only ever uses
//! small primes and one fixed auxiliary word prime).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Ground field marker: `ℚ` or `𝔽_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => p,
        }
    }

    pub fn from_characteristic(p: u64) -> crate::Result<Field> {
        if p == 0 {
            return Ok(Field::Q);
        }
        if p >= 1 << 61 || !is_prime(p) {
            return Err(crate::Error::BadCharacteristic(p.to_string()));
        }
        Ok(Field::Fp(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp { p, v: 0 },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::Fp(p) => Scalar::Fp { p, v: 1 },
        }
    }

    /// The image of the integer `k`.
    pub fn from_i64(self, k: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(k.into())),
            Field::Fp(p) => Scalar::Fp { p, v: k.rem_euclid(p as i64) as u64 },
        }
    }

    /// `a/b` in the field (`b` must be invertible).
    pub fn ratio(self, a: i64, b: i64) -> Scalar {
        let x = self.from_i64(a);
        let y = self.from_i64(b);
        x.div(&y)
    }
}

/// An exact scalar.  All binary operations panic on mixed moduli — that is
/// always a programming error, never data-dependent.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) => {
                check_moduli(*p, *q);
                Scalar::Fp { p: *p, v: add_mod(*v, *w, *p) }
            }
            _ => panic!("mixed Q/Fp arithmetic"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: if *v == 0 { 0 } else { p - v } },
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) => {
                check_moduli(*p, *q);
                Scalar::Fp { p: *p, v: mul_mod(*v, *w, *p) }
            }
            _ => panic!("mixed Q/Fp arithmetic"),
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => {
                assert!(!a.is_zero(), "division by zero");
                Scalar::Q(a.recip())
            }
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: inv_mod(*v, *p) },
        }
    }

    /// Exact rational value, if over `ℚ`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            _ => None,
        }
    }

    /// Integer value if the scalar is an integer (over `ℚ`) in `i64` range.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(r) if r.is_integer() => {
                let n = r.numer();
                i64::try_from(n.clone()).ok()
            }
            _ => None,
        }
    }

    /// Render `a/b`, omitting `/1`; `𝔽_p` values as plain residues.
    pub fn display(&self) -> String {
        match self {
            Scalar::Q(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => v.to_string(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

fn check_moduli(p: u64, q: u64) {
    assert_eq!(p, q, "mixed moduli {p} vs {q}");
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b; // p < 2^61, no overflow
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "division by zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Reduce a rational into `𝔽_p` (denominator must be prime to `p`).
pub fn rational_mod_p(r: &BigRational, p: u64) -> u64 {
    let num = bigint_mod_p(r.numer(), p);
    let den = bigint_mod_p(r.denom(), p);
    mul_mod(num, inv_mod(den, p), p)
}

pub fn bigint_mod_p(x: &BigInt, p: u64) -> u64 {
    let m = (x % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
    u64::try_from(m.abs().magnitude().clone()).unwrap()
}
