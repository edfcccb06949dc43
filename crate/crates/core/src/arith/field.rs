//! Prime fields F_p, their quadratic extensions F_p², and a shared context.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::prime::{add_mod, is_prime, mul_mod, pow_mod, sub_mod};
use crate::error::ArithError;

/// Operations shared by [`Fp`] and [`Fp2`], enough for generic polynomial code.
pub trait FieldElement:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// The additive identity of this element's field.
    fn zero_like(&self) -> Self;
    /// The multiplicative identity of this element's field.
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Number of elements of the field.
    fn field_order(&self) -> u128;
    /// The `k`-th element in canonical order, `0 <= k < field_order()`.
    fn nth_element(&self, k: u128) -> Self;
    /// Image of an integer in this field.
    fn from_u64_like(&self, v: u64) -> Self;

    fn pow(&self, mut e: u128) -> Self {
        let mut base = *self;
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

/// Element of F_p.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    /// Reduces `value` modulo `modulus`. The modulus is trusted; use
    /// [`FieldContext::new`] to validate it.
    #[inline]
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp { value: value % modulus, modulus }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Centered representative in `(-p/2, p/2]`.
    pub fn centered(self) -> i64 {
        if self.value > self.modulus / 2 {
            -((self.modulus - self.value) as i64)
        } else {
            self.value as i64
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { value: add_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { value: sub_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { value: mul_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp { value: sub_mod(0, self.value, self.modulus), modulus: self.modulus }
    }
}

impl FieldElement for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1, modulus: self.modulus }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let p = i128::from(self.modulus);
        let e = i128::from(self.value).extended_gcd(&p);
        let x = e.x.mod_floor(&p);
        Some(Fp { value: x as u64, modulus: self.modulus })
    }
    fn field_order(&self) -> u128 {
        u128::from(self.modulus)
    }
    fn nth_element(&self, k: u128) -> Self {
        Fp { value: (k % u128::from(self.modulus)) as u64, modulus: self.modulus }
    }
    fn from_u64_like(&self, v: u64) -> Self {
        Fp::new(v, self.modulus)
    }
    fn pow(&self, e: u128) -> Self {
        Fp { value: pow_mod(self.value, e, self.modulus), modulus: self.modulus }
    }
}

/// Element `a + b·√n` of F_p², where `n` is the context nonresidue.
///
/// Ordered lexicographically by `(a, b)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp2 {
    a: Fp,
    b: Fp,
    nonresidue: Fp,
}

impl Fp2 {
    /// Builds `a + b·√n`. All three must share a modulus and `n` must be a
    /// nonresidue; [`FieldContext::fp2`] is the checked entry point.
    pub fn new(a: Fp, b: Fp, nonresidue: Fp) -> Self {
        debug_assert_eq!(a.modulus, b.modulus);
        debug_assert_eq!(a.modulus, nonresidue.modulus);
        Fp2 { a, b, nonresidue }
    }

    pub fn from_base(a: Fp, nonresidue: Fp) -> Self {
        Fp2 { a, b: a.zero_like(), nonresidue }
    }

    #[inline]
    pub fn a(self) -> Fp {
        self.a
    }

    #[inline]
    pub fn b(self) -> Fp {
        self.b
    }

    #[inline]
    pub fn nonresidue(self) -> Fp {
        self.nonresidue
    }

    /// True when the element lies in F_p.
    #[inline]
    pub fn is_base(self) -> bool {
        self.b.is_zero()
    }

    /// The base-field value if `b = 0`.
    pub fn to_base(self) -> Option<Fp> {
        self.is_base().then_some(self.a)
    }

    /// The p-power Frobenius `a + b√n ↦ a − b√n`.
    pub fn frobenius(self) -> Self {
        Fp2 { a: self.a, b: -self.b, nonresidue: self.nonresidue }
    }

    pub fn norm(self) -> Fp {
        self.a * self.a - self.nonresidue * self.b * self.b
    }
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*s (mod {}, s^2={})", self.a.value, self.b.value, self.a.modulus, self.nonresidue.value)
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_base() {
            write!(f, "{}", self.a.value)
        } else {
            write!(f, "{}+{}*s", self.a.value, self.b.value)
        }
    }
}

impl Add for Fp2 {
    type Output = Fp2;
    #[inline]
    fn add(self, rhs: Fp2) -> Fp2 {
        Fp2 { a: self.a + rhs.a, b: self.b + rhs.b, nonresidue: self.nonresidue }
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    #[inline]
    fn sub(self, rhs: Fp2) -> Fp2 {
        Fp2 { a: self.a - rhs.a, b: self.b - rhs.b, nonresidue: self.nonresidue }
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    #[inline]
    fn mul(self, rhs: Fp2) -> Fp2 {
        let a = self.a * rhs.a + self.nonresidue * self.b * rhs.b;
        let b = self.a * rhs.b + self.b * rhs.a;
        Fp2 { a, b, nonresidue: self.nonresidue }
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    #[inline]
    fn neg(self) -> Fp2 {
        Fp2 { a: -self.a, b: -self.b, nonresidue: self.nonresidue }
    }
}

impl FieldElement for Fp2 {
    fn zero_like(&self) -> Self {
        Fp2 { a: self.a.zero_like(), b: self.a.zero_like(), nonresidue: self.nonresidue }
    }
    fn one_like(&self) -> Self {
        Fp2 { a: self.a.one_like(), b: self.a.zero_like(), nonresidue: self.nonresidue }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let ninv = self.norm().inv()?;
        Some(Fp2 { a: self.a * ninv, b: -self.b * ninv, nonresidue: self.nonresidue })
    }
    fn field_order(&self) -> u128 {
        let p = u128::from(self.a.modulus);
        p * p
    }
    fn nth_element(&self, k: u128) -> Self {
        let p = u128::from(self.a.modulus);
        let k = k % (p * p);
        Fp2 {
            a: self.a.nth_element(k % p),
            b: self.a.nth_element(k / p),
            nonresidue: self.nonresidue,
        }
    }
    fn from_u64_like(&self, v: u64) -> Self {
        Fp2::from_base(self.a.from_u64_like(v), self.nonresidue)
    }
}

/// Threshold below which the quadratic-character table is precomputed.
const CHARACTER_TABLE_LIMIT: u64 = 1 << 22;

/// Immutable description of F_p and F_p² for one prime.
#[derive(Clone, Debug)]
pub struct FieldContext {
    p: u64,
    nonresidue: u64,
    squares: Option<Vec<u64>>,
}

impl FieldContext {
    /// Validates `p` and fixes the smallest quadratic non-residue.
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p < 5 {
            return Err(ArithError::ModulusTooSmall(p));
        }
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        let half = u128::from((p - 1) / 2);
        let nonresidue = (2..p)
            .find(|&a| pow_mod(a, half, p) == p - 1)
            .expect("every odd prime has a non-residue");
        let squares = (p < CHARACTER_TABLE_LIMIT).then(|| {
            let mut bits = vec![0u64; (p as usize).div_ceil(64)];
            for x in 0..=(p / 2) {
                let s = mul_mod(x, x, p) as usize;
                bits[s / 64] |= 1 << (s % 64);
            }
            bits
        });
        Ok(FieldContext { p, nonresidue, squares })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The fixed non-residue `n`, so that F_p² = F_p(√n).
    #[inline]
    pub fn nonresidue(&self) -> Fp {
        Fp::new(self.nonresidue, self.p)
    }

    #[inline]
    pub fn fp(&self, v: u64) -> Fp {
        Fp::new(v, self.p)
    }

    /// Image of a signed integer.
    pub fn fp_signed(&self, v: i64) -> Fp {
        let r = i128::from(v).rem_euclid(i128::from(self.p));
        Fp::new(r as u64, self.p)
    }

    /// Image of an arbitrary-precision integer.
    pub fn fp_big(&self, v: &BigInt) -> Fp {
        let r = v.mod_floor(&BigInt::from(self.p));
        Fp::new(r.to_u64().expect("reduced value fits"), self.p)
    }

    pub fn zero(&self) -> Fp {
        self.fp(0)
    }

    pub fn one(&self) -> Fp {
        self.fp(1)
    }

    pub fn fp2(&self, a: u64, b: u64) -> Fp2 {
        Fp2::new(self.fp(a), self.fp(b), self.nonresidue())
    }

    pub fn lift(&self, a: Fp) -> Fp2 {
        Fp2::from_base(a, self.nonresidue())
    }

    /// The square root of `n` in F_p².
    pub fn sqrt_nonresidue(&self) -> Fp2 {
        self.fp2(0, 1)
    }

    /// Legendre symbol as -1, 0 or 1.
    pub fn legendre(&self, a: Fp) -> i8 {
        self.legendre_u64(a.value)
    }

    #[inline]
    pub(crate) fn legendre_u64(&self, a: u64) -> i8 {
        if a == 0 {
            return 0;
        }
        match &self.squares {
            Some(bits) => {
                let a = a as usize;
                if bits[a / 64] >> (a % 64) & 1 == 1 {
                    1
                } else {
                    -1
                }
            }
            None => {
                if pow_mod(a, u128::from((self.p - 1) / 2), self.p) == 1 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_square(&self, a: Fp) -> bool {
        self.legendre(a) >= 0
    }

    /// Tonelli-Shanks square root; returns the smaller of the two roots.
    pub fn sqrt(&self, a: Fp) -> Option<Fp> {
        let p = self.p;
        if a.value == 0 {
            return Some(self.zero());
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = self.nonresidue;
        let mut m = s;
        let mut c = pow_mod(z, u128::from(q), p);
        let mut t = pow_mod(a.value, u128::from(q), p);
        let mut r = pow_mod(a.value, u128::from(q.div_ceil(2)), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = mul_mod(b, b, p);
            }
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        Some(self.fp(r.min(p - r)))
    }

    /// A square root in F_p² of an F_p element (always exists).
    pub fn sqrt_in_fp2(&self, a: Fp) -> Fp2 {
        match self.sqrt(a) {
            Some(r) => self.lift(r),
            None => {
                let ninv = self.nonresidue().inv().expect("nonzero");
                let r = self.sqrt(a * ninv).expect("a/n is a square");
                Fp2::new(self.zero(), r, self.nonresidue())
            }
        }
    }
}
