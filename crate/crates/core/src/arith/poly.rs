//! Dense univariate polynomials over [`FieldElement`] types and root finding.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::FieldElement;
use crate::error::ArithError;

/// Field sizes below this are searched exhaustively for roots.
pub const SCAN_THRESHOLD: u128 = 1000;

/// Polynomial with coefficients lowest degree first and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePolynomial<F: FieldElement> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: FieldElement> fmt::Debug for DensePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for c in &self.coeffs {
            list.entry(&format_args!("{c}"));
        }
        list.finish()
    }
}

impl<F: FieldElement> DensePolynomial<F> {
    /// `zero` fixes the field for the zero polynomial.
    pub fn new(mut coeffs: Vec<F>, zero: F) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        DensePolynomial { coeffs, zero: zero.zero_like() }
    }

    /// Builds from nonempty coefficients, lowest degree first.
    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        let zero = coeffs.first().expect("at least one coefficient").zero_like();
        Self::new(coeffs, zero)
    }

    pub fn zero(zero: F) -> Self {
        Self::new(Vec::new(), zero)
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c], c)
    }

    /// The polynomial `X`.
    pub fn x(zero: F) -> Self {
        Self::new(vec![zero.zero_like(), zero.one_like()], zero)
    }

    /// `X - r`.
    pub fn linear_root(r: F) -> Self {
        Self::new(vec![-r, r.one_like()], r)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn field_zero(&self) -> F {
        self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<F> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).copied().unwrap_or(self.zero)
    }

    pub fn eval(&self, x: F) -> F {
        self.coeffs.iter().rev().fold(self.zero, |acc, &c| acc * x + c)
    }

    pub fn scale(&self, c: F) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect(), self.zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(), self.zero)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect(), self.zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.zero);
        }
        let mut out = vec![self.zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Self::new(out, self.zero)
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| a * self.zero.from_u64_like(i as u64))
            .collect();
        Self::new(c, self.zero)
    }

    /// Scales to leading coefficient one; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(l.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    /// Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), ArithError> {
        let dl = divisor.leading().ok_or(ArithError::ZeroPolynomial)?;
        let dinv = dl.inv().expect("leading coefficient is nonzero");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.zero), self.clone()));
        }
        let mut quot = vec![self.zero; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] * dinv;
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i] - c * d;
            }
        }
        rem.truncate(dd);
        Ok((Self::new(quot, self.zero), Self::new(rem, self.zero)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, ArithError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Result<Self, ArithError> {
        let mut base = self.rem(m)?;
        let mut acc = Self::constant(self.zero.one_like()).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Divides out `(X - r)` as often as possible and returns the count.
    fn strip_root(&mut self, r: F) -> u32 {
        let mut m = 0;
        loop {
            if self.is_zero() || !self.eval(r).is_zero() {
                return m;
            }
            // Synthetic division by X - r.
            let n = self.coeffs.len();
            let mut q = vec![self.zero; n - 1];
            let mut carry = self.zero;
            for i in (1..n).rev() {
                carry = carry * r + self.coeffs[i];
                q[i - 1] = carry;
            }
            *self = Self::new(q, self.zero);
            m += 1;
        }
    }

    fn with_multiplicities(&self, mut roots: Vec<F>) -> Vec<(F, u32)> {
        roots.sort();
        roots.dedup();
        let mut rest = self.clone();
        roots.into_iter().map(|r| (r, rest.strip_root(r))).collect()
    }

    /// Roots by evaluating at every field element.
    pub fn roots_by_scan(&self) -> Result<Vec<(F, u32)>, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let q = self.zero.field_order();
        let roots = (0..q).map(|k| self.zero.nth_element(k)).filter(|&x| self.eval(x).is_zero()).collect();
        Ok(self.with_multiplicities(roots))
    }

    /// Roots by `gcd(f, X^q - X)` and equal-degree splitting.
    pub fn roots_by_splitting(&self) -> Result<Vec<(F, u32)>, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let q = self.zero.field_order();
        let x = Self::x(self.zero);
        let xq = x.pow_mod(q, &f)?;
        let g = f.gcd(&xq.sub(&x));
        let mut roots = Vec::new();
        split_linear_factors(&g, q, &mut 0, &mut roots);
        Ok(self.with_multiplicities(roots))
    }

    /// Roots with multiplicities, sorted in canonical order.
    pub fn roots_with_multiplicity(&self) -> Result<Vec<(F, u32)>, ArithError> {
        if self.zero.field_order() < SCAN_THRESHOLD {
            self.roots_by_scan()
        } else {
            self.roots_by_splitting()
        }
    }

    /// Distinct roots only.
    pub fn roots(&self) -> Result<Vec<F>, ArithError> {
        Ok(self.roots_with_multiplicity()?.into_iter().map(|(r, _)| r).collect())
    }
}

/// Deterministic pseudo-random index sequence for choosing split shifts.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Splits a monic squarefree product of distinct linear factors.
fn split_linear_factors<F: FieldElement>(g: &DensePolynomial<F>, q: u128, counter: &mut u64, out: &mut Vec<F>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let c = g.coeffs();
            out.push(-(c[0] * c[1].inv().expect("nonzero")));
        }
        Some(d) => {
            let zero = g.field_zero();
            let one = zero.one_like();
            loop {
                *counter += 1;
                let idx = (u128::from(mix(*counter)) << 64 | u128::from(mix(!*counter))) % q;
                let delta = zero.nth_element(idx);
                let shifted = DensePolynomial::new(vec![delta, one], zero);
                let h = shifted
                    .pow_mod((q - 1) / 2, g)
                    .expect("g is nonzero")
                    .sub(&DensePolynomial::constant(one));
                let a = g.gcd(&h);
                let da = a.degree().unwrap_or(0);
                if da > 0 && da < d {
                    let (b, _) = g.div_rem(&a).expect("a is nonzero");
                    split_linear_factors(&a, q, counter, out);
                    split_linear_factors(&b.monic(), q, counter, out);
                    return;
                }
            }
        }
    }
}
