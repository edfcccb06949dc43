//! Classical modular polynomials Φ₂ and Φ₃, resultants derived from them,
//! a small table of Hilbert class polynomials, and neighbour queries mod p.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{DensePolynomial, FieldContext, FieldElement, Fp, Fp2};
use crate::error::{ArithError, ModPolyError};

/// Coefficients `(i, j, c)` with `i >= j`; the term `c·XⁱYʲ` also stands
/// for `c·XʲYⁱ`.
const PHI2: &[(usize, usize, i128)] = &[
    (3, 0, 1),
    (2, 2, -1),
    (2, 1, 1_488),
    (2, 0, -162_000),
    (1, 1, 40_773_375),
    (1, 0, 8_748_000_000),
    (0, 0, -157_464_000_000_000),
];

const PHI3: &[(usize, usize, i128)] = &[
    (4, 0, 1),
    (3, 3, -1),
    (3, 2, 2_232),
    (3, 1, -1_069_956),
    (3, 0, 36_864_000),
    (2, 2, 2_587_918_086),
    (2, 1, 8_900_222_976_000),
    (2, 0, 452_984_832_000_000),
    (1, 1, -770_845_966_336_000_000),
    (1, 0, 1_855_425_871_872_000_000_000),
];

/// Discriminants with an embedded Hilbert class polynomial.
pub const HILBERT_DISCRIMINANTS: [i64; 15] = [-3, -4, -7, -8, -11, -12, -15, -20, -27, -32, -35, -36, -72, -99, -108];

const HILBERT: &[(i64, &[i128])] = &[
    (-3, &[0, 1]),
    (-4, &[-1_728, 1]),
    (-7, &[3_375, 1]),
    (-8, &[-8_000, 1]),
    (-11, &[32_768, 1]),
    (-12, &[-54_000, 1]),
    (-15, &[-121_287_375, 191_025, 1]),
    (-20, &[-681_472_000, -1_264_000, 1]),
    (-27, &[12_288_000, 1]),
    (-32, &[12_167_000_000, -52_250_000, 1]),
    (-35, &[-134_217_728_000, 117_964_800, 1]),
    (-36, &[-1_790_957_481_984, -153_542_016, 1]),
    (-72, &[232_381_513_792_000_000, -377_674_768_000, 1]),
    (-99, &[-56_171_326_053_810_176, 37_616_060_956_672, 1]),
    (-108, &[-1_879_994_705_688_000_000_000, 224_179_462_188_000_000, -151_013_228_706_000, 1]),
];

/// Univariate polynomial over the integers, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i128(coeffs: &[i128]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `X - r`.
    pub fn linear(r: i64) -> Self {
        Self::new(vec![BigInt::from(-r), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        Self::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| acc.mul(self))
    }

    /// Product of a list of factors.
    pub fn product(factors: &[IntegerPolynomial]) -> Self {
        factors.iter().fold(Self::constant(1), |acc, f| acc.mul(f))
    }

    /// Quotient when `divisor` divides `self` exactly over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return None;
        }
        let lead = &divisor.coeffs[dd];
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let (c, r) = rem[k + dd].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            q[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(q))
    }

    /// Reduction modulo `p`.
    pub fn reduce(&self, ctx: &FieldContext) -> DensePolynomial<Fp> {
        DensePolynomial::new(self.coeffs.iter().map(|c| ctx.fp_big(c)).collect(), ctx.zero())
    }
}

fn terms(ell: u32) -> Result<&'static [(usize, usize, i128)], ModPolyError> {
    match ell {
        2 => Ok(PHI2),
        3 => Ok(PHI3),
        _ => Err(ModPolyError::UnsupportedLevel(ell)),
    }
}

/// The full coefficient matrix `c[i][j]` of `Φ_ℓ(X, Y) = Σ c[i][j] XⁱYʲ`.
pub fn phi_coefficients(ell: u32) -> Result<Vec<Vec<i128>>, ModPolyError> {
    let t = terms(ell)?;
    let n = ell as usize + 2;
    let mut c = vec![vec![0i128; n]; n];
    for &(i, j, v) in t {
        c[i][j] = v;
        c[j][i] = v;
    }
    Ok(c)
}

/// Evaluates `Φ_ℓ(x, y)` in any field.
pub fn phi_eval<F: FieldElement>(ell: u32, x: F, y: F) -> Result<F, ModPolyError> {
    let c = phi_coefficients(ell)?;
    let zero = x.zero_like();
    let base = zero.from_u64_like(1 << 32);
    let lift = |v: i128| -> F {
        let mut m = v.unsigned_abs();
        let (mut acc, mut scale) = (zero, zero.one_like());
        while m > 0 {
            acc = acc + zero.from_u64_like((m & 0xffff_ffff) as u64) * scale;
            scale = scale * base;
            m >>= 32;
        }
        if v < 0 {
            -acc
        } else {
            acc
        }
    };
    let mut acc = zero;
    let mut xi = x.one_like();
    for row in &c {
        let mut yj = x.one_like();
        for &v in row {
            acc = acc + lift(v) * xi * yj;
            yj = yj * y;
        }
        xi = xi * x;
    }
    Ok(acc)
}

/// `Φ_ℓ(X, Y)` as a polynomial in `Y` with coefficients in `Z[X]`.
fn phi_in_y(ell: u32) -> Result<Vec<IntegerPolynomial>, ModPolyError> {
    let c = phi_coefficients(ell)?;
    let n = c.len();
    Ok((0..n).map(|j| IntegerPolynomial::from_i128(&(0..n).map(|i| c[i][j]).collect::<Vec<_>>())).collect())
}

fn d_dy(f: &[IntegerPolynomial]) -> Vec<IntegerPolynomial> {
    f.iter().enumerate().skip(1).map(|(k, c)| c.scale(&BigInt::from(k))).collect()
}

/// Resultant in `Y` of two polynomials with coefficients in `Z[X]`, via
/// fraction-free elimination on the Sylvester matrix.
fn resultant_in_y(f: &[IntegerPolynomial], g: &[IntegerPolynomial]) -> IntegerPolynomial {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut a = vec![vec![IntegerPolynomial::zero(); size]; size];
    for i in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            a[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            a[n + i][i + k] = c.clone();
        }
    }
    let mut sign = false;
    let mut prev = IntegerPolynomial::constant(1);
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..size).find(|&r| !a[r][k].is_zero()) else {
                return IntegerPolynomial::zero();
            };
            a.swap(k, r);
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = IntegerPolynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// `Φ_ℓ(X, X)`.
pub fn diagonal_poly(ell: u32) -> Result<IntegerPolynomial, ModPolyError> {
    let c = phi_coefficients(ell)?;
    let n = c.len();
    let mut out = vec![0i128; 2 * n];
    for (i, row) in c.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            out[i + j] += v;
        }
    }
    Ok(IntegerPolynomial::from_i128(&out))
}

/// `Res_Y(Φ_ℓ, ∂Φ_ℓ/∂Y)` as a polynomial in `X`.
pub fn res_poly(ell: u32) -> Result<IntegerPolynomial, ModPolyError> {
    let f = phi_in_y(ell)?;
    Ok(resultant_in_y(&f, &d_dy(&f)))
}

/// `Res_Y(∂Φ_ℓ/∂Y, ∂²Φ_ℓ/∂Y²)` as a polynomial in `X`.
pub fn res2_poly(ell: u32) -> Result<IntegerPolynomial, ModPolyError> {
    let f = phi_in_y(ell)?;
    let d1 = d_dy(&f);
    Ok(resultant_in_y(&d1, &d_dy(&d1)))
}

/// The Hilbert class polynomial `H_D`.
pub fn hilbert_poly(d: i64) -> Result<IntegerPolynomial, ModPolyError> {
    HILBERT
        .iter()
        .find(|(disc, _)| *disc == d)
        .map(|(_, c)| IntegerPolynomial::from_i128(c))
        .ok_or_else(|| ModPolyError::UnsupportedDiscriminant { requested: d, supported: HILBERT_DISCRIMINANTS.to_vec() })
}

/// `Φ_ℓ` reduced modulo a prime, ready for repeated neighbour queries.
#[derive(Clone, Debug)]
pub struct ReducedModularPolynomial {
    ell: u32,
    coeffs: Vec<Vec<Fp>>,
    nonresidue: Fp,
}

impl ReducedModularPolynomial {
    pub fn new(ell: u32, ctx: &FieldContext) -> Result<Self, ModPolyError> {
        let c = phi_coefficients(ell)?;
        let p = i128::from(ctx.p());
        let coeffs = c
            .iter()
            .map(|row| row.iter().map(|&v| ctx.fp(v.rem_euclid(p) as u64)).collect())
            .collect();
        Ok(ReducedModularPolynomial { ell, coeffs, nonresidue: ctx.nonresidue() })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// `Φ_ℓ(j, Y)` over F_p².
    pub fn specialize(&self, j: Fp2) -> DensePolynomial<Fp2> {
        let zero = Fp2::from_base(self.coeffs[0][0].zero_like(), self.nonresidue);
        let n = self.coeffs.len();
        let mut ys = vec![zero; n];
        let mut ji = zero.one_like();
        for row in &self.coeffs {
            for (k, &c) in row.iter().enumerate() {
                ys[k] = ys[k] + Fp2::from_base(c, self.nonresidue) * ji;
            }
            ji = ji * j;
        }
        DensePolynomial::new(ys, zero)
    }

    /// `Φ_ℓ(j, Y)` over F_p for `j ∈ F_p`.
    pub fn specialize_base(&self, j: Fp) -> DensePolynomial<Fp> {
        let zero = j.zero_like();
        let n = self.coeffs.len();
        let mut ys = vec![zero; n];
        let mut ji = j.one_like();
        for row in &self.coeffs {
            for (k, &c) in row.iter().enumerate() {
                ys[k] = ys[k] + c * ji;
            }
            ji = ji * j;
        }
        DensePolynomial::new(ys, zero)
    }

    /// Roots of `Φ_ℓ(j, Y)` in F_p² with multiplicity.
    pub fn neighbors(&self, j: Fp2) -> Result<Vec<(Fp2, u32)>, ArithError> {
        self.specialize(j).roots_with_multiplicity()
    }

    /// Roots of `Φ_ℓ(j, Y)` lying in F_p, with multiplicity.
    pub fn base_neighbors(&self, j: Fp) -> Result<Vec<(Fp, u32)>, ArithError> {
        self.specialize_base(j).roots_with_multiplicity()
    }
}

/// Roots of `Φ_ℓ(j, Y)` in F_p² with multiplicity, in canonical order.
pub fn neighbors(j: Fp2, ell: u32, ctx: &FieldContext) -> Result<Vec<(Fp2, u32)>, crate::Error> {
    Ok(ReducedModularPolynomial::new(ell, ctx)?.neighbors(j)?)
}
