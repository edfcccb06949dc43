//! Short Weierstrass curves over F_p, their twists, rational ℓ-kernels and
//! Vélu codomains.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{DensePolynomial, FieldContext, FieldElement, Fp, Fp2};
use crate::error::CurveError;

/// The model `y² = x³ + a4·x + a6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeierstrassCurve {
    a4: Fp,
    a6: Fp,
}

/// The label `(j, c4, c6)` of a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantTriple {
    pub j: Fp,
    pub c4: Fp,
    pub c6: Fp,
}

/// A rational kernel of an ℓ-isogeny given by its kernel polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelDescriptor {
    pub kernel_polynomial: DensePolynomial<Fp>,
    pub degree: u32,
}

impl KernelDescriptor {
    /// The x-coordinate `x0` of the kernel polynomial `x - x0`.
    pub fn x0(&self) -> Fp {
        -self.kernel_polynomial.coeff(0)
    }
}

impl WeierstrassCurve {
    pub fn new(a4: Fp, a6: Fp) -> Result<Self, CurveError> {
        if a4.modulus() != a6.modulus() {
            return Err(CurveError::FieldMismatch);
        }
        let e = WeierstrassCurve { a4, a6 };
        if e.discriminant_core().is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(e)
    }

    pub fn a4(&self) -> Fp {
        self.a4
    }

    pub fn a6(&self) -> Fp {
        self.a6
    }

    pub fn p(&self) -> u64 {
        self.a4.modulus()
    }

    /// `4·a4³ + 27·a6²`.
    fn discriminant_core(&self) -> Fp {
        let four = self.a4.from_u64_like(4);
        let t27 = self.a4.from_u64_like(27);
        four * self.a4 * self.a4 * self.a4 + t27 * self.a6 * self.a6
    }

    /// `Δ = −16(4·a4³ + 27·a6²)`.
    pub fn discriminant(&self) -> Fp {
        -(self.a4.from_u64_like(16) * self.discriminant_core())
    }

    pub fn invariants(&self) -> InvariantTriple {
        let k = |v: u64| self.a4.from_u64_like(v);
        let a3 = k(4) * self.a4 * self.a4 * self.a4;
        let j = k(1728) * a3 * self.discriminant_core().inv().expect("nonsingular");
        InvariantTriple { j, c4: -(k(48) * self.a4), c6: -(k(864) * self.a6) }
    }

    pub fn j_invariant(&self) -> Fp {
        self.invariants().j
    }

    /// Twist by `d`: `(a4·d², a6·d³)`.
    pub fn twist(&self, d: Fp) -> Self {
        let d2 = d * d;
        WeierstrassCurve { a4: self.a4 * d2, a6: self.a6 * d2 * d }
    }

    /// Quadratic twist by the context non-residue.
    pub fn quadratic_twist(&self, ctx: &FieldContext) -> Self {
        self.twist(ctx.nonresidue())
    }

    /// `x³ + a4·x + a6` as a polynomial.
    pub fn cubic(&self) -> DensePolynomial<Fp> {
        let z = self.a4.zero_like();
        DensePolynomial::new(vec![self.a6, self.a4, z, z.one_like()], z)
    }

    /// The ℓ-division polynomial in x for ℓ ∈ {2, 3}.
    pub fn division_polynomial(&self, ell: u32) -> Result<DensePolynomial<Fp>, CurveError> {
        let k = |v: u64| self.a4.from_u64_like(v);
        match ell {
            2 => Ok(self.cubic()),
            3 => {
                let z = k(0);
                Ok(DensePolynomial::new(
                    vec![-(self.a4 * self.a4), k(12) * self.a6, k(6) * self.a4, z, k(3)],
                    z,
                ))
            }
            _ => Err(CurveError::UnsupportedDegree(ell)),
        }
    }

    /// `Σ_x (x³+a4x+a6 | p)`, so that `#E(F_p) = p + 1 + Σ`.
    pub fn character_sum(&self, ctx: &FieldContext) -> i64 {
        let p = ctx.p();
        let a4 = self.a4.value();
        let mut f = self.a6.value();
        let mut d1 = (1 + a4) % p;
        let mut d2 = 6 % p;
        let mut sum = 0i64;
        for _ in 0..p {
            sum += i64::from(ctx.legendre_u64(f));
            f = add(f, d1, p);
            d1 = add(d1, d2, p);
            d2 = add(d2, 6 % p, p);
        }
        sum
    }

    /// `#E(F_p)` by exhaustive counting.
    pub fn point_count(&self, ctx: &FieldContext) -> u64 {
        (ctx.p() as i64 + 1 + self.character_sum(ctx)) as u64
    }

    /// Trace of Frobenius is zero.
    pub fn is_supersingular(&self, ctx: &FieldContext) -> bool {
        self.character_sum(ctx) == 0
    }

    /// Full rational 2-torsion.
    pub fn has_full_two_torsion(&self) -> bool {
        self.cubic().roots().expect("nonzero").len() == 3
    }

    /// One descriptor per F_p-root of the ℓ-division polynomial.
    pub fn rational_ell_kernels(&self, ell: u32) -> Result<Vec<KernelDescriptor>, CurveError> {
        let psi = self.division_polynomial(ell)?;
        Ok(psi
            .roots()
            .expect("division polynomial is nonzero")
            .into_iter()
            .map(|x0| KernelDescriptor { kernel_polynomial: DensePolynomial::linear_root(x0), degree: ell })
            .collect())
    }

    /// Codomain of the isogeny with kernel `k`, via Vélu's formulas.
    pub fn velu_isogeny(&self, k: &KernelDescriptor) -> Result<WeierstrassCurve, CurveError> {
        let psi = self.division_polynomial(k.degree)?;
        if k.kernel_polynomial.degree() != Some(1) || !psi.rem(&k.kernel_polynomial).expect("nonzero").is_zero() {
            return Err(CurveError::NotAKernel(k.degree));
        }
        let c = |v: u64| self.a4.from_u64_like(v);
        let x0 = k.x0();
        let gx = c(3) * x0 * x0 + self.a4;
        let (v, w) = if k.degree == 2 {
            (gx, x0 * gx)
        } else {
            let v = c(2) * gx;
            let u = c(4) * self.cubic().eval(x0);
            (v, u + x0 * v)
        };
        WeierstrassCurve::new(self.a4 - c(5) * v, self.a6 - c(7) * w)
    }

    /// Whether some `u ∈ F_p*` carries this model to `other`.
    pub fn fp_isomorphic(&self, other: &WeierstrassCurve) -> bool {
        if self.p() != other.p() {
            return false;
        }
        let p = self.p();
        let (s, o) = (self.invariants(), other.invariants());
        if s.j != o.j {
            return false;
        }
        if s.c4.is_zero() {
            // j = 0: c6'/c6 must be a sixth power.
            let r = o.c6 * s.c6.inv().expect("nonsingular");
            return is_power_residue(r, 6, p);
        }
        if s.c6.is_zero() {
            // j = 1728: c4'/c4 must be a fourth power.
            let r = o.c4 * s.c4.inv().expect("nonsingular");
            return is_power_residue(r, 4, p);
        }
        // Generic j: u² = (c6'/c6)/(c4'/c4) must be a square.
        let u2 = o.c6 * s.c4 * (s.c6 * o.c4).inv().expect("nonzero");
        crate::arith::pow_mod(u2.value(), u128::from((p - 1) / 2), p) == 1
    }

    /// A scaling `λ ∈ F_p²` with `other = (λ²·a4, λ³·a6)`, preferring `λ ∈ F_p`.
    ///
    /// The map `x ↦ x/λ` sends x-coordinates on `other` to x-coordinates on
    /// `self`. Returns `None` when the j-invariants differ.
    pub fn x_scaling(&self, other: &WeierstrassCurve, ctx: &FieldContext) -> Option<Fp2> {
        if self.j_invariant() != other.j_invariant() {
            return None;
        }
        if self.a4.is_zero() {
            let r = other.a6 * self.a6.inv()?;
            let z = r.zero_like();
            let cubic = DensePolynomial::new(vec![-r, z, z, z.one_like()], z);
            if let Some(&l) = cubic.roots().ok()?.first() {
                return Some(ctx.lift(l));
            }
            let r2 = ctx.lift(r);
            let z2 = r2.zero_like();
            let cubic2 = DensePolynomial::new(vec![-r2, z2, z2, z2.one_like()], z2);
            return cubic2.roots().ok()?.first().copied();
        }
        if self.a6.is_zero() {
            return Some(ctx.sqrt_in_fp2(other.a4 * self.a4.inv()?));
        }
        let l = other.a6 * self.a4 * (self.a6 * other.a4).inv()?;
        Some(ctx.lift(l))
    }
}

#[inline]
fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn is_power_residue(r: Fp, k: u64, p: u64) -> bool {
    let g = num_integer::gcd(k, p - 1);
    crate::arith::pow_mod(r.value(), u128::from((p - 1) / g), p) == 1
}

/// A canonical model with invariant `j` and a second, non-isomorphic model
/// with the same invariant.
///
/// For `j = 1728` and `p ≡ 3 (mod 4)` the pair is `x³ + x` and `x³ − x`,
/// since the twist by `n²` is isomorphic to `x³ + x` there.
pub fn twists_from_j(ctx: &FieldContext, j: Fp) -> (WeierstrassCurve, WeierstrassCurve) {
    let n = ctx.nonresidue();
    let zero = ctx.zero();
    let one = ctx.one();
    let mk = |a4, a6| WeierstrassCurve::new(a4, a6).expect("canonical models are nonsingular");
    if j.is_zero() {
        return (mk(zero, one), mk(zero, n * n * n));
    }
    if j == ctx.fp(1728) {
        let second = if ctx.p() % 4 == 1 { n * n } else { -one };
        return (mk(one, zero), mk(second, zero));
    }
    let a = ctx.fp(27) * j * (ctx.fp(4) * (ctx.fp(1728) - j)).inv().expect("j != 1728");
    let e = mk(a, a);
    let t = e.twist(n);
    (e, t)
}

/// All `j ∈ F_p` that are invariants of supersingular curves, ascending.
pub fn supersingular_j_list(ctx: &FieldContext) -> Vec<Fp> {
    (0..ctx.p())
        .map(|v| ctx.fp(v))
        .filter(|&j| twists_from_j(ctx, j).0.is_supersingular(ctx))
        .collect()
}

/// The smallest supersingular `j ∈ F_p`.
pub fn smallest_supersingular_j(ctx: &FieldContext) -> Fp {
    (0..ctx.p())
        .map(|v| ctx.fp(v))
        .find(|&j| twists_from_j(ctx, j).0.is_supersingular(ctx))
        .expect("every p >= 5 has a supersingular j in F_p")
}

/// `⌊p/12⌋ + ε_p`, the number of supersingular j-invariants in F_p².
pub fn supersingular_count_formula(p: u64) -> u64 {
    p / 12
        + match p % 12 {
            1 => 0,
            5 | 7 => 1,
            11 => 2,
            _ => 0,
        }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    fn curve(ctx: &FieldContext, a4: i64, a6: i64) -> WeierstrassCurve {
        WeierstrassCurve::new(ctx.fp_signed(a4), ctx.fp_signed(a6)).unwrap()
    }

    #[test]
    fn invariants_examples() {
        let k7 = FieldContext::new(7).unwrap();
        assert_eq!(curve(&k7, 1, 0).j_invariant(), k7.fp(6));
        let k5 = FieldContext::new(5).unwrap();
        assert_eq!(curve(&k5, 0, 1).j_invariant(), k5.zero());
        let k29 = FieldContext::new(29).unwrap();
        assert_eq!(curve(&k29, -4320, 96768).j_invariant(), k29.fp(25));
    }

    #[test]
    fn singular_rejected() {
        let k = FieldContext::new(7).unwrap();
        assert_eq!(WeierstrassCurve::new(k.zero(), k.zero()), Err(CurveError::Singular));
        // x³ − 3x + 2 = (x − 1)²(x + 2)
        assert_eq!(WeierstrassCurve::new(k.fp_signed(-3), k.fp(2)), Err(CurveError::Singular));
    }

    #[test]
    fn twist_pairs_are_distinct_classes() {
        let k5 = FieldContext::new(5).unwrap();
        let (e, t) = twists_from_j(&k5, k5.zero());
        assert!(!e.fp_isomorphic(&t));
        let k7 = FieldContext::new(7).unwrap();
        let (e, t) = twists_from_j(&k7, k7.fp(1728));
        assert!(!e.fp_isomorphic(&t));
        // The non-residue twist of x³ + x is isomorphic to it when p ≡ 3 mod 4.
        assert!(e.fp_isomorphic(&e.quadratic_twist(&k7)));
        let k13 = FieldContext::new(13).unwrap();
        let (e, t) = twists_from_j(&k13, k13.fp(3));
        assert_eq!(e.j_invariant(), k13.fp(3));
        assert_eq!(t.j_invariant(), k13.fp(3));
        assert!(!e.fp_isomorphic(&t));
    }

    #[test]
    fn twist_pairs_for_all_j() {
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
            let k = FieldContext::new(p).unwrap();
            for v in 0..p {
                let j = k.fp(v);
                let (e, t) = twists_from_j(&k, j);
                assert_eq!(e.j_invariant(), j);
                assert_eq!(t.j_invariant(), j);
                assert!(!e.fp_isomorphic(&t), "p={p} j={v}");
            }
        }
    }

    #[test]
    fn fp_isomorphic_examples() {
        let k5 = FieldContext::new(5).unwrap();
        assert!(!curve(&k5, 0, 1).fp_isomorphic(&curve(&k5, 0, 2)));
        let k29 = FieldContext::new(29).unwrap();
        assert!(curve(&k29, 1, 0).fp_isomorphic(&curve(&k29, 16, 0)));
        let e = curve(&k29, 3, 7);
        assert!(e.fp_isomorphic(&e));
        assert!(e.fp_isomorphic(&e.twist(k29.fp(5))));
    }

    #[test]
    fn supersingularity_examples() {
        let k7 = FieldContext::new(7).unwrap();
        assert!(curve(&k7, 1, 0).is_supersingular(&k7));
        let k13 = FieldContext::new(13).unwrap();
        assert!(!curve(&k13, 0, 1).is_supersingular(&k13));
        let k5 = FieldContext::new(5).unwrap();
        assert_eq!(curve(&k5, 0, 1).point_count(&k5), 6);
        assert!(curve(&k5, 0, 1).is_supersingular(&k5));
    }

    #[test]
    fn point_count_matches_naive() {
        let k = FieldContext::new(31).unwrap();
        for a4 in 0..31 {
            for a6 in [0u64, 1, 5, 30] {
                let Ok(e) = WeierstrassCurve::new(k.fp(a4), k.fp(a6)) else { continue };
                let naive = 1 + (0..31u64)
                    .flat_map(|x| (0..31u64).map(move |y| (x, y)))
                    .filter(|&(x, y)| e.cubic().eval(k.fp(x)) == k.fp(y) * k.fp(y))
                    .count() as u64;
                assert_eq!(e.point_count(&k), naive);
            }
        }
    }

    #[test]
    fn supersingular_lists() {
        let k29 = FieldContext::new(29).unwrap();
        assert_eq!(supersingular_j_list(&k29), vec![k29.zero(), k29.fp(2), k29.fp(25)]);
        let k7 = FieldContext::new(7).unwrap();
        assert_eq!(supersingular_j_list(&k7), vec![k7.fp(6)]);
        let k71 = FieldContext::new(71).unwrap();
        assert_eq!(supersingular_j_list(&k71).len(), 7);
    }

    #[test]
    fn special_j_membership() {
        for p in (5..600u64).filter(|&p| is_prime(p)) {
            let k = FieldContext::new(p).unwrap();
            let list = supersingular_j_list(&k);
            assert_eq!(list.contains(&k.fp(1728)), p % 4 == 3, "p={p}");
            assert_eq!(list.contains(&k.zero()), p % 3 == 2, "p={p}");
            assert_eq!(list.first().copied(), Some(smallest_supersingular_j(&k)));
        }
    }

    #[test]
    fn twist_invariance_of_supersingularity() {
        let k = FieldContext::new(103).unwrap();
        for v in 0..103 {
            let (e, t) = twists_from_j(&k, k.fp(v));
            assert_eq!(e.is_supersingular(&k), t.is_supersingular(&k));
            assert_eq!(e.is_supersingular(&k), e.quadratic_twist(&k).is_supersingular(&k));
        }
    }

    #[test]
    fn kernel_examples() {
        let k7 = FieldContext::new(7).unwrap();
        assert_eq!(curve(&k7, 0, 1).rational_ell_kernels(2).unwrap().len(), 3);
        let k5 = FieldContext::new(5).unwrap();
        let e0 = curve(&k5, 0, 1);
        let ks = e0.rational_ell_kernels(3).unwrap();
        let kx = ks.iter().find(|k| k.x0().is_zero()).expect("kernel x");
        let image = e0.velu_isogeny(kx).unwrap();
        assert_eq!(image.j_invariant(), k5.zero());
        assert!(!image.fp_isomorphic(&e0));
        let k11 = FieldContext::new(11).unwrap();
        let irreducible = curve(&k11, 1, 4);
        assert!(irreducible.cubic().roots().unwrap().is_empty());
        assert!(irreducible.rational_ell_kernels(2).unwrap().is_empty());
    }

    #[test]
    fn non_kernel_rejected() {
        let k = FieldContext::new(11).unwrap();
        let e = curve(&k, 0, 1);
        let bogus = KernelDescriptor { kernel_polynomial: DensePolynomial::linear_root(k.fp(5)), degree: 2 };
        assert_eq!(e.velu_isogeny(&bogus), Err(CurveError::NotAKernel(2)));
    }

    #[test]
    fn dual_returns_to_source_class() {
        for p in [29u64, 71, 101, 1009] {
            let k = FieldContext::new(p).unwrap();
            for j in supersingular_j_list(&k) {
                let (e, _) = twists_from_j(&k, j);
                for ell in [2, 3] {
                    for ker in e.rational_ell_kernels(ell).unwrap() {
                        let img = e.velu_isogeny(&ker).unwrap();
                        let back = img
                            .rational_ell_kernels(ell)
                            .unwrap()
                            .iter()
                            .map(|kk| img.velu_isogeny(kk).unwrap())
                            .any(|c| c.fp_isomorphic(&e));
                        assert!(back, "p={p} ell={ell}");
                    }
                }
            }
        }
    }

    #[test]
    fn only_trivial_automorphisms() {
        for p in (5..400u64).filter(|&p| is_prime(p)) {
            let k = FieldContext::new(p).unwrap();
            for j in supersingular_j_list(&k) {
                let t = twists_from_j(&k, j).0.invariants();
                for u in 2..p - 1 {
                    let u = k.fp(u);
                    let u2 = u * u;
                    let fixes = u2 * u2 * t.c4 == t.c4 && u2 * u2 * u2 * t.c6 == t.c6;
                    assert!(!fixes, "p={p} j={j}");
                }
            }
        }
    }

    #[test]
    fn count_formula_matches_small_cases() {
        assert_eq!(supersingular_count_formula(7), 1);
        assert_eq!(supersingular_count_formula(29), 3);
        assert_eq!(supersingular_count_formula(71), 7);
        assert_eq!(supersingular_count_formula(11), 2);
    }

    #[test]
    fn x_scaling_relates_models() {
        for p in [23u64, 29, 59, 71] {
            let k = FieldContext::new(p).unwrap();
            for j in supersingular_j_list(&k) {
                let (e, t) = twists_from_j(&k, j);
                let l = e.x_scaling(&t, &k).unwrap();
                let lift = |x: Fp| k.lift(x);
                assert_eq!(l * l * lift(e.a4()), lift(t.a4()));
                assert_eq!(l * l * l * lift(e.a6()), lift(t.a6()));
            }
        }
    }
}
