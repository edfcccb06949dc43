//! Class groups of imaginary quadratic orders via reduced binary quadratic
//! forms.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::ClassGroupError;

/// The form `a·x² + b·xy + c·y²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn check_discriminant(d: i64) -> Result<(), ClassGroupError> {
    if d >= 0 || d.rem_euclid(4) > 1 {
        return Err(ClassGroupError::InvalidDiscriminant(d));
    }
    Ok(())
}

impl QuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadraticForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_reduced(&self) -> bool {
        let QuadraticForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// The principal form of discriminant `d`.
    pub fn principal(d: i64) -> Result<Self, ClassGroupError> {
        check_discriminant(d)?;
        let b = d.rem_euclid(2);
        Ok(QuadraticForm { a: 1, b, c: (b * b - d) / 4 })
    }

    /// The inverse class `(a, −b, c)`, reduced.
    pub fn inverse(&self) -> Self {
        QuadraticForm { a: self.a, b: -self.b, c: self.c }.reduce()
    }

    /// The reduced form equivalent to a positive definite form.
    pub fn reduce(&self) -> Self {
        let d = i128::from(self.discriminant());
        let (mut a, mut b, mut c) = (i128::from(self.a), i128::from(self.b), i128::from(self.c));
        loop {
            if !(-a < b && b <= a) {
                // Shift b into (-a, a].
                let r = Integer::div_floor(&(a - b), &(2 * a));
                b += 2 * a * r;
                c = (b * b - d) / (4 * a);
            }
            if a > c {
                core::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        QuadraticForm { a: a as i64, b: b as i64, c: c as i64 }
    }
}

/// All reduced primitive forms of discriminant `d`, sorted by `(a, b)`.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadraticForm>, ClassGroupError> {
    check_discriminant(d)?;
    let n = -d;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadraticForm { a, b, c: num / (4 * a) };
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

/// The class number `h(d)`.
pub fn class_number(d: i64) -> Result<u64, ClassGroupError> {
    Ok(reduced_forms(d)?.len() as u64)
}

/// Gauss composition followed by reduction.
pub fn compose_reduce(f: &QuadraticForm, g: &QuadraticForm) -> Result<QuadraticForm, ClassGroupError> {
    let d = f.discriminant();
    if d != g.discriminant() {
        return Err(ClassGroupError::DiscriminantMismatch(d, g.discriminant()));
    }
    let (mut f1, mut f2) = (*f, *g);
    if f1.a > f2.a {
        core::mem::swap(&mut f1, &mut f2);
    }
    let (a1, b1) = (i128::from(f1.a), i128::from(f1.b));
    let (a2, b2, c2) = (i128::from(f2.a), i128::from(f2.b), i128::from(f2.c));
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (y1, g) = if a2 % a1 == 0 {
        (0, a1)
    } else {
        let e = a2.extended_gcd(&a1);
        (e.x, e.gcd)
    };
    let (x2, y2, d1) = if s % g == 0 {
        (0, -1, g)
    } else {
        let e = s.extended_gcd(&g);
        (e.x, -e.y, e.gcd)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).mod_floor(&v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (b3 * b3 - i128::from(d)) / (4 * a3);
    Ok(QuadraticForm { a: a3 as i64, b: b3 as i64, c: c3 as i64 }.reduce())
}

/// The order of the class of a form `(ℓ, b, ·)` with `b² ≡ d (mod 4ℓ)`;
/// `None` when no such `b` exists (ℓ inert) or the form is imprimitive.
pub fn prime_form_order(ell: i64, d: i64) -> Result<Option<u64>, ClassGroupError> {
    check_discriminant(d)?;
    let m = 4 * ell;
    let Some(b) = (0..2 * ell).find(|b| (b * b - d).rem_euclid(m) == 0) else {
        return Ok(None);
    };
    let form = QuadraticForm { a: ell, b, c: (b * b - d) / m };
    if !form.is_primitive() {
        return Ok(None);
    }
    let principal = QuadraticForm::principal(d)?;
    let h = class_number(d)?;
    let base = form.reduce();
    let mut acc = base;
    for k in 1..=h {
        if acc == principal {
            return Ok(Some(k));
        }
        acc = compose_reduce(&acc, &base)?;
    }
    unreachable!("class order divides the class number")
}
