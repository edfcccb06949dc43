use proptest::prelude::*;
use spine_core::arith::{primes_between, DensePolynomial, FieldContext, FieldElement, Fp, Fp2};
use spine_core::curves::WeierstrassCurve;
use spine_core::graph::build_full_graph;
use spine_core::metrics::distances;
use spine_core::modpoly::phi_eval;

fn prime_below(limit: u64) -> impl Strategy<Value = u64> {
    let ps = primes_between(5, limit);
    (0..ps.len()).prop_map(move |i| ps[i])
}

fn fp2(k: &FieldContext, a: u64, b: u64) -> Fp2 {
    k.fp2(a % k.p(), b % k.p())
}

proptest! {
    #[test]
    fn fp_field_axioms(p in prime_below(1000), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let k = FieldContext::new(p).unwrap();
        let (a, b, c) = (k.fp(a % p), k.fp(b % p), k.fp(c % p));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a - a, k.zero());
        match a.inv() {
            Some(i) => prop_assert_eq!(a * i, k.one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn fp2_field_axioms(p in prime_below(1000), v in prop::array::uniform6(any::<u64>())) {
        let k = FieldContext::new(p).unwrap();
        let (a, b, c) = (fp2(&k, v[0], v[1]), fp2(&k, v[2], v[3]), fp2(&k, v[4], v[5]));
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a * b).frobenius(), a.frobenius() * b.frobenius());
        prop_assert_eq!(a.pow(u128::from(p)), a.frobenius());
        prop_assert!(a.norm() == (a * a.frobenius()).to_base().unwrap());
        match a.inv() {
            Some(i) => prop_assert_eq!(a * i, a.one_like()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn fp_roots_match_exhaustive_search(p in prime_below(1000), coeffs in prop::collection::vec(any::<u64>(), 1..7)) {
        let k = FieldContext::new(p).unwrap();
        let mut c: Vec<Fp> = coeffs.iter().map(|&v| k.fp(v % p)).collect();
        *c.last_mut().unwrap() = k.one();
        let f = DensePolynomial::new(c, k.zero());
        let want: Vec<Fp> = (0..p).map(|x| k.fp(x)).filter(|&x| f.eval(x).is_zero()).collect();
        prop_assert_eq!(f.roots_by_splitting().unwrap(), f.roots_by_scan().unwrap());
        let got: Vec<Fp> = f.roots_with_multiplicity().unwrap().into_iter().map(|r| r.0).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn fp2_roots_match_exhaustive_search(p in prime_below(60), coeffs in prop::collection::vec(any::<u64>(), 2..10)) {
        let k = FieldContext::new(p).unwrap();
        let mut c: Vec<Fp2> = coeffs.chunks(2).map(|w| fp2(&k, w[0], *w.get(1).unwrap_or(&0))).collect();
        *c.last_mut().unwrap() = k.fp2(1, 0);
        let f = DensePolynomial::new(c, k.fp2(0, 0));
        let mut want = Vec::new();
        for a in 0..p {
            for b in 0..p {
                if f.eval(k.fp2(a, b)).is_zero() {
                    want.push(k.fp2(a, b));
                }
            }
        }
        want.sort();
        let split: Vec<Fp2> = f.roots_by_splitting().unwrap().into_iter().map(|r| r.0).collect();
        prop_assert_eq!(split, want.clone());
        prop_assert_eq!(f.roots().unwrap(), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn velu_codomain_is_a_phi_neighbour(p in prime_below(2000), a4 in any::<u64>(), x0 in any::<u64>(), start in any::<u64>()) {
        let k = FieldContext::new(p).unwrap();
        let (a4, x0) = (k.fp(a4 % p), k.fp(x0 % p));
        // A curve with a rational 2-torsion point at x0.
        let a6 = -(x0 * x0 * x0 + a4 * x0);
        if let Ok(e) = WeierstrassCurve::new(a4, a6) {
            for ker in e.rational_ell_kernels(2).unwrap() {
                let img = e.velu_isogeny(&ker).unwrap();
                prop_assert!(phi_eval(2, e.j_invariant(), img.j_invariant()).unwrap().is_zero());
            }
        }
        // The first curve y² = x³ + a4·x + a6 with a rational 3-kernel.
        for t in 0..p {
            let Ok(e) = WeierstrassCurve::new(a4, k.fp((start % p + t) % p)) else { continue };
            let ks = e.rational_ell_kernels(3).unwrap();
            if ks.is_empty() {
                continue;
            }
            for ker in ks {
                let img = e.velu_isogeny(&ker).unwrap();
                prop_assert!(phi_eval(3, e.j_invariant(), img.j_invariant()).unwrap().is_zero());
            }
            break;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn frobenius_preserves_distances(p in prime_below(500), ell in 2u32..4, s in any::<usize>()) {
        let g = build_full_graph(p, ell).unwrap();
        let src = s % g.len();
        let fsrc = g.index_of(g.vertices()[src].frobenius()).unwrap();
        let d = distances(&g, src).unwrap();
        let fd = distances(&g, fsrc).unwrap();
        for (v, j) in g.vertices().iter().enumerate() {
            let fv = g.index_of(j.frobenius()).unwrap();
            prop_assert_eq!(d[v], fd[fv]);
            prop_assert_eq!(g.multiplicity(src, v), g.multiplicity(fsrc, fv));
        }
    }

    #[test]
    fn regular_and_symmetric(p in prime_below(2003), ell in 2u32..4) {
        let g = build_full_graph(p, ell).unwrap();
        prop_assert!(g.is_symmetric());
        for i in 0..g.len() {
            prop_assert_eq!(g.out_degree(i), ell + 1);
        }
    }
}
