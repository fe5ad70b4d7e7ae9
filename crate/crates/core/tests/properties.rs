//! Randomized invariants across the core modules.

use linesing_core::exactlin::random::{random_invertible, random_matrix, random_matrix_of_rank};
use linesing_core::exactlin::{induced_on_quotient, kernel_basis, restrict_to_invariant};
use linesing_core::morse::sample::{attempt_forbidden, random_morse_ses, ForbiddenAttempt};
use linesing_core::morse::{equality_criterion, euler_relation};
use linesing_core::mvcat::{direct_sum, dual_triangle, random_valid_triangle, stalk_cohomology, MvTriangle};
use linesing_core::polyalg::{
    intersection_by_resultant, local_quotient_dim_auto, resultant, MPoly, Monomial, PolyError,
};
use linesing_core::{Field, Matrix, Scalar, Subspace};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(101)), Just(Field::Prime(2))]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `P · [[A, X, Y], [0, B, Z], [0, 0, C]] · P⁻¹` with blocks of sizes
/// `a`, `b`, `c`, so `span P[:, ..a] ⊆ span P[:, ..a+b]` is an invariant
/// chain.
fn flagged_map(r: &mut ChaCha8Rng, field: Field, a: usize, b: usize, c: usize) -> (Matrix, Subspace, Subspace) {
    let n = a + b + c;
    let mut block = random_matrix(r, field, n, n);
    for i in 0..n {
        for j in 0..n {
            let bi = if i < a {
                0
            } else if i < a + b {
                1
            } else {
                2
            };
            let bj = if j < a {
                0
            } else if j < a + b {
                1
            } else {
                2
            };
            if bi > bj {
                block.set(i, j, Scalar::zero(field));
            }
        }
    }
    let p = random_invertible(r, field, n);
    let t = p.mul(&block).unwrap().mul(&p.inverse().unwrap()).unwrap();
    (
        t,
        Subspace::span(&p.columns(0..a)),
        Subspace::span(&p.columns(0..a + b)),
    )
}

fn random_poly(r: &mut ChaCha8Rng, vars: &[&str], max_deg: u32, terms: usize) -> MPoly {
    let mut p = MPoly::zero(vars).unwrap();
    for _ in 0..terms {
        let mut e = [0u32; 3];
        for x in e.iter_mut().take(vars.len()) {
            *x = r.random_range(0..=max_deg);
        }
        let c = BigRational::new(
            BigInt::from(r.random_range(-5i64..=5)),
            BigInt::from(r.random_range(1i64..=3)),
        );
        let term = MPoly::from_terms(vars, [(Monomial(e), c)]).unwrap();
        p = p.add(&term).unwrap();
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(field in field_strategy(), rows in 0usize..6, cols in 0usize..6, k in 0usize..6, seed: u64) {
        let m = random_matrix_of_rank(&mut rng(seed), field, rows, cols, k);
        prop_assert_eq!(m.rank() + kernel_basis(&m).dim(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= k.min(rows).min(cols));
    }

    #[test]
    fn subspaces_are_canonical(field in field_strategy(), n in 1usize..6, k in 0usize..5, seed: u64) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, field, n, k);
        let p = random_invertible(&mut r, field, k);
        let x = random_matrix(&mut r, field, k, 3);
        let u = Subspace::span(&a);
        // Change of generators, and redundant generators, give the same value.
        prop_assert_eq!(&u, &Subspace::span(&a.mul(&p).unwrap()));
        prop_assert_eq!(&u, &Subspace::span(&a.hstack(&a.mul(&x).unwrap()).unwrap()));
        prop_assert_eq!(u.dim(), a.rank());
    }

    #[test]
    fn containment_is_a_partial_order(
        field in field_strategy(), n in 1usize..6, ka in 0usize..3, kb in 0usize..3, kc in 0usize..3, seed: u64
    ) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, field, n, ka);
        let b = random_matrix(&mut r, field, n, kb);
        let c = random_matrix(&mut r, field, n, kc);
        let u = Subspace::span(&a);
        let v = Subspace::span(&a.hstack(&b).unwrap());
        let w = Subspace::span(&a.hstack(&b).unwrap().hstack(&c).unwrap());
        prop_assert!(u.contains(&u).unwrap());
        prop_assert!(v.contains(&u).unwrap() && w.contains(&v).unwrap() && w.contains(&u).unwrap());
        prop_assert_eq!(v.contains(&w).unwrap() && w.contains(&v).unwrap(), v == w);
        prop_assert!(Subspace::full(field, n).contains(&w).unwrap());
        prop_assert!(u.contains(&Subspace::zero(field, n)).unwrap());
    }

    #[test]
    fn trace_is_additive_on_invariant_chains(
        field in field_strategy(), a in 0usize..3, b in 0usize..3, c in 0usize..3, seed: u64
    ) {
        let (t, u, w) = flagged_map(&mut rng(seed), field, a, b, c);
        let on_u = restrict_to_invariant(&t, &u).unwrap().trace().unwrap();
        let on_w = restrict_to_invariant(&t, &w).unwrap().trace().unwrap();
        let on_wu = induced_on_quotient(&t, &u, &w).unwrap().trace().unwrap();
        prop_assert_eq!(on_w.clone(), &on_u + &on_wu);
        let full = Subspace::full(field, t.rows());
        let on_top = induced_on_quotient(&t, &w, &full).unwrap().trace().unwrap();
        prop_assert_eq!(t.trace().unwrap(), &on_w + &on_top);
    }

    #[test]
    fn triangle_axioms(field in field_strategy(), v in 0usize..4, w in 0usize..4, v2 in 0usize..3, w2 in 0usize..3, seed: u64) {
        let mut r = rng(seed);
        let t = random_valid_triangle(&mut r, field, v, w);
        let s = random_valid_triangle(&mut r, field, v2, w2);
        let d = dual_triangle(&t);
        prop_assert!(MvTriangle::new(d.nu().clone(), d.gamma().clone(), d.delta().clone()).is_ok());
        prop_assert_eq!(&dual_triangle(&d), &t);
        let sum = direct_sum(&t, &s).unwrap();
        prop_assert!(MvTriangle::new(sum.nu().clone(), sum.gamma().clone(), sum.delta().clone()).is_ok());
        prop_assert!(kernel_basis(&t.variation()).contains(&kernel_basis(t.gamma())).unwrap());
        let st = stalk_cohomology(&t);
        prop_assert_eq!(st.dim_deg0 as i64 - st.dim_deg_minus1 as i64, w as i64 - v as i64);
        let ss = stalk_cohomology(&sum);
        let s2 = stalk_cohomology(&s);
        prop_assert_eq!(ss.dim_deg_minus1, st.dim_deg_minus1 + s2.dim_deg_minus1);
    }

    #[test]
    fn morse_sequences_are_consistent(field in field_strategy(), m in 0usize..4, l0 in 0usize..4, seed: u64) {
        let mut r = rng(seed);
        let l1 = r.random_range(0..=m + l0).min(3);
        let s = random_morse_ses(&mut r, field, m, l1, l0);
        prop_assert_eq!(s.gamma(), &s.pi().mul(s.theta()).unwrap());
        prop_assert!(euler_relation(&s));
        prop_assert!(equality_criterion(&s).is_ok());
        prop_assert!(s.to_mv_ses().is_ok());
    }

    #[test]
    fn forbidden_configurations_never_pass(field in prop_oneof![Just(Field::Rational), Just(Field::Prime(101))], n in 2usize..5, l1 in 1usize..4, seed: u64) {
        match attempt_forbidden(&mut rng(seed), field, n, l1) {
            ForbiddenAttempt::SequenceRejected(_) | ForbiddenAttempt::MonodromyRejected(_) => {}
            ForbiddenAttempt::Verdict(b) => {
                let (s, t, v) = *b;
                let w = v.contradiction_witness.expect("forbidden data must carry a witness");
                prop_assert!(w.quotient_trace.is_zero());
                // Trace additivity along im β ⊆ K^ζ.
                let im_beta = Subspace::span(s.beta());
                let full = Subspace::full(field, s.zeta());
                let lhs = t.t_w2.trace().unwrap();
                let rhs = &restrict_to_invariant(&t.t_w2, &im_beta).unwrap().trace().unwrap()
                    + &induced_on_quotient(&t.t_w2, &im_beta, &full).unwrap().trace().unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn derivatives_are_linear_and_leibniz(seed: u64) {
        let vars = ["t", "x", "y"];
        let mut r = rng(seed);
        let p = random_poly(&mut r, &vars, 3, 4);
        let q = random_poly(&mut r, &vars, 3, 4);
        let c = BigRational::new(BigInt::from(r.random_range(-4i64..=4)), BigInt::from(3));
        for v in vars {
            let d = |f: &MPoly| f.partial_derivative(v).unwrap();
            prop_assert_eq!(d(&p.scale(&c).add(&q).unwrap()), d(&p).scale(&c).add(&d(&q)).unwrap());
            prop_assert_eq!(d(&p.mul(&q).unwrap()), d(&p).mul(&q).unwrap().add(&p.mul(&d(&q)).unwrap()).unwrap());
        }
    }

    #[test]
    fn resultant_is_multiplicative(seed: u64) {
        let vars = ["x", "y"];
        let mut r = rng(seed);
        let y = MPoly::var(&vars, "y").unwrap();
        let with_y = |r: &mut ChaCha8Rng, k: u32| random_poly(r, &vars, 2, 3).add(&y.pow(k)).unwrap();
        let (p, q, h) = (with_y(&mut r, 1), with_y(&mut r, 2), with_y(&mut r, 2));
        prop_assume!(p.degree_in(1) >= Some(1) && q.degree_in(1) >= Some(1) && h.degree_in(1) >= Some(1));
        let pq = p.mul(&q).unwrap();
        let lhs = resultant(&pq, &h, "y").unwrap();
        let rhs = resultant(&p, &h, "y").unwrap().mul(&resultant(&q, &h, "y").unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_and_staircase_agree(seed: u64) {
        let vars = ["x", "y"];
        let mut r = rng(seed);
        let through_origin = |r: &mut ChaCha8Rng| {
            let p = random_poly(r, &vars, 4, 4);
            p.sub(&MPoly::constant(&vars, p.constant_term()).unwrap()).unwrap()
        };
        let (g, h) = (through_origin(&mut r), through_origin(&mut r));
        prop_assume!(!g.is_zero() && !h.is_zero());
        let by_staircase = match local_quotient_dim_auto(&[g.clone(), h.clone()]) {
            Ok(d) => d.dim as u32,
            Err(PolyError::NonIsolated { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("staircase: {e}"))),
        };
        match intersection_by_resultant(&g, &h, "x", "y", &mut r) {
            Ok(n) => prop_assert_eq!(n, by_staircase),
            Err(PolyError::CommonComponent) => prop_assert!(false, "isolated by staircase but resultant vanishes"),
            Err(e) => return Err(TestCaseError::fail(format!("resultant: {e}"))),
        }
    }
}
