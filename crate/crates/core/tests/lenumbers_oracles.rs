//! Lê numbers against closed forms derived by hand.
//!
//! `y² − x³ − tᵏx²`: each slice `t = c ≠ 0` is a node (λ¹ = 1) and the
//! origin slice a cusp (μ₀ = 2). The polar curve is `x = −(2/3)tᵏ, y = 0`,
//! along which `f_t = −k tᵏ⁻¹ x²` has order `3k − 1` and `f` has order `3k`.
//!
//! `xᵃ + yᵇ` (constant in `t`): every slice has Milnor number
//! `(a − 1)(b − 1)` and the polar curve misses the origin.

use linesing_core::lenumbers::{
    analyze, lambda_one, mu_zero, polar_curve, verify_line_critical_locus, AnalysisConfig, AnalysisExtras, LeError,
    LineSingularityInput,
};
use linesing_core::polyalg::{MPoly, Monomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TXY: [&str; 3] = ["t", "x", "y"];

fn poly(terms: &[(i64, [u32; 3])]) -> MPoly {
    MPoly::from_terms(
        &TXY,
        terms
            .iter()
            .map(|(c, e)| (Monomial(*e), BigRational::from_integer(BigInt::from(*c)))),
    )
    .unwrap()
}

fn input(f: MPoly) -> LineSingularityInput {
    LineSingularityInput::new(f, "t", "t").unwrap()
}

#[test]
fn cusp_degenerating_to_node() {
    let cfg = AnalysisConfig::default();
    for k in 1..=4u32 {
        let f = input(poly(&[(1, [0, 0, 2]), (-1, [0, 3, 0]), (-1, [k, 2, 0])]));
        let mut rng = ChaCha8Rng::seed_from_u64(u64::from(k));
        let r = analyze(&f, &cfg, &AnalysisExtras::default(), &mut rng).unwrap();
        assert_eq!((r.mu0, r.lambda1), (2, 1), "k = {k}");
        assert_eq!(r.lambda0, 3 * k - 1, "k = {k}");
        assert_eq!(r.zeta, 3 * k + 1, "k = {k}");
        assert_eq!((r.attaching_rank, r.polar_degree), (3 * k, 1), "k = {k}");
        assert!(r.hypothesis_3_3);
        assert_eq!((r.bounds.deg_nminus1, r.bounds.deg_n), (0, 3 * k - 2));
    }
}

#[test]
fn suspended_brieskorn_curves() {
    let cfg = AnalysisConfig::default();
    for a in 2..=5u32 {
        for b in 2..=5u32 {
            let f = input(poly(&[(1, [0, a, 0]), (1, [0, 0, b])]));
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let r = analyze(&f, &cfg, &AnalysisExtras::default(), &mut rng).unwrap();
            let mu = (a - 1) * (b - 1);
            assert_eq!(
                (r.mu0, r.lambda1, r.lambda0, r.attaching_rank),
                (mu, mu, 0, 0),
                "a = {a}, b = {b}"
            );
            assert!(r.polar_curve.is_empty());
            assert!(!r.hypothesis_3_3);
        }
    }
}

#[test]
fn axis_order_does_not_matter() {
    // The same polynomial with the axis named last.
    let f = MPoly::from_terms(
        &["x", "y", "s"],
        [
            (Monomial([0, 2, 0]), BigRational::from_integer(1.into())),
            (Monomial([3, 0, 0]), BigRational::from_integer((-1).into())),
            (Monomial([2, 0, 2]), BigRational::from_integer((-1).into())),
        ],
    )
    .unwrap();
    let inp = LineSingularityInput::new(f, "s", "s").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let r = analyze(&inp, &AnalysisConfig::default(), &AnalysisExtras::default(), &mut rng).unwrap();
    assert_eq!((r.mu0, r.lambda1, r.lambda0, r.attaching_rank), (2, 1, 5, 6));
}

#[test]
fn non_line_inputs_are_rejected() {
    let cfg = AnalysisConfig::default();
    // Isolated singularity: the axis is not in the critical locus.
    let morse = input(poly(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (1, [0, 0, 2])]));
    assert!(verify_line_critical_locus(&morse, &cfg).is_err());
    // y² alone: the slice through the origin is not isolated.
    let double_plane = input(poly(&[(1, [0, 0, 2])]));
    assert!(matches!(
        verify_line_critical_locus(&double_plane, &cfg),
        Err(LeError::NonIsolatedSlice { .. })
    ));
    // Only the axis itself is accepted as the slicing form.
    assert!(matches!(
        LineSingularityInput::new(poly(&[(1, [0, 0, 2])]), "t", "x"),
        Err(LeError::UnsupportedLinearForm { .. })
    ));
}

#[test]
fn seeds_do_not_change_the_numbers() {
    let cfg = AnalysisConfig::default();
    let f = input(poly(&[(1, [0, 0, 2]), (-1, [0, 3, 0]), (-1, [2, 2, 0])]));
    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        assert_eq!(mu_zero(&f, &cfg, &mut rng).unwrap().value, 2);
        assert_eq!(lambda_one(&f, &cfg, &mut rng).unwrap().value, 1);
    }
    assert_eq!(polar_curve(&f).unwrap().generators().len(), 2);
}
