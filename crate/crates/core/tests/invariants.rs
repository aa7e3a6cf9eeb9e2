use num::{BigInt, One, Signed};
use proptest::prelude::*;
use swtqft_core::lattice::{char_series, random_symplectic};
use swtqft_core::sympower::{apply_induced, gram_determinant, lefschetz_number, monomial_pair, SymClass, SymSpace};
use swtqft_core::torsion::{torsion_coefficient_direct, torsion_representative};
use swtqft_core::tqft::{compute_b1, rhs_series, trace_kappa_coefficient, verify_main_identity, zeta_series};
use swtqft_core::{Presentation, SurfaceModel, TruncSeries};

fn presentation(handles: usize, g: usize, words: usize, seed: u64) -> Presentation {
    Presentation::from_mapping_class(None, random_symplectic(SurfaceModel::split(handles, g), words, seed))
}

fn small_shape() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((0, 1)), Just((1, 0)), Just((1, 1)), Just((2, 0)), Just((0, 2)), Just((2, 1))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn main_identity_holds((handles, g) in small_shape(), words in 0usize..12, seed in any::<u64>()) {
        let p = presentation(handles, g, words, seed);
        let report = verify_main_identity(&p, 3).unwrap();
        prop_assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn zeta_is_char_poly_over_square((handles, g) in small_shape(), words in 0usize..12, seed in any::<u64>()) {
        let p = presentation(handles, g, words, seed);
        let z = zeta_series(&p, 5).unwrap();
        let back = z.mul(&TruncSeries::from_integers([1, -2, 1], 5)).unwrap();
        prop_assert_eq!(back, char_series(p.monodromy().matrix(), 5));
        for k in 0..=5 {
            prop_assert_eq!(z.coeff(k).to_integer(), BigInt::from(lefschetz_number(p.monodromy(), k)));
        }
    }

    #[test]
    fn torsion_paths_agree((handles, g) in small_shape(), words in 0usize..10, seed in any::<u64>()) {
        let p = presentation(handles, g, words, seed);
        let det = torsion_representative(&p, 4);
        for k in 0..=4 {
            prop_assert_eq!(det.coeff(k).to_integer(), torsion_coefficient_direct(&p, k));
        }
    }

    #[test]
    fn pairing_is_invariant((handles, g) in small_shape(), words in 0usize..10, seed in any::<u64>(), n in 0usize..3) {
        let p = presentation(handles, g, words, seed);
        let space = SymSpace::new(*p.model(), n);
        let basis = space.basis();
        for a in &basis {
            let ha = apply_induced(p.monodromy(), &SymClass::monomial(space, a.clone()));
            for b in &basis {
                let hb = apply_induced(p.monodromy(), &SymClass::monomial(space, b.clone()));
                let mut lhs = 0;
                for (u, &x) in ha.terms() {
                    for (v, &y) in hb.terms() {
                        lhs += x * y * monomial_pair(&space, u, v);
                    }
                }
                prop_assert_eq!(lhs, monomial_pair(&space, a, b));
            }
        }
    }
}

#[test]
fn rhs_coefficients_shift_by_handles() {
    for (handles, g, seed) in [(1, 1, 3), (2, 0, 5), (2, 1, 8)] {
        let p = presentation(handles, g, 9, seed);
        let rhs = rhs_series(&p, 3).unwrap();
        assert_eq!(rhs.order(), 3 + handles);
        for n in 0..=3 {
            assert_eq!(rhs.coeff(n + handles).to_integer(), BigInt::from(trace_kappa_coefficient(&p, n)));
        }
    }
}

#[test]
fn gram_matrices_are_unimodular() {
    for (handles, g) in [(0, 1), (1, 1), (0, 2), (2, 0)] {
        for n in 0..=3 {
            let d = gram_determinant(&SymSpace::new(SurfaceModel::split(handles, g), n));
            assert!(d.abs().is_one(), "N={handles} g={g} n={n}: {d}");
        }
    }
}

#[test]
fn product_manifolds() {
    let s2xs1 = presentation(0, 0, 0, 0);
    assert_eq!(compute_b1(&s2xs1).unwrap(), 1);
    let t3 = presentation(0, 1, 0, 0);
    assert_eq!(compute_b1(&t3).unwrap(), 3);
    let traces: Vec<_> = (0..4).map(|n| trace_kappa_coefficient(&t3, n)).collect();
    assert_eq!(traces, vec![1, 0, 0, 0]);
}
