use std::collections::BTreeSet;

use num_traits::Signed;
use proptest::prelude::*;

use super::*;
use crate::exact::int_vec;
use crate::root_datum::{catalog, standard_names, weyl_group};

fn f(k: i64, n: i64) -> QmodZ {
    QmodZ::frac(k, n)
}

fn v(x: &[i64]) -> Vec<BigInt> {
    int_vec(x)
}

fn opts() -> EnumOptions {
    EnumOptions::default()
}

/// Every form with values in `(1/n)ℤ/ℤ`, in numerator order.
fn all_forms(rank: usize, n: i64) -> Vec<TorsionQuadForm> {
    let len = rank + rank * rank.saturating_sub(1) / 2;
    let total = (n as usize).pow(len as u32);
    (0..total)
        .map(|mut t| {
            let mut d = vec![0i64; len];
            for k in (0..len).rev() {
                d[k] = (t % n as usize) as i64;
                t /= n as usize;
            }
            TorsionQuadForm::from_numerators(rank, n, &d)
        })
        .collect()
}

#[test]
fn evaluation_examples() {
    let q = TorsionQuadForm::new(vec![f(1, 2)], &[]).unwrap();
    assert_eq!(q.eval_q(&v(&[1])).unwrap(), f(1, 2));
    assert_eq!(q.eval_b(&v(&[1]), &v(&[1])).unwrap(), QmodZ::zero());
    assert!(q.eval_q(&v(&[0])).unwrap().is_zero());

    let q = TorsionQuadForm::new(vec![f(1, 4), f(0, 1)], &[(0, 1, f(1, 3))]).unwrap();
    assert_eq!(q.eval_q(&v(&[1, 1])).unwrap(), f(7, 12));
    assert!(matches!(
        q.eval_q(&v(&[1])),
        Err(Error::DimensionMismatch { expected: 2, found: 1 })
    ));
    assert!(q.eval_b(&v(&[1, 0]), &v(&[1, 0, 0])).is_err());
}

#[test]
fn offdiag_entries_are_symmetric() {
    let mut q = TorsionQuadForm::zero(3);
    q.set_offdiag(2, 0, f(1, 5)).unwrap();
    assert_eq!(q.basis_pairing(0, 2), f(1, 5));
    assert_eq!(q.basis_pairing(2, 0), f(1, 5));
    assert_eq!(q.offdiag_entries(), vec![(0, 2, f(1, 5))]);
    assert!(q.set_offdiag(1, 1, f(1, 2)).is_err());
    assert!(q.set_offdiag(0, 3, f(1, 2)).is_err());
}

#[test]
fn weyl_invariance_examples() {
    let sl2 = catalog("SL2").unwrap();
    for k in 0..6 {
        let q = TorsionQuadForm::new(vec![f(k, 6)], &[]).unwrap();
        assert!(is_weyl_invariant(&q, &sl2).unwrap().holds());
    }

    let rd = catalog("SL2xTorus1").unwrap();
    let q = TorsionQuadForm::new(vec![f(0, 1), f(0, 1)], &[(0, 1, f(1, 3))]).unwrap();
    let w = is_weyl_invariant(&q, &rd).unwrap();
    assert_eq!(
        w.witness(),
        Some(&InvarianceWitness { generator: 0, j: 0, k: 1 })
    );

    let gl2 = catalog("GL2").unwrap();
    for (c, b) in [(f(1, 3), f(1, 7)), (f(1, 2), f(1, 2)), (f(0, 1), f(2, 5))] {
        let q = TorsionQuadForm::new(vec![c.clone(), c], &[(0, 1, b)]).unwrap();
        assert!(is_weyl_invariant(&q, &gl2).unwrap().holds());
    }
    let q = TorsionQuadForm::new(vec![f(1, 3), f(0, 1)], &[]).unwrap();
    assert!(!is_weyl_invariant(&q, &gl2).unwrap().holds());
    assert!(is_weyl_invariant(&TorsionQuadForm::zero(1), &gl2).is_err());
}

#[test]
fn restriction_examples() {
    let sl2 = catalog("SL2").unwrap();
    let pgl2 = catalog("PGL2").unwrap();
    for k in 0..8 {
        let q = TorsionQuadForm::new(vec![f(k, 8)], &[]).unwrap();
        assert!(satisfies_restriction(&q, &sl2).unwrap().holds());
        assert!(satisfies_restriction(&q, &pgl2).unwrap().holds());
    }

    let rd = catalog("SL2xTorus1").unwrap();
    let q = TorsionQuadForm::new(vec![f(0, 1), f(0, 1)], &[(0, 1, f(1, 2))]).unwrap();
    assert!(is_weyl_invariant(&q, &rd).unwrap().holds());
    let w = satisfies_restriction(&q, &rd).unwrap();
    assert_eq!(
        w.witness(),
        Some(&RestrictionWitness {
            coroot: 0,
            basis: 1,
            lhs: f(1, 2),
            rhs: QmodZ::zero(),
        })
    );

    let bad = TorsionQuadForm::new(vec![f(0, 1), f(0, 1)], &[(0, 1, f(1, 3))]).unwrap();
    assert!(matches!(
        satisfies_restriction(&bad, &rd),
        Err(Error::NotWeylInvariant { generator: 0, .. })
    ));
}

#[test]
fn restriction_is_strict_for_sl2_times_torus() {
    let rd = catalog("SL2xTorus1").unwrap();
    let invariant: Vec<_> = all_forms(2, 2)
        .into_iter()
        .filter(|q| is_weyl_invariant(q, &rd).unwrap().holds())
        .collect();
    assert_eq!(invariant.len(), 8);
    let passing = invariant
        .iter()
        .filter(|q| satisfies_restriction(q, &rd).unwrap().holds())
        .count();
    assert_eq!(passing, 4);
}

#[test]
fn enumeration_examples() {
    assert_eq!(enumerate_restricted(&catalog("SL2").unwrap(), 4, opts()).unwrap().len(), 4);
    assert_eq!(enumerate_restricted(&catalog("Torus2").unwrap(), 2, opts()).unwrap().len(), 8);
    assert_eq!(
        enumerate_restricted(&catalog("SL2xTorus1").unwrap(), 2, opts()).unwrap().len(),
        4
    );
    assert_eq!(enumerate_restricted(&catalog("Torus1").unwrap(), 1, opts()).unwrap().len(), 1);
    assert!(matches!(
        enumerate_restricted(&catalog("SL2").unwrap(), 0, opts()),
        Err(Error::NonPositiveModulus)
    ));
    let tight = EnumOptions { cap: 7, jobs: 1 };
    assert!(matches!(
        enumerate_restricted(&catalog("Torus2").unwrap(), 2, tight),
        Err(Error::CapExceeded { cap: 7, .. })
    ));
}

/// The machine-integer enumerator agrees with filtering every form through
/// the exact public predicates.
#[test]
fn enumeration_matches_exact_filter() {
    for name in ["SL2", "PGL2", "GL2", "SL3", "PGL3", "Sp4", "SO5", "G2", "SO4", "SL2xTorus1"] {
        let rd = catalog(name).unwrap();
        for n in [2, 3, 4] {
            let fast: BTreeSet<_> = enumerate_restricted(&rd, n, opts()).unwrap().into_iter().collect();
            let slow: BTreeSet<_> = all_forms(rd.rank(), n)
                .into_iter()
                .filter(|q| is_restricted(q, &rd).unwrap())
                .collect();
            assert_eq!(fast, slow, "{name}, n = {n}");
        }
    }
}

#[test]
fn enumeration_independent_of_jobs() {
    for name in ["SL4", "GL3", "SL2xTorus2"] {
        let rd = catalog(name).unwrap();
        let one = restricted_forms(&rd, 3, opts()).unwrap();
        for jobs in [2, 3, 7, 64] {
            let many = restricted_forms(&rd, 3, EnumOptions { jobs, ..opts() }).unwrap();
            assert_eq!(one.elements, many.elements, "{name}, jobs = {jobs}");
        }
        assert!(one.elements.windows(2).all(|p| p[0] < p[1]));
    }
}

#[test]
fn enumerated_forms_form_a_group() {
    for name in ["GL2", "Sp4", "SL2xPGL2", "Torus2"] {
        let rd = catalog(name).unwrap();
        let forms: BTreeSet<_> = enumerate_restricted(&rd, 4, opts()).unwrap().into_iter().collect();
        assert!(forms.contains(&TorsionQuadForm::zero(rd.rank())));
        for a in &forms {
            for b in &forms {
                assert!(forms.contains(&(a + b)), "{name}");
            }
        }
    }
}

#[test]
fn enumerated_forms_invariant_under_whole_weyl_group() {
    for name in standard_names(2) {
        let rd = catalog(&name).unwrap();
        let w = weyl_group(&rd, 10_000_000).unwrap();
        for q in enumerate_restricted(&rd, 4, opts()).unwrap() {
            for g in w.elements() {
                for j in 0..rd.rank() {
                    let e = g.column(j);
                    let mut ej = vec![BigInt::zero(); rd.rank()];
                    ej[j] = BigInt::one();
                    assert_eq!(q.eval_q(&e).unwrap(), q.eval_q(&ej).unwrap(), "{name} {q:?}");
                }
            }
        }
    }
}

#[test]
fn simple_coroot_restriction_agrees_with_all_coroots() {
    for name in ["SL3", "Sp4", "G2", "GL2", "SO5", "SL2xSL2", "SL2xTorus1"] {
        let rd = catalog(name).unwrap();
        for q in all_forms(rd.rank(), 4) {
            if !is_weyl_invariant(&q, &rd).unwrap().holds() {
                continue;
            }
            let simple = satisfies_restriction(&q, &rd).unwrap().holds();
            let full = satisfies_restriction_all_coroots(&q, &rd, Caps::default())
                .unwrap()
                .holds();
            assert_eq!(simple, full, "{name} {q:?}");
        }
    }
}

#[test]
fn radical_examples() {
    let q = TorsionQuadForm::new(vec![f(1, 2)], &[]).unwrap();
    assert_eq!(radical_lattice(&q), IntMatrix::identity(1));
    let q = TorsionQuadForm::new(vec![f(1, 4)], &[]).unwrap();
    assert_eq!(radical_lattice(&q), IntMatrix::from_i64(&[&[2]]));
    assert_eq!(radical_lattice(&TorsionQuadForm::zero(3)), IntMatrix::identity(3));
    // b = [[0, 1/2], [1/2, 0]]: radical is 2ℤ ⊕ 2ℤ.
    let q = TorsionQuadForm::new(vec![f(0, 1), f(0, 1)], &[(0, 1, f(1, 2))]).unwrap();
    assert_eq!(radical_lattice(&q), IntMatrix::from_i64(&[&[2, 0], &[0, 2]]));
}

#[test]
fn multiplicativity_examples() {
    let q = TorsionQuadForm::new(vec![f(1, 2)], &[]).unwrap();
    assert_eq!(
        classify_multiplicative(&q),
        Multiplicativity::Multiplicative { epsilon: vec![1] }
    );
    let q = TorsionQuadForm::new(vec![f(1, 4)], &[]).unwrap();
    assert_eq!(
        classify_multiplicative(&q),
        Multiplicativity::NotMultiplicative { i: 0, j: 0, value: f(1, 2) }
    );
    assert_eq!(
        classify_multiplicative(&TorsionQuadForm::zero(2)),
        Multiplicativity::Multiplicative { epsilon: vec![0, 0] }
    );
}

#[test]
fn restriction_to_sublattices() {
    let q = TorsionQuadForm::new(vec![f(1, 4), f(1, 3)], &[(0, 1, f(1, 5))]).unwrap();
    assert_eq!(restrict_form(&q, &IntMatrix::identity(2)).unwrap(), q);
    let sl2 = TorsionQuadForm::new(vec![f(1, 4)], &[]).unwrap();
    let r = restrict_form(&sl2, &IntMatrix::from_i64(&[&[2]])).unwrap();
    assert_eq!(r.diag(), &[QmodZ::zero()]);
    let r = restrict_form(&q, &IntMatrix::from_i64(&[&[1, 1]])).unwrap();
    assert_eq!(r.diag(), &[f(1, 4) + f(1, 3) + f(1, 5)]);
    assert!(matches!(
        restrict_form(&q, &IntMatrix::from_i64(&[&[1, 1], &[2, 2]])),
        Err(Error::DependentRows)
    ));
}

#[test]
fn line_bundle_examples() {
    let theta = ThetaDatum::new(IntMatrix::from_i64(&[&[2]])).unwrap();
    for a in [f(1, 2), f(2, 7), f(0, 1)] {
        assert_eq!(line_bundle_form(&theta, &a).diag(), std::slice::from_ref(&a));
    }
    let theta = ThetaDatum::new(IntMatrix::from_i64(&[&[2, 1], &[1, 2]])).unwrap();
    assert!(line_bundle_form(&theta, &QmodZ::zero()).is_zero());
    let q = line_bundle_form(&theta, &f(1, 3));
    assert_eq!(q.diag(), &[f(1, 3), f(1, 3)]);
    assert_eq!(q.basis_pairing(0, 1), f(1, 3));

    assert!(ThetaDatum::new(IntMatrix::from_i64(&[&[1]])).is_err());
    assert!(ThetaDatum::new(IntMatrix::from_i64(&[&[2, 1], &[0, 2]])).is_err());
    assert!(ThetaDatum::new(IntMatrix::from_i64(&[&[2, 1]])).is_err());
}

/// For simply connected groups every restricted form is a multiple of the
/// minimal even invariant form: the Cartan matrix in type A (coroot basis),
/// `2·I` for `Sp4` in the standard basis.
#[test]
fn restricted_forms_are_scaled_integral_forms() {
    let cases = [
        ("SL2", IntMatrix::from_i64(&[&[2]])),
        ("SL3", IntMatrix::from_i64(&[&[2, -1], &[-1, 2]])),
        ("Sp4", IntMatrix::from_i64(&[&[2, 0], &[0, 2]])),
    ];
    for (name, kappa) in cases {
        let rd = catalog(name).unwrap();
        let theta = ThetaDatum::new(kappa).unwrap();
        for n in [2, 3, 4, 6] {
            let got: BTreeSet<_> = enumerate_restricted(&rd, n, opts()).unwrap().into_iter().collect();
            let want: BTreeSet<_> = (0..n).map(|k| line_bundle_form(&theta, &f(k, n))).collect();
            assert_eq!(got, want, "{name}, n = {n}");
        }
    }
}

#[test]
fn multiplicative_iff_radical_is_everything() {
    for rank in 1..=2 {
        for n in [2, 3, 4] {
            for q in all_forms(rank, n) {
                let full = radical_lattice(&q) == IntMatrix::identity(rank);
                assert_eq!(classify_multiplicative(&q).is_multiplicative(), full, "{q:?}");
            }
        }
    }
}

fn arb_form(rank: usize) -> impl Strategy<Value = TorsionQuadForm> {
    let len = rank + rank * (rank - 1) / 2;
    (1i64..13, prop::collection::vec(0i64..1000, len))
        .prop_map(move |(n, d)| TorsionQuadForm::from_numerators(rank, n, &d))
}

fn arb_vec(rank: usize) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-5i64..=5, rank).prop_map(|x| int_vec(&x))
}

fn form_and_vectors() -> impl Strategy<Value = (TorsionQuadForm, Vec<BigInt>, Vec<BigInt>)> {
    (1usize..=4).prop_flat_map(|r| (arb_form(r), arb_vec(r), arb_vec(r)))
}

proptest! {
    #[test]
    fn polarization((q, l, m) in form_and_vectors()) {
        let sum: Vec<BigInt> = l.iter().zip(&m).map(|(a, b)| a + b).collect();
        let lhs = q.eval_b(&l, &m).unwrap();
        let rhs = q.eval_q(&sum).unwrap() - q.eval_q(&l).unwrap() - q.eval_q(&m).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(q.eval_b(&l, &l).unwrap(), q.eval_q(&l).unwrap().scale_i64(2));
        prop_assert_eq!(q.eval_b(&l, &m).unwrap(), q.eval_b(&m, &l).unwrap());
    }

    #[test]
    fn quadratic_scaling((q, l, _m) in form_and_vectors(), k in -4i64..=4) {
        let kl: Vec<BigInt> = l.iter().map(|x| x * k).collect();
        prop_assert_eq!(q.eval_q(&kl).unwrap(), q.eval_q(&l).unwrap().scale_i64(k * k));
    }

    #[test]
    fn restriction_commutes_with_coordinates(
        (q, l, m) in form_and_vectors(),
        x in prop::collection::vec(-3i64..=3, 2),
    ) {
        let basis = IntMatrix::from_rows(q.rank(), vec![l.clone(), m.clone()]).unwrap();
        prop_assume!(basis.rank() == 2);
        let r = restrict_form(&q, &basis).unwrap();
        let xs = int_vec(&x);
        let image = basis.left_apply(&xs);
        prop_assert_eq!(r.eval_q(&xs).unwrap(), q.eval_q(&image).unwrap());
    }

    #[test]
    fn radical_is_kernel_of_b((q, l, _m) in form_and_vectors()) {
        let rad = radical_lattice(&q);
        let n = q.exponent();
        let index = rad.determinant().unwrap().abs();
        prop_assert!(num_traits::Pow::pow(&n, q.rank() as u32).is_multiple_of(&index));
        for row in rad.row_vecs() {
            prop_assert!(q.eval_b(&row, &l).unwrap().is_zero());
        }
        // Membership: λ ∈ Λ^♯ iff b(λ, eⱼ) = 0 for all j.
        let in_rad = (0..q.rank()).all(|j| {
            let mut e = vec![BigInt::zero(); q.rank()];
            e[j] = BigInt::one();
            q.eval_b(&l, &e).unwrap().is_zero()
        });
        let coords = crate::exact::lattice_coordinates(&rad, &l).unwrap();
        prop_assert_eq!(in_rad, coords.is_some());
    }
}
