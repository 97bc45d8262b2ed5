//! Structural invariants checked on grids and randomized inputs: fraction
//! round trips, Alexander polynomial symmetry, additivity of the
//! d-invariant, the correction-term sandwich, and agreement between the
//! minimax formula and the tensor-product lattice route.

use floercalc::complex::GradedComplex;
use floercalc::grading::gr;
use floercalc::iota::IotaComplex;
use floercalc::knot::alexander::{gcd, AlexPoly};
use floercalc::knot::lattice::LatticeCfk;
use floercalc::knot::staircase::{bl_v0, Staircase};
use floercalc::knot::KnotExpr;
use floercalc::surgery::model_for;
use floercalc::tangle::{cf_eval, cf_expand, Frac};
use proptest::prelude::*;

#[test]
fn fraction_round_trip_on_grid() {
    for q in 0..=200i64 {
        for p in -200..=200i64 {
            if gcd(p, q) != 1 {
                continue;
            }
            let x = Frac::new(p, q);
            assert_eq!(cf_eval(&cf_expand(x)), x, "round trip for {x}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn fraction_round_trip_random(p in -100_000i64..=100_000, q in 1i64..=100_000) {
        let x = Frac::new(p, q);
        prop_assert_eq!(cf_eval(&cf_expand(x)), x);
    }

    #[test]
    fn fraction_normalization_is_canonical(p in -500i64..=500, q in -500i64..=500) {
        prop_assume!(q != 0);
        let x = Frac::new(p, q);
        prop_assert!(x.den > 0);
        prop_assert_eq!(gcd(x.num, x.den), 1);
        prop_assert_eq!(Frac::new(x.num * 3, x.den * 3), x);
    }
}

#[test]
fn torus_alexander_polynomials_are_symmetric_and_normalized() {
    for (p, q) in [(2, 3), (2, 5), (2, 7), (2, 11), (3, 4), (3, 5), (4, 5), (5, 6)] {
        let d = AlexPoly::torus(p, q);
        assert!(d.is_symmetric(), "symmetry for ({p}, {q})");
        assert_eq!(d.eval_at_one(), 1, "determinant normalization for ({p}, {q})");
        assert_eq!(d.degree(), Some((p - 1) * (q - 1) / 2));
        let exps = d.alternating_exponents().unwrap();
        assert!(exps.windows(2).all(|w| w[0] > w[1]), "strictly descending");
        assert_eq!(exps.len() % 2, 1, "odd term count");
    }
}

#[test]
fn cable_alexander_matches_product_formula() {
    // The cable polynomial is the companion at t^p times the torus factor.
    for (p, q, companion) in [(2, 5, (2, 3)), (2, 7, (2, 5)), (3, 7, (2, 3))] {
        let inner = AlexPoly::torus(companion.0, companion.1);
        let cabled = AlexPoly::cable(p, q, &inner);
        let product = inner.substitute_power(p).mul(&AlexPoly::torus(p, q));
        assert_eq!(cabled, product);
        assert!(cabled.is_symmetric());
        assert_eq!(cabled.eval_at_one(), 1);
    }
}

fn small_models() -> Vec<IotaComplex> {
    vec![
        IotaComplex::trivial(),
        IotaComplex::make_x(1),
        IotaComplex::make_x(2),
        IotaComplex::make_x_dual(1),
        IotaComplex::make_x_dual(3),
    ]
}

#[test]
fn d_invariant_is_additive_under_tensor() {
    let models = small_models();
    for a in &models {
        for b in &models {
            let t = IotaComplex::tensor(a, b).unwrap();
            assert_eq!(t.d_invariant(), a.d_invariant() + b.d_invariant());
            t.validate().unwrap();
        }
    }
}

#[test]
fn double_dual_restores_the_complex() {
    for m in small_models() {
        let cx = m.complex();
        let dd = cx.dual().dual();
        assert_eq!(dd.gradings(), cx.gradings());
        assert_eq!(dd.differential(), cx.differential());
        let md = m.dual().dual();
        assert_eq!(md.iota(), m.iota());
        assert_eq!(md.d_invariant(), m.d_invariant());
    }
}

#[test]
fn shift_moves_the_d_invariant() {
    let x2 = IotaComplex::make_x(2);
    for k in [-2i64, 0, 2, 6] {
        assert_eq!(x2.shift(gr(k)).d_invariant(), x2.d_invariant() - gr(k));
    }
}

#[test]
fn correction_terms_satisfy_the_sandwich() {
    let knots = ["T(2,3)", "T(2,5)", "T(2,7)", "T(3,4)", "cable(2,5; T(2,3))"];
    for name in knots {
        let k: KnotExpr = name.parse().unwrap();
        let model = model_for(&k).unwrap();
        let genus = k.staircase().unwrap().genus();
        let v0 = model.v_s(0).unwrap();
        let mut prev = v0;
        for s in 0..=(genus + 2) {
            let vs = model.v_s(s).unwrap();
            assert!(vs <= v0, "V_s <= V_0 for {name} at s = {s}");
            assert!(i64::from(v0) - s <= i64::from(vs), "V_0 - s <= V_s for {name} at s = {s}");
            assert!(vs <= prev, "monotone for {name} at s = {s}");
            prev = vs;
            if s >= genus {
                assert_eq!(vs, 0, "vanishing past the genus for {name}");
            }
        }
    }
}

#[test]
fn mirrors_have_vanishing_nonnegative_correction_terms() {
    for name in ["-T(2,3)", "-T(3,4)", "-cable(2,5; T(2,3))"] {
        let k: KnotExpr = name.parse().unwrap();
        let model = model_for(&k).unwrap();
        for s in 0..=4 {
            assert_eq!(model.v_s(s).unwrap(), 0, "{name} at s = {s}");
        }
    }
}

#[test]
fn thin_connected_sums_are_subadditive() {
    let v0 = |tau: i64| -> u32 {
        let k: KnotExpr = format!("thin({tau})").parse().unwrap();
        k.v0_exact().unwrap()
    };
    for a in -3..=3i64 {
        for b in -3..=3i64 {
            let sum: KnotExpr = format!("thin({a}) + thin({b})").parse().unwrap();
            let both = sum.v0_exact().unwrap();
            assert!(both <= v0(a) + v0(b), "subadditive at ({a}, {b})");
            if a >= 0 && b >= 0 {
                // Same-sign thin summands behave like a single knot with
                // the total tau.
                assert_eq!(both, v0(a + b));
            }
        }
    }
}

#[test]
fn minimax_formula_matches_tensor_lattice_route() {
    let atoms: Vec<(&str, Staircase)> = vec![
        ("T(2,3)", Staircase::from_exponents(&[1, 0, -1])),
        ("T(2,5)", Staircase::from_exponents(&[2, 1, 0, -1, -2])),
        ("T(3,4)", Staircase::from_exponents(&[3, 2, 0, -2, -3])),
        ("cable(2,5; T(2,3))", Staircase::from_exponents(&[4, 3, 0, -3, -4])),
    ];
    for (na, a) in &atoms {
        for (nb, b) in &atoms {
            let by_minimax = bl_v0(&[a, b]).unwrap();
            let model = LatticeCfk::tensor(
                &LatticeCfk::from_staircase(a),
                &LatticeCfk::from_staircase(b),
            );
            let by_lattice = model.v_s(0).unwrap();
            assert_eq!(by_minimax, by_lattice, "{na} + {nb}");
        }
    }
    // One triple to exercise depth past pairwise products.
    let triple = [&atoms[0].1, &atoms[0].1, &atoms[1].1];
    let model = LatticeCfk::tensor(
        &LatticeCfk::tensor(
            &LatticeCfk::from_staircase(triple[0]),
            &LatticeCfk::from_staircase(triple[1]),
        ),
        &LatticeCfk::from_staircase(triple[2]),
    );
    assert_eq!(bl_v0(&triple).unwrap(), model.v_s(0).unwrap());
}

#[test]
fn tensor_grading_layout_is_consistent() {
    let a = IotaComplex::make_x(2);
    let b = IotaComplex::make_x_dual(1);
    let t = GradedComplex::tensor(a.complex(), b.complex());
    for i in 0..a.complex().len() {
        for j in 0..b.complex().len() {
            let idx = GradedComplex::tensor_index(b.complex().len(), i, j);
            assert_eq!(t.grading(idx), a.complex().grading(i) + b.complex().grading(j));
        }
    }
}
