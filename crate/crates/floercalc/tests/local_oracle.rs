//! Replays the local-map decision procedure against the brute-force
//! enumerator on a corpus of small models, in both directions for every
//! ordered pair.  The enumerator walks every degree-0 slot mask and decides
//! the homotopy equation with its own assembly, so agreement here checks the
//! solver's equation layout rather than repeating it.

use floercalc::grading::gr;
use floercalc::iota::IotaComplex;
use floercalc::local::{find_local_map, oracle, verify_witness, LocalError};

fn corpus() -> Vec<(String, IotaComplex)> {
    let mut out: Vec<(String, IotaComplex)> = Vec::new();
    out.push(("trivial".into(), IotaComplex::trivial()));
    for i in 1..=3u32 {
        out.push((format!("x{i}"), IotaComplex::make_x(i)));
        out.push((format!("x{i} dual"), IotaComplex::make_x_dual(i)));
    }
    out.push((
        "x1 (x) x1 dual".into(),
        IotaComplex::tensor(&IotaComplex::make_x(1), &IotaComplex::make_x_dual(1)).unwrap(),
    ));
    out.push(("x1 shifted".into(), IotaComplex::make_x(1).shift(gr(2))));
    out
}

#[test]
fn solver_agrees_with_enumeration_on_corpus() {
    let corpus = corpus();
    let mut compared = 0;
    let mut skipped = 0;
    for (na, a) in &corpus {
        for (nb, b) in &corpus {
            let expected = match oracle::enumerate_local_map(a, b) {
                Ok(expected) => expected,
                Err(LocalError::SearchTooLarge { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => panic!("enumerator failed on {na} -> {nb}: {e}"),
            };
            let decision = find_local_map(a, b).unwrap();
            assert_eq!(
                decision.exists(),
                expected.is_some(),
                "solver and enumerator disagree on {na} -> {nb}"
            );
            if let Some(w) = decision.witness() {
                verify_witness(a, b, &w).unwrap();
            }
            if let Some(w) = expected {
                verify_witness(a, b, &w).unwrap();
            }
            compared += 1;
        }
    }
    assert!(compared >= 60, "only {compared} pairs compared, {skipped} skipped");
}

#[test]
fn enumeration_orders_the_one_tower_family() {
    // The maps run from larger index to smaller, and the other way around
    // for the duals; index 0 is the trivial complex in both families.
    let primal: Vec<IotaComplex> = (0..=3u32)
        .map(|i| if i == 0 { IotaComplex::trivial() } else { IotaComplex::make_x(i) })
        .collect();
    let dual: Vec<IotaComplex> = (0..=3u32)
        .map(|i| if i == 0 { IotaComplex::trivial() } else { IotaComplex::make_x_dual(i) })
        .collect();
    for (i, a) in primal.iter().enumerate() {
        for (j, b) in primal.iter().enumerate() {
            let found = oracle::enumerate_local_map(a, b).unwrap().is_some();
            assert_eq!(found, j <= i, "primal family {i} -> {j}");
        }
    }
    for (i, a) in dual.iter().enumerate() {
        for (j, b) in dual.iter().enumerate() {
            let found = oracle::enumerate_local_map(a, b).unwrap().is_some();
            assert_eq!(found, i <= j, "dual family {i} -> {j}");
        }
    }
}

#[test]
fn even_shift_gives_maps_in_one_direction_only() {
    // Lowering the gradings by two leaves room for a U-scaled map into the
    // unshifted model, but nothing maps the other way: every slot would
    // need a negative exponent.
    let x1 = IotaComplex::make_x(1);
    let lowered = x1.shift(gr(2));
    for (a, b, expected) in [(&lowered, &x1, true), (&x1, &lowered, false)] {
        let by_solver = find_local_map(a, b).unwrap().exists();
        let by_enum = oracle::enumerate_local_map(a, b).unwrap().is_some();
        assert_eq!(by_solver, by_enum);
        assert_eq!(by_solver, expected);
    }
}
