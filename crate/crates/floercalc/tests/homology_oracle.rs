//! Cross-checks the exact homology description against an independent plain
//! F2 computation on the truncated complexes C / U^N.
//!
//! The oracle flattens a complex to a finite dimensional F2 complex with
//! basis U^j x for 0 <= j < N and computes graded homology dimensions by
//! Gaussian rank, sharing no code with the exact elimination.  The expected
//! dimensions come from the structure theorem: writing the homology as one
//! free tower based in grading g0 plus torsion summands (t, k), the long
//! exact sequence of 0 -> C -> C -> C/U^N -> 0 gives
//!
//!   dim H_g(C/U^N) = |{j < N : g = g0 - 2j}|
//!                  + |{(t, k), j < min(k, N) : g = t - 2j}|
//!                  + |{(t, k), k - min(k, N) <= a < k : g = t + 1 - 2N - 2a}|
//!
//! where the last group is the connecting-map image of the U^N kernel.

use std::collections::BTreeMap;

use floercalc::complex::{GradedComplex, HomologyDescription};
use floercalc::grading::{gr, Grading};
use floercalc::iota::IotaComplex;
use floercalc::knot::lattice::LatticeCfk;
use floercalc::knot::staircase::Staircase;
use floercalc::knot::KnotExpr;
use floercalc::surgery::{model_for, surgery_class};

/// F2 row eliminator over bit-packed vectors, local to the oracle.
struct Gauss {
    rows: Vec<Vec<u64>>,
}

impl Gauss {
    fn new() -> Gauss {
        Gauss { rows: Vec::new() }
    }

    /// Reduces `v` against the stored rows; if nonzero it joins the basis
    /// and the rank grows by one.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        for row in &self.rows {
            let pivot = leading_bit(row).unwrap();
            if get_bit(&v, pivot) {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        if v.iter().all(|&w| w == 0) {
            return false;
        }
        self.rows.push(v);
        true
    }
}

fn get_bit(v: &[u64], i: usize) -> bool {
    v[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(v: &mut [u64], i: usize) {
    v[i / 64] ^= 1 << (i % 64);
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    for (w, &word) in v.iter().enumerate() {
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

/// Graded homology dimensions of C / U^N computed over plain F2.
fn truncated_dims(cx: &GradedComplex, n: u32) -> BTreeMap<Grading, usize> {
    let n = n as usize;
    let basis = cx.len() * n;
    let words = basis / 64 + 1;
    let index = |gen: usize, pow: usize| gen * n + pow;
    let grading = |gen: usize, pow: usize| cx.grading(gen) - gr(2 * pow as i64);

    // Boundary image of each basis element, grouped by source grading.
    let mut counts: BTreeMap<Grading, usize> = BTreeMap::new();
    let mut images: BTreeMap<Grading, Vec<Vec<u64>>> = BTreeMap::new();
    for gen in 0..cx.len() {
        for pow in 0..n {
            let g = grading(gen, pow);
            *counts.entry(g).or_insert(0) += 1;
            let mut image = vec![0u64; words];
            for (tgt, k) in cx.differential().col(gen) {
                let shifted = pow + k as usize;
                if shifted < n {
                    set_bit(&mut image, index(tgt, shifted));
                }
            }
            images.entry(g).or_default().push(image);
        }
    }

    let mut rank_out: BTreeMap<Grading, usize> = BTreeMap::new();
    for (g, vectors) in images {
        let mut gauss = Gauss::new();
        let mut rank = 0;
        for v in vectors {
            if gauss.insert(v) {
                rank += 1;
            }
        }
        rank_out.insert(g, rank);
    }

    let mut dims = BTreeMap::new();
    for (&g, &count) in &counts {
        let kernel = count - rank_out.get(&g).copied().unwrap_or(0);
        let image_in = rank_out.get(&(g + gr(1))).copied().unwrap_or(0);
        let dim = kernel - image_in;
        if dim > 0 {
            dims.insert(g, dim);
        }
    }
    dims
}

/// Graded dimensions predicted by the exact homology description.
fn expected_dims(h: &HomologyDescription, n: u32) -> BTreeMap<Grading, usize> {
    let mut dims: BTreeMap<Grading, usize> = BTreeMap::new();
    for j in 0..n {
        *dims.entry(h.tower_grading - gr(2 * i64::from(j))).or_insert(0) += 1;
    }
    for &(t, k) in &h.torsion {
        let kappa = k.min(n);
        for j in 0..kappa {
            *dims.entry(t - gr(2 * i64::from(j))).or_insert(0) += 1;
        }
        for a in (k - kappa)..k {
            let g = t + gr(1) - gr(2 * i64::from(n)) - gr(2 * i64::from(a));
            *dims.entry(g).or_insert(0) += 1;
        }
    }
    dims
}

fn check(label: &str, cx: &GradedComplex) {
    let h = cx.homology().expect("fixture has one tower");
    for n in [8u32, 16] {
        assert_eq!(
            truncated_dims(cx, n),
            expected_dims(&h, n),
            "truncation mismatch for {label} at N = {n}"
        );
    }
}

#[test]
fn standard_models_match_truncation_oracle() {
    check("trivial", IotaComplex::trivial().complex());
    for i in [1u32, 2, 4] {
        check(&format!("x{i}"), IotaComplex::make_x(i).complex());
        check(&format!("x{i} dual"), IotaComplex::make_x_dual(i).complex());
    }
}

#[test]
fn tensor_models_match_truncation_oracle() {
    let x1 = IotaComplex::make_x(1);
    let x2d = IotaComplex::make_x_dual(2);
    check("x1 (x) x2 dual", &GradedComplex::tensor(x1.complex(), x2d.complex()));
    check("x2d (x) x2d", &GradedComplex::tensor(x2d.complex(), x2d.complex()));
}

#[test]
fn knot_truncations_match_oracle() {
    let trefoil = Staircase::from_exponents(&[1, 0, -1]);
    let t34 = Staircase::from_exponents(&[3, 2, 0, -2, -3]);
    for sc in [&trefoil, &t34] {
        let model = LatticeCfk::from_staircase(sc);
        for s in -1..=2 {
            check(&format!("A_{s}"), &model.a_complex(s));
        }
        check("B", &model.b_complex());
    }
}

#[test]
fn surgery_classes_match_oracle() {
    let doubled: KnotExpr = "T(2,3) + T(2,3)".parse().unwrap();
    let model = model_for(&doubled).unwrap();
    let class = surgery_class(&model, 1, 2, "doubled trefoil").unwrap();
    check("half surgery cone", class.class.complex());

    let thin: KnotExpr = "thin(-2)".parse().unwrap();
    let model = model_for(&thin).unwrap();
    let class = surgery_class(&model, 3, 1, "negative thin").unwrap();
    check("odd surgery class", class.class.complex());
}
