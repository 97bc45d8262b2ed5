//! Bifiltered knot complexes at desk scale.
//!
//! A `LatticeCfk` is a finite free model of a knot complex: generators carry
//! an Alexander and a Maslov grading, and arrows carry the two filtration
//! drops `(di, dj)`, meaning the translate `[x, i, j]` maps to
//! `[y, i - di, j - dj]`.  From this the large-surgery truncations are
//! extracted directly: `A_s` keeps the translate of each generator topped at
//! `i = min(0, s - A)`, `B` the one topped at `i = 0`, and the comparison
//! map `v` is diagonal with exponent `max(0, A - s)`.  The involution is
//! recorded on the `A_0` tops, where the models used here (staircases, thin
//! classes with or without a clasp correction) admit exponent-zero entries.

use thiserror::Error;

use super::staircase::{StairError, Staircase};
use crate::complex::{ComplexError, GradedComplex};
use crate::grading::gr;
use crate::iota::{IotaComplex, IotaError};
use crate::monomial::MonomialMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("generator index {0} out of range")]
    BadIndex(usize),
    #[error("arrow {0} -> {1} violates the grading or filtration laws")]
    BadArrow(String, String),
    #[error("differential does not square to zero")]
    NotADifferential,
    #[error("model carries no involution data")]
    NoInvolution,
    #[error("a clasp correction needs a staircase, not the unknot")]
    BoxNeedsStaircase,
    #[error("image of the tower class missed the target tower")]
    TowerMiss,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Iota(#[from] IotaError),
    #[error(transparent)]
    Stair(#[from] StairError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCfk {
    names: Vec<String>,
    alex: Vec<i64>,
    maslov: Vec<i64>,
    /// `(src, tgt, di, dj)`.
    arrows: Vec<(usize, usize, u32, u32)>,
    /// Involution on the `A_0` tops as `(target, source)` pairs, exponent 0.
    iota_tops: Option<Vec<(usize, usize)>>,
}

impl LatticeCfk {
    pub fn new(
        gens: Vec<(String, i64, i64)>,
        arrows: Vec<(usize, usize, u32, u32)>,
        iota_tops: Option<Vec<(usize, usize)>>,
    ) -> Result<Self, LatticeError> {
        let names: Vec<String> = gens.iter().map(|g| g.0.clone()).collect();
        let alex: Vec<i64> = gens.iter().map(|g| g.1).collect();
        let maslov: Vec<i64> = gens.iter().map(|g| g.2).collect();
        for &(s, t, di, dj) in &arrows {
            if s >= names.len() || t >= names.len() {
                return Err(LatticeError::BadIndex(s.max(t)));
            }
            let ok = alex[t] == alex[s] + di as i64 - dj as i64
                && maslov[t] == maslov[s] - 1 + 2 * di as i64;
            if !ok {
                return Err(LatticeError::BadArrow(names[s].clone(), names[t].clone()));
            }
        }
        if let Some(tops) = &iota_tops {
            for &(t, s) in tops {
                if s >= names.len() || t >= names.len() {
                    return Err(LatticeError::BadIndex(s.max(t)));
                }
            }
        }
        // d^2 = 0 with full (di, dj) bookkeeping: every composite offset must
        // occur an even number of times.
        let mut composites = std::collections::BTreeMap::new();
        for &(s1, t1, di1, dj1) in &arrows {
            for &(s2, t2, di2, dj2) in &arrows {
                if t1 == s2 {
                    *composites
                        .entry((s1, t2, di1 + di2, dj1 + dj2))
                        .or_insert(0u32) += 1;
                }
            }
        }
        if composites.values().any(|&c| c % 2 != 0) {
            return Err(LatticeError::NotADifferential);
        }
        Ok(LatticeCfk {
            names,
            alex,
            maslov,
            arrows,
            iota_tops,
        })
    }

    pub fn unknot() -> Self {
        LatticeCfk::new(
            vec![("u".into(), 0, 0)],
            vec![],
            Some(vec![(0, 0)]),
        )
        .unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn alexander(&self, i: usize) -> i64 {
        self.alex[i]
    }

    pub fn maslov(&self, i: usize) -> i64 {
        self.maslov[i]
    }

    /// Model of a positive staircase, with the reflection involution.  The
    /// corner generators (odd indices) map to both neighbors with step-length
    /// filtration drops.
    pub fn from_staircase(sc: &Staircase) -> Self {
        let gens: Vec<(String, i64, i64)> = sc
            .gens()
            .iter()
            .enumerate()
            .map(|(i, &(a, m))| (format!("w{i}"), a, m))
            .collect();
        let n = gens.len();
        let mut arrows = Vec::new();
        for i in (1..n).step_by(2) {
            let left = (sc.gens()[i - 1].0 - sc.gens()[i].0) as u32;
            let right = (sc.gens()[i].0 - sc.gens()[i + 1].0) as u32;
            arrows.push((i, i - 1, left, 0));
            arrows.push((i, i + 1, 0, right));
        }
        let iota = (0..n).map(|m| (n - 1 - m, m)).collect();
        LatticeCfk::new(gens, arrows, Some(iota)).expect("staircase models are valid")
    }

    /// Mirror model: gradings negate, arrows and the involution transpose.
    pub fn mirror(&self) -> Self {
        let gens = self
            .names
            .iter()
            .zip(self.alex.iter().zip(&self.maslov))
            .map(|(n, (&a, &m))| (n.clone(), -a, -m))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t, di, dj)| (t, s, di, dj))
            .collect();
        let iota = self
            .iota_tops
            .as_ref()
            .map(|tops| tops.iter().map(|&(t, s)| (s, t)).collect());
        LatticeCfk::new(gens, arrows, iota).expect("mirror of a valid model is valid")
    }

    /// Thin model of a knot (or its self-sum) from the signature of its
    /// concordance class: effective tau, plus an optional clasp square.
    ///
    /// For negative effective tau the staircase opens to the north-east:
    /// generators `y0 .. y{2h}` with `A = h - m`, `M = 2h - m`, even indices
    /// the corners.  The clasp square `d, c, cp, e` sits on the same
    /// diagonal, with the involution corrections sending `d` across the
    /// square and tying `c, cp` to the staircase neighbors of the middle.
    /// Positive effective tau is the mirror.
    pub fn thin_model(tau: i64, has_box: bool, selfsum: bool) -> Result<Self, LatticeError> {
        let tau_eff = if selfsum { 2 * tau } else { tau };
        if tau_eff == 0 {
            if has_box {
                return Err(LatticeError::BoxNeedsStaircase);
            }
            return Ok(LatticeCfk::unknot());
        }
        if tau_eff > 0 {
            return Ok(Self::thin_model(-tau, has_box, selfsum)?.mirror());
        }
        let h = -tau_eff;
        let mut gens: Vec<(String, i64, i64)> = (0..=2 * h)
            .map(|m| (format!("y{m}"), h - m, 2 * h - m))
            .collect();
        let mut arrows = Vec::new();
        for j in 0..=h {
            let src = (2 * j) as usize;
            if 2 * j >= 1 {
                arrows.push((src, src - 1, 1u32, 0u32));
            }
            if 2 * j + 1 <= 2 * h {
                arrows.push((src, src + 1, 0, 1));
            }
        }
        let last = (2 * h) as usize;
        let mid = h as usize;
        let mut iota: Vec<(usize, usize)> = (0..=last).map(|m| (last - m, m)).collect();
        if has_box {
            let d = gens.len();
            gens.push(("d".into(), 0, h));
            let c = gens.len();
            gens.push(("c".into(), 1, h + 1));
            let cp = gens.len();
            gens.push(("cp".into(), -1, h - 1));
            let e = gens.len();
            gens.push(("e".into(), 0, h));
            arrows.push((d, c, 1, 0));
            arrows.push((d, cp, 0, 1));
            arrows.push((c, e, 0, 1));
            arrows.push((cp, e, 1, 0));
            iota.push((d, d));
            iota.push((mid, d));
            iota.push((e, mid));
            iota.push((cp, c));
            iota.push((mid + 1, c));
            iota.push((c, cp));
            iota.push((mid - 1, cp));
            iota.push((e, e));
        }
        LatticeCfk::new(gens, arrows, Some(iota))
    }

    /// Connected-sum model: gradings add, arrows act factorwise.  The
    /// involution data is dropped because the involution of a sum is not the
    /// product of the factor reflections.
    pub fn tensor(a: &LatticeCfk, b: &LatticeCfk) -> Self {
        let bn = b.len();
        let idx = |i: usize, j: usize| i * bn + j;
        let mut gens = Vec::with_capacity(a.len() * bn);
        for i in 0..a.len() {
            for j in 0..bn {
                gens.push((
                    format!("{}|{}", a.names[i], b.names[j]),
                    a.alex[i] + b.alex[j],
                    a.maslov[i] + b.maslov[j],
                ));
            }
        }
        let mut arrows = Vec::new();
        for &(s, t, di, dj) in &a.arrows {
            for j in 0..bn {
                arrows.push((idx(s, j), idx(t, j), di, dj));
            }
        }
        for &(s, t, di, dj) in &b.arrows {
            for i in 0..a.len() {
                arrows.push((idx(i, s), idx(i, t), di, dj));
            }
        }
        LatticeCfk::new(gens, arrows, None).expect("sum of valid models is valid")
    }

    fn a_top(&self, i: usize, s: i64) -> i64 {
        0.min(s - self.alex[i])
    }

    /// Large-surgery truncation at level `s`.
    pub fn a_complex(&self, s: i64) -> GradedComplex {
        let gens = (0..self.len())
            .map(|i| {
                (
                    self.names[i].clone(),
                    gr(self.maslov[i] + 2 * self.a_top(i, s)),
                )
            })
            .collect();
        let entries: Vec<(usize, usize, u32)> = self
            .arrows
            .iter()
            .map(|&(src, tgt, di, _)| {
                let k = self.a_top(tgt, s) - self.a_top(src, s) + di as i64;
                debug_assert!(k >= 0);
                (src, tgt, k as u32)
            })
            .collect();
        GradedComplex::new(gens, &entries).expect("truncation of a valid model is valid")
    }

    /// The untruncated-in-`j` complex: tops at `i = 0`.
    pub fn b_complex(&self) -> GradedComplex {
        let gens = (0..self.len())
            .map(|i| (self.names[i].clone(), gr(self.maslov[i])))
            .collect();
        let entries: Vec<(usize, usize, u32)> = self
            .arrows
            .iter()
            .map(|&(src, tgt, di, _)| (src, tgt, di))
            .collect();
        GradedComplex::new(gens, &entries).expect("truncation of a valid model is valid")
    }

    /// The diagonal comparison map `v : A_s -> B`.
    pub fn v_matrix(&self, s: i64) -> MonomialMatrix {
        MonomialMatrix::from_entries(
            (0..self.len()).map(|i| (i, i, 0.max(self.alex[i] - s) as u32)),
        )
    }

    /// Exponent by which `v` scales the tower: `[v(tower of A_s)] = U^{V_s}
    /// [tower of B]`.
    pub fn v_s(&self, s: i64) -> Result<u32, LatticeError> {
        let ra = self.a_complex(s).reduce();
        let rb = self.b_complex().reduce();
        let tower_a = ra.tower_cycle().ok_or(LatticeError::TowerMiss)?;
        let free_b = *match rb.free.as_slice() {
            [f] => f,
            _ => return Err(LatticeError::TowerMiss),
        };
        let image = rb.to_final(&self.v_matrix(s).apply(&tower_a));
        image
            .get(&free_b)
            .copied()
            .ok_or(LatticeError::TowerMiss)
    }

    /// The level-0 truncation together with its involution.
    pub fn a0_iota_complex(&self) -> Result<IotaComplex, LatticeError> {
        let tops = self.iota_tops.as_ref().ok_or(LatticeError::NoInvolution)?;
        let iota = MonomialMatrix::from_entries(tops.iter().map(|&(t, s)| (t, s, 0)));
        Ok(IotaComplex::new(self.a_complex(0), iota)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::alexander::AlexPoly;

    fn torus_model(p: i64, q: i64) -> LatticeCfk {
        LatticeCfk::from_staircase(
            &Staircase::from_alexander(&AlexPoly::torus(p, q)).unwrap(),
        )
    }

    #[test]
    fn unknot_model() {
        let u = LatticeCfk::unknot();
        assert_eq!(u.v_s(0).unwrap(), 0);
        let ic = u.a0_iota_complex().unwrap();
        assert!(ic.validate().unwrap().is_zero());
        assert_eq!(ic.d_invariant(), gr(0));
    }

    #[test]
    fn trefoil_truncations() {
        let k = torus_model(2, 3);
        assert_eq!(k.b_complex().homology().unwrap().tower_grading, gr(0));
        assert_eq!(k.v_s(0).unwrap(), 1);
        assert_eq!(k.v_s(1).unwrap(), 0);
        assert_eq!(k.v_s(5).unwrap(), 0);
        let ic = k.a0_iota_complex().unwrap();
        assert!(ic.validate().is_ok());
        assert_eq!(ic.d_invariant(), gr(-2));
    }

    #[test]
    fn torus_3_4_v_values() {
        let k = torus_model(3, 4);
        // V_0 = 1 from the alternating sum; sandwich V_0 - s <= V_s <= V_0.
        assert_eq!(k.v_s(0).unwrap(), 1);
        let v0 = k.v_s(0).unwrap() as i64;
        for s in 0..=4 {
            let vs = k.v_s(s).unwrap() as i64;
            assert!(v0 - s <= vs && vs <= v0);
        }
        assert_eq!(k.v_s(4).unwrap(), 0);
    }

    #[test]
    fn mirror_has_zero_v() {
        let k = torus_model(2, 3).mirror();
        assert_eq!(k.v_s(0).unwrap(), 0);
        let ic = k.a0_iota_complex().unwrap();
        assert!(ic.validate().is_ok());
        assert_eq!(ic.d_invariant(), gr(0));
    }

    #[test]
    fn negative_thin_model_shape() {
        // Effective tau -2: north-east staircase with five generators.
        let k = LatticeCfk::thin_model(-1, false, true).unwrap();
        assert_eq!(k.len(), 5);
        let expected: Vec<(i64, i64)> = (0..=4).map(|m| (2 - m, 4 - m)).collect();
        let actual: Vec<(i64, i64)> = (0..5).map(|i| (k.alexander(i), k.maslov(i))).collect();
        assert_eq!(actual, expected);
        // Matches the mirror of the positive step-one staircase.
        let m = LatticeCfk::from_staircase(&Staircase::from_tau(2).unwrap()).mirror();
        let a = k.a_complex(0).homology().unwrap();
        let b = m.a_complex(0).homology().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.tower_grading, gr(0));
        assert_eq!(a.torsion, vec![(gr(1), 1)]);
    }

    #[test]
    fn positive_thin_selfsum_v_grid() {
        // Self-sum with companion tau 2: V_s = 2 - floor(s/2) clamped at 0.
        let k = LatticeCfk::thin_model(2, false, true).unwrap();
        for s in 0..=6i64 {
            let expected = (2 - s.div_euclid(2)).max(0) as u32;
            assert_eq!(k.v_s(s).unwrap(), expected, "s = {s}");
        }
    }

    #[test]
    fn thin_iota_validates_with_and_without_box() {
        for tau in [-2i64, -1, 1, 2] {
            for has_box in [false, true] {
                let k = LatticeCfk::thin_model(tau, has_box, true).unwrap();
                let ic = k.a0_iota_complex().unwrap();
                ic.validate().unwrap_or_else(|e| {
                    panic!("tau {tau}, box {has_box}: {e}");
                });
            }
        }
    }

    #[test]
    fn box_changes_nothing_for_v() {
        let plain = LatticeCfk::thin_model(-1, false, true).unwrap();
        let boxed = LatticeCfk::thin_model(-1, true, true).unwrap();
        for s in 0..=4 {
            assert_eq!(plain.v_s(s).unwrap(), boxed.v_s(s).unwrap());
        }
    }

    #[test]
    fn tau_zero_cases() {
        assert!(LatticeCfk::thin_model(0, false, true).is_ok());
        assert_eq!(
            LatticeCfk::thin_model(0, true, true).unwrap_err(),
            LatticeError::BoxNeedsStaircase
        );
    }

    #[test]
    fn tensor_matches_minimax_v0() {
        use crate::knot::staircase::bl_v0;
        let t23 = Staircase::from_alexander(&AlexPoly::torus(2, 3)).unwrap();
        let t34 = Staircase::from_alexander(&AlexPoly::torus(3, 4)).unwrap();
        let pair = LatticeCfk::tensor(
            &LatticeCfk::from_staircase(&t23),
            &LatticeCfk::from_staircase(&t34),
        );
        assert_eq!(pair.v_s(0).unwrap(), bl_v0(&[&t23, &t34]).unwrap());
        assert_eq!(pair.v_s(0).unwrap(), 2);
        // Trefoil with its mirror: slice-like totals.
        let zero = LatticeCfk::tensor(
            &LatticeCfk::from_staircase(&t23),
            &LatticeCfk::from_staircase(&t23).mirror(),
        );
        assert_eq!(zero.v_s(0).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_arrows() {
        let err = LatticeCfk::new(
            vec![("a".into(), 1, 0), ("b".into(), 0, 0)],
            vec![(0, 1, 1, 0)],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::BadArrow(_, _)));
    }
}
