//! Complexes with a homotopy involution.
//!
//! An `IotaComplex` pairs a rank-one complex with a grading-preserving chain
//! map `iota` that squares to the identity up to U-equivariant homotopy.
//! Construction checks the cheap structural facts (degree, chain map,
//! localized rank); the homotopy condition is decided by `validate`, which
//! solves `iota^2 + id = dH + Hd` as an F2 linear system and returns the
//! lexicographically least homotopy when one exists.
//!
//! The standard comparison family `X(i)` / `Xdual(i)` lives here, along with
//! tensor products, duals, and shifts of validated pairs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, GradedComplex};
use crate::gf2::System;
use crate::grading::{forced_exponent, gr, Grading};
use crate::monomial::MonomialMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IotaError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("iota is not a chain map")]
    NotChainMap,
    #[error("iota^2 is not homotopic to the identity")]
    NoHomotopy,
    #[error("invalid serialized iota complex: {0}")]
    BadSerialization(String),
}

/// All `(target, source, exponent)` slots a degree-`deg` map from `source`
/// to `target` may occupy; every other entry is forced to vanish by the
/// gradings.
pub fn map_slots(
    target: &GradedComplex,
    source: &GradedComplex,
    deg: i64,
) -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for t in 0..target.len() {
        for s in 0..source.len() {
            if let Some(k) = forced_exponent(target.grading(t), source.grading(s), deg) {
                out.push((t, s, k));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaComplex {
    complex: GradedComplex,
    iota: MonomialMatrix,
}

impl IotaComplex {
    /// Structural checks only: `iota` must be a degree-0 chain map and the
    /// complex must have localized rank 1.  Whether `iota` squares to the
    /// identity up to homotopy is decided separately by [`validate`].
    ///
    /// [`validate`]: IotaComplex::validate
    pub fn new(complex: GradedComplex, iota: MonomialMatrix) -> Result<Self, IotaError> {
        complex.check_map_degree(&complex, &iota, 0)?;
        if !GradedComplex::is_chain_map(&complex, &complex, &iota) {
            return Err(IotaError::NotChainMap);
        }
        complex.homology()?;
        Ok(IotaComplex { complex, iota })
    }

    pub fn complex(&self) -> &GradedComplex {
        &self.complex
    }

    pub fn iota(&self) -> &MonomialMatrix {
        &self.iota
    }

    /// The endomorphism `1 + iota`.
    pub fn omega(&self) -> MonomialMatrix {
        self.iota.add(&MonomialMatrix::identity(self.complex.len()))
    }

    pub fn d_invariant(&self) -> Grading {
        self.complex
            .d_invariant()
            .expect("rank was checked at construction")
    }

    /// Solves `iota^2 + id = dH + Hd` for a degree +1 homotopy `H`, returning
    /// the lexicographically least solution in slot order.
    pub fn validate(&self) -> Result<MonomialMatrix, IotaError> {
        let rhs = self
            .iota
            .compose(&self.iota)
            .add(&MonomialMatrix::identity(self.complex.len()));
        solve_homotopy(&self.complex, &rhs).ok_or(IotaError::NoHomotopy)
    }

    /// The rank-one complex with identity involution.
    pub fn trivial() -> Self {
        IotaComplex::new(GradedComplex::trivial(), MonomialMatrix::identity(1)).unwrap()
    }

    /// `X(i)`: generators `x`, `ix` in grading 0 and `alpha` in grading
    /// `-2i+1` with `d(alpha) = U^i (x + ix)`; the involution swaps `x` and
    /// `ix` and fixes `alpha`.
    pub fn make_x(i: u32) -> Self {
        assert!(i >= 1, "X(i) needs i >= 1");
        let cx = GradedComplex::new(
            vec![
                ("x".into(), gr(0)),
                ("ix".into(), gr(0)),
                ("alpha".into(), gr(-2 * i as i64 + 1)),
            ],
            &[(2, 0, i), (2, 1, i)],
        )
        .unwrap();
        let iota = MonomialMatrix::from_entries([(1, 0, 0), (0, 1, 0), (2, 2, 0)]);
        IotaComplex::new(cx, iota).unwrap()
    }

    /// `Xdual(i)`: generators `xv`, `ixv` in grading 0 and `alphav` in
    /// grading `2i-1` with `d(xv) = d(ixv) = U^i alphav` and the swap
    /// involution.
    pub fn make_x_dual(i: u32) -> Self {
        assert!(i >= 1, "Xdual(i) needs i >= 1");
        let cx = GradedComplex::new(
            vec![
                ("xv".into(), gr(0)),
                ("ixv".into(), gr(0)),
                ("alphav".into(), gr(2 * i as i64 - 1)),
            ],
            &[(0, 2, i), (1, 2, i)],
        )
        .unwrap();
        let iota = MonomialMatrix::from_entries([(1, 0, 0), (0, 1, 0), (2, 2, 0)]);
        IotaComplex::new(cx, iota).unwrap()
    }

    pub fn tensor(a: &IotaComplex, b: &IotaComplex) -> Result<Self, IotaError> {
        let cx = GradedComplex::tensor(&a.complex, &b.complex);
        let bn = b.complex.len();
        let mut iota = MonomialMatrix::zero();
        for (ta, sa, ka) in a.iota.iter() {
            for (tb, sb, kb) in b.iota.iter() {
                iota.toggle(ta * bn + tb, sa * bn + sb, ka + kb);
            }
        }
        IotaComplex::new(cx, iota)
    }

    pub fn dual(&self) -> Self {
        IotaComplex::new(self.complex.dual(), self.iota.transpose())
            .expect("dual of a valid iota complex is valid")
    }

    pub fn shift(&self, delta: Grading) -> Self {
        IotaComplex::new(self.complex.shift(delta), self.iota.clone())
            .expect("shift of a valid iota complex is valid")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.complex.to_json();
        let mut iota: Vec<EntryJson> = self
            .iota
            .iter()
            .map(|(t, s, k)| EntryJson {
                from: self.complex.name(s).to_string(),
                to: self.complex.name(t).to_string(),
                upow: k,
            })
            .collect();
        iota.sort_by(|a, b| a.from.cmp(&b.from).then_with(|| a.to.cmp(&b.to)));
        v["iota"] = serde_json::to_value(iota).unwrap();
        v
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, IotaError> {
        let cx = GradedComplex::from_json(v)?;
        let entries: Vec<EntryJson> = serde_json::from_value(
            v.get("iota")
                .cloned()
                .ok_or_else(|| IotaError::BadSerialization("missing iota entries".into()))?,
        )
        .map_err(|e| IotaError::BadSerialization(e.to_string()))?;
        let mut iota = MonomialMatrix::zero();
        for e in &entries {
            let s = cx
                .index_of(&e.from)
                .ok_or_else(|| IotaError::BadSerialization(format!("unknown `{}`", e.from)))?;
            let t = cx
                .index_of(&e.to)
                .ok_or_else(|| IotaError::BadSerialization(format!("unknown `{}`", e.to)))?;
            iota.toggle(t, s, e.upow);
        }
        IotaComplex::new(cx, iota)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    from: String,
    to: String,
    upow: u32,
}

/// Solves `dH + Hd = rhs` for a degree +1 matrix `H` on a single complex,
/// where `rhs` has degree 0.  Returns the lexicographically least solution
/// in slot order, or `None` when the system is infeasible.
pub fn solve_homotopy(cx: &GradedComplex, rhs: &MonomialMatrix) -> Option<MonomialMatrix> {
    let h_slots = map_slots(cx, cx, 1);
    let var_of: std::collections::BTreeMap<(usize, usize), usize> = h_slots
        .iter()
        .enumerate()
        .map(|(i, &(t, s, _))| ((t, s), i))
        .collect();
    let mut sys = System::new(h_slots.len());
    let d = cx.differential();
    for (t, s, _) in map_slots(cx, cx, 0) {
        let mut vars = Vec::new();
        // (dH)(t,s): mid with d(t,mid) an entry and H(mid,s) a variable.
        for (mid, _) in d.row(t) {
            if let Some(&v) = var_of.get(&(mid, s)) {
                vars.push(v);
            }
        }
        // (Hd)(t,s): mid with d(mid,s) an entry and H(t,mid) a variable.
        for (mid, _) in d.col(s) {
            if let Some(&v) = var_of.get(&(t, mid)) {
                vars.push(v);
            }
        }
        sys.add_equation(&vars, rhs.entry(t, s).is_some());
    }
    // Entries of rhs at slots outside the degree-0 pattern cannot exist for
    // a homogeneous rhs, but guard against garbage input.
    for (t, s, _) in rhs.iter() {
        if forced_exponent(cx.grading(t), cx.grading(s), 0).is_none() {
            return None;
        }
    }
    let sol = sys.solve_lex_min()?;
    let mut h = MonomialMatrix::zero();
    for (i, &(t, s, k)) in h_slots.iter().enumerate() {
        if sol[i] {
            h.toggle(t, s, k);
        }
    }
    Some(h)
}
