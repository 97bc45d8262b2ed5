//! Existence of local maps between iota complexes.
//!
//! A local map `f : A -> B` is a grading-preserving `F2[U]`-equivariant chain
//! map that commutes with the involutions up to a degree +1 homotopy `H` and
//! induces an isomorphism after inverting `U`.  Everything here is decided
//! exactly: the unknown entries of `f` and `H` occupy the finitely many slots
//! allowed by the gradings, the chain-map and equivariance conditions are
//! F2-linear in those entries, and the localization condition pins the
//! affine coset where the induced map on the `U`-tower is nonzero.  So the
//! whole decision is one affine system over F2, solved for the
//! lexicographically least witness.
//!
//! The `oracle` submodule re-decides existence by brute force, enumerating
//! every degree-0 matrix and testing each candidate directly; tests compare
//! the two routes on small inputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, GradedComplex};
use crate::gf2::System;
use crate::grading::{same_coset, Grading};
use crate::iota::{map_slots, IotaComplex};
use crate::monomial::MonomialMatrix;

/// Default ceiling on `|A| * |B|` for the solver.
pub const DEFAULT_GUARD: usize = 50_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocalError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("gradings admit no degree-0 map at all")]
    GradingCosetMismatch,
    #[error("search size {cells} generator pairs exceeds the guard {guard}")]
    SearchTooLarge { cells: usize, guard: usize },
    #[error("witness verification failed: {0}")]
    VerificationFailed(String),
    #[error("certificate needs at least two strictly increasing indices")]
    EmptySelection,
}

/// A verified or candidate local map: `f` has degree 0, `h` degree +1, and
/// together they satisfy `d f = f d`, `f i_A + i_B f = d h + h d`, and `f`
/// hits the `U`-tower of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMapWitness {
    pub f: MonomialMatrix,
    pub h: MonomialMatrix,
}

/// Outcome of the solver: either a witness or a definite refusal (the affine
/// system is infeasible, so no local map exists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Witness(LocalMapWitness),
    Infeasible,
}

impl Decision {
    pub fn witness(self) -> Option<LocalMapWitness> {
        match self {
            Decision::Witness(w) => Some(w),
            Decision::Infeasible => None,
        }
    }

    pub fn exists(&self) -> bool {
        matches!(self, Decision::Witness(_))
    }
}

pub fn find_local_map(a: &IotaComplex, b: &IotaComplex) -> Result<Decision, LocalError> {
    find_local_map_guarded(a, b, DEFAULT_GUARD)
}

pub fn find_local_map_guarded(
    a: &IotaComplex,
    b: &IotaComplex,
    guard: usize,
) -> Result<Decision, LocalError> {
    let ca = a.complex();
    let cb = b.complex();
    let cells = ca.len() * cb.len();
    if cells > guard {
        return Err(LocalError::SearchTooLarge { cells, guard });
    }
    let f_slots = map_slots(cb, ca, 0);
    if f_slots.is_empty() {
        // No degree-0 slot at all: either the gradings are not comparable,
        // or they are but every candidate exponent is negative.  The latter
        // forces f = 0, which never localizes.
        if same_coset(ca.grading(0), cb.grading(0)) {
            return Ok(Decision::Infeasible);
        }
        return Err(LocalError::GradingCosetMismatch);
    }
    let h_slots = map_slots(cb, ca, 1);
    let f_var: BTreeMap<(usize, usize), usize> = f_slots
        .iter()
        .enumerate()
        .map(|(i, &(t, s, _))| ((t, s), i))
        .collect();
    let h_var: BTreeMap<(usize, usize), usize> = h_slots
        .iter()
        .enumerate()
        .map(|(i, &(t, s, _))| ((t, s), f_slots.len() + i))
        .collect();
    let mut sys = System::new(f_slots.len() + h_slots.len());
    let da = ca.differential();
    let db = cb.differential();

    // d_B f + f d_A = 0, slot by slot in degree -1.
    for (t, s, _) in map_slots(cb, ca, -1) {
        let mut vars = Vec::new();
        for (mid, _) in db.row(t) {
            if let Some(&v) = f_var.get(&(mid, s)) {
                vars.push(v);
            }
        }
        for (mid, _) in da.col(s) {
            if let Some(&v) = f_var.get(&(t, mid)) {
                vars.push(v);
            }
        }
        sys.add_equation(&vars, false);
    }

    // f i_A + i_B f + d_B h + h d_A = 0, slot by slot in degree 0.
    for &(t, s, _) in &f_slots {
        let mut vars = Vec::new();
        for (mid, _) in a.iota().col(s) {
            if let Some(&v) = f_var.get(&(t, mid)) {
                vars.push(v);
            }
        }
        for (mid, _) in b.iota().row(t) {
            if let Some(&v) = f_var.get(&(mid, s)) {
                vars.push(v);
            }
        }
        for (mid, _) in db.row(t) {
            if let Some(&v) = h_var.get(&(mid, s)) {
                vars.push(v);
            }
        }
        for (mid, _) in da.col(s) {
            if let Some(&v) = h_var.get(&(t, mid)) {
                vars.push(v);
            }
        }
        sys.add_equation(&vars, false);
    }

    // Localization: the coefficient of the target tower class in [f(tower of
    // A)] must be 1.  All contributions share one forced exponent, so the
    // condition is a single F2 equation over the f entries.
    let ra = ca.reduce();
    let rb = cb.reduce();
    let tower_a = ra.tower_cycle().expect("rank checked at construction");
    let functional = rb
        .tower_functional_row()
        .expect("rank checked at construction");
    let mut vars = Vec::new();
    for &t in &functional {
        for &s in tower_a.keys() {
            if let Some(&v) = f_var.get(&(t, s)) {
                vars.push(v);
            }
        }
    }
    sys.add_equation(&vars, true);

    match sys.solve_lex_min() {
        None => Ok(Decision::Infeasible),
        Some(sol) => {
            let mut f = MonomialMatrix::zero();
            for (i, &(t, s, k)) in f_slots.iter().enumerate() {
                if sol[i] {
                    f.toggle(t, s, k);
                }
            }
            let mut h = MonomialMatrix::zero();
            for (i, &(t, s, k)) in h_slots.iter().enumerate() {
                if sol[f_slots.len() + i] {
                    h.toggle(t, s, k);
                }
            }
            let w = LocalMapWitness { f, h };
            debug_assert!(verify_witness(a, b, &w).is_ok());
            Ok(Decision::Witness(w))
        }
    }
}

/// Re-checks every condition of a witness from scratch.
pub fn verify_witness(
    a: &IotaComplex,
    b: &IotaComplex,
    w: &LocalMapWitness,
) -> Result<(), LocalError> {
    let ca = a.complex();
    let cb = b.complex();
    cb.check_map_degree(ca, &w.f, 0)?;
    cb.check_map_degree(ca, &w.h, 1)?;
    if cb.differential().compose(&w.f) != w.f.compose(ca.differential()) {
        return Err(LocalError::VerificationFailed("f is not a chain map".into()));
    }
    let lhs = w.f.compose(a.iota()).add(&b.iota().compose(&w.f));
    let rhs = cb
        .differential()
        .compose(&w.h)
        .add(&w.h.compose(ca.differential()));
    if lhs != rhs {
        return Err(LocalError::VerificationFailed(
            "f does not intertwine the involutions up to h".into(),
        ));
    }
    let ra = ca.reduce();
    let rb = cb.reduce();
    let tower_a = ra.tower_cycle().expect("rank checked at construction");
    let image = w.f.apply(&tower_a);
    if !rb.has_tower_component(&image) {
        return Err(LocalError::VerificationFailed(
            "f kills the tower class".into(),
        ));
    }
    Ok(())
}

/// Transposes a witness `A -> B` into a witness `B^ -> A^` between the dual
/// complexes.
pub fn dualize_witness(w: &LocalMapWitness) -> LocalMapWitness {
    LocalMapWitness {
        f: w.f.transpose(),
        h: w.h.transpose(),
    }
}

/// One-sided order: equal correction terms and a local map from `a` to `b`.
pub fn leq(a: &IotaComplex, b: &IotaComplex) -> Result<bool, LocalError> {
    if a.d_invariant() != b.d_invariant() {
        return Ok(false);
    }
    Ok(find_local_map(a, b)?.exists())
}

/// Local maps in both directions.
pub fn locally_equivalent(a: &IotaComplex, b: &IotaComplex) -> Result<bool, LocalError> {
    Ok(find_local_map(a, b)?.exists() && find_local_map(b, a)?.exists())
}

/// One verified comparison `class -> X(index)[shift]`, labeled for reports.
#[derive(Clone, Debug)]
pub struct CertificateEntry {
    pub label: String,
    pub index: u32,
    pub shift: Grading,
    pub witness: LocalMapWitness,
}

/// A strictly increasing chain of comparison indices.  Distinct indices give
/// independent classes, so the selection length is a rank lower bound.
#[derive(Clone, Debug)]
pub struct RankCertificate {
    pub entries: Vec<CertificateEntry>,
    /// Positions into `entries`, in increasing index order.
    pub selected: Vec<usize>,
}

impl RankCertificate {
    pub fn rank_bound(&self) -> usize {
        self.selected.len()
    }

    pub fn selected_indices(&self) -> Vec<u32> {
        self.selected
            .iter()
            .map(|&i| self.entries[i].index)
            .collect()
    }
}

/// Greedy selection of one entry per distinct index, ascending.  Errors when
/// fewer than two distinct indices are available, since a single index
/// certifies nothing beyond rank one.
pub fn build_certificate(entries: Vec<CertificateEntry>) -> Result<RankCertificate, LocalError> {
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by(|&i, &j| {
        entries[i]
            .index
            .cmp(&entries[j].index)
            .then_with(|| entries[i].label.cmp(&entries[j].label))
    });
    let mut selected = Vec::new();
    let mut last: Option<u32> = None;
    for i in order {
        if last.is_none_or(|l| entries[i].index > l) {
            last = Some(entries[i].index);
            selected.push(i);
        }
    }
    if selected.len() < 2 {
        return Err(LocalError::EmptySelection);
    }
    Ok(RankCertificate { entries, selected })
}

#[derive(Serialize, Deserialize)]
struct WitnessEntryJson {
    from: String,
    to: String,
    upow: u32,
}

/// Serializes a witness with generator names resolved against its endpoints.
pub fn witness_to_json(
    a: &IotaComplex,
    b: &IotaComplex,
    w: &LocalMapWitness,
    verified: bool,
) -> serde_json::Value {
    let encode = |m: &MonomialMatrix| {
        let mut v: Vec<WitnessEntryJson> = m
            .iter()
            .map(|(t, s, k)| WitnessEntryJson {
                from: a.complex().name(s).to_string(),
                to: b.complex().name(t).to_string(),
                upow: k,
            })
            .collect();
        v.sort_by(|x, y| x.from.cmp(&y.from).then_with(|| x.to.cmp(&y.to)));
        serde_json::to_value(v).unwrap()
    };
    serde_json::json!({
        "f": encode(&w.f),
        "H": encode(&w.h),
        "verified": verified,
    })
}

pub mod oracle {
    //! Brute-force re-decision of local-map existence.
    //!
    //! Enumerates every degree-0 monomial matrix `f` slot mask, filters by
    //! the chain-map identity and the tower condition by direct computation,
    //! and then solves for an equivariance homotopy with its own equation
    //! assembly.  Deliberately shares no code with the solver beyond the raw
    //! F2 eliminator and the homology engine.

    use super::*;
    use crate::grading::forced_exponent;

    /// Hard cap on enumerated slots; 2^14 candidates is where "desk scale"
    /// ends.
    pub const MAX_BITS: usize = 14;

    pub fn enumerate_local_map(
        a: &IotaComplex,
        b: &IotaComplex,
    ) -> Result<Option<LocalMapWitness>, LocalError> {
        let ca = a.complex();
        let cb = b.complex();
        let mut f_slots = Vec::new();
        for s in 0..ca.len() {
            for t in 0..cb.len() {
                if let Some(k) = forced_exponent(cb.grading(t), ca.grading(s), 0) {
                    f_slots.push((t, s, k));
                }
            }
        }
        if f_slots.len() > MAX_BITS {
            return Err(LocalError::SearchTooLarge {
                cells: 1usize << f_slots.len().min(63),
                guard: 1usize << MAX_BITS,
            });
        }
        let da = ca.differential();
        let db = cb.differential();
        let ra = ca.reduce();
        let rb = cb.reduce();
        let tower_a = ra.tower_cycle().expect("rank checked at construction");
        for mask in 0u64..(1u64 << f_slots.len()) {
            let mut f = MonomialMatrix::zero();
            for (i, &(t, s, k)) in f_slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    f.toggle(t, s, k);
                }
            }
            if db.compose(&f) != f.compose(da) {
                continue;
            }
            if !rb.has_tower_component(&f.apply(&tower_a)) {
                continue;
            }
            let rhs = f.compose(a.iota()).add(&b.iota().compose(&f));
            if let Some(h) = solve_equivariance_homotopy(cb, ca, &rhs) {
                return Ok(Some(LocalMapWitness { f, h }));
            }
        }
        Ok(None)
    }

    /// Solves `d_B h + h d_A = rhs` for a degree +1 matrix `h`.
    fn solve_equivariance_homotopy(
        cb: &GradedComplex,
        ca: &GradedComplex,
        rhs: &MonomialMatrix,
    ) -> Option<MonomialMatrix> {
        let mut h_slots = Vec::new();
        for s in 0..ca.len() {
            for t in 0..cb.len() {
                if let Some(k) = forced_exponent(cb.grading(t), ca.grading(s), 1) {
                    h_slots.push((t, s, k));
                }
            }
        }
        let var: BTreeMap<(usize, usize), usize> = h_slots
            .iter()
            .enumerate()
            .map(|(i, &(t, s, _))| ((t, s), i))
            .collect();
        let mut sys = System::new(h_slots.len());
        for s in 0..ca.len() {
            for t in 0..cb.len() {
                if forced_exponent(cb.grading(t), ca.grading(s), 0).is_none() {
                    continue;
                }
                let mut vars = Vec::new();
                for (mid, _) in cb.differential().row(t) {
                    if let Some(&v) = var.get(&(mid, s)) {
                        vars.push(v);
                    }
                }
                for (mid, _) in ca.differential().col(s) {
                    if let Some(&v) = var.get(&(t, mid)) {
                        vars.push(v);
                    }
                }
                sys.add_equation(&vars, rhs.entry(t, s).is_some());
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
}
