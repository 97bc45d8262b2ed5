//! Free, finitely generated chain complexes over F2[U] and their homology.
//!
//! A `GradedComplex` stores named generators with exact rational gradings and
//! a monomial differential of degree -1.  Because F2[U] is a PID and all
//! entries are monomials, homology can be computed by an exponent-weighted
//! elimination: repeatedly pick a lowest-exponent entry `d(s) = U^k t + ...`,
//! isolate it by homogeneous basis changes (each one is simultaneously a
//! column and a row operation, since source and target bases coincide), and
//! split off the pair.  A pair with `k = 0` is acyclic; a pair with `k > 0`
//! contributes a torsion summand `F2[U]/U^k` generated by the class of `t`;
//! the untouched generators at the end are a basis of the free part.
//!
//! The elimination tracks the accumulated basis change and its inverse, so a
//! `Reduced` value can also express arbitrary cycles in terms of the homology
//! decomposition and solve `d(c) = w` for exact cycles `w`.  That machinery
//! is what the local-map solver and the surgery comparison maps are built on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grading::{forced_exponent, gr, same_coset, Grading};
use crate::monomial::{uvec_toggle, MonomialMatrix, UVec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("generator index {0} out of range")]
    BadIndex(usize),
    #[error("gradings do not lie in a single coset of the integers")]
    MixedCosets,
    #[error("entry {source_name} -> {target_name} violates degree {degree} homogeneity")]
    GradingViolation {
        source_name: String,
        target_name: String,
        degree: i64,
    },
    #[error("differential does not square to zero")]
    NotADifferential,
    #[error("map is not a chain map")]
    NotAChainMap,
    #[error("localized homology has rank {0}, expected 1")]
    LocalizedRank(usize),
    #[error("mapping cone input map is not homogeneous")]
    InhomogeneousMap,
    #[error("invalid serialized complex: {0}")]
    BadSerialization(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    names: Vec<String>,
    gradings: Vec<Grading>,
    diff: MonomialMatrix,
}

impl GradedComplex {
    /// Builds and validates a complex.  `entries` lists differential
    /// components as `(source, target, upow)`: `d(source) += U^upow target`.
    pub fn new(
        generators: Vec<(String, Grading)>,
        entries: &[(usize, usize, u32)],
    ) -> Result<Self, ComplexError> {
        let names: Vec<String> = generators.iter().map(|(n, _)| n.clone()).collect();
        let gradings: Vec<Grading> = generators.iter().map(|(_, g)| *g).collect();
        {
            let mut seen = BTreeMap::new();
            for (i, n) in names.iter().enumerate() {
                if seen.insert(n.clone(), i).is_some() {
                    return Err(ComplexError::DuplicateName(n.clone()));
                }
            }
        }
        if let Some(&g0) = gradings.first() {
            if !gradings.iter().all(|&g| same_coset(g, g0)) {
                return Err(ComplexError::MixedCosets);
            }
        }
        let mut diff = MonomialMatrix::zero();
        for &(s, t, k) in entries {
            if s >= names.len() || t >= names.len() {
                return Err(ComplexError::BadIndex(s.max(t)));
            }
            diff.toggle(t, s, k);
        }
        let cx = GradedComplex {
            names,
            gradings,
            diff,
        };
        cx.check_map_degree(&cx, &cx.diff, -1)?;
        if !cx.diff.compose(&cx.diff).is_zero() {
            return Err(ComplexError::NotADifferential);
        }
        Ok(cx)
    }

    /// The rank-one complex F2[U] with a single generator in grading 0.
    pub fn trivial() -> Self {
        GradedComplex::new(vec![("g".into(), gr(0))], &[]).unwrap()
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

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn grading(&self, i: usize) -> Grading {
        self.gradings[i]
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.gradings
    }

    pub fn differential(&self) -> &MonomialMatrix {
        &self.diff
    }

    /// Grading of a homogeneous vector, if it is one.
    pub fn vector_grading(&self, v: &UVec) -> Option<Grading> {
        let mut out: Option<Grading> = None;
        for (&i, &k) in v {
            let g = self.gradings[i] - gr(2 * k as i64);
            match out {
                None => out = Some(g),
                Some(prev) if prev == g => {}
                Some(_) => return None,
            }
        }
        out
    }

    /// Checks that `m`, viewed as a map from `source` (columns) to `self`
    /// (rows), is homogeneous of the given degree.
    pub fn check_map_degree(
        &self,
        source: &GradedComplex,
        m: &MonomialMatrix,
        degree: i64,
    ) -> Result<(), ComplexError> {
        for (t, s, k) in m.iter() {
            if t >= self.len() || s >= source.len() {
                return Err(ComplexError::BadIndex(t.max(s)));
            }
            if forced_exponent(self.gradings[t], source.gradings[s], degree) != Some(k) {
                return Err(ComplexError::GradingViolation {
                    source_name: source.names[s].clone(),
                    target_name: self.names[t].clone(),
                    degree,
                });
            }
        }
        Ok(())
    }

    /// Checks `d_target ∘ m = m ∘ d_source`.
    pub fn is_chain_map(target: &GradedComplex, source: &GradedComplex, m: &MonomialMatrix) -> bool {
        target.diff.compose(m) == m.compose(&source.diff)
    }

    /// Dual complex: gradings negate, the differential transposes.
    pub fn dual(&self) -> Self {
        let gens = self
            .names
            .iter()
            .zip(&self.gradings)
            .map(|(n, g)| (format!("{n}^"), -g))
            .collect();
        let entries: Vec<(usize, usize, u32)> =
            self.diff.iter().map(|(t, s, k)| (t, s, k)).collect();
        GradedComplex::new(gens, &entries).expect("dual of a valid complex is valid")
    }

    /// Tensor product over F2[U].  Returns the product complex together with
    /// the index layout `(i, j) -> i * b.len() + j`.
    pub fn tensor(a: &GradedComplex, b: &GradedComplex) -> Self {
        let mut gens = Vec::with_capacity(a.len() * b.len());
        for i in 0..a.len() {
            for j in 0..b.len() {
                gens.push((
                    format!("{}|{}", a.names[i], b.names[j]),
                    a.gradings[i] + b.gradings[j],
                ));
            }
        }
        let idx = |i: usize, j: usize| i * b.len() + j;
        let mut entries = Vec::new();
        for (t, s, k) in a.diff.iter() {
            for j in 0..b.len() {
                entries.push((idx(s, j), idx(t, j), k));
            }
        }
        for (t, s, k) in b.diff.iter() {
            for i in 0..a.len() {
                entries.push((idx(i, s), idx(i, t), k));
            }
        }
        GradedComplex::new(gens, &entries).expect("tensor of valid complexes is valid")
    }

    pub fn tensor_index(b_len: usize, i: usize, j: usize) -> usize {
        i * b_len + j
    }

    /// Shift: every grading decreases by `delta`, so an element of grading 0
    /// in the input has grading `-delta` in the output.
    pub fn shift(&self, delta: Grading) -> Self {
        let gens = self
            .names
            .iter()
            .zip(&self.gradings)
            .map(|(n, g)| (n.clone(), *g - delta))
            .collect();
        let entries: Vec<(usize, usize, u32)> =
            self.diff.iter().map(|(t, s, k)| (s, t, k)).collect();
        GradedComplex::new(gens, &entries).expect("shift of a valid complex is valid")
    }

    /// Mapping cone of a homogeneous chain map `f : source -> target`.  The
    /// target gradings receive the internal shift that makes the cone
    /// differential homogeneous of degree -1.  Returns the cone plus the
    /// index offsets of the two pieces: source generators keep their index,
    /// target generator `j` lands at `source.len() + j`.
    pub fn mapping_cone(
        f: &MonomialMatrix,
        source: &GradedComplex,
        target: &GradedComplex,
    ) -> Result<(Self, usize), ComplexError> {
        // Degree of f with respect to the stated gradings.
        let mut degree: Option<i64> = None;
        for (t, s, k) in f.iter() {
            if t >= target.len() || s >= source.len() {
                return Err(ComplexError::BadIndex(t.max(s)));
            }
            let d = target.gradings[t] - source.gradings[s] - gr(2 * k as i64);
            if !d.is_integer() {
                return Err(ComplexError::InhomogeneousMap);
            }
            let d = d.to_integer();
            match degree {
                None => degree = Some(d),
                Some(prev) if prev == d => {}
                Some(_) => return Err(ComplexError::InhomogeneousMap),
            }
        }
        let degree = degree.unwrap_or(0);
        if !(target.diff.compose(f) == f.compose(&source.diff)) {
            return Err(ComplexError::NotAChainMap);
        }
        let shift = gr(degree + 1);
        let off = source.len();
        let mut gens: Vec<(String, Grading)> = Vec::with_capacity(off + target.len());
        for i in 0..off {
            gens.push((format!("a|{}", source.names[i]), source.gradings[i]));
        }
        for j in 0..target.len() {
            gens.push((format!("b|{}", target.names[j]), target.gradings[j] - shift));
        }
        let mut entries = Vec::new();
        for (t, s, k) in source.diff.iter() {
            entries.push((s, t, k));
        }
        for (t, s, k) in target.diff.iter() {
            entries.push((off + s, off + t, k));
        }
        for (t, s, k) in f.iter() {
            entries.push((s, off + t, k));
        }
        let cone = GradedComplex::new(gens, &entries)?;
        Ok((cone, off))
    }

    /// Runs the elimination once and caches the result.
    pub fn reduce(&self) -> Reduced {
        Reduced::compute(self)
    }

    /// Homology as a graded module, requiring the localized rank to be 1.
    pub fn homology(&self) -> Result<HomologyDescription, ComplexError> {
        let red = self.reduce();
        if red.free.len() != 1 {
            return Err(ComplexError::LocalizedRank(red.free.len()));
        }
        Ok(red.describe())
    }

    /// Grading of the top of the `U`-tower in homology.
    pub fn d_invariant(&self) -> Result<Grading, ComplexError> {
        Ok(self.homology()?.tower_grading)
    }
}

/// Public summary of a rank-one homology module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyDescription {
    /// Grading of the uppermost generator of the free tower.
    pub tower_grading: Grading,
    /// Torsion summands as `(grading of generator, length)`; a summand
    /// `(g, l)` is a copy of F2[U]/U^l generated in grading `g`.  Sorted by
    /// grading descending, then length descending.
    pub torsion: Vec<(Grading, u32)>,
}

/// Result of the elimination, with enough bookkeeping to express classes.
#[derive(Clone, Debug)]
pub struct Reduced {
    gradings: Vec<Grading>,
    /// Cancelled pairs `(source, target, k)`: in the final basis,
    /// `d(source) = U^k target` and both generators are otherwise isolated.
    pub pairs: Vec<(usize, usize, u32)>,
    /// Final-basis generators with zero differential and nothing mapping in.
    pub free: Vec<usize>,
    /// Final basis in terms of the original one (columns are basis vectors).
    basis: MonomialMatrix,
    /// Original basis in terms of the final one.
    basis_inv: MonomialMatrix,
}

impl Reduced {
    fn compute(cx: &GradedComplex) -> Reduced {
        let n = cx.len();
        let mut d = cx.diff.clone();
        let mut basis = MonomialMatrix::identity(n);
        let mut basis_inv = MonomialMatrix::identity(n);
        let mut retired = vec![false; n];
        let mut pairs = Vec::new();

        // One homogeneous basis change `g_j <- g_j + U^m g_i`, applied to the
        // differential and both transform matrices.
        let change = |d: &mut MonomialMatrix,
                          basis: &mut MonomialMatrix,
                          basis_inv: &mut MonomialMatrix,
                          j: usize,
                          i: usize,
                          m: u32| {
            debug_assert_ne!(i, j);
            // Column op on d: col_j += U^m col_i.
            for (t, k) in d.col(i) {
                d.toggle(t, j, k + m);
            }
            // Row op on d: row_i += U^m row_j.
            let row_j: Vec<(usize, u32)> = d.row(j).collect();
            for (s, k) in row_j {
                d.toggle(i, s, k + m);
            }
            for (t, k) in basis.col(i) {
                basis.toggle(t, j, k + m);
            }
            let row_j: Vec<(usize, u32)> = basis_inv.row(j).collect();
            for (s, k) in row_j {
                basis_inv.toggle(i, s, k + m);
            }
        };

        loop {
            // Global minimal-exponent pivot, ties broken by position for
            // determinism.
            let pivot = d
                .iter()
                .min_by_key(|&(t, s, k)| (k, t, s))
                .map(|(t, s, k)| (t, s, k));
            let Some((t, s, k)) = pivot else { break };
            loop {
                // Clear the pivot row: other sources hitting t.
                let row_hit: Option<(usize, u32)> = d.row(t).find(|&(s2, _)| s2 != s);
                if let Some((s2, k2)) = row_hit {
                    change(&mut d, &mut basis, &mut basis_inv, s2, s, k2 - k);
                    continue;
                }
                // Clear the pivot column: other targets of s.
                if let Some(&(t2, k2)) = d.col(s).iter().find(|&&(t2, _)| t2 != t) {
                    change(&mut d, &mut basis, &mut basis_inv, t, t2, k2 - k);
                    continue;
                }
                break;
            }
            debug_assert!(d.row(t).all(|(s2, _)| s2 == s));
            debug_assert!(d.col(s).iter().all(|&(t2, _)| t2 == t));
            // d^2 = 0 forces row s and column t to be empty now.
            debug_assert!(d.row(s).next().is_none());
            debug_assert!(d.col(t).is_empty());
            d.toggle(t, s, k);
            retired[s] = true;
            retired[t] = true;
            pairs.push((s, t, k));
        }

        let free = (0..n).filter(|&i| !retired[i]).collect();
        Reduced {
            gradings: cx.gradings.clone(),
            pairs,
            free,
            basis,
            basis_inv,
        }
    }

    /// Grading of a final-basis generator (basis changes preserve gradings).
    pub fn grading(&self, i: usize) -> Grading {
        self.gradings[i]
    }

    pub fn describe(&self) -> HomologyDescription {
        let tower_grading = self.gradings[self.free[0]];
        let mut torsion: Vec<(Grading, u32)> = self
            .pairs
            .iter()
            .filter(|&&(_, _, k)| k > 0)
            .map(|&(_, t, k)| (self.gradings[t], k))
            .collect();
        torsion.sort_by(|a, b| b.cmp(a));
        HomologyDescription {
            tower_grading,
            torsion,
        }
    }

    /// All torsion summands, also usable when the free rank is not 1.
    pub fn torsion(&self) -> Vec<(Grading, u32)> {
        let mut torsion: Vec<(Grading, u32)> = self
            .pairs
            .iter()
            .filter(|&&(_, _, k)| k > 0)
            .map(|&(_, t, k)| (self.gradings[t], k))
            .collect();
        torsion.sort_by(|a, b| b.cmp(a));
        torsion
    }

    /// A cycle representing the top of the tower (free rank must be 1).
    pub fn tower_cycle(&self) -> Option<UVec> {
        match self.free.as_slice() {
            [f] => Some(self.basis.col(*f).into_iter().map(|(t, k)| (t, k)).collect()),
            _ => None,
        }
    }

    /// Cycle representing the torsion class of the given cancelled pair.
    pub fn torsion_cycle(&self, pair_index: usize) -> UVec {
        let (_, t, _) = self.pairs[pair_index];
        self.basis.col(t).into_iter().collect()
    }

    /// Coordinates of a vector in the final basis.
    pub fn to_final(&self, v: &UVec) -> UVec {
        self.basis_inv.apply(v)
    }

    /// Coordinates of a final-basis vector in the original basis.
    pub fn to_original(&self, v: &UVec) -> UVec {
        self.basis.apply(v)
    }

    /// Coefficient (0 or 1) of the tower class inside the class of the cycle
    /// `z`; equivalently, whether `[z]` survives localization.
    pub fn has_tower_component(&self, z: &UVec) -> bool {
        let zf = self.to_final(z);
        self.free.iter().any(|f| zf.contains_key(f))
    }

    /// Index data used by the solver to express the tower functional as a
    /// linear form: the single free generator and the row of `basis_inv`
    /// picking out its coordinate.
    pub fn tower_functional_row(&self) -> Option<Vec<usize>> {
        match self.free.as_slice() {
            [f] => Some(self.basis_inv.row(*f).map(|(s, _)| s).collect()),
            _ => None,
        }
    }

    /// Solves `d(c) = w` for an exact homogeneous `w`; `None` when `w` is not
    /// a boundary.
    pub fn solve_boundary(&self, w: &UVec) -> Option<UVec> {
        let wf = self.to_final(w);
        let mut cf = UVec::new();
        'outer: for (&g, &e) in &wf {
            for &(s, t, k) in &self.pairs {
                if t == g {
                    if e < k {
                        return None;
                    }
                    uvec_toggle(&mut cf, s, e - k);
                    continue 'outer;
                }
            }
            // Component on a free generator or a pair source: not a boundary
            // (in the latter case not even a cycle).
            return None;
        }
        Some(self.to_original(&cf))
    }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GenJson {
    name: String,
    grading: (i64, i64),
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    from: String,
    to: String,
    upow: u32,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    generators: Vec<GenJson>,
    differential: Vec<EntryJson>,
}

impl GradedComplex {
    /// Canonical JSON: generators sorted by grading descending then name,
    /// entries sorted by (from, to).
    pub fn to_json(&self) -> serde_json::Value {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            self.gradings[b]
                .cmp(&self.gradings[a])
                .then_with(|| self.names[a].cmp(&self.names[b]))
        });
        let generators = order
            .iter()
            .map(|&i| GenJson {
                name: self.names[i].clone(),
                grading: (*self.gradings[i].numer(), *self.gradings[i].denom()),
            })
            .collect();
        let mut differential: Vec<EntryJson> = self
            .diff
            .iter()
            .map(|(t, s, k)| EntryJson {
                from: self.names[s].clone(),
                to: self.names[t].clone(),
                upow: k,
            })
            .collect();
        differential.sort_by(|a, b| a.from.cmp(&b.from).then_with(|| a.to.cmp(&b.to)));
        serde_json::to_value(ComplexJson {
            generators,
            differential,
        })
        .unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ComplexError> {
        let parsed: ComplexJson = serde_json::from_value(v.clone())
            .map_err(|e| ComplexError::BadSerialization(e.to_string()))?;
        let gens: Vec<(String, Grading)> = parsed
            .generators
            .iter()
            .map(|g| {
                if g.grading.1 == 0 {
                    Err(ComplexError::BadSerialization(format!(
                        "zero denominator on generator {}",
                        g.name
                    )))
                } else {
                    Ok((g.name.clone(), Grading::new(g.grading.0, g.grading.1)))
                }
            })
            .collect::<Result<_, _>>()?;
        let name_idx: BTreeMap<&str, usize> = gens
            .iter()
            .enumerate()
            .map(|(i, (n, _))| (n.as_str(), i))
            .collect();
        let mut entries = Vec::new();
        for e in &parsed.differential {
            let s = *name_idx.get(e.from.as_str()).ok_or_else(|| {
                ComplexError::BadSerialization(format!("unknown generator `{}`", e.from))
            })?;
            let t = *name_idx.get(e.to.as_str()).ok_or_else(|| {
                ComplexError::BadSerialization(format!("unknown generator `{}`", e.to))
            })?;
            entries.push((s, t, e.upow));
        }
        GradedComplex::new(gens, &entries)
    }
}
