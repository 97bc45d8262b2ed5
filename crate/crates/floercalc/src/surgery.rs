//! Local classes of positive odd-over-q surgeries and the explicit
//! comparisons that pin them against the dual one-tower models.
//!
//! For an odd denominator the class is the level-0 truncation with its knot
//! involution.  For an even denominator it is the cone of the doubled
//! comparison map `(v, v) : A_s ⊕ A_s -> B` with the swap involution, where
//! `s` is the nearest integer to `p/(2q)`.  The cone normalization puts the
//! tower class `a1 + a2` at grading `-2 V_s`, and an explicit equivariant
//! map from the dual one-tower model of index `V_s` lands on it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, GradedComplex};
use crate::grading::{gr, gr_frac, Grading};
use crate::iota::{IotaComplex, IotaError};
use crate::knot::alexander::gcd;
use crate::knot::lattice::{LatticeCfk, LatticeError};
use crate::knot::{KnotError, KnotExpr};
use crate::local::{dualize_witness, verify_witness, LocalError, LocalMapWitness};
use crate::monomial::{uvec_toggle, MonomialMatrix};

#[derive(Debug, Error)]
pub enum SurgeryError {
    #[error("{expected} denominator required, got {p}/{q}")]
    ParityError {
        expected: &'static str,
        p: i64,
        q: i64,
    },
    #[error("surgery slope must be positive, got {p}/{q}")]
    NonPositiveSlope { p: i64, q: i64 },
    #[error("slope {p}/{q} is not in lowest terms")]
    SlopeNotReduced { p: i64, q: i64 },
    #[error("odd numerator required for a unique self-conjugate structure, got {0}")]
    EvenNumerator(i64),
    #[error("surgery coefficient must be a nonzero odd integer, got {0}")]
    BadCoefficient(i64),
    #[error("tau {tau} is not above the reduction threshold {bound}")]
    ThresholdViolated { tau: i64, bound: i64 },
    #[error("no boundary primitive found; homology bookkeeping is inconsistent")]
    PrimitiveNotFound,
    #[error("comparison witness needs a positive tower drop")]
    ZeroIndex,
    #[error("fixture index must be at least one, got {0}")]
    BadFixtureIndex(i64),
    #[error("fixture failed: {0}")]
    FixtureFailed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Iota(#[from] IotaError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Local(#[from] LocalError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

/// The local class of a positive `p/q` surgery, with enough layout data to
/// reconstruct the cone pieces (`a_len` generators per truncation copy).
#[derive(Clone, Debug)]
pub struct SurgeryClass {
    pub parity: Parity,
    pub p: i64,
    pub q: i64,
    /// Nearest integer to `p/(2q)`; only meaningful for even denominators.
    pub s: Option<i64>,
    /// Tower drop of the comparison map at level `s` (even case).
    pub v_s: Option<u32>,
    /// Generators per truncation copy in the cone layout; 0 for odd classes.
    pub a_len: usize,
    pub class: IotaComplex,
    pub knot: String,
}

/// The integer closest to `p/(2q)`.  For the even-denominator route `p` odd
/// rules out ties.
pub fn nearest_int(p: i64, q: i64) -> i64 {
    assert!(p % 2 != 0 && q >= 1, "nearest_int needs odd p, positive q");
    (p + q).div_euclid(2 * q)
}

/// The threshold `floor((floor(p/q) + 1)/4)` appearing in the even-parity
/// reduction; numerological casework shows it equals `floor(s/2)`.
pub fn floor_quarter_threshold(p: i64, q: i64) -> i64 {
    (p.div_euclid(q) + 1).div_euclid(4)
}

fn validate_slope(p: i64, q: i64) -> Result<(), SurgeryError> {
    if p < 1 || q < 1 {
        return Err(SurgeryError::NonPositiveSlope { p, q });
    }
    if gcd(p, q) != 1 {
        return Err(SurgeryError::SlopeNotReduced { p, q });
    }
    if p % 2 == 0 {
        return Err(SurgeryError::EvenNumerator(p));
    }
    Ok(())
}

fn even_cone(
    model: &LatticeCfk,
    s: i64,
) -> Result<(GradedComplex, MonomialMatrix, usize), ComplexError> {
    let a = model.a_complex(s);
    let b = model.b_complex();
    let n = a.len();
    let mut gens = Vec::with_capacity(3 * n);
    for i in 0..n {
        gens.push((format!("a1|{}", a.name(i)), a.grading(i)));
    }
    for i in 0..n {
        gens.push((format!("a2|{}", a.name(i)), a.grading(i)));
    }
    for i in 0..n {
        gens.push((format!("b|{}", b.name(i)), b.grading(i) - gr(1)));
    }
    let mut entries = Vec::new();
    for (t, src, k) in a.differential().iter() {
        entries.push((src, t, k));
        entries.push((n + src, n + t, k));
    }
    for (t, src, k) in b.differential().iter() {
        entries.push((2 * n + src, 2 * n + t, k));
    }
    for (t, src, k) in model.v_matrix(s).iter() {
        entries.push((src, 2 * n + t, k));
        entries.push((n + src, 2 * n + t, k));
    }
    let cone = GradedComplex::new(gens, &entries)?;
    let iota = MonomialMatrix::from_entries(
        (0..n)
            .map(|i| (n + i, i, 0))
            .chain((0..n).map(|i| (i, n + i, 0)))
            .chain((0..n).map(|i| (2 * n + i, 2 * n + i, 0))),
    );
    Ok((cone, iota, n))
}

/// Even-denominator class: the doubled-comparison cone with the swap
/// involution.
pub fn even_surgery_class(
    model: &LatticeCfk,
    p: i64,
    q: i64,
    knot: &str,
) -> Result<SurgeryClass, SurgeryError> {
    validate_slope(p, q)?;
    if q % 2 != 0 {
        return Err(SurgeryError::ParityError {
            expected: "even",
            p,
            q,
        });
    }
    let s = nearest_int(p, q);
    let vs = model.v_s(s)?;
    let (cone, iota, n) = even_cone(model, s)?;
    let class = IotaComplex::new(cone, iota)?;
    class.validate()?;
    debug_assert_eq!(class.d_invariant(), gr(-2 * vs as i64));
    Ok(SurgeryClass {
        parity: Parity::Even,
        p,
        q,
        s: Some(s),
        v_s: Some(vs),
        a_len: n,
        class,
        knot: knot.into(),
    })
}

/// Odd-denominator class: the level-0 truncation with its involution.
pub fn odd_surgery_class(
    model: &LatticeCfk,
    p: i64,
    q: i64,
    knot: &str,
) -> Result<SurgeryClass, SurgeryError> {
    validate_slope(p, q)?;
    if q % 2 == 0 {
        return Err(SurgeryError::ParityError {
            expected: "odd",
            p,
            q,
        });
    }
    let class = model.a0_iota_complex()?;
    class.validate()?;
    Ok(SurgeryClass {
        parity: Parity::Odd,
        p,
        q,
        s: None,
        v_s: None,
        a_len: 0,
        class,
        knot: knot.into(),
    })
}

/// Dispatches on the denominator parity.
pub fn surgery_class(
    model: &LatticeCfk,
    p: i64,
    q: i64,
    knot: &str,
) -> Result<SurgeryClass, SurgeryError> {
    validate_slope(p, q)?;
    if q % 2 == 0 {
        even_surgery_class(model, p, q, knot)
    } else {
        odd_surgery_class(model, p, q, knot)
    }
}

/// Thin effective parameters of an expression whose summands are all thin:
/// total tau and whether any summand carries the clasp marker.
pub fn thin_parameters(k: &KnotExpr) -> Option<(i64, bool)> {
    let mut tau = 0i64;
    let mut has_box = false;
    for (sign, a) in k.signed_atoms() {
        match a {
            KnotExpr::Thin {
                tau: t,
                has_box: b,
            } => {
                tau += sign * t;
                has_box |= b;
            }
            KnotExpr::Torus(2, q) => tau += sign * (q - 1) / 2,
            _ => return None,
        }
    }
    Some((tau, has_box))
}

/// Bifiltered model for the supported expressions: thin sums collapse to
/// their reduced staircase (with clasp square if marked), and sums of
/// staircase knots tensor their staircase models.  Multi-summand staircase
/// models carry no involution data.
pub fn model_for(k: &KnotExpr) -> Result<LatticeCfk, SurgeryError> {
    if let Some((tau, has_box)) = thin_parameters(k) {
        return Ok(LatticeCfk::thin_model(tau, has_box, false)?);
    }
    let mut model: Option<LatticeCfk> = None;
    for (sign, a) in k.signed_atoms() {
        let sc = a.staircase()?;
        let mut m = LatticeCfk::from_staircase(&sc);
        if sign < 0 {
            m = m.mirror();
        }
        model = Some(match model {
            None => m,
            Some(acc) => LatticeCfk::tensor(&acc, &m),
        });
    }
    Ok(model.unwrap_or_else(LatticeCfk::unknot))
}

/// An explicit verified local map from the dual one-tower model into an even
/// surgery class, together with its transpose certificate.
#[derive(Clone, Debug)]
pub struct ComparisonWitness {
    /// Dual one-tower model of index `V_s`, shifted onto the class grading.
    pub source: IotaComplex,
    /// Verified local map `source -> class`.
    pub witness: LocalMapWitness,
    /// Verified transpose `class^ -> source^`.
    pub dual_witness: LocalMapWitness,
    pub index: u32,
    pub shift: Grading,
}

/// Builds the explicit comparison into an even class: the tower cycle of the
/// truncation goes to each cone copy, corrected by a primitive `c` with
/// `dc = v(a) + U^{V_s} b`.
pub fn comparison_witness(
    model: &LatticeCfk,
    sc: &SurgeryClass,
) -> Result<ComparisonWitness, SurgeryError> {
    let (s, vs) = match (sc.parity, sc.s, sc.v_s) {
        (Parity::Even, Some(s), Some(v)) => (s, v),
        _ => {
            return Err(SurgeryError::ParityError {
                expected: "even",
                p: sc.p,
                q: sc.q,
            })
        }
    };
    if vs == 0 {
        return Err(SurgeryError::ZeroIndex);
    }
    let ra = model.a_complex(s).reduce();
    let rb = model.b_complex().reduce();
    let tower_a = ra.tower_cycle().ok_or(SurgeryError::PrimitiveNotFound)?;
    let tower_b = rb.tower_cycle().ok_or(SurgeryError::PrimitiveNotFound)?;
    let mut rhs = model.v_matrix(s).apply(&tower_a);
    for (&j, &k) in &tower_b {
        uvec_toggle(&mut rhs, j, k + vs);
    }
    let c = rb.solve_boundary(&rhs).ok_or(SurgeryError::PrimitiveNotFound)?;
    let n = sc.a_len;
    let mut f_entries: Vec<(usize, usize, u32)> = Vec::new();
    for (&i, &k) in &tower_a {
        f_entries.push((i, 0, k));
        f_entries.push((n + i, 1, k));
    }
    for (&j, &k) in &c {
        f_entries.push((2 * n + j, 0, k));
        f_entries.push((2 * n + j, 1, k));
    }
    for (&j, &k) in &tower_b {
        f_entries.push((2 * n + j, 2, k));
    }
    let witness = LocalMapWitness {
        f: MonomialMatrix::from_entries(f_entries),
        h: MonomialMatrix::zero(),
    };
    let shift = -sc.class.d_invariant();
    let source = IotaComplex::make_x_dual(vs).shift(shift);
    verify_witness(&source, &sc.class, &witness)?;
    let dual_witness = dualize_witness(&witness);
    verify_witness(&sc.class.dual(), &source.dual(), &dual_witness)?;
    Ok(ComparisonWitness {
        source,
        witness,
        dual_witness,
        index: vs,
        shift,
    })
}

/// Predicted even-route reduction for a thin knot of the given tau.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThinEvenReduction {
    pub s: i64,
    pub threshold: i64,
    /// Index of the predicted dual one-tower class: `tau - floor(s/2)`.
    pub index: i64,
}

pub fn thin_even_reduction(
    tau_k: i64,
    p: i64,
    q: i64,
) -> Result<ThinEvenReduction, SurgeryError> {
    validate_slope(p, q)?;
    if q % 2 != 0 {
        return Err(SurgeryError::ParityError {
            expected: "even",
            p,
            q,
        });
    }
    let threshold = floor_quarter_threshold(p, q);
    if tau_k <= threshold {
        return Err(SurgeryError::ThresholdViolated {
            tau: tau_k,
            bound: threshold,
        });
    }
    let s = nearest_int(p, q);
    debug_assert_eq!(s.div_euclid(2), threshold);
    Ok(ThinEvenReduction {
        s,
        threshold,
        index: tau_k - s.div_euclid(2),
    })
}

/// Outcome of replaying a fixture, one line per checked identity.
#[derive(Clone, Debug)]
pub struct FixtureReport {
    pub label: String,
    pub lines: Vec<String>,
    pub passed: bool,
}

/// Replays the verbatim homotopy data for the odd-route reduction of a thin
/// class: the two-tower target model maps into the level-0 truncation by
/// `f(x0) = Σ + U^t b + Σ'`, `f(x1) = Σ`, `f(x2) = a` (plus `f(x3) = c'`,
/// `f(x4) = e` with a clasp), and the stated homotopy makes it equivariant.
pub fn thin_odd_fixture(t: i64, with_box: bool) -> Result<FixtureReport, SurgeryError> {
    if t < 1 {
        return Err(SurgeryError::BadFixtureIndex(t));
    }
    let model = LatticeCfk::thin_model(-t, with_box, true)?;
    let a0 = model.a0_iota_complex()?;
    let h = 2 * t;
    let yi = |m: i64| m as usize;

    let mut gens = vec![
        ("x0".to_string(), gr(0)),
        ("x1".to_string(), gr(0)),
        ("x2".to_string(), gr(2 * t - 1)),
    ];
    let mut entries = vec![(1usize, 2usize, t as u32)];
    let mut iota_entries = vec![(0usize, 0usize, 0u32), (1, 1, 0), (0, 1, 0), (2, 2, 0)];
    if with_box {
        gens.push(("x3".into(), gr(2 * t - 1)));
        gens.push(("x4".into(), gr(2 * t)));
        entries.push((3, 4, 1));
        iota_entries.extend([(3, 3, 0), (2, 3, 0), (4, 4, 0)]);
    }
    let source = IotaComplex::new(
        GradedComplex::new(gens, &entries)?,
        MonomialMatrix::from_entries(iota_entries),
    )?;

    let mut f_entries = Vec::new();
    for j in 0..t {
        f_entries.push((yi(2 * j), 0, j as u32));
        f_entries.push((yi(2 * h - 2 * j), 0, j as u32));
        f_entries.push((yi(2 * j), 1, j as u32));
    }
    f_entries.push((yi(h), 0, t as u32));
    f_entries.push((yi(h - 1), 2, 0));
    let mut h_entries = vec![(yi(h), 2, 0u32)];
    if with_box {
        let idx = |n: &str| model.index_of(n).expect("clasp generators present");
        f_entries.push((idx("cp"), 3, 0));
        f_entries.push((idx("e"), 4, 0));
        h_entries.push((idx("c"), 0, (t - 1) as u32));
        h_entries.push((idx("d"), 3, 0));
    }
    let witness = LocalMapWitness {
        f: MonomialMatrix::from_entries(f_entries),
        h: MonomialMatrix::from_entries(h_entries),
    };

    let mut lines = Vec::new();
    let mut passed = true;
    let mut record = |line: String, ok: bool, passed: &mut bool| {
        lines.push(format!("{line}: {}", if ok { "PASS" } else { "FAIL" }));
        *passed &= ok;
    };

    let src_cx = source.complex();
    let chain_ok = GradedComplex::is_chain_map(a0.complex(), src_cx, &witness.f);
    record("f is a chain map".into(), chain_ok, &mut passed);

    let lhs = witness.f.compose(source.iota()).add(&a0.iota().compose(&witness.f));
    let rhs = a0
        .complex()
        .differential()
        .compose(&witness.h)
        .add(&witness.h.compose(src_cx.differential()));
    let diff = lhs.add(&rhs);
    for sidx in 0..src_cx.len() {
        let ok = diff.col(sidx).is_empty();
        record(
            format!("fι + ιf = ∂H + H∂ on {}", src_cx.name(sidx)),
            ok,
            &mut passed,
        );
    }

    let omega = source.omega();
    let w1: Vec<(usize, u32)> = omega.col(1);
    record("ω x1 = x0".into(), w1 == vec![(0, 0)], &mut passed);
    if with_box {
        let w3: Vec<(usize, u32)> = omega.col(3);
        record("ω x3 = x2".into(), w3 == vec![(2, 0)], &mut passed);
    }
    for idx in [0usize, 2] {
        record(
            format!("ω vanishes on {}", src_cx.name(idx)),
            omega.col(idx).is_empty(),
            &mut passed,
        );
    }

    let verified = verify_witness(&source, &a0, &witness).is_ok();
    record(
        "target model maps locally into the truncation".into(),
        verified,
        &mut passed,
    );

    let label = format!(
        "{} target, tower drop {t}",
        if with_box {
            "five-generator (clasp)"
        } else {
            "three-generator"
        }
    );
    if !passed {
        let failing = lines
            .iter()
            .filter(|l| l.ends_with("FAIL"))
            .cloned()
            .collect::<Vec<_>>()
            .join("; ");
        return Err(SurgeryError::FixtureFailed(failing));
    }
    Ok(FixtureReport {
        label,
        lines,
        passed,
    })
}

/// Correction term of `M`-surgery in the self-conjugate structure, through
/// the exact `V_0` routes.
pub fn d_surgery(m: i64, k: &KnotExpr) -> Result<Grading, SurgeryError> {
    if m == 0 || m % 2 == 0 {
        return Err(SurgeryError::BadCoefficient(m));
    }
    if m > 0 {
        let v = k.v0_exact()?;
        Ok(gr_frac(m - 1, 4) - gr(2 * v as i64))
    } else {
        let v = KnotExpr::Mirror(Box::new(k.clone())).v0_exact()?;
        Ok(gr_frac(m + 1, 4) + gr(2 * v as i64))
    }
}

/// Independence test for a doubled satellite family: splits the companion
/// into upright and mirrored halves, lower-bounds the doubled tower drop by
/// the halves' gap, and checks the tau sign condition.
#[derive(Clone, Debug)]
pub struct Cor61Report {
    pub knot: String,
    pub positive_part: String,
    pub negative_part: String,
    pub v0_doubled_positive: u32,
    pub v0_doubled_negative: u32,
    /// `V_0(2A) - V_0(2B)`, a lower bound for the doubled tower drop by
    /// subadditivity.
    pub gap_lower_bound: i64,
    pub tau: i64,
    pub independent: bool,
}

pub fn cor61_check(k: &KnotExpr) -> Result<Cor61Report, SurgeryError> {
    let (pos, neg) = k.mirror_split();
    let v0_2a = KnotExpr::Multiple(2, Box::new(pos.clone())).v0_exact()?;
    let v0_2b = KnotExpr::Multiple(2, Box::new(neg.clone())).v0_exact()?;
    let gap = v0_2a as i64 - v0_2b as i64;
    let tau = k.tau()?;
    Ok(Cor61Report {
        knot: k.to_string(),
        positive_part: pos.to_string(),
        negative_part: neg.to_string(),
        v0_doubled_positive: v0_2a,
        v0_doubled_negative: v0_2b,
        gap_lower_bound: gap,
        tau,
        independent: gap > 0 && tau < 0,
    })
}
