//! Staircase complexes read off alternating Alexander polynomials, and the
//! lattice-point minimax rule for the first correction term of sums.
//!
//! An alternating polynomial with exponents `e_0 > e_1 > ... > e_{2m}` gives
//! a staircase with one generator per exponent: Alexander gradings are the
//! exponents, the top generator has Maslov grading 0, and every odd-index
//! generator is a corner mapping to its two neighbors with step lengths the
//! exponent gaps.  Even-index generators placed so their translate has
//! Maslov grading zero give the point set that controls the first correction
//! term: for a connected sum, pick one point from each summand and minimize
//! the larger coordinate sum.

use thiserror::Error;

use super::alexander::{AlexError, AlexPoly};

/// Raw product guard for the minimax: beyond this many point combinations
/// the request is refused rather than approximated.
pub const PRODUCT_GUARD: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StairError {
    #[error(transparent)]
    Alexander(#[from] AlexError),
    #[error("{0} point combinations exceed the guard {1}")]
    TooManyProducts(u64, u64),
    #[error("a staircase needs a positive step parameter, got {0}")]
    NonPositiveTau(i64),
    #[error("no summands given")]
    NoSummands,
}

/// Positive staircase: generators `(A, M)` in descending Alexander order,
/// odd indices the corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    gens: Vec<(i64, i64)>,
}

impl Staircase {
    /// Builds from the full descending exponent list of an alternating
    /// polynomial (odd length, symmetric around 0).
    pub fn from_exponents(exps: &[i64]) -> Self {
        assert!(exps.len() % 2 == 1, "exponent list must have odd length");
        assert!(
            exps.windows(2).all(|w| w[0] > w[1]),
            "exponents must be strictly descending"
        );
        let mut gens = Vec::with_capacity(exps.len());
        let mut m = 0i64;
        for (i, &a) in exps.iter().enumerate() {
            if i > 0 {
                let gap = exps[i - 1] - exps[i];
                if i % 2 == 1 {
                    // Corner: horizontal arrow of length `gap` back to the
                    // previous generator.
                    m = m + 1 - 2 * gap;
                } else {
                    // Vertical arrow of length `gap` from the previous
                    // corner; only the count of steps shows up in M.
                    m -= 1;
                }
            }
            gens.push((a, m));
        }
        Staircase { gens }
    }

    pub fn from_alexander(d: &AlexPoly) -> Result<Self, StairError> {
        Ok(Staircase::from_exponents(&d.alternating_exponents()?))
    }

    /// Step-length-one staircase of height `tau`, the shape shared by all
    /// positive thin classes.
    pub fn from_tau(tau: i64) -> Result<Self, StairError> {
        if tau <= 0 {
            return Err(StairError::NonPositiveTau(tau));
        }
        let exps: Vec<i64> = (-tau..=tau).rev().collect();
        Ok(Staircase::from_exponents(&exps))
    }

    pub fn gens(&self) -> &[(i64, i64)] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Top Alexander grading.
    pub fn genus(&self) -> i64 {
        self.gens[0].0
    }

    /// First-quadrant positions of the even-index generators after
    /// translating each to Maslov grading zero.
    pub fn s_points(&self) -> Vec<(i64, i64)> {
        self.gens
            .iter()
            .step_by(2)
            .map(|&(a, m)| {
                debug_assert_eq!(m % 2, 0);
                (-m / 2, a - m / 2)
            })
            .collect()
    }

    /// First correction term of the staircase alone: the alternating sum of
    /// the positive exponents, which must agree with the minimax over the
    /// point set.
    pub fn v0(&self) -> u32 {
        let m = self.gens.len() / 2;
        let alternating: i64 = (0..m)
            .map(|i| {
                let e = self.gens[i].0;
                if i % 2 == 0 {
                    e
                } else {
                    -e
                }
            })
            .sum();
        let minimax = bl_v0(&[self]).expect("single staircase is under the guard");
        assert_eq!(alternating, minimax as i64);
        minimax
    }
}

/// Keeps only componentwise-minimal points.
fn pareto_prune(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    let mut out: Vec<(i64, i64)> = Vec::new();
    let mut best_y = i64::MAX;
    for (x, y) in pts {
        // Sorted by x ascending; a point survives iff its y strictly beats
        // everything with smaller-or-equal x.
        if y < best_y {
            out.push((x, y));
            best_y = y;
        }
    }
    out
}

/// Minimax correction term of a connected sum of positive staircases:
/// minimize `max(sum of first coordinates, sum of second coordinates)` over
/// one point choice per summand.
pub fn bl_v0(summands: &[&Staircase]) -> Result<u32, StairError> {
    if summands.is_empty() {
        return Err(StairError::NoSummands);
    }
    let mut raw: u64 = 1;
    for s in summands {
        let n = s.s_points().len() as u64;
        raw = raw.saturating_mul(n);
        if raw > PRODUCT_GUARD {
            return Err(StairError::TooManyProducts(raw, PRODUCT_GUARD));
        }
    }
    let mut acc = vec![(0i64, 0i64)];
    for s in summands {
        let pts = s.s_points();
        let mut next = Vec::with_capacity(acc.len() * pts.len());
        for &(ax, ay) in &acc {
            for &(px, py) in &pts {
                next.push((ax + px, ay + py));
            }
        }
        acc = pareto_prune(next);
    }
    let v0 = acc
        .iter()
        .map(|&(x, y)| x.max(y))
        .min()
        .expect("accumulator never empties");
    // Lower bounds that any correct minimax must satisfy: at least every
    // summand's own value, and at least half the summand count when all
    // summands are nontrivial.
    debug_assert!(v0 >= (summands.len() as i64) / 2);
    Ok(v0 as u32)
}
