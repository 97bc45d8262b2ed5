//! Rational tangle arithmetic and satellite pattern records.
//!
//! A rational tangle is encoded by an alternating twist word in the two
//! generators `h` (horizontal twists) and `v` (vertical twists) applied to a
//! crossingless base tangle.  The word evaluates to a fraction by a continued
//! fraction rule, and the same word acting on endpoint pairings computes the
//! tangle's connectivity.  A replacement by the tangle is proper exactly when
//! the connectivity agrees with the vertical base tangle, which happens
//! exactly when the fraction has even denominator.
//!
//! Pattern records carry the surgery bookkeeping for satellite patterns with
//! a rational unknotting tangle: the coefficient `p/q`, its parity, a sign,
//! and the winding/linking number of the pattern in its solid torus.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knot::alexander::gcd;
use crate::surgery::Parity;

#[derive(Debug, Error)]
pub enum TangleError {
    #[error("pattern coefficient must be a finite fraction")]
    InfiniteCoefficient,
    #[error("coefficient {p}/{q} has even numerator, so the branched double cover is not a Z/2 homology sphere")]
    EvenNumerator { p: i64, q: i64 },
    #[error("clasp count {0} must be odd")]
    EvenClaspCount(i64),
    #[error("cannot parse fraction from {0:?}")]
    BadFraction(String),
}

/// Reduced fraction with a single projective point at infinity, stored as
/// `1/0`.  Finite values keep a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Frac {
    pub num: i64,
    pub den: i64,
}

impl Frac {
    pub const INFINITY: Frac = Frac { num: 1, den: 0 };

    pub fn new(num: i64, den: i64) -> Frac {
        if den == 0 {
            assert!(num != 0, "0/0 is not a tangle fraction");
            return Frac::INFINITY;
        }
        let g = gcd(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Frac { num, den }
    }

    pub fn is_infinite(self) -> bool {
        self.den == 0
    }

    pub fn neg(self) -> Frac {
        if self.is_infinite() {
            self
        } else {
            Frac { num: -self.num, den: self.den }
        }
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 0 {
            write!(f, "inf")
        } else if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Frac {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Frac, TangleError> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Frac::INFINITY);
        }
        let bad = || TangleError::BadFraction(s.to_string());
        match s.split_once('/') {
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad())?;
                let den: i64 = den.trim().parse().map_err(|_| bad())?;
                if num == 0 && den == 0 {
                    return Err(bad());
                }
                Ok(Frac::new(num, den))
            }
            None => {
                let num: i64 = s.parse().map_err(|_| bad())?;
                Ok(Frac::new(num, 1))
            }
        }
    }
}

/// Expands a fraction into twist exponents using the floor convention: the
/// first entry is the integer part and every remainder is inverted.  The
/// expansion is canonical for this crate; correctness means the round trip
/// `cf_eval(&cf_expand(f)) == f`, since the twist exponents themselves are
/// far from unique.
pub fn cf_expand(f: Frac) -> Vec<i64> {
    if f.is_infinite() {
        // The empty word leaves the vertical base tangle alone, and that
        // tangle has fraction infinity.
        return Vec::new();
    }
    let mut out = Vec::new();
    let (mut p, mut q) = (f.num, f.den);
    loop {
        let a = p.div_euclid(q);
        out.push(a);
        let r = p - a * q;
        if r == 0 {
            break;
        }
        p = q;
        q = r;
    }
    out
}

/// Evaluates twist exponents right to left: the last entry seeds the value
/// and each earlier entry `x` maps the running value `f` to `x + 1/f`.  The
/// recurrence runs projectively so intermediate infinities are harmless.
pub fn cf_eval(exponents: &[i64]) -> Frac {
    let mut p = match exponents.last() {
        Some(&x) => x,
        None => return Frac::INFINITY,
    };
    let mut q = 1i64;
    for &x in exponents.iter().rev().skip(1) {
        (p, q) = (x * p + q, p);
    }
    Frac::new(p, q)
}

/// Endpoint labels for a tangle in the standard square projection.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Corner {
    Nw,
    Ne,
    Sw,
    Se,
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Corner::Nw => "NW",
            Corner::Ne => "NE",
            Corner::Sw => "SW",
            Corner::Se => "SE",
        };
        write!(f, "{s}")
    }
}

/// Perfect pairing of the four tangle endpoints, stored with each pair in
/// sorted order so equal pairings compare equal.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Connectivity {
    pairs: BTreeSet<(Corner, Corner)>,
}

impl Connectivity {
    fn from_pairs(raw: [(Corner, Corner); 2]) -> Connectivity {
        let mut pairs = BTreeSet::new();
        for (a, b) in raw {
            pairs.insert((a.min(b), a.max(b)));
        }
        Connectivity { pairs }
    }

    /// Pairing of the vertical crossingless tangle: two strands falling
    /// straight down.
    pub fn vertical() -> Connectivity {
        Connectivity::from_pairs([(Corner::Nw, Corner::Sw), (Corner::Ne, Corner::Se)])
    }

    /// Pairing of the horizontal crossingless tangle.
    pub fn horizontal() -> Connectivity {
        Connectivity::from_pairs([(Corner::Nw, Corner::Ne), (Corner::Sw, Corner::Se)])
    }

    fn swap(&self, a: Corner, b: Corner) -> Connectivity {
        let relabel = |c: Corner| {
            if c == a {
                b
            } else if c == b {
                a
            } else {
                c
            }
        };
        let mut pairs = BTreeSet::new();
        for &(x, y) in &self.pairs {
            let (x, y) = (relabel(x), relabel(y));
            pairs.insert((x.min(y), x.max(y)));
        }
        Connectivity { pairs }
    }

    pub fn pairs(&self) -> &BTreeSet<(Corner, Corner)> {
        &self.pairs
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, b) in &self.pairs {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}")?;
            first = false;
        }
        Ok(())
    }
}

/// Alternating twist word.  Exponent `i` is an `h` power for even `i` and a
/// `v` power for odd `i`.  Words of even length act on the vertical base
/// tangle and words of odd length on the horizontal one, rightmost letter
/// first, so the leading exponent is always an `h` contribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleWord {
    pub exponents: Vec<i64>,
}

impl TangleWord {
    pub fn from_fraction(f: Frac) -> TangleWord {
        TangleWord { exponents: cf_expand(f) }
    }

    pub fn fraction(&self) -> Frac {
        cf_eval(&self.exponents)
    }

    /// Computes the endpoint pairing by acting on the base tangle's pairing.
    /// A horizontal twist region with an odd crossing count exchanges the two
    /// right endpoints, a vertical one exchanges the two bottom endpoints;
    /// even twist regions return every strand to its side.
    pub fn connectivity(&self) -> Connectivity {
        let mut pairing = if self.exponents.len() % 2 == 0 {
            Connectivity::vertical()
        } else {
            Connectivity::horizontal()
        };
        for (i, &x) in self.exponents.iter().enumerate().rev() {
            if x.rem_euclid(2) == 0 {
                continue;
            }
            pairing = if i % 2 == 0 {
                pairing.swap(Corner::Ne, Corner::Se)
            } else {
                pairing.swap(Corner::Sw, Corner::Se)
            };
        }
        pairing
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.exponents.iter().enumerate() {
            let letter = if i % 2 == 0 { 'h' } else { 'v' };
            write!(f, "{letter}^{x} ")?;
        }
        if self.exponents.len() % 2 == 0 {
            write!(f, "Tv")
        } else {
            write!(f, "Th")
        }
    }
}

/// A tangle replacement is proper when the replacing tangle connects the
/// same endpoint pairs as the vertical base tangle.  For the tangle of a
/// reduced fraction this happens exactly when the denominator is even; the
/// unit tests check the equivalence against `connectivity` on a grid.
pub fn is_proper(f: Frac) -> bool {
    f.den % 2 == 0
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum PatternSign {
    Positive,
    Negative,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum PatternKind {
    /// Pattern whose companion unknotting is a rational tangle replacement;
    /// the branched double cover of the satellite is then surgery on the
    /// companion connect sum its reverse with coefficient exactly `p/q`.
    RationalTangle,
    /// User supplied surgery data with no tangle word attached.
    UserDeclared,
}

/// Surgery bookkeeping for a satellite pattern: the double cover of the
/// satellite is `p/q` surgery on `K # K^r` where `K` is the companion.  The
/// numerator is forced odd so that the cover is a homology sphere over Z/2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternRecord {
    pub coefficient: Frac,
    pub parity: Parity,
    pub sign: PatternSign,
    /// Linking number of the pattern with the meridian, defined up to sign;
    /// stored nonnegative for tangle patterns.
    pub linking: i64,
    pub kind: PatternKind,
}

impl PatternRecord {
    fn build(p: i64, q: i64, linking: i64, kind: PatternKind) -> Result<PatternRecord, TangleError> {
        if q == 0 {
            return Err(TangleError::InfiniteCoefficient);
        }
        let coefficient = Frac::new(p, q);
        if coefficient.num.rem_euclid(2) == 0 {
            return Err(TangleError::EvenNumerator { p: coefficient.num, q: coefficient.den });
        }
        Ok(PatternRecord {
            coefficient,
            parity: if coefficient.den % 2 == 0 { Parity::Even } else { Parity::Odd },
            sign: if coefficient.num > 0 { PatternSign::Positive } else { PatternSign::Negative },
            linking,
            kind,
        })
    }

    /// Pattern given by a rational tangle replacement; the linking number of
    /// such a pattern is always one.
    pub fn rational(p: i64, q: i64) -> Result<PatternRecord, TangleError> {
        PatternRecord::build(p, q, 1, PatternKind::RationalTangle)
    }

    /// Pattern described only by its surgery data.
    pub fn declared(p: i64, q: i64, linking: i64) -> Result<PatternRecord, TangleError> {
        PatternRecord::build(p, q, linking.abs(), PatternKind::UserDeclared)
    }

    /// Multiply clasped, multiply twisted Whitehead pattern.  `clasps` is the
    /// signed clasp count and must be odd, `twists` counts full twists.  The
    /// untwisted positively clasped double is `whitehead(1, 0)` and carries
    /// coefficient `1/2`.
    pub fn whitehead(clasps: i64, twists: i64) -> Result<PatternRecord, TangleError> {
        if clasps.rem_euclid(2) == 0 {
            return Err(TangleError::EvenClaspCount(clasps));
        }
        PatternRecord::build(4 * twists + clasps, 2, 1, PatternKind::RationalTangle)
    }

    /// Mirrored pattern: the coefficient changes sign, the linking number is
    /// only defined up to sign and stays put.
    pub fn mirror(&self) -> PatternRecord {
        PatternRecord {
            coefficient: self.coefficient.neg(),
            parity: self.parity,
            sign: match self.sign {
                PatternSign::Positive => PatternSign::Negative,
                PatternSign::Negative => PatternSign::Positive,
            },
            linking: self.linking,
            kind: self.kind,
        }
    }

    pub fn is_proper(&self) -> bool {
        self.parity == Parity::Even
    }
}
