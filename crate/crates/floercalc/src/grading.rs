//! Exact rational gradings.
//!
//! Complexes in this crate are graded by a coset of the integers inside the
//! rationals, so gradings are kept as exact fractions throughout.  The `U`
//! action always drops grading by 2, which forces the `U`-exponent of every
//! entry of a homogeneous map; `forced_exponent` is the single place where
//! that arithmetic happens.

use num_rational::Ratio;

pub type Grading = Ratio<i64>;

/// Integer grading.
pub fn gr(n: i64) -> Grading {
    Ratio::from_integer(n)
}

/// Rational grading `n/d`.
pub fn gr_frac(n: i64, d: i64) -> Grading {
    Ratio::new(n, d)
}

/// `U`-exponent forced on an entry of a degree-`deg` map that sends a
/// generator of grading `source` into the span of a generator of grading
/// `target`.  Returns `None` when no such monomial entry exists (the exponent
/// would be negative or fractional), in which case the entry is forced to be
/// zero.
pub fn forced_exponent(target: Grading, source: Grading, deg: i64) -> Option<u32> {
    let twice = target - source - gr(deg);
    if !twice.is_integer() {
        return None;
    }
    let t = twice.to_integer();
    if t % 2 != 0 || t < 0 {
        return None;
    }
    Some((t / 2) as u32)
}

/// True when the two gradings lie in the same coset of the integers.
pub fn same_coset(a: Grading, b: Grading) -> bool {
    (a - b).is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_exponent_basics() {
        // Differential entry: a generator of grading -3 can hit U^2 times a
        // generator of grading 0.
        assert_eq!(forced_exponent(gr(0), gr(-3), -1), Some(2));
        // Degree-zero entry between equal gradings.
        assert_eq!(forced_exponent(gr(0), gr(0), 0), Some(0));
        // Negative exponent is rejected.
        assert_eq!(forced_exponent(gr(-2), gr(0), 0), None);
        // Parity mismatch is rejected.
        assert_eq!(forced_exponent(gr(1), gr(0), 0), None);
        // Half-integer gradings in a common coset still force integers.
        assert_eq!(forced_exponent(gr_frac(1, 2), gr_frac(-3, 2), 0), Some(1));
        assert_eq!(forced_exponent(gr_frac(-3, 2), gr(0), 0), None);
    }

    #[test]
    fn coset_detection() {
        assert!(same_coset(gr(3), gr(-7)));
        assert!(same_coset(gr_frac(1, 2), gr_frac(-5, 2)));
        assert!(!same_coset(gr_frac(1, 2), gr(0)));
    }
}
