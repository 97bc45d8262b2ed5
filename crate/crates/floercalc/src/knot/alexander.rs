//! Symmetrized Alexander polynomials as exact Laurent polynomials over Z.
//!
//! Torus-knot polynomials are computed by exact division,
//! `(1 - t)(1 - t^{pq}) / ((1 - t^p)(1 - t^q))` centered at degree zero, and
//! cables substitute `t -> t^p` before multiplying by the torus factor.  The
//! reader for staircase data validates the alternating shape a polynomial
//! must have before it is trusted: coefficients +-1, signs alternating from
//! the top, and the constant term matching the parity of the number of
//! positive exponents.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlexError {
    #[error("polynomial is not in alternating form: {0}")]
    NotAlternating(String),
    #[error("inexact polynomial division")]
    InexactDivision,
}

/// Laurent polynomial with integer coefficients; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlexPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl AlexPoly {
    pub fn zero() -> Self {
        AlexPoly::default()
    }

    pub fn one() -> Self {
        AlexPoly::term(0, 1)
    }

    pub fn term(exp: i64, coeff: i64) -> Self {
        let mut p = AlexPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn nonzero_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = AlexPoly::zero();
        for (e1, c1) in self.iter() {
            for (e2, c2) in other.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Exact division, or `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.coeffs.is_empty() {
            return None;
        }
        if self.coeffs.is_empty() {
            return Some(AlexPoly::zero());
        }
        let (&dlead, &dcoef) = divisor.coeffs.iter().next_back().unwrap();
        // An exact quotient cannot reach below this exponent; stopping there
        // keeps inexact Laurent division from descending forever.
        let qe_min =
            self.coeffs.keys().next().unwrap() - divisor.coeffs.keys().next().unwrap();
        let mut rem = self.clone();
        let mut quot = AlexPoly::zero();
        while let Some((&rlead, &rcoef)) = rem.coeffs.iter().next_back() {
            let qe = rlead - dlead;
            if rcoef % dcoef != 0 || qe < qe_min {
                return None;
            }
            let qc = rcoef / dcoef;
            quot.add_term(qe, qc);
            for (e, c) in divisor.iter() {
                rem.add_term(e + qe, -c * qc);
            }
        }
        Some(quot)
    }

    /// Substitutes `t -> t^p`.
    pub fn substitute_power(&self, p: i64) -> Self {
        let mut out = AlexPoly::zero();
        for (e, c) in self.iter() {
            out.add_term(e * p, c);
        }
        out
    }

    /// `t -> 1/t`.
    pub fn reversed(&self) -> Self {
        let mut out = AlexPoly::zero();
        for (e, c) in self.iter() {
            out.add_term(-e, c);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.reversed()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.iter().map(|(_, c)| c).sum()
    }

    /// Symmetrized polynomial of the `(p, q)` torus knot, `p, q >= 1`
    /// coprime.  `T(1, q)` is the unknot.
    pub fn torus(p: i64, q: i64) -> Self {
        assert!(p >= 1 && q >= 1, "torus parameters must be positive");
        assert_eq!(gcd(p, q), 1, "torus parameters must be coprime");
        if p == 1 || q == 1 {
            return AlexPoly::one();
        }
        // (1 - t^{pq}) / (1 - t^p) = sum of t^{pi} for i < q.
        let mut a = AlexPoly::zero();
        for i in 0..q {
            a.add_term(p * i, 1);
        }
        let mut one_minus_t = AlexPoly::term(0, 1);
        one_minus_t.add_term(1, -1);
        let mut one_minus_tq = AlexPoly::term(0, 1);
        one_minus_tq.add_term(q, -1);
        let centered = a
            .mul(&one_minus_t)
            .div_exact(&one_minus_tq)
            .expect("torus polynomial division is exact");
        let shift = (p - 1) * (q - 1) / 2;
        let mut out = AlexPoly::zero();
        for (e, c) in centered.iter() {
            out.add_term(e - shift, c);
        }
        out
    }

    /// Polynomial of the `(p, q)` cable with the given companion polynomial.
    pub fn cable(p: i64, q: i64, companion: &Self) -> Self {
        companion.substitute_power(p).mul(&AlexPoly::torus(p, q))
    }

    /// Full descending exponent list of an alternating-form polynomial: the
    /// exponents carrying nonzero coefficients, validated to be symmetric
    /// with coefficients alternating +1, -1, ... from the top and constant
    /// term `(-1)^m`.
    pub fn alternating_exponents(&self) -> Result<Vec<i64>, AlexError> {
        if self.coeffs.is_empty() {
            return Err(AlexError::NotAlternating("zero polynomial".into()));
        }
        if !self.is_symmetric() {
            return Err(AlexError::NotAlternating("not symmetric".into()));
        }
        let exps: Vec<i64> = self.coeffs.keys().rev().copied().collect();
        if exps.len() % 2 != 1 {
            return Err(AlexError::NotAlternating(format!(
                "{} terms, expected an odd count",
                exps.len()
            )));
        }
        for (i, &e) in exps.iter().enumerate() {
            let expected = if i % 2 == 0 { 1 } else { -1 };
            if self.coeff(e) != expected {
                return Err(AlexError::NotAlternating(format!(
                    "coefficient {} at t^{e}, expected {expected}",
                    self.coeff(e)
                )));
            }
        }
        // Symmetry plus the odd count forces the middle exponent to be 0 and
        // the sign pattern to close up: constant term (-1)^m for m positive
        // exponents.
        if exps[exps.len() / 2] != 0 {
            return Err(AlexError::NotAlternating(
                "no constant term in an odd-length symmetric support".into(),
            ));
        }
        Ok(exps)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Two-bridge style positivity witness for the term count of a torus-knot
/// polynomial: positive integers `x + y = p`, `u + v = q` with
/// `v x - u y = 1`; then the polynomial has exactly `v x + u y` nonzero
/// terms.  Returns `(count, (x, y, u, v))` for the first witness in
/// lexicographic order.
pub fn song_term_count(p: i64, q: i64) -> Option<(i64, (i64, i64, i64, i64))> {
    for x in 1..p {
        let y = p - x;
        for u in 1..q {
            let v = q - u;
            if v * x - u * y == 1 {
                return Some((v * x + u * y, (x, y, u, v)));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_polynomial() {
        let d = AlexPoly::torus(2, 3);
        assert_eq!(d.coeff(1), 1);
        assert_eq!(d.coeff(0), -1);
        assert_eq!(d.coeff(-1), 1);
        assert_eq!(d.nonzero_terms(), 3);
        assert!(d.is_symmetric());
        assert_eq!(d.eval_at_one(), 1);
    }

    #[test]
    fn torus_3_4_polynomial() {
        let d = AlexPoly::torus(3, 4);
        assert_eq!(d.alternating_exponents().unwrap(), vec![3, 2, 0, -2, -3]);
        assert_eq!(d.degree(), Some(3));
    }

    #[test]
    fn torus_4_5_polynomial() {
        let d = AlexPoly::torus(4, 5);
        assert_eq!(
            d.alternating_exponents().unwrap(),
            vec![6, 5, 2, 0, -2, -5, -6]
        );
    }

    #[test]
    fn cable_of_trefoil() {
        // (2,5) cable of the trefoil: t^4 - t^3 + 1 - t^-3 + t^-4.
        let d = AlexPoly::cable(2, 5, &AlexPoly::torus(2, 3));
        assert_eq!(d.alternating_exponents().unwrap(), vec![4, 3, 0, -3, -4]);
        assert_eq!(d.eval_at_one(), 1);
    }

    #[test]
    fn unknot_and_products() {
        assert_eq!(AlexPoly::torus(1, 5), AlexPoly::one());
        let d23 = AlexPoly::torus(2, 3);
        let sq = d23.mul(&d23);
        assert!(sq.is_symmetric());
        assert_eq!(sq.eval_at_one(), 1);
        // A square has a repeated-sign pattern, so it is not alternating.
        assert!(sq.alternating_exponents().is_err());
    }

    #[test]
    fn song_witnesses() {
        assert_eq!(song_term_count(2, 3), Some((3, (1, 1, 1, 2))));
        assert_eq!(song_term_count(3, 4), Some((5, (1, 2, 1, 3))));
        for p in 2..=12i64 {
            for q in (p + 1)..=12 {
                if gcd(p, q) != 1 {
                    continue;
                }
                let (count, (x, y, u, v)) = song_term_count(p, q).unwrap();
                assert_eq!(x + y, p);
                assert_eq!(u + v, q);
                assert_eq!(v * x - u * y, 1);
                assert_eq!(count as usize, AlexPoly::torus(p, q).nonzero_terms());
                assert!(count >= q);
            }
        }
    }

    #[test]
    fn division_rejects_inexact() {
        let a = AlexPoly::term(1, 1);
        let b = AlexPoly::term(0, 2);
        assert_eq!(a.div_exact(&b), None);
        // (1 - t) / (1 - t^2) is not a polynomial; the divider must not
        // descend forever.
        let num = AlexPoly::term(0, 1).add(&AlexPoly::term(1, -1));
        let den = AlexPoly::term(0, 1).add(&AlexPoly::term(2, -1));
        assert_eq!(num.div_exact(&den), None);
        // Sanity: the reverse direction is exact.
        let q = den.div_exact(&num).unwrap();
        assert_eq!(q, AlexPoly::term(0, 1).add(&AlexPoly::term(1, 1)));
    }
}
