//! Dense linear algebra over the two-element field.
//!
//! The homotopy and local-map searches all reduce to affine systems over F2.
//! Rows are bit-packed; the eliminator keeps the row space in echelon form
//! with the *highest* variable index as the leading position of each row.
//! That orientation makes the lexicographically least solution easy to read
//! off: walking the variables in increasing order, a variable is either
//! pinned by the row leading at it (in terms of already-assigned earlier
//! variables) or genuinely free, and a free variable can always be set to 0.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
    pub rhs: bool,
}

impl BitRow {
    fn zero(nvars: usize) -> Self {
        BitRow {
            words: vec![0; nvars.div_ceil(64)],
            rhs: false,
        }
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    fn xor_in(&mut self, other: &BitRow) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
        self.rhs ^= other.rhs;
    }

    fn leading(&self) -> Option<usize> {
        for (wi, w) in self.words.iter().enumerate().rev() {
            if *w != 0 {
                return Some(wi * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }
}

/// Incremental Gaussian eliminator for affine systems over F2.
#[derive(Clone, Debug)]
pub struct System {
    nvars: usize,
    /// Echelon rows keyed by leading variable.
    rows: Vec<Option<BitRow>>,
    infeasible: bool,
}

impl System {
    pub fn new(nvars: usize) -> Self {
        System {
            nvars,
            rows: vec![None; nvars],
            infeasible: false,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Adds the equation `sum of vars = rhs`.  Variables may repeat; they are
    /// combined modulo 2.
    pub fn add_equation(&mut self, vars: &[usize], rhs: bool) {
        let mut row = BitRow::zero(self.nvars);
        for &v in vars {
            debug_assert!(v < self.nvars);
            row.set(v);
        }
        row.rhs = rhs;
        self.insert(row);
    }

    fn insert(&mut self, mut row: BitRow) {
        loop {
            match row.leading() {
                None => {
                    if row.rhs {
                        self.infeasible = true;
                    }
                    return;
                }
                Some(lead) => match &self.rows[lead] {
                    Some(basis) => row.xor_in(basis),
                    None => {
                        self.rows[lead] = Some(row);
                        return;
                    }
                },
            }
        }
    }

    pub fn is_feasible(&self) -> bool {
        !self.infeasible
    }

    /// Lexicographically least solution vector, if the system is feasible.
    /// "Least" compares the assignment `(v0, v1, ...)` as a binary string, so
    /// earlier variables are set to 0 whenever possible.
    pub fn solve_lex_min(&self) -> Option<Vec<bool>> {
        if self.infeasible {
            return None;
        }
        let mut assignment = vec![false; self.nvars];
        for v in 0..self.nvars {
            if let Some(row) = &self.rows[v] {
                // The row leads at its highest variable, so every other set
                // bit refers to an already-assigned variable.
                let mut val = row.rhs;
                for j in 0..v {
                    if row.get(j) && assignment[j] {
                        val = !val;
                    }
                }
                assignment[v] = val;
            }
        }
        Some(assignment)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        // v0 + v1 = 1, v1 + v2 = 0, v0 + v2 = 1.
        let mut sys = System::new(3);
        sys.add_equation(&[0, 1], true);
        sys.add_equation(&[1, 2], false);
        sys.add_equation(&[0, 2], true);
        let sol = sys.solve_lex_min().unwrap();
        // Solutions are (0,1,1) and (1,0,0); lex-least is (0,1,1).
        assert_eq!(sol, vec![false, true, true]);
    }

    #[test]
    fn detects_infeasibility() {
        let mut sys = System::new(2);
        sys.add_equation(&[0, 1], true);
        sys.add_equation(&[0, 1], false);
        assert!(!sys.is_feasible());
        assert!(sys.solve_lex_min().is_none());
    }

    #[test]
    fn free_variables_default_to_zero() {
        let mut sys = System::new(4);
        sys.add_equation(&[1, 3], true);
        let sol = sys.solve_lex_min().unwrap();
        assert_eq!(sol, vec![false, false, false, true]);
    }

    #[test]
    fn repeated_variables_cancel() {
        let mut sys = System::new(2);
        sys.add_equation(&[0, 0, 1], true);
        let sol = sys.solve_lex_min().unwrap();
        assert_eq!(sol, vec![false, true]);
    }

    #[test]
    fn empty_contradiction() {
        let mut sys = System::new(1);
        sys.add_equation(&[], true);
        assert!(!sys.is_feasible());
    }
}
