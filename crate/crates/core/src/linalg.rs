//! Incremental Gaussian elimination over GF(2) on bit-packed rows.
//!
//! Equations are fed one at a time and reduced against the pivot rows seen so
//! far. A row's pivot is its lowest set column. The set of pivot columns
//! depends only on the row space, so the solution with every free column set
//! to zero is canonical: it does not depend on the order equations arrive in.

/// A dense row of coefficients with a right-hand side bit.
#[derive(Clone, Debug)]
struct PivotRow {
    words: Vec<u64>,
    /// First and one-past-last nonzero word.
    lo: usize,
    hi: usize,
    rhs: bool,
}

/// An affine system `A x = b` over GF(2), built incrementally.
#[derive(Clone, Debug)]
pub struct Gf2System {
    nvars: usize,
    words_per_row: usize,
    /// `pivot_of[col]` = index into `rows` of the row whose pivot is `col`.
    pivot_of: Vec<Option<u32>>,
    rows: Vec<PivotRow>,
    equations: u64,
    inconsistent: bool,
    scratch: Vec<u64>,
}

impl Gf2System {
    pub fn new(nvars: usize) -> Self {
        let words_per_row = nvars.div_ceil(64).max(1);
        Gf2System {
            nvars,
            words_per_row,
            pivot_of: vec![None; nvars],
            rows: Vec::new(),
            equations: 0,
            inconsistent: false,
            scratch: vec![0; words_per_row],
        }
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[cfg(test)]
    pub fn equations(&self) -> u64 {
        self.equations
    }

    /// True once some equation reduced to `0 = 1`.
    #[cfg(test)]
    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Adds `sum(x[v] for v in vars) = rhs`. Repeated variables cancel.
    ///
    /// # Panics
    /// Panics if a variable index is out of range.
    pub fn add_equation(&mut self, vars: &[usize], rhs: bool) {
        self.equations += 1;
        let mut lo = usize::MAX;
        let mut hi = 0;
        for &v in vars {
            assert!(v < self.nvars, "variable {v} out of range");
            let w = v / 64;
            self.scratch[w] ^= 1 << (v % 64);
            lo = lo.min(w);
            hi = hi.max(w + 1);
        }
        if lo == usize::MAX {
            if rhs {
                self.inconsistent = true;
            }
            return;
        }
        self.reduce_scratch(lo, hi, rhs);
    }

    fn reduce_scratch(&mut self, mut lo: usize, mut hi: usize, mut rhs: bool) {
        loop {
            while lo < hi && self.scratch[lo] == 0 {
                lo += 1;
            }
            if lo == hi {
                if rhs {
                    self.inconsistent = true;
                }
                return;
            }
            let col = lo * 64 + self.scratch[lo].trailing_zeros() as usize;
            match self.pivot_of[col] {
                Some(r) => {
                    let row = &self.rows[r as usize];
                    for w in row.lo..row.hi {
                        self.scratch[w] ^= row.words[w];
                    }
                    hi = hi.max(row.hi);
                    rhs ^= row.rhs;
                }
                None => {
                    while hi > lo && self.scratch[hi - 1] == 0 {
                        hi -= 1;
                    }
                    let mut words = vec![0u64; self.words_per_row];
                    words[lo..hi].copy_from_slice(&self.scratch[lo..hi]);
                    self.scratch[lo..hi].fill(0);
                    self.pivot_of[col] = Some(self.rows.len() as u32);
                    self.rows.push(PivotRow { words, lo, hi, rhs });
                    return;
                }
            }
        }
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&c| self.pivot_of[c].is_none())
            .collect()
    }

    /// Back-substitution with the given values on free columns. Pivot rows
    /// only contain columns at or above their pivot, so solving pivots from
    /// the highest column down sees every other column already assigned.
    fn back_substitute(&self, free_value: impl Fn(usize) -> bool, homogeneous: bool) -> Vec<bool> {
        let mut x = vec![false; self.nvars];
        let mut packed = vec![0u64; self.words_per_row];
        for col in (0..self.nvars).rev() {
            let value = match self.pivot_of[col] {
                None => free_value(col),
                Some(r) => {
                    let row = &self.rows[r as usize];
                    let mut acc = if homogeneous { 0 } else { row.rhs as u32 };
                    for (a, b) in row.words[row.lo..row.hi]
                        .iter()
                        .zip(&packed[row.lo..row.hi])
                    {
                        acc ^= (a & b).count_ones() & 1;
                    }
                    acc & 1 == 1
                }
            };
            if value {
                x[col] = true;
                packed[col / 64] |= 1 << (col % 64);
            }
        }
        x
    }

    /// The solution with every free column set to zero, or `None` when the
    /// system is inconsistent.
    pub fn particular_solution(&self) -> Option<Vec<bool>> {
        if self.inconsistent {
            return None;
        }
        Some(self.back_substitute(|_| false, false))
    }

    /// One homogeneous solution per free column: that column set to 1, all
    /// other free columns 0.
    pub fn nullspace_basis(&self) -> Vec<Vec<bool>> {
        self.free_columns()
            .into_iter()
            .map(|f| self.back_substitute(|c| c == f, true))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(eqs: &[(Vec<usize>, bool)], x: &[bool]) -> bool {
        eqs.iter()
            .all(|(vars, rhs)| vars.iter().fold(false, |acc, &v| acc ^ x[v]) == *rhs)
    }

    fn brute_force(n: usize, eqs: &[(Vec<usize>, bool)]) -> Vec<Vec<bool>> {
        (0..1u32 << n)
            .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|x| eval(eqs, x))
            .collect()
    }

    #[test]
    fn small_system() {
        // x0 + x1 = 1, x1 + x2 = 0, x0 + x2 = 1 (dependent third equation)
        let eqs = vec![(vec![0, 1], true), (vec![1, 2], false), (vec![0, 2], true)];
        let mut s = Gf2System::new(3);
        for (v, r) in &eqs {
            s.add_equation(v, *r);
        }
        assert_eq!(s.rank(), 2);
        assert_eq!(s.free_columns(), vec![2]);
        let x = s.particular_solution().unwrap();
        assert_eq!(x, vec![true, false, false]);
        let ns = s.nullspace_basis();
        assert_eq!(ns, vec![vec![true, true, true]]);
    }

    #[test]
    fn inconsistency_detected() {
        let mut s = Gf2System::new(2);
        s.add_equation(&[0, 1], true);
        s.add_equation(&[1, 0], false);
        assert!(s.is_inconsistent());
        assert!(s.particular_solution().is_none());

        let mut s = Gf2System::new(1);
        s.add_equation(&[0, 0], true);
        assert!(s.is_inconsistent());
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 200;
        let mut s = Gf2System::new(n);
        for i in 0..n - 1 {
            s.add_equation(&[i, i + 1], i % 3 == 0);
        }
        let x = s.particular_solution().unwrap();
        for i in 0..n - 1 {
            assert_eq!(x[i] ^ x[i + 1], i % 3 == 0);
        }
        assert_eq!(s.free_columns(), vec![n - 1]);
        assert!(!x[n - 1]);
    }

    // Small random systems against exhaustive enumeration: the canonical
    // solution is the unique solution vanishing on the free columns.
    #[test]
    fn agrees_with_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=9);
            let m = rng.gen_range(0..=12);
            let eqs: Vec<(Vec<usize>, bool)> = (0..m)
                .map(|_| {
                    let len = rng.gen_range(0..=4);
                    ((0..len).map(|_| rng.gen_range(0..n)).collect(), rng.gen())
                })
                .collect();
            let mut s = Gf2System::new(n);
            for (v, r) in &eqs {
                s.add_equation(v, *r);
            }
            let all = brute_force(n, &eqs);
            match s.particular_solution() {
                None => assert!(all.is_empty()),
                Some(x) => {
                    assert_eq!(all.len(), 1 << s.free_columns().len());
                    let free = s.free_columns();
                    let canon: Vec<_> =
                        all.iter().filter(|y| free.iter().all(|&f| !y[f])).collect();
                    assert_eq!(canon, vec![&x]);
                    for h in s.nullspace_basis() {
                        let y: Vec<bool> = x.iter().zip(&h).map(|(a, b)| a ^ b).collect();
                        assert!(eval(&eqs, &y));
                    }
                }
            }
        }
    }

    #[test]
    fn order_independent() {
        let eqs = [
            (vec![0, 3], true),
            (vec![1, 2, 3], false),
            (vec![0, 1], true),
            (vec![2, 4], true),
        ];
        let solve = |order: &[usize]| {
            let mut s = Gf2System::new(5);
            for &i in order {
                s.add_equation(&eqs[i].0, eqs[i].1);
            }
            (s.particular_solution(), s.free_columns())
        };
        let a = solve(&[0, 1, 2, 3]);
        assert_eq!(a, solve(&[3, 2, 1, 0]));
        assert_eq!(a, solve(&[2, 0, 3, 1]));
    }
}
