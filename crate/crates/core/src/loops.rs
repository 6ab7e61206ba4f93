//! The code loop `L(φ) = {0,1} × C` with `(a,u)(b,v) = (a+b+φ(u,v), u+v)`.
//!
//! Elements are encoded as `a·2^k + u`, `u` a codeword index. Products of
//! small loops come from a materialized Cayley table; larger loops compute
//! them from `φ` on demand.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor::FactorSet;

/// Largest order accepted by the cubic scans (nucleus, center, triples).
pub const MAX_SCAN_ORDER: usize = 1 << 12;

/// Loops up to this order keep a Cayley table.
pub const MATERIALIZE_LIMIT: usize = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopElement {
    /// Scalar component in `{0,1}`.
    pub a: u8,
    /// Codeword index.
    pub u: usize,
}

impl LoopElement {
    pub fn new(a: u8, u: usize) -> Self {
        debug_assert!(a < 2);
        LoopElement { a, u }
    }
}

impl fmt::Display for LoopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.u)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `x\y`: the `z` with `xz = y`.
    Left,
    /// `y/x`: the `z` with `zx = y`.
    Right,
}

#[derive(Clone)]
pub struct CodeLoop {
    phi: Arc<FactorSet>,
    k: usize,
    mask: usize,
    order: usize,
    table: Option<Vec<u32>>,
}

/// Left, middle and right nuclei and their intersection, as sorted element
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    pub left: Vec<usize>,
    pub middle: Vec<usize>,
    pub right: Vec<usize>,
    pub nucleus: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NuclearSquareVerdict {
    pub holds: bool,
    /// First element whose square is not nuclear.
    pub counterexample: Option<usize>,
}

impl CodeLoop {
    /// Builds `L(φ)` for any normalized table. The Latin-square and identity
    /// properties are checked whenever the Cayley table is materialized.
    ///
    /// # Panics
    /// Panics if a materialized table is not a loop, which normalization rules
    /// out.
    pub fn new(phi: Arc<FactorSet>) -> Self {
        let k = phi.dimension();
        let size = 1usize << k;
        let order = 2 * size;
        let mut lp = CodeLoop {
            phi,
            k,
            mask: size - 1,
            order,
            table: None,
        };
        if order <= MATERIALIZE_LIMIT {
            let table: Vec<u32> = (0..order * order)
                .map(|i| lp.product(i / order, i % order) as u32)
                .collect();
            lp.table = Some(table);
            assert!(lp.is_latin_square(), "Cayley table is not a Latin square");
            assert!(lp.has_identity(), "(0,0) is not a two-sided identity");
        }
        lp
    }

    #[inline]
    fn product(&self, x: usize, y: usize) -> usize {
        let (u, v) = (x & self.mask, y & self.mask);
        let a = (x >> self.k) ^ (y >> self.k) ^ self.phi.get(u, v) as usize;
        (a << self.k) | (u ^ v)
    }

    pub fn phi(&self) -> &Arc<FactorSet> {
        &self.phi
    }

    /// `2^(k+1)`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn is_materialized(&self) -> bool {
        self.table.is_some()
    }

    pub fn element(&self, index: usize) -> LoopElement {
        LoopElement::new((index >> self.k) as u8, index & self.mask)
    }

    pub fn index(&self, x: LoopElement) -> usize {
        ((x.a as usize) << self.k) | x.u
    }

    /// Product of two element indices.
    #[inline]
    pub fn mul_idx(&self, x: usize, y: usize) -> usize {
        match &self.table {
            Some(t) => t[x * self.order + y] as usize,
            None => self.product(x, y),
        }
    }

    pub fn mul(&self, x: LoopElement, y: LoopElement) -> LoopElement {
        self.element(self.mul_idx(self.index(x), self.index(y)))
    }

    /// `x\y = (a+b+φ(u,u+v), u+v)`.
    #[inline]
    pub fn left_div_idx(&self, x: usize, y: usize) -> usize {
        let (u, v) = (x & self.mask, y & self.mask);
        let s = (x >> self.k) ^ (y >> self.k) ^ self.phi.get(u, u ^ v) as usize;
        (s << self.k) | (u ^ v)
    }

    /// `y/x = (a+b+φ(u+v,u), u+v)`.
    #[inline]
    pub fn right_div_idx(&self, y: usize, x: usize) -> usize {
        let (u, v) = (x & self.mask, y & self.mask);
        let s = (x >> self.k) ^ (y >> self.k) ^ self.phi.get(u ^ v, u) as usize;
        (s << self.k) | (u ^ v)
    }

    /// `Left`: `x\y`. `Right`: `y/x`.
    pub fn divide(&self, side: Side, x: LoopElement, y: LoopElement) -> LoopElement {
        let (x, y) = (self.index(x), self.index(y));
        self.element(match side {
            Side::Left => self.left_div_idx(x, y),
            Side::Right => self.right_div_idx(y, x),
        })
    }

    /// `xx = (φ(u,u), 0)`.
    pub fn square_of(&self, x: LoopElement) -> LoopElement {
        LoopElement::new(self.phi.value(x.u, x.u), 0)
    }

    pub fn is_latin_square(&self) -> bool {
        let n = self.order;
        let mut seen = vec![0u32; n];
        let mut stamp = 0;
        for x in 0..n {
            stamp += 1;
            for y in 0..n {
                let p = self.mul_idx(x, y);
                if seen[p] == stamp {
                    return false;
                }
                seen[p] = stamp;
            }
            stamp += 1;
            for y in 0..n {
                let p = self.mul_idx(y, x);
                if seen[p] == stamp {
                    return false;
                }
                seen[p] = stamp;
            }
        }
        true
    }

    pub fn has_identity(&self) -> bool {
        (0..self.order).all(|x| self.mul_idx(0, x) == x && self.mul_idx(x, 0) == x)
    }

    fn check_scan_order(&self) -> Result<()> {
        if self.order > MAX_SCAN_ORDER {
            return Err(Error::OrderTooLarge {
                order: self.order,
                limit: MAX_SCAN_ORDER,
            });
        }
        Ok(())
    }

    #[inline]
    fn associates(&self, x: usize, y: usize, z: usize) -> bool {
        self.mul_idx(self.mul_idx(x, y), z) == self.mul_idx(x, self.mul_idx(y, z))
    }

    fn all_pairs(&self, mut f: impl FnMut(usize, usize) -> bool) -> bool {
        (0..self.order).all(|p| (0..self.order).all(|q| f(p, q)))
    }

    /// Nuclei by definition: `x` is left nuclear iff `(xy)z = x(yz)` for all
    /// `y, z`, and likewise for the middle and right positions.
    pub fn nucleus(&self) -> Result<Nucleus> {
        self.check_scan_order()?;
        let left: Vec<usize> = (0..self.order)
            .filter(|&x| self.all_pairs(|y, z| self.associates(x, y, z)))
            .collect();
        let middle: Vec<usize> = (0..self.order)
            .filter(|&y| self.all_pairs(|x, z| self.associates(x, y, z)))
            .collect();
        let right: Vec<usize> = (0..self.order)
            .filter(|&z| self.all_pairs(|x, y| self.associates(x, y, z)))
            .collect();
        let nucleus = left
            .iter()
            .copied()
            .filter(|x| middle.binary_search(x).is_ok() && right.binary_search(x).is_ok())
            .collect();
        Ok(Nucleus {
            left,
            middle,
            right,
            nucleus,
        })
    }

    /// Nuclear elements commuting with every element.
    pub fn center(&self) -> Result<Vec<usize>> {
        Ok(self
            .nucleus()?
            .nucleus
            .into_iter()
            .filter(|&x| (0..self.order).all(|y| self.mul_idx(x, y) == self.mul_idx(y, x)))
            .collect())
    }

    /// Whether every square lies in the nucleus.
    pub fn nuclear_square(&self) -> Result<NuclearSquareVerdict> {
        let nucleus = self.nucleus()?.nucleus;
        let counterexample =
            (0..self.order).find(|&x| nucleus.binary_search(&self.mul_idx(x, x)).is_err());
        Ok(NuclearSquareVerdict {
            holds: counterexample.is_none(),
            counterexample,
        })
    }

    /// First `(x,y,z)` in index order with `(xy)z ≠ x(yz)`.
    pub fn find_nonassociative_triple(&self) -> Result<Option<[usize; 3]>> {
        self.check_scan_order()?;
        for x in 0..self.order {
            for y in 0..self.order {
                for z in 0..self.order {
                    if !self.associates(x, y, z) {
                        return Ok(Some([x, y, z]));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Cayley-table text: `order=<m>`, then `m` rows of `m` space-separated
    /// element indices.
    pub fn cayley_text(&self) -> String {
        let mut out = format!("order={}\n", self.order);
        for x in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|y| self.mul_idx(x, y).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for CodeLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CodeLoop")
            .field("order", &self.order)
            .field("materialized", &self.is_materialized())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{BitWord, LinearCode};
    use crate::factor::{random_normalized_phi, solve_factor_set};

    fn code(rows: &[&str]) -> Arc<LinearCode> {
        let words: Vec<_> = rows.iter().map(|s| BitWord::parse(s).unwrap()).collect();
        Arc::new(LinearCode::span(&words).unwrap())
    }

    fn z4() -> CodeLoop {
        CodeLoop::new(Arc::new(solve_factor_set(code(&["1111"])).unwrap()))
    }

    fn hamming_loop() -> CodeLoop {
        let c = code(&["11110000", "00111100", "00001111", "01010101"]);
        CodeLoop::new(Arc::new(solve_factor_set(c).unwrap()))
    }

    fn order_two() -> CodeLoop {
        let z = Arc::new(LinearCode::zero(4).unwrap());
        CodeLoop::new(Arc::new(solve_factor_set(z).unwrap()))
    }

    fn element_order(lp: &CodeLoop, x: usize) -> usize {
        let mut p = x;
        let mut n = 1;
        while p != 0 {
            p = lp.mul_idx(p, x);
            n += 1;
        }
        n
    }

    #[test]
    fn z4_structure() {
        let lp = z4();
        assert_eq!(lp.order(), 4);
        assert_eq!(lp.find_nonassociative_triple().unwrap(), None);
        assert_eq!(element_order(&lp, 1), 4);
        let u = LoopElement::new(0, 1);
        assert_eq!(lp.mul(u, u), LoopElement::new(1, 0));
        assert_eq!(lp.mul(u, LoopElement::new(1, 1)), LoopElement::new(0, 0));
        assert_eq!(
            lp.divide(Side::Left, u, LoopElement::new(0, 0)),
            LoopElement::new(1, 1)
        );
        assert_eq!(lp.square_of(u), LoopElement::new(1, 0));
        assert_eq!(lp.nucleus().unwrap().nucleus, vec![0, 1, 2, 3]);
        assert_eq!(lp.center().unwrap(), vec![0, 1, 2, 3]);
        assert!(lp.nuclear_square().unwrap().holds);
    }

    #[test]
    fn order_two_loop() {
        let lp = order_two();
        assert_eq!(lp.order(), 2);
        assert_eq!(lp.nucleus().unwrap().nucleus, vec![0, 1]);
        assert_eq!(lp.find_nonassociative_triple().unwrap(), None);
        assert_eq!(lp.cayley_text(), "order=2\n0 1\n1 0\n");
    }

    #[test]
    fn hamming_loop_structure() {
        let lp = hamming_loop();
        assert_eq!(lp.order(), 32);
        let nucleus = lp.nucleus().unwrap().nucleus;
        assert!(nucleus.contains(&0) && nucleus.contains(&16));
        assert!(lp.center().unwrap().contains(&16));
        assert!(lp.nuclear_square().unwrap().holds);
        assert!(lp.find_nonassociative_triple().unwrap().is_some());
        for x in 0..32 {
            let sq = lp.square_of(lp.element(x));
            assert_eq!(sq.u, 0);
            assert_eq!(lp.index(sq), lp.mul_idx(x, x));
        }
    }

    #[test]
    fn identity_and_products() {
        let lp = hamming_loop();
        let e = LoopElement::new(0, 0);
        for i in 0..lp.order() {
            let x = lp.element(i);
            assert_eq!(lp.mul(e, x), x);
            assert_eq!(lp.mul(x, e), x);
            assert_eq!(lp.index(x), i);
            assert_eq!(lp.divide(Side::Left, e, x), x);
        }
        for u in 0..16 {
            for v in 0..16 {
                let p = lp.mul(LoopElement::new(1, u), LoopElement::new(1, v));
                assert_eq!(p.a, lp.phi().value(u, v));
            }
        }
    }

    #[test]
    fn lazy_and_materialized_agree() {
        let lp = hamming_loop();
        let lazy = CodeLoop {
            table: None,
            ..lp.clone()
        };
        for x in 0..32 {
            for y in 0..32 {
                assert_eq!(lp.mul_idx(x, y), lazy.mul_idx(x, y));
            }
        }
    }

    #[test]
    fn divisions_against_search() {
        for seed in 0..5 {
            let phi = random_normalized_phi(code(&["11110000", "00111100"]), seed).unwrap();
            let lp = CodeLoop::new(Arc::new(phi));
            for x in 0..lp.order() {
                for y in 0..lp.order() {
                    let l = (0..lp.order()).find(|&z| lp.mul_idx(x, z) == y).unwrap();
                    let r = (0..lp.order()).find(|&z| lp.mul_idx(z, x) == y).unwrap();
                    assert_eq!(lp.left_div_idx(x, y), l);
                    assert_eq!(lp.right_div_idx(y, x), r);
                }
            }
        }
    }

    #[test]
    fn scan_limit() {
        let rows: Vec<BitWord> = (0..12)
            .map(|i| BitWord::from_bits(0b1111 << (4 * i), 48).unwrap())
            .collect();
        let c = Arc::new(LinearCode::span(&rows).unwrap());
        let phi = FactorSet::from_fn(c, |_, _| false).unwrap();
        let lp = CodeLoop::new(Arc::new(phi));
        assert!(!lp.is_materialized());
        assert_eq!(lp.order(), 8192);
        assert!(matches!(
            lp.nucleus(),
            Err(Error::OrderTooLarge { order: 8192, .. })
        ));
        assert!(lp.find_nonassociative_triple().is_err());
        assert_eq!(lp.mul_idx(4097, 4097), 0);
    }
}
