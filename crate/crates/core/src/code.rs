//! Binary linear codes of length at most 64.
//!
//! A codeword is a single `u64` with coordinate `i` stored in bit `i`, so
//! weights and intersection counts are one `count_ones` each. Character `i` of
//! the textual form `"11110000"` is coordinate `i`.
//!
//! A [`LinearCode`] keeps its independent generators, in input order, and indexes
//! its `2^k` codewords by basis combination: index `i` is the XOR of the basis
//! rows selected by the bits of `i`. Index 0 is always the zero word.

use std::fmt;
use std::ops::BitXor;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Maximum code length: one machine word per codeword.
pub const MAX_LENGTH: usize = 64;

/// Maximum dimension for which codewords are enumerated and stored.
pub const MAX_DIMENSION: usize = 16;

/// Maximum dimension accepted by [`random_doubly_even_code`].
pub const MAX_RANDOM_DIMENSION: usize = 5;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitWord {
    bits: u64,
    len: u8,
}

#[inline]
fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl BitWord {
    /// The all-zero word with `len` coordinates.
    pub fn zero(len: usize) -> Result<Self> {
        Self::from_bits(0, len)
    }

    /// Builds a word from raw bits. Bits at positions `>= len` must be clear.
    pub fn from_bits(bits: u64, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyWord);
        }
        if len > MAX_LENGTH {
            return Err(Error::TooLong(len));
        }
        if bits & !mask(len) != 0 {
            return Err(Error::InvalidParameters(format!(
                "bits set beyond length {len}"
            )));
        }
        Ok(BitWord {
            bits,
            len: len as u8,
        })
    }

    /// Parses a line of `'0'`/`'1'` characters; character `i` is coordinate `i`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = 0u64;
        let mut len = 0usize;
        for (position, ch) in text.chars().enumerate() {
            let bit = match ch {
                '0' => 0,
                '1' => 1,
                found => return Err(Error::BadCharacter { position, found }),
            };
            if position >= MAX_LENGTH {
                return Err(Error::TooLong(text.chars().count()));
            }
            bits |= bit << position;
            len += 1;
        }
        if len == 0 {
            return Err(Error::EmptyWord);
        }
        Ok(BitWord {
            bits,
            len: len as u8,
        })
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(self) -> usize {
        self.len as usize
    }

    /// Always false: words have at least one coordinate.
    #[inline]
    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn get(self, i: usize) -> bool {
        i < self.len() && (self.bits >> i) & 1 == 1
    }

    /// Number of nonzero coordinates, `||u||`.
    #[inline]
    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Number of coordinates where both words are 1, `u·v`.
    pub fn dot(self, other: BitWord) -> Result<u32> {
        self.check_len(other)?;
        Ok((self.bits & other.bits).count_ones())
    }

    /// Number of coordinates where all three words are 1, `c(u,v,w)`.
    pub fn triple_count(self, v: BitWord, w: BitWord) -> Result<u32> {
        self.check_len(v)?;
        self.check_len(w)?;
        Ok((self.bits & v.bits & w.bits).count_ones())
    }

    /// Coordinatewise sum; fails on unequal lengths.
    pub fn checked_add(self, other: BitWord) -> Result<BitWord> {
        self.check_len(other)?;
        Ok(BitWord {
            bits: self.bits ^ other.bits,
            len: self.len,
        })
    }

    fn check_len(self, other: BitWord) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

impl BitXor for BitWord {
    type Output = BitWord;

    /// # Panics
    /// Panics if the lengths differ; use [`BitWord::checked_add`] otherwise.
    fn bitxor(self, rhs: BitWord) -> BitWord {
        assert_eq!(self.len, rhs.len, "adding words of different lengths");
        BitWord {
            bits: self.bits ^ rhs.bits,
            len: self.len,
        }
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

/// Why a code failed the doubly-even test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoublyEvenWitness {
    /// A codeword whose weight is not divisible by 4.
    Weight { index: usize, word: BitWord },
    /// Two codewords with an odd intersection count.
    Dot {
        left: usize,
        right: usize,
        left_word: BitWord,
        right_word: BitWord,
    },
}

impl fmt::Display for DoublyEvenWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DoublyEvenWitness::Weight { word, .. } => {
                write!(f, "{word} weight={}", word.weight())
            }
            DoublyEvenWitness::Dot {
                left_word,
                right_word,
                ..
            } => write!(
                f,
                "{left_word} {right_word} dot={}",
                (left_word.bits & right_word.bits).count_ones()
            ),
        }
    }
}

/// Result of the exhaustive doubly-even scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoublyEvenVerdict {
    pub witness: Option<DoublyEvenWitness>,
    /// Words plus ordered pairs examined.
    pub scanned: u64,
}

impl DoublyEvenVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// A binary linear code with an enumerated codeword list.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    length: usize,
    basis: Vec<BitWord>,
    echelon: Vec<EchelonRow>,
    words: Vec<BitWord>,
    doubly_even: bool,
}

impl LinearCode {
    /// The zero code `{0}` of the given length (dimension 0).
    pub fn zero(length: usize) -> Result<Self> {
        let z = BitWord::zero(length)?;
        Ok(Self::from_basis(length, Vec::new(), Vec::new(), z))
    }

    /// The code generated by `rows`. Rows dependent on earlier rows are
    /// dropped; the surviving rows, in input order, form the indexing basis.
    pub fn span(rows: &[BitWord]) -> Result<Self> {
        let first = rows.first().ok_or(Error::NoRows)?;
        let length = first.len();
        for r in rows {
            first.check_len(*r)?;
        }

        let mut basis = Vec::new();
        let mut echelon: Vec<EchelonRow> = Vec::new();
        for &row in rows {
            let (residual, combo) = reduce(&echelon, row.bits, 0);
            if residual == 0 {
                continue;
            }
            if basis.len() == MAX_DIMENSION {
                return Err(Error::DimensionTooLarge {
                    dimension: MAX_DIMENSION + 1,
                    limit: MAX_DIMENSION,
                });
            }
            let combo = combo | (1 << basis.len());
            let pivot = residual.trailing_zeros();
            // keep the echelon form reduced: clear the new pivot elsewhere
            for e in echelon.iter_mut() {
                if e.bits >> pivot & 1 == 1 {
                    e.bits ^= residual;
                    e.combo ^= combo;
                }
            }
            echelon.push(EchelonRow {
                bits: residual,
                pivot,
                combo,
            });
            basis.push(row);
        }
        echelon.sort_by_key(|e| e.pivot);
        Ok(Self::from_basis(
            length,
            basis,
            echelon,
            BitWord::zero(length)?,
        ))
    }

    fn from_basis(
        length: usize,
        basis: Vec<BitWord>,
        echelon: Vec<EchelonRow>,
        zero: BitWord,
    ) -> Self {
        let k = basis.len();
        let mut words = vec![zero; 1 << k];
        // words[i] = words[i without its top bit] + basis[top bit]
        for i in 1..words.len() {
            let top = usize::BITS - 1 - i.leading_zeros();
            words[i] = words[i ^ (1 << top)] ^ basis[top as usize];
        }
        let doubly_even = basis_shortcut(&basis);
        LinearCode {
            length,
            basis,
            echelon,
            words,
            doubly_even,
        }
    }

    /// Parses the generator-matrix text format: `'#'` comments and blank
    /// lines are skipped, every other line is a row of `'0'`/`'1'`.
    pub fn parse_generator_matrix(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut width: Option<usize> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let row = BitWord::parse(trimmed).map_err(|e| {
                let offset = line.len() - line.trim_start().len();
                let (column, message) = match e {
                    Error::BadCharacter { position, found } => (
                        offset + position + 1,
                        format!("unexpected character {found:?}"),
                    ),
                    other => (offset + 1, other.to_string()),
                };
                Error::Parse {
                    line: lineno + 1,
                    column,
                    message,
                }
            })?;
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        column: 1,
                        message: format!("row has {} columns, expected {w}", row.len()),
                    })
                }
                _ => {}
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                column: 1,
                message: "no generator rows".into(),
            });
        }
        Self::span(&rows)
    }

    #[inline]
    pub fn length(&self) -> usize {
        self.length
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Number of codewords, `2^k`.
    #[inline]
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn basis(&self) -> &[BitWord] {
        &self.basis
    }

    /// All codewords in index order.
    pub fn words(&self) -> &[BitWord] {
        &self.words
    }

    pub fn codeword_at(&self, index: usize) -> Result<BitWord> {
        self.words
            .get(index)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index,
                count: self.size(),
            })
    }

    /// Unchecked-range accessor for hot loops.
    #[inline]
    pub fn word(&self, index: usize) -> BitWord {
        self.words[index]
    }

    /// Index of `word` in this code, if it is a codeword.
    pub fn index_of(&self, word: BitWord) -> Option<usize> {
        if word.len() != self.length {
            return None;
        }
        let (residual, combo) = reduce(&self.echelon, word.bits, 0);
        (residual == 0).then_some(combo as usize)
    }

    /// Doubly-even status computed from the basis at construction.
    #[inline]
    pub fn doubly_even(&self) -> bool {
        self.doubly_even
    }

    /// Exhaustive doubly-even scan: every weight, then every ordered pair.
    pub fn doubly_even_check(&self) -> DoublyEvenVerdict {
        let mut scanned = 0u64;
        for (index, &word) in self.words.iter().enumerate() {
            scanned += 1;
            if word.weight() % 4 != 0 {
                return DoublyEvenVerdict {
                    witness: Some(DoublyEvenWitness::Weight { index, word }),
                    scanned,
                };
            }
        }
        for (left, &lw) in self.words.iter().enumerate() {
            for (right, &rw) in self.words.iter().enumerate() {
                scanned += 1;
                if (lw.bits & rw.bits).count_ones() % 2 != 0 {
                    return DoublyEvenVerdict {
                        witness: Some(DoublyEvenWitness::Dot {
                            left,
                            right,
                            left_word: lw,
                            right_word: rw,
                        }),
                        scanned,
                    };
                }
            }
        }
        DoublyEvenVerdict {
            witness: None,
            scanned,
        }
    }

    pub fn is_doubly_even(&self) -> bool {
        self.doubly_even_check().holds()
    }

    /// Generators have weight divisible by 4 and pairwise even overlaps.
    pub fn is_doubly_even_basis(&self) -> bool {
        basis_shortcut(&self.basis)
    }
}

/// A row of the reduced echelon form, with the combination of basis rows
/// (bit `j` = basis row `j`) that produces it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct EchelonRow {
    bits: u64,
    pivot: u32,
    combo: u32,
}

fn reduce(echelon: &[EchelonRow], mut bits: u64, mut combo: u32) -> (u64, u32) {
    for e in echelon {
        if bits >> e.pivot & 1 == 1 {
            bits ^= e.bits;
            combo ^= e.combo;
        }
    }
    (bits, combo)
}

// weight(u+v) = weight(u) + weight(v) - 2 u·v, so these two conditions on the
// generators propagate to every codeword.
fn basis_shortcut(basis: &[BitWord]) -> bool {
    basis.iter().enumerate().all(|(i, a)| {
        a.weight() % 4 == 0
            && basis[i + 1..]
                .iter()
                .all(|b| (a.bits & b.bits).count_ones() % 2 == 0)
    })
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearCode")
            .field("length", &self.length)
            .field("dimension", &self.dimension())
            .field("basis", &self.basis)
            .finish()
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.basis {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

const GENERATION_RESTARTS: usize = 64;
const DRAWS_PER_RESTART: usize = 4096;

/// Seeded random doubly even code of length `n` and dimension exactly `k`.
///
/// Generators of weight divisible by 4 are drawn one at a time and kept when
/// they are independent of, and evenly overlap, the generators kept so far.
/// Each result is re-validated by the exhaustive scan.
pub fn random_doubly_even_code(n: usize, k: usize, seed: u64) -> Result<LinearCode> {
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::InvalidParameters(format!(
            "length {n} not in 1..=64"
        )));
    }
    if k > MAX_RANDOM_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dimension: k,
            limit: MAX_RANDOM_DIMENSION,
        });
    }
    if k == 0 {
        return LinearCode::zero(n);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_RESTARTS {
        let mut rows: Vec<u64> = Vec::with_capacity(k);
        let mut spanned: Vec<u64> = vec![0];
        for _ in 0..DRAWS_PER_RESTART {
            if rows.len() == k {
                break;
            }
            let candidate = rng.gen::<u64>() & mask(n);
            if candidate == 0 || !candidate.count_ones().is_multiple_of(4) {
                continue;
            }
            if rows
                .iter()
                .any(|r| !(r & candidate).count_ones().is_multiple_of(2))
            {
                continue;
            }
            if spanned.contains(&candidate) {
                continue;
            }
            let shifted: Vec<u64> = spanned.iter().map(|s| s ^ candidate).collect();
            spanned.extend(shifted);
            rows.push(candidate);
        }
        if rows.len() < k {
            continue;
        }
        let words: Vec<BitWord> = rows
            .iter()
            .map(|&bits| BitWord::from_bits(bits, n))
            .collect::<Result<_>>()?;
        let code = LinearCode::span(&words)?;
        if code.dimension() == k && code.is_doubly_even() {
            return Ok(code);
        }
    }
    Err(Error::GenerationFailed {
        length: n,
        dimension: k,
    })
}
