//! Factor sets on doubly even codes.
//!
//! A factor set is a table `φ: C × C → {0,1}`, indexed by codeword index, with
//! `φ(u,0) = φ(0,u) = 0` and
//!
//! * SQUARE:   `φ(u,u) ≡ ||u||/4`
//! * SYMMETRY: `φ(u,v) + φ(v,u) ≡ (u·v)/2`
//! * COCYCLE:  `φ(u,v) + φ(u+v,w) + φ(v,w) + φ(u,v+w) ≡ c(u,v,w)`
//!
//! all mod 2. Sums of codewords are XORs of their indices.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::linalg::Gf2System;
use crate::report::{format_tuple, scan_tuples, IdentityReport};

/// Largest dimension accepted by the linear solver.
pub const MAX_SOLVER_DIMENSION: usize = 8;

/// Largest dimension for random tables and triple-scan checks.
pub const MAX_SCAN_DIMENSION: usize = 5;

/// Violation lists are truncated to this many entries.
pub const VIOLATION_CAP: usize = 128;

#[derive(Clone)]
pub struct FactorSet {
    code: Arc<LinearCode>,
    size: usize,
    stride: usize,
    table: Vec<u64>,
    verified: OnceLock<bool>,
}

impl FactorSet {
    /// Builds an unverified table from `size × size` entries.
    pub fn new(code: Arc<LinearCode>, entries: &[Vec<bool>]) -> Result<Self> {
        let size = code.size();
        if entries.len() != size || entries.iter().any(|r| r.len() != size) {
            let widths: Vec<String> = entries.iter().map(|r| r.len().to_string()).collect();
            return Err(Error::ShapeMismatch {
                expected: size,
                rows: entries.len(),
                detail: format!("[{}]", widths.join(",")),
            });
        }
        Self::from_fn(code, |u, v| entries[u][v])
    }

    /// Builds an unverified table from an entry function.
    pub fn from_fn(code: Arc<LinearCode>, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut phi = Self::zeroed(code);
        for u in 0..phi.size {
            for v in 0..phi.size {
                if f(u, v) {
                    if u == 0 || v == 0 {
                        return Err(Error::NotNormalized { row: u, col: v });
                    }
                    phi.set(u, v);
                }
            }
        }
        Ok(phi)
    }

    fn zeroed(code: Arc<LinearCode>) -> Self {
        let size = code.size();
        let stride = size.div_ceil(64);
        FactorSet {
            code,
            size,
            stride,
            table: vec![0; size * stride],
            verified: OnceLock::new(),
        }
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.table[u * self.stride + v / 64] |= 1 << (v % 64);
    }

    /// `φ(u,v)` for codeword indices `u`, `v`.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> bool {
        self.table[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    /// `φ(u,v)` as 0 or 1.
    #[inline]
    pub fn value(&self, u: usize, v: usize) -> u8 {
        self.get(u, v) as u8
    }

    pub fn code(&self) -> &Arc<LinearCode> {
        &self.code
    }

    pub fn dimension(&self) -> usize {
        self.code.dimension()
    }

    /// Number of codewords; the table is `size × size`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        (0..self.size)
            .map(|u| (0..self.size).map(|v| self.get(u, v)).collect())
            .collect()
    }

    /// Entry-wise sum of two tables on the same code.
    pub fn xor(&self, other: &FactorSet) -> Result<FactorSet> {
        if self.code != other.code {
            return Err(Error::PreconditionNotMet(
                "tables are on different codes".into(),
            ));
        }
        let mut out = Self::zeroed(self.code.clone());
        for (o, (a, b)) in out
            .table
            .iter_mut()
            .zip(self.table.iter().zip(&other.table))
        {
            *o = a ^ b;
        }
        Ok(out)
    }

    /// Result of the last [`FactorSet::is_factor_set`] call, if any.
    pub fn verified(&self) -> Option<bool> {
        self.verified.get().copied()
    }

    /// Parses the factor-set text format against `code`.
    pub fn parse(code: Arc<LinearCode>, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty input"))?;
        let k: usize = header
            .trim_end()
            .strip_prefix("k=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(1, 1, "expected header k=<dimension>"))?;
        if k != code.dimension() {
            return Err(parse_err(
                1,
                3,
                &format!(
                    "dimension {k} does not match code dimension {}",
                    code.dimension()
                ),
            ));
        }
        let size = code.size();
        let mut entries = Vec::with_capacity(size);
        for (lineno, line) in lines.by_ref().take(size) {
            let line = line.trim_end_matches('\r');
            if line.chars().count() != size {
                return Err(parse_err(
                    lineno + 1,
                    1,
                    &format!("expected {size} entries, found {}", line.chars().count()),
                ));
            }
            let row = line
                .chars()
                .enumerate()
                .map(|(col, ch)| match ch {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(parse_err(
                        lineno + 1,
                        col + 1,
                        &format!("unexpected character {other:?}"),
                    )),
                })
                .collect::<Result<Vec<bool>>>()?;
            entries.push(row);
        }
        if entries.len() != size {
            return Err(parse_err(
                entries.len() + 2,
                1,
                &format!("expected {size} rows, found {}", entries.len()),
            ));
        }
        if let Some((lineno, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(parse_err(
                lineno + 1,
                1,
                &format!("unexpected trailing line {extra:?}"),
            ));
        }
        Self::new(code, &entries)
    }

    /// Serializes to the factor-set text format.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.size * (self.size + 1) + 8);
        out.push_str(&format!("k={}\n", self.dimension()));
        for u in 0..self.size {
            for v in 0..self.size {
                out.push(if self.get(u, v) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    fn require_doubly_even(&self) -> Result<()> {
        if self.code.doubly_even() {
            Ok(())
        } else {
            Err(Error::NotDoublyEven)
        }
    }

    /// Scans SQUARE over all words, SYMMETRY over all ordered pairs and
    /// COCYCLE over all ordered triples.
    pub fn axiom_violations(&self) -> Result<AxiomReport> {
        self.require_doubly_even()?;
        let ar = Arith::new(&self.code);
        let n = self.size;
        let mut report = AxiomReport::default();

        for u in 0..n {
            report.checked += 1;
            let required = ar.quarter_norm(u);
            let lhs = self.value(u, u);
            if lhs != required {
                report.push(Axiom::Square, vec![u], lhs, required);
            }
        }
        for u in 0..n {
            for v in 0..n {
                report.checked += 1;
                let required = ar.half_dot(u, v);
                let lhs = self.value(u, v) ^ self.value(v, u);
                if lhs != required {
                    report.push(Axiom::Symmetry, vec![u, v], lhs, required);
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                let uv = self.value(u, v);
                for w in 0..n {
                    report.checked += 1;
                    let required = ar.triple_parity(u, v, w);
                    let lhs = uv ^ self.value(u ^ v, w) ^ self.value(v, w) ^ self.value(u, v ^ w);
                    if lhs != required {
                        report.push(Axiom::Cocycle, vec![u, v, w], lhs, required);
                    }
                }
            }
        }
        Ok(report)
    }

    /// True iff no axiom is violated. Records the outcome in the verified flag.
    pub fn is_factor_set(&self) -> Result<bool> {
        if let Some(&v) = self.verified.get() {
            return Ok(v);
        }
        let ok = self.axiom_violations()?.is_empty();
        Ok(*self.verified.get_or_init(|| ok))
    }

    /// Left, right and two-sided weak linearity, scanned over all pairs.
    pub fn weak_linearity(&self) -> WeakLinearity {
        let n = self.size;
        let mut lwl = LinearityVerdict::default();
        let mut rwl = LinearityVerdict::default();
        for u in 0..n {
            let uu = self.value(u, u);
            for v in 0..n {
                // φ(u+v,u) = φ(u,u) + φ(v,u)
                if self.value(u ^ v, u) != uu ^ self.value(v, u) {
                    lwl.record(u, v);
                }
                // φ(u,u+v) = φ(u,u) + φ(u,v)
                if self.value(u, u ^ v) != uu ^ self.value(u, v) {
                    rwl.record(u, v);
                }
            }
        }
        lwl.scanned = (n * n) as u64;
        rwl.scanned = (n * n) as u64;
        WeakLinearity { lwl, rwl }
    }

    /// Checks one of the congruences that follow from weak linearity.
    pub fn derived_congruence(&self, which: DerivedCongruence) -> Result<IdentityReport> {
        if !self.is_factor_set()? {
            return Err(Error::PreconditionNotMet(
                "table is not a factor set".into(),
            ));
        }
        let wl = self.weak_linearity();
        let (needs_lwl, needs_rwl) = match which {
            DerivedCongruence::LwlCong => (true, false),
            DerivedCongruence::RwlCong => (false, true),
            _ => (true, true),
        };
        if needs_lwl && !wl.lwl.holds() {
            return Err(Error::PreconditionNotMet("factor set is not lwl".into()));
        }
        if needs_rwl && !wl.rwl.holds() {
            return Err(Error::PreconditionNotMet("factor set is not rwl".into()));
        }
        let ar = Arith::new(&self.code);
        let p = |u: usize, v: usize| self.value(u, v);
        let report = scan_tuples(which.name(), self.size, 2, |t| {
            let (u, v) = (t[0], t[1]);
            match which {
                DerivedCongruence::LwlCong => p(u ^ v, u) == p(u, u) ^ ar.half_dot(u, v) ^ p(u, v),
                DerivedCongruence::RwlCong => p(u, u ^ v) == p(u, u) ^ ar.half_dot(u, v) ^ p(v, u),
                DerivedCongruence::WlSum => p(u ^ v, u) ^ p(u, u ^ v) == ar.half_dot(u, v),
                DerivedCongruence::WlEquiv => (p(u, u ^ v) == p(u ^ v, v)) == (p(u, v) == p(v, u)),
                DerivedCongruence::WlEquivProof => {
                    (p(u, u ^ v) == p(u ^ v, u)) == (p(u, v) == p(v, u))
                }
            }
        });
        Ok(report)
    }
}

fn parse_err(line: usize, column: usize, message: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

impl PartialEq for FactorSet {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.table == other.table
    }
}

impl Eq for FactorSet {}

impl fmt::Debug for FactorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FactorSet")
            .field("dimension", &self.dimension())
            .field("verified", &self.verified())
            .field("table", &self.to_text())
            .finish()
    }
}

/// Parity helpers over codeword indices. On a doubly even code every weight
/// is a multiple of 4 and every intersection count is even, so the halvings
/// are exact.
pub(crate) struct Arith<'a> {
    code: &'a LinearCode,
}

impl<'a> Arith<'a> {
    pub(crate) fn new(code: &'a LinearCode) -> Self {
        Arith { code }
    }

    /// `||u||/4 mod 2`.
    #[inline]
    pub(crate) fn quarter_norm(&self, u: usize) -> u8 {
        let w = self.code.word(u).weight();
        debug_assert_eq!(w % 4, 0);
        ((w / 4) & 1) as u8
    }

    /// `(u·v)/2 mod 2`.
    #[inline]
    pub(crate) fn half_dot(&self, u: usize, v: usize) -> u8 {
        let d = (self.code.word(u).bits() & self.code.word(v).bits()).count_ones();
        debug_assert_eq!(d % 2, 0);
        ((d / 2) & 1) as u8
    }

    /// `c(u,v,w) mod 2`.
    #[inline]
    pub(crate) fn triple_parity(&self, u: usize, v: usize, w: usize) -> u8 {
        let c = self.code.word(u).bits() & self.code.word(v).bits() & self.code.word(w).bits();
        (c.count_ones() & 1) as u8
    }

    /// `u·v`, unhalved.
    #[inline]
    pub(crate) fn dot(&self, u: usize, v: usize) -> u32 {
        (self.code.word(u).bits() & self.code.word(v).bits()).count_ones()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Square,
    Symmetry,
    Cocycle,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Square => "SQUARE",
            Axiom::Symmetry => "SYMMETRY",
            Axiom::Cocycle => "COCYCLE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Codeword indices, one per variable of the axiom.
    pub tuple: Vec<usize>,
    pub lhs: u8,
    pub required: u8,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: got {}, required {}",
            self.axiom.name(),
            format_tuple(&self.tuple),
            self.lhs,
            self.required
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// The first [`VIOLATION_CAP`] violations in scan order.
    pub violations: Vec<AxiomViolation>,
    pub total: u64,
    pub checked: u64,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    fn push(&mut self, axiom: Axiom, tuple: Vec<usize>, lhs: u8, required: u8) {
        self.total += 1;
        if self.violations.len() < VIOLATION_CAP {
            self.violations.push(AxiomViolation {
                axiom,
                tuple,
                lhs,
                required,
            });
        }
    }

    /// Violations of one axiom among the retained prefix.
    pub fn of(&self, axiom: Axiom) -> impl Iterator<Item = &AxiomViolation> {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearityVerdict {
    /// Failing `(u, v)` pairs, capped at [`VIOLATION_CAP`].
    pub failures: Vec<(usize, usize)>,
    pub total_failures: u64,
    pub scanned: u64,
}

impl LinearityVerdict {
    pub fn holds(&self) -> bool {
        self.total_failures == 0
    }

    pub fn witness(&self) -> Option<(usize, usize)> {
        self.failures.first().copied()
    }

    fn record(&mut self, u: usize, v: usize) {
        self.total_failures += 1;
        if self.failures.len() < VIOLATION_CAP {
            self.failures.push((u, v));
        }
    }

    pub fn to_report(&self, name: &str) -> IdentityReport {
        IdentityReport {
            name: name.to_string(),
            holds: self.holds(),
            counterexample: self.witness().map(|(u, v)| vec![u, v]),
            scanned: self.scanned,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakLinearity {
    pub lwl: LinearityVerdict,
    pub rwl: LinearityVerdict,
}

impl WeakLinearity {
    pub fn wl(&self) -> bool {
        self.lwl.holds() && self.rwl.holds()
    }
}

/// Congruences derived from weak linearity of a factor set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivedCongruence {
    /// lwl ⟹ `φ(u+v,u) ≡ φ(u,u) + (u·v)/2 + φ(u,v)`
    LwlCong,
    /// rwl ⟹ `φ(u,u+v) ≡ φ(u,u) + (u·v)/2 + φ(v,u)`
    RwlCong,
    /// wl ⟹ `φ(u+v,u) + φ(u,u+v) ≡ (u·v)/2`
    WlSum,
    /// wl ⟹ (`φ(u,u+v) = φ(u+v,v)` ⟺ `φ(u,v) = φ(v,u)`), pairwise, as printed.
    WlEquiv,
    /// wl ⟹ (`φ(u,u+v) = φ(u+v,u)` ⟺ `φ(u,v) = φ(v,u)`), pairwise: the form
    /// the accompanying derivation actually expands.
    WlEquivProof,
}

impl DerivedCongruence {
    pub const ALL: [DerivedCongruence; 5] = [
        DerivedCongruence::LwlCong,
        DerivedCongruence::RwlCong,
        DerivedCongruence::WlSum,
        DerivedCongruence::WlEquiv,
        DerivedCongruence::WlEquivProof,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DerivedCongruence::LwlCong => "LWL_CONG",
            DerivedCongruence::RwlCong => "RWL_CONG",
            DerivedCongruence::WlSum => "WL_SUM",
            DerivedCongruence::WlEquiv => "WL_EQUIV",
            DerivedCongruence::WlEquivProof => "WL_EQUIV_PROOF",
        }
    }
}

impl FromStr for DerivedCongruence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

fn check_solver_input(code: &LinearCode) -> Result<()> {
    if code.dimension() > MAX_SOLVER_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dimension: code.dimension(),
            limit: MAX_SOLVER_DIMENSION,
        });
    }
    if !code.doubly_even() {
        return Err(Error::NotDoublyEven);
    }
    Ok(())
}

/// Column of the unknown `φ(u,v)`, `u, v ≠ 0`: row-major order, reversed.
/// Pivots are lowest columns, so a COCYCLE row pivots on its entry with the
/// largest first index, which keeps pivot rows short.
#[inline]
fn column(n: usize, u: usize, v: usize) -> usize {
    (n - 1) * (n - 1) - 1 - ((u - 1) * (n - 1) + (v - 1))
}

pub(crate) fn build_system(code: &LinearCode, rows: CocycleRows) -> Gf2System {
    let n = code.size();
    let ar = Arith::new(code);
    let var = |u: usize, v: usize| column(n, u, v);
    let mut sys = Gf2System::new((n - 1) * (n - 1));
    let mut terms: Vec<usize> = Vec::with_capacity(4);
    let mut add = |sys: &mut Gf2System, pairs: &[(usize, usize)], rhs: u8| {
        terms.clear();
        terms.extend(
            pairs
                .iter()
                .filter(|&&(u, v)| u != 0 && v != 0)
                .map(|&(u, v)| var(u, v)),
        );
        sys.add_equation(&terms, rhs == 1);
    };

    for u in 0..n {
        add(&mut sys, &[(u, u)], ar.quarter_norm(u));
    }
    for u in 0..n {
        // u == v included: it reads 0 ≡ ||u||/2 and must be consistent
        for v in u..n {
            add(&mut sys, &[(u, v), (v, u)], ar.half_dot(u, v));
        }
    }
    let first_args: Vec<usize> = match rows {
        #[cfg(test)]
        CocycleRows::All => (0..n).collect(),
        CocycleRows::Generators => (0..code.dimension()).map(|j| 1 << j).collect(),
    };
    for &u in &first_args {
        for v in 0..n {
            for w in 0..n {
                add(
                    &mut sys,
                    &[(u, v), (u ^ v, w), (v, w), (u, v ^ w)],
                    ar.triple_parity(u, v, w),
                );
            }
        }
    }
    sys
}

/// Which COCYCLE equations enter the system.
///
/// Writing `ψ(u,v,w)` for the left side of COCYCLE as a linear form in the
/// unknowns, `ψ(a+b,c,d) = ψ(b,c,d) + ψ(a,b+c,d) + ψ(a,b,c+d) + ψ(a,b,c)`
/// holds identically, and the right sides obey the same relation. So the rows
/// whose first argument is a basis vector span all COCYCLE rows: both choices
/// give the same row space and therefore the same canonical solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum CocycleRows {
    #[cfg(test)]
    All,
    Generators,
}

fn table_from_solution(code: &Arc<LinearCode>, x: &[bool]) -> FactorSet {
    let n = code.size();
    FactorSet::from_fn(code.clone(), |u, v| u != 0 && v != 0 && x[column(n, u, v)])
        .expect("solution tables are normalized")
}

/// Solves the three axioms as a linear system over GF(2) and returns the
/// solution with every free variable set to zero.
pub fn solve_factor_set(code: Arc<LinearCode>) -> Result<FactorSet> {
    Ok(factor_set_space(code)?.particular)
}

/// All factor sets on a code: a particular solution plus a basis of the
/// homogeneous solutions.
#[derive(Clone, Debug)]
pub struct FactorSetSpace {
    pub particular: FactorSet,
    /// Homogeneous solutions (tables satisfying the axioms with zero
    /// right-hand sides), one per free variable.
    pub nullspace: Vec<FactorSet>,
}

impl FactorSetSpace {
    /// Number of free variables.
    pub fn free_variables(&self) -> usize {
        self.nullspace.len()
    }

    /// The particular solution plus the basis elements selected by `mask`.
    pub fn member(&self, mask: &[bool]) -> Result<FactorSet> {
        let mut phi = self.particular.clone();
        for (h, &on) in self.nullspace.iter().zip(mask) {
            if on {
                phi = phi.xor(h)?;
            }
        }
        Ok(phi)
    }
}

pub fn factor_set_space(code: Arc<LinearCode>) -> Result<FactorSetSpace> {
    check_solver_input(&code)?;
    if code.dimension() == 0 {
        let particular = FactorSet::zeroed(code);
        let _ = particular.verified.set(true);
        return Ok(FactorSetSpace {
            particular,
            nullspace: Vec::new(),
        });
    }
    let sys = build_system(&code, CocycleRows::Generators);
    let x = sys.particular_solution().ok_or(Error::InconsistentSystem)?;
    let particular = table_from_solution(&code, &x);
    if !particular.is_factor_set()? {
        return Err(Error::InconsistentSystem);
    }
    let nullspace = sys
        .nullspace_basis()
        .iter()
        .map(|h| table_from_solution(&code, h))
        .collect();
    Ok(FactorSetSpace {
        particular,
        nullspace,
    })
}

/// Uniformly random normalized table, not in general a factor set.
pub fn random_normalized_phi(code: Arc<LinearCode>, seed: u64) -> Result<FactorSet> {
    if code.dimension() > MAX_SCAN_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dimension: code.dimension(),
            limit: MAX_SCAN_DIMENSION,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut phi = FactorSet::zeroed(code);
    for u in 1..phi.size {
        for v in 1..phi.size {
            if rng.gen::<bool>() {
                phi.set(u, v);
            }
        }
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::BitWord;

    fn code(rows: &[&str]) -> Arc<LinearCode> {
        let words: Vec<_> = rows.iter().map(|s| BitWord::parse(s).unwrap()).collect();
        Arc::new(LinearCode::span(&words).unwrap())
    }

    fn rep() -> Arc<LinearCode> {
        code(&["1111"])
    }

    fn two() -> Arc<LinearCode> {
        code(&["11110000", "00111100"])
    }

    fn hamming() -> Arc<LinearCode> {
        code(&["11110000", "00111100", "00001111", "01010101"])
    }

    fn table(rows: &[&str]) -> Vec<Vec<bool>> {
        rows.iter()
            .map(|r| r.chars().map(|c| c == '1').collect())
            .collect()
    }

    // Oracle for the k = 2 example: generators u1, u2 at indices 1, 2.
    fn non_wl_two() -> FactorSet {
        FactorSet::from_fn(two(), |u, v| (u, v) == (1, 2)).unwrap()
    }

    #[test]
    fn make_table() {
        let phi = FactorSet::new(rep(), &table(&["00", "01"])).unwrap();
        assert!(phi.get(1, 1));
        assert_eq!(phi.verified(), None);
        assert_eq!(
            FactorSet::new(rep(), &table(&["10", "00"])),
            Err(Error::NotNormalized { row: 0, col: 0 })
        );
        assert!(matches!(
            FactorSet::new(rep(), &table(&["000", "010", "000"])),
            Err(Error::ShapeMismatch { expected: 2, .. })
        ));
        let phi = FactorSet::new(two(), &vec![vec![false; 4]; 4]).unwrap();
        assert_eq!(phi.size(), 4);
    }

    #[test]
    fn axiom_examples() {
        let phi = FactorSet::new(rep(), &table(&["00", "01"])).unwrap();
        assert!(phi.axiom_violations().unwrap().is_empty());

        let zero = FactorSet::new(rep(), &table(&["00", "00"])).unwrap();
        let report = zero.axiom_violations().unwrap();
        assert_eq!(report.total, 1);
        assert_eq!(
            report.violations[0],
            AxiomViolation {
                axiom: Axiom::Square,
                tuple: vec![1],
                lhs: 0,
                required: 1
            }
        );
        assert!(!zero.is_factor_set().unwrap());
        assert_eq!(zero.verified(), Some(false));

        let bad = FactorSet::new(code(&["1100"]), &table(&["00", "00"])).unwrap();
        assert_eq!(bad.axiom_violations(), Err(Error::NotDoublyEven));
        assert_eq!(bad.is_factor_set(), Err(Error::NotDoublyEven));

        let z = Arc::new(LinearCode::zero(4).unwrap());
        let phi = FactorSet::new(z, &table(&["0"])).unwrap();
        assert!(phi.is_factor_set().unwrap());
    }

    #[test]
    fn reported_violations_re_evaluate() {
        let phi = random_normalized_phi(hamming(), 3).unwrap();
        let report = phi.axiom_violations().unwrap();
        assert!(report.total > VIOLATION_CAP as u64);
        assert_eq!(report.violations.len(), VIOLATION_CAP);
        assert_eq!(report.checked, 16 + 256 + 4096);
        let ar = Arith::new(phi.code());
        for v in &report.violations {
            let t = &v.tuple;
            let (lhs, req) = match v.axiom {
                Axiom::Square => (phi.value(t[0], t[0]), ar.quarter_norm(t[0])),
                Axiom::Symmetry => (
                    phi.value(t[0], t[1]) ^ phi.value(t[1], t[0]),
                    ar.half_dot(t[0], t[1]),
                ),
                Axiom::Cocycle => {
                    let (u, v, w) = (t[0], t[1], t[2]);
                    (
                        phi.value(u, v)
                            ^ phi.value(u ^ v, w)
                            ^ phi.value(v, w)
                            ^ phi.value(u, v ^ w),
                        ar.triple_parity(u, v, w),
                    )
                }
            };
            assert_ne!(lhs, req);
            assert_eq!((lhs, req), (v.lhs, v.required));
        }
    }

    #[test]
    fn weak_linearity_examples() {
        for seed in 0..8 {
            let wl = random_normalized_phi(rep(), seed).unwrap().weak_linearity();
            assert!(wl.wl());
        }
        let wl = non_wl_two().weak_linearity();
        assert!(!wl.rwl.holds());
        assert!(wl.rwl.failures.contains(&(1, 2)));
        assert!(!wl.wl());
    }

    #[test]
    fn solver_examples() {
        let phi = solve_factor_set(rep()).unwrap();
        assert_eq!(phi.rows(), table(&["00", "01"]));
        assert_eq!(phi.verified(), Some(true));

        let phi = solve_factor_set(two()).unwrap();
        assert!(phi.get(1, 1) && phi.get(2, 2) && phi.get(3, 3));
        let ar = Arith::new(phi.code());
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(phi.value(u, v) ^ phi.value(v, u), ar.half_dot(u, v));
            }
        }
        assert!(phi.axiom_violations().unwrap().is_empty());

        let phi = solve_factor_set(hamming()).unwrap();
        let report = phi.axiom_violations().unwrap();
        assert!(report.is_empty());
        assert_eq!(report.checked, 16 + 256 + 4096);
        assert!(phi.weak_linearity().wl());

        assert_eq!(
            solve_factor_set(code(&["1100"])).unwrap_err(),
            Error::NotDoublyEven
        );
    }

    #[test]
    fn generator_cocycle_rows_span_all_rows() {
        let mut codes = vec![rep(), two(), hamming()];
        for seed in 0..4 {
            codes.push(Arc::new(
                crate::code::random_doubly_even_code(16, 3, seed).unwrap(),
            ));
        }
        codes.push(Arc::new(
            crate::code::random_doubly_even_code(20, 5, 1).unwrap(),
        ));
        for c in codes {
            let full = build_system(&c, CocycleRows::All);
            let reduced = build_system(&c, CocycleRows::Generators);
            assert!(full.equations() > reduced.equations() || c.dimension() <= 1);
            assert_eq!(full.rank(), reduced.rank());
            assert_eq!(full.free_columns(), reduced.free_columns());
            assert_eq!(full.particular_solution(), reduced.particular_solution());
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let a = solve_factor_set(hamming()).unwrap();
        let b = solve_factor_set(hamming()).unwrap();
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn space_examples() {
        let s = factor_set_space(rep()).unwrap();
        assert_eq!(s.free_variables(), 0);

        let z = Arc::new(LinearCode::zero(8).unwrap());
        let s = factor_set_space(z).unwrap();
        assert_eq!(s.free_variables(), 0);
        assert_eq!(s.particular.size(), 1);
        assert_eq!(s.particular.verified(), Some(true));

        let s = factor_set_space(hamming()).unwrap();
        // coboundaries of functions C → GF(2) vanishing at 0, modulo linear ones
        assert_eq!(s.free_variables(), 16 - 1 - 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mask: Vec<bool> = (0..s.free_variables()).map(|_| rng.gen()).collect();
            let phi = s.member(&mask).unwrap();
            assert!(phi.is_factor_set().unwrap());
        }
    }

    #[test]
    fn random_tables() {
        let z = Arc::new(LinearCode::zero(4).unwrap());
        assert_eq!(random_normalized_phi(z, 1).unwrap().size(), 1);
        assert_eq!(
            random_normalized_phi(two(), 9).unwrap(),
            random_normalized_phi(two(), 9).unwrap()
        );
        let failing = (0..10)
            .filter(|&s| {
                !random_normalized_phi(two(), s)
                    .unwrap()
                    .is_factor_set()
                    .unwrap()
            })
            .count();
        assert!(failing > 0);
        let big = Arc::new(
            LinearCode::span(
                &(0..6)
                    .map(|i| BitWord::from_bits(0b1111 << (4 * i), 24).unwrap())
                    .collect::<Vec<_>>(),
            )
            .unwrap(),
        );
        assert!(matches!(
            random_normalized_phi(big, 1),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn derived_congruences() {
        for c in [rep(), two(), hamming()] {
            let phi = solve_factor_set(c).unwrap();
            for which in [
                DerivedCongruence::LwlCong,
                DerivedCongruence::RwlCong,
                DerivedCongruence::WlSum,
                DerivedCongruence::WlEquivProof,
            ] {
                let r = phi.derived_congruence(which).unwrap();
                assert!(r.holds, "{r}");
            }
        }
        let phi = non_wl_two();
        assert!(matches!(
            phi.derived_congruence(DerivedCongruence::WlSum),
            Err(Error::PreconditionNotMet(_))
        ));
    }

    // The printed biconditional reduces, at v = 0, to φ(u,u) = 0; any word of
    // weight 4 mod 8 breaks it.
    #[test]
    fn printed_wl_equiv_fails_at_v_zero() {
        let phi = solve_factor_set(rep()).unwrap();
        let r = phi.derived_congruence(DerivedCongruence::WlEquiv).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample, Some(vec![0, 1]));
    }

    #[test]
    fn text_round_trip() {
        let phi = solve_factor_set(rep()).unwrap();
        assert_eq!(phi.to_text(), "k=1\n00\n01\n");
        let back = FactorSet::parse(rep(), &phi.to_text()).unwrap();
        assert_eq!(back, phi);
        assert!(FactorSet::parse(rep(), "k=2\n00\n01\n").is_err());
        assert!(matches!(
            FactorSet::parse(rep(), "k=1\n00\n0x\n"),
            Err(Error::Parse {
                line: 3,
                column: 2,
                ..
            })
        ));
        assert!(FactorSet::parse(rep(), "k=1\n00\n").is_err());
        assert!(matches!(
            FactorSet::parse(rep(), "k=1\n10\n00\n"),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn congruence_names() {
        for c in DerivedCongruence::ALL {
            assert_eq!(c.name().parse::<DerivedCongruence>().unwrap(), c);
        }
        assert!("nope".parse::<DerivedCongruence>().is_err());
    }
}
