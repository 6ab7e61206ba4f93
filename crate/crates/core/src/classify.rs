//! Full classification of a code loop: every catalog identity and
//! discriminant, the composite loop classes, and a consistency matrix that
//! cross-checks the loop-level and `φ`-level verdicts on one instance.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::catalog::{check_identity, discriminant_holds, Discriminant, Identity};
use crate::error::{Error, Result};
use crate::factor::{DerivedCongruence, FactorSet, WeakLinearity};
use crate::loops::{CodeLoop, NuclearSquareVerdict};
use crate::report::{format_tuple, IdentityReport};

pub const MAX_CLASSIFY_DIMENSION: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Holds for every normalized `φ`.
    Unconditional,
    /// Only claimed when `φ` is a verified factor set.
    FactorSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// All members agree.
    Equivalent,
    /// All members are true.
    AllTrue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Consistent,
    Inconsistent,
    NotApplicable,
}

impl RowStatus {
    fn tag(self) -> &'static str {
        match self {
            RowStatus::Consistent => "OK",
            RowStatus::Inconsistent => "MISMATCH",
            RowStatus::NotApplicable => "N/A",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRow {
    pub label: &'static str,
    pub scope: Scope,
    pub kind: RowKind,
    pub members: Vec<(String, bool)>,
    pub status: RowStatus,
}

impl MatrixRow {
    fn new(
        label: &'static str,
        scope: Scope,
        kind: RowKind,
        members: Vec<(String, bool)>,
        factor_set: bool,
    ) -> Self {
        let status = if scope == Scope::FactorSet && !factor_set {
            RowStatus::NotApplicable
        } else {
            let ok = match kind {
                RowKind::Equivalent => members.windows(2).all(|w| w[0].1 == w[1].1),
                RowKind::AllTrue => members.iter().all(|m| m.1),
            };
            if ok {
                RowStatus::Consistent
            } else {
                RowStatus::Inconsistent
            }
        };
        MatrixRow {
            label,
            scope,
            kind,
            members,
            status,
        }
    }
}

impl fmt::Display for MatrixRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = match self.scope {
            Scope::Unconditional => "any-phi",
            Scope::FactorSet => "factor-set",
        };
        let sep = match self.kind {
            RowKind::Equivalent => " <=> ",
            RowKind::AllTrue => " & ",
        };
        let members: Vec<String> = self
            .members
            .iter()
            .map(|(n, v)| format!("{n}={}", if *v { 1 } else { 0 }))
            .collect();
        write!(
            f,
            "[{}] {} {}: {}",
            self.status.tag(),
            scope,
            self.label,
            members.join(sep)
        )
    }
}

/// A printed statement whose reading is known to differ from the form the
/// proof uses. Shown next to the corrected form and never affects the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub printed: IdentityReport,
    pub corrected: IdentityReport,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub dimension: usize,
    pub order: usize,
    pub factor_set: bool,
    pub weak_linearity: WeakLinearity,
    pub identities: Vec<IdentityReport>,
    pub discriminants: Vec<IdentityReport>,
    pub nuclear_square: NuclearSquareVerdict,
    pub nonassociative: Option<[usize; 3]>,
    pub composites: Vec<(&'static str, bool)>,
    pub matrix: Vec<MatrixRow>,
    pub errata: Vec<Erratum>,
}

impl Classification {
    pub fn identity(&self, id: Identity) -> &IdentityReport {
        &self.identities[Identity::ALL.iter().position(|&i| i == id).unwrap()]
    }

    pub fn discriminant(&self, d: Discriminant) -> &IdentityReport {
        &self.discriminants[Discriminant::ALL.iter().position(|&i| i == d).unwrap()]
    }

    pub fn composite(&self, name: &str) -> Option<bool> {
        self.composites
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|c| c.1)
    }

    pub fn is_group(&self) -> bool {
        self.nonassociative.is_none()
    }

    pub fn is_consistent(&self) -> bool {
        self.matrix
            .iter()
            .all(|r| r.status != RowStatus::Inconsistent)
    }

    pub fn inconsistent_rows(&self) -> impl Iterator<Item = &MatrixRow> {
        self.matrix
            .iter()
            .filter(|r| r.status == RowStatus::Inconsistent)
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wl = &self.weak_linearity;
        writeln!(
            f,
            "classification k={} order={} factor_set={}",
            self.dimension,
            self.order,
            flag(self.factor_set)
        )?;
        let lin = |v: &crate::factor::LinearityVerdict| match v.witness() {
            Some(w) => format!("false witness={}", format_tuple(&[w.0, w.1])),
            None => "true".to_string(),
        };
        writeln!(f, "weak-linearity lwl={}", lin(&wl.lwl))?;
        writeln!(f, "weak-linearity rwl={}", lin(&wl.rwl))?;
        writeln!(f, "weak-linearity wl={}", flag(wl.wl()))?;
        for r in &self.identities {
            writeln!(f, "identity {r}")?;
        }
        for r in &self.discriminants {
            writeln!(f, "discriminant {r}")?;
        }
        match self.nuclear_square.counterexample {
            None => writeln!(f, "nuclear-square HOLDS")?,
            Some(x) => writeln!(f, "nuclear-square FAILS witness=({x})")?,
        }
        match self.nonassociative {
            None => writeln!(f, "associativity group")?,
            Some(t) => writeln!(
                f,
                "associativity nonassociative witness={}",
                format_tuple(&t)
            )?,
        }
        for (name, v) in &self.composites {
            writeln!(f, "composite {name}={}", flag(*v))?;
        }
        writeln!(f, "matrix")?;
        for row in &self.matrix {
            writeln!(f, "  {row}")?;
        }
        for e in &self.errata {
            writeln!(
                f,
                "erratum printed {} | corrected {}",
                e.printed, e.corrected
            )?;
        }
        writeln!(
            f,
            "VERDICT {}",
            if self.is_consistent() {
                "CONSISTENT"
            } else {
                "INCONSISTENT"
            }
        )
    }
}

/// Classifies `L(φ)`. Works for any normalized `φ`; rows that are only
/// claimed for factor sets are reported as not applicable otherwise.
pub fn classify(phi: &Arc<FactorSet>) -> Result<Classification> {
    let k = phi.dimension();
    if k > MAX_CLASSIFY_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dimension: k,
            limit: MAX_CLASSIFY_DIMENSION,
        });
    }
    let factor_set = phi.is_factor_set()?;
    let lp = CodeLoop::new(Arc::clone(phi));
    let weak_linearity = phi.weak_linearity();

    let identities = Identity::ALL
        .iter()
        .map(|&id| check_identity(&lp, id))
        .collect::<Result<Vec<_>>>()?;
    let discriminants = Discriminant::ALL
        .iter()
        .map(|&d| discriminant_holds(phi, d))
        .collect::<Result<Vec<_>>>()?;
    let nuclear_square = lp.nuclear_square()?;
    let nonassociative = lp.find_nonassociative_triple()?;

    let id = |i: Identity| identities[Identity::ALL.iter().position(|&x| x == i).unwrap()].holds;
    let disc = |d: Discriminant| {
        discriminants[Discriminant::ALL.iter().position(|&x| x == d).unwrap()].holds
    };
    let lwl = weak_linearity.lwl.holds();
    let rwl = weak_linearity.rwl.holds();
    let wl = lwl && rwl;

    let lc = id(Identity::Lc1) && id(Identity::Lc2) && id(Identity::Lc3);
    let rc = id(Identity::Rc1) && id(Identity::Rc2) && id(Identity::Rc3);
    let c = id(Identity::CLoop);
    let lcc = id(Identity::Lcc);
    let rcc = id(Identity::Rcc);
    let cc = lcc && rcc;
    let lb = id(Identity::Lb);
    let rb = id(Identity::Rb);
    let moufang = [
        Identity::Moufang1,
        Identity::Moufang2,
        Identity::Moufang3,
        Identity::Moufang4,
    ]
    .iter()
    .all(|&m| id(m));
    let left_burn = lb && lcc;
    let right_burn = rb && rcc;
    let burn = moufang && cc;
    let extra = id(Identity::Extra1) && id(Identity::Extra2) && id(Identity::Extra3);
    let alternative = id(Identity::La) && id(Identity::Ra);

    let composites = vec![
        ("LC", lc),
        ("RC", rc),
        ("C", c),
        ("LCC", lcc),
        ("RCC", rcc),
        ("CC", cc),
        ("LB", lb),
        ("RB", rb),
        ("leftBurn", left_burn),
        ("rightBurn", right_burn),
        ("Moufang", moufang),
        ("Burn", burn),
        ("extra", extra),
        ("alternative", alternative),
        ("flexible", id(Identity::Flex)),
        ("nuclearSquare", nuclear_square.holds),
        ("group", nonassociative.is_none()),
    ];

    let m = |name: &str, v: bool| (name.to_string(), v);
    let idm = |i: Identity| m(i.name(), id(i));
    let dm = |d: Discriminant| m(d.name(), disc(d));
    use RowKind::*;
    use Scope::*;
    let row = |label, scope, kind, members| MatrixRow::new(label, scope, kind, members, factor_set);

    let mut matrix = vec![
        row(
            "left central",
            Unconditional,
            Equivalent,
            vec![
                idm(Identity::Lc1),
                idm(Identity::Lc2),
                idm(Identity::Lc3),
                dm(Discriminant::A1),
                dm(Discriminant::A2),
                dm(Discriminant::A3),
                idm(Identity::La),
                m("rwl", rwl),
            ],
        ),
        row(
            "right central",
            Unconditional,
            Equivalent,
            vec![
                idm(Identity::Rc1),
                idm(Identity::Rc2),
                idm(Identity::Rc3),
                dm(Discriminant::B1),
                dm(Discriminant::B2),
                dm(Discriminant::B3),
                idm(Identity::Ra),
                m("lwl", lwl),
            ],
        ),
        row(
            "C-loop",
            Unconditional,
            Equivalent,
            vec![idm(Identity::CLoop), dm(Discriminant::DRaw), m("wl", wl)],
        ),
    ];
    for (e, raw) in [
        (Identity::Extra1, Discriminant::E1Raw),
        (Identity::Extra2, Discriminant::E2Raw),
        (Identity::Extra3, Discriminant::E3Raw),
    ] {
        matrix.push(row(
            e.name(),
            Unconditional,
            Equivalent,
            vec![idm(e), dm(raw)],
        ));
    }
    matrix.extend([
        row(
            "left classes",
            FactorSet,
            Equivalent,
            vec![
                m("LC", lc),
                m("LCC", lcc),
                m("leftBurn", left_burn),
                m("rwl", rwl),
            ],
        ),
        row(
            "right classes",
            FactorSet,
            Equivalent,
            vec![
                m("RC", rc),
                m("RCC", rcc),
                m("rightBurn", right_burn),
                m("lwl", lwl),
            ],
        ),
        row(
            "two-sided classes",
            FactorSet,
            Equivalent,
            vec![
                m("C", c),
                m("CC", cc),
                m("Burn", burn),
                m("extra", extra),
                m("alternative", alternative),
                m("wl", wl),
            ],
        ),
        row(
            "C splits",
            FactorSet,
            Equivalent,
            vec![m("C", c), m("LC&RC", lc && rc)],
        ),
        row(
            "extra squares",
            FactorSet,
            Equivalent,
            vec![m("extra", extra), m("nuclearSquare", nuclear_square.holds)],
        ),
        row(
            "printed extra",
            FactorSet,
            Equivalent,
            vec![
                m("extra", extra),
                dm(Discriminant::E1),
                dm(Discriminant::E2),
                dm(Discriminant::E3),
            ],
        ),
        row(
            "automatic",
            FactorSet,
            AllTrue,
            vec![
                m("C", c),
                m("CC", cc),
                m("Moufang", moufang),
                m("Burn", burn),
                m("extra", extra),
                m("nuclearSquare", nuclear_square.holds),
            ],
        ),
    ]);

    let mut errata = vec![Erratum {
        printed: discriminant_holds(phi, Discriminant::DPaper)?,
        corrected: discriminant_holds(phi, Discriminant::DRaw)?,
    }];
    if factor_set && wl {
        errata.push(Erratum {
            printed: phi.derived_congruence(DerivedCongruence::WlEquiv)?,
            corrected: phi.derived_congruence(DerivedCongruence::WlEquivProof)?,
        });
    }

    Ok(Classification {
        dimension: k,
        order: lp.order(),
        factor_set,
        weak_linearity,
        identities,
        discriminants,
        nuclear_square,
        nonassociative,
        composites,
        matrix,
        errata,
    })
}

/// Renders just the verdict block, one line per composite and matrix row.
pub fn summary(c: &Classification) -> String {
    let mut out = String::new();
    for (name, v) in &c.composites {
        let _ = writeln!(out, "{name}={}", flag(*v));
    }
    for row in &c.matrix {
        let _ = writeln!(out, "{row}");
    }
    out
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

    #[test]
    fn repetition_code_is_a_group() {
        let phi = Arc::new(solve_factor_set(code(&["1111"])).unwrap());
        let c = classify(&phi).unwrap();
        assert!(c.factor_set);
        assert!(c.is_group());
        assert!(c.composites.iter().all(|(_, v)| *v));
        assert!(c.is_consistent());
        assert!(c.to_string().contains("associativity group"));
        assert!(c.to_string().ends_with("VERDICT CONSISTENT\n"));
    }

    #[test]
    fn hamming_loop_classes() {
        let phi = Arc::new(
            solve_factor_set(code(&["11110000", "00111100", "00001111", "01010101"])).unwrap(),
        );
        let c = classify(&phi).unwrap();
        for name in ["Moufang", "C", "CC", "extra", "Burn", "nuclearSquare"] {
            assert_eq!(c.composite(name), Some(true), "{name}");
        }
        assert_eq!(c.composite("group"), Some(false));
        let [x, y, z] = c.nonassociative.unwrap();
        let lp = CodeLoop::new(Arc::clone(&phi));
        assert_ne!(
            lp.mul_idx(lp.mul_idx(x, y), z),
            lp.mul_idx(x, lp.mul_idx(y, z))
        );
        assert!(c.is_consistent());
        assert!(c.matrix.iter().all(|r| r.status == RowStatus::Consistent));

        // D_PAPER and the printed WL_EQUIV are reported but do not gate
        assert_eq!(c.errata.len(), 2);
        assert!(!c.errata[0].printed.holds && c.errata[0].corrected.holds);
        assert!(c.errata[1].corrected.holds);
    }

    #[test]
    fn non_wl_table_stays_consistent() {
        let phi = Arc::new(
            FactorSet::from_fn(code(&["11110000", "00111100"]), |u, v| (u, v) == (1, 2)).unwrap(),
        );
        let c = classify(&phi).unwrap();
        assert!(!c.factor_set);
        assert!(!c.weak_linearity.rwl.holds());
        assert!(!c.identity(Identity::Lc1).holds);
        assert!(!c.identity(Identity::Lcc).holds);
        assert!(c.is_consistent());
        assert!(c
            .matrix
            .iter()
            .filter(|r| r.scope == Scope::FactorSet)
            .all(|r| r.status == RowStatus::NotApplicable));
        assert_eq!(c.errata.len(), 1);
    }

    #[test]
    fn random_tables_are_consistent() {
        for seed in 0..20 {
            let phi =
                Arc::new(random_normalized_phi(code(&["11110000", "00111100"]), seed).unwrap());
            let c = classify(&phi).unwrap();
            assert!(c.is_consistent(), "{c}");
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let row = MatrixRow::new(
            "demo",
            Scope::Unconditional,
            RowKind::Equivalent,
            vec![("P".into(), true), ("Q".into(), false)],
            false,
        );
        assert_eq!(row.status, RowStatus::Inconsistent);
        assert_eq!(row.to_string(), "[MISMATCH] any-phi demo: P=1 <=> Q=0");
    }

    #[test]
    fn dimension_limit() {
        let rows: Vec<BitWord> = (0..5)
            .map(|i| BitWord::from_bits(0b1111 << (4 * i), 20).unwrap())
            .collect();
        let c = Arc::new(LinearCode::span(&rows).unwrap());
        let phi = Arc::new(FactorSet::from_fn(c, |_, _| false).unwrap());
        assert!(matches!(
            classify(&phi),
            Err(Error::DimensionTooLarge {
                dimension: 5,
                limit: 4
            })
        ));
    }
}
