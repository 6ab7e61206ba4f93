use std::fmt;

/// Verdict for one identity, discriminant or congruence scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub holds: bool,
    /// First failing tuple in canonical (lexicographic index) order.
    pub counterexample: Option<Vec<usize>>,
    /// Tuples examined. Scans stop at the first counterexample.
    pub scanned: u64,
}

impl IdentityReport {
    pub(crate) fn new(name: impl Into<String>) -> Self {
        IdentityReport {
            name: name.into(),
            holds: true,
            counterexample: None,
            scanned: 0,
        }
    }

    pub(crate) fn fail(&mut self, tuple: Vec<usize>) {
        self.holds = false;
        self.counterexample = Some(tuple);
    }
}

pub(crate) fn format_tuple(tuple: &[usize]) -> String {
    let parts: Vec<String> = tuple.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

/// `<name> <HOLDS|FAILS> [witness=<tuple>] scanned=<count>`
impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            self.name,
            if self.holds { "HOLDS" } else { "FAILS" }
        )?;
        if let Some(t) = &self.counterexample {
            write!(f, " witness={}", format_tuple(t))?;
        }
        write!(f, " scanned={}", self.scanned)
    }
}

/// Runs `check` over every tuple of `arity` indices below `size` in
/// lexicographic order, stopping at the first tuple where it returns false.
pub(crate) fn scan_tuples(
    name: impl Into<String>,
    size: usize,
    arity: usize,
    mut check: impl FnMut(&[usize]) -> bool,
) -> IdentityReport {
    let mut report = IdentityReport::new(name);
    let mut tuple = vec![0usize; arity];
    if size == 0 {
        return report;
    }
    loop {
        report.scanned += 1;
        if !check(&tuple) {
            report.fail(tuple);
            return report;
        }
        // odometer, last position fastest
        let mut pos = arity;
        loop {
            if pos == 0 {
                return report;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < size {
                break;
            }
            tuple[pos] = 0;
        }
    }
}
