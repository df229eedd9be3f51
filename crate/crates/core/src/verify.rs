//! Exhaustive checks of the identities and of the involution properties,
//! reported as plain serializable records.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::enumerate::{enumerate_permutations_capped, Caps};
use crate::error::{Error, Result};
use crate::phi::{enumerate_marked_capped, is_phi_fixed, phi_with, PhiRule};
use crate::psi::{enumerate_configurations_capped, is_fix, psi_with, PsiRule};
use crate::stirling::{
    factorial, labeled_signed_sum_closed_form, marked_signed_sum_closed_form,
    rising_factorial_coefficients, weighted_cycle_sum, weighted_cycle_sum_closed_form,
    StirlingTable,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub parameters: BTreeMap<String, usize>,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
    pub witness: Option<String>,
    pub elapsed_ms: f64,
    pub counts: BTreeMap<String, i128>,
}

impl VerificationReport {
    fn new(check: &str, parameters: &[(&str, usize)]) -> Self {
        VerificationReport {
            check: check.to_string(),
            parameters: parameters
                .iter()
                .map(|&(name, v)| (name.to_string(), v))
                .collect(),
            expected: String::new(),
            actual: String::new(),
            passed: false,
            witness: None,
            elapsed_ms: 0.0,
            counts: BTreeMap::new(),
        }
    }

    fn finish(mut self, started: Instant) -> Self {
        self.passed = self.expected == self.actual && self.witness.is_none();
        self.elapsed_ms = started.elapsed().as_secs_f64() * 1000.0;
        self
    }

    fn count(&mut self, name: &str, value: impl Into<i128>) {
        self.counts.insert(name.to_string(), value.into());
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

fn show_row(row: &[BigUint]) -> String {
    let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Total cycle count over even minus odd permutations of `[n]`.
pub fn check_theorem1(n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    let mut even: i128 = 0;
    let mut odd: i128 = 0;
    let mut perms: i128 = 0;
    for p in enumerate_permutations_capped(n, Caps::default().permutations)? {
        perms += 1;
        let cyc = p.cycle_count() as i128;
        if p.sign() == 1 {
            even += cyc;
        } else {
            odd += cyc;
        }
    }
    let mut report = VerificationReport::new("theorem1", &[("n", n)]);
    report.expected = marked_signed_sum_closed_form(n)?.to_string();
    report.actual = (even - odd).to_string();
    report.count("permutations", perms);
    report.count("even_cycles", even);
    report.count("odd_cycles", odd);
    Ok(report.finish(started))
}

/// Rising-factorial coefficients against the Stirling row and, for `n` up to
/// the marked-domain cap, against counts of permutations by cycle number.
pub fn check_eq2(n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    let table = StirlingTable::new(n);
    let row = table.row(n).expect("table covers n");
    let coeffs = rising_factorial_coefficients(n)?;
    let mut report = VerificationReport::new("eq2", &[("n", n)]);
    report.expected = show_row(row);
    report.actual = show_row(&coeffs);
    let total: BigUint = row.iter().sum();
    if total != factorial(n) {
        report.witness = Some(format!("row sums to {total}, not {n}!"));
    }
    if n <= Caps::default().marked {
        let mut by_cycles = vec![BigUint::from(0u32); n + 1];
        for p in enumerate_permutations_capped(n, Caps::default().permutations)? {
            by_cycles[p.cycle_count()] += 1u32;
        }
        report.count("enumerated", 1);
        if by_cycles != row {
            report.witness = Some(format!(
                "enumeration gives {}, table gives {}",
                show_row(&by_cycles),
                show_row(row)
            ));
        }
    } else {
        report.count("enumerated", 0);
    }
    Ok(report.finish(started))
}

pub fn check_eq4(n: usize, k: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let table = StirlingTable::new(n);
    let mut report = VerificationReport::new("eq4", &[("k", k), ("n", n)]);
    report.actual = weighted_cycle_sum(&table, n, k)?.to_string();
    report.expected = weighted_cycle_sum_closed_form(n, k)?.to_string();
    Ok(report.finish(started))
}

/// Which involution to check, and which variant of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Phi { n: usize, rule: PhiRule },
    Psi { n: usize, k: usize, rule: PsiRule },
}

struct Tally {
    domain: i128,
    fixed: i128,
    signed_sum: i128,
    violations: i128,
    witness: Option<String>,
}

impl Tally {
    fn run<T, M, F>(items: impl Iterator<Item = T>, map: M, is_fixed: F, fixed_sign: i64) -> Tally
    where
        T: PartialEq + std::fmt::Display,
        M: Fn(&T) -> Result<T>,
        F: Fn(&T) -> bool,
        T: Signed,
    {
        let mut tally = Tally {
            domain: 0,
            fixed: 0,
            signed_sum: 0,
            violations: 0,
            witness: None,
        };
        for x in items {
            tally.domain += 1;
            tally.signed_sum += x.sign() as i128;
            if let Some(problem) = Self::inspect(&x, &map, &is_fixed, fixed_sign, &mut tally.fixed) {
                tally.violations += 1;
                tally.witness.get_or_insert(problem);
            }
        }
        tally
    }

    fn inspect<T, M, F>(x: &T, map: &M, is_fixed: &F, fixed_sign: i64, fixed: &mut i128) -> Option<String>
    where
        T: PartialEq + std::fmt::Display + Signed,
        M: Fn(&T) -> Result<T>,
        F: Fn(&T) -> bool,
    {
        let y = match map(x) {
            Ok(y) => y,
            Err(e) => return Some(format!("{x}: map failed: {e}")),
        };
        let expected_fixed = is_fixed(x);
        if y == *x {
            *fixed += 1;
            if !expected_fixed {
                return Some(format!("{x}: fixed but not in the fixed-point set"));
            }
            if x.sign() != fixed_sign {
                return Some(format!("{x}: fixed point of sign {}", x.sign()));
            }
            return None;
        }
        if expected_fixed {
            return Some(format!("{x}: in the fixed-point set but maps to {y}"));
        }
        if y.sign() == x.sign() {
            return Some(format!("{x}: maps to {y} of the same sign"));
        }
        match map(&y) {
            Ok(z) if z == *x => None,
            Ok(z) => Some(format!("{x}: maps to {y}, which maps to {z}")),
            Err(e) => Some(format!("{x}: maps to {y}, where the map fails: {e}")),
        }
    }
}

trait Signed {
    fn sign(&self) -> i64;
}

impl Signed for crate::phi::MarkedPermutation {
    fn sign(&self) -> i64 {
        crate::phi::MarkedPermutation::sign(self)
    }
}

impl Signed for crate::psi::LabeledConfiguration {
    fn sign(&self) -> i64 {
        crate::psi::LabeledConfiguration::sign(self)
    }
}

/// Over the whole domain: the map is an involution, reverses sign off its
/// fixed points, fixes exactly the predicted set, and the fixed-point count,
/// fixed-point sign and signed sum match the closed forms. The witness is the
/// first element, in enumeration order, that breaks a per-element property.
pub fn check_involution(space: Space) -> Result<VerificationReport> {
    check_involution_capped(space, Caps::default())
}

pub fn check_involution_capped(space: Space, caps: Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let (mut report, tally, fixed_expected, sum_expected) = match space {
        Space::Phi { n, rule } => {
            check_cap(n, caps.marked)?;
            let sum = marked_signed_sum_closed_form(n)?;
            let fixed = BigInt::from(factorial(n - 2));
            let fixed_sign = if n % 2 == 0 { 1 } else { -1 };
            let tally = Tally::run(
                enumerate_marked_capped(n, caps.marked)?,
                |x| phi_with(x, rule).map(|(y, _)| y),
                is_phi_fixed,
                fixed_sign,
            );
            let name = match rule {
                PhiRule::Standard => "phi",
                PhiRule::SplitLast => "phi[split-last]",
            };
            (VerificationReport::new(name, &[("n", n)]), tally, fixed, sum)
        }
        Space::Psi { n, k, rule } => {
            check_cap(n, caps.labeled)?;
            let sum = labeled_signed_sum_closed_form(n, k)?;
            let fixed = BigInt::from(factorial(k) * factorial(n - k - 1));
            let fixed_sign = if (n - k - 1) % 2 == 0 { 1 } else { -1 };
            let tally = Tally::run(
                enumerate_configurations_capped(n, k, caps.labeled)?,
                |x| psi_with(x, rule).map(|(y, _)| y),
                is_fix,
                fixed_sign,
            );
            let name = if rule == PsiRule::BALANCED {
                "psi"
            } else if rule == PsiRule::LITERAL {
                "psi[literal]"
            } else {
                "psi[inverted-parity]"
            };
            (VerificationReport::new(name, &[("k", k), ("n", n)]), tally, fixed, sum)
        }
    };
    report.expected = format!("violations 0, fixed points {fixed_expected}, signed sum {sum_expected}");
    report.actual = format!(
        "violations {}, fixed points {}, signed sum {}",
        tally.violations, tally.fixed, tally.signed_sum
    );
    report.witness = tally.witness;
    report.count("domain", tally.domain);
    report.count("fixed_points", tally.fixed);
    report.count("signed_sum", tally.signed_sum);
    report.count("violations", tally.violations);
    Ok(report.finish(started))
}

/// Which checks a suite runs and how far.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_n: usize,
    /// Largest `n` for ψ checks; the effective bound is `min(max_n, psi_cap)`.
    pub psi_cap: usize,
    pub theorem1: bool,
    pub eq2: bool,
    pub eq4: bool,
    pub phi: bool,
    pub psi: bool,
    pub phi_rule: PhiRule,
    pub psi_rule: PsiRule,
}

impl SuiteConfig {
    pub fn all(max_n: usize) -> Self {
        SuiteConfig {
            max_n,
            psi_cap: Caps::default().labeled,
            theorem1: true,
            eq2: true,
            eq4: true,
            phi: true,
            psi: true,
            phi_rule: PhiRule::Standard,
            psi_rule: PsiRule::BALANCED,
        }
    }

    pub fn none(max_n: usize) -> Self {
        SuiteConfig {
            theorem1: false,
            eq2: false,
            eq4: false,
            phi: false,
            psi: false,
            ..SuiteConfig::all(max_n)
        }
    }
}

/// Runs the selected checks in a fixed order, handing each report to `sink`
/// as it completes:
///
/// - theorem1 for `n` in `2..=max_n`
/// - eq2 for `n` in `1..=min(2·max_n, 20)`
/// - eq4 for every `(n, k)` with `2 ≤ n ≤ min(2·max_n, 20)`
/// - phi for `n` in `2..=max_n`
/// - psi for every `(n, k)` with `2 ≤ n ≤ min(max_n, psi_cap)`
pub fn run_suite(
    config: &SuiteConfig,
    mut sink: impl FnMut(&VerificationReport),
) -> Result<Vec<VerificationReport>> {
    let caps = Caps::default();
    check_cap(config.max_n, caps.marked)?;
    let table_n = (2 * config.max_n).min(caps.table);
    let psi_n = config.max_n.min(config.psi_cap).min(caps.labeled);
    let mut reports = Vec::new();
    let mut emit = |r: VerificationReport| {
        sink(&r);
        reports.push(r);
    };
    if config.theorem1 {
        for n in 2..=config.max_n {
            emit(check_theorem1(n)?);
        }
    }
    if config.eq2 {
        for n in 1..=table_n {
            emit(check_eq2(n)?);
        }
    }
    if config.eq4 {
        for n in 2..=table_n {
            for k in 1..n {
                emit(check_eq4(n, k)?);
            }
        }
    }
    if config.phi {
        for n in 2..=config.max_n {
            emit(check_involution(Space::Phi {
                n,
                rule: config.phi_rule,
            })?);
        }
    }
    if config.psi {
        for n in 2..=psi_n {
            for k in 1..n {
                emit(check_involution(Space::Psi {
                    n,
                    k,
                    rule: config.psi_rule,
                })?);
            }
        }
    }
    Ok(reports)
}

pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

pub fn to_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

pub fn render_table(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    let params: Vec<String> = reports
        .iter()
        .map(|r| {
            r.parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let check_w = reports.iter().map(|r| r.check.len()).chain([5]).max().unwrap();
    let param_w = params.iter().map(String::len).chain([6]).max().unwrap();
    let _ = writeln!(out, "{:<check_w$}  {:<param_w$}  result  actual", "check", "params");
    for (r, p) in reports.iter().zip(&params) {
        let status = if r.passed { "pass" } else { "FAIL" };
        let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(
            out,
            "{:<check_w$}  {:<param_w$}  {status:<6}  {}  [{}]",
            r.check,
            p,
            r.actual,
            counts.join(" ")
        );
        if let Some(w) = &r.witness {
            let _ = writeln!(out, "{:<check_w$}  {:<param_w$}  witness {w}", "", "");
        }
        if !r.passed {
            let _ = writeln!(out, "{:<check_w$}  {:<param_w$}  expected {}", "", "", r.expected);
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let _ = writeln!(out, "{} checks, {} failed", reports.len(), failed);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem1_small() {
        let r = check_theorem1(3).unwrap();
        assert!(r.passed);
        assert_eq!((r.counts["even_cycles"], r.counts["odd_cycles"]), (5, 6));
        let r = check_theorem1(4).unwrap();
        assert_eq!((r.counts["even_cycles"], r.counts["odd_cycles"]), (26, 24));
        assert_eq!(r.actual, "2");
        assert!(check_theorem1(1).is_err());
        assert!(check_theorem1(11).is_err());
    }

    #[test]
    fn eq2_and_eq4_small() {
        let r = check_eq2(3).unwrap();
        assert!(r.passed);
        assert_eq!(r.actual, "[0,2,3,1]");
        assert_eq!(check_eq2(1).unwrap().actual, "[0,1]");
        assert!(check_eq2(12).unwrap().passed);
        assert_eq!(check_eq4(3, 1).unwrap().actual, "-1");
        assert_eq!(check_eq4(2, 1).unwrap().actual, "-1");
        assert!(check_eq4(3, 3).is_err());
    }

    #[test]
    fn involutions_small() {
        let r = check_involution(Space::Phi {
            n: 3,
            rule: PhiRule::Standard,
        })
        .unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.counts["domain"], 11);
        let r = check_involution(Space::Psi {
            n: 3,
            k: 1,
            rule: PsiRule::BALANCED,
        })
        .unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.counts["fixed_points"], 1);
        assert_eq!(r.counts["signed_sum"], -1);
    }

    #[test]
    fn broken_variants_fail() {
        let r = check_involution(Space::Phi {
            n: 3,
            rule: PhiRule::SplitLast,
        })
        .unwrap();
        assert!(!r.passed);
        assert!(r.witness.is_some());
        let r = check_involution(Space::Psi {
            n: 4,
            k: 3,
            rule: PsiRule::LITERAL,
        })
        .unwrap();
        assert!(!r.passed);
        assert_eq!(r.counts["violations"], 2);
        assert_eq!(r.counts["signed_sum"], 6);
    }

    #[test]
    fn suite_shape() {
        let mut seen = 0;
        let reports = run_suite(&SuiteConfig::all(4), |_| seen += 1).unwrap();
        assert_eq!(seen, reports.len());
        // 3 theorem1, 8 eq2, 28 eq4, 3 phi, 6 psi
        assert_eq!(reports.len(), 48);
        assert!(all_passed(&reports));
        let table = render_table(&reports);
        assert!(table.ends_with("48 checks, 0 failed\n"));
        assert!(run_suite(&SuiteConfig::all(9), |_| {}).is_err());
    }
}
