//! Command-line front end.
//!
//! Every command builds a [`Report`] and renders it either as text or as JSON.
//! Rationals are written as `num/den` in text and as a pair of decimal strings
//! in JSON.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arith::{from_parts, to_parts, Rational};
use crate::error::Error;
use crate::hodge_z2::{
    check_forms, lambda1_expression_z2, lambda2_expression_with, ClosedForm, Lambda2Form, ParityPattern,
};
use crate::integrals_z3::{reference_value, table_keys, HodgeIntegrals, IntegralKey};
use crate::lambda1_z3::{lambda1_expression, verification_totals, verify_theorem, VerificationReport};
use crate::strata::Family;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cyclic-covers", version, about = "Hodge classes on spaces of cyclic admissible covers")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree-3 covers
    #[command(subcommand)]
    Z3(Z3Command),
    /// Degree-2 covers
    #[command(subcommand)]
    Z2(Z2Command),
}

#[derive(Debug, Subcommand)]
enum Z3Command {
    /// Boundary divisor coefficients of the pushforward of lambda_1
    Lambda1 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Check the lambda_1 expression against every boundary curve
    Verify {
        #[arg(long, requires = "m", conflicts_with = "max_total")]
        n: Option<u32>,
        #[arg(long, requires = "n")]
        m: Option<u32>,
        #[arg(long)]
        max_total: Option<u32>,
    },
    /// Top power of lambda_1 integrated over the cover space
    Integral {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// List every summand of the recursion
        #[arg(long)]
        trace: bool,
    },
    /// Integrals for all keys with n >= m up to a total
    Table {
        #[arg(long)]
        max_total: u32,
    },
}

#[derive(Debug, Subcommand)]
enum Z2Command {
    /// Boundary divisor coefficients of lambda_1
    Lambda1 {
        #[arg(long)]
        branch: u32,
    },
    /// Codimension-2 coefficients of lambda_2
    Lambda2 {
        #[arg(long)]
        branch: u32,
        #[arg(long, value_enum, default_value_t = FormArg::Composed)]
        form: FormArg,
    },
    /// Compare closed and composed lambda_2 coefficients
    Check {
        #[arg(long)]
        max_branch: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Composed,
    ClosedPrinted,
    ClosedCorrected,
}

impl FormArg {
    fn form(self) -> Lambda2Form {
        match self {
            FormArg::Composed => Lambda2Form::Composed,
            FormArg::ClosedPrinted => Lambda2Form::Closed(ClosedForm::Printed),
            FormArg::ClosedCorrected => Lambda2Form::Closed(ClosedForm::Corrected),
        }
    }

    fn name(self) -> &'static str {
        match self {
            FormArg::Composed => "composed",
            FormArg::ClosedPrinted => "closed-printed",
            FormArg::ClosedCorrected => "closed-corrected",
        }
    }
}

/// Exact rational as decimal numerator and denominator strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub numerator: String,
    pub denominator: String,
}

impl From<&Rational> for RationalJson {
    fn from(value: &Rational) -> Self {
        let (numerator, denominator) = to_parts(value);
        RationalJson { numerator, denominator }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Option<Rational> {
        from_parts(&self.numerator, &self.denominator)
    }

    fn text(&self) -> String {
        if self.denominator == "1" {
            self.numerator.clone()
        } else {
            format!("{}/{}", self.numerator, self.denominator)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub i: u32,
    pub j: u32,
    pub coefficient: RationalJson,
    pub combinatorial_factor: String,
    pub left: [u32; 2],
    pub right: [u32; 2],
    pub value: RationalJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureJson {
    pub curve: String,
    pub computed: RationalJson,
    pub expected: RationalJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OutputRecord {
    Coefficient {
        class: Vec<u32>,
        label: String,
        value: RationalJson,
    },
    Integral {
        n: u32,
        m: u32,
        value: RationalJson,
        base_case: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reference: Option<RationalJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        terms: Option<Vec<TermJson>>,
    },
    Verification {
        n: u32,
        m: u32,
        total_curves: usize,
        family_counts: BTreeMap<String, usize>,
        failures: Vec<FailureJson>,
    },
    FormsCheck {
        class: Vec<u32>,
        form: String,
        composed: RationalJson,
        closed: RationalJson,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub subject: String,
    pub computed: RationalJson,
    pub reference: RationalJson,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub results: Vec<OutputRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<Discrepancy>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    fn new(kind: &str) -> Self {
        Report {
            kind: kind.to_string(),
            inputs: BTreeMap::new(),
            results: Vec::new(),
            discrepancies: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn input(mut self, name: &str, value: impl Into<serde_json::Value>) -> Self {
        self.inputs.insert(name.to_string(), value.into());
        self
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        s.push_str(&format!("# {} {}\n", self.kind, inputs.join(" ")));
        for r in &self.results {
            render_record(r, &mut s);
        }
        for d in &self.discrepancies {
            s.push_str(&format!(
                "discrepancy: {} computed {} reference {} ({})\n",
                d.subject,
                d.computed.text(),
                d.reference.text(),
                d.note
            ));
        }
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s
    }
}

fn render_record(r: &OutputRecord, s: &mut String) {
    match r {
        OutputRecord::Coefficient { label, value, .. } => s.push_str(&format!("{label} {}\n", value.text())),
        OutputRecord::Integral { n, m, value, base_case, reference, terms } => {
            s.push_str(&format!("integral ({n}, {m}) = {}", value.text()));
            if *base_case {
                s.push_str(" [base case]");
            }
            if let Some(r) = reference {
                s.push_str(&format!(" reference {}", r.text()));
            }
            s.push('\n');
            for t in terms.iter().flatten() {
                s.push_str(&format!(
                    "  term ({}, {}) coefficient {} factor {} I({}, {}) I({}, {}) value {}\n",
                    t.i,
                    t.j,
                    t.coefficient.text(),
                    t.combinatorial_factor,
                    t.left[0],
                    t.left[1],
                    t.right[0],
                    t.right[1],
                    t.value.text()
                ));
            }
        }
        OutputRecord::Verification { n, m, total_curves, family_counts, failures } => {
            let counts: Vec<String> = family_counts.iter().map(|(f, c)| format!("{f}={c}")).collect();
            s.push_str(&format!(
                "verify ({n}, {m}) curves {total_curves} families {} failures {}\n",
                counts.join(" "),
                failures.len()
            ));
            for f in failures {
                s.push_str(&format!(
                    "  FAIL {} computed {} expected {}\n",
                    f.curve,
                    f.computed.text(),
                    f.expected.text()
                ));
            }
        }
        OutputRecord::FormsCheck { class, form, composed, closed } => s.push_str(&format!(
            "mismatch {form} ({}) composed {} closed {}\n",
            class.iter().map(u32::to_string).collect::<Vec<_>>().join(", "),
            composed.text(),
            closed.text()
        )),
    }
}

struct Outcome {
    report: Report,
    failed: bool,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };

    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };

    let written = match cli.format {
        Format::Text => write!(out, "{}", outcome.report.render_text()),
        Format::Json => {
            let json = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
            writeln!(out, "{json}")
        }
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    if outcome.failed {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

fn dispatch(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Z3(Z3Command::Lambda1 { n, m }) => z3_lambda1(*n, *m),
        Command::Z3(Z3Command::Verify { n, m, max_total }) => match (n, m, max_total) {
            (Some(n), Some(m), None) => z3_verify(vec![(*n, *m)], "verify").map(|mut o| {
                o.report = o.report.input("n", *n).input("m", *m);
                o
            }),
            (None, None, Some(max)) => z3_verify(verification_totals(*max), "verify").map(|mut o| {
                o.report = o.report.input("max_total", *max);
                o
            }),
            _ => Err(Error::InvalidTotals { n: n.unwrap_or(0), m: m.unwrap_or(0), min_total: 4 }),
        },
        Command::Z3(Z3Command::Integral { n, m, trace }) => z3_integral(*n, *m, *trace),
        Command::Z3(Z3Command::Table { max_total }) => Ok(z3_table(*max_total)),
        Command::Z2(Z2Command::Lambda1 { branch }) => z2_lambda1(*branch),
        Command::Z2(Z2Command::Lambda2 { branch, form }) => z2_lambda2(*branch, *form),
        Command::Z2(Z2Command::Check { max_branch }) => Ok(z2_check(*max_branch)),
    }
}

fn z3_lambda1(n: u32, m: u32) -> Result<Outcome, Error> {
    let expr = lambda1_expression(n, m)?;
    let mut report = Report::new("z3-lambda1")
        .input("n", n)
        .input("m", m)
        .input("pullback_factor", RationalJson::from(expr.pullback_factor()).text());
    for (d, alpha) in expr.entries() {
        report.results.push(OutputRecord::Coefficient {
            class: vec![d.i(), d.j()],
            label: d.to_string(),
            value: alpha.into(),
        });
    }
    report.notes.push(format!(
        "lambda_1 = {} * pullback(sum alpha_i^j D_i^j)",
        RationalJson::from(expr.pullback_factor()).text()
    ));
    Ok(Outcome { report, failed: false })
}

fn verification_record(r: &VerificationReport) -> OutputRecord {
    OutputRecord::Verification {
        n: r.n,
        m: r.m,
        total_curves: r.total_curves,
        family_counts: Family::ALL
            .iter()
            .map(|f| (f.name().to_string(), r.family_counts.get(f).copied().unwrap_or(0)))
            .collect(),
        failures: r
            .failures
            .iter()
            .map(|f| FailureJson {
                curve: f.curve.to_string(),
                computed: (&f.computed).into(),
                expected: (&f.expected).into(),
            })
            .collect(),
    }
}

fn z3_verify(totals: Vec<(u32, u32)>, kind: &str) -> Result<Outcome, Error> {
    let mut report = Report::new(&format!("z3-{kind}"));
    let mut failed = false;
    for (n, m) in totals {
        let r = verify_theorem(n, m)?;
        failed |= !r.passed();
        report.results.push(verification_record(&r));
    }
    Ok(Outcome { report, failed })
}

fn integral_record(
    integrals: &mut HodgeIntegrals,
    key: IntegralKey,
    trace: bool,
) -> Result<(OutputRecord, Option<Discrepancy>), Error> {
    let value = integrals.value(key)?;
    let reference = reference_value(key);
    let terms = if trace && !key.is_base_case() {
        let terms = integrals.trace(key)?;
        Some(
            terms
                .iter()
                .map(|t| TermJson {
                    i: t.i,
                    j: t.j,
                    coefficient: (&t.coefficient).into(),
                    combinatorial_factor: t.combinatorial_factor.to_string(),
                    left: [t.left_key.n, t.left_key.m],
                    right: [t.right_key.n, t.right_key.m],
                    value: (&t.term_value).into(),
                })
                .collect(),
        )
    } else {
        None
    };
    let discrepancy = reference.as_ref().filter(|r| **r != value).map(|r| Discrepancy {
        subject: format!("integral ({}, {})", key.n, key.m),
        computed: (&value).into(),
        reference: r.into(),
        note:
            "tabulated reference value disagrees with the recursion; the base cases reproduce every other tabulated row"
                .to_string(),
    });
    let record = OutputRecord::Integral {
        n: key.n,
        m: key.m,
        value: (&value).into(),
        base_case: key.is_base_case(),
        reference: reference.as_ref().map(Into::into),
        terms,
    };
    Ok((record, discrepancy))
}

const BASE_CASE_NOTE: &str =
    "base cases: n + m = 3 -> 1/3 and (2, 2) -> 2/9; the recursion is applied for n + m >= 5 in the orientation n >= m";

fn z3_integral(n: u32, m: u32, trace: bool) -> Result<Outcome, Error> {
    let key = IntegralKey::new(n, m)?;
    let mut integrals = HodgeIntegrals::new();
    let (record, discrepancy) = integral_record(&mut integrals, key, trace)?;
    let mut report = Report::new("z3-integral").input("n", n).input("m", m).input("trace", trace);
    report.results.push(record);
    report.discrepancies.extend(discrepancy);
    if trace {
        if key.canonical() != key {
            report.notes.push(format!("terms traced in orientation {}", key.canonical()));
        }
        report.notes.push(BASE_CASE_NOTE.to_string());
    }
    Ok(Outcome { report, failed: false })
}

fn z3_table(max_total: u32) -> Outcome {
    let mut integrals = HodgeIntegrals::new();
    let mut report = Report::new("z3-table").input("max_total", max_total);
    for key in table_keys(max_total) {
        let (record, discrepancy) = integral_record(&mut integrals, key, false).expect("table keys are valid");
        report.results.push(record);
        report.discrepancies.extend(discrepancy);
    }
    report.notes.push(BASE_CASE_NOTE.to_string());
    Outcome { report, failed: false }
}

fn z2_lambda1(branch: u32) -> Result<Outcome, Error> {
    let expr = lambda1_expression_z2(branch)?;
    let mut report = Report::new("z2-lambda1").input("branch", branch);
    for (d, alpha) in &expr {
        report.results.push(OutputRecord::Coefficient {
            class: vec![d.i(), branch - d.i()],
            label: format!("Δ_{}", d.i()),
            value: alpha.into(),
        });
    }
    Ok(Outcome { report, failed: false })
}

fn z2_lambda2(branch: u32, form: FormArg) -> Result<Outcome, Error> {
    let expr = lambda2_expression_with(branch, form.form())?;
    let mut report = Report::new("z2-lambda2").input("branch", branch).input("form", form.name());
    for (class, alpha) in &expr.entries {
        let (i1, i2, i3) = class.parts();
        report.results.push(OutputRecord::Coefficient {
            class: vec![i1, i2, i3],
            label: class.to_string(),
            value: alpha.into(),
        });
        if form == FormArg::ClosedPrinted && class.parity() == ParityPattern::AllEven {
            let composed = crate::hodge_z2::alpha_z2_lambda2_composed(class);
            if composed != *alpha {
                report.discrepancies.push(Discrepancy {
                    subject: format!("lambda_2 coefficient {class}"),
                    computed: alpha.into(),
                    reference: (&composed).into(),
                    note: "printed all-even closed form drops the 2*i2^2 term; reference is the composed form"
                        .to_string(),
                });
            }
        }
    }
    let factors: Vec<String> = expr.normalizations.iter().map(|n| RationalJson::from(&n.factor()).text()).collect();
    report.notes.push(format!(
        "coefficients are raw alpha; lambda_2 = c * sum alpha Delta with c in {{{}}} unresolved",
        factors.join(", ")
    ));
    Ok(Outcome { report, failed: false })
}

fn z2_check(max_branch: u32) -> Outcome {
    let mut report = Report::new("z2-check").input("max_branch", max_branch);
    let printed = check_forms(max_branch, ClosedForm::Printed);
    let corrected = check_forms(max_branch, ClosedForm::Corrected);
    for (name, list) in [("closed-printed", &printed), ("closed-corrected", &corrected)] {
        for mismatch in list {
            let (i1, i2, i3) = mismatch.class.parts();
            report.results.push(OutputRecord::FormsCheck {
                class: vec![i1, i2, i3],
                form: name.to_string(),
                composed: (&mismatch.composed).into(),
                closed: (&mismatch.closed).into(),
            });
        }
    }
    let all_even = printed.iter().all(|m| m.class.parity() == ParityPattern::AllEven);
    report.notes.push(format!(
        "closed-printed mismatches: {} (all-even classes only: {all_even}); closed-corrected mismatches: {}",
        printed.len(),
        corrected.len()
    ));
    Outcome { report, failed: !corrected.is_empty() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("cyclic-covers").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn integral_text() {
        let (code, out, _) = run_capture(&["z3", "integral", "--n", "5", "--m", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("integral (5, 2) = 3392/729"), "{out}");
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, _, err) = run_capture(&["z3", "integral", "--n", "5"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(!err.is_empty());
        let (code, _, err) = run_capture(&["z3", "integral", "--n", "4", "--m", "0"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("invalid integral key"));
        let (code, _, _) = run_capture(&["z3", "verify"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_capture(&["z3", "verify", "--n", "2", "--m", "2", "--max-total", "6"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_capture(&["bogus"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("z3"));
    }

    #[test]
    fn trace_of_base_case_is_not_an_error() {
        let (code, out, _) = run_capture(&["z3", "integral", "--n", "2", "--m", "2", "--trace"]);
        assert_eq!(code, 0);
        assert!(out.contains("[base case]"));
    }
}
