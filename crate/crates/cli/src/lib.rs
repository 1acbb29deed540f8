//! Command-line surface for `mockq`: argument definitions, command execution
//! and the output document (JSON or CSV, exact rationals as strings).

pub mod document;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mockq::arith::{format_rational, int, parse_rational, Rational};
use mockq::mockforms::{
    mock_theta_weight_half, mock_theta_weight_half_alt, mock_theta_weight_threehalf,
    mock_theta_weight_threehalf_alt, MockForm,
};
use mockq::qseries::{Rep, VectorQSeries};
use mockq::quadfield::{unit_for, UnitKind};
use mockq::thetaeta::{hurwitz_class_number, theta};
use mockq::verify::{run_suite, Suite};

pub use document::{Component, DocumentError, OutputDocument, Payload, Term};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Exit code 1.
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<mockq::Error> for CliError {
    fn from(e: mockq::Error) -> Self {
        use mockq::Error as E;
        match e {
            E::Inapplicable(_)
            | E::InvalidParameter(_)
            | E::Negative(_)
            | E::NonPositive(_)
            | E::CutoffBelowPrincipalPart { .. }
            | E::SquareRadicand(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

#[derive(Parser, Debug)]
#[command(name = "mockq", version, about = "Exact coefficients of theta functions and mock modular forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Auto,
    Alt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    P51,
    P61,
    P62,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Eta,
    Hurwitz,
    Ramanujan,
    Mocketa3,
    Denominators,
    Hecke,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Eta => Suite::Eta,
            SuiteArg::Hurwitz => Suite::Hurwitz,
            SuiteArg::Ramanujan => Suite::Ramanujan,
            SuiteArg::Mocketa3 => Suite::MockEta3,
            SuiteArg::Denominators => Suite::Denominators,
            SuiteArg::Hecke => Suite::Hecke,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Unary theta function theta_N(tau; nu).
    Theta {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1))]
        nu: u32,
        #[arg(long, default_value = "10", value_parser = rational_arg)]
        cutoff: Rational,
        #[arg(long)]
        component: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Mock modular form of weight 1/2 or 3/2 with a unary theta shadow.
    Mock {
        #[arg(long, value_parser = rational_arg)]
        weight: Rational,
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value = "auto")]
        variant: Variant,
        #[arg(long, default_value = "10", value_parser = rational_arg)]
        cutoff: Rational,
        #[command(flatten)]
        output: Output,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value = "10", value_parser = rational_arg)]
        cutoff: Rational,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hurwitz class numbers H(0..=max).
    Hurwitz {
        #[arg(long)]
        max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// The unit eps_N with its congruence conditions.
    Unit {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        output: Output,
    },
}

/// Result of a command: the text to emit and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
    pub out: Option<PathBuf>,
}

fn series_payload(f: &VectorQSeries, only: Option<u64>) -> Payload {
    let components = (0..f.modulus())
        .filter(|h| only.map_or(true, |c| c == *h))
        .map(|h| Component {
            index: h,
            terms: f
                .component(h as i64)
                .terms()
                .filter(|(_, c)| !c.is_integer() || *c != &int(0))
                .map(|(e, c)| Term { exponent: document::format_exponent(&e), coefficient: format_rational(c) })
                .collect(),
        })
        .collect();
    Payload::Series { components }
}

fn series_metadata(doc: &mut OutputDocument, f: &VectorQSeries) {
    doc.metadata.insert("level".into(), f.level().to_string());
    doc.metadata.insert("weight".into(), format_rational(f.weight()));
    doc.metadata.insert("neg_symmetry".into(), f.sign().to_string());
    let rep = match f.rep() {
        Rep::Rho => "rho",
        Rep::Conjugate => "conjugate",
    };
    doc.metadata.insert("representation".into(), rep.into());
}

fn render(doc: &OutputDocument, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => doc.to_json()?,
        Format::Csv => doc.to_csv()?,
    })
}

fn document(command: &str, cutoff: Option<&Rational>) -> OutputDocument {
    OutputDocument::new(command, cutoff.map(format_rational), TOOL_VERSION)
}

fn mock_form(weight: &Rational, n: u64, variant: Variant, cutoff: &Rational) -> Result<MockForm, CliError> {
    let half = Rational::new(1.into(), 2.into());
    let three_half = Rational::new(3.into(), 2.into());
    let form = if *weight == half {
        match variant {
            Variant::Auto => mock_theta_weight_half(n, cutoff)?,
            Variant::Alt => mock_theta_weight_half_alt(n, cutoff)?,
        }
    } else if *weight == three_half {
        match variant {
            Variant::Auto => mock_theta_weight_threehalf(n, cutoff)?,
            Variant::Alt => mock_theta_weight_threehalf_alt(n, cutoff)?,
        }
    } else {
        return Err(CliError::Usage(format!("weight must be 1/2 or 3/2, got {weight}")));
    };
    Ok(form)
}

pub fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Theta { n, nu, cutoff, component, output } => {
            if let Some(c) = component {
                if c >= 2 * n {
                    return Err(CliError::Usage(format!("component must be below 2N = {}", 2 * n)));
                }
            }
            let t = theta(n, nu, &cutoff)?;
            let mut doc = document("theta", Some(&cutoff));
            doc.parameters.insert("N".into(), n.to_string());
            doc.parameters.insert("nu".into(), nu.to_string());
            if let Some(c) = component {
                doc.parameters.insert("component".into(), c.to_string());
            }
            series_metadata(&mut doc, &t);
            doc.payload = series_payload(&t, component);
            Ok(Outcome { text: render(&doc, output.format)?, exit_code: 0, out: output.out })
        }
        Command::Mock { weight, n, variant, cutoff, output } => {
            let form = mock_form(&weight, n, variant, &cutoff)?;
            let mut doc = document("mock", Some(&cutoff));
            doc.parameters.insert("N".into(), n.to_string());
            doc.parameters.insert("weight".into(), format_rational(&weight));
            let v = match variant {
                Variant::Auto => "auto",
                Variant::Alt => "alt",
            };
            doc.parameters.insert("variant".into(), v.into());
            series_metadata(&mut doc, &form.series);
            doc.metadata.insert("construction".into(), form.construction.name().into());
            doc.metadata.insert("shadow".into(), form.shadow.clone());
            if let Some(u) = &form.unit {
                doc.metadata.insert("unit".into(), u.unit.to_string());
                doc.metadata.insert("unit_power".into(), u.power.to_string());
            }
            doc.payload = series_payload(&form.series, None);
            Ok(Outcome { text: render(&doc, output.format)?, exit_code: 0, out: output.out })
        }
        Command::Verify { suite, cutoff, format, out } => {
            let reports = run_suite(suite.into(), &cutoff)?;
            let ok = reports.iter().all(|r| r.passed());
            let text = match format {
                ReportFormat::Text => {
                    let mut s: String = reports.iter().map(|r| r.render_text()).collect();
                    s.push_str(if ok { "overall: pass\n" } else { "overall: fail\n" });
                    s
                }
                ReportFormat::Json => {
                    let v = serde_json::json!({
                        "status": if ok { "pass" } else { "fail" },
                        "cutoff": format_rational(&cutoff),
                        "tool_version": TOOL_VERSION,
                        "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    });
                    let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::Failure(e.to_string()))?;
                    s.push('\n');
                    s
                }
            };
            Ok(Outcome { text, exit_code: if ok { 0 } else { 1 }, out })
        }
        Command::Hurwitz { max, output } => {
            let mut doc = document("hurwitz", None);
            doc.parameters.insert("max".into(), max.to_string());
            let rows = (0..=max as i64)
                .map(|n| Ok(vec![n.to_string(), format_rational(&hurwitz_class_number(n)?)]))
                .collect::<Result<Vec<_>, mockq::Error>>()?;
            doc.payload = Payload::Table { columns: vec!["n".into(), "H".into()], rows };
            Ok(Outcome { text: render(&doc, output.format)?, exit_code: 0, out: output.out })
        }
        Command::Unit { n, kind, output } => {
            let (k, label) = match kind {
                Kind::P51 => (UnitKind::WeightHalf, "p51"),
                Kind::P61 => (UnitKind::ThreeHalf, "p61"),
                Kind::P62 => (UnitKind::ThreeHalfAlt, "p62"),
            };
            let u = unit_for(n as i64, k)?;
            let mut doc = document("unit", None);
            doc.parameters.insert("N".into(), n.to_string());
            doc.parameters.insert("kind".into(), label.into());
            doc.metadata.insert("unit".into(), u.unit.to_string());
            doc.metadata.insert("fundamental".into(), u.fundamental.to_string());
            let row = vec![
                format_rational(u.unit.a()),
                format_rational(u.unit.b()),
                u.radicand.to_string(),
                u.power.to_string(),
                u.modulus.to_string(),
            ];
            doc.payload = Payload::Table {
                columns: ["a", "b", "radicand", "k", "modulus"].map(String::from).to_vec(),
                rows: vec![row],
            };
            Ok(Outcome { text: render(&doc, output.format)?, exit_code: 0, out: output.out })
        }
    }
}

/// Writes via a temporary file in the same directory, then renames.
pub fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}
