//! The `tlcat` command-line tool.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 failed verification.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::diagram::{Diagram, DEFAULT_MAX_PAIRS};
use crate::error::Error;
use crate::jones_wenzl::{pretty_terms, JonesWenzlBuilder};
use crate::morphism::{AnyBackend, AnyMorphism, Morphism};
use crate::repn::{self, positivity::DEFAULT_TOLERANCE};
use crate::scalar::{Cyclotomic, Field, ScalarBackend};
use crate::verify;
use crate::words::{self, NormalForm, Word};

pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Environment variable overriding the default strand cap for enumerations.
pub const MAX_STRANDS_VAR: &str = "TLCAT_MAX_STRANDS";

#[derive(Parser, Debug)]
#[command(name = "tlcat", version, about = "Temperley-Lieb diagrams, Jones-Wenzl projectors and fusion data")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendChoice {
    Generic,
    Cyclotomic,
    Float,
}

#[derive(Args, Debug, Clone)]
pub struct BackendArgs {
    #[arg(long, value_enum, default_value_t = BackendChoice::Generic)]
    pub backend: BackendChoice,
    /// Order N of the root of unity `q = zeta_N` (cyclotomic backend).
    #[arg(long)]
    pub order: Option<u32>,
    /// Real loop value (float backend).
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the planar diagrams from m to n points.
    Enum { m: usize, n: usize },
    /// Compose two morphisms given as JSON files (f after g).
    Compose { f: PathBuf, g: PathBuf },
    /// Tensor two morphisms given as JSON files.
    Tensor { f: PathBuf, g: PathBuf },
    /// Markov trace of an endomorphism given as a JSON file.
    Trace { f: PathBuf },
    /// The Jones-Wenzl projector on k strands.
    Jw {
        k: usize,
        /// Expand as a table of words in the generators.
        #[arg(long)]
        pretty: bool,
        #[command(flatten)]
        backend: BackendArgs,
    },
    /// Reduced words in the generators.
    Words {
        #[command(subcommand)]
        action: WordsAction,
    },
    /// The trace pairing on Hom(X^m, X^n).
    Gram {
        m: usize,
        n: usize,
        /// Print the determinant instead of the matrix.
        #[arg(long)]
        det: bool,
        #[command(flatten)]
        backend: BackendArgs,
    },
    /// Basis of the negligible morphisms in End(X^k) at q = zeta_N.
    Kernel {
        k: usize,
        #[arg(long, value_name = "N")]
        cyclotomic: u32,
    },
    /// Fusion of simple objects X_j and X_k.
    Fusion {
        j: usize,
        k: usize,
        #[arg(long, value_name = "L")]
        truncate: Option<usize>,
    },
    /// Bratteli diagram of the tower up to N strands.
    Bratteli {
        n: usize,
        #[arg(long, value_name = "L")]
        truncate: Option<usize>,
        /// Write Graphviz output to this file.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Scan the trace form for positivity at a real loop value.
    Positivity {
        #[arg(long, allow_hyphen_values = true)]
        d: f64,
        #[arg(long = "max-strands", default_value_t = 6)]
        max_strands: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Run the self-check suites ("all" or a name prefix).
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum WordsAction {
    /// Normal form of a word `n: i1 i2 ...` (or of a normal form).
    Reduce { word: String },
    /// Number of reduced words on n strands.
    Count { n: usize },
    /// All reduced words on n strands.
    List { n: usize },
}

enum Failure {
    Domain(Error),
    Usage(String),
    Io(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<String, (String, Failure)>;

/// Parse `args` (including the program name) and run, writing to `out`/`err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let max_pairs = match max_pairs_from_env() {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let result = execute(&cli, max_pairs);
    let (text, failure) = match result {
        Ok(t) => (t, None),
        Err((t, f)) => (t, Some(f)),
    };
    if !text.is_empty() {
        let written = match &cli.output {
            Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
            None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
        };
        if let Err(e) = written {
            let _ = writeln!(err, "error: {e}");
            return EXIT_DOMAIN;
        }
    }
    match failure {
        None => 0,
        Some(Failure::Domain(e)) => {
            let _ = writeln!(err, "error[{}]: {e}", e.name());
            EXIT_DOMAIN
        }
        Some(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
        Some(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Some(Failure::Verify) => {
            let _ = writeln!(err, "verification failed");
            EXIT_VERIFY
        }
    }
}

fn max_pairs_from_env() -> std::result::Result<usize, String> {
    match std::env::var(MAX_STRANDS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_STRANDS_VAR}={v} is not a non-negative integer")),
        Err(_) => Ok(DEFAULT_MAX_PAIRS),
    }
}

fn fail<T>(f: impl Into<Failure>) -> std::result::Result<T, (String, Failure)> {
    Err((String::new(), f.into()))
}

fn domain<T>(r: crate::Result<T>) -> std::result::Result<T, (String, Failure)> {
    r.map_err(|e| (String::new(), Failure::Domain(e)))
}

fn read_morphism(path: &PathBuf) -> std::result::Result<AnyMorphism, (String, Failure)> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| (String::new(), Failure::Io(format!("{}: {e}", path.display()))))?;
    domain(AnyMorphism::from_json(&s))
}

fn backend(args: &BackendArgs) -> std::result::Result<AnyBackend, (String, Failure)> {
    match args.backend {
        BackendChoice::Generic => Ok(AnyBackend::Generic(Arc::new(ScalarBackend::generic()))),
        BackendChoice::Cyclotomic => match args.order {
            Some(n) => Ok(AnyBackend::Cyclotomic(Arc::new(domain(ScalarBackend::cyclotomic(n))?))),
            None => fail(Failure::Usage("--backend cyclotomic needs --order N".into())),
        },
        BackendChoice::Float => match args.d {
            Some(d) => Ok(AnyBackend::Float(Arc::new(domain(ScalarBackend::float_d(d))?))),
            None => fail(Failure::Usage("--backend float needs --d VALUE".into())),
        },
    }
}

/// Run `$body` with `$b` bound to the concrete backend.
macro_rules! with_backend {
    ($any:expr, |$b:ident| $body:expr) => {
        match $any {
            AnyBackend::Generic($b) => $body,
            AnyBackend::Cyclotomic($b) => $body,
            AnyBackend::Float($b) => $body,
        }
    };
}

fn morphism_out<S: Field>(f: &Morphism<S>) -> String {
    let mut s = f.to_json();
    s.push('\n');
    s
}

fn binary(
    f: AnyMorphism,
    g: AnyMorphism,
    op: fn(&AnyMorphism, &AnyMorphism) -> crate::Result<AnyMorphism>,
) -> Outcome {
    let h = domain(op(&f, &g))?;
    let mut s = h.to_json();
    s.push('\n');
    Ok(s)
}

fn any_compose(f: &AnyMorphism, g: &AnyMorphism) -> crate::Result<AnyMorphism> {
    match (f, g) {
        (AnyMorphism::Generic(a), AnyMorphism::Generic(b)) => a.compose(b).map(AnyMorphism::Generic),
        (AnyMorphism::Cyclotomic(a), AnyMorphism::Cyclotomic(b)) => {
            a.compose(b).map(AnyMorphism::Cyclotomic)
        }
        (AnyMorphism::Float(a), AnyMorphism::Float(b)) => a.compose(b).map(AnyMorphism::Float),
        _ => Err(mixed()),
    }
}

fn any_tensor(f: &AnyMorphism, g: &AnyMorphism) -> crate::Result<AnyMorphism> {
    match (f, g) {
        (AnyMorphism::Generic(a), AnyMorphism::Generic(b)) => a.tensor(b).map(AnyMorphism::Generic),
        (AnyMorphism::Cyclotomic(a), AnyMorphism::Cyclotomic(b)) => {
            a.tensor(b).map(AnyMorphism::Cyclotomic)
        }
        (AnyMorphism::Float(a), AnyMorphism::Float(b)) => a.tensor(b).map(AnyMorphism::Float),
        _ => Err(mixed()),
    }
}

fn mixed() -> Error {
    Error::BackendMismatch("operands come from different scalar backends".into())
}

fn execute(cli: &Cli, max_pairs: usize) -> Outcome {
    let json_out = cli.format == Format::Json;
    match &cli.command {
        Command::Enum { m, n } => {
            let ds = domain(Diagram::enumerate_with_limit(*m, *n, max_pairs))?;
            let codes: Vec<String> = ds.iter().map(Diagram::encode).collect();
            Ok(if json_out {
                format!("{}\n", json!(codes))
            } else {
                codes.iter().map(|c| format!("{c}\n")).collect()
            })
        }
        Command::Compose { f, g } => binary(read_morphism(f)?, read_morphism(g)?, any_compose),
        Command::Tensor { f, g } => binary(read_morphism(f)?, read_morphism(g)?, any_tensor),
        Command::Trace { f } => {
            let t = match read_morphism(f)? {
                AnyMorphism::Generic(f) => domain(f.markov_trace())?.to_string(),
                AnyMorphism::Cyclotomic(f) => domain(f.markov_trace())?.to_string(),
                AnyMorphism::Float(f) => domain(f.markov_trace())?.to_string(),
            };
            Ok(if json_out {
                format!("{}\n", json!({ "trace": t }))
            } else {
                format!("{t}\n")
            })
        }
        Command::Jw { k, pretty, backend: b } => with_backend!(backend(b)?, |b| {
            let jw = JonesWenzlBuilder::new(&b);
            let f = domain(jw.morphism(*k))?;
            if *pretty {
                domain(pretty_terms(&f))
            } else {
                Ok(morphism_out(&f))
            }
        }),
        Command::Words { action } => words_cmd(action, json_out, max_pairs),
        Command::Gram { m, n, det, backend: b } => {
            let lm = domain(repn::gram::loop_matrix_with_limit(*m, *n, max_pairs))?;
            let any = backend(b)?;
            if *det {
                let d = match &any {
                    AnyBackend::Generic(_) => lm.determinant_poly().to_string(),
                    AnyBackend::Cyclotomic(b) => lm.evaluate(b).determinant(&b.ctx).to_string(),
                    AnyBackend::Float(b) => lm.evaluate(b).determinant(&b.ctx).to_string(),
                };
                return Ok(if json_out {
                    format!("{}\n", json!({ "m": m, "n": n, "determinant": d }))
                } else {
                    format!("{d}\n")
                });
            }
            with_backend!(any, |b| {
                let g = lm.evaluate(&b);
                Ok(if json_out {
                    let entries: Vec<Vec<String>> = g
                        .entries
                        .iter()
                        .map(|r| r.iter().map(ToString::to_string).collect())
                        .collect();
                    let basis: Vec<String> = g.basis.iter().map(Diagram::encode).collect();
                    format!(
                        "{}\n",
                        json!({ "m": m, "n": n, "basis": basis, "entries": entries })
                    )
                } else {
                    g.to_text()
                })
            })
        }
        Command::Kernel { k, cyclotomic } => {
            let b: Arc<ScalarBackend<Cyclotomic>> = Arc::new(domain(ScalarBackend::cyclotomic(*cyclotomic))?);
            if *k > max_pairs {
                return fail(Error::SizeLimit { pairs: *k, limit: max_pairs });
            }
            let basis = domain(repn::negligible_basis(*k, *k, &b))?;
            Ok(if json_out {
                basis.iter().map(morphism_out).collect()
            } else {
                let mut s = format!("nullity {}\n", basis.len());
                for (i, f) in basis.iter().enumerate() {
                    s.push_str(&format!("vector {}\n{f}", i + 1));
                    if !s.ends_with('\n') {
                        s.push('\n');
                    }
                }
                s
            })
        }
        Command::Fusion { j, k, truncate } => {
            let r = match truncate {
                Some(l) => domain(repn::truncated_fusion(*j, *k, *l))?,
                None => repn::clebsch_gordan(*j, *k),
            };
            Ok(if json_out {
                format!("{}\n", serde_json::to_string(&r).expect("serializable"))
            } else {
                format!("X{j} (x) X{k} = {r}\n")
            })
        }
        Command::Bratteli { n, truncate, dot } => {
            let br = domain(repn::bratteli(*n, *truncate))?;
            if let Some(p) = dot {
                std::fs::write(p, br.to_dot())
                    .map_err(|e| (String::new(), Failure::Io(format!("{}: {e}", p.display()))))?;
            }
            Ok(if json_out {
                format!("{}\n", serde_json::to_string(&br).expect("serializable"))
            } else {
                let mut s = String::new();
                for t in 0..=*n {
                    let parts: Vec<String> = br
                        .dimensions(t)
                        .iter()
                        .map(|(k, c)| format!("X{k}:{c}"))
                        .collect();
                    s.push_str(&format!("{t}: {}\n", parts.join(" ")));
                }
                s
            })
        }
        Command::Positivity { d, max_strands, tol } => {
            if *max_strands > max_pairs {
                return fail(Error::SizeLimit { pairs: *max_strands, limit: max_pairs });
            }
            let r = domain(repn::positivity_scan(*d, *max_strands, *tol))?;
            Ok(if json_out {
                format!("{}\n", serde_json::to_string(&r).expect("serializable"))
            } else {
                r.to_text()
            })
        }
        Command::Verify { suite, seed } => {
            let outcomes = verify::run(suite, *seed);
            if outcomes.is_empty() {
                return fail(Failure::Usage(format!("no suite matches {suite:?}")));
            }
            let failed = outcomes.iter().any(|o| o.result.is_err());
            let text = if json_out {
                let rows: Vec<_> = outcomes
                    .iter()
                    .map(|o| {
                        json!({
                            "suite": o.name,
                            "passed": o.result.is_ok(),
                            "message": o.result.as_ref().err(),
                        })
                    })
                    .collect();
                format!("{}\n", json!({ "seed": seed, "suites": rows }))
            } else {
                let mut s = String::new();
                for o in &outcomes {
                    match &o.result {
                        Ok(()) => s.push_str(&format!("PASS {}\n", o.name)),
                        Err(m) => s.push_str(&format!("FAIL {}: {m}\n", o.name)),
                    }
                }
                let passed = outcomes.iter().filter(|o| o.result.is_ok()).count();
                s.push_str(&format!("{passed}/{} suites passed (seed {seed})\n", outcomes.len()));
                s
            };
            if failed {
                Err((text, Failure::Verify))
            } else {
                Ok(text)
            }
        }
    }
}

fn words_cmd(action: &WordsAction, json_out: bool, max_pairs: usize) -> Outcome {
    match action {
        WordsAction::Reduce { word } => {
            let nf = if word.contains(';') {
                let given = domain(NormalForm::parse(word))?;
                let mut nf = words::normal_form(&given.word());
                nf.d_exponent += given.d_exponent;
                nf
            } else {
                words::normal_form(&domain(Word::parse(word))?)
            };
            Ok(if json_out {
                format!("{}\n", json!({ "normal_form": nf.to_string(), "d_exponent": nf.d_exponent }))
            } else {
                format!("{nf}\n")
            })
        }
        WordsAction::Count { n } => {
            let c = domain(words::enumerate_reduced_with_limit(*n, max_pairs))?.len();
            Ok(if json_out {
                format!("{}\n", json!({ "n": n, "count": c.to_string() }))
            } else {
                format!("{c}\n")
            })
        }
        WordsAction::List { n } => {
            let forms = domain(words::enumerate_reduced_with_limit(*n, max_pairs))?;
            Ok(if json_out {
                let v: Vec<String> = forms.iter().map(ToString::to_string).collect();
                format!("{}\n", json!(v))
            } else {
                forms.iter().map(|f| format!("{f}\n")).collect()
            })
        }
    }
}
