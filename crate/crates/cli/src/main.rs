//! `flagcoh`: multiplication tables, torsion indices, Bott–Samelson and
//! Landweber–Novikov reports, and a self-check suite.
//!
//! Exit codes: 0 success, 1 bad input or failed check, 2 non-integral
//! result, 3 insufficient truncation.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use flagcoh_core::checks::{self, CheckConfig};
use flagcoh_core::fgl::Theory;
use flagcoh_core::fgring::{torsion_and_u0, FormalGroupRing};
use flagcoh_core::flagring::{bs_tangent_chern, BsElement, BsPresentation, FlagBasis, FlagClass, LnOperation, MultiplicationTable, Presentation};
use flagcoh_core::par::Execution;
use flagcoh_core::rootdata::{parse_word, word_string, RootDatum};
use flagcoh_core::Error;

#[derive(Parser, Debug)]
#[command(name = "flagcoh", version, about = "Oriented cohomology of complete flag varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplication table of the Bott-Samelson basis.
    Table {
        #[command(flatten)]
        common: Common,
        /// Use the pure b-basis instead of replacing the top class by 1.
        #[arg(long)]
        raw_basis: bool,
        /// Also list the nonzero products of total codimension N.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Torsion index of the root system.
    Torsion {
        #[command(flatten)]
        root: RootArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bott-Samelson presentation, tangent Chern class and class of a word.
    Bs {
        #[command(flatten)]
        common: Common,
        /// Word such as 1,2,1 or 121.
        #[arg(long)]
        word: String,
    },
    /// Landweber-Novikov operations on the basis (universal law only).
    Ln {
        #[command(flatten)]
        common: Common,
        /// Largest weight Σ k·i_k of the emitted operations.
        #[arg(long, default_value_t = 2)]
        bound: u32,
        /// Restrict to one basis element, given by its word.
        #[arg(long)]
        word: Option<String>,
    },
    /// Run the invariant suite and report pass/fail per property.
    Check {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
struct RootArgs {
    /// Named root system: A2, B2, G2, B3, C3, ...
    #[arg(long = "type", value_name = "TYPE", required_unless_present = "cartan")]
    type_name: Option<String>,
    /// JSON integer matrix with cartan[i][j] = <α_i^∨, α_j>.
    #[arg(long, value_name = "FILE", conflicts_with = "type_name")]
    cartan: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[command(flatten)]
    root: RootArgs,
    /// universal | chow | ktheory:β | connective | custom:FILE
    #[arg(long, default_value = "universal")]
    theory: String,
    /// Truncation degree D (default 2N+1).
    #[arg(long)]
    trunc: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized probes.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run single-threaded.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Core(Error),
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Integrality { .. } => 2,
                Error::InsufficientPrecision { .. } => 3,
                _ => 1,
            })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Checks) => ExitCode::from(1),
    }
}

fn load_datum(root: &RootArgs) -> Result<Arc<RootDatum>, Failure> {
    let datum = match (&root.type_name, &root.cartan) {
        (Some(t), _) => RootDatum::named(t)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            RootDatum::from_cartan_json(&text)?
        }
        (None, None) => return Err(Failure::Usage("one of --type or --cartan is required".into())),
    };
    Ok(Arc::new(datum))
}

struct Setup {
    theory: Theory,
    ring: Arc<FormalGroupRing>,
    exec: Execution,
}

fn setup(common: &Common) -> Result<Setup, Failure> {
    let datum = load_datum(&common.root)?;
    let theory = Theory::parse(&common.theory)?;
    let n = datum.n_positive() as u32;
    let trunc = common.trunc.unwrap_or(2 * n + 1);
    if trunc < n + 1 {
        return Err(Failure::Usage(format!("--trunc must be at least N+1 = {}", n + 1)));
    }
    let law = Arc::new(theory.build_law(trunc)?);
    let ring = Arc::new(FormalGroupRing::new(datum, law));
    let exec = if common.sequential { Execution::Sequential } else { Execution::available() };
    Ok(Setup { theory, ring, exec })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Table { common, raw_basis, all_pairs } => {
            let s = setup(&common)?;
            let fb = FlagBasis::new(s.ring, s.exec)?;
            let table = MultiplicationTable::build(&fb, &s.theory.label(), !raw_basis, all_pairs)?;
            let text = match common.format {
                Format::Text => table.to_text(),
                Format::Json => table.to_json() + "\n",
            };
            emit(&common.out, &text)
        }
        Command::Torsion { root, out } => {
            let datum = load_datum(&root)?;
            let (t, _) = torsion_and_u0(&datum);
            emit(&out, &format!("{t}\n"))
        }
        Command::Bs { common, word } => {
            let s = setup(&common)?;
            let word = parse_word(&word, s.ring.datum().rank())?;
            emit(&common.out, &bs_report(&s, &word, common.format)?)
        }
        Command::Ln { common, bound, word } => {
            let s = setup(&common)?;
            let fb = FlagBasis::new(s.ring.clone(), s.exec)?;
            let targets: Vec<usize> = match word {
                Some(w) => {
                    let w = parse_word(&w, fb.datum().rank())?;
                    let idx = fb.datum().element_of_word(&w);
                    if fb.word(idx) != &w {
                        return Err(Failure::Usage(format!("{} is not a canonical basis word", word_string(&w))));
                    }
                    vec![idx]
                }
                None => (0..fb.len()).collect(),
            };
            emit(&common.out, &ln_report(&fb, bound, &targets, common.format)?)
        }
        Command::Check { common } => {
            let s = setup(&common)?;
            let config = CheckConfig { theory: s.theory.clone(), seed: common.seed, exec: s.exec };
            let results = checks::run_all(&s.ring, &config);
            let mut text = String::new();
            let mut ok = true;
            for r in &results {
                ok &= r.passed;
                text.push_str(&format!("{} {}: {}\n", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail));
            }
            emit(&common.out, &text)?;
            if ok {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

fn render_xi(pres: &BsPresentation, e: &BsElement, ring: &Presentation) -> String {
    if e.terms.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, c) in &e.terms {
        let mono: Vec<String> = (0..pres.len()).filter(|j| k >> j & 1 == 1).map(|j| format!("x{}", j + 1)).collect();
        let c = ring.ring().render(c);
        parts.push(match (mono.is_empty(), c.as_str()) {
            (true, _) => c,
            (false, "1") => mono.join("*"),
            (false, "-1") => format!("-{}", mono.join("*")),
            (false, _) => format!("({c})*{}", mono.join("*")),
        });
    }
    parts.join(" + ")
}

fn bs_report(s: &Setup, word: &[usize], format: Format) -> Result<String, Failure> {
    let pres = BsPresentation::new(&s.ring, word)?;
    let direct = Presentation::Direct(s.ring.coeff_ring().clone());
    let tangent = bs_tangent_chern(&s.ring, &pres)?;
    let w = word_string(word);
    let mut relations = Vec::new();
    for (j, rel) in pres.relations.iter().enumerate() {
        let rhs = BsElement { terms: rel.clone() };
        let shifted = pres.multiply(&rhs, &pres.xi(j + 1));
        relations.push((format!("x{}^2", j + 1), render_xi(&pres, &rhs, &direct), render_xi(&pres, &shifted, &direct)));
    }
    let tangent_text = render_xi(&pres, &tangent, &direct);
    let basis_class = if s.ring.trunc() >= 2 * s.ring.datum().n_positive() as u32 {
        let fb = FlagBasis::new(s.ring.clone(), s.exec)?;
        let c = fb.bclass(word)?;
        Some(class_text(&fb, &c)?)
    } else {
        None
    };
    Ok(match format {
        Format::Text => {
            let mut out = format!("word {w}\n");
            for (lhs, coeffs, _) in &relations {
                out.push_str(&format!("{lhs} = ({coeffs}) * x{}\n", &lhs[1..lhs.len() - 2]));
            }
            out.push_str(&format!("c(T) = {tangent_text}\n"));
            if let Some(c) = &basis_class {
                out.push_str(&format!("b_{w} = {c}\n"));
            }
            out
        }
        Format::Json => {
            let doc = serde_json::json!({
                "word": word.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "relations": relations.iter().map(|(l, c, full)| serde_json::json!({"lhs": l, "factor": c, "rhs": full})).collect::<Vec<_>>(),
                "tangent_chern": tangent_text,
                "class": basis_class,
            });
            serde_json::to_string_pretty(&doc).unwrap() + "\n"
        }
    })
}

fn class_text(fb: &FlagBasis, c: &FlagClass) -> Result<String, Failure> {
    let pres = Presentation::for_basis(fb);
    let mut order: Vec<usize> = (0..fb.len()).collect();
    order.sort_by(|&a, &b| fb.codim(a).cmp(&fb.codim(b)).then_with(|| fb.word(a).cmp(fb.word(b))));
    let mut parts = Vec::new();
    for w in order {
        if c.coords[w].is_zero() {
            continue;
        }
        let coeff = pres.present(&c.coords[w], "class")?;
        parts.push(format!("({coeff})*{}", fb.name(w)));
    }
    Ok(if parts.is_empty() { "0".into() } else { parts.join(" + ") })
}

fn ln_report(fb: &FlagBasis, bound: u32, targets: &[usize], format: Format) -> Result<String, Failure> {
    let ln = LnOperation::new(fb, bound)?;
    let mut lines = Vec::new();
    for &w in targets {
        let parts = ln.apply(fb, &FlagClass::basis(fb.len(), w))?;
        for (index, class) in parts {
            if class.is_zero() {
                continue;
            }
            let idx: Vec<String> = index.iter().map(u32::to_string).collect();
            lines.push((format!("S_({})", idx.join(",")), fb.name(w), class_text(fb, &class)?));
        }
    }
    Ok(match format {
        Format::Text => lines.iter().map(|(s, b, c)| format!("{s}({b}) = {c}\n")).collect(),
        Format::Json => {
            let doc: Vec<_> = lines
                .iter()
                .map(|(s, b, c)| serde_json::json!({"operation": s, "argument": b, "result": c}))
                .collect();
            serde_json::to_string_pretty(&doc).unwrap() + "\n"
        }
    })
}
