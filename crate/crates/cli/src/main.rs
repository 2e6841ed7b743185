mod doc;
mod error;
mod eval;
mod family;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use doc::{knot_doc, presentation_doc, read_json, read_rep, write_output, AnyRep, KnotDoc};
use error::CliError;
use eval::{alexander_json, closed_form, compare_any, engine};
use family::{Family, Knot};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use tapkit_core::builders::TwoBridgeSpec;
use tapkit_core::json::{result_to_json, to_text};
use tapkit_core::repn::{
    riley_parabolic_reps, riley_rep_newton, search_nonabelian, Representation, SearchOptions,
};

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "tapkit",
    version,
    about = "Twisted Alexander polynomials of tunnel number one Montesinos knots"
)]
struct Cli {
    /// Tolerance for floating point computations.
    #[arg(long, global = true, env = "TAPKIT_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Relator tolerance when reading floating point representations.
    #[arg(long, global = true, default_value_t = 1e-8)]
    rep_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the presentation of a knot from its family parameters.
    Build {
        #[command(subcommand)]
        family: FamilyArgs,
        /// Output file; standard output when omitted
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Produce SL2 representations.
    Reps {
        #[command(subcommand)]
        source: RepSource,
    },
    /// Twisted Alexander polynomial of a presentation and representation.
    Tap(TapArgs),
    /// Alexander polynomial of a presentation.
    Alex {
        /// Presentation document; standard input when omitted.
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the engine with the closed form for one knot and representation.
    Compare(CompareArgs),
    /// Compare both methods over a parameter grid, one JSON line per point.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
#[command(allow_negative_numbers = true)]
enum FamilyArgs {
    /// Two-bridge knot with twist parameters m_0..m_k.
    TwoBridge {
        /// Comma separated twist parameters
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        m: Vec<i64>,
    },
    /// Tunnel number one Montesinos knot with an integer tangle.
    Case2 {
        /// Sign of beta_1: `+` or `-`.
        #[arg(long, allow_hyphen_values = true)]
        beta1: String,
        /// Comma separated twist parameters
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        m: Vec<i64>,
        /// Comma separated twist parameters of the second chain
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        n: Vec<i64>,
    },
    /// The knot K_n with two tangles of slope 1/3.
    Case3 {
        /// Twist parameter n
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
}

impl FamilyArgs {
    fn family(&self) -> CliResult<Family> {
        Ok(match self {
            FamilyArgs::TwoBridge { m } => Family::TwoBridge { m: m.clone() },
            FamilyArgs::Case2 { beta1, m, n } => Family::Case2 {
                beta1: parse_sign(beta1)?,
                m: m.clone(),
                n: n.clone(),
            },
            FamilyArgs::Case3 { n } => Family::Case3 { n: *n },
        })
    }
}

fn parse_sign(s: &str) -> CliResult<i64> {
    match s {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(CliError::Invalid(format!(
            "beta1 must be + or -, got `{s}`"
        ))),
    }
}

#[derive(Subcommand)]
#[command(allow_negative_numbers = true)]
enum RepSource {
    /// Parabolic representations of a two-bridge knot from its Riley polynomial.
    Riley {
        /// Comma separated twist parameters
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        m: Vec<i64>,
        /// Which representation to print: exact ones first, then floating point.
        #[arg(long, default_value_t = 0, conflicts_with = "all")]
        index: usize,
        /// Print every representation as a JSON array.
        #[arg(long)]
        all: bool,
        /// Output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded numerical search for a nonabelian representation.
    Search {
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Number of seeds to try.
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Engine,
    ClosedForm,
}

#[derive(Args)]
struct TapArgs {
    /// Presentation document; standard input when omitted.
    #[arg(long)]
    presentation: Option<PathBuf>,
    /// Representation document
    #[arg(long)]
    rep: PathBuf,
    /// Generator whose Fox column is removed (engine only).
    #[arg(long)]
    column: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Engine)]
    method: Method,
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    TwoBridge,
    Case2,
    Case3,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CompareArgs {
    /// Presentation document carrying family parameters.
    #[arg(long, conflicts_with = "family")]
    presentation: Option<PathBuf>,
    /// Knot family, built from --beta1, --m and --n
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    /// Sign of the integer tangle (case2), + or -
    #[arg(long, allow_hyphen_values = true)]
    beta1: Option<String>,
    /// Comma separated twist parameters (two-bridge, case2)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    m: Vec<i64>,
    /// Comma separated twist parameters of the second chain, or n for case3
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    n: Vec<i64>,
    /// `trivial`, `riley:<i>`, `search:<seed>` or a representation file.
    #[arg(long, default_value = "trivial")]
    rep: String,
    /// Seeds tried by `search:<seed>`.
    #[arg(long, default_value_t = 300)]
    seeds: u64,
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepRep {
    Trivial,
    Riley,
    Search,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    /// Knot family of the grid
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Number of twist boxes minus one (two-bridge, case2).
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Number of twist boxes of the second chain (case2).
    #[arg(long, default_value_t = 2)]
    l: usize,
    /// Parameter values; for case3 the values of n.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "-2,-1,1,2"
    )]
    values: Vec<i64>,
    #[arg(long, value_enum, default_value_t = SweepRep::Trivial)]
    rep: SweepRep,
    /// Seeds tried per point by the search.
    #[arg(long, default_value_t = 300)]
    seeds: u64,
    /// Refuse grids with more points than this.
    #[arg(long, default_value_t = 2000)]
    max_points: usize,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    jobs: Option<usize>,
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            return fail(&CliError::Invalid(
                first.trim_start_matches("error: ").to_string(),
            ));
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    if !matches!(e, CliError::Mismatch(_)) {
        print!("{}", to_text(&e.record()));
    }
    eprintln!("tapkit: {e}");
    ExitCode::from(e.code())
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Build { family, out } => {
            let f = family.family()?;
            let knot = f.build()?;
            write_output(
                &presentation_doc(knot.presentation(), Some(&f)),
                out.as_deref(),
            )
        }
        Command::Reps { source } => reps(cli, source),
        Command::Tap(a) => tap(cli, a),
        Command::Alex { presentation, out } => {
            let doc = knot_doc(&read_json(presentation.as_deref())?)?;
            write_output(&alexander_json(&doc.presentation)?, out.as_deref())
        }
        Command::Compare(a) => compare(cli, a),
        Command::Sweep(a) => sweep(cli, a),
    }
}

fn riley_reps(m: &[i64], tol: f64) -> CliResult<Vec<AnyRep>> {
    let r = riley_parabolic_reps(&TwoBridgeSpec::new(m.to_vec())?, tol)?;
    Ok(r.exact
        .into_iter()
        .map(AnyRep::Algebraic)
        .chain(r.float.into_iter().map(AnyRep::Float))
        .collect())
}

fn search(p: &tapkit_core::group::Presentation, seed: u64, seeds: u64) -> CliResult<AnyRep> {
    search_nonabelian(p, seed..seed + seeds, &SearchOptions::default())
        .map(|(r, _)| AnyRep::Float(r))
        .ok_or({
            CliError::Core(tapkit_core::Error::DidNotConverge {
                best_residual: f64::NAN,
            })
        })
}

fn reps(cli: &Cli, source: &RepSource) -> CliResult<()> {
    match source {
        RepSource::Riley { m, index, all, out } => {
            let reps = riley_reps(m, cli.tol.max(1e-9))?;
            if *all {
                let docs: Vec<Value> = reps.iter().map(AnyRep::to_json).collect();
                return write_output(&Value::Array(docs), out.as_deref());
            }
            let rep = reps.get(*index).ok_or_else(|| {
                CliError::Invalid(format!(
                    "representation index {index} out of range ({} found)",
                    reps.len()
                ))
            })?;
            write_output(&rep.to_json(), out.as_deref())
        }
        RepSource::Search {
            presentation,
            seeds,
            seed,
            out,
        } => {
            let doc = knot_doc(&read_json(presentation.as_deref())?)?;
            let rep = search(&doc.presentation, *seed, *seeds)?;
            write_output(&rep.to_json(), out.as_deref())
        }
    }
}

fn family_knot(doc: &KnotDoc) -> CliResult<(Family, Knot)> {
    let f = doc.family.clone().ok_or_else(|| {
        CliError::Invalid("closed forms need a presentation document with family parameters".into())
    })?;
    let knot = f.build()?;
    Ok((f, knot))
}

fn tap(cli: &Cli, a: &TapArgs) -> CliResult<()> {
    let doc = knot_doc(&read_json(a.presentation.as_deref())?)?;
    let rep = read_rep(&doc.presentation, &read_json(Some(&a.rep))?, cli.rep_tol)?;
    let v = match a.method {
        Method::Engine => with_rep!(&rep, r => {
            result_to_json(&engine(&doc.presentation, r, a.column.as_deref(), cli.tol)?, cli.tol)
        }),
        Method::ClosedForm => {
            if a.column.is_some() {
                return Err(CliError::Invalid(
                    "--column applies to the engine only".into(),
                ));
            }
            let (_, knot) = family_knot(&doc)?;
            with_rep!(&rep, r => result_to_json(&closed_form(&knot, r, cli.tol)?, cli.tol))
        }
    };
    write_output(&v, a.out.as_deref())
}

fn resolve_rep(
    spec: &str,
    family: &Family,
    knot: &Knot,
    seeds: u64,
    cli: &Cli,
) -> CliResult<AnyRep> {
    let p = knot.presentation();
    if spec == "trivial" {
        return Ok(AnyRep::Exact(Representation::trivial(p)));
    }
    if let Some(i) = spec.strip_prefix("riley:") {
        let Family::TwoBridge { m } = family else {
            return Err(CliError::Invalid(
                "Riley representations exist for two-bridge knots only".into(),
            ));
        };
        let i: usize = i
            .parse()
            .map_err(|_| CliError::Invalid(format!("bad representation index `{i}`")))?;
        let mut reps = riley_reps(m, cli.tol.max(1e-9))?;
        if i >= reps.len() {
            return Err(CliError::Invalid(format!(
                "representation index {i} out of range ({} found)",
                reps.len()
            )));
        }
        return Ok(reps.swap_remove(i));
    }
    if let Some(s) = spec.strip_prefix("search:") {
        let s: u64 = s
            .parse()
            .map_err(|_| CliError::Invalid(format!("bad seed `{s}`")))?;
        return search(p, s, seeds);
    }
    read_rep(
        p,
        &read_json(Some(std::path::Path::new(spec)))?,
        cli.rep_tol,
    )
}

fn compare_family(a: &CompareArgs) -> CliResult<Family> {
    let Some(kind) = a.family else {
        return Err(CliError::Invalid(
            "give --presentation or --family with its parameters".into(),
        ));
    };
    Ok(match kind {
        FamilyKind::TwoBridge => Family::TwoBridge { m: a.m.clone() },
        FamilyKind::Case2 => Family::Case2 {
            beta1: parse_sign(a.beta1.as_deref().unwrap_or("+"))?,
            m: a.m.clone(),
            n: a.n.clone(),
        },
        FamilyKind::Case3 => match a.n.as_slice() {
            [n] => Family::Case3 { n: *n },
            _ => return Err(CliError::Invalid("case3 takes a single --n".into())),
        },
    })
}

fn compare(cli: &Cli, a: &CompareArgs) -> CliResult<()> {
    let (family, knot) = match &a.presentation {
        Some(path) => family_knot(&knot_doc(&read_json(Some(path))?)?)?,
        None => {
            let f = compare_family(a)?;
            let k = f.build()?;
            (f, k)
        }
    };
    let rep = resolve_rep(&a.rep, &family, &knot, a.seeds, cli)?;
    let c = compare_any(&family, &knot, &rep, cli.tol)?;
    write_output(&c.record, a.out.as_deref())?;
    if c.agree {
        Ok(())
    } else {
        Err(CliError::Mismatch("engine and closed form disagree".into()))
    }
}

fn product(values: &[i64], len: usize) -> Vec<Vec<i64>> {
    (0..len).fold(vec![vec![]], |acc, _| {
        acc.iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(*v);
                    q
                })
            })
            .collect()
    })
}

fn sweep_grid(a: &SweepArgs) -> Vec<Family> {
    let nonzero: Vec<i64> = a.values.iter().copied().filter(|v| *v != 0).collect();
    match a.family {
        FamilyKind::TwoBridge => product(&nonzero, a.k + 1)
            .into_iter()
            .map(|m| Family::TwoBridge { m })
            .collect(),
        FamilyKind::Case2 => {
            let mut m0: Vec<i64> = vec![0];
            m0.extend(&nonzero);
            let mut out = Vec::new();
            for beta1 in [1, -1] {
                for first in &m0 {
                    for rest in product(&nonzero, a.k) {
                        for n in product(&nonzero, a.l) {
                            let mut m = vec![*first];
                            m.extend(&rest);
                            out.push(Family::Case2 { beta1, m, n });
                        }
                    }
                }
            }
            out
        }
        FamilyKind::Case3 => a.values.iter().map(|&n| Family::Case3 { n }).collect(),
    }
}

fn sweep_point(family: &Family, a: &SweepArgs, cli: &Cli) -> (Value, bool, bool) {
    let knot = match family.build() {
        Ok(k) => k,
        Err(e) => {
            return (
                json!({ "family": family, "error": e.to_string() }),
                true,
                false,
            )
        }
    };
    let rep = match a.rep {
        SweepRep::Trivial => Ok(AnyRep::Exact(Representation::trivial(knot.presentation()))),
        SweepRep::Search => search(knot.presentation(), 0, a.seeds),
        SweepRep::Riley => match &knot {
            Knot::TwoBridge(k) => riley_rep_newton(k, 0..a.seeds, cli.tol.max(1e-9))
                .map(AnyRep::Float)
                .map_err(CliError::from),
            _ => Err(CliError::Invalid(
                "Riley representations exist for two-bridge knots only".into(),
            )),
        },
    };
    let rep = match rep {
        Ok(r) => r,
        Err(e) => {
            let v = json!({ "family": family, "skipped": e.to_string() });
            return (v, true, false);
        }
    };
    match compare_any(family, &knot, &rep, cli.tol) {
        Ok(c) => {
            let mut v = c.record;
            if let Some(o) = v.as_object_mut() {
                o.shift_remove("$schema");
            }
            (v, c.agree, true)
        }
        Err(e) => (
            json!({ "family": family, "error": e.record() }),
            true,
            false,
        ),
    }
}

fn sweep(cli: &Cli, a: &SweepArgs) -> CliResult<()> {
    let grid = sweep_grid(a);
    if grid.len() > a.max_points {
        return Err(CliError::Invalid(format!(
            "grid has {} points, above --max-points {}",
            grid.len(),
            a.max_points
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let rows: Vec<(Value, bool, bool)> =
        pool.install(|| grid.par_iter().map(|f| sweep_point(f, a, cli)).collect());
    let mut text = String::new();
    for (v, _, _) in &rows {
        text.push_str(&serde_json::to_string(v).expect("records serialize"));
        text.push('\n');
    }
    match &a.out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", p.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Invalid(e.to_string()))?;
        }
    }
    let mismatches = rows.iter().filter(|(_, agree, _)| !agree).count();
    let computed = rows.iter().filter(|(_, _, ok)| *ok).count();
    eprintln!(
        "tapkit: {} points, {computed} compared, {mismatches} mismatches",
        rows.len()
    );
    if mismatches > 0 {
        return Err(CliError::Mismatch(format!("{mismatches} points disagree")));
    }
    Ok(())
}
