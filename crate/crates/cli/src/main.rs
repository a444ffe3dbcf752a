use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use agcode::bezout_code::bezout_code;
use agcode::curve_algebra::Curve;
use agcode::evaluation_code::{eval_code, eval_dimensions, EvalCode, PointSet};
use agcode::gf::FieldSpec;
use agcode::harness::{
    parse_spec, report, run_channel_experiment, CodeInstance, CodeSpecFile, Instance, ReportOptions,
};
use agcode::linear::{LinearCode, Matrix};
use agcode::order_bound::{nu, order_bound_d, order_bound_dphi};
use agcode::reed_solomon::RsCode;
use agcode::semigroup::NumericalSemigroup;
use agcode::Error;
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "agcode",
    version,
    about = "Build and check linear, Reed-Solomon, evaluation and Bezout codes"
)]
struct Cli {
    /// Code spec file (TOML)
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Seed for the channel experiment
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest enumeration brute force may perform
    #[arg(long, global = true, env = "AGCODES_BUDGET", default_value_t = agcode::linear::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "json-like")]
    Json,
}

#[derive(Args, Clone, Copy)]
struct FieldArgs {
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    r: u32,
}

impl FieldArgs {
    fn build(&self) -> Result<FieldSpec> {
        Ok(FieldSpec::new(self.p, self.r, None)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Field order, modulus and elements
    Field {
        #[command(flatten)]
        field: FieldArgs,
        /// Full modulus coefficient list c0,c1,...,1
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
    },
    /// Numerical semigroups
    #[command(subcommand)]
    Sg(SgCommand),
    /// Reed-Solomon codes
    #[command(subcommand)]
    Rs(RsCommand),
    /// Generic linear codes, from a matrix file or the spec's code
    #[command(subcommand)]
    Linear(LinearCommand),
    /// Evaluation codes on the spec's curve
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Order bound on the duals of evaluation codes
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Total-degree codes on the spec's curve
    #[command(subcommand)]
    Bezout(BezoutCommand),
    /// Seeded error-injection experiment on the spec's code
    Channel {
        /// Error weight; defaults to the spec's, then to floor((d-1)/2)
        #[arg(long)]
        errors: Option<usize>,
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Full report for the spec; exits nonzero if any check fails
    Report,
}

#[derive(Subcommand)]
enum SgCommand {
    Info {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum RsCommand {
    Build {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
struct MatrixSource {
    /// Generator matrix as text, one row per line; the spec's code otherwise
    #[arg(long)]
    generator: Option<PathBuf>,
    #[command(flatten)]
    field: FieldArgs,
}

#[derive(Subcommand)]
enum LinearCommand {
    /// Brute-forced minimum distance
    Dist {
        #[command(flatten)]
        source: MatrixSource,
    },
    /// Parity-check matrix, which generates the dual
    Dual {
        #[command(flatten)]
        source: MatrixSource,
    },
    /// Coset-leader decoding of a received word
    Decode {
        #[command(flatten)]
        source: MatrixSource,
        /// Space- or comma-separated symbols
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand)]
enum EvalCommand {
    Build {
        /// Basis prefix length; the spec's `l` otherwise
        #[arg(long)]
        l: Option<usize>,
        /// Also print the generator and parity-check matrices
        #[arg(long)]
        matrices: bool,
    },
    Points,
}

#[derive(Subcommand)]
enum BoundCommand {
    Order {
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 40)]
        horizon: usize,
    },
}

#[derive(Subcommand)]
enum BezoutCommand {
    Build {
        #[arg(long)]
        l: u32,
    },
}

/// What a command produced: text, JSON, and whether its checks passed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            ok: true,
        }
    }
}

fn load_spec(path: Option<&Path>) -> Result<CodeSpecFile> {
    let path = path.ok_or_else(|| anyhow!("this command needs --spec"))?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_spec(&text).with_context(|| format!("in {}", path.display()))
}

fn curve_and_points(inst: &Instance) -> Result<(Curve, PointSet)> {
    match (&inst.curve, &inst.points) {
        (Some(c), Some(p)) => Ok((c.clone(), p.clone())),
        _ => bail!("the spec has no [curve] section"),
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

/// Distance by brute force, `None` when over budget.
fn bruteforce<T>(r: agcode::Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn field_cmd(field: FieldArgs, modulus: Option<Vec<u32>>) -> Result<Output> {
    let f = FieldSpec::new(field.p, field.r, modulus.as_deref())?;
    let elements: Vec<Value> = f
        .enumerate()
        .iter()
        .map(|e| json!({"value": e.value(), "coeffs": e.coeffs()}))
        .collect();
    let mut text = format!(
        "GF({}^{}), q = {}, modulus {:?}\n",
        f.p(),
        f.r(),
        f.q(),
        f.modulus()
    );
    for e in f.enumerate() {
        text.push_str(&format!("  {:>4}  {:?}\n", e.value(), e.coeffs()));
    }
    let json =
        json!({"p": f.p(), "r": f.r(), "q": f.q(), "modulus": f.modulus(), "elements": elements});
    Ok(Output::new(text, json))
}

fn sg_cmd(gens: &[u64]) -> Result<Output> {
    let sg = NumericalSemigroup::new(gens)?;
    let elems = sg.elements_up_to(sg.conductor() + 5);
    let text = format!(
        "generators {:?}\nelements   {:?} ...\ngaps       {:?}\nconductor  {}\ngenus      {}\nfrobenius  {}\nsymmetric  {}\n",
        sg.generators(),
        elems,
        sg.gaps(),
        sg.conductor(),
        sg.genus(),
        opt(sg.frobenius()),
        sg.is_symmetric()
    );
    let json = json!({
        "generators": sg.generators(), "elements": elems, "gaps": sg.gaps(), "conductor": sg.conductor(),
        "genus": sg.genus(), "frobenius": sg.frobenius(), "symmetric": sg.is_symmetric(),
    });
    Ok(Output::new(text, json))
}

fn rs_cmd(field: FieldArgs, k: usize, budget: u64) -> Result<Output> {
    let rs = RsCode::new(&field.build()?, k)?;
    let d = bruteforce(rs.min_distance_bruteforce(budget))?;
    let text = format!(
        "n {}\nk {}\nd_designed {}\nd_bruteforce {}\ngenerator:\n{}",
        rs.n(),
        rs.k(),
        rs.designed_distance(),
        opt(d),
        rs.generator().to_text()
    );
    let json = json!({
        "n": rs.n(), "k": rs.k(), "d_designed": rs.designed_distance(), "d_bruteforce": d,
        "generator": rs.generator().row_vecs(),
    });
    let mut out = Output::new(text, json);
    out.ok = d.is_none_or(|d| d == rs.designed_distance());
    Ok(out)
}

fn linear_code(source: &MatrixSource, spec: Option<&Path>) -> Result<LinearCode> {
    if let Some(path) = &source.generator {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let g = Matrix::from_text(&source.field.build()?, &text)?;
        return Ok(LinearCode::from_generator(g)?);
    }
    let inst = load_spec(spec)?.instantiate()?;
    Ok(match inst.code {
        CodeInstance::Rs(c) => c.linear_code()?,
        CodeInstance::Eval(c) => c.linear_code()?,
        CodeInstance::Bezout(c) => c.linear_code()?,
        CodeInstance::Raw(c) => c,
    })
}

fn parse_word(word: &str) -> Result<Vec<u32>> {
    word.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .with_context(|| format!("bad symbol {t:?}"))
        })
        .collect()
}

fn linear_cmd(cmd: &LinearCommand, spec: Option<&Path>, budget: u64) -> Result<Output> {
    match cmd {
        LinearCommand::Dist { source } => {
            let c = linear_code(source, spec)?;
            let d = c.min_distance_bruteforce(budget)?;
            let text = format!("n {}\nk {}\nd {}\n", c.n(), c.k(), d);
            let mut out = Output::new(text, json!({"n": c.n(), "k": c.k(), "d": d}));
            out.ok = d + c.k() <= c.n() + 1;
            Ok(out)
        }
        LinearCommand::Dual { source } => {
            let c = linear_code(source, spec)?;
            let h = c.parity_check();
            let text = format!(
                "# dual [{}, {}], parity-check matrix of the input\n{}",
                c.n(),
                c.n() - c.k(),
                h.to_text()
            );
            Ok(Output::new(
                text,
                json!({"n": c.n(), "k": c.n() - c.k(), "generator": h.row_vecs()}),
            ))
        }
        LinearCommand::Decode { source, word } => {
            let c = linear_code(source, spec)?;
            let x = parse_word(word)?;
            for &v in &x {
                c.field().check(v as u64)?;
            }
            let syndrome = c.syndrome(&x)?;
            let decoded = c.syndrome_decode(&x, budget)?;
            let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            let text = format!(
                "syndrome {}\ndecoded  {}\n",
                join(&syndrome),
                join(&decoded)
            );
            Ok(Output::new(
                text,
                json!({"syndrome": syndrome, "decoded": decoded}),
            ))
        }
    }
}

fn eval_summary(ec: &EvalCode, budget: u64, matrices: bool) -> Result<Output> {
    let d = if ec.rank() == ec.n() {
        Some(1)
    } else {
        bruteforce(ec.min_distance_bruteforce(budget))?
    };
    let designed = ec.designed();
    let mut text = format!(
        "n {}\nl {}\nrho_l {}\nk_designed {}\nk_actual {}\nd_designed {}\nd_bruteforce {}\ngenus_bound {}\n",
        ec.n(),
        ec.l(),
        ec.rho_l(),
        opt(designed.k),
        ec.rank(),
        opt(designed.d),
        opt(d),
        opt(designed.genus_bound)
    );
    let mut json = json!({
        "n": ec.n(), "l": ec.l(), "rho_l": ec.rho_l(), "k_designed": designed.k, "k_actual": ec.rank(),
        "d_designed": designed.d, "d_bruteforce": d, "genus_bound": designed.genus_bound,
    });
    if matrices {
        let dual = ec.dual_basis();
        text.push_str(&format!(
            "generator:\n{}parity check:\n{}",
            ec.generator().to_text(),
            dual.to_text()
        ));
        json["generator"] = json!(ec.generator().row_vecs());
        json["parity_check"] = json!(dual.row_vecs());
    }
    let mut out = Output::new(text, json);
    out.ok = designed.k.is_none_or(|k| k == ec.rank())
        && match (d, designed.d) {
            (Some(d), Some(dd)) => d >= dd,
            _ => true,
        }
        && match (d, designed.genus_bound) {
            (Some(d), Some(gb)) => d as i64 >= gb,
            _ => true,
        };
    Ok(out)
}

fn eval_cmd(cmd: &EvalCommand, spec: Option<&Path>, budget: u64) -> Result<Output> {
    let file = load_spec(spec)?;
    let inst = file.instantiate()?;
    let (curve, pts) = curve_and_points(&inst)?;
    match cmd {
        EvalCommand::Points => {
            let mut text = format!(
                "{} = 0: {} affine points\n",
                curve.defining_polynomial(),
                pts.len()
            );
            for (x, y) in pts.points() {
                text.push_str(&format!("  ({x}, {y})\n"));
            }
            Ok(Output::new(
                text,
                json!({"n": pts.len(), "points": pts.points()}),
            ))
        }
        EvalCommand::Build { l, matrices } => {
            let l = match (l, &inst.code) {
                (Some(l), _) => *l,
                (None, CodeInstance::Eval(ec)) => ec.l(),
                _ => bail!("give --l or use a spec of kind \"eval\""),
            };
            eval_summary(&eval_code(&curve, &pts, l)?, budget, *matrices)
        }
    }
}

fn bound_cmd(l: usize, horizon: usize, spec: Option<&Path>, budget: u64) -> Result<Output> {
    let inst = load_spec(spec)?.instantiate()?;
    let (curve, pts) = curve_and_points(&inst)?;
    let sg = curve.semigroup();
    let n = pts.len();
    let dims = eval_dimensions(&pts, horizon + 1);
    let d = order_bound_d(sg, l, horizon)?;
    let d_phi = order_bound_dphi(sg, &dims, n, l, horizon)?;
    let ec = eval_code(&curve, &pts, l)?;
    let dual = ec.dual_basis();
    let d_c = if dual.rows() == 0 {
        None
    } else {
        bruteforce(agcode::linear::min_weight_of_span(&dual, budget))?.flatten()
    };
    let mut text = String::from("  m  rho_m  nu_m  dim E_m\n");
    let mut table = Vec::new();
    for m in 1..=horizon {
        let nu_m = nu(sg, m);
        text.push_str(&format!(
            "{:>3} {:>6} {:>5} {:>8}\n",
            m,
            sg.nth(m),
            nu_m,
            dims[m - 1]
        ));
        table.push(json!({"m": m, "rho": sg.nth(m), "nu": nu_m, "dim_e": dims[m - 1]}));
    }
    text.push_str(&format!(
        "d({l}) {d}\nd_phi({l}) {}\nd(C_{l}) {}\n",
        opt(d_phi),
        opt(d_c)
    ));
    let mut out = Output::new(
        text,
        json!({"l": l, "table": table, "d": d, "d_phi": d_phi, "d_bruteforce": d_c}),
    );
    out.ok = d_phi.is_none_or(|dp| dp >= d && d_c.is_none_or(|dc| dc as u64 >= dp));
    Ok(out)
}

fn bezout_cmd(l: u32, spec: Option<&Path>, budget: u64) -> Result<Output> {
    let inst = load_spec(spec)?.instantiate()?;
    let (curve, pts) = curve_and_points(&inst)?;
    let c = bezout_code(curve.defining_polynomial(), pts.points(), l)?;
    let d = if c.rank() == c.n() {
        Some(1)
    } else {
        bruteforce(c.min_distance_bruteforce(budget))?
    };
    let mut text = format!(
        "n {}\nm {}\nl {}\nk_designed {}\nk_actual {}\nd_designed {}\nd_bruteforce {}\n",
        c.n(),
        c.m(),
        c.l(),
        c.designed_k(),
        c.rank(),
        c.designed_d(),
        opt(d)
    );
    if !c.k_matches() {
        text.push_str("warning: rank differs from the designed dimension\n");
    }
    let json = json!({
        "n": c.n(), "m": c.m(), "l": c.l(), "k_designed": c.designed_k(), "k_actual": c.rank(),
        "d_designed": c.designed_d(), "d_bruteforce": d, "k_matches": c.k_matches(),
    });
    let mut out = Output::new(text, json);
    out.ok = c.k_matches() && d.is_none_or(|d| d >= c.designed_d());
    Ok(out)
}

fn channel_cmd(errors: Option<usize>, trials: Option<u64>, cli: &Cli) -> Result<Output> {
    let file = load_spec(cli.spec.as_deref())?;
    let source = MatrixSource {
        generator: None,
        field: FieldArgs { p: 2, r: 1 },
    };
    let code = linear_code(&source, cli.spec.as_deref())?;
    let d = bruteforce(code.min_distance_bruteforce(cli.budget))?;
    let from_spec = file.channel.as_ref();
    let e = errors
        .or(from_spec.and_then(|c| c.errors))
        .or(d.map(|d| (d - 1) / 2))
        .ok_or_else(|| anyhow!("distance over budget; give --errors"))?;
    let trials = trials.or(from_spec.map(|c| c.trials)).unwrap_or(1000);
    let r = run_channel_experiment(&code, e, trials, cli.seed, cli.budget)?;
    let text = format!(
        "code [{}, {}] d {}\nseed {}\ntrials {}\nerrors {}\nsuccesses {}\nrate {:.4}\n",
        code.n(),
        code.k(),
        opt(d),
        r.seed,
        r.trials,
        r.error_weight,
        r.successes,
        r.success_rate()
    );
    let guaranteed = d.is_some_and(|d| e <= (d - 1) / 2);
    let json = json!({"n": code.n(), "k": code.k(), "d_bruteforce": d, "result": r, "guaranteed": guaranteed});
    let mut out = Output::new(text, json);
    out.ok = !guaranteed || r.successes == r.trials;
    Ok(out)
}

fn report_cmd(cli: &Cli) -> Result<Output> {
    let file = load_spec(cli.spec.as_deref())?;
    let options = ReportOptions {
        seed: cli.seed,
        budget: cli.budget,
        ..Default::default()
    };
    let rep = report(&file, &options)?;
    let mut out = Output::new(format!("{rep}\n"), serde_json::to_value(&rep)?);
    out.ok = rep.ok();
    Ok(out)
}

fn run(cli: &Cli) -> Result<Output> {
    let spec = cli.spec.as_deref();
    match &cli.command {
        Command::Field { field, modulus } => field_cmd(*field, modulus.clone()),
        Command::Sg(SgCommand::Info { gens }) => sg_cmd(gens),
        Command::Rs(RsCommand::Build { field, k }) => rs_cmd(*field, *k, cli.budget),
        Command::Linear(cmd) => linear_cmd(cmd, spec, cli.budget),
        Command::Eval(cmd) => eval_cmd(cmd, spec, cli.budget),
        Command::Bound(BoundCommand::Order { l, horizon }) => {
            bound_cmd(*l, *horizon, spec, cli.budget)
        }
        Command::Bezout(BezoutCommand::Build { l }) => bezout_cmd(*l, spec, cli.budget),
        Command::Channel { errors, trials } => channel_cmd(*errors, *trials, cli),
        Command::Report => report_cmd(cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.json).expect("json"))
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
