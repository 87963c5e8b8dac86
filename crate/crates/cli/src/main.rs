use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tiltchar::charring::{orbit_sum, s_r_character, weyl_character};
use tiltchar::minuscule::{check_prime, classify};
use tiltchar::simplechar::{SimpleCharRequest, SimpleCharResolver, SimpleCharTable, Strategy};
use tiltchar::suites::{run_suite, steinberg_label, Suite, SuiteReport};
use tiltchar::tilting::{
    decompose_st_tensor, decompose_str_tensor, steinberg_character, tilting_char_p, tilting_char_pr, Decomposition,
};
use tiltchar::{Caps, Character, Error, RootDatum, RootSystemSpec, Weight};

#[derive(Parser)]
#[command(name = "tiltchar", version, about = "Exact characters of Steinberg tensor products and tilting modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Largest Weyl orbit to enumerate.
    #[arg(long, global = true)]
    cap_orbit: Option<usize>,

    /// Largest number of terms in one character.
    #[arg(long, global = true)]
    cap_terms: Option<usize>,

    /// JSON file of known simple characters.
    #[arg(long, global = true)]
    table: Option<PathBuf>,

    /// Return table entries without recomputing them.
    #[arg(long, global = true)]
    prefer_table: bool,

    /// Strategy for simple characters: auto, minuscule, lowest_alcove,
    /// steinberg, jsf or table.
    #[arg(long, global = true, default_value = "auto")]
    strategy: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Root system data.
    Rootsys {
        #[command(subcommand)]
        cmd: RootsysCmd,
    },
    /// Compute a character.
    Char {
        #[command(subcommand)]
        cmd: CharCmd,
    },
    /// Decompose a Steinberg tensor product into tilting modules.
    Decompose {
        #[command(subcommand)]
        cmd: DecomposeCmd,
    },
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Minuscule-type flags and base-p digits of a weight.
    Classify(CharArgs),
}

#[derive(Subcommand)]
enum RootsysCmd {
    Info(SystemArgs),
}

#[derive(Subcommand)]
enum CharCmd {
    /// χ(λ)
    Weyl(CharArgs),
    /// s(λ), the orbit sum
    Orbit(CharArgs),
    /// χ((p^r−1)ρ)
    Steinberg(CharArgs),
    /// s_r(λ)
    Sr(CharArgs),
    /// ch L(λ)
    Simple(CharArgs),
    /// ch T((p−1)ρ+λ)
    Tiltp(CharArgs),
    /// ch T((p^r−1)ρ+λ)
    Tiltpr(CharArgs),
}

#[derive(Subcommand)]
enum DecomposeCmd {
    /// St ⊗ V for V = ∇(λ), Δ(λ) or L(λ)
    St(DecomposeArgs),
    /// St_r ⊗ L(λ)
    Str(DecomposeArgs),
}

#[derive(Args, Clone)]
struct SystemArgs {
    #[arg(long = "type")]
    series: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Args)]
struct CharArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Comma-separated fundamental-weight coordinates.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Module {
    Nabla,
    Delta,
    Simple,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, value_enum, default_value_t = Module::Nabla)]
    module: Module,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Comma-separated suite names, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// One or more primes, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    p: Vec<u64>,
    /// Largest depth r to sweep.
    #[arg(long, default_value_t = 1)]
    r: u32,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidSpec(_)
            | Error::DatumMismatch(..)
            | Error::RankMismatch { .. }
            | Error::NotPrime(_)
            | Error::Format(_) => 2,
            Error::NotDominant(_)
            | Error::HypothesisViolated(_)
            | Error::NotWInvariant(_)
            | Error::NotRestricted { .. }
            | Error::TermNotRestricted { .. }
            | Error::NotPMinuscule { .. }
            | Error::CarrierNotPrMinuscule { .. }
            | Error::NotDivisible => 3,
            Error::Undetermined { .. } | Error::ProviderUndetermined(_) => 4,
            Error::NegativeCoefficient { .. } => 5,
            Error::ResourceCap(_) | Error::OrbitTooLarge { .. } => 6,
            Error::InternalMismatch(_) | Error::TableMismatch { .. } => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    format: Format,
    caps: Caps,
    table: Option<PathBuf>,
    prefer_table: bool,
    strategy: Strategy,
}

impl Ctx {
    fn datum(&self, sys: &SystemArgs) -> Result<Arc<RootDatum>, Failure> {
        let spec = RootSystemSpec::new(sys.series.parse()?, sys.rank);
        Ok(Arc::new(RootDatum::new(spec)?.with_caps(self.caps)))
    }

    fn resolver(&self, d: &Arc<RootDatum>) -> Result<SimpleCharResolver, Failure> {
        let resolver = SimpleCharResolver::new(d);
        let Some(path) = &self.table else {
            return Ok(resolver);
        };
        let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let table = SimpleCharTable::from_json(d, &text)?;
        Ok(resolver.with_table(table, self.prefer_table)?)
    }

    fn emit_json<T: Serialize>(&self, value: &T) {
        println!("{}", serde_json::to_string(value).expect("serializable"));
    }
}

fn parse_weight(d: &RootDatum, text: &str) -> Result<Weight, Failure> {
    let w: Weight = text.parse().map_err(|e: String| usage(format!("bad weight {text:?}: {e}")))?;
    d.check_weight(&w)?;
    Ok(w)
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("this command needs {flag}")))
}

fn prime(p: Option<u64>) -> Result<u64, Failure> {
    let p = need(p, "--p")?;
    check_prime(p)?;
    Ok(p)
}

fn depth(r: u32) -> Result<u32, Failure> {
    if r == 0 {
        return Err(usage("--r must be at least 1"));
    }
    Ok(r)
}

#[derive(Serialize)]
struct RootsysInfo {
    #[serde(rename = "type")]
    series: String,
    rank: usize,
    positive_roots: usize,
    coxeter_number: i64,
    weyl_group_order: u128,
    rho: Weight,
    highest_root: Weight,
    highest_short_root: Weight,
    w0_perm: Vec<usize>,
    cartan: Vec<Vec<i64>>,
}

fn cmd_rootsys(ctx: &Ctx, sys: &SystemArgs) -> Outcome {
    let d = ctx.datum(sys)?;
    let roots = d.positive_roots();
    let info = RootsysInfo {
        series: d.spec().series.to_string(),
        rank: d.rank(),
        positive_roots: roots.len(),
        coxeter_number: d.coxeter_number(),
        weyl_group_order: d.weyl_group_order(),
        rho: d.rho().clone(),
        highest_root: roots[d.highest_root()].weight.clone(),
        highest_short_root: roots[d.highest_short_root()].weight.clone(),
        w0_perm: d.w0_perm().to_vec(),
        cartan: d.cartan().to_vec(),
    };
    match ctx.format {
        Format::Json => ctx.emit_json(&info),
        Format::Text => {
            println!("type {}{}", info.series, info.rank);
            println!("positive roots {}", info.positive_roots);
            println!("coxeter number h={}", info.coxeter_number);
            println!("|W| {}", info.weyl_group_order);
            println!("rho {}", info.rho);
            println!("highest root {}", info.highest_root);
            println!("highest short root {}", info.highest_short_root);
            println!("w0 permutation {:?}", info.w0_perm);
        }
    }
    Ok(())
}

fn cmd_char(ctx: &Ctx, cmd: &CharCmd) -> Outcome {
    let (kind, args) = match cmd {
        CharCmd::Weyl(a) => ("weyl", a),
        CharCmd::Orbit(a) => ("orbit", a),
        CharCmd::Steinberg(a) => ("steinberg", a),
        CharCmd::Sr(a) => ("sr", a),
        CharCmd::Simple(a) => ("simple", a),
        CharCmd::Tiltp(a) => ("tiltp", a),
        CharCmd::Tiltpr(a) => ("tiltpr", a),
    };
    let d = ctx.datum(&args.system)?;
    let weight = || -> Result<Weight, Failure> { parse_weight(&d, need(args.weight.as_deref(), "--weight")?) };
    let mut note = None;
    let (label, ch): (String, Character) = match kind {
        "weyl" => {
            let w = weight()?;
            (format!("χ{w}"), weyl_character(&d, &w)?)
        }
        "orbit" => {
            let w = weight()?;
            (format!("s{w}"), orbit_sum(&d, &w)?)
        }
        "steinberg" => {
            let (p, r) = (prime(args.p)?, depth(args.r)?);
            (format!("{} (p={p})", steinberg_label(r)), steinberg_character(&d, p, r)?)
        }
        "sr" => {
            let (p, r, w) = (prime(args.p)?, depth(args.r)?, weight()?);
            (format!("s_{r}{w} (p={p})"), s_r_character(&d, p, r, &w)?)
        }
        "simple" => {
            let (p, w) = (prime(args.p)?, weight()?);
            let req = SimpleCharRequest::new(w.clone(), p).with_strategy(ctx.strategy);
            let res = ctx.resolver(&d)?.resolve(&req)?;
            note = Some(format!("strategy {}", res.strategy));
            (format!("L{w} (p={p})"), res.character)
        }
        "tiltp" => {
            let (p, w) = (prime(args.p)?, weight()?);
            let top = d.rho().scale(p as i64 - 1).add_scaled(&w, 1);
            (format!("T{top} (p={p})"), tilting_char_p(&d, p, &w)?)
        }
        _ => {
            let (p, r, w) = (prime(args.p)?, depth(args.r)?, weight()?);
            let q = tiltchar::minuscule::prime_power(p, r)?;
            let top = d.rho().scale(q - 1).add_scaled(&w, 1);
            (format!("T{top} (p={p})"), tilting_char_pr(&d, p, r, &w)?)
        }
    };
    let summary = format!(
        "{label}: dimension {}, {} terms{}",
        ch.dimension(),
        ch.len(),
        note.map(|n| format!(", {n}")).unwrap_or_default()
    );
    match ctx.format {
        Format::Json => {
            println!("{}", ch.to_json_string()?);
            eprintln!("{summary}");
        }
        Format::Text => {
            println!("{summary}");
            println!("{ch}");
        }
    }
    Ok(())
}

fn print_decomposition(ctx: &Ctx, lhs: String, dec: &Decomposition) -> Outcome {
    match ctx.format {
        Format::Json => println!("{}", dec.to_json_string()?),
        Format::Text => {
            println!("{lhs} ≅ {dec}");
            println!("verified: {} ({})", dec.verified, dec.mode.name());
        }
    }
    Ok(())
}

fn cmd_decompose(ctx: &Ctx, cmd: &DecomposeCmd) -> Outcome {
    match cmd {
        DecomposeCmd::St(a) => {
            let d = ctx.datum(&a.system)?;
            check_prime(a.p)?;
            let lam = parse_weight(&d, &a.lambda)?;
            if !lam.is_dominant() {
                return Err(Error::NotDominant(lam).into());
            }
            let (name, phi): (&str, Character) = match a.module {
                Module::Nabla => ("∇", weyl_character(&d, &lam)?),
                Module::Delta => ("Δ", weyl_character(&d, &d.minus_w0(&lam))?.dual()),
                Module::Simple => {
                    let req = SimpleCharRequest::new(lam.clone(), a.p).with_strategy(ctx.strategy);
                    ("L", ctx.resolver(&d)?.resolve(&req)?.character)
                }
            };
            let dec = decompose_st_tensor(&d, a.p, &lam, &phi)?;
            print_decomposition(ctx, format!("St⊗{name}{lam}"), &dec)
        }
        DecomposeCmd::Str(a) => {
            let d = ctx.datum(&a.system)?;
            check_prime(a.p)?;
            let r = depth(a.r)?;
            let lam = parse_weight(&d, &a.lambda)?;
            if a.module != Module::Simple && a.module != Module::Nabla {
                return Err(usage("decompose str takes the simple module only"));
            }
            let dec = decompose_str_tensor(&d, a.p, r, &lam, &ctx.resolver(&d)?)?;
            print_decomposition(ctx, format!("{}⊗L{lam}", steinberg_label(r)), &dec)
        }
    }
}

fn cmd_verify(ctx: &Ctx, a: &VerifyArgs) -> Outcome {
    let d = ctx.datum(&a.system)?;
    let r = depth(a.r)?;
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        a.suite.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>()?
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for &p in &a.p {
        check_prime(p)?;
        for &s in &suites {
            reports.push(run_suite(&d, s, p, r)?);
        }
    }
    match ctx.format {
        Format::Json => ctx.emit_json(&reports),
        Format::Text => {
            for rep in &reports {
                println!(
                    "{} {}{} p={} r={}: {} cases, {} passed, {} failed, {} undetermined{}",
                    rep.suite,
                    rep.series,
                    rep.rank,
                    rep.p,
                    rep.r,
                    rep.cases,
                    rep.passed,
                    rep.failures.len(),
                    rep.undetermined.len(),
                    if rep.definitional > 0 {
                        format!(", {} definitional checks", rep.definitional)
                    } else {
                        String::new()
                    }
                );
                for g in &rep.golden {
                    println!("  {g}");
                }
                for f in &rep.failures {
                    println!("  FAIL {}: {}", f.case, f.detail.as_deref().unwrap_or(""));
                }
                for u in &rep.undetermined {
                    println!("  undetermined {}: {}", u.case, u.detail.as_deref().unwrap_or(""));
                }
            }
        }
    }
    let failed: usize = reports.iter().map(|r| r.failures.len()).sum();
    if failed > 0 {
        return Err(Failure {
            code: 1,
            message: format!("{failed} case(s) failed"),
        });
    }
    Ok(())
}

fn cmd_classify(ctx: &Ctx, a: &CharArgs) -> Outcome {
    let d = ctx.datum(&a.system)?;
    let p = prime(a.p)?;
    let w = parse_weight(&d, need(a.weight.as_deref(), "--weight")?)?;
    let profile = classify(&d, &w, p, depth(a.r)?)?;
    match ctx.format {
        Format::Json => ctx.emit_json(&profile),
        Format::Text => {
            let f = profile.flags;
            println!("weight {w} p={p} r={}", profile.r);
            println!("restricted {}", f.restricted);
            println!("minuscule {}", f.minuscule);
            println!("p-minuscule {}", f.p_minuscule);
            println!("r-minuscule {}", f.r_minuscule);
            println!("(p,r)-minuscule {}", f.pr_minuscule);
            if let Some(digits) = &profile.digits {
                let ds: Vec<String> = digits.iter().map(|w| w.to_string()).collect();
                println!("digits {}", ds.join(" "));
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let defaults = Caps::default();
    let caps = Caps {
        orbit: cli.cap_orbit.unwrap_or(defaults.orbit),
        terms: cli.cap_terms.unwrap_or(defaults.terms),
    };
    if caps.orbit == 0 || caps.terms == 0 {
        return Err(usage("caps must be positive"));
    }
    let ctx = Ctx {
        format: cli.format,
        caps,
        table: cli.table,
        prefer_table: cli.prefer_table,
        strategy: cli.strategy.parse()?,
    };
    match &cli.command {
        Command::Rootsys { cmd: RootsysCmd::Info(sys) } => cmd_rootsys(&ctx, sys),
        Command::Char { cmd } => cmd_char(&ctx, cmd),
        Command::Decompose { cmd } => cmd_decompose(&ctx, cmd),
        Command::Verify(a) => cmd_verify(&ctx, a),
        Command::Classify(a) => cmd_classify(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("TILTCHAR_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .expect("thread pool is configured once");
            }
            _ => {
                eprintln!("error: TILTCHAR_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
