use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dgalab::algebra::{BigradedDims, GradedAlgebraPresentation};
use dgalab::dga::{builtin, homology, validate, Dga, BUILTINS};
use dgalab::hochschild::{
    closed_form_presentation, hh_cohomology_dims, hh_dims, hh_graded_closed_form, HochschildDims,
};
use dgalab::linalg::Prime;
use dgalab::specseq::{run_bokstedt, BokstedtVariant};
use dgalab::verify::{self, Suite, DEFAULT_SEED, SCHEMA};
use dgalab::{Error, Result};

/// Exact homology, Hochschild homology and spectral-sequence pages of DGAs.
#[derive(Parser)]
#[command(name = "dgalab", version)]
struct Cli {
    /// Print the builtin DGAs and exit.
    #[arg(long)]
    list_builtins: bool,

    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (default: $DGALAB_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of a DGA over its ground ring.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        min_degree: Option<i64>,
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Hochschild homology with F_p coefficients.
    Hh {
        #[command(flatten)]
        input: Input,
        /// Report degrees 0..=max-degree.
        #[arg(long, default_value_t = 6)]
        max_degree: i64,
        /// Use the closed form for the graded algebra given by --algebra.
        #[arg(long, requires = "algebra")]
        closed_form: bool,
        /// Generators such as "exterior x 2, truncated y 4 3".
        #[arg(long)]
        algebra: Option<String>,
        /// Report HH^n (dual dimensions) instead of HH_n.
        #[arg(long)]
        cohomology: bool,
    },
    /// Bökstedt spectral-sequence pages with the pattern differential.
    Ss {
        /// Y, X or dual-steenrod.
        #[arg(long)]
        variant: String,
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// m for the X variant.
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 8)]
        bound: i64,
        /// Show dimensions instead of class names in charts.
        #[arg(long)]
        dims_only: bool,
    },
    /// Run a reproduction suite; exits 1 if any check fails.
    Verify {
        /// core or properties.
        #[arg(long, default_value = "core")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct Input {
    /// Name of a builtin DGA (see --list-builtins).
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// DGA in JSON form.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    p: u32,
}

impl Input {
    fn prime(&self) -> Result<Prime> {
        Prime::new(self.p)
    }

    /// `bound` is passed to builtins that are finite models.
    fn load(&self, bound: i64) -> Result<Option<Dga>> {
        let x = match (&self.builtin, &self.file) {
            (Some(name), _) => builtin(name, self.prime()?, bound)?,
            (None, Some(path)) => Dga::from_json(&std::fs::read_to_string(path)?)?,
            (None, None) => return Ok(None),
        };
        if let Some(v) = validate(&x).into_iter().next() {
            return Err(Error::InvalidDga(format!("{}: {v}", x.name())));
        }
        Ok(Some(x))
    }

    fn require(&self, bound: i64) -> Result<Dga> {
        self.load(bound)?.ok_or_else(|| Error::Input("give --builtin NAME or --file PATH".into()))
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn list_builtins(json: bool) {
    if json {
        let list: Vec<Value> = BUILTINS.iter().map(|(n, d)| json!({"name": n, "description": d})).collect();
        print_json(&json!({"schema": SCHEMA, "builtins": list}));
    } else {
        for (name, desc) in BUILTINS {
            println!("{name:<14} {desc}");
        }
    }
}

fn cmd_homology(input: &Input, min: Option<i64>, max: Option<i64>, json: bool) -> Result<()> {
    let x = input.require(max.unwrap_or(12) + 2)?;
    let lo = min.unwrap_or(x.lo());
    let hi = max.unwrap_or(x.hi());
    if lo > hi {
        return Err(Error::Input(format!("empty degree range {lo}..{hi}")));
    }
    let groups = homology(&x, lo..=hi)?;
    if json {
        let rows: Vec<Value> = groups
            .iter()
            .map(|(n, g)| {
                json!({
                    "degree": n,
                    "group": g.to_string(),
                    "freeRank": g.free_rank,
                    "torsion": g.torsion_strings(),
                })
            })
            .collect();
        print_json(&json!({
            "schema": SCHEMA,
            "input": x.name(),
            "ring": x.ring().to_string(),
            "homology": rows,
        }));
    } else {
        println!("H_*({}) over {}", x.name(), x.ring());
        println!("{:>6}  group", "n");
        for (n, g) in &groups {
            println!("{n:>6}  {g}");
        }
    }
    Ok(())
}

fn bigraded_table(b: &BigradedDims) -> String {
    let mut s = format!("{:>4} {:>4} {:>4}\n", "s", "t", "dim");
    for ((i, t), d) in b.iter() {
        s.push_str(&format!("{i:>4} {t:>4} {d:>4}\n"));
    }
    s
}

fn cmd_hh(
    input: &Input,
    max_degree: i64,
    closed_form: bool,
    algebra: Option<&str>,
    cohomology: bool,
    json: bool,
) -> Result<()> {
    if max_degree < 0 {
        return Err(Error::Input("--max-degree must be >= 0".into()));
    }
    let p = input.prime()?;
    let (name, h): (String, HochschildDims) = match (closed_form, algebra) {
        (true, Some(text)) => {
            let pres = GradedAlgebraPresentation::parse(p, text)?;
            if !json {
                println!("HH({pres}) = {}", closed_form_presentation(&pres)?);
            }
            (pres.to_string(), hh_graded_closed_form(&pres, max_degree)?)
        }
        (false, Some(text)) => {
            let pres = GradedAlgebraPresentation::parse(p, text)?;
            let x = dgalab::dga::from_presentation(&pres, max_degree + 1)?;
            (pres.to_string(), hh_dims(&x, p, max_degree + 1)?)
        }
        _ => {
            let x = input.require(max_degree + 2)?;
            (x.name().to_string(), hh_dims(&x, p, max_degree + 1)?)
        }
    };
    let h = if cohomology { hh_cohomology_dims(&h) } else { h };
    if json {
        let mut v = json!({
            "schema": SCHEMA,
            "input": name,
            "prime": p.get(),
            "source": h.source,
            "grading": h.grading,
            "computedThrough": h.computed_through,
            "guaranteedThrough": h.guaranteed_through,
            "records": h.records(&name, p),
        });
        if let Some(b) = &h.bigraded {
            v["bigraded"] = serde_json::to_value(b)?;
        }
        print_json(&v);
    } else {
        println!("HH({name}; F_{p})");
        print!("{}", h.table());
        if let Some(b) = &h.bigraded {
            println!();
            print!("{}", bigraded_table(b));
        }
    }
    Ok(())
}

fn cmd_ss(variant: &str, p: u32, m: u32, bound: i64, dims_only: bool, json: bool) -> Result<()> {
    let variant = match variant.to_ascii_lowercase().as_str() {
        "x" => BokstedtVariant::Xm { m },
        other => BokstedtVariant::parse(other)?,
    };
    let run = run_bokstedt(Prime::new(p)?, variant, bound)?;
    if json {
        print_json(&json!({
            "schema": SCHEMA,
            "prime": run.prime,
            "variant": run.variant,
            "bound": run.bound,
            "pages": run.pages,
            "differentials": run.differentials,
            "eInfinity": run.e_infinity.to_vec(0, bound),
        }));
        return Ok(());
    }
    for (k, page) in run.pages.iter().enumerate() {
        if k > 0 {
            let spec = &run.differentials[k - 1];
            if spec.entries.is_empty() {
                println!("d^{} = 0", spec.r);
            } else {
                println!("d^{}:", spec.r);
                for e in &spec.entries {
                    let prev = &run.pages[k - 1];
                    println!("  {} -> {}{}", prev.label(&e.source), coeff_prefix(e.coeff), prev.label(&e.target));
                }
            }
            println!();
        }
        print!("{}", page.chart(!dims_only));
        println!();
    }
    println!("E∞ total dimensions through degree {bound}");
    println!("{:>6}  {:>4}", "n", "dim");
    for n in 0..=bound {
        println!("{n:>6}  {:>4}", run.e_infinity.get(n));
    }
    Ok(())
}

fn coeff_prefix(c: u32) -> String {
    if c == 1 {
        String::new()
    } else {
        format!("{c}·")
    }
}

fn cmd_verify(suite: &str, seed: u64, json: bool) -> Result<bool> {
    let report = verify::run(Suite::parse(suite)?, seed);
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.text());
    }
    Ok(report.passed)
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("DGALAB_THREADS") {
            Ok(s) => Some(s.trim().parse().map_err(|_| Error::Input(format!("DGALAB_THREADS={s:?} is not a number")))?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Input(format!("cannot start thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    configure_threads(cli.threads)?;
    if cli.list_builtins {
        list_builtins(cli.json);
        return Ok(true);
    }
    let Some(command) = cli.command else {
        return Err(Error::Input("no subcommand given; try --help".into()));
    };
    match command {
        Command::Homology { input, min_degree, max_degree } => cmd_homology(&input, min_degree, max_degree, cli.json)?,
        Command::Hh { input, max_degree, closed_form, algebra, cohomology } => {
            cmd_hh(&input, max_degree, closed_form, algebra.as_deref(), cohomology, cli.json)?
        }
        Command::Ss { variant, p, m, bound, dims_only } => cmd_ss(&variant, p, m, bound, dims_only, cli.json)?,
        Command::Verify { suite, seed } => return cmd_verify(&suite, seed, cli.json),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
