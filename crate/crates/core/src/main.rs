use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rharmonic::complex::{format_complex, parse_complex};
use rharmonic::config::parse_config;
use rharmonic::families::seed_catalog;
use rharmonic::verifier::{fmt_f64, grid_export, levels_at, parse_grid, verify, SamplePlan, Space, Tolerances};
use rharmonic::{Error, FamilySpec, Result};

#[derive(Parser)]
#[command(name = "rharmonic", about = "Construct and verify proper r-harmonic functions")]
struct Cli {
    /// Config file with `key = value` lines overriding flag defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symbolic and numerical r-harmonicity check of one family member.
    Verify(Opts),
    /// f, τ¹, …, τ^r at a single point.
    Eval(Opts),
    /// CSV value grid of f, τ¹, …, τ^r.
    Grid(Opts),
    /// List the harmonic seed catalog for dimension n.
    Seeds(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone, Default)]
struct Opts {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Complex literal, e.g. `1`, `2i`, `1.5-0.5i`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long)]
    seed_id: Option<String>,
    /// upper_half, hyperboloid or sphere.
    #[arg(long)]
    space: Option<String>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    rng_seed: Option<u64>,
    /// Residual tolerance relative to the largest intermediate magnitude.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Grid axes `lo:hi:count,...`, one per coordinate.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Comma-separated coordinates for `eval`.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
}

/// Flag values with config-file fallback and built-in defaults.
struct Resolved {
    opts: Opts,
    config: BTreeMap<String, String>,
}

impl Resolved {
    fn raw(&self, key: &str, flag: Option<String>) -> Option<String> {
        flag.or_else(|| self.config.get(key).cloned())
    }

    fn parsed<T: FromStr>(&self, key: &str, flag: Option<T>, default: T) -> Result<T> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.config.get(key) {
            Some(text) => text
                .parse()
                .map_err(|_| Error::Parse(format!("bad value '{text}' for config key '{key}'"))),
            None => Ok(default),
        }
    }

    fn n(&self) -> Result<usize> {
        self.parsed("n", self.opts.n, 4)
    }

    fn space(&self) -> Result<Space> {
        self.raw("space", self.opts.space.clone())
            .unwrap_or_else(|| "upper_half".into())
            .parse()
    }

    fn format(&self) -> Result<Format> {
        if let Some(f) = self.opts.format {
            return Ok(f);
        }
        match self.config.get("format").map(String::as_str) {
            None | Some("text") => Ok(Format::Text),
            Some("json") => Ok(Format::Json),
            Some("csv") => Ok(Format::Csv),
            Some(other) => Err(Error::Parse(format!("unknown format '{other}'"))),
        }
    }

    fn out(&self) -> Option<PathBuf> {
        self.opts.out.clone().or_else(|| self.config.get("out").map(PathBuf::from))
    }

    fn spec(&self) -> Result<FamilySpec> {
        let n = self.n()?;
        let r = self.parsed("r", self.opts.r, 2)?;
        let a = parse_complex(&self.raw("a", self.opts.a.clone()).unwrap_or_else(|| "1".into()))?;
        let b = parse_complex(&self.raw("b", self.opts.b.clone()).unwrap_or_else(|| "1".into()))?;
        let seed = self
            .raw("seed-id", self.opts.seed_id.clone())
            .unwrap_or_else(|| "coord:1".into());
        FamilySpec::with_seed_id(n, r, a, b, &seed)
    }

    fn tolerances(&self, space: Space) -> Result<Tolerances> {
        let mut tol = Tolerances::for_space(space);
        tol.residual = self.parsed("tol", self.opts.tol, tol.residual)?;
        Ok(tol)
    }
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_verify(res: &Resolved) -> Result<bool> {
    let spec = res.spec()?;
    let space = res.space()?;
    let plan = SamplePlan::new(space, res.parsed("points", res.opts.points, 50)?, res.parsed("rng-seed", res.opts.rng_seed, 0)?);
    let report = verify(&spec, &plan, &res.tolerances(space)?)?;
    let text = match res.format()? {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => report.to_string() + "\n",
    };
    emit(&text, res.out())?;
    Ok(report.passed())
}

fn run_eval(res: &Resolved) -> Result<bool> {
    let spec = res.spec()?;
    let space = res.space()?;
    let text = res
        .raw("point", res.opts.point.clone())
        .ok_or_else(|| Error::InvalidParameter("eval needs --point".into()))?;
    let point: Vec<f64> = text
        .split(',')
        .map(|v| v.trim().parse().map_err(|_| Error::Parse(format!("bad coordinate '{v}'"))))
        .collect::<Result<_>>()?;
    if point.len() != space.coords(spec.n()) {
        return Err(Error::DimensionMismatch(point.len(), space.coords(spec.n())));
    }
    let levels = levels_at(&spec, space, &point)?;
    let rendered = match res.format()? {
        Format::Json => {
            let values: Vec<[f64; 2]> = levels.values.iter().map(|v| [v.re, v.im]).collect();
            serde_json::to_string_pretty(&json!({
                "point": point,
                "space": space.name(),
                "values": values,
                "scale": levels.scale,
            }))
            .expect("plain data")
                + "\n"
        }
        Format::Csv => {
            let mut header = space.coord_names(spec.n());
            let mut row: Vec<String> = point.iter().map(|&v| fmt_f64(v)).collect();
            for (k, v) in levels.values.iter().enumerate() {
                let name = if k == 0 { "f".to_string() } else { format!("tau{k}") };
                header.push(format!("re_{name}"));
                header.push(format!("im_{name}"));
                row.push(fmt_f64(v.re));
                row.push(fmt_f64(v.im));
            }
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
        Format::Text => {
            let mut s = format!("family {}\n", spec.describe());
            for (k, v) in levels.values.iter().enumerate() {
                s.push_str(&format!("tau^{k} = {}\n", format_complex(*v)));
            }
            s.push_str(&format!("scale = {}\n", levels.scale));
            s
        }
    };
    emit(&rendered, res.out())?;
    Ok(true)
}

fn run_grid(res: &Resolved) -> Result<bool> {
    let spec = res.spec()?;
    let space = res.space()?;
    let grid = res
        .raw("grid", res.opts.grid.clone())
        .ok_or_else(|| Error::InvalidParameter("grid needs --grid lo:hi:count,...".into()))?;
    let out = res
        .out()
        .ok_or_else(|| Error::InvalidParameter("grid needs --out".into()))?;
    let summary = grid_export(&spec, space, &parse_grid(&grid)?, &out)?;
    let tol = res.tolerances(space)?;
    eprintln!(
        "wrote {} rows to {} ({} inadmissible, max |tau^r|/S = {:.3e})",
        summary.rows,
        out.display(),
        summary.inadmissible,
        summary.max_rel_tau_r
    );
    Ok(summary.inadmissible == 0 && summary.max_rel_tau_r <= tol.residual)
}

fn run_seeds(res: &Resolved) -> Result<bool> {
    let n = res.n()?;
    let seeds = seed_catalog(n)?;
    let text = match res.format()? {
        Format::Json => {
            let list: Vec<_> = seeds
                .iter()
                .map(|s| json!({"id": s.id(), "polynomial": s.to_string()}))
                .collect();
            serde_json::to_string_pretty(&list).expect("plain data") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("id,polynomial\n");
            for seed in &seeds {
                s.push_str(&format!("{},\"{}\"\n", seed.id(), seed));
            }
            s
        }
        Format::Text => seeds.iter().map(|s| format!("{:<10} {}\n", s.id(), s)).collect(),
    };
    emit(&text, res.out())?;
    Ok(true)
}

fn configure_threads() {
    if let Some(n) = std::env::var("RHARMONIC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let config = match &cli.config {
        Some(path) => match std::fs::read_to_string(path).map_err(Error::from).and_then(|t| parse_config(&t)) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => BTreeMap::new(),
    };
    let (opts, runner): (Opts, fn(&Resolved) -> Result<bool>) = match cli.command {
        Command::Verify(o) => (o, run_verify),
        Command::Eval(o) => (o, run_eval),
        Command::Grid(o) => (o, run_grid),
        Command::Seeds(o) => (o, run_seeds),
    };
    match runner(&Resolved { opts, config }) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
