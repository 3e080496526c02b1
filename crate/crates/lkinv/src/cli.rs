//! Command-line front end. Every command reads one JSON input and writes CSV
//! or JSON; errors go to stderr as `{"error": kind, "message": ...}`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::crofton::{crofton_volume_mc, lk_via_slices_mc};
use crate::error::{invalid, Error, Result};
use crate::io::{emit_plotdata, lk_csv, load_set, output_path, read_json, sig12};
use crate::local::{
    complex_report, density, local_lk_with, mlcc_verify, polar_invariant, polar_invariants_exact, ComplexGermData,
    ConicGerm, ConicGermJson,
};
use crate::mc::{Estimate, McConfig};
use crate::motivic::{
    acampo_lefschetz, chi_zeta_closed_form, consistency_check_14, euler_realization, expand_series, expand_series_chi,
    milnor_fibre_chi, monodromy_pole_candidates, motivic_milnor_fibre, oracle_values, rational_json, real_chi_relations,
    Mode, MonodromyProfile, OracleConfig, Polynomial, PolynomialJson, ResolutionData, Sign, ZetaFunction,
};
use crate::tube::{lk_curvatures_with, tube_volume_mc, weighted_tube_integral_mc};

#[derive(Debug, Parser)]
#[command(name = "lkinv", version, about = "Lipschitz-Killing curvatures, local invariants and motivic zeta bookkeeping")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Input JSON file.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 4)]
    pub workers: usize,
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Complex,
    Real,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lipschitz-Killing curvatures of a polytope or a union of polytopes.
    Lk,
    /// Tube volumes over a sweep of radii, as plot data.
    Tube {
        /// Comma-separated radii; defaults to 0.05, 0.10, ..., 1.00.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        /// Integrate χ(X ∩ B̄(x, ε)) instead of the indicator of the tube.
        #[arg(long)]
        weighted: bool,
    },
    /// Cauchy-Crofton estimates from random affine flats.
    Crofton {
        #[arg(long)]
        i: usize,
        /// Estimate the i-volume by hit counting instead of Λ_i by slicing.
        #[arg(long)]
        volume: bool,
    },
    /// Local Lipschitz-Killing curvatures and density of a conic germ, or the
    /// polar identities of combinatorial complex germ data.
    Local,
    /// Polar invariants σ_0..σ_n of a conic germ.
    Polar {
        /// Sample planes instead of using the conic intrinsic volumes.
        #[arg(long)]
        sampled: bool,
    },
    /// Verify the local Cauchy-Crofton matrix identity on a conic germ.
    MlccCheck,
    /// Zeta function of resolution data, optionally expanded.
    Zeta {
        #[arg(long)]
        expand: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Complex)]
        mode: ModeArg,
        /// Sign for real mode: -1, +1, < or >.
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
    },
    /// Lefschetz numbers of monodromy iterates and the consistency check.
    Acampo {
        #[arg(long, default_value_t = 12)]
        expand: usize,
    },
    /// Motivic Milnor fibre and its Euler realization.
    MilnorFibre {
        #[arg(long, value_enum, default_value_t = ModeArg::Complex)]
        mode: ModeArg,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
    },
    /// Signed-fibre Euler characteristics of a real polynomial germ.
    Oracle {
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        /// Resolution data to compare the real motivic Milnor fibres against.
        #[arg(long)]
        resolution: Option<PathBuf>,
    },
}

/// Parse arguments, execute, print, and return the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|out| deliver(&cli.common, &out)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            e.exit_code()
        }
    }
}

fn deliver(c: &Common, out: &str) -> Result<()> {
    match &c.out {
        Some(p) => Ok(std::fs::write(output_path(p), out)?),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

/// Run the command inside a pool of `--workers` threads and return the text
/// it would print.
pub fn execute(cli: &Cli) -> Result<String> {
    let c = &cli.common;
    if c.samples == 0 {
        return invalid("--samples must be at least 1");
    }
    if c.workers == 0 {
        return invalid("--workers must be at least 1");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.workers)
        .build()
        .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(&cli.command, c))
}

fn input(c: &Common) -> Result<&Path> {
    c.input.as_deref().ok_or_else(|| Error::Validation("--in is required".into()))
}

fn shape_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn mc(c: &Common) -> McConfig {
    McConfig::new(c.samples, c.seed).with_workers(c.workers)
}

fn to_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn est_json(e: &Estimate) -> serde_json::Value {
    json!({ "value": e.value, "stderr": e.stderr })
}

fn mode_of(mode: ModeArg, sign: &Option<String>) -> Result<Mode> {
    match (mode, sign) {
        (ModeArg::Complex, None) => Ok(Mode::Complex),
        (ModeArg::Complex, Some(_)) => invalid("--sign only applies to --mode real"),
        (ModeArg::Real, Some(s)) => Ok(Mode::Real(Sign::parse(s)?)),
        (ModeArg::Real, None) => invalid("--mode real needs --sign (-1, +1, < or >)"),
    }
}

fn load_germ(path: &Path) -> Result<ConicGerm> {
    ConicGerm::from_json(&read_json::<ConicGermJson>(path)?)
}

fn dispatch(cmd: &Command, c: &Common) -> Result<String> {
    let format = c.format;
    match cmd {
        Command::Lk => {
            let path = input(c)?;
            let x = load_set(path)?;
            let lk = lk_curvatures_with(&x, mc(c))?;
            Ok(match format {
                Some(Format::Json) => to_json(&json!({ "shape_id": shape_id(path), "lk": lk })),
                _ => lk_csv(&shape_id(path), &lk),
            })
        }
        Command::Tube { eps, weighted } => {
            let x = load_set(input(c)?)?;
            let radii: Vec<f64> = if eps.is_empty() { (1..=20).map(|k| 0.05 * k as f64).collect() } else { eps.clone() };
            let mut rows = Vec::new();
            for &e in &radii {
                let est = if *weighted { weighted_tube_integral_mc(&x, e, mc(c))? } else { tube_volume_mc(&x, e, mc(c))? };
                rows.push((e, est));
            }
            match format {
                Some(Format::Json) => {
                    let lk = lk_curvatures_with(&x, mc(c))?;
                    let v: Vec<_> = rows
                        .iter()
                        .map(|(e, est)| json!({ "epsilon": e, "value": est.value, "stderr": est.stderr, "steiner": lk.steiner_polynomial(*e) }))
                        .collect();
                    Ok(to_json(&json!({ "weighted": weighted, "samples": c.samples, "seed": c.seed, "rows": v })))
                }
                _ => emit_plotdata(&rows.iter().map(|(e, est)| (*e, est.value)).collect::<Vec<_>>()),
            }
        }
        Command::Crofton { i, volume } => {
            let x = load_set(input(c)?)?;
            let (target, s) = if *volume {
                ("volume", crofton_volume_mc(&x, *i, None, mc(c))?)
            } else {
                ("lk", lk_via_slices_mc(&x, *i, None, mc(c))?)
            };
            Ok(to_json(&json!({
                "target": target, "i": i, "estimate": s.estimate, "stderr": s.stderr,
                "samples": s.samples, "seed": c.seed, "rejected": s.rejected,
                "zero_hit_fraction": s.zero_hit_fraction,
            })))
        }
        Command::Local => {
            let path = input(c)?;
            let v: serde_json::Value = read_json(path)?;
            if v.get("mu").is_some() {
                let data: ComplexGermData = serde_json::from_value(v)?;
                return Ok(to_json(&serde_json::to_value(complex_report(&data)?)?));
            }
            let germ = ConicGerm::from_json(&serde_json::from_value(v)?)?;
            let lk = local_lk_with(&germ, mc(c))?;
            match format {
                Some(Format::Csv) => Ok(lk_csv(&shape_id(path), &lk)),
                _ => {
                    let d = density(&germ)?;
                    Ok(to_json(&json!({ "lk": lk, "density": est_json(&d) })))
                }
            }
        }
        Command::Polar { sampled } => {
            let germ = load_germ(input(c)?)?;
            let sigma = if *sampled {
                (0..=germ.ambient_dim()).map(|i| polar_invariant(&germ, i, mc(c))).collect::<Result<Vec<_>>>()?
            } else {
                polar_invariants_exact(&germ)?
            };
            match format {
                Some(Format::Csv) => {
                    let mut s = String::from("i,sigma,stderr\n");
                    for (i, e) in sigma.iter().enumerate() {
                        writeln!(s, "{i},{},{}", sig12(e.value), sig12(e.stderr)).unwrap();
                    }
                    Ok(s)
                }
                _ => Ok(to_json(&json!({ "sigma": sigma.iter().map(est_json).collect::<Vec<_>>() }))),
            }
        }
        Command::MlccCheck => {
            let germ = load_germ(input(c)?)?;
            Ok(to_json(&serde_json::to_value(mlcc_verify(&germ, c.tolerance, mc(c))?)?))
        }
        Command::Zeta { expand, mode, sign } => {
            let res = ResolutionData::load(input(c)?)?;
            let mode = mode_of(*mode, sign)?;
            let z = crate::motivic::zeta_from_resolution(&res, mode)?;
            let mut out = json!({ "zeta": z.to_json()? });
            if let Some(m) = *expand {
                out["expansion"] = expansion_json(&z, m)?;
            }
            out["pole_candidates"] = monodromy_pole_candidates(&z)
                .iter()
                .map(|p| json!({ "nu": p.nu, "N": p.mult, "fraction": [p.p, p.q], "eigenvalue": p.label() }))
                .collect();
            Ok(to_json(&out))
        }
        Command::Acampo { expand } => {
            let res = ResolutionData::load(input(c)?)?;
            let lefschetz: Vec<_> =
                (0..=*expand as u64).map(|m| Ok(json!({ "m": m, "lefschetz": acampo_lefschetz(&res, m)? }))).collect::<Result<_>>()?;
            let profile = MonodromyProfile::from_resolution(&res, *expand as u64)?;
            let form = chi_zeta_closed_form(&profile)?;
            let report = consistency_check_14(&res, (*expand).max(1))?;
            Ok(to_json(&json!({
                "lefschetz": lefschetz,
                "period": profile.period,
                "chi_zeta_numerator": form.numerator,
                "consistency": report,
            })))
        }
        Command::MilnorFibre { mode, sign } => {
            let res = ResolutionData::load(input(c)?)?;
            let mode = mode_of(*mode, sign)?;
            let z = crate::motivic::zeta_from_resolution(&res, mode)?;
            let class = match motivic_milnor_fibre(&z) {
                Ok(s) => Some((s.to_string(), s.to_json()?, euler_realization(&s, mode))),
                Err(Error::Validation(_)) => None,
                Err(e) => return Err(e),
            };
            let chi = match &class {
                Some((_, _, chi)) => chi.clone(),
                None => milnor_fibre_chi(&z)?,
            };
            Ok(to_json(&json!({
                "class": class.as_ref().map(|(s, _, _)| s.clone()),
                "class_terms": class.as_ref().map(|(_, j, _)| j.clone()),
                "chi": rational_json(&chi),
            })))
        }
        Command::Oracle { eps, eta, resolution } => {
            let f = Polynomial::from_json(&read_json::<PolynomialJson>(input(c)?)?)?;
            let cfg = OracleConfig { eps: *eps, eta: *eta, ..OracleConfig::default() };
            let values = oracle_values(&f, &cfg)?;
            let res = resolution.as_deref().map(ResolutionData::load).transpose()?;
            let report = real_chi_relations(res.as_ref(), &values)?;
            Ok(to_json(&serde_json::to_value(report)?))
        }
    }
}

fn expansion_json(z: &ZetaFunction, m: usize) -> Result<serde_json::Value> {
    let chi = expand_series_chi(z, m)?;
    let classes = match expand_series(z, m) {
        Ok(v) => Some(v),
        Err(Error::Validation(_)) => None,
        Err(e) => return Err(e),
    };
    let rows: Vec<_> = chi
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let class = classes.as_ref().map(|v| v[k].to_string());
            json!({ "m": k + 1, "class": class, "chi": rational_json(x) })
        })
        .collect();
    Ok(rows.into())
}
