use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::json;

use paramod::characters::character;
use paramod::convolution::{completed_d, dirichlet_d, CoeffSeries};
use paramod::eisenstein::{
    diff_series_defining, diff_series_eval, eis_coset_rep, eis_epstein_rep, eis_fe_check, eis_lattice_continued,
    eis_residue_with, smart_sum_check, Check, DiffSeriesParams, EisensteinParams, FeForm, PrincipalPart,
    Representation, ResidueMethod,
};
use paramod::epstein::{epstein_continued, EpsteinParams, EpsteinValue};
use paramod::majorant::{Mat4, SiegelPoint};
use paramod::report::{emit_report, Case, Format, VerificationReport};
use paramod::suites::{run_suite, SuiteConfig, SuiteName};
use paramod::symplectic::{make_hp, preserves_j, similitude_member, sqrt_int, Group, GroupContext};

#[derive(Parser, Debug)]
#[command(name = "paramod", version, about = "Paramodular Eisenstein series verification toolkit")]
struct Cli {
    /// Run a verification suite.
    #[arg(long, value_enum, global = true)]
    suite: Option<SuiteName>,
    /// Flat TOML file whose keys mirror the flag names; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    p: Option<u64>,
    #[arg(long = "N", global = true)]
    n: Option<u64>,
    #[arg(long, global = true)]
    kappa: Option<u64>,
    /// Index into the enumeration of characters mod N.
    #[arg(long, global = true)]
    chi_index: Option<usize>,
    /// `x11 x12 x22 y11 y12 y22`
    #[arg(long = "Z", global = true, allow_hyphen_values = true)]
    z: Option<String>,
    /// `re im` or `re`
    #[arg(long, global = true, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, global = true)]
    radius: Option<f64>,
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    max_modulus: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Completed Epstein zeta ζ*(s, u, v; Q).
    Epstein {
        /// 16 entries of Q, row-major; identity if omitted.
        #[arg(long, allow_hyphen_values = true)]
        form: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
    },
    /// Completed Eisenstein series 𝔼 at (Z, s).
    Eisenstein {
        #[arg(long, value_enum, default_value = "second")]
        rep: RepArg,
        /// Height of the coset truncation for `--rep coset`.
        #[arg(long, default_value_t = 6)]
        height: i64,
    },
    /// Residue of 𝔼 at s = 2.
    Residue {
        #[arg(long, value_enum, default_value = "contour")]
        method: MethodArg,
    },
    /// Functional equation of 𝔼.
    Fe {
        #[arg(long, value_enum, default_value = "proposition")]
        form: FormArg,
    },
    /// θ-sum form of the functional equation.
    Smartsum {
        #[arg(long, value_enum, default_value = "r-over-theta")]
        principal: PrincipalArg,
    },
    /// Difference series: lattice form against the defining difference.
    Diff {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        r: u64,
    },
    /// Twisted Dirichlet series of a coefficient file.
    Series {
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long)]
        weight: i64,
        #[arg(long, default_value_t = 1.0)]
        growth: f64,
        #[arg(long, default_value_t = 0)]
        cutoff: usize,
    },
    /// H_p(N) and its membership checks.
    Group,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RepArg {
    Lattice,
    Second,
    Third,
    Coset,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Contour,
    Richardson,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Proposition,
    Corollary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PrincipalArg {
    ROverTheta,
    R,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    suite: Option<SuiteName>,
    p: Option<u64>,
    #[serde(rename = "N")]
    n: Option<u64>,
    kappa: Option<u64>,
    chi_index: Option<usize>,
    #[serde(rename = "Z")]
    z: Option<String>,
    s: Option<String>,
    radius: Option<f64>,
    precision_bits: Option<u32>,
    format: Option<Format>,
    out: Option<PathBuf>,
    max_modulus: Option<u64>,
    seed: Option<u64>,
    words: Option<usize>,
    pairs: Option<usize>,
    forms: Option<usize>,
}

/// Flags merged over the config file, with defaults filled in.
struct Settings {
    suite: Option<SuiteName>,
    p: u64,
    n: u64,
    kappa: u64,
    chi_index: usize,
    z: SiegelPoint,
    s: Complex64,
    radius: Option<f64>,
    format: Format,
    out: Option<PathBuf>,
    suite_cfg: SuiteConfig,
}

enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn parse_floats(text: &str) -> Result<Vec<f64>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().with_context(|| format!("not a number: {t}")))
        .collect()
}

fn parse_s(text: &str) -> Result<Complex64> {
    match parse_floats(text)?.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => bail!("--s expects `re` or `re im`"),
    }
}

fn parse_vec4(text: Option<&str>) -> Result<[f64; 4]> {
    let Some(t) = text else { return Ok([0.0; 4]) };
    parse_floats(t)?.try_into().map_err(|_| anyhow!("expected 4 numbers"))
}

fn parse_form(text: Option<&str>) -> Result<Mat4> {
    let Some(t) = text else {
        return Ok(std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as u8 as f64)));
    };
    let v = parse_floats(t)?;
    if v.len() != 16 {
        bail!("--form expects 16 numbers");
    }
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| v[4 * i + j])))
}

fn settings(cli: &Cli) -> Result<Settings> {
    let file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            toml::from_str::<FileConfig>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => FileConfig::default(),
    };
    let precision = cli.precision_bits.or(file.precision_bits).unwrap_or(53);
    // values above 53 are accepted; evaluation is f64 throughout
    if precision < 53 {
        bail!("--precision-bits must be at least 53");
    }
    if let Some(r) = cli.radius.or(file.radius) {
        if !(r.is_finite() && r > 0.0) {
            bail!("--radius must be positive");
        }
    }
    let z_text = cli.z.clone().or(file.z);
    let z = match &z_text {
        Some(t) => t.parse().map_err(|e| anyhow!("--Z: {e}"))?,
        None => SiegelPoint::from_six([0.0, 0.0, 0.0, 1.0, 0.0, 1.0])?,
    };
    let s = match cli.s.as_deref().or(file.s.as_deref()) {
        Some(t) => parse_s(t)?,
        None => Complex64::new(2.6, 0.0),
    };
    let suite_cfg = SuiteConfig {
        max_modulus: cli.max_modulus.or(file.max_modulus),
        seed: cli.seed.or(file.seed),
        words: file.words,
        pairs: file.pairs,
        forms: file.forms,
        z: z_text,
    };
    Ok(Settings {
        suite: cli.suite.or(file.suite),
        p: cli.p.or(file.p).unwrap_or(5),
        n: cli.n.or(file.n).unwrap_or(4),
        kappa: cli.kappa.or(file.kappa).unwrap_or(1),
        chi_index: cli.chi_index.or(file.chi_index).unwrap_or(0),
        z,
        s,
        radius: cli.radius.or(file.radius),
        format: cli.format.or(file.format).unwrap_or_default(),
        out: cli.out.clone().or(file.out),
        suite_cfg,
    })
}

impl Settings {
    fn eisenstein(&self) -> Result<EisensteinParams> {
        let chi = character(self.n, self.chi_index)
            .ok_or_else(|| anyhow!("no character with index {} mod {}", self.chi_index, self.n))?;
        Ok(EisensteinParams::new(self.p, self.n, self.kappa, chi, self.z, self.s)?)
    }
}

fn value_json(v: &EpsteinValue) -> serde_json::Value {
    json!({
        "value_re": v.value.re,
        "value_im": v.value.im,
        "tail_bound": v.tail_bound,
        "terms_used": v.terms_used,
    })
}

fn check_json(c: &Check, tol: f64) -> (serde_json::Value, bool) {
    let pass = c.abs_err <= tol * (1.0 + c.lhs.norm());
    let v = json!({
        "lhs": [c.lhs.re, c.lhs.im],
        "rhs": [c.rhs.re, c.rhs.im],
        "abs_err": c.abs_err,
        "rel_err": c.rel_err,
        "tolerance": tol,
        "pass": pass,
        "tail_bound": c.tail_bound,
    });
    (v, pass)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn group_report(st: &Settings) -> Result<VerificationReport> {
    let (p, n, kappa) = (st.p, st.n, st.kappa);
    let ctx = GroupContext::new(p, n, kappa)?;
    let h = make_hp(p, n)?;
    let corner = h.at(4, 3).try_mul(&sqrt_int(p))?.as_i64();
    let h2 = h.try_mul(&h)?;
    let cases = vec![
        Case::exact(format!("H_{p}({n}) preserves J_1"), preserves_j(&h, 1)).param("H", h.to_text()),
        Case::exact(format!("H_{p}({n}): N divides (sqrt(p) H)_43"), corner.is_some_and(|c| c % n as i64 == 0)),
        Case::exact(
            format!("H_{p}({n})^2 in Gamma_21(Np, pN^2/k) k={kappa}"),
            similitude_member(&h2, Group::Gamma21Level, &ctx),
        ),
    ];
    Ok(VerificationReport::new("group", cases))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let st = settings(cli).map_err(usage)?;
    let out = st.out.as_deref();
    let report = |r: VerificationReport| -> Result<bool, Failure> {
        write_out(out, &emit_report(&r, st.format)).map_err(Failure::Runtime)?;
        Ok(r.all_pass())
    };
    let Some(cmd) = &cli.command else {
        let name = st.suite.ok_or_else(|| usage(anyhow!("nothing to do: pass --suite or a subcommand")))?;
        let r = run_suite(name, &st.suite_cfg).map_err(|e| match e {
            paramod::suites::SuiteError::Config(_) => usage(e),
            _ => Failure::Runtime(e.into()),
        })?;
        return report(r);
    };
    let emit = |v: serde_json::Value, pass: bool| -> Result<bool, Failure> {
        write_out(out, &json_text(&v)).map_err(Failure::Runtime)?;
        Ok(pass)
    };
    match cmd {
        Command::Epstein { form, u, v } => {
            let q = parse_form(form.as_deref()).map_err(usage)?;
            let u = parse_vec4(u.as_deref()).map_err(usage)?;
            let v = parse_vec4(v.as_deref()).map_err(usage)?;
            let mut params = EpsteinParams::new(q, u, v, st.s);
            if let Some(r) = st.radius {
                params = params.with_radius(r);
            }
            let val = epstein_continued(&params).map_err(usage)?;
            emit(value_json(&val), true)
        }
        Command::Eisenstein { rep, height } => {
            let params = st.eisenstein().map_err(usage)?;
            let val = match rep {
                RepArg::Lattice => eis_lattice_continued(&params),
                RepArg::Second => eis_epstein_rep(&params, Representation::Second),
                RepArg::Third => eis_epstein_rep(&params, Representation::Third),
                RepArg::Coset => eis_coset_rep(&params, *height).map(|value| EpsteinValue {
                    value,
                    tail_bound: f64::NAN,
                    terms_used: 0,
                }),
            }
            .map_err(usage)?;
            let mut v = value_json(&val);
            if matches!(rep, RepArg::Coset) {
                v["tail_bound"] = serde_json::Value::Null;
                v["height"] = json!(height);
            }
            emit(v, true)
        }
        Command::Residue { method } => {
            let params = st.eisenstein().map_err(usage)?;
            let m = match method {
                MethodArg::Contour => ResidueMethod::Contour,
                MethodArg::Richardson => ResidueMethod::Richardson,
            };
            let r = eis_residue_with(&params, m).map_err(usage)?;
            let v = json!({
                "numeric": r.numeric,
                "expected": r.expected,
                "abs_err": (r.numeric - r.expected).abs(),
            });
            let pass = (r.numeric - r.expected).abs() <= 1e-3;
            emit(v, pass)
        }
        Command::Fe { form } => {
            let params = st.eisenstein().map_err(usage)?;
            let f = match form {
                FormArg::Proposition => FeForm::Proposition,
                FormArg::Corollary => FeForm::Corollary,
            };
            let c = eis_fe_check(&params, f).map_err(usage)?;
            let (v, pass) = check_json(&c, 1e-5);
            emit(v, pass)
        }
        Command::Smartsum { principal } => {
            let params = st.eisenstein().map_err(usage)?;
            let pp = match principal {
                PrincipalArg::ROverTheta => PrincipalPart::RoverTheta,
                PrincipalArg::R => PrincipalPart::R,
            };
            let c = smart_sum_check(&params, pp).map_err(usage)?;
            let (v, pass) = check_json(&c, 1e-5);
            emit(v, pass)
        }
        Command::Diff { q, r } => {
            let params = st.eisenstein().map_err(usage)?;
            let dp = DiffSeriesParams::new(params, *q, *r).map_err(usage)?;
            let lat = diff_series_eval(&dp).map_err(usage)?;
            let def = diff_series_defining(&dp).map_err(usage)?;
            let abs_err = (lat.value - def.value).norm();
            let scale = lat.value.norm().max(def.value.norm());
            let rel_err = if scale > 0.0 { abs_err / scale } else { abs_err };
            let pass = rel_err <= 1e-6;
            let v = json!({
                "lhs": [lat.value.re, lat.value.im],
                "rhs": [def.value.re, def.value.im],
                "abs_err": abs_err,
                "rel_err": rel_err,
                "tolerance": 1e-6,
                "pass": pass,
                "tail_bound": lat.tail_bound + def.tail_bound,
            });
            emit(v, pass)
        }
        Command::Series { coeffs, weight, growth, cutoff } => {
            let chi = character(st.n, st.chi_index)
                .ok_or_else(|| usage(anyhow!("no character with index {} mod {}", st.chi_index, st.n)))?;
            let c = CoeffSeries::load(coeffs, *weight, *growth).map_err(usage)?;
            let cut = if *cutoff == 0 { c.len() } else { *cutoff };
            let d = dirichlet_d(&c, &chi, st.s, cut).map_err(usage)?;
            let full = completed_d(&c, &chi, st.s, cut).map_err(usage)?;
            let v = json!({
                "value_re": d.value.re,
                "value_im": d.value.im,
                "completed_re": full.value.re,
                "completed_im": full.value.im,
                "tail_bound": d.tail_bound,
                "terms_used": d.terms_used,
            });
            emit(v, true)
        }
        Command::Group => report(group_report(&st).map_err(usage)?),
    }
}

fn init_workers() -> Result<()> {
    if let Ok(w) = std::env::var("PARAMOD_WORKERS") {
        let n: usize = w.trim().parse().with_context(|| format!("PARAMOD_WORKERS={w}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_workers() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
