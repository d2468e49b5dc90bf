//! Command-line front end for one-point AG codes on `f(y) = g(x)` curves.

use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use agcode_core::algebra::{Fe, Gf};
use agcode_core::curve::{load_curve, semigroup_dim, CurveError, CurveSpec, Severity};
use agcode_core::diagram::{diagram_fast, diagram_oracle, RootDiagram};
use agcode_core::encoder::{
    encode, encode_genmatrix, info_positions, storage_report, systematic_genmatrix, InfoPositions,
};
use agcode_core::interp_gb::fast_gb;
use agcode_core::orbits::{decompose, OrbitDecomposition};
use agcode_core::potmod::{oracle_gb, same_module, GroebnerBasis};
use agcode_core::OnePointCode;

pub mod verify;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] agcode_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad invocations (including unknown presets), 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(agcode_core::Error::Curve(CurveError::UnknownPreset(_) | CurveError::InvalidPreset(_))) => 2,
            _ => 1,
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        CliError::Core(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "agcode", version, about = "One-point AG codes, root diagrams and Gröbner-basis encoding")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "AGCODE_FORMAT", default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Preset such as `x_q2r(2,1)` or `quotient_hermitian:5,3`, or a JSON curve file.
    pub curve: String,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    #[command(flatten)]
    pub source: Source,
    /// Pole order bound at the point at infinity.
    #[arg(long)]
    pub lambda: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DiagramMethod {
    Fast,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GbMethod {
    Fast,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EncodeMethod {
    Gb,
    Genmat,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum CurveCommand {
    /// Check the curve data and report diagnostics.
    Validate(Source),
    /// List the affine rational points.
    Points(Source),
}

#[derive(Debug, Subcommand)]
pub enum Command {
    #[command(subcommand)]
    Curve(CurveCommand),
    /// List the affine rational points in codeword order.
    Points(Source),
    /// Show the orbit decomposition under sigma.
    Orbits(Source),
    /// Print the generator matrix as integer field codes.
    Genmat(CodeArgs),
    /// Print the code dimension.
    Dim(CodeArgs),
    /// Print the root diagram.
    Diagram {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "fast")]
        method: DiagramMethod,
    },
    /// Print the POT Gröbner basis of the code module.
    Gb {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "fast")]
        method: GbMethod,
        /// Also compute the other basis and check both span the same module.
        #[arg(long)]
        check: bool,
    },
    /// Systematically encode a message.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        /// Comma-separated field codes, k of them.
        #[arg(long)]
        message: String,
        #[arg(long, value_enum, default_value = "gb")]
        method: EncodeMethod,
    },
    /// Storage and timing of both encoders.
    Bench {
        #[command(flatten)]
        source: Source,
        /// Sweep every lambda in [0, n).
        #[arg(long, conflicts_with = "lambda")]
        lambda_sweep: bool,
        #[arg(long, required_unless_present = "lambda_sweep")]
        lambda: Option<u64>,
        /// Encodings per timing sample.
        #[arg(long, default_value_t = 50)]
        reps: u32,
    },
    /// Run the whole pipeline and check every invariant.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

struct Loaded {
    spec: CurveSpec,
    decomp: OrbitDecomposition,
}

fn load(src: &Source) -> CliResult<Loaded> {
    let spec = load_curve(&src.curve)?;
    spec.validate().into_result()?;
    let decomp = decompose(&spec, &spec.enumerate_points())?;
    Ok(Loaded { spec, decomp })
}

fn check_lambda(lambda: u64, n: usize) -> CliResult<()> {
    if lambda >= n as u64 {
        return Err(CliError::Usage(format!("--lambda {lambda} must be below n = {n}")));
    }
    Ok(())
}

fn load_code(args: &CodeArgs) -> CliResult<OnePointCode> {
    let Loaded { spec, decomp } = load(&args.source)?;
    check_lambda(args.lambda, decomp.n())?;
    Ok(OnePointCode::with_decomposition(spec, decomp, args.lambda)?)
}

fn no_csv(what: &str) -> CliError {
    CliError::Usage(format!("{what} has no csv output; use text or json"))
}

fn codes(v: &[Fe]) -> Vec<u32> {
    v.iter().map(|e| e.0).collect()
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn json_out(out: &mut dyn Write, v: &serde_json::Value) -> CliResult<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

/// Runs one command, writing to `out`. Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<u8> {
    let fmt = cli.format;
    match &cli.command {
        Command::Curve(CurveCommand::Validate(src)) => cmd_validate(src, fmt, out),
        Command::Curve(CurveCommand::Points(src)) | Command::Points(src) => cmd_points(src, fmt, out),
        Command::Orbits(src) => cmd_orbits(src, fmt, out),
        Command::Genmat(args) => cmd_genmat(args, fmt, out),
        Command::Dim(args) => cmd_dim(args, fmt, out),
        Command::Diagram { code, method } => cmd_diagram(code, *method, fmt, out),
        Command::Gb { code, method, check } => cmd_gb(code, *method, *check, fmt, out),
        Command::Encode { code, message, method } => cmd_encode(code, message, *method, fmt, out),
        Command::Bench {
            source,
            lambda_sweep,
            lambda,
            reps,
        } => cmd_bench(source, *lambda_sweep, *lambda, *reps, fmt, out),
        Command::Verify { code, seed, trials } => cmd_verify(code, *seed, *trials, fmt, out),
    }
}

fn cmd_validate(src: &Source, fmt: Format, out: &mut dyn Write) -> CliResult<u8> {
    let spec = load_curve(&src.curve)?;
    let rep = spec.validate();
    let diags: Vec<_> = rep
        .diagnostics
        .iter()
        .map(|d| {
            let sev = match d.severity() {
                Severity::Error => "error",
                Severity::Warning => "warning",
                Severity::Note => "note",
            };
            (sev, d.code(), d.to_string())
        })
        .collect();
    match fmt {
        Format::Json => json_out(
            out,
            &json!({
                "curve": src.curve,
                "valid": rep.is_valid(),
                "a": spec.a(),
                "b": spec.b(),
                "field_order": spec.field().order(),
                "nu": rep.nu,
                "sigma_order": rep.sigma_order,
                "point_count": rep.point_count,
                "genus": rep.genus,
                "diagnostics": diags.iter().map(|(s, c, m)| json!({"severity": s, "code": c, "message": m})).collect::<Vec<_>>(),
            }),
        )?,
        Format::Csv => {
            writeln!(out, "severity,code,message")?;
            for (s, c, m) in &diags {
                writeln!(out, "{s},{c},\"{}\"", m.replace('"', "\"\""))?;
            }
        }
        Format::Text => {
            writeln!(out, "curve      {}", src.curve)?;
            writeln!(out, "field      GF({})", spec.field().order())?;
            writeln!(out, "a, b       {}, {}", spec.a(), spec.b())?;
            writeln!(out, "points     {}", rep.point_count)?;
            writeln!(out, "genus      {}", rep.genus.map_or("-".into(), |g| g.to_string()))?;
            writeln!(out, "ord(alpha) {}", rep.nu.map_or("-".into(), |g| g.to_string()))?;
            writeln!(out, "ord(sigma) {}", rep.sigma_order.map_or("-".into(), |g| g.to_string()))?;
            for (s, c, m) in &diags {
                writeln!(out, "{s}[{c}]: {m}")?;
            }
            writeln!(out, "{}", if rep.is_valid() { "valid" } else { "INVALID" })?;
        }
    }
    Ok(if rep.is_valid() { 0 } else { 1 })
}

fn cmd_points(src: &Source, fmt: Format, out: &mut dyn Write) -> CliResult<u8> {
    let Loaded { decomp, .. } = load(src)?;
    let pts: Vec<_> = decomp.points().collect();
    match fmt {
        Format::Json => json_out(out, &json!({ "n": pts.len(), "points": pts }))?,
        Format::Csv => {
            writeln!(out, "index,x,y")?;
            for (i, p) in pts.iter().enumerate() {
                writeln!(out, "{i},{},{}", p.x.0, p.y.0)?;
            }
        }
        Format::Text => {
            writeln!(out, "# {} points (x y), codeword order", pts.len())?;
            for p in &pts {
                writeln!(out, "{} {}", p.x.0, p.y.0)?;
            }
        }
    }
    Ok(0)
}

fn cmd_orbits(src: &Source, fmt: Format, out: &mut dyn Write) -> CliResult<u8> {
    let Loaded { spec, decomp } = load(src)?;
    let rho = if decomp.r() > 0 { Some(agcode_core::orbits::derive_rho(&decomp, &spec)?) } else { None };
    let kind = |long: bool| if long { "long" } else { "short" };
    match fmt {
        Format::Json => json_out(
            out,
            &json!({
                "r": decomp.r(),
                "s": decomp.s(),
                "n": decomp.n(),
                "nu": decomp.nu(),
                "rho": rho,
                "orbits": decomp.orbits(),
            }),
        )?,
        Format::Csv => {
            writeln!(out, "index,kind,length,base_x,base_y,distinct_y")?;
            for o in decomp.orbits() {
                let b = o.base();
                writeln!(out, "{},{},{},{},{},{}", o.index, kind(o.is_long()), o.len(), b.x.0, b.y.0, o.ys.len())?;
            }
        }
        Format::Text => {
            writeln!(out, "{:>5}  {:<5}  {:>6}  {:<10}  {:>10}", "index", "kind", "length", "base", "distinct_y")?;
            for o in decomp.orbits() {
                let b = o.base();
                writeln!(
                    out,
                    "{:>5}  {:<5}  {:>6}  {:<10}  {:>10}",
                    o.index,
                    kind(o.is_long()),
                    o.len(),
                    format!("({},{})", b.x.0, b.y.0),
                    o.ys.len()
                )?;
            }
            writeln!(out, "r = {}, s = {}, n = {}, ord(alpha) = {}", decomp.r(), decomp.s(), decomp.n(), decomp.nu())?;
            if let Some(r) = rho {
                writeln!(out, "rho = ({}, {}, {})", r.rho1, r.rho2, r.rho3)?;
            }
        }
    }
    Ok(0)
}

fn cmd_genmat(args: &CodeArgs, fmt: Format, out: &mut dyn Write) -> CliResult<u8> {
    let code = load_code(args)?;
    let g = &code.genmat;
    match fmt {
        Format::Json => json_out(
            out,
            &json!({
                "lambda": g.lambda,
                "k": g.rows.len(),
                "n": g.n,
                "monomials": g.monomials.iter().map(|m| [m.beta, m.gamma]).collect::<Vec<_>>(),
                "rows": g.rows.iter().map(|r| codes(r)).collect::<Vec<_>>(),
            }),
        )?,
        Format::Csv | Format::Text => {
            let sep = if fmt == Format::Csv { "," } else { " " };
            for r in &g.rows {
                writeln!(out, "{}", join(&codes(r), sep))?;
            }
        }
    }
    Ok(0)
}

fn cmd_dim(args: &CodeArgs, fmt: Format, out: &mut dyn Write) -> CliResult<u8> {
    let code = load_code(args)?;
    let sg = semigroup_dim(code.spec.a(), code.spec.b(), code.lambda);
    match fmt {
        Format::Json => json_out(out, &json!({ "lambda": code.lambda, "n": code.n(), "k": code.k, "semigroup_count": sg }))?,
        Format::Csv => {
            writeln!(out, "lambda,n,k")?;
            writeln!(out, "{},{},{}", code.lambda, code.n(), code.k)?;
        }
        Format::Text => writeln!(out, "{}", code.k)?,
    }
    Ok(0)
}

fn fast_diagram(code: &OnePointCode) -> CliResult<RootDiagram> {
    let rho = code.rho.as_ref().ok_or(agcode_core::Error::NoLongOrbits)?;
    Ok(diagram_fast(&code.spec, &code.decomp, rho, code.lambda, &code.genmat)?)
}

fn render_diff(fast: &RootDiagram, oracle: &RootDiagram) -> String {
    let mark = |v: &[bool]| v.iter().map(|&m| if m { "X" } else { "." }).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    for (i, a, b) in fast.diff(oracle) {
        let _ = writeln!(s, "row {}: fast {} | oracle {}", i + 1, mark(&a), mark(&b));
    }
    s
}

fn cmd_diagram(args: &CodeArgs, method: DiagramMethod, fmt: Format, out: &mut dyn Write) -> CliResult<u8> {
    if fmt == Format::Csv {
        return Err(no_csv("diagram"));
    }
    let code = load_code(args)?;
    let gf = code.spec.field();
    let fast = matches!(method, DiagramMethod::Fast | DiagramMethod::Both).then(|| fast_diagram(&code)).transpose()?;
    let oracle = matches!(method, DiagramMethod::Oracle | DiagramMethod::Both)
        .then(|| diagram_oracle(&code.decomp, &code.genmat, gf))
        .transpose()?;
    let diff = match (&fast, &oracle) {
        (Some(f), Some(o)) => Some(f.diff(o)),
        _ => None,
    };
    match fmt {
        Format::Json => {
            let mut v = json!({ "lambda": code.lambda, "k": code.k });
            if let Some(f) = &fast {
                v["fast"] = f.to_json(gf);
            }
            if let Some(o) = &oracle {
                v["oracle"] = o.to_json(gf);
            }
            if let Some(d) = &diff {
                v["diff_rows"] = json!(d.iter().map(|x| x.0 + 1).collect::<Vec<_>>());
            }
            json_out(out, &v)?;
        }
        _ => match (&fast, &oracle) {
            (Some(f), Some(o)) => {
                writeln!(out, "FAST")?;
                write!(out, "{}", f.render_text())?;
                writeln!(out, "ORACLE")?;
                write!(out, "{}", o.render_text())?;
                writeln!(out, "DIFF")?;
                write!(out, "{}", render_diff(f, o))?;
            }
            (Some(d), None) | (None, Some(d)) => {
                write!(out, "{}", d.render_text())?;
                writeln!(out, "empty boxes: {}", d.empty_boxes())?;
            }
            (None, None) => unreachable!(),
        },
    }
    Ok(if diff.is_some_and(|d| !d.is_empty()) { 1 } else { 0 })
}

fn compute_gb(code: &OnePointCode, method: GbMethod) -> CliResult<GroebnerBasis> {
    let gf = code.spec.field();
    Ok(match method {
        GbMethod::Oracle => oracle_gb(&code.decomp, &code.genmat, gf)?,
        GbMethod::Fast => {
            let d = fast_diagram(code)?;
            fast_gb(&code.spec, &code.decomp, code.rho.as_ref(), &d, &code.genmat)?
        }
    })
}

fn cmd_gb(args: &CodeArgs, method: GbMethod, check: bool, fmt: Format, out: &mut dyn Write) -> CliResult<u8> {
    if fmt == Format::Csv {
        return Err(no_csv("gb"));
    }
    let code = load_code(args)?;
    let gf = code.spec.field();
    let gb = compute_gb(&code, method)?;
    let same = if check {
        let other = compute_gb(&code, if method == GbMethod::Fast { GbMethod::Oracle } else { GbMethod::Fast })?;
        Some(same_module(&gb, &other, gf)? && gb.leading_degrees() == other.leading_degrees())
    } else {
        None
    };
    match fmt {
        Format::Json => {
            let mut v = json!({ "lambda": code.lambda, "k": code.k, "basis": gb.to_json() });
            if let Some(s) = same {
                v["check"] = json!(s);
            }
            json_out(out, &v)?;
        }
        _ => {
            for (i, e) in gb.elements().iter().enumerate() {
                let rows: Vec<String> = e.rows().iter().map(|p| format!("[{}]", join(&codes(p.coeffs()), " "))).collect();
                writeln!(out, "g{} ({:?}) = ({})", i + 1, gb.provenance()[i], rows.join(", "))?;
            }
            writeln!(out, "leading degrees: {}", join(&gb.leading_degrees(), " "))?;
            if let Some(s) = same {
                writeln!(out, "check: {}", if s { "same module" } else { "MODULES DIFFER" })?;
            }
        }
    }
    Ok(if same == Some(false) { 1 } else { 0 })
}

fn parse_message(code: &OnePointCode, message: &str) -> CliResult<Vec<Fe>> {
    let symbols: Vec<u32> = if message.trim().is_empty() {
        Vec::new()
    } else {
        message
            .split(',')
            .map(|s| s.trim().parse::<u32>().map_err(|_| CliError::Usage(format!("bad message symbol `{s}`"))))
            .collect::<CliResult<_>>()?
    };
    if symbols.len() != code.k {
        return Err(CliError::Usage(format!("message has {} symbols, k = {}", symbols.len(), code.k)));
    }
    code.message(&symbols)
        .map_err(|e| CliError::Usage(format!("{e} (field has {} elements)", code.spec.field().order())))
}

fn cmd_encode(args: &CodeArgs, message: &str, method: EncodeMethod, fmt: Format, out: &mut dyn Write) -> CliResult<u8> {
    let code = load_code(args)?;
    let w = parse_message(&code, message)?;
    let gf = code.spec.field();
    let gb = oracle_gb(&code.decomp, &code.genmat, gf)?;
    let pos = info_positions(&gb, &code.decomp);
    let by_gb = matches!(method, EncodeMethod::Gb | EncodeMethod::Both)
        .then(|| encode(&w, &gb, &pos, &code.decomp, gf))
        .transpose()?;
    let by_genmat = if matches!(method, EncodeMethod::Genmat | EncodeMethod::Both) {
        let sys = systematic_genmatrix(&code.genmat, &pos, &code.decomp, gf)?;
        Some(encode_genmatrix(&w, &sys, gf)?)
    } else {
        None
    };
    let agree = match (&by_gb, &by_genmat) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    match fmt {
        Format::Json => {
            let mut v = json!({
                "message": codes(&w),
                "info_columns": pos.columns(&code.decomp),
                "info_positions": pos.monomials.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            if let Some(c) = &by_gb {
                v["codeword_gb"] = json!(codes(c));
            }
            if let Some(c) = &by_genmat {
                v["codeword_genmat"] = json!(codes(c));
            }
            if let Some(a) = agree {
                v["agree"] = json!(a);
            }
            json_out(out, &v)?;
        }
        Format::Csv => {
            for c in by_gb.iter().chain(&by_genmat) {
                writeln!(out, "{}", join(&codes(c), ","))?;
            }
        }
        Format::Text => match (&by_gb, &by_genmat) {
            (Some(a), Some(b)) => {
                writeln!(out, "gb:     {}", join(&codes(a), " "))?;
                writeln!(out, "genmat: {}", join(&codes(b), " "))?;
                writeln!(out, "{}", if a == b { "agree" } else { "DISAGREE" })?;
            }
            (Some(c), None) | (None, Some(c)) => writeln!(out, "{}", join(&codes(c), " "))?,
            (None, None) => unreachable!(),
        },
    }
    Ok(if agree == Some(false) { 1 } else { 0 })
}

struct BenchRow {
    lambda: u64,
    k: usize,
    n: usize,
    gb_coeffs: usize,
    genmat_coeffs: usize,
    encode_ns_gb: u128,
    encode_ns_genmat: u128,
}

/// Mean time per encoding of fixed pseudo-random messages.
fn time_encoders(code: &OnePointCode, gb: &GroebnerBasis, pos: &InfoPositions, gf: &Gf, reps: u32) -> CliResult<(u128, u128)> {
    let sys = systematic_genmatrix(&code.genmat, pos, &code.decomp, gf)?;
    let q = gf.order();
    let messages: Vec<Vec<Fe>> = (0..reps.max(1))
        .map(|r| (0..pos.k()).map(|i| Fe((r.wrapping_mul(31).wrapping_add(i as u32 * 7)) % q)).collect())
        .collect();
    let start = Instant::now();
    for w in &messages {
        std::hint::black_box(encode(w, gb, pos, &code.decomp, gf)?);
    }
    let t_gb = start.elapsed().as_nanos() / messages.len() as u128;
    let start = Instant::now();
    for w in &messages {
        std::hint::black_box(encode_genmatrix(w, &sys, gf)?);
    }
    let t_g = start.elapsed().as_nanos() / messages.len() as u128;
    Ok((t_gb, t_g))
}

fn cmd_bench(src: &Source, sweep: bool, lambda: Option<u64>, reps: u32, fmt: Format, out: &mut dyn Write) -> CliResult<u8> {
    let Loaded { spec, decomp } = load(src)?;
    let n = decomp.n();
    let lambdas: Vec<u64> = if sweep {
        (0..n as u64).collect()
    } else {
        let l = lambda.expect("clap requires --lambda without --lambda-sweep");
        check_lambda(l, n)?;
        vec![l]
    };
    let mut rows = Vec::new();
    for l in lambdas {
        let code = OnePointCode::with_decomposition(spec.clone(), decomp.clone(), l)?;
        let gf = code.spec.field();
        let gb = compute_gb(&code, GbMethod::Fast)?;
        let pos = info_positions(&gb, &code.decomp);
        let rep = storage_report(&gb, code.k, n);
        let (t_gb, t_g) = time_encoders(&code, &gb, &pos, gf, reps)?;
        rows.push(BenchRow {
            lambda: l,
            k: code.k,
            n,
            gb_coeffs: rep.gb_coeffs,
            genmat_coeffs: rep.genmat_coeffs,
            encode_ns_gb: t_gb,
            encode_ns_genmat: t_g,
        });
    }
    if fmt == Format::Json {
        let v: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "lambda": r.lambda, "k": r.k, "n": r.n,
                    "gb_coeffs": r.gb_coeffs, "genmat_coeffs": r.genmat_coeffs,
                    "encode_ns_gb": r.encode_ns_gb as u64, "encode_ns_genmat": r.encode_ns_genmat as u64,
                })
            })
            .collect();
        json_out(out, &json!(v))?;
    } else {
        writeln!(out, "lambda,k,n,gb_coeffs,genmat_coeffs,encode_ns_gb,encode_ns_genmat")?;
        for r in &rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.lambda, r.k, r.n, r.gb_coeffs, r.genmat_coeffs, r.encode_ns_gb, r.encode_ns_genmat
            )?;
        }
    }
    Ok(0)
}

fn cmd_verify(args: &CodeArgs, seed: u64, trials: usize, fmt: Format, out: &mut dyn Write) -> CliResult<u8> {
    let spec = load_curve(&args.source.curve)?;
    let n = spec.enumerate_points().len();
    check_lambda(args.lambda, n)?;
    let report = verify::verify(&spec, &args.source.curve, args.lambda, seed, trials);
    match fmt {
        Format::Json => json_out(out, &json!({ "ok": report.ok(), "report": report }))?,
        Format::Csv => {
            writeln!(out, "check,pass,detail")?;
            for c in &report.checks {
                writeln!(out, "{},{},\"{}\"", c.name, c.pass, c.detail.replace('"', "\"\""))?;
            }
        }
        Format::Text => {
            for c in &report.checks {
                writeln!(out, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail)?;
            }
            match report.first_failure() {
                None => writeln!(out, "verify: all {} checks passed", report.checks.len())?,
                Some(c) => writeln!(out, "verify: first failure: {}", c.name)?,
            }
        }
    }
    Ok(if report.ok() { 0 } else { 1 })
}
