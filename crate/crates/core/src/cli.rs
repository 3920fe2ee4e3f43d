//! Command-line front end. Every report is one JSON document on standard
//! output carrying a `manifest`; a one-line summary goes to standard error.

use crate::catalog::{self, CATALOG};
use crate::error::{Error, Result};
use crate::exterior::{analyze_kvector_with, embed_kvector, ExteriorModel, KVectorOptions, MultiVector};
use crate::involutions::{
    check_compatibility, improve_compact_form_real, is_r_compatible, killing_f64, perturb_conjugation, realify,
};
use crate::jordan_sl2::{analyze_element, jmv_triple};
use crate::lie::{element_from_json, verify_axioms, AlgebraJson, Element, ElementJson, GradedAlgebra};
use crate::nilclass::{
    classify_nilpotent_orbits, genericity_matrix, slice, slice_commutant, slice_identities, ComponentOptions, Mode,
};
use crate::scalar::{parse_rational, Rational};
use crate::z2_orbits::{catalog_cartan_decomposition, mixed_conjugacy, z2_describe, MixedOptions, Verdict, WeylSource};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;
pub const EXIT_STRICT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "gradus", version, about = "Exact computations in graded real semisimple Lie algebras")]
struct Cli {
    /// Record wall time in the manifest (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or export catalog algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Check antisymmetry, Jacobi, grading and the Killing form.
    Verify { algebra: String },
    /// Element predicates and Jordan decomposition.
    Element {
        #[command(subcommand)]
        action: ElementCmd,
    },
    /// sl2-triple through a degree-1 nilpotent element.
    Jmv {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// The slice g(h/2) and its commutant.
    Slice {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Degree-1 nilpotent orbits with characteristic h.
    Nilorbits {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 96)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "box", default_value_t = 3)]
        box_radius: u32,
        /// Exit 4 when the result is heuristic.
        #[arg(long)]
        strict: bool,
    },
    /// Z/2-graded descriptions and conjugacy.
    Z2 {
        #[command(subcommand)]
        action: Z2Cmd,
    },
    /// k-vectors and k-forms through the exterior models.
    Kform {
        #[command(subcommand)]
        action: KformCmd,
    },
    /// Real-form compatibility and compact-form improvement.
    Involution {
        #[command(subcommand)]
        action: InvolutionCmd,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Build { name: String },
}

#[derive(Subcommand, Debug)]
enum ElementCmd {
    Analyze {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SourceArg {
    Ambient,
    DegreeZero,
}

#[derive(Subcommand, Debug)]
enum Z2Cmd {
    Describe {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    Compare {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Compact group used for Weyl elements.
        #[arg(long, value_enum, default_value_t = SourceArg::Ambient)]
        source: SourceArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exit 4 when the verdict is undecided.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Subcommand, Debug)]
enum KformCmd {
    Analyze {
        /// e7 / e7-split-z2 or e8 / e8-split-z3.
        #[arg(long)]
        model: String,
        #[arg(allow_hyphen_values = true)]
        form: String,
        /// The input is a form; map it through P_*.
        #[arg(long)]
        dualize: bool,
        /// Ambient dimension for expression input (default: the model's).
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum InvolutionCmd {
    /// Compatibility of the catalog real form, grading and compact form.
    Check { algebra: String },
    /// Perturb the catalog compact form by exp(ad(t X)) and restore it.
    Improve {
        algebra: String,
        /// Element X of the real algebra.
        #[arg(long, allow_hyphen_values = true)]
        perturb: Option<String>,
        /// Complex scale `re,im`.
        #[arg(long, default_value = "0,0.25", allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

/// Provenance embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub input_digests: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub argument: String,
    pub source: String,
    pub sha256: String,
}

/// Result of one invocation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

struct Ctx {
    digests: Vec<InputDigest>,
}

impl Ctx {
    fn record(&mut self, argument: &str, source: &str, bytes: &[u8]) {
        self.digests.push(InputDigest { argument: argument.into(), source: source.into(), sha256: sha256_hex(bytes) });
    }

    /// File contents when `arg` names a file; `None` otherwise.
    fn read_file(&mut self, arg: &str) -> Result<Option<String>> {
        let p = std::path::Path::new(arg);
        if !p.is_file() {
            return Ok(None);
        }
        let bytes = std::fs::read(p)?;
        self.record(arg, "file", &bytes);
        String::from_utf8(bytes).map(Some).map_err(|_| Error::Parse(format!("{arg} is not UTF-8")))
    }

    /// A catalog name or an algebra JSON file. A file whose name and
    /// structure constants match a catalog algebra gets the catalog's
    /// extra data (Cartan involution, weights, centre).
    fn algebra(&mut self, arg: &str) -> Result<GradedAlgebra> {
        if let Some(text) = self.read_file(arg)? {
            let j: AlgebraJson = serde_json::from_value(strip_manifest(serde_json::from_str(&text)?))?;
            let alg = GradedAlgebra::from_json_value(&j)?;
            if CATALOG.iter().any(|e| e.name == j.name) || j.name.starts_with("sl") {
                if let Ok(c) = catalog::build(&j.name) {
                    if c.to_json_value() == j {
                        return Ok(c);
                    }
                }
            }
            return Ok(alg);
        }
        let alg = catalog::build(arg).map_err(|e| {
            Error::InvalidInput(format!("{arg:?} is neither a readable file nor a catalog name ({e})"))
        })?;
        self.record(arg, "catalog", arg.as_bytes());
        Ok(alg)
    }

    /// An element file, inline element JSON, or `2*E + F - 1/2*H`.
    fn element(&mut self, alg: &GradedAlgebra, arg: &str) -> Result<Element> {
        let text = match self.read_file(arg)? {
            Some(t) => t,
            None => {
                self.record(arg, "inline", arg.as_bytes());
                arg.to_string()
            }
        };
        element_from_text(alg, &text)
    }

    /// Multivector JSON or `e123 + 2*e456`; `0` is the zero k-vector.
    fn multivector(&mut self, arg: &str, n: usize, k: usize) -> Result<MultiVector> {
        let text = match self.read_file(arg)? {
            Some(t) => t,
            None => {
                self.record(arg, "inline", arg.as_bytes());
                arg.to_string()
            }
        };
        multivector_from_text(&text, n, k)
    }
}

/// Element JSON (an optional `manifest` key is ignored) or a linear
/// expression over basis labels.
pub fn element_from_text(alg: &GradedAlgebra, text: &str) -> Result<Element> {
    if text.trim_start().starts_with('{') {
        let j: ElementJson = serde_json::from_value(strip_manifest(serde_json::from_str(text)?))?;
        return element_from_json(alg, &j);
    }
    let mut x = Element::zero(alg.dim());
    for (c, label) in parse_linear_expression(text)? {
        let i = alg
            .index_of(&label)
            .ok_or_else(|| Error::InvalidInput(format!("unknown basis label {label:?} in {}", alg.name())))?;
        x.coords[i] += c;
    }
    Ok(x)
}

/// Multivector JSON or an expression `e123 + 2*e456` on R^n; an empty
/// expression is the zero k-vector.
pub fn multivector_from_text(text: &str, n: usize, k: usize) -> Result<MultiVector> {
    if text.trim_start().starts_with('{') {
        return Ok(serde_json::from_value(strip_manifest(serde_json::from_str(text)?))?);
    }
    let mut w: Option<MultiVector> = None;
    for (c, label) in parse_linear_expression(text)? {
        let digits = label
            .strip_prefix('e')
            .filter(|d| !d.is_empty() && d.chars().all(|ch| ch.is_ascii_digit() && ch != '0'))
            .ok_or_else(|| Error::Parse(format!("multivector term {label:?} must look like e123")))?;
        let idx: Vec<usize> = digits.chars().map(|ch| ch.to_digit(10).unwrap() as usize - 1).collect();
        if w.is_none() {
            w = Some(MultiVector::zero(n, idx.len())?);
        }
        w.as_mut().expect("set").add_term(&idx, c)?;
    }
    match w {
        Some(w) => Ok(w),
        None => MultiVector::zero(n, k),
    }
}

fn strip_manifest(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.remove("manifest");
    }
    v
}

/// `[(coefficient, label)]` from `a*L1 + L2 - b*L3`.
pub fn parse_linear_expression(s: &str) -> Result<Vec<(Rational, String)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() || compact == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let mut sign = Rational::one();
        while let Some(c) = rest.chars().next().filter(|c| *c == '+' || *c == '-') {
            if c == '-' {
                sign = -sign;
            }
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        let (coef, label) = match term.rsplit_once('*') {
            Some((c, l)) => (parse_rational(c)?, l),
            None => (Rational::one(), term),
        };
        if label.is_empty() {
            return Err(Error::Parse(format!("missing label in {s:?}")));
        }
        terms.push((sign * coef, label.to_string()));
    }
    Ok(terms)
}

fn configure_threads() {
    if let Some(n) = std::env::var("GRADUS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|n| *n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn exit_code_of(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_COMPUTATION
    }
}

struct Report {
    body: Value,
    seed: Option<u64>,
    summary: String,
    code: i32,
}

fn report<T: Serialize>(body: &T, summary: impl Into<String>) -> Result<Report> {
    Ok(Report { body: serde_json::to_value(body)?, seed: None, summary: summary.into(), code: EXIT_OK })
}

/// Run the CLI on `argv` (including the program name).
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text },
            };
        }
    };
    configure_threads();
    let start = Instant::now();
    let mut ctx = Ctx { digests: Vec::new() };
    let command = command_name(&cli.command);
    match dispatch(&cli.command, &mut ctx) {
        Ok(r) => {
            let manifest = RunManifest {
                command: command.clone(),
                arguments: argv.iter().skip(1).cloned().collect(),
                seed: r.seed,
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                input_digests: ctx.digests,
                wall_time_ms: cli.timing.then(|| start.elapsed().as_millis() as u64),
            };
            let mut body = r.body;
            match &mut body {
                Value::Object(m) => {
                    m.insert("manifest".into(), serde_json::to_value(&manifest).expect("manifest"));
                }
                other => {
                    *other = json!({ "result": other.clone(), "manifest": manifest });
                }
            }
            let mut stdout = serde_json::to_string_pretty(&body).expect("report");
            stdout.push('\n');
            Outcome { code: r.code, stdout, stderr: format!("gradus {command}: {}\n", r.summary) }
        }
        Err(e) => Outcome { code: exit_code_of(&e), stdout: String::new(), stderr: format!("gradus {command}: error: {e}\n") },
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Catalog { action: CatalogCmd::List } => "catalog list",
        Command::Catalog { action: CatalogCmd::Build { .. } } => "catalog build",
        Command::Verify { .. } => "verify",
        Command::Element { .. } => "element analyze",
        Command::Jmv { .. } => "jmv",
        Command::Slice { .. } => "slice",
        Command::Nilorbits { .. } => "nilorbits",
        Command::Z2 { action: Z2Cmd::Describe { .. } } => "z2 describe",
        Command::Z2 { action: Z2Cmd::Compare { .. } } => "z2 compare",
        Command::Kform { .. } => "kform analyze",
        Command::Involution { action: InvolutionCmd::Check { .. } } => "involution check",
        Command::Involution { action: InvolutionCmd::Improve { .. } } => "involution improve",
    }
    .to_string()
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<Report> {
    match cmd {
        Command::Catalog { action: CatalogCmd::List } => {
            report(&json!({ "algebras": CATALOG }), format!("{} catalog algebras", CATALOG.len()))
        }
        Command::Catalog { action: CatalogCmd::Build { name } } => {
            let alg = catalog::build(name)?;
            report(&alg.to_json_value(), format!("{} (dim {})", alg.name(), alg.dim()))
        }
        Command::Verify { algebra } => {
            let alg = ctx.algebra(algebra)?;
            let r = verify_axioms(&alg);
            let mut out = report(&r, format!("{}: {}", alg.name(), if r.passed { "all axioms hold" } else { "axioms fail" }))?;
            if !r.passed {
                out.code = EXIT_COMPUTATION;
            }
            Ok(out)
        }
        Command::Element { action: ElementCmd::Analyze { algebra, element } } => {
            let alg = ctx.algebra(algebra)?;
            let x = ctx.element(&alg, element)?;
            let a = analyze_element(&alg, &x)?;
            let summary = format!("nilpotent={} semisimple={}", a.nilpotent, a.semisimple);
            report(&json!({ "algebra": alg.name(), "element": x, "analysis": a }), summary)
        }
        Command::Jmv { algebra, element } => {
            let alg = ctx.algebra(algebra)?;
            let e = ctx.element(&alg, element)?;
            let r = jmv_triple(&alg, &e)?;
            let body = json!({
                "algebra": alg.name(),
                "h": r.triple.h,
                "e": r.triple.e,
                "f": r.triple.f,
                "f_prime": r.f_prime,
                "correction": r.correction,
                "uniqueness_kernel_dim": r.uniqueness_kernel_dim,
                "relations_hold": r.triple.relations_hold(&alg)?,
            });
            report(&body, format!("triple found, uniqueness kernel dim {}", r.uniqueness_kernel_dim))
        }
        Command::Slice { algebra, h } => {
            let alg = ctx.algebra(algebra)?;
            let h = ctx.element(&alg, h)?;
            let s = slice(&alg, &h)?;
            let c = slice_commutant(&alg, &s)?;
            let identities = slice_identities(&alg, &s, &c)?;
            let genericity = match genericity_matrix(&alg, &s, &c) {
                Ok(d) => json!({ "m": d.m(), "n": d.n(), "minors": d.minors.as_ref().map(|m| m.len()), "minors_omitted": d.minors_omitted }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            let summary = format!("slice dims {:?}", s.dims());
            report(
                &json!({ "algebra": alg.name(), "h": h, "slice": s, "commutant": c, "identities": identities, "genericity": genericity }),
                summary,
            )
        }
        Command::Nilorbits { algebra, h, samples, seed, box_radius, strict } => {
            let alg = ctx.algebra(algebra)?;
            let h = ctx.element(&alg, h)?;
            if *box_radius == 0 || *samples == 0 {
                return Err(Error::InvalidInput("--samples and --box must be positive".into()));
            }
            let opts = ComponentOptions { seed: *seed, samples: *samples, box_radius: *box_radius, ..Default::default() };
            let r = classify_nilpotent_orbits(&alg, &h, &opts)?;
            let summary = format!("{} orbit(s), {} mode", r.orbit_count, if r.mode == Mode::Exact { "exact" } else { "heuristic" });
            let mut out = report(&r, summary)?;
            out.seed = Some(*seed);
            if *strict && r.mode == Mode::Heuristic {
                out.code = EXIT_STRICT;
            }
            Ok(out)
        }
        Command::Z2 { action: Z2Cmd::Describe { algebra, element } } => {
            let alg = ctx.algebra(algebra)?;
            let x = ctx.element(&alg, element)?;
            let d = catalog_cartan_decomposition(&alg)?;
            let r = z2_describe(&alg, &d, &x)?;
            let summary = if r.normal_form.is_some() { "normal form found" } else { "no normal form" };
            report(&json!({ "algebra": alg.name(), "element": x, "description": r }), summary)
        }
        Command::Z2 { action: Z2Cmd::Compare { algebra, x, y, source, seed, strict } } => {
            let alg = ctx.algebra(algebra)?;
            let x = ctx.element(&alg, x)?;
            let y = ctx.element(&alg, y)?;
            let d = catalog_cartan_decomposition(&alg)?;
            let mut opts = MixedOptions::default();
            opts.weyl.source = match source {
                SourceArg::Ambient => WeylSource::AmbientCompact,
                SourceArg::DegreeZero => WeylSource::DegreeZeroCompact,
            };
            opts.components.seed = *seed;
            let v = mixed_conjugacy(&alg, &d, &x, &y, &opts)?;
            let mut out = report(&json!({ "algebra": alg.name(), "x": x, "y": y, "verdict": v }), format!("{:?} at stage {}", v.verdict, v.stage))?;
            out.seed = Some(*seed);
            if *strict && v.verdict == Verdict::Undecided {
                out.code = EXIT_STRICT;
            }
            Ok(out)
        }
        Command::Kform { action: KformCmd::Analyze { model, form, dualize, n } } => {
            let m = ExteriorModel::from_name(model)?;
            let w = ctx.multivector(form, n.unwrap_or(m.n()), m.grade())?;
            let opts = KVectorOptions { dualize: *dualize };
            let (target, _, _) = embed_kvector(&w, &opts)?;
            if target != m {
                return Err(Error::InvalidInput(format!(
                    "a grade-{} input on R^{} belongs to {}, not {}",
                    w.grade(),
                    w.n(),
                    target.catalog_name(),
                    m.catalog_name()
                )));
            }
            let alg = m.build()?;
            let r = analyze_kvector_with(&alg, &w, &opts)?;
            let summary = format!("{:?} in {}", r.kind, r.algebra);
            report(&r, summary)
        }
        Command::Involution { action: InvolutionCmd::Check { algebra } } => {
            let alg = ctx.algebra(algebra)?;
            let (c, tau_g) = catalog::complexify(&alg)?;
            let theta = catalog::theta_automorphism(&c)?;
            let comp = check_compatibility(&c, &tau_g, &theta)?;
            let tau_u = catalog::compact_form_conjugation(&c)?;
            let rc = is_r_compatible(&c, &tau_u, &theta)?;
            let ok = comp.comp_holds && comp.comp2_holds && comp.grad_holds && rc.r_compatible;
            report(
                &json!({ "algebra": alg.name(), "compatibility": comp, "compact_form": rc, "ok": ok }),
                if ok { "compatible" } else { "not compatible" },
            )
        }
        Command::Involution { action: InvolutionCmd::Improve { algebra, perturb, t, tol } } => {
            let alg = ctx.algebra(algebra)?;
            if !(*tol > 0.0) {
                return Err(Error::InvalidInput("--tol must be positive".into()));
            }
            let (re, im) = parse_pair(t)?;
            let (c, tau_g) = catalog::complexify(&alg)?;
            let theta = realify(&catalog::theta_automorphism(&c)?);
            let mut tau_u = realify(&catalog::compact_form_conjugation(&c)?);
            let x = match perturb {
                Some(p) => Some(ctx.element(&alg, p)?),
                None => None,
            };
            if let Some(x) = &x {
                tau_u = perturb_conjugation(&alg, x, (re, im), &tau_u)?;
            }
            let r = improve_compact_form_real(&killing_f64(&c), &realify(&tau_g), &tau_u, &theta, *tol)?;
            let converged = r.tau_g_commutator < *tol && r.hel3_residual < *tol;
            let summary = format!("commutator {:.3e}, hel3 {:.3e}", r.tau_g_commutator, r.hel3_residual);
            let mut out = report(
                &json!({ "algebra": alg.name(), "perturbation": x, "t": [re, im], "report": r, "converged": converged }),
                summary,
            )?;
            if !converged {
                out.code = EXIT_COMPUTATION;
            }
            Ok(out)
        }
    }
}

fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s.split_once(',').ok_or_else(|| Error::Parse(format!("expected re,im, got {s:?}")))?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number {x:?}")));
    Ok((p(a)?, p(b)?))
}
