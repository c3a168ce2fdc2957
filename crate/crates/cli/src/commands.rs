use std::fmt::Display;
use std::fs;
use std::path::Path;

use serde_json::json;

use facering::complex::{generate, ComplexError};
use facering::homology::{classify, default_window, local_cohomology_dims};
use facering::linalg::Field;
use facering::manifold_g::{
    check_mvector, lefschetz_ranks, verify_connection, verify_gorenstein, verify_gthm_special_case,
    verify_lefschetz, verify_link_isomorphisms, verify_socle, verify_symmetry, Analysis,
    ManifoldError, Omega, Provenance,
};
use facering::report::{Verdict, VerificationReport};
use facering::{parse_complex, with_field, FieldSpec, SimplicialComplex};

use crate::{Cli, Command};

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub(crate) enum CliError {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
    /// The computation could not be completed: exit 1.
    Failed(String),
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Printed text and whether everything passed.
pub(crate) type Rendered = (String, bool);

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub(crate) struct Ctx {
    pub field: FieldSpec,
    pub seed: u64,
    pub trials: usize,
    pub json: bool,
    pub window: Option<(i64, i64)>,
}

impl Ctx {
    fn from_cli(cli: &Cli) -> Self {
        Ctx {
            field: cli.field,
            seed: cli.seed,
            trials: cli.trials as usize,
            json: cli.json,
            window: cli.window,
        }
    }

    pub fn provenance(&self, name: &str) -> Provenance {
        Provenance {
            complex: name.to_string(),
            seed: self.seed,
            trials: self.trials,
        }
    }
}

pub(crate) fn tuple<T: Display>(xs: &[T]) -> String {
    format!(
        "({})",
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// Reads and parses a `.cplx` file; the name is the file stem.
pub(crate) fn load(path: &Path) -> Result<(String, SimplicialComplex), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let k =
        parse_complex(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "complex".into());
    Ok((name, k))
}

pub(crate) fn analysis<F: Field>(
    f: &F,
    name: &str,
    k: &SimplicialComplex,
    ctx: &Ctx,
) -> Result<Analysis<F>, CliError> {
    Analysis::new(f, k, ctx.provenance(name)).map_err(|e| CliError::Failed(format!("{name}: {e}")))
}

fn emit(ctx: &Ctx, summary: String, report: &VerificationReport) -> Rendered {
    let text = if ctx.json {
        report.to_json() + "\n"
    } else {
        format!("{summary}\n{}", report.render())
    };
    (text, report.verdict.is_ok())
}

pub(crate) fn dispatch(cli: &Cli) -> Outcome {
    let ctx = Ctx::from_cli(cli);
    match run_command(&cli.command, &ctx) {
        Ok((stdout, ok)) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(CliError::Usage(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(CliError::Failed(m)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
    }
}

fn run_command(command: &Command, ctx: &Ctx) -> Result<Rendered, CliError> {
    match command {
        Command::Classify { file } => {
            let (name, k) = load(file)?;
            Ok(with_field!(ctx.field, |f| cmd_classify(&f, &name, &k, ctx)))
        }
        Command::Socle { file } => {
            let (name, k) = load(file)?;
            with_field!(ctx.field, |f| cmd_socle(&f, &name, &k, ctx))
        }
        Command::Gorenstein { file } => {
            let (name, k) = load(file)?;
            with_field!(ctx.field, |f| cmd_gorenstein(&f, &name, &k, ctx))
        }
        Command::Symmetry { file } => {
            let (name, k) = load(file)?;
            with_field!(ctx.field, |f| cmd_symmetry(&f, &name, &k, ctx))
        }
        Command::Lefschetz { file, degree } => {
            let (name, k) = load(file)?;
            with_field!(ctx.field, |f| cmd_lefschetz(&f, &name, &k, ctx, *degree))
        }
        Command::Gcheck { file } => {
            let (name, k) = load(file)?;
            with_field!(ctx.field, |f| cmd_gcheck(&f, &name, &k, ctx))
        }
        Command::Linkiso { file, vertex } => {
            let (name, k) = load(file)?;
            with_field!(ctx.field, |f| cmd_linkiso(
                &f,
                &name,
                &k,
                ctx,
                vertex.as_deref()
            ))
        }
        Command::Connection { file, zero_omega } => {
            let (name, k) = load(file)?;
            with_field!(ctx.field, |f| cmd_connection(
                &f,
                &name,
                &k,
                ctx,
                *zero_omega
            ))
        }
        Command::Localcoh { file } => {
            let (name, k) = load(file)?;
            Ok(with_field!(ctx.field, |f| cmd_localcoh(&f, &name, &k, ctx)))
        }
        Command::Mvector { sequence } => Ok(cmd_mvector(sequence, ctx)),
        Command::Hvectors { file } => {
            let (name, k) = load(file)?;
            with_field!(ctx.field, |f| cmd_hvectors(&f, &name, &k, ctx))
        }
        Command::Generate { kind, d, out } => {
            let k = generate(*kind, *d)?;
            let text = k.to_cplx();
            match out {
                Some(path) => {
                    fs::write(path, &text)
                        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    Ok((format!("wrote {} ({k})\n", path.display()), true))
                }
                None => Ok((text, true)),
            }
        }
        Command::Batch { dir, out } => crate::batch::cmd_batch(dir, out.as_deref(), ctx),
    }
}

pub(crate) fn cmd_classify<F: Field>(
    f: &F,
    name: &str,
    k: &SimplicialComplex,
    ctx: &Ctx,
) -> Rendered {
    let c = classify(f, k);
    let fv = k.f_vector().0;
    let hv = k.h_vector().0;
    if ctx.json {
        let v = json!({ "complex": name, "classification": c, "f_vector": fv, "h_vector": hv });
        return (
            serde_json::to_string_pretty(&v).expect("serializable") + "\n",
            true,
        );
    }
    let mut s = format!("{name}: {k} over {}\n", ctx.field);
    s.push_str(&format!(
        "f = {}  h = {}  betti = {}\n",
        tuple(&fv),
        tuple(&hv),
        tuple(&c.betti.0)
    ));
    s.push_str(&format!(
        "pure={} connected={} strongly_connected={} buchsbaum={} manifold={} sphere={} orientable={}\n",
        c.is_pure,
        c.is_connected,
        c.is_strongly_connected,
        c.is_buchsbaum,
        c.is_homology_manifold,
        c.is_homology_sphere,
        c.is_orientable
    ));
    if let Some(w) = &c.witness {
        let degree = w
            .degree
            .map(|d| format!(" in degree {d}"))
            .unwrap_or_default();
        s.push_str(&format!(
            "witness: {} fails at face {{{}}}{degree} (observed {})\n",
            w.property,
            w.face.join(","),
            w.observed
        ));
    }
    (s, true)
}

fn cmd_socle<F: Field>(
    f: &F,
    name: &str,
    k: &SimplicialComplex,
    ctx: &Ctx,
) -> Result<Rendered, CliError> {
    let a = analysis(f, name, k, ctx)?;
    let report = verify_socle(&a);
    let summary = format!(
        "Soc dims {}; predicted C({},i)·β_(i-1): {}: {}",
        tuple(&a.socle.dims),
        a.krull_dim(),
        tuple(&a.socle.predicted),
        report.verdict
    );
    Ok(emit(ctx, summary, &report))
}

fn cmd_gorenstein<F: Field>(
    f: &F,
    name: &str,
    k: &SimplicialComplex,
    ctx: &Ctx,
) -> Result<Rendered, CliError> {
    let a = analysis(f, name, k, ctx)?;
    let bar = a.gorenstein();
    let report = verify_gorenstein(&a, &bar);
    let summary = format!(
        "socle of bar k(Δ) {}; h'' {}: {}",
        tuple(&bar.socle_dims()),
        tuple(&bar.hilbert()),
        report.verdict
    );
    Ok(emit(ctx, summary, &report))
}

fn cmd_symmetry<F: Field>(
    f: &F,
    name: &str,
    k: &SimplicialComplex,
    ctx: &Ctx,
) -> Result<Rendered, CliError> {
    let a = analysis(f, name, k, ctx)?;
    let bar = a.gorenstein();
    let report = verify_symmetry(&a, &bar);
    Ok(emit(
        ctx,
        format!("h'' {}: {}", tuple(&bar.hilbert()), report.verdict),
        &report,
    ))
}

fn cmd_lefschetz<F: Field>(
    f: &F,
    name: &str,
    k: &SimplicialComplex,
    ctx: &Ctx,
    degree: Option<usize>,
) -> Result<Rendered, CliError> {
    let a = analysis(f, name, k, ctx)?;
    let bar = a.gorenstein();
    let d = a.krull_dim();
    let report = match degree {
        None => verify_lefschetz(&a, &bar),
        Some(i) if 2 * i > d => {
            return Err(CliError::Usage(format!(
                "degree {i} is above d/2 = {}",
                d as f64 / 2.0
            )))
        }
        Some(i) => {
            let l = lefschetz_ranks(&bar, &Omega::Generic, i, a.omega_seed(), ctx.trials);
            let mut r = VerificationReport::new("lefschetz", a.inputs());
            r.check(
                format!("i={i}: rank of ω^{} bar_{i} -> bar_{}", d - 2 * i, d - i),
                (l.dim_source, l.dim_source),
                (l.rank, l.dim_target),
            );
            if !l.consistent {
                r.note(format!("draws disagree, ranks {:?}", l.trial_ranks));
            }
            r.finalize(a.manifold_gate())
        }
    };
    Ok(emit(
        ctx,
        format!("h'' {}: {}", tuple(&bar.hilbert()), report.verdict),
        &report,
    ))
}

fn cmd_gcheck<F: Field>(
    f: &F,
    name: &str,
    k: &SimplicialComplex,
    ctx: &Ctx,
) -> Result<Rendered, CliError> {
    let a = analysis(f, name, k, ctx)?;
    let report = verify_gthm_special_case(&a).map_err(|e| match e {
        ManifoldError::DimensionTooSmall(_) => CliError::Usage(e.to_string()),
        other => CliError::Failed(other.to_string()),
    })?;
    let faces = facering::manifold_g::qualifying_faces(k);
    let summary = match faces.first() {
        Some(t) => format!(
            "{} face(s) like τ = {{{}}} have every vertex in their star: {}",
            faces.len(),
            k.face_labels(t).join(","),
            report.verdict
        ),
        None => format!(
            "no face of dimension {} has every vertex in its star: {}",
            k.dim() - 2,
            report.verdict
        ),
    };
    Ok(emit(ctx, summary, &report))
}

fn cmd_linkiso<F: Field>(
    f: &F,
    name: &str,
    k: &SimplicialComplex,
    ctx: &Ctx,
    vertex: Option<&str>,
) -> Result<Rendered, CliError> {
    let v = match vertex {
        Some(label) => Some(
            k.vertex_id(label)
                .ok_or_else(|| CliError::Usage(format!("no vertex `{label}`")))?,
        ),
        None => None,
    };
    let a = analysis(f, name, k, ctx)?;
    let report = verify_link_isomorphisms(&a, v);
    let count = v.map(|_| 1).unwrap_or(k.num_vertices());
    Ok(emit(
        ctx,
        format!(
            "link isomorphism at {count} vertex link(s): {}",
            report.verdict
        ),
        &report,
    ))
}

fn cmd_connection<F: Field>(
    f: &F,
    name: &str,
    k: &SimplicialComplex,
    ctx: &Ctx,
    zero_omega: bool,
) -> Result<Rendered, CliError> {
    let a = analysis(f, name, k, ctx)?;
    let report = verify_connection(&a, zero_omega);
    Ok(emit(
        ctx,
        format!("link premise and g-profile: {}", report.verdict),
        &report,
    ))
}

fn cmd_localcoh<F: Field>(f: &F, name: &str, k: &SimplicialComplex, ctx: &Ctx) -> Rendered {
    let d = k.krull_dim();
    let window = ctx.window.unwrap_or_else(|| default_window(d));
    let table = local_cohomology_dims(f, k, window);
    if ctx.json {
        let v = json!({ "complex": name, "field": ctx.field.to_string(), "table": table });
        return (
            serde_json::to_string_pretty(&v).expect("serializable") + "\n",
            true,
        );
    }
    let (lo, hi) = window;
    let mut s = format!("{name}: dim H^j(k[Δ])_m over {}\n", ctx.field);
    s.push_str(&format!("{:>6}", "m"));
    for m in lo..=hi {
        s.push_str(&format!("{m:>6}"));
    }
    s.push('\n');
    for j in 0..=d {
        s.push_str(&format!("{:>6}", format!("H^{j}")));
        for m in lo..=hi {
            s.push_str(&format!("{:>6}", table.dim(j, m)));
        }
        s.push('\n');
    }
    (s, true)
}

fn cmd_mvector(sequence: &[i64], ctx: &Ctx) -> Rendered {
    let result = check_mvector(sequence);
    let ok = result.is_ok();
    let text = if ctx.json {
        let v = json!({
            "sequence": sequence,
            "mvector": ok,
            "verdict": if ok { Verdict::Pass } else { Verdict::Fail },
            "reason": result.as_ref().err().map(|e| e.to_string()),
        });
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    } else {
        match result {
            Ok(()) => format!("{} is an M-vector: PASS\n", tuple(sequence)),
            Err(e) => format!("{} is not an M-vector: {e}\n", tuple(sequence)),
        }
    };
    (text, ok)
}

fn cmd_hvectors<F: Field>(
    f: &F,
    name: &str,
    k: &SimplicialComplex,
    ctx: &Ctx,
) -> Result<Rendered, CliError> {
    let a = analysis(f, name, k, ctx)?;
    let bar = a.gorenstein();
    let fv = k.f_vector().0;
    let hv = k.h_vector().0;
    let direct = a.reduction().hilbert();
    let formula = a
        .classification
        .is_buchsbaum
        .then(|| facering::face_ring::schenzel_formula(&hv, &a.classification.betti));
    let h2 = bar.hilbert();
    let consistent = formula
        .as_ref()
        .map(|s| s.iter().zip(&direct).all(|(x, y)| *x == *y as i64))
        .unwrap_or(true);
    if ctx.json {
        let v = json!({
            "complex": name,
            "field": ctx.field.to_string(),
            "seed": ctx.seed,
            "trials": ctx.trials,
            "f": fv,
            "h": hv,
            "h_prime": direct,
            "h_prime_formula": formula,
            "h_double_prime": h2,
        });
        return Ok((
            serde_json::to_string_pretty(&v).expect("serializable") + "\n",
            consistent,
        ));
    }
    let mut s = format!(
        "{name} over {} (seed {}, trials {})\n",
        ctx.field, ctx.seed, ctx.trials
    );
    s.push_str(&format!("f   {}\n", tuple(&fv)));
    s.push_str(&format!("h   {}\n", tuple(&hv)));
    s.push_str(&format!("h'  {}\n", tuple(&direct)));
    match &formula {
        Some(x) => s.push_str(&format!("h' from h and betti {}\n", tuple(x))),
        None => s.push_str("h' from h and betti: not Buchsbaum\n"),
    }
    s.push_str(&format!("h'' {}\n", tuple(&h2)));
    Ok((s, consistent))
}
