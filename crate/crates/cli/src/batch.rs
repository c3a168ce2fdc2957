use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use facering::homology::classify;
use facering::linalg::Field;
use facering::manifold_g::{
    g_mvector_consequences, verify_gorenstein, verify_gthm_special_case, verify_link_isomorphisms,
    verify_schenzel, verify_socle, verify_symmetry,
};
use facering::report::VerificationReport;
use facering::{with_field, SimplicialComplex};

use crate::commands::{analysis, load, CliError, Ctx, Rendered};

#[derive(Serialize)]
struct FileSummary {
    file: String,
    verdicts: Vec<(String, String)>,
    error: Option<String>,
}

fn reports_for<F: Field>(
    f: &F,
    name: &str,
    k: &SimplicialComplex,
    ctx: &Ctx,
) -> Result<Value, CliError> {
    let class = classify(f, k);
    let a = analysis(f, name, k, ctx)?;
    let bar = a.gorenstein();
    let mut reports: Vec<VerificationReport> = vec![
        verify_schenzel(&a),
        verify_socle(&a),
        verify_gorenstein(&a, &bar),
        verify_symmetry(&a, &bar),
        g_mvector_consequences(&a, &bar),
        verify_link_isomorphisms(&a, None),
    ];
    if a.krull_dim() >= 3 {
        reports.push(
            verify_gthm_special_case(&a).map_err(|e| CliError::Failed(format!("{name}: {e}")))?,
        );
    }
    Ok(json!({
        "complex": name,
        "field": ctx.field.to_string(),
        "seed": ctx.seed,
        "trials": ctx.trials,
        "classification": class,
        "reports": reports,
    }))
}

fn process(path: &Path, out: &Path, ctx: &Ctx) -> FileSummary {
    let file = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let result = load(path).and_then(|(name, k)| {
        let v = with_field!(ctx.field, |f| reports_for(&f, &name, &k, ctx))?;
        let target = out.join(format!("{name}.json"));
        let text = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
        fs::write(&target, text)
            .map_err(|e| CliError::Failed(format!("{}: {e}", target.display())))?;
        Ok(v)
    });
    match result {
        Ok(v) => {
            let verdicts = v["reports"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|r| {
                    (
                        r["theorem"].as_str().unwrap_or("").to_string(),
                        r["verdict"].as_str().unwrap_or("").to_string(),
                    )
                })
                .collect();
            FileSummary {
                file,
                verdicts,
                error: None,
            }
        }
        Err(CliError::Usage(m)) | Err(CliError::Failed(m)) => FileSummary {
            file,
            verdicts: Vec::new(),
            error: Some(m),
        },
    }
}

/// Runs the standard checks on every `.cplx` file in `dir`, writing one JSON report per file
/// and a `summary.json`.
pub(crate) fn cmd_batch(dir: &Path, out: Option<&Path>, ctx: &Ctx) -> Result<Rendered, CliError> {
    let entries =
        fs::read_dir(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "cplx"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Usage(format!(
            "no .cplx files in {}",
            dir.display()
        )));
    }
    let out = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| dir.join("reports"));
    fs::create_dir_all(&out).map_err(|e| CliError::Failed(format!("{}: {e}", out.display())))?;

    let summaries: Vec<FileSummary> = files.par_iter().map(|p| process(p, &out, ctx)).collect();
    let summary_path = out.join("summary.json");
    let text = serde_json::to_string_pretty(&summaries).expect("serializable") + "\n";
    fs::write(&summary_path, text)
        .map_err(|e| CliError::Failed(format!("{}: {e}", summary_path.display())))?;

    let mut ok = true;
    let mut s = String::new();
    for f in &summaries {
        match &f.error {
            Some(e) => {
                ok = false;
                s.push_str(&format!("{:<28} ERROR {e}\n", f.file));
            }
            None => {
                ok &= f.verdicts.iter().all(|(_, v)| v != "FAIL");
                let line = f
                    .verdicts
                    .iter()
                    .map(|(t, v)| format!("{t}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                s.push_str(&format!("{:<28} {line}\n", f.file));
            }
        }
    }
    s.push_str(&format!(
        "{} file(s); reports in {}\n",
        summaries.len(),
        out.display()
    ));
    if ctx.json {
        s = serde_json::to_string_pretty(&summaries).expect("serializable") + "\n";
    }
    Ok((s, ok))
}
