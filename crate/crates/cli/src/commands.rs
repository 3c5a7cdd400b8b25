use std::fmt::{Display, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

use equilap::constructions::{
    apply_ez, build_starlike, build_w, generate_family, BinaryVector, Placement, StarlikeSpec,
};
use equilap::graph::Graph;
use equilap::spectra::{laplacian_spectrum, sigma_dense, EnergyReport, DEFAULT_TOL};
use equilap::tree_count::{jt_locate, sigma_graph, RootedTree};
use equilap::verify::{self, Budget, CheckReport};

use crate::input::{exact_rational, graph_shorthand, read_graph, usize_list};
use crate::{BudgetArg, BuildCommand, Claim, CliError, Format, PlacementArg, VerifyArgs};

fn input_err(e: impl Display) -> CliError {
    CliError::Input(e.to_string())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn class_name(g: &Graph) -> String {
    serde_json::to_value(g.classify())
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn render_graph(g: &Graph, name: &str, format: Format) -> String {
    match format {
        Format::Text => g.to_edge_list(),
        Format::Dot => g.to_dot(name),
        Format::Csv => {
            let mut s = String::from("u,v\n");
            for (i, j) in g.edges() {
                s.push_str(&format!("{i},{j}\n"));
            }
            s
        }
        Format::Json => {
            let edges: Vec<[usize; 2]> = g.edges().map(|(i, j)| [i, j]).collect();
            let v = json!({ "n": g.order(), "edges": edges, "class": class_name(g) });
            format!("{v:#}\n")
        }
    }
}

/// Writes the graph to `path` and returns a summary line, or returns the
/// graph itself when there is no `path` (the summary then goes to stderr).
fn emit_graph(g: &Graph, name: &str, path: Option<&Path>, format: Format) -> Result<String, CliError> {
    let summary = format!("n = {}, edges = {}, class = {}", g.order(), g.size(), class_name(g));
    let body = render_graph(g, name, format);
    match path {
        Some(path) => {
            write_file(path, &body)?;
            Ok(format!("{summary} -> {}\n", path.display()))
        }
        None => {
            eprintln!("{summary}");
            Ok(body)
        }
    }
}

pub fn build(cmd: BuildCommand, format: Format) -> Result<String, CliError> {
    match cmd {
        BuildCommand::Starlike { branches, out } => {
            let spec = StarlikeSpec::new(usize_list(&branches)?).map_err(input_err)?;
            emit_graph(&build_starlike(&spec), "starlike", out.as_deref(), format)
        }
        BuildCommand::W {
            gstar,
            gbreve,
            root,
            y,
            z,
            out,
        } => {
            let gstar = graph_shorthand(&gstar)?;
            let gbreve = graph_shorthand(&gbreve)?;
            let y: BinaryVector = y.parse().map_err(input_err)?;
            let w = build_w(&gstar, &gbreve, root, &y).map_err(input_err)?;
            let g = match z {
                Some(z) => apply_ez(&w, &z.parse().map_err(input_err)?).map_err(input_err)?,
                None => w.assembled().clone(),
            };
            emit_graph(&g, "w", out.as_deref(), format)
        }
        BuildCommand::Family {
            ell,
            gamma,
            placement,
            even_branches,
            out_dir,
        } => {
            let placement = placement_policy(placement, gamma, even_branches.as_deref())?;
            let fam = generate_family(ell, gamma, &placement).map_err(input_err)?;
            let dir = out_dir.unwrap_or_else(|| PathBuf::from(format!("family-l{ell}-g{gamma}")));
            let mut out = String::new();
            let manifest = fam
                .write_to(&dir)
                .map_err(|e| CliError::Io(dir.display().to_string(), e))?;
            if format == Format::Dot {
                for (entry, g) in manifest.graphs.iter().zip(fam.graphs()) {
                    let stem = entry.file.trim_end_matches(".edges");
                    write_file(&dir.join(format!("{stem}.dot")), &g.to_dot(stem))?;
                }
            }
            match format {
                Format::Json => {
                    let _ = writeln!(out, "{:#}", json!(manifest));
                }
                _ => {
                    let _ = writeln!(out, "n = {}, branches = {:?} -> {}", manifest.n, manifest.branches, dir.display());
                    for (entry, g) in manifest.graphs.iter().zip(fam.graphs()) {
                        let _ = writeln!(out, "{}: edges = {}, class = {}", entry.file, entry.edges, class_name(g));
                    }
                }
            }
            Ok(out)
        }
    }
}

fn placement_policy(p: PlacementArg, gamma: usize, lengths: Option<&str>) -> Result<Placement, CliError> {
    match (p, lengths) {
        (PlacementArg::Odd, None) => Ok(Placement::GrowOddBranch),
        (PlacementArg::Odd, Some(_)) => Err(CliError::Input(
            "--even-branches only applies to --placement even".into(),
        )),
        (PlacementArg::Even, None) => Ok(Placement::even_pairs(gamma)),
        (PlacementArg::Even, Some(l)) => Ok(Placement::AddEvenBranches(usize_list(l)?)),
    }
}

pub fn spectrum(file: &Path, format: Format, tol: Option<f64>) -> Result<String, CliError> {
    let mut out = String::new();
    let g = read_graph(file)?;
    let spec = laplacian_spectrum(&g)
        .map_err(input_err)?
        .with_tol(tol.unwrap_or(DEFAULT_TOL));
    let sigma = if g.is_connected() {
        sigma_graph(&g).map_err(input_err)?
    } else {
        sigma_dense(&g).map_err(input_err)?
    };
    let report = EnergyReport::new(&g, &spec, sigma);
    let rounded = spec.rounded(5);
    match format {
        Format::Text => {
            let _ = writeln!(out, "n {}", report.n);
            let _ = writeln!(out, "edges {}", report.edges);
            let _ = writeln!(out, "avg_degree {:?}", report.avg_degree);
            let _ = writeln!(out, "sigma {}", report.sigma);
            let _ = writeln!(out, "energy {:?}", report.energy);
            let _ = writeln!(out, "eigenvalue rounded");
            for (v, r) in spec.values().iter().zip(&rounded) {
                let _ = writeln!(out, "{v:?} {r:.5}");
            }
        }
        Format::Json => {
            let mut distinct: Vec<serde_json::Value> = Vec::new();
            let mut i = 0;
            let vals = spec.values();
            while i < vals.len() {
                let run = vals[i..]
                    .iter()
                    .take_while(|&&x| (x - vals[i]).abs() <= spec.tol())
                    .count();
                distinct.push(json!({ "value": vals[i], "multiplicity": run }));
                i += run;
            }
            let v = json!({
                "n": report.n,
                "edges": report.edges,
                "avg_degree": report.avg_degree,
                "sigma": report.sigma,
                "energy": report.energy,
                "spectrum": spec.values(),
                "rounded": rounded,
                "distinct": distinct,
            });
            let _ = writeln!(out, "{v:#}");
        }
        Format::Csv => out = spec.to_csv(),
        Format::Dot => return Err(CliError::Format("dot")),
    }
    Ok(out)
}

pub fn jt(file: &Path, alpha: &str, root: usize, table: bool, format: Format) -> Result<String, CliError> {
    let mut out = String::new();
    let g = read_graph(file)?;
    let alpha = exact_rational(alpha)?;
    let t = RootedTree::new(g, root).map_err(input_err)?;
    let r = jt_locate(&t, &alpha);
    match format {
        Format::Text => {
            let _ = writeln!(out, "alpha {alpha}");
            let _ = writeln!(out, "above {}", r.above);
            let _ = writeln!(out, "equal {}", r.equal);
            let _ = writeln!(out, "below {}", r.below);
            if table {
                let _ = writeln!(out, "vertex value");
                for (i, v) in r.final_values.iter().enumerate() {
                    let _ = writeln!(out, "{} {v}", i + 1);
                }
            }
        }
        Format::Json => {
            let _ = writeln!(out, "{:#}", r.to_json(&alpha, table));
        }
        Format::Csv => {
            let _ = writeln!(out, "vertex,value");
            for (i, v) in r.final_values.iter().enumerate() {
                let _ = writeln!(out, "{},{v}", i + 1);
            }
        }
        Format::Dot => return Err(CliError::Format("dot")),
    }
    Ok(out)
}

fn budget(b: BudgetArg) -> Budget {
    match b {
        BudgetArg::Small => Budget::Small,
        BudgetArg::Full => Budget::Full,
    }
}

/// Checks on one starlike tree, over `k` or every admissible block length.
fn starlike_checks<F>(args: &VerifyArgs, claim: &str, check: F) -> Result<CheckReport, CliError>
where
    F: Fn(&StarlikeSpec, usize) -> Result<CheckReport, verify::VerifyError>,
{
    let branches = usize_list(args.branches.as_deref().unwrap_or_default())?;
    let spec = StarlikeSpec::new(branches).map_err(input_err)?;
    let ks = match args.k {
        Some(k) => vec![k],
        None => spec.admissible_ks(),
    };
    let mut reports = Vec::with_capacity(ks.len());
    for k in ks {
        reports.push(check(&spec, k).map_err(input_err)?);
    }
    Ok(if reports.len() == 1 {
        reports.pop().expect("one report")
    } else {
        CheckReport::batch(claim, verify::IDENTITY_TOL, None, reports)
    })
}

fn claim_id(c: Claim) -> &'static str {
    match c {
        Claim::SpectralReplacement => "spectral-replacement",
        Claim::ClosedFormReplacement => "closed-form-replacement",
        Claim::EnergyEquality => "energy-equality",
        Claim::Sigma => "sigma",
        Claim::Family => "family",
        Claim::Trig => "trig",
        Claim::TreeCountOracle => "tree-count-oracle",
        Claim::TridiagonalClosedForm => "tridiagonal-closed-form",
        Claim::StructuralInvariants => "structural-invariants",
        Claim::SigmaBeyondBound => "sigma-beyond-bound",
        Claim::All => "all",
    }
}

fn run_checks(args: &VerifyArgs) -> Result<Vec<CheckReport>, CliError> {
    let b = budget(args.budget);
    let single = args.branches.is_some();
    let report = match args.claim {
        Claim::All => return Ok(verify::run_all(args.seed, b)),
        Claim::ClosedFormReplacement if single => starlike_checks(args, "closed-form-replacement", |s, k| {
            verify::check_closed_form_starlike(&build_starlike(s), k)
        })?,
        Claim::EnergyEquality if single => starlike_checks(args, "energy-equality", verify::check_energy_equality)?,
        Claim::Sigma if single => starlike_checks(args, "sigma", verify::check_sigma)?,
        Claim::Family if args.ell.is_some() => {
            let ell = args.ell.expect("checked");
            let gamma = args.gamma.unwrap_or(1);
            let placement = placement_policy(args.placement.unwrap_or(PlacementArg::Even), gamma, None)?;
            verify::check_family(ell, gamma, &placement).map_err(input_err)?
        }
        Claim::Trig => verify::check_trig_identity(args.kmax),
        other => verify::run_claim(claim_id(other), args.seed, b).expect("every claim has a default run"),
    };
    Ok(vec![report])
}

fn render_text(reports: &[CheckReport]) -> String {
    let mut s = verify::summary_table(reports);
    for r in reports {
        s.push_str(&format!("\n{}: {}\n", r.claim, if r.passed() { "PASS" } else { "FAIL" }));
        for res in &r.residuals {
            s.push_str(&format!("  {} = {:.3e} (tol {:.0e})\n", res.name, res.value, res.tolerance));
        }
        for c in &r.conditions {
            s.push_str(&format!("  {}: {}\n", c.name, c.holds));
        }
        if let Some(le) = r.evidence["energies"].get(0).and_then(|v| v.as_f64()) {
            s.push_str(&format!("  LE = {le:.5}\n"));
        }
        if let Some(e) = r.evidence["error"].as_str() {
            s.push_str(&format!("  error: {e}\n"));
        }
    }
    s
}

/// Runs the requested claim; `Ok(false)` means a check failed.
pub fn verify(args: &VerifyArgs, format: Format, tol: Option<f64>) -> Result<(String, bool), CliError> {
    let mut out = String::new();
    let mut reports = run_checks(args)?;
    if let Some(t) = tol {
        reports = reports.into_iter().map(|r| r.with_tolerance(t)).collect();
    }
    let json = format!("{:#}\n", json!(reports));
    if let Some(path) = &args.report {
        write_file(path, &json)?;
    }
    match format {
        Format::Text => out = render_text(&reports),
        Format::Json => out = json,
        Format::Csv => {
            let _ = writeln!(out, "claim,status,instances,max_residual");
            for r in &reports {
                let status = if r.passed() { "pass" } else { "fail" };
                let _ = writeln!(out, "{},{status},{},{:e}", r.claim, r.instances, r.max_residual());
            }
        }
        Format::Dot => return Err(CliError::Format("dot")),
    }
    let observational = args.claim == Claim::SigmaBeyondBound;
    Ok((out, observational || reports.iter().all(CheckReport::passed)))
}
