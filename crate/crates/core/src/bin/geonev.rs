use clap::{Args, Parser, Subcommand};
use geonev::connection::{
    chart_restrict, check_euler_property, check_homogeneity_degree, polar_degree,
    solve_christoffel, verify_geodesic_identity,
};
use geonev::curve::{classical_wronskian, connection_wronskian, covariant_frame};
use geonev::error::GeonevError;
use geonev::nevanlinna::{
    cartan_characteristic, counting_from_zeros, proximity, pullback_zeros, GrowthIndex,
    QuadratureSettings,
};
use geonev::scenario::{
    content_digest, csv_table, report_json, sig12, write_report, BasisDocument, CurveDocument,
    ScenarioDocument,
};
use geonev::theorems::{
    sharing_bound_check, ratio_groups, smt_verify, uniqueness_harness, uniqueness_thresholds, SmtConfig,
};
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "geonev", version, about = "connections, Wronskians, and value-distribution checks on projective space")]
struct Cli {
    #[command(flatten)]
    globals: Globals,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Globals {
    /// output directory for report files
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// which report files to write
    #[arg(long, global = true, default_value = "both", value_parser = ["json", "csv", "both"])]
    format: String,
    /// error-term epsilon (overrides the scenario value)
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// adaptive quadrature tolerance
    #[arg(long = "quad-tol", global = true)]
    quad_tol: Option<f64>,
    /// seed for sampling-based checks
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

impl Globals {
    fn quad(&self) -> QuadratureSettings {
        let mut q = QuadratureSettings::default();
        if let Some(tol) = self.quad_tol {
            q.tol = tol;
        }
        q
    }

    fn want_json(&self) -> bool {
        self.format != "csv"
    }

    fn want_csv(&self) -> bool {
        self.format != "json"
    }
}

#[derive(Subcommand)]
enum Command {
    /// build or check a meromorphic connection from a basis document
    Connection {
        #[command(subcommand)]
        action: ConnectionAction,
    },
    /// curve-level computations
    Curve {
        #[command(subcommand)]
        action: CurveAction,
    },
    /// value-distribution functionals over a radius grid
    Nevanlinna {
        #[command(subcommand)]
        action: NevanlinnaAction,
    },
    /// second main theorem verification
    Smt {
        #[command(subcommand)]
        action: SmtAction,
    },
    /// uniqueness-theorem pipeline on a two-curve scenario
    Uniqueness {
        #[command(subcommand)]
        action: UniquenessAction,
    },
    /// print the uniqueness-threshold table
    Thresholds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0.0)]
        c: f64,
    },
}

#[derive(Subcommand)]
enum ConnectionAction {
    /// solve for the Christoffel entries and write the full report
    Build {
        #[arg(long)]
        basis: PathBuf,
    },
    /// run the connection checks without dumping entries
    Check {
        #[arg(long)]
        basis: PathBuf,
    },
}

#[derive(Subcommand)]
enum CurveAction {
    /// connection Wronskian of a polynomial curve
    Wronskian {
        #[arg(long)]
        curve: PathBuf,
        /// basis document; defaults to the flat (coordinate) basis
        #[arg(long)]
        basis: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum NevanlinnaAction {
    /// per-radius T, m, N, N_k and first-main-theorem residuals
    Eval {
        #[arg(long)]
        scenario: PathBuf,
    },
}

#[derive(Subcommand)]
enum SmtAction {
    /// verify the second main theorem inequality over the grid
    Verify {
        #[arg(long)]
        scenario: PathBuf,
    },
}

#[derive(Subcommand)]
enum UniquenessAction {
    /// run the full sharing/uniqueness harness
    Run {
        #[arg(long)]
        scenario: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(all_pass) => {
            if all_pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, GeonevError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| GeonevError::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&raw)
        .map_err(|e| GeonevError::InvalidInput(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<bool, GeonevError> {
    let g = &cli.globals;
    match &cli.command {
        Command::Connection { action } => match action {
            ConnectionAction::Build { basis } => cmd_connection(g, basis, true),
            ConnectionAction::Check { basis } => cmd_connection(g, basis, false),
        },
        Command::Curve { action } => match action {
            CurveAction::Wronskian { curve, basis } => cmd_wronskian(g, curve, basis.as_deref()),
        },
        Command::Nevanlinna { action } => match action {
            NevanlinnaAction::Eval { scenario } => cmd_nevanlinna(g, scenario),
        },
        Command::Smt { action } => match action {
            SmtAction::Verify { scenario } => cmd_smt(g, scenario),
        },
        Command::Uniqueness { action } => match action {
            UniquenessAction::Run { scenario } => cmd_uniqueness(g, scenario),
        },
        Command::Thresholds { k, d, c } => cmd_thresholds(g, *k, *d, *c),
    }
}

fn cmd_connection(g: &Globals, basis_path: &Path, dump_entries: bool) -> Result<bool, GeonevError> {
    let doc: BasisDocument = read_json(basis_path)?;
    let digest = content_digest(&serde_json::to_value(&doc).unwrap());
    let basis = doc.build()?;
    let tensor = solve_christoffel(&basis);
    let homogeneity = check_homogeneity_degree(&tensor);
    let euler = check_euler_property(&tensor, 100, g.seed)?;
    let mut geodesic_ok = true;
    for s in basis.sections() {
        geodesic_ok &= verify_geodesic_identity(&tensor, s)?.holds;
    }
    let polar = polar_degree(&tensor);
    let n = basis.k + 1;
    let mut body = json!({
        "k": basis.k,
        "d": basis.d,
        "delta": format!("{}", basis.delta()),
        "deltaDegree": polar.degree,
        "deltaDegreeBound": polar.bound,
        "flat": tensor.is_flat(),
        "checks": {
            "homogeneity": homogeneity,
            "euler": { "holds": euler.holds, "worstResidual": euler.worst_residual,
                       "pointsUsed": euler.points_used },
            "geodesicIdentity": geodesic_ok,
        },
    });
    if dump_entries {
        let mut entries = Vec::new();
        for lambda in 0..n {
            for i in 0..n {
                for j in i..n {
                    let e = tensor.entry(lambda, i, j);
                    if !e.is_zero() {
                        entries.push(json!({
                            "lambda": lambda, "i": i, "j": j,
                            "gamma": format!("{e}"),
                        }));
                    }
                }
            }
        }
        body["entries"] = serde_json::Value::Array(entries);
    }
    let pass = homogeneity && euler.holds && geodesic_ok;
    body["verdict"] = json!(pass);
    let name = if dump_entries {
        "connection.json"
    } else {
        "connection_check.json"
    };
    if g.want_json() {
        write_report(&g.out, name, &report_json(&digest, body, &[]))?;
    }
    println!("connection checks: {}", verdict_word(pass));
    Ok(pass)
}

fn cmd_wronskian(
    g: &Globals,
    curve_path: &Path,
    basis_path: Option<&Path>,
) -> Result<bool, GeonevError> {
    let doc: CurveDocument = read_json(curve_path)?;
    let digest = content_digest(&serde_json::to_value(&doc).unwrap());
    let curve = doc.build()?.reduce();
    let k = curve.k();
    let (conn, flat) = match basis_path {
        Some(p) => {
            let bdoc: BasisDocument = read_json(p)?;
            let basis = bdoc.build()?;
            if basis.k != k {
                return Err(GeonevError::InvalidInput(format!(
                    "basis dimension {} does not match curve dimension {k}",
                    basis.k
                )));
            }
            let tensor = solve_christoffel(&basis);
            (chart_restrict(&tensor, curve.default_chart()), tensor.is_flat())
        }
        None => (
            geonev::connection::ChartConnection::flat(k, curve.default_chart()),
            true,
        ),
    };
    let frame = covariant_frame(&curve, &conn)?;
    let w = connection_wronskian(&curve, &conn)?;
    let mut body = json!({
        "chart": frame.chart,
        "frame": frame
            .vectors
            .iter()
            .map(|v| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "wronskian": format!("{}", w.value),
        "identicallyZero": w.identically_zero,
    });
    if flat {
        let affine = curve.affine_coordinates(curve.default_chart())?;
        body["classicalWronskian"] = json!(format!("{}", classical_wronskian(&affine)));
    }
    if g.want_json() {
        write_report(&g.out, "wronskian.json", &report_json(&digest, body, &[]))?;
    }
    println!(
        "wronskian: {}",
        if w.identically_zero {
            "identically zero (degenerate curve)"
        } else {
            "nonzero"
        }
    );
    Ok(true)
}

fn cmd_nevanlinna(g: &Globals, scenario_path: &Path) -> Result<bool, GeonevError> {
    let doc = ScenarioDocument::from_path(scenario_path)?;
    let digest = doc.digest();
    let basis = doc.basis.build()?;
    if doc.curves.len() != 1 {
        return Err(GeonevError::InvalidInput(
            "nevanlinna eval expects exactly one curve".into(),
        ));
    }
    let curve = doc.curves[0].build()?.reduce();
    let sigmas: Vec<_> = doc
        .sigmas
        .iter()
        .map(|s| s.build(&basis))
        .collect::<Result<_, _>>()?;
    let quad = g.quad();
    let mut zeros = Vec::new();
    let mut moduli = Vec::new();
    for sigma in &sigmas {
        let pull = curve.pullback(sigma);
        if pull.is_zero() {
            return Err(GeonevError::ZeroPullback);
        }
        let z = pullback_zeros(&pull)?;
        moduli.extend(z.moduli.iter().map(|&(m, _)| m));
        zeros.push(z);
    }
    let grid = doc.grid.build()?.screened_against(&moduli);
    let anchor = grid.anchor();
    let k = basis.k;
    let d = basis.d as f64;
    let mut header: Vec<String> = vec!["r".into(), "T_f".into()];
    for tag in ["m", "N", "Nk", "residual"] {
        for j in 0..sigmas.len() {
            header.push(format!("{tag}_{j}"));
        }
    }
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let mut rows = Vec::new();
    for &r in &grid.radii {
        let t = cartan_characteristic(&curve, r, anchor, &quad)?;
        let mut row = vec![sig12(r), sig12(t)];
        let mut ms = Vec::new();
        let mut ns = Vec::new();
        let mut nks = Vec::new();
        for (sigma, z) in sigmas.iter().zip(&zeros) {
            ms.push(proximity(&curve, sigma, r, &quad)?);
            ns.push(counting_from_zeros(z, r, None));
            nks.push(counting_from_zeros(z, r, Some(k)));
        }
        row.extend(ms.iter().map(|&x| sig12(x)));
        row.extend(ns.iter().map(|&x| sig12(x)));
        row.extend(nks.iter().map(|&x| sig12(x)));
        for (m, n) in ms.iter().zip(&ns) {
            row.push(sig12(d * t - m - n));
        }
        rows.push(row);
    }
    if g.want_csv() {
        write_report(&g.out, "nevanlinna.csv", &csv_table(&header_refs, &rows))?;
    }
    if g.want_json() {
        let body = json!({
            "anchor": anchor,
            "quadTol": quad.tol,
            "radii": grid.radii,
            "sigmaCount": sigmas.len(),
        });
        write_report(&g.out, "nevanlinna.json", &report_json(&digest, body, &[]))?;
    }
    println!("nevanlinna eval: {} radii, {} sections", grid.radii.len(), sigmas.len());
    Ok(true)
}

fn cmd_smt(g: &Globals, scenario_path: &Path) -> Result<bool, GeonevError> {
    let doc = ScenarioDocument::from_path(scenario_path)?;
    let digest = doc.digest();
    let basis = doc.basis.build()?;
    if doc.curves.is_empty() {
        return Err(GeonevError::InvalidInput("scenario has no curve".into()));
    }
    let curve = doc.curves[0].build()?;
    let sigmas: Vec<_> = doc
        .sigmas
        .iter()
        .map(|s| s.build(&basis))
        .collect::<Result<_, _>>()?;
    let growth = match doc.growth_index {
        None => GrowthIndex::ZeroByTheorem,
        Some(c) => GrowthIndex::UserSupplied(c),
    };
    let config = SmtConfig {
        basis,
        sigmas,
        curve,
        grid: doc.grid.build()?,
        epsilon: g.epsilon.unwrap_or(doc.epsilon),
        growth,
        quad: g.quad(),
        log_constant: 0.0,
    };
    let report = smt_verify(&config)?;
    let note = if report.coefficient_value <= 0.0 {
        vec!["coefficient nonpositive; inequality trivially satisfied".to_string()]
    } else {
        Vec::new()
    };
    let mut warnings = report.warnings.clone();
    warnings.extend(note);
    if g.want_csv() {
        let rows: Vec<Vec<String>> = report
            .rows
            .iter()
            .map(|row| {
                vec![
                    sig12(row.r),
                    sig12(row.t),
                    sig12(row.lhs),
                    sig12(row.rhs),
                    sig12(row.margin),
                ]
            })
            .collect();
        write_report(
            &g.out,
            "smt.csv",
            &csv_table(&["r", "T_f", "lhs", "rhs", "margin"], &rows),
        )?;
    }
    let pass = report.verdict;
    if g.want_json() {
        let mut body = serde_json::to_value(&report).unwrap();
        // the wrapper carries the warnings, including CLI-level notes
        body.as_object_mut().unwrap().remove("warnings");
        write_report(&g.out, "smt.json", &report_json(&digest, body, &warnings))?;
    }
    println!("smt verify: {}", verdict_word(pass));
    Ok(pass)
}

fn cmd_uniqueness(g: &Globals, scenario_path: &Path) -> Result<bool, GeonevError> {
    let doc = ScenarioDocument::from_path(scenario_path)?;
    let digest = doc.digest();
    let basis = doc.basis.build()?;
    if doc.curves.len() != 2 {
        return Err(GeonevError::InvalidInput(
            "uniqueness run expects exactly two curves".into(),
        ));
    }
    let f = doc.curves[0].build()?;
    let fg = doc.curves[1].build()?;
    if f.reduce().projectively_equal(&fg.reduce()) {
        return Err(GeonevError::CurvesIdentical);
    }
    let sigmas: Vec<_> = doc
        .sigmas
        .iter()
        .map(|s| s.build(&basis))
        .collect::<Result<_, _>>()?;
    let grid = doc.grid.build()?;
    let quad = g.quad();
    let c = doc.growth_index.unwrap_or(0.0);
    let epsilon = g.epsilon.unwrap_or(doc.epsilon);
    let report = uniqueness_harness(&f, &fg, &basis, &sigmas, &grid, c, epsilon, &quad)?;
    let sharing = sharing_bound_check(&f, &fg, &sigmas, &grid, &quad)?;
    let groups = ratio_groups(&f, &fg, &sigmas, basis.k)?;
    if g.want_csv() {
        let rows: Vec<Vec<String>> = sharing
            .rows
            .iter()
            .map(|row| {
                vec![
                    sig12(row.r),
                    sig12(row.t_f),
                    sig12(row.t_g),
                    sig12(row.n_s),
                    sig12(row.margin),
                ]
            })
            .collect();
        write_report(
            &g.out,
            "uniqueness.csv",
            &csv_table(&["r", "T_f", "T_g", "N_S", "margin"], &rows),
        )?;
    }
    let pass = sharing.verdict
        && report.smt_f_verdict
        && report.smt_g_verdict
        && report.domination_holds;
    if g.want_json() {
        let body = json!({
            "harness": serde_json::to_value(&report).unwrap(),
            "ratioGroups": {
                "classes": groups.classes,
                "pairing": groups.pairing,
                "allClassesSmall": groups.all_classes_small,
                "auxiliariesNonzero": groups.auxiliaries_nonzero,
            },
            "verdict": pass,
        });
        write_report(&g.out, "uniqueness.json", &report_json(&digest, body, &[]))?;
    }
    println!("uniqueness run: {} ({})", verdict_word(pass), report.verdict);
    Ok(pass)
}

fn cmd_thresholds(g: &Globals, k: usize, d: usize, c: f64) -> Result<bool, GeonevError> {
    if k < 1 || d < 1 || c < 0.0 {
        return Err(GeonevError::InvalidInput(
            "thresholds requires k >= 1, d >= 1, c >= 0".into(),
        ));
    }
    let table = uniqueness_thresholds(k, d, c);
    println!("{:<28} {:>16} {:>12} {:>8}", "bound", "exact", "value", "min q");
    for row in &table.rows {
        println!(
            "{:<28} {:>16} {:>12.4} {:>8}",
            row.name,
            row.exact.as_deref().unwrap_or("-"),
            row.value,
            row.min_q.map_or("-".into(), |q| q.to_string()),
        );
    }
    let digest = content_digest(&json!({"k": k, "d": d, "c": c}));
    if g.want_json() {
        let body = serde_json::to_value(&table).unwrap();
        write_report(&g.out, "thresholds.json", &report_json(&digest, body, &[]))?;
    }
    if g.want_csv() {
        let rows: Vec<Vec<String>> = table
            .rows
            .iter()
            .map(|row| {
                vec![
                    row.name.clone(),
                    row.exact.clone().unwrap_or_default(),
                    sig12(row.value),
                    row.min_q.map_or(String::new(), |q| q.to_string()),
                ]
            })
            .collect();
        write_report(
            &g.out,
            "thresholds.csv",
            &csv_table(&["bound", "exact", "value", "min_q"], &rows),
        )?;
    }
    Ok(true)
}

fn verdict_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}
