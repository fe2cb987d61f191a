//! Subcommand implementations. Each one resolves the configuration, runs
//! the computation, and only then writes its output files.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use chrono::Utc;
use serde_json::{json, Map, Value};

use qcosmo::ansatz;
use qcosmo::eigensolver::eigh;
use qcosmo::models::{self, BuiltModel, ModelKind, ModelSpec};
use qcosmo::pauli::PauliSum;
use qcosmo::vqe::{run_vqe, wheeler_dewitt_report, ReportRecord};

use crate::config::RunConfig;
use crate::CliError;

/// Common JSON header: tool version, timestamp, master seed, and the fully
/// resolved configuration the run actually used.
fn envelope(config: &RunConfig) -> Result<Map<String, Value>, CliError> {
    let mut map = Map::new();
    map.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    map.insert("generated_at".into(), json!(Utc::now().to_rfc3339()));
    map.insert("seed".into(), json!(config.seed));
    map.insert("config".into(), serde_json::to_value(config)?);
    Ok(map)
}

fn write_json(path: &Path, doc: &Map<String, Value>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    fs::write(path, text)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn prepare_out_dir(config: &RunConfig) -> Result<PathBuf, CliError> {
    let out = config.resolved_out_dir();
    fs::create_dir_all(&out)?;
    Ok(out)
}

fn decomposition_table(built: &BuiltModel) -> String {
    let c = &built.conventions;
    let mut text = String::new();
    text.push_str(&format!("model: {}\n", c.model));
    text.push_str(&format!("basis: {}\n", c.basis));
    text.push_str(&format!("qubits: {}\n", c.qubits));
    text.push_str(&format!("points per dim: {}\n", c.points_per_dim));
    text.push_str(&format!("spacing: {}\n", c.spacing));
    text.push_str(&format!("offset: {}\n", c.offset));
    text.push_str("\nterm        coefficient\n");
    for term in built.hamiltonian.terms() {
        text.push_str(&format!(
            "{:<12}{:+.12e}\n",
            term.paulis.to_string(),
            term.coeff
        ));
    }
    text.push_str(&format!("\nterms: {}\n", built.hamiltonian.len()));
    text.push_str(&format!("weight: {}\n", built.hamiltonian.weight()));
    text
}

pub fn cmd_decompose(config: &RunConfig) -> Result<(), CliError> {
    let start = Instant::now();
    let spec = config.model_spec()?;
    let built = models::build(&spec)?;
    let out = prepare_out_dir(config)?;

    let mut doc = envelope(config)?;
    doc.insert(
        "conventions".into(),
        serde_json::to_value(&built.conventions)?,
    );
    doc.insert("num_qubits".into(), json!(built.hamiltonian.num_qubits()));
    doc.insert("terms".into(), serde_json::to_value(&built.hamiltonian)?);
    doc.insert("weight".into(), json!(built.hamiltonian.weight()));
    doc.insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));

    let base = spec.kind.name();
    write_json(&out.join(format!("{base}_decomposition.json")), &doc)?;
    let table = decomposition_table(&built);
    write_text(&out.join(format!("{base}_decomposition.txt")), &table)?;
    print!("{table}");
    Ok(())
}

pub fn cmd_exact(config: &RunConfig) -> Result<(), CliError> {
    let start = Instant::now();
    let spec = config.model_spec()?;
    let built = models::build(&spec)?;
    let eig = eigh(&built.matrix)?;
    let nearest_zero_index = eig.nearest_zero_index();
    let exact_min = eig.eigenvalues[0];
    let exact_nearest_zero = eig.eigenvalues[nearest_zero_index];
    let out = prepare_out_dir(config)?;

    let mut doc = envelope(config)?;
    doc.insert(
        "conventions".into(),
        serde_json::to_value(&built.conventions)?,
    );
    doc.insert("pauli_terms".into(), json!(built.hamiltonian.len()));
    doc.insert(
        "eigenvalues".into(),
        serde_json::to_value(&eig.eigenvalues)?,
    );
    doc.insert("exact_min".into(), json!(exact_min));
    doc.insert("exact_nearest_zero".into(), json!(exact_nearest_zero));
    doc.insert("nearest_zero_index".into(), json!(nearest_zero_index));
    doc.insert("zero_threshold".into(), json!(config.zero_threshold));
    doc.insert(
        "constraint_compatible".into(),
        json!(exact_nearest_zero.abs() < config.zero_threshold),
    );
    doc.insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));

    let base = spec.kind.name();
    write_json(&out.join(format!("{base}_spectrum.json")), &doc)?;
    println!("model: {base}");
    println!("exact min: {exact_min}");
    println!("nearest zero: {exact_nearest_zero}");
    Ok(())
}

fn load_hamiltonian(path: &Path) -> Result<PauliSum, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("invalid JSON {}: {e}", path.display())))?;
    let terms = match &value {
        Value::Array(_) => value,
        Value::Object(map) => map.get("terms").cloned().ok_or_else(|| {
            CliError::Config(format!(
                "{} has no 'terms' key; expected a term array or a decompose output",
                path.display()
            ))
        })?,
        _ => {
            return Err(CliError::Config(format!(
                "{} holds neither a term array nor an object",
                path.display()
            )))
        }
    };
    serde_json::from_value(terms)
        .map_err(|e| CliError::Config(format!("invalid Pauli terms in {}: {e}", path.display())))
}

pub fn cmd_vqe(config: &RunConfig, hamiltonian_file: Option<&Path>) -> Result<(), CliError> {
    let start = Instant::now();
    let (hamiltonian, conventions, base) = match hamiltonian_file {
        Some(path) => {
            let sum = load_hamiltonian(path)?;
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "hamiltonian".to_string());
            (sum, None, stem)
        }
        None => {
            let spec = config.model_spec()?;
            let built = models::build(&spec)?;
            (
                built.hamiltonian,
                Some(built.conventions),
                spec.kind.name().to_string(),
            )
        }
    };
    let ansatz_spec = config.ansatz_spec(hamiltonian.num_qubits())?;
    let optimizer = config.spsa_config()?;
    let result = run_vqe(
        &hamiltonian,
        &ansatz_spec,
        &optimizer,
        config.trials,
        config.seed,
    )?;
    let out = prepare_out_dir(config)?;

    let mut csv = String::from("trial,iteration,energy\n");
    for trial in &result.trials {
        for point in &trial.trace {
            csv.push_str(&format!(
                "{},{},{}\n",
                trial.trial, point.iteration, point.energy
            ));
        }
    }
    write_text(&out.join(format!("{base}_trace.csv")), &csv)?;

    let circuit = ansatz::build(&ansatz_spec)?.bind(&result.best_theta)?;
    write_text(
        &out.join(format!("{base}_best_circuit.qasm")),
        &circuit.to_qasm(),
    )?;

    let mut slim = result.clone();
    for trial in &mut slim.trials {
        trial.trace.clear();
    }
    let mut doc = envelope(config)?;
    if let Some(conventions) = &conventions {
        doc.insert("conventions".into(), serde_json::to_value(conventions)?);
    }
    doc.insert("result".into(), serde_json::to_value(&slim)?);
    doc.insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));
    write_json(&out.join(format!("{base}_vqe.json")), &doc)?;

    println!("best energy: {}", result.best_energy);
    println!(
        "mean energy: {} +/- {}",
        result.energy_mean, result.energy_std
    );
    println!("exact min:   {}", result.exact_min);
    Ok(())
}

fn report_row(record: &ReportRecord) -> Result<Value, CliError> {
    let mut row = serde_json::to_value(record)?;
    if let Some(published) = &record.published {
        let map = row.as_object_mut().expect("record serializes as object");
        map.insert(
            "relative_exact_difference".into(),
            json!(
                (record.exact_nearest_zero - published.exact_eigenvalue)
                    / published.exact_eigenvalue.abs()
            ),
        );
        map.insert(
            "relative_vqe_difference".into(),
            json!((record.vqe_mean - published.vqe_energy) / published.vqe_energy.abs()),
        );
    }
    Ok(row)
}

fn report_markdown(rows: &[ReportRecord], config: &RunConfig) -> String {
    let mut md = String::from("# Wheeler-DeWitt model comparison\n\n");
    if let Some(first) = rows.first() {
        let c = &first.conventions;
        md.push_str(&format!(
            "Conventions: {} points per dimension ({} qubits per model), spacing {}, \
             offset {}, basis {}, epsilon {}.\n",
            c.points_per_dim, c.qubits, c.spacing, c.offset, c.basis, c.epsilon
        ));
    }
    md.push_str(&format!(
        "Solver: depth-{} {} ansatz, {} SPSA iterations, {} trials, master seed {}.\n",
        config.depth, config.entanglement, config.iterations, config.trials, config.seed
    ));
    md.push_str(&format!(
        "The constraint column marks spectra with an eigenvalue within {} of zero.\n\n",
        config.zero_threshold
    ));
    md.push_str(
        "| model | terms | exact min | exact nearest zero | published exact \
         | VQE best | VQE mean | VQE std | published VQE | published VQE std | constraint |\n",
    );
    md.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
    for row in rows {
        let (pub_exact, pub_vqe, pub_std) = match &row.published {
            Some(p) => (
                p.exact_eigenvalue.to_string(),
                p.vqe_energy.to_string(),
                p.vqe_std.to_string(),
            ),
            None => ("-".to_string(), "-".to_string(), "-".to_string()),
        };
        md.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            row.model,
            row.pauli_terms,
            row.exact_min,
            row.exact_nearest_zero,
            pub_exact,
            row.vqe_best,
            row.vqe_mean,
            row.vqe_std,
            pub_vqe,
            pub_std,
            if row.constraint_compatible {
                "yes"
            } else {
                "no"
            },
        ));
    }
    md
}

fn published_base_spec(kind: ModelKind) -> ModelSpec {
    models::published_instance(kind).unwrap_or_else(|_| ModelSpec::new(kind))
}

pub fn cmd_paper(config: &RunConfig, sweep: Option<(&str, &str)>) -> Result<(), CliError> {
    if let Some((param, range)) = sweep {
        return cmd_sweep(config, param, range);
    }
    let optimizer = config.spsa_config()?;
    let mut rows = Vec::new();
    for kind in ModelKind::PUBLISHED {
        let mut spec = models::published_instance(kind)?;
        config.apply_conventions(&mut spec)?;
        let ansatz_spec = config.ansatz_spec(spec.total_qubits())?;
        println!("solving {kind}...");
        let record = wheeler_dewitt_report(
            &spec,
            &ansatz_spec,
            &optimizer,
            config.trials,
            config.seed,
            config.zero_threshold,
        )?;
        rows.push(record);
    }
    let out = prepare_out_dir(config)?;

    let mut doc = envelope(config)?;
    let row_values: Vec<Value> = rows.iter().map(report_row).collect::<Result<Vec<_>, _>>()?;
    doc.insert("models".into(), Value::Array(row_values));
    write_json(&out.join("paper_report.json"), &doc)?;

    let md = report_markdown(&rows, config);
    write_text(&out.join("paper_report.md"), &md)?;
    print!("{md}");
    Ok(())
}

fn parse_range(range: &str) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!(
            "range '{range}' must have the form start:end:step"
        )));
    }
    let mut values = [0.0f64; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| CliError::Config(format!("range '{range}' has a non-numeric field")))?;
    }
    let [start, end, step] = values;
    if !start.is_finite() || !end.is_finite() || !step.is_finite() || step <= 0.0 || end < start {
        return Err(CliError::Config(format!(
            "range '{range}' needs start <= end and step > 0"
        )));
    }
    Ok((start, end, step))
}

fn set_sweep_param(spec: &mut ModelSpec, param: &str, value: f64) -> Result<(), CliError> {
    match param {
        "lambda" => spec.params.lambda = Some(value),
        "gamma" => spec.params.gamma = Some(value),
        "beta_tilde" => spec.params.beta_tilde = Some(value),
        "curvature" => spec.params.curvature = Some(value),
        "lapse" => spec.params.lapse = value,
        "epsilon" => spec.params.epsilon = value,
        "spacing" => spec.spacing = Some(value),
        "offset" => spec.offset = value,
        other => {
            return Err(CliError::Config(format!(
                "cannot sweep '{other}'; valid parameters: lambda, gamma, beta_tilde, \
                 curvature, lapse, epsilon, spacing, offset"
            )))
        }
    }
    Ok(())
}

fn cmd_sweep(config: &RunConfig, param: &str, range: &str) -> Result<(), CliError> {
    let start = Instant::now();
    let (lo, hi, step) = parse_range(range)?;
    let kind = config.model_kind()?;
    let mut base = published_base_spec(kind);
    config.apply_conventions(&mut base)?;
    config.apply_params(&mut base);
    set_sweep_param(&mut base, param, lo)?;

    let steps = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut rows = Vec::with_capacity(steps + 1);
    let mut best: Option<(f64, f64)> = None;
    for k in 0..=steps {
        let value = lo + step * k as f64;
        let mut spec = base.clone();
        set_sweep_param(&mut spec, param, value)?;
        let built = models::build(&spec)?;
        let eig = eigh(&built.matrix)?;
        let exact_min = eig.eigenvalues[0];
        let exact_nearest_zero = eig.eigenvalues[eig.nearest_zero_index()];
        if best.is_none_or(|(_, nz)| exact_nearest_zero.abs() < nz.abs()) {
            best = Some((value, exact_nearest_zero));
        }
        rows.push(json!({
            "value": value,
            "exact_min": exact_min,
            "exact_nearest_zero": exact_nearest_zero,
        }));
    }
    let out = prepare_out_dir(config)?;

    let mut doc = envelope(config)?;
    doc.insert("model".into(), json!(kind.name()));
    doc.insert("parameter".into(), json!(param));
    doc.insert("start".into(), json!(lo));
    doc.insert("end".into(), json!(hi));
    doc.insert("step".into(), json!(step));
    doc.insert("rows".into(), Value::Array(rows.clone()));
    doc.insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));
    write_json(
        &out.join(format!("sweep_{param}_{}.json", kind.name())),
        &doc,
    )?;

    let mut md = format!("# {} sweep over {param}\n\n", kind.name());
    md.push_str(&format!("Range {lo} to {hi} in steps of {step}.\n\n"));
    md.push_str(&format!("| {param} | exact min | exact nearest zero |\n"));
    md.push_str("|---|---|---|\n");
    for row in &rows {
        md.push_str(&format!(
            "| {} | {} | {} |\n",
            row["value"], row["exact_min"], row["exact_nearest_zero"]
        ));
    }
    if let Some((value, nearest_zero)) = best {
        md.push_str(&format!(
            "\nClosest constraint solution: {param} = {value} with eigenvalue {nearest_zero}.\n"
        ));
    }
    write_text(&out.join(format!("sweep_{param}_{}.md", kind.name())), &md)?;
    if let Some((value, nearest_zero)) = best {
        println!("closest to zero: {param} = {value} (eigenvalue {nearest_zero})");
    }
    Ok(())
}
