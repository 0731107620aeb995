//! Command execution: parse inputs, call the estimators, and assemble the
//! output document.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};
use thiserror::Error;

use orcdf::{
    build_grid, count_at, density_at, estimate_cdf_grid_capped, fit as fit_regression,
    fit_example1, fit_example2, likelihood_oracle, multinomial_normalized_estimate,
    null_log_likelihood, predict, select_bandwidth_detailed, table_probability, Bandwidth,
    BandwidthSearchSpec, DiscreteCensoredCounts, ExampleKind, Kernel, ObservationProbabilities,
    Sample, Table2x2, TableEstimates, WeightTable,
};

use crate::args::{
    BandwidthArgs, CdfArgs, Command, ContingencyArgs, KdeArgs, KernelId, MultinomialArgs,
    OutputFormat, RegressArgs,
};
use crate::csvio::{self, parse_interval_csv};

/// CLI failure carrying its process exit code: 2 for input problems,
/// 3 for numerical failures.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

fn classify(err: orcdf::Error) -> CliError {
    use orcdf::Error::*;
    match err {
        QuadratureNonConvergence | ZeroDenominator | DegenerateNormalizer => {
            CliError::Numerical(err.to_string())
        }
        _ => CliError::Input(err.to_string()),
    }
}

impl From<crate::csvio::CsvError> for CliError {
    fn from(err: crate::csvio::CsvError) -> Self {
        CliError::Input(err.to_string())
    }
}

/// The result of one command, before serialization.
pub struct RunOutput {
    pub command: &'static str,
    pub inputs_digest: String,
    pub parameters: Value,
    pub results: Value,
    pub diagnostics: Value,
    /// CSV rendering, for commands with tabular results.
    pub csv: Option<String>,
}

impl RunOutput {
    /// Full JSON document, with the elapsed wall time attached.
    pub fn document(&self, timing_ms: u128) -> Value {
        json!({
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "parameters": self.parameters,
            "results": self.results,
            "diagnostics": self.diagnostics,
            "timing_ms": timing_ms,
        })
    }
}

/// Run a parsed command and write its output; returns the exit code.
pub fn execute(command: &Command) -> i32 {
    let started = std::time::Instant::now();
    match run_command(command) {
        Ok(output) => {
            let common = common_args(command);
            let rendered = match common.format {
                OutputFormat::Json => {
                    let doc = output.document(started.elapsed().as_millis());
                    let mut text = serde_json::to_string_pretty(&doc).expect("valid json");
                    text.push('\n');
                    text
                }
                OutputFormat::Csv => match &output.csv {
                    Some(csv) => csv.clone(),
                    None => {
                        eprintln!("error: this command has no CSV rendering; use --format json");
                        return 2;
                    }
                },
            };
            match &common.output {
                Some(path) => {
                    if let Err(err) = write_atomically(path, &rendered) {
                        eprintln!("error: {err}");
                        return 2;
                    }
                }
                None => print!("{rendered}"),
            }
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn common_args(command: &Command) -> &crate::args::CommonArgs {
    match command {
        Command::Cdf(a) => &a.common,
        Command::Kde(a) => &a.common,
        Command::Bandwidth(a) => &a.common,
        Command::Regress(a) => &a.common,
        Command::Multinomial(a) => &a.common,
        Command::Contingency(a) => &a.common,
    }
}

/// Temp-file-and-rename write so readers never observe partial output.
fn write_atomically(path: &Path, content: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)
}

/// Dispatch to the per-command runner.
pub fn run_command(command: &Command) -> Result<RunOutput, CliError> {
    match command {
        Command::Cdf(args) => run_cdf(args),
        Command::Kde(args) => run_kde(args),
        Command::Bandwidth(args) => run_bandwidth(args),
        Command::Regress(args) => run_regress(args),
        Command::Multinomial(args) => run_multinomial(args),
        Command::Contingency(args) => run_contingency(args),
    }
}

fn kernel_of(id: KernelId) -> Kernel {
    match id {
        KernelId::Gaussian => Kernel::Gaussian,
        KernelId::Epanechnikov => Kernel::Epanechnikov,
        KernelId::Uniform => Kernel::Uniform,
    }
}

fn kernel_name(id: KernelId) -> &'static str {
    match id {
        KernelId::Gaussian => "gaussian",
        KernelId::Epanechnikov => "epanechnikov",
        KernelId::Uniform => "uniform",
    }
}

/// Number of count compositions the exact likelihood enumerates,
/// `C(u + m - 1, m - 1)`, saturating.
fn composition_terms(u: u64, m: usize) -> u128 {
    let mut value: u128 = 1;
    for k in 1..m as u128 {
        value = value.saturating_mul(u as u128 + k);
        value /= k;
    }
    value
}

fn fnv1a64(bytes: &[u8]) -> String {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a64:{hash:016x}")
}

fn load_sample(path: &Path) -> Result<(Sample, String), CliError> {
    let text = fs::read_to_string(path)?;
    let sample = parse_interval_csv(&text)?;
    Ok((sample, fnv1a64(text.as_bytes())))
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("{what}: not a number: `{tok}`")))
        })
        .collect()
}

fn parse_u64_list(text: &str, what: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Input(format!("{what}: not a count: `{tok}`")))
        })
        .collect()
}

fn parse_points(specs: &[String], dims: usize) -> Result<Vec<Vec<f64>>, CliError> {
    let points = specs
        .iter()
        .map(|spec| parse_f64_list(spec, "--points"))
        .collect::<Result<Vec<_>, _>>()?;
    for p in &points {
        if p.len() != dims {
            return Err(CliError::Input(format!(
                "--points: expected {dims} coordinates, got {}",
                p.len()
            )));
        }
    }
    Ok(points)
}

fn point_rows_csv(points: &[Vec<f64>], values: &[f64], value_name: &str) -> String {
    let dims = points.first().map_or(0, Vec::len);
    let mut out = String::new();
    for m in 1..=dims {
        out.push_str(&format!("x{m},"));
    }
    out.push_str(value_name);
    out.push('\n');
    for (p, &v) in points.iter().zip(values) {
        for &c in p {
            out.push_str(&csvio::canonical(c));
            out.push(',');
        }
        out.push_str(&csvio::canonical(v));
        out.push('\n');
    }
    out
}

fn run_cdf(args: &CdfArgs) -> Result<RunOutput, CliError> {
    let (sample, digest) = load_sample(&args.input)?;
    let parameters = json!({
        "input": args.input.display().to_string(),
        "grid": args.grid,
        "points": args.points,
        "max_grid_points": args.max_grid_points,
    });
    if args.grid == args.points.is_empty() {
        // Exactly one evaluation mode.
        if args.grid {
            let est = estimate_cdf_grid_capped(&sample, args.max_grid_points).map_err(classify)?;
            let axes = est.grid().axes().to_vec();
            let values = est.values().as_slice().to_vec();
            let csv = csvio::write_grid_csv(&axes, &values, "fhat");
            let mut diagnostics = Map::new();
            // Monotone by construction in one dimension; measured and
            // reported, but not required, in several.
            diagnostics.insert(
                "monotonicity_violations".into(),
                json!(monotonicity_violations(&est)),
            );
            if args.common.self_check {
                diagnostics.insert(
                    "oracle_max_delta".into(),
                    json!(oracle_delta_over_grid(&sample, &est)?),
                );
            }
            return Ok(RunOutput {
                command: "cdf",
                inputs_digest: digest,
                parameters,
                results: json!({
                    "axes": axes,
                    "shape": est.values().shape(),
                    "values": values,
                }),
                diagnostics: Value::Object(diagnostics),
                csv: Some(csv),
            });
        }
        let points = parse_points(&args.points, sample.dimension())?;
        let mut rows = Vec::new();
        let mut values = Vec::new();
        let mut oracle_delta: f64 = 0.0;
        for p in &points {
            let counts = count_at(&sample, p).map_err(classify)?;
            let fhat = orcdf::closed_form_fhat(counts);
            if args.common.self_check {
                oracle_delta = oracle_delta.max((fhat - likelihood_oracle(counts, 100_000)).abs());
            }
            rows.push(json!({ "point": p, "fhat": fhat }));
            values.push(fhat);
        }
        let csv = point_rows_csv(&points, &values, "fhat");
        let mut diagnostics = Map::new();
        if args.common.self_check {
            diagnostics.insert("oracle_max_delta".into(), json!(oracle_delta));
        }
        Ok(RunOutput {
            command: "cdf",
            inputs_digest: digest,
            parameters,
            results: json!(rows),
            diagnostics: Value::Object(diagnostics),
            csv: Some(csv),
        })
    } else {
        Err(CliError::Input(
            "choose exactly one of --points and --grid".into(),
        ))
    }
}

/// Count of adjacent grid pairs whose estimate decreases along an axis.
fn monotonicity_violations(est: &orcdf::CdfEstimate) -> u64 {
    let values = est.values();
    let shape = values.shape().to_vec();
    let mut violations = 0u64;
    let mut idx = vec![0usize; shape.len()];
    for flat in 0..values.len() {
        values.decode(flat, &mut idx);
        for m in 0..shape.len() {
            if idx[m] + 1 < shape[m] {
                let mut next = idx.clone();
                next[m] += 1;
                if values.get(&next) < values.get(&idx) {
                    violations += 1;
                }
            }
        }
    }
    violations
}

fn oracle_delta_over_grid(sample: &Sample, est: &orcdf::CdfEstimate) -> Result<f64, CliError> {
    let mut worst: f64 = 0.0;
    for idx in est.values().indices() {
        let point = est.grid().point(&idx);
        let counts = count_at(sample, &point).map_err(classify)?;
        worst = worst.max((est.value_at(&idx) - likelihood_oracle(counts, 100_000)).abs());
    }
    Ok(worst)
}

fn run_kde(args: &KdeArgs) -> Result<RunOutput, CliError> {
    let (sample, digest) = load_sample(&args.input)?;
    let h = Bandwidth::new(parse_f64_list(&args.bandwidth, "--bandwidth")?).map_err(classify)?;
    let kernel = kernel_of(args.kernel);
    let est = estimate_cdf_grid_capped(&sample, args.max_grid_points).map_err(classify)?;
    let table = orcdf::weights_md(&est);
    let points: Vec<Vec<f64>> = if args.grid == args.points.is_empty() {
        if args.grid {
            est.values()
                .indices()
                .map(|idx| est.grid().point(&idx))
                .collect()
        } else {
            parse_points(&args.points, sample.dimension())?
        }
    } else {
        return Err(CliError::Input(
            "choose exactly one of --points and --grid".into(),
        ));
    };
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for p in &points {
        let density = density_at(&table, kernel, &h, p).map_err(classify)?;
        rows.push(json!({ "point": p, "density": density }));
        values.push(density);
    }
    let mut diagnostics = Map::new();
    diagnostics.insert("clamped".into(), json!(table.clamped()));
    diagnostics.insert("clamped_mass".into(), json!(table.clamped_mass()));
    diagnostics.insert("total_weight".into(), json!(table.total_mass()));
    if args.common.self_check && sample.dimension() <= 2 {
        diagnostics.insert(
            "mass_check_delta".into(),
            json!(mass_check_delta(&table, kernel, &h)?),
        );
    }
    let csv = point_rows_csv(&points, &values, "density");
    Ok(RunOutput {
        command: "kde",
        inputs_digest: digest,
        parameters: json!({
            "input": args.input.display().to_string(),
            "kernel": kernel_name(args.kernel),
            "bandwidth": h.components(),
            "grid": args.grid,
            "points": args.points,
        }),
        results: json!(rows),
        diagnostics: Value::Object(diagnostics),
        csv: Some(csv),
    })
}

fn mass_check_delta(table: &WeightTable, kernel: Kernel, h: &Bandwidth) -> Result<f64, CliError> {
    let dims = table.grid().dimension();
    let hs = h.components();
    let (lo, hi): (Vec<f64>, Vec<f64>) = (0..dims)
        .map(|m| {
            let axis = table.grid().axis(m);
            (axis[0] - 8.0 * hs[m], axis.last().unwrap() + 8.0 * hs[m])
        })
        .unzip();
    let integral = if dims == 1 {
        orcdf::quadrature::integrate(
            &|x| density_at(table, kernel, h, &[x]).unwrap_or(f64::NAN),
            lo[0],
            hi[0],
            1e-6,
        )
    } else {
        orcdf::quadrature::integrate_box(
            &|p| density_at(table, kernel, h, p).unwrap_or(f64::NAN),
            &lo,
            &hi,
            1e-6,
        )
    }
    .map_err(classify)?;
    Ok((integral - table.total_mass()).abs())
}

fn run_bandwidth(args: &BandwidthArgs) -> Result<RunOutput, CliError> {
    let (sample, digest) = load_sample(&args.input)?;
    let grid = build_grid(&sample).map_err(classify)?;
    let spec = BandwidthSearchSpec::default_with_candidates(&sample, &grid, args.candidates)
        .map_err(classify)?;
    let kernel = kernel_of(args.kernel);
    let selection = select_bandwidth_detailed(&sample, kernel, &spec).map_err(classify)?;
    let table: Vec<Value> = selection
        .evaluations
        .iter()
        .map(|ev| {
            json!({
                "bandwidth": ev.bandwidth.components(),
                "integral_term": ev.integral_term,
                "loo_term": ev.loo_term,
                "score": ev.score,
            })
        })
        .collect();
    let mut csv = String::from("");
    let dims = sample.dimension();
    for m in 1..=dims {
        csv.push_str(&format!("h{m},"));
    }
    csv.push_str("integral_term,loo_term,score\n");
    for ev in &selection.evaluations {
        for &h in ev.bandwidth.components() {
            csv.push_str(&csvio::canonical(h));
            csv.push(',');
        }
        csv.push_str(&csvio::canonical(ev.integral_term));
        csv.push(',');
        csv.push_str(&csvio::canonical(ev.loo_term));
        csv.push(',');
        csv.push_str(&csvio::canonical(ev.score));
        csv.push('\n');
    }
    Ok(RunOutput {
        command: "bandwidth",
        inputs_digest: digest,
        parameters: json!({
            "input": args.input.display().to_string(),
            "kernel": kernel_name(args.kernel),
            "candidates": args.candidates,
        }),
        results: json!({
            "selected": selection.selected.components(),
            "selected_score": {
                "integral_term": selection.selected_score.integral_term,
                "loo_term": selection.selected_score.loo_term,
                "score": selection.selected_score.score,
            },
            "score_table": table,
        }),
        diagnostics: json!({}),
        csv: Some(csv),
    })
}

fn run_regress(args: &RegressArgs) -> Result<RunOutput, CliError> {
    let (sample, digest) = load_sample(&args.input)?;
    if sample.dimension() < 2 {
        return Err(CliError::Input(
            "regression input needs at least one covariate pair and the response pair".into(),
        ));
    }
    let h = Bandwidth::new(parse_f64_list(&args.bandwidth, "--bandwidth")?).map_err(classify)?;
    let kernel = kernel_of(args.kernel);
    let model = fit_regression(&sample, kernel, &h).map_err(classify)?;
    let points = parse_points(&args.points, model.covariate_dim())?;
    if points.is_empty() {
        return Err(CliError::Input("--points is required".into()));
    }
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for p in &points {
        let prediction = predict(&model, p).map_err(classify)?;
        rows.push(json!({ "point": p, "prediction": prediction }));
        values.push(prediction);
    }
    let csv = point_rows_csv(&points, &values, "prediction");
    Ok(RunOutput {
        command: "regress",
        inputs_digest: digest,
        parameters: json!({
            "input": args.input.display().to_string(),
            "kernel": kernel_name(args.kernel),
            "bandwidth": h.components(),
            "points": args.points,
        }),
        results: json!(rows),
        diagnostics: json!({
            "clamped": model.weights().clamped(),
            "clamped_mass": model.weights().clamped_mass(),
            "response_axis": model.response_axis(),
        }),
        csv: Some(csv),
    })
}

fn run_multinomial(args: &MultinomialArgs) -> Result<RunOutput, CliError> {
    let observed = parse_u64_list(&args.counts, "--counts")?;
    let trials = observed.iter().sum::<u64>() + args.unobserved;
    let counts = match &args.per_type_u {
        Some(text) => {
            let caps = parse_u64_list(text, "--per-type-u")?;
            DiscreteCensoredCounts::with_per_type_caps(observed.clone(), trials, caps)
        }
        None => DiscreteCensoredCounts::new(observed.clone(), trials),
    }
    .map_err(classify)?;
    let digest = fnv1a64(format!("counts={};u={}", args.counts, args.unobserved).as_bytes());

    let mut results = Map::new();
    let mut diagnostics = Map::new();
    let mut warnings: Vec<String> = Vec::new();

    let normalized = multinomial_normalized_estimate(&counts).map_err(classify)?;
    results.insert("normalized".into(), json!(normalized.probabilities));
    if counts.num_types() == 2 {
        let p = orcdf::binomial_censored_mle(&counts).map_err(classify)?;
        results.insert("binomial_closed_form".into(), json!(p));
    }
    // The exact maximizer evaluates the enumerated likelihood roughly a
    // thousand times; keep this supplementary output interactive.
    if composition_terms(counts.unobserved(), counts.num_types()) <= 200_000 {
        match orcdf::multinomial::exact_multinomial_mle_seeded(&counts, 2, args.seed) {
            Ok(exact) => {
                results.insert("exact_mle".into(), json!(exact.probabilities));
            }
            Err(err) => {
                warnings.push(format!("exact maximization skipped: {err}"));
            }
        }
    } else {
        warnings.push(format!(
            "exact maximization skipped: {} unobserved outcomes enumerate too many count \
             compositions for interactive use",
            counts.unobserved()
        ));
    }

    if let Some(q_text) = &args.q {
        let tokens: Vec<&str> = q_text.split(',').map(str::trim).collect();
        if tokens.len() != counts.num_types() {
            return Err(CliError::Input(format!(
                "--q: expected {} entries, got {}",
                counts.num_types(),
                tokens.len()
            )));
        }
        if tokens.contains(&"?") {
            if counts.num_types() != 2 || tokens[0] != "?" || tokens[1] == "?" {
                return Err(CliError::Input(
                    "--q: only the first of two observation probabilities may be `?`".into(),
                ));
            }
            let q2: f64 = tokens[1]
                .parse()
                .map_err(|_| CliError::Input(format!("--q: not a number: `{}`", tokens[1])))?;
            let fit = orcdf::partial_known_q_mle(&counts, q2).map_err(classify)?;
            if fit.identifiability_warning {
                warnings.push(
                    "q1 lies on a likelihood ridge (no censored trials); reported as 1".into(),
                );
            }
            results.insert(
                "partial_known_q".into(),
                json!({ "p": fit.p.probabilities, "q1": fit.q1 }),
            );
        } else {
            let q_values = parse_f64_list(q_text, "--q")?;
            let q = ObservationProbabilities::all_known(q_values).map_err(classify)?;
            let est = orcdf::known_q_mle(&counts, &q).map_err(classify)?;
            if args.common.self_check && counts.num_types() == 2 {
                let mut best = (0.0, f64::NEG_INFINITY);
                for i in 0..=10_000 {
                    let p1 = i as f64 / 10_000.0;
                    let ll =
                        orcdf::multinomial::known_q_log_likelihood(&counts, &q, &[p1, 1.0 - p1])
                            .map_err(classify)?;
                    if ll > best.1 {
                        best = (p1, ll);
                    }
                }
                diagnostics.insert(
                    "known_q_grid_delta".into(),
                    json!((est.probabilities[0] - best.0).abs()),
                );
            }
            results.insert("known_q".into(), json!(est.probabilities));
        }
    }

    if args.common.self_check {
        // Marginal maximizers recomputed by the brute-force band oracle.
        let mut worst: f64 = 0.0;
        let n = counts.trials();
        let mut marginals = Vec::new();
        for (m, &c) in counts.observed().iter().enumerate() {
            let cap = counts.unobserved_cap(m);
            marginals.push(likelihood_oracle(
                orcdf::CountTriple::new(c as usize, cap as usize, (n - c - cap) as usize),
                100_000,
            ));
        }
        let total: f64 = marginals.iter().sum();
        if total > 0.0 {
            for (a, b) in normalized.probabilities.iter().zip(&marginals) {
                worst = worst.max((a - b / total).abs());
            }
        }
        diagnostics.insert("oracle_max_delta".into(), json!(worst));
    }
    diagnostics.insert("warnings".into(), json!(warnings));

    Ok(RunOutput {
        command: "multinomial",
        inputs_digest: digest,
        parameters: json!({
            "counts": observed,
            "unobserved": args.unobserved,
            "per_type_u": args.per_type_u,
            "q": args.q,
            "seed": args.seed,
        }),
        results: Value::Object(results),
        diagnostics: Value::Object(diagnostics),
        csv: None,
    })
}

fn run_contingency(args: &ContingencyArgs) -> Result<RunOutput, CliError> {
    let cells = parse_u64_list(&args.counts, "--counts")?;
    if cells.len() != 4 {
        return Err(CliError::Input(format!(
            "--counts: expected c11,c21,c12,c22, got {} entries",
            cells.len()
        )));
    }
    let counts = [[cells[0], cells[2]], [cells[1], cells[3]]];
    let (table, example) = match args.example {
        1 | 2 => {
            let Some(totals_text) = &args.column_totals else {
                return Err(CliError::Input(
                    "--column-totals is required for examples 1 and 2".into(),
                ));
            };
            let totals = parse_u64_list(totals_text, "--column-totals")?;
            if totals.len() != 2 {
                return Err(CliError::Input("--column-totals: expected N1,N2".into()));
            }
            let table =
                Table2x2::with_column_totals(counts, [totals[0], totals[1]]).map_err(classify)?;
            let example = if args.example == 1 {
                ExampleKind::Example1
            } else {
                ExampleKind::Example2
            };
            (table, example)
        }
        3 => {
            let Some(u) = args.unobserved else {
                return Err(CliError::Input(
                    "--unobserved is required for example 3".into(),
                ));
            };
            let total = cells.iter().sum::<u64>() + u;
            (
                Table2x2::without_totals(counts, total).map_err(classify)?,
                ExampleKind::Example3,
            )
        }
        _ => unreachable!("clap range-checked"),
    };

    let estimates = match example {
        ExampleKind::Example1 => fit_example1(&table, args.null).map_err(classify)?,
        ExampleKind::Example2 => fit_example2(&table, args.null).map_err(classify)?,
        ExampleKind::Example3 => {
            orcdf::contingency::fit_example3_seeded(&table, args.null, 2, args.seed)
                .map_err(classify)?
        }
    };
    let probability = table_probability(&table, &estimates, example).map_err(classify)?;

    let mut diagnostics = Map::new();
    let mut warnings: Vec<String> = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            match estimates.q_hat[i][j] {
                Some(q) if q > 1.0 => warnings.push(format!(
                    "plug-in observation probability exceeds 1 in cell ({},{}): {q}",
                    i + 1,
                    j + 1
                )),
                None => warnings.push(format!(
                    "observation probability undefined in cell ({},{}) (cell probability is 0)",
                    i + 1,
                    j + 1
                )),
                _ => {}
            }
        }
    }
    if args.common.self_check && args.null {
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..=100_000 {
            let p = i as f64 / 100_000.0;
            let ll = null_log_likelihood(&table, example, p).map_err(classify)?;
            if ll > best.1 {
                best = (p, ll);
            }
        }
        let fitted = estimates.null_p.expect("null fit");
        diagnostics.insert("null_scan_delta".into(), json!((fitted - best.0).abs()));
    }
    diagnostics.insert("warnings".into(), json!(warnings));

    Ok(RunOutput {
        command: "contingency",
        inputs_digest: fnv1a64(
            format!(
                "counts={};totals={:?};u={:?};example={}",
                args.counts, args.column_totals, args.unobserved, args.example
            )
            .as_bytes(),
        ),
        parameters: json!({
            "counts": cells,
            "column_totals": args.column_totals,
            "unobserved": args.unobserved,
            "example": args.example,
            "null": args.null,
            "seed": args.seed,
        }),
        results: estimates_json(&estimates, probability),
        diagnostics: Value::Object(diagnostics),
        csv: None,
    })
}

fn estimates_json(estimates: &TableEstimates, probability: f64) -> Value {
    let q: Vec<Vec<Value>> = (0..2)
        .map(|i| {
            (0..2)
                .map(|j| match estimates.q_hat[i][j] {
                    Some(v) => json!(v),
                    None => Value::Null,
                })
                .collect()
        })
        .collect();
    json!({
        "pi_hat": estimates.pi_hat,
        "alpha_hat": estimates.alpha_hat,
        "q_hat": q,
        "under_null": estimates.under_null,
        "null_p": estimates.null_p,
        "table_probability": probability,
    })
}
