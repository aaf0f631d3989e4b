//! Scenario-driven batch pipeline: builds simulated array instances from a
//! config file, runs the requested solvers, and emits CSV records and
//! certification reports.
//!
//! A scenario describes a uniform linear array, an actual and a presumed
//! desired source, interferers, noise-relative power levels, a training
//! size, uncertainty-radius rules, and the methods to compare. Each run
//! draws `T` snapshots from the *actual* source models, estimates the
//! sample covariance `R̂`, factors the *presumed* signal covariance into
//! `Q̂`, builds the uncertainty sets from the configured rules, and hands
//! those estimates to the solvers. Output SINR is evaluated against the
//! true simulation covariances — solvers never see them, and the
//! evaluation never sees the estimates.
//!
//! Config format (TOML, unknown keys rejected):
//!
//! ```toml
//! inr_db = 30.0
//! snr_db = [-10.0, 0.0, 10.0, 20.0]   # or a single number
//! T = 50
//! eta_rule = 0.5        # signal radius as a fraction of ‖Q̂‖_F
//! gamma_rule = 0.1      # covariance radius as a fraction of ‖R̂‖_F
//! trace_rule = [0.5, 0.9]   # optional: trace interval as fractions of tr R̂
//! runs = 20
//! seed = 1
//! methods = ["minimax-sdp", "maximin-socp-dc", "maximin-sdp-dc"]
//! # rank_sweep_spread_deg = [0.15, 1.0, 2.0]  # alternative sweep axis
//!
//! [array]
//! sensors = 10
//! spacing = 0.5
//!
//! [desired_actual]
//! density = "gaussian"
//! center_deg = 30.0
//! spread_deg = 4.0
//!
//! [desired_presumed]
//! density = "gaussian"
//! center_deg = 34.0
//! spread_deg = 6.0
//!
//! [[interferers]]
//! density = "uniform"
//! center_deg = 10.0
//! spread_deg = 10.0
//! ```

use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use serde::Deserialize;

use crate::conic::SolverSettings;
use crate::dc::{solve_maximin_ball_dc, solve_maximin_trace_dc, DcSettings};
use crate::linalg::HermitianMatrix;
use crate::minimax::solve_minimax;
use crate::signal::{
    auto_rank, factorize_signal_covariance, generate_snapshots, sample_covariance,
    scattered_covariance, ArrayGeometry, Density, SourceDescriptor, DEFAULT_GRID_STEP_DEG,
    DEFAULT_RANK_THRESHOLD,
};
use crate::uncertainty::{IncSetSpec, MatrixNorm, SignalSetSpec};
use crate::verify::{
    check_convexity, check_grad_q, check_grad_r1, check_optimality_condition,
    check_saddle_point, check_value_equivalence, CheckReport, ConvexityTarget,
};
use crate::{Error, Result};

/// Fixed CSV header; one row per (axis value, run, method).
pub const CSV_HEADER: &str = "scenario_id,run_index,snr_db,rank_Rs,method,\
                              uncertainty_variant,objective,output_sinr_db,iterations,\
                              wall_ms,status,seed";

/// Solver selection, as named in config files and CSV rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Single-shot semidefinite solve of the minimax problem.
    MinimaxSdp,
    /// Iterative linearization with second-order-cone subproblems (plain
    /// ball constraint form).
    MaximinSocpDc,
    /// Iterative linearization with semidefinite subproblems (dual
    /// certificate constraint form).
    MaximinSdpDc,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::MinimaxSdp => "minimax-sdp",
            Method::MaximinSocpDc => "maximin-socp-dc",
            Method::MaximinSdpDc => "maximin-sdp-dc",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "minimax-sdp" => Ok(Method::MinimaxSdp),
            "maximin-socp-dc" => Ok(Method::MaximinSocpDc),
            "maximin-sdp-dc" => Ok(Method::MaximinSdpDc),
            other => Err(Error::Config(format!(
                "unknown method {other:?}; expected one of \"minimax-sdp\", \
                 \"maximin-socp-dc\", \"maximin-sdp-dc\""
            ))),
        }
    }
}

/// Which uncertainty description the scenario's covariance set uses,
/// decided by the presence of `trace_rule`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Ball,
    BallTrace,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Ball => "ball",
            Variant::BallTrace => "ball-trace",
        }
    }
}

/// Either a single SNR value or a sweep list.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SnrAxis {
    Single(f64),
    Sweep(Vec<f64>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArraySection {
    pub sensors: usize,
    #[serde(default = "default_spacing")]
    pub spacing: f64,
}

fn default_spacing() -> f64 {
    0.5
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSection {
    /// `"gaussian"`, `"uniform"`, or `"point"`.
    pub density: String,
    pub center_deg: f64,
    #[serde(default)]
    pub spread_deg: f64,
}

impl SourceSection {
    fn descriptor(&self, power: f64) -> Result<SourceDescriptor> {
        let density = match self.density.to_ascii_lowercase().as_str() {
            "gaussian" => Density::Gaussian,
            "uniform" => Density::Uniform,
            "point" => Density::Point,
            other => {
                return Err(Error::Config(format!(
                    "unknown density {other:?}; expected \"gaussian\", \"uniform\" or \
                     \"point\""
                )))
            }
        };
        SourceDescriptor::new(density, self.center_deg, self.spread_deg, power)
    }
}

/// Parsed scenario description; see the module docs for the file format.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub array: ArraySection,
    pub desired_actual: SourceSection,
    pub desired_presumed: SourceSection,
    #[serde(default)]
    pub interferers: Vec<SourceSection>,
    /// Interference-to-noise ratio applied to every interferer (dB).
    pub inr_db: f64,
    pub snr_db: SnrAxis,
    /// Training snapshot count.
    #[serde(rename = "T")]
    pub t: usize,
    /// Signal-set radius as a fraction of `‖Q̂‖_F`; must stay below 1 so
    /// the set excludes the zero matrix.
    pub eta_rule: f64,
    /// Covariance-set radius as a fraction of `‖R̂‖_F`.
    pub gamma_rule: f64,
    /// Optional trace interval `[c₁·tr R̂, c₂·tr R̂]`.
    #[serde(default)]
    pub trace_rule: Option<[f64; 2]>,
    pub runs: usize,
    pub seed: u64,
    pub methods: Vec<String>,
    /// Alternative sweep axis: actual angular spreads, varying the rank of
    /// the true signal covariance.
    #[serde(default)]
    pub rank_sweep_spread_deg: Option<Vec<f64>>,
}

impl ScenarioConfig {
    /// Parse a config from TOML text.
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Load and validate a config file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    fn validate(&self) -> Result<()> {
        if self.runs < 1 {
            return Err(Error::Config("runs: must be at least 1".into()));
        }
        if !(self.eta_rule >= 0.0 && self.eta_rule < 1.0) {
            return Err(Error::Config(format!(
                "eta_rule: must lie in [0, 1) so the signal set excludes zero, got {}",
                self.eta_rule
            )));
        }
        if !(self.gamma_rule >= 0.0 && self.gamma_rule.is_finite()) {
            return Err(Error::Config(format!(
                "gamma_rule: must be finite and nonnegative, got {}",
                self.gamma_rule
            )));
        }
        if let Some([c1, c2]) = self.trace_rule {
            if !(0.0 <= c1 && c1 <= c2 && c2.is_finite()) {
                return Err(Error::Config(format!(
                    "trace_rule: fractions must satisfy 0 <= c1 <= c2, got [{c1}, {c2}]"
                )));
            }
        }
        if !self.inr_db.is_finite() {
            return Err(Error::Config("inr_db: must be finite".into()));
        }
        match &self.snr_db {
            SnrAxis::Single(v) if v.is_finite() => {}
            SnrAxis::Single(v) => {
                return Err(Error::Config(format!("snr_db: must be finite, got {v}")))
            }
            SnrAxis::Sweep(list) if list.is_empty() => {
                return Err(Error::Config("snr_db: sweep list must be nonempty".into()))
            }
            SnrAxis::Sweep(list) => {
                if let Some(v) = list.iter().find(|v| !v.is_finite()) {
                    return Err(Error::Config(format!("snr_db: must be finite, got {v}")));
                }
            }
        }
        if let Some(list) = &self.rank_sweep_spread_deg {
            if list.is_empty() {
                return Err(Error::Config(
                    "rank_sweep_spread_deg: sweep list must be nonempty".into(),
                ));
            }
            if let Some(v) = list.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
                return Err(Error::Config(format!(
                    "rank_sweep_spread_deg: spreads must be nonnegative, got {v}"
                )));
            }
        }
        if self.methods.is_empty() {
            return Err(Error::Config("methods: at least one method required".into()));
        }
        for m in &self.methods {
            Method::parse(m)?;
        }
        if self.t < 1 {
            return Err(Error::Config("T: snapshot count must be at least 1".into()));
        }
        Ok(())
    }

    fn methods(&self) -> Vec<Method> {
        self.methods.iter().map(|m| Method::parse(m).expect("validated")).collect()
    }

    fn variant(&self) -> Variant {
        if self.trace_rule.is_some() {
            Variant::BallTrace
        } else {
            Variant::Ball
        }
    }
}

/// One CSV row: one method on one simulated run.
#[derive(Clone, Debug)]
pub struct RunRecord {
    pub scenario_id: String,
    pub run_index: usize,
    pub snr_db: f64,
    /// Numerical rank of the *true* signal covariance for this run.
    pub rank_rs: usize,
    pub method: Method,
    pub variant: Variant,
    /// Minimax optimum `λ*`, or the squared clipped objective for the
    /// iterative methods. NaN when `status` is not `ok`.
    pub objective: f64,
    /// Beamformer SINR against the true simulation covariances, in dB.
    pub output_sinr_db: f64,
    pub iterations: usize,
    /// Wall time around the solver call only (milliseconds).
    pub wall_ms: f64,
    /// `ok`, or a short failure description.
    pub status: String,
    /// Per-run seed (`seed + run_index`).
    pub seed: u64,
}

fn fmt_float(x: f64) -> String {
    format!("{x:.8e}")
}

impl RunRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:.3},{},{}",
            self.scenario_id,
            self.run_index,
            fmt_float(self.snr_db),
            self.rank_rs,
            self.method.as_str(),
            self.variant.as_str(),
            fmt_float(self.objective),
            fmt_float(self.output_sinr_db),
            self.iterations,
            self.wall_ms,
            self.status,
            self.seed,
        )
    }
}

/// Render the full CSV document (header plus one row per record).
pub fn render_csv(records: &[RunRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

fn sanitize_status(msg: &str) -> String {
    msg.replace(['\n', '\r'], "; ").replace(',', ";")
}

/// Everything one simulated run produces: estimates for the solvers and
/// true covariances for the evaluation. The solvers only ever see `rhat`
/// and `qhat`.
struct RunData {
    rhat: HermitianMatrix,
    qhat: crate::linalg::ComplexMatrix,
    rank_rs: usize,
    rs_true: HermitianMatrix,
    rin_true: HermitianMatrix,
}

fn simulate_run(
    cfg: &ScenarioConfig,
    snr_db: f64,
    actual_spread_deg: f64,
    run_seed: u64,
) -> Result<RunData> {
    let geom = ArrayGeometry::new(cfg.array.sensors, cfg.array.spacing)?;
    let sig_pow = 10f64.powf(snr_db / 10.0);
    let int_pow = 10f64.powf(cfg.inr_db / 10.0);

    let actual = SourceSection {
        spread_deg: actual_spread_deg,
        ..cfg.desired_actual.clone()
    }
    .descriptor(sig_pow)?;
    let rs_true = scattered_covariance(&geom, &actual, DEFAULT_GRID_STEP_DEG)?;

    let mut ri_true = HermitianMatrix::zeros(cfg.array.sensors);
    for source in &cfg.interferers {
        let desc = source.descriptor(int_pow)?;
        ri_true = ri_true.add(&scattered_covariance(&geom, &desc, DEFAULT_GRID_STEP_DEG)?);
    }
    // Unit-power spatially white noise.
    let rin_true = ri_true.add_scaled_identity(1.0);

    let snapshots = generate_snapshots(&rs_true, &ri_true, 1.0, cfg.t, run_seed)?;
    let rhat = sample_covariance(&snapshots);

    let presumed = cfg.desired_presumed.descriptor(sig_pow)?;
    let rs_presumed = scattered_covariance(&geom, &presumed, DEFAULT_GRID_STEP_DEG)?;
    let qhat = factorize_signal_covariance(&rs_presumed, None)?;

    let rank_rs = auto_rank(&rs_true, DEFAULT_RANK_THRESHOLD)?;
    Ok(RunData { rhat, qhat, rank_rs, rs_true, rin_true })
}

/// Uncertainty sets derived from one run's estimates by the configured
/// radius rules.
/// Relative positive-definiteness floor for the minimax covariance set,
/// as a fraction of the Frobenius norm of the sample covariance. A trace
/// interval drives the worst-case covariance onto the boundary of the
/// semidefinite cone along directions that carry no signal power; the
/// floor keeps those directions invertible so beamformer extraction stays
/// bounded, while moving the optimal value only negligibly. The DC
/// iterations never invert a covariance and their subproblem encodings
/// require floor-free sets, so they keep the raw model.
const PD_FLOOR_RULE: f64 = 1e-6;

struct Specs {
    signal: SignalSetSpec,
    /// Floored set for the minimax route; carries the scenario's trace
    /// interval when one is configured.
    minimax: IncSetSpec,
    /// Floor-free ball for the cone-program iteration.
    dc_ball: IncSetSpec,
    /// Floor-free set for the certificate-form iteration; on plain-ball
    /// scenarios the interval is a slack one the ball can never bind.
    dc_trace: IncSetSpec,
}

fn build_specs(cfg: &ScenarioConfig, data: &RunData) -> Result<Specs> {
    let eta = cfg.eta_rule * data.qhat.frobenius_norm();
    let gamma = cfg.gamma_rule * data.rhat.frobenius_norm();
    let floor = PD_FLOOR_RULE * data.rhat.frobenius_norm();
    let signal = SignalSetSpec::new(data.qhat.clone(), MatrixNorm::Frobenius, eta)?;
    let tr = data.rhat.trace();
    let interval = cfg.trace_rule.map(|[c1, c2]| (c1 * tr, c2 * tr));
    let minimax =
        IncSetSpec::new(data.rhat.clone(), MatrixNorm::Frobenius, gamma, interval, floor)?;
    let dc_ball = IncSetSpec::ball(data.rhat.clone(), MatrixNorm::Frobenius, gamma)?;
    let slack = tr + gamma * data.rhat.dim() as f64;
    let dc_trace = IncSetSpec::new(
        data.rhat.clone(),
        MatrixNorm::Frobenius,
        gamma,
        Some(interval.unwrap_or((0.0, slack))),
        0.0,
    )?;
    Ok(Specs { signal, minimax, dc_ball, dc_trace })
}

struct MethodOutcome {
    objective: f64,
    w: Option<Vec<Complex64>>,
    iterations: usize,
    status: String,
    wall_ms: f64,
}

fn evaluate_method(method: Method, specs: &Specs) -> MethodOutcome {
    let solver = SolverSettings::default();
    let dc = DcSettings::default();
    let started = Instant::now();
    let result: Result<(f64, Vec<Complex64>, usize, bool)> = match method {
        Method::MinimaxSdp => solve_minimax(&specs.signal, &specs.minimax, &solver)
            .map(|sol| (sol.lambda_star, sol.w_star, sol.iterations, true)),
        Method::MaximinSocpDc => {
            // The cone-program iteration always uses the closed-form ball
            // constraint; under a trace-interval scenario that is a
            // conservative outer approximation of the constraint set.
            solve_maximin_ball_dc(&specs.signal, &specs.dc_ball, None, &dc)
                .map(|r| (r.objective * r.objective, r.w, r.iterations, r.converged))
        }
        Method::MaximinSdpDc => solve_maximin_trace_dc(&specs.signal, &specs.dc_trace, None, &dc)
            .map(|r| (r.objective * r.objective, r.w, r.iterations, r.converged)),
    };
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok((objective, w, iterations, converged)) => MethodOutcome {
            objective,
            w: Some(w),
            iterations,
            status: if converged { "ok".into() } else { "max-iter".into() },
            wall_ms,
        },
        Err(e) => MethodOutcome {
            objective: f64::NAN,
            w: None,
            iterations: 0,
            status: sanitize_status(&e.to_string()),
            wall_ms,
        },
    }
}

fn output_sinr_db(data: &RunData, w: &[Complex64]) -> f64 {
    let num = data.rs_true.quadratic_form(w);
    let den = data.rin_true.quadratic_form(w);
    10.0 * (num / den).log10()
}

fn scenario_id_from(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .filter(|s| !s.is_empty())
        .unwrap_or("scenario")
        .to_string()
}

/// The sweep axis: SNR values or actual angular spreads.
enum Axis {
    Snr(Vec<f64>),
    Spread { snr_db: f64, spreads: Vec<f64> },
}

fn run_axis(cfg: &ScenarioConfig, scenario_id: &str, axis: Axis) -> Result<Vec<RunRecord>> {
    let methods = cfg.methods();
    let variant = cfg.variant();
    let points: Vec<(f64, f64)> = match &axis {
        Axis::Snr(values) => values
            .iter()
            .map(|&snr| (snr, cfg.desired_actual.spread_deg))
            .collect(),
        Axis::Spread { snr_db, spreads } => {
            spreads.iter().map(|&sp| (*snr_db, sp)).collect()
        }
    };
    let mut records = Vec::with_capacity(points.len() * cfg.runs * methods.len());
    for (snr_db, spread) in points {
        log::info!(
            "scenario {scenario_id}: snr={snr_db} dB, actual spread={spread}°, {} runs",
            cfg.runs
        );
        for run_index in 0..cfg.runs {
            let run_seed = cfg.seed.wrapping_add(run_index as u64);
            let data = simulate_run(cfg, snr_db, spread, run_seed)?;
            let specs = build_specs(cfg, &data)?;
            for &method in &methods {
                let outcome = evaluate_method(method, &specs);
                let output_sinr = outcome
                    .w
                    .as_deref()
                    .map(|w| output_sinr_db(&data, w))
                    .unwrap_or(f64::NAN);
                log::debug!(
                    "run {run_index} {}: objective={:.6e} status={}",
                    method.as_str(),
                    outcome.objective,
                    outcome.status
                );
                records.push(RunRecord {
                    scenario_id: scenario_id.to_string(),
                    run_index,
                    snr_db,
                    rank_rs: data.rank_rs,
                    method,
                    variant,
                    objective: outcome.objective,
                    output_sinr_db: output_sinr,
                    iterations: outcome.iterations,
                    wall_ms: outcome.wall_ms,
                    status: outcome.status,
                    seed: run_seed,
                });
            }
        }
    }
    Ok(records)
}

fn apply_seed_override(cfg: &mut ScenarioConfig, seed_override: Option<u64>) {
    if let Some(seed) = seed_override {
        cfg.seed = seed;
    }
}

/// Run every configured method on `runs` simulated instances at the
/// configured (single) SNR and write the records as CSV.
///
/// Per-run solver failures are recorded in the `status` column rather
/// than aborting the batch.
pub fn cmd_solve(
    config_path: &Path,
    out_path: &Path,
    seed_override: Option<u64>,
) -> Result<Vec<RunRecord>> {
    let mut cfg = ScenarioConfig::load(config_path)?;
    apply_seed_override(&mut cfg, seed_override);
    let snr = match &cfg.snr_db {
        SnrAxis::Single(v) => *v,
        SnrAxis::Sweep(_) => {
            return Err(Error::Config(
                "snr_db: solve takes a single SNR; use the sweep command for lists".into(),
            ))
        }
    };
    if cfg.rank_sweep_spread_deg.is_some() {
        return Err(Error::Config(
            "rank_sweep_spread_deg: solve runs a single point; use the sweep command".into(),
        ));
    }
    let id = scenario_id_from(config_path);
    let records = run_axis(&cfg, &id, Axis::Snr(vec![snr]))?;
    std::fs::write(out_path, render_csv(&records))?;
    Ok(records)
}

/// Run a sweep over exactly one axis — an SNR list, or a list of actual
/// angular spreads (rank sweep) at a single SNR — and write the records
/// as CSV, ordered by (axis value, run, method).
pub fn cmd_sweep(
    config_path: &Path,
    out_path: &Path,
    seed_override: Option<u64>,
) -> Result<Vec<RunRecord>> {
    let mut cfg = ScenarioConfig::load(config_path)?;
    apply_seed_override(&mut cfg, seed_override);
    let axis = match (&cfg.snr_db, &cfg.rank_sweep_spread_deg) {
        (SnrAxis::Sweep(_), Some(_)) => {
            return Err(Error::Config(
                "snr_db and rank_sweep_spread_deg are both sweep lists; a sweep takes \
                 exactly one axis"
                    .into(),
            ))
        }
        (SnrAxis::Sweep(values), None) => Axis::Snr(values.clone()),
        (SnrAxis::Single(snr), Some(spreads)) => {
            Axis::Spread { snr_db: *snr, spreads: spreads.clone() }
        }
        (SnrAxis::Single(_), None) => {
            return Err(Error::Config(
                "a sweep needs an axis: give snr_db a list or set rank_sweep_spread_deg"
                    .into(),
            ))
        }
    };
    let id = scenario_id_from(config_path);
    let records = run_axis(&cfg, &id, axis)?;
    std::fs::write(out_path, render_csv(&records))?;
    Ok(records)
}

/// Solve one instance of the scenario and run the full certification
/// suite on it: saddle point, optimality condition, both derivative
/// formulas, both convexity targets, and the value relation between the
/// iterative and single-shot solvers. Reports are written as structured
/// text; the command succeeds even when checks fail (the caller decides
/// what failures mean).
pub fn cmd_verify(
    config_path: &Path,
    out_path: &Path,
    seed_override: Option<u64>,
) -> Result<Vec<CheckReport>> {
    let mut cfg = ScenarioConfig::load(config_path)?;
    apply_seed_override(&mut cfg, seed_override);
    let snr = match &cfg.snr_db {
        SnrAxis::Single(v) => *v,
        SnrAxis::Sweep(values) => values[0],
    };
    let data = simulate_run(&cfg, snr, cfg.desired_actual.spread_deg, cfg.seed)?;
    let specs = build_specs(&cfg, &data)?;
    let variant = cfg.variant();
    let inc = &specs.minimax;

    let solver = SolverSettings::default();
    let sol = solve_minimax(&specs.signal, inc, &solver)?;

    let mut reports = vec![check_saddle_point(&sol, &specs.signal, inc, 500, cfg.seed, 1e-6)];
    reports.push(check_optimality_condition(
        &sol.q_star,
        &sol.r1_star,
        &sol.w_star,
        sol.lambda_star,
        &specs.signal,
        inc,
        500,
        cfg.seed.wrapping_add(1),
        1e-6,
    ));
    reports.push(check_grad_q(&data.qhat, &data.rhat, 1e-5)?);
    reports.push(check_grad_r1(&data.qhat, &data.rhat, 1e-5)?);
    reports.push(check_convexity(
        ConvexityTarget::ObjectiveF,
        4,
        2,
        None,
        500,
        cfg.seed.wrapping_add(2),
    )?);
    let e1 = {
        let mut w = vec![Complex64::ZERO; 4];
        w[0] = Complex64::ONE;
        w
    };
    reports.push(check_convexity(
        ConvexityTarget::RatioH,
        4,
        2,
        Some(&e1),
        500,
        cfg.seed.wrapping_add(3),
    )?);

    let dc = DcSettings::default();
    let dc_result = match variant {
        Variant::BallTrace => solve_maximin_trace_dc(&specs.signal, &specs.dc_trace, None, &dc)?,
        Variant::Ball => solve_maximin_ball_dc(&specs.signal, &specs.dc_ball, None, &dc)?,
    };
    reports.push(check_value_equivalence(sol.lambda_star, dc_result.objective));

    let text: Vec<String> = reports.iter().map(|r| r.render()).collect();
    std::fs::write(out_path, text.join("\n") + "\n")?;
    Ok(reports)
}
