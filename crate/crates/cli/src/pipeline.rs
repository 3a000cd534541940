//! The full report pipeline: graded action, traces, zeta (three ways),
//! positivity of the log-zeta, spectral report, disc-containment check,
//! weight bounds, and the fixed-point-count estimate where an oracle
//! exists. Failing verdicts are results, not errors; only genuine
//! contradictions (a theorem's hypotheses met but its conclusion
//! certifiably false) are flagged for the exit-code contract.

use dynzeta::models::trace_sequence;
use dynzeta::spectral::{disc_lemma_check, spectral_report, weight_bound_check, Verdict};
use dynzeta::{n0_estimate, nonneg_check, rat, rat_int, zeta, Positivity, Rational,
    TruncatedSeries};
use num_traits::Zero;

use crate::config::{ConfigError, ModelConfig};
use crate::report::{
    positivity_string, trace_strings, DiscBlock, Report, SpectralBlock, ViolationBlock, ZetaBlock,
};

/// Default interval tolerance for the spectral and disc checks.
pub fn default_tol() -> Rational {
    rat(1, 1_000_000_000)
}

/// Default twist-exponent search bound for the n0 estimate.
pub const DEFAULT_MAX_TWIST: u32 = 12;

/// A finished run plus the exit-code-relevant flags.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub report: Report,
    /// True when a certified verdict contradicts a theorem: the zeta
    /// routes disagree, the disc check fails under passing positivity, or
    /// the first inequality certifiably fails on a proper model.
    pub contradiction: bool,
}

pub fn run_pipeline(cfg: &ModelConfig) -> Result<PipelineOutput, ConfigError> {
    run_pipeline_with(cfg, &default_tol(), DEFAULT_MAX_TWIST)
}

pub fn run_pipeline_with(
    cfg: &ModelConfig,
    tol: &Rational,
    max_twist: u32,
) -> Result<PipelineOutput, ConfigError> {
    let action = cfg.graded_action()?;
    let terms = cfg.resolve_terms(&action);
    let traces = trace_sequence(&action, terms);
    let z = zeta(&action, terms)?;

    // log Z = sum tr_n t^n / n, the series whose coefficient signs the
    // positivity results speak about
    let mut log_coeffs = vec![Rational::zero()];
    for (i, tr) in traces.iter().enumerate() {
        log_coeffs.push(tr / rat_int((i + 1) as i64));
    }
    let log_zeta = TruncatedSeries::new(log_coeffs);
    let positivity = nonneg_check(&log_zeta)?;

    let spectral = spectral_report(&action, tol)?;
    let disc = disc_lemma_check(&z, matches!(positivity, Positivity::Pass), tol)?;
    let violations = weight_bound_check(&action, tol)?;
    let n0 = match cfg.counted_model()? {
        Some(model) => n0_estimate(&model, max_twist)?,
        None => None,
    };

    let improper_ineq1 = action.proper() && spectral.ineq1 == Verdict::Fails;
    let contradiction = !z.agreement || disc.contradiction || improper_ineq1;

    let report = Report {
        config: cfg.clone(),
        traces: trace_strings(&traces),
        zeta: ZetaBlock::new(&z),
        positivity: positivity_string(&positivity),
        spectral: SpectralBlock::new(&spectral),
        disc: DiscBlock::new(&disc),
        n0,
        weight_violations: violations.iter().map(ViolationBlock::new).collect(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        run_hash: String::new(),
    };
    Ok(PipelineOutput {
        report,
        contradiction,
    })
}

/// Runs the pipeline for every iterate r = 1..=r_max, replacing the
/// self-map by its r-th power. For proper models a certified failure of
/// the first inequality at any r is a contradiction.
pub fn scan_iterates(
    cfg: &ModelConfig,
    r_max: u32,
    tol: &Rational,
) -> Result<Vec<PipelineOutput>, ConfigError> {
    assert!(r_max >= 1, "iterate sweep needs r_max >= 1");
    (1..=r_max)
        .map(|r| run_pipeline_with(&cfg.with_iterate(r), tol, DEFAULT_MAX_TWIST))
        .collect()
}

/// Plot rows (n, trace_n, |coeff_n(Z)|) for the CSV writer.
pub fn csv_rows(out: &PipelineOutput) -> Vec<(usize, String, String)> {
    let traces = &out.report.traces;
    let series = &out.report.zeta.series;
    (1..series.len())
        .map(|n| {
            let trace = traces
                .get(n - 1)
                .cloned()
                .unwrap_or_else(|| "0/1".to_string());
            (n, trace, abs_rational_string(&series[n]))
        })
        .collect()
}

fn abs_rational_string(s: &str) -> String {
    let r = dynzeta::rational::rational_from_str(s).expect("report rationals parse");
    let a = if r < Rational::zero() { -r } else { r };
    dynzeta::rational::rational_to_string(&a)
}
