//! Exhaustive verification campaigns: every closed form is compared against
//! the recursive oracle over a whole range of inputs, and every
//! disagreement is collected rather than aborting the run.
//!
//! Work fans out over independent top elements. Results are gathered in
//! input order, so a report depends only on its parameters.

mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

pub use report::{Mismatch, ReportFormat, VerificationReport};

use crate::error::{Error, Result};
use crate::formulas::{
    adjacency_free_contains, m_bottom_mobius, m_bottom_mobius_from_stats, mw_interval_mobius,
    one_descent_mobius, Shape,
};
use crate::perm::{all_of_length, at_most_one_descent, Direction, Permutation};
use crate::poset::{mobius, mobius_top, Downset, MAX_ORACLE_LEN};

/// Default depths, sized for a run of a few minutes at most.
pub const DEFAULT_THEOREM4_MAX_N: usize = 8;
pub const DEFAULT_CONJ1_MAX_N: usize = 4;
pub const DEFAULT_CONJ2_MAX_M: usize = 3;
pub const DEFAULT_CONJ2_MAX_N: usize = 9;
pub const DEFAULT_LEMMAS_MAX_N: usize = 8;

/// Depths used with `--extended`.
pub const EXTENDED_THEOREM4_MAX_N: usize = 10;
pub const EXTENDED_CONJ1_MAX_N: usize = 5;
pub const EXTENDED_CONJ2_MAX_M: usize = 5;
pub const EXTENDED_CONJ2_MAX_N: usize = 11;
pub const EXTENDED_LEMMAS_MAX_N: usize = 9;

#[derive(Debug, Clone, Copy, Default)]
pub struct CampaignOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
}

impl CampaignOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        CampaignOptions { jobs: Some(jobs) }
    }

    fn fan_out<T, R, F>(&self, items: &[T], f: F) -> Result<Vec<R>>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Result<R> + Sync + Send,
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.unwrap_or(0))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| items.par_iter().map(f).collect())
    }
}

#[derive(Default)]
struct Tally {
    total: u64,
    mismatches: Vec<Mismatch>,
}

impl Tally {
    fn record(&mut self, outcome: Option<Mismatch>) {
        self.total += 1;
        self.mismatches.extend(outcome);
    }

    fn record_all(&mut self, outcomes: impl IntoIterator<Item = Option<Mismatch>>) {
        for o in outcomes {
            self.record(o);
        }
    }

    fn finish(
        self,
        campaign: &str,
        parameters: BTreeMap<String, i64>,
        started: Instant,
        flags: Vec<String>,
    ) -> VerificationReport {
        let failed = self.mismatches.len() as u64;
        VerificationReport {
            campaign: campaign.to_string(),
            parameters,
            total_checked: self.total,
            passed: self.total - failed,
            failed,
            mismatches: self.mismatches,
            runtime_ms: started.elapsed().as_millis() as u64,
            flags,
        }
    }
}

fn params(pairs: &[(&str, usize)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v as i64)).collect()
}

fn check_range(name: &str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::InvalidParameter(format!(
            "{name} must be in {lo}..={hi}, got {value}"
        )));
    }
    Ok(())
}

/// Closed form for `μ(1, π)` against the oracle, for every `π` with at most
/// one descent and `1 ≤ |π| ≤ max_n`.
pub fn verify_theorem4(max_n: usize, opts: &CampaignOptions) -> Result<VerificationReport> {
    check_range("max_n", max_n, 3, 10)?;
    let started = Instant::now();
    let items: Vec<Permutation> = (1..=max_n).flat_map(at_most_one_descent).collect();
    let outcomes = opts.fan_out(&items, |pi| {
        let oracle = mobius_top(pi)?;
        let formula = one_descent_mobius(pi);
        let ok = matches!(&formula, Ok(v) if v.value == oracle);
        Ok((!ok).then(|| Mismatch {
            pi: pi.to_string(),
            sigma: None,
            formula_value: formula.as_ref().ok().map(|v| v.value),
            oracle_value: oracle,
            case_label: formula.ok().map(|v| v.case.label().to_string()),
        }))
    })?;
    let mut tally = Tally::default();
    tally.record_all(outcomes);
    Ok(tally.finish("theorem4", params(&[("max_n", max_n)]), started, Vec::new()))
}

/// Conjectured `μ(σ, M_k)` and `μ(σ, W_k)` against the oracle, for
/// `2 ≤ k ≤ max_n` and every one-descent `σ` strictly below the top.
pub fn verify_conjecture1(max_n: usize, opts: &CampaignOptions) -> Result<VerificationReport> {
    check_range("max_n", max_n, 2, MAX_ORACLE_LEN / 2)?;
    let started = Instant::now();
    let mut items: Vec<(Shape, usize, Permutation)> = Vec::new();
    for k in 2..=max_n {
        for shape in [Shape::M, Shape::W] {
            let top = shape.build(k)?;
            items.extend(
                Downset::new(&top)
                    .members()
                    .filter(|s| s.descent_count() == 1 && **s != top)
                    .map(|s| (shape, k, s.clone())),
            );
        }
    }
    let outcomes = opts.fan_out(&items, |(shape, k, sigma)| {
        let top = shape.build(*k)?;
        let oracle = mobius(sigma, &top)?;
        let formula = mw_interval_mobius(sigma, *shape, *k);
        let ok = matches!(&formula, Ok(v) if v.value == oracle);
        Ok((!ok).then(|| Mismatch {
            pi: top.to_string(),
            sigma: Some(sigma.to_string()),
            formula_value: formula.as_ref().ok().map(|v| v.value),
            oracle_value: oracle,
            case_label: Some(match &formula {
                Ok(v) => format!("{shape}:{}", v.branch),
                Err(e) => format!("{shape}:error: {e}"),
            }),
        }))
    })?;
    let mut tally = Tally::default();
    tally.record_all(outcomes);
    Ok(tally.finish("conjecture1", params(&[("max_n", max_n)]), started, Vec::new()))
}

/// Conjectured `μ(M_m, π)` against the oracle, for `2 ≤ m ≤ max_m` and every
/// `π` with at most one descent, `|π| ≤ max_n`, containing `M_m`.
///
/// Instances where taking `β` after zero removal would change the value are
/// counted and reported as a flag.
pub fn verify_conjecture2(
    max_m: usize,
    max_n: usize,
    opts: &CampaignOptions,
) -> Result<VerificationReport> {
    if max_m < 2 || 2 * max_m > max_n {
        return Err(Error::InvalidParameter(format!(
            "need max_m >= 2 and 2*max_m <= max_n, got max_m={max_m}, max_n={max_n}"
        )));
    }
    check_range("max_n", max_n, 4, MAX_ORACLE_LEN)?;
    let started = Instant::now();
    let mut items: Vec<(usize, Permutation)> = Vec::new();
    for m in 2..=max_m {
        let bottom = Permutation::m_form(m)?;
        for n in 2 * m..=max_n {
            items.extend(
                at_most_one_descent(n)
                    .into_iter()
                    .filter(|pi| pi.contains(&bottom))
                    .map(|pi| (m, pi)),
            );
        }
    }
    let outcomes = opts.fan_out(&items, |(m, pi)| {
        let bottom = Permutation::m_form(*m)?;
        let oracle = mobius(&bottom, pi)?;
        let formula = m_bottom_mobius(*m, pi);
        let value = formula.as_ref().ok().map(|(v, _)| *v);
        let mut reading_differs = false;
        if let Ok((v, stats)) = &formula {
            if *v != 0 {
                if let Some(alt) = stats.beta_after_zero_removal() {
                    reading_differs = m_bottom_mobius_from_stats(&alt).ok() != Some(*v);
                }
            }
        }
        let mismatch = (value != Some(oracle)).then(|| Mismatch {
            pi: pi.to_string(),
            sigma: Some(bottom.to_string()),
            formula_value: value,
            oracle_value: oracle,
            case_label: formula.err().map(|e| e.to_string()),
        });
        Ok((mismatch, reading_differs))
    })?;
    let mut tally = Tally::default();
    let mut differing = 0usize;
    for (mismatch, reading_differs) in outcomes {
        tally.record(mismatch);
        differing += usize::from(reading_differs);
    }
    let flags = if differing > 0 {
        vec![format!(
            "beta taken after zero removal would change {differing} of {} values",
            tally.total
        )]
    } else {
        Vec::new()
    };
    Ok(tally.finish(
        "conjecture2",
        params(&[("max_m", max_m), ("max_n", max_n)]),
        started,
        flags,
    ))
}

/// Names of the property sweeps run by [`verify_lemmas`], in order.
pub const LEMMA_PROPERTIES: [&str; 6] = [
    "basis",
    "triple-adjacency",
    "long-run",
    "adjacency-free-containment",
    "single-deletion-cancellation",
    "four-term-cancellation",
];

fn property_mismatch(
    property: &str,
    pi: &Permutation,
    sigma: Option<&Permutation>,
    expected: Option<i64>,
    observed: i64,
) -> Mismatch {
    Mismatch {
        pi: pi.to_string(),
        sigma: sigma.map(|s| s.to_string()),
        formula_value: expected,
        oracle_value: observed,
        case_label: Some(property.to_string()),
    }
}

/// One-descent permutations of length `m` with exactly one descent.
fn exactly_one_descent(m: usize) -> Vec<Permutation> {
    at_most_one_descent(m)
        .into_iter()
        .filter(|p| p.descent_count() == 1)
        .collect()
}

/// Runs the six structural property sweeps up to length `max_n`. Per-property
/// counts are reported as `<property>_checked` parameters, and each mismatch
/// carries the property name as its case label.
pub fn verify_lemmas(max_n: usize, opts: &CampaignOptions) -> Result<VerificationReport> {
    check_range("max_n", max_n, 3, 9)?;
    let started = Instant::now();
    let mut parameters = params(&[("max_n", max_n)]);
    let mut tally = Tally::default();
    let mut run = |name: &str, outcomes: Vec<Option<Mismatch>>| {
        parameters.insert(format!("{name}_checked"), outcomes.len() as i64);
        tally.record_all(outcomes);
    };

    let everything: Vec<Permutation> = (1..=max_n).flat_map(all_of_length).collect();

    // At most one descent iff 321, 2143 and 3142 are all avoided.
    let basis: Vec<Permutation> = ["321", "2143", "3142"]
        .iter()
        .map(|s| s.parse().expect("basis literal"))
        .collect();
    run(
        LEMMA_PROPERTIES[0],
        opts.fan_out(&everything, |pi| {
            let in_class = pi.has_at_most_one_descent();
            let avoids = basis.iter().all(|b| !pi.contains(b));
            Ok((in_class != avoids)
                .then(|| property_mismatch(LEMMA_PROPERTIES[0], pi, None, Some(in_class as i64), avoids as i64)))
        })?,
    );

    // A monotone run of three consecutive values forces μ(1, π) = 0.
    let with_triple: Vec<&Permutation> = everything
        .iter()
        .filter(|p| p.has_triple_adjacency(Direction::Increasing) || p.has_triple_adjacency(Direction::Decreasing))
        .collect();
    run(
        LEMMA_PROPERTIES[1],
        opts.fan_out(&with_triple, |pi| {
            let mu = mobius_top(pi)?;
            Ok((mu != 0).then(|| property_mismatch(LEMMA_PROPERTIES[1], pi, None, Some(0), mu)))
        })?,
    );

    // A monotone run of length k >= 3 forces μ(12…(k−2), π) = 0.
    let long_runs: Vec<(usize, &Permutation)> = everything
        .iter()
        .flat_map(|p| {
            let run = p.longest_run(Direction::Increasing).max(p.longest_run(Direction::Decreasing));
            (3..=5).filter(move |&k| run >= k).map(move |k| (k, p))
        })
        .collect();
    run(
        LEMMA_PROPERTIES[2],
        opts.fan_out(&long_runs, |(k, pi)| {
            let lower = Permutation::increasing(k - 2);
            let mu = mobius(&lower, pi)?;
            Ok((mu != 0).then(|| property_mismatch(LEMMA_PROPERTIES[2], pi, Some(&lower), Some(0), mu)))
        })?,
    );

    // The classifier for adjacency-free tops agrees with direct search.
    let mut pairs: Vec<(Permutation, Permutation)> = Vec::new();
    for n in 4..=max_n {
        let tops: Vec<_> = exactly_one_descent(n)
            .into_iter()
            .filter(|p| p.adjacency_count() == 0)
            .collect();
        for m in 2..n {
            for sigma in exactly_one_descent(m).into_iter().filter(|s| s.adjacency_count() <= 2) {
                for top in &tops {
                    pairs.push((top.clone(), sigma.clone()));
                }
            }
        }
    }
    run(
        LEMMA_PROPERTIES[3],
        opts.fan_out(&pairs, |(pi, sigma)| {
            let predicted = adjacency_free_contains(pi, sigma)?;
            let actual = pi.contains(sigma);
            Ok((predicted != actual).then(|| {
                property_mismatch(LEMMA_PROPERTIES[3], pi, Some(sigma), Some(predicted as i64), actual as i64)
            }))
        })?,
    );

    // Deleting 1 or m from a nonzero σ keeping its adjacency count negates μ.
    let singles: Vec<Permutation> = (4..=max_n).flat_map(exactly_one_descent).collect();
    let single_outcomes: Vec<Vec<Option<Mismatch>>> = opts.fan_out(&singles, |sigma| {
        single_deletion_checks(sigma)
    })?;
    run(LEMMA_PROPERTIES[4], single_outcomes.into_iter().flatten().collect());

    // μ(σ) + μ(σ∖1) + μ(σ∖m) + μ(σ∖{1,m}) = 0.
    let quads: Vec<Permutation> = (5..=max_n).flat_map(exactly_one_descent).collect();
    let quad_outcomes: Vec<Option<Option<Mismatch>>> = opts.fan_out(&quads, |sigma| {
        let m = sigma.len() as u32;
        let adj = sigma.adjacencies(Direction::Increasing);
        if adj.is_empty() || adj.iter().any(|a| a.value == 1 || a.value == m - 1) {
            return Ok(None);
        }
        let mu = mobius_top(sigma)?;
        if mu == 0 {
            return Ok(None);
        }
        let total = mu
            + mobius_top(&sigma.delete_value(1)?)?
            + mobius_top(&sigma.delete_value(m)?)?
            + mobius_top(&sigma.delete_values(&[1, m])?)?;
        Ok(Some((total != 0).then(|| property_mismatch(LEMMA_PROPERTIES[5], sigma, None, Some(0), total))))
    })?;
    run(LEMMA_PROPERTIES[5], quad_outcomes.into_iter().flatten().collect());

    Ok(tally.finish("lemmas", parameters, started, Vec::new()))
}

/// Single-deletion cancellation for one `σ`; empty when `σ` does not qualify.
fn single_deletion_checks(sigma: &Permutation) -> Result<Vec<Option<Mismatch>>> {
    let name = LEMMA_PROPERTIES[4];
    let m = sigma.len() as u32;
    let adj = sigma.adjacencies(Direction::Increasing);
    let interior = |v: u32| v != 1 && v != m - 1;
    let qualifies = match adj.len() {
        1 | 2 => adj.iter().any(|a| interior(a.value)),
        _ => false,
    };
    if !qualifies {
        return Ok(Vec::new());
    }
    let mu = mobius_top(sigma)?;
    if mu == 0 {
        return Ok(Vec::new());
    }
    let candidates: Vec<u32> = if adj.len() == 1 {
        let descent = sigma.descents()[0];
        vec![if adj[0].position < descent { m } else { 1 }]
    } else {
        vec![1, m]
    };
    let mut out = Vec::new();
    for v in candidates {
        let lambda = sigma.delete_value(v)?;
        if lambda.adjacency_count() != adj.len() {
            // Two adjacencies: this deletion broke one, so it is not a witness.
            if adj.len() == 2 {
                continue;
            }
            out.push(Some(property_mismatch(name, sigma, Some(&lambda), Some(-mu), mobius_top(&lambda)?)));
            continue;
        }
        let mu_lambda = mobius_top(&lambda)?;
        out.push((mu_lambda + mu != 0).then(|| property_mismatch(name, sigma, Some(&lambda), Some(-mu), mu_lambda)));
    }
    if out.is_empty() {
        out.push(Some(property_mismatch(name, sigma, None, None, mu)));
    }
    Ok(out)
}
