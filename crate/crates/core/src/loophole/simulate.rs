//! Monte Carlo click simulation for a projective measurement of a traceless
//! observable with a lossy detector.
//!
//! Each eigenvector of the observable is one detector outlet. Outcomes are
//! drawn as a multinomial over the Born probabilities (sequential binomials),
//! then losses are removed according to the chosen [`LossModel`].

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::detector::DetectorModel;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, CMatrix};
use crate::states::DensityMatrix;
use crate::tolerance::STRUCTURAL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LossModel {
    /// The same count ε = ⌊(1 − η₋)·shots / outlets⌋ is removed from every
    /// outlet, as in the analytic derivation. An outlet may end with a
    /// negative detected count when ε exceeds its true count; the record
    /// flags this as unphysical. Only this model obeys ⟨S⟩_m = ⟨S⟩_t / η₋
    /// exactly for traceless S.
    #[default]
    EqualCount,
    /// Equal-count loss capped at each outlet's true count.
    EqualCountClamped,
    /// Every click is lost independently with probability 1 − η₋. Leaves
    /// the expectation value unbiased (no 1/η₋ scaling).
    Bernoulli,
}

impl LossModel {
    pub fn as_str(self) -> &'static str {
        match self {
            LossModel::EqualCount => "equal-count",
            LossModel::EqualCountClamped => "equal-count-clamped",
            LossModel::Bernoulli => "bernoulli",
        }
    }
}

impl fmt::Display for LossModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LossModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "equal-count" => Ok(LossModel::EqualCount),
            "equal-count-clamped" => Ok(LossModel::EqualCountClamped),
            "bernoulli" => Ok(LossModel::Bernoulli),
            other => Err(format!(
                "unknown loss model `{other}` (equal-count, equal-count-clamped, bernoulli)"
            )),
        }
    }
}

/// Per-outlet click counts of one simulated run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClickRecord {
    /// Eigenvalue λ_i attached to each outlet.
    pub eigenvalues: Vec<f64>,
    /// ñ_i: clicks an ideal detector would register.
    pub true_counts: Vec<u64>,
    /// ε_{−i}: clicks lost at each outlet.
    pub lost_counts: Vec<u64>,
    /// n_i = ñ_i − ε_{−i}.
    pub detected_counts: Vec<i64>,
    /// Ñ = Σ ñ_i.
    pub total_true: u64,
    /// N = Ñ − Σ ε_{−i}.
    pub total_detected: u64,
}

impl ClickRecord {
    /// True when every lost count is within its outlet's true count.
    pub fn is_physical(&self) -> bool {
        self.lost_counts.iter().zip(&self.true_counts).all(|(l, t)| l <= t)
    }

    /// N / Ñ.
    pub fn realized_eta(&self) -> f64 {
        self.total_detected as f64 / self.total_true as f64
    }

    /// Σ ñ_i λ_i / Ñ.
    pub fn true_mean(&self) -> f64 {
        weighted_mean(&self.eigenvalues, self.true_counts.iter().map(|&c| c as f64))
    }

    /// Σ n_i λ_i / N.
    pub fn measured_mean(&self) -> f64 {
        weighted_mean(&self.eigenvalues, self.detected_counts.iter().map(|&c| c as f64))
    }
}

fn weighted_mean(values: &[f64], counts: impl Iterator<Item = f64>) -> f64 {
    let (num, den) = values
        .iter()
        .zip(counts)
        .fold((0.0, 0.0), |(n, d), (&v, c)| (n + v * c, d + c));
    num / den
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationOutcome {
    pub record: ClickRecord,
    pub loss_model: LossModel,
    pub nominal_eta: f64,
    pub realized_eta: f64,
    /// Empirical ⟨S⟩_m.
    pub measured_mean: f64,
    /// Standard error of `measured_mean`.
    pub standard_error: f64,
}

pub fn simulate_clicks(
    rho: &DensityMatrix,
    observable: &CMatrix,
    shots: u64,
    det: DetectorModel,
    seed: u64,
) -> Result<SimulationOutcome> {
    simulate_clicks_with(rho, observable, shots, det, seed, LossModel::EqualCount)
}

pub fn simulate_clicks_with(
    rho: &DensityMatrix,
    observable: &CMatrix,
    shots: u64,
    det: DetectorModel,
    seed: u64,
    model: LossModel,
) -> Result<SimulationOutcome> {
    let n = rho.matrix().rows();
    if observable.rows() != n || observable.cols() != n {
        return Err(Error::dims(
            format!("{n}x{n} observable"),
            format!("{}x{}", observable.rows(), observable.cols()),
        ));
    }
    observable.check_hermitian(STRUCTURAL)?;
    let tr = observable.trace().re;
    if tr.abs() > STRUCTURAL {
        return Err(Error::NotTraceless { trace: tr });
    }
    if shots == 0 {
        return Err(Error::InvalidParameter {
            name: "shots",
            value: 0.0,
            reason: "at least one shot is required",
        });
    }

    let eig = hermitian_eig(observable)?;
    let probs: Vec<f64> = (0..n)
        .map(|k| {
            let v = eig.vector(k);
            rho.matrix().expectation(&v).map(|z| z.re.max(0.0))
        })
        .collect::<Result<_>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let true_counts = multinomial(&mut rng, shots, &probs);

    let eta = det.eta_minus();
    let lost_counts: Vec<u64> = match model {
        LossModel::EqualCount | LossModel::EqualCountClamped => {
            // The small offset keeps e.g. (1 − 0.8)·10⁶/4 from flooring to 49999.
            let eps = ((1.0 - eta) * shots as f64 / n as f64 + 1e-9).floor() as u64;
            if model == LossModel::EqualCount {
                vec![eps; n]
            } else {
                true_counts.iter().map(|&c| eps.min(c)).collect()
            }
        }
        LossModel::Bernoulli => true_counts
            .iter()
            .map(|&c| sample_binomial(&mut rng, c, 1.0 - eta))
            .collect(),
    };
    let detected_counts: Vec<i64> = true_counts
        .iter()
        .zip(&lost_counts)
        .map(|(&t, &l)| t as i64 - l as i64)
        .collect();
    let total_lost: u64 = lost_counts.iter().sum();
    let record = ClickRecord {
        eigenvalues: eig.values.clone(),
        true_counts,
        lost_counts,
        detected_counts,
        total_true: shots,
        total_detected: shots - total_lost,
    };
    if record.total_detected == 0 {
        return Err(Error::InvalidParameter {
            name: "eta_minus",
            value: eta,
            reason: "every click was lost",
        });
    }

    let measured_mean = record.measured_mean();
    let standard_error = match model {
        // ⟨S⟩_m = (Ñ/N)·(mean of the ideal sample)
        LossModel::EqualCount | LossModel::EqualCountClamped => {
            let sd = sample_sd(&record.eigenvalues, &record.true_counts);
            sd * (shots as f64).sqrt() / record.total_detected as f64
        }
        LossModel::Bernoulli => {
            let detected: Vec<u64> = record.detected_counts.iter().map(|&c| c.max(0) as u64).collect();
            sample_sd(&record.eigenvalues, &detected) / (record.total_detected as f64).sqrt()
        }
    };
    Ok(SimulationOutcome {
        realized_eta: record.realized_eta(),
        record,
        loss_model: model,
        nominal_eta: eta,
        measured_mean,
        standard_error,
    })
}

fn multinomial(rng: &mut ChaCha8Rng, shots: u64, probs: &[f64]) -> Vec<u64> {
    let total: f64 = probs.iter().sum();
    let mut remaining_mass = total;
    let mut remaining = shots;
    let mut out = Vec::with_capacity(probs.len());
    for (k, &p) in probs.iter().enumerate() {
        if k + 1 == probs.len() {
            out.push(remaining);
            break;
        }
        let q = if remaining_mass > 0.0 {
            (p / remaining_mass).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let c = sample_binomial(rng, remaining, q);
        out.push(c);
        remaining -= c;
        remaining_mass -= p;
    }
    out
}

fn sample_binomial(rng: &mut ChaCha8Rng, n: u64, p: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    Binomial::new(n, p).expect("p in (0, 1)").sample(rng)
}

fn sample_sd(values: &[f64], counts: &[u64]) -> f64 {
    let total: f64 = counts.iter().map(|&c| c as f64).sum();
    if total < 2.0 {
        return 0.0;
    }
    let mean = weighted_mean(values, counts.iter().map(|&c| c as f64));
    let ss: f64 = values
        .iter()
        .zip(counts)
        .map(|(&v, &c)| c as f64 * (v - mean) * (v - mean))
        .sum();
    (ss / (total - 1.0)).sqrt()
}
