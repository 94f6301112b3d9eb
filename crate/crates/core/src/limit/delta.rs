//! δ = μ([0, ∞)) by a chosen method.

use serde::{Deserialize, Serialize};

use super::fourier::{delta_by_inversion_spectrum, FourierDelta};
use super::sampling::{sample_li_spectrum, DeltaMethod};
use super::spectrum::Spectrum;
use crate::error::{Error, Result};
use crate::zeros::ZeroSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaParams {
    pub n_samples: u64,
    pub seed: u64,
    /// Use Monte Carlo when inversion is refused.
    pub allow_fallback: bool,
}

impl Default for DeltaParams {
    fn default() -> Self {
        DeltaParams {
            n_samples: 1_000_000,
            seed: 0,
            allow_fallback: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaEstimate {
    pub value: f64,
    /// Binomial standard error for Monte Carlo, quadrature error for inversion.
    pub error: f64,
    /// The method that produced `value`.
    pub method: DeltaMethod,
    pub fourier: Option<FourierDelta>,
    /// Why inversion was refused, when a fallback happened.
    pub fallback_reason: Option<String>,
}

pub fn delta_estimate(
    zs: &ZeroSet,
    mean: f64,
    t: f64,
    method: DeltaMethod,
    params: DeltaParams,
) -> Result<DeltaEstimate> {
    let spec = Spectrum::new(zs, mean, t);
    if spec.is_empty() {
        // Point mass at the mean; the boundary belongs to the nonnegative side.
        return Ok(DeltaEstimate {
            value: if mean >= 0.0 { 1.0 } else { 0.0 },
            error: 0.0,
            method,
            fourier: None,
            fallback_reason: None,
        });
    }
    match method {
        DeltaMethod::Montecarlo => Ok(monte_carlo(&spec, params, None)),
        DeltaMethod::FourierInversion => match delta_by_inversion_spectrum(&spec) {
            Ok(fd) => Ok(DeltaEstimate {
                value: fd.delta,
                error: fd.error,
                method,
                fourier: Some(fd),
                fallback_reason: None,
            }),
            Err(Error::InsufficientDecay(why)) if params.allow_fallback => {
                Ok(monte_carlo(&spec, params, Some(why)))
            }
            Err(e) => Err(e),
        },
    }
}

fn monte_carlo(spec: &Spectrum, params: DeltaParams, reason: Option<String>) -> DeltaEstimate {
    let s = sample_li_spectrum(spec, params.n_samples.max(1), params.seed);
    DeltaEstimate {
        value: s.delta_estimate,
        error: s.delta_stderr,
        method: DeltaMethod::Montecarlo,
        fourier: None,
        fallback_reason: reason,
    }
}
