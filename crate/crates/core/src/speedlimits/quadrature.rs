use crate::error::{Error, Result};

/// Composite Simpson over uniformly spaced samples; needs an even number of intervals.
pub fn simpson(values: &[f64], h: f64) -> Result<f64> {
    let intervals = values.len().saturating_sub(1);
    if !intervals.is_multiple_of(2) {
        return Err(Error::OddStepCount { steps: intervals });
    }
    if intervals == 0 {
        return Ok(0.0);
    }
    let mut acc = values[0] + values[intervals];
    for (i, v) in values.iter().enumerate().take(intervals).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    Ok(acc * h / 3.0)
}

/// Running Simpson integrals `∫₀^{t_k}` for every even `k`; odd entries are NaN.
pub fn cumulative_simpson(values: &[f64], h: f64) -> Vec<f64> {
    let mut out = vec![f64::NAN; values.len()];
    if values.is_empty() {
        return out;
    }
    out[0] = 0.0;
    let mut k = 2;
    while k < values.len() {
        out[k] = out[k - 2] + h / 3.0 * (values[k - 2] + 4.0 * values[k - 1] + values[k]);
        k += 2;
    }
    out
}
