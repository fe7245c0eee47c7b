//! Dyadic-block regression of growth exponents.

use serde::Serialize;

use crate::error::{Error, Result};

/// Fewest blocks a fit accepts.
pub const MIN_BLOCKS: usize = 4;

/// Largest `|value|` in `[2^k, 2^{k+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DyadicBlock {
    pub k: u32,
    pub samples: usize,
    pub t_at_max: u64,
    pub max_abs: f64,
    /// Fitted minus observed `ln max_abs`.
    pub residual: f64,
}

/// Least-squares slope of `ln max_abs` against `ln t_at_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    /// `slope -+ 2 stderr`.
    pub band: (f64, f64),
    pub blocks: Vec<DyadicBlock>,
}

/// Groups `(t, value)` by dyadic block and fits the block maxima.
///
/// Blocks with fewer than `min_samples` points, or a zero maximum, are dropped.
pub fn fit_dyadic(points: &[(u64, f64)], min_samples: usize) -> Result<ExponentFit> {
    let mut blocks: Vec<DyadicBlock> = Vec::new();
    for &(t, v) in points.iter().filter(|p| p.0 >= 1) {
        let k = 63 - t.leading_zeros();
        let a = v.abs();
        match blocks.iter_mut().find(|b| b.k == k) {
            Some(b) => {
                b.samples += 1;
                if a > b.max_abs {
                    b.max_abs = a;
                    b.t_at_max = t;
                }
            }
            None => blocks.push(DyadicBlock {
                k,
                samples: 1,
                t_at_max: t,
                max_abs: a,
                residual: 0.0,
            }),
        }
    }
    blocks.retain(|b| b.samples >= min_samples.max(1) && b.max_abs > 0.0);
    blocks.sort_by_key(|b| b.k);
    if blocks.len() < MIN_BLOCKS {
        return Err(Error::TooFewBlocks {
            found: blocks.len(),
            needed: MIN_BLOCKS,
        });
    }
    let xs: Vec<f64> = blocks.iter().map(|b| (b.t_at_max as f64).ln()).collect();
    let ys: Vec<f64> = blocks.iter().map(|b| b.max_abs.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("all block maxima at the same t".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut sse = 0.0;
    for (b, (x, y)) in blocks.iter_mut().zip(xs.iter().zip(&ys)) {
        b.residual = intercept + slope * x - y;
        sse += b.residual * b.residual;
    }
    let stderr = (sse / (n - 2.0) / sxx).sqrt();
    Ok(ExponentFit {
        slope,
        intercept,
        stderr,
        band: (slope - 2.0 * stderr, slope + 2.0 * stderr),
        blocks,
    })
}

/// Exponent fit of `|delta|` over a scan.
pub fn fit_exponent(records: &[super::ScanRecord], min_samples: usize) -> Result<ExponentFit> {
    let points: Vec<(u64, f64)> = records.iter().map(|r| (r.t, r.delta)).collect();
    fit_dyadic(&points, min_samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power() {
        let pts: Vec<(u64, f64)> = (1..5000u64).map(|t| (t, (t as f64).powf(0.25))).collect();
        let fit = fit_dyadic(&pts, 1).unwrap();
        assert!((fit.slope - 0.25).abs() < 1e-6);
        assert!(fit.stderr < 1e-6);
    }

    #[test]
    fn too_few() {
        let pts: Vec<(u64, f64)> = (1..8u64).map(|t| (t, 1.0)).collect();
        assert!(matches!(fit_dyadic(&pts, 1), Err(Error::TooFewBlocks { found: 3, .. })));
    }

    #[test]
    fn min_samples_drops_small_blocks() {
        let pts: Vec<(u64, f64)> = (1..1024u64).map(|t| (t, t as f64)).collect();
        let fit = fit_dyadic(&pts, 64).unwrap();
        assert_eq!(fit.blocks[0].k, 6);
    }
}
