//! Orthonormal discrete Haar pyramid.
//!
//! The mother wavelet is `-1` on the first half of its support and `+1` on
//! the second, so a pair `(a, b)` maps to scaling `(a + b)/sqrt2` and detail
//! `(b - a)/sqrt2`. Level `j` holds `2^j` detail coefficients,
//! `j = 0..log2(n)`, level 0 being the coarsest.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct WaveletCoeffs {
    pub scaling: f64,
    pub details: Vec<Vec<f64>>,
}

impl WaveletCoeffs {
    /// Signal length `2^levels`.
    pub fn len(&self) -> usize {
        1 << self.details.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn energy(&self) -> f64 {
        self.scaling * self.scaling + self.details.iter().flatten().map(|d| d * d).sum::<f64>()
    }

    fn check(&self) -> Result<()> {
        for (j, level) in self.details.iter().enumerate() {
            if level.len() != 1 << j {
                return Err(invalid(format!(
                    "detail level {j} has {} coefficients, expected {}",
                    level.len(),
                    1usize << j
                )));
            }
        }
        Ok(())
    }
}

pub fn haar_forward(v: &[f64]) -> Result<WaveletCoeffs> {
    let n = v.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(invalid(format!("Haar transform needs a power-of-two length (got {n})")));
    }
    let levels = n.trailing_zeros() as usize;
    let mut details = vec![Vec::new(); levels];
    let mut approx = v.to_vec();
    for j in (0..levels).rev() {
        let half = approx.len() / 2;
        let mut next = Vec::with_capacity(half);
        let mut d = Vec::with_capacity(half);
        for pair in approx.chunks_exact(2) {
            next.push((pair[0] + pair[1]) * FRAC_1_SQRT_2);
            d.push((pair[1] - pair[0]) * FRAC_1_SQRT_2);
        }
        details[j] = d;
        approx = next;
    }
    Ok(WaveletCoeffs { scaling: approx[0], details })
}

pub fn haar_inverse(c: &WaveletCoeffs) -> Result<Vec<f64>> {
    c.check()?;
    let mut approx = vec![c.scaling];
    for d in &c.details {
        let mut next = Vec::with_capacity(2 * approx.len());
        for (s, dj) in approx.iter().zip(d) {
            next.push((s - dj) * FRAC_1_SQRT_2);
            next.push((s + dj) * FRAC_1_SQRT_2);
        }
        approx = next;
    }
    Ok(approx)
}
