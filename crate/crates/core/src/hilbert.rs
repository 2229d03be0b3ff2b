use serde::Serialize;

use crate::poly::binomial;

/// Graded dimensions indexed by combinatorial degree (each `e_i` in degree 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
#[serde(transparent)]
pub struct HilbertFunction(pub Vec<usize>);

impl HilbertFunction {
    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, d: usize) -> usize {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Same data indexed by doubled degree, with zeros in odd slots.
    pub fn doubled(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * self.0.len());
        for (i, &x) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(0);
            }
            out.push(x);
        }
        out
    }
}

/// Coefficients of `h(t) / (1-t)^k` in degrees `0..=d_max`.
pub fn expand_series(h: &[i64], k: usize, d_max: usize) -> Vec<i64> {
    (0..=d_max)
        .map(|d| {
            h.iter()
                .enumerate()
                .take_while(|(j, _)| *j <= d)
                .map(|(j, &hj)| {
                    let c = if k == 0 {
                        i64::from(d == j)
                    } else {
                        binomial(d - j + k - 1, k - 1) as i64
                    };
                    hj * c
                })
                .sum()
        })
        .collect()
}
