//! Simplex-reflection (Nelder–Mead) local minimizer.
//!
//! The objectives in this crate are smooth and low-dimensional; phase
//! parameters are periodic so the search runs unconstrained and any
//! bound handling lives in the objective itself.

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iters: usize,
    pub converged: bool,
}

pub struct NelderMead {
    pub step: f64,
    pub f_tol: f64,
    pub max_iters: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            step: 0.3,
            f_tol: 1e-10,
            max_iters: 0, // 0 = scale with dimension
        }
    }
}

const ALPHA: f64 = 1.0; // reflection
const GAMMA: f64 = 2.0; // expansion
const RHO: f64 = 0.5; // contraction
const SIGMA: f64 = 0.5; // shrink

impl NelderMead {
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, x0: &[f64], mut f: F) -> NelderMeadResult {
        let n = x0.len();
        let max_iters = if self.max_iters == 0 {
            400 * n
        } else {
            self.max_iters
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        let fx0 = f(x0);
        simplex.push((x0.to_vec(), fx0));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += self.step;
            let fx = f(&x);
            simplex.push((x, fx));
        }

        let mut iters = 0;
        let mut converged = false;
        while iters < max_iters {
            iters += 1;
            simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
            let spread = simplex[n].1 - simplex[0].1;
            if spread.abs() < self.f_tol {
                converged = true;
                break;
            }

            // Centroid of all but the worst vertex.
            let mut centroid = vec![0.0; n];
            for (x, _) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / n as f64;
                }
            }

            let worst = simplex[n].clone();
            let reflect: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + ALPHA * (c - w))
                .collect();
            let f_reflect = f(&reflect);

            if f_reflect < simplex[0].1 {
                let expand: Vec<f64> = centroid
                    .iter()
                    .zip(&worst.0)
                    .map(|(c, w)| c + GAMMA * (c - w))
                    .collect();
                let f_expand = f(&expand);
                simplex[n] = if f_expand < f_reflect {
                    (expand, f_expand)
                } else {
                    (reflect, f_reflect)
                };
            } else if f_reflect < simplex[n - 1].1 {
                simplex[n] = (reflect, f_reflect);
            } else {
                let contract: Vec<f64> = centroid
                    .iter()
                    .zip(&worst.0)
                    .map(|(c, w)| c + RHO * (w - c))
                    .collect();
                let f_contract = f(&contract);
                if f_contract < worst.1 {
                    simplex[n] = (contract, f_contract);
                } else {
                    // Shrink toward the best vertex.
                    let best = simplex[0].0.clone();
                    for vertex in simplex.iter_mut().skip(1) {
                        for (xi, bi) in vertex.0.iter_mut().zip(&best) {
                            *xi = bi + SIGMA * (*xi - bi);
                        }
                        vertex.1 = f(&vertex.0);
                    }
                }
            }
        }

        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        NelderMeadResult {
            x: simplex[0].0.clone(),
            f: simplex[0].1,
            iters,
            converged,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_quadratic() {
        let nm = NelderMead::default();
        let r = nm.minimize(&[3.0, -2.0], |x| {
            (x[0] - 1.0).powi(2) + 10.0 * (x[1] + 0.5).powi(2)
        });
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-4);
        assert!((r.x[1] + 0.5).abs() < 1e-4);
    }

    #[test]
    fn minimizes_rosenbrock() {
        let nm = NelderMead {
            step: 0.5,
            f_tol: 1e-12,
            max_iters: 5000,
        };
        let r = nm.minimize(&[-1.2, 1.0], |x| {
            100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2)
        });
        assert!(r.f < 1e-8);
    }
}
