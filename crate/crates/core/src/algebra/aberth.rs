//! Simultaneous root iteration (Aberth–Ehrlich) with deflation fallback and
//! multiplicity clustering.

use crate::error::{Error, Result};
use crate::tol;
use num_complex::Complex64;

const MAX_ITER: usize = 120;
const RESTARTS: usize = 5;

/// All roots of the polynomial with the given ascending coefficients,
/// with multiplicity. Exact zero roots are stripped first, leading
/// near-zero coefficients are trimmed.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let max_mag = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max_mag == 0.0 {
        return Err(Error::InvalidInput("zero polynomial has no roots".into()));
    }
    let mut hi = coeffs.len();
    while hi > 1 && coeffs[hi - 1].norm() <= 1e-250 * max_mag {
        hi -= 1;
    }
    let mut lo = 0;
    while lo < hi - 1 && coeffs[lo].norm() == 0.0 {
        lo += 1;
    }
    let mut out = vec![Complex64::new(0.0, 0.0); lo];
    let trimmed = &coeffs[lo..hi];
    if trimmed.len() <= 1 {
        return Ok(out);
    }
    if trimmed.len() == 2 {
        out.push(-trimmed[0] / trimmed[1]);
        return Ok(out);
    }
    let mut found = aberth(trimmed)?;
    cluster(&mut found);
    out.extend(found);
    Ok(out)
}

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Backward-stable residual scale: sum of |c_k| |z|^k.
fn residual_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut scale = 0.0;
    let mut pow = 1.0;
    for c in coeffs {
        scale += c.norm() * pow;
        pow *= r;
    }
    scale.max(f64::MIN_POSITIVE)
}

fn converged(coeffs: &[Complex64], z: Complex64) -> bool {
    let (p, _) = eval_with_derivative(coeffs, z);
    p.norm() <= tol::ROOT_RESIDUAL * residual_scale(coeffs, z)
}

/// Deterministic pseudo-random unit in [0,1) used for restart perturbations.
fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z = z ^ (z >> 31);
    (z >> 11) as f64 / (1u64 << 53) as f64
}

fn initial_guesses(coeffs: &[Complex64], attempt: usize, rng: &mut u64) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    let cauchy = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max) / lead;
    let inner = (coeffs[0].norm() / lead).powf(1.0 / n as f64).max(1e-3);
    let r = (0.5 * (cauchy + inner)).min(cauchy);
    (0..n)
        .map(|k| {
            let jitter = if attempt == 0 {
                0.0
            } else {
                0.5 * splitmix(rng)
            };
            let angle = std::f64::consts::TAU * (k as f64 + 0.37) / n as f64 + 0.41 + jitter;
            let radius = r * (1.0 + 0.25 * if attempt == 0 { 0.0 } else { splitmix(rng) });
            Complex64::from_polar(radius, angle)
        })
        .collect()
}

fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let mut rng: u64 = 0x5eed_1e11_ab0_u64;
    let mut worst = f64::INFINITY;
    for attempt in 0..RESTARTS {
        let mut z = initial_guesses(coeffs, attempt, &mut rng);
        for _ in 0..MAX_ITER {
            let mut max_step = 0.0f64;
            for i in 0..n {
                let (p, dp) = eval_with_derivative(coeffs, z[i]);
                if p.norm() <= 1e-3 * tol::ROOT_RESIDUAL * residual_scale(coeffs, z[i]) {
                    continue;
                }
                let newton = if dp.norm() > 0.0 {
                    p / dp
                } else {
                    Complex64::new(1e-8, 1e-8)
                };
                let mut sum = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    if j != i {
                        let d = z[i] - z[j];
                        if d.norm() > 1e-300 {
                            sum += 1.0 / d;
                        }
                    }
                }
                let denom = 1.0 - newton * sum;
                let step = if denom.norm() > 1e-12 {
                    newton / denom
                } else {
                    newton
                };
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
            if max_step < 1e-15 {
                break;
            }
        }
        if z.iter().all(|&r| converged(coeffs, r)) {
            polish(coeffs, &mut z);
            return Ok(z);
        }
        worst = z
            .iter()
            .map(|&r| eval_with_derivative(coeffs, r).0.norm() / residual_scale(coeffs, r))
            .fold(0.0, f64::max)
            .min(worst);
    }
    deflate_all(coeffs).map_err(|_| Error::RootsDiverged {
        iterations: RESTARTS * MAX_ITER,
        residual: worst,
    })
}

fn polish(coeffs: &[Complex64], roots: &mut [Complex64]) {
    for z in roots.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(coeffs, *z);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.norm() < 0.1 * (1.0 + z.norm()) {
                    *z -= step;
                }
            }
        }
    }
}

/// Fallback: peel one root at a time by damped Newton from several starts,
/// deflating synthetically, then polish against the original polynomial.
fn deflate_all(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut rng: u64 = 0xdef1a7e_u64;
    let mut work = coeffs.to_vec();
    let mut found = Vec::new();
    while work.len() > 2 {
        let root = one_root(&work, &mut rng)?;
        found.push(root);
        // synthetic division by (z - root)
        let m = work.len() - 1;
        let mut quot = vec![Complex64::new(0.0, 0.0); m];
        let mut carry = work[m];
        for k in (0..m).rev() {
            quot[k] = carry;
            carry = work[k] + carry * root;
        }
        work = quot;
    }
    if work.len() == 2 {
        found.push(-work[0] / work[1]);
    }
    polish(coeffs, &mut found);
    let worst = found
        .iter()
        .map(|&r| eval_with_derivative(coeffs, r).0.norm() / residual_scale(coeffs, r))
        .fold(0.0, f64::max);
    if worst <= tol::ROOT_RESIDUAL {
        Ok(found)
    } else {
        Err(Error::RootsDiverged {
            iterations: MAX_ITER,
            residual: worst,
        })
    }
}

fn one_root(coeffs: &[Complex64], rng: &mut u64) -> Result<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    let bound = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max) / lead;
    for _ in 0..40 {
        let mut z = Complex64::from_polar(bound * splitmix(rng), std::f64::consts::TAU * splitmix(rng));
        for _ in 0..200 {
            let (p, dp) = eval_with_derivative(coeffs, z);
            if p.norm() <= 0.1 * tol::ROOT_RESIDUAL * residual_scale(coeffs, z) {
                return Ok(z);
            }
            if dp.norm() == 0.0 {
                break;
            }
            let mut step = p / dp;
            let cap = 0.5 * (1.0 + z.norm());
            if step.norm() > cap {
                step *= cap / step.norm();
            }
            z -= step;
        }
    }
    Err(Error::RootsDiverged {
        iterations: 40 * 200,
        residual: f64::NAN,
    })
}

/// Merge root clusters of radius `tol::ROOT_CLUSTER` to their centroid;
/// detects multiple roots smeared out by finite precision.
fn cluster(roots: &mut [Complex64]) {
    let n = roots.len();
    let mut assigned = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if assigned[i] != usize::MAX {
            continue;
        }
        assigned[i] = next;
        for j in i + 1..n {
            if assigned[j] == usize::MAX && (roots[i] - roots[j]).norm() <= tol::ROOT_CLUSTER {
                assigned[j] = next;
            }
        }
        next += 1;
    }
    for g in 0..next {
        let members: Vec<usize> = (0..n).filter(|&i| assigned[i] == g).collect();
        if members.len() > 1 {
            let mean = members.iter().map(|&i| roots[i]).sum::<Complex64>() / members.len() as f64;
            for &i in &members {
                roots[i] = mean;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::pairing;

    fn poly_from_roots(rs: &[Complex64]) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in rs {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        c
    }

    #[test]
    fn quadratic_factorization() {
        // z^2 - 1
        let r = roots(&[
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ])
        .unwrap();
        let expect = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
        assert!(pairing::multiset_distance(&r, &expect) < 1e-12);
    }

    #[test]
    fn pure_monomial_keeps_multiplicity() {
        // z^3
        let r = roots(&[
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ])
        .unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn planted_quartic_roots_recovered() {
        let planted = [
            Complex64::new(0.3, 0.7),
            Complex64::new(-1.2, 0.1),
            Complex64::new(0.9, -0.4),
            Complex64::new(-0.2, -1.5),
        ];
        let coeffs = poly_from_roots(&planted);
        let r = roots(&coeffs).unwrap();
        assert!(pairing::multiset_distance(&r, &planted) < 1e-10);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(roots(&[Complex64::new(0.0, 0.0)]).is_err());
    }
}
