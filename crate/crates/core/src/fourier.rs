//! Spectral helpers on the periodic grid theta_j = 2*pi*j/N: trigonometric
//! interpolation, differentiation, antiderivatives, and monotone circle lifts.

use crate::error::{Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::{PI, TAU};

/// Forward DFT normalized so the output holds Fourier coefficients
/// c_k = (1/N) sum_j f_j e^{-ik theta_j}, in FFT index order.
pub fn coefficients(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    for c in &mut buf {
        *c *= scale;
    }
    buf
}

/// Inverse of [`coefficients`]: samples at the uniform grid.
pub fn samples(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let mut buf = coeffs.to_vec();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    buf
}

/// Signed frequency of FFT bin `j` for length `n`.
fn freq(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// Trigonometric interpolant of a smooth 2*pi-periodic function given by
/// uniform samples. The Nyquist mode is split symmetrically so real data
/// interpolates to real values.
#[derive(Debug, Clone)]
pub struct Trig {
    coeffs: Vec<Complex64>,
}

impl Trig {
    pub fn interpolate(samples: &[Complex64]) -> Trig {
        Trig {
            coeffs: coefficients(samples),
        }
    }

    pub fn from_real(samples: &[f64]) -> Trig {
        let buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Trig::interpolate(&buf)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let n = self.coeffs.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &c) in self.coeffs.iter().enumerate() {
            let k = freq(j, n);
            if n % 2 == 0 && j == n / 2 {
                // split the Nyquist bin between +k and -k
                let e = Complex64::from_polar(1.0, k as f64 * t);
                acc += 0.5 * c * (e + e.conj());
            } else {
                acc += c * Complex64::from_polar(1.0, k as f64 * t);
            }
        }
        acc
    }

    pub fn eval_deriv(&self, t: f64) -> Complex64 {
        let n = self.coeffs.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &c) in self.coeffs.iter().enumerate() {
            let k = freq(j, n);
            if n % 2 == 0 && j == n / 2 {
                // d/dt of the symmetric Nyquist pair: ik/2 (e - conj e)
                let e = Complex64::from_polar(1.0, k as f64 * t);
                acc += 0.5 * c * Complex64::i() * k as f64 * (e - e.conj());
            } else {
                acc += c * Complex64::i() * k as f64 * Complex64::from_polar(1.0, k as f64 * t);
            }
        }
        acc
    }

    /// Spectral derivative at the grid nodes.
    pub fn deriv_samples(&self) -> Vec<Complex64> {
        let n = self.coeffs.len();
        let mut dc: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| c * Complex64::i() * freq(j, n) as f64)
            .collect();
        if n % 2 == 0 {
            dc[n / 2] = Complex64::new(0.0, 0.0);
        }
        samples(&dc)
    }

    /// Largest coefficient magnitude in the top half of the spectrum,
    /// a proxy for the interpolation error of analytic data.
    pub fn tail(&self) -> f64 {
        let n = self.coeffs.len();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(j, _)| freq(*j, n).unsigned_abs() as usize > n / 4)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// Upsample to `m >= n` points by zero-padding the spectrum.
    pub fn upsample(&self, m: usize) -> Vec<Complex64> {
        let n = self.coeffs.len();
        assert!(m >= n);
        let mut padded = vec![Complex64::new(0.0, 0.0); m];
        for (j, &c) in self.coeffs.iter().enumerate() {
            let k = freq(j, n);
            if n % 2 == 0 && j == n / 2 {
                // split the Nyquist bin between +k and -k
                padded[k as usize] += 0.5 * c;
                padded[m - k as usize] += 0.5 * c;
            } else if k >= 0 {
                padded[k as usize] = c;
            } else {
                padded[(m as i64 + k) as usize] = c;
            }
        }
        samples(&padded)
    }
}

/// Monotone lift u with u(t + 2*pi) = u(t) + 2*pi*winding, stored as the
/// linear part plus a trigonometric interpolant of the periodic remainder.
#[derive(Debug, Clone)]
pub struct Lift {
    winding: f64,
    periodic: Trig,
    grid: usize,
}

impl Lift {
    /// Build from samples u_j = u(2*pi*j/N). `winding` is exact (stored, not
    /// estimated), so u_j - winding * theta_j must be periodic.
    pub fn from_samples(samples: &[f64], winding: f64) -> Lift {
        let n = samples.len();
        let periodic: Vec<f64> = samples
            .iter()
            .enumerate()
            .map(|(j, &u)| u - winding * TAU * j as f64 / n as f64)
            .collect();
        Lift {
            winding,
            periodic: Trig::from_real(&periodic),
            grid: n,
        }
    }

    /// Sample an arbitrary lift function onto a uniform grid.
    pub fn resample(f: impl Fn(f64) -> f64, n: usize, winding: f64) -> Lift {
        let samples: Vec<f64> = (0..n).map(|j| f(TAU * j as f64 / n as f64)).collect();
        Lift::from_samples(&samples, winding)
    }

    pub fn winding(&self) -> f64 {
        self.winding
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.winding * t + self.periodic.eval(t).re
    }

    pub fn deriv(&self, t: f64) -> f64 {
        self.winding + self.periodic.eval_deriv(t).re
    }

    pub fn node_values(&self) -> Vec<f64> {
        (0..self.grid)
            .map(|j| self.eval(TAU * j as f64 / self.grid as f64))
            .collect()
    }

    /// Spectral tail of the periodic part.
    pub fn tail(&self) -> f64 {
        self.periodic.tail()
    }

    /// Strict monotonicity of the stored samples (cyclically, with the wrap).
    pub fn strictly_increasing(&self) -> bool {
        let vals = self.node_values();
        let n = vals.len();
        (0..n).all(|j| {
            let next = if j + 1 == n {
                vals[0] + TAU * self.winding
            } else {
                vals[j + 1]
            };
            next > vals[j]
        })
    }

    /// Solve u(t) = y for the monotone lift by bisection sharpened with Newton.
    pub fn invert(&self, y: f64) -> Result<f64> {
        if self.winding <= 0.0 {
            return Err(Error::InvalidInput(
                "cannot invert a lift with non-positive winding".into(),
            ));
        }
        let mut lo = (y - self.eval(0.0)) / self.winding - PI;
        let mut hi = lo + TAU + 2.0 * PI;
        // widen until bracketed (the periodic part is bounded)
        for _ in 0..64 {
            if self.eval(lo) <= y {
                break;
            }
            lo -= TAU;
        }
        for _ in 0..64 {
            if self.eval(hi) >= y {
                break;
            }
            hi += TAU;
        }
        if self.eval(lo) > y || self.eval(hi) < y {
            return Err(Error::InvalidInput("lift inversion bracket failed".into()));
        }
        let mut t = 0.5 * (lo + hi);
        for _ in 0..200 {
            let f = self.eval(t) - y;
            if f.abs() < 1e-14 * (1.0 + y.abs()) {
                return Ok(t);
            }
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let d = self.deriv(t);
            let newton = if d > 0.0 { t - f / d } else { f64::NAN };
            t = if newton.is_finite() && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        Ok(t)
    }
}

/// Spectral antiderivative: given uniform samples of f, returns the lift
/// F(t) = mean(f) * t + (periodic antiderivative), with F(0) = base.
pub fn antiderivative(samples_f: &[f64], base: f64) -> Lift {
    let n = samples_f.len();
    let buf: Vec<Complex64> = samples_f.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let coeffs = coefficients(&buf);
    let mean = coeffs[0].re;
    let mut anti = vec![Complex64::new(0.0, 0.0); n];
    for (j, &c) in coeffs.iter().enumerate() {
        let k = freq(j, n);
        if k != 0 && !(n % 2 == 0 && j == n / 2) {
            anti[j] = c / Complex64::new(0.0, k as f64);
        }
    }
    let vals = samples(&anti);
    let offset = base - vals[0].re;
    let lifted: Vec<f64> = vals
        .iter()
        .enumerate()
        .map(|(j, v)| mean * TAU * j as f64 / n as f64 + v.re + offset)
        .collect();
    Lift::from_samples(&lifted, mean)
}

/// Continuous argument of a sequence of nonzero complex numbers: phase jumps
/// larger than pi are folded back. Returns the unwrapped angles and the
/// largest corrected jump.
pub fn unwrap_arg(values: &[Complex64]) -> (Vec<f64>, f64) {
    let mut out = Vec::with_capacity(values.len());
    let mut prev = values[0].arg();
    out.push(prev);
    let mut max_jump: f64 = 0.0;
    for v in &values[1..] {
        let raw = v.arg();
        let mut delta = raw - prev;
        delta -= TAU * (delta / TAU).round();
        max_jump = max_jump.max(delta.abs());
        prev += delta;
        out.push(prev);
    }
    (out, max_jump)
}

/// Wrap an angle difference into (-pi, pi].
pub fn wrap_angle(a: f64) -> f64 {
    let mut x = a % TAU;
    if x > PI {
        x -= TAU;
    } else if x <= -PI {
        x += TAU;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn trig_reproduces_analytic_samples() {
        let n = 64;
        let f = |t: f64| Complex64::new((2.0 * t).cos() + 0.3 * t.sin(), (3.0 * t).sin());
        let samples: Vec<Complex64> = (0..n).map(|j| f(TAU * j as f64 / n as f64)).collect();
        let trig = Trig::interpolate(&samples);
        for &t in &[0.1, 1.7, 4.2, 6.1] {
            let v = trig.eval(t);
            assert_relative_eq!(v.re, f(t).re, epsilon = 1e-12);
            assert_relative_eq!(v.im, f(t).im, epsilon = 1e-12);
        }
    }

    #[test]
    fn trig_derivative_matches() {
        let n = 64;
        let samples: Vec<Complex64> = (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                Complex64::new((2.0 * t).cos(), 0.0)
            })
            .collect();
        let trig = Trig::interpolate(&samples);
        let t = 0.9;
        assert_relative_eq!(trig.eval_deriv(t).re, -2.0 * (2.0 * t).sin(), epsilon = 1e-11);
    }

    #[test]
    fn lift_inversion_round_trip() {
        let n = 128;
        let u = |t: f64| t + 0.4 * t.sin();
        let lift = Lift::resample(u, n, 1.0);
        for &t in &[0.3, 2.0, 5.5] {
            let y = u(t);
            let back = lift.invert(y).unwrap();
            assert_relative_eq!(lift.eval(back), y, epsilon = 1e-12);
            assert_relative_eq!(back, t, epsilon = 1e-9);
        }
        assert!(lift.strictly_increasing());
    }

    #[test]
    fn antiderivative_of_cosine() {
        let n = 64;
        let f: Vec<f64> = (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                1.0 + (3.0 * t).cos()
            })
            .collect();
        let lift = antiderivative(&f, 0.0);
        for &t in &[0.7, 3.0] {
            assert_relative_eq!(lift.eval(t), t + (3.0 * t).sin() / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn unwrap_counts_winding() {
        let n = 256;
        let vals: Vec<Complex64> = (0..=n)
            .map(|j| Complex64::from_polar(1.0, 3.0 * TAU * j as f64 / n as f64))
            .collect();
        let (angles, max_jump) = unwrap_arg(&vals);
        assert!(max_jump < 0.1);
        assert_relative_eq!(angles[n] - angles[0], 3.0 * TAU, epsilon = 1e-10);
    }
}
