//! Complex polynomials, rational maps fixing infinity, and Blaschke
//! products: evaluation, derivatives, roots, critical values, and the
//! rotation fit of a Blaschke product to boundary samples.

mod aberth;
pub mod pairing;

use crate::error::{Error, Result};
use crate::tol;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

pub use aberth::roots as poly_roots;

// ---------------------------------------------------------------------------
// raw coefficient helpers (ascending order)
// ---------------------------------------------------------------------------

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_derivative(a: &[Complex64]) -> Vec<Complex64> {
    if a.len() <= 1 {
        return vec![Complex64::new(0.0, 0.0)];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

fn poly_sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().max(b.len());
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (k, slot) in out.iter_mut().enumerate() {
        if k < a.len() {
            *slot += a[k];
        }
        if k < b.len() {
            *slot -= b[k];
        }
    }
    out
}

fn poly_trim(mut a: Vec<Complex64>) -> Vec<Complex64> {
    let scale = a.iter().map(|c| c.norm()).fold(0.0, f64::max);
    while a.len() > 1 && a.last().unwrap().norm() <= 1e-12 * scale {
        a.pop();
    }
    a
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn from_roots_coeffs(roots: &[Complex64], leading: Complex64) -> Vec<Complex64> {
    let mut c = vec![leading];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= ck * r;
        }
        c = next;
    }
    c
}

// ---------------------------------------------------------------------------
// serde: complex numbers as [re, im] pairs
// ---------------------------------------------------------------------------

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn unpairs(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|p| Complex64::new(p[0], p[1])).collect()
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    coeffs: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct BlaschkeJson {
    theta: f64,
    zeros: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct RationalJson {
    num: PolyJson,
    den: PolyJson,
}

// ---------------------------------------------------------------------------
// ComplexPolynomial
// ---------------------------------------------------------------------------

/// Polynomial with complex coefficients in ascending degree order.
/// The leading coefficient is nonzero relative to the largest coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl TryFrom<PolyJson> for ComplexPolynomial {
    type Error = String;
    fn try_from(raw: PolyJson) -> std::result::Result<Self, String> {
        ComplexPolynomial::new(unpairs(&raw.coeffs)).map_err(|e| format!("coeffs: {e}"))
    }
}

impl From<ComplexPolynomial> for PolyJson {
    fn from(p: ComplexPolynomial) -> PolyJson {
        PolyJson {
            coeffs: pairs(&p.coeffs),
        }
    }
}

/// Affine change of variable z -> scale * z + offset used for
/// precomposition; `apply` gives the substituted point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineChange {
    pub scale: Complex64,
    pub offset: Complex64,
}

impl AffineChange {
    pub fn identity() -> Self {
        AffineChange {
            scale: Complex64::new(1.0, 0.0),
            offset: Complex64::new(0.0, 0.0),
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.scale * z + self.offset
    }

    pub fn inverse_apply(&self, w: Complex64) -> Complex64 {
        (w - self.offset) / self.scale
    }
}

impl ComplexPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput(
                "polynomial must have degree at least 1".into(),
            ));
        }
        let max_mag = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max_mag == 0.0 || coeffs.last().unwrap().norm() <= tol::LEADING_COEFF_REL * max_mag {
            return Err(Error::InvalidInput(
                "leading coefficient vanishes relative to the coefficient scale".into(),
            ));
        }
        Ok(ComplexPolynomial { coeffs })
    }

    pub fn from_roots(roots: &[Complex64], leading: Complex64) -> Result<Self> {
        ComplexPolynomial::new(from_roots_coeffs(roots, leading))
    }

    /// Monomial z^n.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        ComplexPolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    /// Centroid of the roots, read off the coefficients.
    pub fn root_centroid(&self) -> Complex64 {
        let n = self.degree();
        -self.coeffs[n - 1] / (n as f64 * self.leading())
    }

    pub fn derivative(&self) -> ComplexPolynomial {
        ComplexPolynomial {
            coeffs: poly_derivative(&self.coeffs),
        }
    }

    /// All roots with multiplicity (simultaneous iteration with deflation
    /// fallback; multiple roots are clustered).
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        aberth::roots(&self.coeffs)
    }

    /// The n-1 critical values, with multiplicity.
    pub fn critical_values(&self) -> Result<Vec<Complex64>> {
        let deriv = poly_derivative(&self.coeffs);
        if deriv.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::DegenerateDerivative);
        }
        if deriv.len() == 1 {
            return Ok(Vec::new());
        }
        let pts = aberth::roots(&deriv)?;
        Ok(pts.iter().map(|&c| horner(&self.coeffs, c).0).collect())
    }

    /// Precomposition p(scale * z + offset).
    pub fn precompose(&self, change: AffineChange) -> ComplexPolynomial {
        let lin = [change.offset, change.scale];
        let mut out = vec![*self.coeffs.last().unwrap()];
        for &c in self.coeffs.iter().rev().skip(1) {
            out = poly_mul(&out, &lin);
            out[0] += c;
        }
        ComplexPolynomial { coeffs: out }
    }

    /// Whether the polynomial is monic with root centroid zero.
    pub fn is_canonical(&self) -> bool {
        let n = self.degree();
        (self.leading() - Complex64::new(1.0, 0.0)).norm() < 1e-12
            && self.coeffs[n - 1].norm() < 1e-12 * self.coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max)
    }

    /// Canonical representative of the class of `p` under affine changes of
    /// variable: monic with centered roots, residual n-fold rotation fixed
    /// by a deterministic argument rule. Returns the change `T` with
    /// p(T(z)) = canonical(z).
    pub fn canonicalize(&self) -> (ComplexPolynomial, AffineChange) {
        let n = self.degree();
        let centroid = self.root_centroid();
        let centered = self.precompose(AffineChange {
            scale: Complex64::new(1.0, 0.0),
            offset: centroid,
        });
        let lead = centered.leading();
        let scale = (-lead.ln() / n as f64).exp();
        let mut monic = centered.precompose(AffineChange {
            scale,
            offset: Complex64::new(0.0, 0.0),
        });
        // the substitution is exact up to roundoff; pin the structure
        let last = monic.coeffs.len() - 1;
        monic.coeffs[last] = Complex64::new(1.0, 0.0);
        monic.coeffs[last - 1] = Complex64::new(0.0, 0.0);
        let rot = canonical_rotation(&monic.coeffs, n);
        let omega = Complex64::from_polar(1.0, TAU * rot as f64 / n as f64);
        let mut rotated = monic.precompose(AffineChange {
            scale: omega,
            offset: Complex64::new(0.0, 0.0),
        });
        let last = rotated.coeffs.len() - 1;
        rotated.coeffs[last] = Complex64::new(1.0, 0.0);
        rotated.coeffs[last - 1] = Complex64::new(0.0, 0.0);
        (
            rotated,
            AffineChange {
                scale: scale * omega,
                offset: centroid,
            },
        )
    }

    /// All n rotated variants p(omega^j z) of a monic centered polynomial,
    /// the residual ambiguity of the canonical form.
    pub fn rotation_orbit(&self) -> Vec<ComplexPolynomial> {
        let n = self.degree();
        (0..n)
            .map(|j| {
                let omega = Complex64::from_polar(1.0, TAU * j as f64 / n as f64);
                self.precompose(AffineChange {
                    scale: omega,
                    offset: Complex64::new(0.0, 0.0),
                })
            })
            .collect()
    }

    /// Largest coefficientwise distance to `other`, minimized over the
    /// rotation orbit; the affine-equivalence test for canonical forms.
    pub fn orbit_distance(&self, other: &ComplexPolynomial) -> f64 {
        if self.degree() != other.degree() {
            return f64::INFINITY;
        }
        self.rotation_orbit()
            .iter()
            .map(|cand| {
                cand.coeffs
                    .iter()
                    .zip(&other.coeffs)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Deterministic choice among the n rotations keeping a monic centered
/// polynomial monic and centered: successively reduce the candidate set by
/// minimizing the wrapped argument of the highest significant coefficients.
fn canonical_rotation(coeffs: &[Complex64], n: usize) -> usize {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut candidates: Vec<usize> = (0..n).collect();
    for m in (0..n.saturating_sub(1)).rev() {
        if candidates.len() == 1 {
            break;
        }
        if coeffs[m].norm() <= 1e-10 * scale {
            continue;
        }
        let key = |j: usize| -> f64 {
            let phi = coeffs[m].arg() + TAU * (j * m) as f64 / n as f64;
            phi.rem_euclid(TAU)
        };
        let best = candidates
            .iter()
            .map(|&j| key(j))
            .fold(f64::INFINITY, f64::min);
        candidates.retain(|&j| key(j) <= best + 1e-9);
    }
    candidates[0]
}

// ---------------------------------------------------------------------------
// RationalMap
// ---------------------------------------------------------------------------

/// Rational map num/den with deg num > deg den, so the map fixes infinity.
/// Numerator and denominator share no root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RationalJson", into = "RationalJson")]
pub struct RationalMap {
    num: ComplexPolynomial,
    den: ComplexPolynomial,
}

impl TryFrom<RationalJson> for RationalMap {
    type Error = String;
    fn try_from(raw: RationalJson) -> std::result::Result<Self, String> {
        let num = ComplexPolynomial::new(unpairs(&raw.num.coeffs)).map_err(|e| format!("num: {e}"))?;
        let den_coeffs = unpairs(&raw.den.coeffs);
        RationalMap::from_parts(num, den_coeffs).map_err(|e| e.to_string())
    }
}

impl From<RationalMap> for RationalJson {
    fn from(r: RationalMap) -> RationalJson {
        RationalJson {
            num: PolyJson {
                coeffs: pairs(&r.num.coeffs),
            },
            den: PolyJson {
                coeffs: pairs(&r.den.coeffs),
            },
        }
    }
}

impl RationalMap {
    pub fn new(num: ComplexPolynomial, den: ComplexPolynomial) -> Result<Self> {
        RationalMap::from_parts(num, den.coeffs)
    }

    /// Build from a numerator and raw denominator coefficients (the
    /// denominator may be constant).
    pub fn from_parts(num: ComplexPolynomial, den_coeffs: Vec<Complex64>) -> Result<Self> {
        let den_coeffs = poly_trim(den_coeffs);
        let den_scale = den_coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if den_scale == 0.0 {
            return Err(Error::InvalidInput("denominator is identically zero".into()));
        }
        if den_coeffs.len() >= num.coeffs.len() {
            return Err(Error::InvalidInput(
                "denominator degree must be below numerator degree (the map must fix infinity)".into(),
            ));
        }
        if den_coeffs.len() > 1 {
            let nroots = aberth::roots(&num.coeffs)?;
            let droots = aberth::roots(&den_coeffs)?;
            for zn in &nroots {
                for zd in &droots {
                    if (zn - zd).norm() <= tol::SHARED_ROOT_SEP {
                        return Err(Error::InvalidInput(format!(
                            "numerator and denominator share a root near {zn}"
                        )));
                    }
                }
            }
        }
        let den = ComplexPolynomial { coeffs: den_coeffs };
        Ok(RationalMap { num, den })
    }

    pub fn from_polynomial(p: ComplexPolynomial) -> Self {
        RationalMap {
            num: p,
            den: ComplexPolynomial {
                coeffs: vec![Complex64::new(1.0, 0.0)],
            },
        }
    }

    pub fn numerator(&self) -> &ComplexPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &ComplexPolynomial {
        &self.den
    }

    /// Degree as a map of the sphere (= numerator degree here).
    pub fn degree(&self) -> usize {
        self.num.degree()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.coeffs.len() == 1
    }

    /// Finite poles (roots of the denominator).
    pub fn poles(&self) -> Result<Vec<Complex64>> {
        if self.den.coeffs.len() == 1 {
            Ok(Vec::new())
        } else {
            aberth::roots(&self.den.coeffs)
        }
    }

    /// The finite critical values, with multiplicity: images of the roots of
    /// num' den - num den'.
    pub fn critical_values(&self) -> Result<Vec<Complex64>> {
        let w = poly_trim(poly_sub(
            &poly_mul(&poly_derivative(&self.num.coeffs), &self.den.coeffs),
            &poly_mul(&self.num.coeffs, &poly_derivative(&self.den.coeffs)),
        ));
        if w.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::DegenerateDerivative);
        }
        if w.len() == 1 {
            return Ok(Vec::new());
        }
        let pts = aberth::roots(&w)?;
        pts.iter().map(|&c| Ok(self.eval_with_derivative(c)?.0)).collect()
    }
}

// ---------------------------------------------------------------------------
// BlaschkeProduct
// ---------------------------------------------------------------------------

/// Degree-n circle-preserving map e^{i theta} prod (z - a_k)/(1 - conj(a_k) z)
/// with every zero strictly inside the unit disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlaschkeJson", into = "BlaschkeJson")]
pub struct BlaschkeProduct {
    theta: f64,
    zeros: Vec<Complex64>,
}

impl TryFrom<BlaschkeJson> for BlaschkeProduct {
    type Error = String;
    fn try_from(raw: BlaschkeJson) -> std::result::Result<Self, String> {
        BlaschkeProduct::new(raw.theta, unpairs(&raw.zeros)).map_err(|e| format!("zeros: {e}"))
    }
}

impl From<BlaschkeProduct> for BlaschkeJson {
    fn from(b: BlaschkeProduct) -> BlaschkeJson {
        BlaschkeJson {
            theta: b.theta,
            zeros: pairs(&b.zeros),
        }
    }
}

impl BlaschkeProduct {
    pub fn new(theta: f64, zeros: Vec<Complex64>) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::InvalidInput(
                "a Blaschke product needs at least one zero".into(),
            ));
        }
        for a in &zeros {
            if a.norm() >= 1.0 - tol::BLASCHKE_ZERO_MARGIN {
                return Err(Error::InvalidInput(format!(
                    "Blaschke zero {a} is not strictly inside the unit disk"
                )));
            }
        }
        Ok(BlaschkeProduct { theta, zeros })
    }

    /// The monomial e^{i theta} z^n.
    pub fn rotation_power(theta: f64, n: usize) -> Self {
        BlaschkeProduct {
            theta,
            zeros: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// True when at least one zero sits at the origin, i.e. the product has
    /// a pole at infinity and fixes it. Required when the product plays the
    /// exterior role A.
    pub fn fixes_infinity(&self) -> bool {
        self.zeros.iter().any(|a| a.norm() <= tol::UNIT_CIRCLE_EPS)
    }

    /// Numerator and denominator coefficient vectors.
    pub fn as_fraction(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let rot = Complex64::from_polar(1.0, self.theta);
        let num: Vec<Complex64> = from_roots_coeffs(&self.zeros, rot);
        let mut den = vec![Complex64::new(1.0, 0.0)];
        for a in &self.zeros {
            den = poly_mul(&den, &[Complex64::new(1.0, 0.0), -a.conj()]);
        }
        (num, den)
    }

    /// Finite critical values with multiplicity.
    pub fn critical_values(&self) -> Result<Vec<Complex64>> {
        let (num, den) = self.as_fraction();
        let w = poly_trim(poly_sub(
            &poly_mul(&poly_derivative(&num), &den),
            &poly_mul(&num, &poly_derivative(&den)),
        ));
        if w.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::DegenerateDerivative);
        }
        if w.len() == 1 {
            return Ok(Vec::new());
        }
        let pts = aberth::roots(&w)?;
        pts.iter().map(|&c| Ok(self.eval_with_derivative(c)?.0)).collect()
    }

    /// The n-1 critical values inside the open unit disk.
    pub fn critical_values_in_disk(&self) -> Result<Vec<Complex64>> {
        let vals = self.critical_values()?;
        let inside: Vec<Complex64> = vals.into_iter().filter(|w| w.norm() < 1.0).collect();
        if inside.len() != self.degree() - 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} disk critical values, found {}",
                self.degree() - 1,
                inside.len()
            )));
        }
        Ok(inside)
    }

    /// Recover the rotation theta from boundary samples `(circle point,
    /// unimodular value)` given the zeros: theta is the circular mean of the
    /// sample/product ratios. Fails when the sup residual exceeds tolerance.
    pub fn fit(
        samples: &[(Complex64, Complex64)],
        zeros: &[Complex64],
    ) -> Result<(BlaschkeProduct, f64)> {
        if samples.is_empty() {
            return Err(Error::InvalidInput("no samples to fit".into()));
        }
        for (zeta, w) in samples {
            if (zeta.norm() - 1.0).abs() > tol::FIT_SAMPLE_UNIMODULAR
                || (w.norm() - 1.0).abs() > tol::FIT_SAMPLE_UNIMODULAR
            {
                return Err(Error::InvalidInput(format!(
                    "fit sample ({zeta}, {w}) is not unimodular within {:.0e}",
                    tol::FIT_SAMPLE_UNIMODULAR
                )));
            }
        }
        let base = BlaschkeProduct::new(0.0, zeros.to_vec())?;
        let mut mean = Complex64::new(0.0, 0.0);
        let mut prods = Vec::with_capacity(samples.len());
        for &(zeta, w) in samples {
            let p = base.eval(zeta)?;
            prods.push(p);
            mean += w / p;
        }
        if mean.norm() < 1e-8 {
            return Err(Error::BlaschkeFit { residual: f64::INFINITY });
        }
        let theta = mean.arg();
        let rot = Complex64::from_polar(1.0, theta);
        let residual = samples
            .iter()
            .zip(&prods)
            .map(|(&(_, w), &p)| (rot * p - w).norm())
            .fold(0.0, f64::max);
        if residual > tol::FIT_RESIDUAL {
            return Err(Error::BlaschkeFit { residual });
        }
        Ok((BlaschkeProduct { theta, zeros: zeros.to_vec() }, residual))
    }

    /// Largest deviation of |B| from 1 on a uniform circle grid.
    pub fn unimodularity_residual(&self, grid: usize) -> f64 {
        (0..grid)
            .map(|j| {
                let z = Complex64::from_polar(1.0, TAU * j as f64 / grid as f64);
                (self.eval(z).map(|v| v.norm()).unwrap_or(f64::NAN) - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }
}

// ---------------------------------------------------------------------------
// AnalyticMap: uniform evaluation surface for the tracer and the pipelines
// ---------------------------------------------------------------------------

/// A holomorphic self-map of the sphere given by polynomial data: evaluate
/// with derivative, solve m(z) = w completely, and report critical data.
pub trait AnalyticMap {
    /// Horner-scheme value and first derivative, exact to roundoff.
    fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)>;

    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval_with_derivative(z)?.0)
    }

    fn degree(&self) -> usize;

    /// All finite solutions of m(z) = w, with multiplicity.
    fn preimages(&self, w: Complex64) -> Result<Vec<Complex64>>;

    /// Finite critical values, with multiplicity.
    fn critical_values_finite(&self) -> Result<Vec<Complex64>>;

    /// Multiplicity of infinity as a critical point (its critical value is
    /// infinity, counted on the outside in split bookkeeping).
    fn infinity_critical_multiplicity(&self) -> usize;

    /// Finite zeros of the map, with multiplicity.
    fn zeros(&self) -> Result<Vec<Complex64>>;
}

impl AnalyticMap for ComplexPolynomial {
    fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        Ok(horner(&self.coeffs, z))
    }

    fn degree(&self) -> usize {
        self.degree()
    }

    fn preimages(&self, w: Complex64) -> Result<Vec<Complex64>> {
        let mut shifted = self.coeffs.clone();
        shifted[0] -= w;
        aberth::roots(&shifted)
    }

    fn critical_values_finite(&self) -> Result<Vec<Complex64>> {
        self.critical_values()
    }

    fn infinity_critical_multiplicity(&self) -> usize {
        self.degree() - 1
    }

    fn zeros(&self) -> Result<Vec<Complex64>> {
        self.roots()
    }
}

impl AnalyticMap for RationalMap {
    fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let (p, dp) = horner(&self.num.coeffs, z);
        let (q, dq) = horner(&self.den.coeffs, z);
        let scale = self
            .den
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            * (1.0 + z.norm()).powi(self.den.degree() as i32);
        if q.norm() <= 1e-14 * scale.max(1e-300) {
            return Err(Error::PoleHit { z, denom: q.norm() });
        }
        Ok((p / q, (dp * q - p * dq) / (q * q)))
    }

    fn degree(&self) -> usize {
        self.degree()
    }

    fn preimages(&self, w: Complex64) -> Result<Vec<Complex64>> {
        let shifted = poly_trim(poly_sub(
            &self.num.coeffs,
            &self
                .den
                .coeffs
                .iter()
                .map(|&c| c * w)
                .collect::<Vec<_>>(),
        ));
        aberth::roots(&shifted)
    }

    fn critical_values_finite(&self) -> Result<Vec<Complex64>> {
        self.critical_values()
    }

    fn infinity_critical_multiplicity(&self) -> usize {
        let gap = self.num.degree() - self.den.degree();
        gap - 1
    }

    fn zeros(&self) -> Result<Vec<Complex64>> {
        self.num.roots()
    }
}

impl AnalyticMap for BlaschkeProduct {
    fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let mut v = Complex64::from_polar(1.0, self.theta);
        let mut dv = Complex64::new(0.0, 0.0);
        for &a in &self.zeros {
            let d = 1.0 - a.conj() * z;
            if d.norm() <= 1e-14 * (1.0 + z.norm()) {
                return Err(Error::PoleHit {
                    z,
                    denom: d.norm(),
                });
            }
            let f = (z - a) / d;
            let df = (1.0 - a.norm_sqr()) / (d * d);
            dv = dv * f + v * df;
            v *= f;
        }
        Ok((v, dv))
    }

    fn degree(&self) -> usize {
        self.degree()
    }

    fn preimages(&self, w: Complex64) -> Result<Vec<Complex64>> {
        let (num, den) = self.as_fraction();
        let shifted = poly_trim(poly_sub(
            &num,
            &den.iter().map(|&c| c * w).collect::<Vec<_>>(),
        ));
        aberth::roots(&shifted)
    }

    fn critical_values_finite(&self) -> Result<Vec<Complex64>> {
        self.critical_values()
    }

    fn infinity_critical_multiplicity(&self) -> usize {
        0
    }

    fn zeros(&self) -> Result<Vec<Complex64>> {
        Ok(self.zeros.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn horner_value_and_derivative() {
        // z^2 at z = 3
        let p = ComplexPolynomial::monomial(2);
        let (v, d) = p.eval_with_derivative(c(3.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 9.0);
        assert_relative_eq!(d.re, 6.0);
    }

    #[test]
    fn degree_one_blaschke_is_identity() {
        let b = BlaschkeProduct::new(0.0, vec![c(0.0, 0.0)]).unwrap();
        let (v, d) = b.eval_with_derivative(c(0.0, 1.0)).unwrap();
        assert!((v - c(0.0, 1.0)).norm() < 1e-15);
        assert!((d - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn monomial_critical_values_all_zero() {
        let p = ComplexPolynomial::monomial(4);
        let vals = p.critical_values().unwrap();
        assert_eq!(vals.len(), 3);
        assert!(vals.iter().all(|w| w.norm() < 1e-12));
    }

    #[test]
    fn shifted_square_critical_value() {
        // z^2 + w has the single critical value w
        let w = c(0.3, -0.2);
        let p = ComplexPolynomial::new(vec![w, c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let vals = p.critical_values().unwrap();
        assert_eq!(vals.len(), 1);
        assert!((vals[0] - w).norm() < 1e-12);
    }

    #[test]
    fn worked_blaschke_critical_value() {
        // B(z) = z(z - 1/2)/(1 - z/2): critical points 2 +- sqrt(3),
        // disk critical value 4 sqrt(3) - 7 at 2 - sqrt(3)
        let b = BlaschkeProduct::new(0.0, vec![c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        let expected_pt = 2.0 - 3.0f64.sqrt();
        let expected_val = 4.0 * 3.0f64.sqrt() - 7.0;
        let inside = b.critical_values_in_disk().unwrap();
        assert_eq!(inside.len(), 1);
        assert!((inside[0] - c(expected_val, 0.0)).norm() < 1e-10);
        // the critical point itself
        let (_, d) = b.eval_with_derivative(c(expected_pt, 0.0)).unwrap();
        assert!(d.norm() < 1e-10);
    }

    #[test]
    fn rational_rejects_shared_roots() {
        let num = ComplexPolynomial::from_roots(&[c(0.5, 0.0), c(2.0, 0.0)], c(1.0, 0.0)).unwrap();
        let den = vec![c(-2.0, 0.0), c(1.0, 0.0)]; // z - 2
        assert!(RationalMap::from_parts(num, den).is_err());
    }

    #[test]
    fn rational_rejects_degree_inversion() {
        let num = ComplexPolynomial::monomial(1);
        let den = vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!(RationalMap::from_parts(num, den).is_err());
    }

    #[test]
    fn pole_evaluation_reports_location() {
        let num = ComplexPolynomial::monomial(2);
        let r = RationalMap::from_parts(num, vec![c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        match r.eval_with_derivative(c(1.0, 0.0)) {
            Err(Error::PoleHit { z, .. }) => assert_relative_eq!(z.re, 1.0),
            other => panic!("expected pole error, got {other:?}"),
        }
    }

    #[test]
    fn fit_recovers_square() {
        // samples of z -> z^2 on 8 circle points, zeros {0, 0}
        let samples: Vec<(Complex64, Complex64)> = (0..8)
            .map(|j| {
                let z = Complex64::from_polar(1.0, TAU * j as f64 / 8.0);
                (z, z * z)
            })
            .collect();
        let (b, resid) = BlaschkeProduct::fit(&samples, &[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(resid < 1e-12);
        assert!(b.theta().rem_euclid(TAU).min(TAU - b.theta().rem_euclid(TAU)) < 1e-12);
    }

    #[test]
    fn fit_recovers_rotation() {
        let theta0 = std::f64::consts::PI / 3.0;
        let rot = Complex64::from_polar(1.0, theta0);
        let samples: Vec<(Complex64, Complex64)> = (0..8)
            .map(|j| {
                let z = Complex64::from_polar(1.0, TAU * j as f64 / 8.0);
                (z, rot * z)
            })
            .collect();
        let (b, _) = BlaschkeProduct::fit(&samples, &[c(0.0, 0.0)]).unwrap();
        assert_relative_eq!(b.theta(), theta0, epsilon = 1e-12);
    }

    #[test]
    fn fit_rejects_inconsistent_samples() {
        // samples of z^2 cannot be matched with a single zero at 0.4
        let samples: Vec<(Complex64, Complex64)> = (0..8)
            .map(|j| {
                let z = Complex64::from_polar(1.0, TAU * j as f64 / 8.0);
                (z, z * z)
            })
            .collect();
        assert!(matches!(
            BlaschkeProduct::fit(&samples, &[c(0.4, 0.0)]),
            Err(Error::BlaschkeFit { .. })
        ));
    }

    #[test]
    fn canonicalize_is_idempotent_and_affine_invariant() {
        let p = ComplexPolynomial::new(vec![c(0.3, 0.1), c(-0.2, 0.4), c(0.5, 0.0), c(2.0, 1.0)])
            .unwrap();
        let (canon, change) = p.canonicalize();
        assert!(canon.is_canonical());
        // p(T(z)) equals the canonical polynomial
        for &z in &[c(0.3, 0.2), c(-1.0, 0.5)] {
            let lhs = p.eval(change.apply(z)).unwrap();
            let rhs = canon.eval(z).unwrap();
            assert!((lhs - rhs).norm() < 1e-10);
        }
        // an affine substitution does not move the canonical form
        let moved = p.precompose(AffineChange {
            scale: c(1.7, 0.0),
            offset: c(0.2, -0.1),
        });
        let (canon2, _) = moved.canonicalize();
        assert!(canon.orbit_distance(&canon2) < 1e-9);
    }

    #[test]
    fn monomial_preimages_are_nth_roots() {
        let p = ComplexPolynomial::monomial(3);
        let pre = p.preimages(c(1.0, 0.0)).unwrap();
        assert_eq!(pre.len(), 3);
        for z in pre {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((p.eval(z).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn blaschke_unimodular_on_circle(
            seeds in proptest::collection::vec((-0.75f64..0.75, -0.75f64..0.75), 1..5),
            theta in 0.0f64..TAU,
        ) {
            let zeros: Vec<Complex64> = seeds
                .iter()
                .map(|&(x, y)| {
                    let z = c(x, y);
                    if z.norm() >= 0.9 { z * (0.85 / z.norm()) } else { z }
                })
                .collect();
            let b = BlaschkeProduct::new(theta, zeros).unwrap();
            prop_assert!(b.unimodularity_residual(128) <= 1e-10);
        }

        #[test]
        fn blaschke_reflection_symmetry(
            seeds in proptest::collection::vec((-0.7f64..0.7, -0.7f64..0.7), 1..5),
            radius in 0.2f64..0.9,
            angle in 0.0f64..TAU,
        ) {
            let zeros: Vec<Complex64> = seeds
                .iter()
                .map(|&(x, y)| {
                    let z = c(x, y);
                    if z.norm() >= 0.9 { z * (0.85 / z.norm()) } else { z }
                })
                .collect();
            let b = BlaschkeProduct::new(0.7, zeros).unwrap();
            let z = Complex64::from_polar(radius, angle);
            let refl = 1.0 / z.conj();
            let prod = b.eval(refl).unwrap() * b.eval(z).unwrap().conj();
            prop_assert!((prod - c(1.0, 0.0)).norm() < 1e-10);
        }

        #[test]
        fn roots_round_trip_planted(
            seeds in proptest::collection::vec((-1.2f64..1.2, -1.2f64..1.2), 2..6),
        ) {
            let planted: Vec<Complex64> = seeds.iter().map(|&(x, y)| c(x, y)).collect();
            let p = ComplexPolynomial::from_roots(&planted, c(1.0, 0.0)).unwrap();
            let found = p.roots().unwrap();
            prop_assert!(pairing::multiset_distance(&found, &planted) < 1e-10);
        }

        #[test]
        fn critical_value_counts(
            seeds in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..5),
        ) {
            let n = seeds.len();
            let planted: Vec<Complex64> = seeds.iter().map(|&(x, y)| c(x, y)).collect();
            let p = ComplexPolynomial::from_roots(&planted, c(1.0, 0.0)).unwrap();
            prop_assert_eq!(p.critical_values().unwrap().len(), n - 1);
            // rational fixing infinity with simple poles: 2n - 2 finite values
            let pole_roots: Vec<Complex64> = (0..n - 1)
                .map(|k| Complex64::from_polar(3.0 + k as f64, 0.7 * k as f64 + 0.3))
                .collect();
            let den = from_roots_coeffs(&pole_roots, c(1.0, 0.0));
            if let Ok(r) = RationalMap::from_parts(p.clone(), den) {
                prop_assert_eq!(r.critical_values().unwrap().len(), 2 * n - 2);
            }
        }
    }
}
