//! Numeric side: `Li_k` by series, a quadrature oracle over the ordered
//! simplex, the integration map `I` on chain symbols and a Cauchy–Stokes demo.

use std::collections::BTreeMap;
use std::fmt;

use astro_float::BigFloat;
use num_traits::{One, Signed, Zero};

use crate::algebra::FieldValue;
use crate::chains::{ChainBasis, ChainElement, ChainSymbol};
use crate::error::{Error, Result};
use crate::linear::{q, Q};
use crate::numeric::ComplexHP;

/// Guard bits added to every evaluation.
pub const GUARD_BITS: usize = 32;
pub const MIN_BITS: usize = 64;

/// Exact complex rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactPoint {
    pub re: Q,
    pub im: Q,
}

impl ExactPoint {
    pub fn new(re: Q, im: Q) -> Self {
        ExactPoint { re, im }
    }

    pub fn real(re: Q) -> Self {
        ExactPoint { re, im: Q::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_hp(&self, bits: usize) -> ComplexHP {
        ComplexHP::from_rationals(&self.re, &self.im, bits)
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Piecewise-linear path from 1 through exact waypoints, avoiding 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSpec {
    points: Vec<ExactPoint>,
}

fn segment_hits_zero(p: &ExactPoint, q: &ExactPoint) -> bool {
    let cross = &p.re * &q.im - &p.im * &q.re;
    let dot = &p.re * &q.re + &p.im * &q.im;
    cross.is_zero() && !dot.is_positive()
}

impl PathSpec {
    /// The straight segment from 1 to `end`.
    pub fn straight(end: ExactPoint) -> Result<Self> {
        Self::through(Vec::new(), end)
    }

    /// 1 → waypoints → `end`.
    pub fn through(waypoints: Vec<ExactPoint>, end: ExactPoint) -> Result<Self> {
        let mut points = vec![ExactPoint::real(q(1))];
        points.extend(waypoints);
        points.push(end);
        for p in &points {
            if p.is_zero() {
                return Err(Error::OutOfDomain("path passes through 0".into()));
            }
        }
        for w in points.windows(2) {
            if segment_hits_zero(&w[0], &w[1]) {
                return Err(Error::OutOfDomain(format!("segment {} → {} passes through 0", w[0], w[1])));
            }
        }
        Ok(PathSpec { points })
    }

    pub fn points(&self) -> &[ExactPoint] {
        &self.points
    }

    pub fn end(&self) -> &ExactPoint {
        self.points.last().expect("path has an endpoint")
    }

    pub fn is_straight(&self) -> bool {
        self.points.len() == 2
    }

    /// `log` of the endpoint continued along the path from `log 1 = 0`.
    pub fn log(&self, bits: usize) -> Result<ComplexHP> {
        let mut acc = ComplexHP::zero(bits);
        for w in self.points.windows(2) {
            let ratio = w[1].to_hp(bits).div(&w[0].to_hp(bits))?;
            acc = acc.add(&ratio.ln()?);
        }
        Ok(acc)
    }
}

impl fmt::Display for PathSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_straight() {
            return write!(f, "straight 1 -> {}", self.end());
        }
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "polyline {}", parts.join(" -> "))
    }
}

/// `Σ_{n ≥ 1} a^n/n^k` for `|a| < 1`, truncated where the geometric tail
/// `|a|^{N+1}/(1−|a|)` drops below `2^{−(bits+32)}`.
pub fn li(k: u32, a: &ComplexHP, bits: usize) -> Result<ComplexHP> {
    if k == 0 {
        return Err(Error::OutOfDomain("Li_k needs k ≥ 1".into()));
    }
    let bits = bits.max(MIN_BITS);
    if a.is_zero() {
        return Ok(ComplexHP::zero(bits));
    }
    let wp = bits + GUARD_BITS;
    let r = a.abs_f64() * (1.0 + 1e-12);
    if r.is_nan() || r >= 1.0 {
        return Err(Error::OutOfDomain(format!("series for Li_{k} needs |a| < 1, got |a| ≈ {r}")));
    }
    let need = wp as f64 * std::f64::consts::LN_2 - (1.0 - r).ln();
    let n_max = (need / -r.ln()).ceil().max(1.0) as u64;
    let a = a.with_bits(wp);
    let mut power = ComplexHP::one(wp);
    let mut sum = ComplexHP::zero(wp);
    let rm = astro_float::RoundingMode::ToEven;
    for n in 1..=n_max {
        power = power.mul(&a);
        let nk = BigFloat::from_u64(n, wp).powi(k as usize, wp, rm);
        let term = ComplexHP::new(power.re().div(&nk, wp, rm), power.im().div(&nk, wp, rm), wp);
        sum = sum.add(&term);
    }
    Ok(sum.rounded(bits))
}

/// Result of the simplex quadrature.
#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
}

const QUAD_BUDGET: u64 = 200_000_000;

struct Nested {
    tol: f64,
    evaluations: std::cell::Cell<u64>,
    worst: std::cell::Cell<f64>,
}

impl Nested {
    /// `F_1(s) = ∫_0^s dt/(1−t)`, `F_m(s) = ∫_0^s F_{m−1}(t) dt/t`.
    fn level(&self, m: u32, s: f64) -> f64 {
        if s == 0.0 {
            return 0.0;
        }
        let out = if m == 1 {
            quadrature::double_exponential::integrate(|t| 1.0 / (1.0 - t), 0.0, s, self.tol)
        } else {
            quadrature::double_exponential::integrate(|t| self.level(m - 1, t) / t, 0.0, s, self.tol)
        };
        self.evaluations
            .set(self.evaluations.get() + out.num_function_evaluations as u64);
        if out.error_estimate > self.worst.get() {
            self.worst.set(out.error_estimate);
        }
        out.integral
    }
}

/// `∫_{0≤t_0≤…≤t_{k−1}≤a} dt_0/(1−t_0) · dt_1/t_1 ⋯ dt_{k−1}/t_{k−1}`.
pub fn iterated_quadrature(k: u32, a: f64, tol: f64) -> Result<QuadratureResult> {
    if !(1..=3).contains(&k) {
        return Err(Error::Unsupported(format!("simplex quadrature is limited to k ≤ 3, got {k}")));
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::OutOfDomain(format!("simplex quadrature needs a ∈ (0,1), got {a}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Numeric("tolerance must be positive".into()));
    }
    let n = Nested {
        tol: tol * 1e-3,
        evaluations: std::cell::Cell::new(0),
        worst: std::cell::Cell::new(0.0),
    };
    let value = n.level(k, a);
    let evaluations = n.evaluations.get();
    // Inner errors enter the outer integrals with weight at most a·F-level magnitudes.
    let error_estimate = n.worst.get() * (1.0 + a).powi(k as i32);
    if evaluations > QUAD_BUDGET || !value.is_finite() || error_estimate > tol {
        return Err(Error::Numeric(format!(
            "simplex quadrature missed tolerance {tol:e} (estimate {error_estimate:e}, {evaluations} evaluations)"
        )));
    }
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations,
    })
}

/// Precision, symbol bindings and path choices for numeric evaluation.
#[derive(Clone, Debug)]
pub struct NumericContext {
    pub bits: usize,
    bindings: BTreeMap<String, ExactPoint>,
    paths: BTreeMap<FieldValue, PathSpec>,
}

impl NumericContext {
    pub fn new(bits: usize) -> Result<Self> {
        if bits < MIN_BITS {
            return Err(Error::Numeric(format!("precision must be ≥ {MIN_BITS} bits, got {bits}")));
        }
        Ok(NumericContext {
            bits,
            bindings: BTreeMap::new(),
            paths: BTreeMap::new(),
        })
    }

    pub fn bind(mut self, symbol: &str, value: ExactPoint) -> Self {
        self.bindings.insert(symbol.to_string(), value);
        self
    }

    /// Uses `path` for the point `a`; its endpoint must be the value of `a`.
    pub fn with_path(mut self, a: &FieldValue, path: PathSpec) -> Result<Self> {
        let v = self.value(a)?;
        if *path.end() != v {
            return Err(Error::OutOfDomain(format!("path ends at {}, expected {v}", path.end())));
        }
        self.paths.insert(a.clone(), path);
        Ok(self)
    }

    pub fn value(&self, a: &FieldValue) -> Result<ExactPoint> {
        let lookup = |s: &String| {
            self.bindings
                .get(s)
                .cloned()
                .ok_or_else(|| Error::Unsupported(format!("symbol {s} has no numeric binding")))
        };
        Ok(match a {
            FieldValue::Rational(v) => ExactPoint::real(v.clone()),
            FieldValue::Symbol(s) => lookup(s)?,
            FieldValue::OneMinusSymbol(s) => {
                let v = lookup(s)?;
                ExactPoint::new(Q::one() - v.re, -v.im)
            }
        })
    }

    pub fn path(&self, a: &FieldValue) -> Result<PathSpec> {
        match self.paths.get(a) {
            Some(p) => Ok(p.clone()),
            None => PathSpec::straight(self.value(a)?),
        }
    }

    fn wp(&self) -> usize {
        self.bits + GUARD_BITS
    }
}

fn atom_value(s: &ChainSymbol, ctx: &NumericContext, cache: &mut BTreeMap<ChainSymbol, ComplexHP>) -> Result<ComplexHP> {
    if let Some(v) = cache.get(s) {
        return Ok(v.clone());
    }
    let wp = ctx.wp();
    let v = match s {
        ChainSymbol::One => ComplexHP::one(wp),
        ChainSymbol::Eta { k, i, a } => {
            if *i > 0 {
                ComplexHP::zero(wp)
            } else {
                let x = ctx.value(a)?.to_hp(wp);
                li(*k, &x, wp)?.neg().div(&ComplexHP::two_pi_i(wp).powi(*k))?
            }
        }
        ChainSymbol::EtaFace { .. } => {
            return Err(Error::Degree(format!("{s} has degree 1")));
        }
        ChainSymbol::PathPow { j, a } => {
            let l = ctx.path(a)?.log(wp)?;
            l.div(&ComplexHP::two_pi_i(wp))?.powi(*j)
        }
    };
    cache.insert(s.clone(), v.clone());
    Ok(v)
}

fn basis_value(b: &ChainBasis, ctx: &NumericContext, cache: &mut BTreeMap<ChainSymbol, ComplexHP>) -> Result<ComplexHP> {
    let wp = ctx.wp();
    if !b.cycle.is_one() {
        return Ok(ComplexHP::zero(wp));
    }
    let mut acc = ComplexHP::one(wp);
    for s in &b.atoms {
        acc = acc.mul(&atom_value(s, ctx, cache)?);
    }
    Ok(acc)
}

/// The integration map at working precision, without the final rounding.
pub(crate) fn i_map_raw(x: &ChainElement, ctx: &NumericContext) -> Result<ComplexHP> {
    let wp = ctx.wp();
    // ε kills every term carrying a cycle of positive Adams degree.
    let mut x0 = ChainElement::zero();
    for (b, c) in x.terms().iter() {
        if b.cycle.is_one() {
            x0 = x0 + ChainElement::basis(b.clone()).scale(c);
        }
    }
    let x = &x0;
    if x.is_zero() {
        return Ok(ComplexHP::zero(wp));
    }
    match x.degree() {
        Some(0) => {}
        Some(d) => return Err(Error::Degree(format!("I is defined on degree 0, got degree {d}"))),
        None => return Err(Error::Degree("I needs a homogeneous element".into())),
    }
    let mut cache = BTreeMap::new();
    let mut acc = ComplexHP::zero(wp);
    for (b, c) in x.terms().iter() {
        let v = basis_value(b, ctx, &mut cache)?;
        if !v.is_zero() {
            acc = acc.add(&v.scale(c));
        }
    }
    Ok(acc)
}

/// `I` on chains: `I(η_k(0)) = −Li_k(a)/(2πi)^k`, `I(η_k(i)) = 0` for
/// `i > 0`, `I(p^{∘j}) = (log a/2πi)^j`, `I(z·γ) = ε(z) I(γ)`, multiplicative
/// over `∘`. After dropping the `ε`-killed terms the rest must have degree 0.
pub fn i_map(x: &ChainElement, ctx: &NumericContext) -> Result<ComplexHP> {
    Ok(i_map_raw(x, ctx)?.rounded(ctx.bits))
}

/// Outcome of the disk demo.
#[derive(Clone, Debug)]
pub struct CauchyStokesReport {
    pub radius: Q,
    /// `I_0(∂γ)`: signed count of points of the disk on the faces `{0}` and `{∞}`.
    pub intersection: i64,
    /// `I_1(δγ) = (1/2πi) ∮_{|z|=r} dz/z`, real and imaginary part.
    pub contour: (f64, f64),
    pub error_estimate: f64,
    /// `|I_0(∂γ) − I_1(δγ)|`.
    pub residual: f64,
}

impl CauchyStokesReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

/// Disk `|z| ≤ r` in `P^1`: compares the face intersection with the contour
/// integral of `dz/z` over its topological boundary.
pub fn cauchy_stokes_demo(radius: &Q, tol: f64) -> Result<CauchyStokesReport> {
    if !radius.is_positive() || *radius >= Q::one() {
        return Err(Error::OutOfDomain(format!("radius must lie in (0,1), got {radius}")));
    }
    let zero_inside = radius.is_positive();
    let infinity_inside = false;
    let intersection = zero_inside as i64 - infinity_inside as i64;

    let r = crate::numeric::rational_to_f64(radius);
    // z(θ) = r e^{iθ}; (1/2πi)·z'(θ)/z(θ) split into real and imaginary parts.
    let integrand = |theta: f64, part: usize| {
        let (zr, zi) = (r * theta.cos(), r * theta.sin());
        let (dr, di) = (-r * theta.sin(), r * theta.cos());
        let den = zr * zr + zi * zi;
        let (wr, wi) = ((dr * zr + di * zi) / den, (di * zr - dr * zi) / den);
        let scale = 1.0 / (2.0 * std::f64::consts::PI);
        // (wr + i wi)/(i) = wi − i wr
        if part == 0 {
            wi * scale
        } else {
            -wr * scale
        }
    };
    let two_pi = 2.0 * std::f64::consts::PI;
    let re = quadrature::double_exponential::integrate(|t| integrand(t, 0), 0.0, two_pi, tol * 1e-2);
    let im = quadrature::double_exponential::integrate(|t| integrand(t, 1), 0.0, two_pi, tol * 1e-2);
    let error_estimate = re.error_estimate + im.error_estimate;
    if error_estimate > tol {
        return Err(Error::Numeric(format!("contour quadrature estimate {error_estimate:e} exceeds {tol:e}")));
    }
    let contour = (re.integral, im.integral);
    let residual = ((intersection as f64 - contour.0).powi(2) + contour.1.powi(2)).sqrt();
    Ok(CauchyStokesReport {
        radius: radius.clone(),
        intersection,
        contour,
        error_estimate,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CdgaElement;
    use crate::linear::qr;

    const PI: f64 = std::f64::consts::PI;

    fn half() -> FieldValue {
        FieldValue::rational(qr(1, 2))
    }

    fn ctx() -> NumericContext {
        NumericContext::new(128).unwrap()
    }

    fn li_f64(k: u32, a: f64) -> f64 {
        li(k, &ComplexHP::from_f64(a, 0.0, 128), 128).unwrap().re_f64()
    }

    #[test]
    fn li_closed_forms() {
        let ln2 = 2f64.ln();
        assert!((li_f64(1, 0.5) - ln2).abs() < 1e-15);
        assert!((li_f64(2, 0.5) - (PI * PI / 12.0 - ln2 * ln2 / 2.0)).abs() < 1e-15);
        assert!(li(3, &ComplexHP::zero(128), 128).unwrap().is_zero());
        assert!(li(2, &ComplexHP::one(128), 128).is_err());
    }

    #[test]
    fn li_high_precision_against_log() {
        let a = ComplexHP::from_rational(&qr(3, 4), 200);
        let lhs = li(1, &a, 200).unwrap();
        let rhs = ComplexHP::from_rational(&qr(1, 4), 200).ln().unwrap().neg();
        assert!(lhs.dist(&rhs) < 1e-55);
    }

    #[test]
    fn li_complex_argument() {
        let a = ComplexHP::from_f64(0.0, 0.5, 128);
        let lhs = li(1, &a, 128).unwrap();
        let rhs = ComplexHP::one(128).sub(&a).ln().unwrap().neg();
        assert!(lhs.dist(&rhs) < 1e-35);
    }

    #[test]
    fn quadrature_matches_series() {
        for k in 1..=3 {
            for a in [0.25, 0.5, 0.75] {
                let r = iterated_quadrature(k, a, 1e-10).unwrap();
                assert!((r.value - li_f64(k, a)).abs() < 1e-10, "k={k} a={a}: {}", r.value);
            }
        }
        assert!(iterated_quadrature(4, 0.5, 1e-6).is_err());
        assert!(iterated_quadrature(2, 1.0, 1e-6).is_err());
    }

    #[test]
    fn path_log() {
        let p = PathSpec::straight(ExactPoint::real(qr(1, 2))).unwrap();
        assert!((p.log(128).unwrap().re_f64() + 2f64.ln()).abs() < 1e-15);
        let around = PathSpec::through(
            vec![ExactPoint::new(q(0), q(1)), ExactPoint::real(q(-1)), ExactPoint::new(q(0), q(-1))],
            ExactPoint::real(qr(1, 2)),
        )
        .unwrap();
        let l = around.log(128).unwrap();
        assert!((l.re_f64() + 2f64.ln()).abs() < 1e-15);
        assert!((l.im_f64() - 2.0 * PI).abs() < 1e-14);
        assert!(PathSpec::straight(ExactPoint::real(q(-1))).is_err());
        assert!(PathSpec::straight(ExactPoint::real(q(0))).is_err());
    }

    #[test]
    fn i_map_rules() {
        let c = ctx();
        let eta = |k, i| ChainElement::symbol(ChainSymbol::eta(k, i, &half()).unwrap());
        assert!(i_map(&eta(2, 1), &c).unwrap().is_zero());
        let v = i_map(&eta(2, 0), &c).unwrap();
        let expect = -li_f64(2, 0.5) / (-4.0 * PI * PI);
        assert!((v.re_f64() - expect).abs() < 1e-16 && v.im_f64().abs() < 1e-30);
        let p2 = ChainElement::symbol(ChainSymbol::path_pow(2, &half()).unwrap());
        let v = i_map(&p2, &c).unwrap();
        let l = -(2f64.ln()) / (2.0 * PI);
        // (log a/2πi)² = −(log a/2π)²
        assert!((v.re_f64() + l * l).abs() < 1e-16);
        assert!((i_map(&ChainElement::one(), &c).unwrap().re_f64() - 1.0).abs() == 0.0);
        let u = CdgaElement::unit(half()).unwrap();
        assert!(i_map(&p2.times_cycle(&u), &c).unwrap().is_zero());
        assert!(i_map(&eta(3, 0).times_cycle(&u), &c).unwrap().is_zero());
        let mixed = p2.clone() + eta(2, 0).times_cycle(&u);
        assert!(i_map(&mixed, &c).unwrap().dist(&i_map(&p2, &c).unwrap()) == 0.0);
    }

    #[test]
    fn i_map_rejects_nonzero_degree() {
        let f = ChainElement::symbol(ChainSymbol::eta_face(3, 1, &half()).unwrap());
        assert!(matches!(i_map(&f, &ctx()), Err(Error::Degree(_))));
    }

    #[test]
    fn i_map_multiplicative_on_paths() {
        let c = ctx();
        let p = |j| ChainElement::symbol(ChainSymbol::path_pow(j, &half()).unwrap());
        let lhs = i_map(&p(1).circ(&p(2)), &c).unwrap();
        let rhs = i_map(&p(1), &c).unwrap().mul(&i_map(&p(2), &c).unwrap());
        assert!(lhs.dist(&rhs) < 1e-35);
    }

    #[test]
    fn symbols_need_bindings() {
        let a = FieldValue::symbol("a");
        let p = ChainElement::symbol(ChainSymbol::path_pow(1, &a).unwrap());
        assert!(i_map(&p, &ctx()).is_err());
        let c = ctx().bind("a", ExactPoint::real(qr(1, 2)));
        assert!((i_map(&p, &c).unwrap().im_f64() - 2f64.ln() / (2.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn cauchy_stokes() {
        for r in [qr(1, 2), qr(1, 4)] {
            let rep = cauchy_stokes_demo(&r, 1e-10).unwrap();
            assert_eq!(rep.intersection, 1);
            assert!(rep.passed(1e-10), "{rep:?}");
        }
        assert!(cauchy_stokes_demo(&q(0), 1e-10).is_err());
        assert!(cauchy_stokes_demo(&q(1), 1e-10).is_err());
    }
}
