//! Hodge realization of `M_k(a)`: period matrices through the chain route
//! (Ψ) and the coaction route (Φ), the mixed Tate Hodge checks, tensor
//! compatibility and the `r = 1` regulator.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::algebra::{CdgaElement, FieldValue};
use crate::bar::{BarElement, BarWord};
use crate::chains::{twisted, twisted_d, z_and_l_elements, ChainBasis, ChainElement, TwistedChain};
use crate::comodule::{BasisVector, Comodule};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::linear::{q, LinComb, Q};
use crate::numeric::ComplexHP;
use crate::periods::{i_map_raw, ExactPoint, NumericContext, PathSpec};
use crate::polylog;

/// Comparison matrix: `entries[t][j]` is the `t`-th de Rham coordinate of the
/// `j`-th Betti class.
#[derive(Clone, Debug)]
pub struct PeriodMatrix {
    pub k: u32,
    pub a: String,
    pub precision_bits: usize,
    pub path: String,
    pub betti_basis: Vec<String>,
    pub derham_basis: Vec<String>,
    pub row_adams: Vec<i64>,
    pub col_adams: Vec<i64>,
    pub entries: Vec<Vec<ComplexHP>>,
}

impl PeriodMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Weight `2·adams` of each de Rham basis vector.
    pub fn weights(&self) -> Vec<i64> {
        self.row_adams.iter().map(|r| 2 * r).collect()
    }

    pub fn entry(&self, t: usize, j: usize) -> &ComplexHP {
        &self.entries[t][j]
    }

    /// Largest entrywise distance to another matrix of the same shape.
    pub fn max_distance(&self, other: &PeriodMatrix) -> f64 {
        if self.size() != other.size() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for (r, s) in self.entries.iter().zip(&other.entries) {
            if r.len() != s.len() {
                return f64::INFINITY;
            }
            for (x, y) in r.iter().zip(s) {
                worst = worst.max(x.dist(y));
            }
        }
        worst
    }

    /// Entry strings `[re, im]`, row by row.
    pub fn decimal_entries(&self) -> Vec<Vec<[String; 2]>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|z| {
                        let (re, im) = z.to_decimal_strings();
                        [re, im]
                    })
                    .collect()
            })
            .collect()
    }
}

/// `(2πi)^{−r}` at working precision.
fn twist(r: i64, wp: usize) -> Result<ComplexHP> {
    let t = ComplexHP::two_pi_i(wp).powi(r.unsigned_abs() as u32);
    if r <= 0 {
        Ok(t)
    } else {
        ComplexHP::one(wp).div(&t)
    }
}

/// Splits `Σ v_i ⊗ γ_i` into its components.
fn components(x: &TwistedChain, n: usize) -> Vec<ChainElement> {
    let mut parts = vec![LinComb::zero(); n];
    for ((i, b), c) in x.iter() {
        parts[*i].add_term(b.clone(), c.clone());
    }
    parts
        .into_iter()
        .map(|t| {
            let mut e = ChainElement::zero();
            for (b, c) in t.iter() {
                e = e + ChainElement::basis(b.clone()).scale(c);
            }
            e
        })
        .collect()
}

/// `c = id ⊗ (2πi)^{−r} I` on each Betti class; unrounded.
fn comparison_columns(basis: &[BasisVector], classes: &[TwistedChain], ctx: &NumericContext) -> Result<Vec<Vec<ComplexHP>>> {
    let n = basis.len();
    let wp = ctx.bits + crate::periods::GUARD_BITS;
    let mut rows = vec![Vec::with_capacity(classes.len()); n];
    for x in classes {
        let parts = components(x, n);
        for (t, g) in parts.iter().enumerate() {
            let v = i_map_raw(g, ctx)?;
            rows[t].push(if v.is_zero() { v } else { v.mul(&twist(basis[t].adams, wp)?) });
        }
    }
    Ok(rows)
}

fn round_all(rows: Vec<Vec<ComplexHP>>, bits: usize) -> Vec<Vec<ComplexHP>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|z| z.rounded(bits)).collect())
        .collect()
}

fn describe_point(a: &FieldValue, ctx: &NumericContext) -> Result<String> {
    let v = ctx.value(a)?;
    Ok(match a {
        FieldValue::Rational(_) => v.to_string(),
        _ => format!("{a}={v}"),
    })
}

fn check_numeric_point(a: &FieldValue, ctx: &NumericContext) -> Result<()> {
    let v = ctx.value(a)?;
    let r2 = &v.re * &v.re + &v.im * &v.im;
    if r2 >= q(1) || v.is_zero() {
        return Err(Error::OutOfDomain(format!("numeric periods need 0 < |a| < 1, got {v}")));
    }
    Ok(())
}

fn polylog_matrix_shell(k: u32, a: &FieldValue, ctx: &NumericContext, path: &PathSpec) -> Result<PeriodMatrix> {
    let basis = polylog::basis(k);
    let mut betti_basis = vec![format!("Z{k}")];
    betti_basis.extend((1..=k).map(|j| format!("L{j}")));
    let mut col_adams = vec![0];
    col_adams.extend((1..=k as i64).map(|j| -j));
    Ok(PeriodMatrix {
        k,
        a: describe_point(a, ctx)?,
        precision_bits: ctx.bits,
        path: path.to_string(),
        betti_basis,
        derham_basis: basis.iter().map(|b| b.name.clone()).collect(),
        row_adams: basis.iter().map(|b| b.adams).collect(),
        col_adams,
        entries: Vec::new(),
    })
}

/// Ψ(M_k(a)): columns are `c(Z_k(a)), c(L_1(a)), …, c(L_k(a))` in the basis
/// `e_0, …, e_{−k}`.
pub fn period_matrix_psi(k: u32, a: &FieldValue, ctx: &NumericContext) -> Result<PeriodMatrix> {
    check_numeric_point(a, ctx)?;
    let path = ctx.path(a)?;
    let zl = z_and_l_elements(k, a)?;
    let conn = polylog::li_connection(k, a)?;
    for (x, name) in zl.all().iter().zip(zl.names()) {
        if !twisted_d(&conn, x).is_zero() {
            return Err(Error::Structure(format!("{name} is not a cocycle")));
        }
    }
    let mut m = polylog_matrix_shell(k, a, ctx, &path)?;
    m.entries = round_all(comparison_columns(conn.basis(), &zl.all(), ctx)?, ctx.bits);
    Ok(m)
}

/// Exact checks made on the coaction-expanded Betti classes.
#[derive(Clone, Debug)]
pub struct PhiReport {
    /// `ΔX` is closed in `V ⊗ B(N, AC)` for each class.
    pub cocycle_ok: bool,
    /// `(Δ_V ⊗ id)ΔX = (id ⊗ Δ)ΔX` for each class.
    pub kernel_ok: bool,
    /// Largest distance between `c(ΔX)` and its expansion in the de Rham basis `Δ(e_j)`.
    pub residual: f64,
}

impl PhiReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.cocycle_ok && self.kernel_ok && self.residual <= tol
    }
}

type Expanded = LinComb<(usize, BarWord<ChainBasis>)>;

/// `ΔX = Σ_j Σ_t v_t ⊗ [C_jt] γ_j`.
fn expand(comod: &Comodule, x: &TwistedChain) -> Expanded {
    let mut out = LinComb::zero();
    for ((j, g), c) in x.iter() {
        for t in 0..comod.dim() {
            for (w, d) in comod.entry(*j, t).terms().iter() {
                let word = BarWord {
                    letters: w.letters.clone(),
                    right: g.clone(),
                };
                out.add_term((t, word), c * d);
            }
        }
    }
    out
}

fn expanded_is_closed(e: &Expanded, n: usize) -> bool {
    (0..n).all(|t| {
        let mut part = LinComb::zero();
        for ((s, w), c) in e.iter() {
            if *s == t {
                part.add_term(w.clone(), c.clone());
            }
        }
        BarElement::from_terms(part).bar_d().is_zero()
    })
}

fn expanded_in_kernel(comod: &Comodule, e: &Expanded) -> bool {
    let mut diff: LinComb<(usize, BarWord, BarWord<ChainBasis>)> = LinComb::zero();
    for ((t, w), c) in e.iter() {
        for s in 0..comod.dim() {
            for (u, d) in comod.entry(*t, s).terms().iter() {
                diff.add_term((s, u.clone(), w.clone()), c * d);
            }
        }
        for ((l, r), d) in BarElement::basis(w.clone()).coproduct().iter() {
            diff.add_term((*t, l.clone(), r.clone()), -(c * d));
        }
    }
    diff.is_zero()
}

/// Φ(M_k(a)): the classes `ΔZ_k(a)`, `ΔL_j(a)` are expanded through the
/// coaction, pushed through `c_V ⊗ c`, and read off in the basis `Δ(e_{−j})`.
pub fn period_matrix_phi(k: u32, a: &FieldValue, ctx: &NumericContext) -> Result<(PeriodMatrix, PhiReport)> {
    check_numeric_point(a, ctx)?;
    let path = ctx.path(a)?;
    let motive = polylog::build(k, a)?;
    let comod = &motive.as_comodule;
    let n = comod.dim();
    let wp = ctx.bits + crate::periods::GUARD_BITS;
    let zl = z_and_l_elements(k, a)?;

    let mut cocycle_ok = true;
    let mut kernel_ok = true;
    let mut residual = 0.0f64;
    let mut rows = vec![Vec::new(); n];
    let mut values: BTreeMap<ChainBasis, ComplexHP> = BTreeMap::new();
    for x in zl.all() {
        let e = expand(comod, &x);
        cocycle_ok &= expanded_is_closed(&e, n);
        kernel_ok &= expanded_in_kernel(comod, &e);

        let mut image: BTreeMap<(usize, BarWord), ComplexHP> = BTreeMap::new();
        for ((t, w), c) in e.iter() {
            let g = &w.right;
            let v = match values.get(g) {
                Some(v) => v.clone(),
                None => {
                    let v = i_map_raw(&ChainElement::basis(g.clone()), ctx)?;
                    values.insert(g.clone(), v.clone());
                    v
                }
            };
            if v.is_zero() {
                continue;
            }
            let letters_adams: i64 = w.letters.iter().map(|m| m.adams()).sum();
            let z = v.scale(c).mul(&twist(comod.basis()[*t].adams + letters_adams, wp)?);
            let key = (*t, BarWord::plain(w.letters.clone()));
            let slot = image.entry(key).or_insert_with(|| ComplexHP::zero(wp));
            *slot = slot.add(&z);
        }

        let lambda: Vec<ComplexHP> = (0..n)
            .map(|j| image.get(&(j, BarWord::empty())).cloned().unwrap_or_else(|| ComplexHP::zero(wp)))
            .collect();
        let mut expected: BTreeMap<(usize, BarWord), ComplexHP> = BTreeMap::new();
        for (j, l) in lambda.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for t in 0..n {
                for (w, c) in comod.entry(j, t).terms().iter() {
                    let slot = expected.entry((t, w.clone())).or_insert_with(|| ComplexHP::zero(wp));
                    *slot = slot.add(&l.scale(c));
                }
            }
        }
        let zero = ComplexHP::zero(wp);
        for key in image.keys().chain(expected.keys()) {
            let d = image.get(key).unwrap_or(&zero).dist(expected.get(key).unwrap_or(&zero));
            residual = residual.max(d);
        }
        for (t, l) in lambda.into_iter().enumerate() {
            rows[t].push(l);
        }
    }

    let mut m = polylog_matrix_shell(k, a, ctx, &path)?;
    m.entries = round_all(rows, ctx.bits);
    Ok((
        m,
        PhiReport {
            cocycle_ok,
            kernel_ok,
            residual,
        },
    ))
}

/// Weight-graded piece of a period matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPiece {
    pub adams: i64,
    pub weight: i64,
    pub hodge_type: (i64, i64),
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct MthsReport {
    pub pieces: Vec<GradedPiece>,
    /// Zero above the diagonal in the weight order.
    pub triangular: bool,
    /// Diagonal entry at Adams degree `r` is `(2πi)^{−r}`.
    pub diagonal: bool,
    /// Each weight block is the scalar `(2πi)^{−r}`.
    pub graded_scalar: bool,
    pub max_defect: f64,
}

impl MthsReport {
    pub fn passed(&self) -> bool {
        self.triangular && self.diagonal && self.graded_scalar
    }
}

pub fn check_mths(p: &PeriodMatrix, tol: f64) -> MthsReport {
    let n = p.size();
    let bits = p.precision_bits + crate::periods::GUARD_BITS;
    let mut pieces: Vec<GradedPiece> = Vec::new();
    for &r in &p.row_adams {
        match pieces.iter_mut().find(|g| g.adams == r) {
            Some(g) => g.dim += 1,
            None => pieces.push(GradedPiece {
                adams: r,
                weight: 2 * r,
                hodge_type: (r, r),
                dim: 1,
            }),
        }
    }
    let shape_ok = p.col_adams.len() == n && p.entries.iter().all(|r| r.len() == n);
    let mut triangular = shape_ok;
    let mut diagonal = shape_ok;
    let mut graded_scalar = shape_ok;
    let mut max_defect = 0.0f64;
    if shape_ok {
        for t in 0..n {
            for j in 0..n {
                let z = &p.entries[t][j];
                let (rt, rj) = (p.row_adams[t], p.col_adams[j]);
                if rt > rj {
                    let d = z.abs_f64();
                    max_defect = max_defect.max(d);
                    triangular &= d <= tol;
                } else if rt == rj {
                    let target = match twist(rt, bits) {
                        Ok(s) if t == j => s,
                        Ok(_) => ComplexHP::zero(bits),
                        Err(_) => ComplexHP::zero(bits),
                    };
                    let d = z.dist(&target);
                    max_defect = max_defect.max(d);
                    if t == j {
                        diagonal &= d <= tol;
                    }
                    graded_scalar &= d <= tol;
                }
            }
        }
    }
    MthsReport {
        pieces,
        triangular,
        diagonal,
        graded_scalar,
        max_defect,
    }
}

/// Period matrix of `Q(r)` in its single basis vector.
pub fn tate_matrix(r: i64, ctx: &NumericContext) -> Result<PeriodMatrix> {
    let basis = Comodule::tate(r).basis().to_vec();
    let x = twisted(&[(0, ChainElement::one())]);
    let entries = round_all(comparison_columns(&basis, &[x], ctx)?, ctx.bits);
    Ok(PeriodMatrix {
        k: 0,
        a: String::new(),
        precision_bits: ctx.bits,
        path: String::new(),
        betti_basis: vec![format!("1({r})")],
        derham_basis: vec![basis[0].name.clone()],
        row_adams: vec![-r],
        col_adams: vec![-r],
        entries,
    })
}

/// `T(x ⊗ y) = Σ (v_i ⊗ w_j) ⊗ γ_i ∘ δ_j`, indexed as `i·m + j`.
pub fn tensor_class(x: &TwistedChain, n: usize, y: &TwistedChain, m: usize) -> TwistedChain {
    let xs = components(x, n);
    let ys = components(y, m);
    let mut parts = Vec::new();
    for (i, g) in xs.iter().enumerate() {
        for (j, h) in ys.iter().enumerate() {
            let p = g.circ(h);
            if !p.is_zero() {
                parts.push((i * m + j, p));
            }
        }
    }
    twisted(&parts)
}

fn kronecker(a: &PeriodMatrix, b: &PeriodMatrix, bits: usize) -> Vec<Vec<ComplexHP>> {
    let (n, m) = (a.size(), b.size());
    let mut out = vec![vec![ComplexHP::zero(bits); n * m]; n * m];
    for t in 0..n {
        for s in 0..m {
            for j in 0..n {
                for l in 0..m {
                    out[t * m + s][j * m + l] = a.entries[t][j].mul(&b.entries[s][l]).rounded(bits);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct TensorReport {
    pub size: usize,
    /// Every product class `T(x ⊗ y)` is closed for the tensor connection.
    pub cocycles_ok: bool,
    /// Largest entry distance to the Kronecker product.
    pub max_diff: f64,
    pub tensor_matrix: PeriodMatrix,
}

impl TensorReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.cocycles_ok && self.max_diff <= tol
    }
}

fn tensor_report(
    ca: &Connection,
    xa: &[TwistedChain],
    pa: &PeriodMatrix,
    cb: &Connection,
    xb: &[TwistedChain],
    pb: &PeriodMatrix,
    ctx: &NumericContext,
) -> Result<TensorReport> {
    let conn = ca.tensor(cb);
    let (n, m) = (ca.dim(), cb.dim());
    let mut classes = Vec::new();
    let mut names = Vec::new();
    let mut col_adams = Vec::new();
    for (x, (nx, ax)) in xa.iter().zip(pa.betti_basis.iter().zip(&pa.col_adams)) {
        for (y, (ny, ay)) in xb.iter().zip(pb.betti_basis.iter().zip(&pb.col_adams)) {
            classes.push(tensor_class(x, n, y, m));
            names.push(format!("{nx}⊗{ny}"));
            col_adams.push(ax + ay);
        }
    }
    let cocycles_ok = classes.iter().all(|x| twisted_d(&conn, x).is_zero());
    let entries = round_all(comparison_columns(conn.basis(), &classes, ctx)?, ctx.bits);
    let tensor_matrix = PeriodMatrix {
        k: 0,
        a: format!("{} ⊗ {}", pa.a, pb.a),
        precision_bits: ctx.bits,
        path: format!("{} ; {}", pa.path, pb.path),
        betti_basis: names,
        derham_basis: conn.basis().iter().map(|b| b.name.clone()).collect(),
        row_adams: conn.basis().iter().map(|b| b.adams).collect(),
        col_adams,
        entries,
    };
    let kron = PeriodMatrix {
        entries: kronecker(pa, pb, ctx.bits),
        ..tensor_matrix.clone()
    };
    Ok(TensorReport {
        size: n * m,
        cocycles_ok,
        max_diff: tensor_matrix.max_distance(&kron),
        tensor_matrix,
    })
}

/// Ψ(M_1(a) ⊗ M_1(b)) against the Kronecker product, basis in lex order.
pub fn tensor_check(a: &FieldValue, b: &FieldValue, ctx: &NumericContext) -> Result<TensorReport> {
    let ca = polylog::li_connection(1, a)?;
    let cb = polylog::li_connection(1, b)?;
    let pa = period_matrix_psi(1, a, ctx)?;
    let pb = period_matrix_psi(1, b, ctx)?;
    let xa = z_and_l_elements(1, a)?.all();
    let xb = z_and_l_elements(1, b)?.all();
    tensor_report(&ca, &xa, &pa, &cb, &xb, &pb, ctx)
}

/// Ψ(Q(r) ⊗ Q(s)) against the product of the two 1×1 matrices.
pub fn tate_tensor_check(r: i64, s: i64, ctx: &NumericContext) -> Result<TensorReport> {
    let ca = Connection::zero(Comodule::tate(r).basis().to_vec());
    let cb = Connection::zero(Comodule::tate(s).basis().to_vec());
    let one = vec![twisted(&[(0, ChainElement::one())])];
    tensor_report(&ca, &one, &tate_matrix(r, ctx)?, &cb, &one, &tate_matrix(s, ctx)?, ctx)
}

/// Regulator at `r = 1` for `M_1(a) = [u]`, `u = 1 − a`.
#[derive(Clone, Debug)]
pub struct RegulatorReport {
    pub u: Q,
    /// Off-diagonal period `−Li_1(a)`.
    pub period: ComplexHP,
    /// Principal `log u`.
    pub direct: ComplexHP,
    /// `m/d` with `period − direct ≈ 2πi·m/d`.
    pub multiple: Q,
    pub residual: f64,
    /// `dξ_1(a) = −ρ_1(a) = −(u)`, the `dG = −Z` pattern.
    pub boundary_ok: bool,
}

impl RegulatorReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.boundary_ok && self.residual <= tol
    }
}

const MAX_DENOMINATOR: i64 = 12;

/// Closest `m/d` with `d ≤ 12` to a real number.
fn nearest_small_rational(x: f64) -> Q {
    let mut best = (f64::INFINITY, Q::zero());
    for d in 1..=MAX_DENOMINATOR {
        let m = (x * d as f64).round() as i64;
        let err = (x - m as f64 / d as f64).abs();
        if err < best.0 - 1e-15 {
            best = (err, Q::new(m.into(), d.into()));
        }
    }
    best.1
}

pub fn regulator_r1(u: &Q, ctx: &NumericContext) -> Result<RegulatorReport> {
    if !u.is_positive() || *u >= q(1) {
        return Err(Error::OutOfDomain(format!("regulator needs u ∈ (0,1), got {u}")));
    }
    let a = FieldValue::rational(q(1) - u);
    let wp = ctx.bits + crate::periods::GUARD_BITS;
    let p = period_matrix_psi(1, &a, ctx)?;
    let period = p.entries[1][0].clone();
    let direct = ComplexHP::from_rational(u, wp).ln()?.rounded(ctx.bits);
    let diff = period.sub(&direct);
    let ratio = diff.div(&ComplexHP::two_pi_i(wp))?;
    let multiple = nearest_small_rational(ratio.re_f64());
    let shift = ComplexHP::two_pi_i(wp).scale(&multiple);
    let residual = diff.sub(&shift).abs_f64();

    let xi = ChainElement::xi(1, &a)?;
    let z = CdgaElement::unit(FieldValue::rational(u.clone()))?;
    let boundary_ok = xi.chain_d() == -ChainElement::from_cycle(&z);
    Ok(RegulatorReport {
        u: u.clone(),
        period,
        direct,
        multiple,
        residual,
        boundary_ok,
    })
}

/// Context at `bits` with the path for `a` wound `winding` times around 0
/// before heading to `a`.
pub fn wound_context(a: &FieldValue, bits: usize, winding: u32) -> Result<NumericContext> {
    let ctx = NumericContext::new(bits)?;
    let end = ctx.value(a)?;
    let mut pts = Vec::new();
    for _ in 0..winding {
        pts.push(ExactPoint::new(q(0), q(1)));
        pts.push(ExactPoint::real(q(-1)));
        pts.push(ExactPoint::new(q(0), q(-1)));
        pts.push(ExactPoint::real(q(1)));
    }
    if end.re.is_zero() || end.re.is_negative() {
        return Err(Error::Unsupported("wound paths need Re a > 0".into()));
    }
    ctx.with_path(a, PathSpec::through(pts, end)?)
}
