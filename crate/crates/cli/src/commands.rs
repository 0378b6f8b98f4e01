use tatehodge::algebra::{CdgaElement, FieldValue};
use tatehodge::comodule::Comodule;
use tatehodge::connection::validate_degrees;
use tatehodge::cycle_faces::{check_rho_boundary, properness_report};
use tatehodge::hodge::{self, PeriodMatrix};
use tatehodge::linear::Q;
use tatehodge::numeric::ComplexHP;
use tatehodge::periods::{self, NumericContext};
use tatehodge::polylog;
use tatehodge::suite::hopf_suite;

use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    VerifyHopf,
    VerifyFlatness,
    VerifyCocycle,
    VerifyFaces,
    VerifyComodule,
    PeriodsLi,
    PeriodsQuadcheck,
    HodgeMatrix,
    HodgeCompare,
    HodgeTensor,
    Regulator,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyHopf => "verify hopf",
            Command::VerifyFlatness => "verify flatness",
            Command::VerifyCocycle => "verify cocycle",
            Command::VerifyFaces => "verify faces",
            Command::VerifyComodule => "verify comodule",
            Command::PeriodsLi => "periods li",
            Command::PeriodsQuadcheck => "periods quadcheck",
            Command::HodgeMatrix => "hodge matrix",
            Command::HodgeCompare => "hodge compare",
            Command::HodgeTensor => "hodge tensor",
            Command::Regulator => "regulator",
        }
    }

    fn numeric_a(self) -> bool {
        matches!(
            self,
            Command::PeriodsLi | Command::HodgeMatrix | Command::HodgeCompare | Command::HodgeTensor
        )
    }
}

#[derive(Clone, Debug)]
pub struct Params {
    pub k: u32,
    pub a: FieldValue,
    pub a_note: Option<String>,
    pub b: FieldValue,
    pub u: Q,
    pub bits: usize,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
}

fn parse_point(name: &str, s: &str) -> Result<(FieldValue, Option<String>), String> {
    let (v, note) = FieldValue::parse_with_note(s).map_err(|e| format!("--{name}: {e}"))?;
    if v.is_zero() || v.is_one() {
        return Err(format!("--{name} must differ from 0 and 1"));
    }
    Ok((v, note))
}

fn require_unit_disk(name: &str, v: &FieldValue) -> Result<(), String> {
    match v.as_rational() {
        Some(r) if r * r < Q::from_integer(1.into()) => Ok(()),
        Some(_) => Err(format!("--{name} must satisfy |{name}| < 1 for numeric commands")),
        None => Err(format!("--{name} must be a number for numeric commands")),
    }
}

impl Params {
    #[allow(clippy::too_many_arguments)]
    pub fn parse(
        command: Command,
        k: u32,
        a: &str,
        b: &str,
        u: &str,
        bits: usize,
        tol: &str,
        seed: u64,
        samples: usize,
    ) -> Result<Params, String> {
        let (a, a_note) = parse_point("a", a)?;
        let (b, _) = parse_point("b", b)?;
        let u = FieldValue::parse(u)
            .ok()
            .and_then(|v| v.as_rational().cloned())
            .ok_or_else(|| format!("--u must be a rational number, got {u}"))?;
        let tol: f64 = tol.parse().map_err(|_| format!("--tol must be a number, got {tol}"))?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err("--tol must be positive".into());
        }
        if samples == 0 {
            return Err("--samples must be positive".into());
        }
        if command.numeric_a() {
            require_unit_disk("a", &a)?;
        }
        if command == Command::HodgeTensor {
            require_unit_disk("b", &b)?;
        }
        if command == Command::Regulator
            && !(u > Q::from_integer(0.into()) && u < Q::from_integer(1.into()))
        {
            return Err("--u must lie in (0,1)".into());
        }
        Ok(Params {
            k,
            a,
            a_note,
            b,
            u,
            bits,
            tol,
            seed,
            samples,
        })
    }

    fn ctx(&self) -> Result<NumericContext, String> {
        NumericContext::new(self.bits).map_err(|e| e.to_string())
    }
}

pub struct JobOut {
    checks: Vec<Check>,
    matrix: Option<PeriodMatrix>,
}

impl From<Vec<Check>> for JobOut {
    fn from(checks: Vec<Check>) -> Self {
        JobOut { checks, matrix: None }
    }
}

type Job<'a> = Box<dyn FnOnce() -> JobOut + Send + 'a>;

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

fn fmt_hp(z: &ComplexHP) -> String {
    z.to_string()
}

fn hopf_jobs(p: &Params) -> Vec<Job<'_>> {
    vec![Box::new(move || {
        hopf_suite(p.seed, p.samples)
            .into_iter()
            .map(|l| {
                let detail = format!("{} samples, {} failures", l.samples, l.failures);
                Check::new(l.name, l.identity, l.passed(), detail)
            })
            .collect::<Vec<_>>()
            .into()
    })]
}

fn flatness_jobs(p: &Params) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for j in 1..=p.k {
        jobs.push(Box::new(move || {
            let name = format!("flat_M{j}");
            let anchor = "dΓ + Γ² = 0";
            let c = match polylog::li_connection(j, &p.a) {
                Ok(c) => c,
                Err(e) => return vec![Check::error(name, anchor, e)].into(),
            };
            let mut out = vec![Check::new(&name, anchor, c.check_flat(), format!("M_{j}({}) connection", p.a))];
            let entries = c
                .to_comodule()
                .map(|m| (0..m.dim()).all(|r| (0..m.dim()).all(|s| m.entry(r, s).is_cocycle().unwrap_or(false))));
            out.push(match entries {
                Ok(ok) => Check::new(format!("coaction_cocycles_M{j}"), "bar_d(Σ Γ_n) = 0 entrywise", ok, "entries of Σ Γ_n"),
                Err(e) => Check::error(format!("coaction_cocycles_M{j}"), "bar_d(Σ Γ_n) = 0 entrywise", e),
            });
            out.into()
        }));
    }
    if p.k >= 2 {
        jobs.push(Box::new(move || {
            let anchor = "dΓ + Γ² ≠ 0 without ρ_2";
            match polylog::li_connection(p.k, &p.a) {
                Ok(c) => {
                    let broken = c.with_entry(0, 2, CdgaElement::zero());
                    vec![Check::new("flatness_detects_missing_rho2", anchor, !broken.check_flat(), "entry (e0, e-2) removed")].into()
                }
                Err(e) => vec![Check::error("flatness_detects_missing_rho2", anchor, e)].into(),
            }
        }));
    }
    jobs.push(Box::new(move || {
        let mut support = Vec::new();
        for n in -4..=0i64 {
            let mut basis = Comodule::tate(0).basis().to_vec();
            basis.extend(Comodule::tate(n).basis().iter().cloned());
            support.extend(validate_degrees(&basis));
        }
        let mut pos = Comodule::tate(0).basis().to_vec();
        pos.extend(Comodule::tate(1).basis().iter().cloned());
        let allowed = !validate_degrees(&pos).is_empty();
        vec![Check::new(
            "ext_vanishing_nonpositive",
            "Γ of Adams degree 0 on Q(0)⊕Q(n) vanishes for n ≤ 0",
            support.is_empty() && allowed,
            format!("n = -4..0 support {:?}; n = 1 admits a slot: {allowed}", support),
        )]
        .into()
    }));
    jobs
}

fn cocycle_jobs(p: &Params) -> Vec<Job<'_>> {
    (1..=p.k)
        .map(|j| -> Job<'_> {
            Box::new(move || {
                let name = format!("li_word_cocycle_{j}");
                let anchor = "bar_d(Σ_t [(a)^t|ρ_{k−t}]) = 0";
                let r = polylog::li_word(j, &p.a).and_then(|w| Ok((w.is_cocycle()?, w.terms().len())));
                vec![match r {
                    Ok((ok, n)) => Check::new(name, anchor, ok, format!("Li_{j}({}) with {n} words", p.a)),
                    Err(e) => Check::error(name, anchor, e),
                }]
                .into()
            })
        })
        .collect()
}

fn faces_jobs(p: &Params) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for j in 1..=p.k {
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            let anchor = "proper intersection with every face";
            out.push(match properness_report(j, &p.a) {
                Ok(r) => Check::new(format!("rho{j}_admissible"), anchor, r.proper, format!("{} resolving faces", r.faces.len())),
                Err(e) => Check::error(format!("rho{j}_admissible"), anchor, e),
            });
            if j >= 2 {
                let anchor = "∂ρ_k(a) = −(a)·ρ_{k−1}(a)";
                out.push(match check_rho_boundary(j, &p.a) {
                    Ok((lhs, rhs)) => Check::new(
                        format!("rho{j}_boundary"),
                        anchor,
                        lhs == rhs,
                        format!("{} alternating terms", lhs.terms().len()),
                    ),
                    Err(e) => Check::error(format!("rho{j}_boundary"), anchor, e),
                });
            }
            out.into()
        }));
    }
    jobs
}

fn comodule_jobs(p: &Params) -> Vec<Job<'_>> {
    vec![Box::new(move || {
        let m = match polylog::build(p.k, &p.a) {
            Ok(m) => m,
            Err(e) => return vec![Check::error("build_M", "Δ_M = Σ Γ_n", e)].into(),
        };
        let mut out = vec![Check::new(
            "build_M",
            "Δ_M = Σ Γ_n",
            true,
            format!(
                "M_{}({}) of dimension {}{}",
                p.k,
                p.a,
                m.as_comodule.dim(),
                if m.dependence_warning { "; a and 1−a are multiplicatively dependent" } else { "" }
            ),
        )];
        out.push(match m.as_comodule.check_axioms() {
            Ok(r) => Check::new(
                "comodule_axioms",
                "(Δ⊗1)Δ_V = (1⊗Δ)Δ_V, (1⊗e)Δ_V = id, Adams degrees",
                r.passed(),
                format!("degree {}, coassociative {}, counital {}", r.degree_ok, r.coassoc_ok, r.counit_ok),
            ),
            Err(e) => Check::error("comodule_axioms", "(Δ⊗1)Δ_V = (1⊗Δ)Δ_V", e),
        });
        let kr = m.as_comodule.kernel_identity();
        out.push(Check::new(
            "kernel_identity",
            "ker(Δ_V⊗1 − 1⊗Δ) = Δ_V(V)",
            kr.kernel_dim == p.k as usize + 1 && kr.equals_image,
            format!(
                "kernel {}, image {}, span {}, equal {}",
                kr.kernel_dim, kr.image_dim, kr.span_dim, kr.equals_image
            ),
        ));
        out.push(match m.check_extension_structure() {
            Ok(r) => Check::new(
                "extension_structure",
                "0 → Sym^{k−1}([a])(1) → M_k(a) → Q(0) → 0",
                r.passed(),
                match &r.scaling {
                    Some(s) => format!("scaling {}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")),
                    None => "no diagonal isomorphism".into(),
                },
            ),
            Err(e) => Check::error("extension_structure", "0 → Sym^{k−1}([a])(1) → M_k(a) → Q(0) → 0", e),
        });
        out.into()
    })]
}

fn li_jobs(p: &Params) -> Vec<Job<'_>> {
    (1..=p.k)
        .map(|j| -> Job<'_> {
            Box::new(move || {
                let a = p.a.as_rational().expect("validated").clone();
                let bits = p.bits;
                let x = ComplexHP::from_rational(&a, bits + 32);
                let mut out = Vec::new();
                let name = format!("li{j}_duplication");
                let anchor = "Li_k(a) + Li_k(−a) = 2^{1−k} Li_k(a²)";
                let r = (|| {
                    let lhs = periods::li(j, &x, bits)?.add(&periods::li(j, &x.neg(), bits)?);
                    let sq = periods::li(j, &x.mul(&x), bits)?;
                    let rhs = sq.scale(&Q::new(1.into(), (1i64 << (j - 1)).into()));
                    Ok::<_, tatehodge::error::Error>((periods::li(j, &x, bits)?, lhs.dist(&rhs)))
                })();
                out.push(match r {
                    Ok((v, d)) => Check::new(name, anchor, d <= p.tol, format!("Li_{j}({}) = {}, defect {}", p.a, fmt_hp(&v), sci(d))),
                    Err(e) => Check::error(name, anchor, e),
                });
                if j == 1 {
                    let anchor = "Li_1(a) = −log(1−a)";
                    let r = (|| {
                        let v = periods::li(1, &x, bits)?;
                        let w = ComplexHP::one(bits + 32).sub(&x).ln()?.neg();
                        Ok::<_, tatehodge::error::Error>(v.dist(&w))
                    })();
                    out.push(match r {
                        Ok(d) => Check::new("li1_log", anchor, d <= p.tol, format!("defect {}", sci(d))),
                        Err(e) => Check::error("li1_log", anchor, e),
                    });
                }
                out.into()
            })
        })
        .collect()
}

fn quadcheck_jobs(p: &Params) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job<'_>> = Vec::new();
    let a = p.a.as_rational().cloned();
    for j in 1..=p.k.min(3) {
        let a = a.clone();
        jobs.push(Box::new(move || {
            let name = format!("quadrature_li{j}");
            let anchor = "∫_{0≤t_0≤…≤t_{k−1}≤a} dt_0/(1−t_0) dt_1/t_1 ⋯ = Li_k(a)";
            let Some(a) = a else {
                return vec![Check::error(name, anchor, "a must be a number")].into();
            };
            let af = tatehodge::numeric::rational_to_f64(&a);
            let r = periods::iterated_quadrature(j, af, p.tol).and_then(|q| {
                let s = periods::li(j, &ComplexHP::from_rational(&a, p.bits), p.bits)?;
                Ok((q.value, (q.value - s.re_f64()).abs(), q.evaluations))
            });
            vec![match r {
                Ok((v, d, n)) => Check::new(name, anchor, d <= p.tol, format!("quadrature {v:.15}, |Δ| {}, {n} evaluations", sci(d))),
                Err(e) => Check::error(name, anchor, e),
            }]
            .into()
        }));
    }
    for (n, d) in [(1i64, 4i64), (1, 2)] {
        jobs.push(Box::new(move || {
            let name = format!("cauchy_stokes_r{n}/{d}");
            let anchor = "I_0(∂γ) − I_1(δγ) = 0 on a disk about 0";
            let r = Q::new(n.into(), d.into());
            vec![match periods::cauchy_stokes_demo(&r, p.tol) {
                Ok(rep) => Check::new(
                    name,
                    anchor,
                    rep.passed(p.tol),
                    format!(
                        "I_0(∂γ) = {}, I_1(δγ) = {:.15} + {:.3e}i, residual {}",
                        rep.intersection,
                        rep.contour.0,
                        rep.contour.1,
                        sci(rep.residual)
                    ),
                ),
                Err(e) => Check::error(name, anchor, e),
            }]
            .into()
        }));
    }
    jobs
}

/// Closed-form matrix `1; −Li_t(a); (2πi)^j (log a)^{t−j}/(t−j)!`.
fn closed_form(k: u32, a: &Q, bits: usize) -> Result<Vec<Vec<ComplexHP>>, tatehodge::error::Error> {
    let n = k as usize + 1;
    let wp = bits + 32;
    let x = ComplexHP::from_rational(a, wp);
    let log_a = x.ln()?;
    let tpi = ComplexHP::two_pi_i(wp);
    let mut m = vec![vec![ComplexHP::zero(wp); n]; n];
    m[0][0] = ComplexHP::one(wp);
    for t in 1..n {
        m[t][0] = periods::li(t as u32, &x, wp)?.neg();
        let mut fact = Q::from_integer(1.into());
        for j in (1..=t).rev() {
            let e = t - j;
            if e > 0 {
                fact *= Q::from_integer((e as i64).into());
            }
            m[t][j] = tpi.powi(j as u32).mul(&log_a.powi(e as u32)).scale(&fact.recip());
        }
    }
    Ok(m)
}

fn matrix_jobs(p: &Params) -> Vec<Job<'_>> {
    vec![Box::new(move || {
        let ctx = match p.ctx() {
            Ok(c) => c,
            Err(e) => return vec![Check::error("period_matrix_psi", "c = id ⊗ (2πi)^{−r} I", e)].into(),
        };
        let m = match hodge::period_matrix_psi(p.k, &p.a, &ctx) {
            Ok(m) => m,
            Err(e) => return vec![Check::error("period_matrix_psi", "c = id ⊗ (2πi)^{−r} I", e)].into(),
        };
        let mut out = vec![Check::new(
            "period_matrix_psi",
            "c = id ⊗ (2πi)^{−r} I on Z_k, L_1..L_k",
            true,
            format!("{0}×{0} at {1} bits", m.size(), m.precision_bits),
        )];
        let a = p.a.as_rational().expect("validated");
        out.push(match closed_form(p.k, a, p.bits) {
            Ok(cf) => {
                let mut worst = 0.0f64;
                for (r, s) in m.entries.iter().zip(&cf) {
                    for (x, y) in r.iter().zip(s) {
                        worst = worst.max(x.dist(y));
                    }
                }
                Check::new(
                    "closed_form",
                    "entries 1; −Li_j(a); (2πi)^j (log a)^{t−j}/(t−j)!",
                    worst <= p.tol,
                    format!("max |Δ| {}", sci(worst)),
                )
            }
            Err(e) => Check::error("closed_form", "entries 1; −Li_j(a); (2πi)^j (log a)^{t−j}/(t−j)!", e),
        });
        let r = hodge::check_mths(&m, p.tol);
        out.push(Check::new(
            "mixed_tate_hodge",
            "gr^W_{2r} is Q(−r) of type (r,r); comparison (2πi)^{−r} on gr^W",
            r.passed(),
            format!(
                "triangular {}, diagonal {}, graded scalar {}, weights {:?}",
                r.triangular,
                r.diagonal,
                r.graded_scalar,
                r.pieces.iter().map(|g| g.weight).collect::<Vec<_>>()
            ),
        ));
        JobOut {
            checks: out,
            matrix: Some(m),
        }
    })]
}

fn compare_jobs(p: &Params) -> Vec<Job<'_>> {
    vec![Box::new(move || {
        let anchor = "Φ(M) ≅ Ψ(M) on ΔZ_k, ΔL_j";
        let r = p.ctx().map_err(tatehodge::error::Error::Numeric).and_then(|ctx| {
            let psi = hodge::period_matrix_psi(p.k, &p.a, &ctx)?;
            let (phi, rep) = hodge::period_matrix_phi(p.k, &p.a, &ctx)?;
            Ok((psi.max_distance(&phi), rep))
        });
        match r {
            Ok((d, rep)) => vec![
                Check::new("phi_cocycles", "(1 ⊗ bar_d) ΔX = 0", rep.cocycle_ok, "coaction-expanded classes"),
                Check::new("phi_kernel", "(Δ_V⊗1)ΔX = (1⊗Δ)ΔX", rep.kernel_ok, "coaction-expanded classes"),
                Check::new(
                    "phi_derham_expansion",
                    "c(ΔX) = Σ_j λ_j Δ(e_j)",
                    rep.residual <= p.tol,
                    format!("residual {}", sci(rep.residual)),
                ),
                Check::new("psi_equals_phi", anchor, d <= p.tol, format!("max |Ψ − Φ| {}", sci(d))),
            ]
            .into(),
            Err(e) => vec![Check::error("psi_equals_phi", anchor, e)].into(),
        }
    })]
}

fn tensor_jobs(p: &Params) -> Vec<Job<'_>> {
    vec![
        Box::new(move || {
            let anchor = "Ψ(M_1(a) ⊗ M_1(b)) = Ψ(M_1(a)) ⊗ Ψ(M_1(b))";
            let r = p.ctx().map_err(tatehodge::error::Error::Numeric).and_then(|c| hodge::tensor_check(&p.a, &p.b, &c));
            vec![match r {
                Ok(t) => Check::new(
                    "tensor_kronecker",
                    anchor,
                    t.passed(p.tol),
                    format!("{0}×{0}, classes closed {1}, max |Δ| {2}", t.size, t.cocycles_ok, sci(t.max_diff)),
                ),
                Err(e) => Check::error("tensor_kronecker", anchor, e),
            }]
            .into()
        }),
        Box::new(move || {
            let anchor = "Ψ(Q(1) ⊗ Q(1)) = (2πi)²";
            let r = p.ctx().map_err(tatehodge::error::Error::Numeric).and_then(|c| hodge::tate_tensor_check(1, 1, &c));
            vec![match r {
                Ok(t) => Check::new(
                    "tensor_tate",
                    anchor,
                    t.passed(p.tol),
                    format!("entry {}, max |Δ| {}", fmt_hp(&t.tensor_matrix.entries[0][0]), sci(t.max_diff)),
                ),
                Err(e) => Check::error("tensor_tate", anchor, e),
            }]
            .into()
        }),
    ]
}

fn regulator_jobs(p: &Params) -> Vec<Job<'_>> {
    vec![Box::new(move || {
        let anchor = "−Li_1(a) ≡ log u mod 2πi·Q, dξ_1 = −ρ_1";
        let r = p.ctx().map_err(tatehodge::error::Error::Numeric).and_then(|c| hodge::regulator_r1(&p.u, &c));
        vec![match r {
            Ok(rep) => Check::new(
                "regulator_r1",
                anchor,
                rep.passed(p.tol),
                format!(
                    "period {}, log u {}, multiple {}, residual {}, dG = −Z {}",
                    fmt_hp(&rep.period),
                    fmt_hp(&rep.direct),
                    rep.multiple,
                    sci(rep.residual),
                    rep.boundary_ok
                ),
            ),
            Err(e) => Check::error("regulator_r1", anchor, e),
        }]
        .into()
    })]
}

/// Runs the command's checks; report order is the job order in both modes.
pub fn run(command: Command, p: &Params, parallel: bool) -> (Vec<Check>, Option<PeriodMatrix>) {
    let jobs = match command {
        Command::VerifyHopf => hopf_jobs(p),
        Command::VerifyFlatness => flatness_jobs(p),
        Command::VerifyCocycle => cocycle_jobs(p),
        Command::VerifyFaces => faces_jobs(p),
        Command::VerifyComodule => comodule_jobs(p),
        Command::PeriodsLi => li_jobs(p),
        Command::PeriodsQuadcheck => quadcheck_jobs(p),
        Command::HodgeMatrix => matrix_jobs(p),
        Command::HodgeCompare => compare_jobs(p),
        Command::HodgeTensor => tensor_jobs(p),
        Command::Regulator => regulator_jobs(p),
    };
    let outs: Vec<JobOut> = if parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> = jobs.into_iter().map(|j| s.spawn(j)).collect();
            handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
        })
    } else {
        jobs.into_iter().map(|j| j()).collect()
    };
    let mut checks = Vec::new();
    let mut matrix = None;
    for o in outs {
        checks.extend(o.checks);
        if o.matrix.is_some() {
            matrix = o.matrix;
        }
    }
    (checks, matrix)
}
