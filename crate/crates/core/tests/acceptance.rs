//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use tatehodge::algebra::{CdgaElement, FieldValue};
use tatehodge::comodule::Comodule;
use tatehodge::connection::validate_degrees;
use tatehodge::cycle_faces::check_rho_boundary;
use tatehodge::hodge::{period_matrix_phi, period_matrix_psi, regulator_r1, tensor_check, PeriodMatrix};
use tatehodge::linear::Q;
use tatehodge::numeric::ComplexHP;
use tatehodge::periods::{cauchy_stokes_demo, iterated_quadrature, li, NumericContext};
use tatehodge::polylog::{li_connection, li_word, build};
use tatehodge::suite::hopf_suite;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn sym() -> FieldValue {
    FieldValue::symbol("a")
}

fn grid() -> Vec<(Q, f64)> {
    vec![(qr(1, 4), 0.25), (qr(1, 2), 0.5), (qr(3, 4), 0.75)]
}

fn ctx() -> NumericContext {
    NumericContext::new(128).unwrap()
}

/// Plain double-precision series, summed to machine epsilon.
fn li_oracle(k: u32, a: f64) -> f64 {
    let mut sum = 0.0;
    let mut p = 1.0;
    for n in 1..2000u32 {
        p *= a;
        let t = p / (n as f64).powi(k as i32);
        sum += t;
        if t.abs() < 1e-20 {
            break;
        }
    }
    sum
}

/// `(2πi)^j` as `(re, im)`.
fn two_pi_i_pow(j: usize) -> (f64, f64) {
    let m = (2.0 * PI).powi(j as i32);
    match j % 4 {
        0 => (m, 0.0),
        1 => (0.0, m),
        2 => (-m, 0.0),
        _ => (0.0, -m),
    }
}

fn dist(z: &ComplexHP, re: f64, im: f64) -> f64 {
    ((z.re_f64() - re).powi(2) + (z.im_f64() - im).powi(2)).sqrt()
}

fn closed_form_defect(m: &PeriodMatrix, k: usize, a: f64) -> f64 {
    let la = a.ln();
    let mut worst = 0.0f64;
    for t in 0..=k {
        for j in 0..=k {
            let (re, im) = if j > t {
                (0.0, 0.0)
            } else if j == 0 {
                if t == 0 {
                    (1.0, 0.0)
                } else {
                    (-li_oracle(t as u32, a), 0.0)
                }
            } else {
                let e = (t - j) as i32;
                let f: f64 = (1..=e).map(|x| x as f64).product();
                let (pr, pi) = two_pi_i_pow(j);
                let s = la.powi(e) / f;
                (pr * s, pi * s)
            };
            worst = worst.max(dist(m.entry(t, j), re, im));
        }
    }
    worst
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let s = Instant::now();
    let v = f();
    (v, s.elapsed())
}

fn c1() -> Outcome {
    let (r, t) = timed(|| (1..=6).all(|k| li_word(k, &sym()).and_then(|w| w.is_cocycle()).unwrap_or(false)));
    outcome(r && t < Duration::from_secs(10), format!("k = 1..6 cocycles {r}, {:.2?}", t))
}

fn c2() -> Outcome {
    let flat = (1..=6).all(|k| li_connection(k, &sym()).map(|c| c.check_flat()).unwrap_or(false));
    let broken = (2..=6).all(|k| {
        let c = li_connection(k, &sym()).unwrap();
        !c.with_entry(0, 2, CdgaElement::zero()).check_flat()
    });
    outcome(flat && broken, format!("flat for k = 1..6: {flat}; ρ_2 removed detected: {broken}"))
}

fn c3() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for k in 2..=4 {
        for a in [sym(), FieldValue::rational(qr(1, 3))] {
            let ((lhs, rhs), t) = timed(|| check_rho_boundary(k, &a).unwrap());
            let good = lhs == rhs && (k < 3 || !lhs.is_zero());
            ok &= good && (k < 4 || t < Duration::from_secs(60));
            if k == 4 {
                detail.push(format!("k=4 a={a}: {:.2?}", t));
            }
        }
    }
    outcome(ok, format!("∂ρ_k = −(a)·ρ_{{k−1}} for k = 2,3,4; {}", detail.join(", ")))
}

fn c4() -> Outcome {
    let laws = hopf_suite(20240601, 200);
    let failed: Vec<_> = laws.iter().filter(|l| !l.passed()).map(|l| l.name).collect();
    let names: Vec<_> = laws.iter().map(|l| l.name).collect();
    let needed = [
        "d_squared",
        "internal_external",
        "coassociativity",
        "counit",
        "shuffle_leibniz",
        "shuffle_associativity",
        "shuffle_commutativity",
    ];
    let covered = needed.iter().all(|n| names.contains(n));
    let samples = laws.iter().all(|l| l.samples >= 200);
    outcome(
        failed.is_empty() && covered && samples,
        format!("{} laws × 200 samples, failures {:?}", laws.len(), failed),
    )
}

fn c5() -> Outcome {
    let mut ok = true;
    let mut dims = Vec::new();
    for k in 1..=4u32 {
        let r = build(k, &sym()).unwrap().as_comodule.kernel_identity();
        ok &= r.kernel_dim == k as usize + 1 && r.equals_image;
        dims.push(r.kernel_dim);
    }
    outcome(ok, format!("kernel dims {:?}", dims))
}

fn c6() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    for k in 1..=3u32 {
        for (aq, af) in grid() {
            let (m, t) = timed(|| period_matrix_psi(k, &FieldValue::rational(aq.clone()), &ctx()).unwrap());
            let d = closed_form_defect(&m, k as usize, af);
            worst = worst.max(d);
            slowest = slowest.max(t);
            ok &= d <= 1e-10 && t < Duration::from_secs(5);
        }
    }
    outcome(ok, format!("max defect {worst:.3e}, slowest {:.2?}", slowest))
}

fn c7() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    for k in 1..=3u32 {
        for (aq, _) in grid() {
            let a = FieldValue::rational(aq);
            let psi = period_matrix_psi(k, &a, &ctx()).unwrap();
            let (phi, rep) = period_matrix_phi(k, &a, &ctx()).unwrap();
            let d = psi.max_distance(&phi);
            worst = worst.max(d);
            ok &= d <= 1e-10 && rep.passed(1e-10);
        }
    }
    outcome(ok, format!("max |Ψ − Φ| {worst:.3e}"))
}

fn c8() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    for k in 1..=3u32 {
        for (aq, af) in grid() {
            let (r, t) = timed(|| iterated_quadrature(k, af, 1e-10));
            let s = li(k, &ComplexHP::from_rational(&aq, 128), 128).unwrap().re_f64();
            match r {
                Ok(r) => {
                    let d = (r.value - s).abs();
                    worst = worst.max(d);
                    ok &= d <= 1e-6;
                }
                Err(_) => ok = false,
            }
            if k == 3 {
                slowest = slowest.max(t);
                ok &= t < Duration::from_secs(30);
            }
        }
    }
    outcome(ok, format!("max |quad − series| {worst:.3e}, slowest k=3 {:.2?}", slowest))
}

fn c9() -> Outcome {
    let mut ok = true;
    let mut res = Vec::new();
    for r in [qr(1, 4), qr(1, 2)] {
        match cauchy_stokes_demo(&r, 1e-10) {
            Ok(rep) => {
                ok &= rep.intersection == 1 && (rep.contour.0 - 1.0).abs() <= 1e-10 && rep.contour.1.abs() <= 1e-10;
                res.push(format!("{:.3e}", rep.residual));
            }
            Err(_) => ok = false,
        }
    }
    outcome(ok, format!("residuals {}", res.join(", ")))
}

fn c10() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    for (u, uf) in [(qr(1, 2), 0.5f64), (qr(3, 4), 0.75)] {
        let r = regulator_r1(&u, &ctx()).unwrap();
        let d = dist(&r.period, uf.ln(), 0.0);
        worst = worst.max(d);
        ok &= d <= 1e-12 && r.passed(1e-12);
    }
    outcome(ok, format!("max |reg − log u| {worst:.3e}"))
}

fn c11() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    for (a, b) in [(qr(1, 2), qr(1, 2)), (qr(1, 4), qr(1, 2))] {
        let (fa, fb) = (FieldValue::rational(a), FieldValue::rational(b));
        let r = tensor_check(&fa, &fb, &ctx()).unwrap();
        // Independent Kronecker product of the two 2×2 matrices.
        let pa = period_matrix_psi(1, &fa, &ctx()).unwrap();
        let pb = period_matrix_psi(1, &fb, &ctx()).unwrap();
        let mut d = 0.0f64;
        for t in 0..2 {
            for s in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        let kron = pa.entry(t, j).mul(pb.entry(s, l));
                        d = d.max(r.tensor_matrix.entry(2 * t + s, 2 * j + l).dist(&kron));
                    }
                }
            }
        }
        worst = worst.max(d);
        ok &= r.passed(1e-10) && d <= 1e-10;
    }
    outcome(ok, format!("max Kronecker defect {worst:.3e}"))
}

fn c12() -> Outcome {
    let mut ok = true;
    for n in -6..=0i64 {
        let mut basis = Comodule::tate(0).basis().to_vec();
        basis.extend(Comodule::tate(n).basis().iter().cloned());
        ok &= validate_degrees(&basis).is_empty();
    }
    outcome(ok, "empty support for n = -6..0")
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("exact cocycle identity", c1),
        ("exact flatness", c2),
        ("symbolic boundary identity", c3),
        ("Hopf-axiom property suite", c4),
        ("kernel identity", c5),
        ("numeric period matrix", c6),
        ("Psi and Phi agree", c7),
        ("quadrature vs series", c8),
        ("Cauchy-Stokes demo", c9),
        ("regulator r=1", c10),
        ("tensor compatibility", c11),
        ("Ext vanishing constraint", c12),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let o = std::panic::catch_unwind(f).unwrap_or_else(|_| outcome(false, "panicked"));
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{tag}] {name}: {}", n + 1, o.detail);
        if !o.ok {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
