//! The polylog motive `M_k(a)`, its Li cocycles, and the Kummer object `[a]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{CdgaElement, FieldValue};
use crate::bar::BarElement;
use crate::comodule::{BasisVector, Comodule};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::linear::{integer_row, kernel, Q};

fn check_point(a: &FieldValue) -> Result<()> {
    if a.is_zero() || a.is_one() {
        return Err(Error::InvalidFieldValue(format!("a = {a} must avoid 0 and 1")));
    }
    Ok(())
}

pub fn basis(k: u32) -> Vec<BasisVector> {
    (0..=k as i64)
        .map(|t| BasisVector::new(if t == 0 { "e0".to_string() } else { format!("e-{t}") }, -t))
        .collect()
}

/// `[ρ_k] + [(a)|ρ_{k−1}] + … + [(a)|…|(a)|ρ_1]`.
pub fn li_word(k: u32, a: &FieldValue) -> Result<BarElement> {
    if k == 0 {
        return Err(Error::InvalidFieldValue("k must be at least 1".into()));
    }
    check_point(a)?;
    let u = CdgaElement::unit(a.clone())?;
    let mut out = BarElement::zero();
    for t in 0..k {
        let mut letters = vec![u.clone(); t as usize];
        letters.push(CdgaElement::rho(k - t, a.clone())?);
        out = out + BarElement::word(&letters)?;
    }
    Ok(out)
}

pub fn li_connection(k: u32, a: &FieldValue) -> Result<Connection> {
    check_point(a)?;
    let n = k as usize + 1;
    let mut gamma = vec![vec![CdgaElement::zero(); n]; n];
    for t in 1..n {
        gamma[0][t] = CdgaElement::rho(t as u32, a.clone())?;
    }
    let u = CdgaElement::unit(a.clone())?;
    for j in 1..n - 1 {
        gamma[j][j + 1] = u.clone();
    }
    Connection::new(basis(k), gamma)
}

/// The coaction written down directly, without going through `Γ`.
pub fn li_coaction(k: u32, a: &FieldValue) -> Result<Comodule> {
    check_point(a)?;
    let n = k as usize + 1;
    let u = CdgaElement::unit(a.clone())?;
    let mut c = vec![vec![BarElement::zero(); n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = BarElement::unit();
    }
    for j in 1..n {
        c[0][j] = li_word(j as u32, a)?;
    }
    for j in 1..n {
        for l in j + 1..n {
            c[j][l] = BarElement::word(&vec![u.clone(); l - j])?;
        }
    }
    Comodule::new(basis(k), c)
}

/// `[a]`: the extension of `Q(0)` by `Q(1)` with entry `[(a)]`.
pub fn kummer(a: &FieldValue) -> Result<Comodule> {
    let u = CdgaElement::unit(a.clone())?;
    Comodule::new(
        vec![BasisVector::new("f0", 0), BasisVector::new("f-1", -1)],
        vec![
            vec![BarElement::unit(), BarElement::word(&[u])?],
            vec![BarElement::zero(), BarElement::unit()],
        ],
    )
}

/// Whether `a` and `1 − a` are dependent in `Q^× ⊗ Q`; `None` for symbols.
pub fn multiplicatively_dependent(a: &FieldValue) -> Option<bool> {
    let x = a.as_rational()?;
    let y = Q::one() - x;
    let nums = [x.numer().abs(), x.denom().clone(), y.numer().abs(), y.denom().clone()];
    let base = coprime_base(&nums);
    let vec_of = |v: &Q| -> Vec<i64> {
        base.iter()
            .map(|b| valuation(v.numer(), b) - valuation(v.denom(), b))
            .collect()
    };
    let (u, w) = (vec_of(x), vec_of(&y));
    let dependent = (0..base.len())
        .all(|i| (0..base.len()).all(|j| u[i] * w[j] == u[j] * w[i]));
    Some(dependent)
}

fn valuation(n: &BigInt, b: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut e = 0;
    while !n.is_zero() && (&n % b).is_zero() {
        n /= b;
        e += 1;
    }
    e
}

/// Pairwise coprime integers > 1 generating the inputs multiplicatively.
fn coprime_base(xs: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = xs.iter().filter(|x| **x > BigInt::one()).cloned().collect();
    loop {
        base.sort();
        base.dedup();
        let mut split = None;
        'outer: for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    split = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = split else {
            return base;
        };
        let (x, y) = (&base[i] / &g, &base[j] / &g);
        base.remove(j);
        base.remove(i);
        for v in [x, y, g] {
            if v > BigInt::one() {
                base.push(v);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PolylogMotive {
    pub k: u32,
    pub a: FieldValue,
    pub as_comodule: Comodule,
    pub as_connection: Connection,
    /// Set when `a` and `1 − a` are multiplicatively dependent.
    pub dependence_warning: bool,
}

pub fn build(k: u32, a: &FieldValue) -> Result<PolylogMotive> {
    if k == 0 {
        return Err(Error::InvalidFieldValue("k must be at least 1".into()));
    }
    check_point(a)?;
    let conn = li_connection(k, a)?;
    let comod = conn.to_comodule()?;
    if !comod.same_coaction(&li_coaction(k, a)?) {
        return Err(Error::Structure("Σ Γ_n disagrees with the polylog coaction".into()));
    }
    Ok(PolylogMotive {
        k,
        a: a.clone(),
        as_comodule: comod,
        as_connection: conn,
        dependence_warning: multiplicatively_dependent(a).unwrap_or(false),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub sub_is_subcomodule: bool,
    pub quotient_is_q0: bool,
    /// `λ_j` with `e_{−j} ↦ λ_j · g_j` into `Sym^{k−1}([a])(1)`.
    pub scaling: Option<Vec<Q>>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.sub_is_subcomodule && self.quotient_is_q0 && self.scaling.is_some()
    }
}

impl PolylogMotive {
    pub fn check_extension_structure(&self) -> Result<ExtensionReport> {
        let c = &self.as_comodule;
        let k = self.k as usize;
        let sub_ix: Vec<usize> = (1..=k).collect();
        let sub_is_subcomodule = c.is_subcomodule(&sub_ix);
        let quotient_is_q0 = c.basis()[0].adams == 0 && *c.entry(0, 0) == BarElement::unit();
        let sub = c.restrict(&sub_ix);
        let target = kummer(&self.a)?.sym_power(k - 1).twist(1);
        Ok(ExtensionReport {
            sub_is_subcomodule,
            quotient_is_q0,
            scaling: diagonal_iso(&sub, &target),
        })
    }

    /// `M_k(a) → M_{k−1}(a)`, the quotient by `e_{−k}`.
    pub fn truncate(&self) -> Comodule {
        let keep: Vec<usize> = (0..self.k as usize).collect();
        self.as_comodule.restrict(&keep)
    }
}

/// Diagonal `λ` with `λ_i T_il = λ_l S_il`, normalized to `λ_1 = 1`.
fn diagonal_iso(s: &Comodule, t: &Comodule) -> Option<Vec<Q>> {
    let n = s.dim();
    if t.dim() != n || s.basis().iter().zip(t.basis()).any(|(x, y)| x.adams != y.adams) {
        return None;
    }
    let mut rows = Vec::new();
    for i in 0..n {
        for l in 0..n {
            let mut words: Vec<_> = s.entry(i, l).terms().keys().cloned().collect();
            words.extend(t.entry(i, l).terms().keys().cloned());
            words.sort();
            words.dedup();
            for w in words {
                let mut r = std::collections::BTreeMap::new();
                let tv = t.entry(i, l).terms().coeff(&w);
                let sv = s.entry(i, l).terms().coeff(&w);
                *r.entry(i).or_insert_with(Q::zero) += tv;
                *r.entry(l).or_insert_with(Q::zero) -= sv;
                r.retain(|_, v: &mut Q| !v.is_zero());
                rows.push(integer_row(&r));
            }
        }
    }
    let ker = kernel(n, rows);
    if ker.len() != 1 {
        return None;
    }
    let v = &ker[0];
    if (0..n).any(|i| v.get(&i).is_none_or(Q::is_zero)) {
        return None;
    }
    let first = v[&0].clone();
    Some((0..n).map(|i| &v[&i] / &first).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{q, qr};

    fn a() -> FieldValue {
        FieldValue::symbol("a")
    }

    #[test]
    fn li1_is_kummer_of_one_minus_a() {
        let one_minus = CdgaElement::unit(a().one_minus()).unwrap();
        assert_eq!(li_word(1, &a()).unwrap(), BarElement::word(&[one_minus]).unwrap());
        let m = build(1, &a()).unwrap();
        assert!(m.as_comodule.same_coaction(&kummer(&a().one_minus()).unwrap()));
    }

    #[test]
    fn li2_word() {
        let u = CdgaElement::unit(a()).unwrap();
        let expect = BarElement::word(&[CdgaElement::rho(2, a()).unwrap()]).unwrap()
            + BarElement::word(&[u, CdgaElement::rho(1, a()).unwrap()]).unwrap();
        assert_eq!(li_word(2, &a()).unwrap(), expect);
    }

    #[test]
    fn li_words_are_cocycles() {
        for k in 1..=6 {
            assert!(li_word(k, &a()).unwrap().is_cocycle().unwrap(), "k = {k}");
        }
    }

    #[test]
    fn built_objects_are_valid() {
        for k in 1..=6 {
            let m = build(k, &a()).unwrap();
            assert!(m.as_connection.check_flat());
            assert!(m.as_comodule.check_axioms().unwrap().passed());
            for j in 1..=k as usize {
                assert_eq!(*m.as_comodule.entry(0, j), li_word(j as u32, &a()).unwrap());
            }
        }
    }

    #[test]
    fn e_minus_one_coaction_at_k2() {
        let m = build(2, &a()).unwrap();
        let u = CdgaElement::unit(a()).unwrap();
        assert_eq!(*m.as_comodule.entry(1, 1), BarElement::unit());
        assert_eq!(*m.as_comodule.entry(1, 2), BarElement::word(&[u]).unwrap());
    }

    #[test]
    fn removing_rho2_breaks_flatness() {
        let c = li_connection(3, &a()).unwrap();
        assert!(!c.with_entry(0, 2, CdgaElement::zero()).check_flat());
    }

    #[test]
    fn deleting_kummer_entry_breaks_coassociativity() {
        let m = build(2, &a()).unwrap().as_comodule;
        let mut c = m.coaction().to_vec();
        c[1][2] = BarElement::zero();
        let broken = Comodule::new(m.basis().to_vec(), c).unwrap();
        assert!(!broken.check_axioms().unwrap().coassoc_ok);
    }

    #[test]
    fn extension_structure() {
        for k in 1..=6u32 {
            let rep = build(k, &a()).unwrap().check_extension_structure().unwrap();
            assert!(rep.passed(), "k = {k}");
            let m = (k - 1) as i64;
            let lam = rep.scaling.unwrap();
            let mut f = q(1);
            for (t, l) in lam.iter().enumerate() {
                assert_eq!(*l, f);
                f *= q(m - t as i64);
            }
        }
    }

    #[test]
    fn truncation_is_the_smaller_motive() {
        for k in 2..=5 {
            let m = build(k, &a()).unwrap();
            assert!(m.truncate().same_coaction(&build(k - 1, &a()).unwrap().as_comodule));
        }
    }

    #[test]
    fn kernel_dims() {
        for k in 1..=3 {
            let r = build(k, &a()).unwrap().as_comodule.kernel_identity();
            assert_eq!(r.kernel_dim, k as usize + 1);
            assert!(r.equals_image);
        }
    }

    #[test]
    fn dependence_flag() {
        let r = |n, d| FieldValue::Rational(qr(n, d));
        assert_eq!(multiplicatively_dependent(&r(1, 2)), Some(true));
        assert_eq!(multiplicatively_dependent(&r(2, 1)), Some(true));
        assert_eq!(multiplicatively_dependent(&r(-1, 1)), Some(true));
        assert_eq!(multiplicatively_dependent(&r(1, 3)), Some(false));
        assert_eq!(multiplicatively_dependent(&r(3, 4)), Some(false));
        assert_eq!(multiplicatively_dependent(&a()), None);
        assert!(build(2, &r(1, 2)).unwrap().dependence_warning);
    }

    #[test]
    fn invalid_points() {
        assert!(build(2, &FieldValue::Rational(q(1))).is_err());
        assert!(build(2, &FieldValue::Rational(q(0))).is_err());
        assert!(build(0, &a()).is_err());
    }
}
