//! Flat connections `Γ : M → M ⊗ A¹` and the comodule `Δ_M = Σ Γ_n`.
//!
//! `gamma[i][j]` is the component of `Γ(v_i)` along `v_j`.

use crate::algebra::CdgaElement;
use crate::bar::{BarElement, BarWord};
use crate::comodule::{BasisVector, Comodule};
use crate::error::{Error, Result};
use crate::linear::LinComb;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    basis: Vec<BasisVector>,
    gamma: Vec<Vec<CdgaElement>>,
}

/// Slots `(i, j)` where an Adams-degree-0 connection may be nonzero.
///
/// The basis is read as an ordered extension flag, so only `i < j` with an
/// Adams gap of at least 1 survives.
pub fn validate_degrees(basis: &[BasisVector]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i].adams - basis[j].adams >= 1 {
                out.push((i, j));
            }
        }
    }
    out
}

impl Connection {
    pub fn new(basis: Vec<BasisVector>, gamma: Vec<Vec<CdgaElement>>) -> Result<Self> {
        let n = basis.len();
        if gamma.len() != n || gamma.iter().any(|r| r.len() != n) {
            return Err(Error::Structure(format!("Γ must be a {n}×{n} matrix")));
        }
        let slots = validate_degrees(&basis);
        for (i, row) in gamma.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if !slots.contains(&(i, j)) {
                    return Err(Error::Degree(format!("Γ({i},{j}) lies outside the admissible support")));
                }
                let gap = basis[i].adams - basis[j].adams;
                for m in e.terms().keys() {
                    if m.generators().len() != 1 || m.adams() != gap {
                        return Err(Error::Degree(format!(
                            "Γ({i},{j}) has term {m} outside the degree-1 generator span of Adams degree {gap}"
                        )));
                    }
                }
            }
        }
        Ok(Connection { basis, gamma })
    }

    pub fn zero(basis: Vec<BasisVector>) -> Self {
        let n = basis.len();
        Connection {
            basis,
            gamma: vec![vec![CdgaElement::zero(); n]; n],
        }
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &CdgaElement {
        &self.gamma[i][j]
    }

    /// `dΓ + Γ²` entrywise, `(Γ²)_il = Σ_j Γ_jl · Γ_ij`.
    pub fn curvature(&self) -> Vec<Vec<CdgaElement>> {
        let n = self.dim();
        let mut out = vec![vec![CdgaElement::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                let mut c = self.gamma[i][l].differential();
                for j in 0..n {
                    c = c + self.gamma[j][l].product(&self.gamma[i][j]);
                }
                out[i][l] = c;
            }
        }
        out
    }

    pub fn check_flat(&self) -> bool {
        self.curvature().iter().flatten().all(CdgaElement::is_zero)
    }

    /// The word matrix of `Γ_n`: paths `i → j_1 → … → l` read right to left.
    pub fn gamma_power(&self, n: usize) -> Vec<Vec<BarElement>> {
        let dim = self.dim();
        let mut cur: Vec<Vec<BarElement>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { BarElement::unit() } else { BarElement::zero() })
                    .collect()
            })
            .collect();
        for _ in 0..n {
            let mut next = vec![vec![BarElement::zero(); dim]; dim];
            for i in 0..dim {
                for j in 0..dim {
                    if cur[i][j].is_zero() {
                        continue;
                    }
                    for l in 0..dim {
                        let g = &self.gamma[j][l];
                        if g.is_zero() {
                            continue;
                        }
                        let mut t = LinComb::zero();
                        for (m, c) in g.terms().iter() {
                            for (w, d) in cur[i][j].terms().iter() {
                                let mut letters = vec![m.clone()];
                                letters.extend(w.letters.iter().cloned());
                                t.add_term(BarWord::plain(letters), c * d);
                            }
                        }
                        next[i][l] = next[i][l].clone() + BarElement::from_terms(t);
                    }
                }
            }
            cur = next;
        }
        cur
    }

    pub fn to_comodule(&self) -> Result<Comodule> {
        if !self.check_flat() {
            return Err(Error::NonFlat);
        }
        let dim = self.dim();
        let mut coaction = vec![vec![BarElement::zero(); dim]; dim];
        for n in 0.. {
            let p = self.gamma_power(n);
            if p.iter().flatten().all(BarElement::is_zero) {
                break;
            }
            for i in 0..dim {
                for j in 0..dim {
                    coaction[i][j] = coaction[i][j].clone() + p[i][j].clone();
                }
            }
        }
        Comodule::new(self.basis.clone(), coaction)
    }

    /// `Γ ⊗ 1 + 1 ⊗ Γ` on the lexicographic pair basis.
    pub fn tensor(&self, other: &Connection) -> Connection {
        let (n, m) = (self.dim(), other.dim());
        let mut basis = Vec::with_capacity(n * m);
        for v in &self.basis {
            for w in &other.basis {
                basis.push(BasisVector::new(format!("{}⊗{}", v.name, w.name), v.adams + w.adams));
            }
        }
        let mut gamma = vec![vec![CdgaElement::zero(); n * m]; n * m];
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    gamma[i * m + j][k * m + j] = gamma[i * m + j][k * m + j].clone() + self.gamma[i][k].clone();
                }
                for l in 0..m {
                    gamma[i * m + j][i * m + l] = gamma[i * m + j][i * m + l].clone() + other.gamma[j][l].clone();
                }
            }
        }
        Connection { basis, gamma }
    }

    /// Copy with one entry replaced, bypassing validation.
    pub fn with_entry(&self, i: usize, j: usize, e: CdgaElement) -> Connection {
        let mut out = self.clone();
        out.gamma[i][j] = e;
        out
    }

    pub fn max_gap(&self) -> usize {
        let hi = self.basis.iter().map(|b| b.adams).max().unwrap_or(0);
        let lo = self.basis.iter().map(|b| b.adams).min().unwrap_or(0);
        (hi - lo) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldValue;

    fn b(adams: &[i64]) -> Vec<BasisVector> {
        adams
            .iter()
            .enumerate()
            .map(|(i, &a)| BasisVector::new(format!("v{i}"), a))
            .collect()
    }

    #[test]
    fn degree_support() {
        let tate_sum = |r: i64, s: i64| {
            let mut v = Comodule::tate(r).basis().to_vec();
            v.extend_from_slice(Comodule::tate(s).basis());
            v
        };
        for n in -5..=0 {
            assert!(validate_degrees(&tate_sum(0, n)).is_empty());
        }
        assert_eq!(validate_degrees(&tate_sum(0, 1)), vec![(0, 1)]);
        assert_eq!(validate_degrees(&b(&[0, -1, -2])), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn zero_connection() {
        let c = Connection::zero(b(&[0, -1]));
        assert!(c.check_flat());
        let m = c.to_comodule().unwrap();
        assert!(m.entry(0, 1).is_zero());
        assert_eq!(*m.entry(0, 0), BarElement::unit());
    }

    #[test]
    fn kummer_connection() {
        let u = CdgaElement::unit(FieldValue::symbol("a")).unwrap();
        let c = Connection::new(
            b(&[0, -1]),
            vec![vec![CdgaElement::zero(), u.clone()], vec![CdgaElement::zero(), CdgaElement::zero()]],
        )
        .unwrap();
        let m = c.to_comodule().unwrap();
        assert_eq!(*m.entry(0, 1), BarElement::word(&[u]).unwrap());
        assert!(c.gamma_power(2).iter().flatten().all(BarElement::is_zero));
    }

    #[test]
    fn bad_degree_rejected() {
        let r = CdgaElement::rho(2, FieldValue::symbol("a")).unwrap();
        let bad = Connection::new(
            b(&[0, -1]),
            vec![vec![CdgaElement::zero(), r], vec![CdgaElement::zero(), CdgaElement::zero()]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn non_flat_rejected() {
        let r = CdgaElement::rho(2, FieldValue::symbol("a")).unwrap();
        let c = Connection::new(
            b(&[0, -2]),
            vec![vec![CdgaElement::zero(), r], vec![CdgaElement::zero(), CdgaElement::zero()]],
        )
        .unwrap();
        assert!(!c.check_flat());
        assert_eq!(c.to_comodule(), Err(Error::NonFlat));
    }
}
