//! Finite Adams-graded comodules over `H^0(B(N))`.
//!
//! `coaction[i][j]` is the component of `Δ(v_i)` along `v_j ⊗ χ`.

use std::collections::{BTreeMap, BTreeSet};

use crate::bar::{shuffle, tensor, BarElement, BarTensor, BarWord};
use crate::error::{Error, Result};
use crate::linear::{integer_row, kernel, q, rank, same_span, LinComb, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisVector {
    pub name: String,
    pub adams: i64,
}

impl BasisVector {
    pub fn new(name: impl Into<String>, adams: i64) -> Self {
        BasisVector {
            name: name.into(),
            adams,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    basis: Vec<BasisVector>,
    coaction: Vec<Vec<BarElement>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub degree_ok: bool,
    pub coassoc_ok: bool,
    pub counit_ok: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.coassoc_ok && self.counit_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub kernel_dim: usize,
    pub image_dim: usize,
    /// Dimension of the subword span `S` the kernel was computed in.
    pub span_dim: usize,
    pub equals_image: bool,
}

impl Comodule {
    pub fn new(basis: Vec<BasisVector>, coaction: Vec<Vec<BarElement>>) -> Result<Self> {
        let n = basis.len();
        if coaction.len() != n || coaction.iter().any(|r| r.len() != n) {
            return Err(Error::Structure(format!(
                "coaction must be a {n}×{n} matrix"
            )));
        }
        Ok(Comodule { basis, coaction })
    }

    /// `Q(r)`: one vector of Adams degree `-r`, trivial coaction.
    pub fn tate(r: i64) -> Self {
        Comodule {
            basis: vec![BasisVector::new(format!("Q({r})"), -r)],
            coaction: vec![vec![BarElement::unit()]],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn entry(&self, i: usize, j: usize) -> &BarElement {
        &self.coaction[i][j]
    }

    pub fn coaction(&self) -> &[Vec<BarElement>] {
        &self.coaction
    }

    pub fn check_axioms(&self) -> Result<AxiomReport> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if !self.coaction[i][j].is_cocycle()? {
                    return Err(Error::NonCocycleEntry { row: i, col: j });
                }
            }
        }
        let mut degree_ok = true;
        let mut counit_ok = true;
        for i in 0..n {
            for j in 0..n {
                let e = &self.coaction[i][j];
                let gap = self.basis[i].adams - self.basis[j].adams;
                if i == j {
                    degree_ok &= *e == BarElement::unit();
                } else if gap <= 0 {
                    degree_ok &= e.is_zero();
                } else {
                    degree_ok &= e.terms().keys().all(|w| w.adams() == gap);
                }
                counit_ok &= e.counit() == if i == j { q(1) } else { q(0) };
            }
        }
        let mut coassoc_ok = true;
        for i in 0..n {
            for l in 0..n {
                let lhs = self.coaction[i][l].coproduct();
                let mut rhs = BarTensor::zero();
                for j in 0..n {
                    rhs += &tensor(&self.coaction[j][l], &self.coaction[i][j]);
                }
                coassoc_ok &= lhs == rhs;
            }
        }
        Ok(AxiomReport {
            degree_ok,
            coassoc_ok,
            counit_ok,
        })
    }

    /// Kernel of `Δ_V ⊗ id − id ⊗ Δ` on `V ⊗ S`, with `S` the span of all
    /// contiguous subwords of the coaction entries.
    pub fn kernel_identity(&self) -> KernelReport {
        let n = self.dim();
        let mut words: BTreeSet<BarWord> = BTreeSet::new();
        for row in &self.coaction {
            for e in row {
                for w in e.terms().keys() {
                    let s = w.letters.len();
                    for a in 0..=s {
                        for b in a..=s {
                            words.insert(BarWord::plain(w.letters[a..b].to_vec()));
                        }
                    }
                }
            }
        }
        let words: Vec<BarWord> = words.into_iter().collect();
        let index: BTreeMap<&BarWord, usize> = words.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let m = words.len();
        let col = |v: usize, s: usize| v * m + s;

        let mut targets: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        let mut rows: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
        let mut put = |t: (usize, usize, usize), c: usize, val: Q| {
            let next = targets.len();
            let r = *targets.entry(t).or_insert(next);
            let e = rows.entry(r).or_default().entry(c).or_insert_with(|| q(0));
            *e += val;
        };
        for i in 0..n {
            for (si, s) in words.iter().enumerate() {
                let c = col(i, si);
                for j in 0..n {
                    for (w, coef) in self.coaction[i][j].terms().iter() {
                        put((j, index[w], si), c, coef.clone());
                    }
                }
                for ((l, r), coef) in BarElement::basis(s.clone()).coproduct().iter() {
                    put((i, index[l], index[r]), c, -coef.clone());
                }
            }
        }
        let ker = kernel(n * m, rows.values().map(integer_row));
        let image: Vec<BTreeMap<usize, Q>> = (0..n)
            .map(|i| {
                let mut v = BTreeMap::new();
                for j in 0..n {
                    for (w, coef) in self.coaction[i][j].terms().iter() {
                        v.insert(col(j, index[w]), coef.clone());
                    }
                }
                v
            })
            .collect();
        let image_dim = rank(image.iter().map(integer_row));
        KernelReport {
            kernel_dim: ker.len(),
            image_dim,
            span_dim: m,
            equals_image: same_span(&ker, &image),
        }
    }

    /// Basis of pairs in lexicographic order; entries multiply by shuffle.
    pub fn tensor(&self, other: &Comodule) -> Comodule {
        let (n, m) = (self.dim(), other.dim());
        let mut basis = Vec::with_capacity(n * m);
        for v in &self.basis {
            for w in &other.basis {
                basis.push(BasisVector::new(
                    format!("{}⊗{}", v.name, w.name),
                    v.adams + w.adams,
                ));
            }
        }
        let mut coaction = vec![vec![BarElement::zero(); n * m]; n * m];
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..m {
                        coaction[i * m + j][k * m + l] =
                            shuffle(&self.coaction[i][k], &other.coaction[j][l]);
                    }
                }
            }
        }
        Comodule { basis, coaction }
    }

    /// `V(r) = V ⊗ Q(r)`.
    pub fn twist(&self, r: i64) -> Comodule {
        let mut out = self.clone();
        for b in &mut out.basis {
            b.adams -= r;
            b.name = format!("{}({r})", b.name);
        }
        out
    }

    /// `Sym^m V` on the monomial basis, multisets in lexicographic order.
    pub fn sym_power(&self, m: usize) -> Comodule {
        let n = self.dim();
        let mut multisets: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..m {
            let mut next = Vec::new();
            for s in &multisets {
                let lo = s.last().copied().unwrap_or(0);
                for x in lo..n {
                    let mut t = s.clone();
                    t.push(x);
                    next.push(t);
                }
            }
            multisets = next;
        }
        let index: BTreeMap<Vec<usize>, usize> =
            multisets.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        let basis = multisets
            .iter()
            .map(|s| {
                let name = if s.is_empty() {
                    "1".to_string()
                } else {
                    s.iter().map(|&x| self.basis[x].name.as_str()).collect::<Vec<_>>().join("·")
                };
                BasisVector::new(name, s.iter().map(|&x| self.basis[x].adams).sum())
            })
            .collect();
        let d = multisets.len();
        let mut coaction = vec![vec![BarElement::zero(); d]; d];
        for (r, s) in multisets.iter().enumerate() {
            let mut choice = vec![0usize; m];
            loop {
                let mut e = BarElement::unit();
                for t in 0..m {
                    e = shuffle(&e, &self.coaction[s[t]][choice[t]]);
                    if e.is_zero() {
                        break;
                    }
                }
                if !e.is_zero() {
                    let mut key = choice.clone();
                    key.sort_unstable();
                    let c = index[&key];
                    coaction[r][c] = coaction[r][c].clone() + e;
                }
                let mut t = 0;
                while t < m {
                    choice[t] += 1;
                    if choice[t] < n {
                        break;
                    }
                    choice[t] = 0;
                    t += 1;
                }
                if t == m {
                    break;
                }
            }
        }
        Comodule { basis, coaction }
    }

    /// Restriction to the listed basis vectors, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Comodule {
        Comodule {
            basis: keep.iter().map(|&i| self.basis[i].clone()).collect(),
            coaction: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.coaction[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Whether the span of `keep` is closed under the coaction.
    pub fn is_subcomodule(&self, keep: &[usize]) -> bool {
        let inside: BTreeSet<usize> = keep.iter().copied().collect();
        keep.iter().all(|&i| {
            (0..self.dim()).all(|j| inside.contains(&j) || self.coaction[i][j].is_zero())
        })
    }

    /// Coaction matrices with basis labels dropped.
    pub fn same_coaction(&self, other: &Comodule) -> bool {
        self.dim() == other.dim()
            && self
                .basis
                .iter()
                .zip(&other.basis)
                .all(|(x, y)| x.adams == y.adams)
            && self.coaction == other.coaction
    }

    /// Entries of the coaction as a linear combination keyed by position.
    pub fn entries(&self) -> LinComb<(usize, usize, BarWord)> {
        let mut out = LinComb::zero();
        for (i, row) in self.coaction.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for (w, c) in e.terms().iter() {
                    out.add_term((i, j, w.clone()), c.clone());
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CdgaElement, FieldValue};

    fn kummer(s: &str) -> Comodule {
        let u = CdgaElement::unit(FieldValue::parse(s).unwrap()).unwrap();
        Comodule::new(
            vec![BasisVector::new("f0", 0), BasisVector::new("f-1", -1)],
            vec![
                vec![BarElement::unit(), BarElement::word(&[u]).unwrap()],
                vec![BarElement::zero(), BarElement::unit()],
            ],
        )
        .unwrap()
    }

    #[test]
    fn tate_objects_pass() {
        for r in -5..=5 {
            assert!(Comodule::tate(r).check_axioms().unwrap().passed());
        }
    }

    #[test]
    fn tate_kernel() {
        let k = Comodule::tate(2).kernel_identity();
        assert_eq!(k.kernel_dim, 1);
        assert!(k.equals_image);
    }

    #[test]
    fn kummer_kernel() {
        let k = kummer("a").kernel_identity();
        assert_eq!(k.kernel_dim, 2);
        assert!(k.equals_image);
    }

    #[test]
    fn tensor_of_tate_objects() {
        let t = Comodule::tate(2).tensor(&Comodule::tate(3));
        assert!(t.same_coaction(&Comodule::tate(5)));
    }

    #[test]
    fn twist_matches_tensor() {
        let k = kummer("a");
        assert!(k.tensor(&Comodule::tate(1)).same_coaction(&k.twist(1)));
        assert_eq!(k.twist(1).basis()[0].adams, -1);
    }

    #[test]
    fn tensor_of_kummers_is_valid() {
        let t = kummer("a").tensor(&kummer("b"));
        assert!(t.check_axioms().unwrap().passed());
        let k = t.kernel_identity();
        assert_eq!(k.kernel_dim, 4);
        assert!(k.equals_image);
    }

    #[test]
    fn non_cocycle_entry_is_named() {
        let r = CdgaElement::rho(2, FieldValue::symbol("a")).unwrap();
        let v = Comodule::new(
            vec![BasisVector::new("x", 0), BasisVector::new("y", -2)],
            vec![
                vec![BarElement::unit(), BarElement::word(&[r]).unwrap()],
                vec![BarElement::zero(), BarElement::unit()],
            ],
        )
        .unwrap();
        assert_eq!(v.check_axioms(), Err(Error::NonCocycleEntry { row: 0, col: 1 }));
    }

    #[test]
    fn wrong_degree_detected() {
        let u = CdgaElement::unit(FieldValue::symbol("a")).unwrap();
        let v = Comodule::new(
            vec![BasisVector::new("x", 0), BasisVector::new("y", -2)],
            vec![
                vec![BarElement::unit(), BarElement::word(&[u]).unwrap()],
                vec![BarElement::zero(), BarElement::unit()],
            ],
        )
        .unwrap();
        assert!(!v.check_axioms().unwrap().degree_ok);
    }

    #[test]
    fn sym_square_of_kummer() {
        let s = kummer("a").sym_power(2);
        assert_eq!(s.dim(), 3);
        assert!(s.check_axioms().unwrap().passed());
        let u = CdgaElement::unit(FieldValue::symbol("a")).unwrap();
        let two = BarElement::word(&[u.clone(), u]).unwrap().scale(&q(2));
        assert_eq!(*s.entry(0, 2), two);
    }

    #[test]
    fn shape_is_validated() {
        assert!(Comodule::new(vec![BasisVector::new("x", 0)], vec![]).is_err());
    }
}
