//! A finite formal model of the admissible chain complex: the chains
//! `η_k(i)`, their face pieces, path powers `p^{∘j}`, cycle coefficients,
//! the `∘` product and the total differential.

use std::fmt;

use crate::algebra::{CdgaElement, FieldValue, Generator, Monomial};
use crate::bar::BarModule;
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::linear::{integer_row, q, rank, sign, LinComb, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainSymbol {
    One,
    /// `η_k(i) ∈ AC_{k+i}(P^{k+i})`, `0 ≤ i ≤ k−1`.
    Eta { k: u32, i: u32, a: FieldValue },
    /// The face part `∂η_k(i)`, `1 ≤ i ≤ k−1`.
    EtaFace { k: u32, i: u32, a: FieldValue },
    /// `p^{∘j}` for a path from 1 to `a`, `j ≥ 1`.
    PathPow { j: u32, a: FieldValue },
}

impl ChainSymbol {
    pub fn eta(k: u32, i: u32, a: &FieldValue) -> Result<Self> {
        check_point(a)?;
        if k == 0 || i >= k {
            return Err(Error::InvalidFieldValue(format!("η_{k}({i}) needs 0 ≤ i < k")));
        }
        Ok(ChainSymbol::Eta { k, i, a: a.clone() })
    }

    pub fn eta_face(k: u32, i: u32, a: &FieldValue) -> Result<Self> {
        check_point(a)?;
        if i == 0 || i >= k {
            return Err(Error::InvalidFieldValue(format!("∂η_{k}({i}) needs 1 ≤ i < k")));
        }
        Ok(ChainSymbol::EtaFace { k, i, a: a.clone() })
    }

    pub fn path_pow(j: u32, a: &FieldValue) -> Result<Self> {
        check_point(a)?;
        Ok(if j == 0 {
            ChainSymbol::One
        } else {
            ChainSymbol::PathPow { j, a: a.clone() }
        })
    }

    /// Cohomological degree `n − dim`.
    pub fn degree(&self) -> i64 {
        match self {
            ChainSymbol::EtaFace { .. } => 1,
            _ => 0,
        }
    }

    pub fn ambient(&self) -> u32 {
        match self {
            ChainSymbol::One => 0,
            ChainSymbol::Eta { k, i, .. } => k + i,
            ChainSymbol::EtaFace { k, i, .. } => k + i - 1,
            ChainSymbol::PathPow { j, .. } => *j,
        }
    }

    pub fn chain_dim(&self) -> u32 {
        match self {
            ChainSymbol::EtaFace { k, i, .. } => k + i - 2,
            s => s.ambient(),
        }
    }

    fn differential(&self) -> ChainElement {
        let unit = |a: &FieldValue| CdgaElement::unit(a.clone()).expect("a was validated");
        let rho = |k: u32, a: &FieldValue| CdgaElement::rho(k, a.clone()).expect("a was validated");
        let sym = |s: ChainSymbol| ChainElement::symbol(s);
        match self {
            ChainSymbol::One => ChainElement::zero(),
            ChainSymbol::PathPow { j, a } => {
                let lower = ChainSymbol::path_pow(j - 1, a).expect("a was validated");
                ChainElement::symbol(lower).times_cycle(&unit(a)).scale(&q(-(*j as i64)))
            }
            ChainSymbol::Eta { k, i, a } => {
                let (k, i) = (*k, *i);
                let mut out = ChainElement::zero();
                if i >= 1 {
                    out = out + sym(ChainSymbol::EtaFace { k, i, a: a.clone() });
                }
                if i + 2 <= k {
                    out = out - sym(ChainSymbol::EtaFace { k, i: i + 1, a: a.clone() });
                    out = out - sym(ChainSymbol::Eta { k: k - 1, i, a: a.clone() }).times_cycle(&unit(a));
                }
                if i + 1 == k {
                    out = out - ChainElement::from_cycle(&rho(k, a));
                }
                out
            }
            ChainSymbol::EtaFace { k, i, a } => {
                let (k, i) = (*k, *i);
                if i + 2 <= k {
                    -sym(ChainSymbol::EtaFace { k: k - 1, i, a: a.clone() }).times_cycle(&unit(a))
                } else {
                    -ChainElement::from_cycle(&(&unit(a) * &rho(k - 1, a)))
                }
            }
        }
    }
}

fn check_point(a: &FieldValue) -> Result<()> {
    if a.is_zero() || a.is_one() {
        return Err(Error::InvalidFieldValue(format!("a = {a}")));
    }
    Ok(())
}

impl fmt::Display for ChainSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainSymbol::One => write!(f, "1"),
            ChainSymbol::Eta { k, i, a } => write!(f, "η{k}({i};{a})"),
            ChainSymbol::EtaFace { k, i, a } => write!(f, "∂η{k}({i};{a})"),
            ChainSymbol::PathPow { j, a } => write!(f, "p^{j}({a})"),
        }
    }
}

/// `z · (γ_1 ∘ … ∘ γ_r)`; the empty word is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ChainBasis {
    pub cycle: Monomial,
    pub atoms: Vec<ChainSymbol>,
}

impl ChainBasis {
    pub fn atoms_degree(&self) -> i64 {
        self.atoms.iter().map(ChainSymbol::degree).sum()
    }

    pub fn degree(&self) -> i64 {
        self.cycle.coh() + self.atoms_degree()
    }
}

impl fmt::Display for ChainBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = if self.atoms.is_empty() {
            "1".to_string()
        } else {
            self.atoms.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("∘")
        };
        if self.cycle.is_one() {
            write!(f, "{word}")
        } else {
            write!(f, "{}·{word}", self.cycle)
        }
    }
}

/// Concatenation with adjacent path powers of the same path merged.
fn concat(x: &[ChainSymbol], y: &[ChainSymbol]) -> Vec<ChainSymbol> {
    let mut out = x.to_vec();
    for s in y {
        if let (Some(ChainSymbol::PathPow { j, a }), ChainSymbol::PathPow { j: j2, a: a2 }) = (out.last_mut(), s) {
            if a == a2 {
                *j += j2;
                continue;
            }
        }
        out.push(s.clone());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ChainElement {
    terms: LinComb<ChainBasis>,
}

impl ChainElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(ChainBasis::default())
    }

    pub fn basis(b: ChainBasis) -> Self {
        ChainElement {
            terms: LinComb::basis(b),
        }
    }

    pub fn symbol(s: ChainSymbol) -> Self {
        let atoms = if s == ChainSymbol::One { vec![] } else { vec![s] };
        Self::basis(ChainBasis {
            cycle: Monomial::one(),
            atoms,
        })
    }

    /// `z · 1`.
    pub fn from_cycle(z: &CdgaElement) -> Self {
        Self::one().times_cycle(z)
    }

    /// `ξ_k(a) = Σ_i η_k(i)`.
    pub fn xi(k: u32, a: &FieldValue) -> Result<Self> {
        let mut out = Self::zero();
        for i in 0..k {
            out = out + Self::symbol(ChainSymbol::eta(k, i, a)?);
        }
        Ok(out)
    }

    pub fn terms(&self) -> &LinComb<ChainBasis> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        ChainElement {
            terms: self.terms.scale(c),
        }
    }

    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(ChainBasis::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Left action `z · x`.
    pub fn times_cycle(&self, z: &CdgaElement) -> Self {
        let mut out = LinComb::zero();
        for (m, c) in z.terms().iter() {
            for (b, d) in self.terms.iter() {
                if let Some((p, s)) = m.mul(&b.cycle) {
                    out.add_term(
                        ChainBasis {
                            cycle: p,
                            atoms: b.atoms.clone(),
                        },
                        c * d * q(s),
                    );
                }
            }
        }
        ChainElement { terms: out }
    }

    /// `(z·A) ∘ (w·B) = (−1)^{deg A · coh w} (z·w)·(A ∘ B)`.
    pub fn circ(&self, other: &ChainElement) -> Self {
        let mut out = LinComb::zero();
        for (x, c) in self.terms.iter() {
            for (y, d) in other.terms.iter() {
                let Some((p, s)) = x.cycle.mul(&y.cycle) else {
                    continue;
                };
                let sg = q(s) * sign(x.atoms_degree() * y.cycle.coh());
                out.add_term(
                    ChainBasis {
                        cycle: p,
                        atoms: concat(&x.atoms, &y.atoms),
                    },
                    c * d * sg,
                );
            }
        }
        ChainElement { terms: out }
    }

    pub fn chain_d(&self) -> Self {
        let mut out = ChainElement::zero();
        for (b, c) in self.terms.iter() {
            out = out + basis_d(b).scale(c);
        }
        out
    }
}

fn basis_d(b: &ChainBasis) -> ChainElement {
    let z = CdgaElement::monomial(b.cycle.clone());
    let atoms_only = ChainElement::basis(ChainBasis {
        cycle: Monomial::one(),
        atoms: b.atoms.clone(),
    });
    let mut out = atoms_only.times_cycle(&z.differential());
    let mut da = ChainElement::zero();
    let mut deg_before = 0i64;
    for t in 0..b.atoms.len() {
        let pre = ChainElement::basis(ChainBasis {
            cycle: Monomial::one(),
            atoms: b.atoms[..t].to_vec(),
        });
        let post = ChainElement::basis(ChainBasis {
            cycle: Monomial::one(),
            atoms: b.atoms[t + 1..].to_vec(),
        });
        let term = pre.circ(&b.atoms[t].differential()).circ(&post);
        da = da + term.scale(&sign(deg_before));
        deg_before += b.atoms[t].degree();
    }
    out = out + da.times_cycle(&z).scale(&sign(b.cycle.coh()));
    out
}

impl std::ops::Add for ChainElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ChainElement {
            terms: self.terms + o.terms,
        }
    }
}

impl std::ops::Sub for ChainElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ChainElement {
            terms: self.terms - o.terms,
        }
    }
}

impl std::ops::Neg for ChainElement {
    type Output = Self;
    fn neg(self) -> Self {
        ChainElement { terms: -self.terms }
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (n, (b, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){b}")?;
        }
        Ok(())
    }
}

impl BarModule for ChainBasis {
    fn degree(&self) -> i64 {
        ChainBasis::degree(self)
    }

    fn adams(&self) -> i64 {
        self.cycle.adams()
    }

    fn differential(&self) -> LinComb<Self> {
        basis_d(self).terms
    }

    fn act(letter: &Monomial, m: &Self) -> LinComb<Self> {
        ChainElement::basis(m.clone())
            .times_cycle(&CdgaElement::monomial(letter.clone()))
            .terms
    }
}

/// Elements of `M ⊗ AC`, keyed by basis index of `M`.
pub type TwistedChain = LinComb<(usize, ChainBasis)>;

pub fn twisted(parts: &[(usize, ChainElement)]) -> TwistedChain {
    let mut out = LinComb::zero();
    for (i, x) in parts {
        for (b, c) in x.terms.iter() {
            out.add_term((*i, b.clone()), c.clone());
        }
    }
    out
}

/// `d_1 + d_2` with `d_2(v_i ⊗ γ) = Σ_j v_j ⊗ Γ_ij · γ`.
pub fn twisted_d(conn: &Connection, x: &TwistedChain) -> TwistedChain {
    let mut out = LinComb::zero();
    for ((i, b), c) in x.iter() {
        let g = ChainElement::basis(b.clone());
        for (db, d) in g.chain_d().terms.iter() {
            out.add_term((*i, db.clone()), c * d);
        }
        for j in 0..conn.dim() {
            let e = conn.entry(*i, j);
            if e.is_zero() {
                continue;
            }
            for (gb, d) in g.times_cycle(e).terms.iter() {
                out.add_term((j, gb.clone()), c * d);
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ZLElements {
    pub z: TwistedChain,
    pub l: Vec<TwistedChain>,
}

impl ZLElements {
    /// `Z_k, L_1, …, L_k` in that order.
    pub fn all(&self) -> Vec<TwistedChain> {
        let mut v = vec![self.z.clone()];
        v.extend(self.l.iter().cloned());
        v
    }

    pub fn names(&self) -> Vec<String> {
        let k = self.l.len();
        let mut v = vec![format!("Z{k}")];
        v.extend((1..=k).map(|j| format!("L{j}")));
        v
    }
}

fn factorial(n: u32) -> Q {
    (1..=n as i64).fold(q(1), |acc, x| acc * q(x))
}

/// `Z_k = e_0 ⊗ 1 + Σ e_{−j} ⊗ ξ_j` and `L_j = Σ_{t ≥ j} e_{−t} ⊗ p^{∘(t−j)}/(t−j)!`.
pub fn z_and_l_elements(k: u32, a: &FieldValue) -> Result<ZLElements> {
    check_point(a)?;
    let mut zp = vec![(0usize, ChainElement::one())];
    for j in 1..=k {
        zp.push((j as usize, ChainElement::xi(j, a)?));
    }
    let mut l = Vec::new();
    for j in 1..=k {
        let mut parts = Vec::new();
        for t in j..=k {
            let p = ChainElement::symbol(ChainSymbol::path_pow(t - j, a)?);
            parts.push((t as usize, p.scale(&factorial(t - j).recip())));
        }
        l.push(twisted(&parts));
    }
    Ok(ZLElements { z: twisted(&zp), l })
}

/// Rank of a family of twisted chains.
pub fn twisted_rank(xs: &[TwistedChain]) -> usize {
    let mut index = std::collections::BTreeMap::new();
    let rows: Vec<_> = xs
        .iter()
        .map(|x| {
            let mut r = std::collections::BTreeMap::new();
            for (key, c) in x.iter() {
                let n = index.len();
                let col = *index.entry(key.clone()).or_insert(n);
                r.insert(col, c.clone());
            }
            integer_row(&r)
        })
        .collect();
    rank(rows)
}

/// Cycles of `N` embedded as `z · 1`.
pub fn generator_chain(g: &Generator) -> ChainElement {
    ChainElement::from_cycle(&CdgaElement::generator(g.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polylog::li_connection;

    fn a() -> FieldValue {
        FieldValue::symbol("a")
    }

    fn unit() -> CdgaElement {
        CdgaElement::unit(a()).unwrap()
    }

    fn rho(k: u32) -> CdgaElement {
        CdgaElement::rho(k, a()).unwrap()
    }

    fn pp(j: u32) -> ChainElement {
        ChainElement::symbol(ChainSymbol::path_pow(j, &a()).unwrap())
    }

    #[test]
    fn xi_differential() {
        for k in 1..=6 {
            let lhs = ChainElement::xi(k, &a()).unwrap().chain_d();
            let mut rhs = -ChainElement::from_cycle(&rho(k));
            if k > 1 {
                rhs = rhs - ChainElement::xi(k - 1, &a()).unwrap().times_cycle(&unit());
            }
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn path_power_differential() {
        assert_eq!(pp(2).chain_d(), pp(1).times_cycle(&unit()).scale(&q(-2)));
        assert!(ChainElement::one().chain_d().is_zero());
    }

    #[test]
    fn d_squared_on_symbols() {
        for k in 1..=6 {
            for i in 0..k {
                let e = ChainElement::symbol(ChainSymbol::eta(k, i, &a()).unwrap());
                assert!(e.chain_d().chain_d().is_zero(), "η_{k}({i})");
                if i >= 1 {
                    let f = ChainElement::symbol(ChainSymbol::eta_face(k, i, &a()).unwrap());
                    assert!(f.chain_d().chain_d().is_zero(), "∂η_{k}({i})");
                }
            }
        }
        for j in 0..6 {
            assert!(pp(j).chain_d().chain_d().is_zero());
        }
    }

    #[test]
    fn d_squared_on_products() {
        let xs = [
            ChainElement::xi(3, &a()).unwrap(),
            pp(2),
            ChainElement::symbol(ChainSymbol::eta_face(3, 1, &a()).unwrap()),
            ChainElement::xi(2, &a()).unwrap().times_cycle(&CdgaElement::unit(FieldValue::symbol("b")).unwrap()),
        ];
        for x in &xs {
            for y in &xs {
                let p = x.circ(y);
                assert!(p.chain_d().chain_d().is_zero(), "{x} ∘ {y}");
            }
        }
    }

    #[test]
    fn circ_leibniz() {
        let xs = [
            pp(1),
            ChainElement::xi(2, &a()).unwrap(),
            ChainElement::symbol(ChainSymbol::eta_face(2, 1, &a()).unwrap()),
            pp(1).times_cycle(&unit()),
        ];
        for x in &xs {
            for y in &xs {
                let d = x.degree().unwrap();
                let lhs = x.circ(y).chain_d();
                let rhs = x.chain_d().circ(y) + x.circ(&y.chain_d()).scale(&sign(d));
                assert_eq!(lhs, rhs, "{x} ∘ {y}");
            }
        }
    }

    #[test]
    fn circ_units_and_powers() {
        let x = ChainElement::xi(2, &a()).unwrap();
        assert_eq!(ChainElement::one().circ(&x), x);
        assert_eq!(pp(2).circ(&pp(3)), pp(5));
        assert_eq!(pp(2).circ(&pp(3)), pp(3).circ(&pp(2)));
    }

    #[test]
    fn cycle_only_part_matches_algebra() {
        let z = &unit() * &rho(3);
        assert_eq!(ChainElement::from_cycle(&z).chain_d(), ChainElement::from_cycle(&z.differential()));
    }

    #[test]
    fn z_and_l_are_closed_and_independent() {
        for k in 1..=5 {
            let conn = li_connection(k, &a()).unwrap();
            let zl = z_and_l_elements(k, &a()).unwrap();
            for x in zl.all() {
                assert!(twisted_d(&conn, &x).is_zero(), "k = {k}");
            }
            assert_eq!(twisted_rank(&zl.all()), k as usize + 1);
        }
    }

    #[test]
    fn smallest_case() {
        let zl = z_and_l_elements(1, &a()).unwrap();
        let expect_z = twisted(&[(0, ChainElement::one()), (1, ChainElement::xi(1, &a()).unwrap())]);
        assert_eq!(zl.z, expect_z);
        assert_eq!(zl.l[0], twisted(&[(1, ChainElement::one())]));
    }

    #[test]
    fn symbol_ranges() {
        assert!(ChainSymbol::eta(2, 2, &a()).is_err());
        assert!(ChainSymbol::eta_face(2, 0, &a()).is_err());
        assert_eq!(ChainSymbol::path_pow(0, &a()).unwrap(), ChainSymbol::One);
        let e = ChainSymbol::eta(3, 1, &a()).unwrap();
        assert_eq!((e.ambient(), e.chain_dim()), (4, 4));
    }
}
