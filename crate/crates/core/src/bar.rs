//! Bar complex `B(Q, N, M)` with internal and external differentials,
//! shuffle product, deconcatenation coproduct and counit.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{CdgaElement, Monomial};
use crate::error::{Error, Result};
use crate::linear::{q, sign, LinComb, Q};

/// Right `N`-module used as the last slot of a bar word.
pub trait BarModule: Clone + Ord + fmt::Debug {
    fn degree(&self) -> i64;
    fn adams(&self) -> i64;
    fn differential(&self) -> LinComb<Self>;
    /// `letter · self`.
    fn act(letter: &Monomial, m: &Self) -> LinComb<Self>;
}

/// `Q` with `N` acting through the augmentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Trivial;

impl BarModule for Trivial {
    fn degree(&self) -> i64 {
        0
    }
    fn adams(&self) -> i64 {
        0
    }
    fn differential(&self) -> LinComb<Self> {
        LinComb::zero()
    }
    fn act(letter: &Monomial, _: &Self) -> LinComb<Self> {
        if letter.is_one() {
            LinComb::basis(Trivial)
        } else {
            LinComb::zero()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarWord<M = Trivial> {
    pub letters: Vec<Monomial>,
    pub right: M,
}

impl BarWord<Trivial> {
    pub fn plain(letters: Vec<Monomial>) -> Self {
        BarWord {
            letters,
            right: Trivial,
        }
    }

    pub fn empty() -> Self {
        Self::plain(Vec::new())
    }
}

impl<M: BarModule> BarWord<M> {
    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|a| a.coh() - 1).sum::<i64>() + self.right.degree()
    }

    pub fn adams(&self) -> i64 {
        self.letters.iter().map(Monomial::adams).sum::<i64>() + self.right.adams()
    }

    fn j_sign(&self, upto: usize) -> i64 {
        self.letters[..upto].iter().map(Monomial::coh).sum()
    }
}

impl<M: fmt::Debug + PartialEq + Default> fmt::Display for BarWord<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, a) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, "|")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")?;
        if self.right != M::default() {
            write!(f, "{:?}", self.right)?;
        }
        Ok(())
    }
}

pub type BarTensor<M = Trivial> = LinComb<(BarWord, BarWord<M>)>;
pub type BarTriple<M = Trivial> = LinComb<(BarWord, BarWord, BarWord<M>)>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarElement<M: Ord = Trivial> {
    terms: LinComb<BarWord<M>>,
}

impl<M: Ord> Default for BarElement<M> {
    fn default() -> Self {
        BarElement {
            terms: LinComb::default(),
        }
    }
}

/// Expands a list of letters multilinearly into words of monomials.
fn expand_letters(letters: &[CdgaElement]) -> Result<LinComb<Vec<Monomial>>> {
    let mut acc: LinComb<Vec<Monomial>> = LinComb::basis(Vec::new());
    for (n, l) in letters.iter().enumerate() {
        let mut next = LinComb::zero();
        for (m, c) in l.terms().iter() {
            if m.adams() <= 0 {
                return Err(Error::Degree(format!(
                    "letter {n} has a term of Adams degree {}",
                    m.adams()
                )));
            }
            for (w, d) in acc.iter() {
                let mut w = w.clone();
                w.push(m.clone());
                next.add_term(w, c * d);
            }
        }
        acc = next;
    }
    Ok(acc)
}

impl BarElement<Trivial> {
    pub fn unit() -> Self {
        Self::basis(BarWord::empty())
    }

    /// `[l_1 | ... | l_s]`; every letter must lie in positive Adams degree.
    pub fn word(letters: &[CdgaElement]) -> Result<Self> {
        Self::word_with(letters, &LinComb::basis(Trivial))
    }

    pub fn counit(&self) -> Q {
        self.terms.coeff(&BarWord::empty())
    }
}

impl<M: BarModule> BarElement<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: BarWord<M>) -> Self {
        BarElement {
            terms: LinComb::basis(w),
        }
    }

    pub fn from_terms(terms: LinComb<BarWord<M>>) -> Self {
        BarElement { terms }
    }

    pub fn word_with(letters: &[CdgaElement], m: &LinComb<M>) -> Result<Self> {
        let words = expand_letters(letters)?;
        let mut out = LinComb::zero();
        for (w, c) in words.iter() {
            for (r, d) in m.iter() {
                out.add_term(
                    BarWord {
                        letters: w.clone(),
                        right: r.clone(),
                    },
                    c * d,
                );
            }
        }
        Ok(BarElement { terms: out })
    }

    pub fn terms(&self) -> &LinComb<BarWord<M>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        BarElement {
            terms: self.terms.scale(c),
        }
    }

    /// The bar degree, when all terms agree.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(BarWord::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn adams(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(BarWord::adams);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|w| w.letters.len()).max().unwrap_or(0)
    }

    pub fn d_internal(&self) -> Self {
        let mut out = LinComb::zero();
        for (w, c) in self.terms.iter() {
            let s = w.letters.len();
            for i in 0..s {
                let da = CdgaElement::monomial(w.letters[i].clone()).differential();
                let sg = sign((i + 1) as i64 + w.j_sign(i));
                for (m, e) in da.terms().iter() {
                    let mut letters = w.letters.clone();
                    letters[i] = m.clone();
                    out.add_term(
                        BarWord {
                            letters,
                            right: w.right.clone(),
                        },
                        c * e * &sg,
                    );
                }
            }
            let sg = sign(s as i64 + w.j_sign(s));
            for (r, e) in w.right.differential().iter() {
                out.add_term(
                    BarWord {
                        letters: w.letters.clone(),
                        right: r.clone(),
                    },
                    c * e * &sg,
                );
            }
        }
        BarElement { terms: out }
    }

    pub fn d_external(&self) -> Self {
        let mut out = LinComb::zero();
        for (w, c) in self.terms.iter() {
            let s = w.letters.len();
            for i in 0..s.saturating_sub(1) {
                let Some((p, ps)) = w.letters[i].mul(&w.letters[i + 1]) else {
                    continue;
                };
                let sg = sign(i as i64 + w.j_sign(i + 1)) * q(ps);
                let mut letters = w.letters[..i].to_vec();
                letters.push(p);
                letters.extend_from_slice(&w.letters[i + 2..]);
                out.add_term(
                    BarWord {
                        letters,
                        right: w.right.clone(),
                    },
                    c * sg,
                );
            }
            if s >= 1 {
                let sg = sign((s - 1) as i64 + w.j_sign(s - 1));
                for (r, e) in M::act(&w.letters[s - 1], &w.right).iter() {
                    out.add_term(
                        BarWord {
                            letters: w.letters[..s - 1].to_vec(),
                            right: r.clone(),
                        },
                        c * e * &sg,
                    );
                }
            }
        }
        BarElement { terms: out }
    }

    pub fn bar_d(&self) -> Self {
        self.d_internal() + self.d_external()
    }

    /// Whether a degree-0 element is closed; other degrees are a usage error.
    pub fn is_cocycle(&self) -> Result<bool> {
        for w in self.terms.keys() {
            if w.degree() != 0 {
                return Err(Error::Degree(format!(
                    "term {w:?} has bar degree {}",
                    w.degree()
                )));
            }
        }
        Ok(self.bar_d().is_zero())
    }

    /// Deconcatenation; the module element stays with the right factor.
    pub fn coproduct(&self) -> BarTensor<M> {
        let mut out = LinComb::zero();
        for (w, c) in self.terms.iter() {
            for i in 0..=w.letters.len() {
                out.add_term(
                    (
                        BarWord::plain(w.letters[..i].to_vec()),
                        BarWord {
                            letters: w.letters[i..].to_vec(),
                            right: w.right.clone(),
                        },
                    ),
                    c.clone(),
                );
            }
        }
        out
    }

    /// `(Δ ⊗ 1)Δ`.
    pub fn coproduct_left(&self) -> BarTriple<M> {
        let mut out = LinComb::zero();
        for ((l, r), c) in self.coproduct().iter() {
            for ((ll, lr), d) in BarElement::basis(l.clone()).coproduct().iter() {
                out.add_term((ll.clone(), lr.clone(), r.clone()), c * d);
            }
        }
        out
    }

    /// `(1 ⊗ Δ)Δ`.
    pub fn coproduct_right(&self) -> BarTriple<M> {
        let mut out = LinComb::zero();
        for ((l, r), c) in self.coproduct().iter() {
            for ((rl, rr), d) in BarElement::basis(r.clone()).coproduct().iter() {
                out.add_term((l.clone(), rl.clone(), rr.clone()), c * d);
            }
        }
        out
    }
}

/// Signed interleavings of two letter lists; signs use shifted degrees.
fn shuffles(u: &[Monomial], v: &[Monomial]) -> Vec<(Vec<Monomial>, i64)> {
    if u.is_empty() {
        return vec![(v.to_vec(), 1)];
    }
    if v.is_empty() {
        return vec![(u.to_vec(), 1)];
    }
    let shifted = |w: &[Monomial]| w.iter().map(|a| a.coh() - 1).sum::<i64>();
    let mut out = Vec::new();
    for (mut w, s) in shuffles(&u[1..], v) {
        w.insert(0, u[0].clone());
        out.push((w, s));
    }
    let flip = if ((v[0].coh() - 1) * shifted(u)).rem_euclid(2) == 0 {
        1
    } else {
        -1
    };
    for (mut w, s) in shuffles(u, &v[1..]) {
        w.insert(0, v[0].clone());
        out.push((w, s * flip));
    }
    out
}

pub fn shuffle(x: &BarElement, y: &BarElement) -> BarElement {
    let mut out = LinComb::zero();
    for (u, c) in x.terms.iter() {
        for (v, d) in y.terms.iter() {
            for (w, s) in shuffles(&u.letters, &v.letters) {
                out.add_term(BarWord::plain(w), c * d * q(s));
            }
        }
    }
    BarElement { terms: out }
}

pub fn tensor<M: BarModule>(x: &BarElement, y: &BarElement<M>) -> BarTensor<M> {
    let mut out = LinComb::zero();
    for (u, c) in x.terms.iter() {
        for (v, d) in y.terms.iter() {
            out.add_term((u.clone(), v.clone()), c * d);
        }
    }
    out
}

/// Product on `B(N) ⊗ B(N)` with the Koszul sign `(-1)^{|x2||y1|}`.
pub fn tensor_shuffle(x: &BarTensor, y: &BarTensor) -> BarTensor {
    let mut out = LinComb::zero();
    for ((x1, x2), c) in x.iter() {
        for ((y1, y2), d) in y.iter() {
            let s = sign(x2.degree() * y1.degree());
            let l = shuffle(&BarElement::basis(x1.clone()), &BarElement::basis(y1.clone()));
            let r = shuffle(&BarElement::basis(x2.clone()), &BarElement::basis(y2.clone()));
            out.add_scaled(&tensor(&l, &r), &(c * d * s));
        }
    }
    out
}

/// `(id ⊗ e)` applied to a tensor.
pub fn counit_right(t: &BarTensor) -> BarElement {
    let mut out = LinComb::zero();
    for ((l, r), c) in t.iter() {
        if r.letters.is_empty() {
            out.add_term(l.clone(), c.clone());
        }
    }
    BarElement { terms: out }
}

/// `(e ⊗ id)` applied to a tensor.
pub fn counit_left<M: BarModule>(t: &BarTensor<M>) -> BarElement<M> {
    let mut out = LinComb::zero();
    for ((l, r), c) in t.iter() {
        if l.letters.is_empty() {
            out.add_term(r.clone(), c.clone());
        }
    }
    BarElement { terms: out }
}

impl<M: BarModule> Add for BarElement<M> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        BarElement {
            terms: self.terms + o.terms,
        }
    }
}

impl<M: BarModule> Sub for BarElement<M> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        BarElement {
            terms: self.terms - o.terms,
        }
    }
}

impl<M: BarModule> Neg for BarElement<M> {
    type Output = Self;
    fn neg(self) -> Self {
        BarElement { terms: -self.terms }
    }
}

impl<M: BarModule + Default + PartialEq> fmt::Debug for BarElement<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<M: BarModule + Default + PartialEq> fmt::Display for BarElement<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if *c == q(1) {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c}){w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldValue;

    fn fv(s: &str) -> FieldValue {
        FieldValue::parse(s).unwrap()
    }

    fn unit(s: &str) -> CdgaElement {
        CdgaElement::unit(fv(s)).unwrap()
    }

    fn rho(k: u32, s: &str) -> CdgaElement {
        CdgaElement::rho(k, fv(s)).unwrap()
    }

    fn w(letters: &[CdgaElement]) -> BarElement {
        BarElement::word(letters).unwrap()
    }

    #[test]
    fn li2_is_a_cocycle() {
        let li2 = w(&[rho(2, "a")]) + w(&[unit("a"), rho(1, "a")]);
        assert!(li2.bar_d().is_zero());
        assert!(li2.is_cocycle().unwrap());
    }

    #[test]
    fn rho2_alone_is_not_closed() {
        let x = w(&[rho(2, "a")]);
        assert_eq!(x.bar_d(), w(&[&unit("a") * &rho(1, "a")]));
        assert!(!x.is_cocycle().unwrap());
    }

    #[test]
    fn empty_word_is_closed() {
        assert!(BarElement::unit().bar_d().is_zero());
        assert!(BarElement::unit().is_cocycle().unwrap());
    }

    #[test]
    fn cocycle_test_rejects_wrong_degree() {
        let x = w(&[&unit("a") * &unit("b")]);
        assert_eq!(x.degree(), Some(1));
        assert!(x.is_cocycle().is_err());
    }

    #[test]
    fn letters_must_have_positive_adams() {
        assert!(BarElement::word(&[CdgaElement::one()]).is_err());
    }

    #[test]
    fn shuffle_examples() {
        let x = unit("a");
        let y = unit("b");
        assert_eq!(shuffle(&w(&[x.clone()]), &w(&[y.clone()])), w(&[x.clone(), y.clone()]) + w(&[y, x.clone()]));
        assert_eq!(shuffle(&BarElement::unit(), &w(&[x.clone()])), w(&[x.clone()]));
        assert_eq!(shuffle(&w(&[x.clone()]), &w(&[x.clone()])), w(&[x.clone(), x]).scale(&q(2)));
    }

    #[test]
    fn coproduct_examples() {
        let x = unit("a");
        let y = unit("b");
        let c = w(&[x.clone(), y.clone()]).coproduct();
        let expect = tensor(&BarElement::unit(), &w(&[x.clone(), y.clone()]))
            + tensor(&w(&[x.clone()]), &w(&[y.clone()]))
            + tensor(&w(&[x, y]), &BarElement::unit());
        assert_eq!(c, expect);
        assert_eq!(BarElement::unit().coproduct(), tensor(&BarElement::unit(), &BarElement::unit()));
    }

    #[test]
    fn degree_formula() {
        let x = w(&[rho(2, "a"), &unit("a") * &unit("b")]);
        assert_eq!(x.degree(), Some(1));
        assert_eq!(x.adams(), Some(4));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn letter_pool() -> Vec<CdgaElement> {
            vec![
                unit("a"),
                unit("1-a"),
                unit("b"),
                rho(2, "a"),
                rho(3, "a"),
                rho(2, "b"),
                &unit("a") * &unit("b"),
                &unit("a") * &rho(2, "a"),
            ]
        }

        fn word(max: usize) -> impl Strategy<Value = BarElement> {
            let p = letter_pool();
            let n = p.len();
            (prop::collection::vec(0..n, 0..=max), -2i64..3).prop_map(move |(ix, c)| {
                let ls: Vec<CdgaElement> = ix.iter().map(|&i| p[i].clone()).collect();
                BarElement::word(&ls).unwrap().scale(&q(if c == 0 { 1 } else { c }))
            })
        }

        fn deg(x: &BarElement) -> i64 {
            x.degree().unwrap_or(0)
        }

        proptest! {
            #[test]
            fn d_squared(x in word(4)) {
                prop_assert!(x.bar_d().bar_d().is_zero());
            }

            #[test]
            fn internal_external_anticommute(x in word(4)) {
                let s = x.d_internal().d_external() + x.d_external().d_internal();
                prop_assert!(s.is_zero());
            }

            #[test]
            fn coassociative(x in word(4)) {
                prop_assert_eq!(x.coproduct_left(), x.coproduct_right());
            }

            #[test]
            fn counital(x in word(4)) {
                let c = x.coproduct();
                prop_assert_eq!(counit_right(&c), x.clone());
                prop_assert_eq!(counit_left(&c), x);
            }

            #[test]
            fn shuffle_graded_commutative(x in word(4), y in word(4)) {
                let s = sign(deg(&x) * deg(&y));
                prop_assert_eq!(shuffle(&x, &y), shuffle(&y, &x).scale(&s));
            }

            #[test]
            fn shuffle_associative(x in word(2), y in word(2), z in word(2)) {
                prop_assert_eq!(shuffle(&shuffle(&x, &y), &z), shuffle(&x, &shuffle(&y, &z)));
            }

            #[test]
            fn shuffle_leibniz(x in word(3), y in word(3)) {
                let lhs = shuffle(&x, &y).bar_d();
                let rhs = shuffle(&x.bar_d(), &y) + shuffle(&x, &y.bar_d()).scale(&sign(deg(&x)));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn coproduct_multiplicative(x in word(3), y in word(3)) {
                let lhs = shuffle(&x, &y).coproduct();
                let rhs = tensor_shuffle(&x.coproduct(), &y.coproduct());
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn counit_multiplicative(x in word(4), y in word(4)) {
                prop_assert_eq!(shuffle(&x, &y).counit(), x.counit() * y.counit());
            }

            #[test]
            fn adams_preserved(x in word(4), y in word(4)) {
                if let Some(a) = x.adams() {
                    let d = x.bar_d();
                    if !d.is_zero() { prop_assert_eq!(d.adams(), Some(a)); }
                    for ((l, r), _) in x.coproduct().iter() {
                        prop_assert_eq!(l.adams() + r.adams(), a);
                    }
                    if let Some(b) = y.adams() {
                        let s = shuffle(&x, &y);
                        if !s.is_zero() { prop_assert_eq!(s.adams(), Some(a + b)); }
                    }
                }
            }
        }
    }
}
