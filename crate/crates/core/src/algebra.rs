//! Free Adams-graded graded-commutative dga on unit points and polylog cycles.
//!
//! Every generator sits in cohomological degree 1, so monomials are exterior
//! words: reordering costs the permutation sign and repeats vanish.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::{q, sign, LinComb, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bidegree {
    pub adams: i64,
    pub coh: i64,
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree {
            adams: self.adams + o.adams,
            coh: self.coh + o.coh,
        }
    }
}

/// Element of the base field: an exact rational or a named symbol `a` (or `1-a`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldValue {
    Rational(Q),
    Symbol(String),
    OneMinusSymbol(String),
}

impl FieldValue {
    pub fn rational(v: Q) -> Self {
        FieldValue::Rational(v)
    }

    pub fn symbol(name: &str) -> Self {
        FieldValue::Symbol(name.to_string())
    }

    pub fn one_minus(&self) -> Self {
        match self {
            FieldValue::Rational(v) => FieldValue::Rational(Q::one() - v),
            FieldValue::Symbol(s) => FieldValue::OneMinusSymbol(s.clone()),
            FieldValue::OneMinusSymbol(s) => FieldValue::Symbol(s.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldValue::Rational(v) if v.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldValue::Rational(v) if v.is_one())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            FieldValue::Rational(v) => Some(v),
            _ => None,
        }
    }

    /// Parses `p/q`, an integer, a decimal, an identifier or `1-identifier`.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::parse_with_note(s)?.0)
    }

    /// Like [`FieldValue::parse`], with a note when a decimal was converted.
    pub fn parse_with_note(s: &str) -> Result<(Self, Option<String>)> {
        let t = s.trim();
        let bad = || Error::InvalidFieldValue(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        if let Some(rest) = t.strip_prefix("1-") {
            if is_identifier(rest) {
                return Ok((FieldValue::OneMinusSymbol(rest.to_string()), None));
            }
        }
        if is_identifier(t) {
            return Ok((FieldValue::Symbol(t.to_string()), None));
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok((FieldValue::Rational(BigRational::new(n, d)), None));
        }
        if let Ok(n) = t.parse::<BigInt>() {
            return Ok((FieldValue::Rational(BigRational::from_integer(n)), None));
        }
        let v = parse_decimal(t).ok_or_else(bad)?;
        let note = format!("decimal {t} read exactly as {v}");
        Ok((FieldValue::Rational(v), Some(note)))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_decimal(t: &str) -> Option<Q> {
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{ip}{fp}").parse().ok()?;
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut v = BigRational::from_integer(digits);
    if scale >= 0 {
        v *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        v /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -v } else { v })
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(v) => write!(f, "{v}"),
            FieldValue::Symbol(s) => write!(f, "{s}"),
            FieldValue::OneMinusSymbol(s) => write!(f, "1-{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Unit(FieldValue),
    Rho { k: u32, a: FieldValue },
}

impl Generator {
    pub fn unit(u: FieldValue) -> Result<Self> {
        if u.is_zero() || u.is_one() {
            return Err(Error::InvalidFieldValue(format!("unit point ({u})")));
        }
        Ok(Generator::Unit(u))
    }

    /// `ρ_k(a)`; `ρ_1(a)` is stored as the unit `(1-a)`.
    pub fn rho(k: u32, a: FieldValue) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidFieldValue("ρ_0 is undefined".into()));
        }
        if a.is_zero() || a.is_one() {
            return Err(Error::InvalidFieldValue(format!("ρ_{k}({a})")));
        }
        if k == 1 {
            return Ok(Generator::Unit(a.one_minus()));
        }
        Ok(Generator::Rho { k, a })
    }

    pub fn bidegree(&self) -> Bidegree {
        match self {
            Generator::Unit(_) => Bidegree { adams: 1, coh: 1 },
            Generator::Rho { k, .. } => Bidegree {
                adams: *k as i64,
                coh: 1,
            },
        }
    }

    pub fn differential(&self) -> CdgaElement {
        match self {
            Generator::Unit(_) => CdgaElement::zero(),
            Generator::Rho { k, a } => {
                let u = CdgaElement::generator(Generator::Unit(a.clone()));
                let lower = Generator::rho(k - 1, a.clone()).expect("a was validated");
                -(&u * &CdgaElement::generator(lower))
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Unit(u) => write!(f, "({u})"),
            Generator::Rho { k, a } => write!(f, "ρ{k}({a})"),
        }
    }
}

/// Strictly increasing list of generators; the empty list is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bidegree(&self) -> Bidegree {
        self.0
            .iter()
            .fold(Bidegree::default(), |acc, g| acc + g.bidegree())
    }

    pub fn adams(&self) -> i64 {
        self.bidegree().adams
    }

    pub fn coh(&self) -> i64 {
        self.0.len() as i64
    }

    /// Sorts an arbitrary list of generators, tracking the permutation sign.
    pub fn from_generators(mut gs: Vec<Generator>) -> Option<(Monomial, i64)> {
        let mut swaps = 0i64;
        for i in 1..gs.len() {
            let mut j = i;
            while j > 0 && gs[j - 1] > gs[j] {
                gs.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if gs.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Monomial(gs), if swaps % 2 == 0 { 1 } else { -1 }))
    }

    /// Product with the Koszul sign, or `None` when a generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, i64)> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        let mut inversions = 0usize;
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i] < other.0[j]) {
                out.push(self.0[i].clone());
                i += 1;
            } else if i == self.0.len() || other.0[j] < self.0[i] {
                inversions += self.0.len() - i;
                out.push(other.0[j].clone());
                j += 1;
            } else {
                return None;
            }
        }
        Some((Monomial(out), if inversions.is_multiple_of(2) { 1 } else { -1 }))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, g) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "·")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CdgaElement {
    terms: LinComb<Monomial>,
}

impl CdgaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(q(1))
    }

    pub fn scalar(c: Q) -> Self {
        CdgaElement {
            terms: LinComb::term(Monomial::one(), c),
        }
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(Monomial(vec![g]))
    }

    pub fn monomial(m: Monomial) -> Self {
        CdgaElement {
            terms: LinComb::basis(m),
        }
    }

    pub fn unit(u: FieldValue) -> Result<Self> {
        Ok(Self::generator(Generator::unit(u)?))
    }

    pub fn rho(k: u32, a: FieldValue) -> Result<Self> {
        Ok(Self::generator(Generator::rho(k, a)?))
    }

    pub fn from_terms(terms: LinComb<Monomial>) -> Self {
        CdgaElement { terms }
    }

    pub fn terms(&self) -> &LinComb<Monomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        CdgaElement {
            terms: self.terms.scale(c),
        }
    }

    pub fn product(&self, other: &CdgaElement) -> CdgaElement {
        let mut out = LinComb::zero();
        for (m, c) in self.terms.iter() {
            for (n, d) in other.terms.iter() {
                if let Some((p, s)) = m.mul(n) {
                    out.add_term(p, c * d * q(s));
                }
            }
        }
        CdgaElement { terms: out }
    }

    pub fn differential(&self) -> CdgaElement {
        let mut out = CdgaElement::zero();
        for (m, c) in self.terms.iter() {
            let gs = m.generators();
            for (i, g) in gs.iter().enumerate() {
                let dg = g.differential();
                if dg.is_zero() {
                    continue;
                }
                let pre = CdgaElement::monomial(Monomial(gs[..i].to_vec()));
                let post = CdgaElement::monomial(Monomial(gs[i + 1..].to_vec()));
                let t = pre.product(&dg).product(&post);
                out = out + t.scale(&(c * sign(i as i64)));
            }
        }
        out
    }

    pub fn augmentation(&self) -> Q {
        self.terms.coeff(&Monomial::one())
    }

    /// The single bidegree of a nonzero homogeneous element.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }
}

impl Add for CdgaElement {
    type Output = CdgaElement;
    fn add(self, o: CdgaElement) -> CdgaElement {
        CdgaElement {
            terms: self.terms + o.terms,
        }
    }
}

impl Sub for CdgaElement {
    type Output = CdgaElement;
    fn sub(self, o: CdgaElement) -> CdgaElement {
        CdgaElement {
            terms: self.terms - o.terms,
        }
    }
}

impl Neg for CdgaElement {
    type Output = CdgaElement;
    fn neg(self) -> CdgaElement {
        CdgaElement { terms: -self.terms }
    }
}

impl Mul for &CdgaElement {
    type Output = CdgaElement;
    fn mul(self, o: &CdgaElement) -> CdgaElement {
        self.product(o)
    }
}

impl fmt::Display for CdgaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c}){m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a() -> FieldValue {
        FieldValue::symbol("a")
    }

    fn unit(s: &str) -> CdgaElement {
        CdgaElement::unit(FieldValue::parse(s).unwrap()).unwrap()
    }

    fn rho(k: u32, s: &str) -> CdgaElement {
        CdgaElement::rho(k, FieldValue::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn odd_generator_squares_to_zero() {
        assert!(unit("a").product(&unit("a")).is_zero());
    }

    #[test]
    fn swap_costs_a_sign() {
        let x = unit("a");
        let y = rho(2, "a");
        assert_eq!(&x * &y, -(&y * &x));
    }

    #[test]
    fn unit_law() {
        let z = rho(3, "a") + unit("b");
        assert_eq!(&CdgaElement::one() * &z, z);
    }

    #[test]
    fn rho_one_is_a_unit() {
        assert_eq!(rho(1, "a"), unit("1-a"));
        assert_eq!(rho(1, "1/3"), unit("2/3"));
    }

    #[test]
    fn differential_examples() {
        assert!(unit("a").differential().is_zero());
        assert_eq!(rho(3, "a").differential(), -(&unit("a") * &rho(2, "a")));
        let z = &unit("b") * &rho(2, "a");
        let expect = &(&unit("b") * &unit("a")) * &rho(1, "a");
        assert_eq!(z.differential(), expect);
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(CdgaElement::scalar(q(5)).augmentation(), q(5));
        assert_eq!(rho(2, "a").augmentation(), q(0));
        assert_eq!((CdgaElement::scalar(q(3)) + unit("a")).augmentation(), q(3));
    }

    #[test]
    fn invalid_points_rejected() {
        assert!(Generator::rho(2, FieldValue::parse("1").unwrap()).is_err());
        assert!(Generator::unit(FieldValue::parse("0").unwrap()).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(FieldValue::parse("1/2").unwrap(), FieldValue::Rational(crate::linear::qr(1, 2)));
        let (v, note) = FieldValue::parse_with_note("0.25").unwrap();
        assert_eq!(v, FieldValue::Rational(crate::linear::qr(1, 4)));
        assert!(note.is_some());
        assert_eq!(FieldValue::parse("1-a").unwrap(), a().one_minus());
        assert!(FieldValue::parse("1/0").is_err());
        assert!(FieldValue::parse("x y").is_err());
    }

    /// Every monomial in the pool up to Adams degree 6.
    fn pool() -> Vec<Monomial> {
        let gens: Vec<Generator> = vec![
            Generator::unit(a()).unwrap(),
            Generator::unit(a().one_minus()).unwrap(),
            Generator::unit(FieldValue::symbol("b")).unwrap(),
            Generator::rho(2, a()).unwrap(),
            Generator::rho(3, a()).unwrap(),
            Generator::rho(4, a()).unwrap(),
            Generator::rho(2, FieldValue::symbol("b")).unwrap(),
        ];
        let mut out = vec![];
        for mask in 0u32..(1 << gens.len()) {
            let gs: Vec<Generator> = (0..gens.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| gens[i].clone())
                .collect();
            let (m, _) = Monomial::from_generators(gs).unwrap();
            if m.adams() <= 6 {
                out.push(m);
            }
        }
        out
    }

    #[test]
    fn d_squared_vanishes_exhaustively() {
        for m in pool() {
            let z = CdgaElement::monomial(m);
            assert!(z.differential().differential().is_zero(), "{z}");
        }
    }

    fn element() -> impl Strategy<Value = CdgaElement> {
        let p = pool();
        let n = p.len();
        (0..n, -3i64..4).prop_map(move |(i, c)| CdgaElement::monomial(p[i].clone()).scale(&q(c)))
    }

    proptest! {
        #[test]
        fn leibniz(z in element(), w in element()) {
            let coh = z.terms().keys().next().map(Monomial::coh).unwrap_or(0);
            let lhs = z.product(&w).differential();
            let rhs = z.differential().product(&w) + z.product(&w.differential()).scale(&sign(coh));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn graded_commutative(z in element(), w in element()) {
            let cz = z.terms().keys().next().map(Monomial::coh).unwrap_or(0);
            let cw = w.terms().keys().next().map(Monomial::coh).unwrap_or(0);
            prop_assert_eq!(z.product(&w), w.product(&z).scale(&sign(cz * cw)));
        }

        #[test]
        fn augmentation_multiplicative(x in -5i64..5, y in -5i64..5, z in element(), w in element()) {
            let z = z + CdgaElement::scalar(q(x));
            let w = w + CdgaElement::scalar(q(y));
            prop_assert_eq!(z.product(&w).augmentation(), z.augmentation() * w.augmentation());
        }

        #[test]
        fn differential_raises_coh(z in element()) {
            if let (Some(b), Some(db)) = (z.bidegree(), z.differential().bidegree()) {
                prop_assert_eq!(db.adams, b.adams);
                prop_assert_eq!(db.coh, b.coh + 1);
            }
        }
    }
}
