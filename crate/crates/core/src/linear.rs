//! Sparse formal linear combinations and exact elimination over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Sign `(-1)^n` as a rational.
pub fn sign(n: i64) -> Q {
    if n.rem_euclid(2) == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// Finite formal combination with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinComb<T: Ord> {
    terms: BTreeMap<T, Q>,
}

impl<T: Ord> Default for LinComb<T> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<T: Ord + Clone> LinComb<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(t: T) -> Self {
        Self::term(t, q(1))
    }

    pub fn term(t: T, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(t, c);
        out
    }

    pub fn add_term(&mut self, t: T, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (t, v) in &other.terms {
            self.add_term(t.clone(), v * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &T) -> Q {
        self.terms.get(t).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Q)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &T> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Linear extension of `f` from basis elements.
    pub fn flat_map<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> LinComb<U>) -> LinComb<U> {
        let mut out = LinComb::zero();
        for (t, c) in &self.terms {
            out.add_scaled(&f(t), c);
        }
        out
    }

    pub fn map_basis<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> U) -> LinComb<U> {
        let mut out = LinComb::zero();
        for (t, c) in &self.terms {
            out.add_term(f(t), c.clone());
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&T) -> bool) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            if keep(t) {
                out.add_term(t.clone(), c.clone());
            }
        }
        out
    }
}

impl<T: Ord + Clone> FromIterator<(T, Q)> for LinComb<T> {
    fn from_iter<I: IntoIterator<Item = (T, Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (t, c) in iter {
            out.add_term(t, c);
        }
        out
    }
}

impl<T: Ord + Clone> AddAssign<&LinComb<T>> for LinComb<T> {
    fn add_assign(&mut self, rhs: &LinComb<T>) {
        self.add_scaled(rhs, &q(1));
    }
}

impl<T: Ord + Clone> SubAssign<&LinComb<T>> for LinComb<T> {
    fn sub_assign(&mut self, rhs: &LinComb<T>) {
        self.add_scaled(rhs, &q(-1));
    }
}

impl<T: Ord + Clone> Add for LinComb<T> {
    type Output = LinComb<T>;
    fn add(mut self, rhs: LinComb<T>) -> LinComb<T> {
        self += &rhs;
        self
    }
}

impl<T: Ord + Clone> Sub for LinComb<T> {
    type Output = LinComb<T>;
    fn sub(mut self, rhs: LinComb<T>) -> LinComb<T> {
        self -= &rhs;
        self
    }
}

impl<T: Ord + Clone> Neg for LinComb<T> {
    type Output = LinComb<T>;
    fn neg(self) -> LinComb<T> {
        self.scale(&q(-1))
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for LinComb<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (t, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{t:?}")?;
        }
        Ok(())
    }
}

/// Sparse integer row keyed by column.
pub type IntRow = BTreeMap<usize, BigInt>;

fn content_normalize(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
    }
    if g.is_zero() || g.is_one() {
        if let Some((_, lead)) = row.iter().next() {
            if lead.is_negative() {
                for v in row.values_mut() {
                    *v = -&*v;
                }
            }
        }
        return;
    }
    let neg = row.values().next().map(|v| v.is_negative()).unwrap_or(false);
    for v in row.values_mut() {
        *v = &*v / &g;
        if neg {
            *v = -&*v;
        }
    }
}

/// Clears denominators of a rational row.
pub fn integer_row(row: &BTreeMap<usize, Q>) -> IntRow {
    let mut l = BigInt::one();
    for v in row.values() {
        l = l.lcm(v.denom());
    }
    let mut out = IntRow::new();
    for (&c, v) in row {
        if !v.is_zero() {
            out.insert(c, (v * Q::from_integer(l.clone())).to_integer());
        }
    }
    out
}

/// `a*x - b*y` with the zero entries removed.
fn combine(a: &BigInt, x: &IntRow, b: &BigInt, y: &IntRow) -> IntRow {
    let mut out = IntRow::new();
    for (&c, v) in x {
        out.insert(c, a * v);
    }
    for (&c, v) in y {
        let e = out.entry(c).or_insert_with(BigInt::zero);
        *e -= b * v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Incrementally maintained reduced echelon form, fraction free.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = (&usize, &IntRow)> {
        self.rows.iter()
    }

    fn reduce(&self, mut r: IntRow) -> IntRow {
        for (p, row) in &self.rows {
            if let Some(v) = r.get(p).cloned() {
                let pv = &row[p];
                r = combine(pv, &r, &v, row);
                content_normalize(&mut r);
            }
        }
        r
    }

    /// Inserts a row; returns whether the rank grew.
    pub fn insert(&mut self, r: IntRow) -> bool {
        let mut r = self.reduce(r);
        let Some((&p, _)) = r.iter().next() else {
            return false;
        };
        content_normalize(&mut r);
        let pv = r[&p].clone();
        for row in self.rows.values_mut() {
            if let Some(v) = row.get(&p).cloned() {
                *row = combine(&pv, row, &v, &r);
                content_normalize(row);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn contains(&self, r: IntRow) -> bool {
        self.reduce(r).is_empty()
    }
}

pub fn rank(rows: impl IntoIterator<Item = IntRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Kernel basis of the map with the given sparse rows over `ncols` unknowns.
pub fn kernel(ncols: usize, rows: impl IntoIterator<Item = IntRow>) -> Vec<BTreeMap<usize, Q>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if e.rows.contains_key(&f) {
            continue;
        }
        let mut v = BTreeMap::new();
        v.insert(f, q(1));
        for (p, row) in &e.rows {
            if let Some(c) = row.get(&f) {
                v.insert(*p, -Q::new(c.clone(), row[p].clone()));
            }
        }
        out.push(v);
    }
    out
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(a: &[BTreeMap<usize, Q>], b: &[BTreeMap<usize, Q>]) -> bool {
    let ra = rank(a.iter().map(integer_row));
    let rb = rank(b.iter().map(integer_row));
    let rab = rank(a.iter().chain(b.iter()).map(integer_row));
    ra == rb && rab == ra
}
