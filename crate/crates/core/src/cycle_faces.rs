//! Parametrized cubical cycles, faces by equation solving, and alternation
//! through orbit canonical forms under `G_n = {±1}^n ⋊ S_n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{CdgaElement, FieldValue, Generator, Monomial};
use crate::error::{Error, Result};
use crate::linear::{q, sign, LinComb, Q};

/// `q · Π s^e` over named symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    q: Q,
    syms: BTreeMap<String, i32>,
}

impl Scalar {
    pub fn rational(v: Q) -> Self {
        assert!(!v.is_zero(), "scalar coefficients are nonzero");
        Scalar {
            q: v,
            syms: BTreeMap::new(),
        }
    }

    pub fn symbol(s: &str) -> Self {
        Scalar {
            q: q(1),
            syms: [(s.to_string(), 1)].into_iter().collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.q.is_one() && self.syms.is_empty()
    }

    fn mul(&self, o: &Scalar) -> Scalar {
        let mut syms = self.syms.clone();
        for (s, e) in &o.syms {
            let v = syms.entry(s.clone()).or_insert(0);
            *v += e;
            if *v == 0 {
                syms.remove(s);
            }
        }
        Scalar {
            q: &self.q * &o.q,
            syms,
        }
    }

    fn pow(&self, e: i32) -> Scalar {
        let qv = if e >= 0 {
            num_traits::pow(self.q.clone(), e as usize)
        } else {
            num_traits::pow(self.q.recip(), (-e) as usize)
        };
        Scalar {
            q: qv,
            syms: self.syms.iter().map(|(s, x)| (s.clone(), x * e)).filter(|(_, x)| *x != 0).collect(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.q.is_one() || self.syms.is_empty() {
            parts.push(format!("{}", self.q));
        }
        for (s, e) in &self.syms {
            parts.push(if *e == 1 { s.clone() } else { format!("{s}^{e}") });
        }
        write!(f, "{}", parts.join("·"))
    }
}

/// `c · Π x_i^{e_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    coeff: Scalar,
    vars: BTreeMap<usize, i32>,
}

impl Mono {
    pub fn constant(c: Scalar) -> Self {
        Mono {
            coeff: c,
            vars: BTreeMap::new(),
        }
    }

    pub fn var(i: usize) -> Self {
        Mono {
            coeff: Scalar::rational(q(1)),
            vars: [(i, 1)].into_iter().collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut vars = self.vars.clone();
        for (i, e) in &o.vars {
            let v = vars.entry(*i).or_insert(0);
            *v += e;
            if *v == 0 {
                vars.remove(i);
            }
        }
        Mono {
            coeff: self.coeff.mul(&o.coeff),
            vars,
        }
    }

    pub fn pow(&self, e: i32) -> Mono {
        Mono {
            coeff: self.coeff.pow(e),
            vars: self.vars.iter().map(|(i, x)| (*i, x * e)).filter(|(_, x)| *x != 0).collect(),
        }
    }

    fn without(&self, j: usize) -> Mono {
        let mut m = self.clone();
        m.vars.remove(&j);
        m
    }

    fn subst(&self, j: usize, r: &Mono) -> Mono {
        match self.vars.get(&j) {
            None => self.clone(),
            Some(&e) => self.without(j).mul(&r.pow(e)),
        }
    }

    fn rename(&self, map: &BTreeMap<usize, usize>) -> Mono {
        Mono {
            coeff: self.coeff.clone(),
            vars: self.vars.iter().map(|(i, e)| (map[i], *e)).collect(),
        }
    }

    /// Orientation test: prefer the form whose leading exponent is positive.
    fn positive(&self) -> Option<bool> {
        if let Some((_, e)) = self.vars.iter().next() {
            return Some(*e > 0);
        }
        if let Some((_, e)) = self.coeff.syms.iter().next() {
            return Some(*e > 0);
        }
        let a = self.coeff.q.abs();
        if a.is_one() {
            None
        } else {
            Some(a > q(1))
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (i, e) in &self.vars {
            let name = format!("x{}", i + 1);
            let s = |p: i32| if p == 1 { name.clone() } else { format!("{name}^{p}") };
            if *e > 0 {
                num.push(s(*e));
            } else {
                den.push(s(-*e));
            }
        }
        let c = &self.coeff;
        let head = if c.is_one() && !num.is_empty() {
            num.join("·")
        } else if num.is_empty() {
            format!("{c}")
        } else {
            format!("{c}·{}", num.join("·"))
        };
        if den.is_empty() {
            write!(f, "{head}")
        } else {
            write!(f, "{head}/{}", den.join("·"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordExpr {
    Mono(Mono),
    OneMinus(Mono),
    InvOneMinus(Mono),
}

impl fmt::Display for CoordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordExpr::Mono(m) => write!(f, "{m}"),
            CoordExpr::OneMinus(m) => write!(f, "1 - {m}"),
            CoordExpr::InvOneMinus(m) => write!(f, "1/(1 - {m})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Zero,
    One,
    Infinity,
    Expr(CoordExpr),
}

fn invert_value(v: Value) -> Value {
    match v {
        Value::Zero => Value::Infinity,
        Value::Infinity => Value::Zero,
        Value::One => Value::One,
        Value::Expr(e) => Value::Expr(e.inverse()),
    }
}

impl CoordExpr {
    pub fn inverse(&self) -> CoordExpr {
        match self {
            CoordExpr::Mono(m) => CoordExpr::Mono(m.pow(-1)),
            CoordExpr::OneMinus(m) => CoordExpr::InvOneMinus(m.clone()),
            CoordExpr::InvOneMinus(m) => CoordExpr::OneMinus(m.clone()),
        }
    }

    fn vars(&self) -> impl Iterator<Item = &usize> {
        match self {
            CoordExpr::Mono(m) | CoordExpr::OneMinus(m) | CoordExpr::InvOneMinus(m) => m.vars.keys(),
        }
    }

    fn rename(&self, map: &BTreeMap<usize, usize>) -> CoordExpr {
        match self {
            CoordExpr::Mono(m) => CoordExpr::Mono(m.rename(map)),
            CoordExpr::OneMinus(m) => CoordExpr::OneMinus(m.rename(map)),
            CoordExpr::InvOneMinus(m) => CoordExpr::InvOneMinus(m.rename(map)),
        }
    }

    /// `f` or `1/f`, whichever is preferred, with the sign of the choice.
    fn oriented(&self) -> Option<(CoordExpr, i64)> {
        match self {
            CoordExpr::Mono(m) => match m.positive()? {
                true => Some((self.clone(), 1)),
                false => Some((self.inverse(), -1)),
            },
            CoordExpr::OneMinus(_) => Some((self.clone(), 1)),
            CoordExpr::InvOneMinus(_) => Some((self.inverse(), -1)),
        }
    }
}

fn mono_value(m: Mono) -> Value {
    if m.is_constant() && m.coeff.is_one() {
        Value::One
    } else {
        Value::Expr(CoordExpr::Mono(m))
    }
}

fn one_minus_value(m: Mono) -> Value {
    if m.is_constant() && m.coeff.syms.is_empty() {
        let v = q(1) - &m.coeff.q;
        if v.is_zero() {
            return Value::Zero;
        }
        return mono_value(Mono::constant(Scalar::rational(v)));
    }
    Value::Expr(CoordExpr::OneMinus(m))
}

fn normalize(e: CoordExpr) -> Value {
    match e {
        CoordExpr::Mono(m) => mono_value(m),
        CoordExpr::OneMinus(m) => one_minus_value(m),
        CoordExpr::InvOneMinus(m) => invert_value(one_minus_value(m)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alpha {
    Zero,
    Infinity,
}

impl Alpha {
    fn name(self) -> &'static str {
        match self {
            Alpha::Zero => "0",
            Alpha::Infinity => "∞",
        }
    }

    fn flip(self) -> Alpha {
        match self {
            Alpha::Zero => Alpha::Infinity,
            Alpha::Infinity => Alpha::Zero,
        }
    }
}

#[derive(Clone, Debug)]
enum Subst {
    Value(usize, Mono),
    Limit(usize, Alpha),
}

fn apply(e: &CoordExpr, s: &Subst) -> Value {
    match s {
        Subst::Value(j, r) => normalize(match e {
            CoordExpr::Mono(m) => CoordExpr::Mono(m.subst(*j, r)),
            CoordExpr::OneMinus(m) => CoordExpr::OneMinus(m.subst(*j, r)),
            CoordExpr::InvOneMinus(m) => CoordExpr::InvOneMinus(m.subst(*j, r)),
        }),
        Subst::Limit(j, l) => {
            let limit_mono = |m: &Mono| -> Value {
                match m.vars.get(j) {
                    None => mono_value(m.clone()),
                    Some(&x) => {
                        if (x > 0) == (*l == Alpha::Zero) {
                            Value::Zero
                        } else {
                            Value::Infinity
                        }
                    }
                }
            };
            let one_minus = |m: &Mono| -> Value {
                match limit_mono(m) {
                    Value::Zero => Value::One,
                    Value::Infinity => Value::Infinity,
                    _ if !m.vars.contains_key(j) => one_minus_value(m.clone()),
                    _ => unreachable!("limit of a monomial in x_j is 0 or ∞"),
                }
            };
            match e {
                CoordExpr::Mono(m) => limit_mono(m),
                CoordExpr::OneMinus(m) => one_minus(m),
                CoordExpr::InvOneMinus(m) => invert_value(one_minus(m)),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamCycle {
    pub coords: Vec<CoordExpr>,
    pub coefficient: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceOutcome {
    /// The face equation has no solution on the cycle.
    Empty,
    /// Every component lands in a degenerate face.
    Degenerate,
    /// Components with the listed parameter counts.
    Proper(Vec<usize>),
}

impl ParamCycle {
    pub fn ambient(&self) -> usize {
        self.coords.len()
    }

    pub fn params(&self) -> BTreeSet<usize> {
        self.coords.iter().flat_map(|c| c.vars().copied()).collect()
    }

    /// Components of the locus `coords[i] = α`, with multiplicities.
    fn components(&self, i: usize, alpha: Alpha) -> Result<Vec<(Subst, i64)>> {
        let err = |reason: String| Error::UnresolvedFace {
            index: i + 1,
            alpha: alpha.name(),
            reason,
        };
        let limits = |m: &Mono, toward: Alpha| -> Vec<(Subst, i64)> {
            m.vars
                .iter()
                .map(|(&j, &e)| {
                    let dir = if e > 0 { toward } else { toward.flip() };
                    (Subst::Limit(j, dir), e.abs() as i64)
                })
                .collect()
        };
        match (&self.coords[i], alpha) {
            (CoordExpr::Mono(m), _) => Ok(limits(m, alpha)),
            (CoordExpr::OneMinus(m), Alpha::Infinity) => Ok(limits(m, Alpha::Infinity)),
            (CoordExpr::OneMinus(m), Alpha::Zero) => {
                if m.is_constant() {
                    if m.coeff.is_one() {
                        return Err(err("coordinate is identically 0".into()));
                    }
                    return Ok(vec![]);
                }
                let Some((&j, &e)) = m.vars.iter().rev().find(|(_, e)| e.abs() == 1) else {
                    return Err(err(format!("cannot solve 1 - {m} = 0 for a single parameter")));
                };
                let rest = m.without(j);
                Ok(vec![(Subst::Value(j, rest.pow(-e)), 1)])
            }
            (CoordExpr::InvOneMinus(m), _) => {
                let flipped = ParamCycle {
                    coords: vec![CoordExpr::OneMinus(m.clone())],
                    coefficient: q(1),
                };
                flipped.components(0, alpha.flip()).map_err(|_| err(format!("cannot solve 1/(1 - {m}) = {}", alpha.name())))
            }
        }
    }

    /// `∂_{i,α}` with `i` counted from 0.
    pub fn face(&self, i: usize, alpha: Alpha) -> Result<Vec<ParamCycle>> {
        let mut out = Vec::new();
        for (s, mult) in self.components(i, alpha)? {
            let mut coords = Vec::with_capacity(self.coords.len() - 1);
            let mut degenerate = false;
            let mut improper = None;
            for (t, c) in self.coords.iter().enumerate() {
                if t == i {
                    continue;
                }
                match apply(c, &s) {
                    Value::One => degenerate = true,
                    Value::Zero | Value::Infinity => improper = Some(t),
                    Value::Expr(e) => coords.push(e),
                }
            }
            if degenerate {
                continue;
            }
            if let Some(t) = improper {
                return Err(Error::UnresolvedFace {
                    index: i + 1,
                    alpha: alpha.name(),
                    reason: format!("coordinate {} becomes constant 0 or ∞ on a component", t + 1),
                });
            }
            out.push(ParamCycle {
                coords,
                coefficient: &self.coefficient * q(mult),
            });
        }
        Ok(out)
    }

    pub fn face_outcome(&self, i: usize, alpha: Alpha) -> Result<FaceOutcome> {
        if self.components(i, alpha)?.is_empty() {
            return Ok(FaceOutcome::Empty);
        }
        let faces = self.face(i, alpha)?;
        if faces.is_empty() {
            return Ok(FaceOutcome::Degenerate);
        }
        Ok(FaceOutcome::Proper(faces.iter().map(|f| f.params().len()).collect()))
    }

    /// Canonical orbit representative and the sign relating it to `self`.
    pub fn canonical(&self) -> Result<Option<(CanonCycle, i64)>> {
        let params: Vec<usize> = self.params().into_iter().collect();
        let m = params.len();
        if m > 8 {
            return Err(Error::Unsupported(format!("{m} parameters exceed the canonicalization bound")));
        }
        let mut oriented = Vec::with_capacity(self.coords.len());
        let mut best: Option<(Vec<CoordExpr>, i64)> = None;
        let mut conflict = false;
        let mut perm: Vec<usize> = (0..m).collect();
        loop {
            let map: BTreeMap<usize, usize> = params.iter().copied().zip(perm.iter().copied()).collect();
            oriented.clear();
            let mut sg = 1i64;
            for c in &self.coords {
                let Some((e, s)) = c.rename(&map).oriented() else {
                    return Ok(None);
                };
                sg *= s;
                oriented.push(e);
            }
            let mut inv = 0usize;
            for x in 0..oriented.len() {
                for y in x + 1..oriented.len() {
                    match oriented[x].cmp(&oriented[y]) {
                        std::cmp::Ordering::Greater => inv += 1,
                        std::cmp::Ordering::Equal => return Ok(None),
                        _ => {}
                    }
                }
            }
            if inv % 2 == 1 {
                sg = -sg;
            }
            let mut sorted = oriented.clone();
            sorted.sort();
            match &best {
                Some((b, bs)) if *b == sorted => conflict |= *bs != sg,
                Some((b, _)) if *b < sorted => {}
                _ => {
                    best = Some((sorted, sg));
                    conflict = false;
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        if conflict {
            return Ok(None);
        }
        Ok(best.map(|(c, s)| (CanonCycle(c), s)))
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Sorted, oriented coordinate tuple with parameters renamed minimally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonCycle(Vec<CoordExpr>);

impl CanonCycle {
    pub fn coords(&self) -> &[CoordExpr] {
        &self.0
    }

    fn as_param(&self, c: Q) -> ParamCycle {
        ParamCycle {
            coords: self.0.clone(),
            coefficient: c,
        }
    }
}

impl fmt::Display for CanonCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AltCycle {
    terms: LinComb<CanonCycle>,
}

impl AltCycle {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_param(p: &ParamCycle) -> Result<Self> {
        let mut terms = LinComb::zero();
        if let Some((c, s)) = p.canonical()? {
            terms.add_term(c, &p.coefficient * q(s));
        }
        Ok(AltCycle { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn terms(&self) -> &LinComb<CanonCycle> {
        &self.terms
    }

    pub fn representatives(&self) -> Vec<ParamCycle> {
        self.terms.iter().map(|(c, v)| c.as_param(v.clone())).collect()
    }

    pub fn scale(&self, c: &Q) -> Self {
        AltCycle {
            terms: self.terms.scale(c),
        }
    }

    pub fn add(&self, o: &AltCycle) -> Self {
        AltCycle {
            terms: self.terms.clone() + o.terms.clone(),
        }
    }

    /// `Alt(z × w)`.
    pub fn product(&self, o: &AltCycle) -> Result<Self> {
        let mut terms = LinComb::zero();
        for (c, x) in self.terms.iter() {
            let shift = c.0.iter().flat_map(|e| e.vars().copied()).max().map_or(0, |v| v + 1);
            for (d, y) in o.terms.iter() {
                let vars: BTreeSet<usize> = d.0.iter().flat_map(|e| e.vars().copied()).collect();
                let map: BTreeMap<usize, usize> = vars.into_iter().map(|v| (v, v + shift)).collect();
                let mut coords = c.0.clone();
                coords.extend(d.0.iter().map(|e| e.rename(&map)));
                let p = ParamCycle {
                    coords,
                    coefficient: x * y,
                };
                if let Some((k, s)) = p.canonical()? {
                    terms.add_term(k, &p.coefficient * q(s));
                }
            }
        }
        Ok(AltCycle { terms })
    }

    pub fn face(&self, i: usize, alpha: Alpha) -> Result<AltCycle> {
        let mut out = AltCycle::zero();
        for p in self.representatives() {
            for f in p.face(i, alpha)? {
                out = out.add(&AltCycle::from_param(&f)?);
            }
        }
        Ok(out)
    }

    /// `∂ = Σ (−1)^{i−1} (∂_{i,0} − ∂_{i,∞})`.
    pub fn boundary(&self) -> Result<AltCycle> {
        let mut out = AltCycle::zero();
        for p in self.representatives() {
            for i in 0..p.ambient() {
                let s = sign(i as i64);
                for f in p.face(i, Alpha::Zero)? {
                    out = out.add(&AltCycle::from_param(&f)?.scale(&s));
                }
                for f in p.face(i, Alpha::Infinity)? {
                    out = out.add(&AltCycle::from_param(&f)?.scale(&-s.clone()));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for AltCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (n, (c, v)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})·{c}")?;
        }
        Ok(())
    }
}

pub fn alt_equal(x: &AltCycle, y: &AltCycle) -> bool {
    x == y
}

fn scalar_of(a: &FieldValue) -> Result<Scalar> {
    match a {
        FieldValue::Rational(v) => Ok(Scalar::rational(v.clone())),
        FieldValue::Symbol(s) => Ok(Scalar::symbol(s)),
        FieldValue::OneMinusSymbol(s) => Err(Error::Unsupported(format!("ρ(1-{s}) leaves the monomial grammar"))),
    }
}

fn point_coord(u: &FieldValue) -> CoordExpr {
    match u {
        FieldValue::Rational(v) => CoordExpr::Mono(Mono::constant(Scalar::rational(v.clone()))),
        FieldValue::Symbol(s) => CoordExpr::Mono(Mono::constant(Scalar::symbol(s))),
        FieldValue::OneMinusSymbol(s) => CoordExpr::OneMinus(Mono::constant(Scalar::symbol(s))),
    }
}

/// The point `(u)` of `□¹`.
pub fn point(u: &FieldValue) -> Result<AltCycle> {
    if u.is_zero() || u.is_one() {
        return Err(Error::InvalidFieldValue(format!("point ({u})")));
    }
    AltCycle::from_param(&ParamCycle {
        coords: vec![point_coord(u)],
        coefficient: q(1),
    })
}

/// The locus `(x_1, …, x_{k−1}, 1 − x_1, 1 − x_2/x_1, …, 1 − a/x_{k−1})`
/// with sign `(−1)^{k(k−1)/2}`.
pub fn rho_representative(k: u32, a: &FieldValue) -> Result<ParamCycle> {
    if k == 0 {
        return Err(Error::InvalidFieldValue("k must be at least 1".into()));
    }
    if a.is_zero() || a.is_one() {
        return Err(Error::InvalidFieldValue(format!("a = {a}")));
    }
    if k == 1 {
        return Ok(ParamCycle {
            coords: vec![point_coord(&a.one_minus())],
            coefficient: q(1),
        });
    }
    let m = (k - 1) as usize;
    let mut coords: Vec<CoordExpr> = (0..m).map(|i| CoordExpr::Mono(Mono::var(i))).collect();
    coords.push(CoordExpr::OneMinus(Mono::var(0)));
    for i in 1..m {
        coords.push(CoordExpr::OneMinus(Mono::var(i).mul(&Mono::var(i - 1).pow(-1))));
    }
    let last = Mono::constant(scalar_of(a)?).mul(&Mono::var(m - 1).pow(-1));
    coords.push(CoordExpr::OneMinus(last));
    let kk = k as i64;
    Ok(ParamCycle {
        coords,
        coefficient: sign(kk * (kk - 1) / 2),
    })
}

pub fn rho_cycle(k: u32, a: &FieldValue) -> Result<AltCycle> {
    AltCycle::from_param(&rho_representative(k, a)?)
}

pub fn cycle_of_generator(g: &Generator) -> Result<AltCycle> {
    match g {
        Generator::Unit(u) => point(u),
        Generator::Rho { k, a } => rho_cycle(*k, a),
    }
}

pub fn cycle_of_monomial(m: &Monomial) -> Result<AltCycle> {
    let mut out = AltCycle::from_param(&ParamCycle {
        coords: vec![],
        coefficient: q(1),
    })?;
    for g in m.generators() {
        out = out.product(&cycle_of_generator(g)?)?;
    }
    Ok(out)
}

pub fn cycle_of_element(z: &CdgaElement) -> Result<AltCycle> {
    let mut out = AltCycle::zero();
    for (m, c) in z.terms().iter() {
        out = out.add(&cycle_of_monomial(m)?.scale(c));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperFace {
    pub index: usize,
    pub alpha: Alpha,
    pub outcome: FaceOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperReport {
    pub faces: Vec<ProperFace>,
    pub proper: bool,
}

/// Every resolving face of `ρ_k(a)` must drop exactly one parameter.
pub fn properness_report(k: u32, a: &FieldValue) -> Result<ProperReport> {
    let p = rho_representative(k, a)?;
    let m = p.params().len();
    let mut faces = Vec::new();
    let mut proper = true;
    for i in 0..p.ambient() {
        for alpha in [Alpha::Zero, Alpha::Infinity] {
            let outcome = p.face_outcome(i, alpha)?;
            if let FaceOutcome::Proper(ps) = &outcome {
                proper &= ps.iter().all(|&x| x + 1 == m);
            }
            faces.push(ProperFace {
                index: i + 1,
                alpha,
                outcome,
            });
        }
    }
    Ok(ProperReport { faces, proper })
}

/// `∂ρ_k(a)` against `−(a)·ρ_{k−1}(a)`.
pub fn check_rho_boundary(k: u32, a: &FieldValue) -> Result<(AltCycle, AltCycle)> {
    let lhs = rho_cycle(k, a)?.boundary()?;
    let rhs = point(a)?.product(&rho_cycle(k - 1, a)?)?.scale(&q(-1));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> FieldValue {
        FieldValue::symbol("a")
    }

    fn c(coords: Vec<CoordExpr>, v: i64) -> AltCycle {
        AltCycle::from_param(&ParamCycle {
            coords,
            coefficient: q(v),
        })
        .unwrap()
    }

    fn sym(s: &str) -> CoordExpr {
        point_coord(&FieldValue::symbol(s))
    }

    #[test]
    fn rho_cycles_small() {
        let r1 = rho_cycle(1, &a()).unwrap();
        assert_eq!(r1, point(&a().one_minus()).unwrap());
        let r2 = rho_representative(2, &a()).unwrap();
        assert_eq!(r2.coefficient, q(-1));
        assert_eq!(
            rho_cycle(2, &a()).unwrap().to_string(),
            "(-1)·(x1, 1 - x1, 1 - a/x1)"
        );
        let r3 = rho_representative(3, &a()).unwrap();
        assert_eq!((r3.coefficient.clone(), r3.ambient()), (q(-1), 5));
    }

    #[test]
    fn faces_of_rho2() {
        let r2 = rho_cycle(2, &a()).unwrap();
        let f = r2.face(2, Alpha::Zero).unwrap();
        let expect = c(vec![sym("a"), point_coord(&a().one_minus())], -1);
        assert_eq!(f, expect);
        assert!(r2.face(1, Alpha::Zero).unwrap().is_zero());
    }

    #[test]
    fn points_have_no_faces() {
        let p = point(&a()).unwrap();
        assert!(p.face(0, Alpha::Zero).unwrap().is_zero());
        assert!(p.face(0, Alpha::Infinity).unwrap().is_zero());
        assert!(p.boundary().unwrap().is_zero());
        assert!(rho_cycle(1, &a()).unwrap().boundary().unwrap().is_zero());
    }

    #[test]
    fn boundary_identity_k2_k3() {
        for k in 2..=3 {
            let (l, r) = check_rho_boundary(k, &a()).unwrap();
            assert!(!l.is_zero());
            assert!(alt_equal(&l, &r), "k = {k}: {l} vs {r}");
        }
    }

    #[test]
    fn boundary_identity_k4_k5() {
        for k in 4..=5 {
            let (l, r) = check_rho_boundary(k, &a()).unwrap();
            assert!(!l.is_zero());
            assert_eq!(l, r, "k = {k}");
        }
    }

    #[test]
    fn boundary_identity_rational() {
        let half = FieldValue::Rational(crate::linear::qr(1, 2));
        let (l, r) = check_rho_boundary(3, &half).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn swap_and_repeat() {
        let ab = point(&a()).unwrap().product(&point(&FieldValue::symbol("b")).unwrap()).unwrap();
        let ba = point(&FieldValue::symbol("b")).unwrap().product(&point(&a()).unwrap()).unwrap();
        assert_eq!(ab, ba.scale(&q(-1)));
        assert!(c(vec![sym("a"), sym("a")], 1).is_zero());
        assert_ne!(rho_cycle(2, &a()).unwrap(), rho_cycle(2, &FieldValue::symbol("b")).unwrap());
    }

    #[test]
    fn inversion_flips_sign() {
        let x = c(vec![sym("a"), CoordExpr::OneMinus(Mono::var(0)), CoordExpr::Mono(Mono::var(0))], 1);
        let y = c(vec![sym("a").inverse(), CoordExpr::OneMinus(Mono::var(0)), CoordExpr::Mono(Mono::var(0))], 1);
        assert_eq!(x, y.scale(&q(-1)));
    }

    #[test]
    fn boundary_squared_vanishes() {
        for k in 2..=4 {
            let b = rho_cycle(k, &a()).unwrap().boundary().unwrap();
            assert!(b.boundary().unwrap().is_zero());
        }
    }

    #[test]
    fn rho_faces_are_proper() {
        for k in 1..=5 {
            assert!(properness_report(k, &a()).unwrap().proper);
        }
    }

    #[test]
    fn cycle_map_commutes_with_differential() {
        let b = FieldValue::symbol("b");
        let gens = [
            Generator::unit(a()).unwrap(),
            Generator::unit(b.clone()).unwrap(),
            Generator::rho(2, a()).unwrap(),
            Generator::rho(3, a()).unwrap(),
            Generator::rho(2, b.clone()).unwrap(),
        ];
        for mask in 1u32..(1 << gens.len()) {
            let gs: Vec<Generator> = (0..gens.len()).filter(|i| mask & (1 << i) != 0).map(|i| gens[i].clone()).collect();
            let (m, _) = Monomial::from_generators(gs).unwrap();
            if m.adams() > 6 {
                continue;
            }
            let z = CdgaElement::monomial(m.clone());
            let lhs = cycle_of_element(&z).unwrap().boundary().unwrap();
            let rhs = cycle_of_element(&z.differential()).unwrap();
            assert_eq!(lhs, rhs, "{m}");
        }
    }

    #[test]
    fn unsolvable_face_reports() {
        let p = ParamCycle {
            coords: vec![CoordExpr::OneMinus(Mono::var(0).pow(2)), CoordExpr::Mono(Mono::var(0))],
            coefficient: q(1),
        };
        assert!(matches!(p.face(0, Alpha::Zero), Err(Error::UnresolvedFace { .. })));
    }
}
