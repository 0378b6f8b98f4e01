//! Seeded property suites over random bar words.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{CdgaElement, FieldValue};
use crate::bar::{counit_left, counit_right, shuffle, tensor_shuffle, BarElement};
use crate::linear::{q, sign};

/// Outcome of one law over all samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub name: &'static str,
    pub identity: &'static str,
    pub samples: usize,
    pub failures: usize,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.samples > 0
    }
}

fn letter_pool() -> Vec<CdgaElement> {
    let s = |n: &str| FieldValue::symbol(n);
    let unit = |v: FieldValue| CdgaElement::unit(v).expect("unit");
    let rho = |k, v: FieldValue| CdgaElement::rho(k, v).expect("rho");
    let a = s("a");
    let b = s("b");
    vec![
        unit(a.clone()),
        unit(a.one_minus()),
        unit(b.clone()),
        unit(FieldValue::rational(q(2))),
        rho(2, a.clone()),
        rho(3, a.clone()),
        rho(2, b.clone()),
        &unit(a.clone()) * &unit(b.clone()),
        &unit(a.clone()) * &rho(2, a.clone()),
    ]
}

/// Draws random words of length `≤ max_len` with small nonzero coefficients.
pub struct WordSampler {
    rng: ChaCha8Rng,
    pool: Vec<CdgaElement>,
    max_len: usize,
}

impl WordSampler {
    pub fn new(seed: u64, max_len: usize) -> Self {
        WordSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: letter_pool(),
            max_len,
        }
    }

    pub fn word(&mut self) -> BarElement {
        let len = self.rng.gen_range(0..=self.max_len);
        let letters: Vec<CdgaElement> = (0..len)
            .map(|_| self.pool[self.rng.gen_range(0..self.pool.len())].clone())
            .collect();
        let c = [-2i64, -1, 1, 2, 3][self.rng.gen_range(0..5)];
        BarElement::word(&letters).expect("pool letters have positive Adams degree").scale(&q(c))
    }
}

fn deg(x: &BarElement) -> i64 {
    x.degree().unwrap_or(0)
}

fn law(name: &'static str, identity: &'static str, samples: usize, mut ok: impl FnMut() -> bool) -> LawResult {
    let failures = (0..samples).filter(|_| !ok()).count();
    LawResult {
        name,
        identity,
        samples,
        failures,
    }
}

/// Differential, coalgebra and shuffle laws on `samples` draws each.
pub fn hopf_suite(seed: u64, samples: usize) -> Vec<LawResult> {
    let mut w = WordSampler::new(seed, 4);
    vec![
        law("d_squared", "d∘d = 0", samples, || w.word().bar_d().bar_d().is_zero()),
        law("internal_external", "d_I d_E + d_E d_I = 0", samples, || {
            let x = w.word();
            (x.d_internal().d_external() + x.d_external().d_internal()).is_zero()
        }),
        law("coassociativity", "(Δ⊗1)Δ = (1⊗Δ)Δ", samples, || {
            let x = w.word();
            x.coproduct_left() == x.coproduct_right()
        }),
        law("counit", "(e⊗1)Δ = id = (1⊗e)Δ", samples, || {
            let x = w.word();
            let c = x.coproduct();
            counit_left(&c) == x && counit_right(&c) == x
        }),
        law("shuffle_commutativity", "x⧢y = (−1)^{|x||y|} y⧢x", samples, || {
            let (x, y) = (w.word(), w.word());
            shuffle(&x, &y) == shuffle(&y, &x).scale(&sign(deg(&x) * deg(&y)))
        }),
        law("shuffle_associativity", "(x⧢y)⧢z = x⧢(y⧢z)", samples, || {
            let (x, y, z) = (w.word(), w.word(), w.word());
            shuffle(&shuffle(&x, &y), &z) == shuffle(&x, &shuffle(&y, &z))
        }),
        law("shuffle_leibniz", "d(x⧢y) = dx⧢y + (−1)^{|x|} x⧢dy", samples, || {
            let (x, y) = (w.word(), w.word());
            shuffle(&x, &y).bar_d() == shuffle(&x.bar_d(), &y) + shuffle(&x, &y.bar_d()).scale(&sign(deg(&x)))
        }),
        law("coproduct_multiplicative", "Δ(x⧢y) = Δx⧢Δy", samples, || {
            let (x, y) = (w.word(), w.word());
            shuffle(&x, &y).coproduct() == tensor_shuffle(&x.coproduct(), &y.coproduct())
        }),
    ]
}
