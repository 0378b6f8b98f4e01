//! Complex numbers of fixed binary precision on top of `astro-float`.

use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linear::Q;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

pub fn bigfloat_from_rational(v: &Q, bits: usize) -> BigFloat {
    with_cc(|cc| {
        let n = BigFloat::parse(&v.numer().to_string(), Radix::Dec, bits + 64, RM, cc);
        let d = BigFloat::parse(&v.denom().to_string(), Radix::Dec, bits + 64, RM, cc);
        n.div(&d, bits, RM)
    })
}

pub fn pi(bits: usize) -> BigFloat {
    with_cc(|cc| cc.pi(bits, RM))
}

pub fn rational_to_f64(v: &Q) -> f64 {
    to_f64(&bigfloat_from_rational(v, 64))
}

fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let s = with_cc(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_default();
    s.parse::<f64>().unwrap_or(f64::NAN)
}

#[derive(Clone)]
pub struct ComplexHP {
    re: BigFloat,
    im: BigFloat,
    bits: usize,
}

impl ComplexHP {
    pub fn new(re: BigFloat, im: BigFloat, bits: usize) -> Self {
        ComplexHP { re, im, bits }
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_f64(0.0, 0.0, bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_f64(1.0, 0.0, bits)
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Self {
        ComplexHP {
            re: BigFloat::from_f64(re, bits),
            im: BigFloat::from_f64(im, bits),
            bits,
        }
    }

    pub fn from_rational(v: &Q, bits: usize) -> Self {
        ComplexHP {
            re: bigfloat_from_rational(v, bits),
            im: BigFloat::from_f64(0.0, bits),
            bits,
        }
    }

    pub fn from_rationals(re: &Q, im: &Q, bits: usize) -> Self {
        ComplexHP {
            re: bigfloat_from_rational(re, bits),
            im: bigfloat_from_rational(im, bits),
            bits,
        }
    }

    /// `2πi`.
    pub fn two_pi_i(bits: usize) -> Self {
        let p = pi(bits);
        ComplexHP {
            re: BigFloat::from_f64(0.0, bits),
            im: p.add(&p, bits, RM),
            bits,
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn p(&self, o: &ComplexHP) -> usize {
        self.bits.max(o.bits)
    }

    pub fn add(&self, o: &ComplexHP) -> ComplexHP {
        let p = self.p(o);
        ComplexHP {
            re: self.re.add(&o.re, p, RM),
            im: self.im.add(&o.im, p, RM),
            bits: p,
        }
    }

    pub fn sub(&self, o: &ComplexHP) -> ComplexHP {
        let p = self.p(o);
        ComplexHP {
            re: self.re.sub(&o.re, p, RM),
            im: self.im.sub(&o.im, p, RM),
            bits: p,
        }
    }

    pub fn mul(&self, o: &ComplexHP) -> ComplexHP {
        let p = self.p(o);
        let rr = self.re.mul(&o.re, p, RM);
        let ii = self.im.mul(&o.im, p, RM);
        let ri = self.re.mul(&o.im, p, RM);
        let ir = self.im.mul(&o.re, p, RM);
        ComplexHP {
            re: rr.sub(&ii, p, RM),
            im: ri.add(&ir, p, RM),
            bits: p,
        }
    }

    pub fn div(&self, o: &ComplexHP) -> Result<ComplexHP> {
        if o.is_zero() {
            return Err(Error::Numeric("division by zero".into()));
        }
        let p = self.p(o);
        let den = o.re.mul(&o.re, p, RM).add(&o.im.mul(&o.im, p, RM), p, RM);
        let nr = self.re.mul(&o.re, p, RM).add(&self.im.mul(&o.im, p, RM), p, RM);
        let ni = self.im.mul(&o.re, p, RM).sub(&self.re.mul(&o.im, p, RM), p, RM);
        Ok(ComplexHP {
            re: nr.div(&den, p, RM),
            im: ni.div(&den, p, RM),
            bits: p,
        })
    }

    pub fn neg(&self) -> ComplexHP {
        ComplexHP {
            re: self.re.neg(),
            im: self.im.neg(),
            bits: self.bits,
        }
    }

    pub fn scale(&self, v: &Q) -> ComplexHP {
        if v.is_zero() {
            return ComplexHP::zero(self.bits);
        }
        let f = bigfloat_from_rational(v, self.bits);
        ComplexHP {
            re: self.re.mul(&f, self.bits, RM),
            im: self.im.mul(&f, self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn powi(&self, n: u32) -> ComplexHP {
        let mut out = ComplexHP::one(self.bits);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn abs(&self) -> BigFloat {
        let p = self.bits;
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
            .sqrt(p, RM)
    }

    pub fn abs_f64(&self) -> f64 {
        to_f64(&self.abs())
    }

    /// Principal argument in `(−π, π]`.
    pub fn arg(&self) -> Result<BigFloat> {
        let p = self.bits;
        if self.is_zero() {
            return Err(Error::Numeric("argument of zero".into()));
        }
        let pi = pi(p);
        if self.re.is_zero() {
            let half = pi.div(&BigFloat::from_f64(2.0, p), p, RM);
            return Ok(if self.im.is_positive() { half } else { half.neg() });
        }
        let t = with_cc(|cc| self.im.div(&self.re, p, RM).atan(p, RM, cc));
        if self.re.is_positive() {
            Ok(t)
        } else if self.im.is_negative() {
            Ok(t.sub(&pi, p, RM))
        } else {
            Ok(t.add(&pi, p, RM))
        }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<ComplexHP> {
        let p = self.bits;
        let n2 = self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM);
        let re = with_cc(|cc| n2.ln(p, RM, cc)).div(&BigFloat::from_f64(2.0, p), p, RM);
        Ok(ComplexHP {
            re,
            im: self.arg()?,
            bits: p,
        })
    }

    /// Copy rounded to `bits`.
    pub fn rounded(&self, bits: usize) -> ComplexHP {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        let _ = re.set_precision(bits, RM);
        let _ = im.set_precision(bits, RM);
        ComplexHP { re, im, bits }
    }

    pub fn with_bits(&self, bits: usize) -> ComplexHP {
        ComplexHP {
            re: self.re.clone(),
            im: self.im.clone(),
            bits,
        }
    }

    /// `|self − o|`.
    pub fn dist(&self, o: &ComplexHP) -> f64 {
        self.sub(o).abs_f64()
    }

    /// Decimal strings for the real and imaginary parts.
    pub fn to_decimal_strings(&self) -> (String, String) {
        let f = |x: &BigFloat| {
            if x.is_zero() {
                "0".to_string()
            } else {
                let s = with_cc(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
                s.replacen(".e", ".0e", 1)
            }
        };
        (f(&self.re), f(&self.im))
    }
}

impl fmt::Debug for ComplexHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ComplexHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re_f64(), self.im_f64());
        if im == 0.0 {
            write!(f, "{re:.15}")
        } else if im < 0.0 {
            write!(f, "{re:.15} - {:.15}i", -im)
        } else {
            write!(f, "{re:.15} + {im:.15}i")
        }
    }
}
