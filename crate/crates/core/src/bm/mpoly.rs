//! Multivariate polynomials and fractions over K = F_q(t).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ff::Fq;
use crate::ring::Ring;
use crate::series::RationalFunction;

/// A polynomial in `nvars` variables with coefficients in `C`, keyed by
/// exponent vectors. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

pub type KPoly = MPoly<RationalFunction>;

impl<C: Ring> MPoly<C> {
    pub fn zero(nvars: usize) -> MPoly<C> {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C, nvars: usize) -> MPoly<C> {
        let mut m = MPoly::zero(nvars);
        m.insert(vec![0; nvars], c);
        m
    }

    /// The variable `x_i`, with `one` as its coefficient.
    pub fn var(i: usize, nvars: usize, one: C) -> MPoly<C> {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut m = MPoly::zero(nvars);
        m.insert(e, one);
        m
    }

    fn insert(&mut self, e: Vec<u32>, c: C) {
        if c.is_zero_elem() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero_elem() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// The constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => None,
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, other: &MPoly<C>) -> MPoly<C> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly<C> {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negate())).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly<C>) -> MPoly<C> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly<C>) -> MPoly<C> {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1.times(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> MPoly<C> {
        let mut out = MPoly::zero(self.nvars);
        for (e, d) in &self.terms {
            out.insert(e.clone(), d.times(c));
        }
        out
    }

    pub fn pow(&self, n: u64, one: &C) -> MPoly<C> {
        let mut result = MPoly::constant(one.clone(), self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `d/dx_i`.
    pub fn partial(&self, i: usize) -> MPoly<C> {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert(e2, c.times(&c.int_like(e[i] as i64)));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> MPoly<C> {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.insert(e.clone(), f(c));
        }
        out
    }

    /// `sum_e lift(c_e) * prod values_i^(e_i)`.
    pub fn eval<R: Ring>(&self, values: &[R], zero: &R, lift: impl Fn(&C) -> R) -> R {
        let mut acc = zero.clone();
        for (e, c) in &self.terms {
            let mut term = lift(c);
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    term = term.times(&v.pow_u(k as u64));
                }
            }
            acc = acc.plus(&term);
        }
        acc
    }
}

impl KPoly {
    /// `d/dt` applied to the coefficients.
    pub fn t_partial(&self) -> KPoly {
        self.map_coeffs(|c| c.derivative())
    }

    pub fn field(&self) -> Option<Fq> {
        self.terms.values().next().map(|c| c.field())
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let cs = c.to_string();
            let cs = if cs.contains(' ') || cs.contains('/') {
                format!("({cs})")
            } else {
                cs
            };
            parts.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => mono.join("*"),
                (false, _) => format!("{cs}*{}", mono.join("*")),
            });
        }
        parts.join(" + ")
    }
}

impl<C: fmt::Debug> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `num / den` with polynomial numerator and denominator over K. Kept
/// unreduced; equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct MFrac {
    num: KPoly,
    den: KPoly,
}

impl MFrac {
    pub fn new(num: KPoly, den: KPoly) -> Result<MFrac> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(MFrac { num, den }.normalized())
    }

    pub fn from_poly(num: KPoly, field: Fq) -> MFrac {
        let nvars = num.nvars();
        MFrac {
            num,
            den: KPoly::constant(RationalFunction::one(field), nvars),
        }
    }

    pub fn constant(c: RationalFunction, nvars: usize) -> MFrac {
        let one = RationalFunction::one(c.field());
        MFrac {
            num: KPoly::constant(c, nvars),
            den: KPoly::constant(one, nvars),
        }
    }

    pub fn zero(field: Fq, nvars: usize) -> MFrac {
        MFrac::constant(RationalFunction::zero(field), nvars)
    }

    pub fn var(i: usize, field: Fq, nvars: usize) -> MFrac {
        MFrac::from_poly(KPoly::var(i, nvars, RationalFunction::one(field)), field)
    }

    /// Folds a constant denominator into the numerator.
    fn normalized(self) -> MFrac {
        match self.den.as_constant() {
            Some(c) if !c.is_one_rf() => {
                let inv = c.inv().expect("nonzero");
                let one = RationalFunction::one(c.field());
                MFrac {
                    num: self.num.scale(&inv),
                    den: KPoly::constant(one, self.den.nvars()),
                }
            }
            _ => self,
        }
    }

    pub fn num(&self) -> &KPoly {
        &self.num
    }

    pub fn den(&self) -> &KPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<KPoly> {
        let one = self.den.as_constant()?;
        one.is_one_rf().then(|| self.num.clone())
    }

    pub fn add(&self, o: &MFrac) -> MFrac {
        if self.den == o.den {
            return MFrac {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            };
        }
        MFrac {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .normalized()
    }

    pub fn neg(&self) -> MFrac {
        MFrac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &MFrac) -> MFrac {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &MFrac) -> MFrac {
        MFrac {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
        .normalized()
    }

    pub fn div(&self, o: &MFrac) -> Result<MFrac> {
        MFrac::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn powi(&self, e: i64) -> Result<MFrac> {
        let field = self.field();
        let one = RationalFunction::one(field);
        let n = e.unsigned_abs();
        let f = MFrac {
            num: self.num.pow(n, &one),
            den: self.den.pow(n, &one),
        };
        if e >= 0 {
            Ok(f.normalized())
        } else {
            MFrac::new(f.den, f.num)
        }
    }

    pub fn field(&self) -> Fq {
        self.den.field().expect("denominator is nonzero")
    }

    /// `d/dx_i` by the quotient rule.
    pub fn partial(&self, i: usize) -> MFrac {
        self.derive(|p| p.partial(i))
    }

    /// `d/dt` of the coefficients, by the quotient rule.
    pub fn t_partial(&self) -> MFrac {
        self.derive(|p| p.t_partial())
    }

    fn derive(&self, d: impl Fn(&KPoly) -> KPoly) -> MFrac {
        if self.den.as_constant().is_some() {
            return MFrac {
                num: d(&self.num),
                den: self.den.clone(),
            }
            .normalized();
        }
        MFrac {
            num: d(&self.num).mul(&self.den).sub(&self.num.mul(&d(&self.den))),
            den: self.den.mul(&self.den),
        }
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, o: &MFrac) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    /// Substitutes rational functions of t for the coordinates.
    pub fn eval_global(&self, values: &[RationalFunction]) -> Result<RationalFunction> {
        let field = self.field();
        let zero = RationalFunction::zero(field);
        let n = self.num.eval(values, &zero, |c| c.clone());
        let d = self.den.eval(values, &zero, |c| c.clone());
        n.checked_div(&d)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let n = self.num.fmt_with(names);
        match self.as_poly() {
            Some(_) => n,
            None => format!("({n})/({})", self.den.fmt_with(names)),
        }
    }
}

trait IsOne {
    fn is_one_rf(&self) -> bool;
}

impl IsOne for RationalFunction {
    fn is_one_rf(&self) -> bool {
        self.num().is_one() && self.den().is_one()
    }
}
