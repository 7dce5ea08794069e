//! Truncated Laurent series over F_q in one uniformizer.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::ff::{Fq, FqElem};
use crate::poly::Poly;
use crate::ring::{DiffRing, Ring};

/// Precision of a series known exactly (a Laurent polynomial).
pub const EXACT: i64 = i64::MAX;

/// `a + b` where either may be [`EXACT`].
pub(crate) fn prec_add(prec: i64, shift: i64) -> i64 {
    if prec == EXACT {
        EXACT
    } else {
        prec + shift
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// A Laurent series `sum_{e >= lo} c_e t^e` known modulo `t^prec`.
///
/// Stored coefficients start at the valuation and have no trailing zeros;
/// the zero series has no coefficients and `lo == prec`. A series with
/// `prec == EXACT` is a Laurent polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    field: Fq,
    lo: i64,
    coeffs: Vec<FqElem>,
    prec: i64,
}

impl LaurentSeries {
    /// Builds `sum_i coeffs[i] t^(lo+i) + O(t^prec)`; terms at or beyond
    /// `prec` are dropped.
    pub fn new(field: Fq, lo: i64, mut coeffs: Vec<FqElem>, prec: i64) -> LaurentSeries {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        if prec != EXACT {
            let keep = (prec - lo).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentSeries::zero(field, prec),
            Some(k) => LaurentSeries {
                field,
                lo: lo + k as i64,
                coeffs: coeffs.split_off(k),
                prec,
            },
        }
    }

    /// Zero modulo `t^prec`.
    pub fn zero(field: Fq, prec: i64) -> LaurentSeries {
        LaurentSeries {
            field,
            lo: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn exact_zero(field: Fq) -> LaurentSeries {
        LaurentSeries::zero(field, EXACT)
    }

    /// The exact monomial `c t^e`.
    pub fn monomial(c: FqElem, e: i64) -> LaurentSeries {
        LaurentSeries::new(c.field(), e, vec![c], EXACT)
    }

    pub fn constant(c: FqElem) -> LaurentSeries {
        LaurentSeries::monomial(c, 0)
    }

    /// The uniformizer `t`.
    pub fn t(field: Fq) -> LaurentSeries {
        LaurentSeries::monomial(field.one(), 1)
    }

    pub fn from_poly(p: &Poly) -> LaurentSeries {
        LaurentSeries::new(p.field(), 0, p.coeffs().to_vec(), EXACT)
    }

    /// Exact Laurent polynomial from `(exponent, coefficient)` pairs.
    pub fn from_terms(field: Fq, terms: &[(i64, FqElem)]) -> LaurentSeries {
        terms.iter().fold(LaurentSeries::exact_zero(field), |acc, &(e, c)| {
            &acc + &LaurentSeries::monomial(c, e)
        })
    }

    /// Random series with coefficients at exponents `lo..prec`.
    pub fn random<R: Rng + ?Sized>(field: Fq, lo: i64, prec: i64, rng: &mut R) -> LaurentSeries {
        let n = (prec - lo).max(0) as usize;
        let coeffs = (0..n)
            .map(|_| field.from_encoding(rng.random_range(0..field.order())))
            .collect();
        LaurentSeries::new(field, lo, coeffs, prec)
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    /// Lowest stored exponent (equals `prec` for zero).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Exclusive upper bound of the known window.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    /// Valuation, or `None` when zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lo)
        }
    }

    /// One past the highest nonzero stored exponent.
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^e`; reading at or beyond the precision is an error.
    pub fn coeff(&self, e: i64) -> Result<FqElem> {
        if e >= self.prec {
            return Err(Error::PrecisionLoss(format!(
                "coefficient of t^{e} requested but series is known modulo t^{}",
                self.prec
            )));
        }
        Ok(self.stored(e))
    }

    fn stored(&self, e: i64) -> FqElem {
        if e < self.lo || e >= self.hi() {
            self.field.zero()
        } else {
            self.coeffs[(e - self.lo) as usize]
        }
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.lo + i as i64, c))
    }

    /// Drops everything from `t^prec` on; never raises the precision.
    pub fn truncate(&self, prec: i64) -> LaurentSeries {
        if prec >= self.prec {
            return self.clone();
        }
        LaurentSeries::new(self.field, self.lo, self.coeffs.clone(), prec)
    }

    /// Agreement on the common window.
    pub fn agrees_with(&self, other: &LaurentSeries) -> bool {
        let p = self.prec.min(other.prec);
        self.truncate(p).coeffs_eq(&other.truncate(p))
    }

    fn coeffs_eq(&self, other: &LaurentSeries) -> bool {
        (self.is_zero() && other.is_zero()) || (self.lo == other.lo && self.coeffs == other.coeffs)
    }

    pub fn scale(&self, c: FqElem) -> LaurentSeries {
        LaurentSeries::new(
            self.field,
            self.lo,
            self.coeffs.iter().map(|&a| a * c).collect(),
            self.prec,
        )
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries {
            field: self.field,
            lo: prec_add(self.lo, k),
            coeffs: self.coeffs.clone(),
            prec: prec_add(self.prec, k),
        }
    }

    /// Applies a field map to every coefficient.
    pub fn map(&self, target: Fq, f: impl Fn(FqElem) -> FqElem) -> LaurentSeries {
        LaurentSeries::new(
            target,
            self.lo,
            self.coeffs.iter().map(|&c| f(c)).collect(),
            self.prec,
        )
    }

    pub fn derivative(&self) -> LaurentSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * self.field.from_int(self.lo + i as i64))
            .collect();
        LaurentSeries::new(self.field, self.lo - 1, coeffs, prec_add(self.prec, -1))
    }

    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> Result<LaurentSeries> {
        let p = self.field.p() as i64;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.coeffs.iter().enumerate().map(|(i, c)| (self.lo + i as i64, c)) {
            if c.is_zero() {
                coeffs.push(*c);
                continue;
            }
            if (e + 1).rem_euclid(p) == 0 {
                return Err(Error::NotExact(e));
            }
            coeffs.push(*c / self.field.from_int(e + 1));
        }
        Ok(LaurentSeries::new(
            self.field,
            self.lo.saturating_add(1),
            coeffs,
            prec_add(self.prec, 1),
        ))
    }

    /// The p-th power map.
    pub fn frobenius(&self) -> LaurentSeries {
        let p = self.field.p() as i64;
        let mut coeffs = vec![self.field.zero(); (self.coeffs.len().max(1) - 1) * p as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * p as usize] = c.frobenius();
        }
        if self.coeffs.is_empty() {
            coeffs.clear();
        }
        let prec = if self.prec == EXACT { EXACT } else { self.prec * p };
        LaurentSeries::new(self.field, self.lo.saturating_mul(p).min(prec), coeffs, prec)
    }

    /// `(g_0, ..., g_{p-1})` with `self = sum_i g_i^p t^i`; `g_i` is known
    /// modulo `t^ceil((prec - i)/p)`.
    pub fn p_power_decompose(&self) -> Vec<LaurentSeries> {
        let p = self.field.p() as i64;
        (0..p)
            .map(|i| {
                let prec = if self.prec == EXACT {
                    EXACT
                } else {
                    ceil_div(self.prec - i, p)
                };
                if self.is_zero() {
                    return LaurentSeries::zero(self.field, prec);
                }
                let first = ceil_div(self.lo - i, p);
                let mut coeffs = Vec::new();
                let mut e = first * p + i;
                while e < self.hi() {
                    coeffs.push(self.stored(e).pth_root());
                    e += p;
                }
                LaurentSeries::new(self.field, first, coeffs, prec)
            })
            .collect()
    }

    /// Coefficient of `t^-1`.
    pub fn residue(&self) -> Result<FqElem> {
        self.coeff(-1)
    }

    /// Inverse, computed to at most `cap` (relative to the natural
    /// precision `prec - 2v`).
    pub fn inv(&self, cap: i64) -> Result<LaurentSeries> {
        let Some(v) = self.valuation() else {
            return Err(Error::DivisionByZero);
        };
        let natural = prec_add(self.prec, -2 * v);
        let prec = natural.min(cap);
        if prec == EXACT {
            if self.coeffs.len() == 1 {
                return Ok(LaurentSeries::monomial(self.coeffs[0].inv().unwrap(), -v));
            }
            return Err(Error::PrecisionLoss(
                "inverse of a non-monomial Laurent polynomial needs a precision cap".into(),
            ));
        }
        let n = (prec + v).max(0) as usize;
        let a0inv = self.coeffs[0].inv().unwrap();
        let mut b: Vec<FqElem> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                b.push(a0inv);
                continue;
            }
            let mut s = self.field.zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s += self.coeffs[j] * b[k - j];
            }
            b.push(-(s * a0inv));
        }
        Ok(LaurentSeries::new(self.field, -v, b, prec))
    }

    /// `self / other` with the inverse capped at `cap`.
    pub fn div(&self, other: &LaurentSeries, cap: i64) -> Result<LaurentSeries> {
        let inv_cap = match self.valuation() {
            Some(v) => prec_add(cap, -v),
            None => cap,
        };
        let q = self * &other.inv(inv_cap)?;
        Ok(q.truncate(cap))
    }

    pub fn pow(&self, e: u64) -> LaurentSeries {
        let mut result = LaurentSeries::constant(self.field.one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(g)` for `g` of positive valuation; negative exponents of `self`
    /// use `g^-1` capped at `cap`.
    pub fn compose(&self, g: &LaurentSeries, cap: i64) -> Result<LaurentSeries> {
        let vg = match g.valuation() {
            Some(v) if v >= 1 => v,
            _ => {
                return Err(Error::Invalid(
                    "substituted series must have positive valuation".into(),
                ))
            }
        };
        let mut out = LaurentSeries::exact_zero(self.field);
        if self.is_zero() {
            return Ok(LaurentSeries::zero(self.field, self.prec.saturating_mul(vg)));
        }
        let ginv = if self.lo < 0 { Some(g.inv(cap)?) } else { None };
        let mut power = if self.lo >= 0 {
            g.pow(self.lo as u64)
        } else {
            ginv.as_ref().unwrap().pow(self.lo.unsigned_abs())
        };
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = &power * g;
            }
            if !c.is_zero() {
                out = &out + &power.scale(c);
            }
        }
        let prec = if self.prec == EXACT {
            out.prec
        } else {
            out.prec.min(self.prec.saturating_mul(vg))
        };
        Ok(out.truncate(prec.min(cap)))
    }

    pub fn fmt_with(&self, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms() {
            let cs = c.to_string();
            let coeff = if cs.contains(' ') { format!("({cs})") } else { cs };
            let term = match e {
                0 => coeff,
                _ => {
                    let mono = match e {
                        1 => var.to_string(),
                        _ => format!("{var}^{e}"),
                    };
                    if c.is_one() {
                        mono
                    } else {
                        format!("{coeff}*{mono}")
                    }
                }
            };
            parts.push(term);
        }
        if self.prec != EXACT {
            parts.push(format!("O({var}^{})", self.prec));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("t"))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("t"))
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        assert!(self.field == rhs.field, "mixing series over different fields");
        let prec = self.prec.min(rhs.prec);
        if rhs.is_zero() {
            return self.truncate(prec);
        }
        if self.is_zero() {
            return rhs.truncate(prec);
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().max(rhs.hi()).min(prec);
        let coeffs = (lo..hi.max(lo)).map(|e| self.stored(e) + rhs.stored(e)).collect();
        LaurentSeries::new(self.field, lo, coeffs, prec)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            field: self.field,
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
            prec: self.prec,
        }
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        assert!(self.field == rhs.field, "mixing series over different fields");
        if (self.is_zero() && self.is_exact()) || (rhs.is_zero() && rhs.is_exact()) {
            return LaurentSeries::exact_zero(self.field);
        }
        let prec = prec_add(self.prec, rhs.lo).min(prec_add(rhs.prec, self.lo));
        if self.is_zero() || rhs.is_zero() {
            return LaurentSeries::zero(self.field, prec);
        }
        let lo = self.lo + rhs.lo;
        let len = if prec == EXACT {
            self.coeffs.len() + rhs.coeffs.len() - 1
        } else {
            ((prec - lo).max(0) as usize).min(self.coeffs.len() + rhs.coeffs.len() - 1)
        };
        let mut coeffs = vec![self.field.zero(); len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        LaurentSeries::new(self.field, lo, coeffs, prec)
    }
}

impl Add for LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: LaurentSeries) -> LaurentSeries {
        &self + &rhs
    }
}

impl Sub for LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: LaurentSeries) -> LaurentSeries {
        &self - &rhs
    }
}

impl Mul for LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: LaurentSeries) -> LaurentSeries {
        &self * &rhs
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        -&self
    }
}

impl Ring for LaurentSeries {
    fn zero_like(&self) -> Self {
        LaurentSeries::exact_zero(self.field)
    }
    fn one_like(&self) -> Self {
        LaurentSeries::constant(self.field.one())
    }
    fn int_like(&self, n: i64) -> Self {
        LaurentSeries::constant(self.field.from_int(n))
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.field == other.field
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn frob(&self) -> Self {
        self.frobenius()
    }
    fn base_field(&self) -> Fq {
        self.field
    }
}

impl DiffRing for LaurentSeries {
    fn derivative(&self) -> Self {
        LaurentSeries::derivative(self)
    }
    fn p_power_decompose(&self) -> Vec<Self> {
        LaurentSeries::p_power_decompose(self)
    }
    fn integrate(&self) -> Result<Self> {
        LaurentSeries::integrate(self)
    }
    fn mul_t_power(&self, k: i64) -> Self {
        self.shift(k)
    }
    fn precision(&self) -> Option<i64> {
        (self.prec != EXACT).then_some(self.prec)
    }
    fn t_valuation(&self) -> Option<i64> {
        self.valuation()
    }
    fn as_exact(&self) -> Self {
        LaurentSeries::new(self.field, self.lo, self.coeffs.clone(), EXACT)
    }
}
