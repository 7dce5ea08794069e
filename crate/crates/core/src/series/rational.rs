//! Exact rational functions over F_q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ff::{Fq, FqElem};
use crate::poly::Poly;
use crate::ring::{DiffRing, Ring};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction::zero(num.field());
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let lead = den.lead();
        if lead.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lead.inv().unwrap();
            RationalFunction {
                num: num.scale(inv),
                den: den.scale(inv),
            }
        }
    }

    pub fn zero(field: Fq) -> RationalFunction {
        RationalFunction {
            num: Poly::zero(field),
            den: Poly::one(field),
        }
    }

    pub fn one(field: Fq) -> RationalFunction {
        RationalFunction::from_poly(Poly::one(field))
    }

    pub fn constant(c: FqElem) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(c))
    }

    /// The variable `t`.
    pub fn t(field: Fq) -> RationalFunction {
        RationalFunction::from_poly(Poly::x(field))
    }

    /// `t^e` for any integer `e`.
    pub fn t_power(field: Fq, e: i64) -> RationalFunction {
        let m = Poly::monomial(field.one(), e.unsigned_abs() as usize);
        if e >= 0 {
            RationalFunction::from_poly(m)
        } else {
            RationalFunction {
                num: Poly::one(field),
                den: m,
            }
        }
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        let field = p.field();
        RationalFunction {
            num: p,
            den: Poly::one(field),
        }
    }

    pub fn field(&self) -> Fq {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `deg num - deg den`; minus the order at infinity.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.deg() - self.den.deg())
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        Ok(self * &other.inv()?)
    }

    pub fn powi(&self, e: i64) -> Result<RationalFunction> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(RationalFunction {
            num: base.num.pow(e.unsigned_abs()),
            den: base.den.pow(e.unsigned_abs()),
        })
    }

    pub fn scale(&self, c: FqElem) -> RationalFunction {
        Self::canonical(self.num.scale(c), self.den.clone())
    }

    /// Value at a point of the coefficient field (or an extension reached
    /// through `lift`), `None` at a pole.
    pub fn eval_with(&self, x: FqElem, lift: impl Fn(FqElem) -> FqElem) -> Option<FqElem> {
        let ev = |p: &Poly| {
            p.coeffs()
                .iter()
                .rev()
                .fold(x.field().zero(), |acc, &c| acc * x + lift(c))
        };
        let d = ev(&self.den);
        if d.is_zero() {
            None
        } else {
            Some(ev(&self.num) / d)
        }
    }

    pub fn derivative(&self) -> RationalFunction {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::canonical(n, &self.den * &self.den)
    }

    pub fn frobenius(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.frobenius(),
            den: self.den.frobenius(),
        }
    }

    /// `(g_0, ..., g_{p-1})` with `self = sum g_i^p t^i`, via
    /// `N/D = N D^(p-1) / D^p`.
    pub fn p_power_decompose(&self) -> Vec<RationalFunction> {
        let field = self.field();
        let p = field.p() as usize;
        let m = &self.num * &self.den.pow(p as u64 - 1);
        let den_root = self.den.clone();
        (0..p)
            .map(|i| {
                let coeffs: Vec<FqElem> = m
                    .coeffs()
                    .iter()
                    .skip(i)
                    .step_by(p)
                    .map(|c| c.pth_root())
                    .collect();
                Self::canonical(Poly::from_coeffs(field, coeffs), den_root.clone())
            })
            .collect()
    }

    /// An antiderivative `sum_{i < p-1} g_i^p t^(i+1) / (i+1)`; fails with
    /// `NotExact(-1)` when the `t^(p-1)` component is nonzero.
    pub fn integrate(&self) -> Result<RationalFunction> {
        let field = self.field();
        let g = self.p_power_decompose();
        let p = g.len();
        if !g[p - 1].is_zero() {
            return Err(Error::NotExact(-1));
        }
        let mut acc = RationalFunction::zero(field);
        for (i, gi) in g.iter().enumerate().take(p - 1) {
            if gi.is_zero() {
                continue;
            }
            let c = field.from_int(i as i64 + 1).inv().unwrap();
            acc = &acc + &(&gi.frobenius() * &RationalFunction::t_power(field, i as i64 + 1)).scale(c);
        }
        Ok(acc)
    }

    pub fn map(&self, target: Fq, f: impl Fn(FqElem) -> FqElem + Copy) -> RationalFunction {
        Self::canonical(self.num.map(target, f), self.den.map(target, f))
    }

    pub fn fmt_with(&self, var: &str) -> String {
        let n = self.num.fmt_with(var);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.fmt_with(var);
        let wrap = |s: String, p: &Poly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || s.contains(' ') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("t"))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("t"))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::canonical(n, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Ring for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.field())
    }
    fn int_like(&self, n: i64) -> Self {
        RationalFunction::constant(self.field().from_int(n))
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.field() == other.field()
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
        self.field()
    }
}

impl DiffRing for RationalFunction {
    fn derivative(&self) -> Self {
        RationalFunction::derivative(self)
    }
    fn p_power_decompose(&self) -> Vec<Self> {
        RationalFunction::p_power_decompose(self)
    }
    fn integrate(&self) -> Result<Self> {
        RationalFunction::integrate(self)
    }
    fn mul_t_power(&self, k: i64) -> Self {
        self * &RationalFunction::t_power(self.field(), k)
    }
    fn precision(&self) -> Option<i64> {
        None
    }
    fn t_valuation(&self) -> Option<i64> {
        let a = self.num.valuation()? as i64;
        Some(a - self.den.valuation().unwrap_or(0) as i64)
    }
    fn as_exact(&self) -> Self {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(f: Fq, n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(f, n), Poly::from_ints(f, d)).unwrap()
    }

    #[test]
    fn canonical_form() {
        let f = Fq::prime(5).unwrap();
        // (t^2 - 1)/(2t - 2) = (t + 1)/2
        let r = rat(f, &[-1, 0, 1], &[-2, 2]);
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &Poly::from_ints(f, &[3, 3]));
    }

    #[test]
    fn derivative_of_inverse_t() {
        let f = Fq::prime(7).unwrap();
        let r = RationalFunction::t_power(f, -1);
        assert_eq!(r.derivative(), RationalFunction::t_power(f, -2).scale(-f.one()));
    }

    #[test]
    fn decompose_recombines() {
        for p in [2, 3, 5] {
            let f = Fq::prime(p).unwrap();
            let r = rat(f, &[1, 2, 0, 3, 1], &[1, 1, 0, 1]);
            let g = r.p_power_decompose();
            let mut back = RationalFunction::zero(f);
            for (i, gi) in g.iter().enumerate() {
                back = &back + &gi.frobenius().mul_t_power(i as i64);
            }
            assert_eq!(back, r);
        }
    }

    #[test]
    fn integrate_round_trip() {
        let f = Fq::prime(3).unwrap();
        let r = rat(f, &[1, 1, 2], &[1, 0, 1]);
        let dr = r.derivative();
        let back = dr.integrate().unwrap();
        assert!((&back - &r).derivative().is_zero());
        assert_eq!(RationalFunction::t_power(f, -1).integrate(), Err(Error::NotExact(-1)));
    }

    #[test]
    fn display() {
        let f = Fq::prime(3).unwrap();
        assert_eq!(rat(f, &[1, 0, 1], &[0, -1, 0, 1]).to_string(), "(t^2 + 1)/(t^3 + 2*t)");
        assert_eq!(RationalFunction::t_power(f, -2).to_string(), "1/t^2");
    }
}
