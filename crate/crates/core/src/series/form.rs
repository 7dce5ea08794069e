//! Differential forms `f dt` in dimension one.

use std::fmt;

use crate::error::Result;
use crate::ff::FqElem;
use crate::ring::DiffRing;

use super::{LaurentSeries, RationalFunction};

/// The form `coeff * dt`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form<C> {
    coeff: C,
}

/// A form over a completion `F_q((t))`.
pub type LocalForm = Form<LaurentSeries>;
/// A form over the global field `F_q(t)`.
pub type GlobalForm = Form<RationalFunction>;

impl<C: DiffRing> Form<C> {
    pub fn new(coeff: C) -> Form<C> {
        Form { coeff }
    }

    pub fn coeff(&self) -> &C {
        &self.coeff
    }

    pub fn into_coeff(self) -> C {
        self.coeff
    }

    /// `df`.
    pub fn exact(f: &C) -> Form<C> {
        Form::new(f.derivative())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero_elem()
    }

    pub fn plus(&self, other: &Form<C>) -> Form<C> {
        Form::new(self.coeff.plus(&other.coeff))
    }

    pub fn minus(&self, other: &Form<C>) -> Form<C> {
        Form::new(self.coeff.minus(&other.coeff))
    }

    pub fn negate(&self) -> Form<C> {
        Form::new(self.coeff.negate())
    }

    /// `g * self`.
    pub fn scale(&self, g: &C) -> Form<C> {
        Form::new(self.coeff.times(g))
    }

    /// `C(f dt) = g_{p-1} dt` without precision checks.
    pub fn cartier_unchecked(&self) -> Form<C> {
        let mut g = self.coeff.p_power_decompose();
        Form::new(g.pop().expect("p >= 2 components"))
    }

    /// The representative `f^p t^(p-1) dt` of `C^-1(f dt)`.
    pub fn cartier_inverse(&self) -> Form<C> {
        let p = self.coeff.base_field().p() as i64;
        Form::new(self.coeff.frob().mul_t_power(p - 1))
    }

    /// An `F` with `dF = self`.
    pub fn integrate(&self) -> Result<C> {
        self.coeff.integrate()
    }
}

impl LocalForm {
    /// `du / u`, computed to the precision of `u` (capped at `cap`).
    pub fn dlog(u: &LaurentSeries, cap: i64) -> Result<LocalForm> {
        Ok(Form::new(u.derivative().div(u, cap)?))
    }

    /// `dt / t`.
    pub fn dlog_t(field: crate::ff::Fq) -> LocalForm {
        Form::new(LaurentSeries::monomial(field.one(), -1))
    }

    pub fn residue(&self) -> Result<FqElem> {
        self.coeff.residue()
    }

    pub fn fmt_with(&self, var: &str) -> String {
        fmt_form(&self.coeff.fmt_with(var), self.is_zero(), var)
    }
}

impl GlobalForm {
    pub fn dlog(u: &RationalFunction) -> Result<GlobalForm> {
        Ok(Form::new(u.derivative().checked_div(u)?))
    }

    pub fn fmt_with(&self, var: &str) -> String {
        fmt_form(&self.coeff.fmt_with(var), self.is_zero(), var)
    }
}

fn fmt_form(coeff: &str, zero: bool, var: &str) -> String {
    if zero && !coeff.contains("O(") {
        return "0".into();
    }
    if coeff == "1" {
        return format!("d{var}");
    }
    let simple = !coeff.contains(' ') && !coeff.contains('/');
    if simple {
        format!("{coeff} d{var}")
    } else {
        format!("({coeff}) d{var}")
    }
}

impl fmt::Display for LocalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("t"))
    }
}

impl fmt::Debug for LocalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("t"))
    }
}

impl fmt::Display for GlobalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("t"))
    }
}

impl fmt::Debug for GlobalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Fq;

    #[test]
    fn residues() {
        let f5 = Fq::prime(5).unwrap();
        assert_eq!(LocalForm::dlog_t(f5).residue().unwrap(), f5.one());
        assert!(Form::new(LaurentSeries::constant(f5.one()))
            .residue()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn exact_forms_have_no_residue() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for p in [2, 3, 5] {
            let f = Fq::prime(p).unwrap();
            for _ in 0..50 {
                let s = LaurentSeries::random(f, -6, 10, &mut rng);
                assert!(LocalForm::exact(&s).residue().unwrap().is_zero());
            }
        }
    }

    #[test]
    fn dlog_of_unit() {
        let f3 = Fq::prime(3).unwrap();
        let u = LaurentSeries::from_terms(f3, &[(0, f3.one()), (1, f3.one())]);
        let w = LocalForm::dlog(&u, 10).unwrap();
        // d log(1+t) = 1 - t + t^2 - ...
        assert_eq!(w.coeff().coeff(0).unwrap(), f3.one());
        assert_eq!(w.coeff().coeff(1).unwrap(), -f3.one());
        assert_eq!(w.coeff().prec(), 10);
    }

    #[test]
    fn display() {
        let f3 = Fq::prime(3).unwrap();
        assert_eq!(LocalForm::dlog_t(f3).to_string(), "t^-1 dt");
        let g = GlobalForm::new(RationalFunction::t_power(f3, -1));
        assert_eq!(g.to_string(), "(1/t) dt");
    }
}
