//! Evaluation of expressions in the series, rational and absolute-form
//! domains.

use super::expr::Expr;
use crate::bm::{AbsoluteForm, AffinePatch, KPoly, MFrac};
use crate::error::{Error, Result};
use crate::ff::{Fq, FqElem};
use crate::series::{GlobalForm, LaurentSeries, LocalForm, RationalFunction, EXACT};

/// A function or a one-form given by its coordinates in a fixed basis of
/// differentials.
#[derive(Clone, Debug)]
pub enum Val<F> {
    Fun(F),
    Form(Vec<F>),
}

pub trait Domain {
    type F: Clone;
    fn int(&self, n: u64) -> Self::F;
    fn ident(&self, name: &str) -> Option<Self::F>;
    /// Coordinates of `d<var>`.
    fn differential(&self, var: &str) -> Option<Vec<Self::F>>;
    fn add(&self, a: &Self::F, b: &Self::F) -> Self::F;
    fn mul(&self, a: &Self::F, b: &Self::F) -> Self::F;
    fn neg(&self, a: &Self::F) -> Self::F;
    fn div(&self, a: &Self::F, b: &Self::F) -> Result<Self::F>;
    fn powi(&self, a: &Self::F, n: i64) -> Result<Self::F>;
    fn big_o(&self, arg: &Expr) -> Result<Self::F>;
    fn d(&self, f: &Self::F) -> Vec<Self::F>;
    fn is_zero(&self, f: &Self::F) -> bool;
}

fn field_int(field: Fq, n: u64) -> FqElem {
    field.from_int((n % field.p() as u64) as i64)
}

fn generator(field: Fq, name: &str) -> Option<FqElem> {
    (field.k() > 1 && field.spec().generator_name() == name).then(|| field.generator())
}

fn unknown(name: &str) -> Error {
    Error::Invalid(format!("unknown identifier {name}"))
}

pub fn eval<D: Domain>(dom: &D, e: &Expr) -> Result<Val<D::F>> {
    use Val::*;
    Ok(match e {
        Expr::Int(n) => Fun(dom.int(*n)),
        Expr::Ident(name) => {
            if let Some(v) = dom.ident(name) {
                Fun(v)
            } else if let Some(v) = name.strip_prefix('d').and_then(|r| dom.differential(r)) {
                Form(v)
            } else {
                return Err(unknown(name));
            }
        }
        Expr::Neg(a) => match eval(dom, a)? {
            Fun(f) => Fun(dom.neg(&f)),
            Form(v) => Form(v.iter().map(|c| dom.neg(c)).collect()),
        },
        Expr::Add(a, b) => add(dom, eval(dom, a)?, eval(dom, b)?)?,
        Expr::Sub(a, b) => {
            let nb = eval(dom, &Expr::Neg(b.clone()))?;
            add(dom, eval(dom, a)?, nb)?
        }
        Expr::Mul(a, b) => match (eval(dom, a)?, eval(dom, b)?) {
            (Fun(f), Fun(g)) => Fun(dom.mul(&f, &g)),
            (Fun(f), Form(v)) | (Form(v), Fun(f)) => {
                Form(v.iter().map(|c| dom.mul(&f, c)).collect())
            }
            (Form(_), Form(_)) => {
                return Err(Error::Invalid("product of two one-forms".into()))
            }
        },
        Expr::Div(a, b) => match (eval(dom, a)?, eval(dom, b)?) {
            (Fun(f), Fun(g)) => Fun(dom.div(&f, &g)?),
            (Form(v), Fun(g)) => Form(
                v.iter()
                    .map(|c| dom.div(c, &g))
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(Error::Invalid("division by a one-form".into())),
        },
        Expr::Pow(a, n) => match eval(dom, a)? {
            Fun(f) => Fun(dom.powi(&f, *n)?),
            Form(_) => return Err(Error::Invalid("power of a one-form".into())),
        },
        Expr::Call(name, a) => match name.as_str() {
            "O" => Fun(dom.big_o(a)?),
            "d" | "dlog" => {
                let Fun(f) = eval(dom, a)? else {
                    return Err(Error::Invalid(format!("{name} of a one-form")));
                };
                let df = dom.d(&f);
                if name == "d" {
                    Form(df)
                } else {
                    Form(df.iter().map(|c| dom.div(c, &f)).collect::<Result<_>>()?)
                }
            }
            _ => return Err(unknown(name)),
        },
    })
}

fn add<D: Domain>(dom: &D, a: Val<D::F>, b: Val<D::F>) -> Result<Val<D::F>> {
    use Val::*;
    Ok(match (a, b) {
        (Fun(f), Fun(g)) => Fun(dom.add(&f, &g)),
        (Form(v), Form(w)) => Form(v.iter().zip(&w).map(|(x, y)| dom.add(x, y)).collect()),
        // a zero function (such as a precision marker) added to a form
        (Fun(z), Form(v)) | (Form(v), Fun(z)) if dom.is_zero(&z) => {
            Form(v.iter().map(|c| dom.add(c, &z)).collect())
        }
        _ => return Err(Error::Invalid("sum of a function and a one-form".into())),
    })
}

/// Laurent series in `var`, inverses computed to `cap`.
pub struct SeriesDomain {
    pub field: Fq,
    pub var: String,
    pub cap: i64,
}

impl Domain for SeriesDomain {
    type F = LaurentSeries;
    fn int(&self, n: u64) -> LaurentSeries {
        LaurentSeries::constant(field_int(self.field, n))
    }
    fn ident(&self, name: &str) -> Option<LaurentSeries> {
        if name == self.var {
            return Some(LaurentSeries::t(self.field));
        }
        generator(self.field, name).map(LaurentSeries::constant)
    }
    fn differential(&self, var: &str) -> Option<Vec<LaurentSeries>> {
        (var == self.var).then(|| vec![LaurentSeries::constant(self.field.one())])
    }
    fn add(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        a + b
    }
    fn mul(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        a * b
    }
    fn neg(&self, a: &LaurentSeries) -> LaurentSeries {
        -a
    }
    fn div(&self, a: &LaurentSeries, b: &LaurentSeries) -> Result<LaurentSeries> {
        a.div(b, self.cap)
    }
    fn powi(&self, a: &LaurentSeries, n: i64) -> Result<LaurentSeries> {
        if n >= 0 {
            Ok(a.pow(n as u64))
        } else {
            Ok(a.inv(self.cap)?.pow(n.unsigned_abs()))
        }
    }
    fn big_o(&self, arg: &Expr) -> Result<LaurentSeries> {
        let n = match arg {
            Expr::Int(1) => 0,
            Expr::Ident(v) if *v == self.var => 1,
            Expr::Pow(b, n) if **b == Expr::Ident(self.var.clone()) => *n,
            _ => {
                return Err(Error::Invalid(format!(
                    "precision marker must read O({}^N)",
                    self.var
                )))
            }
        };
        Ok(LaurentSeries::zero(self.field, n))
    }
    fn d(&self, f: &LaurentSeries) -> Vec<LaurentSeries> {
        vec![f.derivative()]
    }
    fn is_zero(&self, f: &LaurentSeries) -> bool {
        f.is_zero()
    }
}

/// Exact rational functions in `t`.
pub struct RationalDomain {
    pub field: Fq,
}

impl Domain for RationalDomain {
    type F = RationalFunction;
    fn int(&self, n: u64) -> RationalFunction {
        RationalFunction::constant(field_int(self.field, n))
    }
    fn ident(&self, name: &str) -> Option<RationalFunction> {
        if name == "t" {
            return Some(RationalFunction::t(self.field));
        }
        generator(self.field, name).map(RationalFunction::constant)
    }
    fn differential(&self, var: &str) -> Option<Vec<RationalFunction>> {
        (var == "t").then(|| vec![RationalFunction::one(self.field)])
    }
    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a + b
    }
    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a * b
    }
    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        -a
    }
    fn div(&self, a: &RationalFunction, b: &RationalFunction) -> Result<RationalFunction> {
        a.checked_div(b)
    }
    fn powi(&self, a: &RationalFunction, n: i64) -> Result<RationalFunction> {
        a.powi(n)
    }
    fn big_o(&self, _: &Expr) -> Result<RationalFunction> {
        Err(Error::Invalid("precision markers are not allowed in exact input".into()))
    }
    fn d(&self, f: &RationalFunction) -> Vec<RationalFunction> {
        vec![f.derivative()]
    }
    fn is_zero(&self, f: &RationalFunction) -> bool {
        f.is_zero()
    }
}

/// Fractions in the patch coordinates over K; forms in the basis
/// `dx_1, ..., dx_d, dt`.
pub struct AbsoluteDomain<'a> {
    pub patch: &'a AffinePatch,
}

impl Domain for AbsoluteDomain<'_> {
    type F = MFrac;
    fn int(&self, n: u64) -> MFrac {
        let f = self.patch.field();
        MFrac::constant(RationalFunction::constant(field_int(f, n)), self.patch.dim())
    }
    fn ident(&self, name: &str) -> Option<MFrac> {
        let (f, n) = (self.patch.field(), self.patch.dim());
        if let Some(i) = self.patch.coords().iter().position(|c| c == name) {
            return Some(MFrac::var(i, f, n));
        }
        RationalDomain { field: f }
            .ident(name)
            .map(|r| MFrac::constant(r, n))
    }
    fn differential(&self, var: &str) -> Option<Vec<MFrac>> {
        let n = self.patch.dim();
        let idx = if var == "t" {
            n
        } else {
            self.patch.coords().iter().position(|c| c == var)?
        };
        let (f, one) = (self.patch.field(), RationalFunction::one(self.patch.field()));
        let mut v = vec![MFrac::zero(f, n); n + 1];
        v[idx] = MFrac::constant(one, n);
        Some(v)
    }
    fn add(&self, a: &MFrac, b: &MFrac) -> MFrac {
        a.add(b)
    }
    fn mul(&self, a: &MFrac, b: &MFrac) -> MFrac {
        a.mul(b)
    }
    fn neg(&self, a: &MFrac) -> MFrac {
        a.neg()
    }
    fn div(&self, a: &MFrac, b: &MFrac) -> Result<MFrac> {
        a.div(b)
    }
    fn powi(&self, a: &MFrac, n: i64) -> Result<MFrac> {
        a.powi(n)
    }
    fn big_o(&self, _: &Expr) -> Result<MFrac> {
        Err(Error::Invalid("precision markers are not allowed in forms on a patch".into()))
    }
    fn d(&self, f: &MFrac) -> Vec<MFrac> {
        let mut v: Vec<MFrac> = (0..self.patch.dim()).map(|i| f.partial(i)).collect();
        v.push(f.t_partial());
        v
    }
    fn is_zero(&self, f: &MFrac) -> bool {
        f.is_zero()
    }
}

fn expect_fun<F>(v: Val<F>) -> Result<F> {
    match v {
        Val::Fun(f) => Ok(f),
        Val::Form(_) => Err(Error::Invalid("expected a function, found a one-form".into())),
    }
}

fn expect_form<D: Domain>(dom: &D, v: Val<D::F>, dim: usize) -> Result<Vec<D::F>> {
    match v {
        Val::Form(c) => Ok(c),
        Val::Fun(f) if dom.is_zero(&f) => Ok(vec![f; dim]),
        Val::Fun(_) => Err(Error::Invalid("expected a one-form, found a function".into())),
    }
}

fn cap_exact(s: LaurentSeries, cap: i64) -> LaurentSeries {
    if s.prec() == EXACT {
        s.truncate(cap)
    } else {
        s
    }
}

/// A Laurent series in `var`; exact input is truncated to `cap`.
pub fn eval_series(e: &Expr, field: Fq, var: &str, cap: i64) -> Result<LaurentSeries> {
    let dom = SeriesDomain { field, var: var.into(), cap };
    Ok(cap_exact(expect_fun(eval(&dom, e)?)?, cap))
}

/// A local one-form `f d<var>`; exact input is truncated to `cap`.
pub fn eval_local_form(e: &Expr, field: Fq, var: &str, cap: i64) -> Result<LocalForm> {
    let dom = SeriesDomain { field, var: var.into(), cap };
    let v = eval(&dom, e)?;
    let c = expect_form(&dom, v, 1)?.remove(0);
    Ok(LocalForm::new(cap_exact(c, cap)))
}

pub fn eval_rational(e: &Expr, field: Fq) -> Result<RationalFunction> {
    expect_fun(eval(&RationalDomain { field }, e)?)
}

pub fn eval_global_form(e: &Expr, field: Fq) -> Result<GlobalForm> {
    let dom = RationalDomain { field };
    let v = eval(&dom, e)?;
    Ok(GlobalForm::new(expect_form(&dom, v, 1)?.remove(0)))
}

pub fn eval_absolute(e: &Expr, patch: &AffinePatch) -> Result<AbsoluteForm> {
    let dom = AbsoluteDomain { patch };
    let v = eval(&dom, e)?;
    let mut c = expect_form(&dom, v, patch.dim() + 1)?;
    let dt = c.pop().expect("dt component");
    AbsoluteForm::new(patch, c, dt)
}

/// A polynomial in the patch coordinates with coefficients in K.
pub fn eval_kpoly(e: &Expr, field: Fq, coords: &[String]) -> Result<KPoly> {
    let patch = AffinePatch::new(field, coords.to_vec(), Vec::new())?;
    let f = expect_fun(eval(&AbsoluteDomain { patch: &patch }, e)?)?;
    f.as_poly()
        .ok_or_else(|| Error::Invalid(format!("relation {e} is not a polynomial")))
}

/// Whether `e` mentions the global variable `t` (or `dt`).
pub fn mentions_t(e: &Expr) -> bool {
    match e {
        Expr::Ident(s) => s == "t" || s == "dt",
        Expr::Int(_) => false,
        Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => mentions_t(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            mentions_t(a) || mentions_t(b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::expr::parse;
    use super::*;

    #[test]
    fn series_literal() {
        let f = Fq::prime(5).unwrap();
        let s = eval_series(&parse("t^-1 + 2*t^3 + O(t^10)").unwrap(), f, "t", 64).unwrap();
        assert_eq!((s.lo(), s.prec()), (-1, 10));
        assert_eq!(s.coeff(3).unwrap(), f.from_int(2));
    }

    #[test]
    fn rational_form() {
        let f = Fq::prime(3).unwrap();
        let w = eval_global_form(&parse("(t^2+1)/(t^3-t) dt").unwrap(), f).unwrap();
        assert_eq!(w.coeff().to_string(), "(t^2 + 1)/(t^3 + 2*t)");
    }

    #[test]
    fn dlog_with_generator() {
        let f = Fq::parse("gf(2,2,w^2+w+1)").unwrap();
        let w = eval_local_form(&parse("dlog(t)*w").unwrap(), f, "t", 16).unwrap();
        let expect = LaurentSeries::monomial(f.generator(), -1);
        assert!(w.coeff().agrees_with(&expect));
        assert_eq!(w.coeff().prec(), 16);
    }

    #[test]
    fn absolute_forms() {
        let f = Fq::prime(5).unwrap();
        let patch = AffinePatch::legendre(f);
        let w = eval_absolute(&parse("dx/(2*y) + x*t*dt").unwrap(), &patch).unwrap();
        assert!(w.dx_coeffs()[1].is_zero());
        let dw = eval_absolute(&parse("d(x*y)").unwrap(), &patch).unwrap();
        let expect = eval_absolute(&parse("y*dx + x*dy").unwrap(), &patch).unwrap();
        assert!(dw.equals(&expect));
    }

    #[test]
    fn type_errors() {
        let f = Fq::prime(2).unwrap();
        assert!(eval_global_form(&parse("dt*dt").unwrap(), f).is_err());
        assert!(eval_global_form(&parse("t + dt").unwrap(), f).is_err());
        assert!(eval_rational(&parse("q").unwrap(), f).is_err());
        assert!(eval_rational(&parse("O(t^3)").unwrap(), f).is_err());
    }
}
