//! The Legendre family `y^2 = x(x - 1)(x - t)` and its cocycle identity.

use super::{pullback, AbsoluteForm, AffinePatch, KPoly, LocalPoint, MFrac};
use crate::error::{Error, Result};
use crate::ff::{Fq, FqElem};
use crate::global::Place;
use crate::series::{LaurentSeries, RationalFunction};

/// `a + b y` in `K(x)[y]/(y^2 - P)`, with `a, b` in `K(x)`.
#[derive(Clone, Debug)]
pub struct QuadElem {
    a: MFrac,
    b: MFrac,
    p: MFrac,
}

impl QuadElem {
    pub fn new(a: MFrac, b: MFrac, p: &MFrac) -> QuadElem {
        QuadElem { a, b, p: p.clone() }
    }

    pub fn from_base(a: MFrac, p: &MFrac) -> QuadElem {
        let zero = MFrac::zero(a.field(), a.nvars());
        QuadElem::new(a, zero, p)
    }

    pub fn y(p: &MFrac) -> QuadElem {
        let zero = MFrac::zero(p.field(), p.nvars());
        let one = MFrac::constant(RationalFunction::one(p.field()), p.nvars());
        QuadElem::new(zero, one, p)
    }

    pub fn add(&self, o: &QuadElem) -> QuadElem {
        QuadElem::new(self.a.add(&o.a), self.b.add(&o.b), &self.p)
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem::new(self.a.neg(), self.b.neg(), &self.p)
    }

    pub fn sub(&self, o: &QuadElem) -> QuadElem {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QuadElem) -> QuadElem {
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&self.p));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        QuadElem::new(a, b, &self.p)
    }

    /// `(a - b y) / (a^2 - b^2 P)`.
    pub fn inv(&self) -> Result<QuadElem> {
        let norm = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&self.p));
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadElem::new(self.a.div(&norm)?, self.b.neg().div(&norm)?, &self.p))
    }

    pub fn div(&self, o: &QuadElem) -> Result<QuadElem> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn equals(&self, o: &QuadElem) -> bool {
        self.a.equals(&o.a) && self.b.equals(&o.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreReport {
    pub p: u32,
    /// `d(y^2 - P) = 0` reads `2y dy = P_x dx + P_t dt`.
    pub relation: bool,
    /// `dx/(2y) - dy/P_x = epsilon P_t/(2y P_x) dt` in the function field.
    pub identity: bool,
    pub epsilon: i32,
    /// Both sides pulled back along a series point agree on a common window.
    pub series_agree: bool,
    pub series_window: i64,
}

/// Series precision of the consistency check.
pub const LEGENDRE_SERIES_PREC: i64 = 32;

/// Verifies the Legendre cocycle identity symbolically and on a series point.
pub fn legendre_check(p: u32) -> Result<LegendreReport> {
    if p < 5 {
        return Err(Error::Invalid(format!("the Legendre check needs p >= 5, got {p}")));
    }
    let field = Fq::prime(p)?;
    let one = RationalFunction::one(field);
    let t = RationalFunction::t(field);

    // (i) on the patch in (x, y)
    let patch = AffinePatch::legendre(field);
    let rel = &patch.relations()[0];
    let two = RationalFunction::constant(field.from_int(2));
    let x2 = KPoly::var(0, 2, one.clone());
    let y2 = KPoly::var(1, 2, one.clone());
    let c2 = |r: &RationalFunction| KPoly::constant(r.clone(), 2);
    let big_p = x2.mul(&x2.sub(&c2(&one))).mul(&x2.sub(&c2(&t)));
    let relation = rel.partial(1) == y2.scale(&two)
        && rel.partial(0).neg() == big_p.partial(0)
        && rel.t_partial().neg() == big_p.t_partial();

    // (ii) in K(x)[y]/(y^2 - P), coordinates of forms in the basis (dx, dt)
    let x = KPoly::var(0, 1, one.clone());
    let c1 = |r: &RationalFunction| KPoly::constant(r.clone(), 1);
    let pp = x.mul(&x.sub(&c1(&one))).mul(&x.sub(&c1(&t)));
    let pm = MFrac::from_poly(pp.clone(), field);
    let px = QuadElem::from_base(MFrac::from_poly(pp.partial(0), field), &pm);
    let pt = QuadElem::from_base(MFrac::from_poly(pp.t_partial(), field), &pm);
    let y = QuadElem::y(&pm);
    let two_q = QuadElem::from_base(MFrac::constant(two, 1), &pm);
    let inv_2y = two_q.mul(&y).inv()?;
    // dy = (P_x dx + P_t dt) / (2y)
    let dy_dx = px.mul(&inv_2y);
    let dy_dt = pt.mul(&inv_2y);
    let lhs_dx = inv_2y.sub(&dy_dx.div(&px)?);
    let lhs_dt = dy_dt.div(&px)?.neg();
    let rhs = pt.div(&two_q.mul(&y).mul(&px))?;
    let epsilon = if lhs_dt.equals(&rhs) {
        1
    } else if lhs_dt.equals(&rhs.neg()) {
        -1
    } else {
        0
    };
    let identity = lhs_dx.is_zero() && epsilon != 0;

    // consistency on a series point at the place (t)
    let (series_agree, series_window) = if identity {
        series_consistency(&patch, epsilon)?
    } else {
        (false, 0)
    };
    Ok(LegendreReport {
        p,
        relation,
        identity,
        epsilon,
        series_agree,
        series_window,
    })
}

/// A point of the Legendre curve over F_p((s)) at the place `t = 0`:
/// `x = 2 + s`, `y` the square root of `x(x - 1)(x - s)` with `y(0)^2 = 4`.
pub fn legendre_series_point(field: Fq, prec: i64) -> Result<LocalPoint> {
    let place = Place::at(field.zero());
    let s = LaurentSeries::t(field);
    let x = &LaurentSeries::constant(field.from_int(2)) + &s;
    let one = LaurentSeries::constant(field.one());
    let rhs = &(&x * &(&x - &one)) * &(&x - &s);
    let y = series_sqrt(&rhs.truncate(prec), field.from_int(2))?;
    LocalPoint::new(place, vec![x, y])
}

fn series_consistency(patch: &AffinePatch, epsilon: i32) -> Result<(bool, i64)> {
    let field = patch.field();
    let point = legendre_series_point(field, LEGENDRE_SERIES_PREC + 2)?;
    let n = 2;
    let one = RationalFunction::one(field);
    let x = MFrac::var(0, field, n);
    let y = MFrac::var(1, field, n);
    let c = |r: RationalFunction| MFrac::constant(r, n);
    let pp = x
        .mul(&x.sub(&c(one.clone())))
        .mul(&x.sub(&c(RationalFunction::t(field))));
    let px = pp.partial(0);
    let pt = pp.t_partial();
    let two_y = y.mul(&c(RationalFunction::constant(field.from_int(2))));
    let lhs = AbsoluteForm::dx(patch, 0)
        .scale(&two_y.powi(-1)?)
        .sub(&AbsoluteForm::dx(patch, 1).scale(&px.powi(-1)?));
    let rhs = AbsoluteForm::dt(patch)
        .scale(&pt.div(&two_y.mul(&px))?)
        .scale(&c(RationalFunction::constant(field.from_int(epsilon as i64))));
    let l = pullback(&lhs, &point)?;
    let r = pullback(&rhs, &point)?;
    let window = l.coeff().prec().min(r.coeff().prec());
    Ok((l.coeff().agrees_with(r.coeff()), window))
}

/// The square root of a unit power series with the given constant term,
/// by the coefficient recursion `2 g_0 g_n = f_n - sum g_i g_(n-i)`.
fn series_sqrt(f: &LaurentSeries, g0: FqElem) -> Result<LaurentSeries> {
    let field = f.field();
    if f.valuation() != Some(0) || g0 * g0 != f.coeff(0)? {
        return Err(Error::Invalid("no square root with that constant term".into()));
    }
    let prec = f.prec();
    let inv = (g0 + g0).inv().ok_or(Error::DivisionByZero)?;
    let mut g: Vec<FqElem> = vec![g0];
    for k in 1..prec as usize {
        let mut s = f.coeff(k as i64)?;
        for i in 1..k {
            s -= g[i] * g[k - i];
        }
        g.push(s * inv);
    }
    Ok(LaurentSeries::new(field, 0, g, prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_identity() {
        let mut eps = Vec::new();
        for p in [5u32, 7, 11] {
            let r = legendre_check(p).unwrap();
            assert!(r.relation && r.identity && r.series_agree, "{r:?}");
            assert!(r.series_window >= LEGENDRE_SERIES_PREC);
            eps.push(r.epsilon);
        }
        assert!(eps.iter().all(|&e| e == eps[0]));
        assert!(legendre_check(3).is_err());
    }

    #[test]
    fn series_point_on_curve() {
        let f = Fq::prime(7).unwrap();
        let pt = legendre_series_point(f, 20).unwrap();
        AffinePatch::legendre(f).check_local(&pt).unwrap();
    }
}
