//! Places of F_q(t), completions, residues and adelic forms.

mod adelic;
mod reconstruct;

pub use adelic::{tate_global_test, AdelicForm, DefaultForm, TateVerdict, TrialFamily};
pub use reconstruct::rational_reconstruct;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ff::{Embedding, Fq, FqElem};
use crate::poly::Poly;
use crate::series::{expand_quotient, GlobalForm, LaurentSeries, LocalForm, RationalFunction};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PlaceKind {
    /// A monic irreducible polynomial in t.
    Finite(Poly),
    Infinity,
}

/// A place of F_q(t) together with its residue field `F(v)` and the chosen
/// root `theta` of `pi` in `F(v)`. Completions are expanded in `t - theta`
/// (finite places) or `u = 1/t` (infinity).
#[derive(Clone)]
pub struct Place {
    base: Fq,
    kind: PlaceKind,
    residue: Fq,
    theta: FqElem,
    embedding: Arc<Embedding>,
}

impl PartialEq for Place {
    fn eq(&self, other: &Place) -> bool {
        self.base == other.base && self.kind == other.kind
    }
}

impl Eq for Place {}

impl Hash for Place {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
    }
}

impl Place {
    pub fn finite(pi: Poly) -> Result<Place> {
        let base = pi.field();
        if pi.deg() < 1 || !pi.is_monic() || !pi.is_irreducible() {
            return Err(Error::Invalid(format!(
                "place polynomial {pi} must be monic irreducible"
            )));
        }
        let d = pi.deg() as usize;
        let residue = if d == 1 {
            base
        } else {
            Fq::canonical(base.p(), base.k() * d, "z")?
        };
        let embedding = Embedding::new(base, residue)?;
        let lifted = pi.map(residue, |c| embedding.apply(c));
        let theta = *lifted.roots().first().ok_or_else(|| {
            Error::ExpansionFailure(format!("{pi} has no root in its residue field"))
        })?;
        Ok(Place {
            base,
            kind: PlaceKind::Finite(pi),
            residue,
            theta,
            embedding,
        })
    }

    /// The degree-one place `t = a`.
    pub fn at(a: FqElem) -> Place {
        let pi = Poly::from_coeffs(a.field(), vec![-a, a.field().one()]);
        Place::finite(pi).expect("linear polynomials are irreducible")
    }

    pub fn infinity(base: Fq) -> Place {
        Place {
            base,
            kind: PlaceKind::Infinity,
            residue: base,
            theta: base.zero(),
            embedding: Embedding::new(base, base).expect("identity embedding"),
        }
    }

    /// A random finite place of degree `1..=max_deg`.
    pub fn random<R: Rng + ?Sized>(base: Fq, max_deg: usize, rng: &mut R) -> Place {
        loop {
            let d = rng.random_range(1..=max_deg.max(1));
            let mut c: Vec<FqElem> = (0..d)
                .map(|_| base.from_encoding(rng.random_range(0..base.order())))
                .collect();
            c.push(base.one());
            let pi = Poly::from_coeffs(base, c);
            if pi.is_irreducible() {
                return Place::finite(pi).expect("irreducible");
            }
        }
    }

    pub fn base_field(&self) -> Fq {
        self.base
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }

    pub fn is_infinity(&self) -> bool {
        self.kind == PlaceKind::Infinity
    }

    pub fn degree(&self) -> usize {
        match &self.kind {
            PlaceKind::Finite(pi) => pi.deg() as usize,
            PlaceKind::Infinity => 1,
        }
    }

    pub fn residue_field(&self) -> Fq {
        self.residue
    }

    pub fn theta(&self) -> FqElem {
        self.theta
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// `ord_v(r)`, `None` for zero.
    pub fn order_of(&self, r: &RationalFunction) -> Option<i64> {
        if r.is_zero() {
            return None;
        }
        Some(match &self.kind {
            PlaceKind::Finite(pi) => multiplicity(r.num(), pi) - multiplicity(r.den(), pi),
            PlaceKind::Infinity => r.den().deg() - r.num().deg(),
        })
    }

    /// The local variable name used when printing completions.
    pub fn local_var(&self) -> &'static str {
        match self.kind {
            PlaceKind::Finite(_) => "s",
            PlaceKind::Infinity => "u",
        }
    }

    fn lift(&self, p: &Poly) -> Poly {
        p.map(self.residue, |c| self.embedding.apply(c))
    }
}

fn multiplicity(f: &Poly, pi: &Poly) -> i64 {
    let mut f = f.clone();
    let mut m = 0;
    loop {
        let (q, r) = f.div_rem(pi);
        if !r.is_zero() {
            return m;
        }
        f = q;
        m += 1;
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Finite(pi) => write!(f, "{}", pi.fmt_with("t")),
            PlaceKind::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({self})")
    }
}

/// Expansion of `r` in the completion at `v`, known modulo `x^prec` where
/// `x = t - theta` or `x = 1/t`.
pub fn local_expand(r: &RationalFunction, v: &Place, prec: i64) -> Result<LaurentSeries> {
    if r.field() != v.base {
        return Err(Error::FieldMismatch);
    }
    match &v.kind {
        PlaceKind::Finite(_) => {
            let num = v.lift(r.num()).taylor_shift(v.theta);
            let den = v.lift(r.den()).taylor_shift(v.theta);
            expand_quotient(&num, &den, prec)
        }
        PlaceKind::Infinity => {
            if r.is_zero() {
                return Ok(LaurentSeries::zero(v.residue, prec));
            }
            let dn = r.num().deg();
            let dd = r.den().deg();
            let num = r.num().reversal(dn as usize);
            let den = r.den().reversal(dd as usize);
            let e = dd - dn;
            Ok(expand_quotient(&num, &den, prec - e)?.shift(e))
        }
    }
}

/// The local form of `omega` at `v`, known modulo `x^prec`. At infinity
/// `f(t) dt = -u^-2 f(1/u) du`.
pub fn local_form(omega: &GlobalForm, v: &Place, prec: i64) -> Result<LocalForm> {
    match v.kind {
        PlaceKind::Finite(_) => Ok(LocalForm::new(local_expand(omega.coeff(), v, prec)?)),
        PlaceKind::Infinity => {
            let s = local_expand(omega.coeff(), v, prec + 2)?;
            Ok(LocalForm::new(-&s.shift(-2)))
        }
    }
}

/// `Res_v(omega)` in `F(v)`.
pub fn residue_at(omega: &GlobalForm, v: &Place) -> Result<FqElem> {
    local_form(omega, v, 0)?.residue()
}

/// The places where `f dt` may have a pole: factors of the denominator and
/// infinity.
pub fn pole_places(f: &RationalFunction) -> Vec<Place> {
    let mut places: Vec<Place> = f
        .den()
        .factor()
        .into_iter()
        .map(|(pi, _)| Place::finite(pi).expect("factors are monic irreducible"))
        .collect();
    places.push(Place::infinity(f.field()));
    places
}

/// `sum_v Tr_{F(v)/F_q} Res_v(omega)`, which vanishes for every rational form.
pub fn residue_sum(omega: &GlobalForm) -> Result<FqElem> {
    let field = omega.coeff().field();
    let mut acc = field.zero();
    for v in pole_places(omega.coeff()) {
        acc += v.embedding.rel_trace(residue_at(omega, &v)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::embed;

    fn rf(f: Fq, num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(f, num), Poly::from_ints(f, den)).unwrap()
    }

    #[test]
    fn expansion_examples() {
        let f3 = Fq::prime(3).unwrap();
        let t0 = Place::at(f3.zero());
        let s = local_expand(&RationalFunction::t(f3), &t0, 3).unwrap();
        assert_eq!(s, LaurentSeries::new(f3, 1, vec![f3.one()], 3));
        let v = Place::at(f3.one());
        let s = local_expand(&rf(f3, &[1], &[-1, 1]), &v, 5).unwrap();
        assert_eq!(s, LaurentSeries::new(f3, -1, vec![f3.one()], 5));
        let geo = local_expand(&rf(f3, &[1], &[1, -1]), &t0, 3).unwrap();
        assert_eq!(geo, LaurentSeries::new(f3, 0, vec![f3.one(); 3], 3));
        let inf = Place::infinity(f3);
        let s = local_expand(&rf(f3, &[0, 0, 1], &[1]), &inf, 4).unwrap();
        assert_eq!(s, LaurentSeries::new(f3, -2, vec![f3.one()], 4));
        assert_eq!(inf.order_of(&rf(f3, &[0, 0, 1], &[1])), Some(-2));
        assert_eq!(t0.order_of(&rf(f3, &[0, 0, 1], &[1, 1])), Some(2));
    }

    #[test]
    fn residue_examples() {
        let f = Fq::prime(5).unwrap();
        let dlog = GlobalForm::new(RationalFunction::t_power(f, -1));
        assert_eq!(residue_at(&dlog, &Place::at(f.zero())).unwrap(), f.one());
        assert_eq!(residue_at(&dlog, &Place::infinity(f)).unwrap(), -f.one());
        assert!(residue_at(&dlog, &Place::at(f.one())).unwrap().is_zero());
        assert!(residue_sum(&dlog).unwrap().is_zero());
        let dt = GlobalForm::new(RationalFunction::one(f));
        assert!(residue_at(&dt, &Place::infinity(f)).unwrap().is_zero());

        let f2 = Fq::prime(2).unwrap();
        let v = Place::finite(Poly::from_ints(f2, &[1, 1, 1])).unwrap();
        assert_eq!(v.residue_field().k(), 2);
        let w = GlobalForm::new(rf(f2, &[1], &[1, 1, 1]));
        assert_eq!(residue_at(&w, &v).unwrap(), v.residue_field().one());
        assert!(residue_sum(&w).unwrap().is_zero());
    }

    #[test]
    fn residue_commutes_with_trace_in_towers() {
        // Res at a degree-2 place over F_2 equals the sum over the two
        // conjugate degree-1 places of the same form over F_4.
        let f2 = Fq::prime(2).unwrap();
        let f4 = Fq::new(2, 2).unwrap();
        let v = Place::finite(Poly::from_ints(f2, &[1, 1, 1])).unwrap();
        for num in [[1i64, 0], [0, 1], [1, 1]] {
            let w = GlobalForm::new(rf(f2, &num, &[1, 1, 1]));
            let r = v.embedding().rel_trace(residue_at(&w, &v).unwrap());
            let w4 = GlobalForm::new(w.coeff().map(f4, |c| embed(c, f4).unwrap()));
            let pi4 = Poly::from_ints(f4, &[1, 1, 1]);
            let mut sum = f4.zero();
            for a in pi4.roots() {
                sum += residue_at(&w4, &Place::at(a)).unwrap();
            }
            assert_eq!(embed(r, f4).unwrap(), sum);
        }
    }

    #[test]
    fn rejects_reducible() {
        let f = Fq::prime(2).unwrap();
        assert!(Place::finite(Poly::from_ints(f, &[1, 0, 1])).is_err());
    }
}
