//! Affine patches over K = F_q(t), absolute one-forms, pullbacks along local
//! points and the Brauer–Manin pairing for differential Brauer classes.

mod legendre;
mod mpoly;

pub use legendre::{
    legendre_check, legendre_series_point, LegendreReport, QuadElem, LEGENDRE_SERIES_PREC,
};
pub use mpoly::{KPoly, MFrac, MPoly};

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cartier::cartier_pow;
use crate::error::{Error, Result};
use crate::ff::Fq;
use crate::global::{local_expand, AdelicForm, DefaultForm, Place, PlaceKind};
use crate::series::{
    GlobalForm, LaurentSeries, LocalForm, RationalFunction, DEFAULT_PRECISION, EXACT,
};

/// Number of extra places at which the default point is spot-checked.
pub const SPOT_CHECKS: usize = 3;

/// A closed subscheme of affine space over K cut out by `relations`.
#[derive(Clone, Debug)]
pub struct AffinePatch {
    field: Fq,
    coords: Vec<String>,
    relations: Vec<KPoly>,
}

impl AffinePatch {
    pub fn new(field: Fq, coords: Vec<String>, relations: Vec<KPoly>) -> Result<AffinePatch> {
        if coords.is_empty() {
            return Err(Error::Invalid("a patch needs at least one coordinate".into()));
        }
        if coords.iter().any(|c| c == "t" || c.starts_with('d')) {
            return Err(Error::Invalid(
                "coordinate names may not be t or start with d".into(),
            ));
        }
        if relations.iter().any(|r| r.nvars() != coords.len()) {
            return Err(Error::Invalid("relation arity differs from the patch".into()));
        }
        Ok(AffinePatch {
            field,
            coords,
            relations,
        })
    }

    /// `A^1` with coordinate `x`.
    pub fn affine_line(field: Fq) -> AffinePatch {
        AffinePatch::new(field, vec!["x".into()], Vec::new()).expect("valid patch")
    }

    /// `y^2 = x(x - 1)(x - t)`.
    pub fn legendre(field: Fq) -> AffinePatch {
        let one = RationalFunction::one(field);
        let x = KPoly::var(0, 2, one.clone());
        let y = KPoly::var(1, 2, one.clone());
        let c = |r: RationalFunction| KPoly::constant(r, 2);
        let p = x
            .mul(&x.sub(&c(one.clone())))
            .mul(&x.sub(&c(RationalFunction::t(field))));
        let rel = y.mul(&y).sub(&p);
        AffinePatch::new(field, vec!["x".into(), "y".into()], vec![rel]).expect("valid patch")
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn relations(&self) -> &[KPoly] {
        &self.relations
    }

    /// Checks that every relation vanishes at a K-point.
    pub fn check_global(&self, values: &[RationalFunction]) -> Result<()> {
        self.check_arity(values.len())?;
        let zero = RationalFunction::zero(self.field);
        for (index, r) in self.relations.iter().enumerate() {
            let v = r.eval(values, &zero, |c| c.clone());
            if !v.is_zero() {
                return Err(Error::RelationViolation {
                    index,
                    valuation: None,
                });
            }
        }
        Ok(())
    }

    /// Checks that every relation vanishes at a local point to its precision.
    pub fn check_local(&self, point: &LocalPoint) -> Result<()> {
        self.check_arity(point.coords.len())?;
        for (index, r) in self.relations.iter().enumerate() {
            let v = eval_local_poly(r, point)?;
            if !v.is_zero() {
                return Err(Error::RelationViolation {
                    index,
                    valuation: v.valuation(),
                });
            }
        }
        Ok(())
    }

    fn check_arity(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::Invalid(format!(
                "point has {n} coordinates, patch has {}",
                self.dim()
            )));
        }
        Ok(())
    }
}

/// `sum_i a_i dx_i + b dt` on a patch.
#[derive(Clone, Debug)]
pub struct AbsoluteForm {
    patch: AffinePatch,
    dx: Vec<MFrac>,
    dt: MFrac,
}

impl AbsoluteForm {
    pub fn new(patch: &AffinePatch, dx: Vec<MFrac>, dt: MFrac) -> Result<AbsoluteForm> {
        let n = patch.dim();
        if dx.len() != n || dx.iter().chain([&dt]).any(|f| f.nvars() != n) {
            return Err(Error::Invalid("form arity differs from the patch".into()));
        }
        Ok(AbsoluteForm {
            patch: patch.clone(),
            dx,
            dt,
        })
    }

    pub fn zero(patch: &AffinePatch) -> AbsoluteForm {
        let z = MFrac::zero(patch.field, patch.dim());
        AbsoluteForm {
            patch: patch.clone(),
            dx: vec![z.clone(); patch.dim()],
            dt: z,
        }
    }

    /// `dt`.
    pub fn dt(patch: &AffinePatch) -> AbsoluteForm {
        let mut w = AbsoluteForm::zero(patch);
        w.dt = MFrac::constant(RationalFunction::one(patch.field), patch.dim());
        w
    }

    /// `dx_i`.
    pub fn dx(patch: &AffinePatch, i: usize) -> AbsoluteForm {
        let mut w = AbsoluteForm::zero(patch);
        w.dx[i] = MFrac::constant(RationalFunction::one(patch.field), patch.dim());
        w
    }

    /// The absolute differential `df = sum_i f_(x_i) dx_i + f_t dt`.
    pub fn exterior_d(patch: &AffinePatch, f: &MFrac) -> AbsoluteForm {
        AbsoluteForm {
            patch: patch.clone(),
            dx: (0..patch.dim()).map(|i| f.partial(i)).collect(),
            dt: f.t_partial(),
        }
    }

    /// `D_n(f_0, ..., f_{n-1}) = sum_j f_j^(p^(n-1-j) - 1) df_j`.
    pub fn d_n(patch: &AffinePatch, f: &[MFrac]) -> Result<AbsoluteForm> {
        let n = f.len();
        let p = patch.field.p() as i64;
        let mut acc = AbsoluteForm::zero(patch);
        for (j, fj) in f.iter().enumerate() {
            let e = p.pow((n - 1 - j) as u32) - 1;
            let w = AbsoluteForm::exterior_d(patch, fj).scale(&fj.powi(e)?);
            acc = acc.add(&w);
        }
        Ok(acc)
    }

    pub fn patch(&self) -> &AffinePatch {
        &self.patch
    }

    pub fn dx_coeffs(&self) -> &[MFrac] {
        &self.dx
    }

    pub fn dt_coeff(&self) -> &MFrac {
        &self.dt
    }

    pub fn add(&self, o: &AbsoluteForm) -> AbsoluteForm {
        AbsoluteForm {
            patch: self.patch.clone(),
            dx: self.dx.iter().zip(&o.dx).map(|(a, b)| a.add(b)).collect(),
            dt: self.dt.add(&o.dt),
        }
    }

    pub fn sub(&self, o: &AbsoluteForm) -> AbsoluteForm {
        self.add(&o.scale(&MFrac::constant(
            -RationalFunction::one(self.patch.field),
            self.patch.dim(),
        )))
    }

    pub fn scale(&self, g: &MFrac) -> AbsoluteForm {
        AbsoluteForm {
            patch: self.patch.clone(),
            dx: self.dx.iter().map(|a| a.mul(g)).collect(),
            dt: self.dt.mul(g),
        }
    }

    /// Exact equality of coefficients.
    pub fn equals(&self, o: &AbsoluteForm) -> bool {
        self.dt.equals(&o.dt) && self.dx.iter().zip(&o.dx).all(|(a, b)| a.equals(b))
    }
}

impl fmt::Display for AbsoluteForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = &self.patch.coords;
        let mut parts = Vec::new();
        for (c, name) in self.dx.iter().zip(names) {
            if !c.is_zero() {
                parts.push(format!("({}) d{name}", c.fmt_with(names)));
            }
        }
        if !self.dt.is_zero() {
            parts.push(format!("({}) dt", self.dt.fmt_with(names)));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A point of the patch over the completion at `place`, with coordinates in
/// the local variable.
#[derive(Clone, Debug)]
pub struct LocalPoint {
    place: Place,
    coords: Vec<LaurentSeries>,
}

impl LocalPoint {
    pub fn new(place: Place, coords: Vec<LaurentSeries>) -> Result<LocalPoint> {
        if coords.iter().any(|c| c.field() != place.residue_field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(LocalPoint { place, coords })
    }

    /// The expansion of a K-point at `place`.
    pub fn from_global(place: Place, values: &[RationalFunction], prec: i64) -> Result<LocalPoint> {
        let coords = values
            .iter()
            .map(|v| local_expand(v, &place, prec))
            .collect::<Result<_>>()?;
        LocalPoint::new(place, coords)
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn coords(&self) -> &[LaurentSeries] {
        &self.coords
    }

    /// The shared precision of the coordinates (working precision when all
    /// are exact).
    pub fn precision(&self) -> i64 {
        let p = self.coords.iter().map(|c| c.prec()).min().unwrap_or(EXACT);
        if p == EXACT {
            DEFAULT_PRECISION
        } else {
            p
        }
    }
}

/// Local points at finitely many places and a K-point elsewhere.
#[derive(Clone, Debug)]
pub struct AdelicPoint {
    support: Vec<LocalPoint>,
    default: Vec<RationalFunction>,
}

impl AdelicPoint {
    pub fn new(default: Vec<RationalFunction>) -> AdelicPoint {
        AdelicPoint {
            support: Vec::new(),
            default,
        }
    }

    /// The diagonal image of a K-point, listed at `places`.
    pub fn diagonal(default: Vec<RationalFunction>, places: &[Place], prec: i64) -> Result<AdelicPoint> {
        let mut a = AdelicPoint::new(default.clone());
        for v in places {
            a.set(LocalPoint::from_global(v.clone(), &default, prec)?);
        }
        Ok(a)
    }

    pub fn set(&mut self, point: LocalPoint) {
        match self.support.iter_mut().find(|q| q.place == point.place) {
            Some(slot) => *slot = point,
            None => self.support.push(point),
        }
    }

    pub fn with(mut self, point: LocalPoint) -> AdelicPoint {
        self.set(point);
        self
    }

    pub fn support(&self) -> &[LocalPoint] {
        &self.support
    }

    pub fn default_point(&self) -> &[RationalFunction] {
        &self.default
    }
}

/// `t` as a series in the local variable at `v`.
pub fn local_t(v: &Place) -> LaurentSeries {
    let f = v.residue_field();
    match v.kind() {
        PlaceKind::Finite(_) => LaurentSeries::from_terms(f, &[(0, v.theta()), (1, f.one())]),
        PlaceKind::Infinity => LaurentSeries::monomial(f.one(), -1),
    }
}

/// `dt` divided by the differential of the local variable.
pub fn dt_over_dlocal(v: &Place) -> LaurentSeries {
    let f = v.residue_field();
    match v.kind() {
        PlaceKind::Finite(_) => LaurentSeries::constant(f.one()),
        PlaceKind::Infinity => LaurentSeries::monomial(-f.one(), -2),
    }
}

fn eval_local_poly(p: &KPoly, point: &LocalPoint) -> Result<LaurentSeries> {
    let field = point.place.residue_field();
    let target = point.precision();
    let mut acc = LaurentSeries::exact_zero(field);
    for (e, c) in p.terms() {
        let mut mono = LaurentSeries::constant(field.one());
        for (x, &k) in point.coords.iter().zip(e) {
            if k > 0 {
                mono = &mono * &x.pow(k as u64);
            }
        }
        let vm = mono.valuation().unwrap_or(mono.prec());
        let vc = point.place.order_of(c).expect("stored coefficients are nonzero");
        let cap = mono.prec().min(target).saturating_add(vc).saturating_sub(vm);
        let cv = local_expand(c, &point.place, cap.max(vc + 1))?;
        acc = &acc + &(&cv * &mono);
    }
    if acc.is_exact() {
        acc = acc.truncate(target);
    }
    Ok(acc)
}

fn eval_local(f: &MFrac, point: &LocalPoint) -> Result<LaurentSeries> {
    let n = eval_local_poly(f.num(), point)?;
    if f.as_poly().is_some() {
        return Ok(n);
    }
    let d = eval_local_poly(f.den(), point)?;
    if d.is_zero() {
        return Err(Error::PrecisionLoss(
            "denominator vanishes to the precision of the point".into(),
        ));
    }
    n.div(&d, point.precision())
}

/// `(b(P) dt/dx_v + sum_i a_i(P) dP_i/dx_v) dx_v` in the local variable.
pub fn pullback(omega: &AbsoluteForm, point: &LocalPoint) -> Result<LocalForm> {
    omega.patch.check_local(point)?;
    let v = &point.place;
    let mut acc = &eval_local(&omega.dt, point)? * &dt_over_dlocal(v);
    for (a, x) in omega.dx.iter().zip(&point.coords) {
        if a.is_zero() {
            continue;
        }
        acc = &acc + &(&eval_local(a, point)? * &x.derivative());
    }
    Ok(LocalForm::new(acc))
}

/// The pullback along a K-point, a global rational form.
pub fn pullback_global(omega: &AbsoluteForm, values: &[RationalFunction]) -> Result<GlobalForm> {
    omega.patch.check_global(values)?;
    let mut acc = omega.dt.eval_global(values)?;
    for (a, x) in omega.dx.iter().zip(values) {
        if a.is_zero() {
            continue;
        }
        acc = &acc + &(&a.eval_global(values)? * &x.derivative());
    }
    Ok(GlobalForm::new(acc))
}

/// The adelic form `(C^n(omega|_{x_v}))_v`, with the default point supplying
/// the global form `C^n(omega|_{x_0})` at unlisted places.
pub fn cn_adelic(omega: &AbsoluteForm, point: &AdelicPoint, n: usize) -> Result<AdelicForm> {
    let field = omega.patch.field;
    let w0 = cartier_pow(&pullback_global(omega, &point.default)?, n)?;
    let mut a = AdelicForm::new(field, DefaultForm::Global(w0))?;
    for lp in &point.support {
        let w = cartier_pow(&pullback(omega, lp)?, n)?;
        a.set(lp.place.clone(), w)?;
    }
    Ok(a)
}

/// `sum_v Tr Res(t_mult C^n(omega|_{x_v}))` in F_p.
pub fn bm_pairing(
    omega: &AbsoluteForm,
    point: &AdelicPoint,
    n: usize,
    t_mult: &RationalFunction,
) -> Result<u32> {
    cn_adelic(omega, point, n)?.traced_sum(t_mult)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Theorem1Verdict {
    /// All trials vanished and `global_form` reproduces `C^n` of every
    /// local pullback.
    UnobstructedEvidence { global_form: GlobalForm, trials: usize },
    /// A trial multiplier with nonzero pairing: a proof of obstruction.
    Obstructed { witness: RationalFunction, value: u32 },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub verdict: Theorem1Verdict,
    /// Extra places where the default point was checked to be integral.
    pub spot_checked: Vec<Place>,
}

/// Decides whether `[omega]` of level `n` obstructs `point`, against the
/// given trial multipliers.
pub fn check_theorem1(
    omega: &AbsoluteForm,
    point: &AdelicPoint,
    n: usize,
    trials: &[RationalFunction],
    seed: u64,
) -> Result<Theorem1Report> {
    let field = omega.patch.field;
    let spot_checked = spot_check_places(point, field, seed);
    for v in &spot_checked {
        if point
            .default
            .iter()
            .any(|x| v.order_of(x).is_some_and(|o| o < 0))
        {
            return Ok(Theorem1Report {
                verdict: Theorem1Verdict::Inconclusive {
                    reason: format!("default point is not integral at {v}"),
                },
                spot_checked,
            });
        }
    }
    let a = cn_adelic(omega, point, n)?;
    for m in trials {
        let value = a.traced_sum(m)?;
        if value != 0 {
            return Ok(Theorem1Report {
                verdict: Theorem1Verdict::Obstructed {
                    witness: m.clone(),
                    value,
                },
                spot_checked,
            });
        }
    }
    let verdict = if a.support().is_empty() {
        match a.default_form() {
            DefaultForm::Global(w) => Theorem1Verdict::UnobstructedEvidence {
                global_form: w.clone(),
                trials: trials.len(),
            },
            DefaultForm::Zero => unreachable!("cn_adelic sets a global default"),
        }
    } else {
        match a.reconstruct() {
            Some(w) => Theorem1Verdict::UnobstructedEvidence {
                global_form: w,
                trials: trials.len(),
            },
            None => Theorem1Verdict::Inconclusive {
                reason: "all trials vanished but no global form reproduces the local data".into(),
            },
        }
    };
    Ok(Theorem1Report {
        verdict,
        spot_checked,
    })
}

fn spot_check_places(point: &AdelicPoint, field: Fq, seed: u64) -> Vec<Place> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Place> = Vec::new();
    let mut attempts = 0;
    while out.len() < SPOT_CHECKS && attempts < 100 {
        attempts += 1;
        let v = Place::random(field, 2, &mut rng);
        if out.contains(&v) || point.support.iter().any(|q| q.place == v) {
            continue;
        }
        out.push(v);
    }
    out
}

impl fmt::Display for Theorem1Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theorem1Verdict::UnobstructedEvidence { global_form, trials } => write!(
                f,
                "unobstructed on {trials} trials; global form {global_form}"
            ),
            Theorem1Verdict::Obstructed { witness, value } => {
                write!(f, "obstructed: multiplier {witness} pairs to {value}")
            }
            Theorem1Verdict::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}

/// The regression fixture over F_3: `omega = dx` on `A^1`, the point
/// `x = sum_i t^(2^i)` at the place `(t)` and `x = 0` elsewhere.
pub fn obstruction_fixture(prec: i64) -> (AbsoluteForm, AdelicPoint) {
    let field = Fq::prime(3).expect("F_3");
    let patch = AffinePatch::affine_line(field);
    let omega = AbsoluteForm::dx(&patch, 0);
    let mut terms = Vec::new();
    let mut e = 1i64;
    while e < prec {
        terms.push((e, field.one()));
        e *= 2;
    }
    let x = LaurentSeries::from_terms(field, &terms).truncate(prec);
    let place = Place::at(field.zero());
    let point = AdelicPoint::new(vec![RationalFunction::zero(field)])
        .with(LocalPoint::new(place, vec![x]).expect("same field"));
    (omega, point)
}
