//! p-torsion Brauer classes of F_q((t)) through differential forms.

use std::fmt;
use std::ops::Add;

use crate::cartier::{bn_member, cartier, Certified};
use crate::error::{Error, Result};
use crate::ff::FqElem;
use crate::ring::DiffRing;
use crate::series::{Form, LaurentSeries, LocalForm, DEFAULT_PRECISION};
use crate::witt::{d_n, WittVector};

/// An element of `Br(F_q((t)))[p] = F_p`, normalized by `inv(dlog t) = Tr(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BrauerInv {
    pub value: u32,
    pub p: u32,
}

impl BrauerInv {
    pub fn zero(p: u32) -> BrauerInv {
        BrauerInv { value: 0, p }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl Add for BrauerInv {
    type Output = BrauerInv;
    fn add(self, rhs: BrauerInv) -> BrauerInv {
        assert_eq!(self.p, rhs.p, "invariants in different characteristics");
        BrauerInv {
            value: (self.value + rhs.value) % self.p,
            p: self.p,
        }
    }
}

impl fmt::Display for BrauerInv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Presentation data of the cyclic algebra `[f, g)`:
/// `x^p - x = f`, `y^p = g`, `xy = y(x + 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicAlgebraDesc {
    pub f: LaurentSeries,
    pub g: LaurentSeries,
}

impl fmt::Display for CyclicAlgebraDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.f, self.g)
    }
}

/// `Tr_{F_q/F_p}(Res(omega))`.
pub fn local_invariant(omega: &LocalForm) -> Result<BrauerInv> {
    let res = omega.residue()?;
    Ok(BrauerInv {
        value: res.trace(),
        p: res.field().p(),
    })
}

/// A solution of `y^p - y = c` in F_q((t)), or `None` when none exists.
///
/// Negative exponents are peeled from the bottom (each must be divisible by
/// p), the constant term goes through the finite-field solver, and the
/// positive part is `-sum_i c_+^(p^i)`. Exact inputs are worked to
/// [`DEFAULT_PRECISION`].
pub fn artin_schreier_series(c: &LaurentSeries) -> Result<Option<LaurentSeries>> {
    let field = c.field();
    let p = field.p() as i64;
    let mut rest = if c.is_exact() {
        c.truncate(DEFAULT_PRECISION.max(c.hi()))
    } else {
        c.clone()
    };
    let prec = rest.prec();
    let mut y = LaurentSeries::exact_zero(field);
    let budget = rest.lo().unsigned_abs() as usize + prec.unsigned_abs() as usize + 1;
    for _ in 0..budget {
        let Some(v) = rest.valuation() else { break };
        if v >= 0 {
            break;
        }
        if v % p != 0 {
            return Ok(None);
        }
        let z = LaurentSeries::monomial(rest.coeff(v)?.pth_root(), v / p);
        rest = &rest - &(&z.frobenius() - &z);
        y = &y + &z;
    }
    if rest.valuation().is_some_and(|v| v < 0) {
        return Ok(None);
    }
    if prec <= 0 {
        return Err(Error::PrecisionLoss(
            "constant term of the Artin-Schreier datum is unknown".into(),
        ));
    }
    let c0 = rest.coeff(0)?;
    let Some(y0) = c0.artin_schreier_solve() else {
        return Ok(None);
    };
    let y0s = LaurentSeries::constant(y0);
    rest = &rest - &(&y0s.frobenius() - &y0s);
    y = &y + &y0s;
    // positive part: y_+ = -(c + c^p + c^(p^2) + ...)
    let mut term = rest.clone();
    let mut acc = LaurentSeries::zero(field, prec);
    while let Some(v) = term.valuation() {
        if v >= prec {
            break;
        }
        acc = &acc - &term;
        term = term.frobenius();
    }
    Ok(Some((&y + &acc).truncate(prec)))
}

/// A form `w` with `(1 - C)(w) = omega`, or `None` when the invariant of
/// `omega` is nonzero.
///
/// With `C(omega) = a dlog t`, look for `w = omega + (z + a) dlog t`. Then
/// `(1 - C)(w) = omega` exactly when the part of `z + a` at exponents
/// divisible by p equals `z^p`, which is an Artin–Schreier system along the
/// chains `m, pm, p^2 m, ...`; only the chain through 0 imposes a condition,
/// namely the trace of `a_0 = Res(C omega)` must vanish.
pub fn solve_one_minus_c(omega: &LocalForm) -> Result<Option<LocalForm>> {
    let field = omega.coeff().field();
    let omega = if omega.coeff().is_exact() {
        Form::new(omega.coeff().truncate(DEFAULT_PRECISION.max(omega.coeff().hi())))
    } else {
        omega.clone()
    };
    let p = field.p() as i64;
    let a = cartier(&omega)?.into_coeff().shift(1);
    let pa = a.prec();
    if pa <= 0 {
        return Err(Error::PrecisionLoss(
            "residue of the Cartier image is unknown".into(),
        ));
    }
    let Some(z0) = a.coeff(0)?.artin_schreier_solve() else {
        return Ok(None);
    };
    // z_e for every exponent below pa; chains m', p m', p^2 m', ... with p | m'
    // excluded from the start set.
    let lo = a.lo().min(0);
    let width = (pa - lo) as usize;
    let mut z = vec![field.zero(); width];
    let idx = |e: i64| (e - lo) as usize;
    z[idx(0)] = z0;
    for start in lo..pa {
        if start == 0 || start % p == 0 {
            continue;
        }
        let mut chain = vec![start];
        loop {
            let next = chain.last().unwrap() * p;
            if next < lo || next >= pa {
                break;
            }
            chain.push(next);
        }
        if start < 0 {
            // the chain runs towards -infinity and vanishes below `lo`;
            // z_e = (z_{pe} + a_{pe})^(1/p) from the bottom up
            for w in chain.windows(2).rev() {
                let (e, pe) = (w[0], w[1]);
                z[idx(e)] = (z[idx(pe)] + a.coeff(pe)?).pth_root();
            }
        } else {
            // z_{start} = 0, then z_{pe} = z_e^p - a_{pe}
            for w in chain.windows(2) {
                let (e, pe) = (w[0], w[1]);
                z[idx(pe)] = z[idx(e)].frobenius() - a.coeff(pe)?;
            }
        }
    }
    let zs = LaurentSeries::new(field, lo, z, pa);
    let eta = (&zs + &a).shift(-1);
    Ok(Some(Form::new(omega.coeff() + &eta)))
}

/// `(1 - C)(w)`.
pub fn one_minus_c(w: &LocalForm) -> Result<LocalForm> {
    Ok(w.minus(&cartier(w)?))
}

/// The class of `f dg` as the cyclic algebra `[fg, g)` with its invariant.
pub fn symbol_to_brauer(
    f: &LaurentSeries,
    g: &LaurentSeries,
) -> Result<(CyclicAlgebraDesc, BrauerInv)> {
    if g.is_zero() {
        return Err(Error::ZeroG);
    }
    let form = Form::new(f * &g.derivative());
    let inv = local_invariant(&form)?;
    Ok((
        CyclicAlgebraDesc {
            f: f * g,
            g: g.clone(),
        },
        inv,
    ))
}

/// The pairing of the torsors with potentials `f` and `g`: the form `g df`
/// and its invariant.
pub fn pairing_alpha_p(f: &LaurentSeries, g: &LaurentSeries) -> Result<(LocalForm, BrauerInv)> {
    let form = Form::new(g * &f.derivative());
    let inv = local_invariant(&form)?;
    Ok((form, inv))
}

/// `<f, g> + <g, f>` and whether it lies in `B_1`.
pub fn alternation_alpha_p(f: &LaurentSeries, g: &LaurentSeries) -> Result<(LocalForm, Certified)> {
    let s = pairing_alpha_p(f, g)?.0.plus(&pairing_alpha_p(g, f)?.0);
    let member = bn_member(&s, 1)?;
    Ok((s, member))
}

/// `D_n(f) g_0^(p^(n-1))`, a representative modulo `B_n`.
pub fn pairing_level_n<C: DiffRing>(f: &WittVector<C>, g: &WittVector<C>) -> Result<Form<C>> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch(f.len(), g.len()));
    }
    if !f.entries()[0].same_ring(&g.entries()[0]) {
        return Err(Error::RingMismatch);
    }
    let p = f.entries()[0].base_field().p() as u64;
    let twist = g.entries()[0].pow_u(p.pow(f.len() as u32 - 1));
    Ok(d_n(f).scale(&twist))
}

/// The residue of `omega` traced to F_p, as an F_p element of the field.
pub fn traced_residue(omega: &LocalForm) -> Result<FqElem> {
    let res = omega.residue()?;
    Ok(res.field().from_int(res.trace() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Fq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mono(f: Fq, c: i64, e: i64) -> LaurentSeries {
        LaurentSeries::monomial(f.from_int(c), e)
    }

    #[test]
    fn invariant_examples() {
        for p in [2, 3, 5] {
            let f = Fq::prime(p).unwrap();
            assert_eq!(local_invariant(&LocalForm::dlog_t(f)).unwrap().value, 1);
        }
        let f4 = Fq::parse("gf(2,2,w^2+w+1)").unwrap();
        assert_eq!(local_invariant(&LocalForm::dlog_t(f4)).unwrap().value, 0);
        let f3 = Fq::prime(3).unwrap();
        let df = LocalForm::exact(&mono(f3, 1, -4).truncate(10));
        assert!(local_invariant(&df).unwrap().is_zero());
    }

    #[test]
    fn artin_schreier_examples() {
        let f2 = Fq::prime(2).unwrap();
        assert_eq!(artin_schreier_series(&mono(f2, 1, -1).truncate(10)).unwrap(), None);
        let z = artin_schreier_series(&LaurentSeries::zero(f2, 10)).unwrap().unwrap();
        assert!(z.is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, k) in [(2, 1), (2, 2), (3, 1), (5, 1), (3, 2)] {
            let f = Fq::new(p, k).unwrap();
            for _ in 0..30 {
                let y0 = LaurentSeries::random(f, -5, 12, &mut rng);
                let c = &y0.frobenius() - &y0;
                let y = artin_schreier_series(&c).unwrap().unwrap();
                let back = &y.frobenius() - &y;
                assert!(back.agrees_with(&c));
                assert_eq!(back.prec().min(c.prec()), c.prec());
            }
        }
    }

    #[test]
    fn one_minus_c_examples() {
        for p in [2, 3, 5] {
            let f = Fq::prime(p).unwrap();
            let dl = Form::new(mono(f, 1, -1).truncate(30));
            assert_eq!(solve_one_minus_c(&dl).unwrap(), None);
            let z = solve_one_minus_c(&Form::new(LaurentSeries::zero(f, 30))).unwrap().unwrap();
            assert!(one_minus_c(&z).unwrap().coeff().agrees_with(&LaurentSeries::zero(f, 30)));
        }
    }

    #[test]
    fn one_minus_c_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (p, k) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let f = Fq::new(p, k).unwrap();
            for _ in 0..40 {
                let rho = Form::new(LaurentSeries::random(f, -7, 200, &mut rng));
                let omega = one_minus_c(&rho).unwrap();
                assert!(local_invariant(&omega).unwrap().is_zero());
                let w = solve_one_minus_c(&omega).unwrap().expect("solvable");
                let back = one_minus_c(&w).unwrap();
                assert!(back.coeff().agrees_with(omega.coeff()));
                assert!(back.coeff().prec() > 0);
            }
        }
    }

    #[test]
    fn symbol_examples() {
        let f3 = Fq::prime(3).unwrap();
        let t = mono(f3, 1, 1);
        let (desc, inv) = symbol_to_brauer(&mono(f3, 1, -1), &t).unwrap();
        assert_eq!(inv.value, 1);
        assert_eq!(desc.f, LaurentSeries::constant(f3.one()));
        assert_eq!(desc.g, t);
        let (_, inv) = symbol_to_brauer(&mono(f3, 1, -5), &t.pow(3)).unwrap();
        assert!(inv.is_zero());
        assert_eq!(
            symbol_to_brauer(&t, &LaurentSeries::exact_zero(f3)).unwrap_err(),
            Error::ZeroG
        );
        let (desc, inv) = symbol_to_brauer(&LaurentSeries::exact_zero(f3), &t).unwrap();
        assert!(desc.f.is_zero() && inv.is_zero());
    }

    #[test]
    fn alpha_p_alternating() {
        let f = Fq::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let a = LaurentSeries::random(f, -3, 20, &mut rng);
            let b = LaurentSeries::random(f, -3, 20, &mut rng);
            assert!(alternation_alpha_p(&a, &b).unwrap().1.value);
        }
        let (_, inv) = pairing_alpha_p(&mono(f, 1, 1), &mono(f, 1, -1)).unwrap();
        assert_eq!(inv.value, 1);
    }
}
