//! The Cartier operator, its inverse, B_n membership and the B_n ⊕ dlog
//! decomposition in dimension one.

use crate::error::{Error, Result};
use crate::ring::DiffRing;
use crate::series::Form;
use crate::witt::{d_n, invert_dn, WittVector};

/// A boolean answer together with the precision it was certified to
/// (`None` when the computation was exact).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certified {
    pub value: bool,
    pub window: Option<i64>,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// `C(f dt) = g_{p-1} dt` where `f = sum g_i^p t^i`. For a truncated input
/// known modulo `t^P` the output is known modulo `t^floor(P/p)`.
pub fn cartier<C: DiffRing>(omega: &Form<C>) -> Result<Form<C>> {
    let out = omega.cartier_unchecked();
    if let (Some(prec), Some(v)) = (omega.coeff().precision(), omega.coeff().t_valuation()) {
        let p = omega.coeff().base_field().p() as i64;
        let out_prec = out.coeff().precision().unwrap_or(i64::MAX);
        if out_prec <= ceil_div(v - (p - 1), p) {
            return Err(Error::PrecisionLoss(format!(
                "Cartier image of a form known modulo t^{prec} has an empty window"
            )));
        }
    }
    Ok(out)
}

/// `C^n(omega)`.
pub fn cartier_pow<C: DiffRing>(omega: &Form<C>, n: usize) -> Result<Form<C>> {
    let mut c = omega.clone();
    for _ in 0..n {
        c = cartier(&c)?;
    }
    Ok(c)
}

/// The representative `f^p t^(p-1) dt` of `C^-1(f dt)`.
pub fn cartier_inverse<C: DiffRing>(omega: &Form<C>) -> Form<C> {
    omega.cartier_inverse()
}

/// Whether `C^n(omega) = 0`, to the precision that survives `n` Cartier
/// applications.
pub fn bn_member<C: DiffRing>(omega: &Form<C>, n: usize) -> Result<Certified> {
    let c = cartier_pow(omega, n)?;
    Ok(Certified {
        value: c.is_zero(),
        window: c.coeff().precision(),
    })
}

/// Whether `C` can be applied `n` times. Every 1-form is closed in
/// dimension one, so this holds whenever the windows survive.
pub fn zn_member<C: DiffRing>(omega: &Form<C>, n: usize) -> Result<Certified> {
    let c = cartier_pow(omega, n)?;
    Ok(Certified {
        value: true,
        window: c.coeff().precision(),
    })
}

/// `omega = D_n(witt_part) + h^(p^n) t^(p^n) dlog t`.
#[derive(Clone, Debug)]
pub struct BnDecomposition<C> {
    pub level: usize,
    pub witt_part: WittVector<C>,
    pub h: C,
}

impl<C: DiffRing> BnDecomposition<C> {
    /// `h^(p^n) t^(p^n - 1) dt`.
    pub fn dlog_part(&self) -> Form<C> {
        let mut w = Form::new(self.h.clone());
        for _ in 0..self.level {
            w = w.cartier_inverse();
        }
        w
    }

    pub fn bn_part(&self) -> Form<C> {
        d_n(&self.witt_part)
    }

    pub fn recompose(&self) -> Form<C> {
        self.bn_part().plus(&self.dlog_part())
    }
}

/// Splits `omega` into a `B_n` part and a dlog part. `h dt = C^n(omega)`;
/// the `B_n` part is the difference, certified by inverting `D_n` on it.
pub fn bn_decompose<C: DiffRing>(omega: &Form<C>, n: usize) -> Result<BnDecomposition<C>> {
    if n == 0 {
        return Err(Error::Invalid("level must be at least 1".into()));
    }
    let h = cartier_pow(omega, n)?.into_coeff();
    let mut dec = BnDecomposition {
        level: n,
        witt_part: WittVector::zero(&h, n),
        h,
    };
    let beta = omega.minus(&dec.dlog_part());
    dec.witt_part = invert_dn(&beta, n)?;
    Ok(dec)
}
