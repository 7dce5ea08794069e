//! Truncated Witt vectors and the Cartier–Serre differential `D_n`.

mod universal;

pub use universal::{max_length, UniversalWittPolys};

use std::fmt;

use crate::cartier::cartier;
use crate::error::{Error, Result};
use crate::ring::{DiffRing, Ring};
use crate::series::Form;

/// A Witt vector `(f_0, ..., f_{n-1})` of length `n >= 1` over a ring `R`.
#[derive(Clone, PartialEq)]
pub struct WittVector<R> {
    entries: Vec<R>,
}

impl<R: Ring> WittVector<R> {
    pub fn new(entries: Vec<R>) -> Result<WittVector<R>> {
        let Some(first) = entries.first() else {
            return Err(Error::Invalid("Witt vectors have length at least 1".into()));
        };
        if entries.iter().any(|e| !e.same_ring(first)) {
            return Err(Error::RingMismatch);
        }
        Ok(WittVector { entries })
    }

    /// The zero vector of length `n` over the ring of `like`.
    pub fn zero(like: &R, n: usize) -> WittVector<R> {
        WittVector {
            entries: vec![like.zero_like(); n.max(1)],
        }
    }

    /// The Teichmüller-style vector `(a, 0, ..., 0)`.
    pub fn teichmuller(a: R, n: usize) -> WittVector<R> {
        let mut entries = vec![a.zero_like(); n.max(1)];
        entries[0] = a;
        WittVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<R> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero_elem())
    }

    fn check(&self, other: &WittVector<R>) -> Result<std::sync::Arc<UniversalWittPolys>> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        if !self.entries[0].same_ring(&other.entries[0]) {
            return Err(Error::RingMismatch);
        }
        UniversalWittPolys::get(self.entries[0].base_field().p(), self.len())
    }

    /// Witt sum.
    pub fn add(&self, other: &WittVector<R>) -> Result<WittVector<R>> {
        let u = self.check(other)?;
        Ok(WittVector {
            entries: u.add(&self.entries, &other.entries),
        })
    }

    /// Witt product.
    pub fn mul(&self, other: &WittVector<R>) -> Result<WittVector<R>> {
        let u = self.check(other)?;
        Ok(WittVector {
            entries: u.mul(&self.entries, &other.entries),
        })
    }

    /// Entrywise p-th power, the Frobenius of `W_n` in characteristic p.
    pub fn frobenius(&self) -> WittVector<R> {
        WittVector {
            entries: self.entries.iter().map(|e| e.frob()).collect(),
        }
    }
}

impl<R: fmt::Debug> fmt::Debug for WittVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("W").field(&self.entries).finish()
    }
}

pub fn witt_add<R: Ring>(a: &WittVector<R>, b: &WittVector<R>) -> Result<WittVector<R>> {
    a.add(b)
}

pub fn witt_mul<R: Ring>(a: &WittVector<R>, b: &WittVector<R>) -> Result<WittVector<R>> {
    a.mul(b)
}

pub fn witt_frobenius<R: Ring>(a: &WittVector<R>) -> WittVector<R> {
    a.frobenius()
}

/// `D_n(f) = sum_j f_j^(p^(n-1-j) - 1) df_j`.
pub fn d_n<C: DiffRing>(f: &WittVector<C>) -> Form<C> {
    let n = f.len();
    let p = f.entries[0].base_field().p() as u64;
    let mut acc = f.entries[0].zero_like();
    for (j, fj) in f.entries.iter().enumerate() {
        if fj.is_zero_elem() {
            continue;
        }
        let e = p.pow((n - 1 - j) as u32) - 1;
        acc = acc.plus(&fj.pow_u(e).times(&fj.derivative()));
    }
    Form::new(acc)
}

/// A Witt vector `f` of length `n` with `D_n(f) = omega`.
///
/// Follows the inductive construction: `C^(n-1) omega = dF`, then
/// `omega - F^(p^(n-1) - 1) dF` lies in `B_(n-1)` and is inverted
/// recursively; `F` is prepended. Antiderivatives have zero constant term
/// and truncated ones are promoted to exact Laurent polynomials, so the
/// result satisfies `D_n(f) = omega` on the whole window of `omega`.
pub fn invert_dn<C: DiffRing>(omega: &Form<C>, n: usize) -> Result<WittVector<C>> {
    if n == 0 {
        return Err(Error::Invalid("level must be at least 1".into()));
    }
    let mut c = omega.clone();
    for _ in 1..n {
        c = cartier(&c)?;
    }
    let f = c
        .integrate()
        .map_err(|e| match e {
            Error::NotExact(_) => Error::NotInBn(n),
            other => other,
        })?
        .as_exact();
    if n == 1 {
        return Ok(WittVector { entries: vec![f] });
    }
    let p = f.base_field().p() as u64;
    let lead = Form::new(f.pow_u(p.pow(n as u32 - 1) - 1).times(&f.derivative()));
    let rest = omega.minus(&lead);
    let tail = invert_dn(&rest, n - 1).map_err(|e| match e {
        Error::NotInBn(_) => Error::NotInBn(n),
        other => other,
    })?;
    let mut entries = Vec::with_capacity(n);
    entries.push(f);
    entries.extend(tail.entries);
    Ok(WittVector { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Fq;
    use crate::poly::Poly;
    use crate::series::{LaurentSeries, RationalFunction};

    fn poly(f: Fq, c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::from_ints(f, c))
    }

    #[test]
    fn n1_addition_is_ring_addition() {
        let f = Fq::prime(5).unwrap();
        let a = WittVector::new(vec![f.from_int(2)]).unwrap();
        let b = WittVector::new(vec![f.from_int(4)]).unwrap();
        assert_eq!(a.add(&b).unwrap().entries(), &[f.from_int(1)]);
    }

    #[test]
    fn p2_carry() {
        let f = Fq::prime(2).unwrap();
        let a = WittVector::new(vec![f.one(), f.zero()]).unwrap();
        assert_eq!(a.add(&a).unwrap().entries(), &[f.zero(), f.one()]);
        let z = WittVector::zero(&f.one(), 2);
        assert_eq!(a.add(&z).unwrap(), a);
    }

    #[test]
    fn w2_of_f3_is_z_mod_9() {
        // Witt vectors of F_3 of length 2 form Z/9; check 1 + ... + 1 has order 9
        let f = Fq::prime(3).unwrap();
        let one = WittVector::teichmuller(f.one(), 2);
        let mut acc = WittVector::zero(&f.one(), 2);
        for i in 1..=9 {
            acc = acc.add(&one).unwrap();
            assert_eq!(acc.is_zero(), i == 9);
        }
    }

    #[test]
    fn errors() {
        let f = Fq::prime(2).unwrap();
        let g = Fq::new(2, 2).unwrap();
        let a = WittVector::new(vec![f.one()]).unwrap();
        let b = WittVector::new(vec![f.one(), f.one()]).unwrap();
        assert_eq!(a.add(&b), Err(Error::LengthMismatch(1, 2)));
        let c = WittVector::new(vec![g.one()]).unwrap();
        assert_eq!(a.add(&c), Err(Error::RingMismatch));
        assert!(matches!(WittVector::new(vec![f.one(), g.one()]), Err(Error::RingMismatch)));
    }

    #[test]
    fn dn_example() {
        let f = Fq::prime(2).unwrap();
        let w = WittVector::new(vec![poly(f, &[0, 1]), poly(f, &[0, 0, 0, 1])]).unwrap();
        assert_eq!(d_n(&w).coeff(), &poly(f, &[0, 1, 1]));
        assert!(d_n(&WittVector::zero(&poly(f, &[1]), 2)).is_zero());
    }

    #[test]
    fn invert_example() {
        let f = Fq::prime(2).unwrap();
        let omega = Form::new(poly(f, &[0, 1, 1]));
        let w = invert_dn(&omega, 2).unwrap();
        assert_eq!(d_n(&w), omega);
        let dlog = Form::new(LaurentSeries::monomial(f.one(), -1).truncate(20));
        for n in 1..=3 {
            assert_eq!(invert_dn(&dlog, n).unwrap_err(), Error::NotInBn(n));
        }
    }

    #[test]
    fn frobenius_in_kernel() {
        let f = Fq::prime(3).unwrap();
        let w = WittVector::new(vec![poly(f, &[1, 2, 1]), poly(f, &[0, 1, 0, 2])]).unwrap();
        assert!(d_n(&w.frobenius()).is_zero());
    }
}
