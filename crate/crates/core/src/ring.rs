//! Coefficient-ring abstraction shared by Witt vectors and differential forms.

use std::fmt;

use crate::error::Result;
use crate::ff::Fq;

/// A commutative ring of characteristic p in which the arithmetic layers can
/// compute. Method names avoid clashing with the `std::ops` traits that the
/// concrete types also implement.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero_elem(&self) -> bool;
    /// Whether `self` and `other` live in the same ring.
    fn same_ring(&self, other: &Self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// `self^p`.
    fn frob(&self) -> Self;
    fn base_field(&self) -> Fq;

    fn pow_u(&self, mut e: u64) -> Self {
        let mut result = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        result
    }
}

/// A ring with p-basis `{t}`: coefficients of differential forms `f dt`.
pub trait DiffRing: Ring {
    /// `d/dt`.
    fn derivative(&self) -> Self;
    /// `(g_0, ..., g_{p-1})` with `self = sum g_i^p t^i`.
    fn p_power_decompose(&self) -> Vec<Self>;
    /// An antiderivative, when one exists.
    fn integrate(&self) -> Result<Self>;
    /// Multiplication by `t^k`.
    fn mul_t_power(&self, k: i64) -> Self;
    /// `Some(prec)` for truncated values, `None` for exact ones.
    fn precision(&self) -> Option<i64>;
    /// The known part, promoted to an exact value.
    fn as_exact(&self) -> Self;
    /// Order of vanishing at `t = 0`; `None` for zero.
    fn t_valuation(&self) -> Option<i64>;
}

impl Ring for crate::ff::FqElem {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn int_like(&self, n: i64) -> Self {
        self.field().from_int(n)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.field() == other.field()
    }
    fn plus(&self, other: &Self) -> Self {
        *self + *other
    }
    fn minus(&self, other: &Self) -> Self {
        *self - *other
    }
    fn times(&self, other: &Self) -> Self {
        *self * *other
    }
    fn negate(&self) -> Self {
        -*self
    }
    fn frob(&self) -> Self {
        self.frobenius()
    }
    fn base_field(&self) -> Fq {
        self.field()
    }
}
