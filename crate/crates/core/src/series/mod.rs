//! Laurent series, rational functions and one-forms over F_q.

mod form;
mod laurent;
mod rational;

pub use form::{Form, GlobalForm, LocalForm};
pub use laurent::{LaurentSeries, EXACT};
pub use rational::RationalFunction;

use crate::error::{Error, Result};

/// Working precision used when an exact input must be truncated.
pub const DEFAULT_PRECISION: i64 = 64;
use crate::poly::Poly;

/// Laurent expansion of `num/den` at `t = 0`, known modulo `t^prec`.
pub fn expand_quotient(num: &Poly, den: &Poly, prec: i64) -> Result<LaurentSeries> {
    let field = num.field();
    let Some(b) = den.valuation() else {
        return Err(Error::DivisionByZero);
    };
    let Some(a) = num.valuation() else {
        return Ok(LaurentSeries::zero(field, prec));
    };
    let v = a as i64 - b as i64;
    let n = LaurentSeries::new(field, 0, num.coeffs()[a..].to_vec(), crate::series::EXACT);
    let d = LaurentSeries::new(field, 0, den.coeffs()[b..].to_vec(), crate::series::EXACT);
    let rel = (prec - v).max(0);
    let q = &n * &d.inv(rel)?;
    Ok(q.truncate(rel).shift(v))
}

/// Laurent expansion of `r` at `t = 0`, known modulo `t^prec`.
pub fn expand_at_zero(r: &RationalFunction, prec: i64) -> Result<LaurentSeries> {
    expand_quotient(r.num(), r.den(), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Fq;

    #[test]
    fn expansions() {
        let f = Fq::prime(3).unwrap();
        let t = RationalFunction::t(f);
        assert_eq!(expand_at_zero(&t, 3).unwrap(), LaurentSeries::new(f, 1, vec![f.one()], 3));
        let geo = RationalFunction::new(Poly::one(f), Poly::from_ints(f, &[1, -1])).unwrap();
        assert_eq!(
            expand_at_zero(&geo, 3).unwrap(),
            LaurentSeries::new(f, 0, vec![f.one(); 3], 3)
        );
        let inv_t = RationalFunction::t_power(f, -1);
        assert_eq!(
            expand_at_zero(&inv_t, 2).unwrap(),
            LaurentSeries::new(f, -1, vec![f.one()], 2)
        );
    }
}
