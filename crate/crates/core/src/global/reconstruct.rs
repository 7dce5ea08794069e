//! Padé-style reconstruction of rational functions from Laurent data.

use crate::linalg::nullspace;
use crate::poly::Poly;
use crate::series::{expand_at_zero, LaurentSeries, RationalFunction};

/// A rational function `N/D` in the series variable with `deg N <= num_deg`,
/// `deg D <= den_deg` whose expansion at 0 agrees with `s` on its window.
pub fn rational_reconstruct(
    s: &LaurentSeries,
    num_deg: usize,
    den_deg: usize,
) -> Option<RationalFunction> {
    let field = s.field();
    if s.is_zero() {
        return Some(RationalFunction::zero(field));
    }
    let v = s.valuation()?;
    if s.is_exact() {
        let coeffs: Vec<_> = (v..s.hi()).map(|e| s.coeff(e).unwrap()).collect();
        let num = Poly::from_coeffs(field, coeffs).shift(v.max(0) as usize);
        let den = Poly::monomial(field.one(), (-v).max(0) as usize);
        let r = RationalFunction::new(num, den).ok()?;
        return within(&r, num_deg, den_deg).then_some(r);
    }
    let prec = s.prec();
    let e0 = v.min(0);
    let na = num_deg + 1;
    let nb = den_deg + 1;
    // Unknowns N_0..N_a, D_0..D_b; one equation per exponent e in [e0, prec):
    // sum_j D_j s_{e-j} - N_e = 0.
    let rows: Vec<Vec<_>> = (e0..prec)
        .map(|e| {
            let mut row = vec![field.zero(); na + nb];
            if e >= 0 && (e as usize) < na {
                row[e as usize] = -field.one();
            }
            for j in 0..nb {
                row[na + j] = s.coeff(e - j as i64).unwrap();
            }
            row
        })
        .collect();
    let basis = nullspace(rows, na + nb, field.zero());
    let sol = basis.into_iter().find(|x| x[na..].iter().any(|c| !c.is_zero()))?;
    let num = Poly::from_coeffs(field, sol[..na].to_vec());
    let den = Poly::from_coeffs(field, sol[na..].to_vec());
    let r = RationalFunction::new(num, den).ok()?;
    let back = expand_at_zero(&r, prec).ok()?;
    (within(&r, num_deg, den_deg) && back.agrees_with(s)).then_some(r)
}

fn within(r: &RationalFunction, num_deg: usize, den_deg: usize) -> bool {
    r.num().deg() <= num_deg as i64 && r.den().deg() <= den_deg as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Fq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn geometric_series() {
        let f = Fq::prime(3).unwrap();
        let r = RationalFunction::new(Poly::one(f), Poly::from_ints(f, &[1, -1])).unwrap();
        let s = expand_at_zero(&r, 6).unwrap();
        assert_eq!(rational_reconstruct(&s, 0, 1), Some(r));
    }

    #[test]
    fn zero_and_poles() {
        let f = Fq::prime(5).unwrap();
        let z = LaurentSeries::zero(f, 10);
        assert_eq!(rational_reconstruct(&z, 2, 2), Some(RationalFunction::zero(f)));
        let r = RationalFunction::new(
            Poly::from_ints(f, &[1, 2, 3]),
            Poly::from_ints(f, &[0, 0, 1, 1]),
        )
        .unwrap();
        let s = expand_at_zero(&r, 12).unwrap();
        assert_eq!(rational_reconstruct(&s, 3, 3), Some(r));
    }

    #[test]
    fn random_data_is_rejected() {
        let f = Fq::prime(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut rejected = 0;
        for _ in 0..20 {
            let s = LaurentSeries::random(f, 0, 30, &mut rng);
            if rational_reconstruct(&s, 3, 3).is_none() {
                rejected += 1;
            }
        }
        assert!(rejected >= 18);
    }
}
