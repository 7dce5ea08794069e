//! Dense univariate polynomials over a finite field, with factorization.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ff::{Fq, FqElem};

/// Seed used by the randomized equal-degree splitting. Factorizations are
/// unique, so the seed only affects running time, never results.
const SPLIT_SEED: u64 = 0x5eed_cafe;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Fq,
    /// Low degree first, no trailing zeros.
    coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn zero(field: Fq) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Fq) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FqElem) -> Poly {
        Poly::from_coeffs(c.field(), vec![c])
    }

    /// The variable.
    pub fn x(field: Fq) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn monomial(c: FqElem, n: usize) -> Poly {
        let mut coeffs = vec![c.field().zero(); n + 1];
        coeffs[n] = c;
        Poly::from_coeffs(c.field(), coeffs)
    }

    pub fn from_coeffs(field: Fq, mut coeffs: Vec<FqElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        Poly { field, coeffs }
    }

    pub fn from_ints(field: Fq, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn lead(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or_else(|| self.field.zero())
    }

    /// The lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.lead().inv().unwrap())
    }

    pub fn scale(&self, c: FqElem) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Multiplies by `x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        self.coeffs
            .iter()
            .rev()
            .fold(x.field().zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * self.field.from_int(i as i64))
            .collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    /// Applies `f` to every coefficient, landing in `target`.
    pub fn map(&self, target: Fq, f: impl Fn(FqElem) -> FqElem) -> Poly {
        Poly::from_coeffs(target, self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// `self(x + a)`.
    pub fn taylor_shift(&self, a: FqElem) -> Poly {
        let mut out = Poly::zero(self.field);
        let lin = Poly::from_coeffs(self.field, vec![a, self.field.one()]);
        for &c in self.coeffs.iter().rev() {
            out = &(&out * &lin) + &Poly::constant(c);
        }
        out
    }

    /// `x^deg * self(1/x)` padded to the given degree.
    pub fn reversal(&self, deg: usize) -> Poly {
        assert!(self.deg() <= deg as i64);
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[deg - i] = c;
        }
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let inv = d.lead().inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd] * inv;
            if c.is_zero() {
                continue;
            }
            q[i] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= c * dc;
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(self.field, q), Poly::from_coeffs(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().inv().unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut result = Poly::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut result = Poly::one(self.field).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                result = (&result * &base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m);
            }
        }
        result
    }

    /// `self^p` computed coefficientwise.
    pub fn frobenius(&self) -> Poly {
        let p = self.field.p() as usize;
        let mut coeffs = vec![self.field.zero(); self.coeffs.len().saturating_sub(1) * p + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * p] = c.frobenius();
        }
        Poly::from_coeffs(self.field, coeffs)
    }

    /// The unique `g` with `g^p = self`, if `self` is a p-th power.
    pub fn pth_root(&self) -> Option<Poly> {
        let p = self.field.p() as usize;
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(c.pth_root());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly::from_coeffs(self.field, out))
    }

    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let q = self.field.order();
        let x = Poly::x(self.field);
        let mut h = x.clone();
        for _ in 0..n / 2 {
            h = h.pow_mod(q, &f);
            if !f.gcd(&(&h - &x)).is_one() {
                return false;
            }
        }
        true
    }

    /// Monic irreducible factors with multiplicities, sorted by degree and
    /// then coefficients. Constant polynomials have no factors.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "factoring the zero polynomial");
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut out: Vec<(Poly, usize)> = Vec::new();
        for (sf, mult) in squarefree(&self.monic()) {
            for (g, d) in distinct_degree(&sf) {
                for h in equal_degree(&g, d, &mut rng) {
                    match out.iter_mut().find(|(p, _)| *p == h) {
                        Some(entry) => entry.1 += mult,
                        None => out.push((h, mult)),
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Distinct roots in the coefficient field, sorted by encoding.
    pub fn roots(&self) -> Vec<FqElem> {
        if self.is_zero() {
            panic!("roots of the zero polynomial");
        }
        let f = self.monic();
        let x = Poly::x(self.field);
        let xq = x.pow_mod(self.field.order(), &f);
        let split = f.gcd(&(&xq - &x));
        if split.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut roots: Vec<FqElem> = equal_degree(&split, 1, &mut rng)
            .into_iter()
            .map(|l| -l.coeff(0))
            .collect();
        roots.sort();
        roots
    }

    pub fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let compound = cs.contains(' ');
            let term = match i {
                0 => cs,
                _ => {
                    let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if c.is_one() {
                        mono
                    } else if compound {
                        format!("({cs})*{mono}")
                    } else {
                        format!("{cs}*{mono}")
                    }
                }
            };
            if out.is_empty() {
                out = term;
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

fn squarefree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.field().p() as usize;
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        for (g, m) in squarefree(&root) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let q = f.field().order();
    let x = Poly::x(f.field());
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&(&h - &x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    out
}

fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field();
    let q = field.order();
    loop {
        let a = Poly::from_coeffs(
            field,
            (0..n).map(|_| field.from_encoding(rng.random_range(0..q))).collect(),
        );
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if field.p() == 2 {
            // Absolute trace map a + a^2 + ... + a^(2^(kd-1)) mod f.
            let mut acc = Poly::zero(field);
            let mut cur = a.rem(f);
            for _ in 0..field.k() * d {
                acc = &acc + &cur;
                cur = (&cur * &cur).rem(f);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut norm = Poly::one(field);
            let mut cur = a.rem(f);
            for _ in 0..d {
                norm = (&norm * &cur).rem(f);
                cur = cur.pow_mod(q, f);
            }
            &norm.pow_mod((q - 1) / 2, f) - &Poly::one(field)
        };
        let g = f.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div_exact(&g), d, rng));
            return out;
        }
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("t"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("t"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(self.field, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_coeffs(self.field, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        assert!(self.field == rhs.field, "mixing polynomials over different fields");
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(self.field, coeffs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(factors: &[(Poly, usize)], field: Fq) -> Poly {
        factors
            .iter()
            .fold(Poly::one(field), |acc, (f, m)| &acc * &f.pow(*m as u64))
    }

    #[test]
    fn factor_recombines() {
        for (p, k) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let f = Fq::new(p, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..40 {
                let deg = rng.random_range(1..9);
                let mut coeffs: Vec<FqElem> = (0..deg)
                    .map(|_| f.from_encoding(rng.random_range(0..f.order())))
                    .collect();
                coeffs.push(f.one());
                let a = Poly::from_coeffs(f, coeffs);
                let g = &a * &a.pow(rng.random_range(0..3));
                let fac = g.factor();
                assert_eq!(expand(&fac, f), g);
                for (h, _) in &fac {
                    assert!(h.is_irreducible() && h.is_monic());
                }
            }
        }
    }

    #[test]
    fn factor_with_pth_powers() {
        let f = Fq::prime(3).unwrap();
        // (t^3 - t)^3 * (t^2 + 1)
        let a = Poly::from_ints(f, &[0, -1, 0, 1]).pow(3);
        let b = Poly::from_ints(f, &[1, 0, 1]);
        let fac = (&a * &b).factor();
        assert_eq!(fac.len(), 4);
        assert!(fac.iter().any(|(h, m)| *h == b && *m == 1));
        assert_eq!(fac.iter().filter(|(_, m)| *m == 3).count(), 3);
    }

    #[test]
    fn roots_found() {
        let f = Fq::new(2, 2).unwrap();
        let x2x1 = Poly::from_ints(f, &[1, 1, 1]);
        let roots = x2x1.roots();
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert!(x2x1.eval(r).is_zero());
        }
        let f2 = Fq::prime(2).unwrap();
        assert!(Poly::from_ints(f2, &[1, 1, 1]).roots().is_empty());
    }

    #[test]
    fn taylor_shift_evaluates() {
        let f = Fq::prime(5).unwrap();
        let a = Poly::from_ints(f, &[1, 2, 3, 4]);
        let s = a.taylor_shift(f.from_int(2));
        for x in f.elements() {
            assert_eq!(s.eval(x), a.eval(x + f.from_int(2)));
        }
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = Fq::prime(7).unwrap();
        let a = Poly::from_ints(f, &[1, 2, 0, 1]);
        let b = Poly::from_ints(f, &[3, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert!(g.is_one());
    }

    #[test]
    fn display() {
        let f = Fq::prime(3).unwrap();
        assert_eq!(Poly::from_ints(f, &[1, -1, 0, 1]).to_string(), "t^3 + 2*t + 1");
        let f4 = Fq::new(2, 2).unwrap();
        let w = f4.generator();
        let p = Poly::from_coeffs(f4, vec![w, w + f4.one(), f4.one()]);
        assert_eq!(p.to_string(), "t^2 + (w + 1)*t + w");
    }
}
