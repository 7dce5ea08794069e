//! Universal Witt addition and multiplication polynomials.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Integer polynomial in `2n` variables `x_0..x_{n-1}, y_0..y_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ZPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl ZPoly {
    fn zero(nvars: usize) -> ZPoly {
        ZPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    fn var(nvars: usize, i: usize) -> ZPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigInt::one());
        ZPoly { nvars, terms }
    }

    fn one(nvars: usize) -> ZPoly {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nvars], BigInt::one());
        ZPoly { nvars, terms }
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    fn add(&self, other: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    fn scale(&self, k: &BigInt) -> ZPoly {
        let mut out = ZPoly::zero(self.nvars);
        if k.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * k);
        }
        out
    }

    fn mul(&self, other: &ZPoly) -> ZPoly {
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        ZPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn pow(&self, mut e: u64) -> ZPoly {
        let mut result = ZPoly::one(self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    fn div_exact(&self, d: &BigInt) -> Option<ZPoly> {
        let mut out = ZPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if !(c % d).is_zero() {
                return None;
            }
            out.terms.insert(e.clone(), c / d);
        }
        Some(out)
    }
}

/// `w_m(v_0, ..., v_m) = sum_j p^j v_j^(p^(m-j))`.
fn ghost(vars: &[ZPoly], m: usize, p: u64) -> ZPoly {
    let nv = vars[0].nvars;
    let mut acc = ZPoly::zero(nv);
    for (j, v) in vars.iter().enumerate().take(m + 1) {
        let coeff = BigInt::from(p).pow(j as u32);
        acc = acc.add(&v.pow(p.pow((m - j) as u32)).scale(&coeff));
    }
    acc
}

/// A polynomial reduced mod p: `(exponents, coefficient)` pairs.
type ModPoly = Vec<(Vec<u32>, u32)>;

/// Addition and multiplication polynomials of `W_n` reduced mod p.
#[derive(Debug)]
pub struct UniversalWittPolys {
    p: u32,
    n: usize,
    sum: Vec<ModPoly>,
    prod: Vec<ModPoly>,
}

static CACHE: Lazy<Mutex<HashMap<(u32, usize), Arc<UniversalWittPolys>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Largest supported Witt length for the characteristic.
pub fn max_length(p: u32) -> usize {
    if p <= 3 {
        3
    } else {
        2
    }
}

impl UniversalWittPolys {
    /// The polynomials for `(p, n)`, computed once and cached.
    pub fn get(p: u32, n: usize) -> Result<Arc<UniversalWittPolys>> {
        if n == 0 || n > max_length(p) {
            return Err(Error::Unsupported(format!(
                "Witt vectors of length {n} for p = {p} (supported: 1..={})",
                max_length(p)
            )));
        }
        if let Some(u) = CACHE.lock().expect("witt cache poisoned").get(&(p, n)) {
            return Ok(u.clone());
        }
        let u = Arc::new(Self::compute(p, n));
        CACHE
            .lock()
            .expect("witt cache poisoned")
            .insert((p, n), u.clone());
        Ok(u)
    }

    fn compute(p: u32, n: usize) -> UniversalWittPolys {
        let nv = 2 * n;
        let pb = p as u64;
        let x: Vec<ZPoly> = (0..n).map(|i| ZPoly::var(nv, i)).collect();
        let y: Vec<ZPoly> = (0..n).map(|i| ZPoly::var(nv, n + i)).collect();
        let mut s: Vec<ZPoly> = Vec::with_capacity(n);
        let mut m_: Vec<ZPoly> = Vec::with_capacity(n);
        for m in 0..n {
            let wx = ghost(&x, m, pb);
            let wy = ghost(&y, m, pb);
            let pm = BigInt::from(p).pow(m as u32);
            let mut rs = wx.add(&wy);
            let mut rp = wx.mul(&wy);
            for i in 0..m {
                let c = BigInt::from(p).pow(i as u32);
                let e = pb.pow((m - i) as u32);
                rs = rs.sub(&s[i].pow(e).scale(&c));
                rp = rp.sub(&m_[i].pow(e).scale(&c));
            }
            let sm = rs.div_exact(&pm).expect("Witt addition recursion divides exactly");
            let pm_ = rp
                .div_exact(&pm)
                .expect("Witt multiplication recursion divides exactly");
            s.push(sm);
            m_.push(pm_);
        }
        for m in 0..n {
            let lhs_s = ghost(&s, m, pb);
            let lhs_p = ghost(&m_, m, pb);
            assert_eq!(lhs_s, ghost(&x, m, pb).add(&ghost(&y, m, pb)));
            assert_eq!(lhs_p, ghost(&x, m, pb).mul(&ghost(&y, m, pb)));
        }
        let reduce = |z: &ZPoly| -> ModPoly {
            let pb = BigInt::from(p);
            z.terms
                .iter()
                .filter_map(|(e, c)| {
                    let r = ((c % &pb) + &pb) % &pb;
                    let r = r.to_u32().unwrap();
                    (r != 0).then(|| (e.clone(), r))
                })
                .collect()
        };
        UniversalWittPolys {
            p,
            n,
            sum: s.iter().map(reduce).collect(),
            prod: m_.iter().map(reduce).collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of monomials in `S_m` and `P_m` after reduction mod p.
    pub fn term_counts(&self) -> Vec<(usize, usize)> {
        self.sum
            .iter()
            .zip(&self.prod)
            .map(|(a, b)| (a.len(), b.len()))
            .collect()
    }

    pub(crate) fn add<R: Ring>(&self, a: &[R], b: &[R]) -> Vec<R> {
        self.eval_all(&self.sum, a, b)
    }

    pub(crate) fn mul<R: Ring>(&self, a: &[R], b: &[R]) -> Vec<R> {
        self.eval_all(&self.prod, a, b)
    }

    fn eval_all<R: Ring>(&self, polys: &[ModPoly], a: &[R], b: &[R]) -> Vec<R> {
        let vals: Vec<&R> = a.iter().chain(b.iter()).collect();
        let mut powers: Vec<HashMap<u32, R>> = vec![HashMap::new(); vals.len()];
        let mut out = Vec::with_capacity(polys.len());
        for poly in polys {
            let mut acc = a[0].zero_like();
            for (exps, c) in poly {
                let mut term = a[0].int_like(*c as i64);
                for (v, &e) in exps.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let pw = powers[v]
                        .entry(e)
                        .or_insert_with(|| vals[v].pow_u(e as u64))
                        .clone();
                    term = term.times(&pw);
                }
                acc = acc.plus(&term);
            }
            out.push(acc);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_n2_addition() {
        let u = UniversalWittPolys::get(2, 2).unwrap();
        // S_1 = x_1 + y_1 + x_0 y_0 mod 2
        let mut s1 = u.sum[1].clone();
        s1.sort();
        assert_eq!(
            s1,
            vec![
                (vec![0, 0, 0, 1], 1),
                (vec![0, 1, 0, 0], 1),
                (vec![1, 0, 1, 0], 1)
            ]
        );
    }

    #[test]
    fn supported_lengths() {
        assert!(UniversalWittPolys::get(3, 3).is_ok());
        assert!(UniversalWittPolys::get(5, 2).is_ok());
        assert!(matches!(UniversalWittPolys::get(5, 3), Err(Error::Unsupported(_))));
        assert!(matches!(UniversalWittPolys::get(2, 4), Err(Error::Unsupported(_))));
    }
}
