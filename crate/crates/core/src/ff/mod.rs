//! Finite fields F_{p^k} in a polynomial basis.
//!
//! A field is described by a [`FieldSpec`] (characteristic, degree, monic
//! irreducible modulus, display name of the generator). Specs are interned,
//! so the handle [`Fq`] is a `Copy` pointer and two handles compare equal
//! exactly when their specs are identical. Elements ([`FqElem`]) are small
//! `Copy` values carrying their field handle; mixing elements of different
//! fields is a programming error and panics.

mod descriptor;
mod embed;
pub(crate) mod fp_poly;
mod table;

pub use embed::{embed, rel_trace, Embedding};

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Largest extension degree an element can carry. Residue fields of places of
/// degree up to 3 over F_{p^6} fit.
pub const MAX_DEGREE: usize = 24;

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u32 = 13;

pub struct FieldSpec {
    p: u32,
    k: usize,
    modulus: Vec<u32>,
    name: String,
    order: u128,
    /// `frob[i]` is the reduced representation of `w^(i*p)`.
    frob: Vec<[u8; MAX_DEGREE]>,
    /// `trace_basis[i]` is `Tr(w^i)` in F_p.
    trace_basis: Vec<u32>,
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator_name(&self) -> &str {
        &self.name
    }
}

static REGISTRY: Lazy<Mutex<Vec<&'static FieldSpec>>> = Lazy::new(|| Mutex::new(Vec::new()));

/// Handle to an interned field.
#[derive(Clone, Copy)]
pub struct Fq(&'static FieldSpec);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0 as *const FieldSpec).hash(state)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf({},{},", self.0.p, self.0.k)?;
        let name = &self.0.name;
        let mut first = true;
        for (i, &c) in self.0.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{name}")?,
                (1, c) => write!(f, "{c}*{name}")?,
                (i, 1) => write!(f, "{name}^{i}")?,
                (i, c) => write!(f, "{c}*{name}^{i}")?,
            }
        }
        write!(f, ")")
    }
}

impl Fq {
    /// The field F_{p^k} with the default modulus from the shipped table
    /// (or, for degrees outside the table, the smallest irreducible found by
    /// the same rule). The generator is displayed as `w`.
    pub fn new(p: u32, k: usize) -> Result<Fq> {
        Self::canonical(p, k, "w")
    }

    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Fq> {
        Self::canonical(p, 1, "w")
    }

    pub(crate) fn canonical(p: u32, k: usize, name: &str) -> Result<Fq> {
        check_characteristic(p)?;
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::InvalidField(format!(
                "degree {k} outside 1..={MAX_DEGREE}"
            )));
        }
        let modulus = match table::lookup(p, k) {
            Some(m) => m.to_vec(),
            None => smallest_irreducible(p, k),
        };
        Self::with_modulus(p, &modulus, name)
    }

    /// The field F_p[name]/(modulus). `modulus` is given low degree first and
    /// must be monic and irreducible.
    pub fn with_modulus(p: u32, modulus: &[u32], name: &str) -> Result<Fq> {
        check_characteristic(p)?;
        let mut m: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        fp_poly::trim(&mut m);
        if m.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        let k = m.len() - 1;
        if k > MAX_DEGREE {
            return Err(Error::InvalidField(format!(
                "degree {k} exceeds {MAX_DEGREE}"
            )));
        }
        if m[k] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !fp_poly::is_irreducible(&m, p) {
            return Err(Error::InvalidField(format!(
                "modulus {m:?} is reducible over F_{p}"
            )));
        }
        if name.is_empty() || name.starts_with('d') || !name.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(Error::InvalidField(format!(
                "generator name {name:?} must be alphanumeric and not start with 'd'"
            )));
        }
        let mut reg = REGISTRY.lock().expect("field registry poisoned");
        if let Some(spec) = reg
            .iter()
            .find(|s| s.p == p && s.modulus == m && s.name == name)
        {
            return Ok(Fq(spec));
        }
        let spec = build_spec(p, m, name.to_string());
        let leaked: &'static FieldSpec = Box::leak(Box::new(spec));
        reg.push(leaked);
        Ok(Fq(leaked))
    }

    /// Parses a descriptor such as `gf(2,2,w^2+w+1)`, `gf(3,2)` or `gf(5)`.
    pub fn parse(descriptor: &str) -> Result<Fq> {
        descriptor::parse(descriptor)
    }

    pub fn spec(&self) -> &'static FieldSpec {
        self.0
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    pub fn order(&self) -> u128 {
        self.0.order
    }

    pub fn zero(&self) -> FqElem {
        FqElem {
            field: *self,
            rep: [0; MAX_DEGREE],
        }
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        let mut e = self.zero();
        e.rep[0] = n.rem_euclid(self.0.p as i64) as u8;
        e
    }

    /// The class of the generator `w`.
    pub fn generator(&self) -> FqElem {
        let mut e = self.zero();
        if self.0.k == 1 {
            e.rep[0] = ((self.0.p - self.0.modulus[0]) % self.0.p) as u8;
        } else {
            e.rep[1] = 1;
        }
        e
    }

    /// Builds an element from its coordinates in the basis 1, w, w^2, ...
    pub fn element(&self, coords: &[u32]) -> FqElem {
        assert!(coords.len() <= self.0.k, "too many coordinates for {self:?}");
        let mut e = self.zero();
        for (i, &c) in coords.iter().enumerate() {
            e.rep[i] = (c % self.0.p) as u8;
        }
        e
    }

    /// The element whose coordinates are the base-p digits of `code`.
    pub fn from_encoding(&self, mut code: u128) -> FqElem {
        let mut e = self.zero();
        let p = self.0.p as u128;
        for i in 0..self.0.k {
            e.rep[i] = (code % p) as u8;
            code /= p;
        }
        e
    }

    /// All elements in encoding order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.0.order).map(move |c| self.from_encoding(c))
    }
}

fn check_characteristic(p: u32) -> Result<()> {
    if !fp_poly::is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if p > MAX_CHARACTERISTIC {
        return Err(Error::Unsupported(format!(
            "characteristic {p} above {MAX_CHARACTERISTIC}"
        )));
    }
    Ok(())
}

fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let mut code: u128 = 0;
    loop {
        let mut m = Vec::with_capacity(k + 1);
        let mut c = code;
        for _ in 0..k {
            m.push((c % p as u128) as u32);
            c /= p as u128;
        }
        m.push(1);
        if fp_poly::is_irreducible(&m, p) {
            return m;
        }
        code += 1;
    }
}

fn build_spec(p: u32, modulus: Vec<u32>, name: String) -> FieldSpec {
    let k = modulus.len() - 1;
    let order = (p as u128).pow(k as u32);
    let mut frob = Vec::with_capacity(k);
    let mut x = vec![0u32; 2];
    x[1] = 1;
    let xp = fp_poly::pow_mod(&x, p as u64, &modulus, p);
    let mut cur = vec![1u32];
    for _ in 0..k {
        let mut rep = [0u8; MAX_DEGREE];
        for (i, &c) in cur.iter().enumerate() {
            rep[i] = c as u8;
        }
        frob.push(rep);
        cur = fp_poly::mul_mod(&cur, &xp, &modulus, p);
    }
    let mut spec = FieldSpec {
        p,
        k,
        modulus,
        name,
        order,
        frob,
        trace_basis: Vec::new(),
    };
    // Traces of basis elements, computed from the definition with the
    // Frobenius table just built.
    let handle = Fq(Box::leak(Box::new(FieldSpec {
        p: spec.p,
        k: spec.k,
        modulus: spec.modulus.clone(),
        name: spec.name.clone(),
        order: spec.order,
        frob: spec.frob.clone(),
        trace_basis: vec![0; k],
    })));
    spec.trace_basis = (0..k)
        .map(|i| {
            let mut e = handle.zero();
            e.rep[i] = 1;
            let mut acc = handle.zero();
            let mut cur = e;
            for _ in 0..k {
                acc += cur;
                cur = cur.frobenius();
            }
            debug_assert!(acc.rep[1..].iter().all(|&c| c == 0));
            acc.rep[0] as u32
        })
        .collect();
    spec
}

/// An element of a finite field.
#[derive(Clone, Copy)]
pub struct FqElem {
    field: Fq,
    rep: [u8; MAX_DEGREE],
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.rep == other.rep
    }
}

impl Eq for FqElem {}

impl Hash for FqElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.rep.hash(state);
    }
}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by encoding (most significant coordinate first).
impl Ord for FqElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let k = self.field.k();
        self.rep[..k].iter().rev().cmp(other.rep[..k].iter().rev())
    }
}

impl FqElem {
    pub fn field(&self) -> Fq {
        self.field
    }

    /// Coordinates in the basis 1, w, ..., w^(k-1).
    pub fn coords(&self) -> &[u8] {
        &self.rep[..self.field.k()]
    }

    pub fn encoding(&self) -> u128 {
        let p = self.field.p() as u128;
        self.coords()
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * p + c as u128)
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.rep[0] == 1 && self.rep[1..].iter().all(|&c| c == 0)
    }

    /// `Some(c)` when the element lies in the prime field.
    pub fn as_prime(&self) -> Option<u32> {
        if self.rep[1..].iter().all(|&c| c == 0) {
            Some(self.rep[0] as u32)
        } else {
            None
        }
    }

    fn assert_same(&self, other: &FqElem) {
        assert!(
            self.field == other.field,
            "mixing elements of {:?} and {:?}",
            self.field,
            other.field
        );
    }

    pub fn pow(&self, mut e: u128) -> FqElem {
        let mut result = self.field.one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                result *= base;
            }
            base = base * base;
            e >>= 1;
        }
        result
    }

    /// Signed power; `None` for a negative power of zero.
    pub fn powi(&self, e: i64) -> Option<FqElem> {
        if e >= 0 {
            Some(self.pow(e as u128))
        } else {
            self.inv().map(|i| i.pow(e.unsigned_abs() as u128))
        }
    }

    pub fn inv(&self) -> Option<FqElem> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.field.order() - 2))
        }
    }

    /// `self^p`.
    pub fn frobenius(&self) -> FqElem {
        let spec = self.field.0;
        if spec.k == 1 {
            return *self;
        }
        let p = spec.p;
        let mut acc = [0u32; MAX_DEGREE];
        for (i, &c) in self.rep[..spec.k].iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &b) in spec.frob[i][..spec.k].iter().enumerate() {
                acc[j] += c as u32 * b as u32;
            }
        }
        let mut out = self.field.zero();
        for j in 0..spec.k {
            out.rep[j] = (acc[j] % p) as u8;
        }
        out
    }

    /// The unique `b` with `b^p = self`, namely `self^(p^(k-1))`.
    pub fn pth_root(&self) -> FqElem {
        let mut b = *self;
        for _ in 1..self.field.k() {
            b = b.frobenius();
        }
        b
    }

    /// Absolute trace to F_p: the sum of the k conjugates.
    pub fn trace(&self) -> u32 {
        let spec = self.field.0;
        let p = spec.p;
        self.rep[..spec.k]
            .iter()
            .zip(&spec.trace_basis)
            .fold(0u32, |acc, (&c, &t)| (acc + c as u32 * t) % p)
    }

    /// A solution of `x^p - x = self`, or `None` when the trace is nonzero.
    ///
    /// Solutions form a coset of F_p; the one with zero constant coordinate
    /// (the smallest in encoding order) is returned.
    pub fn artin_schreier_solve(&self) -> Option<FqElem> {
        let field = self.field;
        let k = field.k();
        let p = field.p();
        if k == 1 {
            return if self.is_zero() { Some(field.zero()) } else { None };
        }
        // Columns j = 1..k of the F_p-linear map x -> x^p - x.
        let cols: Vec<FqElem> = (1..k)
            .map(|j| {
                let mut e = field.zero();
                e.rep[j] = 1;
                e.frobenius() - e
            })
            .collect();
        // Augmented matrix rows = coordinates.
        let mut m: Vec<Vec<u32>> = (0..k)
            .map(|r| {
                let mut row: Vec<u32> = cols.iter().map(|c| c.rep[r] as u32).collect();
                row.push(self.rep[r] as u32);
                row
            })
            .collect();
        let ncols = k - 1;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..ncols {
            let Some(piv) = (row..k).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, piv);
            let inv = fp_poly::inv_mod(m[row][col], p);
            for v in m[row].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..k {
                if r != row && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..=ncols {
                        m[r][c] = (m[r][c] + (p - f) * m[row][c]) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if m[row..].iter().any(|r| r[ncols] != 0) {
            return None;
        }
        let mut x = field.zero();
        for (r, &col) in pivots.iter().enumerate() {
            x.rep[col + 1] = m[r][ncols] as u8;
        }
        debug_assert_eq!(x.frobenius() - x, *self);
        Some(x)
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.field.k();
        if k == 1 {
            return write!(f, "{}", self.rep[0]);
        }
        let name = self.field.0.name.as_str();
        let mut first = true;
        for i in (0..k).rev() {
            let c = self.rep[i];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{name}")?,
                (1, c) => write!(f, "{c}*{name}")?,
                (i, 1) => write!(f, "{name}^{i}")?,
                (i, c) => write!(f, "{c}*{name}^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for FqElem {
    type Output = FqElem;
    fn add(self, rhs: FqElem) -> FqElem {
        self.assert_same(&rhs);
        let p = self.field.p() as u8;
        let mut out = self;
        for i in 0..self.field.k() {
            let s = self.rep[i] + rhs.rep[i];
            out.rep[i] = if s >= p { s - p } else { s };
        }
        out
    }
}

impl Sub for FqElem {
    type Output = FqElem;
    fn sub(self, rhs: FqElem) -> FqElem {
        self + (-rhs)
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        let p = self.field.p() as u8;
        let mut out = self;
        for i in 0..self.field.k() {
            out.rep[i] = if self.rep[i] == 0 { 0 } else { p - self.rep[i] };
        }
        out
    }
}

impl Mul for FqElem {
    type Output = FqElem;
    fn mul(self, rhs: FqElem) -> FqElem {
        self.assert_same(&rhs);
        let spec = self.field.0;
        let p = spec.p;
        let k = spec.k;
        let mut out = self.field.zero();
        if k == 1 {
            out.rep[0] = ((self.rep[0] as u32 * rhs.rep[0] as u32) % p) as u8;
            return out;
        }
        let mut prod = [0u32; 2 * MAX_DEGREE];
        for i in 0..k {
            let a = self.rep[i] as u32;
            if a == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] += a * rhs.rep[j] as u32;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i] % p;
            if c == 0 {
                continue;
            }
            let shift = i - k;
            for (j, &m) in spec.modulus[..k].iter().enumerate() {
                prod[shift + j] += (p - m) % p * c;
            }
        }
        for i in 0..k {
            out.rep[i] = (prod[i] % p) as u8;
        }
        out
    }
}

impl Div for FqElem {
    type Output = FqElem;
    fn div(self, rhs: FqElem) -> FqElem {
        self * rhs.inv().expect("division by zero in finite field")
    }
}

impl AddAssign for FqElem {
    fn add_assign(&mut self, rhs: FqElem) {
        *self = *self + rhs;
    }
}

impl SubAssign for FqElem {
    fn sub_assign(&mut self, rhs: FqElem) {
        *self = *self - rhs;
    }
}

impl MulAssign for FqElem {
    fn mul_assign(&mut self, rhs: FqElem) {
        *self = *self * rhs;
    }
}
