//! Embeddings F_q -> F_{q^d} and relative traces.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use super::{fp_poly, Fq, FqElem};
use crate::error::{Error, Result};
use crate::poly::Poly;

static CACHE: Lazy<Mutex<HashMap<(Fq, Fq), Arc<Embedding>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// A fixed field homomorphism from `source` into `target`. The image of the
/// source generator is the smallest (by encoding) root of the source modulus
/// in the target field.
#[derive(Debug)]
pub struct Embedding {
    source: Fq,
    target: Fq,
    /// Images of 1, w, ..., w^(k-1).
    basis: Vec<FqElem>,
}

impl Embedding {
    pub fn new(source: Fq, target: Fq) -> Result<Arc<Embedding>> {
        if source.p() != target.p() || target.k() % source.k() != 0 {
            return Err(Error::NoEmbedding {
                from: source.k(),
                into: target.k(),
            });
        }
        let key = (source, target);
        if let Some(e) = CACHE.lock().expect("embedding cache poisoned").get(&key) {
            return Ok(e.clone());
        }
        let theta = if source == target {
            target.generator()
        } else if source.k() == 1 {
            target.one()
        } else {
            let m = Poly::from_coeffs(
                target,
                source
                    .spec()
                    .modulus()
                    .iter()
                    .map(|&c| target.from_int(c as i64))
                    .collect(),
            );
            *m.roots()
                .first()
                .expect("modulus splits in an extension of multiple degree")
        };
        let mut basis = Vec::with_capacity(source.k());
        let mut cur = target.one();
        for _ in 0..source.k() {
            basis.push(cur);
            cur *= theta;
        }
        let emb = Arc::new(Embedding {
            source,
            target,
            basis,
        });
        CACHE
            .lock()
            .expect("embedding cache poisoned")
            .insert(key, emb.clone());
        Ok(emb)
    }

    pub fn source(&self) -> Fq {
        self.source
    }

    pub fn target(&self) -> Fq {
        self.target
    }

    /// `[target : source]`.
    pub fn degree(&self) -> usize {
        self.target.k() / self.source.k()
    }

    pub fn apply(&self, a: FqElem) -> FqElem {
        assert!(a.field() == self.source, "element is not in the source field");
        if self.source.k() == 1 {
            return self.target.from_int(a.coords()[0] as i64);
        }
        a.coords()
            .iter()
            .zip(&self.basis)
            .fold(self.target.zero(), |acc, (&c, &b)| {
                acc + b * self.target.from_int(c as i64)
            })
    }

    /// The source element mapping to `b`, if any.
    pub fn preimage(&self, b: FqElem) -> Option<FqElem> {
        assert!(b.field() == self.target, "element is not in the target field");
        let p = self.source.p();
        let k = self.source.k();
        let n = self.target.k();
        let mut m: Vec<Vec<u32>> = (0..n)
            .map(|r| {
                let mut row: Vec<u32> = self.basis.iter().map(|e| e.coords()[r] as u32).collect();
                row.push(b.coords()[r] as u32);
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..k {
            let piv = (row..n).find(|&r| m[r][col] != 0)?;
            m.swap(row, piv);
            let inv = fp_poly::inv_mod(m[row][col], p);
            for v in m[row].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..n {
                if r != row && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..=k {
                        m[r][c] = (m[r][c] + (p - f) * m[row][c]) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if m[row..].iter().any(|r| r[k] != 0) {
            return None;
        }
        let coords: Vec<u32> = (0..k).map(|i| m[i][k]).collect();
        Some(self.source.element(&coords))
    }

    /// `Tr_{target/source}(b) = sum_{i<d} b^(q^i)`, pulled back to the source.
    pub fn rel_trace(&self, b: FqElem) -> FqElem {
        let q = self.source.order();
        let mut acc = self.target.zero();
        let mut cur = b;
        for _ in 0..self.degree() {
            acc += cur;
            cur = cur.pow(q);
        }
        self.preimage(acc)
            .expect("relative trace lies in the embedded base field")
    }
}

/// Embeds `a` into `target` via the canonical embedding.
pub fn embed(a: FqElem, target: Fq) -> Result<FqElem> {
    Ok(Embedding::new(a.field(), target)?.apply(a))
}

/// Relative trace of `a` down to `base`.
pub fn rel_trace(a: FqElem, base: Fq) -> Result<FqElem> {
    Ok(Embedding::new(base, a.field())?.rel_trace(a))
}
