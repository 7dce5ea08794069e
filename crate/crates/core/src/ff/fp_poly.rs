//! Dense polynomials over the prime field, used to validate moduli.
//!
//! Coefficients are stored low degree first and kept reduced; the zero
//! polynomial is the empty vector.

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.iter().map(|c| c % p).collect();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * inv_lead % p;
        if c != 0 {
            let shift = top - dm;
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * mc % p) % p;
            }
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

pub(crate) fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    rem(&result, m, p)
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y % p) % p;
    }
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let a = a % p;
    assert!(a != 0, "inverse of zero mod {p}");
    let mut r = 1u32;
    let mut b = a;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Ben-Or irreducibility test for a monic polynomial of degree >= 1.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    let mut xp = x.clone();
    for _ in 0..k / 2 {
        xp = pow_mod(&xp, p as u64, f, p);
        let g = gcd(f, &sub(&xp, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
