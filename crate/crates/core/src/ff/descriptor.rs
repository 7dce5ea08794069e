//! Field descriptors: `gf(p)`, `gf(p,k)`, `gf(p,k,modulus)` and `F_q`.

use super::{fp_poly, Fq};
use crate::error::{Error, Result};

pub(super) fn parse(text: &str) -> Result<Fq> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(q) = s.strip_prefix("F_").or_else(|| s.strip_prefix("GF")) {
        let q: u64 = q
            .trim_start_matches('(')
            .trim_end_matches(')')
            .parse()
            .map_err(|_| bad(text, "field order is not an integer"))?;
        let (p, k) = prime_power(q).ok_or_else(|| bad(text, "order is not a prime power"))?;
        return Fq::new(p, k);
    }
    let inner = s
        .strip_prefix("gf(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| bad(text, "expected gf(p[,k[,modulus]])"))?;
    let parts: Vec<&str> = inner.split(',').collect();
    let p: u32 = parts[0]
        .parse()
        .map_err(|_| bad(text, "characteristic is not an integer"))?;
    match parts.len() {
        1 => Fq::prime(p),
        2 | 3 => {
            let k: usize = parts[1]
                .parse()
                .map_err(|_| bad(text, "degree is not an integer"))?;
            if parts.len() == 2 {
                return Fq::new(p, k);
            }
            if !fp_poly::is_prime(p) {
                return Err(Error::InvalidField(format!("{p} is not prime")));
            }
            let (name, modulus) = parse_modulus(parts[2], p).map_err(|m| bad(text, &m))?;
            if modulus.len() != k + 1 {
                return Err(bad(
                    text,
                    &format!("modulus has degree {} but k = {k}", modulus.len().saturating_sub(1)),
                ));
            }
            Fq::with_modulus(p, &modulus, &name)
        }
        _ => Err(bad(text, "too many arguments")),
    }
}

fn bad(text: &str, why: &str) -> Error {
    Error::InvalidField(format!("{text:?}: {why}"))
}

fn prime_power(q: u64) -> Option<(u32, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u32, k))
}

/// Parses a polynomial such as `w^2+w+1` or `u^3-u-1` in a single variable.
/// Returns the variable name and the coefficients mod p, low degree first.
fn parse_modulus(s: &str, p: u32) -> std::result::Result<(String, Vec<u32>), String> {
    let mut name: Option<String> = None;
    let mut coeffs: Vec<i64> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    if bytes.is_empty() {
        return Err("empty modulus".into());
    }
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return Err(format!("unexpected character at {i}"));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff: i64 = if i > start {
            s[start..i].parse().map_err(|_| "coefficient overflow".to_string())?
        } else {
            1
        };
        let mut exp = 0usize;
        let has_digits = i > start;
        if i < bytes.len() && bytes[i] == b'*' {
            if !has_digits {
                return Err(format!("unexpected '*' at {i}"));
            }
            i += 1;
        }
        if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
            let vs = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let v = &s[vs..i];
            match &name {
                Some(n) if n != v => return Err(format!("mixed variables {n} and {v}")),
                _ => name = Some(v.to_string()),
            }
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exp = s[es..i].parse().map_err(|_| "bad exponent".to_string())?;
            }
        } else if !has_digits {
            return Err(format!("expected a term at {i}"));
        }
        coeff *= sign;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] += coeff;
    }
    let mut out: Vec<u32> = coeffs
        .iter()
        .map(|c| c.rem_euclid(p as i64) as u32)
        .collect();
    fp_poly::trim(&mut out);
    Ok((name.unwrap_or_else(|| "w".into()), out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        let f = parse("gf(2,2,w^2+w+1)").unwrap();
        assert_eq!(f.to_string(), "gf(2,2,w^2+w+1)");
        assert_eq!(parse(&f.to_string()).unwrap(), f);
        let g = parse("gf(3, 2, u^2 + 1)").unwrap();
        assert_eq!(g.spec().generator_name(), "u");
        assert_eq!(parse("F_9").unwrap(), Fq::new(3, 2).unwrap());
        assert_eq!(parse("gf(5)").unwrap().k(), 1);
        assert_eq!(parse("gf(3,3,x^3-x-1)").unwrap().spec().modulus(), &[2, 2, 0, 1]);
    }

    #[test]
    fn bad_descriptors() {
        assert!(parse("gf(2,2,w^2+1)").is_err());
        assert!(parse("gf(2,3,w^2+w+1)").is_err());
        assert!(parse("gf(6)").is_err());
        assert!(parse("F_6").is_err());
        assert!(parse("hello").is_err());
        assert!(parse("gf(2,2,w^2+v+1)").is_err());
    }
}
