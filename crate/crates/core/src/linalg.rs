//! Dense linear algebra over a finite field.

use crate::ff::FqElem;

/// Reduces `m` (rows of equal length) to reduced row echelon form in place
/// and returns the pivot columns.
pub fn rref(m: &mut [Vec<FqElem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = f * m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of `{x : m x = 0}` for a matrix with `cols` columns.
pub fn nullspace(mut m: Vec<Vec<FqElem>>, cols: usize, zero: FqElem) -> Vec<Vec<FqElem>> {
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero; cols];
            v[f] = zero.field().one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f];
            }
            v
        })
        .collect()
}

/// A solution of `m x = b`, if any.
pub fn solve(m: &[Vec<FqElem>], b: &[FqElem]) -> Option<Vec<FqElem>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<FqElem>> = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let zero = b.first()?.field().zero();
    let mut x = vec![zero; cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Fq;

    #[test]
    fn nullspace_and_solve() {
        let f = Fq::prime(5).unwrap();
        let e = |v: &[i64]| v.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>();
        let m = vec![e(&[1, 2, 3]), e(&[2, 3, 1])];
        let ns = nullspace(m.clone(), 3, f.zero());
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&ns[0]).fold(f.zero(), |a, (x, y)| a + *x * *y);
            assert!(dot.is_zero());
        }
        let x = solve(&m, &e(&[1, 2])).unwrap();
        for (row, b) in m.iter().zip(e(&[1, 2])) {
            let dot = row.iter().zip(&x).fold(f.zero(), |a, (x, y)| a + *x * *y);
            assert_eq!(dot, b);
        }
        assert!(solve(&[e(&[1, 1]), e(&[2, 2])], &e(&[1, 3])).is_none());
    }
}
