//! Default moduli: for every supported (p, k) the monic irreducible of degree
//! k whose lower coefficients give the smallest base-p integer.

/// (p, k, coefficients low degree first, leading 1 included).
pub(crate) const DEFAULT_MODULI: &[(u32, usize, &[u32])] = &[
    (2, 1, &[0, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (3, 1, &[0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (5, 1, &[0, 1]),
    (5, 2, &[2, 0, 1]),
    (5, 3, &[1, 1, 0, 1]),
    (5, 4, &[2, 0, 0, 0, 1]),
    (5, 5, &[1, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (7, 1, &[0, 1]),
    (7, 2, &[1, 0, 1]),
    (7, 3, &[2, 0, 0, 1]),
    (7, 4, &[1, 1, 0, 0, 1]),
    (7, 5, &[3, 1, 0, 0, 0, 1]),
    (7, 6, &[2, 0, 0, 0, 0, 0, 1]),
    (11, 1, &[0, 1]),
    (11, 2, &[1, 0, 1]),
    (11, 3, &[4, 1, 0, 1]),
    (11, 4, &[2, 1, 0, 0, 1]),
    (11, 5, &[2, 0, 0, 0, 0, 1]),
    (11, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (13, 1, &[0, 1]),
    (13, 2, &[2, 0, 1]),
    (13, 3, &[2, 0, 0, 1]),
    (13, 4, &[2, 0, 0, 0, 1]),
    (13, 5, &[2, 4, 0, 0, 0, 1]),
    (13, 6, &[2, 0, 0, 0, 0, 0, 1]),
];

pub(crate) fn lookup(p: u32, k: usize) -> Option<&'static [u32]> {
    DEFAULT_MODULI
        .iter()
        .find(|(q, d, _)| *q == p && *d == k)
        .map(|(_, _, m)| *m)
}
