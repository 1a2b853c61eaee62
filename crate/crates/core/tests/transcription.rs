//! The recurrence coefficients, checked against a second copy kept here in
//! fully expanded form: one `(coefficient, exponents)` pair per monomial.

use cube_cover::sums::RecurrenceCertificate;

type Monomials<const K: usize> = &'static [(i128, [u32; K])];

fn eval<const K: usize>(poly: &[(i128, [u32; K])], point: [i128; K]) -> i128 {
    poly.iter()
        .map(|(c, exps)| {
            exps.iter()
                .zip(point)
                .fold(*c, |acc, (&e, x)| acc * x.pow(e))
        })
        .sum()
}

// S1, variables (a, m, r)
const S1_C0: Monomials<3> = &[
    (-4, [0, 0, 0]), (-14, [0, 0, 1]), (-18, [0, 0, 2]), (-10, [0, 0, 3]), (-2, [0, 0, 4]),
    (9, [0, 1, 0]), (23, [0, 1, 1]), (19, [0, 1, 2]), (5, [0, 1, 3]), (-6, [0, 2, 0]),
    (-10, [0, 2, 1]), (-4, [0, 2, 2]), (1, [0, 3, 0]), (1, [0, 3, 1]), (9, [1, 0, 0]),
    (23, [1, 0, 1]), (19, [1, 0, 2]), (5, [1, 0, 3]), (-16, [1, 1, 0]), (-26, [1, 1, 1]),
    (-10, [1, 1, 2]), (8, [1, 2, 0]), (6, [1, 2, 1]), (-1, [1, 3, 0]), (-6, [2, 0, 0]),
    (-10, [2, 0, 1]), (-4, [2, 0, 2]), (8, [2, 1, 0]), (6, [2, 1, 1]), (-2, [2, 2, 0]),
    (1, [3, 0, 0]), (1, [3, 0, 1]), (-1, [3, 1, 0]),
];

// S1, variables (a, m, r)
const S1_C1: Monomials<3> = &[
    (-12, [0, 0, 0]), (-26, [0, 0, 1]), (-18, [0, 0, 2]), (-4, [0, 0, 3]), (7, [0, 1, 0]),
    (5, [0, 1, 1]), (-3, [0, 1, 2]), (-2, [0, 1, 3]), (2, [0, 2, 0]), (6, [0, 2, 1]),
    (3, [0, 2, 2]), (-1, [0, 3, 0]), (-1, [0, 3, 1]), (7, [1, 0, 0]), (5, [1, 0, 1]),
    (-3, [1, 0, 2]), (-2, [1, 0, 3]), (4, [1, 1, 0]), (12, [1, 1, 1]), (6, [1, 1, 2]),
    (-6, [1, 2, 0]), (-5, [1, 2, 1]), (1, [1, 3, 0]), (2, [2, 0, 0]), (6, [2, 0, 1]),
    (3, [2, 0, 2]), (-6, [2, 1, 0]), (-5, [2, 1, 1]), (2, [2, 2, 0]), (-1, [3, 0, 0]),
    (-1, [3, 0, 1]), (1, [3, 1, 0]),
];

// S1, variables (a, m, r)
const S1_C2: Monomials<3> = &[
    (16, [0, 0, 0]), (40, [0, 0, 1]), (36, [0, 0, 2]), (14, [0, 0, 3]), (2, [0, 0, 4]),
    (-16, [0, 1, 0]), (-28, [0, 1, 1]), (-16, [0, 1, 2]), (-3, [0, 1, 3]), (4, [0, 2, 0]),
    (4, [0, 2, 1]), (1, [0, 2, 2]), (-16, [1, 0, 0]), (-28, [1, 0, 1]), (-16, [1, 0, 2]),
    (-3, [1, 0, 3]), (12, [1, 1, 0]), (14, [1, 1, 1]), (4, [1, 1, 2]), (-2, [1, 2, 0]),
    (-1, [1, 2, 1]), (4, [2, 0, 0]), (4, [2, 0, 1]), (1, [2, 0, 2]), (-2, [2, 1, 0]),
    (-1, [2, 1, 1]),
];

// S2, variables (a, b, m, r, w)
const S2_C0: Monomials<5> = &[
    (-4, [0, 0, 0, 0, 0]), (-9, [0, 0, 0, 0, 1]), (-6, [0, 0, 0, 0, 2]), (-1, [0, 0, 0, 0, 3]),
    (-14, [0, 0, 0, 1, 0]), (-23, [0, 0, 0, 1, 1]), (-10, [0, 0, 0, 1, 2]),
    (-1, [0, 0, 0, 1, 3]), (-18, [0, 0, 0, 2, 0]), (-19, [0, 0, 0, 2, 1]),
    (-4, [0, 0, 0, 2, 2]), (-10, [0, 0, 0, 3, 0]), (-5, [0, 0, 0, 3, 1]),
    (-2, [0, 0, 0, 4, 0]), (9, [0, 0, 1, 0, 0]), (12, [0, 0, 1, 0, 1]), (3, [0, 0, 1, 0, 2]),
    (23, [0, 0, 1, 1, 0]), (20, [0, 0, 1, 1, 1]), (3, [0, 0, 1, 1, 2]), (19, [0, 0, 1, 2, 0]),
    (8, [0, 0, 1, 2, 1]), (5, [0, 0, 1, 3, 0]), (-6, [0, 0, 2, 0, 0]), (-3, [0, 0, 2, 0, 1]),
    (-10, [0, 0, 2, 1, 0]), (-3, [0, 0, 2, 1, 1]), (-4, [0, 0, 2, 2, 0]), (1, [0, 0, 3, 0, 0]),
    (1, [0, 0, 3, 1, 0]), (9, [0, 1, 0, 0, 0]), (12, [0, 1, 0, 0, 1]), (3, [0, 1, 0, 0, 2]),
    (23, [0, 1, 0, 1, 0]), (20, [0, 1, 0, 1, 1]), (3, [0, 1, 0, 1, 2]), (19, [0, 1, 0, 2, 0]),
    (8, [0, 1, 0, 2, 1]), (5, [0, 1, 0, 3, 0]), (-12, [0, 1, 1, 0, 0]), (-6, [0, 1, 1, 0, 1]),
    (-20, [0, 1, 1, 1, 0]), (-6, [0, 1, 1, 1, 1]), (-8, [0, 1, 1, 2, 0]), (3, [0, 1, 2, 0, 0]),
    (3, [0, 1, 2, 1, 0]), (-6, [0, 2, 0, 0, 0]), (-3, [0, 2, 0, 0, 1]), (-10, [0, 2, 0, 1, 0]),
    (-3, [0, 2, 0, 1, 1]), (-4, [0, 2, 0, 2, 0]), (3, [0, 2, 1, 0, 0]), (3, [0, 2, 1, 1, 0]),
    (1, [0, 3, 0, 0, 0]), (1, [0, 3, 0, 1, 0]), (9, [1, 0, 0, 0, 0]), (16, [1, 0, 0, 0, 1]),
    (8, [1, 0, 0, 0, 2]), (1, [1, 0, 0, 0, 3]), (23, [1, 0, 0, 1, 0]), (26, [1, 0, 0, 1, 1]),
    (6, [1, 0, 0, 1, 2]), (19, [1, 0, 0, 2, 0]), (10, [1, 0, 0, 2, 1]), (5, [1, 0, 0, 3, 0]),
    (-16, [1, 0, 1, 0, 0]), (-16, [1, 0, 1, 0, 1]), (-3, [1, 0, 1, 0, 2]),
    (-26, [1, 0, 1, 1, 0]), (-12, [1, 0, 1, 1, 1]), (-10, [1, 0, 1, 2, 0]),
    (8, [1, 0, 2, 0, 0]), (3, [1, 0, 2, 0, 1]), (6, [1, 0, 2, 1, 0]), (-1, [1, 0, 3, 0, 0]),
    (-16, [1, 1, 0, 0, 0]), (-16, [1, 1, 0, 0, 1]), (-3, [1, 1, 0, 0, 2]),
    (-26, [1, 1, 0, 1, 0]), (-12, [1, 1, 0, 1, 1]), (-10, [1, 1, 0, 2, 0]),
    (16, [1, 1, 1, 0, 0]), (6, [1, 1, 1, 0, 1]), (12, [1, 1, 1, 1, 0]), (-3, [1, 1, 2, 0, 0]),
    (8, [1, 2, 0, 0, 0]), (3, [1, 2, 0, 0, 1]), (6, [1, 2, 0, 1, 0]), (-3, [1, 2, 1, 0, 0]),
    (-1, [1, 3, 0, 0, 0]), (-6, [2, 0, 0, 0, 0]), (-8, [2, 0, 0, 0, 1]), (-2, [2, 0, 0, 0, 2]),
    (-10, [2, 0, 0, 1, 0]), (-6, [2, 0, 0, 1, 1]), (-4, [2, 0, 0, 2, 0]), (8, [2, 0, 1, 0, 0]),
    (4, [2, 0, 1, 0, 1]), (6, [2, 0, 1, 1, 0]), (-2, [2, 0, 2, 0, 0]), (8, [2, 1, 0, 0, 0]),
    (4, [2, 1, 0, 0, 1]), (6, [2, 1, 0, 1, 0]), (-4, [2, 1, 1, 0, 0]), (-2, [2, 2, 0, 0, 0]),
    (1, [3, 0, 0, 0, 0]), (1, [3, 0, 0, 0, 1]), (1, [3, 0, 0, 1, 0]), (-1, [3, 0, 1, 0, 0]),
    (-1, [3, 1, 0, 0, 0]),
];

// S2, variables (a, b, m, r, w)
const S2_C1: Monomials<5> = &[
    (-12, [0, 0, 0, 0, 0]), (-31, [0, 0, 0, 0, 1]), (-24, [0, 0, 0, 0, 2]),
    (-8, [0, 0, 0, 0, 3]), (-1, [0, 0, 0, 0, 4]), (-26, [0, 0, 0, 1, 0]),
    (-57, [0, 0, 0, 1, 1]), (-30, [0, 0, 0, 1, 2]), (-5, [0, 0, 0, 1, 3]),
    (-18, [0, 0, 0, 2, 0]), (-33, [0, 0, 0, 2, 1]), (-9, [0, 0, 0, 2, 2]),
    (-4, [0, 0, 0, 3, 0]), (-6, [0, 0, 0, 3, 1]), (7, [0, 0, 1, 0, 0]), (22, [0, 0, 1, 0, 1]),
    (15, [0, 0, 1, 0, 2]), (3, [0, 0, 1, 0, 3]), (5, [0, 0, 1, 1, 0]), (24, [0, 0, 1, 1, 1]),
    (9, [0, 0, 1, 1, 2]), (-3, [0, 0, 1, 2, 0]), (6, [0, 0, 1, 2, 1]), (-2, [0, 0, 1, 3, 0]),
    (2, [0, 0, 2, 0, 0]), (-6, [0, 0, 2, 0, 1]), (-3, [0, 0, 2, 0, 2]), (6, [0, 0, 2, 1, 0]),
    (-3, [0, 0, 2, 1, 1]), (3, [0, 0, 2, 2, 0]), (-1, [0, 0, 3, 0, 0]), (1, [0, 0, 3, 0, 1]),
    (-1, [0, 0, 3, 1, 0]), (19, [0, 1, 0, 0, 0]), (35, [0, 1, 0, 0, 1]), (18, [0, 1, 0, 0, 2]),
    (3, [0, 1, 0, 0, 3]), (31, [0, 1, 0, 1, 0]), (42, [0, 1, 0, 1, 1]), (11, [0, 1, 0, 1, 2]),
    (15, [0, 1, 0, 2, 0]), (12, [0, 1, 0, 2, 1]), (2, [0, 1, 0, 3, 0]), (-9, [0, 1, 1, 0, 0]),
    (-18, [0, 1, 1, 0, 1]), (-6, [0, 1, 1, 0, 2]), (-6, [0, 1, 1, 1, 0]),
    (-10, [0, 1, 1, 1, 1]), (3, [0, 1, 2, 0, 1]), (-1, [0, 1, 2, 1, 0]),
    (-11, [0, 2, 0, 0, 0]), (-12, [0, 2, 0, 0, 1]), (-3, [0, 2, 0, 0, 2]),
    (-12, [0, 2, 0, 1, 0]), (-7, [0, 2, 0, 1, 1]), (-3, [0, 2, 0, 2, 0]), (3, [0, 2, 1, 0, 0]),
    (3, [0, 2, 1, 0, 1]), (1, [0, 2, 1, 1, 0]), (2, [0, 3, 0, 0, 0]), (1, [0, 3, 0, 0, 1]),
    (1, [0, 3, 0, 1, 0]), (19, [1, 0, 0, 0, 0]), (35, [1, 0, 0, 0, 1]), (18, [1, 0, 0, 0, 2]),
    (3, [1, 0, 0, 0, 3]), (31, [1, 0, 0, 1, 0]), (42, [1, 0, 0, 1, 1]), (11, [1, 0, 0, 1, 2]),
    (15, [1, 0, 0, 2, 0]), (12, [1, 0, 0, 2, 1]), (2, [1, 0, 0, 3, 0]), (-9, [1, 0, 1, 0, 0]),
    (-18, [1, 0, 1, 0, 1]), (-6, [1, 0, 1, 0, 2]), (-6, [1, 0, 1, 1, 0]),
    (-10, [1, 0, 1, 1, 1]), (3, [1, 0, 2, 0, 1]), (-1, [1, 0, 2, 1, 0]),
    (-22, [1, 1, 0, 0, 0]), (-27, [1, 1, 0, 0, 1]), (-7, [1, 1, 0, 0, 2]),
    (-24, [1, 1, 0, 1, 0]), (-16, [1, 1, 0, 1, 1]), (-6, [1, 1, 0, 2, 0]),
    (9, [1, 1, 1, 0, 0]), (8, [1, 1, 1, 0, 1]), (4, [1, 1, 1, 1, 0]), (-1, [1, 1, 2, 0, 0]),
    (9, [1, 2, 0, 0, 0]), (5, [1, 2, 0, 0, 1]), (5, [1, 2, 0, 1, 0]), (-2, [1, 2, 1, 0, 0]),
    (-1, [1, 3, 0, 0, 0]), (-11, [2, 0, 0, 0, 0]), (-12, [2, 0, 0, 0, 1]),
    (-3, [2, 0, 0, 0, 2]), (-12, [2, 0, 0, 1, 0]), (-7, [2, 0, 0, 1, 1]),
    (-3, [2, 0, 0, 2, 0]), (3, [2, 0, 1, 0, 0]), (3, [2, 0, 1, 0, 1]), (1, [2, 0, 1, 1, 0]),
    (9, [2, 1, 0, 0, 0]), (5, [2, 1, 0, 0, 1]), (5, [2, 1, 0, 1, 0]), (-2, [2, 1, 1, 0, 0]),
    (-2, [2, 2, 0, 0, 0]), (2, [3, 0, 0, 0, 0]), (1, [3, 0, 0, 0, 1]), (1, [3, 0, 0, 1, 0]),
    (-1, [3, 1, 0, 0, 0]),
];

// S2, variables (a, b, m, r, w)
const S2_C2: Monomials<5> = &[
    (16, [0, 0, 0, 0, 0]), (16, [0, 0, 0, 0, 1]), (4, [0, 0, 0, 0, 2]), (40, [0, 0, 0, 1, 0]),
    (28, [0, 0, 0, 1, 1]), (4, [0, 0, 0, 1, 2]), (36, [0, 0, 0, 2, 0]), (16, [0, 0, 0, 2, 1]),
    (1, [0, 0, 0, 2, 2]), (14, [0, 0, 0, 3, 0]), (3, [0, 0, 0, 3, 1]), (2, [0, 0, 0, 4, 0]),
    (-16, [0, 0, 1, 0, 0]), (-8, [0, 0, 1, 0, 1]), (-28, [0, 0, 1, 1, 0]),
    (-8, [0, 0, 1, 1, 1]), (-16, [0, 0, 1, 2, 0]), (-2, [0, 0, 1, 2, 1]),
    (-3, [0, 0, 1, 3, 0]), (4, [0, 0, 2, 0, 0]), (4, [0, 0, 2, 1, 0]), (1, [0, 0, 2, 2, 0]),
    (-16, [0, 1, 0, 0, 0]), (-12, [0, 1, 0, 0, 1]), (-2, [0, 1, 0, 0, 2]),
    (-28, [0, 1, 0, 1, 0]), (-14, [0, 1, 0, 1, 1]), (-1, [0, 1, 0, 1, 2]),
    (-16, [0, 1, 0, 2, 0]), (-4, [0, 1, 0, 2, 1]), (-3, [0, 1, 0, 3, 0]),
    (12, [0, 1, 1, 0, 0]), (4, [0, 1, 1, 0, 1]), (14, [0, 1, 1, 1, 0]), (2, [0, 1, 1, 1, 1]),
    (4, [0, 1, 1, 2, 0]), (-2, [0, 1, 2, 0, 0]), (-1, [0, 1, 2, 1, 0]), (4, [0, 2, 0, 0, 0]),
    (2, [0, 2, 0, 0, 1]), (4, [0, 2, 0, 1, 0]), (1, [0, 2, 0, 1, 1]), (1, [0, 2, 0, 2, 0]),
    (-2, [0, 2, 1, 0, 0]), (-1, [0, 2, 1, 1, 0]), (-16, [1, 0, 0, 0, 0]),
    (-8, [1, 0, 0, 0, 1]), (-28, [1, 0, 0, 1, 0]), (-8, [1, 0, 0, 1, 1]),
    (-16, [1, 0, 0, 2, 0]), (-2, [1, 0, 0, 2, 1]), (-3, [1, 0, 0, 3, 0]), (8, [1, 0, 1, 0, 0]),
    (8, [1, 0, 1, 1, 0]), (2, [1, 0, 1, 2, 0]), (12, [1, 1, 0, 0, 0]), (4, [1, 1, 0, 0, 1]),
    (14, [1, 1, 0, 1, 0]), (2, [1, 1, 0, 1, 1]), (4, [1, 1, 0, 2, 0]), (-4, [1, 1, 1, 0, 0]),
    (-2, [1, 1, 1, 1, 0]), (-2, [1, 2, 0, 0, 0]), (-1, [1, 2, 0, 1, 0]), (4, [2, 0, 0, 0, 0]),
    (4, [2, 0, 0, 1, 0]), (1, [2, 0, 0, 2, 0]), (-2, [2, 1, 0, 0, 0]), (-1, [2, 1, 0, 1, 0]),
];

// Small points, mixed signs, drawn once by hand.
const S1_POINTS: [[i128; 3]; 5] = [[1, 7, 2], [3, -2, 5], [0, 11, 4], [-4, 6, -1], [2, 9, 3]];
const S2_POINTS: [[i128; 5]; 5] = [
    [1, 2, 7, 3, 0],
    [3, 1, -2, 5, 1],
    [2, 2, 9, 4, 1],
    [-1, 4, 6, -3, 2],
    [5, -3, 8, 2, -2],
];

#[test]
fn s1_coefficients_match_expanded_copy() {
    for [a, m, r] in S1_POINTS {
        let got = RecurrenceCertificate::s1_coefficients(a, m, r);
        let want = [S1_C0, S1_C1, S1_C2].map(|p| eval(p, [a, m, r]));
        assert_eq!(got, want, "(a, m, r) = ({a}, {m}, {r})");
    }
}

#[test]
fn s2_coefficients_match_expanded_copy() {
    for [a, b, m, r, w] in S2_POINTS {
        let got = RecurrenceCertificate::s2_coefficients(a, b, m, r, w);
        let want = [S2_C0, S2_C1, S2_C2].map(|p| eval(p, [a, b, m, r, w]));
        assert_eq!(got, want, "(a, b, m, r, w) = ({a}, {b}, {m}, {r}, {w})");
    }
}

#[test]
fn a_single_changed_term_is_detected() {
    // The comparison is sharp: perturbing one monomial changes some value.
    let mut perturbed: Vec<(i128, [u32; 5])> = S2_C1.to_vec();
    perturbed[17].0 += 1;
    assert!(S2_POINTS.iter().any(|&p| eval(&perturbed, p) != eval(S2_C1, p)));
}
