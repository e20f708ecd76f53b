//! The integer-graded ternary algebra: structure constants, sparse
//! elements, the trilinear bracket, and the fundamental identity.
//!
//! Basis {L_n : n ∈ Z}; the bracket of three generators is
//! [L_l, L_m, L_n] = D(l,m,n) · L_{l+m+n−1}, where D is the determinant
//! with rows ((−1)^l, (−1)^m, (−1)^n), (1, 1, 1), (l, m, n).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{fmt_scalar, int, Scalar};

/// (−1)^n as an integer sign.
pub fn parity_sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Structure-constant determinant D(l,m,n) as a plain integer.
///
/// Expanded along the first row: p_l(n−m) − p_m(n−l) + p_n(m−l) with
/// p_i = (−1)^i.
pub fn det3_int(l: i64, m: i64, n: i64) -> i64 {
    parity_sign(l) * (n - m) - parity_sign(m) * (n - l) + parity_sign(n) * (m - l)
}

/// Structure-constant determinant D(l,m,n) as an exact scalar.
pub fn det3(l: i64, m: i64, n: i64) -> Scalar {
    int(det3_int(l, m, n))
}

/// Closed-form vanishing criterion: D(l,m,n)=0 exactly when two indices
/// are equal or all three have the same parity.
pub fn det3_vanishes_closed_form(l: i64, m: i64, n: i64) -> bool {
    l == m
        || m == n
        || l == n
        || (parity_sign(l) == parity_sign(m) && parity_sign(m) == parity_sign(n))
}

/// A sparse formal linear combination of basis generators, with exact
/// rational coefficients and zero terms pruned.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<i64, Scalar>,
}

impl Element {
    /// The zero element.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term c·L_i (zero element if c = 0).
    pub fn term(i: i64, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    /// The basis generator L_i.
    pub fn generator(i: i64) -> Self {
        Self::term(i, int(1))
    }

    /// Whether this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add c·L_i in place, pruning the slot if it cancels to zero.
    pub fn add_term(&mut self, i: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(i).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    /// Sum of two elements.
    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            out.add_term(i, c.clone());
        }
        out
    }

    /// Difference of two elements.
    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            out.add_term(i, -c.clone());
        }
        out
    }

    /// The element scaled by c.
    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        for (&i, v) in &self.terms {
            out.add_term(i, v * c);
        }
        out
    }

    /// Terms in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }
}

impl fmt::Display for Element {
    /// Terms sorted by ascending index, each printed `c*L_i`; `0` for the
    /// zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| format!("{}*L_{}", fmt_scalar(c), i))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Trilinear, fully skew-symmetric bracket extended to sparse elements.
pub fn bracket(x: &Element, y: &Element, z: &Element) -> Element {
    let mut out = Element::zero();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            for (k, c) in z.iter() {
                let d = det3_int(i, j, k);
                if d != 0 {
                    out.add_term(i + j + k - 1, a * b * c * int(d));
                }
            }
        }
    }
    out
}

/// Bracket of three generators: D(l,m,n) · L_{l+m+n−1}.
pub fn bracket_indices(l: i64, m: i64, n: i64) -> Element {
    Element::term(l + m + n - 1, det3(l, m, n))
}

/// Fundamental-identity residual
/// [[x1,x2,x3],y2,y3] − [[x1,y2,y3],x2,x3] − [[x2,y2,y3],x3,x1] − [[x3,y2,y3],x1,x2];
/// identically zero because the bracket satisfies the fundamental identity.
pub fn fundamental_identity_residual(
    x1: &Element,
    x2: &Element,
    x3: &Element,
    y2: &Element,
    y3: &Element,
) -> Element {
    let lhs = bracket(&bracket(x1, x2, x3), y2, y3);
    let r1 = bracket(&bracket(x1, y2, y3), x2, x3);
    let r2 = bracket(&bracket(x2, y2, y3), x3, x1);
    let r3 = bracket(&bracket(x3, y2, y3), x1, x2);
    lhs.sub(&r1).sub(&r2).sub(&r3)
}

/// A triple whose bracket hits L_t with a nonzero coefficient, witnessing
/// that every generator is reachable from the bracket.
///
/// Uses (0,1,t) whenever D(0,1,t) = 2t−1+(−1)^t is nonzero, and the two
/// exceptional triples for t ∈ {0, 1}.
pub fn bracket_generates(t: i64) -> (i64, i64, i64) {
    match t {
        0 => (1, 2, -2),
        1 => (2, 3, -3),
        _ => (0, 1, t),
    }
}

/// Deterministic stream of generator-index quintuples with each index
/// drawn uniformly from [−radius, radius].
pub fn random_generator_quintuples(radius: i64, count: usize, seed: u64) -> Vec<[i64; 5]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut q = [0i64; 5];
            for slot in &mut q {
                *slot = rng.gen_range(-radius..=radius);
            }
            q
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn det3_spot_values() {
        assert_eq!(det3_int(0, 1, 2), 4);
        assert_eq!(det3_int(1, 2, 3), -4);
        assert_eq!(det3_int(1, 2, -2), 8);
        assert_eq!(det3_int(2, 3, -3), -12);
        assert_eq!(det3_int(0, 1, 5), 8);
        assert_eq!(det3_int(1, 3, 4), 4);
        assert_eq!(det3_int(0, 3, 4), 8);
        assert_eq!(det3_int(0, 2, 4), 0);
        assert_eq!(det3_int(1, 1, 5), 0);
        assert_eq!(det3_int(1, 3, 5), 0);
        assert_eq!(det3_int(2, 2, 9), 0);
        assert_eq!(det3(0, 1, 2), int(4));
    }

    #[test]
    fn closed_form_matches_on_cube() {
        for l in -8..=8 {
            for m in -8..=8 {
                for n in -8..=8 {
                    assert_eq!(
                        det3_int(l, m, n) == 0,
                        det3_vanishes_closed_form(l, m, n),
                        "mismatch at ({l},{m},{n})"
                    );
                }
            }
        }
        assert!(det3_vanishes_closed_form(7, 7, 2));
        assert!(det3_vanishes_closed_form(1, 3, 5));
        assert!(!det3_vanishes_closed_form(0, 1, 2));
    }

    #[test]
    fn element_printing() {
        assert_eq!(bracket_indices(0, 1, 2).to_string(), "4*L_2");
        assert_eq!(bracket_indices(1, 3, 5).to_string(), "0");
        let mut e = Element::zero();
        e.add_term(3, int(-5));
        e.add_term(-1, int(1) / int(2));
        assert_eq!(e.to_string(), "1/2*L_-1 + -5*L_3");
    }

    #[test]
    fn bracket_is_trilinear() {
        let two_l0 = Element::term(0, int(2));
        let got = bracket(&two_l0, &Element::generator(1), &Element::generator(2));
        assert_eq!(got.to_string(), "8*L_2");
    }

    #[test]
    fn bracket_generates_every_target() {
        for t in -50..=50 {
            let (l, m, n) = bracket_generates(t);
            assert_eq!(l + m + n - 1, t);
            assert_ne!(det3_int(l, m, n), 0, "t={t}");
            let e = bracket_indices(l, m, n);
            assert!(e.iter().any(|(i, c)| i == t && !c.is_zero()), "t={t}");
        }
    }

    #[test]
    fn quintuple_stream_is_deterministic() {
        let a = random_generator_quintuples(8, 50, 17);
        let b = random_generator_quintuples(8, 50, 17);
        assert_eq!(a, b);
        assert!(a.iter().flatten().all(|&i| (-8..=8).contains(&i)));
        let c = random_generator_quintuples(8, 50, 18);
        assert_ne!(a, c);
    }

    fn transpositions() -> [fn(i64, i64, i64) -> (i64, i64, i64); 3] {
        [
            |l, m, n| (m, l, n),
            |l, m, n| (l, n, m),
            |l, m, n| (n, m, l),
        ]
    }

    proptest! {
        #[test]
        fn det3_skew_symmetric(l in -40i64..40, m in -40i64..40, n in -40i64..40) {
            for t in transpositions() {
                let (a, b, c) = t(l, m, n);
                prop_assert_eq!(det3_int(a, b, c), -det3_int(l, m, n));
            }
        }

        #[test]
        fn det3_reflection_symmetry(l in -40i64..40, m in -40i64..40, n in -40i64..40) {
            // the index reflection i ↦ 1−i preserves D exactly
            prop_assert_eq!(det3_int(1 - l, 1 - m, 1 - n), det3_int(l, m, n));
        }

        #[test]
        fn bracket_skew_symmetric_on_generators(
            l in -10i64..=10, m in -10i64..=10, n in -10i64..=10,
        ) {
            let (gl, gm, gn) = (
                Element::generator(l),
                Element::generator(m),
                Element::generator(n),
            );
            let base = bracket(&gl, &gm, &gn);
            prop_assert_eq!(&bracket(&gm, &gl, &gn).add(&base), &Element::zero());
            prop_assert_eq!(&bracket(&gl, &gn, &gm).add(&base), &Element::zero());
            prop_assert_eq!(&bracket(&gn, &gm, &gl).add(&base), &Element::zero());
            prop_assert_eq!(&bracket(&gm, &gn, &gl).sub(&base), &Element::zero());
            prop_assert_eq!(&bracket(&gn, &gl, &gm).sub(&base), &Element::zero());
        }

        #[test]
        fn fundamental_identity_holds(
            x1 in -8i64..=8, x2 in -8i64..=8, x3 in -8i64..=8,
            y2 in -8i64..=8, y3 in -8i64..=8,
        ) {
            let g = Element::generator;
            let r = fundamental_identity_residual(&g(x1), &g(x2), &g(x3), &g(y2), &g(y3));
            prop_assert!(r.is_zero());
        }

        #[test]
        fn fundamental_identity_on_sums(
            x1 in -6i64..=6, x2 in -6i64..=6, x3 in -6i64..=6,
            y2 in -6i64..=6, y3 in -6i64..=6,
        ) {
            // mixed two-term arguments exercise true trilinearity
            let g = Element::generator;
            let s1 = g(x1).add(&g(y3).scale(&int(3)));
            let s2 = g(x2).sub(&g(x3));
            let r = fundamental_identity_residual(&s1, &s2, &g(x3), &g(y2), &g(y3));
            prop_assert!(r.is_zero());
        }

        #[test]
        fn element_arithmetic_cancels(i in -20i64..20, n in -50i64..50) {
            let c = int(n);
            let e = Element::term(i, c.clone());
            prop_assert!(e.sub(&Element::term(i, c)).is_zero());
        }
    }
}
