//! Homogeneous shift operators R(L_m) = f(m+k)·L_{m+k} and the residual of
//! the weighted operator identity on bracket triples.
//!
//! For a triple (l, m, n), weight λ, and t = l+m+n, the residual
//! [RL_l, RL_m, RL_n] − R(Σ pair terms + λ·Σ single terms + λ²·[L_l,L_m,L_n])
//! is supported on the three grades g_j = t + j·k − 1. It references f at
//! exactly six positions — l+k, m+k, n+k, g₃, g₂, g₁ — and a triple is
//! checked only when all six are covered; otherwise it is skipped with the
//! first missing position reported.

use std::collections::BTreeSet;

use crate::algebra::{bracket, det3_int, Element};
use crate::catalog::CoeffSpec;
use crate::scalar::{int, Scalar};
use crate::window::Window;
use crate::Error;

/// A homogeneous degree-k operator determined by a coefficient assignment.
#[derive(Clone, Debug)]
pub struct HomOp {
    k: i64,
    f: CoeffSpec,
}

/// Result of evaluating the residual on one triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RbOutcome {
    /// All referenced coefficient positions were covered; the residual.
    Checked(Element),
    /// A referenced position was uncovered; the first one found.
    Skipped { triple: [i64; 3], missing: i64 },
}

impl RbOutcome {
    /// The residual element, when the triple was checked.
    pub fn residual(&self) -> Option<&Element> {
        match self {
            RbOutcome::Checked(e) => Some(e),
            RbOutcome::Skipped { .. } => None,
        }
    }

    /// Whether the triple was checked and its residual vanishes.
    pub fn is_zero(&self) -> bool {
        matches!(self, RbOutcome::Checked(e) if e.is_zero())
    }
}

/// The six coefficient positions referenced by the residual of (l, m, n).
pub fn referenced_positions(k: i64, l: i64, m: i64, n: i64) -> [i64; 6] {
    let t = l + m + n;
    [
        l + k,
        m + k,
        n + k,
        t + 3 * k - 1,
        t + 2 * k - 1,
        t + k - 1,
    ]
}

impl HomOp {
    pub fn new(k: i64, f: CoeffSpec) -> Self {
        Self { k, f }
    }

    /// Grading shift k.
    pub fn shift(&self) -> i64 {
        self.k
    }

    /// The coefficient assignment.
    pub fn coeffs(&self) -> &CoeffSpec {
        &self.f
    }

    /// Apply the operator to an element: c·L_i ↦ c·f(i+k)·L_{i+k}.
    ///
    /// Fails when f is undefined at a referenced target index.
    pub fn apply(&self, x: &Element) -> Result<Element, Error> {
        let mut out = Element::zero();
        for (i, c) in x.iter() {
            let target = i + self.k;
            let v = self
                .f
                .eval(target)
                .ok_or(Error::Uncovered { index: target })?;
            out.add_term(target, c * &v);
        }
        Ok(out)
    }

    fn coverage_gap(&self, l: i64, m: i64, n: i64) -> Option<i64> {
        referenced_positions(self.k, l, m, n)
            .into_iter()
            .find(|&p| !self.f.covers(p))
    }

    /// Residual of the weighted identity on (l, m, n), computed
    /// compositionally from `apply` and the bracket.
    pub fn rb_residual(&self, weight: &Scalar, l: i64, m: i64, n: i64) -> RbOutcome {
        if let Some(missing) = self.coverage_gap(l, m, n) {
            return RbOutcome::Skipped {
                triple: [l, m, n],
                missing,
            };
        }
        let covered = "all referenced positions pre-checked";
        let (gl, gm, gn) = (
            Element::generator(l),
            Element::generator(m),
            Element::generator(n),
        );
        let rl = self.apply(&gl).expect(covered);
        let rm = self.apply(&gm).expect(covered);
        let rn = self.apply(&gn).expect(covered);
        let lhs = bracket(&rl, &rm, &rn);
        let pairs = bracket(&rl, &rm, &gn)
            .add(&bracket(&rl, &gm, &rn))
            .add(&bracket(&gl, &rm, &rn));
        let singles = bracket(&rl, &gm, &gn)
            .add(&bracket(&gl, &rm, &gn))
            .add(&bracket(&gl, &gm, &rn));
        let lambda_sq = weight * weight;
        let inner = pairs
            .add(&singles.scale(weight))
            .add(&bracket(&gl, &gm, &gn).scale(&lambda_sq));
        let rhs = self.apply(&inner).expect(covered);
        RbOutcome::Checked(lhs.sub(&rhs))
    }

    /// Residual of the weighted identity on (l, m, n) from the graded
    /// closed form: one coefficient per grade g₃, g₂, g₁.
    ///
    /// Kept as an independent second evaluation path; tests pin it against
    /// [`HomOp::rb_residual`].
    pub fn rb_residual_expanded(&self, weight: &Scalar, l: i64, m: i64, n: i64) -> RbOutcome {
        if let Some(missing) = self.coverage_gap(l, m, n) {
            return RbOutcome::Skipped {
                triple: [l, m, n],
                missing,
            };
        }
        let k = self.k;
        let t = l + m + n;
        let (g3, g2, g1) = (t + 3 * k - 1, t + 2 * k - 1, t + k - 1);
        let ev = |i: i64| self.f.eval(i).expect("all referenced positions pre-checked");
        let (fl, fm, fn_) = (ev(l + k), ev(m + k), ev(n + k));
        let (fg3, fg2, fg1) = (ev(g3), ev(g2), ev(g1));
        let c3 = &fl * &fm * &fn_ * int(det3_int(l + k, m + k, n + k))
            - &fg3
                * (&fl * &fm * int(det3_int(l + k, m + k, n))
                    + &fl * &fn_ * int(det3_int(l + k, m, n + k))
                    + &fm * &fn_ * int(det3_int(l, m + k, n + k)));
        let c2 = -(weight
            * &fg2
            * (&fl * int(det3_int(l + k, m, n))
                + &fm * int(det3_int(l, m + k, n))
                + &fn_ * int(det3_int(l, m, n + k))));
        let c1 = -(weight * weight * &fg1 * int(det3_int(l, m, n)));
        let mut out = Element::zero();
        out.add_term(g3, c3);
        out.add_term(g2, c2);
        out.add_term(g1, c1);
        RbOutcome::Checked(out)
    }

    /// Divide the coefficients by `lambda`, turning a weight-λ solution
    /// into the equivalent weight-1 solution with the same shift.
    pub fn rescale_weight(&self, lambda: &Scalar) -> Result<HomOp, Error> {
        if lambda == &int(0) {
            return Err(Error::Params(
                "weight rescaling requires a nonzero weight".to_string(),
            ));
        }
        Ok(HomOp {
            k: self.k,
            f: CoeffSpec::Scaled {
                base: Box::new(self.f.clone()),
                factor: int(1) / lambda,
            },
        })
    }
}

/// For shift 0 the residual of (l, m, n) collapses to the single grade
/// t−1 with coefficient D(l,m,n)·(xyz − S_λ(x,y,z)·f(t−1)); this returns
/// the bracketed factor, or None when a referenced position is uncovered.
pub fn k0_bracket_factor(
    f: &CoeffSpec,
    weight: &Scalar,
    l: i64,
    m: i64,
    n: i64,
) -> Option<Scalar> {
    let x = f.eval(l)?;
    let y = f.eval(m)?;
    let z = f.eval(n)?;
    let w = f.eval(l + m + n - 1)?;
    let s = &x * &y + &x * &z + &y * &z
        + weight * (&x + &y + &z)
        + weight * weight;
    Some(&x * &y * &z - s * w)
}

/// Counts and capped witnesses from a residual sweep.
#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub checked: u64,
    pub skipped: u64,
    pub failed: u64,
    /// Up to ten failing triples with their residuals, in sweep order.
    pub witnesses: Vec<([i64; 3], Element)>,
}

/// Evaluate the residual on every ordered triple of window indices,
/// in lexicographic order; optionally stop at the first failure.
pub fn rb_sweep(
    op: &HomOp,
    weight: &Scalar,
    window: Window,
    stop_at_first: bool,
) -> SweepReport {
    let mut report = SweepReport::default();
    for l in window.indices() {
        for m in window.indices() {
            for n in window.indices() {
                match op.rb_residual(weight, l, m, n) {
                    RbOutcome::Skipped { .. } => report.skipped += 1,
                    RbOutcome::Checked(res) => {
                        report.checked += 1;
                        if !res.is_zero() {
                            report.failed += 1;
                            if report.witnesses.len() < 10 {
                                report.witnesses.push(([l, m, n], res));
                            }
                            if stop_at_first {
                                return report;
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// First failure of a shift-0 factor sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Failure {
    pub triple: [i64; 3],
    pub factor: Scalar,
}

/// Counts and first failure from a shift-0 factor sweep.
#[derive(Clone, Debug, Default)]
pub struct K0SweepReport {
    pub checked: u64,
    pub skipped: u64,
    pub failed: u64,
    pub first_failure: Option<K0Failure>,
}

/// Sweep the shift-0 residual factor over every ordered triple of window
/// indices in lexicographic order. A triple fails when D(l,m,n) ≠ 0 and
/// the factor is nonzero; optionally stop at the first failure.
pub fn k0_factor_sweep(
    f: &CoeffSpec,
    weight: &Scalar,
    window: Window,
    stop_at_first: bool,
) -> K0SweepReport {
    let mut report = K0SweepReport::default();
    for l in window.indices() {
        for m in window.indices() {
            for n in window.indices() {
                match k0_bracket_factor(f, weight, l, m, n) {
                    None => report.skipped += 1,
                    Some(factor) => {
                        report.checked += 1;
                        if det3_int(l, m, n) != 0 && factor != int(0) {
                            report.failed += 1;
                            if report.first_failure.is_none() {
                                report.first_failure = Some(K0Failure {
                                    triple: [l, m, n],
                                    factor,
                                });
                            }
                            if stop_at_first {
                                return report;
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// Instance counts and grade coverage of a nonzero-shift residual check.
#[derive(Clone, Debug, Default)]
pub struct KCollapseReport {
    pub checked: u64,
    pub skipped: u64,
    pub failed: u64,
    /// Sorted grades g₁ hit by some checked instance with D(l,m,n) ≠ 0.
    pub reachable: Vec<i64>,
    /// Up to ten failing triples with their residuals.
    pub witnesses: Vec<([i64; 3], Element)>,
}

/// Check the residual of a nonzero-shift operator over every source triple
/// l < m < n with l+k, m+k, n+k in the window.
///
/// An instance is checked when all three residual grades fall inside the
/// window (and the coefficients cover every referenced position), and
/// skipped otherwise.
pub fn check_k_collapse(
    op: &HomOp,
    weight: &Scalar,
    window: Window,
) -> Result<KCollapseReport, Error> {
    let k = op.shift();
    if k == 0 {
        return Err(Error::Params(
            "shift-collapse check requires a nonzero shift k".to_string(),
        ));
    }
    let src: Vec<i64> = ((window.lo() - k)..=(window.hi() - k)).collect();
    let mut report = KCollapseReport::default();
    let mut reachable = BTreeSet::new();
    for a in 0..src.len() {
        for b in (a + 1)..src.len() {
            for c in (b + 1)..src.len() {
                let (l, m, n) = (src[a], src[b], src[c]);
                let t = l + m + n;
                let grades = [t + 3 * k - 1, t + 2 * k - 1, t + k - 1];
                if grades.iter().any(|&g| !window.contains(g)) {
                    report.skipped += 1;
                    continue;
                }
                match op.rb_residual_expanded(weight, l, m, n) {
                    RbOutcome::Skipped { .. } => report.skipped += 1,
                    RbOutcome::Checked(res) => {
                        report.checked += 1;
                        if det3_int(l, m, n) != 0 {
                            reachable.insert(t + k - 1);
                        }
                        if !res.is_zero() {
                            report.failed += 1;
                            if report.witnesses.len() < 10 {
                                report.witnesses.push(([l, m, n], res));
                            }
                        }
                    }
                }
            }
        }
    }
    report.reachable = reachable.into_iter().collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_family, CaseId, CoeffSpec, FamilyParams, Reading};
    use crate::window::Table;
    use proptest::prelude::*;

    fn const_op(k: i64, c: i64) -> HomOp {
        HomOp::new(k, CoeffSpec::Const(int(c)))
    }

    #[test]
    fn apply_shifts_and_scales() {
        let w = Window::new(5).unwrap();
        let table = Table::from_fn(w, |i| if i == 5 { int(3) } else { int(0) });
        let op = HomOp::new(2, CoeffSpec::Table(table));
        let got = op.apply(&Element::generator(3)).unwrap();
        assert_eq!(got.to_string(), "3*L_5");
        let missing = op.apply(&Element::generator(4));
        assert!(matches!(missing, Err(Error::Uncovered { index: 6 })));
    }

    #[test]
    fn constant_minus_one_solves_weight_one() {
        let op = const_op(0, -1);
        let res = op.rb_residual(&int(1), 0, 1, 2);
        assert!(res.is_zero());
        let sweep = rb_sweep(&op, &int(1), Window::new(4).unwrap(), false);
        assert_eq!(sweep.failed, 0);
        assert_eq!(sweep.checked, 9 * 9 * 9);
    }

    #[test]
    fn constant_one_fails_weight_one() {
        let op = const_op(0, 1);
        let res = op.rb_residual(&int(1), 0, 1, 2);
        match res {
            RbOutcome::Checked(e) => assert_eq!(e.to_string(), "-24*L_2"),
            other => panic!("expected checked residual, got {other:?}"),
        }
        assert_eq!(
            k0_bracket_factor(&CoeffSpec::Const(int(1)), &int(1), 0, 1, 2),
            Some(int(-6))
        );
    }

    #[test]
    fn degenerate_triples_have_zero_residual() {
        // D(0,2,4) = 0, so the shift-0 residual vanishes for any f
        let op = const_op(0, 1);
        assert!(op.rb_residual(&int(1), 0, 2, 4).is_zero());
        assert!(op.rb_residual(&int(1), 3, 3, 8).is_zero());
    }

    #[test]
    fn skip_reports_first_missing_position() {
        let table = Table::from_fn(Window::new(2).unwrap(), |_| int(0));
        let op = HomOp::new(1, CoeffSpec::Table(table));
        // (2,?,?): l+k = 3 is outside [-2,2]
        match op.rb_residual(&int(1), 2, 0, 1) {
            RbOutcome::Skipped { triple, missing } => {
                assert_eq!(triple, [2, 0, 1]);
                assert_eq!(missing, 3);
            }
            other => panic!("expected skip, got {other:?}"),
        }
    }

    #[test]
    fn rescale_weight_matches_cube_scaling() {
        let minus_two = HomOp::new(0, CoeffSpec::Const(int(-2)));
        let minus_one = const_op(0, -1);
        let rescaled = minus_two.rescale_weight(&int(2)).unwrap();
        for (l, m, n) in [(0, 1, 2), (-3, 2, 4), (1, 2, -2)] {
            let a = minus_two.rb_residual(&int(2), l, m, n);
            let b = minus_one.rb_residual(&int(1), l, m, n);
            let (ra, rb) = match (&a, &b) {
                (RbOutcome::Checked(x), RbOutcome::Checked(y)) => (x.clone(), y.clone()),
                other => panic!("expected checked pair, got {other:?}"),
            };
            assert_eq!(ra, rb.scale(&int(8)), "cube scaling at ({l},{m},{n})");
            assert_eq!(
                rescaled.rb_residual(&int(1), l, m, n),
                b,
                "rescaled operator at ({l},{m},{n})"
            );
        }
        assert!(minus_two.rescale_weight(&int(0)).is_err());
    }

    #[test]
    fn collapse_check_requires_nonzero_shift() {
        let op = const_op(0, -1);
        assert!(check_k_collapse(&op, &int(1), Window::new(3).unwrap()).is_err());
    }

    #[test]
    fn collapse_check_counts_instances() {
        let w = Window::new(4).unwrap();
        let zero_table = Table::from_fn(w, |_| int(0));
        let op = HomOp::new(1, CoeffSpec::Table(zero_table));
        let report = check_k_collapse(&op, &int(1), w).unwrap();
        assert_eq!(report.checked + report.skipped, 84);
        assert_eq!(report.checked, 47);
        assert_eq!(report.failed, 0);
        assert_eq!(report.reachable, (-4..=2).collect::<Vec<_>>());
    }

    fn sample_weights() -> Vec<Scalar> {
        vec![int(1), int(2), int(-1) / int(2), int(0)]
    }

    proptest! {
        #[test]
        fn expanded_residual_matches_compositional(
            l in -6i64..=6, m in -6i64..=6, n in -6i64..=6,
            k in -2i64..=2, wi in 0usize..4,
        ) {
            let weight = sample_weights()[wi].clone();
            let f = build_family(
                CaseId::Rm0_2,
                Reading::Literal,
                FamilyParams::new(),
            ).unwrap();
            let op = HomOp::new(k, CoeffSpec::Family(f));
            prop_assert_eq!(
                op.rb_residual(&weight, l, m, n),
                op.rb_residual_expanded(&weight, l, m, n)
            );
        }

        #[test]
        fn expanded_residual_matches_on_tables(
            l in -5i64..=5, m in -5i64..=5, n in -5i64..=5,
            k in -2i64..=2, bits in 0u32..512,
        ) {
            let w = Window::new(4).unwrap();
            let table = Table::from_fn(w, |i| {
                int(((bits >> (i.rem_euclid(9)) as u32) & 1) as i64 - 1)
            });
            let op = HomOp::new(k, CoeffSpec::Table(table));
            prop_assert_eq!(
                op.rb_residual(&int(1), l, m, n),
                op.rb_residual_expanded(&int(1), l, m, n)
            );
        }
    }
}
