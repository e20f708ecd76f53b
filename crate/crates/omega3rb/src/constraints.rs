//! Derived scalar identities satisfied by shift-0 weight-1 solutions:
//! parity-split instance residuals, branch lemmas, reciprocal relations on
//! period grids, nonvanishing propagation, and supporter-set extraction.
//!
//! Residual evaluators return `Ok(None)` when a referenced position is not
//! covered (the instance is ineligible) and reserve `Err` for violated
//! preconditions on the instance indices or the branch hypothesis.

use crate::catalog::CoeffSpec;
use crate::scalar::{int, Scalar};
use crate::window::Window;
use crate::Error;

fn one() -> Scalar {
    int(1)
}

/// S₁(x,y,z) = xy + xz + yz + x + y + z + 1.
fn s1(x: &Scalar, y: &Scalar, z: &Scalar) -> Scalar {
    x * y + x * z + y * z + x + y + z + one()
}

/// Residual of the two-odd-one-even instance (2l+1, 2m+1, 2n):
/// f(2l+1)f(2m+1)f(2n) − S₁·f(2l+2m+2n+1); requires l ≠ m.
pub fn odd_residual(
    f: &CoeffSpec,
    l: i64,
    m: i64,
    n: i64,
) -> Result<Option<Scalar>, Error> {
    if l == m {
        return Err(Error::Params(format!(
            "odd instance requires l != m, got l = m = {l}"
        )));
    }
    let (x, y, z, w) = match (
        f.eval(2 * l + 1),
        f.eval(2 * m + 1),
        f.eval(2 * n),
        f.eval(2 * l + 2 * m + 2 * n + 1),
    ) {
        (Some(x), Some(y), Some(z), Some(w)) => (x, y, z, w),
        _ => return Ok(None),
    };
    Ok(Some(&x * &y * &z - s1(&x, &y, &z) * w))
}

/// Residual of the one-odd-two-even instance (2l+1, 2m, 2n):
/// f(2l+1)f(2m)f(2n) − S₁·f(2l+2m+2n); requires m ≠ n.
pub fn even_residual(
    f: &CoeffSpec,
    l: i64,
    m: i64,
    n: i64,
) -> Result<Option<Scalar>, Error> {
    if m == n {
        return Err(Error::Params(format!(
            "even instance requires m != n, got m = n = {m}"
        )));
    }
    let (x, y, z, w) = match (
        f.eval(2 * l + 1),
        f.eval(2 * m),
        f.eval(2 * n),
        f.eval(2 * l + 2 * m + 2 * n),
    ) {
        (Some(x), Some(y), Some(z), Some(w)) => (x, y, z, w),
        _ => return Ok(None),
    };
    Ok(Some(&x * &y * &z - s1(&x, &y, &z) * w))
}

/// Residual (f(0)+f(1)+1)·f(m)·(f(m)+1); requires m ∉ {0, 1}.
pub fn eq37_residual(f: &CoeffSpec, m: i64) -> Result<Option<Scalar>, Error> {
    if m == 0 || m == 1 {
        return Err(Error::Params(format!(
            "index constraint requires m not in {{0, 1}}, got {m}"
        )));
    }
    let (f0, f1, fm) = match (f.eval(0), f.eval(1), f.eval(m)) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Ok(None),
    };
    Ok(Some((f0 + f1 + one()) * &fm * (&fm + one())))
}

/// Reflection residual f(1−m) + f(m) + 1 (no precondition).
pub fn eq39_residual(f: &CoeffSpec, m: i64) -> Option<Scalar> {
    Some(f.eval(1 - m)? + f.eval(m)? + one())
}

/// The four branch-lemma residuals on f(0) = a, f(1) = −1−a, evaluated at
/// index pairs drawn from (l, m, n):
///
/// 1. a·f(2l+1)f(2m+1) − [(a+1)(f(2l+1)+f(2m+1)) + f(2l+1)f(2m+1) + (a+1)]·f(2l+2m+1), l ≠ m
/// 2. −(a+1)·f(2m+1)f(2n) − [−a(f(2m+1)+f(2n)) + f(2m+1)f(2n) − a]·f(2m+2n+1), m ≠ 0
/// 3. a·f(2l+1)f(2m) − [(a+1)(f(2l+1)+f(2m)) + f(2l+1)f(2m) + (a+1)]·f(2l+2m), m ≠ 0
/// 4. −(a+1)·f(2m)f(2n) − [−a(f(2m)+f(2n)) + f(2m)f(2n) − a]·f(2m+2n), m ≠ n
///
/// An item is `None` when its side condition fails or a referenced
/// position is uncovered.
pub fn lemma_fa_residuals(
    f: &CoeffSpec,
    a: &Scalar,
    l: i64,
    m: i64,
    n: i64,
) -> Result<[Option<Scalar>; 4], Error> {
    check_branch_hypothesis(f, a, &(-one() - a))?;
    let ap1 = a + one();

    let item1 = if l != m {
        pair(f, 2 * l + 1, 2 * m + 1, 2 * l + 2 * m + 1).map(|(x, y, w)| {
            a * &x * &y - (&ap1 * (&x + &y) + &x * &y + &ap1) * w
        })
    } else {
        None
    };
    let item2 = if m != 0 {
        pair(f, 2 * m + 1, 2 * n, 2 * m + 2 * n + 1).map(|(x, y, w)| {
            -(&ap1 * &x * &y) - (-(a * (&x + &y)) + &x * &y - a) * w
        })
    } else {
        None
    };
    let item3 = if m != 0 {
        pair(f, 2 * l + 1, 2 * m, 2 * l + 2 * m).map(|(x, y, w)| {
            a * &x * &y - (&ap1 * (&x + &y) + &x * &y + &ap1) * w
        })
    } else {
        None
    };
    let item4 = if m != n {
        pair(f, 2 * m, 2 * n, 2 * m + 2 * n).map(|(x, y, w)| {
            -(&ap1 * &x * &y) - (-(a * (&x + &y)) + &x * &y - a) * w
        })
    } else {
        None
    };
    Ok([item1, item2, item3, item4])
}

/// The four branch-lemma residuals on f(0) = 0, f(1) = −1:
///
/// 1. (f(2l+1)+1)(f(2m+1)+1)·f(2l+2m+1), l ≠ m
/// 2. f(2m+1)·f(2n)·(1+f(2m+2n+1)), m ≠ 0
/// 3. (f(2l+1)+1)(f(2m)+1)·f(2l+2m), m ≠ 0
/// 4. f(2m)·f(2n)·(1+f(2m+2n)), m ≠ n
pub fn lemma_f00_residuals(
    f: &CoeffSpec,
    l: i64,
    m: i64,
    n: i64,
) -> Result<[Option<Scalar>; 4], Error> {
    check_branch_hypothesis(f, &int(0), &int(-1))?;
    let item1 = if l != m {
        pair(f, 2 * l + 1, 2 * m + 1, 2 * l + 2 * m + 1)
            .map(|(x, y, w)| (x + one()) * (y + one()) * w)
    } else {
        None
    };
    let item2 = if m != 0 {
        pair(f, 2 * m + 1, 2 * n, 2 * m + 2 * n + 1)
            .map(|(x, y, w)| x * y * (one() + w))
    } else {
        None
    };
    let item3 = if m != 0 {
        pair(f, 2 * l + 1, 2 * m, 2 * l + 2 * m)
            .map(|(x, y, w)| (x + one()) * (y + one()) * w)
    } else {
        None
    };
    let item4 = if m != n {
        pair(f, 2 * m, 2 * n, 2 * m + 2 * n).map(|(x, y, w)| x * y * (one() + w))
    } else {
        None
    };
    Ok([item1, item2, item3, item4])
}

fn pair(f: &CoeffSpec, i: i64, j: i64, target: i64) -> Option<(Scalar, Scalar, Scalar)> {
    Some((f.eval(i)?, f.eval(j)?, f.eval(target)?))
}

fn check_branch_hypothesis(f: &CoeffSpec, at0: &Scalar, at1: &Scalar) -> Result<(), Error> {
    let f0 = f
        .eval(0)
        .ok_or_else(|| Error::Validator("branch hypothesis unverifiable: index 0 uncovered".into()))?;
    let f1 = f
        .eval(1)
        .ok_or_else(|| Error::Validator("branch hypothesis unverifiable: index 1 uncovered".into()))?;
    if &f0 != at0 || &f1 != at1 {
        return Err(Error::Validator(format!(
            "branch hypothesis violated: expected f(0) = {}, f(1) = {}, got f(0) = {}, f(1) = {}",
            crate::scalar::fmt_scalar(at0),
            crate::scalar::fmt_scalar(at1),
            crate::scalar::fmt_scalar(&f0),
            crate::scalar::fmt_scalar(&f1),
        )));
    }
    Ok(())
}

/// Reciprocal-sum residual on the period-2m0 grid:
/// 1/f(2m0k) + 1/f(−2m0k) + 1/(f(2m0k)f(−2m0k)) − (1+2a)/a².
///
/// Requires k ≠ 0 and a ≠ 0; `None` when a referenced value is zero or
/// uncovered (the instance is ineligible).
pub fn eq00_residual(
    f: &CoeffSpec,
    a: &Scalar,
    m0: i64,
    k: i64,
) -> Result<Option<Scalar>, Error> {
    if k == 0 {
        return Err(Error::Params("grid residual requires k != 0".to_string()));
    }
    if a == &int(0) {
        return Err(Error::Params("grid residual requires a != 0".to_string()));
    }
    let x = f.eval(2 * m0 * k);
    let y = f.eval(-2 * m0 * k);
    let (x, y) = match (x, y) {
        (Some(x), Some(y)) if x != int(0) && y != int(0) => (x, y),
        _ => return Ok(None),
    };
    let rhs = (one() + int(2) * a) / (a * a);
    Ok(Some(one() / &x + one() / &y + one() / (&x * &y) - rhs))
}

/// Reciprocal-transport residual on the period-2m0 grid, comparing the
/// (k1, −k1+k2+k3) pair against the (k2, k3) pair; requires k2 ≠ k3.
/// `None` when any referenced value is zero or uncovered.
pub fn eq01_residual(
    f: &CoeffSpec,
    m0: i64,
    k1: i64,
    k2: i64,
    k3: i64,
) -> Result<Option<Scalar>, Error> {
    if k2 == k3 {
        return Err(Error::Params("transport residual requires k2 != k3".to_string()));
    }
    let vals = [
        f.eval(2 * m0 * k1),
        f.eval(2 * m0 * (-k1 + k2 + k3)),
        f.eval(2 * m0 * k2),
        f.eval(2 * m0 * k3),
    ];
    let mut resolved = Vec::with_capacity(4);
    for v in vals {
        match v {
            Some(x) if x != int(0) => resolved.push(x),
            _ => return Ok(None),
        }
    }
    let (v1, vm, v2, v3) = (&resolved[0], &resolved[1], &resolved[2], &resolved[3]);
    let lhs = one() / v1 + one() / (v1 * vm) + one() / vm;
    let rhs = one() / v2 + one() / (v3 * v2) + one() / v3;
    Ok(Some(lhs - rhs))
}

/// One violated nonvanishing claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlmnViolation {
    /// Claim number, 1–11.
    pub item: u8,
    /// The (k, l, m, n) witness tuple.
    pub tuple: [i64; 4],
    /// The violating position.
    pub position: i64,
    /// The value found there.
    pub value: Scalar,
}

/// Outcome of the four-index nonvanishing sweep.
#[derive(Clone, Debug, Default)]
pub struct KlmnReport {
    /// Number of (item, tuple) claims evaluated.
    pub checks: u64,
    pub violations: Vec<KlmnViolation>,
}

/// Sweep the eleven nonvanishing-propagation claims over all (k, l, m, n)
/// with 2k, 2l, 2m+1, 2n+1 in the window, k·l·m·n ≠ 0, and
/// f(2k), f(2l), f(2m+1), f(2n+1) all nonzero.
///
/// Claims 1–8 assert the value at a derived position is nonzero; claims
/// 9–11 assert it differs from −1; claim 7 applies only when m ≠ −k.
/// Positions outside the window are not checked.
pub fn klmn_nonvanishing_report(f: &CoeffSpec, window: Window) -> KlmnReport {
    let (lo, hi) = (window.lo(), window.hi());
    let ks: Vec<i64> = (lo.div_euclid(2)..=hi.div_euclid(2))
        .filter(|&k| window.contains(2 * k))
        .collect();
    let ms: Vec<i64> = ((lo - 1).div_euclid(2)..=(hi - 1).div_euclid(2))
        .filter(|&m| window.contains(2 * m + 1))
        .collect();
    let nonzero = |i: i64| matches!(f.eval(i), Some(v) if v != int(0));
    let mut report = KlmnReport::default();
    for &k in &ks {
        for &l in &ks {
            for &m in &ms {
                for &n in &ms {
                    if k == 0 || l == 0 || m == 0 || n == 0 {
                        continue;
                    }
                    if !nonzero(2 * k) || !nonzero(2 * l) || !nonzero(2 * m + 1) || !nonzero(2 * n + 1)
                    {
                        continue;
                    }
                    let mut claims: Vec<(u8, i64, bool)> = vec![
                        (1, 2 * k + 2 * l, false),
                        (2, 2 * k + 2 * m, false),
                        (3, 2 * k + 2 * m + 1, false),
                        (4, 2 * m + 2 * n + 1, false),
                        (5, 2 * m + 2 * n + 2 * k + 1, false),
                        (6, 2 * m + 2 * k + 2 * l, false),
                        (8, 4 * k, false),
                        (9, 1 - 2 * k - 2 * m, true),
                        (10, 2 * k - 2 * m, true),
                        (11, 1 - 4 * k, true),
                    ];
                    if m != -k {
                        claims.push((7, 1 - 2 * k + 2 * m, false));
                    }
                    for (item, pos, avoid_minus_one) in claims {
                        if !window.contains(pos) {
                            continue;
                        }
                        let Some(v) = f.eval(pos) else { continue };
                        report.checks += 1;
                        let violated = if avoid_minus_one {
                            v == int(-1)
                        } else {
                            v == int(0)
                        };
                        if violated {
                            report.violations.push(KlmnViolation {
                                item,
                                tuple: [k, l, m, n],
                                position: pos,
                                value: v,
                            });
                        }
                    }
                }
            }
        }
    }
    report
}

/// One violated zero-branch propagation claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchViolation {
    /// Claim label, "C1"–"C6".
    pub item: &'static str,
    /// The witness index tuple.
    pub args: Vec<i64>,
    /// The offending value (the derived value for C1–C4, the product for
    /// C5–C6).
    pub value: Scalar,
}

/// Outcome of the zero-branch propagation sweep.
#[derive(Clone, Debug, Default)]
pub struct Cor01Report {
    pub checks: u64,
    pub violations: Vec<BranchViolation>,
    /// Window-density note for the unbounded-support hypothesis, which is
    /// reported but never gated on.
    pub density_note: String,
}

/// Sweep the six propagation claims of the f(0)=0, f(1)=−1 branch over
/// index variables in [−radius, radius], evaluating every position through
/// the (total) coefficient assignment:
///
/// - C1: f(2k), f(2l) ≠ 0, k ≠ ±l ⇒ f(2k+2l) = −1
/// - C2: f(2k), f(2m+1) ≠ 0 ⇒ f(2k+2m+1) = −1
/// - C3: f(2k) = f(2m+1) = 0 ⇒ f(2k+2m) = 0
/// - C4: f(2m+1) = f(2n+1) = 0, m ≠ ±n ⇒ f(2m+2n+1) = 0
/// - C5: f(2k)·f(−2k) = 0
/// - C6: (f(2m+1)+1)·(f(−2m+1)+1) = 0 (m may be zero)
///
/// Free variables range over nonzero values except in C6. Uncovered
/// positions make a claim unevaluable and are skipped.
pub fn cor01_report(f: &CoeffSpec, radius: i64) -> Result<Cor01Report, Error> {
    check_branch_hypothesis(f, &int(0), &int(-1))?;
    let mut report = Cor01Report::default();
    let nz: Vec<i64> = (-radius..=radius).filter(|&v| v != 0).collect();
    let value = |i: i64| f.eval(i);
    let mut claim = |item: &'static str, args: Vec<i64>, v: Option<Scalar>, expect: Scalar| {
        if let Some(v) = v {
            report.checks += 1;
            if v != expect {
                report.violations.push(BranchViolation { item, args, value: v });
            }
        }
    };
    for &k in &nz {
        if let (Some(x), Some(y)) = (value(2 * k), value(-2 * k)) {
            claim("C5", vec![k], Some(x * y), int(0));
        }
        for &l in &nz {
            if k != l && k != -l {
                if let (Some(x), Some(y)) = (value(2 * k), value(2 * l)) {
                    if x != int(0) && y != int(0) {
                        claim("C1", vec![k, l], value(2 * k + 2 * l), int(-1));
                    }
                }
            }
        }
        for &m in &nz {
            if let (Some(x), Some(y)) = (value(2 * k), value(2 * m + 1)) {
                if x != int(0) && y != int(0) {
                    claim("C2", vec![k, m], value(2 * k + 2 * m + 1), int(-1));
                }
                if x == int(0) && y == int(0) {
                    claim("C3", vec![k, m], value(2 * k + 2 * m), int(0));
                }
            }
        }
    }
    for &m in &nz {
        for &n in &nz {
            if m != n && m != -n {
                if let (Some(x), Some(y)) = (value(2 * m + 1), value(2 * n + 1)) {
                    if x == int(0) && y == int(0) {
                        claim("C4", vec![m, n], value(2 * m + 2 * n + 1), int(0));
                    }
                }
            }
        }
    }
    for m in -radius..=radius {
        if let (Some(x), Some(y)) = (value(2 * m + 1), value(-2 * m + 1)) {
            claim("C6", vec![m], Some((x + one()) * (y + one())), int(0));
        }
    }
    let evens_zero = (-radius..=radius)
        .filter(|&i| i != 0)
        .filter(|&i| matches!(value(2 * i), Some(v) if v == int(0)))
        .count();
    let odds_nonzero = (-radius..=radius)
        .filter(|&i| i != 0)
        .filter(|&i| matches!(value(2 * i + 1), Some(v) if v != int(0)))
        .count();
    report.density_note = format!(
        "unbounded-support hypothesis approximated by window density: \
         {evens_zero} vanishing even positions and {odds_nonzero} nonvanishing odd positions \
         over index radius {radius}; reported only, never gated on"
    );
    Ok(report)
}

/// The four parity/vanishing supporter sets of a coefficient table over a
/// window: nonvanishing evens (≠0), nonvanishing odds (≠1), vanishing
/// evens (≠0), vanishing odds (≠1).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SupporterSets {
    pub w1: Vec<i64>,
    pub u1: Vec<i64>,
    pub w2: Vec<i64>,
    pub u2: Vec<i64>,
}

impl SupporterSets {
    /// W1 ∪ U1 in ascending order.
    pub fn nonvanishing_union(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.w1.iter().chain(self.u1.iter()).copied().collect();
        out.sort_unstable();
        out
    }
}

/// Extract supporter sets over a window; every index must be covered.
pub fn extract_supporters(f: &CoeffSpec, window: Window) -> Result<SupporterSets, Error> {
    let mut sets = SupporterSets::default();
    for i in window.indices() {
        let v = f
            .eval(i)
            .ok_or(Error::Uncovered { index: i })?;
        let vanishes = v == int(0);
        if i.rem_euclid(2) == 0 {
            if i == 0 {
                continue;
            }
            if vanishes {
                sets.w2.push(i);
            } else {
                sets.w1.push(i);
            }
        } else {
            if i == 1 {
                continue;
            }
            if vanishes {
                sets.u2.push(i);
            } else {
                sets.u1.push(i);
            }
        }
    }
    Ok(sets)
}

/// Window indices outside {0, 1} lying on the period-2m0 grid
/// (i ≡ 0 or i ≡ 1 mod 2m0), ascending; requires m0 ≠ 0.
pub fn m_supporter_window(m0: i64, window: Window) -> Result<Vec<i64>, Error> {
    if m0 == 0 {
        return Err(Error::Params("supporter grid requires m0 != 0".to_string()));
    }
    Ok(window
        .indices()
        .filter(|&i| i != 0 && i != 1)
        .filter(|&i| i % (2 * m0) == 0 || (i - 1) % (2 * m0) == 0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_family, CaseId, FamilyParams, Reading};
    use crate::window::Table;

    fn family(id: CaseId, params: &str) -> CoeffSpec {
        CoeffSpec::Family(
            build_family(id, Reading::Literal, FamilyParams::parse(params).unwrap()).unwrap(),
        )
    }

    fn table(window: i64, f: impl FnMut(i64) -> Scalar) -> CoeffSpec {
        CoeffSpec::Table(Table::from_fn(Window::new(window).unwrap(), f))
    }

    #[test]
    fn parity_instances_on_constants() {
        let minus_one = CoeffSpec::Const(int(-1));
        assert_eq!(odd_residual(&minus_one, 0, 1, 0).unwrap(), Some(int(0)));
        let plus_one = CoeffSpec::Const(int(1));
        assert_eq!(odd_residual(&plus_one, 0, 1, 0).unwrap(), Some(int(-6)));
        assert_eq!(even_residual(&plus_one, 0, 0, 1).unwrap(), Some(int(-6)));
        assert!(odd_residual(&plus_one, 2, 2, 0).is_err());
        assert!(even_residual(&plus_one, 0, 3, 3).is_err());
    }

    #[test]
    fn parity_instances_respect_coverage() {
        let t = table(4, |_| int(-1));
        // target 2l+2m+2n+1 = 9 is outside [-4,4]
        assert_eq!(odd_residual(&t, 1, 2, 1).unwrap(), None);
        assert_eq!(odd_residual(&t, 0, 1, 0).unwrap(), Some(int(0)));
    }

    #[test]
    fn index_constraint_example() {
        let t = table(5, |i| match i {
            0 => int(1),
            1 => int(1),
            5 => int(2),
            _ => int(0),
        });
        assert_eq!(eq37_residual(&t, 5).unwrap(), Some(int(18)));
        assert!(eq37_residual(&t, 0).is_err());
        assert!(eq37_residual(&t, 1).is_err());
    }

    #[test]
    fn reflection_residual_on_grid_family() {
        let f = family(CaseId::F0a_1, "a=2,m0=1");
        for m in -10..=10 {
            assert_eq!(eq39_residual(&f, m), Some(int(0)), "m = {m}");
        }
        let t = table(2, |_| int(0));
        assert_eq!(eq39_residual(&t, 4), None);
    }

    #[test]
    fn branch_lemma_vanishes_on_grid_family() {
        let f = family(CaseId::F0a_1, "a=2,m0=1");
        let a = int(2);
        for l in -4..=4 {
            for m in -4..=4 {
                let items = lemma_fa_residuals(&f, &a, l, m, l).unwrap();
                for (idx, item) in items.iter().enumerate() {
                    if let Some(v) = item {
                        assert_eq!(v, &int(0), "item {} at ({l},{m})", idx + 1);
                    }
                }
            }
        }
        let wrong = lemma_fa_residuals(&f, &int(3), 0, 1, 0);
        assert!(matches!(wrong, Err(Error::Validator(_))));
    }

    #[test]
    fn zero_branch_lemma_counterexample() {
        // f(0)=0, f(1)=-1, but f(-2)=f(2)=5 with f(0)=0 breaks item 4
        let t = table(4, |i| {
            if i == 2 || i == -2 {
                int(5)
            } else if i.rem_euclid(2) == 1 {
                int(-1)
            } else {
                int(0)
            }
        });
        let items = lemma_f00_residuals(&t, 0, -1, 1).unwrap();
        assert_eq!(items[3], Some(int(25)));
    }

    #[test]
    fn grid_reciprocal_residuals() {
        let f = family(CaseId::F0a_1, "a=2,m0=1");
        assert_eq!(eq00_residual(&f, &int(2), 1, 3).unwrap(), Some(int(0)));
        assert!(eq00_residual(&f, &int(2), 1, 0).is_err());
        assert!(eq00_residual(&f, &int(0), 1, 2).is_err());
        let f2 = family(CaseId::F0a_2, "a=1,m0=1");
        assert_eq!(eq00_residual(&f2, &int(1), 1, 1).unwrap(), Some(int(0)));
        assert_eq!(eq01_residual(&f2, 1, 1, 3, 2).unwrap(), Some(int(0)));
        assert!(eq01_residual(&f2, 1, 1, 2, 2).is_err());
        // a zero value makes the instance ineligible
        let zeros = table(8, |_| int(0));
        assert_eq!(eq01_residual(&zeros, 1, 1, 3, 2).unwrap(), None);
    }

    #[test]
    fn nonvanishing_sweep_is_empty_on_grid_family() {
        let f = family(CaseId::F0a_1, "a=2,m0=1");
        let report = klmn_nonvanishing_report(&f, Window::new(10).unwrap());
        assert!(report.checks > 0);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn nonvanishing_sweep_finds_planted_zero() {
        // evens nonzero except f(0)=0; odds all -1; then k=1, l=-1 gives
        // position 2k+2l = 0 with value 0: claim 1 fails
        let t = table(4, |i| {
            if i.rem_euclid(2) == 1 {
                int(-1)
            } else if i == 0 {
                int(0)
            } else {
                int(1)
            }
        });
        let report = klmn_nonvanishing_report(&t, Window::new(4).unwrap());
        assert!(report
            .violations
            .iter()
            .any(|v| v.item == 1 && v.position == 0 && v.value == int(0)));
    }

    #[test]
    fn zero_branch_propagation_counterexamples() {
        // f(2)=f(-2)=1 violates C5; f(3)=f(-1)=0 violates C6 at m=1
        let t = table(4, |i| match i {
            2 | -2 => int(1),
            3 | -1 => int(0),
            0 | 4 | -4 => int(0),
            _ => int(-1),
        });
        let report = cor01_report(&t, 2).unwrap();
        assert!(report.violations.iter().any(|v| v.item == "C5" && v.args == vec![1]));
        assert!(report.violations.iter().any(|v| v.item == "C6" && v.args == vec![1]));
        assert!(!report.density_note.is_empty());
        let bad = cor01_report(&CoeffSpec::Const(int(1)), 2);
        assert!(matches!(bad, Err(Error::Validator(_))));
    }

    #[test]
    fn zero_branch_propagation_clean_family() {
        for (id, params) in [
            (CaseId::F0a1_1, ""),
            (CaseId::F0a1_2, "c=2,n0=2"),
            (CaseId::F0a3_A1, "m0=1,n0=-1"),
            (CaseId::F0a3_B2, "c=2,m0=-1"),
        ] {
            let f = family(id, params);
            let report = cor01_report(&f, 5).unwrap();
            assert!(
                report.violations.is_empty(),
                "{id:?}: {:?}",
                report.violations.first()
            );
            // the same sweep radius covers the zero-branch lemma items
            for l in -5..=5 {
                for m in -5..=5 {
                    for item in lemma_f00_residuals(&f, l, m, l).unwrap().iter().flatten() {
                        assert_eq!(item, &int(0), "{id:?} at ({l},{m})");
                    }
                }
            }
        }
    }

    #[test]
    fn supporters_split_by_parity() {
        let zero = CoeffSpec::Const(int(0));
        let w = Window::new(4).unwrap();
        let sets = extract_supporters(&zero, w).unwrap();
        assert!(sets.w1.is_empty() && sets.u1.is_empty());
        assert_eq!(sets.w2, vec![-4, -2, 2, 4]);
        assert_eq!(sets.u2, vec![-3, -1, 3]);

        let all = family(CaseId::R01_2, "m0=1");
        let sets = extract_supporters(&all, w).unwrap();
        assert_eq!(sets.nonvanishing_union(), m_supporter_window(1, w).unwrap());
        assert_eq!(sets.w1, vec![-4, -2, 2, 4]);
        assert_eq!(sets.u1, vec![-3, -1, 3]);

        assert!(m_supporter_window(0, w).is_err());
        let partial = table(2, |i| int(i));
        assert!(extract_supporters(&partial, Window::new(3).unwrap()).is_err());
    }
}
