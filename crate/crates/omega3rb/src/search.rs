//! Exhaustive window-scale solver: enumerate every coefficient table over
//! a window and value set that satisfies the weighted residual on all
//! checkable instances, then match solutions against the catalog.
//!
//! For shift 0, instances are unordered mixed-parity triples of window
//! indices whose target grade stays in the window. For nonzero shift k,
//! instances are unordered source triples l < m < n with l+k, m+k, n+k in
//! the window; an instance is checked when all three residual grades stay
//! in the window, and each graded coefficient must vanish separately.
//!
//! Enumeration uses depth-first assignment in ascending index order with
//! constraints gated on the highest referenced position, parallelized over
//! the first position's values; results are sorted lexicographically by
//! value vector, so the output is deterministic for any worker count.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::algebra::det3_int;
use crate::catalog::{build_family, CaseId, FamilyParams, Reading, ALL_CASES};
use crate::scalar::{fmt_scalar, int, Scalar};
use crate::window::{Table, Window};
use crate::Error;

/// The enumeration problem: window, candidate values, shift, and weight.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub window: Window,
    pub values: Vec<Scalar>,
    pub k: i64,
    pub weight: Scalar,
}

impl SearchSpace {
    /// Validate and build a search space; candidate values must be distinct.
    pub fn new(window: Window, values: Vec<Scalar>, k: i64, weight: Scalar) -> Result<Self, Error> {
        for (i, v) in values.iter().enumerate() {
            if values[..i].contains(v) {
                return Err(Error::Params(format!(
                    "duplicate candidate value {}",
                    fmt_scalar(v)
                )));
            }
        }
        Ok(Self {
            window,
            values,
            k,
            weight,
        })
    }

    /// Number of raw assignments |values|^|window|, or None on overflow.
    pub fn enumeration_size(&self) -> Option<u128> {
        (self.values.len() as u128).checked_pow(self.window.len() as u32)
    }
}

/// One pruning gate, referencing assignment slots by window offset.
enum Gate {
    /// Shift-0 instance: xyz − S_λ(x,y,z)·w = 0.
    Factor { x: usize, y: usize, z: usize, w: usize },
    /// Top grade of a shifted instance:
    /// f_l f_m f_n·d[0] − w·(f_l f_m·d[1] + f_l f_n·d[2] + f_m f_n·d[3]) = 0.
    Grade3 {
        fx: usize,
        fy: usize,
        fz: usize,
        w: usize,
        d: [i64; 4],
    },
    /// Middle grade: λ·w·(f_l·e[0] + f_m·e[1] + f_n·e[2]) = 0.
    Grade2 {
        fx: usize,
        fy: usize,
        fz: usize,
        w: usize,
        e: [i64; 3],
    },
    /// Bottom grade: λ²·w·d0 = 0.
    Grade1 { w: usize, d0: i64 },
}

impl Gate {
    fn ready_at(&self) -> usize {
        match self {
            Gate::Factor { x, y, z, w } => *x.max(y).max(z).max(w),
            Gate::Grade3 { fx, fy, fz, w, .. } | Gate::Grade2 { fx, fy, fz, w, .. } => {
                *fx.max(fy).max(fz).max(w)
            }
            Gate::Grade1 { w, .. } => *w,
        }
    }

    fn holds(&self, a: &[Scalar], weight: &Scalar) -> bool {
        let zero = int(0);
        match self {
            Gate::Factor { x, y, z, w } => {
                let (x, y, z, w) = (&a[*x], &a[*y], &a[*z], &a[*w]);
                let s = x * y + x * z + y * z + weight * (x + y + z) + weight * weight;
                x * y * z - s * w == zero
            }
            Gate::Grade3 { fx, fy, fz, w, d } => {
                let (x, y, z, w) = (&a[*fx], &a[*fy], &a[*fz], &a[*w]);
                x * y * z * int(d[0])
                    - w * (x * y * int(d[1]) + x * z * int(d[2]) + y * z * int(d[3]))
                    == zero
            }
            Gate::Grade2 { fx, fy, fz, w, e } => {
                let (x, y, z, w) = (&a[*fx], &a[*fy], &a[*fz], &a[*w]);
                weight * w * (x * int(e[0]) + y * int(e[1]) + z * int(e[2])) == zero
            }
            Gate::Grade1 { w, d0 } => weight * weight * &a[*w] * int(*d0) == zero,
        }
    }
}

struct Compiled {
    checked: u64,
    skipped: u64,
    reachable: Vec<i64>,
    by_ready: Vec<Vec<Gate>>,
}

fn compile(space: &SearchSpace) -> Compiled {
    let window = space.window;
    let off = |i: i64| window.offset(i).expect("compiled position inside window");
    let mut checked = 0u64;
    let mut skipped = 0u64;
    let mut reachable = BTreeSet::new();
    let mut gates: Vec<Gate> = Vec::new();
    if space.k == 0 {
        let idx: Vec<i64> = window.indices().collect();
        for a in 0..idx.len() {
            for b in (a + 1)..idx.len() {
                for c in (b + 1)..idx.len() {
                    let (i, j, l) = (idx[a], idx[b], idx[c]);
                    let p = |v: i64| v.rem_euclid(2);
                    if p(i) == p(j) && p(j) == p(l) {
                        continue;
                    }
                    let s = i + j + l - 1;
                    if !window.contains(s) {
                        skipped += 1;
                        continue;
                    }
                    checked += 1;
                    reachable.insert(s);
                    gates.push(Gate::Factor {
                        x: off(i),
                        y: off(j),
                        z: off(l),
                        w: off(s),
                    });
                }
            }
        }
    } else {
        let k = space.k;
        let src: Vec<i64> = ((window.lo() - k)..=(window.hi() - k)).collect();
        for a in 0..src.len() {
            for b in (a + 1)..src.len() {
                for c in (b + 1)..src.len() {
                    let (l, m, n) = (src[a], src[b], src[c]);
                    let t = l + m + n;
                    let (g3, g2, g1) = (t + 3 * k - 1, t + 2 * k - 1, t + k - 1);
                    if !(window.contains(g3) && window.contains(g2) && window.contains(g1)) {
                        skipped += 1;
                        continue;
                    }
                    checked += 1;
                    let d0 = det3_int(l, m, n);
                    if d0 != 0 {
                        reachable.insert(g1);
                    }
                    let (fx, fy, fz) = (off(l + k), off(m + k), off(n + k));
                    gates.push(Gate::Grade3 {
                        fx,
                        fy,
                        fz,
                        w: off(g3),
                        d: [
                            det3_int(l + k, m + k, n + k),
                            det3_int(l + k, m + k, n),
                            det3_int(l + k, m, n + k),
                            det3_int(l, m + k, n + k),
                        ],
                    });
                    gates.push(Gate::Grade2 {
                        fx,
                        fy,
                        fz,
                        w: off(g2),
                        e: [
                            det3_int(l + k, m, n),
                            det3_int(l, m + k, n),
                            det3_int(l, m, n + k),
                        ],
                    });
                    gates.push(Gate::Grade1 { w: off(g1), d0 });
                }
            }
        }
    }
    let mut by_ready: Vec<Vec<Gate>> = (0..window.len()).map(|_| Vec::new()).collect();
    for g in gates {
        let slot = g.ready_at();
        by_ready[slot].push(g);
    }
    Compiled {
        checked,
        skipped,
        reachable: reachable.into_iter().collect(),
        by_ready,
    }
}

fn dfs(
    values: &[Scalar],
    by_ready: &[Vec<Gate>],
    weight: &Scalar,
    assign: &mut Vec<Scalar>,
    out: &mut Vec<Vec<Scalar>>,
) {
    let depth = assign.len();
    if depth == by_ready.len() {
        out.push(assign.clone());
        return;
    }
    for v in values {
        assign.push(v.clone());
        if by_ready[depth].iter().all(|g| g.holds(assign, weight)) {
            dfs(values, by_ready, weight, assign, out);
        }
        assign.pop();
    }
}

/// The full outcome of an enumeration.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub window: Window,
    pub k: i64,
    pub weight: Scalar,
    /// Instances whose residual constraints were enforced.
    pub checked: u64,
    /// Instances dropped because a residual grade left the window.
    pub skipped: u64,
    /// Sorted grades hit by some checked instance with nonzero bracket
    /// constant.
    pub reachable: Vec<i64>,
    /// All satisfying tables, sorted lexicographically by value vector.
    pub solutions: Vec<Table>,
}

impl Enumeration {
    /// Indices of solutions carrying a nonzero value at a reachable grade.
    pub fn violating(&self) -> Vec<usize> {
        self.solutions
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                self.reachable
                    .iter()
                    .any(|&g| t.get(g).map(|v| v != &int(0)).unwrap_or(false))
            })
            .map(|(i, _)| i)
            .collect()
    }
}

/// Enumerate all satisfying tables, enforcing the assignment budget
/// |values|^|window| ≤ budget before starting.
pub fn enumerate_solutions(space: &SearchSpace, budget: u128) -> Result<Enumeration, Error> {
    let needed = space.enumeration_size().ok_or(Error::Budget {
        needed: u128::MAX,
        budget,
    })?;
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let compiled = compile(space);
    let weight = &space.weight;
    let rows: Vec<Vec<Vec<Scalar>>> = space
        .values
        .par_iter()
        .map(|v0| {
            let mut assign = vec![v0.clone()];
            let mut out = Vec::new();
            if compiled.by_ready[0].iter().all(|g| g.holds(&assign, weight)) {
                dfs(&space.values, &compiled.by_ready, weight, &mut assign, &mut out);
            }
            out
        })
        .collect();
    let mut raw: Vec<Vec<Scalar>> = rows.into_iter().flatten().collect();
    raw.sort();
    let solutions = raw
        .into_iter()
        .map(|vals| Table::from_values(space.window, vals).expect("assignment length"))
        .collect();
    Ok(Enumeration {
        window: space.window,
        k: space.k,
        weight: space.weight.clone(),
        checked: compiled.checked,
        skipped: compiled.skipped,
        reachable: compiled.reachable,
        solutions,
    })
}

/// SHA-256 over the newline-joined canonical rows of the solution list.
pub fn canonical_hash(solutions: &[Table]) -> String {
    let joined = solutions
        .iter()
        .map(Table::row_string)
        .collect::<Vec<_>>()
        .join("\n");
    let digest = Sha256::digest(joined.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn int_combos(names: &[&'static str], radius: i64) -> Vec<BTreeMap<String, i64>> {
    let mut out = vec![BTreeMap::new()];
    for &name in names {
        let mut next = Vec::with_capacity(out.len() * (2 * radius + 1) as usize);
        for combo in &out {
            for v in -radius..=radius {
                let mut c = combo.clone();
                c.insert(name.to_string(), v);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Catalog cases whose restriction to the inner window (full window minus
/// `margin` on each side) reproduces the table, under either reading.
///
/// Integer parameters range over [−radius, radius] for the table's window
/// radius; scalar parameters are read off the table at their defining
/// positions, which must lie inside the full window.
pub fn explain(table: &Table, margin: i64) -> Result<Vec<CaseId>, Error> {
    let window = table.window();
    let inner = window.inner(margin)?;
    let radius = window.radius();
    let mut matched = BTreeSet::new();
    for id in ALL_CASES {
        let mut readings = vec![Reading::Literal];
        if id.has_amended() {
            readings.push(Reading::Amended);
        }
        let combos = int_combos(id.int_param_names(), radius);
        for reading in readings {
            'combo: for ints in &combos {
                let mut params = FamilyParams {
                    ints: ints.clone(),
                    scalars: BTreeMap::new(),
                };
                for (name, pos) in id.scalar_positions(ints) {
                    if !window.contains(pos) {
                        continue 'combo;
                    }
                    let v = table.get(pos).expect("position inside window").clone();
                    params.scalars.insert(name.to_string(), v);
                }
                let Ok(family) = build_family(id, reading, params) else {
                    continue;
                };
                let agrees = inner
                    .indices()
                    .all(|i| Some(&family.eval(i)) == table.get(i));
                if agrees {
                    matched.insert(id);
                    break 'combo;
                }
            }
        }
    }
    Ok(matched.into_iter().collect())
}

/// Solution-set summary after catalog matching.
#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub solution_count: u64,
    pub solutions_sha256: String,
    /// Case id → number of solutions it explains (deduplicated per
    /// solution across readings).
    pub explained_counts: BTreeMap<String, u64>,
    /// Canonical value rows of solutions no case explains, in solution
    /// order.
    pub unexplained: Vec<Vec<String>>,
}

/// Match every solution of an enumeration against the catalog.
pub fn completeness_report(
    enumeration: &Enumeration,
    margin: i64,
) -> Result<CompletenessReport, Error> {
    enumeration.window.inner(margin)?;
    let per_solution: Vec<Vec<CaseId>> = enumeration
        .solutions
        .par_iter()
        .map(|t| explain(t, margin).expect("margin validated"))
        .collect();
    let mut explained_counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut unexplained = Vec::new();
    for (table, cases) in enumeration.solutions.iter().zip(&per_solution) {
        if cases.is_empty() {
            unexplained.push(
                table
                    .values()
                    .iter()
                    .map(fmt_scalar)
                    .collect::<Vec<String>>(),
            );
        }
        for case in cases {
            *explained_counts.entry(case.as_str().to_string()).or_insert(0) += 1;
        }
    }
    Ok(CompletenessReport {
        solution_count: enumeration.solutions.len() as u64,
        solutions_sha256: canonical_hash(&enumeration.solutions),
        explained_counts,
        unexplained,
    })
}
