//! Catalog of structure-coefficient families: identifiers, parameter
//! schemas, domain validation, and total evaluation rules.
//!
//! Each case names a family of coefficient functions f: Z → Q given by
//! parity-split closed forms over integer parameters (thresholds, periods,
//! exception positions) and scalar parameters (exceptional values). Six
//! cases carry two printed readings whose even/odd exception placement
//! disagrees; both are exposed and evaluated independently.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{fmt_scalar, int, parse_scalar, Scalar};
use crate::window::{Table, Window};
use crate::Error;

/// Identifier of one catalog case.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    Fin1,
    Fin2,
    Fin3,
    Fin4,
    Rm0_1,
    Rm0_2,
    Rm0_3,
    Rm0_4,
    Rm0_5,
    Rm0_6,
    Rm0_7,
    Rm1_1,
    Rm1_2,
    Rm1_3,
    Rm1_4,
    Rm1_5,
    Rm1_6,
    Rm1_7,
    R01_1,
    R01_2,
    F0a_1,
    F0a_2,
    F0a1_1,
    F0a1_2,
    F0a1_3,
    F0a1_4,
    F0a3_A1,
    F0a3_A2,
    F0a3_A3,
    F0a3_A4,
    F0a3_A5,
    F0a3_A6,
    F0a3_A7,
    F0a3_B1,
    F0a3_B2,
    F0a3_B3,
    F0a3_B4,
    F0a3_B5,
    F0a3_B6,
    F0a3_B7,
}

use CaseId::*;

/// All catalog cases in listing order.
pub const ALL_CASES: [CaseId; 40] = [
    Fin1, Fin2, Fin3, Fin4, Rm0_1, Rm0_2, Rm0_3, Rm0_4, Rm0_5, Rm0_6, Rm0_7, Rm1_1, Rm1_2, Rm1_3,
    Rm1_4, Rm1_5, Rm1_6, Rm1_7, R01_1, R01_2, F0a_1, F0a_2, F0a1_1, F0a1_2, F0a1_3, F0a1_4,
    F0a3_A1, F0a3_A2, F0a3_A3, F0a3_A4, F0a3_A5, F0a3_A6, F0a3_A7, F0a3_B1, F0a3_B2, F0a3_B3,
    F0a3_B4, F0a3_B5, F0a3_B6, F0a3_B7,
];

impl CaseId {
    /// Printed identifier, e.g. "RM0-3" or "F0A3-B5".
    pub fn as_str(&self) -> &'static str {
        match self {
            Fin1 => "FIN-1",
            Fin2 => "FIN-2",
            Fin3 => "FIN-3",
            Fin4 => "FIN-4",
            Rm0_1 => "RM0-1",
            Rm0_2 => "RM0-2",
            Rm0_3 => "RM0-3",
            Rm0_4 => "RM0-4",
            Rm0_5 => "RM0-5",
            Rm0_6 => "RM0-6",
            Rm0_7 => "RM0-7",
            Rm1_1 => "RM1-1",
            Rm1_2 => "RM1-2",
            Rm1_3 => "RM1-3",
            Rm1_4 => "RM1-4",
            Rm1_5 => "RM1-5",
            Rm1_6 => "RM1-6",
            Rm1_7 => "RM1-7",
            R01_1 => "R01-1",
            R01_2 => "R01-2",
            F0a_1 => "F0A-1",
            F0a_2 => "F0A-2",
            F0a1_1 => "F0A1-1",
            F0a1_2 => "F0A1-2",
            F0a1_3 => "F0A1-3",
            F0a1_4 => "F0A1-4",
            F0a3_A1 => "F0A3-A1",
            F0a3_A2 => "F0A3-A2",
            F0a3_A3 => "F0A3-A3",
            F0a3_A4 => "F0A3-A4",
            F0a3_A5 => "F0A3-A5",
            F0a3_A6 => "F0A3-A6",
            F0a3_A7 => "F0A3-A7",
            F0a3_B1 => "F0A3-B1",
            F0a3_B2 => "F0A3-B2",
            F0a3_B3 => "F0A3-B3",
            F0a3_B4 => "F0A3-B4",
            F0a3_B5 => "F0A3-B5",
            F0a3_B6 => "F0A3-B6",
            F0a3_B7 => "F0A3-B7",
        }
    }

    /// Parse a printed identifier (case-sensitive).
    pub fn parse(s: &str) -> Result<CaseId, Error> {
        ALL_CASES
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }

    /// Integer parameter names required by this case, sorted.
    pub fn int_param_names(&self) -> &'static [&'static str] {
        match self {
            Fin1 | Fin2 | Fin3 | Fin4 | Rm0_2 | Rm1_2 | F0a1_1 => &[],
            Rm0_1 | Rm1_1 => &["m0", "m1"],
            Rm0_3 | Rm0_4 | Rm0_6 | Rm1_3 | Rm1_4 | Rm1_6 | R01_1 | R01_2 | F0a_1 | F0a_2
            | F0a1_4 | F0a3_A2 | F0a3_A3 | F0a3_A4 | F0a3_B2 | F0a3_B3 | F0a3_B4 => &["m0"],
            Rm0_5 | Rm0_7 | Rm1_5 | Rm1_7 => &["l0", "m0"],
            F0a1_2 | F0a1_3 => &["n0"],
            F0a3_A1 | F0a3_B1 => &["m0", "n0"],
            F0a3_A5 | F0a3_B5 => &["m0", "m1", "n0"],
            F0a3_A6 | F0a3_B6 => &["m0", "m1", "n0", "n1"],
            F0a3_A7 | F0a3_B7 => &["m0", "m1", "m2", "n0"],
        }
    }

    /// Scalar parameter names required by this case, sorted.
    pub fn scalar_param_names(&self) -> &'static [&'static str] {
        match self {
            Fin3 | Fin4 => &["f0", "f1"],
            F0a_1 | F0a_2 => &["a"],
            F0a1_2 | F0a3_B2 => &["c"],
            F0a1_4 | F0a3_A5 | F0a3_B5 => &["h"],
            F0a3_A2 => &["c", "d"],
            F0a3_A3 => &["cprime"],
            F0a3_A4 | F0a3_B4 => &["g"],
            F0a3_A6 | F0a3_B6 => &["h", "hprime"],
            F0a3_A7 | F0a3_B7 => &["g", "r"],
            F0a3_B3 => &["cprime", "dprime"],
            _ => &[],
        }
    }

    /// Whether a second (amended) reading of the printed definition exists.
    pub fn has_amended(&self) -> bool {
        matches!(self, Rm1_2 | Rm1_3 | Rm1_4 | F0a_2 | F0a3_B4 | F0a3_B5)
    }

    /// Human-readable parameter domain, empty when unconstrained.
    pub fn domain_description(&self) -> &'static str {
        match self {
            Fin1 | Fin2 | Rm0_2 | Rm1_2 | F0a1_1 => "",
            Fin3 => "f0*(f1+1) = 0",
            Fin4 => "f1*(f0+1) = 0",
            Rm0_1 => "m0 < m1",
            Rm0_3 => "m0 > 0",
            Rm0_4 => "m0 < 0",
            Rm0_5 => "l0 > -m0",
            Rm0_6 => "m0 > 1",
            Rm0_7 => "m0 > 0, l0 > 0, m0 != l0",
            Rm1_1 => "m0 > m1",
            Rm1_3 => "m0 < 0",
            Rm1_4 => "m0 > 0",
            Rm1_5 => "l0 < -m0",
            Rm1_6 => "m0 < -1",
            Rm1_7 => "m0 < 0, l0 < 0, m0 != l0",
            R01_1 | R01_2 => "m0 != 0",
            F0a_1 => "m0 != 0, a != 0",
            F0a_2 => "m0 != 0, a not in {0, -1, -1/2}",
            F0a1_2 => "n0 != 0, c not in {0, -1}",
            F0a1_3 => "n0 != 0",
            F0a1_4 => "m0 != 0, h != 0",
            F0a3_A1 => "m0 > 0, n0 < 0",
            F0a3_A2 => "m0 > 0, c*d != 0, not (c = -1 and d = -1)",
            F0a3_A3 => "m0 > 0, cprime not in {0, -1}",
            F0a3_A4 => "m0 > 0, g not in {0, -1}",
            F0a3_A5 => "m0 > 0, n0 < 0, m1 >= m0, h not in {0, -1}",
            F0a3_A6 => {
                "m0 > 0, n0 < 0, m1 >= m0, n1 > n0, h != -1, hprime != -1, h*hprime != 0"
            }
            F0a3_A7 => "m0 > 0, n0 < 0, m1 >= m0, m2 >= m0, m1 != m2, g != -1, r != -1, g*r != 0",
            F0a3_B1 => "m0 < 0, n0 > 0",
            F0a3_B2 => "m0 < 0, c not in {0, -1}",
            F0a3_B3 => "m0 < 0, cprime*dprime != 0, not (cprime = -1 and dprime = -1)",
            F0a3_B4 => "m0 < 0, g not in {0, -1}",
            F0a3_B5 => "m0 < 0, n0 > 0, m1 <= m0, h not in {0, -1}",
            F0a3_B6 => {
                "m0 < 0, n0 > 0, m1 <= m0, n1 < n0, h != -1, hprime != -1, h*hprime != 0"
            }
            F0a3_B7 => "m0 < 0, n0 > 0, m1 <= m0, m2 <= m0, m1 != m2, g != -1, r != -1, g*r != 0",
        }
    }

    /// Positions at which each scalar parameter can be read off a value
    /// table, as (name, index) pairs computed from the integer parameters.
    pub fn scalar_positions(&self, ints: &BTreeMap<String, i64>) -> Vec<(&'static str, i64)> {
        let p = |n: &str| ints[n];
        match self {
            Fin3 | Fin4 => vec![("f0", 0), ("f1", 1)],
            F0a_1 | F0a_2 => vec![("a", 0)],
            F0a1_2 => vec![("c", 2 * p("n0") + 1)],
            F0a1_4 => vec![("h", 2 * p("m0"))],
            F0a3_A2 => vec![("c", -1), ("d", -3)],
            F0a3_A3 => vec![("cprime", 3)],
            F0a3_A4 | F0a3_B4 => vec![("g", -1)],
            F0a3_A5 | F0a3_B5 => vec![("h", 2 * p("m1"))],
            F0a3_A6 | F0a3_B6 => vec![("h", 2 * p("m1")), ("hprime", 2 * p("n1") + 1)],
            F0a3_A7 | F0a3_B7 => vec![("g", 2 * p("m1")), ("r", 2 * p("m2"))],
            F0a3_B2 => vec![("c", 3)],
            F0a3_B3 => vec![("cprime", -1), ("dprime", -3)],
            _ => vec![],
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which printed reading of a case definition to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reading {
    Literal,
    Amended,
}

impl Reading {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reading::Literal => "literal",
            Reading::Amended => "amended",
        }
    }

    pub fn parse(s: &str) -> Result<Reading, Error> {
        match s {
            "literal" => Ok(Reading::Literal),
            "amended" => Ok(Reading::Amended),
            other => Err(Error::Params(format!(
                "unknown reading '{other}' (expected 'literal' or 'amended')"
            ))),
        }
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integer parameter names in the global schema.
pub const INT_PARAM_NAMES: [&str; 7] = ["k0", "l0", "m0", "m1", "m2", "n0", "n1"];

/// Scalar parameter names in the global schema.
pub const SCALAR_PARAM_NAMES: [&str; 11] = [
    "a", "c", "cprime", "d", "dprime", "f0", "f1", "g", "h", "hprime", "r",
];

/// Typed parameter assignment for a catalog case.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub ints: BTreeMap<String, i64>,
    pub scalars: BTreeMap<String, Scalar>,
}

impl FamilyParams {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_int(mut self, name: &str, value: i64) -> Self {
        self.ints.insert(name.to_string(), value);
        self
    }

    pub fn with_scalar(mut self, name: &str, value: Scalar) -> Self {
        self.scalars.insert(name.to_string(), value);
        self
    }

    /// Parse "name=value" entries separated by commas and/or newlines.
    ///
    /// Names determine the type: integer parameters take plain integers,
    /// scalar parameters take exact rationals ("p" or "p/q").
    pub fn parse(s: &str) -> Result<Self, Error> {
        let mut out = FamilyParams::new();
        for raw in s.split(|ch| ch == ',' || ch == '\n') {
            let entry = raw.trim();
            if entry.is_empty() {
                continue;
            }
            let (name, value) = entry.split_once('=').ok_or_else(|| {
                Error::Params(format!("malformed parameter entry '{entry}' (expected name=value)"))
            })?;
            let name = name.trim();
            let value = value.trim();
            if INT_PARAM_NAMES.contains(&name) {
                let v: i64 = value.parse().map_err(|_| {
                    Error::Params(format!("parameter {name} expects an integer, got '{value}'"))
                })?;
                if out.ints.insert(name.to_string(), v).is_some() {
                    return Err(Error::Params(format!("parameter {name} given twice")));
                }
            } else if SCALAR_PARAM_NAMES.contains(&name) {
                let v = parse_scalar(value)?;
                if out.scalars.insert(name.to_string(), v).is_some() {
                    return Err(Error::Params(format!("parameter {name} given twice")));
                }
            } else {
                return Err(Error::Params(format!("unknown parameter name '{name}'")));
            }
        }
        Ok(out)
    }

    /// Canonical "name=value" comma-joined form, names sorted.
    pub fn canonical_string(&self) -> String {
        let mut parts: Vec<(String, String)> = Vec::new();
        for (k, v) in &self.ints {
            parts.push((k.clone(), v.to_string()));
        }
        for (k, v) in &self.scalars {
            parts.push((k.clone(), fmt_scalar(v)));
        }
        parts.sort();
        parts
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    fn int(&self, name: &str) -> i64 {
        self.ints[name]
    }

    fn scalar(&self, name: &str) -> Scalar {
        self.scalars[name].clone()
    }
}

/// A validated catalog family: case, reading, and admissible parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    id: CaseId,
    reading: Reading,
    params: FamilyParams,
}

fn is_even(x: i64) -> bool {
    x.rem_euclid(2) == 0
}

/// x/step when step divides x exactly, else None (step must be nonzero).
fn mult_of(x: i64, step: i64) -> Option<i64> {
    (x % step == 0).then(|| x / step)
}

fn neg_one() -> Scalar {
    int(-1)
}

fn zero() -> Scalar {
    int(0)
}

fn choose(cond: bool) -> Scalar {
    if cond {
        neg_one()
    } else {
        zero()
    }
}

/// Build a family after checking the parameter schema, reading
/// availability, and the case's parameter domain.
pub fn build_family(id: CaseId, reading: Reading, params: FamilyParams) -> Result<Family, Error> {
    if reading == Reading::Amended && !id.has_amended() {
        return Err(Error::Params(format!("{id} has no amended reading")));
    }
    let want_ints = id.int_param_names();
    let got_ints: Vec<&str> = params.ints.keys().map(|s| s.as_str()).collect();
    if got_ints != want_ints {
        return Err(Error::Params(format!(
            "{id} expects integer parameters {{{}}}, got {{{}}}",
            want_ints.join(", "),
            got_ints.join(", ")
        )));
    }
    let want_scalars = id.scalar_param_names();
    let got_scalars: Vec<&str> = params.scalars.keys().map(|s| s.as_str()).collect();
    if got_scalars != want_scalars {
        return Err(Error::Params(format!(
            "{id} expects scalar parameters {{{}}}, got {{{}}}",
            want_scalars.join(", "),
            got_scalars.join(", ")
        )));
    }
    validate_domain(id, &params)?;
    Ok(Family { id, reading, params })
}

fn validate_domain(id: CaseId, p: &FamilyParams) -> Result<(), Error> {
    let fail = |msg: String| Err(Error::Validator(format!("{id} requires {msg}")));
    let i = |n: &str| p.int(n);
    let s = |n: &str| p.scalar(n);
    let nonzero = |n: &str| !s(n).eq(&zero());
    match id {
        Fin1 | Fin2 | Rm0_2 | Rm1_2 | F0a1_1 => {}
        Fin3 => {
            if s("f0") * (s("f1") + int(1)) != zero() {
                return fail("f0*(f1+1) = 0".into());
            }
        }
        Fin4 => {
            if s("f1") * (s("f0") + int(1)) != zero() {
                return fail("f1*(f0+1) = 0".into());
            }
        }
        Rm0_1 => {
            if !(i("m0") < i("m1")) {
                return fail("m0 < m1".into());
            }
        }
        Rm0_3 => {
            if !(i("m0") > 0) {
                return fail("m0 > 0".into());
            }
        }
        Rm0_4 => {
            if !(i("m0") < 0) {
                return fail("m0 < 0".into());
            }
        }
        Rm0_5 => {
            if !(i("l0") > -i("m0")) {
                return fail("l0 > -m0".into());
            }
        }
        Rm0_6 => {
            if !(i("m0") > 1) {
                return fail("m0 > 1".into());
            }
        }
        Rm0_7 => {
            if !(i("m0") > 0 && i("l0") > 0 && i("m0") != i("l0")) {
                return fail("m0 > 0, l0 > 0, m0 != l0".into());
            }
        }
        Rm1_1 => {
            if !(i("m0") > i("m1")) {
                return fail("m0 > m1".into());
            }
        }
        Rm1_3 => {
            if !(i("m0") < 0) {
                return fail("m0 < 0".into());
            }
        }
        Rm1_4 => {
            if !(i("m0") > 0) {
                return fail("m0 > 0".into());
            }
        }
        Rm1_5 => {
            if !(i("l0") < -i("m0")) {
                return fail("l0 < -m0".into());
            }
        }
        Rm1_6 => {
            if !(i("m0") < -1) {
                return fail("m0 < -1".into());
            }
        }
        Rm1_7 => {
            if !(i("m0") < 0 && i("l0") < 0 && i("m0") != i("l0")) {
                return fail("m0 < 0, l0 < 0, m0 != l0".into());
            }
        }
        R01_1 | R01_2 => {
            if i("m0") == 0 {
                return fail("m0 != 0".into());
            }
        }
        F0a_1 => {
            if i("m0") == 0 || !nonzero("a") {
                return fail("m0 != 0, a != 0".into());
            }
        }
        F0a_2 => {
            let a = s("a");
            if i("m0") == 0 || a == zero() || a == neg_one() || a == int(-1) / int(2) {
                return fail("m0 != 0, a not in {0, -1, -1/2}".into());
            }
        }
        F0a1_2 => {
            let c = s("c");
            if i("n0") == 0 || c == zero() || c == neg_one() {
                return fail("n0 != 0, c not in {0, -1}".into());
            }
        }
        F0a1_3 => {
            if i("n0") == 0 {
                return fail("n0 != 0".into());
            }
        }
        F0a1_4 => {
            if i("m0") == 0 || !nonzero("h") {
                return fail("m0 != 0, h != 0".into());
            }
        }
        F0a3_A1 => {
            if !(i("m0") > 0 && i("n0") < 0) {
                return fail("m0 > 0, n0 < 0".into());
            }
        }
        F0a3_A2 => {
            let (c, d) = (s("c"), s("d"));
            if !(i("m0") > 0)
                || c == zero()
                || d == zero()
                || (c == neg_one() && d == neg_one())
            {
                return fail("m0 > 0, c*d != 0, not (c = -1 and d = -1)".into());
            }
        }
        F0a3_A3 => {
            let v = s("cprime");
            if !(i("m0") > 0) || v == zero() || v == neg_one() {
                return fail("m0 > 0, cprime not in {0, -1}".into());
            }
        }
        F0a3_A4 => {
            let v = s("g");
            if !(i("m0") > 0) || v == zero() || v == neg_one() {
                return fail("m0 > 0, g not in {0, -1}".into());
            }
        }
        F0a3_A5 => {
            let h = s("h");
            if !(i("m0") > 0 && i("n0") < 0 && i("m1") >= i("m0"))
                || h == zero()
                || h == neg_one()
            {
                return fail("m0 > 0, n0 < 0, m1 >= m0, h not in {0, -1}".into());
            }
        }
        F0a3_A6 => {
            let (h, hp) = (s("h"), s("hprime"));
            if !(i("m0") > 0 && i("n0") < 0 && i("m1") >= i("m0") && i("n1") > i("n0"))
                || h == neg_one()
                || hp == neg_one()
                || h == zero()
                || hp == zero()
            {
                return fail(
                    "m0 > 0, n0 < 0, m1 >= m0, n1 > n0, h != -1, hprime != -1, h*hprime != 0"
                        .into(),
                );
            }
        }
        F0a3_A7 => {
            let (g, r) = (s("g"), s("r"));
            if !(i("m0") > 0
                && i("n0") < 0
                && i("m1") >= i("m0")
                && i("m2") >= i("m0")
                && i("m1") != i("m2"))
                || g == neg_one()
                || r == neg_one()
                || g == zero()
                || r == zero()
            {
                return fail(
                    "m0 > 0, n0 < 0, m1 >= m0, m2 >= m0, m1 != m2, g != -1, r != -1, g*r != 0"
                        .into(),
                );
            }
        }
        F0a3_B1 => {
            if !(i("m0") < 0 && i("n0") > 0) {
                return fail("m0 < 0, n0 > 0".into());
            }
        }
        F0a3_B2 => {
            let c = s("c");
            if !(i("m0") < 0) || c == zero() || c == neg_one() {
                return fail("m0 < 0, c not in {0, -1}".into());
            }
        }
        F0a3_B3 => {
            let (cp, dp) = (s("cprime"), s("dprime"));
            if !(i("m0") < 0)
                || cp == zero()
                || dp == zero()
                || (cp == neg_one() && dp == neg_one())
            {
                return fail("m0 < 0, cprime*dprime != 0, not (cprime = -1 and dprime = -1)".into());
            }
        }
        F0a3_B4 => {
            let g = s("g");
            if !(i("m0") < 0) || g == zero() || g == neg_one() {
                return fail("m0 < 0, g not in {0, -1}".into());
            }
        }
        F0a3_B5 => {
            let h = s("h");
            if !(i("m0") < 0 && i("n0") > 0 && i("m1") <= i("m0"))
                || h == zero()
                || h == neg_one()
            {
                return fail("m0 < 0, n0 > 0, m1 <= m0, h not in {0, -1}".into());
            }
        }
        F0a3_B6 => {
            let (h, hp) = (s("h"), s("hprime"));
            if !(i("m0") < 0 && i("n0") > 0 && i("m1") <= i("m0") && i("n1") < i("n0"))
                || h == neg_one()
                || hp == neg_one()
                || h == zero()
                || hp == zero()
            {
                return fail(
                    "m0 < 0, n0 > 0, m1 <= m0, n1 < n0, h != -1, hprime != -1, h*hprime != 0"
                        .into(),
                );
            }
        }
        F0a3_B7 => {
            let (g, r) = (s("g"), s("r"));
            if !(i("m0") < 0
                && i("n0") > 0
                && i("m1") <= i("m0")
                && i("m2") <= i("m0")
                && i("m1") != i("m2"))
                || g == neg_one()
                || r == neg_one()
                || g == zero()
                || r == zero()
            {
                return fail(
                    "m0 < 0, n0 > 0, m1 <= m0, m2 <= m0, m1 != m2, g != -1, r != -1, g*r != 0"
                        .into(),
                );
            }
        }
    }
    Ok(())
}

impl Family {
    pub fn id(&self) -> CaseId {
        self.id
    }

    pub fn reading(&self) -> Reading {
        self.reading
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    /// Evaluate the family at any integer index (total).
    pub fn eval(&self, x: i64) -> Scalar {
        let p = &self.params;
        let i = |n: &str| p.int(n);
        let s = |n: &str| p.scalar(n);
        let amended = self.reading == Reading::Amended;
        match self.id {
            Fin1 => zero(),
            Fin2 => neg_one(),
            Fin3 => {
                if is_even(x) {
                    if x == 0 {
                        s("f0")
                    } else {
                        zero()
                    }
                } else if x == 1 {
                    s("f1")
                } else {
                    neg_one()
                }
            }
            Fin4 => {
                if is_even(x) {
                    if x == 0 {
                        s("f0")
                    } else {
                        neg_one()
                    }
                } else if x == 1 {
                    s("f1")
                } else {
                    zero()
                }
            }
            Rm0_1 => {
                let (m0, m1) = (i("m0"), i("m1"));
                let step = m1 - m0;
                if is_even(x) {
                    if x == 2 * m0 {
                        neg_one()
                    } else {
                        let m = x / 2;
                        choose(m >= m1 && (m - m1) % step == 0)
                    }
                } else if x == -2 * m1 + 1 {
                    neg_one()
                } else {
                    let l = (x - 1) / 2;
                    choose(l >= -m0 && (l + m0) % step == 0)
                }
            }
            Rm0_2 => {
                if is_even(x) {
                    choose(x > 0)
                } else {
                    choose(x == -1 || x >= 3)
                }
            }
            Rm0_3 => {
                let m0 = i("m0");
                if is_even(x) {
                    choose(matches!(mult_of(x, 2 * m0), Some(k) if k >= 0))
                } else if x == -2 * m0 + 1 {
                    neg_one()
                } else {
                    choose(matches!(mult_of(x - 1, 2 * m0), Some(k) if k >= 0))
                }
            }
            Rm0_4 => {
                let m0 = i("m0");
                if is_even(x) {
                    if x == 2 * m0 {
                        neg_one()
                    } else {
                        choose(matches!(mult_of(x, 2 * m0), Some(k) if k <= 0))
                    }
                } else {
                    choose(matches!(mult_of(x - 1, 2 * m0), Some(k) if k <= 0))
                }
            }
            Rm0_5 => {
                if is_even(x) {
                    choose(x / 2 >= i("m0"))
                } else {
                    choose((x - 1) / 2 >= i("l0"))
                }
            }
            Rm0_6 => {
                if x == 0 || x == 1 {
                    neg_one()
                } else {
                    choose(x >= i("m0"))
                }
            }
            Rm0_7 => {
                if x == 0 || x == 1 {
                    neg_one()
                } else if is_even(x) {
                    choose(x / 2 >= i("m0"))
                } else {
                    choose((x - 1) / 2 >= i("l0"))
                }
            }
            Rm1_1 => {
                let (m0, m1) = (i("m0"), i("m1"));
                let step = m0 - m1;
                if is_even(x) {
                    if x == 2 * m0 {
                        neg_one()
                    } else {
                        let m = x / 2;
                        choose(m <= m1 && (m1 - m) % step == 0)
                    }
                } else if x == -2 * m1 + 1 {
                    neg_one()
                } else {
                    let l = (x - 1) / 2;
                    choose(l <= -m0 && (-m0 - l) % step == 0)
                }
            }
            Rm1_2 => {
                if is_even(x) {
                    if amended {
                        choose(x < 0)
                    } else {
                        choose(x == 2 || x < 0)
                    }
                } else {
                    choose(x <= -1)
                }
            }
            Rm1_3 => {
                let m0 = i("m0");
                if amended {
                    if is_even(x) {
                        if x == -2 * m0 {
                            neg_one()
                        } else {
                            choose(matches!(mult_of(x, 2 * m0), Some(k) if k >= 0))
                        }
                    } else {
                        choose(matches!(mult_of(x - 1, 2 * m0), Some(k) if k >= 0))
                    }
                } else if is_even(x) {
                    choose(matches!(mult_of(x, 2 * m0), Some(k) if k >= 0))
                } else if x == -2 * m0 + 1 {
                    neg_one()
                } else {
                    choose(matches!(mult_of(x - 1, 2 * m0), Some(k) if k >= 0))
                }
            }
            Rm1_4 => {
                let m0 = i("m0");
                if amended {
                    if is_even(x) {
                        choose(matches!(mult_of(x, 2 * m0), Some(k) if k <= 0))
                    } else if x == 2 * m0 + 1 {
                        neg_one()
                    } else {
                        choose(matches!(mult_of(x - 1, 2 * m0), Some(k) if k <= 0))
                    }
                } else if is_even(x) {
                    if x == 2 * m0 {
                        neg_one()
                    } else {
                        choose(matches!(mult_of(x, 2 * m0), Some(k) if k <= 0))
                    }
                } else {
                    choose(matches!(mult_of(x - 1, 2 * m0), Some(k) if k <= 0))
                }
            }
            Rm1_5 => {
                if is_even(x) {
                    choose(x / 2 <= i("m0"))
                } else {
                    choose((x - 1) / 2 <= i("l0"))
                }
            }
            Rm1_6 => {
                if x == 0 || x == 1 {
                    neg_one()
                } else {
                    choose(x <= 2 * i("m0") + 1)
                }
            }
            Rm1_7 => {
                if x == 0 || x == 1 {
                    neg_one()
                } else if is_even(x) {
                    choose(x / 2 <= i("m0"))
                } else {
                    choose((x - 1) / 2 <= i("l0"))
                }
            }
            R01_1 => {
                let m0 = i("m0");
                let on_grid = if is_even(x) {
                    x % (2 * m0) == 0
                } else {
                    (x - 1) % (2 * m0) == 0
                };
                if on_grid {
                    zero()
                } else {
                    neg_one()
                }
            }
            R01_2 => {
                let m0 = i("m0");
                let on_grid = if is_even(x) {
                    x % (2 * m0) == 0
                } else {
                    (x - 1) % (2 * m0) == 0
                };
                choose(on_grid)
            }
            F0a_1 => {
                let m0 = i("m0");
                if is_even(x) {
                    if x % (2 * m0) == 0 {
                        s("a")
                    } else {
                        zero()
                    }
                } else if (x - 1) % (2 * m0) == 0 {
                    -int(1) - s("a")
                } else {
                    zero()
                }
            }
            F0a_2 => {
                let m0 = i("m0");
                let a = s("a");
                let denom = int(1) + int(2) * a.clone();
                let v2 = -a.clone() / denom.clone();
                let v3 = -(int(1) + a.clone()) / denom;
                if amended {
                    if is_even(x) {
                        match mult_of(x, 2 * m0) {
                            None => zero(),
                            Some(k) => {
                                if is_even(k) {
                                    a
                                } else {
                                    v2
                                }
                            }
                        }
                    } else {
                        match mult_of(x - 1, 2 * m0) {
                            None => zero(),
                            Some(k) => {
                                if is_even(k) {
                                    -int(1) - a
                                } else {
                                    v3
                                }
                            }
                        }
                    }
                } else {
                    let period = 4 * m0;
                    let vals = [a.clone(), -int(1) - a, v2, v3];
                    for (r, v) in vals.into_iter().enumerate() {
                        if (x - r as i64) % period == 0 {
                            return v;
                        }
                    }
                    zero()
                }
            }
            F0a1_1 => choose(!is_even(x)),
            F0a1_2 => {
                if is_even(x) {
                    zero()
                } else if x == 2 * i("n0") + 1 {
                    s("c")
                } else {
                    neg_one()
                }
            }
            F0a1_3 => {
                if is_even(x) {
                    zero()
                } else {
                    choose(x != 2 * i("n0") + 1)
                }
            }
            F0a1_4 => {
                if is_even(x) {
                    if x == 2 * i("m0") {
                        s("h")
                    } else {
                        zero()
                    }
                } else {
                    neg_one()
                }
            }
            F0a3_A1 => {
                if is_even(x) {
                    choose(x / 2 >= i("m0"))
                } else {
                    choose((x - 1) / 2 > i("n0"))
                }
            }
            F0a3_A2 => {
                if is_even(x) {
                    choose(x / 2 >= i("m0"))
                } else if x == -1 {
                    s("c")
                } else if x == -3 {
                    s("d")
                } else {
                    choose((x - 1) / 2 >= 0)
                }
            }
            F0a3_A3 => {
                if is_even(x) {
                    choose(x / 2 >= i("m0"))
                } else if x == 3 {
                    s("cprime")
                } else if x == -1 || x == -3 {
                    neg_one()
                } else {
                    choose((x - 1) / 2 >= 0)
                }
            }
            F0a3_A4 => {
                if is_even(x) {
                    choose(x / 2 >= i("m0"))
                } else if x == -1 {
                    s("g")
                } else {
                    choose((x - 1) / 2 >= 0)
                }
            }
            F0a3_A5 => {
                if is_even(x) {
                    if x == 2 * i("m1") {
                        s("h")
                    } else {
                        choose(x / 2 >= i("m0"))
                    }
                } else {
                    choose((x - 1) / 2 > i("n0"))
                }
            }
            F0a3_A6 => {
                if is_even(x) {
                    if x == 2 * i("m1") {
                        s("h")
                    } else {
                        choose(x / 2 >= i("m0"))
                    }
                } else if x == 2 * i("n1") + 1 {
                    s("hprime")
                } else {
                    choose((x - 1) / 2 > i("n0"))
                }
            }
            F0a3_A7 => {
                if is_even(x) {
                    if x == 2 * i("m1") {
                        s("g")
                    } else if x == 2 * i("m2") {
                        s("r")
                    } else {
                        choose(x / 2 >= i("m0"))
                    }
                } else {
                    choose((x - 1) / 2 > i("n0"))
                }
            }
            F0a3_B1 => {
                if is_even(x) {
                    choose(x / 2 <= i("m0"))
                } else {
                    choose((x - 1) / 2 < i("n0"))
                }
            }
            F0a3_B2 => {
                if is_even(x) {
                    choose(x / 2 <= i("m0"))
                } else if x == 3 {
                    s("c")
                } else {
                    choose((x - 1) / 2 <= 0)
                }
            }
            F0a3_B3 => {
                if is_even(x) {
                    choose(x / 2 <= i("m0"))
                } else if x == -1 {
                    s("cprime")
                } else if x == -3 {
                    s("dprime")
                } else if x == 1 || x == 3 {
                    neg_one()
                } else {
                    choose((x - 1) / 2 < -2)
                }
            }
            F0a3_B4 => {
                if is_even(x) {
                    if amended {
                        choose(x / 2 <= i("m0"))
                    } else {
                        choose(x / 2 >= i("m0"))
                    }
                } else if x == -1 {
                    s("g")
                } else {
                    choose((x - 1) / 2 <= 0)
                }
            }
            F0a3_B5 => {
                if is_even(x) {
                    if x == 2 * i("m1") {
                        s("h")
                    } else if amended {
                        choose(x / 2 <= i("m0"))
                    } else {
                        choose(x / 2 >= i("m0"))
                    }
                } else {
                    choose((x - 1) / 2 < i("n0"))
                }
            }
            F0a3_B6 => {
                if is_even(x) {
                    if x == 2 * i("m1") {
                        s("h")
                    } else {
                        choose(x / 2 <= i("m0"))
                    }
                } else if x == 2 * i("n1") + 1 {
                    s("hprime")
                } else {
                    choose((x - 1) / 2 < i("n0"))
                }
            }
            F0a3_B7 => {
                if is_even(x) {
                    if x == 2 * i("m1") {
                        s("g")
                    } else if x == 2 * i("m2") {
                        s("r")
                    } else {
                        choose(x / 2 <= i("m0"))
                    }
                } else {
                    choose((x - 1) / 2 < i("n0"))
                }
            }
        }
    }

    /// Restriction of the family to a window, as a table.
    pub fn restrict(&self, window: Window) -> Table {
        Table::from_fn(window, |x| self.eval(x))
    }
}

/// A coefficient assignment: a catalog family, an explicit finite table,
/// a constant, or a scalar multiple of another assignment.
#[derive(Clone, Debug)]
pub enum CoeffSpec {
    Family(Family),
    Table(Table),
    Const(Scalar),
    Scaled { base: Box<CoeffSpec>, factor: Scalar },
}

impl CoeffSpec {
    /// Value at index i; None when a backing table does not cover i.
    pub fn eval(&self, i: i64) -> Option<Scalar> {
        match self {
            CoeffSpec::Family(fam) => Some(fam.eval(i)),
            CoeffSpec::Table(t) => t.get(i).cloned(),
            CoeffSpec::Const(c) => Some(c.clone()),
            CoeffSpec::Scaled { base, factor } => base.eval(i).map(|v| v * factor),
        }
    }

    /// Whether every integer index is covered.
    pub fn is_total(&self) -> bool {
        match self {
            CoeffSpec::Family(_) | CoeffSpec::Const(_) => true,
            CoeffSpec::Table(_) => false,
            CoeffSpec::Scaled { base, .. } => base.is_total(),
        }
    }

    /// Indices this spec covers inside the given window.
    pub fn covers(&self, i: i64) -> bool {
        match self {
            CoeffSpec::Family(_) | CoeffSpec::Const(_) => true,
            CoeffSpec::Table(t) => t.window().contains(i),
            CoeffSpec::Scaled { base, .. } => base.covers(i),
        }
    }

    /// Restrict to a window; fails if any index is uncovered.
    pub fn restrict(&self, window: Window) -> Result<Table, Error> {
        let mut values = Vec::with_capacity(window.len());
        for i in window.indices() {
            values.push(self.eval(i).ok_or_else(|| {
                Error::Window(format!("coefficient table does not cover index {i}"))
            })?);
        }
        Table::from_values(window, values)
    }
}

/// One catalog listing row.
#[derive(Clone, Debug)]
pub struct CaseInfo {
    pub id: CaseId,
    pub int_params: &'static [&'static str],
    pub scalar_params: &'static [&'static str],
    pub domain: &'static str,
    pub has_amended: bool,
}

/// All 40 catalog rows in listing order.
pub fn enumerate_cases() -> Vec<CaseInfo> {
    ALL_CASES
        .iter()
        .map(|&id| CaseInfo {
            id,
            int_params: id.int_param_names(),
            scalar_params: id.scalar_param_names(),
            domain: id.domain_description(),
            has_amended: id.has_amended(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(id: CaseId, params: &str) -> Family {
        build_family(id, Reading::Literal, FamilyParams::parse(params).unwrap()).unwrap()
    }

    fn fam_amended(id: CaseId, params: &str) -> Family {
        build_family(id, Reading::Amended, FamilyParams::parse(params).unwrap()).unwrap()
    }

    #[test]
    fn forty_cases_round_trip() {
        assert_eq!(ALL_CASES.len(), 40);
        assert_eq!(enumerate_cases().len(), 40);
        for id in ALL_CASES {
            assert_eq!(CaseId::parse(id.as_str()).unwrap(), id);
        }
        assert!(CaseId::parse("FIN-9").is_err());
        assert_eq!(
            ALL_CASES.iter().filter(|c| c.has_amended()).count(),
            6
        );
    }

    #[test]
    fn param_parse_round_trip() {
        let p = FamilyParams::parse("a=-1/2,m0=1").unwrap();
        assert_eq!(p.canonical_string(), "a=-1/2,m0=1");
        let doc = FamilyParams::parse("m0 = 1\na = -1/2\n").unwrap();
        assert_eq!(doc, p);
        assert!(FamilyParams::parse("a=0.5").is_err());
        assert!(FamilyParams::parse("m0=1/2").is_err());
        assert!(FamilyParams::parse("q=3").is_err());
        assert!(FamilyParams::parse("a=1,a=2").is_err());
        assert!(FamilyParams::parse("a").is_err());
    }

    #[test]
    fn schema_is_enforced() {
        let missing = build_family(F0a_1, Reading::Literal, FamilyParams::parse("m0=1").unwrap());
        assert!(matches!(missing, Err(Error::Params(_))));
        let extra = build_family(
            Fin1,
            Reading::Literal,
            FamilyParams::parse("m0=1").unwrap(),
        );
        assert!(matches!(extra, Err(Error::Params(_))));
        let no_amended = build_family(Fin1, Reading::Amended, FamilyParams::new());
        assert!(matches!(no_amended, Err(Error::Params(_))));
    }

    #[test]
    fn validators_cite_domains() {
        let half = build_family(
            F0a_2,
            Reading::Literal,
            FamilyParams::parse("a=-1/2,m0=1").unwrap(),
        );
        match half {
            Err(Error::Validator(msg)) => assert!(msg.contains("-1/2"), "{msg}"),
            other => panic!("expected validator rejection, got {other:?}"),
        }
        assert!(build_family(
            Rm0_1,
            Reading::Literal,
            FamilyParams::parse("m0=3,m1=1").unwrap()
        )
        .is_err());
        assert!(build_family(
            Rm1_6,
            Reading::Literal,
            FamilyParams::parse("m0=1").unwrap()
        )
        .is_err());
        assert!(build_family(
            F0a3_A6,
            Reading::Literal,
            FamilyParams::parse("m0=1,m1=1,n0=-1,n1=0,h=0,hprime=2").unwrap()
        )
        .is_err());
        assert!(build_family(
            Fin3,
            Reading::Literal,
            FamilyParams::parse("f0=1,f1=1").unwrap()
        )
        .is_err());
        assert!(build_family(
            Fin3,
            Reading::Literal,
            FamilyParams::parse("f0=0,f1=1").unwrap()
        )
        .is_ok());
        assert!(build_family(R01_1, Reading::Literal, FamilyParams::parse("m0=3").unwrap()).is_ok());
    }

    #[test]
    fn four_value_pattern_matches_both_readings() {
        let lit = fam(F0a_2, "a=1,m0=1");
        let vals: Vec<Scalar> = (0..4).map(|x| lit.eval(x)).collect();
        assert_eq!(
            vals,
            vec![int(1), int(-2), int(-1) / int(3), int(-2) / int(3)]
        );
        let amd = fam_amended(F0a_2, "a=1,m0=1");
        for x in -8..=8 {
            assert_eq!(lit.eval(x), amd.eval(x), "readings diverge at {x} for m0=1");
        }
        let lit2 = fam(F0a_2, "a=1,m0=2");
        let amd2 = fam_amended(F0a_2, "a=1,m0=2");
        assert_eq!(lit2.eval(2), int(-1) / int(3));
        assert_eq!(amd2.eval(2), int(0));
    }

    #[test]
    fn period_two_grid() {
        let f = fam(F0a_1, "a=2,m0=2");
        assert_eq!(f.eval(0), int(2));
        assert_eq!(f.eval(2), int(0));
        assert_eq!(f.eval(4), int(2));
        assert_eq!(f.eval(1), int(-3));
        assert_eq!(f.eval(3), int(0));
        assert_eq!(f.eval(5), int(-3));
    }

    #[test]
    fn constant_restriction() {
        let f = fam(Fin2, "");
        let t = f.restrict(Window::new(1).unwrap());
        assert_eq!(t.row_string(), "-1,-1,-1");
    }

    #[test]
    fn initial_values_per_branch() {
        let f = fam(F0a_1, "a=2,m0=1");
        assert_eq!(f.eval(0), int(2));
        assert_eq!(f.eval(1), int(-3));
        for f in [
            fam(F0a1_1, ""),
            fam(F0a1_2, "c=2,n0=2"),
            fam(F0a1_3, "n0=2"),
            fam(F0a1_4, "h=2,m0=1"),
        ] {
            assert_eq!(f.eval(0), int(0), "{}", f.id());
            assert_eq!(f.eval(1), int(-1), "{}", f.id());
        }
        for f in [
            fam(F0a3_A1, "m0=1,n0=-1"),
            fam(F0a3_B1, "m0=-1,n0=1"),
            fam(F0a3_A2, "c=-1,d=2,m0=1"),
            fam(F0a3_B3, "cprime=2,dprime=-3,m0=-1"),
        ] {
            assert_eq!(f.eval(0), int(0), "{}", f.id());
            assert_eq!(f.eval(1), int(-1), "{}", f.id());
        }
    }

    #[test]
    fn amended_readings_move_exceptions() {
        let lit = fam(Rm1_2, "");
        let amd = fam_amended(Rm1_2, "");
        assert_eq!(lit.eval(2), int(-1));
        assert_eq!(amd.eval(2), int(0));
        assert_eq!(lit.eval(-4), amd.eval(-4));

        let lit = fam(Rm1_3, "m0=-2");
        let amd = fam_amended(Rm1_3, "m0=-2");
        assert_eq!(lit.eval(5), int(-1));
        assert_eq!(amd.eval(5), int(0));
        assert_eq!(lit.eval(4), int(0));
        assert_eq!(amd.eval(4), int(-1));

        let lit = fam(Rm1_4, "m0=2");
        let amd = fam_amended(Rm1_4, "m0=2");
        assert_eq!(lit.eval(4), int(-1));
        assert_eq!(amd.eval(4), int(0));
        assert_eq!(lit.eval(5), int(0));
        assert_eq!(amd.eval(5), int(-1));

        let lit = fam(F0a3_B4, "g=2,m0=-1");
        let amd = fam_amended(F0a3_B4, "g=2,m0=-1");
        assert_eq!(lit.eval(2), int(-1));
        assert_eq!(amd.eval(2), int(0));
        assert_eq!(lit.eval(-4), int(0));
        assert_eq!(amd.eval(-4), int(-1));
        assert_eq!(lit.eval(-1), int(2));
        assert_eq!(amd.eval(-1), int(2));
    }

    #[test]
    fn scalar_positions_read_back() {
        let f = fam(F0a3_A6, "h=2,hprime=2,m0=1,m1=1,n0=-1,n1=0");
        for (name, pos) in f.id().scalar_positions(&f.params().ints) {
            assert_eq!(f.eval(pos), f.params().scalars[name], "{name}@{pos}");
        }
        let f = fam(F0a3_B7, "g=2,m0=-1,m1=-1,m2=-2,n0=1,r=-3");
        for (name, pos) in f.id().scalar_positions(&f.params().ints) {
            assert_eq!(f.eval(pos), f.params().scalars[name], "{name}@{pos}");
        }
    }

    #[test]
    fn coeff_spec_evaluation() {
        let table = Table::from_fn(Window::new(2).unwrap(), |i| int(i));
        let spec = CoeffSpec::Table(table);
        assert_eq!(spec.eval(2), Some(int(2)));
        assert_eq!(spec.eval(3), None);
        assert!(!spec.is_total());
        let scaled = CoeffSpec::Scaled {
            base: Box::new(spec),
            factor: int(-2),
        };
        assert_eq!(scaled.eval(2), Some(int(-4)));
        assert_eq!(scaled.eval(3), None);
        assert!(scaled.restrict(Window::new(3).unwrap()).is_err());
        let c = CoeffSpec::Const(int(7));
        assert!(c.is_total());
        assert_eq!(
            c.restrict(Window::new(1).unwrap()).unwrap().row_string(),
            "7,7,7"
        );
    }
}
