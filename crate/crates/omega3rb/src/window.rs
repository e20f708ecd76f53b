//! Finite symmetric index windows [−N, N] and coefficient tables backed
//! by them.

use std::collections::BTreeMap;

use crate::scalar::{fmt_scalar, Scalar};
use crate::Error;

/// The symmetric integer interval [−radius, radius].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    radius: i64,
}

impl Window {
    /// Window of the given radius (radius ≥ 0 required).
    pub fn new(radius: i64) -> Result<Self, Error> {
        if radius < 0 {
            return Err(Error::Window(format!(
                "window radius must be nonnegative, got {radius}"
            )));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn lo(&self) -> i64 {
        -self.radius
    }

    pub fn hi(&self) -> i64 {
        self.radius
    }

    /// Number of indices in the window (2·radius + 1).
    pub fn len(&self) -> usize {
        (2 * self.radius + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: i64) -> bool {
        -self.radius <= i && i <= self.radius
    }

    /// Indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = i64> + Clone {
        -self.radius..=self.radius
    }

    /// Offset of index i within the ascending enumeration, if contained.
    pub fn offset(&self, i: i64) -> Option<usize> {
        self.contains(i).then(|| (i + self.radius) as usize)
    }

    /// The window shrunk by a margin on both sides; must stay nonempty.
    pub fn inner(&self, margin: i64) -> Result<Window, Error> {
        if margin < 0 || self.radius - margin < 0 {
            return Err(Error::Window(format!(
                "margin {margin} leaves no inner window inside [-{0}, {0}]",
                self.radius
            )));
        }
        Window::new(self.radius - margin)
    }
}

/// A coefficient table: one exact scalar per window index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    window: Window,
    values: Vec<Scalar>,
}

impl Table {
    /// Build from a total assignment over the window.
    pub fn from_fn(window: Window, mut f: impl FnMut(i64) -> Scalar) -> Self {
        let values = window.indices().map(&mut f).collect();
        Self { window, values }
    }

    /// Build from an ascending value vector (length must match the window).
    pub fn from_values(window: Window, values: Vec<Scalar>) -> Result<Self, Error> {
        if values.len() != window.len() {
            return Err(Error::Window(format!(
                "table length {} does not match window size {}",
                values.len(),
                window.len()
            )));
        }
        Ok(Self { window, values })
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Value at index i, or None when i falls outside the window.
    pub fn get(&self, i: i64) -> Option<&Scalar> {
        self.window.offset(i).map(|o| &self.values[o])
    }

    /// Values in ascending index order.
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Canonical comma-joined row of values in ascending index order.
    pub fn row_string(&self) -> String {
        self.values
            .iter()
            .map(fmt_scalar)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Index → canonical value string map (for JSON emission).
    pub fn as_string_map(&self) -> BTreeMap<i64, String> {
        self.window
            .indices()
            .zip(self.values.iter())
            .map(|(i, v)| (i, fmt_scalar(v)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn window_basics() {
        let w = Window::new(4).unwrap();
        assert_eq!(w.len(), 9);
        assert!(w.contains(-4) && w.contains(4));
        assert!(!w.contains(5) && !w.contains(-5));
        assert_eq!(w.offset(-4), Some(0));
        assert_eq!(w.offset(4), Some(8));
        assert_eq!(w.offset(5), None);
        assert_eq!(w.indices().collect::<Vec<_>>().len(), 9);
        assert!(Window::new(-1).is_err());
    }

    #[test]
    fn inner_window() {
        let w = Window::new(5).unwrap();
        assert_eq!(w.inner(2).unwrap(), Window::new(3).unwrap());
        assert_eq!(w.inner(5).unwrap(), Window::new(0).unwrap());
        assert!(w.inner(6).is_err());
        assert!(w.inner(-1).is_err());
    }

    #[test]
    fn table_round_trip() {
        let w = Window::new(2).unwrap();
        let t = Table::from_fn(w, |i| int(i) / int(2));
        assert_eq!(t.get(-2), Some(&int(-1)));
        assert_eq!(t.get(1), Some(&(int(1) / int(2))));
        assert_eq!(t.get(3), None);
        assert_eq!(t.row_string(), "-1,-1/2,0,1/2,1");
        assert!(Table::from_values(w, vec![int(0)]).is_err());
    }
}
