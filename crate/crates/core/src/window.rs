//! Closed twist intervals `[lo, hi]` and integer rows indexed by twist.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A closed, nonempty interval of twists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    lo: i64,
    hi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("empty window: {lo} > {hi}")]
    Empty { lo: i64, hi: i64 },
    #[error("malformed window `{0}`, expected `lo:hi`")]
    Malformed(String),
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self, WindowError> {
        if lo > hi {
            return Err(WindowError::Empty { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = i64> + Clone {
        self.lo..=self.hi
    }

    pub(crate) fn index(&self, n: i64) -> Option<usize> {
        self.contains(n).then(|| (n - self.lo) as usize)
    }
}

/// `[-1, 8]`: every table in the reproduction plus one guard column each side.
impl Default for Window {
    fn default() -> Self {
        Window { lo: -1, hi: 8 }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = WindowError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| WindowError::Malformed(s.to_string()))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| WindowError::Malformed(s.to_string()))
        };
        Window::new(parse(lo)?, parse(hi)?)
    }
}

/// A function `n -> value` sampled on a window, e.g. `n -> h^0(F(n))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertRow {
    window: Window,
    values: Vec<u128>,
}

impl HilbertRow {
    pub fn tabulate(window: Window, f: impl FnMut(i64) -> u128) -> Self {
        HilbertRow {
            window,
            values: window.iter().map(f).collect(),
        }
    }

    pub fn try_tabulate<E>(
        window: Window,
        f: impl FnMut(i64) -> Result<u128, E>,
    ) -> Result<Self, E> {
        Ok(HilbertRow {
            window,
            values: window.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    /// Row starting at twist `start`.
    pub fn from_values(start: i64, values: Vec<u128>) -> Result<Self, WindowError> {
        let window = Window::new(start, start + values.len() as i64 - 1)?;
        Ok(HilbertRow { window, values })
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn get(&self, n: i64) -> Option<u128> {
        self.window.index(n).map(|i| self.values[i])
    }

    pub fn values(&self) -> &[u128] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u128)> + '_ {
        self.window.iter().zip(self.values.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lo_hi() {
        assert_eq!("0:6".parse::<Window>().unwrap(), Window::new(0, 6).unwrap());
        assert_eq!("-1:8".parse::<Window>().unwrap(), Window::default());
        assert!(matches!(
            "3:1".parse::<Window>(),
            Err(WindowError::Empty { .. })
        ));
        assert!(matches!(
            "3".parse::<Window>(),
            Err(WindowError::Malformed(_))
        ));
        assert!(matches!(
            "a:1".parse::<Window>(),
            Err(WindowError::Malformed(_))
        ));
    }

    #[test]
    fn row_lookup() {
        let row = HilbertRow::from_values(2, vec![1, 9, 26]).unwrap();
        assert_eq!(row.get(3), Some(9));
        assert_eq!(row.get(1), None);
        assert_eq!(row.get(5), None);
        assert_eq!(row.window().len(), 3);
    }
}
