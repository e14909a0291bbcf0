//! Dimension values with stabilization bookkeeping.

use std::fmt;

/// A k-dimension as far as it is known.
#[derive(Debug, Clone, Eq)]
pub enum DimensionValue {
    Known(u64),
    Zero,
    Unknown,
    /// Not a finite number; the description says why (e.g. window growth).
    Symbolic(String),
}

impl DimensionValue {
    pub fn known(d: u64) -> DimensionValue {
        if d == 0 {
            DimensionValue::Zero
        } else {
            DimensionValue::Known(d)
        }
    }

    /// The finite value, if there is one.
    pub fn as_known(&self) -> Option<u64> {
        match self {
            DimensionValue::Known(d) => Some(*d),
            DimensionValue::Zero => Some(0),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_known() == Some(0)
    }
}

impl PartialEq for DimensionValue {
    fn eq(&self, other: &Self) -> bool {
        match (self.as_known(), other.as_known()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => match (self, other) {
                (DimensionValue::Unknown, DimensionValue::Unknown) => true,
                (DimensionValue::Symbolic(a), DimensionValue::Symbolic(b)) => a == b,
                _ => false,
            },
            _ => false,
        }
    }
}

impl fmt::Display for DimensionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimensionValue::Known(d) => write!(f, "{d}"),
            DimensionValue::Zero => write!(f, "0"),
            DimensionValue::Unknown => write!(f, "?"),
            DimensionValue::Symbolic(s) => write!(f, "inf({s})"),
        }
    }
}

/// Whether a sequence of window values settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    /// The last few values agree.
    Stable,
    /// The values keep increasing: treated as infinite-dimensional.
    Growing,
    /// Neither.
    Unstable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Stable => "stable",
            Stability::Growing => "growing",
            Stability::Unstable => "unstable",
        })
    }
}

/// A dimension read off a sequence of finite windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowedDim {
    /// The value at the largest window.
    pub value: u64,
    /// Values for increasing windows.
    pub history: Vec<u64>,
    pub status: Stability,
}

impl WindowedDim {
    /// Classify `history` using the last `run` entries.
    pub fn from_history(history: Vec<u64>, run: usize) -> WindowedDim {
        let value = history.last().copied().unwrap_or(0);
        let status = classify(&history, run);
        WindowedDim { value, history, status }
    }

    /// An exact value that needs no window.
    pub fn exact(value: u64) -> WindowedDim {
        WindowedDim { value, history: vec![value], status: Stability::Stable }
    }

    pub fn is_stable(&self) -> bool {
        self.status == Stability::Stable
    }

    pub fn to_dimension(&self) -> DimensionValue {
        match self.status {
            Stability::Stable => DimensionValue::known(self.value),
            Stability::Growing => DimensionValue::Symbolic(format!("window dims {:?} growing", self.history)),
            Stability::Unstable => DimensionValue::Unknown,
        }
    }
}

fn classify(h: &[u64], run: usize) -> Stability {
    let run = run.max(1);
    if h.len() >= run && h[h.len() - run..].windows(2).all(|w| w[0] == w[1]) {
        return Stability::Stable;
    }
    if h.len() >= run && h[h.len() - run..].windows(2).all(|w| w[0] < w[1]) {
        return Stability::Growing;
    }
    Stability::Unstable
}

/// Computation limits shared by the window-based algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    /// Largest total degree for affine de Rham windows.
    pub degree_bound: u32,
    /// Column truncation for negative and periodic cyclic homology.
    pub truncation: usize,
    /// Allowed twists for Čech computations.
    pub cech_window: (i64, i64),
    /// Number of pole-order levels for Čech computations on Proj.
    pub proj_levels: u32,
    /// Consecutive equal values needed to call a window stable.
    pub stable_run: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { degree_bound: 12, truncation: 8, cech_window: (-10, 10), proj_levels: 6, stable_run: 3 }
    }
}
