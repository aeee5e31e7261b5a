//! Multiplicity vectors, the expected ("unhindered") Hilbert function and
//! the resolution shape it predicts.
//!
//! Everything here is a closed-form count. Nothing depends on where the
//! points actually are; see [`crate::oracle`] for measurements.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on `sum m_i (m_i + 1)`. Keeps alpha below 2^31 so every
/// degree fits a `u32` and `(t + 1)(t + 2)` fits a `u128` with room to spare.
const WEIGHT_CAP: u128 = 1 << 62;

/// The n-tuple of point multiplicities `(m_1, ..., m_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicityVector {
    entries: Vec<u32>,
}

impl MultiplicityVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let v = Self { entries };
        if v.weight() > WEIGHT_CAP {
            return Err(Error::VectorTooLarge);
        }
        Ok(v)
    }

    /// `(m, ..., m)` with `n` entries.
    pub fn uniform(n: usize, m: u32) -> Result<Self> {
        Self::new(vec![m; n])
    }

    /// `(head^count, tail...)`, the shape used by the quasiuniform results.
    pub fn with_head(head: u32, count: usize, tail: &[u32]) -> Result<Self> {
        let mut entries = vec![head; count];
        entries.extend_from_slice(tail);
        Self::new(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.entries.first().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&m| m == 0)
    }

    pub fn is_uniform(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] == w[1])
    }

    /// Entries 10..n sorted descending; the first nine are left alone.
    pub fn canonical(&self) -> Self {
        let mut entries = self.entries.clone();
        if entries.len() > 9 {
            entries[9..].sort_unstable_by(|a, b| b.cmp(a));
        }
        Self { entries }
    }

    /// `n >= 9`, `m_1 = ... = m_9`, and every later entry at most `m_1`.
    pub fn is_quasiuniform(&self) -> bool {
        if self.entries.len() < 9 {
            return false;
        }
        let head = self.entries[0];
        self.entries[..9].iter().all(|&m| m == head) && self.entries[9..].iter().all(|&m| m <= head)
    }

    /// `sum m_i (m_i + 1)`, twice the number of conditions imposed.
    pub fn weight(&self) -> u128 {
        self.entries
            .iter()
            .map(|&m| u128::from(m) * (u128::from(m) + 1))
            .sum()
    }

    /// `m'`: first entry incremented.
    pub fn incremented(&self) -> Result<Self> {
        let mut entries = self.entries.clone();
        let first = entries.first_mut().ok_or(Error::EmptyVector)?;
        *first += 1;
        Self::new(entries)
    }

    /// `m''`: first entry decremented.
    pub fn decremented(&self) -> Result<Self> {
        let mut entries = self.entries.clone();
        let first = entries.first_mut().ok_or(Error::EmptyVector)?;
        if *first == 0 {
            return Err(Error::ZeroFirstEntry);
        }
        *first -= 1;
        Self::new(entries)
    }
}

impl fmt::Display for MultiplicityVector {
    /// Run-length form, e.g. `(3^9,1^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut i = 0;
        let mut first = true;
        while i < self.entries.len() {
            let v = self.entries[i];
            let run = self.entries[i..].iter().take_while(|&&x| x == v).count();
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{run}")?;
            }
            i += run;
        }
        write!(f, ")")
    }
}

/// Which engine produced a Hilbert table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HilbertKind {
    Expected,
    Conjectural,
    Actual,
}

impl fmt::Display for HilbertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HilbertKind::Expected => "expected",
            HilbertKind::Conjectural => "conjectural",
            HilbertKind::Actual => "actual",
        })
    }
}

/// Degree-indexed dimensions of an ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertTable {
    pub kind: HilbertKind,
    pub values: BTreeMap<u32, u64>,
    pub provenance: String,
}

impl HilbertTable {
    pub fn expected(m: &MultiplicityVector, degrees: impl IntoIterator<Item = u32>) -> Self {
        Self {
            kind: HilbertKind::Expected,
            values: degrees.into_iter().map(|t| (t, expected_hilbert(m, t))).collect(),
            provenance: "closed form".to_string(),
        }
    }

    pub fn get(&self, t: u32) -> Option<u64> {
        self.values.get(&t).copied()
    }

    /// Nondecreasing across consecutive stored degrees.
    pub fn is_nondecreasing(&self) -> bool {
        self.values.values().zip(self.values.values().skip(1)).all(|(a, b)| a <= b)
    }
}

/// `max{0, ((t+1)(t+2) - sum m_i(m_i+1)) / 2}`.
///
/// The numerator is always even: both terms are sums of products of
/// consecutive integers.
pub fn expected_hilbert(m: &MultiplicityVector, t: u32) -> u64 {
    let forms = (u128::from(t) + 1) * (u128::from(t) + 2);
    let w = m.weight();
    if forms <= w {
        0
    } else {
        ((forms - w) / 2) as u64
    }
}

/// Least `t` with `expected_hilbert(m, t) > 0`. The zero vector gives 0.
pub fn expected_alpha(m: &MultiplicityVector) -> u32 {
    let w = m.weight();
    let mut t = Roots::sqrt(&w).saturating_sub(2);
    while (t + 1) * (t + 2) <= w {
        t += 1;
    }
    t as u32
}

/// `q(m;n) = h_{I(m')}(alpha(m))`, under the unhindered assumption.
pub fn q_expected(m: &MultiplicityVector) -> Result<u64> {
    Ok(expected_hilbert(&m.incremented()?, expected_alpha(m)))
}

/// `l(m;n) = h_{I(m'')}(alpha(m) - 1)`, under the unhindered assumption.
pub fn l_expected(m: &MultiplicityVector) -> Result<u64> {
    let dec = m.decremented()?;
    match expected_alpha(m).checked_sub(1) {
        Some(t) => Ok(expected_hilbert(&dec, t)),
        None => Ok(0),
    }
}

/// Graded shape of the length-one resolution a rank minimal ideal has:
///
/// `0 -> R[-a-2]^{a+1-h} + R[-a-1]^c -> R[-a-1]^b + R[-a]^h -> I -> 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionShape {
    pub a: u32,
    pub h: u64,
    pub b: u64,
    pub c: u64,
    pub f1_top: u64,
}

impl ResolutionShape {
    /// Generator degrees of `F_0` with nonzero counts.
    pub fn f0(&self) -> BTreeMap<u32, u64> {
        [(self.a, self.h), (self.a + 1, self.b)]
            .into_iter()
            .filter(|&(_, k)| k > 0)
            .collect()
    }

    /// Generator degrees of `F_1` with nonzero counts.
    pub fn f1(&self) -> BTreeMap<u32, u64> {
        [(self.a + 1, self.c), (self.a + 2, self.f1_top)]
            .into_iter()
            .filter(|&(_, k)| k > 0)
            .collect()
    }

    pub fn rank_f0(&self) -> u64 {
        self.h + self.b
    }

    pub fn rank_f1(&self) -> u64 {
        self.c + self.f1_top
    }
}

/// The shape predicted from the expected Hilbert function.
pub fn predicted_resolution(m: &MultiplicityVector) -> ResolutionShape {
    let a = expected_alpha(m);
    let h = expected_hilbert(m, a);
    let a64 = u64::from(a);
    ResolutionShape {
        a,
        h,
        b: (a64 + 2).saturating_sub(2 * h),
        c: (2 * h).saturating_sub(a64 + 2),
        // h <= a + 1 always holds at alpha: the previous degree had no room.
        f1_top: a64 + 1 - h,
    }
}

/// `C(x, 2)`, zero below 2.
pub(crate) fn choose2(x: i128) -> i128 {
    if x < 2 {
        0
    } else {
        x * (x - 1) / 2
    }
}

/// Euler characteristic of the shape in degree `t`.
pub fn hilbert_of_shape(s: &ResolutionShape, t: u32) -> i128 {
    let d = i128::from(t) - i128::from(s.a);
    let h = i128::from(s.h);
    let b = i128::from(s.b);
    let c = i128::from(s.c);
    let top = i128::from(s.f1_top);
    h * choose2(d + 2) + b * choose2(d + 1) - c * choose2(d + 1) - top * choose2(d)
}
