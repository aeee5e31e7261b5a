//! Divisor classes on the blow-up of the plane at n points, Cremona
//! reduction, and the conjectural dimension count built on it.
//!
//! A class `(d; m_1, ..., m_n)` stands for `dL - m_1 E_1 - ... - m_n E_n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::MultiplicityVector;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub d: i64,
    pub mults: Vec<i64>,
}

impl DivisorClass {
    pub fn new(d: i64, mults: Vec<i64>) -> Self {
        Self { d, mults }
    }

    /// `D_t = tL - sum m_i E_i`.
    pub fn from_mults(t: u32, m: &MultiplicityVector) -> Self {
        Self::new(i64::from(t), m.entries().iter().map(|&x| i64::from(x)).collect())
    }

    pub fn line(n: usize) -> Self {
        Self::new(1, vec![0; n])
    }

    /// The exceptional curve over point `i` (0-based): `(0; 0, .., -1, .., 0)`.
    pub fn exceptional(n: usize, i: usize) -> Self {
        let mut mults = vec![0; n];
        mults[i] = -1;
        Self::new(0, mults)
    }

    /// `K_X = -3L + sum E_i`.
    pub fn canonical(n: usize) -> Self {
        Self::new(-3, vec![-1; n])
    }

    pub fn points(&self) -> usize {
        self.mults.len()
    }

    pub fn self_intersection(&self) -> i64 {
        self.d * self.d - self.mults.iter().map(|m| m * m).sum::<i64>()
    }

    /// `K_X . D = -3d + sum m_i`.
    pub fn canonical_degree(&self) -> i64 {
        -3 * self.d + self.mults.iter().sum::<i64>()
    }

    fn padded(&self, n: usize) -> Self {
        let mut mults = self.mults.clone();
        mults.resize(n.max(mults.len()), 0);
        Self::new(self.d, mults)
    }

    fn sub_scaled(&mut self, other: &DivisorClass, count: i64) {
        self.d -= count * other.d;
        for (a, b) in self.mults.iter_mut().zip(&other.mults) {
            *a -= count * b;
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.d)?;
        for (i, m) in self.mults.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// `d_A d_B - sum m_i m_i'`.
pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    if a.points() != b.points() {
        return Err(Error::PointCountMismatch { left: a.points(), right: b.points() });
    }
    Ok(a.d * b.d - a.mults.iter().zip(&b.mults).map(|(x, y)| x * y).sum::<i64>())
}

/// `(D^2 - K.D + 2) / 2 = ((d+1)(d+2) - sum m_i(m_i+1)) / 2`.
pub fn riemann_roch(d: &DivisorClass) -> i64 {
    (d.self_intersection() - d.canonical_degree() + 2) / 2
}

/// Quadratic transformation based at points `i, j, k` (0-based).
pub fn cremona(d: &DivisorClass, i: usize, j: usize, k: usize) -> Result<DivisorClass> {
    let n = d.points();
    if i == j || j == k || i == k || i >= n || j >= n || k >= n {
        return Err(Error::BadIndices { indices: [i, j, k], points: n });
    }
    let (mi, mj, mk) = (d.mults[i], d.mults[j], d.mults[k]);
    let mut out = d.clone();
    out.d = 2 * d.d - mi - mj - mk;
    out.mults[i] = d.d - mj - mk;
    out.mults[j] = d.d - mi - mk;
    out.mults[k] = d.d - mi - mj;
    Ok(out)
}

/// One move of the reduction, expressed in the working frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionStep {
    /// Stable reordering of the multiplicities into descending order:
    /// new position `p` holds old position `perm[p]`.
    Sort(Vec<usize>),
    /// Cremona move at three (0-based) indices.
    Cremona([usize; 3]),
    /// `count` copies of a (-1)-class removed as a fixed component.
    Subtract { class: DivisorClass, count: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Reached `d < 0`: the linear system is empty.
    Empty,
    /// Reached a class with `m_i >= 0` sorted and `d >= m_1 + m_2 + m_3`.
    NefStandard,
}

/// Record of a reduction run.
///
/// Steps act on the class padded with zero multiplicities up to
/// `working_points` entries (three when fewer points were given). Pads are
/// zero again at the end, and `terminal` has them stripped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub start: DivisorClass,
    pub steps: Vec<ReductionStep>,
    pub terminal: DivisorClass,
    pub verdict: Verdict,
    pub working_points: usize,
}

impl ReductionTrace {
    /// Every intermediate class, starting with the padded start class.
    pub fn intermediates(&self) -> Vec<DivisorClass> {
        let mut cur = self.start.padded(self.working_points);
        let mut out = vec![cur.clone()];
        for step in &self.steps {
            cur = apply_step(&cur, step);
            out.push(cur.clone());
        }
        out
    }

    /// Replays the steps and strips the pad.
    pub fn replay(&self) -> DivisorClass {
        let mut last = self.intermediates().pop().expect("start is always present");
        last.mults.truncate(self.start.points());
        last
    }

    /// The subtracted (-1)-classes carried back to the original point
    /// labels, with their multiplicities.
    ///
    /// Classes keep all `working_points` entries: with fewer than three
    /// points a component may pass through a padding point.
    pub fn fixed_components(&self) -> Vec<(DivisorClass, u64)> {
        let mut out = Vec::new();
        for (pos, step) in self.steps.iter().enumerate() {
            if let ReductionStep::Subtract { class, count } = step {
                let mut c = class.clone();
                for back in self.steps[..pos].iter().rev() {
                    c = undo_step(&c, back);
                }
                out.push((c, *count));
            }
        }
        out
    }

    /// `start` minus all fixed components, in the original frame, pad
    /// stripped.
    pub fn moving_part(&self) -> DivisorClass {
        let mut cur = self.start.padded(self.working_points);
        for (c, k) in self.fixed_components() {
            cur.sub_scaled(&c, k as i64);
        }
        cur.mults.truncate(self.start.points());
        cur
    }
}

fn apply_step(d: &DivisorClass, step: &ReductionStep) -> DivisorClass {
    match step {
        ReductionStep::Sort(perm) => {
            DivisorClass::new(d.d, perm.iter().map(|&p| d.mults[p]).collect())
        }
        ReductionStep::Cremona([i, j, k]) => {
            cremona(d, *i, *j, *k).expect("recorded indices are valid")
        }
        ReductionStep::Subtract { class, count } => {
            let mut out = d.clone();
            out.sub_scaled(class, *count as i64);
            out
        }
    }
}

/// Pulls a class back through a step. Subtractions are translations of the
/// ambient class and leave individual curve classes alone.
fn undo_step(c: &DivisorClass, step: &ReductionStep) -> DivisorClass {
    match step {
        ReductionStep::Sort(perm) => {
            let mut mults = vec![0; c.mults.len()];
            for (new_pos, &old_pos) in perm.iter().enumerate() {
                mults[old_pos] = c.mults[new_pos];
            }
            DivisorClass::new(c.d, mults)
        }
        ReductionStep::Cremona([i, j, k]) => {
            cremona(c, *i, *j, *k).expect("recorded indices are valid")
        }
        ReductionStep::Subtract { .. } => c.clone(),
    }
}

/// Strips (-1)-curves meeting the class negatively until it is empty or
/// in standard form.
///
/// Negative multiplicities are cleared by removing copies of `E_i`; while
/// `d < m_1 + m_2 + m_3` (after a stable descending sort) a Cremona move at
/// the three largest multiplicities is applied. Each Cremona move strictly
/// lowers `d`, so the loop terminates.
pub fn reduce(start: &DivisorClass) -> ReductionTrace {
    let working_points = start.points().max(3);
    let mut cur = start.padded(working_points);
    let mut steps = Vec::new();
    let verdict = loop {
        if cur.d < 0 {
            break Verdict::Empty;
        }
        for i in 0..working_points {
            if cur.mults[i] < 0 {
                let e = DivisorClass::exceptional(working_points, i);
                let count = (-cur.mults[i]) as u64;
                cur.sub_scaled(&e, count as i64);
                steps.push(ReductionStep::Subtract { class: e, count });
            }
        }
        let mut perm: Vec<usize> = (0..working_points).collect();
        perm.sort_by(|&a, &b| cur.mults[b].cmp(&cur.mults[a]));
        if perm.iter().enumerate().any(|(p, &q)| p != q) {
            let step = ReductionStep::Sort(perm);
            cur = apply_step(&cur, &step);
            steps.push(step);
        }
        if cur.d >= cur.mults[0] + cur.mults[1] + cur.mults[2] {
            break Verdict::NefStandard;
        }
        let step = ReductionStep::Cremona([0, 1, 2]);
        cur = apply_step(&cur, &step);
        steps.push(step);
    };
    let mut terminal = cur;
    if verdict == Verdict::NefStandard {
        debug_assert!(terminal.mults[start.points()..].iter().all(|&m| m == 0));
    }
    terminal.mults.truncate(start.points());
    ReductionTrace { start: start.clone(), steps, terminal, verdict, working_points }
}

/// `h^0` of the class as predicted by the conjecture: zero when the
/// reduction empties it, otherwise Riemann-Roch of the reduced class.
pub fn conjectural_h0(d: &DivisorClass) -> u64 {
    let trace = reduce(d);
    match trace.verdict {
        Verdict::Empty => 0,
        Verdict::NefStandard => riemann_roch(&trace.terminal).max(0) as u64,
    }
}

/// `h^1 = h^0 - chi`, valid where `h^2` vanishes (`d >= 0`).
pub fn conjectural_h1(d: &DivisorClass) -> Result<u64> {
    if d.d < 0 {
        return Err(Error::NegativeDegree(d.d));
    }
    let h1 = conjectural_h0(d) as i64 - riemann_roch(d);
    u64::try_from(h1).map_err(|_| Error::InconsistentReduction(d.to_string()))
}

/// Which ideal the nef certificate is asked about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuasiVariant {
    /// `I(m)`
    Plain,
    /// `I(m')`, first multiplicity raised by one
    Incremented,
    /// `I(m'')`, first multiplicity lowered by one
    Decremented,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NefCertificate {
    /// `D_t` decomposes as `-mK + (t-3m)L + (extra) + sum (m - m_i) E_i`
    /// with every piece nef or a nonnegative multiple of an `E_i`.
    Certified { decomposition: NefDecomposition },
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefDecomposition {
    /// Coefficient of `-K_X`.
    pub anticanonical: i64,
    /// Coefficient of `L`.
    pub line: i64,
    /// `L - E_1` for the incremented variant, `E_1` for the decremented.
    pub extra: Option<DivisorClass>,
    /// Coefficients of `E_10, ..., E_n`.
    pub tail: Vec<i64>,
}

impl NefDecomposition {
    pub fn total(&self, n: usize) -> DivisorClass {
        let k = DivisorClass::canonical(n);
        let mut d = DivisorClass::new(
            -self.anticanonical * k.d + self.line,
            k.mults.iter().map(|m| -self.anticanonical * m).collect(),
        );
        if let Some(e) = &self.extra {
            d.sub_scaled(e, -1);
        }
        for (i, c) in self.tail.iter().enumerate() {
            d.sub_scaled(&DivisorClass::exceptional(n, 9 + i), -c);
        }
        d
    }
}

/// Nefness of `D_t` for a quasiuniform vector, granted the conjecture.
///
/// With `m` the common value of the first nine multiplicities, `t >= 3m`
/// (`3m + 1` for the incremented variant) is enough to write `D_t` as a
/// nonnegative combination of `-K_X`, `L`, `L - E_1` or `E_1`, and the
/// `E_i` for `i > 9`.
pub fn quasiuniform_unhindered_certificate(
    m: &MultiplicityVector,
    t: u32,
    variant: QuasiVariant,
) -> Result<NefCertificate> {
    if m.len() < 10 || !m.is_quasiuniform() {
        return Err(Error::NotQuasiuniform);
    }
    let head = i64::from(m.entries()[0]);
    if variant == QuasiVariant::Decremented && head == 0 {
        return Err(Error::ZeroFirstEntry);
    }
    let t = i64::from(t);
    let threshold = match variant {
        QuasiVariant::Incremented => 3 * head + 1,
        _ => 3 * head,
    };
    if t < threshold {
        return Ok(NefCertificate::Unknown);
    }
    let n = m.len();
    let (line, extra) = match variant {
        QuasiVariant::Plain => (t - 3 * head, None),
        QuasiVariant::Incremented => {
            let mut l_minus_e1 = DivisorClass::line(n);
            l_minus_e1.mults[0] = 1;
            (t - 3 * head - 1, Some(l_minus_e1))
        }
        QuasiVariant::Decremented => (t - 3 * head, Some(DivisorClass::exceptional(n, 0))),
    };
    let tail = m.entries()[9..].iter().map(|&x| head - i64::from(x)).collect();
    Ok(NefCertificate::Certified {
        decomposition: NefDecomposition { anticanonical: head, line, extra, tail },
    })
}
