//! Rank-minimality certificates.
//!
//! Each criterion checks its numeric hypotheses exactly and, when they hold,
//! returns a certificate listing the unhinderedness (or alpha) hypotheses it
//! still depends on. Nothing here measures anything; [`discharge`] hands the
//! hypotheses to the oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{expected_alpha, expected_hilbert, l_expected, q_expected, MultiplicityVector};
use crate::oracle::{check_alpha, check_unhindered, Discharge, OracleSettings};
use crate::pell::q_zero_check;

/// Which criterion fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// All multiplicities zero.
    UnitIdeal,
    /// `q = 0` and `l = 0`.
    QAndLVanish,
    /// `m_1 = m_2` and `q = 0`.
    EqualLeadQZero,
    /// `m_1 = m_2` and `l > 0`.
    EqualLeadLPositive,
    /// Uniform, `n` not a square, with a `q = 0` witness.
    NonsquareWitness,
    /// Uniform, `n` an odd square, `8m >= n - 9`.
    OddSquare,
    /// Uniform, `n = r^2` an even square, `4m >= r - 2`.
    EvenSquare,
    /// `m` on the first `r` points with `q(m; r) = 0` and a light tail.
    HeadTail,
    /// `m` on the first `r^2` points, `r` odd, `8m >= r^2 - 9 >= 8 * tail`.
    OddSquareHeadTail,
    /// `(m^9, 1^(n-9))` with `n` in the window around `9 + 3tm + C(t+2,2)`.
    NinefoldSimpleTail,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::UnitIdeal => "unit-ideal",
            Rule::QAndLVanish => "q-and-l-vanish",
            Rule::EqualLeadQZero => "equal-lead-q-zero",
            Rule::EqualLeadLPositive => "equal-lead-l-positive",
            Rule::NonsquareWitness => "nonsquare-witness",
            Rule::OddSquare => "odd-square",
            Rule::EvenSquare => "even-square",
            Rule::HeadTail => "head-tail",
            Rule::OddSquareHeadTail => "odd-square-head-tail",
            Rule::NinefoldSimpleTail => "ninefold-simple-tail",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A hypothesis a certificate depends on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Assumption {
    /// The ideal of `vector` is unhindered; `label` names it relative to the
    /// subject (`I`, `I'`, `I''`, ...).
    Unhindered { label: String, vector: MultiplicityVector },
    AlphaEquals { vector: MultiplicityVector, value: u32 },
    /// Stated explicitly for trivially true certificates.
    None,
}

impl Assumption {
    fn unhindered(label: &str, vector: MultiplicityVector) -> Self {
        Assumption::Unhindered { label: label.to_string(), vector }
    }
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assumption::Unhindered { label, .. } => write!(f, "unhindered({label})"),
            Assumption::AlphaEquals { value, .. } => write!(f, "alpha-equals({value})"),
            Assumption::None => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    RankMinimal,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::RankMinimal => "RANK-MINIMAL",
            Outcome::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub subject: MultiplicityVector,
    pub outcome: Outcome,
    /// Set exactly when the outcome is rank minimal.
    pub rule: Option<Rule>,
    pub assumptions: Vec<Assumption>,
    /// Numbers behind the decision (`q`, `l`, `x`, thresholds, ...).
    pub witness: BTreeMap<String, BigInt>,
}

impl Certificate {
    fn fired(subject: MultiplicityVector, rule: Rule, assumptions: Vec<Assumption>) -> Self {
        Self { subject, outcome: Outcome::RankMinimal, rule: Some(rule), assumptions, witness: BTreeMap::new() }
    }

    fn unknown(subject: MultiplicityVector) -> Self {
        Self { subject, outcome: Outcome::Unknown, rule: None, assumptions: vec![], witness: BTreeMap::new() }
    }

    fn unit(subject: MultiplicityVector) -> Self {
        Self::fired(subject, Rule::UnitIdeal, vec![Assumption::None])
    }

    fn with(mut self, key: &str, value: impl Into<BigInt>) -> Self {
        self.witness.insert(key.to_string(), value.into());
        self
    }

    pub fn is_rank_minimal(&self) -> bool {
        self.outcome == Outcome::RankMinimal
    }

    /// Comma-separated assumption list, empty when there are none.
    pub fn assumption_summary(&self) -> String {
        self.assumptions.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.subject, self.outcome)?;
        if let Some(rule) = self.rule {
            write!(f, " by {rule}")?;
            if self.assumptions.is_empty() {
                write!(f, " unconditionally")?;
            } else {
                write!(f, " assuming {}", self.assumption_summary())?;
            }
        }
        if !self.witness.is_empty() {
            let parts: Vec<String> = self.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, " [{}]", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Criteria in terms of `q`, `l` and the first two multiplicities.
///
/// `q` and `l` are evaluated with the expected Hilbert function, so each
/// of them brings the unhinderedness of the ideal it is read from. Tried in
/// the order: equal lead with `q = 0`, then `q = l = 0`, then equal lead
/// with `l > 0`.
pub fn leading_pair_criterion(m: &MultiplicityVector) -> Certificate {
    if m.is_zero() {
        return Certificate::unit(m.clone());
    }
    let q = q_expected(m).expect("nonempty vector");
    // l needs a positive first entry.
    let l = m.decremented().ok().map(|_| l_expected(m).expect("first entry is positive"));
    let e = m.entries();
    let equal_lead = e.len() >= 2 && e[0] == e[1];
    let i = || Assumption::unhindered("I", m.clone());
    let i1 = || Assumption::unhindered("I'", m.incremented().expect("nonempty"));
    let i2 = || Assumption::unhindered("I''", m.decremented().expect("positive first entry"));
    let alpha = expected_alpha(m);

    let cert = if equal_lead && q == 0 {
        Certificate::fired(m.clone(), Rule::EqualLeadQZero, vec![i(), i1()])
    } else if q == 0 && l == Some(0) {
        Certificate::fired(m.clone(), Rule::QAndLVanish, vec![i(), i1(), i2()])
    } else if equal_lead && l.is_some_and(|l| l > 0) {
        Certificate::fired(m.clone(), Rule::EqualLeadLPositive, vec![i(), i1(), i2()])
    } else {
        Certificate::unknown(m.clone())
    };
    let cert = cert.with("alpha", alpha).with("q", q);
    match l {
        Some(l) => cert.with("l", l),
        None => cert,
    }
}

fn perfect_square_root(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Uniform criteria for `n > 9`, dispatched on whether `n` is a nonsquare,
/// an odd square or an even square.
pub fn uniform_criterion(n: usize, m: u32) -> Result<Certificate> {
    if n <= 9 {
        return Err(Error::TooFewPoints(n));
    }
    let subject = MultiplicityVector::uniform(n, m)?;
    if m == 0 {
        return Ok(Certificate::unit(subject));
    }
    let i = Assumption::unhindered("I", subject.clone());
    let i1 = Assumption::unhindered("I'", subject.incremented()?);
    let (n64, m64) = (n as u64, u64::from(m));
    let cert = match perfect_square_root(n64) {
        None => match q_zero_check(n64, m64) {
            Some(w) => Certificate::fired(subject, Rule::NonsquareWitness, vec![i, i1])
                .with("x", w.x)
                .with("slack", w.slack),
            None => Certificate::unknown(subject),
        },
        Some(r) if r % 2 == 1 => {
            let c = if 8 * m64 >= n64 - 9 {
                Certificate::fired(subject, Rule::OddSquare, vec![i, i1])
            } else {
                Certificate::unknown(subject)
            };
            c.with("8m", 8 * m64).with("n-9", n64 - 9)
        }
        Some(r) => {
            let alpha = r * m64 + r / 2 - 1;
            let c = if 4 * m64 + 2 >= r {
                let value = u32::try_from(alpha).map_err(|_| Error::VectorTooLarge)?;
                Certificate::fired(
                    subject.clone(),
                    Rule::EvenSquare,
                    vec![Assumption::AlphaEquals { vector: subject, value }],
                )
            } else {
                Certificate::unknown(subject)
            };
            c.with("4m", 4 * m64).with("r-2", r - 2).with("alpha", alpha)
        }
    };
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareThresholds {
    pub r: u64,
    pub m: u64,
    pub even: bool,
    /// `h^1` vanishes and `h^0 > 0` from this degree on:
    /// `rm + (r-2)/2` for even `r`, `rm + (r-3)/2` for odd `r`.
    pub vanishing_from: i128,
    /// `(t+1)(t+2) - r^2 m(m+1)` at `t = vanishing_from - 1`; equals
    /// `(r/4)(r - 4m - 2)` for even `r` and `-2rm + (r-3)(r-1)/4` for odd.
    pub sign: i128,
    /// `m >= (r-2)/4` (even) or `m >= (r-1)(r-3)/(8r)` (odd).
    pub m_bound_met: bool,
}

impl SquareThresholds {
    pub fn sign_nonpositive(&self) -> bool {
        self.sign <= 0
    }

    /// Whether degree `t` is covered by the vanishing statement.
    pub fn vanishes_at(&self, t: i128) -> bool {
        t >= self.vanishing_from
    }

    /// Whether `h^0 - h^1 <= 0` is asserted at degree `0 <= t`.
    pub fn nonpositive_at(&self, t: i128) -> bool {
        self.m_bound_met && (0..self.vanishing_from).contains(&t)
    }
}

/// Degree thresholds for `n = r^2` uniform points of multiplicity `m`.
pub fn square_thresholds(r: u64, m: u64) -> Result<SquareThresholds> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    let (ri, mi) = (i128::from(r), i128::from(m));
    let even = r % 2 == 0;
    let vanishing_from = if even { ri * mi + (ri - 2) / 2 } else { ri * mi + (ri - 3) / 2 };
    let t = vanishing_from - 1;
    let sign = (t + 1) * (t + 2) - ri * ri * mi * (mi + 1);
    let m_bound_met = if even { 4 * mi >= ri - 2 } else { 8 * ri * mi >= (ri - 1) * (ri - 3) };
    Ok(SquareThresholds { r, m, even, vanishing_from, sign, m_bound_met })
}

fn tail_weight(tail: &[u32]) -> u128 {
    tail.iter().map(|&x| u128::from(x) * (u128::from(x) + 1) / 2).sum()
}

/// `m` on the first `r` points followed by `tail`: rank minimal when
/// `q(m; r) = 0` and `sum C(m_i + 1, 2)` over the tail is below
/// `h_{I(m;r)}(alpha(m;r))`.
pub fn head_tail_criterion(m: u32, r: usize, tail: &[u32]) -> Result<Certificate> {
    if r < 2 {
        return Err(Error::RankTooSmall(r as u64));
    }
    let subject = MultiplicityVector::with_head(m, r, tail)?;
    if subject.is_zero() {
        return Ok(Certificate::unit(subject));
    }
    let head = MultiplicityVector::uniform(r, m)?;
    let h = expected_hilbert(&head, expected_alpha(&head));
    let weight = tail_weight(tail);
    let q_zero = m > 0 && q_zero_check(r as u64, u64::from(m)).is_some();
    let cert = if q_zero && weight < u128::from(h) {
        Certificate::fired(
            subject.clone(),
            Rule::HeadTail,
            vec![
                Assumption::unhindered("I", subject),
                Assumption::unhindered("I(m;r)", head.clone()),
                Assumption::unhindered("I(m;r)'", head.incremented()?),
            ],
        )
    } else {
        Certificate::unknown(subject)
    };
    Ok(cert.with("h", h).with("tail", weight).with("q-head-zero", u8::from(q_zero)))
}

/// `m` on the first `r^2` points (`r >= 3` odd) followed by `tail`: rank
/// minimal when `8m >= r^2 - 9 >= 8 * sum C(m_i + 1, 2)`.
pub fn odd_square_head_tail(r: u64, m: u32, tail: &[u32]) -> Result<Certificate> {
    if r < 3 || r % 2 == 0 {
        return Err(Error::EvenOrSmallRank(r));
    }
    let n = usize::try_from(r * r).map_err(|_| Error::VectorTooLarge)?;
    let subject = MultiplicityVector::with_head(m, n, tail)?;
    let head = MultiplicityVector::uniform(n, m)?;
    let h = expected_hilbert(&head, expected_alpha(&head));
    let bound = u128::from(r * r - 9);
    let weight = tail_weight(tail);
    let fires = 8 * u128::from(m) >= bound && bound >= 8 * weight;
    let cert = if fires {
        Certificate::fired(
            subject.clone(),
            Rule::OddSquareHeadTail,
            vec![
                Assumption::unhindered("I", subject),
                Assumption::unhindered("I(m;r^2)", head.clone()),
                Assumption::unhindered("I(m;r^2)'", head.incremented()?),
            ],
        )
    } else {
        Certificate::unknown(subject)
    };
    Ok(cert.with("8m", 8 * u64::from(m)).with("r^2-9", bound).with("8tail", 8 * weight).with("h", h))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NinefoldWindow {
    pub m: u32,
    pub t: u32,
    /// `9 + 3tm + (t+1)(t+2)/2`
    pub center: u64,
    /// Admissible `n`; empty when the whole window lies below nine.
    pub range: RangeInclusive<usize>,
    /// One unconditional certificate per `n` in `range`.
    pub certificates: Vec<Certificate>,
}

/// `(m^9, 1^(n-9))` is rank minimal, with no hypotheses, for every
/// `n >= 9` with `-m-1 <= n - (9 + 3tm + (t+1)(t+2)/2) <= m`.
///
/// Below the center the expected alpha is `3m + t` and `q = 0`; from the
/// center on it is `3m + t + 1`, with `l > 0` except at the top end
/// `center + m`, where `l = 0` and `q > 0`. The values are recorded in the
/// witness.
pub fn ninefold_simple_tail(m: u32, t: u32) -> Result<NinefoldWindow> {
    if m == 0 {
        return Err(Error::InvalidArgument("the ninefold multiplicity must be positive".into()));
    }
    let (m64, t64) = (u64::from(m), u64::from(t));
    let center = 9 + 3 * t64 * m64 + (t64 + 1) * (t64 + 2) / 2;
    let lo = center.saturating_sub(m64 + 1).max(9);
    let hi = center + m64;
    let lo = usize::try_from(lo).map_err(|_| Error::VectorTooLarge)?;
    let hi = usize::try_from(hi).map_err(|_| Error::VectorTooLarge)?;
    let mut certificates = Vec::with_capacity(hi + 1 - lo);
    for n in lo..=hi {
        let subject = MultiplicityVector::with_head(m, 9, &vec![1; n - 9])?;
        let alpha = expected_alpha(&subject);
        let q = q_expected(&subject)?;
        let l = l_expected(&subject)?;
        let mut cert = Certificate::fired(subject, Rule::NinefoldSimpleTail, vec![])
            .with("alpha", alpha)
            .with("q", q)
            .with("l", l);
        cert.witness.insert("n".into(), BigInt::from(n));
        certificates.push(cert);
    }
    Ok(NinefoldWindow { m, t, center, range: lo..=hi, certificates })
}

/// Oracle verdict on every hypothesis of `cert`, in order.
pub fn discharge(cert: &Certificate, settings: &OracleSettings) -> Result<Vec<(Assumption, Discharge)>> {
    cert.assumptions
        .iter()
        .map(|a| {
            let d = match a {
                Assumption::Unhindered { vector, .. } => check_unhindered(vector, settings)?,
                Assumption::AlphaEquals { vector, value } => check_alpha(vector, *value, settings)?,
                Assumption::None => Discharge { holds: true, seeds_used: vec![], measured: BTreeMap::new() },
            };
            Ok((a.clone(), d))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::predicted_resolution;
    use proptest::prelude::*;

    fn labels(c: &Certificate) -> Vec<String> {
        c.assumptions.iter().map(ToString::to_string).collect()
    }

    fn w(c: &Certificate, key: &str) -> i64 {
        i64::try_from(&c.witness[key]).unwrap()
    }

    #[test]
    fn leading_pair_examples() {
        let c = leading_pair_criterion(&MultiplicityVector::uniform(10, 4).unwrap());
        assert_eq!(c.rule, Some(Rule::EqualLeadQZero));
        assert_eq!(labels(&c), ["unhindered(I)", "unhindered(I')"]);
        assert_eq!(w(&c, "q"), 0);

        // (2^10): q = 3 at alpha 7, l = 0 at degree 6.
        let c = leading_pair_criterion(&MultiplicityVector::uniform(10, 2).unwrap());
        assert_eq!((w(&c, "alpha"), w(&c, "q"), w(&c, "l")), (7, 3, 0));
        assert_eq!(c.outcome, Outcome::Unknown);
        assert_eq!(c.rule, None);

        let c = leading_pair_criterion(&MultiplicityVector::uniform(4, 0).unwrap());
        assert_eq!(c.rule, Some(Rule::UnitIdeal));
        assert_eq!(c.assumptions, vec![Assumption::None]);
    }

    #[test]
    fn leading_pair_l_positive() {
        // Uniform vectors have equal leads; take the first one with l > 0.
        let m = (10..30)
            .flat_map(|n| (1..6).map(move |m| MultiplicityVector::uniform(n, m).unwrap()))
            .find(|v| l_expected(v).unwrap() > 0 && q_expected(v).unwrap() > 0)
            .unwrap();
        let c = leading_pair_criterion(&m);
        assert_eq!(c.rule, Some(Rule::EqualLeadLPositive));
        assert_eq!(labels(&c), ["unhindered(I)", "unhindered(I')", "unhindered(I'')"]);
    }

    #[test]
    fn leading_pair_q_and_l_vanish() {
        // (2,1^5) has alpha 3; (3,1^5) imposes 22 > 20 conditions on cubics
        // and (1^6) imposes 12 = 12 on conics.
        let m = MultiplicityVector::new(vec![2, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!((q_expected(&m).unwrap(), l_expected(&m).unwrap()), (0, 0));
        let c = leading_pair_criterion(&m);
        assert_eq!(c.rule, Some(Rule::QAndLVanish));
        assert_eq!(c.assumptions.len(), 3);
    }

    #[test]
    fn zero_first_entry_has_no_l() {
        let c = leading_pair_criterion(&MultiplicityVector::new(vec![0, 2, 2]).unwrap());
        assert!(!c.witness.contains_key("l"));
    }

    #[test]
    fn uniform_examples() {
        let c = uniform_criterion(25, 2).unwrap();
        assert_eq!(c.rule, Some(Rule::OddSquare));
        assert_eq!(labels(&c), ["unhindered(I)", "unhindered(I')"]);
        assert_eq!(uniform_criterion(25, 1).unwrap().outcome, Outcome::Unknown);

        let c = uniform_criterion(16, 1).unwrap();
        assert_eq!(c.rule, Some(Rule::EvenSquare));
        assert_eq!(labels(&c), ["alpha-equals(5)"]);

        assert_eq!(uniform_criterion(10, 2).unwrap().outcome, Outcome::Unknown);
        let c = uniform_criterion(10, 4).unwrap();
        assert_eq!(c.rule, Some(Rule::NonsquareWitness));
        assert_eq!((w(&c, "x"), w(&c, "slack")), (13, 10));

        assert_eq!(uniform_criterion(9, 3), Err(Error::TooFewPoints(9)));
    }

    #[test]
    fn uniform_boundaries() {
        // Odd squares: fires iff 8m >= r^2 - 9.
        for r in [5u64, 7, 9] {
            let n = (r * r) as usize;
            let need = (r * r - 9).div_ceil(8) as u32;
            assert!(uniform_criterion(n, need).unwrap().is_rank_minimal());
            if need > 1 {
                assert!(!uniform_criterion(n, need - 1).unwrap().is_rank_minimal());
            }
        }
        // Even squares: fires iff 4m >= r - 2.
        for r in [6u64, 10, 14, 18, 22] {
            let n = (r * r) as usize;
            let need = (r - 2).div_ceil(4) as u32;
            assert!(uniform_criterion(n, need).unwrap().is_rank_minimal());
            if need > 1 {
                assert!(!uniform_criterion(n, need - 1).unwrap().is_rank_minimal());
            }
        }
    }

    #[test]
    fn square_threshold_examples() {
        let s = square_thresholds(4, 1).unwrap();
        assert_eq!((s.sign, s.vanishing_from), (-2, 5));
        assert!(s.sign_nonpositive() && s.m_bound_met);
        let s = square_thresholds(5, 2).unwrap();
        assert_eq!((s.sign, s.vanishing_from), (-18, 11));
        let s = square_thresholds(2, 0).unwrap();
        assert_eq!(s.sign, 0);
        assert!(s.sign_nonpositive());
        assert_eq!(square_thresholds(1, 0), Err(Error::RankTooSmall(1)));
    }

    #[test]
    fn head_tail_examples() {
        let c = head_tail_criterion(4, 10, &[2]).unwrap();
        assert_eq!(c.rule, Some(Rule::HeadTail));
        assert_eq!((w(&c, "tail"), w(&c, "h")), (3, 5));
        let c = head_tail_criterion(4, 10, &[3, 1]).unwrap();
        assert_eq!((c.outcome, w(&c, "tail")), (Outcome::Unknown, 7));
        let c = head_tail_criterion(4, 10, &[]).unwrap();
        assert!(c.is_rank_minimal());
        assert_eq!(c.subject, MultiplicityVector::uniform(10, 4).unwrap());
        // No q-witness at m = 2 for ten points.
        assert!(!head_tail_criterion(2, 10, &[]).unwrap().is_rank_minimal());
        assert_eq!(head_tail_criterion(4, 1, &[]), Err(Error::RankTooSmall(1)));
    }

    #[test]
    fn odd_square_head_tail_examples() {
        let c = odd_square_head_tail(5, 2, &[1]).unwrap();
        assert_eq!(c.rule, Some(Rule::OddSquareHeadTail));
        assert_eq!(w(&c, "h"), 3);
        assert_eq!(c.assumptions.len(), 3);
        assert!(!odd_square_head_tail(5, 1, &[]).unwrap().is_rank_minimal());
        assert!(!odd_square_head_tail(5, 2, &[2]).unwrap().is_rank_minimal());
        assert_eq!(odd_square_head_tail(4, 2, &[]), Err(Error::EvenOrSmallRank(4)));
        assert_eq!(odd_square_head_tail(1, 2, &[]), Err(Error::EvenOrSmallRank(1)));
    }

    #[test]
    fn odd_square_head_value() {
        // Wherever the head bound holds, h at alpha is (r^2 - 1)/8.
        for r in [3u64, 5, 7, 9, 11] {
            let first = (r * r - 9).div_ceil(8) as u32;
            for m in first..first + 6 {
                let c = odd_square_head_tail(r, m, &[]).unwrap();
                assert_eq!(w(&c, "h") as u64, (r * r - 1) / 8, "r = {r}, m = {m}");
            }
        }
    }

    #[test]
    fn ninefold_windows() {
        let win = ninefold_simple_tail(2, 1).unwrap();
        assert_eq!(win.range, 15..=20);
        assert_eq!(win.center, 18);
        assert_eq!(ninefold_simple_tail(1, 0).unwrap().range, 9..=11);
        assert_eq!(ninefold_simple_tail(2, 0).unwrap().range, 9..=12);
        assert!(ninefold_simple_tail(0, 1).is_err());
        for c in &win.certificates {
            assert!(c.assumptions.is_empty() && c.is_rank_minimal());
        }
    }

    #[test]
    fn ninefold_subcases() {
        for m in 1..6u32 {
            for t in 0..5u32 {
                let win = ninefold_simple_tail(m, t).unwrap();
                for c in &win.certificates {
                    let n = w(c, "n") as u64;
                    let alpha = w(c, "alpha") as u64;
                    if n < win.center {
                        assert_eq!((alpha, w(c, "q")), (u64::from(3 * m + t), 0));
                    } else if n < win.center + u64::from(m) {
                        assert_eq!(alpha, u64::from(3 * m + t + 1));
                        assert!(w(c, "l") > 0);
                    } else {
                        assert_eq!(alpha, u64::from(3 * m + t + 1));
                        assert_eq!(w(c, "l"), 0);
                        assert!(w(c, "q") > 0);
                    }
                    // The shape these numbers feed is a genuine resolution.
                    let s = predicted_resolution(&c.subject);
                    assert_eq!(s.rank_f0() - s.rank_f1(), 1);
                }
            }
        }
    }

    #[test]
    fn display() {
        let c = uniform_criterion(10, 4).unwrap();
        assert_eq!(
            c.to_string(),
            "(4^10) RANK-MINIMAL by nonsquare-witness assuming unhindered(I),unhindered(I') [slack=10 x=13]"
        );
        let c = &ninefold_simple_tail(1, 0).unwrap().certificates[0];
        assert!(c.to_string().contains("unconditionally"));
    }

    proptest! {
        #[test]
        fn fired_certificates_have_rules(n in 0usize..14, entries in prop::collection::vec(0u32..5, 0..14)) {
            let mut e = entries;
            e.truncate(n);
            let m = MultiplicityVector::new(e).unwrap();
            let c = leading_pair_criterion(&m);
            prop_assert_eq!(c.is_rank_minimal(), c.rule.is_some());
            if c.is_rank_minimal() {
                prop_assert!(!c.assumptions.is_empty());
            }
        }
    }
}
