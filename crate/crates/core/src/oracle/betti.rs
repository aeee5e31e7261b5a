use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{alpha_actual, degree_data, DegreeData, PointConfiguration};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::{choose2, HilbertKind, HilbertTable, MultiplicityVector, ResolutionShape};

/// How far past alpha the stop rule may look before giving up.
const STOP_CAP: u32 = 6;

/// Generator degrees of the two free modules in `0 -> F_1 -> F_0 -> I -> 0`,
/// with the measured Hilbert function they were derived from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub f0: BTreeMap<u32, u64>,
    pub f1: BTreeMap<u32, u64>,
    pub hilbert: HilbertTable,
}

fn free_module_dim(gens: &BTreeMap<u32, u64>, s: u32) -> i128 {
    gens.iter()
        .map(|(&t, &k)| i128::from(k) * choose2(i128::from(s) - i128::from(t) + 2))
        .sum()
}

impl BettiTable {
    pub fn rank_f0(&self) -> u64 {
        self.f0.values().sum()
    }

    pub fn rank_f1(&self) -> u64 {
        self.f1.values().sum()
    }

    pub fn alpha(&self) -> Option<u32> {
        self.f0.keys().next().copied()
    }

    /// `dim (F_0)_s - dim (F_1)_s` at every degree of the window equals the
    /// measured dimension.
    pub fn euler_holds(&self) -> bool {
        self.hilbert
            .values
            .iter()
            .all(|(&s, &h)| free_module_dim(&self.f0, s) - free_module_dim(&self.f1, s) == i128::from(h))
    }

    /// No syzygy sits in or below the lowest generator degree.
    pub fn is_minimal_shape(&self) -> bool {
        match self.alpha() {
            Some(a) => self.f1.keys().all(|&t| t > a),
            None => self.f1.is_empty(),
        }
    }

    pub fn matches(&self, shape: &ResolutionShape) -> bool {
        self.f0 == shape.f0() && self.f1 == shape.f1()
    }

    /// The measured dimension in degree `t`, extended past the window: zero
    /// below it, the Hilbert polynomial above it.
    pub fn hilbert_at(&self, m: &MultiplicityVector, t: u32) -> u64 {
        if let Some(v) = self.hilbert.get(t) {
            return v;
        }
        match self.hilbert.values.keys().next() {
            Some(&lo) if t < lo => 0,
            _ => {
                let forms = (u128::from(t) + 1) * (u128::from(t) + 2);
                ((forms - m.weight()) / 2) as u64
            }
        }
    }
}

fn fmt_gens(gens: &BTreeMap<u32, u64>) -> String {
    gens.iter().map(|(t, k)| format!("{t}:{k}")).collect::<Vec<_>>().join(",")
}

impl fmt::Display for BettiTable {
    /// Compact summary such as `f0=5:5 f1=6:3,7:1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f0={} f1={}", fmt_gens(&self.f0), fmt_gens(&self.f1))
    }
}

pub fn betti_table(cfg: &PointConfiguration, m: &MultiplicityVector) -> Result<BettiTable> {
    betti_table_with(cfg, m, Execution::default())
}

/// Measures `F_0` from generator counts, then peels `F_1` off the
/// degreewise surplus `dim (F_0)_t - dim I_t`.
///
/// The window runs from `alpha - 1` to `s + 2`, where `s >= alpha` is the
/// first degree at which the measured dimension equals the Hilbert
/// polynomial and no generators appear in degrees `s` and `s + 1`. At that
/// point the regularity is at most `s + 1`, so `F_1` lives in degrees
/// `<= s + 2`.
pub fn betti_table_with(cfg: &PointConfiguration, m: &MultiplicityVector, exec: Execution) -> Result<BettiTable> {
    let alpha = alpha_actual(cfg, m)?;
    let lo = alpha.saturating_sub(1);
    let cap = alpha + STOP_CAP;
    let poly = |s: u32| (i128::from(s) + 1) * (i128::from(s) + 2) / 2 - (m.weight() / 2) as i128;

    let mut data: BTreeMap<u32, DegreeData> = BTreeMap::new();
    let fetch = |data: &mut BTreeMap<u32, DegreeData>, upto: u32| -> Result<()> {
        let missing: Vec<u32> = (lo..=upto).filter(|t| !data.contains_key(t)).collect();
        for d in exec.try_map(missing, |t| degree_data(cfg, m, t))? {
            data.insert(d.degree, d);
        }
        Ok(())
    };
    let gens = |data: &BTreeMap<u32, DegreeData>, t: u32| -> Result<u64> {
        if t < alpha {
            return Ok(0);
        }
        let prev = if t == 0 { 0 } else { data[&(t - 1)].mu_rank };
        let g = data[&t].hilbert as i64 - prev as i64;
        u64::try_from(g).map_err(|_| Error::NegativeGeneratorCount { degree: t, value: g })
    };

    // Alpha + 3 covers the common case in one parallel batch.
    fetch(&mut data, alpha + 3)?;
    let mut stop = None;
    for s in alpha..=cap {
        fetch(&mut data, s + 2)?;
        if i128::from(data[&s].hilbert) == poly(s) && gens(&data, s)? == 0 && gens(&data, s + 1)? == 0 {
            stop = Some(s);
            break;
        }
    }
    let Some(s) = stop else {
        return Err(Error::StopRuleFailed { alpha, cap });
    };

    let mut f0 = BTreeMap::new();
    for t in alpha..=s + 1 {
        let g = gens(&data, t)?;
        if g > 0 {
            f0.insert(t, g);
        }
    }
    let mut f1 = BTreeMap::new();
    for t in lo..=s + 2 {
        let surplus = free_module_dim(&f0, t) - free_module_dim(&f1, t) - i128::from(data[&t].hilbert);
        match surplus {
            0 => {}
            k if k > 0 => {
                f1.insert(t, k as u64);
            }
            k => return Err(Error::NegativeSyzygyCount { degree: t, value: k as i64 }),
        }
    }
    let hilbert = HilbertTable {
        kind: HilbertKind::Actual,
        values: (lo..=s + 2).map(|t| (t, data[&t].hilbert)).collect(),
        provenance: format!("p={} {:?}", cfg.prime(), cfg.label()),
    };
    Ok(BettiTable { f0, f1, hilbert })
}

#[cfg(test)]
mod tests {
    use super::super::{random_points, ConfigLabel};
    use super::*;
    use crate::model::predicted_resolution;

    const P: u64 = 31991;

    #[test]
    fn sixteen_simple_points() {
        let m = MultiplicityVector::uniform(16, 1).unwrap();
        let cfg = random_points(16, P, 1).unwrap();
        let b = betti_table(&cfg, &m).unwrap();
        assert_eq!(b.f0, BTreeMap::from([(5, 5)]));
        assert_eq!(b.f1, BTreeMap::from([(6, 3), (7, 1)]));
        assert!(b.euler_holds());
        assert!(b.matches(&predicted_resolution(&m)));
        assert_eq!(b.to_string(), "f0=5:5 f1=6:3,7:1");
    }

    #[test]
    fn unit_ideal() {
        let m = MultiplicityVector::uniform(3, 0).unwrap();
        let cfg = random_points(3, P, 0).unwrap();
        let b = betti_table(&cfg, &m).unwrap();
        assert_eq!(b.f0, BTreeMap::from([(0, 1)]));
        assert!(b.f1.is_empty());
        assert!(b.euler_holds());
    }

    #[test]
    fn double_line_is_principal_in_low_degree() {
        let m = MultiplicityVector::new(vec![2, 2]).unwrap();
        let cfg = PointConfiguration::new(P, vec![(1, 2), (4, 9)], ConfigLabel::Explicit).unwrap();
        let b = betti_table(&cfg, &m).unwrap();
        assert_eq!(b.alpha(), Some(2));
        assert!(b.euler_holds());
        assert_eq!(b.rank_f0() - b.rank_f1(), 1);
        assert!(b.is_minimal_shape());
        // l^2, l q and a product of two conics through both points, where l
        // is the joining line and q a conic through both points. Syzygies:
        // q l^2 = l (l q) in degree 4 and one more in degree 5.
        assert_eq!(b.f0, BTreeMap::from([(2, 1), (3, 1), (4, 1)]));
        assert_eq!(b.f1, BTreeMap::from([(4, 1), (5, 1)]));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let m = MultiplicityVector::uniform(10, 2).unwrap();
        let cfg = random_points(10, P, 1).unwrap();
        let a = betti_table_with(&cfg, &m, Execution::Sequential).unwrap();
        let b = betti_table_with(&cfg, &m, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.f0, BTreeMap::from([(7, 6)]));
        assert_eq!(a.f1, BTreeMap::from([(8, 3), (9, 2)]));
    }
}
