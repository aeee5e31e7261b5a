//! Explicit point sets in the affine chart `z = 1`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::PrimeField;

/// Where a configuration came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConfigLabel {
    Random { seed: u64 },
    /// Grid blocks on `r` vertical and `3r/2 - 1` horizontal lines.
    Block { r: usize },
    /// Points spread over `r` lines `y = slope * x + intercept`.
    Lines { r: usize, seed: u64, lines: Vec<(u64, u64)> },
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    field: PrimeField,
    points: Vec<(u64, u64)>,
    label: ConfigLabel,
}

impl PointConfiguration {
    /// Validates distinctness and that coordinates are reduced residues.
    pub fn new(prime: u64, points: Vec<(u64, u64)>, label: ConfigLabel) -> Result<Self> {
        let field = PrimeField::new(prime)?;
        if points.iter().any(|&(x, y)| x >= prime || y >= prime) {
            return Err(Error::InvalidArgument("coordinates must be reduced mod p".into()));
        }
        let distinct: HashSet<_> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidArgument("points must be pairwise distinct".into()));
        }
        Ok(Self { field, points, label })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }

    pub fn points(&self) -> &[(u64, u64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label(&self) -> &ConfigLabel {
        &self.label
    }
}

/// `n` distinct uniformly random affine points, reproducible from the seed.
pub fn random_points(n: usize, prime: u64, seed: u64) -> Result<PointConfiguration> {
    PrimeField::new(prime)?;
    if (prime as u128) <= (n as u128) * (n as u128) {
        return Err(Error::FieldTooSmall {
            prime,
            reason: format!("need p > n^2 = {} for {n} random points", n * n),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(n);
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let pt = (rng.gen_range(0..prime), rng.gen_range(0..prime));
        if seen.insert(pt) {
            points.push(pt);
        }
    }
    PointConfiguration::new(prime, points, ConfigLabel::Random { seed })
}

/// The `r^2` grid points arranged in `r/2` blocks: block `k` (1-based)
/// takes the intersections of vertical lines `2k-1, 2k` with the first
/// `s - 2(k-1)` horizontal lines, where `s = 3r/2 - 1`.
///
/// Vertical line `i` is `x = i`, horizontal line `j` is `y = j`.
pub fn block_configuration(r: usize, prime: u64) -> Result<PointConfiguration> {
    if r < 2 || r % 2 == 1 {
        return Err(Error::OddBlockCount(r));
    }
    PrimeField::new(prime)?;
    if prime <= 3 * r as u64 {
        return Err(Error::FieldTooSmall { prime, reason: format!("need p > 3r = {}", 3 * r) });
    }
    let s = 3 * r / 2 - 1;
    let mut points = Vec::with_capacity(r * r);
    for k in 1..=r / 2 {
        for i in [2 * k - 1, 2 * k] {
            for j in 1..=s - 2 * (k - 1) {
                points.push((i as u64, j as u64));
            }
        }
    }
    debug_assert_eq!(points.len(), r * r);
    PointConfiguration::new(prime, points, ConfigLabel::Block { r })
}

/// `n` distinct points on `r` random distinct non-vertical lines, as evenly
/// spread as possible (the first `n mod r` lines get one extra point).
pub fn lines_configuration(r: usize, n: usize, prime: u64, seed: u64) -> Result<PointConfiguration> {
    PrimeField::new(prime)?;
    if r == 0 {
        if n == 0 {
            return PointConfiguration::new(prime, vec![], ConfigLabel::Lines { r, seed, lines: vec![] });
        }
        return Err(Error::InvalidArgument("cannot place points on zero lines".into()));
    }
    let per_line = n.div_ceil(r) as u64;
    // Each line has p points, and the other lines can use up r - 1 of them.
    if per_line + r as u64 > prime || (r as u128) > (prime as u128) * (prime as u128) {
        return Err(Error::FieldTooSmall {
            prime,
            reason: format!("{per_line} points per line on {r} lines do not fit"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::with_capacity(r);
    let mut seen_lines = HashSet::new();
    while lines.len() < r {
        let l = (rng.gen_range(0..prime), rng.gen_range(0..prime));
        if seen_lines.insert(l) {
            lines.push(l);
        }
    }
    let field = PrimeField::new(prime)?;
    let mut seen = HashSet::with_capacity(n);
    let mut points = Vec::with_capacity(n);
    for (k, &(slope, intercept)) in lines.iter().enumerate() {
        let want = n / r + usize::from(k < n % r);
        let mut placed = 0;
        let mut attempts = 0u64;
        while placed < want {
            attempts += 1;
            if attempts > 64 * prime + 1024 {
                return Err(Error::FieldTooSmall {
                    prime,
                    reason: "could not place distinct points on the lines".into(),
                });
            }
            let x = rng.gen_range(0..prime);
            let pt = (x, field.add(field.mul(slope, x), intercept));
            if seen.insert(pt) {
                points.push(pt);
                placed += 1;
            }
        }
    }
    PointConfiguration::new(prime, points, ConfigLabel::Lines { r, seed, lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_points_are_reproducible() {
        let a = random_points(1, 31991, 7).unwrap();
        let b = random_points(1, 31991, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(random_points(10, 31991, 1).unwrap(), random_points(10, 31991, 2).unwrap());
    }

    #[test]
    fn random_points_distinct() {
        let c = random_points(10, 31991, 1).unwrap();
        assert_eq!(c.len(), 10);
        let set: HashSet<_> = c.points().iter().collect();
        assert_eq!(set.len(), 10);
    }

    #[test]
    fn random_points_need_room() {
        assert!(matches!(random_points(10, 5, 1), Err(Error::FieldTooSmall { .. })));
        assert!(matches!(random_points(2, 4, 1), Err(Error::NotPrime(4))));
    }

    #[test]
    fn blocks() {
        let c = block_configuration(4, 31991).unwrap();
        assert_eq!(c.len(), 16);
        let first: Vec<_> = c.points().iter().filter(|p| p.0 <= 2).collect();
        let second: Vec<_> = c.points().iter().filter(|p| p.0 >= 3).collect();
        assert_eq!(first.len(), 10);
        assert_eq!(second.len(), 6);
        assert!(second.iter().all(|p| p.1 <= 3));
        let c = block_configuration(2, 31991).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.points(), &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        for r in (2..=12).step_by(2) {
            assert_eq!(block_configuration(r, 31991).unwrap().len(), r * r);
        }
        assert_eq!(block_configuration(3, 31991), Err(Error::OddBlockCount(3)));
        assert!(matches!(block_configuration(4, 11), Err(Error::FieldTooSmall { .. })));
    }

    #[test]
    fn lines() {
        let c = lines_configuration(1, 3, 31991, 5).unwrap();
        let ConfigLabel::Lines { lines, .. } = c.label() else { panic!() };
        let (a, b) = lines[0];
        assert!(c.points().iter().all(|&(x, y)| (a * x + b) % 31991 == y));

        let c = lines_configuration(4, 16, 31991, 9).unwrap();
        assert_eq!(c.len(), 16);
        let ConfigLabel::Lines { lines, .. } = c.label().clone() else { panic!() };
        for &(a, b) in &lines {
            let on = c.points().iter().filter(|&&(x, y)| (a * x + b) % 31991 == y).count();
            assert!(on >= 4);
        }
        assert_eq!(c, lines_configuration(4, 16, 31991, 9).unwrap());

        let small = lines_configuration(2, 5, 7, 3);
        assert_eq!(small, lines_configuration(2, 5, 7, 3));
        assert!(small.is_ok());
        assert!(matches!(lines_configuration(1, 9, 7, 3), Err(Error::FieldTooSmall { .. })));
    }
}
