//! Brute-force ground truth over a prime field.
//!
//! A form `f` of degree `t` lies in `I = P_1^{m_1} ∩ ... ∩ P_n^{m_n}` iff,
//! for each point `(x_i, y_i)`, the expansion of `f(x + x_i, y + y_i, 1)`
//! has no terms of degree below `m_i`. Those coefficients are linear in
//! `f`; stacking them gives the conditions matrix whose kernel is `I_t`.

mod betti;
mod config;
mod generic;

use std::collections::BTreeMap;
use std::fs;
use std::ops::RangeInclusive;
use std::path::Path;

pub use betti::{betti_table, betti_table_with, BettiTable};
pub use config::{
    block_configuration, lines_configuration, random_points, ConfigLabel, PointConfiguration,
};
pub use generic::{
    check_alpha, check_unhindered, generic_betti, generic_hilbert, Discharge, GenericBetti, GenericHilbert,
    OracleSettings, DEFAULT_PRIME,
};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{FpMatrix, PrimeField};
use crate::model::{expected_alpha, MultiplicityVector};

/// `C(t + 2, 2)`, the number of degree-`t` monomials in `x, y, z`.
pub fn monomial_count(t: u32) -> usize {
    let t = t as usize;
    (t + 1) * (t + 2) / 2
}

/// Exponents `(a, b, c)` of the degree-`t` monomials, ordered by `a`
/// descending, then `b` descending.
pub fn monomials(t: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::with_capacity(monomial_count(t));
    for a in (0..=t).rev() {
        for b in (0..=t - a).rev() {
            out.push((a, b, t - a - b));
        }
    }
    out
}

/// Position of `x^a y^b z^(t-a-b)` in [`monomials`]`(t)`.
#[inline]
pub fn monomial_index(t: u32, a: u32, b: u32) -> usize {
    let k = (t - a) as usize;
    k * (k + 1) / 2 + (t - a - b) as usize
}

/// The conditions matrix in degree `t` together with its row labels.
#[derive(Debug, Clone)]
pub struct ConditionsMatrix {
    pub degree: u32,
    /// `(point, u, v)`: the coefficient of `x^u y^v` in the shifted
    /// expansion at that point.
    pub slots: Vec<(usize, u32, u32)>,
    pub matrix: FpMatrix,
}

impl ConditionsMatrix {
    pub fn kernel_dim(&self) -> u64 {
        (self.matrix.cols() - self.matrix.rank()) as u64
    }
}

fn check_sizes(cfg: &PointConfiguration, m: &MultiplicityVector) -> Result<()> {
    if cfg.len() != m.len() {
        return Err(Error::SizeMismatch { points: cfg.len(), mults: m.len() });
    }
    Ok(())
}

/// Pascal's triangle mod p up to row `t`.
fn binomials(field: PrimeField, t: u32) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(t as usize + 1);
    for n in 0..=t as usize {
        let mut row = vec![1u64; n + 1];
        for k in 1..n {
            row[k] = field.add(rows[n - 1][k - 1], rows[n - 1][k]);
        }
        rows.push(row);
    }
    rows
}

fn powers(field: PrimeField, x: u64, t: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(t as usize + 1);
    let mut acc = 1 % field.modulus();
    for _ in 0..=t {
        out.push(acc);
        acc = field.mul(acc, x);
    }
    out
}

/// Builds the truncated-Taylor conditions matrix in degree `t`.
///
/// The entry in row `(i, u, v)`, column `x^a y^b z^c` is
/// `C(a, u) x_i^(a-u) C(b, v) y_i^(b-v)` (zero when `u > a` or `v > b`).
pub fn conditions_matrix(cfg: &PointConfiguration, m: &MultiplicityVector, t: u32) -> Result<ConditionsMatrix> {
    check_sizes(cfg, m)?;
    let field = cfg.field();
    let binom = binomials(field, t);
    let cols = monomials(t);
    let mut slots = Vec::new();
    for (i, &mi) in m.entries().iter().enumerate() {
        for deg in 0..mi {
            for u in (0..=deg).rev() {
                slots.push((i, u, deg - u));
            }
        }
    }
    let mut matrix = FpMatrix::zeros(field, slots.len(), cols.len());
    let mut row = 0;
    for (i, &(px, py)) in cfg.points().iter().enumerate() {
        let xp = powers(field, px, t);
        let yp = powers(field, py, t);
        for &(si, u, v) in slots.iter().skip(row) {
            if si != i {
                break;
            }
            for (j, &(a, b, _)) in cols.iter().enumerate() {
                if u > a || v > b {
                    continue;
                }
                let cx = field.mul(binom[a as usize][u as usize], xp[(a - u) as usize]);
                let cy = field.mul(binom[b as usize][v as usize], yp[(b - v) as usize]);
                matrix.set(row, j, field.mul(cx, cy));
            }
            row += 1;
        }
    }
    debug_assert_eq!(row, slots.len());
    Ok(ConditionsMatrix { degree: t, slots, matrix })
}

/// `dim I_t = C(t+2, 2) - rank`.
pub fn hilbert_actual(cfg: &PointConfiguration, m: &MultiplicityVector, t: u32) -> Result<u64> {
    Ok(conditions_matrix(cfg, m, t)?.kernel_dim())
}

/// Least degree with a nonzero form. Measured dimensions dominate the
/// expected ones, so the search walks down from the expected alpha.
pub fn alpha_actual(cfg: &PointConfiguration, m: &MultiplicityVector) -> Result<u32> {
    check_sizes(cfg, m)?;
    let mut t = expected_alpha(m);
    while t > 0 && hilbert_actual(cfg, m, t - 1)? > 0 {
        t -= 1;
    }
    Ok(t)
}

/// Basis of `I_t` as coefficient vectors over [`monomials`]`(t)`.
pub fn ideal_basis(cfg: &PointConfiguration, m: &MultiplicityVector, t: u32) -> Result<Vec<Vec<u64>>> {
    Ok(conditions_matrix(cfg, m, t)?.matrix.kernel_basis())
}

/// `f * x`, `f * y`, `f * z` as vectors over degree-`t + 1` monomials.
fn times_linear_forms(f: &[u64], t: u32) -> [Vec<u64>; 3] {
    let next = monomial_count(t + 1);
    let mut out = [vec![0; next], vec![0; next], vec![0; next]];
    for (j, (a, b, _)) in monomials(t).into_iter().enumerate() {
        let coeff = f[j];
        if coeff == 0 {
            continue;
        }
        out[0][monomial_index(t + 1, a + 1, b)] = coeff;
        out[1][monomial_index(t + 1, a, b + 1)] = coeff;
        out[2][monomial_index(t + 1, a, b)] = coeff;
    }
    out
}

/// Hilbert function value and multiplication rank in one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeData {
    pub degree: u32,
    /// `dim I_t`
    pub hilbert: u64,
    /// rank of `mu_t : I_t ⊗ R_1 -> I_{t+1}`
    pub mu_rank: u64,
}

impl DegreeData {
    pub fn mu_kernel_dim(&self) -> u64 {
        3 * self.hilbert - self.mu_rank
    }
}

/// Computes `dim I_t` and `rank mu_t` by multiplying a kernel basis of the
/// conditions matrix by `x, y, z`.
pub fn degree_data(cfg: &PointConfiguration, m: &MultiplicityVector, t: u32) -> Result<DegreeData> {
    let basis = ideal_basis(cfg, m, t)?;
    let products: Vec<Vec<u64>> = basis.iter().flat_map(|f| times_linear_forms(f, t)).collect();
    let mu_rank = if products.is_empty() {
        0
    } else {
        FpMatrix::from_rows(cfg.field(), monomial_count(t + 1), &products).rank() as u64
    };
    Ok(DegreeData { degree: t, hilbert: basis.len() as u64, mu_rank })
}

/// The stacked map `R_t ⊗ R_1 -> (V ⊗ R_1) ⊕ R_{t+1}`: three copies of the
/// conditions matrix on the diagonal above the multiplication map. Column
/// `slot * C(t+2,2) + j` is monomial `j` tensored with `x`, `y`, `z` for
/// `slot = 0, 1, 2`.
pub fn stacked_mu_matrix(cfg: &PointConfiguration, m: &MultiplicityVector, t: u32) -> Result<FpMatrix> {
    let lambda = conditions_matrix(cfg, m, t)?.matrix;
    let (lr, lc) = (lambda.rows(), lambda.cols());
    let next = monomial_count(t + 1);
    let mut g = FpMatrix::zeros(cfg.field(), 3 * lr + next, 3 * lc);
    for slot in 0..3 {
        for i in 0..lr {
            for j in 0..lc {
                g.set(slot * lr + i, slot * lc + j, lambda.get(i, j));
            }
        }
    }
    for (j, (a, b, _)) in monomials(t).into_iter().enumerate() {
        let targets = [
            monomial_index(t + 1, a + 1, b),
            monomial_index(t + 1, a, b + 1),
            monomial_index(t + 1, a, b),
        ];
        for (slot, row) in targets.into_iter().enumerate() {
            g.set(3 * lr + row, slot * lc + j, 1);
        }
    }
    Ok(g)
}

/// `dim ker mu_t`, read off the stacked matrix.
pub fn mu_kernel_dim(cfg: &PointConfiguration, m: &MultiplicityVector, t: u32) -> Result<u64> {
    let g = stacked_mu_matrix(cfg, m, t)?;
    Ok((g.cols() - g.rank()) as u64)
}

/// `dim I_{t+1} - rank mu_t`.
pub fn mu_cokernel_dim(cfg: &PointConfiguration, m: &MultiplicityVector, t: u32) -> Result<u64> {
    let here = hilbert_actual(cfg, m, t)?;
    let next = hilbert_actual(cfg, m, t + 1)?;
    let rank = 3 * here - mu_kernel_dim(cfg, m, t)?;
    Ok(next - rank)
}

/// Minimal generator count in each degree of the window:
/// `dim I_t - rank mu_{t-1}`.
pub fn generator_counts(
    cfg: &PointConfiguration,
    m: &MultiplicityVector,
    window: RangeInclusive<u32>,
) -> Result<BTreeMap<u32, u64>> {
    generator_counts_with(cfg, m, window, Execution::default())
}

pub fn generator_counts_with(
    cfg: &PointConfiguration,
    m: &MultiplicityVector,
    window: RangeInclusive<u32>,
    exec: Execution,
) -> Result<BTreeMap<u32, u64>> {
    let (lo, hi) = (*window.start(), *window.end());
    if lo > hi {
        return Ok(BTreeMap::new());
    }
    let alpha = alpha_actual(cfg, m)?;
    if lo > alpha {
        return Err(Error::InvalidArgument(format!(
            "generator window must start at or below alpha = {alpha}, got {lo}"
        )));
    }
    let degrees: Vec<u32> = (lo.saturating_sub(1)..=hi).collect();
    let data = exec.try_map(degrees, |t| degree_data(cfg, m, t))?;
    let by_degree: BTreeMap<u32, DegreeData> = data.into_iter().map(|d| (d.degree, d)).collect();
    window
        .map(|t| {
            let prev = if t == 0 { 0 } else { by_degree[&(t - 1)].mu_rank };
            let gens = by_degree[&t].hilbert as i64 - prev as i64;
            u64::try_from(gens)
                .map(|g| (t, g))
                .map_err(|_| Error::NegativeGeneratorCount { degree: t, value: gens })
        })
        .collect()
}

/// Writes the conditions matrix and a kernel basis in degree `t` to
/// `lambda_t{t}.txt` and `kernel_t{t}.txt` under `dir`.
///
/// The kernel file holds one basis vector per column.
pub fn dump_degree(cfg: &PointConfiguration, m: &MultiplicityVector, t: u32, dir: &Path) -> Result<()> {
    let cm = conditions_matrix(cfg, m, t)?;
    let basis = cm.matrix.kernel_basis();
    let mut kernel = FpMatrix::zeros(cfg.field(), cm.matrix.cols(), basis.len());
    for (j, v) in basis.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            kernel.set(i, j, x);
        }
    }
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot write dump: {e}"));
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join(format!("lambda_t{t}.txt")), cm.matrix.to_dump()).map_err(io)?;
    fs::write(dir.join(format!("kernel_t{t}.txt")), kernel.to_dump()).map_err(io)?;
    Ok(())
}
