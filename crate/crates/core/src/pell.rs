//! Pell equation solutions and the integer criterion for `q = 0` on
//! uniform vectors.
//!
//! For `(m^n)` with alpha `x`, write `slack = (x+1)(x+2) - n m(m+1)`. Then
//! `q = 0` exactly when `0 < slack <= 2(m+1)`. Substituting `u = 2x + 3`,
//! `v = 2m + 1` turns `4 slack` into `u^2 - n v^2 + n - 1`, so solutions of a
//! norm equation `u^2 - n v^2 = k > 0` with `u, v` odd and `v` large enough
//! give witnesses.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub n: u64,
    pub u: BigInt,
    pub v: BigInt,
    /// `u^2 - n v^2`
    pub norm: BigInt,
}

impl PellSolution {
    pub fn new(n: u64, u: BigInt, v: BigInt) -> Self {
        let norm = &u * &u - BigInt::from(n) * &v * &v;
        Self { n, u, v, norm }
    }

    pub fn is_odd_pair(&self) -> bool {
        self.u.is_odd() && self.v.is_odd()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QZeroWitness {
    pub n: u64,
    pub m: BigInt,
    /// Expected alpha of `(m^n)`.
    pub x: BigInt,
    /// `(x+1)(x+2) - n m(m+1)`, in `(0, 2(m+1)]`.
    pub slack: BigInt,
}

fn check_nonsquare(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::SmallDiscriminant(n));
    }
    let r = n.sqrt();
    if r * r == n {
        return Err(Error::SquareDiscriminant(n));
    }
    Ok(())
}

/// Least positive `(c, d)` with `c^2 - n d^2 = 1`, read off the convergents
/// of the continued fraction of `sqrt(n)`.
pub fn fundamental_pell(n: u64) -> Result<(BigInt, BigInt)> {
    check_nonsquare(n)?;
    let a0 = n.sqrt();
    let big_n = BigInt::from(n);
    let (mut mm, mut dd, mut a) = (0u64, 1u64, a0);
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::from(a0));
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    loop {
        if &p * &p - &big_n * &q * &q == BigInt::one() {
            return Ok((p, q));
        }
        // Partial quotients stay below 2 sqrt(n), so u64 suffices.
        mm = dd * a - mm;
        dd = (n - mm * mm) / dd;
        a = (a0 + mm) / dd;
        let big_a = BigInt::from(a);
        let p_next = &big_a * &p + &p_prev;
        let q_next = &big_a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// Smallest odd `f` with `f^2 > n`, paired with `g = 1`.
pub fn default_seed_pair(n: u64) -> (u64, u64) {
    let mut f = 1;
    while f * f <= n {
        f += 2;
    }
    (f, 1)
}

/// `(u' + v' sqrt n)(f + g sqrt n)` for `u' + v' sqrt n` running over the
/// even powers `0, 2, 4, ...` of the fundamental solution. Even powers have
/// `u'` odd and `v'` even, so every member has `u, v` odd and norm
/// `f^2 - n g^2`.
pub fn odd_solution_family(n: u64, f: u64, g: u64, count: usize) -> Result<Vec<PellSolution>> {
    check_nonsquare(n)?;
    if f % 2 == 0 || g % 2 == 0 {
        return Err(Error::BadSeedPair { f, g, reason: "f and g must be odd" });
    }
    let (bf, bg, bn) = (BigInt::from(f), BigInt::from(g), BigInt::from(n));
    if &bf * &bf - &bn * &bg * &bg <= BigInt::zero() {
        return Err(Error::BadSeedPair { f, g, reason: "f^2 - n g^2 must be positive" });
    }
    let (c, d) = fundamental_pell(n)?;
    // Square of the fundamental solution.
    let (c2, d2) = (&c * &c + &bn * &d * &d, BigInt::from(2) * &c * &d);
    let (mut up, mut vp) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let u = &up * &bf + &vp * &bg * &bn;
        let v = &up * &bg + &vp * &bf;
        out.push(PellSolution::new(n, u, v));
        let next_u = &up * &c2 + &vp * &d2 * &bn;
        let next_v = &up * &d2 + &vp * &c2;
        up = next_u;
        vp = next_v;
    }
    Ok(out)
}

/// `q_zero_check` for arbitrary-precision `m`.
pub fn q_zero_check_big(n: u64, m: &BigInt) -> Option<QZeroWitness> {
    let weight = BigInt::from(n) * m * (m + 1u32);
    // Least s = x + 1 with s(s + 1) > weight.
    let mut s = weight.sqrt();
    while s > BigInt::zero() && (&s - 1u32) * &s > weight {
        s -= 1u32;
    }
    while &s * (&s + 1u32) <= weight {
        s += 1u32;
    }
    let x = &s - 1u32;
    let slack = &s * (&s + 1u32) - &weight;
    (slack <= BigInt::from(2) * (m + 1u32)).then(|| QZeroWitness { n, m: m.clone(), x, slack })
}

/// Witness that `q((m^n)) = 0`, if there is one: `x` is the expected alpha
/// and the slack of the first surplus degree fits the window.
pub fn q_zero_check(n: u64, m: u64) -> Option<QZeroWitness> {
    q_zero_check_big(n, &BigInt::from(m))
}

/// Reads `m = (v - 1)/2`, `x = (u - 3)/2` off an odd solution. The slack is
/// `(norm + n - 1)/4`; a witness comes out iff it lies in `(0, v + 1]`.
pub fn pell_to_witness(s: &PellSolution) -> Result<Option<QZeroWitness>> {
    if !s.is_odd_pair() {
        return Err(Error::NotOddFamily("u and v must both be odd"));
    }
    if !s.norm.is_positive() || !s.v.is_positive() {
        return Err(Error::NotOddFamily("norm and v must be positive"));
    }
    if s.v.is_one() {
        return Err(Error::DegenerateSolution);
    }
    if s.u < BigInt::from(3) {
        return Err(Error::NotOddFamily("u must be at least 3"));
    }
    let m = (&s.v - 1u32) / 2u32;
    let x = (&s.u - 3u32) / 2u32;
    let slack = (&s.norm + BigInt::from(s.n) - 1u32) / 4u32;
    let ok = slack.is_positive() && slack <= &s.v + 1u32;
    Ok(ok.then(|| QZeroWitness { n: s.n, m, x, slack }))
}
