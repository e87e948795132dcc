//! Shadows of pseudo-orbits.
//!
//! With `y_k = x_k + c_k` and `e_k = x_{k+1} - A x_k`, a true orbit needs
//! `c_{k+1} = A c_k - e_k`. Split along the eigenlines: the unstable part is
//! solved backwards from `c_N = 0`, the stable part forwards from `c_0 = 0`:
//!
//! ```text
//! c_k^u =  sum_{j >= 0} lambda_u^-(j+1) e_{k+j}^u
//! c_k^s = -sum_{j >= 1} lambda_s^(j-1)  e_{k-j}^s
//! ```
//!
//! The shadow starts at `y_0 = x_0 + c_0^u`. It is computed in fixed point
//! with enough fractional bits that iterating the integer matrix forward
//! stays exact to far below the lattice spacing; the unstable sum is
//! accumulated exactly in `Z[lambda_u]` before a single rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::orbit::PseudoOrbit;
use super::toral::mat_vec;
use super::{wrap_norm, ShadowError, ToralAuto, LATTICE_BITS};

/// Working precision beyond which exact verification is abandoned.
pub const MAX_EXACT_BITS: u64 = 1 << 18;
const GUARD_BITS: u64 = 128;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Verification {
    /// The shadow point was iterated forward exactly in fixed point.
    Exact { bits: u64 },
    /// Distances come from the correction formulas in double precision;
    /// `residual` is the largest `|A y_k - y_{k+1}|` they leave behind.
    CorrectionFormula { residual: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShadowResult {
    pub shadow_start: [f64; 2],
    /// `dist(A^k y_0, x_k)` for `k = 0..=N`.
    pub per_step_distance: Vec<f64>,
    pub bound: f64,
    pub max_distance: f64,
    pub verification: Verification,
    /// `A^k y_0 mod 1` for `k = 0..=max(N, horizon)`.
    #[serde(skip)]
    pub orbit: Vec<[f64; 2]>,
}

/// Corrections `c_0, ..., c_N` for the given defects, in double precision.
pub fn corrections(auto: &ToralAuto, defects: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let n = defects.len();
    let mut unstable = vec![[0.0; 2]; n + 1];
    for k in (0..n).rev() {
        let e = mat_vec(&auto.proj_u, defects[k]);
        unstable[k] = [
            (unstable[k + 1][0] + e[0]) / auto.lambda_u,
            (unstable[k + 1][1] + e[1]) / auto.lambda_u,
        ];
    }
    let mut stable = vec![[0.0; 2]; n + 1];
    for k in 0..n {
        let e = mat_vec(&auto.proj_s, defects[k]);
        stable[k + 1] = [
            auto.lambda_s * stable[k][0] - e[0],
            auto.lambda_s * stable[k][1] - e[1],
        ];
    }
    unstable
        .iter()
        .zip(&stable)
        .map(|(u, s)| [u[0] + s[0], u[1] + s[1]])
        .collect()
}

/// Shadows `po`, verifying exactly when the required precision is within
/// [`MAX_EXACT_BITS`] and falling back to the correction formulas (flagged
/// in [`ShadowResult::verification`]) otherwise.
pub fn shadow(auto: &ToralAuto, po: &PseudoOrbit) -> Result<ShadowResult, ShadowError> {
    shadow_to(auto, po, 0, false)
}

/// As [`shadow`], but returns `PrecisionLoss` instead of falling back.
pub fn shadow_strict(auto: &ToralAuto, po: &PseudoOrbit) -> Result<ShadowResult, ShadowError> {
    shadow_to(auto, po, 0, true)
}

/// Shadows `po` and follows the true orbit for at least `horizon` steps.
pub fn shadow_to(
    auto: &ToralAuto,
    po: &PseudoOrbit,
    horizon: usize,
    strict: bool,
) -> Result<ShadowResult, ShadowError> {
    let n = po.len();
    if n == 0 {
        return Err(ShadowError::ZeroLength);
    }
    let steps = n.max(horizon);
    let bits = working_bits(auto, steps);
    let bound = auto.shadow_bound(po.delta);
    if bits <= MAX_EXACT_BITS {
        let fixed = ExactShadow::new(auto, po, bits);
        let (orbit, per_step_distance) = fixed.follow(auto, po, steps);
        let max_distance = per_step_distance.iter().copied().fold(0.0, f64::max);
        return Ok(ShadowResult {
            shadow_start: orbit[0],
            per_step_distance,
            bound,
            max_distance,
            verification: Verification::Exact { bits },
            orbit,
        });
    }
    if strict {
        return Err(ShadowError::PrecisionLoss {
            steps,
            bits,
            cap: MAX_EXACT_BITS,
        });
    }
    let c = corrections(auto, &po.defects);
    let orbit: Vec<[f64; 2]> = po
        .points
        .iter()
        .zip(&c)
        .map(|(x, c)| [(x[0] + c[0]).rem_euclid(1.0), (x[1] + c[1]).rem_euclid(1.0)])
        .collect();
    let residual = orbit
        .windows(2)
        .map(|w| {
            let img = auto.apply(w[0]);
            wrap_norm([img[0] - w[1][0], img[1] - w[1][1]])
        })
        .fold(0.0, f64::max);
    let per_step_distance: Vec<f64> = c.iter().map(|&v| wrap_norm(v)).collect();
    let max_distance = per_step_distance.iter().copied().fold(0.0, f64::max);
    Ok(ShadowResult {
        shadow_start: orbit[0],
        per_step_distance,
        bound,
        max_distance,
        verification: Verification::CorrectionFormula { residual },
        orbit,
    })
}

/// Fractional bits (beyond the lattice) that keep `steps` forward
/// iterations accurate to `2^-(52 + GUARD_BITS)`.
fn working_bits(auto: &ToralAuto, steps: usize) -> u64 {
    let growth = (steps as f64 * auto.lambda_u.abs().log2()).ceil() as u64;
    growth + GUARD_BITS + 64 - (steps as u64).leading_zeros() as u64
}

/// The shadow start as an integer vector scaled by `2^(52 + w)`.
struct ExactShadow {
    /// Total fractional bits `52 + w`.
    frac: u64,
    /// Extra bits `w` beyond the lattice.
    extra: u64,
    y0: [BigInt; 2],
}

impl ExactShadow {
    fn new(auto: &ToralAuto, po: &PseudoOrbit, extra: u64) -> Self {
        let frac = LATTICE_BITS as u64 + extra;
        let n = po.len();
        let t = BigInt::from(auto.trace);
        let d = BigInt::from(auto.det);

        // U = sum_j lambda^(N-1-j) E_j = a + b lambda with integer vectors,
        // using lambda^2 = t lambda - d.
        let mut a = [BigInt::zero(), BigInt::zero()];
        let mut b = [BigInt::zero(), BigInt::zero()];
        for e in &po.lattice_defects {
            for i in 0..2 {
                let new_a = -&d * &b[i] + e[i];
                let new_b = &a[i] + &t * &b[i];
                a[i] = new_a;
                b[i] = new_b;
            }
        }

        // Fixed point at `extra` bits: lambda_u = (t + s sqrt(D)) / 2.
        // Work with more bits while evaluating U, whose coefficients are huge.
        let coeff_bits = a
            .iter()
            .chain(&b)
            .map(|x| x.bits())
            .max()
            .unwrap_or(0);
        let wide = extra + coeff_bits + 64;
        let disc = BigInt::from(auto.trace * auto.trace - 4 * auto.det);
        let sqrt_disc = (disc << (2 * wide)).sqrt();
        let sign = if auto.trace > 0 { BigInt::one() } else { -BigInt::one() };
        let t_w = &t << wide;
        let lambda_u_w: BigInt = (&t_w + &sign * &sqrt_disc) >> 1;
        let lambda_s_w: BigInt = &t_w - &lambda_u_w;
        // 1 / lambda_u = det * lambda_s.
        let mu_w = &d * &lambda_s_w;

        // S = U * mu^N, all at `wide` bits; stored in lattice units.
        let mu_n = pow_fixed(&mu_w, n, wide);
        let s: Vec<BigInt> = (0..2)
            .map(|i| {
                let u = (&a[i] << wide) + &b[i] * &lambda_u_w;
                (u * &mu_n) >> wide
            })
            .collect();

        // c_0 = (A S - lambda_s S) / (lambda_u - lambda_s), with
        // lambda_u - lambda_s = s sqrt(D).
        let m = auto.matrix;
        let as_ = [
            BigInt::from(m[0][0]) * &s[0] + BigInt::from(m[0][1]) * &s[1],
            BigInt::from(m[1][0]) * &s[0] + BigInt::from(m[1][1]) * &s[1],
        ];
        let gap_w = &sign * &sqrt_disc;
        let drop = wide - extra;
        let c0: Vec<BigInt> = (0..2)
            .map(|i| {
                let numer = &as_[i] - ((&lambda_s_w * &s[i]) >> wide);
                // numer / gap at `wide` bits, then down to `extra` bits.
                ((numer << wide).div_floor(&gap_w)) >> drop
            })
            .collect();
        let mask = (BigInt::one() << frac) - 1;
        let x0 = po.lattice_points[0];
        let y0 = [
            ((BigInt::from(x0[0]) << extra) + &c0[0]) & &mask,
            ((BigInt::from(x0[1]) << extra) + &c0[1]) & &mask,
        ];
        ExactShadow { frac, extra, y0 }
    }

    /// Orbit points `A^k y_0 mod 1` for `k = 0..=steps` and their distances
    /// to the pseudo-orbit for `k <= N`.
    fn follow(&self, auto: &ToralAuto, po: &PseudoOrbit, steps: usize) -> (Vec<[f64; 2]>, Vec<f64>) {
        let modulus = BigInt::one() << self.frac;
        // Two's-complement masking reduces mod 2^frac without division.
        let mask = &modulus - 1;
        let half = BigInt::one() << (self.frac - 1);
        let m = auto.matrix.map(|r| r.map(BigInt::from));
        let mut y = self.y0.clone();
        let mut orbit = Vec::with_capacity(steps + 1);
        let mut dist = Vec::with_capacity(po.points.len());
        for k in 0..=steps {
            orbit.push([self.to_unit(&y[0]), self.to_unit(&y[1])]);
            if let Some(x) = po.lattice_points.get(k) {
                let mut worst = 0.0f64;
                for i in 0..2 {
                    let mut diff = (&y[i] - (BigInt::from(x[i]) << self.extra)) & &mask;
                    if diff >= half {
                        diff -= &modulus;
                    }
                    worst = worst.max(self.to_unit(&diff.abs()));
                }
                dist.push(worst);
            }
            if k < steps {
                let next = [
                    (&m[0][0] * &y[0] + &m[0][1] * &y[1]) & &mask,
                    (&m[1][0] * &y[0] + &m[1][1] * &y[1]) & &mask,
                ];
                y = next;
            }
        }
        (orbit, dist)
    }

    /// Converts a nonnegative fixed-point value to a double.
    fn to_unit(&self, v: &BigInt) -> f64 {
        let keep = 64u64.min(self.frac);
        let top = (v >> (self.frac - keep)).to_f64().expect("finite");
        top / 2f64.powi(keep as i32)
    }
}

fn pow_fixed(base: &BigInt, mut exp: usize, bits: u64) -> BigInt {
    let mut result = BigInt::one() << bits;
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result = (&result * &b) >> bits;
        }
        exp >>= 1;
        if exp > 0 {
            b = (&b * &b) >> bits;
        }
    }
    result
}
