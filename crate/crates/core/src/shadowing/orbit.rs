use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ShadowError, ToralAuto, LATTICE, LATTICE_F};

/// How the defects of a generated pseudo-orbit are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum Perturbation {
    /// Uniform in the open delta-box, from a ChaCha8 stream with this seed.
    Seeded(u64),
    /// One defect per step, supplied by the caller.
    Injected(Vec<[f64; 2]>),
}

/// A delta-orbit `x_0, ..., x_N` with defects `e_k = x_{k+1} - A x_k`
/// reduced to `[-1/2, 1/2)^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PseudoOrbit {
    pub points: Vec<[f64; 2]>,
    pub delta: f64,
    pub defects: Vec<[f64; 2]>,
    #[serde(skip)]
    pub(crate) lattice_points: Vec<[i64; 2]>,
    #[serde(skip)]
    pub(crate) lattice_defects: Vec<[i64; 2]>,
}

impl PseudoOrbit {
    pub fn len(&self) -> usize {
        self.defects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defects.is_empty()
    }

    /// Builds the pseudo-orbit through the given points, which are first
    /// rounded to the lattice.
    pub fn from_points(
        auto: &ToralAuto,
        points: &[[f64; 2]],
        delta: f64,
    ) -> Result<Self, ShadowError> {
        check_delta(delta)?;
        if points.len() < 2 {
            return Err(ShadowError::ZeroLength);
        }
        let lattice_points: Vec<[i64; 2]> = points.iter().map(|&p| quantize_point(p)).collect();
        let mut lattice_defects = Vec::with_capacity(points.len() - 1);
        for (k, w) in lattice_points.windows(2).enumerate() {
            let image = lattice_apply(auto, w[0]);
            let e = [centered(w[1][0] - image[0]), centered(w[1][1] - image[1])];
            let norm = lattice_norm(e);
            if norm >= delta {
                return Err(ShadowError::DefectTooLarge { step: k, norm, delta });
            }
            lattice_defects.push(e);
        }
        Ok(Self::assemble(lattice_points, lattice_defects, delta))
    }

    fn assemble(lattice_points: Vec<[i64; 2]>, lattice_defects: Vec<[i64; 2]>, delta: f64) -> Self {
        let to_f = |v: &[i64; 2]| [v[0] as f64 / LATTICE_F, v[1] as f64 / LATTICE_F];
        PseudoOrbit {
            points: lattice_points.iter().map(to_f).collect(),
            delta,
            defects: lattice_defects.iter().map(to_f).collect(),
            lattice_points,
            lattice_defects,
        }
    }
}

fn check_delta(delta: f64) -> Result<(), ShadowError> {
    if delta > 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(ShadowError::InvalidDelta(delta))
    }
}

/// `x_0 = start`, `x_{k+1} = A x_k + e_k mod 1` for `k < n`.
pub fn make_pseudo_orbit(
    auto: &ToralAuto,
    start: [f64; 2],
    n: usize,
    delta: f64,
    perturbation: Perturbation,
) -> Result<PseudoOrbit, ShadowError> {
    check_delta(delta)?;
    if n == 0 {
        return Err(ShadowError::ZeroLength);
    }
    let defects: Vec<[i64; 2]> = match perturbation {
        Perturbation::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let half = delta.min(0.5);
            (0..n)
                .map(|_| {
                    let mut e = [0i64; 2];
                    for v in e.iter_mut() {
                        *v = quantize_defect(rng.gen_range(-half..half), delta);
                    }
                    e
                })
                .collect()
        }
        Perturbation::Injected(list) => {
            if list.len() != n {
                return Err(ShadowError::LengthMismatch {
                    expected: n,
                    got: list.len(),
                });
            }
            list.iter()
                .enumerate()
                .map(|(k, e)| {
                    let reduced = [e[0] - e[0].round(), e[1] - e[1].round()];
                    let norm = reduced[0].abs().max(reduced[1].abs());
                    if norm >= delta || !norm.is_finite() {
                        return Err(ShadowError::DefectTooLarge { step: k, norm, delta });
                    }
                    Ok([quantize_defect(reduced[0], delta), quantize_defect(reduced[1], delta)])
                })
                .collect::<Result<_, _>>()?
        }
    };
    let mut points = Vec::with_capacity(n + 1);
    points.push(quantize_point(start));
    for e in &defects {
        let image = lattice_apply(auto, *points.last().expect("nonempty"));
        points.push([
            (image[0] + e[0]).rem_euclid(LATTICE),
            (image[1] + e[1]).rem_euclid(LATTICE),
        ]);
    }
    Ok(PseudoOrbit::assemble(points, defects, delta))
}

pub(crate) fn quantize_point(p: [f64; 2]) -> [i64; 2] {
    let q = |x: f64| ((x.rem_euclid(1.0) * LATTICE_F).round() as i64).rem_euclid(LATTICE);
    [q(p[0]), q(p[1])]
}

/// Rounds a defect component to the lattice, keeping it strictly inside
/// the delta-box.
fn quantize_defect(x: f64, delta: f64) -> i64 {
    let mut q = (x * LATTICE_F).round() as i64;
    while (q.abs() as f64) / LATTICE_F >= delta {
        q -= q.signum();
    }
    q
}

/// `A v mod 1` on lattice coordinates.
pub(crate) fn lattice_apply(auto: &ToralAuto, v: [i64; 2]) -> [i64; 2] {
    let m = auto.matrix;
    let row = |r: [i64; 2]| {
        let s = r[0] as i128 * v[0] as i128 + r[1] as i128 * v[1] as i128;
        s.rem_euclid(LATTICE as i128) as i64
    };
    [row(m[0]), row(m[1])]
}

/// Representative in `[-2^51, 2^51)`.
fn centered(x: i64) -> i64 {
    let r = x.rem_euclid(LATTICE);
    if r >= LATTICE / 2 {
        r - LATTICE
    } else {
        r
    }
}

fn lattice_norm(e: [i64; 2]) -> f64 {
    e[0].abs().max(e[1].abs()) as f64 / LATTICE_F
}
