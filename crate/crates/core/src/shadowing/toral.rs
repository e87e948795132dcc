use serde::Serialize;

use super::ShadowError;

/// A linear hyperbolic automorphism of the 2-torus with its eigen-splitting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToralAuto {
    pub matrix: [[i64; 2]; 2],
    pub trace: i64,
    pub det: i64,
    /// Eigenvalue of modulus above 1.
    pub lambda_u: f64,
    pub lambda_s: f64,
    /// Unit eigenvectors (Euclidean norm).
    pub eigvec_u: [f64; 2],
    pub eigvec_s: [f64; 2],
    /// Spectral projection onto the unstable line along the stable one.
    pub proj_u: [[f64; 2]; 2],
    pub proj_s: [[f64; 2]; 2],
    /// Larger max-norm of the two projections.
    pub basis_distortion: f64,
    /// `K * (1/(|lambda_u| - 1) + 1/(1 - |lambda_s|))`: a delta-orbit is
    /// shadowed within this multiple of delta.
    pub shadow_constant: f64,
}

impl ToralAuto {
    pub fn new(matrix: [[i64; 2]; 2]) -> Result<Self, ShadowError> {
        let [[a, b], [c, e]] = matrix;
        let det = a * e - b * c;
        let trace = a + e;
        let fail = |reason: &str| ShadowError::NotHyperbolic {
            matrix,
            reason: reason.to_string(),
        };
        if det.abs() != 1 {
            return Err(fail("determinant is not +-1"));
        }
        // Real eigenvalues off the unit circle: |t| > 2 for det 1, t != 0
        // for det -1.
        if (det == 1 && trace.abs() <= 2) || (det == -1 && trace == 0) {
            return Err(fail("an eigenvalue lies on the unit circle"));
        }
        let disc = (trace * trace - 4 * det) as f64;
        let sign = trace.signum() as f64;
        let lambda_u = (trace as f64 + sign * disc.sqrt()) / 2.0;
        let lambda_s = det as f64 / lambda_u;

        let eig = |l: f64| -> [f64; 2] {
            // Pick the better-conditioned of the two candidate vectors.
            let v1 = [b as f64, l - a as f64];
            let v2 = [l - e as f64, c as f64];
            let n1 = v1[0].hypot(v1[1]);
            let n2 = v2[0].hypot(v2[1]);
            if n1 >= n2 {
                [v1[0] / n1, v1[1] / n1]
            } else {
                [v2[0] / n2, v2[1] / n2]
            }
        };
        let gap = lambda_u - lambda_s;
        let proj_u = [
            [(a as f64 - lambda_s) / gap, b as f64 / gap],
            [c as f64 / gap, (e as f64 - lambda_s) / gap],
        ];
        let proj_s = [
            [1.0 - proj_u[0][0], -proj_u[0][1]],
            [-proj_u[1][0], 1.0 - proj_u[1][1]],
        ];
        let norm = |m: &[[f64; 2]; 2]| {
            m.iter()
                .map(|r| r[0].abs() + r[1].abs())
                .fold(0.0, f64::max)
        };
        let basis_distortion = norm(&proj_u).max(norm(&proj_s));
        let shadow_constant =
            basis_distortion * (1.0 / (lambda_u.abs() - 1.0) + 1.0 / (1.0 - lambda_s.abs()));
        Ok(ToralAuto {
            matrix,
            trace,
            det,
            lambda_u,
            lambda_s,
            eigvec_u: eig(lambda_u),
            eigvec_s: eig(lambda_s),
            proj_u,
            proj_s,
            basis_distortion,
            shadow_constant,
        })
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        let m = self.matrix;
        [
            m[0][0] as f64 * v[0] + m[0][1] as f64 * v[1],
            m[1][0] as f64 * v[0] + m[1][1] as f64 * v[1],
        ]
    }

    /// Applies the map on the torus, reducing mod 1.
    pub fn apply_mod1(&self, v: [f64; 2]) -> [f64; 2] {
        let w = self.apply(v);
        [w[0].rem_euclid(1.0), w[1].rem_euclid(1.0)]
    }

    /// Shadowing radius guaranteed for delta-orbits.
    pub fn shadow_bound(&self, delta: f64) -> f64 {
        self.shadow_constant * delta
    }
}

pub(crate) fn mat_vec(m: &[[f64; 2]; 2], v: [f64; 2]) -> [f64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cat_map_splitting() {
        let t = ToralAuto::new([[2, 1], [1, 1]]).unwrap();
        let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((t.lambda_u - phi2).abs() < 1e-14);
        assert!((t.lambda_u * t.lambda_s - 1.0).abs() < 1e-14);
        for (l, v) in [(t.lambda_u, t.eigvec_u), (t.lambda_s, t.eigvec_s)] {
            let av = t.apply(v);
            assert!((av[0] - l * v[0]).abs() < 1e-12 && (av[1] - l * v[1]).abs() < 1e-12);
        }
        // Projections are complementary idempotents.
        let pu = mat_vec(&t.proj_u, t.eigvec_u);
        assert!((pu[0] - t.eigvec_u[0]).abs() < 1e-12);
        let ps = mat_vec(&t.proj_u, t.eigvec_s);
        assert!(ps[0].abs() < 1e-12 && ps[1].abs() < 1e-12);
        assert!((t.shadow_constant - phi2).abs() < 1e-9);
    }

    #[test]
    fn rejects_non_hyperbolic() {
        assert!(ToralAuto::new([[1, 0], [0, 1]]).is_err());
        assert!(ToralAuto::new([[1, 1], [0, 1]]).is_err());
        assert!(ToralAuto::new([[0, 1], [1, 0]]).is_err());
        assert!(ToralAuto::new([[2, 1], [1, 2]]).is_err());
        let flip = ToralAuto::new([[1, 1], [1, 0]]).unwrap();
        assert_eq!(flip.det, -1);
        let neg = ToralAuto::new([[-2, -1], [-1, -1]]).unwrap();
        assert!(neg.lambda_u < -1.0);
    }
}
