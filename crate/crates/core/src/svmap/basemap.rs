use serde::{Deserialize, Serialize};

use crate::cellspace::{CellSpace, SpaceKind};
use crate::svmap::GraphError;

/// The single-valued map underneath a fattened relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapKind {
    Affine1d { slope: f64, intercept: f64 },
    /// Continuous piecewise-linear interpolation through `knots` (sorted by
    /// `x`), extended linearly past the end knots.
    PiecewiseAffine1d { knots: Vec<[f64; 2]> },
    /// `x -> 2x mod 1` on `[0, 1]`, read as a circle map.
    Doubling,
    Logistic { a: f64 },
    ToralAutomorphism { matrix: [[i64; 2]; 2] },
    Identity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct BaseMapRepr {
    #[serde(flatten)]
    kind: MapKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lipschitz: Option<f64>,
}

/// A base map together with an upper bound on its Lipschitz constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BaseMapRepr", into = "BaseMapRepr")]
pub struct BaseMap {
    kind: MapKind,
    /// Caller-supplied bound; never below the derived one.
    lipschitz_override: Option<f64>,
}

impl TryFrom<BaseMapRepr> for BaseMap {
    type Error = GraphError;

    fn try_from(repr: BaseMapRepr) -> Result<Self, Self::Error> {
        let map = BaseMap::new(repr.kind)?;
        match repr.lipschitz {
            Some(l) => map.with_lipschitz(l),
            None => Ok(map),
        }
    }
}

impl From<BaseMap> for BaseMapRepr {
    fn from(map: BaseMap) -> Self {
        BaseMapRepr {
            kind: map.kind,
            lipschitz: map.lipschitz_override,
        }
    }
}

impl BaseMap {
    pub fn new(kind: MapKind) -> Result<Self, GraphError> {
        match &kind {
            MapKind::Affine1d { slope, intercept } => {
                if !slope.is_finite() || !intercept.is_finite() {
                    return Err(GraphError::InvalidMap("affine coefficients must be finite".into()));
                }
            }
            MapKind::PiecewiseAffine1d { knots } => {
                if knots.len() < 2 {
                    return Err(GraphError::InvalidMap("need at least two knots".into()));
                }
                if knots.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(GraphError::InvalidMap("knots must be finite".into()));
                }
                if knots.windows(2).any(|w| w[0][0] >= w[1][0]) {
                    return Err(GraphError::InvalidMap(
                        "knot abscissae must be strictly increasing".into(),
                    ));
                }
            }
            MapKind::Logistic { a } => {
                if !a.is_finite() {
                    return Err(GraphError::InvalidMap("logistic parameter must be finite".into()));
                }
            }
            MapKind::ToralAutomorphism { matrix } => {
                let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
                if det.abs() != 1 {
                    return Err(GraphError::InvalidMap(format!(
                        "toral automorphism needs determinant +-1, got {det}"
                    )));
                }
            }
            MapKind::Doubling | MapKind::Identity => {}
        }
        Ok(BaseMap {
            kind,
            lipschitz_override: None,
        })
    }

    pub fn identity() -> Self {
        BaseMap::new(MapKind::Identity).unwrap()
    }

    pub fn doubling() -> Self {
        BaseMap::new(MapKind::Doubling).unwrap()
    }

    pub fn logistic(a: f64) -> Result<Self, GraphError> {
        BaseMap::new(MapKind::Logistic { a })
    }

    pub fn affine(slope: f64, intercept: f64) -> Result<Self, GraphError> {
        BaseMap::new(MapKind::Affine1d { slope, intercept })
    }

    pub fn toral(matrix: [[i64; 2]; 2]) -> Result<Self, GraphError> {
        BaseMap::new(MapKind::ToralAutomorphism { matrix })
    }

    /// Replaces the derived Lipschitz bound with a larger one.
    pub fn with_lipschitz(mut self, bound: f64) -> Result<Self, GraphError> {
        let derived = self.derived_lipschitz(None);
        if !bound.is_finite() || bound < derived {
            return Err(GraphError::InvalidMap(format!(
                "supplied Lipschitz bound {bound} is below the derived bound {derived}"
            )));
        }
        self.lipschitz_override = Some(bound);
        Ok(self)
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    /// Lipschitz bound on the map's natural domain (`[0, 1]` for the 1-D
    /// kinds, the torus for automorphisms).
    pub fn lipschitz(&self) -> f64 {
        self.lipschitz_override
            .unwrap_or_else(|| self.derived_lipschitz(None))
    }

    /// Lipschitz bound valid on every piece of `space`.
    pub fn lipschitz_on(&self, space: &CellSpace) -> f64 {
        let hull = match space.kind() {
            SpaceKind::Torus2 => None,
            _ => {
                let pieces = space.pieces();
                Some((pieces[0].0, pieces[pieces.len() - 1].1))
            }
        };
        self.lipschitz_override
            .unwrap_or_else(|| self.derived_lipschitz(hull))
    }

    fn derived_lipschitz(&self, hull: Option<(f64, f64)>) -> f64 {
        match &self.kind {
            MapKind::Affine1d { slope, .. } => slope.abs(),
            MapKind::PiecewiseAffine1d { knots } => knots
                .windows(2)
                .map(|w| ((w[1][1] - w[0][1]) / (w[1][0] - w[0][0])).abs())
                .fold(0.0, f64::max),
            MapKind::Doubling => 2.0,
            MapKind::Logistic { a } => {
                let (lo, hi) = hull.unwrap_or((0.0, 1.0));
                a.abs() * (1.0 - 2.0 * lo).abs().max((1.0 - 2.0 * hi).abs())
            }
            MapKind::ToralAutomorphism { matrix } => matrix
                .iter()
                .map(|row| (row[0].abs() + row[1].abs()) as f64)
                .fold(0.0, f64::max),
            MapKind::Identity => 1.0,
        }
    }

    /// True when the map's values live on the circle `R/Z` even though the
    /// space is the interval `[0, 1]`.
    pub fn wraps_unit_interval(&self) -> bool {
        matches!(self.kind, MapKind::Doubling)
    }

    pub fn check_space(&self, space: &CellSpace) -> Result<(), GraphError> {
        let torus = space.kind() == SpaceKind::Torus2;
        match &self.kind {
            MapKind::Identity => Ok(()),
            MapKind::ToralAutomorphism { .. } if torus => Ok(()),
            MapKind::ToralAutomorphism { .. } => Err(GraphError::IncompatibleSpace(
                "toral automorphisms need a torus2 space".into(),
            )),
            MapKind::Doubling => {
                let pieces = space.pieces();
                if space.kind() == SpaceKind::Interval && pieces[0].0 == 0.0 && pieces[0].1 == 1.0 {
                    Ok(())
                } else {
                    Err(GraphError::IncompatibleSpace(
                        "the doubling map lives on the interval [0, 1]".into(),
                    ))
                }
            }
            _ if torus => Err(GraphError::IncompatibleSpace(
                "one-dimensional maps need an interval space".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Evaluates the map. Interval maps read and write coordinate 0 only;
    /// circle and torus maps return values reduced mod 1.
    pub fn eval(&self, p: [f64; 2]) -> [f64; 2] {
        let x = p[0];
        match &self.kind {
            MapKind::Affine1d { slope, intercept } => [slope * x + intercept, 0.0],
            MapKind::PiecewiseAffine1d { knots } => [interpolate(knots, x), 0.0],
            MapKind::Doubling => [(2.0 * x).rem_euclid(1.0), 0.0],
            MapKind::Logistic { a } => [a * x * (1.0 - x), 0.0],
            MapKind::ToralAutomorphism { matrix } => {
                let m = matrix;
                [
                    (m[0][0] as f64 * p[0] + m[0][1] as f64 * p[1]).rem_euclid(1.0),
                    (m[1][0] as f64 * p[0] + m[1][1] as f64 * p[1]).rem_euclid(1.0),
                ]
            }
            MapKind::Identity => p,
        }
    }
}

fn interpolate(knots: &[[f64; 2]], x: f64) -> f64 {
    let seg = knots
        .windows(2)
        .position(|w| x <= w[1][0])
        .unwrap_or(knots.len() - 2);
    let (a, b) = (knots[seg], knots[seg + 1]);
    a[1] + (b[1] - a[1]) * (x - a[0]) / (b[0] - a[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lipschitz_bounds() {
        assert_eq!(BaseMap::doubling().lipschitz(), 2.0);
        assert_eq!(BaseMap::logistic(3.9).unwrap().lipschitz(), 3.9);
        assert_eq!(BaseMap::toral([[2, 1], [1, 1]]).unwrap().lipschitz(), 3.0);
        let pw = BaseMap::new(MapKind::PiecewiseAffine1d {
            knots: vec![[0.0, 0.0], [0.5, 1.0], [1.0, 0.0]],
        })
        .unwrap();
        assert_eq!(pw.lipschitz(), 2.0);
        assert_eq!(pw.eval([0.25, 0.0])[0], 0.5);
        assert_eq!(pw.eval([0.75, 0.0])[0], 0.5);
        let half = CellSpace::interval(0.25, 0.5, 4).unwrap();
        assert_eq!(BaseMap::logistic(4.0).unwrap().lipschitz_on(&half), 2.0);
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(BaseMap::toral([[1, 1], [1, 1]]).is_err());
        assert!(BaseMap::toral([[1, 0], [0, 1]]).is_ok());
        assert!(BaseMap::doubling().with_lipschitz(1.0).is_err());
        assert_eq!(BaseMap::doubling().with_lipschitz(3.0).unwrap().lipschitz(), 3.0);
        let torus = CellSpace::torus(4, 4).unwrap();
        assert!(BaseMap::doubling().check_space(&torus).is_err());
        let wide = CellSpace::interval(0.0, 2.0, 4).unwrap();
        assert!(BaseMap::doubling().check_space(&wide).is_err());
    }

    #[test]
    fn json_is_tagged() {
        let m = BaseMap::toral([[2, 1], [1, 1]]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"kind":"toral_automorphism","matrix":[[2,1],[1,1]]}"#);
        let back: BaseMap = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        let l: BaseMap = serde_json::from_str(r#"{"kind":"logistic","a":3.6,"lipschitz":5.0}"#).unwrap();
        assert_eq!(l.lipschitz(), 5.0);
        assert!(serde_json::from_str::<BaseMap>(r#"{"kind":"toral_automorphism","matrix":[[2,2],[1,1]]}"#).is_err());
    }
}
