use super::{cone_surface, rooftop_surface, ConeSpec, GeometryError, PlaneChart, RooftopSpec, SurfaceGeometry};
use serde::{Deserialize, Serialize};

/// Surface description as read from a key/value config file:
///
/// ```toml
/// kind = "rooftop"
/// theta = 0.5
/// L = 4.0
/// smoothing_radius = 0.25
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SurfaceSpec {
    Cone {
        theta: f64,
    },
    Rooftop {
        theta: f64,
        #[serde(rename = "L")]
        length: f64,
        #[serde(default)]
        smoothing_radius: f64,
    },
    Plane,
}

impl SurfaceSpec {
    pub fn from_toml(text: &str) -> Result<Self, GeometryError> {
        toml::from_str(text).map_err(|e| GeometryError::Config(e.to_string()))
    }

    pub fn build(&self) -> Result<SurfaceGeometry, GeometryError> {
        match *self {
            SurfaceSpec::Cone { theta } => Ok(cone_surface(&ConeSpec::new(theta)?)),
            SurfaceSpec::Rooftop { theta, length, smoothing_radius } => {
                rooftop_surface(&RooftopSpec::new(length, theta, smoothing_radius)?)
            }
            SurfaceSpec::Plane => Ok(PlaneChart::surface()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_kinds() {
        let c = SurfaceSpec::from_toml("kind = \"cone\"\ntheta = 0.7\n").unwrap();
        assert_eq!(c, SurfaceSpec::Cone { theta: 0.7 });
        let r = SurfaceSpec::from_toml("kind = \"rooftop\"\ntheta = 0.5\nL = 4.0\n").unwrap();
        assert_eq!(r, SurfaceSpec::Rooftop { theta: 0.5, length: 4.0, smoothing_radius: 0.0 });
        assert!(r.build().is_ok());
        assert!(SurfaceSpec::from_toml("kind = \"torus\"\n").is_err());
        let bad = SurfaceSpec::from_toml("kind = \"rooftop\"\ntheta = 0.5\nL = 1.0\nsmoothing_radius = 2.0\n")
            .unwrap();
        assert!(matches!(bad.build(), Err(GeometryError::InvalidSmoothing { .. })));
    }
}
