//! A geometry file with everything derived from it.

use crate::error::{Result, RingError};
use cone_complex::{ConeComplex, GeometryData, IntegralPoint, Relative, Skeleton};
use curve_data::{CoefficientRing, CurveClassData, CurveData};
use invariants::{InvariantTable, Policy, Rules};
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// Points `p` with `Σ φ_i ⟨p, D_i⟩ ≤ d`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct PointBound {
    pub phi: Vec<i64>,
    pub d: i64,
}

/// Keys of a geometry file that belong to no single crate.
#[derive(Clone, Debug, Default, Deserialize)]
struct Extras {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    class_names: Option<Vec<String>>,
    #[serde(default)]
    point_bound: Option<PointBound>,
    #[serde(default)]
    table: Option<String>,
    #[serde(default)]
    policy: Option<Policy>,
    #[serde(default)]
    presentation: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Geometry {
    pub name: String,
    pub complex: ConeComplex,
    pub skeleton: Skeleton,
    pub classes: CurveClassData,
    pub ring: CoefficientRing,
    pub relative: Option<Relative>,
    pub table: InvariantTable,
    pub class_names: Option<Vec<String>>,
    pub point_bound: PointBound,
    /// Paths named in the file, resolved against its directory.
    pub table_path: Option<PathBuf>,
    pub presentation_path: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| RingError::Io {
        path: path.display().to_string(),
        source,
    })
}

impl Geometry {
    /// Parses a geometry without reading any referenced file; the table is
    /// taken from `table_text` when given, and is empty otherwise.
    pub fn from_json(
        text: &str,
        table_text: Option<&str>,
        policy: Option<Policy>,
    ) -> Result<Geometry> {
        let data = GeometryData::from_json(text)?;
        let curves = CurveData::from_json(text)?;
        let extras: Extras =
            serde_json::from_str(text).map_err(|e| RingError::Scenario(e.to_string()))?;
        if curves.pairing_matrix.len() != data.divisors.len() {
            return Err(RingError::Scenario(format!(
                "{} pairing rows for {} divisors",
                curves.pairing_matrix.len(),
                data.divisors.len()
            )));
        }
        if let Some(a) = &data.skeleton_coeffs {
            if a.len() != data.divisors.len() {
                return Err(RingError::Scenario(format!(
                    "{} skeleton coefficients for {} divisors",
                    a.len(),
                    data.divisors.len()
                )));
            }
        }
        let complex = data.complex()?;
        let skeleton = data.skeleton(&complex)?;
        let relative = data.relative(&complex)?;
        let (classes, ring) = curves.build()?;
        if let Some(names) = &extras.class_names {
            if names.len() != classes.rank() {
                return Err(RingError::Scenario(format!(
                    "{} class names for rank {}",
                    names.len(),
                    classes.rank()
                )));
            }
        }
        let point_bound = extras.point_bound.clone().unwrap_or(PointBound {
            phi: vec![1; data.divisors.len()],
            d: 3,
        });
        if point_bound.phi.len() != data.divisors.len() {
            return Err(RingError::Scenario(
                "point_bound.phi has the wrong length".into(),
            ));
        }
        let policy = policy.or(extras.policy).unwrap_or_default();
        let mut geo = Geometry {
            name: extras.name.clone().unwrap_or_default(),
            complex,
            skeleton,
            classes,
            ring,
            relative,
            table: InvariantTable::new(policy),
            class_names: extras.class_names.clone(),
            point_bound,
            table_path: extras.table.as_ref().map(PathBuf::from),
            presentation_path: extras.presentation.as_ref().map(PathBuf::from),
        };
        if let Some(t) = table_text {
            geo.table = InvariantTable::load(t, &geo.rules(), policy)?;
        }
        Ok(geo)
    }

    /// Reads a geometry file and the table it names. `table` replaces the
    /// named table and `policy` the stored policy.
    pub fn load(path: &Path, table: Option<&Path>, policy: Option<Policy>) -> Result<Geometry> {
        let text = read(path)?;
        let dir = path.parent().unwrap_or(Path::new("."));
        let mut geo = Geometry::from_json(&text, None, policy)?;
        geo.table_path = geo.table_path.take().map(|p| dir.join(p));
        geo.presentation_path = geo.presentation_path.take().map(|p| dir.join(p));
        let table_path = table
            .map(Path::to_path_buf)
            .or_else(|| geo.table_path.clone());
        if let Some(tp) = table_path {
            let t = read(&tp)?;
            geo.table = InvariantTable::load(&t, &geo.rules(), geo.table.policy())?;
            geo.table_path = Some(tp);
        }
        Ok(geo)
    }

    pub fn rules(&self) -> Rules<'_> {
        Rules {
            complex: &self.complex,
            skeleton: &self.skeleton,
            classes: &self.classes,
            relative: self.relative.as_ref(),
        }
    }

    pub fn divisor_count(&self) -> usize {
        self.complex.divisors().len()
    }

    /// Parses a point and checks it lies in the skeleton.
    pub fn point(&self, text: &str) -> Result<IntegralPoint> {
        let p = self.complex.parse_point(text)?;
        if !self.skeleton.contains(&p) {
            return Err(RingError::OutsideSkeleton(text.to_string()));
        }
        Ok(p)
    }

    pub fn format_point(&self, p: &IntegralPoint) -> String {
        self.complex.format_point(p)
    }

    /// Skeleton points within the stored bound.
    pub fn points(&self) -> Result<Vec<IntegralPoint>> {
        self.points_within(self.point_bound.d)
    }

    /// Skeleton points with `φ(p) ≤ d` for the stored `φ`.
    pub fn points_within(&self, d: i64) -> Result<Vec<IntegralPoint>> {
        Ok(self
            .complex
            .enumerate_points(&self.point_bound.phi, d, Some(self.skeleton.cones()))?
            .into_iter()
            .collect())
    }

    pub fn phi(&self, p: &IntegralPoint) -> i64 {
        self.complex
            .pairings(p)
            .iter()
            .zip(&self.point_bound.phi)
            .map(|(x, w)| x * w)
            .sum()
    }
}
