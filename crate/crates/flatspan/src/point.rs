//! Points of real projective d-space and finite labelled point sets.

use std::fmt;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::scalar::{parse_rational, Scalar};

/// A point of RP^d stored as d+1 homogeneous rationals, canonically scaled
/// so that the first nonzero coordinate is 1. Two points are equal exactly
/// when their stored coordinate vectors are identical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::AmbientTooSmall(coords.len().saturating_sub(1)));
        }
        let Some(first) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::ZeroPoint);
        };
        let mut coords = coords;
        if !coords[first].is_one() {
            let inv = coords[first].recip();
            for c in coords.iter_mut() {
                *c *= &inv;
            }
        }
        Ok(ProjPoint { coords })
    }

    /// Embeds an affine point of R^d via the chart (1 : x_1 : ... : x_d).
    pub fn embed_affine(affine: &[Scalar]) -> Result<Self> {
        if affine.len() < 2 {
            return Err(Error::AmbientTooSmall(affine.len()));
        }
        let mut coords = Vec::with_capacity(affine.len() + 1);
        coords.push(Scalar::one());
        coords.extend_from_slice(affine);
        // Leading coordinate is already 1, so this is canonical as-is.
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// True when the homogenizing coordinate is zero.
    pub fn is_at_infinity(&self) -> bool {
        self.coords[0].is_zero()
    }

    pub fn to_flat(&self) -> Flat {
        Flat::from_point(self)
    }

    pub(crate) fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(Scalar::to_string).collect()
    }

    pub(crate) fn from_coord_strings(strings: &[String]) -> Result<Self> {
        let coords = strings
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        ProjPoint::new(coords)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coord_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        ProjPoint::from_coord_strings(&strings).map_err(D::Error::custom)
    }
}

/// A finite ordered set of distinct canonical points sharing one ambient
/// dimension, with a provenance label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<ProjPoint>,
    ambient_dim: usize,
    label: String,
}

impl PointSet {
    pub fn new(
        ambient_dim: usize,
        points: Vec<ProjPoint>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if ambient_dim < 2 {
            return Err(Error::AmbientTooSmall(ambient_dim));
        }
        for (i, p) in points.iter().enumerate() {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: p.ambient_dim(),
                });
            }
            if points[..i].contains(p) {
                return Err(Error::DuplicatePoint(i));
            }
        }
        Ok(PointSet {
            points,
            ambient_dim,
            label: label.into(),
        })
    }

    /// Like [`PointSet::new`] but drops duplicate canonical points,
    /// returning how many were dropped.
    pub fn new_dedup(
        ambient_dim: usize,
        points: Vec<ProjPoint>,
        label: impl Into<String>,
    ) -> Result<(Self, usize)> {
        let mut kept: Vec<ProjPoint> = Vec::with_capacity(points.len());
        let mut dropped = 0usize;
        for p in points {
            if kept.contains(&p) {
                dropped += 1;
            } else {
                kept.push(p);
            }
        }
        Ok((PointSet::new(ambient_dim, kept, label)?, dropped))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ProjPoint> {
        self.points.iter()
    }

    /// Indices of the points lying on `flat`.
    pub fn indices_on(&self, flat: &Flat) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| flat.contains_point(&self.points[i]))
            .collect()
    }

    /// The sub-point-set lying on `flat`, keeping this set's label.
    pub fn restrict_to(&self, flat: &Flat) -> PointSet {
        let points = self
            .points
            .iter()
            .filter(|p| flat.contains_point(p))
            .cloned()
            .collect();
        PointSet {
            points,
            ambient_dim: self.ambient_dim,
            label: self.label.clone(),
        }
    }

    /// Number of points of this set on `flat`.
    pub fn count_on(&self, flat: &Flat) -> usize {
        self.points.iter().filter(|p| flat.contains_point(p)).count()
    }

    /// Rank of the lifted coordinate vectors (so `rank - 1` is the dimension
    /// of the flat spanned by the whole set).
    pub fn lift_rank(&self) -> usize {
        let rows: Vec<Vec<Scalar>> = self.points.iter().map(|p| p.coords().to_vec()).collect();
        crate::linalg::rank_of(&rows)
    }

    /// The flat spanned by all points of the set.
    pub fn span(&self) -> Flat {
        let rows: Vec<Vec<Scalar>> = self.points.iter().map(|p| p.coords().to_vec()).collect();
        Flat::from_generators(self.ambient_dim, rows)
            .expect("point coordinates all share the ambient dimension")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn embed_affine_origin() {
        let p = ProjPoint::embed_affine(&[int(0), int(0), int(0)]).unwrap();
        assert_eq!(p.coords(), &[int(1), int(0), int(0), int(0)]);
        assert!(!p.is_at_infinity());
    }

    #[test]
    fn embed_affine_is_chart_identity() {
        let p = ProjPoint::embed_affine(&[int(2), frac(-1, 3)]).unwrap();
        assert_eq!(p.coords(), &[int(1), int(2), frac(-1, 3)]);
    }

    #[test]
    fn canonical_scaling_first_nonzero_is_one() {
        let p = ProjPoint::new(vec![int(0), int(3), int(6)]).unwrap();
        assert_eq!(p.coords(), &[int(0), int(1), int(2)]);
        assert!(p.is_at_infinity());
    }

    #[test]
    fn scaled_points_are_equal() {
        let p = ProjPoint::new(vec![int(2), int(4), int(-6)]).unwrap();
        let q = ProjPoint::new(vec![int(-1), int(-2), int(3)]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn zero_point_rejected() {
        assert!(matches!(
            ProjPoint::new(vec![int(0), int(0), int(0)]),
            Err(Error::ZeroPoint)
        ));
    }

    #[test]
    fn point_set_rejects_duplicates() {
        let a = ProjPoint::embed_affine(&[frac(1, 2), frac(1, 3)]).unwrap();
        let b = ProjPoint::new(vec![int(2), int(1), frac(2, 3)]).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            PointSet::new(2, vec![a.clone(), b], "dup"),
            Err(Error::DuplicatePoint(1))
        ));
        let (set, dropped) = PointSet::new_dedup(
            2,
            vec![a.clone(), a.clone(), a],
            "dup",
        )
        .unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(dropped, 2);
    }

    #[test]
    fn serde_round_trip() {
        let p = ProjPoint::new(vec![int(0), int(2), int(5)]).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["0","1","5/2"]"#);
        let back: ProjPoint = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
