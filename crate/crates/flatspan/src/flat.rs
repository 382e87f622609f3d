//! Projective flats as canonical bases of their linear lifts, with exact
//! span, meet, containment, and projection.
//!
//! A k-flat of RP^d is stored as the reduced row-echelon basis of its
//! (k+1)-dimensional lift in R^{d+1}. RREF bases are unique per subspace,
//! so flats compare, order, and deduplicate by their stored rows alone.
//! The empty flat has no rows and projective dimension -1, which makes the
//! dimension law below read uniformly at the lift level.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, Row};
use crate::point::ProjPoint;
use crate::scalar::{parse_rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flat {
    ambient_dim: usize,
    basis: Vec<Row>,
}

impl Flat {
    /// The empty flat (projective dimension -1).
    pub fn empty(ambient_dim: usize) -> Result<Self> {
        if ambient_dim < 2 {
            return Err(Error::AmbientTooSmall(ambient_dim));
        }
        Ok(Flat {
            ambient_dim,
            basis: Vec::new(),
        })
    }

    /// The whole space RP^d.
    pub fn ambient(ambient_dim: usize) -> Result<Self> {
        if ambient_dim < 2 {
            return Err(Error::AmbientTooSmall(ambient_dim));
        }
        let width = ambient_dim + 1;
        let basis = (0..width)
            .map(|i| {
                let mut row = vec![Scalar::default(); width];
                row[i] = crate::scalar::int(1);
                row
            })
            .collect();
        Ok(Flat { ambient_dim, basis })
    }

    /// Canonical flat spanned by arbitrary lift generators. An empty
    /// generator list yields the empty flat.
    pub fn from_generators(ambient_dim: usize, generators: Vec<Row>) -> Result<Self> {
        if ambient_dim < 2 {
            return Err(Error::AmbientTooSmall(ambient_dim));
        }
        let width = ambient_dim + 1;
        for row in &generators {
            if row.len() != width {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: row.len().saturating_sub(1),
                });
            }
        }
        Ok(Flat {
            ambient_dim,
            basis: linalg::rref(generators),
        })
    }

    pub fn from_point(p: &ProjPoint) -> Self {
        // A canonical point's coordinate row is already in RREF.
        Flat {
            ambient_dim: p.ambient_dim(),
            basis: vec![p.coords().to_vec()],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Projective dimension; -1 for the empty flat.
    pub fn proj_dim(&self) -> isize {
        self.basis.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_ambient(&self) -> bool {
        self.basis.len() == self.ambient_dim + 1
    }

    /// Canonical RREF basis rows of the lift.
    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    fn check_same_ambient(&self, other: &Flat) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Smallest flat containing both operands.
    pub fn join(&self, other: &Flat) -> Result<Flat> {
        self.check_same_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Flat {
            ambient_dim: self.ambient_dim,
            basis: linalg::rref(rows),
        })
    }

    /// Intersection of the two flats, via the Zassenhaus block trick on the
    /// lifts: row-reduce [A|A; B|0] and read the intersection basis off the
    /// right halves of the rows whose left half vanished.
    pub fn meet(&self, other: &Flat) -> Result<Flat> {
        self.check_same_ambient(other)?;
        let width = self.ambient_dim + 1;
        let mut block: Vec<Row> = Vec::with_capacity(self.basis.len() + other.basis.len());
        for row in &self.basis {
            let mut doubled = row.clone();
            doubled.extend(row.iter().cloned());
            block.push(doubled);
        }
        for row in &other.basis {
            let mut padded = row.clone();
            padded.extend(std::iter::repeat_n(Scalar::default(), width));
            block.push(padded);
        }
        let reduced = linalg::rref(block);
        let meet_rows: Vec<Row> = reduced
            .into_iter()
            .filter(|row| linalg::is_zero_row(&row[..width]))
            .map(|row| row[width..].to_vec())
            .collect();
        // The extracted block inherits RREF from the full reduction.
        debug_assert_eq!(meet_rows, linalg::rref(meet_rows.clone()));
        Ok(Flat {
            ambient_dim: self.ambient_dim,
            basis: linalg::rref(meet_rows),
        })
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        debug_assert_eq!(p.ambient_dim(), self.ambient_dim);
        let mut v = p.coords().to_vec();
        linalg::reduce_against(&self.basis, &mut v);
        linalg::is_zero_row(&v)
    }

    pub fn contains_flat(&self, other: &Flat) -> bool {
        debug_assert_eq!(other.ambient_dim, self.ambient_dim);
        other.basis.iter().all(|row| {
            let mut v = row.clone();
            linalg::reduce_against(&self.basis, &mut v);
            linalg::is_zero_row(&v)
        })
    }

    /// The point of a zero-dimensional flat.
    pub fn to_point(&self) -> Option<ProjPoint> {
        if self.basis.len() != 1 {
            return None;
        }
        Some(
            ProjPoint::new(self.basis[0].clone())
                .expect("an RREF basis row is nonzero"),
        )
    }

    pub(crate) fn basis_strings(&self) -> Vec<Vec<String>> {
        self.basis
            .iter()
            .map(|row| row.iter().map(Scalar::to_string).collect())
            .collect()
    }

    pub(crate) fn from_basis_strings(rows: &[Vec<String>]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidCollection(
                "a serialized flat needs at least one basis row".into(),
            ));
        };
        if first.len() < 3 {
            return Err(Error::AmbientTooSmall(first.len().saturating_sub(1)));
        }
        let ambient_dim = first.len() - 1;
        let generators = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Row>>())
            .collect::<Result<Vec<Row>>>()?;
        Flat::from_generators(ambient_dim, generators)
    }
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flat(dim {}, d {}", self.proj_dim(), self.ambient_dim)?;
        for row in &self.basis {
            write!(f, ", [")?;
            for (i, x) in row.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, ")")
    }
}

impl PartialOrd for Flat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Flat {
    /// Total order: ambient dimension, then projective dimension, then the
    /// flattened basis entries. Deterministic tie-breaking everywhere.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient_dim
            .cmp(&other.ambient_dim)
            .then_with(|| self.basis.len().cmp(&other.basis.len()))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl Serialize for Flat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Flat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(deserializer)?;
        Flat::from_basis_strings(&rows).map_err(D::Error::custom)
    }
}

/// Join of any number of flats; the empty list gives the empty flat.
pub fn join_all<'a>(
    ambient_dim: usize,
    flats: impl IntoIterator<Item = &'a Flat>,
) -> Result<Flat> {
    let mut rows: Vec<Row> = Vec::new();
    for flat in flats {
        if flat.ambient_dim() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: flat.ambient_dim(),
            });
        }
        rows.extend(flat.basis().iter().cloned());
    }
    Flat::from_generators(ambient_dim, rows)
}

/// Dimension bookkeeping for a pair of flats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatRelation {
    /// One of the two flats contains the other.
    pub contains: bool,
    pub equal: bool,
    /// The projective intersection is empty.
    pub disjoint: bool,
    /// (dim A, dim B, dim join, dim meet).
    pub dims: (isize, isize, isize, isize),
}

/// All the pairwise predicates in one query.
pub fn flat_relation(a: &Flat, b: &Flat) -> Result<FlatRelation> {
    let join = a.join(b)?;
    let meet = a.meet(b)?;
    let equal = a == b;
    let contains = &meet == a || &meet == b;
    Ok(FlatRelation {
        contains,
        equal,
        disjoint: meet.is_empty(),
        dims: (a.proj_dim(), b.proj_dim(), join.proj_dim(), meet.proj_dim()),
    })
}

/// Projection from a center flat onto a disjoint target flat:
/// `x` maps to the unique point of `join(center, x) ∩ target`.
pub fn project_through(center: &Flat, target: &Flat, x: &ProjPoint) -> Result<ProjPoint> {
    center.check_same_ambient(target)?;
    if x.ambient_dim() != center.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: center.ambient_dim(),
            found: x.ambient_dim(),
        });
    }
    if !center.meet(target)?.is_empty() {
        return Err(Error::FlatsNotDisjoint);
    }
    if center.contains_point(x) {
        return Err(Error::PointOnCenter);
    }
    let x_flat = x.to_flat();
    let span = center.join(target)?;
    if !span.contains_point(x) {
        return Err(Error::PointOutsideJoin);
    }
    let image = center.join(&x_flat)?.meet(target)?;
    debug_assert_eq!(image.proj_dim(), 0);
    Ok(image.to_point().expect("projection image is a single point"))
}
