//! Enumeration of spanned flats and the counting quantities built on them:
//! hyperplane counts, pencil counts through a point, and the pair-plane
//! incidence census.
//!
//! Enumeration iterates (k+1)-point subsets, keeps those of full lift rank,
//! and deduplicates by canonical basis. Brute force with exact arithmetic is
//! the point here; the closure-based oracle in the test suite keeps it honest.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::point::{PointSet, ProjPoint};
use crate::scalar::binomial;

/// All spanned k-flats of a point set, in canonical flat order, with the
/// number of set points on each flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpannedFlatSet {
    k: usize,
    flats: BTreeMap<Flat, usize>,
}

impl SpannedFlatSet {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn contains(&self, flat: &Flat) -> bool {
        self.flats.contains_key(flat)
    }

    pub fn multiplicity(&self, flat: &Flat) -> Option<usize> {
        self.flats.get(flat).copied()
    }

    /// Flats in canonical order.
    pub fn flats(&self) -> impl Iterator<Item = &Flat> {
        self.flats.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Flat, usize)> {
        self.flats.iter().map(|(f, &m)| (f, m))
    }

    /// Histogram multiplicity -> number of flats with that multiplicity.
    pub fn multiplicity_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for &m in self.flats.values() {
            *hist.entry(m).or_insert(0) += 1;
        }
        hist
    }

    /// The flat with the most points, canonical order breaking ties.
    pub fn max_coverage(&self) -> Option<(&Flat, usize)> {
        let mut best: Option<(&Flat, usize)> = None;
        for (flat, &m) in &self.flats {
            if best.is_none_or(|(_, bm)| m > bm) {
                best = Some((flat, m));
            }
        }
        best
    }
}

/// Lexicographic r-subsets of {0, ..., n-1}.
pub(crate) fn k_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r > n {
        return Vec::new();
    }
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::with_capacity(binomial(n, r));
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.clone());
        // advance odometer
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - r {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn collect_chunk(s: &PointSet, subsets: &[Vec<usize>], k: usize) -> BTreeSet<Flat> {
    let d = s.ambient_dim();
    let points = s.points();
    let mut found = BTreeSet::new();
    for subset in subsets {
        let rows: Vec<Vec<crate::scalar::Scalar>> = subset
            .iter()
            .map(|&i| points[i].coords().to_vec())
            .collect();
        let flat = Flat::from_generators(d, rows).expect("points share the ambient dimension");
        if flat.proj_dim() == k as isize {
            found.insert(flat);
        }
    }
    found
}

/// All spanned k-flats of `s`. Equivalent to [`spanned_flats_par`] with one
/// worker.
pub fn spanned_flats(s: &PointSet, k: usize) -> Result<SpannedFlatSet> {
    spanned_flats_par(s, k, 1)
}

/// All spanned k-flats of `s`, with subset iteration partitioned over
/// `workers` threads. The merge is an ordered set union, so the result is
/// identical for any worker count.
pub fn spanned_flats_par(s: &PointSet, k: usize, workers: usize) -> Result<SpannedFlatSet> {
    let d = s.ambient_dim();
    if k + 1 > d {
        return Err(Error::DimOutOfRange {
            dim: k as isize,
            min: 0,
            max: d as isize - 1,
        });
    }
    if s.len() < k + 1 {
        return Err(Error::TooFewPoints {
            needed: k + 1,
            found: s.len(),
        });
    }
    let subsets = k_subsets(s.len(), k + 1);
    let workers = workers.max(1).min(subsets.len().max(1));
    let merged: BTreeSet<Flat> = if workers == 1 {
        collect_chunk(s, &subsets, k)
    } else {
        let chunk_len = subsets.len().div_ceil(workers);
        std::thread::scope(|scope| {
            let handles: Vec<_> = subsets
                .chunks(chunk_len)
                .map(|chunk| scope.spawn(move || collect_chunk(s, chunk, k)))
                .collect();
            let mut merged = BTreeSet::new();
            for handle in handles {
                merged.extend(handle.join().expect("census worker panicked"));
            }
            merged
        })
    };
    // Multiplicities via a full membership pass after dedup.
    let flats = merged
        .into_iter()
        .map(|flat| {
            let m = s.count_on(&flat);
            (flat, m)
        })
        .collect();
    Ok(SpannedFlatSet { k, flats })
}

/// H_S(F): the number of (dim F - 1)-flats inside `f` spanned by the points
/// of `s` on `f`. For a line this is the number of set points on it.
pub fn hyperplane_count(s: &PointSet, f: &Flat) -> Result<usize> {
    if f.proj_dim() < 1 {
        return Err(Error::DimOutOfRange {
            dim: f.proj_dim(),
            min: 1,
            max: f.ambient_dim() as isize,
        });
    }
    let k = (f.proj_dim() - 1) as usize;
    let restricted = s.restrict_to(f);
    if restricted.len() < k + 1 {
        return Ok(0);
    }
    Ok(spanned_flats(&restricted, k)?.len())
}

/// Spanned hyperplanes of `f`, with multiplicities, as a census.
/// Points of `s` off `f` are ignored.
pub fn hyperplanes_of(s: &PointSet, f: &Flat) -> Result<SpannedFlatSet> {
    if f.proj_dim() < 1 {
        return Err(Error::DimOutOfRange {
            dim: f.proj_dim(),
            min: 1,
            max: f.ambient_dim() as isize,
        });
    }
    let k = (f.proj_dim() - 1) as usize;
    let restricted = s.restrict_to(f);
    if restricted.len() < k + 1 {
        return Ok(SpannedFlatSet {
            k,
            flats: BTreeMap::new(),
        });
    }
    spanned_flats(&restricted, k)
}

/// Number of spanned hyperplanes of `f` passing through `q`. Bounded by
/// |S ∩ F|^(dim F - 1): a spanning hyperplane through a fixed point is
/// determined by dim F - 1 further points.
pub fn hyperplanes_through_point(s: &PointSet, f: &Flat, q: &ProjPoint) -> Result<usize> {
    if f.proj_dim() < 2 {
        return Err(Error::DimOutOfRange {
            dim: f.proj_dim(),
            min: 2,
            max: f.ambient_dim() as isize,
        });
    }
    if !f.contains_point(q) {
        return Err(Error::PointNotOnFlat);
    }
    let census = hyperplanes_of(s, f)?;
    Ok(census.flats().filter(|h| h.contains_point(q)).count())
}

/// Census of hyperplanes obtained by joining one spanned hyperplane of the
/// reference hyperplane `p` with one point outside `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceCensus {
    /// L: number of distinct ambient hyperplanes in the family.
    pub family_size: usize,
    /// a_i = |P_i ∩ X| in canonical family order, X the points off `p`.
    pub member_counts: Vec<usize>,
    /// J = sum over the family of C(a_i, 2).
    pub pair_count: usize,
    /// Raw (point of X, spanned hyperplane of p) pairs: |X| * H_S(p).
    pub raw_pairs: usize,
}

/// Builds the family 𝒫 of ambient hyperplanes spanned by one spanned
/// hyperplane of `p` joined with one exterior point, and the double count J.
pub fn pair_plane_census(s: &PointSet, p: &Flat) -> Result<IncidenceCensus> {
    let d = s.ambient_dim();
    if p.proj_dim() != d as isize - 1 {
        return Err(Error::NotHyperplane {
            dim: p.proj_dim(),
            ambient: d,
        });
    }
    let exterior: Vec<&ProjPoint> = s.iter().filter(|q| !p.contains_point(q)).collect();
    if exterior.is_empty() {
        return Err(Error::EmptyExterior);
    }
    let inner = hyperplanes_of(s, p)?;
    let mut family: BTreeSet<Flat> = BTreeSet::new();
    for h in inner.flats() {
        for x in &exterior {
            let plane = h.join(&x.to_flat())?;
            debug_assert_eq!(plane.proj_dim(), d as isize - 1);
            family.insert(plane);
        }
    }
    let member_counts: Vec<usize> = family
        .iter()
        .map(|plane| exterior.iter().filter(|x| plane.contains_point(x)).count())
        .collect();
    let pair_count: usize = member_counts.iter().map(|&a| binomial(a, 2)).sum();
    let raw_pairs = exterior.len() * inner.len();
    let census = IncidenceCensus {
        family_size: family.len(),
        member_counts,
        pair_count,
        raw_pairs,
    };
    // Double-count identities: the raw pair count is |X| * H_S(p) by
    // construction, the per-member counts dominate it, and J is bounded by
    // x^2 n^(d-2) because the line through two exterior points pins down
    // the trace hyperplane inside p.
    assert_eq!(census.raw_pairs, exterior.len() * inner.len());
    let total: usize = census.member_counts.iter().sum();
    assert!(total >= census.raw_pairs);
    let x = exterior.len() as u128;
    let mut bound = x * x;
    for _ in 0..d.saturating_sub(2) {
        bound *= s.len() as u128;
    }
    assert!(census.pair_count as u128 <= bound);
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Scalar};

    fn affine(vals: &[i64]) -> ProjPoint {
        let coords: Vec<Scalar> = vals.iter().map(|&v| int(v)).collect();
        ProjPoint::embed_affine(&coords).unwrap()
    }

    fn set(d: usize, pts: &[&[i64]], label: &str) -> PointSet {
        PointSet::new(d, pts.iter().map(|p| affine(p)).collect(), label).unwrap()
    }

    fn grid_3x3() -> PointSet {
        let mut pts = Vec::new();
        for x in 0..3i64 {
            for y in 0..3i64 {
                pts.push(affine(&[x, y]));
            }
        }
        PointSet::new(2, pts, "grid3x3").unwrap()
    }

    #[test]
    fn collinear_points_span_one_line() {
        let s = set(2, &[&[0, 0], &[1, 1], &[2, 2]], "collinear");
        let census = spanned_flats(&s, 1).unwrap();
        assert_eq!(census.len(), 1);
        assert_eq!(census.iter().next().unwrap().1, 3);
    }

    #[test]
    fn grid_has_twenty_lines() {
        let census = spanned_flats(&grid_3x3(), 1).unwrap();
        assert_eq!(census.len(), 20);
        let hist = census.multiplicity_histogram();
        assert_eq!(hist.get(&3), Some(&8));
        assert_eq!(hist.get(&2), Some(&12));
    }

    #[test]
    fn general_position_planes_are_all_triples() {
        let s = set(
            3,
            &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 2, 4]],
            "gp5",
        );
        let census = spanned_flats(&s, 2).unwrap();
        assert_eq!(census.len(), 10);
        assert!(census.iter().all(|(_, m)| m == 3));
    }

    #[test]
    fn k_out_of_range_rejected() {
        let s = grid_3x3();
        assert!(matches!(
            spanned_flats(&s, 2),
            Err(Error::DimOutOfRange { .. })
        ));
    }

    #[test]
    fn worker_counts_agree() {
        let s = grid_3x3();
        let one = spanned_flats_par(&s, 1, 1).unwrap();
        for workers in [2, 3, 4, 7] {
            assert_eq!(spanned_flats_par(&s, 1, workers).unwrap(), one);
        }
    }

    fn two_skew_lines_10() -> PointSet {
        let mut pts = Vec::new();
        for t in 1..=5i64 {
            pts.push(affine(&[t, 0, 0]));
        }
        for t in 1..=5i64 {
            pts.push(affine(&[t, 1, t + 1]));
        }
        PointSet::new(3, pts, "skew10").unwrap()
    }

    #[test]
    fn skew_lines_span_exactly_n_planes() {
        let s = two_skew_lines_10();
        let ambient = Flat::ambient(3).unwrap();
        assert_eq!(hyperplane_count(&s, &ambient).unwrap(), 10);
        let census = spanned_flats(&s, 2).unwrap();
        assert_eq!(census.max_coverage().unwrap().1, 6);
    }

    #[test]
    fn simplex_spans_four_planes() {
        let s = set(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], "simplex");
        assert_eq!(hyperplane_count(&s, &Flat::ambient(3).unwrap()).unwrap(), 4);
    }

    #[test]
    fn collinear_points_in_a_plane_span_one_line() {
        let s = set(
            3,
            &[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0], &[3, 0, 0]],
            "collinear-in-plane",
        );
        // The plane z = 0.
        let plane = affine(&[0, 0, 0])
            .to_flat()
            .join(&affine(&[1, 0, 0]).to_flat())
            .unwrap()
            .join(&affine(&[0, 1, 0]).to_flat())
            .unwrap();
        assert_eq!(hyperplane_count(&s, &plane).unwrap(), 1);
    }

    #[test]
    fn line_hyperplanes_are_its_points() {
        let s = set(2, &[&[0, 0], &[1, 1], &[2, 2], &[5, 5], &[0, 1]], "line+1");
        let line = affine(&[0, 0]).to_flat().join(&affine(&[1, 1]).to_flat()).unwrap();
        assert_eq!(hyperplane_count(&s, &line).unwrap(), 4);
    }

    #[test]
    fn pencil_through_a_grid_center() {
        let s = grid_3x3();
        let ambient = Flat::ambient(2).unwrap();
        let center = affine(&[1, 1]);
        assert_eq!(hyperplanes_through_point(&s, &ambient, &center).unwrap(), 4);
    }

    #[test]
    fn pencil_through_a_general_position_point() {
        let s = set(2, &[&[0, 0], &[1, 0], &[0, 1], &[2, 3], &[5, 1]], "gp5");
        let ambient = Flat::ambient(2).unwrap();
        assert_eq!(
            hyperplanes_through_point(&s, &ambient, &affine(&[0, 0])).unwrap(),
            4
        );
    }

    #[test]
    fn pencil_off_every_spanned_line_is_empty() {
        let s = set(2, &[&[0, 0], &[1, 0], &[0, 1], &[2, 3]], "gp4");
        let ambient = Flat::ambient(2).unwrap();
        assert_eq!(
            hyperplanes_through_point(&s, &ambient, &affine(&[5, 7])).unwrap(),
            0
        );
    }

    #[test]
    fn pencil_requires_point_on_flat() {
        let s = two_skew_lines_10();
        let census = spanned_flats(&s, 2).unwrap();
        let plane = census.flats().next().unwrap();
        let off = affine(&[100, 100, 1]);
        assert!(!plane.contains_point(&off));
        assert!(matches!(
            hyperplanes_through_point(&s, plane, &off),
            Err(Error::PointNotOnFlat)
        ));
    }

    #[test]
    fn pencil_bound_on_the_skew_config() {
        let s = two_skew_lines_10();
        let census = spanned_flats(&s, 2).unwrap();
        for (plane, m) in census.iter() {
            for q in s.iter().filter(|q| plane.contains_point(q)) {
                let pencil = hyperplanes_through_point(&s, plane, q).unwrap();
                assert!(pencil <= m, "pencil {pencil} exceeds |S ∩ P| = {m}");
            }
        }
    }

    #[test]
    fn single_exterior_point_census() {
        let s = set(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[3, 5, 7]], "plane+1");
        let plane = affine(&[0, 0, 0])
            .to_flat()
            .join(&affine(&[1, 0, 0]).to_flat())
            .unwrap()
            .join(&affine(&[0, 1, 0]).to_flat())
            .unwrap();
        let census = pair_plane_census(&s, &plane).unwrap();
        assert_eq!(census.family_size, 3);
        assert_eq!(census.member_counts, vec![1, 1, 1]);
        assert_eq!(census.pair_count, 0);
        assert_eq!(census.raw_pairs, 3);
    }

    #[test]
    fn exterior_required() {
        let s = set(2, &[&[0, 0], &[1, 0], &[0, 1]], "tri");
        let line = affine(&[0, 0]).to_flat().join(&affine(&[1, 0]).to_flat()).unwrap();
        let s_on_line = set(2, &[&[0, 0], &[1, 0], &[2, 0]], "on-line");
        assert!(matches!(
            pair_plane_census(&s_on_line, &line),
            Err(Error::EmptyExterior)
        ));
        assert!(pair_plane_census(&s, &line).is_ok());
    }

    #[test]
    fn skew_config_pair_census_bounds() {
        let s = two_skew_lines_10();
        let census_planes = spanned_flats(&s, 2).unwrap();
        let (p, m) = census_planes.max_coverage().unwrap();
        assert_eq!(m, 6);
        let census = pair_plane_census(&s, p).unwrap();
        // 6 spanned lines inside p, 4 exterior points.
        assert_eq!(census.raw_pairs, 24);
        assert!(census.pair_count <= 4 * 4 * 10);
    }

    #[test]
    fn full_rank_subsets_lie_in_exactly_one_hyperplane() {
        let s = set(
            3,
            &[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0], &[0, 1, 0], &[1, 1, 1], &[2, 3, 4]],
            "mixed",
        );
        let census = spanned_flats(&s, 2).unwrap();
        for subset in k_subsets(s.len(), 3) {
            let rows: Vec<Vec<Scalar>> = subset
                .iter()
                .map(|&i| s.points()[i].coords().to_vec())
                .collect();
            let span = Flat::from_generators(3, rows).unwrap();
            if span.proj_dim() == 2 {
                let hosts = census
                    .flats()
                    .filter(|h| subset.iter().all(|&i| h.contains_point(&s.points()[i])))
                    .count();
                assert_eq!(hosts, 1);
            }
        }
    }

    #[test]
    fn adding_a_point_never_decreases_the_count() {
        let base = set(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], "base");
        let ambient = Flat::ambient(3).unwrap();
        let before = hyperplane_count(&base, &ambient).unwrap();
        for extra in [&[1i64, 1, 1], &[2, 0, 0], &[1, 2, 3]] {
            let mut pts: Vec<ProjPoint> = base.iter().cloned().collect();
            pts.push(affine(extra));
            let bigger = PointSet::new(3, pts, "base+1").unwrap();
            assert!(hyperplane_count(&bigger, &ambient).unwrap() >= before);
        }
    }
}
