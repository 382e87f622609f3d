//! Seeded generators for the named point configurations.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flat::{join_all, Flat};
use crate::linalg::rank_of;
use crate::point::{PointSet, ProjPoint};
use crate::scalar::{int, Scalar};
use crate::structure::FlatCollection;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatSpec {
    pub dim: usize,
    pub count: usize,
}

/// Declarative configuration specs, read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConfigSpec {
    /// n points with every (d+1)-subset of full lift rank, found by
    /// rejection sampling over an integer lattice with exact rank checks.
    GeneralPosition { n: usize, d: usize, seed: u64 },
    /// ceil(n/2) points on the x-axis and floor(n/2) on a fixed skew line
    /// in R^3; fully deterministic.
    TwoSkewLines { n: usize },
    /// One ruling line per entry of `counts` on the quadric z = x y, which
    /// makes the lines pairwise skew; `counts[i]` points on line i.
    SkewLineFamily { counts: Vec<usize> },
    /// Prescribed point counts on random flats of prescribed dimensions,
    /// plus generic points off their union.
    FlatCluster {
        d: usize,
        flats: Vec<FlatSpec>,
        outliers: usize,
        seed: u64,
    },
    /// The integer lattice cube {0, ..., m-1}^d.
    Grid { m: usize, d: usize },
}

impl ConfigSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidSpec(msg));
        match self {
            ConfigSpec::GeneralPosition { n, d, .. } => {
                if *d < 2 {
                    return fail(format!("general_position: d = {d} must be at least 2"));
                }
                if *n < 1 {
                    return fail("general_position: n must be positive".into());
                }
            }
            ConfigSpec::TwoSkewLines { n } => {
                if *n < 4 {
                    return fail(format!("two_skew_lines: n = {n} must be at least 4"));
                }
            }
            ConfigSpec::SkewLineFamily { counts } => {
                if counts.len() < 2 {
                    return fail("skew_line_family: need at least 2 lines".into());
                }
                if counts.iter().any(|&c| c < 1) {
                    return fail("skew_line_family: every line needs at least 1 point".into());
                }
            }
            ConfigSpec::FlatCluster { d, flats, .. } => {
                if *d < 2 {
                    return fail(format!("flat_cluster: d = {d} must be at least 2"));
                }
                if flats.is_empty() {
                    return fail("flat_cluster: need at least one flat".into());
                }
                let dim_sum: usize = flats.iter().map(|f| f.dim).sum();
                if flats.iter().any(|f| f.dim < 1 || f.dim >= *d) {
                    return fail("flat_cluster: every dim must lie in [1, d)".into());
                }
                if dim_sum >= *d {
                    return fail(format!(
                        "flat_cluster: dimension sum {dim_sum} must be below d = {d}"
                    ));
                }
            }
            ConfigSpec::Grid { m, d } => {
                if *m < 2 || *d < 2 {
                    return fail(format!("grid: m = {m} and d = {d} must be at least 2"));
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match self {
            ConfigSpec::GeneralPosition { n, d, seed } => {
                format!("general_position(n={n},d={d},seed={seed})")
            }
            ConfigSpec::TwoSkewLines { n } => format!("two_skew_lines(n={n})"),
            ConfigSpec::SkewLineFamily { counts } => {
                format!("skew_line_family(counts={counts:?})")
            }
            ConfigSpec::FlatCluster {
                d,
                flats,
                outliers,
                seed,
            } => {
                let parts: Vec<String> = flats
                    .iter()
                    .map(|f| format!("{}x{}", f.dim, f.count))
                    .collect();
                format!(
                    "flat_cluster(d={d},flats=[{}],outliers={outliers},seed={seed})",
                    parts.join(",")
                )
            }
            ConfigSpec::Grid { m, d } => format!("grid(m={m},d={d})"),
        }
    }
}

/// A generated configuration together with its ground-truth flats, when the
/// kind has one (cluster flats, skew lines). The witness feeds the bound
/// checks that need a declared collection.
#[derive(Clone, Debug)]
pub struct GeneratedSet {
    pub points: PointSet,
    pub witness: Option<FlatCollection>,
}

pub fn generate(spec: &ConfigSpec) -> Result<PointSet> {
    Ok(generate_with_witness(spec)?.points)
}

pub fn generate_with_witness(spec: &ConfigSpec) -> Result<GeneratedSet> {
    spec.validate()?;
    match spec {
        ConfigSpec::GeneralPosition { n, d, seed } => general_position(*n, *d, *seed, spec),
        ConfigSpec::TwoSkewLines { n } => two_skew_lines(*n, spec),
        ConfigSpec::SkewLineFamily { counts } => skew_line_family(counts, spec),
        ConfigSpec::FlatCluster {
            d,
            flats,
            outliers,
            seed,
        } => flat_cluster(*d, flats, *outliers, *seed, spec),
        ConfigSpec::Grid { m, d } => grid(*m, *d, spec),
    }
}

fn affine_point(coords: &[i64]) -> ProjPoint {
    let scalars: Vec<Scalar> = coords.iter().map(|&v| int(v)).collect();
    ProjPoint::embed_affine(&scalars).expect("generator coordinates have length d >= 2")
}

fn general_position(n: usize, d: usize, seed: u64, spec: &ConfigSpec) -> Result<GeneratedSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = (10 * (n + d) as i64).max(100);
    let mut points: Vec<ProjPoint> = Vec::with_capacity(n);
    let budget = 400 * n.max(1);
    let mut attempts = 0usize;
    while points.len() < n {
        attempts += 1;
        if attempts > budget {
            return Err(Error::RejectionBudgetExhausted(spec.label()));
        }
        let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(-range..=range)).collect();
        let cand = affine_point(&coords);
        if points.contains(&cand) {
            continue;
        }
        if !keeps_general_position(&points, &cand, d) {
            continue;
        }
        points.push(cand);
    }
    Ok(GeneratedSet {
        points: PointSet::new(d, points, spec.label())?,
        witness: None,
    })
}

/// Every (d+1)-subset including the candidate must have full lift rank.
fn keeps_general_position(points: &[ProjPoint], cand: &ProjPoint, d: usize) -> bool {
    if points.len() < d {
        // Any subset this small is independent exactly when all subsets of
        // the full set with the candidate are, so check the whole set.
        let mut rows: Vec<Vec<Scalar>> = points.iter().map(|p| p.coords().to_vec()).collect();
        rows.push(cand.coords().to_vec());
        return rank_of(&rows) == rows.len();
    }
    for subset in crate::census::k_subsets(points.len(), d) {
        let mut rows: Vec<Vec<Scalar>> = subset
            .iter()
            .map(|&i| points[i].coords().to_vec())
            .collect();
        rows.push(cand.coords().to_vec());
        if rank_of(&rows) != d + 1 {
            return false;
        }
    }
    true
}

fn two_skew_lines(n: usize, spec: &ConfigSpec) -> Result<GeneratedSet> {
    let first = n.div_ceil(2);
    let second = n / 2;
    let mut points = Vec::with_capacity(n);
    for t in 1..=first as i64 {
        points.push(affine_point(&[t, 0, 0]));
    }
    for t in 1..=second as i64 {
        points.push(affine_point(&[t, 1, t + 1]));
    }
    let l1 = line_through(&[1, 0, 0], &[2, 0, 0]);
    let l2 = line_through(&[1, 1, 2], &[2, 1, 3]);
    assert!(l1.meet(&l2)?.is_empty(), "generator lines must be skew");
    assert!(l1.join(&l2)?.is_ambient());
    Ok(GeneratedSet {
        points: PointSet::new(3, points, spec.label())?,
        witness: Some(FlatCollection::new(3, vec![l1, l2])?),
    })
}

fn line_through(a: &[i64], b: &[i64]) -> Flat {
    affine_point(a)
        .to_flat()
        .join(&affine_point(b).to_flat())
        .expect("same ambient dimension")
}

fn skew_line_family(counts: &[usize], spec: &ConfigSpec) -> Result<GeneratedSet> {
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for (i, &m) in counts.iter().enumerate() {
        let t = i as i64 + 1;
        for sv in 1..=m as i64 {
            points.push(affine_point(&[t, sv, t * sv]));
        }
        lines.push(line_through(&[t, 1, t], &[t, 2, 2 * t]));
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            assert!(
                lines[i].meet(&lines[j])?.is_empty(),
                "quadric rulings must be pairwise skew"
            );
        }
    }
    Ok(GeneratedSet {
        points: PointSet::new(3, points, spec.label())?,
        witness: Some(FlatCollection::new(3, lines)?),
    })
}

fn flat_cluster(
    d: usize,
    specs: &[FlatSpec],
    outliers: usize,
    seed: u64,
    spec: &ConfigSpec,
) -> Result<GeneratedSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = 20i64;
    let budget = 2000usize;
    let mut flats: Vec<Flat> = Vec::new();
    let mut anchors: Vec<Vec<ProjPoint>> = Vec::new();
    for fs in specs {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > budget {
                return Err(Error::RejectionBudgetExhausted(spec.label()));
            }
            let sample: Vec<ProjPoint> = (0..=fs.dim)
                .map(|_| {
                    let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(-range..=range)).collect();
                    affine_point(&coords)
                })
                .collect();
            let flat = join_all(d, &sample.iter().map(ProjPoint::to_flat).collect::<Vec<_>>())?;
            if flat.proj_dim() == fs.dim as isize {
                flats.push(flat);
                anchors.push(sample);
                break;
            }
        }
    }
    let mut points: Vec<ProjPoint> = Vec::new();
    for (fs, sample) in specs.iter().zip(&anchors) {
        let mut placed = 0usize;
        let mut attempts = 0usize;
        while placed < fs.count {
            attempts += 1;
            if attempts > budget {
                return Err(Error::RejectionBudgetExhausted(spec.label()));
            }
            // Random lift combination of the anchor points; the leading
            // coordinate is the coefficient sum, nonzero keeps it affine.
            let coeffs: Vec<i64> = (0..sample.len()).map(|_| rng.gen_range(-9..=9)).collect();
            if coeffs.iter().sum::<i64>() == 0 {
                continue;
            }
            let width = d + 1;
            let mut lift = vec![Scalar::default(); width];
            for (c, p) in coeffs.iter().zip(sample) {
                for (axis, value) in lift.iter_mut().zip(p.coords()) {
                    *axis += int(*c) * value;
                }
            }
            let cand = ProjPoint::new(lift)?;
            if points.contains(&cand) {
                continue;
            }
            points.push(cand);
            placed += 1;
        }
    }
    let mut placed = 0usize;
    let mut attempts = 0usize;
    while placed < outliers {
        attempts += 1;
        if attempts > budget {
            return Err(Error::RejectionBudgetExhausted(spec.label()));
        }
        let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(-range..=range)).collect();
        let cand = affine_point(&coords);
        if points.contains(&cand) || flats.iter().any(|f| f.contains_point(&cand)) {
            continue;
        }
        points.push(cand);
        placed += 1;
    }
    Ok(GeneratedSet {
        points: PointSet::new(d, points, spec.label())?,
        witness: Some(FlatCollection::new(d, flats)?),
    })
}

fn grid(m: usize, d: usize, spec: &ConfigSpec) -> Result<GeneratedSet> {
    let mut points = Vec::with_capacity(m.pow(d as u32));
    let mut coords = vec![0i64; d];
    loop {
        points.push(affine_point(&coords));
        let mut axis = 0;
        loop {
            if axis == d {
                return Ok(GeneratedSet {
                    points: PointSet::new(d, points, spec.label())?,
                    witness: None,
                });
            }
            coords[axis] += 1;
            if coords[axis] < m as i64 {
                break;
            }
            coords[axis] = 0;
            axis += 1;
        }
    }
}
