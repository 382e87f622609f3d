//! Richness, saturation, and degeneracy predicates; descent to rich
//! saturated flats; good collections and merging; and the cluster/saturated
//! dichotomy.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::census::{hyperplane_count, hyperplanes_of, k_subsets, spanned_flats};
use crate::error::{Error, Result};
use crate::flat::{join_all, Flat};
use crate::point::{PointSet, ProjPoint};
use crate::scalar::{count, count_pow, frac, Scalar};

/// All the tunable constants of the structure detectors. The existence
/// theorems behind the descent leave their constants open, so they are
/// explicit inputs here, echoed into every report. Per-dimension maps fall
/// back to defaults: beck_beta(m) = 1/(2(m-1)), sat_gamma(m) = 1/(2 m!),
/// which keeps full-dimensional general position saturated at any size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawThresholdConfig", into = "RawThresholdConfig")]
pub struct ThresholdConfig {
    /// Cluster coverage fraction in (0, 1).
    pub beta: Scalar,
    /// Richness fraction in (0, 1].
    pub rich_c: Scalar,
    /// Per-dimension overrides for the descent coverage fraction.
    pub beck_beta: BTreeMap<usize, Scalar>,
    /// Per-dimension saturation constants guaranteed by the descent
    /// alternative (echoed in reports, not used in any decision).
    pub beck_gamma: BTreeMap<usize, Scalar>,
    /// Per-dimension overrides for the saturation constant.
    pub sat_gamma: BTreeMap<usize, Scalar>,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig {
            beta: frac(4, 5),
            rich_c: frac(1, 10),
            beck_beta: BTreeMap::new(),
            beck_gamma: BTreeMap::new(),
            sat_gamma: BTreeMap::new(),
        }
    }
}

impl ThresholdConfig {
    /// Coverage fraction required to descend into a hyperplane of an
    /// m-dimensional flat.
    pub fn beck_beta_for(&self, m: usize) -> Scalar {
        if let Some(v) = self.beck_beta.get(&m) {
            return v.clone();
        }
        frac(1, 2 * (m.max(2) as i64 - 1))
    }

    /// Saturation constant for m-dimensional flats.
    pub fn sat_gamma_for(&self, m: usize) -> Scalar {
        if let Some(v) = self.sat_gamma.get(&m) {
            return v.clone();
        }
        let mut factorial: i64 = 1;
        for i in 2..=m.min(20) as i64 {
            factorial *= i;
        }
        frac(1, 2 * factorial)
    }

    /// Echo-only constant for the descent alternative.
    pub fn beck_gamma_for(&self, m: usize) -> Scalar {
        self.beck_gamma
            .get(&m)
            .cloned()
            .unwrap_or_else(|| self.sat_gamma_for(m))
    }

    pub fn validate(&self) -> Result<()> {
        let one = Scalar::one();
        if self.beta <= Scalar::zero() || self.beta >= one {
            return Err(Error::InvalidThresholds(format!(
                "beta = {} must lie in (0, 1)",
                self.beta
            )));
        }
        if self.rich_c <= Scalar::zero() || self.rich_c > one {
            return Err(Error::InvalidThresholds(format!(
                "rich_c = {} must lie in (0, 1]",
                self.rich_c
            )));
        }
        for (m, v) in &self.beck_beta {
            if *v <= Scalar::zero() || *v >= one {
                return Err(Error::InvalidThresholds(format!(
                    "beck_beta[{m}] = {v} must lie in (0, 1)"
                )));
            }
        }
        for (m, v) in self.beck_gamma.iter().chain(self.sat_gamma.iter()) {
            if *v <= Scalar::zero() {
                return Err(Error::InvalidThresholds(format!(
                    "gamma[{m}] = {v} must be positive"
                )));
            }
        }
        Ok(())
    }

    /// Resolved per-dimension values for 1..=d, for reproducible reports.
    pub fn resolved(&self, d: usize) -> BTreeMap<usize, (Scalar, Scalar)> {
        (1..=d)
            .map(|m| (m, (self.beck_beta_for(m), self.sat_gamma_for(m))))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct RawThresholdConfig {
    #[serde(default)]
    beta: Option<String>,
    #[serde(default)]
    rich_c: Option<String>,
    #[serde(default)]
    beck_beta: BTreeMap<usize, String>,
    #[serde(default)]
    beck_gamma: BTreeMap<usize, String>,
    #[serde(default)]
    sat_gamma: BTreeMap<usize, String>,
}

impl TryFrom<RawThresholdConfig> for ThresholdConfig {
    type Error = Error;

    fn try_from(raw: RawThresholdConfig) -> Result<Self> {
        let defaults = ThresholdConfig::default();
        let parse_map = |m: BTreeMap<usize, String>| -> Result<BTreeMap<usize, Scalar>> {
            m.into_iter()
                .map(|(k, v)| Ok((k, crate::scalar::parse_rational(&v)?)))
                .collect()
        };
        let cfg = ThresholdConfig {
            beta: match raw.beta {
                Some(s) => crate::scalar::parse_rational(&s)?,
                None => defaults.beta,
            },
            rich_c: match raw.rich_c {
                Some(s) => crate::scalar::parse_rational(&s)?,
                None => defaults.rich_c,
            },
            beck_beta: parse_map(raw.beck_beta)?,
            beck_gamma: parse_map(raw.beck_gamma)?,
            sat_gamma: parse_map(raw.sat_gamma)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl From<ThresholdConfig> for RawThresholdConfig {
    fn from(cfg: ThresholdConfig) -> Self {
        let to_strings = |m: &BTreeMap<usize, Scalar>| {
            m.iter().map(|(k, v)| (*k, v.to_string())).collect()
        };
        RawThresholdConfig {
            beta: Some(cfg.beta.to_string()),
            rich_c: Some(cfg.rich_c.to_string()),
            beck_beta: to_strings(&cfg.beck_beta),
            beck_gamma: to_strings(&cfg.beck_gamma),
            sat_gamma: to_strings(&cfg.sat_gamma),
        }
    }
}

/// An ordered collection of proper nonempty flats sharing one ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FlatCollection {
    flats: Vec<Flat>,
}

impl FlatCollection {
    pub fn new(ambient_dim: usize, flats: Vec<Flat>) -> Result<Self> {
        if flats.is_empty() {
            return Err(Error::InvalidCollection("no flats".into()));
        }
        for f in &flats {
            if f.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: f.ambient_dim(),
                });
            }
            if f.is_empty() {
                return Err(Error::InvalidCollection("contains the empty flat".into()));
            }
            if f.is_ambient() {
                return Err(Error::InvalidCollection("contains the ambient space".into()));
            }
        }
        Ok(FlatCollection { flats })
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.flats[0].ambient_dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.flats.iter().map(|f| f.proj_dim() as usize).collect()
    }

    pub fn dim_sum(&self) -> usize {
        self.flats.iter().map(|f| f.proj_dim() as usize).sum()
    }

    pub fn into_flats(self) -> Vec<Flat> {
        self.flats
    }

    /// Join of the flats at the given indices.
    pub fn join_of(&self, indices: &[usize]) -> Result<Flat> {
        join_all(self.ambient_dim(), indices.iter().map(|&i| &self.flats[i]))
    }

    /// Number of points of `s` on the union of the flats.
    pub fn covered_count(&self, s: &PointSet) -> usize {
        s.iter()
            .filter(|p| self.flats.iter().any(|f| f.contains_point(p)))
            .count()
    }
}

impl<'de> Deserialize<'de> for FlatCollection {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let flats = Vec::<Flat>::deserialize(deserializer)?;
        let Some(first) = flats.first() else {
            return Err(D::Error::custom("a flat collection needs at least one flat"));
        };
        FlatCollection::new(first.ambient_dim(), flats).map_err(D::Error::custom)
    }
}

/// True when `f` contains at least `c * |S|` points of `s`.
pub fn is_rich(s: &PointSet, f: &Flat, c: &Scalar) -> bool {
    debug_assert!(!f.is_empty());
    count(s.count_on(f)) >= c * count(s.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationVerdict {
    pub saturated: bool,
    /// The exact hyperplane count H_S(F).
    pub h: usize,
    /// gamma * |F ∩ S|^(dim F).
    pub threshold: Scalar,
}

/// Saturation test: H_S(F) >= gamma * |F ∩ S|^(dim F).
pub fn is_saturated(s: &PointSet, f: &Flat, gamma: &Scalar) -> Result<SaturationVerdict> {
    if f.proj_dim() < 1 {
        return Err(Error::DimOutOfRange {
            dim: f.proj_dim(),
            min: 1,
            max: f.ambient_dim() as isize,
        });
    }
    let restricted = s.restrict_to(f);
    let dim = f.proj_dim() as usize;
    if restricted.lift_rank() != dim + 1 {
        return Err(Error::NotSpanned);
    }
    let h = hyperplane_count(s, f)?;
    let threshold = gamma * count_pow(restricted.len(), dim);
    Ok(SaturationVerdict {
        saturated: count(h) >= threshold,
        h,
        threshold,
    })
}

/// The spanned hyperplane of `f` with the most points of `s`, ties broken
/// by canonical flat order, together with its coverage.
pub fn max_coverage_hyperplane(s: &PointSet, f: &Flat) -> Result<(Flat, usize)> {
    if f.proj_dim() < 2 {
        return Err(Error::DimOutOfRange {
            dim: f.proj_dim(),
            min: 2,
            max: f.ambient_dim() as isize,
        });
    }
    let restricted = s.restrict_to(f);
    if restricted.lift_rank() != f.proj_dim() as usize + 1 {
        return Err(Error::NotSpanned);
    }
    let census = hyperplanes_of(s, f)?;
    let (flat, coverage) = census
        .max_coverage()
        .expect("a spanned flat has spanned hyperplanes");
    Ok((flat.clone(), coverage))
}

/// Result of the repeated descent into maximum-coverage hyperplanes.
#[derive(Clone, Debug)]
pub struct DescentResult {
    /// The rich saturated flat the descent stopped at.
    pub flat: Flat,
    /// True when the stop was forced by the coverage alternative rather
    /// than a saturation verdict (lines also count as saturated).
    pub saturated_by_beck: bool,
    /// Flats visited, outermost first, ending at `flat`.
    pub path: Vec<Flat>,
}

/// Repeatedly replaces the current flat by its maximum-coverage spanned
/// hyperplane until a saturated flat is reached. If the points of `s` on
/// `start` span only a smaller flat, the descent snaps to that span first.
/// Lines terminate the descent unconditionally.
pub fn beck_descent(s: &PointSet, start: &Flat, cfg: &ThresholdConfig) -> Result<DescentResult> {
    cfg.validate()?;
    let on_start = s.restrict_to(start);
    if on_start.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            found: on_start.len(),
        });
    }
    let mut path = vec![start.clone()];
    let mut current = start.clone();
    let span = on_start.span();
    if &span != start {
        current = span;
        path.push(current.clone());
    }
    loop {
        let m = current.proj_dim() as usize;
        if m == 1 {
            return Ok(DescentResult {
                flat: current,
                saturated_by_beck: false,
                path,
            });
        }
        let verdict = is_saturated(s, &current, &cfg.sat_gamma_for(m))?;
        if verdict.saturated {
            return Ok(DescentResult {
                flat: current,
                saturated_by_beck: false,
                path,
            });
        }
        let points_here = s.count_on(&current);
        let (hyperplane, coverage) = max_coverage_hyperplane(s, &current)?;
        if count(coverage) >= cfg.beck_beta_for(m) * count(points_here) {
            current = hyperplane;
            path.push(current.clone());
        } else {
            // No hyperplane is rich enough to descend into; the coverage
            // alternative guarantees saturation at valid thresholds.
            return Ok(DescentResult {
                flat: current,
                saturated_by_beck: true,
                path,
            });
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodVerdict {
    pub good: bool,
    /// The join of the whole collection is the ambient space and the
    /// dimension sum is at least d.
    pub spans_ambient: bool,
    /// Minimal violating proper subset (smallest cardinality, then
    /// lexicographic), 0-based, if any.
    pub bad_subset: Option<Vec<usize>>,
}

/// Good-collection check: the whole collection joins to the ambient space
/// with dimension sum at least d, while every proper subfamily's join has
/// dimension at least the sum of its members' dimensions.
pub fn check_good_collection(c: &FlatCollection) -> Result<GoodVerdict> {
    let d = c.ambient_dim();
    let k = c.len();
    let dims = c.dims();
    let full = c.join_of(&(0..k).collect::<Vec<_>>())?;
    let spans_ambient = full.is_ambient() && c.dim_sum() >= d;
    let mut bad_subset = None;
    'search: for size in 2..k {
        for subset in k_subsets(k, size) {
            let join = c.join_of(&subset)?;
            let needed: usize = subset.iter().map(|&i| dims[i]).sum();
            if (join.proj_dim() as usize) < needed {
                bad_subset = Some(subset);
                break 'search;
            }
        }
    }
    Ok(GoodVerdict {
        good: spans_ambient && bad_subset.is_none(),
        spans_ambient,
        bad_subset,
    })
}

/// Replaces the flats at the violating indices by their join. The result
/// has a strictly smaller dimension sum.
pub fn merge_bad_subset(c: &FlatCollection, indices: &[usize]) -> Result<FlatCollection> {
    let k = c.len();
    if indices.len() < 2
        || indices.iter().any(|&i| i >= k)
        || indices.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::InvalidCollection(format!(
            "merge indices {indices:?} must be sorted, distinct, and at least two"
        )));
    }
    let joined = c.join_of(indices)?;
    let removed_sum: usize = indices.iter().map(|&i| c.flats()[i].proj_dim() as usize).sum();
    if joined.proj_dim() as usize >= removed_sum {
        return Err(Error::NotViolating);
    }
    if joined.is_ambient() {
        return Err(Error::MergeWouldBeAmbient);
    }
    let mut flats: Vec<Flat> = c
        .flats()
        .iter()
        .enumerate()
        .filter(|(i, _)| !indices.contains(i))
        .map(|(_, f)| f.clone())
        .collect();
    flats.push(joined);
    let merged = FlatCollection::new(c.ambient_dim(), flats)?;
    assert!(merged.dim_sum() < c.dim_sum());
    Ok(merged)
}

/// One step of the dichotomy loop, for reproducible traces.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    Descent {
        path_dims: Vec<isize>,
        flat: Flat,
        points_on_flat: usize,
        saturated_by_beck: bool,
    },
    AddFlat {
        flat: Flat,
        covered_after: usize,
    },
    Merge {
        indices: Vec<usize>,
        dim_sum_before: usize,
        dim_sum_after: usize,
    },
    SaturatedByGoodCollection {
        dim_sum: usize,
    },
    SaturatedBySubsetSpan {
        indices: Vec<usize>,
    },
    SaturatedByAmbientDescent,
    /// Too few uncovered points remain to extract another flat, so the
    /// exhaustive count decides.
    SaturatedFallback {
        covered: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DichotomyOutcome {
    /// A collection with dimension sum below d covering at least beta * n
    /// points.
    Cluster {
        collection: FlatCollection,
        covered: usize,
    },
    /// The space itself: the exhaustive spanned-hyperplane count and the
    /// measured ratio H / n^d.
    Saturated {
        hyperplane_count: usize,
        #[serde(with = "crate::scalar::serde_string")]
        empirical_gamma: Scalar,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyResult {
    pub outcome: DichotomyOutcome,
    pub trace: Vec<TraceStep>,
}

/// The dichotomy loop: repeatedly extract a rich saturated flat from the
/// points not yet covered, merging violating subfamilies after every
/// addition, until either a small-dimension cluster covers a beta fraction
/// of the points or the space is declared saturated with its exact count.
pub fn decompose(s: &PointSet, cfg: &ThresholdConfig) -> Result<DichotomyResult> {
    cfg.validate()?;
    let d = s.ambient_dim();
    let n = s.len();
    if n < d + 1 {
        return Err(Error::TooFewPoints {
            needed: d + 1,
            found: n,
        });
    }
    let ambient = Flat::ambient(d)?;
    let mut flats: Vec<Flat> = Vec::new();
    let mut trace: Vec<TraceStep> = Vec::new();

    let saturated = |trace: Vec<TraceStep>| -> Result<DichotomyResult> {
        let h = hyperplane_count(s, &ambient)?;
        Ok(DichotomyResult {
            outcome: DichotomyOutcome::Saturated {
                hyperplane_count: h,
                empirical_gamma: count(h) / count_pow(n, d),
            },
            trace,
        })
    };

    loop {
        // Merge phase: collapse violating subfamilies until none remain.
        while flats.len() >= 2 {
            let coll = FlatCollection::new(d, flats.clone())?;
            let verdict = check_good_collection(&coll)?;
            let Some(bad) = verdict.bad_subset else { break };
            let joined = coll.join_of(&bad)?;
            if joined.is_ambient() {
                // A subfamily already spans the space; by the recursion on
                // its dimension the space is saturated.
                trace.push(TraceStep::SaturatedBySubsetSpan { indices: bad });
                return saturated(trace);
            }
            let before = coll.dim_sum();
            let merged = merge_bad_subset(&coll, &bad)?;
            trace.push(TraceStep::Merge {
                indices: bad,
                dim_sum_before: before,
                dim_sum_after: merged.dim_sum(),
            });
            flats = merged.into_flats();
        }

        let dim_sum: usize = flats.iter().map(|f| f.proj_dim() as usize).sum();
        if dim_sum >= d {
            let full = join_all(d, flats.iter())?;
            if full.is_ambient() {
                // No violating proper subfamily, full span, dim sum >= d:
                // a good collection certifies saturation.
                trace.push(TraceStep::SaturatedByGoodCollection { dim_sum });
                return saturated(trace);
            }
            // The whole family joins below the ambient space while its
            // dimension sum is at least d, so merging it all strictly
            // decreases the sum.
            let coll = FlatCollection::new(d, flats.clone())?;
            let all: Vec<usize> = (0..flats.len()).collect();
            let merged = merge_bad_subset(&coll, &all)?;
            trace.push(TraceStep::Merge {
                indices: all,
                dim_sum_before: dim_sum,
                dim_sum_after: merged.dim_sum(),
            });
            flats = merged.into_flats();
            continue;
        }

        let covered: Vec<&ProjPoint> = s
            .iter()
            .filter(|p| flats.iter().any(|f| f.contains_point(p)))
            .collect();
        if count(covered.len()) >= &cfg.beta * count(n) && !flats.is_empty() {
            return Ok(DichotomyResult {
                outcome: DichotomyOutcome::Cluster {
                    collection: FlatCollection::new(d, flats)?,
                    covered: covered.len(),
                },
                trace,
            });
        }
        let uncovered: Vec<ProjPoint> = s
            .iter()
            .filter(|p| !flats.iter().any(|f| f.contains_point(p)))
            .cloned()
            .collect();
        if uncovered.len() < 2 {
            // The dichotomy cannot make progress at this scale; decide by
            // the exhaustive count.
            trace.push(TraceStep::SaturatedFallback {
                covered: covered.len(),
            });
            return saturated(trace);
        }
        let sub = PointSet::new(d, uncovered, s.label())?;
        let descent = beck_descent(&sub, &ambient, cfg)?;
        trace.push(TraceStep::Descent {
            path_dims: descent.path.iter().map(Flat::proj_dim).collect(),
            flat: descent.flat.clone(),
            points_on_flat: sub.count_on(&descent.flat),
            saturated_by_beck: descent.saturated_by_beck,
        });
        if descent.flat.is_ambient() {
            trace.push(TraceStep::SaturatedByAmbientDescent);
            return saturated(trace);
        }
        flats.push(descent.flat.clone());
        let covered_after = s
            .iter()
            .filter(|p| flats.iter().any(|f| f.contains_point(p)))
            .count();
        trace.push(TraceStep::AddFlat {
            flat: descent.flat,
            covered_after,
        });
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegeneracyVariant {
    /// Degenerate when no single sub-hyperplane holds more than an alpha
    /// fraction of the flat's points.
    Classic,
    /// Degenerate when no union of spanned sub-flats with dimension sum
    /// below the flat's dimension holds more than an alpha fraction.
    FlatCollection,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerateEntry {
    pub flat: Flat,
    pub points: usize,
    pub degenerate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerateCensus {
    pub entries: Vec<DegenerateEntry>,
    pub degenerate_count: usize,
    /// degenerate_count / (n^d k^-(d+1) + n^(d-1) k^-(d-1)), exact.
    #[serde(with = "crate::scalar::serde_string")]
    pub bound_ratio: Scalar,
}

/// Cap on the sub-flat census size for the exact flat-collection search.
pub const SUBFLAT_CAP: usize = 2000;

/// Enumerates the spanned hyperplanes with at least `k` points and decides
/// alpha-degeneracy for each under the chosen variant.
pub fn degenerate_hyperplane_census(
    s: &PointSet,
    k: usize,
    alpha: &Scalar,
    variant: DegeneracyVariant,
) -> Result<DegenerateCensus> {
    let d = s.ambient_dim();
    let n = s.len();
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if *alpha <= Scalar::zero() || *alpha > Scalar::one() {
        return Err(Error::InvalidThresholds(format!(
            "alpha = {alpha} must lie in (0, 1]"
        )));
    }
    let hyperplanes = spanned_flats(s, d - 1)?;
    let mut entries = Vec::new();
    for (flat, m) in hyperplanes.iter() {
        if m < k {
            continue;
        }
        let max_cov = match variant {
            DegeneracyVariant::Classic => hyperplanes_of(s, flat)?
                .max_coverage()
                .map(|(_, c)| c)
                .unwrap_or(0),
            DegeneracyVariant::FlatCollection => {
                flat_collection_max_coverage(&s.restrict_to(flat), flat)?
            }
        };
        entries.push(DegenerateEntry {
            flat: flat.clone(),
            points: m,
            degenerate: count(max_cov) <= alpha * count(m),
        });
    }
    let degenerate_count = entries.iter().filter(|e| e.degenerate).count();
    let bound = count_pow(n, d) / count_pow(k, d + 1) + count_pow(n, d - 1) / count_pow(k, d - 1);
    Ok(DegenerateCensus {
        entries,
        degenerate_count,
        bound_ratio: count(degenerate_count) / bound,
    })
}

/// Maximum number of points of `restricted` covered by a union of spanned
/// sub-flats of `f` (each of dimension at least 1) whose dimension sum is
/// strictly below dim f. Exact branch-and-bound over the sub-flat census.
fn flat_collection_max_coverage(restricted: &PointSet, f: &Flat) -> Result<usize> {
    let r = f.proj_dim() as usize;
    let budget = r - 1; // sum of dims must stay <= r - 1
    let mut candidates: Vec<(usize, Vec<bool>)> = Vec::new();
    for dim in 1..r {
        if restricted.len() < dim + 1 {
            continue;
        }
        let census = spanned_flats(restricted, dim)?;
        for sub in census.flats() {
            let mask: Vec<bool> = restricted.iter().map(|p| sub.contains_point(p)).collect();
            candidates.push((dim, mask));
            if candidates.len() > SUBFLAT_CAP {
                return Err(Error::SubflatBudgetExceeded {
                    count: candidates.len(),
                    cap: SUBFLAT_CAP,
                });
            }
        }
    }
    // Most points first, so the greedy bound prunes early.
    candidates.sort_by_key(|(_, mask)| std::cmp::Reverse(mask.iter().filter(|&&b| b).count()));
    let coverages: Vec<usize> = candidates
        .iter()
        .map(|(_, mask)| mask.iter().filter(|&&b| b).count())
        .collect();
    let mut best = 0usize;
    fn search(
        candidates: &[(usize, Vec<bool>)],
        coverages: &[usize],
        start: usize,
        budget: usize,
        mask: &mut Vec<bool>,
        covered: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(covered);
        if budget == 0 || start >= candidates.len() {
            return;
        }
        // Optimistic bound: the best remaining coverage once per unit of
        // remaining dimension budget.
        if covered + budget * coverages[start..].iter().copied().max().unwrap_or(0) <= *best {
            return;
        }
        for i in start..candidates.len() {
            let (dim, cand_mask) = &candidates[i];
            if *dim > budget {
                continue;
            }
            let mut gained = 0usize;
            let mut touched = Vec::new();
            for (j, &covered_here) in cand_mask.iter().enumerate() {
                if covered_here && !mask[j] {
                    mask[j] = true;
                    touched.push(j);
                    gained += 1;
                }
            }
            search(
                candidates,
                coverages,
                i + 1,
                budget - dim,
                mask,
                covered + gained,
                best,
            );
            for j in touched {
                mask[j] = false;
            }
        }
    }
    let mut mask = vec![false; restricted.len()];
    search(&candidates, &coverages, 0, budget, &mut mask, 0, &mut best);
    Ok(best)
}
