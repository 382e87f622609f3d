//! Machine-readable reports: censuses, rich/saturated listings, dichotomy
//! outcomes, nice-sequence batches, and the bound checks.
//!
//! Every report embeds the tool version and the resolved thresholds it was
//! produced with, so a verdict is reproducible from the report alone. All
//! maps are ordered and all rationals are exact strings; identical inputs
//! give byte-identical reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::census::{
    hyperplane_count, hyperplanes_of, hyperplanes_through_point, spanned_flats_par,
};
use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::generate::ConfigSpec;
use crate::nice::{enumerate_nice_sequences, NiceSequence};
use crate::point::PointSet;
use crate::scalar::{count, count_pow, frac, Scalar};
use crate::structure::{
    decompose, degenerate_hyperplane_census, is_rich, is_saturated, max_coverage_hyperplane,
    DegeneracyVariant, DichotomyResult, FlatCollection, ThresholdConfig,
};

pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: TOOL_NAME,
            version: TOOL_VERSION,
        }
    }
}

/// Resolved per-dimension thresholds, echoed for reproducibility.
#[derive(Clone, Debug, Serialize)]
pub struct ThresholdEcho {
    pub config: ThresholdConfig,
    /// dim -> (beck_beta, sat_gamma) actually in effect.
    pub resolved: BTreeMap<usize, (String, String)>,
}

impl ThresholdEcho {
    pub fn new(cfg: &ThresholdConfig, d: usize) -> Self {
        ThresholdEcho {
            config: cfg.clone(),
            resolved: cfg
                .resolved(d)
                .into_iter()
                .map(|(m, (b, g))| (m, (b.to_string(), g.to_string())))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatEntry {
    pub basis: Flat,
    pub points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub k: usize,
    pub flat_count: usize,
    pub multiplicity_histogram: BTreeMap<usize, usize>,
    pub flats: Vec<FlatEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub tool: ToolInfo,
    pub label: String,
    pub ambient_dim: usize,
    pub n: usize,
    pub censuses: Vec<CensusEntry>,
}

/// Spanned-flat census for the requested dimensions (all of 0..d-1 when
/// `ks` is empty).
pub fn census_report(s: &PointSet, ks: &[usize], workers: usize) -> Result<CensusReport> {
    let d = s.ambient_dim();
    let ks: Vec<usize> = if ks.is_empty() {
        (0..d).collect()
    } else {
        ks.to_vec()
    };
    let mut censuses = Vec::new();
    for &k in &ks {
        let census = spanned_flats_par(s, k, workers)?;
        censuses.push(CensusEntry {
            k,
            flat_count: census.len(),
            multiplicity_histogram: census.multiplicity_histogram(),
            flats: census
                .iter()
                .map(|(f, m)| FlatEntry {
                    basis: f.clone(),
                    points: m,
                })
                .collect(),
        });
    }
    Ok(CensusReport {
        tool: ToolInfo::current(),
        label: s.label().to_string(),
        ambient_dim: d,
        n: s.len(),
        censuses,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RichSatEntry {
    pub dim: usize,
    pub basis: Flat,
    pub points: usize,
    pub rich: bool,
    pub saturated: bool,
    pub hyperplanes: usize,
    pub threshold: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatsReport {
    pub tool: ToolInfo,
    pub label: String,
    pub ambient_dim: usize,
    pub n: usize,
    pub rich_c: String,
    pub thresholds: ThresholdEcho,
    pub entries: Vec<RichSatEntry>,
}

/// Richness/saturation verdict for every spanned flat of dimension 1..d-1.
pub fn flats_report(s: &PointSet, cfg: &ThresholdConfig, workers: usize) -> Result<FlatsReport> {
    cfg.validate()?;
    let d = s.ambient_dim();
    let mut entries = Vec::new();
    for dim in 1..d {
        if s.len() < dim + 1 {
            continue;
        }
        let census = spanned_flats_par(s, dim, workers)?;
        for (flat, points) in census.iter() {
            let verdict = is_saturated(s, flat, &cfg.sat_gamma_for(dim))?;
            entries.push(RichSatEntry {
                dim,
                basis: flat.clone(),
                points,
                rich: is_rich(s, flat, &cfg.rich_c),
                saturated: verdict.saturated,
                hyperplanes: verdict.h,
                threshold: verdict.threshold.to_string(),
            });
        }
    }
    Ok(FlatsReport {
        tool: ToolInfo::current(),
        label: s.label().to_string(),
        ambient_dim: d,
        n: s.len(),
        rich_c: cfg.rich_c.to_string(),
        thresholds: ThresholdEcho::new(cfg, d),
        entries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeReport {
    pub tool: ToolInfo,
    pub label: String,
    pub ambient_dim: usize,
    pub n: usize,
    pub thresholds: ThresholdEcho,
    pub result: DichotomyResult,
}

pub fn decompose_report(s: &PointSet, cfg: &ThresholdConfig) -> Result<DecomposeReport> {
    let result = decompose(s, cfg)?;
    Ok(DecomposeReport {
        tool: ToolInfo::current(),
        label: s.label().to_string(),
        ambient_dim: s.ambient_dim(),
        n: s.len(),
        thresholds: ThresholdEcho::new(cfg, s.ambient_dim()),
        result,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NiceReport {
    pub tool: ToolInfo,
    pub label: String,
    pub ambient_dim: usize,
    pub n: usize,
    pub collection: FlatCollection,
    pub budget: usize,
    pub count: usize,
    pub sequences: Vec<NiceSequence>,
}

pub fn nice_report(s: &PointSet, c: &FlatCollection, budget: usize) -> Result<NiceReport> {
    let sequences = enumerate_nice_sequences(s, c, budget)?;
    Ok(NiceReport {
        tool: ToolInfo::current(),
        label: s.label().to_string(),
        ambient_dim: s.ambient_dim(),
        n: s.len(),
        collection: c.clone(),
        budget,
        count: sequences.len(),
        sequences,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GenReport {
    pub tool: ToolInfo,
    pub label: String,
    pub ambient_dim: usize,
    pub n: usize,
    pub spec: ConfigSpec,
    pub points_written: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_written: Option<String>,
}

/// Identifiers of the checkable bounds. Assertable bounds carry a holds
/// verdict; ratio bounds only report their measured value, because their
/// constants are existential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundId {
    /// Hyperplane-count upper bound for clustered sets: with all but x
    /// points on a declared small-dimension collection,
    /// H <= (x + d) n^(d-1). Assertable.
    HyperplaneCountUpperBound,
    /// Pencil bound: at most |S ∩ P|^(dim P - 1) spanned hyperplanes of P
    /// through any fixed point. Assertable.
    PencilBound,
    /// Measured ratio H / (x n^(d-1)) at the maximum-coverage hyperplane.
    SaturatedRichRatio,
    /// Measured max hyperplane coverage against n / (d-1).
    MaxCoverageRatio,
    /// Measured ratio of the k-rich degenerate hyperplane count against
    /// n^d k^-(d+1) + n^(d-1) k^-(d-1).
    DegenerateRichRatio,
    /// Lower bound from three pairwise skew lines:
    /// H >= m1 (m2 - 1) (m3 - 2). Assertable.
    SkewTripleLowerBound,
}

impl BoundId {
    pub const ALL: [BoundId; 6] = [
        BoundId::HyperplaneCountUpperBound,
        BoundId::PencilBound,
        BoundId::SaturatedRichRatio,
        BoundId::MaxCoverageRatio,
        BoundId::DegenerateRichRatio,
        BoundId::SkewTripleLowerBound,
    ];

    pub fn wire(&self) -> &'static str {
        match self {
            BoundId::HyperplaneCountUpperBound => "prop_1_8",
            BoundId::PencilBound => "lemma_2_2",
            BoundId::SaturatedRichRatio => "thm_1_4_ratio",
            BoundId::MaxCoverageRatio => "cor_1_6",
            BoundId::DegenerateRichRatio => "cor_1_10_ratio",
            BoundId::SkewTripleLowerBound => "lemma_3_2",
        }
    }

    pub fn parse(s: &str) -> Result<BoundId> {
        BoundId::ALL
            .iter()
            .copied()
            .find(|b| b.wire() == s)
            .ok_or_else(|| Error::UnknownBound(s.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundEntry {
    pub bound_id: String,
    pub lhs: String,
    pub rhs: String,
    /// Exact comparison verdict; absent for ratio-only entries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    pub inputs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub tool: ToolInfo,
    pub label: String,
    pub ambient_dim: usize,
    pub n: usize,
    pub thresholds: ThresholdEcho,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    /// True when some assertable entry failed; drives exit status 1.
    pub fn any_failed(&self) -> bool {
        self.entries.iter().any(|e| e.holds == Some(false))
    }
}

/// Knobs for the degenerate-hyperplane ratio entries.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub krich: Vec<usize>,
    pub alpha: Scalar,
    pub variant: DegeneracyVariant,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            krich: vec![2],
            alpha: frac(1, 2),
            variant: DegeneracyVariant::Classic,
        }
    }
}

/// Computes the selected bounds with exact arithmetic. Bounds that need a
/// declared flat collection (the cluster upper bound and the skew-triple
/// lower bound) fail with a missing-input error when none is given.
pub fn run_verify(
    s: &PointSet,
    cfg: &ThresholdConfig,
    bounds: &[BoundId],
    collection: Option<&FlatCollection>,
    opts: &VerifyOptions,
) -> Result<BoundReport> {
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
    let mut entries = Vec::new();
    for bound in bounds {
        match bound {
            BoundId::HyperplaneCountUpperBound => {
                let coll = collection.ok_or_else(|| {
                    Error::MissingInput("prop_1_8 needs a declared flat collection".into())
                })?;
                if coll.dim_sum() >= d {
                    return Err(Error::InvalidCollection(format!(
                        "prop_1_8 needs dimension sum below d = {d}, got {}",
                        coll.dim_sum()
                    )));
                }
                let covered = coll.covered_count(s);
                let x = n - covered;
                let lhs = hyperplane_count(s, &ambient)?;
                let rhs = count(x + d) * count_pow(n, d - 1);
                let mut inputs = BTreeMap::new();
                inputs.insert("x".into(), x.to_string());
                inputs.insert("covered".into(), covered.to_string());
                inputs.insert(
                    "collection_dims".into(),
                    format!("{:?}", coll.dims()),
                );
                entries.push(BoundEntry {
                    bound_id: bound.wire().into(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                    holds: Some(count(lhs) <= rhs),
                    ratio: Some((count(lhs) / rhs).to_string()),
                    inputs,
                });
            }
            BoundId::PencilBound => {
                entries.push(pencil_entry(s, &ambient)?);
            }
            BoundId::SaturatedRichRatio => {
                let (p, coverage) = max_coverage_hyperplane(s, &ambient)?;
                let rich = is_rich(s, &p, &cfg.rich_c);
                let verdict = is_saturated(s, &p, &cfg.sat_gamma_for(d - 1))?;
                let x = n - coverage;
                let lhs = hyperplane_count(s, &ambient)?;
                let rhs = count(x) * count_pow(n, d - 1);
                let mut inputs = BTreeMap::new();
                inputs.insert("hyperplane_points".into(), coverage.to_string());
                inputs.insert("x".into(), x.to_string());
                inputs.insert("rich".into(), rich.to_string());
                inputs.insert("saturated".into(), verdict.saturated.to_string());
                let ratio = (x > 0).then(|| (count(lhs) / &rhs).to_string());
                entries.push(BoundEntry {
                    bound_id: bound.wire().into(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                    holds: None,
                    ratio,
                    inputs,
                });
            }
            BoundId::MaxCoverageRatio => {
                let (_, coverage) = max_coverage_hyperplane(s, &ambient)?;
                let rhs = count(n) / count(d - 1);
                let mut inputs = BTreeMap::new();
                inputs.insert("d".into(), d.to_string());
                entries.push(BoundEntry {
                    bound_id: bound.wire().into(),
                    lhs: coverage.to_string(),
                    rhs: rhs.to_string(),
                    holds: None,
                    ratio: Some((count(coverage) / &rhs).to_string()),
                    inputs,
                });
            }
            BoundId::DegenerateRichRatio => {
                for &k in &opts.krich {
                    let census = degenerate_hyperplane_census(s, k, &opts.alpha, opts.variant)?;
                    let rhs =
                        count_pow(n, d) / count_pow(k, d + 1) + count_pow(n, d - 1) / count_pow(k, d - 1);
                    let mut inputs = BTreeMap::new();
                    inputs.insert("k".into(), k.to_string());
                    inputs.insert("alpha".into(), opts.alpha.to_string());
                    inputs.insert("variant".into(), format!("{:?}", opts.variant));
                    inputs.insert("rich_entries".into(), census.entries.len().to_string());
                    entries.push(BoundEntry {
                        bound_id: bound.wire().into(),
                        lhs: census.degenerate_count.to_string(),
                        rhs: rhs.to_string(),
                        holds: None,
                        ratio: Some(census.bound_ratio.to_string()),
                        inputs,
                    });
                }
            }
            BoundId::SkewTripleLowerBound => {
                let coll = collection.ok_or_else(|| {
                    Error::MissingInput("lemma_3_2 needs the three lines as a collection".into())
                })?;
                let lines: Vec<&Flat> =
                    coll.flats().iter().filter(|f| f.proj_dim() == 1).collect();
                if lines.len() < 3 {
                    return Err(Error::MissingInput(format!(
                        "lemma_3_2 needs at least 3 lines, found {}",
                        lines.len()
                    )));
                }
                let counts: Vec<usize> = lines[..3].iter().map(|l| s.count_on(l)).collect();
                let mut pairwise_skew = true;
                for i in 0..3 {
                    for j in i + 1..3 {
                        if !lines[i].meet(lines[j])?.is_empty() {
                            pairwise_skew = false;
                        }
                    }
                }
                let lhs = hyperplane_count(s, &ambient)?;
                let rhs = counts[0]
                    * counts[1].saturating_sub(1)
                    * counts[2].saturating_sub(2);
                let mut inputs = BTreeMap::new();
                inputs.insert("m".into(), format!("{counts:?}"));
                inputs.insert("pairwise_skew".into(), pairwise_skew.to_string());
                entries.push(BoundEntry {
                    bound_id: bound.wire().into(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                    holds: Some(lhs >= rhs),
                    ratio: None,
                    inputs,
                });
            }
        }
    }
    Ok(BoundReport {
        tool: ToolInfo::current(),
        label: s.label().to_string(),
        ambient_dim: d,
        n,
        thresholds: ThresholdEcho::new(cfg, d),
        entries,
    })
}

/// Worst pencil over every point of every spanned hyperplane. In the plane
/// the hyperplanes of the ambient space are the spanned lines themselves,
/// so the pencil is counted at every set point instead.
fn pencil_entry(s: &PointSet, ambient: &Flat) -> Result<BoundEntry> {
    let d = s.ambient_dim();
    let n = s.len();
    let mut checked = 0usize;
    let mut all_hold = true;
    let mut worst: Option<(usize, Scalar, Scalar)> = None; // (pencil, bound, ratio)
    let mut track = |pencil: usize, bound: Scalar| {
        checked += 1;
        if count(pencil) > bound {
            all_hold = false;
        }
        let ratio = count(pencil) / &bound;
        if worst.as_ref().is_none_or(|(_, _, w)| ratio > *w) {
            worst = Some((pencil, bound, ratio));
        }
    };
    if d == 2 {
        for q in s.iter() {
            let pencil = hyperplanes_through_point(s, ambient, q)?;
            track(pencil, count(n));
        }
    } else {
        let hyperplanes = hyperplanes_of(s, ambient)?;
        for (p, m) in hyperplanes.iter() {
            let inner = hyperplanes_of(s, p)?;
            let bound = count_pow(m, p.proj_dim() as usize - 1);
            for q in s.iter().filter(|q| p.contains_point(q)) {
                let pencil = inner.flats().filter(|h| h.contains_point(q)).count();
                track(pencil, bound.clone());
            }
        }
    }
    let (lhs, rhs) = match &worst {
        Some((pencil, bound, _)) => (pencil.to_string(), bound.to_string()),
        None => ("0".into(), "0".into()),
    };
    let mut inputs = BTreeMap::new();
    inputs.insert("pairs_checked".into(), checked.to_string());
    Ok(BoundEntry {
        bound_id: BoundId::PencilBound.wire().into(),
        lhs,
        rhs,
        holds: Some(all_hold),
        ratio: None,
        inputs,
    })
}

/// Pretty JSON with a trailing newline; structs keep declaration order, so
/// output is byte-stable.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}
