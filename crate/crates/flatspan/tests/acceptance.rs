//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured values (run with `--nocapture` to see them).
//!
//! The closure oracle here is deliberately independent of the library's
//! enumeration path: it walks subsets with its own iterator, keys flats by
//! their member-index closure, and re-spans each closure to cross-check.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use flatspan::census::{
    hyperplane_count, hyperplanes_of, hyperplanes_through_point, spanned_flats,
    spanned_flats_par,
};
use flatspan::flat::{join_all, Flat};
use flatspan::generate::{generate_with_witness, ConfigSpec, FlatSpec, GeneratedSet};
use flatspan::nice::enumerate_nice_sequences;
use flatspan::point::{PointSet, ProjPoint};
use flatspan::report::{census_report, to_json};
use flatspan::scalar::{binomial, count, count_pow, frac, int, Scalar};
use flatspan::structure::{
    check_good_collection, decompose, DichotomyOutcome, FlatCollection, ThresholdConfig,
    TraceStep,
};

fn affine(vals: &[i64]) -> ProjPoint {
    let coords: Vec<Scalar> = vals.iter().map(|&v| int(v)).collect();
    ProjPoint::embed_affine(&coords).unwrap()
}

/// Local lexicographic subset iterator, part of the oracle.
fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Closure-based census oracle: every (k+1)-subset whose join has dimension
/// k contributes its membership closure; each closure must re-span the same
/// flat, and the multiplicity is the closure size.
fn closure_oracle(s: &PointSet, k: usize) -> BTreeMap<Flat, usize> {
    let d = s.ambient_dim();
    let mut by_closure: BTreeMap<Vec<usize>, Flat> = BTreeMap::new();
    for subset in subsets(s.len(), k + 1) {
        let flats: Vec<Flat> = subset.iter().map(|&i| s.points()[i].to_flat()).collect();
        let joined = join_all(d, flats.iter()).unwrap();
        if joined.proj_dim() != k as isize {
            continue;
        }
        let members: Vec<usize> = (0..s.len())
            .filter(|&i| joined.contains_point(&s.points()[i]))
            .collect();
        let member_flats: Vec<Flat> = members.iter().map(|&i| s.points()[i].to_flat()).collect();
        let respanned = join_all(d, member_flats.iter()).unwrap();
        assert_eq!(respanned, joined, "a closure must re-span its flat");
        by_closure.insert(members, joined);
    }
    by_closure
        .into_iter()
        .map(|(members, flat)| (flat, members.len()))
        .collect()
}

fn census_as_map(s: &PointSet, k: usize) -> BTreeMap<Flat, usize> {
    spanned_flats(s, k).unwrap().iter().map(|(f, m)| (f.clone(), m)).collect()
}

/// Seeded degenerate-rich random sets for the oracle battery.
fn random_degenerate_set(seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = if seed % 2 == 0 { 2 } else { 3 };
    let n = 4 + (seed % 7) as usize;
    let mut pts: Vec<ProjPoint> = Vec::new();
    while pts.len() < n {
        let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=4)).collect();
        let p = affine(&coords);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointSet::new(d, pts, format!("random{seed}")).unwrap()
}

#[test]
fn criterion_01_oracle_equivalence() {
    let start = Instant::now();
    let mut checked = 0usize;
    for seed in 0..200u64 {
        let s = random_degenerate_set(seed);
        for k in 0..s.ambient_dim() {
            if s.len() < k + 1 {
                continue;
            }
            let fast = census_as_map(&s, k);
            let oracle = closure_oracle(&s, k);
            assert_eq!(fast, oracle, "census mismatch at seed {seed}, k {k}");
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "oracle battery took {elapsed:?}, budget is 60 s"
    );
    println!(
        "criterion 1 (oracle equivalence, {checked} censuses over 200 sets in {elapsed:?}): PASS"
    );
}

#[test]
fn criterion_02_skew_line_exact_count() {
    for n in [6usize, 8, 10, 14, 20] {
        let s = generate_with_witness(&ConfigSpec::TwoSkewLines { n })
            .unwrap()
            .points;
        let ambient = Flat::ambient(3).unwrap();
        assert_eq!(
            hyperplane_count(&s, &ambient).unwrap(),
            n,
            "two skew lines with n = {n} must span exactly n planes"
        );
        let census = spanned_flats(&s, 2).unwrap();
        assert_eq!(
            census.max_coverage().unwrap().1,
            n / 2 + 1,
            "max plane coverage must be n/2 + 1 at n = {n}"
        );
    }
    println!("criterion 2 (skew-line exact counts, n in {{6,8,10,14,20}}): PASS");
}

/// General-position battery shared by criteria 3, 6, and 10.
fn general_position_battery() -> &'static Vec<PointSet> {
    static BATTERY: OnceLock<Vec<PointSet>> = OnceLock::new();
    BATTERY.get_or_init(|| {
        let mut out = Vec::new();
        for d in 2..=4usize {
            for n in 5..=12usize {
                if binomial(n, d) > 500 {
                    continue;
                }
                let spec = ConfigSpec::GeneralPosition {
                    n,
                    d,
                    seed: (100 * d + n) as u64,
                };
                out.push(generate_with_witness(&spec).unwrap().points);
            }
        }
        out
    })
}

#[test]
fn criterion_03_general_position_closed_form() {
    for s in general_position_battery() {
        let d = s.ambient_dim();
        let n = s.len();
        let ambient = Flat::ambient(d).unwrap();
        assert_eq!(
            hyperplane_count(s, &ambient).unwrap(),
            binomial(n, d),
            "general position n = {n}, d = {d} must span C(n, d) hyperplanes"
        );
    }
    println!("criterion 3 (general position H = C(n, d), n in 5..=12, d in 2..=4): PASS");
}

#[test]
fn criterion_04_grid_census() {
    let flat_grid = generate_with_witness(&ConfigSpec::Grid { m: 3, d: 2 })
        .unwrap()
        .points;
    let lines = spanned_flats(&flat_grid, 1).unwrap();
    assert_eq!(lines.len(), 20);
    let hist = lines.multiplicity_histogram();
    assert_eq!(hist.get(&3), Some(&8));
    assert_eq!(hist.get(&2), Some(&12));
    assert_eq!(census_as_map(&flat_grid, 1), closure_oracle(&flat_grid, 1));

    let cube = generate_with_witness(&ConfigSpec::Grid { m: 3, d: 3 })
        .unwrap()
        .points;
    let planes = census_as_map(&cube, 2);
    let oracle = closure_oracle(&cube, 2);
    assert_eq!(planes, oracle);
    assert_eq!(planes.len(), 491);
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for &m in planes.values() {
        *hist.entry(m).or_insert(0) += 1;
    }
    let expected: BTreeMap<usize, usize> =
        [(3, 344), (4, 48), (5, 36), (6, 44), (7, 4), (9, 15)].into();
    assert_eq!(hist, expected);
    println!("criterion 4 (grid censuses: 20 lines, 491 cube planes, oracle match): PASS");
}

/// Cluster battery shared by criteria 5 and 6: 100 seeded configurations,
/// d in {3, 4}, up to 4 outliers, n <= 16.
fn cluster_battery() -> &'static Vec<GeneratedSet> {
    static BATTERY: OnceLock<Vec<GeneratedSet>> = OnceLock::new();
    BATTERY.get_or_init(|| {
        (0..100u64)
            .map(|i| {
                let outliers = (i % 5) as usize;
                let seed = 1000 + i;
                let spec = if i % 2 == 0 {
                    let flats = match i % 3 {
                        0 => vec![FlatSpec { dim: 2, count: 10 }],
                        1 => vec![FlatSpec { dim: 1, count: 6 }, FlatSpec { dim: 1, count: 5 }],
                        _ => vec![FlatSpec { dim: 1, count: 9 }],
                    };
                    ConfigSpec::FlatCluster { d: 3, flats, outliers, seed }
                } else {
                    let flats = match i % 3 {
                        0 => vec![FlatSpec { dim: 3, count: 9 }],
                        1 => vec![FlatSpec { dim: 2, count: 6 }, FlatSpec { dim: 1, count: 4 }],
                        _ => vec![
                            FlatSpec { dim: 1, count: 4 },
                            FlatSpec { dim: 1, count: 4 },
                            FlatSpec { dim: 1, count: 4 },
                        ],
                    };
                    ConfigSpec::FlatCluster { d: 4, flats, outliers, seed }
                };
                generate_with_witness(&spec).unwrap()
            })
            .collect()
    })
}

#[test]
fn criterion_05_cluster_upper_bound() {
    let mut max_ratio = Scalar::default();
    for gs in cluster_battery() {
        let s = &gs.points;
        let witness = gs.witness.as_ref().unwrap();
        let d = s.ambient_dim();
        let n = s.len();
        assert!(n <= 16);
        let x = n - witness.covered_count(s);
        let lhs = hyperplane_count(s, &Flat::ambient(d).unwrap()).unwrap();
        let rhs = count(x + d) * count_pow(n, d - 1);
        assert!(
            count(lhs) <= rhs,
            "cluster bound failed on {}: {lhs} > {rhs}",
            s.label()
        );
        let ratio = count(lhs) / rhs;
        if ratio > max_ratio {
            max_ratio = ratio;
        }
    }
    assert!(max_ratio < count(1));
    println!(
        "criterion 5 (cluster upper bound over 100 configs, max ratio {max_ratio} ≈ {:.4}): PASS",
        rational_to_f64(&max_ratio)
    );
}

fn rational_to_f64(x: &Scalar) -> f64 {
    let numer: f64 = x.numer().to_string().parse().unwrap();
    let denom: f64 = x.denom().to_string().parse().unwrap();
    numer / denom
}

/// Pencil bound for one configuration; returns how many (hyperplane, point)
/// pairs were checked.
fn check_pencils(s: &PointSet) -> usize {
    let d = s.ambient_dim();
    let ambient = Flat::ambient(d).unwrap();
    let mut checked = 0;
    if d == 2 {
        for q in s.iter() {
            let pencil = hyperplanes_through_point(s, &ambient, q).unwrap();
            assert!(pencil <= s.len());
            checked += 1;
        }
    } else {
        let hyperplanes = hyperplanes_of(s, &ambient).unwrap();
        for (p, m) in hyperplanes.iter() {
            let inner = hyperplanes_of(s, p).unwrap();
            let bound = count_pow(m, p.proj_dim() as usize - 1);
            for q in s.iter().filter(|q| p.contains_point(q)) {
                let pencil = inner.flats().filter(|h| h.contains_point(q)).count();
                assert!(
                    count(pencil) <= bound,
                    "pencil {pencil} above bound {bound} on {}",
                    s.label()
                );
                checked += 1;
            }
        }
    }
    checked
}

#[test]
fn criterion_06_pencil_bound_over_all_configs() {
    let mut configs: Vec<PointSet> = Vec::new();
    for n in [6usize, 8, 10, 14, 20] {
        configs.push(generate_with_witness(&ConfigSpec::TwoSkewLines { n }).unwrap().points);
    }
    configs.extend(general_position_battery().iter().cloned());
    configs.push(generate_with_witness(&ConfigSpec::Grid { m: 3, d: 2 }).unwrap().points);
    configs.push(generate_with_witness(&ConfigSpec::Grid { m: 3, d: 3 }).unwrap().points);
    configs.extend(cluster_battery().iter().map(|gs| gs.points.clone()));
    let mut pairs = 0usize;
    for s in &configs {
        pairs += check_pencils(s);
    }
    println!(
        "criterion 6 (pencil bound, {pairs} point-hyperplane pairs over {} configs): PASS",
        configs.len()
    );
}

fn skew_family(m: usize) -> (PointSet, FlatCollection) {
    let gen = generate_with_witness(&ConfigSpec::SkewLineFamily {
        counts: vec![m, m, m],
    })
    .unwrap();
    (gen.points, gen.witness.unwrap())
}

#[test]
fn criterion_07_skew_triples_and_cubic_growth() {
    let mut log_points: Vec<(f64, f64)> = Vec::new();
    for m in 3..=8usize {
        let (s, c) = skew_family(m);
        let sequences = enumerate_nice_sequences(&s, &c, usize::MAX).unwrap();
        let floor = m * (m - 1) * (m - 2);
        assert!(
            sequences.len() >= floor,
            "m = {m}: {} sequences, need at least {floor}",
            sequences.len()
        );
        for seq in &sequences {
            for (p, l) in seq.hyperplanes.iter().zip(c.flats()) {
                assert_eq!(&seq.joined.meet(l).unwrap(), p);
            }
        }
        if m >= 4 {
            let h = hyperplane_count(&s, &Flat::ambient(3).unwrap()).unwrap();
            log_points.push(((m as f64).ln(), (h as f64).ln()));
        }
    }
    let slope = least_squares_slope(&log_points);
    assert!(
        slope >= 2.7,
        "log-log slope of the census count is {slope:.3}, need at least 2.7"
    );
    println!(
        "criterion 7 (three skew lines: counts >= m(m-1)(m-2), census slope {slope:.3}): PASS"
    );
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let var: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    cov / var
}

fn planted_plane_config() -> GeneratedSet {
    generate_with_witness(&ConfigSpec::FlatCluster {
        d: 3,
        flats: vec![FlatSpec { dim: 2, count: 16 }],
        outliers: 4,
        seed: 77,
    })
    .unwrap()
}

fn planted_skew_config() -> PointSet {
    let base = generate_with_witness(&ConfigSpec::TwoSkewLines { n: 16 })
        .unwrap()
        .points;
    let mut pts: Vec<ProjPoint> = base.iter().cloned().collect();
    for coords in [[7i64, 3, 1], [-2, 5, 4], [3, -4, 2], [9, 8, -3]] {
        pts.push(affine(&coords));
    }
    PointSet::new(3, pts, "two_skew_lines(n=16)+4outliers").unwrap()
}

/// Fan of three concurrent coplanar lines with a dominant line; forces a
/// whole-collection merge before the cluster verdict.
fn fan_config() -> PointSet {
    let mut pts = vec![affine(&[0, 0, 0])];
    for t in 1..=12i64 {
        pts.push(affine(&[t, 0, 0]));
    }
    for t in 1..=4i64 {
        pts.push(affine(&[0, t, 0]));
    }
    for t in 1..=4i64 {
        pts.push(affine(&[t, t, 0]));
    }
    PointSet::new(3, pts, "fan21").unwrap()
}

#[test]
fn criterion_08_dichotomy() {
    let beta = frac(4, 5);
    // (a) planted clusters return Cluster with enough coverage.
    let planted = planted_plane_config();
    let mut cfg = ThresholdConfig::default();
    cfg.beta = beta.clone();
    let result = decompose(&planted.points, &cfg).unwrap();
    match &result.outcome {
        DichotomyOutcome::Cluster { collection, covered } => {
            assert!(*covered >= 16);
            assert!(collection.dim_sum() < 3);
        }
        other => panic!("planted plane must cluster, got {other:?}"),
    }
    let skew = planted_skew_config();
    let skew_result = decompose(&skew, &cfg).unwrap();
    match &skew_result.outcome {
        DichotomyOutcome::Cluster { collection, covered } => {
            assert!(*covered >= 16);
            assert!(collection.dim_sum() < 3);
            assert_eq!(collection.dims(), vec![1, 1]);
        }
        other => panic!("planted skew lines must cluster, got {other:?}"),
    }

    // (b) general position is saturated with the closed-form count.
    for n in [12usize, 20] {
        let s = generate_with_witness(&ConfigSpec::GeneralPosition { n, d: 3, seed: 7 })
            .unwrap()
            .points;
        let result = decompose(&s, &cfg).unwrap();
        match result.outcome {
            DichotomyOutcome::Saturated { hyperplane_count, .. } => {
                assert_eq!(hyperplane_count, binomial(n, 3));
            }
            other => panic!("general position must saturate, got {other:?}"),
        }
    }

    // (c) every merge step strictly decreases the dimension sum; the fan
    // configuration forces at least one merge.
    let mut fan_cfg = ThresholdConfig::default();
    fan_cfg.beta = frac(9, 10);
    fan_cfg.sat_gamma.insert(2, frac(1, 3));
    let fan_result = decompose(&fan_config(), &fan_cfg).unwrap();
    let mut merges = 0usize;
    for trace in [&result.trace, &skew_result.trace, &fan_result.trace] {
        let additions = trace
            .iter()
            .filter(|s| matches!(s, TraceStep::AddFlat { .. }))
            .count();
        let mut trace_merges = 0usize;
        for step in trace.iter() {
            if let TraceStep::Merge {
                dim_sum_before,
                dim_sum_after,
                ..
            } = step
            {
                assert!(dim_sum_after < dim_sum_before);
                merges += 1;
                trace_merges += 1;
            }
        }
        // Each addition contributes at most d - 1 to the dimension sum and
        // every merge removes at least 1, so the trace stays short.
        assert!(trace_merges <= 3 * (additions + 1));
        assert!(trace.len() <= 3 * additions + trace_merges + 2);
    }
    assert!(merges >= 1, "the fan configuration must force a merge");
    match &fan_result.outcome {
        DichotomyOutcome::Cluster { collection, covered } => {
            assert_eq!(collection.dims(), vec![2]);
            assert_eq!(*covered, 21);
        }
        other => panic!("the fan must cluster onto its plane, got {other:?}"),
    }
    println!(
        "criterion 8 (dichotomy: planted clusters, saturated general position, {merges} strictly decreasing merges): PASS"
    );
}

/// Good collection in RP^4 with dimension sum 4: line + 2-flat + line.
fn case1_d4_config() -> (PointSet, FlatCollection) {
    let line_a = join_all(
        4,
        &[affine(&[1, 0, 0, 0]).to_flat(), affine(&[2, 0, 0, 0]).to_flat()],
    )
    .unwrap();
    let plane_b = join_all(
        4,
        &[
            affine(&[0, 1, 0, 0]).to_flat(),
            affine(&[0, 0, 1, 0]).to_flat(),
            affine(&[0, 0, 0, 1]).to_flat(),
        ],
    )
    .unwrap();
    let line_c = join_all(
        4,
        &[affine(&[1, 1, 1, 1]).to_flat(), affine(&[2, 1, 3, 1]).to_flat()],
    )
    .unwrap();
    let mut pts = vec![
        affine(&[1, 0, 0, 0]),
        affine(&[2, 0, 0, 0]),
        affine(&[3, 0, 0, 0]),
        affine(&[0, 1, 0, 0]),
        affine(&[0, 0, 1, 0]),
        affine(&[0, 0, 0, 1]),
    ];
    // Centroid of the plane triangle: (0, 1/3, 1/3, 1/3).
    pts.push(
        ProjPoint::new(vec![int(3), int(0), int(1), int(1), int(1)]).unwrap(),
    );
    pts.extend([affine(&[1, 1, 1, 1]), affine(&[2, 1, 3, 1]), affine(&[3, 1, 5, 1])]);
    let s = PointSet::new(4, pts, "line+plane+line in RP4").unwrap();
    let c = FlatCollection::new(4, vec![line_a, plane_b, line_c]).unwrap();
    (s, c)
}

/// Three pairwise-disjoint 2-flats in RP^5 with dimension sum 6 = 5 + 1.
fn case2_d5_config() -> (PointSet, FlatCollection) {
    let f1 = join_all(
        5,
        &[
            affine(&[0, 0, 0, 0, 0]).to_flat(),
            affine(&[1, 0, 0, 0, 0]).to_flat(),
            affine(&[0, 1, 0, 0, 0]).to_flat(),
        ],
    )
    .unwrap();
    let f2 = join_all(
        5,
        &[
            affine(&[0, 0, 0, 0, 1]).to_flat(),
            affine(&[0, 0, 1, 0, 1]).to_flat(),
            affine(&[0, 0, 0, 1, 1]).to_flat(),
        ],
    )
    .unwrap();
    let p3 = |t: i64, sv: i64| affine(&[t, sv, t + sv, t - sv, 2]);
    let f3 = join_all(5, &[p3(0, 0).to_flat(), p3(1, 0).to_flat(), p3(0, 1).to_flat()]).unwrap();
    let pts = vec![
        affine(&[0, 0, 0, 0, 0]),
        affine(&[1, 0, 0, 0, 0]),
        affine(&[0, 1, 0, 0, 0]),
        affine(&[1, 2, 0, 0, 0]),
        affine(&[0, 0, 0, 0, 1]),
        affine(&[0, 0, 1, 0, 1]),
        affine(&[0, 0, 0, 1, 1]),
        affine(&[0, 0, 2, 1, 1]),
        p3(2, 1),
        p3(3, 1),
        p3(2, 2),
        p3(3, 2),
    ];
    let s = PointSet::new(5, pts, "three 2-flats in RP5").unwrap();
    let c = FlatCollection::new(5, vec![f1, f2, f3]).unwrap();
    (s, c)
}

#[test]
fn criterion_09_nice_sequence_postconditions() {
    // Clause check shared by every produced sequence.
    let check = |s: &PointSet, c: &FlatCollection, budget: usize, expect_excess: bool| -> usize {
        let d = s.ambient_dim();
        let sequences = enumerate_nice_sequences(s, c, budget).unwrap();
        assert!(!sequences.is_empty());
        for seq in &sequences {
            // Clause 1: H is a hyperplane of the ambient space.
            assert_eq!(seq.joined.proj_dim(), d as isize - 1);
            // Clause 2: H is spanned by the point set.
            assert_eq!(s.restrict_to(&seq.joined).lift_rank(), d);
            // Clause 3: H traces back to each piece.
            for (p, f) in seq.hyperplanes.iter().zip(c.flats()) {
                assert_eq!(&seq.joined.meet(f).unwrap(), p);
                assert!(f.contains_flat(p));
                assert_eq!(p.proj_dim(), f.proj_dim() - 1);
            }
            assert_eq!(seq.excess.is_some(), expect_excess);
            if let Some(excess) = &seq.excess {
                let last = c.flats().last().unwrap();
                let p_last = seq.hyperplanes.last().unwrap();
                assert!(p_last.contains_flat(&excess.center));
                assert!(last.contains_flat(&excess.target));
                for blocker in &excess.blockers {
                    assert!(!p_last.contains_flat(blocker));
                }
                // Projection from the center sends two points of the last
                // flat to the same image exactly when they span a common
                // flat with the center; off such degeneracies it is
                // injective.
                let off_center: Vec<&ProjPoint> = s
                    .iter()
                    .filter(|q| {
                        last.contains_point(q) && !excess.center.contains_point(q)
                    })
                    .collect();
                let images: Vec<ProjPoint> = off_center
                    .iter()
                    .map(|q| {
                        flatspan::flat::project_through(&excess.center, &excess.target, q)
                            .unwrap()
                    })
                    .collect();
                for i in 0..off_center.len() {
                    let through_i = excess.center.join(&off_center[i].to_flat()).unwrap();
                    for j in i + 1..off_center.len() {
                        let collinear = through_i.contains_point(off_center[j]);
                        assert_eq!(images[i] == images[j], collinear);
                    }
                }
            }
        }
        sequences.len()
    };

    for m in [3usize, 5, 8] {
        let (s, c) = skew_family(m);
        check(&s, &c, usize::MAX, false);
    }

    let (s4, c4) = case1_d4_config();
    assert!(check_good_collection(&c4).unwrap().good);
    let produced4 = check(&s4, &c4, 10, false);

    let (s5, c5) = case2_d5_config();
    assert!(check_good_collection(&c5).unwrap().good);
    assert_eq!(c5.dim_sum(), 6);
    let produced5 = check(&s5, &c5, 5, true);

    println!(
        "criterion 9 (nice-sequence clauses on skew triples, {produced4} sequences in RP4, {produced5} excess sequences in RP5): PASS"
    );
}

#[test]
fn criterion_10_determinism_across_workers() {
    let mut configs: Vec<PointSet> = vec![
        generate_with_witness(&ConfigSpec::TwoSkewLines { n: 10 }).unwrap().points,
        generate_with_witness(&ConfigSpec::Grid { m: 3, d: 2 }).unwrap().points,
        generate_with_witness(&ConfigSpec::Grid { m: 3, d: 3 }).unwrap().points,
        generate_with_witness(&ConfigSpec::GeneralPosition { n: 8, d: 3, seed: 3 })
            .unwrap()
            .points,
    ];
    configs.push(cluster_battery()[0].points.clone());
    for s in &configs {
        let single = to_json(&census_report(s, &[], 1).unwrap()).unwrap();
        let parallel = to_json(&census_report(s, &[], 4).unwrap()).unwrap();
        assert_eq!(single, parallel, "worker count changed the report bytes");
        let again = to_json(&census_report(s, &[], 4).unwrap()).unwrap();
        assert_eq!(parallel, again, "repeat run changed the report bytes");
        for k in 0..s.ambient_dim() {
            assert_eq!(
                spanned_flats_par(s, k, 1).unwrap(),
                spanned_flats_par(s, k, 4).unwrap()
            );
        }
    }
    println!("criterion 10 (byte-identical reports with 1 and 4 workers): PASS");
}
