//! Construction of nice hyperplane sequences over a good flat collection.
//!
//! Given a good collection F_1..F_k, a nice sequence picks a hyperplane P_i
//! inside each F_i so that H = join(P_1..P_k) is a spanned hyperplane of the
//! ambient space with H ∩ F_i = P_i for every i. Distinct sequences give
//! distinct H, because each P_i is recovered from H as H ∩ F_i.
//!
//! Selection scans each flat's spanned-hyperplane census in canonical order
//! and skips a candidate whenever it contains the trace of an already-pinned
//! part of the configuration on its flat. When the dimension sum exceeds the
//! ambient dimension by x, the last flat instead receives the join of the
//! excess trace Q with a spanned flat of the point set projected from Q onto
//! a generic target inside it.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::hyperplanes_of;
use crate::error::{Error, Result};
use crate::flat::{join_all, project_through, Flat};
use crate::point::{PointSet, ProjPoint};
use crate::scalar::{int, Scalar};
use crate::structure::{check_good_collection, FlatCollection};

/// Fixed seed for the generic-target trials; the construction is part of a
/// deterministic, reproducible pipeline.
const TARGET_TRIAL_SEED: u64 = 0x1e57_f1a7;
const TARGET_TRIALS: usize = 100;

/// Extra data produced when the collection's dimension sum exceeds the
/// ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcessData {
    /// Q: the trace of the pinned prefix on the last flat, dimension x - 1.
    pub center: Flat,
    /// Q_i: traces that the last hyperplane must avoid, dimension x.
    pub blockers: Vec<Flat>,
    /// The generic projection target inside the last flat.
    pub target: Flat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceSequence {
    /// P_i, one hyperplane inside each collection flat, in collection order.
    pub hyperplanes: Vec<Flat>,
    /// H = join of the P_i: a spanned hyperplane of the ambient space.
    pub joined: Flat,
    pub excess: Option<ExcessData>,
}

struct NiceContext<'a> {
    s: &'a PointSet,
    flats: &'a [Flat],
    dims: Vec<usize>,
    d: usize,
    /// dim_sum - d.
    excess: usize,
    /// Number of flats that take their hyperplane from a census scan:
    /// all k when excess = 0, the first k-1 otherwise.
    prefix_len: usize,
    censuses: Vec<Vec<Flat>>,
}

impl<'a> NiceContext<'a> {
    fn new(s: &'a PointSet, c: &'a FlatCollection) -> Result<Self> {
        let d = s.ambient_dim();
        if c.ambient_dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: c.ambient_dim(),
            });
        }
        let verdict = check_good_collection(c)?;
        if !verdict.good {
            return Err(Error::InvalidCollection(
                "nice sequences need a good collection".into(),
            ));
        }
        let dims = c.dims();
        if dims.iter().any(|&a| a == 0) {
            return Err(Error::InvalidCollection(
                "collection flats need dimension at least 1".into(),
            ));
        }
        for (i, f) in c.flats().iter().enumerate() {
            let needed = dims[i] + 1;
            let on_flat = s.restrict_to(f);
            if on_flat.len() < needed {
                return Err(Error::TooFewPoints {
                    needed,
                    found: on_flat.len(),
                });
            }
            if on_flat.lift_rank() != needed {
                return Err(Error::NotSpanned);
            }
        }
        let dim_sum: usize = dims.iter().sum();
        let excess = dim_sum - d; // good collections have dim_sum >= d
        let k = c.len();
        let prefix_len = if excess == 0 { k } else { k - 1 };
        if excess > 0 {
            let prefix_sum: usize = dims[..k - 1].iter().sum();
            if prefix_sum > d - 1 {
                return Err(Error::InvalidCollection(format!(
                    "the first {} flats already sum to {prefix_sum} >= d = {d}; \
                     a smaller subfamily should be used instead",
                    k - 1
                )));
            }
        }
        let censuses = c.flats()[..prefix_len]
            .iter()
            .map(|f| Ok(hyperplanes_of(s, f)?.flats().cloned().collect()))
            .collect::<Result<Vec<Vec<Flat>>>>()?;
        Ok(NiceContext {
            s,
            flats: c.flats(),
            dims,
            d,
            excess,
            prefix_len,
            censuses,
        })
    }

    fn k(&self) -> usize {
        self.flats.len()
    }

    /// Join of the chosen hyperplanes at `i_mask` with the collection flats
    /// at `j_mask`.
    fn mixed_join(&self, chosen: &[Flat], i_mask: u32, j_mask: u32) -> Result<Flat> {
        let picks = (0..chosen.len())
            .filter(|&i| i_mask & (1 << i) != 0)
            .map(|i| &chosen[i])
            .chain(
                (0..self.k())
                    .filter(|&j| j_mask & (1 << j) != 0)
                    .map(|j| &self.flats[j]),
            );
        join_all(self.d, picks)
    }

    /// The flats a candidate hyperplane of flat `s_idx` must not contain:
    /// every nonempty trace of join(P_I, F_J) on F_s over I within the
    /// prefix and J among the other flats.
    fn exclusions(&self, chosen: &[Flat], s_idx: usize) -> Result<Vec<Flat>> {
        let k = self.k();
        let mut out: Vec<Flat> = Vec::new();
        for i_mask in 0u32..(1 << s_idx) {
            let others: Vec<usize> = (0..k)
                .filter(|&j| j != s_idx && (j >= s_idx || i_mask & (1 << j) == 0))
                .collect();
            for pick in 0u32..(1 << others.len()) {
                if i_mask == 0 && pick == 0 {
                    continue;
                }
                let mut j_mask = 0u32;
                for (bit, &j) in others.iter().enumerate() {
                    if pick & (1 << bit) != 0 {
                        j_mask |= 1 << j;
                    }
                }
                let joined = self.mixed_join(chosen, i_mask, j_mask)?;
                let trace = joined.meet(&self.flats[s_idx])?;
                if !trace.is_empty() && !out.contains(&trace) {
                    out.push(trace);
                }
            }
        }
        Ok(out)
    }

    /// The dimension conditions that make the final join a hyperplane:
    /// join(P_I) has dimension sum(a_I) - 1 and join(P_I, F_J) has dimension
    /// at least sum(a_{I∪J}) for nonempty J; with excess, the join over all
    /// remaining flats is the whole space.
    fn assert_prefix_conditions(&self, chosen: &[Flat]) -> Result<()> {
        let s_len = chosen.len();
        let k = self.k();
        for i_mask in 1u32..(1 << s_len) {
            let others: Vec<usize> = (0..k)
                .filter(|&j| j >= s_len || i_mask & (1 << j) == 0)
                .collect();
            for pick in 0u32..(1 << others.len()) {
                let mut j_mask = 0u32;
                let mut a_sum: usize = (0..s_len)
                    .filter(|&i| i_mask & (1 << i) != 0)
                    .map(|i| self.dims[i])
                    .sum();
                for (bit, &j) in others.iter().enumerate() {
                    if pick & (1 << bit) != 0 {
                        j_mask |= 1 << j;
                        a_sum += self.dims[j];
                    }
                }
                let joined = self.mixed_join(chosen, i_mask, j_mask)?;
                if pick == 0 {
                    assert_eq!(
                        joined.proj_dim(),
                        a_sum as isize - 1,
                        "pinned hyperplanes must join with full dimension"
                    );
                } else {
                    // The floor caps at the ambient dimension; in the excess
                    // case the prefix joined with all remaining flats must
                    // reach the whole space.
                    assert!(
                        joined.proj_dim() >= (a_sum as isize).min(self.d as isize),
                        "mixed join dimension dropped below the dimension sum"
                    );
                }
            }
        }
        Ok(())
    }

    fn finish_sequence(
        &self,
        hyperplanes: Vec<Flat>,
        excess: Option<ExcessData>,
    ) -> Result<NiceSequence> {
        let joined = join_all(self.d, hyperplanes.iter())?;
        assert_eq!(
            joined.proj_dim(),
            self.d as isize - 1,
            "a nice sequence joins to a hyperplane"
        );
        let on_h = self.s.restrict_to(&joined);
        assert_eq!(
            on_h.lift_rank(),
            self.d,
            "the joined hyperplane must be spanned by the point set"
        );
        for (p, f) in hyperplanes.iter().zip(self.flats) {
            assert_eq!(
                &joined.meet(f)?,
                p,
                "the joined hyperplane must trace back to each chosen piece"
            );
        }
        Ok(NiceSequence {
            hyperplanes,
            joined,
            excess,
        })
    }

    /// Depth-first scan over admissible choices, in canonical census order,
    /// calling `visit` with every completed nice sequence.
    fn for_each(
        &self,
        visit: &mut dyn FnMut(NiceSequence) -> ControlFlow<()>,
    ) -> Result<()> {
        let mut chosen: Vec<Flat> = Vec::with_capacity(self.prefix_len);
        let _ = self.recurse(&mut chosen, visit)?;
        Ok(())
    }

    fn recurse(
        &self,
        chosen: &mut Vec<Flat>,
        visit: &mut dyn FnMut(NiceSequence) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let s_idx = chosen.len();
        if s_idx == self.prefix_len {
            if self.excess == 0 {
                let seq = self.finish_sequence(chosen.clone(), None)?;
                return Ok(visit(seq));
            }
            return self.complete_with_excess(chosen, visit);
        }
        let exclusions = self.exclusions(chosen, s_idx)?;
        for cand in &self.censuses[s_idx] {
            if exclusions.iter().any(|q| cand.contains_flat(q)) {
                continue;
            }
            chosen.push(cand.clone());
            self.assert_prefix_conditions(chosen)?;
            let flow = self.recurse(chosen, visit)?;
            chosen.pop();
            if flow.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Last flat under excess x: P_k = join(Q, W) for W a spanned
    /// (a_k - x - 1)-flat of the projection of the points from Q onto a
    /// generic target, W avoiding every projected blocker.
    fn complete_with_excess(
        &self,
        chosen: &[Flat],
        visit: &mut dyn FnMut(NiceSequence) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let k = self.k();
        let last = &self.flats[k - 1];
        let a_last = self.dims[k - 1];
        let x = self.excess;
        let prefix = join_all(self.d, chosen.iter())?;
        let center = prefix.meet(last)?;
        assert_eq!(
            center.proj_dim(),
            x as isize - 1,
            "the prefix trace on the last flat has dimension x - 1"
        );
        let mut blockers = Vec::with_capacity(k - 1);
        for i in 0..k - 1 {
            let mut parts: Vec<&Flat> = vec![&self.flats[i]];
            parts.extend(chosen.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p));
            let joined = join_all(self.d, parts)?;
            let trace = joined.meet(last)?;
            assert_eq!(trace.proj_dim(), x as isize, "blocker traces have dimension x");
            assert!(trace.contains_flat(&center));
            blockers.push(trace);
        }
        let target = self.generic_target(last, &center)?;
        let blocker_points: Vec<ProjPoint> = blockers
            .iter()
            .map(|b| {
                let image = b.meet(&target)?;
                debug_assert_eq!(image.proj_dim(), 0);
                Ok(image.to_point().expect("blocker trace meets the target in a point"))
            })
            .collect::<Result<Vec<_>>>()?;
        // Project the points of the last flat from Q onto the target;
        // collisions collapse, which only shrinks the census.
        let mut images: BTreeSet<ProjPoint> = BTreeSet::new();
        for p in self.s.iter().filter(|p| last.contains_point(p)) {
            if center.contains_point(p) {
                continue;
            }
            images.insert(project_through(&center, &target, p)?);
        }
        let sub_dim = a_last - x - 1;
        if images.len() < sub_dim + 1 {
            return Err(Error::CensusExhausted(format!(
                "projected point set inside the last flat has {} points, need {}",
                images.len(),
                sub_dim + 1
            )));
        }
        let projected = PointSet::new(self.d, images.into_iter().collect(), self.s.label())?;
        let census = crate::census::spanned_flats(&projected, sub_dim)?;
        for w in census.flats() {
            if blocker_points.iter().any(|bp| w.contains_point(bp)) {
                continue;
            }
            let p_last = center.join(w)?;
            assert_eq!(p_last.proj_dim(), a_last as isize - 1);
            let mut hyperplanes = chosen.to_vec();
            hyperplanes.push(p_last);
            let seq = self.finish_sequence(
                hyperplanes,
                Some(ExcessData {
                    center: center.clone(),
                    blockers: blockers.clone(),
                    target: target.clone(),
                }),
            )?;
            if visit(seq).is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Seeded random search for an (a_k - x)-dimensional flat inside the
    /// last flat, disjoint from the center. Disjointness makes the
    /// projection well-defined; the trials only retry rank degeneracies.
    fn generic_target(&self, last: &Flat, center: &Flat) -> Result<Flat> {
        let a_last = last.proj_dim() as usize;
        let x = self.excess;
        let want = a_last - x;
        let mut rng = ChaCha8Rng::seed_from_u64(TARGET_TRIAL_SEED);
        let width = self.d + 1;
        for _ in 0..TARGET_TRIALS {
            let rows: Vec<Vec<Scalar>> = (0..=want)
                .map(|_| {
                    let mut row = vec![Scalar::default(); width];
                    for basis_row in last.basis() {
                        let c = int(rng.gen_range(-9..=9i64));
                        for (acc, v) in row.iter_mut().zip(basis_row) {
                            *acc += &c * v;
                        }
                    }
                    row
                })
                .collect();
            let cand = Flat::from_generators(self.d, rows)?;
            if cand.proj_dim() == want as isize && cand.meet(center)?.is_empty() {
                return Ok(cand);
            }
        }
        Err(Error::TrialBudgetExhausted)
    }
}

/// First nice sequence, in canonical scan order, that is not in `avoid`.
pub fn build_nice_sequence(
    s: &PointSet,
    c: &FlatCollection,
    avoid: &[NiceSequence],
) -> Result<NiceSequence> {
    let ctx = NiceContext::new(s, c)?;
    let mut found: Option<NiceSequence> = None;
    ctx.for_each(&mut |seq| {
        if avoid.iter().any(|a| a.hyperplanes == seq.hyperplanes) {
            return ControlFlow::Continue(());
        }
        found = Some(seq);
        ControlFlow::Break(())
    })?;
    found.ok_or_else(|| Error::CensusExhausted("nice-sequence scan".into()))
}

/// Up to `budget` nice sequences in canonical scan order. The joined
/// hyperplanes are pairwise distinct by construction; this is re-checked.
pub fn enumerate_nice_sequences(
    s: &PointSet,
    c: &FlatCollection,
    budget: usize,
) -> Result<Vec<NiceSequence>> {
    let ctx = NiceContext::new(s, c)?;
    let mut sequences: Vec<NiceSequence> = Vec::new();
    let mut seen: BTreeSet<Flat> = BTreeSet::new();
    ctx.for_each(&mut |seq| {
        if sequences.len() >= budget {
            return ControlFlow::Break(());
        }
        assert!(
            seen.insert(seq.joined.clone()),
            "distinct nice sequences must join to distinct hyperplanes"
        );
        sequences.push(seq);
        if sequences.len() >= budget {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(sequences)
}

/// The set of spanned hyperplanes generated by up to `budget` nice
/// sequences.
pub fn enumerate_nice_hyperplanes(
    s: &PointSet,
    c: &FlatCollection,
    budget: usize,
) -> Result<BTreeSet<Flat>> {
    Ok(enumerate_nice_sequences(s, c, budget)?
        .into_iter()
        .map(|seq| seq.joined)
        .collect())
}
