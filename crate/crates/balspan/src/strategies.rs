//! The four top-level solving strategies, local improvement, and the Pareto
//! sweep over all of them.

use crate::error::{Error, Result};
use crate::model::{
    Cluster, ClusteringSolution, ItemId, ItemType, MergeRecord, ProblemInstance, RootedTree,
    TraceStep,
};
use crate::quality::{
    delta, estimate_of, pareto_front, quality_vector, QualityVector, StructureEstimate,
};
use crate::schemes::{run_scheme, CondensingKind};
use crate::spanning::{mst_over_clusters, mst_tree};

/// Rounds given to `local_improve` during a sweep with improvement enabled.
const SWEEP_IMPROVE_ROUNDS: usize = 64;

/// Working state of an agglomeration: clusters as index sets with estimates.
struct Agglomeration {
    /// cluster index per item
    member_of: Vec<usize>,
    /// members per cluster slot (empty = dead slot)
    groups: Vec<Vec<ItemId>>,
    estimates: Vec<StructureEstimate>,
}

impl Agglomeration {
    fn singletons(instance: &ProblemInstance) -> Self {
        let n = instance.item_count();
        Self {
            member_of: (0..n).collect(),
            groups: instance.item_ids().map(|id| vec![id]).collect(),
            estimates: instance
                .item_ids()
                .map(|id| {
                    let mut e = StructureEstimate::zeros(instance.type_count());
                    e.bump(instance.type_of(id));
                    e
                })
                .collect(),
        }
    }

    fn min_member(&self, slot: usize) -> ItemId {
        *self.groups[slot].iter().min().unwrap()
    }

    /// Greedy single-linkage merging: repeatedly joins the lightest cluster
    /// pair whose merged estimate stays within the cap. Only items in
    /// `eligible` (when given) participate.
    fn run(
        &mut self,
        instance: &ProblemInstance,
        cap: &StructureEstimate,
        eligible: Option<&[bool]>,
        trace: &mut Vec<TraceStep>,
        step: &mut usize,
    ) {
        loop {
            let mut best: Option<(f64, ItemId, ItemId, usize, usize)> = None;
            for e in instance.edges() {
                if let Some(mask) = eligible {
                    if !mask[e.u.index()] || !mask[e.v.index()] {
                        continue;
                    }
                }
                let (cu, cv) = (self.member_of[e.u.index()], self.member_of[e.v.index()]);
                if cu == cv {
                    continue;
                }
                if !self.estimates[cu].plus(&self.estimates[cv]).within(cap) {
                    continue;
                }
                let (mn, mx) = {
                    let (a, b) = (self.min_member(cu), self.min_member(cv));
                    (a.min(b), a.max(b))
                };
                let better = match best {
                    None => true,
                    Some((bw, bmn, bmx, _, _)) => {
                        e.w.total_cmp(&bw)
                            .then(mn.cmp(&bmn))
                            .then(mx.cmp(&bmx))
                            .is_lt()
                    }
                };
                if better {
                    best = Some((e.w, mn, mx, cu, cv));
                }
            }
            let Some((w, _, _, cu, cv)) = best else { break };
            // merge the later slot into the earlier one
            let (keep, drop) = if self.min_member(cu) < self.min_member(cv) {
                (cu, cv)
            } else {
                (cv, cu)
            };
            let moved = std::mem::take(&mut self.groups[drop]);
            // the joined pair for the trace: representative edge endpoints
            let joined = instance
                .edges()
                .iter()
                .filter(|e| {
                    let (a, b) = (self.member_of[e.u.index()], self.member_of[e.v.index()]);
                    (a == keep && b == drop) || (a == drop && b == keep)
                })
                .min_by(|a, b| a.w.total_cmp(&b.w).then(a.u.cmp(&b.u)).then(a.v.cmp(&b.v)))
                .map(|e| (e.u, e.v))
                .unwrap();
            for &m in &moved {
                self.member_of[m.index()] = keep;
            }
            self.groups[keep].extend(moved);
            self.groups[keep].sort();
            self.estimates[keep] = estimate_of(&self.groups[keep], instance).unwrap();
            *step += 1;
            trace.push(TraceStep::Merge(MergeRecord {
                step: *step,
                weight: w,
                joined,
                members: self.groups[keep].len(),
            }));
        }
    }

    /// Surviving groups ordered by their smallest member.
    fn groups(self) -> Vec<Vec<ItemId>> {
        let mut out: Vec<Vec<ItemId>> = self.groups.into_iter().filter(|g| !g.is_empty()).collect();
        out.sort_by_key(|g| g[0]);
        out
    }
}

fn label_clusters(groups: Vec<Vec<ItemId>>) -> Vec<Cluster> {
    groups
        .into_iter()
        .enumerate()
        .map(|(i, g)| Cluster::new(i + 1, g))
        .collect()
}

fn finish_solution(
    clusters: Vec<Cluster>,
    instance: &ProblemInstance,
    trace: Vec<TraceStep>,
) -> ClusteringSolution {
    let cluster_tree = mst_over_clusters(&clusters, instance).ok();
    ClusteringSolution {
        clusters,
        cluster_tree,
        trace,
    }
}

/// Strategy 1: balanced clustering first, then a spanning tree over the
/// obtained clusters.
///
/// Phase 1 merges greedily from singletons, always joining the cluster pair
/// at minimum single-linkage distance whose merged estimate stays within the
/// target componentwise; under-full leftovers stay as quasi-clusters.
pub fn strategy_balance_then_span(instance: &ProblemInstance) -> Result<ClusteringSolution> {
    let mut trace = Vec::new();
    let mut step = 0;
    let mut agg = Agglomeration::singletons(instance);
    agg.run(
        instance,
        instance.target_cluster(),
        None,
        &mut trace,
        &mut step,
    );
    let clusters = label_clusters(agg.groups());
    Ok(finish_solution(clusters, instance, trace))
}

/// Strategy 2: spanning tree over the items first, then balanced
/// partitioning of that tree with the chosen condensing scheme.
pub fn strategy_spanning_then_balance(
    instance: &ProblemInstance,
    kind: CondensingKind,
) -> Result<ClusteringSolution> {
    let tree = mst_tree(instance)?;
    run_scheme(&tree, kind, instance)
}

/// Strategy 3: direct agglomeration over the instance graph under the
/// balance constraint; leftover singletons join their closest cluster.
pub fn strategy_direct(instance: &ProblemInstance) -> Result<ClusteringSolution> {
    let mut trace = Vec::new();
    let mut step = 0;
    let groups = direct_groups(
        instance,
        instance.target_cluster(),
        None,
        &mut trace,
        &mut step,
    );
    Ok(finish_solution(label_clusters(groups), instance, trace))
}

/// Direct-strategy grouping: agglomeration under `cap`, then every leftover
/// singleton joins its closest multi-member group. Restricted to the
/// `eligible` items when a mask is given. Groups come back sorted by their
/// smallest member.
fn direct_groups(
    instance: &ProblemInstance,
    cap: &StructureEstimate,
    eligible: Option<&[bool]>,
    trace: &mut Vec<TraceStep>,
    step: &mut usize,
) -> Vec<Vec<ItemId>> {
    let mut agg = Agglomeration::singletons(instance);
    agg.run(instance, cap, eligible, trace, step);
    let groups: Vec<Vec<ItemId>> = agg
        .groups()
        .into_iter()
        .filter(|g| eligible.is_none_or(|mask| mask[g[0].index()]))
        .collect();
    attach_singleton_groups(groups, cap, instance, trace, step)
}

/// Moves every singleton that missed the target into the closest group with
/// at least two members (when one exists), recording each attachment.
fn attach_singleton_groups(
    groups: Vec<Vec<ItemId>>,
    cap: &StructureEstimate,
    instance: &ProblemInstance,
    trace: &mut Vec<TraceStep>,
    step: &mut usize,
) -> Vec<Vec<ItemId>> {
    if !groups.iter().any(|g| g.len() > 1) {
        return groups;
    }
    let mut hosts: Vec<Vec<ItemId>> = Vec::new();
    let mut loose: Vec<ItemId> = Vec::new();
    for g in groups {
        let est = estimate_of(&g, instance).unwrap();
        if g.len() == 1 && est != *cap {
            loose.push(g[0]);
        } else {
            hosts.push(g);
        }
    }
    loose.sort();
    let mut owner: Vec<Option<usize>> = vec![None; instance.item_count()];
    for (slot, g) in hosts.iter().enumerate() {
        for &m in g {
            owner[m.index()] = Some(slot);
        }
    }
    for node in loose {
        let mut best: Option<(f64, ItemId, usize)> = None;
        for &(m, w) in instance.neighbors(node) {
            let Some(slot) = owner[m.index()] else {
                continue;
            };
            let better = match best {
                None => true,
                Some((bw, bm, _)) => w.total_cmp(&bw).then(m.cmp(&bm)).is_lt(),
            };
            if better {
                best = Some((w, m, slot));
            }
        }
        *step += 1;
        let slot = match best {
            Some((w, m, slot)) => {
                trace.push(TraceStep::Note(format!(
                    "attach {} to the cluster of {} (weight {w})",
                    instance.id_str(node),
                    instance.id_str(m)
                )));
                slot
            }
            None => {
                trace.push(TraceStep::Note(format!(
                    "attach {} to the first cluster (no crossing edge)",
                    instance.id_str(node)
                )));
                0
            }
        };
        hosts[slot].push(node);
        hosts[slot].sort();
        owner[node.index()] = Some(slot);
    }
    hosts.sort_by_key(|g| g[0]);
    hosts
}

/// Layer assignment per item: declared layers, or the type-rank rule when
/// only layer targets are given and the type count equals the layer count.
fn resolve_layers(instance: &ProblemInstance) -> Result<(Vec<usize>, Vec<StructureEstimate>)> {
    let targets = instance
        .layer_targets()
        .ok_or_else(|| Error::LayerData("layer_targets are required".to_string()))?
        .to_vec();
    if let Some(layers) = instance.layers() {
        return Ok((layers.to_vec(), targets));
    }
    if instance.type_count() != targets.len() {
        return Err(Error::LayerData(format!(
            "no layers declared and type count {} differs from the {} layer targets, \
             so the type-rank rule does not apply",
            instance.type_count(),
            targets.len()
        )));
    }
    let layers = instance
        .item_ids()
        .map(|id| instance.type_of(id).0)
        .collect();
    Ok((layers, targets))
}

/// Strategy 4: per-layer balanced clustering plus layer connection.
///
/// Each layer is clustered by the direct strategy against its own target;
/// every cluster below the top layer then hangs off the closest cluster one
/// layer up (minimum-weight crossing edge, whose endpoints act as the
/// cluster heads). The cluster tree is the top layer's spanning tree plus
/// those up-links, rooted at the top-layer cluster with the smallest label.
pub fn strategy_layered(instance: &ProblemInstance) -> Result<ClusteringSolution> {
    let (layers, targets) = resolve_layers(instance)?;
    let depth = targets.len();
    let mut trace = Vec::new();
    let mut step = 0;

    let mut groups_by_layer: Vec<Vec<Vec<ItemId>>> = Vec::with_capacity(depth);
    for d in 1..=depth {
        let mask: Vec<bool> = layers.iter().map(|&l| l == d).collect();
        if !mask.iter().any(|&m| m) {
            return Err(Error::LayerData(format!("layer {d} has no items")));
        }
        let groups = direct_groups(
            instance,
            &targets[d - 1],
            Some(&mask),
            &mut trace,
            &mut step,
        );
        let worst = groups
            .iter()
            .map(|g| delta(&estimate_of(g, instance).unwrap(), &targets[d - 1]).unwrap())
            .max()
            .unwrap_or(0);
        trace.push(TraceStep::Note(format!(
            "layer {d}: {} clusters, per-layer q_cb {worst}",
            groups.len()
        )));
        groups_by_layer.push(groups);
    }

    // global labels: by (layer, smallest member)
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut layer_of_label: Vec<usize> = Vec::new();
    for (d, groups) in groups_by_layer.into_iter().enumerate() {
        for g in groups {
            let label = clusters.len() + 1;
            clusters.push(Cluster::new(label, g));
            layer_of_label.push(d + 1);
        }
    }

    let mut owner: Vec<Option<usize>> = vec![None; instance.item_count()];
    for c in &clusters {
        for &m in &c.members {
            owner[m.index()] = Some(c.label);
        }
    }

    // top layer: spanning tree over its clusters
    let top: Vec<Cluster> = clusters
        .iter()
        .filter(|c| layer_of_label[c.label - 1] == 1)
        .cloned()
        .collect();
    let mut tree_edges: Vec<(usize, usize, f64)> = if top.len() > 1 {
        let top_tree = mst_over_clusters(&top, instance)
            .map_err(|_| Error::LayerData("top-layer clusters are not connected".to_string()))?;
        top_tree.edges()
    } else {
        Vec::new()
    };

    // lower layers: one up-link per cluster via the lightest crossing edge
    for c in &clusters {
        let d = layer_of_label[c.label - 1];
        if d == 1 {
            continue;
        }
        let mut best: Option<(f64, ItemId, ItemId, usize)> = None;
        for &m in &c.members {
            for &(n, w) in instance.neighbors(m) {
                let Some(other) = owner[n.index()] else {
                    continue;
                };
                if layer_of_label[other - 1] != d - 1 {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bw, bm, bn, _)) => {
                        w.total_cmp(&bw).then(m.cmp(&bm)).then(n.cmp(&bn)).is_lt()
                    }
                };
                if better {
                    best = Some((w, m, n, other));
                }
            }
        }
        let Some((w, m, n, parent)) = best else {
            return Err(Error::IsolatedCluster(c.label));
        };
        tree_edges.push((parent, c.label, w));
        trace.push(TraceStep::Note(format!(
            "cluster {} connects to cluster {parent} via heads {} -- {} (weight {w})",
            c.label,
            instance.id_str(m),
            instance.id_str(n)
        )));
    }

    let root = top.iter().map(|c| c.label).min().unwrap();
    let cluster_tree = RootedTree::from_edges(root, &tree_edges)?;
    Ok(ClusteringSolution {
        clusters,
        cluster_tree: Some(cluster_tree),
        trace,
    })
}

/// Hill climbing over single-node reassignments.
///
/// Scans `(node order, target-cluster order)` and applies the first move
/// that strictly lexicographically decreases `(q_cb, q_s)`, with the
/// cluster tree recomputed per candidate; a move that empties its source
/// cluster deletes that cluster. Stops at a local optimum or after
/// `max_rounds` accepted moves.
pub fn local_improve(
    solution: &ClusteringSolution,
    instance: &ProblemInstance,
    max_rounds: usize,
) -> Result<ClusteringSolution> {
    let evaluate = |clusters: &[Cluster]| -> Result<(Option<RootedTree<usize>>, QualityVector)> {
        let tree = mst_over_clusters(clusters, instance).ok();
        let probe = ClusteringSolution {
            clusters: clusters.to_vec(),
            cluster_tree: tree.clone(),
            trace: Vec::new(),
        };
        let q = quality_vector(&probe, instance)?;
        Ok((tree, q))
    };

    let mut clusters = solution.clusters.clone();
    let mut trace = solution.trace.clone();
    let (mut tree, mut quality) = evaluate(&clusters)?;

    for _ in 0..max_rounds {
        let mut accepted = false;
        'scan: for node in instance.item_ids() {
            let from = clusters
                .iter()
                .position(|c| c.contains(node))
                .ok_or(Error::EmptySolution)?;
            let mut labels: Vec<usize> = clusters.iter().map(|c| c.label).collect();
            labels.sort_unstable();
            for target in labels {
                if target == clusters[from].label {
                    continue;
                }
                let mut candidate = clusters.clone();
                let to = candidate.iter().position(|c| c.label == target).unwrap();
                candidate[from].members.retain(|&m| m != node);
                candidate[to].members.push(node);
                candidate[to].members.sort();
                if candidate[from].members.is_empty() {
                    candidate.remove(from);
                }
                let (cand_tree, cand_q) = evaluate(&candidate)?;
                if cand_q.lex_cmp(&quality).is_lt() {
                    trace.push(TraceStep::Note(format!(
                        "improve: moved {} to cluster {target} ({} -> {})",
                        instance.id_str(node),
                        quality,
                        cand_q
                    )));
                    clusters = candidate;
                    tree = cand_tree;
                    quality = cand_q;
                    accepted = true;
                    break 'scan;
                }
            }
        }
        if !accepted {
            break;
        }
    }

    Ok(ClusteringSolution {
        clusters,
        cluster_tree: tree,
        trace,
    })
}

/// One candidate of a Pareto sweep.
#[derive(Debug)]
pub struct SweepEntry {
    pub label: String,
    pub outcome: std::result::Result<(ClusteringSolution, QualityVector), String>,
}

/// All candidates of a sweep plus the labels on the Pareto front.
#[derive(Debug)]
pub struct SweepResult {
    pub entries: Vec<SweepEntry>,
    pub front: Vec<String>,
}

/// Runs every applicable strategy, optionally improves each result, and
/// filters the quality vectors to the Pareto front. Per-candidate failures
/// are reported without aborting the sweep.
pub fn pareto_sweep(instance: &ProblemInstance, improve: bool) -> SweepResult {
    let mut runs: Vec<(String, Result<ClusteringSolution>)> = vec![
        (
            "balance-span".to_string(),
            strategy_balance_then_span(instance),
        ),
        (
            "span-balance/edge".to_string(),
            strategy_spanning_then_balance(instance, CondensingKind::MinEdge),
        ),
        (
            "span-balance/leaf".to_string(),
            strategy_spanning_then_balance(instance, CondensingKind::LeafEdge),
        ),
        (
            "span-balance/root".to_string(),
            strategy_spanning_then_balance(instance, CondensingKind::RootEdge),
        ),
        (
            "span-balance/center".to_string(),
            strategy_spanning_then_balance(instance, CondensingKind::CenterBased(ItemType(1))),
        ),
        ("direct".to_string(), strategy_direct(instance)),
    ];
    if instance.layer_targets().is_some() {
        runs.push(("layered".to_string(), strategy_layered(instance)));
    }

    let mut entries = Vec::new();
    for (label, run) in runs {
        let outcome = run
            .and_then(|solution| {
                if improve {
                    local_improve(&solution, instance, SWEEP_IMPROVE_ROUNDS)
                } else {
                    Ok(solution)
                }
            })
            .and_then(|solution| {
                let q = quality_vector(&solution, instance)?;
                Ok((solution, q))
            })
            .map_err(|e| e.to_string());
        entries.push(SweepEntry { label, outcome });
    }

    let scored: Vec<(String, QualityVector)> = entries
        .iter()
        .filter_map(|e| e.outcome.as_ref().ok().map(|(_, q)| (e.label.clone(), *q)))
        .collect();
    let front = if scored.is_empty() {
        Vec::new()
    } else {
        pareto_front(&scored).expect("nonempty candidate list")
    };
    SweepResult { entries, front }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::paper_instance;
    use crate::model::ProblemDesc;
    use crate::quality::q_cb;

    fn triple_instance() -> ProblemInstance {
        let desc = ProblemDesc {
            type_count: 3,
            items: vec![("x".into(), 1), ("y".into(), 2), ("z".into(), 3)],
            edges: vec![
                ("x".into(), "y".into(), 1.0),
                ("y".into(), "z".into(), 2.0),
                ("x".into(), "z".into(), 3.0),
            ],
            target_cluster: vec![1, 1, 1],
            ..Default::default()
        };
        ProblemInstance::new(desc).unwrap()
    }

    #[test]
    fn perfect_triple_collapses_to_one_cluster() {
        let instance = triple_instance();
        for solution in [
            strategy_balance_then_span(&instance).unwrap(),
            strategy_direct(&instance).unwrap(),
        ] {
            assert_eq!(solution.clusters.len(), 1);
            let q = quality_vector(&solution, &instance).unwrap();
            assert_eq!((q.q_cb, q.q_s), (0, 0.0));
        }
        for kind in [
            CondensingKind::MinEdge,
            CondensingKind::LeafEdge,
            CondensingKind::RootEdge,
            CondensingKind::CenterBased(ItemType(1)),
        ] {
            let solution = strategy_spanning_then_balance(&instance, kind).unwrap();
            let q = quality_vector(&solution, &instance).unwrap();
            assert_eq!((q.q_cb, q.q_s), (0, 0.0), "{kind:?}");
        }
        // the sweep sees six perfect candidates and keeps them all
        let sweep = pareto_sweep(&instance, false);
        assert_eq!(sweep.front.len(), 6);
        for entry in &sweep.entries {
            let (_, q) = entry.outcome.as_ref().unwrap();
            assert_eq!((q.q_cb, q.q_s), (0, 0.0), "{}", entry.label);
        }
    }

    #[test]
    fn cheap_intra_group_edges_give_perfect_balance() {
        // two perfect triples, intra-triple edges cheaper than the bridge
        let desc = ProblemDesc {
            type_count: 3,
            items: vec![
                ("p1".into(), 1),
                ("p2".into(), 2),
                ("p3".into(), 3),
                ("q1".into(), 1),
                ("q2".into(), 2),
                ("q3".into(), 3),
            ],
            edges: vec![
                ("p1".into(), "p2".into(), 0.5),
                ("p2".into(), "p3".into(), 0.75),
                ("q1".into(), "q2".into(), 0.5),
                ("q2".into(), "q3".into(), 0.25),
                ("p3".into(), "q1".into(), 5.0),
            ],
            target_cluster: vec![1, 1, 1],
            ..Default::default()
        };
        let instance = ProblemInstance::new(desc).unwrap();
        for solution in [
            strategy_balance_then_span(&instance).unwrap(),
            strategy_direct(&instance).unwrap(),
        ] {
            assert_eq!(solution.clusters.len(), 2);
            assert_eq!(q_cb(&solution, &instance).unwrap(), 0);
            assert!(solution.validate(&instance).is_empty());
        }
    }

    #[test]
    fn direct_strategy_attaches_leftovers_on_the_reference_instance() {
        let instance = paper_instance();
        let solution = strategy_direct(&instance).unwrap();
        assert!(solution.validate(&instance).is_empty());
        // a19 and a3 are leftover singletons of the merge phase and end up
        // attached, reproducing the reference grouping
        let assignment = solution.assignment(&instance);
        assert_eq!(assignment["a19"], assignment["a14"]);
        assert_eq!(assignment["a3"], assignment["a1"]);
        assert_eq!(q_cb(&solution, &instance).unwrap(), 2);
    }

    #[test]
    fn balance_then_span_keeps_quasi_clusters() {
        let instance = paper_instance();
        let solution = strategy_balance_then_span(&instance).unwrap();
        assert!(solution.validate(&instance).is_empty());
        // a19 cannot merge anywhere without breaching the target, so it
        // stays a quasi-cluster
        let a19 = instance.require("a19").unwrap();
        let holder = solution.clusters.iter().find(|c| c.contains(a19)).unwrap();
        assert_eq!(holder.members.len(), 1);
    }

    #[test]
    fn layered_with_one_layer_matches_direct() {
        let mut desc = paper_instance().to_desc();
        desc.layers = Some(desc.items.iter().map(|(id, _)| (id.clone(), 1)).collect());
        desc.layer_targets = Some(vec![vec![1, 1, 1]]);
        let instance = ProblemInstance::new(desc).unwrap();
        let layered = strategy_layered(&instance).unwrap();
        let direct = strategy_direct(&instance).unwrap();
        assert_eq!(layered.assignment(&instance), direct.assignment(&instance));
    }

    #[test]
    fn layered_two_layers_single_crossing_edge() {
        let desc = ProblemDesc {
            type_count: 2,
            items: vec![
                ("t1".into(), 1),
                ("t2".into(), 2),
                ("b1".into(), 1),
                ("b2".into(), 2),
            ],
            edges: vec![
                ("t1".into(), "t2".into(), 1.0),
                ("b1".into(), "b2".into(), 1.0),
                ("t2".into(), "b1".into(), 7.5),
            ],
            target_cluster: vec![1, 1],
            layers: Some(
                [("t1", 1), ("t2", 1), ("b1", 2), ("b2", 2)]
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), v))
                    .collect(),
            ),
            layer_targets: Some(vec![vec![1, 1], vec![1, 1]]),
            ..Default::default()
        };
        let instance = ProblemInstance::new(desc).unwrap();
        let solution = strategy_layered(&instance).unwrap();
        assert_eq!(solution.clusters.len(), 2);
        let tree = solution.cluster_tree.as_ref().unwrap();
        assert_eq!(tree.len(), 2);
        assert_eq!(tree.edge_weight(1, 2), Some(7.5));
        assert_eq!(tree.root(), 1);
    }

    #[test]
    fn layered_three_layer_hierarchy() {
        // hub-to-edge targets: top (1,3,0,0), middle (0,1,3,0), bottom
        // (0,0,1,3); one top group, one middle, two bottom
        let mut items = Vec::new();
        let mut layers = std::collections::BTreeMap::new();
        let mut edges = Vec::new();
        let group = |prefix: &str,
                         layer: usize,
                         types: &[usize],
                         items: &mut Vec<(String, usize)>,
                         layers: &mut std::collections::BTreeMap<String, usize>,
                         edges: &mut Vec<(String, String, f64)>| {
            let ids: Vec<String> = (1..=types.len()).map(|i| format!("{prefix}{i}")).collect();
            for (id, &ty) in ids.iter().zip(types) {
                items.push((id.clone(), ty));
                layers.insert(id.clone(), layer);
            }
            for other in &ids[1..] {
                edges.push((ids[0].clone(), other.clone(), 0.5));
            }
            ids[0].clone()
        };
        let top = group("t", 1, &[1, 2, 2, 2], &mut items, &mut layers, &mut edges);
        let mid = group("m", 2, &[2, 3, 3, 3], &mut items, &mut layers, &mut edges);
        let b1 = group("b", 3, &[3, 4, 4, 4], &mut items, &mut layers, &mut edges);
        let b2 = group("c", 3, &[3, 4, 4, 4], &mut items, &mut layers, &mut edges);
        edges.push((top.clone(), mid.clone(), 1.0));
        edges.push((mid.clone(), b1, 1.2));
        edges.push((mid.clone(), b2, 1.1));
        let targets = vec![vec![1, 3, 0, 0], vec![0, 1, 3, 0], vec![0, 0, 1, 3]];
        let desc = ProblemDesc {
            type_count: 4,
            items,
            edges,
            target_cluster: vec![1, 3, 0, 0],
            layers: Some(layers),
            layer_targets: Some(targets.clone()),
            root: Some(top),
            ..Default::default()
        };
        let instance = ProblemInstance::new(desc).unwrap();
        let solution = strategy_layered(&instance).unwrap();
        assert!(solution.validate(&instance).is_empty());
        assert_eq!(solution.clusters.len(), 4);
        // every cluster meets its own layer target exactly
        for cluster in &solution.clusters {
            let layer = instance.layers().unwrap()[cluster.members[0].index()];
            let est = estimate_of(&cluster.members, &instance).unwrap();
            assert_eq!(est.counts(), targets[layer - 1].as_slice(), "layer {layer}");
        }
        let tree = solution.cluster_tree.as_ref().unwrap();
        assert_eq!(tree.root(), 1);
        assert_eq!(tree.height(), 2);
        assert_eq!(tree.children(2), &[3, 4]); // both bottom groups hang off the middle
    }

    #[test]
    fn layered_reports_isolated_clusters() {
        let desc = ProblemDesc {
            type_count: 2,
            items: vec![
                ("t1".into(), 1),
                ("t2".into(), 2),
                ("b1".into(), 1),
                ("b2".into(), 2),
            ],
            edges: vec![
                ("t1".into(), "t2".into(), 1.0),
                ("b1".into(), "b2".into(), 1.0),
            ],
            target_cluster: vec![1, 1],
            layers: Some(
                [("t1", 1), ("t2", 1), ("b1", 2), ("b2", 2)]
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), v))
                    .collect(),
            ),
            layer_targets: Some(vec![vec![1, 1], vec![1, 1]]),
            ..Default::default()
        };
        let instance = ProblemInstance::new(desc).unwrap();
        assert!(matches!(
            strategy_layered(&instance),
            Err(Error::IsolatedCluster(2))
        ));
    }

    #[test]
    fn improve_is_a_fixed_point_on_a_local_optimum() {
        let instance = triple_instance();
        let solution = strategy_direct(&instance).unwrap();
        let improved = local_improve(&solution, &instance, 100).unwrap();
        assert_eq!(improved.clusters, solution.clusters);
    }

    #[test]
    fn improve_never_worsens_quality() {
        let instance = paper_instance();
        for entry in pareto_sweep(&instance, false).entries {
            let (solution, before) = entry.outcome.expect("all candidates solve the fixture");
            let improved = local_improve(&solution, &instance, 32).unwrap();
            let after = quality_vector(&improved, &instance).unwrap();
            assert!(
                after.lex_cmp(&before).is_le(),
                "{}: {} -> {}",
                entry.label,
                before,
                after
            );
        }
    }

    #[test]
    fn sweep_isolates_failing_candidates() {
        // no type-1 items: the center candidate fails, everything else runs
        let desc = ProblemDesc {
            type_count: 3,
            items: vec![("x".into(), 2), ("y".into(), 2), ("z".into(), 3)],
            edges: vec![("x".into(), "y".into(), 1.0), ("y".into(), "z".into(), 2.0)],
            target_cluster: vec![0, 2, 1],
            ..Default::default()
        };
        let instance = ProblemInstance::new(desc).unwrap();
        let sweep = pareto_sweep(&instance, false);
        let center = sweep
            .entries
            .iter()
            .find(|e| e.label == "span-balance/center")
            .unwrap();
        assert!(center.outcome.is_err());
        let successes = sweep.entries.iter().filter(|e| e.outcome.is_ok()).count();
        assert!(successes >= 4);
        assert!(!sweep.front.is_empty());
    }

    #[test]
    fn sweep_front_matches_pareto_filter() {
        let instance = paper_instance();
        let sweep = pareto_sweep(&instance, false);
        let scored: Vec<(String, QualityVector)> = sweep
            .entries
            .iter()
            .filter_map(|e| e.outcome.as_ref().ok().map(|(_, q)| (e.label.clone(), *q)))
            .collect();
        assert_eq!(sweep.front, pareto_front(&scored).unwrap());
        assert!(sweep.front.contains(&"span-balance/leaf".to_string()) || !sweep.front.is_empty());
    }
}
