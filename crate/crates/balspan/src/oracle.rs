//! Exhaustive reference implementations for small instances, used by tests
//! and the CLI verification mode. Everything here is guarded to at most
//! [`ORACLE_LIMIT`] items.

use crate::error::{Error, Result};
use crate::fixture;
use crate::model::{ItemId, ProblemInstance, TraceStep};
use crate::quality::{delta, estimate_of, q_cb};
use crate::schemes::CondensingKind;
use crate::strategies::strategy_spanning_then_balance;

/// Hard size guard for the exhaustive operations.
pub const ORACLE_LIMIT: usize = 10;

fn guard(instance: &ProblemInstance) -> Result<()> {
    if instance.item_count() > ORACLE_LIMIT {
        return Err(Error::OracleGuard {
            size: instance.item_count(),
            limit: ORACLE_LIMIT,
        });
    }
    Ok(())
}

/// One enumerated spanning tree.
#[derive(Debug, Clone)]
pub struct EnumeratedTree {
    pub edges: Vec<(ItemId, ItemId, f64)>,
    pub total_weight: f64,
}

/// All spanning trees of a small instance (up to `limit`).
#[derive(Debug, Clone)]
pub struct TreeEnumeration {
    pub trees: Vec<EnumeratedTree>,
    /// Set when enumeration stopped at `limit` before finishing.
    pub truncated: bool,
}

impl TreeEnumeration {
    pub fn min_weight(&self) -> Option<f64> {
        self.trees
            .iter()
            .map(|t| t.total_weight)
            .min_by(f64::total_cmp)
    }
}

/// Enumerates every spanning tree by backtracking over acyclic edge subsets.
pub fn enumerate_spanning_trees(
    instance: &ProblemInstance,
    limit: usize,
) -> Result<TreeEnumeration> {
    guard(instance)?;
    let n = instance.item_count();
    let edges: Vec<(usize, usize, f64)> = instance
        .edges()
        .iter()
        .map(|e| (e.u.index(), e.v.index(), e.w))
        .collect();
    let mut out = TreeEnumeration {
        trees: Vec::new(),
        truncated: false,
    };
    if n == 0 {
        return Ok(out);
    }
    if n == 1 {
        out.trees.push(EnumeratedTree {
            edges: Vec::new(),
            total_weight: 0.0,
        });
        return Ok(out);
    }

    // roots[i] = representative of i under the currently chosen edges
    fn rep(roots: &[usize], mut x: usize) -> usize {
        while roots[x] != x {
            x = roots[x];
        }
        x
    }

    fn recurse(
        idx: usize,
        chosen: &mut Vec<usize>,
        roots: Vec<usize>,
        n: usize,
        edges: &[(usize, usize, f64)],
        limit: usize,
        out: &mut TreeEnumeration,
    ) {
        if chosen.len() == n - 1 {
            if out.trees.len() == limit {
                out.truncated = true;
                return;
            }
            let picked: Vec<(ItemId, ItemId, f64)> = chosen
                .iter()
                .map(|&i| (ItemId(edges[i].0), ItemId(edges[i].1), edges[i].2))
                .collect();
            let mut total: Vec<f64> = picked.iter().map(|e| e.2).collect();
            total.sort_by(f64::total_cmp); // canonical summation order
            out.trees.push(EnumeratedTree {
                edges: picked,
                total_weight: total.into_iter().sum(),
            });
            return;
        }
        if idx == edges.len() || edges.len() - idx < n - 1 - chosen.len() || out.truncated {
            return;
        }
        let (u, v, _) = edges[idx];
        let (ru, rv) = (rep(&roots, u), rep(&roots, v));
        if ru != rv {
            let mut joined = roots.clone();
            joined[ru] = rv;
            chosen.push(idx);
            recurse(idx + 1, chosen, joined, n, edges, limit, out);
            chosen.pop();
        }
        recurse(idx + 1, chosen, roots, n, edges, limit, out);
    }

    let roots: Vec<usize> = (0..n).collect();
    let mut chosen = Vec::new();
    recurse(0, &mut chosen, roots, n, &edges, limit, &mut out);
    Ok(out)
}

/// Minimum achievable balance quality over all partitions into at most
/// `max_clusters` blocks, with one witness partition.
///
/// The witness is the first optimum in restricted-growth-string order, i.e.
/// the lexicographically smallest canonical encoding among the optima.
pub fn best_qcb(
    instance: &ProblemInstance,
    max_clusters: usize,
) -> Result<(usize, Vec<Vec<ItemId>>)> {
    guard(instance)?;
    if instance.item_count() == 0 || max_clusters == 0 {
        return Err(Error::EmptyInput);
    }
    let n = instance.item_count();
    let e0 = instance.target_cluster();

    let mut assignment = vec![0usize; n];
    let mut best: Option<(usize, Vec<usize>)> = None;

    fn recurse(
        i: usize,
        used: usize,
        assignment: &mut Vec<usize>,
        best: &mut Option<(usize, Vec<usize>)>,
        instance: &ProblemInstance,
        e0: &crate::quality::StructureEstimate,
        max_clusters: usize,
    ) {
        let n = instance.item_count();
        if i == n {
            let mut worst = 0;
            for block in 0..used {
                let members: Vec<ItemId> = (0..n)
                    .filter(|&j| assignment[j] == block)
                    .map(ItemId)
                    .collect();
                let est = estimate_of(&members, instance).unwrap();
                worst = worst.max(delta(&est, e0).unwrap());
            }
            let improved = match best {
                None => true,
                Some((b, _)) => worst < *b,
            };
            if improved {
                *best = Some((worst, assignment.clone()));
            }
            return;
        }
        let cap = (used + 1).min(max_clusters);
        for block in 0..cap {
            assignment[i] = block;
            recurse(
                i + 1,
                used.max(block + 1),
                assignment,
                best,
                instance,
                e0,
                max_clusters,
            );
        }
    }

    recurse(0, 0, &mut assignment, &mut best, instance, e0, max_clusters);
    let (value, assignment) = best.expect("at least one partition exists");
    let blocks = assignment.iter().copied().max().unwrap() + 1;
    let witness: Vec<Vec<ItemId>> = (0..blocks)
        .map(|b| (0..n).filter(|&j| assignment[j] == b).map(ItemId).collect())
        .collect();
    Ok((value, witness))
}

/// Outcome of replaying the bundled reference trace.
#[derive(Debug, Clone)]
pub struct TraceReplay {
    pub matched: bool,
    pub diffs: Vec<String>,
    pub q_cb: usize,
}

/// The published step-by-step result of the leaf scheme on the bundled
/// 19-item instance: selected edges, cluster memberships, the final
/// attachment, the two quasi-cluster estimates and the overall balance.
struct ExpectedTrace {
    steps: [(&'static str, &'static str, f64, &'static [&'static str]); 6],
    attached: (&'static str, usize),
    estimates: [(usize, &'static [usize]); 2],
    q_cb: usize,
}

const EXPECTED: ExpectedTrace = ExpectedTrace {
    steps: [
        ("a18", "a14", 0.5, &["a14", "a17", "a18"]),
        ("a8", "a4", 0.6, &["a4", "a7", "a8"]),
        ("a12", "a6", 1.0, &["a6", "a11", "a12"]),
        ("a15", "a13", 1.1, &["a13", "a15", "a16"]),
        ("a10", "a5", 1.2, &["a5", "a9", "a10"]),
        ("a2", "a1", 2.5, &["a1", "a2", "a3"]),
    ],
    attached: ("a19", 1),
    estimates: [(1, &[1, 1, 2]), (6, &[2, 1, 0])],
    q_cb: 2,
};

/// Replays the leaf scheme on the bundled instance and diffs it against the
/// hard-coded reference trace.
pub fn replay_paper_trace() -> TraceReplay {
    let instance = fixture::paper_instance();
    replay_trace_on(&instance)
}

/// [`replay_paper_trace`] against an arbitrary (e.g. perturbed) variant of
/// the bundled instance.
pub fn replay_trace_on(instance: &ProblemInstance) -> TraceReplay {
    let mut diffs = Vec::new();
    let solution = match strategy_spanning_then_balance(instance, CondensingKind::LeafEdge) {
        Ok(s) => s,
        Err(e) => {
            return TraceReplay {
                matched: false,
                diffs: vec![format!("solver failed: {e}")],
                q_cb: 0,
            }
        }
    };

    let condense: Vec<_> = solution
        .trace
        .iter()
        .filter_map(|s| match s {
            TraceStep::Condense(c) => Some(c),
            _ => None,
        })
        .collect();
    if condense.len() != EXPECTED.steps.len() {
        diffs.push(format!(
            "expected {} condensing steps, got {}",
            EXPECTED.steps.len(),
            condense.len()
        ));
    }
    for (i, (from, to, w, members)) in EXPECTED.steps.iter().enumerate() {
        let Some(record) = condense.get(i) else {
            diffs.push(format!("step {}: missing", i + 1));
            continue;
        };
        let got_edge = (
            instance.id_str(record.edge.0).to_string(),
            instance.id_str(record.edge.1).to_string(),
        );
        if got_edge != (from.to_string(), to.to_string()) || record.weight != *w {
            diffs.push(format!(
                "step {}: selected edge ({}, {}) at {}, expected ({from}, {to}) at {w}",
                i + 1,
                got_edge.0,
                got_edge.1,
                record.weight
            ));
        }
        let got_members: Vec<&str> = record.members.iter().map(|&m| instance.id_str(m)).collect();
        if got_members != *members {
            diffs.push(format!(
                "step {}: cluster {:?}, expected {:?}",
                i + 1,
                got_members,
                members
            ));
        }
    }

    let attach: Vec<_> = solution
        .trace
        .iter()
        .filter_map(|s| match s {
            TraceStep::Attach(a) => Some(a),
            _ => None,
        })
        .collect();
    if attach.len() != 1 {
        diffs.push(format!("expected 1 attachment step, got {}", attach.len()));
    } else {
        let a = attach[0];
        let got = (instance.id_str(a.node), a.label);
        if got != EXPECTED.attached {
            diffs.push(format!(
                "attachment: {} -> cluster {}, expected {} -> cluster {}",
                got.0, got.1, EXPECTED.attached.0, EXPECTED.attached.1
            ));
        }
    }

    for (label, counts) in EXPECTED.estimates {
        match solution.clusters.iter().find(|c| c.label == label) {
            None => diffs.push(format!("cluster {label}: missing")),
            Some(cluster) => {
                let est = estimate_of(&cluster.members, instance).unwrap();
                if est.counts() != counts {
                    diffs.push(format!(
                        "cluster {label}: estimate {est}, expected {:?}",
                        counts
                    ));
                }
            }
        }
    }

    for (id, label) in fixture::reference_assignment() {
        match instance
            .lookup(id)
            .and_then(|item| solution.cluster_of(item))
        {
            Some(got) if got == *label => {}
            got => diffs.push(format!("{id}: assigned {:?}, expected {label}", got)),
        }
    }

    let achieved = q_cb(&solution, instance).unwrap_or(usize::MAX);
    if achieved != EXPECTED.q_cb {
        diffs.push(format!(
            "overall balance {achieved}, expected {}",
            EXPECTED.q_cb
        ));
    }

    TraceReplay {
        matched: diffs.is_empty(),
        diffs,
        q_cb: achieved,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ProblemDesc;

    fn small(n: usize, edges: &[(usize, usize, f64)]) -> ProblemInstance {
        let desc = ProblemDesc {
            type_count: 3,
            items: (1..=n)
                .map(|i| (format!("a{i}"), 1 + (i - 1) % 3))
                .collect(),
            edges: edges
                .iter()
                .map(|&(u, v, w)| (format!("a{}", u + 1), format!("a{}", v + 1), w))
                .collect(),
            target_cluster: vec![1, 1, 1],
            ..Default::default()
        };
        ProblemInstance::new(desc).unwrap()
    }

    #[test]
    fn triangle_has_three_trees() {
        let inst = small(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]);
        let all = enumerate_spanning_trees(&inst, 1000).unwrap();
        assert_eq!(all.trees.len(), 3);
        assert!(!all.truncated);
    }

    #[test]
    fn a_tree_has_one_spanning_tree() {
        let inst = small(4, &[(0, 1, 1.0), (1, 2, 1.0), (1, 3, 1.0)]);
        let all = enumerate_spanning_trees(&inst, 1000).unwrap();
        assert_eq!(all.trees.len(), 1);
    }

    #[test]
    fn k4_has_sixteen_trees() {
        // Cayley: 4^{4-2} = 16
        let inst = small(
            4,
            &[
                (0, 1, 1.0),
                (0, 2, 1.0),
                (0, 3, 1.0),
                (1, 2, 1.0),
                (1, 3, 1.0),
                (2, 3, 1.0),
            ],
        );
        let all = enumerate_spanning_trees(&inst, 1000).unwrap();
        assert_eq!(all.trees.len(), 16);
    }

    #[test]
    fn enumeration_honors_the_limit() {
        let inst = small(
            4,
            &[
                (0, 1, 1.0),
                (0, 2, 1.0),
                (0, 3, 1.0),
                (1, 2, 1.0),
                (1, 3, 1.0),
                (2, 3, 1.0),
            ],
        );
        let some = enumerate_spanning_trees(&inst, 5).unwrap();
        assert_eq!(some.trees.len(), 5);
        assert!(some.truncated);
    }

    #[test]
    fn oracle_guard_rejects_large_instances() {
        let inst = crate::fixture::paper_instance();
        assert!(matches!(
            enumerate_spanning_trees(&inst, 10),
            Err(Error::OracleGuard {
                size: 19,
                limit: 10
            })
        ));
        assert!(matches!(best_qcb(&inst, 3), Err(Error::OracleGuard { .. })));
    }

    #[test]
    fn best_qcb_perfect_triple() {
        let inst = small(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        let (value, witness) = best_qcb(&inst, 3).unwrap();
        assert_eq!(value, 0);
        assert_eq!(witness.len(), 1);
        assert_eq!(witness[0].len(), 3);
    }

    #[test]
    fn best_qcb_two_same_type_items() {
        // both type 1 against target (1,1,1):
        // together (2,0,0) deviates 3, apart each (1,0,0) deviates 2
        let desc = ProblemDesc {
            type_count: 3,
            items: vec![("a1".into(), 1), ("a2".into(), 1)],
            edges: vec![("a1".into(), "a2".into(), 1.0)],
            target_cluster: vec![1, 1, 1],
            ..Default::default()
        };
        let inst = ProblemInstance::new(desc).unwrap();
        let (value, witness) = best_qcb(&inst, 2).unwrap();
        assert_eq!(value, 2);
        assert_eq!(witness.len(), 2);
    }

    #[test]
    fn best_qcb_two_perfect_triples() {
        let inst = small(
            6,
            &[
                (0, 1, 1.0),
                (1, 2, 1.0),
                (2, 3, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
            ],
        );
        let (value, _) = best_qcb(&inst, 6).unwrap();
        assert_eq!(value, 0);
    }

    #[test]
    fn best_qcb_is_monotone_in_max_clusters() {
        let inst = small(
            6,
            &[
                (0, 1, 1.0),
                (1, 2, 1.0),
                (2, 3, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
            ],
        );
        let mut prev = usize::MAX;
        for k in 1..=6 {
            let (value, _) = best_qcb(&inst, k).unwrap();
            assert!(value <= prev, "k={k}: {value} > {prev}");
            prev = value;
        }
    }

    #[test]
    fn shipped_trace_matches() {
        let replay = replay_paper_trace();
        assert!(replay.matched, "{:?}", replay.diffs);
        assert_eq!(replay.q_cb, 2);
    }

    #[test]
    fn perturbed_weight_is_detected_at_step_one() {
        let mut desc = crate::fixture::paper_desc();
        for e in &mut desc.edges {
            if (e.0.as_str(), e.1.as_str()) == ("a14", "a18") {
                e.2 = 9.9;
            }
        }
        let instance = ProblemInstance::new(desc).unwrap();
        let replay = replay_trace_on(&instance);
        assert!(!replay.matched);
        assert!(
            replay.diffs.iter().any(|d| d.starts_with("step 1:")),
            "{:?}",
            replay.diffs
        );
    }

    #[test]
    fn tabulated_leaf_distance_variant_still_matches() {
        // the source tables disagree on (a6, a11): 1.1 in the weight matrix,
        // 1.3 in the leaf-distance table the algorithm consumes. The bundled
        // fixture uses 1.3; this documents that 1.1 leaves the trace intact
        // because a11 is consumed by growth, not by leaf selection.
        let mut desc = crate::fixture::paper_desc();
        for e in &mut desc.edges {
            if (e.0.as_str(), e.1.as_str()) == ("a6", "a11") {
                e.2 = 1.1;
            }
        }
        let instance = ProblemInstance::new(desc).unwrap();
        let replay = replay_trace_on(&instance);
        assert!(replay.matched, "{:?}", replay.diffs);
    }
}
