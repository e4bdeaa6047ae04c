//! Quality measures: per-cluster structure estimates, the deviation `delta`,
//! solution balance `q_cb`, tree proximity `q_s`, quality vectors and Pareto
//! filtering. All pure functions.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{
    Cluster, ClusteringSolution, ItemId, ItemType, ProblemInstance, RootedTree, TargetTreeSpec,
};

/// Per-type element counts of a cluster (or a target): entry `t-1` counts
/// the elements of type `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureEstimate(Vec<usize>);

impl StructureEstimate {
    pub fn new(counts: Vec<usize>) -> Self {
        Self(counts)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn count_of(&self, ty: ItemType) -> usize {
        self.0[ty.0 - 1]
    }

    pub fn bump(&mut self, ty: ItemType) {
        self.0[ty.0 - 1] += 1;
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Componentwise `self >= other`.
    pub fn covers(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Componentwise `self <= cap`.
    pub fn within(&self, cap: &Self) -> bool {
        cap.covers(self)
    }

    /// Sum of two estimates (used for merge feasibility checks).
    pub fn plus(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for StructureEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Counts the members of `cluster` by type.
pub fn structure_estimate(
    cluster: &Cluster,
    instance: &ProblemInstance,
) -> Result<StructureEstimate> {
    estimate_of(&cluster.members, instance)
}

/// [`structure_estimate`] over a plain member list.
pub fn estimate_of(members: &[ItemId], instance: &ProblemInstance) -> Result<StructureEstimate> {
    let mut est = StructureEstimate::zeros(instance.type_count());
    for &m in members {
        if m.index() >= instance.item_count() {
            return Err(Error::UnknownItem(format!("#{}", m.index())));
        }
        est.bump(instance.type_of(m));
    }
    Ok(est)
}

/// Deviation between two estimates: the sum of componentwise absolute
/// differences.
pub fn delta(e: &StructureEstimate, e0: &StructureEstimate) -> Result<usize> {
    if e.len() != e0.len() {
        return Err(Error::LengthMismatch {
            left: e.len(),
            right: e0.len(),
        });
    }
    Ok(e.counts()
        .iter()
        .zip(e0.counts())
        .map(|(a, b)| a.max(b) - a.min(b))
        .sum())
}

/// Balance quality of a solution: the worst per-cluster deviation from the
/// instance target structure.
pub fn q_cb(solution: &ClusteringSolution, instance: &ProblemInstance) -> Result<usize> {
    if solution.clusters.is_empty() {
        return Err(Error::EmptySolution);
    }
    let e0 = instance.target_cluster();
    let mut worst = 0;
    for cluster in &solution.clusters {
        let e = structure_estimate(cluster, instance)?;
        worst = worst.max(delta(&e, e0)?);
    }
    Ok(worst)
}

/// Proximity of a tree to the required shape; 0 is a perfect match, larger
/// is worse.
///
/// - `MinWeight`: total edge weight.
/// - `DegreeBalanced(k)`: sum over internal nodes of `|children - k|`.
/// - `HeightBalanced(h)`: `|height - h|` plus the spread between the deepest
///   and shallowest leaf.
pub fn tree_proximity<N: Copy + Ord + fmt::Debug>(
    tree: &RootedTree<N>,
    spec: TargetTreeSpec,
) -> f64 {
    match spec {
        TargetTreeSpec::MinWeight => tree.total_weight(),
        TargetTreeSpec::DegreeBalanced(k) => tree
            .nodes()
            .filter(|&n| !tree.children(n).is_empty())
            .map(|n| {
                let c = tree.children(n).len();
                c.max(k) - c.min(k)
            })
            .sum::<usize>() as f64,
        TargetTreeSpec::HeightBalanced(h) => {
            let height = tree.height();
            let depths: Vec<usize> = tree.leaves().iter().map(|&l| tree.depth(l)).collect();
            let max = depths.iter().copied().max().unwrap_or(0);
            let min = depths.iter().copied().min().unwrap_or(0);
            (height.max(h) - height.min(h)) as f64 + (max - min) as f64
        }
    }
}

/// The bicriteria quality `(q_cb, q_s)`, ordered lexicographically.
///
/// A solution without a cluster tree gets the infinite sentinel for `q_s`
/// (absent structure is not perfect structure); [`QualityVector::structure_missing`]
/// flags it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityVector {
    pub q_cb: usize,
    pub q_s: f64,
}

impl QualityVector {
    pub fn structure_missing(&self) -> bool {
        self.q_s.is_infinite()
    }

    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.q_cb
            .cmp(&other.q_cb)
            .then_with(|| self.q_s.total_cmp(&other.q_s))
    }

    /// Weak Pareto dominance with strict inequality somewhere; equal vectors
    /// do not dominate each other.
    pub fn dominates(&self, other: &Self) -> bool {
        self.q_cb <= other.q_cb
            && self.q_s <= other.q_s
            && (self.q_cb != other.q_cb || self.q_s != other.q_s)
    }
}

impl fmt::Display for QualityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.structure_missing() {
            write!(f, "({}, missing)", self.q_cb)
        } else {
            write!(f, "({}, {})", self.q_cb, self.q_s)
        }
    }
}

/// Evaluates a solution against the instance targets.
pub fn quality_vector(
    solution: &ClusteringSolution,
    instance: &ProblemInstance,
) -> Result<QualityVector> {
    let q_cb = q_cb(solution, instance)?;
    let q_s = match &solution.cluster_tree {
        Some(tree) => tree_proximity(tree, instance.target_tree()),
        None => f64::INFINITY,
    };
    Ok(QualityVector { q_cb, q_s })
}

/// Labels of all non-dominated candidates, ordered by `(q_cb, q_s, label)`.
pub fn pareto_front<L: Clone + Ord>(candidates: &[(L, QualityVector)]) -> Result<Vec<L>> {
    if candidates.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut front: Vec<&(L, QualityVector)> = candidates
        .iter()
        .filter(|(_, q)| !candidates.iter().any(|(_, other)| other.dominates(q)))
        .collect();
    front.sort_by(|(la, qa), (lb, qb)| qa.lex_cmp(qb).then_with(|| la.cmp(lb)));
    Ok(front.into_iter().map(|(l, _)| l.clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Cluster, ProblemDesc, ProblemInstance};

    fn est(v: &[usize]) -> StructureEstimate {
        StructureEstimate::new(v.to_vec())
    }

    fn tiny_instance(types: &[usize], l: usize) -> ProblemInstance {
        let desc = ProblemDesc {
            type_count: l,
            items: types
                .iter()
                .enumerate()
                .map(|(i, t)| (format!("a{}", i + 1), *t))
                .collect(),
            edges: vec![],
            target_cluster: vec![1; l],
            ..Default::default()
        };
        ProblemInstance::new(desc).unwrap()
    }

    #[test]
    fn structure_estimate_counts_types() {
        // one type-2, two type-3, one type-4 element with l = 4
        let instance = tiny_instance(&[2, 3, 3, 4], 4);
        let cluster = Cluster::new(5, instance.item_ids().collect());
        let e = structure_estimate(&cluster, &instance).unwrap();
        assert_eq!(e, est(&[0, 1, 2, 1]));
        assert_eq!(e.total(), cluster.members.len());
    }

    #[test]
    fn structure_estimate_singleton() {
        let instance = tiny_instance(&[1], 3);
        let cluster = Cluster::new(1, vec![instance.lookup("a1").unwrap()]);
        assert_eq!(
            structure_estimate(&cluster, &instance).unwrap(),
            est(&[1, 0, 0])
        );
    }

    #[test]
    fn structure_estimate_mixed_triple() {
        let instance = tiny_instance(&[1, 2, 3], 3);
        let cluster = Cluster::new(2, instance.item_ids().collect());
        assert_eq!(
            structure_estimate(&cluster, &instance).unwrap(),
            est(&[1, 1, 1])
        );
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&est(&[1, 1, 1]), &est(&[1, 1, 1])).unwrap(), 0);
        assert_eq!(delta(&est(&[2, 1, 0]), &est(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(delta(&est(&[1, 1, 2]), &est(&[1, 1, 1])).unwrap(), 1);
        assert!(delta(&est(&[1, 1]), &est(&[1, 1, 1])).is_err());
    }

    #[test]
    fn q_cb_six_singletons() {
        // six type-1 singletons against target (1,1,1): each deviates by 2
        let instance = tiny_instance(&[1, 1, 1, 1, 1, 1], 3);
        let clusters = instance
            .item_ids()
            .enumerate()
            .map(|(i, id)| Cluster::new(i + 1, vec![id]))
            .collect();
        let solution = ClusteringSolution {
            clusters,
            cluster_tree: None,
            trace: vec![],
        };
        assert_eq!(q_cb(&solution, &instance).unwrap(), 2);
    }

    #[test]
    fn q_cb_rejects_empty_solution() {
        let instance = tiny_instance(&[1], 3);
        let solution = ClusteringSolution {
            clusters: vec![],
            cluster_tree: None,
            trace: vec![],
        };
        assert!(matches!(
            q_cb(&solution, &instance),
            Err(Error::EmptySolution)
        ));
    }

    #[test]
    fn q_cb_invariant_under_relabeling() {
        let instance = tiny_instance(&[1, 2, 3, 1, 1], 3);
        let a = Cluster::new(1, vec![ItemId(0), ItemId(1), ItemId(2)]);
        let b = Cluster::new(2, vec![ItemId(3), ItemId(4)]);
        let fwd = ClusteringSolution {
            clusters: vec![a.clone(), b.clone()],
            cluster_tree: None,
            trace: vec![],
        };
        let rev = ClusteringSolution {
            clusters: vec![
                Cluster::new(9, b.members.clone()),
                Cluster::new(4, a.members.clone()),
            ],
            cluster_tree: None,
            trace: vec![],
        };
        assert_eq!(
            q_cb(&fwd, &instance).unwrap(),
            q_cb(&rev, &instance).unwrap()
        );
    }

    fn ternary_two_level() -> RootedTree<usize> {
        // root 0 with children 1,2,3; node 1 and 2 each with three children
        let edges = vec![
            (0, 1, 1.0),
            (0, 2, 1.0),
            (0, 3, 1.0),
            (1, 4, 1.0),
            (1, 5, 1.0),
            (1, 6, 1.0),
            (2, 7, 1.0),
            (2, 8, 1.0),
            (2, 9, 1.0),
            (3, 10, 1.0),
            (3, 11, 1.0),
            (3, 12, 1.0),
        ];
        RootedTree::from_edges(0, &edges).unwrap()
    }

    #[test]
    fn degree_proximity_zero_on_perfect_ternary() {
        let tree = ternary_two_level();
        assert_eq!(
            tree_proximity(&tree, TargetTreeSpec::DegreeBalanced(3)),
            0.0
        );
    }

    #[test]
    fn degree_proximity_on_path() {
        // path of 4 nodes rooted at an end: three internal nodes with one child each
        let tree =
            RootedTree::from_edges(0usize, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(
            tree_proximity(&tree, TargetTreeSpec::DegreeBalanced(3)),
            6.0
        );
    }

    #[test]
    fn min_weight_proximity_is_total_weight() {
        let tree = RootedTree::from_edges(0usize, &[(0, 1, 1.5), (1, 2, 2.25)]).unwrap();
        assert_eq!(tree_proximity(&tree, TargetTreeSpec::MinWeight), 3.75);
    }

    #[test]
    fn height_proximity() {
        let tree = ternary_two_level();
        // height 2, all leaves at depth 2 except children of node 3... all at 2
        assert_eq!(
            tree_proximity(&tree, TargetTreeSpec::HeightBalanced(2)),
            0.0
        );
        assert_eq!(
            tree_proximity(&tree, TargetTreeSpec::HeightBalanced(4)),
            2.0
        );
        let skew =
            RootedTree::from_edges(0usize, &[(0, 1, 1.0), (1, 2, 1.0), (0, 3, 1.0)]).unwrap();
        // height 2, leaf depths 2 and 1
        assert_eq!(
            tree_proximity(&skew, TargetTreeSpec::HeightBalanced(2)),
            1.0
        );
    }

    #[test]
    fn quality_vector_flags_missing_tree() {
        let instance = tiny_instance(&[1, 2, 3], 3);
        let solution = ClusteringSolution {
            clusters: vec![Cluster::new(1, instance.item_ids().collect())],
            cluster_tree: None,
            trace: vec![],
        };
        let q = quality_vector(&solution, &instance).unwrap();
        assert_eq!(q.q_cb, 0);
        assert!(q.structure_missing());

        let with_tree = ClusteringSolution {
            cluster_tree: Some(RootedTree::singleton(1)),
            ..solution
        };
        let q = quality_vector(&with_tree, &instance).unwrap();
        assert_eq!(q.q_cb, 0);
        assert_eq!(q.q_s, 0.0);
    }

    fn qv(q_cb: usize, q_s: f64) -> QualityVector {
        QualityVector { q_cb, q_s }
    }

    #[test]
    fn pareto_front_examples() {
        let cands = vec![("A", qv(2, 5.0)), ("B", qv(1, 7.0)), ("C", qv(2, 6.0))];
        assert_eq!(pareto_front(&cands).unwrap(), vec!["B", "A"]);

        assert_eq!(pareto_front(&[("A", qv(0, 0.0))]).unwrap(), vec!["A"]);
        assert_eq!(
            pareto_front(&[("A", qv(1, 1.0)), ("B", qv(1, 1.0))]).unwrap(),
            vec!["A", "B"]
        );
        assert!(pareto_front::<&str>(&[]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn est_strategy() -> impl Strategy<Value = StructureEstimate> {
            proptest::collection::vec(0usize..6, 4).prop_map(StructureEstimate::new)
        }

        proptest! {
            #[test]
            fn delta_is_a_metric(x in est_strategy(), y in est_strategy(), z in est_strategy()) {
                let d = |a: &StructureEstimate, b: &StructureEstimate| delta(a, b).unwrap();
                prop_assert_eq!(d(&x, &x), 0);
                prop_assert_eq!(d(&x, &y), d(&y, &x));
                prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
            }

            #[test]
            fn pareto_front_is_exactly_the_nondominated_set(
                qs in proptest::collection::vec((0usize..4, 0u32..6), 1..12)
            ) {
                let cands: Vec<(usize, QualityVector)> = qs
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| (i, qv(a, b as f64)))
                    .collect();
                let front = pareto_front(&cands).unwrap();
                for (label, q) in &cands {
                    let dominated = cands.iter().any(|(_, other)| other.dominates(q));
                    prop_assert_eq!(front.contains(label), !dominated);
                }
                // no member dominates another
                for a in &front {
                    for b in &front {
                        let qa = cands[*a].1;
                        let qb = cands[*b].1;
                        prop_assert!(!qa.dominates(&qb));
                    }
                }
            }
        }
    }
}
