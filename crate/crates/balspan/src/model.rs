//! Core domain types shared by all solvers: typed items, problem instances,
//! rooted trees, clusters and clustering solutions.
//!
//! Everything here is an immutable value after construction. Item ids are
//! opaque tokens; their declaration order in the instance is the canonical
//! tie-break order used by every deterministic selection rule in the crate.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::quality::StructureEstimate;

/// 1-based element type index (`1..=type_count` of the owning instance).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemType(pub usize);

impl fmt::Display for ItemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Handle to an item, equal to its position in declaration order.
///
/// Comparing two `ItemId`s compares declaration order, so sorting by
/// `ItemId` is the deterministic item order used for tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemId(pub(crate) usize);

impl ItemId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A typed element of the initial set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub id: String,
    pub ty: ItemType,
}

/// Undirected weighted edge between two declared items.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedEdge {
    pub u: ItemId,
    pub v: ItemId,
    pub w: f64,
}

/// Required shape for the spanning structure over clusters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TargetTreeSpec {
    /// Minimize total edge weight.
    #[default]
    MinWeight,
    /// Every internal node should have exactly this many children.
    DegreeBalanced(usize),
    /// The tree should have this height with all leaves at equal depth.
    HeightBalanced(usize),
}

/// Raw, unvalidated problem description with string item ids.
///
/// This is the shape problems arrive in (from a file or built in code).
/// [`validate_instance`] reports every violation; [`ProblemInstance::new`]
/// accepts only descriptions with no violations.
#[derive(Debug, Clone, Default)]
pub struct ProblemDesc {
    pub type_count: usize,
    /// `(id, type)` pairs in declaration order.
    pub items: Vec<(String, usize)>,
    /// `(u, v, weight)` triples, one per unordered pair.
    pub edges: Vec<(String, String, f64)>,
    /// Required per-cluster structure `e^0`, one count per type.
    pub target_cluster: Vec<usize>,
    pub target_tree: TargetTreeSpec,
    pub root: Option<String>,
    /// Optional layer index per item, contiguous from 1 (top layer).
    pub layers: Option<BTreeMap<String, usize>>,
    /// Optional per-layer target structures, index 0 = top layer.
    pub layer_targets: Option<Vec<Vec<usize>>>,
}

/// Checks every instance invariant and returns one description per violation.
///
/// Validation never aborts: a description with several problems yields
/// several entries. An empty list means [`ProblemInstance::new`] will accept
/// the description.
pub fn validate_instance(desc: &ProblemDesc) -> Vec<String> {
    let mut out = Vec::new();
    if desc.type_count == 0 {
        out.push("type count must be positive".to_string());
    }
    if desc.items.is_empty() {
        out.push("no items declared".to_string());
    }

    let mut ids: BTreeMap<&str, usize> = BTreeMap::new();
    for (id, ty) in &desc.items {
        if ids.insert(id.as_str(), *ty).is_some() {
            out.push(format!("duplicate id {id}"));
        }
        if *ty == 0 || *ty > desc.type_count {
            out.push(format!(
                "item {id} has type {ty} outside 1..={}",
                desc.type_count
            ));
        }
    }

    let mut seen_pairs = std::collections::BTreeSet::new();
    for (u, v, w) in &desc.edges {
        if u == v {
            out.push(format!("self-loop {u}"));
            continue;
        }
        for end in [u, v] {
            if !ids.contains_key(end.as_str()) {
                out.push(format!("unknown endpoint {end} in edge ({u}, {v})"));
            }
        }
        let key = if u <= v { (u, v) } else { (v, u) };
        if !seen_pairs.insert(key) {
            out.push(format!("duplicate edge ({u}, {v})"));
        }
        if !w.is_finite() {
            out.push(format!("non-finite weight on edge ({u}, {v})"));
        } else if *w < 0.0 {
            out.push(format!("negative weight {w} on edge ({u}, {v})"));
        }
    }

    if desc.target_cluster.len() != desc.type_count {
        out.push(format!(
            "target_cluster has length {}, expected {}",
            desc.target_cluster.len(),
            desc.type_count
        ));
    }
    match desc.target_tree {
        TargetTreeSpec::DegreeBalanced(p) | TargetTreeSpec::HeightBalanced(p) if p == 0 => {
            out.push("target tree parameter must be >= 1".to_string());
        }
        _ => {}
    }
    if let Some(root) = &desc.root {
        if !ids.contains_key(root.as_str()) {
            out.push(format!("unknown root {root}"));
        }
    }

    if let Some(layers) = &desc.layers {
        for id in layers.keys() {
            if !ids.contains_key(id.as_str()) {
                out.push(format!("layer entry for unknown item {id}"));
            }
        }
        let mut max_layer = 0usize;
        for (id, _) in &desc.items {
            match layers.get(id) {
                None => out.push(format!("item {id} has no layer")),
                Some(0) => out.push(format!("item {id} has layer 0; layers start at 1")),
                Some(d) => max_layer = max_layer.max(*d),
            }
        }
        for d in 1..=max_layer {
            if !layers.values().any(|&x| x == d) {
                out.push(format!(
                    "layer indices are not contiguous: layer {d} is empty"
                ));
            }
        }
        if let Some(targets) = &desc.layer_targets {
            if targets.len() != max_layer {
                out.push(format!(
                    "layer_targets has length {}, expected {} layers",
                    targets.len(),
                    max_layer
                ));
            }
        }
    }
    if let Some(targets) = &desc.layer_targets {
        for (i, t) in targets.iter().enumerate() {
            if t.len() != desc.type_count {
                out.push(format!(
                    "layer target {} has length {}, expected {}",
                    i + 1,
                    t.len(),
                    desc.type_count
                ));
            }
        }
    }
    out
}

/// A validated problem instance with interned item ids.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    items: Vec<Item>,
    ids: BTreeMap<String, ItemId>,
    edges: Vec<WeightedEdge>,
    adj: Vec<Vec<(ItemId, f64)>>,
    type_count: usize,
    target_cluster: StructureEstimate,
    target_tree: TargetTreeSpec,
    root_hint: Option<ItemId>,
    layers: Option<Vec<usize>>,
    layer_targets: Option<Vec<StructureEstimate>>,
}

impl ProblemInstance {
    /// Validates `desc` and interns it. Fails with the full violation list
    /// if any invariant is broken.
    pub fn new(desc: ProblemDesc) -> Result<Self> {
        let violations = validate_instance(&desc);
        if !violations.is_empty() {
            return Err(Error::InvalidInstance(violations));
        }
        let items: Vec<Item> = desc
            .items
            .iter()
            .map(|(id, ty)| Item {
                id: id.clone(),
                ty: ItemType(*ty),
            })
            .collect();
        let ids: BTreeMap<String, ItemId> = items
            .iter()
            .enumerate()
            .map(|(i, item)| (item.id.clone(), ItemId(i)))
            .collect();
        let mut edges = Vec::with_capacity(desc.edges.len());
        let mut adj = vec![Vec::new(); items.len()];
        for (u, v, w) in &desc.edges {
            let u = ids[u.as_str()];
            let v = ids[v.as_str()];
            edges.push(WeightedEdge { u, v, w: *w });
            adj[u.0].push((v, *w));
            adj[v.0].push((u, *w));
        }
        for list in &mut adj {
            list.sort_by_key(|(n, _)| *n);
        }
        let root_hint = desc.root.as_ref().map(|r| ids[r.as_str()]);
        let layers = desc
            .layers
            .as_ref()
            .map(|map| items.iter().map(|item| map[&item.id]).collect::<Vec<_>>());
        let layer_targets = desc.layer_targets.as_ref().map(|ts| {
            ts.iter()
                .map(|t| StructureEstimate::new(t.clone()))
                .collect::<Vec<_>>()
        });
        Ok(Self {
            items,
            ids,
            edges,
            adj,
            type_count: desc.type_count,
            target_cluster: StructureEstimate::new(desc.target_cluster),
            target_tree: desc.target_tree,
            root_hint,
            layers,
            layer_targets,
        })
    }

    pub fn item_count(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    /// All item handles in declaration order.
    pub fn item_ids(&self) -> impl Iterator<Item = ItemId> {
        (0..self.items.len()).map(ItemId)
    }

    pub fn item(&self, id: ItemId) -> &Item {
        &self.items[id.0]
    }

    pub fn id_str(&self, id: ItemId) -> &str {
        &self.items[id.0].id
    }

    pub fn type_of(&self, id: ItemId) -> ItemType {
        self.items[id.0].ty
    }

    pub fn lookup(&self, id: &str) -> Option<ItemId> {
        self.ids.get(id).copied()
    }

    /// Resolves a string id, failing with `UnknownItem` if it is not declared.
    pub fn require(&self, id: &str) -> Result<ItemId> {
        self.lookup(id)
            .ok_or_else(|| Error::UnknownItem(id.to_string()))
    }

    /// Total order on items, consistent with declaration order.
    pub fn item_order(&self, a: ItemId, b: ItemId) -> std::cmp::Ordering {
        a.0.cmp(&b.0)
    }

    /// [`ProblemInstance::item_order`] on string ids; errors on unknown ids.
    pub fn item_order_by_id(&self, a: &str, b: &str) -> Result<std::cmp::Ordering> {
        Ok(self.require(a)?.0.cmp(&self.require(b)?.0))
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    /// Neighbors of `id`, sorted by item order.
    pub fn neighbors(&self, id: ItemId) -> &[(ItemId, f64)] {
        &self.adj[id.0]
    }

    pub fn edge_weight(&self, a: ItemId, b: ItemId) -> Option<f64> {
        self.adj[a.0].iter().find(|(n, _)| *n == b).map(|(_, w)| *w)
    }

    pub fn type_count(&self) -> usize {
        self.type_count
    }

    /// The required structure `e^0` for a balanced cluster.
    pub fn target_cluster(&self) -> &StructureEstimate {
        &self.target_cluster
    }

    pub fn target_tree(&self) -> TargetTreeSpec {
        self.target_tree
    }

    pub fn root_hint(&self) -> Option<ItemId> {
        self.root_hint
    }

    /// Layer index per item (1 = top), when the instance declares layers.
    pub fn layers(&self) -> Option<&[usize]> {
        self.layers.as_deref()
    }

    pub fn layer_targets(&self) -> Option<&[StructureEstimate]> {
        self.layer_targets.as_deref()
    }

    pub fn is_connected(&self) -> bool {
        if self.items.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.items.len()];
        let mut stack = vec![ItemId(0)];
        seen[0] = true;
        let mut count = 1;
        while let Some(n) = stack.pop() {
            for &(m, _) in self.neighbors(n) {
                if !seen[m.0] {
                    seen[m.0] = true;
                    count += 1;
                    stack.push(m);
                }
            }
        }
        count == self.items.len()
    }

    /// Re-exports the instance as a raw description (used for round-trips).
    pub fn to_desc(&self) -> ProblemDesc {
        ProblemDesc {
            type_count: self.type_count,
            items: self.items.iter().map(|i| (i.id.clone(), i.ty.0)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    (
                        self.id_str(e.u).to_string(),
                        self.id_str(e.v).to_string(),
                        e.w,
                    )
                })
                .collect(),
            target_cluster: self.target_cluster.counts().to_vec(),
            target_tree: self.target_tree,
            root: self.root_hint.map(|r| self.id_str(r).to_string()),
            layers: self.layers.as_ref().map(|ls| {
                self.items
                    .iter()
                    .zip(ls)
                    .map(|(i, d)| (i.id.clone(), *d))
                    .collect()
            }),
            layer_targets: self
                .layer_targets
                .as_ref()
                .map(|ts| ts.iter().map(|t| t.counts().to_vec()).collect()),
        }
    }
}

/// A rooted tree over nodes of type `N` with weighted edges.
///
/// The parent map orients every edge away from the root; structural
/// invariants (acyclic, `|nodes| - 1` edges, all nodes reach the root) are
/// established by [`RootedTree::from_edges`] and checkable via
/// [`RootedTree::check`].
#[derive(Debug, Clone, PartialEq)]
pub struct RootedTree<N: Copy + Ord + fmt::Debug> {
    root: N,
    parent: BTreeMap<N, N>,
    children: BTreeMap<N, Vec<N>>,
    weights: BTreeMap<(N, N), f64>,
}

impl<N: Copy + Ord + fmt::Debug> RootedTree<N> {
    pub fn singleton(root: N) -> Self {
        let mut children = BTreeMap::new();
        children.insert(root, Vec::new());
        Self {
            root,
            parent: BTreeMap::new(),
            children,
            weights: BTreeMap::new(),
        }
    }

    /// Orients `edges` away from `root`. The node set is the endpoints of
    /// `edges` plus the root. Fails unless the edges form a tree containing
    /// the root.
    pub fn from_edges(root: N, edges: &[(N, N, f64)]) -> Result<Self> {
        let mut adj: BTreeMap<N, Vec<(N, f64)>> = BTreeMap::new();
        adj.entry(root).or_default();
        for &(u, v, w) in edges {
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop on {u:?}")));
            }
            adj.entry(u).or_default().push((v, w));
            adj.entry(v).or_default().push((u, w));
        }
        let node_count = adj.len();
        if edges.len() + 1 != node_count {
            return Err(Error::InvalidTree(format!(
                "{} edges for {} nodes",
                edges.len(),
                node_count
            )));
        }
        let mut tree = Self::singleton(root);
        let mut stack = vec![root];
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(root);
        while let Some(n) = stack.pop() {
            let mut kids: Vec<(N, f64)> = adj[&n]
                .iter()
                .filter(|(m, _)| !seen.contains(m))
                .copied()
                .collect();
            kids.sort_by_key(|(m, _)| *m);
            for (m, w) in kids {
                if !seen.insert(m) {
                    return Err(Error::InvalidTree(format!("cycle through {m:?}")));
                }
                tree.parent.insert(m, n);
                tree.children.entry(n).or_default().push(m);
                tree.children.entry(m).or_default();
                tree.weights.insert(Self::key(n, m), w);
                stack.push(m);
            }
        }
        if seen.len() != node_count {
            return Err(Error::InvalidTree(
                "edges do not form a single connected tree".to_string(),
            ));
        }
        Ok(tree)
    }

    fn key(a: N, b: N) -> (N, N) {
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> N {
        self.root
    }

    pub fn contains(&self, n: N) -> bool {
        self.children.contains_key(&n)
    }

    /// Nodes in ascending order.
    pub fn nodes(&self) -> impl Iterator<Item = N> + '_ {
        self.children.keys().copied()
    }

    pub fn parent(&self, n: N) -> Option<N> {
        self.parent.get(&n).copied()
    }

    pub fn children(&self, n: N) -> &[N] {
        self.children.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn edge_weight(&self, a: N, b: N) -> Option<f64> {
        self.weights.get(&Self::key(a, b)).copied()
    }

    /// `(parent, child, weight)` triples sorted by child.
    pub fn edges(&self) -> Vec<(N, N, f64)> {
        self.parent
            .iter()
            .map(|(&c, &p)| (p, c, self.weights[&Self::key(p, c)]))
            .collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.values().sum()
    }

    /// Edge count from the root down to `n`.
    pub fn depth(&self, mut n: N) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent(n) {
            d += 1;
            n = p;
        }
        d
    }

    pub fn height(&self) -> usize {
        self.nodes().map(|n| self.depth(n)).max().unwrap_or(0)
    }

    /// Nodes with no children, ascending. The root counts as a leaf only
    /// when it is the sole node.
    pub fn leaves(&self) -> Vec<N> {
        if self.len() == 1 {
            return vec![self.root];
        }
        self.nodes()
            .filter(|n| *n != self.root && self.children(*n).is_empty())
            .collect()
    }

    /// Structural self-check; empty means the invariants hold.
    pub fn check(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.parent.len() + 1 != self.children.len() {
            out.push(format!(
                "{} parent entries for {} nodes",
                self.parent.len(),
                self.children.len()
            ));
        }
        for n in self.nodes() {
            let mut cur = n;
            let mut hops = 0;
            while let Some(p) = self.parent(cur) {
                cur = p;
                hops += 1;
                if hops > self.children.len() {
                    out.push(format!("parent chain from {n:?} does not terminate"));
                    break;
                }
            }
            if cur != self.root {
                out.push(format!("{n:?} does not reach the root"));
            }
        }
        if self.weights.len() != self.parent.len() {
            out.push("edge weights are not defined exactly on parent-child pairs".to_string());
        }
        out
    }
}

/// One cluster of a solution: a nonempty set of items and a label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub label: usize,
    /// Members sorted by item order.
    pub members: Vec<ItemId>,
}

impl Cluster {
    pub fn new(label: usize, mut members: Vec<ItemId>) -> Self {
        members.sort();
        Self { label, members }
    }

    pub fn contains(&self, id: ItemId) -> bool {
        self.members.binary_search(&id).is_ok()
    }
}

/// Human-readable record of one solver step.
#[derive(Debug, Clone, PartialEq)]
pub enum TraceStep {
    Condense(CondenseRecord),
    Attach(AttachRecord),
    Merge(MergeRecord),
    Note(String),
}

/// One condensing step of a tree-partitioning scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct CondenseRecord {
    pub step: usize,
    /// Selected condensing edge; for leaf/root/center schemes the first
    /// endpoint is the leaf, root or center respectively.
    pub edge: (ItemId, ItemId),
    pub weight: f64,
    /// The integrated node built from the edge endpoints.
    pub seed: Vec<ItemId>,
    /// Neighbors added while growing toward the target structure.
    pub added: Vec<ItemId>,
    /// Nodes swallowed because their component could never reach the
    /// target structure.
    pub absorbed: Vec<ItemId>,
    pub label: usize,
    pub members: Vec<ItemId>,
    pub estimate: StructureEstimate,
    /// Nodes still in the forest after this step (parked nodes excluded).
    pub remaining: usize,
}

/// A separated node joining its closest cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct AttachRecord {
    pub step: usize,
    pub node: ItemId,
    pub label: usize,
    /// The instance edge realizing the minimum distance, when one exists.
    pub via: Option<(ItemId, ItemId, f64)>,
    pub estimate: StructureEstimate,
}

/// One merge of an agglomerative strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeRecord {
    pub step: usize,
    pub weight: f64,
    /// Endpoints of the single-linkage edge that realized the merge.
    pub joined: (ItemId, ItemId),
    /// Size of the merged cluster.
    pub members: usize,
}

/// A clustering solution: disjoint clusters covering the instance, an
/// optional spanning tree over cluster labels, and the steps that built it.
#[derive(Debug, Clone)]
pub struct ClusteringSolution {
    pub clusters: Vec<Cluster>,
    pub cluster_tree: Option<RootedTree<usize>>,
    pub trace: Vec<TraceStep>,
}

impl ClusteringSolution {
    /// Checks disjointness, coverage, label uniqueness and the cluster-tree
    /// node set. Empty means the solution invariants hold for `instance`.
    pub fn validate(&self, instance: &ProblemInstance) -> Vec<String> {
        let mut out = Vec::new();
        let mut owner: Vec<Option<usize>> = vec![None; instance.item_count()];
        let mut labels = std::collections::BTreeSet::new();
        for cluster in &self.clusters {
            if cluster.members.is_empty() {
                out.push(format!("cluster {} is empty", cluster.label));
            }
            if !labels.insert(cluster.label) {
                out.push(format!("duplicate cluster label {}", cluster.label));
            }
            for &m in &cluster.members {
                if m.0 >= instance.item_count() {
                    out.push(format!("cluster {} has a foreign member", cluster.label));
                    continue;
                }
                if let Some(other) = owner[m.0] {
                    out.push(format!(
                        "item {} in clusters {} and {}",
                        instance.id_str(m),
                        other,
                        cluster.label
                    ));
                } else {
                    owner[m.0] = Some(cluster.label);
                }
            }
        }
        for (i, o) in owner.iter().enumerate() {
            if o.is_none() {
                out.push(format!("item {} not covered", instance.id_str(ItemId(i))));
            }
        }
        if let Some(tree) = &self.cluster_tree {
            let tree_nodes: std::collections::BTreeSet<usize> = tree.nodes().collect();
            if tree_nodes != labels {
                out.push("cluster tree node set differs from cluster labels".to_string());
            }
            out.extend(tree.check());
        }
        out
    }

    /// Label of the cluster containing `id`, if any.
    pub fn cluster_of(&self, id: ItemId) -> Option<usize> {
        self.clusters
            .iter()
            .find(|c| c.contains(id))
            .map(|c| c.label)
    }

    /// `item id -> cluster label` map with string ids.
    pub fn assignment(&self, instance: &ProblemInstance) -> BTreeMap<String, usize> {
        let mut map = BTreeMap::new();
        for cluster in &self.clusters {
            for &m in &cluster.members {
                map.insert(instance.id_str(m).to_string(), cluster.label);
            }
        }
        map
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc_19() -> ProblemDesc {
        crate::fixture::paper_desc()
    }

    #[test]
    fn paper_instance_is_well_formed() {
        assert_eq!(validate_instance(&desc_19()), Vec::<String>::new());
    }

    #[test]
    fn self_loop_is_reported() {
        let mut desc = desc_19();
        desc.edges.push(("a1".into(), "a1".into(), 1.0));
        assert_eq!(validate_instance(&desc), vec!["self-loop a1".to_string()]);
    }

    #[test]
    fn duplicate_id_is_reported() {
        let mut desc = desc_19();
        desc.items.push(("a3".into(), 1));
        let violations = validate_instance(&desc);
        assert!(
            violations.contains(&"duplicate id a3".to_string()),
            "{violations:?}"
        );
    }

    #[test]
    fn item_order_follows_declaration() {
        let instance = ProblemInstance::new(desc_19()).unwrap();
        use std::cmp::Ordering::*;
        assert_eq!(instance.item_order_by_id("a2", "a10").unwrap(), Less);
        assert_eq!(instance.item_order_by_id("a5", "a5").unwrap(), Equal);
        assert_eq!(instance.item_order_by_id("a14", "a3").unwrap(), Greater);
        assert!(matches!(
            instance.item_order_by_id("a14", "zz"),
            Err(Error::UnknownItem(_))
        ));
    }

    #[test]
    fn item_order_is_a_total_order() {
        let instance = ProblemInstance::new(desc_19()).unwrap();
        let ids: Vec<ItemId> = instance.item_ids().collect();
        use std::cmp::Ordering::*;
        for &a in &ids {
            for &b in &ids {
                let ab = instance.item_order(a, b);
                let ba = instance.item_order(b, a);
                assert_eq!(ab, ba.reverse());
                if ab == Equal {
                    assert_eq!(a, b);
                }
                for &c in &ids {
                    if ab != Greater && instance.item_order(b, c) != Greater {
                        assert_ne!(instance.item_order(a, c), Greater);
                    }
                }
            }
        }
    }

    #[test]
    fn rooted_tree_from_path() {
        // path a-b-c rooted at b
        let tree = RootedTree::from_edges(1usize, &[(0, 1, 1.0), (1, 2, 2.0)]).unwrap();
        assert_eq!(tree.parent(0), Some(1));
        assert_eq!(tree.parent(2), Some(1));
        assert_eq!(tree.parent(1), None);
        assert!(tree.check().is_empty());
    }

    #[test]
    fn rooted_tree_single_node() {
        let tree: RootedTree<usize> = RootedTree::from_edges(7, &[]).unwrap();
        assert_eq!(tree.len(), 1);
        assert_eq!(tree.leaves(), vec![7]);
        assert!(tree.edges().is_empty());
    }

    #[test]
    fn rooted_tree_rejects_cycles_and_forests() {
        let cycle = RootedTree::from_edges(0usize, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]);
        assert!(cycle.is_err());
        let forest = RootedTree::from_edges(0usize, &[(0, 1, 1.0), (2, 3, 1.0)]);
        assert!(forest.is_err());
    }

    #[test]
    fn root_tree_orients_away_from_root() {
        // Fig-12 shape check: rooted at a1, the root's children are a2 and a3.
        let instance = crate::fixture::paper_instance();
        let edges: Vec<_> = instance.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
        let root = instance.lookup("a1").unwrap();
        let tree = RootedTree::from_edges(root, &edges).unwrap();
        let kids: Vec<_> = tree
            .children(root)
            .iter()
            .map(|&c| instance.id_str(c).to_string())
            .collect();
        assert_eq!(kids, vec!["a2", "a3"]);
    }
}
