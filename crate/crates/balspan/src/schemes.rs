//! Condensing-point tree partitioning: turns a rooted spanning tree over
//! items into a balanced clustering solution.
//!
//! All four schemes share the same loop: select a condensing edge, build the
//! integrated node from its endpoints, grow it toward the target structure,
//! delete the cluster from the forest and repeat; separated nodes are parked
//! and join their closest cluster at the end. They differ only in how the
//! condensing edge is selected.

use crate::error::{Error, Result};
use crate::model::{
    AttachRecord, Cluster, ClusteringSolution, CondenseRecord, ItemId, ItemType, ProblemInstance,
    RootedTree, TraceStep,
};
use crate::quality::{estimate_of, StructureEstimate};
use crate::spanning::mst_over_clusters;

/// How the next condensing edge is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CondensingKind {
    /// Globally lightest tree edge.
    MinEdge,
    /// Leaf with the lightest edge to its neighbor (bottom-up).
    LeafEdge,
    /// Component root with the lightest incident edge (top-down).
    RootEdge,
    /// Centers are the nodes of the given type; the center with the
    /// lightest neighbor edge condenses first.
    CenterBased(ItemType),
}

/// Work counters for one scheme run. `ops` counts node and edge
/// examinations, the basic operations of the schemes.
#[derive(Debug, Clone, Copy, Default)]
pub struct SchemeStats {
    pub steps: usize,
    pub ops: u64,
}

/// Grows a connected seed along tree edges toward the target structure.
///
/// One neighbor is added at a time: only neighbors whose type is still
/// deficient qualify, the lightest connecting edge wins, ties break by item
/// order. Growth stops when the estimate reaches the target or no qualifying
/// neighbor remains (a quasi-cluster). A node whose type coordinate already
/// meets the target is never added.
///
/// Returns the grown member set sorted by item order.
pub fn grow_cluster(
    seed: &[ItemId],
    tree: &RootedTree<ItemId>,
    e0: &StructureEstimate,
    instance: &ProblemInstance,
) -> Result<Vec<ItemId>> {
    if seed.is_empty() {
        return Err(Error::EmptyInput);
    }
    for &s in seed {
        if !tree.contains(s) {
            return Err(Error::InvalidTree(format!(
                "seed node {} is not in the tree",
                instance.id_str(s)
            )));
        }
    }
    // the seed must be a connected subtree
    let seed_set: std::collections::BTreeSet<ItemId> = seed.iter().copied().collect();
    let mut reached = std::collections::BTreeSet::new();
    let mut stack = vec![seed[0]];
    reached.insert(seed[0]);
    while let Some(n) = stack.pop() {
        let mut step = |m: ItemId| {
            if seed_set.contains(&m) && reached.insert(m) {
                stack.push(m);
            }
        };
        if let Some(p) = tree.parent(n) {
            step(p);
        }
        for &c in tree.children(n) {
            step(c);
        }
    }
    if reached.len() != seed_set.len() {
        return Err(Error::InvalidTree(
            "seed nodes are not adjacent in the tree".to_string(),
        ));
    }

    let mut members: Vec<ItemId> = seed_set.iter().copied().collect();
    let mut est = estimate_of(&members, instance)?;
    let mut in_cluster = vec![false; instance.item_count()];
    for &m in &members {
        in_cluster[m.index()] = true;
    }
    let neighbors = |n: ItemId| -> Vec<(ItemId, f64)> {
        let mut out = Vec::new();
        if let Some(p) = tree.parent(n) {
            out.push((p, tree.edge_weight(n, p).unwrap()));
        }
        for &c in tree.children(n) {
            out.push((c, tree.edge_weight(n, c).unwrap()));
        }
        out
    };
    let mut ops = 0u64;
    grow_members(
        &mut members,
        &mut in_cluster,
        &mut est,
        e0,
        instance,
        &neighbors,
        &mut ops,
    );
    members.sort();
    Ok(members)
}

/// The growth loop shared by [`grow_cluster`] and the scheme engine.
/// Appends the added nodes to `members` and returns them in addition order.
fn grow_members(
    members: &mut Vec<ItemId>,
    in_cluster: &mut [bool],
    est: &mut StructureEstimate,
    e0: &StructureEstimate,
    instance: &ProblemInstance,
    neighbors: &dyn Fn(ItemId) -> Vec<(ItemId, f64)>,
    ops: &mut u64,
) -> Vec<ItemId> {
    let mut added = Vec::new();
    loop {
        let mut best: Option<(f64, ItemId)> = None;
        for &m in members.iter() {
            for (n, w) in neighbors(m) {
                *ops += 1;
                if in_cluster[n.index()] {
                    continue;
                }
                let ty = instance.type_of(n);
                if est.count_of(ty) >= e0.count_of(ty) {
                    continue; // that coordinate is already full
                }
                let better = match best {
                    None => true,
                    Some((bw, bn)) => w.total_cmp(&bw).then(n.cmp(&bn)).is_lt(),
                };
                if better {
                    best = Some((w, n));
                }
            }
        }
        match best {
            None => break,
            Some((_, n)) => {
                in_cluster[n.index()] = true;
                est.bump(instance.type_of(n));
                members.push(n);
                added.push(n);
            }
        }
    }
    added
}

struct Engine<'a> {
    instance: &'a ProblemInstance,
    /// Tree adjacency of the input spanning tree (static).
    adj: Vec<Vec<(ItemId, f64)>>,
    alive: Vec<bool>,
    /// `None` marks a component root among alive nodes.
    parent: Vec<Option<ItemId>>,
    assigned: Vec<Option<usize>>,
    parked: Vec<ItemId>,
    clusters: Vec<Cluster>,
    alive_count: usize,
    ops: u64,
}

impl<'a> Engine<'a> {
    fn new(tree: &RootedTree<ItemId>, instance: &'a ProblemInstance) -> Self {
        let n = instance.item_count();
        let mut adj = vec![Vec::new(); n];
        let mut parent = vec![None; n];
        for (p, c, w) in tree.edges() {
            adj[p.index()].push((c, w));
            adj[c.index()].push((p, w));
            parent[c.index()] = Some(p);
        }
        for list in &mut adj {
            list.sort_by_key(|(m, _)| *m);
        }
        Self {
            instance,
            adj,
            alive: vec![true; n],
            parent,
            assigned: vec![None; n],
            parked: Vec::new(),
            clusters: Vec::new(),
            alive_count: n,
            ops: 0,
        }
    }

    fn consider(
        &self,
        best: &mut Option<(f64, bool, usize, usize, ItemId, ItemId)>,
        a: ItemId,
        b: ItemId,
        w: f64,
    ) {
        // prefer light edges, then endpoints of different types, then item order
        let same = self.instance.type_of(a) == self.instance.type_of(b);
        let (mn, mx) = (a.index().min(b.index()), a.index().max(b.index()));
        let better = match best {
            None => true,
            Some((bw, bsame, bmn, bmx, _, _)) => w
                .total_cmp(bw)
                .then(same.cmp(bsame))
                .then(mn.cmp(bmn))
                .then(mx.cmp(bmx))
                .is_lt(),
        };
        if better {
            *best = Some((w, same, mn, mx, a, b));
        }
    }

    /// Next condensing edge over all remaining components, or `None` when no
    /// component can seed a cluster. The first endpoint carries the role of
    /// the scheme (leaf, root or center).
    fn select(&mut self, kind: CondensingKind) -> Option<(ItemId, ItemId, f64)> {
        let mut best = None;
        let n = self.instance.item_count();
        match kind {
            CondensingKind::MinEdge => {
                for i in 0..n {
                    self.ops += 1;
                    if !self.alive[i] {
                        continue;
                    }
                    for &(j, w) in &self.adj[i] {
                        self.ops += 1;
                        if self.alive[j.index()] && i < j.index() {
                            self.consider(&mut best, ItemId(i), j, w);
                        }
                    }
                }
            }
            CondensingKind::LeafEdge => {
                for i in 0..n {
                    self.ops += 1;
                    if !self.alive[i] {
                        continue;
                    }
                    let mut has_child = false;
                    let mut parent_edge = None;
                    for &(j, w) in &self.adj[i] {
                        self.ops += 1;
                        if !self.alive[j.index()] {
                            continue;
                        }
                        if self.parent[j.index()] == Some(ItemId(i)) {
                            has_child = true;
                        }
                        if self.parent[i] == Some(j) {
                            parent_edge = Some((j, w));
                        }
                    }
                    if !has_child {
                        if let Some((p, w)) = parent_edge {
                            self.consider(&mut best, ItemId(i), p, w);
                        }
                    }
                }
            }
            CondensingKind::RootEdge => {
                for i in 0..n {
                    self.ops += 1;
                    if !self.alive[i] || self.parent[i].is_some() {
                        continue;
                    }
                    for &(j, w) in &self.adj[i] {
                        self.ops += 1;
                        if self.alive[j.index()] && self.parent[j.index()] == Some(ItemId(i)) {
                            self.consider(&mut best, ItemId(i), j, w);
                        }
                    }
                }
            }
            CondensingKind::CenterBased(ty) => {
                for i in 0..n {
                    self.ops += 1;
                    if !self.alive[i] || self.instance.type_of(ItemId(i)) != ty {
                        continue;
                    }
                    for &(j, w) in &self.adj[i] {
                        self.ops += 1;
                        if self.alive[j.index()] {
                            self.consider(&mut best, ItemId(i), j, w);
                        }
                    }
                }
            }
        }
        best.map(|(w, _, _, _, a, b)| (a, b, w))
    }

    /// Alive nodes of the component containing `start`, sorted by item order.
    fn component_of(&mut self, start: ItemId) -> Vec<ItemId> {
        let mut seen = vec![false; self.instance.item_count()];
        let mut out = vec![start];
        let mut stack = vec![start];
        seen[start.index()] = true;
        while let Some(n) = stack.pop() {
            for &(m, _) in &self.adj[n.index()] {
                self.ops += 1;
                if self.alive[m.index()] && !seen[m.index()] {
                    seen[m.index()] = true;
                    out.push(m);
                    stack.push(m);
                }
            }
        }
        out.sort();
        out
    }

    /// Removes a finished cluster from the forest. Children of deleted nodes
    /// become component roots; nodes left without any alive neighbor are
    /// parked for the final attachment stage.
    fn extract(&mut self, label: usize, members: &[ItemId]) {
        for &m in members {
            self.alive[m.index()] = false;
            self.assigned[m.index()] = Some(label);
            self.alive_count -= 1;
        }
        for &m in members {
            for &(j, _) in &self.adj[m.index()] {
                self.ops += 1;
                if self.alive[j.index()] && self.parent[j.index()] == Some(m) {
                    self.parent[j.index()] = None;
                }
            }
        }
        let mut isolated = Vec::new();
        for i in 0..self.instance.item_count() {
            self.ops += 1;
            if !self.alive[i] {
                continue;
            }
            if self.adj[i].iter().all(|(j, _)| !self.alive[j.index()]) {
                isolated.push(ItemId(i));
            }
        }
        for node in isolated {
            self.alive[node.index()] = false;
            self.alive_count -= 1;
            self.parked.push(node);
        }
    }

    /// Closest cluster by instance edge weight, ties by item order of the
    /// realizing member; smallest label when the node has no edge into any
    /// cluster.
    fn closest_cluster(&mut self, node: ItemId) -> (usize, Option<(ItemId, ItemId, f64)>) {
        let mut best: Option<(f64, ItemId, usize)> = None;
        for &(m, w) in self.instance.neighbors(node) {
            self.ops += 1;
            let Some(label) = self.assigned[m.index()] else {
                continue;
            };
            let better = match best {
                None => true,
                Some((bw, bm, bl)) => w
                    .total_cmp(&bw)
                    .then(m.cmp(&bm))
                    .then(label.cmp(&bl))
                    .is_lt(),
            };
            if better {
                best = Some((w, m, label));
            }
        }
        match best {
            Some((w, m, label)) => (label, Some((node, m, w))),
            None => {
                let label = self.clusters.iter().map(|c| c.label).min().unwrap();
                (label, None)
            }
        }
    }
}

/// Runs one condensing scheme over a spanning tree of the instance.
pub fn run_scheme(
    tree: &RootedTree<ItemId>,
    kind: CondensingKind,
    instance: &ProblemInstance,
) -> Result<ClusteringSolution> {
    run_scheme_with_stats(tree, kind, instance).map(|(solution, _)| solution)
}

/// [`run_scheme`] plus work counters (used by the polynomial-behavior checks).
pub fn run_scheme_with_stats(
    tree: &RootedTree<ItemId>,
    kind: CondensingKind,
    instance: &ProblemInstance,
) -> Result<(ClusteringSolution, SchemeStats)> {
    if tree.len() != instance.item_count() || instance.item_ids().any(|id| !tree.contains(id)) {
        return Err(Error::NotSpanning);
    }
    if let CondensingKind::CenterBased(ty) = kind {
        if ty.0 == 0 || ty.0 > instance.type_count() || !instance.items().iter().any(|i| i.ty == ty)
        {
            return Err(Error::NoCenters(ty.0));
        }
    }

    let e0 = instance.target_cluster();
    let mut engine = Engine::new(tree, instance);
    let mut trace: Vec<TraceStep> = Vec::new();
    let mut steps = 0usize;

    while let Some((a, b, w)) = engine.select(kind) {
        steps += 1;
        let component = engine.component_of(a);
        let component_est = estimate_of(&component, instance)?;
        // a component that can never reach the target structure is taken
        // whole as one quasi-cluster
        let absorb_all = !component_est.covers(e0);

        let mut members = vec![a, b];
        let mut est = estimate_of(&members, instance)?;
        let mut in_cluster = vec![false; instance.item_count()];
        in_cluster[a.index()] = true;
        in_cluster[b.index()] = true;

        let mut grow_ops = 0u64;
        let added = {
            let alive = &engine.alive;
            let adj = &engine.adj;
            let neighbors = move |n: ItemId| -> Vec<(ItemId, f64)> {
                adj[n.index()]
                    .iter()
                    .filter(|(m, _)| alive[m.index()])
                    .copied()
                    .collect()
            };
            grow_members(
                &mut members,
                &mut in_cluster,
                &mut est,
                e0,
                instance,
                &neighbors,
                &mut grow_ops,
            )
        };
        engine.ops += grow_ops;

        let mut absorbed = Vec::new();
        if absorb_all {
            for &node in &component {
                if !in_cluster[node.index()] {
                    in_cluster[node.index()] = true;
                    est.bump(instance.type_of(node));
                    members.push(node);
                    absorbed.push(node);
                }
            }
        }

        let label = engine.clusters.len() + 1;
        engine.extract(label, &members);
        let cluster = Cluster::new(label, members);
        trace.push(TraceStep::Condense(CondenseRecord {
            step: steps,
            edge: (a, b),
            weight: w,
            seed: vec![a, b],
            added,
            absorbed,
            label,
            members: cluster.members.clone(),
            estimate: est,
            remaining: engine.alive_count,
        }));
        engine.clusters.push(cluster);
    }

    if engine.clusters.is_empty() {
        // no condensing edge at all (single-node instance): keep each
        // remaining component as one cluster
        let leftovers: Vec<ItemId> = instance
            .item_ids()
            .filter(|id| engine.alive[id.index()])
            .collect();
        for node in leftovers {
            if !engine.alive[node.index()] {
                continue;
            }
            let component = engine.component_of(node);
            let label = engine.clusters.len() + 1;
            engine.extract(label, &component);
            trace.push(TraceStep::Note(format!(
                "component of {} kept whole: no condensing edge available",
                instance.id_str(node)
            )));
            engine.clusters.push(Cluster::new(label, component));
        }
    } else {
        // components that could not seed (center-based runs without a
        // center) drain into the attachment stage node by node
        for id in instance.item_ids() {
            if engine.alive[id.index()] {
                engine.alive[id.index()] = false;
                engine.alive_count -= 1;
                engine.parked.push(id);
            }
        }
    }

    engine.parked.sort();
    let parked = std::mem::take(&mut engine.parked);
    for node in parked {
        steps += 1;
        let (label, via) = engine.closest_cluster(node);
        let cluster = engine
            .clusters
            .iter_mut()
            .find(|c| c.label == label)
            .expect("attachment target exists");
        cluster.members.push(node);
        cluster.members.sort();
        engine.assigned[node.index()] = Some(label);
        let estimate = estimate_of(&cluster.members, instance)?;
        trace.push(TraceStep::Attach(AttachRecord {
            step: steps,
            node,
            label,
            via,
            estimate,
        }));
    }

    let clusters = engine.clusters;
    let cluster_tree = mst_over_clusters(&clusters, instance)?;
    let solution = ClusteringSolution {
        clusters,
        cluster_tree: Some(cluster_tree),
        trace,
    };
    let stats = SchemeStats {
        steps,
        ops: engine.ops,
    };
    Ok((solution, stats))
}
