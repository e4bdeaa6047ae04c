//! Spanning-tree construction and tree utilities: minimum spanning trees
//! over items, the single-linkage graph over clusters, and the spanning tree
//! over clusters.

use crate::error::{Error, Result};
use crate::model::{Cluster, ItemId, ProblemInstance, RootedTree};

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            self.parent[x] = self.find(self.parent[x]);
        }
        self.parent[x]
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        match self.rank[rx].cmp(&self.rank[ry]) {
            std::cmp::Ordering::Less => self.parent[rx] = ry,
            std::cmp::Ordering::Greater => self.parent[ry] = rx,
            std::cmp::Ordering::Equal => {
                self.parent[ry] = rx;
                self.rank[rx] += 1;
            }
        }
        true
    }
}

/// Kruskal over dense node indices with the deterministic
/// `(weight, min index, max index)` edge order. Returns the chosen edges
/// and the number of resulting components.
fn kruskal(node_count: usize, edges: &[(usize, usize, f64)]) -> (Vec<(usize, usize, f64)>, usize) {
    let mut sorted: Vec<(usize, usize, f64)> = edges
        .iter()
        .map(|&(u, v, w)| (u.min(v), u.max(v), w))
        .collect();
    sorted.sort_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    let mut dsu = UnionFind::new(node_count);
    let mut chosen = Vec::new();
    let mut components = node_count;
    for (u, v, w) in sorted {
        if dsu.union(u, v) {
            chosen.push((u, v, w));
            components -= 1;
            if components == 1 {
                break;
            }
        }
    }
    (chosen, components)
}

/// A minimum spanning forest: the MST of every connected component.
#[derive(Debug, Clone)]
pub struct SpanningForest {
    pub edges: Vec<(ItemId, ItemId, f64)>,
    pub components: usize,
    pub total_weight: f64,
}

impl SpanningForest {
    pub fn is_tree(&self) -> bool {
        self.components == 1
    }
}

/// Minimum spanning forest of the instance graph. One component means the
/// forest is a spanning tree.
pub fn minimum_spanning_forest(instance: &ProblemInstance) -> SpanningForest {
    let edges: Vec<(usize, usize, f64)> = instance
        .edges()
        .iter()
        .map(|e| (e.u.index(), e.v.index(), e.w))
        .collect();
    let (chosen, components) = kruskal(instance.item_count(), &edges);
    let edges: Vec<(ItemId, ItemId, f64)> = chosen
        .into_iter()
        .map(|(u, v, w)| (ItemId(u), ItemId(v), w))
        .collect();
    let mut total = 0.0;
    for &(_, _, w) in &edges {
        total += w;
    }
    SpanningForest {
        edges,
        components,
        total_weight: total,
    }
}

/// Minimum spanning tree edges of a connected instance; callers requiring a
/// tree treat a disconnected graph as an error.
pub fn mst(instance: &ProblemInstance) -> Result<Vec<(ItemId, ItemId, f64)>> {
    let forest = minimum_spanning_forest(instance);
    if forest.is_tree() {
        Ok(forest.edges)
    } else {
        Err(Error::Disconnected {
            components: forest.components,
        })
    }
}

/// Orients tree edges away from `root`.
pub fn root_tree(edges: &[(ItemId, ItemId, f64)], root: ItemId) -> Result<RootedTree<ItemId>> {
    RootedTree::from_edges(root, edges)
}

/// MST of the instance rooted at the root hint (or the first item).
pub fn mst_tree(instance: &ProblemInstance) -> Result<RootedTree<ItemId>> {
    let edges = mst(instance)?;
    let root = instance.root_hint().unwrap_or(ItemId(0));
    root_tree(&edges, root)
}

/// Weighted graph over cluster labels: one edge per cluster pair with at
/// least one crossing instance edge, weighted by the minimum crossing weight
/// (single linkage).
#[derive(Debug, Clone)]
pub struct ClusterGraph {
    pub edges: Vec<(usize, usize, f64)>,
}

pub fn cluster_graph(clusters: &[Cluster], instance: &ProblemInstance) -> ClusterGraph {
    let mut owner: Vec<Option<usize>> = vec![None; instance.item_count()];
    for cluster in clusters {
        for &m in &cluster.members {
            owner[m.index()] = Some(cluster.label);
        }
    }
    let mut best: std::collections::BTreeMap<(usize, usize), f64> =
        std::collections::BTreeMap::new();
    for e in instance.edges() {
        let (Some(cu), Some(cv)) = (owner[e.u.index()], owner[e.v.index()]) else {
            continue;
        };
        if cu == cv {
            continue;
        }
        let key = (cu.min(cv), cu.max(cv));
        let entry = best.entry(key).or_insert(f64::INFINITY);
        if e.w < *entry {
            *entry = e.w;
        }
    }
    ClusterGraph {
        edges: best.into_iter().map(|((a, b), w)| (a, b, w)).collect(),
    }
}

/// MST of the single-linkage cluster graph, rooted at the cluster holding
/// the instance root hint (or the cluster with the smallest member).
pub fn mst_over_clusters(
    clusters: &[Cluster],
    instance: &ProblemInstance,
) -> Result<RootedTree<usize>> {
    if clusters.is_empty() {
        return Err(Error::EmptySolution);
    }
    if clusters.len() == 1 {
        return Ok(RootedTree::singleton(clusters[0].label));
    }
    // map labels to dense indices for the union-find
    let labels: Vec<usize> = clusters.iter().map(|c| c.label).collect();
    let dense: std::collections::BTreeMap<usize, usize> =
        labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let graph = cluster_graph(clusters, instance);
    let edges: Vec<(usize, usize, f64)> = graph
        .edges
        .iter()
        .map(|&(a, b, w)| (dense[&a], dense[&b], w))
        .collect();
    let (chosen, components) = kruskal(clusters.len(), &edges);
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    let root_item = instance.root_hint().unwrap_or(ItemId(0));
    let root_label = clusters
        .iter()
        .find(|c| c.contains(root_item))
        .map(|c| c.label)
        .unwrap_or_else(|| {
            clusters
                .iter()
                .min_by_key(|c| c.members[0])
                .map(|c| c.label)
                .unwrap()
        });
    let edges: Vec<(usize, usize, f64)> = chosen
        .into_iter()
        .map(|(a, b, w)| (labels[a], labels[b], w))
        .collect();
    RootedTree::from_edges(root_label, &edges)
}
