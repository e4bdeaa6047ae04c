//! A three-layer hierarchy: every layer balanced against its own target
//! structure, layers connected through cluster heads.
//!
//! Layer targets follow the hub-to-edge pattern: the top layer wants one
//! type-1 and three type-2 elements per cluster, the middle one type-2 and
//! three type-3, the bottom one type-3 and three type-4.
//!
//!     cargo run --example layered_network

use std::collections::BTreeMap;

use balspan::model::{ProblemDesc, ProblemInstance, TraceStep};
use balspan::quality::{delta, estimate_of, StructureEstimate};
use balspan::strategies::strategy_layered;

fn main() {
    let mut items: Vec<(String, usize)> = Vec::new();
    let mut layers: BTreeMap<String, usize> = BTreeMap::new();
    let mut edges: Vec<(String, String, f64)> = Vec::new();

    let group = |prefix: &str,
                 layer: usize,
                 types: &[usize],
                 items: &mut Vec<(String, usize)>,
                 layers: &mut BTreeMap<String, usize>,
                 edges: &mut Vec<(String, String, f64)>| {
        let ids: Vec<String> = (1..=types.len()).map(|i| format!("{prefix}{i}")).collect();
        for (id, &ty) in ids.iter().zip(types) {
            items.push((id.clone(), ty));
            layers.insert(id.clone(), layer);
        }
        // a cheap star around the group's first node
        for other in &ids[1..] {
            edges.push((ids[0].clone(), other.clone(), 0.5));
        }
        ids[0].clone()
    };

    // one top hub, two middle groups, two bottom groups
    let top = group("t", 1, &[1, 2, 2, 2], &mut items, &mut layers, &mut edges);
    let m1 = group("m", 2, &[2, 3, 3, 3], &mut items, &mut layers, &mut edges);
    let m2 = group("n", 2, &[2, 3, 3, 3], &mut items, &mut layers, &mut edges);
    let b1 = group("b", 3, &[3, 4, 4, 4], &mut items, &mut layers, &mut edges);
    let b2 = group("c", 3, &[3, 4, 4, 4], &mut items, &mut layers, &mut edges);
    edges.push((top.clone(), m1.clone(), 1.0));
    edges.push((top.clone(), m2.clone(), 1.5));
    edges.push((m1.clone(), b1.clone(), 1.2));
    edges.push((m2.clone(), b2.clone(), 1.1));

    let desc = ProblemDesc {
        type_count: 4,
        items,
        edges,
        target_cluster: vec![1, 3, 0, 0],
        layers: Some(layers),
        layer_targets: Some(vec![vec![1, 3, 0, 0], vec![0, 1, 3, 0], vec![0, 0, 1, 3]]),
        root: Some(top),
        ..Default::default()
    };
    let instance = ProblemInstance::new(desc).unwrap();
    let solution = strategy_layered(&instance).unwrap();

    println!("per-layer results:");
    for step in &solution.trace {
        if let TraceStep::Note(note) = step {
            println!("  {note}");
        }
    }

    println!("\nclusters (layer targets in brackets):");
    let targets: Vec<StructureEstimate> = instance.layer_targets().unwrap().to_vec();
    for cluster in &solution.clusters {
        let layer = instance.layers().unwrap()[cluster.members[0].index()];
        let est = estimate_of(&cluster.members, &instance).unwrap();
        let members: Vec<&str> = cluster
            .members
            .iter()
            .map(|&m| instance.id_str(m))
            .collect();
        println!(
            "  X{} (layer {layer}): {:?} estimate {} [target {}] deviation {}",
            cluster.label,
            members,
            est,
            targets[layer - 1],
            delta(&est, &targets[layer - 1]).unwrap()
        );
    }

    let tree = solution.cluster_tree.as_ref().unwrap();
    println!("\nhierarchy (rooted at X{}):", tree.root());
    for (p, c, w) in tree.edges() {
        println!("  X{p} -> X{c} ({w})");
    }
}
