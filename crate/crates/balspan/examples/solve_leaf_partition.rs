//! Partition the bundled 19-item instance with the leaf condensing scheme
//! and print the step-by-step trace: which edge seeded each cluster, what
//! grew around it, and where the separated node ended up.
//!
//!     cargo run --example solve_leaf_partition

use balspan::fixture::paper_instance;
use balspan::model::TraceStep;
use balspan::quality::{delta, quality_vector, structure_estimate};
use balspan::schemes::CondensingKind;
use balspan::strategies::strategy_spanning_then_balance;

fn main() {
    let instance = paper_instance();
    let solution = strategy_spanning_then_balance(&instance, CondensingKind::LeafEdge).unwrap();

    println!("trace:");
    for step in &solution.trace {
        match step {
            TraceStep::Condense(c) => {
                let members: Vec<&str> = c.members.iter().map(|&m| instance.id_str(m)).collect();
                println!(
                    "  step {}: condense ({}, {}) at {} -> cluster {} {:?}, estimate {}{}",
                    c.step,
                    instance.id_str(c.edge.0),
                    instance.id_str(c.edge.1),
                    c.weight,
                    c.label,
                    members,
                    c.estimate,
                    if c.absorbed.is_empty() {
                        ""
                    } else {
                        " (component absorbed)"
                    }
                );
            }
            TraceStep::Attach(a) => println!(
                "  step {}: attach separated {} to cluster {}, estimate {}",
                a.step,
                instance.id_str(a.node),
                a.label,
                a.estimate
            ),
            other => println!("  {other:?}"),
        }
    }

    println!("\nclusters:");
    let e0 = instance.target_cluster();
    for cluster in &solution.clusters {
        let est = structure_estimate(cluster, &instance).unwrap();
        let members: Vec<&str> = cluster
            .members
            .iter()
            .map(|&m| instance.id_str(m))
            .collect();
        println!(
            "  X{}: {:?} estimate {} deviation {}",
            cluster.label,
            members,
            est,
            delta(&est, e0).unwrap()
        );
    }

    let tree = solution.cluster_tree.as_ref().unwrap();
    println!("\ncluster tree (rooted at X{}):", tree.root());
    for (p, c, w) in tree.edges() {
        println!("  X{p} -- X{c} ({w})");
    }
    println!(
        "\nquality: {}",
        quality_vector(&solution, &instance).unwrap()
    );
}
