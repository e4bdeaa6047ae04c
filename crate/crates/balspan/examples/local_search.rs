//! Deliberately misplace a node in the reference solution, then let
//! single-node reassignment hill climbing repair and improve it.
//!
//!     cargo run --example local_search

use balspan::fixture::paper_instance;
use balspan::model::TraceStep;
use balspan::quality::quality_vector;
use balspan::schemes::CondensingKind;
use balspan::spanning::mst_over_clusters;
use balspan::strategies::{local_improve, strategy_spanning_then_balance};

fn main() {
    let instance = paper_instance();
    let reference = strategy_spanning_then_balance(&instance, CondensingKind::LeafEdge).unwrap();
    println!(
        "reference quality: {}",
        quality_vector(&reference, &instance).unwrap()
    );

    // move a19 out of its cluster into the root cluster
    let a19 = instance.require("a19").unwrap();
    let mut perturbed = reference.clone();
    perturbed.trace.clear();
    for cluster in &mut perturbed.clusters {
        cluster.members.retain(|&m| m != a19);
        if cluster.label == 6 {
            cluster.members.push(a19);
            cluster.members.sort();
        }
    }
    perturbed.cluster_tree = mst_over_clusters(&perturbed.clusters, &instance).ok();
    println!(
        "perturbed quality:  {}",
        quality_vector(&perturbed, &instance).unwrap()
    );

    let improved = local_improve(&perturbed, &instance, 1000).unwrap();
    println!(
        "improved quality:   {}\n",
        quality_vector(&improved, &instance).unwrap()
    );

    println!("accepted moves:");
    for step in &improved.trace {
        if let TraceStep::Note(note) = step {
            println!("  {note}");
        }
    }
    println!("\nfinal clusters:");
    for cluster in &improved.clusters {
        let members: Vec<&str> = cluster
            .members
            .iter()
            .map(|&m| instance.id_str(m))
            .collect();
        println!("  X{}: {}", cluster.label, members.join(", "));
    }
}
