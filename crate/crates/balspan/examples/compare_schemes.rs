//! Run all four condensing schemes over the same spanning tree and compare
//! the partitions they produce.
//!
//!     cargo run --example compare_schemes

use balspan::fixture::paper_instance;
use balspan::quality::quality_vector;
use balspan::schemes::{run_scheme_with_stats, CondensingKind};
use balspan::spanning::mst_tree;
use balspan::ItemType;

fn main() {
    let instance = paper_instance();
    let tree = mst_tree(&instance).unwrap();

    let kinds = [
        ("min-edge", CondensingKind::MinEdge),
        ("leaf", CondensingKind::LeafEdge),
        ("root", CondensingKind::RootEdge),
        ("center(1)", CondensingKind::CenterBased(ItemType(1))),
    ];
    println!(
        "{:10} {:>8} {:>8} {:>6} {:>8}  clusters",
        "scheme", "q_cb", "q_s", "steps", "ops"
    );
    for (label, kind) in kinds {
        let (solution, stats) = run_scheme_with_stats(&tree, kind, &instance).unwrap();
        let q = quality_vector(&solution, &instance).unwrap();
        let sizes: Vec<usize> = solution.clusters.iter().map(|c| c.members.len()).collect();
        println!(
            "{:10} {:>8} {:>8.1} {:>6} {:>8}  {:?}",
            label, q.q_cb, q.q_s, stats.steps, stats.ops, sizes
        );
    }

    println!("\npartitions:");
    for (label, kind) in kinds {
        let (solution, _) = run_scheme_with_stats(&tree, kind, &instance).unwrap();
        print!("{label:10}");
        for cluster in &solution.clusters {
            let members: Vec<&str> = cluster
                .members
                .iter()
                .map(|&m| instance.id_str(m))
                .collect();
            print!(" {}", members.join("+"));
        }
        println!();
    }
}
