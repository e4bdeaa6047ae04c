//! Brute-force verification on a random small instance: the MST against
//! full spanning-tree enumeration, and every strategy's balance against the
//! exhaustive optimum over all partitions.
//!
//!     cargo run --example verify_against_oracle

use balspan::model::{ProblemDesc, ProblemInstance};
use balspan::oracle::{best_qcb, enumerate_spanning_trees};
use balspan::spanning::minimum_spanning_forest;
use balspan::strategies::pareto_sweep;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 6;

    // random connected graph: a path plus random chords, sixteenth weights
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    for u in 0..n {
        for v in (u + 2)..n {
            if rng.gen_bool(0.4) {
                pairs.push((u, v));
            }
        }
    }
    let desc = ProblemDesc {
        type_count: 3,
        items: (0..n).map(|i| (format!("a{}", i + 1), 1 + i % 3)).collect(),
        edges: pairs
            .into_iter()
            .map(|(u, v)| {
                let w = rng.gen_range(1..=64) as f64 / 16.0;
                (format!("a{}", u + 1), format!("a{}", v + 1), w)
            })
            .collect(),
        target_cluster: vec![1, 1, 1],
        ..Default::default()
    };
    let instance = ProblemInstance::new(desc).unwrap();

    let forest = minimum_spanning_forest(&instance);
    let all = enumerate_spanning_trees(&instance, 1_000_000).unwrap();
    println!(
        "mst weight {} vs enumeration minimum {} over {} spanning trees",
        forest.total_weight,
        all.min_weight().unwrap(),
        all.trees.len()
    );

    let (optimum, witness) = best_qcb(&instance, n).unwrap();
    let witness: Vec<Vec<&str>> = witness
        .iter()
        .map(|block| block.iter().map(|&m| instance.id_str(m)).collect())
        .collect();
    println!("exhaustive balance optimum {optimum}, witness {witness:?}");

    println!(
        "{:22} {:>5} {:>7} {:>5}",
        "strategy", "q_cb", "oracle", "gap"
    );
    for entry in pareto_sweep(&instance, false).entries {
        match entry.outcome {
            Ok((_, q)) => println!(
                "{:22} {:>5} {:>7} {:>5}",
                entry.label,
                q.q_cb,
                optimum,
                q.q_cb - optimum
            ),
            Err(e) => println!("{:22} failed: {e}", entry.label),
        }
    }
}
