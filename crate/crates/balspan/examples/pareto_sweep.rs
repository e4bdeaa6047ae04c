//! Sweep every strategy over the bundled instance and filter the quality
//! vectors to the Pareto front, with and without local improvement.
//!
//!     cargo run --example pareto_sweep

use balspan::fixture::paper_instance;
use balspan::strategies::pareto_sweep;

fn main() {
    let instance = paper_instance();

    for improve in [false, true] {
        let sweep = pareto_sweep(&instance, improve);
        println!(
            "sweep{}:",
            if improve {
                " with local improvement"
            } else {
                ""
            }
        );
        for entry in &sweep.entries {
            match &entry.outcome {
                Ok((solution, q)) => println!(
                    "  {:22} {:2} clusters  quality {}",
                    entry.label,
                    solution.clusters.len(),
                    q
                ),
                Err(e) => println!("  {:22} failed: {e}", entry.label),
            }
        }
        println!("  front: {}\n", sweep.front.join(", "));
    }
}
