//! Solve the bundled instance and write the solution document and its DOT
//! rendering into the current directory.
//!
//!     cargo run --example emit_files
//!     dot -Tsvg solution.dot -o solution.svg

use balspan::fixture::paper_instance;
use balspan::io::{solution_dot, solution_json};
use balspan::schemes::CondensingKind;
use balspan::strategies::strategy_spanning_then_balance;

fn main() {
    let instance = paper_instance();
    let solution = strategy_spanning_then_balance(&instance, CondensingKind::LeafEdge).unwrap();

    let json = solution_json(&solution, &instance).unwrap();
    std::fs::write("solution.json", &json).unwrap();
    println!("wrote solution.json ({} bytes)", json.len());

    let dot = solution_dot(&solution, &instance);
    std::fs::write("solution.dot", &dot).unwrap();
    println!("wrote solution.dot ({} bytes)", dot.len());
    println!("\n{dot}");
}
