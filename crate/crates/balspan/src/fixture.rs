//! The bundled 19-item reference instance (`examples/paper_19.json`) and its
//! known-good clustering, used by the verification mode and the test suite.

use crate::io;
use crate::model::{ProblemDesc, ProblemInstance};

/// The raw JSON of the bundled instance, exactly as shipped.
pub const PAPER_19_JSON: &str = include_str!("../examples/paper_19.json");

/// The bundled instance as a raw description.
pub fn paper_desc() -> ProblemDesc {
    io::parse_problem(PAPER_19_JSON)
        .expect("bundled fixture parses")
        .to_desc()
}

/// The bundled instance, validated and interned.
pub fn paper_instance() -> ProblemInstance {
    ProblemInstance::new(paper_desc()).expect("bundled fixture is valid")
}

/// The reference item-to-cluster assignment for the bundled instance.
pub fn reference_assignment() -> &'static [(&'static str, usize)] {
    &[
        ("a1", 6),
        ("a2", 6),
        ("a3", 6),
        ("a4", 2),
        ("a5", 5),
        ("a6", 3),
        ("a7", 2),
        ("a8", 2),
        ("a9", 5),
        ("a10", 5),
        ("a11", 3),
        ("a12", 3),
        ("a13", 4),
        ("a14", 1),
        ("a15", 4),
        ("a16", 4),
        ("a17", 1),
        ("a18", 1),
        ("a19", 1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_loads_and_validates() {
        let instance = paper_instance();
        assert_eq!(instance.item_count(), 19);
        assert_eq!(instance.edges().len(), 18);
        assert_eq!(instance.type_count(), 3);
        assert!(instance.is_connected());
        assert_eq!(instance.id_str(instance.root_hint().unwrap()), "a1");
    }
}
