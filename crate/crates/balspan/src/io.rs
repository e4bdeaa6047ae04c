//! Problem-file ingestion and solution emission: the JSON problem schema,
//! the JSON solution document and the DOT rendering.
//!
//! Serialization is deterministic: members, edges and map keys are emitted
//! in a fixed order, so identical runs produce byte-identical files.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    ClusteringSolution, ItemId, ProblemDesc, ProblemInstance, TargetTreeSpec, TraceStep,
};
use crate::quality::{delta, quality_vector, structure_estimate};
use crate::strategies::SweepResult;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ItemEntry {
    pub id: String,
    #[serde(rename = "type")]
    pub ty: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub u: String,
    pub v: String,
    pub w: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TargetTreeEntry {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<usize>,
}

/// The JSON problem schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub types: usize,
    pub items: Vec<ItemEntry>,
    pub edges: Vec<EdgeEntry>,
    pub target_cluster: Vec<usize>,
    pub target_tree: TargetTreeEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer_targets: Option<Vec<Vec<usize>>>,
}

impl ProblemFile {
    pub fn to_desc(&self) -> ProblemDesc {
        let target_tree = match (self.target_tree.kind.as_str(), self.target_tree.param) {
            ("degree", p) => TargetTreeSpec::DegreeBalanced(p.unwrap_or(0)),
            ("height", p) => TargetTreeSpec::HeightBalanced(p.unwrap_or(0)),
            _ => TargetTreeSpec::MinWeight,
        };
        ProblemDesc {
            type_count: self.types,
            items: self.items.iter().map(|i| (i.id.clone(), i.ty)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| (e.u.clone(), e.v.clone(), e.w))
                .collect(),
            target_cluster: self.target_cluster.clone(),
            target_tree,
            root: self.root.clone(),
            layers: self.layers.clone(),
            layer_targets: self.layer_targets.clone(),
        }
    }

    pub fn from_desc(desc: &ProblemDesc) -> Self {
        let target_tree = match desc.target_tree {
            TargetTreeSpec::MinWeight => TargetTreeEntry {
                kind: "min_weight".to_string(),
                param: None,
            },
            TargetTreeSpec::DegreeBalanced(p) => TargetTreeEntry {
                kind: "degree".to_string(),
                param: Some(p),
            },
            TargetTreeSpec::HeightBalanced(p) => TargetTreeEntry {
                kind: "height".to_string(),
                param: Some(p),
            },
        };
        Self {
            types: desc.type_count,
            items: desc
                .items
                .iter()
                .map(|(id, ty)| ItemEntry {
                    id: id.clone(),
                    ty: *ty,
                })
                .collect(),
            edges: desc
                .edges
                .iter()
                .map(|(u, v, w)| EdgeEntry {
                    u: u.clone(),
                    v: v.clone(),
                    w: *w,
                })
                .collect(),
            target_cluster: desc.target_cluster.clone(),
            target_tree,
            root: desc.root.clone(),
            layers: desc.layers.clone(),
            layer_targets: desc.layer_targets.clone(),
        }
    }
}

/// Parses a problem file; malformed JSON or an unknown tree kind fail here,
/// invariant violations are reported by validation instead.
pub fn parse_problem(json: &str) -> Result<ProblemFile> {
    let file: ProblemFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    match file.target_tree.kind.as_str() {
        "min_weight" | "degree" | "height" => {}
        other => {
            return Err(Error::Parse(format!(
                "unknown target tree kind {other:?} (expected min_weight, degree or height)"
            )))
        }
    }
    Ok(file)
}

/// Parses and validates a problem file into a ready instance.
pub fn load_instance(json: &str) -> Result<ProblemInstance> {
    ProblemInstance::new(parse_problem(json)?.to_desc())
}

/// Serializes an instance back to problem-file JSON.
pub fn problem_json(instance: &ProblemInstance) -> String {
    let file = ProblemFile::from_desc(&instance.to_desc());
    serde_json::to_string_pretty(&file).expect("problem files serialize")
}

#[derive(Debug, Serialize)]
pub struct ClusterDoc {
    pub label: usize,
    pub members: Vec<String>,
    pub estimate: Vec<usize>,
    pub delta: usize,
}

#[derive(Debug, Serialize)]
pub struct TreeEdgeDoc {
    pub parent: usize,
    pub child: usize,
    pub weight: f64,
}

#[derive(Debug, Serialize)]
pub struct ClusterTreeDoc {
    pub root: usize,
    pub edges: Vec<TreeEdgeDoc>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceDoc {
    Condense {
        step: usize,
        edge: (String, String),
        weight: f64,
        seed: Vec<String>,
        added: Vec<String>,
        absorbed: Vec<String>,
        cluster: usize,
        members: Vec<String>,
        estimate: Vec<usize>,
        remaining: usize,
    },
    Attach {
        step: usize,
        node: String,
        cluster: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        via: Option<(String, String, f64)>,
        estimate: Vec<usize>,
    },
    Merge {
        step: usize,
        weight: f64,
        joined: (String, String),
        members: usize,
    },
    Note {
        text: String,
    },
}

/// The JSON solution document.
#[derive(Debug, Serialize)]
pub struct SolutionDoc {
    pub clusters: Vec<ClusterDoc>,
    pub q_cb: usize,
    /// `null` when the solution has no cluster tree: absent structure is
    /// flagged, never scored as perfect.
    pub q_s: Option<f64>,
    pub cluster_tree: Option<ClusterTreeDoc>,
    pub trace: Vec<TraceDoc>,
}

fn name(instance: &ProblemInstance, id: ItemId) -> String {
    instance.id_str(id).to_string()
}

fn names(instance: &ProblemInstance, ids: &[ItemId]) -> Vec<String> {
    ids.iter().map(|&i| name(instance, i)).collect()
}

/// Builds the solution document for emission.
pub fn solution_doc(
    solution: &ClusteringSolution,
    instance: &ProblemInstance,
) -> Result<SolutionDoc> {
    let e0 = instance.target_cluster();
    let mut clusters = Vec::new();
    for cluster in &solution.clusters {
        let est = structure_estimate(cluster, instance)?;
        clusters.push(ClusterDoc {
            label: cluster.label,
            members: names(instance, &cluster.members),
            estimate: est.counts().to_vec(),
            delta: delta(&est, e0)?,
        });
    }
    clusters.sort_by_key(|c| c.label);
    let quality = quality_vector(solution, instance)?;
    let cluster_tree = solution.cluster_tree.as_ref().map(|tree| ClusterTreeDoc {
        root: tree.root(),
        edges: tree
            .edges()
            .iter()
            .map(|&(p, c, w)| TreeEdgeDoc {
                parent: p,
                child: c,
                weight: w,
            })
            .collect(),
    });
    let trace = solution
        .trace
        .iter()
        .map(|step| match step {
            TraceStep::Condense(c) => TraceDoc::Condense {
                step: c.step,
                edge: (name(instance, c.edge.0), name(instance, c.edge.1)),
                weight: c.weight,
                seed: names(instance, &c.seed),
                added: names(instance, &c.added),
                absorbed: names(instance, &c.absorbed),
                cluster: c.label,
                members: names(instance, &c.members),
                estimate: c.estimate.counts().to_vec(),
                remaining: c.remaining,
            },
            TraceStep::Attach(a) => TraceDoc::Attach {
                step: a.step,
                node: name(instance, a.node),
                cluster: a.label,
                via: a
                    .via
                    .map(|(u, v, w)| (name(instance, u), name(instance, v), w)),
                estimate: a.estimate.counts().to_vec(),
            },
            TraceStep::Merge(m) => TraceDoc::Merge {
                step: m.step,
                weight: m.weight,
                joined: (name(instance, m.joined.0), name(instance, m.joined.1)),
                members: m.members,
            },
            TraceStep::Note(text) => TraceDoc::Note { text: text.clone() },
        })
        .collect();
    Ok(SolutionDoc {
        clusters,
        q_cb: quality.q_cb,
        q_s: (!quality.structure_missing()).then_some(quality.q_s),
        cluster_tree,
        trace,
    })
}

pub fn solution_json(solution: &ClusteringSolution, instance: &ProblemInstance) -> Result<String> {
    let doc = solution_doc(solution, instance)?;
    Ok(serde_json::to_string_pretty(&doc).expect("solution documents serialize"))
}

#[derive(Debug, Serialize)]
pub struct SweepCandidateDoc {
    pub label: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_cb: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SweepDoc {
    pub candidates: Vec<SweepCandidateDoc>,
    pub front: Vec<String>,
}

/// Builds the sweep report; `files` maps candidate labels to solution files
/// written next to it.
pub fn sweep_doc(sweep: &SweepResult, files: &BTreeMap<String, String>) -> SweepDoc {
    SweepDoc {
        candidates: sweep
            .entries
            .iter()
            .map(|entry| match &entry.outcome {
                Ok((_, q)) => SweepCandidateDoc {
                    label: entry.label.clone(),
                    ok: true,
                    q_cb: Some(q.q_cb),
                    q_s: (!q.structure_missing()).then_some(q.q_s),
                    error: None,
                    file: files.get(&entry.label).cloned(),
                },
                Err(e) => SweepCandidateDoc {
                    label: entry.label.clone(),
                    ok: false,
                    q_cb: None,
                    q_s: None,
                    error: Some(e.clone()),
                    file: None,
                },
            })
            .collect(),
        front: sweep.front.clone(),
    }
}

const PALETTE: [&str; 12] = [
    "#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c", "#fdbf6f", "#ff7f00",
    "#cab2d6", "#6a3d9a", "#ffff99", "#b15928",
];

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders the solution as an undirected DOT graph: one subgraph per
/// cluster with members filled in the cluster color, all instance edges,
/// and the edges realizing the cluster tree drawn bold.
pub fn solution_dot(solution: &ClusteringSolution, instance: &ProblemInstance) -> String {
    // the instance edge realizing each cluster-tree link (the minimum
    // crossing edge between the two clusters)
    let mut owner: Vec<Option<usize>> = vec![None; instance.item_count()];
    for cluster in &solution.clusters {
        for &m in &cluster.members {
            owner[m.index()] = Some(cluster.label);
        }
    }
    let mut bold: std::collections::BTreeSet<(ItemId, ItemId)> = Default::default();
    if let Some(tree) = &solution.cluster_tree {
        for (p, c, _) in tree.edges() {
            let best = instance
                .edges()
                .iter()
                .filter(|e| {
                    let (a, b) = (owner[e.u.index()], owner[e.v.index()]);
                    (a == Some(p) && b == Some(c)) || (a == Some(c) && b == Some(p))
                })
                .min_by(|a, b| a.w.total_cmp(&b.w).then(a.u.cmp(&b.u)).then(a.v.cmp(&b.v)));
            if let Some(e) = best {
                bold.insert((e.u.min(e.v), e.u.max(e.v)));
            }
        }
    }

    let mut out = String::new();
    out.push_str("graph solution {\n");
    out.push_str("  node [style=filled, shape=circle];\n");
    let mut clusters = solution.clusters.clone();
    clusters.sort_by_key(|c| c.label);
    for cluster in &clusters {
        let color = PALETTE[(cluster.label - 1) % PALETTE.len()];
        out.push_str(&format!("  subgraph cluster_{} {{\n", cluster.label));
        out.push_str(&format!(
            "    label={};\n",
            dot_quote(&format!("X{}", cluster.label))
        ));
        for &m in &cluster.members {
            out.push_str(&format!(
                "    {} [fillcolor={}, tooltip={}];\n",
                dot_quote(instance.id_str(m)),
                dot_quote(color),
                dot_quote(&format!("type {}", instance.type_of(m)))
            ));
        }
        out.push_str("  }\n");
    }
    for e in instance.edges() {
        let key = (e.u.min(e.v), e.u.max(e.v));
        let attrs = if bold.contains(&key) {
            format!(
                "[label={}, style=bold, penwidth=2.5]",
                dot_quote(&format!("{}", e.w))
            )
        } else {
            format!("[label={}]", dot_quote(&format!("{}", e.w)))
        };
        out.push_str(&format!(
            "  {} -- {} {};\n",
            dot_quote(instance.id_str(e.u)),
            dot_quote(instance.id_str(e.v)),
            attrs
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::{paper_instance, PAPER_19_JSON};
    use crate::schemes::CondensingKind;
    use crate::strategies::strategy_spanning_then_balance;

    #[test]
    fn problem_round_trip_preserves_semantics() {
        let instance = paper_instance();
        let json = problem_json(&instance);
        let again = load_instance(&json).unwrap();
        assert_eq!(instance.to_desc().items, again.to_desc().items);
        assert_eq!(instance.to_desc().edges, again.to_desc().edges);
        assert_eq!(
            instance.to_desc().target_cluster,
            again.to_desc().target_cluster
        );
        assert_eq!(instance.to_desc().root, again.to_desc().root);
        // one-decimal weights survive the round trip verbatim
        assert!(json.contains("2.5") && json.contains("0.6") && json.contains("4.0"));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(parse_problem("{ not json"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_problem(&PAPER_19_JSON.replace("min_weight", "mystery")),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn solution_json_is_stable_across_runs() {
        let instance = paper_instance();
        let solve = || {
            let s = strategy_spanning_then_balance(&instance, CondensingKind::LeafEdge).unwrap();
            solution_json(&s, &instance).unwrap()
        };
        assert_eq!(solve(), solve());
    }

    #[test]
    fn solution_doc_reports_reference_quality() {
        let instance = paper_instance();
        let solution = strategy_spanning_then_balance(&instance, CondensingKind::LeafEdge).unwrap();
        let doc = solution_doc(&solution, &instance).unwrap();
        assert_eq!(doc.q_cb, 2);
        assert!(doc.q_s.is_some());
        assert_eq!(doc.clusters.len(), 6);
        assert_eq!(doc.cluster_tree.as_ref().unwrap().root, 6);
    }

    #[test]
    fn dot_output_has_subgraphs_and_bold_tree_edges() {
        let instance = paper_instance();
        let solution = strategy_spanning_then_balance(&instance, CondensingKind::LeafEdge).unwrap();
        let dot = solution_dot(&solution, &instance);
        assert!(dot.starts_with("graph solution {"));
        for label in 1..=6 {
            assert!(dot.contains(&format!("subgraph cluster_{label} {{")));
        }
        assert_eq!(dot.matches("style=bold").count(), 5); // 6 clusters, 5 tree edges
    }
}
