use serde::Deserialize;

use super::{Edge, FixedPoint, FixedPointData, Multigraph};
use crate::error::{Error, Result};
use crate::weight_algebra::Weight;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    torus_rank: usize,
    half_dim: usize,
    #[serde(default)]
    torus_manifold: bool,
    fixed_points: Vec<RawPoint>,
    #[serde(default)]
    edges: Option<Vec<RawEdge>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    id: String,
    weights: Vec<Weight>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: String,
    to: String,
    label: Weight,
}

/// A parsed document: the data and, when present, its edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub data: FixedPointData,
    pub graph: Option<Multigraph>,
}

impl Document {
    pub fn new(data: FixedPointData, graph: Option<Multigraph>) -> Self {
        Document { data, graph }
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(&self.data, self.graph.as_ref())
    }
}

pub fn parse_str(s: &str) -> Result<Document> {
    parse(s.as_bytes())
}

/// Parses the canonical JSON document, enforcing every structural invariant
/// and, when `torus_manifold` is set, the basis condition at each point.
pub fn parse(bytes: &[u8]) -> Result<Document> {
    let raw: RawDocument = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    let points = raw
        .fixed_points
        .into_iter()
        .map(|p| FixedPoint::new(p.id, p.weights))
        .collect();
    let data = FixedPointData::new(raw.torus_rank, raw.half_dim, points)?
        .with_torus_manifold(raw.torus_manifold)?;
    let graph = raw
        .edges
        .map(|edges| {
            let edges = edges
                .into_iter()
                .map(|e| Edge::new(e.from, e.to, e.label))
                .collect();
            Multigraph::for_data(&data, edges)
        })
        .transpose()?;
    Ok(Document { data, graph })
}

fn weight_json(w: &Weight) -> String {
    let parts: Vec<String> = w.entries().iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn string_json(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Byte-stable canonical form: points sorted by id, weights sorted
/// lexicographically, edges sorted by `(from, to, label)`, one point or
/// edge per line.
pub fn to_canonical_json(data: &FixedPointData, graph: Option<&Multigraph>) -> String {
    let data = data.canonical();
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"torus_rank\": {},\n", data.torus_rank()));
    out.push_str(&format!("  \"half_dim\": {},\n", data.half_dim()));
    out.push_str(&format!("  \"torus_manifold\": {},\n", data.is_torus_manifold()));
    out.push_str("  \"fixed_points\": [");
    let points: Vec<String> = data
        .points()
        .iter()
        .map(|p| {
            let ws: Vec<String> = p.weights.iter().map(weight_json).collect();
            format!(
                "\n    {{ \"id\": {}, \"weights\": [{}] }}",
                string_json(&p.id),
                ws.join(",")
            )
        })
        .collect();
    out.push_str(&points.join(","));
    out.push_str(if points.is_empty() { "]" } else { "\n  ]" });
    if let Some(g) = graph {
        let mut edges = g.edges().to_vec();
        edges.sort();
        out.push_str(",\n  \"edges\": [");
        let lines: Vec<String> = edges
            .iter()
            .map(|e| {
                format!(
                    "\n    {{ \"from\": {}, \"to\": {}, \"label\": {} }}",
                    string_json(&e.from),
                    string_json(&e.to),
                    weight_json(&e.label)
                )
            })
            .collect();
        out.push_str(&lines.join(","));
        out.push_str(if lines.is_empty() { "]" } else { "\n  ]" });
    }
    out.push_str("\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CP2: &str = r#"{
  "torus_rank": 2,
  "half_dim": 2,
  "torus_manifold": true,
  "fixed_points": [
    { "id": "p0", "weights": [[0,1],[1,0]] },
    { "id": "p1", "weights": [[-1,0],[-1,1]] },
    { "id": "p2", "weights": [[0,-1],[1,-1]] }
  ],
  "edges": [
    { "from": "p0", "to": "p1", "label": [1,0] },
    { "from": "p0", "to": "p2", "label": [0,1] },
    { "from": "p1", "to": "p2", "label": [-1,1] }
  ]
}
"#;

    #[test]
    fn canonical_round_trip() {
        let doc = parse_str(CP2).unwrap();
        assert_eq!(doc.data.num_points(), 3);
        assert!(doc.data.is_torus_manifold());
        assert_eq!(doc.graph.as_ref().unwrap().edges().len(), 3);
        assert_eq!(doc.to_json(), CP2);
    }

    #[test]
    fn reorders_into_canonical_form() {
        let messy = r#"{"half_dim":1,"torus_rank":1,"fixed_points":[{"id":"b","weights":[[-2]]},{"id":"a","weights":[[2]]}]}"#;
        let doc = parse_str(messy).unwrap();
        assert!(doc.graph.is_none());
        assert_eq!(
            doc.to_json(),
            "{\n  \"torus_rank\": 1,\n  \"half_dim\": 1,\n  \"torus_manifold\": false,\n  \"fixed_points\": [\n    { \"id\": \"a\", \"weights\": [[2]] },\n    { \"id\": \"b\", \"weights\": [[-2]] }\n  ]\n}\n"
        );
        assert_eq!(parse_str(&doc.to_json()).unwrap().to_json(), doc.to_json());
    }

    #[test]
    fn rejects_bad_documents() {
        let zero = r#"{"torus_rank":2,"half_dim":1,"fixed_points":[{"id":"p","weights":[[0,0]]}]}"#;
        assert!(matches!(parse_str(zero), Err(Error::ZeroWeight(_))));
        let dim = r#"{"torus_rank":2,"half_dim":1,"fixed_points":[{"id":"p","weights":[[1,0,0]]}]}"#;
        assert!(matches!(parse_str(dim), Err(Error::Dimension { expected: 2, found: 3 })));
        let dup = r#"{"torus_rank":1,"half_dim":1,"fixed_points":[{"id":"p","weights":[[1]]},{"id":"p","weights":[[-1]]}]}"#;
        assert!(matches!(parse_str(dup), Err(Error::DuplicateId(_))));
        let count = r#"{"torus_rank":1,"half_dim":2,"fixed_points":[{"id":"p","weights":[[1]]}]}"#;
        assert!(matches!(parse_str(count), Err(Error::Dimension { expected: 2, found: 1 })));
        assert!(matches!(parse_str("{"), Err(Error::Parse(_))));
        let unknown = r#"{"torus_rank":1,"half_dim":0,"fixed_points":[],"colour":1}"#;
        assert!(matches!(parse_str(unknown), Err(Error::Parse(_))));
        let edge = r#"{"torus_rank":1,"half_dim":1,"fixed_points":[{"id":"p","weights":[[1]]}],"edges":[{"from":"p","to":"x","label":[1]}]}"#;
        assert!(matches!(parse_str(edge), Err(Error::UnknownVertex(_))));
        let not_basis = r#"{"torus_rank":1,"half_dim":1,"torus_manifold":true,"fixed_points":[{"id":"p","weights":[[2]]}]}"#;
        assert!(matches!(parse_str(not_basis), Err(Error::Precondition(_))));
    }
}
