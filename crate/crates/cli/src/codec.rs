//! JSON codec for diagrams and sector tangles.
//!
//! Document schema (exact keys):
//!
//! ```json
//! {"ambient": "sphere" | "annulus",
//!  "nodes": [{"type": "vertex", "halfedges": [ids]} |
//!            {"type": "crossing", "halfedges": [a, b, c, d], "over": [0, 2]}],
//!  "edges": [{"pair": [h1, h2], "winding": w}],
//!  "free_circles": [w]}
//! ```
//!
//! A crossing's `"over"` names the slots of the over-strand: `[0, 2]` or
//! `[1, 3]`. A sector tangle uses the same document with an extra
//! `"boundary": {"left": [ids], "right": [ids]}` and ambient `"annulus"`.
//! Unknown keys are rejected; parse then serialize is the identity.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use skein_core::diagram::{Ambient, Diagram, EdgeRec, Node, SectorTangle};

/// Top-level document for both diagrams and sector tangles.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    /// `"sphere"` or `"annulus"`.
    pub ambient: String,
    /// Vertices and crossings.
    pub nodes: Vec<NodeDoc>,
    /// Half-edge pairing with windings.
    pub edges: Vec<EdgeDoc>,
    /// Windings of node-free circles.
    pub free_circles: Vec<i32>,
    /// Present only for sector tangles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundaryDoc>,
}

/// One node.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum NodeDoc {
    /// Flat vertex, half-edges counterclockwise.
    Vertex {
        /// Incident half-edge ids.
        halfedges: Vec<u32>,
    },
    /// Crossing, half-edges counterclockwise, over-strand at `over` slots.
    Crossing {
        /// The four incident half-edge ids.
        halfedges: Vec<u32>,
        /// `[0, 2]` or `[1, 3]`.
        over: Vec<u8>,
    },
}

/// One edge record.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    /// The two half-edge endpoints.
    pub pair: [u32; 2],
    /// Winding around the annulus core, traversing pair[0] to pair[1].
    #[serde(default)]
    pub winding: i32,
}

/// Seam boundary of a sector tangle.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryDoc {
    /// Left seam half-edges, in seam order.
    pub left: Vec<u32>,
    /// Right seam half-edges, in seam order.
    pub right: Vec<u32>,
}

/// A decoded input file: a plain diagram or a sector tangle.
#[derive(Debug, Clone)]
pub enum Input {
    /// No boundary key.
    Diagram(Diagram),
    /// Boundary key present.
    Tangle(SectorTangle),
}

fn decode_nodes(docs: &[NodeDoc]) -> Result<Vec<Node>> {
    let mut nodes = Vec::with_capacity(docs.len());
    for (i, n) in docs.iter().enumerate() {
        nodes.push(match n {
            NodeDoc::Vertex { halfedges } => Node::Vertex { halfedges: halfedges.clone() },
            NodeDoc::Crossing { halfedges, over } => {
                if halfedges.len() != 4 {
                    bail!("crossing arity {} at node {i} (need 4 half-edges)", halfedges.len());
                }
                let over_even = match over.as_slice() {
                    [0, 2] => true,
                    [1, 3] => false,
                    _ => bail!("crossing over slots {over:?} at node {i} (need [0,2] or [1,3])"),
                };
                Node::Crossing {
                    halfedges: [halfedges[0], halfedges[1], halfedges[2], halfedges[3]],
                    over_even,
                }
            }
        });
    }
    Ok(nodes)
}

fn decode_edges(docs: &[EdgeDoc]) -> Vec<EdgeRec> {
    docs.iter().map(|e| EdgeRec::new(e.pair[0], e.pair[1], e.winding)).collect()
}

/// Decode and structurally validate one document.
pub fn decode(doc: &DiagramDoc) -> Result<Input> {
    let ambient = match doc.ambient.as_str() {
        "sphere" => Ambient::Sphere,
        "annulus" => Ambient::Annulus,
        other => bail!("unknown ambient {other:?} (need \"sphere\" or \"annulus\")"),
    };
    let nodes = decode_nodes(&doc.nodes)?;
    let edges = decode_edges(&doc.edges);
    if let Some(b) = &doc.boundary {
        if ambient != Ambient::Annulus {
            bail!("a sector tangle must have ambient \"annulus\"");
        }
        let t = SectorTangle {
            nodes,
            edges,
            left: b.left.clone(),
            right: b.right.clone(),
            free_circles: doc.free_circles.clone(),
        };
        t.validate().map_err(|e| anyhow!("{e}"))?;
        Ok(Input::Tangle(t))
    } else {
        let d = Diagram { ambient, nodes, edges, free_circles: doc.free_circles.clone() };
        d.validate().map_err(|e| anyhow!("{e}"))?;
        Ok(Input::Diagram(d))
    }
}

fn encode_nodes(nodes: &[Node]) -> Vec<NodeDoc> {
    nodes
        .iter()
        .map(|n| match n {
            Node::Vertex { halfedges } => NodeDoc::Vertex { halfedges: halfedges.clone() },
            Node::Crossing { halfedges, over_even } => NodeDoc::Crossing {
                halfedges: halfedges.to_vec(),
                over: if *over_even { vec![0, 2] } else { vec![1, 3] },
            },
        })
        .collect()
}

fn encode_edges(edges: &[EdgeRec]) -> Vec<EdgeDoc> {
    edges.iter().map(|e| EdgeDoc { pair: [e.a, e.b], winding: e.winding }).collect()
}

/// Encode a diagram back into the document form.
pub fn encode_diagram(d: &Diagram) -> DiagramDoc {
    DiagramDoc {
        ambient: match d.ambient {
            Ambient::Sphere => "sphere".into(),
            Ambient::Annulus => "annulus".into(),
        },
        nodes: encode_nodes(&d.nodes),
        edges: encode_edges(&d.edges),
        free_circles: d.free_circles.clone(),
        boundary: None,
    }
}

/// Encode a sector tangle back into the document form.
pub fn encode_tangle(t: &SectorTangle) -> DiagramDoc {
    DiagramDoc {
        ambient: "annulus".into(),
        nodes: encode_nodes(&t.nodes),
        edges: encode_edges(&t.edges),
        free_circles: t.free_circles.clone(),
        boundary: Some(BoundaryDoc { left: t.left.clone(), right: t.right.clone() }),
    }
}

/// Parse a JSON string into a diagram or tangle.
pub fn parse_input(text: &str) -> Result<Input> {
    let doc: DiagramDoc = serde_json::from_str(text).context("invalid diagram JSON")?;
    decode(&doc)
}

/// Parse a JSON string that must be a plain diagram.
pub fn parse_diagram(text: &str) -> Result<Diagram> {
    match parse_input(text)? {
        Input::Diagram(d) => Ok(d),
        Input::Tangle(_) => bail!("expected a diagram, found a sector tangle (boundary key)"),
    }
}

/// Parse a JSON string that must be a sector tangle.
pub fn parse_tangle(text: &str) -> Result<SectorTangle> {
    match parse_input(text)? {
        Input::Tangle(t) => Ok(t),
        Input::Diagram(_) => bail!("expected a sector tangle (no boundary key found)"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use skein_core::diagram::fixtures;

    #[test]
    fn serialization_matches_the_documented_shape() {
        let d = Diagram {
            ambient: Ambient::Sphere,
            nodes: vec![],
            edges: vec![],
            free_circles: vec![0],
        };
        let text = serde_json::to_string(&encode_diagram(&d)).unwrap();
        assert_eq!(text, r#"{"ambient":"sphere","nodes":[],"edges":[],"free_circles":[0]}"#);
    }

    #[test]
    fn parse_then_serialize_is_identity() {
        for d in [fixtures::theta(), fixtures::trefoil(), fixtures::hopf(), fixtures::petersen()]
        {
            let doc = encode_diagram(&d);
            let text = serde_json::to_string_pretty(&doc).unwrap();
            match parse_input(&text).unwrap() {
                Input::Diagram(back) => assert_eq!(back, d),
                Input::Tangle(_) => panic!("diagram decoded as tangle"),
            }
            let text2 = serde_json::to_string(&encode_diagram(&d)).unwrap();
            assert_eq!(serde_json::to_string(&doc).unwrap(), text2);
        }
        let t = skein_core::gen::braid_tangle(2, &[(0, true)]);
        let text = serde_json::to_string(&encode_tangle(&t)).unwrap();
        assert_eq!(parse_tangle(&text).unwrap(), t);
    }

    #[test]
    fn structural_errors_name_the_offender() {
        let text = r#"{"ambient":"sphere",
            "nodes":[{"type":"crossing","halfedges":[0,1,2],"over":[0,2]}],
            "edges":[],"free_circles":[]}"#;
        let err = parse_input(text).unwrap_err().to_string();
        assert!(err.contains("crossing arity"), "{err}");
        let text = r#"{"ambient":"sphere",
            "nodes":[{"type":"crossing","halfedges":[0,1,2,3],"over":[0,3]}],
            "edges":[{"pair":[0,1]},{"pair":[2,3]}],"free_circles":[]}"#;
        let err = parse_input(text).unwrap_err().to_string();
        assert!(err.contains("over slots"), "{err}");
        let text = r#"{"ambient":"torus","nodes":[],"edges":[],"free_circles":[]}"#;
        assert!(parse_input(text).is_err());
        let text = r#"{"ambient":"sphere","nodes":[],"edges":[],"free_circles":[],"extra":1}"#;
        assert!(parse_input(text).is_err());
        // a winding default of zero still round-trips structurally
        let text = r#"{"ambient":"sphere",
            "nodes":[{"type":"vertex","halfedges":[0,1]}],
            "edges":[{"pair":[0,1]}],"free_circles":[]}"#;
        match parse_input(text).unwrap() {
            Input::Diagram(d) => assert_eq!(d.edges, vec![EdgeRec::new(0, 1, 0)]),
            _ => panic!(),
        }
    }
}
