//! Deterministic JSON and DOT serializations of a [`BallGraph`].
//!
//! JSON (schema version 1):
//!
//! ```text
//! {"basepoint":[i,m],"radius":R,"vertices":[[i,m],...],
//!  "edges":[[src,"label",dst],...],"spheres":[d0,d1,...]}
//! ```
//!
//! Vertices appear in `(ray, position)` order, `spheres[k]` is the distance of
//! `vertices[k]` from the basepoint and edges are sorted by
//! `(src, label, dst)`. DOT uses one node `i_m` per vertex.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::ball::{BallEdge, BallGraph, SchreierError};
use crate::action::RayPoint;

#[derive(Serialize, Deserialize)]
struct BallJson {
    basepoint: RayPoint,
    radius: u32,
    vertices: Vec<RayPoint>,
    edges: Vec<(usize, String, usize)>,
    spheres: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl BallGraph {
    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => self.to_json(),
        }
    }

    pub fn to_json(&self) -> String {
        let doc = BallJson {
            basepoint: self.basepoint(),
            radius: self.radius(),
            vertices: self.vertices().to_vec(),
            edges: self
                .edges()
                .iter()
                .map(|e| (e.source, self.labels()[e.generator].clone(), e.target))
                .collect(),
            spheres: self.spheres().to_vec(),
        };
        serde_json::to_string(&doc).expect("ball serializes")
    }

    pub fn to_dot(&self) -> String {
        let name = |p: RayPoint| format!("\"{}_{}\"", p.ray, p.pos);
        let mut out = String::from("digraph schreier {\n");
        for (v, &p) in self.vertices().iter().enumerate() {
            let _ = writeln!(
                out,
                "  {} [label=\"({},{})\" sphere={}];",
                name(p),
                p.ray,
                p.pos,
                self.sphere_of(v)
            );
        }
        for e in self.edges() {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                name(self.vertices()[e.source]),
                name(self.vertices()[e.target]),
                self.labels()[e.generator]
            );
        }
        out.push_str("}\n");
        out
    }

    /// Rebuilds a ball from its JSON form. Generator labels are recovered from
    /// the edge list.
    pub fn from_json(text: &str) -> Result<Self, SchreierError> {
        let doc: BallJson =
            serde_json::from_str(text).map_err(|e| SchreierError::Json(e.to_string()))?;
        let n = doc.vertices.len();
        if doc.spheres.len() != n {
            return Err(SchreierError::Malformed(format!(
                "{} vertices but {} sphere entries",
                n,
                doc.spheres.len()
            )));
        }
        if doc.vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SchreierError::Malformed(
                "vertices must be strictly increasing".into(),
            ));
        }
        if doc.vertices.binary_search(&doc.basepoint).is_err() {
            return Err(SchreierError::UnknownVertex(doc.basepoint));
        }
        let labels: Vec<String> = doc
            .edges
            .iter()
            .map(|(_, l, _)| l.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (source, label, target) in &doc.edges {
            if *source >= n || *target >= n {
                return Err(SchreierError::Malformed(format!(
                    "edge ({source}, {label}, {target}) out of range"
                )));
            }
            edges.push(BallEdge {
                source: *source,
                generator: labels.binary_search(label).expect("label collected"),
                target: *target,
            });
        }
        Ok(Self::assemble(
            doc.basepoint,
            doc.radius,
            labels,
            doc.vertices,
            doc.spheres,
            edges,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::MarkedAction;
    use crate::schreier::build_ball;

    fn y2(radius: u32) -> BallGraph {
        build_ball(
            &MarkedAction::houghton(2).unwrap(),
            RayPoint::new(1, 1),
            radius,
        )
        .unwrap()
    }

    #[test]
    fn radius_zero_json() {
        assert_eq!(
            y2(0).to_json(),
            r#"{"basepoint":[1,1],"radius":0,"vertices":[[1,1]],"edges":[],"spheres":[0]}"#
        );
    }

    #[test]
    fn dot_of_radius_two() {
        let dot = y2(2).to_dot();
        assert_eq!(dot.matches("[label=\"(").count(), 5);
        for line in dot.lines().filter(|l| l.contains("->")) {
            assert!(line.contains("label=\"g1\"") || line.contains("label=\"beta\""));
        }
        assert!(dot.contains("\"1_1\" -> \"2_1\" [label=\"g1\"];"));
        assert!(dot.contains("\"1_2\" -> \"1_2\" [label=\"beta\"];"));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for radius in [0, 1, 2, 7] {
            let text = y2(radius).to_json();
            let back = BallGraph::from_json(&text).unwrap();
            assert_eq!(back.to_json(), text);
            assert_eq!(back.to_dot(), y2(radius).to_dot());
        }
        let ext = build_ball(
            &MarkedAction::houghton_extended(3, &[1, 3, 2]).unwrap(),
            RayPoint::new(1, 1),
            5,
        )
        .unwrap();
        let text = ext.to_json();
        assert_eq!(BallGraph::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(BallGraph::from_json("{").is_err());
        let bad = r#"{"basepoint":[1,1],"radius":0,"vertices":[[1,1]],"edges":[[0,"g1",4]],"spheres":[0]}"#;
        assert!(matches!(
            BallGraph::from_json(bad),
            Err(SchreierError::Malformed(_))
        ));
        let missing =
            r#"{"basepoint":[2,1],"radius":0,"vertices":[[1,1]],"edges":[],"spheres":[0]}"#;
        assert!(matches!(
            BallGraph::from_json(missing),
            Err(SchreierError::UnknownVertex(_))
        ));
    }
}
