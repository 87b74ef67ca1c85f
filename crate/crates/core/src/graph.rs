//! Rooted edge-colored crystal graphs with per-node decorations, plus JSON
//! and DOT export.

use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CrystalNode {
    pub id: String,
    pub wt: Vec<i64>,
    pub eps: Vec<i64>,
    pub phi: Vec<i64>,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct CrystalEdge {
    pub src: usize,
    pub color: usize,
    pub dst: usize,
}

#[derive(Debug, Clone)]
pub struct CrystalGraph {
    pub n: usize,
    pub wdims: Option<Vec<usize>>,
    pub root: usize,
    pub nodes: Vec<CrystalNode>,
    pub edges: Vec<CrystalEdge>,
    by_id: HashMap<String, usize>,
}

impl CrystalGraph {
    pub fn new(n: usize, wdims: Option<Vec<usize>>) -> Self {
        CrystalGraph {
            n,
            wdims,
            root: 0,
            nodes: Vec::new(),
            edges: Vec::new(),
            by_id: HashMap::new(),
        }
    }

    pub fn add_node(&mut self, node: CrystalNode) -> usize {
        debug_assert!(!self.by_id.contains_key(&node.id), "duplicate node id");
        let idx = self.nodes.len();
        self.by_id.insert(node.id.clone(), idx);
        self.nodes.push(node);
        idx
    }

    pub fn add_edge(&mut self, src: usize, color: usize, dst: usize) {
        self.edges.push(CrystalEdge { src, color, dst });
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    /// Target of the color-i edge out of `src`, if present.
    pub fn out_edge(&self, src: usize, color: usize) -> Option<usize> {
        self.edges
            .iter()
            .find(|e| e.src == src && e.color == color)
            .map(|e| e.dst)
    }

    pub fn in_edge(&self, dst: usize, color: usize) -> Option<usize> {
        self.edges
            .iter()
            .find(|e| e.dst == dst && e.color == color)
            .map(|e| e.src)
    }

    /// Sort edges canonically (source index, then color). Node order is
    /// fixed by construction.
    pub fn canonicalize(&mut self) {
        self.edges.sort_by_key(|e| (e.src, e.color, e.dst));
    }

    pub fn to_json_string(&self) -> String {
        #[derive(Serialize)]
        struct EdgeShape<'a> {
            src: &'a str,
            color: usize,
            dst: &'a str,
        }
        #[derive(Serialize)]
        struct GraphShape<'a> {
            n: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            wdims: &'a Option<Vec<usize>>,
            root: &'a str,
            nodes: &'a [CrystalNode],
            edges: Vec<EdgeShape<'a>>,
        }
        let shape = GraphShape {
            n: self.n,
            wdims: &self.wdims,
            root: &self.nodes[self.root].id,
            nodes: &self.nodes,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeShape {
                    src: &self.nodes[e.src].id,
                    color: e.color,
                    dst: &self.nodes[e.dst].id,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&shape).expect("graph serialization")
    }

    pub fn to_dot_string(&self) -> String {
        let mut out = String::from("digraph crystal {\n  rankdir=TB;\n");
        for node in &self.nodes {
            let wt: Vec<String> = node.wt.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!(
                "  \"{}\" [wt=\"[{}]\"];\n",
                node.id,
                wt.join(",")
            ));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.nodes[e.src].id, self.nodes[e.dst].id, e.color
            ));
        }
        out.push_str("}\n");
        out
    }

    /// Every node reachable from the root along edges.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        while let Some(u) = stack.pop() {
            for e in self.edges.iter().filter(|e| e.src == u) {
                if !seen[e.dst] {
                    seen[e.dst] = true;
                    stack.push(e.dst);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> CrystalGraph {
        let mut g = CrystalGraph::new(1, None);
        let a = g.add_node(CrystalNode {
            id: "a".into(),
            wt: vec![0],
            eps: vec![0],
            phi: vec![0],
        });
        let b = g.add_node(CrystalNode {
            id: "b".into(),
            wt: vec![-2],
            eps: vec![1],
            phi: vec![-1],
        });
        g.add_edge(a, 1, b);
        g.canonicalize();
        g
    }

    #[test]
    fn export_formats() {
        let g = tiny();
        let dot = g.to_dot_string();
        assert!(dot.contains("\"a\" -> \"b\" [label=\"1\"]"));
        assert!(dot.contains("wt=\"[0]\""));
        let js: serde_json::Value = serde_json::from_str(&g.to_json_string()).unwrap();
        assert_eq!(js["root"], "a");
        assert_eq!(js["edges"][0]["color"], 1);
    }

    #[test]
    fn connectivity() {
        let mut g = tiny();
        assert!(g.is_connected());
        g.add_node(CrystalNode {
            id: "c".into(),
            wt: vec![0],
            eps: vec![0],
            phi: vec![0],
        });
        assert!(!g.is_connected());
    }
}
