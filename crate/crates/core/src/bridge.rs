//! The bijection between tableaux and multisegment-labeled components, and
//! the decorated-graph isomorphism verifier.

use crate::cartan::{pairing, partition_of_weight, RootDatum, Weight};
use crate::error::{Error, Result};
use crate::graph::{CrystalGraph, CrystalNode};
use crate::multiseg::Multisegment;
use crate::tableau::{enumerate_ssyt, eps_tab, f_tab, phi_tab, weight_tab, Tableau};
use serde::Serialize;
use std::collections::HashMap;

/// A box with entry j in row i contributes the segment [i, j-1]; boxes with
/// entry equal to their row index contribute nothing.
pub fn tableau_to_multisegment(t: &Tableau, n: usize) -> Result<Multisegment> {
    if t.max_entry() > n + 1 {
        return Err(Error::domain(format!(
            "tableau entry exceeds {}",
            n + 1
        )));
    }
    let mut pairs = Vec::new();
    for (r, row) in t.rows().iter().enumerate() {
        let i = r + 1;
        for &j in row {
            if j > i {
                pairs.push((i, j - 1));
            }
        }
    }
    Multisegment::from_pairs(n, &pairs)
}

/// Inverse of [`tableau_to_multisegment`] on the stable set: segments with
/// left endpoint i become the row-i entries bigger than i; the remaining
/// boxes of row i keep the highest-weight entry i. Sorting each row is the
/// unique weakly-increasing arrangement, so semistandardness of the result
/// is exactly the stability of the component, and is checked.
pub fn multisegment_to_tableau(m: &Multisegment, wdims: &[usize]) -> Result<Tableau> {
    if wdims.len() != m.n {
        return Err(Error::domain("framing dimension vector has wrong length"));
    }
    let d = RootDatum::type_a(m.n);
    let w = Weight {
        coords: wdims.iter().map(|&x| x as i64).collect(),
    };
    let shape = partition_of_weight(&d, &w)?;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for (r, &len) in shape.iter().enumerate() {
        let i = r + 1;
        let mut entries: Vec<usize> = m
            .segments()
            .iter()
            .filter(|s| s.start == i)
            .map(|s| s.end + 1)
            .collect();
        if entries.len() > len {
            return Err(Error::domain(format!(
                "row {i} needs {} boxes but the shape provides {len}",
                entries.len()
            )));
        }
        entries.extend(std::iter::repeat(i).take(len - entries.len()));
        entries.sort_unstable();
        if len > 0 {
            rows.push(entries);
        }
    }
    let t = Tableau::new(rows)
        .map_err(|_| Error::domain(format!("{m} is not a stable component for w={wdims:?}")))?;
    if tableau_to_multisegment(&t, m.n)? != *m {
        return Err(Error::internal("tableau round trip failed"));
    }
    Ok(t)
}

/// The tableau crystal of the given shape as a decorated graph, rooted at
/// the highest-weight tableau.
pub fn tableau_crystal(shape: &[usize], n: usize) -> CrystalGraph {
    let d = RootDatum::type_a(n);
    let mut graph = CrystalGraph::new(n, None);
    let tableaux = enumerate_ssyt(shape, n);
    let mut index: HashMap<Tableau, usize> = HashMap::new();
    let root = Tableau::highest_weight(shape);
    let mut ordered: Vec<Tableau> = vec![root.clone()];
    // Breadth-first order from the root keeps node ids aligned with the
    // geometric generator.
    let mut seen: HashMap<Tableau, ()> = HashMap::new();
    seen.insert(root.clone(), ());
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        frontier.sort_by_key(|t| t.to_string());
        let mut next = Vec::new();
        for t in &frontier {
            for i in 1..=n {
                if let Some(ft) = f_tab(t, i) {
                    if !seen.contains_key(&ft) {
                        seen.insert(ft.clone(), ());
                        ordered.push(ft.clone());
                        next.push(ft);
                    }
                }
            }
        }
        frontier = next;
    }
    debug_assert_eq!(ordered.len(), tableaux.len());
    for t in ordered {
        let wt = weight_tab(&t, n);
        let eps: Vec<i64> = (1..=n).map(|i| eps_tab(&t, i) as i64).collect();
        let phi: Vec<i64> = (1..=n).map(|i| phi_tab(&t, i) as i64).collect();
        debug_assert!((1..=n).all(|i| phi[i - 1] - eps[i - 1] == pairing(&d, i, &wt).unwrap()));
        let idx = graph.add_node(CrystalNode {
            id: t.to_string(),
            wt: wt.coords,
            eps,
            phi,
        });
        index.insert(t, idx);
    }
    for (t, &src) in &index {
        for i in 1..=n {
            if let Some(ft) = f_tab(t, i) {
                graph.add_edge(src, i, index[&ft]);
            }
        }
    }
    graph.canonicalize();
    graph
}

#[derive(Debug, Clone, Serialize)]
pub struct Matching {
    pub pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone)]
pub enum IsoOutcome {
    Isomorphic(Matching),
    Mismatch(String),
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

/// Decide whether two rooted decorated crystal graphs are isomorphic by the
/// unique color-preserving matching grown from the roots. Decorations (wt,
/// eps, phi) must agree node by node; the first divergence is reported.
pub fn crystal_isomorphic(g1: &CrystalGraph, g2: &CrystalGraph) -> IsoOutcome {
    if g1.n != g2.n {
        return IsoOutcome::Mismatch("ranks differ".into());
    }
    if g1.nodes.len() != g2.nodes.len() {
        return IsoOutcome::Mismatch(format!(
            "node counts differ: {} vs {}",
            g1.nodes.len(),
            g2.nodes.len()
        ));
    }
    let mut matched: Vec<Option<usize>> = vec![None; g1.nodes.len()];
    let mut hit: Vec<bool> = vec![false; g2.nodes.len()];
    let mut queue = std::collections::VecDeque::new();
    matched[g1.root] = Some(g2.root);
    hit[g2.root] = true;
    queue.push_back(g1.root);
    while let Some(u) = queue.pop_front() {
        let v = matched[u].unwrap();
        let (a, b) = (&g1.nodes[u], &g2.nodes[v]);
        if a.wt != b.wt || a.eps != b.eps || a.phi != b.phi {
            return IsoOutcome::Mismatch(format!(
                "decorations differ at {} / {}: wt {:?} vs {:?}, eps {:?} vs {:?}, phi {:?} vs {:?}",
                a.id, b.id, a.wt, b.wt, a.eps, b.eps, a.phi, b.phi
            ));
        }
        for color in 1..=g1.n {
            let e1 = g1.out_edge(u, color);
            let e2 = g2.out_edge(v, color);
            match (e1, e2) {
                (None, None) => {}
                (Some(_), None) | (None, Some(_)) => {
                    return IsoOutcome::Mismatch(format!(
                        "edge of color {color} present at only one of {} / {}",
                        a.id, b.id
                    ));
                }
                (Some(x), Some(y)) => match matched[x] {
                    None => {
                        if hit[y] {
                            return IsoOutcome::Mismatch(format!(
                                "matching is not injective at {}",
                                g2.nodes[y].id
                            ));
                        }
                        matched[x] = Some(y);
                        hit[y] = true;
                        queue.push_back(x);
                    }
                    Some(expected) => {
                        if expected != y {
                            return IsoOutcome::Mismatch(format!(
                                "color {color} edges out of {} disagree",
                                a.id
                            ));
                        }
                    }
                },
            }
        }
    }
    if matched.iter().any(|m| m.is_none()) {
        return IsoOutcome::Mismatch("some nodes were never reached from the root".into());
    }
    let pairs = matched
        .iter()
        .enumerate()
        .map(|(u, v)| {
            (
                g1.nodes[u].id.clone(),
                g2.nodes[v.unwrap()].id.clone(),
            )
        })
        .collect();
    IsoOutcome::Isomorphic(Matching { pairs })
}

/// Highest-weight tableau shape for a framing vector.
pub fn shape_of_wdims(n: usize, wdims: &[usize]) -> Result<Vec<usize>> {
    let d = RootDatum::type_a(n);
    let w = Weight {
        coords: wdims.iter().map(|&x| x as i64).collect(),
    };
    partition_of_weight(&d, &w)
}
