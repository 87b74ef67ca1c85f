//! The crystal on irreducible components of the nilpotent quiver varieties
//! for type A, with components labeled by multisegments.
//!
//! The component-level statistics are computed on generic points: with the
//! orientation part frozen at the canonical direct sum of segment modules,
//! the moment-map condition is linear in the reverse maps, and the solution
//! space has an explicit basis — one generator for each ordered pair of
//! segments (src, tgt) with src.start < tgt.start, src.end < tgt.end and
//! tgt.start <= src.end + 1, chaining src's basis line into tgt's along the
//! overlap. Random integer points of that space stand in for generic points;
//! coranks are upper semicontinuous, so the minimum over samples is the
//! generic value up to negligible failure probability.
//!
//! Crystal operators follow the stratum correspondence: the maximal raising
//! operator restricts a generic point to the subspace generated by all
//! arrows entering vertex i, and the lowering operator is computed as the
//! unique preimage under that correspondence, searched over single-box moves
//! with an exhaustive fallback.

use crate::cartan::{pairing, RootDatum, Weight};
use crate::error::{Error, Result};
use crate::graph::{CrystalGraph, CrystalNode};
use crate::linalg::{q_from_i64, QMat};
use crate::multiseg::{enumerate_by_dimvec, Multisegment, Segment};
use crate::rep::{decompose_segments, epsilon_point, incoming_image, restrict, RepPoint};
use crate::rng::Genericity;
use rand::Rng;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap, HashSet};

/// The linear space of reverse maps completing the canonical orientation
/// point of a multisegment to a point with vanishing moment map.
#[derive(Debug, Clone)]
pub struct ConormalFiber {
    pub x_omega: RepPoint,
    /// Additive basis increments, supported on the reverse arrows.
    pub basis: Vec<BTreeMap<String, QMat>>,
}

impl ConormalFiber {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// A point of the fiber with random integer coefficients on the basis.
    pub fn sample(&self, rng: &mut impl Rng, bound: i64) -> RepPoint {
        let mut p = self.x_omega.clone();
        for b in &self.basis {
            let c = q_from_i64(rng.random_range(-bound..=bound));
            for (id, inc) in b {
                let cur = p.map(id).add(&inc.scale(&c));
                p.set_map(id, cur).unwrap();
            }
        }
        p
    }
}

/// Pairs (src, tgt) of segment indices that admit a nonzero connecting
/// reverse map.
fn connecting_pairs(m: &Multisegment) -> Vec<(usize, usize)> {
    let segs = m.segments();
    let mut out = Vec::new();
    for (src, s2) in segs.iter().enumerate() {
        for (tgt, s1) in segs.iter().enumerate() {
            if s2.start < s1.start && s2.end < s1.end && s1.start <= s2.end + 1 {
                out.push((src, tgt));
            }
        }
    }
    out
}

pub fn conormal_fiber(m: &Multisegment) -> ConormalFiber {
    let x_omega = RepPoint::canonical(m);
    let dims = x_omega.dims.clone();
    let mut basis = Vec::new();
    for (src, tgt) in connecting_pairs(m) {
        let s2 = m.segments()[src];
        let s1 = m.segments()[tgt];
        let mut inc: BTreeMap<String, QMat> = BTreeMap::new();
        for k in (s1.start - 1)..=s2.end {
            let mut mat = QMat::zeros(dims[k], dims[k - 1]);
            let row = m.basis_index(tgt, k + 1).unwrap();
            let col = m.basis_index(src, k).unwrap();
            mat.set(row, col, crate::linalg::q_one());
            inc.insert(format!("a{k}bar"), mat);
        }
        basis.push(inc);
    }
    ConormalFiber { x_omega, basis }
}

/// Generic value of the vertex-i cokernel dimension on the component named
/// by `m`: the minimum over random fiber points.
pub fn epsilon_component(m: &Multisegment, i: usize, gen: &Genericity) -> usize {
    let fiber = conormal_fiber(m);
    let samples = if fiber.dim() == 0 { 1 } else { gen.samples };
    let mut rng = gen.rng("epsilon", &format!("{m}#{i}"));
    (0..samples)
        .map(|_| epsilon_point(&fiber.sample(&mut rng, gen.bound), i))
        .min()
        .expect("at least one sample")
}

fn e_max_attempt(
    m: &Multisegment,
    i: usize,
    c: usize,
    gen: &Genericity,
    tag: &str,
) -> Result<Option<Multisegment>> {
    let fiber = conormal_fiber(m);
    let samples = if fiber.dim() == 0 { 1 } else { gen.samples };
    let mut rng = gen.rng(tag, &format!("{m}#{i}"));
    let mut seen: Vec<Multisegment> = Vec::new();
    for _ in 0..samples {
        let p = fiber.sample(&mut rng, gen.bound);
        if epsilon_point(&p, i) != c {
            continue;
        }
        let bases: Vec<QMat> = (1..=m.n)
            .map(|v| {
                if v == i {
                    incoming_image(&p, v)
                } else {
                    QMat::identity(p.dims[v - 1])
                }
            })
            .collect();
        let restricted = restrict(&p, &bases)?;
        debug_assert_eq!(epsilon_point(&restricted, i), 0);
        seen.push(decompose_segments(&restricted)?);
    }
    if seen.is_empty() {
        return Ok(None);
    }
    if seen.iter().all(|x| x == &seen[0]) {
        Ok(Some(seen.remove(0)))
    } else {
        Ok(None)
    }
}

/// Maximal raising: restrict a generic point of the component to the
/// subspace generated at vertex i by all incoming arrows, and decompose.
/// Returns the resulting component together with c = epsilon_i(m).
pub fn e_max_geometric(
    m: &Multisegment,
    i: usize,
    gen: &Genericity,
) -> Result<(Multisegment, usize)> {
    let c = epsilon_component(m, i, gen);
    if c == 0 {
        return Ok((m.clone(), 0));
    }
    if let Some(out) = e_max_attempt(m, i, c, gen, "emax")? {
        return Ok((out, c));
    }
    // Samples disagreed or all were non-generic; escalate once.
    let escalated = gen.with_samples(gen.samples * 4 + 4);
    if let Some(out) = e_max_attempt(m, i, c, &escalated, "emax-retry")? {
        return Ok((out, c));
    }
    Err(Error::internal(format!(
        "generic restriction at vertex {i} of {m} did not stabilize"
    )))
}

/// Single-box moves that add a box at vertex i.
fn box_additions(m: &Multisegment, i: usize) -> Vec<Multisegment> {
    let mut set: HashSet<Multisegment> = HashSet::new();
    set.insert(m.with_segment(Segment::new(i, i).unwrap()).unwrap());
    for &s in m.segments() {
        if s.start == i + 1 {
            let moved = m
                .replace_segment(s, Segment::new(i, s.end).unwrap())
                .unwrap()
                .unwrap();
            set.insert(moved);
        }
        if s.end + 1 == i {
            let moved = m
                .replace_segment(s, Segment::new(s.start, i).unwrap())
                .unwrap()
                .unwrap();
            set.insert(moved);
        }
    }
    let mut out: Vec<Multisegment> = set.into_iter().collect();
    out.sort_by_key(|x| x.to_string());
    out
}

/// Single-box moves that remove a box at vertex i.
fn box_removals(m: &Multisegment, i: usize) -> Vec<Multisegment> {
    let mut set: HashSet<Multisegment> = HashSet::new();
    for &s in m.segments() {
        if s.end == i {
            let shrunk = if s.start == i {
                m.without_segment(s).unwrap()
            } else {
                m.replace_segment(s, Segment::new(s.start, i - 1).unwrap())
                    .unwrap()
                    .unwrap()
            };
            set.insert(shrunk);
        }
        if s.start == i && s.end > i {
            let shrunk = m
                .replace_segment(s, Segment::new(i + 1, s.end).unwrap())
                .unwrap()
                .unwrap();
            set.insert(shrunk);
        }
    }
    let mut out: Vec<Multisegment> = set.into_iter().collect();
    out.sort_by_key(|x| x.to_string());
    out
}

fn unique_match(
    candidates: Vec<Multisegment>,
    i: usize,
    want_eps: usize,
    want_image: &Multisegment,
    gen: &Genericity,
) -> Result<Option<Multisegment>> {
    let mut hits = Vec::new();
    for cand in candidates {
        if epsilon_component(&cand, i, gen) != want_eps {
            continue;
        }
        let (image, _) = e_max_geometric(&cand, i, gen)?;
        if &image == want_image {
            hits.push(cand);
        }
    }
    match hits.len() {
        0 => Ok(None),
        1 => Ok(Some(hits.remove(0))),
        _ => Err(Error::internal(format!(
            "stratum correspondence matched {} candidates at vertex {i}: {}",
            hits.len(),
            hits.iter()
                .map(|h| h.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ))),
    }
}

/// Lowering operator on components: the unique multisegment one box bigger
/// at vertex i whose cokernel count is c+1 and whose maximal raising lands
/// on the same component as m's.
pub fn f_geometric(m: &Multisegment, i: usize, gen: &Genericity) -> Result<Multisegment> {
    let c = epsilon_component(m, i, gen);
    let (image, _) = e_max_geometric(m, i, gen)?;
    if let Some(hit) = unique_match(box_additions(m, i), i, c + 1, &image, gen)? {
        return Ok(hit);
    }
    // The single-box move set missed; fall back to every multisegment of
    // the target dimension vector.
    gen.note_fallback();
    let mut target = m.dimvec();
    target[i - 1] += 1;
    let all = enumerate_by_dimvec(m.n, &target);
    match unique_match(all, i, c + 1, &image, gen)? {
        Some(hit) => Ok(hit),
        None => Err(Error::internal(format!(
            "no multisegment continues {m} at vertex {i}"
        ))),
    }
}

/// Raising operator on components; None at the top of the i-string.
pub fn e_geometric(
    m: &Multisegment,
    i: usize,
    gen: &Genericity,
) -> Result<Option<Multisegment>> {
    let c = epsilon_component(m, i, gen);
    if c == 0 {
        return Ok(None);
    }
    let (image, _) = e_max_geometric(m, i, gen)?;
    if let Some(hit) = unique_match(box_removals(m, i), i, c - 1, &image, gen)? {
        return Ok(Some(hit));
    }
    gen.note_fallback();
    let mut target = m.dimvec();
    target[i - 1] -= 1;
    let all = enumerate_by_dimvec(m.n, &target);
    match unique_match(all, i, c - 1, &image, gen)? {
        Some(hit) => Ok(Some(hit)),
        None => Err(Error::internal(format!(
            "no multisegment raises {m} at vertex {i}"
        ))),
    }
}

// -- Fast combinatorial operators ------------------------------------------
//
// A signature rule over segments, calibrated against the geometric
// operators (the calibration gate lives in the test suite and in
// `selftest`): for color i, segments ending at i-1 are openers, segments
// ending at i are closers. The word is ordered by left endpoint ascending
// with closers before openers on ties, and a closer cancels the most recent
// unmatched opener. The lowering operator extends the earliest surviving
// opener by one box (or starts a fresh [i,i] when none survives); the
// raising operator shrinks the latest surviving closer.

struct SegSignature {
    open: Vec<Segment>,
    close: Vec<Segment>,
}

fn seg_signature(m: &Multisegment, i: usize) -> SegSignature {
    let mut items: Vec<(usize, bool, Segment)> = Vec::new();
    for &s in m.segments() {
        if s.end + 1 == i {
            items.push((s.start, false, s));
        } else if s.end == i {
            items.push((s.start, true, s));
        }
    }
    // Closers sort before openers with the same left endpoint: a segment
    // ending at i-1 cannot absorb a closer with the same start.
    items.sort_by_key(|&(key, is_closer, s)| (key, !is_closer, s.end));
    let mut open: Vec<Segment> = Vec::new();
    let mut close: Vec<Segment> = Vec::new();
    for (_, is_closer, s) in items {
        if is_closer {
            if open.is_empty() {
                close.push(s);
            } else {
                open.pop();
            }
        } else {
            open.push(s);
        }
    }
    SegSignature { open, close }
}

pub fn epsilon_fast(m: &Multisegment, i: usize) -> usize {
    seg_signature(m, i).close.len()
}

pub fn f_fast(m: &Multisegment, i: usize) -> Multisegment {
    let sig = seg_signature(m, i);
    match sig.open.first() {
        Some(&s) => m
            .replace_segment(s, Segment::new(s.start, i).unwrap())
            .unwrap()
            .unwrap(),
        None => m.with_segment(Segment::new(i, i).unwrap()).unwrap(),
    }
}

pub fn e_fast(m: &Multisegment, i: usize) -> Option<Multisegment> {
    let sig = seg_signature(m, i);
    let &s = sig.close.last()?;
    if s.start == i {
        m.without_segment(s)
    } else {
        m.replace_segment(s, Segment::new(s.start, i - 1).unwrap())
            .unwrap()
            .ok()
    }
}

// -- Graph generation --------------------------------------------------------

/// Weight of a component: minus the sum of v_i simple roots, in
/// fundamental-weight coordinates.
pub fn binf_weight(d: &RootDatum, dimvec: &[usize]) -> Weight {
    let coords = (0..d.n)
        .map(|i| {
            -(0..d.n)
                .map(|j| d.cartan[i][j] * dimvec[j] as i64)
                .sum::<i64>()
        })
        .collect();
    Weight { coords }
}

pub(crate) fn decorated_node(
    d: &RootDatum,
    m: &Multisegment,
    wt: Weight,
    gen: &Genericity,
) -> CrystalNode {
    let eps: Vec<i64> = (1..=d.n)
        .map(|i| epsilon_component(m, i, gen) as i64)
        .collect();
    let phi: Vec<i64> = (1..=d.n)
        .map(|i| eps[i - 1] + pairing(d, i, &wt).unwrap())
        .collect();
    CrystalNode {
        id: m.to_string(),
        wt: wt.coords,
        eps,
        phi,
    }
}

/// Generate the crystal on all components of total dimension at most
/// `depth`, rooted at the empty multisegment.
pub fn generate_binf(n: usize, depth: usize, gen: &Genericity, jobs: usize) -> Result<CrystalGraph> {
    let d = RootDatum::type_a(n);
    let mut graph = CrystalGraph::new(n, None);
    let mut index: HashMap<Multisegment, usize> = HashMap::new();
    let root = Multisegment::empty(n);
    let root_node = decorated_node(&d, &root, binf_weight(&d, &root.dimvec()), gen);
    index.insert(root.clone(), graph.add_node(root_node));
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        frontier.sort_by_key(|m| m.to_string());
        let expand = |m: &Multisegment| -> Result<Vec<(usize, Multisegment)>> {
            (1..=n).map(|i| Ok((i, f_geometric(m, i, gen)?))).collect()
        };
        let expansions: Vec<Vec<(usize, Multisegment)>> = if jobs > 1 {
            frontier
                .par_iter()
                .map(expand)
                .collect::<Result<Vec<_>>>()?
        } else {
            frontier.iter().map(expand).collect::<Result<Vec<_>>>()?
        };
        let mut next = Vec::new();
        for (parent, children) in frontier.iter().zip(expansions) {
            let src = index[parent];
            for (i, child) in children {
                if child.total_dim() > depth {
                    continue;
                }
                let dst = match index.get(&child) {
                    Some(&idx) => idx,
                    None => {
                        let node =
                            decorated_node(&d, &child, binf_weight(&d, &child.dimvec()), gen);
                        let idx = graph.add_node(node);
                        index.insert(child.clone(), idx);
                        next.push(child.clone());
                        idx
                    }
                };
                graph.add_edge(src, i, dst);
            }
        }
        frontier = next;
    }
    graph.canonicalize();
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::moment_map_vanishes;

    fn ms(n: usize, pairs: &[(usize, usize)]) -> Multisegment {
        Multisegment::from_pairs(n, pairs).unwrap()
    }

    fn gen() -> Genericity {
        Genericity::new(7)
    }

    #[test]
    fn fiber_dimensions() {
        assert_eq!(conormal_fiber(&ms(2, &[(1, 2)])).dim(), 0);
        assert_eq!(conormal_fiber(&ms(2, &[(1, 1), (2, 2)])).dim(), 1);
        assert_eq!(conormal_fiber(&ms(2, &[])).dim(), 0);
        // Overlapping nested pair admits a chain of nonzero reverse maps.
        let fiber = conormal_fiber(&ms(9, &[(3, 7), (2, 4)]));
        assert_eq!(fiber.dim(), 1);
        let inc = &fiber.basis[0];
        assert_eq!(
            inc.keys().cloned().collect::<Vec<_>>(),
            vec!["a2bar", "a3bar", "a4bar"]
        );
    }

    /// Brute-force fiber dimension: probe the moment map entry by entry to
    /// assemble the linear system on the reverse maps, and take its nullity.
    fn numeric_fiber_dim(m: &Multisegment) -> usize {
        use crate::rep::moment_map;
        let base = RepPoint::canonical(m);
        let n = m.n;
        let dims = base.dims.clone();
        let mut unknowns: Vec<(String, usize, usize)> = Vec::new();
        for k in 1..n {
            for r in 0..dims[k] {
                for c in 0..dims[k - 1] {
                    unknowns.push((format!("a{k}bar"), r, c));
                }
            }
        }
        if unknowns.is_empty() {
            return 0;
        }
        let eq_count: usize = dims.iter().map(|&d| d * d).sum();
        let mut system = QMat::zeros(eq_count, unknowns.len());
        for (u, (id, r, c)) in unknowns.iter().enumerate() {
            let mut p = base.clone();
            let mut mat = p.map(id).clone();
            mat.set(*r, *c, crate::linalg::q_one());
            p.set_map(id, mat).unwrap();
            let psi = moment_map(&p);
            let mut row = 0;
            for v in 1..=n {
                let block = &psi[&v];
                for rr in 0..block.nrows {
                    for cc in 0..block.ncols {
                        system.set(row, u, block.get(rr, cc).clone());
                        row += 1;
                    }
                }
            }
        }
        system.nullspace().ncols
    }

    #[test]
    fn structural_fiber_matches_numeric_nullspace() {
        let mut rng = gen().rng("fibercheck", "all");
        for n in 1..=3usize {
            for total in 0..=5usize {
                for dv in crate::multiseg::compositions(n, total) {
                    for m in enumerate_by_dimvec(n, &dv) {
                        let fiber = conormal_fiber(&m);
                        assert_eq!(
                            fiber.dim(),
                            numeric_fiber_dim(&m),
                            "fiber dimension of {m}"
                        );
                        let p = fiber.sample(&mut rng, 50);
                        assert!(moment_map_vanishes(&p), "moment map at sample of {m}");
                        assert!(crate::rep::is_nilpotent_point(&p));
                    }
                }
            }
        }
    }

    #[test]
    fn epsilon_component_examples() {
        let g = gen();
        for i in 1..=2 {
            assert_eq!(epsilon_component(&ms(2, &[]), i, &g), 0);
        }
        let m = ms(2, &[(1, 1), (2, 2)]);
        assert_eq!(epsilon_component(&m, 1, &g), 1);
        assert_eq!(epsilon_component(&m, 2, &g), 0);
        let m = ms(2, &[(1, 2)]);
        assert_eq!(epsilon_component(&m, 1, &g), 0);
        assert_eq!(epsilon_component(&m, 2, &g), 1);
    }

    #[test]
    fn epsilon_stable_under_more_samples() {
        let g5 = gen();
        let g20 = g5.with_samples(20);
        for m in crate::multiseg::enumerate_up_to(3, 4) {
            for i in 1..=3 {
                assert_eq!(
                    epsilon_component(&m, i, &g5),
                    epsilon_component(&m, i, &g20),
                    "epsilon_{i} of {m}"
                );
            }
        }
    }

    #[test]
    fn e_max_examples() {
        let g = gen();
        let m = ms(2, &[(1, 1), (2, 2)]);
        assert_eq!(
            e_max_geometric(&m, 1, &g).unwrap(),
            (ms(2, &[(2, 2)]), 1)
        );
        let m = ms(2, &[(1, 1)]);
        assert_eq!(e_max_geometric(&m, 1, &g).unwrap(), (ms(2, &[]), 1));
        // epsilon = 0 is the identity.
        assert_eq!(e_max_geometric(&m, 2, &g).unwrap(), (m.clone(), 0));
    }

    #[test]
    fn geometric_operator_hand_checked_values() {
        let g = gen();
        // Rank 2 lowering table, worked out from the stratum correspondence.
        let cases: Vec<(Vec<(usize, usize)>, usize, Vec<(usize, usize)>)> = vec![
            (vec![], 1, vec![(1, 1)]),
            (vec![], 2, vec![(2, 2)]),
            (vec![(1, 1)], 1, vec![(1, 1), (1, 1)]),
            (vec![(1, 1)], 2, vec![(1, 2)]),
            (vec![(2, 2)], 1, vec![(1, 1), (2, 2)]),
            (vec![(2, 2)], 2, vec![(2, 2), (2, 2)]),
            (vec![(1, 2)], 1, vec![(1, 1), (1, 2)]),
            (vec![(1, 2)], 2, vec![(1, 2), (2, 2)]),
            (vec![(1, 1), (2, 2)], 1, vec![(1, 1), (1, 1), (2, 2)]),
            (vec![(1, 1), (2, 2)], 2, vec![(1, 1), (2, 2), (2, 2)]),
            (
                vec![(1, 1), (1, 1), (2, 2)],
                2,
                vec![(1, 1), (1, 2), (2, 2)],
            ),
            (
                vec![(1, 2), (2, 2)],
                1,
                vec![(1, 1), (1, 2), (2, 2)],
            ),
        ];
        for (src, i, dst) in cases {
            let m = ms(2, &src);
            let expected = ms(2, &dst);
            assert_eq!(
                f_geometric(&m, i, &g).unwrap(),
                expected,
                "f_{i} of {m}"
            );
            // And the raising operator undoes it.
            assert_eq!(
                e_geometric(&expected, i, &g).unwrap(),
                Some(m.clone()),
                "e_{i} of {expected}"
            );
        }
        assert_eq!(e_geometric(&ms(2, &[]), 1, &g).unwrap(), None);
        assert_eq!(
            e_geometric(&ms(2, &[(1, 1)]), 1, &g).unwrap(),
            Some(ms(2, &[]))
        );
        assert_eq!(
            e_geometric(&ms(2, &[(1, 2)]), 2, &g).unwrap(),
            Some(ms(2, &[(1, 1)]))
        );
    }

    #[test]
    fn stratum_round_trip() {
        // Starting from a component with epsilon_i = 0 and lowering c times,
        // the maximal raising returns the starting component with count c.
        let g = gen();
        for start in [ms(3, &[]), ms(3, &[(2, 3)]), ms(3, &[(1, 2)])] {
            for i in 1..=3usize {
                if epsilon_component(&start, i, &g) != 0 {
                    continue;
                }
                let mut cur = start.clone();
                for c in 1..=3usize {
                    cur = f_geometric(&cur, i, &g).unwrap();
                    assert_eq!(
                        e_max_geometric(&cur, i, &g).unwrap(),
                        (start.clone(), c),
                        "round trip from {start} color {i} depth {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn fast_rule_examples() {
        assert_eq!(f_fast(&ms(3, &[]), 2), ms(3, &[(2, 2)]));
        assert_eq!(f_fast(&ms(2, &[(1, 1)]), 2), ms(2, &[(1, 2)]));
        assert_eq!(
            f_fast(&ms(3, &[(1, 2), (2, 2)]), 3),
            ms(3, &[(1, 3), (2, 2)])
        );
        assert_eq!(e_fast(&ms(2, &[]), 1), None);
        assert_eq!(e_fast(&ms(2, &[(1, 1)]), 1), Some(ms(2, &[])));
        assert_eq!(e_fast(&ms(2, &[(1, 2)]), 2), Some(ms(2, &[(1, 1)])));
    }

    #[test]
    fn fast_matches_geometric_small() {
        // The full calibration gate runs in the acceptance suite; this is a
        // quick version at low total dimension.
        let g = gen();
        for n in 1..=3usize {
            for m in crate::multiseg::enumerate_up_to(n, 4) {
                for i in 1..=n {
                    assert_eq!(
                        epsilon_fast(&m, i),
                        epsilon_component(&m, i, &g),
                        "epsilon_{i} of {m}"
                    );
                    assert_eq!(
                        f_fast(&m, i),
                        f_geometric(&m, i, &g).unwrap(),
                        "f_{i} of {m}"
                    );
                    assert_eq!(
                        e_fast(&m, i),
                        e_geometric(&m, i, &g).unwrap(),
                        "e_{i} of {m}"
                    );
                }
            }
        }
        assert_eq!(g.fallback_count(), 0);
    }

    #[test]
    fn generate_binf_counts() {
        let g = gen();
        let line = generate_binf(1, 3, &g, 1).unwrap();
        assert_eq!(line.nodes.len(), 4);
        assert_eq!(line.edges.len(), 3);
        assert!(line.is_connected());

        let g2 = generate_binf(2, 1, &g, 1).unwrap();
        assert_eq!(g2.nodes.len(), 3);
        assert_eq!(g2.edges.len(), 2);

        let g2 = generate_binf(2, 2, &g, 1).unwrap();
        assert_eq!(
            g2.nodes.len(),
            crate::multiseg::enumerate_up_to(2, 2).len()
        );
        assert!(g2.is_connected());
    }

    #[test]
    fn generation_reaches_every_component() {
        let g = gen();
        for n in 1..=3usize {
            let depth = if n == 3 { 3 } else { 4 };
            let graph = generate_binf(n, depth, &g, 1).unwrap();
            assert_eq!(
                graph.nodes.len(),
                crate::multiseg::enumerate_up_to(n, depth).len(),
                "rank {n}"
            );
        }
    }

    #[test]
    fn parallel_generation_is_identical() {
        let g = gen();
        let a = generate_binf(2, 4, &g, 1).unwrap();
        let b = generate_binf(2, 4, &g, 4).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
    }
}
