//! Points of representation spaces: exact matrices attached to the arrows of
//! a double quiver, with the operations the geometric crystal needs — direct
//! sums, the moment map, cokernel counts, segment decomposition, nilpotency,
//! invariant subspaces, and the stability test for framed points.

use crate::error::{Error, Result};
use crate::linalg::{q_parse, q_render, QMat};
use crate::multiseg::{Multisegment, Segment};
use crate::quiver::DoubleQuiver;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub type DimVector = Vec<usize>;

/// A point of E_V: one exact matrix per arrow of the double quiver, of shape
/// dims[target] x dims[source]. Missing arrows are zero maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepPoint {
    pub quiver: DoubleQuiver,
    pub dims: DimVector,
    pub maps: BTreeMap<String, QMat>,
}

impl RepPoint {
    pub fn zero(quiver: DoubleQuiver, dims: DimVector) -> Result<Self> {
        if dims.len() != quiver.n_vertices() {
            return Err(Error::domain("dimension vector length != vertex count"));
        }
        let maps = quiver
            .all
            .arrows
            .iter()
            .map(|a| {
                (
                    a.id.clone(),
                    QMat::zeros(dims[a.dst - 1], dims[a.src - 1]),
                )
            })
            .collect();
        Ok(RepPoint { quiver, dims, maps })
    }

    pub fn map(&self, id: &str) -> &QMat {
        &self.maps[id]
    }

    pub fn set_map(&mut self, id: &str, m: QMat) -> Result<()> {
        let a = self
            .quiver
            .all
            .arrow(id)
            .ok_or_else(|| Error::domain(format!("unknown arrow {id}")))?;
        if (m.nrows, m.ncols) != (self.dims[a.dst - 1], self.dims[a.src - 1]) {
            return Err(Error::domain(format!(
                "map for {id} has shape {}x{}, expected {}x{}",
                m.nrows,
                m.ncols,
                self.dims[a.dst - 1],
                self.dims[a.src - 1]
            )));
        }
        self.maps.insert(id.to_string(), m);
        Ok(())
    }

    /// Canonical point of the orbit named by a multisegment: the direct sum
    /// of segment representations, identity maps along the orientation, zero
    /// on the reverse arrows. Basis order at each vertex follows the
    /// canonical segment order.
    pub fn canonical(m: &Multisegment) -> RepPoint {
        let quiver = DoubleQuiver::type_a(m.n);
        let mut p = RepPoint::zero(quiver, m.dimvec()).unwrap();
        for k in 1..m.n {
            // x_{a_k} : V_{k+1} -> V_k acts as identity on segments
            // containing both endpoints.
            let mut mat = QMat::zeros(p.dims[k - 1], p.dims[k]);
            for (l, s) in m.segments().iter().enumerate() {
                if s.contains(k) && s.contains(k + 1) {
                    let row = m.basis_index(l, k).unwrap();
                    let col = m.basis_index(l, k + 1).unwrap();
                    mat.set(row, col, crate::linalg::q_one());
                }
            }
            p.set_map(&format!("a{k}"), mat).unwrap();
        }
        p
    }

    /// Conjugate by a tuple of invertible matrices, one per vertex.
    pub fn act(&self, g: &[QMat]) -> Result<RepPoint> {
        if g.len() != self.dims.len() {
            return Err(Error::domain("group element has wrong number of factors"));
        }
        let inverses: Vec<QMat> = g
            .iter()
            .map(|gi| gi.inverse().ok_or_else(|| Error::domain("singular group element")))
            .collect::<Result<Vec<_>>>()?;
        let mut out = self.clone();
        for a in &self.quiver.all.arrows {
            let x = self.map(&a.id);
            let y = g[a.dst - 1].mul(x).mul(&inverses[a.src - 1]);
            out.maps.insert(a.id.clone(), y);
        }
        Ok(out)
    }
}

/// Block-diagonal direct sum.
pub fn direct_sum(p: &RepPoint, q: &RepPoint) -> Result<RepPoint> {
    if p.quiver != q.quiver {
        return Err(Error::domain("direct sum of points over different quivers"));
    }
    let dims: DimVector = p.dims.iter().zip(&q.dims).map(|(a, b)| a + b).collect();
    let mut out = RepPoint::zero(p.quiver.clone(), dims)?;
    for a in &p.quiver.all.arrows {
        out.maps
            .insert(a.id.clone(), p.map(&a.id).block_diag(q.map(&a.id)));
    }
    Ok(out)
}

/// Moment map: psi_i(x) = sum over arrows a with target i of
/// sign(a) x_a x_{abar}.
pub fn moment_map(p: &RepPoint) -> BTreeMap<usize, QMat> {
    let mut out = BTreeMap::new();
    for &v in &p.quiver.all.vertices {
        let mut acc = QMat::zeros(p.dims[v - 1], p.dims[v - 1]);
        for a in p.quiver.all.arrows_into(v) {
            let x_a = p.map(&a.id);
            let x_bar = p.map(&p.quiver.bar(&a.id));
            let term = x_a.mul(x_bar);
            acc = if p.quiver.sign(&a.id) > 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        out.insert(v, acc);
    }
    out
}

pub fn moment_map_vanishes(p: &RepPoint) -> bool {
    moment_map(p).values().all(|m| m.is_zero())
}

/// Matrix of all arrows entering vertex i, stacked side by side in arrow-id
/// order.
fn incoming_stack(p: &RepPoint, i: usize) -> QMat {
    let mut ids: Vec<&str> = p
        .quiver
        .all
        .arrows_into(i)
        .map(|a| a.id.as_str())
        .collect();
    ids.sort_unstable();
    let mut acc = QMat::zeros(p.dims[i - 1], 0);
    for id in ids {
        acc = acc.hstack(p.map(id));
    }
    acc
}

/// Dimension of the cokernel of all arrows entering vertex i.
pub fn epsilon_point(p: &RepPoint, i: usize) -> usize {
    let stack = incoming_stack(p, i);
    p.dims[i - 1] - stack.rank()
}

/// Basis of the sum of images of all arrows entering vertex i.
pub fn incoming_image(p: &RepPoint, i: usize) -> QMat {
    incoming_stack(p, i).col_space()
}

/// Decompose the orientation part of a point over the left-oriented type-A
/// quiver into segments, by inclusion-exclusion on the ranks r_{i,j} of the
/// composites V_j -> V_i.
pub fn decompose_segments(p: &RepPoint) -> Result<Multisegment> {
    let n = p.dims.len();
    let r = |i: usize, j: usize| -> usize {
        // rank of x_{a_i} x_{a_{i+1}} ... x_{a_{j-1}} : V_j -> V_i
        if i == 0 || j > n {
            return 0;
        }
        if i == j {
            return p.dims[i - 1];
        }
        let mut m = p.map(&format!("a{}", j - 1)).clone();
        for k in (i..j - 1).rev() {
            m = p.map(&format!("a{k}")).mul(&m);
        }
        m.rank()
    };
    let mut segs = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let mult = r(i, j) as i64 - r(i.wrapping_sub(1), j) as i64 - r(i, j + 1) as i64
                + r(i.wrapping_sub(1), j + 1) as i64;
            if mult < 0 {
                return Err(Error::internal(format!(
                    "negative multiplicity for segment [{i},{j}]"
                )));
            }
            for _ in 0..mult {
                segs.push(Segment::new(i, j)?);
            }
        }
    }
    let m = Multisegment::new(n, segs)?;
    if m.dimvec() != p.dims {
        return Err(Error::internal(
            "segment decomposition does not add up to the dimension vector",
        ));
    }
    Ok(m)
}

/// Nilpotency: every composite along a path of length 1 + sum(dims) is zero.
/// The bound is sufficient: a nonzero composite of that length repeats a
/// vertex with a nonzero return map. Composites are explored depth-first and
/// pruned as soon as they vanish.
pub fn is_nilpotent_point(p: &RepPoint) -> bool {
    let bound = 1 + p.dims.iter().sum::<usize>();
    fn extend(p: &RepPoint, at: usize, m: &QMat, remaining: usize) -> bool {
        // true iff some nonzero composite of the remaining length exists
        if remaining == 0 {
            return true;
        }
        for a in p.quiver.all.arrows_out_of(at) {
            let next = p.map(&a.id).mul(m);
            if next.is_zero() {
                continue;
            }
            if extend(p, a.dst, &next, remaining - 1) {
                return true;
            }
        }
        false
    }
    for &v in &p.quiver.all.vertices {
        if p.dims[v - 1] == 0 {
            continue;
        }
        if extend(p, v, &QMat::identity(p.dims[v - 1]), bound) {
            return false;
        }
    }
    true
}

/// A point of Lambda(v) together with framing maps t_i : V_i -> W_i.
#[derive(Debug, Clone)]
pub struct FramedPoint {
    pub rep: RepPoint,
    pub wdims: DimVector,
    pub framing: Vec<QMat>,
}

impl FramedPoint {
    pub fn new(rep: RepPoint, wdims: DimVector, framing: Vec<QMat>) -> Result<Self> {
        if wdims.len() != rep.dims.len() || framing.len() != rep.dims.len() {
            return Err(Error::domain("framing data has wrong length"));
        }
        for (i, t) in framing.iter().enumerate() {
            if (t.nrows, t.ncols) != (wdims[i], rep.dims[i]) {
                return Err(Error::domain(format!(
                    "framing at vertex {} has shape {}x{}, expected {}x{}",
                    i + 1,
                    t.nrows,
                    t.ncols,
                    wdims[i],
                    rep.dims[i]
                )));
            }
        }
        Ok(FramedPoint {
            rep,
            wdims,
            framing,
        })
    }

    pub fn act(&self, g: &[QMat]) -> Result<FramedPoint> {
        let rep = self.rep.act(g)?;
        let framing = self
            .framing
            .iter()
            .zip(g)
            .map(|(t, gi)| {
                let inv = gi.inverse().ok_or_else(|| Error::domain("singular group element"))?;
                Ok(t.mul(&inv))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FramedPoint {
            rep,
            wdims: self.wdims.clone(),
            framing,
        })
    }
}

/// Graded dimension of the largest x-invariant subspace S with S_i inside
/// ker t_i for every i, by shrinking from S_i = ker t_i until stable.
pub fn max_invariant_in_kernel(fp: &FramedPoint) -> DimVector {
    let p = &fp.rep;
    let nv = p.dims.len();
    let kernel_dims: Vec<usize> = (0..nv)
        .map(|i| p.dims[i] - fp.framing[i].rank())
        .collect();
    if kernel_dims.iter().all(|&d| d == 0) {
        return vec![0; nv];
    }
    if p.quiver.all.arrows.is_empty() {
        // No invariance constraint: the fixpoint is ker t itself.
        return kernel_dims;
    }
    let mut s: Vec<QMat> = (0..nv).map(|i| fp.framing[i].nullspace()).collect();
    loop {
        let mut changed = false;
        let mut next = Vec::with_capacity(nv);
        for i in 0..nv {
            let mut cur = s[i].clone();
            for a in p.quiver.all.arrows_out_of(i + 1) {
                if cur.ncols == 0 {
                    break;
                }
                let pre = p.map(&a.id).preimage(&s[a.dst - 1]);
                cur = cur.intersect_col_spaces(&pre);
            }
            if cur.ncols != s[i].ncols {
                changed = true;
            }
            next.push(cur);
        }
        s = next;
        if !changed {
            break;
        }
    }
    s.iter().map(|b| b.ncols).collect()
}

/// Kernel-intersection stability test for the left-oriented type-A quiver:
/// at every vertex k the maps out of V_k (the orientation arrow down to
/// k-1, the reverse arrow up to k+1, and the framing) must jointly be
/// injective.
fn type_a_kernel_criterion(fp: &FramedPoint) -> bool {
    let p = &fp.rep;
    let n = p.dims.len();
    for k in 1..=n {
        let mut stack = QMat::zeros(0, p.dims[k - 1]);
        if k >= 2 {
            stack = stack.vstack(p.map(&format!("a{}", k - 1)));
        }
        if k < n {
            stack = stack.vstack(p.map(&format!("a{k}bar")));
        }
        stack = stack.vstack(&fp.framing[k - 1]);
        if stack.rank() < p.dims[k - 1] {
            return false;
        }
    }
    true
}

fn is_type_a_left(q: &DoubleQuiver) -> bool {
    q.base == crate::quiver::Quiver::linear_a(q.n_vertices())
}

/// Stability of a framed point: no nonzero x-invariant graded subspace lies
/// in the kernel of the framing. On points of the variety (vanishing moment
/// map, nilpotent) over the left-oriented type-A quiver, the kernel
/// criterion is computed as well and a disagreement is reported as an
/// internal error. Off the variety the two tests genuinely differ, so the
/// cross-check is skipped there.
pub fn is_stable(fp: &FramedPoint) -> Result<bool> {
    let fixpoint = max_invariant_in_kernel(fp).iter().all(|&d| d == 0);
    if is_type_a_left(&fp.rep.quiver)
        && moment_map_vanishes(&fp.rep)
        && is_nilpotent_point(&fp.rep)
    {
        let kernel = type_a_kernel_criterion(fp);
        if kernel != fixpoint {
            return Err(Error::internal(format!(
                "stability criteria disagree: fixpoint says {fixpoint}, kernel test says {kernel}"
            )));
        }
    }
    Ok(fixpoint)
}

/// Restrict a point to an invariant graded subspace given by one basis
/// matrix per vertex (full column rank). Fails if some arrow map does not
/// preserve the subspace.
pub fn restrict(p: &RepPoint, bases: &[QMat]) -> Result<RepPoint> {
    let dims: DimVector = bases.iter().map(|b| b.ncols).collect();
    let mut out = RepPoint::zero(p.quiver.clone(), dims)?;
    for a in &p.quiver.all.arrows {
        let image = p.map(&a.id).mul(&bases[a.src - 1]);
        let restricted = QMat::solve_exact(&bases[a.dst - 1], &image)
            .ok_or_else(|| Error::internal(format!("subspace not invariant under {}", a.id)))?;
        out.set_map(&a.id, restricted)?;
    }
    Ok(out)
}

// JSON forms. Rationals are carried as "p" or "p/q" strings.

#[derive(Serialize, Deserialize)]
pub struct RepPointJson {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
pub struct FramedPointJson {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<String>>>,
    pub wdims: Vec<usize>,
    #[serde(default)]
    pub t: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn mat_from_rows(rows: &[Vec<String>], nrows: usize, ncols: usize) -> Result<QMat> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::domain(format!(
            "matrix literal has wrong shape, expected {nrows}x{ncols}"
        )));
    }
    let mut m = QMat::zeros(nrows, ncols);
    for (r, row) in rows.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            let v = q_parse(s).ok_or_else(|| Error::domain(format!("bad rational `{s}`")))?;
            m.set(r, c, v);
        }
    }
    Ok(m)
}

pub fn mat_to_rows(m: &QMat) -> Vec<Vec<String>> {
    (0..m.nrows)
        .map(|r| (0..m.ncols).map(|c| q_render(m.get(r, c))).collect())
        .collect()
}

/// Build a representation point over the type-A double quiver from its JSON
/// form; arrows absent from `maps` are zero.
pub fn rep_from_json(data: &RepPointJson) -> Result<RepPoint> {
    let n = data.dims.len();
    if n == 0 {
        return Err(Error::domain("empty dimension vector"));
    }
    let mut p = RepPoint::zero(DoubleQuiver::type_a(n), data.dims.clone())?;
    for (id, rows) in &data.maps {
        let a = p
            .quiver
            .all
            .arrow(id)
            .ok_or_else(|| Error::domain(format!("unknown arrow {id}")))?
            .clone();
        let m = mat_from_rows(rows, data.dims[a.dst - 1], data.dims[a.src - 1])?;
        p.set_map(id, m)?;
    }
    Ok(p)
}

pub fn framed_from_json(data: &FramedPointJson) -> Result<FramedPoint> {
    let rep = rep_from_json(&RepPointJson {
        dims: data.dims.clone(),
        maps: data.maps.clone(),
    })?;
    let n = data.dims.len();
    if data.wdims.len() != n {
        return Err(Error::domain("wdims length != dims length"));
    }
    let mut framing: Vec<QMat> = (0..n)
        .map(|i| QMat::zeros(data.wdims[i], data.dims[i]))
        .collect();
    for (key, rows) in &data.t {
        let v: usize = key
            .parse()
            .map_err(|_| Error::domain(format!("bad framing vertex key `{key}`")))?;
        if v == 0 || v > n {
            return Err(Error::domain(format!("framing vertex {v} out of range")));
        }
        framing[v - 1] = mat_from_rows(rows, data.wdims[v - 1], data.dims[v - 1])?;
    }
    FramedPoint::new(rep, data.wdims.clone(), framing)
}
