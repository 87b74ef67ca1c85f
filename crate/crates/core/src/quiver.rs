//! Quivers, double quivers, paths, and the path-algebra product.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite quiver. Vertices carry the paper-style 1-based labels. Loops are
/// representable (the one-vertex one-loop quiver has a perfectly good path
/// algebra); the variety-side constructions reject them explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<usize>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<usize>, arrows: Vec<Arrow>) -> Result<Self> {
        for a in &arrows {
            if !vertices.contains(&a.src) || !vertices.contains(&a.dst) {
                return Err(Error::domain(format!(
                    "arrow {} has endpoint outside the vertex set",
                    a.id
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// The linear type-A quiver on n vertices with left-pointing arrows
    /// a_k : k+1 -> k.
    pub fn linear_a(n: usize) -> Self {
        Quiver {
            vertices: (1..=n).collect(),
            arrows: (1..n)
                .map(|k| Arrow {
                    id: format!("a{k}"),
                    src: k + 1,
                    dst: k,
                })
                .collect(),
        }
    }

    /// One vertex, one loop.
    pub fn jordan() -> Self {
        Quiver {
            vertices: vec![1],
            arrows: vec![Arrow {
                id: "t".into(),
                src: 1,
                dst: 1,
            }],
        }
    }

    pub fn is_loop_free(&self) -> bool {
        self.arrows.iter().all(|a| a.src != a.dst)
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.dst == v)
    }

    pub fn arrows_out_of(&self, v: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.src == v)
    }

    pub fn vertex_index(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }
}

/// The double of an oriented quiver: every arrow `a` of the base gets a
/// reverse partner `a + "bar"`. The base arrows form the orientation Omega,
/// with sign +1; the bars have sign -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleQuiver {
    pub base: Quiver,
    pub all: Quiver,
}

impl DoubleQuiver {
    pub fn from_oriented(base: Quiver) -> Result<Self> {
        if !base.is_loop_free() {
            return Err(Error::domain("double quiver requires a loop-free base"));
        }
        let mut arrows = base.arrows.clone();
        arrows.extend(base.arrows.iter().map(|a| Arrow {
            id: format!("{}bar", a.id),
            src: a.dst,
            dst: a.src,
        }));
        let all = Quiver {
            vertices: base.vertices.clone(),
            arrows,
        };
        Ok(DoubleQuiver { base, all })
    }

    /// Double quiver of type A_n with the left-pointing orientation.
    pub fn type_a(n: usize) -> Self {
        DoubleQuiver::from_oriented(Quiver::linear_a(n)).unwrap()
    }

    pub fn n_vertices(&self) -> usize {
        self.base.vertices.len()
    }

    pub fn in_omega(&self, id: &str) -> bool {
        !id.ends_with("bar")
    }

    pub fn sign(&self, id: &str) -> i64 {
        if self.in_omega(id) {
            1
        } else {
            -1
        }
    }

    pub fn bar(&self, id: &str) -> String {
        match id.strip_suffix("bar") {
            Some(stem) => stem.to_string(),
            None => format!("{id}bar"),
        }
    }
}

/// A path: the sequence of arrows in application order (first applied first),
/// or a trivial path at a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<String>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            start: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.start
    }

    pub fn target(&self, q: &Quiver) -> usize {
        match self.arrows.last() {
            Some(id) => q.arrow(id).expect("arrow of path").dst,
            None => self.start,
        }
    }
}

/// Product of two paths by concatenation: `p * q` applies `q` first, then
/// `p`, and is `None` (the formal zero of the path algebra) when the
/// endpoints do not line up.
pub fn path_product(q: &Quiver, p: &Path, r: &Path) -> Option<Path> {
    if r.target(q) != p.source() {
        return None;
    }
    let mut arrows = r.arrows.clone();
    arrows.extend(p.arrows.iter().cloned());
    Some(Path {
        start: r.start,
        arrows,
    })
}

/// All paths of length at most `max_len`, trivial paths included, ordered by
/// length and then lexicographically by the arrow-id sequence.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut by_len: Vec<Vec<Path>> = vec![q.vertices.iter().map(|&v| Path::trivial(v)).collect()];
    for l in 1..=max_len {
        let mut next = Vec::new();
        for p in &by_len[l - 1] {
            let end = p.target(q);
            for a in q.arrows_out_of(end) {
                let mut arrows = p.arrows.clone();
                arrows.push(a.id.clone());
                next.push(Path {
                    start: p.start,
                    arrows,
                });
            }
        }
        if next.is_empty() {
            break;
        }
        by_len.push(next);
    }
    let mut out = Vec::new();
    for mut level in by_len {
        level.sort_by(|a, b| a.arrows.cmp(&b.arrows).then(a.start.cmp(&b.start)));
        out.extend(level);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::QMat;

    #[test]
    fn jordan_path_algebra() {
        let q = Quiver::jordan();
        let t = Path {
            start: 1,
            arrows: vec!["t".into()],
        };
        let t2 = path_product(&q, &t, &t).unwrap();
        assert_eq!(t2.len(), 2);
        let paths = enumerate_paths(&q, 2);
        assert_eq!(paths.len(), 3);
    }

    #[test]
    fn linear_quiver_paths() {
        let q = Quiver::linear_a(3);
        // e_1, e_2, e_3, a_1, a_2, a_2 then a_1.
        assert_eq!(enumerate_paths(&q, 3).len(), 6);
        assert_eq!(enumerate_paths(&q, 0).len(), 3);
        for n in 1..=5 {
            let q = Quiver::linear_a(n);
            assert_eq!(enumerate_paths(&q, n).len(), n * (n + 1) / 2);
        }
    }

    fn p_ij(q: &Quiver, i: usize, j: usize) -> Path {
        // Unique path j -> i in the left-oriented linear quiver.
        let mut arrows = Vec::new();
        for k in (i..j).rev() {
            arrows.push(format!("a{k}"));
        }
        let p = Path { start: j, arrows };
        assert_eq!(p.target(q), i);
        p
    }

    #[test]
    fn product_mirrors_elementary_matrices() {
        let n = 4;
        let q = Quiver::linear_a(n);
        let e = |i: usize, j: usize| {
            let mut m = QMat::zeros(n, n);
            m.set(i - 1, j - 1, crate::linalg::q_one());
            m
        };
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i..=n).map(move |j| (i, j)))
            .collect();
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                let prod = path_product(&q, &p_ij(&q, i, j), &p_ij(&q, k, l));
                let mat = e(i, j).mul(&e(k, l));
                match prod {
                    Some(p) => {
                        assert_eq!(j, k);
                        assert_eq!(p, p_ij(&q, i, l));
                        assert_eq!(mat, e(i, l));
                    }
                    None => assert!(mat.is_zero()),
                }
            }
        }
    }

    #[test]
    fn product_zero_when_not_composable() {
        let q = Quiver::linear_a(3);
        let p12 = p_ij(&q, 1, 2);
        assert!(path_product(&q, &p12, &p12).is_none());
        let p23 = p_ij(&q, 2, 3);
        assert_eq!(path_product(&q, &p12, &p23).unwrap(), p_ij(&q, 1, 3));
    }

    #[test]
    fn associativity_exhaustive() {
        let q = Quiver::linear_a(3);
        let paths = enumerate_paths(&q, 3);
        for a in &paths {
            for b in &paths {
                for c in &paths {
                    let lhs = path_product(&q, a, b).and_then(|ab| path_product(&q, &ab, c));
                    let rhs = path_product(&q, b, c).and_then(|bc| path_product(&q, a, &bc));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn double_quiver_involution() {
        let d = DoubleQuiver::type_a(4);
        assert_eq!(d.all.arrows.len(), 6);
        for a in &d.all.arrows {
            assert_eq!(d.bar(&d.bar(&a.id)), a.id);
            assert_eq!(d.sign(&d.bar(&a.id)), -d.sign(&a.id));
            let bar = d.all.arrow(&d.bar(&a.id)).unwrap();
            assert_eq!((bar.src, bar.dst), (a.dst, a.src));
        }
        // Omega and its bar partition the arrow set.
        let omega: Vec<_> = d.all.arrows.iter().filter(|a| d.in_omega(&a.id)).collect();
        assert_eq!(omega.len(), 3);
    }

    #[test]
    fn no_loops_in_double() {
        assert!(DoubleQuiver::from_oriented(Quiver::jordan()).is_err());
    }

    #[test]
    fn quiver_json_shape() {
        let q = Quiver::linear_a(3);
        let js = serde_json::to_value(&q).unwrap();
        assert_eq!(js["vertices"], serde_json::json!([1, 2, 3]));
        assert_eq!(js["arrows"][0]["id"], "a1");
        assert_eq!(js["arrows"][0]["src"], 2);
        assert_eq!(js["arrows"][0]["dst"], 1);
    }
}
