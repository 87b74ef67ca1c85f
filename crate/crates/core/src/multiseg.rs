//! Segments and multisegments.
//!
//! A segment [i,j] stands for the indecomposable type-A representation
//! supported on vertices i..=j; a multisegment (a multiset of segments) names
//! a G_V-orbit of representations of the oriented quiver and hence an
//! irreducible component of the corresponding nilpotent variety.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start == 0 || start > end {
            return Err(Error::domain(format!(
                "invalid segment [{start},{end}]: need 1 <= start <= end"
            )));
        }
        Ok(Segment { start, end })
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.start <= v && v <= self.end
    }
}

/// Multiset of segments over the vertex set 1..=n, kept in canonical order:
/// start descending, then end descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multisegment {
    pub n: usize,
    segs: Vec<Segment>,
}

impl Multisegment {
    pub fn empty(n: usize) -> Self {
        Multisegment { n, segs: Vec::new() }
    }

    pub fn new(n: usize, mut segs: Vec<Segment>) -> Result<Self> {
        for s in &segs {
            if s.end > n {
                return Err(Error::domain(format!(
                    "segment [{},{}] exceeds rank {}",
                    s.start, s.end, n
                )));
            }
        }
        segs.sort_by_key(|s| (Reverse(s.start), Reverse(s.end)));
        Ok(Multisegment { n, segs })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let segs = pairs
            .iter()
            .map(|&(i, j)| Segment::new(i, j))
            .collect::<Result<Vec<_>>>()?;
        Multisegment::new(n, segs)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    /// Graded dimension: entry v-1 counts segments containing vertex v.
    pub fn dimvec(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for s in &self.segs {
            for v in s.start..=s.end {
                d[v - 1] += 1;
            }
        }
        d
    }

    pub fn total_dim(&self) -> usize {
        self.segs.iter().map(|s| s.len()).sum()
    }

    pub fn with_segment(&self, s: Segment) -> Result<Multisegment> {
        let mut segs = self.segs.clone();
        segs.push(s);
        Multisegment::new(self.n, segs)
    }

    /// Remove one copy of `s`; None if absent.
    pub fn without_segment(&self, s: Segment) -> Option<Multisegment> {
        let pos = self.segs.iter().position(|&t| t == s)?;
        let mut segs = self.segs.clone();
        segs.remove(pos);
        Some(Multisegment { n: self.n, segs })
    }

    /// Replace one copy of `from` by `to`.
    pub fn replace_segment(&self, from: Segment, to: Segment) -> Option<Result<Multisegment>> {
        let without = self.without_segment(from)?;
        Some(without.with_segment(to))
    }

    /// Index of the l-th segment's basis vector inside V_v for the canonical
    /// point: positions count segments containing v, in canonical order.
    pub fn basis_index(&self, l: usize, v: usize) -> Option<usize> {
        if !self.segs[l].contains(v) {
            return None;
        }
        Some(
            self.segs[..l]
                .iter()
                .filter(|s| s.contains(v))
                .count(),
        )
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, s) in self.segs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{},{}]", s.start, s.end)?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct MultisegmentJson {
    n: usize,
    segments: Vec<[usize; 2]>,
}

impl Serialize for Multisegment {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MultisegmentJson {
            n: self.n,
            segments: self.segs.iter().map(|s| [s.start, s.end]).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Multisegment {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = MultisegmentJson::deserialize(de)?;
        let pairs: Vec<(usize, usize)> = raw.segments.iter().map(|&[i, j]| (i, j)).collect();
        Multisegment::from_pairs(raw.n, &pairs).map_err(serde::de::Error::custom)
    }
}

/// All segments available at rank n, in canonical order.
pub fn all_segments(n: usize) -> Vec<Segment> {
    let mut out = Vec::new();
    for start in (1..=n).rev() {
        for end in (start..=n).rev() {
            out.push(Segment { start, end });
        }
    }
    out
}

/// All multisegments with the given graded dimension.
pub fn enumerate_by_dimvec(n: usize, dimvec: &[usize]) -> Vec<Multisegment> {
    assert_eq!(dimvec.len(), n);
    let segs = all_segments(n);
    let mut out = Vec::new();
    let mut chosen: Vec<Segment> = Vec::new();
    fn go(
        segs: &[Segment],
        k: usize,
        remaining: &mut Vec<usize>,
        chosen: &mut Vec<Segment>,
        out: &mut Vec<Multisegment>,
        n: usize,
    ) {
        if remaining.iter().all(|&x| x == 0) {
            out.push(Multisegment {
                n,
                segs: chosen.clone(),
            });
            return;
        }
        if k == segs.len() {
            return;
        }
        let s = segs[k];
        // Multiplicity of s is bounded by the remaining dimension on its
        // support.
        let max_mult = (s.start..=s.end).map(|v| remaining[v - 1]).min().unwrap();
        for mult in (0..=max_mult).rev() {
            for v in s.start..=s.end {
                remaining[v - 1] -= mult;
            }
            for _ in 0..mult {
                chosen.push(s);
            }
            go(segs, k + 1, remaining, chosen, out, n);
            for _ in 0..mult {
                chosen.pop();
            }
            for v in s.start..=s.end {
                remaining[v - 1] += mult;
            }
        }
    }
    let mut remaining = dimvec.to_vec();
    go(&segs, 0, &mut remaining, &mut chosen, &mut out, n);
    out
}

/// All multisegments with total dimension at most `depth`.
pub fn enumerate_up_to(n: usize, depth: usize) -> Vec<Multisegment> {
    let mut out = Vec::new();
    for total in 0..=depth {
        for dv in compositions(n, total) {
            out.extend(enumerate_by_dimvec(n, &dv));
        }
    }
    out
}

/// All length-n vectors of naturals summing to `total`.
pub fn compositions(n: usize, total: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let m = Multisegment::from_pairs(9, &[(2, 4), (4, 9), (3, 7)]).unwrap();
        let pairs: Vec<(usize, usize)> =
            m.segments().iter().map(|s| (s.start, s.end)).collect();
        assert_eq!(pairs, vec![(4, 9), (3, 7), (2, 4)]);
        assert_eq!(m.to_string(), "{[4,9],[3,7],[2,4]}");
    }

    #[test]
    fn dimvec_counts_support() {
        let m = Multisegment::from_pairs(3, &[(1, 2), (2, 3), (2, 2)]).unwrap();
        assert_eq!(m.dimvec(), vec![1, 3, 1]);
        assert_eq!(m.total_dim(), 5);
    }

    #[test]
    fn segment_count_is_number_of_positive_roots() {
        for n in 1..=6 {
            assert_eq!(all_segments(n).len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn enumeration_matches_closed_form_rank_two() {
        // For A_2 and dimvec (a,b) the count is min(a,b)+1: the only choice
        // is the multiplicity of [1,2].
        for a in 0..5 {
            for b in 0..5 {
                let got = enumerate_by_dimvec(2, &[a, b]).len();
                assert_eq!(got, a.min(b) + 1, "dimvec ({a},{b})");
            }
        }
    }

    #[test]
    fn enumeration_matches_generating_function_rank_three() {
        // Independent count: coefficient extraction from the product over
        // segments s of 1/(1 - x^{dim s}) as a truncated power series in
        // three variables.
        let n = 3;
        let cap = 4usize;
        let idx = |a: usize, b: usize, c: usize| (a * (cap + 1) + b) * (cap + 1) + c;
        let mut series = vec![0u64; (cap + 1) * (cap + 1) * (cap + 1)];
        series[idx(0, 0, 0)] = 1;
        for s in all_segments(n) {
            let mut dv = [0usize; 3];
            for v in s.start..=s.end {
                dv[v - 1] = 1;
            }
            // Multiply by 1/(1 - x^dv): prefix-sum along the dv direction.
            for a in dv[0]..=cap {
                for b in dv[1]..=cap {
                    for c in dv[2]..=cap {
                        series[idx(a, b, c)] += series[idx(a - dv[0], b - dv[1], c - dv[2])];
                    }
                }
            }
        }
        for a in 0..=cap {
            for b in 0..=cap {
                for c in 0..=cap {
                    let got = enumerate_by_dimvec(n, &[a, b, c]).len() as u64;
                    assert_eq!(got, series[idx(a, b, c)], "dimvec ({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn enumerate_up_to_small() {
        // Rank 1: exactly one multisegment per total dimension.
        assert_eq!(enumerate_up_to(1, 5).len(), 6);
        // Rank 2, total <= 2: computed by the closed form above.
        assert_eq!(enumerate_up_to(2, 2).len(), 7);
    }

    #[test]
    fn json_round_trip() {
        let m = Multisegment::from_pairs(9, &[(4, 9), (3, 7), (2, 4)]).unwrap();
        let js = serde_json::to_string(&m).unwrap();
        assert_eq!(js, r#"{"n":9,"segments":[[4,9],[3,7],[2,4]]}"#);
        let back: Multisegment = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn invalid_segments_rejected() {
        assert!(Segment::new(3, 2).is_err());
        assert!(Segment::new(0, 1).is_err());
        assert!(Multisegment::from_pairs(2, &[(1, 3)]).is_err());
    }
}
