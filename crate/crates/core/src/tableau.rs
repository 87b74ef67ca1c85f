//! Semistandard Young tableaux and their crystal structure for sl(n+1).

use crate::cartan::Weight;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A semistandard tableau: rows weakly increasing, columns strictly
/// increasing, entries >= 1. The rank bound on entries is checked by the
/// operations that need it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Tableau { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        for (r, row) in self.rows.iter().enumerate() {
            if r + 1 < self.rows.len() && self.rows[r + 1].len() > row.len() {
                return Err(Error::domain("row lengths must weakly decrease"));
            }
            for (c, &e) in row.iter().enumerate() {
                if e == 0 {
                    return Err(Error::domain("tableau entries start at 1"));
                }
                if c > 0 && row[c - 1] > e {
                    return Err(Error::domain("rows must weakly increase"));
                }
                if r > 0 && self.rows[r - 1][c] >= e {
                    return Err(Error::domain("columns must strictly increase"));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn max_entry(&self) -> usize {
        self.rows
            .iter()
            .flat_map(|r| r.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Highest-weight filling: row i contains only i.
    pub fn highest_weight(shape: &[usize]) -> Self {
        Tableau {
            rows: shape
                .iter()
                .enumerate()
                .filter(|(_, &len)| len > 0)
                .map(|(r, &len)| vec![r + 1; len])
                .collect(),
        }
    }

    /// Content: entry k of the result counts occurrences of k, up to n+1.
    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n + 1];
        for row in &self.rows {
            for &e in row {
                if e <= n + 1 {
                    c[e - 1] += 1;
                }
            }
        }
        c
    }
}

impl fmt::Display for Tableau {
    /// Rendered as rows separated by '/', e.g. (12/3). Entries are joined
    /// directly when they are single digits, with commas otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.max_entry() > 9;
        write!(f, "(")?;
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                write!(f, "/")?;
            }
            let strs: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", strs.join(if wide { "," } else { "" }))?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    rows: Vec<Vec<usize>>,
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        TableauJson {
            rows: self.rows.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = TableauJson::deserialize(de)?;
        Tableau::new(raw.rows).map_err(serde::de::Error::custom)
    }
}

/// Weight of a tableau: the entry counts in the epsilon basis, converted to
/// fundamental-weight coordinates.
pub fn weight_tab(t: &Tableau, n: usize) -> Weight {
    let counts: Vec<i64> = t.content(n).iter().map(|&c| c as i64).collect();
    Weight::from_eps(&counts)
}

/// Reading word for the signature rule: rows top to bottom, each row right
/// to left. Items are (row, col) positions.
fn reading_word(t: &Tableau) -> Vec<(usize, usize)> {
    let mut word = Vec::new();
    for (r, row) in t.rows.iter().enumerate() {
        for c in (0..row.len()).rev() {
            word.push((r, c));
        }
    }
    word
}

struct Signature {
    /// Positions of uncanceled entries equal to i, in word order.
    open: Vec<(usize, usize)>,
    /// Positions of uncanceled entries equal to i+1, in word order.
    close: Vec<(usize, usize)>,
}

/// Bracket entries i (openers) against entries i+1 (closers): scanning the
/// word, a closer cancels the most recent unmatched opener before it.
fn signature(t: &Tableau, i: usize) -> Signature {
    let mut open = Vec::new();
    let mut close = Vec::new();
    for (r, c) in reading_word(t) {
        let e = t.rows[r][c];
        if e == i {
            open.push((r, c));
        } else if e == i + 1 {
            if open.is_empty() {
                close.push((r, c));
            } else {
                open.pop();
            }
        }
    }
    Signature { open, close }
}

pub fn eps_tab(t: &Tableau, i: usize) -> usize {
    signature(t, i).close.len()
}

pub fn phi_tab(t: &Tableau, i: usize) -> usize {
    signature(t, i).open.len()
}

/// Lowering operator: turn the first uncanceled i of the reading word into
/// i+1, or return None when there is none.
pub fn f_tab(t: &Tableau, i: usize) -> Option<Tableau> {
    let sig = signature(t, i);
    let &(r, c) = sig.open.first()?;
    let mut rows = t.rows.clone();
    rows[r][c] = i + 1;
    let out = Tableau { rows };
    debug_assert!(out.validate().is_ok(), "signature rule broke semistandardness");
    Some(out)
}

/// Raising operator: turn the last uncanceled i+1 into i.
pub fn e_tab(t: &Tableau, i: usize) -> Option<Tableau> {
    let sig = signature(t, i);
    let &(r, c) = sig.close.last()?;
    let mut rows = t.rows.clone();
    rows[r][c] = i;
    let out = Tableau { rows };
    debug_assert!(out.validate().is_ok(), "signature rule broke semistandardness");
    Some(out)
}

/// All semistandard tableaux of the given shape with entries at most n+1,
/// generated row-major in ascending entry order.
pub fn enumerate_ssyt(shape: &[usize], n: usize) -> Vec<Tableau> {
    let shape: Vec<usize> = shape.iter().copied().filter(|&l| l > 0).collect();
    if shape.windows(2).any(|w| w[1] > w[0]) {
        return Vec::new();
    }
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &l)| (0..l).map(move |c| (r, c)))
        .collect();
    let mut out = Vec::new();
    fn fill(
        rows: &mut Vec<Vec<usize>>,
        cells: &[(usize, usize)],
        k: usize,
        max: usize,
        out: &mut Vec<Tableau>,
    ) {
        if k == cells.len() {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        let (r, c) = cells[k];
        let lo = {
            let left = if c > 0 { rows[r][c - 1] } else { 1 };
            let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
            left.max(above)
        };
        for e in lo..=max {
            rows[r][c] = e;
            fill(rows, cells, k + 1, max, out);
        }
        rows[r][c] = 0;
    }
    fill(&mut rows, &cells, 0, n + 1, &mut out);
    out
}

/// Kostka number: semistandard tableaux of the given shape and content.
pub fn kostka(shape: &[usize], mu: &[usize]) -> Result<u64> {
    let total: usize = shape.iter().sum();
    if mu.iter().sum::<usize>() != total {
        return Err(Error::domain("content size does not match shape size"));
    }
    let n = mu.len().saturating_sub(1);
    let count = enumerate_ssyt(shape, n)
        .into_iter()
        .filter(|t| {
            let c = t.content(n);
            c == mu
        })
        .count();
    Ok(count as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab(rows: &[&[usize]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn weights() {
        let n = 2;
        assert_eq!(weight_tab(&tab(&[&[1, 1], &[2]]), n).coords, vec![1, 1]);
        assert_eq!(weight_tab(&tab(&[&[2, 3], &[3]]), n).coords, vec![-1, -1]);
        assert_eq!(weight_tab(&tab(&[&[1, 3], &[2]]), n).coords, vec![0, 0]);
    }

    #[test]
    fn operators_on_figure_graph() {
        assert_eq!(f_tab(&tab(&[&[1, 1], &[2]]), 1), Some(tab(&[&[1, 2], &[2]])));
        assert_eq!(f_tab(&tab(&[&[1, 2], &[2]]), 2), Some(tab(&[&[1, 3], &[2]])));
        assert_eq!(e_tab(&tab(&[&[1, 1], &[2]]), 1), None);
        assert_eq!(e_tab(&tab(&[&[1, 1], &[2]]), 2), None);
        // No 1-arrow from (13/2): the 1 and the 2 cancel.
        assert_eq!(f_tab(&tab(&[&[1, 3], &[2]]), 1), None);
    }

    #[test]
    fn full_figure_edge_list() {
        let one_edges = [
            (tab(&[&[1, 1], &[2]]), tab(&[&[1, 2], &[2]])),
            (tab(&[&[1, 1], &[3]]), tab(&[&[1, 2], &[3]])),
            (tab(&[&[1, 2], &[3]]), tab(&[&[2, 2], &[3]])),
            (tab(&[&[1, 3], &[3]]), tab(&[&[2, 3], &[3]])),
        ];
        let two_edges = [
            (tab(&[&[1, 1], &[2]]), tab(&[&[1, 1], &[3]])),
            (tab(&[&[1, 2], &[2]]), tab(&[&[1, 3], &[2]])),
            (tab(&[&[1, 3], &[2]]), tab(&[&[1, 3], &[3]])),
            (tab(&[&[2, 2], &[3]]), tab(&[&[2, 3], &[3]])),
        ];
        let all = enumerate_ssyt(&[2, 1], 2);
        assert_eq!(all.len(), 8);
        for i in 1..=2usize {
            let expected: &[(Tableau, Tableau)] = if i == 1 { &one_edges } else { &two_edges };
            for t in &all {
                let img = f_tab(t, i);
                match expected.iter().find(|(src, _)| src == t) {
                    Some((_, dst)) => assert_eq!(img.as_ref(), Some(dst), "f_{i} of {t}"),
                    None => assert_eq!(img, None, "f_{i} of {t} should vanish"),
                }
            }
        }
    }

    #[test]
    fn e_inverts_f() {
        for t in enumerate_ssyt(&[3, 1], 3) {
            for i in 1..=3 {
                if let Some(ft) = f_tab(&t, i) {
                    assert_eq!(e_tab(&ft, i), Some(t.clone()));
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_ssyt(&[2, 1], 2).len(), 8);
        assert_eq!(enumerate_ssyt(&[1], 2).len(), 3);
        assert_eq!(enumerate_ssyt(&[1, 1, 1], 2).len(), 1);
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&[2, 1], &[1, 1, 1]).unwrap(), 2);
        assert_eq!(kostka(&[2, 1], &[2, 1, 0]).unwrap(), 1);
        assert_eq!(kostka(&[2, 1], &[3, 0, 0]).unwrap(), 0);
        assert!(kostka(&[2, 1], &[1, 1]).is_err());
    }

    #[test]
    fn kostka_sums_to_dimension() {
        use crate::cartan::{weyl_dim_u64, RootDatum};
        for n in 1..=3usize {
            let d = RootDatum::type_a(n);
            let shapes: Vec<Vec<usize>> = match n {
                1 => vec![vec![2], vec![4]],
                2 => vec![vec![2, 1], vec![3, 1], vec![2, 2]],
                _ => vec![vec![2, 1, 0], vec![1, 1, 1], vec![2, 1, 1]],
            };
            for shape in shapes {
                let mut shape_n = shape.clone();
                shape_n.resize(n, 0);
                let total: usize = shape.iter().sum();
                let mut sum = 0u64;
                for mu in crate::multiseg::compositions(n + 1, total) {
                    sum += kostka(&shape, &mu).unwrap();
                }
                // Convert the shape to a dominant weight.
                let coords: Vec<i64> = (0..n)
                    .map(|k| {
                        let cur = shape_n[k] as i64;
                        let next = if k + 1 < n { shape_n[k + 1] as i64 } else { 0 };
                        cur - next
                    })
                    .collect();
                let w = crate::cartan::Weight { coords };
                assert_eq!(sum, weyl_dim_u64(&d, &w).unwrap(), "shape {shape:?}");
            }
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(tab(&[&[1, 2], &[3]]).to_string(), "(12/3)");
        let t = Tableau::new(vec![vec![1], vec![5], vec![8], vec![10]]).unwrap();
        assert_eq!(t.to_string(), "(1/5/8/10)");
    }

    #[test]
    fn invalid_tableaux() {
        assert!(Tableau::new(vec![vec![2, 1]]).is_err());
        assert!(Tableau::new(vec![vec![1, 1], vec![1]]).is_err());
        assert!(Tableau::new(vec![vec![1], vec![2, 2]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = tab(&[&[1, 1], &[2]]);
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(js, r#"{"rows":[[1,1],[2]]}"#);
        let back: Tableau = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
    }
}
