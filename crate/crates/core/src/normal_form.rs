//! Canonical forms of lattice polytopes up to `GL(n, Z)` (linear mode) or
//! `GL(n, Z)` and lattice translations (affine mode).
//!
//! The vertex-facet pairing matrix is maximized lexicographically over row and
//! column permutations; each optimal column order gives a vertex matrix whose
//! Hermite normal form is a candidate, and the smallest candidate is the key.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::dd;
use crate::error::{Error, Result};
use crate::lattice::{self, Matrix};
use crate::polytope::{Point, Polytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Linear,
    Affine,
}

/// Canonical data: equal keys iff the polytopes are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalFormKey {
    pub affine: bool,
    pub dim: usize,
    pub nverts: usize,
    /// Row-major `dim x nverts` vertex matrix in Hermite normal form.
    pub data: Vec<i64>,
}

impl NormalFormKey {
    /// The canonical representative's vertices (columns of the stored matrix).
    pub fn vertices(&self) -> Vec<Point> {
        (0..self.nverts).map(|j| (0..self.dim).map(|i| self.data[i * self.nverts + j]).collect()).collect()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![self.affine as u8, self.dim as u8];
        out.extend((self.nverts as u32).to_be_bytes());
        for x in &self.data {
            out.extend(x.to_be_bytes());
        }
        out
    }
}

impl std::fmt::Display for NormalFormKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cols: Vec<String> = self
            .vertices()
            .iter()
            .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}{}", if self.affine { "A" } else { "L" }, cols.join(""))
    }
}

struct State {
    rows: Vec<usize>,
    cols: Vec<usize>,
    blocks: Vec<(usize, usize)>,
}

/// Column orders of the vertices realizing the lexicographically maximal
/// pairing matrix.
fn optimal_orders(pm: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let nf = pm.len();
    let nv = pm[0].len();
    let mut states = vec![State { rows: Vec::new(), cols: (0..nv).collect(), blocks: vec![(0, nv)] }];
    for _ in 0..nf {
        let mut best: Option<Vec<i64>> = None;
        let mut picks: Vec<(usize, usize)> = Vec::new();
        for (si, st) in states.iter().enumerate() {
            for f in 0..nf {
                if st.rows.contains(&f) {
                    continue;
                }
                let mut row = Vec::with_capacity(nv);
                for &(s, e) in &st.blocks {
                    let mut vals: Vec<i64> = st.cols[s..e].iter().map(|&c| pm[f][c]).collect();
                    vals.sort_unstable_by(|a, b| b.cmp(a));
                    row.extend(vals);
                }
                match &best {
                    Some(b) if &row < b => {}
                    Some(b) if &row == b => picks.push((si, f)),
                    _ => {
                        best = Some(row);
                        picks.clear();
                        picks.push((si, f));
                    }
                }
            }
        }
        let mut next = Vec::new();
        let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
        for (si, f) in picks {
            let st = &states[si];
            let mut cols = Vec::with_capacity(nv);
            let mut blocks = Vec::new();
            for &(s, e) in &st.blocks {
                let mut part: Vec<usize> = st.cols[s..e].to_vec();
                part.sort_by(|&a, &b| pm[f][b].cmp(&pm[f][a]).then(a.cmp(&b)));
                let mut start = cols.len();
                for (i, &c) in part.iter().enumerate() {
                    if i > 0 && pm[f][c] != pm[f][part[i - 1]] {
                        blocks.push((start, cols.len()));
                        start = cols.len();
                    }
                    cols.push(c);
                }
                blocks.push((start, cols.len()));
            }
            let mut rows = st.rows.clone();
            rows.push(f);
            // states with the same column blocks continue identically
            let mut sig_rows = rows.clone();
            sig_rows.sort_unstable();
            if seen.insert((sig_rows, cols.clone())) {
                next.push(State { rows, cols, blocks });
            }
        }
        states = next;
    }
    let mut out: Vec<Vec<usize>> = states.into_iter().map(|s| s.cols).collect();
    out.sort();
    out.dedup();
    out
}

fn full_dim_key(verts: &[Point], facets: &[(Point, i64)], affine: bool) -> NormalFormKey {
    let d = verts[0].len();
    let nv = verts.len();
    let pm: Vec<Vec<i64>> = facets.iter().map(|(a, b)| verts.iter().map(|v| dd::dot(a, v) - b).collect()).collect();
    let mut best: Option<Vec<i64>> = None;
    for order in optimal_orders(&pm) {
        let base = &verts[order[0]];
        let mut m = Matrix::<i64>::zeros(d, nv);
        for (j, &c) in order.iter().enumerate() {
            for i in 0..d {
                m[(i, j)] = if affine { verts[c][i] - base[i] } else { verts[c][i] };
            }
        }
        let (h, _) = lattice::hnf(&m);
        let data: Vec<i64> = (0..d).flat_map(|i| h.row(i).to_vec()).collect();
        if best.as_ref().is_none_or(|b| &data < b) {
            best = Some(data);
        }
    }
    NormalFormKey { affine, dim: d, nverts: nv, data: best.unwrap() }
}

pub fn normal_form(p: &Polytope, mode: Mode) -> Result<NormalFormKey> {
    if !p.is_lattice() {
        return Err(Error::NonLattice);
    }
    let affine = mode == Mode::Affine;
    if p.dim() == 0 {
        let data = if affine { Vec::new() } else { p.vertices()[0].clone() };
        return Ok(NormalFormKey { affine, dim: 0, nverts: 1, data });
    }
    if p.is_full_dim() {
        let facets: Vec<(Point, i64)> = p.facets().iter().map(|f| (f.normal.clone(), f.offset)).collect();
        return Ok(full_dim_key(p.vertices(), &facets, affine));
    }
    let fr = p.frame().expect("lower-dimensional lattice polytopes carry a frame");
    let local: Vec<Point> = if affine {
        fr.local_vertices.clone()
    } else {
        // the linear span must equal the affine hull, i.e. 0 lies in it
        if !p.equations().iter().all(|(_, c)| *c == 0) {
            return Err(Error::NotFullDimensional);
        }
        p.vertices().iter().map(|v| fr.local_dir(v)).collect()
    };
    let q = Polytope::from_vertices(&local)?;
    normal_form(&q, mode)
}

/// Whether two lattice polytopes are isomorphic under the given group.
pub fn isomorphic(p: &Polytope, q: &Polytope, mode: Mode) -> bool {
    match (normal_form(p, mode), normal_form(q, mode)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::shapes;

    #[test]
    fn cube_vs_simplex() {
        let a = normal_form(&shapes::cube(3), Mode::Linear).unwrap();
        let b = normal_form(&shapes::fano_simplex(3), Mode::Linear).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn idempotent() {
        let p = shapes::hexagon();
        let k = normal_form(&p, Mode::Linear).unwrap();
        let q = Polytope::from_vertices(&k.vertices()).unwrap();
        assert_eq!(normal_form(&q, Mode::Linear).unwrap(), k);
    }

    #[test]
    fn affine_translation_invariance() {
        let p = shapes::standard_simplex(3);
        let q = p.translate(&[3, -2, 7]);
        assert_eq!(normal_form(&p, Mode::Affine).unwrap(), normal_form(&q, Mode::Affine).unwrap());
        assert_ne!(normal_form(&p, Mode::Linear).unwrap(), normal_form(&q, Mode::Linear).unwrap());
    }

    #[test]
    fn lower_dimensional() {
        let a = Polytope::from_vertices(&[vec![0, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let b = Polytope::from_vertices(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(isomorphic(&a, &b, Mode::Linear));
    }
}
