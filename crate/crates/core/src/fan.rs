//! Complete (generalized) fans and the shape-variety constructors.
//!
//! A [`Fan`] stores cone generators modulo its minimal cone (the lineality
//! space) and maximal cones as index lists into them. When the lineality is
//! nontrivial the fan has no one-dimensional cones, so [`Fan::rays`] is empty.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::cone::{unit, Cone};
use crate::dd;
use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix, Matrix};
use crate::polytope::{Point, Polytope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub ambient_dim: usize,
    /// Primitive generators modulo the lineality space.
    pub generators: Vec<Point>,
    /// Maximal cones as sorted generator-index lists.
    pub cones: Vec<Vec<usize>>,
    /// Saturated basis of the minimal cone.
    #[serde(default)]
    pub lineality: Vec<Point>,
}

/// A complete unimodular fan with a frozen ray order (the basis of the torus
/// invariant divisors) and, for products of projective spaces, the partition
/// of rays into factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeFan {
    pub label: String,
    pub fan: Fan,
    #[serde(default)]
    pub factors: Option<Vec<Vec<usize>>>,
}

impl Fan {
    pub fn new(ambient_dim: usize, generators: Vec<Point>, cones: Vec<Vec<usize>>, lineality: Vec<Point>) -> Result<Fan> {
        if generators.iter().chain(&lineality).any(|g| g.len() != ambient_dim) {
            return Err(Error::Dimension("generator length differs from ambient dimension".into()));
        }
        if generators.iter().any(|g| !lattice::is_primitive(g)) {
            let index = generators.iter().position(|g| !lattice::is_primitive(g)).unwrap();
            return Err(Error::NonPrimitive { index });
        }
        if cones.iter().flatten().any(|&i| i >= generators.len()) {
            return Err(Error::Dimension("cone refers to a missing generator".into()));
        }
        let lineality = if lineality.is_empty() {
            lineality
        } else {
            lattice::saturated_row_span(&Matrix::from_rows(lineality, ambient_dim)).to_rows()
        };
        let cones = cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        Ok(Fan { ambient_dim, generators, cones, lineality })
    }

    /// One-dimensional cones; empty for fans with nontrivial minimal cone.
    pub fn rays(&self) -> &[Point] {
        if self.lineality.is_empty() {
            &self.generators
        } else {
            &[]
        }
    }

    pub fn cone(&self, i: usize) -> Cone {
        let gens: Vec<Point> = self.cones[i].iter().map(|&j| self.generators[j].clone()).collect();
        Cone::from_generators(&gens, &self.lineality, self.ambient_dim)
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        (0..self.cones.len()).map(|i| self.cone(i)).collect()
    }

    pub fn cone_of(&self, idx: &[usize]) -> Cone {
        let gens: Vec<Point> = idx.iter().map(|&j| self.generators[j].clone()).collect();
        Cone::from_generators(&gens, &self.lineality, self.ambient_dim)
    }

    /// Every cone (as generator-index sets), the minimal cone included as `[]`.
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (ci, c) in self.cones.iter().enumerate() {
            let cone = self.cone(ci);
            let facet_sets: Vec<Vec<usize>> = cone
                .halfspaces
                .iter()
                .map(|h| c.iter().copied().filter(|&j| dd::dot(h, &self.generators[j]) == 0).collect())
                .collect();
            let mut stack = vec![c.clone()];
            while let Some(f) = stack.pop() {
                if !seen.insert(f.clone()) {
                    continue;
                }
                for s in &facet_sets {
                    let g: Vec<usize> = f.iter().copied().filter(|j| s.contains(j)).collect();
                    if g.len() < f.len() && !seen.contains(&g) {
                        stack.push(g);
                    }
                }
            }
        }
        seen.insert(Vec::new());
        let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    /// Support is the whole space: every wall is shared by exactly two
    /// maximal cones lying on opposite sides, and generic points are covered
    /// exactly once.
    pub fn is_complete(&self) -> bool {
        let n = self.ambient_dim;
        let cones = self.maximal_cones();
        if cones.is_empty() {
            return false;
        }
        if cones.iter().any(|c| c.dim() != n) {
            return false;
        }
        if cones.iter().all(|c| c.halfspaces.is_empty()) {
            return cones.len() == 1;
        }
        for (ci, c) in cones.iter().enumerate() {
            for h in &c.halfspaces {
                let wall: Vec<usize> =
                    self.cones[ci].iter().copied().filter(|&j| dd::dot(h, &self.generators[j]) == 0).collect();
                let neg: Point = h.iter().map(|x| -x).collect();
                let partners = cones
                    .iter()
                    .enumerate()
                    .filter(|&(cj, d)| {
                        cj != ci
                            && d.halfspaces.contains(&neg)
                            && wall.iter().all(|j| self.cones[cj].contains(j))
                    })
                    .count();
                if partners != 1 {
                    return false;
                }
            }
        }
        // points on a wall are not generic for this fan
        let on_wall = |p: &Point| cones.iter().any(|c| c.halfspaces.iter().any(|h| dd::dot(h, p) == 0));
        generic_points(n)
            .iter()
            .filter(|p| !on_wall(p))
            .all(|p| cones.iter().filter(|c| c.contains_in_relative_interior(p)).count() == 1)
    }

    pub fn is_unimodular(&self) -> bool {
        self.maximal_cones().iter().all(|c| c.is_unimodular())
    }

    /// The pointed fan obtained by quotienting by the minimal cone.
    pub fn quotient(&self) -> Fan {
        if self.lineality.is_empty() {
            return self.clone();
        }
        let n = self.ambient_dim;
        let k = self.lineality.len();
        // coordinate lineality: just drop those coordinates
        let coord: Vec<Option<usize>> = self
            .lineality
            .iter()
            .map(|l| {
                let nz: Vec<usize> = (0..n).filter(|&i| l[i] != 0).collect();
                (nz.len() == 1 && l[nz[0]].abs() == 1).then(|| nz[0])
            })
            .collect();
        if coord.iter().all(|c| c.is_some()) {
            let drop: Vec<usize> = coord.into_iter().flatten().collect();
            let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
            let gens = self.generators.iter().map(|g| dd::primitive(&keep.iter().map(|&i| g[i]).collect::<Point>())).collect();
            return Fan { ambient_dim: n - k, generators: gens, cones: self.cones.clone(), lineality: Vec::new() };
        }
        let l = Matrix::from_rows(self.lineality.clone(), n);
        let u = lattice::complete_basis(&l).expect("saturated lineality");
        let uinv = lattice::inverse_unimodular(&u).unwrap();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let y: Point = (0..n).map(|j| (0..n).map(|i| g[i] * uinv[(i, j)]).sum()).collect();
                dd::primitive(&y[k..])
            })
            .collect();
        Fan { ambient_dim: n - k, generators: gens, cones: self.cones.clone(), lineality: Vec::new() }
    }

    /// Index of the maximal cone containing `x` in its interior, if any.
    pub fn locate(&self, x: &[i64]) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.cone(i).contains(x)).collect()
    }

    pub fn from_json(s: &str) -> Result<Fan> {
        let f: Fan = serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        Fan::new(f.ambient_dim, f.generators, f.cones, f.lineality)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap()
    }
}

fn generic_points(n: usize) -> Vec<Point> {
    let seeds: [i64; 3] = [7, 11, 13];
    let mut out = Vec::new();
    for s in seeds {
        for sign in 0..(1usize << n.min(4)) {
            let p: Point = (0..n)
                .map(|i| {
                    let v = (s.pow(i as u32 % 4) * (i as i64 + 3) + 17 * i as i64) % 101 + 1;
                    if sign >> (i % 4) & 1 == 1 {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            out.push(p);
        }
    }
    out
}

/// Cones over the faces of a polytope containing 0 in its interior.
pub fn spanning_fan(p: &Polytope, strict: bool) -> Result<Fan> {
    if !p.origin_is_interior() {
        return Err(Error::OriginNotInterior);
    }
    if strict && !p.is_reflexive() {
        return Err(Error::InvalidParameters("spanning fan requires a reflexive polytope".into()));
    }
    let gens: Vec<Point> = p.vertices().iter().map(|v| dd::primitive(v)).collect();
    let cones = (0..p.facets().len()).map(|i| p.facet_vertices(i)).collect();
    Fan::new(p.ambient_dim(), gens, cones, Vec::new())
}

/// Inner normal fan: maximal cones correspond to vertices.
pub fn normal_fan(p: &Polytope) -> Result<Fan> {
    let gens: Vec<Point> = p.facets().iter().map(|f| f.normal.clone()).collect();
    let vinc = p.vertex_incidence();
    let cones = vinc.iter().map(|s| s.ones().collect()).collect();
    let lineality = p.equations().iter().map(|(a, _)| a.clone()).collect();
    Fan::new(p.ambient_dim(), gens, cones, lineality)
}

/// Adds `k` trivial directions to the minimal cone.
pub fn promote(f: &Fan, k: usize) -> Fan {
    let n = f.ambient_dim + k;
    let lift = |v: &Point| {
        let mut w = v.clone();
        w.extend(std::iter::repeat_n(0, k));
        w
    };
    let mut lineality: Vec<Point> = f.lineality.iter().map(lift).collect();
    for i in f.ambient_dim..n {
        lineality.push(unit(n, i));
    }
    Fan {
        ambient_dim: n,
        generators: f.generators.iter().map(lift).collect(),
        cones: f.cones.clone(),
        lineality,
    }
}

/// Star subdivision at a primitive vector `v` in the support (simplicial
/// cones containing `v` are split; `v` is appended as the last ray).
pub fn star_subdivide(f: &Fan, v: &[i64]) -> Result<Fan> {
    let v = v.to_vec();
    if f.generators.contains(&v) {
        return Err(Error::ExistingRay(v));
    }
    if !lattice::is_primitive(&v) {
        return Err(Error::NonPrimitive { index: 0 });
    }
    let n = f.ambient_dim;
    let new_idx = f.generators.len();
    let mut cones = Vec::new();
    let mut hit = false;
    for (ci, c) in f.cones.iter().enumerate() {
        if !f.cone(ci).contains(&v) {
            cones.push(c.clone());
            continue;
        }
        hit = true;
        if c.len() != n - f.lineality.len() {
            return Err(Error::InvalidParameters("star subdivision of a non-simplicial cone".into()));
        }
        // v = sum a_i g_i over the cone's generators
        let m = Matrix::from_rows(c.iter().map(|&j| f.generators[j].clone()).collect(), n);
        let a = rational_coefficients(&m, &v);
        for (pos, &ai) in a.iter().enumerate() {
            if ai > 0 {
                let mut nc: Vec<usize> = c.iter().enumerate().filter(|&(q, _)| q != pos).map(|(_, &j)| j).collect();
                nc.push(new_idx);
                cones.push(nc);
            }
        }
    }
    if !hit {
        return Err(Error::InvalidParameters("vector outside the support".into()));
    }
    let mut gens = f.generators.clone();
    gens.push(v);
    Fan::new(n, gens, cones, f.lineality.clone())
}

/// Signs-relevant coefficients (scaled numerators) of `v` in the basis rows
/// of `m`; `m` must have independent rows spanning `v`.
fn rational_coefficients(m: &Matrix<i64>, v: &[i64]) -> Vec<i64> {
    // solve a m = v via a square subsystem; returns a * det (sign-correct when det > 0)
    let k = m.nrows();
    let n = m.ncols();
    let cols: Vec<usize> = {
        let t = m.transpose().to_rows();
        dd::independent_rows(&t, k)
    };
    let sq = m.select_columns(&cols);
    let d = lattice::det(&sq);
    let rhs: Vec<i64> = cols.iter().map(|&j| v[j]).collect();
    let _ = n;
    // Cramer's rule on a * sq = rhs
    (0..k)
        .map(|i| {
            let mut r = sq.clone();
            for j in 0..k {
                r[(i, j)] = rhs[j];
            }
            lattice::det(&r) * d.signum()
        })
        .collect()
}

impl ShapeFan {
    pub fn num_rays(&self) -> usize {
        self.fan.generators.len()
    }

    pub fn dim(&self) -> usize {
        self.fan.ambient_dim
    }

    pub fn rays(&self) -> &[Point] {
        &self.fan.generators
    }

    /// Columns are the primitive ray generators in the frozen order.
    pub fn ray_map(&self) -> IntMatrix {
        let n = self.dim();
        let cols = self.num_rays();
        let mut m = Matrix::<i64>::zeros(n, cols);
        for (j, r) in self.fan.generators.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = r[i];
            }
        }
        m.to_big()
    }
}

/// `P^n`: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`.
pub fn projective_space(n: usize) -> ShapeFan {
    let mut gens: Vec<Point> = (0..n).map(|i| unit(n, i)).collect();
    gens.push(vec![-1; n]);
    let cones = (0..=n).map(|skip| (0..=n).filter(|&j| j != skip).collect()).collect();
    ShapeFan {
        label: format!("P{n}"),
        fan: Fan::new(n, gens, cones, Vec::new()).unwrap(),
        factors: Some(vec![(0..=n).collect()]),
    }
}

/// Product fan; rays are the factor blocks in order.
pub fn product(a: &ShapeFan, b: &ShapeFan) -> ShapeFan {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let mut gens = Vec::new();
    for g in a.rays() {
        let mut v = g.clone();
        v.extend(std::iter::repeat_n(0, nb));
        gens.push(v);
    }
    for g in b.rays() {
        let mut v = vec![0; na];
        v.extend(g.iter().copied());
        gens.push(v);
    }
    let off = a.num_rays();
    let mut cones = Vec::new();
    for ca in &a.fan.cones {
        for cb in &b.fan.cones {
            let mut c = ca.clone();
            c.extend(cb.iter().map(|j| j + off));
            cones.push(c);
        }
    }
    let factors = match (&a.factors, &b.factors) {
        (Some(fa), Some(fb)) => {
            let mut f = fa.clone();
            f.extend(fb.iter().map(|blk| blk.iter().map(|j| j + off).collect()));
            Some(f)
        }
        _ => None,
    };
    ShapeFan {
        label: format!("{}x{}", a.label, b.label),
        fan: Fan::new(n, gens, cones, Vec::new()).unwrap(),
        factors,
    }
}

fn p1xp1_square_order() -> Fan {
    // rays e1, e2, -e1, -e2 (cyclic order)
    let gens = vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]];
    Fan::new(2, gens, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]], Vec::new()).unwrap()
}

/// Shape fans by label: `P<n>`, products joined by `x` (e.g. `P1xP1`),
/// `dP7`, `dP6`, `dP5p`.
pub fn shape(label: &str) -> Result<ShapeFan> {
    let blowups: &[&[i64]] = match label {
        "dP7" => &[&[1, 1]],
        "dP6" => &[&[1, 1], &[-1, -1]],
        "dP5p" | "dP5'" => &[&[1, 1], &[-1, -1], &[1, -1]],
        _ => &[],
    };
    if !blowups.is_empty() {
        let mut f = p1xp1_square_order();
        for b in blowups {
            f = star_subdivide(&f, b)?;
        }
        return Ok(ShapeFan { label: label.to_string(), fan: f, factors: None });
    }
    let parts: Vec<&str> = label.split(['x', '*', '×']).collect();
    let mut acc: Option<ShapeFan> = None;
    for p in parts {
        let n: usize = p
            .strip_prefix('P')
            .and_then(|d| d.parse().ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::UnknownShape(label.to_string()))?;
        let f = projective_space(n);
        acc = Some(match acc {
            None => f,
            Some(a) => product(&a, &f),
        });
    }
    let mut s = acc.ok_or_else(|| Error::UnknownShape(label.to_string()))?;
    s.label = label.to_string();
    Ok(s)
}

/// Automorphisms of a pointed complete fan: lattice automorphisms permuting
/// the generators and mapping maximal cones to maximal cones. Returned as
/// generator permutations together with the matrices (acting on columns).
pub fn automorphisms(f: &Fan) -> Vec<(Vec<usize>, Matrix<i64>)> {
    let n = f.ambient_dim;
    let g = &f.generators;
    // a basis among the generators, chosen inside one maximal cone when possible
    let basis = dd::independent_rows(g, n);
    if basis.len() < n {
        return vec![((0..g.len()).collect(), Matrix::identity(n))];
    }
    let bm = Matrix::from_rows(basis.iter().map(|&i| g[i].clone()).collect(), n);
    let bdet = lattice::det(&bm);
    let cone_set: HashSet<Vec<usize>> = f.cones.iter().cloned().collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    fn rec(
        depth: usize,
        choice: &mut Vec<usize>,
        f: &Fan,
        basis: &[usize],
        bm: &Matrix<i64>,
        bdet: i64,
        cone_set: &HashSet<Vec<usize>>,
        out: &mut Vec<(Vec<usize>, Matrix<i64>)>,
    ) {
        let n = f.ambient_dim;
        let g = &f.generators;
        if depth == n {
            // A with A b_i = g_choice(i): A = T B^{-1} where B has columns b_i
            let t = Matrix::from_rows(choice.iter().map(|&c| g[c].clone()).collect(), n);
            // rows: A^T = B^{-T} T^T ... solve via adjugate: A = T^T (B^T)^{-1}
            let Some(a) = solve_map(bm, &t, bdet) else { return };
            let mut perm = Vec::with_capacity(g.len());
            for v in g {
                let w = a.mul_vec(v);
                match g.iter().position(|u| *u == w) {
                    Some(j) => perm.push(j),
                    None => return,
                }
            }
            let ok = f.cones.iter().all(|c| {
                let mut img: Vec<usize> = c.iter().map(|&j| perm[j]).collect();
                img.sort_unstable();
                cone_set.contains(&img)
            });
            if ok {
                out.push((perm, a));
            }
            return;
        }
        for c in 0..g.len() {
            if choice[..depth].contains(&c) {
                continue;
            }
            choice[depth] = c;
            rec(depth + 1, choice, f, basis, bm, bdet, cone_set, out);
        }
        let _ = basis;
    }
    rec(0, &mut choice, f, &basis, &bm, bdet, &cone_set, &mut out);
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|a, b| a.0 == b.0);
    out
}

/// Integer matrix `A` (acting on column vectors) with `A b_i = t_i`, where
/// `b_i`, `t_i` are the rows of `bm`, `t`; `None` if not unimodular.
fn solve_map(bm: &Matrix<i64>, t: &Matrix<i64>, bdet: i64) -> Option<Matrix<i64>> {
    let n = bm.nrows();
    // A B^T = T^T  =>  A = T^T adj(B^T) / det
    let bt = bm.transpose();
    let mut adj = Matrix::<i64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor_rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let minor_cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = bt.select_rows(&minor_rows).select_columns(&minor_cols);
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[(i, j)] = s * lattice::det(&m);
        }
    }
    let num = t.transpose().mul(&adj);
    let mut a = Matrix::<i64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if num[(i, j)] % bdet != 0 {
                return None;
            }
            a[(i, j)] = num[(i, j)] / bdet;
        }
    }
    if lattice::det(&a).abs() != 1 {
        return None;
    }
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::shapes;

    #[test]
    fn spanning_fan_of_octahedron() {
        let f = spanning_fan(&shapes::cross_polytope(3), true).unwrap();
        assert_eq!(f.cones.len(), 8);
        assert!(f.is_complete() && f.is_unimodular());
    }

    #[test]
    fn normal_fan_of_cube() {
        let nf = normal_fan(&shapes::cube(3)).unwrap();
        let sf = spanning_fan(&shapes::cross_polytope(3), true).unwrap();
        let key = |f: &Fan| {
            let mut cs: Vec<Vec<Point>> = f
                .cones
                .iter()
                .map(|c| {
                    let mut v: Vec<Point> = c.iter().map(|&j| f.generators[j].clone()).collect();
                    v.sort();
                    v
                })
                .collect();
            cs.sort();
            cs
        };
        assert_eq!(key(&nf), key(&sf));
        assert!(normal_fan(&shapes::cube(3).dilate(2)).unwrap().is_unimodular());
    }

    #[test]
    fn hexagon_fan_is_dp6() {
        let f = spanning_fan(&shapes::hexagon(), true).unwrap();
        assert_eq!(f.cones.len(), 6);
        assert!(f.is_unimodular() && f.is_complete());
    }

    #[test]
    fn projective_line_and_plane() {
        let p1 = shape("P1").unwrap();
        assert_eq!(p1.rays(), &[vec![1], vec![-1]]);
        let p2 = shape("P2").unwrap();
        assert_eq!(p2.ray_map(), IntMatrix::from_i64_rows(&[vec![1, 0, -1], vec![0, 1, -1]], 3));
    }

    #[test]
    fn product_shape() {
        let s = shape("P1xP1").unwrap();
        assert_eq!(s.rays(), &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
        assert_eq!(s.factors, Some(vec![vec![0, 1], vec![2, 3]]));
        assert!(s.fan.is_complete());
        let mut broken = s.fan.clone();
        broken.cones.pop();
        assert!(!broken.is_complete());
    }

    #[test]
    fn del_pezzo_shapes() {
        for (l, r) in [("dP7", 5), ("dP6", 6), ("dP5p", 7)] {
            let s = shape(l).unwrap();
            assert_eq!(s.num_rays(), r);
            assert!(s.fan.is_complete() && s.fan.is_unimodular(), "{l}");
        }
        for l in ["P1", "P2", "P3", "P1xP1xP1", "P2xP1", "P1xP2"] {
            let s = shape(l).unwrap();
            assert!(s.fan.is_complete() && s.fan.is_unimodular(), "{l}");
        }
        assert!(matches!(star_subdivide(&shape("dP7").unwrap().fan, &[1, 1]), Err(Error::ExistingRay(_))));
        assert!(shape("Q7").is_err());
    }

    #[test]
    fn promotion() {
        let p = promote(&shape("P1").unwrap().fan, 2);
        assert_eq!(p.ambient_dim, 3);
        assert!(p.rays().is_empty());
        assert_eq!(p.cones.len(), 2);
        assert!(p.is_complete() && p.is_unimodular());
        let d = shape("dP6").unwrap().fan;
        assert_eq!(promote(&d, 1).quotient(), d);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&spanning_fan(&shapes::cross_polytope(3), true).unwrap()).len(), 48);
        assert_eq!(automorphisms(&shape("P2").unwrap().fan).len(), 6);
        assert_eq!(automorphisms(&shape("dP6").unwrap().fan).len(), 12);
    }

    #[test]
    fn json_round_trip() {
        let f = shape("dP7").unwrap().fan;
        assert_eq!(Fan::from_json(&f.to_json()).unwrap(), f);
    }
}
