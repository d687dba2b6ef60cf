//! Rational polytopes with synchronized vertex and facet descriptions.
//!
//! Lattice polytopes of any dimension are supported; polytopes with
//! non-integral vertices (polar duals of non-reflexive polytopes, slices) must
//! be full-dimensional. Lower-dimensional lattice polytopes carry a [`Frame`]:
//! lattice coordinates on their affine hull, used for unimodularity, lattice
//! points and normal forms.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::dd::{self, Bits, QPoint};
use crate::error::{Error, Result};
use crate::lattice::{self, Matrix};

pub type Point = Vec<i64>;

/// `<normal, x> >= offset / den` where `den` is the polytope's denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Point,
    pub offset: i64,
}

/// Lattice coordinates on the affine hull: `x = origin + c * basis`,
/// `c = (x - origin) * inv`.
#[derive(Clone, Debug)]
pub struct Frame {
    pub origin: Point,
    pub basis: Matrix<i64>,
    pub inv: Matrix<i64>,
    pub local_vertices: Vec<Point>,
    pub local_facets: Vec<(Point, i64)>,
}

impl Frame {
    pub fn local(&self, x: &[i64]) -> Point {
        let d: Point = x.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        (0..self.inv.ncols()).map(|j| (0..d.len()).map(|i| d[i] * self.inv[(i, j)]).sum()).collect()
    }

    /// Coordinates of a direction vector in the span.
    pub fn local_dir(&self, d: &[i64]) -> Point {
        (0..self.inv.ncols()).map(|j| (0..d.len()).map(|i| d[i] * self.inv[(i, j)]).sum()).collect()
    }

    pub fn global(&self, c: &[i64]) -> Point {
        let mut x = self.origin.clone();
        for (i, ci) in c.iter().enumerate() {
            for (j, xj) in x.iter_mut().enumerate() {
                *xj += ci * self.basis[(i, j)];
            }
        }
        x
    }
}

#[derive(Clone, Debug)]
pub struct Polytope {
    ambient_dim: usize,
    dim: usize,
    den: i64,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    equations: Vec<(Point, i64)>,
    /// per facet, the vertices on it
    incidence: Vec<Bits>,
    frame: Option<Frame>,
}

impl PartialEq for Polytope {
    fn eq(&self, o: &Self) -> bool {
        self.ambient_dim == o.ambient_dim && self.den == o.den && self.vertices == o.vertices
    }
}
impl Eq for Polytope {}

impl std::hash::Hash for Polytope {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.ambient_dim.hash(h);
        self.den.hash(h);
        self.vertices.hash(h);
    }
}

fn hull_full_dim(pts: &[Point], n: usize) -> (Vec<Point>, Vec<(Point, i64)>, Vec<Bits>) {
    let facets = dd::v_to_h(pts, n).expect("point set is full-dimensional");
    let mut verts: Vec<Point> = pts
        .iter()
        .filter(|p| {
            let tight: Vec<Point> =
                facets.iter().filter(|(a, b)| dd::dot(a, p) == *b).map(|(a, _)| a.clone()).collect();
            dd::independent_rows(&tight, n).len() == n
        })
        .cloned()
        .collect();
    verts.sort();
    verts.dedup();
    let inc = facets
        .iter()
        .map(|(a, b)| {
            let mut s = Bits::new(verts.len());
            for (i, v) in verts.iter().enumerate() {
                if dd::dot(a, v) == *b {
                    s.set(i);
                }
            }
            s
        })
        .collect();
    (verts, facets, inc)
}

impl Polytope {
    /// Convex hull of lattice points (duplicates and non-vertices allowed).
    pub fn from_vertices(pts: &[Point]) -> Result<Polytope> {
        let first = pts.first().ok_or(Error::Empty)?;
        let n = first.len();
        if pts.iter().any(|p| p.len() != n) {
            return Err(Error::Dimension("points of different lengths".into()));
        }
        let mut pts = pts.to_vec();
        pts.sort();
        pts.dedup();
        let p0 = pts[0].clone();
        let diffs: Vec<Point> =
            pts[1..].iter().map(|p| p.iter().zip(&p0).map(|(a, b)| a - b).collect()).collect();
        let basis = if diffs.is_empty() {
            Matrix::zeros(0, n)
        } else {
            lattice::saturated_row_span(&Matrix::from_rows(diffs, n))
        };
        let k = basis.nrows();
        if k == n {
            let (vertices, facets, incidence) = hull_full_dim(&pts, n);
            let facets = facets.into_iter().map(|(normal, offset)| Facet { normal, offset }).collect();
            return Ok(Polytope {
                ambient_dim: n,
                dim: n,
                den: 1,
                vertices,
                facets,
                equations: Vec::new(),
                incidence,
                frame: None,
            });
        }
        let eq_rows = lattice::kernel_basis(&basis).to_rows();
        let equations: Vec<(Point, i64)> = eq_rows.into_iter().map(|a| {
            let c = dd::dot(&a, &p0);
            (a, c)
        }).collect();
        let inv = if k == 0 { Matrix::zeros(n, 0) } else { lattice::right_inverse(&basis).expect("saturated") };
        let mut frame = Frame {
            origin: p0.clone(),
            basis,
            inv,
            local_vertices: Vec::new(),
            local_facets: Vec::new(),
        };
        if k == 0 {
            frame.local_vertices = vec![Vec::new()];
            return Ok(Polytope {
                ambient_dim: n,
                dim: 0,
                den: 1,
                vertices: vec![p0],
                facets: Vec::new(),
                equations,
                incidence: Vec::new(),
                frame: Some(frame),
            });
        }
        let local: Vec<Point> = pts.iter().map(|p| frame.local(p)).collect();
        let (lverts, lfacets, _) = hull_full_dim(&local, k);
        let mut vertices: Vec<Point> = lverts.iter().map(|c| frame.global(c)).collect();
        vertices.sort();
        let local_vertices: Vec<Point> = vertices.iter().map(|v| frame.local(v)).collect();
        let mut facets: Vec<Facet> = lfacets
            .iter()
            .map(|(a, b)| {
                let normal: Point = (0..n).map(|i| (0..k).map(|j| frame.inv[(i, j)] * a[j]).sum()).collect();
                let offset = dd::dot(&normal, &p0) + b;
                Facet { normal, offset }
            })
            .collect();
        facets.sort();
        let incidence = facets
            .iter()
            .map(|f| {
                let mut s = Bits::new(vertices.len());
                for (i, v) in vertices.iter().enumerate() {
                    if dd::dot(&f.normal, v) == f.offset {
                        s.set(i);
                    }
                }
                s
            })
            .collect();
        let mut local_facets: Vec<(Point, i64)> = facets
            .iter()
            .map(|f| {
                let a: Point = (0..k).map(|i| (0..n).map(|j| frame.basis[(i, j)] * f.normal[j]).sum()).collect();
                (a, f.offset - dd::dot(&f.normal, &p0))
            })
            .collect();
        local_facets.sort();
        frame.local_vertices = local_vertices;
        frame.local_facets = local_facets;
        Ok(Polytope { ambient_dim: n, dim: k, den: 1, vertices, facets, equations, incidence, frame: Some(frame) })
    }

    /// Full-dimensional polytope with vertices `num / den` (candidate points,
    /// non-vertices allowed).
    pub fn from_rational(nums: &[Point], den: i64) -> Result<Polytope> {
        assert!(den > 0);
        let g = nums.iter().flatten().fold(den, |g, &x| num_integer::gcd(g, x));
        let den = den / g;
        let nums: Vec<Point> = nums.iter().map(|p| p.iter().map(|x| x / g).collect()).collect();
        if den == 1 {
            return Self::from_vertices(&nums);
        }
        let n = nums.first().ok_or(Error::Empty)?.len();
        let diffs: Vec<Point> =
            nums.iter().map(|p| p.iter().zip(&nums[0]).map(|(a, b)| a - b).collect()).collect();
        if dd::independent_rows(&diffs, n).len() < n {
            return Err(Error::NonLattice);
        }
        let (vertices, facets, incidence) = hull_full_dim(&nums, n);
        let facets = facets.into_iter().map(|(normal, offset)| Facet { normal, offset }).collect();
        Ok(Polytope { ambient_dim: n, dim: n, den, vertices, facets, equations: Vec::new(), incidence, frame: None })
    }

    /// The bounded set `{x : <n, x> >= b}`.
    pub fn from_halfspaces(ineqs: &[(Point, i64)]) -> Result<Polytope> {
        let n = ineqs.first().ok_or(Error::Unbounded)?.0.len();
        let h = dd::h_to_v(ineqs, n)?;
        Self::from_qpoints(&h.vertices)
    }

    pub(crate) fn from_qpoints(q: &[QPoint]) -> Result<Polytope> {
        let den = q.iter().fold(1i64, |l, p| num_integer::lcm(l, p.den));
        let nums: Vec<Point> = q.iter().map(|p| p.num.iter().map(|x| x * (den / p.den)).collect()).collect();
        Self::from_rational(&nums, den)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_full_dim(&self) -> bool {
        self.dim == self.ambient_dim
    }
    /// Common denominator of the vertices (1 for lattice polytopes).
    pub fn den(&self) -> i64 {
        self.den
    }
    pub fn is_lattice(&self) -> bool {
        self.den == 1
    }
    /// Vertex numerators, sorted.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }
    /// Affine hull equations `<a, x> = c` (empty when full-dimensional).
    pub fn equations(&self) -> &[(Point, i64)] {
        &self.equations
    }
    pub fn frame(&self) -> Option<&Frame> {
        self.frame.as_ref()
    }
    /// Vertices on facet `i`.
    pub fn facet_vertices(&self, i: usize) -> Vec<usize> {
        self.incidence[i].ones().collect()
    }

    /// Halfspaces `<n, x> >= b` in true units (normals scaled by `den`),
    /// equations included as opposite pairs.
    pub fn h_constraints(&self) -> Vec<(Point, i64)> {
        // <n, x> >= b / den  <=>  <den n, x> >= b
        let mut out: Vec<(Point, i64)> =
            self.facets.iter().map(|f| (f.normal.iter().map(|x| x * self.den).collect(), f.offset)).collect();
        for (a, c) in &self.equations {
            out.push((a.clone(), *c));
            out.push((a.iter().map(|x| -x).collect(), -c));
        }
        out
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| dd::dot(&f.normal, x) * self.den >= f.offset)
            && self.equations.iter().all(|(a, c)| dd::dot(a, x) == *c)
    }

    pub fn contains_in_relative_interior(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| dd::dot(&f.normal, x) * self.den > f.offset)
            && self.equations.iter().all(|(a, c)| dd::dot(a, x) == *c)
    }

    pub fn origin_is_interior(&self) -> bool {
        self.is_full_dim() && self.facets.iter().all(|f| f.offset < 0)
    }

    /// All lattice points, sorted.
    pub fn lattice_points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        match &self.frame {
            Some(fr) => {
                let k = self.dim;
                if k == 0 {
                    return if self.den == 1 { self.vertices.clone() } else { Vec::new() };
                }
                let (lo, hi) = bounding_box(&fr.local_vertices, 1, k);
                for_each_in_box(&lo, &hi, |c| {
                    if fr.local_facets.iter().all(|(a, b)| dd::dot(a, c) >= *b) {
                        out.push(fr.global(c));
                    }
                });
            }
            None => {
                let (lo, hi) = bounding_box(&self.vertices, self.den, self.ambient_dim);
                for_each_in_box(&lo, &hi, |x| {
                    if self.contains(x) {
                        out.push(x.to_vec());
                    }
                });
            }
        }
        out.sort();
        out
    }

    /// Lattice points in the relative interior.
    pub fn interior_lattice_points(&self) -> Vec<Point> {
        if self.dim == 0 {
            return self.lattice_points();
        }
        self.lattice_points().into_iter().filter(|x| self.contains_in_relative_interior(x)).collect()
    }

    pub fn is_hollow(&self) -> bool {
        self.interior_lattice_points().is_empty()
    }

    pub fn is_reflexive(&self) -> bool {
        self.is_lattice() && self.is_full_dim() && self.facets.iter().all(|f| f.offset == -1)
    }

    /// `{y : <x, y> >= -1 for all x in p}`.
    pub fn polar_dual(&self) -> Result<Polytope> {
        if !self.origin_is_interior() {
            return Err(Error::OriginNotInterior);
        }
        // facet <n, x> >= b / den gives the dual vertex n * den / (-b)
        let q: Vec<QPoint> =
            self.facets.iter().map(|f| QPoint::new(f.normal.iter().map(|x| x * self.den).collect(), -f.offset)).collect();
        Self::from_qpoints(&q)
    }

    /// Vertices adjacent to vertex `i` (combinatorial edge test).
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let vinc = self.vertex_incidence();
        let need = self.dim.saturating_sub(1);
        (0..self.vertices.len())
            .filter(|&j| {
                if j == i {
                    return false;
                }
                let common = vinc[i].and(&vinc[j]);
                common.count() >= need
                    && (0..self.vertices.len()).all(|o| o == i || o == j || !vinc[o].is_superset(&common))
            })
            .collect()
    }

    /// Per vertex, the facets containing it.
    pub fn vertex_incidence(&self) -> Vec<Bits> {
        let mut out = vec![Bits::new(self.facets.len()); self.vertices.len()];
        for (f, inc) in self.incidence.iter().enumerate() {
            for v in inc.ones() {
                out[v].set(f);
            }
        }
        out
    }

    /// Primitive edge directions at vertex `i`.
    pub fn vertex_edge_directions(&self, i: usize) -> Vec<Point> {
        if self.dim == 1 {
            let v = &self.vertices[i];
            return (0..self.vertices.len())
                .filter(|&j| j != i)
                .map(|j| dd::primitive(&self.vertices[j].iter().zip(v).map(|(a, b)| a - b).collect::<Point>()))
                .collect();
        }
        let v = &self.vertices[i];
        self.neighbors(i)
            .into_iter()
            .map(|j| dd::primitive(&self.vertices[j].iter().zip(v).map(|(a, b)| a - b).collect::<Point>()))
            .collect()
    }

    /// Tangent cone at the lattice point `v`.
    pub fn tangent_cone(&self, v: &[i64]) -> Result<Cone> {
        if !self.contains(v) {
            return Err(Error::PointNotContained(v.to_vec()));
        }
        let active: Vec<Point> = self
            .facets
            .iter()
            .filter(|f| dd::dot(&f.normal, v) * self.den == f.offset)
            .map(|f| f.normal.clone())
            .collect();
        let eqs: Vec<Point> = self.equations.iter().map(|(a, _)| a.clone()).collect();
        Ok(Cone::from_halfspaces(&active, &eqs, self.ambient_dim))
    }

    /// Every vertex cone is simplicial and unimodular in the lattice of the
    /// affine hull. This is equivalent to all tangent cones being unimodular:
    /// a tangent cone at a non-vertex point is the vertex cone of a vertex of
    /// its minimal face plus the lineality of that face, hence generated by a
    /// subset of a unimodular basis modulo that lineality.
    pub fn is_unimodular(&self) -> bool {
        if !self.is_lattice() {
            return false;
        }
        if self.dim == 0 {
            return true;
        }
        (0..self.vertices.len()).all(|i| self.vertex_is_unimodular(i))
    }

    pub fn vertex_is_unimodular(&self, i: usize) -> bool {
        if !self.is_lattice() {
            return false;
        }
        let dirs = self.vertex_edge_directions(i);
        if dirs.len() != self.dim {
            return false;
        }
        let local: Vec<Point> = match &self.frame {
            None => dirs,
            Some(fr) => dirs.iter().map(|d| fr.local_dir(d)).collect(),
        };
        let m = Matrix::from_rows(local, self.dim);
        lattice::det(&m).abs() == 1
    }

    /// Vertex-index sets of all nonempty faces with their dimensions,
    /// including the polytope itself.
    pub fn face_sets(&self) -> Vec<(Bits, usize)> {
        let nv = self.vertices.len();
        let mut all = Bits::new(nv);
        for i in 0..nv {
            all.set(i);
        }
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut frontier: Vec<Bits> = self.incidence.clone();
        let mut faces: Vec<Bits> = Vec::new();
        seen.insert(all.clone());
        faces.push(all);
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in frontier {
                if f.count() == 0 || !seen.insert(f.clone()) {
                    continue;
                }
                for g in &self.incidence {
                    let h = f.and(g);
                    if h.count() > 0 && h != f && !seen.contains(&h) {
                        next.push(h);
                    }
                }
                faces.push(f);
            }
            frontier = next;
        }
        let mut out: Vec<(Bits, usize)> = faces
            .into_iter()
            .map(|f| {
                let idx: Vec<usize> = f.ones().collect();
                let d = affine_rank(&idx.iter().map(|&i| self.vertices[i].clone()).collect::<Vec<_>>());
                (f, d)
            })
            .collect();
        out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        out
    }

    /// Faces of dimension `d` as polytopes (lattice polytopes only).
    pub fn faces(&self, d: usize) -> Vec<Polytope> {
        self.face_sets()
            .into_iter()
            .filter(|(_, k)| *k == d)
            .map(|(f, _)| {
                let pts: Vec<Point> = f.ones().map(|i| self.vertices[i].clone()).collect();
                if self.den == 1 {
                    Polytope::from_vertices(&pts).unwrap()
                } else {
                    Polytope::from_rational(&pts, self.den).unwrap_or_else(|_| Polytope::from_vertices(&pts).unwrap())
                }
            })
            .collect()
    }

    /// Intersection with extra halfspaces `<n, x> >= b`; `None` when empty.
    pub fn intersect(&self, halfspaces: &[(Point, i64)]) -> Result<Option<Polytope>> {
        let mut cons = self.h_constraints();
        cons.extend(halfspaces.iter().cloned());
        match dd::h_to_v(&cons, self.ambient_dim) {
            Ok(h) => Ok(Some(Self::from_qpoints(&h.vertices)?)),
            Err(Error::Empty) => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn intersect_cone(&self, c: &Cone) -> Result<Option<Polytope>> {
        let mut hs: Vec<(Point, i64)> = c.halfspaces.iter().map(|h| (h.clone(), 0)).collect();
        for e in &c.equations {
            hs.push((e.clone(), 0));
            hs.push((e.iter().map(|x| -x).collect(), 0));
        }
        self.intersect(&hs)
    }

    /// Image under `x -> m x` for an invertible integer matrix `m`.
    pub fn transform(&self, m: &Matrix<i64>) -> Polytope {
        let pts: Vec<Point> = self.vertices.iter().map(|v| m.mul_vec(v)).collect();
        if self.den == 1 {
            Polytope::from_vertices(&pts).unwrap()
        } else {
            Polytope::from_rational(&pts, self.den).unwrap()
        }
    }

    pub fn translate(&self, t: &[i64]) -> Polytope {
        let pts: Vec<Point> =
            self.vertices.iter().map(|v| v.iter().zip(t).map(|(a, b)| a + b * self.den).collect()).collect();
        if self.den == 1 {
            Polytope::from_vertices(&pts).unwrap()
        } else {
            Polytope::from_rational(&pts, self.den).unwrap()
        }
    }

    pub fn dilate(&self, k: i64) -> Polytope {
        let pts: Vec<Point> = self.vertices.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
        if self.den == 1 {
            Polytope::from_vertices(&pts).unwrap()
        } else {
            Polytope::from_rational(&pts, self.den).unwrap()
        }
    }

    /// Min and max of `<w, x>` over the polytope (numerators over `den`).
    pub fn range_of(&self, w: &[i64]) -> (i64, i64) {
        let vals: Vec<i64> = self.vertices.iter().map(|v| dd::dot(w, v)).collect();
        (*vals.iter().min().unwrap(), *vals.iter().max().unwrap())
    }
}

pub fn affine_rank(pts: &[Point]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let d: Vec<Point> = pts[1..].iter().map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect();
    dd::independent_rows(&d, pts[0].len()).len()
}

fn bounding_box(pts: &[Point], den: i64, n: usize) -> (Point, Point) {
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for p in pts {
        for i in 0..n {
            lo[i] = lo[i].min(num_integer::Integer::div_ceil(&p[i], &den));
            hi[i] = hi[i].max(num_integer::Integer::div_floor(&p[i], &den));
        }
    }
    (lo, hi)
}

/// Calls `f` on every integer point of the box `[lo, hi]`.
pub fn for_each_in_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    let n = lo.len();
    if (0..n).any(|i| lo[i] > hi[i]) {
        return;
    }
    let mut x = lo.to_vec();
    loop {
        f(&x);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

/// Convenience constructors for fixtures.
pub mod shapes {
    use super::*;

    pub fn cube(n: usize) -> Polytope {
        let mut pts = Vec::new();
        for_each_in_box(&vec![-1; n], &vec![1; n], |x| {
            if x.iter().all(|c| c.abs() == 1) {
                pts.push(x.to_vec());
            }
        });
        Polytope::from_vertices(&pts).unwrap()
    }

    pub fn unit_cube(n: usize) -> Polytope {
        let mut pts = Vec::new();
        for_each_in_box(&vec![0; n], &vec![1; n], |x| pts.push(x.to_vec()));
        Polytope::from_vertices(&pts).unwrap()
    }

    pub fn cross_polytope(n: usize) -> Polytope {
        let mut pts = Vec::new();
        for i in 0..n {
            for s in [-1, 1] {
                let mut e = vec![0; n];
                e[i] = s;
                pts.push(e);
            }
        }
        Polytope::from_vertices(&pts).unwrap()
    }

    /// conv{0, e_1, ..., e_n}
    pub fn standard_simplex(n: usize) -> Polytope {
        let mut pts = vec![vec![0; n]];
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            pts.push(e);
        }
        Polytope::from_vertices(&pts).unwrap()
    }

    /// conv{e_1, ..., e_n, -sum e_i}
    pub fn fano_simplex(n: usize) -> Polytope {
        let mut pts = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            pts.push(e);
        }
        pts.push(vec![-1; n]);
        Polytope::from_vertices(&pts).unwrap()
    }

    pub fn hexagon() -> Polytope {
        Polytope::from_vertices(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1], vec![1, 1], vec![-1, -1]])
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;
    use crate::normal_form::{normal_form, Mode};

    fn sorted(mut v: Vec<Point>) -> Vec<Point> {
        v.sort();
        v
    }

    #[test]
    fn octahedron_h_rep() {
        let o = cross_polytope(3);
        assert_eq!(o.facets().len(), 8);
        assert!(o.facets().iter().all(|f| f.offset == -1 && f.normal.iter().all(|x| x.abs() == 1)));
    }

    #[test]
    fn cube_from_halfspaces() {
        let mut ineqs = Vec::new();
        for i in 0..3 {
            for s in [-1, 1] {
                let mut n = vec![0; 3];
                n[i] = s;
                ineqs.push((n, -1));
            }
        }
        let c = Polytope::from_halfspaces(&ineqs).unwrap();
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c, cube(3));
    }

    #[test]
    fn unbounded_rejected() {
        let r = Polytope::from_halfspaces(&[(vec![1, 0], 0), (vec![0, 1], 0), (vec![-1, 0], -1)]);
        assert_eq!(r.err(), Some(Error::Unbounded));
    }

    #[test]
    fn cube_octahedron_duality() {
        assert_eq!(cube(3).polar_dual().unwrap(), cross_polytope(3));
        assert_eq!(cross_polytope(3).polar_dual().unwrap(), cube(3));
    }

    #[test]
    fn simplex_dual_involution() {
        let s = fano_simplex(3);
        let d = s.polar_dual().unwrap();
        assert_eq!(d.vertices().len(), 4);
        assert_eq!(d.polar_dual().unwrap(), s);
    }

    #[test]
    fn hexagon_self_dual() {
        let h = hexagon();
        assert!(h.is_reflexive());
        let d = h.polar_dual().unwrap();
        assert_eq!(normal_form(&d, Mode::Linear).unwrap(), normal_form(&h, Mode::Linear).unwrap());
    }

    #[test]
    fn non_reflexive_dual_is_rational() {
        let t = Polytope::from_vertices(&[vec![-1, 0], vec![1, 0], vec![0, 2], vec![0, -1]]).unwrap();
        assert!(t.origin_is_interior());
        let d = t.polar_dual().unwrap();
        assert!(!d.is_lattice());
        assert_eq!(d.polar_dual().unwrap(), t);
        assert!(!t.is_reflexive() && !d.is_reflexive());
    }

    #[test]
    fn cube_points() {
        let c = cube(3);
        assert!(c.is_reflexive());
        assert_eq!(c.lattice_points().len(), 27);
        assert_eq!(c.interior_lattice_points(), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn doubled_triangle_is_hollow() {
        let t = Polytope::from_vertices(&[vec![0, 0], vec![2, 0], vec![0, 2]]).unwrap();
        assert!(t.is_hollow());
        assert_eq!(t.lattice_points().len(), 6);
        // dilation keeps every vertex cone unimodular
        assert!(t.is_unimodular());
    }

    #[test]
    fn tangent_cones() {
        let c = cube(3);
        let t = c.tangent_cone(&[1, 1, 1]).unwrap();
        assert_eq!(sorted(t.generators.clone()), vec![vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]);
        let f = c.tangent_cone(&[1, 0, 0]).unwrap();
        assert_eq!(f.lineality.len(), 2);
        assert_eq!(f.halfspaces, vec![vec![-1, 0, 0]]);
        let s = Polytope::from_vertices(&[vec![1, 0], vec![0, 1], vec![-1, -2]]).unwrap();
        let t = s.tangent_cone(&[-1, -2]).unwrap();
        assert_eq!(t.generators, vec![vec![1, 1], vec![1, 3]]);
        assert!(c.tangent_cone(&[2, 0, 0]).is_err());
    }

    #[test]
    fn unimodularity() {
        assert!(unit_cube(3).is_unimodular());
        assert!(standard_simplex(3).is_unimodular());
        let p = Polytope::from_vertices(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]]).unwrap();
        assert!(!p.is_unimodular());
        // lower-dimensional: a unimodular triangle in a slanted plane
        let q = Polytope::from_vertices(&[vec![0, 0, 0], vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.is_unimodular());
        let r = Polytope::from_vertices(&[vec![0, 0, 0], vec![1, 0, 0], vec![1, 2, 0]]).unwrap();
        assert!(!r.is_unimodular());
    }

    #[test]
    fn faces_of_cube() {
        let c = cube(3);
        assert_eq!(c.faces(0).len(), 8);
        assert_eq!(c.faces(1).len(), 12);
        assert_eq!(c.faces(2).len(), 6);
        assert_eq!(c.faces(3).len(), 1);
    }

    #[test]
    fn intersections() {
        let c = cube(3);
        let half = c.intersect(&[(vec![1, 0, 0], 0)]).unwrap().unwrap();
        let mut box_pts = Vec::new();
        for_each_in_box(&[0, -1, -1], &[1, 1, 1], |x| box_pts.push(x.to_vec()));
        assert_eq!(half, Polytope::from_vertices(&box_pts).unwrap());
        let o = cross_polytope(3);
        let pos = o.intersect(&[(vec![1, 0, 0], 0), (vec![0, 1, 0], 0), (vec![0, 0, 1], 0)]).unwrap().unwrap();
        assert_eq!(pos, standard_simplex(3));
        assert!(c.intersect(&[(vec![1, 0, 0], 5)]).unwrap().is_none());
        assert_eq!(c.intersect(&[(vec![1, 0, 0], -7)]).unwrap().unwrap(), c);
    }

    #[test]
    fn lower_dim_lattice_points() {
        let seg = Polytope::from_vertices(&[vec![0, 0, 0], vec![2, 4, 6]]).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.lattice_points().len(), 3);
        assert_eq!(seg.interior_lattice_points(), vec![vec![1, 2, 3]]);
    }
}
