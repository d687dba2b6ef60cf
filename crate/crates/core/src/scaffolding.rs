//! Struts, scaffoldings, the ambient polytope `Q_S` with its normal fan, the
//! lattice map `theta`, fullness, and mutation admissibility.
//!
//! Coordinates: the scaffolded polytope lives in `N = N_bar ⊕ N_U` with the
//! shape coordinates first. Its polar dual (the cracked polytope) lives in `M`
//! and is cracked along the shape fan promoted by `dim N_U`.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::cracked;
use crate::dd;
use crate::error::{Error, Result};
use crate::fan::{self, normal_fan, promote, Fan, ShapeFan};
use crate::lattice::{self, Matrix};
use crate::polytope::{Point, Polytope};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strut {
    /// Coefficients on the rays of the shape fan, in its frozen order.
    pub divisor: Vec<i64>,
    /// Offset in `N_U`.
    #[serde(default)]
    pub chi: Vec<i64>,
}

impl Strut {
    pub fn new(divisor: Vec<i64>, chi: Vec<i64>) -> Strut {
        Strut { divisor, chi }
    }

    fn is_basis_candidate(&self) -> bool {
        self.divisor.iter().all(|&d| d == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scaffolding {
    pub shape: ShapeFan,
    /// `dim N_U`; `dim N_bar` is the shape dimension.
    pub unipotent_dim: usize,
    pub struts: Vec<Strut>,
    pub target: Polytope,
}

/// On-disk description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaffoldingFile {
    #[serde(default = "one")]
    pub schema_version: u32,
    pub shape: String,
    /// Explicit shape fan, overriding the label lookup.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape_fan: Option<ShapeFan>,
    /// `[dim N_bar, dim N_U]`
    pub split: [usize; 2],
    pub struts: Vec<Strut>,
    /// Target vertices; the hull of the struts when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<Point>>,
}

fn one() -> u32 {
    1
}

impl Scaffolding {
    /// A scaffolding whose target is the hull of its struts.
    pub fn from_struts(shape: ShapeFan, unipotent_dim: usize, struts: Vec<Strut>) -> Result<Scaffolding> {
        let mut pts = Vec::new();
        for s in &struts {
            match strut_polytope(&shape, unipotent_dim, s)? {
                Some(p) => pts.extend(p.vertices().iter().cloned()),
                None => return Err(Error::NotAPolytope("empty strut polytope".into())),
            }
        }
        let target = Polytope::from_vertices(&pts)?;
        Ok(Scaffolding { shape, unipotent_dim, struts, target })
    }

    pub fn with_target(shape: ShapeFan, unipotent_dim: usize, struts: Vec<Strut>, target: Polytope) -> Scaffolding {
        Scaffolding { shape, unipotent_dim, struts, target }
    }

    pub fn dim(&self) -> usize {
        self.shape.dim() + self.unipotent_dim
    }

    /// The fan in `M` along which the dual of the target should be cracked.
    pub fn cracking_fan(&self) -> Fan {
        promote(&self.shape.fan, self.unipotent_dim)
    }

    pub fn strut_polytopes(&self) -> Result<Vec<Option<Polytope>>> {
        self.struts.iter().map(|s| strut_polytope(&self.shape, self.unipotent_dim, s)).collect()
    }

    pub fn from_file(f: &ScaffoldingFile) -> Result<Scaffolding> {
        let shape = match &f.shape_fan {
            Some(s) => s.clone(),
            None => fan::shape(&f.shape)?,
        };
        if shape.dim() != f.split[0] {
            return Err(Error::Dimension(format!("shape has dimension {}, split says {}", shape.dim(), f.split[0])));
        }
        for s in &f.struts {
            if s.divisor.len() != shape.num_rays() || s.chi.len() != f.split[1] {
                return Err(Error::Dimension("strut length does not match the shape or split".into()));
            }
        }
        match &f.target {
            Some(t) => Ok(Scaffolding::with_target(shape, f.split[1], f.struts.clone(), Polytope::from_vertices(t)?)),
            None => Scaffolding::from_struts(shape, f.split[1], f.struts.clone()),
        }
    }

    pub fn to_file(&self) -> ScaffoldingFile {
        let builtin = fan::shape(&self.shape.label).ok();
        ScaffoldingFile {
            schema_version: 1,
            shape: self.shape.label.clone(),
            shape_fan: if builtin.as_ref() == Some(&self.shape) { None } else { Some(self.shape.clone()) },
            split: [self.shape.dim(), self.unipotent_dim],
            struts: self.struts.clone(),
            target: Some(self.target.vertices().to_vec()),
        }
    }

    pub fn from_json(s: &str) -> Result<Scaffolding> {
        let f: ScaffoldingFile =
            serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        Scaffolding::from_file(&f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).unwrap()
    }
}

/// `P_D = {m : <m, v_rho> >= -d_rho}`; `None` when empty.
pub fn polyhedron_of_sections(z: &ShapeFan, d: &[i64]) -> Result<Option<Polytope>> {
    if d.len() != z.num_rays() {
        return Err(Error::Dimension(format!("divisor has {} entries, shape has {} rays", d.len(), z.num_rays())));
    }
    let ineqs: Vec<(Point, i64)> = z.rays().iter().zip(d).map(|(v, &c)| (v.clone(), -c)).collect();
    match Polytope::from_halfspaces(&ineqs) {
        Ok(p) => Ok(Some(p)),
        Err(Error::Empty) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `P_D + chi` inside `N`.
pub fn strut_polytope(z: &ShapeFan, unipotent_dim: usize, s: &Strut) -> Result<Option<Polytope>> {
    if s.chi.len() != unipotent_dim {
        return Err(Error::Dimension("chi has the wrong length".into()));
    }
    let Some(pd) = polyhedron_of_sections(z, &s.divisor)? else { return Ok(None) };
    if !pd.is_lattice() {
        return Err(Error::NonLattice);
    }
    let pts: Vec<Point> = pd
        .vertices()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.extend(s.chi.iter().copied());
            w
        })
        .collect();
    Polytope::from_vertices(&pts).map(Some)
}

/// Vertex `m_sigma` of the support function on a smooth maximal cone.
fn cone_vertex(z: &ShapeFan, cone: &[usize], d: &[i64]) -> Point {
    let n = z.dim();
    let v = Matrix::from_rows(cone.iter().map(|&j| z.rays()[j].clone()).collect(), n);
    let inv = lattice::inverse_unimodular(&v).expect("shape fan is unimodular");
    let rhs: Vec<i64> = cone.iter().map(|&j| -d[j]).collect();
    inv.mul_vec(&rhs)
}

/// Convexity of the support function of `d` on a complete unimodular fan.
pub fn is_nef(z: &ShapeFan, d: &[i64]) -> bool {
    z.fan.cones.iter().all(|c| {
        let m = cone_vertex(z, c, d);
        z.rays().iter().zip(d).all(|(v, &dv)| dd::dot(&m, v) >= -dv)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    NotNef { strut: usize },
    EmptyStrut { strut: usize },
    StrutDimension { strut: usize },
    /// Vertices of the target that are not vertices of the hull of the
    /// struts, and vice versa.
    HullMismatch { missing: Vec<Point>, extra: Vec<Point> },
    VertexUncovered { vertex: Point },
    VertexMultiplyCovered { vertex: Point, struts: Vec<usize> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(s: &Scaffolding) -> ValidationReport {
    let mut violations = Vec::new();
    let mut polys: Vec<Option<Polytope>> = Vec::new();
    for (i, st) in s.struts.iter().enumerate() {
        if st.divisor.len() != s.shape.num_rays() || st.chi.len() != s.unipotent_dim {
            violations.push(Violation::StrutDimension { strut: i });
            polys.push(None);
            continue;
        }
        if !is_nef(&s.shape, &st.divisor) {
            violations.push(Violation::NotNef { strut: i });
        }
        match strut_polytope(&s.shape, s.unipotent_dim, st) {
            Ok(Some(p)) => polys.push(Some(p)),
            _ => {
                violations.push(Violation::EmptyStrut { strut: i });
                polys.push(None);
            }
        }
    }
    let pts: Vec<Point> = polys.iter().flatten().flat_map(|p| p.vertices().iter().cloned()).collect();
    let hull_verts: Vec<Point> = Polytope::from_vertices(&pts).map(|h| h.vertices().to_vec()).unwrap_or_default();
    let target_verts = s.target.vertices();
    let missing: Vec<Point> = target_verts.iter().filter(|v| !hull_verts.contains(v)).cloned().collect();
    let extra: Vec<Point> = hull_verts.iter().filter(|v| !target_verts.contains(v)).cloned().collect();
    if !missing.is_empty() || !extra.is_empty() {
        violations.push(Violation::HullMismatch { missing, extra });
    }
    for v in target_verts {
        let covering: Vec<usize> =
            polys.iter().enumerate().filter(|(_, p)| p.as_ref().is_some_and(|p| p.contains(v))).map(|(i, _)| i).collect();
        match covering.len() {
            0 => violations.push(Violation::VertexUncovered { vertex: v.clone() }),
            1 => {}
            _ => violations.push(Violation::VertexMultiplyCovered { vertex: v.clone(), struts: covering }),
        }
    }
    ValidationReport { violations }
}

/// Columns of the ray matrix (and of the weight matrix), in block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Column {
    /// A strut not used for the `N_U` basis.
    Strut(usize),
    /// A strut `(0, b)` used for the `N_U` basis.
    Basis(usize),
    /// A torus-invariant divisor of the shape.
    Axis(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientPresentation {
    pub q_s: Polytope,
    pub sigma_s: Fan,
    /// `(l + dim N_U) x columns`; columns `(-D, chi)`, `(0, b)`, `(e_k, 0)`.
    pub ray_matrix: Matrix<i64>,
    pub columns: Vec<Column>,
    /// `N -> Div(Z) ⊕ N_U`, the map `rho^* ⊕ Id`.
    pub theta: Matrix<i64>,
}

/// Picks the struts `(0, b)` whose `b` form a lattice basis of `N_U`.
pub(crate) fn basis_struts(s: &Scaffolding) -> Result<Vec<usize>> {
    let u = s.unipotent_dim;
    if u == 0 {
        return Ok(Vec::new());
    }
    let cands: Vec<usize> = (0..s.struts.len()).filter(|&i| s.struts[i].is_basis_candidate()).collect();
    for combo in cands.iter().copied().combinations(u) {
        let m = Matrix::from_rows(combo.iter().map(|&i| s.struts[i].chi.clone()).collect(), u);
        if lattice::det(&m).abs() == 1 {
            return Ok(combo);
        }
    }
    Err(Error::BasisCondition)
}

pub(crate) fn column_order(s: &Scaffolding) -> Result<Vec<Column>> {
    let basis = basis_struts(s)?;
    let mut cols: Vec<Column> = (0..s.struts.len()).filter(|i| !basis.contains(i)).map(Column::Strut).collect();
    cols.extend(basis.iter().map(|&i| Column::Basis(i)));
    cols.extend((0..s.shape.num_rays()).map(Column::Axis));
    Ok(cols)
}

pub(crate) fn column_vector(s: &Scaffolding, c: Column) -> Point {
    let l = s.shape.num_rays();
    let mut v = vec![0; l + s.unipotent_dim];
    match c {
        Column::Strut(i) | Column::Basis(i) => {
            let st = &s.struts[i];
            for (k, d) in st.divisor.iter().enumerate() {
                v[k] = -d;
            }
            for (j, x) in st.chi.iter().enumerate() {
                v[l + j] = *x;
            }
        }
        Column::Axis(k) => v[k] = 1,
    }
    v
}

pub fn theta(s: &Scaffolding) -> Matrix<i64> {
    let nb = s.shape.dim();
    let u = s.unipotent_dim;
    let l = s.shape.num_rays();
    let mut t = Matrix::<i64>::zeros(l + u, nb + u);
    for (k, v) in s.shape.rays().iter().enumerate() {
        for i in 0..nb {
            t[(k, i)] = v[i];
        }
    }
    for j in 0..u {
        t[(l + j, nb + j)] = 1;
    }
    t
}

pub fn build_ambient(s: &Scaffolding) -> Result<AmbientPresentation> {
    let l = s.shape.num_rays();
    let dim = l + s.unipotent_dim;
    let columns = column_order(s)?;
    let mut ineqs: Vec<(Point, i64)> = s.struts.iter().enumerate().map(|(i, _)| (column_vector(s, Column::Strut(i)), -1)).collect();
    for k in 0..l {
        ineqs.push((column_vector(s, Column::Axis(k)), 0));
    }
    let q_s = match Polytope::from_halfspaces(&ineqs) {
        Ok(q) => q,
        Err(Error::Unbounded) => return Err(Error::NotAPolytope("scaffolding does not define a polytope".into())),
        Err(e) => return Err(e),
    };
    if q_s.dim() != dim {
        return Err(Error::NotAPolytope("scaffolding does not define a full-dimensional polytope".into()));
    }
    let sigma_s = normal_fan(&q_s)?;
    let mut ray_matrix = Matrix::<i64>::zeros(dim, columns.len());
    for (j, &c) in columns.iter().enumerate() {
        for (i, x) in column_vector(s, c).into_iter().enumerate() {
            ray_matrix[(i, j)] = x;
        }
    }
    Ok(AmbientPresentation { q_s, sigma_s, ray_matrix, columns, theta: theta(s) })
}

/// Whether some point of the relative interior of `cone(gens)` lies in the
/// subspace cut out by `eqs`.
fn relint_meets(gens: &[Point], eqs: &[Point]) -> bool {
    if gens.is_empty() {
        return true;
    }
    let ys: Vec<Point> = gens.iter().map(|g| eqs.iter().map(|e| dd::dot(e, g)).collect()).collect();
    if ys.iter().all(|y| y.iter().all(|&x| x == 0)) {
        return true;
    }
    // a strictly positive relation exists iff the generated cone is linear
    let k = eqs.len();
    Cone::from_generators(&ys, &[], k).halfspaces.is_empty()
}

/// Smoothness of the ambient toric variety along the image of `theta`: every
/// cone of `Sigma_S` whose relative interior meets the image is unimodular.
pub fn smooth_near_image(s: &Scaffolding) -> Result<bool> {
    let amb = build_ambient(s)?;
    let eqs = lattice::kernel_basis(&amb.theta.transpose()).to_rows();
    let f = &amb.sigma_s;
    for c in f.all_cones() {
        let gens: Vec<Point> = c.iter().map(|&j| f.generators[j].clone()).collect();
        if relint_meets(&gens, &eqs) && !f.cone_of(&c).is_unimodular() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Faces of the target treated as vertical: faces of the Cayley factors of
/// each facet. For a facet `F` with dual vertex in the relative interior of
/// the cone `sigma`, the factors are the faces of `F` minimizing the rays of
/// `sigma` (modulo the minimal cone); `F` itself when `sigma` is minimal.
pub fn vertical_faces(s: &Scaffolding) -> Vec<BTreeSet<usize>> {
    let p = &s.target;
    let nb = s.shape.dim();
    let faces = p.face_sets();
    let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for (fi, facet) in p.facets().iter().enumerate() {
        let fverts: BTreeSet<usize> = p.facet_vertices(fi).into_iter().collect();
        let nbar: Point = facet.normal[..nb].to_vec();
        let cones = s.shape.fan.locate(&nbar);
        let sigma: Vec<usize> = if nbar.iter().all(|&x| x == 0) {
            Vec::new()
        } else {
            cones
                .iter()
                .map(|&ci| s.shape.fan.cones[ci].iter().copied().collect::<BTreeSet<usize>>())
                .reduce(|a, b| a.intersection(&b).copied().collect())
                .unwrap_or_default()
                .into_iter()
                .collect()
        };
        let mut factors: Vec<BTreeSet<usize>> = Vec::new();
        if sigma.is_empty() {
            factors.push(fverts.clone());
        }
        for &j in &sigma {
            let v = &s.shape.rays()[j];
            let val = |i: usize| dd::dot(&p.vertices()[i][..nb], v);
            let mn = fverts.iter().map(|&i| val(i)).min().unwrap();
            factors.push(fverts.iter().copied().filter(|&i| val(i) == mn).collect());
        }
        for fac in factors {
            for (f, _) in &faces {
                let fs: BTreeSet<usize> = f.ones().collect();
                if !fs.is_empty() && fs.is_subset(&fac) {
                    out.insert(fs);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Every vertical face lies in exactly one strut polytope.
pub fn is_full(s: &Scaffolding) -> Result<bool> {
    let polys = s.strut_polytopes()?;
    let verts = s.target.vertices();
    for f in vertical_faces(s) {
        let n = polys
            .iter()
            .filter(|p| p.as_ref().is_some_and(|p| f.iter().all(|&i| p.contains(&verts[i]))))
            .count();
        if n != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessCheck {
    pub cracked: bool,
    pub full: bool,
    pub smooth: bool,
}

impl SmoothnessCheck {
    pub fn consistent(&self) -> bool {
        (self.cracked && self.full) == self.smooth
    }
}

/// Both sides of the smoothness criterion; a disagreement is a defect.
pub fn smoothness_check(s: &Scaffolding) -> Result<SmoothnessCheck> {
    let dual = s.target.polar_dual()?;
    let cracked = cracked::is_cracked(&dual, &s.cracking_fan())?.verdict;
    let full = is_full(s)?;
    let smooth = smooth_near_image(s)?;
    let c = SmoothnessCheck { cracked, full, smooth };
    if !c.consistent() {
        return Err(Error::Defect(format!("cracked={cracked} full={full} but smooth={smooth}")));
    }
    Ok(c)
}

fn check_factor(w: &[i64], factor: &Polytope) -> Result<()> {
    if factor.ambient_dim() != w.len() || factor.vertices().iter().any(|f| dd::dot(w, f) != 0) {
        return Err(Error::FactorNotOrthogonal);
    }
    Ok(())
}

/// Every slice `P ∩ {<w, x> = a}` with `a < 0` contains a lattice translate
/// of `-a * factor`.
pub fn admits_mutation(p: &Polytope, w: &[i64], factor: &Polytope) -> Result<bool> {
    check_factor(w, factor)?;
    let (lo, _) = p.range_of(w);
    let pts = p.lattice_points();
    let f0 = &factor.vertices()[0];
    for a in lo..0 {
        let k = -a;
        let found = pts.iter().filter(|y| dd::dot(w, y) == a).any(|y| {
            let t: Point = y.iter().zip(f0).map(|(yi, fi)| yi - k * fi).collect();
            factor.vertices().iter().all(|f| {
                let q: Point = t.iter().zip(f).map(|(ti, fi)| ti + k * fi).collect();
                p.contains(&q)
            })
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive variant: every translation vector in a bounding box, every
/// lattice point of the dilated factor.
pub fn admits_mutation_brute_force(p: &Polytope, w: &[i64], factor: &Polytope) -> Result<bool> {
    check_factor(w, factor)?;
    let n = p.ambient_dim();
    let (lo, _) = p.range_of(w);
    let fpts = factor.lattice_points();
    let (bl, bh): (Vec<i64>, Vec<i64>) = (0..n)
        .map(|i| {
            let e = crate::cone::unit(n, i);
            let (a, b) = p.range_of(&e);
            let (c, d) = factor.range_of(&e);
            let span = (c.abs().max(d.abs())) * (-lo).max(0);
            (a - span, b + span)
        })
        .unzip();
    for a in lo..0 {
        let k = -a;
        let mut ok = false;
        crate::polytope::for_each_in_box(&bl, &bh, |t| {
            if ok || dd::dot(w, t) != a {
                return;
            }
            if fpts.iter().all(|f| {
                let q: Point = t.iter().zip(f).map(|(ti, fi)| ti + k * fi).collect();
                p.contains(&q)
            }) {
                ok = true;
            }
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn scaffolding_mutable(s: &Scaffolding, w: &[i64], factor: &Polytope) -> Result<bool> {
    for p in s.strut_polytopes()?.into_iter().flatten() {
        if !admits_mutation(&p, w, factor)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scaffolding of `conv{Q, ±e}` (new coordinate after the shape coordinates)
/// with shape `Z' x P^1`.
pub fn product_scaffolding(s2d: &Scaffolding) -> Result<Scaffolding> {
    let p1 = fan::projective_space(1);
    let shape = fan::product(&s2d.shape, &p1);
    let mut struts: Vec<Strut> = s2d
        .struts
        .iter()
        .map(|s| {
            let mut d = s.divisor.clone();
            d.extend([0, 0]);
            Strut::new(d, s.chi.clone())
        })
        .collect();
    let mut d = vec![0; s2d.shape.num_rays()];
    d.extend([1, 1]);
    struts.push(Strut::new(d, vec![0; s2d.unipotent_dim]));
    let nb = s2d.shape.dim();
    let mut pts: Vec<Point> = s2d
        .target
        .vertices()
        .iter()
        .map(|v| {
            let mut w = v[..nb].to_vec();
            w.push(0);
            w.extend_from_slice(&v[nb..]);
            w
        })
        .collect();
    for sign in [1, -1] {
        let mut e = vec![0; nb + 1 + s2d.unipotent_dim];
        e[nb] = sign;
        pts.push(e);
    }
    Ok(Scaffolding::with_target(shape, s2d.unipotent_dim, struts, Polytope::from_vertices(&pts)?))
}

/// Built-in scaffoldings used as fixtures.
pub mod fixtures {
    use super::*;
    use crate::polytope::shapes;

    /// The hexagon with two struts on `P^1 x P^1`.
    pub fn dp6() -> Scaffolding {
        let shape = fan::shape("P1xP1").unwrap();
        let struts = vec![Strut::new(vec![1, 0, 1, 0], vec![]), Strut::new(vec![0, 1, 0, 1], vec![])];
        Scaffolding::with_target(shape, 0, struts, shapes::hexagon())
    }

    /// `{(0, e_1), ..., (0, e_u), (-K_Z, (-1, ..., -1))}` on a shape of
    /// dimension `3 - u`.
    pub fn boundary_with_units(label: &str) -> Result<Scaffolding> {
        let shape = fan::shape(label)?;
        let u = 3 - shape.dim();
        let mut struts: Vec<Strut> = (0..u)
            .map(|j| {
                let mut chi = vec![0; u];
                chi[j] = 1;
                Strut::new(vec![0; shape.num_rays()], chi)
            })
            .collect();
        struts.push(Strut::new(vec![1; shape.num_rays()], vec![-1; u]));
        Scaffolding::from_struts(shape, u, struts)
    }

    /// Shape `P^1`, three-dimensional: the quadric threefold.
    pub fn quadric() -> Scaffolding {
        boundary_with_units("P1").unwrap()
    }

    /// `{(0, 1), (D_0 + D_1 + 2 D_2, -1)}` on `P^2`.
    pub fn b2() -> Scaffolding {
        let shape = fan::shape("P2").unwrap();
        // rays e1, e2, -e1-e2 carry D_1, D_2, D_0
        let struts = vec![Strut::new(vec![0, 0, 0], vec![1]), Strut::new(vec![1, 2, 1], vec![-1])];
        Scaffolding::from_struts(shape, 1, struts).unwrap()
    }

    /// `{(D_1 + D_2, 0), (D_0 + D_2, -1)}` on `P^2` with the `N_U` basis strut.
    pub fn mm_2_18() -> Scaffolding {
        let shape = fan::shape("P2").unwrap();
        // D_0 <-> -e1-e2 (index 2), D_1 <-> e1 (0), D_2 <-> e2 (1)
        let struts = vec![
            Strut::new(vec![1, 1, 0], vec![0]),
            Strut::new(vec![0, 1, 1], vec![-1]),
            Strut::new(vec![0, 0, 0], vec![1]),
        ];
        Scaffolding::from_struts(shape, 1, struts).unwrap()
    }

    /// A single anti-canonical strut on the normal fan of a unimodular
    /// reflexive polytope (the fan is then smooth and equals the shape).
    pub fn anticanonical(p: &Polytope) -> Result<Scaffolding> {
        let f = normal_fan(p)?;
        if !f.is_unimodular() {
            return Err(Error::InvalidParameters("normal fan is not unimodular".into()));
        }
        let l = f.generators.len();
        let shape = ShapeFan { label: "normal-fan".into(), fan: f, factors: None };
        Ok(Scaffolding::with_target(shape, 0, vec![Strut::new(vec![1; l], vec![])], p.clone()))
    }
}
