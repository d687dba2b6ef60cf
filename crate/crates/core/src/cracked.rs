//! Polytopes cracked along a fan, the search for polytopes cracked in half,
//! and wrapping polyhedra.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dd::{self, QPoint};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{self, Matrix};
use crate::normal_form::{normal_form, Mode, NormalFormKey};
use crate::polytope::{Point, Polytope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeEvidence {
    Unimodular,
    /// A vertex of `P ∩ C` (numerator / denominator) whose tangent cone is not
    /// unimodular; non-lattice vertices are always offending.
    Offending { vertex: Point, den: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrackedReport {
    pub key: Option<NormalFormKey>,
    pub verdict: bool,
    /// One entry per maximal cone of the fan, in order.
    pub evidence: Vec<ConeEvidence>,
    /// Vertices of `P` whose tangent cone in `P` is not unimodular.
    pub non_unimodular_vertices: Vec<Point>,
    /// Basis of the span of `non_unimodular_vertices`.
    pub v_p: Vec<Point>,
}

/// Vertices of `p` with non-unimodular tangent cone.
pub fn non_unimodular_vertices(p: &Polytope) -> Vec<Point> {
    (0..p.vertices().len()).filter(|&i| !p.vertex_is_unimodular(i)).map(|i| p.vertices()[i].clone()).collect()
}

/// Saturated basis of the linear span of the given vectors.
pub fn span_basis(vs: &[Point], n: usize) -> Vec<Point> {
    if vs.is_empty() {
        return Vec::new();
    }
    lattice::saturated_row_span(&Matrix::from_rows(vs.to_vec(), n)).to_rows()
}

fn cone_piece_evidence(p: &Polytope, fan: &Fan, ci: usize) -> Result<ConeEvidence> {
    let c = fan.cone(ci);
    let mut cons = p.h_constraints();
    cons.extend(c.halfspaces.iter().map(|h| (h.clone(), 0)));
    for e in &c.equations {
        cons.push((e.clone(), 0));
        cons.push((e.iter().map(|x| -x).collect(), 0));
    }
    let h = dd::h_to_v(&cons, p.ambient_dim())?;
    if let Some(q) = h.vertices.iter().find(|q| !q.is_integral()) {
        return Ok(ConeEvidence::Offending { vertex: q.num.clone(), den: q.den });
    }
    let piece = Polytope::from_vertices(&h.vertices.iter().map(|q| q.num.clone()).collect::<Vec<_>>())?;
    for (i, v) in piece.vertices().iter().enumerate() {
        if !piece.vertex_is_unimodular(i) {
            return Ok(ConeEvidence::Offending { vertex: v.clone(), den: 1 });
        }
    }
    Ok(ConeEvidence::Unimodular)
}

/// Pieces `P ∩ C` for the maximal cones `C` of the fan (lattice polytopes
/// only; `None` for a cone whose piece has non-integral vertices).
pub fn pieces_along(p: &Polytope, fan: &Fan) -> Result<Vec<Option<Polytope>>> {
    (0..fan.cones.len())
        .map(|ci| {
            let h = {
                let c = fan.cone(ci);
                let mut cons = p.h_constraints();
                cons.extend(c.halfspaces.iter().map(|h| (h.clone(), 0)));
                dd::h_to_v(&cons, p.ambient_dim())?
            };
            if h.vertices.iter().all(QPoint::is_integral) {
                Ok(Some(Polytope::from_vertices(&h.vertices.iter().map(|q| q.num.clone()).collect::<Vec<_>>())?))
            } else {
                Ok(None)
            }
        })
        .collect()
}

/// Whether every tangent cone of `P ∩ C` is unimodular for every maximal cone
/// `C` of `fan`.
pub fn is_cracked(p: &Polytope, fan: &Fan) -> Result<CrackedReport> {
    if !p.origin_is_interior() {
        return Err(Error::OriginNotInterior);
    }
    if fan.ambient_dim != p.ambient_dim() {
        return Err(Error::Dimension("fan and polytope dimensions differ".into()));
    }
    if !fan.is_complete() {
        return Err(Error::IncompleteFan);
    }
    let evidence: Vec<ConeEvidence> =
        (0..fan.cones.len()).map(|ci| cone_piece_evidence(p, fan, ci)).collect::<Result<_>>()?;
    let verdict = evidence.iter().all(|e| *e == ConeEvidence::Unimodular);
    let nu = if p.is_lattice() { non_unimodular_vertices(p) } else { Vec::new() };
    let v_p = span_basis(&nu, p.ambient_dim());
    let key = normal_form(p, Mode::Linear).ok();
    Ok(CrackedReport { key, verdict, evidence, non_unimodular_vertices: nu, v_p })
}

/// The generalized fan `{<w, x> >= 0} ∪ {<w, x> <= 0}` (a promoted `P^1` fan
/// splitting along `w^⊥`).
pub fn halfspace_fan(w: &[i64]) -> Fan {
    let n = w.len();
    let w = dd::primitive(w);
    let lineality = lattice::kernel_basis(&Matrix::from_rows(vec![w.clone()], n)).to_rows();
    // u with <w, u> = 1
    let u = lattice::right_inverse(&Matrix::from_rows(vec![w.clone()], n)).expect("w is primitive").column(0);
    let neg: Point = u.iter().map(|x| -x).collect();
    Fan::new(n, vec![u, neg], vec![vec![0], vec![1]], lineality).expect("valid halfspace fan")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub id: usize,
    pub candidate: bool,
    pub cracked: bool,
    pub dim_v_p: usize,
    /// Splitting directions tested (elements of the dual lattice, up to sign).
    pub directions: Vec<Point>,
    /// The subset of `directions` along which the polytope is cracked.
    pub cracked_directions: Vec<Point>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub total: usize,
    pub candidates: usize,
    pub cracked: usize,
    pub dim_v_p_2: usize,
}

impl SearchSummary {
    pub fn of(rows: &[SearchRow]) -> Self {
        SearchSummary {
            total: rows.len(),
            candidates: rows.iter().filter(|r| r.candidate).count(),
            cracked: rows.iter().filter(|r| r.cracked).count(),
            dim_v_p_2: rows.iter().filter(|r| r.candidate && r.dim_v_p == 2).count(),
        }
    }

    pub fn line(&self) -> String {
        format!("candidates={} cracked={} dimVP2={}", self.candidates, self.cracked, self.dim_v_p_2)
    }
}

/// Primitive `w` (one per sign pair) with `|<w, v>| <= 1` for every vertex `v`.
pub fn bounded_directions(p: &Polytope) -> Vec<Point> {
    let mut ineqs = Vec::new();
    for v in p.vertices() {
        ineqs.push((v.clone(), -1));
        ineqs.push((v.iter().map(|x| -x).collect(), -1));
    }
    let box_ = Polytope::from_halfspaces(&ineqs).expect("vertices span");
    let mut out: Vec<Point> = box_
        .lattice_points()
        .into_iter()
        .filter(|w| w.iter().any(|&x| x != 0) && lattice::is_primitive(w))
        .filter(|w| w.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .collect();
    out.sort();
    out
}

/// Every primitive `w` (one per sign pair) orthogonal to `v_p` whose
/// hyperplane is spanned by lattice points of `p`. If `p` is cracked along
/// `w^⊥` the section is a lattice polytope with the origin inside, so its
/// vertices span the hyperplane; this list is therefore complete.
pub fn section_directions(p: &Polytope, v_p: &[Point]) -> Vec<Point> {
    use itertools::Itertools;
    let n = p.ambient_dim();
    let pts: Vec<Point> = p.lattice_points().into_iter().filter(|x| x.iter().any(|&c| c != 0)).collect();
    let mut out: Vec<Point> = pts
        .iter()
        .combinations(n - 1)
        .filter_map(|sel| {
            let k = lattice::kernel_basis(&Matrix::from_rows(sel.into_iter().cloned().collect(), n));
            (k.nrows() == 1).then(|| k.row(0).to_vec())
        })
        .map(|w| {
            let w = dd::primitive(&w);
            if w.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) { w.iter().map(|x| -x).collect() } else { w }
        })
        .filter(|w| v_p.iter().all(|v| dd::dot(w, v) == 0))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Whether some facet of the polar dual has a lattice point in its relative
/// interior.
pub fn dual_facet_has_interior_point(p: &Polytope) -> Result<bool> {
    let d = p.polar_dual()?;
    Ok(d.faces(d.dim() - 1).iter().any(|f| !f.interior_lattice_points().is_empty()))
}

/// One row of the cracked-in-half search for a reflexive 3-tope.
pub fn search_row(id: usize, p: &Polytope) -> Result<SearchRow> {
    let n = p.ambient_dim();
    let nu = non_unimodular_vertices(p);
    let v_p = span_basis(&nu, n);
    let dim_v_p = v_p.len();
    let candidate = dim_v_p < n && !dual_facet_has_interior_point(p)?;
    let mut row = SearchRow { id, candidate, cracked: false, dim_v_p, directions: Vec::new(), cracked_directions: Vec::new() };
    if !candidate {
        return Ok(row);
    }
    row.directions = if dim_v_p + 1 == n {
        let w = lattice::kernel_basis(&Matrix::from_rows(v_p.clone(), n)).row(0).to_vec();
        let w = if w.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) { w.iter().map(|x| -x).collect() } else { w };
        vec![w]
    } else {
        section_directions(p, &v_p)
    };
    for w in &row.directions {
        if is_cracked(p, &halfspace_fan(w))?.verdict {
            row.cracked_directions.push(w.clone());
        }
    }
    row.cracked = !row.cracked_directions.is_empty();
    Ok(row)
}

/// Runs the three-stage search over `(id, polytope)` entries in parallel;
/// rows are returned in id order.
pub fn cracked_in_half_search(db: &[(usize, Polytope)]) -> Result<Vec<SearchRow>> {
    let mut rows: Vec<SearchRow> = db.par_iter().map(|(id, p)| search_row(*id, p)).collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.id);
    Ok(rows)
}

/// Intersection of the tangent cones `v + T_v P` over the ray generators `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WrappingPolyhedron {
    EntireSpace,
    /// `<n, x> >= b`
    Halfspaces(Vec<(Point, i64)>),
}

impl WrappingPolyhedron {
    pub fn contains(&self, x: &[i64]) -> bool {
        match self {
            WrappingPolyhedron::EntireSpace => true,
            WrappingPolyhedron::Halfspaces(h) => h.iter().all(|(n, b)| dd::dot(n, x) >= *b),
        }
    }

    pub fn halfspaces(&self) -> &[(Point, i64)] {
        match self {
            WrappingPolyhedron::EntireSpace => &[],
            WrappingPolyhedron::Halfspaces(h) => h,
        }
    }
}

pub fn wrapping_polyhedron(p: &Polytope, fan: &Fan) -> Result<WrappingPolyhedron> {
    if fan.rays().is_empty() {
        return Ok(WrappingPolyhedron::EntireSpace);
    }
    let mut hs: Vec<(Point, i64)> = Vec::new();
    for v in fan.rays() {
        let t = p.tangent_cone(v)?;
        for h in &t.halfspaces {
            hs.push((h.clone(), dd::dot(h, v)));
        }
    }
    hs.sort();
    hs.dedup();
    Ok(WrappingPolyhedron::Halfspaces(hs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{promote, shape, spanning_fan};
    use crate::polytope::shapes;

    #[test]
    fn cube_cracked_in_half() {
        let f = promote(&shape("P1").unwrap().fan, 2);
        let r = is_cracked(&shapes::cube(3), &f).unwrap();
        assert!(r.verdict);
        assert_eq!(r.evidence.len(), 2);
    }

    #[test]
    fn octahedron_along_orthants() {
        let o = shapes::cross_polytope(3);
        let f = spanning_fan(&o, true).unwrap();
        assert!(is_cracked(&o, &f).unwrap().verdict);
    }

    #[test]
    fn triangle_not_cracked_along_p2() {
        let t = Polytope::from_vertices(&[vec![1, 0], vec![0, 1], vec![-1, -2]]).unwrap();
        let r = is_cracked(&t, &shape("P2").unwrap().fan).unwrap();
        assert!(!r.verdict);
        assert!(r.evidence.iter().any(|e| matches!(e, ConeEvidence::Offending { .. })));
    }

    #[test]
    fn incomplete_fan_rejected() {
        let mut f = shape("P2").unwrap().fan;
        f.cones.pop();
        assert_eq!(is_cracked(&shapes::hexagon(), &f).err(), Some(Error::IncompleteFan));
    }

    #[test]
    fn halfspace_fan_is_promoted_p1() {
        let f = halfspace_fan(&[1, 2, 3]);
        assert!(f.is_complete() && f.is_unimodular());
        assert!(f.rays().is_empty());
    }

    #[test]
    fn dual_simplex_found_off_the_bounded_box() {
        let p = shapes::fano_simplex(3).polar_dual().unwrap();
        assert!(is_cracked(&p, &halfspace_fan(&[0, 0, 1])).unwrap().verdict);
        // |<e3, v>| reaches 3 on a vertex, so the bounded box misses it
        assert!(!bounded_directions(&p).contains(&vec![0, 0, 1]));
        let row = search_row(0, &p).unwrap();
        assert!(row.cracked && row.cracked_directions.contains(&vec![0, 0, 1]));
    }

    #[test]
    fn wrapping() {
        let f = promote(&shape("P1").unwrap().fan, 2);
        assert_eq!(wrapping_polyhedron(&shapes::cube(3), &f).unwrap(), WrappingPolyhedron::EntireSpace);
        let h = shapes::hexagon();
        let w = wrapping_polyhedron(&h, &shape("P2").unwrap().fan).unwrap();
        for x in h.lattice_points() {
            assert!(w.contains(&x));
        }
        // tangent cones at (1,0), (0,1), (-1,-1): six halfspaces (x <= 1 style)
        assert_eq!(w.halfspaces().len(), 6);
        let o = shapes::cross_polytope(3);
        let w = wrapping_polyhedron(&o, &spanning_fan(&o, true).unwrap()).unwrap();
        let facets: Vec<(Point, i64)> = o.facets().iter().map(|f| (f.normal.clone(), f.offset)).collect();
        assert_eq!(w.halfspaces(), &facets[..]);
        let small = Polytope::from_vertices(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap();
        assert!(wrapping_polyhedron(&small, &shape("P2").unwrap().fan).is_err());
    }
}
