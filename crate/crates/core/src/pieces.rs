//! Reflexive pieces: unimodular polytopes through the origin whose facets
//! either contain the origin or sit at height -1. Family generators, the
//! classification in dimensions up to three, and a brute-force oracle.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice;
use crate::normal_form::{normal_form, Mode, NormalFormKey};
use crate::polytope::{Point, Polytope};

/// Largest bounding region the oracle accepts, in lattice points.
pub const ORACLE_LIMIT: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Family {
    Origin,
    Dim1 { len: i64 },
    Simplex2D,
    Quad2D { m: i64 },
    Vertex2D { m: i64 },
    ReflexiveUnimodular,
    UnimodularTop,
    P { alpha: [i64; 2], l: i64, j: u8 },
    W { l: i64 },
    Wp { l: i64 },
    W0 { l: i64 },
    W0p { l: i64 },
    Q { alpha: [i64; 2], l: i64, j: u8 },
    Exceptional { i: usize },
}

impl Family {
    /// The family's own polytope; `None` for the unparametrized tags.
    pub fn generate(&self) -> Option<Result<Polytope>> {
        Some(match *self {
            Family::Origin => Polytope::from_vertices(&[vec![0]]),
            Family::Dim1 { len } => gen_dim1(len),
            Family::Simplex2D => gen_simplex2d(),
            Family::Quad2D { m } => gen_quad2d(m),
            Family::Vertex2D { m } => gen_vertex2d(m),
            Family::ReflexiveUnimodular | Family::UnimodularTop => return None,
            Family::P { alpha, l, j } => gen_p(alpha, l, j),
            Family::W { l } => gen_w(l),
            Family::Wp { l } => gen_wp(l),
            Family::W0 { l } => gen_w0(l),
            Family::W0p { l } => gen_w0p(l),
            Family::Q { alpha, l, j } => gen_q(alpha, l, j),
            Family::Exceptional { i } => exceptional_pieces()
                .get(i)
                .cloned()
                .ok_or_else(|| Error::InvalidParameters(format!("exceptional piece {i}"))),
        })
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Origin => write!(f, "Origin"),
            Family::Dim1 { len } => write!(f, "Dim1(len={len})"),
            Family::Simplex2D => write!(f, "Simplex2D(T)"),
            Family::Quad2D { m } => write!(f, "Quad2D(m={m})"),
            Family::Vertex2D { m } => write!(f, "Vertex2D(m={m})"),
            Family::ReflexiveUnimodular => write!(f, "ReflexiveUnimodular"),
            Family::UnimodularTop => write!(f, "UnimodularTop"),
            Family::P { alpha, l, j } => write!(f, "P(alpha=({},{}),l={l},j={j})", alpha[0], alpha[1]),
            Family::W { l } => write!(f, "W(l={l})"),
            Family::Wp { l } => write!(f, "Wp(l={l})"),
            Family::W0 { l } => write!(f, "W0(l={l})"),
            Family::W0p { l } => write!(f, "W0p(l={l})"),
            Family::Q { alpha, l, j } => write!(f, "Q(alpha=({},{}),l={l},j={j})", alpha[0], alpha[1]),
            Family::Exceptional { i } => write!(f, "Exceptional({i})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PieceRecord {
    pub polytope: Polytope,
    pub piece_type: usize,
    pub family: Family,
}

/// One line of the piece atlas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    #[serde(flatten)]
    pub family: Family,
    pub piece_type: usize,
    pub vertices: Vec<Point>,
    pub normal_form: String,
}

impl PieceRecord {
    pub fn atlas_entry(&self) -> Result<AtlasEntry> {
        Ok(AtlasEntry {
            family: self.family.clone(),
            piece_type: self.piece_type,
            vertices: self.polytope.vertices().to_vec(),
            normal_form: normal_form(&self.polytope, Mode::Linear)?.to_string(),
        })
    }
}

/// The polytope in lattice coordinates on its linear span. Requires the
/// origin to lie in the affine hull.
fn intrinsic(q: &Polytope) -> Result<Polytope> {
    if q.is_full_dim() {
        return Ok(q.clone());
    }
    let fr = q.frame().ok_or(Error::NonLattice)?;
    if q.dim() == 0 {
        return Polytope::from_vertices(&[vec![0]]);
    }
    let local: Vec<Point> = q.vertices().iter().map(|v| fr.local_dir(v)).collect();
    Polytope::from_vertices(&local)
}

fn check_origin(q: &Polytope) -> Result<()> {
    if !q.contains(&vec![0; q.ambient_dim()]) {
        return Err(Error::OriginNotContained);
    }
    Ok(())
}

pub fn is_piece(q: &Polytope) -> Result<bool> {
    check_origin(q)?;
    if !q.is_lattice() {
        return Ok(false);
    }
    let r = intrinsic(q)?;
    if r.dim() == 0 {
        return Ok(true);
    }
    let heights_ok = r.facets().iter().all(|f| {
        let g = lattice::gcd_all(&f.normal);
        f.offset == 0 || f.offset == -g
    });
    // the origin is the only lattice point allowed off the boundary
    let hollow = r.interior_lattice_points().iter().all(|x| x.iter().all(|&c| c == 0));
    Ok(heights_ok && hollow && r.is_unimodular())
}

/// Dimension of the polytope minus that of its smallest face through 0.
pub fn piece_type(q: &Polytope) -> Result<usize> {
    check_origin(q)?;
    let r = intrinsic(q)?;
    Ok(r.dim() - origin_face_dim(&r))
}

fn origin_face(r: &Polytope) -> Vec<usize> {
    let mut verts: Vec<usize> = (0..r.vertices().len()).collect();
    for (i, f) in r.facets().iter().enumerate() {
        if f.offset == 0 {
            let on = r.facet_vertices(i);
            verts.retain(|v| on.contains(v));
        }
    }
    verts
}

fn origin_face_dim(r: &Polytope) -> usize {
    if r.facets().iter().all(|f| f.offset != 0) {
        return r.dim();
    }
    let pts: Vec<Point> = origin_face(r).iter().map(|&i| r.vertices()[i].clone()).collect();
    crate::polytope::affine_rank(&pts)
}

fn cols(rows: [&[i64]; 3]) -> Vec<Point> {
    (0..rows[0].len()).map(|c| vec![rows[0][c], rows[1][c], rows[2][c]]).collect()
}

fn check_p_params(alpha: [i64; 2], l: i64, j: u8) -> Result<()> {
    if alpha.iter().any(|&a| a < -1) || l < 0 || !(j == 1 || j == 2) {
        return Err(Error::InvalidParameters(format!("alpha={alpha:?} l={l} j={j}")));
    }
    Ok(())
}

pub fn gen_p(alpha: [i64; 2], l: i64, j: u8) -> Result<Polytope> {
    check_p_params(alpha, l, j)?;
    let [a1, a2] = alpha;
    let pts = if j == 1 {
        cols([
            &[0, 0, 1, 0, 1, 0, l, l],
            &[0, 0, 0, 1, 0, 1, 1, 1],
            &[1, -1, -1, -1, a1 + 1, a2 + 1, -1, a2 + l * a1 + 1],
        ])
    } else {
        cols([
            &[0, 0, 1, 0, 1, 0, 1, 1],
            &[0, 0, 0, 1, 0, 1, l, l],
            &[1, -1, -1, -1, a1 + 1, a2 + 1, -1, a1 + l * a2 + 1],
        ])
    };
    Polytope::from_vertices(&pts)
}

fn check_w(l: i64, lo: i64, hi: Option<i64>) -> Result<()> {
    if l < lo || hi.is_some_and(|h| l > h) {
        return Err(Error::InvalidParameters(format!("l={l}")));
    }
    Ok(())
}

/// The halfspace `<(-1,1,0), x> <= 1`.
fn wedge_cut() -> (Point, i64) {
    (vec![1, -1, 0], -1)
}

pub fn gen_w(l: i64) -> Result<Polytope> {
    check_w(l, 1, None)?;
    Polytope::from_vertices(&cols([
        &[0, 0, 0, 1, 1, l, l, 2 * (l - 1)],
        &[0, 0, 2, 0, 0, 1, 1, 2],
        &[1, -1, -1, -1, 1, 0, -1, -1],
    ]))
}

pub fn gen_wp(l: i64) -> Result<Polytope> {
    gen_w(l)?.intersect(&[wedge_cut()])?.ok_or(Error::Empty)
}

pub fn gen_w0(l: i64) -> Result<Polytope> {
    check_w(l, 1, Some(2))?;
    w0_shape(l)
}

/// The `W0` vertex matrix without the range restriction; pieces of this shape
/// exist for every `l >= 1` but only `l <= 2` is a named family.
fn w0_shape(l: i64) -> Result<Polytope> {
    Polytope::from_vertices(&cols([
        &[0, 0, 0, 1, 1, 2 * l - 1],
        &[0, 0, 2, 0, 0, 2],
        &[1, -1, -1, -1, 1, -1],
    ]))
}

pub fn gen_w0p(l: i64) -> Result<Polytope> {
    gen_w0(l)?.intersect(&[wedge_cut()])?.ok_or(Error::Empty)
}

pub fn gen_q(alpha: [i64; 2], l: i64, j: u8) -> Result<Polytope> {
    gen_p(alpha, l, j)?.intersect(&[(vec![0, 0, 1], 0)])?.ok_or(Error::Empty)
}

pub fn gen_dim1(len: i64) -> Result<Polytope> {
    match len {
        1 => Polytope::from_vertices(&[vec![0], vec![1]]),
        2 => Polytope::from_vertices(&[vec![-1], vec![1]]),
        _ => Err(Error::InvalidParameters(format!("len={len}"))),
    }
}

/// The standard triangle of side two, placed with 0 at an edge midpoint.
pub fn gen_simplex2d() -> Result<Polytope> {
    Polytope::from_vertices(&[vec![0, -1], vec![0, 1], vec![2, -1]])
}

pub fn gen_quad2d(m: i64) -> Result<Polytope> {
    if m < 0 {
        return Err(Error::InvalidParameters(format!("m={m}")));
    }
    Polytope::from_vertices(&[vec![0, -1], vec![0, 1], vec![1, -1], vec![1, m]])
}

pub fn gen_vertex2d(m: i64) -> Result<Polytope> {
    if m < 0 {
        return Err(Error::InvalidParameters(format!("m={m}")));
    }
    Polytope::from_vertices(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, m]])
}

/// The bounding simplex containing every piece with both origin facets of
/// edge slope -1.
pub fn exceptional_bound() -> Polytope {
    Polytope::from_vertices(&[vec![0, 0, -1], vec![0, 0, 1], vec![2, 0, -1], vec![0, 2, -1]]).unwrap()
}

/// The type-2 pieces with `alpha = (-1, -1)`, as found by the oracle over
/// [`exceptional_bound`], in normal-form order.
pub fn exceptional_pieces() -> &'static [Polytope] {
    static CELL: OnceLock<Vec<Polytope>> = OnceLock::new();
    CELL.get_or_init(|| {
        enumerate_pieces_oracle(&exceptional_bound())
            .expect("bound is small")
            .into_iter()
            .filter(|p| p.dim() == 3 && piece_type(p).ok() == Some(2) && alpha_of(p).ok() == Some([-1, -1]))
            .collect()
    })
}

fn key(p: &Polytope) -> Result<NormalFormKey> {
    normal_form(p, Mode::Linear)
}

fn matches(target: &NormalFormKey, nverts: usize, fam: &Family) -> bool {
    match fam.generate() {
        Some(Ok(g)) => g.is_lattice() && g.vertices().len() == nverts && key(&g).ok().as_ref() == Some(target),
        _ => false,
    }
}

fn first_match(q: &Polytope, cands: impl IntoIterator<Item = Family>) -> Result<Option<Family>> {
    let k = key(q)?;
    let nv = q.vertices().len();
    Ok(cands.into_iter().find(|f| matches(&k, nv, f)))
}

fn defect(q: &Polytope, what: &str) -> Error {
    Error::Defect(format!("no {what} family matches piece with vertices {:?}", q.vertices()))
}

/// Slopes of the two origin facets of a three-dimensional type-2 piece,
/// largest first; a triangular facet counts as -1.
pub fn alpha_of(q: &Polytope) -> Result<[i64; 2]> {
    let r = intrinsic(q)?;
    if r.dim() != 3 || piece_type(&r)? != 2 {
        return Err(Error::InvalidParameters("alpha is defined for 3-dimensional type-2 pieces".into()));
    }
    let mut out = Vec::new();
    for (i, f) in r.facets().iter().enumerate() {
        if f.offset != 0 {
            continue;
        }
        let pts: Vec<Point> = r.facet_vertices(i).iter().map(|&v| r.vertices()[v].clone()).collect();
        let face = Polytope::from_vertices(&pts)?;
        out.push(match classify_piece(&face)?.family {
            Family::Simplex2D => -1,
            Family::Quad2D { m } => m - 1,
            other => return Err(Error::Defect(format!("origin facet of a type-2 piece classified as {other}"))),
        });
    }
    if out.len() != 2 {
        return Err(Error::Defect(format!("{} facets through the origin edge", out.len())));
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok([out[0], out[1]])
}

pub fn classify_piece(q: &Polytope) -> Result<PieceRecord> {
    if !is_piece(q)? {
        return Err(Error::InvalidParameters("not a reflexive piece".into()));
    }
    let r = intrinsic(q)?;
    let t = r.dim() - origin_face_dim(&r);
    let npts = r.lattice_points().len() as i64;
    let family = match (r.dim(), t) {
        (0, _) => Family::Origin,
        (1, _) => Family::Dim1 { len: 2 - t as i64 },
        (2, 0) | (3, 0) => Family::ReflexiveUnimodular,
        (3, 1) => Family::UnimodularTop,
        (2, 1) => first_match(&r, std::iter::once(Family::Simplex2D).chain((0..=npts).map(|m| Family::Quad2D { m })))?
            .ok_or_else(|| defect(q, "two-dimensional"))?,
        (2, 2) => first_match(&r, (0..=npts).map(|m| Family::Vertex2D { m }))?.ok_or_else(|| defect(q, "vertex"))?,
        (3, 2) => classify_type2(&r, npts)?.ok_or_else(|| defect(q, "edge"))?,
        (3, 3) => classify_type3(&r, npts)?.ok_or_else(|| defect(q, "vertex"))?,
        _ => return Err(Error::Dimension(format!("pieces of dimension {} are not classified", r.dim()))),
    };
    Ok(PieceRecord { polytope: q.clone(), piece_type: t, family })
}

fn p_candidates(alpha: [i64; 2], lmax: i64) -> impl Iterator<Item = Family> {
    // P(a,l,1) = P(a,l,2) for l <= 1, and the two agree up to swap when a1 = a2
    (0..=lmax).flat_map(move |l| {
        let js: &[u8] = if l <= 1 || alpha[0] == alpha[1] { &[1] } else { &[1, 2] };
        js.iter().map(move |&j| Family::P { alpha, l, j }).collect::<Vec<_>>()
    })
}

fn classify_type2(r: &Polytope, npts: i64) -> Result<Option<Family>> {
    let alpha = alpha_of(r)?;
    let mut cands: Vec<Family> = Vec::new();
    if alpha == [-1, -1] {
        cands.extend((0..exceptional_pieces().len()).map(|i| Family::Exceptional { i }));
    }
    if alpha == [0, -1] {
        cands.extend((2..=npts).map(|l| Family::W { l }));
        cands.extend((2..=npts).map(|l| Family::Wp { l }));
        cands.extend((1..=2).map(|l| Family::W0 { l }));
        cands.extend((1..=2).map(|l| Family::W0p { l }));
    }
    cands.extend(p_candidates(alpha, npts));
    // the swapped slopes only matter when the piece is not symmetric
    cands.extend(p_candidates([alpha[1], alpha[0]], npts));
    if let Some(f) = first_match(r, cands)? {
        return Ok(Some(f));
    }
    if alpha == [0, -1] {
        let k = key(r)?;
        for l in 3..=npts {
            let w0 = w0_shape(l)?;
            let cut = w0.intersect(&[wedge_cut()])?.ok_or(Error::Empty)?;
            for (name, g) in [("W0", w0), ("W0p", cut)] {
                if g.is_lattice() && key(&g)? == k {
                    return Err(Error::Defect(format!(
                        "piece has the {name} shape with l = {l}, outside the named range l in {{1, 2}}"
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn classify_type3(r: &Polytope, npts: i64) -> Result<Option<Family>> {
    let mut ms: Vec<i64> = vec![-1];
    for (i, f) in r.facets().iter().enumerate() {
        if f.offset != 0 {
            continue;
        }
        let pts: Vec<Point> = r.facet_vertices(i).iter().map(|&v| r.vertices()[v].clone()).collect();
        if let Family::Vertex2D { m } = classify_piece(&Polytope::from_vertices(&pts)?)?.family {
            ms.push(m - 1);
        }
    }
    ms.sort();
    ms.dedup();
    let mut cands = Vec::new();
    for &a1 in &ms {
        for &a2 in &ms {
            for l in 0..=npts {
                for j in [1u8, 2] {
                    cands.push(Family::Q { alpha: [a1, a2], l, j });
                }
            }
        }
    }
    cands.sort_by_key(|f| match f {
        Family::Q { alpha, l, j } => (std::cmp::Reverse(alpha[0]), std::cmp::Reverse(alpha[1]), *l, *j),
        _ => unreachable!(),
    });
    first_match(r, cands)
}

/// The four validity cases for `Q(alpha, l, j)`.
pub fn q_family_valid(alpha: [i64; 2], l: i64, j: u8) -> bool {
    let [a1, a2] = alpha;
    (a1 >= 0 && a2 >= 0)
        || (a1 == 0 && a2 == -1 && j == 1)
        || (a1 >= 0 && a2 == -1 && j == 2 && l == a1 + 1)
        || (a1 == -1 && a2 == -1)
}

/// Every lattice polytope inside `bounding` that contains the origin and is a
/// piece, one per normal form, ordered by normal form.
///
/// Lattice-convex subsets through 0 are grown one point at a time; removing
/// a vertex other than 0 from such a set leaves another one, so every set is
/// reached. Two monotone prunes keep this small: a full-dimensional set with
/// a non-origin interior lattice point stays that way, and a piece never
/// contains a non-primitive lattice point (some facet at height -1 separates
/// `x` from `2x`).
pub fn enumerate_pieces_oracle(bounding: &Polytope) -> Result<Vec<Polytope>> {
    let all_pts = bounding.lattice_points();
    if all_pts.len() > ORACLE_LIMIT {
        return Err(Error::TooLarge { points: all_pts.len(), limit: ORACLE_LIMIT });
    }
    let is_origin = |p: &Point| p.iter().all(|&c| c == 0);
    if !all_pts.iter().any(&is_origin) {
        return Ok(Vec::new());
    }
    let (pts, bad): (Vec<Point>, Vec<Point>) =
        all_pts.into_iter().partition(|p| is_origin(p) || lattice::is_primitive(p));
    let o = pts.iter().position(&is_origin).unwrap();
    let full = bounding.dim();
    let found = crate::enumerate::grow_lattice_convex(
        &pts,
        1u128 << o,
        |h| {
            bad.iter().any(|p| h.contains(p))
                || (h.dim() == full && h.interior_lattice_points().iter().any(|x| !is_origin(x)))
        },
        |h| (h.dim() > 0 && is_piece(h).unwrap_or(false)).then(|| h.clone()),
    );
    let keyed: Vec<(NormalFormKey, Polytope)> =
        found.into_par_iter().map(|p| key(&p).map(|k| (k, p))).collect::<Result<_>>()?;
    let mut out: BTreeMap<NormalFormKey, Polytope> = BTreeMap::new();
    for (k, p) in keyed {
        out.entry(k).or_insert(p);
    }
    Ok(out.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::shapes;

    fn poly(v: &[&[i64]]) -> Polytope {
        Polytope::from_vertices(&v.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn basic_predicates() {
        assert!(is_piece(&shapes::standard_simplex(3)).unwrap());
        assert!(is_piece(&shapes::unit_cube(3)).unwrap());
        assert!(!is_piece(&shapes::standard_simplex(3).dilate(2)).unwrap());
        assert_eq!(piece_type(&shapes::unit_cube(3)).unwrap(), 3);
        assert_eq!(piece_type(&shapes::cube(3)).unwrap(), 0);
        assert!(is_piece(&poly(&[&[1, 1], &[2, 2]])).is_err());
        // triangle x [-1, 1]: origin inside an edge
        let prism = gen_p([0, 0], 0, 1).unwrap();
        assert!(is_piece(&prism).unwrap());
        assert_eq!(piece_type(&prism).unwrap(), 2);
    }

    #[test]
    fn stated_coincidences_and_exclusions() {
        assert_eq!(gen_p([0, 0], 0, 1).unwrap(), gen_p([0, 0], 0, 2).unwrap());
        assert_eq!(gen_w(2).unwrap().vertices().len(), 8);
        assert!(!is_piece(&gen_w(1).unwrap()).unwrap());
        assert!(!gen_w(1).unwrap().is_unimodular());
        assert!(!is_piece(&gen_p([0, -1], 2, 2).unwrap()).unwrap());
        assert!(gen_p([-2, 0], 0, 1).is_err());
        assert!(gen_w0(3).is_err());
    }

    #[test]
    fn two_dimensional_classification() {
        let q = poly(&[&[0, -1], &[0, 1], &[1, -1], &[1, 3]]);
        assert_eq!(classify_piece(&q).unwrap().family, Family::Quad2D { m: 3 });
        let sq = shapes::unit_cube(2);
        assert_eq!(classify_piece(&sq).unwrap().family, Family::Vertex2D { m: 1 });
        let t = poly(&[&[-1, 0], &[1, 0], &[-1, 2]]);
        assert_eq!(classify_piece(&t).unwrap().family, Family::Simplex2D);
        assert_eq!(classify_piece(&shapes::hexagon()).unwrap().family, Family::ReflexiveUnimodular);
    }

    #[test]
    fn oracle_small_regions() {
        let seg = poly(&[&[-1], &[1]]);
        let out = enumerate_pieces_oracle(&seg).unwrap();
        let fams: Vec<Family> = out.iter().map(|p| classify_piece(p).unwrap().family).collect();
        assert_eq!(out.len(), 2);
        assert!(fams.contains(&Family::Dim1 { len: 2 }) && fams.contains(&Family::Dim1 { len: 1 }));
        let sq = enumerate_pieces_oracle(&shapes::unit_cube(2)).unwrap();
        let mut fams: Vec<Family> = sq.iter().map(|p| classify_piece(p).unwrap().family).collect();
        fams.sort();
        assert_eq!(fams, vec![Family::Dim1 { len: 1 }, Family::Vertex2D { m: 0 }, Family::Vertex2D { m: 1 }]);
    }

    #[test]
    fn exceptional_three() {
        let ex = exceptional_pieces();
        assert_eq!(ex.len(), 3);
        for (i, p) in ex.iter().enumerate() {
            assert_eq!(classify_piece(p).unwrap().family, Family::Exceptional { i });
        }
    }

    #[test]
    fn p_family_round_trip() {
        for a1 in 0..=2 {
            for a2 in 0..=a1 {
                for l in 0..=3 {
                    for j in [1u8, 2] {
                        let p = gen_p([a1, a2], l, j).unwrap();
                        let fam = classify_piece(&p).unwrap().family;
                        let j = if l <= 1 || a1 == a2 { 1 } else { j };
                        assert_eq!(fam, Family::P { alpha: [a1, a2], l, j });
                    }
                }
            }
        }
    }

    #[test]
    fn generated_family_reproduces_piece() {
        for q in [gen_q([1, 0], 2, 1), gen_q([0, -1], 3, 1), gen_w0(2), gen_w0p(2), gen_p([0, -1], 3, 1)] {
            let q = q.unwrap();
            let rec = classify_piece(&q).unwrap();
            let g = rec.family.generate().unwrap().unwrap();
            assert_eq!(key(&g).unwrap(), key(&q).unwrap(), "{}", rec.family);
        }
    }

    #[test]
    fn unnamed_wedge_is_a_defect() {
        let w = w0_shape(3).unwrap();
        assert!(is_piece(&w).unwrap());
        assert!(matches!(classify_piece(&w), Err(Error::Defect(_))));
    }

    #[test]
    fn faces_through_origin_are_pieces() {
        for p in [gen_p([1, 0], 2, 1).unwrap(), gen_q([0, 0], 1, 2).unwrap(), shapes::cube(3)] {
            for d in 1..3 {
                for f in p.faces(d) {
                    if f.contains(&[0, 0, 0]) {
                        assert!(is_piece(&f).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn too_large() {
        assert!(matches!(enumerate_pieces_oracle(&shapes::cube(3).dilate(2)), Err(Error::TooLarge { .. })));
    }
}
