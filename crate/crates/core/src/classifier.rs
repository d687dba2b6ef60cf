//! Reflexive 3-topes cracked along a given complete unimodular fan: tangent
//! data at the ray generators, the panels it forces on walls, admissible
//! pieces on maximal cones, and their assembly.
//!
//! Three fan types are handled. For a pointed fan the ray generators are the
//! rays. For a fan with a line `Ru` of lineality they are `u` and `-u`, and
//! the datum at `u` is taken up to shears `x -> x + l(x) u`. A fan whose
//! minimal cone is a plane has no wrapping data. Its walls carry a
//! unimodular reflexive polygon, and the tops over it are not bounded by
//! that polygon, so classification falls back to scanning a given list of
//! reflexive polytopes.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cracked::{is_cracked, non_unimodular_vertices, section_directions, span_basis};
use crate::dd;
use crate::enumerate::{grow_lattice_convex, reflexive_polygons};
use crate::error::{Error, Result};
use crate::fan::{automorphisms, Fan};
use crate::ks_io::KsIndex;
use crate::lattice;
use crate::normal_form::{normal_form, Mode, NormalFormKey};
use crate::pieces::{is_piece, piece_type};
use crate::polytope::{Point, Polytope};

type V3 = [i64; 3];

fn v3(p: &[i64]) -> V3 {
    [p[0], p[1], p[2]]
}

fn dot(a: &V3, b: &V3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &V3, b: &V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn det(a: &V3, b: &V3, c: &V3) -> i64 {
    dot(a, &cross(b, c))
}

fn add(a: &V3, b: &V3, k: i64) -> V3 {
    [a[0] + k * b[0], a[1] + k * b[1], a[2] + k * b[2]]
}

fn scale(a: &V3, k: i64) -> V3 {
    [k * a[0], k * a[1], k * a[2]]
}

fn primitive3(a: &V3) -> V3 {
    v3(&dd::primitive(a))
}

/// Integral coordinates of `x` in the basis `a, b, c`.
fn coords(a: &V3, b: &V3, c: &V3, x: &V3) -> Option<V3> {
    let d = det(a, b, c);
    if d == 0 {
        return None;
    }
    let n = [det(x, b, c), det(a, x, c), det(a, b, x)];
    n.iter().all(|t| t % d == 0).then(|| [n[0] / d, n[1] / d, n[2] / d])
}

/// Tangent data at one ray generator `ray`: the edge of `P` leaving `ray`
/// inside the wall towards the `i`-th neighbouring generator has direction
/// `lifts[i] + values[i] * ray`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WrappingDatum {
    pub ray: Point,
    pub lifts: Vec<Point>,
    pub values: Vec<i64>,
}

/// The intersection of `P` with a cone of codimension one. `cone` lists
/// generator indices (a single index when the fan has a line of lineality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Panel {
    pub cone: Vec<usize>,
    pub polytope: Polytope,
}

/// A choice of pieces, one per maximal cone, whose hull is cracked along the
/// fan.
#[derive(Clone, Debug)]
pub struct AssemblyCandidate {
    pub data: Vec<WrappingDatum>,
    pub panels: Vec<Panel>,
    pub pieces: Vec<Polytope>,
    pub polytope: Polytope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classified {
    pub key: NormalFormKey,
    pub polytope: Polytope,
    pub id: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Pointed,
    Line,
    Plane,
}

#[derive(Clone, Debug)]
struct Star {
    ray: V3,
    lifts: Vec<V3>,
    /// generator index behind each lift
    gens: Vec<usize>,
    /// pairs of lift positions, one per maximal cone through the ray
    sectors: Vec<(usize, usize)>,
}

impl Star {
    fn dir(&self, vals: &[i64], i: usize) -> V3 {
        add(&self.lifts[i], &self.ray, vals[i])
    }

    fn pos(&self, gen: usize) -> usize {
        self.gens.iter().position(|&g| g == gen).expect("neighbouring generator")
    }

    /// Outward-pointing halfspaces `<n, x> >= <n, ray>` of the tangent cone.
    fn halfspaces(&self, vals: &[i64]) -> Vec<(V3, i64)> {
        self.sectors
            .iter()
            .map(|&(a, b)| {
                let mut n = primitive3(&cross(&self.dir(vals, a), &self.dir(vals, b)));
                if dot(&n, &self.ray) > 0 {
                    n = scale(&n, -1);
                }
                (n, dot(&n, &self.ray))
            })
            .collect()
    }

    /// The boundary of the tangent cone bends inwards across every wall.
    fn is_concave(&self, vals: &[i64]) -> bool {
        (0..self.lifts.len()).all(|a| {
            let nb: Vec<usize> = self
                .sectors
                .iter()
                .filter_map(|&(x, y)| if x == a { Some(y) } else if y == a { Some(x) } else { None })
                .collect();
            if nb.len() != 2 {
                return false;
            }
            let (p, q) = (nb[0], nb[1]);
            let (dp, da, dq) = (self.dir(vals, p), self.dir(vals, a), self.dir(vals, q));
            let mut n = cross(&dp, &da);
            if dot(&n, &self.ray) > 0 {
                n = scale(&n, -1);
            }
            let mut m = cross(&da, &dq);
            if dot(&m, &self.ray) > 0 {
                m = scale(&m, -1);
            }
            dot(&n, &dq) >= 0 && dot(&m, &dp) >= 0
        })
    }

    /// `(p, q, c)` with `-lifts[i] = p lifts[j] + q lifts[k] + c ray` and
    /// `p, q >= 0` for the sector `(j, k)` containing the opposite direction.
    fn opposite(&self, i: usize) -> (i64, i64, i64) {
        let target = scale(&self.lifts[i], -1);
        self.sectors
            .iter()
            .find_map(|&(j, k)| {
                let c = coords(&self.lifts[j], &self.lifts[k], &self.ray, &target)?;
                (c[0] >= 0 && c[1] >= 0).then_some((c[0], c[1], c[2]))
            })
            .expect("complete star")
    }
}

struct Setup {
    fan: Fan,
    kind: Kind,
    stars: Vec<Star>,
    /// codimension-one cones as generator index sets
    walls: Vec<Vec<usize>>,
    /// line case: shear-normalising sector and coordinates of every lift in
    /// `(lift_j0, lift_k0, u)`
    norm: Option<((usize, usize), Vec<V3>)>,
}

fn setup(f: &Fan) -> Result<Setup> {
    if f.ambient_dim != 3 {
        return Err(Error::Dimension("classification is implemented for 3-dimensional fans".into()));
    }
    if !f.is_complete() {
        return Err(Error::IncompleteFan);
    }
    if !f.is_unimodular() {
        return Err(Error::InvalidParameters("fan is not unimodular".into()));
    }
    let g: Vec<V3> = f.generators.iter().map(|x| v3(x)).collect();
    match f.lineality.len() {
        0 => {
            if f.cones.iter().any(|c| c.len() != 3) {
                return Err(Error::InvalidParameters("maximal cones must be simplicial".into()));
            }
            let mut walls = BTreeSet::new();
            let mut stars = Vec::new();
            for (r, &ray) in g.iter().enumerate() {
                let mut gens: Vec<usize> = Vec::new();
                let mut sec = Vec::new();
                for c in f.cones.iter().filter(|c| c.contains(&r)) {
                    let o: Vec<usize> = c.iter().copied().filter(|&j| j != r).collect();
                    for &j in &o {
                        if !gens.contains(&j) {
                            gens.push(j);
                        }
                        walls.insert(vec![r.min(j), r.max(j)]);
                    }
                    sec.push((o[0], o[1]));
                }
                gens.sort();
                let pos = |j: usize| gens.iter().position(|&x| x == j).unwrap();
                let sectors = sec.iter().map(|&(a, b)| (pos(a), pos(b))).collect();
                stars.push(Star { ray, lifts: gens.iter().map(|&j| g[j]).collect(), gens, sectors });
            }
            Ok(Setup { fan: f.clone(), kind: Kind::Pointed, stars, walls: walls.into_iter().collect(), norm: None })
        }
        1 => {
            if f.cones.iter().any(|c| c.len() != 2) {
                return Err(Error::InvalidParameters("maximal cones must be simplicial".into()));
            }
            let u = primitive3(&v3(&f.lineality[0]));
            let gens: Vec<usize> = (0..g.len()).collect();
            let sectors: Vec<(usize, usize)> = f.cones.iter().map(|c| (c[0], c[1])).collect();
            let mk = |ray: V3| Star { ray, lifts: g.clone(), gens: gens.clone(), sectors: sectors.clone() };
            let stars = vec![mk(u), mk(scale(&u, -1))];
            let (j0, k0) = sectors[0];
            let cs = g
                .iter()
                .map(|x| coords(&g[j0], &g[k0], &u, x).ok_or_else(|| Error::Defect("non-unimodular sector".into())))
                .collect::<Result<Vec<V3>>>()?;
            let walls = gens.iter().map(|&i| vec![i]).collect();
            Ok(Setup { fan: f.clone(), kind: Kind::Line, stars, walls, norm: Some(((j0, k0), cs)) })
        }
        2 => Ok(Setup { fan: f.clone(), kind: Kind::Plane, stars: Vec::new(), walls: vec![vec![]], norm: None }),
        _ => Err(Error::InvalidParameters("minimal cone of dimension 3".into())),
    }
}

type Phi = Vec<Vec<i64>>;

fn to_data(s: &Setup, phi: &Phi) -> Vec<WrappingDatum> {
    s.stars
        .iter()
        .zip(phi)
        .map(|(st, vals)| WrappingDatum {
            ray: st.ray.to_vec(),
            lifts: st.lifts.iter().map(|l| l.to_vec()).collect(),
            values: vals.clone(),
        })
        .collect()
}

fn from_data(s: &Setup, data: &[WrappingDatum]) -> Result<Phi> {
    if data.len() != s.stars.len() {
        return Err(Error::InvalidParameters("one wrapping datum per ray generator expected".into()));
    }
    for (st, d) in s.stars.iter().zip(data) {
        if v3(&d.ray) != st.ray || d.values.len() != st.lifts.len() {
            return Err(Error::InvalidParameters("wrapping datum does not match the fan".into()));
        }
    }
    Ok(data.iter().map(|d| d.values.clone()).collect())
}

fn wrapping_halfspaces(s: &Setup, phi: &Phi) -> Vec<(V3, i64)> {
    let mut hs: Vec<(V3, i64)> = s.stars.iter().zip(phi).flat_map(|(st, v)| st.halfspaces(v)).collect();
    hs.sort();
    hs.dedup();
    hs
}

fn in_w(hs: &[(V3, i64)], x: &V3) -> bool {
    hs.iter().all(|(n, b)| dot(n, x) >= *b)
}

/// Cartesian product of integer ranges, filtered.
fn boxed(lo: &[i64], hi: &[i64], keep: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return out;
    }
    let mut cur = lo.to_vec();
    loop {
        if keep(&cur) {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == cur.len() {
                return out;
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

fn panel_pair_ok(a: i64, b: i64) -> bool {
    (a == -1 && b == -1) || (a == 0 && b >= 0) || (b == 0 && a >= 0)
}

fn pointed_region(s: &Setup) -> Vec<Phi> {
    // tangent cones contain the neighbouring generators (values >= -1); by
    // superadditivity -lifts[i] = p lifts[j] + q lifts[k] + c ray bounds
    // values[i] <= p + q + c
    let per_star: Vec<Vec<Vec<i64>>> = s
        .stars
        .iter()
        .map(|st| {
            let lo = vec![-1; st.lifts.len()];
            let hi: Vec<i64> = (0..st.lifts.len())
                .map(|i| {
                    let (p, q, c) = st.opposite(i);
                    p + q + c
                })
                .collect();
            boxed(&lo, &hi, |v| st.is_concave(v))
        })
        .collect();
    let mut out = Vec::new();
    let mut cur: Phi = Vec::new();
    fn rec(s: &Setup, per: &[Vec<Vec<i64>>], cur: &mut Phi, out: &mut Vec<Phi>) {
        let r = cur.len();
        if r == s.stars.len() {
            let hs = wrapping_halfspaces(s, cur);
            if s.stars.iter().all(|st| in_w(&hs, &st.ray)) {
                out.push(cur.clone());
            }
            return;
        }
        for cand in &per[r] {
            let st = &s.stars[r];
            let ok = st.gens.iter().enumerate().all(|(i, &h)| {
                h >= r || {
                    let back = cur[h][s.stars[h].pos(r)];
                    panel_pair_ok(cand[i], back)
                }
            });
            if ok {
                cur.push(cand.clone());
                rec(s, per, cur, out);
                cur.pop();
            }
        }
    }
    rec(s, &per_star, &mut cur, &mut out);
    out
}

fn line_region(s: &Setup) -> Vec<Phi> {
    let ((j0, k0), cs) = s.norm.as_ref().unwrap();
    let (j0, k0) = (*j0, *k0);
    let (up, dn) = (&s.stars[0], &s.stars[1]);
    let n = up.lifts.len();
    // sum of the two values is >= -2 and, by superadditivity, <= 2(p + q)
    let smax: Vec<i64> = (0..n)
        .map(|i| {
            let (p, q, _) = up.opposite(i);
            2 * (p + q)
        })
        .collect();
    let mut out = Vec::new();
    for a in -2..=smax[j0] {
        for b in -2..=smax[k0] {
            // concave functions lie below the linear extension of any sector
            let lin_up = |i: usize| -cs[i][2];
            let lin_dn = |i: usize| cs[i][0] * a + cs[i][1] * b + cs[i][2];
            let free: Vec<usize> = (0..n).filter(|&i| i != j0 && i != k0).collect();
            let mut lo = Vec::new();
            let mut hi = Vec::new();
            for &i in &free {
                lo.push(-2 - lin_dn(i));
                hi.push(lin_up(i));
                lo.push(-2 - lin_up(i));
                hi.push(lin_dn(i));
            }
            let assemble = |x: &[i64]| -> Phi {
                let mut t_up = vec![0; n];
                let mut t_dn = vec![0; n];
                t_dn[j0] = a;
                t_dn[k0] = b;
                for (m, &i) in free.iter().enumerate() {
                    t_up[i] = x[2 * m];
                    t_dn[i] = x[2 * m + 1];
                }
                vec![t_up, t_dn]
            };
            out.extend(
                boxed(&lo, &hi, |x| {
                    let phi = assemble(x);
                    (0..n).all(|i| (-2..=smax[i]).contains(&(phi[0][i] + phi[1][i])))
                        && up.is_concave(&phi[0])
                        && dn.is_concave(&phi[1])
                })
                .iter()
                .map(|x| assemble(x)),
            );
        }
    }
    out
}

/// Lattice points of the region of admissible wrapping data, in a fixed
/// order. A fan whose minimal cone is a plane has the single empty datum.
pub fn region_lattice_points(f: &Fan) -> Result<Vec<Vec<WrappingDatum>>> {
    let s = setup(f)?;
    let phis = match s.kind {
        Kind::Pointed => pointed_region(&s),
        Kind::Line => line_region(&s),
        Kind::Plane => vec![Vec::new()],
    };
    Ok(phis.iter().map(|p| to_data(&s, p)).collect())
}

/// Halfspaces `<n, x> >= b` of the wrapping polyhedron induced by the data.
pub fn induced_wrapping(f: &Fan, data: &[WrappingDatum]) -> Result<Vec<(Point, i64)>> {
    let s = setup(f)?;
    let phi = from_data(&s, data)?;
    Ok(wrapping_halfspaces(&s, &phi).into_iter().map(|(n, b)| (n.to_vec(), b)).collect())
}

/// Group action on data: the fan automorphisms (for the line case, those of
/// the quotient fan combined with `u -> +-u`), followed by shear
/// normalisation.
fn group_images(s: &Setup) -> Result<Vec<Box<dyn Fn(&Phi) -> Phi + Sync + '_>>> {
    let mut out: Vec<Box<dyn Fn(&Phi) -> Phi + Sync + '_>> = Vec::new();
    match s.kind {
        Kind::Plane => out.push(Box::new(|p: &Phi| p.clone())),
        Kind::Pointed => {
            for (perm, _) in automorphisms(&s.fan) {
                out.push(Box::new(move |phi: &Phi| {
                    let mut img: Phi = s.stars.iter().map(|st| vec![0; st.lifts.len()]).collect();
                    for (g, st) in s.stars.iter().enumerate() {
                        for (i, &h) in st.gens.iter().enumerate() {
                            let (pg, ph) = (perm[g], perm[h]);
                            img[pg][s.stars[pg].pos(ph)] = phi[g][i];
                        }
                    }
                    img
                }));
            }
        }
        Kind::Line => {
            let ((j0, k0), cs) = s.norm.clone().unwrap();
            let g = &s.stars[0].lifts;
            let q: Vec<Point> = cs.iter().map(|c| vec![c[0], c[1]]).collect();
            let qfan = Fan::new(2, q.clone(), s.fan.cones.clone(), Vec::new())?;
            for (perm, a2) in automorphisms(&qfan) {
                for eps in [1i64, -1] {
                    // image of lift i is lift perm(i) + k_i u in (lift_j0, lift_k0, u) coordinates
                    let k: Vec<i64> = (0..g.len()).map(|i| eps * cs[i][2] - cs[perm[i]][2]).collect();
                    let _ = &a2;
                    let perm = perm.clone();
                    let cs = cs.clone();
                    out.push(Box::new(move |phi: &Phi| {
                        let n = phi[0].len();
                        let mut up = vec![0; n];
                        let mut dn = vec![0; n];
                        for i in 0..n {
                            let j = perm[i];
                            if eps == 1 {
                                up[j] = phi[0][i] + k[i];
                                dn[j] = phi[1][i] - k[i];
                            } else {
                                dn[j] = phi[0][i] - k[i];
                                up[j] = phi[1][i] + k[i];
                            }
                        }
                        let (a, b) = (up[j0], up[k0]);
                        for i in 0..n {
                            let l = -(cs[i][0] * a + cs[i][1] * b);
                            up[i] += l;
                            dn[i] -= l;
                        }
                        vec![up, dn]
                    }));
                }
            }
        }
    }
    Ok(out)
}

/// One representative (the lexicographically least image) per orbit of the
/// fan's automorphism group, together with the orbit sizes.
pub fn symmetry_orbits(f: &Fan, points: &[Vec<WrappingDatum>]) -> Result<Vec<(Vec<WrappingDatum>, usize)>> {
    let s = setup(f)?;
    let images = group_images(&s)?;
    let phis: Vec<Phi> = points.iter().map(|d| from_data(&s, d)).collect::<Result<_>>()?;
    let mut orbits: BTreeMap<Phi, BTreeSet<Phi>> = BTreeMap::new();
    for phi in &phis {
        let orbit: BTreeSet<Phi> = images.iter().map(|g| g(phi)).collect();
        let rep = orbit.iter().next().unwrap().clone();
        orbits.entry(rep).or_insert(orbit);
    }
    Ok(orbits.into_iter().map(|(rep, o)| (to_data(&s, &rep), o.len())).collect())
}

pub fn symmetry_reduce(f: &Fan, points: &[Vec<WrappingDatum>]) -> Result<Vec<Vec<WrappingDatum>>> {
    Ok(symmetry_orbits(f, points)?.into_iter().map(|(r, _)| r).collect())
}

fn poly(pts: &[V3]) -> Polytope {
    Polytope::from_vertices(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).expect("nonempty")
}

fn unimodular_polygons_in_plane(lin: &[Point]) -> Result<Vec<Polytope>> {
    let (a, b) = (v3(&lin[0]), v3(&lin[1]));
    Ok(reflexive_polygons(2)?
        .into_iter()
        .filter(|p| p.is_unimodular())
        .map(|p| {
            let pts: Vec<V3> = p.vertices().iter().map(|c| add(&scale(&a, c[0]), &b, c[1])).collect();
            poly(&pts)
        })
        .collect())
}

fn panel_options(s: &Setup, phi: &Phi) -> Result<Vec<Vec<Panel>>> {
    let hs = wrapping_halfspaces(s, phi);
    let o = [0, 0, 0];
    let mut per_wall: Vec<Vec<Panel>> = Vec::new();
    for w in &s.walls {
        let opts: Vec<Vec<V3>> = match s.kind {
            Kind::Pointed => {
                let (g, h) = (w[0], w[1]);
                let (v, vp) = (s.stars[g].ray, s.stars[h].ray);
                let (t1, t2) = (phi[g][s.stars[g].pos(h)], phi[h][s.stars[h].pos(g)]);
                if (t1, t2) == (-1, -1) {
                    vec![vec![o, v, vp]]
                } else if t1 == 0 && t2 >= 0 {
                    vec![vec![o, v, vp, add(&v, &vp, t2 + 1)]]
                } else if t2 == 0 && t1 >= 0 {
                    vec![vec![o, v, vp, add(&vp, &v, t1 + 1)]]
                } else {
                    vec![]
                }
            }
            Kind::Line => {
                let i = w[0];
                let u = s.stars[0].ray;
                let a = s.stars[0].lifts[i];
                let (tp, tm) = (phi[0][i], phi[1][i]);
                let neg = scale(&u, -1);
                let mut v = vec![vec![u, neg, add(&a, &u, 1 + tp), add(&a, &u, -1 - tm)]];
                if tp + tm == -1 {
                    v.push(vec![u, neg, add(&scale(&a, 2), &u, 1 + 2 * tp)]);
                }
                v
            }
            Kind::Plane => {
                return Ok(unimodular_polygons_in_plane(&s.fan.lineality)?
                    .into_iter()
                    .map(|p| vec![Panel { cone: vec![], polytope: p }])
                    .collect());
            }
        };
        let ps: Vec<Panel> = opts
            .into_iter()
            .filter(|pts| pts.iter().all(|x| in_w(&hs, x)))
            .map(|pts| Panel { cone: w.clone(), polytope: poly(&pts) })
            .collect();
        per_wall.push(ps);
    }
    // cartesian product over the walls
    let mut out: Vec<Vec<Panel>> = vec![Vec::new()];
    for ps in per_wall {
        out = out
            .into_iter()
            .flat_map(|acc| {
                ps.iter().map(move |p| {
                    let mut a = acc.clone();
                    a.push(p.clone());
                    a
                })
            })
            .collect();
    }
    Ok(out)
}

/// Panel assignments compatible with the wrapping data: one panel per
/// codimension-one cone, inside the wrapping polyhedron.
pub fn panel_assignments(f: &Fan, data: &[WrappingDatum]) -> Result<Vec<Vec<Panel>>> {
    let s = setup(f)?;
    let phi = from_data(&s, data)?;
    panel_options(&s, &phi)
}

const POINT_LIMIT: usize = 128;

fn pieces_on_cone(s: &Setup, phi: &Phi, panels: &[Panel], ci: usize) -> Result<Vec<Polytope>> {
    if s.kind == Kind::Plane {
        return Err(Error::InvalidParameters(
            "pieces over a plane minimal cone are not bounded by the wrapping data".into(),
        ));
    }
    let hs = wrapping_halfspaces(s, phi);
    let sigma = s.fan.cone(ci);
    let walls: Vec<V3> = sigma.halfspaces.iter().map(|h| v3(h)).collect();
    let cone_gens = &s.fan.cones[ci];
    // the panel on each wall of sigma
    let mut wall_panels: Vec<(V3, &Panel)> = Vec::new();
    for h in &walls {
        let on: Vec<usize> = cone_gens.iter().copied().filter(|&j| dot(h, &v3(&s.fan.generators[j])) == 0).collect();
        let p = panels.iter().find(|p| p.cone == on).ok_or_else(|| Error::Defect(format!("no panel on wall {on:?}")))?;
        wall_panels.push((*h, p));
    }
    // facet normals of a piece lie in the polar of the hull of all panels
    let all: Vec<Point> = panels.iter().flat_map(|p| p.polytope.vertices().to_vec()).collect();
    let k = Polytope::from_vertices(&all)?;
    let g: Vec<V3> =
        k.polar_dual()?.lattice_points().into_iter().filter(|x| x.iter().any(|&c| c != 0)).map(|x| v3(&x)).collect();
    let planes: Vec<(V3, i64)> = walls.iter().map(|h| (*h, 0)).chain(g.iter().map(|w| (*w, -1))).collect();
    let in_sigma = |x: &V3| walls.iter().all(|h| dot(h, x) >= 0);
    let mut cand: BTreeSet<V3> = BTreeSet::new();
    for (_, p) in &wall_panels {
        for v in p.polytope.vertices() {
            cand.insert(v3(v));
        }
    }
    let m = planes.len();
    for i in 0..m {
        for j in i + 1..m {
            let nij = cross(&planes[i].0, &planes[j].0);
            if nij == [0, 0, 0] {
                continue;
            }
            for l in j + 1..m {
                let (a, b, c) = (&planes[i], &planes[j], &planes[l]);
                let d = dot(&c.0, &nij);
                if d == 0 {
                    continue;
                }
                // x = (b_a (n_b x n_c) + b_b (n_c x n_a) + b_c (n_a x n_b)) / d
                let num = add(&add(&scale(&cross(&b.0, &c.0), a.1), &cross(&c.0, &a.0), b.1), &nij, c.1);
                if num.iter().any(|t| t % d != 0) {
                    continue;
                }
                let x = [num[0] / d, num[1] / d, num[2] / d];
                if x != [0, 0, 0] && in_sigma(&x) && in_w(&hs, &x) && lattice::is_primitive(&x) {
                    cand.insert(x);
                }
            }
        }
    }
    let region = poly(&cand.iter().copied().collect::<Vec<_>>());
    let on_panel = |x: &V3| {
        wall_panels.iter().all(|(h, p)| dot(h, x) != 0 || p.polytope.contains(x))
    };
    let mut pts: Vec<Point> = Vec::new();
    let mut forbidden: Vec<V3> = Vec::new();
    for x in region.lattice_points() {
        let x3 = v3(&x);
        if !in_sigma(&x3) || !in_w(&hs, &x3) {
            continue;
        }
        if (x3 == [0, 0, 0] || lattice::is_primitive(&x)) && on_panel(&x3) {
            pts.push(x);
        } else {
            forbidden.push(x3);
        }
    }
    if pts.len() > POINT_LIMIT {
        return Err(Error::TooLarge { points: pts.len(), limit: POINT_LIMIT });
    }
    let start = pts
        .iter()
        .enumerate()
        .filter(|(_, x)| wall_panels.iter().any(|(_, p)| p.polytope.contains(x)))
        .fold(0u128, |m, (i, _)| m | 1 << i);
    let expected = if s.kind == Kind::Pointed { 3 } else { 2 };
    let found = grow_lattice_convex(
        &pts,
        start,
        |h| {
            forbidden.iter().any(|x| h.contains(x))
                || (h.is_full_dim() && h.interior_lattice_points().iter().any(|x| x.iter().any(|&c| c != 0)))
        },
        |h| {
            if !h.is_full_dim() || !is_piece(h).ok()? || piece_type(h).ok()? != expected {
                return None;
            }
            let den = h.den();
            let tight = h
                .facets()
                .iter()
                .filter(|f| f.offset != 0)
                .all(|f| all.iter().all(|x| dd::dot(&f.normal, x) * den >= f.offset));
            tight.then(|| h.clone())
        },
    );
    let mut by_key = BTreeMap::new();
    for q in found {
        by_key.entry(normal_form(&q, Mode::Affine)?).or_insert(q);
    }
    Ok(by_key.into_values().collect())
}

/// Admissible pieces on the maximal cone `cone_index` for the given data and
/// panels.
pub fn admissible_pieces(f: &Fan, data: &[WrappingDatum], panels: &[Panel], cone_index: usize) -> Result<Vec<Polytope>> {
    let s = setup(f)?;
    let phi = from_data(&s, data)?;
    pieces_on_cone(&s, &phi, panels, cone_index)
}

fn non_wall_facets(q: &Polytope) -> Vec<(Point, i64, i64)> {
    q.facets().iter().filter(|f| f.offset != 0).map(|f| (f.normal.clone(), f.offset, q.den())).collect()
}

fn compatible(a: &Polytope, fa: &[(Point, i64, i64)], b: &Polytope, fb: &[(Point, i64, i64)]) -> bool {
    let ok = |fs: &[(Point, i64, i64)], q: &Polytope| {
        fs.iter().all(|(n, off, den)| q.vertices().iter().all(|x| dd::dot(n, x) * den >= *off))
    };
    ok(fa, b) && ok(fb, a)
}

fn assemble(s: &Setup, phi: &Phi, panels: &[Panel]) -> Result<Vec<AssemblyCandidate>> {
    let per_cone: Vec<Vec<Polytope>> =
        (0..s.fan.cones.len()).map(|ci| pieces_on_cone(s, phi, panels, ci)).collect::<Result<_>>()?;
    let facets: Vec<Vec<Vec<(Point, i64, i64)>>> =
        per_cone.iter().map(|qs| qs.iter().map(non_wall_facets).collect()).collect();
    let mut out = Vec::new();
    let mut choice: Vec<usize> = Vec::new();
    fn rec(
        s: &Setup,
        phi: &Phi,
        panels: &[Panel],
        per: &[Vec<Polytope>],
        fac: &[Vec<Vec<(Point, i64, i64)>>],
        choice: &mut Vec<usize>,
        out: &mut Vec<AssemblyCandidate>,
    ) -> Result<()> {
        let c = choice.len();
        if c == per.len() {
            let pieces: Vec<Polytope> = choice.iter().enumerate().map(|(ci, &k)| per[ci][k].clone()).collect();
            let pts: Vec<Point> = pieces.iter().flat_map(|q| q.vertices().to_vec()).collect();
            let p = Polytope::from_vertices(&pts)?;
            if p.is_reflexive() && is_cracked(&p, &s.fan)?.verdict {
                out.push(AssemblyCandidate { data: to_data(s, phi), panels: panels.to_vec(), pieces, polytope: p });
            }
            return Ok(());
        }
        for k in 0..per[c].len() {
            let ok = choice
                .iter()
                .enumerate()
                .all(|(ci, &kk)| compatible(&per[ci][kk], &fac[ci][kk], &per[c][k], &fac[c][k]));
            if ok {
                choice.push(k);
                rec(s, phi, panels, per, fac, choice, out)?;
                choice.pop();
            }
        }
        Ok(())
    }
    rec(s, phi, panels, &per_cone, &facets, &mut choice, &mut out)?;
    Ok(out)
}

/// All assemblies for the given wrapping data.
pub fn assemblies(f: &Fan, data: &[WrappingDatum]) -> Result<Vec<AssemblyCandidate>> {
    let s = setup(f)?;
    let phi = from_data(&s, data)?;
    let mut out = Vec::new();
    for panels in panel_options(&s, &phi)? {
        out.extend(assemble(&s, &phi, &panels)?);
    }
    Ok(out)
}

fn cracked_along_some_plane(p: &Polytope) -> Result<bool> {
    let v_p = span_basis(&non_unimodular_vertices(p), 3);
    if v_p.len() == 3 {
        return Ok(false);
    }
    for w in section_directions(p, &v_p) {
        if is_cracked(p, &crate::cracked::halfspace_fan(&w))?.verdict {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Reflexive 3-topes cracked along `f`, one per normal form, sorted by key.
/// With `db`, results carry their list ids. A fan whose minimal cone is a
/// plane requires `db`: every entry is tested against every plane spanned
/// by its lattice points.
pub fn classify_cracked(f: &Fan, db: Option<&KsIndex>) -> Result<Vec<Classified>> {
    let s = setup(f)?;
    let mut found: BTreeMap<NormalFormKey, Polytope> = BTreeMap::new();
    if s.kind == Kind::Plane {
        let db = db.ok_or_else(|| {
            Error::InvalidParameters("a plane minimal cone needs a list of reflexive polytopes".into())
        })?;
        let hits: Vec<(NormalFormKey, Polytope)> = db
            .records()
            .par_iter()
            .filter_map(|r| match cracked_along_some_plane(&r.polytope) {
                Ok(true) => Some(Ok((r.key.clone(), r.polytope.clone()))),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<_>>()?;
        found.extend(hits);
    } else {
        let region = match s.kind {
            Kind::Pointed => pointed_region(&s),
            _ => line_region(&s),
        };
        let data: Vec<Vec<WrappingDatum>> = region.iter().map(|p| to_data(&s, p)).collect();
        let reps = symmetry_reduce(f, &data)?;
        let results: Vec<Vec<AssemblyCandidate>> =
            reps.par_iter().map(|d| assemblies(f, d)).collect::<Result<_>>()?;
        for c in results.into_iter().flatten() {
            found.entry(normal_form(&c.polytope, Mode::Linear)?).or_insert(c.polytope);
        }
    }
    Ok(found
        .into_iter()
        .map(|(key, polytope)| {
            let id = db.and_then(|d| d.id_of(&polytope));
            Classified { key, polytope, id }
        })
        .collect())
}
