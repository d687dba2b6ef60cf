//! Exhaustive searches that stand in for external tables: lattice-convex set
//! growth, reflexive polygons in a box, and smooth Fano 3-topes by wall
//! crossing.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::Result;
use crate::lattice;
use crate::normal_form::{normal_form, Mode, NormalFormKey};
use crate::polytope::{Point, Polytope};

/// Breadth-first growth of lattice-convex subsets of `pts` from `start`:
/// each step adds one point and closes up under taking lattice points of the
/// hull. Every lattice-convex superset of `start` is reached, because
/// removing a vertex outside `start` leaves a smaller lattice-convex set.
/// `prune` must be monotone (a pruned set has only pruned supersets).
/// `visit` runs once per set; results come back in level and mask order.
pub fn grow_lattice_convex<T: Send>(
    pts: &[Point],
    start: u128,
    prune: impl Fn(&Polytope) -> bool + Sync,
    visit: impl Fn(&Polytope) -> Option<T> + Sync,
) -> Vec<T> {
    assert!(pts.len() <= 128, "mask width");
    let hull = |mask: u128| -> Polytope {
        let sel: Vec<Point> = (0..pts.len()).filter(|i| mask >> i & 1 == 1).map(|i| pts[i].clone()).collect();
        Polytope::from_vertices(&sel).expect("nonempty")
    };
    let close = |mask: u128| -> Option<(u128, Option<T>)> {
        let h = hull(mask);
        if prune(&h) {
            return None;
        }
        let m = pts.iter().enumerate().filter(|(_, p)| h.contains(p)).fold(0u128, |m, (i, _)| m | 1 << i);
        Some((m, visit(&h)))
    };
    let mut out = Vec::new();
    let Some((s, v)) = close(start) else {
        return out;
    };
    out.extend(v);
    let mut seen: HashSet<u128> = HashSet::from([s]);
    let mut frontier = vec![s];
    while !frontier.is_empty() {
        let cands: Vec<u128> = frontier
            .iter()
            .flat_map(|&m| (0..pts.len()).filter(move |i| m >> i & 1 == 0).map(move |i| m | 1 << i))
            .collect();
        let mut next: Vec<(u128, Option<T>)> = cands.into_par_iter().filter_map(&close).collect();
        next.sort_by_key(|(m, _)| *m);
        next.dedup_by_key(|(m, _)| *m);
        next.retain(|(m, _)| seen.insert(*m));
        frontier = next.iter().map(|(m, _)| *m).collect();
        out.extend(next.into_iter().filter_map(|(_, v)| v));
    }
    out
}

fn is_origin(p: &[i64]) -> bool {
    p.iter().all(|&c| c == 0)
}

/// Polygons with vertices in `[-b, b]^2` whose only interior lattice point is
/// the origin, one per normal form.
pub fn reflexive_polygons(b: i64) -> Result<Vec<Polytope>> {
    let mut pts: Vec<Point> = Vec::new();
    crate::polytope::for_each_in_box(&[-b, -b], &[b, b], |x| {
        // with 0 interior every other lattice point is primitive
        if is_origin(x) || lattice::is_primitive(x) {
            pts.push(x.to_vec());
        }
    });
    let o = pts.iter().position(|p| is_origin(p)).unwrap();
    let found = grow_lattice_convex(
        &pts,
        1u128 << o,
        |h| h.is_full_dim() && h.interior_lattice_points().iter().any(|x| !is_origin(x)),
        |h| {
            let inner = h.interior_lattice_points();
            (h.is_full_dim() && inner.len() == 1 && is_origin(&inner[0])).then(|| h.clone())
        },
    );
    dedup(found)
}

fn dedup(ps: Vec<Polytope>) -> Result<Vec<Polytope>> {
    let keyed: Vec<(NormalFormKey, Polytope)> =
        ps.into_par_iter().map(|p| normal_form(&p, Mode::Linear).map(|k| (k, p))).collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for (k, p) in keyed {
        out.entry(k).or_insert(p);
    }
    Ok(out.into_values().collect())
}

type V3 = [i64; 3];

fn det3(a: &V3, b: &V3, c: &V3) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// `u` with `<u, a> = <u, b> = <u, c> = 1` for a unimodular triple.
fn dual(a: &V3, b: &V3, c: &V3) -> V3 {
    let d = det3(a, b, c);
    debug_assert_eq!(d.abs(), 1);
    // Cramer on the rows a, b, c against (1, 1, 1)
    let one = [1, 1, 1];
    let col = |k: usize| -> V3 { [a[k], b[k], c[k]] };
    let (c0, c1, c2) = (col(0), col(1), col(2));
    [det3(&one, &c1, &c2) * d, det3(&c0, &one, &c2) * d, det3(&c0, &c1, &one) * d]
}

fn dot3(a: &V3, b: &V3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[derive(Clone)]
struct Surface {
    verts: Vec<V3>,
    facets: Vec<([usize; 3], V3)>,
    ridges: HashMap<(usize, usize), u8>,
}

impl Surface {
    fn edge(a: usize, b: usize) -> (usize, usize) {
        (a.min(b), a.max(b))
    }

    fn add_facet(&mut self, f: [usize; 3]) {
        let u = dual(&self.verts[f[0]], &self.verts[f[1]], &self.verts[f[2]]);
        for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            *self.ridges.entry(Self::edge(a, b)).or_insert(0) += 1;
        }
        self.facets.push((f, u));
    }

    fn open_ridge(&self) -> Option<(usize, usize, usize)> {
        let (&(a, b), _) = self.ridges.iter().filter(|(_, &n)| n == 1).min()?;
        let (f, _) = self.facets.iter().find(|(f, _)| f.contains(&a) && f.contains(&b)).unwrap();
        let d = *f.iter().find(|&&x| x != a && x != b).unwrap();
        Some((a, b, d))
    }

    /// All vertices strictly below every facet plane they are not on.
    fn supports(&self, u: &V3, on: &[usize]) -> bool {
        self.verts.iter().enumerate().all(|(i, v)| on.contains(&i) || dot3(u, v) < 1)
    }
}

fn search(s: Surface, bound: i64, max_verts: usize, out: &mut Vec<Vec<V3>>) {
    let Some((a, b, d)) = s.open_ridge() else {
        out.push(s.verts.clone());
        return;
    };
    let (va, vb, vd) = (s.verts[a], s.verts[b], s.verts[d]);
    let ud = s.facets.iter().find(|(f, _)| f.contains(&a) && f.contains(&b)).unwrap().1;
    let mut cands: Vec<(Option<usize>, V3)> = Vec::new();
    // across a ridge of a smooth fan: c = -d + x a + y b; convexity gives x + y <= 1
    let r = 3 * bound;
    for x in -r..=r {
        for y in -r..=(1 - x).min(r) {
            let c: V3 = std::array::from_fn(|k| -vd[k] + x * va[k] + y * vb[k]);
            if c.iter().any(|t| t.abs() > bound) || dot3(&ud, &c) >= 1 {
                continue;
            }
            let existing = s.verts.iter().position(|v| *v == c);
            if existing.is_none() && s.verts.len() >= max_verts {
                continue;
            }
            cands.push((existing, c));
        }
    }
    for (existing, c) in cands {
        let mut t = s.clone();
        let ci = match existing {
            Some(i) => i,
            None => {
                // the new vertex must sit strictly inside every facet plane
                if !t.facets.iter().all(|(_, u)| dot3(u, &c) < 1) {
                    continue;
                }
                t.verts.push(c);
                t.verts.len() - 1
            }
        };
        if [a, b, d].contains(&ci) {
            continue;
        }
        let ea = Surface::edge(a, ci);
        let eb = Surface::edge(b, ci);
        if t.ridges.get(&ea).copied().unwrap_or(0) >= 2 || t.ridges.get(&eb).copied().unwrap_or(0) >= 2 {
            continue;
        }
        let mut f = [a, b, ci];
        f.sort();
        if t.facets.iter().any(|(g, _)| *g == f) {
            continue;
        }
        let u = dual(&t.verts[f[0]], &t.verts[f[1]], &t.verts[f[2]]);
        if !t.supports(&u, &f) {
            continue;
        }
        t.add_facet(f);
        search(t, bound, max_verts, out);
    }
}

/// Smooth Fano 3-topes (simplicial, every facet a lattice basis) whose
/// vertices lie in `[-bound, bound]^3` once a facet is moved to
/// `conv{e1, e2, e3}`, one per normal form.
pub fn smooth_fano_3topes(bound: i64, max_verts: usize) -> Result<Vec<Polytope>> {
    let mut s = Surface { verts: vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]], facets: Vec::new(), ridges: HashMap::new() };
    s.add_facet([0, 1, 2]);
    let mut found = Vec::new();
    search(s, bound, max_verts, &mut found);
    let polys: Vec<Polytope> = found
        .into_iter()
        .map(|vs| Polytope::from_vertices(&vs.iter().map(|v| v.to_vec()).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    dedup(polys)
}

/// Polar duals of the smooth Fano 3-topes, kept when reflexive and
/// unimodular.
pub fn unimodular_reflexive_3topes(bound: i64) -> Result<Vec<Polytope>> {
    let mut out = Vec::new();
    for q in smooth_fano_3topes(bound, 12)? {
        let p = q.polar_dual()?;
        if p.is_reflexive() && p.is_unimodular() {
            out.push(p);
        }
    }
    dedup(out)
}
