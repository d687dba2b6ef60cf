//! Double description: extreme rays of pointed cones `{x : A x >= 0}` and the
//! derived V/H conversions for polyhedra. Arithmetic is checked `i64`.

use crate::error::{Error, Result};
use crate::lattice::{self, Matrix};

/// Fixed-size bit set over constraint indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    pub fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    pub fn is_superset(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    lattice::dot(a, b)
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    lattice::primitive(v)
}

/// Indices of a maximal linearly independent subset of rows (greedy, in order).
pub fn independent_rows(rows: &[Vec<i64>], d: usize) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<i128>)> = Vec::new(); // (pivot col, reduced row)
    let mut picked = Vec::new();
    for (idx, r) in rows.iter().enumerate() {
        let mut v: Vec<i128> = r.iter().map(|&x| x as i128).collect();
        for (p, b) in &basis {
            if v[*p] != 0 {
                let (a, c) = (b[*p], v[*p]);
                for j in 0..d {
                    v[j] = v[j].checked_mul(a).unwrap() - b[j].checked_mul(c).unwrap();
                }
                let g = v.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                if g > 1 {
                    v.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            basis.push((p, v));
            picked.push(idx);
            if picked.len() == d {
                break;
            }
        }
    }
    picked
}

pub struct Rays {
    pub rays: Vec<Vec<i64>>,
    /// `tight[i]` = constraints vanishing on ray `i`
    pub tight: Vec<Bits>,
}

/// Extreme rays of `{x in R^d : a.x >= 0 for a in constraints}`. Returns `None`
/// if the cone is not pointed (the constraints have rank < d).
pub fn extreme_rays(constraints: &[Vec<i64>], d: usize) -> Option<Rays> {
    let m = constraints.len();
    let basis = independent_rows(constraints, d);
    if basis.len() < d {
        return None;
    }
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut tight: Vec<Bits> = Vec::new();
    for j in 0..d {
        let others: Vec<Vec<i64>> =
            basis.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &r)| constraints[r].clone()).collect();
        let r = if d == 1 {
            vec![1]
        } else {
            let k = lattice::kernel_basis(&Matrix::from_rows(others, d));
            debug_assert_eq!(k.nrows(), 1);
            k.row(0).to_vec()
        };
        let s = dot(&constraints[basis[j]], &r);
        let r = if s < 0 { r.iter().map(|x| -x).collect() } else { r };
        let mut t = Bits::new(m);
        for (i, &b) in basis.iter().enumerate() {
            if i != j {
                t.set(b);
            }
        }
        rays.push(r);
        tight.push(t);
    }
    let in_basis: Vec<bool> = (0..m).map(|i| basis.contains(&i)).collect();
    for (ci, a) in constraints.iter().enumerate() {
        if in_basis[ci] {
            continue;
        }
        let vals: Vec<i64> = rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        let mut new_rays = Vec::new();
        let mut new_tight = Vec::new();
        for i in 0..rays.len() {
            if vals[i] >= 0 {
                let mut t = tight[i].clone();
                if vals[i] == 0 {
                    t.set(ci);
                }
                new_rays.push(rays[i].clone());
                new_tight.push(t);
            }
        }
        let need = d.saturating_sub(2);
        for &p in &pos {
            for &q in &neg {
                let common = tight[p].and(&tight[q]);
                if common.count() < need {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|o| o == p || o == q || !tight[o].is_superset(&common));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (vals[p], -vals[q]);
                let r: Vec<i64> = rays[p]
                    .iter()
                    .zip(&rays[q])
                    .map(|(&x, &y)| {
                        (vq as i128 * x as i128 + vp as i128 * y as i128).try_into().expect("integer overflow")
                    })
                    .collect();
                let r = primitive(&r);
                let mut t = common;
                t.set(ci);
                new_rays.push(r);
                new_tight.push(t);
            }
        }
        rays = new_rays;
        tight = new_tight;
    }
    Some(Rays { rays, tight })
}

/// A vertex `num / den` with `den > 0` and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoint {
    pub num: Vec<i64>,
    pub den: i64,
}

impl QPoint {
    pub fn new(num: Vec<i64>, den: i64) -> Self {
        assert!(den != 0);
        let g = num.iter().fold(den, |g, &x| num_integer::gcd(g, x)).abs();
        let s = if den < 0 { -1 } else { 1 };
        QPoint { num: num.iter().map(|x| s * x / g).collect(), den: s * den / g }
    }
    pub fn is_integral(&self) -> bool {
        self.den == 1
    }
}

pub struct HResult {
    pub vertices: Vec<QPoint>,
    /// `incidence[i]` = inequalities tight at vertex `i`
    pub incidence: Vec<Bits>,
}

/// Vertices of the polytope `{x : <n, x> >= b}`. Errors with `Unbounded` if the
/// set is unbounded (including when the normals do not span) and `Empty` if
/// it is empty.
pub fn h_to_v(ineqs: &[(Vec<i64>, i64)], d: usize) -> Result<HResult> {
    let mut cons: Vec<Vec<i64>> = ineqs
        .iter()
        .map(|(n, b)| {
            let mut r = n.clone();
            r.push(-b);
            r
        })
        .collect();
    let mut t = vec![0; d + 1];
    t[d] = 1;
    cons.push(t);
    let rays = extreme_rays(&cons, d + 1).ok_or(Error::Unbounded)?;
    let mut vertices = Vec::new();
    let mut incidence = Vec::new();
    let mut any_recession = false;
    for (r, tight) in rays.rays.iter().zip(&rays.tight) {
        if r[d] == 0 {
            any_recession = true;
            continue;
        }
        vertices.push(QPoint::new(r[..d].to_vec(), r[d]));
        let mut inc = Bits::new(ineqs.len());
        for i in tight.ones() {
            if i < ineqs.len() {
                inc.set(i);
            }
        }
        incidence.push(inc);
    }
    if vertices.is_empty() {
        return Err(Error::Empty);
    }
    if any_recession {
        return Err(Error::Unbounded);
    }
    Ok(HResult { vertices, incidence })
}

/// Facets `(n, b)` (meaning `<n, x> >= b / den`, `n` primitive) of the convex
/// hull of the full-dimensional point set `pts / den`, i.e. of `den * P` when
/// the offsets are read as integers.
pub fn v_to_h(pts: &[Vec<i64>], d: usize) -> Option<Vec<(Vec<i64>, i64)>> {
    let cons: Vec<Vec<i64>> = pts
        .iter()
        .map(|p| {
            let mut r = p.clone();
            r.push(1);
            r
        })
        .collect();
    let rays = extreme_rays(&cons, d + 1)?;
    let mut out: Vec<(Vec<i64>, i64)> = rays
        .rays
        .iter()
        .map(|r| {
            let n = primitive(&r[..d]);
            let g = lattice::gcd_all(&r[..d]);
            // offset = -beta / g; exact when the hull is a lattice polytope scaled
            // by den, since beta = -<n, v> on the facet
            let beta = r[d];
            debug_assert_eq!(beta % g, 0);
            (n, -beta / g)
        })
        .collect();
    out.sort();
    out.dedup();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_vertices() {
        let ineqs = vec![(vec![1, 0], -1), (vec![-1, 0], -1), (vec![0, 1], -1), (vec![0, -1], -1)];
        let mut v: Vec<_> = h_to_v(&ineqs, 2).unwrap().vertices.into_iter().map(|q| q.num).collect();
        v.sort();
        assert_eq!(v, vec![vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1]]);
    }

    #[test]
    fn unbounded_and_empty() {
        assert_eq!(h_to_v(&[(vec![1, 0], 0), (vec![0, 1], 0)], 2).err(), Some(Error::Unbounded));
        assert_eq!(h_to_v(&[(vec![1], 1), (vec![-1], 0)], 1).err(), Some(Error::Empty));
        assert_eq!(h_to_v(&[(vec![1, 0], 0), (vec![-1, 0], -1)], 2).err(), Some(Error::Unbounded));
    }

    #[test]
    fn octahedron_facets() {
        let pts = vec![
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ];
        let f = v_to_h(&pts, 3).unwrap();
        assert_eq!(f.len(), 8);
        assert!(f.iter().all(|(n, b)| *b == -1 && n.iter().all(|x| x.abs() == 1)));
    }
}
