//! Rational polyhedral cones with both descriptions.

use serde::{Deserialize, Serialize};

use crate::dd;
use crate::lattice::{self, Matrix};
use crate::polytope::Point;

/// A cone `lineality + cone(generators)`, equivalently
/// `{x : <h, x> >= 0 for h in halfspaces, <e, x> = 0 for e in equations}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub ambient_dim: usize,
    /// Primitive generators of the pointed part (modulo the lineality space).
    pub generators: Vec<Point>,
    /// Saturated basis of the maximal linear subspace.
    pub lineality: Vec<Point>,
    /// Irredundant inner facet normals.
    pub halfspaces: Vec<Point>,
    /// Saturated basis of the orthogonal complement of the linear span.
    pub equations: Vec<Point>,
}

fn saturated_span(vs: &[Point], n: usize) -> Vec<Point> {
    if vs.is_empty() {
        return Vec::new();
    }
    lattice::saturated_row_span(&Matrix::from_rows(vs.to_vec(), n)).to_rows()
}

fn kernel_rows(vs: &[Point], n: usize) -> Vec<Point> {
    if vs.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    lattice::kernel_basis(&Matrix::from_rows(vs.to_vec(), n)).to_rows()
}

pub(crate) fn unit(n: usize, i: usize) -> Point {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

fn push_both(out: &mut Vec<Point>, v: &Point) {
    out.push(v.clone());
    out.push(v.iter().map(|x| -x).collect());
}

impl Cone {
    pub fn from_generators(gens: &[Point], lineality: &[Point], n: usize) -> Cone {
        let lineality = saturated_span(lineality, n);
        let mut generators: Vec<Point> =
            gens.iter().filter(|g| g.iter().any(|&x| x != 0)).map(|g| dd::primitive(g)).collect();
        generators.sort();
        generators.dedup();
        let mut span_gens = generators.clone();
        span_gens.extend(lineality.iter().cloned());
        let equations = kernel_rows(&span_gens, n);
        let mut cons = generators.clone();
        for v in lineality.iter().chain(&equations) {
            push_both(&mut cons, v);
        }
        let mut halfspaces: Vec<Point> = dd::extreme_rays(&cons, n)
            .map(|r| r.rays.iter().map(|v| dd::primitive(v)).collect())
            .unwrap_or_default();
        halfspaces.sort();
        halfspaces.dedup();
        Cone { ambient_dim: n, generators, lineality, halfspaces, equations }
    }

    pub fn from_halfspaces(normals: &[Point], equations: &[Point], n: usize) -> Cone {
        let mut all = normals.to_vec();
        all.extend(equations.iter().cloned());
        let lineality = kernel_rows(&all, n);
        let mut cons = normals.to_vec();
        for v in equations.iter().chain(&lineality) {
            push_both(&mut cons, v);
        }
        let rays = dd::extreme_rays(&cons, n).expect("cone constraints span by construction");
        let mut generators: Vec<Point> = rays.rays.iter().map(|r| dd::primitive(r)).collect();
        generators.sort();
        generators.dedup();
        let eqs = saturated_span(equations, n);
        let dim = n - eqs.len();
        // keep the normals that cut out a facet
        let mut halfspaces: Vec<Point> = normals
            .iter()
            .filter(|a| {
                let mut on: Vec<Point> = generators.iter().filter(|g| dd::dot(a, g) == 0).cloned().collect();
                on.extend(lineality.iter().cloned());
                let r = dd::independent_rows(&on, n).len();
                r + 1 == dim && generators.iter().any(|g| dd::dot(a, g) > 0)
            })
            .map(|a| dd::primitive(a))
            .collect();
        halfspaces.sort();
        halfspaces.dedup();
        Cone { ambient_dim: n, generators, lineality, halfspaces, equations: eqs }
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.halfspaces.iter().all(|h| dd::dot(h, x) >= 0) && self.equations.iter().all(|e| dd::dot(e, x) == 0)
    }

    pub fn contains_in_relative_interior(&self, x: &[i64]) -> bool {
        self.halfspaces.iter().all(|h| dd::dot(h, x) > 0) && self.equations.iter().all(|e| dd::dot(e, x) == 0)
    }

    /// Simplicial with generators extending to a lattice basis of the quotient
    /// by the lineality space.
    pub fn is_unimodular(&self) -> bool {
        let n = self.ambient_dim;
        let k = self.lineality.len();
        let gens: Vec<Point> = if k == 0 {
            self.generators.clone()
        } else {
            let l = Matrix::from_rows(self.lineality.clone(), n);
            let u = lattice::complete_basis(&l).expect("lineality basis is saturated");
            let uinv = lattice::inverse_unimodular(&u).unwrap();
            self.generators
                .iter()
                .map(|g| {
                    // coordinates y with y u = g are g u^{-1}
                    let y: Vec<i64> = (0..n).map(|j| (0..n).map(|i| g[i] * uinv[(i, j)]).sum()).collect();
                    dd::primitive(&y[k..])
                })
                .collect()
        };
        if gens.len() + k != self.dim() {
            return false;
        }
        lattice::is_unimodular_generators(&gens).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_both_ways() {
        let c = Cone::from_generators(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[], 3);
        assert_eq!(c.halfspaces, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert!(c.is_unimodular());
        let d = Cone::from_halfspaces(&c.halfspaces, &[], 3);
        assert_eq!(d.generators, c.generators);
    }

    #[test]
    fn halfplane_with_lineality() {
        let c = Cone::from_halfspaces(&[vec![1, -1]], &[], 2);
        assert_eq!(c.lineality.len(), 1);
        assert_eq!(c.generators.len(), 1);
        assert!(c.is_unimodular());
        assert!(c.contains(&[1, 0]) && !c.contains(&[0, 1]));
    }

    #[test]
    fn non_unimodular_cone() {
        let c = Cone::from_generators(&[vec![1, 0], vec![1, 2]], &[], 2);
        assert!(!c.is_unimodular());
    }

    #[test]
    fn whole_space() {
        let c = Cone::from_generators(&[], &[vec![1, 0], vec![0, 1]], 2);
        assert!(c.halfspaces.is_empty());
        assert!(c.contains(&[5, -3]));
    }
}
