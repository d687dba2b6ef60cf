//! Weight data, stability conditions, irrelevant loci, and the binomial
//! equations of the embedded toric variety.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{self, Matrix};
use crate::polytope::Point;
use crate::scaffolding::{basis_struts, build_ambient, column_order, column_vector, Column, Scaffolding};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightPresentation {
    /// `r x columns`, echelon shape `(I_r | -chi | D)`.
    pub r: Matrix<i64>,
    pub columns: Vec<Column>,
    pub omega: Vec<i64>,
    /// Minimal column sets `I` with `omega` in the cone over `R_I`.
    pub irrelevant: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialEquation {
    pub m1: Vec<i64>,
    pub m2: Vec<i64>,
    pub degree: Vec<i64>,
}

impl BinomialEquation {
    /// `z^{m1} - z^{m2}` with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        let mono = |m: &[i64]| {
            let s: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            if s.is_empty() {
                "1".to_string()
            } else {
                s.join("*")
            }
        };
        format!("{} - {}", mono(&self.m1), mono(&self.m2))
    }

    pub fn difference(&self) -> Vec<i64> {
        self.m1.iter().zip(&self.m2).map(|(a, b)| a - b).collect()
    }
}

/// Default names: `x<i>` for struts, `u<j>` for basis struts, `z<k>` for the
/// divisor axes.
pub fn column_names(cols: &[Column]) -> Vec<String> {
    cols.iter()
        .map(|c| match c {
            Column::Strut(i) => format!("x{i}"),
            Column::Basis(i) => format!("u{i}"),
            Column::Axis(k) => format!("z{k}"),
        })
        .collect()
}

fn in_cone(cols: &[Point], omega: &[i64]) -> bool {
    Cone::from_generators(cols, &[], omega.len()).contains(omega)
}

/// Minimal index sets whose columns span a cone containing `omega`.
pub fn irrelevant_sets(r: &Matrix<i64>, omega: &[i64]) -> Vec<Vec<usize>> {
    let k = r.nrows();
    let cols: Vec<Point> = (0..r.ncols()).map(|j| r.column(j)).collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for size in 1..=k {
        for set in (0..cols.len()).combinations(size) {
            if out.iter().any(|m| m.iter().all(|i| set.contains(i))) {
                continue;
            }
            let g: Vec<Point> = set.iter().map(|&j| cols[j].clone()).collect();
            if in_cone(&g, omega) {
                out.push(set);
            }
        }
    }
    out
}

pub fn weights(s: &Scaffolding) -> Result<WeightPresentation> {
    let basis = basis_struts(s)?;
    let columns = column_order(s)?;
    let u = s.unipotent_dim;
    let l = s.shape.num_rays();
    let others: Vec<usize> = (0..s.struts.len()).filter(|i| !basis.contains(i)).collect();
    let rr = others.len();
    // chi_i in the chosen basis: B c = chi_i
    let bmat = Matrix::from_rows(basis.iter().map(|&i| s.struts[i].chi.clone()).collect(), u).transpose();
    let binv = if u > 0 { Some(lattice::inverse_unimodular(&bmat).ok_or(Error::BasisCondition)?) } else { None };
    let mut r = Matrix::<i64>::zeros(rr, columns.len());
    for (row, &i) in others.iter().enumerate() {
        let st = &s.struts[i];
        r[(row, row)] = 1;
        if let Some(binv) = &binv {
            let c = binv.mul_vec(&st.chi);
            for j in 0..u {
                r[(row, rr + j)] = -c[j];
            }
        }
        for k in 0..l {
            r[(row, rr + u + k)] = st.divisor[k];
        }
    }
    // the polarisation: all rays coming from struts
    let omega: Vec<i64> = (0..rr).map(|row| (0..rr + u).map(|j| r[(row, j)]).sum()).collect();
    let irrelevant = irrelevant_sets(&r, &omega);
    Ok(WeightPresentation { r, columns, omega, irrelevant })
}

/// Shape a product of projective spaces: one binomial per factor.
pub fn binomials_product_shape(s: &Scaffolding) -> Result<Vec<BinomialEquation>> {
    let factors = s.shape.factors.clone().ok_or(Error::NotProductShape)?;
    let w = weights(s)?;
    let rr = w.r.nrows();
    let ncols = w.columns.len();
    let mut out = Vec::new();
    for blk in factors {
        let mut m1 = vec![0; ncols];
        for &k in &blk {
            let j = w.columns.iter().position(|c| *c == Column::Axis(k)).unwrap();
            m1[j] = 1;
        }
        let degree = w.r.mul_vec(&m1);
        if degree.iter().any(|&d| d < 0) {
            return Err(Error::InvalidParameters("factor degree has no effective lift to the strut block".into()));
        }
        let mut m2 = vec![0; ncols];
        m2[..rr].copy_from_slice(&degree);
        out.push(BinomialEquation { m1, m2, degree });
    }
    Ok(out)
}

/// One binomial per basis covector of the annihilator of the image of
/// `theta`, read off on the columns of the ray matrix.
pub fn binomials_general(s: &Scaffolding) -> Result<Vec<BinomialEquation>> {
    let amb = build_ambient(s)?;
    let w = weights(s)?;
    let ann = lattice::kernel_basis(&amb.theta.transpose()).to_rows();
    let cols: Vec<Point> = w.columns.iter().map(|&c| column_vector(s, c)).collect();
    Ok(ann
        .iter()
        .map(|a| {
            let h: Vec<i64> = cols.iter().map(|c| lattice::dot(a, c)).collect();
            let m1: Vec<i64> = h.iter().map(|&x| x.max(0)).collect();
            let m2: Vec<i64> = h.iter().map(|&x| (-x).max(0)).collect();
            let degree = w.r.mul_vec(&m1);
            BinomialEquation { m1, m2, degree }
        })
        .collect())
}

/// Hermite basis of the lattice spanned by `m1 - m2`.
pub fn exponent_lattice(eqs: &[BinomialEquation], ncols: usize) -> Matrix<i64> {
    if eqs.is_empty() {
        return Matrix::zeros(0, ncols);
    }
    let m = Matrix::from_rows(eqs.iter().map(|e| e.difference()).collect(), ncols);
    let (h, _) = lattice::hnf(&m);
    let k = lattice::rank(&m);
    h.select_rows(&(0..k).collect::<Vec<_>>())
}

/// Same lattice ideal: equal exponent lattices.
pub fn same_lattice_ideal(a: &[BinomialEquation], b: &[BinomialEquation], ncols: usize) -> bool {
    exponent_lattice(a, ncols) == exponent_lattice(b, ncols)
}

/// Column permutation that sorts the columns of `r` lexicographically; used
/// to compare weight matrices up to column order.
pub fn sorted_columns(r: &Matrix<i64>) -> Vec<Point> {
    let mut cols: Vec<Point> = (0..r.ncols()).map(|j| r.column(j)).collect();
    cols.sort();
    cols
}

/// Aligned text table with a header of column names.
pub fn render_table(w: &WeightPresentation, names: &[String]) -> String {
    let width = names.iter().map(|n| n.len()).max().unwrap_or(1).max(3);
    let mut out = String::new();
    out.push_str(&names.iter().map(|n| format!("{n:>width$}")).join(" "));
    out.push('\n');
    for i in 0..w.r.nrows() {
        out.push_str(&w.r.row(i).iter().map(|x| format!("{x:>width$}")).join(" "));
        out.push('\n');
    }
    out.push_str(&format!("omega = ({})\n", w.omega.iter().join(", ")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaffolding::fixtures;

    fn ones_at(n: usize, idx: &[usize], val: i64) -> Vec<i64> {
        let mut v = vec![0; n];
        for &i in idx {
            v[i] += val;
        }
        v
    }

    #[test]
    fn dp6_weights() {
        let s = fixtures::dp6();
        let w = weights(&s).unwrap();
        assert_eq!(w.r.to_rows(), vec![vec![1, 0, 1, 0, 1, 0], vec![0, 1, 0, 1, 0, 1]]);
        assert_eq!(w.omega, vec![1, 1]);
        assert_eq!(w.irrelevant.len(), 9);
        let amb = build_ambient(&s).unwrap();
        assert!(w.r.mul(&amb.ray_matrix.transpose()).is_zero());
    }

    #[test]
    fn dp6_binomials() {
        let s = fixtures::dp6();
        let p = binomials_product_shape(&s).unwrap();
        // columns: x0 x1 z0 z1 z2 z3; z0 z1 - x0 x1 and z2 z3 - x0 x1
        assert_eq!(p[0].m1, ones_at(6, &[2, 3], 1));
        assert_eq!(p[0].m2, ones_at(6, &[0, 1], 1));
        assert_eq!(p[1].m1, ones_at(6, &[4, 5], 1));
        let g = binomials_general(&s).unwrap();
        assert_eq!(g.len(), 2);
        assert!(same_lattice_ideal(&p, &g, 6));
        for e in p.iter().chain(&g) {
            assert_eq!(weights(&s).unwrap().r.mul_vec(&e.m2), e.degree);
        }
    }

    #[test]
    fn b2_weights() {
        let w = weights(&fixtures::b2()).unwrap();
        assert_eq!(w.r.to_rows(), vec![vec![1, 1, 1, 2, 1]]);
        let mut row = w.r.row(0).to_vec();
        row.sort();
        assert_eq!(row, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn quadric_binomial() {
        let s = fixtures::quadric();
        let b = binomials_product_shape(&s).unwrap();
        assert_eq!(b.len(), 1);
        let w = weights(&s).unwrap();
        let names = column_names(&w.columns);
        assert_eq!(b[0].render(&names), "z0*z1 - x2^2");
    }

    #[test]
    fn mm_2_18() {
        let s = fixtures::mm_2_18();
        let w = weights(&s).unwrap();
        let printed = Matrix::from_rows(vec![vec![1, 0, 0, 0, 1, 1], vec![0, 1, 1, 1, 0, 1]], 6);
        assert_eq!(sorted_columns(&w.r), sorted_columns(&printed));
        let b = binomials_product_shape(&s).unwrap();
        assert_eq!(b[0].m1.iter().sum::<i64>(), 3);
        assert_eq!(b[0].m2[..2], [2, 2]);
        // the polarising class of the construction
        assert_eq!(w.omega, vec![1, 2]);
    }

    #[test]
    fn anticanonical_single_row() {
        let s = fixtures::anticanonical(&crate::polytope::shapes::cube(3)).unwrap();
        let w = weights(&s).unwrap();
        assert_eq!(w.r.to_rows(), vec![vec![1; 7]]);
        assert_eq!(w.omega, vec![1]);
        let g = binomials_general(&s).unwrap();
        assert_eq!(g.len(), 3);
        for e in &g {
            assert_eq!(w.r.mul_vec(&e.m1), w.r.mul_vec(&e.m2));
        }
    }
}
