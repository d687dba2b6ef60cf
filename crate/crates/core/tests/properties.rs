use proptest::prelude::*;

use cracktope::cracked::{is_cracked, wrapping_polyhedron};
use cracktope::fan::{promote, shape, spanning_fan, Fan};
use cracktope::lattice::{self, Matrix};
use cracktope::polytope::shapes;
use cracktope::scaffolding::{admits_mutation, admits_mutation_brute_force};
use cracktope::{normal_form, Mode, Point, Polytope};

fn poly(pts: &[[i64; 3]]) -> Polytope {
    Polytope::from_vertices(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn fixtures() -> Vec<Polytope> {
    vec![
        shapes::cube(3),
        shapes::cross_polytope(3),
        shapes::fano_simplex(3),
        poly(&[[-1, -1, -1], [3, -1, -1], [-1, 3, -1], [-1, -1, 3]]),
        poly(&[[1, 0, 0], [0, 1, 0], [-1, -1, 0], [0, 0, 1], [0, 0, -1]]),
        poly(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 0, 0], [0, -1, 0], [0, 0, -1], [1, 1, 1]]),
    ]
}

/// Product of elementary transvections, a sign change and a transposition.
fn unimodular() -> impl Strategy<Value = Matrix<i64>> {
    (prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 1..7), 0usize..3, 0usize..3).prop_map(|(ops, s, t)| {
        let mut m = Matrix::<i64>::identity(3);
        for (i, j, k) in ops {
            if i == j {
                continue;
            }
            let mut e = Matrix::<i64>::identity(3);
            e[(i, j)] = k;
            m = e.mul(&m);
        }
        let mut d = Matrix::<i64>::identity(3);
        d[(s, s)] = -1;
        m = d.mul(&m);
        m.swap_rows(0, t);
        m
    })
}

fn transform_fan(f: &Fan, a: &Matrix<i64>) -> Fan {
    let g = f.generators.iter().map(|v| a.mul_vec(v)).collect();
    let l = f.lineality.iter().map(|v| a.mul_vec(v)).collect();
    Fan::new(f.ambient_dim, g, f.cones.clone(), l).unwrap()
}

fn fans() -> Vec<Fan> {
    vec![
        promote(&shape("P1").unwrap().fan, 2),
        promote(&shape("P2").unwrap().fan, 1),
        promote(&shape("P1xP1").unwrap().fan, 1),
        spanning_fan(&shapes::cross_polytope(3), true).unwrap(),
        shape("P3").unwrap().fan,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normal_form_gl_invariant(a in unimodular(), k in 0usize..6, t in prop::array::uniform3(-3i64..=3)) {
        let p = &fixtures()[k];
        let q = p.transform(&a);
        prop_assert_eq!(normal_form(p, Mode::Linear).unwrap(), normal_form(&q, Mode::Linear).unwrap());
        let r = q.translate(&t);
        prop_assert_eq!(normal_form(p, Mode::Affine).unwrap(), normal_form(&r, Mode::Affine).unwrap());
    }

    #[test]
    fn polar_involution(k in 0usize..6, a in unimodular()) {
        let p = fixtures()[k].transform(&a);
        let pp = p.polar_dual().unwrap().polar_dual().unwrap();
        let mut v1 = p.vertices().to_vec();
        let mut v2 = pp.vertices().to_vec();
        v1.sort();
        v2.sort();
        prop_assert_eq!(v1, v2);
        prop_assert_eq!(p.is_reflexive(), p.polar_dual().unwrap().is_reflexive());
    }

    #[test]
    fn hnf_shape(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..5)) {
        let m = Matrix::from_rows(rows.clone(), 4);
        let (h, u) = lattice::hnf(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert_eq!(lattice::det(&u).abs(), 1);
        // echelon with positive pivots and reduced entries above them
        let mut last: Option<usize> = None;
        for i in 0..h.nrows() {
            match h.row(i).iter().position(|&x| x != 0) {
                None => prop_assert!((i..h.nrows()).all(|r| h.row(r).iter().all(|&x| x == 0))),
                Some(c) => {
                    prop_assert!(last.is_none_or(|l| c > l));
                    prop_assert!(h[(i, c)] > 0);
                    for r in 0..i {
                        prop_assert!((0..h[(i, c)]).contains(&h[(r, c)]));
                    }
                    last = Some(c);
                }
            }
        }
        prop_assert_eq!(lattice::rank(&h), lattice::rank(&m));
    }

    #[test]
    fn mutation_matches_brute_force(
        pts in prop::collection::vec(prop::array::uniform2(-3i64..=3), 3..7),
        w in prop::array::uniform2(-2i64..=2),
        len in 1i64..=2,
    ) {
        let pts: Vec<Point> = pts.iter().map(|p| p.to_vec()).collect();
        let Ok(p) = Polytope::from_vertices(&pts) else { return Ok(()) };
        prop_assume!(p.is_full_dim() && w != [0, 0] && p.lattice_points().len() <= 60);
        let w = lattice::primitive(&w);
        let f = Polytope::from_vertices(&[vec![0, 0], vec![-w[1] * len, w[0] * len]]).unwrap();
        prop_assert_eq!(admits_mutation(&p, &w, &f).unwrap(), admits_mutation_brute_force(&p, &w, &f).unwrap());
    }

    #[test]
    fn cracked_gl_invariant(k in 0usize..6, j in 0usize..5, a in unimodular()) {
        let p = &fixtures()[k];
        let f = &fans()[j];
        let before = is_cracked(p, f).unwrap().verdict;
        let after = is_cracked(&p.transform(&a), &transform_fan(f, &a)).unwrap().verdict;
        prop_assert_eq!(before, after);
    }

    #[test]
    fn wrapping_contains_polytope(k in 0usize..6, j in 0usize..5) {
        let p = &fixtures()[k];
        let f = &fans()[j];
        // only defined when every ray generator lies in the polytope
        prop_assume!(f.rays().iter().all(|r| p.contains(r)));
        let w = wrapping_polyhedron(p, f).unwrap();
        for x in p.lattice_points() {
            prop_assert!(w.contains(&x));
        }
    }
}
