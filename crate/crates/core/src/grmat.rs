//! Graded scalar matrices, R-matrices and the coloured Yang-Baxter check.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{b_coeff, rat, Colour, Model, ParamPoint, Rat, C64};

/// Square matrix over C with a Z2 grade per index.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedMatrix {
    grades: Vec<u8>,
    data: Vec<C64>,
}

impl GradedMatrix {
    pub fn zeros(grades: Vec<u8>) -> Self {
        let n = grades.len();
        GradedMatrix { grades, data: vec![C64::zero(); n * n] }
    }

    pub fn identity(grades: Vec<u8>) -> Self {
        let mut m = GradedMatrix::zeros(grades);
        for i in 0..m.n() {
            m.set(i, i, C64::one());
        }
        m
    }

    pub fn from_rows(grades: Vec<u8>, rows: &[Vec<C64>]) -> Self {
        let n = grades.len();
        assert!(rows.len() == n && rows.iter().all(|r| r.len() == n), "shape mismatch");
        GradedMatrix { grades, data: rows.concat() }
    }

    pub fn diag(grades: Vec<u8>, d: &[C64]) -> Self {
        let mut m = GradedMatrix::zeros(grades);
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, *x);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.grades.len()
    }

    pub fn grades(&self) -> &[u8] {
        &self.grades
    }

    pub fn grade(&self, i: usize) -> u8 {
        self.grades[i]
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.n() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        let n = self.n();
        self.data[i * n + j] = v;
    }

    /// Ordinary matrix product; grades are taken from `self`.
    pub fn matmul(&self, o: &GradedMatrix) -> GradedMatrix {
        let n = self.n();
        assert_eq!(n, o.n());
        let mut out = GradedMatrix::zeros(self.grades.clone());
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * o.get(k, j);
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &GradedMatrix) -> GradedMatrix {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        GradedMatrix { grades: self.grades.clone(), data }
    }

    pub fn add(&self, o: &GradedMatrix) -> GradedMatrix {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        GradedMatrix { grades: self.grades.clone(), data }
    }

    pub fn scale(&self, s: C64) -> GradedMatrix {
        GradedMatrix { grades: self.grades.clone(), data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, o: &GradedMatrix) -> f64 {
        self.sub(o).max_abs()
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            let row: Vec<String> = (0..self.n()).map(|j| format!("{:.6}", self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn sign(e: u8) -> f64 {
    if e % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// (A⊗B)_{ij,kl} = (−1)^{π_k(π_j+π_l)} A_{ik} B_{jl}; index (i,j) flattens to i·m + j.
pub fn graded_tensor(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    let (n, m) = (a.n(), b.n());
    let grades = (0..n * m).map(|x| (a.grade(x / m) + b.grade(x % m)) % 2).collect();
    let mut out = GradedMatrix::zeros(grades);
    for i in 0..n {
        for j in 0..m {
            for k in 0..n {
                let aik = a.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for l in 0..m {
                    let s = sign(a.grade(k) * (b.grade(j) + b.grade(l)));
                    out.set(i * m + j, k * m + l, aik * b.get(j, l) * s);
                }
            }
        }
    }
    out
}

/// Defining-representation grades: (0,0) for gl(2), (0,1) for gl(1|1).
pub fn defining_grades(model: Model) -> Vec<u8> {
    match model {
        Model::Gl2 => vec![0, 0],
        Model::Gl11 => vec![0, 1],
    }
}

/// Standard R-matrix, written out entry by entry.
pub fn r_matrix(model: Model, pt: &ParamPoint) -> GradedMatrix {
    let (q, p) = (pt.big_q(), pt.big_p());
    let g = defining_grades(model);
    let grades = (0..4).map(|x| (g[x / 2] + g[x % 2]) % 2).collect();
    let mut r = GradedMatrix::zeros(grades);
    let (s, d, off) = match model {
        Model::Gl2 => (q.sqrt(), [q.inv(), p.inv(), p, q.inv()], q.inv() - q),
        Model::Gl11 => (Complex64::new(1.0, 0.0), [q, p.inv(), p, q.inv()], q - q.inv()),
    };
    for (i, v) in d.iter().enumerate() {
        r.set(i, i, s * v);
    }
    r.set(1, 2, s * off);
    r
}

pub fn coloured_r_matrix(model: Model, pt: &ParamPoint, lambda: Colour, mu: Colour) -> Result<GradedMatrix> {
    if pt.model() != model {
        return Err(Error::ModelMismatch(pt.model(), model));
    }
    let (l, m) = (lambda.value(), mu.value());
    let h = rat(1, 2);
    let qp = |a: Rat, b: Rat| pt.mono(a, b);
    let z = Rat::zero();
    let one = Rat::one();
    let q = pt.big_q();
    let g = defining_grades(model);
    let mut r = GradedMatrix::zeros(vec![0; 4]);
    match model {
        Model::Gl2 => {
            let s = qp(h, z);
            r.set(0, 0, s * qp(-one, (l - m) * h));
            r.set(1, 1, s * qp(z, -(l + m) * h));
            r.set(1, 2, s * (q.inv() - q));
            r.set(2, 2, s * qp(z, (l + m) * h));
            r.set(3, 3, s * qp(-one, -(l - m) * h));
        }
        Model::Gl11 => {
            r.set(0, 0, qp((l + m) * h, (l - m) * h));
            r.set(1, 1, qp(-(l - m) * h, -(l + m) * h));
            r.set(1, 2, qp(-(l - m) * h, z) * b_coeff(lambda, mu, pt)?);
            r.set(2, 2, qp((l - m) * h, (l + m) * h));
            r.set(3, 3, qp(-(l + m) * h, -(l - m) * h));
        }
    }
    let grades = (0..4).map(|x| (g[x / 2] + g[x % 2]) % 2).collect();
    Ok(GradedMatrix { grades, data: r.data })
}

/// Signed permutation exchanging tensor slots 2 and 3 of a triple product.
fn swap23(g: &[u8]) -> GradedMatrix {
    let n = g.len();
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let grades = (0..n * n * n).map(|x| (g[x / (n * n)] + g[(x / n) % n] + g[x % n]) % 2).collect();
    let mut p = GradedMatrix::zeros(grades);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                p.set(idx(i, j, k), idx(i, k, j), Complex64::new(sign(g[j] * g[k]), 0.0));
            }
        }
    }
    p
}

/// Embeddings R_12, R_13, R_23 of a two-site matrix into the triple space.
pub fn embed_triple(r12: &GradedMatrix, r13: &GradedMatrix, r23: &GradedMatrix, g: &[u8]) -> [GradedMatrix; 3] {
    let id = GradedMatrix::identity(g.to_vec());
    let a = graded_tensor(r12, &id);
    let p = swap23(g);
    let b = p.matmul(&graded_tensor(r13, &id)).matmul(&p);
    let c = graded_tensor(&id, r23);
    [a, b, c]
}

/// max |R^{λμ}_{12} R^{λν}_{13} R^{μν}_{23} − R^{μν}_{23} R^{λν}_{13} R^{λμ}_{12}|.
pub fn coloured_ybe_residual(model: Model, pt: &ParamPoint, lambda: Colour, mu: Colour, nu: Colour) -> Result<f64> {
    let g = defining_grades(model);
    let [r12, r13, r23] = embed_triple(
        &coloured_r_matrix(model, pt, lambda, mu)?,
        &coloured_r_matrix(model, pt, lambda, nu)?,
        &coloured_r_matrix(model, pt, mu, nu)?,
        &g,
    );
    let lhs = r12.matmul(&r13).matmul(&r23);
    let rhs = r23.matmul(&r13).matmul(&r12);
    Ok(lhs.max_abs_diff(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::c;
    use proptest::prelude::*;

    fn m2(g: Vec<u8>, a: [[f64; 2]; 2]) -> GradedMatrix {
        GradedMatrix::from_rows(g, &[vec![c(a[0][0]), c(a[0][1])], vec![c(a[1][0]), c(a[1][1])]])
    }

    fn pt(model: Model) -> ParamPoint {
        ParamPoint::new(model, C64::new(0.23, 0.61), C64::new(-0.44, 0.17))
    }

    #[test]
    fn ungraded_tensor_is_kronecker() {
        let a = m2(vec![0, 0], [[1.0, 2.0], [3.0, 4.0]]);
        let b = m2(vec![0, 0], [[0.5, -1.0], [2.0, 7.0]]);
        let t = graded_tensor(&a, &b);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(t.get(x, y), a.get(x / 2, y / 2) * b.get(x % 2, y % 2));
            }
        }
    }

    #[test]
    fn special_embeddings() {
        let a = m2(vec![0, 1], [[1.0, 2.0], [3.0, 4.0]]);
        let id = GradedMatrix::identity(vec![0, 1]);
        let left = graded_tensor(&a, &id);
        let right = graded_tensor(&id, &a);
        for x in 0..4 {
            for y in 0..4 {
                let (i, j, k, l) = (x / 2, x % 2, y / 2, y % 2);
                let d = |p: usize, q: usize| if p == q { 1.0 } else { 0.0 };
                assert_eq!(left.get(x, y), a.get(i, k) * d(j, l));
                let s = sign(a.grade(i) * (a.grade(j) + a.grade(l)));
                assert_eq!(right.get(x, y), a.get(j, l) * d(i, k) * s);
            }
        }
        // (I⊗A)_{21,22} with one-based labels
        assert_eq!(right.get(2, 3), -a.get(0, 1));
    }

    #[test]
    fn r_matrix_entries() {
        let g = pt(Model::Gl2);
        let q = g.big_q();
        let r = r_matrix(Model::Gl2, &g);
        assert!((r.get(1, 2) - q.sqrt() * (q.inv() - q)).norm() < 1e-13);
        let classical = ParamPoint::new(Model::Gl2, C64::zero(), C64::zero());
        let id = GradedMatrix::identity(vec![0; 4]);
        assert!(r_matrix(Model::Gl2, &classical).max_abs_diff(&id) < 1e-15);
        let s = pt(Model::Gl11);
        assert!((r_matrix(Model::Gl11, &s).get(0, 0) - s.big_q()).norm() < 1e-14);
        assert!((r_matrix(Model::Gl11, &s).get(1, 2) - (s.big_q() - s.big_q().inv())).norm() < 1e-13);
        assert_eq!(r_matrix(Model::Gl11, &s).grades(), &[0, 1, 1, 0]);
    }

    #[test]
    fn coloured_entries() {
        let g = pt(Model::Gl2);
        let (l, m) = (Colour::int(2), Colour::frac(-1, 2));
        let r = coloured_r_matrix(Model::Gl2, &g, l, m).unwrap();
        let want = g.big_q().sqrt() / g.big_q() * (g.theta() * 1.25).exp();
        assert!((r.get(0, 0) - want).norm() < 1e-13);
        let s = pt(Model::Gl11);
        let r = coloured_r_matrix(Model::Gl11, &s, l, m).unwrap();
        let want = (-s.phi() * 1.25).exp() * b_coeff(l, m, &s).unwrap();
        assert!((r.get(1, 2) - want).norm() < 1e-13);
    }

    #[test]
    fn ybe_at_classical_point_is_zero() {
        let classical = ParamPoint::new(Model::Gl2, C64::zero(), C64::zero());
        let one = Colour::ONE;
        assert_eq!(coloured_ybe_residual(Model::Gl2, &classical, one, one, one).unwrap(), 0.0);
    }

    #[test]
    fn ybe_examples() {
        let (a, b, h) = (Colour::int(2), Colour::int(-1), Colour::frac(1, 2));
        assert!(coloured_ybe_residual(Model::Gl2, &pt(Model::Gl2), a, b, h).unwrap() < 1e-9);
        let (x, y, z) = (Colour::int(1), Colour::int(2), Colour::int(3));
        assert!(coloured_ybe_residual(Model::Gl11, &pt(Model::Gl11), x, y, z).unwrap() < 1e-9);
    }

    proptest! {
        #[test]
        fn tensor_is_associative(v in prop::collection::vec(-3.0f64..3.0, 12), ga in 0u8..2, gb in 0u8..2) {
            let g = vec![ga, gb];
            let a = m2(g.clone(), [[v[0], v[1]], [v[2], v[3]]]);
            let b = m2(g.clone(), [[v[4], v[5]], [v[6], v[7]]]);
            let cm = m2(g, [[v[8], v[9]], [v[10], v[11]]]);
            let l = graded_tensor(&graded_tensor(&a, &b), &cm);
            let r = graded_tensor(&a, &graded_tensor(&b, &cm));
            prop_assert!(l.max_abs_diff(&r) < 1e-12);
        }

        #[test]
        fn uncoloured_ybe_holds(tr in -1.0f64..1.0, ti in -1.0f64..1.0, fr in -1.0f64..1.0, fi in -1.0f64..1.0) {
            for model in [Model::Gl2, Model::Gl11] {
                let p = ParamPoint::new(model, C64::new(tr, ti), C64::new(fr, fi));
                let one = Colour::ONE;
                prop_assert!(coloured_ybe_residual(model, &p, one, one, one).unwrap() < 1e-9);
            }
        }
    }
}
