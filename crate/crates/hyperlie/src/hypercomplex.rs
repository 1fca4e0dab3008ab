//! The standard hypercomplex triple, the neutral metric, the associated
//! Kaehler form and Norden metrics, and the compatibility sign rules.
//!
//! The J matrices are exact small-integer matrices; identity checks in this
//! module demand exact equality, not tolerance. Column j of `J_alpha` is the
//! image of the basis vector `e_j`.

use crate::mat4::{Mat4, Vec4};
use serde::{Deserialize, Serialize};

/// Signs (eps_1, eps_2, eps_3) = (+1, -1, -1): J1 is an isometry of g, J2 and
/// J3 are anti-isometries.
pub const EPS: [f64; 3] = [1.0, -1.0, -1.0];

/// The three almost complex structures J1, J2, J3 with their sign vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypercomplexTriple {
    pub j: [Mat4; 3],
    pub eps: [f64; 3],
}

/// Neutral metric with Gram matrix diag(1, 1, -1, -1), signature (2,2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeutralMetric {
    pub gram: Mat4,
}

impl NeutralMetric {
    pub fn standard() -> Self {
        NeutralMetric { gram: Mat4::diag([1.0, 1.0, -1.0, -1.0]) }
    }

    /// g(x,y) = x^1 y^1 + x^2 y^2 - x^3 y^3 - x^4 y^4 in the standard basis.
    pub fn eval(&self, x: &Vec4, y: &Vec4) -> f64 {
        let mut s = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                s += x[r] * self.gram.e[r][c] * y[c];
            }
        }
        s
    }

    pub fn inverse_gram(&self) -> Mat4 {
        self.gram.inverse().expect("neutral metric Gram matrix is invertible")
    }
}

/// The triple whose columns realize the standard action table:
/// J1: e1->e2, e2->-e1, e3->-e4, e4->e3;
/// J2: e1->e3, e2->e4, e3->-e1, e4->-e2;
/// J3: e1->-e4, e2->e3, e3->-e2, e4->e1.
pub fn standard_triple() -> HypercomplexTriple {
    let j1 = Mat4::new([
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]);
    let j2 = Mat4::new([
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
    ]);
    let j3 = Mat4::new([
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]);
    HypercomplexTriple { j: [j1, j2, j3], eps: EPS }
}

impl HypercomplexTriple {
    /// g_alpha(x,y) = g(J_alpha x, y); alpha is 1-based as in the source.
    pub fn associated_form(&self, alpha: usize, g: &NeutralMetric, x: &Vec4, y: &Vec4) -> f64 {
        g.eval(&self.j[alpha - 1].mul_vec(x), y)
    }

    /// Gram matrix of g_alpha: (G J_alpha) read row-by-row, since
    /// g_alpha(e_i, e_j) = g(J e_i, e_j) = (J^T G)[i][j].
    pub fn associated_gram(&self, alpha: usize, g: &NeutralMetric) -> Mat4 {
        self.j[alpha - 1].transpose() * g.gram
    }

    /// Max over basis pairs of |g(x,y) - eps_alpha g(J x, J y)|; exactly zero
    /// for the standard triple and metric.
    pub fn compatibility_defect(&self, alpha: usize, g: &NeutralMetric) -> f64 {
        let j = &self.j[alpha - 1];
        let mut d = 0.0f64;
        for i in 0..4 {
            for k in 0..4 {
                let x = Vec4::basis(i);
                let y = Vec4::basis(k);
                let lhs = g.eval(&x, &y);
                let rhs = self.eps[alpha - 1] * g.eval(&j.mul_vec(&x), &j.mul_vec(&y));
                d = d.max((lhs - rhs).abs());
            }
        }
        d
    }

    /// Max violation of J_alpha^2 = -E and the quaternionic composition and
    /// anticommutation rules; exactly zero for the standard triple.
    pub fn quaternion_defect(&self) -> f64 {
        let [j1, j2, j3] = self.j;
        let neg_e = -Mat4::identity();
        let mut d = 0.0f64;
        for j in [j1, j2, j3] {
            d = d.max((j * j).max_abs_diff(&neg_e));
        }
        // cyclic compositions
        d = d.max((j1 * j2).max_abs_diff(&j3));
        d = d.max((j2 * j3).max_abs_diff(&j1));
        d = d.max((j3 * j1).max_abs_diff(&j2));
        d = d.max((j2 * j1).max_abs_diff(&-j3));
        d = d.max((j3 * j2).max_abs_diff(&-j1));
        d = d.max((j1 * j3).max_abs_diff(&-j2));
        // anticommutation
        d = d.max((j1 * j2 + j2 * j1).max_abs());
        d = d.max((j2 * j3 + j3 * j2).max_abs());
        d = d.max((j3 * j1 + j1 * j3).max_abs());
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn action_table_spot_checks() {
        let h = standard_triple();
        assert_eq!(h.j[0].mul_vec(&Vec4::basis(0)), Vec4::basis(1)); // J1 e1 = e2
        assert_eq!(h.j[2].mul_vec(&Vec4::basis(3)), Vec4::basis(0)); // J3 e4 = e1
        assert_eq!(h.j[1] * h.j[1], -Mat4::identity()); // J2^2 = -E
    }

    #[test]
    fn quaternion_identities_hold_exactly() {
        assert_eq!(standard_triple().quaternion_defect(), 0.0);
    }

    #[test]
    fn metric_eval_examples() {
        let g = NeutralMetric::standard();
        assert_eq!(g.eval(&Vec4::basis(0), &Vec4::basis(0)), 1.0);
        assert_eq!(g.eval(&Vec4::basis(2), &Vec4::basis(2)), -1.0);
        assert_eq!(g.eval(&Vec4::basis(0), &Vec4::basis(1)), 0.0);
    }

    #[test]
    fn associated_form_examples() {
        let h = standard_triple();
        let g = NeutralMetric::standard();
        // g2(e1,e3) = g(J2 e1, e3) = g(e3,e3) = -1
        assert_eq!(h.associated_form(2, &g, &Vec4::basis(0), &Vec4::basis(2)), -1.0);
        // g3(e1,e1) = g(J3 e1, e1) = g(-e4, e1) = 0
        assert_eq!(h.associated_form(3, &g, &Vec4::basis(0), &Vec4::basis(0)), 0.0);
    }

    #[test]
    fn g1_is_antisymmetric_g2_g3_symmetric_neutral() {
        let h = standard_triple();
        let g = NeutralMetric::standard();
        let g1 = h.associated_gram(1, &g);
        assert_eq!(g1.transpose(), -g1);
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for _ in 0..20 {
            let x = Vec4(std::array::from_fn(|_| rng.gen_range(-2.0..2.0)));
            let y = Vec4(std::array::from_fn(|_| rng.gen_range(-2.0..2.0)));
            let lhs = h.associated_form(1, &g, &x, &y);
            let rhs = -h.associated_form(1, &g, &y, &x);
            assert!((lhs - rhs).abs() <= 1e-12);
        }
        for alpha in [2, 3] {
            let ga = h.associated_gram(alpha, &g);
            assert_eq!(ga.transpose(), ga);
            let sub = crate::lie_algebra::Subspace::full();
            assert_eq!(crate::lie_algebra::signature_on(&sub, &ga), (2, 2, 0));
        }
    }

    #[test]
    fn compatibility_defects_are_exactly_zero() {
        let h = standard_triple();
        let g = NeutralMetric::standard();
        for alpha in 1..=3 {
            assert_eq!(h.compatibility_defect(alpha, &g), 0.0);
        }
    }

    #[test]
    fn broken_triple_is_detected() {
        // Replacing J2 by J1 breaks the anti-isometry sign rule.
        let mut h = standard_triple();
        h.j[1] = h.j[0];
        let g = NeutralMetric::standard();
        assert!(h.compatibility_defect(2, &g) > 0.0);
        assert!(h.quaternion_defect() > 0.0);
    }
}
