//! Fixed-size 4x4 real linear algebra.
//!
//! Indexing convention, used identically by every module in this crate:
//! `m.e[r][c]` is the entry in row `r`, column `c` (0-based), and matrices act
//! on column vectors from the left, `(M v)_r = sum_c M[r][c] v[c]`. The
//! convention for reading basis matrices off structure constants lives in
//! [`crate::lie_algebra`] and is pinned by tests against known integer
//! matrices.
//!
//! [`Mat4::exp_series`] is the project-wide oracle for every closed-form
//! exponential: scaling-and-squaring plus a truncated Taylor series.

use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Maximum number of Taylor terms before `exp_series` reports non-convergence.
const EXP_MAX_TERMS: usize = 120;

/// Dense 4x4 real matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat4 {
    pub e: [[f64; 4]; 4],
}

/// Real 4-vector, components indexed 0..4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec4(pub [f64; 4]);

/// Polynomial c0 + c1 x + c2 x^2 + c3 x^3 + c4 x^4.
///
/// Produced monic (c4 = 1) by [`Mat4::char_poly`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Poly4 {
    pub c: [f64; 5],
}

impl Mat4 {
    pub fn new(e: [[f64; 4]; 4]) -> Self {
        let m = Mat4 { e };
        assert!(m.is_finite(), "non-finite entry in Mat4");
        m
    }

    pub fn zero() -> Self {
        Mat4 { e: [[0.0; 4]; 4] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.e[i][i] = 1.0;
        }
        m
    }

    pub fn diag(d: [f64; 4]) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.e[i][i] = d[i];
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().flatten().all(|x| x.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(|x| *x == 0.0)
    }

    pub fn transpose(&self) -> Mat4 {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                m.e[r][c] = self.e[c][r];
            }
        }
        m
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.e[i][i]).sum()
    }

    pub fn scale(&self, s: f64) -> Mat4 {
        let mut m = *self;
        for r in 0..4 {
            for c in 0..4 {
                m.e[r][c] *= s;
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().flatten().fold(0.0, |a, x| a.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        let mut d = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                d = d.max((self.e[r][c] - other.e[r][c]).abs());
            }
        }
        d
    }

    /// Entrywise comparison: true iff the max-abs difference is <= `tol`.
    pub fn approx_eq(&self, other: &Mat4, tol: f64) -> bool {
        assert!(tol > 0.0);
        self.max_abs_diff(other) <= tol
    }

    pub fn mul_vec(&self, v: &Vec4) -> Vec4 {
        let mut out = [0.0; 4];
        for r in 0..4 {
            for c in 0..4 {
                out[r] += self.e[r][c] * v.0[c];
            }
        }
        Vec4(out)
    }

    /// Monic characteristic polynomial det(x E - A) via Faddeev-LeVerrier.
    ///
    /// The recurrence also yields det and adjugate for free, which
    /// [`Mat4::inverse`] reuses.
    pub fn char_poly(&self) -> Poly4 {
        let (c, _) = self.faddeev_leverrier();
        Poly4 { c }
    }

    /// det(A) = p(0) for the monic char poly of a 4x4 matrix.
    pub fn det(&self) -> f64 {
        self.char_poly().c[0]
    }

    /// Cayley-Hamilton inverse: A^-1 = -(A^3 + c3 A^2 + c2 A + c1 E)/c0.
    pub fn inverse(&self) -> Result<Mat4, Error> {
        let (c, powers) = self.faddeev_leverrier();
        let scale = self.max_abs().max(1.0);
        if c[0].abs() <= 1e-13 * scale.powi(4) {
            return Err(Error::SingularMetric);
        }
        let num = powers[2] + powers[1].scale(c[3]) + powers[0].scale(c[2])
            + Mat4::identity().scale(c[1]);
        Ok(num.scale(-1.0 / c[0]))
    }

    /// Returns (coefficients c0..c4, [A, A^2, A^3]).
    fn faddeev_leverrier(&self) -> ([f64; 5], [Mat4; 3]) {
        let a = *self;
        let mut c = [0.0; 5];
        c[4] = 1.0;
        let m1 = a;
        c[3] = -m1.trace();
        let m2 = a * (m1 + Mat4::identity().scale(c[3]));
        c[2] = -m2.trace() / 2.0;
        let m3 = a * (m2 + Mat4::identity().scale(c[2]));
        c[1] = -m3.trace() / 3.0;
        let m4 = a * (m3 + Mat4::identity().scale(c[1]));
        c[0] = -m4.trace() / 4.0;
        (c, [a, a * a, a * a * a])
    }

    /// Matrix exponential by scaling-and-squaring with a truncated Taylor
    /// series. Truncation continues until the term norm falls below
    /// `tol` times the accumulated-sum norm. Project-wide oracle.
    pub fn exp_series(&self, tol: f64) -> Result<Mat4, Error> {
        assert!(tol > 0.0, "exp_series tolerance must be positive");
        if !self.is_finite() {
            return Err(Error::NonFinite { context: "exp_series" });
        }
        // Scale until the norm is below 0.5 so the series converges fast.
        let norm = self.max_abs();
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let b = self.scale(0.5f64.powi(squarings as i32));

        let mut sum = Mat4::identity();
        let mut term = Mat4::identity();
        let mut converged = false;
        for k in 1..=EXP_MAX_TERMS {
            term = (term * b).scale(1.0 / k as f64);
            sum = sum + term;
            if term.max_abs() <= tol * sum.max_abs() {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::ExpDidNotConverge { terms: EXP_MAX_TERMS });
        }
        let mut result = sum;
        for _ in 0..squarings {
            result = result * result;
        }
        Ok(result)
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        let mut m = self;
        for r in 0..4 {
            for c in 0..4 {
                m.e[r][c] += rhs.e[r][c];
            }
        }
        m
    }
}

impl Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        let mut m = self;
        for r in 0..4 {
            for c in 0..4 {
                m.e[r][c] -= rhs.e[r][c];
            }
        }
        m
    }
}

impl Neg for Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        self.scale(-1.0)
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut m = Mat4::zero();
        for r in 0..4 {
            for k in 0..4 {
                let a = self.e[r][k];
                if a == 0.0 {
                    continue;
                }
                for c in 0..4 {
                    m.e[r][c] += a * rhs.e[k][c];
                }
            }
        }
        m
    }
}

impl Vec4 {
    pub fn zero() -> Self {
        Vec4([0.0; 4])
    }

    /// Standard basis vector e_i, 0-based.
    pub fn basis(i: usize) -> Self {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        Vec4(v)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn add(&self, other: &Vec4) -> Vec4 {
        let mut v = self.0;
        for i in 0..4 {
            v[i] += other.0[i];
        }
        Vec4(v)
    }

    pub fn sub(&self, other: &Vec4) -> Vec4 {
        let mut v = self.0;
        for i in 0..4 {
            v[i] -= other.0[i];
        }
        Vec4(v)
    }

    pub fn scale(&self, s: f64) -> Vec4 {
        let mut v = self.0;
        for x in v.iter_mut() {
            *x *= s;
        }
        Vec4(v)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |a, x| a.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Vec4) -> f64 {
        let mut d = 0.0f64;
        for i in 0..4 {
            d = d.max((self.0[i] - other.0[i]).abs());
        }
        d
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec4 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Poly4 {
    pub fn eval(&self, x: f64) -> f64 {
        // Horner
        (((self.c[4] * x + self.c[3]) * x + self.c[2]) * x + self.c[1]) * x + self.c[0]
    }

    pub fn max_abs_diff(&self, other: &Poly4) -> f64 {
        let mut d = 0.0f64;
        for i in 0..5 {
            d = d.max((self.c[i] - other.c[i]).abs());
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mat(rng: &mut impl Rng, lo: f64, hi: f64) -> Mat4 {
        let mut e = [[0.0; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                e[r][c] = rng.gen_range(lo..hi);
            }
        }
        Mat4::new(e)
    }

    fn random_int_mat(rng: &mut impl Rng, range: std::ops::Range<i32>) -> Mat4 {
        let mut e = [[0.0; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                e[r][c] = rng.gen_range(range.clone()) as f64;
            }
        }
        Mat4::new(e)
    }

    /// Independent naive triple-loop product, the oracle for `Mul`.
    fn naive_mul(a: &Mat4, b: &Mat4) -> Mat4 {
        let mut m = Mat4::zero();
        for r in 0..4 {
            for c in 0..4 {
                let mut s = 0.0;
                for k in 0..4 {
                    s += a.e[r][k] * b.e[k][c];
                }
                m.e[r][c] = s;
            }
        }
        m
    }

    /// Independent cofactor-expansion determinant (first row), test oracle.
    fn cofactor_det(m: &Mat4) -> f64 {
        fn det3(a: [[f64; 3]; 3]) -> f64 {
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        }
        let mut d = 0.0;
        for c in 0..4 {
            let mut minor = [[0.0; 3]; 3];
            for (ri, r) in (1..4).enumerate() {
                let mut ci = 0;
                for cc in 0..4 {
                    if cc == c {
                        continue;
                    }
                    minor[ri][ci] = m.e[r][cc];
                    ci += 1;
                }
            }
            d += if c % 2 == 0 { 1.0 } else { -1.0 } * m.e[0][c] * det3(minor);
        }
        d
    }

    #[test]
    fn identity_and_zero_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_mat(&mut rng, -3.0, 3.0);
        assert_eq!(Mat4::identity() * a, a);
        assert_eq!(a * Mat4::identity(), a);
        assert_eq!(a * Mat4::zero(), Mat4::zero());
    }

    #[test]
    fn product_matches_triple_loop_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a = random_int_mat(&mut rng, -5..6);
            let b = random_int_mat(&mut rng, -5..6);
            assert_eq!(a * b, naive_mul(&a, &b));
        }
    }

    #[test]
    fn char_poly_of_zero_is_lambda_fourth() {
        let p = Mat4::zero().char_poly();
        assert_eq!(p.c, [0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn char_poly_matches_determinant_interpolation() {
        // Oracle: evaluate det(xE - A) by cofactor expansion at 5 integer
        // nodes and interpolate the monic quartic.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let a = random_int_mat(&mut rng, -4..5);
            let p = a.char_poly();
            assert_eq!(p.c[4], 1.0);
            for x in [-2.0, -1.0, 0.0, 1.0, 2.0] {
                let shifted = Mat4::identity().scale(x) - a;
                let expected = cofactor_det(&shifted);
                assert!(
                    (p.eval(x) - expected).abs() <= 1e-9 * expected.abs().max(1.0),
                    "char_poly disagrees with det(xE-A) at x={x}"
                );
            }
        }
    }

    #[test]
    fn char_poly_similarity_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut found = 0;
        while found < 20 {
            let a = random_int_mat(&mut rng, -3..4);
            let p = random_int_mat(&mut rng, -2..3);
            let pinv = match p.inverse() {
                Ok(m) => m,
                Err(_) => continue,
            };
            found += 1;
            let conj = pinv * a * p;
            let scale = conj.max_abs().max(1.0).powi(4);
            assert!(a.char_poly().max_abs_diff(&conj.char_poly()) <= 1e-9 * scale);
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = Mat4::zero().exp_series(1e-14).unwrap();
        assert!(e.approx_eq(&Mat4::identity(), 1e-15));
    }

    #[test]
    fn exp_of_square_zero_nilpotent_is_identity_plus_a() {
        // A^2 = 0: single off-diagonal entry.
        let mut a = Mat4::zero();
        a.e[0][3] = 2.5;
        let e = a.exp_series(1e-14).unwrap();
        assert!(e.approx_eq(&(Mat4::identity() + a), 1e-14));
    }

    #[test]
    fn exp_of_pi_rotation_block() {
        // hc2 generator at (b,c,d) = (pi,0,0): rotation by pi in the e3e4
        // plane, so exp = diag(1,1,-1,-1).
        let mut a = Mat4::zero();
        a.e[2][3] = std::f64::consts::PI;
        a.e[3][2] = -std::f64::consts::PI;
        let e = a.exp_series(1e-14).unwrap();
        assert!(e.approx_eq(&Mat4::diag([1.0, 1.0, -1.0, -1.0]), 1e-12));
    }

    #[test]
    fn exp_inverse_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let a = random_mat(&mut rng, -2.0, 2.0);
            let p = a.exp_series(1e-14).unwrap() * (-a).exp_series(1e-14).unwrap();
            assert!(p.approx_eq(&Mat4::identity(), 1e-10));
        }
    }

    #[test]
    fn exp_one_parameter_subgroup_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let a = random_mat(&mut rng, -1.5, 1.5);
            let s: f64 = rng.gen_range(-1.0..1.0);
            let t: f64 = rng.gen_range(-1.0..1.0);
            let lhs = a.scale(s + t).exp_series(1e-14).unwrap();
            let rhs = a.scale(s).exp_series(1e-14).unwrap() * a.scale(t).exp_series(1e-14).unwrap();
            assert!(lhs.approx_eq(&rhs, 1e-10));
        }
    }

    #[test]
    fn exp_determinant_is_exp_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let a = random_mat(&mut rng, -2.0, 2.0);
            let d = a.exp_series(1e-14).unwrap().det();
            let expected = a.trace().exp();
            assert!((d - expected).abs() <= 1e-9 * expected.abs());
        }
    }

    #[test]
    fn approx_eq_edges() {
        let a = Mat4::identity();
        assert!(a.approx_eq(&a, 1e-300));
        assert!(!Mat4::identity().approx_eq(&Mat4::zero(), 0.5));
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut found = 0;
        while found < 20 {
            let a = random_mat(&mut rng, -2.0, 2.0);
            let inv = match a.inverse() {
                Ok(m) => m,
                Err(_) => continue,
            };
            found += 1;
            assert!((a * inv).approx_eq(&Mat4::identity(), 1e-8));
        }
    }

    #[test]
    #[should_panic(expected = "non-finite")]
    fn non_finite_entries_rejected() {
        let mut e = [[0.0; 4]; 4];
        e[1][1] = f64::NAN;
        let _ = Mat4::new(e);
    }

    proptest! {
        #[test]
        fn prop_transpose_involution(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_mat(&mut rng, -10.0, 10.0);
            prop_assert_eq!(a.transpose().transpose(), a);
        }

        #[test]
        fn prop_trace_is_similarity_invariant_under_transpose(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_mat(&mut rng, -10.0, 10.0);
            prop_assert_eq!(a.trace(), a.transpose().trace());
        }

        #[test]
        fn prop_char_poly_monic(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_mat(&mut rng, -5.0, 5.0);
            prop_assert_eq!(a.char_poly().c[4], 1.0);
        }
    }
}
