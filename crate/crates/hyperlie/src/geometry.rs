//! Tensor apparatus on a Lie algebra with left-invariant metric: Levi-Civita
//! connection, covariant derivatives of the structure tensors, fundamental
//! tensors F_alpha, Lee forms, Nijenhuis tensors, class predicates and the
//! classifier.
//!
//! Everything is evaluated on the left-invariant frame e_1..e_4, where the
//! metric and the J matrices have constant coefficients, so the only calculus
//! needed is algebraic. For a 1-form w constant on the frame the exterior
//! derivative reduces to dw(e_i, e_j) = -w([e_i, e_j]).
//!
//! Tolerance layering: construction identities on exact integer data use
//! equality, connection-derived tensors use 1e-10, classifier verdicts use
//! 1e-9 (one extra well-conditioned 4x4 solve per coefficient).

use crate::error::Error;
use crate::families::FamilyElement;
use crate::hypercomplex::{standard_triple, HypercomplexTriple, NeutralMetric};
use crate::lie_algebra::StructureConstants;
use crate::mat4::{Mat4, Vec4};
use serde::{Deserialize, Serialize};

/// Christoffel-like coefficients: `gamma[i][j][k]` is the coefficient of
/// `e_k` in `nabla_{e_i} e_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionCoefficients {
    pub gamma: [[[f64; 4]; 4]; 4],
}

/// (0,3)-tensor on the frame: `t[i][j][k] = T(e_i, e_j, e_k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tensor3 {
    pub t: [[[f64; 4]; 4]; 4],
}

/// Components of a 1-form on the frame.
pub type Covector = [f64; 4];

impl Tensor3 {
    pub fn zero() -> Self {
        Tensor3 { t: [[[0.0; 4]; 4]; 4] }
    }

    pub fn max_abs(&self) -> f64 {
        self.t
            .iter()
            .flatten()
            .flatten()
            .fold(0.0f64, |a, x| a.max(x.abs()))
    }

    pub fn scale(&self, s: f64) -> Tensor3 {
        let mut out = *self;
        for x in out.t.iter_mut().flatten().flatten() {
            *x *= s;
        }
        out
    }
}

/// Levi-Civita connection of a left-invariant metric from the Koszul formula:
/// `2 g(nabla_{e_i} e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i)
///  + g([e_k,e_i],e_j)`, solved through the inverse Gram matrix.
pub fn levi_civita(
    c: &StructureConstants,
    g: &NeutralMetric,
) -> Result<ConnectionCoefficients, Error> {
    let defect = c.jacobi_defect();
    if defect > 1e-12 {
        return Err(Error::InconsistentConstants {
            family: "levi_civita input".into(),
            defect,
        });
    }
    let ginv = g.gram.inverse()?;
    // g([e_i,e_j], e_l)
    let mut gb = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for l in 0..4 {
                let mut s = 0.0;
                for m in 0..4 {
                    s += c.c[i][j][m] * g.gram.e[m][l];
                }
                gb[i][j][l] = s;
            }
        }
    }
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let mut s = 0.0;
                for l in 0..4 {
                    let koszul = gb[i][j][l] - gb[j][l][i] + gb[l][i][j];
                    s += ginv.e[k][l] * koszul;
                }
                gamma[i][j][k] = 0.5 * s;
            }
        }
    }
    Ok(ConnectionCoefficients { gamma })
}

impl ConnectionCoefficients {
    /// Max violation of `nabla_{e_i} e_j - nabla_{e_j} e_i = [e_i, e_j]`.
    pub fn torsion_defect(&self, c: &StructureConstants) -> f64 {
        let mut d = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    d = d.max(
                        (self.gamma[i][j][k] - self.gamma[j][i][k] - c.c[i][j][k]).abs(),
                    );
                }
            }
        }
        d
    }

    /// Max violation of `g(nabla_{e_i} e_j, e_k) + g(e_j, nabla_{e_i} e_k) = 0`
    /// (constant-metric case).
    pub fn metric_compat_defect(&self, g: &NeutralMetric) -> f64 {
        let mut d = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let mut s = 0.0;
                    for m in 0..4 {
                        s += self.gamma[i][j][m] * g.gram.e[m][k]
                            + self.gamma[i][k][m] * g.gram.e[j][m];
                    }
                    d = d.max(s.abs());
                }
            }
        }
        d
    }
}

/// `F_alpha(e_i,e_j,e_k) = g(nabla_{e_i}(J e_j) - J nabla_{e_i} e_j, e_k)`,
/// using that J has constant coefficients on the left-invariant frame.
pub fn fundamental_tensor(
    alpha: usize,
    conn: &ConnectionCoefficients,
    h: &HypercomplexTriple,
    g: &NeutralMetric,
) -> Tensor3 {
    let j = &h.j[alpha - 1];
    let mut f = Tensor3::zero();
    for i in 0..4 {
        for jj in 0..4 {
            // (nabla_{e_i} J) e_j in frame components
            let mut diff = [0.0; 4];
            for q in 0..4 {
                let mut s = 0.0;
                for p in 0..4 {
                    // nabla_i (J e_j): J e_j = sum_p J[p][jj] e_p
                    s += j.e[p][jj] * conn.gamma[i][p][q];
                    // J (nabla_i e_j)
                    s -= conn.gamma[i][jj][p] * j.e[q][p];
                }
                diff[q] = s;
            }
            for k in 0..4 {
                let mut s = 0.0;
                for q in 0..4 {
                    s += diff[q] * g.gram.e[q][k];
                }
                f.t[i][jj][k] = s;
            }
        }
    }
    f
}

/// Lee form: contraction of F with the inverse metric over its first two
/// slots, `theta(e_k) = g^{il} F(e_i, e_l, e_k)`.
pub fn lee_form(f: &Tensor3, g: &NeutralMetric) -> Covector {
    let ginv = g.inverse_gram();
    let mut theta = [0.0; 4];
    for k in 0..4 {
        let mut s = 0.0;
        for i in 0..4 {
            for l in 0..4 {
                s += ginv.e[i][l] * f.t[i][l][k];
            }
        }
        theta[k] = s;
    }
    theta
}

/// Vector-valued Nijenhuis tensor `[J,J](e_i, e_j)` per the four-term
/// formula, with brackets taken from the structure constants.
pub fn nijenhuis(alpha: usize, c: &StructureConstants, h: &HypercomplexTriple) -> [[Vec4; 4]; 4] {
    let j = &h.j[alpha - 1];
    let jcol = |i: usize| Vec4(std::array::from_fn(|r| j.e[r][i]));
    std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            let (ei, ek) = (Vec4::basis(i), Vec4::basis(k));
            let (ji, jk) = (jcol(i), jcol(k));
            let term1 = c.bracket(&ji, &jk);
            let term2 = j.mul_vec(&c.bracket(&ji, &ek));
            let term3 = j.mul_vec(&c.bracket(&ei, &jk));
            let term4 = c.bracket(&ei, &ek);
            term1.sub(&term2).sub(&term3).sub(&term4)
        })
    })
}

pub fn nijenhuis_residual(alpha: usize, c: &StructureConstants, h: &HypercomplexTriple) -> f64 {
    nijenhuis(alpha, c, h)
        .iter()
        .flatten()
        .fold(0.0f64, |a, v| a.max(v.max_abs()))
}

fn theta_of_j(theta: &Covector, j: &Mat4) -> Covector {
    std::array::from_fn(|k| (0..4).map(|m| theta[m] * j.e[m][k]).sum())
}

/// `F(e_i, e_j, J e_k)`.
fn f_with_j_third(f: &Tensor3, j: &Mat4) -> Tensor3 {
    let mut out = Tensor3::zero();
    for i in 0..4 {
        for jj in 0..4 {
            for k in 0..4 {
                let mut s = 0.0;
                for m in 0..4 {
                    s += f.t[i][jj][m] * j.e[m][k];
                }
                out.t[i][jj][k] = s;
            }
        }
    }
    out
}

fn cyclic_sum_residual(f: &Tensor3) -> f64 {
    let mut d = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                d = d.max((f.t[i][j][k] + f.t[j][k][i] + f.t[k][i][j]).abs());
            }
        }
    }
    d
}

/// Residual of the almost-Kaehler condition for J1:
/// cyclic sum of F1 vanishes.
pub fn w2_hermitian_residual(f1: &Tensor3) -> f64 {
    cyclic_sum_residual(f1)
}

/// Residual of the 4-dimensional Hermitian (W4) identity for J1.
pub fn w4_residual(f1: &Tensor3, theta1: &Covector, j1: &Mat4, g: &NeutralMetric) -> f64 {
    let gj = g.gram * *j1;
    let thj = theta_of_j(theta1, j1);
    let mut d = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let rhs = 0.5
                    * (g.gram.e[i][j] * theta1[k] - gj.e[i][j] * thj[k]
                        - g.gram.e[i][k] * theta1[j]
                        + gj.e[i][k] * thj[j]);
                d = d.max((f1.t[i][j][k] - rhs).abs());
            }
        }
    }
    d
}

/// Residual of the Norden W1 identity: F expressed through its Lee form.
pub fn w1_residual(f: &Tensor3, theta: &Covector, j: &Mat4, g: &NeutralMetric) -> f64 {
    let gj = g.gram * *j;
    let thj = theta_of_j(theta, j);
    let mut d = 0.0f64;
    for i in 0..4 {
        for jj in 0..4 {
            for k in 0..4 {
                let rhs = 0.25
                    * (g.gram.e[i][jj] * theta[k]
                        + gj.e[i][jj] * thj[k]
                        + g.gram.e[i][k] * theta[jj]
                        + gj.e[i][k] * thj[jj]);
                d = d.max((f.t[i][jj][k] - rhs).abs());
            }
        }
    }
    d
}

/// Residual of the Norden W2 conditions: cyclic sum of F(x,y,Jz) vanishes
/// and the Lee form vanishes.
pub fn w2_norden_residual(f: &Tensor3, theta: &Covector, j: &Mat4) -> f64 {
    let theta_max = theta.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    cyclic_sum_residual(&f_with_j_third(f, j)).max(theta_max)
}

/// Residual of the Norden W3 condition: cyclic sum of F vanishes.
pub fn w3_residual(f: &Tensor3) -> f64 {
    cyclic_sum_residual(f)
}

/// Which check decided a (W1 + W2) membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum W1W2Route {
    /// The sufficient W1 identity already held.
    W1Sufficient,
    /// The direct-sum condition: cyclic sum of F(x,y,Jz) vanishes (the W3
    /// projection is zero; the W1 expression satisfies it identically).
    CyclicJSum,
}

/// Membership residual for the direct sum W1 + W2 of the Norden classes.
///
/// The simpler sufficient route (W1 residual ~ 0) is checked first; otherwise
/// the direct-sum condition `sigma F(x,y,Jz) = 0` is evaluated. The W1
/// expression built from any Lee form satisfies that cyclic identity exactly,
/// so the condition vanishes on all of W1 + W2 and detects a W3 component.
pub fn w1w2_residual(
    f: &Tensor3,
    theta: &Covector,
    j: &Mat4,
    g: &NeutralMetric,
    tol: f64,
) -> (f64, W1W2Route) {
    let w1 = w1_residual(f, theta, j, g);
    if w1 <= tol {
        return (w1, W1W2Route::W1Sufficient);
    }
    (cyclic_sum_residual(&f_with_j_third(f, j)), W1W2Route::CyclicJSum)
}

/// Residual of `d(theta o J) = 0` for a frame-constant 1-form:
/// `dw(e_i, e_j) = -w([e_i, e_j])`.
pub fn d_theta_j_residual(theta: &Covector, j: &Mat4, c: &StructureConstants) -> f64 {
    let mut d = 0.0f64;
    for i in 0..4 {
        for jj in (i + 1)..4 {
            let br = c.bracket_basis(i, jj);
            let jbr = j.mul_vec(&br);
            let w: f64 = (0..4).map(|m| theta[m] * jbr[m]).sum();
            d = d.max(w.abs());
        }
    }
    d
}

/// Both symmetry identities of the fundamental tensors:
/// `F(x,y,z) = -eps F(x,z,y) = -eps F(x,Jy,Jz)`.
pub fn f_symmetry_defect(f: &Tensor3, eps: f64, j: &Mat4) -> f64 {
    let mut d = 0.0f64;
    for i in 0..4 {
        for jj in 0..4 {
            for k in 0..4 {
                d = d.max((f.t[i][jj][k] + eps * f.t[i][k][jj]).abs());
                let mut fjj = 0.0;
                for p in 0..4 {
                    for q in 0..4 {
                        fjj += f.t[i][p][q] * j.e[p][jj] * j.e[q][k];
                    }
                }
                d = d.max((f.t[i][jj][k] + eps * fjj).abs());
            }
        }
    }
    d
}

/// Max-abs violation of the cyclic relation
/// `F_a(x,y,z) = F_b(x, J_c y, z) - eps_b F_c(x, y, J_b z)` over all basis
/// triples and all cyclic permutations (a,b,c) of (1,2,3).
///
/// The sign in front of the third term carries the epsilon of the middle
/// structure: the product rule on `J_a = J_b J_c` gives
/// `(nabla_x J_a) y = (nabla_x J_b)(J_c y) + J_b (nabla_x J_c) y`, and pulling
/// J_b out of the first metric slot uses `g(J_b u, v) = -eps_b g(u, J_b v)`.
/// With eps_a instead, the relation fails by O(|F|) on every non-abelian
/// algebra in the suite.
pub fn f_relation_defect(fs: &[Tensor3; 3], h: &HypercomplexTriple) -> f64 {
    let mut d = 0.0f64;
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let (jb, jc) = (&h.j[b], &h.j[c]);
        for i in 0..4 {
            for jj in 0..4 {
                for k in 0..4 {
                    let mut fb = 0.0;
                    for m in 0..4 {
                        fb += fs[b].t[i][m][k] * jc.e[m][jj];
                    }
                    let mut fc = 0.0;
                    for m in 0..4 {
                        fc += fs[c].t[i][jj][m] * jb.e[m][k];
                    }
                    d = d.max((fs[a].t[i][jj][k] - fb + h.eps[b] * fc).abs());
                }
            }
        }
    }
    d
}

/// Everything the classifier needs, computed once from structure constants.
pub struct GeometryData {
    pub constants: StructureConstants,
    pub connection: ConnectionCoefficients,
    pub f: [Tensor3; 3],
    pub theta: [Covector; 3],
}

impl GeometryData {
    pub fn compute(c: &StructureConstants) -> Result<Self, Error> {
        let g = NeutralMetric::standard();
        let h = standard_triple();
        let connection = levi_civita(c, &g)?;
        let f: [Tensor3; 3] =
            std::array::from_fn(|a| fundamental_tensor(a + 1, &connection, &h, &g));
        let theta: [Covector; 3] = std::array::from_fn(|a| lee_form(&f[a], &g));
        Ok(GeometryData { constants: *c, connection, f, theta })
    }
}

/// Per-predicate residuals of the classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub w0: [f64; 3],
    pub w2_j1: f64,
    pub w4_j1: f64,
    pub w1_j2: f64,
    pub w2_j2: f64,
    pub w3_j2: f64,
    pub w1w2_j2: f64,
    pub w1_j3: f64,
    pub w2_j3: f64,
    pub w3_j3: f64,
    pub w1w2_j3: f64,
    pub nijenhuis: [f64; 3],
    pub d_theta1_j1: f64,
    pub f_relation: f64,
    pub torsion: f64,
    pub metric_compat: f64,
}

/// Boolean verdicts: residual <= tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub w0: [bool; 3],
    pub w2_j1: bool,
    pub w4_j1: bool,
    pub w1_j2: bool,
    pub w1w2_j2: bool,
    pub w1_j3: bool,
    pub w1w2_j3: bool,
    pub d_theta1_j1: bool,
    /// Hyper-Kaehler: all three fundamental tensors vanish.
    pub k: bool,
    /// W4(J1) and (W1+W2) for J2 and J3.
    pub hc: bool,
    /// HC with additionally W0(J1).
    pub hc_prime: bool,
    /// W4(J1), W1(J2), W1(J3) and d(theta_1 o J_1) = 0.
    pub w0_class: bool,
}

impl Verdicts {
    /// Membership verdict for a composite class by its label.
    ///
    /// The expected class table asserts membership, not minimality: a
    /// structure can satisfy a sharper condition than the class listed for
    /// it (the class lattice is nested), and that finer information stays in
    /// the residual vector instead of failing the comparison.
    pub fn class_member(&self, class: &str) -> bool {
        match class {
            "K" => self.k,
            "HC" => self.hc,
            "HC'" => self.hc_prime,
            "W0" => self.w0_class,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub family: String,
    pub params: [f64; 4],
    pub tol: f64,
    /// True when the element's generator is zero: the brackets it activates
    /// all vanish and the abelian (hence hyper-Kaehler) verdict applies.
    pub degenerate: bool,
    pub residuals: Residuals,
    pub verdicts: Verdicts,
    pub w1w2_route_j2: W1W2Route,
    pub w1w2_route_j3: W1W2Route,
    /// Most specific class label: "K", "HC'", "W0" or "HC".
    pub verdict: String,
}

/// Classifier core on explicit structure constants.
pub fn classify_constants(c: &StructureConstants, tol: f64) -> Result<(Residuals, Verdicts, W1W2Route, W1W2Route, String), Error> {
    assert!(tol > 0.0);
    let g = NeutralMetric::standard();
    let h = standard_triple();
    let data = GeometryData::compute(c)?;
    let [f1, f2, f3] = &data.f;
    let [t1, t2, t3] = &data.theta;

    let (w1w2_j2, route_j2) = w1w2_residual(f2, t2, &h.j[1], &g, tol);
    let (w1w2_j3, route_j3) = w1w2_residual(f3, t3, &h.j[2], &g, tol);
    let residuals = Residuals {
        w0: [f1.max_abs(), f2.max_abs(), f3.max_abs()],
        w2_j1: w2_hermitian_residual(f1),
        w4_j1: w4_residual(f1, t1, &h.j[0], &g),
        w1_j2: w1_residual(f2, t2, &h.j[1], &g),
        w2_j2: w2_norden_residual(f2, t2, &h.j[1]),
        w3_j2: w3_residual(f2),
        w1w2_j2,
        w1_j3: w1_residual(f3, t3, &h.j[2], &g),
        w2_j3: w2_norden_residual(f3, t3, &h.j[2]),
        w3_j3: w3_residual(f3),
        w1w2_j3,
        nijenhuis: std::array::from_fn(|a| nijenhuis_residual(a + 1, c, &h)),
        d_theta1_j1: d_theta_j_residual(t1, &h.j[0], c),
        f_relation: f_relation_defect(&data.f, &h),
        torsion: data.connection.torsion_defect(c),
        metric_compat: data.connection.metric_compat_defect(&g),
    };

    let ok = |r: f64| r <= tol;
    let w0 = [ok(residuals.w0[0]), ok(residuals.w0[1]), ok(residuals.w0[2])];
    let k = w0[0] && w0[1] && w0[2];
    let hc = ok(residuals.w4_j1) && ok(residuals.w1w2_j2) && ok(residuals.w1w2_j3);
    let hc_prime = hc && w0[0];
    let w0_class = ok(residuals.w4_j1)
        && ok(residuals.w1_j2)
        && ok(residuals.w1_j3)
        && ok(residuals.d_theta1_j1);
    let verdicts = Verdicts {
        w0,
        w2_j1: ok(residuals.w2_j1),
        w4_j1: ok(residuals.w4_j1),
        w1_j2: ok(residuals.w1_j2),
        w1w2_j2: ok(residuals.w1w2_j2),
        w1_j3: ok(residuals.w1_j3),
        w1w2_j3: ok(residuals.w1w2_j3),
        d_theta1_j1: ok(residuals.d_theta1_j1),
        k,
        hc,
        hc_prime,
        w0_class,
    };
    // Most specific first.
    let verdict = if k {
        "K"
    } else if hc_prime {
        "HC'"
    } else if w0_class {
        "W0"
    } else if hc {
        "HC"
    } else {
        "unclassified"
    };
    Ok((residuals, verdicts, route_j2, route_j3, verdict.to_string()))
}

/// Classify a family element against the Kaehler-type and conformal classes.
///
/// A zero generator means the element activates no bracket; it is classified
/// as the abelian limit (hyper-Kaehler) and flagged degenerate.
pub fn classify(elem: &FamilyElement, tol: f64) -> Result<ClassificationReport, Error> {
    let degenerate = elem.generator().is_zero();
    let constants = if degenerate {
        StructureConstants::zero()
    } else {
        StructureConstants::from_family(elem.family)?
    };
    let (residuals, verdicts, route_j2, route_j3, verdict) = classify_constants(&constants, tol)?;
    Ok(ClassificationReport {
        family: elem.family.to_string(),
        params: elem.params,
        tol,
        degenerate,
        residuals,
        verdicts,
        w1w2_route_j2: route_j2,
        w1w2_route_j3: route_j3,
        verdict,
    })
}

/// Expected Table-1 verdict per family.
pub fn expected_verdict(family: crate::families::FamilyId) -> &'static str {
    use crate::families::FamilyId::*;
    match family {
        Hc1 => "K",
        Hc2 => "HC",
        Hc3_1 => "HC'",
        Hc3_2 => "W0",
        Hc4_1 => "HC",
        Hc4_2 => "W0",
        Hc5_1 => "HC",
        Hc5_2 => "HC",
    }
}
