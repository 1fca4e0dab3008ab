//! The eight parameterized generator families and their closed-form
//! exponentials `e^A = E + tA + uA^2`.
//!
//! Branch selection does not blindly follow the printed case split. The
//! policy, in order: a zero generator gives (t,u) = (1,0); a numerically
//! nilpotent generator (every family's nilpotent locus has A^2 = 0) gives
//! (t,u) = (1,0); when the family's generic condition holds the closed-form
//! (t,u) pair is used; otherwise the series oracle is used and the result is
//! flagged. [`branch_report`] records where the printed case split disagrees
//! with the oracle (notably hc2 with (b,c) = (0,0), d != 0).

use crate::mat4::Mat4;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Threshold below which the hc2 (t,u) pair switches to its Taylor expansion
/// in Delta: `1 - cos(sqrt(Delta))` loses ~`1e-16/Delta` relative digits,
/// while the cubic Taylor remainder is ~`Delta^3/5040`, so anywhere below
/// 1e-8 the series is the more accurate side.
const DELTA_SERIES_THRESHOLD: f64 = 1e-8;

/// Relative threshold for numerical nilpotency detection (|A^2| vs |A|^2).
const NILPOTENT_THRESHOLD: f64 = 1e-13;

/// Oracle accuracy used for the fallback branch.
pub const ORACLE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyId {
    Hc1,
    Hc2,
    Hc3_1,
    Hc3_2,
    Hc4_1,
    Hc4_2,
    Hc5_1,
    Hc5_2,
}

impl FamilyId {
    pub const ALL: [FamilyId; 8] = [
        FamilyId::Hc1,
        FamilyId::Hc2,
        FamilyId::Hc3_1,
        FamilyId::Hc3_2,
        FamilyId::Hc4_1,
        FamilyId::Hc4_2,
        FamilyId::Hc5_1,
        FamilyId::Hc5_2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::Hc1 => "hc1",
            FamilyId::Hc2 => "hc2",
            FamilyId::Hc3_1 => "hc3.1",
            FamilyId::Hc3_2 => "hc3.2",
            FamilyId::Hc4_1 => "hc4.1",
            FamilyId::Hc4_2 => "hc4.2",
            FamilyId::Hc5_1 => "hc5.1",
            FamilyId::Hc5_2 => "hc5.2",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family '{s}' (expected one of hc1, hc2, hc3.1, hc3.2, hc4.1, hc4.2, hc5.1, hc5.2)"))
    }
}

/// A family together with real parameters (a,b,c,d). Parameters a family
/// does not use are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyElement {
    pub family: FamilyId,
    pub params: [f64; 4],
}

impl FamilyElement {
    pub fn new(family: FamilyId, params: [f64; 4]) -> Self {
        assert!(params.iter().all(|p| p.is_finite()), "non-finite parameter");
        FamilyElement { family, params }
    }

    /// The printed generator layout with parameters substituted.
    pub fn generator(&self) -> Mat4 {
        let [a, b, c, d] = self.params;
        let e = match self.family {
            FamilyId::Hc1 => [[0.0; 4]; 4],
            FamilyId::Hc2 => [
                [0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, d, -c],
                [0.0, -d, 0.0, b],
                [0.0, c, -b, 0.0],
            ],
            FamilyId::Hc3_1 => [
                [0.0, d, 0.0, -b],
                [0.0, c, 0.0, a],
                [0.0, -b, 0.0, -d],
                [0.0, -a, 0.0, c],
            ],
            FamilyId::Hc3_2 => [
                [c, d, 0.0, 0.0],
                [-d, c, 0.0, 0.0],
                [-a, -b, 0.0, 0.0],
                [b, -a, 0.0, 0.0],
            ],
            FamilyId::Hc4_1 => [
                [0.0, b, c, d],
                [0.0, -a, 0.0, 0.0],
                [0.0, 0.0, -a, 0.0],
                [0.0, 0.0, 0.0, -a],
            ],
            FamilyId::Hc4_2 => [
                [-d, 0.0, 0.0, 0.0],
                [0.0, -d, 0.0, 0.0],
                [0.0, 0.0, -d, 0.0],
                [a, b, c, 0.0],
            ],
            FamilyId::Hc5_1 => [
                [0.0, b, c / 2.0, d / 2.0],
                [0.0, -a, 0.0, 0.0],
                [0.0, d / 2.0, -a / 2.0, 0.0],
                [0.0, -c / 2.0, 0.0, -a / 2.0],
            ],
            FamilyId::Hc5_2 => [
                [-d / 2.0, 0.0, -b / 2.0, 0.0],
                [0.0, -d / 2.0, a / 2.0, 0.0],
                [0.0, 0.0, -d, 0.0],
                [a / 2.0, b / 2.0, c, 0.0],
            ],
        };
        Mat4::new(e)
    }

    /// The family's discriminant driving the generic/degenerate case split,
    /// where one exists (hc2, hc3.1, hc3.2).
    pub fn delta(&self) -> Option<f64> {
        let [a, _b, c, d] = self.params;
        match self.family {
            FamilyId::Hc2 => {
                let [_, b, c, d] = self.params;
                Some(b * b + c * c + d * d)
            }
            FamilyId::Hc3_1 => Some(a * (a * a + c * c)),
            FamilyId::Hc3_2 => Some(d * (c * c + d * d)),
            _ => None,
        }
    }

    pub fn exp_coefficients(&self) -> ExpCoefficients {
        exp_coefficients(self)
    }

    pub fn exp_closed_form(&self) -> Mat4 {
        exp_closed_form(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Generic,
    Degenerate,
    OracleFallback,
}

/// Scalar coefficients of `e^A = E + tA + uA^2` and the branch that
/// produced them. For `OracleFallback` the pair is unusable and
/// [`exp_closed_form`] substitutes the series oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpCoefficients {
    pub t: f64,
    pub u: f64,
    pub branch: Branch,
}

fn nilpotent_square_zero(a: &Mat4) -> bool {
    let n = a.max_abs();
    (*a * *a).max_abs() <= NILPOTENT_THRESHOLD * n * n
}

/// The closed-form (t,u) pair for the generic branch of each family.
/// Caller guarantees the generic condition holds.
fn generic_tu(elem: &FamilyElement) -> (f64, f64) {
    let [a, _b, c, d] = elem.params;
    match elem.family {
        FamilyId::Hc1 => (1.0, 0.0),
        FamilyId::Hc2 => {
            let delta = elem.delta().unwrap();
            if delta < DELTA_SERIES_THRESHOLD {
                // Taylor in Delta: sin(sqrt(D))/sqrt(D), (1-cos(sqrt(D)))/D.
                (
                    1.0 - delta / 6.0 + delta * delta / 120.0,
                    0.5 - delta / 24.0 + delta * delta / 720.0,
                )
            } else {
                let s = delta.sqrt();
                (s.sin() / s, (1.0 - s.cos()) / delta)
            }
        }
        FamilyId::Hc3_1 => {
            let delta = a * (a * a + c * c);
            let (sin, cos) = a.sin_cos();
            let ec = c.exp();
            (
                (-2.0 * a * c * (1.0 - ec * cos) + (a * a - c * c) * ec * sin) / delta,
                (a * (1.0 - ec * cos) + c * ec * sin) / delta,
            )
        }
        FamilyId::Hc3_2 => {
            let delta = d * (c * c + d * d);
            let (sin, cos) = d.sin_cos();
            let ec = c.exp();
            (
                (-2.0 * c * d * (1.0 - ec * cos) + (d * d - c * c) * ec * sin) / delta,
                (d * (1.0 - ec * cos) + c * ec * sin) / delta,
            )
        }
        FamilyId::Hc4_1 => (1.0 / a, (-a).exp() / (a * a)),
        FamilyId::Hc4_2 => (1.0 / d, (-d).exp() / (d * d)),
        FamilyId::Hc5_1 => (
            ((-a).exp() - 4.0 * (-a / 2.0).exp() + 3.0) / a,
            (2.0 * (-a).exp() - 4.0 * (-a / 2.0).exp() + 2.0) / (a * a),
        ),
        FamilyId::Hc5_2 => (
            ((-d).exp() - 4.0 * (-d / 2.0).exp() + 3.0) / d,
            (2.0 * (-d).exp() - 4.0 * (-d / 2.0).exp() + 2.0) / (d * d),
        ),
    }
}

/// True iff the family's generic-branch condition holds at these parameters.
fn generic_condition(elem: &FamilyElement) -> bool {
    let [a, _b, _c, d] = elem.params;
    match elem.family {
        FamilyId::Hc1 => false,
        FamilyId::Hc2 => elem.delta().unwrap() != 0.0,
        FamilyId::Hc3_1 | FamilyId::Hc3_2 => elem.delta().unwrap().abs() > 1e-12,
        FamilyId::Hc4_1 | FamilyId::Hc5_1 => a != 0.0,
        FamilyId::Hc4_2 | FamilyId::Hc5_2 => d != 0.0,
    }
}

pub fn exp_coefficients(elem: &FamilyElement) -> ExpCoefficients {
    let a = elem.generator();
    if a.is_zero() {
        return ExpCoefficients { t: 1.0, u: 0.0, branch: Branch::Degenerate };
    }
    if nilpotent_square_zero(&a) {
        // Every family's degenerate locus is nilpotent of index two,
        // so e^A = E + A.
        return ExpCoefficients { t: 1.0, u: 0.0, branch: Branch::Degenerate };
    }
    if generic_condition(elem) {
        let (t, u) = generic_tu(elem);
        return ExpCoefficients { t, u, branch: Branch::Generic };
    }
    ExpCoefficients { t: f64::NAN, u: f64::NAN, branch: Branch::OracleFallback }
}

/// `E + tA + uA^2`, or the series oracle when no closed-form branch applies.
pub fn exp_closed_form(elem: &FamilyElement) -> Mat4 {
    let a = elem.generator();
    let coeff = exp_coefficients(elem);
    match coeff.branch {
        Branch::OracleFallback => a
            .exp_series(ORACLE_TOL)
            .expect("series oracle diverged on family generator"),
        _ => Mat4::identity() + a.scale(coeff.t) + (a * a).scale(coeff.u),
    }
}

/// Which branch the printed theorem assigns, evaluated literally, together
/// with its consistency against the series oracle, and the branch the
/// artifact actually used.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BranchReport {
    pub family: FamilyId,
    pub params: [f64; 4],
    /// Human-readable description of the printed case that applies, if any.
    pub paper_branch: String,
    /// The printed (t,u), when a printed case covers these parameters.
    pub paper_tu: Option<(f64, f64)>,
    /// Max-abs difference between the printed branch's E + tA + uA^2 and the
    /// series oracle.
    pub paper_oracle_diff: Option<f64>,
    /// False when the printed case split disagrees with the oracle here.
    pub paper_consistent: bool,
    pub used_branch: Branch,
    pub used_tu: Option<(f64, f64)>,
    pub used_oracle_diff: f64,
}

/// Tolerance for declaring the printed branch consistent with the oracle.
const BRANCH_CONSISTENCY_TOL: f64 = 1e-8;

/// The theorem's case split taken at face value.
fn paper_branch(elem: &FamilyElement) -> (String, Option<(f64, f64)>) {
    let [a, b, c, d] = elem.params;
    match elem.family {
        FamilyId::Hc1 => ("hc1: t=1, u=0".into(), Some((1.0, 0.0))),
        FamilyId::Hc2 => {
            if (b, c) != (0.0, 0.0) {
                ("hc2, (b,c) != (0,0): generic (t,u)".into(), Some(generic_tu(elem)))
            } else {
                ("hc2, (b,c) = (0,0): t=1, u=0".into(), Some((1.0, 0.0)))
            }
        }
        FamilyId::Hc3_1 => {
            if a * (a * a + c * c) != 0.0 {
                ("hc3.1, a(a^2+c^2) != 0: generic (t,u)".into(), Some(generic_tu(elem)))
            } else if (a, c) == (0.0, 0.0) {
                ("hc3.1, (a,c) = (0,0): t=1, u=0".into(), Some((1.0, 0.0)))
            } else {
                ("hc3.1: no printed case covers Delta = 0 with (a,c) != (0,0)".into(), None)
            }
        }
        FamilyId::Hc3_2 => {
            if d * (c * c + d * d) != 0.0 {
                ("hc3.2, d(c^2+d^2) != 0: generic (t,u)".into(), Some(generic_tu(elem)))
            } else if (c, d) == (0.0, 0.0) {
                ("hc3.2, (c,d) = (0,0): t=1, u=0".into(), Some((1.0, 0.0)))
            } else {
                ("hc3.2: no printed case covers Delta = 0 with (c,d) != (0,0)".into(), None)
            }
        }
        FamilyId::Hc4_1 => {
            if a != 0.0 {
                ("hc4.1, a != 0: t=1/a, u=e^-a/a^2".into(), Some(generic_tu(elem)))
            } else {
                ("hc4.1, a = 0: t=1, u=0".into(), Some((1.0, 0.0)))
            }
        }
        FamilyId::Hc4_2 => {
            if d != 0.0 {
                ("hc4.2, d != 0: t=1/d, u=e^-d/d^2".into(), Some(generic_tu(elem)))
            } else {
                ("hc4.2, d = 0: t=1, u=0".into(), Some((1.0, 0.0)))
            }
        }
        FamilyId::Hc5_1 => {
            if a != 0.0 {
                ("hc5.1, a != 0: generic (t,u)".into(), Some(generic_tu(elem)))
            } else {
                ("hc5.1, a = 0: t=1, u=0".into(), Some((1.0, 0.0)))
            }
        }
        FamilyId::Hc5_2 => {
            if d != 0.0 {
                ("hc5.2, d != 0: generic (t,u)".into(), Some(generic_tu(elem)))
            } else {
                ("hc5.2, d = 0: t=1, u=0".into(), Some((1.0, 0.0)))
            }
        }
    }
}

pub fn branch_report(elem: &FamilyElement) -> BranchReport {
    let a = elem.generator();
    let oracle = a
        .exp_series(ORACLE_TOL)
        .expect("series oracle diverged on family generator");
    let (desc, paper_tu) = paper_branch(elem);
    let paper_oracle_diff = paper_tu.map(|(t, u)| {
        (Mat4::identity() + a.scale(t) + (a * a).scale(u)).max_abs_diff(&oracle)
    });
    let paper_consistent = match paper_oracle_diff {
        Some(diff) => diff <= BRANCH_CONSISTENCY_TOL,
        None => false,
    };
    let coeff = exp_coefficients(elem);
    let used = exp_closed_form(elem);
    BranchReport {
        family: elem.family,
        params: elem.params,
        paper_branch: desc,
        paper_tu,
        paper_oracle_diff,
        paper_consistent,
        used_branch: coeff.branch,
        used_tu: match coeff.branch {
            Branch::OracleFallback => None,
            _ => Some((coeff.t, coeff.u)),
        },
        used_oracle_diff: used.max_abs_diff(&oracle),
    }
}
