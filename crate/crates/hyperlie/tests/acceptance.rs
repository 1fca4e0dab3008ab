//! The acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`) before asserting.

use hyperlie::families::{self, FamilyElement, FamilyId};
use hyperlie::geometry::{
    classify, expected_verdict, f_relation_defect, f_symmetry_defect, nijenhuis_residual,
    GeometryData,
};
use hyperlie::hypercomplex::{standard_triple, NeutralMetric};
use hyperlie::known_groups::{self, GroupElementParams, GroupId};
use hyperlie::lie_algebra::StructureConstants;
use hyperlie::mat4::Mat4;
use hyperlie::sweep;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;

fn report(n: usize, name: &str, pass: bool, detail: &str) {
    println!("criterion {n}: {} — {name}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

/// 200 generic draws per family: closed form vs series oracle within 1e-10.
#[test]
fn criterion_01_closed_form_exponential() {
    let mut worst = 0.0f64;
    let mut failures = 0;
    for family in FamilyId::ALL {
        let r = sweep::exp_sweep(family, 200, SEED, 1e-10);
        worst = worst.max(r.max_diff);
        failures += r.failures;
    }
    report(
        1,
        "closed-form exponential vs oracle",
        failures == 0,
        &format!("{failures} draws exceeded 1e-10 (worst {worst:e})"),
    );
}

/// The displayed product-form matrix for the rotation family matches the
/// closed form entrywise at 50 nondegenerate draws, 1e-12.
#[test]
fn criterion_02_hc2_displayed_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 50 {
        let (b, c, d) = (
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let elem = FamilyElement::new(FamilyId::Hc2, [0.0, b, c, d]);
        let delta = b * b + c * c + d * d;
        if delta < 0.1 {
            continue;
        }
        done += 1;
        let s = delta.sqrt();
        let (t, u) = (s.sin() / s, (1.0 - s.cos()) / delta);
        let displayed = Mat4::new([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0 - (c * c + d * d) * u, b * c * u + d * t, b * d * u - c * t],
            [0.0, b * c * u - d * t, 1.0 - (b * b + d * d) * u, c * d * u + b * t],
            [0.0, b * d * u + c * t, c * d * u - b * t, 1.0 - (b * b + c * c) * u],
        ]);
        worst = worst.max(elem.exp_closed_form().max_abs_diff(&displayed));
    }
    report(2, "hc2 displayed exponential matrix", worst <= 1e-12, &format!("worst {worst:e}"));
}

/// Characteristic polynomial of the hc2 generator: x^4 + Delta x^2.
#[test]
fn criterion_03_hc2_characteristic_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let elem = FamilyElement::new(FamilyId::Hc2, p);
        let delta = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        let poly = elem.generator().char_poly();
        let expected = [0.0, 0.0, delta, 0.0, 1.0];
        for (a, b) in poly.c.iter().zip(expected) {
            worst = worst.max((a - b).abs());
        }
    }
    report(3, "hc2 characteristic polynomial", worst <= 1e-12, &format!("worst {worst:e}"));
}

/// Quaternion identities and metric compatibility hold exactly.
#[test]
fn criterion_04_quaternion_and_compatibility() {
    let h = standard_triple();
    let g = NeutralMetric::standard();
    let mut worst = h.quaternion_defect();
    for alpha in 1..=3 {
        worst = worst.max(h.compatibility_defect(alpha, &g));
    }
    report(4, "quaternion and compatibility identities", worst == 0.0, &format!("worst {worst:e}"));
}

/// Recovered structure constants: antisymmetry and Jacobi exact for all
/// families; hc2 constants and basis matrices equal the printed ones exactly.
#[test]
fn criterion_05_lie_algebra_validity() {
    let mut pass = true;
    let mut detail = String::new();
    for family in FamilyId::ALL {
        match StructureConstants::from_family(family) {
            Ok(c) => {
                if c.antisymmetry_defect() != 0.0 || c.jacobi_defect() != 0.0 {
                    pass = false;
                    detail.push_str(&format!("{family}: nonzero algebra defect; "));
                }
            }
            Err(e) => {
                pass = false;
                detail.push_str(&format!("{family}: {e}; "));
            }
        }
    }
    let c2 = StructureConstants::from_family(FamilyId::Hc2).unwrap();
    // Printed nonzero coefficients (1-based): C_24^3 = C_43^2 = C_32^4 = 1
    // and their antisymmetric counterparts.
    let mut printed = StructureConstants::zero();
    for (k, l, s) in [(1, 3, 2), (3, 2, 1), (2, 1, 3)] {
        printed.c[k][l][s] = 1.0;
        printed.c[l][k][s] = -1.0;
    }
    if c2 != printed {
        pass = false;
        detail.push_str("hc2 constants differ from printed table; ");
    }
    let m = c2.basis_matrices();
    let m2 = Mat4::new([
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]);
    let m3 = Mat4::new([
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
    ]);
    let m4 = Mat4::new([
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ]);
    if m[0] != Mat4::zero() || m[1] != m2 || m[2] != m3 || m[3] != m4 {
        pass = false;
        detail.push_str("hc2 basis matrices differ from printed set; ");
    }
    report(5, "Lie-algebra validity", pass, &detail);
}

/// Nijenhuis residuals ≤ 1e-10 for every structure, family and generic draw.
#[test]
fn criterion_06_integrability() {
    let h = standard_triple();
    let mut worst = 0.0f64;
    for family in FamilyId::ALL {
        let c = StructureConstants::from_family(family).unwrap();
        // The tensors depend on the constants, not the draw; evaluating per
        // draw still exercises the sampled parameter space contract.
        for _elem in sweep::generic_draws(family, 100, SEED) {
            for alpha in 1..=3 {
                worst = worst.max(nijenhuis_residual(alpha, &c, &h));
            }
        }
    }
    report(6, "Nijenhuis integrability", worst <= 1e-10, &format!("worst {worst:e}"));
}

/// Class verdicts match the expected table for ≥ 99% of 100 generic draws
/// per family at tolerance 1e-9; deviations logged with residual vectors.
#[test]
fn criterion_07_class_table() {
    let mut pass = true;
    let mut detail = String::new();
    for family in FamilyId::ALL {
        let r = sweep::classify_sweep(family, 100, SEED, 1e-9);
        if r.match_rate() < 0.99 {
            pass = false;
            detail.push_str(&format!("{family}: rate {:.3}; ", r.match_rate()));
        }
        for m in &r.mismatches {
            eprintln!("deviation {family} {:?}: {} residuals {:?}", m.params, m.verdict, m.residuals);
        }
    }
    report(7, "class table reproduction", pass, &detail);
}

/// Both F-tensor symmetry identities and the cyclic three-tensor relation.
#[test]
fn criterion_08_f_tensor_properties() {
    let h = standard_triple();
    let mut worst = 0.0f64;
    for family in FamilyId::ALL {
        let c = StructureConstants::from_family(family).unwrap();
        let d = GeometryData::compute(&c).unwrap();
        for a in 0..3 {
            worst = worst.max(f_symmetry_defect(&d.f[a], h.eps[a], &h.j[a]));
        }
        worst = worst.max(f_relation_defect(&d.f, &h));
    }
    report(8, "F-tensor properties", worst <= 1e-10, &format!("worst {worst:e}"));
}

/// Known-group embeddings: exact for G6 and G10 over 20 free-parameter
/// values; the G8 case reports its angle discrepancy without failing.
#[test]
fn criterion_09_embeddings() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let v: f64 = rng.gen_range(-2.0..2.0);
        worst = worst.max(known_groups::embedding_check(FamilyId::Hc4_1, v).residual);
        worst = worst.max(known_groups::embedding_check(FamilyId::Hc5_1, v).residual);
    }
    let g8 = known_groups::embedding_check(FamilyId::Hc3_2, 0.0);
    let pass = worst <= 1e-12
        && g8.residual <= 1e-12
        && g8.stated_angle.is_some()
        && g8.stated_angle_residual.unwrap() > 0.1;
    report(
        9,
        "known-group embeddings",
        pass,
        &format!(
            "worst {worst:e}; g8 best {:e}, stated-angle gap {:?}",
            g8.residual, g8.stated_angle_residual
        ),
    );
}

/// Group closure on 100 random parameter pairs per group.
#[test]
fn criterion_10_group_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pass = true;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let q: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let d6 = known_groups::closure_defect(
            GroupId::G6,
            &GroupElementParams::g6(p[0], p[1], p[2], p[3]),
            &GroupElementParams::g6(q[0], q[1], q[2], q[3]),
        );
        let d10 = known_groups::closure_defect(
            GroupId::G10,
            &GroupElementParams::g10(p[0], p[1], p[2], p[3], p[4]),
            &GroupElementParams::g10(q[0], q[1], q[2], q[3], q[4]),
        );
        let d8 = known_groups::closure_defect(
            GroupId::G8,
            &GroupElementParams::g8(p[0], p[1], p[2], p[3]),
            &GroupElementParams::g8(q[0], q[1], q[2], q[3]),
        );
        pass = pass && d6 <= 1e-12 && d10 <= 1e-12 && d8 <= 1e-10;
        worst = worst.max(d6).max(d10).max(d8);
    }
    report(10, "group closure", pass, &format!("worst {worst:e}"));
}

/// The rotation family's printed degenerate case split is flagged as
/// inconsistent with the oracle, while the branch actually used agrees.
#[test]
fn criterion_11_degenerate_branch_audit() {
    let elem = FamilyElement::new(FamilyId::Hc2, [0.0, 0.0, 0.0, 1.0]);
    let r = families::branch_report(&elem);
    let pass = !r.paper_consistent
        && r.paper_oracle_diff.unwrap_or(0.0) > 0.1
        && r.used_oracle_diff <= 1e-10;
    report(
        11,
        "degenerate-branch audit",
        pass,
        &format!(
            "flagged={} printed-vs-oracle {:?} used {:e}",
            !r.paper_consistent, r.paper_oracle_diff, r.used_oracle_diff
        ),
    );
}

/// The classifier's reference point: verdict membership for each family at
/// a fixed probe, asserted once outside the sampled criterion so the table
/// appears verbatim in the acceptance output.
#[test]
fn class_table_fixed_probe() {
    for family in FamilyId::ALL {
        let elem = FamilyElement::new(family, [1.0, 1.0, 1.0, 1.0]);
        let r = classify(&elem, 1e-9).unwrap();
        assert!(
            r.verdicts.class_member(expected_verdict(family)),
            "{family}: expected {} got {}",
            expected_verdict(family),
            r.verdict
        );
    }
}
