use blanchfield::algebra::{LaurentPoly, ModCoset, RootOfUnity};
use blanchfield::blanchfield::extract_linking_form;
use blanchfield::forms::{decompose, JumpMap, LinkingForm};
use blanchfield::group::presentation::torus_presentation;
use blanchfield::pipeline::{torus_blanchfield, torus_decomposition};
use blanchfield::representation::abelian_rep;
use blanchfield::satellite::{torus_decomposition_oracle, SeifertMatrix};

#[test]
fn abelian_trefoil_is_the_classical_form() {
    let p = torus_presentation(1);
    let lf = extract_linking_form(&p, &abelian_rep(&p.weights)).unwrap();
    assert!(lf.order().associate(&LaurentPoly::from_ints(0, &[1, -1, 1])));
    // 1/(t − 1 + t⁻¹) = t/(t² − t + 1).
    let expected = LinkingForm::cyclic(
        LaurentPoly::from_ints(0, &[1, -1, 1]),
        ModCoset::from_parts(&LaurentPoly::from_ints(1, &[1]), &LaurentPoly::from_ints(0, &[1, -1, 1])),
    )
    .unwrap();
    assert_eq!(decompose(&lf).unwrap(), decompose(&expected).unwrap());
    let seifert = SeifertMatrix::torus(3).classical_blanchfield().unwrap();
    assert_eq!(decompose(&seifert).unwrap(), decompose(&lf).unwrap());
}

#[test]
fn torus_forms_validate() {
    for k in 1..=3 {
        for th in 0..=2 * k as i64 {
            let lf = torus_blanchfield(k, th).unwrap();
            assert!(lf.validate().is_ok(), "k={k} θ={th}");
        }
    }
}

#[test]
fn theta_and_minus_theta_agree() {
    for k in 2..=4u32 {
        let q = 2 * k as i64 + 1;
        for th in 1..=k as i64 {
            assert_eq!(torus_decomposition(k, th).unwrap(), torus_decomposition(k, q - th).unwrap());
        }
    }
}

#[test]
fn untwisted_theta_zero_signs() {
    // θ = 0: one 𝔢-term at each ξ^e ≠ 1, with ε = −1 exactly for even e > 0.
    for k in 1..=4u32 {
        let q = 2 * k as u64 + 1;
        let d = torus_decomposition(k, 0).unwrap();
        assert_eq!(d.e_terms.len(), 2 * k as usize);
        for t in &d.e_terms {
            assert_eq!(q % t.xi.order(), 0);
            let e = t.xi.signed_exponent() * (q / t.xi.order()) as i64;
            let want = if e.rem_euclid(2) == 1 { 1 } else { -1 } * e.signum();
            assert_eq!(t.epsilon as i64, want, "k={k} {t:?}");
        }
    }
}

#[test]
fn mirror_of_oracle_flips_signs() {
    let d = torus_decomposition_oracle(2, 1).unwrap().negate();
    let j = JumpMap::from_decomposition(&d);
    assert_eq!(j.get(&RootOfUnity::new(2, 5)), -1);
    assert_eq!(j.get(&RootOfUnity::new(-2, 5)), 1);
}
