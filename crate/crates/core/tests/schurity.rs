use schurring::enumerate::{census, enumerate};
use schurring::schurity::{minimal_nonschurian_check, AutSearch};
use schurring::{gen_wreath, tensor, witness, Error, SRing};

#[test]
fn witness_72_is_minimal() {
    // every proper section of the witness is schurian
    let w = witness(8, 9).unwrap();
    assert!(minimal_nonschurian_check(&w.ring).unwrap());
}

#[test]
fn witness_below_a_tensor_product_is_not_minimal() {
    let w = witness(8, 9).unwrap().ring;
    let top = tensor(&w.quotient(8).unwrap(), &SRing::group_ring(2)).unwrap();
    let a = gen_wreath(&w, &top, 9).unwrap();
    assert_eq!(a.n(), 144);
    assert!(!minimal_nonschurian_check(&a).unwrap());
}

#[test]
fn schurian_input_is_rejected() {
    let a = enumerate(12).unwrap().rings.pop().unwrap();
    assert_eq!(minimal_nonschurian_check(&a), Err(Error::NotNonSchurian));
}

#[test]
fn generic_witness_is_not_schurian() {
    let w = witness(9, 16).unwrap();
    let v = AutSearch::default().is_schurian(&w.ring).unwrap();
    assert!(!v.schurian);
    let m = v.witness_mismatch.unwrap();
    assert!(m.orbit.len() < m.class.len());
}

#[test]
fn census_examples() {
    for n in [24, 30] {
        let r = census(n).unwrap();
        assert!(r.all_schurian());
        assert!(r.consistent_with_classification());
    }
    let r = census(72).unwrap();
    assert!(!r.all_schurian());
    assert!(r.consistent_with_classification());
    assert!(enumerate(72)
        .unwrap()
        .contains(&witness(8, 9).unwrap().ring));
    let (first, verdict) = r.first_non_schurian.unwrap();
    assert_eq!(first.n(), 72);
    assert!(verdict.witness_mismatch.is_some());
}
