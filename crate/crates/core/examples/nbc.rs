// Affine circuits, broken circuits and NBC counts of a deformation, and the
// coefficient comparison across all strata.
//
// `cargo run --example nbc`

use transdeform::algebra::Field;
use transdeform::arrangement::Arrangement;
use transdeform::deformation::Deformations;
use transdeform::matroid::Representation;
use transdeform::nbc::{affine_broken_circuits, affine_circuits, affine_nbc_counts, verify_comparison, TotalOrder};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = Field::Rationals;
    let rep = Representation::from_i64(q, 2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]])?;
    let g: Vec<_> = [0, 0, 0, 2].iter().map(|&x| q.from_i64(x)).collect();
    let arr = Arrangement::from_representation(&rep, &g)?;

    let natural = TotalOrder::natural(4);
    let circuits = affine_circuits(&arr);
    println!("affine circuits {circuits:?}");
    println!("broken circuits {:?}", affine_broken_circuits(&arr, &natural));
    let counts = affine_nbc_counts(&arr, &natural)?;
    println!("NBC counts {counts:?}");
    assert_eq!(counts, [1, 4, 5]);

    let reversed = TotalOrder::from_sequence(vec![3, 2, 1, 0])?;
    assert_eq!(affine_nbc_counts(&arr, &reversed)?, counts);

    let dfm = Deformations::new(rep.clone())?;
    let report = verify_comparison(&rep, &dfm.classify()?)?;
    println!("comparison over {} nested pairs: {}", report.pairs.len(), report.holds());
    assert!(report.holds());
    Ok(())
}

fn main() {
    run_example().expect("nbc example");
}
