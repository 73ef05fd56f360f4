// Two translations are equivalent exactly when the same circuits stay
// consistent.
//
// `cargo run --example equivalence`

use transdeform::algebra::Field;
use transdeform::deformation::Deformations;
use transdeform::matroid::Representation;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = Field::Rationals;
    let dfm = Deformations::new(Representation::from_i64(q, 2, &[&[1, 0], &[0, 1], &[1, 1]])?)?;
    let v = |xs: [i64; 3]| xs.map(|x| q.from_i64(x)).to_vec();

    let (g, h, k) = (v([1, 1, 2]), v([0, 0, 0]), v([0, 0, 1]));
    let sig = dfm.consistency_signature(&g)?;
    println!("C_(1,1,2) = {:?}", sig.circuits());
    assert!(dfm.equivalent(&g, &h)?);
    assert!(!dfm.equivalent(&g, &k)?);
    assert!(dfm.consistency_signature(&k)?.circuits().is_empty());

    let x = dfm.locate_stratum(&g)?;
    println!("(1,1,2) lies on a flat of dimension {}", x.dim());
    assert_eq!(dfm.char_poly_at(&g)?, dfm.char_poly_at(&h)?);
    Ok(())
}

fn main() {
    run_example().expect("equivalence example");
}
