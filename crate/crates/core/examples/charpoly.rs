// The characteristic polynomial of one deformation `A_g`, computed through
// the Möbius function, the Whitney subset sum and NBC sets, and checked
// against a direct point count over GF(5).
//
// `cargo run --example charpoly`

use transdeform::algebra::Field;
use transdeform::arrangement::{Arrangement, CharPoly};
use transdeform::matroid::Representation;
use transdeform::nbc::{char_poly_nbc, TotalOrder};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let rows: &[&[i64]] = &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]];
    for (field, g) in [(Field::Rationals, [0, 0, 1, 0]), (Field::prime(5)?, [0, 0, 1, 0])] {
        let rep = Representation::from_i64(field, 2, rows)?;
        let g: Vec<_> = g.iter().map(|&v| field.from_i64(v)).collect();
        let arr = Arrangement::from_representation(&rep, &g)?;

        let mobius = arr.char_poly();
        let whitney = arr.char_poly_whitney();
        let nbc = char_poly_nbc(&arr, &TotalOrder::natural(arr.len()))?;
        println!("{field}: chi = {mobius}");
        assert_eq!(mobius, whitney);
        assert_eq!(mobius, nbc);
        assert_eq!(mobius, "t^2 - 4t + 5".parse::<CharPoly>()?);

        if let Some(q) = field.order() {
            let points = arr.count_complement_points()?;
            println!("  {points} points of GF({q})^2 avoid every line");
            assert_eq!(mobius.eval_i64(q as i64), points.into());
        }
        for i in 0..arr.len() {
            assert!(arr.deletion_restriction_check(i)?);
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("charpoly example");
}
