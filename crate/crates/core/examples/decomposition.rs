// Summing over all strata recovers the Boolean arrangement: as polynomials
// over Q, and as exact point counts over GF(3).
//
// `cargo run --example decomposition`

use transdeform::algebra::Field;
use transdeform::deformation::Deformations;
use transdeform::identity::{census, verify_decomposition_finite, verify_decomposition_infinite, verify_lifted};
use transdeform::matroid::Representation;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let rows: &[&[i64]] = &[&[1, 0], &[0, 1], &[1, 1]];

    let dfm = Deformations::new(Representation::from_i64(Field::Rationals, 2, rows)?)?;
    let r = verify_decomposition_infinite(&dfm)?;
    for t in &r.terms {
        println!("  ({}) * ({})", t.chi, t.chi_restriction);
    }
    println!("sum = {}", r.lhs);
    assert!(r.holds());

    let gf3 = Field::prime(3)?;
    let rep = Representation::from_i64(gf3, 2, rows)?;
    let f = verify_decomposition_finite(&Deformations::new(rep.clone())?)?;
    let parts: Vec<String> = f
        .terms
        .iter()
        .map(|t| format!("{}*{}", t.complement_count, t.class_size))
        .collect();
    println!("GF(3): {} = {}", parts.join(" + "), f.lhs);
    assert!(f.holds());
    assert_eq!(f.lhs, 72.into());

    assert!(census(&rep)?.holds());
    let lifted = verify_lifted(&rep)?;
    println!("lifted arrangement: {} points, chi = {}", lifted.point_count, lifted.char_poly);
    assert!(lifted.holds());
    Ok(())
}

fn main() {
    run_example().expect("decomposition example");
}
