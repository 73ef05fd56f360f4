// Circuits and normalized circuit vectors of the graphic matroid of K4.
//
// `cargo run --example circuits`

use transdeform::algebra::Field;
use transdeform::matroid::Representation;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // edge i-j of K4 becomes the row e_i - e_j
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let rows: Vec<Vec<i64>> = edges
        .iter()
        .map(|&(i, j)| {
            let mut r = vec![0; 4];
            r[i] = 1;
            r[j] = -1;
            r
        })
        .collect();
    let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let rep = Representation::from_i64(Field::Rationals, 4, &rows)?;
    println!("K4: m = {}, n = {}, rank {}", rep.m(), rep.n(), rep.rank());

    let circuits = rep.circuits();
    for c in &circuits {
        let cv = rep.circuit_vector(c)?;
        let coeffs: Vec<String> = cv.coefficients.iter().map(ToString::to_string).collect();
        println!("  {:?}  c = ({})", c.indices(), coeffs.join(", "));
    }
    // four triangles and three 4-cycles
    assert_eq!(circuits.iter().filter(|c| c.len() == 3).count(), 4);
    assert_eq!(circuits.iter().filter(|c| c.len() == 4).count(), 3);
    assert_eq!(circuits.len(), 7);
    Ok(())
}

fn main() {
    run_example().expect("circuits example");
}
