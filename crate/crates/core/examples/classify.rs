// Every combinatorial type of translation, one stratum per flat of the
// circuit arrangement.
//
// `cargo run --example classify`

use transdeform::algebra::Field;
use transdeform::deformation::Deformations;
use transdeform::matroid::Representation;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let rows: &[&[i64]] = &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]];
    let dfm = Deformations::new(Representation::from_i64(Field::Rationals, 2, rows)?)?;
    let c = dfm.classify()?;
    println!("{} strata over Q", c.strata.len());
    for s in &c.strata {
        let circuits: Vec<_> = s.signature.circuits().iter().map(|c| c.indices().to_vec()).collect();
        let g: Vec<String> = s.representative.iter().flatten().map(ToString::to_string).collect();
        println!(
            "  dim {}  circuits {:?}  g = ({})  chi = {}",
            s.flat.dim(),
            circuits,
            g.join(", "),
            s.chi.as_ref().expect("nonempty over Q")
        );
    }
    assert_eq!(c.generic().chi.as_ref().unwrap().to_string(), "t^2 - 4t + 6");
    assert_eq!(c.central().chi.as_ref().unwrap().to_string(), "t^2 - 4t + 3");

    let gf3 = Field::prime(3)?;
    let dfm = Deformations::new(Representation::from_i64(gf3, 2, &[&[1, 0], &[0, 1], &[1, 1]])?)?;
    let c = dfm.classify()?;
    let sizes: Vec<u64> = c.strata.iter().map(|s| s.size.unwrap()).collect();
    println!("GF(3) class sizes {sizes:?}");
    assert_eq!(sizes, [18, 9]);
    Ok(())
}

fn main() {
    run_example().expect("classify example");
}
