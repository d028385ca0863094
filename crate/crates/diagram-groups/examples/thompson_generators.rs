//! Generalized Thompson's groups `F_r` as diagram groups over
//! `<x | x = x^r>`: generator diagrams, the defining relations, and
//! standard normal forms.
//!
//! ```bash
//! cargo run --example thompson_generators
//! ```

use diagram_groups::thompson::{generator, normal_form, relation_holds, word_to_diagram, FWord};

fn main() -> Result<(), diagram_groups::Error> {
    // the first generators of F = F_2
    for i in 0..3 {
        let d = generator(2, i)?;
        println!("x{i} over F_2 has {} cells:", d.cell_count());
        print!("{d}");
    }

    // x_j x_i = x_i x_{j+r-1} for i < j, as an equality of reduced diagrams
    for r in [2, 3, 9] {
        for (i, j) in [(0, 1), (1, 3)] {
            println!(
                "r={r}: x{j} x{i} = x{i} x{}  ->  {}",
                j + r - 1,
                relation_holds(r, i, j)?
            );
        }
    }

    // normal forms sort the indices and cancel facing pairs
    for (r, text) in [(2, "x1 x0"), (2, "x3 X1 x1 X3"), (9, "x4 x2 X7 x0")] {
        let w = FWord::parse(r, text)?;
        let nf = normal_form(&w)?;
        println!("nf_{r}({text}) = {nf}");
        assert!(word_to_diagram(&w)?.equal(&word_to_diagram(&nf)?));
    }
    Ok(())
}
