//! The exact piecewise-linear representation: every diagram induces a
//! strictly increasing PL bijection from its top interval onto its bottom
//! interval, and concatenation becomes composition.
//!
//! ```bash
//! cargo run --example piecewise_linear
//! ```

use diagram_groups::plmaps::diagram_to_plmap;
use diagram_groups::thompson::{generator, word_to_diagram, FWord};

fn main() -> Result<(), diagram_groups::Error> {
    // the generator x0 of F_2 is the classic slope-2/1/(1/2) map
    let x0 = generator(2, 0)?;
    let f = diagram_to_plmap(&x0);
    println!("x0 of F_2     : {f}");
    println!("slopes valid for r=2: {}", f.validate_fr(2));
    println!("slopes valid for r=3: {}", f.validate_fr(3));

    // concatenation of diagrams is composition of maps
    let x1 = generator(2, 1)?;
    let g = diagram_to_plmap(&x1);
    let product = diagram_to_plmap(&x0.compose(&x1)?);
    println!("x0 then x1    : {product}");
    assert_eq!(product, f.then(&g)?);

    // inverses compose to the identity
    let back = f.then(&f.inverse())?;
    println!("x0 o x0^-1    : {back} (identity: {})", back.is_identity());

    // a longer word over F_9, still exact rational arithmetic
    let w = FWord::parse(9, "x0 x3 X1")?;
    let d = word_to_diagram(&w)?;
    let h = diagram_to_plmap(&d);
    println!("image of '{w}' over F_9 has {} breakpoints", h.points().len());
    println!("valid for r=9: {}", h.validate_fr(9));
    Ok(())
}
