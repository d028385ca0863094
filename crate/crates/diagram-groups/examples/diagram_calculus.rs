//! Tour of the core diagram calculus: build a diagram as a derivation,
//! compose, invert, reduce, and split it along its longest positive path.
//!
//! ```bash
//! cargo run --example diagram_calculus
//! ```

use std::sync::Arc;

use diagram_groups::diagrams::Diagram;
use diagram_groups::presentations::Presentation;

fn main() -> Result<(), diagram_groups::Error> {
    let pres = Arc::new(Presentation::parse("<a,b | a=bab, b=aba>")?);

    // A derivation showing a^5 = a: two expansions, then four contractions.
    let d = Diagram::from_text(
        pres.clone(),
        "base: aaaaa\n+0@1\n+0@5\n-1@0\n-0@1\n-1@2\n-0@0\n",
    )?;
    println!("top    = {}", pres.word_string(d.top()));
    println!("bottom = {}", pres.word_string(d.bottom()));
    println!("cells  = {}", d.cell_count());
    println!("words along the derivation:");
    for w in d.replay() {
        println!("  {}", pres.word_string(&w));
    }

    // the mirror image inverts it, and the product cancels to the identity
    let round = d.compose(&d.invert())?;
    println!(
        "d o d^-1 has {} cells and reduces to {} cells",
        round.cell_count(),
        round.reduce().cell_count()
    );

    // an irreducible diagram splits as positive o negative along the
    // longest positive path
    let (pos, neg) = d.split()?;
    println!(
        "split: {} forward cells over middle '{}', {} forward cells mirrored",
        pos.cell_count(),
        pres.word_string(pos.bottom()),
        neg.cell_count()
    );

    // isotopic derivations canonicalize identically
    let canon = d.canon();
    println!("canonical derivation:\n{canon}");
    Ok(())
}
