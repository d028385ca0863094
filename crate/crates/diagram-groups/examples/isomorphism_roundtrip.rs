//! Both directions of the diagram-group isomorphisms: map elements of
//! `F_{r'}` into diagrams over the two-letter family presentations with
//! `phi`, pull them back with `psi`, and confirm the round trip on every
//! instance.
//!
//! ```bash
//! cargo run --example isomorphism_roundtrip
//! ```

use diagram_groups::families::standard_instances;
use diagram_groups::isomorphisms::{normalize_middle, phi, psi};
use diagram_groups::thompson::{generator, word_to_diagram, FWord};

fn main() -> Result<(), diagram_groups::Error> {
    for inst in standard_instances() {
        let rp = inst.rprime();
        println!("{}: target {} realizes F_{rp}", inst.name(), inst.target());

        // push a generator through and look at the image
        let g0 = generator(rp, 0)?;
        let image = phi(&inst, &g0)?;
        println!("  phi(x0): {} cells over the target", image.cell_count());

        // the middle normalization behind psi
        let ms = normalize_middle(&inst, &image, None)?;
        println!(
            "  longest positive path normalizes to '{}'",
            inst.target().word_string(&ms.middle)
        );

        // and back again
        let back = psi(&inst, &image)?;
        assert!(back.equal(&g0));
        println!("  psi(phi(x0)) = x0  ok");

        // a longer word
        let w = FWord::parse(rp, "x0 x2 X1 x1 X0")?;
        let d = word_to_diagram(&w)?;
        let round = psi(&inst, &phi(&inst, &d)?)?;
        assert!(round.equal(&d));
        println!("  psi(phi('{w}')) round-trips  ok");
    }
    Ok(())
}
