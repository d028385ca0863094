//! Breadth-first search for derivations: shortest ways of rewriting one
//! word into another, and loops assembled from search legs.
//!
//! ```bash
//! cargo run --example word_problem_search
//! ```

use std::sync::Arc;

use diagram_groups::isomorphisms::bfs_diagram;
use diagram_groups::presentations::Presentation;

fn main() -> Result<(), diagram_groups::Error> {
    let pres = Arc::new(Presentation::parse("<a,b | a=bab, b=aba>")?);
    let a = pres.parse_word("a")?;
    let a5 = pres.parse_word("a^5")?;

    // the shortest derivation of a^5 = a needs six cells
    match bfs_diagram(&pres, &a5, &a, 6) {
        Some(d) => {
            println!("shortest a^5 -> a derivation ({} cells):", d.cell_count());
            print!("{d}");
        }
        None => println!("not found within depth 6"),
    }

    // a and b are in different classes; no derivation exists at any depth
    let b = pres.parse_word("b")?;
    println!("a -> b within depth 6: {:?}", bfs_diagram(&pres, &a, &b, 6).is_some());

    // two expansion geodesics joined by a short searched bridge assemble
    // into a nontrivial element of the diagram group
    let u = pres.parse_word("aabaababb")?;
    let v = pres.parse_word("ababbabbb")?;
    let leg1 = bfs_diagram(&pres, &a, &u, 4).expect("four expansions reach u");
    let bridge = bfs_diagram(&pres, &u, &v, 2).expect("two moves apart");
    let leg2 = bfs_diagram(&pres, &a, &v, 4).expect("four expansions reach v");
    let loop_d = leg1.compose(&bridge)?.compose(&leg2.invert())?.reduce();
    println!(
        "loop a -> {} -> {} -> a reduces to {} cells",
        pres.word_string(&u),
        pres.word_string(&v),
        loop_d.cell_count()
    );
    Ok(())
}
