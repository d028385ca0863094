//! Planar realization of a diagram: explicit vertices, labeled edges and
//! cells, edge depths, and DOT output for rendering.
//!
//! ```bash
//! cargo run --example render_graph | tail -n +4 > diagram.dot
//! dot -Tsvg diagram.dot -o diagram.svg   # with graphviz installed
//! ```

use std::sync::Arc;

use diagram_groups::diagrams::Diagram;
use diagram_groups::geometry::{depths, realize, render_dot};
use diagram_groups::presentations::Presentation;

fn main() -> Result<(), diagram_groups::Error> {
    let pres = Arc::new(Presentation::parse("<a,b | a=bab, b=aba>")?);

    let d = Diagram::from_text(
        pres.clone(),
        "base: aaaaa\n+0@1\n+0@5\n-1@0\n-0@1\n-1@2\n-0@0\n",
    )?;
    let g = realize(&d);
    println!(
        "// realization: {} vertices, {} edges, {} cells (euler ok: {})",
        g.vertex_count(),
        g.edge_count(),
        g.cell_count(),
        g.euler_ok()
    );

    // depths are defined for positive diagrams with a single-letter top
    let positive = Diagram::from_text(pres.clone(), "base: a\n+0@0\n+1@0\n+0@3\n+1@6\n")?;
    let pg = realize(&positive);
    let dm = depths(&positive, &pg)?;
    let labels: Vec<String> = pg
        .bottom_path()
        .iter()
        .map(|&e| format!("{}:{}", pg.label_name(e), dm.get(e)))
        .collect();
    println!("// bottom edges with depths: {}", labels.join(" "));

    print!("{}", render_dot(&g));
    Ok(())
}
