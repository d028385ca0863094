//! Explicit planar realization of a diagram: vertices, labeled edges with
//! rotation order, and cells. Used for counting, edge depths and rendering;
//! equality of diagrams is owned by the diagrams module.

use std::fmt::Write as _;

use crate::diagrams::{Diagram, Dir};
use crate::error::{Error, Result};
use crate::presentations::Letter;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug)]
pub struct GraphEdge {
    pub from: VertexId,
    pub to: VertexId,
    pub label: Letter,
}

#[derive(Clone, Debug)]
pub struct GraphCell {
    pub rel: usize,
    pub dir: Dir,
    pub top: Vec<EdgeId>,
    pub bottom: Vec<EdgeId>,
}

/// The planar graph of a diagram. Vertices and edges are created in
/// replay order; at every vertex the outgoing (and incoming) edges listed
/// in creation order run top to bottom, which is exactly the planar
/// rotation order.
#[derive(Clone, Debug)]
pub struct DiagramGraph {
    vertex_count: usize,
    edges: Vec<GraphEdge>,
    cells: Vec<GraphCell>,
    outgoing: Vec<Vec<EdgeId>>,
    incoming: Vec<Vec<EdgeId>>,
    top_path: Vec<EdgeId>,
    bottom_path: Vec<EdgeId>,
    names: Vec<char>,
}

impl DiagramGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn cells(&self) -> &[GraphCell] {
        &self.cells
    }

    /// Outgoing edges at `v`, top to bottom.
    pub fn outgoing(&self, v: VertexId) -> &[EdgeId] {
        &self.outgoing[v.0]
    }

    /// Incoming edges at `v`, top to bottom.
    pub fn incoming(&self, v: VertexId) -> &[EdgeId] {
        &self.incoming[v.0]
    }

    pub fn top_path(&self) -> &[EdgeId] {
        &self.top_path
    }

    pub fn bottom_path(&self) -> &[EdgeId] {
        &self.bottom_path
    }

    /// The leftmost vertex.
    pub fn iota(&self) -> VertexId {
        VertexId(0)
    }

    /// The rightmost vertex.
    pub fn tau(&self) -> VertexId {
        self.edges[self.top_path[self.top_path.len() - 1].0].to
    }

    pub fn label_name(&self, e: EdgeId) -> char {
        self.names[self.edges[e.0].label.index()]
    }

    /// Euler relation `v - e + (cells + 1) = 2` for the connected plane
    /// realization (the outer face adds one).
    pub fn euler_ok(&self) -> bool {
        self.vertex_count + self.cells.len() + 1 == self.edges.len() + 2
    }
}

/// Build the planar graph by replaying the derivation against an edge
/// frontier: each atom consumes the frontier edges of its factor and
/// installs fresh interior vertices, fresh edges and one cell.
pub fn realize(d: &Diagram) -> DiagramGraph {
    let pres = d.presentation();
    let top = d.top();
    let mut edges: Vec<GraphEdge> = Vec::new();
    let mut outgoing: Vec<Vec<EdgeId>> = vec![Vec::new(); top.len() + 1];
    let mut incoming: Vec<Vec<EdgeId>> = vec![Vec::new(); top.len() + 1];
    let mut cells: Vec<GraphCell> = Vec::new();

    for i in 0..top.len() {
        let e = EdgeId(i);
        edges.push(GraphEdge { from: VertexId(i), to: VertexId(i + 1), label: top[i] });
        outgoing[i].push(e);
        incoming[i + 1].push(e);
    }
    let top_path: Vec<EdgeId> = (0..top.len()).map(EdgeId).collect();
    let mut frontier = top_path.clone();

    for atom in d.atoms() {
        let rel = &pres.relations()[atom.rel];
        let (from, to) = match atom.dir {
            Dir::Forward => (&rel.lhs, &rel.rhs),
            Dir::Backward => (&rel.rhs, &rel.lhs),
        };
        let consumed: Vec<EdgeId> = frontier[atom.offset..atom.offset + from.len()].to_vec();
        let start = edges[consumed[0].0].from;
        let end = edges[consumed[consumed.len() - 1].0].to;
        let mut chain = vec![start];
        for _ in 1..to.len() {
            chain.push(VertexId(outgoing.len()));
            outgoing.push(Vec::new());
            incoming.push(Vec::new());
        }
        chain.push(end);
        let mut produced = Vec::with_capacity(to.len());
        for (k, &letter) in to.letters().iter().enumerate() {
            let e = EdgeId(edges.len());
            edges.push(GraphEdge { from: chain[k], to: chain[k + 1], label: letter });
            outgoing[chain[k].0].push(e);
            incoming[chain[k + 1].0].push(e);
            produced.push(e);
        }
        frontier.splice(atom.offset..atom.offset + from.len(), produced.iter().copied());
        cells.push(GraphCell { rel: atom.rel, dir: atom.dir, top: consumed, bottom: produced });
    }

    DiagramGraph {
        vertex_count: outgoing.len(),
        edges,
        cells,
        outgoing,
        incoming,
        top_path,
        bottom_path: frontier,
        names: pres.alphabet().to_vec(),
    }
}

/// Edge depths: the top edge has depth 0 and the bottom edges of each cell
/// sit one deeper than its top edge.
#[derive(Clone, Debug)]
pub struct DepthMap {
    depths: Vec<usize>,
}

impl DepthMap {
    pub fn get(&self, e: EdgeId) -> usize {
        self.depths[e.0]
    }
}

/// Depths are defined only for the case the proofs use: a positive diagram
/// with a single-letter top over a left-letter presentation, where every
/// cell consumes exactly one edge. Anything else is an error.
pub fn depths(d: &Diagram, g: &DiagramGraph) -> Result<DepthMap> {
    if !d.presentation().is_left_letter_form() {
        return Err(Error::NotLeftLetterForm);
    }
    if !d.is_positive() || d.top().len() != 1 {
        return Err(Error::InvalidParameter(
            "depths need a positive diagram with a single-letter top".into(),
        ));
    }
    let mut depth: Vec<Option<usize>> = vec![None; g.edge_count()];
    depth[g.top_path()[0].0] = Some(0);
    for cell in g.cells() {
        debug_assert_eq!(cell.top.len(), 1);
        let d0 = depth[cell.top[0].0].expect("consumed edge has a depth");
        for &e in &cell.bottom {
            depth[e.0] = Some(d0 + 1);
        }
    }
    Ok(DepthMap { depths: depth.into_iter().map(|d| d.expect("every edge gets a depth")).collect() })
}

/// Deterministic DOT output with edge labels and cell annotations.
pub fn render_dot(g: &DiagramGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph diagram {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=circle, fontsize=9];\n");
    let path_str = |path: &[EdgeId]| -> String {
        path.iter().map(|&e| g.label_name(e)).collect()
    };
    let _ = writeln!(out, "  // top path: {}", path_str(g.top_path()));
    let _ = writeln!(out, "  // bottom path: {}", path_str(g.bottom_path()));
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  v{v} [label=\"{v}\"];");
    }
    for (i, e) in g.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "  v{} -> v{} [label=\"{}\"]; // e{}",
            e.from.0,
            e.to.0,
            g.names[e.label.index()],
            i
        );
    }
    for (i, c) in g.cells().iter().enumerate() {
        let dir = match c.dir {
            Dir::Forward => "forward",
            Dir::Backward => "backward",
        };
        let list = |edges: &[EdgeId]| {
            edges.iter().map(|e| format!("e{}", e.0)).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(
            out,
            "  // cell {i}: relation {} {dir}, top [{}], bottom [{}]",
            c.rel,
            list(&c.top),
            list(&c.bottom)
        );
    }
    out.push_str("}\n");
    out
}
