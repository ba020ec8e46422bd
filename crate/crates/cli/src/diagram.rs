//! Zig-zag diagrams: one bullet per basis vector, `a` drawn southwest and
//! `b` drawn southeast.

use std::fmt::Write as _;

use klein4::gf::Elem;
use klein4::linalg::Matrix;
use klein4::{Error, KModule, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub label: String,
    /// Loewy layer: 0 for vectors outside the image of both actions.
    pub row: usize,
    pub col: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// Set when the edge cannot be drawn as a single diagonal stroke: the
    /// source column has several targets, or the endpoints are not adjacent.
    pub dotted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramLayout {
    pub nodes: Vec<Node>,
    pub a_edges: Vec<Edge>,
    pub b_edges: Vec<Edge>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Action {
    A,
    B,
}

impl Action {
    fn step(self) -> i64 {
        match self {
            Action::A => -2,
            Action::B => 2,
        }
    }
}

struct RawEdge {
    action: Action,
    from: usize,
    to: usize,
    single: bool,
}

fn edges_of(m: &Matrix, action: Action, out: &mut Vec<RawEdge>) -> Result<()> {
    for j in 0..m.cols() {
        let col = m.column(j);
        if let Some(bad) = col.iter().find(|e| **e != Elem::ZERO && **e != Elem::ONE) {
            return Err(Error::NotDiagrammable(format!(
                "entry {} in column {j} is not 0 or 1",
                bad.bits()
            )));
        }
        let targets: Vec<usize> = (0..col.len()).filter(|&i| col[i] == Elem::ONE).collect();
        let single = targets.len() == 1;
        out.extend(targets.into_iter().map(|to| RawEdge { action, from: j, to, single }));
    }
    Ok(())
}

/// Longest path from a source node; fails on cycles.
fn layers(n: usize, edges: &[RawEdge]) -> Result<Vec<usize>> {
    let mut row = vec![0usize; n];
    for _ in 0..=n {
        let mut changed = false;
        for e in edges {
            if row[e.to] < row[e.from] + 1 {
                row[e.to] = row[e.from] + 1;
                changed = true;
            }
        }
        if !changed {
            return Ok(row);
        }
    }
    Err(Error::NotDiagrammable("the action graph has a cycle".into()))
}

fn is_solid(e: &RawEdge, row: &[usize], col: &[i64]) -> bool {
    e.single && row[e.to] == row[e.from] + 1 && col[e.to] - col[e.from] == e.action.step()
}

/// Places top nodes left to right in `tops` order, four columns apart, and
/// every other node two columns from the first source that reaches it.
fn place(n: usize, tops: &[usize], edges: &[RawEdge], row: &[usize]) -> Vec<i64> {
    let mut col: Vec<Option<i64>> = vec![None; n];
    let occupied = |col: &[Option<i64>], r: usize, x: i64| (0..n).any(|i| row[i] == r && col[i] == Some(x));
    for (k, &t) in tops.iter().enumerate() {
        col[t] = Some(4 * k as i64);
    }
    let depth = row.iter().copied().max().unwrap_or(0);
    for r in 0..depth {
        let mut sources: Vec<usize> = (0..n).filter(|&i| row[i] == r && col[i].is_some()).collect();
        sources.sort_by_key(|&i| col[i]);
        // b-edges claim their targets first, so a band's closing a-edge is
        // the one left dotted.
        for action in [Action::B, Action::A] {
            for &s in &sources {
                for e in edges.iter().filter(|e| e.from == s && e.single && e.action == action) {
                    if col[e.to].is_some() {
                        continue;
                    }
                    let mut x = col[s].unwrap() + e.action.step();
                    while occupied(&col, row[e.to], x) {
                        x += 2;
                    }
                    col[e.to] = Some(x);
                }
            }
        }
        // Nodes of the next layer not reached by a single-target edge.
        let right = col.iter().flatten().copied().max().unwrap_or(-2);
        let mut x = right + 2;
        let pending: Vec<usize> = (0..n).filter(|&i| row[i] == r + 1 && col[i].is_none()).collect();
        for i in pending {
            col[i] = Some(x);
            x += 2;
        }
    }
    col.into_iter().map(|c| c.expect("every layer is placed")).collect()
}

/// Lays out the module's action in its given basis. Tops are tried in basis
/// order and reversed; the placement with fewer dotted edges wins, ties going
/// to basis order.
pub fn layout_zigzag(m: &KModule) -> Result<DiagramLayout> {
    let n = m.dim();
    let mut edges = Vec::new();
    edges_of(m.a(), Action::A, &mut edges)?;
    edges_of(m.b(), Action::B, &mut edges)?;
    let row = layers(n, &edges)?;
    let tops: Vec<usize> = (0..n).filter(|&i| row[i] == 0).collect();
    let reversed: Vec<usize> = tops.iter().rev().copied().collect();

    let forward = place(n, &tops, &edges, &row);
    let backward = place(n, &reversed, &edges, &row);
    let dotted = |col: &[i64]| edges.iter().filter(|e| !is_solid(e, &row, col)).count();
    let mut col = if dotted(&backward) < dotted(&forward) { backward } else { forward };
    let left = col.iter().copied().min().unwrap_or(0);
    col.iter_mut().for_each(|x| *x -= left);

    let nodes = (0..n).map(|i| Node { label: format!("e{i}"), row: row[i], col: col[i] }).collect();
    let mut layout = DiagramLayout { nodes, a_edges: Vec::new(), b_edges: Vec::new() };
    for e in &edges {
        let edge = Edge { from: e.from, to: e.to, dotted: !is_solid(e, &row, &col) };
        match e.action {
            Action::A => layout.a_edges.push(edge),
            Action::B => layout.b_edges.push(edge),
        }
    }
    Ok(layout)
}

impl DiagramLayout {
    /// Text rendering: bullets as `*`, solid `a` edges as `/`, solid `b`
    /// edges as `\`, dotted edges listed underneath.
    pub fn to_ascii(&self) -> String {
        let depth = self.nodes.iter().map(|n| n.row + 1).max().unwrap_or(0);
        let width = self.nodes.iter().map(|n| n.col as usize + 2).max().unwrap_or(0);
        let mut grid = vec![vec![' '; width]; 2 * depth.max(1) - 1];
        for node in &self.nodes {
            grid[2 * node.row][node.col as usize] = '*';
        }
        for (edges, glyph, offset) in [(&self.a_edges, '/', -1i64), (&self.b_edges, '\\', 1)] {
            for e in edges.iter().filter(|e| !e.dotted) {
                let src = &self.nodes[e.from];
                grid[2 * src.row + 1][(src.col + offset) as usize] = glyph;
            }
        }
        let mut out = String::new();
        for line in grid {
            let text: String = line.into_iter().collect();
            writeln!(out, "{}", text.trim_end()).unwrap();
        }
        for (name, edges) in [("a", &self.a_edges), ("b", &self.b_edges)] {
            let mut sources: Vec<usize> = edges.iter().filter(|e| e.dotted).map(|e| e.from).collect();
            sources.dedup();
            for s in sources {
                let targets: Vec<&str> = edges
                    .iter()
                    .filter(|e| e.dotted && e.from == s)
                    .map(|e| self.nodes[e.to].label.as_str())
                    .collect();
                writeln!(out, "{name}: {} -> {} (dotted)", self.nodes[s].label, targets.join(" + ")).unwrap();
            }
        }
        out
    }

    /// Graphviz-dialect rendering with point-shaped nodes, one rank per row.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph module {\n  node [shape=point];\n");
        let depth = self.nodes.iter().map(|n| n.row + 1).max().unwrap_or(0);
        for r in 0..depth {
            let mut members: Vec<&Node> = self.nodes.iter().filter(|n| n.row == r).collect();
            members.sort_by_key(|n| n.col);
            let names: Vec<&str> = members.iter().map(|n| n.label.as_str()).collect();
            writeln!(out, "  {{ rank=same; {}; }}", names.join("; ")).unwrap();
        }
        for (name, edges) in [("a", &self.a_edges), ("b", &self.b_edges)] {
            for e in edges {
                let style = if e.dotted { ", style=dotted" } else { "" };
                writeln!(
                    out,
                    "  {} -> {} [label=\"{name}\"{style}];",
                    self.nodes[e.from].label, self.nodes[e.to].label
                )
                .unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}
