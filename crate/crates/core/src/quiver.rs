// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Coefficient quivers: one node per basis vector, one edge per nonzero
//! matrix entry.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use planar_frag::{find_kuratowski, planar_embedding, Graph, Kuratowski, MultiEmbedding};
use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::ModuleRep;

#[derive(Clone, Debug, PartialEq)]
pub struct QuiverEdge<F: Field> {
    pub arrow: usize,
    pub source: usize,
    pub target: usize,
    pub coeff: F::Elem,
}

impl<F: Field> QuiverEdge<F> {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Planarity {
    Planar(MultiEmbedding),
    NonPlanar(Kuratowski),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    /// Loops excluded.
    pub max_in: usize,
    pub max_out: usize,
    pub max_total: usize,
    pub loops: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientQuiver<F: Field> {
    pub field: F,
    pub labels: Vec<String>,
    /// Algebra vertex of each node.
    pub vertex_of: Vec<usize>,
    pub arrow_ids: Vec<String>,
    /// Sorted by arrow, then source, then target.
    pub edges: Vec<QuiverEdge<F>>,
}

impl<F: Field> CoefficientQuiver<F> {
    pub fn of(m: &ModuleRep<F>) -> Self {
        let mut edges = Vec::new();
        for a in 0..m.presentation().arrows().len() {
            for (s, t, c) in m.entries(a) {
                edges.push(QuiverEdge {
                    arrow: a,
                    source: s,
                    target: t,
                    coeff: c,
                });
            }
        }
        CoefficientQuiver {
            field: m.field().clone(),
            labels: (0..m.dim()).map(|k| m.render_label(k)).collect(),
            vertex_of: (0..m.dim()).map(|k| m.vertex_of(k)).collect(),
            arrow_ids: m.presentation().arrows().iter().map(|a| a.id.clone()).collect(),
            edges,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Edges that are not loops, as `(source, target)`.
    pub fn proper_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().filter(|e| !e.is_loop()).map(|e| (e.source, e.target)).collect()
    }

    pub fn underlying_graph(&self) -> Graph {
        Graph::from_edges(self.node_count(), self.proper_edges())
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.underlying_graph().is_connected()
    }

    /// Connected with one edge fewer than nodes, loops ignored; parallel
    /// edges count twice.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.proper_edges().len() + 1 == self.node_count()
    }

    /// An embedding of the full multigraph, loops and parallel edges
    /// included, or a Kuratowski subgraph.
    pub fn planarity(&self) -> Planarity {
        let g = self.underlying_graph();
        match planar_embedding(&g) {
            Some(emb) => {
                let all: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.source, e.target)).collect();
                Planarity::Planar(MultiEmbedding::restore(&emb, &all))
            }
            None => Planarity::NonPlanar(find_kuratowski(&g).expect("non-planar graph")),
        }
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let n = self.node_count();
        let mut inn = vec![0usize; n];
        let mut out = vec![0usize; n];
        let mut loops = 0;
        for e in &self.edges {
            if e.is_loop() {
                loops += 1;
            } else {
                out[e.source] += 1;
                inn[e.target] += 1;
            }
        }
        DegreeStats {
            max_in: inn.iter().copied().max().unwrap_or(0),
            max_out: out.iter().copied().max().unwrap_or(0),
            max_total: (0..n).map(|v| inn[v] + out[v]).max().unwrap_or(0),
            loops,
        }
    }

    /// Edges of the longest directed path without loops, or `None` when
    /// the loop-free quiver has a cycle.
    pub fn longest_path(&self) -> Option<usize> {
        let n = self.node_count();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for (s, t) in self.proper_edges() {
            succ[s].push(t);
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut depth = vec![0usize; n];
        let mut done = 0;
        while let Some(v) = stack.pop() {
            done += 1;
            for &w in &succ[v] {
                depth[w] = depth[w].max(depth[v] + 1);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        (done == n).then(|| depth.into_iter().max().unwrap_or(0))
    }

    /// Graphviz text. Nodes sorted by label and coloured by algebra
    /// vertex, edges coloured by arrow; coefficients other than one are
    /// printed next to the arrow id.
    pub fn to_dot(&self, vertex_names: &[String]) -> String {
        const PALETTE: [&str; 8] = [
            "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#9c755f",
        ];
        let mut s = String::from("digraph coefficient_quiver {\n");
        let mut order: Vec<usize> = (0..self.node_count()).collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]).then(a.cmp(&b)));
        for k in order {
            let v = self.vertex_of[k];
            let name = vertex_names.get(v).map(String::as_str).unwrap_or("?");
            let _ = writeln!(
                s,
                "  n{k} [label=\"{}\", style=filled, fillcolor=\"{}\", tooltip=\"vertex {name}\"];",
                self.labels[k],
                PALETTE[v % PALETTE.len()]
            );
        }
        let mut edges: Vec<&QuiverEdge<F>> = self.edges.iter().collect();
        edges.sort_by(|x, y| {
            (&self.labels[x.source], &self.labels[x.target], x.arrow)
                .cmp(&(&self.labels[y.source], &self.labels[y.target], y.arrow))
        });
        for e in edges {
            let mut label = self.arrow_ids[e.arrow].clone();
            if !self.field.is_one(&e.coeff) {
                let _ = write!(label, " ({})", self.field.format(&e.coeff));
            }
            let _ = writeln!(
                s,
                "  n{} -> n{} [label=\"{label}\", color=\"{}\"];",
                e.source,
                e.target,
                PALETTE[(e.arrow + 3) % PALETTE.len()]
            );
        }
        s.push_str("}\n");
        s
    }

    /// Rebuilds the arrow matrices of `m` from the edges alone; equal to
    /// `m`'s own when the quiver was read off `m`.
    pub fn reconstruct(&self, m: &ModuleRep<F>) -> Vec<Matrix<F>> {
        let p = m.presentation();
        let pos = |v: usize, k: usize| m.basis_at(v).iter().position(|&x| x == k).expect("node at vertex");
        let mut out: Vec<Matrix<F>> = p
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(&self.field, m.basis_at(a.target).len(), m.basis_at(a.source).len()))
            .collect();
        for e in &self.edges {
            let a = p.arrow(e.arrow);
            out[e.arrow][(pos(a.target, e.target), pos(a.source, e.source))] = e.coeff.clone();
        }
        out
    }
}

/// The mapping quiver of a linear map in chosen bases: nodes for source
/// and target basis vectors and an edge per nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingQuiver {
    pub sources: usize,
    pub targets: usize,
    /// `(source index, target index)`.
    pub edges: Vec<(usize, usize)>,
}

impl MappingQuiver {
    pub fn of<F: Field>(map: &Matrix<F>) -> Self {
        let f = map.field();
        let mut edges = Vec::new();
        for c in 0..map.cols() {
            for r in 0..map.rows() {
                if !f.is_zero(&map[(r, c)]) {
                    edges.push((c, r));
                }
            }
        }
        MappingQuiver {
            sources: map.cols(),
            targets: map.rows(),
            edges,
        }
    }

    fn graph(&self) -> Graph {
        Graph::from_edges(
            self.sources + self.targets,
            self.edges.iter().map(|&(s, t)| (s, self.sources + t)),
        )
    }

    /// No cycles: every component has one edge fewer than nodes.
    pub fn is_forest(&self) -> bool {
        let distinct: BTreeSet<_> = self.edges.iter().collect();
        distinct.len() == self.edges.len()
            && self.edges.len() + self.graph().components().len() == self.sources + self.targets
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.graph().is_connected()
    }
}

/// Shorthand used by tests and examples.
pub fn coefficient_quiver<F: Field>(m: &ModuleRep<F>) -> CoefficientQuiver<F> {
    CoefficientQuiver::of(m)
}

