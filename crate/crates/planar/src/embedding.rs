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

//! Rotation systems and their face structure.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::PlanarError;
use crate::graph::Graph;

/// Combinatorial embedding of a simple graph: for every vertex its
/// neighbours in clockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Embedding {
    rotation: Vec<Vec<usize>>,
    position: Vec<HashMap<usize, usize>>,
}

impl From<Vec<Vec<usize>>> for Embedding {
    fn from(rotation: Vec<Vec<usize>>) -> Self {
        Embedding::from_rotation(rotation)
    }
}

impl From<Embedding> for Vec<Vec<usize>> {
    fn from(e: Embedding) -> Self {
        e.rotation
    }
}

impl Embedding {
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Self {
        let position = rotation
            .iter()
            .map(|r| r.iter().enumerate().map(|(i, &w)| (w, i)).collect())
            .collect();
        Embedding { rotation, position }
    }

    pub fn node_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// Successor of the half-edge `(v, w)` on its face.
    pub fn next_half_edge(&self, v: usize, w: usize) -> (usize, usize) {
        let rot = &self.rotation[w];
        let pos = self.position[w][&v];
        let x = rot[(pos + rot.len() - 1) % rot.len()];
        (w, x)
    }

    /// Faces as cyclic sequences of half-edges. Each half-edge occurs in
    /// exactly one face.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen: HashMap<(usize, usize), bool> = HashMap::new();
        let mut faces = Vec::new();
        for v in 0..self.rotation.len() {
            for &w in &self.rotation[v] {
                if seen.contains_key(&(v, w)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut h = (v, w);
                while !seen.contains_key(&h) {
                    seen.insert(h, true);
                    face.push(h);
                    h = self.next_half_edge(h.0, h.1);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Checks that the rotation lists the neighbours of `g` exactly and that
    /// every component satisfies Euler's formula `V - E + F = 2`.
    pub fn validate(&self, g: &Graph) -> Result<(), PlanarError> {
        if self.rotation.len() != g.node_count() {
            return Err(PlanarError::InvalidEmbedding(
                "vertex count differs from graph".into(),
            ));
        }
        for v in 0..g.node_count() {
            let mut r = self.rotation[v].clone();
            r.sort_unstable();
            if r != g.neighbors(v) {
                return Err(PlanarError::InvalidEmbedding(format!(
                    "rotation at {v} does not match its neighbours"
                )));
            }
        }
        let faces = self.faces();
        let comps = g.components();
        let mut comp_of = vec![0; g.node_count()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut face_count = vec![0i64; comps.len()];
        for f in &faces {
            face_count[comp_of[f[0].0]] += 1;
        }
        for (i, c) in comps.iter().enumerate() {
            let vs = c.len() as i64;
            if vs == 1 {
                continue;
            }
            let es = c.iter().map(|&v| g.degree(v)).sum::<usize>() as i64 / 2;
            if vs - es + face_count[i] != 2 {
                return Err(PlanarError::InvalidEmbedding(format!(
                    "Euler characteristic {} on component containing {}",
                    vs - es + face_count[i],
                    c[0]
                )));
            }
        }
        Ok(())
    }
}

/// End of an edge in a multigraph rotation system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: usize,
    /// `false` at the tail, `true` at the head.
    pub head: bool,
}

impl HalfEdge {
    fn twin(self) -> Self {
        HalfEdge {
            edge: self.edge,
            head: !self.head,
        }
    }
}

/// Rotation system of a multigraph with loops, obtained from an embedding of
/// its underlying simple graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiEmbedding {
    pub edges: Vec<(usize, usize)>,
    pub rotation: Vec<Vec<HalfEdge>>,
}

impl MultiEmbedding {
    /// Re-attaches parallel edges next to their simple representative and
    /// loops as adjacent half-edge pairs.
    pub fn restore(simple: &Embedding, edges: &[(usize, usize)]) -> Self {
        let n = simple.node_count();
        let mut parallel: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let mut loops: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                loops[u].push(id);
            } else {
                parallel.entry((u.min(v), u.max(v))).or_default().push(id);
            }
        }
        let mut rotation = vec![Vec::new(); n];
        for (v, rot) in rotation.iter_mut().enumerate() {
            for &w in simple.rotation(v) {
                let ids = &parallel[&(v.min(w), v.max(w))];
                let ordered: Vec<usize> = if v < w {
                    ids.clone()
                } else {
                    ids.iter().rev().copied().collect()
                };
                for id in ordered {
                    rot.push(HalfEdge {
                        edge: id,
                        head: edges[id].1 == v,
                    });
                }
            }
            for &id in &loops[v] {
                rot.push(HalfEdge {
                    edge: id,
                    head: false,
                });
                rot.push(HalfEdge {
                    edge: id,
                    head: true,
                });
            }
        }
        MultiEmbedding {
            edges: edges.to_vec(),
            rotation,
        }
    }

    fn vertex_of(&self, h: HalfEdge) -> usize {
        let (u, v) = self.edges[h.edge];
        if h.head {
            v
        } else {
            u
        }
    }

    pub fn face_count(&self) -> usize {
        let mut pos: HashMap<HalfEdge, usize> = HashMap::new();
        for rot in &self.rotation {
            for (i, &h) in rot.iter().enumerate() {
                pos.insert(h, i);
            }
        }
        let mut seen: HashMap<HalfEdge, ()> = HashMap::new();
        let mut faces = 0;
        for rot in &self.rotation {
            for &start in rot {
                if seen.contains_key(&start) {
                    continue;
                }
                faces += 1;
                let mut h = start;
                while !seen.contains_key(&h) {
                    seen.insert(h, ());
                    let t = h.twin();
                    let at = self.vertex_of(t);
                    let r = &self.rotation[at];
                    let p = pos[&t];
                    h = r[(p + r.len() - 1) % r.len()];
                }
            }
        }
        faces
    }

    /// Euler's formula on every component, counting loops and parallel
    /// edges.
    pub fn validate(&self) -> Result<(), PlanarError> {
        let n = self.rotation.len();
        let g = Graph::from_edges(n, self.edges.iter().copied());
        let comps = g.components();
        let nontrivial: Vec<_> = comps
            .iter()
            .filter(|c| c.len() > 1 || !self.rotation[c[0]].is_empty())
            .collect();
        for (v, rot) in self.rotation.iter().enumerate() {
            for &h in rot {
                if self.vertex_of(h) != v {
                    return Err(PlanarError::InvalidEmbedding(format!(
                        "half-edge of edge {} listed at wrong vertex {v}",
                        h.edge
                    )));
                }
            }
        }
        let total: usize = self.rotation.iter().map(Vec::len).sum();
        if total != 2 * self.edges.len() {
            return Err(PlanarError::InvalidEmbedding(
                "half-edge count differs from twice the edge count".into(),
            ));
        }
        let vs: i64 = nontrivial.iter().map(|c| c.len() as i64).sum();
        let es = self.edges.len() as i64;
        let fs = self.face_count() as i64;
        if vs - es + fs != 2 * nontrivial.len() as i64 {
            return Err(PlanarError::InvalidEmbedding(format!(
                "multigraph Euler characteristic {} over {} components",
                vs - es + fs,
                nontrivial.len()
            )));
        }
        Ok(())
    }
}
