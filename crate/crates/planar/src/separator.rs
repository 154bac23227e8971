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

//! Planar vertex separators: a BFS level phase followed by a fundamental
//! cycle separator on a triangulation of the middle levels.

use std::collections::{HashMap, VecDeque};

use crate::embedding::Embedding;
use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// Restricts an embedding to `vertices`, relabelling them `0..k` in order.
pub fn restrict(g: &Graph, emb: &Embedding, vertices: &[usize]) -> (Graph, Embedding) {
    let mut index = vec![NONE; g.node_count()];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = i;
    }
    let sub = g.induced(vertices);
    let rotation = vertices
        .iter()
        .map(|&v| {
            emb.rotation(v)
                .iter()
                .filter(|&&w| index[w] != NONE)
                .map(|&w| index[w])
                .collect()
        })
        .collect();
    (sub, Embedding::from_rotation(rotation))
}

/// Half-edge representation used for triangulating faces with dummy
/// vertices. Half-edges `2e` and `2e + 1` are twins.
struct Plane {
    tail: Vec<usize>,
    cw: Vec<usize>,
    ccw: Vec<usize>,
    first: Vec<usize>,
    nodes: usize,
}

impl Plane {
    fn from_embedding(g: &Graph, emb: &Embedding) -> (Self, HashMap<(usize, usize), usize>) {
        let n = g.node_count();
        let edges = g.edges();
        let mut id = HashMap::with_capacity(2 * edges.len());
        let mut tail = Vec::with_capacity(2 * edges.len());
        for (e, &(u, v)) in edges.iter().enumerate() {
            id.insert((u, v), 2 * e);
            id.insert((v, u), 2 * e + 1);
            tail.push(u);
            tail.push(v);
        }
        let m = tail.len();
        let mut plane = Plane {
            tail,
            cw: vec![NONE; m],
            ccw: vec![NONE; m],
            first: vec![NONE; n],
            nodes: n,
        };
        for v in 0..n {
            let rot = emb.rotation(v);
            let k = rot.len();
            for i in 0..k {
                let h = id[&(v, rot[i])];
                let nx = id[&(v, rot[(i + 1) % k])];
                plane.cw[h] = nx;
                plane.ccw[nx] = h;
            }
            if k > 0 {
                plane.first[v] = id[&(v, rot[0])];
            }
        }
        (plane, id)
    }

    fn next_in_face(&self, h: usize) -> usize {
        self.ccw[h ^ 1]
    }

    fn faces(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let m = self.tail.len();
        let mut face_of = vec![NONE; m];
        let mut faces = Vec::new();
        for s in 0..m {
            if face_of[s] != NONE {
                continue;
            }
            let f = faces.len();
            let mut walk = Vec::new();
            let mut h = s;
            while face_of[h] == NONE {
                face_of[h] = f;
                walk.push(h);
                h = self.next_in_face(h);
            }
            faces.push(walk);
        }
        (faces, face_of)
    }

    fn new_pair(&mut self, u: usize, v: usize) -> usize {
        let h = self.tail.len();
        self.tail.push(u);
        self.tail.push(v);
        self.cw.push(NONE);
        self.cw.push(NONE);
        self.ccw.push(NONE);
        self.ccw.push(NONE);
        h
    }

    /// Inserts a vertex inside the face bounded by `walk`, joined to every
    /// corner. Returns the dummy vertex and its spoke half-edges
    /// (corner -> dummy), one per corner.
    fn stellate(&mut self, walk: &[usize]) -> (usize, Vec<usize>) {
        let d = self.nodes;
        self.nodes += 1;
        self.first.push(NONE);
        let k = walk.len();
        let mut spokes = Vec::with_capacity(k);
        let mut outer = Vec::with_capacity(k);
        for i in 0..k {
            let h_in = walk[(i + k - 1) % k];
            let h_out = walk[i];
            let x = self.tail[h_out];
            let a = self.new_pair(x, d);
            let p = h_in ^ 1;
            self.ccw[p] = a;
            self.cw[a] = p;
            self.ccw[a] = h_out;
            self.cw[h_out] = a;
            spokes.push(a);
            outer.push(a ^ 1);
        }
        for i in 0..k {
            let b = outer[i];
            let nb = outer[(i + 1) % k];
            self.cw[b] = nb;
            self.ccw[nb] = b;
        }
        self.first[d] = outer[0];
        (d, spokes)
    }
}

/// Result of one separator call: vertices to delete.
#[derive(Clone, Debug)]
pub struct Separation {
    pub separator: Vec<usize>,
    pub phase: SeparatorPhase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatorPhase {
    MedianLevel,
    TwoLevels,
    Cycle,
}

/// Finds a separator of a connected planar graph with `n >= 2` vertices such
/// that, in the typical case, no component of the remainder exceeds `2n/3`.
pub fn planar_separator(g: &Graph, emb: &Embedding) -> Separation {
    let n = g.node_count();
    let root = (0..n).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
    let level = g.bfs_levels(root);
    let depth = level.iter().copied().filter(|&l| l != NONE).max().unwrap_or(0);
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); depth + 2];
    for v in 0..n {
        levels[level[v]].push(v);
    }
    let mut acc = 0;
    let mut l1 = 0;
    for (l, vs) in levels.iter().enumerate() {
        acc += vs.len();
        if 2 * acc >= n {
            l1 = l;
            break;
        }
    }
    let bound = (8.0 * n as f64).sqrt();
    if (levels[l1].len() as f64) <= bound {
        return Separation {
            separator: levels[l1].clone(),
            phase: SeparatorPhase::MedianLevel,
        };
    }
    // l0 in -1..=l1 (encoded as l0 + 1), l2 in l1+1..=depth+1
    let mut best0 = (2 * (l1 + 1), 0usize);
    for l in 0..=l1 {
        let c = levels[l].len() + 2 * (l1 - l);
        if c < best0.0 {
            best0 = (c, l + 1);
        }
    }
    let mut best2 = (usize::MAX, depth + 1);
    for l in l1 + 1..=depth + 1 {
        let c = levels[l].len() + 2 * (l - l1 - 1);
        if c < best2.0 {
            best2 = (c, l);
        }
    }
    let lo = best0.1; // middle starts at this level
    let l2 = best2.1;
    let mut sep: Vec<usize> = Vec::new();
    if lo > 0 {
        sep.extend(&levels[lo - 1]);
    }
    sep.extend(&levels[l2]);
    let middle: usize = (lo..l2).map(|l| levels[l].len()).sum();
    if 3 * middle <= 2 * n {
        sep.sort_unstable();
        return Separation {
            separator: sep,
            phase: SeparatorPhase::TwoLevels,
        };
    }
    let keep: Vec<usize> = (0..n).filter(|&v| level[v] < l2).collect();
    let (sub, sub_emb) = restrict(g, emb, &keep);
    let sub_level: Vec<usize> = keep.iter().map(|&v| level[v]).collect();
    let weight: Vec<bool> = sub_level.iter().map(|&l| l >= lo).collect();
    let sub_root = keep.iter().position(|&v| v == root).unwrap();
    let cycle = cycle_separator(&sub, &sub_emb, sub_root, &sub_level, &weight);
    for v in cycle {
        if weight[v] {
            sep.push(keep[v]);
        }
    }
    sep.sort_unstable();
    sep.dedup();
    Separation {
        separator: sep,
        phase: SeparatorPhase::Cycle,
    }
}

/// Fundamental cycle separator for a connected embedded graph whose BFS
/// levels from `root` are `level`. Returns the vertices (of `g`) on the
/// chosen cycle, balancing the vertices with `weight` set.
fn cycle_separator(
    g: &Graph,
    emb: &Embedding,
    root: usize,
    level: &[usize],
    weight: &[bool],
) -> Vec<usize> {
    let n = g.node_count();
    if n <= 2 {
        return (0..n).collect();
    }
    let (mut plane, id) = Plane::from_embedding(g, emb);
    let edge_count = plane.tail.len() / 2;
    let mut tree_edge = vec![false; edge_count];
    let mut parent = vec![NONE; n];
    let mut depth = level.to_vec();
    for v in 0..n {
        if v == root {
            continue;
        }
        let p = g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&w| level[w] + 1 == level[v])
            .expect("BFS parent");
        parent[v] = p;
        tree_edge[id[&(v, p)] / 2] = true;
    }
    let (faces, _) = plane.faces();
    for walk in faces.iter().filter(|w| w.len() != 3) {
        let (d, spokes) = plane.stellate(walk);
        let best = spokes
            .iter()
            .copied()
            .min_by_key(|&a| depth[plane.tail[a]])
            .unwrap();
        parent.push(plane.tail[best]);
        depth.push(depth[plane.tail[best]] + 1);
        debug_assert_eq!(parent.len(), d + 1);
        tree_edge.resize(plane.tail.len() / 2, false);
        tree_edge[best / 2] = true;
    }
    tree_edge.resize(plane.tail.len() / 2, false);
    let (faces, face_of) = plane.faces();
    let nf = faces.len();
    // dual spanning tree over non-tree edges
    let mut dual: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
    for (e, &t) in tree_edge.iter().enumerate() {
        if !t {
            let (a, b) = (face_of[2 * e], face_of[2 * e + 1]);
            dual[a].push((b, e));
            dual[b].push((a, e));
        }
    }
    let mut dparent_edge = vec![NONE; nf];
    let mut tin = vec![NONE; nf];
    let mut tout = vec![0; nf];
    let mut order = Vec::with_capacity(nf);
    let mut timer = 0;
    let mut stack = vec![(0usize, 0usize)];
    tin[0] = timer;
    timer += 1;
    order.push(0);
    while let Some(&mut (f, ref mut i)) = stack.last_mut() {
        if *i < dual[f].len() {
            let (h, e) = dual[f][*i];
            *i += 1;
            if tin[h] == NONE {
                tin[h] = timer;
                timer += 1;
                dparent_edge[h] = e;
                order.push(h);
                stack.push((h, 0));
            }
        } else {
            tout[f] = timer;
            stack.pop();
        }
    }
    // representative face per weighted vertex
    let mut face_weight = vec![0usize; nf];
    let mut rep_face = vec![NONE; n];
    for v in 0..n {
        if weight[v] && plane.first[v] != NONE {
            rep_face[v] = face_of[plane.first[v]];
            face_weight[rep_face[v]] += 1;
        }
    }
    let total: usize = weight.iter().filter(|&&w| w).count();
    let mut sub_weight = face_weight.clone();
    for &f in order.iter().rev() {
        if dparent_edge[f] != NONE {
            let e = dparent_edge[f];
            let other = if face_of[2 * e] == f {
                face_of[2 * e + 1]
            } else {
                face_of[2 * e]
            };
            sub_weight[other] += sub_weight[f];
        }
    }
    let inside_face = |f: usize, c: usize| tin[c] <= tin[f] && tin[f] < tout[c];
    let cycle_of = |e: usize| -> Vec<usize> {
        let mut a = plane.tail[2 * e];
        let mut b = plane.tail[2 * e + 1];
        let mut left = vec![a];
        let mut right = vec![b];
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a];
                left.push(a);
            } else {
                b = parent[b];
                right.push(b);
            }
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    };
    let mut best: Option<(usize, usize)> = None;
    for f in 0..nf {
        let e = dparent_edge[f];
        if e == NONE {
            continue;
        }
        let cyc = cycle_of(e);
        let mut on_cycle = 0;
        let mut on_cycle_inside = 0;
        for &v in &cyc {
            if v < n && weight[v] {
                on_cycle += 1;
                if inside_face(rep_face[v], f) {
                    on_cycle_inside += 1;
                }
            }
        }
        let inside = sub_weight[f] - on_cycle_inside;
        let outside = total - on_cycle - inside;
        let cost = inside.max(outside);
        if best.is_none_or(|(c, _)| cost < c) {
            best = Some((cost, e));
        }
    }
    match best {
        Some((_, e)) => cycle_of(e).into_iter().filter(|&v| v < n).collect(),
        None => (0..n).filter(|&v| weight[v]).take(1).collect(),
    }
}

/// Vertices of `g` in BFS order from `root`.
pub fn bfs_order(g: &Graph, root: usize) -> Vec<usize> {
    let mut seen = vec![false; g.node_count()];
    let mut out = Vec::new();
    let mut q = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = q.pop_front() {
        out.push(v);
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    out
}
