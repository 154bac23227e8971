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

//! Left-right planarity test (Brandes' formulation of de Fraysseix and
//! Rosenstiehl), producing a combinatorial embedding. All three DFS passes
//! are iterative so deep paths do not exhaust the stack.

use std::collections::HashMap;

use crate::embedding::Embedding;
use crate::graph::Graph;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn edge(e: usize) -> Self {
        Interval {
            low: Some(e),
            high: Some(e),
        }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'a> {
    g: &'a Graph,
    height: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    // oriented edges
    src: Vec<usize>,
    dst: Vec<usize>,
    out: Vec<Vec<usize>>,
    oriented: HashMap<(usize, usize), usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    roots: Vec<usize>,
    // testing phase
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<Option<usize>>,
}

impl<'a> LrState<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.node_count();
        let m = g.edge_count();
        LrState {
            g,
            height: vec![NONE; n],
            parent_edge: vec![None; n],
            src: Vec::with_capacity(m),
            dst: Vec::with_capacity(m),
            out: vec![Vec::new(); n],
            oriented: HashMap::with_capacity(m),
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting: Vec::with_capacity(m),
            roots: Vec::new(),
            reference: vec![None; m],
            side: vec![1; m],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![None; m],
        }
    }

    fn key(u: usize, v: usize) -> (usize, usize) {
        if u < v {
            (u, v)
        } else {
            (v, u)
        }
    }

    fn orient(&mut self) {
        let n = self.g.node_count();
        for r in 0..n {
            if self.height[r] == NONE {
                self.height[r] = 0;
                self.roots.push(r);
                self.dfs_orientation(r);
            }
        }
    }

    fn dfs_orientation(&mut self, root: usize) {
        let n = self.g.node_count();
        let mut ind = vec![0usize; n];
        let mut skip_init: HashMap<usize, bool> = HashMap::new();
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            while ind[v] < self.g.degree(v) {
                let w = self.g.neighbors(v)[ind[v]];
                let vw;
                match self.oriented.get(&Self::key(v, w)) {
                    Some(&id) if self.src[id] == v && skip_init.get(&id) == Some(&true) => {
                        vw = id;
                    }
                    Some(_) => {
                        ind[v] += 1;
                        continue;
                    }
                    None => {
                        let id = self.src.len();
                        self.src.push(v);
                        self.dst.push(w);
                        self.out[v].push(id);
                        self.oriented.insert(Self::key(v, w), id);
                        self.lowpt.push(self.height[v]);
                        self.lowpt2.push(self.height[v]);
                        self.nesting.push(0);
                        if self.height[w] == NONE {
                            self.parent_edge[w] = Some(id);
                            self.height[w] = self.height[v] + 1;
                            dfs.push(v);
                            dfs.push(w);
                            skip_init.insert(id, true);
                            break;
                        }
                        self.lowpt[id] = self.height[w];
                        vw = id;
                    }
                }
                self.nesting[vw] = 2 * self.lowpt[vw] as i64;
                if self.lowpt2[vw] < self.height[v] {
                    self.nesting[vw] += 1;
                }
                if let Some(e) = e {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn sort_by_nesting(&mut self) {
        for v in 0..self.out.len() {
            let nesting = &self.nesting;
            self.out[v].sort_by_key(|&e| nesting[e]);
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) if !i.is_empty() => self.lowpt[h] > self.lowpt[b],
            _ => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.expect("nonempty pair")];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.expect("nonempty pair")];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn test(&mut self) -> bool {
        let roots = self.roots.clone();
        roots.into_iter().all(|r| self.dfs_testing(r))
    }

    fn dfs_testing(&mut self, root: usize) -> bool {
        let n = self.g.node_count();
        let mut ind = vec![0usize; n];
        let mut skip_init = vec![false; self.src.len()];
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let mut skip_final = false;
            while ind[v] < self.out[v].len() {
                let ei = self.out[v][ind[v]];
                let w = self.dst[ei];
                if !skip_init[ei] {
                    self.stack_bottom[ei] = self.stack.len();
                    if self.parent_edge[w] == Some(ei) {
                        dfs.push(v);
                        dfs.push(w);
                        skip_init[ei] = true;
                        skip_final = true;
                        break;
                    }
                    self.lowpt_edge[ei] = Some(ei);
                    self.stack.push(ConflictPair {
                        left: Interval::default(),
                        right: Interval::edge(ei),
                    });
                }
                if self.lowpt[ei] < self.height[v] {
                    let e = e.expect("return edge below root");
                    if ei == self.out[v][0] {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !skip_final {
                if let Some(e) = e {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let Some(mut q) = self.stack.pop() else {
                break;
            };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qlow = q.right.low.expect("nonempty interval");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(pl) = p.right.low {
                    self.reference[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[qlow] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.reference[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.reference[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(l) = p.right.low {
                    self.reference[l] = p.left.low;
                    self.side[l] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edge has a conflict pair");
            let hl = top.left.high;
            let hr = top.right.high;
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut chain = vec![e];
        let mut cur = e;
        while let Some(r) = self.reference[cur] {
            chain.push(r);
            cur = r;
        }
        // resolve from the end of the reference chain backwards
        for k in (0..chain.len() - 1).rev() {
            let (x, r) = (chain[k], chain[k + 1]);
            self.side[x] *= self.side[r];
            self.reference[x] = None;
        }
        self.side[e]
    }

    fn embed(mut self) -> Embedding {
        let m = self.src.len();
        for e in 0..m {
            let s = self.sign(e);
            self.nesting[e] *= s;
        }
        self.sort_by_nesting();
        let n = self.g.node_count();
        let mut emb = HalfEdges::new(n);
        for v in 0..n {
            let mut prev = None;
            for &e in &self.out[v] {
                emb.add_cw(v, self.dst[e], prev);
                prev = Some(self.dst[e]);
            }
        }
        let mut left_ref = vec![NONE; n];
        let mut right_ref = vec![NONE; n];
        let mut ind = vec![0usize; n];
        for &root in &self.roots {
            let mut dfs = vec![root];
            while let Some(v) = dfs.pop() {
                while ind[v] < self.out[v].len() {
                    let ei = self.out[v][ind[v]];
                    ind[v] += 1;
                    let w = self.dst[ei];
                    if self.parent_edge[w] == Some(ei) {
                        emb.add_first(w, v);
                        left_ref[v] = w;
                        right_ref[v] = w;
                        dfs.push(v);
                        dfs.push(w);
                        break;
                    }
                    if self.side[ei] == 1 {
                        let r = right_ref[w];
                        emb.add_cw(w, v, (r != NONE).then_some(r));
                    } else {
                        let r = left_ref[w];
                        emb.add_ccw(w, v, (r != NONE).then_some(r));
                        left_ref[w] = v;
                    }
                }
            }
        }
        emb.into_embedding()
    }
}

/// Doubly linked rotation lists keyed by half-edge, used while the
/// embedding is being assembled.
struct HalfEdges {
    cw: HashMap<(usize, usize), usize>,
    ccw: HashMap<(usize, usize), usize>,
    first: Vec<Option<usize>>,
}

impl HalfEdges {
    fn new(n: usize) -> Self {
        HalfEdges {
            cw: HashMap::new(),
            ccw: HashMap::new(),
            first: vec![None; n],
        }
    }

    fn add_cw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => {
                self.cw.insert((v, w), w);
                self.ccw.insert((v, w), w);
                self.first[v] = Some(w);
            }
            Some(r) => {
                let cw_ref = self.cw[&(v, r)];
                self.cw.insert((v, r), w);
                self.cw.insert((v, w), cw_ref);
                self.ccw.insert((v, cw_ref), w);
                self.ccw.insert((v, w), r);
            }
        }
    }

    fn add_ccw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => self.add_cw(v, w, None),
            Some(r) => {
                let ccw_ref = self.ccw[&(v, r)];
                self.add_cw(v, w, Some(ccw_ref));
                if self.first[v] == Some(r) {
                    self.first[v] = Some(w);
                }
            }
        }
    }

    fn add_first(&mut self, v: usize, w: usize) {
        let r = self.first[v];
        self.add_ccw(v, w, r);
    }

    fn into_embedding(self) -> Embedding {
        let n = self.first.len();
        let mut rotation = vec![Vec::new(); n];
        for (v, rot) in rotation.iter_mut().enumerate() {
            if let Some(f) = self.first[v] {
                let mut cur = f;
                loop {
                    rot.push(cur);
                    cur = self.cw[&(v, cur)];
                    if cur == f {
                        break;
                    }
                }
            }
        }
        Embedding::from_rotation(rotation)
    }
}

fn too_dense(g: &Graph) -> bool {
    let n = g.node_count();
    n > 2 && g.edge_count() > 3 * n - 6
}

/// Decides planarity without building an embedding.
pub fn is_planar(g: &Graph) -> bool {
    if too_dense(g) {
        return false;
    }
    let mut st = LrState::new(g);
    st.orient();
    st.sort_by_nesting();
    st.test()
}

/// Returns a combinatorial embedding, or `None` when `g` is not planar.
pub fn planar_embedding(g: &Graph) -> Option<Embedding> {
    if too_dense(g) {
        return None;
    }
    let mut st = LrState::new(g);
    st.orient();
    st.sort_by_nesting();
    if !st.test() {
        return None;
    }
    Some(st.embed())
}
