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

//! Kuratowski subdivisions as certificates of non-planarity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::PlanarError;
use crate::graph::Graph;
use crate::lr::is_planar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

impl fmt::Display for KuratowskiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KuratowskiKind::K5 => write!(f, "K5"),
            KuratowskiKind::K33 => write!(f, "K3,3"),
        }
    }
}

/// A subgraph that is a subdivision of K5 or K3,3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kuratowski {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

fn planar_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    is_planar(&Graph::from_edges(n, edges.iter().copied()))
}

/// Extracts a Kuratowski subdivision from a non-planar graph, or returns
/// `None` when `g` is planar.
pub fn find_kuratowski(g: &Graph) -> Option<Kuratowski> {
    let n = g.node_count();
    let all = g.edges();
    if planar_edges(n, &all) {
        return None;
    }
    // shortest non-planar prefix: its last edge is essential
    let (mut lo, mut hi) = (0, all.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if planar_edges(n, &all[..mid]) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let mut kept: Vec<(usize, usize)> = all[..lo].to_vec();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        if planar_edges(n, &trial) {
            i += 1;
        } else {
            kept = trial;
        }
    }
    let w = classify(&kept).ok()?;
    Some(w)
}

/// Smooths degree-two vertices and recognises K5 or K3,3.
fn classify(edges: &[(usize, usize)]) -> Result<Kuratowski, PlanarError> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for &(u, v) in edges {
        if u == v || !seen.insert((u.min(v), u.max(v))) {
            return Err(PlanarError::InvalidWitness(
                "witness must be a simple graph".into(),
            ));
        }
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let branch: Vec<usize> = adj
        .iter()
        .filter(|(_, nb)| nb.len() != 2)
        .map(|(&v, _)| v)
        .collect();
    let kind = match branch.len() {
        5 if branch.iter().all(|v| adj[v].len() == 4) => KuratowskiKind::K5,
        6 if branch.iter().all(|v| adj[v].len() == 3) => KuratowskiKind::K33,
        _ => {
            return Err(PlanarError::InvalidWitness(format!(
                "branch vertex degrees do not match K5 or K3,3: {:?}",
                branch.iter().map(|v| adj[v].len()).collect::<Vec<_>>()
            )))
        }
    };
    let is_branch: BTreeSet<usize> = branch.iter().copied().collect();
    let mut pairs = BTreeSet::new();
    let mut used = BTreeSet::new();
    for &b in &branch {
        for &first in &adj[&b] {
            let mut prev = b;
            let mut cur = first;
            let mut path_edges = vec![(b.min(cur), b.max(cur))];
            while !is_branch.contains(&cur) {
                let nb = &adj[&cur];
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
                path_edges.push((prev.min(cur), prev.max(cur)));
                if path_edges.len() > edges.len() {
                    return Err(PlanarError::InvalidWitness(
                        "subdivision path does not end in a branch vertex".into(),
                    ));
                }
            }
            if cur == b {
                return Err(PlanarError::InvalidWitness(
                    "subdivision path returns to its start".into(),
                ));
            }
            if b < cur && !pairs.insert((b, cur)) {
                return Err(PlanarError::InvalidWitness(format!(
                    "two subdivision paths join {b} and {cur}"
                )));
            }
            used.extend(path_edges);
        }
    }
    if used.len() != edges.len() {
        return Err(PlanarError::InvalidWitness(
            "witness contains edges off the subdivision paths".into(),
        ));
    }
    match kind {
        KuratowskiKind::K5 => {
            if pairs.len() != 10 {
                return Err(PlanarError::InvalidWitness("K5 needs 10 paths".into()));
            }
        }
        KuratowskiKind::K33 => {
            if pairs.len() != 9 {
                return Err(PlanarError::InvalidWitness("K3,3 needs 9 paths".into()));
            }
            // two-colour the branch vertices through the smoothed edges
            let mut colour: BTreeMap<usize, bool> = BTreeMap::new();
            colour.insert(branch[0], false);
            for _ in 0..branch.len() {
                for &(a, b) in &pairs {
                    match (colour.get(&a).copied(), colour.get(&b).copied()) {
                        (Some(x), None) => {
                            colour.insert(b, !x);
                        }
                        (None, Some(y)) => {
                            colour.insert(a, !y);
                        }
                        (Some(x), Some(y)) if x == y => {
                            return Err(PlanarError::InvalidWitness(
                                "smoothed graph is not bipartite".into(),
                            ))
                        }
                        _ => {}
                    }
                }
            }
            if colour.values().filter(|&&c| c).count() != 3 {
                return Err(PlanarError::InvalidWitness("parts are not 3 + 3".into()));
            }
        }
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    Ok(Kuratowski {
        kind,
        branch_vertices: branch,
        edges: sorted,
    })
}

impl Kuratowski {
    /// Re-checks that the witness is a subgraph of `g` and a genuine
    /// subdivision of the claimed graph.
    pub fn verify(&self, g: &Graph) -> Result<(), PlanarError> {
        for &(u, v) in &self.edges {
            if u >= g.node_count() || v >= g.node_count() || !g.has_edge(u, v) {
                return Err(PlanarError::InvalidWitness(format!(
                    "edge ({u}, {v}) is not in the graph"
                )));
            }
        }
        let again = classify(&self.edges)?;
        if again.kind != self.kind {
            return Err(PlanarError::InvalidWitness(format!(
                "claimed {} but found {}",
                self.kind, again.kind
            )));
        }
        Ok(())
    }
}
