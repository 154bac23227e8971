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

//! Removing few vertices from a planar graph so that only small components
//! remain.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::embedding::Embedding;
use crate::error::{CertifyError, PlanarError};
use crate::graph::Graph;
use crate::kuratowski::find_kuratowski;
use crate::lr::planar_embedding;
use crate::separator::{planar_separator, restrict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Nothing removed: the graph is already small enough.
    Passthrough,
    /// Every component is a path or a cycle; cut at equal distances.
    Equidistant,
    /// Recursive planar separators.
    Separator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentationResult {
    /// Removed vertices, sorted.
    pub removed: Vec<usize>,
    /// Components of the remaining graph, each sorted.
    pub components: Vec<Vec<usize>>,
    pub eps: Ratio<u64>,
    /// Bound on component size achieved by this run.
    pub c_bound: usize,
    /// Graphs with at most this many vertices are returned whole.
    pub n0: usize,
    pub strategy: Strategy,
}

impl FragmentationResult {
    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn max_component(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// `|x| <= eps * n` in exact arithmetic.
pub fn within_fraction(x: usize, n: usize, eps: Ratio<u64>) -> bool {
    (x as u128) * (*eps.denom() as u128) <= (*eps.numer() as u128) * (n as u128)
}

fn check_eps(eps: Ratio<u64>) -> Result<(), PlanarError> {
    if *eps.numer() == 0 || eps > Ratio::from_integer(1) {
        return Err(PlanarError::BadEps(format!("{eps} is not in (0, 1]")));
    }
    Ok(())
}

/// Ordered vertices of a component whose maximum degree is at most two,
/// together with whether it closes up into a cycle.
fn walk_path_or_cycle(g: &Graph, comp: &[usize]) -> Option<(Vec<usize>, bool)> {
    if comp.iter().any(|&v| g.degree(v) > 2) {
        return None;
    }
    let start = comp
        .iter()
        .copied()
        .find(|&v| g.degree(v) < 2)
        .unwrap_or(comp[0]);
    let cyclic = g.degree(start) == 2;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g.neighbors(cur).iter().copied().find(|&w| w != prev && w != start);
        match next {
            Some(w) if order.len() < comp.len() => {
                order.push(w);
                prev = cur;
                cur = w;
            }
            _ => break,
        }
    }
    Some((order, cyclic))
}

/// Cuts every `(t + 1)`-th vertex of a path; a cycle is first opened by one
/// extra cut.
fn equidistant_cuts(order: &[usize], cyclic: bool, t: usize, out: &mut Vec<usize>) {
    if order.len() <= t {
        return;
    }
    let body = if cyclic {
        out.push(order[0]);
        &order[1..]
    } else {
        order
    };
    for (i, &v) in body.iter().enumerate() {
        if (i + 1) % (t + 1) == 0 {
            out.push(v);
        }
    }
}

fn separate_until(g: &Graph, emb: &Embedding, comp: Vec<usize>, t: usize, out: &mut Vec<usize>) {
    let mut work = vec![comp];
    while let Some(part) = work.pop() {
        if part.len() <= t {
            continue;
        }
        let (sub, sub_emb) = restrict(g, emb, &part);
        let mut sep = planar_separator(&sub, &sub_emb).separator;
        if sep.is_empty() {
            sep.push(0);
        }
        let mut removed = vec![false; part.len()];
        for &v in &sep {
            removed[v] = true;
            out.push(part[v]);
        }
        for c in sub.components_avoiding(&removed) {
            work.push(c.into_iter().map(|v| part[v]).collect());
        }
    }
}

fn fragment_with(g: &Graph, emb: &Embedding, t: usize) -> (Vec<usize>, bool) {
    let mut removed = Vec::new();
    let mut all_simple = true;
    for comp in g.components() {
        if comp.len() <= t {
            continue;
        }
        match walk_path_or_cycle(g, &comp) {
            Some((order, cyclic)) => equidistant_cuts(&order, cyclic, t, &mut removed),
            None => {
                all_simple = false;
                separate_until(g, emb, comp, t, &mut removed);
            }
        }
    }
    removed.sort_unstable();
    removed.dedup();
    (removed, all_simple)
}

/// Fragments a planar graph. `emb` is computed when not supplied; a
/// non-planar graph yields an error carrying a Kuratowski subgraph.
///
/// The component bound starts at `floor(1/eps)` and grows by half until the
/// removed set fits into `eps * n`.
pub fn planar_fragment(
    g: &Graph,
    emb: Option<&Embedding>,
    eps: Ratio<u64>,
) -> Result<FragmentationResult, PlanarError> {
    check_eps(eps)?;
    let owned;
    let emb = match emb {
        Some(e) => {
            e.validate(g)?;
            e
        }
        None => {
            owned = match planar_embedding(g) {
                Some(e) => e,
                None => {
                    let k = find_kuratowski(g).expect("non-planar graph has a Kuratowski subgraph");
                    return Err(PlanarError::NotPlanar(Box::new(k)));
                }
            };
            &owned
        }
    };
    let n = g.node_count();
    let base = (eps.recip().to_integer() as usize).max(1);
    let mut t = base;
    loop {
        if t >= n {
            let components = g.components();
            return Ok(FragmentationResult {
                removed: Vec::new(),
                c_bound: components.iter().map(Vec::len).max().unwrap_or(0).max(base),
                components,
                eps,
                n0: t,
                strategy: Strategy::Passthrough,
            });
        }
        let (removed, all_simple) = fragment_with(g, emb, t);
        if within_fraction(removed.len(), n, eps) {
            let mut mask = vec![false; n];
            for &v in &removed {
                mask[v] = true;
            }
            let components = g.components_avoiding(&mask);
            debug_assert!(components.iter().all(|c| c.len() <= t));
            return Ok(FragmentationResult {
                removed,
                components,
                eps,
                c_bound: t,
                n0: t,
                strategy: if all_simple {
                    Strategy::Equidistant
                } else {
                    Strategy::Separator
                },
            });
        }
        t += t.div_ceil(2);
    }
}

/// Recomputes the components of `g - removed` and checks both inequalities.
pub fn certify_fragmentation(g: &Graph, result: &FragmentationResult) -> Result<(), CertifyError> {
    let n = g.node_count();
    let mut mask = vec![false; n];
    for &v in &result.removed {
        if v >= n {
            return Err(CertifyError::OutOfRange(v));
        }
        mask[v] = true;
    }
    let removed = mask.iter().filter(|&&b| b).count();
    if !within_fraction(removed, n, result.eps) {
        return Err(CertifyError::TooManyRemoved {
            removed,
            bound: format!("{} * {n}", result.eps),
        });
    }
    let comps = g.components_avoiding(&mask);
    for c in &comps {
        if c.len() > result.c_bound {
            return Err(CertifyError::ComponentTooLarge {
                vertex: c[0],
                size: c.len(),
                bound: result.c_bound,
            });
        }
    }
    let mut claimed = result.components.clone();
    claimed.sort();
    let mut actual = comps;
    actual.sort();
    if claimed != actual {
        return Err(CertifyError::ComponentMismatch);
    }
    Ok(())
}
