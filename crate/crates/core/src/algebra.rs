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

//! Quivers with monomial relations and special idempotent loops, and the
//! string and clannish axioms.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub special: bool,
}

/// On-disk form of a presentation. Relations are arrow lists composed right
/// to left, so `["c", "a"]` is the path `a` followed by `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub special: bool,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// `kQ/(R ∪ {ε² - ε})`. Vertices and arrows are kept sorted by id, so indices
/// follow the lexicographic order of ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub id: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Vec<usize>>,
    arrow_index: HashMap<String, usize>,
}

impl AlgebraPresentation {
    pub fn from_file(file: &PresentationFile) -> Result<Self> {
        let mut vertices = file.vertices.clone();
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Structural("vertices: duplicate vertex id".into()));
        }
        let vindex: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut specs = file.arrows.clone();
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut arrows = Vec::with_capacity(specs.len());
        for (k, a) in specs.iter().enumerate() {
            if k > 0 && specs[k - 1].id == a.id {
                return Err(Error::Structural(format!("arrows: duplicate arrow id {:?}", a.id)));
            }
            if a.id.is_empty() || a.id.ends_with(['-', '*']) || a.id.contains(char::is_whitespace) {
                return Err(Error::Structural(format!("arrows: unusable arrow id {:?}", a.id)));
            }
            let source = *vindex.get(a.source.as_str()).ok_or_else(|| {
                Error::Structural(format!("arrows[{}].source: unknown vertex {:?}", a.id, a.source))
            })?;
            let target = *vindex.get(a.target.as_str()).ok_or_else(|| {
                Error::Structural(format!("arrows[{}].target: unknown vertex {:?}", a.id, a.target))
            })?;
            if a.special && source != target {
                return Err(Error::Structural(format!(
                    "arrows[{}].special: special arrows must be loops",
                    a.id
                )));
            }
            arrows.push(Arrow {
                id: a.id.clone(),
                source,
                target,
                special: a.special,
            });
        }
        let arrow_index: HashMap<String, usize> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.clone(), i))
            .collect();
        let mut relations = Vec::new();
        for (k, r) in file.relations.iter().enumerate() {
            if r.len() < 2 {
                return Err(Error::Structural(format!(
                    "relations[{k}]: relations need at least two arrows"
                )));
            }
            let path = r
                .iter()
                .map(|id| {
                    arrow_index.get(id).copied().ok_or_else(|| {
                        Error::Structural(format!("relations[{k}]: unknown arrow {id:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            for w in path.windows(2) {
                if arrows[w[0]].source != arrows[w[1]].target {
                    return Err(Error::Structural(format!(
                        "relations[{k}]: {} cannot follow {}",
                        arrows[w[0]].id, arrows[w[1]].id
                    )));
                }
            }
            relations.push(path);
        }
        relations.sort();
        relations.dedup();
        Ok(AlgebraPresentation {
            id: file.id.clone().unwrap_or_else(|| "presentation".into()),
            vertices,
            arrows,
            relations,
            arrow_index,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            id: Some(self.id.clone()),
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    id: a.id.clone(),
                    source: self.vertices[a.source].clone(),
                    target: self.vertices[a.target].clone(),
                    special: a.special,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| r.iter().map(|&i| self.arrows[i].id.clone()).collect())
                .collect(),
        }
    }

    /// The Kronecker quiver `1 ⇉ 2` with arrows `a`, `b`.
    pub fn kronecker() -> Self {
        Self::from_json(include_str!("../data/kronecker.json")).unwrap()
    }

    /// One vertex with an ordinary loop `a`, a special loop `eps` and `a² = 0`.
    pub fn loop_clannish() -> Self {
        Self::from_json(include_str!("../data/loop_clannish.json")).unwrap()
    }

    /// Five vertices, special loops `eps`, `eta`, `kappa` and relations
    /// `ca`, `db`, `ec`.
    pub fn five_vertex_clannish() -> Self {
        Self::from_json(include_str!("../data/five_vertex_clannish.json")).unwrap()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    /// Relations as arrow indices, composed right to left.
    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn max_relation_len(&self) -> usize {
        self.relations.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn special_arrows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].special)
    }

    pub fn has_special(&self) -> bool {
        self.arrows.iter().any(|a| a.special)
    }

    /// Same quiver and relations with every arrow ordinary.
    pub fn without_special(&self) -> Self {
        let mut p = self.clone();
        for a in p.arrows.iter_mut() {
            a.special = false;
        }
        p
    }

    fn is_relation_traversal(&self, path: &[usize]) -> bool {
        self.relations
            .iter()
            .any(|r| r.len() == path.len() && r.iter().rev().eq(path.iter()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub is_string_algebra: bool,
    pub is_clannish: bool,
    pub is_finite_dimensional: bool,
    /// `None` when infinite.
    pub k_dimension: Option<u64>,
    /// Longest nonzero path, `None` when unbounded.
    pub max_path_length: Option<usize>,
    pub failed_axioms: Vec<AxiomFailure>,
}

impl AlgebraReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("string algebra:      {}\n", self.is_string_algebra));
        s.push_str(&format!("clannish:            {}\n", self.is_clannish));
        s.push_str(&format!("finite-dimensional:  {}\n", self.is_finite_dimensional));
        match self.k_dimension {
            Some(d) => s.push_str(&format!("k-dimension:         {d}\n")),
            None => s.push_str("k-dimension:         infinite\n"),
        }
        match self.max_path_length {
            Some(l) => s.push_str(&format!("max path length:     {l}\n")),
            None => s.push_str("max path length:     unbounded\n"),
        }
        for f in &self.failed_axioms {
            s.push_str(&format!("failed {}: {}\n", f.axiom, f.witness));
        }
        s
    }
}

/// Nonzero paths of `kQ/(R ∪ {ε²-ε})` in traversal order are exactly the
/// arrow sequences avoiding every relation and every repeated special loop.
/// States remember the last `k` arrows, enough to detect any relation.
struct PathAutomaton {
    states: Vec<Vec<usize>>,
    next: Vec<Vec<usize>>,
    initial: Vec<usize>,
}

impl PathAutomaton {
    fn new(p: &AlgebraPresentation) -> Self {
        let k = p.max_relation_len().saturating_sub(1).max(1);
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut states: Vec<Vec<usize>> = Vec::new();
        let mut next: Vec<Vec<usize>> = Vec::new();
        let mut initial = Vec::new();
        let mut queue = Vec::new();
        for a in 0..p.arrows.len() {
            let s = vec![a];
            let id = states.len();
            index.insert(s.clone(), id);
            states.push(s);
            next.push(Vec::new());
            initial.push(id);
            queue.push(id);
        }
        while let Some(id) = queue.pop() {
            let state = states[id].clone();
            let last = *state.last().unwrap();
            for y in 0..p.arrows.len() {
                if p.arrows[y].source != p.arrows[last].target {
                    continue;
                }
                if y == last && p.arrows[y].special {
                    continue;
                }
                let mut cand = state.clone();
                cand.push(y);
                if (2..=cand.len()).any(|l| p.is_relation_traversal(&cand[cand.len() - l..])) {
                    continue;
                }
                let keep = cand.len().min(k);
                let ns = cand[cand.len() - keep..].to_vec();
                let nid = *index.entry(ns.clone()).or_insert_with(|| {
                    states.push(ns);
                    next.push(Vec::new());
                    queue.push(states.len() - 1);
                    states.len() - 1
                });
                next[id].push(nid);
            }
        }
        PathAutomaton {
            states,
            next,
            initial,
        }
    }

    /// A cycle of states, reported by the arrows entering them.
    fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.states.len();
        let mut colour = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            if colour[s] != 0 {
                continue;
            }
            let mut stack = vec![(s, 0usize)];
            colour[s] = 1;
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < self.next[v].len() {
                    let w = self.next[v][*i];
                    *i += 1;
                    match colour[w] {
                        0 => {
                            colour[w] = 1;
                            parent[w] = v;
                            stack.push((w, 0));
                        }
                        1 => {
                            let mut cyc = vec![*self.states[w].last().unwrap()];
                            let mut u = v;
                            while u != w {
                                cyc.push(*self.states[u].last().unwrap());
                                u = parent[u];
                            }
                            cyc.reverse();
                            return Some(cyc);
                        }
                        _ => {}
                    }
                } else {
                    colour[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    /// (number of nonempty paths, longest path) on an acyclic automaton.
    fn count_and_longest(&self) -> (u64, usize) {
        let n = self.states.len();
        let mut count = vec![0u64; n];
        let mut longest = vec![0usize; n];
        let mut done = vec![false; n];
        for s in 0..n {
            if done[s] {
                continue;
            }
            let mut stack = vec![(s, 0usize)];
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < self.next[v].len() {
                    let w = self.next[v][*i];
                    *i += 1;
                    if !done[w] {
                        stack.push((w, 0));
                    }
                } else {
                    let mut c = 1u64;
                    let mut l = 1usize;
                    for &w in &self.next[v] {
                        c = c.saturating_add(count[w]);
                        l = l.max(1 + longest[w]);
                    }
                    count[v] = c;
                    longest[v] = l;
                    done[v] = true;
                    stack.pop();
                }
            }
        }
        let total = self
            .initial
            .iter()
            .fold(0u64, |acc, &s| acc.saturating_add(count[s]));
        let l = self.initial.iter().map(|&s| longest[s]).max().unwrap_or(0);
        (total, l)
    }
}

fn arrow_ids(p: &AlgebraPresentation, path: &[usize]) -> String {
    path.iter()
        .map(|&i| p.arrows[i].id.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn degree_failures(p: &AlgebraPresentation, tag: &str, out: &mut Vec<AxiomFailure>) {
    for (v, name) in p.vertices.iter().enumerate() {
        let starting: Vec<_> = p.arrows.iter().filter(|a| a.source == v).map(|a| a.id.as_str()).collect();
        let ending: Vec<_> = p.arrows.iter().filter(|a| a.target == v).map(|a| a.id.as_str()).collect();
        if starting.len() > 2 {
            out.push(AxiomFailure {
                axiom: tag.into(),
                witness: format!("vertex {name}: arrows {} start there", starting.join(", ")),
            });
        }
        if ending.len() > 2 {
            out.push(AxiomFailure {
                axiom: tag.into(),
                witness: format!("vertex {name}: arrows {} end there", ending.join(", ")),
            });
        }
    }
}

/// For every arrow `b` (ordinary only when `ordinary_only`): at most one `a`
/// with `ba` not a relation, at most one `c` with `cb` not a relation.
fn biserial_failures(p: &AlgebraPresentation, tag: &str, ordinary_only: bool, out: &mut Vec<AxiomFailure>) {
    let is_rel2 = |x: usize, y: usize| p.relations.iter().any(|r| r.as_slice() == [x, y]);
    for (b, arrow) in p.arrows.iter().enumerate() {
        if ordinary_only && arrow.special {
            continue;
        }
        let before: Vec<usize> = (0..p.arrows.len())
            .filter(|&a| p.arrows[a].target == arrow.source && !is_rel2(b, a))
            .collect();
        if before.len() > 1 {
            out.push(AxiomFailure {
                axiom: tag.into(),
                witness: format!(
                    "arrow {}: {} all compose before it without a relation",
                    arrow.id,
                    arrow_ids(p, &before)
                ),
            });
        }
        let after: Vec<usize> = (0..p.arrows.len())
            .filter(|&c| p.arrows[c].source == arrow.target && !is_rel2(c, b))
            .collect();
        if after.len() > 1 {
            out.push(AxiomFailure {
                axiom: tag.into(),
                witness: format!(
                    "arrow {}: {} all compose after it without a relation",
                    arrow.id,
                    arrow_ids(p, &after)
                ),
            });
        }
    }
}

fn finiteness(p: &AlgebraPresentation) -> (Option<u64>, Option<usize>, Option<Vec<usize>>) {
    let auto = PathAutomaton::new(p);
    match auto.find_cycle() {
        Some(cycle) => (None, None, Some(cycle)),
        None => {
            let (paths, longest) = auto.count_and_longest();
            (Some(paths + p.vertices.len() as u64), Some(longest), None)
        }
    }
}

/// Checks (S1)-(S3). Special loops are reported as a failure since a
/// string algebra has none.
pub fn validate_string_algebra(p: &AlgebraPresentation) -> AlgebraReport {
    let mut failed = Vec::new();
    let plain = p.without_special();
    if p.has_special() {
        failed.push(AxiomFailure {
            axiom: "S0".into(),
            witness: format!(
                "special loops {} present",
                arrow_ids(p, &p.special_arrows().collect::<Vec<_>>())
            ),
        });
    }
    degree_failures(p, "S1", &mut failed);
    biserial_failures(&plain, "S2", false, &mut failed);
    let (dim, ell, cycle) = finiteness(&plain);
    if let Some(c) = &cycle {
        failed.push(AxiomFailure {
            axiom: "S3".into(),
            witness: format!("relation-free cycle {} repeats forever", arrow_ids(p, c)),
        });
    }
    let clannish = clannish_failures(p).is_empty();
    let (k_dimension, max_path_length) = if p.has_special() {
        let (d, l, _) = finiteness(p);
        (d, l)
    } else {
        (dim, ell)
    };
    AlgebraReport {
        is_string_algebra: failed.is_empty(),
        is_clannish: clannish,
        is_finite_dimensional: k_dimension.is_some(),
        k_dimension,
        max_path_length,
        failed_axioms: failed,
    }
}

fn clannish_failures(p: &AlgebraPresentation) -> Vec<AxiomFailure> {
    let mut failed = Vec::new();
    for r in &p.relations {
        let first = *r.first().unwrap();
        let last = *r.last().unwrap();
        if p.arrows[first].special || p.arrows[last].special {
            failed.push(AxiomFailure {
                axiom: "C0".into(),
                witness: format!("relation {} starts or ends in a special loop", arrow_ids(p, r)),
            });
        } else if r.windows(2).any(|w| w[0] == w[1] && p.arrows[w[0]].special) {
            failed.push(AxiomFailure {
                axiom: "C0".into(),
                witness: format!("relation {} contains the square of a special loop", arrow_ids(p, r)),
            });
        }
    }
    degree_failures(p, "C1", &mut failed);
    biserial_failures(p, "C2", true, &mut failed);
    failed
}

/// Checks (C0)-(C2) and decides finite-dimensionality of the quotient.
pub fn validate_clannish(p: &AlgebraPresentation) -> AlgebraReport {
    let failed = clannish_failures(p);
    let (k_dimension, max_path_length, _) = finiteness(p);
    let string = validate_string_algebra(p).is_string_algebra;
    AlgebraReport {
        is_string_algebra: string,
        is_clannish: failed.is_empty(),
        is_finite_dimensional: k_dimension.is_some(),
        k_dimension,
        max_path_length,
        failed_axioms: failed,
    }
}

/// Longest nonzero path of the quotient algebra.
pub fn path_length_bound(p: &AlgebraPresentation) -> Result<usize> {
    match finiteness(p) {
        (_, Some(l), _) => Ok(l),
        (_, None, cycle) => Err(Error::NotFiniteDimensional(format!(
            "cycle {} never meets a relation",
            arrow_ids(p, &cycle.unwrap_or_default())
        ))),
    }
}

/// Number of arrows starting and ending at each vertex, keyed by vertex id.
pub fn vertex_degrees(p: &AlgebraPresentation) -> BTreeMap<String, (usize, usize)> {
    let mut out = BTreeMap::new();
    for (v, name) in p.vertices.iter().enumerate() {
        let s = p.arrows.iter().filter(|a| a.source == v).count();
        let t = p.arrows.iter().filter(|a| a.target == v).count();
        out.insert(name.clone(), (s, t));
    }
    out
}

/// Ids of the special loops at each vertex.
pub fn special_loops_at(p: &AlgebraPresentation, v: usize) -> BTreeSet<usize> {
    p.special_arrows().filter(|&i| p.arrows[i].source == v).collect()
}
