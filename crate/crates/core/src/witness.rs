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

//! Hyperfiniteness witnesses: a submodule of small codimension that splits
//! into summands of bounded dimension, and an independent checker for it.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use planar_frag::{planar_fragment, Graph, Strategy};
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::inner::{canonical_of_dim, LaurentModule};
use crate::io::ratio_text;
use crate::matrix::Matrix;
use crate::module::{
    band_planar_submodule, build_band_module, build_string_module, BaseChange, InnerModule,
    ModuleKind, ModuleRep, ModuleSource,
};
use crate::poly::Poly;
use crate::quiver::CoefficientQuiver;
use crate::word::{enumerate_bands, enumerate_strings};

/// Vertices with a directed path of length at most `depth` into `seed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedRemovalSet {
    pub seed: Vec<usize>,
    pub depth: usize,
    /// Sorted.
    pub closure: Vec<usize>,
    /// For each node in the closure: the next node on a shortest path into
    /// the seed (itself for seed nodes) and the length of that path.
    pub path: Vec<Option<(usize, usize)>>,
}

impl ClosedRemovalSet {
    pub fn contains(&self, v: usize) -> bool {
        self.closure.binary_search(&v).is_ok()
    }

    /// No edge leaves the complement into the closure. Guaranteed when
    /// `depth` is at least the longest path of the quiver.
    pub fn complement_is_closed<F: Field>(&self, q: &CoefficientQuiver<F>) -> bool {
        q.proper_edges()
            .into_iter()
            .all(|(s, t)| self.contains(s) || !self.contains(t))
    }
}

/// Reverse breadth-first search from `seed`.
pub fn predecessor_closure<F: Field>(q: &CoefficientQuiver<F>, seed: &[usize], depth: usize) -> ClosedRemovalSet {
    let n = q.node_count();
    let mut pred = vec![Vec::new(); n];
    for (s, t) in q.proper_edges() {
        pred[t].push(s);
    }
    let mut path: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut queue = VecDeque::new();
    for &v in seed {
        if path[v].is_none() {
            path[v] = Some((v, 0));
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = path[v].unwrap().1;
        if d == depth {
            continue;
        }
        for &u in &pred[v] {
            if path[u].is_none() {
                path[u] = Some((v, d + 1));
                queue.push_back(u);
            }
        }
    }
    let mut seed = seed.to_vec();
    seed.sort_unstable();
    seed.dedup();
    ClosedRemovalSet {
        seed,
        depth,
        closure: (0..n).filter(|&v| path[v].is_some()).collect(),
        path,
    }
}

/// A base change block in text form: basis indices and the new basis
/// vectors as columns over the old ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub indices: Vec<usize>,
    pub columns: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleStep {
    /// `H`.
    pub codimension: usize,
    /// Basis of the planar submodule, in the rebased parent.
    pub kept: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentStep {
    #[serde(with = "ratio_text")]
    pub eps_prime: Ratio<u64>,
    #[serde(with = "ratio_text")]
    pub eps_tilde: Ratio<u64>,
    /// Depth of the predecessor closure.
    pub ell: usize,
    pub max_indegree: usize,
    /// `sum_{i=0}^{ell} d^i`.
    pub closure_factor: u64,
    /// Cut set and its closure, in the parent basis.
    pub removed: Vec<usize>,
    pub closure: Vec<usize>,
    pub c_bound: usize,
    pub strategy: Strategy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessMode {
    /// Fragmentation of the coefficient quiver, after the submodule step
    /// for bands.
    Pipeline,
    /// The module is too small relative to `eps`: `N = M`.
    WholeModule,
}

/// `N` is spanned by `kept` in the parent basis after `base_change`, and
/// splits along `summands`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperfinitenessWitness {
    pub presentation: String,
    pub field: String,
    pub module: String,
    pub kind: ModuleKind,
    #[serde(with = "ratio_text")]
    pub eps: Ratio<u64>,
    pub l_eps: usize,
    pub mode: WitnessMode,
    pub parent_dim: usize,
    pub base_change: Vec<BlockRecord>,
    pub submodule_step: Option<SubmoduleStep>,
    pub fragmentation: Option<FragmentStep>,
    pub kept: Vec<usize>,
    pub kept_labels: Vec<String>,
    pub summands: Vec<Vec<usize>>,
}

impl HyperfinitenessWitness {
    pub fn dim_n(&self) -> usize {
        self.kept.len()
    }

    pub fn summand_dims(&self) -> Vec<usize> {
        self.summands.iter().map(Vec::len).collect()
    }
}

fn check_eps(eps: Ratio<u64>) -> Result<()> {
    if *eps.numer() == 0 || eps >= Ratio::from_integer(1) {
        return Err(Error::BadEps(eps.to_string()));
    }
    Ok(())
}

fn big(r: Ratio<u64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `dim M > 2H / eps`, the size above which the submodule step pays off.
pub fn band_threshold_met(dim: usize, codim: usize, eps: Ratio<u64>) -> bool {
    int(dim) * big(eps) > int(2 * codim)
}

/// A short description of where a module came from.
pub fn describe<F: Field>(m: &ModuleRep<F>) -> String {
    let p = m.presentation();
    match m.source() {
        ModuleSource::String { word, t } => match t {
            Some(t) => format!("string {} T={}", word.word.format(p), u8::from(*t)),
            None => format!("string {}", word.word.format(p)),
        },
        ModuleSource::Band { word, inner } => {
            let what = match inner {
                InnerModule::Laurent(v) => format!("chi {}", v.charpoly().format()),
                InnerModule::TwoIdempotent(v) => format!("idempotents of rank {},{}", v.phi().rank(), v.psi().rank()),
            };
            format!("band {} dim {} {what}", word.word.format(p), inner.dim())
        }
        ModuleSource::Derived(why) => format!("derived ({why})"),
    }
}

fn block_records<F: Field>(f: &F, bc: &BaseChange<F>) -> Vec<BlockRecord> {
    bc.blocks
        .iter()
        .map(|(idx, m)| BlockRecord {
            indices: idx.clone(),
            columns: (0..m.cols())
                .map(|c| m.column(c).iter().map(|x| f.format(x)).collect())
                .collect(),
        })
        .collect()
}

fn parse_blocks<F: Field>(f: &F, records: &[BlockRecord]) -> Result<BaseChange<F>> {
    let mut blocks = Vec::new();
    for r in records {
        let cols = r
            .columns
            .iter()
            .map(|c| c.iter().map(|x| f.parse(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if cols.iter().any(|c| c.len() != r.indices.len()) {
            return Err(Error::DimensionMismatch("base change column has the wrong length".into()));
        }
        blocks.push((r.indices.clone(), Matrix::from_columns(f, r.indices.len(), &cols)));
    }
    Ok(BaseChange { blocks })
}

fn components_of(g: &Graph, removed: &[bool]) -> Vec<Vec<usize>> {
    let mut comps = g.components_avoiding(removed);
    for c in &mut comps {
        c.sort_unstable();
    }
    comps.sort();
    comps
}

fn whole_module<F: Field>(m: &ModuleRep<F>, eps: Ratio<u64>, base_change: Vec<BlockRecord>) -> HyperfinitenessWitness {
    let g = CoefficientQuiver::of(m).underlying_graph();
    let summands = components_of(&g, &vec![false; m.dim()]);
    let l_eps = summands.iter().map(Vec::len).max().unwrap_or(0).max(1);
    let kept: Vec<usize> = (0..m.dim()).collect();
    HyperfinitenessWitness {
        presentation: m.presentation().id.clone(),
        field: m.field().name(),
        module: describe(m),
        kind: m.kind(),
        eps,
        l_eps,
        mode: WitnessMode::WholeModule,
        parent_dim: m.dim(),
        base_change,
        submodule_step: None,
        fragmentation: None,
        kept_labels: kept.iter().map(|&k| m.render_label(k)).collect(),
        kept,
        summands,
    }
}

/// Cuts `y` into bounded pieces. Returns the kept nodes, the summands and
/// the fragmentation record, all in the indices of `y`.
fn fragment<F: Field>(y: &ModuleRep<F>, eps_prime: Ratio<u64>) -> Result<(Vec<usize>, Vec<Vec<usize>>, FragmentStep)> {
    let q = CoefficientQuiver::of(y);
    let ell = q
        .longest_path()
        .ok_or_else(|| Error::Unsupported("coefficient quiver has an oriented cycle".into()))?;
    let d = q.degree_stats().max_in as u64;
    let overflow = || Error::Unsupported("closure factor overflows".into());
    let mut factor: u64 = 0;
    let mut power: u64 = 1;
    for i in 0..=ell {
        factor = factor.checked_add(power).ok_or_else(overflow)?;
        if i < ell {
            power = power.checked_mul(d).ok_or_else(overflow)?;
        }
    }
    let denom = eps_prime.denom().checked_mul(factor).ok_or_else(overflow)?;
    let eps_tilde = Ratio::new(*eps_prime.numer(), denom);
    let g = q.underlying_graph();
    let frag = planar_fragment(&g, None, eps_tilde)?;
    let closure = predecessor_closure(&q, &frag.removed, ell);
    debug_assert!(closure.complement_is_closed(&q));
    let mut mask = vec![false; y.dim()];
    for &v in &closure.closure {
        mask[v] = true;
    }
    let kept = (0..y.dim()).filter(|&k| !mask[k]).collect();
    let summands = components_of(&g, &mask);
    let step = FragmentStep {
        eps_prime,
        eps_tilde,
        ell,
        max_indegree: d as usize,
        closure_factor: factor,
        removed: frag.removed,
        closure: closure.closure,
        c_bound: frag.c_bound,
        strategy: frag.strategy,
    };
    Ok((kept, summands, step))
}

/// The witness pipeline. Band modules first pass to their planar
/// submodule of codimension `H` with half of `eps`, unless they have
/// dimension at most `2H / eps`, in which case the whole module is its own
/// witness. The (planar) coefficient quiver is then fragmented with
/// `eps' / sum_{i<=ell} d^i`, the cut set closed under predecessors and
/// the rest split into connected components.
pub fn witness<F: Field>(m: &ModuleRep<F>, eps: Ratio<u64>) -> Result<HyperfinitenessWitness> {
    check_eps(eps)?;
    let f = m.field();
    let is_band = matches!(m.source(), ModuleSource::Band { .. });
    let (work, eps_prime, map, base_change, step) = if is_band {
        let planar = band_planar_submodule(m)?;
        let h = planar.codimension();
        let records = block_records(f, &planar.base_change);
        if !band_threshold_met(m.dim(), h, eps) {
            let mut w = whole_module(&planar.rebased, eps, records);
            w.module = describe(m);
            w.kind = m.kind();
            return Ok(w);
        }
        let kept = planar.witness.kept.clone();
        let step = SubmoduleStep {
            codimension: h,
            kept: kept.clone(),
        };
        (planar.submodule, eps / 2, kept, records, Some(step))
    } else {
        let all = (0..m.dim()).collect();
        (m.clone(), eps, all, Vec::new(), None)
    };
    let (kept_y, summands_y, mut frag) = fragment(&work, eps_prime)?;
    let lift = |v: &[usize]| -> Vec<usize> { v.iter().map(|&k| map[k]).collect() };
    frag.removed = lift(&frag.removed);
    frag.closure = lift(&frag.closure);
    let kept = lift(&kept_y);
    let summands: Vec<Vec<usize>> = summands_y.iter().map(|s| lift(s)).collect();
    let l_eps = summands.iter().map(Vec::len).max().unwrap_or(0).max(1);
    Ok(HyperfinitenessWitness {
        presentation: m.presentation().id.clone(),
        field: f.name(),
        module: describe(m),
        kind: m.kind(),
        eps,
        l_eps,
        mode: WitnessMode::Pipeline,
        parent_dim: m.dim(),
        base_change,
        submodule_step: step,
        fragmentation: Some(frag),
        kept_labels: kept.iter().map(|&k| m.render_label(k)).collect(),
        kept,
        summands,
    })
}

/// The first clause of the definition a witness fails, with details.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.detail)
    }
}

fn violation(clause: &str, detail: impl Into<String>) -> Violation {
    Violation {
        clause: clause.into(),
        detail: detail.into(),
    }
}

/// Every nonzero entry of every arrow sends a node of `part` into `allowed`.
fn closed_under_arrows<F: Field>(m: &ModuleRep<F>, part: &BTreeSet<usize>, allowed: &BTreeSet<usize>) -> Option<String> {
    for (a, arrow) in m.presentation().arrows().iter().enumerate() {
        for (src, tgt, _) in m.entries(a) {
            if part.contains(&src) && !allowed.contains(&tgt) {
                return Some(format!("arrow {} sends {} to {}", arrow.id, m.render_label(src), m.render_label(tgt)));
            }
        }
    }
    None
}

/// Rechecks a witness against the module it claims to describe, using
/// matrix arithmetic and set bookkeeping only.
pub fn verify_witness<F: Field>(m: &ModuleRep<F>, w: &HyperfinitenessWitness) -> std::result::Result<(), Violation> {
    let n = m.dim();
    let eps = w.eps;
    if *eps.numer() == 0 || eps >= Ratio::from_integer(1) {
        return Err(violation("eps", format!("{eps} is not in (0, 1)")));
    }
    if w.parent_dim != n {
        return Err(violation("parent", format!("witness is for dimension {}, module has {n}", w.parent_dim)));
    }
    let rebased = if w.base_change.is_empty() {
        m.clone()
    } else {
        let bc = parse_blocks(m.field(), &w.base_change).map_err(|e| violation("base change", e.to_string()))?;
        let r = bc.apply(m).map_err(|e| violation("base change", e.to_string()))?;
        bc.check(m, &r).map_err(|e| violation("base change", e.to_string()))?;
        r
    };
    let kept: BTreeSet<usize> = w.kept.iter().copied().collect();
    if kept.len() != w.kept.len() || kept.iter().any(|&k| k >= n) {
        return Err(violation("kept", "indices repeat or fall outside the basis"));
    }
    if w.kept_labels.len() != w.kept.len()
        || w.kept.iter().zip(&w.kept_labels).any(|(&k, l)| m.render_label(k) != *l)
    {
        return Err(violation("kept", "labels do not match the basis"));
    }
    if int(kept.len()) < (int(1) - big(eps)) * int(n) {
        return Err(violation("dimension", format!("dim N = {} < (1 - {eps}) * {n}", kept.len())));
    }
    let mut seen = BTreeSet::new();
    for s in &w.summands {
        for &k in s {
            if !kept.contains(&k) || !seen.insert(k) {
                return Err(violation("partition", format!("summands repeat or leave N at {}", m.render_label(k.min(n - 1)))));
            }
        }
    }
    if seen.len() != kept.len() {
        return Err(violation("partition", "summands do not cover N"));
    }
    if w.l_eps == 0 {
        return Err(violation("summand bound", "L must be positive"));
    }
    if let Some(s) = w.summands.iter().find(|s| s.len() > w.l_eps) {
        return Err(violation("summand bound", format!("summand of dimension {} exceeds L = {}", s.len(), w.l_eps)));
    }
    if let Some(d) = closed_under_arrows(&rebased, &kept, &kept) {
        return Err(violation("submodule", d));
    }
    for s in &w.summands {
        let part: BTreeSet<usize> = s.iter().copied().collect();
        if let Some(d) = closed_under_arrows(&rebased, &part, &part) {
            return Err(violation("direct sum", d));
        }
    }
    if let Some(step) = &w.submodule_step {
        let y: BTreeSet<usize> = step.kept.iter().copied().collect();
        if y.len() + step.codimension != n || y.iter().any(|&k| k >= n) {
            return Err(violation("chain", "intermediate submodule has the wrong codimension"));
        }
        if let Some(d) = closed_under_arrows(&rebased, &y, &y) {
            return Err(violation("chain", format!("intermediate span is not a submodule: {d}")));
        }
        if !kept.is_subset(&y) {
            return Err(violation("chain", "N is not inside the intermediate submodule"));
        }
        if !band_threshold_met(n, step.codimension, eps) {
            return Err(violation("chain", format!("dim M = {n} is not above 2H/eps")));
        }
        let bound = int(n) - int(step.codimension) - big(eps) / int(2) * int(n);
        if int(kept.len()) < bound {
            return Err(violation("chain", format!("dim N = {} < dim M - H - (eps/2) dim M", kept.len())));
        }
    }
    Ok(())
}

/// Modules of a family, generated on demand.
#[derive(Clone, Debug)]
pub enum FamilyMembers<F: Field> {
    /// Every string of length at most `max_len`, symmetric ones with both
    /// choices of `T`.
    Strings { max_len: usize },
    /// Every band of length at most `max_len`. Asymmetric bands get Jordan
    /// blocks with the given eigenvalues and companions of powers of the
    /// given polynomials; symmetric bands get every canonical pair of
    /// idempotents, homogeneous ones from the same polynomials. Inner
    /// dimensions run up to `max_inner`.
    Bands {
        max_len: usize,
        max_inner: usize,
        eigenvalues: Vec<F::Elem>,
        polys: Vec<Poly<F>>,
    },
    Explicit(Vec<ModuleRep<F>>),
}

#[derive(Clone, Debug)]
pub struct FamilySpec<F: Field> {
    pub presentation: Arc<AlgebraPresentation>,
    pub field: F,
    pub members: FamilyMembers<F>,
}

/// Limits on enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_modules: usize,
    pub max_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_modules: 100_000,
            max_dim: 1_000,
        }
    }
}

fn powers_up_to<F: Field>(q: &Poly<F>, max_deg: usize) -> Vec<Poly<F>> {
    let mut out = Vec::new();
    let Some(d) = q.degree().filter(|&d| d > 0) else {
        return out;
    };
    for k in 1..=max_deg / d {
        out.push(q.pow(k as u32));
    }
    out
}

impl<F: Field> FamilySpec<F> {
    /// The modules in enumeration order and whether the budget cut the
    /// list short.
    pub fn modules(&self, budget: Budget) -> Result<(Vec<ModuleRep<F>>, bool)> {
        let p = &self.presentation;
        let f = &self.field;
        let mut out = Vec::new();
        let mut incomplete = false;
        let mut push = |m: ModuleRep<F>, out: &mut Vec<ModuleRep<F>>| -> bool {
            if out.len() >= budget.max_modules || m.dim() > budget.max_dim {
                incomplete = true;
                return out.len() < budget.max_modules;
            }
            out.push(m);
            true
        };
        match &self.members {
            FamilyMembers::Strings { max_len } => {
                'outer: for s in enumerate_strings(p, *max_len) {
                    let ts: &[Option<bool>] = if s.is_symmetric() { &[Some(false), Some(true)] } else { &[None] };
                    for &t in ts {
                        if !push(build_string_module(p, f, &s, t)?, &mut out) {
                            break 'outer;
                        }
                    }
                }
            }
            FamilyMembers::Bands {
                max_len,
                max_inner,
                eigenvalues,
                polys,
            } => {
                let powers: Vec<Poly<F>> = polys.iter().flat_map(|q| powers_up_to(q, *max_inner)).collect();
                let mut pairs = Vec::new();
                for d in 1..=*max_inner {
                    pairs.extend(canonical_of_dim(f, d, &powers)?.into_iter().map(|c| c.module));
                }
                let mut laurent = Vec::new();
                for k in 1..=*max_inner {
                    for l in eigenvalues {
                        laurent.push(LaurentModule::jordan(f, l, k)?);
                    }
                }
                for q in &powers {
                    laurent.push(LaurentModule::companion(q)?);
                }
                'bands: for b in enumerate_bands(p, *max_len) {
                    let inners: Vec<InnerModule<F>> = if b.is_symmetric() {
                        pairs.iter().cloned().map(InnerModule::TwoIdempotent).collect()
                    } else {
                        laurent.iter().cloned().map(InnerModule::Laurent).collect()
                    };
                    for v in inners {
                        if !push(build_band_module(p, f, &b, &v)?, &mut out) {
                            break 'bands;
                        }
                    }
                }
            }
            FamilyMembers::Explicit(list) => {
                for m in list {
                    if !push(m.clone(), &mut out) {
                        break;
                    }
                }
            }
        }
        Ok((out, incomplete))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub member: usize,
    pub module: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyWitness {
    #[serde(with = "ratio_text")]
    pub eps: Ratio<u64>,
    /// One bound for every member.
    pub l_eps: usize,
    /// Largest `ceil(2H / eps)` over band members.
    pub band_threshold: usize,
    pub witnesses: Vec<HyperfinitenessWitness>,
    /// Enumeration index of the member behind each witness.
    pub members: Vec<usize>,
    pub failures: Vec<Failure>,
    pub incomplete: bool,
}

impl FamilyWitness {
    pub fn certified(&self) -> bool {
        self.failures.is_empty()
    }
}

fn ceil_ratio(num: u128, den: u128) -> usize {
    num.div_ceil(den) as usize
}

/// Runs the pipeline on every member, in parallel, and verifies each
/// witness. `L` is the maximum over members and the band threshold
/// `2H / eps`; an empty family gets `L = 1`.
pub fn family_witness<F: Field>(spec: &FamilySpec<F>, eps: Ratio<u64>, budget: Budget) -> Result<FamilyWitness> {
    check_eps(eps)?;
    let (modules, incomplete) = spec.modules(budget)?;
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(modules.len().max(1));
    let chunk = modules.len().div_ceil(workers).max(1);
    type Outcome = (usize, String, std::result::Result<HyperfinitenessWitness, String>, usize);
    let results: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = modules
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                s.spawn(move || {
                    part.iter()
                        .enumerate()
                        .map(|(i, m)| {
                            let id = describe(m);
                            let r = witness(m, eps).map_err(|e| e.to_string()).and_then(|w| {
                                verify_witness(m, &w).map_err(|v| v.to_string())?;
                                Ok(w)
                            });
                            let h = r
                                .as_ref()
                                .ok()
                                .and_then(|w| w.submodule_step.as_ref().map(|s| s.codimension))
                                .unwrap_or(0);
                            (c * chunk + i, id, r, h)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut ok = Vec::new();
    let mut failures = Vec::new();
    let mut l_eps = 1;
    let mut band_threshold = 0;
    for (member, id, r, h) in results {
        match r {
            Ok(w) => {
                l_eps = l_eps.max(w.l_eps);
                if h > 0 {
                    band_threshold = band_threshold.max(ceil_ratio(2 * h as u128 * *eps.denom() as u128, *eps.numer() as u128));
                }
                ok.push((member, w));
            }
            Err(reason) => failures.push(Failure { member, module: id, reason }),
        }
    }
    ok.sort_by(|a, b| (&a.1.module, a.0).cmp(&(&b.1.module, b.0)));
    failures.sort_by(|a, b| (&a.module, a.member).cmp(&(&b.module, b.member)));
    let (members, witnesses) = ok.into_iter().unzip();
    Ok(FamilyWitness {
        eps,
        l_eps: l_eps.max(band_threshold),
        band_threshold,
        witnesses,
        members,
        failures,
        incomplete,
    })
}
