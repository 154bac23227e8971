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

//! String and band modules as explicit representations, and the planar
//! submodules of bands.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::endo::{QuiverRep, RepArrow};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::inner::{four_subspace_tree_basis, rcf_tree_subspace, LaurentModule, TwoIdempotentModule};
use crate::matrix::Matrix;
use crate::word::{BandSymmetry, BandWord, Letter, LetterKind, Sign, StringSymmetry, StringWord};

/// Basis vector `v_{i,j}`: copy `i` of the inner space at position `j` of
/// the word. Strings have a single copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisLabel {
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum InnerModule<F: Field> {
    Laurent(LaurentModule<F>),
    TwoIdempotent(TwoIdempotentModule<F>),
}

impl<F: Field> InnerModule<F> {
    pub fn dim(&self) -> usize {
        match self {
            InnerModule::Laurent(m) => m.dim(),
            InnerModule::TwoIdempotent(m) => m.dim(),
        }
    }
}

/// Where a module came from.
#[derive(Clone, Debug, PartialEq)]
pub enum ModuleSource<F: Field> {
    String { word: StringWord, t: Option<bool> },
    Band { word: BandWord, inner: InnerModule<F> },
    Derived(String),
}

/// Which of the six constructions produced a module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleKind {
    String,
    Band,
    ClannishString,
    ClannishSymmetricString,
    ClannishBand,
    ClannishSymmetricBand,
    Derived,
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModuleKind::String => "string",
            ModuleKind::Band => "band",
            ModuleKind::ClannishString => "clannish string",
            ModuleKind::ClannishSymmetricString => "clannish symmetric string",
            ModuleKind::ClannishBand => "clannish asymmetric band",
            ModuleKind::ClannishSymmetricBand => "clannish symmetric band",
            ModuleKind::Derived => "derived",
        };
        f.write_str(s)
    }
}

/// A representation with a labelled basis. Arrow matrices act on the basis
/// vectors at their source vertex, in the order of `labels`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleRep<F: Field> {
    presentation: Arc<AlgebraPresentation>,
    field: F,
    labels: Vec<BasisLabel>,
    vertex_of: Vec<usize>,
    local: Vec<usize>,
    by_vertex: Vec<Vec<usize>>,
    arrows: Vec<Matrix<F>>,
    inner_indexed: bool,
    source: ModuleSource<F>,
}

impl<F: Field> ModuleRep<F> {
    pub fn new(
        presentation: Arc<AlgebraPresentation>,
        field: &F,
        labels: Vec<BasisLabel>,
        vertex_of: Vec<usize>,
        arrows: Vec<Matrix<F>>,
        inner_indexed: bool,
        source: ModuleSource<F>,
    ) -> Result<Self> {
        let nv = presentation.vertices().len();
        if labels.len() != vertex_of.len() {
            return Err(Error::DimensionMismatch("one vertex per basis vector".into()));
        }
        let mut by_vertex = vec![Vec::new(); nv];
        let mut local = Vec::with_capacity(labels.len());
        for (k, &v) in vertex_of.iter().enumerate() {
            if v >= nv {
                return Err(Error::DimensionMismatch(format!("basis vector {k} at unknown vertex")));
            }
            local.push(by_vertex[v].len());
            by_vertex[v].push(k);
        }
        if arrows.len() != presentation.arrows().len() {
            return Err(Error::DimensionMismatch("one matrix per arrow".into()));
        }
        for (a, m) in presentation.arrows().iter().zip(&arrows) {
            let (r, c) = (by_vertex[a.target].len(), by_vertex[a.source].len());
            if m.rows() != r || m.cols() != c {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} is {}x{}, expected {r}x{c}",
                    a.id,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(ModuleRep {
            presentation,
            field: field.clone(),
            labels,
            vertex_of,
            local,
            by_vertex,
            arrows,
            inner_indexed,
            source,
        })
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn presentation_arc(&self) -> Arc<AlgebraPresentation> {
        self.presentation.clone()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.by_vertex.iter().map(Vec::len).collect()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn vertex_of(&self, k: usize) -> usize {
        self.vertex_of[k]
    }

    /// Basis indices at vertex `v`, in order.
    pub fn basis_at(&self, v: usize) -> &[usize] {
        &self.by_vertex[v]
    }

    pub fn arrow_matrix(&self, a: usize) -> &Matrix<F> {
        &self.arrows[a]
    }

    pub fn source(&self) -> &ModuleSource<F> {
        &self.source
    }

    pub fn kind(&self) -> ModuleKind {
        let clannish = self.presentation.has_special();
        match &self.source {
            ModuleSource::String { word, .. } => match (clannish, word.is_symmetric()) {
                (false, _) => ModuleKind::String,
                (true, false) => ModuleKind::ClannishString,
                (true, true) => ModuleKind::ClannishSymmetricString,
            },
            ModuleSource::Band { word, .. } => match (clannish, word.is_symmetric()) {
                (false, _) => ModuleKind::Band,
                (true, false) => ModuleKind::ClannishBand,
                (true, true) => ModuleKind::ClannishSymmetricBand,
            },
            ModuleSource::Derived(_) => ModuleKind::Derived,
        }
    }

    /// `v3` for strings, `v2,3` for bands; the inner index counts from 1.
    pub fn render_label(&self, k: usize) -> String {
        let l = self.labels[k];
        if self.inner_indexed {
            format!("v{},{}", l.i + 1, l.j)
        } else {
            format!("v{}", l.j)
        }
    }

    /// Nonzero entries of arrow `a` as `(source basis, target basis,
    /// coefficient)`, ordered by source then target.
    pub fn entries(&self, a: usize) -> Vec<(usize, usize, F::Elem)> {
        let arrow = self.presentation.arrow(a);
        let m = &self.arrows[a];
        let src = &self.by_vertex[arrow.source];
        let tgt = &self.by_vertex[arrow.target];
        let mut out = Vec::new();
        for (c, &s) in src.iter().enumerate() {
            for (r, &t) in tgt.iter().enumerate() {
                if !self.field.is_zero(&m[(r, c)]) {
                    out.push((s, t, m[(r, c)].clone()));
                }
            }
        }
        out
    }

    /// The image of basis vector `k` under arrow `a`, in global coordinates.
    pub fn apply(&self, a: usize, k: usize) -> Vec<F::Elem> {
        let arrow = self.presentation.arrow(a);
        let mut out = vec![self.field.zero(); self.dim()];
        if self.vertex_of[k] != arrow.source {
            return out;
        }
        let c = self.local[k];
        for (r, &t) in self.by_vertex[arrow.target].iter().enumerate() {
            out[t] = self.arrows[a][(r, c)].clone();
        }
        out
    }

    pub fn raw(&self) -> QuiverRep<F> {
        let arrows = self
            .presentation
            .arrows()
            .iter()
            .zip(&self.arrows)
            .map(|(a, m)| RepArrow {
                source: a.source,
                target: a.target,
                matrix: m.clone(),
            })
            .collect();
        QuiverRep::new(&self.field, self.dims(), arrows).expect("shapes checked")
    }

    /// Relations act as zero and special loops as idempotents.
    pub fn check_relations(&self) -> Result<()> {
        let p = &self.presentation;
        for r in p.relations() {
            let mut prod = self.arrows[r[0]].clone();
            for &a in &r[1..] {
                prod = prod.mul(&self.arrows[a])?;
            }
            if !prod.is_zero() {
                let ids: Vec<&str> = r.iter().map(|&a| p.arrow(a).id.as_str()).collect();
                return Err(Error::InvalidWord(format!("relation {} acts nonzero", ids.join(""))));
            }
        }
        for a in p.special_arrows() {
            if !self.arrows[a].is_idempotent() {
                return Err(Error::NotIdempotent(p.arrow(a).id.clone()));
            }
        }
        Ok(())
    }

    /// The representation on the basis subset `kept`, which should be
    /// closed under the arrows (see [`verify_submodule`]).
    pub fn restrict(&self, kept: &[usize], why: &str) -> Result<Self> {
        let mut kept = kept.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let labels = kept.iter().map(|&k| self.labels[k]).collect();
        let vertex_of = kept.iter().map(|&k| self.vertex_of[k]).collect();
        let local_kept = |v: usize| -> Vec<usize> {
            self.by_vertex[v]
                .iter()
                .enumerate()
                .filter(|(_, k)| kept.binary_search(k).is_ok())
                .map(|(i, _)| i)
                .collect()
        };
        let arrows = self
            .presentation
            .arrows()
            .iter()
            .zip(&self.arrows)
            .map(|(a, m)| m.submatrix(&local_kept(a.target), &local_kept(a.source)))
            .collect();
        Self::new(
            self.presentation.clone(),
            &self.field,
            labels,
            vertex_of,
            arrows,
            self.inner_indexed,
            ModuleSource::Derived(why.into()),
        )
    }

    /// Concatenated bases, `self` first.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.presentation != other.presentation {
            return Err(Error::DimensionMismatch("modules over different algebras".into()));
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut vertex_of = self.vertex_of.clone();
        vertex_of.extend_from_slice(&other.vertex_of);
        let arrows = self
            .arrows
            .iter()
            .zip(&other.arrows)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(&self.field, a.rows() + b.rows(), a.cols() + b.cols());
                m.set_block(0, 0, a);
                m.set_block(a.rows(), a.cols(), b);
                m
            })
            .collect();
        Self::new(
            self.presentation.clone(),
            &self.field,
            labels,
            vertex_of,
            arrows,
            self.inner_indexed,
            ModuleSource::Derived("direct sum".into()),
        )
    }

    fn with_arrows(&self, arrows: Vec<Matrix<F>>, why: &str) -> Result<Self> {
        Self::new(
            self.presentation.clone(),
            &self.field,
            self.labels.clone(),
            self.vertex_of.clone(),
            arrows,
            self.inner_indexed,
            ModuleSource::Derived(why.into()),
        )
    }
}

/// A block-diagonal change of basis. Each block lists basis indices at a
/// single vertex and a matrix whose columns are the new basis vectors in
/// the old coordinates; indices outside every block are unchanged.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseChange<F: Field> {
    pub blocks: Vec<(Vec<usize>, Matrix<F>)>,
}

impl<F: Field> BaseChange<F> {
    /// Per-vertex matrices `K_v` in the local order of `m`.
    fn vertex_matrices(&self, m: &ModuleRep<F>) -> Result<Vec<Matrix<F>>> {
        let f = m.field();
        let mut ks: Vec<Matrix<F>> = m.dims().iter().map(|&d| Matrix::identity(f, d)).collect();
        let mut seen = vec![false; m.dim()];
        for (idx, block) in &self.blocks {
            if block.rows() != idx.len() || !block.is_square() {
                return Err(Error::DimensionMismatch("base change block has the wrong size".into()));
            }
            let v = m.vertex_of(*idx.first().ok_or_else(|| Error::DimensionMismatch("empty block".into()))?);
            for &k in idx {
                if k >= m.dim() || m.vertex_of(k) != v || std::mem::replace(&mut seen[k], true) {
                    return Err(Error::DimensionMismatch(format!("bad index {k} in base change")));
                }
            }
            for (r, &kr) in idx.iter().enumerate() {
                for (c, &kc) in idx.iter().enumerate() {
                    ks[v][(m.local[kr], m.local[kc])] = block[(r, c)].clone();
                }
            }
        }
        Ok(ks)
    }

    /// The inverse change, block by block. Blocks repeat across the
    /// positions of a band, so each distinct block is inverted once.
    pub fn inverse(&self) -> Result<Self> {
        let mut done: Vec<(&Matrix<F>, Matrix<F>)> = Vec::new();
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (idx, b) in &self.blocks {
            let inv = match done.iter().find(|(k, _)| *k == b) {
                Some((_, inv)) => inv.clone(),
                None => {
                    let inv = b.inverse().ok_or_else(|| Error::NotInvertible("base change".into()))?;
                    done.push((b, inv.clone()));
                    inv
                }
            };
            blocks.push((idx.clone(), inv));
        }
        Ok(Self { blocks })
    }

    /// `A' = K_t^{-1} A K_s` for every arrow.
    pub fn apply(&self, m: &ModuleRep<F>) -> Result<ModuleRep<F>> {
        let ks = self.vertex_matrices(m)?;
        let inv = self.inverse()?.vertex_matrices(m)?;
        let arrows = m
            .presentation
            .arrows()
            .iter()
            .zip(&m.arrows)
            .map(|(a, x)| inv[a.target].mul(&x.mul(&ks[a.source])?))
            .collect::<Result<_>>()?;
        m.with_arrows(arrows, "base change")
    }

    /// Checks `A K_s = K_t A'` arrow by arrow without inverting anything.
    pub fn check(&self, m: &ModuleRep<F>, rebased: &ModuleRep<F>) -> Result<()> {
        if m.labels != rebased.labels || m.vertex_of != rebased.vertex_of {
            return Err(Error::DimensionMismatch("rebased module has another basis".into()));
        }
        let ks = self.vertex_matrices(m)?;
        // block diagonal up to a permutation, so the blocks decide
        for (idx, b) in &self.blocks {
            if !b.is_invertible() {
                return Err(Error::NotInvertible(format!("base change block at index {}", idx[0])));
            }
        }
        for (i, a) in m.presentation.arrows().iter().enumerate() {
            let lhs = m.arrows[i].mul(&ks[a.source])?;
            let rhs = ks[a.target].mul(&rebased.arrows[i])?;
            if lhs != rhs {
                return Err(Error::InnerMismatch(format!("arrow {} does not match after base change", a.id)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowClosure {
    pub arrow: String,
    /// Nonzero entries leaving the subset's basis vectors.
    pub entries_checked: usize,
}

/// A basis subset closed under every arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleWitness {
    pub parent_dim: usize,
    pub kept: Vec<usize>,
    pub codimension: usize,
    pub closure: Vec<ArrowClosure>,
}

/// Checks that `span(kept)` is a submodule: no arrow sends a kept basis
/// vector outside. The error names the first offending arrow and label.
pub fn verify_submodule<F: Field>(m: &ModuleRep<F>, kept: &[usize]) -> Result<SubmoduleWitness> {
    let mut mask = vec![false; m.dim()];
    for &k in kept {
        if k >= m.dim() {
            return Err(Error::DimensionMismatch(format!("basis index {k} out of range")));
        }
        mask[k] = true;
    }
    let mut closure = Vec::new();
    for (a, arrow) in m.presentation.arrows().iter().enumerate() {
        let mut checked = 0;
        for (s, t, _) in m.entries(a) {
            if mask[s] {
                checked += 1;
                if !mask[t] {
                    return Err(Error::NotASubmodule {
                        arrow: arrow.id.clone(),
                        label: m.render_label(s),
                    });
                }
            }
        }
        closure.push(ArrowClosure {
            arrow: arrow.id.clone(),
            entries_checked: checked,
        });
    }
    let mut kept: Vec<usize> = kept.to_vec();
    kept.sort_unstable();
    kept.dedup();
    Ok(SubmoduleWitness {
        parent_dim: m.dim(),
        codimension: m.dim() - kept.len(),
        kept,
        closure,
    })
}

/// Positions carrying a copy of an `m`-dimensional space, and the action
/// of each arrow between positions.
struct Builder<F: Field> {
    field: F,
    m: usize,
    positions: Vec<usize>,
    actions: Vec<(usize, usize, usize, Matrix<F>)>,
}

impl<F: Field> Builder<F> {
    fn act(&mut self, arrow: usize, from: usize, to: usize, mat: Matrix<F>) {
        self.actions.push((arrow, from, to, mat));
    }

    /// Letter `letter` joins positions `lo` (`V_{j-1}`) and `hi` (`V_j`).
    /// `down` is the matrix `V_j -> V_{j-1}` and `up` the one
    /// `V_{j-1} -> V_j`; only the one matching the letter is used.
    fn letter(&mut self, letter: Letter, sign: Sign, lo: usize, hi: usize, down: &Matrix<F>, up: &Matrix<F>) {
        let id = Matrix::identity(&self.field, self.m);
        match (letter.kind, sign) {
            (LetterKind::Direct, _) => self.act(letter.arrow, hi, lo, down.clone()),
            (LetterKind::Inverse, _) => self.act(letter.arrow, lo, hi, up.clone()),
            (LetterKind::Special, Sign::Plus) => {
                self.act(letter.arrow, hi, lo, down.clone());
                self.act(letter.arrow, lo, lo, id);
            }
            (LetterKind::Special, Sign::Minus) => {
                self.act(letter.arrow, lo, hi, up.clone());
                self.act(letter.arrow, hi, hi, id);
            }
        }
    }

    fn finish(self, p: &Arc<AlgebraPresentation>, source: ModuleSource<F>, inner_indexed: bool) -> Result<ModuleRep<F>> {
        let m = self.m;
        let mut labels = Vec::new();
        let mut vertex_of = Vec::new();
        for (j, &v) in self.positions.iter().enumerate() {
            for i in 0..m {
                labels.push(BasisLabel { i, j });
                vertex_of.push(v);
            }
        }
        // local index of (position, i) at its vertex
        let mut count = vec![0usize; p.vertices().len()];
        let mut local = vec![0usize; labels.len()];
        for (k, &v) in vertex_of.iter().enumerate() {
            local[k] = count[v];
            count[v] += 1;
        }
        let mut arrows: Vec<Matrix<F>> = p
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(&self.field, count[a.target], count[a.source]))
            .collect();
        for (a, from, to, mat) in &self.actions {
            let arrow = p.arrow(*a);
            if self.positions[*from] != arrow.source || self.positions[*to] != arrow.target {
                return Err(Error::InvalidWord(format!("arrow {} placed between wrong vertices", arrow.id)));
            }
            for c in 0..m {
                for r in 0..m {
                    let (lr, lc) = (local[to * m + r], local[from * m + c]);
                    let v = self.field.add(&arrows[*a][(lr, lc)], &mat[(r, c)]);
                    arrows[*a][(lr, lc)] = v;
                }
            }
        }
        let out = ModuleRep::new(p.clone(), &self.field, labels, vertex_of, arrows, inner_indexed, source)?;
        out.check_relations()?;
        Ok(out)
    }
}

/// `M(w)` for a string algebra, or `S_w` / `S_w(T)` for a clannish one. A
/// symmetric string `z f* z⁻` needs `t`: whether `f` acts on the last
/// basis vector by one or by zero.
pub fn build_string_module<F: Field>(
    p: &Arc<AlgebraPresentation>,
    field: &F,
    s: &StringWord,
    t: Option<bool>,
) -> Result<ModuleRep<F>> {
    let w = &s.word;
    let signs = s.direction();
    let id = Matrix::identity(field, 1);
    let n = match &s.symmetry {
        StringSymmetry::Asymmetric => w.len(),
        StringSymmetry::Symmetric { z, .. } => z.len(),
    };
    let positions = (0..=n).map(|j| w.vertex_at(p, j)).collect();
    let mut b = Builder {
        field: field.clone(),
        m: 1,
        positions,
        actions: Vec::new(),
    };
    for j in 1..=n {
        b.letter(w.letters()[j - 1], signs[j - 1], j - 1, j, &id, &id);
    }
    if let StringSymmetry::Symmetric { f, .. } = &s.symmetry {
        let t = t.ok_or_else(|| Error::InvalidWord("a symmetric string needs T = 0 or 1".into()))?;
        if t {
            b.act(*f, n, n, id.clone());
        }
    }
    let t = if s.is_symmetric() { t } else { None };
    b.finish(p, ModuleSource::String { word: s.clone(), t }, false)
}

/// `M(b, phi)`, `B_b(V)` for an asymmetric band with a Laurent module, or
/// `S_b(V)` for a symmetric band with a pair of idempotents.
pub fn build_band_module<F: Field>(
    p: &Arc<AlgebraPresentation>,
    field: &F,
    band: &BandWord,
    inner: &InnerModule<F>,
) -> Result<ModuleRep<F>> {
    let source = ModuleSource::Band {
        word: band.clone(),
        inner: inner.clone(),
    };
    match (&band.symmetry, inner) {
        (BandSymmetry::Asymmetric, InnerModule::Laurent(v)) => {
            let w = &band.word;
            let n = w.len();
            let signs = band.direction();
            let id = Matrix::identity(field, v.dim());
            let positions = (0..n).map(|j| w.vertex_at(p, j)).collect();
            let mut b = Builder {
                field: field.clone(),
                m: v.dim(),
                positions,
                actions: Vec::new(),
            };
            b.letter(w.letters()[0], signs[0], 0, 1 % n, v.phi(), v.phi_inv());
            for j in 2..=n {
                b.letter(w.letters()[j - 1], signs[j - 1], j - 1, j % n, &id, &id);
            }
            b.finish(p, source, true)
        }
        (BandSymmetry::Symmetric { f, g, z, .. }, InnerModule::TwoIdempotent(v)) => {
            let n = z.len();
            let signs = band.direction();
            let id = Matrix::identity(field, v.dim());
            let mut positions = vec![p.arrow(*g).target];
            positions.extend(z.iter().map(|l| l.source(p)));
            let mut b = Builder {
                field: field.clone(),
                m: v.dim(),
                positions,
                actions: Vec::new(),
            };
            for j in 1..=n {
                b.letter(z[j - 1], signs[j - 1], j - 1, j, &id, &id);
            }
            b.act(*g, 0, 0, v.psi().clone());
            b.act(*f, n, n, v.phi().clone());
            b.finish(p, source, true)
        }
        (BandSymmetry::Asymmetric, _) => Err(Error::InnerMismatch(
            "an asymmetric band needs an invertible matrix".into(),
        )),
        (BandSymmetry::Symmetric { .. }, _) => Err(Error::InnerMismatch(
            "a symmetric band needs a pair of idempotents".into(),
        )),
    }
}

/// A band module in a new basis together with a submodule spanned by basis
/// vectors whose coefficient quiver is a tree.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarSubmodule<F: Field> {
    pub base_change: BaseChange<F>,
    pub rebased: ModuleRep<F>,
    pub witness: SubmoduleWitness,
    pub submodule: ModuleRep<F>,
}

impl<F: Field> PlanarSubmodule<F> {
    pub fn codimension(&self) -> usize {
        self.witness.codimension
    }
}

fn position_indices<F: Field>(m: &ModuleRep<F>, j: usize) -> Vec<usize> {
    (0..m.dim()).filter(|&k| m.labels()[k].j == j).collect()
}

fn finish_planar<F: Field>(
    module: &ModuleRep<F>,
    blocks: Vec<(Vec<usize>, Matrix<F>)>,
    dropped: Vec<usize>,
) -> Result<PlanarSubmodule<F>> {
    let base_change = BaseChange { blocks };
    let rebased = base_change.apply(module)?;
    let kept: Vec<usize> = (0..module.dim()).filter(|k| !dropped.contains(k)).collect();
    let witness = verify_submodule(&rebased, &kept)?;
    let submodule = rebased.restrict(&kept, "planar submodule")?;
    Ok(PlanarSubmodule {
        base_change,
        rebased,
        witness,
        submodule,
    })
}

fn band_parts<F: Field>(m: &ModuleRep<F>) -> Result<(&BandWord, &InnerModule<F>)> {
    match m.source() {
        ModuleSource::Band { word, inner } => Ok((word, inner)),
        _ => Err(Error::NotBand("module was not built from a band".into())),
    }
}

/// Asymmetric bands. Moves the seam carrying `phi` next to a position `s`
/// whose two letters both leave `V_s`, writes every position in a Krylov
/// basis of `phi`, and drops the last Krylov vector at `V_s`.
pub fn asym_band_planar_submodule<F: Field>(m: &ModuleRep<F>) -> Result<PlanarSubmodule<F>> {
    let (band, inner) = band_parts(m)?;
    let InnerModule::Laurent(v) = inner else {
        return Err(Error::InnerMismatch("asymmetric band without an invertible matrix".into()));
    };
    if band.is_symmetric() {
        return Err(Error::InnerMismatch("band is symmetric".into()));
    }
    let letters = band.word.letters();
    let signs = band.direction();
    let n = letters.len();
    let down = |j: usize| {
        let l = letters[(j - 1) % n];
        l.kind == LetterKind::Direct || (l.kind == LetterKind::Special && signs[(j - 1) % n] == Sign::Plus)
    };
    let s = (1..=n)
        .find(|&s| down(s) && !down(s + 1))
        .filter(|_| n > 1)
        .ok_or_else(|| Error::Unsupported("no position of the band is left by both of its letters; every letter points the same way, which a finite-dimensional presentation rules out".into()))?;
    let tree = rcf_tree_subspace(v)?;
    let x = tree.basis;
    let shifted = v.phi_inv().mul(&x)?;
    let mut blocks = Vec::new();
    for j in 0..n {
        let b = if (1..s).contains(&j) { shifted.clone() } else { x.clone() };
        blocks.push((position_indices(m, j), b));
    }
    let last = v.dim() - 1;
    let dropped = (0..m.dim())
        .filter(|&k| m.labels()[k] == BasisLabel { i: last, j: s % n })
        .collect();
    finish_planar(m, blocks, dropped)
}

/// String-algebra bands are asymmetric bands.
pub fn band_string_submodule<F: Field>(m: &ModuleRep<F>) -> Result<PlanarSubmodule<F>> {
    asym_band_planar_submodule(m)
}

/// Symmetric bands `f* z⁻ g* z`. At the `g` end the first positions up to
/// the first letter pointing away from `V_0` are cut down to the span of
/// a line basis for `psi`; otherwise the same is done from the `f` end with
/// the roles of the idempotents exchanged, whichever touches fewer
/// positions.
pub fn sym_band_planar_submodule<F: Field>(m: &ModuleRep<F>) -> Result<PlanarSubmodule<F>> {
    let (band, inner) = band_parts(m)?;
    let InnerModule::TwoIdempotent(v) = inner else {
        return Err(Error::InnerMismatch("symmetric band without idempotents".into()));
    };
    let BandSymmetry::Symmetric { z, .. } = &band.symmetry else {
        return Err(Error::InnerMismatch("band is asymmetric".into()));
    };
    let n = z.len();
    if n == 0 {
        return Err(Error::Unsupported("both idempotents act on the same position".into()));
    }
    let signs = band.direction();
    let i0 = (1..=n).find(|&j| signs[j - 1] == Sign::Minus);
    let i1 = (1..=n).rev().find(|&j| signs[j - 1] == Sign::Plus);
    let use_g_end = match (i0, i1) {
        (Some(a), Some(b)) => a <= n - b + 1,
        (Some(_), None) => true,
        _ => false,
    };
    // the cut positions carry B_y of the lemma, the rest B_x
    let (cut, t): (Vec<usize>, _) = if use_g_end {
        ((0..i0.unwrap()).collect(), four_subspace_tree_basis(v)?)
    } else {
        ((i1.unwrap()..=n).collect(), four_subspace_tree_basis(&v.swapped())?)
    };
    let mut blocks = Vec::new();
    let mut dropped = Vec::new();
    let trimmed = t.trimmed();
    for j in 0..=n {
        let idx = position_indices(m, j);
        if cut.contains(&j) {
            if let Some(tr) = trimmed {
                dropped.push(idx[tr]);
            }
            blocks.push((idx, t.b_y.clone()));
        } else {
            blocks.push((idx, t.b_x.clone()));
        }
    }
    finish_planar(m, blocks, dropped)
}

/// Dispatches on the band type.
pub fn band_planar_submodule<F: Field>(m: &ModuleRep<F>) -> Result<PlanarSubmodule<F>> {
    let (band, _) = band_parts(m)?;
    if band.is_symmetric() {
        sym_band_planar_submodule(m)
    } else {
        asym_band_planar_submodule(m)
    }
}
