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

//! JSON files for modules, inner modules and witnesses. Field elements are
//! strings (`"3/7"` over the rationals, `"42"` over GF(p)) and matrices
//! are row-major lists of them.

use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::inner::{LaurentModule, TwoIdempotentModule};
use crate::matrix::Matrix;
use crate::module::{
    build_band_module, build_string_module, BasisLabel, InnerModule, ModuleKind, ModuleRep,
    ModuleSource,
};
use crate::witness::HyperfinitenessWitness;
use crate::word::{classify_band, classify_string, Word};

/// Parses `p/q`, an integer or a terminating decimal such as `0.25`.
pub fn parse_ratio(s: &str) -> Result<Ratio<u64>> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a nonnegative fraction: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let w: u64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
        let den = 10u64.pow(frac.len() as u32);
        let f: u64 = frac.parse().map_err(|_| bad())?;
        let num = w.checked_mul(den).and_then(|x| x.checked_add(f)).ok_or_else(bad)?;
        return Ok(Ratio::new(num, den));
    }
    s.parse::<u64>().map(Ratio::from_integer).map_err(|_| bad())
}

pub fn format_ratio(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serde adapter writing a ratio as `"p/q"`.
pub mod ratio_text {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_ratio(&s).map_err(serde::de::Error::custom)
    }
}

pub type MatrixText = Vec<Vec<String>>;

pub fn matrix_to_text<F: Field>(m: &Matrix<F>) -> MatrixText {
    let f = m.field();
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| f.format(x)).collect())
        .collect()
}

/// `rows x cols` from text; shapes are checked since empty rows carry no
/// column count.
pub fn matrix_from_text<F: Field>(field: &F, rows: usize, cols: usize, text: &MatrixText) -> Result<Matrix<F>> {
    if text.len() != rows || text.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!("expected a {rows}x{cols} matrix")));
    }
    let data = text
        .iter()
        .map(|r| r.iter().map(|x| field.parse(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows == 0 {
        return Ok(Matrix::zeros(field, 0, cols));
    }
    Matrix::from_rows(field, data)
}

fn square_from_text<F: Field>(field: &F, text: &MatrixText) -> Result<Matrix<F>> {
    matrix_from_text(field, text.len(), text.len(), text)
}

/// An inner module: an invertible matrix or a pair of idempotents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InnerFile {
    Invertible { phi: MatrixText },
    Idempotents { phi: MatrixText, psi: MatrixText },
}

impl InnerFile {
    pub fn of<F: Field>(inner: &InnerModule<F>) -> Self {
        match inner {
            InnerModule::Laurent(v) => InnerFile::Invertible {
                phi: matrix_to_text(v.phi()),
            },
            InnerModule::TwoIdempotent(v) => InnerFile::Idempotents {
                phi: matrix_to_text(v.phi()),
                psi: matrix_to_text(v.psi()),
            },
        }
    }

    pub fn build<F: Field>(&self, field: &F) -> Result<InnerModule<F>> {
        Ok(match self {
            InnerFile::Invertible { phi } => InnerModule::Laurent(LaurentModule::new(square_from_text(field, phi)?)?),
            InnerFile::Idempotents { phi, psi } => InnerModule::TwoIdempotent(TwoIdempotentModule::new(
                square_from_text(field, phi)?,
                square_from_text(field, psi)?,
            )?),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("inner module: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowMatrix {
    pub arrow: String,
    pub matrix: MatrixText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub presentation: String,
    pub field: String,
    pub constructor: ModuleKind,
    pub word: Option<String>,
    /// Action of the last special loop on a symmetric string.
    pub t: Option<bool>,
    pub inner: Option<InnerFile>,
    pub dim: usize,
    pub labels: Vec<BasisLabel>,
    /// Vertex id of each basis vector.
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowMatrix>,
}

impl ModuleFile {
    pub fn of<F: Field>(m: &ModuleRep<F>) -> Self {
        let p = m.presentation();
        let (word, t, inner) = match m.source() {
            ModuleSource::String { word, t } => (Some(word.word.format(p)), *t, None),
            ModuleSource::Band { word, inner } => (Some(word.word.format(p)), None, Some(InnerFile::of(inner))),
            ModuleSource::Derived(_) => (None, None, None),
        };
        ModuleFile {
            presentation: p.id.clone(),
            field: m.field().name(),
            constructor: m.kind(),
            word,
            t,
            inner,
            dim: m.dim(),
            labels: m.labels().to_vec(),
            vertices: (0..m.dim()).map(|k| p.vertices()[m.vertex_of(k)].clone()).collect(),
            arrows: p
                .arrows()
                .iter()
                .enumerate()
                .map(|(a, arrow)| ArrowMatrix {
                    arrow: arrow.id.clone(),
                    matrix: matrix_to_text(m.arrow_matrix(a)),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("module file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("module file: {e}")))
    }

    /// Rebuilds the module. Files with a word are rebuilt by the
    /// constructor and must agree with the stored matrices.
    pub fn load<F: Field>(&self, p: &Arc<AlgebraPresentation>, field: &F) -> Result<ModuleRep<F>> {
        if self.presentation != p.id {
            return Err(Error::Parse(format!("module is over {:?}, not {:?}", self.presentation, p.id)));
        }
        if self.field != field.name() {
            return Err(Error::Parse(format!("module is over {}, not {}", self.field, field.name())));
        }
        if self.labels.len() != self.dim || self.vertices.len() != self.dim {
            return Err(Error::DimensionMismatch("labels and vertices must list every basis vector".into()));
        }
        let vertex_of = self
            .vertices
            .iter()
            .map(|v| p.vertex_index(v).ok_or_else(|| Error::Parse(format!("unknown vertex {v:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let count = |v: usize| vertex_of.iter().filter(|&&x| x == v).count();
        if self.arrows.len() != p.arrows().len() {
            return Err(Error::DimensionMismatch("one matrix per arrow".into()));
        }
        let mut arrows = Vec::new();
        for (spec, rec) in p.arrows().iter().zip(&self.arrows) {
            if spec.id != rec.arrow {
                return Err(Error::Parse(format!("expected arrow {:?}, found {:?}", spec.id, rec.arrow)));
            }
            arrows.push(matrix_from_text(field, count(spec.target), count(spec.source), &rec.matrix)?);
        }
        let inner_indexed = matches!(
            self.constructor,
            ModuleKind::Band | ModuleKind::ClannishBand | ModuleKind::ClannishSymmetricBand
        );
        let stored = ModuleRep::new(
            p.clone(),
            field,
            self.labels.clone(),
            vertex_of,
            arrows,
            inner_indexed,
            ModuleSource::Derived("loaded from file".into()),
        )?;
        let Some(text) = &self.word else {
            stored.check_relations()?;
            return Ok(stored);
        };
        let w = Word::parse(p, text)?;
        let built = match &self.inner {
            None => build_string_module(p, field, &classify_string(p, &w)?, self.t)?,
            Some(inner) => build_band_module(p, field, &classify_band(p, &w)?, &inner.build(field)?)?,
        };
        let same = built.kind() == self.constructor
            && built.labels() == stored.labels()
            && (0..built.dim()).all(|k| built.vertex_of(k) == stored.vertex_of(k))
            && (0..p.arrows().len()).all(|a| built.arrow_matrix(a) == stored.arrow_matrix(a));
        if !same {
            return Err(Error::InnerMismatch("stored matrices differ from the constructed module".into()));
        }
        Ok(built)
    }
}

pub fn witness_to_json(w: &HyperfinitenessWitness) -> String {
    let mut s = serde_json::to_string_pretty(w).expect("witness serializes");
    s.push('\n');
    s
}

pub fn witness_from_json(text: &str) -> Result<HyperfinitenessWitness> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("witness file: {e}")))
}
