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

use planar_frag::PlanarError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed presentation: {0}")]
    Structural(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("word is not coadmissible: {0}")]
    NotCoadmissible(String),
    #[error("not primitive: {0} is a proper power")]
    NotPrimitive(String),
    #[error("not a band: {0}")]
    NotBand(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not idempotent: {0}")]
    NotIdempotent(String),
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("module is decomposable: {0}")]
    Decomposable(String),
    #[error("could not decide indecomposability: {0}")]
    Undetermined(String),
    #[error("presentation not finite-dimensional: {0}")]
    NotFiniteDimensional(String),
    #[error("inner module does not match the word: {0}")]
    InnerMismatch(String),
    #[error("unknown basis label {0}")]
    UnknownLabel(String),
    #[error("span is not closed: arrow {arrow} sends {label} outside the subset")]
    NotASubmodule { arrow: String, label: String },
    #[error("eps must lie in (0, 1): {0}")]
    BadEps(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Planar(#[from] PlanarError),
}

pub type Result<T> = std::result::Result<T, Error>;
