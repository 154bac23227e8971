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

use thiserror::Error;

use crate::kuratowski::Kuratowski;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("graph is not planar ({} witness with {} edges)", .0.kind, .0.edges.len())]
    NotPlanar(Box<Kuratowski>),
    #[error("invalid Kuratowski witness: {0}")]
    InvalidWitness(String),
    #[error("eps must lie in (0, 1], got {0}")]
    BadEps(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("removed set has {removed} vertices, bound is {bound}")]
    TooManyRemoved { removed: usize, bound: String },
    #[error("component containing vertex {vertex} has {size} vertices, bound is {bound}")]
    ComponentTooLarge {
        vertex: usize,
        size: usize,
        bound: usize,
    },
    #[error("recorded components do not match the graph minus the removed set")]
    ComponentMismatch,
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
}
