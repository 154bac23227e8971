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

//! Planarity testing with embeddings and Kuratowski certificates, planar
//! separators and fragmentation of planar graphs into bounded pieces.

pub mod embedding;
pub mod error;
pub mod fragment;
pub mod graph;
pub mod kuratowski;
mod lr;
pub mod separator;

pub use embedding::{Embedding, HalfEdge, MultiEmbedding};
pub use error::{CertifyError, PlanarError};
pub use fragment::{
    certify_fragmentation, planar_fragment, within_fraction, FragmentationResult, Strategy,
};
pub use graph::Graph;
pub use kuratowski::{find_kuratowski, Kuratowski, KuratowskiKind};
pub use lr::{is_planar, planar_embedding};
pub use num_rational::Ratio;
pub use separator::{planar_separator, Separation, SeparatorPhase};
