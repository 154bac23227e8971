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

//! Modules over string and clannish algebras: presentations, words,
//! string and band modules, coefficient quivers and hyperfiniteness
//! witnesses.

pub mod algebra;
pub mod endo;
pub mod error;
pub mod field;
pub mod inner;
pub mod io;
pub mod matrix;
pub mod module;
pub mod poly;
pub mod quiver;
pub mod witness;
pub mod word;

pub use algebra::{
    path_length_bound, validate_clannish, validate_string_algebra, AlgebraPresentation,
    AlgebraReport, Arrow, ArrowSpec, AxiomFailure, PresentationFile,
};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matrix::Matrix;
pub use poly::Poly;
pub use word::{
    classify_band, classify_string, enumerate_bands, enumerate_strings, is_coadmissible,
    is_valid_word, BandSymmetry, BandWord, Letter, LetterKind, Sign, StringSymmetry, StringWord,
    Word,
};
pub use endo::{
    endomorphism_basis, find_isomorphism, hom_basis, indecomposability, is_indecomposable,
    is_morphism, Morphism, QuiverRep, RepArrow, Verdict,
};
pub use inner::{
    canonical_of_dim, four_subspace_tree_basis, homogeneous_family, jordan_block,
    nilpotent_family, rcf_tree_subspace, single_irreducible_power, type_one, type_two, type_zero,
    CanonicalFourSubspace, FourSubspaceTreeBasis, FourSubspaceType, LaurentModule, LineNode,
    RcfTree, TwoIdempotentModule,
};
pub use module::{
    asym_band_planar_submodule, band_planar_submodule, band_string_submodule,
    build_band_module, build_string_module, sym_band_planar_submodule, verify_submodule,
    ArrowClosure, BaseChange, BasisLabel, InnerModule, ModuleKind, ModuleRep, ModuleSource,
    PlanarSubmodule, SubmoduleWitness,
};
pub use quiver::{
    coefficient_quiver, CoefficientQuiver, DegreeStats, MappingQuiver, Planarity, QuiverEdge,
};
pub use io::{format_ratio, parse_ratio, InnerFile, ModuleFile};
pub use witness::{
    band_threshold_met, describe, family_witness, predecessor_closure, verify_witness, witness,
    Budget, ClosedRemovalSet, FamilyMembers, FamilySpec, FamilyWitness, HyperfinitenessWitness,
    Violation, WitnessMode,
};
pub use num_rational::Ratio;
