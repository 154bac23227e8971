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

//! Band modules of the five-vertex clannish algebra: planar submodules,
//! their codimension and in-degrees.

use std::sync::Arc;

use hyperfinite::{
    band_planar_submodule, build_band_module, canonical_of_dim, coefficient_quiver, enumerate_bands,
    AlgebraPresentation, InnerModule, LaurentModule, Poly, PrimeField,
};

fn main() -> hyperfinite::Result<()> {
    let p = Arc::new(AlgebraPresentation::five_vertex_clannish());
    let f = PrimeField::new(101)?;
    let powers = vec![Poly::parse(&f, "T - 3")?];
    for b in enumerate_bands(&p, 6) {
        let inner = if b.is_symmetric() {
            InnerModule::TwoIdempotent(canonical_of_dim(&f, 3, &powers)?.remove(0).module)
        } else {
            InnerModule::Laurent(LaurentModule::jordan(&f, &5, 3)?)
        };
        let m = build_band_module(&p, &f, &b, &inner)?;
        let n = band_planar_submodule(&m)?;
        let q = coefficient_quiver(&n.submodule);
        println!(
            "{:<28} symmetric {:<5} dim {:>2} codim {} planar {} max in-degree {}",
            b.word.format(&p),
            b.is_symmetric(),
            m.dim(),
            n.codimension(),
            q.planarity().is_planar(),
            q.degree_stats().max_in
        );
    }
    Ok(())
}
