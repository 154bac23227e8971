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

//! The endomorphism-ring oracle on a few modules.

use std::sync::Arc;

use hyperfinite::{
    build_band_module, classify_band, indecomposability, AlgebraPresentation, InnerModule, Matrix,
    Rationals, TwoIdempotentModule, Word,
};

fn main() -> hyperfinite::Result<()> {
    let p = Arc::new(AlgebraPresentation::loop_clannish());
    let q = Rationals;
    let b = classify_band(&p, &Word::parse(&p, "eps* a- eps* a")?)?;
    // a three-dimensional pair that splits, and a one-dimensional one
    let phi = Matrix::from_i64(&q, &[&[0, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
    let psi = Matrix::from_i64(&q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
    let one = Matrix::from_i64(&q, &[&[1]]);
    let zero = Matrix::from_i64(&q, &[&[0]]);
    for (name, v) in [
        ("three", TwoIdempotentModule::new(phi, psi)?),
        ("one", TwoIdempotentModule::new(one, zero)?),
    ] {
        let m = build_band_module(&p, &q, &b, &InnerModule::TwoIdempotent(v))?;
        let verdict = indecomposability(&m.raw(), 1);
        println!("{name}: dim {} indecomposable {}", m.dim(), verdict.is_indecomposable());
    }
    Ok(())
}
