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

//! A uniform bound on summand size for all Kronecker string modules up to
//! a given length.

use std::sync::Arc;

use hyperfinite::{family_witness, AlgebraPresentation, Budget, FamilyMembers, FamilySpec, PrimeField, Ratio};

fn main() -> hyperfinite::Result<()> {
    let spec = FamilySpec {
        presentation: Arc::new(AlgebraPresentation::kronecker()),
        field: PrimeField::new(2)?,
        members: FamilyMembers::Strings { max_len: 60 },
    };
    for eps in [Ratio::new(1, 2), Ratio::new(1, 5), Ratio::new(1, 10)] {
        let fw = family_witness(&spec, eps, Budget::default())?;
        println!(
            "eps {eps}: {} modules, L = {}, certified {}",
            fw.witnesses.len(),
            fw.l_eps,
            fw.certified()
        );
    }
    Ok(())
}
