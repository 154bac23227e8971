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

use hyperfinite::{
    endomorphism_basis, find_isomorphism, indecomposability, is_morphism, Field, Matrix,
    Poly, PrimeField, QuiverRep, Rationals, RepArrow, Verdict,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Kronecker representation with arrows `a, b: 1 -> 2`.
fn kronecker<F: Field>(f: &F, a: Matrix<F>, b: Matrix<F>) -> QuiverRep<F> {
    let dims = vec![a.cols(), a.rows()];
    let arrows = vec![
        RepArrow { source: 0, target: 1, matrix: a },
        RepArrow { source: 0, target: 1, matrix: b },
    ];
    QuiverRep::new(f, dims, arrows).unwrap()
}

/// The string module of `a b^- a b^-` written out by hand: basis
/// `v0..v4`, `a(v1) = v0`, `b(v1) = v2`, `a(v3) = v2`, `b(v3) = v4`.
fn abab<F: Field>(f: &F) -> QuiverRep<F> {
    let a = Matrix::from_i64(f, &[&[1, 0], &[0, 1], &[0, 0]]);
    let b = Matrix::from_i64(f, &[&[0, 0], &[1, 0], &[0, 1]]);
    kronecker(f, a, b)
}

fn random_invertible<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng) -> Matrix<F> {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| f.random(rng)).collect()).collect();
        let m = Matrix::from_rows(f, rows).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

#[test]
fn simple_module_has_scalar_endomorphisms() {
    let f = PrimeField::new(7).unwrap();
    let z = Matrix::zeros(&f, 1, 0);
    let s = kronecker(&f, z.clone(), z);
    assert_eq!(endomorphism_basis(&s).len(), 1);
    assert!(indecomposability(&s, 1).is_indecomposable());
}

#[test]
fn string_module_is_indecomposable_and_its_square_is_not() {
    for p in [2, 3, 101] {
        let f = PrimeField::new(p).unwrap();
        let m = abab(&f);
        assert_eq!(endomorphism_basis(&m).len(), 1);
        assert!(indecomposability(&m, 3).is_indecomposable());
        let mm = m.direct_sum(&m).unwrap();
        assert!(endomorphism_basis(&mm).len() >= 4);
        match indecomposability(&mm, 3) {
            Verdict::Decomposable(Some(e)) => {
                assert!(e.is_idempotent());
                assert!(!e.is_zero() && !e.is_identity());
            }
            other => panic!("expected a certificate, got {other:?}"),
        }
    }
    let m = abab(&Rationals);
    assert!(indecomposability(&m, 3).is_indecomposable());
    assert!(indecomposability(&m.direct_sum(&m).unwrap(), 3).is_decomposable());
}

#[test]
fn loops_with_split_and_nonsplit_characteristic_polynomial() {
    // T^2 + 1 is irreducible over Q and GF(3) but splits over GF(5)
    let q = Rationals;
    let c = Poly::parse(&q, "T^2 + 1").unwrap().companion().unwrap();
    let rep = QuiverRep::with_loops(&q, 2, &[&c]).unwrap();
    assert!(indecomposability(&rep, 5).is_indecomposable());
    let f3 = PrimeField::new(3).unwrap();
    let c3 = Poly::parse(&f3, "T^2 + 1").unwrap().companion().unwrap();
    assert!(indecomposability(&QuiverRep::with_loops(&f3, 2, &[&c3]).unwrap(), 5).is_indecomposable());
    let f5 = PrimeField::new(5).unwrap();
    let c5 = Poly::parse(&f5, "T^2 + 1").unwrap().companion().unwrap();
    assert!(indecomposability(&QuiverRep::with_loops(&f5, 2, &[&c5]).unwrap(), 5).is_decomposable());
    // a Jordan block stays indecomposable in every characteristic
    let j = Matrix::from_i64(&f5, &[&[2, 0, 0], &[1, 2, 0], &[0, 1, 2]]);
    assert!(indecomposability(&QuiverRep::with_loops(&f5, 3, &[&j]).unwrap(), 5).is_indecomposable());
}

#[test]
fn companion_of_t2_minus_one_is_an_involution() {
    let q = Rationals;
    let c = Poly::parse(&q, "T^2 - 1").unwrap().companion().unwrap();
    assert!(c.mul(&c).unwrap().is_identity());
    let chi = Poly::new(&q, c.charpoly());
    assert_eq!(chi, Poly::parse(&q, "T^2 - 1").unwrap());
    // splits into two eigenlines
    assert!(indecomposability(&QuiverRep::with_loops(&q, 2, &[&c]).unwrap(), 1).is_decomposable());
}

#[test]
fn isomorphism_search_recovers_a_base_change() {
    let f = PrimeField::new(101).unwrap();
    let m = abab(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = vec![random_invertible(&f, 2, &mut rng), random_invertible(&f, 3, &mut rng)];
    let n = m.transport(&g).unwrap();
    let iso = find_isomorphism(&m, &n, 1).unwrap().expect("isomorphic");
    assert!(is_morphism(&m, &n, &iso));
    let s = kronecker(&f, Matrix::zeros(&f, 1, 0), Matrix::zeros(&f, 1, 0));
    assert!(find_isomorphism(&m, &s, 1).unwrap().is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn endomorphism_dimension_is_basis_independent(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 7])) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Matrix::from_rows(&f, (0..3).map(|_| (0..2).map(|_| f.random(&mut rng)).collect()).collect()).unwrap();
        let b = Matrix::from_rows(&f, (0..3).map(|_| (0..2).map(|_| f.random(&mut rng)).collect()).collect()).unwrap();
        let m = kronecker(&f, a, b);
        let g = vec![random_invertible(&f, 2, &mut rng), random_invertible(&f, 3, &mut rng)];
        let n = m.transport(&g).unwrap();
        prop_assert_eq!(endomorphism_basis(&m).len(), endomorphism_basis(&n).len());
        let vm = indecomposability(&m, seed);
        let vn = indecomposability(&n, seed ^ 1);
        prop_assert_eq!(vm.is_indecomposable(), vn.is_indecomposable());
        if let Verdict::Decomposable(Some(e)) = vm {
            prop_assert!(e.is_idempotent());
        }
    }
}
