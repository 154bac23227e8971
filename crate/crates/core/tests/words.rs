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

use std::collections::BTreeSet;

use hyperfinite::{
    classify_band, classify_string, enumerate_bands, enumerate_strings, is_coadmissible,
    is_valid_word, AlgebraPresentation, BandSymmetry, Error, Letter, Sign, StringSymmetry, Word,
};
use proptest::prelude::*;

fn w(p: &AlgebraPresentation, s: &str) -> Word {
    Word::parse(p, s).unwrap()
}

fn letters(p: &AlgebraPresentation, s: &str) -> Vec<Letter> {
    s.split_whitespace().map(|t| Letter::parse(p, t).unwrap()).collect()
}

fn all_letters(p: &AlgebraPresentation) -> Vec<Letter> {
    let mut out = Vec::new();
    for (i, a) in p.arrows().iter().enumerate() {
        if a.special {
            out.push(Letter::special(i));
        } else {
            out.push(Letter::direct(i));
            out.push(Letter::inverse_of(i));
        }
    }
    out
}

/// Every letter sequence of length `n`, unfiltered.
fn sequences(alphabet: &[Letter], n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                alphabet.iter().map(move |&l| {
                    let mut t = s.clone();
                    t.push(l);
                    t
                })
            })
            .collect();
    }
    out
}

/// Bands by brute force: words whose cube is a word, not a power, up to
/// rotation and inversion.
fn brute_bands(p: &AlgebraPresentation, n: usize) -> usize {
    let mut classes = BTreeSet::new();
    for s in sequences(&all_letters(p), n) {
        let cube: Vec<Letter> = s.iter().chain(&s).chain(&s).copied().collect();
        if !is_valid_word(p, &cube).unwrap() {
            continue;
        }
        if (1..n).any(|d| n.is_multiple_of(d) && (d..n).all(|i| s[i] == s[i - d])) {
            continue;
        }
        let inv: Vec<Letter> = s.iter().rev().map(|l| l.inverse()).collect();
        let mut best: Option<Vec<Letter>> = None;
        for base in [&s, &inv] {
            for k in 0..n {
                let mut r = base.clone();
                r.rotate_left(k);
                if best.as_ref().is_none_or(|b| r < *b) {
                    best = Some(r);
                }
            }
        }
        classes.insert(best.unwrap());
    }
    classes.len()
}

#[test]
fn kronecker_words() {
    let k = AlgebraPresentation::kronecker();
    assert!(is_valid_word(&k, &letters(&k, "a b- a b-")).unwrap());
    assert!(!is_valid_word(&k, &letters(&k, "a a-")).unwrap());
    assert!(!is_valid_word(&k, &letters(&k, "a b")).unwrap());
    assert!(matches!(Letter::parse(&k, "z"), Err(Error::Structural(_))));
}

#[test]
fn repeated_special_letter_is_not_a_word() {
    let p = AlgebraPresentation::loop_clannish();
    assert!(!is_valid_word(&p, &letters(&p, "eps* eps*")).unwrap());
    assert!(!is_valid_word(&p, &letters(&p, "a a")).unwrap());
    assert!(is_valid_word(&p, &letters(&p, "eps* a- eps*")).unwrap());
}

#[test]
fn coadmissibility() {
    let p = AlgebraPresentation::loop_clannish();
    assert!(is_coadmissible(&p, &w(&p, "eps* a- eps*")));
    assert!(!is_coadmissible(&p, &w(&p, "a")));
    let f = AlgebraPresentation::five_vertex_clannish();
    // vertex 2 carries no special loop, vertex 1 does
    assert!(is_coadmissible(&f, &w(&f, "@2")));
    assert!(!is_coadmissible(&f, &w(&f, "@1")));
    let k = AlgebraPresentation::kronecker();
    assert!(is_coadmissible(&k, &w(&k, "@1")));
}

#[test]
fn string_classification() {
    let f = AlgebraPresentation::five_vertex_clannish();
    let s = classify_string(&f, &w(&f, "d a eps* a- d-")).unwrap();
    match &s.symmetry {
        StringSymmetry::Symmetric { z, f: mid } => {
            assert_eq!(z, &letters(&f, "d a"));
            assert_eq!(f.arrow(*mid).id, "eps");
        }
        other => panic!("expected symmetric, got {other:?}"),
    }
    let p = AlgebraPresentation::loop_clannish();
    let s = classify_string(&p, &w(&p, "eps* a- eps*")).unwrap();
    assert_eq!(s.symmetry, StringSymmetry::Asymmetric);
    let k = AlgebraPresentation::kronecker();
    let s = classify_string(&k, &w(&k, "a")).unwrap();
    assert_eq!(s.symmetry, StringSymmetry::Asymmetric);
    assert!(matches!(
        classify_string(&p, &w(&p, "a")),
        Err(Error::NotCoadmissible(_))
    ));
}

#[test]
fn band_classification() {
    let p = AlgebraPresentation::loop_clannish();
    let b = classify_band(&p, &w(&p, "eps* a- eps* a")).unwrap();
    assert!(b.is_symmetric());
    let b = classify_band(&p, &w(&p, "a eps*")).unwrap();
    assert!(!b.is_symmetric());
    let k = AlgebraPresentation::kronecker();
    let b = classify_band(&k, &w(&k, "a b-")).unwrap();
    assert!(!b.is_symmetric());
    assert!(matches!(
        classify_band(&k, &w(&k, "a b- a b-")),
        Err(Error::NotPrimitive(_))
    ));
    assert!(matches!(classify_band(&k, &w(&k, "a")), Err(Error::NotBand(_))));
    let f = AlgebraPresentation::five_vertex_clannish();
    let b = classify_band(&f, &w(&f, "eps* a- b eta* b- a")).unwrap();
    match &b.symmetry {
        BandSymmetry::Symmetric { z, f: ff, g, .. } => {
            assert_eq!(z, &letters(&f, "b- a"));
            assert_eq!(f.arrow(*ff).id, "eps");
            assert_eq!(f.arrow(*g).id, "eta");
        }
        other => panic!("expected symmetric, got {other:?}"),
    }
}

#[test]
fn special_direction_in_symmetric_string() {
    let f = AlgebraPresentation::five_vertex_clannish();
    let s = classify_string(&f, &w(&f, "eps* a- b eta* b- a eps*")).unwrap();
    let d = s.direction();
    // the first eps* points into the word: eps acts v_0 -> v_1 and fixes v_1
    assert_eq!(d[0], Sign::Minus);
    assert_eq!(d[1], Sign::Minus);
    assert_eq!(d[2], Sign::Plus);
}

#[test]
fn letter_kinds_fix_their_direction() {
    let k = AlgebraPresentation::kronecker();
    let s = classify_string(&k, &w(&k, "a b- a")).unwrap();
    assert_eq!(s.direction(), vec![Sign::Plus, Sign::Minus, Sign::Plus]);
}

#[test]
fn kronecker_string_examples() {
    let k = AlgebraPresentation::kronecker();
    let strings: BTreeSet<String> = enumerate_strings(&k, 4)
        .iter()
        .map(|s| s.canonical.format(&k))
        .collect();
    for (word, inv) in [("a b- a b-", "b a- b a-"), ("b- a b- a", "a- b a- b")] {
        assert!(
            strings.contains(word) || strings.contains(inv),
            "{word} missing from {strings:?}"
        );
    }
    let trivial = enumerate_strings(&k, 0);
    assert_eq!(trivial.len(), 2);
    assert!(trivial.iter().all(|s| s.word.is_empty()));
}

#[test]
fn kronecker_band_counts_match_brute_force() {
    let k = AlgebraPresentation::kronecker();
    let bands = enumerate_bands(&k, 6);
    for n in 1..=6 {
        let ours = bands.iter().filter(|b| b.canonical.len() == n).count();
        assert_eq!(ours, brute_bands(&k, n), "length {n}");
    }
    assert_eq!(bands.len(), 1);
}

#[test]
fn clannish_band_counts_match_brute_force() {
    for p in [
        AlgebraPresentation::loop_clannish(),
        AlgebraPresentation::five_vertex_clannish(),
    ] {
        let bands = enumerate_bands(&p, 6);
        for n in 1..=6 {
            let ours = bands.iter().filter(|b| b.canonical.len() == n).count();
            assert_eq!(ours, brute_bands(&p, n), "{} length {n}", p.id);
        }
    }
}

#[test]
fn string_counts_match_brute_force() {
    for p in [
        AlgebraPresentation::kronecker(),
        AlgebraPresentation::loop_clannish(),
        AlgebraPresentation::five_vertex_clannish(),
    ] {
        let strings = enumerate_strings(&p, 5);
        for n in 1..=5 {
            let mut classes = BTreeSet::new();
            for s in sequences(&all_letters(&p), n) {
                if !is_valid_word(&p, &s).unwrap() {
                    continue;
                }
                let word = Word::new(&p, s.clone()).unwrap();
                if !is_coadmissible(&p, &word) {
                    continue;
                }
                let inv: Vec<Letter> = s.iter().rev().map(|l| l.inverse()).collect();
                classes.insert(s.min(inv));
            }
            let ours = strings.iter().filter(|s| s.canonical.len() == n).count();
            assert_eq!(ours, classes.len(), "{} length {n}", p.id);
        }
    }
}

fn algebras() -> Vec<AlgebraPresentation> {
    vec![
        AlgebraPresentation::kronecker(),
        AlgebraPresentation::loop_clannish(),
        AlgebraPresentation::five_vertex_clannish(),
    ]
}

proptest! {
    #[test]
    fn enumerated_strings_are_canonical(which in 0usize..3, len in 0usize..7) {
        let p = &algebras()[which];
        for s in enumerate_strings(p, len) {
            prop_assert!(is_valid_word(p, s.canonical.letters()).unwrap());
            prop_assert!(is_coadmissible(p, &s.canonical));
            let again = classify_string(p, &s.canonical).unwrap();
            prop_assert_eq!(&again.canonical, &s.canonical);
            let inv = classify_string(p, &s.canonical.inverse(p)).unwrap();
            prop_assert_eq!(&inv.canonical, &s.canonical);
        }
    }

    #[test]
    fn enumerated_bands_are_bands(which in 0usize..3, len in 1usize..7) {
        let p = &algebras()[which];
        let bands = enumerate_bands(p, len);
        let mut rotations = BTreeSet::new();
        for b in &bands {
            let l = b.canonical.letters();
            let ww: Vec<Letter> = l.iter().chain(l).copied().collect();
            let www: Vec<Letter> = ww.iter().chain(l).copied().collect();
            prop_assert!(is_valid_word(p, &ww).unwrap());
            prop_assert!(is_valid_word(p, &www).unwrap());
            for k in 0..l.len() {
                prop_assert!(rotations.insert(b.canonical.rotate(p, k).letters().to_vec()));
            }
            for k in 0..l.len() {
                let r = b.canonical.rotate(p, k);
                let again = classify_band(p, &r).unwrap();
                prop_assert_eq!(&again.canonical, &b.canonical);
                let inv = classify_band(p, &r.inverse(p)).unwrap();
                prop_assert_eq!(&inv.canonical, &b.canonical);
            }
        }
    }

    #[test]
    fn inverting_a_string_flips_special_directions(which in 1usize..3, len in 1usize..7) {
        let p = &algebras()[which];
        for s in enumerate_strings(p, len) {
            if s.is_symmetric() || s.word.is_empty() {
                continue;
            }
            let d = s.direction();
            let inv = classify_string(p, &s.word.inverse(p)).unwrap();
            let e = inv.direction();
            let n = d.len();
            for i in 0..n {
                prop_assert_ne!(d[i], e[n - 1 - i]);
            }
        }
    }
}
