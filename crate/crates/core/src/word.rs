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

//! Letters, words, strings and bands, and the direction of special letters.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LetterKind {
    Direct,
    Inverse,
    Special,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub arrow: usize,
    pub kind: LetterKind,
}

impl Letter {
    pub fn direct(arrow: usize) -> Self {
        Letter { arrow, kind: LetterKind::Direct }
    }

    pub fn inverse_of(arrow: usize) -> Self {
        Letter { arrow, kind: LetterKind::Inverse }
    }

    pub fn special(arrow: usize) -> Self {
        Letter { arrow, kind: LetterKind::Special }
    }

    pub fn inverse(self) -> Self {
        let kind = match self.kind {
            LetterKind::Direct => LetterKind::Inverse,
            LetterKind::Inverse => LetterKind::Direct,
            LetterKind::Special => LetterKind::Special,
        };
        Letter { arrow: self.arrow, kind }
    }

    pub fn source(self, p: &AlgebraPresentation) -> usize {
        let a = p.arrow(self.arrow);
        match self.kind {
            LetterKind::Inverse => a.target,
            _ => a.source,
        }
    }

    pub fn target(self, p: &AlgebraPresentation) -> usize {
        let a = p.arrow(self.arrow);
        match self.kind {
            LetterKind::Inverse => a.source,
            _ => a.target,
        }
    }

    /// Position in the letter order: inverse < special < (end of word) < direct.
    fn rank(self) -> u8 {
        match self.kind {
            LetterKind::Inverse => 0,
            LetterKind::Special => 1,
            LetterKind::Direct => 3,
        }
    }

    pub fn format(self, p: &AlgebraPresentation) -> String {
        let id = &p.arrow(self.arrow).id;
        match self.kind {
            LetterKind::Direct => id.clone(),
            LetterKind::Inverse => format!("{id}-"),
            LetterKind::Special => format!("{id}*"),
        }
    }

    pub fn parse(p: &AlgebraPresentation, token: &str) -> Result<Self> {
        let (id, kind) = if let Some(id) = token.strip_suffix('-') {
            (id, LetterKind::Inverse)
        } else if let Some(id) = token.strip_suffix('*') {
            (id, LetterKind::Special)
        } else {
            (token, LetterKind::Direct)
        };
        let arrow = p
            .arrow_index(id)
            .ok_or_else(|| Error::Structural(format!("word: unknown arrow {id:?}")))?;
        let special = p.arrow(arrow).special;
        match kind {
            LetterKind::Special if !special => Err(Error::InvalidWord(format!(
                "{token}: {id} is not a special loop"
            ))),
            LetterKind::Direct | LetterKind::Inverse if special => Err(Error::InvalidWord(format!(
                "{token}: special loop {id} is written {id}*"
            ))),
            _ => Ok(Letter { arrow, kind }),
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rank(), self.arrow).cmp(&(other.rank(), other.arrow))
    }
}

/// A finite sequence of letters. Empty words remember their vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
    vertex: usize,
}

fn matches_relation(u: &[Letter], r: &[usize]) -> bool {
    u.len() == r.len()
        && u.iter()
            .zip(r)
            .all(|(l, &a)| l.arrow == a && l.kind != LetterKind::Inverse)
}

fn inverse_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// Whether `letters` form a word: composable, reduced, free of relations in
/// either direction and of repeated special letters.
pub fn is_valid_word(p: &AlgebraPresentation, letters: &[Letter]) -> Result<bool> {
    for l in letters {
        if l.arrow >= p.arrows().len() {
            return Err(Error::Structural(format!("word: unknown arrow index {}", l.arrow)));
        }
        if (l.kind == LetterKind::Special) != p.arrow(l.arrow).special {
            return Err(Error::Structural(format!(
                "word: letter kind does not match arrow {}",
                p.arrow(l.arrow).id
            )));
        }
    }
    Ok(valid_unchecked(p, letters))
}

fn valid_unchecked(p: &AlgebraPresentation, letters: &[Letter]) -> bool {
    for w in letters.windows(2) {
        if w[0].source(p) != w[1].target(p) || w[0].inverse() == w[1] {
            return false;
        }
    }
    !has_relation(p, letters, 0)
}

/// Whether some relation (or its inverse) occurs in `letters` ending at or
/// after position `from`.
fn has_relation(p: &AlgebraPresentation, letters: &[Letter], from: usize) -> bool {
    for r in p.relations() {
        let k = r.len();
        if k > letters.len() {
            continue;
        }
        let start = from.saturating_sub(k - 1);
        for i in start..=letters.len() - k {
            let u = &letters[i..i + k];
            if matches_relation(u, r) || matches_relation(&inverse_letters(u), r) {
                return true;
            }
        }
    }
    false
}

impl Word {
    pub fn new(p: &AlgebraPresentation, letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidWord("empty word needs a vertex".into()));
        }
        if !is_valid_word(p, &letters)? {
            return Err(Error::InvalidWord(format_letters(p, &letters)));
        }
        let vertex = letters[0].target(p);
        Ok(Word { letters, vertex })
    }

    pub fn trivial(p: &AlgebraPresentation, vertex: usize) -> Result<Self> {
        if vertex >= p.vertices().len() {
            return Err(Error::Structural(format!("word: unknown vertex index {vertex}")));
        }
        Ok(Word {
            letters: Vec::new(),
            vertex,
        })
    }

    /// Whitespace separated tokens `a`, `a-`, `eps*`; `@v` is the empty word
    /// at vertex `v`.
    pub fn parse(p: &AlgebraPresentation, text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if let [t] = tokens.as_slice() {
            if let Some(v) = t.strip_prefix('@') {
                let vi = p
                    .vertex_index(v)
                    .ok_or_else(|| Error::Structural(format!("word: unknown vertex {v:?}")))?;
                return Word::trivial(p, vi);
            }
        }
        let letters = tokens
            .iter()
            .map(|t| Letter::parse(p, t))
            .collect::<Result<Vec<_>>>()?;
        Word::new(p, letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Vertex of `V_0`, the target of the first letter.
    pub fn start_vertex(&self) -> usize {
        self.vertex
    }

    /// Vertex of `V_j`: `t(w_1)` for `j = 0` and `s(w_j)` otherwise.
    pub fn vertex_at(&self, p: &AlgebraPresentation, j: usize) -> usize {
        if j == 0 {
            self.vertex
        } else {
            self.letters[j - 1].source(p)
        }
    }

    pub fn inverse(&self, p: &AlgebraPresentation) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let letters = inverse_letters(&self.letters);
        let vertex = letters[0].target(p);
        Word { letters, vertex }
    }

    /// `w_{k+1} ... w_n w_1 ... w_k`.
    pub fn rotate(&self, p: &AlgebraPresentation, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        letters.rotate_left(k % self.letters.len());
        let vertex = letters[0].target(p);
        Word { letters, vertex }
    }

    pub fn format(&self, p: &AlgebraPresentation) -> String {
        if self.letters.is_empty() {
            format!("@{}", p.vertices()[self.vertex])
        } else {
            format_letters(p, &self.letters)
        }
    }

    pub fn display<'a>(&'a self, p: &'a AlgebraPresentation) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Word, &'a AlgebraPresentation);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, p)
    }
}

fn format_letters(p: &AlgebraPresentation, letters: &[Letter]) -> String {
    letters
        .iter()
        .map(|l| l.format(p))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Neither `ε* w` nor `w ε*` is a word, for every special loop `ε`.
pub fn is_coadmissible(p: &AlgebraPresentation, w: &Word) -> bool {
    p.special_arrows().all(|e| {
        let s = Letter::special(e);
        if w.is_empty() {
            return p.arrow(e).source != w.vertex;
        }
        let mut front = vec![s];
        front.extend_from_slice(&w.letters);
        let mut back = w.letters.clone();
        back.push(s);
        !valid_unchecked(p, &front) && !valid_unchecked(p, &back)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `+` iff `left < right` in the word order; running out of letters sits
/// between special and direct letters.
fn compare_sides(left: impl Iterator<Item = Letter>, right: impl Iterator<Item = Letter>) -> Sign {
    let key = |l: Option<Letter>| match l {
        Some(l) => (l.rank(), l.arrow),
        None => (2, 0),
    };
    let mut left = left.fuse();
    let mut right = right.fuse();
    loop {
        let (a, b) = (left.next(), right.next());
        if a.is_none() && b.is_none() {
            return Sign::Plus;
        }
        match key(a).cmp(&key(b)) {
            Ordering::Less => return Sign::Plus,
            Ordering::Greater => return Sign::Minus,
            Ordering::Equal => {}
        }
    }
}

fn fixed_sign(l: Letter) -> Option<Sign> {
    match l.kind {
        LetterKind::Direct => Some(Sign::Plus),
        LetterKind::Inverse => Some(Sign::Minus),
        LetterKind::Special => None,
    }
}

/// Direction of `w_i` (0-based) in a linear word.
fn linear_direction(w: &[Letter], i: usize) -> Sign {
    fixed_sign(w[i]).unwrap_or_else(|| {
        compare_sides(
            w[..i].iter().rev().map(|l| l.inverse()),
            w[i + 1..].iter().copied(),
        )
    })
}

/// Direction of `w_i` (0-based) in a cyclic word, looking one period each
/// way.
fn cyclic_direction(w: &[Letter], i: usize) -> Sign {
    let n = w.len();
    fixed_sign(w[i]).unwrap_or_else(|| {
        compare_sides(
            (1..=n).map(|k| w[(i + n * 2 - k) % n].inverse()),
            (1..=n).map(|k| w[(i + k) % n]),
        )
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StringSymmetry {
    Asymmetric,
    /// `w = z f* z⁻`.
    Symmetric { z: Vec<Letter>, f: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringWord {
    /// The word as given; modules are built from it.
    pub word: Word,
    /// `min(w, w⁻)`.
    pub canonical: Word,
    pub symmetry: StringSymmetry,
}

impl StringWord {
    pub fn is_symmetric(&self) -> bool {
        matches!(self.symmetry, StringSymmetry::Symmetric { .. })
    }

    /// One sign per letter of the presented word.
    pub fn direction(&self) -> Vec<Sign> {
        let w = self.word.letters();
        (0..w.len()).map(|i| linear_direction(w, i)).collect()
    }
}

pub fn classify_string(p: &AlgebraPresentation, w: &Word) -> Result<StringWord> {
    if !is_coadmissible(p, w) {
        return Err(Error::NotCoadmissible(w.format(p)));
    }
    let inv = w.inverse(p);
    let canonical = if inv.letters < w.letters { inv.clone() } else { w.clone() };
    let symmetry = if !w.is_empty() && inv.letters == w.letters {
        let n = w.len() / 2;
        // an odd length is forced: the middle letter equals its own inverse
        StringSymmetry::Symmetric {
            z: w.letters[..n].to_vec(),
            f: w.letters[n].arrow,
        }
    } else {
        StringSymmetry::Asymmetric
    };
    Ok(StringWord {
        word: w.clone(),
        canonical,
        symmetry,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BandSymmetry {
    Asymmetric,
    /// `normal = f* z⁻ g* z`, a rotation of the presented word.
    Symmetric {
        f: usize,
        g: usize,
        z: Vec<Letter>,
        normal: Word,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandWord {
    pub word: Word,
    /// Least rotation of `w` or `w⁻`.
    pub canonical: Word,
    pub symmetry: BandSymmetry,
}

impl BandWord {
    pub fn is_symmetric(&self) -> bool {
        matches!(self.symmetry, BandSymmetry::Symmetric { .. })
    }

    /// Asymmetric bands: one sign per letter of the presented word, read
    /// cyclically. Symmetric bands: one sign per letter of `z`.
    pub fn direction(&self) -> Vec<Sign> {
        match &self.symmetry {
            BandSymmetry::Asymmetric => {
                let w = self.word.letters();
                (0..w.len()).map(|i| cyclic_direction(w, i)).collect()
            }
            BandSymmetry::Symmetric { z, normal, .. } => {
                let r = normal.letters();
                let n = z.len();
                (1..=n).map(|j| cyclic_direction(r, n + 1 + j)).collect()
            }
        }
    }

    /// Signs of every letter of the presented (asymmetric) or normal
    /// (symmetric) word, read cyclically.
    pub fn cyclic_signs(&self) -> Vec<Sign> {
        let w = match &self.symmetry {
            BandSymmetry::Asymmetric => self.word.letters(),
            BandSymmetry::Symmetric { normal, .. } => normal.letters(),
        };
        (0..w.len()).map(|i| cyclic_direction(w, i)).collect()
    }
}

fn is_proper_power(w: &[Letter]) -> bool {
    let n = w.len();
    (1..n).any(|d| n.is_multiple_of(d) && (d..n).all(|i| w[i] == w[i - d]))
}

fn power(w: &[Letter], k: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(w.len() * k);
    for _ in 0..k {
        out.extend_from_slice(w);
    }
    out
}

fn band_valid(p: &AlgebraPresentation, w: &[Letter]) -> bool {
    // enough copies that every window of relation length wraps the seam
    let k = 2 + p.max_relation_len().div_ceil(w.len().max(1));
    valid_unchecked(p, &power(w, k))
}

fn rotations(w: &[Letter]) -> impl Iterator<Item = Vec<Letter>> + '_ {
    (0..w.len()).map(move |k| {
        let mut r = w.to_vec();
        r.rotate_left(k);
        r
    })
}

pub fn classify_band(p: &AlgebraPresentation, w: &Word) -> Result<BandWord> {
    if w.is_empty() {
        return Err(Error::NotBand("the empty word".into()));
    }
    let letters = w.letters();
    if !band_valid(p, letters) {
        return Err(Error::NotBand(w.format(p)));
    }
    if is_proper_power(letters) {
        return Err(Error::NotPrimitive(w.format(p)));
    }
    let inv = inverse_letters(letters);
    let least = rotations(letters)
        .chain(rotations(&inv))
        .min()
        .expect("nonempty");
    let canonical = Word {
        vertex: least[0].target(p),
        letters: least,
    };
    let symmetric = rotations(letters).any(|r| r == inv);
    let symmetry = if symmetric {
        let normal = rotations(letters)
            .find(|r| {
                let m = r.len();
                m % 2 == 0
                    && r[0].kind == LetterKind::Special
                    && r[m / 2].kind == LetterKind::Special
                    && inverse_letters(&r[1..m / 2]) == r[m / 2 + 1..]
            })
            .expect("symmetric bands have the form f* z⁻ g* z");
        let m = normal.len();
        BandSymmetry::Symmetric {
            f: normal[0].arrow,
            g: normal[m / 2].arrow,
            z: normal[m / 2 + 1..].to_vec(),
            normal: Word {
                vertex: normal[0].target(p),
                letters: normal,
            },
        }
    } else {
        BandSymmetry::Asymmetric
    };
    Ok(BandWord {
        word: w.clone(),
        canonical,
        symmetry,
    })
}

/// All valid words of length `1..=max_len`, depth first.
fn valid_words(p: &AlgebraPresentation, max_len: usize) -> Vec<Vec<Letter>> {
    let mut all_letters = Vec::new();
    for (i, a) in p.arrows().iter().enumerate() {
        if a.special {
            all_letters.push(Letter::special(i));
        } else {
            all_letters.push(Letter::direct(i));
            all_letters.push(Letter::inverse_of(i));
        }
    }
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    let mut stack: Vec<Vec<Letter>> = all_letters.iter().map(|&l| vec![l]).collect();
    stack.reverse();
    while let Some(w) = stack.pop() {
        if w.len() < max_len {
            let last = *w.last().unwrap();
            for &l in all_letters.iter().rev() {
                if last.source(p) != l.target(p) || last.inverse() == l {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                if !has_relation(p, &v, v.len() - 1) {
                    stack.push(v);
                }
            }
        }
        out.push(w);
    }
    out
}

/// Canonical strings of length at most `max_len`, including the trivial
/// strings at vertices without special loops.
pub fn enumerate_strings(p: &AlgebraPresentation, max_len: usize) -> Vec<StringWord> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in 0..p.vertices().len() {
        let w = Word { letters: Vec::new(), vertex: v };
        if let Ok(s) = classify_string(p, &w) {
            seen.insert(w);
            out.push(s);
        }
    }
    for letters in valid_words(p, max_len) {
        let w = Word {
            vertex: letters[0].target(p),
            letters,
        };
        if !is_coadmissible(p, &w) {
            continue;
        }
        let s = classify_string(p, &w).expect("coadmissible");
        if seen.insert(s.canonical.clone()) {
            out.push(classify_string(p, &s.canonical).expect("coadmissible"));
        }
    }
    out.sort_by(|a, b| {
        (a.canonical.len(), &a.canonical).cmp(&(b.canonical.len(), &b.canonical))
    });
    out
}

/// Canonical bands of length at most `max_len`.
pub fn enumerate_bands(p: &AlgebraPresentation, max_len: usize) -> Vec<BandWord> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for letters in valid_words(p, max_len) {
        let w = Word {
            vertex: letters[0].target(p),
            letters,
        };
        if let Ok(b) = classify_band(p, &w) {
            if seen.insert(b.canonical.clone()) {
                out.push(classify_band(p, &b.canonical).expect("rotation of a band"));
            }
        }
    }
    out.sort_by(|a, b| {
        (a.canonical.len(), &a.canonical).cmp(&(b.canonical.len(), &b.canonical))
    });
    out
}
