//! Words over the generators of `W_Γ`: reduction, shortlex normal forms,
//! equality, and complete words whose powers are all geodesic.

use std::fmt;

use crate::error::WordError;
use crate::graph::{SimplicialGraph, VertexSet};

/// A sequence of generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parse whitespace-separated labels. When every label of `g` is a single
    /// character, tokens such as `aba` are also split into letters.
    pub fn parse(g: &SimplicialGraph, text: &str) -> Result<Word, WordError> {
        let single_char = g.names().iter().all(|n| n.chars().count() == 1);
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if let Some(v) = g.index_of(token) {
                letters.push(v);
            } else if single_char {
                for c in token.chars() {
                    let label = c.to_string();
                    letters.push(g.index_of(&label).ok_or(WordError::UnknownLabel(label))?);
                }
            } else {
                return Err(WordError::UnknownLabel(token.to_string()));
            }
        }
        Ok(Word(letters))
    }

    pub fn check(&self, g: &SimplicialGraph) -> Result<(), WordError> {
        match self.0.iter().find(|&&s| s >= g.len()) {
            Some(&s) => Err(WordError::LetterOutOfRange(s)),
            None => Ok(()),
        }
    }

    pub fn display(&self, g: &SimplicialGraph) -> String {
        self.0.iter().map(|&s| g.name(s)).collect::<Vec<_>>().join(" ")
    }

    /// The inverse element: every generator is an involution.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn power(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Letters used, as a vertex set.
    pub fn support(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }
}

impl From<NormalForm> for Word {
    fn from(nf: NormalForm) -> Word {
        Word(nf.0)
    }
}

/// Append `s` to a reduced word, cancelling it against the last occurrence of
/// `s` that every later letter commutes with.
fn push_reduced(g: &SimplicialGraph, out: &mut Vec<usize>, s: usize) {
    for i in (0..out.len()).rev() {
        let t = out[i];
        if t == s {
            out.remove(i);
            return;
        }
        if !g.adjacent(s, t) {
            break;
        }
    }
    out.push(s);
}

/// A reduced expression for `w`, obtained by deleting pairs `s … s` whose
/// intervening letters all commute with `s`.
pub fn reduce(g: &SimplicialGraph, w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for &s in w.letters() {
        push_reduced(g, &mut out, s);
    }
    Word(out)
}

pub fn is_reduced(g: &SimplicialGraph, w: &Word) -> bool {
    reduce(g, w).len() == w.len()
}

/// The shortlex-least reduced expression of a group element. Generator order
/// is vertex input order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(Vec<usize>);

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Word length, which is also the distance to the identity in the Cayley
    /// graph.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn display(&self, g: &SimplicialGraph) -> String {
        self.as_word().display(g)
    }
}

/// Lexicographically least linearization of a reduced word's commutation
/// class: repeatedly pull forward the smallest letter that commutes with
/// everything before it.
fn lex_least(g: &SimplicialGraph, mut rest: Vec<usize>) -> Vec<usize> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // letters commuting with everything scanned so far
        let mut movable = g.vertices();
        let mut best: Option<usize> = None;
        for (j, &s) in rest.iter().enumerate() {
            if movable.contains(s) && best.is_none_or(|b| s < rest[b]) {
                best = Some(j);
            }
            movable = movable.intersection(g.neighbors(s));
            if movable.is_empty() {
                break;
            }
        }
        let j = best.expect("the first letter is always movable");
        out.push(rest.remove(j));
    }
    out
}

pub fn normal_form(g: &SimplicialGraph, w: &Word) -> NormalForm {
    NormalForm(lex_least(g, reduce(g, w).0))
}

/// Normal form of `nf · s`.
pub fn multiply_generator(g: &SimplicialGraph, nf: &NormalForm, s: usize) -> NormalForm {
    let mut letters = nf.0.clone();
    push_reduced(g, &mut letters, s);
    NormalForm(lex_least(g, letters))
}

pub fn words_equal(g: &SimplicialGraph, a: &Word, b: &Word) -> bool {
    normal_form(g, a) == normal_form(g, b)
}

/// A word using every vertex whose cyclically consecutive letters are
/// distinct and non-adjacent in `g`.
///
/// Built from a depth-first tour of a spanning tree of the complement graph,
/// cut at the first point where every vertex has appeared and the last
/// letter closes up with the first. Length is at most `2(|V| − 1)`.
pub fn gamma_complete_word(g: &SimplicialGraph) -> Result<Word, WordError> {
    let n = g.len();
    if n < 2 {
        return Err(WordError::TooFewVertices);
    }
    let all = g.vertices();
    if g.complement_components(all).len() > 1 {
        return Err(WordError::Join);
    }
    let mut tour = Vec::with_capacity(2 * n);
    let mut visited = VertexSet::singleton(0);
    let mut stack = vec![0usize];
    tour.push(0);
    while let Some(&v) = stack.last() {
        let next = g
            .complement_neighbors_within(v, all)
            .difference(visited)
            .first();
        match next {
            Some(u) => {
                visited.insert(u);
                stack.push(u);
                tour.push(u);
            }
            None => {
                stack.pop();
                if let Some(&parent) = stack.last() {
                    tour.push(parent);
                }
            }
        }
    }
    tour.pop();
    let first = tour[0];
    let mut seen = VertexSet::EMPTY;
    for (i, &s) in tour.iter().enumerate() {
        seen.insert(s);
        if seen == all && s != first && !g.adjacent(s, first) {
            tour.truncate(i + 1);
            break;
        }
    }
    Ok(Word(tour))
}

/// Checks the defining conditions of a complete word, returning the cyclic
/// pairs as a certificate.
pub fn complete_word_certificate(
    g: &SimplicialGraph,
    w: &Word,
) -> Option<Vec<(usize, usize)>> {
    if w.is_empty() || w.support() != g.vertices() {
        return None;
    }
    let letters = w.letters();
    let pairs: Vec<(usize, usize)> = (0..letters.len())
        .map(|i| (letters[i], letters[(i + 1) % letters.len()]))
        .collect();
    pairs
        .iter()
        .all(|&(s, t)| s != t && !g.adjacent(s, t))
        .then_some(pairs)
}

/// Whether `w^n` is reduced, i.e. `|reduce(w^n)| = n·|w|`.
pub fn check_power_reduced(g: &SimplicialGraph, w: &Word, n: u64) -> Result<bool, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    w.check(g)?;
    let p = w.power(n as usize);
    Ok(reduce(g, &p).len() == p.len())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}
