//! Double occurrence words, their moves, and the word/graph correspondence.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{half_edge, EulerSystem, FourRegularGraph, Pairing, Transversal};
use crate::simple_graph::SimpleGraph;

/// Words in which every letter occurs twice, no letter shared between words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DowFamily {
    words: Vec<Vec<String>>,
}

impl DowFamily {
    pub fn new(words: Vec<Vec<String>>) -> Result<Self> {
        let mut seen: HashMap<&str, (usize, usize)> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::input(format!("word {i} is empty")));
            }
            for l in w {
                let e = seen.entry(l.as_str()).or_insert((i, 0));
                if e.0 != i {
                    return Err(Error::input(format!("letter {l:?} occurs in two words")));
                }
                e.1 += 1;
            }
        }
        if let Some((l, _)) = seen.iter().find(|(_, &(_, k))| k != 2) {
            return Err(Error::input(format!("letter {l:?} must occur exactly twice")));
        }
        Ok(Self { words })
    }

    pub fn words(&self) -> &[Vec<String>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Letters in order of first occurrence, word by word.
    pub fn letters(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for w in &self.words {
            for l in w {
                if !out.contains(l) {
                    out.push(l.clone());
                }
            }
        }
        out
    }

    /// Every word in canonical form, words sorted.
    pub fn canonical(&self) -> Self {
        let mut words: Vec<Vec<String>> = self.words.iter().map(|w| canonical_word(w)).collect();
        words.sort_by_cached_key(|w| (pattern(w), w.clone()));
        Self { words }
    }

    /// Canonical form of the equivalence class: split every word into pieces
    /// with connected interlacement, then canonicalise.
    pub fn normal_form(&self) -> Self {
        let mut pending = self.words.clone();
        let mut done = Vec::new();
        while let Some(w) = pending.pop() {
            match split_concatenation(&w) {
                Some((a, b)) => {
                    pending.push(a);
                    pending.push(b);
                }
                None => done.push(w),
            }
        }
        Self { words: done }.canonical()
    }

    pub fn is_equivalent(&self, other: &Self) -> bool {
        self.normal_form() == other.normal_form()
    }
}

impl fmt::Display for DowFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.words.iter().map(|w| w.join(" ")).collect();
        f.write_str(&parts.join(" ; "))
    }
}

impl std::str::FromStr for DowFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_dow(s)
    }
}

/// Words separated by `;`, letters by whitespace.
pub fn parse_dow(text: &str) -> Result<DowFamily> {
    let text = text.trim();
    if text.is_empty() {
        return DowFamily::new(Vec::new());
    }
    let words = text
        .split(';')
        .map(|w| w.split_whitespace().map(str::to_string).collect())
        .collect();
    DowFamily::new(words)
}

/// First-occurrence pattern: `abab` and `xyxy` both give `[0,1,0,1]`.
fn pattern(w: &[String]) -> Vec<usize> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    w.iter()
        .map(|l| {
            let k = ids.len();
            *ids.entry(l.as_str()).or_insert(k)
        })
        .collect()
}

/// Least rotation or reversal of `w`, comparing first-occurrence patterns
/// and breaking ties by the letters themselves.
pub fn canonical_word(w: &[String]) -> Vec<String> {
    let n = w.len();
    let rev: Vec<String> = w.iter().rev().cloned().collect();
    let mut best: Option<(Vec<usize>, Vec<String>)> = None;
    for base in [w, &rev[..]] {
        for r in 0..n {
            let cand: Vec<String> = base[r..].iter().chain(&base[..r]).cloned().collect();
            let key = (pattern(&cand), cand);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.map(|b| b.1).unwrap_or_default()
}

/// Union of the interlacement graphs of the words, on [`DowFamily::letters`].
pub fn interlacement_of(f: &DowFamily) -> SimpleGraph {
    let letters = f.letters();
    let index: HashMap<&str, usize> = letters.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut h = SimpleGraph::edgeless(letters.clone());
    for w in &f.words {
        let word: Vec<usize> = w.iter().map(|l| index[l.as_str()]).collect();
        crate::graph::add_interlacements(&mut h, &word);
    }
    h
}

/// An equivalence move on one or two words of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// `x1..x2n -> x(s+1)..x2n x1..xs`
    CyclicPermute { word: usize, shift: usize },
    Reverse { word: usize },
    /// Replaces `first` by `first ++ second` and drops `second`.
    Concatenate { first: usize, second: usize },
    /// Cuts a word after `position` letters into two words.
    Split { word: usize, position: usize },
}

pub fn apply_equivalence(f: &DowFamily, mv: &Equivalence) -> Result<DowFamily> {
    let mut words = f.words.clone();
    let count = words.len();
    let check = |i: usize| {
        if i < count {
            Ok(())
        } else {
            Err(Error::input(format!("no word {i}")))
        }
    };
    match *mv {
        Equivalence::CyclicPermute { word, shift } => {
            check(word)?;
            let len = words[word].len();
            words[word].rotate_left(shift % len);
        }
        Equivalence::Reverse { word } => {
            check(word)?;
            words[word].reverse();
        }
        Equivalence::Concatenate { first, second } => {
            check(first)?;
            check(second)?;
            if first == second {
                return Err(Error::input("cannot concatenate a word with itself"));
            }
            let tail = words[second].clone();
            words[first].extend(tail);
            words.remove(second);
        }
        Equivalence::Split { word, position } => {
            check(word)?;
            let w = &words[word];
            if position == 0 || position >= w.len() {
                return Err(Error::input("split point must leave two nonempty words"));
            }
            let (a, b) = w.split_at(position);
            if a.iter().any(|l| b.contains(l)) {
                return Err(Error::input("split point separates the two occurrences of a letter"));
            }
            let (a, b) = (a.to_vec(), b.to_vec());
            words[word] = a;
            words.insert(word + 1, b);
        }
    }
    DowFamily::new(words)
}

/// Which blocks of `W1' W1'' W2' W2''` a turnaround reverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TurnaroundVariant {
    /// Reverses `W1''` and `W2''`.
    Second,
    /// Reverses `W1'` and `W2'`.
    First,
    /// Reverses all four blocks.
    All,
}

/// Applies a turnaround to `word`, split as `W1' W1'' W2' W2''` at `cuts`
/// (block boundaries, nondecreasing). Blocks 0 and 2 must use only letters of
/// `v_prime`; blocks 1 and 3 only the other letters.
pub fn turnaround(
    f: &DowFamily,
    word: usize,
    v_prime: &[String],
    cuts: [usize; 3],
    variant: TurnaroundVariant,
) -> Result<DowFamily> {
    let w = f
        .words
        .get(word)
        .ok_or_else(|| Error::input(format!("no word {word}")))?;
    let bounds = [0, cuts[0], cuts[1], cuts[2], w.len()];
    if bounds.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::input("block boundaries must be nondecreasing and within the word"));
    }
    for b in 0..4 {
        let primed = b % 2 == 0;
        if w[bounds[b]..bounds[b + 1]].iter().any(|l| v_prime.contains(l) != primed) {
            return Err(Error::input(format!("block {b} mixes the two letter classes")));
        }
    }
    let reverse = |b: usize| match variant {
        TurnaroundVariant::Second => b % 2 == 1,
        TurnaroundVariant::First => b.is_multiple_of(2),
        TurnaroundVariant::All => true,
    };
    let mut out = Vec::with_capacity(w.len());
    for b in 0..4 {
        let block = &w[bounds[b]..bounds[b + 1]];
        if reverse(b) {
            out.extend(block.iter().rev().cloned());
        } else {
            out.extend(block.iter().cloned());
        }
    }
    let mut words = f.words.clone();
    words[word] = out;
    DowFamily::new(words)
}

/// Block boundaries exhibiting `w` as `W1' W1'' W2' W2''` for the class
/// `v_prime`, if the word has that shape without rotation.
pub fn turnaround_blocks(w: &[String], v_prime: &[String]) -> Option<[usize; 3]> {
    let mut cuts = Vec::new();
    let mut expect = true;
    for (i, l) in w.iter().enumerate() {
        let primed = v_prime.contains(l);
        if primed != expect {
            cuts.push(i);
            expect = !expect;
            if cuts.len() > 3 {
                return None;
            }
        }
    }
    while cuts.len() < 3 {
        cuts.push(w.len());
    }
    Some([cuts[0], cuts[1], cuts[2]])
}

/// Splits a word with disconnected interlacement into two words whose
/// concatenation is a rotation of it; `None` when the interlacement is connected.
pub fn split_concatenation(w: &[String]) -> Option<(Vec<String>, Vec<String>)> {
    let f = DowFamily { words: vec![w.to_vec()] };
    let h = interlacement_of(&f);
    let comps = h.components();
    if comps.len() <= 1 {
        return None;
    }
    let letters = f.letters();
    let comp_of: HashMap<&str, usize> = comps
        .iter()
        .enumerate()
        .flat_map(|(c, vs)| vs.iter().map(move |&v| (v, c)))
        .map(|(v, c)| (letters[v].as_str(), c))
        .collect();
    let n = w.len();
    let shift = (0..n)
        .find(|&s| comp_of[w[s].as_str()] != comp_of[w[(s + n - 1) % n].as_str()])
        .expect("a disconnected word has a component boundary");
    let mut rotated = w.to_vec();
    rotated.rotate_left(shift);
    let c0 = comp_of[rotated[0].as_str()];
    let last = (0..n).rev().find(|&i| comp_of[rotated[i].as_str()] == c0).unwrap();
    let tail = rotated.split_off(last + 1);
    Some((rotated, tail))
}

/// `F(W)` with its Euler system `C(W)`.
///
/// Vertices follow [`DowFamily::letters`]. At each letter the first visit
/// enters through slot 0 and leaves through slot 1, the second enters
/// through slot 3 and leaves through slot 2, so `C(W)` uses `t0` everywhere.
pub fn graph_from_family(f: &DowFamily) -> (FourRegularGraph, EulerSystem) {
    let letters = f.letters();
    let index: HashMap<&str, usize> = letters.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut edges = Vec::new();
    for w in &f.words {
        let mut visited: HashMap<usize, ()> = HashMap::new();
        let slots: Vec<(usize, u8, u8)> = w
            .iter()
            .map(|l| {
                let v = index[l.as_str()];
                if visited.insert(v, ()).is_none() {
                    (v, 0, 1)
                } else {
                    (v, 3, 2)
                }
            })
            .collect();
        for i in 0..w.len() {
            let (v, _, out) = slots[i];
            let (u, inn, _) = slots[(i + 1) % w.len()];
            edges.push([half_edge(v, out), half_edge(u, inn)]);
        }
    }
    let g = FourRegularGraph::from_half_edges(letters, edges);
    let c = EulerSystem::from_transversal(&g, &Transversal::uniform(g.vertex_count(), Pairing::P0))
        .expect("each word traces one circuit");
    (g, c)
}

/// `W(C)`: one canonical word per circuit, family canonicalised.
pub fn family_from_euler_system(g: &FourRegularGraph, c: &EulerSystem) -> DowFamily {
    let words = c
        .circuits()
        .iter()
        .map(|circ| circ.vertex_word().into_iter().map(|v| g.name(v).to_string()).collect())
        .collect();
    DowFamily { words }.canonical()
}
