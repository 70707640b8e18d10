//! Codes over `[0, q)` and their text format: one word per line, symbols as
//! decimal integers separated by single spaces, `#` lines are comments.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    q: usize,
    k: usize,
    words: Vec<Vec<usize>>,
}

pub fn hamming_distance(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

impl Code {
    pub fn new(q: usize, k: usize, words: Vec<Vec<usize>>) -> Result<Self> {
        if q < 2 {
            return invalid("alphabet size must be >= 2");
        }
        let mut seen = HashSet::with_capacity(words.len());
        for w in &words {
            if w.len() != k {
                return invalid(format!("word of length {} in a length-{k} code", w.len()));
            }
            if let Some(&s) = w.iter().find(|&&s| s >= q) {
                return invalid(format!("symbol {s} outside alphabet 0..{q}"));
            }
            if !seen.insert(w.as_slice()) {
                return invalid(format!("duplicate word {w:?}"));
            }
        }
        Ok(Self { q, k, words })
    }

    pub fn alphabet(&self) -> usize {
        self.q
    }

    pub fn length(&self) -> usize {
        self.k
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn into_words(self) -> Vec<Vec<usize>> {
        self.words
    }

    /// Distances between all unordered pairs of distinct words.
    pub fn pair_distances(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(move |(i, a)| self.words[i + 1..].iter().map(move |b| hamming_distance(a, b)))
    }

    /// Histogram of distances over ordered pairs, indexed `0..=k`.
    pub fn distance_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.k + 1];
        counts[0] = self.words.len() as u64;
        for d in self.pair_distances() {
            counts[d] += 2;
        }
        counts
    }

    pub fn all_distances_divisible(&self, p: usize) -> bool {
        self.pair_distances().all(|d| d % p == 0)
    }

    /// Mixed-radix indices of the words as vertices of the k-th power of `K_q`.
    pub fn vertex_indices(&self) -> Vec<usize> {
        self.words.iter().map(|w| crate::graph::tuple_to_index(self.q, w)).collect()
    }

    pub fn to_text(&self, comment: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(c) = comment {
            for line in c.lines() {
                let _ = writeln!(out, "# {line}");
            }
        }
        for w in &self.words {
            let line: Vec<String> = w.iter().map(|s| s.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parse the text format. When `q` is `None` the alphabet is
    /// `max(2, largest symbol + 1)`.
    pub fn parse(text: &str, q: Option<usize>) -> Result<Self> {
        let mut words = Vec::new();
        let mut width = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim_start().starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let word = line
                .split(' ')
                .map(|f| f.parse::<usize>().map_err(|e| err(format!("bad symbol {f:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            match width {
                None => width = Some(word.len()),
                Some(w) if w != word.len() => {
                    return Err(err(format!("word width {} differs from {w}", word.len())));
                }
                _ => {}
            }
            words.push(word);
        }
        let k = width.ok_or(Error::Parse { line: 0, msg: "no words".into() })?;
        let q = q.unwrap_or_else(|| words.iter().flatten().max().map_or(2, |&m| (m + 1).max(2)));
        Self::new(q, k, words)
    }
}
