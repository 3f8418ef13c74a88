//! Word co-occurrence matrices of conditional probabilities.
//!
//! Entry `(j, i)` estimates `p(target i | context j)`: the number of
//! occurrences of context word `j` that have target `i` somewhere within
//! `window` positions on either side, divided by the number of occurrences
//! of `j`. The corpus is one whitespace-separated token stream; line breaks
//! are not sentence boundaries.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;

pub const DEFAULT_WINDOW: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoocSpec {
    /// Maximum number of context words (rows).
    pub contexts: usize,
    /// Maximum number of target words (columns).
    pub targets: usize,
    /// Radius of the symmetric window.
    pub window: usize,
}

impl CoocSpec {
    pub fn new(contexts: usize, targets: usize, window: usize) -> Result<Self> {
        if contexts == 0 || targets == 0 {
            return Err(Error::param("context and target vocabularies must be nonempty"));
        }
        if window == 0 {
            return Err(Error::param("window radius must be at least 1"));
        }
        Ok(CoocSpec { contexts, targets, window })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cooc {
    pub matrix: SparseMatrix,
    pub contexts: Vec<String>,
    pub targets: Vec<String>,
}

/// The `size` most frequent tokens, ties broken lexicographically.
pub fn vocabulary<S: AsRef<str>>(tokens: &[S], size: usize) -> Vec<String> {
    let mut freq: HashMap<&str, usize> = HashMap::new();
    for t in tokens {
        *freq.entry(t.as_ref()).or_default() += 1;
    }
    let mut words: Vec<(&str, usize)> = freq.into_iter().collect();
    words.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    words.into_iter().take(size).map(|(w, _)| w.to_string()).collect()
}

pub fn build<S: AsRef<str>>(tokens: &[S], spec: &CoocSpec) -> Result<Cooc> {
    if tokens.is_empty() {
        return Err(Error::InvalidMatrix("corpus has no tokens".into()));
    }
    let contexts = vocabulary(tokens, spec.contexts);
    let targets = vocabulary(tokens, spec.targets);
    let index = |words: &[String]| -> HashMap<String, usize> {
        words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()
    };
    let (cidx, tidx) = (index(&contexts), index(&targets));
    let ctx: Vec<Option<usize>> = tokens.iter().map(|t| cidx.get(t.as_ref()).copied()).collect();
    let tgt: Vec<Option<usize>> = tokens.iter().map(|t| tidx.get(t.as_ref()).copied()).collect();

    let mut occurrences = vec![0usize; contexts.len()];
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    let mut seen = Vec::with_capacity(2 * spec.window);
    for (p, c) in ctx.iter().enumerate() {
        let Some(j) = *c else { continue };
        occurrences[j] += 1;
        seen.clear();
        let lo = p.saturating_sub(spec.window);
        let hi = (p + spec.window).min(tokens.len() - 1);
        seen.extend((lo..=hi).filter(|&q| q != p).filter_map(|q| tgt[q]));
        seen.sort_unstable();
        seen.dedup();
        for &i in &seen {
            *counts.entry((j, i)).or_default() += 1;
        }
    }
    let triplets = counts
        .into_iter()
        .map(|((j, i), c)| (j, i, c as f64 / occurrences[j] as f64))
        .collect();
    let matrix = SparseMatrix::from_triplets(contexts.len(), targets.len(), triplets)?;
    Ok(Cooc { matrix, contexts, targets })
}

pub fn tokenize(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

pub fn build_from_path(path: impl AsRef<Path>, spec: &CoocSpec) -> Result<Cooc> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let tokens = tokenize(&text);
    if tokens.is_empty() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            msg: "corpus has no tokens".into(),
        });
    }
    build(&tokens, spec)
}
