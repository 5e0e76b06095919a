//! Character vocabulary and word validation.
//!
//! A [`CharVocabulary`] is a bijection between glyphs (arbitrary unicode
//! strings, e.g. Bengali characters) and single Latin key letters used as
//! class labels everywhere downstream. Class ids are assigned in entry
//! order, `0..N-1`, and `N` is reserved for the CTC blank.
//!
//! Vocabularies load from a plain-text mapping file (`glyph<TAB>key` per
//! line, UTF-8, `#` comments); word collections load from a word-list file
//! with one key string per line. Both have bundled defaults at the
//! five-character scale.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};
use thiserror::Error;

/// Bundled five-entry vocabulary file.
const BUNDLED_VOCAB: &str = include_str!("../assets/vocab_bn5.tsv");
/// Bundled 30-word collection list (5 + 16 + 9 by length).
const BUNDLED_WORDS: &str = include_str!("../assets/words_30.txt");

#[derive(Debug, Error, PartialEq)]
pub enum VocabError {
    #[error("word is empty")]
    EmptyWord,
    #[error("unknown character {grapheme:?} at position {position}")]
    UnknownCharacter { position: usize, grapheme: String },
    #[error("duplicate glyph {0:?} in vocabulary")]
    DuplicateGlyph(String),
    #[error("duplicate key {0:?} in vocabulary")]
    DuplicateKey(char),
    #[error("vocabulary must have at least one entry")]
    Empty,
    #[error("line {line}: expected `glyph<TAB>key`, got {content:?}")]
    BadLine { line: usize, content: String },
    #[error("key {0:?} is not a single ASCII letter")]
    BadKey(String),
    #[error("io: {0}")]
    Io(String),
}

/// One vocabulary entry: a glyph, its Latin key letter, and its class id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VocabEntry {
    pub glyph: String,
    pub key: char,
    pub class_id: usize,
}

/// Ordered glyph↔key mapping with class ids `0..N-1` and blank id `N`.
#[derive(Debug, Clone)]
pub struct CharVocabulary {
    entries: Vec<VocabEntry>,
    by_glyph: HashMap<String, usize>,
    by_key: HashMap<char, usize>,
}

impl CharVocabulary {
    /// Build from `(glyph, key)` pairs; class ids follow input order.
    pub fn new(pairs: Vec<(String, char)>) -> Result<Self, VocabError> {
        if pairs.is_empty() {
            return Err(VocabError::Empty);
        }
        let mut entries = Vec::with_capacity(pairs.len());
        let mut by_glyph = HashMap::new();
        let mut by_key = HashMap::new();
        for (class_id, (glyph, key)) in pairs.into_iter().enumerate() {
            if !key.is_ascii_alphabetic() {
                return Err(VocabError::BadKey(key.to_string()));
            }
            if by_glyph.insert(glyph.clone(), class_id).is_some() {
                return Err(VocabError::DuplicateGlyph(glyph));
            }
            if by_key.insert(key, class_id).is_some() {
                return Err(VocabError::DuplicateKey(key));
            }
            entries.push(VocabEntry { glyph, key, class_id });
        }
        Ok(Self { entries, by_glyph, by_key })
    }

    /// Parse the `glyph<TAB>key` mapping format.
    pub fn from_mapping_str(text: &str) -> Result<Self, VocabError> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (glyph, key) = line.split_once('\t').ok_or_else(|| VocabError::BadLine {
                line: i + 1,
                content: raw.to_string(),
            })?;
            let glyph = glyph.trim();
            let key = key.trim();
            let mut chars = key.chars();
            let (Some(k), None) = (chars.next(), chars.next()) else {
                return Err(VocabError::BadKey(key.to_string()));
            };
            if glyph.is_empty() {
                return Err(VocabError::BadLine { line: i + 1, content: raw.to_string() });
            }
            pairs.push((glyph.to_string(), k));
        }
        Self::new(pairs)
    }

    /// Load a mapping file from disk.
    pub fn load(path: &Path) -> Result<Self, VocabError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| VocabError::Io(format!("{}: {e}", path.display())))?;
        Self::from_mapping_str(&text)
    }

    /// The bundled five-character vocabulary.
    pub fn bundled() -> Self {
        Self::from_mapping_str(BUNDLED_VOCAB).expect("bundled vocabulary is valid")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reserved CTC blank class, one past the last real class.
    pub fn blank_id(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[VocabEntry] {
        &self.entries
    }

    pub fn entry(&self, class_id: usize) -> Option<&VocabEntry> {
        self.entries.get(class_id)
    }

    pub fn class_of_key(&self, key: char) -> Option<usize> {
        self.by_key.get(&key).copied()
    }

    pub fn class_of_glyph(&self, glyph: &str) -> Option<usize> {
        self.by_glyph.get(glyph).copied()
    }

    /// Key letter for a class id.
    pub fn key_of(&self, class_id: usize) -> Option<char> {
        self.entries.get(class_id).map(|e| e.key)
    }

    /// Stable content hash, embedded in checkpoints to detect mismatches.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        for e in &self.entries {
            hasher.update(e.glyph.as_bytes());
            hasher.update([0u8]);
            hasher.update([e.key as u8]);
        }
        let mut out = String::new();
        for b in hasher.finalize().iter().take(8) {
            let _ = write!(out, "{b:02x}");
        }
        out
    }
}

/// A validated word: parallel key letters and class ids, length ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordSpec {
    keys: Vec<char>,
    class_ids: Vec<usize>,
}

impl WordSpec {
    pub fn keys(&self) -> &[char] {
        &self.keys
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_ids
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// The word rendered as its key-letter string.
    pub fn key_string(&self) -> String {
        self.keys.iter().collect()
    }
}

/// Map input text onto a [`WordSpec`].
///
/// Both input alphabets are accepted: at each position the longest glyph
/// match wins, otherwise the character is interpreted as a key letter.
/// Positions in errors count graphemes consumed so far, starting at 0.
pub fn map_word(text: &str, vocab: &CharVocabulary) -> Result<WordSpec, VocabError> {
    if text.is_empty() {
        return Err(VocabError::EmptyWord);
    }
    // Longest-first so multi-codepoint glyphs are matched before any prefix.
    let mut glyphs: Vec<&VocabEntry> = vocab.entries().iter().collect();
    glyphs.sort_by_key(|e| std::cmp::Reverse(e.glyph.len()));

    let mut keys = Vec::new();
    let mut class_ids = Vec::new();
    let mut rest = text;
    let mut position = 0usize;
    'outer: while !rest.is_empty() {
        for e in &glyphs {
            if let Some(tail) = rest.strip_prefix(e.glyph.as_str()) {
                keys.push(e.key);
                class_ids.push(e.class_id);
                rest = tail;
                position += 1;
                continue 'outer;
            }
        }
        let c = rest.chars().next().expect("non-empty");
        if let Some(class_id) = vocab.class_of_key(c) {
            keys.push(c);
            class_ids.push(class_id);
            rest = &rest[c.len_utf8()..];
            position += 1;
            continue;
        }
        return Err(VocabError::UnknownCharacter { position, grapheme: c.to_string() });
    }
    Ok(WordSpec { keys, class_ids })
}

/// Enumerate every word of length `1..=max_len` over the full combination
/// space, ordered lexicographically by class-id sequence.
pub fn enumerate_words(vocab: &CharVocabulary, max_len: usize) -> Vec<WordSpec> {
    assert!(max_len >= 1, "max_len must be >= 1");
    let n = vocab.len();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(vocab: &CharVocabulary, n: usize, max_len: usize, stack: &mut Vec<usize>, out: &mut Vec<WordSpec>) {
        for c in 0..n {
            stack.push(c);
            out.push(WordSpec {
                keys: stack.iter().map(|&i| vocab.key_of(i).unwrap()).collect(),
                class_ids: stack.clone(),
            });
            if stack.len() < max_len {
                rec(vocab, n, max_len, stack, out);
            }
            stack.pop();
        }
    }
    rec(vocab, n, max_len, &mut stack, &mut out);
    out.sort_by(|a, b| a.class_ids.cmp(&b.class_ids));
    out
}

/// A curated word collection loaded from a word-list file.
///
/// The full pair/triple combination space is larger than the collection
/// actually used at the five-character scale (16 of 25 pairs, 9 of 125
/// triples), so the selected subset lives in an editable asset rather
/// than being computed.
#[derive(Debug, Clone)]
pub struct WordList {
    words: Vec<String>,
}

impl WordList {
    pub fn from_str_list(text: &str) -> Self {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect();
        Self { words }
    }

    pub fn load(path: &Path) -> Result<Self, VocabError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| VocabError::Io(format!("{}: {e}", path.display())))?;
        Ok(Self::from_str_list(&text))
    }

    /// The bundled 30-word collection.
    pub fn bundled() -> Self {
        Self::from_str_list(BUNDLED_WORDS)
    }

    pub fn raw_words(&self) -> &[String] {
        &self.words
    }

    /// Validate every entry against `vocab` and return words of length
    /// `<= max_len`, ordered lexicographically by class-id sequence.
    pub fn words(&self, vocab: &CharVocabulary, max_len: usize) -> Result<Vec<WordSpec>, VocabError> {
        let mut out = Vec::new();
        for w in &self.words {
            let spec = map_word(w, vocab)?;
            if spec.len() <= max_len {
                out.push(spec);
            }
        }
        out.sort_by(|a, b| a.class_ids().to_vec().cmp(&b.class_ids().to_vec()));
        Ok(out)
    }

    /// Word counts keyed by length.
    pub fn counts_by_length(&self, vocab: &CharVocabulary) -> Result<HashMap<usize, usize>, VocabError> {
        let mut counts = HashMap::new();
        for w in &self.words {
            let spec = map_word(w, vocab)?;
            *counts.entry(spec.len()).or_insert(0) += 1;
        }
        Ok(counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn five() -> CharVocabulary {
        CharVocabulary::bundled()
    }

    #[test]
    fn bundled_vocab_is_five_letters() {
        let v = five();
        assert_eq!(v.len(), 5);
        assert_eq!(v.blank_id(), 5);
        let keys: Vec<char> = v.entries().iter().map(|e| e.key).collect();
        assert_eq!(keys, vec!['k', 'l', 'm', 'n', 'p']);
        for (i, e) in v.entries().iter().enumerate() {
            assert_eq!(e.class_id, i);
        }
    }

    #[test]
    fn maps_glyph_word_to_klm() {
        let v = five();
        let glyph_word: String = [0, 1, 2].iter().map(|&i| v.entry(i).unwrap().glyph.clone()).collect();
        let w = map_word(&glyph_word, &v).unwrap();
        assert_eq!(w.key_string(), "klm");
        assert_eq!(w.class_ids(), &[0, 1, 2]);
    }

    #[test]
    fn maps_single_key_letter() {
        let w = map_word("k", &five()).unwrap();
        assert_eq!(w.keys(), &['k']);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn rejects_unknown_character_with_position() {
        let err = map_word("kx", &five()).unwrap_err();
        assert_eq!(err, VocabError::UnknownCharacter { position: 1, grapheme: "x".into() });
    }

    #[test]
    fn rejects_empty_word() {
        assert_eq!(map_word("", &five()).unwrap_err(), VocabError::EmptyWord);
    }

    #[test]
    fn mixed_alphabet_input_accepted() {
        let v = five();
        let mixed = format!("{}l", v.entry(0).unwrap().glyph);
        assert_eq!(map_word(&mixed, &v).unwrap().key_string(), "kl");
    }

    #[test]
    fn enumerate_full_counts() {
        let v = five();
        let len1: Vec<_> = enumerate_words(&v, 1);
        assert_eq!(len1.len(), 5);
        let upto2 = enumerate_words(&v, 2);
        assert_eq!(upto2.len(), 5 + 25);
        let single = CharVocabulary::new(vec![("q".into(), 'q')]).unwrap();
        assert_eq!(enumerate_words(&single, 1).len(), 1);
    }

    #[test]
    fn enumerate_is_lexicographic_by_class_ids() {
        let words = enumerate_words(&five(), 2);
        for pair in words.windows(2) {
            assert!(pair[0].class_ids() < pair[1].class_ids());
        }
    }

    #[test]
    fn bundled_word_list_counts_are_5_16_9() {
        let v = five();
        let counts = WordList::bundled().counts_by_length(&v).unwrap();
        assert_eq!(counts.get(&1), Some(&5));
        assert_eq!(counts.get(&2), Some(&16));
        assert_eq!(counts.get(&3), Some(&9));
        assert_eq!(WordList::bundled().words(&v, 3).unwrap().len(), 30);
    }

    #[test]
    fn duplicate_key_rejected() {
        let err = CharVocabulary::new(vec![("a".into(), 'k'), ("b".into(), 'k')]).unwrap_err();
        assert_eq!(err, VocabError::DuplicateKey('k'));
    }

    #[test]
    fn fingerprint_tracks_content() {
        let a = CharVocabulary::new(vec![("a".into(), 'k')]).unwrap();
        let b = CharVocabulary::new(vec![("a".into(), 'l')]).unwrap();
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint(), CharVocabulary::new(vec![("a".into(), 'k')]).unwrap().fingerprint());
    }

    proptest! {
        // Round trip: rendering a word's key letters and re-mapping  yields
        // the same word, position by position.
        #[test]
        fn map_word_round_trips_key_strings(ids in proptest::collection::vec(0usize..5, 1..8)) {
            let v = five();
            let keys: String = ids.iter().map(|&i| v.key_of(i).unwrap()).collect();
            let w = map_word(&keys, &v).unwrap();
            prop_assert_eq!(w.class_ids(), &ids[..]);
            prop_assert_eq!(w.key_string(), keys);
        }

        // Position preservation: class id at position i depends only on the
        // grapheme at position i.
        #[test]
        fn map_word_is_positionwise(ids in proptest::collection::vec(0usize..5, 1..8), pos in 0usize..8, sub in 0usize..5) {
            let v = five();
            let pos = pos % ids.len();
            let mut edited = ids.clone();
            edited[pos] = sub;
            let keys: String = edited.iter().map(|&i| v.key_of(i).unwrap()).collect();
            let w = map_word(&keys, &v).unwrap();
            for (i, id) in edited.iter().enumerate() {
                prop_assert_eq!(w.class_ids()[i], *id);
            }
        }
    }
}
