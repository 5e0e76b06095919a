//! Word-level handwriting synthesis toolkit.
//!
//! The crate covers the full pipeline for synthesizing handwritten word
//! images from plain text over a small character vocabulary:
//!
//! * [`vocab`] — character vocabulary, glyph↔key mapping, word validation
//! * [`glyph`] — 8-bit grayscale word images on the 16px-per-character slot grid
//! * [`dataio`] — preprocessing, augmentation, dataset manifests, synthetic corpus
//! * [`gen`] — character-conditional variable-width generator
//! * [`critic`] — variable-width patch discriminator with hinge loss
//! * [`recognizer`] — convolutional sequence recognizer with CTC loss
//! * [`trainer`] — adversarial training loop, checkpoints, epoch selection, ablations
//! * [`metrics`] — SSIM, FID and geometry score with pluggable feature extractors
//! * [`enhance`] — pluggable post-generation enhancement stage
//!
//! Hot loops (per-image preprocessing, batch forward/backward, metric
//! bootstraps) run data-parallel on rayon when the default `parallel`
//! feature is enabled and fall back to sequential iteration without it.
//! All randomness is derived from explicit seeds via [`rng`]; identical
//! seeds produce bit-identical artifacts on any thread count.

pub mod critic;
pub mod dataio;
pub mod enhance;
pub mod exec;
pub mod gen;
pub mod glyph;
pub mod metrics;
pub mod nn;
pub mod recognizer;
pub mod rng;
pub mod trainer;
pub mod vocab;

pub use glyph::GlyphImage;
pub use vocab::{CharVocabulary, WordSpec};
