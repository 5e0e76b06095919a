//! 8-bit grayscale word images on the slot grid.
//!
//! Preprocessed images are `32` pixels tall and `16 × n_chars` wide: each
//! character owns one 16-pixel slot. Ink is dark (0), background is white
//! (255). Raw images off the scanner violate these invariants and are
//! brought into shape by the `dataio` preprocessing chain.

use std::path::Path;

use ndarray::{Array2, Array3};
use thiserror::Error;

/// Output slot width per character, pixels.
pub const SLOT_WIDTH: usize = 16;
/// Output image height, pixels.
pub const SLOT_HEIGHT: usize = 32;
/// Minimum background median after normalization.
pub const BACKGROUND_MEDIAN_MIN: u8 = 200;
/// Pixels strictly below this are classified as ink.
pub const INK_THRESHOLD: u8 = 128;

#[derive(Debug, Error)]
pub enum GlyphError {
    #[error("character count must be >= 1")]
    InvalidCharCount,
    #[error("image {path}: {reason}")]
    Decode { path: String, reason: String },
    #[error("image {path}: {reason}")]
    Encode { path: String, reason: String },
    #[error("slot grid violation: {0}")]
    SlotGrid(String),
}

/// A grayscale word image plus its character count.
#[derive(Debug, Clone, PartialEq)]
pub struct GlyphImage {
    pixels: Array2<u8>,
    n_chars: usize,
}

impl GlyphImage {
    pub fn new(pixels: Array2<u8>, n_chars: usize) -> Result<Self, GlyphError> {
        if n_chars < 1 {
            return Err(GlyphError::InvalidCharCount);
        }
        Ok(Self { pixels, n_chars })
    }

    /// A slot-grid canvas filled with background white.
    pub fn blank(n_chars: usize) -> Result<Self, GlyphError> {
        if n_chars < 1 {
            return Err(GlyphError::InvalidCharCount);
        }
        Ok(Self {
            pixels: Array2::from_elem((SLOT_HEIGHT, SLOT_WIDTH * n_chars), 255u8),
            n_chars,
        })
    }

    pub fn pixels(&self) -> &Array2<u8> {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut Array2<u8> {
        &mut self.pixels
    }

    pub fn n_chars(&self) -> usize {
        self.n_chars
    }

    pub fn width(&self) -> usize {
        self.pixels.ncols()
    }

    pub fn height(&self) -> usize {
        self.pixels.nrows()
    }

    /// Median pixel value (upper median).
    pub fn median(&self) -> u8 {
        let mut hist = [0usize; 256];
        for &v in self.pixels.iter() {
            hist[v as usize] += 1;
        }
        let total = self.pixels.len();
        let mut seen = 0usize;
        for (v, &c) in hist.iter().enumerate() {
            seen += c;
            if seen * 2 > total {
                return v as u8;
            }
        }
        255
    }

    /// Fraction of pixels classified as ink.
    pub fn ink_ratio(&self) -> f64 {
        let ink = self.pixels.iter().filter(|&&v| v < INK_THRESHOLD).count();
        ink as f64 / self.pixels.len() as f64
    }

    /// Verify the post-preprocessing invariants: 32-pixel height, 16 pixels
    /// per character, white background mode.
    pub fn validate_slot_grid(&self) -> Result<(), GlyphError> {
        if self.height() != SLOT_HEIGHT {
            return Err(GlyphError::SlotGrid(format!("height {} != {SLOT_HEIGHT}", self.height())));
        }
        if self.width() != SLOT_WIDTH * self.n_chars {
            return Err(GlyphError::SlotGrid(format!(
                "width {} != {SLOT_WIDTH} x {}",
                self.width(),
                self.n_chars
            )));
        }
        if self.median() < BACKGROUND_MEDIAN_MIN {
            return Err(GlyphError::SlotGrid(format!(
                "background median {} < {BACKGROUND_MEDIAN_MIN}",
                self.median()
            )));
        }
        Ok(())
    }

    /// Map to `[-1, 1]` floats (ink ≈ -1 after sign convention of white=+1).
    pub fn to_signed_f32(&self) -> Array2<f32> {
        self.pixels.mapv(|v| v as f32 / 127.5 - 1.0)
    }

    /// Quantize a `[-1, 1]` map back to 8-bit pixels.
    pub fn from_signed_f32(map: &Array2<f32>, n_chars: usize) -> Result<Self, GlyphError> {
        let pixels = map.mapv(|v| (((v.clamp(-1.0, 1.0) + 1.0) * 127.5).round()) as u8);
        Self::new(pixels, n_chars)
    }

    /// Load a grayscale PNG; color inputs are converted to luma.
    pub fn load_png(path: &Path, n_chars: usize) -> Result<Self, GlyphError> {
        let img = image::open(path).map_err(|e| GlyphError::Decode {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        let gray = img.to_luma8();
        let (w, h) = gray.dimensions();
        let pixels = Array2::from_shape_fn((h as usize, w as usize), |(y, x)| {
            gray.get_pixel(x as u32, y as u32)[0]
        });
        Self::new(pixels, n_chars)
    }

    /// Write as an 8-bit grayscale PNG without alpha.
    pub fn save_png(&self, path: &Path) -> Result<(), GlyphError> {
        let (h, w) = (self.height() as u32, self.width() as u32);
        let mut img = image::GrayImage::new(w, h);
        for ((y, x), &v) in self.pixels.indexed_iter() {
            img.put_pixel(x as u32, y as u32, image::Luma([v]));
        }
        img.save(path).map_err(|e| GlyphError::Encode {
            path: path.display().to_string(),
            reason: e.to_string(),
        })
    }
}

/// Resample `src` to `(out_h, out_w)`: area averaging when shrinking,
/// bilinear interpolation when growing. Operates on f32 to avoid banding
/// from repeated quantization.
pub fn resample(src: &Array2<f32>, out_h: usize, out_w: usize) -> Array2<f32> {
    let (in_h, in_w) = src.dim();
    if in_h == out_h && in_w == out_w {
        return src.clone();
    }
    if out_h < in_h || out_w < in_w {
        area_resample(src, out_h, out_w)
    } else {
        bilinear_resample(src, out_h, out_w)
    }
}

fn area_resample(src: &Array2<f32>, out_h: usize, out_w: usize) -> Array2<f32> {
    let (in_h, in_w) = src.dim();
    let sy = in_h as f64 / out_h as f64;
    let sx = in_w as f64 / out_w as f64;
    Array2::from_shape_fn((out_h, out_w), |(oy, ox)| {
        let y0 = oy as f64 * sy;
        let y1 = (oy + 1) as f64 * sy;
        let x0 = ox as f64 * sx;
        let x1 = (ox + 1) as f64 * sx;
        let mut acc = 0.0f64;
        let mut weight = 0.0f64;
        let iy0 = y0.floor() as usize;
        let iy1 = (y1.ceil() as usize).min(in_h);
        let ix0 = x0.floor() as usize;
        let ix1 = (x1.ceil() as usize).min(in_w);
        for iy in iy0..iy1 {
            let wy = (y1.min((iy + 1) as f64) - y0.max(iy as f64)).max(0.0);
            for ix in ix0..ix1 {
                let wx = (x1.min((ix + 1) as f64) - x0.max(ix as f64)).max(0.0);
                acc += src[(iy, ix)] as f64 * wy * wx;
                weight += wy * wx;
            }
        }
        (acc / weight) as f32
    })
}

fn bilinear_resample(src: &Array2<f32>, out_h: usize, out_w: usize) -> Array2<f32> {
    let (in_h, in_w) = src.dim();
    let sy = in_h as f64 / out_h as f64;
    let sx = in_w as f64 / out_w as f64;
    Array2::from_shape_fn((out_h, out_w), |(oy, ox)| {
        // Pixel-center alignment.
        let fy = ((oy as f64 + 0.5) * sy - 0.5).clamp(0.0, (in_h - 1) as f64);
        let fx = ((ox as f64 + 0.5) * sx - 0.5).clamp(0.0, (in_w - 1) as f64);
        let y0 = fy.floor() as usize;
        let x0 = fx.floor() as usize;
        let y1 = (y0 + 1).min(in_h - 1);
        let x1 = (x0 + 1).min(in_w - 1);
        let dy = (fy - y0 as f64) as f32;
        let dx = (fx - x0 as f64) as f32;
        let top = src[(y0, x0)] * (1.0 - dx) + src[(y0, x1)] * dx;
        let bot = src[(y1, x0)] * (1.0 - dx) + src[(y1, x1)] * dx;
        top * (1.0 - dy) + bot * dy
    })
}

/// Inverse-mapped affine warp about the image center: scale, rotate
/// (degrees, counter-clockwise), translate (pixels). Samples bilinearly;
/// out-of-frame reads return the background fill.
pub fn affine_warp(
    src: &Array2<f32>,
    scale: f32,
    rotation_deg: f32,
    translate: (f32, f32),
    fill: f32,
) -> Array2<f32> {
    let (h, w) = src.dim();
    let cy = (h as f32 - 1.0) / 2.0;
    let cx = (w as f32 - 1.0) / 2.0;
    let theta = rotation_deg.to_radians();
    let (sin, cos) = (theta.sin(), theta.cos());
    let inv_scale = 1.0 / scale;
    Array2::from_shape_fn((h, w), |(oy, ox)| {
        // Output pixel -> source coordinates (inverse transform).
        let dx = ox as f32 - cx - translate.0;
        let dy = oy as f32 - cy - translate.1;
        let sx = (cos * dx + sin * dy) * inv_scale + cx;
        let sy = (-sin * dx + cos * dy) * inv_scale + cy;
        sample_bilinear(src, sy, sx, fill)
    })
}

fn sample_bilinear(src: &Array2<f32>, y: f32, x: f32, fill: f32) -> f32 {
    let (h, w) = src.dim();
    if y < -1.0 || x < -1.0 || y > h as f32 || x > w as f32 {
        return fill;
    }
    let y0 = y.floor();
    let x0 = x.floor();
    let dy = y - y0;
    let dx = x - x0;
    let at = |yy: f32, xx: f32| -> f32 {
        if yy < 0.0 || xx < 0.0 || yy as usize >= h || xx as usize >= w {
            fill
        } else {
            src[(yy as usize, xx as usize)]
        }
    };
    let top = at(y0, x0) * (1.0 - dx) + at(y0, x0 + 1.0) * dx;
    let bot = at(y0 + 1.0, x0) * (1.0 - dx) + at(y0 + 1.0, x0 + 1.0) * dx;
    top * (1.0 - dy) + bot * dy
}

/// Stack signed-float views of images into an `(n, 1, h, w)` batch.
/// All images must share dimensions.
pub fn batch_signed(images: &[&GlyphImage]) -> Array3<f32> {
    assert!(!images.is_empty());
    let (h, w) = (images[0].height(), images[0].width());
    let mut out = Array3::zeros((images.len(), h, w));
    for (i, img) in images.iter().enumerate() {
        assert_eq!((img.height(), img.width()), (h, w), "mixed dimensions in batch");
        out.index_axis_mut(ndarray::Axis(0), i).assign(&img.to_signed_f32());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::arr2;

    #[test]
    fn char_count_validated() {
        assert!(matches!(GlyphImage::blank(0), Err(GlyphError::InvalidCharCount)));
        assert_eq!(GlyphImage::blank(3).unwrap().width(), 48);
    }

    #[test]
    fn slot_grid_checks_dimensions_and_background() {
        let good = GlyphImage::blank(2).unwrap();
        good.validate_slot_grid().unwrap();

        let bad = GlyphImage::new(Array2::from_elem((SLOT_HEIGHT, 20), 255u8), 1).unwrap();
        assert!(bad.validate_slot_grid().is_err());

        let dark = GlyphImage::new(Array2::from_elem((SLOT_HEIGHT, SLOT_WIDTH), 10u8), 1).unwrap();
        assert!(dark.validate_slot_grid().is_err());
    }

    #[test]
    fn median_is_upper_median() {
        let img = GlyphImage::new(arr2(&[[0u8, 10], [20, 30]]), 1).unwrap();
        assert_eq!(img.median(), 20);
    }

    #[test]
    fn signed_round_trip_is_exact_on_u8() {
        let img = GlyphImage::new(arr2(&[[0u8, 37, 128], [200, 255, 64]]), 1).unwrap();
        let back = GlyphImage::from_signed_f32(&img.to_signed_f32(), 1).unwrap();
        assert_eq!(img.pixels(), back.pixels());
    }

    #[test]
    fn resample_identity_when_same_size() {
        let src = arr2(&[[1.0f32, 2.0], [3.0, 4.0]]);
        assert_eq!(resample(&src, 2, 2), src);
    }

    #[test]
    fn area_downsample_averages_blocks() {
        let src = arr2(&[[0.0f32, 2.0, 4.0, 6.0], [2.0, 4.0, 6.0, 8.0]]);
        let out = resample(&src, 1, 2);
        assert_eq!(out, arr2(&[[2.0f32, 6.0]]));
    }

    #[test]
    fn affine_identity_is_exact() {
        let src = Array2::from_shape_fn((8, 8), |(y, x)| (y * 8 + x) as f32);
        let out = affine_warp(&src, 1.0, 0.0, (0.0, 0.0), 255.0);
        assert_eq!(out, src);
    }

    #[test]
    fn affine_translation_fills_background() {
        let src = Array2::zeros((4, 4));
        let out = affine_warp(&src, 1.0, 0.0, (2.0, 0.0), 255.0);
        // Source column read for output x=0,1 is out of frame.
        assert_eq!(out[(0, 0)], 255.0);
        assert_eq!(out[(0, 3)], 0.0);
    }

    #[test]
    fn png_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.png");
        let img = GlyphImage::new(
            Array2::from_shape_fn((SLOT_HEIGHT, SLOT_WIDTH), |(y, x)| ((y * 7 + x * 13) % 256) as u8),
            1,
        )
        .unwrap();
        img.save_png(&path).unwrap();
        let back = GlyphImage::load_png(&path, 1).unwrap();
        assert_eq!(img.pixels(), back.pixels());
    }
}
