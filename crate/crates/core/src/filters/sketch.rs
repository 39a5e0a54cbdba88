use serde::{Deserialize, Serialize};

use super::{equalize_hist, gaussian_blur, dilate, morph_open, StructuringElement};
use crate::error::Result;
use crate::image::{to_grayscale, Channels, FloatImage, GrayImage, Image};

/// Lower bound on the smoothed denominator in [`divide_sketch`].
pub const SKETCH_EPSILON: f32 = 1e-6;

/// Knobs of [`image_to_sketch`]; defaults are blur 21, opening 1×1, dilation 2×2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SketchParams {
    pub blur_ksize: usize,
    pub open_size: u32,
    pub dilate_size: u32,
}

impl Default for SketchParams {
    fn default() -> Self {
        SketchParams {
            blur_ksize: 21,
            open_size: 1,
            dilate_size: 2,
        }
    }
}

/// `clamp(round(255 · gray / max(smoothed, ε)), 0, 255)` per sample.
pub fn divide_sketch(gray: &GrayImage, smoothed: &FloatImage) -> Result<GrayImage> {
    gray.require_gray()?;
    smoothed.require_gray()?;
    gray.same_dimensions(smoothed)?;
    let data = gray
        .data()
        .iter()
        .zip(smoothed.data())
        .map(|(&g, &s)| {
            let ratio = g as f64 / s.max(SKETCH_EPSILON) as f64;
            (255.0 * ratio).round().clamp(0.0, 255.0) as u8
        })
        .collect();
    Ok(Image::from_parts(gray.width(), gray.height(), Channels::Gray, data))
}

/// Blur, divide, equalize, open, dilate.
pub fn image_to_sketch(img: &Image<u8>, params: &SketchParams) -> Result<GrayImage> {
    let gray = to_grayscale(img);
    let smoothed = gaussian_blur(&gray.convert(), params.blur_ksize)?;
    let sketched = divide_sketch(&gray, &smoothed)?;
    let equalized = equalize_hist(&sketched)?;
    let opened = morph_open(&equalized, &StructuringElement::square(params.open_size)?)?;
    dilate(&opened, &StructuringElement::square(params.dilate_size)?)
}
