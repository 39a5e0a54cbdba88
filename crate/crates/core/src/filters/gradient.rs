use super::convolve::{convolve3x3, Kernel3x3};
use crate::error::Result;
use crate::image::{normalize_to_u8, to_grayscale, Channels, FloatImage, GrayImage, Image};

/// Scharr derivatives and their per-sample Euclidean magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    pub gx: FloatImage,
    pub gy: FloatImage,
    pub magnitude: FloatImage,
}

/// Gradient of an 8-bit image; RGB input is converted to gray first.
pub fn scharr_gradient(img: &Image<u8>) -> Result<GradientField> {
    scharr_gradient_f32(&to_grayscale(img).convert())
}

pub fn scharr_gradient_f32(gray: &FloatImage) -> Result<GradientField> {
    let gx = convolve3x3(gray, &Kernel3x3::SCHARR_X)?;
    let gy = convolve3x3(gray, &Kernel3x3::SCHARR_Y)?;
    // f64 keeps gx² + gy² exact for 8-bit inputs (|g| ≤ 8160)
    let magnitude = gx
        .data()
        .iter()
        .zip(gy.data())
        .map(|(&a, &b)| {
            let (a, b) = (a as f64, b as f64);
            (a * a + b * b).sqrt() as f32
        })
        .collect();
    let magnitude = Image::from_parts(gx.width(), gx.height(), Channels::Gray, magnitude);
    Ok(GradientField { gx, gy, magnitude })
}

/// Scharr gradient magnitude stretched onto `[0, 255]`.
pub fn tenengrad(img: &Image<u8>) -> Result<GrayImage> {
    normalize_to_u8(&scharr_gradient(img)?.magnitude)
}
