use super::border::reflect101;
use crate::error::{Error, Result};
use crate::image::{Channels, FloatImage, Image};

/// A 3×3 weight matrix, applied as a correlation (not flipped).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel3x3 {
    weights: [[f32; 3]; 3],
}

impl Kernel3x3 {
    /// Horizontal Scharr derivative.
    pub const SCHARR_X: Kernel3x3 = Kernel3x3 {
        weights: [[-3.0, 0.0, 3.0], [-10.0, 0.0, 10.0], [-3.0, 0.0, 3.0]],
    };

    /// Vertical Scharr derivative.
    pub const SCHARR_Y: Kernel3x3 = Kernel3x3 {
        weights: [[-3.0, -10.0, -3.0], [0.0, 0.0, 0.0], [3.0, 10.0, 3.0]],
    };

    pub const IDENTITY: Kernel3x3 = Kernel3x3 {
        weights: [[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]],
    };

    pub fn new(weights: [[f32; 3]; 3]) -> Result<Self> {
        if weights.iter().flatten().any(|w| !w.is_finite()) {
            return Err(Error::param("kernel weights must be finite"));
        }
        Ok(Kernel3x3 { weights })
    }

    pub fn weights(&self) -> &[[f32; 3]; 3] {
        &self.weights
    }
}

/// Correlates a single-channel image with `kernel` using reflect-101 borders.
pub fn convolve3x3(img: &FloatImage, kernel: &Kernel3x3) -> Result<FloatImage> {
    img.require_gray()?;
    let (w, h) = img.dimensions();
    if w < 3 || h < 3 {
        return Err(Error::TooSmall {
            width: w,
            height: h,
            min_width: 3,
            min_height: 3,
        });
    }
    let (w, h) = (w as usize, h as usize);
    let src = img.data();
    let k = &kernel.weights;
    let cols: Vec<[usize; 3]> = (0..w as isize)
        .map(|x| [reflect101(x - 1, w), x as usize, reflect101(x + 1, w)])
        .collect();

    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        let rows = [reflect101(y - 1, h), y as usize, reflect101(y + 1, h)].map(|r| &src[r * w..(r + 1) * w]);
        out.extend(cols.iter().map(|c| {
            let mut acc = 0.0f32;
            for (row, kr) in rows.iter().zip(k) {
                acc += row[c[0]] * kr[0] + row[c[1]] * kr[1] + row[c[2]] * kr[2];
            }
            acc
        }));
    }
    Ok(Image::from_parts(w as u32, h as u32, Channels::Gray, out))
}
