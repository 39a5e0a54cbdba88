use super::border::reflect101;
use crate::error::{Error, Result};
use crate::image::{Channels, FloatImage, Image};

/// σ derived from the kernel size: `0.3·((ksize − 1)·0.5 − 1) + 0.8`.
pub fn sigma_for_ksize(ksize: usize) -> f64 {
    0.3 * ((ksize as f64 - 1.0) * 0.5 - 1.0) + 0.8
}

/// Normalized 1-D Gaussian taps for an odd `ksize ≥ 3`.
pub fn gaussian_kernel(ksize: usize) -> Result<Vec<f32>> {
    if ksize < 3 || ksize.is_multiple_of(2) {
        return Err(Error::param(format!("gaussian ksize must be odd and >= 3, got {ksize}")));
    }
    let sigma = sigma_for_ksize(ksize);
    let radius = (ksize / 2) as f64;
    let raw: Vec<f64> = (0..ksize)
        .map(|i| {
            let d = i as f64 - radius;
            (-(d * d) / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let sum: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|v| (v / sum) as f32).collect())
}

/// Separable Gaussian blur with reflect-101 borders.
pub fn gaussian_blur(img: &FloatImage, ksize: usize) -> Result<FloatImage> {
    img.require_gray()?;
    let taps = gaussian_kernel(ksize)?;
    let radius = (ksize / 2) as isize;
    let (w, h) = (img.width() as usize, img.height() as usize);
    let src = img.data();

    let xs: Vec<Vec<usize>> = (0..w as isize)
        .map(|x| (-radius..=radius).map(|d| reflect101(x + d, w)).collect())
        .collect();
    let mut horizontal = Vec::with_capacity(w * h);
    for row in src.chunks_exact(w) {
        horizontal.extend(xs.iter().map(|idx| {
            idx.iter().zip(&taps).fold(0.0f32, |acc, (&i, &t)| acc + row[i] * t)
        }));
    }

    let mut out = vec![0.0f32; w * h];
    let mut rows = Vec::with_capacity(ksize);
    for y in 0..h as isize {
        rows.clear();
        rows.extend((-radius..=radius).map(|d| reflect101(y + d, h)));
        let dst = &mut out[y as usize * w..(y as usize + 1) * w];
        for (&r, &t) in rows.iter().zip(&taps) {
            let line = &horizontal[r * w..(r + 1) * w];
            for (d, &s) in dst.iter_mut().zip(line) {
                *d += s * t;
            }
        }
    }
    Ok(Image::from_parts(w as u32, h as u32, Channels::Gray, out))
}
