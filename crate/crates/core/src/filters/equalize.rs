use crate::error::Result;
use crate::image::{Channels, GrayImage, Image};

/// Histogram equalization through the cumulative histogram:
/// `v → round(255 · (cdf(v) − cdf_min) / (N − cdf_min))`.
///
/// Constant images are returned unchanged.
pub fn equalize_hist(img: &GrayImage) -> Result<GrayImage> {
    img.require_gray()?;
    let mut hist = [0u64; 256];
    for &v in img.data() {
        hist[v as usize] += 1;
    }
    let total = img.data().len() as u64;
    let cdf_min = hist.iter().copied().find(|&c| c > 0).unwrap_or(0);
    if cdf_min == total {
        return Ok(img.clone());
    }
    let denom = total - cdf_min;
    let mut lut = [0u8; 256];
    let mut cdf = 0u64;
    for (level, &count) in hist.iter().enumerate() {
        cdf += count;
        let num = 255 * cdf.saturating_sub(cdf_min);
        // round half up in integers
        lut[level] = ((2 * num + denom) / (2 * denom)).min(255) as u8;
    }
    let data = img.data().iter().map(|&v| lut[v as usize]).collect();
    Ok(Image::from_parts(img.width(), img.height(), Channels::Gray, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evenly_spread_levels_are_fixed() {
        let img = Image::gray(2, 2, vec![0u8, 85, 170, 255]).unwrap();
        assert_eq!(equalize_hist(&img).unwrap(), img);
    }

    #[test]
    fn constant_passes_through() {
        let img = Image::filled(3, 3, Channels::Gray, 77u8).unwrap();
        assert_eq!(equalize_hist(&img).unwrap(), img);
    }

    #[test]
    fn two_levels_stretch_to_extremes() {
        let img = Image::gray(4, 1, vec![100u8, 100, 101, 101]).unwrap();
        assert_eq!(equalize_hist(&img).unwrap().data(), &[0, 0, 255, 255]);
    }

    #[test]
    fn rejects_rgb() {
        let img = Image::filled(1, 1, Channels::Rgb, 0u8).unwrap();
        assert!(equalize_hist(&img).is_err());
    }
}
