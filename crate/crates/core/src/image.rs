//! Owned raster buffers and the pixel-level operations every filter builds on.
//!
//! Samples are stored row-major with channels interleaved, so the sample for
//! `(x, y, c)` lives at `(y * width + x) * channels + c`.

use std::fmt;

use crate::error::{Error, Result};

/// Channel layout of an [`Image`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channels {
    Gray,
    Rgb,
}

impl Channels {
    pub fn from_count(n: usize) -> Result<Self> {
        match n {
            1 => Ok(Channels::Gray),
            3 => Ok(Channels::Rgb),
            other => Err(Error::UnsupportedChannels(other)),
        }
    }

    pub const fn count(self) -> usize {
        match self {
            Channels::Gray => 1,
            Channels::Rgb => 3,
        }
    }
}

/// A sample type an [`Image`] can hold.
pub trait Sample: Copy + Default + PartialEq + PartialOrd + fmt::Debug + Send + Sync + 'static {
    fn to_f32(self) -> f32;
    /// Converts from working precision, rounding and saturating where needed.
    fn from_f32(v: f32) -> Self;
    fn is_valid(self) -> bool;
}

impl Sample for u8 {
    #[inline]
    fn to_f32(self) -> f32 {
        self as f32
    }

    #[inline]
    fn from_f32(v: f32) -> Self {
        quantize(v)
    }

    #[inline]
    fn is_valid(self) -> bool {
        true
    }
}

impl Sample for f32 {
    #[inline]
    fn to_f32(self) -> f32 {
        self
    }

    #[inline]
    fn from_f32(v: f32) -> Self {
        v
    }

    #[inline]
    fn is_valid(self) -> bool {
        self.is_finite()
    }
}

/// Round half away from zero and saturate to `[0, 255]`.
#[inline]
pub fn quantize(v: f32) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

#[derive(Clone, PartialEq)]
pub struct Image<T> {
    width: u32,
    height: u32,
    channels: Channels,
    data: Vec<T>,
}

pub type GrayImage = Image<u8>;
pub type FloatImage = Image<f32>;

impl<T> fmt::Debug for Image<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Image")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("channels", &self.channels)
            .finish_non_exhaustive()
    }
}

impl<T: Sample> Image<T> {
    pub fn new(width: u32, height: u32, channels: Channels, data: Vec<T>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDimensions { width, height });
        }
        let expected = width as usize * height as usize * channels.count();
        if data.len() != expected {
            return Err(Error::BufferLength {
                expected,
                actual: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|s| !s.is_valid()) {
            return Err(Error::InvalidSample { index });
        }
        Ok(Image {
            width,
            height,
            channels,
            data,
        })
    }

    /// Single-channel image from a row-major buffer.
    pub fn gray(width: u32, height: u32, data: Vec<T>) -> Result<Self> {
        Self::new(width, height, Channels::Gray, data)
    }

    pub fn rgb(width: u32, height: u32, data: Vec<T>) -> Result<Self> {
        Self::new(width, height, Channels::Rgb, data)
    }

    pub fn filled(width: u32, height: u32, channels: Channels, value: T) -> Result<Self> {
        let n = width as usize * height as usize * channels.count();
        Self::new(width, height, channels, vec![value; n])
    }

    /// Builds an image by evaluating `f(x, y, c)` for every sample.
    pub fn from_fn(
        width: u32,
        height: u32,
        channels: Channels,
        mut f: impl FnMut(u32, u32, usize) -> T,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width as usize * height as usize * channels.count());
        for y in 0..height {
            for x in 0..width {
                for c in 0..channels.count() {
                    data.push(f(x, y, c));
                }
            }
        }
        Self::new(width, height, channels, data)
    }

    /// Internal constructor for buffers whose shape is correct by construction.
    pub(crate) fn from_parts(width: u32, height: u32, channels: Channels, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), width as usize * height as usize * channels.count());
        Image {
            width,
            height,
            channels,
            data,
        }
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn height(&self) -> u32 {
        self.height
    }

    #[inline]
    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    #[inline]
    pub fn channels(&self) -> Channels {
        self.channels
    }

    #[inline]
    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32, c: usize) -> T {
        self.data[self.offset(x, y, c)]
    }

    #[inline]
    fn offset(&self, x: u32, y: u32, c: usize) -> usize {
        (y as usize * self.width as usize + x as usize) * self.channels.count() + c
    }

    pub fn same_dimensions<U>(&self, other: &Image<U>) -> Result<()> {
        if self.dimensions() != (other.width, other.height) {
            return Err(Error::DimensionMismatch {
                left: self.dimensions(),
                right: (other.width, other.height),
            });
        }
        Ok(())
    }

    pub(crate) fn require_gray(&self) -> Result<()> {
        match self.channels {
            Channels::Gray => Ok(()),
            Channels::Rgb => Err(Error::ChannelMismatch {
                expected: 1,
                actual: 3,
            }),
        }
    }

    /// Sample-wise conversion into another sample type.
    pub fn convert<U: Sample>(&self) -> Image<U> {
        let data = self.data.iter().map(|&s| U::from_f32(s.to_f32())).collect();
        Image::from_parts(self.width, self.height, self.channels, data)
    }

    pub fn crop(&self, rect: PixelRect) -> Result<Self> {
        rect.check_within(self.width, self.height)?;
        let ch = self.channels.count();
        let mut data = Vec::with_capacity(rect.w as usize * rect.h as usize * ch);
        for y in rect.y0..rect.y0 + rect.h {
            let start = self.offset(rect.x0, y, 0);
            data.extend_from_slice(&self.data[start..start + rect.w as usize * ch]);
        }
        Ok(Image::from_parts(rect.w, rect.h, self.channels, data))
    }

    /// Mirrors the columns.
    pub fn flip_horizontal(&self) -> Self {
        let ch = self.channels.count();
        let w = self.width as usize;
        let mut data = Vec::with_capacity(self.data.len());
        for row in self.data.chunks_exact(w * ch) {
            for px in row.chunks_exact(ch).rev() {
                data.extend_from_slice(px);
            }
        }
        Image::from_parts(self.width, self.height, self.channels, data)
    }

    /// Replicates a gray image into three identical channels. RGB input is cloned.
    pub fn to_rgb(&self) -> Self {
        match self.channels {
            Channels::Rgb => self.clone(),
            Channels::Gray => {
                let data = self.data.iter().flat_map(|&v| [v, v, v]).collect();
                Image::from_parts(self.width, self.height, Channels::Rgb, data)
            }
        }
    }
}

/// Axis-aligned pixel rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelRect {
    pub x0: u32,
    pub y0: u32,
    pub w: u32,
    pub h: u32,
}

impl PixelRect {
    pub fn check_within(&self, width: u32, height: u32) -> Result<()> {
        let fits = self.w > 0
            && self.h > 0
            && self.x0.checked_add(self.w).is_some_and(|r| r <= width)
            && self.y0.checked_add(self.h).is_some_and(|b| b <= height);
        if fits {
            Ok(())
        } else {
            Err(Error::RectOutOfBounds {
                x0: self.x0,
                y0: self.y0,
                w: self.w,
                h: self.h,
                width,
                height,
            })
        }
    }

    /// Centered rectangle of the given size; odd margins leave the extra
    /// pixel on the right/bottom.
    pub fn centered(width: u32, height: u32, out_w: u32, out_h: u32) -> Result<Self> {
        if out_w == 0 || out_h == 0 || out_w > width || out_h > height {
            return Err(Error::RectOutOfBounds {
                x0: 0,
                y0: 0,
                w: out_w,
                h: out_h,
                width,
                height,
            });
        }
        Ok(PixelRect {
            x0: (width - out_w) / 2,
            y0: (height - out_h) / 2,
            w: out_w,
            h: out_h,
        })
    }
}

/// BT.601 luma, computed in fixed point so results do not depend on float rounding.
pub fn to_grayscale(img: &Image<u8>) -> GrayImage {
    match img.channels {
        Channels::Gray => img.clone(),
        Channels::Rgb => {
            let data = img
                .data
                .chunks_exact(3)
                .map(|px| {
                    let luma = 299 * px[0] as u32 + 587 * px[1] as u32 + 114 * px[2] as u32;
                    ((luma + 500) / 1000) as u8
                })
                .collect();
            Image::from_parts(img.width, img.height, Channels::Gray, data)
        }
    }
}

/// Float version of [`to_grayscale`] without quantization.
pub fn to_grayscale_f32(img: &Image<f32>) -> FloatImage {
    match img.channels {
        Channels::Gray => img.clone(),
        Channels::Rgb => {
            let data = img
                .data
                .chunks_exact(3)
                .map(|px| 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2])
                .collect();
            Image::from_parts(img.width, img.height, Channels::Gray, data)
        }
    }
}

/// Linearly stretches `[min, max]` onto `[0, 255]`. A flat image maps to all zeros.
pub fn normalize_to_u8(img: &Image<f32>) -> Result<GrayImage> {
    if let Some(index) = img.data.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidSample { index });
    }
    let (min, max) = img
        .data
        .iter()
        .fold((f32::INFINITY, f32::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let data = if max > min {
        let (min, range) = (min as f64, max as f64 - min as f64);
        img.data
            .iter()
            .map(|&v| (255.0 * (v as f64 - min) / range).round().clamp(0.0, 255.0) as u8)
            .collect()
    } else {
        vec![0; img.data.len()]
    };
    Ok(Image::from_parts(img.width, img.height, img.channels, data))
}

/// Bilinear resize to exact target dimensions, with pixel centers at half-integer
/// coordinates and edge-clamped sampling.
pub fn resize<T: Sample>(img: &Image<T>, out_w: u32, out_h: u32) -> Result<Image<T>> {
    if out_w == 0 || out_h == 0 {
        return Err(Error::InvalidDimensions {
            width: out_w,
            height: out_h,
        });
    }
    if (out_w, out_h) == img.dimensions() {
        return Ok(img.clone());
    }
    let xs = axis_taps(img.width, out_w);
    let ys = axis_taps(img.height, out_h);
    let ch = img.channels.count();
    let mut data = Vec::with_capacity(out_w as usize * out_h as usize * ch);
    for &(y0, y1, fy) in &ys {
        for &(x0, x1, fx) in &xs {
            for c in 0..ch {
                let p00 = img.get(x0, y0, c).to_f32();
                let p10 = img.get(x1, y0, c).to_f32();
                let p01 = img.get(x0, y1, c).to_f32();
                let p11 = img.get(x1, y1, c).to_f32();
                let top = p00 + (p10 - p00) * fx;
                let bottom = p01 + (p11 - p01) * fx;
                data.push(T::from_f32(top + (bottom - top) * fy));
            }
        }
    }
    Ok(Image::from_parts(out_w, out_h, img.channels, data))
}

/// Source taps `(lo, hi, frac)` for every destination coordinate along one axis.
fn axis_taps(src: u32, dst: u32) -> Vec<(u32, u32, f32)> {
    let scale = src as f64 / dst as f64;
    let last = (src - 1) as f64;
    (0..dst)
        .map(|d| {
            let s = ((d as f64 + 0.5) * scale - 0.5).clamp(0.0, last);
            let lo = s.floor();
            let hi = (lo + 1.0).min(last);
            (lo as u32, hi as u32, (s - lo) as f32)
        })
        .collect()
}

pub fn center_crop<T: Sample>(img: &Image<T>, out_w: u32, out_h: u32) -> Result<Image<T>> {
    let rect = PixelRect::centered(img.width, img.height, out_w, out_h)?;
    img.crop(rect)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grayscale_examples() {
        let white = Image::rgb(1, 1, vec![255u8, 255, 255]).unwrap();
        assert_eq!(to_grayscale(&white).data(), &[255]);
        let red = Image::rgb(1, 1, vec![255u8, 0, 0]).unwrap();
        assert_eq!(to_grayscale(&red).data(), &[76]);
        let black = Image::filled(2, 2, Channels::Rgb, 0u8).unwrap();
        let g = to_grayscale(&black);
        assert_eq!(g.channels(), Channels::Gray);
        assert_eq!(g.data(), &[0; 4]);
    }

    #[test]
    fn grayscale_of_gray_valued_rgb_is_exact() {
        for v in 0..=255u8 {
            let img = Image::rgb(1, 1, vec![v, v, v]).unwrap();
            assert_eq!(to_grayscale(&img).data(), &[v]);
        }
    }

    #[test]
    fn gray_input_is_copied() {
        let img = Image::gray(2, 1, vec![3u8, 9]).unwrap();
        assert_eq!(to_grayscale(&img), img);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            Image::<u8>::gray(0, 3, vec![]),
            Err(Error::InvalidDimensions { .. })
        ));
        assert!(matches!(
            Image::gray(2, 2, vec![0u8; 3]),
            Err(Error::BufferLength { expected: 4, actual: 3 })
        ));
        assert!(matches!(Channels::from_count(4), Err(Error::UnsupportedChannels(4))));
        assert!(matches!(
            Image::gray(1, 1, vec![f32::NAN]),
            Err(Error::InvalidSample { index: 0 })
        ));
    }

    #[test]
    fn normalize_examples() {
        let img = Image::gray(2, 1, vec![0.0f32, 1.0]).unwrap();
        assert_eq!(normalize_to_u8(&img).unwrap().data(), &[0, 255]);
        let flat = Image::filled(3, 2, Channels::Gray, 7.3f32).unwrap();
        assert_eq!(normalize_to_u8(&flat).unwrap().data(), &[0; 6]);
        let img = Image::gray(3, 1, vec![2.0f32, 4.0, 6.0]).unwrap();
        assert_eq!(normalize_to_u8(&img).unwrap().data(), &[0, 128, 255]);
    }

    #[test]
    fn resize_examples() {
        let img = Image::from_fn(224, 224, Channels::Gray, |x, y, _| ((x * 7 + y * 3) % 256) as u8).unwrap();
        assert_eq!(resize(&img, 224, 224).unwrap(), img);

        let row = Image::gray(2, 1, vec![0u8, 255]).unwrap();
        let up = resize(&row, 4, 1).unwrap();
        assert!(up.data().windows(2).all(|w| w[0] <= w[1]), "{:?}", up.data());
        assert_eq!(up.data(), &[0, 64, 191, 255]);

        let checker = Image::gray(2, 2, vec![0u8, 255, 255, 0]).unwrap();
        let r = resize(&checker, 3, 3).unwrap();
        assert_eq!(r.get(1, 1, 0), 128);

        assert!(resize(&checker, 0, 3).is_err());
    }

    #[test]
    fn center_crop_examples() {
        let img = Image::from_fn(4, 4, Channels::Gray, |x, y, _| (y * 4 + x) as u8).unwrap();
        assert_eq!(center_crop(&img, 4, 4).unwrap(), img);
        assert_eq!(
            PixelRect::centered(4, 4, 2, 2).unwrap(),
            PixelRect { x0: 1, y0: 1, w: 2, h: 2 }
        );
        assert_eq!(center_crop(&img, 2, 2).unwrap().data(), &[5, 6, 9, 10]);
        assert_eq!(
            PixelRect::centered(5, 5, 2, 2).unwrap(),
            PixelRect { x0: 1, y0: 1, w: 2, h: 2 }
        );
        assert!(center_crop(&img, 5, 2).is_err());
    }

    #[test]
    fn flip_is_involution() {
        let img = Image::rgb(2, 1, vec![1u8, 2, 3, 4, 5, 6]).unwrap();
        let f = img.flip_horizontal();
        assert_eq!(f.data(), &[4, 5, 6, 1, 2, 3]);
        assert_eq!(f.flip_horizontal(), img);
    }
}
