use super::border::replicate;
use crate::error::{Error, Result};
use crate::image::{Channels, GrayImage, Image};

/// Rectangular all-ones structuring element.
///
/// The anchor sits at `((w − 1) / 2, (h − 1) / 2)`: the center for odd sizes,
/// the top-left cell of the central block for even sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuringElement {
    width: u32,
    height: u32,
}

impl StructuringElement {
    pub fn new(width: u32, height: u32) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::param(format!(
                "structuring element must be at least 1x1, got {width}x{height}"
            )));
        }
        Ok(StructuringElement { width, height })
    }

    pub fn square(size: u32) -> Result<Self> {
        Self::new(size, size)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn anchor(&self) -> (u32, u32) {
        ((self.width - 1) / 2, (self.height - 1) / 2)
    }
}

#[derive(Clone, Copy)]
enum Extremum {
    Min,
    Max,
}

impl Extremum {
    #[inline]
    fn pick(self, a: u8, b: u8) -> u8 {
        match self {
            Extremum::Min => a.min(b),
            Extremum::Max => a.max(b),
        }
    }
}

/// Window minimum over the element placed with its anchor on each pixel.
pub fn erode(img: &GrayImage, se: &StructuringElement) -> Result<GrayImage> {
    let (ax, ay) = se.anchor();
    rank_filter(img, se, (-(ax as isize), -(ay as isize)), Extremum::Min)
}

/// Window maximum over the reflected element, so that
/// `erode ≤ id ≤ dilate` and `open ≤ id` hold for every element size.
pub fn dilate(img: &GrayImage, se: &StructuringElement) -> Result<GrayImage> {
    let (ax, ay) = se.anchor();
    let start_x = ax as isize - se.width as isize + 1;
    let start_y = ay as isize - se.height as isize + 1;
    rank_filter(img, se, (start_x, start_y), Extremum::Max)
}

pub fn morph_open(img: &GrayImage, se: &StructuringElement) -> Result<GrayImage> {
    dilate(&erode(img, se)?, se)
}

/// Separable rectangular min/max with replicated borders; `start` is the
/// window offset relative to the output pixel.
fn rank_filter(
    img: &GrayImage,
    se: &StructuringElement,
    start: (isize, isize),
    op: Extremum,
) -> Result<GrayImage> {
    img.require_gray()?;
    if se.width == 1 && se.height == 1 {
        return Ok(img.clone());
    }
    let (w, h) = (img.width() as usize, img.height() as usize);
    let src = img.data();

    let mut rows = Vec::with_capacity(w * h);
    for row in src.chunks_exact(w) {
        for x in 0..w as isize {
            let first = row[replicate(x + start.0, w)];
            let v = (1..se.width as isize).fold(first, |acc, d| op.pick(acc, row[replicate(x + start.0 + d, w)]));
            rows.push(v);
        }
    }

    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        let first = replicate(y + start.1, h) * w;
        let mut line = rows[first..first + w].to_vec();
        for d in 1..se.height as isize {
            let r = replicate(y + start.1 + d, h) * w;
            for (acc, &v) in line.iter_mut().zip(&rows[r..r + w]) {
                *acc = op.pick(*acc, v);
            }
        }
        out.extend_from_slice(&line);
    }
    Ok(Image::from_parts(w as u32, h as u32, Channels::Gray, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern() -> GrayImage {
        Image::from_fn(9, 7, Channels::Gray, |x, y, _| ((x * 53 + y * 29 + x * y) % 256) as u8).unwrap()
    }

    #[test]
    fn singleton_is_identity() {
        let img = pattern();
        let se = StructuringElement::square(1).unwrap();
        assert_eq!(morph_open(&img, &se).unwrap(), img);
        assert_eq!(erode(&img, &se).unwrap(), img);
        assert_eq!(dilate(&img, &se).unwrap(), img);
    }

    #[test]
    fn constant_is_preserved() {
        let img = Image::filled(5, 5, Channels::Gray, 33u8).unwrap();
        let se = StructuringElement::new(3, 2).unwrap();
        assert_eq!(dilate(&img, &se).unwrap(), img);
        assert_eq!(erode(&img, &se).unwrap(), img);
    }

    #[test]
    fn dilate_2x2_impulse_gives_block() {
        let img = Image::from_fn(6, 6, Channels::Gray, |x, y, _| if (x, y) == (2, 3) { 255 } else { 0 }).unwrap();
        let out = dilate(&img, &StructuringElement::square(2).unwrap()).unwrap();
        let lit: Vec<(u32, u32)> = (0..6)
            .flat_map(|y| (0..6).map(move |x| (x, y)))
            .filter(|&(x, y)| out.get(x, y, 0) == 255)
            .collect();
        assert_eq!(lit, vec![(2, 3), (3, 3), (2, 4), (3, 4)]);
        assert!(out.data().iter().all(|&v| v == 0 || v == 255));
    }

    #[test]
    fn ordering_holds_for_even_elements() {
        let img = pattern();
        for (w, h) in [(2, 2), (4, 1), (3, 3), (2, 5)] {
            let se = StructuringElement::new(w, h).unwrap();
            let e = erode(&img, &se).unwrap();
            let d = dilate(&img, &se).unwrap();
            let o = morph_open(&img, &se).unwrap();
            for i in 0..img.data().len() {
                assert!(e.data()[i] <= img.data()[i]);
                assert!(img.data()[i] <= d.data()[i]);
                assert!(o.data()[i] <= img.data()[i]);
            }
        }
    }

    #[test]
    fn rejects_empty_element() {
        assert!(StructuringElement::new(0, 2).is_err());
        assert_eq!(StructuringElement::square(2).unwrap().anchor(), (0, 0));
        assert_eq!(StructuringElement::square(3).unwrap().anchor(), (1, 1));
    }
}
