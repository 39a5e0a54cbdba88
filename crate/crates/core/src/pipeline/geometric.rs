//! Spatial augmentations: rotation, integer translation and mirroring.

use super::rng::SeededRng;
use crate::image::Image;

/// Rotates counter-clockwise by `degrees` about the image center with
/// bilinear sampling; samples falling outside the frame read as 0.
pub fn rotate(img: &Image<u8>, degrees: f64) -> Image<u8> {
    if degrees == 0.0 {
        return img.clone();
    }
    let (w, h) = img.dimensions();
    let ch = img.channels().count();
    let (sin, cos) = degrees.to_radians().sin_cos();
    let (cx, cy) = (w as f64 / 2.0, h as f64 / 2.0);
    let tap = |x: i64, y: i64, c: usize| -> f32 {
        if x < 0 || y < 0 || x >= w as i64 || y >= h as i64 {
            0.0
        } else {
            img.get(x as u32, y as u32, c) as f32
        }
    };

    let mut data = Vec::with_capacity(img.data().len());
    for y in 0..h {
        let dy = y as f64 + 0.5 - cy;
        for x in 0..w {
            let dx = x as f64 + 0.5 - cx;
            let sx = cx + dx * cos - dy * sin - 0.5;
            let sy = cy + dx * sin + dy * cos - 0.5;
            let (x0, y0) = (sx.floor(), sy.floor());
            let (fx, fy) = ((sx - x0) as f32, (sy - y0) as f32);
            let (x0, y0) = (x0 as i64, y0 as i64);
            for c in 0..ch {
                let top = tap(x0, y0, c) * (1.0 - fx) + tap(x0 + 1, y0, c) * fx;
                let bottom = tap(x0, y0 + 1, c) * (1.0 - fx) + tap(x0 + 1, y0 + 1, c) * fx;
                data.push(crate::image::quantize(top * (1.0 - fy) + bottom * fy));
            }
        }
    }
    Image::from_parts(w, h, img.channels(), data)
}

/// Rotation by an angle drawn from `U[-max_deg, max_deg]`. Returns the angle used.
pub fn random_rotate(img: &Image<u8>, max_deg: f64, rng: &mut SeededRng) -> (Image<u8>, f64) {
    let theta = rng.uniform_range(-max_deg, max_deg);
    (rotate(img, theta), theta)
}

/// Integer translation; `out(x, y) = in(x − dx, y − dy)`, vacated pixels are 0.
pub fn shift(img: &Image<u8>, dx: i64, dy: i64) -> Image<u8> {
    let (w, h) = img.dimensions();
    let ch = img.channels().count();
    let mut data = vec![0u8; img.data().len()];
    for y in 0..h as i64 {
        let sy = y - dy;
        if sy < 0 || sy >= h as i64 {
            continue;
        }
        for x in 0..w as i64 {
            let sx = x - dx;
            if sx < 0 || sx >= w as i64 {
                continue;
            }
            let dst = (y as usize * w as usize + x as usize) * ch;
            let src = (sy as usize * w as usize + sx as usize) * ch;
            data[dst..dst + ch].copy_from_slice(&img.data()[src..src + ch]);
        }
    }
    Image::from_parts(w, h, img.channels(), data)
}

/// Largest shift magnitude along an axis of `len` pixels.
pub fn shift_extent(fraction: f64, len: u32) -> i64 {
    (fraction * len as f64).round() as i64
}

/// Translation with `dx ∈ {−round(fx·W) … round(fx·W)}` and likewise `dy`.
pub fn random_shift(img: &Image<u8>, fx: f64, fy: f64, rng: &mut SeededRng) -> (Image<u8>, (i64, i64)) {
    let rx = shift_extent(fx, img.width());
    let ry = shift_extent(fy, img.height());
    let dx = rng.int_inclusive(-rx, rx);
    let dy = rng.int_inclusive(-ry, ry);
    (shift(img, dx, dy), (dx, dy))
}

/// Mirrors the image when a uniform draw falls below `p`.
pub fn horizontal_flip(img: &Image<u8>, rng: &mut SeededRng, p: f64) -> Image<u8> {
    if rng.uniform() < p {
        img.flip_horizontal()
    } else {
        img.clone()
    }
}
