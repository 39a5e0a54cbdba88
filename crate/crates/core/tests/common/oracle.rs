//! Naive reference implementations used as test oracles. Written directly
//! from the operation definitions, independent of the library's fast paths.
#![allow(dead_code)]

/// Reflect-101 by repeated folding, one step at a time.
pub fn reflect101(mut i: i64, n: i64) -> i64 {
    if n == 1 {
        return 0;
    }
    loop {
        if i < 0 {
            i = -i;
        } else if i >= n {
            i = 2 * (n - 1) - i;
        } else {
            return i;
        }
    }
}

pub fn replicate(i: i64, n: i64) -> i64 {
    if i < 0 {
        0
    } else if i >= n {
        n - 1
    } else {
        i
    }
}

pub const SCHARR_X: [[f32; 3]; 3] = [[-3.0, 0.0, 3.0], [-10.0, 0.0, 10.0], [-3.0, 0.0, 3.0]];
pub const SCHARR_Y: [[f32; 3]; 3] = [[-3.0, -10.0, -3.0], [0.0, 0.0, 0.0], [3.0, 10.0, 3.0]];

/// Nested-loop 3×3 correlation with reflect-101 borders.
pub fn convolve3x3(src: &[f32], w: usize, h: usize, k: &[[f32; 3]; 3]) -> Vec<f32> {
    let mut out = vec![0.0f32; w * h];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let mut acc = 0.0f32;
            for ky in 0..3i64 {
                for kx in 0..3i64 {
                    let sy = reflect101(y + ky - 1, h as i64) as usize;
                    let sx = reflect101(x + kx - 1, w as i64) as usize;
                    acc += k[ky as usize][kx as usize] * src[sy * w + sx];
                }
            }
            out[y as usize * w + x as usize] = acc;
        }
    }
    out
}

/// BT.601 luma with round-half-up.
pub fn luma(r: u8, g: u8, b: u8) -> u8 {
    let v = 0.299 * r as f64 + 0.587 * g as f64 + 0.114 * b as f64;
    (v + 0.5 + 1e-9).floor() as u8
}

/// Tenengrad on 8-bit gray samples: Scharr magnitude then min/max stretch.
pub fn tenengrad(gray: &[u8], w: usize, h: usize) -> Vec<u8> {
    let src: Vec<f32> = gray.iter().map(|&v| v as f32).collect();
    let gx = convolve3x3(&src, w, h, &SCHARR_X);
    let gy = convolve3x3(&src, w, h, &SCHARR_Y);
    let mag: Vec<f32> = gx
        .iter()
        .zip(&gy)
        .map(|(&a, &b)| ((a as f64).powi(2) + (b as f64).powi(2)).sqrt() as f32)
        .collect();
    let min = mag.iter().cloned().fold(f32::INFINITY, f32::min);
    let max = mag.iter().cloned().fold(f32::NEG_INFINITY, f32::max);
    if max <= min {
        return vec![0; mag.len()];
    }
    mag.iter()
        .map(|&v| (255.0 * (v as f64 - min as f64) / (max as f64 - min as f64)).round() as u8)
        .collect()
}

/// 1-D Gaussian taps tabulated directly from the density.
pub fn gaussian_taps(ksize: usize) -> Vec<f64> {
    let sigma = 0.3 * ((ksize as f64 - 1.0) * 0.5 - 1.0) + 0.8;
    let r = (ksize / 2) as f64;
    let raw: Vec<f64> = (0..ksize)
        .map(|i| (-((i as f64 - r).powi(2)) / (2.0 * sigma * sigma)).exp())
        .collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|v| v / s).collect()
}

/// Full 2-D Gaussian (non-separable) with reflect-101 borders, in f64.
pub fn gaussian_blur(src: &[f32], w: usize, h: usize, ksize: usize) -> Vec<f64> {
    let t = gaussian_taps(ksize);
    let r = (ksize / 2) as i64;
    let mut out = vec![0.0; w * h];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let mut acc = 0.0f64;
            for dy in -r..=r {
                for dx in -r..=r {
                    let sy = reflect101(y + dy, h as i64) as usize;
                    let sx = reflect101(x + dx, w as i64) as usize;
                    acc += t[(dy + r) as usize] * t[(dx + r) as usize] * src[sy * w + sx] as f64;
                }
            }
            out[y as usize * w + x as usize] = acc;
        }
    }
    out
}

/// Window extreme with replicate borders. The erosion window starts at
/// `-anchor`; the dilation window is its reflection.
pub fn morph(src: &[u8], w: usize, h: usize, sw: usize, sh: usize, dilate: bool) -> Vec<u8> {
    let (ax, ay) = (((sw - 1) / 2) as i64, ((sh - 1) / 2) as i64);
    let mut out = vec![0u8; w * h];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let mut best: Option<u8> = None;
            for j in 0..sh as i64 {
                for i in 0..sw as i64 {
                    let (ox, oy) = if dilate { (ax - i, ay - j) } else { (i - ax, j - ay) };
                    let sx = replicate(x + ox, w as i64) as usize;
                    let sy = replicate(y + oy, h as i64) as usize;
                    let v = src[sy * w + sx];
                    best = Some(match best {
                        None => v,
                        Some(b) if dilate => b.max(v),
                        Some(b) => b.min(v),
                    });
                }
            }
            out[y as usize * w + x as usize] = best.unwrap();
        }
    }
    out
}

/// Equalization by counting, for every pixel, how many pixels are ≤ it.
pub fn equalize(src: &[u8]) -> Vec<u8> {
    let n = src.len() as u64;
    let min_level = *src.iter().min().unwrap();
    let cdf_min = src.iter().filter(|&&v| v == min_level).count() as u64;
    if cdf_min == n {
        return src.to_vec();
    }
    src.iter()
        .map(|&v| {
            let cdf = src.iter().filter(|&&u| u <= v).count() as u64;
            let num = 255 * (cdf - cdf_min);
            let den = n - cdf_min;
            // nearest integer, ties upward: floor(num/den + 1/2)
            let q = num / den;
            let rem = num % den;
            (if 2 * rem >= den { q + 1 } else { q }) as u8
        })
        .collect()
}

/// Largest deviation, over occupied levels, between the min-excluded CDF
/// `(cdf(v) − cdf_min) / (N − cdf_min)` and the level's relative position
/// `(v − lo) / (hi − lo)` in the occupied range.
pub fn cdf_linearity_gap(src: &[u8]) -> f64 {
    let n = src.len() as f64;
    let lo = *src.iter().min().unwrap() as f64;
    let hi = *src.iter().max().unwrap() as f64;
    let cdf_min = src.iter().filter(|&&v| v as f64 == lo).count() as f64;
    let mut gap: f64 = 0.0;
    for level in 0..=255u8 {
        if !src.contains(&level) {
            continue;
        }
        let cdf = src.iter().filter(|&&u| u <= level).count() as f64;
        let f = (cdf - cdf_min) / (n - cdf_min);
        gap = gap.max((f - (level as f64 - lo) / (hi - lo)).abs());
    }
    gap
}
