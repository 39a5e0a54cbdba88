#![allow(dead_code)]

pub mod oracle;

use geomaug_core::{Channels, Image};
use proptest::prelude::*;

pub fn gray_u8(w: u32, h: u32) -> impl Strategy<Value = Image<u8>> {
    prop::collection::vec(any::<u8>(), (w * h) as usize).prop_map(move |d| Image::gray(w, h, d).unwrap())
}

pub fn rgb_u8(w: u32, h: u32) -> impl Strategy<Value = Image<u8>> {
    prop::collection::vec(any::<u8>(), (w * h * 3) as usize).prop_map(move |d| Image::rgb(w, h, d).unwrap())
}

/// Gray images with a small number of distinct levels, which stresses
/// histogram ties and flat regions.
pub fn gray_few_levels(w: u32, h: u32) -> impl Strategy<Value = Image<u8>> {
    (prop::collection::vec(any::<u8>(), 1..6), prop::collection::vec(any::<prop::sample::Index>(), (w * h) as usize))
        .prop_map(move |(levels, picks)| {
            let data = picks.iter().map(|i| levels[i.index(levels.len())]).collect();
            Image::gray(w, h, data).unwrap()
        })
}

pub fn gray_f32(w: u32, h: u32) -> impl Strategy<Value = Image<f32>> {
    prop::collection::vec(-255.0f32..255.0, (w * h) as usize).prop_map(move |d| Image::gray(w, h, d).unwrap())
}

/// Deterministic RNG for non-proptest loops (xorshift64*).
pub struct Xorshift(u64);

impl Xorshift {
    pub fn new(seed: u64) -> Self {
        Xorshift(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    pub fn gray(&mut self, w: u32, h: u32) -> Image<u8> {
        let data = (0..w * h).map(|_| (self.next_u64() >> 56) as u8).collect();
        Image::gray(w, h, data).unwrap()
    }
}

/// Synthetic pollen-like grain: textured bright ellipse with a darker rim on
/// a dark, slightly noisy background.
pub fn grain(width: u32, height: u32) -> Image<u8> {
    let (cx, cy) = (width as f64 * 0.52, height as f64 * 0.47);
    let (rx, ry) = (width as f64 * 0.33, height as f64 * 0.28);
    Image::from_fn(width, height, Channels::Rgb, |x, y, c| {
        let dx = (x as f64 - cx) / rx;
        let dy = (y as f64 - cy) / ry;
        let r = (dx * dx + dy * dy).sqrt();
        let texture = 18.0 * ((x as f64 * 0.9).sin() * (y as f64 * 0.7).cos());
        let tint = [1.0, 0.85, 0.6][c];
        let v = if r < 0.8 {
            170.0 + texture
        } else if r < 1.0 {
            90.0 + texture * 0.5
        } else {
            25.0 + ((x * 7 + y * 13 + c as u32 * 5) % 11) as f64
        };
        (v * tint).round().clamp(0.0, 255.0) as u8
    })
    .unwrap()
}
