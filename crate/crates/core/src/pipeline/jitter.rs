//! Brightness / contrast / saturation / hue jitter.

use serde::{Deserialize, Serialize};

use super::rng::SeededRng;
use crate::error::{Error, Result};
use crate::image::{quantize, Channels, Image};

/// Jitter magnitudes. Brightness, contrast and saturation factors are drawn
/// from `U[max(0, 1 − m), 1 + m]`; the hue shift from `U[−hue, hue]` as a
/// fraction of the hue circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColorJitterParams {
    pub brightness: f64,
    pub contrast: f64,
    pub saturation: f64,
    pub hue: f64,
    /// Leave single-channel images untouched instead of replicating them to RGB.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub skip_on_gray: bool,
}

impl ColorJitterParams {
    pub fn new(brightness: f64, contrast: f64, saturation: f64, hue: f64) -> Self {
        ColorJitterParams {
            brightness,
            contrast,
            saturation,
            hue,
            skip_on_gray: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("brightness", self.brightness),
            ("contrast", self.contrast),
            ("saturation", self.saturation),
            ("hue", self.hue),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::param(format!("color_jitter.{name} must be >= 0, got {v}")));
            }
        }
        if self.hue > 0.5 {
            return Err(Error::param(format!("color_jitter.hue must be <= 0.5, got {}", self.hue)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adjustment {
    Brightness,
    Contrast,
    Saturation,
    Hue,
}

/// Concrete factors for one jitter application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JitterFactors {
    pub brightness: f64,
    pub contrast: f64,
    pub saturation: f64,
    pub hue: f64,
    pub order: [Adjustment; 4],
}

impl JitterFactors {
    pub const IDENTITY: JitterFactors = JitterFactors {
        brightness: 1.0,
        contrast: 1.0,
        saturation: 1.0,
        hue: 0.0,
        order: [
            Adjustment::Brightness,
            Adjustment::Contrast,
            Adjustment::Saturation,
            Adjustment::Hue,
        ],
    };

    pub fn sample(params: &ColorJitterParams, rng: &mut SeededRng) -> Self {
        let mut order = Self::IDENTITY.order;
        rng.shuffle(&mut order);
        let around_one = |rng: &mut SeededRng, m: f64| rng.uniform_range((1.0 - m).max(0.0), 1.0 + m);
        JitterFactors {
            brightness: around_one(rng, params.brightness),
            contrast: around_one(rng, params.contrast),
            saturation: around_one(rng, params.saturation),
            hue: rng.uniform_range(-params.hue, params.hue),
            order,
        }
    }
}

pub fn color_jitter(img: &Image<u8>, params: &ColorJitterParams, rng: &mut SeededRng) -> (Image<u8>, JitterFactors) {
    let factors = JitterFactors::sample(params, rng);
    if params.skip_on_gray && img.channels() == Channels::Gray {
        return (img.clone(), factors);
    }
    (apply_jitter(img, &factors), factors)
}

/// Applies `factors` in their stored order; gray input is replicated to RGB.
pub fn apply_jitter(img: &Image<u8>, factors: &JitterFactors) -> Image<u8> {
    let rgb = img.to_rgb();
    let mut px: Vec<[f32; 3]> = rgb
        .data()
        .chunks_exact(3)
        .map(|p| [p[0] as f32, p[1] as f32, p[2] as f32])
        .collect();
    for step in factors.order {
        match step {
            Adjustment::Brightness if factors.brightness != 1.0 => {
                let b = factors.brightness as f32;
                px.iter_mut().flatten().for_each(|v| *v = (*v * b).clamp(0.0, 255.0));
            }
            Adjustment::Contrast if factors.contrast != 1.0 => {
                let c = factors.contrast as f32;
                let mean = (px.iter().map(|p| luma(p) as f64).sum::<f64>() / px.len() as f64) as f32;
                px.iter_mut()
                    .flatten()
                    .for_each(|v| *v = (c * (*v - mean) + mean).clamp(0.0, 255.0));
            }
            Adjustment::Saturation if factors.saturation != 1.0 => {
                let s = factors.saturation as f32;
                for p in &mut px {
                    let g = luma(p);
                    p.iter_mut().for_each(|v| *v = (s * *v + (1.0 - s) * g).clamp(0.0, 255.0));
                }
            }
            Adjustment::Hue if factors.hue != 0.0 => {
                for p in &mut px {
                    *p = shift_hue(*p, factors.hue as f32);
                }
            }
            _ => {}
        }
    }
    let data = px.iter().flatten().map(|&v| quantize(v)).collect();
    Image::from_parts(rgb.width(), rgb.height(), Channels::Rgb, data)
}

#[inline]
fn luma(p: &[f32; 3]) -> f32 {
    0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]
}

fn shift_hue(p: [f32; 3], shift: f32) -> [f32; 3] {
    let [r, g, b] = p.map(|v| v / 255.0);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    if delta == 0.0 {
        return p;
    }
    let sat = delta / max;
    let hue = if max == r {
        ((g - b) / delta).rem_euclid(6.0)
    } else if max == g {
        (b - r) / delta + 2.0
    } else {
        (r - g) / delta + 4.0
    } / 6.0;
    let hue = (hue + shift).rem_euclid(1.0);

    let h6 = hue * 6.0;
    let sector = h6.floor();
    let f = h6 - sector;
    let v = max;
    let p_ = v * (1.0 - sat);
    let q = v * (1.0 - sat * f);
    let t = v * (1.0 - sat * (1.0 - f));
    let (r, g, b) = match sector as i32 % 6 {
        0 => (v, t, p_),
        1 => (q, v, p_),
        2 => (p_, v, t),
        3 => (p_, q, v),
        4 => (t, p_, v),
        _ => (v, p_, q),
    };
    [r * 255.0, g * 255.0, b * 255.0]
}
