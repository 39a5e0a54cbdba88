//! Inputs shared by the criterion benchmarks.

use geomaug_core::{Channels, Image};

/// Deterministic RGB test card with smooth gradients and a bright disc.
pub fn test_card(width: u32, height: u32) -> Image<u8> {
    let (cx, cy) = (width as f32 / 2.0, height as f32 / 2.0);
    let r = width.min(height) as f32 / 3.0;
    Image::from_fn(width, height, Channels::Rgb, |x, y, c| {
        let d = ((x as f32 - cx).powi(2) + (y as f32 - cy).powi(2)).sqrt();
        let base = if d < r { 200.0 } else { 40.0 };
        let v = base + 30.0 * ((x as f32 * 0.11 + c as f32).sin() * (y as f32 * 0.07).cos());
        v.clamp(0.0, 255.0) as u8
    })
    .expect("valid dimensions")
}
