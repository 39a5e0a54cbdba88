//! Deterministic geometric image augmentation.
//!
//! * [`image`] and [`codec`]: owned raster buffers, resizing, cropping, PNG/JPEG I/O.
//! * [`filters`]: Scharr gradients and the Tenengrad filter, Gaussian blur,
//!   divide-sketch, histogram equalization, morphology, and the
//!   ImageToSketch filter.
//! * [`pipeline`]: seeded stage composition and the named presets.
//! * [`metrics`]: affinity and diversity of augmentations from training logs.

pub mod codec;
mod error;
pub mod filters;
pub mod image;
pub mod metrics;
pub mod pipeline;

pub use error::{Error, Result};
pub use filters::{image_to_sketch, tenengrad, SketchParams};
pub use image::{Channels, FloatImage, GrayImage, Image, PixelRect};
pub use pipeline::{preset, Augmented, Pipeline, PipelineSpec, Stage, StageOp};
