//! Gradient, smoothing, equalization and morphology filters, and the two
//! composite geometric filters built from them: [`tenengrad`] and
//! [`image_to_sketch`].

mod blur;
pub mod border;
mod convolve;
mod equalize;
mod gradient;
mod morphology;
mod sketch;

pub use blur::{gaussian_blur, gaussian_kernel, sigma_for_ksize};
pub use convolve::{convolve3x3, Kernel3x3};
pub use equalize::equalize_hist;
pub use gradient::{scharr_gradient, scharr_gradient_f32, tenengrad, GradientField};
pub use morphology::{dilate, erode, morph_open, StructuringElement};
pub use sketch::{divide_sketch, image_to_sketch, SketchParams, SKETCH_EPSILON};
