//! Seeded, probabilistic composition of augmentation stages.
//!
//! Each stage at position `s` processing image `index` draws from its own
//! [`SeededRng`] stream keyed by `(seed, s, index)`. The first draw decides
//! whether the stage fires (`u < p`); later draws feed its parameters. A
//! result is therefore a pure function of the spec, the input and the index,
//! whatever order images are processed in.

mod geometric;
mod jitter;
mod preset;
mod rng;
mod stage;

use std::fmt;
use std::sync::Mutex;

pub use geometric::{horizontal_flip, random_rotate, random_shift, rotate, shift, shift_extent};
pub use jitter::{apply_jitter, color_jitter, Adjustment, ColorJitterParams, JitterFactors};
pub use preset::{
    all_presets, preset, COMBINATOR_PROBABILITY, INPUT_SIZE, PRESET_NAMES, RESIZE_BEFORE_CROP, STAGE_PROBABILITY,
};
pub use rng::SeededRng;
pub use stage::{AlternationMode, NormalizeParams, PipelineSpec, Stage, StageOp};

use crate::error::{Error, Result};
use crate::filters::{image_to_sketch, tenengrad};
use crate::image::{center_crop, quantize, resize, FloatImage, Image};

/// Output of a pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub enum Augmented {
    /// No Normalize stage ran; 8-bit pixels.
    Pixels(Image<u8>),
    /// Normalized float tensor plus the constants that produced it.
    Normalized { tensor: FloatImage, params: NormalizeParams },
}

impl Augmented {
    pub fn dimensions(&self) -> (u32, u32) {
        match self {
            Augmented::Pixels(img) => img.dimensions(),
            Augmented::Normalized { tensor, .. } => tensor.dimensions(),
        }
    }

    /// 8-bit view; normalized tensors are mapped back through their mean/std.
    pub fn to_u8(&self) -> Image<u8> {
        match self {
            Augmented::Pixels(img) => img.clone(),
            Augmented::Normalized { tensor, params } => {
                let ch = tensor.channels().count();
                let data = tensor
                    .data()
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        let c = (i % ch).min(params.mean.len() - 1);
                        quantize((x * params.std[c] + params.mean[c]) * 255.0)
                    })
                    .collect();
                Image::from_parts(tensor.width(), tensor.height(), tensor.channels(), data)
            }
        }
    }

    /// Float samples: the tensor itself, or raw pixel values.
    pub fn to_f32(&self) -> FloatImage {
        match self {
            Augmented::Pixels(img) => img.convert(),
            Augmented::Normalized { tensor, .. } => tensor.clone(),
        }
    }
}

/// A stage that fired while processing one image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub position: usize,
    pub kind: &'static str,
    /// Filter chosen by the combinator stage.
    pub detail: Option<&'static str>,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.detail {
            Some(d) => write!(f, "{}[{}]", self.kind, d),
            None => f.write_str(self.kind),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace(pub Vec<TraceEntry>);

impl Trace {
    pub fn entries(&self) -> &[TraceEntry] {
        &self.0
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&tokens.join(" > "))
    }
}

/// A validated [`PipelineSpec`] ready to run. Shareable across threads.
#[derive(Debug)]
pub struct Pipeline {
    spec: PipelineSpec,
    /// Per stage: for alternating combinators, `counts[j]` = activations at indices `< j`.
    activations: Vec<Option<Mutex<Vec<u64>>>>,
}

impl Pipeline {
    pub fn new(spec: PipelineSpec) -> Result<Self> {
        spec.validate()?;
        let activations = spec
            .stages
            .iter()
            .map(|s| match s.op {
                StageOp::TenengradOrSketch {
                    mode: AlternationMode::Alternate,
                    ..
                } => Some(Mutex::new(vec![0])),
                _ => None,
            })
            .collect();
        Ok(Pipeline { spec, activations })
    }

    pub fn spec(&self) -> &PipelineSpec {
        &self.spec
    }

    pub fn seed(&self) -> u64 {
        self.spec.seed
    }

    fn stream(&self, position: usize, index: u64) -> SeededRng {
        SeededRng::for_stage(self.spec.seed, position, index)
    }

    /// Whether the stage at `position` fires for image `index`.
    pub fn fires(&self, position: usize, index: u64) -> bool {
        self.stream(position, index).uniform() < self.spec.stages[position].p
    }

    /// Number of times the stage fired over indices `0..index`.
    fn activations_before(&self, position: usize, index: u64) -> u64 {
        let cache = self.activations[position].as_ref().expect("alternating stage");
        let mut counts = cache.lock().unwrap_or_else(|e| e.into_inner());
        while counts.len() as u64 <= index {
            let j = counts.len() as u64 - 1;
            let next = counts[j as usize] + u64::from(self.fires(position, j));
            counts.push(next);
        }
        counts[index as usize]
    }

    pub fn apply(&self, img: &Image<u8>, index: u64) -> Result<Augmented> {
        self.apply_traced(img, index).map(|(out, _)| out)
    }

    pub fn apply_traced(&self, img: &Image<u8>, index: u64) -> Result<(Augmented, Trace)> {
        let mut current = img.clone();
        let mut trace = Trace::default();
        for (position, stage) in self.spec.stages.iter().enumerate() {
            let mut rng = self.stream(position, index);
            if rng.uniform() >= stage.p {
                continue;
            }
            let wrap = |e: Error| Error::Stage {
                stage: stage.op.name().to_string(),
                index,
                source: Box::new(e),
            };
            let mut detail = None;
            current = match &stage.op {
                StageOp::Resize { width, height } => resize(&current, *width, *height).map_err(wrap)?,
                StageOp::CenterCrop { width, height } => center_crop(&current, *width, *height).map_err(wrap)?,
                StageOp::HorizontalFlip => current.flip_horizontal(),
                StageOp::RandomRotate { max_deg } => random_rotate(&current, *max_deg, &mut rng).0,
                StageOp::RandomShift { fx, fy } => random_shift(&current, *fx, *fy, &mut rng).0,
                StageOp::ColorJitter(params) => color_jitter(&current, params, &mut rng).0,
                StageOp::Tenengrad => tenengrad(&current).map_err(wrap)?,
                StageOp::ImageToSketch(params) => image_to_sketch(&current, params).map_err(wrap)?,
                StageOp::TenengradOrSketch { mode, sketch } => {
                    let use_tenengrad = match mode {
                        AlternationMode::Alternate => self.activations_before(position, index).is_multiple_of(2),
                        AlternationMode::Coin => rng.uniform() < 0.5,
                    };
                    if use_tenengrad {
                        detail = Some("Tenengrad");
                        tenengrad(&current).map_err(wrap)?
                    } else {
                        detail = Some("ImageToSketch");
                        image_to_sketch(&current, sketch).map_err(wrap)?
                    }
                }
                StageOp::Normalize(params) => {
                    trace.0.push(TraceEntry {
                        position,
                        kind: stage.op.name(),
                        detail: None,
                    });
                    log::debug!("image {index}: {trace}");
                    let tensor = normalize(&current, params);
                    return Ok((
                        Augmented::Normalized {
                            tensor,
                            params: params.clone(),
                        },
                        trace,
                    ));
                }
            };
            trace.0.push(TraceEntry {
                position,
                kind: stage.op.name(),
                detail,
            });
        }
        log::debug!("image {index}: {trace}");
        Ok((Augmented::Pixels(current), trace))
    }
}

/// `(v / 255 − mean[c]) / std[c]`; gray input is replicated when three
/// channel constants are given.
pub fn normalize(img: &Image<u8>, params: &NormalizeParams) -> FloatImage {
    let src = if params.mean.len() == 3 { img.to_rgb() } else { img.clone() };
    let ch = src.channels().count();
    let data = src
        .data()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let c = (i % ch).min(params.mean.len() - 1);
            (v as f32 / 255.0 - params.mean[c]) / params.std[c]
        })
        .collect();
    Image::from_parts(src.width(), src.height(), src.channels(), data)
}

/// Runs `spec` on one image. Builds a fresh [`Pipeline`]; prefer reusing one
/// when processing many images.
pub fn apply(spec: &PipelineSpec, img: &Image<u8>, index: u64) -> Result<Augmented> {
    Pipeline::new(spec.clone())?.apply(img, index)
}
