use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::jitter::ColorJitterParams;
use crate::error::{Error, Result};
use crate::filters::SketchParams;

/// Per-channel mean/std applied to samples scaled to `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NormalizeParams {
    pub mean: Vec<f32>,
    pub std: Vec<f32>,
}

impl NormalizeParams {
    pub fn imagenet() -> Self {
        NormalizeParams {
            mean: vec![0.485, 0.456, 0.406],
            std: vec![0.229, 0.224, 0.225],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.mean.len(), 1 | 3) || self.mean.len() != self.std.len() {
            return Err(Error::param(format!(
                "normalize needs 1 or 3 matching mean/std entries, got {} and {}",
                self.mean.len(),
                self.std.len()
            )));
        }
        if self.mean.iter().any(|m| !m.is_finite()) {
            return Err(Error::param("normalize.mean must be finite"));
        }
        if self.std.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::param("normalize.std must be > 0"));
        }
        Ok(())
    }
}

impl Default for NormalizeParams {
    fn default() -> Self {
        Self::imagenet()
    }
}

/// How the Tenengrad/ImageToSketch combinator picks a filter when it fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlternationMode {
    /// Tenengrad, ImageToSketch, Tenengrad, ... over successive activations.
    #[default]
    Alternate,
    /// Independent fair coin per activation.
    Coin,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StageOp {
    Resize {
        width: u32,
        height: u32,
    },
    CenterCrop {
        width: u32,
        height: u32,
    },
    HorizontalFlip,
    RandomRotate {
        max_deg: f64,
    },
    RandomShift {
        fx: f64,
        fy: f64,
    },
    ColorJitter(ColorJitterParams),
    Tenengrad,
    ImageToSketch(SketchParams),
    TenengradOrSketch {
        #[serde(default)]
        mode: AlternationMode,
        #[serde(default)]
        sketch: SketchParams,
    },
    Normalize(NormalizeParams),
}

impl StageOp {
    pub fn name(&self) -> &'static str {
        match self {
            StageOp::Resize { .. } => "Resize",
            StageOp::CenterCrop { .. } => "CenterCrop",
            StageOp::HorizontalFlip => "HorizontalFlip",
            StageOp::RandomRotate { .. } => "RandomRotate",
            StageOp::RandomShift { .. } => "RandomShift",
            StageOp::ColorJitter(_) => "ColorJitter",
            StageOp::Tenengrad => "Tenengrad",
            StageOp::ImageToSketch(_) => "ImageToSketch",
            StageOp::TenengradOrSketch { .. } => "Tenengrad+ImageToSketch",
            StageOp::Normalize(_) => "Normalize",
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            StageOp::Resize { width, height } | StageOp::CenterCrop { width, height } => {
                if *width == 0 || *height == 0 {
                    return Err(Error::param(format!("{}: size must be positive", self.name())));
                }
            }
            StageOp::RandomRotate { max_deg } => {
                if !(max_deg.is_finite() && *max_deg >= 0.0) {
                    return Err(Error::param(format!("RandomRotate: max_deg must be >= 0, got {max_deg}")));
                }
            }
            StageOp::RandomShift { fx, fy } => {
                for (axis, v) in [("fx", fx), ("fy", fy)] {
                    if !(0.0..1.0).contains(v) {
                        return Err(Error::param(format!("RandomShift: {axis} must lie in [0, 1), got {v}")));
                    }
                }
            }
            StageOp::ColorJitter(params) => params.validate()?,
            StageOp::ImageToSketch(params) | StageOp::TenengradOrSketch { sketch: params, .. } => {
                validate_sketch(params)?
            }
            StageOp::Normalize(params) => params.validate()?,
            StageOp::HorizontalFlip | StageOp::Tenengrad => {}
        }
        Ok(())
    }

    /// Whether the rendered token carries an explicit `(p)` when `p < 1`.
    fn shows_probability(&self) -> bool {
        matches!(
            self,
            StageOp::HorizontalFlip | StageOp::Tenengrad | StageOp::ImageToSketch(_) | StageOp::TenengradOrSketch { .. }
        )
    }
}

fn validate_sketch(params: &SketchParams) -> Result<()> {
    if params.blur_ksize < 3 || params.blur_ksize.is_multiple_of(2) {
        return Err(Error::param(format!(
            "ImageToSketch: blur_ksize must be odd and >= 3, got {}",
            params.blur_ksize
        )));
    }
    if params.open_size == 0 || params.dilate_size == 0 {
        return Err(Error::param("ImageToSketch: kernel sizes must be >= 1"));
    }
    Ok(())
}

fn always() -> f64 {
    1.0
}

fn is_always(p: &f64) -> bool {
    *p == 1.0
}

/// One pipeline step: an operation and the probability it is applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    #[serde(flatten)]
    pub op: StageOp,
    #[serde(default = "always", skip_serializing_if = "is_always")]
    pub p: f64,
    /// Overrides the rendered token in [`PipelineSpec::describe`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Stage {
    pub fn new(op: StageOp) -> Self {
        Stage { op, p: 1.0, label: None }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::param(format!("{}: p must lie in [0, 1], got {}", self.op.name(), self.p)));
        }
        self.op.validate()
    }

    /// Human-readable token in the usual `Name(args)` pipeline notation.
    pub fn token(&self) -> String {
        if let Some(label) = &self.label {
            return label.clone();
        }
        let base = match &self.op {
            StageOp::RandomRotate { max_deg } => format!("RandomRotate({max_deg}°)"),
            StageOp::RandomShift { fx, fy } => format!("RandomShift(x={fx}, y={fy})"),
            StageOp::ColorJitter(j) => format!(
                "ColorJitter(brightness={}, contrast={}, saturation={}, hue={})",
                j.brightness, j.contrast, j.saturation, j.hue
            ),
            other => other.name().to_string(),
        };
        if self.op.shows_probability() && self.p < 1.0 {
            format!("{base}(p)")
        } else {
            base
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// Ordered, seeded augmentation program. Serialized as
/// `{"name": ..., "seed": ..., "stages": [{"kind": ..., "p": ..., ...}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineSpec {
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    pub stages: Vec<Stage>,
}

impl PipelineSpec {
    pub fn new(name: impl Into<String>, seed: u64, stages: Vec<Stage>) -> Self {
        PipelineSpec {
            name: name.into(),
            seed,
            stages,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (i, stage) in self.stages.iter().enumerate() {
            stage
                .validate()
                .map_err(|e| Error::InvalidPipeline(format!("stage {i}: {e}")))?;
        }
        let normalize_at: Vec<usize> = self
            .stages
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s.op, StageOp::Normalize(_)))
            .map(|(i, _)| i)
            .collect();
        match normalize_at.as_slice() {
            [] => {}
            [i] if *i + 1 == self.stages.len() => {}
            [_] => return Err(Error::InvalidPipeline("Normalize must be the last stage".into())),
            _ => return Err(Error::InvalidPipeline("at most one Normalize stage is allowed".into())),
        }
        Ok(())
    }

    /// `A + B(p) + C(...)` rendering of the stage list.
    pub fn describe(&self) -> String {
        self.stages.iter().map(Stage::token).collect::<Vec<_>>().join(" + ")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: PipelineSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pipeline spec serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn is_deterministic(&self) -> bool {
        self.stages.iter().all(|s| {
            s.p == 1.0
                && matches!(
                    s.op,
                    StageOp::Resize { .. }
                        | StageOp::CenterCrop { .. }
                        | StageOp::HorizontalFlip
                        | StageOp::Tenengrad
                        | StageOp::ImageToSketch(_)
                        | StageOp::Normalize(_)
                )
        })
    }
}
