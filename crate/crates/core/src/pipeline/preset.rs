//! The named augmentation pipelines.
//!
//! Probability mapping, stage by stage:
//!
//! * `Resize`, `CenterCrop` and `Normalize` always run (`p = 1`).
//! * In the conventional and geometric presets every stochastic stage
//!   (flip, rotation, shift, jitter and the geometric filter) fires with
//!   `p = 0.4`; the Tenengrad+ImageToSketch combinator fires with `p = 0.5`.
//! * Rotate-and-Flip always draws a rotation angle and flips with
//!   `p = 0.5`, the usual semantics of a "random" flip.
//!
//! Presets that crop resize to 256 first and then center-crop to 224.

use super::jitter::ColorJitterParams;
use super::stage::{AlternationMode, NormalizeParams, PipelineSpec, Stage, StageOp};
use crate::error::{Error, Result};
use crate::filters::SketchParams;

pub const INPUT_SIZE: u32 = 224;
pub const RESIZE_BEFORE_CROP: u32 = 256;
pub const STAGE_PROBABILITY: f64 = 0.4;
pub const COMBINATOR_PROBABILITY: f64 = 0.5;
pub const ROTATE_AND_FLIP_FLIP_PROBABILITY: f64 = 0.5;

pub const PRESET_NAMES: [&str; 5] = [
    "conventional",
    "tenengrad",
    "imagetosketch",
    "tenengrad+imagetosketch",
    "rotate-and-flip",
];

fn resize(size: u32) -> Stage {
    Stage::new(StageOp::Resize {
        width: size,
        height: size,
    })
}

fn center_crop() -> Stage {
    Stage::new(StageOp::CenterCrop {
        width: INPUT_SIZE,
        height: INPUT_SIZE,
    })
}

fn rotate(max_deg: f64) -> Stage {
    Stage::new(StageOp::RandomRotate { max_deg })
}

fn shift() -> Stage {
    Stage::new(StageOp::RandomShift { fx: 0.05, fy: 0.05 }).with_p(STAGE_PROBABILITY)
}

fn jitter() -> Stage {
    Stage::new(StageOp::ColorJitter(ColorJitterParams::new(0.2, 0.3, 0.3, 0.3))).with_p(STAGE_PROBABILITY)
}

fn normalize() -> Stage {
    Stage::new(StageOp::Normalize(NormalizeParams::imagenet()))
}

fn geometric(filter: Stage) -> Vec<Stage> {
    vec![
        resize(RESIZE_BEFORE_CROP),
        center_crop(),
        Stage::new(StageOp::HorizontalFlip).with_p(STAGE_PROBABILITY),
        rotate(10.0).with_p(STAGE_PROBABILITY),
        filter,
        shift().labeled("RandomShift(p, percent)"),
        jitter(),
        normalize(),
    ]
}

/// Looks up a preset by name (case-insensitive).
pub fn preset(name: &str) -> Result<PipelineSpec> {
    let key = name.trim().to_ascii_lowercase();
    let (canonical, stages) = match key.as_str() {
        "conventional" => (
            "Conventional",
            vec![
                resize(INPUT_SIZE),
                rotate(10.0).with_p(STAGE_PROBABILITY),
                shift(),
                jitter(),
                normalize(),
            ],
        ),
        "tenengrad" => (
            "Tenengrad",
            geometric(Stage::new(StageOp::Tenengrad).with_p(STAGE_PROBABILITY)),
        ),
        "imagetosketch" | "image-to-sketch" => (
            "ImageToSketch",
            geometric(Stage::new(StageOp::ImageToSketch(SketchParams::default())).with_p(STAGE_PROBABILITY)),
        ),
        "tenengrad+imagetosketch" => (
            "Tenengrad+ImageToSketch",
            geometric(
                Stage::new(StageOp::TenengradOrSketch {
                    mode: AlternationMode::Alternate,
                    sketch: SketchParams::default(),
                })
                .with_p(COMBINATOR_PROBABILITY),
            ),
        ),
        "rotate-and-flip" => (
            "Rotate-and-Flip",
            vec![
                resize(RESIZE_BEFORE_CROP),
                center_crop(),
                rotate(90.0),
                Stage::new(StageOp::HorizontalFlip)
                    .with_p(ROTATE_AND_FLIP_FLIP_PROBABILITY)
                    .labeled("RandomHorizontalFlip"),
                normalize(),
            ],
        ),
        _ => {
            return Err(Error::UnknownPreset {
                name: name.to_string(),
                valid: PRESET_NAMES.join(", "),
            })
        }
    };
    Ok(PipelineSpec::new(canonical, 0, stages))
}

pub fn all_presets() -> Vec<PipelineSpec> {
    PRESET_NAMES
        .iter()
        .map(|n| preset(n).expect("built-in preset"))
        .collect()
}
