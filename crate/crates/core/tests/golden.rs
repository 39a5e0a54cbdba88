//! Frozen input/output PNG pairs. Set `GEOMAUG_REGEN=1` to rewrite them.

mod common;

use std::path::PathBuf;

use geomaug_core::codec::{decode, save};
use geomaug_core::{image_to_sketch, tenengrad, Channels, Image, SketchParams};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn regen() -> bool {
    std::env::var("GEOMAUG_REGEN").is_ok_and(|v| v == "1")
}

fn step_edge() -> Image<u8> {
    Image::from_fn(8, 8, Channels::Gray, |x, _, _| if x < 4 { 40 } else { 200 }).unwrap()
}

fn check(input_name: &str, make_input: impl Fn() -> Image<u8>) {
    let dir = fixtures();
    let input_path = dir.join(format!("{input_name}.png"));
    if regen() {
        std::fs::create_dir_all(&dir).unwrap();
        save(&make_input(), &input_path).unwrap();
    }
    let input = decode(&input_path).unwrap_or_else(|e| panic!("{e}; run with GEOMAUG_REGEN=1"));
    assert_eq!(input, make_input(), "{input_name} input drifted");
    let outputs = [
        ("tenengrad", tenengrad(&input).unwrap()),
        ("sketch", image_to_sketch(&input, &SketchParams::default()).unwrap()),
    ];
    for (kind, out) in outputs {
        let path = dir.join(format!("{input_name}_{kind}.png"));
        if regen() {
            save(&out, &path).unwrap();
        }
        let golden = decode(&path).unwrap_or_else(|e| panic!("{e}; run with GEOMAUG_REGEN=1"));
        assert_eq!(out, golden, "{} differs from golden", path.display());
    }
}

#[test]
fn grain_224() {
    check("grain_224", || common::grain(224, 224));
}

#[test]
fn step_edge_8() {
    check("step_edge_8", step_edge);
}

#[test]
fn step_edge_tenengrad_is_hand_computable() {
    // interior gradient is 10 * 160 on the two columns next to the edge
    let out = tenengrad(&step_edge()).unwrap();
    for y in 0..8 {
        let row: Vec<u8> = (0..8).map(|x| out.get(x, y, 0)).collect();
        assert_eq!(row, [0, 0, 0, 255, 255, 0, 0, 0]);
    }
}
