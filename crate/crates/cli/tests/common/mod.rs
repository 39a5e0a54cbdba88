#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use geomaug_core::codec::save;
use geomaug_core::{Channels, Image};

pub fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_geomaug"));
    cmd.env_remove("GEOMAUG_LOG");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn geomaug")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn core_fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Small RGB test image whose content depends on `seed`.
pub fn sample(seed: u32, w: u32, h: u32) -> Image<u8> {
    Image::from_fn(w, h, Channels::Rgb, |x, y, c| {
        let v = (x * (3 + seed % 5) + y * (7 + c as u32) + seed * 31) % 256;
        if (x as i64 - w as i64 / 2).pow(2) + (y as i64 - h as i64 / 2).pow(2) < (w as i64 / 3).pow(2) {
            (v / 2 + 120) as u8
        } else {
            (v / 4) as u8
        }
    })
    .unwrap()
}

/// Writes `per_class[i]` images into class directories `class_i`.
pub fn dataset(root: &Path, per_class: &[usize], w: u32, h: u32) {
    let mut seed = 0;
    for (i, &n) in per_class.iter().enumerate() {
        let dir = root.join(format!("class_{i}"));
        std::fs::create_dir_all(&dir).unwrap();
        for j in 0..n {
            let name = if j % 3 == 2 { format!("img_{j:02}.jpg") } else { format!("img_{j:02}.png") };
            save(&sample(seed, w, h), dir.join(name)).unwrap();
            seed += 1;
        }
    }
}

/// Relative path → file bytes for every file under `root`.
pub fn tree(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().replace('\\', "/");
                out.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

pub fn subdirs(root: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(root)
        .unwrap()
        .map(|e| e.unwrap())
        .filter(|e| e.path().is_dir())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}
