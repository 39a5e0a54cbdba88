//! PNG/JPEG file I/O backed by the `image` crate.

use std::path::Path;

use image::{DynamicImage, ImageFormat as ExtFormat};

use crate::error::{Error, Result};
use crate::image::{Channels, Image};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Png,
    Jpeg,
}

impl ImageFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "png" => Some(ImageFormat::Png),
            "jpg" | "jpeg" => Some(ImageFormat::Jpeg),
            _ => None,
        }
    }

    fn external(self) -> ExtFormat {
        match self {
            ImageFormat::Png => ExtFormat::Png,
            ImageFormat::Jpeg => ExtFormat::Jpeg,
        }
    }
}

/// Decodes a PNG or JPEG file. Gray inputs stay single-channel, everything
/// else becomes 8-bit RGB (alpha is dropped).
pub fn decode(path: impl AsRef<Path>) -> Result<Image<u8>> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_bytes(&bytes).map_err(|message| Error::Codec {
        path: path.to_path_buf(),
        message,
    })
}

pub fn decode_bytes(bytes: &[u8]) -> Result<Image<u8>, String> {
    let format = image::guess_format(bytes).map_err(|e| e.to_string())?;
    if !matches!(format, ExtFormat::Png | ExtFormat::Jpeg) {
        return Err(format!("unsupported format {format:?}"));
    }
    let dynamic = image::load_from_memory_with_format(bytes, format).map_err(|e| e.to_string())?;
    let (channels, width, height, data) = match dynamic {
        DynamicImage::ImageLuma8(buf) => (Channels::Gray, buf.width(), buf.height(), buf.into_raw()),
        DynamicImage::ImageLuma16(_) | DynamicImage::ImageLumaA8(_) | DynamicImage::ImageLumaA16(_) => {
            let buf = dynamic.to_luma8();
            (Channels::Gray, buf.width(), buf.height(), buf.into_raw())
        }
        other => {
            let buf = other.to_rgb8();
            (Channels::Rgb, buf.width(), buf.height(), buf.into_raw())
        }
    };
    Image::new(width, height, channels, data).map_err(|e| e.to_string())
}

/// Encodes to `path` in the given format, creating no directories.
pub fn encode(img: &Image<u8>, path: impl AsRef<Path>, format: ImageFormat) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode_bytes(img, format).map_err(|message| Error::Codec {
        path: path.to_path_buf(),
        message,
    })?;
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Encodes using the format implied by the file extension.
pub fn save(img: &Image<u8>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let format = ImageFormat::from_path(path).ok_or_else(|| Error::UnsupportedFormat(path.to_path_buf()))?;
    encode(img, path, format)
}

pub fn encode_bytes(img: &Image<u8>, format: ImageFormat) -> Result<Vec<u8>, String> {
    let (w, h) = img.dimensions();
    let dynamic = match img.channels() {
        Channels::Gray => image::GrayImage::from_raw(w, h, img.data().to_vec()).map(DynamicImage::ImageLuma8),
        Channels::Rgb => image::RgbImage::from_raw(w, h, img.data().to_vec()).map(DynamicImage::ImageRgb8),
    }
    .ok_or_else(|| "buffer does not match dimensions".to_string())?;
    let mut out = std::io::Cursor::new(Vec::new());
    dynamic
        .write_to(&mut out, format.external())
        .map_err(|e| e.to_string())?;
    Ok(out.into_inner())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn png_round_trip_preserves_samples() {
        let dir = tempfile::tempdir().unwrap();
        let rgb = Image::from_fn(5, 3, Channels::Rgb, |x, y, c| (x * 40 + y * 7 + c as u32 * 3) as u8).unwrap();
        let gray = Image::from_fn(4, 4, Channels::Gray, |x, y, _| (x * 60 + y) as u8).unwrap();
        for (name, img) in [("rgb.png", &rgb), ("gray.png", &gray)] {
            let path = dir.path().join(name);
            encode(img, &path, ImageFormat::Png).unwrap();
            assert_eq!(&decode(&path).unwrap(), img);
        }
    }

    #[test]
    fn jpeg_decodes_with_same_shape() {
        let dir = tempfile::tempdir().unwrap();
        let img = Image::filled(8, 8, Channels::Rgb, 120u8).unwrap();
        let path = dir.path().join("a.jpg");
        save(&img, &path).unwrap();
        let back = decode(&path).unwrap();
        assert_eq!(back.dimensions(), (8, 8));
        assert!(back.data().iter().all(|&v| v.abs_diff(120) <= 2));
    }

    #[test]
    fn errors() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(decode(dir.path().join("missing.png")), Err(Error::Io { .. })));
        let junk = dir.path().join("junk.png");
        std::fs::write(&junk, b"not an image").unwrap();
        assert!(matches!(decode(&junk), Err(Error::Codec { .. })));
        let img = Image::filled(1, 1, Channels::Gray, 0u8).unwrap();
        assert!(matches!(save(&img, dir.path().join("x.bmp")), Err(Error::UnsupportedFormat(_))));
    }
}
