//! Grayscale PNG export of GAF images.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};
use crate::npy::F32Array;

/// Maps [−1, 1] to 0..=255 as round((v + 1) · 127.5), rounding half away
/// from zero, so 0 becomes 128.
pub fn gray_level(v: f32) -> u8 {
    ((f64::from(v) + 1.0) * 127.5).round().clamp(0.0, 255.0) as u8
}

pub fn write_png(path: &Path, width: u32, height: u32, pixels: &[u8]) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut enc = png::Encoder::new(BufWriter::new(file), width, height);
    enc.set_color(png::ColorType::Grayscale);
    enc.set_depth(png::BitDepth::Eight);
    let fail = |e: png::EncodingError| CliError::format(path, e.to_string());
    let mut w = enc.write_header().map_err(fail)?;
    w.write_image_data(pixels).map_err(fail)?;
    w.finish().map_err(fail)
}

/// Writes `<out_dir>/<id>.png` for each requested row of a `[count, H, W]` array.
pub fn export_png(images: &F32Array, ids: &[u64], out_dir: &Path) -> Result<Vec<PathBuf>> {
    let &[count, h, w] = images.shape.as_slice() else {
        return Err(CliError::Validation(format!(
            "expected a [count, H, W] image array, got shape {:?}",
            images.shape
        )));
    };
    if let Some(bad) = ids.iter().find(|&&id| id as usize >= count) {
        return Err(CliError::Validation(format!("id {bad} out of range for {count} images")));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    ids.iter()
        .map(|&id| {
            let pixels: Vec<u8> = images.row(id as usize).iter().map(|&v| gray_level(v)).collect();
            let path = out_dir.join(format!("{id}.png"));
            write_png(&path, w as u32, h as u32, &pixels)?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gray_levels() {
        assert_eq!(gray_level(-1.0), 0);
        assert_eq!(gray_level(0.0), 128);
        assert_eq!(gray_level(1.0), 255);
        assert_eq!(gray_level(3.0), 255);
        assert_eq!(gray_level(-0.5), 64);
    }
}
