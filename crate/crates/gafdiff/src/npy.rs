//! Little-endian `f32` NPY arrays in C order.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use npyz::{NpyFile, Order, WriteOptions, WriterBuilder};

use crate::error::{CliError, Result};

/// Streams rows into an array whose shape is fixed up front.
pub struct ShardWriter {
    inner: npyz::NpyWriter<f32, BufWriter<File>>,
    path: PathBuf,
}

impl ShardWriter {
    pub fn create(path: &Path, shape: &[u64]) -> Result<Self> {
        let file = File::create(path).map_err(|e| CliError::io(path, e))?;
        let inner = WriteOptions::new()
            .default_dtype()
            .shape(shape)
            .writer(BufWriter::new(file))
            .begin_nd()
            .map_err(|e| CliError::io(path, e))?;
        Ok(Self {
            inner,
            path: path.to_path_buf(),
        })
    }

    pub fn append(&mut self, values: &[f32]) -> Result<()> {
        for v in values {
            self.inner.push(v).map_err(|e| CliError::io(&self.path, e))?;
        }
        Ok(())
    }

    /// Flushes and checks that exactly the declared number of items was written.
    pub fn finish(self) -> Result<()> {
        let path = self.path;
        self.inner.finish().map_err(|e| CliError::io(&path, e))
    }
}

pub fn write_f32(path: &Path, shape: &[u64], data: &[f32]) -> Result<()> {
    let mut w = ShardWriter::create(path, shape)?;
    w.append(data)?;
    w.finish()
}

#[derive(Debug, Clone, PartialEq)]
pub struct F32Array {
    pub shape: Vec<usize>,
    pub data: Vec<f32>,
}

impl F32Array {
    /// Number of entries along the first axis.
    pub fn rows(&self) -> usize {
        self.shape.first().copied().unwrap_or(0)
    }

    pub fn row_len(&self) -> usize {
        self.shape.iter().skip(1).product()
    }

    pub fn row(&self, i: usize) -> &[f32] {
        let n = self.row_len();
        &self.data[i * n..(i + 1) * n]
    }
}

pub fn read_f32(path: &Path) -> Result<F32Array> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let npy = NpyFile::new(BufReader::new(file)).map_err(|e| CliError::format(path, e.to_string()))?;
    if npy.order() != Order::C {
        return Err(CliError::format(path, "Fortran-ordered arrays are not supported"));
    }
    let shape: Vec<usize> = npy.shape().iter().map(|&d| d as usize).collect();
    let data = npy
        .data::<f32>()
        .map_err(|e| CliError::format(path, e.to_string()))?
        .collect::<std::io::Result<Vec<f32>>>()
        .map_err(|e| CliError::format(path, e.to_string()))?;
    if data.len() != shape.iter().product::<usize>() {
        return Err(CliError::format(path, "data length disagrees with header shape"));
    }
    Ok(F32Array { shape, data })
}
