//! IDX reader (the MNIST container format), optionally gzip-wrapped.

use std::io::Read;
use std::path::Path;

use flate2::read::GzDecoder;

use crate::{GrayImage, ImageError, Result};

const IMAGES_MAGIC: u32 = 0x0000_0803;
const LABELS_MAGIC: u32 = 0x0000_0801;

/// Raw `u8` images as stored in an IDX3 file.
#[derive(Debug, Clone, PartialEq)]
pub struct IdxImages {
    pub count: usize,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl IdxImages {
    pub fn raw(&self, index: usize) -> &[u8] {
        let size = self.rows * self.cols;
        &self.data[index * size..(index + 1) * size]
    }

    pub fn image(&self, index: usize) -> GrayImage {
        GrayImage::from_u8(self.cols, self.rows, self.raw(index)).expect("dimensions checked at parse")
    }
}

fn inflate(bytes: &[u8]) -> Result<std::borrow::Cow<'_, [u8]>> {
    if bytes.starts_with(&[0x1f, 0x8b]) {
        let mut out = Vec::new();
        GzDecoder::new(bytes).read_to_end(&mut out)?;
        Ok(out.into())
    } else {
        Ok(bytes.into())
    }
}

fn header(bytes: &[u8], words: usize, magic: u32) -> Result<Vec<usize>> {
    if bytes.len() < 4 * words {
        return Err(ImageError::Idx(format!("header needs {} bytes, file has {}", 4 * words, bytes.len())));
    }
    let fields: Vec<u32> = bytes[..4 * words]
        .chunks_exact(4)
        .map(|c| u32::from_be_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    if fields[0] != magic {
        return Err(ImageError::Idx(format!("magic {:#010x}, expected {magic:#010x}", fields[0])));
    }
    Ok(fields[1..].iter().map(|&f| f as usize).collect())
}

pub fn parse_idx_images(bytes: &[u8]) -> Result<IdxImages> {
    let bytes = inflate(bytes)?;
    let dims = header(&bytes, 4, IMAGES_MAGIC)?;
    let (count, rows, cols) = (dims[0], dims[1], dims[2]);
    let body = &bytes[16..];
    if body.len() != count * rows * cols {
        return Err(ImageError::Idx(format!(
            "{count} images of {rows}x{cols} need {} bytes, found {}",
            count * rows * cols,
            body.len()
        )));
    }
    Ok(IdxImages { count, rows, cols, data: body.to_vec() })
}

pub fn parse_idx_labels(bytes: &[u8]) -> Result<Vec<u8>> {
    let bytes = inflate(bytes)?;
    let count = header(&bytes, 2, LABELS_MAGIC)?[0];
    let body = &bytes[8..];
    if body.len() != count {
        return Err(ImageError::Idx(format!("{count} labels declared, found {}", body.len())));
    }
    Ok(body.to_vec())
}

pub fn load_idx_images(path: impl AsRef<Path>) -> Result<IdxImages> {
    parse_idx_images(&std::fs::read(path)?)
}

pub fn load_idx_labels(path: impl AsRef<Path>) -> Result<Vec<u8>> {
    parse_idx_labels(&std::fs::read(path)?)
}
