//! Packed binary image matrices.
//!
//! File layout (integers little-endian):
//!
//! ```text
//! "QBIM" | version u32 | count u32 | side u32
//! count × ( label u8 | ceil(side²/8) bytes of pixel bits, pixel k at byte k/8, bit k%8 )
//! ```

use std::path::Path;

use crate::{preprocess, BinaryImage, IdxImages, ImageError, Result};

const MAGIC: &[u8; 4] = b"QBIM";
const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledImage {
    pub label: u8,
    pub image: BinaryImage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryDataset {
    pub side: usize,
    pub samples: Vec<LabeledImage>,
}

impl BinaryDataset {
    /// Keeps samples whose label is in `digits`, downsampled to `side` and binarized.
    pub fn from_idx(
        images: &IdxImages,
        labels: &[u8],
        digits: &[u8],
        side: usize,
        threshold: f64,
    ) -> Result<Self> {
        if labels.len() != images.count {
            return Err(ImageError::Idx(format!(
                "{} images but {} labels",
                images.count,
                labels.len()
            )));
        }
        let samples = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| digits.contains(l))
            .map(|(i, &label)| {
                Ok(LabeledImage { label, image: preprocess(&images.image(i), side, threshold)? })
            })
            .collect::<Result<_>>()?;
        Ok(Self { side, samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn count_label(&self, label: u8) -> usize {
        self.samples.iter().filter(|s| s.label == label).count()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let packed = (self.side * self.side).div_ceil(8);
        let mut out = Vec::with_capacity(16 + self.len() * (1 + packed));
        out.extend(MAGIC);
        for word in [VERSION, self.len() as u32, self.side as u32] {
            out.extend(word.to_le_bytes());
        }
        for s in &self.samples {
            out.push(s.label);
            let mut bytes = vec![0u8; packed];
            for (k, &b) in s.image.bits().iter().enumerate() {
                bytes[k / 8] |= b << (k % 8);
            }
            out.extend(bytes);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = |msg: String| ImageError::Dataset(msg);
        if bytes.len() < 16 || &bytes[..4] != MAGIC {
            return Err(bad("missing QBIM header".into()));
        }
        let word = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap()) as usize;
        if word(4) != VERSION as usize {
            return Err(bad(format!("unsupported version {}", word(4))));
        }
        let (count, side) = (word(8), word(12));
        let packed = (side * side).div_ceil(8);
        let body = &bytes[16..];
        if body.len() != count * (1 + packed) {
            return Err(bad(format!(
                "{count} samples of side {side} need {} bytes, found {}",
                count * (1 + packed),
                body.len()
            )));
        }
        let samples = body
            .chunks_exact(1 + packed)
            .map(|chunk| {
                let bits = (0..side * side).map(|k| chunk[1 + k / 8] >> (k % 8) & 1).collect();
                Ok(LabeledImage { label: chunk[0], image: BinaryImage::new(side, bits)? })
            })
            .collect::<Result<_>>()?;
        Ok(Self { side, samples })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}
