use std::f64::consts::FRAC_PI_2;

use crate::{ImageError, Result};

/// Row-major grayscale image with values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    /// Values are clamped to `[0, 1]`.
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(ImageError::PixelCount { expected: width * height, got: pixels.len() });
        }
        if pixels.iter().any(|p| !p.is_finite()) {
            return Err(ImageError::NonFinite);
        }
        let pixels = pixels.into_iter().map(|p| p.clamp(0.0, 1.0)).collect();
        Ok(Self { width, height, pixels })
    }

    /// 8-bit intensities scaled by 1/255.
    pub fn from_u8(width: usize, height: usize, bytes: &[u8]) -> Result<Self> {
        Self::new(width, height, bytes.iter().map(|&b| b as f64 / 255.0).collect())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.width + col]
    }
}

impl From<&BinaryImage> for GrayImage {
    fn from(b: &BinaryImage) -> Self {
        Self {
            width: b.side,
            height: b.side,
            pixels: b.bits.iter().map(|&v| v as f64).collect(),
        }
    }
}

/// Square power-of-two image with pixels in `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    side: usize,
    bits: Vec<u8>,
}

impl BinaryImage {
    pub fn new(side: usize, bits: Vec<u8>) -> Result<Self> {
        check_side(side)?;
        if bits.len() != side * side {
            return Err(ImageError::PixelCount { expected: side * side, got: bits.len() });
        }
        Ok(Self { side, bits: bits.into_iter().map(|b| (b != 0) as u8).collect() })
    }

    pub fn zeros(side: usize) -> Result<Self> {
        Self::new(side, vec![0; side * side])
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// `n` with `side = 2^n`.
    pub fn order(&self) -> usize {
        self.side.trailing_zeros() as usize
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.bits[row * self.side + col]
    }

    pub fn set(&mut self, index: usize, bit: bool) {
        self.bits[index] = bit as u8;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Pixels as `±1` features (white `+1`, black `-1`).
    pub fn signed_features(&self) -> Vec<f64> {
        self.bits.iter().map(|&b| if b == 1 { 1.0 } else { -1.0 }).collect()
    }
}

pub(crate) fn check_side(side: usize) -> Result<()> {
    if side == 0 || !side.is_power_of_two() {
        return Err(ImageError::NotPowerOfTwo(side));
    }
    Ok(())
}

/// Colour angle per pixel position, each in `[0, π/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleField {
    side: usize,
    angles: Vec<f64>,
}

impl AngleField {
    pub fn new(side: usize, angles: Vec<f64>) -> Result<Self> {
        check_side(side)?;
        if angles.len() != side * side {
            return Err(ImageError::PixelCount { expected: side * side, got: angles.len() });
        }
        if let Some(&bad) = angles.iter().find(|a| !(0.0..=FRAC_PI_2).contains(*a)) {
            return Err(ImageError::AngleRange(bad));
        }
        Ok(Self { side, angles })
    }

    /// Black maps to 0, white to π/2.
    pub fn from_binary(img: &BinaryImage) -> Self {
        Self {
            side: img.side,
            angles: img.bits.iter().map(|&b| b as f64 * FRAC_PI_2).collect(),
        }
    }

    /// Intensity `v` maps to `v·π/2`.
    pub fn from_gray(img: &GrayImage) -> Result<Self> {
        if img.width != img.height {
            return Err(ImageError::NotSquare { width: img.width, height: img.height });
        }
        Self::new(img.width, img.pixels.iter().map(|v| v * FRAC_PI_2).collect())
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}
