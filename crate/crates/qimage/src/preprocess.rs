use crate::image::check_side;
use crate::{BinaryImage, GrayImage, ImageError, Result};

pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// Resamples to `target_side × target_side` by bilinear interpolation.
///
/// Output pixel `i` samples the source at `(i + 0.5)·W/N - 0.5`, i.e. pixel
/// centres are aligned and coordinates are clamped at the borders.
pub fn bilinear_downsample(img: &GrayImage, target_side: usize) -> Result<GrayImage> {
    if target_side == 0 {
        return Err(ImageError::ZeroTarget);
    }
    let (w, h) = (img.width(), img.height());
    if w == 0 || h == 0 {
        return Err(ImageError::PixelCount { expected: 1, got: 0 });
    }
    let xs = sample_points(w, target_side);
    let ys = sample_points(h, target_side);
    let mut out = Vec::with_capacity(target_side * target_side);
    for &(y0, y1, fy) in &ys {
        for &(x0, x1, fx) in &xs {
            let top = img.get(y0, x0) * (1.0 - fx) + img.get(y0, x1) * fx;
            let bottom = img.get(y1, x0) * (1.0 - fx) + img.get(y1, x1) * fx;
            out.push(top * (1.0 - fy) + bottom * fy);
        }
    }
    GrayImage::new(target_side, target_side, out)
}

fn sample_points(src: usize, dst: usize) -> Vec<(usize, usize, f64)> {
    let scale = src as f64 / dst as f64;
    (0..dst)
        .map(|i| {
            let x = ((i as f64 + 0.5) * scale - 0.5).clamp(0.0, (src - 1) as f64);
            let x0 = x.floor() as usize;
            let x1 = (x0 + 1).min(src - 1);
            (x0, x1, x - x0 as f64)
        })
        .collect()
}

/// Bit is 1 iff the pixel is `>= threshold`.
pub fn binarize(img: &GrayImage, threshold: f64) -> Result<BinaryImage> {
    if img.width() != img.height() {
        return Err(ImageError::NotSquare { width: img.width(), height: img.height() });
    }
    check_side(img.width())?;
    let bits = img.pixels().iter().map(|&p| (p >= threshold) as u8).collect();
    BinaryImage::new(img.width(), bits)
}

/// Downsample then binarize.
pub fn preprocess(img: &GrayImage, side: usize, threshold: f64) -> Result<BinaryImage> {
    binarize(&bilinear_downsample(img, side)?, threshold)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray(side: usize, f: impl Fn(usize, usize) -> f64) -> GrayImage {
        let px = (0..side * side).map(|k| f(k / side, k % side)).collect();
        GrayImage::new(side, side, px).unwrap()
    }

    #[test]
    fn constant_stays_constant() {
        let img = GrayImage::new(28, 28, vec![0.3; 784]).unwrap();
        for side in [1, 2, 4, 8, 16, 28, 40] {
            let out = bilinear_downsample(&img, side).unwrap();
            assert!(out.pixels().iter().all(|&p| (p - 0.3).abs() < 1e-15));
        }
    }

    #[test]
    fn same_size_is_identity() {
        let img = gray(8, |r, c| ((r * 8 + c) as f64 / 63.0).sqrt());
        assert_eq!(bilinear_downsample(&img, 8).unwrap(), img);
    }

    #[test]
    fn checkerboard_halves_to_gray() {
        let img = gray(4, |r, c| ((r + c) % 2) as f64);
        let out = bilinear_downsample(&img, 2).unwrap();
        assert_eq!(out.pixels(), &[0.5; 4]);
    }

    #[test]
    fn hand_interpolated_gradient() {
        // 3 -> 2: samples at source x = 0.25 and 1.75
        let img = GrayImage::new(3, 1, vec![0.0, 0.4, 1.0]).unwrap();
        let out = bilinear_downsample(&img, 2).unwrap();
        assert!((out.get(0, 0) - 0.1).abs() < 1e-15);
        assert!((out.get(0, 1) - 0.85).abs() < 1e-15);
        assert!(matches!(bilinear_downsample(&img, 0), Err(ImageError::ZeroTarget)));
    }

    #[test]
    fn threshold_boundary() {
        let img = GrayImage::new(2, 2, vec![0.49, 0.51, 0.5, 1.0]).unwrap();
        assert_eq!(binarize(&img, DEFAULT_THRESHOLD).unwrap().bits(), &[0, 1, 1, 1]);
        let white = GrayImage::new(4, 4, vec![1.0; 16]).unwrap();
        assert_eq!(binarize(&white, 0.5).unwrap().count_ones(), 16);
        let wide = GrayImage::new(4, 2, vec![0.0; 8]).unwrap();
        assert!(matches!(binarize(&wide, 0.5), Err(ImageError::NotSquare { .. })));
        let odd = GrayImage::new(3, 3, vec![0.0; 9]).unwrap();
        assert!(matches!(binarize(&odd, 0.5), Err(ImageError::NotPowerOfTwo(3))));
    }
}
