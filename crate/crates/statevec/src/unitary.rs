use std::ops::Mul;

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major 2×2 complex matrix `[[m00, m01], [m10, m11]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(pub [[Complex64; 2]; 2]);

impl Unitary2 {
    pub fn identity() -> Self {
        Self([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn x() -> Self {
        Self([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn h() -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self([[s, s], [s, -s]])
    }

    /// `RY(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]`.
    pub fn ry(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self([
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ])
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Self([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    /// A unitary `V` with `V·V = self`.
    ///
    /// Uses `V = (U + s·I) / t` with `s² = det U` and `t² = tr U + 2s`, picking
    /// the sign of `s` that keeps `t` away from zero.
    pub fn sqrt(&self) -> Self {
        let s0 = self.det().sqrt();
        let tr = self.trace();
        let s = if (tr + 2.0 * s0).norm() >= (tr - 2.0 * s0).norm() {
            s0
        } else {
            -s0
        };
        let t = (tr + 2.0 * s).sqrt();
        let m = &self.0;
        Self([[(m[0][0] + s) / t, m[0][1] / t], [m[1][0] / t, (m[1][1] + s) / t]])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        d
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Unitary2(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_unitary(u: &Unitary2) -> bool {
        (u.dagger() * *u).max_abs_diff(&Unitary2::identity()) < 1e-12
    }

    #[test]
    fn square_roots() {
        let neg_id = Unitary2([[-ONE, ZERO], [ZERO, -ONE]]);
        for u in [
            Unitary2::x(),
            Unitary2::h(),
            Unitary2::identity(),
            neg_id,
            Unitary2::ry(1.3),
            Unitary2::ry(2.0 * std::f64::consts::PI),
            Unitary2::ry(-0.4) * Unitary2::h(),
        ] {
            let v = u.sqrt();
            assert!((v * v).max_abs_diff(&u) < 1e-12, "{u:?}");
            assert!(is_unitary(&v));
        }
    }

    #[test]
    fn ry_square_root_is_half_angle() {
        assert!(Unitary2::ry(1.3).sqrt().max_abs_diff(&Unitary2::ry(0.65)) < 1e-12);
    }
}
