use crate::{QnnError, Result};

fn check(label: f64) -> Result<()> {
    if label == 1.0 || label == -1.0 { Ok(()) } else { Err(QnnError::InvalidLabel(label)) }
}

/// `max(0, 1 - label·pred)`.
pub fn hinge_loss(pred: f64, label: f64) -> Result<f64> {
    check(label)?;
    Ok((1.0 - label * pred).max(0.0))
}

/// `(pred - label)²`.
pub fn mse_loss(pred: f64, label: f64) -> Result<f64> {
    check(label)?;
    Ok((pred - label).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!((hinge_loss(1.0, 1.0).unwrap(), mse_loss(1.0, 1.0).unwrap()), (0.0, 0.0));
        assert_eq!((hinge_loss(0.0, 1.0).unwrap(), mse_loss(0.0, 1.0).unwrap()), (1.0, 1.0));
        assert_eq!((hinge_loss(-1.0, 1.0).unwrap(), mse_loss(-1.0, 1.0).unwrap()), (2.0, 4.0));
        assert_eq!(hinge_loss(-0.5, -1.0).unwrap(), 0.5);
        assert!(matches!(hinge_loss(0.0, 0.0), Err(QnnError::InvalidLabel(_))));
        assert!(matches!(mse_loss(0.0, 2.0), Err(QnnError::InvalidLabel(_))));
    }
}
