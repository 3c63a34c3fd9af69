//! Material parameters and the derived scalar constants used everywhere else.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Isotropic elastic medium at a fixed angular frequency.
///
/// Both wavenumber (`h`, `l`) and velocity (`alpha`, `beta_s`) forms are
/// stored; the secular equation reads naturally in velocities while the
/// spectral machinery works in wavenumbers.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Medium {
    /// First Lame parameter (Pa).
    pub lambda: f64,
    /// Shear modulus (Pa).
    pub mu: f64,
    /// Mass density (kg/m^3).
    pub density: f64,
    /// Angular frequency (rad/s).
    pub omega: f64,
    /// Compressional wavenumber, h^2 = rho omega^2 / (lambda + 2 mu).
    pub h: f64,
    /// Shear wavenumber, l^2 = rho omega^2 / mu.
    pub l: f64,
    /// Uniformization constant a = l/h + sqrt(l^2/h^2 - 1), a > 1.
    pub a: f64,
    /// P-wave speed omega/h.
    pub alpha: f64,
    /// S-wave speed omega/l.
    pub beta_s: f64,
}

fn require_positive(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("must be strictly positive, got {v}"),
        });
    }
    Ok(())
}

impl Medium {
    pub fn new(lambda: f64, mu: f64, density: f64, omega: f64) -> Result<Medium> {
        require_positive("mu", mu)?;
        require_positive("density", density)?;
        require_positive("omega", omega)?;
        if !(lambda + 2.0 * mu > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: format!("lambda + 2 mu must be positive, got lambda = {lambda}"),
            });
        }
        if !(lambda + mu > 0.0) {
            // needed for h < l strictly
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: format!("lambda + mu must be positive so that h < l, got lambda = {lambda}"),
            });
        }
        let h = omega * (density / (lambda + 2.0 * mu)).sqrt();
        let l = omega * (density / mu).sqrt();
        let r = l / h;
        let a = r + (r * r - 1.0).sqrt();
        Ok(Medium {
            lambda,
            mu,
            density,
            omega,
            h,
            l,
            a,
            alpha: omega / h,
            beta_s: omega / l,
        })
    }

    /// Poisson solid (lambda = mu), the regression baseline.
    pub fn poisson_solid(mu: f64, density: f64, omega: f64) -> Result<Medium> {
        Medium::new(mu, mu, density, omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_solid_constants() {
        let m = Medium::poisson_solid(1.0, 1.0, 1.0).unwrap();
        assert!((m.h - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((m.l - 1.0).abs() < 1e-15);
        assert!((m.l / m.h - 3f64.sqrt()).abs() < 1e-14);
        assert!((m.a - (3f64.sqrt() + 2f64.sqrt())).abs() < 1e-14);
        assert!(m.alpha > m.beta_s);
    }

    #[test]
    fn lambda_zero_limit() {
        let m = Medium::new(0.0, 1.0, 1.0, 1.0).unwrap();
        assert!((m.l * m.l / (m.h * m.h) - 2.0).abs() < 1e-14);
        assert!((m.a - (2f64.sqrt() + 1.0)).abs() < 1e-14);
    }

    #[test]
    fn rejects_nonpositive_inputs() {
        assert!(Medium::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(Medium::new(1.0, -1.0, 1.0, 1.0).is_err());
        assert!(Medium::new(1.0, 1.0, -2.0, 1.0).is_err());
        assert!(Medium::new(1.0, 1.0, 1.0, 0.0).is_err());
        // lambda + 2 mu <= 0
        assert!(Medium::new(-3.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn joukowski_preimage_identity() {
        // h (a + 1/a) / 2 == l for arbitrary valid media
        for (lam, mu, rho, om) in [
            (1.0, 1.0, 1.0, 1.0),
            (2.3, 0.7, 3.1, 4.5),
            (0.01, 5.0, 0.2, 11.0),
            (7.0, 2.0, 1.0, 0.3),
        ] {
            let m = Medium::new(lam, mu, rho, om).unwrap();
            let lhs = m.h * (m.a + 1.0 / m.a) / 2.0;
            assert!((lhs - m.l).abs() <= 1e-14 * m.l, "{lhs} vs {}", m.l);
        }
    }
}
