//! The uniformized 2x2 algebraic system: coefficient functions, the
//! determinant and its Rayleigh zeros, the solvability brackets, and the
//! sampled jump densities feeding field reconstruction.
//!
//! At a contour point xi the unknowns are the displacement-trace transforms
//! (Phi1, Phi2) at the shared kernel wavenumber. The row coming from a plane
//! whose point carries nonzero jump data is the global relation reflected
//! through xi -> -a^2/xi (sign flip on the odd coefficient, data transform
//! at the reflected argument); a row from a zero part is the direct
//! relation. On the built segments the shear row is always reflected, and
//! the compressional row is reflected on variant A and direct on variant B.

use crate::boundary_data::{transform_f1, transform_f2, TractionData};
use crate::contours::{
    build_contour_zeta, build_contour_zeta_tilde, quadrature_with_window, FieldHint, PoleWindow,
    Quadrature, Segment, SegmentKind, Variant,
};
use crate::error::{Error, Result};
use crate::medium::Medium;
use crate::spectral_maps::{omega, on_cut, radical_xi, side_for, zeta_tilde_from_xi, Plane, Side};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Coefficient functions of the system at one uniformized point.
/// `beta_c` is the coefficient named beta (the shear velocity is `beta_s`
/// on [`Medium`]).
#[derive(Debug, Clone, Copy)]
pub struct Coefficients {
    pub b: Complex64,
    pub d: Complex64,
    pub delta: Complex64,
    pub beta_c: Complex64,
}

/// Coefficients in the uniformized variable.
pub fn coefficients_at(m: &Medium, xi: Complex64, side: Side) -> Result<Coefficients> {
    if xi.norm() == 0.0 {
        return Err(Error::Domain("xi must be nonzero".into()));
    }
    let a = m.a;
    let (h2, l2) = (m.h * m.h, m.l * m.l);
    let q = xi * xi / (a * a);
    let qi = (a * a) / (xi * xi);
    let b = Complex64::i() * h2 / (4.0 * l2) * (q - qi);
    let d = (l2 - h2) / (2.0 * l2) + h2 / (4.0 * l2) * (q + qi);
    let ar = a - 1.0 / a;
    let delta = -h2 / (4.0 * l2) * ((q + qi) + 0.5 * ar * ar);
    let beta_c =
        Complex64::i() * h2 / (4.0 * a * a * l2) * (xi / a - a / xi) * omega(m, xi, side)?;
    Ok(Coefficients { b, d, delta, beta_c })
}

/// Compressional-plane forms of (b, d), rational in zeta.
pub fn coeffs_zeta(m: &Medium, z: Complex64) -> (Complex64, Complex64) {
    let (h2, l2) = (m.h * m.h, m.l * m.l);
    let q = z * z;
    let b = Complex64::i() * h2 / (4.0 * l2) * (q - 1.0 / q);
    let d = (l2 - h2) / (2.0 * l2) + h2 / (4.0 * l2) * (q + 1.0 / q);
    (b, d)
}

/// Shear-plane forms of (delta, beta), rational in zeta-tilde.
pub fn coeffs_zeta_tilde(zt: Complex64) -> (Complex64, Complex64) {
    let q = zt * zt;
    let delta = -0.25 * (q + 1.0 / q);
    let beta = 0.25 * Complex64::i() * (q - 1.0 / q);
    (delta, beta)
}

/// The system determinant D = d delta - beta b, and the explicit polynomial
/// form D0 normalized so that D = -(a + 1/a)^{-1} D0.
pub fn determinant(m: &Medium, xi: Complex64, side: Side) -> Result<(Complex64, Complex64)> {
    let co = coefficients_at(m, xi, side)?;
    let d_val = co.d * co.delta - co.beta_c * co.b;
    let a = m.a;
    let q = xi * xi / (a * a);
    let qi = (a * a) / (xi * xi);
    let ar = a - 1.0 / a;
    let w = radical_xi(m, xi, side)?;
    let bracket = ar * ar + 2.0 * (q + qi);
    let poly = 0.25 * bracket * bracket - (q - qi) * (1.0 - qi) * w / (a * a);
    let scale = (a + 1.0 / a).powi(-3);
    Ok((d_val, scale * poly))
}

/// The 2x2 solve at one uniformized point given the two data-transform
/// values (already evaluated at the arguments the variant prescribes).
pub fn solve_system(
    m: &Medium,
    xi: Complex64,
    variant: Variant,
    f1_val: Complex64,
    f2_val: Complex64,
    pole_rel_tolerance: f64,
) -> Result<(Complex64, Complex64)> {
    let side = side_for(m, xi);
    let co = coefficients_at(m, xi, side)?;
    let p = match variant {
        Variant::A => -co.b,
        Variant::B => co.b,
    };
    let (q, r, s) = (co.d, co.delta, -co.beta_c);
    let det = p * s - q * r;
    let scale = (co.d * co.delta).norm().max((co.beta_c * co.b).norm());
    if det.norm() <= pole_rel_tolerance * scale {
        return Err(Error::NearPole {
            xi,
            det_mag: det.norm(),
        });
    }
    let phi1 = (f1_val * s - q * f2_val) / det;
    let phi2 = (p * f2_val - r * f1_val) / det;
    Ok((phi1, phi2))
}

/// Default relative pole tolerance of the solve.
pub const POLE_REL_TOLERANCE: f64 = 1e-8;

/// Full solve at xi: classify the variant, evaluate the data transforms at
/// the prescribed arguments, and invert.
pub fn solve_at_xi(
    m: &Medium,
    data: &TractionData,
    xi: Complex64,
) -> Result<(Complex64, Complex64)> {
    let variant = crate::contours::classify_xi(m, xi)?;
    solve_at_xi_with_variant(m, data, xi, variant)
}

fn solve_at_xi_with_variant(
    m: &Medium,
    data: &TractionData,
    xi: Complex64,
    variant: Variant,
) -> Result<(Complex64, Complex64)> {
    let side = side_for(m, xi);
    let zt = zeta_tilde_from_xi(m, xi, side)?;
    let f2 = transform_f2(m, data, -1.0 / zt)?;
    let f1 = match variant {
        Variant::A => transform_f1(m, data, -m.a / xi)?,
        Variant::B => transform_f1(m, data, xi / m.a)?,
    };
    solve_system(m, xi, variant, f1, f2, POLE_REL_TOLERANCE)
}

/// The displacement-trace transforms at kernel wavenumber kappa, solved at
/// the canonical variant-A contour point carrying that kernel.
pub fn phi_at_kappa(m: &Medium, data: &TractionData, kappa: f64) -> Result<(Complex64, Complex64)> {
    let xi = xi_of_kappa(m, kappa);
    solve_at_xi_with_variant(m, data, xi, Variant::A)
}

/// The variant-A contour point whose transform kernel is exp(i kappa x).
pub fn xi_of_kappa(m: &Medium, kappa: f64) -> Complex64 {
    let h = m.h;
    if kappa >= h {
        let q = kappa / h;
        let t = q + (q * q - 1.0).sqrt();
        Complex64::new(0.0, m.a * t)
    } else if kappa <= -h {
        let q = -kappa / h;
        let t = q - (q * q - 1.0).sqrt();
        Complex64::new(0.0, -m.a * t)
    } else {
        let s = kappa / h;
        m.a * Complex64::new((1.0 - s * s).sqrt(), s)
    }
}

/// Data-side jump density of the compressional pair at any point of its
/// contour (nonzero or zero parts; on zero parts the value is the
/// global-relation residual).
pub fn rho12_at(m: &Medium, data: &TractionData, zeta: Complex64) -> Result<Complex64> {
    let kappa = crate::boundary_data::fourier_wavenumber_zeta(m, zeta)?;
    let (phi1, phi2) = phi_at_kappa(m, data, kappa.re)?;
    let (b, d) = coeffs_zeta(m, zeta);
    let f1 = transform_f1(m, data, zeta)?;
    Ok(f1 - b * phi1 - d * phi2)
}

/// Data-side jump density of the shear pair at any point of its contour.
pub fn rho12_tilde_at(m: &Medium, data: &TractionData, zt: Complex64) -> Result<Complex64> {
    let kappa = (-Complex64::i() * 0.5 * m.l * (zt - 1.0 / zt)).re;
    let (phi1, phi2) = phi_at_kappa(m, data, kappa)?;
    let (delta, beta) = coeffs_zeta_tilde(zt);
    let f2 = transform_f2(m, data, zt)?;
    Ok(f2 - delta * phi1 - beta * phi2)
}

/// Rayleigh root data: the speed, its wavenumber, and the two determinant
/// zeros on the contour.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RayleighRoots {
    /// Rayleigh speed, 0 < c < beta_s.
    pub c: f64,
    /// Horizontal wavenumber omega / c of the surface wave.
    pub kappa_c: f64,
    /// Root on the upper imaginary segment (Im > a^2).
    pub xi_c: Complex64,
    /// Companion root a^2 / xi_c on (-i, 0).
    pub xi_c_companion: Complex64,
    /// |D| at xi_c (should vanish to root-finding accuracy).
    pub residual_at_root: f64,
    /// |D| at the companion root.
    pub residual_at_companion: f64,
}

/// Secular function R(c) = (2 - c^2/b^2)^2 - 4 sqrt(1-c^2/a^2) sqrt(1-c^2/b^2).
pub fn secular(m: &Medium, c: f64) -> f64 {
    let cb = c * c / (m.beta_s * m.beta_s);
    let ca = c * c / (m.alpha * m.alpha);
    (2.0 - cb).powi(2) - 4.0 * (1.0 - ca).max(0.0).sqrt() * (1.0 - cb).max(0.0).sqrt()
}

/// Rayleigh speed by bisection of the secular equation on (0, beta_s).
pub fn rayleigh_speed(m: &Medium) -> Result<RayleighRoots> {
    let eps = 1e-6;
    let mut lo = eps * m.beta_s;
    let mut hi = m.beta_s;
    let f_lo = secular(m, lo);
    let f_hi = secular(m, hi);
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::SecularFailure);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if secular(m, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 * m.beta_s {
            break;
        }
    }
    let c = 0.5 * (lo + hi);
    let kappa_c = m.omega / c;
    let ac = m.alpha / c;
    let s_c = m.a * (ac + (ac * ac - 1.0).sqrt());
    let xi_c = Complex64::new(0.0, s_c);
    let xi_c_companion = Complex64::new(0.0, -m.a * m.a / s_c);
    let residual_at_root = determinant(m, xi_c, Side::None)?.0.norm();
    let residual_at_companion = determinant(m, xi_c_companion, Side::None)?.0.norm();
    Ok(RayleighRoots {
        c,
        kappa_c,
        xi_c,
        xi_c_companion,
        residual_at_root,
        residual_at_companion,
    })
}

/// The solvability bracket delta(xi) F1(-a^2/xi) + b(xi) F2(-a^2/xi),
/// evaluated at both determinant zeros. Vanishing values certify that the
/// data is orthogonal to the Rayleigh traces.
pub fn solvability_residual(
    m: &Medium,
    data: &TractionData,
    roots: &RayleighRoots,
) -> Result<(Complex64, Complex64)> {
    let b1 = bracket_at(m, data, roots.xi_c)?;
    let b2 = bracket_at(m, data, roots.xi_c_companion)?;
    Ok((b1, b2))
}

fn bracket_at(m: &Medium, data: &TractionData, xi: Complex64) -> Result<Complex64> {
    let side = side_for(m, xi);
    let co = coefficients_at(m, xi, side)?;
    let zt = zeta_tilde_from_xi(m, xi, side)?;
    let f1 = transform_f1(m, data, -m.a / xi)?;
    let f2 = transform_f2(m, data, -1.0 / zt)?;
    Ok(co.delta * f1 + co.b * f2)
}

/// Residues of the jump densities (in the kappa variable) and the bracket
/// diagnostics at the two Rayleigh poles.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PoleData {
    pub kappa_c: f64,
    /// Solvability brackets at xi_c and at the companion root.
    pub bracket_plus: Complex64,
    pub bracket_minus: Complex64,
    /// d D / d kappa along the contour at +kappa_c and -kappa_c.
    pub d_prime_plus: Complex64,
    pub d_prime_minus: Complex64,
    /// kappa-space residues of rho12 at +-kappa_c.
    pub res_rho_plus: Complex64,
    pub res_rho_minus: Complex64,
    /// kappa-space residues of the shear density at +-kappa_c.
    pub res_rho_tilde_plus: Complex64,
    pub res_rho_tilde_minus: Complex64,
    /// Window half-width used for the singular panels.
    pub window_half_width: f64,
}

/// Assemble the Rayleigh-pole data for the given traction data.
pub fn pole_data(
    m: &Medium,
    data: &TractionData,
    roots: &RayleighRoots,
    window_half_width: f64,
) -> Result<PoleData> {
    let (bracket_plus, bracket_minus) = solvability_residual(m, data, roots)?;
    let d_prime = |kappa0: f64| -> Result<Complex64> {
        let eps = 1e-5 * kappa0.abs();
        let dp = determinant(m, xi_of_kappa(m, kappa0 + eps), Side::None)?.0;
        let dm = determinant(m, xi_of_kappa(m, kappa0 - eps), Side::None)?.0;
        Ok((dp - dm) / (2.0 * eps))
    };
    let d_prime_plus = d_prime(roots.kappa_c)?;
    let d_prime_minus = d_prime(-roots.kappa_c)?;
    let co_plus = coefficients_at(m, roots.xi_c, Side::None)?;
    let co_minus = coefficients_at(m, roots.xi_c_companion, Side::None)?;
    Ok(PoleData {
        kappa_c: roots.kappa_c,
        bracket_plus,
        bracket_minus,
        d_prime_plus,
        d_prime_minus,
        res_rho_plus: -2.0 * co_plus.d * bracket_plus / d_prime_plus,
        res_rho_minus: -2.0 * co_minus.d * bracket_minus / d_prime_minus,
        res_rho_tilde_plus: -2.0 * co_plus.beta_c * bracket_plus / d_prime_plus,
        res_rho_tilde_minus: -2.0 * co_minus.beta_c * bracket_minus / d_prime_minus,
        window_half_width,
    })
}

/// Jump density sampled on one segment's quadrature (fine and coarse rules).
pub struct SegmentDensity {
    pub label: &'static str,
    pub kind: SegmentKind,
    pub quad: Quadrature,
    pub rho: Vec<Complex64>,
    pub quad_coarse: Quadrature,
    pub rho_coarse: Vec<Complex64>,
}

/// All sampled jump data of one plane.
pub struct PlaneDensity {
    pub plane: Plane,
    pub wavenumber: f64,
    pub segments: Vec<SegmentDensity>,
    /// kappa-residues (at +kappa_c, -kappa_c) of this plane's density.
    pub residues: (Complex64, Complex64),
}

/// Densities of both planes plus the Rayleigh diagnostics.
pub struct SpectralDensities {
    pub zeta: PlaneDensity,
    pub zeta_tilde: PlaneDensity,
    pub roots: RayleighRoots,
    pub pole: PoleData,
}

/// Numerical knobs of the density solve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SolverSettings {
    /// Gauss order per panel.
    pub order: usize,
    /// |kappa| cutoff on rays/intervals, in units of the plane wavenumber.
    pub ray_truncation: f64,
    /// Smallest z the densities will be integrated at.
    pub z_min: f64,
    /// Relative pole tolerance of the 2x2 solve.
    pub pole_rel_tolerance: f64,
    /// Pole window half-width in units of the plane wavenumber.
    pub window_half_width: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            order: 16,
            ray_truncation: 40.0,
            z_min: 1e-3,
            pole_rel_tolerance: POLE_REL_TOLERANCE,
            window_half_width: 0.35,
        }
    }
}

fn sample_plane(
    m: &Medium,
    data: &TractionData,
    plane: Plane,
    settings: &SolverSettings,
    hint: &FieldHint,
    kappa_c: f64,
) -> Result<Vec<SegmentDensity>> {
    let contour = match plane {
        Plane::Zeta => build_contour_zeta(m),
        _ => build_contour_zeta_tilde(m),
    };
    let kw = contour.nonzero[0].wavenumber;
    let trunc = settings.ray_truncation * kw;
    let mut out = Vec::new();
    for seg in &contour.nonzero {
        let window = match seg.kind {
            SegmentKind::Ray => Some(PoleWindow {
                kappa_pole: kappa_c,
                half_width: settings.window_half_width * kw,
            }),
            SegmentKind::Interval => Some(PoleWindow {
                kappa_pole: -kappa_c,
                half_width: settings.window_half_width * kw,
            }),
            SegmentKind::Arc => None,
        };
        let quad = quadrature_with_window(m, seg, settings.order, trunc, hint, window)?;
        let coarse_order = (settings.order / 2).max(4);
        let quad_coarse = quadrature_with_window(m, seg, coarse_order, trunc, hint, window)?;
        let eval = |q: &Quadrature| -> Result<Vec<Complex64>> {
            q.nodes
                .par_iter()
                .map(|n| match plane {
                    Plane::Zeta => rho12_at(m, data, n.zeta),
                    _ => rho12_tilde_at(m, data, n.zeta),
                })
                .collect()
        };
        let rho = eval(&quad)?;
        let rho_coarse = eval(&quad_coarse)?;
        out.push(SegmentDensity {
            label: seg.label,
            kind: seg.kind,
            quad,
            rho,
            quad_coarse,
            rho_coarse,
        });
    }
    Ok(out)
}

/// Solve the system on all contour nodes of both planes.
pub fn solve_densities(
    m: &Medium,
    data: &TractionData,
    settings: &SolverSettings,
    hint: &FieldHint,
) -> Result<SpectralDensities> {
    let roots = rayleigh_speed(m)?;
    let pole = pole_data(m, data, &roots, settings.window_half_width * m.h)?;
    let zeta_segments = sample_plane(m, data, Plane::Zeta, settings, hint, roots.kappa_c)?;
    let zt_segments = sample_plane(m, data, Plane::ZetaTilde, settings, hint, roots.kappa_c)?;
    Ok(SpectralDensities {
        zeta: PlaneDensity {
            plane: Plane::Zeta,
            wavenumber: m.h,
            segments: zeta_segments,
            residues: (pole.res_rho_plus, pole.res_rho_minus),
        },
        zeta_tilde: PlaneDensity {
            plane: Plane::ZetaTilde,
            wavenumber: m.l,
            segments: zt_segments,
            residues: (pole.res_rho_tilde_plus, pole.res_rho_tilde_minus),
        },
        roots,
        pole,
    })
}

/// Global-relation residuals: the data-side density evaluated on the zero
/// parts of a plane's contour, which must vanish for consistent data.
pub fn zero_part_residuals(
    m: &Medium,
    data: &TractionData,
    plane: Plane,
    per_segment: usize,
) -> Result<Vec<(Complex64, Complex64)>> {
    let contour = match plane {
        Plane::Zeta => build_contour_zeta(m),
        _ => build_contour_zeta_tilde(m),
    };
    let mut out = Vec::new();
    for seg in &contour.zero {
        for i in 0..per_segment {
            let t = (i as f64 + 0.7) / (per_segment as f64 + 0.4);
            let z = seg.point(t);
            let rho = match plane {
                Plane::Zeta => rho12_at(m, data, z),
                _ => rho12_tilde_at(m, data, z),
            }?;
            out.push((z, rho));
        }
    }
    Ok(out)
}
