//! Independent oracles: manufactured buried-source solutions with closed
//! forms, finite-difference PDE residuals, boundary-closure residuals, and
//! far-field decay/phase fits.

use crate::boundary_data::{DataComponent, DecayClass, TractionData, XFn};
use crate::error::{Error, Result};
use crate::medium::Medium;
use crate::special::{hankel1_0, hankel1_1};
use num_complex::Complex64;
use std::sync::Arc;

/// Which potential the buried source feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ManufacturedKind {
    /// Compressional only (tau2 = 0).
    HankelP,
    /// Shear only (tau1 = 0).
    HankelS,
    /// Both, with fixed relative amplitude and phase.
    Mixed,
}

/// Partial derivatives of g = H0(k r), r = sqrt(X^2 + Z^2), up to the third
/// order (the mixed thirds follow from the Helmholtz relation).
#[derive(Debug, Clone, Copy)]
pub struct CylDerivs {
    pub g: Complex64,
    pub gx: Complex64,
    pub gz: Complex64,
    pub gxx: Complex64,
    pub gxz: Complex64,
    pub gzz: Complex64,
    pub gxxx: Complex64,
    pub gxxz: Complex64,
    pub gxzz: Complex64,
}

/// Evaluate the derivative stack at complex offsets (X, Z) from the source.
pub fn cyl_derivs(k: f64, xoff: Complex64, zoff: Complex64) -> CylDerivs {
    let r2 = xoff * xoff + zoff * zoff;
    let r = r2.sqrt();
    let s = k * r;
    let h0 = hankel1_0(s);
    let h1 = hankel1_1(s);
    let (x, z) = (xoff, zoff);
    let k2 = k * k;
    let k3 = k2 * k;
    let r3 = r2 * r;
    let r4 = r2 * r2;
    let r5 = r4 * r;
    let gx = -k * h1 * x / r;
    let gz = -k * h1 * z / r;
    let gxx = -k2 * x * x * h0 / r2 + 2.0 * k * x * x * h1 / r3 - k * h1 / r;
    let gzz = -k2 * z * z * h0 / r2 + 2.0 * k * z * z * h1 / r3 - k * h1 / r;
    let gxz = -k2 * x * z * h0 / r2 + 2.0 * k * x * z * h1 / r3;
    let gxxx = -3.0 * k2 * x * h0 / r2 + k3 * x * x * x * h1 / r3
        + 4.0 * k2 * x * x * x * h0 / r4
        + 6.0 * k * x * h1 / r3
        - 8.0 * k * x * x * x * h1 / r5;
    let gzzz = -3.0 * k2 * z * h0 / r2 + k3 * z * z * z * h1 / r3
        + 4.0 * k2 * z * z * z * h0 / r4
        + 6.0 * k * z * h1 / r3
        - 8.0 * k * z * z * z * h1 / r5;
    CylDerivs {
        g: h0,
        gx,
        gz,
        gxx,
        gxz,
        gzz,
        gxxx,
        gxxz: -k2 * gz - gzzz,
        gxzz: -k2 * gx - gxxx,
    }
}

#[derive(Debug, Clone, Copy)]
struct SourceTerm {
    /// true: compressional potential (wavenumber h); false: shear (l).
    compressional: bool,
    amp: Complex64,
    x0: f64,
    z0: f64,
}

/// Buried-source solution with closed-form field evaluators.
#[derive(Debug, Clone)]
pub struct ManufacturedSolution {
    medium: Medium,
    terms: Vec<SourceTerm>,
    pub kind: ManufacturedKind,
    pub source_x: f64,
    pub source_z: f64,
}

pub use crate::reconstruction::FieldSample;

impl ManufacturedSolution {
    pub fn eval(&self, x: f64, z: f64) -> FieldSample {
        let m = &self.medium;
        let mut out = FieldSample::default();
        for t in &self.terms {
            let k = if t.compressional { m.h } else { m.l };
            let d = cyl_derivs(
                k,
                Complex64::new(x - t.x0, 0.0),
                Complex64::new(z - t.z0, 0.0),
            );
            if t.compressional {
                out.tau1 += t.amp * (-0.5 * k * k) * d.g;
                out.u += t.amp * d.gx;
                out.w += t.amp * d.gz;
                out.t_xz += t.amp * 2.0 * m.mu * d.gxz;
                out.t_zz += t.amp * (-m.lambda * k * k * d.g + 2.0 * m.mu * d.gzz);
            } else {
                out.tau2 += t.amp * (-0.5 * k * k) * d.g;
                out.u += t.amp * (-d.gz);
                out.w += t.amp * d.gx;
                out.t_xz += t.amp * m.mu * (d.gxx - d.gzz);
                out.t_zz += t.amp * 2.0 * m.mu * d.gxz;
            }
        }
        out
    }

    /// Radial derivative of a potential from the coordinate origin, for the
    /// radiation check: R (d tau/dR - i k tau) -> 0.
    pub fn radiation_deficit(&self, x: f64, z: f64) -> (Complex64, Complex64) {
        let m = &self.medium;
        let rr = x.hypot(z);
        let (mut d1, mut d2) = (Complex64::default(), Complex64::default());
        for t in &self.terms {
            let k = if t.compressional { m.h } else { m.l };
            let d = cyl_derivs(
                k,
                Complex64::new(x - t.x0, 0.0),
                Complex64::new(z - t.z0, 0.0),
            );
            let tau = t.amp * (-0.5 * k * k) * d.g;
            let dtau_dr = t.amp * (-0.5 * k * k) * (d.gx * x / rr + d.gz * z / rr);
            let deficit = rr * (dtau_dr - Complex64::i() * k * tau);
            if t.compressional {
                d1 += deficit;
            } else {
                d2 += deficit;
            }
        }
        (d1, d2)
    }
}

/// Build a buried-source problem: the closed-form fields plus the traction
/// data whose solve must reproduce them (applied stresses are the negated
/// boundary stresses of the field).
pub fn make_manufactured(
    kind: ManufacturedKind,
    m: &Medium,
    source_x: f64,
    source_z: f64,
) -> Result<(TractionData, ManufacturedSolution)> {
    if !(source_z < 0.0) {
        return Err(Error::InvalidParameter {
            name: "source_z",
            reason: format!("source must lie outside the half-plane (z0 < 0), got {source_z}"),
        });
    }
    let terms = match kind {
        ManufacturedKind::HankelP => vec![SourceTerm {
            compressional: true,
            amp: Complex64::new(1.0, 0.0),
            x0: source_x,
            z0: source_z,
        }],
        ManufacturedKind::HankelS => vec![SourceTerm {
            compressional: false,
            amp: Complex64::new(1.0, 0.0),
            x0: source_x,
            z0: source_z,
        }],
        ManufacturedKind::Mixed => vec![
            SourceTerm {
                compressional: true,
                amp: Complex64::new(1.0, 0.0),
                x0: source_x,
                z0: source_z,
            },
            SourceTerm {
                compressional: false,
                amp: Complex64::new(0.4, 0.55),
                x0: source_x,
                z0: source_z,
            },
        ],
    };
    let solution = ManufacturedSolution {
        medium: *m,
        terms: terms.clone(),
        kind,
        source_x,
        source_z,
    };
    let mut components = Vec::new();
    for t in terms {
        let m2 = *m;
        let k = if t.compressional { m.h } else { m.l };
        let mk = |f: Box<dyn Fn(&Medium, &CylDerivs) -> Complex64 + Send + Sync>| -> XFn {
            let (x0, z0, amp) = (t.x0, t.z0, t.amp);
            Arc::new(move |x: Complex64| {
                let d = cyl_derivs(k, x - x0, Complex64::new(-z0, 0.0));
                -amp * f(&m2, &d)
            })
        };
        let (txz, tzz, txz_dx, tzz_dx): (XFn, XFn, XFn, XFn) = if t.compressional {
            (
                mk(Box::new(|m, d| 2.0 * m.mu * d.gxz)),
                mk(Box::new(move |m, d| {
                    -m.lambda * k * k * d.g + 2.0 * m.mu * d.gzz
                })),
                mk(Box::new(|m, d| 2.0 * m.mu * d.gxxz)),
                mk(Box::new(move |m, d| {
                    -m.lambda * k * k * d.gx + 2.0 * m.mu * d.gxzz
                })),
            )
        } else {
            (
                mk(Box::new(|m, d| m.mu * (d.gxx - d.gzz))),
                mk(Box::new(|m, d| 2.0 * m.mu * d.gxz)),
                mk(Box::new(|m, d| m.mu * (d.gxxx - d.gxzz))),
                mk(Box::new(|m, d| 2.0 * m.mu * d.gxxz)),
            )
        };
        components.push(DataComponent {
            txz,
            tzz,
            txz_dx,
            tzz_dx,
            decay: DecayClass::Oscillatory {
                wavenumber: k,
                center: t.x0,
                depth: t.z0.abs(),
            },
        });
    }
    Ok((TractionData { components }, solution))
}

/// Complex field samples on a uniform grid (row-major, z outer).
pub struct ComplexGrid {
    pub nx: usize,
    pub nz: usize,
    pub step: f64,
    pub vals: Vec<Complex64>,
}

impl ComplexGrid {
    pub fn from_fn(nx: usize, nz: usize, step: f64, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut vals = Vec::with_capacity(nx * nz);
        for iz in 0..nz {
            for ix in 0..nx {
                vals.push(f(ix, iz));
            }
        }
        ComplexGrid { nx, nz, step, vals }
    }
    fn at(&self, ix: i64, iz: i64) -> Complex64 {
        self.vals[iz as usize * self.nx + ix as usize]
    }
}

/// Max relative Helmholtz residual |L f + k^2 f| / (k^2 max |f|) with a
/// 4th-order Laplacian stencil over interior nodes.
pub fn helmholtz_residual(grid: &ComplexGrid, wavenumber: f64, step: f64) -> Result<f64> {
    let wavelength = 2.0 * std::f64::consts::PI / wavenumber;
    if step > wavelength / 20.0 {
        return Err(Error::GridTooCoarse {
            required: wavelength / 20.0,
            got: step,
        });
    }
    let d2 = |f: &dyn Fn(i64) -> Complex64| {
        (-f(-2) + 16.0 * f(-1) - 30.0 * f(0) + 16.0 * f(1) - f(2)) / (12.0 * step * step)
    };
    let mut max_num: f64 = 0.0;
    let mut max_f: f64 = 0.0;
    for iz in 2..grid.nz as i64 - 2 {
        for ix in 2..grid.nx as i64 - 2 {
            let fxx = d2(&|o| grid.at(ix + o, iz));
            let fzz = d2(&|o| grid.at(ix, iz + o));
            let f0 = grid.at(ix, iz);
            max_num = max_num.max((fxx + fzz + wavenumber * wavenumber * f0).norm());
            max_f = max_f.max(f0.norm());
        }
    }
    if max_f == 0.0 {
        return Ok(0.0);
    }
    Ok(max_num / (wavenumber * wavenumber * max_f))
}

/// Max relative residuals of the coupled displacement system with 4th-order
/// stencils; both equations are normalized by h^2 max(|u|, |w|).
pub fn elastodynamic_residual(
    u: &ComplexGrid,
    w: &ComplexGrid,
    m: &Medium,
    step: f64,
) -> Result<(f64, f64)> {
    let wavelength = 2.0 * std::f64::consts::PI / m.l;
    if step > wavelength / 20.0 {
        return Err(Error::GridTooCoarse {
            required: wavelength / 20.0,
            got: step,
        });
    }
    assert_eq!(u.nx, w.nx);
    assert_eq!(u.nz, w.nz);
    let d2 = |g: &ComplexGrid, ix: i64, iz: i64, ex: i64, ez: i64| {
        (-g.at(ix - 2 * ex, iz - 2 * ez) + 16.0 * g.at(ix - ex, iz - ez) - 30.0 * g.at(ix, iz)
            + 16.0 * g.at(ix + ex, iz + ez)
            - g.at(ix + 2 * ex, iz + 2 * ez))
            / (12.0 * step * step)
    };
    let d1x = |g: &ComplexGrid, ix: i64, iz: i64| {
        (g.at(ix - 2, iz) - 8.0 * g.at(ix - 1, iz) + 8.0 * g.at(ix + 1, iz) - g.at(ix + 2, iz))
            / (12.0 * step)
    };
    let dxz = |g: &ComplexGrid, ix: i64, iz: i64| {
        // mixed derivative by nesting the 4th-order first-derivative stencils
        (d1x(g, ix, iz - 2) - 8.0 * d1x(g, ix, iz - 1) + 8.0 * d1x(g, ix, iz + 1)
            - d1x(g, ix, iz + 2))
            / (12.0 * step)
    };
    let (h2, l2) = (m.h * m.h, m.l * m.l);
    let ratio = h2 / l2;
    let cross = (l2 - h2) / l2;
    let mut max1: f64 = 0.0;
    let mut max2: f64 = 0.0;
    let mut max_f: f64 = 0.0;
    for iz in 4..u.nz as i64 - 4 {
        for ix in 4..u.nx as i64 - 4 {
            let r1 = d2(u, ix, iz, 1, 0) + ratio * d2(u, ix, iz, 0, 1) + cross * dxz(w, ix, iz)
                + h2 * u.at(ix, iz);
            let r2 = d2(w, ix, iz, 0, 1) + ratio * d2(w, ix, iz, 1, 0) + cross * dxz(u, ix, iz)
                + h2 * w.at(ix, iz);
            max1 = max1.max(r1.norm());
            max2 = max2.max(r2.norm());
            max_f = max_f.max(u.at(ix, iz).norm().max(w.at(ix, iz).norm()));
        }
    }
    if max_f == 0.0 {
        return Ok((0.0, 0.0));
    }
    Ok((max1 / (h2 * max_f), max2 / (h2 * max_f)))
}

/// Boundary-closure residuals: reconstructed boundary tractions against the
/// applied data, max_x |T_rec(x, 0) + T0(x)| / max_x |T0(x)| per component.
pub fn boundary_residual(
    xs: &[f64],
    txz_rec: &[Complex64],
    tzz_rec: &[Complex64],
    data: &TractionData,
) -> (f64, f64) {
    let eval = |which: crate::boundary_data::ProfileKind, x: f64| -> Complex64 {
        let mut v = Complex64::default();
        for c in &data.components {
            let f = match which {
                crate::boundary_data::ProfileKind::Txz => &c.txz,
                _ => &c.tzz,
            };
            v += f(Complex64::new(x, 0.0));
        }
        v
    };
    let mut num_xz: f64 = 0.0;
    let mut den_xz: f64 = 0.0;
    let mut num_zz: f64 = 0.0;
    let mut den_zz: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let t0xz = eval(crate::boundary_data::ProfileKind::Txz, x);
        let t0zz = eval(crate::boundary_data::ProfileKind::Tzz, x);
        num_xz = num_xz.max((txz_rec[i] + t0xz).norm());
        num_zz = num_zz.max((tzz_rec[i] + t0zz).norm());
        den_xz = den_xz.max(t0xz.norm());
        den_zz = den_zz.max(t0zz.norm());
    }
    let den = den_xz.max(den_zz).max(1e-300);
    (num_xz / den, num_zz / den)
}

/// Far-field fit of an evaluator R -> tau(R) along one ray.
#[derive(Debug, Clone, Copy)]
pub struct FarFieldFit {
    /// Log-log slope of |tau| vs R.
    pub decay_exponent: f64,
    /// Slope of the unwrapped phase vs R (outgoing: +wavenumber).
    pub phase_slope: f64,
    /// Whether the phase slope matches the outgoing sign within 10%.
    pub outgoing: bool,
}

pub fn farfield_fit(
    eval: &dyn Fn(f64) -> Complex64,
    rs: &[f64],
    wavenumber: f64,
) -> Result<FarFieldFit> {
    if rs.len() < 8 {
        return Err(Error::FitFailure("need at least 8 radii".into()));
    }
    let vals: Vec<Complex64> = rs.iter().map(|&r| eval(r)).collect();
    if vals.iter().any(|v| !v.norm().is_finite() || v.norm() == 0.0) {
        return Err(Error::FitFailure("evaluator returned zero or non-finite".into()));
    }
    // least squares ln|tau| = p ln R + q
    let n = rs.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (r, v) in rs.iter().zip(vals.iter()) {
        let lx = r.ln();
        let ly = v.norm().ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return Err(Error::FitFailure("degenerate radius list".into()));
    }
    let decay_exponent = (n * sxy - sx * sy) / denom;
    // unwrapped phase fit
    let mut phases = Vec::with_capacity(vals.len());
    let mut prev = vals[0].arg();
    let mut acc = prev;
    phases.push(acc);
    for v in vals.iter().skip(1) {
        let raw = v.arg();
        let mut d = raw - prev;
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        acc += d;
        prev = raw;
        phases.push(acc);
    }
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (r, p) in rs.iter().zip(phases.iter()) {
        sx += r;
        sy += p;
        sxx += r * r;
        sxy += r * p;
    }
    let denom = n * sxx - sx * sx;
    let phase_slope = (n * sxy - sx * sy) / denom;
    let outgoing = (phase_slope - wavenumber).abs() < 0.1 * wavenumber;
    Ok(FarFieldFit {
        decay_exponent,
        phase_slope,
        outgoing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn medium() -> Medium {
        Medium::poisson_solid(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn derivative_stack_consistent_with_differences() {
        let k = 0.83;
        let fd = 1e-5;
        let at = |x: f64, z: f64| cyl_derivs(k, Complex64::new(x, 0.0), Complex64::new(z, 0.0));
        let (x, z) = (0.9, 1.4);
        let d = at(x, z);
        let ddx = (at(x + fd, z).g - at(x - fd, z).g) / (2.0 * fd);
        assert!((ddx - d.gx).norm() < 1e-8);
        let ddz = (at(x, z + fd).g - at(x, z - fd).g) / (2.0 * fd);
        assert!((ddz - d.gz).norm() < 1e-8);
        let dxx = (at(x + fd, z).gx - at(x - fd, z).gx) / (2.0 * fd);
        assert!((dxx - d.gxx).norm() < 1e-7);
        let dxz = (at(x, z + fd).gx - at(x, z - fd).gx) / (2.0 * fd);
        assert!((dxz - d.gxz).norm() < 1e-7);
        let dxxx = (at(x + fd, z).gxx - at(x - fd, z).gxx) / (2.0 * fd);
        assert!((dxxx - d.gxxx).norm() < 1e-6, "{dxxx} vs {}", d.gxxx);
        let dxxz = (at(x, z + fd).gxx - at(x, z - fd).gxx) / (2.0 * fd);
        assert!((dxxz - d.gxxz).norm() < 1e-6);
        let dxzz = (at(x + fd, z).gzz - at(x - fd, z).gzz) / (2.0 * fd);
        assert!((dxzz - d.gxzz).norm() < 1e-6);
        // Helmholtz holds exactly in the stack
        assert!((d.gxx + d.gzz + k * k * d.g).norm() < 1e-12);
    }

    #[test]
    fn manufactured_kinds_select_potentials() {
        let m = medium();
        let (_, sol_p) = make_manufactured(ManufacturedKind::HankelP, &m, 0.0, -1.0).unwrap();
        let s = sol_p.eval(0.7, 1.2);
        assert!(s.tau2.norm() == 0.0 && s.tau1.norm() > 0.0);
        let (_, sol_s) = make_manufactured(ManufacturedKind::HankelS, &m, 0.0, -1.0).unwrap();
        let s = sol_s.eval(0.7, 1.2);
        assert!(s.tau1.norm() == 0.0 && s.tau2.norm() > 0.0);
        assert!(make_manufactured(ManufacturedKind::HankelP, &m, 0.0, 0.5).is_err());
    }

    #[test]
    fn manufactured_traction_consistency() {
        // data closures are the negated boundary stresses of the field, and
        // the derivative closures match difference quotients
        let m = medium();
        let (data, sol) = make_manufactured(ManufacturedKind::Mixed, &m, 0.3, -0.9).unwrap();
        for x in [-1.3, 0.0, 2.1] {
            let s = sol.eval(x, 0.0);
            let mut txz = Complex64::default();
            let mut tzz = Complex64::default();
            let mut txz_dx = Complex64::default();
            let mut tzz_dx = Complex64::default();
            for c in &data.components {
                let xc = Complex64::new(x, 0.0);
                txz += (c.txz)(xc);
                tzz += (c.tzz)(xc);
                txz_dx += (c.txz_dx)(xc);
                tzz_dx += (c.tzz_dx)(xc);
            }
            assert!((txz + s.t_xz).norm() <= 1e-12 * (1.0 + s.t_xz.norm()));
            assert!((tzz + s.t_zz).norm() <= 1e-12 * (1.0 + s.t_zz.norm()));
            // 1e-6 relative spot check of derivative closures
            let fd = 1e-5;
            let num_txz = (sol.eval(x + fd, 0.0).t_xz - sol.eval(x - fd, 0.0).t_xz) / (2.0 * fd);
            assert!(
                (txz_dx + num_txz).norm() <= 1e-6 * (1.0 + num_txz.norm()),
                "txz_dx {txz_dx} vs -{num_txz}"
            );
            let num_tzz = (sol.eval(x + fd, 0.0).t_zz - sol.eval(x - fd, 0.0).t_zz) / (2.0 * fd);
            assert!((tzz_dx + num_tzz).norm() <= 1e-6 * (1.0 + num_tzz.norm()));
        }
    }

    #[test]
    fn manufactured_fields_satisfy_helmholtz() {
        let m = medium();
        let (_, sol) = make_manufactured(ManufacturedKind::HankelP, &m, 0.0, -1.0).unwrap();
        // a few standoffs from the source keep the high derivatives tame
        let step = 2.0 * std::f64::consts::PI / m.h / 80.0;
        let grid = ComplexGrid::from_fn(41, 41, step, |ix, iz| {
            sol.eval(-2.0 + ix as f64 * step, 3.0 + iz as f64 * step).tau1
        });
        let res = helmholtz_residual(&grid, m.h, step).unwrap();
        assert!(res <= 1e-6, "helmholtz residual {res}");
        // grid too coarse is refused
        let coarse = ComplexGrid::from_fn(8, 8, 3.0, |_, _| Complex64::new(1.0, 0.0));
        assert!(helmholtz_residual(&coarse, m.h, 3.0).is_err());
        // zero field
        let zero = ComplexGrid::from_fn(12, 12, step, |_, _| Complex64::default());
        assert_eq!(helmholtz_residual(&zero, m.h, step).unwrap(), 0.0);
    }

    #[test]
    fn plane_wave_sampled_residual_is_stencil_limited() {
        let m = medium();
        let step = 2.0 * std::f64::consts::PI / m.h / 40.0;
        let grid = ComplexGrid::from_fn(24, 24, step, |ix, _| {
            (Complex64::i() * m.h * (ix as f64 * step)).exp()
        });
        let res = helmholtz_residual(&grid, m.h, step).unwrap();
        let bound = (step * m.h).powi(4);
        assert!(res <= bound, "residual {res} vs stencil scale {bound}");
    }

    #[test]
    fn manufactured_displacements_satisfy_system() {
        let m = medium();
        let (_, sol) = make_manufactured(ManufacturedKind::Mixed, &m, 0.2, -1.2).unwrap();
        let step = 2.0 * std::f64::consts::PI / m.l / 60.0;
        let grid_u = ComplexGrid::from_fn(28, 28, step, |ix, iz| {
            sol.eval(-1.0 + ix as f64 * step, 2.5 + iz as f64 * step).u
        });
        let grid_w = ComplexGrid::from_fn(28, 28, step, |ix, iz| {
            sol.eval(-1.0 + ix as f64 * step, 2.5 + iz as f64 * step).w
        });
        let (r1, r2) = elastodynamic_residual(&grid_u, &grid_w, &m, step).unwrap();
        assert!(r1 <= 1e-5 && r2 <= 1e-5, "system residuals {r1}, {r2}");
    }

    #[test]
    fn radiation_deficit_decreases() {
        let m = medium();
        let (_, sol) = make_manufactured(ManufacturedKind::HankelP, &m, 0.0, -1.0).unwrap();
        let th: f64 = 1.0;
        let d1 = sol.radiation_deficit(30.0 * th.cos(), 30.0 * th.sin()).0.norm();
        let d2 = sol.radiation_deficit(120.0 * th.cos(), 120.0 * th.sin()).0.norm();
        assert!(d2 < d1, "radiation deficit must decrease: {d1} -> {d2}");
        assert!(d2 < 0.05);
    }

    #[test]
    fn farfield_fit_detects_direction() {
        let m = medium();
        let rs: Vec<f64> = (0..120).map(|i| (10.0 + 90.0 * i as f64 / 119.0) / m.h).collect();
        let out = |r: f64| (Complex64::i() * m.h * r).exp() / r.sqrt();
        let fit = farfield_fit(&out, &rs, m.h).unwrap();
        assert!((fit.decay_exponent + 0.5).abs() < 0.02);
        assert!(fit.outgoing);
        let inc = |r: f64| (-Complex64::i() * m.h * r).exp() / r.sqrt();
        let fit = farfield_fit(&inc, &rs, m.h).unwrap();
        assert!(!fit.outgoing, "incoming counterexample must be rejected");
        // manufactured field along a ray
        let (_, sol) = make_manufactured(ManufacturedKind::HankelP, &m, 0.0, -1.0).unwrap();
        let th: f64 = 0.9;
        let eval = |r: f64| sol.eval(r * th.cos(), r * th.sin()).tau1;
        let fit = farfield_fit(&eval, &rs, m.h).unwrap();
        assert!((fit.decay_exponent + 0.5).abs() < 0.02, "{}", fit.decay_exponent);
        assert!(fit.outgoing);
    }

    #[test]
    fn boundary_residual_zero_for_matching_traces() {
        let m = medium();
        let (data, sol) = make_manufactured(ManufacturedKind::HankelP, &m, 0.0, -1.0).unwrap();
        let xs: Vec<f64> = (0..21).map(|i| -2.0 + 0.2 * i as f64).collect();
        let txz: Vec<Complex64> = xs.iter().map(|&x| sol.eval(x, 0.0).t_xz).collect();
        let tzz: Vec<Complex64> = xs.iter().map(|&x| sol.eval(x, 0.0).t_zz).collect();
        let (r1, r2) = boundary_residual(&xs, &txz, &tzz, &data);
        assert!(r1 < 1e-12 && r2 < 1e-12);
        // sensitivity: corrupt one trace by 10%
        let txz_bad: Vec<Complex64> = txz.iter().map(|v| v * 1.1).collect();
        let (r1b, _) = boundary_residual(&xs, &txz_bad, &tzz, &data);
        assert!(r1b >= 0.05, "corruption must be visible: {r1b}");
    }
}
