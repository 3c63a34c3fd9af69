//! Surface traction data and its spectral transforms.
//!
//! Data enters as closures of (complex-continued) x together with decay
//! metadata. Transforms against the oscillatory kernels are adaptive
//! Gauss panels on the data support; slowly decaying traces of outgoing
//! waves get a finite window plus tails rotated into the complex x-plane,
//! where the combined kernel decays exponentially. The rotation direction
//! per tail follows the sign of the combined phase derivative kappa -+ kw.

use crate::error::{Error, Result};
use crate::medium::Medium;
use crate::quadrature::{gauss_legendre, geometric_edges};
use num_complex::Complex64;
use std::sync::Arc;

pub type XFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Decay metadata of one data component, used for quadrature sizing and
/// ray-truncation decisions.
#[derive(Debug, Clone, Copy)]
pub enum DecayClass {
    /// Supported on [lo, hi].
    Compact { lo: f64, hi: f64 },
    /// amp * exp(-((x-center)/width)^2) envelope.
    Gaussian { center: f64, width: f64 },
    /// Trace of an outgoing cylindrical wave: |x|^(-1/2) envelope with
    /// phase kw |x - center|; `depth` is the source standoff, giving the
    /// transforms an exp(-sqrt(kappa^2-kw^2) depth) tail.
    Oscillatory { wavenumber: f64, center: f64, depth: f64 },
}

/// One additive piece of the boundary data.
pub struct DataComponent {
    pub txz: XFn,
    pub tzz: XFn,
    pub txz_dx: XFn,
    pub tzz_dx: XFn,
    pub decay: DecayClass,
}

/// Surface stress profiles (t_xz, t_zz) with analytic x-derivatives.
pub struct TractionData {
    pub components: Vec<DataComponent>,
}

/// Which profile a transform integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Txz,
    Tzz,
    TxzDx,
    TzzDx,
}

impl DataComponent {
    fn profile(&self, which: ProfileKind) -> &XFn {
        match which {
            ProfileKind::Txz => &self.txz,
            ProfileKind::Tzz => &self.tzz,
            ProfileKind::TxzDx => &self.txz_dx,
            ProfileKind::TzzDx => &self.tzz_dx,
        }
    }
}

impl TractionData {
    /// Zero data.
    pub fn zero() -> TractionData {
        let z: XFn = Arc::new(|_| Complex64::new(0.0, 0.0));
        TractionData {
            components: vec![DataComponent {
                txz: z.clone(),
                tzz: z.clone(),
                txz_dx: z.clone(),
                tzz_dx: z,
                decay: DecayClass::Compact { lo: -1.0, hi: 1.0 },
            }],
        }
    }

    /// T0_zz = amp exp(-((x-center)/width)^2), T0_xz = 0.
    pub fn gaussian_tzz(amp: f64, width: f64, center: f64) -> TractionData {
        TractionData {
            components: vec![gaussian_component(amp, width, center, true)],
        }
    }

    /// T0_xz = amp exp(-((x-center)/width)^2), T0_zz = 0.
    pub fn gaussian_txz(amp: f64, width: f64, center: f64) -> TractionData {
        TractionData {
            components: vec![gaussian_component(amp, width, center, false)],
        }
    }

    /// Sampled data on a uniform grid; values are interpolated cubically and
    /// the derivative profiles come from 6th-order central differences on
    /// the sample grid.
    pub fn from_samples(xs: &[f64], txz: &[f64], tzz: &[f64]) -> Result<TractionData> {
        if xs.len() < 8 || txz.len() != xs.len() || tzz.len() != xs.len() {
            return Err(Error::InvalidParameter {
                name: "samples",
                reason: "need >= 8 aligned samples".into(),
            });
        }
        let dx = xs[1] - xs[0];
        for w in xs.windows(2) {
            if (w[1] - w[0] - dx).abs() > 1e-9 * dx.abs() {
                return Err(Error::InvalidParameter {
                    name: "samples",
                    reason: "sample grid must be uniform".into(),
                });
            }
        }
        let txz_d = fd6_derivative(txz, dx);
        let tzz_d = fd6_derivative(tzz, dx);
        let lo = xs[0];
        let hi = *xs.last().unwrap();
        let mk = |vals: Vec<f64>, lo: f64, dx: f64| -> XFn {
            Arc::new(move |x: Complex64| Complex64::new(cubic_interp(&vals, lo, dx, x.re), 0.0))
        };
        Ok(TractionData {
            components: vec![DataComponent {
                txz: mk(txz.to_vec(), lo, dx),
                tzz: mk(tzz.to_vec(), lo, dx),
                txz_dx: mk(txz_d, lo, dx),
                tzz_dx: mk(tzz_d, lo, dx),
                decay: DecayClass::Compact { lo, hi },
            }],
        })
    }

    /// Superpose two data sets (everything downstream is linear).
    pub fn superpose(mut self, mut other: TractionData) -> TractionData {
        self.components.append(&mut other.components);
        self
    }

    /// The weakest tail bound across components, for ray truncation.
    pub fn tail_bound(&self) -> crate::contours::TailBound {
        use crate::contours::TailBound;
        let mut best = TailBound::None;
        for c in &self.components {
            let b = match c.decay {
                DecayClass::Compact { lo, hi } => TailBound::GaussKappa {
                    // compact support transforms have no true kappa decay;
                    // use a generous gaussian scale of the support width
                    rate: 2.0 / (hi - lo).abs().max(1e-6),
                },
                DecayClass::Gaussian { width, .. } => TailBound::GaussKappa { rate: width },
                DecayClass::Oscillatory { depth, .. } => TailBound::ExpKappa { rate: depth.abs() },
            };
            best = match (best, b) {
                (TailBound::None, x) | (x, TailBound::None) => x,
                (TailBound::ExpKappa { rate: r1 }, TailBound::ExpKappa { rate: r2 }) => {
                    TailBound::ExpKappa { rate: r1.min(r2) }
                }
                (TailBound::ExpKappa { rate }, _) | (_, TailBound::ExpKappa { rate }) => {
                    TailBound::ExpKappa { rate }
                }
                (TailBound::GaussKappa { rate: r1 }, TailBound::GaussKappa { rate: r2 }) => {
                    TailBound::GaussKappa { rate: r1.min(r2) }
                }
            };
        }
        best
    }
}

fn gaussian_component(amp: f64, width: f64, center: f64, on_zz: bool) -> DataComponent {
    let zero: XFn = Arc::new(|_| Complex64::new(0.0, 0.0));
    let w2 = width * width;
    let f: XFn = Arc::new(move |x: Complex64| {
        let d = x - center;
        amp * (-d * d / w2).exp()
    });
    let fdx: XFn = Arc::new(move |x: Complex64| {
        let d = x - center;
        amp * (-d * d / w2).exp() * (-2.0 * d / w2)
    });
    let decay = DecayClass::Gaussian { center, width };
    if on_zz {
        DataComponent {
            txz: zero.clone(),
            tzz: f,
            txz_dx: zero,
            tzz_dx: fdx,
            decay,
        }
    } else {
        DataComponent {
            txz: f,
            tzz: zero.clone(),
            txz_dx: fdx,
            tzz_dx: zero,
            decay,
        }
    }
}

fn fd6_derivative(v: &[f64], dx: f64) -> Vec<f64> {
    let n = v.len();
    let mut out = vec![0.0; n];
    for i in 0..n {
        if i >= 3 && i + 3 < n {
            out[i] = (-v[i - 3] + 9.0 * v[i - 2] - 45.0 * v[i - 1] + 45.0 * v[i + 1]
                - 9.0 * v[i + 2]
                + v[i + 3])
                / (60.0 * dx);
        } else if i >= 1 && i + 1 < n {
            out[i] = (v[i + 1] - v[i - 1]) / (2.0 * dx);
        } else if i == 0 {
            out[i] = (v[1] - v[0]) / dx;
        } else {
            out[i] = (v[n - 1] - v[n - 2]) / dx;
        }
    }
    out
}

fn cubic_interp(v: &[f64], lo: f64, dx: f64, x: f64) -> f64 {
    let n = v.len();
    let s = (x - lo) / dx;
    if s <= 0.0 || s >= (n - 1) as f64 {
        return 0.0;
    }
    let i = (s.floor() as usize).clamp(1, n - 3);
    let t = s - i as f64;
    let (p0, p1, p2, p3) = (v[i - 1], v[i], v[i + 1], v[i + 2]);
    // Catmull-Rom
    0.5 * ((2.0 * p1)
        + (-p0 + p2) * t
        + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t * t
        + (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * t * t * t)
}

/// Surface displacement traces with the same transform machinery.
pub struct SurfaceDisplacements {
    pub u: XFn,
    pub w: XFn,
    pub decay: DecayClass,
}

/// Effective transform wavenumber of a compressional-plane point: the
/// kernel is exp(i kappa x) with kappa = -i (h/2)(zeta - 1/zeta). On the
/// imaginary axis kappa = +-(h/2)(t + 1/t); on the unit circle h sin(theta).
pub fn fourier_wavenumber_zeta(m: &Medium, z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("zeta must be nonzero".into()));
    }
    Ok(-Complex64::i() * 0.5 * m.h * (z - 1.0 / z))
}

/// Integrate profile * exp(i kappa x) over the real line for one component.
pub(crate) fn ft_component(comp: &DataComponent, which: ProfileKind, kappa: f64) -> Complex64 {
    let f = comp.profile(which);
    let (gx, gw) = gauss_legendre(16);
    let kernel = |x: Complex64| (Complex64::i() * kappa * x).exp();

    let real_panels = |lo: f64, hi: f64, max_len: f64| -> Complex64 {
        let n = (((hi - lo) / max_len).ceil() as usize).max(1);
        let mut sum = Complex64::new(0.0, 0.0);
        for p in 0..n {
            let a = lo + (hi - lo) * p as f64 / n as f64;
            let b = lo + (hi - lo) * (p + 1) as f64 / n as f64;
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, w) in gx.iter().zip(gw.iter()) {
                let xr = Complex64::new(mid + half * x, 0.0);
                acc += f(xr) * kernel(xr) * *w;
            }
            sum += acc * half;
        }
        sum
    };

    match comp.decay {
        DecayClass::Compact { lo, hi } => {
            let max_len = (12.0 / kappa.abs().max(1e-12)).min((hi - lo) / 4.0);
            real_panels(lo, hi, max_len.max(1e-12))
        }
        DecayClass::Gaussian { center, width } => {
            let half_span = 6.5 * width;
            let max_len = (12.0 / kappa.abs().max(1e-12)).min(width / 1.5);
            real_panels(center - half_span, center + half_span, max_len)
        }
        DecayClass::Oscillatory {
            wavenumber: kw,
            center,
            depth,
        } => {
            let w_half = (16.0 / kw).max(4.0 * depth.abs()) + 1.0 / kw;
            let max_len = 12.0 / (kappa.abs() + kw);
            // refine toward the center, where the cylindrical-wave profile
            // bends on the scale of the standoff rather than the wavelength
            let first = (0.5 * depth.abs()).max(0.05 / kw).min(1.0 / kw);
            let half_edges = geometric_edges(0.0, w_half, first, 1.6);
            let mut sum = Complex64::new(0.0, 0.0);
            for pair in half_edges.windows(2) {
                sum += real_panels(center + pair[0], center + pair[1], max_len);
                sum += real_panels(center - pair[1], center - pair[0], max_len);
            }
            // rotated tails: direction set by the combined phase derivative
            for (corner, q, outward) in [
                (center + w_half, kappa + kw, 1.0),
                (center - w_half, kappa - kw, -1.0),
            ] {
                let sigma = if q >= 0.0 { 1.0 } else { -1.0 };
                let rate = q.abs().max(1e-9 * kw);
                let edges = geometric_edges(0.0, 42.0 / rate, 0.25 / rate, 2.0);
                let mut tail = Complex64::new(0.0, 0.0);
                for pair in edges.windows(2) {
                    let mid = 0.5 * (pair[0] + pair[1]);
                    let half = 0.5 * (pair[1] - pair[0]);
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (x, w) in gx.iter().zip(gw.iter()) {
                        let y = mid + half * x;
                        let xp = Complex64::new(corner, sigma * y);
                        acc += f(xp) * kernel(xp) * *w;
                    }
                    tail += acc * half;
                }
                // dx = i sigma dy; the left tail runs toward the axis
                sum += Complex64::i() * sigma * outward * tail;
            }
            sum
        }
    }
}

fn ft_data(data: &TractionData, which: ProfileKind, kappa: Complex64) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for comp in &data.components {
        if matches!(comp.decay, DecayClass::Oscillatory { .. })
            && kappa.im.abs() > 1e-8 * (1.0 + kappa.norm())
        {
            return Err(Error::Convergence { im_kappa: kappa.im });
        }
        sum += ft_component(comp, which, kappa.re);
    }
    Ok(sum)
}

/// First-pair data transform at a compressional-plane point.
pub fn transform_f1(m: &Medium, data: &TractionData, zeta: Complex64) -> Result<Complex64> {
    let kappa = fourier_wavenumber_zeta(m, zeta)?;
    let tzz = ft_data(data, ProfileKind::Tzz, kappa)?;
    let txz_dx = ft_data(data, ProfileKind::TxzDx, kappa)?;
    let pre1 = -Complex64::i() / (4.0 * m.h * (m.lambda + 2.0 * m.mu)) * (zeta + 1.0 / zeta);
    let pre2 = -1.0 / (2.0 * m.l * m.l * m.mu);
    Ok(pre1 * tzz + pre2 * txz_dx)
}

/// Second-pair data transform at a shear-plane point.
pub fn transform_f2(m: &Medium, data: &TractionData, zt: Complex64) -> Result<Complex64> {
    if zt.norm() == 0.0 {
        return Err(Error::Domain("zeta-tilde must be nonzero".into()));
    }
    let kappa = -Complex64::i() * 0.5 * m.l * (zt - 1.0 / zt);
    let tzz_dx = ft_data(data, ProfileKind::TzzDx, kappa)?;
    let txz = ft_data(data, ProfileKind::Txz, kappa)?;
    let pre1 = -1.0 / (2.0 * m.mu * m.l * m.l);
    let pre2 = Complex64::i() / (4.0 * m.l * m.mu) * (zt + 1.0 / zt);
    Ok(pre1 * tzz_dx + pre2 * txz)
}

/// Displacement-trace transforms on the uniformized plane.
pub fn transform_phi(
    m: &Medium,
    disp: &SurfaceDisplacements,
    xi: Complex64,
) -> Result<(Complex64, Complex64)> {
    if xi.norm() == 0.0 {
        return Err(Error::Domain("xi must be nonzero".into()));
    }
    let kappa = -Complex64::i() * 0.5 * m.h / m.a * (xi - m.a * m.a / xi);
    if kappa.im.abs() > 1e-8 * (1.0 + kappa.norm()) {
        return Err(Error::Convergence { im_kappa: kappa.im });
    }
    let zero: XFn = Arc::new(|_| Complex64::new(0.0, 0.0));
    let comp_u = DataComponent {
        txz: disp.u.clone(),
        tzz: zero.clone(),
        txz_dx: zero.clone(),
        tzz_dx: zero.clone(),
        decay: disp.decay,
    };
    let comp_w = DataComponent {
        txz: disp.w.clone(),
        tzz: zero.clone(),
        txz_dx: zero.clone(),
        tzz_dx: zero,
        decay: disp.decay,
    };
    let phi1 = ft_component(&comp_u, ProfileKind::Txz, kappa.re);
    let phi2 = ft_component(&comp_w, ProfileKind::Txz, kappa.re);
    Ok((phi1, phi2))
}
