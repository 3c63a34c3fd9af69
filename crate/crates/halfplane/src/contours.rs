//! Contour segments in the three spectral planes and the quadrature rules
//! attached to them.
//!
//! The jump densities live on three pieces per plane: the upper imaginary
//! ray (|zeta| > 1), the right unit semicircle, and the lower imaginary
//! interval (|zeta| < 1). Orientation runs the ray downward, the semicircle
//! clockwise and the interval from -i toward the origin, so the transform
//! wavenumber kappa = -i (kw/2)(zeta - 1/zeta) decreases monotonically from
//! +infinity to -infinity along the chain; this is the orientation for which
//! the Cauchy representation has the left-limit solution on its plus side.
//! The complementary pieces, where the densities vanish identically, are
//! kept as a separate list for global-relation checks.
//!
//! Quadrature uses Gauss-Legendre panels in the natural parameters: the
//! compactification s = 1 - 1/t on rays, the angle on arcs, and u = -ln t
//! on the lower interval (which absorbs the d zeta / zeta measure at the
//! origin). When a Rayleigh root lies inside a segment, panels around it
//! are rebuilt in the wavenumber variable so the pole term can be removed
//! and re-added analytically downstream.

use crate::error::{Error, Result};
use crate::medium::Medium;
use crate::quadrature::gauss_legendre;
use crate::spectral_maps::{Plane, Side};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Shape of a contour piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentKind {
    Ray,
    Interval,
    Arc,
}

/// Sign pattern of the algebraic system attached to a uniformized segment.
/// `A`: the compressional-plane point carries nonzero jump data, so its row
/// is the reflected global relation (-b). `B`: that point sits on a zero
/// part and the row is the direct relation (+b).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Geometry {
    /// zeta = sign * i t, t in [t_lo, infinity), traversed t decreasing.
    ImagRay { sign: f64 },
    /// zeta = sign * i t, t in (0, 1], traversed t decreasing (u = -ln t increasing).
    ImagInterval { sign: f64 },
    /// zeta = radius e^{i theta}, theta in [lo, hi]; traversed hi -> lo.
    CircleArc { radius: f64, lo: f64, hi: f64 },
    /// xi-plane imaginary segment i [lo, hi] (lo < hi, signed).
    XiSegment { lo: f64, hi: f64 },
    /// xi-plane ray i [lo, infinity).
    XiRay { lo: f64 },
}

/// One oriented contour piece.
#[derive(Debug, Clone)]
pub struct Segment {
    pub plane: Plane,
    pub kind: SegmentKind,
    pub side: Side,
    pub variant: Option<Variant>,
    pub label: &'static str,
    /// Physical wavenumber of the plane (h for zeta, l for zeta-tilde).
    pub wavenumber: f64,
    geometry: Geometry,
    /// Ray truncation used by `point` (quadratures carry their own).
    pub truncation: f64,
}

impl Segment {
    /// Parametrize the segment by t in [0, 1] along its orientation.
    pub fn point(&self, t: f64) -> Complex64 {
        let t = t.clamp(0.0, 1.0);
        match self.geometry {
            Geometry::ImagRay { sign } => {
                // s-compactification, traversed from the truncation toward t=1
                let s_max = 1.0 - 1.0 / self.truncation;
                let s = (1.0 - t) * s_max;
                Complex64::new(0.0, sign / (1.0 - s))
            }
            Geometry::ImagInterval { sign } => {
                let u = t * self.truncation;
                Complex64::new(0.0, sign * (-u).exp())
            }
            Geometry::CircleArc { radius, lo, hi } => {
                let th = hi + (lo - hi) * t;
                radius * Complex64::new(th.cos(), th.sin())
            }
            Geometry::XiSegment { lo, hi } => Complex64::new(0.0, lo + (hi - lo) * t),
            Geometry::XiRay { lo } => {
                let s_max = 1.0 - lo / self.truncation;
                let s = t * s_max;
                Complex64::new(0.0, lo / (1.0 - s))
            }
        }
    }

    /// Whether `z` lies on the segment within `tol` (truncation ignored:
    /// rays extend to infinity).
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        match self.geometry {
            Geometry::ImagRay { sign } => z.re.abs() <= tol && (z.im * sign) >= 1.0 - tol,
            Geometry::ImagInterval { sign } => {
                z.re.abs() <= tol && z.im * sign > tol && z.im * sign <= 1.0 + tol
            }
            Geometry::CircleArc { radius, lo, hi } => {
                if (z.norm() - radius).abs() > tol {
                    return false;
                }
                let th = z.im.atan2(z.re);
                th >= lo - tol && th <= hi + tol
            }
            Geometry::XiSegment { lo, hi } => {
                z.re.abs() <= tol && z.im >= lo - tol && z.im <= hi + tol
            }
            Geometry::XiRay { lo } => z.re.abs() <= tol && z.im >= lo - tol,
        }
    }
}

/// A plane's contour: the pieces carrying nonzero jump data and the
/// complementary zero pieces.
#[derive(Debug, Clone)]
pub struct Contour {
    pub plane: Plane,
    pub nonzero: Vec<Segment>,
    pub zero: Vec<Segment>,
}

fn physical_contour(plane: Plane, kw: f64) -> Contour {
    let mk = |kind, geometry, label| Segment {
        plane,
        kind,
        side: Side::None,
        variant: None,
        label,
        wavenumber: kw,
        geometry,
        truncation: 50.0,
    };
    let (ray_l, arc_l, int_l, zu_l, zl_l, cl_l) = match plane {
        Plane::Zeta => (
            "zeta_ray",
            "zeta_arc_right",
            "zeta_interval",
            "zeta_zero_upper_interval",
            "zeta_zero_lower_ray",
            "zeta_zero_arc_left",
        ),
        _ => (
            "zt_ray",
            "zt_arc_right",
            "zt_interval",
            "zt_zero_upper_interval",
            "zt_zero_lower_ray",
            "zt_zero_arc_left",
        ),
    };
    use std::f64::consts::FRAC_PI_2;
    Contour {
        plane,
        nonzero: vec![
            mk(SegmentKind::Ray, Geometry::ImagRay { sign: 1.0 }, ray_l),
            mk(
                SegmentKind::Arc,
                Geometry::CircleArc {
                    radius: 1.0,
                    lo: -FRAC_PI_2,
                    hi: FRAC_PI_2,
                },
                arc_l,
            ),
            mk(
                SegmentKind::Interval,
                Geometry::ImagInterval { sign: -1.0 },
                int_l,
            ),
        ],
        zero: vec![
            mk(
                SegmentKind::Interval,
                Geometry::ImagInterval { sign: 1.0 },
                zu_l,
            ),
            mk(SegmentKind::Ray, Geometry::ImagRay { sign: -1.0 }, zl_l),
            mk(
                SegmentKind::Arc,
                Geometry::CircleArc {
                    radius: 1.0,
                    lo: FRAC_PI_2,
                    hi: 3.0 * FRAC_PI_2,
                },
                cl_l,
            ),
        ],
    }
}

/// The compressional-plane contour K.
pub fn build_contour_zeta(m: &Medium) -> Contour {
    physical_contour(Plane::Zeta, m.h)
}

/// The shear-plane contour (same three-part structure).
pub fn build_contour_zeta_tilde(m: &Medium) -> Contour {
    physical_contour(Plane::ZetaTilde, m.l)
}

/// The uniformized solve segments with their system-variant tags. On-cut
/// segments carry `Side::Plus`.
pub fn build_segments_xi(m: &Medium) -> Vec<Segment> {
    let a = m.a;
    let a2 = a * a;
    let mk = |kind, geometry, side, variant, label| Segment {
        plane: Plane::Xi,
        kind,
        side,
        variant: Some(variant),
        label,
        wavenumber: m.h,
        geometry,
        truncation: 50.0 * a,
    };
    vec![
        mk(
            SegmentKind::Ray,
            Geometry::XiRay { lo: a2 },
            Side::None,
            Variant::A,
            "xi_upper_ray",
        ),
        mk(
            SegmentKind::Interval,
            Geometry::XiSegment { lo: a, hi: a2 },
            Side::Plus,
            Variant::A,
            "xi_cut_upper_outer",
        ),
        mk(
            SegmentKind::Interval,
            Geometry::XiSegment { lo: -a, hi: -1.0 },
            Side::Plus,
            Variant::A,
            "xi_cut_lower_inner",
        ),
        mk(
            SegmentKind::Interval,
            Geometry::XiSegment { lo: -1.0, hi: 0.0 },
            Side::None,
            Variant::A,
            "xi_lower_interval",
        ),
        mk(
            SegmentKind::Arc,
            Geometry::CircleArc {
                radius: a,
                lo: -std::f64::consts::FRAC_PI_2,
                hi: std::f64::consts::FRAC_PI_2,
            },
            Side::None,
            Variant::A,
            "xi_arc_right",
        ),
        mk(
            SegmentKind::Interval,
            Geometry::XiSegment { lo: 1.0, hi: a },
            Side::Plus,
            Variant::B,
            "xi_cut_upper_inner",
        ),
        mk(
            SegmentKind::Interval,
            Geometry::XiSegment { lo: -a2, hi: -a },
            Side::Plus,
            Variant::B,
            "xi_cut_lower_outer",
        ),
    ]
}

/// Which system variant applies at a point of the uniformized contour.
pub fn classify_xi(m: &Medium, xi: Complex64) -> Result<Variant> {
    let tol = 1e-9 * m.a * m.a;
    for seg in build_segments_xi(m) {
        if seg.contains(xi, tol) {
            return Ok(seg.variant.unwrap());
        }
    }
    Err(Error::Classification { xi })
}

/// Density decay available for truncating ray quadratures, as a bound on
/// the sampled density in |kappa|.
#[derive(Debug, Clone, Copy)]
pub enum TailBound {
    /// No usable decay; rays then rely on the field's z-decay alone.
    None,
    /// |density| <~ exp(-rate (|kappa| - kw)).
    ExpKappa { rate: f64 },
    /// |density| <~ exp(-(kappa rate)^2 / 4).
    GaussKappa { rate: f64 },
}

impl TailBound {
    fn factor(&self, kappa: f64, kw: f64) -> f64 {
        match *self {
            TailBound::None => 1.0,
            TailBound::ExpKappa { rate } => (-(kappa.abs() - kw).max(0.0) * rate).exp(),
            TailBound::GaussKappa { rate } => (-(kappa * rate).powi(2) / 4.0).exp(),
        }
    }
}

/// Evaluation-driven quadrature sizing: largest |x| and smallest z of the
/// requested field points, the largest radius (controls arc resolution),
/// and the data decay bound.
#[derive(Debug, Clone, Copy)]
pub struct FieldHint {
    pub x_max: f64,
    pub z_min: f64,
    pub r_max: f64,
    pub decay: TailBound,
}

/// A pole window on a ray or interval segment: the signed wavenumber of the
/// determinant zero and the half-width of the panels built around it.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PoleWindow {
    pub kappa_pole: f64,
    pub half_width: f64,
}

/// One quadrature node on a physical-plane segment.
#[derive(Debug, Clone, Copy)]
pub struct QuadNode {
    /// Position in the segment's plane.
    pub zeta: Complex64,
    /// Complex weight including the d zeta factor, oriented along the segment.
    pub weight: Complex64,
    /// Transform wavenumber kappa at the node (real on these contours).
    pub kappa: f64,
    /// Vertical wavenumber (kw/2)(zeta + 1/zeta) at the node.
    pub vert: Complex64,
    /// Positive Gauss weight in the kappa variable; nonzero only for nodes
    /// inside a pole window, where the singular part is subtracted nodewise.
    pub kappa_weight: f64,
    pub in_window: bool,
}

/// Gauss panels attached to one segment.
#[derive(Debug, Clone)]
pub struct Quadrature {
    pub nodes: Vec<QuadNode>,
    /// Truncation of |kappa| actually used.
    pub truncation: f64,
    pub order: usize,
    pub window: Option<PoleWindow>,
}

impl Quadrature {
    /// Plain node positions (spec surface; `nodes` carries the rest).
    pub fn points(&self) -> Vec<Complex64> {
        self.nodes.iter().map(|n| n.zeta).collect()
    }
    pub fn weights(&self) -> Vec<Complex64> {
        self.nodes.iter().map(|n| n.weight).collect()
    }
}

fn zeta_of_kappa(kind: SegmentKind, sign: f64, kw: f64, kappa: f64) -> (f64, Complex64) {
    // |kappa| = (kw/2)(t + 1/t); rays take t >= 1, intervals t <= 1
    let q = kappa.abs() / kw;
    let root = (q * q - 1.0).max(0.0).sqrt();
    let t = match kind {
        SegmentKind::Ray => q + root,
        _ => q - root,
    };
    (t, Complex64::new(0.0, sign * t))
}

fn node_at(kw: f64, zeta: Complex64, weight: Complex64, kappa_weight: f64, in_window: bool) -> QuadNode {
    let vert = 0.5 * kw * (zeta + 1.0 / zeta);
    let kappa = (-Complex64::i() * 0.5 * kw * (zeta - 1.0 / zeta)).re;
    QuadNode {
        zeta,
        weight,
        kappa,
        vert,
        kappa_weight,
        in_window,
    }
}

/// Subpanel count resolving the oscillation exp(-i kappa x) over a panel.
fn osc_count(dk: f64, x_max: f64) -> usize {
    (1.0 + dk * x_max / 12.0).ceil() as usize
}

/// Build the quadrature for a physical-plane segment.
///
/// `trunc_kappa` is the |kappa| cutoff on rays and intervals (at least a
/// margin beyond the plane's wavenumber). `window` rebuilds the panels
/// around a determinant zero in the kappa variable.
pub fn quadrature_with_window(
    m: &Medium,
    seg: &Segment,
    order: usize,
    trunc_kappa: f64,
    hint: &FieldHint,
    window: Option<PoleWindow>,
) -> Result<Quadrature> {
    if order < 2 {
        return Err(Error::InvalidParameter {
            name: "order",
            reason: format!("quadrature order must be >= 2, got {order}"),
        });
    }
    let kw = seg.wavenumber;
    let trunc = trunc_kappa.max(1.5 * kw);
    // refinement check for the unbounded pieces: the integrand bound at the
    // cutoff (field z-decay times data decay) must be negligible
    if matches!(seg.kind, SegmentKind::Ray | SegmentKind::Interval) {
        let nu = (trunc * trunc - kw * kw).max(0.0).sqrt();
        let bound = (-nu * hint.z_min).exp() * hint.decay.factor(trunc, kw);
        if bound > 1e-14 {
            return Err(Error::RefinementNeeded { z: hint.z_min });
        }
    }
    if (kw - m.h).abs() > 1e-12 * m.h && (kw - m.l).abs() > 1e-12 * m.l {
        return Err(Error::InvalidParameter {
            name: "segment",
            reason: "segment wavenumber does not belong to the medium".into(),
        });
    }
    let (gx, gw) = gauss_legendre(order);
    let mut nodes: Vec<QuadNode> = Vec::new();

    // junction zone boundary: below it the d zeta/d kappa measure is steep
    // and panels run in the compactified parameter instead of kappa
    let mut kappa_j = 1.25 * kw;
    let mut delta = 0.0;
    if let Some(win) = window {
        let kp = win.kappa_pole.abs();
        if kp > kw && kp < trunc {
            if kp < 1.45 * kw {
                kappa_j = kw + 0.5 * (kp - kw);
            }
            delta = win
                .half_width
                .min(0.2 * (kp - kappa_j))
                .min(0.2 * (trunc - kp));
        }
    }
    let effective_window = window.and_then(|w| {
        if delta > 0.0 {
            Some(PoleWindow {
                kappa_pole: w.kappa_pole,
                half_width: delta,
            })
        } else {
            None
        }
    });

    // Gauss panel in kappa over [k0, k1] with |kappa| in (kappa_j, trunc];
    // nodes are emitted along decreasing kappa to match traversal order.
    let mut kappa_panel = |nodes: &mut Vec<QuadNode>,
                           sign_axis: f64,
                           kind: SegmentKind,
                           k0: f64,
                           k1: f64,
                           in_window: bool| {
        let mid = 0.5 * (k0 + k1);
        let half = 0.5 * (k1 - k0);
        for (x, w) in gx.iter().rev().zip(gw.iter().rev()) {
            let kappa = mid + half * x;
            let (t, zeta) = zeta_of_kappa(kind, sign_axis, kw, kappa.abs());
            // d zeta/d kappa = (d zeta/dt)(dt/d|kappa|)(d|kappa|/d kappa)
            let dt_dabs = 2.0 * t * t / (kw * (t * t - 1.0));
            let zprime = Complex64::new(0.0, sign_axis) * dt_dabs * kappa.signum();
            // segment orientation runs kappa decreasing: d zeta = -zprime d kappa
            let weight = -zprime * (half * w);
            nodes.push(node_at(kw, zeta, weight, half * w, in_window));
        }
    };

    // compactified junction panels: ray s = 1 - 1/t in [0, s_j] traversed
    // s decreasing; interval u = -ln t in [0, u_j] traversed u increasing
    let t_j = {
        let q = kappa_j / kw;
        q + (q * q - 1.0).sqrt()
    };

    match seg.geometry {
        Geometry::ImagRay { sign } if sign > 0.0 => {
            // kappa zone: trunc down to kappa_j
            let mut edges = pole_aware_edges(kappa_j, trunc, effective_window, hint.x_max);
            edges.reverse();
            for pair in edges.windows(2) {
                let (hi, lo) = (pair[0], pair[1]);
                kappa_panel(&mut nodes, 1.0, SegmentKind::Ray, lo.0, hi.0, lo.1 && hi.1);
            }
            // junction zone in s, from s_j down to 0
            let s_j = 1.0 - 1.0 / t_j;
            let mut s_edges = s_zone_edges(kw, s_j, hint.x_max);
            s_edges.reverse();
            for pair in s_edges.windows(2) {
                let mid = 0.5 * (pair[0] + pair[1]);
                let half = 0.5 * (pair[0] - pair[1]); // traversal decreasing s
                for (x, w) in gx.iter().zip(gw.iter()) {
                    let s = mid - half * x;
                    let t = 1.0 / (1.0 - s);
                    let zeta = Complex64::new(0.0, t);
                    // d zeta = i dt = i ds/(1-s)^2; traversal has ds < 0
                    let weight = -Complex64::i() / ((1.0 - s) * (1.0 - s)) * (half * w);
                    nodes.push(node_at(kw, zeta, weight, 0.0, false));
                }
            }
        }
        Geometry::ImagInterval { sign } if sign < 0.0 => {
            // junction zone in u = -ln t, from 0 to u_j (kappa: -kw -> -kappa_j)
            let u_j = t_j.ln();
            for pair in s_zone_edges(kw, u_j, hint.x_max).windows(2) {
                let mid = 0.5 * (pair[0] + pair[1]);
                let half = 0.5 * (pair[1] - pair[0]);
                for (x, w) in gx.iter().zip(gw.iter()) {
                    let u = mid + half * x;
                    let t = (-u).exp();
                    let zeta = Complex64::new(0.0, -t);
                    // zeta = -i e^{-u}: d zeta = i e^{-u} du, du > 0 along traversal
                    let weight = Complex64::i() * t * (half * w);
                    nodes.push(node_at(kw, zeta, weight, 0.0, false));
                }
            }
            // kappa zone: -kappa_j down to -trunc; |kappa| edges increasing
            let flipped = effective_window.map(|w| PoleWindow {
                kappa_pole: w.kappa_pole.abs(),
                half_width: w.half_width,
            });
            let edges = pole_aware_edges(kappa_j, trunc, flipped, hint.x_max);
            for pair in edges.windows(2) {
                kappa_panel(
                    &mut nodes,
                    -1.0,
                    SegmentKind::Interval,
                    -pair[1].0,
                    -pair[0].0,
                    pair[0].1 && pair[1].1,
                );
            }
        }
        Geometry::CircleArc { radius, lo, hi } => {
            if (radius - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter {
                    name: "segment",
                    reason: "quadrature is built on physical-plane segments only".into(),
                });
            }
            let span = hi - lo;
            let npan = ((span / 0.5).ceil() as usize)
                .max(osc_count(2.0 * kw, hint.r_max.max(hint.x_max)));
            let dth = span / npan as f64;
            // traversal hi -> lo (clockwise on the right semicircle)
            for p in 0..npan {
                let th1 = hi - p as f64 * dth;
                let th0 = th1 - dth;
                let mid = 0.5 * (th0 + th1);
                let half = 0.5 * dth;
                for (x, w) in gx.iter().rev().zip(gw.iter().rev()) {
                    let th = mid + half * x;
                    let zeta = Complex64::new(th.cos(), th.sin());
                    let zprime = Complex64::i() * zeta;
                    let weight = -zprime * (half * w); // d theta < 0 along traversal
                    nodes.push(node_at(kw, zeta, weight, 0.0, false));
                }
            }
        }
        Geometry::ImagRay { .. } | Geometry::ImagInterval { .. } => {
            // zero-part pieces: node placement only, used for residual checks
            let edges = crate::quadrature::geometric_edges(kw * 1.001, trunc, 0.1 * kw, 1.7);
            let (kind, sign, flip) = match seg.geometry {
                Geometry::ImagRay { sign } => (SegmentKind::Ray, sign, -1.0),
                Geometry::ImagInterval { sign } => (SegmentKind::Interval, sign, 1.0),
                _ => unreachable!(),
            };
            for pair in edges.windows(2) {
                kappa_panel(
                    &mut nodes,
                    sign,
                    kind,
                    (flip * pair[1]).min(flip * pair[0]),
                    (flip * pair[1]).max(flip * pair[0]),
                    false,
                );
            }
        }
        _ => {
            return Err(Error::InvalidParameter {
                name: "segment",
                reason: "quadrature is built on physical-plane segments only".into(),
            })
        }
    }

    Ok(Quadrature {
        nodes,
        truncation: trunc,
        order,
        window: effective_window,
    })
}

/// Panel edges for the compactified junction zone [0, s_j]; refined toward
/// 0 and split for oscillation (the kappa span of the zone is below ~kw/2
/// so a few subdivisions suffice).
fn s_zone_edges(kw: f64, s_j: f64, x_max: f64) -> Vec<f64> {
    let base = crate::quadrature::geometric_edges(0.0, s_j, 0.08 * s_j, 1.9);
    let n = osc_count(0.5 * kw, x_max);
    if n <= 1 {
        return base;
    }
    let mut out = Vec::new();
    for pair in base.windows(2) {
        for i in 0..n {
            out.push(pair[0] + (pair[1] - pair[0]) * i as f64 / n as f64);
        }
    }
    out.push(s_j);
    out
}

/// Spec surface: quadrature without pole handling.
pub fn quadrature_for(
    m: &Medium,
    seg: &Segment,
    order: usize,
    trunc_kappa: f64,
    hint: &FieldHint,
) -> Result<Quadrature> {
    quadrature_with_window(m, seg, order, trunc_kappa, hint, None)
}

/// Panel edges in |kappa| over [k_lo, trunc], geometric from k_lo,
/// subdivided for oscillation against x_max, and rebuilt around a pole
/// window when present. Returns (edge, is_window_edge) pairs in increasing
/// order; panels whose both edges are window edges are the singular panels.
fn pole_aware_edges(
    k_lo: f64,
    trunc: f64,
    window: Option<PoleWindow>,
    x_max: f64,
) -> Vec<(f64, bool)> {
    let raw = crate::quadrature::geometric_edges(k_lo, trunc, 0.05 * k_lo, 1.6);
    let mut edges: Vec<f64> = Vec::new();
    for pair in raw.windows(2) {
        let n = osc_count(pair[1] - pair[0], x_max);
        for i in 0..n {
            edges.push(pair[0] + (pair[1] - pair[0]) * i as f64 / n as f64);
        }
    }
    edges.push(trunc);

    let Some(win) = window else {
        return edges.into_iter().map(|e| (e, false)).collect();
    };
    let kp = win.kappa_pole.abs();
    let delta = win.half_width;
    if kp - 2.0 * delta <= k_lo || kp + 2.0 * delta >= trunc {
        return edges.into_iter().map(|e| (e, false)).collect();
    }
    // drop edges inside the refined zone around the pole, then splice in
    // geometric approach panels plus the two window panels
    let zone_lo = kp - 8.0 * delta;
    let zone_hi = kp + 8.0 * delta;
    let mut out: Vec<(f64, bool)> = edges
        .iter()
        .filter(|&&e| e < zone_lo || e > zone_hi)
        .map(|&e| (e, false))
        .collect();
    for mult in [8.0, 4.0, 2.0] {
        let e = kp - mult * delta;
        if e > k_lo {
            out.push((e, false));
        }
        let e = kp + mult * delta;
        if e < trunc {
            out.push((e, false));
        }
    }
    out.push((kp - delta, true));
    out.push((kp, true));
    out.push((kp + delta, true));
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    out.dedup_by(|x, y| (x.0 - y.0).abs() < 1e-12 * k_lo);
    out
}
