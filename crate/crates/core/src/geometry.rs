//! Placement of the radar, the RIS panels and the target in a shared
//! Cartesian frame, plus the per-cell distance/angle decomposition used by
//! every coherent sum.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ORTHO_TOL: f64 = 1e-9;

/// Point or direction in metres.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, rhs: Vec3) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(self, rhs: Vec3) -> Vec3 {
        Vec3::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (other - self).norm()
    }

    /// Unit vector in the same direction, or `None` for a zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(v: [f64; 3]) -> Self {
        Vec3::new(v[0], v[1], v[2])
    }
}

/// Local coordinate system of a panel.
///
/// `origin` is the outer corner of cell (1, 1); cells extend along `u_axis`
/// (rows, index `j`) and `v_axis` (columns, index `k`). The outward normal is
/// `u_axis × v_axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelFrame {
    origin: Vec3,
    u_axis: Vec3,
    v_axis: Vec3,
    normal: Vec3,
}

impl PanelFrame {
    pub fn new(origin: Vec3, u_axis: Vec3, v_axis: Vec3) -> Result<Self> {
        if !origin.is_finite() || !u_axis.is_finite() || !v_axis.is_finite() {
            return Err(Error::InvalidFrame("non-finite component".into()));
        }
        let unit = |v: Vec3| (v.norm() - 1.0).abs() <= ORTHO_TOL;
        if !unit(u_axis) || !unit(v_axis) {
            return Err(Error::InvalidFrame("axes must be unit vectors".into()));
        }
        if u_axis.dot(v_axis).abs() > ORTHO_TOL {
            return Err(Error::InvalidFrame("axes must be orthogonal".into()));
        }
        Ok(Self {
            origin,
            u_axis,
            v_axis,
            normal: u_axis.cross(v_axis),
        })
    }

    /// Frame whose outward normal is `normal`. `u_hint` is projected onto the
    /// panel plane to fix the in-plane rotation; when it is (anti)parallel to
    /// the normal a world axis is used instead.
    pub fn facing(origin: Vec3, normal: Vec3, u_hint: Vec3) -> Result<Self> {
        let n = normal
            .normalized()
            .ok_or_else(|| Error::InvalidFrame("zero normal".into()))?;
        let u = [u_hint, Vec3::X, Vec3::Y]
            .into_iter()
            .map(|h| h - n * h.dot(n))
            .find(|p| p.norm() > 1e-6)
            .and_then(Vec3::normalized)
            .ok_or_else(|| Error::InvalidFrame("cannot build in-plane axis".into()))?;
        let v = n.cross(u);
        Self::new(origin, u, v)
    }

    pub fn origin(&self) -> Vec3 {
        self.origin
    }

    pub fn u_axis(&self) -> Vec3 {
        self.u_axis
    }

    pub fn v_axis(&self) -> Vec3 {
        self.v_axis
    }

    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    /// Same orientation, shifted so that the `rows × cols` grid is centred on
    /// `center`.
    pub fn centered_at(&self, center: Vec3, rows: usize, cols: usize, rx: f64, ry: f64) -> Self {
        let half = self.u_axis * (rows as f64 * rx / 2.0) + self.v_axis * (cols as f64 * ry / 2.0);
        Self {
            origin: center - half,
            ..*self
        }
    }
}

/// Distance and local-frame direction from a cell (or panel centre) to a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementGeometry {
    pub distance: f64,
    /// Polar angle from the outward normal, in `[0, π]`.
    pub theta: f64,
    /// Azimuth in the panel plane measured from `u_axis`, in `(−π, π]`.
    pub phi: f64,
}

/// Centre of cell `(j, k)` using 1-based indices.
pub fn cell_center(frame: &PanelFrame, j: usize, k: usize, rx: f64, ry: f64) -> Vec3 {
    debug_assert!(j >= 1 && k >= 1, "cell indices are 1-based");
    frame.origin
        + frame.u_axis * ((j as f64 - 0.5) * rx)
        + frame.v_axis * ((k as f64 - 0.5) * ry)
}

pub fn element_geometry(from_cell: Vec3, to_point: Vec3, frame: &PanelFrame) -> Result<ElementGeometry> {
    let d = to_point - from_cell;
    let distance = d.norm();
    if distance == 0.0 || !distance.is_finite() {
        return Err(Error::DegenerateGeometry(format!(
            "coincident points at ({}, {}, {})",
            to_point.x, to_point.y, to_point.z
        )));
    }
    let cos_theta = (d.dot(frame.normal) / distance).clamp(-1.0, 1.0);
    let theta = cos_theta.acos();
    let mut phi = d.dot(frame.v_axis).atan2(d.dot(frame.u_axis));
    if phi <= -PI {
        phi = PI;
    }
    Ok(ElementGeometry {
        distance,
        theta,
        phi,
    })
}

/// Minimum far-field range `2·D²/λ` for a square-ish aperture whose largest
/// side holds `n_cells_max` cells at `spacing`.
pub fn far_field_distance(n_cells_max: usize, spacing: f64, wavelength: f64) -> f64 {
    let aperture = n_cells_max as f64 * spacing;
    2.0 * aperture * aperture / wavelength
}

/// Link geometry between the panel centres and the end nodes.
///
/// Every link is expressed in the frame of the panel it leaves from, so the
/// pattern factors can be evaluated directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterGeometry {
    /// RIS-1 centre to radar, RIS-1 frame.
    pub radar: ElementGeometry,
    /// Last panel centre (RIS-2, or RIS-1 for a single panel) to target.
    pub target: ElementGeometry,
    /// RIS-1 centre to RIS-2 centre, RIS-1 frame. `None` for one panel.
    pub ris_out: Option<ElementGeometry>,
    /// RIS-2 centre to RIS-1 centre, RIS-2 frame. `None` for one panel.
    pub ris_in: Option<ElementGeometry>,
}

impl CenterGeometry {
    pub fn r1(&self) -> f64 {
        self.radar.distance
    }

    pub fn r2(&self) -> f64 {
        self.target.distance
    }

    pub fn r_ris(&self) -> Option<f64> {
        self.ris_out.map(|g| g.distance)
    }
}

/// Panel-centre geometry for the radar → RIS-1 (→ RIS-2) → target chain.
/// `panels` holds `(centre, frame)` for one or two panels in path order.
pub fn center_geometry(radar: Vec3, panels: &[(Vec3, &PanelFrame)], target: Vec3) -> Result<CenterGeometry> {
    let (c1, f1) = *panels
        .first()
        .ok_or_else(|| Error::InvalidScenario("no panels".into()))?;
    let radar_link = element_geometry(c1, radar, f1)?;
    match panels {
        [_] => Ok(CenterGeometry {
            radar: radar_link,
            target: element_geometry(c1, target, f1)?,
            ris_out: None,
            ris_in: None,
        }),
        [_, (c2, f2)] => Ok(CenterGeometry {
            radar: radar_link,
            target: element_geometry(*c2, target, f2)?,
            ris_out: Some(element_geometry(c1, *c2, f1)?),
            ris_in: Some(element_geometry(*c2, c1, f2)?),
        }),
        _ => Err(Error::InvalidScenario(format!(
            "expected 1 or 2 panels, got {}",
            panels.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn world() -> PanelFrame {
        PanelFrame::new(Vec3::ZERO, Vec3::X, Vec3::Y).unwrap()
    }

    #[test]
    fn first_cell_center() {
        let c = cell_center(&world(), 1, 1, 0.2, 0.2);
        assert_abs_diff_eq!(c.x, 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(c.y, 0.1, epsilon = 1e-15);
        assert_eq!(c.z, 0.0);
    }

    #[test]
    fn tenth_cell_center() {
        let c = cell_center(&world(), 10, 10, 0.107142, 0.107142);
        assert_abs_diff_eq!(c.x, 1.017849, epsilon = 1e-9);
        assert_abs_diff_eq!(c.y, 1.017849, epsilon = 1e-9);
    }

    #[test]
    fn rotated_frame_cell_center() {
        let f = PanelFrame::new(Vec3::ZERO, Vec3::Y, -Vec3::X).unwrap();
        assert_eq!(f.normal(), Vec3::Z);
        let c = cell_center(&f, 1, 1, 0.2, 0.2);
        assert_abs_diff_eq!(c.x, -0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(c.y, 0.1, epsilon = 1e-15);
    }

    #[test]
    fn rejects_non_orthonormal_frame() {
        assert!(PanelFrame::new(Vec3::ZERO, Vec3::X, Vec3::new(1.0, 1.0, 0.0)).is_err());
        assert!(PanelFrame::new(Vec3::ZERO, Vec3::X * 2.0, Vec3::Y).is_err());
    }

    #[test]
    fn facing_builds_right_handed_frame() {
        let n = Vec3::new(1.0, -2.0, 0.5).normalized().unwrap();
        let f = PanelFrame::facing(Vec3::ZERO, n, Vec3::Z).unwrap();
        assert_abs_diff_eq!(f.normal().dot(n), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.u_axis().dot(f.v_axis()), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn on_normal_point() {
        let g = element_geometry(Vec3::ZERO, Vec3::new(0.0, 0.0, 5.0), &world()).unwrap();
        assert_eq!(g.distance, 5.0);
        assert_eq!(g.theta, 0.0);
    }

    #[test]
    fn three_four_five() {
        let g = element_geometry(Vec3::ZERO, Vec3::new(3.0, 0.0, 4.0), &world()).unwrap();
        assert_abs_diff_eq!(g.distance, 5.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.theta, (3.0f64 / 4.0).atan(), epsilon = 1e-15);
        assert_abs_diff_eq!(g.theta, 0.6435, epsilon = 1e-4);
        assert_eq!(g.phi, 0.0);
    }

    #[test]
    fn mirror_cells_are_equidistant() {
        let p = Vec3::new(0.0, 0.0, 7.0);
        let a = element_geometry(Vec3::new(-0.3, 0.2, 0.0), p, &world()).unwrap();
        let b = element_geometry(Vec3::new(0.3, -0.2, 0.0), p, &world()).unwrap();
        assert_eq!(a.distance, b.distance);
    }

    #[test]
    fn azimuth_range_excludes_minus_pi() {
        let g = element_geometry(Vec3::ZERO, Vec3::new(-1.0, -0.0, 1.0), &world()).unwrap();
        assert!(g.phi > -PI && g.phi <= PI);
        assert_abs_diff_eq!(g.phi.abs(), PI, epsilon = 1e-15);
    }

    #[test]
    fn coincident_points_are_degenerate() {
        let e = element_geometry(Vec3::X, Vec3::X, &world()).unwrap_err();
        assert!(matches!(e, Error::DegenerateGeometry(_)));
    }

    #[test]
    fn far_field_table_rows() {
        let lam = 0.214284;
        assert_abs_diff_eq!(far_field_distance(10, lam / 2.0, lam), 10.7142, epsilon = 1e-9);
        assert_abs_diff_eq!(far_field_distance(1, lam / 2.0, lam), lam / 2.0, epsilon = 1e-15);
        // n²λ/2 with λ = 0.214284; the printed 226.6236 needs λ/2 = 0.1071.
        assert_abs_diff_eq!(far_field_distance(46, lam / 2.0, lam), 226.712472, epsilon = 1e-6);
        let lam = 0.2142;
        assert_abs_diff_eq!(far_field_distance(46, lam / 2.0, lam), 226.6236, epsilon = 1e-9);
    }

    #[test]
    fn on_axis_center_geometry() {
        let f1 = PanelFrame::new(Vec3::ZERO, Vec3::X, Vec3::Y).unwrap();
        let f2 = PanelFrame::facing(Vec3::new(0.0, 0.0, 50.0), -Vec3::Z, Vec3::X).unwrap();
        let c2 = Vec3::new(0.0, 0.0, 50.0);
        let g = center_geometry(
            Vec3::new(0.0, 0.0, 250.0),
            &[(Vec3::ZERO, &f1), (c2, &f2)],
            Vec3::new(0.0, 0.0, -100.0),
        )
        .unwrap();
        assert_eq!(g.r1(), 250.0);
        assert_eq!(g.radar.theta, 0.0);
        assert_eq!(g.r_ris(), Some(50.0));
        assert_eq!(g.r2(), 150.0);
        assert_eq!(g.ris_in.unwrap().theta, 0.0);
    }

    #[test]
    fn swapping_panels_swaps_roles() {
        let fa = PanelFrame::facing(Vec3::ZERO, Vec3::new(1.0, 0.0, 1.0), Vec3::Y).unwrap();
        let fb = PanelFrame::facing(Vec3::ZERO, Vec3::new(-1.0, 0.0, 1.0), Vec3::Y).unwrap();
        let (ca, cb) = (Vec3::new(-20.0, 0.0, 0.0), Vec3::new(20.0, 0.0, 0.0));
        let (radar, target) = (Vec3::new(-20.0, 0.0, 90.0), Vec3::new(20.0, 5.0, 60.0));
        let fwd = center_geometry(radar, &[(ca, &fa), (cb, &fb)], target).unwrap();
        let rev = center_geometry(target, &[(cb, &fb), (ca, &fa)], radar).unwrap();
        assert_eq!(fwd.r1(), rev.r2());
        assert_eq!(fwd.r2(), rev.r1());
        assert_eq!(fwd.r_ris(), rev.r_ris());
        assert_eq!(fwd.radar.theta, rev.target.theta);
        assert_eq!(fwd.ris_out.unwrap().theta, rev.ris_in.unwrap().theta);
    }

    #[test]
    fn three_panels_rejected() {
        let f = world();
        let e = center_geometry(
            Vec3::Z,
            &[(Vec3::ZERO, &f), (Vec3::X, &f), (Vec3::Y, &f)],
            Vec3::Z * 2.0,
        );
        assert!(e.is_err());
    }

    proptest! {
        #[test]
        fn distance_at_least_plane_distance(
            cx in -2.0f64..2.0, cy in -2.0f64..2.0,
            px in -50.0f64..50.0, py in -50.0f64..50.0, pz in 0.01f64..50.0,
        ) {
            let f = world();
            let p = Vec3::new(px, py, pz);
            let g = element_geometry(Vec3::new(cx, cy, 0.0), p, &f).unwrap();
            prop_assert!(g.distance >= pz);
            prop_assert!((0.0..=PI).contains(&g.theta));
            prop_assert!(g.phi > -PI && g.phi <= PI);
        }

        #[test]
        fn on_normal_theta_zero(j in 1usize..20, k in 1usize..20, h in 0.1f64..1e3) {
            let f = PanelFrame::facing(Vec3::new(3.0, -1.0, 2.0), Vec3::new(0.0, 0.0, 1.0), Vec3::X).unwrap();
            let c = cell_center(&f, j, k, 0.1, 0.1);
            let g = element_geometry(c, c + f.normal() * h, &f).unwrap();
            prop_assert_eq!(g.theta, 0.0);
        }

        #[test]
        fn far_field_quadruples(n in 1usize..500, s in 0.01f64..1.0, lam in 0.01f64..1.0) {
            let a = far_field_distance(n, s, lam);
            let b = far_field_distance(2 * n, s, lam);
            prop_assert!(b > a);
            prop_assert!((b / a - 4.0).abs() < 1e-12);
        }
    }
}
