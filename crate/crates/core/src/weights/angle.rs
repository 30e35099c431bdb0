use num_complex::Complex64;

use super::WeightError;
use crate::graphs::EdgeKind;

const EPS: f64 = 1e-300;

/// φ(z,w) = arg(z−w) + arg(z−w̄) on the closed upper half-plane.
pub fn angle_halfplane(z: Complex64, w: Complex64) -> Result<f64, WeightError> {
    if (z - w).norm() < EPS || (z - w.conj()).norm() < EPS {
        return Err(WeightError::Coincident);
    }
    Ok((z - w).arg() + (z - w.conj()).arg())
}

/// φ_στ(z,w) = arg(z−w) + σ arg(z−w̄) + τ arg(z+w̄) + στ arg(z+w) on the first quadrant.
pub fn angle_quadrant(sigma: i8, tau: i8, z: Complex64, w: Complex64) -> Result<f64, WeightError> {
    let (s, t) = (f64::from(sigma), f64::from(tau));
    let images = [(1.0, w), (s, w.conj()), (t, -w.conj()), (s * t, -w)];
    let mut total = 0.0;
    for (c, img) in images {
        if (z - img).norm() < EPS {
            return Err(WeightError::Coincident);
        }
        total += c * (z - img).arg();
    }
    Ok(total)
}

/// The angle 1-form carried by an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeForm {
    /// dφ(z_src, z_tgt)
    Straight,
    /// dφ(z_tgt, z_src)
    Wavy,
    /// dφ_στ(z_src, z_tgt)
    Quadrant(i8, i8),
}

impl EdgeForm {
    /// σ = +1 iff the index class is tangent to C₀ (real axis), τ = +1 iff tangent to C₁.
    pub fn of(kind: EdgeKind) -> Self {
        match kind {
            EdgeKind::Straight => EdgeForm::Straight,
            EdgeKind::Wavy => EdgeForm::Wavy,
            EdgeKind::Class(a, b) => EdgeForm::Quadrant(if a { 1 } else { -1 }, if b { 1 } else { -1 }),
        }
    }

    pub fn value(self, src: Complex64, tgt: Complex64) -> Result<f64, WeightError> {
        match self {
            EdgeForm::Straight => angle_halfplane(src, tgt),
            EdgeForm::Wavy => angle_halfplane(tgt, src),
            EdgeForm::Quadrant(s, t) => angle_quadrant(s, t, src, tgt),
        }
    }
}

/// ∂ arg(z − (αx·Re w + i·αy·Im w)) / ∂(x_z, y_z, x_w, y_w).
#[inline]
fn arg_grad(z: Complex64, w: Complex64, ax: f64, ay: f64) -> [f64; 4] {
    let v = (z - Complex64::new(ax * w.re, ay * w.im)).inv();
    [v.im, v.re, -ax * v.im, -ay * v.re]
}

#[inline]
fn accumulate(acc: &mut [f64; 4], c: f64, g: [f64; 4]) {
    for (a, x) in acc.iter_mut().zip(g) {
        *a += c * x;
    }
}

/// Gradient of the edge angle with respect to (x_src, y_src, x_tgt, y_tgt).
#[inline]
pub fn form_gradient(form: EdgeForm, src: Complex64, tgt: Complex64) -> [f64; 4] {
    let mut g = [0.0; 4];
    match form {
        EdgeForm::Straight => {
            accumulate(&mut g, 1.0, arg_grad(src, tgt, 1.0, 1.0));
            accumulate(&mut g, 1.0, arg_grad(src, tgt, 1.0, -1.0));
        }
        EdgeForm::Wavy => {
            let mut h = [0.0; 4];
            accumulate(&mut h, 1.0, arg_grad(tgt, src, 1.0, 1.0));
            accumulate(&mut h, 1.0, arg_grad(tgt, src, 1.0, -1.0));
            g = [h[2], h[3], h[0], h[1]];
        }
        EdgeForm::Quadrant(s, t) => {
            let (s, t) = (f64::from(s), f64::from(t));
            accumulate(&mut g, 1.0, arg_grad(src, tgt, 1.0, 1.0));
            accumulate(&mut g, s, arg_grad(src, tgt, 1.0, -1.0));
            accumulate(&mut g, t, arg_grad(src, tgt, -1.0, 1.0));
            accumulate(&mut g, s * t, arg_grad(src, tgt, -1.0, -1.0));
        }
    }
    g
}
