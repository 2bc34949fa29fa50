//! The cubic in `gamma2` whose roots parameterize the three nonzero modes, and
//! a real-root solver for it.

use crate::error::{Error, Result};
use crate::geometry::AngularConfig;

/// Trigonometric and radial building blocks of the closed forms.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Terms {
    pub cos: f64,
    pub sin: f64,
    pub tan: f64,
    pub rho: f64,
    /// `tan - cos`
    pub d: f64,
    /// `1 - tan cos`
    pub q: f64,
    /// `1 - tan^3`
    pub p: f64,
}

impl Terms {
    pub fn new(config: &AngularConfig) -> Self {
        let cos = config.cos_theta();
        let tan = config.tan_alpha();
        Self {
            cos,
            sin: config.sin_theta(),
            tan,
            rho: config.rho(),
            d: tan - cos,
            q: 1.0 - tan * cos,
            p: 1.0 - tan * tan * tan,
        }
    }

    /// The `gamma2` at which the `gamma1` expression has its pole.
    pub fn pole(&self) -> f64 {
        self.sin * self.p / (self.d * self.tan * self.tan)
    }
}

fn coefficients(k: &Terms) -> [f64; 4] {
    let Terms {
        sin: s,
        tan: t,
        rho,
        d,
        q,
        p,
        ..
    } = *k;
    let t3 = t * t * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let ss = s * s;
    let dd = d * d;
    let inv_t2_plus_1 = 1.0 / (t * t) + 1.0;

    // Bracket shared by the linear and quadratic terms.
    let k2 = -2.0 * rho.powi(5) / t4 + dd / t - ss / t - ss * t + q * q / t4;

    let a0 = -ss * p * t3 * dd;
    let a1 = (s * q * q / t + s * t5 * dd) * d - t3 * s * p * k2 * d;
    let a2 = t3 * ss * p * inv_t2_plus_1 * dd + t5 * k2 * dd;
    let a3 = -t5 * s * inv_t2_plus_1 * dd * d;
    [a3, a2, a1, a0]
}

/// Coefficients `[a3, a2, a1, a0]` of the `gamma2` cubic at `config`, term by
/// term.
///
/// Near `tan_alpha = 1` every term carrying `1 - tan^3` vanishes and
/// `gamma2 = 0` becomes a root; callers on the ridge should use the
/// closed-form ridge spectrum instead.
pub fn cubic_coefficients(config: &AngularConfig) -> Result<[f64; 4]> {
    let coeffs = coefficients(&Terms::new(config));
    check_leading(&coeffs)?;
    Ok(coeffs)
}

/// The same cubic in the offset `delta = gamma2 - pole` from the pole of the
/// `gamma1` expression.
///
/// One root usually lies within a tiny relative distance of the pole, so
/// forming `gamma2 - pole` after the fact cancels almost every digit. Here
/// the constant term has the exact closed form
/// `sin^2 (1 - tan^3)(1 - tan cos)^2 / tan^3`, which keeps that root
/// accurate to full relative precision.
pub(crate) fn shifted_coefficients(k: &Terms) -> Result<[f64; 4]> {
    let [a3, a2, a1, _] = coefficients(k);
    let g = k.pole();
    let b0 = k.sin * k.sin * k.p * k.q * k.q / (k.tan * k.tan * k.tan);
    let b1 = (3.0 * a3 * g + 2.0 * a2) * g + a1;
    let b2 = 3.0 * a3 * g + a2;
    let shifted = [a3, b2, b1, b0];
    check_leading(&shifted)?;
    Ok(shifted)
}

fn check_leading(coeffs: &[f64; 4]) -> Result<()> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let leading_ok = coeffs[0].abs() >= 1e-14 * scale && scale > 0.0;
    if !leading_ok {
        return Err(Error::DegenerateCubic {
            leading: coeffs[0],
            scale,
        });
    }
    Ok(())
}

fn newton_step(coeffs: &[f64; 4], x: f64) -> f64 {
    let [a3, a2, a1, a0] = *coeffs;
    let value = ((a3 * x + a2) * x + a1) * x + a0;
    let slope = (3.0 * a3 * x + 2.0 * a2) * x + a1;
    let next = x - value / slope;
    if next.is_finite() {
        next
    } else {
        x
    }
}

const NEWTON_STEPS: usize = 2;
const COMPLEX_TOL: f64 = 1e-10;

fn polish(coeffs: &[f64; 4], mut x: f64) -> f64 {
    for _ in 0..NEWTON_STEPS {
        x = newton_step(coeffs, x);
    }
    x
}

/// The three real roots of `a3 x^3 + a2 x^2 + a1 x + a0`, unordered.
///
/// The largest-magnitude root comes from the trigonometric solution of the
/// depressed cubic; the remaining quadratic is deflated using the constant
/// term and solved in cancellation-free form, so small roots keep their
/// relative accuracy next to large ones. Every root is Newton-polished on the
/// original cubic.
pub fn solve_cubic(coeffs: [f64; 4]) -> Result<[f64; 3]> {
    check_leading(&coeffs)?;
    let [a3, a2, a1, a0] = coeffs;
    let (b2, b1, b0) = (a2 / a3, a1 / a3, a0 / a3);

    // x = y - b2 / 3 turns the monic cubic into y^3 + p y + q.
    let p = b1 - b2 * b2 / 3.0;
    let q = 2.0 * b2 * b2 * b2 / 27.0 - b2 * b1 / 3.0 + b0;
    let disc = 4.0 * p * p * p + 27.0 * q * q;
    let disc_scale = 4.0 * p.abs().powi(3) + 27.0 * q * q;
    if disc > COMPLEX_TOL * disc_scale {
        return Err(Error::ComplexRoots {
            imag: (disc / 108.0).sqrt().cbrt(),
        });
    }
    let largest = if p < 0.0 {
        let m = 2.0 * (-p / 3.0).sqrt();
        let phi = (3.0 * q / (p * m)).clamp(-1.0, 1.0).acos() / 3.0;
        (0..3)
            .map(|k| m * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - b2 / 3.0)
            .fold(
                0.0f64,
                |best, x| if x.abs() > best.abs() { x } else { best },
            )
    } else {
        -b2 / 3.0
    };
    let r1 = polish(&coeffs, largest);
    if r1 == 0.0 {
        return Ok([0.0; 3]);
    }

    // a3 (x - r1)(x^2 + e1 / a3 x + e0 / a3)
    let e1 = a2 + a3 * r1;
    let e0 = -a0 / r1;
    let qdisc = e1 * e1 - 4.0 * a3 * e0;
    if qdisc < -COMPLEX_TOL * (e1 * e1 + (4.0 * a3 * e0).abs()) {
        return Err(Error::ComplexRoots {
            imag: (-qdisc).sqrt() / (2.0 * a3.abs()),
        });
    }
    let half = -0.5 * (e1 + e1.signum() * qdisc.max(0.0).sqrt());
    let (r2, r3) = if half == 0.0 {
        (0.0, 0.0)
    } else {
        (half / a3, e0 / half)
    };
    Ok([r1, polish(&coeffs, r2), polish(&coeffs, r3)])
}
