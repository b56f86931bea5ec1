//! The virtual experiment: analytic far fields of an oscillating dipole.
//!
//! A z-oriented dipole with moment amplitude `p0` oscillates at angular
//! frequency `omega`. In the radiation zone the fields at spherical point
//! (r, theta, phi) and time t are
//!
//! ```text
//! E = -(mu0 p0 w^2 / 4 pi) (sin(theta)/r) cos(w (t - r/c)) theta_hat
//! B = E / c  along phi_hat
//! ```
//!
//! Every differential term (div, curl, Laplacian, d/dt, d2/dt2) of these
//! expressions is evaluated in closed form, derived in spherical
//! coordinates and expressed in the Cartesian basis. Closed forms are not
//! optional: the interesting sample radii sit at ~1e9 wavelengths, where
//! Cartesian coordinates have ULPs measured in meters and runtime finite
//! differencing is impossible. The central-difference oracle here is a
//! test device for moderate radii.
//!
//! The phase w(t - r/c) at such radii is ~1e10 rad, so its cos/sin carry
//! roughly 1e-6 of absolute error. All term evaluations at one point
//! therefore share a single phase evaluation ([`Frame`]), which turns that
//! error into a common factor across matrix columns and preserves the
//! exact cancellations valid theories rely on.
//!
//! The wave speed used by the simulation is deliberately buried in
//! [`DipoleSource`]: it is the quantity the discovery side is supposed to
//! recover, so nothing outside this module can read it back.

use std::f64::consts::{PI, TAU};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::theory_lang::{Field, Operator, Term};
use crate::vec3::Vec3;

/// Permeability of free space (MKS), fixed.
pub const MU_0: f64 = 4.0e-7 * PI;

/// Lower bound on the number of experiments a run must sample.
pub const MIN_EXPERIMENTS: usize = 5;

const DEFAULT_WAVE_SPEED: f64 = 2.997_924_58e8;

/// Experiments whose polar angle lands this close to the dipole axis are
/// resampled: the fields vanish there and the polar-axis frame below is
/// singular.
const MIN_SIN_THETA: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum DomainError {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("sample point field {name} is not finite")]
    NonFinite { name: &'static str },
    #[error("polar angle {0} outside [0, pi]")]
    ThetaOutOfRange(f64),
    #[error("azimuthal angle {0} outside [0, 2 pi)")]
    PhiOutOfRange(f64),
    #[error("second derivatives are singular on the polar axis (sin(theta) = {0:e})")]
    PolarAxis(f64),
    #[error("finite-difference step {step:e} is below 10 ulp of coordinate {coordinate:e}")]
    StepTooSmall { step: f64, coordinate: f64 },
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("experiment count {0} is below the minimum of {MIN_EXPERIMENTS}")]
    TooFewExperiments(usize),
    #[error("{name} range [{lo}, {hi}] is empty or not positive")]
    BadRange { name: &'static str, lo: f64, hi: f64 },
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error(
        "r range starts at {lo} wavelengths, below the far-field admissibility factor {factor}"
    )]
    NotFarField { lo: f64, factor: f64 },
}

/// The radiating source. The wave speed it propagates at stays private
/// to this module; see the module docs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DipoleSource {
    p0: f64,
    omega: f64,
    c_sim: f64,
}

impl DipoleSource {
    /// Source with the standard MKS wave speed.
    pub fn new(p0: f64, omega: f64) -> Result<Self, DomainError> {
        Self::with_wave_speed(p0, omega, DEFAULT_WAVE_SPEED)
    }

    /// Source with an explicit wave speed. Meant for tests that plant a
    /// nonstandard constant and check the pipeline recovers it.
    pub fn with_wave_speed(p0: f64, omega: f64, c_sim: f64) -> Result<Self, DomainError> {
        for (name, value) in [("p0", p0), ("omega", omega), ("c_sim", c_sim)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(DomainError::NonPositive { name, value });
            }
        }
        Ok(DipoleSource { p0, omega, c_sim })
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// One far-field sample location and time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplePoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub t: f64,
}

impl SamplePoint {
    pub fn new(r: f64, theta: f64, phi: f64, t: f64) -> Self {
        SamplePoint { r, theta, phi, t }
    }

    fn validate(&self) -> Result<(), DomainError> {
        for (name, value) in [("r", self.r), ("theta", self.theta), ("phi", self.phi), ("t", self.t)]
        {
            if !value.is_finite() {
                return Err(DomainError::NonFinite { name });
            }
        }
        if self.r <= 0.0 {
            return Err(DomainError::NonPositive { name: "r", value: self.r });
        }
        if !(0.0..=PI).contains(&self.theta) {
            return Err(DomainError::ThetaOutOfRange(self.theta));
        }
        if !(0.0..TAU).contains(&self.phi) {
            return Err(DomainError::PhiOutOfRange(self.phi));
        }
        Ok(())
    }

    fn to_cartesian(self) -> Vec3 {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        let (sp, cp) = (self.phi.sin(), self.phi.cos());
        Vec3::new(self.r * st * cp, self.r * st * sp, self.r * ct)
    }
}

/// A source plus one sample point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Experiment {
    pub source: DipoleSource,
    pub point: SamplePoint,
}

/// Evaluated value of a term: scalar for divergences, Cartesian 3-vector
/// for everything else.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TermValue {
    Scalar(f64),
    Vector3(Vec3),
}

impl TermValue {
    pub fn components(&self) -> Vec<f64> {
        match self {
            TermValue::Scalar(v) => vec![*v],
            TermValue::Vector3(v) => vec![v.x, v.y, v.z],
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            TermValue::Scalar(v) => v.abs(),
            TermValue::Vector3(v) => v.norm(),
        }
    }

    pub fn as_vector(&self) -> Option<Vec3> {
        match self {
            TermValue::Vector3(v) => Some(*v),
            TermValue::Scalar(_) => None,
        }
    }
}

/// Shared evaluation context for one (source, point) pair.
///
/// The phase and its cos/sin are computed exactly once here; every term
/// evaluated through the same frame reuses those bits.
#[derive(Clone, Copy, Debug)]
pub struct Frame {
    r: f64,
    sin_theta: f64,
    cos_theta: f64,
    sin_phi: f64,
    cos_phi: f64,
    r_hat: Vec3,
    theta_hat: Vec3,
    phi_hat: Vec3,
    cos_phase: f64,
    sin_phase: f64,
    omega: f64,
    wavenumber: f64,
    amplitude: f64,
    inv_speed: f64,
}

impl Frame {
    pub fn new(source: &DipoleSource, point: &SamplePoint) -> Result<Self, DomainError> {
        point.validate()?;
        let (sin_theta, cos_theta) = (point.theta.sin(), point.theta.cos());
        let (sin_phi, cos_phi) = (point.phi.sin(), point.phi.cos());
        let phase = source.omega * (point.t - point.r / source.c_sim);
        Ok(Frame {
            r: point.r,
            sin_theta,
            cos_theta,
            sin_phi,
            cos_phi,
            r_hat: Vec3::new(sin_theta * cos_phi, sin_theta * sin_phi, cos_theta),
            theta_hat: Vec3::new(cos_theta * cos_phi, cos_theta * sin_phi, -sin_theta),
            phi_hat: Vec3::new(-sin_phi, cos_phi, 0.0),
            cos_phase: phase.cos(),
            sin_phase: phase.sin(),
            omega: source.omega,
            wavenumber: source.omega / source.c_sim,
            amplitude: MU_0 * source.p0 * source.omega * source.omega / (4.0 * PI),
            inv_speed: 1.0 / source.c_sim,
        })
    }

    pub fn cos_phase(&self) -> f64 {
        self.cos_phase
    }

    pub fn sin_phase(&self) -> f64 {
        self.sin_phase
    }

    pub fn r_hat(&self) -> Vec3 {
        self.r_hat
    }

    fn e_coeff(&self) -> f64 {
        -self.amplitude * self.sin_theta * self.cos_phase / self.r
    }

    fn b_coeff(&self) -> f64 {
        self.e_coeff() * self.inv_speed
    }

    /// The observable pair (E, B) in the Cartesian basis.
    pub fn fields(&self) -> (Vec3, Vec3) {
        (self.theta_hat * self.e_coeff(), self.phi_hat * self.b_coeff())
    }

    /// Closed-form value of `term` at this point.
    pub fn eval(&self, term: Term) -> TermValue {
        let a = self.amplitude;
        let s = self.sin_theta;
        let ct = self.cos_theta;
        let cu = self.cos_phase;
        let su = self.sin_phase;
        let r = self.r;
        let k = self.wavenumber;
        let w = self.omega;
        let ic = self.inv_speed;
        match (term.field, term.op) {
            (Field::E, Operator::Identity) => TermValue::Vector3(self.theta_hat * self.e_coeff()),
            (Field::B, Operator::Identity) => TermValue::Vector3(self.phi_hat * self.b_coeff()),
            // Transversality leaves only the O(1/r^2) angular remainder in
            // div E, and kills div B identically.
            (Field::E, Operator::Div) => TermValue::Scalar(-2.0 * a * ct * cu / (r * r)),
            (Field::B, Operator::Div) => TermValue::Scalar(0.0),
            (Field::E, Operator::Curl) => TermValue::Vector3(self.phi_hat * (-a * k * s * su / r)),
            (Field::B, Operator::Curl) => TermValue::Vector3(
                self.r_hat * (-2.0 * a * ic * ct * cu / (r * r))
                    + self.theta_hat * (a * ic * k * s * su / r),
            ),
            (Field::E, Operator::Laplacian) => TermValue::Vector3(
                self.r_hat * (4.0 * a * ct * cu / (r * r * r))
                    + self.theta_hat * (a * k * k * s * cu / r + 2.0 * a * s * cu / (r * r * r)),
            ),
            (Field::B, Operator::Laplacian) => TermValue::Vector3(
                self.phi_hat * (a * ic * k * k * s * cu / r + 2.0 * a * ic * s * cu / (r * r * r)),
            ),
            (Field::E, Operator::Dt) => TermValue::Vector3(self.theta_hat * (a * w * s * su / r)),
            (Field::B, Operator::Dt) => {
                TermValue::Vector3(self.phi_hat * (a * ic * w * s * su / r))
            }
            (Field::E, Operator::Dtt) => {
                TermValue::Vector3(self.theta_hat * (a * w * w * s * cu / r))
            }
            (Field::B, Operator::Dtt) => {
                TermValue::Vector3(self.phi_hat * (a * ic * w * w * s * cu / r))
            }
        }
    }

    // Angular prefactors of the Cartesian field components: each component
    // is K_j(theta, phi) * cos(phase)/r. L is K_phi / sin(theta), which is
    // analytic everywhere and avoids a division by sin(theta) in the
    // Jacobian.
    fn angular_parts(&self, field: Field) -> ([f64; 3], [f64; 3], [f64; 3]) {
        let a = self.amplitude;
        let s = self.sin_theta;
        let ct = self.cos_theta;
        let sp = self.sin_phi;
        let cp = self.cos_phi;
        let c2 = ct * ct - s * s;
        match field {
            Field::E => (
                [-a * s * ct * cp, -a * s * ct * sp, a * s * s],
                [-a * c2 * cp, -a * c2 * sp, a * 2.0 * s * ct],
                [a * ct * sp, -a * ct * cp, 0.0],
            ),
            Field::B => {
                let b = a * self.inv_speed;
                (
                    [b * s * sp, -b * s * cp, 0.0],
                    [b * ct * sp, -b * ct * cp, 0.0],
                    [b * cp, b * sp, 0.0],
                )
            }
        }
    }

    fn phase_radial(&self) -> (f64, f64, f64) {
        let r = self.r;
        let k = self.wavenumber;
        let p = self.cos_phase / r;
        let p_r = k * self.sin_phase / r - self.cos_phase / (r * r);
        let p_rr = -k * k * self.cos_phase / r - 2.0 * k * self.sin_phase / (r * r)
            + 2.0 * self.cos_phase / (r * r * r);
        (p, p_r, p_rr)
    }

    /// Full Cartesian Jacobian: `jacobian(field)[i][j]` is the derivative
    /// of component j along axis i.
    #[allow(clippy::needless_range_loop)]
    pub fn jacobian(&self, field: Field) -> [[f64; 3]; 3] {
        let (kv, kt, lphi) = self.angular_parts(field);
        let (p, p_r, _) = self.phase_radial();
        let mut jac = [[0.0; 3]; 3];
        for i in 0..3 {
            let grad_theta = self.theta_hat[i] / self.r;
            let grad_phi_scaled = self.phi_hat[i] / self.r;
            for j in 0..3 {
                jac[i][j] =
                    (kt[j] * grad_theta + lphi[j] * grad_phi_scaled) * p + kv[j] * p_r * self.r_hat[i];
            }
        }
        jac
    }

    /// Pure second partials along each axis: `[i][j]` is d2 F_j / d x_i^2.
    /// Summed over i this is the (Cartesian) vector Laplacian; the
    /// per-axis pieces feed the cancellation-magnitude reference.
    pub fn second_diagonals(&self, field: Field) -> Result<[[f64; 3]; 3], DomainError> {
        let s = self.sin_theta;
        if s.abs() < 1e-12 {
            return Err(DomainError::PolarAxis(s));
        }
        let ct = self.cos_theta;
        let sp = self.sin_phi;
        let cp = self.cos_phi;
        let r = self.r;
        let a = self.amplitude;
        let c2 = ct * ct - s * s;
        let (kv, kt, lphi) = self.angular_parts(field);
        let kphi = [lphi[0] * s, lphi[1] * s, lphi[2] * s];
        let (ktt, ktp, kpp) = match field {
            Field::E => (
                [2.0 * a * 2.0 * s * ct * cp, 2.0 * a * 2.0 * s * ct * sp, 2.0 * a * c2],
                [a * c2 * sp, -a * c2 * cp, 0.0],
                [a * s * ct * cp, a * s * ct * sp, 0.0],
            ),
            Field::B => {
                let b = a * self.inv_speed;
                (
                    [-b * s * sp, b * s * cp, 0.0],
                    [b * ct * cp, b * ct * sp, 0.0],
                    [-b * s * sp, b * s * cp, 0.0],
                )
            }
        };
        let (p, p_r, p_rr) = self.phase_radial();

        // Second partials of the spherical coordinates themselves.
        let r2 = r * r;
        let dd_theta = [
            ct * sp * sp / (r2 * s) - 2.0 * ct * s * cp * cp / r2,
            ct * cp * cp / (r2 * s) - 2.0 * ct * s * sp * sp / r2,
            2.0 * s * ct / r2,
        ];
        let dd_phi = [
            2.0 * cp * sp / (r2 * s * s),
            -2.0 * cp * sp / (r2 * s * s),
            0.0,
        ];

        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            let g_theta = self.theta_hat[i] / r;
            let g_phi = self.phi_hat[i] / (r * s);
            let rh = self.r_hat[i];
            let dd_p = p_rr * rh * rh + p_r * (1.0 - rh * rh) / r;
            for j in 0..3 {
                let d_k = kt[j] * g_theta + lphi[j] * self.phi_hat[i] / r;
                let dd_k = ktt[j] * g_theta * g_theta
                    + 2.0 * ktp[j] * g_theta * g_phi
                    + kpp[j] * g_phi * g_phi
                    + kt[j] * dd_theta[i]
                    + kphi[j] * dd_phi[i];
                out[i][j] = dd_k * p + 2.0 * d_k * p_r * rh + kv[j] * dd_p;
            }
        }
        Ok(out)
    }

    /// Reference magnitude for singleton zero-tests. For compound spatial
    /// operators the signed sums of partial-derivative contributions are
    /// replaced by sums of their absolute values; cancellation shows up as
    /// the assembled value being tiny against this reference. Identity and
    /// time derivatives have no internal cancellation, so the reference is
    /// simply the field itself.
    pub fn singleton_reference(&self, term: Term) -> Result<TermValue, DomainError> {
        match term.op {
            Operator::Identity | Operator::Dt | Operator::Dtt => {
                Ok(self.eval(Term::new(term.field, Operator::Identity)))
            }
            Operator::Div => {
                let jac = self.jacobian(term.field);
                Ok(TermValue::Scalar(
                    jac[0][0].abs() + jac[1][1].abs() + jac[2][2].abs(),
                ))
            }
            Operator::Curl => {
                let jac = self.jacobian(term.field);
                Ok(TermValue::Vector3(Vec3::new(
                    jac[1][2].abs() + jac[2][1].abs(),
                    jac[2][0].abs() + jac[0][2].abs(),
                    jac[0][1].abs() + jac[1][0].abs(),
                )))
            }
            Operator::Laplacian => {
                let dd = self.second_diagonals(term.field)?;
                Ok(TermValue::Vector3(Vec3::new(
                    dd[0][0].abs() + dd[1][0].abs() + dd[2][0].abs(),
                    dd[0][1].abs() + dd[1][1].abs() + dd[2][1].abs(),
                    dd[0][2].abs() + dd[1][2].abs() + dd[2][2].abs(),
                )))
            }
        }
    }
}

/// The observable pair (E, B) at a point, Cartesian basis.
pub fn far_fields(source: &DipoleSource, point: &SamplePoint) -> Result<(Vec3, Vec3), DomainError> {
    Frame::new(source, point).map(|f| f.fields())
}

/// Closed-form term value at a point. Batch callers should build one
/// [`Frame`] per point instead so all terms share the phase evaluation.
pub fn eval_term(
    term: Term,
    source: &DipoleSource,
    point: &SamplePoint,
) -> Result<TermValue, DomainError> {
    Frame::new(source, point).map(|f| f.eval(term))
}

fn field_of(pair: (Vec3, Vec3), field: Field) -> Vec3 {
    match field {
        Field::E => pair.0,
        Field::B => pair.1,
    }
}

fn fields_at_cartesian(
    source: &DipoleSource,
    position: Vec3,
    t: f64,
) -> Result<(Vec3, Vec3), DomainError> {
    let r = position.norm();
    let rho = position.x.hypot(position.y);
    let theta = rho.atan2(position.z);
    let mut phi = position.y.atan2(position.x);
    if phi < 0.0 {
        phi += TAU;
    }
    if phi >= TAU {
        phi = 0.0;
    }
    far_fields(source, &SamplePoint::new(r, theta, phi, t))
}

/// Splits `x` into exactly symmetric neighbors `x + h_eff` and `x - h_eff`
/// where `h_eff` is `h` rounded onto the floating-point grid at `x`.
fn symmetric_step(x: f64, h: f64) -> Result<(f64, f64, f64), DomainError> {
    let x_plus = x + h;
    let h_eff = x_plus - x;
    if h_eff <= 0.0 || h_eff < 10.0 * f64::EPSILON * x.abs() {
        return Err(DomainError::StepTooSmall { step: h, coordinate: x });
    }
    Ok((x_plus, x - h_eff, h_eff))
}

/// Central-difference oracle for [`eval_term`]. Second-order stencils for
/// first derivatives, 3-point stencils per axis for the Laplacian, the
/// same in time. Only meaningful at moderate radii where `coordinate + h`
/// is representable; the step `h` must be small against the wavelength
/// and is tuned by the caller.
pub fn fd_oracle(
    term: Term,
    source: &DipoleSource,
    point: &SamplePoint,
    h: f64,
) -> Result<TermValue, DomainError> {
    point.validate()?;
    let field = term.field;
    match term.op {
        Operator::Identity => Ok(TermValue::Vector3(field_of(far_fields(source, point)?, field))),
        Operator::Dt => {
            let (t_plus, t_minus, h_eff) = symmetric_step(point.t, h)?;
            let pos = point.to_cartesian();
            let fp = field_of(fields_at_cartesian(source, pos, t_plus)?, field);
            let fm = field_of(fields_at_cartesian(source, pos, t_minus)?, field);
            Ok(TermValue::Vector3((fp - fm) * (0.5 / h_eff)))
        }
        Operator::Dtt => {
            let (t_plus, t_minus, h_eff) = symmetric_step(point.t, h)?;
            let pos = point.to_cartesian();
            let fp = field_of(fields_at_cartesian(source, pos, t_plus)?, field);
            let f0 = field_of(fields_at_cartesian(source, pos, point.t)?, field);
            let fm = field_of(fields_at_cartesian(source, pos, t_minus)?, field);
            Ok(TermValue::Vector3((fp - f0 * 2.0 + fm) * (1.0 / (h_eff * h_eff))))
        }
        Operator::Div | Operator::Curl | Operator::Laplacian => {
            let pos = point.to_cartesian();
            let mut plus = [Vec3::ZERO; 3];
            let mut minus = [Vec3::ZERO; 3];
            let mut steps = [0.0; 3];
            for axis in 0..3 {
                let coords = pos.as_array();
                let (c_plus, c_minus, h_eff) = symmetric_step(coords[axis], h)?;
                let mut up = coords;
                up[axis] = c_plus;
                let mut down = coords;
                down[axis] = c_minus;
                plus[axis] = field_of(fields_at_cartesian(source, Vec3::from_array(up), point.t)?, field);
                minus[axis] =
                    field_of(fields_at_cartesian(source, Vec3::from_array(down), point.t)?, field);
                steps[axis] = h_eff;
            }
            match term.op {
                Operator::Div => {
                    let mut div = 0.0;
                    for axis in 0..3 {
                        div += (plus[axis][axis] - minus[axis][axis]) / (2.0 * steps[axis]);
                    }
                    Ok(TermValue::Scalar(div))
                }
                Operator::Curl => {
                    let d = |axis: usize, comp: usize| {
                        (plus[axis][comp] - minus[axis][comp]) / (2.0 * steps[axis])
                    };
                    Ok(TermValue::Vector3(Vec3::new(
                        d(1, 2) - d(2, 1),
                        d(2, 0) - d(0, 2),
                        d(0, 1) - d(1, 0),
                    )))
                }
                _ => {
                    let f0 = field_of(fields_at_cartesian(source, pos, point.t)?, field);
                    let mut lap = Vec3::ZERO;
                    for axis in 0..3 {
                        lap = lap + (plus[axis] - f0 * 2.0 + minus[axis]) * (1.0 / (steps[axis] * steps[axis]));
                    }
                    Ok(TermValue::Vector3(lap))
                }
            }
        }
    }
}

/// Whether experiments share one drawn frequency or draw one each.
///
/// At a single shared frequency the data exactly satisfies the relations
/// `d2F/dt2 = -w^2 F` and `lap F = -(w/c)^2 F`, which validate as compact
/// theories of that data. Varying the frequency per experiment breaks
/// every frequency-dependent relation while leaving the
/// frequency-independent ones intact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaMode {
    VaryingOmega,
    PaperFixedOmega,
}

impl OmegaMode {
    pub fn as_str(self) -> &'static str {
        match self {
            OmegaMode::VaryingOmega => "varying-omega",
            OmegaMode::PaperFixedOmega => "paper-fixed-omega",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "varying-omega" => Some(OmegaMode::VaryingOmega),
            "paper-fixed-omega" => Some(OmegaMode::PaperFixedOmega),
            _ => None,
        }
    }
}

/// Sampling parameters for the virtual experiments. Radii are expressed
/// in wavelengths so the far-field admissibility bound is explicit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub count: usize,
    pub mode: OmegaMode,
    pub p0: f64,
    pub omega_range: (f64, f64),
    pub r_range_lambda: (f64, f64),
    pub r_min_factor: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            count: MIN_EXPERIMENTS,
            mode: OmegaMode::VaryingOmega,
            p0: 1.0,
            omega_range: (1.0e9, 2.0e9),
            r_range_lambda: (1.0e9, 1.0e10),
            r_min_factor: 1.0e9,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.count < MIN_EXPERIMENTS {
            return Err(ConfigError::TooFewExperiments(self.count));
        }
        if !(self.p0 > 0.0 && self.p0.is_finite()) {
            return Err(ConfigError::NonPositive { name: "p0", value: self.p0 });
        }
        if !(self.r_min_factor > 0.0 && self.r_min_factor.is_finite()) {
            return Err(ConfigError::NonPositive {
                name: "r_min_factor",
                value: self.r_min_factor,
            });
        }
        for (name, (lo, hi)) in [
            ("omega", self.omega_range),
            ("r (wavelengths)", self.r_range_lambda),
        ] {
            if !(lo > 0.0 && hi >= lo && lo.is_finite() && hi.is_finite()) {
                return Err(ConfigError::BadRange { name, lo, hi });
            }
        }
        if self.r_range_lambda.0 < self.r_min_factor {
            return Err(ConfigError::NotFarField {
                lo: self.r_range_lambda.0,
                factor: self.r_min_factor,
            });
        }
        Ok(())
    }
}

// Uniform draws built directly on the ChaCha8 stream. The draw order per
// experiment (omega, r, theta, phi, with theta resampled off the polar
// axis) is part of the determinism contract.
struct Sampler(ChaCha8Rng);

impl Sampler {
    fn new(seed: u64) -> Self {
        Sampler(ChaCha8Rng::seed_from_u64(seed))
    }

    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    fn theta(&mut self) -> f64 {
        loop {
            let theta = self.in_range(0.0, PI);
            if theta.sin() >= MIN_SIN_THETA {
                return theta;
            }
        }
    }
}

/// Deterministic pseudo-random sampling of far-field experiments at t = 0.
/// The same seed always produces the identical list.
pub fn make_experiments(
    config: &ExperimentConfig,
    seed: u64,
) -> Result<Vec<Experiment>, ConfigError> {
    config.validate()?;
    let mut sampler = Sampler::new(seed);
    let (w_lo, w_hi) = config.omega_range;
    let shared_omega = match config.mode {
        OmegaMode::PaperFixedOmega => Some(sampler.in_range(w_lo, w_hi)),
        OmegaMode::VaryingOmega => None,
    };
    let mut experiments = Vec::with_capacity(config.count);
    for _ in 0..config.count {
        let omega = shared_omega.unwrap_or_else(|| sampler.in_range(w_lo, w_hi));
        let source = DipoleSource::with_wave_speed(config.p0, omega, DEFAULT_WAVE_SPEED)
            .expect("validated config yields a valid source");
        let wavelength = TAU * source.c_sim / omega;
        let r = sampler.in_range(
            config.r_range_lambda.0 * wavelength,
            config.r_range_lambda.1 * wavelength,
        );
        let theta = sampler.theta();
        let phi = sampler.in_range(0.0, TAU);
        experiments.push(Experiment {
            source,
            point: SamplePoint::new(r, theta, phi, 0.0),
        });
    }
    Ok(experiments)
}
