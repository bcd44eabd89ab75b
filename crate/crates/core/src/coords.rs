//! Asymptotic coordinates for dP1.
//!
//! In (s, f, u) the non-autonomous map becomes the autonomous system
//!
//! ```text
//! Z = 1 / (u + f - 1),   (s, f, u) -> (Z f, Z^2 (s + gamma u^2), Z u)
//! ```
//!
//! with the invariant plane u = 0 at infinity and two fixed points,
//! P_inf = (2, 2, 0) and P_minf = (0, 0, 0). The theta coordinates are a
//! linear change of (s, f, u) in which the linearizations take a simple form.

use std::fmt;

use crate::maps::{dp1_forward, PlaneState, StepIndex};
use crate::numerics::{BigReal, Params, Rational, Real, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SfuState<T> {
    pub s: T,
    pub f: T,
    pub u: T,
}

impl<T> SfuState<T> {
    pub fn new(s: T, f: T, u: T) -> Self {
        SfuState { s, f, u }
    }
}

impl<T: Scalar> SfuState<T> {
    pub fn to_array(&self) -> [T; 3] {
        [self.s.clone(), self.f.clone(), self.u.clone()]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaState<T> {
    pub theta1: T,
    pub theta2: T,
    pub psi: T,
}

impl<T> ThetaState<T> {
    pub fn new(theta1: T, theta2: T, psi: T) -> Self {
        ThetaState { theta1, theta2, psi }
    }
}

fn gamma_like<T: Scalar>(params: &Params, like: &T) -> T {
    T::lift(&params.gamma(), like)
}

/// sqrt(N) in the scalar type of `like`; exact rationals need N to be a square.
fn sqrt_n_like<T: Scalar>(params: &Params, like: &T) -> Result<T> {
    T::lift(params.n_scale(), like).try_sqrt().ok_or(Error::IrrationalRoot)
}

/// (x, y) at step n to (s, f, u):
/// s = y/x + 1 + 1/(r x), f = n/(N r x^2) - y/x, u = -1/(r x).
pub fn to_sfu<T: Scalar>(state: &PlaneState<T>, n: StepIndex, params: &Params) -> Result<SfuState<T>> {
    let x = &state.x;
    if x.is_zero_value() {
        return Err(Error::SingularAxis { n: n.0 });
    }
    let one = T::lift_int(1, x);
    let rx = T::lift(params.r(), x) * x.clone();
    let y_over_x = state.y.clone() / x.clone();
    let s = y_over_x.clone() + one.clone() + one.clone() / rx.clone();
    let f = T::lift(&params.step_coefficient(n.0), x) / (x.clone() * x.clone()) - y_over_x;
    let u = -(one / rx);
    Ok(SfuState::new(s, f, u))
}

/// Inverse of [`to_sfu`]; also returns alpha = n/N = (s + f + u - 1)/(r u^2).
pub fn from_sfu<T: Scalar>(state: &SfuState<T>, params: &Params) -> Result<(PlaneState<T>, T)> {
    let u = &state.u;
    if u.is_zero_value() {
        return Err(Error::PlaneAtInfinity);
    }
    let one = T::lift_int(1, u);
    let ru = T::lift(params.r(), u) * u.clone();
    let x = -(one.clone() / ru.clone());
    let y = -((state.s.clone() + u.clone() - one.clone()) / ru.clone());
    let alpha = (state.s.clone() + state.f.clone() + u.clone() - one) / (ru * u.clone());
    Ok((PlaneState::new(x, y), alpha))
}

/// One step of the autonomous (s, f, u) system.
pub fn sfu_step<T: Scalar>(state: &SfuState<T>, params: &Params) -> Result<SfuState<T>> {
    let one = T::lift_int(1, &state.s);
    let denom = state.u.clone() + state.f.clone() - one.clone();
    if denom.is_zero_value() {
        return Err(Error::SingularStep("u + f - 1"));
    }
    let z = one / denom;
    let g = gamma_like(params, &state.s);
    let u2 = state.u.clone() * state.u.clone();
    Ok(SfuState::new(
        z.clone() * state.f.clone(),
        z.clone() * z.clone() * (state.s.clone() + g * u2),
        z * state.u.clone(),
    ))
}

/// One step of the theta system:
/// Z = gamma / (theta1 - psi/sqrt(N) - gamma - gamma theta2),
/// (theta1, theta2, psi) -> (Z^2 (theta1 + psi^2/N), Z, Z psi).
pub fn theta_step<T: Scalar>(state: &ThetaState<T>, params: &Params) -> Result<ThetaState<T>> {
    let like = &state.theta1;
    let g = gamma_like(params, like);
    let sqrt_n = sqrt_n_like(params, like)?;
    let denom = state.theta1.clone() - state.psi.clone() / sqrt_n - g.clone() - g.clone() * state.theta2.clone();
    if denom.is_zero_value() {
        return Err(Error::SingularStep("theta1 - psi/sqrt(N) - gamma - gamma*theta2"));
    }
    let z = g / denom;
    let n = T::lift(params.n_scale(), like);
    let w = state.theta1.clone() + state.psi.clone() * state.psi.clone() / n;
    Ok(ThetaState::new(z.clone() * z.clone() * w, z.clone(), z * state.psi.clone()))
}

/// theta1 = gamma (s + f + u - 1), theta2 = s + u - 1, psi = -gamma sqrt(N) u.
pub fn sfu_to_theta<T: Scalar>(state: &SfuState<T>, params: &Params) -> Result<ThetaState<T>> {
    let like = &state.s;
    let one = T::lift_int(1, like);
    let g = gamma_like(params, like);
    let sqrt_n = sqrt_n_like(params, like)?;
    Ok(ThetaState::new(
        g.clone() * (state.s.clone() + state.f.clone() + state.u.clone() - one.clone()),
        state.s.clone() + state.u.clone() - one,
        -(g * sqrt_n * state.u.clone()),
    ))
}

pub fn theta_to_sfu<T: Scalar>(state: &ThetaState<T>, params: &Params) -> Result<SfuState<T>> {
    let like = &state.theta1;
    let one = T::lift_int(1, like);
    let g = gamma_like(params, like);
    let sqrt_n = sqrt_n_like(params, like)?;
    let u = -(state.psi.clone() / (g.clone() * sqrt_n));
    let s = state.theta2.clone() + one.clone() - u.clone();
    let f = state.theta1.clone() / g + one - u.clone() - s.clone();
    Ok(SfuState::new(s, f, u))
}

/// The u = 0 restriction: Z = 1/(f - 1), (s, f) -> (Z f, Z^2 s).
pub fn plane_map<T: Scalar>(s: &T, f: &T) -> Result<(T, T)> {
    let one = T::lift_int(1, s);
    let denom = f.clone() - one.clone();
    if denom.is_zero_value() {
        return Err(Error::SingularStep("f - 1"));
    }
    let z = one / denom;
    Ok((z.clone() * f.clone(), z.clone() * z * s.clone()))
}

pub fn p_inf<T: Scalar>(like: &T) -> SfuState<T> {
    SfuState::new(T::lift_int(2, like), T::lift_int(2, like), T::lift_int(0, like))
}

pub fn p_minf<T: Scalar>(like: &T) -> SfuState<T> {
    SfuState::new(T::lift_int(0, like), T::lift_int(0, like), T::lift_int(0, like))
}

/// The 3-cycle through (s0, 1 - s0, 0) on the line s + f = 1 of the
/// invariant plane.
pub fn period3_orbit<T: Scalar>(s0: &T) -> Result<[SfuState<T>; 3]> {
    let zero = T::lift_int(0, s0);
    let one = T::lift_int(1, s0);
    if s0.is_zero_value() || (s0.clone() - one.clone()).is_zero_value() {
        return Err(Error::SingularFamilyMember(format!("{s0:?}")));
    }
    let s1 = one.clone() - one.clone() / s0.clone();
    let s2 = one.clone() / (one.clone() - s0.clone());
    Ok([
        SfuState::new(s0.clone(), one.clone() - s0.clone(), zero.clone()),
        SfuState::new(s1.clone(), one.clone() - s1, zero.clone()),
        SfuState::new(s2.clone(), one - s2, zero),
    ])
}

/// A coordinate value that may be a signed point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extended<T> {
    Finite(T),
    PlusInfinity,
    MinusInfinity,
}

impl<T: fmt::Display> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => v.fmt(f),
            Extended::PlusInfinity => f.write_str("+inf"),
            Extended::MinusInfinity => f.write_str("-inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedSfu<T> {
    pub s: Extended<T>,
    pub f: Extended<T>,
    pub u: Extended<T>,
}

/// The singular period-3 orbit (0, 1, 0) -> (+inf, -inf, 0) -> (1, 0, 0).
pub fn singular_period3_orbit() -> [ExtendedSfu<Rational>; 3] {
    use Extended::*;
    let q = |v: i64| Finite(Rational::from_integer(v.into()));
    [
        ExtendedSfu { s: q(0), f: q(1), u: q(0) },
        ExtendedSfu { s: PlusInfinity, f: MinusInfinity, u: q(0) },
        ExtendedSfu { s: q(1), f: q(0), u: q(0) },
    ]
}

pub type Matrix3<T> = [[T; 3]; 3];

pub fn mat_mul<T: Scalar>(a: &Matrix3<T>, b: &Matrix3<T>) -> Matrix3<T> {
    let zero = T::lift_int(0, &a[0][0]);
    let mut out: Matrix3<T> = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] = out[i][j].clone() + a[i][k].clone() * b[k][j].clone();
            }
        }
    }
    out
}

/// Jacobian of [`theta_step`] with rows (theta1', theta2', psi') and columns
/// (theta1, theta2, psi).
pub fn theta_jacobian<T: Scalar>(state: &ThetaState<T>, params: &Params) -> Result<Matrix3<T>> {
    let like = &state.theta1;
    let g = gamma_like(params, like);
    let sqrt_n = sqrt_n_like(params, like)?;
    let n = T::lift(params.n_scale(), like);
    let denom = state.theta1.clone() - state.psi.clone() / sqrt_n.clone() - g.clone() - g.clone() * state.theta2.clone();
    if denom.is_zero_value() {
        return Err(Error::SingularStep("theta1 - psi/sqrt(N) - gamma - gamma*theta2"));
    }
    let z = g.clone() / denom;
    let z2 = z.clone() * z.clone();
    let dz = [-(z2.clone() / g.clone()), z2.clone(), z2.clone() / (g * sqrt_n)];
    let two = T::lift_int(2, like);
    let psi = state.psi.clone();
    let w = state.theta1.clone() + psi.clone() * psi.clone() / n.clone();
    let two_zw = two.clone() * z.clone() * w;
    Ok([
        [
            two_zw.clone() * dz[0].clone() + z2.clone(),
            two_zw.clone() * dz[1].clone(),
            two_zw * dz[2].clone() + z2 * two * psi.clone() / n,
        ],
        dz.clone(),
        [dz[0].clone() * psi.clone(), dz[1].clone() * psi.clone(), dz[2].clone() * psi + z],
    ])
}

/// Jacobian of [`sfu_step`], rows (s', f', u'), columns (s, f, u).
pub fn sfu_jacobian<T: Scalar>(state: &SfuState<T>, params: &Params) -> Result<Matrix3<T>> {
    let like = &state.s;
    let zero = T::lift_int(0, like);
    let one = T::lift_int(1, like);
    let two = T::lift_int(2, like);
    let denom = state.u.clone() + state.f.clone() - one;
    if denom.is_zero_value() {
        return Err(Error::SingularStep("u + f - 1"));
    }
    let z = T::lift_int(1, like) / denom;
    let z2 = z.clone() * z.clone();
    let dz = -z2.clone();
    let g = gamma_like(params, like);
    let (s, f, u) = (state.s.clone(), state.f.clone(), state.u.clone());
    let inner = s + g.clone() * u.clone() * u.clone();
    let two_z_inner_dz = two.clone() * z.clone() * inner * dz.clone();
    Ok([
        [zero.clone(), z.clone() + f.clone() * dz.clone(), f * dz.clone()],
        [
            z2.clone(),
            two_z_inner_dz.clone(),
            two_z_inner_dz + two * g * u.clone() * z2,
        ],
        [zero, u.clone() * dz.clone(), z + u * dz],
    ])
}

/// Jacobian of three sfu steps at the start of the period-3 cycle through s0.
pub fn period3_jacobian<T: Scalar>(s0: &T, params: &Params) -> Result<Matrix3<T>> {
    let cycle = period3_orbit(s0)?;
    let j0 = sfu_jacobian(&cycle[0], params)?;
    let j1 = sfu_jacobian(&cycle[1], params)?;
    let j2 = sfu_jacobian(&cycle[2], params)?;
    Ok(mat_mul(&j2, &mat_mul(&j1, &j0)))
}

/// Linear prediction of the state after p full 3-cycles, starting from the
/// period-3 point (s0, 1 - s0, 0) displaced by a (0, -1, 1) + c (-1/3, 0, 0).
///
/// The 3-step Jacobian is I + K with K nilpotent, K (0, -1, 1) = 0 and
/// K (-1/3, 0, 0) = (1, -1, 0), so the c-component drifts by c per cycle
/// along the line while the a-component stays put.
pub fn period3_drift<T: Scalar>(a: &T, c: &T, p_steps: u64, s0: &T) -> SfuState<T> {
    let one = T::lift_int(1, s0);
    let p = T::lift(&Rational::from_integer(p_steps.into()), s0);
    let third = T::lift(&Rational::new(1.into(), 3.into()), s0);
    let shift = p * c.clone();
    SfuState::new(
        s0.clone() - c.clone() * third + shift.clone(),
        one - s0.clone() - a.clone() - shift,
        a.clone(),
    )
}

/// Exact value a + b sqrt(3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd3 {
    pub rational: Rational,
    pub sqrt3: Rational,
}

impl Surd3 {
    pub fn new(rational: i64, sqrt3: i64) -> Self {
        Surd3 {
            rational: Rational::from_integer(rational.into()),
            sqrt3: Rational::from_integer(sqrt3.into()),
        }
    }

    pub fn to_real<T: Real>(&self, like: &T) -> T {
        T::lift(&self.rational, like) + T::lift(&self.sqrt3, like) * T::lift_int(3, like).sqrt()
    }
}

impl fmt::Display for Surd3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt(3)", self.rational, self.sqrt3)
    }
}

/// Eigenvalue re + i im with re in Q(sqrt 3) and im rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactEigenvalue {
    pub re: Surd3,
    pub im: Rational,
}

impl ExactEigenvalue {
    fn real(rational: i64, sqrt3: i64) -> Self {
        ExactEigenvalue {
            re: Surd3::new(rational, sqrt3),
            im: Rational::from_integer(0.into()),
        }
    }

    fn imaginary(im: i64) -> Self {
        ExactEigenvalue {
            re: Surd3::new(0, 0),
            im: Rational::from_integer(im.into()),
        }
    }

    pub fn to_complex<T: Real>(&self, like: &T) -> (T, T) {
        (self.re.to_real(like), T::lift(&self.im, like))
    }

    pub fn modulus<T: Real>(&self, like: &T) -> T {
        let (re, im) = self.to_complex(like);
        (re.clone() * re + im.clone() * im).sqrt()
    }
}

/// Complex 3-vector stored as separate real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector<T> {
    pub re: [T; 3],
    pub im: [T; 3],
}

#[derive(Clone, Debug)]
pub struct EigenPair<T> {
    pub eigenvalue: ExactEigenvalue,
    pub vector: ComplexVector<T>,
    /// max |(J v - lambda v)_i| over real and imaginary parts.
    pub residual: T,
}

#[derive(Clone, Debug)]
pub struct EigenData<T> {
    pub fixed_point: ThetaState<T>,
    pub jacobian: Matrix3<T>,
    pub pairs: Vec<EigenPair<T>>,
}

fn eigen_residual<T: Real>(j: &Matrix3<T>, lambda: &(T, T), v: &ComplexVector<T>) -> T {
    let mut worst = T::lift_int(0, &lambda.0);
    for i in 0..3 {
        let mut jv_re = T::lift_int(0, &lambda.0);
        let mut jv_im = T::lift_int(0, &lambda.0);
        for k in 0..3 {
            jv_re = jv_re + j[i][k].clone() * v.re[k].clone();
            jv_im = jv_im + j[i][k].clone() * v.im[k].clone();
        }
        let lv_re = lambda.0.clone() * v.re[i].clone() - lambda.1.clone() * v.im[i].clone();
        let lv_im = lambda.0.clone() * v.im[i].clone() + lambda.1.clone() * v.re[i].clone();
        for d in [(jv_re - lv_re).abs(), (jv_im - lv_im).abs()] {
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Eigen data at P_inf = (3 gamma, 1, 0) and P_minf = (-gamma, -1, 0) in theta
/// coordinates, in the scalar type of `like`.
///
/// P_inf: 1 with (1, 0, sqrt N), -2 pm sqrt 3 with (gamma (3 mp sqrt 3), 1, 0).
/// P_minf: -1 with (gamma, 1, -gamma sqrt N), pm i with (gamma (1 mp i), 1, 0).
pub fn linearize_fixed_points_in<T: Real>(params: &Params, like: &T) -> Result<(EigenData<T>, EigenData<T>)> {
    let g = gamma_like(params, like);
    let sqrt_n = T::lift(params.n_scale(), like).sqrt();
    let sqrt3 = T::lift_int(3, like).sqrt();
    let zero = T::lift_int(0, like);
    let one = T::lift_int(1, like);
    let real_vec = |re: [T; 3]| ComplexVector {
        re,
        im: std::array::from_fn(|_| zero.clone()),
    };

    let build = |fixed: ThetaState<T>, specs: Vec<(ExactEigenvalue, ComplexVector<T>)>| -> Result<EigenData<T>> {
        let jacobian = theta_jacobian(&fixed, params)?;
        let pairs = specs
            .into_iter()
            .map(|(eigenvalue, vector)| {
                let residual = eigen_residual(&jacobian, &eigenvalue.to_complex(like), &vector);
                EigenPair { eigenvalue, vector, residual }
            })
            .collect();
        Ok(EigenData { fixed_point: fixed, jacobian, pairs })
    };

    let three = T::lift_int(3, like);
    let at_inf = build(
        ThetaState::new(three.clone() * g.clone(), one.clone(), zero.clone()),
        vec![
            (ExactEigenvalue::real(1, 0), real_vec([one.clone(), zero.clone(), sqrt_n.clone()])),
            (
                ExactEigenvalue::real(-2, 1),
                real_vec([g.clone() * (three.clone() - sqrt3.clone()), one.clone(), zero.clone()]),
            ),
            (
                ExactEigenvalue::real(-2, -1),
                real_vec([g.clone() * (three + sqrt3), one.clone(), zero.clone()]),
            ),
        ],
    )?;
    let at_minf = build(
        ThetaState::new(-g.clone(), -one.clone(), zero.clone()),
        vec![
            (
                ExactEigenvalue::real(-1, 0),
                real_vec([g.clone(), one.clone(), -(g.clone() * sqrt_n)]),
            ),
            (
                ExactEigenvalue::imaginary(1),
                ComplexVector {
                    re: [g.clone(), one.clone(), zero.clone()],
                    im: [-g.clone(), zero.clone(), zero.clone()],
                },
            ),
            (
                ExactEigenvalue::imaginary(-1),
                ComplexVector {
                    re: [g.clone(), one, zero.clone()],
                    im: [g, zero.clone(), zero],
                },
            ),
        ],
    )?;
    Ok((at_inf, at_minf))
}

/// [`linearize_fixed_points_in`] at the working precision of `params`.
pub fn linearize_fixed_points(params: &Params) -> Result<(EigenData<BigReal>, EigenData<BigReal>)> {
    linearize_fixed_points_in(params, &params.zero_real())
}

/// Both coordinate views of a trajectory entering a singularity.
#[derive(Clone, Debug)]
pub struct ConfinementTrace<T> {
    pub n_start: i64,
    pub planes: Vec<PlaneState<T>>,
    /// `None` where x = 0.
    pub sfu: Vec<Option<SfuState<T>>>,
}

/// Iterates dp1_forward five steps from (eps, y_val) at step n.
///
/// For small eps the iterates follow x_{n+1} ~ n/(N r eps),
/// x_{n+2} ~ -n/(N r eps), x_{n+3} = O(eps), x_{n+4} = O(1); in (s, f, u)
/// the orbit passes near (1, 0, 0) and then (0, 1, 0).
pub fn confinement_signature<T: Scalar>(
    y_val: &T,
    eps: &T,
    n: StepIndex,
    params: &Params,
) -> Result<ConfinementTrace<T>> {
    if eps.is_zero_value() {
        return Err(Error::InvalidParams("eps must be nonzero".into()));
    }
    if n.0 == 0 {
        return Err(Error::InvalidParams("confinement is studied at n != 0".into()));
    }
    let mut planes = vec![PlaneState::new(eps.clone(), y_val.clone())];
    for k in 0..5 {
        let next = dp1_forward(planes.last().expect("non-empty"), StepIndex(n.0 + k), params)?;
        planes.push(next);
    }
    let sfu = planes
        .iter()
        .enumerate()
        .map(|(k, p)| to_sfu(p, StepIndex(n.0 + k as i64), params).ok())
        .collect();
    Ok(ConfinementTrace { n_start: n.0, planes, sfu })
}
