//! Parameter points, colours, exact exponents and q-numbers.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Rat = Rational64;

/// Below this magnitude a q-number denominator counts as degenerate.
pub const DEGENERATE_EPS: f64 = 1e-3;
/// Relative drop threshold for merged coefficients. Far below the 1e-14
/// roundoff floor on purpose: out-of-sector terms can exceed in-sector ones
/// by ten orders of magnitude, and a cut tied to the global maximum must not
/// touch the latter.
pub const DROP_REL: f64 = 1e-18;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn rat_f64(r: Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    Gl2,
    Gl11,
}

impl Model {
    pub fn graded(self) -> bool {
        matches!(self, Model::Gl11)
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Gl2 => "gl2",
            Model::Gl11 => "gl11",
        }
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gl2" => Ok(Model::Gl2),
            "gl11" | "gl1/1" | "gl1|1" => Ok(Model::Gl11),
            other => Err(Error::UnknownIdentifier(other.to_string())),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Nonzero rational colour; the group law is multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Colour(Rat);

impl Colour {
    pub const ONE: Colour = Colour(Rat::new_raw(1, 1));

    pub fn new(r: Rat) -> Result<Self> {
        if r.is_zero() {
            Err(Error::ZeroColour(r.to_string()))
        } else {
            Ok(Colour(r))
        }
    }

    pub fn int(n: i64) -> Self {
        Colour::new(Rat::from_integer(n)).expect("nonzero integer colour")
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Colour::new(Rat::new(n, d)).expect("nonzero colour")
    }

    pub fn value(self) -> Rat {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        rat_f64(self.0)
    }

    pub fn inv(self) -> Colour {
        Colour(self.0.recip())
    }

    pub fn compose(self, other: Colour) -> Colour {
        Colour(self.0 * other.0)
    }

    pub fn ratio(self, other: Colour) -> Colour {
        Colour(self.0 / other.0)
    }
}

impl FromStr for Colour {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let r = parse_rational(s).ok_or_else(|| Error::ZeroColour(s.to_string()))?;
        Colour::new(r)
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses "3", "-1/2", "+2".
pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rat::new(n, d))
        }
        None => s.parse::<i64>().ok().map(Rat::from_integer),
    }
}

/// `cq·φ + cp·θ`, kept exact so that exponential terms merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactExponent {
    pub cq: Rat,
    pub cp: Rat,
}

impl ExactExponent {
    pub const ZERO: ExactExponent = ExactExponent { cq: Rat::new_raw(0, 1), cp: Rat::new_raw(0, 1) };

    pub fn new(cq: Rat, cp: Rat) -> Self {
        ExactExponent { cq, cp }
    }

    pub fn ints(cq: i64, cp: i64) -> Self {
        ExactExponent::new(Rat::from_integer(cq), Rat::from_integer(cp))
    }

    pub fn phi() -> Self {
        ExactExponent::ints(1, 0)
    }

    pub fn theta() -> Self {
        ExactExponent::ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.cq.is_zero() && self.cp.is_zero()
    }

    pub fn scale(self, r: Rat) -> Self {
        ExactExponent::new(self.cq * r, self.cp * r)
    }

    /// The exponent `cq·φ + cp·θ` at `pt`.
    pub fn value(&self, pt: &ParamPoint) -> C64 {
        pt.phi() * rat_f64(self.cq) + pt.theta() * rat_f64(self.cp)
    }

    pub fn eval(&self, pt: &ParamPoint) -> C64 {
        self.value(pt).exp()
    }

    /// Same numeric value, re-expressed at the point pushed by `ratio`.
    pub fn transport(self, model: Model, ratio: Colour) -> Self {
        let r = ratio.value();
        match model {
            Model::Gl2 => ExactExponent::new(self.cq, self.cp / r),
            Model::Gl11 => ExactExponent::new(self.cq / r, self.cp / r),
        }
    }
}

impl Add for ExactExponent {
    type Output = ExactExponent;
    fn add(self, o: Self) -> Self {
        ExactExponent::new(self.cq + o.cq, self.cp + o.cp)
    }
}

impl Sub for ExactExponent {
    type Output = ExactExponent;
    fn sub(self, o: Self) -> Self {
        ExactExponent::new(self.cq - o.cq, self.cp - o.cp)
    }
}

impl Neg for ExactExponent {
    type Output = ExactExponent;
    fn neg(self) -> Self {
        ExactExponent::new(-self.cq, -self.cp)
    }
}

impl fmt::Display for ExactExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.cq.is_zero(), self.cp.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "({})phi", self.cq),
            (true, false) => write!(f, "({})theta", self.cp),
            (false, false) => write!(f, "({})phi+({})theta", self.cq, self.cp),
        }
    }
}

/// Deformation parameters as logarithms: P = e^θ, Q = e^φ.
///
/// A point remembers its base values and the accumulated colour push, so
/// points reached along different colour paths compare equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    base_theta: C64,
    base_phi: C64,
    model: Model,
    colour: Colour,
}

impl ParamPoint {
    pub fn new(model: Model, theta: C64, phi: C64) -> Self {
        ParamPoint { base_theta: theta, base_phi: phi, model, colour: Colour::ONE }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn colour(&self) -> Colour {
        self.colour
    }

    pub fn base(&self) -> ParamPoint {
        ParamPoint { colour: Colour::ONE, ..*self }
    }

    pub fn theta(&self) -> C64 {
        self.base_theta * self.colour.to_f64()
    }

    pub fn phi(&self) -> C64 {
        match self.model {
            Model::Gl2 => self.base_phi,
            Model::Gl11 => self.base_phi * self.colour.to_f64(),
        }
    }

    pub fn big_p(&self) -> C64 {
        self.theta().exp()
    }

    pub fn big_q(&self) -> C64 {
        self.phi().exp()
    }

    pub fn p(&self) -> C64 {
        (self.theta() + self.phi()).exp()
    }

    pub fn q(&self) -> C64 {
        (self.phi() - self.theta()).exp()
    }

    pub fn omega(&self) -> C64 {
        -self.theta() - self.phi()
    }

    pub fn eta(&self) -> C64 {
        self.theta() - self.phi()
    }

    pub fn push(&self, nu: Colour) -> ParamPoint {
        ParamPoint { colour: self.colour.compose(nu), ..*self }
    }

    /// `Q^a P^b` with rational exponents.
    pub fn mono(&self, a: Rat, b: Rat) -> C64 {
        ExactExponent::new(a, b).eval(self)
    }

    /// Same family: equal base parameters and model.
    pub fn same_family(&self, o: &ParamPoint) -> bool {
        self.base_theta == o.base_theta && self.base_phi == o.base_phi && self.model == o.model
    }
}

pub fn colour_push(pt: &ParamPoint, nu: Colour) -> ParamPoint {
    pt.push(nu)
}

fn check_denominator(d: C64, what: &str) -> Result<()> {
    if d.norm() < DEGENERATE_EPS {
        Err(Error::DegenerateParameter(format!("{what}: |{d}| below {DEGENERATE_EPS}")))
    } else {
        Ok(())
    }
}

/// `[x]_t = (t^x − t^{−x})/(t − t⁻¹)` on the principal branch of log t.
pub fn q_number(x: C64, t: C64) -> Result<C64> {
    let den = t - t.inv();
    check_denominator(den, "t - 1/t")?;
    let lt = t.ln();
    Ok(((x * lt).exp() - (-x * lt).exp()) / den)
}

/// Integer q-number; branch free.
pub fn q_int(n: i64, t: C64) -> Result<C64> {
    let den = t - t.inv();
    check_denominator(den, "t - 1/t")?;
    Ok((t.powi(n as i32) - t.powi(-n as i32)) / den)
}

pub fn q_factorial(n: u32, t: C64) -> Result<C64> {
    let mut acc = C64::one();
    for k in 1..=n {
        acc *= q_int(k as i64, t)?;
    }
    Ok(acc)
}

/// Shared branch function ℓ(x) = xθ + log(Q^x − Q^{−x}), so e^{ℓ(x)} = p^x − q^{−x}.
pub fn ell(x: Rat, pt: &ParamPoint) -> Result<C64> {
    let xf = rat_f64(x);
    Ok(pt.theta() * xf + ell_q(x, pt)?)
}

/// ℓ_Q(x) = principal log(Q^x − Q^{−x}).
pub fn ell_q(x: Rat, pt: &ParamPoint) -> Result<C64> {
    let xf = rat_f64(x);
    let d = (pt.phi() * xf).exp() - (-pt.phi() * xf).exp();
    let full = d * (pt.theta() * xf).exp();
    check_denominator(full, "p^x - q^-x")?;
    check_denominator(d, "Q^x - Q^-x")?;
    Ok(d.ln())
}

/// A^λ_ν = e^{(ℓ(λ) − ℓ(ν))/2}.
pub fn ladder_norm(lambda: Colour, nu: Colour, pt: &ParamPoint) -> Result<C64> {
    Ok(((ell(lambda.value(), pt)? - ell(nu.value(), pt)?) * 0.5).exp())
}

/// (A^x_ν)² as a plain ratio; defined also at x = 0.
pub fn ladder_norm_sq(x: Rat, nu: Colour, pt: &ParamPoint) -> Result<C64> {
    let _ = ell(nu.value(), pt)?;
    let f = |y: f64| ((pt.theta() + pt.phi()) * y).exp() - ((pt.theta() - pt.phi()) * y).exp();
    Ok(f(rat_f64(x)) / f(nu.to_f64()))
}

/// B^{λμ} = e^{(ℓ_Q(λ) + ℓ_Q(μ))/2}.
pub fn b_coeff(lambda: Colour, mu: Colour, pt: &ParamPoint) -> Result<C64> {
    Ok(((ell_q(lambda.value(), pt)? + ell_q(mu.value(), pt)?) * 0.5).exp())
}

/// Minimal algebra interface shared by the element types.
pub trait Algebra: Clone {
    fn one_like(&self) -> Self;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn add(&self, other: &Self) -> Result<Self>;
    fn scale(&self, s: C64) -> Self;
}

impl Algebra for C64 {
    fn one_like(&self) -> Self {
        C64::one()
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn scale(&self, s: C64) -> Self {
        self * s
    }
}

/// Σ_{n≤N} t^{−n(n−1)/2} zⁿ/[n]_t!.
pub fn basic_exp<A: Algebra>(z: &A, t: C64, order: u32) -> Result<A> {
    let mut acc = z.one_like();
    let mut pow = z.one_like();
    for n in 1..=order {
        pow = pow.mul(z)?;
        let e = -((n * (n - 1) / 2) as i32);
        let coeff = t.powi(e) / q_factorial(n, t)?;
        acc = acc.add(&pow.scale(coeff))?;
    }
    Ok(acc)
}

/// Draws (θ, φ) with |Re|, |Im| ≤ 1 until the point is well conditioned for
/// every colour combination in play and every q-integer up to `order`.
pub fn sample_point<R: Rng>(model: Model, rng: &mut R, colours: &[Colour], order: u32) -> ParamPoint {
    let draw = |rng: &mut R| C64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
    let mut probe: Vec<Rat> = Vec::new();
    for a in colours {
        probe.push(a.value());
        for b in colours {
            probe.push(a.value() * b.value());
            probe.push(a.value() / b.value());
        }
    }
    probe.push(Rat::one());
    loop {
        let theta = draw(rng);
        let phi = draw(rng);
        let pt = ParamPoint::new(model, theta, phi);
        if well_conditioned(&pt, &probe, order) {
            return pt;
        }
    }
}

pub fn well_conditioned(pt: &ParamPoint, probe: &[Rat], order: u32) -> bool {
    let q = pt.big_q();
    for n in 1..=order.max(1) as i32 {
        if (q.powi(n) - q.powi(-n)).norm() < DEGENERATE_EPS {
            return false;
        }
    }
    probe.iter().all(|x| x.is_zero() || ell(*x, pt).is_ok() && ell(x.abs(), pt).is_ok())
}
