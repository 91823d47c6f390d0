//! PBW normal forms for the quantum groups Gl_pq(2) and Gl_pq(1|1) in Gauss
//! coordinates, colour maps ρ, coalgebra maps and antipodes.
//!
//! A term is `γ^g h^j1 h̃^j2 exp(u·h + v·h̃) β^b` with rational `u`, `v`.
//! Conversion to the Lie generators:
//! gl(2): α = (h + h̃)/2, δ = (h − h̃)/2; gl(1|1): α = (h + h̃)/2, δ = (h̃ − h)/2.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lincomb::{binomial, fmt_coeff, LinComb};
use crate::quea::Direction;
use crate::scalars::{c, ladder_norm, ladder_norm_sq, rat, rat_f64, Algebra, Colour, Model, ParamPoint, Rat, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualTerm {
    pub g: u32,
    pub j1: u32,
    pub j2: u32,
    pub u: Rat,
    pub v: Rat,
    pub b: u32,
}

impl DualTerm {
    pub const ONE: DualTerm =
        DualTerm { g: 0, j1: 0, j2: 0, u: Rat::new_raw(0, 1), v: Rat::new_raw(0, 1), b: 0 };

    pub fn basis(g: u32, j1: u32, j2: u32, b: u32) -> Self {
        DualTerm { g, j1, j2, b, ..DualTerm::ONE }
    }

    pub fn exp(u: Rat, v: Rat) -> Self {
        DualTerm { u, v, ..DualTerm::ONE }
    }

    pub fn grade(&self, model: Model) -> u8 {
        if model.graded() {
            ((self.g + self.b) % 2) as u8
        } else {
            0
        }
    }

    pub fn degree(&self) -> u32 {
        self.g + self.j1 + self.j2 + self.b
    }

    /// No polynomial Cartan part.
    pub fn is_exp_type(&self) -> bool {
        self.j1 == 0 && self.j2 == 0
    }

    fn has_exp(&self) -> bool {
        !(self.u.is_zero() && self.v.is_zero())
    }
}

impl fmt::Display for DualTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let pw = |name: &str, k: u32| if k == 1 { name.to_string() } else { format!("{name}^{k}") };
        if self.g > 0 {
            parts.push(pw("gamma", self.g));
        }
        if self.j1 > 0 {
            parts.push(pw("h", self.j1));
        }
        if self.j2 > 0 {
            parts.push(pw("ht", self.j2));
        }
        if self.has_exp() {
            parts.push(format!("exp(({})h+({})ht)", self.u, self.v));
        }
        if self.b > 0 {
            parts.push(pw("beta", self.b));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

type Terms = LinComb<DualTerm>;

#[derive(Debug, Clone, PartialEq)]
pub struct DualElement {
    pt: ParamPoint,
    terms: Terms,
}

/// Eigenvalues `([h, β], [h̃, β])` and `([h, γ], [h̃, γ])` at `pt`.
pub fn eigenvalues(pt: &ParamPoint) -> ([C64; 2], [C64; 2]) {
    let (th, ph) = (pt.theta(), pt.phi());
    match pt.model() {
        Model::Gl2 => ([ph * 2.0, th * -2.0], [ph * 2.0, th * 2.0]),
        Model::Gl11 => ([C64::zero(), pt.omega() * 2.0], [C64::zero(), pt.eta() * 2.0]),
    }
}

/// `F(h + s₀, h̃ + s₁)` for `F = h^j1 h̃^j2 e^{uh+vh̃}`, as (j1', j2', coeff).
fn shifted(t: &DualTerm, s: [C64; 2]) -> Vec<(u32, u32, C64)> {
    let e = (s[0] * rat_f64(t.u) + s[1] * rat_f64(t.v)).exp();
    let mut out = Vec::new();
    for i in 0..=t.j1 {
        for k in 0..=t.j2 {
            let cf = e * binomial(t.j1, i) * binomial(t.j2, k) * s[0].powu(t.j1 - i) * s[1].powu(t.j2 - k);
            if !cf.is_zero() {
                out.push((i, k, cf));
            }
        }
    }
    out
}

fn mul_terms(pt: &ParamPoint, x: &DualTerm, y: &DualTerm, out: &mut Terms, scale: C64) {
    let graded = pt.model().graded();
    let (g, b) = (x.g + y.g, x.b + y.b);
    if graded && (g > 1 || b > 1) {
        return;
    }
    let sign = if graded && (x.b * y.g) % 2 == 1 { -1.0 } else { 1.0 };
    let (cb, cg) = eigenvalues(pt);
    let sx = [cg[0] * y.g as f64, cg[1] * y.g as f64];
    let sy = [cb[0] * -(x.b as f64), cb[1] * -(x.b as f64)];
    let (u, v) = (x.u + y.u, x.v + y.v);
    for (i1, k1, c1) in shifted(x, sx) {
        for (i2, k2, c2) in shifted(y, sy) {
            let t = DualTerm { g, j1: i1 + i2, j2: k1 + k2, u, v, b };
            out.add_term(t, c1 * c2 * scale * sign);
        }
    }
}

impl DualElement {
    pub fn zero(pt: &ParamPoint) -> Self {
        DualElement { pt: *pt, terms: Terms::new() }
    }

    pub fn from_terms(pt: &ParamPoint, terms: LinComb<DualTerm>) -> Self {
        let model = pt.model();
        let terms = terms.filter(|t| !model.graded() || (t.g <= 1 && t.b <= 1));
        DualElement { pt: *pt, terms }
    }

    pub fn term(pt: &ParamPoint, t: DualTerm, coeff: C64) -> Self {
        DualElement::from_terms(pt, Terms::single(t, coeff))
    }

    pub fn scalar(pt: &ParamPoint, s: C64) -> Self {
        DualElement::term(pt, DualTerm::ONE, s)
    }

    pub fn one(pt: &ParamPoint) -> Self {
        DualElement::scalar(pt, C64::one())
    }

    pub fn gamma(pt: &ParamPoint) -> Self {
        DualElement::term(pt, DualTerm::basis(1, 0, 0, 0), C64::one())
    }

    pub fn beta(pt: &ParamPoint) -> Self {
        DualElement::term(pt, DualTerm::basis(0, 0, 0, 1), C64::one())
    }

    pub fn h(pt: &ParamPoint) -> Self {
        DualElement::term(pt, DualTerm::basis(0, 1, 0, 0), C64::one())
    }

    pub fn ht(pt: &ParamPoint) -> Self {
        DualElement::term(pt, DualTerm::basis(0, 0, 1, 0), C64::one())
    }

    /// exp(u·h + v·h̃).
    pub fn exp(pt: &ParamPoint, u: Rat, v: Rat) -> Self {
        DualElement::term(pt, DualTerm::exp(u, v), C64::one())
    }

    pub fn model(&self) -> Model {
        self.pt.model()
    }

    pub fn point(&self) -> &ParamPoint {
        &self.pt
    }

    pub fn terms(&self) -> &LinComb<DualTerm> {
        &self.terms
    }

    pub fn coeff(&self, t: &DualTerm) -> C64 {
        self.terms.get(t)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.max_abs()
    }

    /// Largest g + b.
    pub fn ladder_degree(&self) -> u32 {
        self.terms.iter().map(|(t, _)| t.g + t.b).max().unwrap_or(0)
    }

    fn check(&self, o: &DualElement) -> Result<()> {
        if self.model() != o.model() {
            return Err(Error::ModelMismatch(self.model(), o.model()));
        }
        if self.pt != o.pt {
            return Err(Error::PointMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &DualElement) -> Result<DualElement> {
        self.check(o)?;
        let mut t = self.terms.clone();
        t.add_scaled(&o.terms, C64::one());
        Ok(DualElement { pt: self.pt, terms: t.pruned() })
    }

    pub fn sub(&self, o: &DualElement) -> Result<DualElement> {
        self.add(&o.scale(c(-1.0)))
    }

    pub fn scale(&self, s: C64) -> DualElement {
        DualElement { pt: self.pt, terms: self.terms.scaled(s) }
    }

    pub fn mul(&self, o: &DualElement) -> Result<DualElement> {
        self.check(o)?;
        let mut acc = Terms::new();
        for (x, cx) in self.terms.iter() {
            for (y, cy) in o.terms.iter() {
                mul_terms(&self.pt, x, y, &mut acc, cx * cy);
            }
        }
        Ok(DualElement { pt: self.pt, terms: acc.pruned() })
    }

    pub fn pow(&self, e: u32) -> Result<DualElement> {
        let mut acc = DualElement::one(&self.pt);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn restrict(&self, keep: impl Fn(&DualTerm) -> bool) -> DualElement {
        DualElement { pt: self.pt, terms: self.terms.filter(keep) }
    }

    /// Moves the element to another point with the same coefficients.
    pub fn relabel(&self, pt: &ParamPoint) -> DualElement {
        DualElement { pt: *pt, terms: self.terms.clone() }
    }
}

impl Algebra for DualElement {
    fn one_like(&self) -> Self {
        DualElement::one(&self.pt)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        DualElement::mul(self, other)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        DualElement::add(self, other)
    }
    fn scale(&self, s: C64) -> Self {
        DualElement::scale(self, s)
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(t, cf)| format!("{}*{}", fmt_coeff(*cf), t)).collect();
        f.write_str(&parts.join(" + "))
    }
}

pub fn counit(x: &DualElement) -> C64 {
    x.terms.iter().filter(|(t, _)| t.g == 0 && t.b == 0 && t.j1 == 0 && t.j2 == 0).map(|(_, c)| *c).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GaussName {
    A,
    B,
    C,
    D,
    Dhat,
    Det,
}

impl GaussName {
    pub fn name(self) -> &'static str {
        match self {
            GaussName::A => "a",
            GaussName::B => "b",
            GaussName::C => "c",
            GaussName::D => "d",
            GaussName::Dhat => "dhat",
            GaussName::Det => "det",
        }
    }

    pub fn group_like_power(self) -> bool {
        matches!(self, GaussName::A | GaussName::Dhat | GaussName::Det)
    }
}

impl FromStr for GaussName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(GaussName::A),
            "b" => Ok(GaussName::B),
            "c" => Ok(GaussName::C),
            "d" => Ok(GaussName::D),
            "dhat" => Ok(GaussName::Dhat),
            "det" | "D" => Ok(GaussName::Det),
            _ => Err(Error::UnknownIdentifier(s.to_string())),
        }
    }
}

impl fmt::Display for GaussName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn half() -> Rat {
    rat(1, 2)
}

/// (u, v) of the group-like entries a, d̂, 𝒟.
fn group_like_exp(model: Model, name: GaussName) -> (Rat, Rat) {
    match (name, model) {
        (GaussName::A, _) => (half(), half()),
        (GaussName::Dhat, _) => (-half(), half()),
        (GaussName::Det, Model::Gl2) => (Rat::zero(), Rat::one()),
        (GaussName::Det, Model::Gl11) => (Rat::one(), Rat::zero()),
        _ => unreachable!("not group-like"),
    }
}

/// Entry of the T-matrix (or d̂, 𝒟) in Gauss coordinates, raised to `power`.
pub fn gauss_entry(pt: &ParamPoint, name: GaussName, power: Rat) -> Result<DualElement> {
    let model = pt.model();
    if name.group_like_power() {
        let (u, v) = group_like_exp(model, name);
        return Ok(DualElement::exp(pt, u * power, v * power));
    }
    if !power.is_integer() || power < Rat::zero() {
        return Err(Error::NonGroupLikePower(format!("{name}^{power}")));
    }
    let (h2, one) = (half(), C64::one());
    let base = match name {
        GaussName::B => DualElement::term(pt, DualTerm { u: h2, v: h2, b: 1, ..DualTerm::ONE }, one),
        GaussName::C => DualElement::term(pt, DualTerm { u: h2, v: h2, g: 1, ..DualTerm::ONE }, one),
        GaussName::D => {
            let (u, v) = group_like_exp(model, GaussName::Dhat);
            DualElement::exp(pt, u, v).add(&DualElement::term(pt, DualTerm { u: h2, v: h2, g: 1, b: 1, ..DualTerm::ONE }, one))?
        }
        _ => unreachable!(),
    };
    base.pow(power.to_integer() as u32)
}

pub fn entry(pt: &ParamPoint, name: GaussName) -> DualElement {
    gauss_entry(pt, name, Rat::one()).expect("unit power")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieName {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

pub fn lie_generator(pt: &ParamPoint, name: LieName) -> DualElement {
    let hh = |u: f64, v: f64| {
        let mut t = Terms::new();
        t.add_term(DualTerm::basis(0, 1, 0, 0), c(u));
        t.add_term(DualTerm::basis(0, 0, 1, 0), c(v));
        DualElement::from_terms(pt, t)
    };
    match (name, pt.model()) {
        (LieName::Alpha, _) => hh(0.5, 0.5),
        (LieName::Delta, Model::Gl2) => hh(0.5, -0.5),
        (LieName::Delta, Model::Gl11) => hh(-0.5, 0.5),
        (LieName::Beta, _) => DualElement::beta(pt),
        (LieName::Gamma, _) => DualElement::gamma(pt),
    }
}

/// Coefficient picked up by γ and β under ρ^ν from `src`.
fn rho_ladder_factor(src: &ParamPoint, nu: Colour) -> Result<C64> {
    match src.model() {
        Model::Gl2 => Ok((src.theta() * ((1.0 - nu.to_f64()) / 2.0)).exp()),
        Model::Gl11 => ladder_norm(Colour::ONE, nu, src),
    }
}

/// ρ^ν: h fixed, h̃ ↦ h̃/ν, γ and β rescaled; the result lives at the pushed point.
pub fn rho(x: &DualElement, nu: Colour, dir: Direction) -> Result<DualElement> {
    let nu = match dir {
        Direction::Fwd => nu,
        Direction::Inv => nu.inv(),
    };
    let lf = rho_ladder_factor(&x.pt, nu)?;
    let r = nu.value();
    let nf = nu.to_f64();
    let mut out = Terms::new();
    for (t, cf) in x.terms.iter() {
        let s = lf.powu(t.g + t.b) * nf.powi(-(t.j2 as i32));
        out.add_term(DualTerm { v: t.v / r, ..*t }, cf * s);
    }
    Ok(DualElement { pt: x.pt.push(nu), terms: out })
}

fn truncate(x: DualElement, order: u32) -> DualElement {
    if x.model().graded() {
        x
    } else {
        x.restrict(|t| t.g <= order && t.b <= order)
    }
}

/// `x^s` for `x = A(1 + M)` with `A` a single exponential and `M` a single
/// ladder term, via the q-binomial series; gl(2) keeps g, b ≤ `order`.
pub fn gauss_power(x: &DualElement, s: Rat, order: u32) -> Result<DualElement> {
    let pt = x.pt;
    let lead: Vec<_> = x.terms.iter().filter(|(t, _)| t.g == 0 && t.b == 0).collect();
    if lead.len() != 1 || !lead[0].0.is_exp_type() {
        return Err(Error::NotGaussMonomial(x.to_string()));
    }
    let (at, ac) = (*lead[0].0, *lead[0].1);
    let a_inv = DualElement::term(&pt, DualTerm::exp(-at.u, -at.v), ac.inv());
    let a_pow = DualElement::term(&pt, DualTerm::exp(at.u * s, at.v * s), ac.powc(c(rat_f64(s))));
    let rest = x.restrict(|t| t.g > 0 || t.b > 0);
    let m = a_inv.mul(&rest)?;
    if m.is_zero() {
        return Ok(a_pow);
    }
    if m.terms.len() != 1 {
        return Err(Error::NotGaussMonomial(x.to_string()));
    }
    let (mt, _) = m.terms.iter().next().expect("one term");
    let (cb, cg) = eigenvalues(&pt);
    let (au, av) = (rat_f64(at.u), rat_f64(at.v));
    let log_kappa = (cg[0] * au + cg[1] * av) * mt.g as f64 + (cb[0] * au + cb[1] * av) * mt.b as f64;
    let lt = -log_kappa;
    let sf = rat_f64(s);
    let max_j = if pt.model().graded() { 1 } else { order / mt.g.max(mt.b).max(1) };
    let mut acc = DualElement::one(&pt);
    let mut mj = DualElement::one(&pt);
    let mut binom = C64::one();
    for j in 1..=max_j {
        let i = (j - 1) as f64;
        let den = C64::one() - (lt * (i + 1.0)).exp();
        if den.norm() < crate::scalars::DEGENERATE_EPS {
            return Err(Error::DegenerateParameter(format!("1 - t^{j}: |{den}|")));
        }
        binom *= (C64::one() - (lt * (sf - i)).exp()) / den;
        if binom.is_zero() {
            break;
        }
        mj = truncate(mj.mul(&m)?, order);
        let tri = (lt * ((j * (j - 1) / 2) as f64)).exp();
        acc = acc.add(&mj.scale(binom * tri))?;
    }
    Ok(truncate(a_pow.mul(&acc)?, order))
}

/// Standard antipode on the T-matrix entries.
pub fn antipode_entry(pt: &ParamPoint, name: GaussName) -> Result<DualElement> {
    let model = pt.model();
    let e = |n: GaussName, r: i64| gauss_entry(pt, n, rat(r, 1));
    let (p, q) = (pt.p(), pt.q());
    match (model, name) {
        (_, GaussName::Det) => e(GaussName::Det, -1),
        (_, GaussName::Dhat) => e(GaussName::Dhat, -1),
        (Model::Gl2, GaussName::A) => e(GaussName::Det, -1)?.mul(&e(GaussName::D, 1)?),
        (Model::Gl2, GaussName::B) => Ok(e(GaussName::Det, -1)?.mul(&e(GaussName::B, 1)?)?.scale(-p.inv())),
        (Model::Gl2, GaussName::C) => Ok(e(GaussName::Det, -1)?.mul(&e(GaussName::C, 1)?)?.scale(-p)),
        (Model::Gl2, GaussName::D) => e(GaussName::Det, -1)?.mul(&e(GaussName::A, 1)?),
        (Model::Gl11, GaussName::A) => {
            let corr = e(GaussName::C, 1)?.mul(&e(GaussName::A, -2)?)?.mul(&e(GaussName::Dhat, -1)?)?.mul(&e(GaussName::B, 1)?)?;
            e(GaussName::A, -1)?.sub(&corr.scale(q / p))
        }
        (Model::Gl11, GaussName::B) => {
            Ok(e(GaussName::A, -1)?.mul(&e(GaussName::Dhat, -1)?)?.mul(&e(GaussName::B, 1)?)?.scale(-p.inv()))
        }
        (Model::Gl11, GaussName::C) => {
            Ok(e(GaussName::C, 1)?.mul(&e(GaussName::A, -1)?)?.mul(&e(GaussName::Dhat, -1)?)?.scale(-q))
        }
        (Model::Gl11, GaussName::D) => e(GaussName::Dhat, -1),
    }
}

/// Images of γ, β and S̃(a) needed by the antipode, cut at `order`.
struct AntipodeParts {
    sa: DualElement,
    sgamma: DualElement,
    sbeta: DualElement,
}

impl AntipodeParts {
    fn new(pt: &ParamPoint, order: u32) -> Result<Self> {
        let sa = antipode_entry(pt, GaussName::A)?;
        let sa_inv = gauss_power(&sa, -Rat::one(), order)?;
        let sgamma = truncate(sa_inv.mul(&antipode_entry(pt, GaussName::C)?)?, order);
        let sbeta = truncate(antipode_entry(pt, GaussName::B)?.mul(&sa_inv)?, order);
        Ok(AntipodeParts { sa, sgamma, sbeta })
    }
}

/// Standard antipode, graded anti-multiplicative, on combinations of Gauss
/// monomials `γ^g exp(uh + vh̃) β^b`. gl(2) results keep g, b ≤ `order`.
pub fn antipode(x: &DualElement, order: u32) -> Result<DualElement> {
    let pt = x.pt;
    let model = pt.model();
    if let Some((t, _)) = x.terms.iter().find(|(t, _)| !t.is_exp_type()) {
        return Err(Error::NotGaussMonomial(t.to_string()));
    }
    let parts = AntipodeParts::new(&pt, order)?;
    let mut acc = DualElement::zero(&pt);
    for (t, cf) in x.terms.iter() {
        // exp(uh + vh̃) = a^xa 𝒟^y
        let (xa, y) = match model {
            Model::Gl2 => (t.u * 2, t.v - t.u),
            Model::Gl11 => (t.v * 2, t.u - t.v),
        };
        let se = gauss_entry(&pt, GaussName::Det, -y)?.mul(&gauss_power(&parts.sa, xa, order)?)?;
        let sign = if model.graded() && t.g == 1 && t.b == 1 { -1.0 } else { 1.0 };
        let mut r = truncate(parts.sbeta.pow(t.b)?, order);
        r = truncate(r.mul(&se)?, order);
        r = truncate(r.mul(&parts.sgamma.pow(t.g)?)?, order);
        acc = acc.add(&r.scale(cf * sign))?;
    }
    Ok(acc)
}

fn base_of(x: &DualElement, colour: Colour) -> ParamPoint {
    x.pt.push(colour.inv())
}

/// m̃^ν_{λμ} = ρ^ν∘m̃∘(ρ_λ⊗ρ_μ); `x` at the λ push, `y` at the μ push.
pub fn mult_col(x: &DualElement, y: &DualElement, lambda: Colour, mu: Colour, nu: Colour) -> Result<DualElement> {
    if base_of(x, lambda) != base_of(y, mu) {
        return Err(Error::PointMismatch);
    }
    let xb = rho(x, lambda, Direction::Inv)?;
    let yb = rho(y, mu, Direction::Inv)?;
    rho(&xb.mul(&yb)?, nu, Direction::Fwd)
}

/// ι̃^ν(1) at the ν push of `base`.
pub fn unit_col(base: &ParamPoint, nu: Colour) -> DualElement {
    DualElement::one(&base.push(nu))
}

/// S̃^ν_μ = ρ^ν∘S̃∘ρ_μ; `x` at the μ push.
pub fn antipode_col(x: &DualElement, mu: Colour, nu: Colour, order: u32) -> Result<DualElement> {
    let xb = rho(x, mu, Direction::Inv)?;
    rho(&antipode(&xb, order)?, nu, Direction::Fwd)
}

type TensorKey = (DualTerm, DualTerm);

/// Element of dual ⊗ dual with graded products.
#[derive(Debug, Clone, PartialEq)]
pub struct DualTensor {
    pts: [ParamPoint; 2],
    terms: LinComb<TensorKey>,
}

impl DualTensor {
    pub fn zero(pts: [ParamPoint; 2]) -> Self {
        DualTensor { pts, terms: LinComb::new() }
    }

    pub fn from_terms(pts: [ParamPoint; 2], terms: LinComb<TensorKey>) -> Self {
        DualTensor { pts, terms }
    }

    pub fn pure(x: &DualElement, y: &DualElement) -> Self {
        let mut terms = LinComb::new();
        for (a, ca) in x.terms.iter() {
            for (b, cb) in y.terms.iter() {
                terms.add_term((*a, *b), ca * cb);
            }
        }
        DualTensor { pts: [x.pt, y.pt], terms }
    }

    pub fn model(&self) -> Model {
        self.pts[0].model()
    }

    pub fn points(&self) -> &[ParamPoint; 2] {
        &self.pts
    }

    pub fn terms(&self) -> &LinComb<TensorKey> {
        &self.terms
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.max_abs()
    }

    pub fn add(&self, o: &DualTensor) -> Result<DualTensor> {
        if self.pts != o.pts {
            return Err(Error::PointMismatch);
        }
        let mut t = self.terms.clone();
        t.add_scaled(&o.terms, C64::one());
        Ok(DualTensor { pts: self.pts, terms: t.pruned() })
    }

    pub fn sub(&self, o: &DualTensor) -> Result<DualTensor> {
        self.add(&o.scale(c(-1.0)))
    }

    pub fn scale(&self, s: C64) -> DualTensor {
        DualTensor { pts: self.pts, terms: self.terms.scaled(s) }
    }

    /// (x₁⊗y₁)(x₂⊗y₂) = (−1)^{|y₁||x₂|} x₁x₂ ⊗ y₁y₂.
    pub fn mul(&self, o: &DualTensor) -> Result<DualTensor> {
        if self.pts != o.pts {
            return Err(Error::PointMismatch);
        }
        let model = self.model();
        let mut acc = LinComb::new();
        for ((x1, y1), c1) in self.terms.iter() {
            for ((x2, y2), c2) in o.terms.iter() {
                let sign = if (y1.grade(model) * x2.grade(model)) % 2 == 1 { -1.0 } else { 1.0 };
                let mut l = Terms::new();
                mul_terms(&self.pts[0], x1, x2, &mut l, C64::one());
                let mut r = Terms::new();
                mul_terms(&self.pts[1], y1, y2, &mut r, C64::one());
                for (a, ca) in l.iter() {
                    for (b, cb) in r.iter() {
                        acc.add_term((*a, *b), ca * cb * c1 * c2 * sign);
                    }
                }
            }
        }
        Ok(DualTensor { pts: self.pts, terms: acc.pruned() })
    }

    /// Applies the graded multiplication to the two legs.
    pub fn multiply_legs(&self) -> Result<DualElement> {
        if self.pts[0] != self.pts[1] {
            return Err(Error::PointMismatch);
        }
        let mut acc = Terms::new();
        for ((x, y), cf) in self.terms.iter() {
            mul_terms(&self.pts[0], x, y, &mut acc, *cf);
        }
        Ok(DualElement { pt: self.pts[0], terms: acc.pruned() })
    }

    /// Applies `f` to the first leg and `g` to the second, without signs
    /// (both maps must be even).
    pub fn map_legs(
        &self,
        pts: [ParamPoint; 2],
        f: impl Fn(&DualElement) -> Result<DualElement>,
        g: impl Fn(&DualElement) -> Result<DualElement>,
    ) -> Result<DualTensor> {
        let mut acc = DualTensor::zero(pts);
        for ((x, y), cf) in self.terms.iter() {
            let fx = f(&DualElement::term(&self.pts[0], *x, C64::one()))?;
            let gy = g(&DualElement::term(&self.pts[1], *y, C64::one()))?;
            acc = acc.add(&DualTensor::pure(&fx.relabel(&pts[0]), &gy.relabel(&pts[1])).scale(*cf))?;
        }
        Ok(acc)
    }

    pub fn max_diff(&self, o: &DualTensor) -> f64 {
        self.terms.max_diff(&o.terms)
    }
}

impl fmt::Display for DualTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((a, b), cf)| format!("{}*({} ⊗ {})", fmt_coeff(*cf), a, b)).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Δ̃ of a T-matrix entry or of 𝒟^r.
pub fn coproduct_entry(pt: &ParamPoint, name: GaussName, power: Rat) -> Result<DualTensor> {
    let e = |n| entry(pt, n);
    let tp = |x: GaussName, y: GaussName| DualTensor::pure(&e(x), &e(y));
    use GaussName::*;
    if name == Det {
        let d = gauss_entry(pt, Det, power)?;
        return Ok(DualTensor::pure(&d, &d));
    }
    if name == Dhat || !power.is_integer() || power < Rat::zero() {
        return Err(Error::NotGaussMonomial(format!("{name}^{power}")));
    }
    let one = DualTensor::pure(&DualElement::one(pt), &DualElement::one(pt));
    let single = match name {
        A => tp(A, A).add(&tp(B, C))?,
        B => tp(A, B).add(&tp(B, D))?,
        C => tp(C, A).add(&tp(D, C))?,
        D => tp(C, B).add(&tp(D, D))?,
        _ => unreachable!(),
    };
    let mut acc = one;
    for _ in 0..power.to_integer() {
        acc = acc.mul(&single)?;
    }
    Ok(acc)
}

/// Δ̃ on a product of Gauss entries, extended multiplicatively.
pub fn coproduct_word(pt: &ParamPoint, word: &[(GaussName, Rat)]) -> Result<DualTensor> {
    let mut acc = DualTensor::pure(&DualElement::one(pt), &DualElement::one(pt));
    for (n, r) in word {
        acc = acc.mul(&coproduct_entry(pt, *n, *r)?)?;
    }
    Ok(acc)
}

pub fn word_element(pt: &ParamPoint, word: &[(GaussName, Rat)]) -> Result<DualElement> {
    let mut acc = DualElement::one(pt);
    for (n, r) in word {
        acc = acc.mul(&gauss_entry(pt, *n, *r)?)?;
    }
    Ok(acc)
}

/// ε̃ on a product of Gauss entries: ε̃(T) = I, ε̃(𝒟) = 1.
pub fn counit_word(word: &[(GaussName, Rat)]) -> Result<C64> {
    let mut acc = C64::one();
    for (n, r) in word {
        match n {
            GaussName::B | GaussName::C if !r.is_zero() => acc = C64::zero(),
            GaussName::Dhat => return Err(Error::NotGaussMonomial(format!("{n}^{r}"))),
            _ => {}
        }
    }
    Ok(acc)
}

/// Exponent of P (times 2) in the gl(2) closed-form products, as (λ, μ, ν)
/// coefficients, (x, y) in lexicographic order over a, b, c, d.
pub const GL2_T_XY: [[i64; 3]; 16] = [
    [0, 0, 0],
    [0, 1, -1],
    [0, -1, 1],
    [0, 0, 0],
    [1, 2, -3],
    [1, 3, -4],
    [1, 1, -2],
    [1, 2, -3],
    [-1, -2, 3],
    [-1, -1, 2],
    [-1, -3, 4],
    [-1, -2, 3],
    [0, 0, 0],
    [0, 1, -1],
    [0, -1, 1],
    [0, 0, 0],
];

/// Same for (𝒟, x) and (x, 𝒟), x over a, b, c, d.
pub const GL2_T_DX: [[i64; 3]; 4] = [[0, 0, 0], [0, 1, -1], [0, -1, 1], [0, 0, 0]];
pub const GL2_T_XD: [[i64; 3]; 4] = [[0, 0, 0], [1, 4, -1], [-1, -4, 1], [0, 0, 0]];

/// `p^{p·(λ,μ,ν)} q^{q·(λ,μ,ν)} (A^λ_ν)^al (A^μ_ν)^am`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoeffSpec {
    pub p: [i64; 3],
    pub q: [i64; 3],
    pub al: u32,
    pub am: u32,
}

const fn cs(p: [i64; 3], q: [i64; 3], al: u32, am: u32) -> CoeffSpec {
    CoeffSpec { p, q, al, am }
}

const Z3: [i64; 3] = [0, 0, 0];
const MN: [i64; 3] = [0, 1, -1];
const LN: [i64; 3] = [1, 0, -1];
const LMN: [i64; 3] = [1, 1, -2];

/// gl(1|1) coefficients for (x, y) over a, b, c, d, lexicographic, with
/// (a, d), (d, a), (d, d) left out.
pub const GL11_C_XY: [((GaussName, GaussName), CoeffSpec); 13] = {
    use GaussName::*;
    [
        ((A, A), cs(Z3, Z3, 0, 0)),
        ((A, B), cs(Z3, Z3, 0, 1)),
        ((A, C), cs(Z3, MN, 0, 1)),
        ((B, A), cs(MN, Z3, 1, 0)),
        ((B, B), cs(Z3, Z3, 0, 0)),
        ((B, C), cs(MN, MN, 1, 1)),
        ((B, D), cs(MN, Z3, 1, 0)),
        ((C, A), cs(Z3, LMN, 1, 0)),
        ((C, B), cs(Z3, LMN, 1, 1)),
        ((C, C), cs(Z3, Z3, 0, 0)),
        ((C, D), cs(Z3, LMN, 1, 0)),
        ((D, B), cs(Z3, Z3, 0, 1)),
        ((D, C), cs(Z3, MN, 0, 1)),
    ]
};

pub const GL11_C_DX: [CoeffSpec; 3] = [cs(Z3, Z3, 0, 0), cs(Z3, Z3, 0, 1), cs(Z3, MN, 0, 1)];
pub const GL11_C_XD: [CoeffSpec; 3] = [cs(Z3, Z3, 0, 0), cs(Z3, Z3, 1, 0), cs(Z3, LN, 1, 0)];

fn lin(k: [i64; 3], l: Rat, m: Rat, n: Rat) -> Rat {
    Rat::from(k[0]) * l + Rat::from(k[1]) * m + Rat::from(k[2]) * n
}

fn abcd_index(n: GaussName) -> Option<usize> {
    match n {
        GaussName::A => Some(0),
        GaussName::B => Some(1),
        GaussName::C => Some(2),
        GaussName::D => Some(3),
        _ => None,
    }
}

struct Closed {
    base: ParamPoint,
    out: ParamPoint,
    l: Rat,
    m: Rat,
    n: Rat,
    lambda: Colour,
    mu: Colour,
    nu: Colour,
}

impl Closed {
    fn e(&self, name: GaussName, r: Rat) -> Result<DualElement> {
        gauss_entry(&self.out, name, r)
    }

    fn x(&self, name: GaussName) -> DualElement {
        entry(&self.out, name)
    }

    fn p_pow(&self, r: Rat) -> C64 {
        self.base.mono(r, r)
    }

    fn q_pow(&self, r: Rat) -> C64 {
        self.base.mono(r, -r)
    }

    fn coeff(&self, s: &CoeffSpec) -> Result<C64> {
        let (l, m, n) = (self.l, self.m, self.n);
        let mut cf = self.p_pow(lin(s.p, l, m, n)) * self.q_pow(lin(s.q, l, m, n));
        cf *= ladder_norm(self.lambda, self.nu, &self.base)?.powu(s.al);
        cf *= ladder_norm(self.mu, self.nu, &self.base)?.powu(s.am);
        Ok(cf)
    }

    fn a_sq(&self, x: Rat) -> Result<C64> {
        ladder_norm_sq(x, self.nu, &self.base)
    }

    /// `𝒟^{(2ν−λ−μ)/(2ν)} a^{(λ+μ−2ν)/ν}`, the gl(1|1) product prefix.
    fn gl11_prefix(&self) -> Result<DualElement> {
        let (l, m, n) = (self.l, self.m, self.n);
        self.e(GaussName::Det, (n * 2 - l - m) / (n * 2))?.mul(&self.e(GaussName::A, (l + m - n * 2) / n)?)
    }

    /// `c a^{-1} x b` with x = d.
    fn cainv(&self, mid: &DualElement) -> Result<DualElement> {
        self.x(GaussName::C).mul(&self.e(GaussName::A, -Rat::one())?)?.mul(mid)?.mul(&self.x(GaussName::B))
    }
}

/// Printed closed form of m̃^ν_{λμ}(x ⊗ y) at the ν push of `base`.
pub fn mult_col_closed(
    base: &ParamPoint,
    x: GaussName,
    y: GaussName,
    lambda: Colour,
    mu: Colour,
    nu: Colour,
) -> Result<DualElement> {
    use GaussName::*;
    let cl = Closed {
        base: *base,
        out: base.push(nu),
        l: lambda.value(),
        m: mu.value(),
        n: nu.value(),
        lambda,
        mu,
        nu,
    };
    let (l, m, n) = (cl.l, cl.m, cl.n);
    let unknown = || Error::UnknownPair(x.to_string(), y.to_string());
    let two = Rat::from(2);
    match base.model() {
        Model::Gl2 => {
            let pf = |k: [i64; 3]| base.mono(Rat::zero(), lin(k, l, m, n) / two);
            match (abcd_index(x), abcd_index(y), x, y) {
                (Some(i), Some(j), _, _) => {
                    let d = cl.e(Det, (l + m - n * two) / (n * two))?;
                    Ok(d.mul(&cl.x(x))?.mul(&cl.x(y))?.scale(pf(GL2_T_XY[4 * i + j])))
                }
                (None, Some(j), Det, _) => {
                    let d = cl.e(Det, (l * two + m - n) / (n * two))?;
                    Ok(d.mul(&cl.x(y))?.scale(pf(GL2_T_DX[j])))
                }
                (Some(i), None, _, Det) => {
                    let d = cl.e(Det, (l + m * two - n) / (n * two))?;
                    Ok(d.mul(&cl.x(x))?.scale(pf(GL2_T_XD[i])))
                }
                (None, None, Det, Det) => cl.e(Det, (l + m) / n),
                _ => Err(unknown()),
            }
        }
        Model::Gl11 => match (x, y) {
            (A, D) => {
                let t = cl.x(A).mul(&cl.x(D))?;
                let k = cl.q_pow(-n) * cl.p_pow(m) * cl.a_sq(n - m)?;
                cl.gl11_prefix()?.mul(&t.sub(&cl.x(C).mul(&cl.x(B))?.scale(k))?)
            }
            (D, A) => {
                let t = cl.x(D).mul(&cl.x(A))?;
                let k = cl.p_pow(m) * (cl.q_pow(-n) * cl.a_sq(n - m)? - cl.p_pow(l) * cl.a_sq(n * two - l - m)?);
                cl.gl11_prefix()?.mul(&t.add(&cl.x(C).mul(&cl.x(B))?.scale(k))?)
            }
            (D, D) => {
                let t = cl.x(D).pow(2)?;
                let k = cl.p_pow(l + m) * cl.a_sq(n * two - l - m)?;
                cl.gl11_prefix()?.mul(&t.sub(&cl.cainv(&cl.x(D))?.scale(k))?)
            }
            (Det, Det) => cl.e(Det, two),
            (Det, D) => {
                let pre = cl.e(Det, (n * 3 - m) / (n * two))?.mul(&cl.e(A, (m - n) / n)?)?;
                let k = cl.p_pow(m) * cl.a_sq(n - m)?;
                pre.mul(&cl.x(D).sub(&cl.cainv(&DualElement::one(&cl.out))?.scale(k))?)
            }
            (D, Det) => {
                let pre = cl.e(Det, (n * 3 - l) / (n * two))?.mul(&cl.e(A, (l - n) / n)?)?;
                let k = cl.p_pow(l) * cl.a_sq(n - l)?;
                pre.mul(&cl.x(D).sub(&cl.cainv(&DualElement::one(&cl.out))?.scale(k))?)
            }
            (Det, _) => {
                let j = abcd_index(y).filter(|j| *j < 3).ok_or_else(unknown)?;
                let pre = cl.e(Det, (n * 3 - m) / (n * two))?.mul(&cl.e(A, (m - n) / n)?)?;
                Ok(pre.mul(&cl.x(y))?.scale(cl.coeff(&GL11_C_DX[j])?))
            }
            (_, Det) => {
                let i = abcd_index(x).filter(|i| *i < 3).ok_or_else(unknown)?;
                let pre = cl.e(Det, (n * 3 - l) / (n * two))?.mul(&cl.e(A, (l - n) / n)?)?;
                Ok(pre.mul(&cl.x(x))?.scale(cl.coeff(&GL11_C_XD[i])?))
            }
            _ => {
                let spec = GL11_C_XY.iter().find(|(k, _)| *k == (x, y)).map(|(_, s)| *s).ok_or_else(unknown)?;
                let t = cl.x(x).mul(&cl.x(y))?;
                Ok(cl.gl11_prefix()?.mul(&t)?.scale(cl.coeff(&spec)?))
            }
        },
    }
}

/// Printed closed form of S̃^ν_μ(x) at the ν push of `base`.
pub fn antipode_col_closed(base: &ParamPoint, x: GaussName, mu: Colour, nu: Colour) -> Result<DualElement> {
    use GaussName::*;
    let out = base.push(nu);
    let (m, n) = (mu.value(), nu.value());
    let e = |name, r| gauss_entry(&out, name, r);
    let one = Rat::one();
    let two = Rat::from(2);
    let p_pow = |r: Rat| base.mono(r, r);
    let q_pow = |r: Rat| base.mono(r, -r);
    match base.model() {
        Model::Gl2 => {
            let s = -(m + n) / (n * two);
            let big_p = |r: Rat| base.mono(Rat::zero(), r);
            let big_q = base.big_q();
            match x {
                A => e(Det, s)?.mul(&entry(&out, D)),
                B => Ok(e(Det, s)?.mul(&entry(&out, B))?.scale(-big_q.inv() * big_p(-(m + n) / two))),
                C => Ok(e(Det, s)?.mul(&entry(&out, C))?.scale(-big_q * big_p((m + n) / two))),
                D => e(Det, s)?.mul(&entry(&out, A)),
                Det => e(Det, -m / n),
                Dhat => Err(Error::UnknownPair(x.to_string(), String::new())),
            }
        }
        Model::Gl11 => {
            let amn = ladder_norm(mu, nu, base)?;
            let s = -(m + n) / (n * two);
            match x {
                A => {
                    let lead = e(A, -m / n)?;
                    let corr = entry(&out, C).mul(&e(A, -(m + n) / n)?)?.mul(&e(Dhat, -one)?)?.mul(&entry(&out, B))?;
                    let k = p_pow(-m) * q_pow(m) * ladder_norm_sq(m, nu, base)?;
                    e(Det, (m - n) / (n * two))?.mul(&lead.sub(&corr.scale(k))?)
                }
                B => Ok(e(A, s)?.mul(&e(Dhat, s)?)?.mul(&entry(&out, B))?.scale(-p_pow(-m) * amn)),
                C => Ok(entry(&out, C).mul(&e(A, s)?)?.mul(&e(Dhat, s)?)?.scale(-q_pow(m) * amn)),
                D => e(Det, -(m - n) / (n * two))?.mul(&e(Dhat, -m / n)?),
                Det => e(Det, -one),
                Dhat => Err(Error::UnknownPair(x.to_string(), String::new())),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::C64;
    use approx::assert_abs_diff_eq;

    const TOL: f64 = 1e-11;

    fn pt(model: Model) -> ParamPoint {
        ParamPoint::new(model, C64::new(0.31, -0.17), C64::new(0.23, 0.41))
    }

    fn e(p: &ParamPoint, n: GaussName) -> DualElement {
        entry(p, n)
    }

    fn zero_diff(x: &DualElement, y: &DualElement) -> f64 {
        x.sub(y).unwrap().max_abs()
    }

    #[test]
    fn lie_brackets_gl2() {
        let p = pt(Model::Gl2);
        let al = lie_generator(&p, LieName::Alpha);
        let de = lie_generator(&p, LieName::Delta);
        let be = DualElement::beta(&p);
        let ga = DualElement::gamma(&p);
        let br = |x: &DualElement, y: &DualElement| x.mul(y).unwrap().sub(&y.mul(x).unwrap()).unwrap();
        let (th, ph) = (p.theta(), p.phi());
        assert!(zero_diff(&br(&al, &be), &be.scale(ph - th)) < TOL);
        assert!(zero_diff(&br(&al, &ga), &ga.scale(ph + th)) < TOL);
        assert!(zero_diff(&br(&de, &be), &be.scale(ph + th)) < TOL);
        assert!(zero_diff(&br(&de, &ga), &ga.scale(ph - th)) < TOL);
        assert!(br(&be, &ga).is_zero());
        assert!(br(&al, &de).is_zero());
    }

    #[test]
    fn lie_brackets_gl11() {
        let p = pt(Model::Gl11);
        let al = lie_generator(&p, LieName::Alpha);
        let de = lie_generator(&p, LieName::Delta);
        let be = DualElement::beta(&p);
        let ga = DualElement::gamma(&p);
        let br = |x: &DualElement, y: &DualElement| x.mul(y).unwrap().sub(&y.mul(x).unwrap()).unwrap();
        assert!(zero_diff(&br(&al, &be), &be.scale(p.omega())) < TOL);
        assert!(zero_diff(&br(&al, &ga), &ga.scale(p.eta())) < TOL);
        assert!(zero_diff(&br(&de, &be), &be.scale(p.omega())) < TOL);
        assert!(zero_diff(&br(&de, &ga), &ga.scale(p.eta())) < TOL);
        assert!(be.mul(&ga).unwrap().add(&ga.mul(&be).unwrap()).unwrap().is_zero());
        assert!(be.mul(&be).unwrap().is_zero());
        assert!(ga.mul(&ga).unwrap().is_zero());
    }

    #[test]
    fn defining_relations_gl2() {
        use GaussName::*;
        let p = pt(Model::Gl2);
        let (a, b, cc, d) = (e(&p, A), e(&p, B), e(&p, C), e(&p, D));
        let (pp, qq) = (p.p(), p.q());
        let m = |x: &DualElement, y: &DualElement| x.mul(y).unwrap();
        assert!(zero_diff(&m(&a, &b), &m(&b, &a).scale(qq)) < TOL);
        assert!(zero_diff(&m(&a, &cc), &m(&cc, &a).scale(pp)) < TOL);
        assert!(zero_diff(&m(&b, &d), &m(&d, &b).scale(pp)) < TOL);
        assert!(zero_diff(&m(&cc, &d), &m(&d, &cc).scale(qq)) < TOL);
        assert!(zero_diff(&m(&b, &cc), &m(&cc, &b).scale(pp / qq)) < TOL);
        let lhs = m(&a, &d).sub(&m(&d, &a)).unwrap();
        assert!(zero_diff(&lhs, &m(&b, &cc).scale(qq - pp.inv())) < TOL);
        let det = e(&p, Det);
        assert!(zero_diff(&det, &m(&a, &d).sub(&m(&b, &cc).scale(qq)).unwrap()) < TOL);
        assert!(zero_diff(&det, &m(&d, &a).sub(&m(&cc, &b).scale(qq.inv())).unwrap()) < TOL);
        let big_p = p.big_p();
        assert!(zero_diff(&m(&det, &b), &m(&b, &det).scale(big_p.powi(-2))) < TOL);
        assert!(zero_diff(&m(&det, &cc), &m(&cc, &det).scale(big_p.powi(2))) < TOL);
    }

    #[test]
    fn defining_relations_gl11() {
        use GaussName::*;
        let p = pt(Model::Gl11);
        let (a, b, cc, d) = (e(&p, A), e(&p, B), e(&p, C), e(&p, D));
        let (pp, qq) = (p.p(), p.q());
        let m = |x: &DualElement, y: &DualElement| x.mul(y).unwrap();
        assert!(zero_diff(&m(&a, &b), &m(&b, &a).scale(pp.inv())) < TOL);
        assert!(zero_diff(&m(&a, &cc), &m(&cc, &a).scale(qq.inv())) < TOL);
        assert!(zero_diff(&m(&b, &d), &m(&d, &b).scale(pp)) < TOL);
        assert!(zero_diff(&m(&cc, &d), &m(&d, &cc).scale(qq)) < TOL);
        assert!(zero_diff(&m(&b, &cc), &m(&cc, &b).scale(-pp / qq)) < TOL);
        let lhs = m(&a, &d).sub(&m(&d, &a)).unwrap();
        assert!(zero_diff(&lhs, &m(&b, &cc).scale(qq - pp.inv())) < TOL);
        assert!(m(&b, &b).is_zero() && m(&cc, &cc).is_zero());
        // 𝒟 = a d̂⁻¹ is central
        let det = e(&p, Det);
        for x in [&a, &b, &cc, &d] {
            assert!(zero_diff(&m(&det, x), &m(x, &det)) < TOL);
        }
        assert!(zero_diff(&det, &m(&a, &gauss_entry(&p, Dhat, -Rat::one()).unwrap())) < TOL);
    }

    #[test]
    fn gauss_entry_examples() {
        let p = pt(Model::Gl2);
        let det = gauss_entry(&p, GaussName::Det, Rat::one()).unwrap();
        assert_eq!(det.coeff(&DualTerm::exp(Rat::zero(), Rat::one())), C64::one());
        assert_eq!(gauss_entry(&p, GaussName::A, Rat::zero()).unwrap(), DualElement::one(&p));
        assert!(matches!(gauss_entry(&p, GaussName::B, rat(1, 2)), Err(Error::NonGroupLikePower(_))));
        assert!(matches!(gauss_entry(&p, GaussName::D, rat(-1, 1)), Err(Error::NonGroupLikePower(_))));
    }

    #[test]
    fn rho_examples() {
        for model in [Model::Gl2, Model::Gl11] {
            let p = pt(model);
            let nu = Colour::frac(3, 2);
            let det = e(&p, GaussName::Det);
            let r = rho(&det, nu, Direction::Fwd).unwrap();
            let q = p.push(nu);
            let want = match model {
                Model::Gl2 => gauss_entry(&q, GaussName::Det, nu.inv().value()).unwrap(),
                Model::Gl11 => e(&q, GaussName::Det),
            };
            assert_eq!(r, want);
            let back = rho(&r, nu, Direction::Inv).unwrap();
            assert!(zero_diff(&back, &det) < TOL);
            assert_eq!(rho(&e(&p, GaussName::B), Colour::ONE, Direction::Fwd).unwrap(), e(&p, GaussName::B));
        }
    }

    #[test]
    fn rho_printed_images() {
        let nu = Colour::frac(5, 3);
        let nf = nu.value();
        // gl(2): ρ^ν(a) = 𝒟^{(1−ν)/(2ν)} a
        let p = pt(Model::Gl2);
        let q = p.push(nu);
        let got = rho(&e(&p, GaussName::A), nu, Direction::Fwd).unwrap();
        let want = gauss_entry(&q, GaussName::Det, (Rat::one() - nf) / (nf * 2)).unwrap().mul(&e(&q, GaussName::A)).unwrap();
        assert!(zero_diff(&got, &want) < TOL);
        // gl(1|1): ρ^ν(a) = 𝒟^{(ν−1)/(2ν)} a^{1/ν}, ρ^ν(b) = A^1_ν 𝒟^{(ν−1)/(2ν)} a^{(1−ν)/ν} b
        let p = pt(Model::Gl11);
        let q = p.push(nu);
        let dpow = gauss_entry(&q, GaussName::Det, (nf - Rat::one()) / (nf * 2)).unwrap();
        let got = rho(&e(&p, GaussName::A), nu, Direction::Fwd).unwrap();
        let want = dpow.mul(&gauss_entry(&q, GaussName::A, nf.recip()).unwrap()).unwrap();
        assert!(zero_diff(&got, &want) < TOL);
        let got = rho(&e(&p, GaussName::B), nu, Direction::Fwd).unwrap();
        let a1 = ladder_norm(Colour::ONE, nu, &p).unwrap();
        let want = dpow
            .mul(&gauss_entry(&q, GaussName::A, (Rat::one() - nf) / nf).unwrap())
            .unwrap()
            .mul(&e(&q, GaussName::B))
            .unwrap()
            .scale(a1);
        assert!(zero_diff(&got, &want) < TOL);
    }

    #[test]
    fn antipode_gauss_inverse_gl2() {
        use GaussName::*;
        let p = pt(Model::Gl2);
        let m = |x: &DualElement, y: &DualElement| x.mul(y).unwrap();
        let a_inv = gauss_entry(&p, A, -Rat::one()).unwrap();
        let dh_inv = gauss_entry(&p, Dhat, -Rat::one()).unwrap();
        let (be, ga) = (DualElement::beta(&p), DualElement::gamma(&p));
        let sa = a_inv.add(&m(&m(&be, &dh_inv), &ga)).unwrap();
        assert!(zero_diff(&antipode_entry(&p, A).unwrap(), &sa) < TOL);
        assert!(zero_diff(&antipode_entry(&p, B).unwrap(), &m(&be, &dh_inv).scale(c(-1.0))) < TOL);
        assert!(zero_diff(&antipode_entry(&p, C).unwrap(), &m(&dh_inv, &ga).scale(c(-1.0))) < TOL);
        assert!(zero_diff(&antipode_entry(&p, D).unwrap(), &dh_inv) < TOL);
    }

    fn antipode_axiom(model: Model) {
        use GaussName::*;
        let p = pt(model);
        let order = 6;
        for name in [A, B, C, D] {
            let delta = coproduct_entry(&p, name, Rat::one()).unwrap();
            let mut left = DualElement::zero(&p);
            let mut right = DualElement::zero(&p);
            for ((x, y), cf) in delta.terms().iter() {
                let xe = DualElement::term(&p, *x, *cf);
                let ye = DualElement::term(&p, *y, C64::one());
                left = left.add(&antipode(&xe, order).unwrap().mul(&ye).unwrap()).unwrap();
                right = right.add(&xe.mul(&antipode(&ye, order).unwrap()).unwrap()).unwrap();
            }
            let want = DualElement::scalar(&p, counit_word(&[(name, Rat::one())]).unwrap());
            assert!(zero_diff(&left, &want) < TOL, "{model} {name} left: {left}");
            assert!(zero_diff(&right, &want) < TOL, "{model} {name} right: {right}");
        }
    }

    #[test]
    fn antipode_axiom_gl2() {
        antipode_axiom(Model::Gl2);
    }

    #[test]
    fn antipode_axiom_gl11() {
        antipode_axiom(Model::Gl11);
    }

    #[test]
    fn antipode_anti_multiplicative() {
        use GaussName::*;
        for model in [Model::Gl2, Model::Gl11] {
            let p = pt(model);
            let order = 5;
            for (x, y) in [(A, B), (C, D), (B, C), (D, A)] {
                let (xe, ye) = (e(&p, x), e(&p, y));
                let lhs = antipode(&xe.mul(&ye).unwrap(), order).unwrap();
                let sign = if model.graded() && x != A && x != D && y != A && y != D { -1.0 } else { 1.0 };
                let rhs = antipode(&ye, order).unwrap().mul(&antipode(&xe, order).unwrap()).unwrap().scale(c(sign));
                let keep = |t: &DualTerm| t.g <= 3 && t.b <= 3;
                assert!(zero_diff(&lhs.restrict(keep), &rhs.restrict(keep)) < TOL, "{model} {x}{y}");
            }
        }
    }

    #[test]
    fn antipode_det_and_powers() {
        for model in [Model::Gl2, Model::Gl11] {
            let p = pt(model);
            let det = e(&p, GaussName::Det);
            assert!(zero_diff(&antipode(&det, 4).unwrap(), &gauss_entry(&p, GaussName::Det, -Rat::one()).unwrap()) < TOL);
            // S̃(a^{1/2})² = S̃(a)
            let half_a = gauss_entry(&p, GaussName::A, rat(1, 2)).unwrap();
            let s = antipode(&half_a, 6).unwrap();
            let keep = |t: &DualTerm| t.g <= 6 && t.b <= 6;
            let sq = s.mul(&s).unwrap().restrict(keep);
            assert!(zero_diff(&sq, &antipode(&e(&p, GaussName::A), 6).unwrap()) < TOL);
        }
    }

    #[test]
    fn antipode_rejects_polynomials() {
        let p = pt(Model::Gl2);
        assert!(matches!(antipode(&DualElement::h(&p), 3), Err(Error::NotGaussMonomial(_))));
    }

    #[test]
    fn coalgebra_examples() {
        use GaussName::*;
        let p = pt(Model::Gl2);
        let da = coproduct_entry(&p, A, Rat::one()).unwrap();
        let want = DualTensor::pure(&e(&p, A), &e(&p, A)).add(&DualTensor::pure(&e(&p, B), &e(&p, C))).unwrap();
        assert!(da.max_diff(&want) < TOL);
        assert_eq!(counit_word(&[(B, Rat::one())]).unwrap(), C64::zero());
        let dd = coproduct_entry(&p, Det, Rat::one()).unwrap();
        assert!(dd.max_diff(&DualTensor::pure(&e(&p, Det), &e(&p, Det))).abs() < TOL);
        // Δ̃ of the determinant formula agrees with 𝒟⊗𝒟
        let ad = coproduct_word(&p, &[(A, Rat::one()), (D, Rat::one())]).unwrap();
        let bc = coproduct_word(&p, &[(B, Rat::one()), (C, Rat::one())]).unwrap();
        let delta = ad.sub(&bc.scale(p.q())).unwrap();
        assert!(delta.max_diff(&DualTensor::pure(&e(&p, Det), &e(&p, Det))) < TOL);
    }

    #[test]
    fn counit_values() {
        let p = pt(Model::Gl11);
        assert_eq!(counit(&e(&p, GaussName::A)), C64::one());
        assert_eq!(counit(&e(&p, GaussName::D)), C64::one());
        assert_eq!(counit(&DualElement::beta(&p)), C64::zero());
    }

    #[test]
    fn gl2_t_table_pinned() {
        assert_eq!(GL2_T_XY[0], [0, 0, 0]);
        assert_eq!(GL2_T_XY[1], [0, 1, -1]);
        assert_eq!(GL2_T_XY[2], [0, -1, 1]);
        assert_eq!(GL2_T_XY[3], [0, 0, 0]);
        assert_eq!(GL2_T_XY[4], [1, 2, -3]);
        assert_eq!(GL2_T_XY[5], [1, 3, -4]);
        assert_eq!(GL2_T_XY[6], [1, 1, -2]);
        assert_eq!(GL2_T_XY[7], [1, 2, -3]);
        assert_eq!(GL2_T_XY[8], [-1, -2, 3]);
        assert_eq!(GL2_T_XY[9], [-1, -1, 2]);
        assert_eq!(GL2_T_XY[10], [-1, -3, 4]);
        assert_eq!(GL2_T_XY[11], [-1, -2, 3]);
        assert_eq!(GL2_T_XY[12], [0, 0, 0]);
        assert_eq!(GL2_T_XY[13], [0, 1, -1]);
        assert_eq!(GL2_T_XY[14], [0, -1, 1]);
        assert_eq!(GL2_T_XY[15], [0, 0, 0]);
        assert_eq!(GL2_T_DX, [[0, 0, 0], [0, 1, -1], [0, -1, 1], [0, 0, 0]]);
        assert_eq!(GL2_T_XD, [[0, 0, 0], [1, 4, -1], [-1, -4, 1], [0, 0, 0]]);
    }

    #[test]
    fn gl11_c_table_pinned() {
        use GaussName::*;
        let keys: Vec<_> = GL11_C_XY.iter().map(|(k, _)| *k).collect();
        assert_eq!(
            keys,
            vec![(A, A), (A, B), (A, C), (B, A), (B, B), (B, C), (B, D), (C, A), (C, B), (C, C), (C, D), (D, B), (D, C)]
        );
        let specs: Vec<_> = GL11_C_XY.iter().map(|(_, s)| (s.p, s.q, s.al, s.am)).collect();
        assert_eq!(specs[0], (Z3, Z3, 0, 0));
        assert_eq!(specs[1], (Z3, Z3, 0, 1));
        assert_eq!(specs[2], (Z3, MN, 0, 1));
        assert_eq!(specs[3], (MN, Z3, 1, 0));
        assert_eq!(specs[4], (Z3, Z3, 0, 0));
        assert_eq!(specs[5], (MN, MN, 1, 1));
        assert_eq!(specs[6], (MN, Z3, 1, 0));
        assert_eq!(specs[7], (Z3, LMN, 1, 0));
        assert_eq!(specs[8], (Z3, LMN, 1, 1));
        assert_eq!(specs[9], (Z3, Z3, 0, 0));
        assert_eq!(specs[10], (Z3, LMN, 1, 0));
        assert_eq!(specs[11], (Z3, Z3, 0, 1));
        assert_eq!(specs[12], (Z3, MN, 0, 1));
        assert_eq!(GL11_C_DX[2], cs(Z3, MN, 0, 1));
        assert_eq!(GL11_C_XD[2], cs(Z3, LN, 1, 0));
    }

    #[test]
    fn closed_examples() {
        let base = pt(Model::Gl2);
        let (l, m, n) = (Colour::int(2), Colour::int(3), Colour::frac(1, 2));
        let dd = mult_col_closed(&base, GaussName::Det, GaussName::Det, l, m, n).unwrap();
        let out = base.push(n);
        assert_eq!(dd, gauss_entry(&out, GaussName::Det, rat(10, 1)).unwrap());
        let base = pt(Model::Gl11);
        let dd = mult_col_closed(&base, GaussName::Det, GaussName::Det, l, m, n).unwrap();
        assert_eq!(dd, gauss_entry(&base.push(n), GaussName::Det, rat(2, 1)).unwrap());
        assert!(matches!(
            mult_col_closed(&base, GaussName::Dhat, GaussName::A, l, m, n),
            Err(Error::UnknownPair(_, _))
        ));
    }

    #[test]
    fn coloured_unit_colours_are_standard() {
        let p = pt(Model::Gl2);
        let (a, b) = (e(&p, GaussName::A), e(&p, GaussName::B));
        let one = Colour::ONE;
        assert!(zero_diff(&mult_col(&a, &b, one, one, one).unwrap(), &a.mul(&b).unwrap()) < TOL);
        assert_eq!(unit_col(&p, one), DualElement::one(&p));
        let s = antipode_col(&a, one, one, 4).unwrap();
        assert!(zero_diff(&s, &antipode(&a, 4).unwrap()) < TOL);
    }

    #[test]
    fn coloured_det_maps() {
        let base = pt(Model::Gl2);
        let (l, m, n) = (Colour::int(2), Colour::frac(1, 3), Colour::frac(3, 2));
        let x = e(&base.push(l), GaussName::Det);
        let y = e(&base.push(m), GaussName::Det);
        let got = mult_col(&x, &y, l, m, n).unwrap();
        let want = gauss_entry(&base.push(n), GaussName::Det, (l.value() + m.value()) / n.value()).unwrap();
        assert!(zero_diff(&got, &want) < TOL);
        let s = antipode_col(&y, m, n, 4).unwrap();
        let want = gauss_entry(&base.push(n), GaussName::Det, -m.value() / n.value()).unwrap();
        assert!(zero_diff(&s, &want) < TOL);
        assert_abs_diff_eq!(counit(&s).re, 1.0, epsilon = TOL);
    }
}
