//! The dual pairing, universal T-matrices, the dotted products of mixed
//! tensors, and the coloured T-matrix and RTT relations.
//!
//! Tensor pairings are plain: ⟨x⊗y, X⊗Y⟩ = ⟨x,X⟩⟨y,Y⟩. With that choice the
//! barred bases are exactly dual in both models.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::dualg::{self, DualElement, DualTensor, DualTerm, GaussName};
use crate::error::{Error, Result};
use crate::grmat::{coloured_r_matrix, defining_grades};
use crate::lincomb::{binomial, fmt_coeff, LinComb};
use crate::quea::{self, QueaElement, QueaTensor, QueaTerm};
use crate::scalars::{c, q_factorial, rat_f64, Colour, Model, ParamPoint, Rat, C64};

/// Multi-index A = (a1, a2, a3, a4) of the barred bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub [u32; 4]);

impl Label {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dual_term(&self) -> DualTerm {
        let [a1, a2, a3, a4] = self.0;
        DualTerm::basis(a1, a2, a3, a4)
    }

    pub fn quea_term(&self) -> QueaTerm {
        let [a1, a2, a3, a4] = self.0;
        QueaTerm::basis(a1, a2, a3, a4)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// All labels of total degree ≤ `max_deg`; gl(1|1) keeps a1, a4 ≤ 1.
pub fn labels(model: Model, max_deg: u32) -> Vec<Label> {
    let cap = if model.graded() { 1 } else { max_deg };
    let mut out = Vec::new();
    for a1 in 0..=cap.min(max_deg) {
        for a4 in 0..=cap.min(max_deg - a1) {
            for a2 in 0..=max_deg - a1 - a4 {
                for a3 in 0..=max_deg - a1 - a4 - a2 {
                    out.push(Label([a1, a2, a3, a4]));
                }
            }
        }
    }
    out.sort();
    out
}

/// ⟨γ^g…β^b, Ĵ₋^g…Ĵ₊^b⟩ with trivial Cartan parts.
pub fn ladder_norm_factor(pt: &ParamPoint, g: u32, b: u32) -> Result<C64> {
    match pt.model() {
        Model::Gl2 => {
            let q = pt.big_q();
            let e = |k: u32| ((k * k.saturating_sub(1)) / 2) as i32;
            Ok(q_factorial(g, q)? * q.powi(-e(g)) * q_factorial(b, q)? * q.powi(e(b)))
        }
        Model::Gl11 => Ok(C64::one()),
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// ∂_U^k (U^j e^{uU}) at U = U0, i.e. ⟨h^j e^{uh}, Ĵ₀^k e^{U0 Ĵ₀}⟩.
pub fn cartan_pair(j: u32, u: Rat, k: u32, u0: C64) -> C64 {
    let uf = rat_f64(u);
    let mut acc = C64::zero();
    for i in 0..=k.min(j) {
        let falling = factorial(j) / factorial(j - i);
        acc += u0.powu(j - i) * (binomial(k, i) * falling * uf.powi((k - i) as i32));
    }
    acc * (u0 * uf).exp()
}

/// The series oracle Σ_r ⟨h^{j+r}, Ĵ₀^{k+s}⟩ u^r U0^s/(r! s!) cut at `terms`.
pub fn cartan_pair_series(j: u32, u: Rat, k: u32, u0: C64, terms: u32) -> C64 {
    let uf = rat_f64(u);
    let mut acc = C64::zero();
    for r in 0..terms {
        let n = j + r;
        if n < k {
            continue;
        }
        let s = n - k;
        acc += u0.powu(s) * (uf.powi(r as i32) * factorial(n) / (factorial(r) * factorial(s)));
    }
    acc
}

pub fn pair_terms(pt: &ParamPoint, x: &DualTerm, y: &QueaTerm) -> Result<C64> {
    if x.g != y.m || x.b != y.n {
        return Ok(C64::zero());
    }
    let n = ladder_norm_factor(pt, x.g, x.b)?;
    Ok(n * cartan_pair(x.j1, x.u, y.k1, y.eh.value(pt)) * cartan_pair(x.j2, x.v, y.k2, y.ez.value(pt)))
}

pub fn pair(x: &DualElement, u: &QueaElement) -> Result<C64> {
    if x.point() != u.point() {
        return Err(Error::PointMismatch);
    }
    let pt = *x.point();
    let mut acc = C64::zero();
    for (a, ca) in x.terms().iter() {
        for (b, cb) in u.terms().iter() {
            acc += ca * cb * pair_terms(&pt, a, b)?;
        }
    }
    Ok(acc)
}

/// ⟨x⊗y, X⊗Y⟩ = ⟨x,X⟩⟨y,Y⟩.
pub fn pair_tensor(x: &DualTensor, u: &QueaTensor) -> Result<C64> {
    if x.points() != u.points() {
        return Err(Error::PointMismatch);
    }
    if !u.bilinear().is_zero() {
        return Err(Error::NotGaussMonomial("pairing with a bilinear factor".into()));
    }
    let [p0, p1] = *x.points();
    let mut acc = C64::zero();
    for ((a, b), ca) in x.terms().iter() {
        for ((s, t), cs) in u.terms().iter() {
            let l = pair_terms(&p0, a, s)?;
            if l.is_zero() {
                continue;
            }
            acc += ca * cs * l * pair_terms(&p1, b, t)?;
        }
    }
    Ok(acc)
}

pub fn bar_x(pt: &ParamPoint, a: Label) -> DualElement {
    DualElement::term(pt, a.dual_term(), C64::one())
}

/// X̄_A, normalised so that ⟨x̄^A, X̄_B⟩ = δ.
pub fn bar_big_x(pt: &ParamPoint, a: Label) -> Result<QueaElement> {
    let [a1, a2, a3, a4] = a.0;
    let pre = ladder_norm_factor(pt, a1, a4)?.inv() / (factorial(a2) * factorial(a3));
    Ok(QueaElement::term(pt, a.quea_term(), pre))
}

/// Coefficients of `x` along x̄^A for the given labels.
pub fn dual_coeffs(x: &DualElement, ls: &[Label]) -> Result<Vec<C64>> {
    ls.iter().map(|a| pair(x, &bar_big_x(x.point(), *a)?)).collect()
}

/// Coefficients of `u` along X̄_A for the given labels.
pub fn quea_coeffs(u: &QueaElement, ls: &[Label]) -> Result<Vec<C64>> {
    ls.iter().map(|a| pair(&bar_x(u.point(), *a), u)).collect()
}

/// Δ̃(x) ≈ Σ_{A,B} ⟨x, X̄_A X̄_B⟩ x̄^A⊗x̄^B over labels of degree ≤ `n`.
pub fn dual_coproduct_truncated(x: &DualElement, n: u32) -> Result<DualTensor> {
    let pt = *x.point();
    let ls = labels(pt.model(), n);
    let mut terms = LinComb::new();
    for a in &ls {
        let xa = bar_big_x(&pt, *a)?;
        for b in &ls {
            let v = pair(x, &xa.mul(&bar_big_x(&pt, *b)?)?)?;
            terms.add_term((a.dual_term(), b.dual_term()), v);
        }
    }
    Ok(DualTensor::from_terms([pt, pt], terms.pruned()))
}

pub fn counit_dual(x: &DualElement) -> C64 {
    pair(x, &QueaElement::one(x.point())).expect("same point")
}

/// How leg products of mixed tensors treat odd factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signs {
    /// (x⊗X)(y⊗Y) = (−1)^{|X||y|} xy⊗XY.
    Graded,
    /// (x⊗X)(y⊗Y) = xy⊗XY.
    Ordered,
}

type MixedKey = (DualTerm, QueaTerm);

/// Truncated element of dual ⊗ quantum algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedTensor {
    dpt: ParamPoint,
    qpt: ParamPoint,
    order: u32,
    terms: LinComb<MixedKey>,
}

impl MixedTensor {
    pub fn zero(dpt: ParamPoint, qpt: ParamPoint, order: u32) -> Self {
        MixedTensor { dpt, qpt, order, terms: LinComb::new() }
    }

    pub fn from_terms(dpt: ParamPoint, qpt: ParamPoint, order: u32, terms: LinComb<MixedKey>) -> Self {
        let terms = terms.filter(|(x, u)| x.degree() <= order && u.degree() <= order);
        MixedTensor { dpt, qpt, order, terms }
    }

    pub fn pure(x: &DualElement, u: &QueaElement, order: u32) -> Self {
        let mut terms = LinComb::new();
        for (a, ca) in x.terms().iter() {
            for (b, cb) in u.terms().iter() {
                terms.add_term((*a, *b), ca * cb);
            }
        }
        MixedTensor::from_terms(*x.point(), *u.point(), order, terms)
    }

    pub fn one(dpt: ParamPoint, qpt: ParamPoint, order: u32) -> Self {
        MixedTensor::from_terms(dpt, qpt, order, LinComb::single((DualTerm::ONE, QueaTerm::ONE), C64::one()))
    }

    pub fn model(&self) -> Model {
        self.dpt.model()
    }

    pub fn points(&self) -> (ParamPoint, ParamPoint) {
        (self.dpt, self.qpt)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &LinComb<MixedKey> {
        &self.terms
    }

    pub fn coeff(&self, x: &DualTerm, u: &QueaTerm) -> C64 {
        self.terms.get(&(*x, *u))
    }

    fn check(&self, o: &MixedTensor) -> Result<()> {
        if self.dpt != o.dpt || self.qpt != o.qpt {
            Err(Error::PointMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, o: &MixedTensor) -> Result<MixedTensor> {
        self.check(o)?;
        let mut t = self.terms.clone();
        t.add_scaled(&o.terms, C64::one());
        Ok(MixedTensor::from_terms(self.dpt, self.qpt, self.order.min(o.order), t.pruned()))
    }

    pub fn scale(&self, s: C64) -> MixedTensor {
        MixedTensor { terms: self.terms.scaled(s), ..self.clone() }
    }

    pub fn mul(&self, o: &MixedTensor, signs: Signs) -> Result<MixedTensor> {
        self.check(o)?;
        let model = self.model();
        let order = self.order.min(o.order);
        let mut acc = LinComb::new();
        for ((x1, u1), c1) in self.terms.iter() {
            for ((x2, u2), c2) in o.terms.iter() {
                if x1.degree() + x2.degree() > order || u1.degree() + u2.degree() > order {
                    continue;
                }
                let odd = signs == Signs::Graded && (u1.grade(model) * x2.grade(model)) % 2 == 1;
                let s = if odd { -c1 * c2 } else { c1 * c2 };
                let dx = DualElement::term(&self.dpt, *x1, C64::one()).mul(&DualElement::term(&self.dpt, *x2, C64::one()))?;
                if dx.is_zero() {
                    continue;
                }
                let du = QueaElement::term(&self.qpt, *u1, C64::one()).mul(&QueaElement::term(&self.qpt, *u2, C64::one()))?;
                for (a, ca) in dx.terms().iter() {
                    for (b, cb) in du.terms().iter() {
                        acc.add_term((*a, *b), s * ca * cb);
                    }
                }
            }
        }
        Ok(MixedTensor::from_terms(self.dpt, self.qpt, order, acc.pruned()))
    }

    /// Drops terms whose legs exceed degree `l`.
    pub fn restrict(&self, l: u32) -> MixedTensor {
        let terms = self.terms.filter(|(x, u)| x.degree() <= l && u.degree() <= l);
        MixedTensor { terms, ..self.clone() }
    }

    pub fn max_diff(&self, o: &MixedTensor) -> f64 {
        self.terms.max_diff(&o.terms)
    }
}

impl fmt::Display for MixedTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((a, b), cf)| format!("{}*({} ⊗ {})", fmt_coeff(*cf), a, b)).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TForm {
    Summed,
    Factored,
}

/// Universal 𝒯 at `pt` with per-leg degree ≤ `n`.
pub fn universal_t(pt: &ParamPoint, n: u32, form: TForm) -> Result<MixedTensor> {
    match form {
        TForm::Summed => {
            let mut acc = MixedTensor::zero(*pt, *pt, n);
            for a in labels(pt.model(), n) {
                acc = acc.add(&MixedTensor::pure(&bar_x(pt, a), &bar_big_x(pt, a)?, n))?;
            }
            Ok(acc)
        }
        TForm::Factored => factored_t(pt, n),
    }
}

/// Σ_k coeff(k)·zᵏ with z a mixed tensor.
fn series(z: &MixedTensor, n: u32, coeff: impl Fn(u32) -> Result<C64>) -> Result<MixedTensor> {
    let (dpt, qpt) = z.points();
    let mut acc = MixedTensor::one(dpt, qpt, n);
    let mut pow = acc.clone();
    for k in 1..=n {
        pow = pow.mul(z, Signs::Ordered)?;
        if pow.terms.is_empty() {
            break;
        }
        acc = acc.add(&pow.scale(coeff(k)?))?;
    }
    Ok(acc)
}

/// ℰxp(γĴ₋)·exp(hĴ₀ + h̃Ẑ)·ℰxp(βĴ₊) multiplied out leg by leg.
fn factored_t(pt: &ParamPoint, n: u32) -> Result<MixedTensor> {
    let q = pt.big_q();
    let graded = pt.model().graded();
    let mix = |x: DualElement, u: QueaElement| MixedTensor::pure(&x, &u, n);
    let lower = mix(DualElement::gamma(pt), QueaElement::jm(pt));
    let upper = mix(DualElement::beta(pt), QueaElement::jp(pt));
    let cartan = mix(DualElement::h(pt), QueaElement::j0(pt)).add(&mix(DualElement::ht(pt), QueaElement::z(pt)))?;
    let tri = |k: u32| ((k * (k - 1)) / 2) as i32;
    let e_lower = series(&lower, n, |k| {
        if graded {
            Ok(C64::one())
        } else {
            Ok(q.powi(tri(k)) / q_factorial(k, q)?)
        }
    })?;
    let e_upper = series(&upper, n, |k| {
        if graded {
            Ok(C64::one())
        } else {
            Ok(q.powi(-tri(k)) / q_factorial(k, q)?)
        }
    })?;
    let e_cartan = series(&cartan, n, |k| Ok(c(1.0 / factorial(k))))?;
    e_lower.mul(&e_cartan, Signs::Ordered)?.mul(&e_upper, Signs::Ordered)
}

/// One leg of a three-leg tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Leg {
    Dual(DualTerm),
    Quea(QueaTerm),
}

impl fmt::Display for Leg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leg::Dual(t) => write!(f, "{t}"),
            Leg::Quea(t) => write!(f, "{t}"),
        }
    }
}

/// Output of the dotted products: G⊗G⊗U for ⊗̇, G⊗U⊗U for ⊗̈.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeLeg {
    pub pts: [ParamPoint; 3],
    pub terms: LinComb<(Leg, Leg, Leg)>,
}

impl ThreeLeg {
    pub fn max_diff(&self, o: &ThreeLeg) -> f64 {
        self.terms.max_diff(&o.terms)
    }

    pub fn restrict(&self, keep: impl Fn(&(Leg, Leg, Leg)) -> bool) -> ThreeLeg {
        ThreeLeg { pts: self.pts, terms: self.terms.filter(keep) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DotKind {
    Dot,
    /// ⊗̈^ν with the colours (λ, μ) of the two dual legs.
    Ddot { lambda: Colour, mu: Colour, nu: Colour },
}

/// 𝒜⊗̇ℬ multiplies the quantum-algebra legs; 𝒜⊗̈^νℬ applies m̃^ν_{λμ} to the dual legs.
pub fn dot_products(a: &MixedTensor, b: &MixedTensor, kind: DotKind) -> Result<ThreeLeg> {
    let mut terms = LinComb::new();
    match kind {
        DotKind::Dot => {
            if a.qpt != b.qpt {
                return Err(Error::PointMismatch);
            }
            let mut cache: HashMap<(QueaTerm, QueaTerm), QueaElement> = HashMap::new();
            for ((x, u), ca) in a.terms.iter() {
                for ((y, v), cb) in b.terms.iter() {
                    let prod = match cache.get(&(*u, *v)) {
                        Some(p) => p.clone(),
                        None => {
                            let p = QueaElement::term(&a.qpt, *u, C64::one()).mul(&QueaElement::term(&a.qpt, *v, C64::one()))?;
                            cache.insert((*u, *v), p.clone());
                            p
                        }
                    };
                    for (w, cw) in prod.terms().iter() {
                        terms.add_term((Leg::Dual(*x), Leg::Dual(*y), Leg::Quea(*w)), ca * cb * cw);
                    }
                }
            }
            Ok(ThreeLeg { pts: [a.dpt, b.dpt, a.qpt], terms: terms.pruned() })
        }
        DotKind::Ddot { lambda, mu, nu } => {
            let base = a.dpt.push(lambda.inv());
            let mut cache: HashMap<(DualTerm, DualTerm), DualElement> = HashMap::new();
            for ((x, u), ca) in a.terms.iter() {
                for ((y, v), cb) in b.terms.iter() {
                    let prod = match cache.get(&(*x, *y)) {
                        Some(p) => p.clone(),
                        None => {
                            let p = dualg::mult_col(
                                &DualElement::term(&a.dpt, *x, C64::one()),
                                &DualElement::term(&b.dpt, *y, C64::one()),
                                lambda,
                                mu,
                                nu,
                            )?;
                            cache.insert((*x, *y), p.clone());
                            p
                        }
                    };
                    for (w, cw) in prod.terms().iter() {
                        terms.add_term((Leg::Dual(*w), Leg::Quea(*u), Leg::Quea(*v)), ca * cb * cw);
                    }
                }
            }
            Ok(ThreeLeg { pts: [base.push(nu), a.qpt, b.qpt], terms: terms.pruned() })
        }
    }
}

/// (Δ̃⊗id)𝒯 with Δ̃ from the duality oracle at degree ≤ `n`.
pub fn coproduct_first_leg(t: &MixedTensor, n: u32) -> Result<ThreeLeg> {
    let mut terms = LinComb::new();
    for ((x, u), cf) in t.terms.iter() {
        let d = dual_coproduct_truncated(&DualElement::term(&t.dpt, *x, C64::one()), n)?;
        for ((a, b), cd) in d.terms().iter() {
            terms.add_term((Leg::Dual(*a), Leg::Dual(*b), Leg::Quea(*u)), cf * cd);
        }
    }
    Ok(ThreeLeg { pts: [t.dpt, t.dpt, t.qpt], terms: terms.pruned() })
}

/// (id⊗Δ^{λμ}_ν)𝒯^ν.
pub fn coproduct_second_leg(t: &MixedTensor, lambda: Colour, mu: Colour, nu: Colour) -> Result<ThreeLeg> {
    let base = t.qpt.push(nu.inv());
    let mut terms = LinComb::new();
    for ((x, u), cf) in t.terms.iter() {
        let d = quea::coproduct_col(&QueaElement::term(&t.qpt, *u, C64::one()), lambda, mu, nu)?;
        for ((a, b), cd) in d.terms().iter() {
            terms.add_term((Leg::Dual(*x), Leg::Quea(*a), Leg::Quea(*b)), cf * cd);
        }
    }
    Ok(ThreeLeg { pts: [t.dpt, base.push(lambda), base.push(mu)], terms: terms.pruned() })
}

/// Gauss words used to contract the dual legs.
pub fn probe_words() -> Vec<Vec<(GaussName, Rat)>> {
    use GaussName::*;
    let one = Rat::one();
    let half = Rat::new(1, 2);
    vec![
        vec![],
        vec![(A, one)],
        vec![(B, one)],
        vec![(C, one)],
        vec![(D, one)],
        vec![(Det, -one)],
        vec![(Det, half)],
        vec![(A, one), (D, one)],
        vec![(B, one), (C, one)],
        vec![(C, one), (B, one)],
        vec![(A, one), (B, one)],
        vec![(C, one), (D, one), (Det, -half)],
        vec![(B, one), (B, one)],
        vec![(C, one), (C, one)],
    ]
}

fn word_label(w: &[(GaussName, Rat)]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|(n, r)| if r.is_one() { n.to_string() } else { format!("{n}^{r}") }).collect::<Vec<_>>().join("*")
}

/// Max residual per relation of the coloured T-matrix proposition.
#[derive(Debug, Clone, PartialEq)]
pub struct PropTResiduals {
    pub values: [f64; 5],
}

impl PropTResiduals {
    pub const NAMES: [&'static str; 5] = ["dot-coproduct", "ddot-coproduct", "U-antipode", "dot-inverse", "ddot-inverse"];

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

fn restrict_ladders(x: &DualElement, l: u32) -> DualElement {
    x.restrict(|t| t.g <= l && t.b <= l)
}

/// All five relations at the family of `base`, in contracted form: dual legs
/// are tested against Gauss words, quantum-algebra legs against barred basis
/// elements of degree ≤ `l`. `mu_p` is the free colour of the inverse lines.
pub fn prop_t_residuals(
    base: &ParamPoint,
    lambda: Colour,
    mu: Colour,
    nu: Colour,
    mu_p: Colour,
    l: u32,
) -> Result<PropTResiduals> {
    let model = base.model();
    let ls = labels(model, l);
    let (pl, pm, pn, pp) = (base.push(lambda), base.push(mu), base.push(nu), base.push(mu_p));
    let mut r = [0.0f64; 5];
    let bump = |slot: &mut f64, v: f64| *slot = slot.max(v);

    // 𝒯⊗̇𝒯 = (Δ̃⊗id)𝒯 against y on the U leg: Δ̃(y) vs ⟨y, X̄_A X̄_B⟩.
    for w in probe_words() {
        let y = dualg::word_element(&pl, &w)?;
        let dy = dualg::coproduct_word(&pl, &w)?;
        for a in &ls {
            let xa = bar_big_x(&pl, *a)?;
            for b in &ls {
                if a.degree() + b.degree() > l {
                    continue;
                }
                let xb = bar_big_x(&pl, *b)?;
                let lhs = pair(&y, &xa.mul(&xb)?)?;
                let rhs = pair_tensor(&dy, &QueaTensor::pure(&xa, &xb))?;
                bump(&mut r[0], (lhs - rhs).norm());
            }
        }
    }

    // 𝒯^λ⊗̈^ν𝒯^μ = (id⊗Δ^{λμ}_ν)𝒯^ν, labelwise.
    let deltas: Vec<(Label, QueaTensor)> = ls
        .iter()
        .map(|cl| Ok((*cl, quea::coproduct_col(&bar_big_x(&pn, *cl)?, lambda, mu, nu)?)))
        .collect::<Result<_>>()?;
    for a in &ls {
        for b in &ls {
            if a.degree() + b.degree() > l {
                continue;
            }
            let m = dualg::mult_col(&bar_x(&pl, *a), &bar_x(&pm, *b), lambda, mu, nu)?;
            let tab = DualTensor::pure(&bar_x(&pl, *a), &bar_x(&pm, *b));
            for (cl, d) in &deltas {
                let lhs = pair(&m, &bar_big_x(&pn, *cl)?)?;
                let rhs = pair_tensor(&tab, d)?;
                bump(&mut r[1], (lhs - rhs).norm());
            }
        }
    }

    // (id⊗S^μ_λ)𝒯^λ = (S̃^λ_μ⊗id)𝒯^μ against y at q^μ.
    for w in probe_words() {
        let y = dualg::word_element(&pm, &w)?;
        let sy = dualg::antipode_col(&y, mu, lambda, l)?;
        for a in &ls {
            let lhs = pair(&sy, &bar_big_x(&pl, *a)?)?;
            let rhs = pair(&y, &quea::antipode_col(&bar_big_x(&pl, *a)?, mu, lambda)?)?;
            bump(&mut r[2], (lhs - rhs).norm());
        }
    }

    // Inverse lines, dual side: m̃^ν(id⊗S̃)Δ̃(y) = ι̃^ν ε̃(y) and the mirror.
    for w in probe_words() {
        let dy = dualg::coproduct_word(&pl, &w)?;
        let eps = dualg::counit_word(&w)?;
        let unit = dualg::unit_col(base, nu).scale(eps);
        let mut left = DualElement::zero(&pn);
        let mut right = DualElement::zero(&pn);
        for ((x1, x2), cf) in dy.terms().iter() {
            let e1 = DualElement::term(&pl, *x1, C64::one());
            let e2 = DualElement::term(&pl, *x2, C64::one());
            let s2 = dualg::antipode_col(&e2, lambda, mu, l)?;
            left = left.add(&dualg::mult_col(&e1, &s2, lambda, mu, nu)?.scale(*cf))?;
            let s1 = dualg::antipode_col(&e1, lambda, mu_p, l)?;
            right = right.add(&dualg::mult_col(&s1, &e2, mu_p, lambda, nu)?.scale(*cf))?;
        }
        let lim = l.saturating_sub(1);
        for side in [left, right] {
            bump(&mut r[3], restrict_ladders(&side.sub(&unit)?, lim).max_abs());
        }
    }

    // Inverse lines, quantum-algebra side: m(id⊗S^λ_μ)Δ^{λμ}_ν(X) = ε_ν(X)·1 and the mirror.
    for cl in &ls {
        let x = bar_big_x(&pn, *cl)?;
        let eps = quea::counit_col(&x, nu)?;
        let one = QueaElement::one(&pl).scale(eps);
        let d = quea::coproduct_col(&x, lambda, mu, nu)?;
        let left = d
            .map_legs([pl, pl], |t| Ok(QueaElement::term(&pl, *t, C64::one())), |t| {
                quea::antipode_col(&QueaElement::term(&pm, *t, C64::one()), lambda, mu)
            })?;
        let d2 = quea::coproduct_col(&x, mu_p, lambda, nu)?;
        let right = d2.map_legs(
            [pl, pl],
            |t| quea::antipode_col(&QueaElement::term(&pp, *t, C64::one()), lambda, mu_p),
            |t| Ok(QueaElement::term(&pl, *t, C64::one())),
        )?;
        for side in [left, right] {
            // relative to the largest coefficient before cancellation
            let scale = 1f64.max(side.max_abs());
            bump(&mut r[4], multiply_quea_legs(&side)?.sub(&one)?.max_abs() / scale);
        }
    }
    Ok(PropTResiduals { values: r })
}

/// m on a tensor whose legs share a point.
pub fn multiply_quea_legs(t: &QueaTensor) -> Result<QueaElement> {
    let [p0, p1] = *t.points();
    if p0 != p1 || !t.bilinear().is_zero() {
        return Err(Error::PointMismatch);
    }
    let mut acc = QueaElement::zero(&p0);
    for ((a, b), cf) in t.terms().iter() {
        let p = QueaElement::term(&p0, *a, C64::one()).mul(&QueaElement::term(&p0, *b, C64::one()))?;
        acc = acc.add(&p.scale(*cf))?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RttLevel {
    /// Contracted universal form with the R series cut at the given order.
    Abstract(u32),
    Defining,
}

/// Residual of the coloured RTT relation.
pub fn coloured_rtt(base: &ParamPoint, lambda: Colour, mu: Colour, nu: Colour, level: RttLevel) -> Result<f64> {
    match level {
        RttLevel::Abstract(n) => {
            let pn = base.push(nu);
            let mut worst = 0.0f64;
            for cl in labels(base.model(), 2) {
                let x = bar_big_x(&pn, cl)?;
                worst = worst.max(quea::almost_cocomm_residual(&x, lambda, mu, nu, n)?);
            }
            Ok(worst)
        }
        RttLevel::Defining => defining_rtt(base, lambda, mu, nu),
    }
}

/// 4×4 matrix with dual-algebra entries.
type DualMatrix = Vec<Vec<DualElement>>;

fn t_matrix(pt: &ParamPoint) -> [[DualElement; 2]; 2] {
    use GaussName::*;
    let e = |n| dualg::entry(pt, n);
    [[e(A), e(B)], [e(C), e(D)]]
}

fn sgn(e: u8) -> f64 {
    if e % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn scalar_times(r: &crate::grmat::GradedMatrix, m: &DualMatrix, left: bool, pt: &ParamPoint) -> Result<DualMatrix> {
    let mut out = vec![vec![DualElement::zero(pt); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = DualElement::zero(pt);
            for k in 0..4 {
                let (s, e) = if left { (r.get(i, k), &m[k][j]) } else { (r.get(k, j), &m[i][k]) };
                if !s.is_zero() {
                    acc = acc.add(&e.scale(s))?;
                }
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// R(T₁·ν T₂) − (T₂·ν T₁)R with graded-tensor entry signs.
fn defining_rtt(base: &ParamPoint, lambda: Colour, mu: Colour, nu: Colour) -> Result<f64> {
    let model = base.model();
    let g = defining_grades(model);
    let (pl, pm, pn) = (base.push(lambda), base.push(mu), base.push(nu));
    let (tl, tm) = (t_matrix(&pl), t_matrix(&pm));
    let mut t12: DualMatrix = vec![vec![DualElement::zero(&pn); 4]; 4];
    let mut t21: DualMatrix = vec![vec![DualElement::zero(&pn); 4]; 4];
    for row in 0..4 {
        for col in 0..4 {
            let (i, j, k, l) = (row / 2, row % 2, col / 2, col % 2);
            let s = c(sgn(g[k] * (g[j] + g[l])));
            t12[row][col] = dualg::mult_col(&tl[i][k], &tm[j][l], lambda, mu, nu)?.scale(s);
            let swap = c(sgn((g[i] + g[k]) * (g[j] + g[l])));
            t21[row][col] = dualg::mult_col(&tm[j][l], &tl[i][k], mu, lambda, nu)?.scale(s * swap);
        }
    }
    let r = coloured_r_matrix(model, base, lambda, mu)?;
    let lhs = scalar_times(&r, &t12, true, &pn)?;
    let rhs = scalar_times(&r, &t21, false, &pn)?;
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max(lhs[i][j].sub(&rhs[i][j])?.max_abs());
        }
    }
    Ok(worst)
}

/// Readable name of a probe word, for reports.
pub fn probe_name(w: &[(GaussName, Rat)]) -> String {
    word_label(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    const TOL: f64 = 1e-9;

    fn pt(model: Model) -> ParamPoint {
        ParamPoint::new(model, C64::new(0.23, 0.41), C64::new(-0.31, 0.27))
    }

    #[test]
    fn generator_pairings() {
        for model in [Model::Gl2, Model::Gl11] {
            let p = pt(model);
            let one = pair(&DualElement::one(&p), &QueaElement::one(&p)).unwrap();
            assert!((one - C64::one()).norm() < TOL);
            let g = pair(&DualElement::gamma(&p), &QueaElement::jm(&p)).unwrap();
            assert!((g - C64::one()).norm() < TOL);
            let b = pair(&DualElement::beta(&p), &QueaElement::jp(&p)).unwrap();
            assert!((b - C64::one()).norm() < TOL);
            let off = pair(&DualElement::beta(&p), &QueaElement::jm(&p)).unwrap();
            assert!(off.norm() < TOL);
        }
        let p = pt(Model::Gl2);
        let g2 = pair(&DualElement::gamma(&p).pow(2).unwrap(), &QueaElement::jm(&p).pow(2).unwrap()).unwrap();
        let q = p.big_q();
        assert!((g2 - (C64::one() + q.powi(-2))).norm() < TOL, "{g2}");
    }

    #[test]
    fn cartan_closed_form_matches_series() {
        let u0 = C64::new(0.3, -0.2);
        for j in 0..4 {
            for k in 0..4 {
                for u in [rat(0, 1), rat(1, 2), rat(-3, 2), rat(2, 1)] {
                    let cf = cartan_pair(j, u, k, u0);
                    let sr = cartan_pair_series(j, u, k, u0, 60);
                    assert!((cf - sr).norm() < 1e-12, "j={j} k={k} u={u}: {cf} vs {sr}");
                }
            }
        }
    }

    #[test]
    fn pairing_rejects_mismatched_points() {
        let p = pt(Model::Gl2);
        let r = pair(&DualElement::one(&p), &QueaElement::one(&p.push(Colour::int(2))));
        assert!(matches!(r, Err(Error::PointMismatch)));
    }

    #[test]
    fn barred_bases_are_dual() {
        for model in [Model::Gl2, Model::Gl11] {
            let p = pt(model);
            let ls = labels(model, 3);
            for a in &ls {
                for b in &ls {
                    let v = pair(&bar_x(&p, *a), &bar_big_x(&p, *b).unwrap()).unwrap();
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((v - c(want)).norm() < TOL, "{model} {a} {b}: {v}");
                }
            }
        }
    }

    #[test]
    fn counit_examples() {
        for model in [Model::Gl2, Model::Gl11] {
            let p = pt(model);
            assert!(counit_dual(&DualElement::beta(&p)).norm() < TOL);
            assert!((counit_dual(&dualg::entry(&p, GaussName::A)) - C64::one()).norm() < TOL);
            assert!((counit_dual(&dualg::entry(&p, GaussName::Det)) - C64::one()).norm() < TOL);
        }
    }

    #[test]
    fn truncated_coproduct_of_det_is_group_like() {
        for model in [Model::Gl2, Model::Gl11] {
            let p = pt(model);
            let det = dualg::entry(&p, GaussName::Det);
            let d = dual_coproduct_truncated(&det, 3).unwrap();
            let dd = DualTensor::pure(&det, &det);
            for a in labels(model, 3) {
                for b in labels(model, 3) {
                    let want = pair_tensor(&dd, &QueaTensor::pure(&bar_big_x(&p, a).unwrap(), &bar_big_x(&p, b).unwrap())).unwrap();
                    let got = d.terms().get(&(a.dual_term(), b.dual_term()));
                    assert!((want - got).norm() < TOL, "{model} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn truncated_coproduct_matches_closed_form() {
        use GaussName::*;
        for model in [Model::Gl2, Model::Gl11] {
            let p = pt(model);
            for name in [A, B, C, D] {
                let x = dualg::entry(&p, name);
                let d = dual_coproduct_truncated(&x, 3).unwrap();
                let closed = dualg::coproduct_entry(&p, name, Rat::one()).unwrap();
                for a in labels(model, 3) {
                    for b in labels(model, 3) {
                        let xa = bar_big_x(&p, a).unwrap();
                        let xb = bar_big_x(&p, b).unwrap();
                        let want = pair_tensor(&closed, &QueaTensor::pure(&xa, &xb)).unwrap();
                        let got = d.terms().get(&(a.dual_term(), b.dual_term()));
                        assert!((want - got).norm() < TOL, "{model} {name} {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn summed_and_factored_t_agree() {
        for model in [Model::Gl2, Model::Gl11] {
            let p = pt(model);
            for n in [4, 5] {
                let s = universal_t(&p, n, TForm::Summed).unwrap();
                let f = universal_t(&p, n, TForm::Factored).unwrap();
                assert!(s.max_diff(&f) < 1e-12, "{model} N={n}: {:e}", s.max_diff(&f));
            }
        }
    }

    #[test]
    fn gl11_t_at_first_order() {
        let p = pt(Model::Gl11);
        let t = universal_t(&p, 1, TForm::Factored).unwrap();
        let one = c(1.0);
        let check = |x: DualTerm, u: QueaTerm| assert!((t.coeff(&x, &u) - one).norm() < TOL, "{x} {u}");
        check(DualTerm::ONE, QueaTerm::ONE);
        check(DualTerm::basis(1, 0, 0, 0), QueaTerm::basis(1, 0, 0, 0));
        check(DualTerm::basis(0, 1, 0, 0), QueaTerm::basis(0, 1, 0, 0));
        check(DualTerm::basis(0, 0, 1, 0), QueaTerm::basis(0, 0, 1, 0));
        check(DualTerm::basis(0, 0, 0, 1), QueaTerm::basis(0, 0, 0, 1));
        assert_eq!(t.terms().len(), 5);
    }

    #[test]
    fn dot_of_units() {
        let p = pt(Model::Gl2);
        let one = MixedTensor::one(p, p, 3);
        let d = dot_products(&one, &one, DotKind::Dot).unwrap();
        let want = LinComb::single((Leg::Dual(DualTerm::ONE), Leg::Dual(DualTerm::ONE), Leg::Quea(QueaTerm::ONE)), C64::one());
        assert!(d.terms.max_diff(&want) < TOL);
    }

    /// Pairs the quantum-algebra leg of a G⊗G⊗U tensor with x̄^C.
    fn contract_last(t: &ThreeLeg, cl: Label) -> LinComb<(DualTerm, DualTerm)> {
        let mut out = LinComb::new();
        for ((l0, l1, l2), cf) in t.terms.iter() {
            if let (Leg::Dual(x), Leg::Dual(y), Leg::Quea(u)) = (l0, l1, l2) {
                let s = pair_terms(&t.pts[2], &cl.dual_term(), u).unwrap();
                if !s.is_zero() {
                    out.add_term((*x, *y), cf * s);
                }
            }
        }
        out.pruned()
    }

    #[test]
    fn dot_product_is_first_leg_coproduct() {
        for (model, n) in [(Model::Gl2, 3), (Model::Gl11, 4)] {
            let p = pt(model);
            let t = universal_t(&p, n, TForm::Summed).unwrap();
            let lhs = dot_products(&t, &t, DotKind::Dot).unwrap();
            let rhs = coproduct_first_leg(&t, n).unwrap();
            for cl in labels(model, n) {
                let (x, y) = (contract_last(&lhs, cl), contract_last(&rhs, cl));
                assert!(x.max_diff(&y) < TOL, "{model} {cl}: {:e}", x.max_diff(&y));
            }
        }
    }

    /// Pairs the two quantum-algebra legs with x̄^A ⊗ x̄^B.
    fn contract(t: &ThreeLeg, a: Label, b: Label) -> LinComb<DualTerm> {
        let mut out = LinComb::new();
        for ((l0, l1, l2), cf) in t.terms.iter() {
            if let (Leg::Dual(x), Leg::Quea(u), Leg::Quea(v)) = (l0, l1, l2) {
                let s = pair_terms(&t.pts[1], &a.dual_term(), u).unwrap() * pair_terms(&t.pts[2], &b.dual_term(), v).unwrap();
                if !s.is_zero() {
                    out.add_term(*x, cf * s);
                }
            }
        }
        out.pruned()
    }

    #[test]
    fn ddot_product_is_second_leg_coproduct() {
        let (l, m, nu) = (Colour::int(2), Colour::frac(-1, 2), Colour::frac(3, 2));
        for (model, n) in [(Model::Gl2, 3), (Model::Gl11, 3)] {
            let base = pt(model);
            let tl = universal_t(&base.push(l), n, TForm::Summed).unwrap();
            let tm = universal_t(&base.push(m), n, TForm::Summed).unwrap();
            let tn = universal_t(&base.push(nu), n, TForm::Summed).unwrap();
            let lhs = dot_products(&tl, &tm, DotKind::Ddot { lambda: l, mu: m, nu }).unwrap();
            let rhs = coproduct_second_leg(&tn, l, m, nu).unwrap();
            for a in labels(model, n) {
                for b in labels(model, n) {
                    if a.degree() + b.degree() > n {
                        continue;
                    }
                    let keep = |t: &DualTerm| t.degree() <= n;
                    let x = contract(&lhs, a, b).filter(keep);
                    let y = contract(&rhs, a, b).filter(keep);
                    assert!(x.max_diff(&y) < TOL, "{model} {a} {b}: {:e}", x.max_diff(&y));
                }
            }
        }
    }

    #[test]
    fn prop_t_relations() {
        let f = Colour::frac;
        for model in [Model::Gl2, Model::Gl11] {
            let p = pt(model);
            for (l, m, n, mp) in [(f(1, 1), f(1, 1), f(1, 1), f(1, 1)), (f(2, 1), f(1, 3), f(3, 2), f(-1, 1))] {
                let r = prop_t_residuals(&p, l, m, n, mp, 3).unwrap();
                for (name, v) in PropTResiduals::NAMES.iter().zip(r.values) {
                    assert!(v < TOL, "{model} {name}: {v:e}");
                }
            }
        }
    }

    #[test]
    fn coloured_rtt_defining_and_abstract() {
        let f = Colour::frac;
        for model in [Model::Gl2, Model::Gl11] {
            let p = pt(model);
            for (l, m, n) in [(f(1, 1), f(1, 1), f(1, 1)), (f(2, 1), f(3, 1), f(1, 1)), (f(-1, 2), f(5, 3), f(2, 1))] {
                let d = coloured_rtt(&p, l, m, n, RttLevel::Defining).unwrap();
                assert!(d < TOL, "{model} defining: {d:e}");
                let a = coloured_rtt(&p, l, m, n, RttLevel::Abstract(5)).unwrap();
                assert!(a < TOL, "{model} abstract: {a:e}");
            }
        }
    }

    #[test]
    fn probe_names() {
        assert_eq!(probe_name(&[]), "1");
        assert_eq!(probe_name(&[(GaussName::A, Rat::one()), (GaussName::Det, rat(-1, 2))]), "a*det^-1/2");
    }
}
