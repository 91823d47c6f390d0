//! PBW normal forms for the hatted quantum algebras U_pq(gl(2)) and
//! U_pq(gl(1|1)), colour maps, coloured coalgebra maps and the universal R.
//!
//! A term is `Ĵ₋^m Ĵ₀^k1 Ẑ^k2 exp(eh·Ĵ₀ + ez·Ẑ) Ĵ₊^n`, with `eh`, `ez` exact
//! combinations of φ and θ relative to the element's own point.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grmat::{defining_grades, graded_tensor, GradedMatrix};
use crate::lincomb::{binomial, fmt_coeff, LinComb};
use crate::scalars::{
    c, ladder_norm, q_factorial, rat_f64, Algebra, Colour, ExactExponent, Model, ParamPoint, Rat,
    DEGENERATE_EPS, C64,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QueaTerm {
    pub m: u32,
    pub k1: u32,
    pub k2: u32,
    pub eh: ExactExponent,
    pub ez: ExactExponent,
    pub n: u32,
}

impl QueaTerm {
    pub const ONE: QueaTerm =
        QueaTerm { m: 0, k1: 0, k2: 0, eh: ExactExponent::ZERO, ez: ExactExponent::ZERO, n: 0 };

    pub fn basis(m: u32, k1: u32, k2: u32, n: u32) -> Self {
        QueaTerm { m, k1, k2, n, ..QueaTerm::ONE }
    }

    pub fn exp(eh: ExactExponent, ez: ExactExponent) -> Self {
        QueaTerm { eh, ez, ..QueaTerm::ONE }
    }

    pub fn grade(&self, model: Model) -> u8 {
        if model.graded() {
            ((self.m + self.n) % 2) as u8
        } else {
            0
        }
    }

    /// Eigenvalue of ad Ĵ₀.
    pub fn weight(&self) -> i64 {
        self.n as i64 - self.m as i64
    }

    pub fn degree(&self) -> u32 {
        self.m + self.k1 + self.k2 + self.n
    }

    fn cartan(&self) -> QueaTerm {
        QueaTerm { m: 0, n: 0, ..*self }
    }

    fn has_exp(&self) -> bool {
        !(self.eh.is_zero() && self.ez.is_zero())
    }
}

impl fmt::Display for QueaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let pw = |name: &str, k: u32| if k == 1 { name.to_string() } else { format!("{name}^{k}") };
        if self.m > 0 {
            parts.push(pw("Jm", self.m));
        }
        if self.k1 > 0 {
            parts.push(pw("J0", self.k1));
        }
        if self.k2 > 0 {
            parts.push(pw("Z", self.k2));
        }
        if self.has_exp() {
            parts.push(format!("exp([{}]J0+[{}]Z)", self.eh, self.ez));
        }
        if self.n > 0 {
            parts.push(pw("Jp", self.n));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

type Terms = LinComb<QueaTerm>;

#[derive(Debug, Clone, PartialEq)]
pub struct QueaElement {
    pt: ParamPoint,
    terms: Terms,
}

impl QueaElement {
    pub fn zero(pt: &ParamPoint) -> Self {
        QueaElement { pt: *pt, terms: Terms::new() }
    }

    pub fn from_terms(pt: &ParamPoint, terms: LinComb<QueaTerm>) -> Self {
        let model = pt.model();
        let terms = terms.filter(|t| !model.graded() || (t.m <= 1 && t.n <= 1));
        QueaElement { pt: *pt, terms }
    }

    pub fn term(pt: &ParamPoint, t: QueaTerm, coeff: C64) -> Self {
        QueaElement::from_terms(pt, Terms::single(t, coeff))
    }

    pub fn scalar(pt: &ParamPoint, s: C64) -> Self {
        QueaElement::term(pt, QueaTerm::ONE, s)
    }

    pub fn one(pt: &ParamPoint) -> Self {
        QueaElement::scalar(pt, C64::one())
    }

    pub fn j0(pt: &ParamPoint) -> Self {
        QueaElement::term(pt, QueaTerm::basis(0, 1, 0, 0), C64::one())
    }

    pub fn z(pt: &ParamPoint) -> Self {
        QueaElement::term(pt, QueaTerm::basis(0, 0, 1, 0), C64::one())
    }

    pub fn jp(pt: &ParamPoint) -> Self {
        QueaElement::term(pt, QueaTerm::basis(0, 0, 0, 1), C64::one())
    }

    pub fn jm(pt: &ParamPoint) -> Self {
        QueaElement::term(pt, QueaTerm::basis(1, 0, 0, 0), C64::one())
    }

    /// exp(eh·Ĵ₀ + ez·Ẑ).
    pub fn cartan_exp(pt: &ParamPoint, eh: ExactExponent, ez: ExactExponent) -> Self {
        QueaElement::term(pt, QueaTerm::exp(eh, ez), C64::one())
    }

    pub fn model(&self) -> Model {
        self.pt.model()
    }

    pub fn point(&self) -> &ParamPoint {
        &self.pt
    }

    pub fn terms(&self) -> &LinComb<QueaTerm> {
        &self.terms
    }

    pub fn coeff(&self, t: &QueaTerm) -> C64 {
        self.terms.get(t)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.max_abs()
    }

    /// Largest ladder count m + n.
    pub fn ladder_degree(&self) -> u32 {
        self.terms.iter().map(|(t, _)| t.m + t.n).max().unwrap_or(0)
    }

    fn check(&self, o: &QueaElement) -> Result<()> {
        if self.model() != o.model() {
            return Err(Error::ModelMismatch(self.model(), o.model()));
        }
        if self.pt != o.pt {
            return Err(Error::PointMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &QueaElement) -> Result<QueaElement> {
        self.check(o)?;
        let mut t = self.terms.clone();
        t.add_scaled(&o.terms, C64::one());
        Ok(QueaElement { pt: self.pt, terms: t.pruned() })
    }

    pub fn sub(&self, o: &QueaElement) -> Result<QueaElement> {
        self.add(&o.scale(c(-1.0)))
    }

    pub fn scale(&self, s: C64) -> QueaElement {
        QueaElement { pt: self.pt, terms: self.terms.scaled(s) }
    }

    pub fn mul(&self, o: &QueaElement) -> Result<QueaElement> {
        self.check(o)?;
        let k = commutator(&self.pt)?;
        let mut acc = Terms::new();
        let mut raised: HashMap<u32, Terms> = HashMap::new();
        raised.insert(0, o.terms.clone());
        for (t, coeff) in self.terms.iter() {
            for j in 1..=t.n {
                if !raised.contains_key(&j) {
                    let prev = &raised[&(j - 1)];
                    let next = lmul_jp(&self.pt, &k, prev);
                    raised.insert(j, next);
                }
            }
            let mut r = lmul_cartan(&self.pt, &t.cartan(), &raised[&t.n]);
            for _ in 0..t.m {
                r = lmul_jm(&self.pt, &r);
            }
            acc.add_scaled(&r, *coeff);
        }
        Ok(QueaElement { pt: self.pt, terms: acc.pruned() })
    }

    pub fn pow(&self, e: u32) -> Result<QueaElement> {
        let mut acc = QueaElement::one(&self.pt);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Keeps only terms passing `keep`.
    pub fn restrict(&self, keep: impl Fn(&QueaTerm) -> bool) -> QueaElement {
        QueaElement { pt: self.pt, terms: self.terms.filter(keep) }
    }
}

impl Algebra for QueaElement {
    fn one_like(&self) -> Self {
        QueaElement::one(&self.pt)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        QueaElement::mul(self, other)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        QueaElement::add(self, other)
    }
    fn scale(&self, s: C64) -> Self {
        QueaElement::scale(self, s)
    }
}

impl fmt::Display for QueaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(t, c)| format!("{}*{}", fmt_coeff(*c), t)).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `C(Ĵ₀ + s)` for a Cartan term C, expanded in normal form.
fn shift_cartan(pt: &ParamPoint, cart: &QueaTerm, s: i64) -> Terms {
    let mut out = Terms::new();
    let scal = if s == 0 { C64::one() } else { (cart.eh.value(pt) * s as f64).exp() };
    for j in 0..=cart.k1 {
        let coef = binomial(cart.k1, j) * (s as f64).powi((cart.k1 - j) as i32);
        if coef == 0.0 {
            continue;
        }
        out.add_term(QueaTerm { k1: j, ..*cart }, scal * coef);
    }
    out
}

fn lmul_cartan(pt: &ParamPoint, cart: &QueaTerm, v: &Terms) -> Terms {
    let mut out = Terms::new();
    for (t, coeff) in v.iter() {
        for (sh, sc) in shift_cartan(pt, cart, -(t.m as i64)).iter() {
            let nt = QueaTerm {
                m: t.m,
                k1: t.k1 + sh.k1,
                k2: t.k2 + sh.k2,
                eh: t.eh + sh.eh,
                ez: t.ez + sh.ez,
                n: t.n,
            };
            out.add_term(nt, coeff * sc);
        }
    }
    out
}

fn lmul_jm(pt: &ParamPoint, v: &Terms) -> Terms {
    let graded = pt.model().graded();
    let mut out = Terms::new();
    for (t, coeff) in v.iter() {
        if graded && t.m >= 1 {
            continue;
        }
        out.add_term(QueaTerm { m: t.m + 1, ..*t }, *coeff);
    }
    out
}

/// Cartan element K with Ĵ₊Ĵ₋ = s·Ĵ₋Ĵ₊ + K (s = +1 for gl(2), −1 for gl(1|1)).
fn commutator(pt: &ParamPoint) -> Result<Terms> {
    let mut k = Terms::new();
    match pt.model() {
        Model::Gl2 => {
            let den = pt.big_q() - pt.big_q().inv();
            if den.norm() < DEGENERATE_EPS {
                return Err(Error::DegenerateParameter("Q - 1/Q".into()));
            }
            let a = pt.big_p().inv() / den;
            k.add_term(QueaTerm::exp(ExactExponent::ints(2, 0), ExactExponent::ints(0, 2)), a);
            k.add_term(QueaTerm::exp(ExactExponent::ints(-2, 0), ExactExponent::ints(0, 2)), -a);
        }
        Model::Gl11 => {
            let den = pt.p() - pt.q().inv();
            if den.norm() < DEGENERATE_EPS {
                return Err(Error::DegenerateParameter("p - 1/q".into()));
            }
            k.add_term(QueaTerm::exp(ExactExponent::ZERO, ExactExponent::ints(2, 2)), den.inv());
            k.add_term(QueaTerm::exp(ExactExponent::ZERO, ExactExponent::ints(-2, 2)), -den.inv());
        }
    }
    Ok(k)
}

fn lmul_jp(pt: &ParamPoint, k: &Terms, v: &Terms) -> Terms {
    let mut out = Terms::new();
    for (t, coeff) in v.iter() {
        out.add_scaled(&jp_on_term(pt, k, t), *coeff);
    }
    out
}

fn jp_on_term(pt: &ParamPoint, k: &Terms, t: &QueaTerm) -> Terms {
    let graded = pt.model().graded();
    if t.m == 0 {
        if graded && t.n >= 1 {
            return Terms::new();
        }
        return shift_cartan(pt, &t.cartan(), -1).map_keys(|s| QueaTerm { n: t.n + 1, ..*s });
    }
    let lower = QueaTerm { m: t.m - 1, ..*t };
    let sign = if graded { -1.0 } else { 1.0 };
    let mut out = lmul_jm(pt, &jp_on_term(pt, k, &lower)).scaled(c(sign));
    let single = Terms::single(lower, C64::one());
    for (kt, kc) in k.iter() {
        out.add_scaled(&lmul_cartan(pt, kt, &single), *kc);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Fwd,
    Inv,
}

/// Coefficient picked up by each ladder generator under σ^ν from `src`.
fn ladder_factor(src: &ParamPoint, nu: Colour) -> Result<C64> {
    match src.model() {
        Model::Gl2 => Ok((src.theta() * ((nu.to_f64() - 1.0) / 2.0)).exp()),
        Model::Gl11 => ladder_norm(nu, Colour::ONE, src),
    }
}

fn sigma_exponents(model: Model, t: &QueaTerm, nu: Colour) -> (ExactExponent, ExactExponent) {
    let r = nu.value();
    match model {
        Model::Gl2 => (ExactExponent::new(t.eh.cq, t.eh.cp / r), ExactExponent::new(t.ez.cq * r, t.ez.cp)),
        Model::Gl11 => (ExactExponent::new(t.eh.cq / r, t.eh.cp / r), t.ez),
    }
}

/// σ^ν: Ĵ₀ fixed, Ẑ ↦ νẐ, ladders rescaled; the result lives at the pushed point.
pub fn sigma(u: &QueaElement, nu: Colour, dir: Direction) -> Result<QueaElement> {
    let nu = match dir {
        Direction::Fwd => nu,
        Direction::Inv => nu.inv(),
    };
    let model = u.model();
    let lf = ladder_factor(&u.pt, nu)?;
    let nf = nu.to_f64();
    let mut out = Terms::new();
    for (t, coeff) in u.terms.iter() {
        let (eh, ez) = sigma_exponents(model, t, nu);
        let s = lf.powu(t.m + t.n) * nf.powi(t.k2 as i32);
        out.add_term(QueaTerm { eh, ez, ..*t }, coeff * s);
    }
    Ok(QueaElement { pt: u.pt.push(nu), terms: out })
}

/// Bilinear factor exp(c00 Ĵ₀⊗Ĵ₀ + c0z Ĵ₀⊗Ẑ + cz0 Ẑ⊗Ĵ₀ + czz Ẑ⊗Ẑ), exponents
/// relative to the colour-one point of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bilinear {
    pub c00: ExactExponent,
    pub c0z: ExactExponent,
    pub cz0: ExactExponent,
    pub czz: ExactExponent,
}

impl Bilinear {
    pub const ZERO: Bilinear = Bilinear {
        c00: ExactExponent::ZERO,
        c0z: ExactExponent::ZERO,
        cz0: ExactExponent::ZERO,
        czz: ExactExponent::ZERO,
    };

    fn add(self, o: Bilinear) -> Bilinear {
        Bilinear { c00: self.c00 + o.c00, c0z: self.c0z + o.c0z, cz0: self.cz0 + o.cz0, czz: self.czz + o.czz }
    }

    fn swapped(self) -> Bilinear {
        Bilinear { c0z: self.cz0, cz0: self.c0z, ..self }
    }

    pub fn is_zero(&self) -> bool {
        *self == Bilinear::ZERO
    }
}

type TensorKey = (QueaTerm, QueaTerm);

/// Element of U⊗U kept as (Σ terms)·B with the bilinear factor on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct QueaTensor {
    pts: [ParamPoint; 2],
    terms: LinComb<TensorKey>,
    bilinear: Bilinear,
}

fn sgn(e: u8) -> f64 {
    if e % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl QueaTensor {
    pub fn zero(pts: [ParamPoint; 2]) -> Self {
        QueaTensor { pts, terms: LinComb::new(), bilinear: Bilinear::ZERO }
    }

    pub fn from_terms(pts: [ParamPoint; 2], terms: LinComb<TensorKey>) -> Self {
        QueaTensor { pts, terms, bilinear: Bilinear::ZERO }
    }

    pub fn pure(u: &QueaElement, v: &QueaElement) -> Self {
        let mut terms = LinComb::new();
        for (a, ca) in u.terms.iter() {
            for (b, cb) in v.terms.iter() {
                terms.add_term((*a, *b), ca * cb);
            }
        }
        QueaTensor { pts: [u.pt, v.pt], terms, bilinear: Bilinear::ZERO }
    }

    pub fn bilinear_only(pts: [ParamPoint; 2], b: Bilinear) -> Self {
        QueaTensor { pts, terms: LinComb::single((QueaTerm::ONE, QueaTerm::ONE), C64::one()), bilinear: b }
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

    pub fn bilinear(&self) -> Bilinear {
        self.bilinear
    }

    pub fn coeff(&self, a: &QueaTerm, b: &QueaTerm) -> C64 {
        self.terms.get(&(*a, *b))
    }

    fn check(&self, o: &QueaTensor) -> Result<()> {
        if self.model() != o.model() {
            return Err(Error::ModelMismatch(self.model(), o.model()));
        }
        if self.pts != o.pts {
            return Err(Error::PointMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &QueaTensor) -> Result<QueaTensor> {
        self.check(o)?;
        if self.bilinear != o.bilinear {
            return Err(Error::PointMismatch);
        }
        let mut t = self.terms.clone();
        t.add_scaled(&o.terms, C64::one());
        Ok(QueaTensor { pts: self.pts, terms: t.pruned(), bilinear: self.bilinear })
    }

    pub fn sub(&self, o: &QueaTensor) -> Result<QueaTensor> {
        self.add(&o.scale(c(-1.0)))
    }

    pub fn scale(&self, s: C64) -> QueaTensor {
        QueaTensor { terms: self.terms.scaled(s), ..self.clone() }
    }

    pub fn restrict(&self, keep: impl Fn(&QueaTerm, &QueaTerm) -> bool) -> QueaTensor {
        QueaTensor { terms: self.terms.filter(|(a, b)| keep(a, b)), ..self.clone() }
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.max_abs()
    }

    /// Moves `self.bilinear` to the right of a single term, returning the
    /// rewritten term and scalar.
    fn pass_bilinear(&self, key: &TensorKey) -> (TensorKey, C64) {
        let b = self.bilinear;
        if b.is_zero() {
            return (*key, C64::one());
        }
        let model = self.model();
        let base = self.pts[0].base();
        let (t1, t2) = key;
        let (w1, w2) = (t1.weight(), t2.weight());
        let wr = |x: i64| Rat::from_integer(x);
        let mut s = (b.c00.value(&base) * (w1 * w2) as f64).exp();
        let a1 = b.c00.scale(wr(w2)).transport(model, self.pts[0].colour());
        let z1 = b.cz0.scale(wr(w2)).transport(model, self.pts[0].colour());
        let a2 = b.c00.scale(wr(w1)).transport(model, self.pts[1].colour());
        let z2 = b.c0z.scale(wr(w1)).transport(model, self.pts[1].colour());
        s *= (-(a1.value(&self.pts[0])) * t1.n as f64).exp();
        s *= (-(a2.value(&self.pts[1])) * t2.n as f64).exp();
        let n1 = QueaTerm { eh: t1.eh + a1, ez: t1.ez + z1, ..*t1 };
        let n2 = QueaTerm { eh: t2.eh + a2, ez: t2.ez + z2, ..*t2 };
        ((n1, n2), s)
    }

    pub fn mul(&self, o: &QueaTensor) -> Result<QueaTensor> {
        self.check(o)?;
        let model = self.model();
        let mut moved = LinComb::new();
        for (k, cf) in o.terms.iter() {
            let (nk, s) = self.pass_bilinear(k);
            moved.add_term(nk, cf * s);
        }
        let mut cache1: HashMap<(QueaTerm, QueaTerm), QueaElement> = HashMap::new();
        let mut cache2: HashMap<(QueaTerm, QueaTerm), QueaElement> = HashMap::new();
        let prod = |cache: &mut HashMap<(QueaTerm, QueaTerm), QueaElement>, pt: &ParamPoint, a: &QueaTerm, b: &QueaTerm| {
            if let Some(r) = cache.get(&(*a, *b)) {
                return Ok::<QueaElement, Error>(r.clone());
            }
            let r = QueaElement::term(pt, *a, C64::one()).mul(&QueaElement::term(pt, *b, C64::one()))?;
            cache.insert((*a, *b), r.clone());
            Ok(r)
        };
        let mut acc = LinComb::new();
        for ((s1, s2), cs) in self.terms.iter() {
            for ((t1, t2), ct) in moved.iter() {
                let sign = sgn(s2.grade(model) * t1.grade(model));
                let p1 = prod(&mut cache1, &self.pts[0], s1, t1)?;
                if p1.is_zero() {
                    continue;
                }
                let p2 = prod(&mut cache2, &self.pts[1], s2, t2)?;
                let f = cs * ct * sign;
                for (a, ca) in p1.terms.iter() {
                    for (b, cb) in p2.terms.iter() {
                        acc.add_term((*a, *b), f * ca * cb);
                    }
                }
            }
        }
        Ok(QueaTensor { pts: self.pts, terms: acc.pruned(), bilinear: self.bilinear.add(o.bilinear) })
    }

    /// Graded flip τ(X⊗Y) = (−1)^{|X||Y|} Y⊗X.
    pub fn twist(&self) -> QueaTensor {
        let model = self.model();
        let mut terms = LinComb::new();
        for ((a, b), cf) in self.terms.iter() {
            terms.add_term((*b, *a), cf * sgn(a.grade(model) * b.grade(model)));
        }
        QueaTensor { pts: [self.pts[1], self.pts[0]], terms, bilinear: self.bilinear.swapped() }
    }

    /// Applies leg-wise linear maps given on single terms.
    pub fn map_legs(
        &self,
        pts: [ParamPoint; 2],
        f: impl Fn(&QueaTerm) -> Result<QueaElement>,
        g: impl Fn(&QueaTerm) -> Result<QueaElement>,
    ) -> Result<QueaTensor> {
        if !self.bilinear.is_zero() {
            return Err(Error::NotGaussMonomial("leg maps on a bilinear factor".into()));
        }
        let mut terms = LinComb::new();
        for ((a, b), cf) in self.terms.iter() {
            let (fa, gb) = (f(a)?, g(b)?);
            for (x, cx) in fa.terms.iter() {
                for (y, cy) in gb.terms.iter() {
                    terms.add_term((*x, *y), cf * cx * cy);
                }
            }
        }
        Ok(QueaTensor { pts, terms: terms.pruned(), bilinear: Bilinear::ZERO })
    }

    /// Image under the graded tensor square of the defining representation.
    pub fn defining_rep(&self) -> GradedMatrix {
        let g = defining_grades(self.model());
        let mut acc = GradedMatrix::zeros((0..4).map(|x| (g[x / 2] + g[x % 2]) % 2).collect());
        for ((a, b), cf) in self.terms.iter() {
            let da = term_rep(&self.pts[0], a);
            let db = term_rep(&self.pts[1], b);
            acc = acc.add(&graded_tensor(&da, &db).scale(*cf));
        }
        let base = self.pts[0].base();
        let bl = self.bilinear;
        let x0 = [0.5, -0.5];
        let d: Vec<C64> = (0..4)
            .map(|k| {
                let (i, j) = (k / 2, k % 2);
                let e = bl.c00.value(&base) * (x0[i] * x0[j])
                    + bl.c0z.value(&base) * (x0[i] * 0.5)
                    + bl.cz0.value(&base) * (0.5 * x0[j])
                    + bl.czz.value(&base) * 0.25;
                e.exp()
            })
            .collect();
        let diag = GradedMatrix::diag(acc.grades().to_vec(), &d);
        acc.matmul(&diag)
    }
}

impl fmt::Display for QueaTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().map(|((a, b), cf)| format!("{}*({} (x) {})", fmt_coeff(*cf), a, b)).collect();
        f.write_str(&parts.join(" + "))?;
        if !self.bilinear.is_zero() {
            let b = self.bilinear;
            write!(f, " * exp([{}]J0J0 + [{}]J0Z + [{}]ZJ0 + [{}]ZZ)", b.c00, b.c0z, b.cz0, b.czz)?;
        }
        Ok(())
    }
}

fn term_rep(pt: &ParamPoint, t: &QueaTerm) -> GradedMatrix {
    let g = defining_grades(pt.model());
    let f = |j: f64| {
        j.powi(t.k1 as i32) * 0.5f64.powi(t.k2 as i32) * (t.eh.value(pt) * j + t.ez.value(pt) * 0.5).exp()
    };
    let mut m = GradedMatrix::diag(g.clone(), &[f(0.5), f(-0.5)]);
    let mut lower = GradedMatrix::zeros(g.clone());
    lower.set(1, 0, C64::one());
    let mut upper = GradedMatrix::zeros(g);
    upper.set(0, 1, C64::one());
    for _ in 0..t.m {
        m = lower.matmul(&m);
    }
    for _ in 0..t.n {
        m = m.matmul(&upper);
    }
    m
}

/// D(Ĵ₀) = ½diag(1,−1), D(Ẑ) = ½I, D(Ĵ₊) = E₁₂, D(Ĵ₋) = E₂₁.
pub fn defining_rep(u: &QueaElement) -> GradedMatrix {
    let mut acc = GradedMatrix::zeros(defining_grades(u.model()));
    for (t, cf) in u.terms.iter() {
        acc = acc.add(&term_rep(&u.pt, t).scale(*cf));
    }
    acc
}

fn e(cq: i64, cp: i64) -> ExactExponent {
    ExactExponent::ints(cq, cp)
}

/// Standard coproduct images of Ĵ₋ and Ĵ₊.
fn ladder_coproducts(pt: &ParamPoint) -> (QueaTensor, QueaTensor) {
    let one = QueaElement::one(pt);
    let (km, kp) = match pt.model() {
        Model::Gl2 => (QueaTerm::exp(e(2, 0), e(0, 2)), QueaTerm::exp(e(-2, 0), e(0, 2))),
        Model::Gl11 => (QueaTerm::exp(ExactExponent::ZERO, e(-2, 2)), QueaTerm::exp(ExactExponent::ZERO, e(2, 2))),
    };
    let km = QueaElement::term(pt, km, C64::one());
    let kp = QueaElement::term(pt, kp, C64::one());
    let dm = QueaTensor::pure(&QueaElement::jm(pt), &one).add(&QueaTensor::pure(&km, &QueaElement::jm(pt)));
    let dp = QueaTensor::pure(&QueaElement::jp(pt), &kp).add(&QueaTensor::pure(&one, &QueaElement::jp(pt)));
    (dm.expect("same points"), dp.expect("same points"))
}

fn cartan_coproduct(pt: &ParamPoint, t: &QueaTerm) -> QueaTensor {
    let mut terms = LinComb::new();
    for a in 0..=t.k1 {
        for b in 0..=t.k2 {
            let l = QueaTerm { m: 0, n: 0, k1: a, k2: b, ..*t };
            let r = QueaTerm { m: 0, n: 0, k1: t.k1 - a, k2: t.k2 - b, ..*t };
            terms.add_term((l, r), c(binomial(t.k1, a) * binomial(t.k2, b)));
        }
    }
    QueaTensor::from_terms([*pt, *pt], terms)
}

/// Standard coproduct, extended multiplicatively.
pub fn coproduct(u: &QueaElement) -> Result<QueaTensor> {
    let pt = u.pt;
    let (dm, dp) = ladder_coproducts(&pt);
    let unit = QueaTensor::pure(&QueaElement::one(&pt), &QueaElement::one(&pt));
    let mut mpow = vec![unit.clone()];
    let mut ppow = vec![unit];
    let mut acc = QueaTensor::zero([pt, pt]);
    for (t, cf) in u.terms.iter() {
        while mpow.len() <= t.m as usize {
            let next = mpow.last().expect("nonempty").mul(&dm)?;
            mpow.push(next);
        }
        while ppow.len() <= t.n as usize {
            let next = ppow.last().expect("nonempty").mul(&dp)?;
            ppow.push(next);
        }
        let r = mpow[t.m as usize].mul(&cartan_coproduct(&pt, t))?.mul(&ppow[t.n as usize])?;
        acc = acc.add(&r.scale(*cf))?;
    }
    Ok(acc)
}

pub fn counit(u: &QueaElement) -> C64 {
    u.terms.iter().filter(|(t, _)| t.m == 0 && t.n == 0 && t.k1 == 0 && t.k2 == 0).map(|(_, c)| *c).sum()
}

/// Standard antipode, graded anti-multiplicative.
pub fn antipode(u: &QueaElement) -> Result<QueaElement> {
    let pt = u.pt;
    let (sp, sm) = match pt.model() {
        Model::Gl2 => (
            QueaElement::jp(&pt).mul(&QueaElement::cartan_exp(&pt, e(2, 0), e(0, -2)))?.scale(c(-1.0)),
            QueaElement::cartan_exp(&pt, e(-2, 0), e(0, -2)).mul(&QueaElement::jm(&pt))?.scale(c(-1.0)),
        ),
        Model::Gl11 => (
            QueaElement::cartan_exp(&pt, ExactExponent::ZERO, e(-2, -2)).mul(&QueaElement::jp(&pt))?.scale(c(-1.0)),
            QueaElement::cartan_exp(&pt, ExactExponent::ZERO, e(2, -2)).mul(&QueaElement::jm(&pt))?.scale(c(-1.0)),
        ),
    };
    let graded = pt.model().graded();
    let mut acc = QueaElement::zero(&pt);
    for (t, cf) in u.terms.iter() {
        let sc = QueaTerm { m: 0, n: 0, k1: t.k1, k2: t.k2, eh: -t.eh, ez: -t.ez };
        let sign = sgn((t.k1 + t.k2) as u8 % 2) * if graded && t.m == 1 && t.n == 1 { -1.0 } else { 1.0 };
        let r = sp.pow(t.n)?.mul(&QueaElement::term(&pt, sc, c(sign)))?.mul(&sm.pow(t.m)?)?;
        acc = acc.add(&r.scale(*cf))?;
    }
    Ok(acc)
}

/// Δ^{λμ}_ν = (σ^λ⊗σ^μ)∘Δ∘σ_ν; `u` lives at the ν-pushed point.
pub fn coproduct_col(u: &QueaElement, lambda: Colour, mu: Colour, nu: Colour) -> Result<QueaTensor> {
    let v = sigma(u, nu, Direction::Inv)?;
    let base = v.pt;
    let d = coproduct(&v)?;
    let pts = [base.push(lambda), base.push(mu)];
    d.map_legs(
        pts,
        |t| sigma(&QueaElement::term(&base, *t, C64::one()), lambda, Direction::Fwd),
        |t| sigma(&QueaElement::term(&base, *t, C64::one()), mu, Direction::Fwd),
    )
}

/// ε_ν = ε∘σ_ν; σ never changes the counit.
pub fn counit_col(u: &QueaElement, nu: Colour) -> Result<C64> {
    Ok(counit(&sigma(u, nu, Direction::Inv)?))
}

/// S^μ_ν = σ^μ∘S∘σ_ν.
pub fn antipode_col(u: &QueaElement, mu: Colour, nu: Colour) -> Result<QueaElement> {
    sigma(&antipode(&sigma(u, nu, Direction::Inv)?)?, mu, Direction::Fwd)
}

/// Coloured universal R at the family of `pt`, legs at the λ and μ pushes.
/// The gl(2) series is cut after `order` terms.
pub fn universal_r(pt: &ParamPoint, lambda: Colour, mu: Colour, order: u32) -> Result<QueaTensor> {
    let model = pt.model();
    let pts = [pt.push(lambda), pt.push(mu)];
    let back = pt.colour().inv();
    let (l, m) = (lambda.value(), mu.value());
    let to_base = |x: ExactExponent| x.transport(model, back);
    let mut series = LinComb::new();
    let bl = match model {
        Model::Gl2 => {
            let q = pt.big_q();
            for k in 0..=order {
                let kf = k as f64;
                let coef = (C64::one() - q * q).powu(k) / q_factorial(k, q)?
                    * q.powf(-kf * (kf + 1.0) / 2.0)
                    * (pt.theta() * (rat_f64(l + m) * kf / 2.0)).exp();
                series.add_term((QueaTerm::basis(0, 0, 0, k), QueaTerm::basis(k, 0, 0, 0)), coef);
            }
            Bilinear {
                c00: to_base(e(-2, 0)),
                c0z: to_base(ExactExponent::new(Rat::zero(), -m * 2)),
                cz0: to_base(ExactExponent::new(Rat::zero(), l * 2)),
                czz: ExactExponent::ZERO,
            }
        }
        Model::Gl11 => {
            let coef = ((crate::scalars::ell(l, pt)? + crate::scalars::ell(m, pt)?) * 0.5).exp();
            series.add_term((QueaTerm::ONE, QueaTerm::ONE), C64::one());
            series.add_term((QueaTerm::basis(0, 0, 0, 1), QueaTerm::basis(1, 0, 0, 0)), -coef);
            Bilinear {
                c00: ExactExponent::ZERO,
                c0z: to_base(ExactExponent::new(m * 2, -m * 2)),
                cz0: to_base(ExactExponent::new(l * 2, l * 2)),
                czz: ExactExponent::ZERO,
            }
        }
    };
    QueaTensor::bilinear_only(pts, bl).mul(&QueaTensor::from_terms(pts, series))
}

/// |ℛ·Δ^{λμ}_ν(x) − τ(Δ^{μλ}_ν(x))·ℛ| over the largest coefficient,
/// restricted for gl(2) to first-leg weights untouched by the cut series.
pub fn almost_cocomm_residual(x: &QueaElement, lambda: Colour, mu: Colour, nu: Colour, order: u32) -> Result<f64> {
    let base = x.pt.push(nu.inv());
    let r = universal_r(&base, lambda, mu, order)?;
    let lhs = r.mul(&coproduct_col(x, lambda, mu, nu)?)?;
    let rhs = coproduct_col(x, mu, lambda, nu)?.twist().mul(&r)?;
    if lhs.bilinear != rhs.bilinear {
        return Ok(f64::INFINITY);
    }
    let limit = order as i64 - x.ladder_degree() as i64;
    let keep = |a: &QueaTerm, _: &QueaTerm| x.model().graded() || a.weight() <= limit;
    let (l, r) = (lhs.restrict(keep), rhs.restrict(keep));
    // coefficients reach 1e11 for |Q| far from 1; report the relative error
    Ok(l.terms.max_diff(&r.terms) / 1f64.max(l.max_abs()).max(r.max_abs()))
}
