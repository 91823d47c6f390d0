//! Generalized Hopf axioms of the coloured dual, the antipode identities,
//! the fixed-colour Hopf structure, the colour group laws, and the duality
//! identities between the coloured maps of both sides.
//!
//! Dual elements are Gauss words; coproducts of non-words are tested through
//! Δ̃ ↔ m duality against barred basis elements. gl(2) antipodes are series
//! cut at `order`, and comparisons touching them keep ladder sectors below
//! `order` minus the ladder degree of the untruncated factors.

use num_traits::{One, Zero};

use crate::dualg::{self, DualElement, DualTensor, GaussName};
use crate::error::Result;
use crate::pairing::{bar_big_x, bar_x, labels, pair, pair_tensor, Label};
use crate::quea::{self, Direction, QueaElement, QueaTensor};
use crate::scalars::{Colour, Model, ParamPoint, Rat, C64};

pub type Word = Vec<(GaussName, Rat)>;

/// Named residuals, in a fixed order.
pub type Checks = Vec<(&'static str, f64)>;

/// Colours of the generalized axioms. x, y, z live at the α, β, γ pushes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiomColours {
    pub alpha: Colour,
    pub beta: Colour,
    pub gamma: Colour,
    pub lambda: Colour,
    pub mu: Colour,
    pub lambda_p: Colour,
    pub mu_p: Colour,
    pub nu: Colour,
}

impl AxiomColours {
    /// Spreads a sampled triple over all eight slots.
    pub fn from_triple(lambda: Colour, mu: Colour, nu: Colour) -> Self {
        AxiomColours {
            alpha: mu,
            beta: nu,
            gamma: lambda,
            lambda,
            mu,
            lambda_p: lambda.compose(nu),
            mu_p: mu.compose(nu),
            nu,
        }
    }

    pub fn uniform(nu: Colour) -> Self {
        AxiomColours { alpha: nu, beta: nu, gamma: nu, lambda: nu, mu: nu, lambda_p: nu, mu_p: nu, nu }
    }
}

pub fn word_grade(model: Model, w: &[(GaussName, Rat)]) -> u8 {
    if !model.graded() {
        return 0;
    }
    (w.iter().filter(|(n, _)| matches!(n, GaussName::B | GaussName::C)).count() % 2) as u8
}

fn label_grade(model: Model, a: &Label) -> u8 {
    if model.graded() {
        ((a.0[0] + a.0[3]) % 2) as u8
    } else {
        0
    }
}

fn sign(e: u8) -> C64 {
    C64::new(if e % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
}

/// ρ^to∘ρ_from.
fn rho_between(x: &DualElement, from: Colour, to: Colour) -> Result<DualElement> {
    dualg::rho(&dualg::rho(x, from, Direction::Inv)?, to, Direction::Fwd)
}

/// max|x − y| over max(1, max|x|, max|y|): products of high-colour pushes
/// reach 1e6 and carry roundoff in proportion.
fn scaled_diff(x: &DualElement, y: &DualElement) -> Result<f64> {
    Ok(x.sub(y)?.max_abs() / 1f64.max(x.max_abs()).max(y.max_abs()))
}

fn cut(x: &DualElement, l: u32) -> DualElement {
    x.restrict(|t| t.g <= l && t.b <= l)
}

fn safe(model: Model, order: u32, d: u32) -> u32 {
    if model.graded() {
        u32::MAX
    } else {
        order.saturating_sub(d)
    }
}

fn legs(t: &DualTensor) -> impl Iterator<Item = (DualElement, DualElement, C64)> + '_ {
    let [p0, p1] = *t.points();
    t.terms()
        .iter()
        .map(move |((a, b), cf)| (DualElement::term(&p0, *a, C64::one()), DualElement::term(&p1, *b, C64::one()), *cf))
}

fn tensor_ladder_degree(t: &DualTensor) -> u32 {
    t.terms().iter().map(|((a, b), _)| a.g.max(a.b).max(b.g).max(b.b)).max().unwrap_or(0)
}

/// Consecutive pairs and triples of a word list, cyclically.
fn pairs(words: &[Word]) -> Vec<(&Word, &Word)> {
    let n = words.len();
    (0..n).map(|i| (&words[i], &words[(i + 1) % n])).collect()
}

fn triples(words: &[Word]) -> Vec<(&Word, &Word, &Word)> {
    let n = words.len();
    (0..n).map(|i| (&words[i], &words[(i + 1) % n], &words[(i + 2) % n])).collect()
}

/// Label pairs (A, B) with deg A + deg B ≤ l.
fn label_pairs(model: Model, l: u32) -> Vec<(Label, Label)> {
    let ls = labels(model, l);
    let mut out = Vec::new();
    for a in &ls {
        for b in &ls {
            if a.degree() + b.degree() <= l {
                out.push((*a, *b));
            }
        }
    }
    out
}

/// Worst |⟨Δ̃z, X̄_A⊗X̄_B⟩ − ⟨t, X̄_A⊗X̄_B⟩| with the left side evaluated as
/// ⟨z, X̄_A X̄_B⟩ (or its graded flip when `flip`).
fn coproduct_vs(z: &DualElement, t: &DualTensor, l: u32, flip: bool) -> Result<f64> {
    let pt = *z.point();
    let model = pt.model();
    let [t0, t1] = *t.points();
    let mut worst = 0.0f64;
    for (a, b) in label_pairs(model, l) {
        let lhs = if flip {
            let s = sign(label_grade(model, &a) * label_grade(model, &b));
            pair(z, &bar_big_x(&pt, b)?.mul(&bar_big_x(&pt, a)?)?)? * s
        } else {
            pair(z, &bar_big_x(&pt, a)?.mul(&bar_big_x(&pt, b)?)?)?
        };
        let rhs = pair_tensor(t, &QueaTensor::pure(&bar_big_x(&t0, a)?, &bar_big_x(&t1, b)?))?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Associativity, unit and antipode axioms.
pub fn gen_alg(base: &ParamPoint, k: &AxiomColours, words: &[Word], order: u32) -> Result<Checks> {
    let model = base.model();
    let at = |c: Colour, w: &Word| dualg::word_element(&base.push(c), w);
    let mut assoc = 0.0f64;
    for (wx, wy, wz) in triples(words) {
        let (x, y, z) = (at(k.alpha, wx)?, at(k.beta, wy)?, at(k.gamma, wz)?);
        let xy = dualg::mult_col(&x, &y, k.alpha, k.beta, k.lambda)?;
        let lhs = dualg::mult_col(&xy, &rho_between(&z, k.gamma, k.mu)?, k.lambda, k.mu, k.nu)?;
        let yz = dualg::mult_col(&y, &z, k.beta, k.gamma, k.mu_p)?;
        let rhs = dualg::mult_col(&rho_between(&x, k.alpha, k.lambda_p)?, &yz, k.lambda_p, k.mu_p, k.nu)?;
        assoc = assoc.max(scaled_diff(&lhs, &rhs)?);
    }

    let mut unit = 0.0f64;
    for w in words {
        let x = at(k.alpha, w)?;
        let want = rho_between(&x, k.alpha, k.nu)?;
        let left = dualg::mult_col(&dualg::unit_col(base, k.lambda), &rho_between(&x, k.alpha, k.mu)?, k.lambda, k.mu, k.nu)?;
        let right =
            dualg::mult_col(&rho_between(&x, k.alpha, k.lambda_p)?, &dualg::unit_col(base, k.mu_p), k.lambda_p, k.mu_p, k.nu)?;
        unit = unit.max(left.sub(&want)?.max_abs()).max(right.sub(&want)?.max_abs());
    }

    let mut anti = 0.0f64;
    let pa = base.push(k.alpha);
    for w in words {
        let dx = dualg::coproduct_word(&pa, w)?;
        let want = dualg::unit_col(base, k.nu).scale(dualg::counit_word(w)?);
        let mut left = DualElement::zero(&base.push(k.nu));
        let mut right = left.clone();
        for (x1, x2, cf) in legs(&dx) {
            let s1 = dualg::antipode_col(&x1, k.alpha, k.lambda, order)?;
            left = left.add(&dualg::mult_col(&s1, &rho_between(&x2, k.alpha, k.mu)?, k.lambda, k.mu, k.nu)?.scale(cf))?;
            let s2 = dualg::antipode_col(&x2, k.alpha, k.mu_p, order)?;
            right = right
                .add(&dualg::mult_col(&rho_between(&x1, k.alpha, k.lambda_p)?, &s2, k.lambda_p, k.mu_p, k.nu)?.scale(cf))?;
        }
        let l = safe(model, order, tensor_ladder_degree(&dx));
        for side in [left, right] {
            anti = anti.max(cut(&side.sub(&want)?, l).max_abs());
        }
    }
    Ok(vec![("gen-assoc", assoc), ("gen-unit", unit), ("gen-antipode", anti)])
}

/// Bialgebra axioms; coproducts of products are contracted at degree ≤ `l`.
pub fn gen_bialg(base: &ParamPoint, k: &AxiomColours, words: &[Word], l: u32) -> Result<Checks> {
    let (pl, pm, pn) = (base.push(k.lambda), base.push(k.mu), base.push(k.nu));
    let mut cop = 0.0f64;
    let mut cou = 0.0f64;
    for (wx, wy) in pairs(words) {
        let x = dualg::word_element(&pl, wx)?;
        let y = dualg::word_element(&pm, wy)?;
        let z = dualg::mult_col(&x, &y, k.lambda, k.mu, k.nu)?;
        let (dx, dy) = (dualg::coproduct_word(&pl, wx)?, dualg::coproduct_word(&pm, wy)?);
        // (m̃⊗m̃)(id⊗τ⊗id)(Δ̃x⊗Δ̃y)
        let mut rhs = DualTensor::zero([pn, pn]);
        for (x1, x2, c1) in legs(&dx) {
            for (y1, y2, c2) in legs(&dy) {
                let s = sign(dualg_grade(&x2) * dualg_grade(&y1));
                let l1 = dualg::mult_col(&x1, &y1, k.lambda, k.mu, k.nu)?;
                let l2 = dualg::mult_col(&x2, &y2, k.lambda, k.mu, k.nu)?;
                rhs = rhs.add(&DualTensor::pure(&l1, &l2).scale(c1 * c2 * s))?;
            }
        }
        cop = cop.max(coproduct_vs(&z, &rhs, l, false)?);
        let eps = dualg::counit(&x) * dualg::counit(&y);
        cou = cou.max((dualg::counit(&z) - eps).norm());
    }
    let one = dualg::unit_col(base, k.nu);
    let cu = dualg::coproduct_word(&pn, &[])?.max_diff(&DualTensor::pure(&one, &one));
    let eu = (dualg::counit(&one) - C64::one()).norm();
    Ok(vec![("gen-coproduct-mult", cop), ("gen-coproduct-unit", cu), ("gen-counit-mult", cou), ("gen-counit-unit", eu)])
}

/// Grade of a homogeneous dual element (its first term).
fn dualg_grade(x: &DualElement) -> u8 {
    let model = x.model();
    x.terms().iter().next().map(|(t, _)| t.grade(model)).unwrap_or(0)
}

/// Anti-multiplicativity, unit, anti-comultiplicativity and counit of S̃.
pub fn antipode_props(base: &ParamPoint, k: &AxiomColours, words: &[Word], order: u32, l: u32) -> Result<Checks> {
    let model = base.model();
    let mut mult = 0.0f64;
    for (wx, wy) in pairs(words) {
        let x = dualg::word_element(&base.push(k.alpha), wx)?;
        let y = dualg::word_element(&base.push(k.beta), wy)?;
        let lhs = dualg::antipode_col(&dualg::mult_col(&x, &y, k.alpha, k.beta, k.gamma)?, k.gamma, k.nu, order)?;
        let sx = dualg::antipode_col(&x, k.alpha, k.lambda, order)?;
        let sy = dualg::antipode_col(&y, k.beta, k.mu, order)?;
        let s = sign(word_grade(model, wx) * word_grade(model, wy));
        let rhs = dualg::mult_col(&sy, &sx, k.mu, k.lambda, k.nu)?.scale(s);
        let d = x.ladder_degree().max(y.ladder_degree());
        mult = mult.max(cut(&lhs.sub(&rhs)?, safe(model, order, 2 * d)).max_abs());
    }

    let su = dualg::antipode_col(&dualg::unit_col(base, k.mu), k.mu, k.nu, order)?;
    let unit = su.sub(&dualg::unit_col(base, k.nu))?.max_abs();

    let (pm, pn) = (base.push(k.mu), base.push(k.nu));
    let mut cop = 0.0f64;
    let mut cou = 0.0f64;
    for w in words {
        let x = dualg::word_element(&pm, w)?;
        let sx = dualg::antipode_col(&x, k.mu, k.nu, order)?;
        let dx = dualg::coproduct_word(&pm, w)?;
        let lhs = dx.map_legs(
            [pn, pn],
            |e| dualg::antipode_col(e, k.mu, k.nu, order),
            |e| dualg::antipode_col(e, k.mu, k.nu, order),
        )?;
        cop = cop.max(coproduct_vs(&sx, &lhs, l, true)?);
        cou = cou.max((dualg::counit(&sx) - dualg::counit(&x)).norm());
    }
    Ok(vec![("antipode-mult", mult), ("antipode-unit", unit), ("antipode-coproduct", cop), ("antipode-counit", cou)])
}

/// Hopf axioms of H*_q with m̃^ν_{q_ν,ν,ν}, ι̃^ν_{q_ν}, Δ̃_q, ε̃_q and
/// S̃^ν_{q_ν,ν}, and its duality with (H_q, m, Δ^{νν}_{q_ν,ν}).
pub fn fixed_colour_hopf(q: &ParamPoint, nu: Colour, words: &[Word], order: u32, l: u32) -> Result<Checks> {
    let q_nu = q.push(nu.inv());
    let k = AxiomColours::uniform(nu);
    let alg = gen_alg(&q_nu, &k, words, order)?;
    let bi = gen_bialg(&q_nu, &k, words, l)?;
    let worst = |c: &Checks| c.iter().map(|(_, v)| *v).fold(0.0, f64::max);
    let mut dual = 0.0f64;
    for (a, b) in label_pairs(q.model(), l) {
        let m = dualg::mult_col(&bar_x(q, a), &bar_x(q, b), nu, nu, nu)?;
        let tab = DualTensor::pure(&bar_x(q, a), &bar_x(q, b));
        for cl in labels(q.model(), l) {
            let xc = bar_big_x(q, cl)?;
            let d = quea::coproduct_col(&xc, nu, nu, nu)?;
            dual = dual.max((pair(&m, &xc)? - pair_tensor(&tab, &d)?).norm());
        }
    }
    Ok(vec![
        ("hopf-assoc", alg[0].1),
        ("hopf-unit", alg[1].1),
        ("hopf-antipode", alg[2].1),
        ("hopf-bialgebra", worst(&bi)),
        ("hopf-dual", dual),
    ])
}

/// Group laws of ρ on Gauss words and of σ on barred basis elements.
pub fn colour_group_laws(base: &ParamPoint, nu: Colour, nu_p: Colour, words: &[Word], l: u32) -> Result<Checks> {
    let mut rc = 0.0f64;
    let mut ri = 0.0f64;
    for w in words {
        let x = dualg::word_element(base, w)?;
        let two = dualg::rho(&dualg::rho(&x, nu, Direction::Fwd)?, nu_p, Direction::Fwd)?;
        let one = dualg::rho(&x, nu_p.compose(nu), Direction::Fwd)?;
        rc = rc.max(two.sub(&one)?.max_abs());
        let id = dualg::rho(&x, Colour::ONE, Direction::Fwd)?;
        let inv = dualg::rho(&dualg::rho(&x, nu, Direction::Fwd)?, nu.inv(), Direction::Fwd)?;
        let back = dualg::rho(&x, nu.inv(), Direction::Fwd)?.sub(&dualg::rho(&x, nu, Direction::Inv)?)?;
        ri = ri.max(id.sub(&x)?.max_abs()).max(inv.sub(&x)?.max_abs()).max(back.max_abs());
    }
    let mut sc = 0.0f64;
    let mut si = 0.0f64;
    for a in labels(base.model(), l) {
        let u = bar_big_x(base, a)?;
        let two = quea::sigma(&quea::sigma(&u, nu, Direction::Fwd)?, nu_p, Direction::Fwd)?;
        let one = quea::sigma(&u, nu_p.compose(nu), Direction::Fwd)?;
        sc = sc.max(two.sub(&one)?.max_abs());
        let id = quea::sigma(&u, Colour::ONE, Direction::Fwd)?;
        let inv = quea::sigma(&quea::sigma(&u, nu, Direction::Fwd)?, nu.inv(), Direction::Fwd)?;
        si = si.max(id.sub(&u)?.max_abs()).max(inv.sub(&u)?.max_abs());
    }
    Ok(vec![("rho-compose", rc), ("rho-identity-inverse", ri), ("sigma-compose", sc), ("sigma-identity-inverse", si)])
}

/// Precomputed X̄_D X̄_E for deg D + deg E ≤ l at one point.
struct Products {
    pairs: Vec<(Label, Label)>,
    values: Vec<QueaElement>,
}

impl Products {
    fn new(pt: &ParamPoint, l: u32) -> Result<Self> {
        let pairs = label_pairs(pt.model(), l);
        let values = pairs
            .iter()
            .map(|(d, e)| bar_big_x(pt, *d)?.mul(&bar_big_x(pt, *e)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Products { pairs, values })
    }
}

/// Duality of the coloured maps, ρ/σ pairing consistency, ρ as a coalgebra
/// map, and grade selection, on basis elements of degree ≤ `l`.
pub fn duality(base: &ParamPoint, lambda: Colour, mu: Colour, nu: Colour, words: &[Word], l: u32) -> Result<Checks> {
    let model = base.model();
    let (pl, pm, pn) = (base.push(lambda), base.push(mu), base.push(nu));
    let ls = labels(model, l);
    let big: Vec<QueaElement> = ls.iter().map(|c| bar_big_x(&pn, *c)).collect::<Result<_>>()?;
    let deltas: Vec<QueaTensor> = big.iter().map(|x| quea::coproduct_col(x, lambda, mu, nu)).collect::<Result<_>>()?;

    // ⟨m̃^ν(x̄^A⊗x̄^B), X̄_C⟩ = ⟨x̄^A⊗x̄^B, Δ^{λμ}_ν X̄_C⟩; ladder sectors must add up.
    let mut dm = 0.0f64;
    for (a, b) in label_pairs(model, l) {
        let m = dualg::mult_col(&bar_x(&pl, a), &bar_x(&pm, b), lambda, mu, nu)?;
        let tab = DualTensor::pure(&bar_x(&pl, a), &bar_x(&pm, b));
        for ((cl, x), d) in ls.iter().zip(&big).zip(&deltas) {
            if cl.0[0] != a.0[0] + b.0[0] || cl.0[3] != a.0[3] + b.0[3] {
                continue;
            }
            dm = dm.max((pair(&m, x)? - pair_tensor(&tab, d)?).norm());
        }
    }

    let mut du = 0.0f64;
    let unit = dualg::unit_col(base, nu);
    for x in &big {
        du = du.max((pair(&unit, x)? - quea::counit_col(x, nu)?).norm());
    }

    // ⟨S̃^ν_μ(y), X̄_C⟩ = ⟨y, S^μ_ν(X̄_C)⟩ for Gauss words y.
    let mut ds = 0.0f64;
    for w in words {
        let y = dualg::word_element(&pm, w)?;
        let sy = dualg::antipode_col(&y, mu, nu, l.max(1) + 1)?;
        for x in &big {
            ds = ds.max((pair(&sy, x)? - pair(&y, &quea::antipode_col(x, mu, nu)?)?).norm());
        }
    }

    // ⟨ρ^ν x̄^A, σ^ν X̄_B⟩ = δ_AB.
    let mut rp = 0.0f64;
    for a in &ls {
        let rx = dualg::rho(&bar_x(base, *a), nu, Direction::Fwd)?;
        for b in &ls {
            let sx = quea::sigma(&bar_big_x(base, *b)?, nu, Direction::Fwd)?;
            let want = if a == b { C64::one() } else { C64::zero() };
            rp = rp.max((pair(&rx, &sx)? - want).norm());
        }
    }

    // Δ̃∘ρ^ν = (ρ^ν⊗ρ^ν)∘Δ̃ on truncated coproducts: ρ^ν x̄^B = r_B x̄^B.
    let (prod_b, prod_n) = (Products::new(base, l)?, Products::new(&pn, l)?);
    let scale = |a: &Label| -> Result<C64> {
        let r = dualg::rho(&bar_x(base, *a), nu, Direction::Fwd)?;
        Ok(r.coeff(&a.dual_term()))
    };
    let mut rco = 0.0f64;
    let mut rcu = 0.0f64;
    for a in &ls {
        let x = bar_x(base, *a);
        let rx = dualg::rho(&x, nu, Direction::Fwd)?;
        for (((d, e), pb), pnv) in prod_b.pairs.iter().zip(&prod_b.values).zip(&prod_n.values) {
            let lhs = pair(&rx, pnv)?;
            let rhs = pair(&x, pb)? * scale(d)? * scale(e)?;
            rco = rco.max((lhs - rhs).norm());
        }
        rcu = rcu.max((dualg::counit(&rx) - dualg::counit(&x)).norm());
    }
    for w in words {
        let x = dualg::word_element(base, w)?;
        let rx = dualg::rho(&x, nu, Direction::Fwd)?;
        let t = dualg::coproduct_word(base, w)?.map_legs(
            [pn, pn],
            |e| dualg::rho(e, nu, Direction::Fwd),
            |e| dualg::rho(e, nu, Direction::Fwd),
        )?;
        rco = rco.max(coproduct_vs(&rx, &t, l, false)?);
        rcu = rcu.max((dualg::counit(&rx) - dualg::counit(&x)).norm());
    }

    // Opposite grades pair to zero.
    let mut gv = 0.0f64;
    if model.graded() {
        for a in &ls {
            for (b, x) in ls.iter().zip(&big) {
                if label_grade(model, a) != label_grade(model, b) {
                    gv = gv.max(pair(&bar_x(&pn, *a), x)?.norm());
                }
            }
        }
    }
    Ok(vec![
        ("col-dual-mult", dm),
        ("col-dual-unit", du),
        ("col-dual-antipode", ds),
        ("rho-pairing", rp),
        ("rho-coalgebra", rco),
        ("rho-counit", rcu),
        ("graded-vanishing", gv),
    ])
}
