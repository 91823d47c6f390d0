//! Suite runner: sampled points × colour cube → residual records.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{Suite, SuiteConfig};
use super::report::{Record, Report};
use crate::axioms::{self, AxiomColours, Checks, Word};
use crate::dualg::{self, GaussName};
use crate::error::{Error, Result};
use crate::grmat;
use crate::pairing::{self, PropTResiduals, RttLevel, TForm};
use crate::relations::{self, Ctx};
use crate::scalars::{sample_point, Colour, Model, ParamPoint, C64};

/// Ladder cut of the coproduct-level axiom checks.
const AXIOM_LADDER: u32 = 2;
/// Degree of the quantum-algebra test elements in the T-matrix relations.
const PROP_T_DEGREE: u32 = 3;
/// Largest degree of the duality test elements.
const DUALITY_DEGREE: u32 = 4;
/// Ladder cut of the colour group-law checks.
const GROUP_LAW_LADDER: u32 = 3;

/// Parameter points of a run: the explicit list, or `samples` seeded draws.
pub fn points(cfg: &SuiteConfig) -> Vec<ParamPoint> {
    if !cfg.points.is_empty() {
        return cfg.points.iter().map(|p| ParamPoint::new(cfg.model, p.theta, p.phi)).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.samples).map(|_| sample_point(cfg.model, &mut rng, &cfg.colours, cfg.order)).collect()
}

/// Full cube of the colour list, λ slowest.
pub fn triples(colours: &[Colour]) -> Vec<(Colour, Colour, Colour)> {
    let mut out = Vec::with_capacity(colours.len().pow(3));
    for &l in colours {
        for &m in colours {
            for &n in colours {
                out.push((l, m, n));
            }
        }
    }
    out
}

struct Run<'a> {
    cfg: &'a SuiteConfig,
    report: Report,
    words: Vec<Word>,
}

type Cols = [Option<Colour>; 3];

impl Run<'_> {
    fn push(&mut self, suite: Suite, relation: &str, sample: usize, pt: &ParamPoint, cols: Cols, residual: f64) {
        self.report.records.push(Record {
            suite,
            relation: relation.to_string(),
            model: self.cfg.model,
            sample,
            theta: pt.theta(),
            phi: pt.phi(),
            lambda: cols[0],
            mu: cols[1],
            nu: cols[2],
            residual,
            pass: residual <= self.cfg.tol,
        });
    }

    fn push_all(&mut self, suite: Suite, checks: Checks, sample: usize, pt: &ParamPoint, cols: Cols) {
        for (name, v) in checks {
            self.push(suite, name, sample, pt, cols, v);
        }
    }

    /// Records `r`, or counts a skip when the colours make the check degenerate.
    fn push_or_skip(&mut self, suite: Suite, relation: &str, sample: usize, pt: &ParamPoint, cols: Cols, r: Result<f64>) -> Result<()> {
        match r {
            Ok(v) => self.push(suite, relation, sample, pt, cols, v),
            Err(Error::DegenerateParameter(_)) => self.report.skipped += 1,
            Err(e) => return Err(e),
        }
        Ok(())
    }

    fn sample(&mut self, suite: Suite, i: usize, pt: &ParamPoint) -> Result<()> {
        let cfg = self.cfg;
        let model = cfg.model;
        let order = cfg.order;
        let one = Some(Colour::ONE);
        let units = [one, one, one];
        let cube = triples(&cfg.colours);
        match suite {
            Suite::Ybe => {
                for &(l, m, n) in &cube {
                    let r = grmat::coloured_ybe_residual(model, pt, l, m, n);
                    self.push_or_skip(suite, "coloured-ybe", i, pt, [Some(l), Some(m), Some(n)], r)?;
                }
            }
            Suite::Rtt => {
                let lim = grmat::coloured_r_matrix(model, pt, Colour::ONE, Colour::ONE)?.max_abs_diff(&grmat::r_matrix(model, pt));
                self.push(suite, "r-unit-colour-limit", i, pt, units, lim);
                self.push(suite, "standard-rtt", i, pt, units, pairing::coloured_rtt(pt, Colour::ONE, Colour::ONE, Colour::ONE, RttLevel::Defining)?);
                for &(l, m, n) in &cube {
                    let cols = [Some(l), Some(m), Some(n)];
                    let r = pairing::coloured_rtt(pt, l, m, n, RttLevel::Defining);
                    self.push_or_skip(suite, "coloured-rtt-defining", i, pt, cols, r)?;
                    let r = pairing::coloured_rtt(pt, l, m, n, RttLevel::Abstract(order));
                    self.push_or_skip(suite, "coloured-rtt-abstract", i, pt, cols, r)?;
                }
            }
            Suite::Axioms => {
                for &(l, m, n) in &cube {
                    let k = AxiomColours::from_triple(l, m, n);
                    let cols = [Some(l), Some(m), Some(n)];
                    self.push_all(suite, axioms::gen_alg(pt, &k, &self.words, order)?, i, pt, cols);
                    self.push_all(suite, axioms::gen_bialg(pt, &k, &self.words, AXIOM_LADDER)?, i, pt, cols);
                    self.push_all(suite, axioms::antipode_props(pt, &k, &self.words, order, AXIOM_LADDER)?, i, pt, cols);
                }
                for &nu in &cfg.colours {
                    let c = axioms::fixed_colour_hopf(pt, nu, &self.words, order, AXIOM_LADDER)?;
                    self.push_all(suite, c, i, pt, [None, None, Some(nu)]);
                    for &nu_p in &cfg.colours {
                        let c = axioms::colour_group_laws(pt, nu, nu_p, &self.words, GROUP_LAW_LADDER)?;
                        self.push_all(suite, c, i, pt, [None, Some(nu_p), Some(nu)]);
                    }
                }
            }
            Suite::Duality => {
                let l = DUALITY_DEGREE.min(order.saturating_sub(1)).max(1);
                for &(a, m, n) in &cube {
                    let c = axioms::duality(pt, a, m, n, &self.words, l)?;
                    self.push_all(suite, c, i, pt, [Some(a), Some(m), Some(n)]);
                }
            }
            Suite::Tmatrix => {
                let s = pairing::universal_t(pt, order, TForm::Summed)?;
                let f = pairing::universal_t(pt, order, TForm::Factored)?;
                self.push(suite, "t-summed-vs-factored", i, pt, units, s.max_diff(&f));
                for &(l, m, n) in &cube {
                    // the inverse lines take λ as their free colour
                    let r = pairing::prop_t_residuals(pt, l, m, n, l, PROP_T_DEGREE)?;
                    for (name, v) in PropTResiduals::NAMES.iter().zip(r.values) {
                        self.push(suite, &format!("t-{name}"), i, pt, [Some(l), Some(m), Some(n)], v);
                    }
                }
            }
            Suite::Appendix => self.appendix(i, pt, &cube)?,
            Suite::Relations => {
                let rels = relations::relations(model);
                for &(l, m, n) in &cube {
                    let ctx = Ctx { base: *pt, lambda: l, mu: m, nu: n };
                    for rel in &rels {
                        let r = rel.residual(&ctx);
                        self.push_or_skip(suite, &rel.id(), i, pt, [Some(l), Some(m), Some(n)], r)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Closed-form products and antipodes against the compositional ones.
    fn appendix(&mut self, i: usize, pt: &ParamPoint, cube: &[(Colour, Colour, Colour)]) -> Result<()> {
        use GaussName::*;
        let suite = Suite::Appendix;
        let names = [A, B, C, D, Det];
        let order = self.cfg.order;
        for &(l, m, n) in cube {
            let cols = [Some(l), Some(m), Some(n)];
            for x in names {
                let xe = dualg::entry(&pt.push(l), x);
                for y in names {
                    let closed = match dualg::mult_col_closed(pt, x, y, l, m, n) {
                        Ok(c) => c,
                        Err(Error::UnknownPair(..)) => continue,
                        Err(e) => return Err(e),
                    };
                    let comp = dualg::mult_col(&xe, &dualg::entry(&pt.push(m), y), l, m, n)?;
                    self.push(suite, &format!("mult-{x}-{y}"), i, pt, cols, comp.sub(&closed)?.max_abs());
                }
            }
            // the antipode only sees (μ, ν); emit it once per pair
            if l == cube[0].0 {
                for x in names {
                    let xe = dualg::entry(&pt.push(m), x);
                    let keep = |t: &dualg::DualTerm| t.g <= order && t.b <= order;
                    let comp = dualg::antipode_col(&xe, m, n, order)?.restrict(keep);
                    let closed = dualg::antipode_col_closed(pt, x, m, n)?.restrict(keep);
                    self.push(suite, &format!("antipode-{x}"), i, pt, [None, Some(m), Some(n)], comp.sub(&closed)?.max_abs());
                }
            }
            let ctx = Ctx { base: *pt, lambda: l, mu: m, nu: n };
            self.push(suite, "b-d-exchange-reading", i, pt, cols, relations::bd_readings(&ctx)?.0);
            if self.cfg.model == Model::Gl11 {
                let r = relations::det_d_readings(&ctx).map(|r| r.0);
                self.push_or_skip(suite, "det-d-exponent-reading", i, pt, cols, r)?;
            }
        }
        Ok(())
    }
}

/// Runs every selected suite over the points of `cfg` and the colour cube.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let mut run = Run { cfg, report: Report::default(), words: pairing::probe_words() };
    let pts = points(cfg);
    for &suite in &cfg.suites {
        for (i, pt) in pts.iter().enumerate() {
            run.sample(suite, i, pt)?;
        }
        if suite == Suite::Rtt && cfg.model == Model::Gl2 {
            // classical point, independent of the samples
            let zero = ParamPoint::new(cfg.model, C64::new(0.0, 0.0), C64::new(0.0, 0.0));
            let r = grmat::r_matrix(cfg.model, &zero);
            let id = grmat::GradedMatrix::identity(r.grades().to_vec());
            let one = Some(Colour::ONE);
            run.push(suite, "r-classical-identity", 0, &zero, [one, one, one], r.max_abs_diff(&id));
        }
    }
    run.report.sort();
    Ok(run.report)
}
