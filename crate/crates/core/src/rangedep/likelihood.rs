use rayon::prelude::*;

use super::model::{ModelFamily, ModelSpec, Positions};
use super::tuples::{binomial, for_each_tuple, universe_size, PairTable};
use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;
use crate::optimize::maximize_unimodal;
use crate::scalar::{count, lit, logistic_decay, softplus, Real};

/// Tuples per partial sum; fixed so results do not depend on the worker count.
const CHUNK: usize = 1 << 15;

/// Universe sizes above this trigger a cost warning when `T > 3`.
const COST_WARNING_TUPLES: f64 = 5e7;

/// Newton iterations before giving up on the score equation.
const MAX_NEWTON: usize = 200;

/// Search interval for the decay parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaRange<S> {
    pub lo: S,
    pub hi: S,
}

impl<S: Real> GammaRange<S> {
    pub fn new(lo: S, hi: S) -> Result<Self> {
        if !(lo > S::zero()) || !(hi > lo) || !hi.is_finite() {
            return Err(Error::param("gamma range", format!("need 0 < lo < hi, got ({lo}, {hi})")));
        }
        Ok(GammaRange { lo, hi })
    }
}

impl<S: Real> Default for GammaRange<S> {
    fn default() -> Self {
        GammaRange {
            lo: lit(1e-3),
            hi: lit(1e4),
        }
    }
}

/// How [`fit_gamma_with`] searches for the maximizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaSearch {
    /// Safeguarded Newton on the score equation in `ln γ`.
    #[default]
    Newton,
    /// Golden-section search with parabolic steps in `ln γ`.
    GoldenSection,
}

/// Log-likelihood of a hypergraph under a range-dependent model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LikelihoodReport<S> {
    pub log_likelihood: S,
    pub gamma_star: S,
    /// `Σ_{A_R=1} ln(f_R / (1 − f_R))`.
    pub edge_term: S,
    /// `Σ_{R∈ℛ} ln(1 − f_R)`.
    pub null_term: S,
    pub evaluations: usize,
    /// Set when the maximizer sits on an end of the search range.
    pub at_boundary: bool,
}

/// Per-tuple exponents `c_|R|·I(x, R)` for the whole universe, so the
/// likelihood can be evaluated at many `γ` without recomputing incoherences.
#[derive(Debug, Clone)]
pub struct LikelihoodProfile<S> {
    edge_load: S,
    loads: Vec<S>,
    /// Tuples with `c_t = 0`; each contributes `ln(1/2)`.
    flat: usize,
}

impl<S: Real> LikelihoodProfile<S> {
    pub fn new(family: &ModelFamily<S>, pos: &Positions<S>, h: &Hypergraph) -> Result<Self> {
        if pos.geometry() != family.geometry {
            return Err(Error::param(
                "positions",
                format!("{} positions for a {} model", pos.geometry(), family.geometry),
            ));
        }
        let n = h.n();
        if pos.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: pos.n(),
            });
        }
        let tmax = family.max_cardinality;
        if h.max_cardinality() > tmax && h.num_edges() > 0 {
            return Err(Error::CardinalityOutOfRange {
                t: h.max_cardinality(),
                min: 2,
                max: tmax,
            });
        }
        let size = universe_size(n, tmax);
        if tmax > 3 && size > COST_WARNING_TUPLES {
            log::warn!("likelihood enumerates {size:.3e} tuples (T = {tmax}); expect a long run");
        }

        let table = PairTable::new(pos);
        let mut edge_load = S::zero();
        for e in h.edges() {
            edge_load = edge_load + family.weights.get(e.len()) * table.incoherence(e);
        }
        let mut loads = Vec::new();
        let mut flat = 0usize;
        for t in 2..=tmax.min(n) {
            let c = family.weights.get(t);
            if c == S::zero() {
                flat += binomial(n, t) as usize;
                continue;
            }
            loads.reserve(binomial(n, t) as usize);
            for_each_tuple(&table, t, |_, i| loads.push(c * i));
        }
        Ok(LikelihoodProfile { edge_load, loads, flat })
    }

    /// Number of tuples in the universe.
    pub fn universe_len(&self) -> usize {
        self.loads.len() + self.flat
    }

    /// `Σ_{A_R=1} c_|R| I(x, R)`.
    pub fn edge_load(&self) -> S {
        self.edge_load
    }

    /// `Σ_R ln(1 − f_R)` over every tuple, including the zero-weight ones.
    fn null_term(&self, gamma: S) -> S {
        let partials: Vec<S> = self
            .loads
            .par_chunks(CHUNK)
            .map(|chunk| chunk.iter().fold(S::zero(), |acc, &z| acc + softplus(-(gamma * z))))
            .collect();
        let sum = partials.into_iter().fold(S::zero(), |a, b| a + b);
        -(sum + count::<S>(self.flat) * S::LN_2())
    }

    /// `(Σ z f, Σ z² f (1 − f))`, the pieces of the score and its slope.
    fn score_moments(&self, gamma: S) -> (S, S) {
        let partials: Vec<(S, S)> = self
            .loads
            .par_chunks(CHUNK)
            .map(|chunk| {
                let (mut first, mut second) = (S::zero(), S::zero());
                for &z in chunk {
                    let f = logistic_decay(gamma * z);
                    let zf = z * f;
                    first = first + zf;
                    second = second + zf * z * (S::one() - f);
                }
                (first, second)
            })
            .collect();
        partials
            .into_iter()
            .fold((S::zero(), S::zero()), |a, b| (a.0 + b.0, a.1 + b.1))
    }

    /// Likelihood at a fixed `γ`.
    pub fn evaluate(&self, gamma: S) -> LikelihoodReport<S> {
        self.report(gamma, self.null_term(gamma), 1, false)
    }

    fn report(&self, gamma: S, null_term: S, evaluations: usize, at_boundary: bool) -> LikelihoodReport<S> {
        let edge_term = -gamma * self.edge_load;
        LikelihoodReport {
            log_likelihood: edge_term + null_term,
            gamma_star: gamma,
            edge_term,
            null_term,
            evaluations,
            at_boundary,
        }
    }

    /// Maximizes over `γ` in `range`.
    ///
    /// The likelihood is concave in `γ`, with derivative
    /// `−Σ_{A_R=1} z_R + Σ_R z_R f_R` that decreases monotonically, so the
    /// maximizer is either an end of the range or the unique root of it.
    pub fn fit(&self, range: GammaRange<S>, method: GammaSearch) -> LikelihoodReport<S> {
        match method {
            GammaSearch::Newton => self.fit_newton(range),
            GammaSearch::GoldenSection => self.fit_golden(range),
        }
    }

    fn fit_newton(&self, range: GammaRange<S>) -> LikelihoodReport<S> {
        let tol: S = lit(1e-6);
        let half: S = lit(0.5);
        let mut evaluations = 0;
        let mut score = |gamma: S| {
            evaluations += 1;
            let (first, second) = self.score_moments(gamma);
            (first - self.edge_load, second)
        };

        let (g_lo, _) = score(range.lo);
        if !(g_lo > S::zero()) {
            return self.report(range.lo, self.null_term(range.lo), evaluations + 1, true);
        }
        let (g_hi, _) = score(range.hi);
        if !(g_hi < S::zero()) {
            return self.report(range.hi, self.null_term(range.hi), evaluations + 1, true);
        }

        // Bracket in u = ln γ with φ(u) = g(e^u) decreasing, φ(a) > 0 > φ(b).
        let (mut a, mut b) = (range.lo.ln(), range.hi.ln());
        let mut u = half * (a + b);
        for _ in 0..MAX_NEWTON {
            let gamma = u.exp();
            let (g, h) = score(gamma);
            if g == S::zero() {
                break;
            }
            if g > S::zero() {
                a = u;
            } else {
                b = u;
            }
            // dφ/du = γ·g'(γ) = −γ·Σ z² f (1 − f).
            let slope = -gamma * h;
            let newton = if slope < S::zero() { u - g / slope } else { S::nan() };
            let next = if newton > a && newton < b {
                newton
            } else {
                half * (a + b)
            };
            let step = (next - u).abs();
            u = next;
            if step < tol || b - a < tol {
                break;
            }
        }
        let gamma = u.exp();
        self.report(gamma, self.null_term(gamma), evaluations + 1, false)
    }

    fn fit_golden(&self, range: GammaRange<S>) -> LikelihoodReport<S> {
        let value = |gamma: S| -gamma * self.edge_load + self.null_term(gamma);
        let (a, b) = (range.lo.ln(), range.hi.ln());
        let opt = maximize_unimodal(|u: S| value(u.exp()), a, b, lit(1e-7));
        let mut evaluations = opt.evaluations + 2;
        let mut best = (opt.x.exp(), opt.value, false);
        for end in [range.lo, range.hi] {
            let v = value(end);
            if v >= best.1 {
                best = (end, v, true);
            }
        }
        evaluations += 1;
        let null = self.null_term(best.0);
        self.report(best.0, null, evaluations, best.2)
    }
}

/// Log-likelihood at the model's fixed `γ`, enumerating every tuple of
/// cardinality `2..=T`.
pub fn log_likelihood<S: Real>(model: &ModelSpec<S>, pos: &Positions<S>, h: &Hypergraph) -> Result<LikelihoodReport<S>> {
    Ok(LikelihoodProfile::new(&model.family, pos, h)?.evaluate(model.gamma))
}

/// Maximum-likelihood `γ` over `range` for fixed positions.
pub fn fit_gamma<S: Real>(
    family: &ModelFamily<S>,
    pos: &Positions<S>,
    h: &Hypergraph,
    range: GammaRange<S>,
) -> Result<LikelihoodReport<S>> {
    fit_gamma_with(family, pos, h, range, GammaSearch::Newton)
}

pub fn fit_gamma_with<S: Real>(
    family: &ModelFamily<S>,
    pos: &Positions<S>,
    h: &Hypergraph,
    range: GammaRange<S>,
    method: GammaSearch,
) -> Result<LikelihoodReport<S>> {
    Ok(LikelihoodProfile::new(family, pos, h)?.fit(range, method))
}
