//! `G(n, p)` sampling, the random-graph parameter recipe, `K_{2,t}`
//! detection and Monte Carlo checks of the first-moment and independence
//! estimates. Logarithms are natural throughout.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMeta};
use crate::independence::{self, Budget, LoopSemantics};

/// `e^8`
fn e8() -> f64 {
    8f64.exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomRecipe {
    pub m: u64,
    pub t: u32,
    pub c3: f64,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl RandomRecipe {
    /// Expected degree `pn`.
    pub fn d(&self) -> f64 {
        self.p * self.n as f64
    }
}

/// Default `c3 = min(1/c2², 1/(400 e^8))`, with `c2 = max(1, m / 2^t)` the
/// smallest constant `>= 1` for which `m <= c2 2^t`.
pub fn default_c3(m: u64, t: u32) -> f64 {
    let c2 = (m as f64 / 2f64.powi(t.min(1000) as i32)).max(1.0);
    (1.0 / (c2 * c2)).min(1.0 / (400.0 * e8()))
}

/// `n = round(c3 m² t / log²(mt))`, `p = sqrt(t / (e^8 n))` clamped to `[0, 1]`.
pub fn lemma_parameters(m: u64, t: u32, c3: Option<f64>, seed: u64) -> Result<RandomRecipe> {
    if m < 1 || t < 2 {
        return Err(Error::InvalidParameters(format!(
            "need m >= 1 and t >= 2 (m = {m}, t = {t})"
        )));
    }
    let c3 = c3.unwrap_or_else(|| default_c3(m, t));
    if !(c3 > 0.0 && c3.is_finite()) {
        return Err(Error::InvalidParameters(format!("c3 = {c3} must be positive")));
    }
    let (mf, tf) = (m as f64, t as f64);
    let raw = c3 * mf * mf * tf / (mf * tf).ln().powi(2);
    let n = raw.round();
    if n < 1.0 {
        return Err(Error::DegenerateRecipe { n: raw, c3 });
    }
    let n = n as usize;
    let p = (tf / (e8() * n as f64)).sqrt().clamp(0.0, 1.0);
    Ok(RandomRecipe { m, t, c3, n, p, seed })
}

fn sample_with(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges, GraphMeta::random()).expect("edges are in range")
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `G(n, p)` without loops, drawn from ChaCha8 seeded with `seed` on stream 0.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    sample_gnp_stream(n, p, seed, 0)
}

/// `G(n, p)` drawn from stream `stream` of the generator seeded with `seed`.
pub fn sample_gnp_stream(n: usize, p: f64, seed: u64, stream: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameters(format!("p = {p} outside [0, 1]")));
    }
    Ok(sample_with(&mut rng_for(seed, stream), n, p))
}

pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectedCount {
    /// `log(n² C(n,t) p^(2t))`
    pub log_value: f64,
    /// `log(C(n,2) C(n-2,t) p^(2t))`, the exact expected number of
    /// `K_{2,t}` copies counted by their two-vertex side.
    pub log_exact: f64,
    /// `2 log n - 7t`, reported when `p = sqrt(t / (e^8 n))`.
    pub chain_bound: Option<f64>,
}

pub fn expected_k2t_log(n: usize, p: f64, t: u32) -> Result<ExpectedCount> {
    if t < 2 || t as usize > n || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameters(format!(
            "need 2 <= t <= n and p in [0, 1] (n = {n}, p = {p}, t = {t})"
        )));
    }
    let (nf, tf) = (n as f64, t as f64);
    let lp = 2.0 * tf * p.ln();
    let recipe_p = (tf / (e8() * nf)).sqrt();
    Ok(ExpectedCount {
        log_value: 2.0 * nf.ln() + ln_binomial(n as u64, t as u64) + lp,
        log_exact: ln_binomial(n as u64, 2) + ln_binomial(n as u64 - 2, t as u64) + lp,
        chain_bound: ((p - recipe_p).abs() <= 1e-12 * recipe_p).then(|| 2.0 * nf.ln() - 7.0 * tf),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K2tWitness {
    pub u: usize,
    pub v: usize,
    /// The first `t` common neighbours in index order.
    pub common: Vec<usize>,
}

/// Number of common neighbours of every pair `u < v` with at least one,
/// by walking paths of length two. A loop makes a vertex its own neighbour.
fn codegree_pairs(g: &Graph, mut visit: impl FnMut(usize, usize, usize) -> bool) {
    let adj = g.adjacency_lists();
    let mut count = vec![0usize; g.n()];
    let mut touched = Vec::new();
    for u in 0..g.n() {
        for &w in &adj[u] {
            for &v in &adj[w as usize] {
                let v = v as usize;
                if v > u {
                    if count[v] == 0 {
                        touched.push(v);
                    }
                    count[v] += 1;
                }
            }
        }
        touched.sort_unstable();
        for &v in &touched {
            if !visit(u, v, count[v]) {
                return;
            }
        }
        for v in touched.drain(..) {
            count[v] = 0;
        }
    }
}

fn sparse(g: &Graph) -> bool {
    let wedges: usize = (0..g.n()).map(|u| g.degree(u).pow(2)).sum();
    wedges < g.n() * g.words().max(1) * 8
}

/// A pair with at least `t` common neighbours, scanning pairs in index order.
pub fn find_k2t(g: &Graph, t: usize) -> Result<Option<K2tWitness>> {
    if t < 2 {
        return Err(Error::InvalidParameters(format!("t = {t} < 2")));
    }
    let mut hit = None;
    if sparse(g) {
        codegree_pairs(g, |u, v, c| {
            if c >= t {
                hit = Some((u, v));
            }
            hit.is_none()
        });
    } else {
        'outer: for u in 0..g.n() {
            for v in u + 1..g.n() {
                if g.common_count(u, v) >= t {
                    hit = Some((u, v));
                    break 'outer;
                }
            }
        }
    }
    Ok(hit.map(|(u, v)| K2tWitness {
        u,
        v,
        common: g.neighbors(u).filter(|&w| g.has_edge(v, w)).take(t).collect(),
    }))
}

/// `Σ_{u<v} C(codeg(u,v), t)`, the number of `K_{2,t}` copies counted by
/// their two-vertex side, and the number of pairs with codegree `>= t`.
pub fn count_k2t(g: &Graph, t: usize) -> (f64, u64) {
    let mut copies = 0.0;
    let mut pairs = 0;
    let mut add = |c: usize| {
        if c >= t {
            pairs += 1;
            copies += ln_binomial(c as u64, t as u64).exp();
        }
    };
    if sparse(g) {
        codegree_pairs(g, |_, _, c| {
            add(c);
            true
        });
    } else {
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                add(g.common_count(u, v));
            }
        }
    }
    (copies.round(), pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FriezeEstimate {
    pub d: f64,
    /// `(2n/d)(log d - log log d - log 2 + 1)`
    pub center: f64,
    /// `(20n/d) log d`
    pub working_bound: f64,
}

pub fn frieze_alpha_estimate(n: usize, p: f64) -> Result<FriezeEstimate> {
    let nf = n as f64;
    let d = p * nf;
    if !(d >= 3.0) {
        return Err(Error::Domain(format!("d = pn = {d} < 3")));
    }
    Ok(FriezeEstimate {
        d,
        center: 2.0 * nf / d * (d.ln() - d.ln().ln() - 2f64.ln() + 1.0),
        working_bound: 20.0 * nf / d * d.ln(),
    })
}

/// Independent set by repeatedly taking a vertex of minimum residual degree.
pub fn greedy_independent_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|u| g.neighbors(u).filter(|&v| v != u).count()).collect();
    let mut out = Vec::new();
    while let Some(u) = (0..n).filter(|&u| alive[u]).min_by_key(|&u| (deg[u], u)) {
        out.push(u);
        alive[u] = false;
        let gone: Vec<usize> = g.neighbors(u).filter(|&v| alive[v]).collect();
        for &v in &gone {
            alive[v] = false;
        }
        for v in gone {
            for w in g.neighbors(v) {
                if alive[w] && w != v {
                    deg[w] -= 1;
                }
            }
        }
    }
    out
}

/// Largest `n` for which sampled independence numbers are computed exactly.
pub const EXACT_ALPHA_MAX_N: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub stream: u64,
    pub edges: usize,
    pub k2t_copies: f64,
    pub k2t_pairs: u64,
    pub k2t_free: bool,
    pub alpha: usize,
    /// `exact`, `bounded` (budget ran out, lower bound shown) or `greedy`.
    pub alpha_method: String,
    pub alpha_within_25pct: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub recipe: RandomRecipe,
    pub samples: usize,
    pub expected: Option<ExpectedCount>,
    pub mean_k2t_copies: f64,
    pub free_fraction: f64,
    /// Mean copy count `<= 3 n² C(n,t) p^(2t)`.
    pub count_within_3x: Option<bool>,
    /// At least 90% of samples are free when the expected count is `< 0.1`.
    pub free_fraction_ok: Option<bool>,
    pub edge_mean_expected: f64,
    pub edge_total_observed: usize,
    /// Total edge count over all samples lies within 4σ of its mean.
    pub edge_count_4sigma_ok: bool,
    pub frieze: Option<FriezeEstimate>,
    /// Fraction of samples with `α` within ±25% of the Frieze center.
    pub alpha_within_25pct_fraction: Option<f64>,
    pub alpha_at_most_m_fraction: f64,
    pub rows: Vec<SampleRow>,
    pub note: String,
}

/// Draws `samples` graphs from the recipe, stream `i` for sample `i`.
pub fn monte_carlo_check(recipe: &RandomRecipe, samples: usize, budget: Budget) -> MonteCarloReport {
    let (n, p, t) = (recipe.n, recipe.p, recipe.t as usize);
    let frieze = frieze_alpha_estimate(n, p).ok();
    let rows: Vec<SampleRow> = (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let g = sample_with(&mut rng_for(recipe.seed, s), n, p);
            let (copies, pairs) = count_k2t(&g, t);
            let (alpha, method) = if n <= EXACT_ALPHA_MAX_N {
                let r = independence::max_independent_set_exact(&g, budget, LoopSemantics::IgnoreLoops);
                (r.lower, if r.exact { "exact" } else { "bounded" })
            } else {
                (greedy_independent_set(&g).len(), "greedy")
            };
            SampleRow {
                stream: s,
                edges: g.edge_count(),
                k2t_copies: copies,
                k2t_pairs: pairs,
                k2t_free: pairs == 0,
                alpha,
                alpha_method: method.into(),
                alpha_within_25pct: frieze
                    .filter(|_| method == "exact")
                    .map(|f| (alpha as f64 - f.center).abs() <= 0.25 * f.center),
            }
        })
        .collect();

    let k = samples.max(1) as f64;
    let mean_k2t_copies = rows.iter().map(|r| r.k2t_copies).sum::<f64>() / k;
    let free_fraction = rows.iter().filter(|r| r.k2t_free).count() as f64 / k;
    let expected = expected_k2t_log(n, p, recipe.t).ok();
    let analytic = expected.map(|e| e.log_value.exp());
    let pairs = (n * n.saturating_sub(1) / 2) as f64;
    let edge_mean_expected = pairs * p;
    let edge_total_observed: usize = rows.iter().map(|r| r.edges).sum();
    let sigma = (k * pairs * p * (1.0 - p)).sqrt();
    let within: Vec<bool> = rows.iter().filter_map(|r| r.alpha_within_25pct).collect();
    MonteCarloReport {
        recipe: *recipe,
        samples,
        expected,
        mean_k2t_copies,
        free_fraction,
        count_within_3x: analytic.map(|a| mean_k2t_copies <= 3.0 * a),
        free_fraction_ok: analytic.filter(|&a| a < 0.1).map(|_| free_fraction >= 0.9),
        edge_mean_expected,
        edge_total_observed,
        edge_count_4sigma_ok: (edge_total_observed as f64 - k * edge_mean_expected).abs() <= 4.0 * sigma,
        frieze,
        alpha_within_25pct_fraction: (!within.is_empty())
            .then(|| within.iter().filter(|&&b| b).count() as f64 / within.len() as f64),
        alpha_at_most_m_fraction: rows.iter().filter(|r| r.alpha as u64 <= recipe.m).count() as f64 / k,
        rows,
        note: "finite-sample Monte Carlo; the 3x, 90% and 25% tolerances are engineering choices \
               for an asymptotic statement"
            .into(),
    }
}
