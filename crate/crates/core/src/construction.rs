//! The sum graph `G+(q, t)` and product graph `Gx(q, t)`.
//!
//! * `G+`: vertices `(F_q / H) x F_q^*` for an additive `H` of order `t`,
//!   with `(a, x) ~ (b, y)` iff `xy ∈ a + b + H`.
//! * `Gx`: vertices `(F_q^* / H) x F_q` for a multiplicative `H` of order
//!   `t`, with `(a, x) ~ (b, y)` iff `x + y ∈ abH`.
//!
//! Vertices are ordered by `(coset id, element code)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::graph::{Graph, GraphMeta, Label, Variant};
use crate::primes;
use crate::subgroup::{Subgroup, SubgroupKind};

/// A constructed graph together with the field and subgroup it came from.
#[derive(Clone, Debug)]
pub struct Construction {
    pub field: Field,
    pub subgroup: Subgroup,
    pub graph: Graph,
}

fn field_for(q: u32) -> Result<Field> {
    let (p, a) = primes::prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
    Field::new(p as u32, a)
}

impl Construction {
    pub fn variant(&self) -> Variant {
        self.graph.meta().variant
    }
    pub fn q(&self) -> u32 {
        self.field.order()
    }
    pub fn t(&self) -> u32 {
        self.subgroup.order()
    }

    /// Number of vertices sharing a coset id (the size of the element axis).
    fn stride(&self) -> usize {
        match self.variant() {
            Variant::Plus => self.q() as usize - 1,
            _ => self.q() as usize,
        }
    }

    pub fn vertex(&self, coset: u32, elem: Elem) -> usize {
        match self.variant() {
            Variant::Plus => coset as usize * self.stride() + elem as usize - 1,
            _ => coset as usize * self.stride() + elem as usize,
        }
    }

    /// Adjacency straight from the defining predicate.
    pub fn defining_predicate(&self, u: usize, v: usize) -> bool {
        let (f, h) = (&self.field, &self.subgroup);
        let (lu, lv) = (self.graph.labels()[u], self.graph.labels()[v]);
        let (a, b) = (
            h.representatives()[lu.coset as usize],
            h.representatives()[lv.coset as usize],
        );
        match self.variant() {
            Variant::Plus => h.coset(f.mul(lu.elem, lv.elem)) == h.coset(f.add(a, b)),
            _ => {
                let s = f.add(lu.elem, lv.elem);
                s != 0 && h.coset(s) == h.coset(f.mul(a, b))
            }
        }
    }

    /// Rebuilds the construction named by an algebraic graph's metadata and
    /// checks that it reproduces the given graph exactly.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let m = g.meta();
        let c = match m.variant {
            Variant::Plus => build_g_plus(m.q, m.t)?,
            Variant::Times => build_g_times(m.q, m.t)?,
            _ => {
                return Err(Error::InvalidParameters(
                    "graph is not an algebraic construction".into(),
                ))
            }
        };
        if c.field.p() != m.p || c.field.degree() != m.a || &c.graph != g {
            return Err(Error::InvalidParameters(
                "graph differs from the canonical construction for its parameters".into(),
            ));
        }
        Ok(c)
    }
}

/// `G+(q, t)`; requires `t >= 2` and `t = p^b` dividing `q = p^a`.
pub fn build_g_plus(q: u32, t: u32) -> Result<Construction> {
    let field = field_for(q)?;
    if t < 2 || q % t != 0 {
        return Err(Error::InvalidParameters(format!(
            "G+ needs t >= 2 dividing q (q = {q}, t = {t})"
        )));
    }
    let subgroup = Subgroup::new(&field, SubgroupKind::Additive, t)
        .map_err(|_| Error::InvalidParameters(format!("t = {t} is not a power of {}", field.p())))?;
    let cosets = subgroup.num_cosets() as u32;
    let labels: Vec<Label> = (0..cosets)
        .flat_map(|c| field.nonzero().map(move |x| Label { coset: c, elem: x }))
        .collect();
    let meta = GraphMeta {
        variant: Variant::Plus,
        p: field.p(),
        a: field.degree(),
        q,
        t,
    };
    let graph = Graph::empty(labels.len(), meta).with_labels(labels);
    let mut c = Construction { field, subgroup, graph };
    // (a, x) ~ (d, y)  iff  d = coset(xy - a)
    let stride = c.stride();
    let mut edges = Vec::with_capacity(c.graph.n() * stride);
    for u in 0..c.graph.n() {
        let l = c.graph.labels()[u];
        let a = c.subgroup.representatives()[l.coset as usize];
        for y in c.field.nonzero() {
            let d = c.subgroup.coset(c.field.sub(c.field.mul(l.elem, y), a)).unwrap();
            edges.push((u, c.vertex(d, y)));
        }
    }
    for (u, v) in edges {
        c.graph.insert_edge(u, v);
    }
    Ok(c)
}

/// `Gx(q, t)`; requires `t >= 2` dividing `q - 1`.
pub fn build_g_times(q: u32, t: u32) -> Result<Construction> {
    let field = field_for(q)?;
    if t < 2 || (q - 1) % t != 0 {
        return Err(Error::InvalidParameters(format!(
            "Gx needs t >= 2 dividing q - 1 (q = {q}, t = {t})"
        )));
    }
    let subgroup = Subgroup::new(&field, SubgroupKind::Multiplicative, t)?;
    let cosets = subgroup.num_cosets() as u32;
    let labels: Vec<Label> = (0..cosets)
        .flat_map(|c| field.elements().map(move |x| Label { coset: c, elem: x }))
        .collect();
    let meta = GraphMeta {
        variant: Variant::Times,
        p: field.p(),
        a: field.degree(),
        q,
        t,
    };
    let graph = Graph::empty(labels.len(), meta).with_labels(labels);
    let mut c = Construction { field, subgroup, graph };
    // (a, x) ~ (d, y)  iff  x != -y and d = coset((x + y) a^-1)
    let mut edges = Vec::new();
    for u in 0..c.graph.n() {
        let l = c.graph.labels()[u];
        let a_inv = c.field.inv(c.subgroup.representatives()[l.coset as usize])?;
        for y in c.field.elements() {
            let s = c.field.add(l.elem, y);
            if s == 0 {
                continue;
            }
            let d = c.subgroup.coset(c.field.mul(s, a_inv)).unwrap();
            edges.push((u, c.vertex(d, y)));
        }
    }
    for (u, v) in edges {
        c.graph.insert_edge(u, v);
    }
    Ok(c)
}

/// Vertices adjacent to both `u` and `v`. A looped endpoint counts as its
/// own neighbour.
pub fn common_neighbors(g: &Graph, u: usize, v: usize) -> Result<Vec<usize>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::SameVertex);
    }
    let words: Vec<u64> = g.row(u).iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
    Ok(crate::graph::BitIter::new(&words).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub variant: Variant,
    pub q: u32,
    pub t: u32,
    pub n: usize,
    /// `q(q-1)/t` for the algebraic variants.
    pub expected_n: Option<u64>,
    pub n_ok: bool,
    /// degree -> number of vertices (loops count once).
    pub degrees: BTreeMap<usize, usize>,
    pub regular_ok: bool,
    pub loop_count: usize,
    pub loop_count_ok: bool,
    pub degree_sum: usize,
    pub popcount_sum: usize,
    /// common-neighbourhood size -> number of unordered vertex pairs.
    pub common_nbhd_histogram: BTreeMap<usize, u64>,
    /// Every distinct pair has exactly `t` common neighbours.
    pub exact_t_all_pairs: bool,
    /// Pairs sharing the element coordinate have 0 common neighbours, pairs
    /// sharing the coset have `t - 1`, all other pairs have `t`.
    pub pair_class_law: Option<bool>,
    pub k2t1_free: bool,
    /// Adjacency agrees with the defining predicate on every pair.
    pub definition_ok: Option<bool>,
}

impl StructuralReport {
    /// The checks claimed for the constructions: vertex count, `(q-1)`-regularity,
    /// `q-1` loops, exactly `t` common neighbours and `K_{2,t+1}`-freeness.
    pub fn all_claims_hold(&self) -> bool {
        self.n_ok && self.regular_ok && self.loop_count_ok && self.exact_t_all_pairs && self.k2t1_free
    }
}

/// Audits a graph against the structural claims for its variant. Failed
/// checks are recorded, never raised.
pub fn structural_audit(g: &Graph) -> StructuralReport {
    let m = *g.meta();
    let n = g.n();
    let (q, t) = (m.q, m.t);

    let mut degrees = BTreeMap::new();
    for u in 0..n {
        *degrees.entry(g.degree(u)).or_insert(0) += 1;
    }
    let degree_sum: usize = degrees.iter().map(|(d, c)| d * c).sum();
    let popcount_sum: usize = (0..n)
        .map(|u| g.row(u).iter().map(|w| w.count_ones() as usize).sum::<usize>())
        .sum();
    let loop_count = g.loop_count();

    let construction = if m.is_algebraic() {
        Construction::from_graph(g).ok()
    } else {
        None
    };
    let labels = g.labels();
    let classify = |u: usize, v: usize| -> usize {
        let (a, b) = (labels[u], labels[v]);
        if a.elem == b.elem {
            0
        } else if a.coset == b.coset {
            t as usize - 1
        } else {
            t as usize
        }
    };

    let (histogram, law_ok, def_ok) = (0..n)
        .into_par_iter()
        .fold(
            || (BTreeMap::<usize, u64>::new(), true, true),
            |(mut hist, mut law, mut def), u| {
                for v in u + 1..n {
                    let c = g.common_count(u, v);
                    *hist.entry(c).or_insert(0) += 1;
                    if let Some(con) = &construction {
                        law &= c == classify(u, v);
                        def &= g.has_edge(u, v) == con.defining_predicate(u, v);
                    }
                }
                if let Some(con) = &construction {
                    def &= g.has_edge(u, u) == con.defining_predicate(u, u);
                }
                (hist, law, def)
            },
        )
        .reduce(
            || (BTreeMap::new(), true, true),
            |(mut h1, l1, d1), (h2, l2, d2)| {
                for (k, c) in h2 {
                    *h1.entry(k).or_insert(0) += c;
                }
                (h1, l1 && l2, d1 && d2)
            },
        );

    let pairs = (n as u64) * (n as u64).saturating_sub(1) / 2;
    let expected_n = m.is_algebraic().then(|| q as u64 * (q as u64 - 1) / t.max(1) as u64);
    let algebraic = m.is_algebraic();
    StructuralReport {
        variant: m.variant,
        q,
        t,
        n,
        expected_n,
        n_ok: expected_n.map_or(true, |e| e == n as u64),
        regular_ok: algebraic && degrees.len() == 1 && degrees.contains_key(&(q as usize - 1)),
        loop_count,
        loop_count_ok: algebraic && loop_count == q as usize - 1,
        degrees,
        degree_sum,
        popcount_sum,
        exact_t_all_pairs: histogram.len() <= 1 && histogram.get(&(t as usize)).copied().unwrap_or(0) == pairs,
        pair_class_law: construction.as_ref().map(|_| law_ok),
        k2t1_free: histogram.keys().all(|&k| k <= t as usize),
        definition_ok: construction.as_ref().map(|_| def_ok),
        common_nbhd_histogram: histogram,
    }
}

/// Vertex permutations that preserve adjacency, derived from the algebra:
///
/// * `Gx`: `(a, x) -> (λa, λ²x)`, `(a, x) -> (a, hx)` for `h ∈ H`, and
///   Frobenius `(a, x) -> (a^p, x^p)`.
/// * `G+`: `(a, x) -> (λa, μx)` with `μ² = λ ∈ F_p^*`, and in characteristic
///   two the translations `(a, x) -> (a + c, x)`.
///
/// Callers that rely on these must verify them (see
/// [`crate::spectral::verify_automorphism`]).
pub fn automorphism_generators(c: &Construction) -> Vec<Vec<u32>> {
    let (f, h, g) = (&c.field, &c.subgroup, &c.graph);
    let n = g.n();
    let map = |func: &dyn Fn(Label) -> (Elem, Elem)| -> Vec<u32> {
        (0..n)
            .map(|u| {
                let (a, x) = func(g.labels()[u]);
                c.vertex(h.coset(a).unwrap(), x) as u32
            })
            .collect()
    };
    let rep = |l: Label| h.representatives()[l.coset as usize];
    let gen = f.generator();
    let mut out = Vec::new();
    match c.variant() {
        Variant::Times => {
            out.push(map(&|l| (f.mul(gen, rep(l)), f.mul(f.mul(gen, gen), l.elem))));
            let hgen = f.exp((f.order() as u64 - 1) / h.order() as u64);
            out.push(map(&|l| (rep(l), f.mul(hgen, l.elem))));
            if f.degree() > 1 {
                let p = f.p() as u64;
                out.push(map(&|l| (f.pow(rep(l), p), f.pow(l.elem, p))));
            }
        }
        _ => {
            let q1 = f.order() as u64 - 1;
            let root = f.exp(q1 / (f.p() as u64 - 1).max(1));
            // lambda = a generator of F_p^* if it is a square in F_q, else its square
            let (lambda, mu) = if f.log(root).unwrap() % 2 == 0 {
                (root, f.exp(f.log(root).unwrap() as u64 / 2))
            } else {
                (f.mul(root, root), root)
            };
            out.push(map(&|l| (f.mul(lambda, rep(l)), f.mul(mu, l.elem))));
            out.push(map(&|l| (rep(l), f.neg(l.elem))));
            if f.p() == 2 {
                let b = h.order().trailing_zeros();
                let shifts = std::iter::once(1).chain((b + 1..f.degree()).map(|i| f.exp(i as u64)));
                for s in shifts {
                    out.push(map(&|l| (f.add(rep(l), s), l.elem)));
                }
            }
        }
    }
    out.retain(|perm| perm.iter().enumerate().any(|(i, &j)| i != j as usize));
    out
}
