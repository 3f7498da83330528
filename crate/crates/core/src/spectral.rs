//! Spectra of the constructions, checked two ways.
//!
//! The exact route computes integer moments `tr(M^j)` and checks that
//! `P(M) = M (M² - q)(M² - 1)(M - (q-1))` kills every basis vector, so the
//! spectrum lies in `{q-1, ±√q, ±1, 0}`; the multiplicities then follow from
//! the moments. The character route evaluates `Γ_{χ,φ}` for every character
//! pair in floating point.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construction::{self, Construction};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::graph::{Graph, Variant};
use crate::subgroup::{Subgroup, SubgroupKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharacterKind {
    AdditiveOnQuotient,
    MultiplicativeOnQuotient,
    AdditiveOnField,
    MultiplicativeOnField,
}

impl CharacterKind {
    pub fn is_additive(self) -> bool {
        matches!(self, Self::AdditiveOnQuotient | Self::AdditiveOnField)
    }
}

const UNDEFINED: u32 = u32::MAX;

/// A character `x -> exp(2πi e(x) / m)`, stored as the exponent table
/// `e` over field element codes. Quotient characters are evaluated on a
/// coset through any of its elements. Multiplicative characters are
/// undefined at zero and [`Character::value`] returns `0` there.
#[derive(Clone, Debug)]
pub struct Character {
    kind: CharacterKind,
    index: u32,
    group_order: u32,
    root_order: u32,
    exps: Vec<u32>,
}

impl Character {
    pub fn kind(&self) -> CharacterKind {
        self.kind
    }
    pub fn index(&self) -> u32 {
        self.index
    }
    pub fn group_order(&self) -> u32 {
        self.group_order
    }
    /// `m` in `exp(2πi e / m)`: `p` for additive, `q-1` for multiplicative.
    pub fn root_order(&self) -> u32 {
        self.root_order
    }
    pub fn exponent(&self, x: Elem) -> Option<u32> {
        let e = self.exps[x as usize];
        (e != UNDEFINED).then_some(e)
    }
    pub fn value(&self, x: Elem) -> Complex64 {
        match self.exponent(x) {
            Some(e) => Complex64::from_polar(1.0, 2.0 * PI * e as f64 / self.root_order as f64),
            None => Complex64::new(0.0, 0.0),
        }
    }
    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&e| e == 0 || e == UNDEFINED)
    }
    fn conj_exps(&self) -> Vec<u32> {
        self.exps
            .iter()
            .map(|&e| {
                if e == UNDEFINED {
                    e
                } else {
                    (self.root_order - e) % self.root_order
                }
            })
            .collect()
    }
    /// True if `other` is the complex conjugate of `self`.
    pub fn is_conjugate_of(&self, other: &Character) -> bool {
        self.kind == other.kind && self.root_order == other.root_order && self.conj_exps() == other.exps
    }
}

/// Elements `c` with `Tr(ch) = 0` for all `h ∈ H`, sorted; they index the
/// additive characters of `F_q / H`.
fn annihilator(field: &Field, h: &Subgroup) -> Vec<Elem> {
    field
        .elements()
        .filter(|&c| h.elements().iter().all(|&x| field.trace(field.mul(c, x)) == 0))
        .collect()
}

/// Character number `index` of the group selected by `kind`.
///
/// * additive on the field: `x -> ω_p^Tr(cx)` with `c` the element with code `index`;
/// * additive on `F_q / H`: the same with `c` the `index`-th element of the
///   annihilator of `H`;
/// * multiplicative on the field: `x -> ω_{q-1}^(index log x)`;
/// * multiplicative on `F_q^* / H`: exponent `index t` in place of `index`.
pub fn make_character(field: &Field, subgroup: &Subgroup, kind: CharacterKind, index: u32) -> Result<Character> {
    let q = field.order();
    let t = subgroup.order();
    let quotient_kind = match kind {
        CharacterKind::AdditiveOnQuotient => Some(SubgroupKind::Additive),
        CharacterKind::MultiplicativeOnQuotient => Some(SubgroupKind::Multiplicative),
        _ => None,
    };
    if let Some(k) = quotient_kind {
        if subgroup.kind() != k {
            return Err(Error::GroupMismatch(format!("{kind:?} needs a {k:?} subgroup")));
        }
    }
    let group_order = match kind {
        CharacterKind::AdditiveOnQuotient => q / t,
        CharacterKind::MultiplicativeOnQuotient => (q - 1) / t,
        CharacterKind::AdditiveOnField => q,
        CharacterKind::MultiplicativeOnField => q - 1,
    };
    if index >= group_order {
        return Err(Error::CharacterIndex {
            index: index as usize,
            order: group_order as usize,
        });
    }
    let (root_order, exps) = if kind.is_additive() {
        let c = match kind {
            CharacterKind::AdditiveOnField => index,
            _ => annihilator(field, subgroup)[index as usize],
        };
        (
            field.p(),
            field.elements().map(|x| field.trace(field.mul(c, x))).collect(),
        )
    } else {
        let j = match kind {
            CharacterKind::MultiplicativeOnField => index as u64,
            _ => index as u64 * t as u64,
        };
        let m = (q - 1) as u64;
        let exps = field
            .elements()
            .map(|x| match field.log(x) {
                Some(l) => ((j * l as u64) % m) as u32,
                None => UNDEFINED,
            })
            .collect();
        (q - 1, exps)
    };
    Ok(Character {
        kind,
        index,
        group_order,
        root_order,
        exps,
    })
}

fn sum_over_nonzero(field: &Field, a: &Character, b: &Character) -> Complex64 {
    field.nonzero().map(|x| a.value(x) * b.value(x)).sum()
}

/// `Σ_{x ≠ 0} χ'(x) φ(x)` for an additive `χ'` and multiplicative `φ` on the field.
pub fn gauss_sum(field: &Field, chi: &Character, phi: &Character) -> Result<Complex64> {
    if chi.kind != CharacterKind::AdditiveOnField || phi.kind != CharacterKind::MultiplicativeOnField {
        return Err(Error::GroupMismatch(
            "gauss_sum takes an additive and a multiplicative character of the field".into(),
        ));
    }
    Ok(sum_over_nonzero(field, chi, phi))
}

/// `Γ_{χ,φ} = Σ_{z ∈ F_q^*} χ(z̄) φ(z)`. For `plus`, `χ` lives on `F_q / H` and
/// `φ` on `F_q^*`; for `times`, `χ` lives on `F_q^* / H` and `φ` on `F_q`.
pub fn gamma_sum(field: &Field, chi: &Character, phi: &Character, variant: Variant) -> Result<Complex64> {
    let expected = match variant {
        Variant::Plus => (CharacterKind::AdditiveOnQuotient, CharacterKind::MultiplicativeOnField),
        Variant::Times => (CharacterKind::MultiplicativeOnQuotient, CharacterKind::AdditiveOnField),
        v => return Err(Error::GroupMismatch(format!("no character sums for variant {v}"))),
    };
    if (chi.kind, phi.kind) != expected {
        return Err(Error::GroupMismatch(format!(
            "{variant} needs characters {:?}, got {:?}",
            expected,
            (chi.kind, phi.kind)
        )));
    }
    Ok(sum_over_nonzero(field, chi, phi))
}

/// The characters `(χ, φ)` indexing the eigenvectors `⟨χ,φ⟩` of a construction,
/// in the order `(χ index, φ index)`.
pub fn character_families(c: &Construction) -> Result<(Vec<Character>, Vec<Character>)> {
    let (f, h) = (&c.field, &c.subgroup);
    let (ck, pk) = match c.variant() {
        Variant::Plus => (CharacterKind::AdditiveOnQuotient, CharacterKind::MultiplicativeOnField),
        _ => (CharacterKind::MultiplicativeOnQuotient, CharacterKind::AdditiveOnField),
    };
    let chis = (0..h.num_cosets() as u32)
        .map(|i| make_character(f, h, ck, i))
        .collect::<Result<Vec<_>>>()?;
    let phi_order = if pk == CharacterKind::AdditiveOnField {
        f.order()
    } else {
        f.order() - 1
    };
    let phis = (0..phi_order)
        .map(|i| make_character(f, h, pk, i))
        .collect::<Result<Vec<_>>>()?;
    Ok((chis, phis))
}

/// The vector `⟨χ,φ⟩` with entry `χ(ā) φ(x)` at vertex `(ā, x)`.
pub fn character_vector(c: &Construction, chi: &Character, phi: &Character) -> Vec<Complex64> {
    c.graph
        .labels()
        .iter()
        .map(|l| chi.value(c.subgroup.representatives()[l.coset as usize]) * phi.value(l.elem))
        .collect()
}

/// Checks that `perm` is a bijection of the vertices preserving adjacency.
pub fn verify_automorphism(g: &Graph, perm: &[u32]) -> bool {
    let n = g.n();
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in perm {
        if v as usize >= n || std::mem::replace(&mut seen[v as usize], true) {
            return false;
        }
    }
    (0..n).all(|u| {
        let s = perm[u] as usize;
        g.degree(u) == g.degree(s) && g.neighbors(u).all(|w| g.has_edge(s, perm[w] as usize))
    })
}

/// Orbit representatives and orbit sizes of the group generated by `gens`.
fn orbits(n: usize, gens: &[Vec<u32>]) -> Vec<(usize, u64)> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for perm in gens {
        for u in 0..n {
            let (a, b) = (find(&mut parent, u), find(&mut parent, perm[u] as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut size: BTreeMap<usize, u64> = BTreeMap::new();
    for u in 0..n {
        let r = find(&mut parent, u);
        *size.entry(r).or_insert(0) += 1;
    }
    size.into_iter().collect()
}

/// Verified automorphism generators for an algebraic graph, empty otherwise.
fn symmetry(g: &Graph) -> Vec<Vec<u32>> {
    let m = g.meta();
    let canonical = match m.variant {
        Variant::Plus => construction::build_g_plus(m.q, m.t),
        Variant::Times => construction::build_g_times(m.q, m.t),
        _ => return Vec::new(),
    };
    match canonical {
        Ok(c) if c.graph.n() == g.n() && c.graph.labels() == g.labels() => construction::automorphism_generators(&c)
            .into_iter()
            .filter(|p| verify_automorphism(g, p))
            .collect(),
        _ => Vec::new(),
    }
}

fn mat_vec(adj: &[Vec<u32>], v: &[i128]) -> Vec<i128> {
    adj.iter().map(|row| row.iter().map(|&w| v[w as usize]).sum()).collect()
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// For each representative `r`, the chain `e_r, M e_r, ..., M^depth e_r`
/// is handed to `visit`; results are weighted by orbit size.
fn orbit_chains<T: Send>(
    g: &Graph,
    gens: &[Vec<u32>],
    depth: usize,
    visit: impl Fn(usize, &[Vec<i128>]) -> T + Sync,
) -> Vec<(u64, T)> {
    let adj = g.adjacency_lists();
    orbits(g.n(), gens)
        .into_par_iter()
        .map(|(r, size)| {
            let mut chain = Vec::with_capacity(depth + 1);
            let mut v = vec![0i128; g.n()];
            v[r] = 1;
            chain.push(v);
            for k in 0..depth {
                let next = mat_vec(&adj, &chain[k]);
                chain.push(next);
            }
            (size, visit(r, &chain))
        })
        .collect()
}

fn moments_from(g: &Graph, gens: &[Vec<u32>], jmax: usize) -> Vec<i128> {
    let depth = (jmax + 1) / 2;
    let per_rep = orbit_chains(g, gens, depth, |r, chain| {
        (0..=jmax)
            .map(|j| {
                let (a, b) = (j / 2, j - j / 2);
                if a == 0 {
                    chain[b][r]
                } else {
                    dot(&chain[a], &chain[b])
                }
            })
            .collect::<Vec<i128>>()
    });
    let mut out = vec![0i128; jmax + 1];
    for (size, m) in per_rep {
        for (o, x) in out.iter_mut().zip(m) {
            *o += size as i128 * x;
        }
    }
    out
}

/// Exact traces `tr(M^j)` for `j = 0..=jmax`, `jmax <= 6`.
pub fn eigen_moments(g: &Graph, jmax: usize) -> Result<Vec<i128>> {
    if jmax > 6 {
        return Err(Error::InvalidParameters(format!("jmax = {jmax} exceeds 6")));
    }
    Ok(moments_from(g, &symmetry(g), jmax))
}

/// Coefficients of `x (x² - q)(x² - 1)(x - (q-1))`, constant term first.
fn annihilator_poly(q: i128) -> [i128; 7] {
    [0, -q * (q - 1), q, (q + 1) * (q - 1), -(q + 1), -(q - 1), 1]
}

/// `P(M) e_u = 0` for every vertex `u`.
pub fn annihilator_holds(g: &Graph, q: u32) -> bool {
    let coeffs = annihilator_poly(q as i128);
    orbit_chains(g, &symmetry(g), 6, |_, chain| {
        (0..g.n()).all(|i| coeffs.iter().zip(chain).map(|(c, v)| c * v[i]).sum::<i128>() == 0)
    })
    .into_iter()
    .all(|(_, ok)| ok)
}

/// An eigenvalue `r + s√q` with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub rational: i64,
    pub sqrtq_coeff: i64,
    pub multiplicity: u64,
}

/// A spectral value `r + s√q` and its floating-point approximation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralValue {
    pub rational: i64,
    pub sqrtq_coeff: i64,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub variant: Variant,
    pub q: u32,
    pub t: u32,
    pub n: usize,
    /// Nonzero multiplicities in the order `q-1, √q, -√q, 1, -1, 0`.
    pub eigenvalues: Vec<Eigenvalue>,
    pub annihilator_verified: bool,
    /// `tr(M^j)` for `j = 0..=6`.
    pub moments_used: Vec<i128>,
    /// Closed-form multiplicities, stated for odd characteristic only.
    pub expected: Option<Vec<Eigenvalue>>,
    pub matches_lemma: Option<bool>,
    /// Second largest eigenvalue.
    pub lambda2: SpectralValue,
    /// Largest absolute value over all eigenvalues but one copy of `q-1`.
    pub lambda_abs: SpectralValue,
    /// Spectrum rebuilt from `|Γ_{χ,φ}|` over all character pairs agrees.
    pub character_route_agrees: bool,
    pub orbit_count: usize,
}

impl SpectrumReport {
    pub fn multiplicity(&self, rational: i64, sqrtq_coeff: i64) -> u64 {
        self.eigenvalues
            .iter()
            .find(|e| e.rational == rational && e.sqrtq_coeff == sqrtq_coeff)
            .map_or(0, |e| e.multiplicity)
    }
}

/// The six candidate eigenvalues `(r, s)` in report order.
fn candidates(q: i64) -> [(i64, i64); 6] {
    [(q - 1, 0), (0, 1), (0, -1), (1, 0), (-1, 0), (0, 0)]
}

fn approx(q: u32, (r, s): (i64, i64)) -> f64 {
    r as f64 + s as f64 * (q as f64).sqrt()
}

fn exact_div(num: i128, den: i128, what: &str) -> Result<i128> {
    if den == 0 || num % den != 0 {
        return Err(Error::MomentSystem(format!("{what} = {num}/{den} is not an integer")));
    }
    Ok(num / den)
}

fn det3(m: [[i128; 3]; 3]) -> Option<i128> {
    let t = |a: i128, b: i128, c: i128| a.checked_mul(b)?.checked_mul(c);
    let pos = t(m[0][0], m[1][1], m[2][2])?
        .checked_add(t(m[0][1], m[1][2], m[2][0])?)?
        .checked_add(t(m[0][2], m[1][0], m[2][1])?)?;
    let neg = t(m[0][2], m[1][1], m[2][0])?
        .checked_add(t(m[0][0], m[1][2], m[2][1])?)?
        .checked_add(t(m[0][1], m[1][0], m[2][2])?)?;
    pos.checked_sub(neg)
}

/// Multiplicities in candidate order from `tr(M^j)`, `j = 0..=6`.
fn solve_multiplicities(q: i128, tr: &[i128]) -> Result<[u64; 6]> {
    let overflow = || Error::MomentSystem("integer overflow".into());
    // odd powers: tr_j = A (q-1)^j + E q^((j-1)/2) + U, with E = (m₊ - m₋)√q, U = m₁ - m₋₁
    let row = |j: u32| [(q - 1).pow(j), q.pow((j - 1) / 2), 1];
    let m = [row(1), row(3), row(5)];
    let rhs = [tr[1], tr[3], tr[5]];
    let d = det3(m).ok_or_else(overflow)?;
    if d == 0 {
        return Err(Error::MomentSystem("odd-power system is singular".into()));
    }
    let mut sol = [0i128; 3];
    for (k, s) in sol.iter_mut().enumerate() {
        let mut mk = m;
        for i in 0..3 {
            mk[i][k] = rhs[i];
        }
        *s = exact_div(det3(mk).ok_or_else(overflow)?, d, "odd-power unknown")?;
    }
    let [a, e, u] = sol;
    let root = crate::primes::integer_root(q as u64, 2) as i128;
    let diff = if root * root == q {
        exact_div(e, root, "m(√q) - m(-√q)")?
    } else if e == 0 {
        0
    } else {
        return Err(Error::MomentSystem("nonzero √q-odd part with q not a square".into()));
    };
    // even powers: tr_j - A (q-1)^j = S q^(j/2) + T, with S = m₊ + m₋, T = m₁ + m₋₁
    let r2 = tr[2] - a * (q - 1).pow(2);
    let r4 = tr[4] - a * (q - 1).pow(4);
    let s = exact_div(r4 - r2, q * q - q, "m(√q) + m(-√q)")?;
    let t = r2 - s * q;
    let z = tr[0] - a - s - t;
    if tr.len() > 6 && tr[6] != a * (q - 1).pow(6) + s * q.pow(3) + t {
        return Err(Error::MomentSystem("sixth moment is inconsistent".into()));
    }
    let half = |x: i128, what| exact_div(x, 2, what);
    let mults = [
        a,
        half(s + diff, "m(√q)")?,
        half(s - diff, "m(-√q)")?,
        half(t + u, "m(1)")?,
        half(t - u, "m(-1)")?,
        z,
    ];
    let mut out = [0u64; 6];
    for (o, m) in out.iter_mut().zip(mults) {
        *o = u64::try_from(m).map_err(|_| Error::MomentSystem(format!("negative multiplicity {m}")))?;
    }
    Ok(out)
}

/// Closed-form multiplicities for odd characteristic, in candidate order.
pub fn lemma_multiplicities(variant: Variant, q: u64, t: u64) -> Option<[u64; 6]> {
    match variant {
        Variant::Plus => {
            let k = q / t - 1;
            Some([1, k * (q - 2) / 2, k * (q - 2) / 2, k / 2, k / 2, q - 2])
        }
        Variant::Times => {
            let k = (q - 1) / t - 1;
            Some([1, k * (q - 1) / 2, k * (q - 1) / 2, (q - 1) / 2, (q - 1) / 2, k])
        }
        _ => None,
    }
}

fn to_entries(q: i64, mults: &[u64; 6]) -> Vec<Eigenvalue> {
    candidates(q)
        .iter()
        .zip(mults)
        .filter(|(_, &m)| m > 0)
        .map(|(&(r, s), &m)| Eigenvalue {
            rational: r,
            sqrtq_coeff: s,
            multiplicity: m,
        })
        .collect()
}

/// Multiplicities in candidate order from the `|Γ|` values of all character
/// pairs, or `None` if some value is not near a candidate.
fn character_route(c: &Construction) -> Result<Option<[u64; 6]>> {
    let q = c.q();
    let (chis, phis) = character_families(c)?;
    let conj_of = |list: &[Character]| -> Vec<usize> {
        list.iter()
            .map(|a| list.iter().position(|b| a.is_conjugate_of(b)).unwrap())
            .collect()
    };
    let (cc, pc) = (conj_of(&chis), conj_of(&phis));
    let values: Vec<Vec<f64>> = (0..chis.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..phis.len() {
                let (ci, cj) = (cc[i], pc[j]);
                if (ci, cj) < (i, j) {
                    continue;
                }
                let gamma = sum_over_nonzero(&c.field, &chis[i], &phis[j]);
                if (ci, cj) == (i, j) {
                    out.push(gamma.re);
                } else {
                    out.extend([gamma.norm(), -gamma.norm()]);
                }
            }
            out
        })
        .collect();
    let cands = candidates(q as i64);
    let tol = 1e-6 * q as f64;
    let mut mults = [0u64; 6];
    for v in values.into_iter().flatten() {
        match cands.iter().position(|&rs| (approx(q, rs) - v).abs() < tol) {
            Some(k) => mults[k] += 1,
            None => return Ok(None),
        }
    }
    Ok(Some(mults))
}

/// Exact spectrum of a `G+` or `Gx` graph.
pub fn verify_spectrum(g: &Graph) -> Result<SpectrumReport> {
    let m = *g.meta();
    if !m.is_algebraic() {
        return Err(Error::InvalidParameters(
            "spectra are only certified for the algebraic constructions".into(),
        ));
    }
    let gens = symmetry(g);
    let q = m.q as i128;
    let coeffs = annihilator_poly(q);
    let per_rep = orbit_chains(g, &gens, 6, |r, chain| {
        let killed = (0..g.n()).all(|i| coeffs.iter().zip(chain).map(|(c, v)| c * v[i]).sum::<i128>() == 0);
        let moments: Vec<i128> = (0..=6)
            .map(|j| {
                let (a, b) = (j / 2, j - j / 2);
                if a == 0 {
                    chain[b][r]
                } else {
                    dot(&chain[a], &chain[b])
                }
            })
            .collect();
        (killed, moments)
    });
    let orbit_count = per_rep.len();
    let mut moments = vec![0i128; 7];
    let mut killed = true;
    for (size, (k, ms)) in per_rep {
        killed &= k;
        for (o, x) in moments.iter_mut().zip(ms) {
            *o += size as i128 * x;
        }
    }
    if !killed {
        return Err(Error::AnnihilatorFailed);
    }
    let mults = solve_multiplicities(q, &moments)?;
    let qi = m.q as i64;
    let eigenvalues = to_entries(qi, &mults);
    let expected = (m.p % 2 == 1)
        .then(|| lemma_multiplicities(m.variant, m.q as u64, m.t as u64))
        .flatten();
    let matches_lemma = expected.map(|e| e == mults);

    let mut sorted: Vec<(f64, (i64, i64))> = Vec::new();
    for (&rs, &k) in candidates(qi).iter().zip(&mults) {
        for _ in 0..k.min(2) {
            sorted.push((approx(m.q, rs), rs));
        }
    }
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    let value = |(x, (r, s)): (f64, (i64, i64))| SpectralValue {
        rational: r,
        sqrtq_coeff: s,
        approx: x,
    };
    let lambda2 = value(sorted.get(1).copied().unwrap_or(sorted[0]));
    let rest = &sorted[1.min(sorted.len() - 1)..];
    let lambda_abs = value(
        rest.iter()
            .copied()
            .reduce(|best, x| if x.0.abs() > best.0.abs() { x } else { best })
            .unwrap_or(sorted[0]),
    );

    let c = Construction::from_graph(g)?;
    let character_route_agrees = character_route(&c)? == Some(mults);

    Ok(SpectrumReport {
        variant: m.variant,
        q: m.q,
        t: m.t,
        n: g.n(),
        eigenvalues,
        annihilator_verified: killed,
        moments_used: moments,
        expected: expected.map(|e| to_entries(qi, &e)),
        matches_lemma,
        lambda2,
        lambda_abs,
        character_route_agrees,
        orbit_count,
    })
}
