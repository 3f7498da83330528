//! Bound formulas for `r_k(K_{2,t}; K_m)`, the prime-power search and the
//! two-step lower-bound certificate built on the Alon–Rödl inequality.
//! Logarithms are natural.

use astro_float::{BigFloat, Consts, RoundingMode};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub k: u32,
    pub t: u64,
    pub m: u64,
}

impl BoundQuery {
    pub fn new(k: u32, t: u64, m: u64) -> Result<Self> {
        if k < 1 || t < 2 || m < 3 {
            return Err(Error::InvalidParameters(format!(
                "need k >= 1, t >= 2, m >= 3 (k = {k}, t = {t}, m = {m})"
            )));
        }
        Ok(Self { k, t, m })
    }
}

/// `(m-1)(t+1)`; the Ramsey number is strictly larger.
pub fn simple_lower(q: &BoundQuery) -> u64 {
    (q.m - 1) * (q.t + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KstBound {
    /// `½ sqrt(t-1) n^(3/2) + n/2`
    pub refined: f64,
    /// `sqrt(t) n^(3/2)`
    pub relaxed: f64,
}

/// Edge bounds for `K_{2,t}`-free graphs on `n` vertices.
pub fn kst_upper(n: u64, t: u64) -> Result<KstBound> {
    if t < 2 || t > n {
        return Err(Error::Domain(format!("need 2 <= t <= n (n = {n}, t = {t})")));
    }
    let (nf, tf) = (n as f64, t as f64);
    Ok(KstBound {
        refined: 0.5 * (tf - 1.0).sqrt() * nf.powf(1.5) + nf / 2.0,
        relaxed: tf.sqrt() * nf.powf(1.5),
    })
}

/// `(cn/d)(log d - ½ log(s/n))` for a graph with `n` vertices, average
/// degree `d` and `s` triangles.
pub fn aks_alpha_lower(n: f64, d: f64, s_triangles: f64, c: f64) -> Result<f64> {
    if !(n > 0.0 && d > 1.0 && s_triangles > 0.0 && c > 0.0) {
        return Err(Error::Domain(format!(
            "need n > 0, d > 1, s > 0, c > 0 (n = {n}, d = {d}, s = {s_triangles}, c = {c})"
        )));
    }
    Ok(c * n / d * (d.ln() - 0.5 * (s_triangles / n).ln()))
}

/// `(cn / 2d) log f`, when every neighbourhood spans at most `d²/f` edges.
pub fn aks_corollary_lower(n: f64, d: f64, f: f64, c: f64) -> Result<f64> {
    if !(n > 0.0 && d > 0.0 && f >= 1.0 && c > 0.0) {
        return Err(Error::Domain(format!(
            "need n > 0, d > 0, f >= 1, c > 0 (n = {n}, d = {d}, f = {f}, c = {c})"
        )));
    }
    Ok(c * n / (2.0 * d) * f.ln())
}

/// `c2 m² t / log² m` with `c2 = 256 k² / c1²`.
pub fn prop1_upper(q: &BoundQuery, c1: f64) -> Result<f64> {
    if !(c1 > 0.0 && c1 <= 1.0) {
        return Err(Error::Domain(format!("c1 = {c1} outside (0, 1]")));
    }
    let c2 = 256.0 * (q.k as f64).powi(2) / (c1 * c1);
    let m = q.m as f64;
    Ok(c2 * m * m * q.t as f64 / m.ln().powi(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Congruence {
    /// `t | q` with `q` a power of the prime dividing `t`
    Zero,
    /// `q ≡ 1 (mod t)`
    One,
}

/// Largest prime power `q` in `[lo, hi]` with the requested congruence.
pub fn find_prime_power(t: u64, congruence: Congruence, lo: u64, hi: u64) -> Option<u64> {
    if t < 1 || lo > hi {
        return None;
    }
    match congruence {
        Congruence::One => {
            if hi < 1 {
                return None;
            }
            // largest q <= hi with q ≡ 1 (mod t)
            let mut q = hi - (hi - 1) % t;
            while q >= lo.max(2) {
                if primes::prime_power(q).is_some() {
                    return Some(q);
                }
                q = q.checked_sub(t)?;
            }
            None
        }
        Congruence::Zero => {
            let (p, _) = primes::prime_power(t)?;
            let mut best = None;
            let mut q = t;
            while q <= hi {
                if q >= lo {
                    best = Some(q);
                }
                q = q.checked_mul(p)?;
            }
            best
        }
    }
}

/// `2n log n / d <= m`
pub fn alon_rodl_hypothesis(n: f64, d: f64, m: f64) -> bool {
    m >= 2.0 * n * n.ln() / d
}

fn alon_rodl_terms(n: f64, d: f64, lambda: f64, k: f64, m: f64) -> [f64; 3] {
    let ln_n = n.ln();
    [
        2.0 * k * n * ln_n / d * (1.0 + m.ln() + 2.0 * d.ln() - 4f64.ln() - lambda.ln() - n.ln() - ln_n.ln()),
        k * m * (2f64.ln() + 1.0 + lambda.ln() + n.ln() - m.ln() - d.ln()),
        m * (k - 1.0) * (m.ln() - n.ln()),
    ]
}

const PREC: usize = 256;

fn big(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

fn to_f64(x: &BigFloat, cc: &mut Consts) -> f64 {
    x.format(astro_float::Radix::Dec, RoundingMode::ToEven, cc)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(f64::NAN)
}

/// The same log-sum evaluated with 256-bit floats.
fn alon_rodl_log_lhs_extended(n: f64, d: f64, lambda: f64, k: f64, m: f64) -> f64 {
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().expect("constant cache");
    let ln = |x: &BigFloat, cc: &mut Consts| x.ln(PREC, rm, cc);
    let (bn, bd, bl, bk, bm) = (big(n), big(d), big(lambda), big(k), big(m));
    let ln_n = ln(&bn, &mut cc);
    let e = big(1.0).exp(PREC, rm, &mut cc);
    // base1 = e m d² / (4 λ n log n)
    let num1 = e.mul(&bm, PREC, rm).mul(&bd, PREC, rm).mul(&bd, PREC, rm);
    let den1 = big(4.0).mul(&bl, PREC, rm).mul(&bn, PREC, rm).mul(&ln_n, PREC, rm);
    let base1 = num1.div(&den1, PREC, rm);
    let exp1 = big(2.0)
        .mul(&bk, PREC, rm)
        .mul(&bn, PREC, rm)
        .mul(&ln_n, PREC, rm)
        .div(&bd, PREC, rm);
    // base2 = 2 e λ n / (m d)
    let base2 = big(2.0)
        .mul(&e, PREC, rm)
        .mul(&bl, PREC, rm)
        .mul(&bn, PREC, rm)
        .div(&bm.mul(&bd, PREC, rm), PREC, rm);
    let exp2 = bk.mul(&bm, PREC, rm);
    let base3 = bm.div(&bn, PREC, rm);
    let exp3 = bm.mul(&bk.sub(&big(1.0), PREC, rm), PREC, rm);
    let t1 = exp1.mul(&ln(&base1, &mut cc), PREC, rm);
    let t2 = exp2.mul(&ln(&base2, &mut cc), PREC, rm);
    let t3 = exp3.mul(&ln(&base3, &mut cc), PREC, rm);
    let total = t1.add(&t2, PREC, rm).add(&t3, PREC, rm);
    to_f64(&total, &mut cc)
}

/// Natural log of the left side of the Alon–Rödl inequality
/// `(emd²/(4λn log n))^(2kn log n/d) (2eλn/(md))^(km) (m/n)^(m(k-1))`.
/// A negative value means the inequality holds. When the three terms
/// nearly cancel the sum is recomputed in extended precision.
pub fn alon_rodl_log_lhs(n: f64, d: f64, lambda: f64, k: u32, m: f64) -> f64 {
    let k = k as f64;
    let terms = alon_rodl_terms(n, d, lambda, k, m);
    let sum: f64 = terms.iter().sum();
    let scale = terms.iter().fold(1.0f64, |a, t| a.max(t.abs()));
    if sum.abs() < 1e-6 * scale {
        alon_rodl_log_lhs_extended(n, d, lambda, k, m)
    } else {
        sum
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertVariant {
    /// two `K_{2,t}` colours: `s = 2`, `L = 8`, `m' = (n/d) log² n`
    K2,
    /// `k >= 3` colours: `s = 1`, `L = 4k`, `m' = 2k (n/d) log n`
    K3plus,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CertifyOverrides {
    pub s: Option<u32>,
    #[serde(rename = "L")]
    pub l: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaSpec {
    pub sqrtq_of: u64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub query: BoundQuery,
    pub variant: CertVariant,
    pub s: u32,
    #[serde(rename = "L")]
    pub l: f64,
    /// `ℓ = m / (L log^s(mt))`
    pub ell: f64,
    /// Search window `[ceil(ℓt/2), floor(ℓt)]` for `q`.
    pub q_window: [u64; 2],
    pub q: Option<u64>,
    pub n: Option<u64>,
    pub d: Option<u64>,
    pub lambda: Option<LambdaSpec>,
    pub m_prime: Option<f64>,
    /// `m' >= 2n log n / d`
    pub hypothesis_ok: Option<bool>,
    /// `m >= m'`
    pub step1_ok: bool,
    pub ineq_log_lhs: Option<f64>,
    pub ineq_ok: bool,
    pub certified_n: Option<u64>,
    /// `n log^(2s)(mt) / (m² t)`
    pub achieved_ratio: Option<f64>,
    pub failure: Option<String>,
    pub tool_version: String,
}

/// Runs the two-step certificate: pick a prime power `q ≡ 1 (mod t)` just
/// below `ℓt`, take `G` on `n = q(q-1)/t` vertices with `d = q-1` and
/// `λ = √q`, check `m >= m'` and the Alon–Rödl inequality at `m'`.
pub fn certify(query: &BoundQuery, variant: CertVariant, overrides: CertifyOverrides) -> Result<Certificate> {
    let (k, t, m) = (query.k, query.t, query.m as f64);
    let (s0, l0) = match variant {
        CertVariant::K2 if k != 2 => return Err(Error::InvalidParameters(format!("variant k2 needs k = 2, got {k}"))),
        CertVariant::K3plus if k < 3 => {
            return Err(Error::InvalidParameters(format!(
                "variant k3plus needs k >= 3, got {k}"
            )))
        }
        CertVariant::K2 => (2, 8.0),
        CertVariant::K3plus => (1, 4.0 * k as f64),
    };
    let s = overrides.s.unwrap_or(s0);
    let l = overrides.l.unwrap_or(l0);
    if s < 1 || !(l >= 1.0) {
        return Err(Error::InvalidParameters(format!(
            "need s >= 1 and L >= 1 (s = {s}, L = {l})"
        )));
    }
    let tf = t as f64;
    let gate = 4f64.powi(s as i32) * l * tf.ln().powi(s as i32);
    if m < gate {
        return Err(Error::Hypothesis(format!("m = {m} is below 4^s L log^s t = {gate:.3}")));
    }
    let ln_mt = (m * tf).ln();
    let ell = m / (l * ln_mt.powi(s as i32));
    let hi = (ell * tf).floor() as u64;
    let lo = ((ell * tf) / 2.0).ceil() as u64;
    let mut cert = Certificate {
        query: *query,
        variant,
        s,
        l,
        ell,
        q_window: [lo, hi],
        q: None,
        n: None,
        d: None,
        lambda: None,
        m_prime: None,
        hypothesis_ok: None,
        step1_ok: false,
        ineq_log_lhs: None,
        ineq_ok: false,
        certified_n: None,
        achieved_ratio: None,
        failure: None,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let Some(q) = find_prime_power(t, Congruence::One, lo.max(2), hi) else {
        cert.failure = Some(format!("no prime power q ≡ 1 (mod {t}) in [{lo}, {hi}]"));
        return Ok(cert);
    };
    let n = q * (q - 1) / t;
    let d = q - 1;
    let lambda = (q as f64).sqrt();
    let (nf, df) = (n as f64, d as f64);
    let m_prime = match variant {
        CertVariant::K2 => nf / df * nf.ln().powi(2),
        CertVariant::K3plus => 2.0 * k as f64 * nf / df * nf.ln(),
    };
    let log_lhs = alon_rodl_log_lhs(nf, df, lambda, k, m_prime);
    cert.q = Some(q);
    cert.n = Some(n);
    cert.d = Some(d);
    cert.lambda = Some(LambdaSpec {
        sqrtq_of: q,
        value: lambda,
    });
    cert.m_prime = Some(m_prime);
    cert.hypothesis_ok = Some(alon_rodl_hypothesis(nf, df, m_prime));
    cert.step1_ok = m >= m_prime;
    cert.ineq_log_lhs = Some(log_lhs);
    cert.ineq_ok = log_lhs < 0.0;
    cert.achieved_ratio = Some(nf * ln_mt.powi(2 * s as i32) / (m * m * tf));
    let congruent = q % t == 1 % t;
    cert.failure = if !cert.step1_ok {
        Some(format!("step 1: m = {m} < m' = {m_prime:.6}"))
    } else if cert.hypothesis_ok == Some(false) {
        Some("m' < 2n log n / d".into())
    } else if !cert.ineq_ok {
        Some(format!("inequality: log LHS = {log_lhs:.6} >= 0"))
    } else if !congruent {
        Some(format!("q = {q} is not 1 mod {t}"))
    } else {
        None
    };
    if cert.failure.is_none() {
        cert.certified_n = Some(n);
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub query: BoundQuery,
    pub simple_lower: u64,
    /// `m² t / log²(mt)`
    pub random_recipe: f64,
    pub certified_n: Option<u64>,
    pub certificate_variant: Option<CertVariant>,
    pub prop1_upper: Option<f64>,
}

/// One row of the bounds table; `c1` is needed for the upper bound.
pub fn bounds_row(query: &BoundQuery, c1: Option<f64>) -> Result<BoundsRow> {
    let (m, t) = (query.m as f64, query.t as f64);
    let variant = match query.k {
        1 => None,
        2 => Some(CertVariant::K2),
        _ => Some(CertVariant::K3plus),
    };
    let certified_n = match variant {
        Some(v) => match certify(query, v, CertifyOverrides::default()) {
            Ok(c) => c.certified_n,
            Err(Error::Hypothesis(_)) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    Ok(BoundsRow {
        query: *query,
        simple_lower: simple_lower(query),
        random_recipe: m * m * t / (m * t).ln().powi(2),
        certified_n,
        certificate_variant: variant,
        prop1_upper: c1.map(|c| prop1_upper(query, c)).transpose()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: u32, t: u64, m: u64) -> BoundQuery {
        BoundQuery::new(k, t, m).unwrap()
    }

    #[test]
    fn simple_bounds() {
        assert_eq!(simple_lower(&q(1, 2, 3)), 6);
        assert_eq!(simple_lower(&q(5, 2, 3)), 6);
        assert!(BoundQuery::new(1, 2, 1).is_err());
        assert_eq!(kst_upper(100, 2).unwrap().refined, 550.0);
        assert_eq!(kst_upper(64, 64).unwrap().relaxed, 4096.0);
        assert!(kst_upper(3, 4).is_err());
        assert!(96.0 <= kst_upper(24, 3).unwrap().relaxed);
        assert!((kst_upper(24, 3).unwrap().relaxed - 203.6).abs() < 0.1);
    }

    #[test]
    fn aks_examples() {
        let v = aks_alpha_lower(1000.0, 10.0, 100.0, 1.0).unwrap();
        assert!((v - 100.0 * (10f64.ln() - 0.5 * 0.1f64.ln())).abs() < 1e-12);
        assert!((v - 345.39).abs() < 0.01);
        assert_eq!(aks_corollary_lower(50.0, 7.0, 1.0, 1.0).unwrap(), 0.0);
        let a = aks_alpha_lower(500.0, 9.0, 40.0, 0.3).unwrap();
        let b = aks_alpha_lower(500.0, 9.0, 40.0, 0.6).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-12);
        assert!(aks_alpha_lower(10.0, 1.0, 1.0, 1.0).is_err());
        assert!(aks_alpha_lower(10.0, 2.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn prop1_examples() {
        let v = prop1_upper(&q(1, 5, 100), 1.0).unwrap();
        assert!((v - 256.0 * 5e4 / 100f64.ln().powi(2)).abs() < 1e-6);
        assert!((v - 6.036e5).abs() < 1e2);
        let w = prop1_upper(&q(2, 5, 100), 1.0).unwrap();
        assert!((w - 4.0 * v).abs() < 1e-6);
        assert!(prop1_upper(&q(1, 5, 100), 1.5).is_err());
        let m = 3f64;
        assert!(m.ln() >= 4.0 / 3.0 * m.ln().ln());
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(find_prime_power(6, Congruence::One, 30, 200), Some(199));
        assert_eq!(find_prime_power(4, Congruence::Zero, 8, 100), Some(64));
        assert_eq!(find_prime_power(1_000_000, Congruence::One, 2, 10), None);
        assert_eq!(find_prime_power(6, Congruence::Zero, 2, 1000), None);
        assert_eq!(find_prime_power(5, Congruence::One, 10, 5), None);
        assert_eq!(find_prime_power(2, Congruence::One, 2, 2), None);
        assert_eq!(find_prime_power(2, Congruence::One, 2, 3), Some(3));
    }

    #[test]
    fn alon_rodl_terms_sum() {
        let v = alon_rodl_log_lhs(10.0, 4.0, 5f64.sqrt(), 2, 5.0);
        let ext = alon_rodl_log_lhs_extended(10.0, 4.0, 5f64.sqrt(), 2.0, 5.0);
        assert!((v - ext).abs() <= 1e-9 * ext.abs());
        // d = sqrt(nt), λ = (nt)^(1/4) grid point at k = 4
        let (n, t) = (1e6, 4.0);
        let m = 2.0 * 4.0 * (n / t as f64).sqrt() * f64::ln(n);
        assert!(alon_rodl_log_lhs(n, (n * t).sqrt(), (n * t).powf(0.25), 4, m) < 0.0);
    }

    #[test]
    fn appendix_exponent_sign() {
        // (nt)^(1/4 + k/4 - (k-1)/2): exponent (3 - k)/4
        for k in 1..20i32 {
            let exp = 0.25 + k as f64 / 4.0 - (k - 1) as f64 / 2.0;
            assert_eq!(exp, (3 - k) as f64 / 4.0);
            assert_eq!(exp <= 0.0, k >= 3);
        }
    }

    #[test]
    fn certify_k2() {
        let c = certify(&q(2, 10, 1_000_000), CertVariant::K2, CertifyOverrides::default()).unwrap();
        let qv = c.q.unwrap();
        assert_eq!(qv % 10, 1);
        assert_eq!(c.n, Some(qv * (qv - 1) / 10));
        assert!(c.step1_ok && c.ineq_ok);
        assert_eq!(c.certified_n, c.n);
        assert!(c.ineq_log_lhs.unwrap() < 0.0);
        assert_eq!(c.failure, None);
    }

    #[test]
    fn certify_k3_fails_inequality_at_this_scale() {
        // At k = 3 the inequality reduces to roughly 2e⁴ / log n < 1, which
        // needs log n > 109; here n ≈ 2.7e8.
        let c = certify(&q(3, 10, 1_000_000), CertVariant::K3plus, CertifyOverrides::default()).unwrap();
        assert!(c.step1_ok);
        assert!(!c.ineq_ok && c.ineq_log_lhs.unwrap() > 0.0);
        assert_eq!(c.certified_n, None);
        let c4 = certify(&q(4, 10, 1_000_000), CertVariant::K3plus, CertifyOverrides::default()).unwrap();
        assert!(c4.certified_n.is_some());
    }

    #[test]
    fn certify_gates() {
        assert!(matches!(
            certify(&q(3, 1000, 100), CertVariant::K3plus, CertifyOverrides::default()),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            certify(&q(2, 100, 2000), CertVariant::K2, CertifyOverrides::default()),
            Err(Error::Hypothesis(_))
        ));
        assert!(certify(&q(3, 10, 10_000), CertVariant::K2, CertifyOverrides::default()).is_err());
        assert!(certify(&q(2, 10, 10_000), CertVariant::K3plus, CertifyOverrides::default()).is_err());
    }

    #[test]
    fn step1_chain_on_generated_certificates() {
        for (k, t, m) in [
            (2, 2, 5000),
            (2, 10, 100_000),
            (2, 30, 10_000_000),
            (3, 5, 100_000),
            (5, 50, 1_000_000),
            (4, 3, 50_000),
        ] {
            let v = if k == 2 { CertVariant::K2 } else { CertVariant::K3plus };
            let c = certify(&q(k, t, m), v, CertifyOverrides::default()).unwrap();
            let (Some(n), Some(mp)) = (c.n, c.m_prime) else {
                continue;
            };
            let (mf, tf) = (m as f64, t as f64);
            if 64.0 * n as f64 * (mf * tf).ln().powi(4) <= mf * mf * tf && v == CertVariant::K2 {
                assert!(mp <= mf);
            }
            if c.certified_n.is_some() {
                assert!(c.step1_ok && c.ineq_log_lhs.unwrap() < 0.0);
                let qv = c.q.unwrap();
                assert_eq!(qv % t, 1);
                assert_eq!(n, qv * (qv - 1) / t);
            }
        }
    }

    #[test]
    fn rows() {
        let r = bounds_row(&q(2, 10, 1_000_000), Some(1.0)).unwrap();
        assert_eq!(r.simple_lower, 999_999 * 11);
        assert!(r.certified_n.is_some());
        assert!(r.prop1_upper.unwrap() > r.random_recipe);
        let r = bounds_row(&q(1, 10, 1000), None).unwrap();
        assert_eq!((r.certified_n, r.prop1_upper), (None, None));
    }
}
