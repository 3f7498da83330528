//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any criterion fails.
//!
//! `cargo test -p k2t-verify --test acceptance -- --long` (or `K2T_LONG=1`)
//! adds the optional α runs for G+(512,256) and G+(1024,512).

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_force_alpha, prime_power_table, rel_err, Big};
use k2t_core::bounds::{self, BoundQuery, CertVariant, Certificate, CertifyOverrides, Congruence};
use k2t_core::construction::{build_g_plus, build_g_times, structural_audit, Construction};
use k2t_core::graph::{Graph, Variant};
use k2t_core::independence::{
    conjecture_check, explicit_qr_set, max_independent_set_exact, verify_independent, Budget, ConjectureFamily,
    LoopSemantics,
};
use k2t_core::primes;
use k2t_core::random::{lemma_parameters, monte_carlo_check, sample_gnp};
use k2t_core::spectral::{
    character_families, gamma_sum, gauss_sum, lemma_multiplicities, make_character, verify_spectrum, Character,
    CharacterKind,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn g_plus_cases() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for q in [4u32, 8, 9, 16, 25, 27, 32, 64, 81, 128] {
        let (p, a) = primes::prime_power(q as u64).unwrap();
        for b in 1..=a {
            out.push((q, (p as u32).pow(b)));
        }
    }
    out
}

fn g_times_cases() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for q in [5u32, 7, 9, 11, 13, 25, 49, 81, 121] {
        for t in 2..q {
            if (q - 1) % t == 0 {
                out.push((q, t));
            }
        }
    }
    out
}

fn all_constructions() -> impl Iterator<Item = Construction> {
    g_plus_cases()
        .into_iter()
        .map(|(q, t)| build_g_plus(q, t).unwrap())
        .chain(g_times_cases().into_iter().map(|(q, t)| build_g_times(q, t).unwrap()))
}

fn label(c: &Construction) -> String {
    let v = if c.variant() == Variant::Plus { "G+" } else { "Gx" };
    format!("{v}({},{})", c.q(), c.t())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total = 0;
    for c in all_constructions() {
        total += 1;
        let r = structural_audit(&c.graph);
        let q = c.q() as usize;
        let mut bad = Vec::new();
        if !r.n_ok {
            bad.push("n".to_string());
        }
        if !r.regular_ok {
            bad.push("regularity".into());
        }
        if r.loop_count != q - 1 {
            bad.push(format!("loops={}", r.loop_count));
        }
        if !r.exact_t_all_pairs {
            bad.push(format!("common-nbhd histogram {:?}", r.common_nbhd_histogram));
        }
        if !r.k2t1_free {
            bad.push("K_{2,t+1} found".into());
        }
        if !bad.is_empty() {
            failures.push(format!("{}: {}", label(&c), bad.join(", ")));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = failures.is_empty() && secs < 60.0;
    let mut detail = format!(
        "{} graphs audited in {secs:.1}s, {} with failed checks",
        total,
        failures.len()
    );
    for f in failures.iter().take(6) {
        detail.push_str(&format!("\n      {f}"));
    }
    if failures.len() > 6 {
        detail.push_str(&format!("\n      ... {} more", failures.len() - 6));
    }
    outcome(pass, detail)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut odd = 0;
    let mut total = 0;
    for c in all_constructions() {
        total += 1;
        let r = match verify_spectrum(&c.graph) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("{}: {e}", label(&c)));
                continue;
            }
        };
        if !r.annihilator_verified {
            bad.push(format!("{}: annihilator", label(&c)));
        }
        if c.field.p() != 2 {
            odd += 1;
            if r.matches_lemma != Some(true) {
                bad.push(format!("{}: multiplicities {:?}", label(&c), r.eigenvalues));
            }
        }
    }
    let g93 = verify_spectrum(&build_g_plus(9, 3).unwrap().graph).unwrap();
    let want93 = [(8, 0, 1), (0, 1, 7), (0, -1, 7), (1, 0, 1), (-1, 0, 1), (0, 0, 7)];
    if want93.iter().any(|&(r, s, m)| g93.multiplicity(r, s) != m) {
        bad.push(format!("G+(9,3) spectrum {:?}", g93.eigenvalues));
    }
    let g73 = verify_spectrum(&build_g_times(7, 3).unwrap().graph).unwrap();
    let want73 = [(6, 0, 1), (0, 1, 3), (0, -1, 3), (1, 0, 3), (-1, 0, 3), (0, 0, 1)];
    if want73.iter().any(|&(r, s, m)| g73.multiplicity(r, s) != m) {
        bad.push(format!("Gx(7,3) spectrum {:?}", g73.eigenvalues));
    }
    if lemma_multiplicities(Variant::Plus, 9, 3).is_none() {
        bad.push("no closed form for G+(9,3)".into());
    }
    let secs = start.elapsed().as_secs_f64();
    let mut detail = format!("{total} graphs ({odd} odd p) in {secs:.1}s");
    for b in &bad {
        detail.push_str(&format!("\n      {b}"));
    }
    outcome(bad.is_empty() && secs < 120.0, detail)
}

/// `|Σ| = √q` when both characters are non-principal. With exactly one
/// principal, the sum over `F_q^*` of the other is `-1` if it is additive
/// and `0` if it is multiplicative.
fn sum_ok(g: Complex64, a: &Character, b: &Character, q: u32) -> bool {
    let sq = (q as f64).sqrt();
    match (a.is_principal(), b.is_principal()) {
        (false, false) => (g.norm() - sq).abs() <= 1e-9 * sq,
        (true, true) => (g - (q - 1) as f64).norm() <= 1e-9,
        (true, false) | (false, true) => {
            let other = if a.is_principal() { b } else { a };
            let exact = if other.kind().is_additive() { -1.0 } else { 0.0 };
            (g - exact).norm() <= 1e-9
        }
    }
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let mut pairs = 0u64;
    for q in [5u32, 7, 9, 11, 13, 25] {
        // any construction over GF(q) supplies the field and a subgroup
        let c = if q == 9 || q == 25 {
            build_g_plus(q, (q as f64).sqrt() as u32).unwrap()
        } else {
            build_g_times(q, 2).unwrap()
        };
        let f = &c.field;
        for i in 0..q {
            let chi = make_character(f, &c.subgroup, CharacterKind::AdditiveOnField, i).unwrap();
            for j in 0..q - 1 {
                let phi = make_character(f, &c.subgroup, CharacterKind::MultiplicativeOnField, j).unwrap();
                let g = gauss_sum(f, &chi, &phi).unwrap();
                pairs += 1;
                let ok = sum_ok(g, &chi, &phi, q);
                if !ok {
                    bad.push(format!("q={q} χ'={i} φ={j}: {g}"));
                }
            }
        }
        // Γ sums of every construction over this field
        let mut cons = Vec::new();
        let (p, _) = primes::prime_power(q as u64).unwrap();
        let mut t = p as u32;
        while t <= q {
            cons.push(build_g_plus(q, t).unwrap());
            t *= p as u32;
        }
        for t in 2..q {
            if (q - 1) % t == 0 {
                cons.push(build_g_times(q, t).unwrap());
            }
        }
        for c in cons {
            let (chis, phis) = character_families(&c).unwrap();
            for chi in &chis {
                for phi in &phis {
                    let g = gamma_sum(&c.field, chi, phi, c.variant()).unwrap();
                    pairs += 1;
                    if !sum_ok(g, chi, phi, q) {
                        bad.push(format!("{} Γ({}, {}) = {g}", label(&c), chi.index(), phi.index()));
                    }
                }
            }
        }
    }
    let mut detail = format!("{pairs} character pairs checked");
    for b in bad.iter().take(5) {
        detail.push_str(&format!("\n      {b}"));
    }
    outcome(bad.is_empty(), detail)
}

fn alpha_of(q: u32, t: u32, semantics: LoopSemantics, secs: f64) -> (Graph, k2t_core::independence::AlphaResult, f64) {
    let g = build_g_plus(q, t).unwrap().graph;
    let start = Instant::now();
    let r = max_independent_set_exact(
        &g,
        Budget {
            max_nodes: u64::MAX,
            max_secs: secs,
        },
        semantics,
    );
    (g, r, start.elapsed().as_secs_f64())
}

fn criterion_4(long: bool) -> Outcome {
    let budget = Budget {
        max_nodes: u64::MAX,
        max_secs: 300.0,
    };
    let r3 = conjecture_check(ConjectureFamily::EvenChar { a: 3 }, budget).unwrap();
    let r4 = conjecture_check(ConjectureFamily::EvenChar { a: 4 }, budget).unwrap();
    let common: Vec<LoopSemantics> = r3
        .reproducing_semantics
        .iter()
        .copied()
        .filter(|s| r4.reproducing_semantics.contains(s))
        .collect();
    let Some(&sem) = common.first() else {
        return outcome(
            false,
            "no loop semantics reproduces both α(G+(8,4)) = 4 and α(G+(16,8)) = 5",
        );
    };
    let mut cases = vec![
        (8, 4, 4),
        (16, 8, 5),
        (64, 32, 8),
        (9, 3, 8),
        (25, 5, 24),
        (128, 64, 9),
        (256, 128, 16),
    ];
    if long {
        cases.push((512, 256, 17));
        cases.push((1024, 512, 32));
    }
    let mut parts = Vec::new();
    let mut pass = true;
    for (q, t, want) in cases {
        let limit = if q >= 128 { 3600.0 } else { 300.0 };
        let (g, r, secs) = alpha_of(q, t, sem, limit);
        let ok = r.exact && r.lower == want && verify_independent(&g, &r.witness, sem);
        pass &= ok;
        parts.push(if r.exact {
            format!("G+({q},{t})={} [{:.2}s]", r.lower, secs)
        } else {
            format!("G+({q},{t}) in [{},{}] after {:.0}s", r.lower, r.upper, secs)
        });
    }
    let mut detail = format!("semantics {sem}: {}", parts.join(", "));
    if !long {
        detail.push_str("; a = 9, 10 run only with --long");
    }
    outcome(pass, detail)
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut pass = true;
    for p in [3u32, 5, 7, 11] {
        let s = explicit_qr_set(p).unwrap();
        let g = build_g_plus(p * p, p).unwrap().graph;
        let ok = verify_independent(&g, &s, LoopSemantics::IgnoreLoops) && s.len() == (p * p / 2) as usize;
        pass &= ok;
        parts.push(format!("p={p}: |S|={}", s.len()));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(pass && secs < 10.0, format!("{} [{secs:.2}s]", parts.join(", ")))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut mismatches = Vec::new();
    for i in 0..100u64 {
        let n = rng.gen_range(1..=24usize);
        let p = rng.gen_range(0.05..0.9);
        let mut g = sample_gnp(n, p, 1000 + i).unwrap();
        if i % 3 == 0 {
            let loops: Vec<(usize, usize)> = (0..n).filter(|_| rng.gen_bool(0.3)).map(|v| (v, v)).collect();
            g = g.with_extra_edges(&loops).unwrap();
        }
        for (sem, excl) in [
            (LoopSemantics::IgnoreLoops, false),
            (LoopSemantics::ExcludeLooped, true),
        ] {
            let r = max_independent_set_exact(&g, Budget::default(), sem);
            let want = brute_force_alpha(&g, excl);
            if !r.exact || r.lower != want || !verify_independent(&g, &r.witness, sem) {
                mismatches.push(format!("graph {i} (n={n}, {sem}): got {} want {want}", r.lower));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let mut detail = format!(
        "100 graphs, both semantics, {} mismatches [{secs:.1}s]",
        mismatches.len()
    );
    for m in mismatches.iter().take(5) {
        detail.push_str(&format!("\n      {m}"));
    }
    outcome(mismatches.is_empty() && secs < 120.0, detail)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let recipe = lemma_parameters(100, 10, Some(1.0), 7).unwrap();
    let r = monte_carlo_check(
        &recipe,
        50,
        Budget {
            max_nodes: 1_000_000,
            max_secs: 5.0,
        },
    );
    let expected = r.expected.map(|e| e.log_value.exp());
    let free_needed = expected.map_or(false, |e| e < 0.1);
    let pass = r.count_within_3x == Some(true)
        && (!free_needed || r.free_fraction_ok == Some(true))
        && r.edge_count_4sigma_ok
        && start.elapsed() < Duration::from_secs(300);
    outcome(
        pass,
        format!(
            "n={} p={:.4e}: mean copies {:.3e} vs expected {:.3e}, free fraction {:.2}, edge 4σ {} [{:.1}s]",
            recipe.n,
            recipe.p,
            r.mean_k2t_copies,
            expected.unwrap_or(f64::NAN),
            r.free_fraction,
            r.edge_count_4sigma_ok,
            start.elapsed().as_secs_f64()
        ),
    )
}

/// Replays a certificate's recorded values against the 256-bit oracle.
fn replay(big: &mut Big, c: &Certificate) -> Result<(), String> {
    let (Some(q), Some(n), Some(d), Some(mp), Some(log_lhs)) = (c.q, c.n, c.d, c.m_prime, c.ineq_log_lhs) else {
        return Err(format!("missing values ({:?})", c.failure));
    };
    let t = c.query.t;
    if n != q * (q - 1) / t || d != q - 1 || primes::prime_power(q).is_none() || q % t != 1 {
        return Err("graph parameters".into());
    }
    let (bn, bd) = (big.u(n), big.u(d));
    let lambda = big.u(q).sqrt(common::PREC, astro_float::RoundingMode::ToEven);
    let ln_n = big.ln(&bn);
    let ratio = bn.div(&bd, common::PREC, astro_float::RoundingMode::ToEven);
    let rm = astro_float::RoundingMode::ToEven;
    let m_prime = match c.variant {
        CertVariant::K2 => ratio.mul(&ln_n, common::PREC, rm).mul(&ln_n, common::PREC, rm),
        CertVariant::K3plus => big
            .u(2 * c.query.k as u64)
            .mul(&ratio, common::PREC, rm)
            .mul(&ln_n, common::PREC, rm),
    };
    let mp_big = big.to_f64(&m_prime);
    if rel_err(mp, mp_big) > 1e-9 {
        return Err(format!("m' {mp} vs {mp_big}"));
    }
    if (c.query.m as f64 >= mp) != c.step1_ok {
        return Err("step 1 flag".into());
    }
    let oracle = big.alon_rodl_log(&bn, &bd, &lambda, c.query.k, &m_prime);
    if rel_err(log_lhs, oracle) > 1e-9 {
        return Err(format!("log-LHS {log_lhs} vs {oracle}"));
    }
    if (oracle < 0.0) != c.ineq_ok {
        return Err("inequality flag".into());
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut big = Big::new();
    let mut notes = Vec::new();
    let mut pass = true;
    let mut positive = Vec::new();
    for k in [3u32, 4, 5] {
        for t in [4.0f64, 16.0] {
            for n in [1e6f64, 1e8] {
                let m = 2.0 * k as f64 * (n / t).sqrt() * n.ln();
                let v = bounds::alon_rodl_log_lhs(n, (n * t).sqrt(), (n * t).powf(0.25), k, m);
                if !(v < 0.0) {
                    positive.push(format!("k={k},t={t},n={n:e}: {v:.1}"));
                }
            }
        }
    }
    if !positive.is_empty() {
        pass = false;
        notes.push(format!(
            "grid points with non-negative log-LHS: {}",
            positive.join("; ")
        ));
    }
    for (k, variant) in [(2u32, CertVariant::K2), (3, CertVariant::K3plus)] {
        let q = BoundQuery::new(k, 10, 1_000_000).unwrap();
        let c = bounds::certify(&q, variant, CertifyOverrides::default()).unwrap();
        match replay(&mut big, &c) {
            Ok(()) => notes.push(format!(
                "k={k}: q={} n={} log-LHS {:.2} replays; certified_n={:?}",
                c.q.unwrap(),
                c.n.unwrap(),
                c.ineq_log_lhs.unwrap(),
                c.certified_n
            )),
            Err(e) => {
                pass = false;
                notes.push(format!("k={k}: replay failed: {e}"));
            }
        }
        if c.certified_n.is_none() {
            pass = false;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        pass && secs < 10.0,
        format!("[{secs:.1}s]\n      {}", notes.join("\n      ")),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let limit = 100_000usize;
    let table = prime_power_table(limit);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    let mut checks = 0;
    for t in 2..=50u64 {
        let mut windows = vec![(2u64, limit as u64)];
        for _ in 0..200 {
            let a = rng.gen_range(2..=limit as u64);
            let b = rng.gen_range(2..=limit as u64);
            windows.push((a.min(b), a.max(b)));
        }
        for _ in 0..50 {
            let lo = rng.gen_range(2..=limit as u64 - 300);
            windows.push((lo, lo + rng.gen_range(0..300)));
        }
        let p_of_t = primes::prime_power(t).map(|(p, _)| p);
        for (lo, hi) in windows {
            checks += 1;
            let one = (lo..=hi).rev().find(|&q| table[q as usize] && q % t == 1);
            if bounds::find_prime_power(t, Congruence::One, lo, hi) != one {
                bad.push(format!("t={t} one [{lo},{hi}]"));
            }
            let zero = p_of_t.and_then(|p| (lo..=hi).rev().find(|&q| table[q as usize] && q % t == 0 && q % p == 0));
            if bounds::find_prime_power(t, Congruence::Zero, lo, hi) != zero {
                bad.push(format!("t={t} zero [{lo},{hi}]"));
            }
        }
    }
    let example = bounds::find_prime_power(6, Congruence::One, 30, 200);
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && example == Some(199) && secs < 30.0,
        format!(
            "{checks} windows, {} disagreements, (6, ≡1, [30,200]) -> {example:?} [{secs:.1}s]",
            bad.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let rm = astro_float::RoundingMode::ToEven;
    let pr = common::PREC;
    let mut big = Big::new();
    let mut worst: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..20 {
        let (k, t, m) = (
            rng.gen_range(1..8u32),
            rng.gen_range(2..200u64),
            rng.gen_range(3..10_000_000u64),
        );
        let c1: f64 = rng.gen_range(0.01..=1.0);
        let v = bounds::prop1_upper(&BoundQuery::new(k, t, m).unwrap(), c1).unwrap();
        let lnm = big.ln(&big.u(m));
        let c1b = big.f(c1);
        let oracle = big
            .u(256 * k as u64 * k as u64)
            .div(&c1b.mul(&c1b, pr, rm), pr, rm)
            .mul(&big.u(m).mul(&big.u(m), pr, rm), pr, rm)
            .mul(&big.u(t), pr, rm)
            .div(&lnm.mul(&lnm, pr, rm), pr, rm);
        worst = worst.max(rel_err(v, big.to_f64(&oracle)));

        let n: f64 = rng.gen_range(10.0..1e7f64).round();
        let d: f64 = rng.gen_range(2.0..n.min(1e4)).round();
        let s: f64 = rng.gen_range(1.0..1e9f64).round();
        let c: f64 = rng.gen_range(0.01..2.0);
        let v = bounds::aks_alpha_lower(n, d, s, c).unwrap();
        let half = big.f(0.5);
        let inner = big
            .ln(&big.f(d))
            .sub(&half.mul(&big.ln(&big.f(s).div(&big.f(n), pr, rm)), pr, rm), pr, rm);
        let oracle = big
            .f(c)
            .mul(&big.f(n), pr, rm)
            .div(&big.f(d), pr, rm)
            .mul(&inner, pr, rm);
        worst = worst.max(rel_err(v, big.to_f64(&oracle)));
    }
    let simple = bounds::simple_lower(&BoundQuery::new(1, 2, 3).unwrap());
    let kst = bounds::kst_upper(100, 2).unwrap().refined;
    let secs = start.elapsed().as_secs_f64();
    outcome(
        simple == 6 && kst == 550.0 && worst <= 1e-12 && secs < 5.0,
        format!("simple_lower={simple}, kst_upper={kst}, worst relative error {worst:.2e} [{secs:.2}s]"),
    )
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        // cargo test --list probes every target
        return;
    }
    let long = args.iter().any(|a| a == "--long") || std::env::var_os("K2T_LONG").is_some();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 construction audit", Box::new(criterion_1)),
        ("2 spectrum", Box::new(criterion_2)),
        ("3 Gauss sums", Box::new(criterion_3)),
        ("4 independence values", Box::new(move || criterion_4(long))),
        ("5 explicit independent set", Box::new(criterion_5)),
        ("6 MIS vs brute force", Box::new(criterion_6)),
        ("7 random model", Box::new(criterion_7)),
        ("8 inequality pipeline", Box::new(criterion_8)),
        ("9 prime-power search", Box::new(criterion_9)),
        ("10 bound formulas", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {} failed", failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
