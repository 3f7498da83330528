//! Oracles shared by the integration tests: naive enumerations and a
//! 256-bit evaluation of the Alon–Rödl product that never takes the
//! log-sum route used by the library.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use k2t_core::graph::Graph;

pub const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

pub struct Big {
    cc: Consts,
}

impl Big {
    pub fn new() -> Self {
        Self {
            cc: Consts::new().expect("constants"),
        }
    }

    pub fn f(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, PREC)
    }

    pub fn u(&self, x: u64) -> BigFloat {
        BigFloat::from_u64(x, PREC)
    }

    pub fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(PREC, RM, &mut self.cc)
    }

    pub fn e(&mut self) -> BigFloat {
        self.f(1.0).exp(PREC, RM, &mut self.cc)
    }

    pub fn pow(&mut self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.pow(y, PREC, RM, &mut self.cc)
    }

    pub fn to_f64(&mut self, x: &BigFloat) -> f64 {
        x.format(Radix::Dec, RM, &mut self.cc).unwrap().parse().unwrap()
    }

    /// log of `(emd²/(4λn log n))^(2kn log n/d) (2eλn/(md))^(km) (m/n)^(m(k-1))`,
    /// formed as a product first when the powers fit the exponent range.
    pub fn alon_rodl_log(&mut self, n: &BigFloat, d: &BigFloat, lambda: &BigFloat, k: u32, m: &BigFloat) -> f64 {
        let k = self.u(k as u64);
        let e = self.e();
        let ln_n = self.ln(n);
        let base1 = e.mul(m, PREC, RM).mul(d, PREC, RM).mul(d, PREC, RM).div(
            &self.u(4).mul(lambda, PREC, RM).mul(n, PREC, RM).mul(&ln_n, PREC, RM),
            PREC,
            RM,
        );
        let exp1 = self
            .u(2)
            .mul(&k, PREC, RM)
            .mul(n, PREC, RM)
            .mul(&ln_n, PREC, RM)
            .div(d, PREC, RM);
        let base2 =
            self.u(2)
                .mul(&e, PREC, RM)
                .mul(lambda, PREC, RM)
                .mul(n, PREC, RM)
                .div(&m.mul(d, PREC, RM), PREC, RM);
        let exp2 = k.mul(m, PREC, RM);
        let base3 = m.div(n, PREC, RM);
        let exp3 = m.mul(&k.sub(&self.u(1), PREC, RM), PREC, RM);
        let powers = [
            self.pow(&base1, &exp1),
            self.pow(&base2, &exp2),
            self.pow(&base3, &exp3),
        ];
        let product = powers[0].mul(&powers[1], PREC, RM).mul(&powers[2], PREC, RM);
        if product.is_inf() || product.is_zero() || powers.iter().any(|x| x.is_inf() || x.is_zero()) {
            // beyond the exponent range: sum the logs of the powers instead
            let mut total = self.f(0.0);
            for (b, e) in [(&base1, &exp1), (&base2, &exp2), (&base3, &exp3)] {
                total = total.add(&e.mul(&self.ln(b), PREC, RM), PREC, RM);
            }
            return self.to_f64(&total);
        }
        let l = self.ln(&product);
        self.to_f64(&l)
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Prime-power table on `0..=limit` by trial division.
pub fn prime_power_table(limit: usize) -> Vec<bool> {
    let is_prime = |x: usize| x >= 2 && (2..).take_while(|d| d * d <= x).all(|d| x % d != 0);
    (0..=limit)
        .map(|x| {
            if x < 2 {
                return false;
            }
            let p = (2..=x).find(|d| x % d == 0).unwrap();
            let mut y = x;
            while y % p == 0 {
                y /= p;
            }
            y == 1 && is_prime(p)
        })
        .collect()
}

/// Independence number by evaluating every subset; `exclude_looped` drops
/// looped vertices from consideration.
pub fn brute_force_alpha(g: &Graph, exclude_looped: bool) -> usize {
    let n = g.n();
    assert!(n <= 26);
    let adj: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).filter(|&v| v != u).fold(0u32, |a, v| a | 1 << v))
        .collect();
    let allowed: u32 = (0..n)
        .filter(|&u| !(exclude_looped && g.has_loop(u)))
        .fold(0, |a, u| a | 1 << u);
    let mut independent = vec![false; 1 << n];
    independent[0] = true;
    let mut best = 0;
    for mask in 1u32..(1u32 << n) {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let ok = independent[rest as usize] && adj[v] & rest == 0 && allowed & (1 << v) != 0;
        independent[mask as usize] = ok;
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}
