//! Arithmetic in GF(p^a) with explicit log/antilog tables.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the
//! coefficients of the residue polynomial, lowest degree first. The prime
//! subfield is therefore `0..p`, and the class of the indeterminate `X` is
//! the element `p` whenever `a >= 2`.
//!
//! The modulus is the first monic polynomial of degree `a`, ordered by the
//! integer encoding of its non-leading coefficients, that is irreducible and
//! for which `X` generates the multiplicative group. The generator is then
//! `X` itself, so subgroups spanned by powers of `X` line up with the powers
//! of the generator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes;

/// Encoded field element.
pub type Elem = u32;

/// Default cap on the number of field elements.
pub const DEFAULT_SIZE_LIMIT: u64 = 1 << 20;

/// Serializable identity of a field: enough to rebuild it bit-for-bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldId {
    pub p: u32,
    pub a: u32,
    /// Monic modulus, lowest coefficient first.
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    a: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    /// `exp[k] = generator^k` for `k` in `0..q-1`.
    exp: Vec<Elem>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// `p^i` for `i` in `0..a`.
    place: Vec<u32>,
}

impl Field {
    /// Builds GF(p^a) with the default size limit.
    pub fn new(p: u32, a: u32) -> Result<Self> {
        Self::with_limit(p, a, DEFAULT_SIZE_LIMIT)
    }

    pub fn with_limit(p: u32, a: u32, limit: u64) -> Result<Self> {
        if !primes::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if a == 0 {
            return Err(Error::ZeroDegree);
        }
        let size = (p as u64).checked_pow(a).filter(|&s| s <= limit.min(u32::MAX as u64));
        let q = match size {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge { p: p as u64, a, limit }),
        };
        let place: Vec<u32> = (0..a).map(|i| p.pow(i)).collect();
        let modulus = select_modulus(p, a)?;

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        // powers of X, reduced modulo the modulus
        let mut cur = vec![0u32; a as usize];
        cur[0] = 1;
        for k in 0..q - 1 {
            let code = encode(&cur, &place);
            if log[code as usize] != u32::MAX {
                return Err(Error::Internal(format!(
                    "X has order {k} < q-1 under the selected modulus"
                )));
            }
            log[code as usize] = k;
            exp.push(code);
            cur = poly::mul_x(&cur, &modulus, p);
        }
        if encode(&cur, &place) != 1 {
            return Err(Error::Internal("X^(q-1) != 1".into()));
        }
        let generator = exp.get(1).copied().unwrap_or(1);
        Ok(Self {
            p,
            a,
            q,
            modulus,
            generator,
            exp,
            log,
            place,
        })
    }

    /// Rebuilds a field from a serialized identity, checking the modulus.
    pub fn from_id(id: &FieldId) -> Result<Self> {
        let f = Self::new(id.p, id.a)?;
        if f.modulus != id.modulus {
            return Err(Error::InvalidParameters(format!(
                "modulus {:?} differs from the canonical {:?}",
                id.modulus, f.modulus
            )));
        }
        Ok(f)
    }

    pub fn id(&self) -> FieldId {
        FieldId {
            p: self.p,
            a: self.a,
            modulus: self.modulus.clone(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.a
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.q
    }

    /// Base-`p` digits of `x`, lowest first.
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.a as usize);
        let mut v = x;
        for _ in 0..self.a {
            d.push(v % self.p);
            v /= self.p;
        }
        d
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        encode(digits, &self.place)
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.p == 2 {
            return x ^ y;
        }
        let (p, mut x, mut y) = (self.p, x, y);
        let mut out = 0;
        for &w in &self.place {
            let s = (x % p + y % p) % p;
            out += s * w;
            x /= p;
            y /= p;
        }
        out
    }

    pub fn neg(&self, x: Elem) -> Elem {
        if self.p == 2 {
            return x;
        }
        let (p, mut x) = (self.p, x);
        let mut out = 0;
        for &w in &self.place {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        out
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x == 0 || y == 0 {
            return 0;
        }
        let s = self.log[x as usize] as u64 + self.log[y as usize] as u64;
        self.exp[(s % (self.q as u64 - 1)) as usize]
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x == 0 {
            return Err(Error::InverseOfZero);
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[x as usize]) % n) as usize])
    }

    /// `x^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut acc = 1;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x * c` for `c` in the prime subfield, given as an integer.
    pub fn scale(&self, c: u32, x: Elem) -> Elem {
        self.mul(c % self.p, x)
    }

    /// Discrete logarithm to the base of the generator.
    pub fn log(&self, x: Elem) -> Option<u32> {
        (x != 0).then(|| self.log[x as usize])
    }

    /// `generator^k`.
    pub fn exp(&self, k: u64) -> Elem {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// Absolute trace `x + x^p + ... + x^(p^(a-1))`, returned as an integer in `0..p`.
    pub fn trace(&self, x: Elem) -> u32 {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.a {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as u64);
        }
        debug_assert!(acc < self.p, "trace left the prime subfield");
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: Elem) -> Option<u64> {
        let l = self.log(x)? as u64;
        let n = self.q as u64 - 1;
        Some(n / gcd(l, n))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn encode(digits: &[u32], place: &[u32]) -> u32 {
    digits.iter().zip(place).map(|(d, w)| d * w).sum()
}

/// First monic degree-`a` polynomial (by coefficient encoding) that is
/// irreducible with `X` of order `p^a - 1`.
fn select_modulus(p: u32, a: u32) -> Result<Vec<u32>> {
    let q = (p as u64).pow(a);
    let order = q - 1;
    let cofactors: Vec<u64> = primes::prime_factors(order).into_iter().map(|r| order / r).collect();
    for code in 0..q {
        let mut f: Vec<u32> = (0..a).map(|i| ((code / (p as u64).pow(i)) % p as u64) as u32).collect();
        f.push(1);
        if !poly::is_irreducible(&f, p) {
            continue;
        }
        // residue class of X
        let mut x = vec![0u32; a as usize];
        if a == 1 {
            x[0] = (p - f[0]) % p;
        } else {
            x[1] = 1;
        }
        if x.iter().all(|&c| c == 0) {
            continue;
        }
        let primitive = cofactors.iter().all(|&e| !poly::is_one(&poly::pow_mod(&x, e, &f, p)))
            && poly::is_one(&poly::pow_mod(&x, order, &f, p));
        if primitive {
            return Ok(f);
        }
    }
    Err(Error::Internal(format!(
        "no primitive modulus of degree {a} over GF({p})"
    )))
}

/// Dense polynomials over GF(p), lowest coefficient first.
mod poly {
    fn trim(v: &mut Vec<u32>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }

    pub(super) fn is_one(v: &[u32]) -> bool {
        v.first() == Some(&1) && v[1..].iter().all(|&c| c == 0)
    }

    /// Remainder of `num` modulo the monic `den`.
    fn rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
        let dd = den.len() - 1;
        let mut r: Vec<u32> = num.to_vec();
        trim(&mut r);
        while r.len() > dd && !(r.len() == 1 && r[0] == 0) {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dd;
            for (i, &c) in den.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
            trim(&mut r);
            if r.len() - 1 < dd {
                break;
            }
        }
        r
    }

    fn mul(x: &[u32], y: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u64; x.len() + y.len() - 1];
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    /// Residue (padded to the modulus degree) of `x * y`.
    fn mul_mod(x: &[u32], y: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = rem(&mul(x, y, p), m, p);
        r.resize(m.len() - 1, 0);
        r
    }

    pub(super) fn pow_mod(x: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let deg = m.len() - 1;
        let mut acc = vec![0u32; deg];
        acc[0] = 1;
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    /// Multiply a residue by `X` and reduce modulo the monic `m`.
    pub(super) fn mul_x(v: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let deg = v.len();
        if deg == 1 {
            // degree-1 modulus X + c: X acts as -c
            let x = (p - m[0]) % p;
            return vec![(v[0] as u64 * x as u64 % p as u64) as u32];
        }
        let top = v[deg - 1];
        let mut out = vec![0u32; deg];
        for i in (1..deg).rev() {
            out[i] = v[i - 1];
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o = (*o + p - (top as u64 * m[i] as u64 % p as u64) as u32) % p;
        }
        out
    }

    /// Exhaustive check: no monic factor of degree `1..=deg/2`.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for k in 1..=deg / 2 {
            let count = (p as u64).pow(k as u32);
            for code in 0..count {
                let mut g: Vec<u32> = (0..k)
                    .map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32)
                    .collect();
                g.push(1);
                let r = rem(f, &g, p);
                if r.iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

}
