//! Additive and multiplicative subgroups of a finite field and their cosets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubgroupKind {
    Additive,
    Multiplicative,
}

/// A subgroup `H` together with the partition of its ambient group into
/// cosets. Coset ids are assigned in increasing order of the smallest
/// element code in each coset, so coset `0` is always `H` itself.
#[derive(Clone, Debug)]
pub struct Subgroup {
    kind: SubgroupKind,
    order: u32,
    elements: Vec<Elem>,
    coset_of: Vec<u32>,
    reps: Vec<Elem>,
}

pub const NO_COSET: u32 = u32::MAX;

impl Subgroup {
    /// Additive subgroups have order `p^b` and are the GF(p)-span of
    /// `X, X^2, ..., X^b`; multiplicative subgroups are `<g^((q-1)/order)>`.
    pub fn new(field: &Field, kind: SubgroupKind, order: u32) -> Result<Self> {
        match kind {
            SubgroupKind::Additive => Self::additive(field, order),
            SubgroupKind::Multiplicative => Self::multiplicative(field, order),
        }
    }

    fn additive(field: &Field, order: u32) -> Result<Self> {
        let p = field.p();
        let mut b = 0;
        let mut v = 1u64;
        while v < order as u64 {
            v *= p as u64;
            b += 1;
        }
        if v != order as u64 || b > field.degree() {
            return Err(Error::InvalidSubgroupOrder {
                order: order as u64,
                reason: format!("additive order must be p^b with b <= {}", field.degree()),
            });
        }
        let mut elements = vec![0];
        let mut basis = field.generator();
        for _ in 0..b {
            let current = elements.clone();
            for c in 1..p {
                let shift = field.scale(c, basis);
                elements.extend(current.iter().map(|&h| field.add(h, shift)));
            }
            basis = field.mul(basis, field.generator());
        }
        elements.sort_unstable();
        elements.dedup();
        if elements.len() != order as usize {
            return Err(Error::Internal("spanning set was dependent".into()));
        }
        let q = field.order() as usize;
        let mut coset_of = vec![NO_COSET; q];
        let mut reps = Vec::new();
        for x in field.elements() {
            if coset_of[x as usize] != NO_COSET {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &h in &elements {
                coset_of[field.add(x, h) as usize] = id;
            }
        }
        Ok(Self {
            kind: SubgroupKind::Additive,
            order,
            elements,
            coset_of,
            reps,
        })
    }

    fn multiplicative(field: &Field, order: u32) -> Result<Self> {
        let n = field.order() - 1;
        if order == 0 || n % order != 0 {
            return Err(Error::InvalidSubgroupOrder {
                order: order as u64,
                reason: format!("multiplicative order must divide q-1 = {n}"),
            });
        }
        let step = n / order;
        let mut elements: Vec<Elem> = (0..order).map(|k| field.exp((k * step) as u64)).collect();
        elements.sort_unstable();
        let mut coset_of = vec![NO_COSET; field.order() as usize];
        let mut reps = Vec::new();
        for x in field.nonzero() {
            if coset_of[x as usize] != NO_COSET {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &h in &elements {
                coset_of[field.mul(x, h) as usize] = id;
            }
        }
        Ok(Self {
            kind: SubgroupKind::Multiplicative,
            order,
            elements,
            coset_of,
            reps,
        })
    }

    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }
    pub fn order(&self) -> u32 {
        self.order
    }
    /// Sorted element codes.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }
    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
    /// Coset id of `x`; `None` for zero in the multiplicative case.
    pub fn coset(&self, x: Elem) -> Option<u32> {
        let c = self.coset_of[x as usize];
        (c != NO_COSET).then_some(c)
    }
    /// Raw coset table indexed by element code (`NO_COSET` for zero in the
    /// multiplicative case).
    pub fn coset_table(&self) -> &[u32] {
        &self.coset_of
    }
    pub fn num_cosets(&self) -> usize {
        self.reps.len()
    }
    /// Smallest element of each coset, indexed by coset id.
    pub fn representatives(&self) -> &[Elem] {
        &self.reps
    }
}
