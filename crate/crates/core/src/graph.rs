//! Undirected graphs with loops, stored as one adjacency bitset per vertex.
//!
//! The text format is line oriented:
//!
//! ```text
//! g2t v1 variant=plus p=3 a=2 q=9 t=3 n=24
//! v 0 0 1
//! ...
//! e 0 5
//! ...
//! ```
//!
//! Vertex lines come in index order, edge lines `e u v` have `u <= v`
//! (`e u u` is a loop) and are sorted by `(u, v)`. Every line ends in LF.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plus,
    Times,
    Random,
    Other,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plus => "plus",
            Variant::Times => "times",
            Variant::Random => "random",
            Variant::Other => "other",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(Variant::Plus),
            "times" => Ok(Variant::Times),
            "random" => Ok(Variant::Random),
            "other" => Ok(Variant::Other),
            _ => Err(Error::InvalidParameters(format!("unknown variant {s:?}"))),
        }
    }
}

/// Provenance of a graph. Field parameters are zero for non-algebraic graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub variant: Variant,
    pub p: u32,
    pub a: u32,
    pub q: u32,
    pub t: u32,
}

impl GraphMeta {
    pub fn other(t: u32) -> Self {
        Self {
            variant: Variant::Other,
            p: 0,
            a: 0,
            q: 0,
            t,
        }
    }

    pub fn random() -> Self {
        Self {
            variant: Variant::Random,
            ..Self::other(0)
        }
    }

    pub fn is_algebraic(&self) -> bool {
        matches!(self.variant, Variant::Plus | Variant::Times)
    }
}

/// Vertex label: a coset id and a field element code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub coset: u32,
    pub elem: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Vec<Label>,
    meta: GraphMeta,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl Graph {
    /// Edgeless graph whose labels are `(0, index)`.
    pub fn empty(n: usize, meta: GraphMeta) -> Self {
        let words = words_for(n);
        Self {
            n,
            words,
            rows: vec![0; n * words],
            labels: (0..n as u32).map(|i| Label { coset: 0, elem: i }).collect(),
            meta,
        }
    }

    /// Loopless complete graph.
    pub fn complete(n: usize, meta: GraphMeta) -> Self {
        let mut g = Self::empty(n, meta);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)], meta: GraphMeta) -> Result<Self> {
        let mut g = Self::empty(n, meta);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn with_labels(mut self, labels: Vec<Label>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[cfg(test)]
    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    /// Copy of this graph with the extra edges added.
    pub fn with_extra_edges(&self, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = self.clone();
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn meta(&self) -> &GraphMeta {
        &self.meta
    }
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }
    /// Number of `u64` words per adjacency row.
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn has_loop(&self, u: usize) -> bool {
        self.has_edge(u, u)
    }

    /// Row popcount; a loop contributes one.
    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(u))
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&u| self.has_loop(u)).count()
    }

    /// Edges between distinct vertices.
    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.n).map(|u| self.degree(u)).sum();
        (total - self.loop_count()) / 2
    }

    /// `|N(u) ∩ N(v)|`, where `N(u)` contains `u` itself when `u` has a loop.
    #[inline]
    pub fn common_count(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Adjacency lists, loops included.
    pub fn adjacency_lists(&self) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|u| self.neighbors(u).map(|v| v as u32).collect())
            .collect()
    }

    /// Edges `(u, v)` with `u <= v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u).filter(|&v| v >= u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let m = &self.meta;
        let mut s = String::with_capacity(16 * (self.n + self.edge_count()));
        let _ = writeln!(
            s,
            "g2t v1 variant={} p={} a={} q={} t={} n={}",
            m.variant, m.p, m.a, m.q, m.t, self.n
        );
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "v {} {} {}", i, l.coset, l.elem);
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "e {u} {v}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let fail = |line: usize, msg: &str| Error::Format {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text.split('\n').enumerate();
        let (_, header) = lines.next().ok_or_else(|| fail(1, "empty input"))?;
        let mut fields = header.split(' ');
        if fields.next() != Some("g2t") || fields.next() != Some("v1") {
            return Err(fail(1, "expected `g2t v1` header"));
        }
        let mut kv = std::collections::HashMap::new();
        for f in fields {
            let (k, v) = f.split_once('=').ok_or_else(|| fail(1, "malformed key=value"))?;
            kv.insert(k, v);
        }
        let num = |k: &str| -> Result<u64> {
            kv.get(k)
                .ok_or_else(|| fail(1, &format!("missing {k}")))?
                .parse()
                .map_err(|_| fail(1, &format!("bad value for {k}")))
        };
        let variant: Variant = kv
            .get("variant")
            .ok_or_else(|| fail(1, "missing variant"))?
            .parse()
            .map_err(|_| fail(1, "unknown variant"))?;
        let meta = GraphMeta {
            variant,
            p: num("p")? as u32,
            a: num("a")? as u32,
            q: num("q")? as u32,
            t: num("t")? as u32,
        };
        let n = num("n")? as usize;
        let mut g = Graph::empty(n, meta);
        let mut next_label = 0usize;
        let mut seen_edge = false;
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split(' ').collect();
            let parse = |s: &str| -> Result<usize> { s.parse().map_err(|_| fail(lineno, "expected an integer")) };
            match parts.as_slice() {
                ["v", i, c, e] => {
                    if seen_edge {
                        return Err(fail(lineno, "vertex line after edge lines"));
                    }
                    if parse(i)? != next_label || next_label >= n {
                        return Err(fail(lineno, "vertex lines must be 0..n in order"));
                    }
                    g.labels[next_label] = Label {
                        coset: parse(c)? as u32,
                        elem: parse(e)? as u32,
                    };
                    next_label += 1;
                }
                ["e", u, v] => {
                    seen_edge = true;
                    let (u, v) = (parse(u)?, parse(v)?);
                    if u > v || v >= n {
                        return Err(fail(lineno, "edge must satisfy u <= v < n"));
                    }
                    if g.has_edge(u, v) {
                        return Err(fail(lineno, "duplicate edge"));
                    }
                    g.insert_edge(u, v);
                }
                _ => return Err(fail(lineno, "unrecognised line")),
            }
        }
        if next_label != n {
            return Err(fail(1, "missing vertex lines"));
        }
        Ok(g)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            meta: self.meta,
            n: self.n,
            labels: self.labels.iter().map(|l| [l.coset, l.elem]).collect(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        if j.labels.len() != j.n {
            return Err(Error::InvalidParameters("label count differs from n".into()));
        }
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let labels = j
            .labels
            .iter()
            .map(|l| Label {
                coset: l[0],
                elem: l[1],
            })
            .collect();
        Ok(Graph::from_edges(j.n, &edges, j.meta)?.with_labels(labels))
    }
}

/// JSON interchange form of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub meta: GraphMeta,
    pub n: usize,
    pub labels: Vec<[u32; 2]>,
    pub edges: Vec<[usize; 2]>,
}

/// Iterator over set bits of a word slice.
pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        Self {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}
