use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};

/// Finitely supported sequence `p = (p_1, p_2, …)` of nonnegative integers.
///
/// Stored densely with trailing zeros trimmed, so equal sequences compare
/// equal and the derived order is lexicographic on `(p_1, p_2, …)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct PartitionSeq(Vec<u32>);

impl PartitionSeq {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        PartitionSeq(entries)
    }

    pub fn empty() -> Self {
        PartitionSeq(Vec::new())
    }

    /// `p_s` for `s ≥ 1`; zero past the stored support.
    pub fn get(&self, s: usize) -> u32 {
        if s == 0 {
            return 0;
        }
        self.0.get(s - 1).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `w(p) = Σ s·p_s`.
    pub fn weight(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &c)| (i + 1) * c as usize).sum()
    }

    /// `j(p) = Σ p_s`.
    pub fn length(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    /// Nonzero `(s, p_s)` pairs in increasing `s`.
    pub fn parts(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i + 1, c))
    }
}

impl fmt::Display for PartitionSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A pair `(p, q)`: `p` indexes derivatives of `f`, `q` those of `f̄`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PartitionPair {
    pub p: PartitionSeq,
    pub q: PartitionSeq,
}

impl PartitionPair {
    pub fn new(p: PartitionSeq, q: PartitionSeq) -> Self {
        PartitionPair { p, q }
    }

    pub fn weight(&self) -> usize {
        self.p.weight() + self.q.weight()
    }

    /// Whether the pair lies in `D̂_{hkw}`.
    pub fn is_in(&self, h: usize, k: usize, w: usize) -> bool {
        self.p.length() == h && self.q.length() == k && self.weight() == w
    }
}

impl fmt::Display for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

// Fills counts[s-1] for s = top down to 1 so that Σ counts = j and Σ s·counts = w.
fn descend(top: usize, j: usize, w: usize, counts: &mut Vec<u32>, out: &mut Vec<PartitionSeq>) {
    if top == 0 {
        if j == 0 && w == 0 {
            out.push(PartitionSeq::new(counts.clone()));
        }
        return;
    }
    if top == 1 {
        if j == w {
            counts[0] = j as u32;
            out.push(PartitionSeq::new(counts.clone()));
            counts[0] = 0;
        }
        return;
    }
    // remaining j parts each have size ≥ 1, so at most (w − j)/(top − 1) of them can be `top`
    let max_c = j.min(w / top).min((w - j) / (top - 1));
    for c in 0..=max_c {
        counts[top - 1] = c as u32;
        descend(top - 1, j - c, w - top * c, counts, out);
    }
    counts[top - 1] = 0;
}

// D_{jw} including the degenerate j = 0 = w case (the single empty sequence).
pub(crate) fn djw_all(j: usize, w: usize) -> Vec<PartitionSeq> {
    if j > w || (j == 0) != (w == 0) {
        return Vec::new();
    }
    if j == 0 {
        return vec![PartitionSeq::empty()];
    }
    let top = w - j + 1;
    let mut counts = vec![0u32; top];
    let mut out = Vec::new();
    descend(top, j, w, &mut counts, &mut out);
    out.sort();
    out
}

/// `D_{jw}`: all `p` with `Σ p_s = j` and `Σ s·p_s = w`, in lexicographic order.
pub fn enumerate_djw(j: usize, w: usize) -> Result<Vec<PartitionSeq>> {
    if j == 0 || j > w {
        return Err(domain(format!("D_{{j w}} needs 1 ≤ j ≤ w, got j={j}, w={w}")));
    }
    Ok(djw_all(j, w))
}

/// `D̂_{hkw}`: all pairs with `j(p) = h`, `j(q) = k`, `w(p) + w(q) = w`,
/// ordered lexicographically by `(p, q)`.
pub fn enumerate_dhkw(h: usize, k: usize, w: usize) -> Result<Vec<PartitionPair>> {
    if h + k == 0 || h + k > w {
        return Err(domain(format!(
            "D̂_{{h k w}} needs 1 ≤ h + k ≤ w, got h={h}, k={k}, w={w}"
        )));
    }
    let mut out = Vec::new();
    for wp in h..=(w - k) {
        let ps = djw_all(h, wp);
        if ps.is_empty() {
            continue;
        }
        let qs = djw_all(k, w - wp);
        for p in &ps {
            for q in &qs {
                out.push(PartitionPair::new(p.clone(), q.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}
