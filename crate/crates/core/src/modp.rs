//! Characteristic-p predictions: Steinberg digits, the Jordan form of a
//! tensor product of unipotent blocks over GF(p), k_φ(x) = min{p, σ_x+1},
//! and the verdict of the size-p block bound.

use std::collections::BTreeMap;
use std::fmt;

use crate::char0::JordanType;
use crate::error::{Error, Result};
use crate::nilorbit::{
    c_of_class, d_bound, p_adic_digits, sigma, theorem1_applicable, LabelledDiagram, TauMap,
    UnipotentClass,
};
use crate::rootdata::{RootSystem, Weight};

/// The Steinberg factorization of L(w): the digit highest weights, least
/// significant first. The same digits as [`p_adic_digits`].
pub fn steinberg_digits(w: &Weight, p: u32) -> Result<Vec<Weight>> {
    p_adic_digits(w, p)
}

/// Jordan block sizes (all ≤ p) with their counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockMultiset {
    p: u32,
    counts: BTreeMap<usize, u64>,
}

impl BlockMultiset {
    pub fn new(p: u32) -> Self {
        BlockMultiset {
            p,
            counts: BTreeMap::new(),
        }
    }

    pub fn single(p: u32, size: usize) -> Result<Self> {
        let mut b = BlockMultiset::new(p);
        b.add(size, 1)?;
        Ok(b)
    }

    pub fn from_jordan_type(p: u32, jt: &JordanType) -> Result<Self> {
        let mut b = BlockMultiset::new(p);
        for (&size, &count) in &jt.counts() {
            b.add(size, count)?;
        }
        Ok(b)
    }

    pub fn add(&mut self, size: usize, count: u64) -> Result<()> {
        if size > self.p as usize {
            return Err(Error::BlockTooLarge { size, p: self.p });
        }
        if size > 0 && count > 0 {
            *self.counts.entry(size).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn count(&self, size: usize) -> u64 {
        self.counts.get(&size).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> u64 {
        self.counts.iter().map(|(s, c)| *s as u64 * c).sum()
    }

    pub fn max_block(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn to_jordan_type(&self) -> JordanType {
        JordanType::new(
            self.counts
                .iter()
                .flat_map(|(&s, &c)| std::iter::repeat_n(s, c as usize))
                .collect(),
        )
    }
}

impl fmt::Display for BlockMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_jordan_type())
    }
}

/// Jordan type of J_a ⊗ J_b over GF(p), for 1 ≤ a, b ≤ p.
///
/// With a ≤ b: if a + b ≤ p the characteristic-0 rule gives blocks
/// b−a+1, b−a+3, …, a+b−1; otherwise there are a+b−p blocks of size p and
/// the remaining p−b blocks are b−a+1, b−a+3, …, 2p−a−b−1.
pub fn tensor_blocks_mod_p(a: usize, b: usize, p: u32) -> Result<BlockMultiset> {
    let pu = p as usize;
    for s in [a, b] {
        if s > pu {
            return Err(Error::BlockTooLarge { size: s, p });
        }
    }
    let mut out = BlockMultiset::new(p);
    if a == 0 || b == 0 {
        return Ok(out);
    }
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let small = if a + b <= pu {
        a
    } else {
        out.add(pu, (a + b - pu) as u64)?;
        pu - b
    };
    for i in 1..=small {
        out.add(b - a + 2 * i - 1, 1)?;
    }
    Ok(out)
}

/// Bilinear extension of [`tensor_blocks_mod_p`] to block multisets.
pub fn tensor_type_mod_p(t1: &BlockMultiset, t2: &BlockMultiset, p: u32) -> Result<BlockMultiset> {
    for t in [t1, t2] {
        if t.p != p {
            return Err(Error::FieldMismatch(t.p, p));
        }
    }
    let mut out = BlockMultiset::new(p);
    for (&a, &ca) in &t1.counts {
        for (&b, &cb) in &t2.counts {
            for (&s, &c) in tensor_blocks_mod_p(a, b, p)?.counts() {
                out.add(s, c * ca * cb)?;
            }
        }
    }
    Ok(out)
}

/// n(x): the number of blocks of size exactly p.
pub fn size_p_count(t: &BlockMultiset, p: u32) -> u64 {
    t.count(p as usize)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub sigma: i64,
    pub wbar: Weight,
    pub c_x: i64,
    /// min(p, σ+1): the predicted largest block.
    pub k_pred: i64,
    /// σ ≥ p.
    pub p_large_for_x: bool,
    /// The rank hypotheses on (r, m).
    pub rank_hypothesis: bool,
    /// σ ≥ p−1+c_x and the rank hypotheses.
    pub theorem1_hypothesis: bool,
    pub d_bound: i64,
}

impl Prediction {
    /// p−1 ≤ σ < p−1+c_x: neither exactness nor the bound is claimed.
    pub fn in_gap(&self, p: u32) -> bool {
        let p = p as i64;
        self.sigma >= p - 1 && self.sigma < p - 1 + self.c_x
    }
}

pub fn predict(
    system: &RootSystem,
    class: &UnipotentClass,
    diagram: &LabelledDiagram,
    w: &Weight,
    p: u32,
) -> Result<Prediction> {
    if w.rank() != system.rank() {
        return Err(Error::WeightLength {
            expected: system.rank(),
            got: w.rank(),
        });
    }
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.to_string()));
    }
    if w.is_zero() {
        return Err(Error::ZeroWeight);
    }
    let map = TauMap::new(system, diagram);
    let sg = sigma(&map, w, p)?;
    let c_x = c_of_class(class, diagram)?;
    let group = class.group();
    let rank_hypothesis = theorem1_applicable(group.family(), group.rank(), class.m());
    let pi = p as i64;
    Ok(Prediction {
        sigma: sg.value,
        wbar: sg.wbar,
        c_x,
        k_pred: pi.min(sg.value + 1),
        p_large_for_x: sg.value >= pi,
        rank_hypothesis,
        theorem1_hypothesis: rank_hypothesis && sg.value >= pi - 1 + c_x,
        d_bound: d_bound(group.family(), group.rank(), class.m()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    Undetermined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Undetermined => "UNDETERMINED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictRecord {
    pub verdict: Verdict,
    /// PASS because the hypothesis does not hold.
    pub vacuous: bool,
    pub size_p_count: u64,
    pub d_bound: i64,
    pub observed_max_block: usize,
    pub k_pred: i64,
    pub sigma: i64,
    pub c_x: i64,
}

/// PASS iff the hypothesis fails or the size-p count exceeds d(r−m).
/// Hypothesis-false cases in the gap p−1 ≤ σ < p−1+c_x are UNDETERMINED.
pub fn theorem1_verdict(pred: &Prediction, observed: &BlockMultiset, p: u32) -> VerdictRecord {
    let n = size_p_count(observed, p);
    let (verdict, vacuous) = if pred.theorem1_hypothesis {
        if n as i64 > pred.d_bound {
            (Verdict::Pass, false)
        } else {
            (Verdict::Fail, false)
        }
    } else if pred.in_gap(p) {
        (Verdict::Undetermined, false)
    } else {
        (Verdict::Pass, true)
    };
    VerdictRecord {
        verdict,
        vacuous,
        size_p_count: n,
        d_bound: pred.d_bound,
        observed_max_block: observed.max_block(),
        k_pred: pred.k_pred,
        sigma: pred.sigma,
        c_x: pred.c_x,
    }
}
