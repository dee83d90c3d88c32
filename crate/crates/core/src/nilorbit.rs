//! Unipotent classes of order p, their labelled Dynkin diagrams, and the
//! integer invariants attached to them: τ_x, σ_x, c_x and d(r−m).

use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rootdata::{natural_dim, Family, GroupType, RootSystem, Weight};

/// True iff `p` is an odd prime.
pub fn is_odd_prime(p: u32) -> bool {
    p > 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}

/// Checks that `parts` is a Jordan partition of the natural module of
/// `group`: the right total and the orthogonal/symplectic parity rule.
/// Returns the parts sorted in weakly decreasing order.
pub fn check_partition(group: GroupType, parts: &[usize]) -> Result<Vec<usize>> {
    let mut parts: Vec<usize> = parts.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let expected = group.natural_dim();
    let got: usize = parts.iter().sum();
    if got != expected || parts.contains(&0) {
        return Err(Error::BadPartitionSum { expected, got });
    }
    let bad_parity = |want_even: bool| {
        parts
            .iter()
            .filter(|&&d| (d % 2 == 0) == want_even)
            .any(|&d| parts.iter().filter(|&&e| e == d).count() % 2 == 1)
    };
    let violation = match group.family() {
        Family::A => None,
        Family::B | Family::D => bad_parity(true).then_some("even parts need even multiplicity"),
        Family::C => bad_parity(false).then_some("odd parts need even multiplicity"),
    };
    if let Some(reason) = violation {
        return Err(Error::ParityViolation {
            family: group.family().letter(),
            partition: parts,
            reason: reason.to_string(),
        });
    }
    Ok(parts)
}

/// The conjugacy class of an element of order p, given by its Jordan
/// partition on the natural module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnipotentClass {
    group: GroupType,
    p: u32,
    partition: Vec<usize>,
    m: usize,
}

impl UnipotentClass {
    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    /// Smallest rank of a naturally embedded subgroup of the same type
    /// containing the class.
    pub fn m(&self) -> usize {
        self.m
    }

    /// A_m-regular classes and their analogues: `[natural size of G_m]`
    /// padded with 1s.
    pub fn regular_in(group: GroupType, m: usize, p: u32) -> Result<Self> {
        let big = natural_dim(group.family(), m);
        let mut parts = match group.family() {
            Family::D => vec![big - 1, 1],
            _ => vec![big],
        };
        parts.resize(parts.len() + group.natural_dim().saturating_sub(big), 1);
        validate_class(group, p, &parts)
    }
}

impl fmt::Display for UnipotentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partition.iter().map(|d| d.to_string()).collect();
        write!(f, "{}[{}]", self.group, parts.join(","))
    }
}

/// Minimal rank m such that the non-trivial parts, padded with 1s, form a
/// partition of the natural module of the rank-m group of the same family.
fn minimal_rank(family: Family, parts: &[usize]) -> usize {
    let s: usize = parts.iter().filter(|&&d| d > 1).sum();
    match family {
        Family::A => s - 1,
        Family::B => s / 2, // ceil((s-1)/2)
        Family::C => s / 2,
        Family::D => s.div_ceil(2),
    }
}

pub fn validate_class(group: GroupType, p: u32, partition: &[usize]) -> Result<UnipotentClass> {
    check_prime(p)?;
    let parts = check_partition(group, partition)?;
    if let Some(&big) = parts.first() {
        if big > p as usize {
            return Err(Error::PartExceedsP { part: big, p });
        }
        if big == 1 {
            return Err(Error::IdentityClass);
        }
    }
    let m = minimal_rank(group.family(), &parts);
    if m >= group.rank() {
        return Err(Error::MNotLessThanR { m, r: group.rank() });
    }
    Ok(UnipotentClass {
        group,
        p,
        partition: parts,
        m,
    })
}

/// All valid order-p classes of `group`, ordered lexicographically by
/// partition (largest first).
pub fn enumerate_classes(group: GroupType, p: u32) -> Vec<UnipotentClass> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for d in (1..=max.min(rest)).rev() {
            cur.push(d);
            rec(rest - d, d, cur, out);
            cur.pop();
        }
    }
    let mut parts = Vec::new();
    rec(group.natural_dim(), p as usize, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .filter_map(|pt| validate_class(group, p, &pt).ok())
        .collect()
}

/// The labelled Dynkin diagram Δ_x together with e_i = τ_x(ε_i).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelledDiagram {
    pub deltas: Vec<i64>,
    pub e_seq: Vec<i64>,
}

/// τ_x(ε) computed from the e-sequence for an ε-coordinate vector.
fn tau_on_epsilon(e_seq: &[i64], v: &[i64]) -> i64 {
    e_seq.iter().zip(v).map(|(e, c)| e * c).sum()
}

impl LabelledDiagram {
    /// Diagram of the class with Jordan partition `partition` on the natural
    /// module. Each part d contributes the sl₂ string d−1, d−3, …, −(d−1).
    pub fn from_partition(system: &RootSystem, partition: &[usize]) -> Result<Self> {
        let group = system.group();
        let parts = check_partition(group, partition)?;
        let mut weights: Vec<i64> = parts
            .iter()
            .flat_map(|&d| (0..d).map(move |k| d as i64 - 1 - 2 * k as i64))
            .collect();
        weights.sort_unstable_by(|a, b| b.cmp(a));
        let e_seq: Vec<i64> = match group.family() {
            Family::A => weights,
            family => {
                let zeros = weights.iter().filter(|&&w| w == 0).count();
                let keep_zeros = match family {
                    Family::B => (zeros - 1) / 2,
                    _ => zeros / 2,
                };
                let mut e: Vec<i64> = weights.iter().copied().filter(|&w| w > 0).collect();
                e.resize(e.len() + keep_zeros, 0);
                e
            }
        };
        debug_assert_eq!(e_seq.len(), group.ambient_dim());
        let deltas = system
            .simple_roots_epsilon()
            .iter()
            .map(|alpha| tau_on_epsilon(&e_seq, alpha))
            .collect();
        Ok(LabelledDiagram { deltas, e_seq })
    }

    /// Diagram given by its labels; the e-sequence is recovered as τ(ε_i).
    pub fn from_deltas(system: &RootSystem, deltas: &[i64]) -> Result<Self> {
        if deltas.len() != system.rank() {
            return Err(Error::WeightLength {
                expected: system.rank(),
                got: deltas.len(),
            });
        }
        let provisional = LabelledDiagram {
            deltas: deltas.to_vec(),
            e_seq: Vec::new(),
        };
        let tau = TauMap::new(system, &provisional);
        let e_seq = system
            .epsilon_weights()
            .iter()
            .map(|eps| tau.tau(eps))
            .collect::<Result<Vec<_>>>()?;
        Ok(LabelledDiagram {
            deltas: deltas.to_vec(),
            e_seq,
        })
    }

    /// Labels recomputed from the e-sequence through the ε-expansion of the
    /// simple roots.
    pub fn deltas_from_e_seq(&self, system: &RootSystem) -> Vec<i64> {
        system
            .simple_roots_epsilon()
            .iter()
            .map(|alpha| tau_on_epsilon(&self.e_seq, alpha))
            .collect()
    }

    pub fn label_sum(&self) -> i64 {
        self.deltas.iter().sum()
    }
}

/// Diagram of a validated class.
pub fn diagram_from_partition(
    system: &RootSystem,
    class: &UnipotentClass,
) -> Result<LabelledDiagram> {
    LabelledDiagram::from_partition(system, class.partition())
}

/// The homomorphism τ_x from the weight lattice to ℤ with τ_x(α_i) = δ_i.
#[derive(Debug, Clone)]
pub struct TauMap {
    diagram: LabelledDiagram,
    /// τ(ω_i) = Σ_j (C⁻¹)_{ij} δ_j
    on_fundamental: Vec<Rational64>,
    /// Common denominator of `on_fundamental` and the scaled numerators.
    denom: i64,
    scaled: Vec<i64>,
}

impl TauMap {
    pub fn new(system: &RootSystem, diagram: &LabelledDiagram) -> Self {
        let inv = system.inverse_cartan();
        let r = system.rank();
        let on_fundamental: Vec<Rational64> = (0..r)
            .map(|i| {
                (0..r).fold(Rational64::zero(), |acc, j| {
                    acc + inv[i][j] * Rational64::from_integer(diagram.deltas[j])
                })
            })
            .collect();
        let denom = on_fundamental
            .iter()
            .fold(1i64, |l, q| num_integer_lcm(l, *q.denom()));
        let scaled = on_fundamental
            .iter()
            .map(|q| q.numer() * (denom / q.denom()))
            .collect();
        TauMap {
            diagram: diagram.clone(),
            on_fundamental,
            denom,
            scaled,
        }
    }

    pub fn diagram(&self) -> &LabelledDiagram {
        &self.diagram
    }

    /// τ(ω_i) as exact rationals.
    pub fn on_fundamental(&self) -> &[Rational64] {
        &self.on_fundamental
    }

    pub fn tau(&self, w: &Weight) -> Result<i64> {
        if w.rank() != self.scaled.len() {
            return Err(Error::WeightLength {
                expected: self.scaled.len(),
                got: w.rank(),
            });
        }
        let num: i64 = w.0.iter().zip(&self.scaled).map(|(a, t)| a * t).sum();
        if num % self.denom != 0 {
            return Err(Error::NonIntegralResult(w.to_string()));
        }
        Ok(num / self.denom)
    }
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    a / x * b
}

/// Base-p digits (ω^0, …, ω^s) of a dominant weight; each digit is
/// p-restricted and Σ p^j ω^j = w. The zero weight gives `[0]`.
pub fn p_adic_digits(w: &Weight, p: u32) -> Result<Vec<Weight>> {
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.to_string()));
    }
    let p = p as i64;
    let mut rest = w.0.clone();
    let mut digits = Vec::new();
    loop {
        digits.push(Weight(rest.iter().map(|a| a % p).collect()));
        rest.iter_mut().for_each(|a| *a /= p);
        if rest.iter().all(|&a| a == 0) {
            break;
        }
    }
    Ok(digits)
}

/// σ_x(w) together with the digit sum w̄ it is evaluated on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sigma {
    pub value: i64,
    pub wbar: Weight,
}

pub fn sigma(map: &TauMap, w: &Weight, p: u32) -> Result<Sigma> {
    let digits = p_adic_digits(w, p)?;
    let wbar = digits
        .iter()
        .skip(1)
        .fold(digits[0].clone(), |acc, d| acc.add(d));
    Ok(Sigma {
        value: map.tau(&wbar)?,
        wbar,
    })
}

/// d(r−m): r−m for A, 2(r−m) otherwise.
pub fn d_bound(family: Family, r: usize, m: usize) -> i64 {
    let diff = r as i64 - m as i64;
    match family {
        Family::A => diff,
        _ => 2 * diff,
    }
}

/// Rank hypotheses of the main bound: r−m > 1 for A; m > 1 and r−m > 3 for
/// B and D; only m < r for C.
pub fn theorem1_applicable(family: Family, r: usize, m: usize) -> bool {
    if m == 0 || m >= r {
        return false;
    }
    match family {
        Family::A => r - m > 1,
        Family::B | Family::D => m > 1 && r - m > 3,
        Family::C => true,
    }
}

/// Σ_{i≤l} δ_i with l = ⌊(m+2)/2⌋ for A and l = m otherwise.
pub fn truncated_label_sum(class: &UnipotentClass, diagram: &LabelledDiagram) -> i64 {
    let m = class.m();
    let l = match class.group().family() {
        Family::A => (m + 2) / 2,
        _ => m,
    };
    diagram.deltas.iter().take(l).sum()
}

/// c_x: the label sum (half of it for type A).
///
/// The truncated sum of [`truncated_label_sum`] is cross-checked whenever
/// the rank hypotheses of [`theorem1_applicable`] hold; outside them the two
/// may differ (e.g. D_5 with partition [2,2,2,2,1,1]).
pub fn c_of_class(class: &UnipotentClass, diagram: &LabelledDiagram) -> Result<i64> {
    let sum = diagram.label_sum();
    let c = match class.group().family() {
        Family::A => sum / 2,
        _ => sum,
    };
    let g = class.group();
    if theorem1_applicable(g.family(), g.rank(), class.m()) {
        let truncated = truncated_label_sum(class, diagram);
        if truncated != c {
            return Err(Error::LemmaMismatch {
                definition: c,
                truncated,
            });
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, r: usize) -> RootSystem {
        RootSystem::new(GroupType::new(f, r).unwrap())
    }

    fn group(f: Family, r: usize) -> GroupType {
        GroupType::new(f, r).unwrap()
    }

    #[test]
    fn validate_examples() {
        let c = validate_class(group(Family::A, 5), 5, &[3, 1, 1, 1]).unwrap();
        assert_eq!(c.m(), 2);
        assert_eq!(
            validate_class(group(Family::C, 3), 3, &[3, 3]),
            Err(Error::MNotLessThanR { m: 3, r: 3 })
        );
        assert_eq!(
            validate_class(group(Family::B, 4), 3, &[4, 4, 1]),
            Err(Error::PartExceedsP { part: 4, p: 3 })
        );
        assert!(matches!(
            validate_class(group(Family::B, 3), 3, &[2, 1, 1, 1, 1, 1]),
            Err(Error::ParityViolation { .. })
        ));
        assert!(matches!(
            validate_class(group(Family::C, 3), 5, &[3, 1, 1, 1]),
            Err(Error::ParityViolation { .. })
        ));
        assert_eq!(
            validate_class(group(Family::A, 3), 3, &[1, 1, 1, 1]),
            Err(Error::IdentityClass)
        );
        assert!(matches!(
            validate_class(group(Family::A, 3), 3, &[2, 1]),
            Err(Error::BadPartitionSum {
                expected: 4,
                got: 3
            })
        ));
        assert_eq!(
            validate_class(group(Family::A, 3), 4, &[2, 1, 1]),
            Err(Error::InvalidPrime(4))
        );
    }

    #[test]
    fn minimal_rank_per_family() {
        let m = |f, r, p, parts: &[usize]| validate_class(group(f, r), p, parts).unwrap().m();
        assert_eq!(m(Family::B, 4, 5, &[5, 1, 1, 1, 1]), 2);
        assert_eq!(m(Family::B, 4, 3, &[2, 2, 1, 1, 1, 1, 1]), 2);
        assert_eq!(m(Family::C, 4, 3, &[2, 1, 1, 1, 1, 1, 1]), 1);
        assert_eq!(m(Family::C, 4, 3, &[3, 3, 1, 1]), 3);
        assert_eq!(m(Family::D, 5, 5, &[5, 1, 1, 1, 1, 1]), 3);
        assert_eq!(m(Family::D, 5, 3, &[3, 1, 1, 1, 1, 1, 1, 1]), 2);
        assert_eq!(m(Family::D, 5, 3, &[2, 2, 1, 1, 1, 1, 1, 1]), 2);
    }

    #[test]
    fn regular_classes() {
        let c = UnipotentClass::regular_in(group(Family::D, 6), 3, 7).unwrap();
        assert_eq!(c.partition(), &[5, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(c.m(), 3);
        let c = UnipotentClass::regular_in(group(Family::C, 4), 2, 5).unwrap();
        assert_eq!(c.partition(), &[4, 1, 1, 1, 1]);
        assert_eq!(c.m(), 2);
    }

    #[test]
    fn diagram_examples() {
        let d = LabelledDiagram::from_partition(&sys(Family::A, 2), &[3]).unwrap();
        assert_eq!(d.e_seq, vec![2, 0, -2]);
        assert_eq!(d.deltas, vec![2, 2]);
        let d = LabelledDiagram::from_partition(&sys(Family::A, 3), &[2, 2]).unwrap();
        assert_eq!(d.e_seq, vec![1, 1, -1, -1]);
        assert_eq!(d.deltas, vec![0, 2, 0]);
        let d = LabelledDiagram::from_partition(&sys(Family::B, 3), &[3, 1, 1, 1, 1]).unwrap();
        assert_eq!(d.e_seq, vec![2, 0, 0]);
        assert_eq!(d.deltas, vec![2, 0, 0]);
        // C_2 regular [4]: e = (3,1), δ = (2, 2)
        let d = LabelledDiagram::from_partition(&sys(Family::C, 2), &[4]).unwrap();
        assert_eq!(d.deltas, vec![2, 2]);
        // D_4 subregular [5,3]: e = (4,2,2,0), δ = (2,0,2,2)
        let d = LabelledDiagram::from_partition(&sys(Family::D, 4), &[5, 3]).unwrap();
        assert_eq!(d.e_seq, vec![4, 2, 2, 0]);
        assert_eq!(d.deltas, vec![2, 0, 2, 2]);
    }

    #[test]
    fn tau_examples() {
        let s = sys(Family::A, 2);
        let d = LabelledDiagram::from_deltas(&s, &[2, 2]).unwrap();
        let t = TauMap::new(&s, &d);
        assert_eq!(t.tau(&Weight(vec![1, 0])).unwrap(), 2);
        assert_eq!(t.tau(&Weight(vec![0, 0])).unwrap(), 0);
        assert_eq!(t.tau(&s.simple_root_weight(1)).unwrap(), 2);
        assert_eq!(d.e_seq, vec![2, 0, -2]);
    }

    #[test]
    fn non_integral_tau_is_reported() {
        let s = sys(Family::A, 2);
        let d = LabelledDiagram {
            deltas: vec![1, 0],
            e_seq: vec![],
        };
        let t = TauMap::new(&s, &d);
        assert!(matches!(
            t.tau(&Weight(vec![1, 0])),
            Err(Error::NonIntegralResult(_))
        ));
    }

    #[test]
    fn digits() {
        assert_eq!(
            p_adic_digits(&Weight(vec![4, 0]), 3).unwrap(),
            vec![Weight(vec![1, 0]), Weight(vec![1, 0])]
        );
        assert_eq!(
            p_adic_digits(&Weight(vec![2, 3]), 5).unwrap(),
            vec![Weight(vec![2, 3])]
        );
        assert_eq!(
            p_adic_digits(&Weight(vec![0, 9]), 3).unwrap(),
            vec![Weight(vec![0, 0]), Weight(vec![0, 0]), Weight(vec![0, 1])]
        );
        assert_eq!(
            p_adic_digits(&Weight(vec![0, 0]), 3).unwrap(),
            vec![Weight(vec![0, 0])]
        );
        assert!(p_adic_digits(&Weight(vec![-1, 0]), 3).is_err());
    }

    #[test]
    fn sigma_examples() {
        let s = sys(Family::A, 2);
        let t = TauMap::new(&s, &LabelledDiagram::from_deltas(&s, &[2, 2]).unwrap());
        let sg = sigma(&t, &Weight(vec![4, 0]), 3).unwrap();
        assert_eq!(sg.value, 4);
        assert_eq!(sg.wbar, Weight(vec![2, 0]));
        assert_eq!(sigma(&t, &Weight(vec![0, 0]), 3).unwrap().value, 0);
        assert_eq!(sigma(&t, &Weight(vec![1, 1]), 5).unwrap().value, 4);
    }

    #[test]
    fn c_x_of_regular_classes() {
        for (f, r, m, p, c) in [
            (Family::A, 6, 3, 5, 3),
            (Family::B, 6, 2, 5, 4),
            (Family::C, 5, 2, 5, 3),
            (Family::D, 8, 3, 5, 4),
        ] {
            let class = UnipotentClass::regular_in(group(f, r), m, p).unwrap();
            let d = diagram_from_partition(&sys(f, r), &class).unwrap();
            assert_eq!(c_of_class(&class, &d).unwrap(), c, "{class}");
        }
    }

    #[test]
    fn d_bound_and_applicability() {
        assert_eq!(d_bound(Family::A, 10, 4), 6);
        assert_eq!(d_bound(Family::C, 10, 4), 12);
        assert_eq!(d_bound(Family::D, 7, 3), 8);
        assert!(!theorem1_applicable(Family::B, 8, 1));
        assert!(theorem1_applicable(Family::A, 5, 3));
        assert!(!theorem1_applicable(Family::D, 8, 5));
        assert!(theorem1_applicable(Family::D, 8, 4));
        assert!(theorem1_applicable(Family::C, 3, 2));
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let g = group(Family::A, 4);
        let classes = enumerate_classes(g, 3);
        let parts: Vec<Vec<usize>> = classes.iter().map(|c| c.partition().to_vec()).collect();
        assert_eq!(parts, vec![vec![3, 1, 1], vec![2, 2, 1], vec![2, 1, 1, 1]]);
        assert!(is_odd_prime(3) && is_odd_prime(251) && !is_odd_prime(9) && !is_odd_prime(2));
    }
}
