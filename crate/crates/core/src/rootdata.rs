//! Root systems of the classical types A, B, C, D in Bourbaki labelling.
//!
//! Weights are stored in the basis of fundamental weights, roots in the basis
//! of simple roots. Everything else (ε-coordinates, the invariant form, the
//! inverse Cartan matrix) is derived from the ε-realization of the simple
//! roots and the fundamental weights:
//!
//! | type | simple roots                                   | fundamental weights                         |
//! |------|------------------------------------------------|---------------------------------------------|
//! | A_r  | ε_i − ε_{i+1}                                  | ε_1+…+ε_i − i/(r+1)·Σε                      |
//! | B_r  | ε_i − ε_{i+1}, α_r = ε_r                       | ε_1+…+ε_i (i<r), ω_r = ½Σε                  |
//! | C_r  | ε_i − ε_{i+1}, α_r = 2ε_r                      | ε_1+…+ε_i                                   |
//! | D_r  | ε_i − ε_{i+1}, α_r = ε_{r−1}+ε_r               | ε_1+…+ε_i (i≤r−2), ω_{r−1}, ω_r half-spin  |
//!
//! For D_r the node r−1 carries ε_{r−1}−ε_r and node r carries ε_{r−1}+ε_r
//! (Bourbaki, Plate IV).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    /// Smallest rank accepted for the family.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A | Family::C => 1,
            Family::B => 2,
            Family::D => 3,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            _ => Err(Error::Parse {
                what: "family",
                input: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupType {
    family: Family,
    rank: usize,
}

impl GroupType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank < family.min_rank() {
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                min: family.min_rank(),
            });
        }
        Ok(GroupType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the natural (standard) module.
    pub fn natural_dim(&self) -> usize {
        natural_dim(self.family, self.rank)
    }

    /// Number of ε-coordinates: r+1 for A_r, r otherwise.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Dimension of the natural module of the rank-`rank` group of `family`.
pub fn natural_dim(family: Family, rank: usize) -> usize {
    match family {
        Family::A => rank + 1,
        Family::B => 2 * rank + 1,
        Family::C | Family::D => 2 * rank,
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight ω_i (1-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i - 1] = 1;
        Weight(w)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn is_p_restricted(&self, p: u32) -> bool {
        self.0.iter().all(|&a| a >= 0 && a < p as i64)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "weight",
            input: s.to_string(),
        };
        let coords = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight(coords))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Root(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }
}

/// A weight written in ε-coordinates as `numer / denom`.
///
/// For A_r the representative is the one with Σ coordinates = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonCoords {
    pub numer: Vec<i64>,
    pub denom: i64,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    group: GroupType,
    /// `cartan[i][j] = ⟨α_i, α_j^∨⟩`; row i is α_i in fundamental coordinates.
    cartan: Vec<Vec<i64>>,
    inv_cartan: Vec<Vec<Rational64>>,
    positive_roots: Vec<Root>,
    roots: HashSet<Vec<i64>>,
    simple_eps: Vec<Vec<i64>>,
    /// ω_i in ε-coordinates, scaled by `fund_denom`.
    fund_eps: Vec<Vec<i64>>,
    fund_denom: i64,
    /// `fund_denom² · (ω_i, ω_j)`.
    gram: Vec<Vec<i64>>,
    epsilon_weights: Vec<Weight>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn invert_rational(m: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational64::one()
                    } else {
                        Rational64::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is nonsingular");
        a.swap(col, piv);
        inv.swap(col, piv);
        let f = a[col][col].recip();
        for j in 0..n {
            a[col][j] *= f;
            inv[col][j] *= f;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let g = a[r][col];
                for j in 0..n {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= g * ac;
                    inv[r][j] -= g * ic;
                }
            }
        }
    }
    inv
}

impl RootSystem {
    pub fn new(group: GroupType) -> Self {
        let r = group.rank();
        let n = group.ambient_dim();
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };

        let mut simple_eps: Vec<Vec<i64>> = Vec::with_capacity(r);
        for i in 0..r {
            let v = if i + 1 < r || group.family() == Family::A {
                let mut v = unit(i);
                v[i + 1] = -1;
                v
            } else {
                match group.family() {
                    Family::B => unit(r - 1),
                    Family::C => {
                        let mut v = vec![0; n];
                        v[r - 1] = 2;
                        v
                    }
                    Family::D => {
                        let mut v = vec![0; n];
                        v[r - 2] = 1;
                        v[r - 1] = 1;
                        v
                    }
                    Family::A => unreachable!(),
                }
            };
            simple_eps.push(v);
        }

        let (fund_eps, fund_denom): (Vec<Vec<i64>>, i64) = match group.family() {
            Family::A => {
                let d = (r + 1) as i64;
                let f = (1..=r)
                    .map(|i| {
                        (0..n)
                            .map(|k| if k < i { d - i as i64 } else { -(i as i64) })
                            .collect()
                    })
                    .collect();
                (f, d)
            }
            Family::B => {
                let f = (1..=r)
                    .map(|i| {
                        if i < r {
                            (0..n).map(|k| if k < i { 2 } else { 0 }).collect()
                        } else {
                            vec![1; n]
                        }
                    })
                    .collect();
                (f, 2)
            }
            Family::C => {
                let f = (1..=r)
                    .map(|i| (0..n).map(|k| if k < i { 1 } else { 0 }).collect())
                    .collect();
                (f, 1)
            }
            Family::D => {
                let f = (1..=r)
                    .map(|i| {
                        if i + 2 <= r {
                            (0..n).map(|k| if k < i { 2 } else { 0 }).collect()
                        } else if i == r - 1 {
                            (0..n).map(|k| if k + 1 < n { 1 } else { -1 }).collect()
                        } else {
                            vec![1; n]
                        }
                    })
                    .collect();
                (f, 2)
            }
        };

        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        2 * dot(&simple_eps[i], &simple_eps[j])
                            / dot(&simple_eps[j], &simple_eps[j])
                    })
                    .collect()
            })
            .collect();
        let inv_cartan = invert_rational(&cartan);

        let gram: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| dot(&fund_eps[i], &fund_eps[j])).collect())
            .collect();

        // All roots: closure of the simple roots under simple reflections.
        let mut roots: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let s = Root::simple(r, i + 1).0;
            roots.insert(s.clone());
            queue.push_back(s);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..r {
                // ⟨β, α_i^∨⟩ = Σ_j k_j ⟨α_j, α_i^∨⟩
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut next = beta.clone();
                next[i] -= pairing;
                if roots.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut positive_roots: Vec<Root> = roots
            .iter()
            .filter(|v| v.iter().all(|&k| k >= 0))
            .map(|v| Root(v.clone()))
            .collect();
        positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.0.cmp(&b.0)));

        let mut sys = RootSystem {
            group,
            cartan,
            inv_cartan,
            positive_roots,
            roots,
            simple_eps,
            fund_eps,
            fund_denom,
            gram,
            epsilon_weights: Vec::new(),
        };
        sys.epsilon_weights = (0..n)
            .map(|k| {
                // ε_k = Σ_j ⟨ε_k, α_j^∨⟩ ω_j
                Weight(
                    (0..r)
                        .map(|j| {
                            let a = &sys.simple_eps[j];
                            2 * a[k] / dot(a, a)
                        })
                        .collect(),
                )
            })
            .collect();
        sys
    }

    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn inverse_cartan(&self) -> &[Vec<Rational64>] {
        &self.inv_cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// The highest (maximal) root.
    pub fn highest_root(&self) -> &Root {
        self.positive_roots.last().expect("nonempty root system")
    }

    pub fn is_root(&self, root: &Root) -> bool {
        root.0.len() == self.rank() && self.roots.contains(&root.0)
    }

    /// Simple roots in ε-coordinates.
    pub fn simple_roots_epsilon(&self) -> &[Vec<i64>] {
        &self.simple_eps
    }

    /// The weights ε_1, …, ε_n of the standard realization, in fundamental
    /// coordinates (n = r+1 for A_r, r otherwise).
    pub fn epsilon_weights(&self) -> &[Weight] {
        &self.epsilon_weights
    }

    /// A root in fundamental-weight coordinates.
    pub fn root_to_weight(&self, root: &Root) -> Weight {
        let r = self.rank();
        Weight(
            (0..r)
                .map(|j| (0..r).map(|i| root.0[i] * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    /// The simple root α_i (1-based) in fundamental coordinates.
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight(self.cartan[i - 1].clone())
    }

    /// Coefficients of `w` in the basis of simple roots.
    pub fn simple_root_coords(&self, w: &Weight) -> Vec<Rational64> {
        let r = self.rank();
        (0..r)
            .map(|j| {
                (0..r).fold(Rational64::zero(), |acc, i| {
                    acc + self.inv_cartan[i][j] * Rational64::from_integer(w.0[i])
                })
            })
            .collect()
    }

    pub fn epsilon_coords(&self, w: &Weight) -> EpsilonCoords {
        let n = self.group.ambient_dim();
        let mut numer = vec![0i64; n];
        for (a, f) in w.0.iter().zip(&self.fund_eps) {
            for k in 0..n {
                numer[k] += a * f[k];
            }
        }
        let mut denom = self.fund_denom;
        let g = numer.iter().fold(denom, |g, &x| gcd(g, x));
        if g > 1 {
            denom /= g;
            numer.iter_mut().for_each(|x| *x /= g);
        }
        EpsilonCoords { numer, denom }
    }

    /// Common scale `s` such that `s · (λ, μ)` is an integer for all weights.
    pub fn form_scale(&self) -> i64 {
        self.fund_denom * self.fund_denom
    }

    /// `form_scale() · (a, b)` for weights in fundamental coordinates.
    pub fn scaled_form(&self, a: &Weight, b: &Weight) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += a.0[i] * self.gram[i][j] * b.0[j];
            }
        }
        s
    }

    fn check_len(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::WeightLength {
                expected: self.rank(),
                got: w.rank(),
            });
        }
        Ok(())
    }

    fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_len(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        Ok(())
    }

    /// ⟨w, β^∨⟩ = 2(w, β)/(β, β).
    pub fn coroot_pairing(&self, w: &Weight, root: &Root) -> Result<i64> {
        self.check_len(w)?;
        if !self.is_root(root) {
            return Err(Error::NotARoot(root.0.clone()));
        }
        let beta = self.root_to_weight(root);
        let num = 2 * self.scaled_form(w, &beta);
        let den = self.scaled_form(&beta, &beta);
        debug_assert_eq!(num % den, 0);
        Ok(num / den)
    }

    /// True iff the value of `wbar` on the coroot of the highest root is ≥ p.
    pub fn is_p_large(&self, wbar: &Weight, p: u32) -> Result<bool> {
        self.check_dominant(wbar)?;
        Ok(self.coroot_pairing(wbar, self.highest_root())? >= p as i64)
    }

    /// Simple reflection s_i (0-based) applied in place.
    pub fn reflect(&self, w: &mut Weight, i: usize) {
        let c = w.0[i];
        if c != 0 {
            for (x, a) in w.0.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a;
            }
        }
    }

    /// The dominant representative of the Weyl orbit of `w`.
    pub fn dominant_representative(&self, w: &Weight) -> Weight {
        let mut v = w.clone();
        while let Some(i) = v.0.iter().position(|&a| a < 0) {
            self.reflect(&mut v, i);
        }
        v
    }

    /// All elements of the Weyl orbit of a dominant weight, by reflection
    /// closure going down from the dominant chamber.
    pub fn orbit(&self, w: &Weight) -> Result<Vec<Weight>> {
        self.check_dominant(w)?;
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut out = vec![w.clone()];
        seen.insert(w.clone());
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].clone();
            head += 1;
            for i in 0..self.rank() {
                if cur.0[i] > 0 {
                    let mut next = cur.clone();
                    self.reflect(&mut next, i);
                    if seen.insert(next.clone()) {
                        out.push(next);
                    }
                }
            }
        }
        Ok(out)
    }

    /// |W·w| for a dominant weight.
    pub fn dominant_orbit_size(&self, w: &Weight) -> Result<usize> {
        Ok(self.orbit(w)?.len())
    }

    /// Dimension of the characteristic-0 irreducible module with highest
    /// weight `w`: Π_{β>0} ⟨w+ρ, β^∨⟩ / ⟨ρ, β^∨⟩.
    pub fn weyl_dimension(&self, w: &Weight) -> Result<BigInt> {
        self.check_dominant(w)?;
        let rho = Weight(vec![1; self.rank()]);
        let shifted = w.add(&rho);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for beta in &self.positive_roots {
            num *= self.coroot_pairing(&shifted, beta)?;
            den *= self.coroot_pairing(&rho, beta)?;
        }
        debug_assert!((&num % &den).is_zero());
        Ok(num / den)
    }

    /// Index of each positive root for quick lookup.
    pub fn positive_root_index(&self) -> HashMap<Vec<i64>, usize> {
        self.positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.0.clone(), i))
            .collect()
    }
}

/// Builds the root system of `group`.
pub fn build_root_system(group: GroupType) -> RootSystem {
    RootSystem::new(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, r: usize) -> RootSystem {
        RootSystem::new(GroupType::new(f, r).unwrap())
    }

    #[test]
    fn rejects_degenerate_ranks() {
        assert!(GroupType::new(Family::A, 0).is_err());
        assert!(GroupType::new(Family::B, 1).is_err());
        assert!(GroupType::new(Family::D, 2).is_err());
        assert!(GroupType::new(Family::C, 1).is_ok());
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(sys(Family::A, 3).positive_roots().len(), 6);
        assert_eq!(sys(Family::B, 2).positive_roots().len(), 4);
        assert_eq!(sys(Family::D, 4).positive_roots().len(), 12);
        for r in 1..=7 {
            assert_eq!(sys(Family::A, r).positive_roots().len(), r * (r + 1) / 2);
            assert_eq!(sys(Family::C, r).positive_roots().len(), r * r);
            if r >= 2 {
                assert_eq!(sys(Family::B, r).positive_roots().len(), r * r);
            }
            if r >= 3 {
                assert_eq!(sys(Family::D, r).positive_roots().len(), r * (r - 1));
            }
        }
    }

    #[test]
    fn bourbaki_cartan_matrices() {
        assert_eq!(sys(Family::B, 2).cartan(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(sys(Family::C, 2).cartan(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(
            sys(Family::D, 4).cartan(),
            &[
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2]
            ]
        );
        assert_eq!(
            sys(Family::B, 3).cartan(),
            &[vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]
        );
    }

    #[test]
    fn highest_roots() {
        assert_eq!(sys(Family::A, 3).highest_root().0, vec![1, 1, 1]);
        assert_eq!(sys(Family::B, 4).highest_root().0, vec![1, 2, 2, 2]);
        assert_eq!(sys(Family::C, 4).highest_root().0, vec![2, 2, 2, 1]);
        assert_eq!(sys(Family::D, 5).highest_root().0, vec![1, 2, 2, 1, 1]);
    }

    #[test]
    fn root_order_is_height_then_lex() {
        let s = sys(Family::B, 3);
        let roots = s.positive_roots();
        for w in roots.windows(2) {
            assert!((w[0].height(), &w[0].0) < (w[1].height(), &w[1].0));
        }
    }

    #[test]
    fn pairing_examples() {
        let s = sys(Family::A, 2);
        let w = Weight(vec![1, 1]);
        assert_eq!(s.coroot_pairing(&w, &Root(vec![1, 1])).unwrap(), 2);
        assert_eq!(
            s.coroot_pairing(&Weight::zero(2), &Root(vec![1, 0]))
                .unwrap(),
            0
        );
        assert!(matches!(
            s.coroot_pairing(&w, &Root(vec![2, 1])),
            Err(Error::NotARoot(_))
        ));
        for f in [Family::A, Family::B, Family::C, Family::D] {
            let s = sys(f, 4);
            for i in 1..=4 {
                for j in 1..=4 {
                    let v = s
                        .coroot_pairing(&Weight::fundamental(4, i), &Root::simple(4, j))
                        .unwrap();
                    assert_eq!(v, (i == j) as i64);
                }
            }
        }
    }

    #[test]
    fn p_large_examples() {
        let s = sys(Family::A, 2);
        assert!(!s.is_p_large(&Weight(vec![1, 1]), 3).unwrap());
        assert!(!s.is_p_large(&Weight(vec![0, 0]), 3).unwrap());
        assert!(s.is_p_large(&Weight(vec![2, 2]), 3).unwrap());
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(
            sys(Family::A, 2)
                .dominant_orbit_size(&Weight(vec![0, 0]))
                .unwrap(),
            1
        );
        assert_eq!(
            sys(Family::A, 2)
                .dominant_orbit_size(&Weight(vec![1, 0]))
                .unwrap(),
            3
        );
        assert_eq!(
            sys(Family::B, 3)
                .dominant_orbit_size(&Weight(vec![0, 0, 1]))
                .unwrap(),
            8
        );
        // regular orbit = |W(B_3)| = 48
        assert_eq!(
            sys(Family::B, 3)
                .dominant_orbit_size(&Weight(vec![1, 1, 1]))
                .unwrap(),
            48
        );
        assert!(matches!(
            sys(Family::A, 2).dominant_orbit_size(&Weight(vec![1, -1])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn weyl_dimension_examples() {
        assert_eq!(
            sys(Family::A, 2)
                .weyl_dimension(&Weight(vec![0, 0]))
                .unwrap(),
            1.into()
        );
        assert_eq!(
            sys(Family::A, 2)
                .weyl_dimension(&Weight(vec![1, 1]))
                .unwrap(),
            8.into()
        );
        assert_eq!(
            sys(Family::C, 3)
                .weyl_dimension(&Weight(vec![1, 0, 0]))
                .unwrap(),
            6.into()
        );
        assert_eq!(
            sys(Family::B, 4)
                .weyl_dimension(&Weight(vec![0, 0, 0, 1]))
                .unwrap(),
            16.into()
        );
        assert_eq!(
            sys(Family::D, 5)
                .weyl_dimension(&Weight(vec![0, 1, 0, 0, 0]))
                .unwrap(),
            45.into()
        );
    }

    #[test]
    fn epsilon_views() {
        let s = sys(Family::B, 3);
        let spin = s.epsilon_coords(&Weight(vec![0, 0, 1]));
        assert_eq!(
            spin,
            EpsilonCoords {
                numer: vec![1, 1, 1],
                denom: 2
            }
        );
        let s = sys(Family::A, 2);
        assert_eq!(
            s.epsilon_coords(&Weight(vec![1, 0])),
            EpsilonCoords {
                numer: vec![2, -1, -1],
                denom: 3
            }
        );
        assert_eq!(s.epsilon_weights().len(), 3);
        assert_eq!(sys(Family::D, 4).epsilon_weights().len(), 4);
        // ε_r = ω_r − ω_{r−1} in D_4
        assert_eq!(
            sys(Family::D, 4).epsilon_weights()[3],
            Weight(vec![0, 0, -1, 1])
        );
        // ε_r = 2ω_r − ω_{r−1} in B_3
        assert_eq!(
            sys(Family::B, 3).epsilon_weights()[2],
            Weight(vec![0, -1, 2])
        );
    }

    #[test]
    fn inverse_cartan_is_inverse() {
        for f in [Family::A, Family::B, Family::C, Family::D] {
            let s = sys(f, 5);
            for i in 1..=5 {
                let alpha = s.simple_root_weight(i);
                let coords = s.simple_root_coords(&alpha);
                for (j, c) in coords.iter().enumerate() {
                    let expect = if j + 1 == i { 1 } else { 0 };
                    assert_eq!(*c, Rational64::from_integer(expect));
                }
            }
        }
    }
}
