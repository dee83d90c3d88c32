//! Characteristic-0 data: Weyl-module characters by Freudenthal's formula,
//! restriction to the A₁-subgroup through x, and sl₂ Jordan types.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::nilorbit::{sigma, TauMap};
use crate::rootdata::{Family, GroupType, RootSystem, Weight};

/// Default cap on the number of dominant weights of a character.
pub const DEFAULT_WEIGHT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub highest: Weight,
    pub dominant_mults: BTreeMap<Weight, BigUint>,
}

impl Character {
    /// Multiplicity of an arbitrary (not necessarily dominant) weight.
    pub fn multiplicity(&self, system: &RootSystem, w: &Weight) -> BigUint {
        let dom = system.dominant_representative(w);
        self.dominant_mults.get(&dom).cloned().unwrap_or_default()
    }

    /// Σ mult(μ) · |W·μ| over dominant μ.
    pub fn dimension(&self, system: &RootSystem) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (mu, m) in &self.dominant_mults {
            total += m * system.dominant_orbit_size(mu)?;
        }
        Ok(total)
    }
}

/// Dominant weights below `w`, reached by subtracting positive roots while
/// staying dominant. Sorted by depth (height of w − μ), then by weight.
fn dominant_weights_below(
    system: &RootSystem,
    w: &Weight,
    cap: usize,
) -> Result<Vec<(i64, Weight)>> {
    let roots: Vec<Weight> = system
        .positive_roots()
        .iter()
        .map(|b| system.root_to_weight(b))
        .collect();
    let heights: Vec<i64> = system.positive_roots().iter().map(|b| b.height()).collect();
    let mut depth: HashMap<Weight, i64> = HashMap::new();
    depth.insert(w.clone(), 0);
    let mut stack = vec![w.clone()];
    while let Some(mu) = stack.pop() {
        let d = depth[&mu];
        for (beta, h) in roots.iter().zip(&heights) {
            let nu = mu.sub(beta);
            if nu.is_dominant() && !depth.contains_key(&nu) {
                depth.insert(nu.clone(), d + h);
                if depth.len() > cap {
                    return Err(Error::SizeLimit {
                        what: "dominant weight count",
                        size: depth.len(),
                        limit: cap,
                    });
                }
                stack.push(nu);
            }
        }
    }
    let mut out: Vec<(i64, Weight)> = depth.into_iter().map(|(mu, d)| (d, mu)).collect();
    out.sort();
    Ok(out)
}

pub fn character(system: &RootSystem, w: &Weight) -> Result<Character> {
    character_with_cap(system, w, DEFAULT_WEIGHT_CAP)
}

/// Freudenthal's recursion
/// ((λ+ρ,λ+ρ) − (μ+ρ,μ+ρ)) m(μ) = 2 Σ_{β>0} Σ_{k≥1} m(μ+kβ) (μ+kβ, β)
/// over the dominant weights of M(λ), using the integral rescaled form.
pub fn character_with_cap(system: &RootSystem, w: &Weight, cap: usize) -> Result<Character> {
    if w.rank() != system.rank() {
        return Err(Error::WeightLength {
            expected: system.rank(),
            got: w.rank(),
        });
    }
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.to_string()));
    }
    let order = dominant_weights_below(system, w, cap)?;
    let rho = Weight(vec![1; system.rank()]);
    let roots: Vec<Weight> = system
        .positive_roots()
        .iter()
        .map(|b| system.root_to_weight(b))
        .collect();
    let top = {
        let s = w.add(&rho);
        system.scaled_form(&s, &s)
    };
    let mut mults: BTreeMap<Weight, BigUint> = BTreeMap::new();
    for (_, mu) in order {
        if &mu == w {
            mults.insert(mu, BigUint::from(1u32));
            continue;
        }
        let mut numer = BigUint::zero();
        for beta in &roots {
            let mut nu = mu.add(beta);
            loop {
                let dom = system.dominant_representative(&nu);
                let Some(m) = mults.get(&dom) else { break };
                let ip = system.scaled_form(&nu, beta);
                debug_assert!(ip > 0);
                numer += m * BigUint::from(ip as u64);
                nu = nu.add(beta);
            }
        }
        numer *= 2u32;
        let s = mu.add(&rho);
        let denom = top - system.scaled_form(&s, &s);
        debug_assert!(denom > 0);
        let denom = BigUint::from(denom as u64);
        debug_assert!((&numer % &denom).is_zero());
        let m = numer / denom;
        if !m.is_zero() {
            mults.insert(mu, m);
        }
    }
    Ok(Character {
        highest: w.clone(),
        dominant_mults: mults,
    })
}

/// Multiplicities of the integer weights of a module restricted to the
/// A₁-subgroup Γ.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GammaCharacter {
    pub mults: BTreeMap<i64, u64>,
}

impl GammaCharacter {
    pub fn dimension(&self) -> u64 {
        self.mults.values().sum()
    }

    pub fn mult(&self, t: i64) -> u64 {
        self.mults.get(&t).copied().unwrap_or(0)
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.mults.keys().next_back().copied()
    }

    pub fn is_symmetric(&self) -> bool {
        self.mults.iter().all(|(&t, &m)| self.mult(-t) == m)
    }
}

pub fn gamma_character(
    system: &RootSystem,
    character: &Character,
    map: &TauMap,
) -> Result<GammaCharacter> {
    let mut gc = GammaCharacter::default();
    for (mu, m) in &character.dominant_mults {
        let m = m.to_u64().ok_or(Error::SizeLimit {
            what: "weight multiplicity",
            size: usize::MAX,
            limit: u64::MAX as usize,
        })?;
        for nu in system.orbit(mu)? {
            *gc.mults.entry(map.tau(&nu)?).or_insert(0) += m;
        }
    }
    Ok(gc)
}

/// Jordan block sizes of a unipotent operator, weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct JordanType {
    pub blocks: Vec<usize>,
}

impl JordanType {
    pub fn new(mut blocks: Vec<usize>) -> Self {
        blocks.retain(|&b| b > 0);
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        JordanType { blocks }
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn max_block(&self) -> usize {
        self.blocks.first().copied().unwrap_or(0)
    }

    pub fn count_of_size(&self, size: usize) -> usize {
        self.blocks.iter().filter(|&&b| b == size).count()
    }

    /// Block size → count.
    pub fn counts(&self) -> BTreeMap<usize, u64> {
        let mut c = BTreeMap::new();
        for &b in &self.blocks {
            *c.entry(b).or_insert(0) += 1;
        }
        c
    }

    pub fn extend(&mut self, other: &JordanType) {
        self.blocks.extend_from_slice(&other.blocks);
        self.blocks.sort_unstable_by(|a, b| b.cmp(a));
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts()
            .iter()
            .rev()
            .map(|(s, c)| {
                if *c == 1 {
                    s.to_string()
                } else {
                    format!("{s}^{c}")
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Number of blocks of size s+1 is mult(s) − mult(s+2).
pub fn sl2_jordan(gc: &GammaCharacter) -> Result<JordanType> {
    if !gc.is_symmetric() {
        return Err(Error::MalformedCharacter(
            "weights are not symmetric".into(),
        ));
    }
    let mut blocks = Vec::new();
    for (&t, &m) in gc.mults.range(0..) {
        let above = gc.mult(t + 2);
        if above > m {
            return Err(Error::MalformedCharacter(format!(
                "mult({}) = {above} exceeds mult({t}) = {m}",
                t + 2
            )));
        }
        blocks.extend(std::iter::repeat_n(t as usize + 1, (m - above) as usize));
    }
    let jt = JordanType::new(blocks);
    if jt.dimension() as u64 != gc.dimension() {
        return Err(Error::MalformedCharacter(
            "block sizes do not add up".into(),
        ));
    }
    Ok(jt)
}

/// k_{φ_ℂ}(x) = σ_x(w) + 1.
pub fn k_complex(map: &TauMap, w: &Weight, p: u32) -> Result<i64> {
    Ok(sigma(map, w, p)?.value + 1)
}

/// [`k_complex`], checked against the largest Γ-weight of the character of a
/// p-restricted `w`.
pub fn k_complex_checked(map: &TauMap, w: &Weight, p: u32, gc: &GammaCharacter) -> Result<i64> {
    let k = k_complex(map, w, p)?;
    if w.is_p_restricted(p) {
        let top = gc.max_weight().unwrap_or(0);
        if top + 1 != k {
            return Err(Error::MalformedCharacter(format!(
                "top Gamma-weight {top} inconsistent with sigma + 1 = {k}"
            )));
        }
    }
    Ok(k)
}

/// Multiplicities of the weights w − Σ_{i≤f} b_i α_i, keyed by (b_1, …, b_f).
pub fn levi_multiplicities(
    system: &RootSystem,
    w: &Weight,
    f: usize,
) -> Result<BTreeMap<Vec<i64>, BigUint>> {
    let ch = character(system, w)?;
    let mut out: BTreeMap<Vec<i64>, BigUint> = BTreeMap::new();
    let mut stack = vec![vec![0i64; f]];
    out.insert(vec![0; f], BigUint::from(1u32));
    while let Some(b) = stack.pop() {
        for i in 0..f {
            let mut nb = b.clone();
            nb[i] += 1;
            if out.contains_key(&nb) {
                continue;
            }
            let mut mu = w.clone();
            for (j, &k) in nb.iter().enumerate() {
                mu = mu.sub(&system.simple_root_weight(j + 1).scale(k));
            }
            let m = ch.multiplicity(system, &mu);
            if !m.is_zero() {
                out.insert(nb.clone(), m);
                stack.push(nb);
            }
        }
    }
    Ok(out)
}

/// True iff the multiplicities of all weights w − Σ_{i≤f} b_i α_i coincide
/// across `ranks`, where at each rank w is `pattern` padded with zeros.
pub fn smith_stability(family: Family, pattern: &[i64], f: usize, ranks: &[usize]) -> Result<bool> {
    let mut reference: Option<BTreeMap<Vec<i64>, BigUint>> = None;
    for &r in ranks {
        let group = GroupType::new(family, r)?;
        if pattern.len() > f || f + 1 > r {
            return Err(Error::DimensionMismatch(format!(
                "pattern of length {} with f = {f} does not fit rank {r}",
                pattern.len()
            )));
        }
        let system = RootSystem::new(group);
        let mut coords = pattern.to_vec();
        coords.resize(r, 0);
        let mults = levi_multiplicities(&system, &Weight(coords), f)?;
        match &reference {
            None => reference = Some(mults),
            Some(prev) if *prev != mults => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilorbit::LabelledDiagram;

    fn sys(f: Family, r: usize) -> RootSystem {
        RootSystem::new(GroupType::new(f, r).unwrap())
    }

    fn mult_of(ch: &Character, w: &[i64]) -> u64 {
        ch.dominant_mults
            .get(&Weight(w.to_vec()))
            .map(|m| m.to_u64().unwrap())
            .unwrap_or(0)
    }

    #[test]
    fn trivial_and_small_characters() {
        let s = sys(Family::A, 2);
        let ch = character(&s, &Weight(vec![0, 0])).unwrap();
        assert_eq!(ch.dominant_mults.len(), 1);
        assert_eq!(mult_of(&ch, &[0, 0]), 1);

        let ch = character(&s, &Weight(vec![1, 1])).unwrap();
        assert_eq!(mult_of(&ch, &[0, 0]), 2);
        assert_eq!(mult_of(&ch, &[1, 1]), 1);
        assert_eq!(ch.dimension(&s).unwrap(), BigUint::from(8u32));

        let s1 = sys(Family::A, 1);
        let ch = character(&s1, &Weight(vec![2])).unwrap();
        assert_eq!(mult_of(&ch, &[2]), 1);
        assert_eq!(mult_of(&ch, &[0]), 1);
        assert_eq!(ch.dimension(&s1).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn known_multiplicities() {
        // B_2 adjoint (2ω_2 in Bourbaki B_2 is the 10-dim module): zero weight has mult 2.
        let s = sys(Family::B, 2);
        let ch = character(&s, &Weight(vec![0, 2])).unwrap();
        assert_eq!(ch.dimension(&s).unwrap(), BigUint::from(10u32));
        assert_eq!(mult_of(&ch, &[0, 0]), 2);
        // D_4 adjoint ω_2: zero weight has mult 4.
        let s = sys(Family::D, 4);
        let ch = character(&s, &Weight(vec![0, 1, 0, 0])).unwrap();
        assert_eq!(mult_of(&ch, &[0, 0, 0, 0]), 4);
        assert_eq!(ch.dimension(&s).unwrap(), BigUint::from(28u32));
    }

    #[test]
    fn gamma_examples() {
        let s = sys(Family::A, 2);
        let map = TauMap::new(&s, &LabelledDiagram::from_deltas(&s, &[2, 2]).unwrap());
        let nat = character(&s, &Weight(vec![1, 0])).unwrap();
        let gc = gamma_character(&s, &nat, &map).unwrap();
        assert_eq!(gc.mults, BTreeMap::from([(-2, 1), (0, 1), (2, 1)]));
        assert_eq!(sl2_jordan(&gc).unwrap().blocks, vec![3]);

        let triv = character(&s, &Weight(vec![0, 0])).unwrap();
        let gc = gamma_character(&s, &triv, &map).unwrap();
        assert_eq!(gc.mults, BTreeMap::from([(0, 1)]));

        let adj = character(&s, &Weight(vec![1, 1])).unwrap();
        let gc = gamma_character(&s, &adj, &map).unwrap();
        assert_eq!(
            gc.mults,
            BTreeMap::from([(-4, 1), (-2, 2), (0, 2), (2, 2), (4, 1)])
        );
        assert_eq!(sl2_jordan(&gc).unwrap().blocks, vec![5, 3]);
        assert_eq!(
            k_complex_checked(&map, &Weight(vec![1, 1]), 5, &gc).unwrap(),
            5
        );
        assert_eq!(k_complex(&map, &Weight(vec![4, 0]), 3).unwrap(), 5);
        assert_eq!(k_complex(&map, &Weight(vec![0, 0]), 3).unwrap(), 1);
    }

    #[test]
    fn sl2_rejects_malformed() {
        let gc = GammaCharacter {
            mults: BTreeMap::from([(2, 1), (-2, 1)]),
        };
        assert!(matches!(sl2_jordan(&gc), Err(Error::MalformedCharacter(_))));
        let gc = GammaCharacter {
            mults: BTreeMap::from([(2, 1)]),
        };
        assert!(sl2_jordan(&gc).is_err());
        let gc = GammaCharacter {
            mults: BTreeMap::from([(0, 4)]),
        };
        assert_eq!(sl2_jordan(&gc).unwrap().blocks, vec![1, 1, 1, 1]);
    }

    #[test]
    fn weight_cap_is_enforced() {
        let s = sys(Family::A, 3);
        assert!(matches!(
            character_with_cap(&s, &Weight(vec![4, 0, 0]), 2),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn smith_examples() {
        assert!(smith_stability(Family::A, &[2], 1, &[2, 3, 4]).unwrap());
        assert!(smith_stability(Family::A, &[], 1, &[2, 3]).unwrap());
        assert!(smith_stability(Family::B, &[1], 1, &[3, 4]).unwrap());
    }
}
