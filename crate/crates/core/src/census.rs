//! Enumeration of dominant weights below a dimension cap and the census of
//! prime-dimensional irreducible modules.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::WeightCache;
use crate::error::{Error, Result};
use crate::rootsystem::{Family, LieType};
use crate::sieve::is_prime;
use crate::weyldim::{weyl_dim, DimValue, Weight};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CensusEntry {
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub weight: Weight,
    pub dim: DimValue,
}

/// Smallest dimension of a nontrivial module in characteristic 0 for the
/// exceptional families.
pub fn exceptional_min_dim(family: Family) -> Option<u64> {
    match family {
        Family::E6 => Some(27),
        Family::E7 => Some(56),
        Family::E8 => Some(248),
        Family::F4 => Some(26),
        Family::G2 => Some(7),
        _ => None,
    }
}

/// Largest rank at which the family has a nontrivial module of dimension at
/// most `max_dim`; 0 when there is none.
///
/// The natural-module bounds `n+1`, `2n+1`, `2n`, `2n` are relaxed for the two
/// spin exceptions of low rank: B2 has a 4-dimensional module and D3 a
/// 4-dimensional half-spin module.
pub fn rank_cap(family: Family, max_dim: u64) -> Result<usize> {
    if max_dim < 1 {
        return Err(Error::domain("dimension cap must be at least 1"));
    }
    let d = max_dim as usize;
    let floor_min = |cap: usize, min: usize| if cap >= min { cap } else { 0 };
    Ok(match family {
        Family::A => d - 1,
        Family::B => match floor_min((d - 1) / 2, 2) {
            0 if d >= 4 => 2,
            c => c,
        },
        Family::C => floor_min(d / 2, 2),
        Family::D => match floor_min(d / 2, 3) {
            0 if d >= 4 => 3,
            c => c,
        },
        f => {
            if max_dim >= exceptional_min_dim(f).unwrap() {
                f.fixed_rank().unwrap()
            } else {
                0
            }
        }
    })
}

fn dim_at_most(ty: LieType, w: &Weight, cap: u64) -> Result<Option<DimValue>> {
    let d = weyl_dim(ty, w)?;
    Ok(if d <= cap { Some(d) } else { None })
}

/// Depth-first walk below `start`, only incrementing coordinates `>= from`.
/// Each weight has exactly one such increment path from zero, and the Weyl
/// dimension is strictly increasing along it, so a node above the cap can be
/// dropped together with its whole subtree.
fn walk(ty: LieType, cap: u64, start: Weight, start_dim: DimValue, from: usize) -> Result<Vec<CensusEntry>> {
    let n = ty.rank();
    let mut out = Vec::new();
    let mut stack = vec![(start, start_dim, from)];
    while let Some((w, d, from)) = stack.pop() {
        for j in from..n {
            let mut child = w.clone();
            child.coeffs_mut()[j] += 1;
            if let Some(cd) = dim_at_most(ty, &child, cap)? {
                stack.push((child, cd, j));
            }
        }
        out.push(CensusEntry {
            lie_type: ty,
            weight: w,
            dim: d,
        });
    }
    Ok(out)
}

/// Every dominant weight of `ty` whose Weyl dimension is at most `max_dim`,
/// sorted lexicographically by weight. The first-level branches are walked in
/// parallel.
pub fn enumerate_weights(ty: LieType, max_dim: u64) -> Result<Vec<CensusEntry>> {
    if max_dim < 1 {
        return Err(Error::domain("dimension cap must be at least 1"));
    }
    let n = ty.rank();
    let zero = Weight::zero(n);
    let mut out = vec![CensusEntry {
        lie_type: ty,
        weight: zero.clone(),
        dim: DimValue::from(1),
    }];
    let branches = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut w = zero.clone();
            w.coeffs_mut()[j] = 1;
            match dim_at_most(ty, &w, max_dim)? {
                Some(d) => walk(ty, max_dim, w, d, j),
                None => Ok(Vec::new()),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    out.extend(branches.into_iter().flatten());
    out.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(out)
}

/// [`enumerate_weights`] backed by an optional on-disk cache.
pub fn enumerate_weights_cached(
    ty: LieType,
    max_dim: u64,
    cache: Option<&WeightCache>,
) -> Result<Vec<CensusEntry>> {
    if let Some(c) = cache {
        if let Some(hit) = c.load(ty, max_dim) {
            return Ok(hit);
        }
    }
    let entries = enumerate_weights(ty, max_dim)?;
    if let Some(c) = cache {
        c.store(ty, max_dim, &entries)?;
    }
    Ok(entries)
}

/// Types with rank up to [`rank_cap`] for every family. With `canonical`
/// the duplicate ranges C2 and D3 are left out.
pub fn types_up_to(max_dim: u64, canonical: bool) -> Result<Vec<LieType>> {
    let mut out = Vec::new();
    for f in Family::ALL {
        let cap = rank_cap(f, max_dim)?;
        let lo = if canonical { f.canonical_min_rank() } else { f.min_rank() };
        for n in lo..=cap {
            out.push(LieType::new(f, n)?);
        }
    }
    Ok(out)
}

fn require_prime(r: u64) -> Result<()> {
    if !is_prime(r) {
        return Err(Error::domain(format!("{r} is not prime")));
    }
    Ok(())
}

/// All (type, weight) pairs whose Weyl dimension is exactly the prime `r`.
pub fn prime_degree_census(r: u64, canonical: bool) -> Result<Vec<CensusEntry>> {
    require_prime(r)?;
    let types = types_up_to(r, canonical)?;
    let per_type = types
        .par_iter()
        .map(|&ty| {
            Ok(enumerate_weights(ty, r)?
                .into_iter()
                .filter(|e| e.dim == r)
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out: Vec<CensusEntry> = per_type.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KacReport {
    pub prime: u64,
    pub expected: Vec<CensusEntry>,
    pub found: Vec<CensusEntry>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub notes: Vec<String>,
}

/// The prime-dimensional irreducible modules of simple Lie algebras
/// predicted by Kac's classification, with canonical type labels.
pub fn kac_expected(r: u64) -> Result<(Vec<CensusEntry>, Vec<String>)> {
    require_prime(r)?;
    let mut notes = Vec::new();
    let mut set = BTreeSet::new();
    let entry = |ty: LieType, w: Weight| CensusEntry {
        lie_type: ty,
        weight: w,
        dim: DimValue::from(r),
    };
    let rank = |x: u64| x as usize;

    // A1 with highest weight r-1, every prime
    set.insert(entry(LieType::new(Family::A, 1)?, Weight::new(vec![(r - 1) as u32])));
    if r > 2 {
        // sl_r: natural module and its dual
        let n = rank(r - 1);
        let ty = LieType::new(Family::A, n)?;
        set.insert(entry(ty, Weight::fundamental(n, 1)));
        set.insert(entry(ty, Weight::fundamental(n, n)));

        // so_r: natural module of B_{(r-1)/2}
        let m = rank((r - 1) / 2);
        if m >= 2 {
            set.insert(entry(LieType::new(Family::B, m)?, Weight::fundamental(m, 1)));
        } else {
            notes.push("B1 is A1; its 3-dimensional natural module coincides with A1 (2)".to_string());
        }
    }
    if r == 7 {
        set.insert(entry(LieType::new(Family::G2, 2)?, Weight::fundamental(2, 1)));
    }
    Ok((set.into_iter().collect(), notes))
}

pub fn verify_kac(r: u64) -> Result<KacReport> {
    let (expected, notes) = kac_expected(r)?;
    let found = prime_degree_census(r, true)?;
    Ok(KacReport {
        prime: r,
        matches: expected == found,
        expected,
        found,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(f: Family, n: usize) -> LieType {
        LieType::new(f, n).unwrap()
    }

    fn pairs(v: &[CensusEntry]) -> Vec<(String, String, String)> {
        v.iter()
            .map(|e| (e.lie_type.to_string(), e.weight.to_string(), e.dim.to_string()))
            .collect()
    }

    #[test]
    fn rank_cap_examples() {
        assert_eq!(rank_cap(Family::A, 7).unwrap(), 6);
        assert_eq!(rank_cap(Family::B, 7).unwrap(), 3);
        assert_eq!(rank_cap(Family::E8, 100).unwrap(), 0);
        assert_eq!(rank_cap(Family::E8, 248).unwrap(), 8);
        assert_eq!(rank_cap(Family::G2, 7).unwrap(), 2);
        assert_eq!(rank_cap(Family::G2, 6).unwrap(), 0);
        assert_eq!(rank_cap(Family::F4, 26).unwrap(), 4);
        assert_eq!(rank_cap(Family::B, 4).unwrap(), 2);
        assert_eq!(rank_cap(Family::B, 3).unwrap(), 0);
        assert_eq!(rank_cap(Family::C, 3).unwrap(), 0);
        assert_eq!(rank_cap(Family::C, 4).unwrap(), 2);
        assert_eq!(rank_cap(Family::D, 4).unwrap(), 3);
        assert_eq!(rank_cap(Family::D, 8).unwrap(), 4);
        assert!(rank_cap(Family::A, 0).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let a1 = enumerate_weights(ty(Family::A, 1), 4).unwrap();
        assert_eq!(
            pairs(&a1),
            vec![
                ("A1".into(), "0".into(), "1".into()),
                ("A1".into(), "1".into(), "2".into()),
                ("A1".into(), "2".into(), "3".into()),
                ("A1".into(), "3".into(), "4".into()),
            ]
        );
        let a2 = enumerate_weights(ty(Family::A, 2), 3).unwrap();
        assert_eq!(
            pairs(&a2),
            vec![
                ("A2".into(), "0,0".into(), "1".into()),
                ("A2".into(), "0,1".into(), "3".into()),
                ("A2".into(), "1,0".into(), "3".into()),
            ]
        );
        let g2 = enumerate_weights(ty(Family::G2, 2), 6).unwrap();
        assert_eq!(pairs(&g2), vec![("G2".into(), "0,0".into(), "1".into())]);
        assert!(enumerate_weights(ty(Family::A, 1), 0).is_err());
    }

    #[test]
    fn census_examples() {
        assert_eq!(
            pairs(&prime_degree_census(2, true).unwrap()),
            vec![("A1".into(), "1".into(), "2".into())]
        );
        let five: Vec<_> = pairs(&prime_degree_census(5, true).unwrap())
            .into_iter()
            .map(|(t, w, _)| format!("{t}:{w}"))
            .collect();
        assert_eq!(five, vec!["A1:4", "A4:0,0,0,1", "A4:1,0,0,0", "B2:1,0"]);
        let seven: Vec<_> = pairs(&prime_degree_census(7, true).unwrap())
            .into_iter()
            .map(|(t, w, _)| format!("{t}:{w}"))
            .collect();
        assert_eq!(
            seven,
            vec!["A1:6", "A6:0,0,0,0,0,1", "A6:1,0,0,0,0,0", "B3:1,0,0", "G2:1,0"]
        );
        assert!(prime_degree_census(9, true).is_err());
    }

    #[test]
    fn non_canonical_census_sees_c2() {
        let five = prime_degree_census(5, false).unwrap();
        assert!(five
            .iter()
            .any(|e| e.lie_type == ty(Family::C, 2) && e.weight == Weight::new(vec![0, 1])));
    }

    #[test]
    fn kac_small_primes() {
        let r3 = verify_kac(3).unwrap();
        assert!(r3.matches);
        assert_eq!(r3.expected.len(), 3);
        assert_eq!(r3.notes.len(), 1);
        for r in [2, 5, 7, 11] {
            assert!(verify_kac(r).unwrap().matches, "r = {r}");
        }
    }
}
