//! Root systems of the simple Lie types.
//!
//! Simple roots are numbered as in Bourbaki's plates. The invariant form is
//! normalized so that long roots have squared length 2, which makes the
//! length factor `t_i = (α_i, α_i) / 2` equal to `(ω_i, α_i)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
    ];

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    /// Rank of an exceptional family; `None` for the classical series.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
            f => f.fixed_rank().unwrap(),
        }
    }

    /// Smallest rank at which the family does not duplicate another one
    /// (B2 = C2, A3 = D3).
    pub fn canonical_min_rank(self) -> usize {
        match self {
            Family::C => 3,
            Family::D => 4,
            f => f.min_rank(),
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 | Family::E7 | Family::E8 => "E",
            Family::F4 => "F",
            Family::G2 => "G",
        }
    }

    /// Resolves a family from a letter and a rank (`E` + 7 gives `E7`).
    pub fn from_letter_and_rank(letter: &str, rank: usize) -> Result<Family> {
        let fam: Family = letter.parse()?;
        match (fam, letter.len()) {
            (Family::E6 | Family::E7 | Family::E8, 1) => match rank {
                6 => Ok(Family::E6),
                7 => Ok(Family::E7),
                8 => Ok(Family::E8),
                _ => Err(Error::RankDomain { family: Family::E8, rank }),
            },
            _ => Ok(fam),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `A`..`D`, the exceptional names (`E6`, `F4`, `G2`, ...) and the
    /// bare letters `E`, `F`, `G`. A bare `E` resolves to `E8` here; use
    /// [`Family::from_letter_and_rank`] when a rank is at hand.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E6" => Ok(Family::E6),
            "E7" => Ok(Family::E7),
            "E8" | "E" => Ok(Family::E8),
            "F4" | "F" => Ok(Family::F4),
            "G2" | "G" => Ok(Family::G2),
            other => Err(Error::domain(format!("unknown Lie family {other:?}"))),
        }
    }
}

/// A simple Lie family together with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family.fixed_rank() {
            Some(r) => rank == r,
            None => rank >= family.min_rank(),
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::RankDomain { family, rank })
        }
    }

    /// Parses a letter/name plus rank, e.g. `("E", 8)` or `("G2", 2)`.
    pub fn parse(family: &str, rank: usize) -> Result<Self> {
        LieType::new(Family::from_letter_and_rank(family, rank)?, rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_canonical(&self) -> bool {
        self.rank >= self.family.canonical_min_rank()
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.fixed_rank() {
            Some(_) => write!(f, "{}", self.family),
            None => write!(f, "{}{}", self.family, self.rank),
        }
    }
}

impl From<LieType> for String {
    fn from(t: LieType) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for LieType {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for LieType {
    type Err = Error;

    /// Parses compact names such as `A2`, `D5`, `E6`, `G2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::domain(format!("cannot parse Lie type {s:?}")))?;
        let (letter, digits) = s.split_at(split);
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::domain(format!("cannot parse Lie type {s:?}")))?;
        LieType::parse(letter, rank)
    }
}

/// Positive roots, Cartan matrix and length factors of one simple type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    pub lie_type: LieType,
    /// `cartan[i][j] = 2 (α_i, α_j) / (α_i, α_i)`.
    pub cartan: Vec<Vec<i64>>,
    /// Coefficient vectors in the simple-root basis, sorted by height and
    /// then lexicographically.
    pub positive_roots: Vec<Vec<u32>>,
    pub length_factor: Vec<Ratio<i64>>,
    /// Length factors multiplied by `t_scale`, all integral.
    pub scaled_length: Vec<u64>,
    pub t_scale: u64,
}

impl RootSystemData {
    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    /// Number of positive roots.
    pub fn l(&self) -> usize {
        self.positive_roots.len()
    }
}

/// Bourbaki Dynkin diagram: bonds (0-indexed) and length factors.
fn diagram(ty: LieType) -> (Vec<(usize, usize)>, Vec<Ratio<i64>>) {
    let n = ty.rank();
    let one = Ratio::from_integer(1);
    let half = Ratio::new(1, 2);
    let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match ty.family() {
        Family::A => (chain(n), vec![one; n]),
        Family::B => {
            let mut t = vec![one; n];
            t[n - 1] = half;
            (chain(n), t)
        }
        Family::C => {
            let mut t = vec![half; n];
            t[n - 1] = one;
            (chain(n), t)
        }
        Family::D => {
            let mut bonds = chain(n - 1);
            bonds.push((n - 3, n - 1));
            (bonds, vec![one; n])
        }
        Family::E6 | Family::E7 | Family::E8 => {
            // 1-3-4-5-6-7-8 with 2 attached to 4
            let mut bonds = vec![(0, 2), (1, 3)];
            bonds.extend((2..n - 1).map(|i| (i, i + 1)));
            (bonds, vec![one; n])
        }
        Family::F4 => (chain(4), vec![one, one, half, half]),
        Family::G2 => (chain(2), vec![Ratio::new(1, 3), one]),
    }
}

fn cartan_from(bonds: &[(usize, usize)], t: &[Ratio<i64>]) -> Vec<Vec<i64>> {
    let n = t.len();
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in bonds {
        // (α_i, α_j) = -max(t_i, t_j) for bonded nodes
        let ip = -std::cmp::max(t[i], t[j]);
        for (a, b) in [(i, j), (j, i)] {
            let v = ip / t[a];
            debug_assert!(v.is_integer());
            c[a][b] = v.to_integer();
        }
    }
    c
}

/// Closes `seeds` (which must contain every simple root) under root strings.
///
/// Roots are processed in order of height; for a root β and simple root α_i
/// the α_i-string through β runs from β - pα_i to β + qα_i with
/// `p - q = <β, α_i^∨>`, so β + α_i is a root exactly when `q > 0`.
pub fn root_closure(cartan: &[Vec<i64>], seeds: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = cartan.len();
    let height = |v: &[u32]| v.iter().map(|&b| b as u64).sum::<u64>();
    let mut known: HashSet<Vec<u32>> = seeds.iter().cloned().collect();
    let mut queue: BTreeSet<(u64, Vec<u32>)> =
        seeds.iter().map(|v| (height(v), v.clone())).collect();

    while let Some((h, beta)) = queue.pop_first() {
        for i in 0..n {
            let mut p = 0i64;
            let mut probe = beta.clone();
            while probe[i] > 0 {
                probe[i] -= 1;
                if !known.contains(&probe) {
                    break;
                }
                p += 1;
            }
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j] as i64).sum();
            if p - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if known.insert(up.clone()) {
                    queue.insert((h + 1, up));
                }
            }
        }
    }

    let mut roots: Vec<Vec<u32>> = known.into_iter().collect();
    roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
    roots
}

pub fn simple_roots(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| {
            let mut v = vec![0u32; n];
            v[i] = 1;
            v
        })
        .collect()
}

pub fn build_root_system(ty: LieType) -> RootSystemData {
    let (bonds, t) = diagram(ty);
    let cartan = cartan_from(&bonds, &t);
    let positive_roots = root_closure(&cartan, &simple_roots(ty.rank()));
    let t_scale = t.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let scaled_length = t
        .iter()
        .map(|x| (x * t_scale).to_integer() as u64)
        .collect();
    RootSystemData {
        lie_type: ty,
        cartan,
        positive_roots,
        length_factor: t,
        scaled_length,
        t_scale: t_scale as u64,
    }
}

/// Memoized [`build_root_system`]. Concurrent first calls may build twice;
/// the results are identical.
pub fn root_system(ty: LieType) -> Arc<RootSystemData> {
    static MEMO: OnceLock<Mutex<HashMap<LieType, Arc<RootSystemData>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(rs) = memo.lock().unwrap().get(&ty) {
        return Arc::clone(rs);
    }
    let built = Arc::new(build_root_system(ty));
    Arc::clone(memo.lock().unwrap().entry(ty).or_insert(built))
}

/// `|Φ⁺|` from the closed forms, without building the roots.
pub fn positive_root_count(ty: LieType) -> usize {
    let n = ty.rank();
    match ty.family() {
        Family::A => (n * n + n) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * n - n,
        Family::E6 => 36,
        Family::E7 => 63,
        Family::E8 => 120,
        Family::F4 => 24,
        Family::G2 => 6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(f: Family, n: usize) -> LieType {
        LieType::new(f, n).unwrap()
    }

    #[test]
    fn rank_domain() {
        assert!(LieType::new(Family::A, 0).is_err());
        assert!(LieType::new(Family::B, 1).is_err());
        assert!(LieType::new(Family::D, 2).is_err());
        assert!(LieType::new(Family::E6, 7).is_err());
        assert!(LieType::new(Family::G2, 2).is_ok());
        assert!(ty(Family::C, 2).rank() == 2 && !ty(Family::C, 2).is_canonical());
        assert!(!ty(Family::D, 3).is_canonical());
        assert!(ty(Family::D, 4).is_canonical());
    }

    #[test]
    fn parsing() {
        assert_eq!("A2".parse::<LieType>().unwrap(), ty(Family::A, 2));
        assert_eq!("E7".parse::<LieType>().unwrap(), ty(Family::E7, 7));
        assert_eq!(LieType::parse("E", 6).unwrap(), ty(Family::E6, 6));
        assert_eq!(LieType::parse("g2", 2).unwrap(), ty(Family::G2, 2));
        assert!(LieType::parse("E", 5).is_err());
        assert!("X3".parse::<LieType>().is_err());
        assert_eq!(ty(Family::D, 5).to_string(), "D5");
        assert_eq!(ty(Family::F4, 4).to_string(), "F4");
    }

    #[test]
    fn a1() {
        let rs = build_root_system(ty(Family::A, 1));
        assert_eq!(rs.positive_roots, vec![vec![1]]);
        assert_eq!(rs.length_factor, vec![Ratio::from_integer(1)]);
    }

    #[test]
    fn a2() {
        let rs = build_root_system(ty(Family::A, 2));
        assert_eq!(rs.cartan, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(rs.positive_roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn g2() {
        let rs = build_root_system(ty(Family::G2, 2));
        assert_eq!(rs.l(), 6);
        assert_eq!(rs.length_factor, vec![Ratio::new(1, 3), Ratio::from_integer(1)]);
        assert_eq!(rs.cartan, vec![vec![2, -3], vec![-1, 2]]);
        assert!(rs.positive_roots.contains(&vec![3, 2]));
        assert_eq!(rs.scaled_length, vec![1, 3]);
        assert_eq!(rs.t_scale, 3);
    }

    #[test]
    fn b_and_c_are_transposes() {
        for n in 2..6 {
            let b = build_root_system(ty(Family::B, n));
            let c = build_root_system(ty(Family::C, n));
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(b.cartan[i][j], c.cartan[j][i]);
                }
            }
            // highest roots: B has (1,2,...,2), C has (2,...,2,1)
            let hb = b.positive_roots.last().unwrap();
            let hc = c.positive_roots.last().unwrap();
            assert_eq!(hb[0], 1);
            assert_eq!(hc[n - 1], 1);
        }
    }

    #[test]
    fn highest_roots_of_exceptionals() {
        let hi = |f, n| build_root_system(ty(f, n)).positive_roots.last().unwrap().clone();
        assert_eq!(hi(Family::E6, 6), vec![1, 2, 2, 3, 2, 1]);
        assert_eq!(hi(Family::E7, 7), vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(hi(Family::E8, 8), vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(hi(Family::F4, 4), vec![2, 3, 4, 2]);
        assert_eq!(hi(Family::G2, 2), vec![3, 2]);
    }

    #[test]
    fn root_count_examples() {
        assert_eq!(positive_root_count(ty(Family::A, 3)), 6);
        assert_eq!(positive_root_count(ty(Family::E7, 7)), 63);
        assert_eq!(positive_root_count(ty(Family::D, 4)), 12);
    }

    #[test]
    fn cartan_entries() {
        for f in Family::ALL {
            let n = f.fixed_rank().unwrap_or(6);
            let rs = build_root_system(ty(f, n));
            for i in 0..n {
                for j in 0..n {
                    let v = rs.cartan[i][j];
                    if i == j {
                        assert_eq!(v, 2);
                    } else {
                        assert!((-3..=0).contains(&v), "{f} {i} {j} {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn memo_returns_same_data() {
        let t = ty(Family::E7, 7);
        let a = root_system(t);
        let b = root_system(t);
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(*a, build_root_system(t));
    }
}
