//! Weyl dimension formula, the `(c+1)^l` bound and duality of highest
//! weights. Everything here is exact integer arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsystem::{root_system, Family, LieType};

/// Dominant weight `(a_1, ..., a_n)` in the basis of fundamental weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<u32>);

impl Weight {
    pub fn new(coeffs: Vec<u32>) -> Self {
        Weight(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `ω_i`, with `i` counted from 1.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i), "fundamental weight index out of range");
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Weight(v)
    }

    /// Checks signs before building a weight from untrusted input.
    pub fn from_signed(coeffs: &[i64]) -> Result<Self> {
        coeffs
            .iter()
            .map(|&a| {
                u32::try_from(a).map_err(|_| {
                    Error::domain(format!("weight coefficient {a} is not a non-negative 32-bit integer"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `c(ω)`, the largest coefficient.
    pub fn max_coeff(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn is_p_restricted(&self, p: u64) -> bool {
        self.0.iter().all(|&a| (a as u64) < p)
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated, no spaces: `2,5`.
    fn from_str(s: &str) -> Result<Self> {
        let parsed = s
            .split(',')
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| Error::domain(format!("bad weight coefficient {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Weight::from_signed(&parsed)
    }
}

/// A module dimension. Serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimValue(pub BigUint);

impl DimValue {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// `Some` when the value fits in a `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl From<u64> for DimValue {
    fn from(v: u64) -> Self {
        DimValue(BigUint::from(v))
    }
}

impl PartialEq<u64> for DimValue {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl PartialOrd<u64> for DimValue {
    fn partial_cmp(&self, other: &u64) -> Option<std::cmp::Ordering> {
        self.0.partial_cmp(&BigUint::from(*other))
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for DimValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for DimValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(DimValue)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal integer: {s:?}")))
    }
}

fn check_shape(ty: LieType, w: &Weight) -> Result<()> {
    if w.len() != ty.rank() {
        return Err(Error::Shape {
            expected: ty.rank(),
            found: w.len(),
        });
    }
    Ok(())
}

/// Running product of small factors, spilled into a `BigUint` only when the
/// `u128` accumulator would overflow.
struct Product {
    big: BigUint,
    small: u128,
}

impl Product {
    fn new() -> Self {
        Product {
            big: BigUint::one(),
            small: 1,
        }
    }

    fn mul(&mut self, x: u64) {
        match self.small.checked_mul(x as u128) {
            Some(v) => self.small = v,
            None => {
                self.big *= self.small;
                self.small = x as u128;
            }
        }
    }

    fn finish(mut self) -> BigUint {
        self.big *= self.small;
        self.big
    }
}

/// Weyl dimension of the irreducible module with highest weight `w`:
/// `Π_{α>0} (ω+ρ, α) / (ρ, α)`.
///
/// With `α = Σ b_i α_i` the factor is `Σ (a_i+1) b_i t_i / Σ b_i t_i`. The
/// length factors are scaled to integers, numerator and denominator are
/// multiplied out separately and divided once at the end.
pub fn weyl_dim(ty: LieType, w: &Weight) -> Result<DimValue> {
    check_shape(ty, w)?;
    let rs = root_system(ty);
    let mut num = Product::new();
    let mut den = Product::new();
    for root in &rs.positive_roots {
        let mut n_a = 0u64;
        let mut d_a = 0u64;
        for ((&b, &s), &a) in root.iter().zip(&rs.scaled_length).zip(w.coeffs()) {
            let bs = b as u64 * s;
            d_a += bs;
            n_a += (a as u64 + 1) * bs;
        }
        num.mul(n_a);
        den.mul(d_a);
    }
    let (q, rem) = num.finish().div_rem(&den.finish());
    if !rem.is_zero() {
        return Err(Error::Invariant(format!(
            "Weyl product for {ty} at ({w}) is not an integer"
        )));
    }
    Ok(DimValue(q))
}

/// `(c+1)^l` with `c` the largest coefficient of `w` and `l = |Φ⁺|`.
pub fn bn1_bound(ty: LieType, w: &Weight) -> Result<DimValue> {
    check_shape(ty, w)?;
    let l = root_system(ty).l();
    Ok(DimValue(BigUint::from(w.max_coeff() as u64 + 1).pow(l as u32)))
}

/// Highest weight of the dual module, i.e. the image of `w` under `-w_0`.
pub fn dual_weight(ty: LieType, w: &Weight) -> Result<Weight> {
    check_shape(ty, w)?;
    let mut v = w.clone();
    let n = ty.rank();
    let c = v.coeffs_mut();
    match ty.family() {
        Family::A => c.reverse(),
        Family::D if n % 2 == 1 => c.swap(n - 2, n - 1),
        Family::E6 => {
            c.swap(0, 5);
            c.swap(2, 4);
        }
        _ => {}
    }
    Ok(v)
}

pub fn is_self_dual(ty: LieType, w: &Weight) -> Result<bool> {
    Ok(dual_weight(ty, w)? == *w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(f: Family, n: usize) -> LieType {
        LieType::new(f, n).unwrap()
    }

    fn dim(f: Family, n: usize, w: &[u32]) -> u64 {
        weyl_dim(ty(f, n), &Weight::new(w.to_vec()))
            .unwrap()
            .to_u64()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(dim(Family::A, 2, &[0, 0]), 1);
        assert_eq!(dim(Family::E8, 8, &[0, 0, 0, 0, 0, 0, 0, 1]), 248);
        assert_eq!(dim(Family::A, 2, &[2, 5]), 81);
        assert_eq!(dim(Family::B, 3, &[1, 0, 0]), 7);
    }

    #[test]
    fn a2_closed_form() {
        for a in 0..15u64 {
            for b in 0..15u64 {
                let want = (a + 1) * (b + 1) * (a + b + 2) / 2;
                assert_eq!(dim(Family::A, 2, &[a as u32, b as u32]), want);
            }
        }
    }

    #[test]
    fn spin_and_adjoint_modules() {
        assert_eq!(dim(Family::B, 3, &[0, 0, 1]), 8);
        assert_eq!(dim(Family::B, 2, &[0, 1]), 4);
        assert_eq!(dim(Family::D, 5, &[0, 0, 0, 0, 1]), 16);
        assert_eq!(dim(Family::E6, 6, &[0, 1, 0, 0, 0, 0]), 78);
        assert_eq!(dim(Family::E7, 7, &[1, 0, 0, 0, 0, 0, 0]), 133);
        assert_eq!(dim(Family::F4, 4, &[1, 0, 0, 0]), 52);
        assert_eq!(dim(Family::G2, 2, &[0, 1]), 14);
        assert_eq!(dim(Family::C, 3, &[0, 1, 0]), 14);
    }

    #[test]
    fn shape_errors() {
        let t = ty(Family::A, 2);
        let bad = Weight::new(vec![1, 2, 3]);
        assert!(matches!(weyl_dim(t, &bad), Err(Error::Shape { expected: 2, found: 3 })));
        assert!(matches!(dual_weight(t, &bad), Err(Error::Shape { .. })));
        assert!(matches!(bn1_bound(t, &bad), Err(Error::Shape { .. })));
        assert!(Weight::from_signed(&[1, -1]).is_err());
        assert!("1,-2".parse::<Weight>().is_err());
        assert!("1, 2".parse::<Weight>().is_err());
        assert_eq!("2,5".parse::<Weight>().unwrap(), Weight::new(vec![2, 5]));
    }

    #[test]
    fn bn1_examples() {
        let a2 = ty(Family::A, 2);
        assert_eq!(bn1_bound(a2, &Weight::new(vec![2, 5])).unwrap(), 216);
        for k in 0..20 {
            let w = Weight::new(vec![k]);
            let a1 = ty(Family::A, 1);
            assert_eq!(bn1_bound(a1, &w).unwrap(), weyl_dim(a1, &w).unwrap());
            assert_eq!(weyl_dim(a1, &w).unwrap(), k as u64 + 1);
        }
        assert_eq!(bn1_bound(ty(Family::G2, 2), &Weight::new(vec![1, 0])).unwrap(), 64);
    }

    #[test]
    fn duals() {
        let d = |f, n, w: &[u32]| dual_weight(ty(f, n), &Weight::new(w.to_vec())).unwrap();
        assert_eq!(d(Family::A, 2, &[2, 5]), Weight::new(vec![5, 2]));
        assert_eq!(d(Family::B, 3, &[0, 1, 1]), Weight::new(vec![0, 1, 1]));
        assert_eq!(d(Family::D, 5, &[0, 0, 0, 1, 0]), Weight::new(vec![0, 0, 0, 0, 1]));
        assert_eq!(d(Family::D, 4, &[0, 0, 1, 0]), Weight::new(vec![0, 0, 1, 0]));
        assert_eq!(d(Family::E6, 6, &[1, 2, 3, 4, 5, 6]), Weight::new(vec![6, 2, 5, 4, 3, 1]));

        let sd = |f, n, w: &[u32]| is_self_dual(ty(f, n), &Weight::new(w.to_vec())).unwrap();
        assert!(!sd(Family::A, 2, &[2, 5]));
        assert!(sd(Family::A, 2, &[1, 1]));
        assert!(sd(Family::C, 3, &[3, 0, 7]));
    }

    #[test]
    fn dim_value_serde() {
        let d = DimValue::from(248);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, "\"248\"");
        assert_eq!(serde_json::from_str::<DimValue>(&s).unwrap(), d);
        assert!(serde_json::from_str::<DimValue>("\"12x\"").is_err());
    }
}
