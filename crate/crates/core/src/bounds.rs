//! Exact evaluation of the explicit bounds on characteristics, module
//! dimensions and candidate counts.
//!
//! A bound is kept symbolically as `(Σ m_i √s_i) · base^(num/den)` with
//! `den ∈ {1, 2}`. Its integer floor is computed with integer square roots
//! and then certified by an exact comparison, never by floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsystem::{Family, LieType};
use crate::sieve::{is_prime, DEFAULT_SIEVE_LIMIT};

pub const DEFAULT_BIT_BUDGET: u64 = 65_536;

/// `multiplier · √radicand`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SqrtTerm {
    pub multiplier: u64,
    pub radicand: u64,
}

impl SqrtTerm {
    pub fn int(m: u64) -> Self {
        SqrtTerm {
            multiplier: m,
            radicand: 1,
        }
    }

    pub fn sqrt(m: u64, s: u64) -> Self {
        SqrtTerm {
            multiplier: m,
            radicand: s,
        }
    }
}

fn ser_opt_big<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_some(&b.to_str_radix(10)),
        None => s.serialize_none(),
    }
}

fn ser_ratio<S: Serializer>(v: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundExpr {
    pub coefficient_terms: Vec<SqrtTerm>,
    pub base: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub exponent: Ratio<u64>,
    #[serde(serialize_with = "ser_opt_big")]
    pub floor_value: Option<BigUint>,
    #[serde(serialize_with = "ser_opt_big")]
    pub ceil_value: Option<BigUint>,
    /// Set when `base^exponent` is larger than the bit budget and only the
    /// symbolic form is reported.
    pub exceeds_budget: bool,
    pub flags: Vec<String>,
}

impl BoundExpr {
    /// Builds and evaluates `(Σ terms) · base^(num/den)` under the default
    /// bit budget. At most two coefficient terms are supported.
    pub fn new(terms: Vec<SqrtTerm>, base: u64, num: u64, den: u64) -> Self {
        let exponent = Ratio::new(num, den);
        assert!(
            *exponent.denom() == 1 || *exponent.denom() == 2,
            "exponent denominator must be 1 or 2"
        );
        assert!(terms.len() <= 2, "at most two coefficient terms");
        BoundExpr {
            coefficient_terms: terms,
            base,
            exponent,
            floor_value: None,
            ceil_value: None,
            exceeds_budget: false,
            flags: Vec::new(),
        }
        .with_budget(DEFAULT_BIT_BUDGET)
    }

    pub fn power(base: u64, num: u64, den: u64) -> Self {
        BoundExpr::new(vec![SqrtTerm::int(1)], base, num, den)
    }

    pub fn with_flag(mut self, flag: &str) -> Self {
        self.flags.push(flag.to_string());
        self
    }

    /// Approximate size of `base^exponent` in bits.
    pub fn estimated_bits(&self) -> f64 {
        if self.base < 2 {
            return 1.0;
        }
        let e = *self.exponent.numer() as f64 / *self.exponent.denom() as f64;
        e * (self.base as f64).log2()
    }

    /// Re-evaluates the floor and ceiling under a new budget.
    pub fn with_budget(mut self, bits: u64) -> Self {
        if self.estimated_bits() > bits as f64 {
            self.floor_value = None;
            self.ceil_value = None;
            self.exceeds_budget = true;
            return self;
        }
        self.exceeds_budget = false;
        let floor = self.compute_floor();
        let ceil = if self.cmp_integer(&floor) == Ordering::Equal {
            floor.clone()
        } else {
            &floor + 1u32
        };
        self.floor_value = Some(floor);
        self.ceil_value = Some(ceil);
        self
    }

    /// The value written as `Σ √N_i` with integer `N_i = m_i² s_i b^(2e)`.
    fn radicands(&self) -> Vec<BigUint> {
        let two_e = 2 * *self.exponent.numer() / *self.exponent.denom();
        let b_pow = BigUint::from(self.base).pow(two_e as u32);
        self.coefficient_terms
            .iter()
            .map(|t| BigUint::from(t.multiplier).pow(2) * t.radicand * &b_pow)
            .collect()
    }

    /// Exact comparison of the bound with an integer.
    pub fn cmp_integer(&self, f: &BigUint) -> Ordering {
        cmp_sum_sqrt(&self.radicands(), f)
    }

    fn compute_floor(&self) -> BigUint {
        let rad = self.radicands();
        // each isqrt undershoots by less than 1
        let mut f: BigUint = rad.iter().map(|n| n.sqrt()).sum();
        while cmp_sum_sqrt(&rad, &(&f + 1u32)) != Ordering::Less {
            f += 1u32;
        }
        f
    }

    /// `floor <= value < floor + 1`, checked exactly.
    pub fn verify_floor(&self) -> bool {
        match &self.floor_value {
            None => true,
            Some(f) => {
                self.cmp_integer(f) != Ordering::Less
                    && self.cmp_integer(&(f + 1u32)) == Ordering::Less
            }
        }
    }

    /// True when the value is an integer (only known within budget).
    pub fn is_integral(&self) -> Option<bool> {
        self.floor_value
            .as_ref()
            .map(|f| self.cmp_integer(f) == Ordering::Equal)
    }

    pub fn symbolic(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficient_terms
            .iter()
            .map(|t| match (t.multiplier, t.radicand) {
                (m, 1) => m.to_string(),
                (1, s) => format!("sqrt({s})"),
                (m, s) => format!("{m}*sqrt({s})"),
            })
            .collect();
        let coeff = match terms.len() {
            0 => "0".to_string(),
            1 if terms[0] == "1" => String::new(),
            1 => format!("{}*", terms[0]),
            _ => format!("({})*", terms.join("+")),
        };
        let exp = if *self.exponent.denom() == 1 {
            self.exponent.numer().to_string()
        } else {
            format!("({}/{})", self.exponent.numer(), self.exponent.denom())
        };
        write!(f, "{coeff}{}^{exp}", self.base)
    }
}

/// Exact `cmp(Σ √N_i, f)` for zero, one or two terms.
pub fn cmp_sum_sqrt(rad: &[BigUint], f: &BigUint) -> Ordering {
    let f2 = f * f;
    match rad {
        [] => BigUint::zero().cmp(f),
        [n] => n.cmp(&f2),
        [a, b] => match f2.cmp(a) {
            Ordering::Less => Ordering::Greater,
            Ordering::Equal => {
                if b.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                }
            }
            Ordering::Greater => {
                // f > √a, so compare √b with f - √a, i.e. 2f√a with f² + a - b
                let r = BigInt::from(f2.clone()) + BigInt::from(a.clone()) - BigInt::from(b.clone());
                if r < BigInt::zero() {
                    return Ordering::Greater;
                }
                let lhs = BigUint::from(4u32) * &f2 * a;
                let r = r.to_biguint().expect("non-negative");
                lhs.cmp(&(&r * &r))
            }
        },
        _ => panic!("at most two terms are supported"),
    }
}

/// Upper bound on the characteristic: `p < r^(r²/2)`.
pub fn p_bound(r: u64) -> BoundExpr {
    let e = BoundExpr::power(r, r * r, 2);
    if r <= 2 {
        e.with_flag("theorem_requires_r_gt_2")
    } else {
        e
    }
}

/// Exclusive upper limit for the primes `p < r^(r²/2)`: the bound itself
/// when integral, otherwise its floor plus one. `None` over budget.
pub fn p_range_limit(r: u64) -> Option<u64> {
    let b = p_bound(r);
    let f = b.floor_value.as_ref()?;
    let lim = if b.is_integral()? { f.clone() } else { f + 1u32 };
    u64::try_from(&lim).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CapScope {
    Generic,
    Family(Family),
    Type(LieType),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapRule {
    /// `dim W < d^(d²/2)`
    Generic,
    /// `dim W <= d^d`
    TypeA,
    /// `dim W <= d^(d/2)`, rank at least 7
    TypeB,
    /// `dim W <= d^(d-4)`
    TypeC,
    /// `dim W <= d^((d+2)/2)`, rank at least 8
    TypeD,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylCap {
    pub bound: BoundExpr,
    pub rule: CapRule,
    /// `true` when the Weyl module dimension is strictly below the bound.
    pub strict: bool,
    /// For B2..B6 and D3..D7: the spin lower bound on `d` for modules that
    /// are not the natural one.
    pub spin_min_dim: Option<u64>,
}

impl WeylCap {
    /// Whether a Weyl module of dimension `dim` is admitted by the cap.
    /// Over budget everything is admitted.
    pub fn admits(&self, dim: &BigUint) -> bool {
        match self.bound.cmp_integer(dim) {
            Ordering::Greater => true,
            Ordering::Equal => !self.strict,
            Ordering::Less => false,
        }
    }

    /// Largest admitted dimension, when it fits in a `u64`.
    pub fn max_admitted(&self) -> Option<u64> {
        let f = self.bound.floor_value.as_ref()?;
        let m = if self.strict && self.bound.is_integral()? {
            if f.is_zero() {
                return Some(0);
            }
            f - 1u32
        } else {
            f.clone()
        };
        u64::try_from(&m).ok()
    }
}

/// Upper bound on the dimension of a Weyl module whose irreducible quotient
/// has dimension `d`; refined per family where the rank permits.
pub fn weyl_cap(scope: CapScope, d: u64) -> Result<WeylCap> {
    if d < 2 {
        return Err(Error::domain("weyl_cap needs d >= 2"));
    }
    let generic = |spin: Option<u64>| WeylCap {
        bound: BoundExpr::power(d, d * d, 2),
        rule: CapRule::Generic,
        strict: true,
        spin_min_dim: spin,
    };
    let refined = |rule, num, den| WeylCap {
        bound: BoundExpr::power(d, num, den),
        rule,
        strict: false,
        spin_min_dim: None,
    };
    let (family, rank) = match scope {
        CapScope::Generic => return Ok(generic(None)),
        CapScope::Family(f) => (f, None),
        CapScope::Type(t) => (t.family(), Some(t.rank())),
    };
    Ok(match (family, rank) {
        (Family::A, _) => refined(CapRule::TypeA, d, 1),
        (Family::C, Some(2)) => generic(None),
        (Family::C, _) if d >= 4 => refined(CapRule::TypeC, d - 4, 1),
        (Family::B, Some(n)) if n >= 7 => refined(CapRule::TypeB, d, 2),
        (Family::B, Some(n)) => generic(Some(1 << n)),
        (Family::D, Some(n)) if n >= 8 => refined(CapRule::TypeD, d + 2, 2),
        (Family::D, Some(n)) => generic(Some(1 << (n - 1))),
        _ => generic(None),
    })
}

/// Bound on the number of `p`-restricted irreducible representations of
/// dimension at most `d`. `family = None` gives the family-free bound.
pub fn rep_count_cap(family: Option<Family>, d: u64, p: u64) -> Result<BoundExpr> {
    if d < 1 {
        return Err(Error::domain("rep_count_cap needs d >= 1"));
    }
    Ok(match (family, p) {
        (_, 2) => BoundExpr::power(d, 1, 1),
        (Some(Family::A) | None, _) => BoundExpr::power(d, 4, 1),
        (Some(_), _) => BoundExpr::power(d, 5, 2),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateCaps {
    /// Groups for one fixed characteristic: `(6√(3r)+7)·r^4`.
    pub bb1: BoundExpr,
    /// All characteristics: `(6√(3r)+7)·r^(r²/2+4)`.
    pub th8: BoundExpr,
    /// Non-self-dual groups, all characteristics: `(4√(3r)+2)·r^((r²+8)/2)`.
    pub t11: BoundExpr,
}

pub fn candidate_count_caps(r: u64) -> CandidateCaps {
    let wide = || vec![SqrtTerm::sqrt(6, 3 * r), SqrtTerm::int(7)];
    let narrow = vec![SqrtTerm::sqrt(4, 3 * r), SqrtTerm::int(2)];
    // r^(r²/2 + 4), shared by th8 and t11
    let total_exp = p_bound(r).exponent + Ratio::from_integer(4);
    let bb1 = BoundExpr::new(wide(), r, 4, 1);
    let th8 = BoundExpr::new(wide(), r, *total_exp.numer(), *total_exp.denom());
    let t11 = BoundExpr::new(narrow, r, *total_exp.numer(), *total_exp.denom());
    debug_assert_eq!(t11.exponent, Ratio::new(r * r + 8, 2));
    CandidateCaps { bb1, th8, t11 }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AltCap {
    #[serde(serialize_with = "ser_ratio")]
    pub value: Ratio<u64>,
    pub floor: u64,
}

/// Largest `u` such that `Alt(u)` can be a section of `GL_m(F)`:
/// `u <= (3m+6)/2`.
pub fn alternating_cap(m: u64) -> Result<AltCap> {
    if m < 1 {
        return Err(Error::domain("alternating_cap needs m >= 1"));
    }
    let value = Ratio::new(3 * m + 6, 2);
    Ok(AltCap {
        value,
        floor: value.to_integer(),
    })
}

/// Second smallest dimension of a module that is not a twist of the natural
/// module, for classical types in their stated rank ranges.
pub fn second_minimal_dim(family: Family, n: u64) -> Result<u64> {
    let out_of_range = || {
        Error::Inapplicable(format!(
            "no second-minimal dimension bound for {family} at rank {n}"
        ))
    };
    match family {
        Family::A if n >= 1 => Ok((n * n + n) / 2),
        Family::B if n >= 7 => Ok(2 * n * n + n),
        Family::C if n >= 2 => Ok(2 * n * n - n - 2),
        Family::D if n >= 8 => Ok(2 * n * n - n - 2),
        _ => Err(out_of_range()),
    }
}

/// `|SL_r(q)| = q^(r(r-1)/2) · Π_{i=2..r} (q^i - 1)`
pub fn order_of_sl(r: u64, q: &BigUint) -> BigUint {
    let mut out = q.pow((r * (r - 1) / 2) as u32);
    for i in 2..=r {
        out *= q.pow(i as u32) - BigUint::one();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlOrderNote {
    /// Greatest prime below `r^(r²/2)`.
    pub p0: Option<u64>,
    pub k: u64,
    #[serde(serialize_with = "ser_opt_big")]
    pub order: Option<BigUint>,
    pub reason: Option<String>,
}

/// `|SL_r(p0^k)|`, the resulting order bound for Lie-type groups in
/// defining characteristic, evaluated when the prime search and the bit
/// budget allow it.
pub fn sl_order_note(r: u64, k: u64, budget_bits: u64) -> SlOrderNote {
    let mut note = SlOrderNote {
        p0: None,
        k,
        order: None,
        reason: None,
    };
    let limit = match p_range_limit(r) {
        Some(l) if l <= DEFAULT_SIEVE_LIMIT => l,
        _ => {
            note.reason = Some("p_bound beyond the sieve limit; symbolic only".into());
            return note;
        }
    };
    let p0 = (2..limit).rev().find(|&x| is_prime(x));
    note.p0 = p0;
    let Some(p0) = p0 else {
        note.reason = Some("no prime below the bound".into());
        return note;
    };
    let bits = (r * r) as f64 * k as f64 * (p0 as f64).log2();
    if bits > budget_bits as f64 {
        note.reason = Some("order exceeds the bit budget".into());
        return note;
    }
    let q = BigUint::from(p0).pow(k as u32);
    note.order = Some(order_of_sl(r, &q));
    note
}

#[cfg(test)]
mod tests {
    use super::*;

    fn floor(b: &BoundExpr) -> String {
        b.floor_value.as_ref().unwrap().to_string()
    }

    #[test]
    fn p_bound_examples() {
        let b3 = p_bound(3);
        assert_eq!(floor(&b3), "140");
        assert_eq!(b3.to_string(), "3^(9/2)");
        assert!(b3.flags.is_empty());
        let b2 = p_bound(2);
        assert_eq!(floor(&b2), "4");
        assert_eq!(b2.is_integral(), Some(true));
        assert_eq!(b2.flags, vec!["theorem_requires_r_gt_2"]);
        assert_eq!(floor(&p_bound(7)), "506876294100502275687");
        assert_eq!(p_range_limit(3), Some(141));
        assert_eq!(p_range_limit(2), Some(4));
    }

    #[test]
    fn budget() {
        let b = p_bound(137);
        assert!(b.exceeds_budget);
        assert!(b.floor_value.is_none());
        let small = p_bound(3).with_budget(4);
        assert!(small.exceeds_budget);
        assert!(p_bound(17).floor_value.is_some());
    }

    #[test]
    fn weyl_cap_examples() {
        let g = weyl_cap(CapScope::Generic, 5).unwrap();
        assert_eq!(g.bound.to_string(), "5^(25/2)");
        assert!(g.strict);
        let a = weyl_cap(CapScope::Family(Family::A), 5).unwrap();
        assert_eq!(floor(&a.bound), "3125");
        assert!(!a.strict);
        let c = weyl_cap(CapScope::Family(Family::C), 10).unwrap();
        assert_eq!(floor(&c.bound), "1000000");
        let b_small = weyl_cap(CapScope::Type(LieType::new(Family::B, 3).unwrap()), 7).unwrap();
        assert_eq!(b_small.rule, CapRule::Generic);
        assert_eq!(b_small.spin_min_dim, Some(8));
        let b7 = weyl_cap(CapScope::Type(LieType::new(Family::B, 7).unwrap()), 16).unwrap();
        assert_eq!(b7.rule, CapRule::TypeB);
        assert_eq!(floor(&b7.bound), (16u64.pow(8)).to_string());
        let d8 = weyl_cap(CapScope::Type(LieType::new(Family::D, 8).unwrap()), 10).unwrap();
        assert_eq!(d8.bound.to_string(), "10^6");
        assert!(weyl_cap(CapScope::Generic, 1).is_err());
    }

    #[test]
    fn cap_admission() {
        let a = weyl_cap(CapScope::Family(Family::A), 3).unwrap();
        assert!(a.admits(&BigUint::from(27u32)));
        assert!(!a.admits(&BigUint::from(28u32)));
        assert_eq!(a.max_admitted(), Some(27));
        // 2^(4/2) = 4 exactly, strict
        let g = weyl_cap(CapScope::Generic, 2).unwrap();
        assert!(!g.admits(&BigUint::from(4u32)));
        assert_eq!(g.max_admitted(), Some(3));
        let g3 = weyl_cap(CapScope::Generic, 3).unwrap();
        assert_eq!(g3.max_admitted(), Some(140));
    }

    #[test]
    fn rep_count_examples() {
        assert_eq!(floor(&rep_count_cap(Some(Family::B), 10, 2).unwrap()), "10");
        assert_eq!(floor(&rep_count_cap(Some(Family::A), 10, 3).unwrap()), "10000");
        assert_eq!(floor(&rep_count_cap(Some(Family::B), 10, 3).unwrap()), "316");
        assert_eq!(floor(&rep_count_cap(None, 10, 5).unwrap()), "10000");
    }

    #[test]
    fn candidate_caps() {
        let c3 = candidate_count_caps(3);
        assert_eq!(floor(&c3.bb1), "2025");
        assert_eq!(c3.bb1.is_integral(), Some(true));
        assert_eq!(c3.bb1.to_string(), "(6*sqrt(9)+7)*3^4");
        assert_eq!(floor(&c3.t11), "159095");
        let c5 = candidate_count_caps(5);
        assert_eq!(floor(&c5.bb1), "18898");
        assert!(c5.bb1.verify_floor());
    }

    #[test]
    fn alt_and_second_min() {
        let a = alternating_cap(5).unwrap();
        assert_eq!((a.value, a.floor), (Ratio::new(21, 2), 10));
        assert_eq!(alternating_cap(2).unwrap().value, Ratio::from_integer(6));
        assert_eq!(alternating_cap(71).unwrap().floor, 109);
        assert!(alternating_cap(0).is_err());

        assert_eq!(second_minimal_dim(Family::A, 4).unwrap(), 10);
        assert_eq!(second_minimal_dim(Family::C, 3).unwrap(), 13);
        assert_eq!(second_minimal_dim(Family::B, 7).unwrap(), 105);
        assert!(matches!(second_minimal_dim(Family::B, 6), Err(Error::Inapplicable(_))));
        assert!(second_minimal_dim(Family::D, 7).is_err());
        assert!(second_minimal_dim(Family::G2, 2).is_err());
    }

    #[test]
    fn sl_orders() {
        // |SL_2(q)| = q(q^2-1), |SL_3(2)| = 168
        assert_eq!(order_of_sl(2, &BigUint::from(5u32)), BigUint::from(120u32));
        assert_eq!(order_of_sl(3, &BigUint::from(2u32)), BigUint::from(168u32));
        let n = sl_order_note(3, 1, DEFAULT_BIT_BUDGET);
        assert_eq!(n.p0, Some(139));
        assert_eq!(n.order, Some(order_of_sl(3, &BigUint::from(139u32))));
        let far = sl_order_note(7, 1, DEFAULT_BIT_BUDGET);
        assert!(far.p0.is_none() && far.reason.is_some());
    }

    #[test]
    fn two_term_comparison_edge_cases() {
        let b = |x: u64| BigUint::from(x);
        // √4 + √9 = 5
        assert_eq!(cmp_sum_sqrt(&[b(4), b(9)], &b(5)), Ordering::Equal);
        assert_eq!(cmp_sum_sqrt(&[b(4), b(9)], &b(6)), Ordering::Less);
        // √2 + √2 ≈ 2.83
        assert_eq!(cmp_sum_sqrt(&[b(2), b(2)], &b(2)), Ordering::Greater);
        assert_eq!(cmp_sum_sqrt(&[b(2), b(2)], &b(3)), Ordering::Less);
        assert_eq!(cmp_sum_sqrt(&[b(9), b(0)], &b(3)), Ordering::Equal);
        assert_eq!(cmp_sum_sqrt(&[], &b(0)), Ordering::Equal);
    }
}
