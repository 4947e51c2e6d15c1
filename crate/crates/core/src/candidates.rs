//! Screening of the quasisimple Lie-type groups `^eG(p^t)` that could act
//! irreducibly in prime degree `r` inside `SL_r(p^k)` without preserving a
//! symmetric form.
//!
//! Only necessary conditions are applied, so every emitted record is an
//! over-approximation: whether the Weyl module really has a composition
//! factor of dimension `r` needs modular data that is not computed here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{candidate_count_caps, p_range_limit, weyl_cap, BoundExpr, CapScope, WeylCap};
use crate::cache::WeightCache;
use crate::census::{enumerate_weights_cached, CensusEntry};
use crate::error::{Error, Result};
use crate::rootsystem::{Family, LieType};
use crate::sieve::{count_primes_below, is_prime, primes_below_with_limit, DEFAULT_SIEVE_LIMIT};
use crate::weyldim::{is_self_dual, DimValue, Weight};

pub const DEFAULT_DIM_CEILING: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AllowedType {
    pub family: Family,
    pub rank: usize,
    pub twist_e: u8,
}

impl AllowedType {
    pub fn lie_type(&self) -> LieType {
        LieType::new(self.family, self.rank).expect("allowed types carry valid ranks")
    }
}

impl fmt::Display for AllowedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist_e > 1 {
            write!(f, "^{}", self.twist_e)?;
        }
        write!(f, "{}", self.lie_type())
    }
}

/// `^eG(p^t)`
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FiniteGroupDescriptor {
    pub lie_type: LieType,
    pub twist_e: u8,
    pub field_exponent_t: u64,
    pub characteristic_p: u64,
}

/// Graph-automorphism twists carried by a type, Suzuki and Ree groups
/// excluded.
pub fn twists_for(ty: LieType) -> &'static [u8] {
    match (ty.family(), ty.rank()) {
        (Family::A, 1) => &[1],
        (Family::A, _) | (Family::E6, _) => &[1, 2],
        (Family::D, 4) => &[1, 2, 3],
        (Family::D, _) => &[1, 2],
        _ => &[1],
    }
}

impl FiniteGroupDescriptor {
    pub fn new(lie_type: LieType, twist_e: u8, field_exponent_t: u64, characteristic_p: u64) -> Result<Self> {
        if !twists_for(lie_type).contains(&twist_e) {
            return Err(Error::domain(format!("no twist of order {twist_e} for {lie_type}")));
        }
        if field_exponent_t < 1 {
            return Err(Error::domain("field exponent must be positive"));
        }
        if !is_prime(characteristic_p) {
            return Err(Error::domain(format!("{characteristic_p} is not prime")));
        }
        Ok(FiniteGroupDescriptor {
            lie_type,
            twist_e,
            field_exponent_t,
            characteristic_p,
        })
    }
}

impl fmt::Display for FiniteGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist_e > 1 {
            write!(f, "^{}", self.twist_e)?;
        }
        write!(f, "{}({}^{})", self.lie_type, self.characteristic_p, self.field_exponent_t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateFlag {
    KacCaseExcluded,
    OverApproximation,
    SelfDualFilteredOut,
    /// A twisted group kept with `t = k`; both `k = t` and `k = et` are only
    /// necessary conditions.
    TwistedFieldUnsettled,
    /// `^2G_2(3^t)` in degree 7, whose representations are orthogonal.
    ReeG2Stub,
}

impl CandidateFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            CandidateFlag::KacCaseExcluded => "kac_case_excluded",
            CandidateFlag::OverApproximation => "over_approximation",
            CandidateFlag::SelfDualFilteredOut => "self_dual_filtered_out",
            CandidateFlag::TwistedFieldUnsettled => "twisted_field_unsettled",
            CandidateFlag::ReeG2Stub => "ree_g2_stub",
        }
    }
}

pub mod rule {
    pub const RANK_BELOW_SQRT_3R: &str = "rank_below_sqrt_3r";
    pub const NO_SUZUKI_REE: &str = "no_suzuki_ree";
    pub const SELF_DUAL_TYPE: &str = "self_dual_type_filter";
    pub const SELF_DUAL_WEIGHT: &str = "self_dual_weight_filter";
    pub const FIELD_EXPONENT: &str = "field_exponent_k_eq_t_or_et";
    pub const P_BOUND: &str = "p_below_r_pow_r2_over_2";
    pub const P_RESTRICTED: &str = "p_restricted";
    pub const WEYL_REDUCIBLE: &str = "weyl_dim_gt_r";
    pub const P_BELOW_DIM: &str = "p_below_weyl_dim";
    pub const WEYL_CAP: &str = "weyl_dim_within_cap";
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub descriptor: FiniteGroupDescriptor,
    pub weight: Weight,
    pub weyl_dim: DimValue,
    pub flags: BTreeSet<CandidateFlag>,
    pub constraints_applied: Vec<String>,
}

/// All `(family, rank, twist)` with `rank < √(3r)`. With `exclude_self_dual`
/// only the types whose groups can avoid preserving a form remain:
/// `A_n` and `^2A_n` (`n > 1`), `D_n` and `^2D_n` (`n` odd, `n >= 5`), `E6`
/// and `^2E6`.
pub fn allowed_types(r: u64, exclude_self_dual: bool) -> Result<Vec<AllowedType>> {
    if r <= 2 || !is_prime(r) {
        return Err(Error::domain(format!("allowed_types needs a prime r > 2, got {r}")));
    }
    let mut out = Vec::new();
    for family in Family::ALL {
        let max_rank = family
            .fixed_rank()
            .unwrap_or_else(|| (1..).take_while(|n: &usize| ((n * n) as u64) < 3 * r).last().unwrap_or(0));
        for rank in family.min_rank()..=max_rank {
            if (rank * rank) as u64 >= 3 * r {
                continue;
            }
            if exclude_self_dual {
                let keep = match family {
                    Family::A => rank > 1,
                    Family::D => rank % 2 == 1 && rank >= 5,
                    Family::E6 => true,
                    _ => false,
                };
                if !keep {
                    continue;
                }
            }
            let ty = LieType::new(family, rank)?;
            for &e in twists_for(ty) {
                if exclude_self_dual && e == 3 {
                    continue;
                }
                out.push(AllowedType {
                    family,
                    rank,
                    twist_e: e,
                });
            }
        }
    }
    Ok(out)
}

/// Field exponents `t` with `k = t` or `k = e·t`, ascending.
pub fn field_exponents(k: u64, e: u8) -> Result<Vec<u64>> {
    if k < 1 || !(1..=3).contains(&e) {
        return Err(Error::domain(format!("field_exponents needs k >= 1 and e in 1..=3, got k={k}, e={e}")));
    }
    let mut out = BTreeSet::from([k]);
    if k.is_multiple_of(e as u64) {
        out.insert(k / e as u64);
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenedWeight {
    pub weight: Weight,
    pub dim: DimValue,
    pub flags: BTreeSet<CandidateFlag>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightScreen {
    pub main: Vec<ScreenedWeight>,
    pub kac_case_excluded: Vec<ScreenedWeight>,
    pub self_dual_filtered_out: Vec<ScreenedWeight>,
    pub truncation: Option<String>,
}

/// Weights of one type enumerated up to the Weyl cap for degree `r`.
#[derive(Clone, Debug)]
struct TypeScreen {
    cap: WeylCap,
    entries: Vec<CensusEntry>,
    truncation: Option<String>,
}

fn screen_type(ty: LieType, r: u64, dim_ceiling: u64, cache: Option<&WeightCache>) -> Result<TypeScreen> {
    let cap = weyl_cap(CapScope::Type(ty), r)?;
    let (enum_to, truncation) = match cap.max_admitted() {
        Some(m) if m <= dim_ceiling => (m, None),
        _ => (
            dim_ceiling,
            Some(format!(
                "{ty}: Weyl cap {} exceeds the dimension ceiling {dim_ceiling}; weights above the ceiling were not enumerated",
                cap.bound
            )),
        ),
    };
    // A1: dim = a+1 <= p for every p-restricted weight, so p < dim never holds
    let a1 = ty.family() == Family::A && ty.rank() == 1;
    let entries = if enum_to == 0 || a1 {
        Vec::new()
    } else {
        enumerate_weights_cached(ty, enum_to, cache)?
    };
    Ok(TypeScreen {
        cap,
        entries,
        truncation,
    })
}

/// Splits the screened weights of one type for a fixed characteristic `p`.
fn classify(
    ty: LieType,
    screen: &TypeScreen,
    r: u64,
    p: u64,
    per_weight_duality: bool,
) -> Result<WeightScreen> {
    let mut out = WeightScreen {
        main: Vec::new(),
        kac_case_excluded: Vec::new(),
        self_dual_filtered_out: Vec::new(),
        truncation: screen.truncation.clone(),
    };
    for e in &screen.entries {
        if !e.weight.is_p_restricted(p) || !screen.cap.admits(e.dim.value()) {
            continue;
        }
        let sw = |extra: Option<CandidateFlag>| ScreenedWeight {
            weight: e.weight.clone(),
            dim: e.dim.clone(),
            flags: std::iter::once(CandidateFlag::OverApproximation).chain(extra).collect(),
        };
        if e.dim == r {
            out.kac_case_excluded.push(sw(Some(CandidateFlag::KacCaseExcluded)));
        } else if e.dim > r && e.dim > p {
            if per_weight_duality && is_self_dual(ty, &e.weight)? {
                out.self_dual_filtered_out.push(sw(Some(CandidateFlag::SelfDualFilteredOut)));
            } else {
                out.main.push(sw(None));
            }
        }
    }
    Ok(out)
}

/// `p`-restricted weights `ω` of `ty` with `r < dim W_ω`, `p < dim W_ω` and
/// `dim W_ω` within the Weyl cap for degree `r`. Weights with `dim = r` are
/// returned separately; with `exclude_self_dual` self-dual weights are moved
/// out of the main list.
pub fn candidate_weights(ty: LieType, r: u64, p: u64, exclude_self_dual: bool) -> Result<WeightScreen> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let screen = screen_type(ty, r, DEFAULT_DIM_CEILING, None)?;
    classify(ty, &screen, r, p, exclude_self_dual)
}

#[derive(Clone, Debug)]
pub struct CandidateOptions {
    pub exclude_self_dual: bool,
    /// Exclusive upper limit on `p`; combined with the bound on `p` by
    /// taking the minimum.
    pub p_limit_override: Option<u64>,
    pub dim_ceiling: u64,
    pub sieve_limit: u64,
    pub cache: Option<WeightCache>,
}

impl Default for CandidateOptions {
    fn default() -> Self {
        CandidateOptions {
            exclude_self_dual: true,
            p_limit_override: None,
            dim_ceiling: DEFAULT_DIM_CEILING,
            sieve_limit: DEFAULT_SIEVE_LIMIT,
            cache: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerPrimeCount {
    pub p: u64,
    pub count: u64,
    pub within_bb1: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KacExcluded {
    pub allowed: AllowedType,
    pub weight: Weight,
    pub dim: DimValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateSummary {
    pub r: u64,
    pub k: u64,
    pub exclude_self_dual: bool,
    pub allowed_types: Vec<AllowedType>,
    /// Primes considered are exactly those below this limit.
    pub p_limit: u64,
    pub p_limit_source: String,
    pub primes_considered: u64,
    pub total_records: u64,
    /// Primes with at least one record.
    pub per_p: Vec<PerPrimeCount>,
    pub bb1: BoundExpr,
    pub th8: BoundExpr,
    pub t11: BoundExpr,
    pub all_within_bb1: bool,
    pub total_within_th8: Option<bool>,
    pub total_within_t11: Option<bool>,
    pub self_dual_filtered_out: u64,
    pub kac_case_excluded: Vec<KacExcluded>,
    pub truncation_notices: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateRun {
    pub records: Vec<CandidateRecord>,
    pub stubs: Vec<CandidateRecord>,
    pub summary: CandidateSummary,
}

/// Checks the record-level invariants: `p`-restricted weight, `p < dim`,
/// `r < dim`, `t` admissible for `k`, a valid twist, no Suzuki or Ree type.
pub fn check_record(rec: &CandidateRecord, r: u64, k: u64) -> std::result::Result<(), String> {
    let d = &rec.descriptor;
    if !rec.weight.is_p_restricted(d.characteristic_p) {
        return Err(format!("{d} ({}) is not p-restricted", rec.weight));
    }
    if !(rec.weyl_dim > d.characteristic_p) {
        return Err(format!("{d} ({}) has p >= dim", rec.weight));
    }
    if !(rec.weyl_dim > r) {
        return Err(format!("{d} ({}) has dim <= r", rec.weight));
    }
    let ts = field_exponents(k, d.twist_e).map_err(|e| e.to_string())?;
    if !ts.contains(&d.field_exponent_t) {
        return Err(format!("{d}: t not admissible for k={k}"));
    }
    if !twists_for(d.lie_type).contains(&d.twist_e) {
        return Err(format!("{d}: invalid twist"));
    }
    if d.twist_e > 1 && matches!(d.lie_type.family(), Family::B | Family::C | Family::F4 | Family::G2) {
        return Err(format!("{d}: Suzuki/Ree type"));
    }
    Ok(())
}

fn resolve_p_limit(r: u64, opts: &CandidateOptions) -> Result<(u64, String)> {
    let natural = p_range_limit(r);
    match (natural, opts.p_limit_override) {
        (Some(n), Some(o)) if o < n => Ok((o, "override".into())),
        (Some(n), _) if n <= opts.sieve_limit => Ok((n, "p_bound".into())),
        (_, Some(o)) => Ok((o, "override".into())),
        (Some(n), None) => Err(Error::ResourceLimit(format!(
            "primes below {n} exceed the sieve limit {}; pass a p limit or use the symbolic bounds",
            opts.sieve_limit
        ))),
        (None, None) => Err(Error::ResourceLimit(
            "the bound on p exceeds the bit budget; pass a p limit or use the symbolic bounds".into(),
        )),
    }
}

pub fn enumerate_candidates(r: u64, k: u64, opts: &CandidateOptions) -> Result<CandidateRun> {
    if k < 1 {
        return Err(Error::domain("k must be at least 1"));
    }
    let allowed = allowed_types(r, opts.exclude_self_dual)?;
    let (p_limit, p_limit_source) = resolve_p_limit(r, opts)?;
    let primes_considered = count_primes_below(p_limit, opts.sieve_limit)?;

    let mut distinct: Vec<LieType> = allowed.iter().map(|a| a.lie_type()).collect();
    distinct.dedup();
    let screens: BTreeMap<LieType, TypeScreen> = distinct
        .par_iter()
        .map(|&ty| Ok((ty, screen_type(ty, r, opts.dim_ceiling, opts.cache.as_ref())?)))
        .collect::<Result<_>>()?;

    let max_dim = screens
        .values()
        .flat_map(|s| s.entries.iter())
        .filter_map(|e| e.dim.to_u64())
        .max()
        .unwrap_or(0);
    let primes = primes_below_with_limit(p_limit.min(max_dim), opts.sieve_limit)?;

    let base_rules = [rule::RANK_BELOW_SQRT_3R, rule::NO_SUZUKI_REE];
    let per_allowed = allowed
        .par_iter()
        .map(|a| {
            let ty = a.lie_type();
            let screen = &screens[&ty];
            let per_weight_duality = opts.exclude_self_dual && a.twist_e == 1;
            let mut rules: Vec<String> = base_rules.iter().map(|s| s.to_string()).collect();
            if opts.exclude_self_dual {
                rules.push(rule::SELF_DUAL_TYPE.into());
            }
            if per_weight_duality {
                rules.push(rule::SELF_DUAL_WEIGHT.into());
            }
            rules.extend(
                [
                    rule::FIELD_EXPONENT,
                    rule::P_BOUND,
                    rule::P_RESTRICTED,
                    rule::WEYL_REDUCIBLE,
                    rule::P_BELOW_DIM,
                    rule::WEYL_CAP,
                ]
                .iter()
                .map(|s| s.to_string()),
            );

            let mut records = Vec::new();
            let mut filtered = 0u64;
            let mut kac = Vec::new();
            for e in &screen.entries {
                if !screen.cap.admits(e.dim.value()) {
                    continue;
                }
                let c = e.weight.max_coeff() as u64;
                let Some(d) = e.dim.to_u64() else { continue };
                if d == r {
                    kac.push(KacExcluded {
                        allowed: *a,
                        weight: e.weight.clone(),
                        dim: e.dim.clone(),
                    });
                    continue;
                }
                if d < r {
                    continue;
                }
                // primes with c < p < d and p < p_limit
                let lo = primes.partition_point(|&p| p <= c);
                let hi = primes.partition_point(|&p| p < d.min(p_limit));
                if lo >= hi {
                    continue;
                }
                if per_weight_duality && is_self_dual(ty, &e.weight)? {
                    filtered += ((hi - lo) * field_exponents(k, a.twist_e)?.len()) as u64;
                    continue;
                }
                for t in field_exponents(k, a.twist_e)? {
                    let mut flags = BTreeSet::from([CandidateFlag::OverApproximation]);
                    if a.twist_e > 1 && t == k {
                        flags.insert(CandidateFlag::TwistedFieldUnsettled);
                    }
                    for &p in &primes[lo..hi] {
                        records.push(CandidateRecord {
                            descriptor: FiniteGroupDescriptor {
                                lie_type: ty,
                                twist_e: a.twist_e,
                                field_exponent_t: t,
                                characteristic_p: p,
                            },
                            weight: e.weight.clone(),
                            weyl_dim: e.dim.clone(),
                            flags: flags.clone(),
                            constraints_applied: rules.clone(),
                        });
                    }
                }
            }
            Ok((records, filtered, kac))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::new();
    let mut self_dual_filtered_out = 0;
    let mut kac_case_excluded = Vec::new();
    for (recs, filtered, kac) in per_allowed {
        records.extend(recs);
        self_dual_filtered_out += filtered;
        kac_case_excluded.extend(kac);
    }
    records.sort_by(|a, b| {
        a.descriptor
            .characteristic_p
            .cmp(&b.descriptor.characteristic_p)
            .then_with(|| a.cmp(b))
    });
    records.dedup();

    for rec in &records {
        check_record(rec, r, k).map_err(Error::Invariant)?;
    }

    let mut stubs = Vec::new();
    if !opts.exclude_self_dual && r == 7 && 3 < p_limit {
        let g2 = LieType::new(Family::G2, 2)?;
        stubs.push(CandidateRecord {
            descriptor: FiniteGroupDescriptor {
                lie_type: g2,
                twist_e: 2,
                field_exponent_t: k,
                characteristic_p: 3,
            },
            weight: Weight::fundamental(2, 1),
            weyl_dim: DimValue::from(7),
            flags: BTreeSet::from([CandidateFlag::ReeG2Stub, CandidateFlag::OverApproximation]),
            constraints_applied: vec![],
        });
    }

    let caps = candidate_count_caps(r);
    let bb1_floor = caps.bb1.floor_value.clone().expect("bb1 is always within budget");
    let mut per_p_map: BTreeMap<u64, u64> = BTreeMap::new();
    for rec in &records {
        *per_p_map.entry(rec.descriptor.characteristic_p).or_default() += 1;
    }
    let per_p: Vec<PerPrimeCount> = per_p_map
        .into_iter()
        .map(|(p, count)| PerPrimeCount {
            p,
            count,
            within_bb1: num_bigint::BigUint::from(count) <= bb1_floor,
        })
        .collect();
    let total = records.len() as u64;
    let within = |b: &BoundExpr| {
        b.floor_value
            .as_ref()
            .map(|f| num_bigint::BigUint::from(total) <= *f)
    };

    let summary = CandidateSummary {
        r,
        k,
        exclude_self_dual: opts.exclude_self_dual,
        allowed_types: allowed,
        p_limit,
        p_limit_source,
        primes_considered,
        total_records: total,
        all_within_bb1: per_p.iter().all(|c| c.within_bb1),
        per_p,
        total_within_th8: within(&caps.th8),
        total_within_t11: within(&caps.t11),
        bb1: caps.bb1,
        th8: caps.th8,
        t11: caps.t11,
        self_dual_filtered_out,
        kac_case_excluded,
        truncation_notices: screens.values().filter_map(|s| s.truncation.clone()).collect(),
    };
    Ok(CandidateRun {
        records,
        stubs,
        summary,
    })
}
