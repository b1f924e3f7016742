//! Amenability constants of `Zℓ¹(G)`.
//!
//! The general route sums over pairs of classes using the full character
//! table; the oracle route takes the `ℓ¹` norm of the diagonal element over
//! `G × G` point by point. For groups with two character degrees the constant
//! depends only on `|G|`, `|G'|`, the non-linear degree and the class sizes,
//! and is computed exactly. Closed forms for the named families are exact too.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::char_table::{character_table, two_degree_profile, CharTable};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::field::{is_prime, prime_power};
use crate::group::{conjugacy_classes, derived_subgroup, ConjClassPartition, GroupTable};
use crate::rational::ExactRational;

/// Default order limit for the quadratic-cost direct-norm oracle.
pub const DIRECT_NORM_LIMIT: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    GeneralEq2,
    DirectNormEq1,
    TwoDegreeEq4,
    ClosedDihedral,
    ClosedFrobenius,
    ClosedAffine,
    ClosedA2xb,
    ClosedExtraspecial,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::GeneralEq2,
        Method::DirectNormEq1,
        Method::TwoDegreeEq4,
        Method::ClosedDihedral,
        Method::ClosedFrobenius,
        Method::ClosedAffine,
        Method::ClosedA2xb,
        Method::ClosedExtraspecial,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::GeneralEq2 => "general_eq2",
            Method::DirectNormEq1 => "direct_norm_eq1",
            Method::TwoDegreeEq4 => "two_degree_eq4",
            Method::ClosedDihedral => "closed_dihedral",
            Method::ClosedFrobenius => "closed_frobenius",
            Method::ClosedAffine => "closed_affine",
            Method::ClosedA2xb => "closed_a2xb",
            Method::ClosedExtraspecial => "closed_extraspecial",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.tag() == tag)
    }

    pub fn is_closed_form(self) -> bool {
        !matches!(
            self,
            Method::GeneralEq2 | Method::DirectNormEq1 | Method::TwoDegreeEq4
        )
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// One computed constant. `am_diag`/`am_off` are the diagonal (`C = D`) and
/// off-diagonal parts of the class-pair sum, filled by the general route.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmenabilityReport {
    pub method: Method,
    pub value_float: f64,
    pub value_exact: Option<ExactRational>,
    pub am_diag: Option<f64>,
    pub am_off: Option<f64>,
    pub residual_vs_oracle: Option<f64>,
}

impl AmenabilityReport {
    pub fn exact(method: Method, value: ExactRational) -> Self {
        AmenabilityReport {
            method,
            value_float: value.to_f64(),
            value_exact: Some(value),
            am_diag: None,
            am_off: None,
            residual_vs_oracle: None,
        }
    }

    pub fn float(method: Method, value: f64) -> Self {
        AmenabilityReport {
            method,
            value_float: value,
            value_exact: None,
            am_diag: None,
            am_off: None,
            residual_vs_oracle: None,
        }
    }
}

/// `|G|⁻² Σ_{C,D} |C||D| |Σ_χ d_χ² χ(C) conj χ(D)|`. Abelian tables also get
/// the exact value 1.
pub fn amzl_general(t: &CharTable) -> AmenabilityReport {
    let r = t.num_classes();
    let n = t.group_order() as f64;
    let sizes = t.class_sizes();
    let weights: Vec<f64> = t.degrees().iter().map(|&d| (d * d) as f64).collect();
    let (mut diag, mut off) = (0.0, 0.0);
    for c in 0..r {
        for d in 0..r {
            let inner: num_complex::Complex64 = (0..r)
                .map(|chi| t.value(chi, c) * t.value(chi, d).conj() * weights[chi])
                .sum();
            let term = inner.norm() * (sizes[c] * sizes[d]) as f64;
            if c == d {
                diag += term;
            } else {
                off += term;
            }
        }
    }
    let (diag, off) = (diag / (n * n), off / (n * n));
    AmenabilityReport {
        method: Method::GeneralEq2,
        value_float: diag + off,
        value_exact: t.is_abelian().then(ExactRational::one),
        am_diag: Some(diag),
        am_off: Some(off),
        residual_vs_oracle: None,
    }
}

/// `Σ_{x,y ∈ G} |M(x, y)|` with `M(x, y) = Σ_χ (d_χ/|G|)² χ(x) conj χ(y)`,
/// evaluated at every pair of group elements.
pub fn amzl_direct_norm(t: &CharTable, p: &ConjClassPartition) -> Result<f64> {
    amzl_direct_norm_with_limit(t, p, DIRECT_NORM_LIMIT)
}

pub fn amzl_direct_norm_with_limit(
    t: &CharTable,
    p: &ConjClassPartition,
    limit: usize,
) -> Result<f64> {
    let n = t.group_order();
    if n > limit {
        return Err(Error::OracleTooLarge { order: n, limit });
    }
    if p.sizes() != t.class_sizes() {
        return Err(Error::InvalidClassData(
            "partition does not match the character table".into(),
        ));
    }
    let r = t.num_classes();
    let coeff: Vec<f64> = t
        .degrees()
        .iter()
        .map(|&d| (d as f64 / n as f64).powi(2))
        .collect();
    let mut total = 0.0;
    for x in 0..n {
        let cx = p.class_of(x);
        for y in 0..n {
            let cy = p.class_of(y);
            let m: num_complex::Complex64 = (0..r)
                .map(|chi| t.value(chi, cx) * t.value(chi, cy).conj() * coeff[chi])
                .sum();
            total += m.norm();
        }
    }
    Ok(total)
}

/// `1 + 2(m² − 1)(1 − Σ|C|² / (|G|·|G'|))`, for a group whose non-linear
/// characters all have degree `m`.
pub fn amzl_two_degree(
    order_g: u64,
    order_derived: u64,
    m: u64,
    class_sizes: &[usize],
) -> Result<ExactRational> {
    if m < 2 {
        return Err(Error::InvalidClassData(format!(
            "non-linear degree must be at least 2, got {m}"
        )));
    }
    if order_derived == 0 || !order_g.is_multiple_of(order_derived) {
        return Err(Error::InvalidClassData(format!(
            "|G'| = {order_derived} does not divide |G| = {order_g}"
        )));
    }
    if class_sizes.contains(&0) || class_sizes.iter().map(|&s| s as u64).sum::<u64>() != order_g {
        return Err(Error::InvalidClassData(
            "class sizes must be positive and sum to |G|".into(),
        ));
    }
    let sum_sq: BigInt = class_sizes
        .iter()
        .map(|&s| BigInt::from(s) * BigInt::from(s))
        .sum();
    let ratio = ExactRational::new(sum_sq, BigInt::from(order_g) * BigInt::from(order_derived));
    let m2 = ExactRational::from_integer(m * m);
    let two = ExactRational::from_integer(2);
    Ok(ExactRational::one() + two * (m2 - ExactRational::one()) * (ExactRational::one() - ratio))
}

/// The class-pair sum restricted to linear characters; equals 1 for every
/// finite group.
pub fn lemma_linear_block_norm(t: &CharTable) -> f64 {
    let r = t.num_classes();
    let n = t.group_order() as f64;
    let linear: Vec<usize> = (0..r).filter(|&i| t.degrees()[i] == 1).collect();
    let sizes = t.class_sizes();
    let mut total = 0.0;
    for c in 0..r {
        for d in 0..r {
            let inner: num_complex::Complex64 = linear
                .iter()
                .map(|&chi| t.value(chi, c) * t.value(chi, d).conj())
                .sum();
            total += inner.norm() * (sizes[c] * sizes[d]) as f64;
        }
    }
    total / (n * n)
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(n)
}

/// `1 + 3(1 − 2/n)²` for even `n`, `1 + 3(1 − 1/n)²` for odd `n` (order `2n`).
pub fn closed_form_dihedral(n: u64) -> Result<ExactRational> {
    if n < 3 {
        return Err(Error::ArgumentTooSmall {
            what: "dihedral n",
            min: 3,
            got: n,
        });
    }
    let n = n as i64;
    let base = if n % 2 == 0 {
        int(1) - q(2, n)
    } else {
        int(1) - q(1, n)
    };
    Ok(int(1) + int(3) * base.pow(2))
}

/// Frobenius group with abelian complement of order `h` and abelian kernel of
/// order `k`: `1 + 2·((h² − 1)/h)·(1 − (h − 1)/k)·(1 − 1/k)`.
pub fn closed_form_frobenius(h: u64, k: u64) -> Result<ExactRational> {
    if h < 2 {
        return Err(Error::ArgumentTooSmall {
            what: "complement order",
            min: 2,
            got: h,
        });
    }
    if k < 3 {
        return Err(Error::ArgumentTooSmall {
            what: "kernel order",
            min: 3,
            got: k,
        });
    }
    if !(k - 1).is_multiple_of(h) {
        return Err(Error::DivisibilityViolation { h, k });
    }
    Ok(int(1) + int(2) * frobenius_f(k, h))
}

/// `F(k, h) = ((h² − 1)/h)(1 − (h − 1)/k)(1 − 1/k)`, i.e. `(AM − 1)/2`.
pub fn frobenius_f(k: u64, h: u64) -> ExactRational {
    let (k, h) = (k as i64, h as i64);
    q(h * h - 1, h) * (int(1) - q(h - 1, k)) * (int(1) - q(1, k))
}

/// `5 − 8/q`.
pub fn closed_form_affine(q_order: u64) -> Result<ExactRational> {
    if q_order < 3 || prime_power(q_order).is_none() {
        return Err(Error::InvalidFieldOrder(q_order));
    }
    Ok(int(5) - q(8, q_order as i64))
}

/// `1 + ((q + 1)/2)(1 − 9/q²)`.
pub fn closed_form_a2xb(q_order: u64) -> Result<ExactRational> {
    let (p, _) = prime_power(q_order).ok_or(Error::InvalidFieldOrder(q_order))?;
    if p == 2 {
        return Err(Error::EvenCharacteristic(q_order));
    }
    if q_order < 5 {
        return Err(Error::ArgumentTooSmall {
            what: "a2xb q",
            min: 5,
            got: q_order,
        });
    }
    let qi = q_order as i64;
    Ok(int(1) + q(qi + 1, 2) * (int(1) - q(9, qi * qi)))
}

/// `1 + 2(1 − p^{−2n})(1 − p^{−1})` for an extraspecial group of order `p^{2n+1}`.
pub fn closed_form_extraspecial(p: u64, n: u32) -> Result<ExactRational> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::ArgumentTooSmall {
            what: "extraspecial n",
            min: 1,
            got: 0,
        });
    }
    let inv_p = q(1, p as i64);
    Ok(int(1) + int(2) * (int(1) - inv_p.pow(2 * n)) * (int(1) - inv_p))
}

/// The closed form that applies to a family instance, if any. Abelian
/// families have no closed-form tag.
pub fn closed_form_for(family: &Family) -> Option<Result<(Method, ExactRational)>> {
    let tagged = |m: Method, r: Result<ExactRational>| Some(r.map(|v| (m, v)));
    match family {
        Family::Cyclic { .. } | Family::Abelian { .. } => None,
        Family::Dihedral { n } => tagged(Method::ClosedDihedral, closed_form_dihedral(*n)),
        Family::Quaternion8 => tagged(Method::ClosedExtraspecial, closed_form_extraspecial(2, 1)),
        Family::Extraspecial { p, n } => {
            tagged(Method::ClosedExtraspecial, closed_form_extraspecial(*p, *n))
        }
        Family::Affine { q } => tagged(Method::ClosedAffine, closed_form_affine(*q)),
        Family::A2xb { q } => tagged(Method::ClosedA2xb, closed_form_a2xb(*q)),
        Family::Frobenius(spec) => tagged(
            Method::ClosedFrobenius,
            closed_form_frobenius(spec.complement_order(), spec.kernel_order()),
        ),
    }
}

/// One admissible `(h, k)` pair of the Frobenius scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub h: u64,
    pub k: u64,
    pub f: ExactRational,
    pub is_minimum: bool,
}

/// Evaluates `F(k, h)` over `2 ≤ h ≤ h_max`, `h + 1 ≤ k ≤ k_max`, `h | k − 1`
/// and checks that the minimum `2/3` is attained only at `(2, 3)` and that
/// `F(·, h)` is strictly increasing in `k`.
pub fn frobenius_min_scan(h_max: u64, k_max: u64) -> Result<Vec<ScanRow>> {
    if h_max < 3 || k_max < 3 {
        return Err(Error::ArgumentTooSmall {
            what: "scan bound",
            min: 3,
            got: h_max.min(k_max),
        });
    }
    let mut rows = Vec::new();
    for h in 2..=h_max {
        let mut prev: Option<ExactRational> = None;
        for k in (h + 1..=k_max).filter(|k| (k - 1) % h == 0) {
            let f = frobenius_f(k, h);
            if let Some(p) = &prev {
                if &f <= p {
                    return Err(Error::CheckFailed(format!(
                        "F(·, {h}) not increasing at k = {k}"
                    )));
                }
            }
            if k == h + 1 {
                let edge = q(2 * (h as i64 - 1), h as i64 + 1);
                if f != edge {
                    return Err(Error::CheckFailed(format!(
                        "F({k}, {h}) = {f}, expected {edge}"
                    )));
                }
            }
            prev = Some(f.clone());
            rows.push(ScanRow {
                h,
                k,
                f,
                is_minimum: false,
            });
        }
    }
    let two_thirds = q(2, 3);
    let min = rows
        .iter()
        .map(|r| r.f.clone())
        .min()
        .ok_or_else(|| Error::CheckFailed("empty scan".into()))?;
    let at_min: Vec<(u64, u64)> = rows
        .iter()
        .filter(|r| r.f == min)
        .map(|r| (r.h, r.k))
        .collect();
    if min != two_thirds || at_min != [(2, 3)] {
        return Err(Error::CheckFailed(format!(
            "minimum {min} attained at {at_min:?}"
        )));
    }
    for r in rows.iter_mut() {
        r.is_minimum = r.f == min;
    }
    Ok(rows)
}

/// Everything the formulas need about one group.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub partition: ConjClassPartition,
    pub table: CharTable,
    pub derived_order: usize,
    pub linear_count: usize,
    pub nonlinear_degree: Option<u64>,
}

/// Classes, character table (cross-checked against `|G'|`) and two-degree
/// profile of `g`.
pub fn analyze(g: &GroupTable, seed: u64) -> Result<Analysis> {
    let partition = conjugacy_classes(g);
    let table = character_table(g, &partition, seed)?;
    let derived = derived_subgroup(g);
    let linear_count = crate::char_table::linear_character_count(&table, &derived)?;
    Ok(Analysis {
        nonlinear_degree: two_degree_profile(&table),
        derived_order: derived.order(),
        linear_count,
        partition,
        table,
    })
}

impl Analysis {
    /// The two-degree value, when the group has two character degrees.
    pub fn two_degree(&self) -> Option<Result<ExactRational>> {
        let m = self.nonlinear_degree?;
        Some(amzl_two_degree(
            self.table.group_order() as u64,
            self.derived_order as u64,
            m,
            self.partition.sizes(),
        ))
    }
}
