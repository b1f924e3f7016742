//! Constructors for the named group families, and a Frobenius
//! semidirect-product builder for abelian kernel and complement.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power, FieldSpec};
use crate::group::{
    build_from_generators, center, conjugacy_classes, derived_subgroup, GroupTable, Permutation,
};
use crate::DEFAULT_ORDER_CAP;

fn check_cap(order: u128, cap: usize) -> Result<()> {
    if order > cap as u128 {
        return Err(Error::OrderExceedsCap { order, cap });
    }
    Ok(())
}

/// All vectors of a mixed-radix space, first coordinate varying fastest.
fn mixed_radix(orders: &[u64]) -> Vec<Vec<u64>> {
    let total: u64 = orders.iter().product();
    (0..total)
        .map(|mut i| {
            orders
                .iter()
                .map(|&o| {
                    let d = i % o;
                    i /= o;
                    d
                })
                .collect()
        })
        .collect()
}

fn radix_index(v: &[u64], orders: &[u64]) -> usize {
    v.iter()
        .zip(orders)
        .rev()
        .fold(0u64, |acc, (&d, &o)| acc * o + d) as usize
}

pub fn cyclic(n: u64) -> Result<GroupTable> {
    abelian_product_capped(&[n], DEFAULT_ORDER_CAP)
}

pub fn abelian_product(orders: &[u64]) -> Result<GroupTable> {
    abelian_product_capped(orders, DEFAULT_ORDER_CAP)
}

pub fn abelian_product_capped(orders: &[u64], cap: usize) -> Result<GroupTable> {
    if let Some(&o) = orders.iter().find(|&&o| o == 0) {
        return Err(Error::ArgumentTooSmall {
            what: "cyclic factor order",
            min: 1,
            got: o,
        });
    }
    let total: u128 = orders.iter().map(|&o| o as u128).product();
    check_cap(total, cap)?;
    let label = if orders.is_empty() {
        "Z_1".to_string()
    } else {
        orders
            .iter()
            .map(|o| format!("Z_{o}"))
            .collect::<Vec<_>>()
            .join(" x ")
    };
    let elements = mixed_radix(orders);
    GroupTable::from_closed_set(
        label,
        &elements,
        |a, b| {
            a.iter()
                .zip(b)
                .zip(orders)
                .map(|((x, y), o)| (x + y) % o)
                .collect::<Vec<_>>()
        },
        cap,
    )
}

pub fn dihedral(n: u64) -> Result<GroupTable> {
    dihedral_capped(n, DEFAULT_ORDER_CAP)
}

/// The dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral_capped(n: u64, cap: usize) -> Result<GroupTable> {
    if n < 3 {
        return Err(Error::ArgumentTooSmall {
            what: "dihedral n",
            min: 3,
            got: n,
        });
    }
    check_cap(2 * n as u128, cap)?;
    let n32 = n as u32;
    let rotation = Permutation::from_images((0..n32).map(|i| (i + 1) % n32).collect())?;
    let reflection = Permutation::from_images((0..n32).map(|i| (n32 - i) % n32).collect())?;
    Ok(build_from_generators(&[rotation, reflection], cap)?.with_label(format!("D_{n}")))
}

pub fn extraspecial_heisenberg(p: u64, n: u32) -> Result<GroupTable> {
    extraspecial_heisenberg_capped(p, n, DEFAULT_ORDER_CAP)
}

/// Triples `(a, b, c) ∈ F_pⁿ × F_pⁿ × F_p` with
/// `(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a·b')`.
pub fn extraspecial_heisenberg_capped(p: u64, n: u32, cap: usize) -> Result<GroupTable> {
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
    let order = (p as u128).checked_pow(2 * n + 1).unwrap_or(u128::MAX);
    check_cap(order, cap)?;
    let len = 2 * n as usize + 1;
    let n = n as usize;
    let elements = mixed_radix(&vec![p; len]);
    let g = GroupTable::from_closed_set(
        format!("extraspecial({p},{n})"),
        &elements,
        |x, y| {
            let mut z: Vec<u64> = x.iter().zip(y).map(|(a, b)| (a + b) % p).collect();
            let dot: u64 = (0..n).map(|i| x[i] * y[n + i]).sum();
            z[2 * n] = (z[2 * n] + dot) % p;
            z
        },
        cap,
    )?;
    verify_extraspecial(&g, p)?;
    Ok(g)
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion8() -> Result<GroupTable> {
    // units 1, i, j, k as 0..4; products as (negate, unit)
    const UNIT: [[(bool, u8); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let elements: Vec<(bool, u8)> = [false, true]
        .into_iter()
        .flat_map(|s| (0..4).map(move |u| (s, u)))
        .collect();
    let g = GroupTable::from_closed_set(
        "Q8",
        &elements,
        |&(s, u), &(t, v)| {
            let (neg, w) = UNIT[u as usize][v as usize];
            (s ^ t ^ neg, w)
        },
        DEFAULT_ORDER_CAP,
    )?;
    verify_extraspecial(&g, 2)?;
    Ok(g)
}

/// Checks `|Z(G)| = |G'| = p` and that `G/Z(G)` is elementary abelian.
pub fn verify_extraspecial(g: &GroupTable, p: u64) -> Result<()> {
    let z = center(g);
    let d = derived_subgroup(g);
    if z.order() as u64 != p || d.order() as u64 != p {
        return Err(Error::StructureViolation(format!(
            "|Z| = {}, |G'| = {}, expected both {p}",
            z.order(),
            d.order()
        )));
    }
    let n = g.order();
    for x in 0..n {
        if !z.contains(g.pow(x, p)) {
            return Err(Error::StructureViolation(format!(
                "x^{p} not central for x = {x}"
            )));
        }
        for y in 0..n {
            if !z.contains(g.commutator(x, y)) {
                return Err(Error::StructureViolation("G/Z(G) is not abelian".into()));
            }
        }
    }
    Ok(())
}

fn field_tables(f: &FieldSpec) -> (Vec<u64>, Vec<u64>) {
    let q = f.order();
    let mut add = Vec::with_capacity((q * q) as usize);
    let mut mul = Vec::with_capacity((q * q) as usize);
    for a in 0..q {
        for b in 0..q {
            add.push(f.add_unchecked(a, b));
            mul.push(f.mul_unchecked(a, b));
        }
    }
    (add, mul)
}

fn affine_on(
    label: String,
    f: &FieldSpec,
    keep: impl Fn(u64) -> bool,
    cap: usize,
) -> Result<GroupTable> {
    let q = f.order();
    let (add, mul) = field_tables(f);
    let at = |t: &[u64], a: u64, b: u64| t[(a * q + b) as usize];
    let elements: Vec<(u64, u64)> = (1..q)
        .filter(|&a| keep(a))
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .collect();
    check_cap(elements.len() as u128, cap)?;
    GroupTable::from_closed_set(
        label,
        &elements,
        |&(a, b), &(c, d)| (at(&mul, a, c), at(&add, at(&mul, a, d), b)),
        cap,
    )
}

pub fn affine_group(q: u64) -> Result<GroupTable> {
    affine_group_capped(q, DEFAULT_ORDER_CAP)
}

/// `Aff(F_q)`: pairs `(a, b)`, `a ≠ 0`, composed as `x ↦ ax + b`.
pub fn affine_group_capped(q: u64, cap: usize) -> Result<GroupTable> {
    if q < 3 || prime_power(q).is_none() {
        return Err(Error::InvalidFieldOrder(q));
    }
    check_cap(q as u128 * (q as u128 - 1), cap)?;
    let f = FieldSpec::of_order(q)?;
    affine_on(format!("Aff(F_{q})"), &f, |_| true, cap)
}

pub fn a2xb_group(q: u64) -> Result<GroupTable> {
    a2xb_group_capped(q, DEFAULT_ORDER_CAP)
}

/// The index-2 subgroup of `Aff(F_q)` whose linear coefficient is a square.
pub fn a2xb_group_capped(q: u64, cap: usize) -> Result<GroupTable> {
    let (p, _) = prime_power(q).ok_or(Error::InvalidFieldOrder(q))?;
    if p == 2 {
        return Err(Error::EvenCharacteristic(q));
    }
    if q < 5 {
        return Err(Error::ArgumentTooSmall {
            what: "a2xb q",
            min: 5,
            got: q,
        });
    }
    check_cap(q as u128 * (q as u128 - 1) / 2, cap)?;
    let f = FieldSpec::of_order(q)?;
    affine_on(format!("a2xb(F_{q})"), &f, |a| f.is_nonzero_square(a), cap)
}

/// A semidirect product `K ⋊ H` of abelian groups, each a product of cyclic
/// factors. `action[g][j]` is the image, in coordinates of `K`, of the `j`-th
/// cyclic generator of `K` under the `g`-th cyclic generator of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSpec {
    pub kernel_orders: Vec<u64>,
    pub complement_orders: Vec<u64>,
    pub action: Vec<Vec<Vec<u64>>>,
}

impl FrobeniusSpec {
    /// `Z_k ⋊ Z_h` with the generator of `Z_h` acting as `x ↦ multiplier·x`.
    pub fn cyclic(k: u64, h: u64, multiplier: u64) -> Self {
        FrobeniusSpec {
            kernel_orders: vec![k],
            complement_orders: vec![h],
            action: vec![vec![vec![multiplier % k.max(1)]]],
        }
    }

    /// `Z_k ⋊ Z_h` with the smallest multiplier giving a fixed-point-free action.
    pub fn cyclic_auto(k: u64, h: u64) -> Result<Self> {
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
        let gcd = |mut a: u64, mut b: u64| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        let pow = |u: u64, e: u64| (0..e).fold(1u64, |acc, _| acc * u % k);
        (2..k)
            .find(|&u| pow(u, h) == 1 && (1..h).all(|i| gcd((pow(u, i) + k - 1) % k, k) == 1))
            .map(|u| Self::cyclic(k, h, u))
            .ok_or_else(|| {
                Error::NotFixedPointFree(format!("no fixed-point-free action of Z_{h} on Z_{k}"))
            })
    }

    pub fn kernel_order(&self) -> u64 {
        self.kernel_orders.iter().product()
    }

    pub fn complement_order(&self) -> u64 {
        self.complement_orders.iter().product()
    }

    pub fn label(&self) -> String {
        let part = |o: &[u64]| {
            o.iter()
                .map(|x| format!("Z_{x}"))
                .collect::<Vec<_>>()
                .join(" x ")
        };
        format!(
            "{} x| {}",
            part(&self.kernel_orders),
            part(&self.complement_orders)
        )
    }
}

pub fn frobenius_semidirect(spec: &FrobeniusSpec) -> Result<GroupTable> {
    frobenius_semidirect_capped(spec, DEFAULT_ORDER_CAP)
}

/// Builds `K ⋊ H` and checks the Frobenius structure: trivial centre,
/// `(k-1)/h` classes of size `h` and `h-1` classes of size `k`.
pub fn frobenius_semidirect_capped(spec: &FrobeniusSpec, cap: usize) -> Result<GroupTable> {
    let ko = &spec.kernel_orders;
    let ho = &spec.complement_orders;
    if ko.iter().chain(ho).any(|&o| o == 0) {
        return Err(Error::InvalidAction("cyclic factor of order 0".into()));
    }
    let k = spec.kernel_order();
    let h = spec.complement_order();
    if h < 2 {
        return Err(Error::ArgumentTooSmall {
            what: "complement order",
            min: 2,
            got: h,
        });
    }
    if k < 2 {
        return Err(Error::ArgumentTooSmall {
            what: "kernel order",
            min: 2,
            got: k,
        });
    }
    if !(k - 1).is_multiple_of(h) {
        return Err(Error::DivisibilityViolation { h, k });
    }
    check_cap(k as u128 * h as u128, cap)?;
    if spec.action.len() != ho.len() || spec.action.iter().any(|imgs| imgs.len() != ko.len()) {
        return Err(Error::InvalidAction(
            "action needs one image per kernel generator for each complement generator".into(),
        ));
    }

    let kernel = mixed_radix(ko);
    let (k, h) = (k as usize, h as usize);
    // automorphism of K as a permutation of kernel indices
    let apply_matrix = |images: &[Vec<u64>], x: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; ko.len()];
        for (j, &xj) in x.iter().enumerate() {
            for (c, slot) in out.iter_mut().enumerate() {
                *slot = (*slot + xj * images[j][c]) % ko[c];
            }
        }
        out
    };
    let mut gen_autos: Vec<Vec<usize>> = Vec::with_capacity(ho.len());
    for (g, images) in spec.action.iter().enumerate() {
        for (j, img) in images.iter().enumerate() {
            if img.len() != ko.len() {
                return Err(Error::InvalidAction(format!(
                    "image {j} of generator {g} has wrong length"
                )));
            }
            // e_j has order ko[j]; its image must be killed by ko[j]
            if img
                .iter()
                .zip(ko)
                .any(|(&c, &o)| !(c * ko[j]).is_multiple_of(o))
            {
                return Err(Error::InvalidAction(format!(
                    "image {j} of generator {g} is not a homomorphism"
                )));
            }
        }
        let perm: Vec<usize> = kernel
            .iter()
            .map(|x| radix_index(&apply_matrix(images, x), ko))
            .collect();
        let mut hit = vec![false; k];
        for &y in &perm {
            hit[y] = true;
        }
        if hit.iter().any(|&b| !b) {
            return Err(Error::InvalidAction(format!(
                "generator {g} does not act bijectively"
            )));
        }
        gen_autos.push(perm);
    }
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { (0..k).map(|x| a[b[x]]).collect() };
    let identity: Vec<usize> = (0..k).collect();
    for (g, auto) in gen_autos.iter().enumerate() {
        let mut acc = identity.clone();
        for _ in 0..ho[g] {
            acc = compose(auto, &acc);
        }
        if acc != identity {
            return Err(Error::InvalidAction(format!(
                "generator {g} acts with order not dividing {}",
                ho[g]
            )));
        }
        for other in &gen_autos {
            if compose(auto, other) != compose(other, auto) {
                return Err(Error::InvalidAction(
                    "complement generators do not commute on K".into(),
                ));
            }
        }
    }
    let complement = mixed_radix(ho);
    let autos: Vec<Vec<usize>> = complement
        .iter()
        .map(|e| {
            let mut acc = identity.clone();
            for (g, &times) in e.iter().enumerate() {
                for _ in 0..times {
                    acc = compose(&gen_autos[g], &acc);
                }
            }
            acc
        })
        .collect();
    for (hi, auto) in autos.iter().enumerate().skip(1) {
        if let Some(x) = (1..k).find(|&x| auto[x] == x) {
            return Err(Error::NotFixedPointFree(format!(
                "complement element {:?} fixes kernel element {:?}",
                complement[hi], kernel[x]
            )));
        }
    }

    let add_k = |x: usize, y: usize| -> usize {
        let s: Vec<u64> = kernel[x]
            .iter()
            .zip(&kernel[y])
            .zip(ko)
            .map(|((a, b), o)| (a + b) % o)
            .collect();
        radix_index(&s, ko)
    };
    let add_h = |x: usize, y: usize| -> usize {
        let s: Vec<u64> = complement[x]
            .iter()
            .zip(&complement[y])
            .zip(ho)
            .map(|((a, b), o)| (a + b) % o)
            .collect();
        radix_index(&s, ho)
    };
    let mut kernel_add = vec![0usize; k * k];
    for x in 0..k {
        for y in 0..k {
            kernel_add[x * k + y] = add_k(x, y);
        }
    }
    let n = k * h;
    // element (x, c) has index c·k + x
    let mut flat = Vec::with_capacity(n * n);
    for a in 0..n {
        let (ax, ac) = (a % k, a / k);
        for b in 0..n {
            let (bx, bc) = (b % k, b / k);
            let x = kernel_add[ax * k + autos[ac][bx]];
            flat.push(add_h(ac, bc) * k + x);
        }
    }
    let g = GroupTable::from_cayley(spec.label(), n, &flat)?;
    verify_frobenius_structure(&g, k, h)?;
    Ok(g)
}

/// Trivial centre and class-size multiset `{1} ∪ {h ×(k-1)/h} ∪ {k ×(h-1)}`.
pub fn verify_frobenius_structure(g: &GroupTable, k: usize, h: usize) -> Result<()> {
    if center(g).order() != 1 {
        return Err(Error::StructureViolation("centre is not trivial".into()));
    }
    let got = conjugacy_classes(g).size_multiset();
    let want = frobenius_class_sizes(k, h);
    if got != want {
        return Err(Error::StructureViolation(format!(
            "class sizes {got:?}, expected {want:?}"
        )));
    }
    Ok(())
}

/// Sorted class-size multiset of a Frobenius group with abelian kernel and
/// complement of orders `k` and `h`.
pub fn frobenius_class_sizes(k: usize, h: usize) -> Vec<usize> {
    let mut v = vec![1];
    v.extend(std::iter::repeat_n(h, (k - 1) / h));
    v.extend(std::iter::repeat_n(k, h - 1));
    v.sort_unstable();
    v
}

/// A named group family instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic { n: u64 },
    Abelian { orders: Vec<u64> },
    Dihedral { n: u64 },
    Quaternion8,
    Extraspecial { p: u64, n: u32 },
    Affine { q: u64 },
    A2xb { q: u64 },
    Frobenius(FrobeniusSpec),
}

impl Family {
    pub fn build(&self, cap: usize) -> Result<GroupTable> {
        match self {
            Family::Cyclic { n } => abelian_product_capped(&[*n], cap),
            Family::Abelian { orders } => abelian_product_capped(orders, cap),
            Family::Dihedral { n } => dihedral_capped(*n, cap),
            Family::Quaternion8 => quaternion8(),
            Family::Extraspecial { p, n } => extraspecial_heisenberg_capped(*p, *n, cap),
            Family::Affine { q } => affine_group_capped(*q, cap),
            Family::A2xb { q } => a2xb_group_capped(*q, cap),
            Family::Frobenius(spec) => frobenius_semidirect_capped(spec, cap),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Cyclic { .. } => "cyclic",
            Family::Abelian { .. } => "abelian",
            Family::Dihedral { .. } => "dihedral",
            Family::Quaternion8 => "quaternion",
            Family::Extraspecial { .. } => "extraspecial",
            Family::Affine { .. } => "affine",
            Family::A2xb { .. } => "a2xb",
            Family::Frobenius(_) => "frobenius",
        }
    }

    /// Parameters as `key=value` pairs, for reports.
    pub fn params(&self) -> String {
        match self {
            Family::Cyclic { n } | Family::Dihedral { n } => format!("n={n}"),
            Family::Abelian { orders } => {
                format!(
                    "orders={}",
                    orders
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
            Family::Quaternion8 => String::new(),
            Family::Extraspecial { p, n } => format!("p={p};n={n}"),
            Family::Affine { q } | Family::A2xb { q } => format!("q={q}"),
            Family::Frobenius(s) => format!("k={};h={}", s.kernel_order(), s.complement_order()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic { n } => write!(f, "Z_{n}"),
            Family::Abelian { orders } => {
                write!(
                    f,
                    "{}",
                    orders
                        .iter()
                        .map(|o| format!("Z_{o}"))
                        .collect::<Vec<_>>()
                        .join(" x ")
                )
            }
            Family::Dihedral { n } => write!(f, "D_{n}"),
            Family::Quaternion8 => write!(f, "Q8"),
            Family::Extraspecial { p, n } => write!(f, "extraspecial({p},{n})"),
            Family::Affine { q } => write!(f, "Aff(F_{q})"),
            Family::A2xb { q } => write!(f, "a2xb(F_{q})"),
            Family::Frobenius(s) => write!(f, "{}", s.label()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_small_cases() {
        let d3 = dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        assert_eq!(conjugacy_classes(&d3).sizes(), &[1, 2, 3]);
        let d4 = dihedral(4).unwrap();
        assert_eq!(conjugacy_classes(&d4).sizes(), &[1, 1, 2, 2, 2]);
        assert_eq!(derived_subgroup(&d4).order(), 2);
        assert_eq!(center(&dihedral(5).unwrap()).order(), 1);
        assert!(matches!(dihedral(2), Err(Error::ArgumentTooSmall { .. })));
    }

    #[test]
    fn heisenberg_groups_are_extraspecial() {
        let g8 = extraspecial_heisenberg(2, 1).unwrap();
        assert_eq!(g8.order(), 8);
        // D4 has five involutions, Q8 has one
        let invols = |g: &GroupTable| (1..g.order()).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(invols(&g8), 5);
        let g27 = extraspecial_heisenberg(3, 1).unwrap();
        assert_eq!(center(&g27).order(), 3);
        let sizes = conjugacy_classes(&g27).size_multiset();
        assert_eq!(sizes, [vec![1; 3], vec![3; 8]].concat());
        assert_eq!(extraspecial_heisenberg(2, 2).unwrap().order(), 32);
        assert!(matches!(
            extraspecial_heisenberg(4, 1),
            Err(Error::NotPrime(4))
        ));
        assert!(matches!(
            extraspecial_heisenberg(3, 4),
            Err(Error::OrderExceedsCap { .. })
        ));
    }

    #[test]
    fn quaternion_group() {
        let q = quaternion8().unwrap();
        assert_eq!(conjugacy_classes(&q).sizes(), &[1, 1, 2, 2, 2]);
        assert_eq!(center(&q).order(), 2);
        assert_eq!(derived_subgroup(&q).order(), 2);
        assert_eq!((1..8).filter(|&x| q.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn affine_groups() {
        let a3 = affine_group(3).unwrap();
        assert_eq!(a3.order(), 6);
        assert_eq!(conjugacy_classes(&a3).sizes(), &[1, 2, 3]);
        assert_eq!(affine_group(4).unwrap().order(), 12);
        assert_eq!(affine_group(5).unwrap().order(), 20);
        assert!(matches!(affine_group(6), Err(Error::InvalidFieldOrder(6))));
        assert!(matches!(affine_group(2), Err(Error::InvalidFieldOrder(2))));
    }

    #[test]
    fn a2xb_groups() {
        assert_eq!(
            conjugacy_classes(&a2xb_group(5).unwrap()).sizes(),
            &[1, 2, 2, 5]
        );
        assert_eq!(a2xb_group(7).unwrap().order(), 21);
        assert_eq!(a2xb_group(9).unwrap().order(), 36);
        assert!(matches!(a2xb_group(8), Err(Error::EvenCharacteristic(8))));
        assert!(matches!(a2xb_group(3), Err(Error::ArgumentTooSmall { .. })));
        for q in [5, 7, 9, 11] {
            assert_eq!(
                2 * a2xb_group(q).unwrap().order(),
                affine_group(q).unwrap().order()
            );
        }
    }

    #[test]
    fn frobenius_z7_z3() {
        let g = frobenius_semidirect(&FrobeniusSpec::cyclic(7, 3, 2)).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(conjugacy_classes(&g).size_multiset(), vec![1, 3, 3, 7, 7]);
    }

    #[test]
    fn frobenius_inversion_gives_odd_dihedral() {
        for n in [3u64, 5, 7, 9] {
            let g = frobenius_semidirect(&FrobeniusSpec::cyclic(n, 2, n - 1)).unwrap();
            let d = dihedral(n).unwrap();
            assert_eq!(
                conjugacy_classes(&g).size_multiset(),
                conjugacy_classes(&d).size_multiset()
            );
        }
    }

    #[test]
    fn frobenius_rejections() {
        // Z4 acting on Z5 through its order-2 quotient
        let spec = FrobeniusSpec::cyclic(5, 4, 4);
        assert!(matches!(
            frobenius_semidirect(&spec),
            Err(Error::NotFixedPointFree(_))
        ));
        let spec = FrobeniusSpec::cyclic(7, 4, 2);
        assert!(matches!(
            frobenius_semidirect(&spec),
            Err(Error::DivisibilityViolation { h: 4, k: 7 })
        ));
        // multiplier 2 has order 3 mod 7, not dividing 2
        let spec = FrobeniusSpec::cyclic(7, 2, 2);
        assert!(matches!(
            frobenius_semidirect(&spec),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn frobenius_with_noncyclic_kernel() {
        // Z3 acting on Z2 x Z2 by the 3-cycle e1 -> e2 -> e1 + e2: the alternating group A4
        let spec = FrobeniusSpec {
            kernel_orders: vec![2, 2],
            complement_orders: vec![3],
            action: vec![vec![vec![0, 1], vec![1, 1]]],
        };
        let g = frobenius_semidirect(&spec).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(conjugacy_classes(&g).size_multiset(), vec![1, 3, 4, 4]);
    }

    #[test]
    fn automatic_cyclic_actions() {
        assert_eq!(
            FrobeniusSpec::cyclic_auto(13, 4).unwrap().action[0][0][0],
            5
        );
        assert_eq!(
            FrobeniusSpec::cyclic_auto(11, 5).unwrap().action[0][0][0],
            3
        );
        assert_eq!(FrobeniusSpec::cyclic_auto(7, 3).unwrap().action[0][0][0], 2);
        // 9 - 1 = 8 but Z_9 has no fixed-point-free automorphism of order 4
        assert!(matches!(
            FrobeniusSpec::cyclic_auto(9, 4),
            Err(Error::NotFixedPointFree(_))
        ));
    }

    #[test]
    fn abelian_baselines() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        let c4 = cyclic(4).unwrap();
        assert_eq!(conjugacy_classes(&c4).num_classes(), 4);
        let v4 = abelian_product(&[2, 2]).unwrap();
        assert!(v4.is_abelian());
        assert!((1..4).all(|x| v4.element_order(x) == 2));
        assert!(matches!(
            abelian_product(&[100, 100]),
            Err(Error::OrderExceedsCap { .. })
        ));
    }
}
