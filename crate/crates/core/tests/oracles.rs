//! Brute-force oracles written independently of the library's class,
//! subgroup and character-table code.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use zlconst::amenability::{amzl_general, closed_form_for};
use zlconst::{ExactRational, Family, GroupTable};

/// Conjugacy classes by direct orbit computation.
fn brute_classes(g: &GroupTable) -> Vec<Vec<usize>> {
    let n = g.order();
    let inv: Vec<usize> = (0..n)
        .map(|x| (0..n).find(|&y| g.mul(x, y) == 0).unwrap())
        .collect();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let orbit: BTreeSet<usize> = (0..n).map(|y| g.mul(g.mul(y, x), inv[y])).collect();
        for &z in &orbit {
            seen[z] = true;
        }
        classes.push(orbit.into_iter().collect());
    }
    classes
}

/// Order of the subgroup generated by all commutators.
fn brute_derived_order(g: &GroupTable) -> usize {
    let n = g.order();
    let inv: Vec<usize> = (0..n)
        .map(|x| (0..n).find(|&y| g.mul(x, y) == 0).unwrap())
        .collect();
    let mut set = BTreeSet::from([0usize]);
    for x in 0..n {
        for y in 0..n {
            set.insert(g.mul(g.mul(x, y), g.mul(inv[x], inv[y])));
        }
    }
    loop {
        let prods: BTreeSet<usize> = set
            .iter()
            .flat_map(|&a| set.iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.mul(a, b))
            .collect();
        if prods.len() == set.len() {
            return set.len();
        }
        set = prods;
    }
}

/// The two-degree formula evaluated from brute-force class data. The
/// non-linear degree comes from `|G| - |L| = (r - |L|) m^2`.
fn two_degree_oracle(g: &GroupTable) -> ExactRational {
    let n = g.order() as i64;
    let classes = brute_classes(g);
    let derived = brute_derived_order(g) as i64;
    let linear = n / derived;
    let r = classes.len() as i64;
    let m2 = (n - linear) / (r - linear);
    assert_eq!(m2 * (r - linear), n - linear, "not a two-degree group");
    let sum_sq: i64 = classes.iter().map(|c| (c.len() * c.len()) as i64).sum();
    let one = ExactRational::one();
    one.clone()
        + ExactRational::from(2 * (m2 - 1)) * (one - ExactRational::new(sum_sq, n * derived))
}

#[test]
fn closed_forms_match_brute_force_two_degree() {
    for family in zlconst::verify::corpus() {
        let g = family.build(4096).unwrap();
        let (_, closed) = closed_form_for(&family).unwrap().unwrap();
        assert_eq!(two_degree_oracle(&g), closed, "{family}");
    }
}

/// Dihedral characters from the textbook list, evaluated on brute-force
/// classes. Each class is described by its first element written as `r^k`
/// or `r^k s`.
fn dihedral_table(n: usize, g: &GroupTable, classes: &[Vec<usize>]) -> Vec<(u32, Vec<Complex64>)> {
    let r = (0..g.order()).find(|&x| g.element_order(x) == n).unwrap();
    let rotations: Vec<usize> = (0..n).map(|k| g.pow(r, k as u64)).collect();
    let s = (0..g.order()).find(|x| !rotations.contains(x)).unwrap();
    // (is_rotation, k)
    let shape: Vec<(bool, usize)> = classes
        .iter()
        .map(|c| match rotations.iter().position(|&y| y == c[0]) {
            Some(k) => (true, k),
            None => (
                false,
                (0..n).find(|&k| g.mul(rotations[k], s) == c[0]).unwrap(),
            ),
        })
        .collect();
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let row = |f: &dyn Fn(bool, usize) -> f64| {
        shape
            .iter()
            .map(|&(rot, k)| Complex64::new(f(rot, k), 0.0))
            .collect()
    };
    let mut chars: Vec<(u32, Vec<Complex64>)> = vec![
        (1, row(&|_, _| 1.0)),
        (1, row(&|rot, _| if rot { 1.0 } else { -1.0 })),
    ];
    if n.is_multiple_of(2) {
        // r -> -1, s -> 1 and r -> -1, s -> -1
        chars.push((1, row(&|_, k| sign(k))));
        chars.push((1, row(&|rot, k| if rot { sign(k) } else { -sign(k) })));
    }
    for j in 1..n.div_ceil(2) {
        let f = |rot: bool, k: usize| {
            if rot {
                2.0 * (2.0 * PI * (j * k) as f64 / n as f64).cos()
            } else {
                0.0
            }
        };
        chars.push((2, row(&f)));
    }
    chars
}

fn class_pair_sum(n: f64, sizes: &[usize], chars: &[(u32, Vec<Complex64>)]) -> f64 {
    let mut total = 0.0;
    for (c, &sc) in sizes.iter().enumerate() {
        for (d, &sd) in sizes.iter().enumerate() {
            let s: Complex64 = chars
                .iter()
                .map(|(deg, row)| (deg * deg) as f64 * row[c] * row[d].conj())
                .sum();
            total += (sc * sd) as f64 * s.norm();
        }
    }
    total / (n * n)
}

#[test]
fn dihedral_textbook_table_oracle() {
    for n in 3..=12usize {
        let family = Family::Dihedral { n: n as u64 };
        let g = family.build(4096).unwrap();
        let classes = brute_classes(&g);
        let chars = dihedral_table(n, &g, &classes);
        assert_eq!(chars.len(), classes.len(), "D_{n}");
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        let oracle = class_pair_sum(g.order() as f64, &sizes, &chars);
        let p = zlconst::group::conjugacy_classes(&g);
        let t = zlconst::char_table::character_table(&g, &p, 7).unwrap();
        let lib = amzl_general(&t).value_float;
        assert!(
            (oracle - lib).abs() < 1e-9,
            "D_{n}: oracle {oracle} vs {lib}"
        );
        let (_, closed) = closed_form_for(&family).unwrap().unwrap();
        assert!(
            (oracle - closed.to_f64()).abs() < 1e-9,
            "D_{n}: oracle {oracle} vs closed {closed}"
        );
    }
}

#[test]
fn brute_classes_agree_with_library() {
    for family in zlconst::verify::corpus() {
        let g = family.build(4096).unwrap();
        let mut mine: Vec<Vec<usize>> = brute_classes(&g);
        mine.sort();
        let p = zlconst::group::conjugacy_classes(&g);
        let mut lib: Vec<Vec<usize>> = p
            .classes()
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        lib.sort();
        assert_eq!(mine, lib, "{family}");
        assert_eq!(
            brute_derived_order(&g),
            zlconst::group::derived_subgroup(&g).order(),
            "{family}"
        );
    }
}
