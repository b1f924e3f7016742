//! Complex character tables by the Burnside class-matrix method.
//!
//! For each class `C_j` the class matrix has entries `a_{jik}` at `(i, k)`;
//! the vector of central character values `ω_χ(C_j) = |C_j| χ(C_j) / d_χ` is a
//! common right eigenvector of all of them. A random real combination
//! `T = Σ t_j M_j` has simple spectrum with probability one, so its
//! eigenvectors (via the complex Schur form) give every irreducible character.
//! Each table is checked against both Schur orthogonality relations.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{ConjClassPartition, GroupTable, SubgroupHandle};

/// Maximum number of random combinations tried before giving up.
pub const MAX_SPLIT_ATTEMPTS: usize = 16;
/// Minimum separation between eigenvalues of the combined class matrix.
pub const EIGEN_GAP_TOLERANCE: f64 = 1e-7;
/// Largest accepted distance between a computed degree and an integer.
pub const DEGREE_ROUNDING_TOLERANCE: f64 = 1e-6;
/// Orthogonality residuals may not exceed this times `|G|`.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-8;

/// Character values `χ_i(C_j)`, one row per irreducible character and one
/// column per conjugacy class (column 0 is the identity class).
#[derive(Clone, Debug, PartialEq)]
pub struct CharTable {
    num_classes: usize,
    class_sizes: Vec<usize>,
    degrees: Vec<u64>,
    values: Vec<Complex64>,
    group_order: usize,
}

/// Worst-case deviations from the orthogonality relations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residuals {
    pub row: f64,
    pub column: f64,
}

impl CharTable {
    /// Assembles and validates a table from raw parts; `values` is row-major.
    pub fn from_parts(
        group_order: usize,
        class_sizes: Vec<usize>,
        degrees: Vec<u64>,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        let r = class_sizes.len();
        if degrees.len() != r || values.len() != r * r {
            return Err(Error::OrthogonalityFailure(format!(
                "{} classes but {} degrees and {} values",
                r,
                degrees.len(),
                values.len()
            )));
        }
        let t = CharTable {
            num_classes: r,
            class_sizes,
            degrees,
            values,
            group_order,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    #[inline]
    pub fn value(&self, character: usize, class: usize) -> Complex64 {
        self.values[character * self.num_classes + class]
    }

    pub fn row(&self, character: usize) -> &[Complex64] {
        let r = self.num_classes;
        &self.values[character * r..(character + 1) * r]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_abelian(&self) -> bool {
        self.degrees.iter().all(|&d| d == 1)
    }

    /// Number of degree-1 characters.
    pub fn linear_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 1).count()
    }

    /// Adds `delta` to one entry without revalidating. Only for exercising
    /// failure paths.
    #[doc(hidden)]
    pub fn perturb(&mut self, character: usize, class: usize, delta: Complex64) {
        self.values[character * self.num_classes + class] += delta;
    }

    /// Largest deviations from row and column orthogonality.
    pub fn residuals(&self) -> Residuals {
        let r = self.num_classes;
        let n = self.group_order as f64;
        let mut row: f64 = 0.0;
        for i in 0..r {
            for m in i..r {
                let s: Complex64 = (0..r)
                    .map(|j| {
                        self.value(i, j) * self.value(m, j).conj() * self.class_sizes[j] as f64
                    })
                    .sum();
                let want = if i == m { n } else { 0.0 };
                row = row.max((s - want).norm());
            }
        }
        let mut column: f64 = 0.0;
        for j in 0..r {
            for l in j..r {
                let s: Complex64 = (0..r)
                    .map(|i| self.value(i, j) * self.value(i, l).conj())
                    .sum();
                let want = if j == l {
                    n / self.class_sizes[j] as f64
                } else {
                    0.0
                };
                column = column.max((s - want).norm());
            }
        }
        Residuals { row, column }
    }

    /// Checks every table invariant at the standard tolerances.
    pub fn validate(&self) -> Result<Residuals> {
        let r = self.num_classes;
        let n = self.group_order;
        let tol = ORTHOGONALITY_TOLERANCE * n as f64;
        if self.class_sizes.iter().sum::<usize>() != n {
            return Err(Error::OrthogonalityFailure(
                "class sizes do not sum to |G|".into(),
            ));
        }
        let deg_sq: u128 = self
            .degrees
            .iter()
            .map(|&d| (d as u128) * (d as u128))
            .sum();
        if deg_sq != n as u128 {
            return Err(Error::OrthogonalityFailure(format!(
                "sum of squared degrees is {deg_sq}, |G| = {n}"
            )));
        }
        for i in 0..r {
            let v = self.value(i, 0);
            if (v - Complex64::new(self.degrees[i] as f64, 0.0)).norm() > tol {
                return Err(Error::OrthogonalityFailure(format!(
                    "χ_{i}(1) = {v} but degree {}",
                    self.degrees[i]
                )));
            }
        }
        let res = self.residuals();
        if res.row.is_nan() || res.row > tol {
            return Err(Error::OrthogonalityFailure(format!(
                "row orthogonality residual {:.3e}",
                res.row
            )));
        }
        if res.column.is_nan() || res.column > tol {
            return Err(Error::OrthogonalityFailure(format!(
                "column orthogonality residual {:.3e}",
                res.column
            )));
        }
        Ok(res)
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `T = Σ_j t_j M_j` with `(M_j)_{i,k} = a_{jik}`, accumulated directly from
/// the multiplication table: `x ∈ C_j` and `y = x⁻¹z_k ∈ C_i` contribute `t_j`.
fn combined_class_matrix(g: &GroupTable, p: &ConjClassPartition, t: &[f64]) -> DMatrix<Complex64> {
    let r = p.num_classes();
    let mut m = DMatrix::<Complex64>::zeros(r, r);
    for (k, &z) in p.reps().iter().enumerate() {
        for x in 0..g.order() {
            let y = g.mul(g.inv(x), z);
            m[(p.class_of(y), k)] += Complex64::new(t[p.class_of(x)], 0.0);
        }
    }
    m
}

/// Eigenvectors of an upper-triangular `u` with distinct diagonal, by back
/// substitution; returned as columns of the original basis `q · y`.
fn schur_eigenvectors(q: &DMatrix<Complex64>, u: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    let r = u.nrows();
    (0..r)
        .map(|m| {
            let lambda = u[(m, m)];
            let mut y = vec![Complex64::new(0.0, 0.0); r];
            y[m] = Complex64::new(1.0, 0.0);
            for i in (0..m).rev() {
                let s: Complex64 = (i + 1..=m).map(|l| u[(i, l)] * y[l]).sum();
                y[i] = -s / (u[(i, i)] - lambda);
            }
            (0..r)
                .map(|row| (0..=m).map(|l| q[(row, l)] * y[l]).sum())
                .collect()
        })
        .collect()
}

fn min_gap(eigs: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for a in 0..eigs.len() {
        for b in a + 1..eigs.len() {
            gap = gap.min((eigs[a] - eigs[b]).norm());
        }
    }
    gap
}

fn round_key(row: &[Complex64]) -> Vec<(i64, i64)> {
    row.iter()
        .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
        .collect()
}

/// Computes the character table. Rows are sorted by degree, then by their
/// values rounded to 1e-6 in decreasing lexicographic order, so row 0 is the
/// trivial character.
pub fn character_table(g: &GroupTable, p: &ConjClassPartition, seed: u64) -> Result<CharTable> {
    let r = p.num_classes();
    let n = g.order();
    let sizes = p.sizes();
    if r == 1 {
        return CharTable::from_parts(n, sizes.to_vec(), vec![1], vec![Complex64::new(1.0, 0.0)]);
    }
    for attempt in 0..MAX_SPLIT_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed ^ splitmix(attempt as u64)));
        let t: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let schur = combined_class_matrix(g, p, &t).schur();
        let (q, u) = schur.unpack();
        let eigs: Vec<Complex64> = (0..r).map(|i| u[(i, i)]).collect();
        if min_gap(&eigs) <= EIGEN_GAP_TOLERANCE {
            continue;
        }
        let mut rows: Vec<(u64, Vec<Complex64>)> = Vec::with_capacity(r);
        for v in schur_eigenvectors(&q, &u) {
            let lead = v[0];
            if lead.norm() < 1e-12 {
                return Err(Error::OrthogonalityFailure(
                    "eigenvector vanishes on the identity class".into(),
                ));
            }
            let omega: Vec<Complex64> = v.iter().map(|&x| x / lead).collect();
            let s: f64 = omega
                .iter()
                .zip(sizes)
                .map(|(w, &c)| w.norm_sqr() / c as f64)
                .sum();
            let d = (n as f64 / s).sqrt();
            let rounded = d.round();
            let err = (d - rounded).abs();
            if err.is_nan() || err >= DEGREE_ROUNDING_TOLERANCE || rounded < 1.0 {
                return Err(Error::OrthogonalityFailure(format!(
                    "degree {d} is not an integer"
                )));
            }
            let values = omega
                .iter()
                .zip(sizes)
                .map(|(&w, &c)| w * rounded / c as f64)
                .collect();
            rows.push((rounded as u64, values));
        }
        let mut keyed: Vec<_> = rows
            .into_iter()
            .map(|(d, v)| (d, round_key(&v), v))
            .collect();
        keyed.sort_by(|a, b| match a.0.cmp(&b.0) {
            Ordering::Equal => b.1.cmp(&a.1),
            o => o,
        });
        let degrees = keyed.iter().map(|k| k.0).collect();
        let values = keyed.into_iter().flat_map(|k| k.2).collect();
        return CharTable::from_parts(n, sizes.to_vec(), degrees, values);
    }
    Err(Error::DegenerateSplitFailure {
        attempts: MAX_SPLIT_ATTEMPTS,
    })
}

/// Sorted degree multiset.
pub fn character_degrees(t: &CharTable) -> Vec<u64> {
    let mut d = t.degrees().to_vec();
    d.sort_unstable();
    d
}

/// Number of linear characters, cross-checked against `|G| / |G'|`.
pub fn linear_character_count(t: &CharTable, derived: &SubgroupHandle) -> Result<usize> {
    let linear = t.linear_count();
    let expected = t.group_order() / derived.order();
    if linear != expected || !t.group_order().is_multiple_of(derived.order()) {
        return Err(Error::InconsistentWithDerivedSubgroup { linear, expected });
    }
    Ok(linear)
}

/// The common non-linear degree, when the group is non-abelian and all
/// non-linear characters share one degree.
pub fn two_degree_profile(t: &CharTable) -> Option<u64> {
    let mut nonlinear = t.degrees().iter().copied().filter(|&d| d > 1);
    let m = nonlinear.next()?;
    nonlinear.all(|d| d == m).then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{affine_group, cyclic, dihedral, extraspecial_heisenberg};
    use crate::group::{
        build_from_generators, conjugacy_classes, derived_subgroup, parse_generators,
    };

    fn table(g: &GroupTable) -> CharTable {
        character_table(g, &conjugacy_classes(g), 7).unwrap()
    }

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-9
    }

    #[test]
    fn z2_table() {
        let t = table(&cyclic(2).unwrap());
        assert!(close(t.value(0, 0), 1.0, 0.0) && close(t.value(0, 1), 1.0, 0.0));
        assert!(close(t.value(1, 0), 1.0, 0.0) && close(t.value(1, 1), -1.0, 0.0));
    }

    #[test]
    fn trivial_group_table() {
        let t = table(&cyclic(1).unwrap());
        assert_eq!(t.degrees(), &[1]);
    }

    #[test]
    fn d3_degrees() {
        let t = table(&dihedral(3).unwrap());
        assert_eq!(character_degrees(&t), vec![1, 1, 2]);
        assert!(t.row(0).iter().all(|&v| close(v, 1.0, 0.0)));
    }

    #[test]
    fn z3_values_are_cube_roots_of_unity() {
        let t = table(&cyclic(3).unwrap());
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let mut nontrivial: Vec<Complex64> = (1..3).map(|i| t.value(i, 1)).collect();
        nontrivial.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((nontrivial[0] - w.conj()).norm() < 1e-9);
        assert!((nontrivial[1] - w).norm() < 1e-9);
    }

    #[test]
    fn extraspecial_27_degrees() {
        let t = table(&extraspecial_heisenberg(3, 1).unwrap());
        assert_eq!(character_degrees(&t), [vec![1; 9], vec![3; 2]].concat());
        assert_eq!(two_degree_profile(&t), Some(3));
    }

    #[test]
    fn degrees_for_named_groups() {
        assert_eq!(
            character_degrees(&table(&affine_group(5).unwrap())),
            vec![1, 1, 1, 1, 4]
        );
        assert_eq!(
            character_degrees(&table(&dihedral(4).unwrap())),
            vec![1, 1, 1, 1, 2]
        );
        assert_eq!(character_degrees(&table(&cyclic(6).unwrap())), vec![1; 6]);
    }

    #[test]
    fn linear_counts_match_derived_subgroup() {
        for g in [
            dihedral(5).unwrap(),
            dihedral(6).unwrap(),
            extraspecial_heisenberg(2, 2).unwrap(),
            cyclic(7).unwrap(),
        ] {
            let t = table(&g);
            let d = derived_subgroup(&g);
            assert_eq!(
                linear_character_count(&t, &d).unwrap() * d.order(),
                g.order()
            );
        }
        let t = table(&dihedral(5).unwrap());
        let wrong = derived_subgroup(&dihedral(6).unwrap());
        assert!(matches!(
            linear_character_count(&t, &wrong),
            Err(Error::InconsistentWithDerivedSubgroup { .. })
        ));
    }

    #[test]
    fn two_degree_profiles() {
        assert_eq!(two_degree_profile(&table(&dihedral(7).unwrap())), Some(2));
        assert_eq!(two_degree_profile(&table(&cyclic(6).unwrap())), None);
        let s4 = build_from_generators(&parse_generators("(0 1 2 3)\n(0 1)").unwrap(), 24).unwrap();
        let t = table(&s4);
        assert_eq!(character_degrees(&t), vec![1, 1, 2, 3, 3]);
        assert_eq!(two_degree_profile(&t), None);
    }

    #[test]
    fn same_seed_is_bit_identical_and_seeds_agree() {
        let g = affine_group(7).unwrap();
        let p = conjugacy_classes(&g);
        let a = character_table(&g, &p, 1).unwrap();
        let b = character_table(&g, &p, 1).unwrap();
        assert_eq!(a, b);
        for seed in [2, 99, 12345] {
            let c = character_table(&g, &p, seed).unwrap();
            assert_eq!(a.degrees(), c.degrees());
            let diff = a
                .values()
                .iter()
                .zip(c.values())
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-8, "seed {seed}: {diff}");
        }
    }

    #[test]
    fn corrupted_table_fails_validation() {
        let mut t = table(&dihedral(5).unwrap());
        t.validate().unwrap();
        t.perturb(2, 1, Complex64::new(1e-3, 0.0));
        assert!(matches!(t.validate(), Err(Error::OrthogonalityFailure(_))));
        let bad = CharTable::from_parts(2, vec![1, 1], vec![1, 1], vec![1.0.into(); 4]);
        assert!(matches!(bad, Err(Error::OrthogonalityFailure(_))));
    }
}
