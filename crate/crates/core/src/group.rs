//! Finite groups as dense multiplication tables, with conjugacy classes,
//! centre, derived subgroup and class multiplication coefficients.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Orders up to this bound have associativity checked on every triple.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;

#[derive(Clone, PartialEq, Eq)]
enum MulTable {
    Narrow(Vec<u16>),
    Wide(Vec<u32>),
}

impl MulTable {
    fn build(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        if order <= u16::MAX as usize + 1 {
            let mut data = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    data.push(f(a, b) as u16);
                }
            }
            MulTable::Narrow(data)
        } else {
            let mut data = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    data.push(f(a, b) as u32);
                }
            }
            MulTable::Wide(data)
        }
    }

    #[inline]
    fn get(&self, idx: usize) -> usize {
        match self {
            MulTable::Narrow(d) => d[idx] as usize,
            MulTable::Wide(d) => d[idx] as usize,
        }
    }
}

/// A finite group on the element indices `0..order`. Element 0 is the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: MulTable,
    identity: usize,
    inv: Vec<usize>,
    label: String,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl GroupTable {
    /// Builds a table from a flat row-major Cayley table and validates it.
    pub fn from_cayley(label: impl Into<String>, order: usize, table: &[usize]) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= order) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        let mul = MulTable::build(order, |a, b| table[a * order + b]);
        Self::finish(label.into(), order, mul)
    }

    /// Builds the group on an explicit element list closed under `op`.
    /// `elements[0]` must be the identity.
    pub fn from_closed_set<T, F>(
        label: impl Into<String>,
        elements: &[T],
        op: F,
        order_cap: usize,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let order = elements.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty element set".into()));
        }
        if order > order_cap {
            return Err(Error::OrderExceedsCap {
                order: order as u128,
                cap: order_cap,
            });
        }
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != order {
            return Err(Error::InvalidGroup("duplicate elements".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for a in elements {
            for b in elements {
                let c = op(a, b);
                match index.get(&c) {
                    Some(&i) => flat.push(i),
                    None => return Err(Error::InvalidGroup("element set is not closed".into())),
                }
            }
        }
        Self::from_cayley(label, order, &flat)
    }

    fn finish(label: String, order: usize, mul: MulTable) -> Result<Self> {
        let mut inv = vec![usize::MAX; order];
        for (a, slot) in inv.iter_mut().enumerate() {
            if let Some(b) = (0..order).find(|&b| mul.get(a * order + b) == 0) {
                *slot = b;
            }
        }
        let g = GroupTable {
            order,
            mul,
            identity: 0,
            inv,
            label,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.get(a * self.order + b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `x y x⁻¹ y⁻¹`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let mut acc = self.identity;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != self.identity {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks the group axioms. Associativity is exhaustive up to order 256
    /// and sampled on `10·|G|` random triples above that.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let mut seen = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] == a + 1 {
                    return Err(Error::InvalidGroup(format!("row {a} repeats entry {c}")));
                }
                seen[c] = a + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for b in 0..n {
            for a in 0..n {
                let c = self.mul(a, b);
                if seen[c] == b + 1 {
                    return Err(Error::InvalidGroup(format!("column {b} repeats entry {c}")));
                }
                seen[c] = b + 1;
            }
        }
        let e = self.identity;
        for x in 0..n {
            if self.mul(e, x) != x || self.mul(x, e) != x {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
            let y = self.inv[x];
            if y >= n || self.mul(x, y) != e || self.mul(y, x) != e {
                return Err(Error::InvalidGroup(format!(
                    "element {x} has no two-sided inverse"
                )));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "not associative at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6173_736f_6369_6174);
            for _ in 0..10 * n {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if !assoc(a, b, c) {
                    return Err(Error::InvalidGroup(format!(
                        "not associative at ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut hit = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || hit[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
            hit[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation of `0..degree` from disjoint cycles.
    pub fn from_cycles(cycles: &[Vec<u32>], degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (pos, &pt) in cycle.iter().enumerate() {
                let p = pt as usize;
                if p >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} exceeds degree {degree}"
                    )));
                }
                if used[p] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} appears twice"
                    )));
                }
                used[p] = true;
                images[p] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0.get(x as usize).copied().unwrap_or(x)
    }

    fn padded(&self, degree: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree as u32);
        v
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

fn parse_cycle_line(line: &str, line_no: usize) -> Result<Vec<Vec<u32>>> {
    let err = |msg: String| Error::Parse { line: line_no, msg };
    let mut cycles = Vec::new();
    let mut rest = line.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(err(format!("expected `(` at `{rest}`")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| err("unterminated cycle".into()))?;
        let body = &rest[1..close];
        let points = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| err(format!("bad point `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Parses the generator-file format: one permutation per line in 0-based
/// disjoint-cycle notation; blank lines and `#` comments are ignored. All
/// generators are returned on a common degree.
pub fn parse_generators(text: &str) -> Result<Vec<Permutation>> {
    let mut parsed = Vec::new();
    let mut degree = 1usize;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cycles = parse_cycle_line(line, i + 1)?;
        let max_pt = cycles
            .iter()
            .flatten()
            .copied()
            .max()
            .map_or(0, |m| m as usize + 1);
        degree = degree.max(max_pt);
        parsed.push((i + 1, cycles));
    }
    parsed
        .into_iter()
        .map(|(line, cycles)| {
            Permutation::from_cycles(&cycles, degree).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })
        })
        .collect()
}

/// Closes a set of permutations under composition. Elements are numbered in
/// BFS order from the identity, right-multiplying by each generator in turn.
/// The product `ab` applies `a` first, then `b`.
pub fn build_from_generators(generators: &[Permutation], max_order: usize) -> Result<GroupTable> {
    for g in generators {
        Permutation::from_images(g.0.clone())?;
    }
    let degree = generators
        .iter()
        .map(Permutation::degree)
        .max()
        .unwrap_or(1)
        .max(1);
    let gens: Vec<Vec<u32>> = generators.iter().map(|g| g.padded(degree)).collect();
    let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().map(|&x| b[x as usize]).collect() };

    let mut elements: Vec<Vec<u32>> = vec![(0..degree as u32).collect()];
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in &gens {
            let p = compose(&elements[i], s);
            if !index.contains_key(&p) {
                if elements.len() >= max_order {
                    return Err(Error::ClosureExceedsLimit { limit: max_order });
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    let n = elements.len();
    let mut flat = Vec::with_capacity(n * n);
    let mut buf = vec![0u32; degree];
    for a in &elements {
        for b in &elements {
            for (slot, &x) in buf.iter_mut().zip(a) {
                *slot = b[x as usize];
            }
            flat.push(index[&buf]);
        }
    }
    GroupTable::from_cayley(format!("permutation group of order {n}"), n, &flat)
}

/// A subgroup given by its membership mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupHandle {
    member_mask: Vec<bool>,
    order: usize,
}

impl SubgroupHandle {
    /// The subgroup generated by `seeds`.
    pub fn generated_by(g: &GroupTable, seeds: &[usize]) -> Self {
        let mut mask = vec![false; g.order()];
        mask[g.identity()] = true;
        let mut gens: Vec<usize> = seeds
            .iter()
            .copied()
            .filter(|&s| s != g.identity())
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let mut members = vec![g.identity()];
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = g.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        SubgroupHandle {
            order: members.len(),
            member_mask: mask,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.member_mask.get(x).copied().unwrap_or(false)
    }

    pub fn mask(&self) -> &[bool] {
        &self.member_mask
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.member_mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn is_normal_in(&self, g: &GroupTable) -> bool {
        self.members()
            .all(|h| (0..g.order()).all(|x| self.contains(g.conjugate(h, x))))
    }
}

/// Subgroup generated by all commutators.
pub fn derived_subgroup(g: &GroupTable) -> SubgroupHandle {
    let n = g.order();
    let mut is_seed = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            is_seed[g.commutator(x, y)] = true;
        }
    }
    let seeds: Vec<usize> = (0..n).filter(|&c| is_seed[c]).collect();
    SubgroupHandle::generated_by(g, &seeds)
}

pub fn center(g: &GroupTable) -> SubgroupHandle {
    let n = g.order();
    let mask: Vec<bool> = (0..n)
        .map(|z| (0..n).all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    let order = mask.iter().filter(|&&m| m).count();
    SubgroupHandle {
        member_mask: mask,
        order,
    }
}

/// Partition of a group into conjugacy classes, ordered by
/// `(size, smallest member)`; class 0 is `{identity}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassPartition {
    classes: Vec<Vec<usize>>,
    sizes: Vec<usize>,
    reps: Vec<usize>,
    class_of: Vec<usize>,
}

impl ConjClassPartition {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// `Σ |C|²` over all classes.
    pub fn sum_squared_sizes(&self) -> u128 {
        self.sizes.iter().map(|&s| (s as u128) * (s as u128)).sum()
    }

    /// Sorted multiset of class sizes.
    pub fn size_multiset(&self) -> Vec<usize> {
        let mut v = self.sizes.clone();
        v.sort_unstable();
        v
    }
}

pub fn conjugacy_classes(g: &GroupTable) -> ConjClassPartition {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut orbit = Vec::new();
        for y in 0..n {
            let c = g.conjugate(x, y);
            if !assigned[c] {
                assigned[c] = true;
                orbit.push(c);
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    classes.sort_by_key(|c| (c.len(), c[0]));
    let mut class_of = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    ConjClassPartition {
        sizes: classes.iter().map(Vec::len).collect(),
        reps: classes.iter().map(|c| c[0]).collect(),
        classes,
        class_of,
    }
}

/// `a_{ijk} = #{(x, y) ∈ C_i × C_j : xy = z}` for the representative `z` of `C_k`.
pub fn class_mult_coefficient(
    g: &GroupTable,
    p: &ConjClassPartition,
    i: usize,
    j: usize,
    k: usize,
) -> Result<u64> {
    let r = p.num_classes();
    for idx in [i, j, k] {
        if idx >= r {
            return Err(Error::IndexOutOfRange {
                index: idx,
                bound: r,
            });
        }
    }
    Ok(coefficient_at(g, p, i, j, p.reps()[k]))
}

/// The same count with an explicit target element `z`.
pub fn coefficient_at(g: &GroupTable, p: &ConjClassPartition, i: usize, j: usize, z: usize) -> u64 {
    p.class(i)
        .iter()
        .filter(|&&x| p.class_of(g.mul(g.inv(x), z)) == j)
        .count() as u64
}

/// All class multiplication coefficients, indexed `(i, j, k)`.
#[derive(Clone, Debug)]
pub struct ClassMultTensor {
    r: usize,
    data: Vec<u64>,
}

impl ClassMultTensor {
    pub fn new(g: &GroupTable, p: &ConjClassPartition) -> Self {
        let r = p.num_classes();
        let mut data = vec![0u64; r * r * r];
        for (k, &z) in p.reps().iter().enumerate() {
            for x in 0..g.order() {
                let y = g.mul(g.inv(x), z);
                data[(p.class_of(x) * r + p.class_of(y)) * r + k] += 1;
            }
        }
        ClassMultTensor { r, data }
    }

    pub fn num_classes(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.data[(i * self.r + j) * self.r + k]
    }
}
