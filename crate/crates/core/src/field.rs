//! Arithmetic in GF(p^k) for small k.
//!
//! Elements are indices `0..q` whose base-`p` digits are the coefficients of
//! the representing polynomial, lowest degree first.

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 6;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut k = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

/// Polynomials over F_p as coefficient vectors, lowest degree first, with no
/// trailing zeros (the zero polynomial is empty).
mod poly {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(p as i64) as u64
    }

    /// Remainder of `a` modulo `b` (b non-zero).
    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let factor = r[r.len() - 1] * lead_inv % p;
            for (i, &bc) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - factor * bc % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the
    /// base-`p` digits of `code`.
    pub fn monic_from_code(code: u64, deg: u32, p: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(deg as usize + 1);
        let mut c = code;
        for _ in 0..deg {
            v.push(c % p);
            c /= p;
        }
        v.push(1);
        v
    }
}

/// Irreducibility over F_p: root test for degree ≤ 3, trial division by all
/// monic polynomials of degree ≤ deg/2 otherwise.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = poly::trim(f.to_vec());
    let deg = f.len().saturating_sub(1) as u32;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    if deg <= 3 {
        return (0..p).all(|x| poly::eval(&f, x, p) != 0);
    }
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d) {
            let g = poly::monic_from_code(code, d, p);
            if poly::rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// A finite field GF(q), q = p^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    q: u64,
    /// Degree-k monic modulus, lowest coefficient first (length k + 1).
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// GF(p^k) with the smallest monic irreducible modulus of degree k, where
    /// candidates are ordered lexicographically on `(c_0, c_1, …, c_{k-1})`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(k));
        }
        let q = p.pow(k);
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            lexicographic_monics(k, p)
                .find(|f| is_irreducible(f, p))
                .expect("an irreducible of every degree exists")
        };
        Ok(FieldSpec { p, k, q, modulus })
    }

    /// The field of order `q`, for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::InvalidFieldOrder(q))?;
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn one(&self) -> u64 {
        1
    }

    fn digits(&self, a: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut a = a;
        for _ in 0..self.k {
            v.push(a % self.p);
            a /= self.p;
        }
        v
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn check(&self, a: u64) -> Result<()> {
        if a >= self.q {
            return Err(Error::IndexOutOfRange {
                index: a as usize,
                bound: self.q as usize,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: u64, b: u64) -> Result<u64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn neg(&self, a: u64) -> Result<u64> {
        self.check(a)?;
        let d: Vec<u64> = self
            .digits(a)
            .iter()
            .map(|&c| (self.p - c) % self.p)
            .collect();
        Ok(self.encode(&d))
    }

    pub fn mul(&self, a: u64, b: u64) -> Result<u64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_unchecked(a, self.q - 2))
    }

    pub fn pow(&self, a: u64, e: u64) -> Result<u64> {
        self.check(a)?;
        Ok(self.pow_unchecked(a, e))
    }

    pub(crate) fn add_unchecked(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        self.encode(&s)
    }

    pub(crate) fn mul_unchecked(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.k as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly::rem(&prod, &self.modulus, self.p);
        self.encode(&r)
    }

    fn pow_unchecked(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_unchecked(acc, base);
            }
            base = self.mul_unchecked(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a non-zero element.
    pub fn multiplicative_order(&self, a: u64) -> Result<u64> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut n = self.q - 1;
        for r in prime_factors(self.q - 1) {
            while n.is_multiple_of(r) && self.pow_unchecked(a, n / r) == 1 {
                n /= r;
            }
        }
        Ok(n)
    }

    /// Smallest element generating the multiplicative group.
    pub fn multiplicative_generator(&self) -> u64 {
        let factors = prime_factors(self.q - 1);
        (1..self.q)
            .find(|&a| {
                factors
                    .iter()
                    .all(|&r| self.pow_unchecked(a, (self.q - 1) / r) != 1)
            })
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// Whether `a` is a non-zero square.
    pub fn is_nonzero_square(&self, a: u64) -> bool {
        a != 0 && (self.p == 2 || self.pow_unchecked(a, (self.q - 1) / 2) == 1)
    }
}

fn lexicographic_monics(k: u32, p: u64) -> impl Iterator<Item = Vec<u64>> {
    // c_0 is the most significant position of the ordering.
    (0..p.pow(k)).map(move |code| {
        let mut lower = vec![0u64; k as usize];
        let mut c = code;
        for slot in lower.iter_mut().rev() {
            *slot = c % p;
            c /= p;
        }
        lower.push(1);
        lower
    })
}

/// Shorthand for [`FieldSpec::new`].
pub fn make_field(p: u64, k: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force irreducibility: no factorization into two monic factors of
    /// positive degree, by multiplying all pairs.
    fn brute_irreducible(f: &[u64], p: u64) -> bool {
        let deg = f.len() as u32 - 1;
        for d in 1..deg {
            for a in 0..p.pow(d) {
                for b in 0..p.pow(deg - d) {
                    let fa = poly::monic_from_code(a, d, p);
                    let fb = poly::monic_from_code(b, deg - d, p);
                    let mut prod = vec![0u64; deg as usize + 1];
                    for (i, &x) in fa.iter().enumerate() {
                        for (j, &y) in fb.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    if prod == f {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn prime_field_gf3() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.add(2, 2).unwrap(), 1);
        assert_eq!(f.mul(2, 2).unwrap(), 1);
    }

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // every lexicographically earlier monic quadratic is reducible
        for cand in lexicographic_monics(2, 3).take_while(|c| c != &vec![1, 0, 1]) {
            assert!(!brute_irreducible(&cand, 3), "{cand:?}");
        }
        assert!(brute_irreducible(&[1, 0, 1], 3));
    }

    #[test]
    fn gf4_arithmetic() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * x = x + 1, with x encoded as 2 and x + 1 as 3
        assert_eq!(f.mul(2, 2).unwrap(), 3);
        assert_eq!(f.multiplicative_order(2).unwrap(), 3);
    }

    #[test]
    fn inverses_and_errors() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.inv(2).unwrap(), 3);
        assert!(matches!(f.inv(0), Err(Error::DivisionByZero)));
        assert!(matches!(make_field(6, 1), Err(Error::NotPrime(6))));
        assert!(matches!(make_field(2, 7), Err(Error::DegreeTooLarge(7))));
        assert!(f.add(5, 0).is_err());
    }

    #[test]
    fn generators_of_small_prime_fields() {
        assert_eq!(make_field(5, 1).unwrap().multiplicative_generator(), 2);
        assert_eq!(make_field(7, 1).unwrap().multiplicative_generator(), 3);
        assert_eq!(make_field(3, 1).unwrap().multiplicative_generator(), 2);
    }

    #[test]
    fn moduli_agree_with_brute_force_irreducibility() {
        for (p, k) in [
            (2, 2),
            (2, 3),
            (2, 4),
            (3, 2),
            (3, 3),
            (5, 2),
            (2, 5),
            (2, 6),
            (3, 4),
        ] {
            let f = make_field(p, k).unwrap();
            assert!(brute_irreducible(f.modulus(), p), "GF({p}^{k})");
            for cand in lexicographic_monics(k, p).take_while(|c| c.as_slice() != f.modulus()) {
                assert!(!brute_irreducible(&cand, p));
            }
            assert_eq!(f, make_field(p, k).unwrap());
        }
    }

    #[test]
    fn field_axioms_exhaustive_up_to_49() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
            let f = FieldSpec::of_order(q).unwrap();
            for a in 0..q {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()).unwrap(), 1);
                    assert_eq!(f.pow(a, q - 1).unwrap(), 1);
                }
                assert_eq!(f.add(a, f.neg(a).unwrap()).unwrap(), 0);
                for b in 0..q {
                    assert_eq!(f.add(a, b).unwrap(), f.add(b, a).unwrap());
                    assert_eq!(f.mul(a, b).unwrap(), f.mul(b, a).unwrap());
                    for c in 0..q {
                        let ab_c = f.mul(f.mul(a, b).unwrap(), c).unwrap();
                        assert_eq!(ab_c, f.mul(a, f.mul(b, c).unwrap()).unwrap());
                        let dist = f.mul(a, f.add(b, c).unwrap()).unwrap();
                        let expanded = f.add(f.mul(a, b).unwrap(), f.mul(a, c).unwrap()).unwrap();
                        assert_eq!(dist, expanded);
                        assert_eq!(
                            f.add(f.add(a, b).unwrap(), c).unwrap(),
                            f.add(a, f.add(b, c).unwrap()).unwrap()
                        );
                    }
                }
            }
            if q >= 3 {
                let g = f.multiplicative_generator();
                assert_eq!(f.multiplicative_order(g).unwrap(), q - 1);
            }
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
