//! Finite fields GF(s) for odd prime powers s.
//!
//! Element `i` is the polynomial whose coefficients, constant term first, are
//! the base-p digits of `i`. Index 0 is the additive identity and index 1 the
//! multiplicative identity. For s = p^k with k > 1 the modulus is the
//! lexicographically smallest monic irreducible polynomial of degree k, where
//! the non-leading coefficients (constant term first) are read as a base-p
//! integer.
//!
//! Multiplication goes through log/antilog tables keyed by the canonical
//! primitive element: the enumeration-smallest element of order s - 1.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    order: u32,
    characteristic: u32,
    degree: u32,
    /// Coefficients constant term first, including the leading 1; empty for prime fields.
    modulus: Vec<u32>,
    primitive: u32,
    /// `antilog[e]` is the index of primitive^e, for e in 0..order-1.
    antilog: Vec<u32>,
    /// `log[i]` is the discrete log of element i; `log[0]` is unused.
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("order", &self.order)
            .field("characteristic", &self.characteristic)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}) p={} k={}",
            self.order, self.characteristic, self.degree
        )?;
        if !self.modulus.is_empty() {
            let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, " modulus={}", coeffs.join(","))?;
        }
        Ok(())
    }
}

/// Builds GF(s). Fails unless s is an odd prime power.
pub fn make_field(s: u64) -> Result<FiniteField> {
    FiniteField::new(s)
}

/// The enumeration-smallest primitive element of `field`.
pub fn find_primitive(field: &FiniteField) -> FieldElement<'_> {
    field.primitive()
}

impl FiniteField {
    pub fn new(s: u64) -> Result<Self> {
        if s < 3 || s % 2 == 0 || s > MAX_ORDER {
            return Err(Error::NotOddPrimePower(s));
        }
        let (p, k) = prime_power(s).ok_or(Error::NotOddPrimePower(s))?;
        let modulus = if k == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, k)
        };
        let mut field = FiniteField {
            order: s as u32,
            characteristic: p,
            degree: k,
            modulus,
            primitive: 0,
            antilog: Vec::new(),
            log: Vec::new(),
        };
        field.primitive = field.search_primitive();
        field.build_tables();
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Monic modulus, constant term first. Empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, index: u32) -> Result<FieldElement<'_>> {
        if index >= self.order {
            return Err(Error::ElementOutOfRange {
                index,
                order: self.order,
            });
        }
        Ok(FieldElement { field: self, index })
    }

    pub fn zero(&self) -> FieldElement<'_> {
        FieldElement {
            field: self,
            index: 0,
        }
    }

    pub fn one(&self) -> FieldElement<'_> {
        FieldElement {
            field: self,
            index: 1,
        }
    }

    pub fn primitive(&self) -> FieldElement<'_> {
        FieldElement {
            field: self,
            index: self.primitive,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> + '_ {
        (0..self.order).map(move |index| FieldElement { field: self, index })
    }

    // Raw index arithmetic. Callers guarantee indices are in range.

    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        let p = self.characteristic;
        if self.degree == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg_idx(&self, a: u32) -> u32 {
        let p = self.characteristic;
        if self.degree == 1 {
            return (p - a) % p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.order - 1;
        let e = (self.log[a as usize] + self.log[b as usize]) % n;
        self.antilog[e as usize]
    }

    pub fn pow_idx(&self, a: u32, exp: u64) -> u32 {
        if exp == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        let e = (self.log[a as usize] as u64 * (exp % n)) % n;
        self.antilog[e as usize]
    }

    /// Index of primitive^e, exponent reduced mod s - 1.
    pub fn primitive_pow(&self, exp: u64) -> u32 {
        self.antilog[(exp % (self.order as u64 - 1)) as usize]
    }

    /// Discrete log base the canonical primitive element; `None` for zero.
    pub fn log_idx(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn power_table<'a>(&'a self, generator: &FieldElement<'a>) -> Result<PowerTable<'a>> {
        if !std::ptr::eq(generator.field, self) && generator.field != self {
            return Err(Error::FieldMismatch);
        }
        if !generator.is_primitive() {
            return Err(Error::InvalidDesign(format!(
                "element {} is not primitive",
                generator.index
            )));
        }
        let n = (self.order - 1) as usize;
        let mut antilog = Vec::with_capacity(n);
        let mut log = vec![None; self.order as usize];
        let mut cur = 1;
        for e in 0..n {
            antilog.push(cur);
            log[cur as usize] = Some(e as u32);
            cur = self.mul_idx(cur, generator.index);
        }
        Ok(PowerTable {
            generator: *generator,
            antilog,
            log,
        })
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let p = self.characteristic;
        (0..self.degree)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    fn pack_digits(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.characteristic + d)
    }

    /// Multiplication by polynomial arithmetic, used before the tables exist.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.characteristic as u64;
        if self.degree == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let prod = poly_mul(&da, &db, self.characteristic);
        let rem = poly_rem(&prod, &self.modulus, self.characteristic);
        let mut digits = rem;
        digits.resize(self.degree as usize, 0);
        self.pack_digits(&digits)
    }

    fn slow_pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn search_primitive(&self) -> u32 {
        let n = self.order as u64 - 1;
        let primes = prime_factors(n);
        (1..self.order)
            .find(|&a| primes.iter().all(|&l| self.slow_pow(a, n / l) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&mut self) {
        let n = (self.order - 1) as usize;
        let mut antilog = Vec::with_capacity(n);
        let mut log = vec![u32::MAX; self.order as usize];
        let mut cur = 1;
        for e in 0..n {
            antilog.push(cur);
            log[cur as usize] = e as u32;
            cur = self.slow_mul(cur, self.primitive);
        }
        debug_assert_eq!(cur, 1);
        self.antilog = antilog;
        self.log = log;
    }
}

/// An element of a particular field.
#[derive(Clone, Copy)]
pub struct FieldElement<'a> {
    field: &'a FiniteField,
    index: u32,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.index, self.field.order)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.same_field(other)
    }
}

impl Eq for FieldElement<'_> {}

impl<'a> FieldElement<'a> {
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn field(&self) -> &'a FiniteField {
        self.field
    }

    fn same_field(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) || self.field == other.field
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, index: u32) -> Self {
        FieldElement {
            field: self.field,
            index,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.add_idx(self.index, other.index)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.sub_idx(self.index, other.index)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.mul_idx(self.index, other.index)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg_idx(self.index))
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.with(self.field.pow_idx(self.index, exp))
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.field.order as u64 - 1;
        (self.index != 0).then(|| self.pow(n - 1))
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    /// Multiplicative order; `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u64> {
        let log = self.field.log_idx(self.index)? as u64;
        let n = self.field.order as u64 - 1;
        Some(n / num_integer::gcd(n, log))
    }

    pub fn is_primitive(&self) -> bool {
        self.multiplicative_order() == Some(self.field.order as u64 - 1)
    }
}

/// Powers of a primitive element and their inverse map.
#[derive(Debug, Clone)]
pub struct PowerTable<'a> {
    generator: FieldElement<'a>,
    antilog: Vec<u32>,
    log: Vec<Option<u32>>,
}

impl<'a> PowerTable<'a> {
    pub fn generator(&self) -> FieldElement<'a> {
        self.generator
    }

    /// generator^e as an element index, e reduced mod s - 1.
    pub fn antilog(&self, e: u64) -> u32 {
        self.antilog[(e % self.antilog.len() as u64) as usize]
    }

    pub fn log(&self, index: u32) -> Option<u32> {
        self.log.get(index as usize).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.antilog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.antilog.is_empty()
    }
}

/// Returns (p, k) with n = p^k, p prime.
pub(crate) fn prime_power(n: u64) -> Option<(u32, u32)> {
    let primes = prime_factors(n);
    if primes.len() != 1 {
        return None;
    }
    let p = primes[0];
    let mut k = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    Some((p as u32, k))
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo a monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead as u64 * c as u64 % p as u64) as u32;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn monic_of_degree(p: u32, degree: u32, rank: u64) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    let mut r = rank;
    for _ in 0..degree {
        coeffs.push((r % p as u64) as u32);
        r /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let degree = (f.len() - 1) as u32;
    for d in 1..=degree / 2 {
        let count = (p as u64).pow(d);
        for rank in 0..count {
            let g = monic_of_degree(p, d, rank);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    (0..count)
        .map(|rank| monic_of_degree(p, k, rank))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf19_is_prime_field_with_generator_two() {
        let f = make_field(19).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (19, 1));
        assert!(f.modulus().is_empty());
        assert_eq!(find_primitive(&f).index(), 2);
    }

    #[test]
    fn gf3() {
        let f = make_field(3).unwrap();
        assert_eq!(f.elements().map(|e| e.index()).collect::<Vec<_>>(), [0, 1, 2]);
        assert_eq!(find_primitive(&f).index(), 2);
    }

    #[test]
    fn rejects_non_odd_prime_powers() {
        for s in [0, 1, 2, 4, 6, 15, 21, 45, 100] {
            assert!(matches!(make_field(s), Err(Error::NotOddPrimePower(_))), "{s}");
        }
    }

    #[test]
    fn gf9_modulus_is_smallest_irreducible_quadratic() {
        // Oracle: enumerate x^2 + b x + c in rank order c + 3b, test for roots.
        let expected = (0..9u32)
            .map(|rank| (rank % 3, rank / 3))
            .find(|&(c, b)| (0..3u32).all(|x| (x * x + b * x + c) % 3 != 0))
            .unwrap();
        let f = make_field(9).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (3, 2));
        assert_eq!(f.modulus(), &[expected.0, expected.1, 1]);
    }

    #[test]
    fn gf9_primitive_matches_brute_force_order() {
        let f = make_field(9).unwrap();
        // Brute-force orders by repeated slow multiplication.
        let first = (1..9u32)
            .find(|&a| {
                let mut cur = a;
                let mut order = 1;
                while cur != 1 {
                    cur = f.slow_mul(cur, a);
                    order += 1;
                }
                order == 8
            })
            .unwrap();
        assert_eq!(find_primitive(&f).index(), first);
    }

    #[test]
    fn gf19_powers() {
        let f = make_field(19).unwrap();
        let two = f.element(2).unwrap();
        assert_eq!(two.pow(6).index(), 7);
        assert_eq!(two.pow(9).index(), 18);
        assert_eq!(two.pow(9), f.one().neg());
        let a = f.element(11).unwrap();
        assert_eq!(a.add(&f.zero()).unwrap(), a);
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let f = make_field(7).unwrap();
        let g = make_field(11).unwrap();
        let a = f.element(3).unwrap();
        let b = g.element(3).unwrap();
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch)));
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch)));
        // Structurally equal fields are interchangeable.
        let f2 = make_field(7).unwrap();
        assert!(a.mul(&f2.element(2).unwrap()).is_ok());
    }

    #[test]
    fn powers_of_generator_cover_nonzero_elements() {
        for s in [3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 49, 81, 121, 125, 243] {
            let f = make_field(s).unwrap();
            let table = f.power_table(&f.primitive()).unwrap();
            let mut seen = vec![false; s as usize];
            for e in 0..table.len() as u64 {
                let idx = table.antilog(e);
                assert!(idx != 0 && !seen[idx as usize], "s={s}");
                seen[idx as usize] = true;
                assert_eq!(table.log(idx), Some(e as u32));
            }
            assert_eq!(table.antilog((s - 1) / 2), f.neg_idx(1), "s={s}");
            for x in f.elements().skip(1) {
                assert_eq!(x.pow(s - 1), f.one());
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for s in [3u64, 5, 7, 9, 11, 13, 25, 27] {
            let f = make_field(s).unwrap();
            let n = s as u32;
            for a in 0..n {
                assert_eq!(f.add_idx(a, f.neg_idx(a)), 0);
                for b in 0..n {
                    assert_eq!(f.add_idx(a, b), f.add_idx(b, a));
                    assert_eq!(f.mul_idx(a, b), f.mul_idx(b, a));
                    assert_eq!(f.mul_idx(a, b), f.slow_mul(a, b));
                    for c in 0..n {
                        assert_eq!(
                            f.add_idx(f.add_idx(a, b), c),
                            f.add_idx(a, f.add_idx(b, c))
                        );
                        assert_eq!(
                            f.mul_idx(f.mul_idx(a, b), c),
                            f.mul_idx(a, f.mul_idx(b, c))
                        );
                        assert_eq!(
                            f.mul_idx(a, f.add_idx(b, c)),
                            f.add_idx(f.mul_idx(a, b), f.mul_idx(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn power_table_rejects_non_generator() {
        let f = make_field(19).unwrap();
        assert!(f.power_table(&f.element(4).unwrap()).is_err());
        assert_eq!(f.element(4).unwrap().multiplicative_order(), Some(9));
    }

    #[test]
    fn display_describes_field() {
        assert_eq!(make_field(19).unwrap().to_string(), "GF(19) p=19 k=1");
        assert_eq!(make_field(9).unwrap().to_string(), "GF(9) p=3 k=2 modulus=1,0,1");
    }
}
