//! Arithmetic in `Z/QZ` for `Q` a product of distinct primes.
//!
//! The Chinese remainder isomorphism identifies `Z/QZ` with the product of the
//! fields `Z/q_1Z x ... x Z/q_rZ`, so a single ring element carries one
//! residue per field. [`PrimeBasis`] owns the primes, their product and the
//! idempotents `nu_s`; [`ModulusMask`] names a divisor `Q_S` of `Q` (a subset of
//! fields); [`RingElem`] is an element of `Z/QZ`.
//!
//! Ring elements are stored by their balanced representative when it fits in
//! a machine word, which keeps the `+-1` coefficients of boundary matrices
//! (and everything derived from them without torsion) off the heap. The
//! representation is still canonical: every residue class has exactly one
//! `RingElem`, and [`PrimeBasis::canonical`] returns the representative in
//! `[0, Q)`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest magnitude kept in the inline representation.
const SMALL_BOUND: i64 = 1 << 62;

/// Returns the `count` smallest primes in increasing order.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_n < n (ln n + ln ln n) for n >= 6
    let n = count as f64;
    let bound = if count < 6 { 15 } else { (n * (n.ln() + n.ln().ln())).ceil() as usize + 1 };
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::with_capacity(count);
    for p in 2..=bound {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        if primes.len() == count {
            break;
        }
        let mut multiple = p * p;
        while multiple <= bound {
            composite[multiple] = true;
            multiple += p;
        }
    }
    debug_assert_eq!(primes.len(), count);
    primes
}

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Extended Euclidean algorithm.
///
/// Returns `(g, v, w)` with `v*a + w*b = g = gcd(a, b) > 0`. Fails when both
/// inputs are zero.
pub fn bezout(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Arithmetic("bezout(0, 0) is undefined".into()));
    }
    let (mut r0, mut r1) = (a.abs(), b.abs());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if a.is_negative() {
        s0 = -s0;
    }
    if b.is_negative() {
        t0 = -t0;
    }
    Ok((r0, s0, t0))
}

/// Number of `w`-bit words needed to store `n`: `floor(log2(n) / w) + 1`.
pub fn word_length(n: &BigUint, w: u32) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::Arithmetic("word length of 0 is undefined".into()));
    }
    if w == 0 {
        return Err(Error::Arithmetic("word size must be positive".into()));
    }
    // floor(log2 n) = bits - 1, and floor(x / w) = floor(floor(x) / w) for integer w
    Ok((n.bits() - 1) / u64::from(w) + 1)
}

/// Upper bound `floor(1.46613 r ln(r ln r) / w) + 1` on the word length of
/// the product of the first `r` primes, valid for `r >= 6`.
pub fn word_length_bound(r: usize, w: u32) -> Result<u64> {
    if r < 6 {
        return Err(Error::Arithmetic(format!("bound needs r >= 6, got {r}")));
    }
    if w == 0 {
        return Err(Error::Arithmetic("word size must be positive".into()));
    }
    let r = r as f64;
    Ok((1.46613 * r * (r * r.ln()).ln() / f64::from(w)).floor() as u64 + 1)
}

/// An element of `Z/QZ`.
///
/// Compare and hash freely: the representation is unique per residue class.
/// Operations that need `Q` live on [`PrimeBasis`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElem(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Balanced representative `b`, `-Q/2 < b <= Q/2`, with `|b| <= SMALL_BOUND`.
    Small(i64),
    /// Canonical representative in `[0, Q)` whose balanced form is too large.
    Big(Box<BigUint>),
}

impl RingElem {
    pub const ZERO: RingElem = RingElem(Repr::Small(0));
    pub const ONE: RingElem = RingElem(Repr::Small(1));
    pub const MINUS_ONE: RingElem = RingElem(Repr::Small(-1));

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    /// The balanced representative, when it fits in a word.
    pub fn as_small(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(b) => Some(b),
            Repr::Big(_) => None,
        }
    }

    /// True for the classes of `1` and `-1`.
    pub fn is_unit_sign(&self) -> bool {
        matches!(self.0, Repr::Small(1) | Repr::Small(-1))
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(b) => write!(f, "{b}"),
            Repr::Big(c) => write!(f, "{c}"),
        }
    }
}

/// A subset `S` of the field indices, standing for the divisor `Q_S` of `Q`.
///
/// Set algebra replaces arithmetic on the divisors: intersection is
/// `gcd(Q_S, Q_T)`, difference is `Q_S / Q_{S and T}`, union is `lcm`. The
/// divisor itself is available through [`ModulusMask::value`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModulusMask {
    bits: SmallVec<[u64; 2]>,
}

impl ModulusMask {
    fn words(r: usize) -> usize {
        r.div_ceil(64).max(1)
    }

    /// `Q_{}` = 1.
    pub fn empty(r: usize) -> Self {
        ModulusMask { bits: SmallVec::from_elem(0, Self::words(r)) }
    }

    /// `Q_{[r]}` = Q.
    pub fn full(r: usize) -> Self {
        let mut mask = Self::empty(r);
        for s in 0..r {
            mask.insert(s);
        }
        mask
    }

    /// Mask of the given field indices (0-based).
    pub fn from_fields(r: usize, fields: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = Self::empty(r);
        for s in fields {
            assert!(s < r, "field index {s} out of range for {r} primes");
            mask.insert(s);
        }
        mask
    }

    fn insert(&mut self, s: usize) {
        self.bits[s / 64] |= 1 << (s % 64);
    }

    pub fn contains(&self, s: usize) -> bool {
        self.bits.get(s / 64).is_some_and(|w| w & (1 << (s % 64)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `gcd(Q_S, Q_T) = Q_{S and T}`.
    pub fn gcd(&self, other: &Self) -> Self {
        ModulusMask { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect() }
    }

    /// `Q_S / gcd(Q_S, Q_T) = Q_{S minus T}`.
    pub fn without(&self, other: &Self) -> Self {
        ModulusMask { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & !b).collect() }
    }

    /// `lcm(Q_S, Q_T) = Q_{S or T}`.
    pub fn union(&self, other: &Self) -> Self {
        ModulusMask { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect() }
    }

    /// True when `gcd(Q_S, Q_T) > 1`.
    pub fn intersects(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Field indices in increasing order.
    pub fn fields(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w * 64 + b))
    }

    /// The divisor `Q_S`.
    pub fn value(&self, basis: &PrimeBasis) -> BigUint {
        self.fields().map(|s| BigUint::from(basis.primes[s])).product()
    }

    /// The subset `S` encoded by a divisor `Q_S` of `Q`.
    pub fn from_value(basis: &PrimeBasis, value: &BigUint) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::Arithmetic("mask value must be positive".into()));
        }
        let mut rest = value.clone();
        let mut mask = Self::empty(basis.len());
        for (s, &q) in basis.primes.iter().enumerate() {
            let q = BigUint::from(q);
            if (&rest % &q).is_zero() {
                rest /= &q;
                mask.insert(s);
            }
        }
        if !rest.is_one() {
            return Err(Error::Arithmetic(format!("{value} does not divide Q")));
        }
        Ok(mask)
    }
}

impl fmt::Debug for ModulusMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.fields()).finish()
    }
}

/// The primes `q_1 < ... < q_r`, their product `Q` and the CRT idempotents.
#[derive(Clone, Debug)]
pub struct PrimeBasis {
    primes: Vec<u64>,
    modulus: BigUint,
    modulus_int: BigInt,
    /// `nu_s = (Q / q_s)^(q_s - 1) mod Q`, congruent to 1 mod `q_s` and 0 mod the others.
    nu: Vec<BigUint>,
    /// `Q` when `Q <= 2^126`, so that sums of products of two inline values fit in i128.
    modulus_i128: Option<i128>,
}

impl PrimeBasis {
    /// Basis over the given primes; they are sorted and must be distinct primes.
    pub fn new(mut primes: Vec<u64>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::Arithmetic("a prime basis needs at least one prime".into()));
        }
        primes.sort_unstable();
        if let Some(w) = primes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Arithmetic(format!("prime {} listed twice", w[0])));
        }
        if let Some(&q) = primes.iter().find(|&&q| !is_prime(q)) {
            return Err(Error::Arithmetic(format!("{q} is not prime")));
        }
        let modulus: BigUint = primes.iter().map(|&q| BigUint::from(q)).product();
        let nu = primes
            .iter()
            .map(|&q| {
                let cofactor = &modulus / q;
                cofactor.modpow(&BigUint::from(q - 1), &modulus)
            })
            .collect();
        let modulus_i128 = if modulus.bits() <= 126 { modulus.to_i128() } else { None };
        Ok(PrimeBasis { modulus_int: BigInt::from(modulus.clone()), primes, modulus, nu, modulus_i128 })
    }

    /// Basis over the `r` smallest primes.
    pub fn first(r: usize) -> Result<Self> {
        Self::new(first_primes(r))
    }

    /// Number of primes `r`.
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn prime(&self, s: usize) -> u64 {
        self.primes[s]
    }

    /// `Q = q_1 ... q_r`.
    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn nu(&self) -> &[BigUint] {
        &self.nu
    }

    pub fn full_mask(&self) -> ModulusMask {
        ModulusMask::full(self.len())
    }

    pub fn empty_mask(&self) -> ModulusMask {
        ModulusMask::empty(self.len())
    }

    /// Index of prime `q` in the basis.
    pub fn field_of(&self, q: u64) -> Option<usize> {
        self.primes.binary_search(&q).ok()
    }

    // ---- representation ----

    fn wrap_i128(&self, v: i128) -> RingElem {
        let balanced = match self.modulus_i128 {
            Some(q) => {
                // keep v when -Q < 2v <= Q
                if v.checked_mul(2).is_some_and(|v2| -q < v2 && v2 <= q) {
                    v
                } else {
                    let c = v.rem_euclid(q);
                    if 2 * c <= q {
                        c
                    } else {
                        c - q
                    }
                }
            }
            // |v| < 2^126 < Q/2
            None => v,
        };
        if balanced.unsigned_abs() <= SMALL_BOUND as u128 {
            RingElem(Repr::Small(balanced as i64))
        } else if balanced >= 0 {
            RingElem(Repr::Big(Box::new(BigUint::from(balanced as u128))))
        } else {
            let c = &self.modulus - BigUint::from(balanced.unsigned_abs());
            RingElem(Repr::Big(Box::new(c)))
        }
    }

    fn wrap_canonical(&self, c: BigUint) -> RingElem {
        debug_assert!(c < self.modulus);
        if self.modulus_i128.is_some() {
            return self.wrap_i128(c.to_i128().expect("c < Q <= 2^126"));
        }
        let neg = &self.modulus - &c;
        let small = if c <= neg {
            c.to_i64().filter(|&v| v <= SMALL_BOUND)
        } else {
            // 2c > Q: the balanced form is -(Q - c)
            neg.to_i64().filter(|&v| v <= SMALL_BOUND).map(|v| -v)
        };
        match small {
            Some(v) => RingElem(Repr::Small(v)),
            None => RingElem(Repr::Big(Box::new(c))),
        }
    }

    /// Class of an arbitrary integer.
    pub fn elem(&self, v: &BigInt) -> RingElem {
        let c = v.mod_floor(&self.modulus_int);
        self.wrap_canonical(c.to_biguint().expect("mod_floor is non-negative"))
    }

    /// Class of a machine integer.
    pub fn elem_i64(&self, v: i64) -> RingElem {
        self.wrap_i128(i128::from(v))
    }

    /// Class of a non-negative integer given by its canonical value; fails if `>= Q`.
    pub fn elem_canonical(&self, c: &BigUint) -> Result<RingElem> {
        if c >= &self.modulus {
            return Err(Error::Arithmetic(format!("{c} is not below Q = {}", self.modulus)));
        }
        Ok(self.wrap_canonical(c.clone()))
    }

    /// Representative in `[0, Q)`.
    pub fn canonical(&self, x: &RingElem) -> BigUint {
        match &x.0 {
            Repr::Small(b) if *b >= 0 => BigUint::from(*b as u64),
            Repr::Small(b) => &self.modulus - BigUint::from(b.unsigned_abs()),
            Repr::Big(c) => (**c).clone(),
        }
    }

    fn to_bigint(&self, x: &RingElem) -> BigInt {
        match &x.0 {
            Repr::Small(b) => BigInt::from(*b),
            Repr::Big(c) => BigInt::from_biguint(Sign::Plus, (**c).clone()),
        }
    }

    // ---- ring operations ----

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (&a.0, &b.0) {
            (Repr::Small(x), Repr::Small(y)) => self.wrap_i128(i128::from(*x) + i128::from(*y)),
            _ => self.elem(&(self.to_bigint(a) + self.to_bigint(b))),
        }
    }

    /// `a - b`, i.e. `a + (Q - b)`.
    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        match &a.0 {
            Repr::Small(x) => self.wrap_i128(-i128::from(*x)),
            Repr::Big(c) => self.wrap_canonical(&self.modulus - &**c),
        }
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (&a.0, &b.0) {
            (Repr::Small(x), Repr::Small(y)) => self.wrap_i128(i128::from(*x) * i128::from(*y)),
            _ => self.elem(&(self.to_bigint(a) * self.to_bigint(b))),
        }
    }

    /// `t + alpha * s`.
    pub fn mul_add(&self, t: &RingElem, alpha: &RingElem, s: &RingElem) -> RingElem {
        match (&t.0, &alpha.0, &s.0) {
            (Repr::Small(t), Repr::Small(a), Repr::Small(s)) => {
                self.wrap_i128(i128::from(*t) + i128::from(*a) * i128::from(*s))
            }
            _ => self.elem(&(self.to_bigint(t) + self.to_bigint(alpha) * self.to_bigint(s))),
        }
    }

    // ---- CRT ----

    /// `psi(u_1, ..., u_r) = (u_1 nu_1 + ... + u_r nu_r) mod Q`.
    pub fn crt_combine(&self, residues: &[u64]) -> Result<RingElem> {
        if residues.len() != self.len() {
            return Err(Error::Arithmetic(format!("expected {} residues, got {}", self.len(), residues.len())));
        }
        let mut acc = BigUint::zero();
        for ((&u, &q), nu) in residues.iter().zip(&self.primes).zip(&self.nu) {
            if u >= q {
                return Err(Error::Arithmetic(format!("residue {u} out of range for prime {q}")));
            }
            acc += nu * u;
        }
        Ok(self.wrap_canonical(acc % &self.modulus))
    }

    /// `x mod q_s`.
    pub fn crt_project(&self, x: &RingElem, s: usize) -> u64 {
        let q = self.primes[s];
        match &x.0 {
            Repr::Small(b) => b.rem_euclid(q as i64) as u64,
            Repr::Big(c) => (&**c % q).to_u64().expect("residue below q"),
        }
    }

    /// All residues `(x mod q_1, ..., x mod q_r)`.
    pub fn residues(&self, x: &RingElem) -> Vec<u64> {
        (0..self.len()).map(|s| self.crt_project(x, s)).collect()
    }

    /// True when `Q_S` does not divide `x`, i.e. `x mod Q_S != 0`.
    pub fn is_nonzero_mod(&self, x: &RingElem, mask: &ModulusMask) -> bool {
        match &x.0 {
            Repr::Small(0) => false,
            Repr::Small(b) => {
                let b = b.unsigned_abs();
                // a prime larger than |b| cannot divide b
                mask.fields().any(|s| {
                    let q = self.primes[s];
                    q > b || b % q != 0
                })
            }
            Repr::Big(_) => mask.fields().any(|s| self.crt_project(x, s) != 0),
        }
    }

    /// The fields of `S` in which `x` is invertible: `Q_S / gcd(x, Q_S)`.
    pub fn unit_fields(&self, x: &RingElem, mask: &ModulusMask) -> ModulusMask {
        match &x.0 {
            Repr::Small(0) => self.empty_mask(),
            Repr::Small(1 | -1) => mask.clone(),
            Repr::Small(b) => {
                let b = b.unsigned_abs();
                let divides = mask.fields().filter(|&s| {
                    let q = self.primes[s];
                    q <= b && b % q == 0
                });
                mask.without(&ModulusMask::from_fields(self.len(), divides))
            }
            Repr::Big(_) => {
                ModulusMask::from_fields(self.len(), mask.fields().filter(|&s| self.crt_project(x, s) != 0))
            }
        }
    }

    /// `gcd(x, Q_S) = Q_R`, returned as the mask of `R`.
    pub fn gcd_mask(&self, x: &RingElem, mask: &ModulusMask) -> ModulusMask {
        mask.without(&self.unit_fields(x, mask))
    }

    /// Partial identity `L_S`: 1 modulo the primes of `S`, 0 modulo the rest.
    pub fn partial_identity(&self, mask: &ModulusMask) -> RingElem {
        if mask.len() == self.len() {
            return RingElem::ONE;
        }
        if mask.is_empty() {
            return RingElem::ZERO;
        }
        let sum: BigUint = mask.fields().map(|s| &self.nu[s]).sum();
        self.wrap_canonical(sum % &self.modulus)
    }

    /// Partial inverse of `x` with respect to `S`.
    ///
    /// Returns `(xbar, T)` where `T` is the set of fields of `S` in which `x`
    /// is a unit, `xbar mod q_t = (x mod q_t)^-1` for `t` in `T` and 0 elsewhere.
    pub fn partial_inverse(&self, x: &RingElem, mask: &ModulusMask) -> (RingElem, ModulusMask) {
        let units = self.unit_fields(x, mask);
        if units.is_empty() {
            return (RingElem::ZERO, units);
        }
        if x.is_unit_sign() {
            // (+-1)^-1 = +-1 in every field
            let xbar = self.mul(x, &self.partial_identity(&units));
            return (xbar, units);
        }
        let qt = units.value(self);
        let qt_int = BigInt::from(qt.clone());
        let reduced = BigInt::from(self.canonical(x) % &qt);
        let (g, v, _) = bezout(&reduced, &qt_int).expect("Q_T > 1");
        debug_assert!(g.is_one(), "x must be a unit modulo Q_T");
        let v = v.mod_floor(&qt_int);
        let identity = self.partial_identity(&units);
        let xbar = self.elem(&(v * self.to_bigint(&identity)));
        (xbar, units)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis23() -> PrimeBasis {
        PrimeBasis::new(vec![2, 3]).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn first_primes_small_cases() {
        assert_eq!(first_primes(1), vec![2]);
        assert_eq!(first_primes(5), vec![2, 3, 5, 7, 11]);
        assert!(first_primes(0).is_empty());
    }

    #[test]
    fn first_primes_matches_trial_division() {
        let sieve = first_primes(200);
        let mut trial = Vec::new();
        let mut n = 2u64;
        while trial.len() < 200 {
            if (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d)) {
                trial.push(n);
            }
            n += 1;
        }
        assert_eq!(sieve, trial);
        assert_eq!(*sieve.last().unwrap(), 1223);
    }

    #[test]
    fn nu_are_idempotents() {
        let b = basis23();
        assert_eq!(b.nu(), &[BigUint::from(3u32), BigUint::from(4u32)]);
        let b = PrimeBasis::first(6).unwrap();
        for (s, nu) in b.nu().iter().enumerate() {
            for (t, &q) in b.primes().iter().enumerate() {
                let expected = u64::from(s == t);
                assert_eq!((nu % q).to_u64().unwrap(), expected);
            }
        }
    }

    #[test]
    fn basis_rejects_bad_primes() {
        assert!(PrimeBasis::new(vec![]).is_err());
        assert!(PrimeBasis::new(vec![2, 4]).is_err());
        assert!(PrimeBasis::new(vec![3, 3]).is_err());
        assert!(PrimeBasis::new(vec![1]).is_err());
    }

    #[test]
    fn combine_examples() {
        let b = basis23();
        assert_eq!(b.canonical(&b.crt_combine(&[1, 1]).unwrap()), BigUint::from(1u32));
        assert_eq!(b.crt_combine(&[0, 0]).unwrap(), RingElem::ZERO);
        assert_eq!(b.canonical(&b.crt_combine(&[1, 2]).unwrap()), BigUint::from(5u32));
        assert!(b.crt_combine(&[2, 0]).is_err());
        assert!(b.crt_combine(&[1]).is_err());
    }

    #[test]
    fn project_examples() {
        let b = basis23();
        let five = b.elem_i64(5);
        assert_eq!(b.crt_project(&five, 1), 2);
        assert_eq!(b.crt_project(&RingElem::ZERO, 0), 0);
        assert_eq!(b.crt_project(&RingElem::ONE, 0), 1);
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout(&big(3), &big(6)).unwrap(), (big(3), big(1), big(0)));
        assert_eq!(bezout(&big(1), &big(97)).unwrap(), (big(1), big(1), big(0)));
        assert_eq!(bezout(&big(35), &big(6)).unwrap(), (big(1), big(-1), big(6)));
        assert!(bezout(&big(0), &big(0)).is_err());
        let (g, v, w) = bezout(&big(-35), &big(6)).unwrap();
        assert_eq!(g, big(1));
        assert_eq!(v * big(-35) + w * big(6), big(1));
    }

    #[test]
    fn partial_identity_examples() {
        let b = basis23();
        let s1 = ModulusMask::from_fields(2, [0]);
        assert_eq!(b.canonical(&b.partial_identity(&s1)), BigUint::from(3u32));
        assert_eq!(b.partial_identity(&b.full_mask()), RingElem::ONE);
        assert_eq!(b.partial_identity(&b.empty_mask()), RingElem::ZERO);
    }

    #[test]
    fn partial_inverse_examples() {
        let b = basis23();
        let full = b.full_mask();
        let (xbar, t) = b.partial_inverse(&b.elem_i64(5), &full);
        assert_eq!(b.canonical(&xbar), BigUint::from(5u32));
        assert_eq!(t, full);
        let (xbar, t) = b.partial_inverse(&b.elem_i64(3), &full);
        assert_eq!(b.canonical(&xbar), BigUint::from(3u32));
        assert_eq!(t, ModulusMask::from_fields(2, [0]));
        for mask in [b.empty_mask(), ModulusMask::from_fields(2, [1]), full] {
            let (xbar, t) = b.partial_inverse(&RingElem::ZERO, &mask);
            assert_eq!(xbar, RingElem::ZERO);
            assert!(t.is_empty());
        }
    }

    #[test]
    fn word_length_examples() {
        assert_eq!(word_length(&BigUint::one(), 64).unwrap(), 1);
        assert_eq!(word_length(&(BigUint::one() << 64), 64).unwrap(), 2);
        assert_eq!(word_length(&((BigUint::one() << 64) - 1u32), 64).unwrap(), 1);
        let q50 = PrimeBasis::first(50).unwrap();
        assert_eq!(word_length(q50.modulus(), 64).unwrap(), 5);
        assert_eq!(q50.modulus().bits(), 304);
        assert!(word_length(&BigUint::zero(), 64).is_err());
    }

    #[test]
    fn word_length_bound_dominates() {
        assert_eq!(word_length_bound(50, 64).unwrap(), 7);
        assert_eq!(word_length_bound(100, 64).unwrap(), 15);
        assert_eq!(word_length_bound(200, 64).unwrap(), 32);
        for r in [6, 10, 50, 100, 200] {
            let b = PrimeBasis::first(r).unwrap();
            assert!(word_length(b.modulus(), 64).unwrap() <= word_length_bound(r, 64).unwrap());
        }
        assert!(word_length_bound(5, 64).is_err());
    }

    #[test]
    fn mask_value_round_trip() {
        let b = PrimeBasis::first(4).unwrap();
        let m = ModulusMask::from_value(&b, &BigUint::from(35u32)).unwrap();
        assert_eq!(m.fields().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(m.value(&b), BigUint::from(35u32));
        assert!(ModulusMask::from_value(&b, &BigUint::from(4u32)).is_err());
        assert!(ModulusMask::from_value(&b, &BigUint::from(11u32)).is_err());
        assert_eq!(ModulusMask::from_value(&b, &BigUint::one()).unwrap(), b.empty_mask());
    }

    #[test]
    fn representation_is_canonical_across_the_word_boundary() {
        // Q > 2^64 so elements near Q/2 need the heap form
        let b = PrimeBasis::first(20).unwrap();
        let q = BigInt::from(b.modulus().clone());
        for v in [
            big(SMALL_BOUND),
            big(SMALL_BOUND) + 1,
            -big(SMALL_BOUND),
            -big(SMALL_BOUND) - 1,
            &q / 2,
            &q / 2 + 1,
            q.clone() - 1,
        ] {
            let x = b.elem(&v);
            let y = b.elem_canonical(&b.canonical(&x)).unwrap();
            assert_eq!(x, y, "value {v}");
            assert_eq!(BigInt::from(b.canonical(&x)), v.mod_floor(&q));
        }
        assert_eq!(b.elem(&(q - 1)), RingElem::MINUS_ONE);
    }

    #[test]
    fn small_and_big_paths_agree() {
        let b = PrimeBasis::first(30).unwrap();
        let q = BigInt::from(b.modulus().clone());
        let vals = [big(3), big(-7), big(SMALL_BOUND), &q / 3, &q - 5, big(1) << 100];
        for x in &vals {
            for y in &vals {
                for z in &vals {
                    let (ex, ey, ez) = (b.elem(x), b.elem(y), b.elem(z));
                    let got = b.mul_add(&ex, &ey, &ez);
                    assert_eq!(got, b.elem(&(x + y * z)));
                }
            }
        }
    }
}
