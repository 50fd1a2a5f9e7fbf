//! The coefficient ring ℛ = ℤ[A, A⁻¹, d⁻¹], d = −A² − A⁻², and its finite
//! quotients 𝔽_p[A]/(M) used by the congruence tests.
//!
//! A [`Scalar`] is a Laurent polynomial numerator over a power of d, kept in
//! the normal form where d does not divide the numerator (or the d-power is
//! zero). Arithmetic is exact; coefficients are arbitrary-precision.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Sparse Laurent polynomial in A with integer coefficients.
///
/// Invariant: no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    /// The constant 1.
    pub fn one() -> Self {
        Laurent::monomial(0, 1)
    }

    /// c·A^e.
    pub fn monomial(e: i64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, BigInt::from(c));
        }
        Laurent { terms }
    }

    /// d = −A² − A⁻².
    pub fn d() -> Self {
        Laurent::from_pairs([(2, -1), (-2, -1)])
    }

    /// Build from (exponent, coefficient) pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in pairs {
            let entry = terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent { terms }
    }

    /// True when there are no terms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate (exponent, coefficient) in ascending exponent order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when there are no terms (mirrors `len`).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of A^e (zero when absent).
    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The bar involution A ↦ A⁻¹.
    pub fn bar(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiply by A^e.
    pub fn shift(&self, e: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    /// Multiply by an integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Non-negative power.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Laurent::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact division by d = −A²−A⁻². Returns `None` when d does not divide.
    ///
    /// f/d = −(f·A²)/(A⁴+1); the divisibility test is synthetic division of
    /// the dense coefficient vector by x⁴+1 with a zero remainder required.
    pub fn div_exact_d(&self) -> Option<Laurent> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let shifted = self.shift(2);
        let lo = *shifted.terms.keys().next().expect("nonzero");
        let hi = *shifted.terms.keys().next_back().expect("nonzero");
        let deg = (hi - lo) as usize;
        if deg < 4 {
            return None;
        }
        let mut dense: Vec<BigInt> = vec![BigInt::zero(); deg + 1];
        for (e, c) in shifted.terms.iter() {
            dense[(e - lo) as usize] = c.clone();
        }
        let mut quot: Vec<BigInt> = vec![BigInt::zero(); deg - 3];
        for i in (4..=deg).rev() {
            if !dense[i].is_zero() {
                let c = core::mem::replace(&mut dense[i], BigInt::zero());
                dense[i - 4] -= &c;
                quot[i - 4] = c;
            }
        }
        if dense.iter().take(4).any(|c| !c.is_zero()) {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (i, c) in quot.into_iter().enumerate() {
            if !c.is_zero() {
                terms.insert(i as i64 + lo, -c);
            }
        }
        Some(Laurent { terms })
    }

    /// Render with an arbitrary variable name, canonical format: `c*V^e`
    /// terms with exponents descending, constant terms printed bare, joined
    /// by ` + ` (negative coefficients stay inside the term).
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (e, c) in self.terms.iter().rev() {
            if *e == 0 {
                parts.push(format!("{c}"));
            } else {
                parts.push(format!("{c}*{var}^{e}"));
            }
        }
        parts.join(" + ")
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (e, c) in rhs.terms.iter() {
            let entry = terms.entry(*e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent { terms }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                let entry = terms.entry(e1 + e2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent { terms }
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("A"))
    }
}

/// Element of ℛ = ℤ[A, A⁻¹, d⁻¹]: `num / d^dpow`.
///
/// Normal form: `num` is not divisible by d, or `dpow` is 0 (and zero has
/// `dpow` 0). Equality and hashing are therefore structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Laurent,
    dpow: u32,
}

impl Scalar {
    /// Normalize `num / d^dpow`.
    pub fn new(mut num: Laurent, mut dpow: u32) -> Self {
        if num.is_zero() {
            dpow = 0;
        }
        while dpow > 0 {
            match num.div_exact_d() {
                Some(q) => {
                    num = q;
                    dpow -= 1;
                }
                None => break,
            }
        }
        Scalar { num, dpow }
    }

    /// Zero.
    pub fn zero() -> Self {
        Scalar { num: Laurent::zero(), dpow: 0 }
    }

    /// One.
    pub fn one() -> Self {
        Scalar { num: Laurent::one(), dpow: 0 }
    }

    /// c·A^e.
    pub fn monomial(e: i64, c: i64) -> Self {
        Scalar { num: Laurent::monomial(e, c), dpow: 0 }
    }

    /// Scalar with numerator Σ c·A^e over denominator d^dpow.
    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I, dpow: u32) -> Self {
        Scalar::new(Laurent::from_pairs(pairs), dpow)
    }

    /// d = −A² − A⁻².
    pub fn d() -> Self {
        Scalar { num: Laurent::d(), dpow: 0 }
    }

    /// d² − 1, the value of a null-homotopic circle doubled by f₁.
    pub fn d2m1() -> Self {
        Scalar::new(&(&Laurent::d() * &Laurent::d()) - &Laurent::one(), 0)
    }

    /// d − d⁻¹ = (d²−1)/d, the contractible-loop factor.
    pub fn d_minus_dinv() -> Self {
        Scalar::new(&(&Laurent::d() * &Laurent::d()) - &Laurent::one(), 1)
    }

    /// d⁻¹.
    pub fn d_inv() -> Self {
        Scalar { num: Laurent::one(), dpow: 1 }
    }

    /// Numerator in normal form.
    pub fn num(&self) -> &Laurent {
        &self.num
    }

    /// Denominator exponent in normal form.
    pub fn dpow(&self) -> u32 {
        self.dpow
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Additive inverse.
    pub fn neg(&self) -> Self {
        Scalar { num: -&self.num, dpow: self.dpow }
    }

    /// The bar involution A ↦ A⁻¹ (fixes d, hence acts on numerators).
    pub fn bar(&self) -> Self {
        Scalar { num: self.num.bar(), dpow: self.dpow }
    }

    /// Non-negative power.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Scalar::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Integer power; negative exponents require a unit (±A^e·d^k).
    pub fn powi(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            return Ok(self.pow(n as u32));
        }
        let inv = self.invert()?;
        Ok(inv.pow((-n) as u32))
    }

    /// Invert a unit of ℛ: ±A^e times a signed power of d. Everything
    /// else errs.
    pub fn invert(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::NotInvertible);
        }
        // peel d factors until a monomial (or a non-unit) remains
        let mut core = self.num.clone();
        let mut peeled = 0u32;
        while core.len() > 1 {
            match core.div_exact_d() {
                Some(q) => {
                    core = q;
                    peeled += 1;
                }
                None => return Err(Error::NotInvertible),
            }
        }
        let (e, c) = core.iter().next().expect("one term");
        if !c.magnitude().is_one() {
            return Err(Error::NotInvertible);
        }
        // (c A^e d^m / d^k)^{-1} = c A^{-e} d^k / d^m
        let sign = if c.is_negative() { -1 } else { 1 };
        let mono = Laurent::monomial(-e, sign);
        let dk = Laurent::d().pow(self.dpow);
        Ok(Scalar::new(&mono * &dk, peeled))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let m = self.dpow.max(rhs.dpow);
        let a = &self.num * &Laurent::d().pow(m - self.dpow);
        let b = &rhs.num * &Laurent::d().pow(m - rhs.dpow);
        Scalar::new(&a + &b, m)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &rhs.neg()
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.num * &rhs.num, self.dpow + rhs.dpow)
    }
}

impl fmt::Display for Scalar {
    /// Canonical text format: numerator terms `c*A^e` descending, then
    /// ` / d^k` when the normalized denominator power k is positive.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::with_capacity(self.num.len());
        for (e, c) in self.num.iter().rev() {
            if *e == 0 {
                parts.push(format!("{c}"));
            } else {
                parts.push(format!("{c}*A^{e}"));
            }
        }
        f.write_str(&parts.join(" + "))?;
        if self.dpow > 0 {
            write!(f, " / d^{}", self.dpow)?;
        }
        Ok(())
    }
}

/// Which congruence ideal a quotient ring is taken by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealKind {
    /// (p, A^{2p} − 1): the rotational congruence.
    Rotational,
    /// (p, A^{2(p−1)}·(d^{p−1} − 1)): the Frobenius congruence, with the
    /// unit A-power clearing denominators of d^{p−1}.
    Frobenius,
}

/// The pair (p, kind) naming an ideal of ℛ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CongruenceIdeal {
    /// Prime characteristic.
    pub p: u32,
    /// Which modulus polynomial.
    pub kind: IdealKind,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// 𝔽_p[A]/(M(A)) with d inverted. Residues are dense coefficient vectors of
/// length deg M below the monic modulus. The rotational quotient at p = 2 is
/// the zero ring (d becomes a zero divisor), flagged by `is_zero_ring`.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    p: u32,
    kind: IdealKind,
    modulus: Vec<u32>,
    deg: usize,
    zero_ring: bool,
    dinv: Vec<u32>,
}

impl QuotientRing {
    /// Build the quotient for a prime p ≥ 2.
    pub fn new(ideal: CongruenceIdeal) -> Result<Self> {
        let CongruenceIdeal { p, kind } = ideal;
        if !is_prime(p) {
            return Err(Error::Malformed(format!("p = {p} is not prime")));
        }
        let modulus_z = match kind {
            IdealKind::Rotational => {
                Laurent::from_pairs([(2 * p as i64, 1), (0, -1)])
            }
            IdealKind::Frobenius => {
                let dd = &Laurent::d().pow(p - 1) - &Laurent::one();
                dd.shift(2 * (p as i64 - 1))
            }
        };
        let lo = modulus_z.iter().next().map(|(e, _)| *e).unwrap_or(0);
        if lo < 0 {
            return Err(Error::Internal("modulus has negative exponents"));
        }
        let deg = modulus_z.iter().next_back().map(|(e, _)| *e).unwrap_or(0) as usize;
        let mut modulus = vec![0u32; deg + 1];
        for (e, c) in modulus_z.iter() {
            modulus[*e as usize] = modp(c, p);
        }
        if modulus[deg] == 0 {
            return Err(Error::Internal("modulus leading term vanished"));
        }
        let lead_inv = inv_modp(modulus[deg], p);
        for c in modulus.iter_mut() {
            *c = (*c as u64 * lead_inv as u64 % p as u64) as u32;
        }
        let zero_ring = kind == IdealKind::Rotational && p == 2;
        let mut ring = QuotientRing { p, kind, modulus, deg, zero_ring, dinv: Vec::new() };
        if !zero_ring {
            // d = −A⁻²(A⁴+1); invert the unit-free part with extended Euclid
            // and restore the A² unit.
            let m1 = p - 1;
            let t = ring.reduce_dense(&[m1, 0, 0, 0, m1]);
            let ti = ring.inverse(&t)?;
            ring.dinv = ring.mul(&ring.apow(2), &ti);
        }
        Ok(ring)
    }

    /// The characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// The ideal kind.
    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    /// Degree of the monic modulus (= residue vector length).
    pub fn deg(&self) -> usize {
        self.deg
    }

    /// True for the collapsed rotational quotient at p = 2, where every
    /// congruence holds vacuously.
    pub fn is_zero_ring(&self) -> bool {
        self.zero_ring
    }

    /// The additive identity.
    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.deg]
    }

    /// The multiplicative identity (zero in the zero ring).
    pub fn one(&self) -> Vec<u32> {
        let mut v = self.zero();
        if !self.zero_ring && self.deg > 0 {
            v[0] = 1;
        }
        v
    }

    /// True when all coefficients vanish.
    pub fn is_zero_elem(&self, a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// Sum.
    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    /// Difference.
    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y % self.p) % self.p).collect()
    }

    /// Scalar multiple.
    pub fn smul(&self, k: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| (k as u64 * x as u64 % self.p as u64) as u32).collect()
    }

    /// Product with reduction below the modulus.
    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        if self.deg == 0 {
            return Vec::new();
        }
        let mut out = vec![0u64; 2 * self.deg - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    out[i + j] = (out[i + j] + x as u64 * y as u64) % self.p as u64;
                }
            }
        }
        let dense: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        self.reduce_dense(&dense)
    }

    /// Non-negative power.
    pub fn pow(&self, a: &[u32], n: u32) -> Vec<u32> {
        let mut out = self.one();
        for _ in 0..n {
            out = self.mul(&out, a);
        }
        out
    }

    /// Reduce a dense coefficient vector (any length) below the modulus.
    pub fn reduce_dense(&self, coeffs: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut work: Vec<u64> = coeffs.iter().map(|&c| c as u64 % p).collect();
        if work.len() < self.deg {
            work.resize(self.deg, 0);
        }
        for i in (self.deg..work.len()).rev() {
            let c = work[i];
            if c != 0 {
                work[i] = 0;
                for (j, &m) in self.modulus.iter().take(self.deg).enumerate() {
                    let idx = i - self.deg + j;
                    work[idx] = (work[idx] + p * p - c * m as u64 % p) % p;
                }
            }
        }
        work.truncate(self.deg);
        work.into_iter().map(|c| c as u32).collect()
    }

    /// A^e as a residue (e may be negative; the zero ring yields zero).
    pub fn apow(&self, e: i64) -> Vec<u32> {
        if self.zero_ring || self.deg == 0 {
            return self.zero();
        }
        let mut base = self.zero();
        if self.deg > 1 {
            base[1] = 1;
        } else {
            return self.zero();
        }
        if e >= 0 {
            let mut out = self.one();
            for _ in 0..e {
                out = self.mul(&out, &base);
            }
            out
        } else {
            let ai = self.inverse(&base).expect("A is a unit mod M");
            let mut out = self.one();
            for _ in 0..(-e) {
                out = self.mul(&out, &ai);
            }
            out
        }
    }

    /// Multiplicative inverse via extended Euclid in 𝔽_p[x].
    pub fn inverse(&self, a: &[u32]) -> Result<Vec<u32>> {
        let p = self.p;
        let pdeg = |u: &[u64]| u.iter().rposition(|&c| c % p as u64 != 0);
        let mut r0: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        r0.push(0);
        let mut r1: Vec<u64> = a.iter().map(|&c| c as u64).collect();
        r1.resize(self.modulus.len() + 1, 0);
        let n = r0.len();
        let mut s0 = vec![0u64; n];
        let mut s1 = vec![0u64; n];
        s1[0] = 1;
        while pdeg(&r1).map(|d| d > 0).unwrap_or(false) {
            let dv = pdeg(&r1).expect("nonzero");
            let inv_lead = inv_modp(r1[dv] as u32 % p, p) as u64;
            let mut q = vec![0u64; n];
            let mut u = r0.clone();
            while let Some(du) = pdeg(&u) {
                if du < dv {
                    break;
                }
                let c = u[du] % p as u64 * inv_lead % p as u64;
                q[du - dv] = c;
                for i in 0..=dv {
                    let idx = du - dv + i;
                    u[idx] = (u[idx] + (p as u64) * (p as u64) - c * r1[i] % p as u64)
                        % p as u64;
                }
            }
            // (r0, r1) <- (r1, r0 - q r1); (s0, s1) <- (s1, s0 - q s1)
            let mut qs = vec![0u64; n];
            for (i, &qc) in q.iter().enumerate() {
                if qc == 0 {
                    continue;
                }
                for (j, &sc) in s1.iter().enumerate() {
                    if sc != 0 && i + j < n {
                        qs[i + j] = (qs[i + j] + qc * sc) % p as u64;
                    }
                }
            }
            let new_s: Vec<u64> = s0
                .iter()
                .zip(&qs)
                .map(|(&x, &y)| (x + (p as u64) * (p as u64) - y) % p as u64)
                .collect();
            r0 = core::mem::replace(&mut r1, u);
            s0 = core::mem::replace(&mut s1, new_s);
        }
        match pdeg(&r1) {
            None => Err(Error::NotInvertible),
            Some(0) => {
                let c = inv_modp(r1[0] as u32 % p, p) as u64;
                let scaled: Vec<u32> =
                    s1.iter().map(|&x| (x * c % p as u64) as u32).collect();
                Ok(self.reduce_dense(&scaled))
            }
            Some(_) => Err(Error::Internal("euclid loop left high remainder")),
        }
    }

    /// d⁻¹ as a residue.
    pub fn d_inverse(&self) -> Vec<u32> {
        if self.zero_ring {
            self.zero()
        } else {
            self.dinv.clone()
        }
    }

    /// Image of a skein scalar: numerator termwise, then d⁻¹ per
    /// denominator power.
    pub fn reduce_scalar(&self, s: &Scalar) -> Vec<u32> {
        if self.zero_ring {
            return self.zero();
        }
        let mut out = self.zero();
        for (e, c) in s.num().iter() {
            let t = self.smul(modp(c, self.p), &self.apow(*e));
            out = self.add(&out, &t);
        }
        for _ in 0..s.dpow() {
            out = self.mul(&out, &self.dinv);
        }
        out
    }

    /// The modulus, rendered for the `(mod p, M)` display suffix.
    pub fn modulus_string(&self) -> String {
        match self.kind {
            IdealKind::Rotational => format!("A^{}-1", 2 * self.p),
            IdealKind::Frobenius => {
                format!("A^{}*(d^{}-1)", 2 * (self.p - 1), self.p - 1)
            }
        }
    }
}

fn modp(c: &BigInt, p: u32) -> u32 {
    use num_traits::ToPrimitive;
    let m = c % p;
    let m = if m.is_negative() { m + p } else { m };
    m.to_u32().expect("reduced below p")
}

fn inv_modp(a: u32, p: u32) -> u32 {
    // Fermat: p is prime and a != 0 mod p.
    let mut out = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            out = out * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    out as u32
}

/// A residue of ℛ in 𝔽_p[A]/(M): dense coefficients plus display context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    /// Characteristic.
    pub p: u32,
    /// Ideal kind.
    pub kind: IdealKind,
    /// Coefficient of A^i at index i, length deg M, all below p.
    pub coeffs: Vec<u32>,
}

impl Residue {
    /// True when the residue is 0 (always true in the zero ring).
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Residue {
    /// `2*A^8 + 3*A^6 + 2*A^4 + 3 (mod 5, A^10-1)`: descending exponents,
    /// unit coefficients and the `*` dropped for plain powers, constant bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = QuotientRing::new(CongruenceIdeal { p: self.p, kind: self.kind })
            .map_err(|_| fmt::Error)?;
        let mut parts = Vec::new();
        for e in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[e];
            if c == 0 {
                continue;
            }
            if e == 0 {
                parts.push(format!("{c}"));
            } else if c == 1 {
                parts.push(format!("A^{e}"));
            } else {
                parts.push(format!("{c}*A^{e}"));
            }
        }
        let body = if parts.is_empty() { "0".to_owned() } else { parts.join(" + ") };
        write!(f, "{} (mod {}, {})", body, self.p, ring.modulus_string())
    }
}

/// Reduce a scalar into 𝔽_p[A]/(M) with d inverted.
pub fn reduce_mod(s: &Scalar, ideal: CongruenceIdeal) -> Result<Residue> {
    let ring = QuotientRing::new(ideal)?;
    Ok(Residue { p: ideal.p, kind: ideal.kind, coeffs: ring.reduce_scalar(s) })
}

/// Solve g^p = r in 𝔽_p[A]/(M). The Frobenius g ↦ g^p is 𝔽_p-linear with
/// matrix columns A^{ip}; Gaussian elimination decides membership in its
/// image and returns one preimage.
pub fn pth_power_solve(r: &Residue) -> Result<Option<Residue>> {
    let ideal = CongruenceIdeal { p: r.p, kind: r.kind };
    let ring = QuotientRing::new(ideal)?;
    if ring.is_zero_ring() {
        return Ok(Some(Residue { p: r.p, kind: r.kind, coeffs: ring.zero() }));
    }
    let deg = ring.deg();
    if r.coeffs.len() != deg {
        return Err(Error::Malformed("residue length mismatch".to_owned()));
    }
    let p = r.p as u64;
    let cols: Vec<Vec<u32>> = (0..deg).map(|i| ring.apow((i * r.p as usize) as i64)).collect();
    let mut m: Vec<Vec<u64>> =
        (0..deg).map(|i| (0..deg).map(|j| cols[j][i] as u64).collect()).collect();
    let mut v: Vec<u64> = r.coeffs.iter().map(|&c| c as u64).collect();
    let mut row = 0usize;
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; deg];
    for col in 0..deg {
        let sel = (row..deg).find(|&rr| m[rr][col] % p != 0);
        let Some(sel) = sel else { continue };
        m.swap(row, sel);
        v.swap(row, sel);
        let inv = inv_modp((m[row][col] % p) as u32, r.p) as u64;
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        v[row] = v[row] * inv % p;
        for rr in 0..deg {
            if rr != row && m[rr][col] % p != 0 {
                let c = m[rr][col] % p;
                let pivot_row = m[row].clone();
                for (x, y) in m[rr].iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - c * y % p) % p;
                }
                v[rr] = (v[rr] + p * p - c * v[row] % p) % p;
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    for rr in row..deg {
        if v[rr] % p != 0 {
            return Ok(None);
        }
    }
    let mut g = vec![0u32; deg];
    for (col, piv) in pivot_of_col.iter().enumerate() {
        if let Some(rr) = piv {
            g[col] = (v[*rr] % p) as u32;
        }
    }
    Ok(Some(Residue { p: r.p, kind: r.kind, coeffs: g }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn a(e: i64) -> Scalar {
        Scalar::monomial(e, 1)
    }

    #[test]
    fn d_expansion_and_square() {
        // d = -A^2 - A^-2, d^2 = A^4 + 2 + A^-4
        let d = Scalar::d();
        assert_eq!(d, &a(2).neg() - &a(-2));
        let d2 = &d * &d;
        assert_eq!(d2, &(&a(4) + &Scalar::monomial(0, 2)) + &a(-4));
    }

    #[test]
    fn bar_fixes_d_and_is_involutive() {
        let d = Scalar::d();
        assert_eq!(d.bar(), d);
        let s = Scalar::new(Laurent::from_pairs([(6, -1), (-2, 3)]), 2);
        assert_eq!(s.bar().bar(), s);
        // bar is a ring homomorphism
        let t = Scalar::new(Laurent::from_pairs([(3, 2), (0, 1)]), 1);
        assert_eq!((&s * &t).bar(), &s.bar() * &t.bar());
        assert_eq!((&s + &t).bar(), &s.bar() + &t.bar());
    }

    #[test]
    fn normalization_cancels_d() {
        // (d * X) / d == X for X = A^2 + 1
        let x = Laurent::from_pairs([(2, 1), (0, 1)]);
        let dx = &x * &Laurent::d();
        let s = Scalar::new(dx, 1);
        assert_eq!(s, Scalar::new(x, 0));
        // s * d / d == s for a non-divisible numerator
        let s = Scalar::new(Laurent::from_pairs([(1, 1), (0, 5)]), 3);
        let back = &(&s * &Scalar::d()) * &Scalar::d_inv();
        assert_eq!(back, s);
        assert_eq!(s.dpow(), 3);
    }

    #[test]
    fn div_exact_d_detects_divisibility() {
        let f = &Laurent::d().pow(3) * &Laurent::from_pairs([(5, 7), (-3, 1)]);
        let q = f.div_exact_d().expect("divisible");
        assert_eq!(&q * &Laurent::d(), f);
        assert!(Laurent::one().div_exact_d().is_none());
        assert!(Laurent::from_pairs([(2, 1), (0, 1)]).div_exact_d().is_none());
        assert_eq!(Laurent::zero().div_exact_d(), Some(Laurent::zero()));
    }

    #[test]
    fn units_invert_and_nonunits_err() {
        let u = Scalar::new(Laurent::monomial(6, -1), 2);
        let ui = u.invert().expect("unit");
        assert_eq!(&u * &ui, Scalar::one());
        assert_eq!(u.powi(-2).unwrap(), ui.pow(2));
        assert_eq!(Scalar::d().invert().unwrap(), Scalar::d_inv());
        assert!(Scalar::d2m1().invert().is_err());
        assert!(Scalar::d2m1().powi(-1).is_err());
    }

    #[test]
    fn ring_axioms_on_seeded_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let rand_scalar = |rng: &mut ChaCha8Rng| {
            let nterms = 1 + (rng.next_u32() % 4) as i64;
            let pairs: Vec<(i64, i64)> = (0..nterms)
                .map(|_| {
                    let e = (rng.next_u32() % 13) as i64 - 6;
                    let c = (rng.next_u32() % 9) as i64 - 4;
                    (e, c)
                })
                .collect();
            Scalar::new(Laurent::from_pairs(pairs), rng.next_u32() % 3)
        };
        for _ in 0..60 {
            let x = rand_scalar(&mut rng);
            let y = rand_scalar(&mut rng);
            let z = rand_scalar(&mut rng);
            assert_eq!(&x + &y, &y + &x);
            assert_eq!(&x * &y, &y * &x);
            assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            assert_eq!(&x + &Scalar::zero(), x);
            assert_eq!(&x * &Scalar::one(), x);
            assert_eq!(&x - &x, Scalar::zero());
            // normalization idempotence: re-normalizing the normal form is id
            assert_eq!(Scalar::new(x.num().clone(), x.dpow()), x);
        }
    }

    #[test]
    fn canonical_text_format() {
        let s = Scalar::new(Laurent::from_pairs([(6, -1), (-2, 3)]), 2);
        assert_eq!(format!("{s}"), "-1*A^6 + 3*A^-2 / d^2");
        let t = Scalar::new(Laurent::from_pairs([(4, 2), (0, 3)]), 0);
        assert_eq!(format!("{t}"), "2*A^4 + 3");
        assert_eq!(format!("{}", Scalar::zero()), "0");
        assert_eq!(Laurent::from_pairs([(8, 1), (0, 4)]).render("x"), "1*x^8 + 4");
    }

    #[test]
    fn quotient_construction_and_zero_ring() {
        for p in [2u32, 3, 5, 7] {
            for kind in [IdealKind::Rotational, IdealKind::Frobenius] {
                let ring = QuotientRing::new(CongruenceIdeal { p, kind }).unwrap();
                assert_eq!(ring.is_zero_ring(), p == 2 && kind == IdealKind::Rotational);
                if !ring.is_zero_ring() {
                    let d = ring.reduce_scalar(&Scalar::d());
                    assert_eq!(ring.mul(&d, &ring.d_inverse()), ring.one());
                    let one = ring.reduce_scalar(&Scalar::one());
                    assert_eq!(one, ring.one());
                }
            }
        }
        assert!(QuotientRing::new(CongruenceIdeal { p: 6, kind: IdealKind::Rotational })
            .is_err());
    }

    #[test]
    fn reduce_mod_well_defined_on_representatives() {
        let ideal = CongruenceIdeal { p: 5, kind: IdealKind::Rotational };
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        for _ in 0..25 {
            let e = (rng.next_u32() % 9) as i64 - 4;
            let c = (rng.next_u32() % 7) as i64 - 3;
            let s = Scalar::new(Laurent::from_pairs([(e, c), (0, 2)]), rng.next_u32() % 2);
            // s and s*d/d are the same element; reductions must agree
            let t = &(&s * &Scalar::d()) * &Scalar::d_inv();
            assert_eq!(reduce_mod(&s, ideal).unwrap(), reduce_mod(&t, ideal).unwrap());
        }
    }

    #[test]
    fn rotational_residue_display_matches_report_format() {
        let ring = QuotientRing::new(CongruenceIdeal { p: 5, kind: IdealKind::Rotational })
            .unwrap();
        let coeffs = ring.reduce_dense(&[3, 0, 0, 0, 2, 0, 3, 0, 2, 0]);
        let r = Residue { p: 5, kind: IdealKind::Rotational, coeffs };
        assert_eq!(format!("{r}"), "2*A^8 + 3*A^6 + 2*A^4 + 3 (mod 5, A^10-1)");
    }

    #[test]
    fn pth_power_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
        let mut count = 0;
        for p in [2u32, 3, 5, 7] {
            let ideal = CongruenceIdeal { p, kind: IdealKind::Frobenius };
            let ring = QuotientRing::new(ideal).unwrap();
            for _ in 0..25 {
                let g: Vec<u32> =
                    (0..ring.deg()).map(|_| rng.next_u32() % p).collect();
                let gp = ring.pow(&g, p);
                let r = Residue { p, kind: IdealKind::Frobenius, coeffs: gp.clone() };
                let h = pth_power_solve(&r).unwrap().expect("in the image");
                assert_eq!(ring.pow(&h.coeffs, p), gp);
                count += 1;
            }
        }
        assert_eq!(count, 100);
    }

    #[test]
    fn pth_power_detects_non_images() {
        let ideal = CongruenceIdeal { p: 5, kind: IdealKind::Frobenius };
        let ring = QuotientRing::new(ideal).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let found = (0..200).any(|_| {
            let g: Vec<u32> = (0..ring.deg()).map(|_| rng.next_u32() % 5).collect();
            let r = Residue { p: 5, kind: IdealKind::Frobenius, coeffs: g };
            matches!(pth_power_solve(&r), Ok(None))
        });
        assert!(found, "the Frobenius map is not surjective here");
    }
}
