//! Finite field towers `F_q ⊂ F_{q²} ⊂ F_{q⁴}` with a compatible generator chain.
//!
//! The whole field `F_{q⁴}` is realized as `F_p[X]/(f)` for a deterministic primitive
//! polynomial `f` of degree `4n`, and `κ` is the residue of `X`. Every nonzero element
//! is stored as a discrete logarithm relative to `κ`; addition goes through a Zech
//! logarithm table. The subgroup generators are fixed by
//!
//! ```text
//!   ζ = κ^(q²−1)   (order q²+1)        θ = κ^(q²+1)   (order q²−1)
//!   η = θ^(q−1)    (order q+1)         γ = θ^(q+1)    (order q−1)
//! ```
//!
//! so `γ` generates `F_q^×`, `θ` generates `F_{q²}^×`, `η` the norm-one subgroup of
//! `F_{q²}` over `F_q`, and `ζ` the norm-one subgroup of `F_{q⁴}` over `F_{q²}`.
//! All tables are precomputed at construction; the supported range is `q ≤ 13`.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// Sentinel discrete log for the zero element.
const ZERO_LOG: i64 = -1;

/// Element of the tower, stored as a `κ`-discrete-log (`Elt(-1)` is zero).
///
/// `Elt` is deliberately field-agnostic: membership in a subfield is a property
/// (`FieldDescriptor::subfield_of`), not part of the value. The tagged
/// [`FieldElement`] wrapper enforces subfield discipline where it matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt(pub i64);

impl Elt {
    pub const ZERO: Elt = Elt(ZERO_LOG);

    pub fn is_zero(self) -> bool {
        self.0 == ZERO_LOG
    }
}

/// Which field of the tower a [`FieldElement`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Fq,
    Fq2,
    Fq4,
}

/// An element tagged with the tower field it is considered to belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldElement {
    pub tag: FieldTag,
    pub elt: Elt,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field too large: q = {0} exceeds the supported range (q ≤ 13)")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("multiplicative character evaluated at zero")]
    CharacterAtZero,
    #[error("element is not in the {expected:?} subfield")]
    WrongSubfield { expected: FieldTag },
    #[error("operands live in different fields; embed first")]
    TagMismatch,
}

/// The canonical field tower for one `q = p^n`.
#[derive(Debug)]
pub struct FieldDescriptor {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub q2: u64,
    pub q4: u64,
    /// Monic primitive polynomial defining `F_{q⁴} = F_p[X]/(f)`, coefficients low→high.
    pub modulus: Vec<u64>,
    /// `exp[e]` = packed polynomial representation of `κ^e`.
    exp: Vec<u32>,
    /// packed polynomial → discrete log (`ZERO_LOG` in the unused zero slot).
    log: Vec<i64>,
    /// `zech[e]` = `log(1 + κ^e)`, `ZERO_LOG` when `1 + κ^e = 0`.
    zech: Vec<i64>,
}

impl FieldDescriptor {
    /// Builds the tower for `q = p^n`. Rejects `p = 2`, composite `p`, and `q > 13`.
    pub fn new(p: u64, n: u32) -> Result<FieldDescriptor, FieldError> {
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let q = p.pow(n);
        if q > 13 {
            return Err(FieldError::TooLarge(q));
        }
        let deg = (4 * n) as usize;
        let modulus = least_primitive_polynomial(p, deg);
        let q4 = q.pow(4);
        let order = (q4 - 1) as usize;

        // exp/log tables by iterated multiplication of the residue of X.
        let mut exp = vec![0u32; order];
        let mut log = vec![ZERO_LOG; q4 as usize];
        let mut cur = vec![0u64; deg];
        cur[0] = 1;
        for (e, slot) in exp.iter_mut().enumerate() {
            let packed = pack(&cur, p);
            *slot = packed;
            log[packed as usize] = e as i64;
            cur = mul_by_x_mod(&cur, &modulus, p);
        }
        debug_assert_eq!(pack(&cur, p), 1, "κ must have order q⁴−1");

        // Zech logarithms: zech[e] = log(1 + κ^e).
        let mut zech = vec![ZERO_LOG; order];
        for (e, slot) in zech.iter_mut().enumerate() {
            let mut poly = unpack(exp[e], p, deg);
            poly[0] = (poly[0] + 1) % p;
            let packed = pack(&poly, p);
            *slot = if packed == 0 { ZERO_LOG } else { log[packed as usize] };
        }

        Ok(FieldDescriptor { p, n, q, q2: q * q, q4, modulus, exp, log, zech })
    }

    /// Multiplicative order of the ambient field.
    pub fn order(&self) -> i64 {
        (self.q4 - 1) as i64
    }

    // ----- generator chain -------------------------------------------------

    pub fn kappa(&self) -> Elt {
        Elt(1)
    }

    /// `ζ = κ^(q²−1)`, the norm-one generator of `F_{q⁴}` over `F_{q²}`.
    pub fn zeta(&self) -> Elt {
        Elt((self.q2 - 1) as i64)
    }

    /// `θ = κ^(q²+1)`, a generator of `F_{q²}^×`.
    pub fn theta(&self) -> Elt {
        Elt((self.q2 + 1) as i64)
    }

    /// `η = θ^(q−1)`, the norm-one generator of `F_{q²}` over `F_q`.
    pub fn eta(&self) -> Elt {
        Elt(((self.q2 + 1) * (self.q - 1)) as i64)
    }

    /// `γ = θ^(q+1)`, a generator of `F_q^×`.
    pub fn gamma(&self) -> Elt {
        Elt(((self.q2 + 1) * (self.q + 1)) as i64)
    }

    pub fn one(&self) -> Elt {
        Elt(0)
    }

    /// `−1 = κ^((q⁴−1)/2)`.
    pub fn minus_one(&self) -> Elt {
        Elt(self.order() / 2)
    }

    /// `γ^k` for any integer `k`.
    pub fn gamma_pow(&self, k: i64) -> Elt {
        self.pow(self.gamma(), k)
    }

    /// `θ^k` for any integer `k`.
    pub fn theta_pow(&self, k: i64) -> Elt {
        self.pow(self.theta(), k)
    }

    /// `η^k` for any integer `k`.
    pub fn eta_pow(&self, k: i64) -> Elt {
        self.pow(self.eta(), k)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> Elt {
        self.pow(self.zeta(), k)
    }

    // ----- arithmetic ------------------------------------------------------

    fn reduce(&self, e: i64) -> i64 {
        e.rem_euclid(self.order())
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.is_zero() || b.is_zero() {
            return Elt::ZERO;
        }
        Elt(self.reduce(a.0 + b.0))
    }

    pub fn inv(&self, a: Elt) -> Result<Elt, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Elt(self.reduce(-a.0)))
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        // a + b = κ^{a}(1 + κ^{b−a})
        let z = self.zech[self.reduce(b.0 - a.0) as usize];
        if z == ZERO_LOG {
            Elt::ZERO
        } else {
            Elt(self.reduce(a.0 + z))
        }
    }

    pub fn neg(&self, a: Elt) -> Elt {
        self.mul(a, self.minus_one())
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elt, k: i64) -> Elt {
        if a.is_zero() {
            assert!(k > 0, "0^k only defined for k > 0");
            return Elt::ZERO;
        }
        Elt(self.reduce(a.0 * (k.rem_euclid(self.order()))))
    }

    /// The Frobenius `x ↦ x^q` of the tower over `F_q`.
    pub fn frobenius(&self, a: Elt) -> Elt {
        self.pow(a, self.q as i64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn elt_order(&self, a: Elt) -> i64 {
        assert!(!a.is_zero());
        let m = self.order();
        if a.0 == 0 { 1 } else { m / gcd(m, a.0) }
    }

    // ----- subfield structure ----------------------------------------------

    /// Does `a` lie in the subfield tagged `tag`?
    pub fn subfield_of(&self, a: Elt, tag: FieldTag) -> bool {
        if a.is_zero() {
            return true;
        }
        let d = match tag {
            FieldTag::Fq => (self.q2 + 1) * (self.q + 1),
            FieldTag::Fq2 => self.q2 + 1,
            FieldTag::Fq4 => 1,
        } as i64;
        a.0 % d == 0
    }

    /// Discrete log of a nonzero `F_q` element relative to `γ`, in `0..q−1`.
    pub fn dlog_gamma(&self, a: Elt) -> i64 {
        assert!(self.subfield_of(a, FieldTag::Fq) && !a.is_zero());
        let d = ((self.q2 + 1) * (self.q + 1)) as i64;
        a.0 / d
    }

    /// Discrete log of a nonzero `F_{q²}` element relative to `θ`, in `0..q²−1`.
    pub fn dlog_theta(&self, a: Elt) -> i64 {
        assert!(self.subfield_of(a, FieldTag::Fq2) && !a.is_zero());
        a.0 / (self.q2 + 1) as i64
    }

    /// Packed polynomial representation (base-`p` digits) of an element.
    pub fn packed(&self, a: Elt) -> u32 {
        if a.is_zero() { 0 } else { self.exp[a.0 as usize] }
    }

    /// Element from a packed polynomial representation.
    pub fn from_packed(&self, packed: u32) -> Elt {
        if packed == 0 { Elt::ZERO } else { Elt(self.log[packed as usize]) }
    }

    /// The element of `F_p ⊂ F_{q⁴}` representing the residue `c`.
    pub fn from_residue(&self, c: u64) -> Elt {
        self.from_packed((c % self.p) as u32)
    }

    /// Residue of an `F_p` element (constant polynomial).
    pub fn residue(&self, a: Elt) -> u64 {
        let packed = self.packed(a);
        assert!(packed < self.p as u32, "element is not in the prime field");
        packed as u64
    }

    /// Trace from `F_q` down to `F_p`, returned as a residue in `0..p`.
    pub fn trace_fq_to_fp(&self, a: Elt) -> u64 {
        assert!(self.subfield_of(a, FieldTag::Fq));
        let mut acc = Elt::ZERO;
        let mut x = a;
        for _ in 0..self.n {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as i64);
        }
        if acc.is_zero() { 0 } else { self.residue(acc) }
    }

    /// `γ^{k+1/2}` read as `θ^{(q+1)(2k+1)/2}`, the canonical square root of
    /// `γ^{2k+1}` inside `F_{q²}`. Its Frobenius conjugate is its negative.
    pub fn gamma_half_power(&self, k: i64) -> Elt {
        let e = (self.q + 1) as i64 * (2 * k + 1);
        debug_assert_eq!(e % 2, 0);
        self.theta_pow((e / 2).rem_euclid((self.q2 - 1) as i64))
    }

    // ----- tagged operations (spec-facing) ----------------------------------

    pub fn element(&self, tag: FieldTag, elt: Elt) -> Result<FieldElement, FieldError> {
        if !self.subfield_of(elt, tag) {
            return Err(FieldError::WrongSubfield { expected: tag });
        }
        Ok(FieldElement { tag, elt })
    }

    /// Embeds a tagged element into a larger field of the tower.
    pub fn embed(&self, x: FieldElement, into: FieldTag) -> Result<FieldElement, FieldError> {
        let rank = |t: FieldTag| match t {
            FieldTag::Fq => 0,
            FieldTag::Fq2 => 1,
            FieldTag::Fq4 => 2,
        };
        if rank(into) < rank(x.tag) {
            return Err(FieldError::WrongSubfield { expected: into });
        }
        Ok(FieldElement { tag: into, elt: x.elt })
    }

    pub fn fe_add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        if x.tag != y.tag {
            return Err(FieldError::TagMismatch);
        }
        Ok(FieldElement { tag: x.tag, elt: self.add(x.elt, y.elt) })
    }

    pub fn fe_mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        if x.tag != y.tag {
            return Err(FieldError::TagMismatch);
        }
        Ok(FieldElement { tag: x.tag, elt: self.mul(x.elt, y.elt) })
    }

    pub fn fe_neg(&self, x: FieldElement) -> FieldElement {
        FieldElement { tag: x.tag, elt: self.neg(x.elt) }
    }

    pub fn fe_inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(FieldElement { tag: x.tag, elt: self.inv(x.elt)? })
    }

    // ----- index sets -------------------------------------------------------

    /// `T₁ = {1, …, (q−3)/2}`.
    pub fn t1(&self) -> Vec<i64> {
        (1..=((self.q as i64 - 3) / 2)).collect()
    }

    /// `T₂ = {1, …, (q−1)/2}`.
    pub fn t2(&self) -> Vec<i64> {
        (1..=((self.q as i64 - 1) / 2)).collect()
    }

    /// `T₃ = {1, …, q−1}`.
    pub fn t3(&self) -> Vec<i64> {
        (1..=(self.q as i64 - 1)).collect()
    }

    /// `R₁ = {1, …, (q²−1)/4}`.
    pub fn r1(&self) -> Vec<i64> {
        (1..=((self.q2 as i64 - 1) / 4)).collect()
    }

    /// `R₂`: least representatives `i` of the orbits `{±i, ±qi}` in `Z/(q²−1)`
    /// for which `θ^i, θ^{−i}, θ^{qi}, θ^{−qi}` are all distinct, in increasing
    /// order. There are `(q−1)²/4` of them.
    pub fn r2(&self) -> Vec<i64> {
        let m = (self.q2 - 1) as i64;
        let q = self.q as i64;
        let mut taken = vec![false; m as usize];
        let mut reps = Vec::new();
        for i in 1..m {
            if taken[i as usize] {
                continue;
            }
            let orbit = [i, (-i).rem_euclid(m), (q * i) % m, (-q * i).rem_euclid(m)];
            let mut distinct = orbit.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() == 4 {
                reps.push(i);
                for o in orbit {
                    taken[o as usize] = true;
                }
            }
        }
        assert_eq!(reps.len() as i64, (q - 1) * (q - 1) / 4);
        reps
    }
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

/// Complex unit `e^{2πi·j/n}`.
pub fn root_of_unity(j: i64, n: i64) -> Complex64 {
    let a = TAU * (j.rem_euclid(n) as f64) / (n as f64);
    Complex64::new(a.cos(), a.sin())
}

/// A character of `F_q^×` (modulus `q−1`) or `F_{q²}^×` (modulus `q²−1`),
/// stored as an exponent against the fixed generator (`γ` resp. `θ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicativeCharacter {
    pub modulus: i64,
    pub exponent: i64,
}

impl MultiplicativeCharacter {
    pub fn new(modulus: i64, exponent: i64) -> Self {
        MultiplicativeCharacter { modulus, exponent: exponent.rem_euclid(modulus) }
    }

    /// Value at `g^k` where `g` is the generator the modulus refers to.
    pub fn at_exponent(&self, k: i64) -> Complex64 {
        root_of_unity(self.exponent * k.rem_euclid(self.modulus), self.modulus)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    /// Evaluation at a nonzero tower element (which must lie in the subfield
    /// the modulus refers to).
    pub fn value(&self, f: &FieldDescriptor, x: Elt) -> Result<Complex64, FieldError> {
        if x.is_zero() {
            return Err(FieldError::CharacterAtZero);
        }
        let k = if self.modulus == (f.q - 1) as i64 {
            if !f.subfield_of(x, FieldTag::Fq) {
                return Err(FieldError::WrongSubfield { expected: FieldTag::Fq });
            }
            f.dlog_gamma(x)
        } else {
            if !f.subfield_of(x, FieldTag::Fq2) {
                return Err(FieldError::WrongSubfield { expected: FieldTag::Fq2 });
            }
            f.dlog_theta(x)
        };
        Ok(self.at_exponent(k))
    }
}

/// The additive character `ψ_a(x) = e^{2πi·Tr(ax)/p}` of `F_q`, `a ≠ 0`.
#[derive(Debug, Clone, Copy)]
pub struct AdditiveCharacter {
    /// Twist `a ∈ F_q^×` as a `γ`-exponent.
    pub twist: i64,
}

impl AdditiveCharacter {
    pub fn value(&self, f: &FieldDescriptor, x: Elt) -> Complex64 {
        if x.is_zero() {
            return Complex64::new(1.0, 0.0);
        }
        let ax = f.mul(f.gamma_pow(self.twist), x);
        root_of_unity(f.trace_fq_to_fp(ax) as i64, f.p as i64)
    }
}

// ---------------------------------------------------------------------------
// Deterministic primitive polynomial
// ---------------------------------------------------------------------------

fn is_prime(n: u64) -> bool {
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

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

fn pack(coeffs: &[u64], p: u64) -> u32 {
    let mut v: u64 = 0;
    for &c in coeffs.iter().rev() {
        v = v * p + c;
    }
    v as u32
}

fn unpack(mut packed: u32, p: u64, deg: usize) -> Vec<u64> {
    let mut out = vec![0u64; deg];
    for slot in out.iter_mut() {
        *slot = (packed as u64) % p;
        packed /= p as u32;
    }
    out
}

/// `a·X mod f` for `a` of degree `< deg f`.
fn mul_by_x_mod(a: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let deg = modulus.len() - 1;
    let mut out = vec![0u64; deg];
    let lead = a[deg - 1];
    for i in 1..deg {
        out[i] = a[i - 1];
    }
    // subtract lead · (f − X^deg)
    for i in 0..deg {
        out[i] = (out[i] + p - (lead * modulus[i]) % p) % p;
    }
    out
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let deg = modulus.len() - 1;
    let mut cur = a.to_vec();
    let mut acc = vec![0u64; deg];
    for i in 0..deg {
        if b[i] != 0 {
            for j in 0..deg {
                acc[j] = (acc[j] + b[i] * cur[j]) % p;
            }
        }
        cur = mul_by_x_mod(&cur, modulus, p);
    }
    acc
}

fn poly_pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let deg = modulus.len() - 1;
    let mut acc = vec![0u64; deg];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

/// The lexicographically least monic primitive polynomial of degree `deg`
/// over `F_p`, compared on the coefficient tuple `(c_{deg−1}, …, c_0)`.
/// Its root `X` then has multiplicative order `p^deg − 1`, which also forces
/// irreducibility.
fn least_primitive_polynomial(p: u64, deg: usize) -> Vec<u64> {
    let group_order = p.pow(deg as u32) - 1;
    let factors = prime_factors(group_order);
    let total = p.pow(deg as u32);
    for m in 0..total {
        // digits of m, most significant digit = c_{deg-1}
        let mut coeffs = vec![0u64; deg + 1];
        coeffs[deg] = 1;
        let mut v = m;
        for i in 0..deg {
            coeffs[i] = v % p;
            v /= p;
        }
        if coeffs[0] == 0 {
            continue; // X divides f
        }
        let x = {
            let mut x = vec![0u64; deg];
            if deg > 1 {
                x[1] = 1;
            } else {
                // deg = 1 cannot occur here (deg = 4n ≥ 4)
                unreachable!()
            }
            x
        };
        let one = {
            let mut one = vec![0u64; deg];
            one[0] = 1;
            one
        };
        if poly_pow_mod(&x, group_order, &coeffs, p) != one {
            continue;
        }
        if factors.iter().any(|&l| poly_pow_mod(&x, group_order / l, &coeffs, p) == one) {
            continue;
        }
        return coeffs;
    }
    unreachable!("a primitive polynomial of every degree exists over F_p")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn orders_by_repeated_multiplication(f: &FieldDescriptor, a: Elt) -> i64 {
        let mut x = a;
        let mut n = 1;
        while x != f.one() {
            x = f.mul(x, a);
            n += 1;
            assert!(n <= f.order());
        }
        n
    }

    #[test]
    fn generator_orders_q3() {
        let f = FieldDescriptor::new(3, 1).unwrap();
        assert_eq!(f.q, 3);
        assert_eq!(orders_by_repeated_multiplication(&f, f.gamma()), 2);
        assert_eq!(orders_by_repeated_multiplication(&f, f.eta()), 4);
        assert_eq!(orders_by_repeated_multiplication(&f, f.theta()), 8);
        assert_eq!(orders_by_repeated_multiplication(&f, f.zeta()), 10);
        assert_eq!(orders_by_repeated_multiplication(&f, f.kappa()), 80);
    }

    #[test]
    fn generator_orders_q5() {
        let f = FieldDescriptor::new(5, 1).unwrap();
        assert_eq!(orders_by_repeated_multiplication(&f, f.gamma()), 4);
        assert_eq!(orders_by_repeated_multiplication(&f, f.eta()), 6);
        assert_eq!(orders_by_repeated_multiplication(&f, f.theta()), 24);
        assert_eq!(orders_by_repeated_multiplication(&f, f.zeta()), 26);
    }

    #[test]
    fn generator_orders_all_supported_q() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)] {
            let f = FieldDescriptor::new(p, n).unwrap();
            let q = f.q as i64;
            assert_eq!(orders_by_repeated_multiplication(&f, f.gamma()), q - 1);
            assert_eq!(orders_by_repeated_multiplication(&f, f.eta()), q + 1);
            assert_eq!(orders_by_repeated_multiplication(&f, f.theta()), q * q - 1);
            assert_eq!(orders_by_repeated_multiplication(&f, f.zeta()), q * q + 1);
            assert_eq!(orders_by_repeated_multiplication(&f, f.kappa()), q.pow(4) - 1);
        }
    }

    #[test]
    fn gamma_is_minus_one_in_f3() {
        let f = FieldDescriptor::new(3, 1).unwrap();
        assert_eq!(f.gamma(), f.minus_one());
        assert_eq!(f.residue(f.gamma()), 2);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldDescriptor::new(2, 1).unwrap_err(), FieldError::EvenCharacteristic);
        assert_eq!(FieldDescriptor::new(9, 1).unwrap_err(), FieldError::NotPrime(9));
        assert_eq!(FieldDescriptor::new(17, 1).unwrap_err(), FieldError::TooLarge(17));
    }

    #[test]
    fn eta_has_norm_one_over_fq() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let f = FieldDescriptor::new(p, n).unwrap();
            let eta = f.eta();
            let norm = f.mul(eta, f.pow(eta, f.q as i64));
            assert_eq!(norm, f.one());
            let zeta = f.zeta();
            let norm2 = f.mul(zeta, f.pow(zeta, (f.q * f.q) as i64));
            assert_eq!(norm2, f.one());
        }
    }

    #[test]
    fn frobenius_fixes_exactly_fq() {
        let f = FieldDescriptor::new(3, 1).unwrap();
        let mut fixed = 1u64; // zero
        for e in 0..f.order() {
            let x = Elt(e);
            if f.frobenius(x) == x {
                assert!(f.subfield_of(x, FieldTag::Fq));
                fixed += 1;
            } else {
                assert!(!f.subfield_of(x, FieldTag::Fq));
            }
        }
        assert_eq!(fixed, f.q);
    }

    #[test]
    fn additive_inverse_and_zech_addition() {
        let f = FieldDescriptor::new(3, 2).unwrap(); // q = 9
        let mut rng = 0x9e3779b97f4a7c15u64;
        for _ in 0..50 {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = Elt((rng % f.order() as u64) as i64);
            assert_eq!(f.add(x, f.neg(x)), Elt::ZERO);
        }
        // cross-check Zech addition against polynomial addition
        for a in -1..f.order() {
            for b in [-1i64, 0, 1, 7, 13, f.order() - 1] {
                let x = Elt(a);
                let y = Elt(b);
                let lhs = f.packed(f.add(x, y));
                let sum_packed = {
                    let deg = (4 * f.n) as usize;
                    let xp = unpack(f.packed(x), f.p, deg);
                    let yp = unpack(f.packed(y), f.p, deg);
                    let s: Vec<u64> = xp.iter().zip(&yp).map(|(u, v)| (u + v) % f.p).collect();
                    pack(&s, f.p)
                };
                assert_eq!(lhs, sum_packed);
            }
        }
    }

    #[test]
    fn multiplicative_character_values() {
        // trivial character is 1 everywhere
        let f = FieldDescriptor::new(5, 1).unwrap();
        let triv = MultiplicativeCharacter::new(4, 0);
        for k in 0..4 {
            assert!((triv.value(&f, f.gamma_pow(k)).unwrap() - 1.0).norm() < 1e-12);
        }
        // χ₁(−1) = −1 for q = 5: −1 = γ²
        let chi1 = MultiplicativeCharacter::new(4, 1);
        let v = chi1.value(&f, f.minus_one()).unwrap();
        assert!((v + 1.0).norm() < 1e-12);
        // character at zero is an error
        assert_eq!(chi1.value(&f, Elt::ZERO).unwrap_err(), FieldError::CharacterAtZero);
    }

    #[test]
    fn additive_character_sum_vanishes() {
        let f = FieldDescriptor::new(3, 1).unwrap();
        let psi = AdditiveCharacter { twist: 0 };
        let mut s = psi.value(&f, Elt::ZERO);
        for k in 0..2 {
            s += psi.value(&f, f.gamma_pow(k));
        }
        assert!(s.norm() < 1e-12);
        // ψ is nontrivial and additive
        for (p, n) in [(3, 1), (5, 1), (3, 2)] {
            let f = FieldDescriptor::new(p, n).unwrap();
            for twist in 0..(f.q - 1) as i64 {
                let psi = AdditiveCharacter { twist };
                let nontrivial = (0..(f.q - 1) as i64)
                    .any(|k| (psi.value(&f, f.gamma_pow(k)) - 1.0).norm() > 1e-9);
                assert!(nontrivial, "ψ_a must be nontrivial on F_q for every a ≠ 0");
            }
        }
    }

    #[test]
    fn index_set_sizes() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)] {
            let f = FieldDescriptor::new(p, n).unwrap();
            let q = f.q as i64;
            assert_eq!(f.t1().len() as i64, (q - 3) / 2);
            assert_eq!(f.t2().len() as i64, (q - 1) / 2);
            assert_eq!(f.t3().len() as i64, q - 1);
            assert_eq!(f.r1().len() as i64, (q * q - 1) / 4);
            assert_eq!(f.r2().len() as i64, (q - 1) * (q - 1) / 4);
        }
    }

    #[test]
    fn half_power_datum() {
        let f = FieldDescriptor::new(3, 1).unwrap();
        // q = 3, k = 0: γ^{1/2} = θ², whose square is γ
        let w = f.gamma_half_power(0);
        assert_eq!(w, f.theta_pow(2));
        assert_eq!(f.mul(w, w), f.gamma());
        for (p, n) in [(3, 1), (5, 1)] {
            let f = FieldDescriptor::new(p, n).unwrap();
            for k in 0..(f.q - 1) as i64 {
                let w = f.gamma_half_power(k);
                // square is γ^{2k+1} and the Frobenius conjugate is −w
                assert_eq!(f.mul(w, w), f.gamma_pow(2 * k + 1));
                assert_eq!(f.frobenius(w), f.neg(w));
                // eigenvalue product matches −γ^{2k+1}
                assert_eq!(f.mul(w, f.neg(w)), f.neg(f.gamma_pow(2 * k + 1)));
            }
        }
    }

    #[test]
    fn embed_is_ring_homomorphism_and_fixes_gamma() {
        let f = FieldDescriptor::new(5, 1).unwrap();
        let x = f.element(FieldTag::Fq, f.gamma_pow(3)).unwrap();
        let y = f.element(FieldTag::Fq, f.gamma_pow(1)).unwrap();
        let ex = f.embed(x, FieldTag::Fq2).unwrap();
        let ey = f.embed(y, FieldTag::Fq2).unwrap();
        let sum = f.fe_add(x, y).unwrap();
        let esum = f.embed(sum, FieldTag::Fq2).unwrap();
        assert_eq!(f.fe_add(ex, ey).unwrap(), esum);
        let prod = f.fe_mul(x, y).unwrap();
        assert_eq!(f.fe_mul(ex, ey).unwrap().elt, prod.elt);
        // γ ↦ γ under embedding (same inner element)
        assert_eq!(f.embed(f.element(FieldTag::Fq, f.gamma()).unwrap(), FieldTag::Fq4).unwrap().elt, f.gamma());
        // tag mismatch is an error
        assert_eq!(f.fe_add(x, ex).unwrap_err(), FieldError::TagMismatch);
        // inversion of zero is an error
        assert_eq!(f.inv(Elt::ZERO).unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn mul_gamma_gamma_is_one_in_f3() {
        let f = FieldDescriptor::new(3, 1).unwrap();
        assert_eq!(f.mul(f.gamma(), f.gamma()), f.one());
    }

    proptest! {
        #[test]
        fn field_axioms_q9(a in -1i64..6560, b in -1i64..6560, c in -1i64..6560) {
            let f = FieldDescriptor::new(3, 2).unwrap();
            let (x, y, z) = (Elt(a), Elt(b), Elt(c));
            prop_assert_eq!(f.add(x, y), f.add(y, x));
            prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
            prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
            prop_assert_eq!(f.add(x, f.neg(x)), Elt::ZERO);
            if !x.is_zero() {
                prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
            }
        }

        #[test]
        fn character_multiplicativity(m in 0i64..12, j in 0i64..12, k in 0i64..12) {
            let f = FieldDescriptor::new(13, 1).unwrap();
            let chi = MultiplicativeCharacter::new(12, m);
            let lhs = chi.value(&f, f.gamma_pow(j)).unwrap() * chi.value(&f, f.gamma_pow(k)).unwrap();
            let rhs = chi.value(&f, f.gamma_pow(j + k)).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }

        #[test]
        fn additive_character_is_additive(a in 0i64..4, j in -1i64..4, k in -1i64..4) {
            let f = FieldDescriptor::new(5, 1).unwrap();
            let psi = AdditiveCharacter { twist: a };
            let x = if j < 0 { Elt::ZERO } else { f.gamma_pow(j) };
            let y = if k < 0 { Elt::ZERO } else { f.gamma_pow(k) };
            let lhs = psi.value(&f, x) * psi.value(&f, y);
            let rhs = psi.value(&f, f.add(x, y));
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}
