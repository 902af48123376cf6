//! The irreducible characters of `GL(2, F_q)` in closed form, evaluable on
//! eigenvalue/Jordan data including conjugate pairs in `F_{q²}`.
//!
//! Four families: determinant twists (degree 1), Steinberg twists (degree
//! `q`), principal series (degree `q+1`, unordered pair of distinct `F_q^×`
//! characters), and cuspidal (degree `q−1`, characters `φ` of `F_{q²}^×` with
//! `φ ≠ φ^q`, taken modulo `φ ↔ φ^q`). The table is validated wholesale
//! against a brute-force character table of the enumerated group.

use crate::field::{Elt, FieldDescriptor, FieldTag};
use crate::group::GroupCtx;
use num_complex::Complex64;
use serde::Serialize;

/// Conjugacy-class datum of a `GL(2, F_q)` element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GL2ClassDatum {
    /// Scalar `aI`, `a ∈ F_q^×`.
    Central(Elt),
    /// `[[a, 1], [0, a]]`.
    Jordan(Elt),
    /// `diag(a, b)` with `a ≠ b`, both in `F_q^×` (unordered).
    Split(Elt, Elt),
    /// Eigenvalue `x ∈ F_{q²} \ F_q`; the conjugate pair is `{x, x^q}`.
    NonSplit(Elt),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GL2Error {
    #[error("datum eigenvalues are not in the stated field")]
    BadDatum,
    #[error("matrix is not invertible")]
    Singular,
}

/// An irreducible character of `GL(2, F_q)`.
///
/// Exponents are taken against `γ` (modulus `q−1`) or `θ` (modulus `q²−1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub enum GL2Character {
    /// `α(det)` with `α = γ`-character of exponent `m`.
    OneDim { m: i64 },
    /// `St ⊗ α(det)`, degree `q`.
    SteinbergTwist { m: i64 },
    /// `π(α, β)`, degree `q+1`, exponents `m1 ≠ m2` (canonically `m1 < m2`).
    PrincipalSeries { m1: i64, m2: i64 },
    /// Cuspidal `π_φ`, degree `q−1`, `φ` of exponent `n` with `φ ≠ φ^q`,
    /// canonically the least exponent in `{n, qn mod (q²−1)}`.
    Cuspidal { n: i64 },
}

impl GL2Character {
    pub fn degree(&self, q: u64) -> u64 {
        match self {
            GL2Character::OneDim { .. } => 1,
            GL2Character::SteinbergTwist { .. } => q,
            GL2Character::PrincipalSeries { .. } => q + 1,
            GL2Character::Cuspidal { .. } => q - 1,
        }
    }

    /// Exponent of the central character as a `γ`-character.
    pub fn central_exponent(&self, q: u64) -> i64 {
        let qm1 = q as i64 - 1;
        match self {
            GL2Character::OneDim { m } | GL2Character::SteinbergTwist { m } => {
                (2 * m).rem_euclid(qm1)
            }
            GL2Character::PrincipalSeries { m1, m2 } => (m1 + m2).rem_euclid(qm1),
            GL2Character::Cuspidal { n } => n.rem_euclid(qm1),
        }
    }

    pub fn has_trivial_central_character(&self, q: u64) -> bool {
        self.central_exponent(q) == 0
    }

    /// Whether the cuspidal parameter restricts trivially to the norm-one
    /// subgroup `⟨η⟩` (only meaningful for cuspidal characters).
    pub fn cuspidal_trivial_on_eta(&self, q: u64) -> Option<bool> {
        match self {
            GL2Character::Cuspidal { n } => Some(n % (q as i64 + 1) == 0),
            _ => None,
        }
    }

    /// Closed-form value on a class datum.
    pub fn value(&self, f: &FieldDescriptor, datum: GL2ClassDatum) -> Result<Complex64, GL2Error> {
        let q = f.q;
        let qm1 = q as i64 - 1;
        let q2m1 = (q * q) as i64 - 1;
        let e = |m: i64, k: i64, modulus: i64| crate::field::root_of_unity(m * k.rem_euclid(modulus), modulus);
        // γ-dlog of an F_q^× element
        let dg = |x: Elt| -> Result<i64, GL2Error> {
            if x.is_zero() || !f.subfield_of(x, FieldTag::Fq) {
                return Err(GL2Error::BadDatum);
            }
            Ok(f.dlog_gamma(x))
        };
        // θ-dlog of an F_{q²}^× element
        let dt = |x: Elt| -> Result<i64, GL2Error> {
            if x.is_zero() || !f.subfield_of(x, FieldTag::Fq2) {
                return Err(GL2Error::BadDatum);
            }
            Ok(f.dlog_theta(x))
        };
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Ok(match (*self, datum) {
            (GL2Character::OneDim { m }, GL2ClassDatum::Central(a)) => e(m, 2 * dg(a)?, qm1),
            (GL2Character::OneDim { m }, GL2ClassDatum::Jordan(a)) => e(m, 2 * dg(a)?, qm1),
            (GL2Character::OneDim { m }, GL2ClassDatum::Split(a, b)) => {
                e(m, dg(a)? + dg(b)?, qm1)
            }
            (GL2Character::OneDim { m }, GL2ClassDatum::NonSplit(x)) => {
                let norm = f.mul(x, f.frobenius(x));
                if f.subfield_of(x, FieldTag::Fq) || !f.subfield_of(x, FieldTag::Fq2) {
                    return Err(GL2Error::BadDatum);
                }
                e(m, dg(norm)?, qm1)
            }
            (GL2Character::SteinbergTwist { m }, GL2ClassDatum::Central(a)) => {
                e(m, 2 * dg(a)?, qm1) * (q as f64)
            }
            (GL2Character::SteinbergTwist { .. }, GL2ClassDatum::Jordan(_)) => zero,
            (GL2Character::SteinbergTwist { m }, GL2ClassDatum::Split(a, b)) => {
                e(m, dg(a)? + dg(b)?, qm1)
            }
            (GL2Character::SteinbergTwist { m }, GL2ClassDatum::NonSplit(x)) => {
                let norm = f.mul(x, f.frobenius(x));
                if f.subfield_of(x, FieldTag::Fq) {
                    return Err(GL2Error::BadDatum);
                }
                -(one * e(m, dg(norm)?, qm1))
            }
            (GL2Character::PrincipalSeries { m1, m2 }, GL2ClassDatum::Central(a)) => {
                e(m1 + m2, dg(a)?, qm1) * ((q + 1) as f64)
            }
            (GL2Character::PrincipalSeries { m1, m2 }, GL2ClassDatum::Jordan(a)) => {
                e(m1 + m2, dg(a)?, qm1)
            }
            (GL2Character::PrincipalSeries { m1, m2 }, GL2ClassDatum::Split(a, b)) => {
                let (da, db) = (dg(a)?, dg(b)?);
                e(m1, da, qm1) * e(m2, db, qm1) + e(m1, db, qm1) * e(m2, da, qm1)
            }
            (GL2Character::PrincipalSeries { .. }, GL2ClassDatum::NonSplit(_)) => zero,
            (GL2Character::Cuspidal { n }, GL2ClassDatum::Central(a)) => {
                e(n, (q as i64 + 1) * dg(a)?, q2m1) * ((q - 1) as f64)
            }
            (GL2Character::Cuspidal { n }, GL2ClassDatum::Jordan(a)) => {
                -(one * e(n, (q as i64 + 1) * dg(a)?, q2m1))
            }
            (GL2Character::Cuspidal { .. }, GL2ClassDatum::Split(_, _)) => zero,
            (GL2Character::Cuspidal { n }, GL2ClassDatum::NonSplit(x)) => {
                if f.subfield_of(x, FieldTag::Fq) {
                    return Err(GL2Error::BadDatum);
                }
                let dx = dt(x)?;
                -(e(n, dx, q2m1) + e(n, (q as i64) * dx, q2m1))
            }
        })
    }
}

/// The complete list: `q−1` one-dimensionals, `q−1` Steinberg twists,
/// `(q−1)(q−2)/2` principal series, `q(q−1)/2` cuspidals.
pub fn gl2_irreducibles(q: u64) -> Vec<GL2Character> {
    let qm1 = q as i64 - 1;
    let q2m1 = (q * q) as i64 - 1;
    let mut out = Vec::new();
    for m in 0..qm1 {
        out.push(GL2Character::OneDim { m });
    }
    for m in 0..qm1 {
        out.push(GL2Character::SteinbergTwist { m });
    }
    for m1 in 0..qm1 {
        for m2 in (m1 + 1)..qm1 {
            out.push(GL2Character::PrincipalSeries { m1, m2 });
        }
    }
    for n in 1..q2m1 {
        let nq = (n * q as i64).rem_euclid(q2m1);
        if nq <= n {
            continue; // φ = φ^q is not regular; keep the least orbit exponent
        }
        out.push(GL2Character::Cuspidal { n });
    }
    let expected = (qm1 + qm1 + qm1 * (qm1 - 1) / 2 + (q as i64) * qm1 / 2) as usize;
    assert_eq!(out.len(), expected);
    out
}

/// Resolves the half-power datum `γ^{k + 1/2}`: the nonsplit conjugate pair
/// `{w, −w}` with `w = θ^{(q+1)(2k+1)/2}`, so `w² = γ^{2k+1}` and `w^q = −w`.
pub fn gl2_half_power_datum(f: &FieldDescriptor, k: i64) -> GL2ClassDatum {
    GL2ClassDatum::NonSplit(f.gamma_half_power(k))
}

/// Classifies a `2×2` matrix over `F_q` (residues) into its class datum.
pub fn classify_gl2(
    ctx: &GroupCtx,
    f: &FieldDescriptor,
    m: [u8; 4],
) -> Result<GL2ClassDatum, GL2Error> {
    let [a, b, c, d] = m;
    let det = ctx.fsub(ctx.fmul(a, d), ctx.fmul(b, c));
    if det == 0 {
        return Err(GL2Error::Singular);
    }
    let tr = ctx.fadd(a, d);
    let tr_e = ctx.lift(f, tr);
    let det_e = ctx.lift(f, det);
    // discriminant tr² − 4·det
    let four = f.from_residue(4);
    let disc = f.sub(f.mul(tr_e, tr_e), f.mul(four, det_e));
    let scalar = b == 0 && c == 0 && a == d;
    if scalar {
        return Ok(GL2ClassDatum::Central(ctx.lift(f, a)));
    }
    if disc.is_zero() {
        // single eigenvalue tr/2 with a Jordan block (matrix is not scalar)
        let half = f.inv(f.from_residue(2)).unwrap();
        return Ok(GL2ClassDatum::Jordan(f.mul(tr_e, half)));
    }
    // roots (tr ± √disc)/2 in F_q or F_{q²}
    let sqrt_disc = sqrt_in_tower(f, disc);
    let half = f.inv(f.from_residue(2)).unwrap();
    let x = f.mul(f.add(tr_e, sqrt_disc), half);
    let y = f.mul(f.sub(tr_e, sqrt_disc), half);
    if f.subfield_of(sqrt_disc, FieldTag::Fq) {
        Ok(GL2ClassDatum::Split(x, y))
    } else {
        Ok(GL2ClassDatum::NonSplit(x))
    }
}

/// A square root of a nonzero `F_{q²}` element inside the tower (exists in
/// `F_{q²}` when the `θ`-dlog is even, otherwise in `F_{q⁴}`).
fn sqrt_in_tower(f: &FieldDescriptor, x: Elt) -> Elt {
    assert!(!x.is_zero());
    let e = x.0;
    if e % 2 == 0 {
        Elt(e / 2)
    } else {
        Elt((e + f.order()) / 2)
    }
}
