//! Closed-form characters of the parabolically induced representations
//! `χ₁×χ₂⋊σ` (Borel), `π⋊σ` (Siegel) and `χ⋊π` (Klingen), the norm of a
//! Borel-induced character with its `z`-flag case analysis, and the
//! character-sum identities used by the reducibility arguments.
//!
//! Classes missing from a table get the value `0`. Every value is written in
//! terms of the class label parameters `(k; i; i,j)` exactly as in the tables;
//! the canonical parameter normalization of the labeling module makes each row
//! well defined (the row values are invariant under the residual label
//! symmetries).

use crate::classfn::ClassFunction;
use crate::conjugacy::{ClassPartition, Family};
use crate::field::{root_of_unity, FieldDescriptor};
use crate::gl2::{classify_gl2, GL2Character, GL2ClassDatum};
use crate::group::{GroupCtx, Mat, SubgroupTag};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A parabolically induced representation datum.
///
/// Character exponents are relative to `γ` (modulus `q−1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InducedSpec {
    /// `χ₁ × χ₂ ⋊ σ` from the Borel subgroup.
    Borel { m1: i64, m2: i64, ms: i64 },
    /// `π ⋊ σ` from the Siegel parabolic.
    Siegel { pi: GL2Character, ms: i64 },
    /// `χ ⋊ π` from the Klingen parabolic.
    Klingen { mchi: i64, pi: GL2Character },
}

impl InducedSpec {
    pub fn subgroup(&self) -> SubgroupTag {
        match self {
            InducedSpec::Borel { .. } => SubgroupTag::B,
            InducedSpec::Siegel { .. } => SubgroupTag::P,
            InducedSpec::Klingen { .. } => SubgroupTag::Q,
        }
    }

    /// Degree of the induced representation.
    pub fn degree(&self, q: u64) -> u64 {
        match self {
            InducedSpec::Borel { .. } => (q * q + 1) * (q + 1) * (q + 1),
            InducedSpec::Siegel { pi, .. } | InducedSpec::Klingen { pi, .. } => {
                (q * q + 1) * (q + 1) * pi.degree(q)
            }
        }
    }

    /// `γ`-exponent of the central character (`χ₁χ₂σ²`, `ω_π σ²`, `χ ω_π`).
    pub fn central_exponent(&self, q: u64) -> i64 {
        let qm1 = q as i64 - 1;
        match self {
            InducedSpec::Borel { m1, m2, ms } => (m1 + m2 + 2 * ms).rem_euclid(qm1),
            InducedSpec::Siegel { pi, ms } => (pi.central_exponent(q) + 2 * ms).rem_euclid(qm1),
            InducedSpec::Klingen { mchi, pi } => (mchi + pi.central_exponent(q)).rem_euclid(qm1),
        }
    }

    /// The inducing class function on the parabolic subgroup, for the
    /// brute-force induction oracle. Returns `None` off the subgroup.
    pub fn subgroup_evaluator<'a>(
        &'a self,
        ctx: &'a GroupCtx,
        f: &'a FieldDescriptor,
    ) -> impl Fn(&Mat) -> Option<Complex64> + 'a {
        let spec = *self;
        move |m: &Mat| -> Option<Complex64> {
            let qm1 = f.q as i64 - 1;
            match spec {
                InducedSpec::Borel { m1, m2, ms } => {
                    let c = ctx.decompose_borel(m).ok()?;
                    let v = m1 * ctx.dlog(c.a) + m2 * ctx.dlog(c.b) + ms * ctx.dlog(c.c);
                    Some(root_of_unity(v, qm1))
                }
                InducedSpec::Siegel { pi, ms } => {
                    let c = ctx.decompose_siegel(m).ok()?;
                    let datum = classify_gl2(ctx, f, c.a).ok()?;
                    let sigma = root_of_unity(ms * ctx.dlog(c.lambda), qm1);
                    Some(sigma * pi.value(f, datum).ok()?)
                }
                InducedSpec::Klingen { mchi, pi } => {
                    let c = ctx.decompose_klingen(m).ok()?;
                    let datum = classify_gl2(ctx, f, c.a).ok()?;
                    let chi = root_of_unity(mchi * ctx.dlog(c.t), qm1);
                    Some(chi * pi.value(f, datum).ok()?)
                }
            }
        }
    }
}

/// The closed-form induced character as a class function on the labeled
/// partition; classes not listed in the relevant table get `0`.
pub fn closed_form_character(
    spec: &InducedSpec,
    f: &FieldDescriptor,
    partition: &ClassPartition,
) -> ClassFunction {
    let values = partition
        .classes
        .iter()
        .map(|c| {
            let l = &c.label;
            match spec {
                InducedSpec::Borel { m1, m2, ms } => {
                    borel_value(f, *m1, *m2, *ms, l.family, l.k, l.i, l.j)
                }
                InducedSpec::Siegel { pi, ms } => {
                    siegel_value(f, pi, *ms, l.family, l.k, l.i, l.j)
                }
                InducedSpec::Klingen { mchi, pi } => {
                    klingen_value(f, *mchi, pi, l.family, l.k, l.i, l.j)
                }
            }
        })
        .collect();
    ClassFunction { q: partition.q, values }
}

fn borel_value(
    f: &FieldDescriptor,
    m1: i64,
    m2: i64,
    ms: i64,
    family: Family,
    k: i64,
    i: Option<i64>,
    j: Option<i64>,
) -> Complex64 {
    let q = f.q as i64;
    let qm1 = q - 1;
    let t = qm1 / 2; // −1 = γ^t
    let e = |m: i64, arg: i64| root_of_unity(m * arg.rem_euclid(qm1), qm1);
    let c1 = |arg: i64| e(m1, arg);
    let c2 = |arg: i64| e(m2, arg);
    let sg = |arg: i64| e(ms, arg);
    let zero = Complex64::new(0.0, 0.0);
    let r = |x: i64| Complex64::new(x as f64, 0.0);
    let i = i.unwrap_or(0);
    let j = j.unwrap_or(0);
    // value on the central-parameter part χ₁(γ^k)χ₂(γ^k)
    let cc = c1(k) * c2(k);
    match family {
        Family::A1 => r((q * q + 1) * (q + 1) * (q + 1)) * cc * sg(2 * k),
        Family::A2 => r((q + 1) * (q + 1)) * cc * sg(2 * k),
        Family::A31 => r(3 * q + 1) * cc * sg(2 * k),
        Family::A32 => r(q + 1) * cc * sg(2 * k),
        Family::A5 => cc * sg(2 * k),
        Family::B11 => r((q + 1) * (q + 1)) * cc * sg(2 * k) * (c1(t) + c2(t)),
        Family::B21 => {
            r(q + 1) * cc * sg(2 * k + t) * (r(1) + c1(t) * c2(t) + c1(t) + c2(t))
        }
        Family::B3 => r(q + 1) * cc * sg(2 * k) * (c1(t) + c2(t)),
        Family::B41 | Family::B42 => cc * sg(2 * k) * (c1(t) + c2(t)),
        Family::B51 => cc * sg(2 * k + t) * (r(1) + c1(t) * c2(t) + c1(t) + c2(t)),
        Family::C1 => {
            r(q + 1) * cc * sg(2 * k + i) * (r(1) + c1(i) * c2(i) + c1(i) + c2(i))
        }
        Family::C21 => {
            cc * sg(2 * k + i + t)
                * (c1(t) + c2(t)
                    + c1(t) * c2(t) * (c1(i) + c2(i))
                    + (c1(t) + c2(t)) * c1(i) * c2(i)
                    + c1(i)
                    + c2(i))
        }
        Family::C3 => cc * sg(2 * k + i) * (r(1) + c1(i) * c2(i) + c1(i) + c2(i)),
        Family::C4 => cc * sg(2 * k) * (c1(i) + c1(-i) + c2(i) + c2(-i)),
        Family::C5 => r(q + 1) * cc * sg(2 * k) * (c1(i) + c1(-i) + c2(i) + c2(-i)),
        Family::C6 => {
            cc * sg(2 * k + i + j)
                * (c1(i) + c1(j) + c2(i) + c2(j)
                    + c1(i + j) * (c2(i) + c2(j))
                    + c2(i + j) * (c1(i) + c1(j)))
        }
        _ => zero,
    }
}

fn siegel_value(
    f: &FieldDescriptor,
    pi: &GL2Character,
    ms: i64,
    family: Family,
    k: i64,
    i: Option<i64>,
    j: Option<i64>,
) -> Complex64 {
    let q = f.q as i64;
    let qm1 = q - 1;
    let t = qm1 / 2;
    let sg = |arg: i64| root_of_unity(ms * arg.rem_euclid(qm1), qm1);
    let zero = Complex64::new(0.0, 0.0);
    let r = |x: i64| Complex64::new(x as f64, 0.0);
    let g = |a: i64| f.gamma_pow(a);
    let central = |a: i64| pi.value(f, GL2ClassDatum::Central(g(a))).unwrap();
    let jordan = |a: i64| pi.value(f, GL2ClassDatum::Jordan(g(a))).unwrap();
    let split = |a: i64, b: i64| pi.value(f, GL2ClassDatum::Split(g(a), g(b))).unwrap();
    let nonsplit = |x: crate::field::Elt| pi.value(f, GL2ClassDatum::NonSplit(x)).unwrap();
    let w = |kk: i64| f.gamma_half_power(kk); // γ^{k+1/2}
    let theta_pt = |kk: i64, ii: i64| f.mul(g(kk), f.theta_pow(ii)); // γ^k θ^i
    let i = i.unwrap_or(0);
    let j = j.unwrap_or(0);
    match family {
        Family::A1 => r((q * q + 1) * (q + 1)) * sg(2 * k) * central(k),
        Family::A2 => r(q + 1) * sg(2 * k) * central(k),
        Family::A31 => sg(2 * k) * (central(k) + r(2 * q) * jordan(k)),
        Family::A32 => sg(2 * k) * central(k),
        Family::A5 => sg(2 * k) * jordan(k),
        Family::B11 => r((q + 1) * (q + 1)) * sg(2 * k) * split(k, k + t),
        Family::B12 => r(q * q + 1) * sg(2 * k + 1) * nonsplit(w(k)),
        Family::B21 => {
            sg(2 * k + t) * (central(k) + central(k + t) + r(q + 1) * split(k, k + t))
        }
        Family::B22 => r(q + 1) * sg(2 * k + 1 + t) * nonsplit(w(k)),
        Family::B3 => r(q + 1) * sg(2 * k) * split(k, k + t),
        Family::B41 | Family::B42 => sg(2 * k) * split(k, k + t),
        Family::B43 | Family::B44 => sg(2 * k + 1) * nonsplit(w(k)),
        Family::B51 => sg(2 * k + t) * (split(k, k + t) + jordan(k) + jordan(k + t)),
        Family::B52 => sg(2 * k + 1 + t) * nonsplit(w(k)),
        Family::C1 => {
            sg(2 * k + i) * (central(k) + central(k + i) + r(q + 1) * split(k, k + i))
        }
        Family::C21 => {
            sg(2 * k + i + t)
                * (split(k, k + t)
                    + split(k + i, k + i + t)
                    + split(k, k + i)
                    + split(k + t, k + i + t))
        }
        Family::C22 => {
            sg(2 * k + i + 1 + t) * (nonsplit(w(k)) + nonsplit(f.mul(g(i), w(k))))
        }
        Family::C3 => sg(2 * k + i) * (jordan(k) + jordan(k + i) + split(k, k + i)),
        Family::C4 => sg(2 * k) * (split(k, k + i) + split(k, k - i)),
        Family::C5 => r(q + 1) * sg(2 * k) * (split(k, k + i) + split(k, k - i)),
        Family::C6 => {
            sg(2 * k + i + j)
                * (split(k, k + i)
                    + split(k, k + j)
                    + split(k + i, k + i + j)
                    + split(k + j, k + i + j))
        }
        Family::D2 => r(q + 1) * sg(2 * k + i) * nonsplit(theta_pt(k, i)),
        Family::D31 => {
            sg(2 * k + i + t)
                * (nonsplit(theta_pt(k, i)) + nonsplit(f.neg(theta_pt(k, i))))
        }
        Family::D4 => {
            sg(2 * k + i + j) * (nonsplit(theta_pt(k, i)) + nonsplit(theta_pt(k + j, i)))
        }
        Family::D5 => sg(2 * k + i) * nonsplit(theta_pt(k, i)),
        _ => zero,
    }
}

fn klingen_value(
    f: &FieldDescriptor,
    mchi: i64,
    pi: &GL2Character,
    family: Family,
    k: i64,
    i: Option<i64>,
    j: Option<i64>,
) -> Complex64 {
    let q = f.q as i64;
    let qm1 = q - 1;
    let t = qm1 / 2;
    let x = |arg: i64| root_of_unity(mchi * arg.rem_euclid(qm1), qm1);
    let zero = Complex64::new(0.0, 0.0);
    let r = |v: i64| Complex64::new(v as f64, 0.0);
    let g = |a: i64| f.gamma_pow(a);
    let central = |a: i64| pi.value(f, GL2ClassDatum::Central(g(a))).unwrap();
    let jordan = |a: i64| pi.value(f, GL2ClassDatum::Jordan(g(a))).unwrap();
    let split = |a: i64, b: i64| pi.value(f, GL2ClassDatum::Split(g(a), g(b))).unwrap();
    let nonsplit = |z: crate::field::Elt| pi.value(f, GL2ClassDatum::NonSplit(z)).unwrap();
    let i = i.unwrap_or(0);
    let j = j.unwrap_or(0);
    match family {
        Family::A1 => r((q * q + 1) * (q + 1)) * x(k) * central(k),
        Family::A2 => x(k) * (central(k) + r(q * (q + 1)) * jordan(k)),
        Family::A31 => r(2) * x(k) * (central(k) + r(t) * jordan(k)),
        Family::A32 => r(q + 1) * x(k) * jordan(k),
        Family::A5 => x(k) * jordan(k),
        Family::B11 => r(q + 1) * x(k) * (x(t) * central(k) + central(k + t)),
        Family::B21 => r(q + 1) * x(k) * (r(1) + x(t)) * split(k, k + t),
        Family::B3 => x(k) * (x(t) * central(k) + r(q + 1) * jordan(k + t)),
        Family::B41 | Family::B42 => x(k) * (x(t) * jordan(k) + jordan(k + t)),
        Family::B51 => x(k) * (r(1) + x(t)) * split(k, k + t),
        Family::C1 => r(q + 1) * x(k) * (r(1) + x(i)) * split(k, k + i),
        Family::C21 => {
            x(k) * ((x(i) + x(t)) * split(k, k + i + t)
                + (r(1) + x(i + t)) * split(k + t, k + i))
        }
        Family::C3 => x(k) * (r(1) + x(i)) * split(k, k + i),
        Family::C4 => x(k) * ((x(i) + x(-i)) * jordan(k) + split(k + i, k - i)),
        Family::C5 => x(k) * ((x(i) + x(-i)) * central(k) + r(q + 1) * split(k + i, k - i)),
        Family::C6 => {
            x(k) * ((r(1) + x(i + j)) * split(k + i, k + j)
                + (x(i) + x(j)) * split(k, k + i + j))
        }
        Family::D1 => {
            x(k) * (r(1) + x(i)) * nonsplit(f.mul(g(k), f.theta_pow(i)))
        }
        Family::D6 => r(q + 1) * x(k) * nonsplit(f.mul(g(k), f.eta_pow(i))),
        Family::D8 => x(k) * nonsplit(f.mul(g(k), f.eta_pow(i))),
        _ => zero,
    }
}

// ---------------------------------------------------------------------------
// z-flags, the Borel norm, and the character-sum identities
// ---------------------------------------------------------------------------

/// The case flags entering the norm formula and the sum identities.
///
/// `z₆` is `q−1` exactly when `χ₂ = χ₁⁻¹` (the two printed branches of its
/// definition carry the same condition; this is the reading that matches the
/// 1/2/4/8 case analysis and the second sum identity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZFlags {
    pub z1: i64,
    pub z2: i64,
    pub z3: i64,
    pub z4: i64,
    pub z5: i64,
    pub z6: i64,
    /// `q+1` when the cuspidal parameter restricts trivially to `⟨η⟩`.
    pub z7: Option<i64>,
}

pub fn z_flags(q: u64, m1: i64, m2: i64, phi: Option<&GL2Character>) -> ZFlags {
    let qm1 = q as i64 - 1;
    let zero_mod = |x: i64| x.rem_euclid(qm1) == 0;
    let flag = |cond: bool| if cond { qm1 } else { 0 };
    ZFlags {
        z1: flag(zero_mod(m1)),
        z2: flag(zero_mod(m2)),
        z3: flag(zero_mod(2 * m1)),
        z4: flag(zero_mod(2 * m2)),
        z5: flag(zero_mod(m2 - m1)),
        z6: flag(zero_mod(m2 + m1)),
        z7: phi.and_then(|p| {
            p.cuspidal_trivial_on_eta(q)
                .map(|triv| if triv { q as i64 + 1 } else { 0 })
        }),
    }
}

/// The norm `(χ₁×χ₂⋊σ, χ₁×χ₂⋊σ)` from the closed rational expression in `q`
/// and the flags; always one of `1, 2, 4, 8` and independent of `σ`.
pub fn borel_norm(q: u64, m1: i64, m2: i64) -> u64 {
    let z = z_flags(q, m1, m2, None);
    let qi = q as i64;
    let num = qi * qi + (z.z5 + z.z6 - 2) * qi + 1 + z.z1 * z.z1 + 2 * z.z1 * z.z2
        + z.z2 * z.z2
        - z.z5
        - z.z6
        + z.z5 * z.z6;
    let den = (qi - 1) * (qi - 1);
    assert_eq!(num % den, 0, "norm expression must be an integer");
    let n = (num / den) as u64;
    assert!(matches!(n, 1 | 2 | 4 | 8), "norm must be one of 1, 2, 4, 8 (got {n})");
    n
}

/// Whether `χ₁ × χ₂ ⋊ σ` is irreducible: `χ₁ ≠ 1`, `χ₂ ≠ 1`, `χ₂ ≠ χ₁^{±1}`.
pub fn borel_irreducible(q: u64, m1: i64, m2: i64) -> bool {
    let qm1 = q as i64 - 1;
    let nz = |x: i64| x.rem_euclid(qm1) != 0;
    nz(m1) && nz(m2) && nz(m2 - m1) && nz(m2 + m1)
}

/// The intertwining count between two Borel inductions: the number of the
/// eight Weyl elements carrying `(χ₁,χ₂,σ)` to `(χ₁′,χ₂′,σ′)`, under
/// `s₁: (χ₁,χ₂,σ) ↦ (χ₂,χ₁,σ)` and `s₂: (χ₁,χ₂,σ) ↦ (χ₁,χ₂⁻¹,χ₂σ)`. This
/// equals the inner product of the two induced characters.
pub fn borel_pair_intertwining(
    q: u64,
    (m1, m2, ms): (i64, i64, i64),
    (n1, n2, ns): (i64, i64, i64),
) -> u64 {
    let qm1 = q as i64 - 1;
    let norm = |(a, b, c): (i64, i64, i64)| {
        (a.rem_euclid(qm1), b.rem_euclid(qm1), c.rem_euclid(qm1))
    };
    let s1 = |(a, b, c): (i64, i64, i64)| (b, a, c);
    let s2 = |(a, b, c): (i64, i64, i64)| (a, -b, b + c);
    let start = norm((m1, m2, ms));
    let target = norm((n1, n2, ns));
    // the eight reduced words of the dihedral Weyl group of type C₂
    let words: [&[u8]; 8] = [
        &[],
        &[1],
        &[2],
        &[1, 2],
        &[2, 1],
        &[1, 2, 1],
        &[2, 1, 2],
        &[1, 2, 1, 2],
    ];
    words
        .iter()
        .filter(|word| {
            let mut v = start;
            for &s in word.iter() {
                v = norm(if s == 1 { s1(v) } else { s2(v) });
            }
            v == target
        })
        .count() as u64
}

/// The norm as the intertwining count of a spec with itself.
pub fn borel_norm_weyl(q: u64, m1: i64, m2: i64, ms: i64) -> u64 {
    borel_pair_intertwining(q, (m1, m2, ms), (m1, m2, ms))
}

/// One of the eight character-sum identities: returns `(lhs, rhs)` where the
/// left side is summed explicitly over `T₁` (or pairs `i < j`) and the right
/// side comes from the closed form in the flags.
///
/// Identity 6 is read with the summand symmetrized over `{i, j}` (the printed
/// form depends on `i` alone, which is not an identity).
pub fn lemma1_sum(id: u8, q: u64, m1: i64, m2: i64) -> (Complex64, Complex64) {
    let qm1 = q as i64 - 1;
    let t = qm1 / 2;
    let t1: Vec<i64> = (1..=(q as i64 - 3) / 2).collect();
    let e1 = |arg: i64| root_of_unity(m1 * arg.rem_euclid(qm1), qm1);
    let e2 = |arg: i64| root_of_unity(m2 * arg.rem_euclid(qm1), qm1);
    let z = z_flags(q, m1, m2, None);
    let c1m1 = e1(t); // χ₁(−1)
    let c2m1 = e2(t);
    let r = |x: f64| Complex64::new(x, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match id {
        1 => {
            let lhs = t1.iter().map(|&i| e1(i) + e1(-i)).fold(zero, |a, b| a + b);
            (lhs, r(z.z1 as f64) - 1.0 - c1m1)
        }
        2 => {
            let lhs = t1
                .iter()
                .map(|&i| e1(i) * e2(i) + e1(-i) * e2(-i))
                .fold(zero, |a, b| a + b);
            (lhs, r(z.z6 as f64) - 1.0 - c1m1 * c2m1)
        }
        3 => {
            let lhs = t1
                .iter()
                .map(|&i| e1(i) * e2(-i) + e1(-i) * e2(i))
                .fold(zero, |a, b| a + b);
            (lhs, r(z.z5 as f64) - 1.0 - c1m1 * c2m1)
        }
        4 => {
            let lhs = t1
                .iter()
                .map(|&i| e1(2 * i) + e1(-2 * i))
                .fold(zero, |a, b| a + b);
            (lhs, r(z.z3 as f64) - 2.0)
        }
        5 => {
            let mut lhs = zero;
            for a in 0..t1.len() {
                for b in (a + 1)..t1.len() {
                    let (i, j) = (t1[a], t1[b]);
                    lhs += e1(i + j) + e1(i - j) + e1(-i + j) + e1(-i - j);
                }
            }
            let base = r(z.z1 as f64) - c1m1 - 1.0;
            (lhs, (base * base - z.z3 as f64 - q as f64 + 5.0) * 0.5)
        }
        6 => {
            let f = |i: i64| (e1(i) + e1(-i)) * (e2(i) + e2(-i));
            let mut lhs = zero;
            for a in 0..t1.len() {
                for b in (a + 1)..t1.len() {
                    lhs += (f(t1[a]) + f(t1[b])) * 0.5;
                }
            }
            let rhs = r((q as f64 - 5.0) / 4.0)
                * (r(z.z6 as f64) + z.z5 as f64 - c1m1 * c2m1 * 2.0 - 2.0);
            (lhs, rhs)
        }
        7 => {
            let mut lhs = zero;
            for a in 0..t1.len() {
                for b in (a + 1)..t1.len() {
                    let (i, j) = (t1[a], t1[b]);
                    lhs += e1(i) + e1(-i) + e1(j) + e1(-j);
                }
            }
            (lhs, r((q as f64 - 5.0) / 2.0) * (r(z.z1 as f64) - 1.0 - c1m1))
        }
        8 => {
            let mut lhs = zero;
            for a in 0..t1.len() {
                for b in (a + 1)..t1.len() {
                    let (i, j) = (t1[a], t1[b]);
                    lhs += e1(2 * i) + e1(-2 * i) + e1(2 * j) + e1(-2 * j);
                }
            }
            (lhs, r((q as f64 - 5.0) / 2.0) * (r(z.z3 as f64) - 2.0))
        }
        _ => panic!("identity id must be 1..8"),
    }
}

/// Every Borel spec at a given `q` (all exponent triples).
pub fn all_borel_specs(q: u64) -> Vec<InducedSpec> {
    let qm1 = q as i64 - 1;
    let mut out = Vec::new();
    for m1 in 0..qm1 {
        for m2 in 0..qm1 {
            for ms in 0..qm1 {
                out.push(InducedSpec::Borel { m1, m2, ms });
            }
        }
    }
    out
}

/// Every Siegel and Klingen spec at a given `q` (all GL(2) irreducibles
/// crossed with all twists).
pub fn all_siegel_klingen_specs(q: u64) -> Vec<InducedSpec> {
    let qm1 = q as i64 - 1;
    let mut out = Vec::new();
    for pi in crate::gl2::gl2_irreducibles(q) {
        for m in 0..qm1 {
            out.push(InducedSpec::Siegel { pi, ms: m });
            out.push(InducedSpec::Klingen { mchi: m, pi });
        }
    }
    out
}
