//! The Gelfand–Graev character `𝒢 = Ind_N^G ψ_N` and genericity testing.
//!
//! `ψ_N` is built from two nontrivial additive characters `ψ₁, ψ₂` of `F_q`
//! evaluated on the two short-root coordinates of the unipotent subgroup `N`;
//! as a class function `𝒢` does not depend on the choice. An irreducible is
//! generic exactly when it appears in `𝒢`, and then with multiplicity one.

use crate::classfn::{induce_subgroup_sum, inner_product, ClassFunction, INT_TOL};
use crate::conjugacy::{ClassPartition, Family};
use crate::field::{AdditiveCharacter, FieldDescriptor};
use crate::group::{enumerate_subgroup, GroupCtx, GroupEnumeration, Mat, SubgroupTag};
use num_complex::Complex64;

/// The pair of nontrivial additive character twists defining `ψ_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WhittakerDatum {
    /// `γ`-exponent of the twist of `ψ₁` (the twist is `γ^a1 ≠ 0`).
    pub a1: i64,
    /// `γ`-exponent of the twist of `ψ₂`.
    pub a2: i64,
}

impl Default for WhittakerDatum {
    /// The fixed default: both twists equal to `1`.
    fn default() -> Self {
        WhittakerDatum { a1: 0, a2: 0 }
    }
}

/// `ψ_N` on a member of `N`: `ψ₁(x)ψ₂(y)` with `x` the `(1,2)` entry and `y`
/// the `(0,1)` entry.
pub fn psi_n(
    ctx: &GroupCtx,
    f: &FieldDescriptor,
    datum: WhittakerDatum,
    n: &Mat,
) -> Complex64 {
    debug_assert!(ctx.subgroup_member(n, SubgroupTag::N));
    let psi1 = AdditiveCharacter { twist: datum.a1 };
    let psi2 = AdditiveCharacter { twist: datum.a2 };
    let x = ctx.lift(f, n[6]);
    let y = ctx.lift(f, n[1]);
    psi1.value(f, x) * psi2.value(f, y)
}

/// The Gelfand–Graev character by Frobenius induction of `ψ_N` from `N`.
pub fn gelfand_graev(
    ctx: &GroupCtx,
    f: &FieldDescriptor,
    enumeration: &GroupEnumeration,
    partition: &ClassPartition,
    datum: WhittakerDatum,
) -> ClassFunction {
    let members = enumerate_subgroup(ctx, enumeration, SubgroupTag::N);
    induce_subgroup_sum(ctx, enumeration, partition, &members, &|m| psi_n(ctx, f, datum, m))
}

/// The five supported rows of the Gelfand–Graev table: family at `k = q−1`
/// with the stated value.
pub fn expected_table(q: u64) -> Vec<(Family, f64)> {
    let qf = q as f64;
    let a = (qf.powi(4) - 1.0) * (qf * qf - 1.0) * (qf - 1.0);
    let b = -(qf * qf - 1.0) * (qf - 1.0);
    vec![
        (Family::A1, a),
        (Family::A2, b),
        (Family::A31, b),
        (Family::A32, b),
        (Family::A5, qf - 1.0),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Genericity {
    Generic,
    NotGeneric,
}

#[derive(Debug, thiserror::Error)]
pub enum WhittakerError {
    #[error("multiplicity of an irreducible in the Gelfand–Graev character is {0}, violating uniqueness")]
    UniquenessViolated(f64),
    #[error(transparent)]
    ClassFn(#[from] crate::classfn::ClassFnError),
}

/// Genericity of an irreducible character: generic iff `(χ, 𝒢) = 1`. A
/// multiplicity outside `{0, 1}` is a hard failure.
pub fn is_generic(
    partition: &ClassPartition,
    chi: &ClassFunction,
    gg: &ClassFunction,
) -> Result<Genericity, WhittakerError> {
    let ip = inner_product(partition, chi, gg)?;
    let m = ip.re;
    if ip.im.abs() > INT_TOL {
        return Err(WhittakerError::UniquenessViolated(m));
    }
    if (m - 0.0).abs() <= INT_TOL {
        Ok(Genericity::NotGeneric)
    } else if (m - 1.0).abs() <= INT_TOL {
        Ok(Genericity::Generic)
    } else {
        Err(WhittakerError::UniquenessViolated(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classfn::integral_inner_product;
    use crate::conjugacy::enumerate_classes;
    use crate::field::FieldDescriptor;
    use crate::group::enumerate_group;

    struct Setup {
        f: FieldDescriptor,
        ctx: GroupCtx,
        e: GroupEnumeration,
        p: ClassPartition,
    }

    fn setup(q: u64) -> Setup {
        let f = FieldDescriptor::new(q, 1).unwrap();
        let ctx = GroupCtx::new(&f).unwrap();
        let e = enumerate_group(&ctx, None).unwrap();
        let p = enumerate_classes(&ctx, &f, &e).unwrap();
        Setup { f, ctx, e, p }
    }

    #[test]
    fn psi_n_is_a_homomorphism_on_n() {
        let s = setup(3);
        let members = enumerate_subgroup(&s.ctx, &s.e, SubgroupTag::N);
        let datum = WhittakerDatum::default();
        for &a in members.iter().step_by(7) {
            for &b in members.iter().step_by(11) {
                let (ma, mb) = (s.ctx.unpack(a), s.ctx.unpack(b));
                let prod = s.ctx.mat_mul(&ma, &mb);
                let lhs = psi_n(&s.ctx, &s.f, datum, &ma) * psi_n(&s.ctx, &s.f, datum, &mb);
                let rhs = psi_n(&s.ctx, &s.f, datum, &prod);
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn table_values_q3() {
        let s = setup(3);
        let gg = gelfand_graev(&s.ctx, &s.f, &s.e, &s.p, WhittakerDatum::default());
        // identity value: (q⁴−1)(q²−1)(q−1) = 80·8·2 = 1280
        let id = s.p.identity_class(&s.ctx, &s.e);
        assert!((gg.values[id].re - 1280.0).abs() < 1e-9);
        for (family, want) in expected_table(3) {
            let idx = s.p.find_label(family, 2, None, None).unwrap();
            let got = gg.values[idx];
            assert!(
                (got - want).norm() < 1e-9,
                "𝒢 at {family:?}(q−1): got {got}, want {want}"
            );
        }
        // concretely: A₅(q−1) ↦ q−1 = 2 and A₂(q−1) ↦ −(q²−1)(q−1) = −16
        let a5 = s.p.find_label(Family::A5, 2, None, None).unwrap();
        assert!((gg.values[a5].re - 2.0).abs() < 1e-9);
        let a2 = s.p.find_label(Family::A2, 2, None, None).unwrap();
        assert!((gg.values[a2].re + 16.0).abs() < 1e-9);
    }

    #[test]
    fn support_is_the_five_table_rows() {
        let s = setup(3);
        let gg = gelfand_graev(&s.ctx, &s.f, &s.e, &s.p, WhittakerDatum::default());
        for (i, c) in s.p.classes.iter().enumerate() {
            let on_table = c.label.k == 2
                && matches!(
                    c.label.family,
                    Family::A1 | Family::A2 | Family::A31 | Family::A32 | Family::A5
                );
            if !on_table {
                assert!(
                    gg.values[i].norm() < 1e-9,
                    "𝒢 should vanish on {}",
                    c.label.display()
                );
            }
        }
    }

    #[test]
    fn self_inner_product_q3() {
        let s = setup(3);
        let gg = gelfand_graev(&s.ctx, &s.f, &s.e, &s.p, WhittakerDatum::default());
        // (𝒢, 𝒢) = q²(q−1) = 18
        assert_eq!(integral_inner_product(&s.p, &gg, &gg).unwrap(), 18);
    }

    #[test]
    fn independent_of_psi_choice() {
        // all (q−1)² twist pairs give the same class function
        let s = setup(3);
        let base = gelfand_graev(&s.ctx, &s.f, &s.e, &s.p, WhittakerDatum::default());
        for a1 in 0..2 {
            for a2 in 0..2 {
                let gg = gelfand_graev(&s.ctx, &s.f, &s.e, &s.p, WhittakerDatum { a1, a2 });
                assert!(base.approx_eq(&gg, 1e-9), "twists ({a1},{a2})");
            }
        }
    }

    #[test]
    fn trivial_character_is_not_generic() {
        let s = setup(3);
        let gg = gelfand_graev(&s.ctx, &s.f, &s.e, &s.p, WhittakerDatum::default());
        let triv = ClassFunction {
            q: 3,
            values: vec![Complex64::new(1.0, 0.0); s.p.len()],
        };
        assert_eq!(is_generic(&s.p, &triv, &gg).unwrap(), Genericity::NotGeneric);
    }

    #[test]
    fn induced_characters_have_generic_mass_one() {
        // every Borel induction, and every Siegel/Klingen induction whose
        // GL(2) datum has degree > 1, contains exactly one generic
        // constituent; with a one-dimensional datum the generic constituent
        // sits in the Steinberg-twist partner and the mass is 0
        let s = setup(3);
        let gg = gelfand_graev(&s.ctx, &s.f, &s.e, &s.p, WhittakerDatum::default());
        let mut specs = crate::parabolic::all_borel_specs(3);
        specs.extend(crate::parabolic::all_siegel_klingen_specs(3));
        for spec in specs {
            let cf = crate::parabolic::closed_form_character(&spec, &s.f, &s.p);
            let m = integral_inner_product(&s.p, &cf, &gg).unwrap();
            let expect = match spec {
                crate::parabolic::InducedSpec::Borel { .. } => 1,
                crate::parabolic::InducedSpec::Siegel { pi, .. }
                | crate::parabolic::InducedSpec::Klingen { pi, .. } => {
                    u64::from(pi.degree(3) > 1)
                }
            };
            assert_eq!(m, expect, "{spec:?}");
        }
    }
}
