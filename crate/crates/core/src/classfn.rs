//! Class functions on `GSp(4, F_q)`, inner products, and brute-force
//! Frobenius induction from enumerable subgroups.
//!
//! Induction comes in two independent forms. The subgroup-intersection sum
//!
//! ```text
//!   (Ind_H^G χ)(C) = |G| / (|C| · |H|) · Σ_{h ∈ H ∩ C} χ(h)
//! ```
//!
//! is a regrouping of the Frobenius formula costing `O(|H|)` and is the
//! default. The literal sum over the whole group,
//!
//! ```text
//!   (Ind_H^G χ)(g) = (1/|H|) Σ_{x ∈ G, x g x⁻¹ ∈ H} χ(x g x⁻¹),
//! ```
//!
//! is kept as a second route and cross-checked against the first in the test
//! suites.

use crate::conjugacy::ClassPartition;
use crate::group::{GroupCtx, GroupEnumeration, Mat};
use num_complex::Complex64;
use serde::Serialize;

/// Tolerance for "this quantity is an integer" assertions.
pub const INT_TOL: f64 = 1e-6;

/// A complex value per conjugacy class, in canonical class order.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    pub q: u64,
    pub values: Vec<Complex64>,
}

#[derive(Debug, thiserror::Error)]
pub enum ClassFnError {
    #[error("class functions live on different partitions ({0} vs {1} classes)")]
    PartitionMismatch(usize, usize),
    #[error("multiplicity {0} of constituent {1} is not a non-negative integer")]
    NonIntegerMultiplicity(f64, usize),
}

impl ClassFunction {
    pub fn zero(partition: &ClassPartition) -> ClassFunction {
        ClassFunction { q: partition.q, values: vec![Complex64::new(0.0, 0.0); partition.len()] }
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.values.len(), other.values.len());
        ClassFunction {
            q: self.q,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.values.len(), other.values.len());
        ClassFunction {
            q: self.q,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> ClassFunction {
        ClassFunction { q: self.q, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn max_abs_diff(&self, other: &ClassFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ClassFunction, tol: f64) -> bool {
        self.values.len() == other.values.len() && self.max_abs_diff(other) <= tol
    }
}

/// `(f, g) = (1/|G|) Σ_C |C| f(C) conj(g(C))`.
pub fn inner_product(
    partition: &ClassPartition,
    f: &ClassFunction,
    g: &ClassFunction,
) -> Result<Complex64, ClassFnError> {
    if f.values.len() != partition.len() || g.values.len() != partition.len() {
        return Err(ClassFnError::PartitionMismatch(f.values.len(), g.values.len()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, (fv, gv)) in partition.classes.iter().zip(f.values.iter().zip(&g.values)) {
        acc += fv * gv.conj() * c.size as f64;
    }
    Ok(acc / partition.group_order as f64)
}

/// Inner product that must come out a non-negative integer (within
/// [`INT_TOL`]); returns it rounded.
pub fn integral_inner_product(
    partition: &ClassPartition,
    f: &ClassFunction,
    g: &ClassFunction,
) -> Result<u64, ClassFnError> {
    let v = inner_product(partition, f, g)?;
    let rounded = v.re.round();
    if v.im.abs() > INT_TOL || (v.re - rounded).abs() > INT_TOL || rounded < 0.0 {
        return Err(ClassFnError::NonIntegerMultiplicity(v.re, usize::MAX));
    }
    Ok(rounded as u64)
}

/// Induces a subgroup class function by summing over the subgroup members,
/// grouped by the ambient class.
pub fn induce_subgroup_sum(
    ctx: &GroupCtx,
    enumeration: &GroupEnumeration,
    partition: &ClassPartition,
    members: &[u64],
    eval: &dyn Fn(&Mat) -> Complex64,
) -> ClassFunction {
    let mut acc = vec![Complex64::new(0.0, 0.0); partition.len()];
    for &v in members {
        let idx = enumeration.index_of_packed(v).expect("member of the group");
        let cls = partition.class_of[idx] as usize;
        acc[cls] += eval(&ctx.unpack(v));
    }
    let g_order = partition.group_order as f64;
    let h_order = members.len() as f64;
    let values = acc
        .iter()
        .zip(&partition.classes)
        .map(|(a, c)| a * (g_order / (c.size as f64 * h_order)))
        .collect();
    ClassFunction { q: partition.q, values }
}

/// The literal Frobenius sum over the whole group, per class representative.
/// `eval` returns `None` off the subgroup. `h_order` is `|H|`.
pub fn induce_full_sum(
    ctx: &GroupCtx,
    enumeration: &GroupEnumeration,
    partition: &ClassPartition,
    h_order: u64,
    eval: &dyn Fn(&Mat) -> Option<Complex64>,
) -> ClassFunction {
    let values = partition
        .classes
        .iter()
        .map(|c| {
            let g = ctx.unpack(c.rep);
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..enumeration.len() {
                let x = enumeration.get(ctx, i);
                let conj = ctx.conjugate(&x, &g, &ctx.inverse(&x));
                if let Some(v) = eval(&conj) {
                    acc += v;
                }
            }
            acc / h_order as f64
        })
        .collect();
    ClassFunction { q: partition.q, values }
}

/// Decomposition of a (virtual) character into the rows of an irreducible
/// table: multiplicities by inner product, each checked to be a non-negative
/// integer.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    /// `(irreducible index, multiplicity)`, multiplicity > 0 only.
    pub constituents: Vec<(usize, u64)>,
}

impl Decomposition {
    pub fn norm_sq(&self) -> u64 {
        self.constituents.iter().map(|&(_, m)| m * m).sum()
    }

    pub fn multiplicity(&self, idx: usize) -> u64 {
        self.constituents
            .iter()
            .find(|&&(i, _)| i == idx)
            .map(|&(_, m)| m)
            .unwrap_or(0)
    }
}

pub fn decompose(
    partition: &ClassPartition,
    f: &ClassFunction,
    irreducibles: &[ClassFunction],
) -> Result<Decomposition, ClassFnError> {
    let mut constituents = Vec::new();
    for (i, chi) in irreducibles.iter().enumerate() {
        let v = inner_product(partition, f, chi)?;
        let rounded = v.re.round();
        if v.im.abs() > INT_TOL || (v.re - rounded).abs() > INT_TOL || rounded < 0.0 {
            return Err(ClassFnError::NonIntegerMultiplicity(v.re, i));
        }
        if rounded > 0.0 {
            constituents.push((i, rounded as u64));
        }
    }
    Ok(Decomposition { constituents })
}

/// JSON export of a class function: label → [re, im] pairs.
#[derive(Debug, Serialize)]
pub struct ClassFunctionExport {
    pub schema: u32,
    pub q: u64,
    pub values: Vec<(String, [f64; 2])>,
}

pub fn export_class_function(partition: &ClassPartition, f: &ClassFunction) -> ClassFunctionExport {
    ClassFunctionExport {
        schema: 1,
        q: partition.q,
        values: partition
            .classes
            .iter()
            .zip(&f.values)
            .map(|(c, v)| (c.label.display(), [v.re, v.im]))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::enumerate_classes;
    use crate::field::FieldDescriptor;
    use crate::group::{enumerate_group, enumerate_subgroup, SubgroupTag};

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

    fn trivial(p: &ClassPartition) -> ClassFunction {
        ClassFunction { q: p.q, values: vec![Complex64::new(1.0, 0.0); p.len()] }
    }

    #[test]
    fn trivial_has_unit_norm() {
        let s = setup(3);
        let t = trivial(&s.p);
        let ip = inner_product(&s.p, &t, &t).unwrap();
        assert!((ip - 1.0).norm() < 1e-9);
        assert_eq!(integral_inner_product(&s.p, &t, &t).unwrap(), 1);
    }

    #[test]
    fn induced_trivial_from_borel_has_degree_160() {
        let s = setup(3);
        let members = enumerate_subgroup(&s.ctx, &s.e, SubgroupTag::B);
        let ind = induce_subgroup_sum(&s.ctx, &s.e, &s.p, &members, &|_| Complex64::new(1.0, 0.0));
        let id = s.p.identity_class(&s.ctx, &s.e);
        assert!((ind.values[id].re - 160.0).abs() < 1e-9);
        // induced function is a character: self inner product is a positive integer
        let n = integral_inner_product(&s.p, &ind, &ind).unwrap();
        assert!(n >= 1);
        // degree formula: Ind f(1) = [G:H]·f(1) exactly
        assert_eq!((s.e.len() / members.len()) as f64, ind.values[id].re);
    }

    #[test]
    fn full_sum_route_agrees_with_subgroup_sum() {
        let s = setup(3);
        let members = enumerate_subgroup(&s.ctx, &s.e, SubgroupTag::B);
        let h_order = members.len() as u64;
        // a nontrivial Borel character: χ₁ = χ_1, χ₂ = triv, σ = triv
        let f = &s.f;
        let ctx = &s.ctx;
        let chi = move |m: &Mat| -> Option<Complex64> {
            let coords = ctx.decompose_borel(m).ok()?;
            let k = ctx.dlog(coords.a);
            Some(crate::field::root_of_unity(k, f.q as i64 - 1))
        };
        let by_members =
            induce_subgroup_sum(ctx, &s.e, &s.p, &members, &|m| chi(m).expect("member"));
        let by_full = induce_full_sum(ctx, &s.e, &s.p, h_order, &chi);
        assert!(by_members.approx_eq(&by_full, 1e-6));
    }

    #[test]
    fn induction_is_additive() {
        let s = setup(3);
        let members = enumerate_subgroup(&s.ctx, &s.e, SubgroupTag::Q);
        let ctx = &s.ctx;
        let fq = s.f.q as i64;
        let eval1 = |m: &Mat| {
            let c = ctx.decompose_klingen(m).unwrap();
            crate::field::root_of_unity(ctx.dlog(c.t), fq - 1)
        };
        let eval2 = |m: &Mat| {
            let c = ctx.decompose_klingen(m).unwrap();
            crate::field::root_of_unity(2 * ctx.dlog(c.t), fq - 1)
        };
        let sum_eval = |m: &Mat| eval1(m) + eval2(m);
        let a = induce_subgroup_sum(ctx, &s.e, &s.p, &members, &eval1);
        let b = induce_subgroup_sum(ctx, &s.e, &s.p, &members, &eval2);
        let ab = induce_subgroup_sum(ctx, &s.e, &s.p, &members, &sum_eval);
        assert!(ab.approx_eq(&a.add(&b), 1e-9));
    }

    #[test]
    fn inner_product_positivity() {
        let s = setup(3);
        let z = ClassFunction::zero(&s.p);
        assert!(inner_product(&s.p, &z, &z).unwrap().norm() < 1e-12);
        let t = trivial(&s.p);
        let d = t.sub(&t.scale(0.5));
        let ip = inner_product(&s.p, &d, &d).unwrap();
        assert!(ip.re > 0.0);
    }

    #[test]
    fn partition_mismatch_is_an_error() {
        let s = setup(3);
        let t = trivial(&s.p);
        let short = ClassFunction { q: 3, values: vec![Complex64::new(1.0, 0.0); 3] };
        assert!(inner_product(&s.p, &t, &short).is_err());
    }
}
