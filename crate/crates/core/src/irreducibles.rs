//! The complete irreducible character table of `GSp(4, F_q)` from the class
//! algebra, genericity marks, the reference inventory of dimension formulas,
//! and verification of the decompositions of the induced representations into
//! the groups I–XI.

use crate::chartab::{
    solve_characters, solve_characters_from_class_matrices, structure_constants,
    StructureConstants,
};
use crate::classfn::{decompose, inner_product, ClassFunction, Decomposition, INT_TOL};
use crate::conjugacy::{ClassPartition, Family};
use crate::field::FieldDescriptor;
use crate::gl2::GL2Character;
use crate::group::{GroupCtx, GroupEnumeration};
use crate::parabolic::{borel_irreducible, closed_form_character, InducedSpec};
use crate::whittaker::{is_generic, Genericity};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error(transparent)]
    Solve(#[from] crate::chartab::SolveError),
    #[error(transparent)]
    ClassFn(#[from] crate::classfn::ClassFnError),
    #[error(transparent)]
    Whittaker(#[from] crate::whittaker::WhittakerError),
    #[error("character table validation failed: {0}")]
    Validation(String),
    #[error("family decomposition mismatch: {0}")]
    FamilyMismatch(String),
}

/// The solved irreducible character table.
pub struct IrreducibleTable {
    pub q: u64,
    /// One class function per irreducible, rows sorted by degree then values.
    pub chars: Vec<ClassFunction>,
    pub degrees: Vec<u64>,
    /// Genericity marks (multiplicity in the Gelfand–Graev character).
    pub generic: Vec<bool>,
    /// Best-effort inventory names (`None` when the fingerprint is ambiguous
    /// beyond repair; joined with `|` when several families share it).
    pub annotations: Vec<Option<String>>,
}

/// Default seed for the eigensolver's random combinations.
pub const DEFAULT_SEED: u64 = 0x5eed_0001;

/// Structure constants of the class algebra of the enumerated group.
pub fn gsp4_structure_constants(
    ctx: &GroupCtx,
    enumeration: &GroupEnumeration,
    partition: &ClassPartition,
) -> StructureConstants {
    let n = enumeration.len();
    let reps: Vec<usize> = partition
        .classes
        .iter()
        .map(|c| enumeration.index_of_packed(c.rep).unwrap())
        .collect();
    let mul_index = |a: usize, b: usize| -> usize {
        let m = ctx.mat_mul(&enumeration.get(ctx, a), &enumeration.get(ctx, b));
        enumeration.index_of(ctx, &m).unwrap()
    };
    let inv_index = |a: usize| -> usize {
        enumeration.index_of(ctx, &ctx.inverse(&enumeration.get(ctx, a))).unwrap()
    };
    structure_constants(n, &partition.class_of, &reps, &mul_index, &inv_index)
}

/// Solves the table and attaches genericity marks and annotations.
pub fn solve_table(
    ctx: &GroupCtx,
    enumeration: &GroupEnumeration,
    partition: &ClassPartition,
    sc: &StructureConstants,
    gg: &ClassFunction,
    seed: u64,
) -> Result<IrreducibleTable, TableError> {
    let sizes: Vec<u64> = partition.classes.iter().map(|c| c.size).collect();
    let id_class = partition.identity_class(ctx, enumeration);
    let solved = solve_characters(sc, &sizes, id_class, seed)?;
    finish_table(partition, solved, gg)
}

/// Solves the table from the class-multiplication matrices of the smallest
/// classes only, escalating the selection until the characters separate.
/// This keeps the `q = 5` table affordable: full structure constants need a
/// pass over all 3.7×10⁷ elements per class, while the matrices of the small
/// classes come from their member lists.
pub fn solve_table_from_small_classes(
    ctx: &GroupCtx,
    enumeration: &GroupEnumeration,
    partition: &ClassPartition,
    gg: &ClassFunction,
    seed: u64,
    initial_member_budget: u64,
) -> Result<IrreducibleTable, TableError> {
    use std::collections::HashMap;
    let r = partition.len();
    let sizes: Vec<u64> = partition.classes.iter().map(|c| c.size).collect();
    let id_class = partition.identity_class(ctx, enumeration);
    // packed element → class index, for constant-time classification
    let clsmap: HashMap<u64, u32> = enumeration
        .packed()
        .iter()
        .zip(&partition.class_of)
        .map(|(&v, &c)| (v, c))
        .collect();
    let reps: Vec<crate::group::Mat> =
        partition.classes.iter().map(|c| ctx.unpack(c.rep)).collect();

    // Selection order: round-robin across the (family, multiplier) strata,
    // cheapest class of each stratum first. Size alone is not enough:
    // characters differing by a multiplier twist agree on a whole multiplier
    // stratum, and torus-parameterized families are separated chiefly by the
    // (large) regular classes of their own family, so every family must be
    // represented early.
    let order: Vec<usize> = {
        let mut strata: std::collections::BTreeMap<(Family, i64), Vec<usize>> = Default::default();
        for (i, c) in partition.classes.iter().enumerate() {
            strata
                .entry((c.label.family, c.fingerprint.multiplier_dlog % 2))
                .or_default()
                .push(i);
        }
        let strata: Vec<Vec<usize>> = strata
            .into_values()
            .map(|mut v| {
                v.sort_by_key(|&i| (sizes[i], i));
                v
            })
            .collect();
        let mut order = Vec::with_capacity(r);
        let mut depth = 0usize;
        while order.len() < r {
            for s in &strata {
                if depth < s.len() {
                    order.push(s[depth]);
                }
            }
            depth += 1;
        }
        order
    };
    let rank_of: Vec<usize> = {
        let mut v = vec![0usize; r];
        for (rank, &i) in order.iter().enumerate() {
            v[i] = rank;
        }
        v
    };

    // member lists of the selectable classes, collected in one pass
    let max_selectable = {
        let mut total = 0u64;
        let mut count = 0usize;
        for &i in &order {
            total += sizes[i];
            count += 1;
            if total >= initial_member_budget.saturating_mul(64) && count >= 16 {
                break;
            }
        }
        count
    };
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); max_selectable];
    for (idx, &cls) in partition.class_of.iter().enumerate() {
        let rank = rank_of[cls as usize];
        if rank < max_selectable {
            members[rank].push(idx as u32);
        }
    }

    let class_matrix = |rank: usize| -> Vec<u64> {
        let mut mat = vec![0u64; r * r];
        for &idx in &members[rank] {
            let x_inv = ctx.inverse(&enumeration.get(ctx, idx as usize));
            for (k, zk) in reps.iter().enumerate() {
                let y = ctx.mat_mul(&x_inv, zk);
                let j = clsmap[&ctx.pack(&y)] as usize;
                mat[j * r + k] += 1;
            }
        }
        mat
    };

    let mut mats: Vec<Vec<u64>> = Vec::new();
    let mut taken = 0usize;
    let mut member_total = 0u64;
    let mut budget = initial_member_budget;
    loop {
        while taken < max_selectable && (member_total < budget || mats.len() < 16) {
            mats.push(class_matrix(taken));
            member_total += sizes[order[taken]];
            taken += 1;
        }
        match solve_characters_from_class_matrices(&mats, &sizes, id_class, seed) {
            Ok(solved) => return finish_table(partition, solved, gg),
            Err(crate::chartab::SolveError::SeparationFailed(_)) if taken < max_selectable => {
                eprintln!(
                    "class-matrix solve: spectrum not separated by {} matrices ({} members); extending",
                    mats.len(),
                    member_total
                );
                budget = budget.saturating_mul(4);
            }
            Err(e) => return Err(e.into()),
        }
    }
}

fn finish_table(
    partition: &ClassPartition,
    solved: crate::chartab::SolvedTable,
    gg: &ClassFunction,
) -> Result<IrreducibleTable, TableError> {
    let chars: Vec<ClassFunction> = solved
        .chars
        .into_iter()
        .map(|values| ClassFunction { q: partition.q, values })
        .collect();
    let degrees = solved.degrees;

    validate(partition, &chars, &degrees)?;

    let mut generic = Vec::with_capacity(chars.len());
    for chi in &chars {
        generic.push(matches!(is_generic(partition, chi, gg)?, Genericity::Generic));
    }

    let minus_one_class = partition
        .find_label(Family::A1, (partition.q as i64 - 1) / 2, None, None)
        .expect("central class of −I");
    let annotations = chars
        .iter()
        .zip(degrees.iter().zip(&generic))
        .map(|(chi, (&d, &g))| {
            let omega_m1 = chi.values[minus_one_class].re / d as f64;
            let sign = if omega_m1 > 0.0 { 1i8 } else { -1 };
            annotate(partition.q, d, sign, g)
        })
        .collect();

    Ok(IrreducibleTable { q: partition.q, chars, degrees, generic, annotations })
}

fn validate(
    partition: &ClassPartition,
    chars: &[ClassFunction],
    degrees: &[u64],
) -> Result<(), TableError> {
    let r = partition.len();
    if chars.len() != r {
        return Err(TableError::Validation(format!("{} characters for {r} classes", chars.len())));
    }
    let sum_sq: u64 = degrees.iter().map(|d| d * d).sum();
    if sum_sq != partition.group_order {
        return Err(TableError::Validation(format!(
            "Σ deg² = {sum_sq} ≠ |G| = {}",
            partition.group_order
        )));
    }
    // row orthonormality within 1e−6
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            let ip = inner_product(partition, a, b)?;
            let expect = if i == j { 1.0 } else { 0.0 };
            if (ip - expect).norm() > 1e-6 {
                return Err(TableError::Validation(format!(
                    "row orthonormality fails at ({i},{j}): {ip}"
                )));
            }
        }
    }
    // column orthogonality within 1e−4
    for c1 in 0..r {
        for c2 in 0..r {
            let mut acc = Complex64::new(0.0, 0.0);
            for chi in chars {
                acc += chi.values[c1] * chi.values[c2].conj();
            }
            let expect = if c1 == c2 {
                partition.group_order as f64 / partition.classes[c1].size as f64
            } else {
                0.0
            };
            if (acc - expect).norm() > 1e-4 {
                return Err(TableError::Validation(format!(
                    "column orthogonality fails at ({c1},{c2}): {acc} vs {expect}"
                )));
            }
        }
    }
    Ok(())
}

impl IrreducibleTable {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn generic_count(&self) -> usize {
        self.generic.iter().filter(|&&g| g).count()
    }

    /// Index of the trivial character.
    pub fn trivial_index(&self) -> usize {
        self.chars
            .iter()
            .position(|c| c.values.iter().all(|v| (v - 1.0).norm() < INT_TOL))
            .expect("trivial character present")
    }
}

// ---------------------------------------------------------------------------
// The reference inventory: dimension formulas of the irreducible characters
// ---------------------------------------------------------------------------

/// One family of the irreducible-character inventory: name, dimension formula,
/// genericity, the sign `α(−1)` when it is pinned (`None` when both occur),
/// and whether the family is nonempty at a given `q`.
pub struct InventoryFamily {
    pub name: &'static str,
    pub dim: fn(i64) -> i64,
    pub generic: bool,
    pub alpha_sign: Option<i8>,
    pub present: fn(i64) -> bool,
}

fn always(_q: i64) -> bool {
    true
}
fn needs_t1(q: i64) -> bool {
    q >= 5
}
fn needs_t1_pair(q: i64) -> bool {
    (q - 3) / 2 >= 2
}
fn needs_t2_pair(q: i64) -> bool {
    (q - 1) / 2 >= 2
}

/// The inventory of nontrivial irreducible character families (dimension
/// column), plus the two one-dimensional characters per `α`-choice which the
/// table leaves implicit.
pub fn inventory() -> Vec<InventoryFamily> {
    vec![
        InventoryFamily { name: "chi1", dim: |q| (q * q - 1) * (q * q - 1), generic: true, alpha_sign: None, present: always },
        InventoryFamily { name: "chi2", dim: |q| q * q * q * q - 1, generic: true, alpha_sign: None, present: always },
        InventoryFamily { name: "chi3", dim: |q| (q * q + 1) * (q + 1) * (q + 1), generic: true, alpha_sign: None, present: needs_t1_pair },
        InventoryFamily { name: "chi4", dim: |q| (q * q + 1) * (q - 1) * (q - 1), generic: true, alpha_sign: None, present: needs_t2_pair },
        InventoryFamily { name: "chi5", dim: |q| q * q * q * q - 1, generic: true, alpha_sign: None, present: needs_t1 },
        InventoryFamily { name: "chi6", dim: |q| (q * q + 1) * (q - 1), generic: false, alpha_sign: Some(1), present: always },
        InventoryFamily { name: "chi7", dim: |q| q * (q * q + 1) * (q - 1), generic: true, alpha_sign: Some(1), present: always },
        InventoryFamily { name: "chi8", dim: |q| (q * q + 1) * (q + 1), generic: false, alpha_sign: Some(1), present: needs_t1 },
        InventoryFamily { name: "chi9", dim: |q| q * (q * q + 1) * (q + 1), generic: true, alpha_sign: Some(1), present: needs_t1 },
        InventoryFamily { name: "xi1", dim: |q| (q * q + 1) * (q - 1), generic: false, alpha_sign: None, present: always },
        InventoryFamily { name: "xi1'", dim: |q| q * (q * q + 1) * (q - 1), generic: true, alpha_sign: None, present: always },
        InventoryFamily { name: "xi21", dim: |q| q * q * q * q - 1, generic: true, alpha_sign: None, present: always },
        InventoryFamily { name: "xi21'", dim: |q| (q * q + 1) * (q - 1) * (q - 1), generic: true, alpha_sign: None, present: always },
        InventoryFamily { name: "xi3", dim: |q| (q * q + 1) * (q + 1), generic: false, alpha_sign: None, present: needs_t1 },
        InventoryFamily { name: "xi3'", dim: |q| q * (q * q + 1) * (q + 1), generic: true, alpha_sign: None, present: needs_t1 },
        InventoryFamily { name: "xi41", dim: |q| (q * q + 1) * (q + 1) * (q + 1), generic: true, alpha_sign: None, present: needs_t1 },
        InventoryFamily { name: "xi41'", dim: |q| q * q * q * q - 1, generic: true, alpha_sign: None, present: needs_t1 },
        InventoryFamily { name: "Phi1", dim: |q| (q * q + 1) * (q - 1), generic: false, alpha_sign: None, present: always },
        InventoryFamily { name: "Phi3", dim: |q| q * (q * q + 1) * (q - 1), generic: true, alpha_sign: None, present: always },
        InventoryFamily { name: "Phi5", dim: |q| (q * q + 1) * (q + 1), generic: false, alpha_sign: None, present: always },
        InventoryFamily { name: "Phi7", dim: |q| q * (q * q + 1) * (q + 1), generic: true, alpha_sign: None, present: always },
        InventoryFamily { name: "Phi9", dim: |q| q * (q * q + 1), generic: false, alpha_sign: Some(1), present: always },
        InventoryFamily { name: "theta1", dim: |q| q * q * (q * q + 1), generic: true, alpha_sign: Some(1), present: always },
        InventoryFamily { name: "theta3", dim: |q| q * q + 1, generic: false, alpha_sign: Some(1), present: always },
        InventoryFamily { name: "theta5", dim: |q| q * q * (q * q - 1), generic: true, alpha_sign: Some(-1), present: always },
        InventoryFamily { name: "theta7", dim: |q| q * q - 1, generic: false, alpha_sign: Some(-1), present: always },
        InventoryFamily { name: "theta9", dim: |q| q * (q + 1) * (q + 1) / 2, generic: false, alpha_sign: Some(1), present: always },
        InventoryFamily { name: "theta10", dim: |q| q * (q - 1) * (q - 1) / 2, generic: false, alpha_sign: Some(1), present: always },
        InventoryFamily { name: "theta11", dim: |q| q * (q * q + 1) / 2, generic: false, alpha_sign: Some(1), present: always },
        InventoryFamily { name: "theta12", dim: |q| q * (q * q + 1) / 2, generic: false, alpha_sign: Some(1), present: always },
        InventoryFamily { name: "theta13", dim: |q| q * q * q * q, generic: true, alpha_sign: Some(1), present: always },
        InventoryFamily { name: "one-dim", dim: |_| 1, generic: false, alpha_sign: Some(1), present: always },
    ]
}

/// The set of dimension values of the families instantiable at `q`.
pub fn expected_degree_set(q: u64) -> std::collections::BTreeSet<u64> {
    let qi = q as i64;
    inventory()
        .iter()
        .filter(|fam| (fam.present)(qi))
        .map(|fam| (fam.dim)(qi) as u64)
        .collect()
}

fn annotate(q: u64, degree: u64, alpha_sign: i8, generic: bool) -> Option<String> {
    let qi = q as i64;
    let names: Vec<&str> = inventory()
        .iter()
        .filter(|fam| {
            (fam.present)(qi)
                && (fam.dim)(qi) as u64 == degree
                && fam.generic == generic
                && fam.alpha_sign.is_none_or(|s| s == alpha_sign)
        })
        .map(|fam| fam.name)
        .collect();
    if names.is_empty() {
        None
    } else {
        Some(names.join("|"))
    }
}

// ---------------------------------------------------------------------------
// Family decompositions (groups I–XI)
// ---------------------------------------------------------------------------

/// Whether `ξπ ≅ π` for the nontrivial quadratic `ξ` and a cuspidal with
/// parameter exponent `n`: `n(q−1) ≡ (q²−1)/2 (mod q²−1)`.
pub fn xi_twist_fixes_cuspidal(q: u64, pi: &GL2Character) -> bool {
    match pi {
        GL2Character::Cuspidal { n } => {
            let q2m1 = (q * q) as i64 - 1;
            (n * (q as i64 - 1) - q2m1 / 2).rem_euclid(q2m1) == 0
        }
        _ => false,
    }
}

/// One verified decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyCase {
    pub group: &'static str,
    pub spec: String,
    /// Constituent degrees with multiplicity (degree repeated).
    pub constituent_degrees: Vec<u64>,
    pub norm_sq: u64,
    pub generic_constituents: usize,
}

/// Report for `verify_family_decompositions`.
#[derive(Debug, Default, Serialize)]
pub struct FamilyReport {
    pub cases: Vec<FamilyCase>,
}

fn degrees_of(
    table: &IrreducibleTable,
    dec: &Decomposition,
) -> (Vec<u64>, usize) {
    let mut degs = Vec::new();
    let mut generics = 0;
    for &(idx, mult) in &dec.constituents {
        for _ in 0..mult {
            degs.push(table.degrees[idx]);
        }
        if table.generic[idx] {
            generics += 1;
        }
    }
    degs.sort_unstable();
    (degs, generics)
}

fn check_case(
    report: &mut FamilyReport,
    table: &IrreducibleTable,
    partition: &ClassPartition,
    f: &FieldDescriptor,
    group: &'static str,
    spec: InducedSpec,
    expect_degrees: &mut Vec<u64>,
    expect_norm: u64,
) -> Result<(), TableError> {
    let cf = closed_form_character(&spec, f, partition);
    let dec = decompose(partition, &cf, &table.chars)?;
    let (degs, generics) = degrees_of(table, &dec);
    expect_degrees.sort_unstable();
    if degs != *expect_degrees {
        return Err(TableError::FamilyMismatch(format!(
            "group {group} {spec:?}: constituent degrees {degs:?}, expected {expect_degrees:?}"
        )));
    }
    if dec.norm_sq() != expect_norm {
        return Err(TableError::FamilyMismatch(format!(
            "group {group} {spec:?}: norm {} ≠ {expect_norm}",
            dec.norm_sq()
        )));
    }
    if generics != 1 {
        return Err(TableError::FamilyMismatch(format!(
            "group {group} {spec:?}: {generics} generic constituents, expected exactly 1"
        )));
    }
    report.cases.push(FamilyCase {
        group,
        spec: format!("{spec:?}"),
        constituent_degrees: degs,
        norm_sq: dec.norm_sq(),
        generic_constituents: generics,
    });
    Ok(())
}

/// Verifies the constituent structure of every induced representation against
/// the groups I–XI: constituent counts, dimensions, and the genericity
/// pattern. Only the groups instantiable at the given `q` produce cases.
pub fn verify_family_decompositions(
    table: &IrreducibleTable,
    partition: &ClassPartition,
    f: &FieldDescriptor,
) -> Result<FamilyReport, TableError> {
    let q = partition.q;
    let qi = q as i64;
    let qm1 = qi - 1;
    let t = qm1 / 2;
    let mut report = FamilyReport::default();

    // Group I: irreducible Borel inductions
    for m1 in 0..qm1 {
        for m2 in 0..qm1 {
            if !borel_irreducible(q, m1, m2) {
                continue;
            }
            let spec = InducedSpec::Borel { m1, m2, ms: 0 };
            let mut expect = vec![(qi * qi + 1) as u64 * ((qi + 1) * (qi + 1)) as u64];
            check_case(&mut report, table, partition, f, "I", spec, &mut expect, 1)?;
        }
    }
    // Group II: χ × χ ⋊ σ with χ² ≠ 1
    for m in 0..qm1 {
        if m == 0 || (2 * m).rem_euclid(qm1) == 0 {
            continue;
        }
        let spec = InducedSpec::Borel { m1: m, m2: m, ms: 0 };
        let mut expect = vec![
            (qi * (qi * qi + 1) * (qi + 1)) as u64,
            ((qi * qi + 1) * (qi + 1)) as u64,
        ];
        check_case(&mut report, table, partition, f, "II", spec, &mut expect, 2)?;
    }
    // Group III: χ × 1 ⋊ σ for every χ ≠ 1 (the quadratic χ = ξ included)
    for m in 1..qm1 {
        let spec = InducedSpec::Borel { m1: m, m2: 0, ms: 0 };
        let mut expect = vec![
            (qi * (qi * qi + 1) * (qi + 1)) as u64,
            ((qi * qi + 1) * (qi + 1)) as u64,
        ];
        check_case(&mut report, table, partition, f, "III", spec, &mut expect, 2)?;
    }
    // Group V: ξ × ξ ⋊ σ with ξ the quadratic character
    {
        let spec = InducedSpec::Borel { m1: t, m2: t, ms: 0 };
        let mut expect = vec![
            (qi * qi * (qi * qi + 1)) as u64,
            (qi * (qi * qi + 1)) as u64,
            (qi * (qi * qi + 1)) as u64,
            (qi * qi + 1) as u64,
        ];
        check_case(&mut report, table, partition, f, "V", spec, &mut expect, 4)?;
        // only the largest constituent is generic
        let cf = closed_form_character(&spec, f, partition);
        let dec = decompose(partition, &cf, &table.chars)?;
        for &(idx, _) in &dec.constituents {
            let d = table.degrees[idx];
            let expect_gen = d == (qi * qi * (qi * qi + 1)) as u64;
            if table.generic[idx] != expect_gen {
                return Err(TableError::FamilyMismatch(format!(
                    "group V constituent of degree {d}: genericity {}",
                    table.generic[idx]
                )));
            }
        }
    }
    // Group VI*: 1 × 1 ⋊ σ, six constituents with the half-degree character twice
    {
        let spec = InducedSpec::Borel { m1: 0, m2: 0, ms: 0 };
        let cf = closed_form_character(&spec, f, partition);
        let dec = decompose(partition, &cf, &table.chars)?;
        if dec.norm_sq() != 8 {
            return Err(TableError::FamilyMismatch(format!(
                "group VI*: norm {} ≠ 8",
                dec.norm_sq()
            )));
        }
        let (degs, _) = degrees_of(table, &dec);
        let mut expect = vec![
            (qi * qi * qi * qi) as u64,
            (qi * (qi + 1) * (qi + 1) / 2) as u64,
            (qi * (qi + 1) * (qi + 1) / 2) as u64,
            (qi * (qi * qi + 1) / 2) as u64,
            (qi * (qi * qi + 1) / 2) as u64,
            1,
        ];
        expect.sort_unstable();
        if degs != expect {
            return Err(TableError::FamilyMismatch(format!(
                "group VI*: degrees {degs:?} ≠ {expect:?}"
            )));
        }
        // the ½q(q+1)² constituent occurs with multiplicity 2
        let half = (qi * (qi + 1) * (qi + 1) / 2) as u64;
        let with_mult2: Vec<_> = dec
            .constituents
            .iter()
            .filter(|&&(idx, m)| table.degrees[idx] == half && m == 2)
            .collect();
        if with_mult2.len() != 1 {
            return Err(TableError::FamilyMismatch(
                "group VI*: the half-degree constituent must occur with multiplicity 2".into(),
            ));
        }
        // the Steinberg (degree q⁴) is generic, the trivial is not
        for &(idx, _) in &dec.constituents {
            let d = table.degrees[idx];
            if d == (qi * qi * qi * qi) as u64 && !table.generic[idx] {
                return Err(TableError::FamilyMismatch("Steinberg must be generic".into()));
            }
            if d == 1 && table.generic[idx] {
                return Err(TableError::FamilyMismatch("the trivial character is not generic".into()));
            }
        }
        report.cases.push(FamilyCase {
            group: "VI*",
            spec: format!("{spec:?}"),
            constituent_degrees: degs,
            norm_sq: 8,
            generic_constituents: 1,
        });
    }
    // Klingen groups VII, VIII, IX
    for pi in crate::gl2::gl2_irreducibles(q) {
        if !matches!(pi, GL2Character::Cuspidal { .. }) {
            continue;
        }
        let xi_fixes = xi_twist_fixes_cuspidal(q, &pi);
        for mchi in 0..qm1 {
            let spec = InducedSpec::Klingen { mchi, pi };
            let chi_trivial = mchi == 0;
            let chi_is_quadratic = mchi == t;
            if chi_trivial {
                // VIII: 1 ⋊ π splits into {q(q²+1)(q−1), (q²+1)(q−1)}
                let mut expect = vec![
                    (qi * (qi * qi + 1) * (qi - 1)) as u64,
                    ((qi * qi + 1) * (qi - 1)) as u64,
                ];
                check_case(&mut report, table, partition, f, "VIII", spec, &mut expect, 2)?;
            } else if chi_is_quadratic && xi_fixes {
                // IX: ξ ⋊ π splits into {q²(q²−1), q²−1}
                let mut expect = vec![
                    (qi * qi * (qi * qi - 1)) as u64,
                    (qi * qi - 1) as u64,
                ];
                check_case(&mut report, table, partition, f, "IX", spec, &mut expect, 2)?;
            } else {
                // VII: irreducible
                let mut expect = vec![(qi * qi * qi * qi - 1) as u64];
                check_case(&mut report, table, partition, f, "VII", spec, &mut expect, 1)?;
            }
        }
    }
    // Siegel groups X, XI
    for pi in crate::gl2::gl2_irreducibles(q) {
        if !matches!(pi, GL2Character::Cuspidal { .. }) {
            continue;
        }
        let omega_trivial = pi.has_trivial_central_character(q);
        for ms in 0..qm1 {
            let spec = InducedSpec::Siegel { pi, ms };
            if omega_trivial {
                // XI: splits into {q(q²+1)(q−1), (q²+1)(q−1)}
                let mut expect = vec![
                    (qi * (qi * qi + 1) * (qi - 1)) as u64,
                    ((qi * qi + 1) * (qi - 1)) as u64,
                ];
                check_case(&mut report, table, partition, f, "XI", spec, &mut expect, 2)?;
            } else {
                // X: irreducible iff ω_π ≠ 1
                let mut expect = vec![(qi * qi * qi * qi - 1) as u64];
                check_case(&mut report, table, partition, f, "X", spec, &mut expect, 1)?;
            }
        }
    }
    Ok(report)
}

/// The set of irreducibles occurring in some induced character from B, P or
/// Q; the complement is the cuspidal inventory.
pub fn noncuspidal_indices(
    table: &IrreducibleTable,
    partition: &ClassPartition,
    f: &FieldDescriptor,
) -> Result<Vec<bool>, TableError> {
    let mut hit = vec![false; table.len()];
    let mut specs = crate::parabolic::all_borel_specs(partition.q);
    specs.extend(crate::parabolic::all_siegel_klingen_specs(partition.q));
    for spec in specs {
        let cf = closed_form_character(&spec, f, partition);
        let dec = decompose(partition, &cf, &table.chars)?;
        for (idx, _) in dec.constituents {
            hit[idx] = true;
        }
    }
    Ok(hit)
}

// ---------------------------------------------------------------------------
// Exports
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct IrreducibleTableExport {
    pub schema: u32,
    pub q: u64,
    pub class_labels: Vec<String>,
    pub degrees: Vec<u64>,
    pub generic: Vec<bool>,
    pub annotations: Vec<Option<String>>,
    /// `values[t][k] = [re, im]` of character `t` on class `k`.
    pub values: Vec<Vec<[f64; 2]>>,
}

pub fn export_table(table: &IrreducibleTable, partition: &ClassPartition) -> IrreducibleTableExport {
    IrreducibleTableExport {
        schema: 1,
        q: table.q,
        class_labels: partition.classes.iter().map(|c| c.label.display()).collect(),
        degrees: table.degrees.clone(),
        generic: table.generic.clone(),
        annotations: table.annotations.clone(),
        values: table
            .chars
            .iter()
            .map(|c| c.values.iter().map(|v| [v.re, v.im]).collect())
            .collect(),
    }
}

/// CSV export: one row per irreducible, columns per class as `re±im·i` pairs.
pub fn export_table_csv(table: &IrreducibleTable, partition: &ClassPartition) -> String {
    let mut out = String::new();
    out.push_str("character,degree,generic,annotation");
    for c in &partition.classes {
        out.push_str(&format!(",{} re,{} im", c.label.display(), c.label.display()));
    }
    out.push('\n');
    for (i, chi) in table.chars.iter().enumerate() {
        out.push_str(&format!(
            "X{},{},{},{}",
            i,
            table.degrees[i],
            table.generic[i],
            table.annotations[i].as_deref().unwrap_or("")
        ));
        for v in &chi.values {
            out.push_str(&format!(",{:.10},{:.10}", v.re, v.im));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::enumerate_classes;
    use crate::field::FieldDescriptor;
    use crate::group::enumerate_group;
    use crate::whittaker::{gelfand_graev, WhittakerDatum};

    struct Setup {
        f: FieldDescriptor,
        ctx: GroupCtx,
        e: GroupEnumeration,
        p: ClassPartition,
        gg: ClassFunction,
        table: IrreducibleTable,
        sc: StructureConstants,
    }

    fn setup_q3() -> Setup {
        let f = FieldDescriptor::new(3, 1).unwrap();
        let ctx = GroupCtx::new(&f).unwrap();
        let e = enumerate_group(&ctx, None).unwrap();
        let p = enumerate_classes(&ctx, &f, &e).unwrap();
        let gg = gelfand_graev(&ctx, &f, &e, &p, WhittakerDatum::default());
        let sc = gsp4_structure_constants(&ctx, &e, &p);
        let table = solve_table(&ctx, &e, &p, &sc, &gg, DEFAULT_SEED).unwrap();
        Setup { f, ctx, e, p, gg, table, sc }
    }

    #[test]
    fn structure_constant_identities_q3() {
        let s = setup_q3();
        let r = s.sc.r;
        let id = s.p.identity_class(&s.ctx, &s.e);
        // multiplying by the identity class: a_{id,j,k} = δ_{jk}
        for j in 0..r {
            for k in 0..r {
                assert_eq!(s.sc.get(id, j, k), u64::from(j == k));
            }
        }
        // inverse pairing: a_{i,i⁻¹,id} = |C_i| and 0 for other j
        for i in 0..r {
            let rep = s.ctx.unpack(s.p.classes[i].rep);
            let inv = s.ctx.inverse(&rep);
            let i_inv = s.p.class_index_of_packed(&s.e, s.ctx.pack(&inv)).unwrap();
            for j in 0..r {
                let expect = if j == i_inv { s.p.classes[i].size } else { 0 };
                assert_eq!(s.sc.get(i, j, id), expect);
            }
        }
        // both counting routes agree (sampled: the full alt pass is sizable)
        let reps: Vec<usize> =
            s.p.classes
                .iter()
                .map(|c| s.e.index_of_packed(c.rep).unwrap())
                .collect();
        let alt = crate::chartab::structure_constants_alt(
            s.e.len(),
            &s.p.class_of,
            &reps,
            &|a, b| {
                let m = s.ctx.mat_mul(&s.e.get(&s.ctx, a), &s.e.get(&s.ctx, b));
                s.e.index_of(&s.ctx, &m).unwrap()
            },
            &|a| s.e.index_of(&s.ctx, &s.ctx.inverse(&s.e.get(&s.ctx, a))).unwrap(),
        );
        assert_eq!(s.sc.a, alt.a);
    }

    #[test]
    fn table_q3_counts_and_degrees() {
        let s = setup_q3();
        assert_eq!(s.table.len(), 38);
        let sum_sq: u64 = s.table.degrees.iter().map(|d| d * d).sum();
        assert_eq!(sum_sq, 103_680);
        // q⁴ = 81 occurs at least twice
        let n81 = s.table.degrees.iter().filter(|&&d| d == 81).count();
        assert!(n81 >= 2);
        // degree set matches the instantiated inventory exactly
        let got: std::collections::BTreeSet<u64> = s.table.degrees.iter().copied().collect();
        assert_eq!(got, expected_degree_set(3));
    }

    #[test]
    fn genericity_marks_q3() {
        let s = setup_q3();
        // q²(q−1) = 18 generic irreducibles
        assert_eq!(s.table.generic_count(), 18);
        // (𝒢, 𝒢) decomposes into 18 distinct constituents, all multiplicity 1
        let dec = decompose(&s.p, &s.gg, &s.table.chars).unwrap();
        assert_eq!(dec.constituents.len(), 18);
        assert!(dec.constituents.iter().all(|&(_, m)| m == 1));
        // trivial not generic
        assert!(!s.table.generic[s.table.trivial_index()]);
    }

    #[test]
    fn family_decompositions_q3() {
        let s = setup_q3();
        let report = verify_family_decompositions(&s.table, &s.p, &s.f).unwrap();
        // at q = 3 the instantiable groups are III, V, VI*, VII, VIII, IX, X, XI
        let groups: std::collections::BTreeSet<&str> =
            report.cases.iter().map(|c| c.group).collect();
        for g in ["III", "V", "VI*", "VIII", "IX", "X", "XI"] {
            assert!(groups.contains(g), "group {g} missing from the report");
        }
        assert!(!groups.contains("I"), "group I is empty at q = 3");
        assert!(!groups.contains("II"), "group II is empty at q = 3");
        // spot-check the published dimension patterns
        let v_case = report.cases.iter().find(|c| c.group == "V").unwrap();
        assert_eq!(v_case.constituent_degrees, vec![10, 30, 30, 90]);
        let viii = report.cases.iter().find(|c| c.group == "VIII").unwrap();
        assert_eq!(viii.constituent_degrees, vec![20, 60]);
        let ix = report.cases.iter().find(|c| c.group == "IX").unwrap();
        assert_eq!(ix.constituent_degrees, vec![8, 72]);
        let xi = report.cases.iter().find(|c| c.group == "XI").unwrap();
        assert_eq!(xi.constituent_degrees, vec![20, 60]);
        let iii = report.cases.iter().find(|c| c.group == "III").unwrap();
        assert_eq!(iii.constituent_degrees, vec![40, 120]);
        // of the two group III constituents, the degree-q(q²+1)(q+1) one is
        // generic and the other is not
        let spec = InducedSpec::Borel { m1: 1, m2: 0, ms: 0 };
        let cf = closed_form_character(&spec, &s.f, &s.p);
        let dec = decompose(&s.p, &cf, &s.table.chars).unwrap();
        for &(idx, _) in &dec.constituents {
            assert_eq!(s.table.generic[idx], s.table.degrees[idx] == 120);
        }
    }

    #[test]
    fn borel_decomposition_norms_match() {
        // every Borel spec decomposes with squared norm equal to the closed
        // norm formula
        let s = setup_q3();
        for spec in crate::parabolic::all_borel_specs(3) {
            let InducedSpec::Borel { m1, m2, .. } = spec else { unreachable!() };
            let cf = closed_form_character(&spec, &s.f, &s.p);
            let dec = decompose(&s.p, &cf, &s.table.chars).unwrap();
            assert_eq!(dec.norm_sq(), crate::parabolic::borel_norm(3, m1, m2));
            // genericity mass: exactly one generic constituent
            let generics = dec
                .constituents
                .iter()
                .filter(|&&(idx, _)| s.table.generic[idx])
                .count();
            assert_eq!(generics, 1, "{spec:?}");
        }
    }

    #[test]
    fn cuspidal_inventory_q3() {
        let s = setup_q3();
        let hit = noncuspidal_indices(&s.table, &s.p, &s.f).unwrap();
        let cuspidal = hit.iter().filter(|&&h| !h).count();
        let noncuspidal = hit.iter().filter(|&&h| h).count();
        assert_eq!(cuspidal + noncuspidal, 38);
        // the cuspidal characters at q = 3: four of degree (q²−1)² = 64, two
        // of degree ½q(q−1)² = 6, and one of degree (q²+1)(q−1)² = 40 — the
        // latter only because the families that would absorb it as a
        // constituent need q ≥ 5
        let mut cusp_degrees: Vec<u64> = s
            .table
            .degrees
            .iter()
            .zip(&hit)
            .filter(|(_, &h)| !h)
            .map(|(&d, _)| d)
            .collect();
        cusp_degrees.sort_unstable();
        assert_eq!(cusp_degrees, vec![6, 6, 40, 64, 64, 64, 64]);
    }

    #[test]
    fn small_class_solve_agrees_with_full_solve_q3() {
        let s = setup_q3();
        let table2 = solve_table_from_small_classes(
            &s.ctx,
            &s.e,
            &s.p,
            &s.gg,
            DEFAULT_SEED,
            10_000,
        )
        .unwrap();
        assert_eq!(s.table.degrees, table2.degrees);
        assert_eq!(s.table.generic, table2.generic);
        for (a, b) in s.table.chars.iter().zip(&table2.chars) {
            assert!(a.approx_eq(b, 1e-8));
        }
    }

    #[test]
    fn annotations_are_consistent() {
        let s = setup_q3();
        for (i, ann) in s.table.annotations.iter().enumerate() {
            let d = s.table.degrees[i];
            // every character resolves to at least one inventory family
            assert!(ann.is_some(), "character {i} of degree {d} has no annotation");
        }
        // the Steinberg annotation is unambiguous
        let st = s
            .table
            .degrees
            .iter()
            .position(|&d| d == 81)
            .unwrap();
        assert_eq!(s.table.annotations[st].as_deref(), Some("theta13"));
    }
}
