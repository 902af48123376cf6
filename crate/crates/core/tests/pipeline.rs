//! End-to-end flow through the public API at q = 3: field tower → group →
//! classes → induced characters → Gelfand–Graev → irreducible table.

use gsp4_core::classfn::{decompose, induce_full_sum, integral_inner_product};
use gsp4_core::conjugacy::enumerate_classes;
use gsp4_core::field::FieldDescriptor;
use gsp4_core::gl2::GL2Character;
use gsp4_core::group::enumerate_group;
use gsp4_core::irreducibles::{gsp4_structure_constants, solve_table, DEFAULT_SEED};
use gsp4_core::parabolic::{closed_form_character, InducedSpec};
use gsp4_core::whittaker::{gelfand_graev, WhittakerDatum};
use gsp4_core::GroupCtx;

#[test]
fn full_pipeline_q3() {
    let field = FieldDescriptor::new(3, 1).unwrap();
    let ctx = GroupCtx::new(&field).unwrap();
    let enumeration = enumerate_group(&ctx, None).unwrap();
    assert_eq!(enumeration.len(), 103_680);

    let partition = enumerate_classes(&ctx, &field, &enumeration).unwrap();
    assert_eq!(partition.len(), 38);

    // a Siegel induction with a cuspidal datum, via the literal whole-group
    // Frobenius sum, must equal the closed form
    let spec = InducedSpec::Siegel { pi: GL2Character::Cuspidal { n: 1 }, ms: 1 };
    let eval = spec.subgroup_evaluator(&ctx, &field);
    let h_order = gsp4_core::group::expected_subgroup_order(3, spec.subgroup());
    let by_full_sum = induce_full_sum(&ctx, &enumeration, &partition, h_order, &eval);
    let closed = closed_form_character(&spec, &field, &partition);
    assert!(closed.max_abs_diff(&by_full_sum) < 1e-6);

    // the Gelfand–Graev character decomposes into exactly the generic set
    let gg = gelfand_graev(&ctx, &field, &enumeration, &partition, WhittakerDatum::default());
    assert_eq!(integral_inner_product(&partition, &gg, &gg).unwrap(), 18);
    let sc = gsp4_structure_constants(&ctx, &enumeration, &partition);
    let table = solve_table(&ctx, &enumeration, &partition, &sc, &gg, DEFAULT_SEED).unwrap();
    let dec = decompose(&partition, &gg, &table.chars).unwrap();
    assert_eq!(dec.constituents.len(), 18);
    for &(idx, mult) in &dec.constituents {
        assert_eq!(mult, 1);
        assert!(table.generic[idx]);
    }
    // and the constituents of the Siegel induction above sum to its degree
    let dec = decompose(&partition, &closed, &table.chars).unwrap();
    let total: u64 = dec
        .constituents
        .iter()
        .map(|&(idx, m)| m * table.degrees[idx])
        .sum();
    assert_eq!(total, spec.degree(3));

    // exports parse back as JSON
    let classes_json =
        serde_json::to_string(&gsp4_core::conjugacy::export_class_table(&partition)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&classes_json).unwrap();
    assert_eq!(v["class_count"], 38);
    let table_json =
        serde_json::to_string(&gsp4_core::irreducibles::export_table(&table, &partition)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&table_json).unwrap();
    assert_eq!(v["degrees"].as_array().unwrap().len(), 38);
}
