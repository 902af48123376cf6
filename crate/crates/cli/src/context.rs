//! Shared computation pipeline: field → enumeration → classes → characters,
//! with cache-backed loading of the expensive stages.

use crate::cache::{decode_u32s, decode_u64s, encode_u32s, encode_u64s, Cache};
use gsp4_core::classfn::ClassFunction;
use gsp4_core::conjugacy::{
    enumerate_classes, expected_class_count, ClassPartition, ConjugacyClass,
};
use gsp4_core::field::FieldDescriptor;
use gsp4_core::group::{enumerate_group, GroupCtx, GroupEnumeration};
use gsp4_core::irreducibles::{gsp4_structure_constants, solve_table, IrreducibleTable, DEFAULT_SEED};
use gsp4_core::whittaker::{gelfand_graev, WhittakerDatum};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Field(#[from] gsp4_core::field::FieldError),
    #[error(transparent)]
    Group(#[from] gsp4_core::group::GroupError),
    #[error(transparent)]
    Conjugacy(#[from] gsp4_core::conjugacy::ConjugacyError),
    #[error(transparent)]
    Table(#[from] gsp4_core::irreducibles::TableError),
    #[error(transparent)]
    Cache(#[from] crate::cache::CacheError),
    #[error("corrupt cached partition for q = {0}; rerun with --no-cache")]
    CorruptPartition(u64),
}

/// Everything needed for class-level computations at one `q`.
pub struct Pipeline {
    pub q: u64,
    pub field: FieldDescriptor,
    pub ctx: GroupCtx,
    pub enumeration: GroupEnumeration,
    pub partition: ClassPartition,
}

impl Pipeline {
    /// Builds (or cache-loads) the enumeration and class partition.
    pub fn build(q: u64, cache: &Cache, limit: Option<u64>) -> Result<Pipeline, PipelineError> {
        let field = FieldDescriptor::new(q, 1)?;
        let ctx = GroupCtx::new(&field)?;
        let enumeration = match cache.load(q, "enumeration")? {
            Some(bytes) => {
                let elems = decode_u64s(&bytes).ok_or(PipelineError::CorruptPartition(q))?;
                GroupEnumeration::from_sorted_elems(q, elems)
            }
            None => {
                let e = enumerate_group(&ctx, limit)?;
                cache.save(q, "enumeration", &encode_u64s(e.packed()))?;
                e
            }
        };
        let partition = match (cache.load(q, "classes")?, cache.load(q, "classmap")?) {
            (Some(classes_json), Some(map_bytes)) => {
                let classes: Vec<ConjugacyClass> = serde_json::from_slice(&classes_json)
                    .map_err(|_| PipelineError::CorruptPartition(q))?;
                let class_of =
                    decode_u32s(&map_bytes).ok_or(PipelineError::CorruptPartition(q))?;
                if classes.len() as u64 != expected_class_count(q)
                    || class_of.len() != enumeration.len()
                {
                    return Err(PipelineError::CorruptPartition(q));
                }
                ClassPartition {
                    q,
                    group_order: enumeration.len() as u64,
                    classes,
                    class_of,
                }
            }
            _ => {
                let p = enumerate_classes(&ctx, &field, &enumeration)?;
                cache.save(q, "classes", &serde_json::to_vec(&p.classes).unwrap())?;
                cache.save(q, "classmap", &encode_u32s(&p.class_of))?;
                p
            }
        };
        Ok(Pipeline { q, field, ctx, enumeration, partition })
    }

    pub fn gelfand_graev(&self) -> ClassFunction {
        gelfand_graev(
            &self.ctx,
            &self.field,
            &self.enumeration,
            &self.partition,
            WhittakerDatum::default(),
        )
    }

    /// Solves (never cache-loads: the solve is seeded and deterministic, and
    /// revalidation is the point) the irreducible table. Small groups go
    /// through the full structure constants; large ones through the
    /// class-matrix selection, which is minutes instead of hours at q = 5.
    pub fn irreducible_table(&self, seed: u64) -> Result<IrreducibleTable, PipelineError> {
        let gg = self.gelfand_graev();
        if self.enumeration.len() <= 1_000_000 {
            let sc = gsp4_structure_constants(&self.ctx, &self.enumeration, &self.partition);
            Ok(solve_table(&self.ctx, &self.enumeration, &self.partition, &sc, &gg, seed)?)
        } else {
            Ok(gsp4_core::irreducibles::solve_table_from_small_classes(
                &self.ctx,
                &self.enumeration,
                &self.partition,
                &gg,
                seed,
                2_000_000,
            )?)
        }
    }

    pub fn irreducible_table_default(&self) -> Result<IrreducibleTable, PipelineError> {
        self.irreducible_table(DEFAULT_SEED)
    }
}
