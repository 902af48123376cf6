//! The group `GSp(4, F_q)`: elements, multiplier, exhaustive enumeration, and
//! the Borel, Siegel and Klingen parabolic subgroups with their unique element
//! decompositions.
//!
//! Matrices are `4×4` over the prime field `F_q` (the similitude machinery is
//! only instantiated at prime `q`), stored row-major as residues. For storage
//! and ordering, a matrix is packed into a `u64` of per-entry canonical codes
//! (`0` for zero, `1 + dlog_γ(x)` otherwise), most significant entry first, so
//! that `u64` order is row-major lexicographic order on entry codes.

use crate::field::{Elt, FieldDescriptor};

/// Row-major `4×4` matrix of `F_q` residues.
pub type Mat = [u8; 16];

pub const IDENTITY: Mat = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1];

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("matrix does not satisfy the similitude relation")]
    NotInGroup,
    #[error("element is not a member of the requested subgroup")]
    NotInSubgroup,
    #[error("full enumeration of GSp(4, F_{q}) exceeds the resource guard (limit q ≤ {limit})")]
    ResourceGuard { q: u64, limit: u64 },
    #[error("group context requires prime q, got q = {0}")]
    NotPrime(u64),
}

/// Subgroups of `GSp(4, F_q)` that have membership predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgroupTag {
    /// Borel: upper triangular.
    B,
    /// Siegel parabolic: block upper triangular with 2×2 blocks.
    P,
    /// Klingen parabolic.
    Q,
    /// Unipotent upper triangular subgroup `N` of the Borel.
    N,
    /// Kernel of the multiplier.
    Sp4,
    /// Index-two subgroup of elements with square multiplier.
    GSp4Plus,
}

/// Arithmetic context for `4×4` similitude matrices over a prime field.
///
/// Carries residue arithmetic tables plus the residue↔`γ`-dlog maps tying the
/// matrix world to the field tower, and the fixed generating set.
pub struct GroupCtx {
    pub q: u64,
    mul: Vec<Vec<u8>>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// residue of `γ^k` for `k` in `0..q−1`.
    res_of_dlog: Vec<u8>,
    /// `γ`-dlog of a nonzero residue.
    dlog_of_res: Vec<i64>,
    bits: u32,
    /// Four symplectic root elements plus the similitude torus element
    /// `diag(1, 1, γ, γ)`.
    generators: Vec<Mat>,
}

impl GroupCtx {
    pub fn new(field: &FieldDescriptor) -> Result<GroupCtx, GroupError> {
        if field.n != 1 {
            return Err(GroupError::NotPrime(field.q));
        }
        let q = field.q;
        let mut mul = vec![vec![0u8; q as usize]; q as usize];
        let mut neg = vec![0u8; q as usize];
        let mut inv = vec![0u8; q as usize];
        for a in 0..q {
            neg[a as usize] = ((q - a) % q) as u8;
            for b in 0..q {
                mul[a as usize][b as usize] = ((a * b) % q) as u8;
            }
        }
        for a in 1..q {
            for b in 1..q {
                if (a * b) % q == 1 {
                    inv[a as usize] = b as u8;
                }
            }
        }
        let mut res_of_dlog = vec![0u8; (q - 1) as usize];
        let mut dlog_of_res = vec![-1i64; q as usize];
        for k in 0..(q - 1) as i64 {
            let r = field.residue(field.gamma_pow(k)) as u8;
            res_of_dlog[k as usize] = r;
            dlog_of_res[r as usize] = k;
        }
        let bits = 64 - (q - 1).leading_zeros();
        let gamma = res_of_dlog[1];
        let mut ctx = GroupCtx {
            q,
            mul,
            neg,
            inv,
            res_of_dlog,
            dlog_of_res,
            bits,
            generators: Vec::new(),
        };
        ctx.generators = ctx.build_generators(gamma);
        Ok(ctx)
    }

    fn build_generators(&self, gamma: u8) -> Vec<Mat> {
        // Simple-root elements of Sp(4) for the antidiagonal form, read off the
        // two unipotent factors of the Borel decomposition, plus transposes.
        let x_alpha = {
            let mut m = IDENTITY;
            m[1] = 1; // (0,1)
            m[11] = self.fneg(1); // (2,3) = −1
            m
        };
        let x_beta = {
            let mut m = IDENTITY;
            m[6] = 1; // (1,2)
            m
        };
        let mut gens: Vec<Mat> = Vec::new();
        for g in [x_alpha, x_beta] {
            gens.push(g);
            gens.push(transpose(&g));
        }
        let mut torus = IDENTITY;
        torus[10] = gamma;
        torus[15] = gamma;
        gens.push(torus);
        for g in &gens {
            debug_assert!(self.multiplier(g).is_some());
        }
        gens
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    /// Generators with multiplier one; they generate `Sp(4, F_q)`.
    pub fn sp4_generators(&self) -> Vec<Mat> {
        self.generators
            .iter()
            .filter(|g| self.multiplier(g) == Some(1))
            .copied()
            .collect()
    }

    // ----- scalar helpers ----------------------------------------------------

    #[inline]
    pub fn fmul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    #[inline]
    pub fn fadd(&self, a: u8, b: u8) -> u8 {
        let s = a as u64 + b as u64;
        (s % self.q) as u8
    }

    #[inline]
    pub fn fneg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn fsub(&self, a: u8, b: u8) -> u8 {
        self.fadd(a, self.fneg(b))
    }

    #[inline]
    pub fn finv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// Residue of `γ^k`.
    pub fn residue_of_gamma_pow(&self, k: i64) -> u8 {
        self.res_of_dlog[k.rem_euclid(self.q as i64 - 1) as usize]
    }

    /// `γ`-dlog of a nonzero residue.
    pub fn dlog(&self, r: u8) -> i64 {
        debug_assert!(r != 0);
        self.dlog_of_res[r as usize]
    }

    /// Tower element of a residue.
    pub fn lift(&self, field: &FieldDescriptor, r: u8) -> Elt {
        debug_assert_eq!(field.q, self.q);
        if r == 0 { Elt::ZERO } else { field.gamma_pow(self.dlog(r)) }
    }

    // ----- matrix arithmetic ---------------------------------------------------

    pub fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        let mut out = [0u8; 16];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc: u64 = 0;
                for k in 0..4 {
                    acc += self.mul[a[4 * i + k] as usize][b[4 * k + j] as usize] as u64;
                }
                out[4 * i + j] = (acc % self.q) as u8;
            }
        }
        out
    }

    /// Similitude multiplier `λ` with `ᵗg J g = λ J`, or `None` if `g` is not
    /// in `GSp(4, F_q)`. The determinant identity `det g = λ²` is checked in
    /// debug builds.
    pub fn multiplier(&self, g: &Mat) -> Option<u8> {
        // J = antidiag(1, 1, −1, −1): rows of Jg are g's rows permuted/negated.
        let mut jg = [0u8; 16];
        for j in 0..4 {
            jg[j] = g[12 + j];
            jg[4 + j] = g[8 + j];
            jg[8 + j] = self.fneg(g[4 + j]);
            jg[12 + j] = self.fneg(g[j]);
        }
        let mut t = [0u8; 16];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc: u64 = 0;
                for k in 0..4 {
                    acc += self.mul[g[4 * k + i] as usize][jg[4 * k + j] as usize] as u64;
                }
                t[4 * i + j] = (acc % self.q) as u8;
            }
        }
        let lambda = t[3];
        if lambda == 0 {
            return None;
        }
        let neg_lambda = self.fneg(lambda);
        for i in 0..4 {
            for j in 0..4 {
                let expect = match (i, j) {
                    (0, 3) | (1, 2) => lambda,
                    (2, 1) | (3, 0) => neg_lambda,
                    _ => 0,
                };
                if t[4 * i + j] != expect {
                    return None;
                }
            }
        }
        debug_assert_eq!(self.det(g), self.fmul(lambda, lambda));
        Some(lambda)
    }

    pub fn det(&self, g: &Mat) -> u8 {
        let m3 = |r: [u8; 9]| -> u8 {
            let a = self.fmul(r[0], self.fsub(self.fmul(r[4], r[8]), self.fmul(r[5], r[7])));
            let b = self.fmul(r[1], self.fsub(self.fmul(r[3], r[8]), self.fmul(r[5], r[6])));
            let c = self.fmul(r[2], self.fsub(self.fmul(r[3], r[7]), self.fmul(r[4], r[6])));
            self.fadd(self.fsub(a, b), c)
        };
        let minor = |col: usize| -> [u8; 9] {
            let mut out = [0u8; 9];
            let mut idx = 0;
            for i in 1..4 {
                for j in 0..4 {
                    if j != col {
                        out[idx] = g[4 * i + j];
                        idx += 1;
                    }
                }
            }
            out
        };
        let mut acc = 0u8;
        for j in 0..4 {
            let term = self.fmul(g[j], m3(minor(j)));
            acc = if j % 2 == 0 { self.fadd(acc, term) } else { self.fsub(acc, term) };
        }
        acc
    }

    /// `g⁻¹ = λ⁻¹ J⁻¹ ᵗg J` (with `J⁻¹ = −J`), valid for group members.
    pub fn inverse(&self, g: &Mat) -> Mat {
        let lambda = self.multiplier(g).expect("inverse of a non-group matrix");
        let li = self.finv(lambda);
        // h = ᵗg J: columns of J are −e₃, −e₂, e₁, e₀.
        let mut h = [0u8; 16];
        for i in 0..4 {
            h[4 * i] = self.fneg(g[12 + i]);
            h[4 * i + 1] = self.fneg(g[8 + i]);
            h[4 * i + 2] = g[4 + i];
            h[4 * i + 3] = g[i];
        }
        let mut out = [0u8; 16];
        for j in 0..4 {
            out[j] = self.fmul(li, self.fneg(h[12 + j]));
            out[4 + j] = self.fmul(li, self.fneg(h[8 + j]));
            out[8 + j] = self.fmul(li, h[4 + j]);
            out[12 + j] = self.fmul(li, h[j]);
        }
        debug_assert_eq!(self.mat_mul(&out, g), IDENTITY);
        out
    }

    pub fn conjugate(&self, s: &Mat, g: &Mat, s_inv: &Mat) -> Mat {
        self.mat_mul(&self.mat_mul(s, g), s_inv)
    }

    // ----- packing ---------------------------------------------------------------

    pub fn pack(&self, m: &Mat) -> u64 {
        let mut v: u64 = 0;
        for &e in m.iter() {
            let code = if e == 0 { 0 } else { 1 + self.dlog_of_res[e as usize] as u64 };
            v = (v << self.bits) | code;
        }
        v
    }

    pub fn unpack(&self, mut v: u64) -> Mat {
        let mask = (1u64 << self.bits) - 1;
        let mut m = [0u8; 16];
        for i in (0..16).rev() {
            let code = v & mask;
            m[i] = if code == 0 { 0 } else { self.res_of_dlog[(code - 1) as usize] };
            v >>= self.bits;
        }
        m
    }

    // ----- subgroup membership -----------------------------------------------------

    pub fn subgroup_member(&self, g: &Mat, tag: SubgroupTag) -> bool {
        let lambda = match self.multiplier(g) {
            Some(l) => l,
            None => return false,
        };
        let zero = |idx: &[usize]| idx.iter().all(|&i| g[i] == 0);
        match tag {
            SubgroupTag::B => zero(&[4, 8, 9, 12, 13, 14]),
            SubgroupTag::P => zero(&[8, 9, 12, 13]),
            SubgroupTag::Q => zero(&[4, 8, 12, 13, 14]),
            SubgroupTag::N => {
                zero(&[4, 8, 9, 12, 13, 14]) && g[0] == 1 && g[5] == 1 && g[10] == 1 && g[15] == 1
            }
            SubgroupTag::Sp4 => lambda == 1,
            SubgroupTag::GSp4Plus => self.dlog(lambda) % 2 == 0,
        }
    }
}

pub fn transpose(m: &Mat) -> Mat {
    let mut out = [0u8; 16];
    for i in 0..4 {
        for j in 0..4 {
            out[4 * j + i] = m[4 * i + j];
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Largest `q` for which full enumeration is permitted by default.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 5;

/// The full element list of `GSp(4, F_q)` in canonical (packed, sorted) order.
#[derive(Debug)]
pub struct GroupEnumeration {
    pub q: u64,
    elems: Vec<u64>,
}

impl GroupEnumeration {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn packed(&self) -> &[u64] {
        &self.elems
    }

    pub fn get(&self, ctx: &GroupCtx, i: usize) -> Mat {
        ctx.unpack(self.elems[i])
    }

    pub fn index_of_packed(&self, packed: u64) -> Option<usize> {
        self.elems.binary_search(&packed).ok()
    }

    pub fn index_of(&self, ctx: &GroupCtx, m: &Mat) -> Option<usize> {
        self.index_of_packed(ctx.pack(m))
    }

    /// Rebuilds an enumeration from a cached element list; the list must be
    /// sorted, deduplicated, and of the expected order.
    pub fn from_sorted_elems(q: u64, elems: Vec<u64>) -> GroupEnumeration {
        assert_eq!(elems.len() as u64, Self::expected_order(q));
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        GroupEnumeration { q, elems }
    }

    /// `q⁴(q⁴−1)(q²−1)(q−1)`.
    pub fn expected_order(q: u64) -> u64 {
        q.pow(4) * (q.pow(4) - 1) * (q * q - 1) * (q - 1)
    }
}

/// Enumerates `GSp(4, F_q)` as the closure of the generating set: `Sp(4, F_q)`
/// is grown by breadth-first closure of the symplectic generators, then
/// translated by the similitude torus `diag(1, 1, γ^k, γ^k)`.
///
/// `limit` overrides the default resource guard.
pub fn enumerate_group(
    ctx: &GroupCtx,
    limit: Option<u64>,
) -> Result<GroupEnumeration, GroupError> {
    let limit = limit.unwrap_or(DEFAULT_ENUMERATION_LIMIT);
    if ctx.q > limit {
        return Err(GroupError::ResourceGuard { q: ctx.q, limit });
    }
    let q = ctx.q;
    let sp_order = (q.pow(4) * (q.pow(4) - 1) * (q * q - 1)) as usize;

    let sp_gens = ctx.sp4_generators();
    let mut visited: std::collections::HashSet<u64> =
        std::collections::HashSet::with_capacity(sp_order + sp_order / 2);
    let id = ctx.pack(&IDENTITY);
    visited.insert(id);
    let mut frontier: Vec<u64> = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &v in &frontier {
            let m = ctx.unpack(v);
            for g in &sp_gens {
                let pv = ctx.pack(&ctx.mat_mul(&m, g));
                if visited.insert(pv) {
                    next.push(pv);
                }
            }
        }
        frontier = next;
    }
    assert_eq!(visited.len(), sp_order, "Sp(4) closure must match the order formula");

    let mut elems: Vec<u64> = Vec::with_capacity(sp_order * (q - 1) as usize);
    for k in 0..(q - 1) as i64 {
        let c = ctx.residue_of_gamma_pow(k);
        let mut torus = IDENTITY;
        torus[10] = c;
        torus[15] = c;
        for &v in visited.iter() {
            let m = ctx.unpack(v);
            elems.push(ctx.pack(&ctx.mat_mul(&torus, &m)));
        }
    }
    elems.sort_unstable();
    elems.dedup();
    assert_eq!(elems.len() as u64, GroupEnumeration::expected_order(q));
    Ok(GroupEnumeration { q, elems })
}

/// All members of a shape-defined subgroup, in canonical order.
pub fn enumerate_subgroup(
    ctx: &GroupCtx,
    enumeration: &GroupEnumeration,
    tag: SubgroupTag,
) -> Vec<u64> {
    enumeration
        .packed()
        .iter()
        .copied()
        .filter(|&v| ctx.subgroup_member(&ctx.unpack(v), tag))
        .collect()
}

/// Subgroup orders implied by the shape decompositions.
pub fn expected_subgroup_order(q: u64, tag: SubgroupTag) -> u64 {
    match tag {
        SubgroupTag::B => q.pow(4) * (q - 1).pow(3),
        SubgroupTag::P | SubgroupTag::Q => q.pow(4) * (q * q - 1) * (q - 1).pow(2),
        SubgroupTag::N => q.pow(4),
        SubgroupTag::Sp4 => q.pow(4) * (q.pow(4) - 1) * (q * q - 1),
        SubgroupTag::GSp4Plus => GroupEnumeration::expected_order(q) / 2,
    }
}

// ---------------------------------------------------------------------------
// Parabolic decompositions
// ---------------------------------------------------------------------------

/// Unique Borel coordinates: `g = diag(a, b, cb⁻¹, ca⁻¹) · u_β(x) · u(λ, μ, κ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BorelCoords {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub x: u8,
    pub lambda: u8,
    pub mu: u8,
    pub kappa: u8,
}

/// Unique Siegel coordinates: `g = blk(A, λA′) · u(x, μ, κ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiegelCoords {
    /// Row-major 2×2 block `A ∈ GL(2, F_q)`.
    pub a: [u8; 4],
    pub lambda: u8,
    pub x: u8,
    pub mu: u8,
    pub kappa: u8,
}

/// Unique Klingen coordinates: `g = blk(t, A, Δt⁻¹) · u(λ, μ, κ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KlingenCoords {
    pub t: u8,
    /// Row-major 2×2 middle block; `Δ = det A` is the multiplier.
    pub a: [u8; 4],
    pub delta: u8,
    pub lambda: u8,
    pub mu: u8,
    pub kappa: u8,
}

impl GroupCtx {
    pub fn decompose_borel(&self, g: &Mat) -> Result<BorelCoords, GroupError> {
        if !self.subgroup_member(g, SubgroupTag::B) {
            return Err(GroupError::NotInSubgroup);
        }
        let a = g[0];
        let b = g[5];
        let c = self.fmul(g[10], b);
        let lambda = self.fmul(self.fneg(g[11]), self.finv(g[10]));
        let x = self.fmul(g[6], self.finv(b));
        let mu = self.fmul(g[2], self.finv(a));
        let kappa = self.fmul(g[3], self.finv(a));
        let coords = BorelCoords { a, b, c, x, lambda, mu, kappa };
        if self.compose_borel(&coords) != *g {
            return Err(GroupError::NotInSubgroup);
        }
        Ok(coords)
    }

    pub fn compose_borel(&self, c: &BorelCoords) -> Mat {
        let torus = {
            let mut m = [0u8; 16];
            m[0] = c.a;
            m[5] = c.b;
            m[10] = self.fmul(c.c, self.finv(c.b));
            m[15] = self.fmul(c.c, self.finv(c.a));
            m
        };
        let ub = {
            let mut m = IDENTITY;
            m[6] = c.x;
            m
        };
        let ua = {
            let mut m = IDENTITY;
            m[1] = c.lambda;
            m[2] = c.mu;
            m[3] = c.kappa;
            m[7] = c.mu;
            m[11] = self.fneg(c.lambda);
            m
        };
        self.mat_mul(&self.mat_mul(&torus, &ub), &ua)
    }

    pub fn decompose_siegel(&self, g: &Mat) -> Result<SiegelCoords, GroupError> {
        if !self.subgroup_member(g, SubgroupTag::P) {
            return Err(GroupError::NotInSubgroup);
        }
        let lambda = self.multiplier(g).ok_or(GroupError::NotInSubgroup)?;
        let a = [g[0], g[1], g[4], g[5]];
        let blk = self.compose_siegel(&SiegelCoords { a, lambda, x: 0, mu: 0, kappa: 0 });
        let u = self.mat_mul(&self.inverse(&blk), g);
        let coords = SiegelCoords { a, lambda, x: u[6], mu: u[2], kappa: u[3] };
        if self.compose_siegel(&coords) != *g {
            return Err(GroupError::NotInSubgroup);
        }
        Ok(coords)
    }

    pub fn compose_siegel(&self, c: &SiegelCoords) -> Mat {
        // λA′ = (λ/Δ)·[d? …]: A′ = w ᵗA⁻¹ w with w = antidiag(1,1); explicitly
        // for A = [a b; c d], λA′ = (λ/Δ)·[a  −b; −c  d].
        let [a, b, cc, d] = c.a;
        let delta = self.fsub(self.fmul(a, d), self.fmul(b, cc));
        debug_assert!(delta != 0);
        let s = self.fmul(c.lambda, self.finv(delta));
        let mut blk = [0u8; 16];
        blk[0] = a;
        blk[1] = b;
        blk[4] = cc;
        blk[5] = d;
        blk[10] = self.fmul(s, a);
        blk[11] = self.fmul(s, self.fneg(b));
        blk[14] = self.fmul(s, self.fneg(cc));
        blk[15] = self.fmul(s, d);
        let mut u = IDENTITY;
        u[2] = c.mu;
        u[3] = c.kappa;
        u[6] = c.x;
        u[7] = c.mu;
        self.mat_mul(&blk, &u)
    }

    pub fn decompose_klingen(&self, g: &Mat) -> Result<KlingenCoords, GroupError> {
        if !self.subgroup_member(g, SubgroupTag::Q) {
            return Err(GroupError::NotInSubgroup);
        }
        let t = g[0];
        let a = [g[5], g[6], g[9], g[10]];
        let delta = self.fsub(self.fmul(a[0], a[3]), self.fmul(a[1], a[2]));
        let blk =
            self.compose_klingen(&KlingenCoords { t, a, delta, lambda: 0, mu: 0, kappa: 0 });
        let u = self.mat_mul(&self.inverse(&blk), g);
        let coords = KlingenCoords { t, a, delta, lambda: u[1], mu: u[2], kappa: u[3] };
        if self.compose_klingen(&coords) != *g {
            return Err(GroupError::NotInSubgroup);
        }
        Ok(coords)
    }

    pub fn compose_klingen(&self, c: &KlingenCoords) -> Mat {
        let mut blk = [0u8; 16];
        blk[0] = c.t;
        blk[5] = c.a[0];
        blk[6] = c.a[1];
        blk[9] = c.a[2];
        blk[10] = c.a[3];
        blk[15] = self.fmul(c.delta, self.finv(c.t));
        let mut u = IDENTITY;
        u[1] = c.lambda;
        u[2] = c.mu;
        u[3] = c.kappa;
        u[7] = c.mu;
        u[11] = self.fneg(c.lambda);
        self.mat_mul(&blk, &u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn ctx(q: u64) -> GroupCtx {
        let f = FieldDescriptor::new(q, 1).unwrap();
        GroupCtx::new(&f).unwrap()
    }

    #[test]
    fn multiplier_examples() {
        let c = ctx(5);
        assert_eq!(c.multiplier(&IDENTITY), Some(1));
        for v in 1..5u8 {
            let mut m = IDENTITY;
            m[10] = v;
            m[15] = v;
            assert_eq!(c.multiplier(&m), Some(v));
        }
        // J itself has multiplier 1
        let j: Mat = [0, 0, 0, 1, 0, 0, 1, 0, 0, 4, 0, 0, 4, 0, 0, 0];
        assert_eq!(c.multiplier(&j), Some(1));
        let mut bad = IDENTITY;
        bad[1] = 1;
        bad[4] = 1;
        assert_eq!(c.multiplier(&bad), None);
    }

    #[test]
    fn generators_are_members() {
        for q in [3, 5] {
            let c = ctx(q);
            for g in c.generators() {
                assert!(c.multiplier(g).is_some());
            }
            assert_eq!(c.sp4_generators().len(), 4);
        }
    }

    #[test]
    fn pack_roundtrip() {
        let c = ctx(5);
        for g in c.generators() {
            assert_eq!(&c.unpack(c.pack(g)), g);
        }
    }

    #[test]
    fn enumeration_q3_matches_order_formula() {
        let c = ctx(3);
        let e = enumerate_group(&c, None).unwrap();
        assert_eq!(e.len(), 103_680);
        // every enumerated element satisfies the similitude relation
        for idx in 0..e.len() {
            assert!(c.multiplier(&e.get(&c, idx)).is_some());
        }
    }

    #[test]
    fn resource_guard() {
        let c = ctx(7);
        match enumerate_group(&c, None) {
            Err(GroupError::ResourceGuard { q: 7, limit: 5 }) => {}
            other => panic!("expected resource guard, got {other:?}"),
        }
    }

    #[test]
    fn subgroup_orders_q3() {
        let c = ctx(3);
        let e = enumerate_group(&c, None).unwrap();
        assert_eq!(enumerate_subgroup(&c, &e, SubgroupTag::B).len() as u64, 648);
        assert_eq!(enumerate_subgroup(&c, &e, SubgroupTag::P).len() as u64, 2592);
        assert_eq!(enumerate_subgroup(&c, &e, SubgroupTag::Q).len() as u64, 2592);
        assert_eq!(enumerate_subgroup(&c, &e, SubgroupTag::N).len() as u64, 81);
        assert_eq!(
            enumerate_subgroup(&c, &e, SubgroupTag::Sp4).len() as u64,
            expected_subgroup_order(3, SubgroupTag::Sp4)
        );
        assert_eq!(enumerate_subgroup(&c, &e, SubgroupTag::GSp4Plus).len(), e.len() / 2);
        for tag in [
            SubgroupTag::B,
            SubgroupTag::P,
            SubgroupTag::Q,
            SubgroupTag::N,
            SubgroupTag::Sp4,
            SubgroupTag::GSp4Plus,
        ] {
            assert!(c.subgroup_member(&IDENTITY, tag));
        }
    }

    #[test]
    fn multiplier_is_a_homomorphism() {
        let c = ctx(3);
        let e = enumerate_group(&c, None).unwrap();
        let mut rng = 0xdeadbeefu64;
        for _ in 0..10_000 {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let i = (rng >> 16) as usize % e.len();
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (rng >> 16) as usize % e.len();
            let (a, b) = (e.get(&c, i), e.get(&c, j));
            let la = c.multiplier(&a).unwrap();
            let lb = c.multiplier(&b).unwrap();
            let lab = c.multiplier(&c.mat_mul(&a, &b)).unwrap();
            assert_eq!(lab, c.fmul(la, lb));
        }
    }

    #[test]
    fn decompose_identity() {
        let c = ctx(5);
        let b = c.decompose_borel(&IDENTITY).unwrap();
        assert_eq!(b, BorelCoords { a: 1, b: 1, c: 1, x: 0, lambda: 0, mu: 0, kappa: 0 });
        let s = c.decompose_siegel(&IDENTITY).unwrap();
        assert_eq!(s.a, [1, 0, 0, 1]);
        assert_eq!((s.lambda, s.x, s.mu, s.kappa), (1, 0, 0, 0));
        let k = c.decompose_klingen(&IDENTITY).unwrap();
        assert_eq!((k.t, k.delta, k.lambda, k.mu, k.kappa), (1, 1, 0, 0, 0));
    }

    #[test]
    fn decompose_diagonal_torus() {
        let c = ctx(5);
        for (a, b, cc) in [(2u8, 3u8, 4u8), (1, 2, 3), (4, 4, 1)] {
            let mut m = [0u8; 16];
            m[0] = a;
            m[5] = b;
            m[10] = c.fmul(cc, c.finv(b));
            m[15] = c.fmul(cc, c.finv(a));
            let d = c.decompose_borel(&m).unwrap();
            assert_eq!((d.a, d.b, d.c), (a, b, cc));
            assert_eq!((d.x, d.lambda, d.mu, d.kappa), (0, 0, 0, 0));
            assert_eq!(c.multiplier(&m), Some(cc));
        }
    }

    #[test]
    fn borel_coordinates_roundtrip() {
        // compose ∘ decompose is the identity on 10⁴ random Borel members at q = 5
        let c = ctx(5);
        let mut rng = 0x12345678u64;
        let mut next = || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng >> 33) as u8
        };
        for _ in 0..10_000 {
            let coords = BorelCoords {
                a: 1 + next() % 4,
                b: 1 + next() % 4,
                c: 1 + next() % 4,
                x: next() % 5,
                lambda: next() % 5,
                mu: next() % 5,
                kappa: next() % 5,
            };
            let m = c.compose_borel(&coords);
            assert_eq!(c.multiplier(&m), Some(coords.c));
            assert_eq!(c.decompose_borel(&m).unwrap(), coords);
        }
    }

    #[test]
    fn siegel_and_klingen_roundtrip() {
        let c = ctx(5);
        let mut rng = 0xabcdefu64;
        let mut next = || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng >> 33) as u8
        };
        let mut done = 0;
        while done < 2000 {
            let a = [next() % 5, next() % 5, next() % 5, next() % 5];
            let det = c.fsub(c.fmul(a[0], a[3]), c.fmul(a[1], a[2]));
            if det == 0 {
                continue;
            }
            let s = SiegelCoords {
                a,
                lambda: 1 + next() % 4,
                x: next() % 5,
                mu: next() % 5,
                kappa: next() % 5,
            };
            let m = c.compose_siegel(&s);
            assert_eq!(c.multiplier(&m), Some(s.lambda));
            assert_eq!(c.decompose_siegel(&m).unwrap(), s);
            let k = KlingenCoords {
                t: 1 + next() % 4,
                a,
                delta: det,
                lambda: next() % 5,
                mu: next() % 5,
                kappa: next() % 5,
            };
            let m = c.compose_klingen(&k);
            assert_eq!(c.multiplier(&m), Some(det));
            assert_eq!(c.decompose_klingen(&m).unwrap(), k);
            done += 1;
        }
    }

    #[test]
    fn index_formulas_q3() {
        let q = 3u64;
        let c = ctx(q);
        let e = enumerate_group(&c, None).unwrap();
        let g = e.len() as u64;
        let b = enumerate_subgroup(&c, &e, SubgroupTag::B).len() as u64;
        let p = enumerate_subgroup(&c, &e, SubgroupTag::P).len() as u64;
        assert_eq!(g / b, (q * q + 1) * (q + 1) * (q + 1));
        assert_eq!(g / p, (q * q + 1) * (q + 1));
    }

    #[test]
    fn inverse_formula() {
        let c = ctx(5);
        let mut m = IDENTITY;
        for g in c.generators() {
            m = c.mat_mul(&m, g);
        }
        let inv = c.inverse(&m);
        assert_eq!(c.mat_mul(&m, &inv), IDENTITY);
        assert_eq!(c.mat_mul(&inv, &m), IDENTITY);
    }
}
