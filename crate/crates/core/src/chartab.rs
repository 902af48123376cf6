//! Class-algebra machinery: structure constants and a simultaneous
//! eigenvector solver extracting irreducible characters.
//!
//! The class sums `Ĉ_i` multiply as `Ĉ_i Ĉ_j = Σ_k a_{ijk} Ĉ_k`; the matrices
//! `M_i = (a_{ijk})_{jk}` commute and share the eigenvectors
//! `u_k = |C_k| χ(g_k) / χ(1)`. Conjugating by `D = diag(√|C_k|)` turns that
//! common eigenbasis into the unitary matrix of first-orthogonality, so
//! `B = D⁻¹ (Σ_i t_i M_i) D` is a real normal matrix for any real `t`.
//! Splitting `B = S + N` into symmetric and skew parts, both `S` and `iN` are
//! Hermitian and commute, hence a generic combination `S + s·iN` is Hermitian
//! with simple spectrum and its eigenvectors are the characters. The Hermitian
//! eigensolver is a cyclic complex Jacobi iteration.

use num_complex::Complex64;

/// Structure constants `a_{ijk}` of the class algebra, flattened as
/// `a[i·r² + j·r + k]`.
pub struct StructureConstants {
    pub r: usize,
    pub a: Vec<u64>,
}

impl StructureConstants {
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.a[i * self.r * self.r + j * self.r + k]
    }
}

/// Counts `a_{ijk} = #{(x, y) ∈ C_i × C_j : xy = z_k}` by one pass over the
/// group per class `k`: `a_{cls(x), cls(x⁻¹ z_k), k} += 1`.
pub fn structure_constants(
    n: usize,
    class_of: &[u32],
    class_rep_elem: &[usize],
    mul_index: &dyn Fn(usize, usize) -> usize,
    inv_index: &dyn Fn(usize) -> usize,
) -> StructureConstants {
    let r = class_rep_elem.len();
    let mut a = vec![0u64; r * r * r];
    let inverses: Vec<usize> = (0..n).map(inv_index).collect();
    for (k, &zk) in class_rep_elem.iter().enumerate() {
        for x in 0..n {
            let i = class_of[x] as usize;
            let j = class_of[mul_index(inverses[x], zk)] as usize;
            a[i * r * r + j * r + k] += 1;
        }
    }
    StructureConstants { r, a }
}

/// Same counts by the transposed pass (`y` runs over the group and
/// `x = z_k y⁻¹`); used as a self-check of the counting route.
pub fn structure_constants_alt(
    n: usize,
    class_of: &[u32],
    class_rep_elem: &[usize],
    mul_index: &dyn Fn(usize, usize) -> usize,
    inv_index: &dyn Fn(usize) -> usize,
) -> StructureConstants {
    let r = class_rep_elem.len();
    let mut a = vec![0u64; r * r * r];
    for (k, &zk) in class_rep_elem.iter().enumerate() {
        for y in 0..n {
            let j = class_of[y] as usize;
            let i = class_of[mul_index(zk, inv_index(y))] as usize;
            a[i * r * r + j * r + k] += 1;
        }
    }
    StructureConstants { r, a }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("eigenvalue separation failed after {0} random combinations")]
    SeparationFailed(usize),
    #[error("character degree {0} is not a positive integer (residual {1:.3e})")]
    NonIntegerDegree(f64, f64),
}

/// A solved character table: `chars[t][k]` is the value of the `t`-th
/// irreducible character on class `k`; rows are sorted by degree, then by
/// value vector.
pub struct SolvedTable {
    pub chars: Vec<Vec<Complex64>>,
    pub degrees: Vec<u64>,
}

const MAX_TRIES: usize = 24;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn unit_f64(state: &mut u64) -> f64 {
    (splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64
}

/// Extracts the irreducible characters from the structure constants.
///
/// `sizes` are the class sizes, `id_class` the index of the identity class,
/// `seed` drives the deterministic pseudo-random combinations. A failed
/// eigenvalue separation retries with a fresh combination, up to a bound.
pub fn solve_characters(
    sc: &StructureConstants,
    sizes: &[u64],
    id_class: usize,
    seed: u64,
) -> Result<SolvedTable, SolveError> {
    let r = sc.r;
    let mats: Vec<Vec<u64>> = (0..r)
        .map(|i| {
            let mut m = vec![0u64; r * r];
            for j in 0..r {
                for k in 0..r {
                    m[j * r + k] = sc.get(i, j, k);
                }
            }
            m
        })
        .collect();
    solve_characters_from_class_matrices(&mats, sizes, id_class, seed)
}

/// The same extraction from an explicit family of class-multiplication
/// matrices (`mats[m][j·r + k] = a_{i_m,j,k}`, any subfamily). The family
/// must separate the characters; otherwise the retry budget is exhausted and
/// the caller can supply more matrices.
pub fn solve_characters_from_class_matrices(
    mats: &[Vec<u64>],
    sizes: &[u64],
    id_class: usize,
    seed: u64,
) -> Result<SolvedTable, SolveError> {
    let r = sizes.len();
    let order: u64 = sizes.iter().sum();
    let sqrt_sizes: Vec<f64> = sizes.iter().map(|&s| (s as f64).sqrt()).collect();
    let mut state = seed ^ 0xa076_1d64_78bd_642f;

    // Normalize each matrix by its class size so eigenvalues are O(1): the
    // eigenvalue of M_i/|C_i| at χ is χ(g_i)/χ(1), of modulus ≤ 1. The class
    // size is recovered from the matrix itself: Σ_j a_{i,j,id} = |C_i|.
    let class_size_of = |mat: &Vec<u64>| -> f64 {
        let s: u64 = (0..r).map(|j| mat[j * r + id_class]).sum();
        s.max(1) as f64
    };

    for _try in 0..MAX_TRIES {
        // B = Σ_m t_m D⁻¹ (M_m / |C_m|) D
        let mut b = vec![0f64; r * r];
        for mat in mats {
            let t = (unit_f64(&mut state) + 0.1) / class_size_of(mat);
            for j in 0..r {
                for k in 0..r {
                    let aijk = mat[j * r + k];
                    if aijk != 0 {
                        b[j * r + k] += t * aijk as f64 * sqrt_sizes[k] / sqrt_sizes[j];
                    }
                }
            }
        }
        let s = unit_f64(&mut state) * 2.0 - 1.0;
        let mut h = vec![Complex64::new(0.0, 0.0); r * r];
        for j in 0..r {
            for k in 0..r {
                let sym = 0.5 * (b[j * r + k] + b[k * r + j]);
                let skew = 0.5 * (b[j * r + k] - b[k * r + j]);
                h[j * r + k] = Complex64::new(sym, s * skew);
            }
        }
        let (eigvals, v) = hermitian_eig(r, &h);

        // require simple spectrum; eigenvalues are O(#matrices) after the
        // normalization, so an absolute-ish gap criterion is meaningful
        let mut sorted = eigvals.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let scale = sorted.iter().fold(1.0f64, |m, &x| m.max(x.abs()));
        let min_gap = sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        if r > 1 && min_gap < 1e-10 * scale.max(1.0) {
            continue;
        }

        // columns of V → characters
        let mut rows: Vec<(u64, Vec<Complex64>)> = Vec::with_capacity(r);
        let mut ok = true;
        for c in 0..r {
            let u_id = v[id_class * r + c];
            let norm_id = u_id.norm();
            if norm_id < 1e-12 {
                ok = false;
                break;
            }
            let phase = u_id.conj() / norm_id;
            let d = (order as f64).sqrt() * norm_id;
            let d_round = d.round();
            if (d - d_round).abs() > 1e-6 || d_round < 1.0 {
                return Err(SolveError::NonIntegerDegree(d, (d - d_round).abs()));
            }
            let mut row = Vec::with_capacity(r);
            for k in 0..r {
                let val = v[k * r + c] * phase * (order as f64).sqrt() / sqrt_sizes[k];
                row.push(val);
            }
            rows.push((d_round as u64, row));
        }
        if !ok {
            continue;
        }
        rows.sort_by(|a, b| {
            a.0.cmp(&b.0).then_with(|| {
                for (x, y) in a.1.iter().zip(b.1.iter()) {
                    let key = |z: &Complex64| ((z.re * 1e8).round() as i64, (z.im * 1e8).round() as i64);
                    match key(x).cmp(&key(y)) {
                        std::cmp::Ordering::Equal => continue,
                        o => return o,
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
        let (degrees, chars): (Vec<u64>, Vec<Vec<Complex64>>) = rows.into_iter().unzip();
        return Ok(SolvedTable { chars, degrees });
    }
    Err(SolveError::SeparationFailed(MAX_TRIES))
}

// ---------------------------------------------------------------------------
// Hermitian Jacobi eigensolver
// ---------------------------------------------------------------------------

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues and the unitary `V` (column eigenvectors,
/// stored row-major: `v[row·n + col]`).
pub fn hermitian_eig(n: usize, a: &[Complex64]) -> (Vec<f64>, Vec<Complex64>) {
    let mut m = a.to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }
    let scale = (0..n * n).map(|i| m[i].norm()).fold(0.0f64, f64::max).max(1e-300);
    let tol = 1e-14 * scale;

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[p * n + q].norm());
            }
        }
        if off < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                let rpq = apq.norm();
                if rpq < tol {
                    continue;
                }
                let phase = apq / rpq; // e^{iφ}
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                let tau = (aqq - app) / (2.0 * rpq);
                // smaller root of t² − 2τt − 1 = 0
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U = diag(1, e^{−iφ}) · [[c, −s], [s, c]] on coordinates (p, q)
                let u00 = Complex64::new(c, 0.0);
                let u01 = Complex64::new(-s, 0.0);
                let u10 = phase.conj() * s;
                let u11 = phase.conj() * c;
                // A ← U* A U
                for i in 0..n {
                    let aip = m[i * n + p];
                    let aiq = m[i * n + q];
                    m[i * n + p] = aip * u00 + aiq * u10;
                    m[i * n + q] = aip * u01 + aiq * u11;
                }
                for j in 0..n {
                    let apj = m[p * n + j];
                    let aqj = m[q * n + j];
                    m[p * n + j] = u00.conj() * apj + u10.conj() * aqj;
                    m[q * n + j] = u01.conj() * apj + u11.conj() * aqj;
                }
                // V ← V U
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = vip * u00 + viq * u10;
                    v[i * n + q] = vip * u01 + viq * u11;
                }
            }
        }
    }
    let eig: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    (eig, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn jacobi_solves_small_hermitian() {
        // fixed Hermitian matrix with known reconstruction
        let n = 4;
        let mut a = vec![Complex64::new(0.0, 0.0); n * n];
        let mut state = 42u64;
        for i in 0..n {
            for j in i..n {
                let re = super::unit_f64(&mut state) * 2.0 - 1.0;
                let im = if i == j { 0.0 } else { super::unit_f64(&mut state) * 2.0 - 1.0 };
                a[i * n + j] = Complex64::new(re, im);
                a[j * n + i] = Complex64::new(re, -im);
            }
        }
        let (eig, v) = hermitian_eig(n, &a);
        // A V = V Λ
        for col in 0..n {
            for row in 0..n {
                let mut av = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    av += a[row * n + k] * v[k * n + col];
                }
                assert!(
                    approx(av, v[row * n + col] * eig[col]),
                    "eigenpair {col} fails at row {row}"
                );
            }
        }
        // V unitary
        for c1 in 0..n {
            for c2 in 0..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    dot += v[k * n + c1].conj() * v[k * n + c2];
                }
                let expect = if c1 == c2 { 1.0 } else { 0.0 };
                assert!((dot - expect).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn solves_symmetric_group_s3() {
        // S3: classes {e}, {transpositions}, {3-cycles}, sizes 1, 3, 2.
        // Elements indexed 0..6: e, (12), (13), (23), (123), (132).
        let mul_table: [[usize; 6]; 6] = [
            [0, 1, 2, 3, 4, 5],
            [1, 0, 4, 5, 2, 3],
            [2, 5, 0, 4, 3, 1],
            [3, 4, 5, 0, 1, 2],
            [4, 3, 1, 2, 5, 0],
            [5, 2, 3, 1, 0, 4],
        ];
        let inv = [0usize, 1, 2, 3, 5, 4];
        let class_of = [0u32, 1, 1, 1, 2, 2];
        let reps = [0usize, 1, 4];
        let sizes = [1u64, 3, 2];
        let sc = structure_constants(6, &class_of, &reps, &|a, b| mul_table[a][b], &|x| inv[x]);
        let alt =
            structure_constants_alt(6, &class_of, &reps, &|a, b| mul_table[a][b], &|x| inv[x]);
        assert_eq!(sc.a, alt.a);
        // multiplying by the identity class: Ĉ_e Ĉ_j = Ĉ_j, so a_{0jk} = δ_{jk}
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(sc.get(0, j, k), u64::from(j == k));
            }
        }
        // inverse pairing: a_{i, i⁻¹, identity} = |C_i|
        for i in 0..3 {
            assert_eq!(sc.get(i, i, 0), sizes[i]); // all S3 classes are self-inverse
        }
        let table = solve_characters(&sc, &sizes, 0, 7).unwrap();
        assert_eq!(table.degrees, vec![1, 1, 2]);
        // trivial, sign, standard
        let values: Vec<Vec<f64>> =
            table.chars.iter().map(|row| row.iter().map(|z| z.re).collect()).collect();
        assert!(values.iter().any(|r| (r[0] - 1.0).abs() < 1e-9
            && (r[1] - 1.0).abs() < 1e-9
            && (r[2] - 1.0).abs() < 1e-9));
        assert!(values.iter().any(|r| (r[0] - 1.0).abs() < 1e-9
            && (r[1] + 1.0).abs() < 1e-9
            && (r[2] - 1.0).abs() < 1e-9));
        assert!(values.iter().any(|r| (r[0] - 2.0).abs() < 1e-9
            && r[1].abs() < 1e-9
            && (r[2] + 1.0).abs() < 1e-9));
        // sum of squares of degrees is the group order
        let sumsq: u64 = table.degrees.iter().map(|d| d * d).sum();
        assert_eq!(sumsq, 6);
    }
}
