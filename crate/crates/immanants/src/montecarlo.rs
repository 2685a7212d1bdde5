//! Haar sampling of U(N), O(N) and COE(N), numeric immanants of blocks, and
//! seeded Monte Carlo moment estimates.
//!
//! Sampling follows the Ginibre-then-orthonormalize recipe. Orthonormalizing
//! with positive column norms fixes the triangular factor's diagonal to be
//! positive real, which is the phase convention required for the result to
//! be Haar-distributed; see the sentinel tests for samplers that skip this
//! and get caught by the moment checks.
//!
//! Every sample draws from its own ChaCha substream, keyed by
//! `(seed, sample index)`, and reductions are deterministic pairwise tree
//! sums — estimates are bit-identical for a fixed seed no matter how many
//! worker threads run.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::matrix::ComplexMatrix;
use crate::moments::Ensemble;
use crate::partitions::Partition;
use crate::symgroup::{character, permutations};
use crate::Result;

/// Degree guard for the general character-sum immanant.
pub const MAX_IMMANANT_N: usize = 10;

/// The per-sample generator: substream `index` of the ChaCha stream family
/// seeded by `seed`. Parallel sampling order cannot change what any sample
/// sees.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-distributed `N x N` unitary: complex Ginibre matrix followed by
/// Gram–Schmidt with positive-real normalization.
pub fn haar_unitary<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = Complex64::new(standard_normal(rng), standard_normal(rng));
        }
    }
    m.orthonormalize_columns();
    m
}

/// Haar-distributed `N x N` real orthogonal (entries have zero imaginary
/// part): real Ginibre followed by the same orthonormalization.
pub fn haar_orthogonal<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = Complex64::new(standard_normal(rng), 0.0);
        }
    }
    m.orthonormalize_columns();
    m
}

/// COE(N) sample `V = U Uᵀ` with `U` Haar unitary; symmetric and unitary.
pub fn coe_sample<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let u = haar_unitary(n, rng);
    u.mul(&u.transpose())
}

/// Permanent by Ryser's inclusion–exclusion with Gray-code subset updates,
/// `O(2^n n)`.
pub fn permanent_ryser(a: &ComplexMatrix) -> Complex64 {
    let n = a.rows();
    assert_eq!(n, a.cols(), "permanent needs a square matrix");
    if n == 0 {
        return Complex64::ONE;
    }
    assert!(n < 32, "permanent bound");
    let mut row_sums = vec![Complex64::ZERO; n];
    let mut total = Complex64::ZERO;
    let mut prev_gray = 0u32;
    for k in 1u32..1 << n {
        let gray = k ^ (k >> 1);
        let bit = gray ^ prev_gray;
        let j = bit.trailing_zeros() as usize;
        if gray & bit != 0 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += a[(i, j)];
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= a[(i, j)];
            }
        }
        prev_gray = gray;
        let prod: Complex64 = row_sums.iter().product();
        if (n as u32 - gray.count_ones()) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

/// Immanant by the defining character sum `Σ_π χ_γ(π) Π_k A_{k,π(k)}`.
pub fn immanant_character_sum(a: &ComplexMatrix, gamma: &Partition) -> Complex64 {
    let n = a.rows();
    assert_eq!(n, a.cols(), "immanant needs a square matrix");
    assert_eq!(n, gamma.n(), "immanant: matrix size {} vs |γ| = {}", n, gamma.n());
    assert!(n <= MAX_IMMANANT_N, "character-sum immanant bound");
    let mut total = Complex64::ZERO;
    for pi in permutations(n).expect("bound checked") {
        let chi = character(gamma, &pi.cycle_type());
        if chi == 0 {
            continue;
        }
        let mut prod = Complex64::ONE;
        for k in 0..n {
            prod *= a[(k, pi.apply(k))];
        }
        total += prod * chi as f64;
    }
    total
}

/// Immanant `Imm_γ(A)` with fast paths: elimination determinant for
/// `γ = (1^n)`, Ryser permanent for `γ = (n)`, character sum otherwise.
pub fn immanant(a: &ComplexMatrix, gamma: &Partition) -> Complex64 {
    let n = gamma.n();
    assert_eq!(a.rows(), n, "immanant: matrix size {} vs |γ| = {n}", a.rows());
    if gamma == &Partition::column(n) {
        a.determinant()
    } else if gamma == &Partition::row(n) {
        permanent_ryser(a)
    } else {
        immanant_character_sum(a, gamma)
    }
}

/// A Monte Carlo estimate with its standard error.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MCEstimate {
    pub mean: f64,
    /// Bessel-corrected sample standard deviation over `sqrt(samples)`.
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Order-independent pairwise summation.
fn tree_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => tree_sum(&v[..n / 2]) + tree_sum(&v[n / 2..]),
    }
}

fn validate(ensemble: Ensemble, gamma: &Partition, big_n: i64, power: u32) -> Result<()> {
    let n = gamma.n();
    if n == 0 || (n as i64) > big_n {
        return Err(Error::InvalidCombination(format!(
            "block size n = {n} must satisfy 1 <= n <= N = {big_n}"
        )));
    }
    if n > MAX_IMMANANT_N {
        return Err(Error::InvalidCombination(format!(
            "block size n = {n} exceeds the immanant bound {MAX_IMMANANT_N}"
        )));
    }
    match power {
        2 => Ok(()),
        4 => {
            if ensemble == Ensemble::Unitary && gamma == &Partition::row(n) {
                Ok(())
            } else {
                Err(Error::InvalidCombination(
                    "power 4 is only available for the unitary permanent".into(),
                ))
            }
        }
        p => Err(Error::InvalidCombination(format!("unsupported power {p}"))),
    }
}

fn statistic(ensemble: Ensemble, gamma: &Partition, big_n: usize, power: u32, rng: &mut ChaCha8Rng) -> f64 {
    let n = gamma.n();
    let block = match ensemble {
        Ensemble::Unitary => haar_unitary(big_n, rng).top_left_block(n),
        Ensemble::Orthogonal => haar_orthogonal(big_n, rng).top_left_block(n),
        Ensemble::Coe => coe_sample(big_n, rng).top_left_block(n),
    };
    let imm = immanant(&block, gamma);
    match ensemble {
        // real matrices: the plain square, not the squared modulus
        Ensemble::Orthogonal => imm.re * imm.re,
        _ => {
            let sq = imm.norm_sqr();
            if power == 4 {
                sq * sq
            } else {
                sq
            }
        }
    }
}

/// Estimates `<|Imm_γ(block)|^power>` (unitary, COE) or `<Imm_γ(block)²>`
/// (orthogonal, real) over `samples` draws at matrix size `N`.
/// Identical `(seed, samples)` give bit-identical results regardless of the
/// rayon thread count.
pub fn mc_moment(
    ensemble: Ensemble,
    gamma: &Partition,
    big_n: i64,
    power: u32,
    samples: usize,
    seed: u64,
) -> Result<MCEstimate> {
    validate(ensemble, gamma, big_n, power)?;
    if samples < 2 {
        return Err(Error::InvalidCombination("need at least 2 samples".into()));
    }
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i as u64);
            statistic(ensemble, gamma, big_n as usize, power, &mut rng)
        })
        .collect();
    let mean = tree_sum(&values) / samples as f64;
    let sq_devs: Vec<f64> = values.iter().map(|x| (x - mean) * (x - mean)).collect();
    let variance = tree_sum(&sq_devs) / (samples - 1) as f64;
    Ok(MCEstimate {
        mean,
        stderr: (variance / samples as f64).sqrt(),
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{coe_imm_sq, orth_imm_sq, unitary_imm_sq, unitary_per_4};
    use crate::rational::to_f64;
    use crate::weingarten::{delta_match, pair_match, wg_orthogonal_perm, wg_unitary_perm};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn sampler_residuals() {
        for i in 0..100u64 {
            let mut rng = sample_rng(1000, i);
            let u = haar_unitary(6, &mut rng);
            assert!(u.unitarity_residual() < 1e-12);

            let o = haar_orthogonal(5, &mut rng);
            assert!(o.unitarity_residual() < 1e-12);
            assert!(o.max_abs_diff(&o.conj_transpose().transpose()) == 0.0); // real entries

            let v = coe_sample(6, &mut rng);
            assert!(v.unitarity_residual() < 1e-12);
            assert!(v.max_abs_diff(&v.transpose()) < 1e-13); // symmetric
        }
    }

    #[test]
    fn immanant_small_cases() {
        let id3 = ComplexMatrix::identity(3);
        // only the identity permutation contributes on the identity matrix
        assert!((immanant(&id3, &p(&[2, 1])) - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert!((immanant(&id3, &p(&[3])) - Complex64::ONE).norm() < 1e-14);
        assert!((immanant(&id3, &p(&[1, 1, 1])) - Complex64::ONE).norm() < 1e-14);

        // all-ones 3x3: Σ_π χ_(2,1)(π) = 0
        let ones = ComplexMatrix::from_fn(3, 3, |_, _| Complex64::ONE);
        assert!(immanant(&ones, &p(&[2, 1])).norm() < 1e-13);
        assert!((immanant(&ones, &p(&[3])) - Complex64::new(6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn ryser_matches_character_sum() {
        let mut rng = sample_rng(2024, 0);
        for _ in 0..100 {
            let a = ComplexMatrix::from_fn(6, 6, |_, _| {
                Complex64::new(standard_normal(&mut rng), standard_normal(&mut rng))
            });
            let fast = permanent_ryser(&a);
            let slow = immanant_character_sum(&a, &p(&[6]));
            assert!((fast - slow).norm() / slow.norm().max(1e-30) < 1e-10);
        }
    }

    #[test]
    fn determinant_matches_sign_character_sum() {
        let mut rng = sample_rng(2025, 0);
        for _ in 0..50 {
            let a = ComplexMatrix::from_fn(5, 5, |_, _| {
                Complex64::new(standard_normal(&mut rng), standard_normal(&mut rng))
            });
            let fast = immanant(&a, &p(&[1, 1, 1, 1, 1]));
            let slow = immanant_character_sum(&a, &p(&[1, 1, 1, 1, 1]));
            assert!((fast - slow).norm() / slow.norm() < 1e-10);
        }
    }

    fn z_score(est: &MCEstimate, exact: f64) -> f64 {
        (est.mean - exact) / est.stderr
    }

    #[test]
    fn haar_unitary_moments() {
        let est = mc_moment(Ensemble::Unitary, &p(&[1]), 5, 2, 100_000, 42).unwrap();
        assert!(z_score(&est, 0.2).abs() < 4.0, "{est:?}");
        let est = mc_moment(Ensemble::Unitary, &p(&[1]), 5, 4, 100_000, 43).unwrap();
        assert!(z_score(&est, to_f64(&unitary_per_4(1, 5).unwrap())).abs() < 4.0);
    }

    #[test]
    fn haar_orthogonal_moments() {
        // odd moment vanishes
        let values: Vec<f64> = (0..100_000u64)
            .map(|i| haar_orthogonal(4, &mut sample_rng(77, i))[(0, 0)].re)
            .collect();
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let sd = (values.iter().map(|x| (x - mean).powi(2)).sum::<f64>()
            / (values.len() - 1) as f64)
            .sqrt();
        assert!((mean / (sd / (values.len() as f64).sqrt())).abs() < 4.0);

        let est = mc_moment(Ensemble::Orthogonal, &p(&[1]), 4, 2, 100_000, 7).unwrap();
        assert!(z_score(&est, 0.25).abs() < 4.0, "{est:?}");
    }

    #[test]
    fn coe_moments() {
        let est = mc_moment(Ensemble::Coe, &p(&[1]), 7, 2, 100_000, 9).unwrap();
        assert!(z_score(&est, 0.25).abs() < 4.0, "{est:?}");
        let est = mc_moment(Ensemble::Coe, &p(&[1, 1]), 5, 2, 100_000, 10).unwrap();
        assert!(z_score(&est, 0.2).abs() < 4.0, "{est:?}");
    }

    #[test]
    fn grid_examples_from_exact_values() {
        let est = mc_moment(Ensemble::Unitary, &p(&[2]), 4, 2, 100_000, 42).unwrap();
        assert!(z_score(&est, to_f64(&unitary_imm_sq(&p(&[2]), 4).unwrap())).abs() < 4.0);
        let est = mc_moment(Ensemble::Orthogonal, &p(&[2]), 5, 2, 100_000, 11).unwrap();
        assert!(z_score(&est, to_f64(&orth_imm_sq(&p(&[2]), 5).unwrap())).abs() < 4.0);
        let est = mc_moment(Ensemble::Coe, &p(&[2]), 6, 2, 100_000, 12).unwrap();
        assert!(z_score(&est, to_f64(&coe_imm_sq(&p(&[2]), 6).unwrap())).abs() < 4.0);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| mc_moment(Ensemble::Unitary, &p(&[2]), 4, 2, 20_000, 123).unwrap())
        };
        let a = run(1);
        let b = run(4);
        let c = run(3);
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        assert_eq!(a, c);
    }

    #[test]
    fn invalid_combinations_rejected() {
        assert!(mc_moment(Ensemble::Unitary, &p(&[2, 1]), 2, 2, 100, 1).is_err()); // n > N
        assert!(mc_moment(Ensemble::Orthogonal, &p(&[2]), 5, 4, 100, 1).is_err()); // power 4
        assert!(mc_moment(Ensemble::Unitary, &p(&[1, 1]), 5, 4, 100, 1).is_err()); // power 4 non-permanent
        assert!(mc_moment(Ensemble::Unitary, &p(&[1]), 5, 3, 100, 1).is_err());
        assert!(mc_moment(Ensemble::Unitary, &p(&[1]), 5, 2, 1, 1).is_err());
    }

    /// Two-sample Kolmogorov–Smirnov statistic.
    fn ks_statistic(mut xs: Vec<f64>, mut ys: Vec<f64>) -> f64 {
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let (n, m) = (xs.len(), ys.len());
        let (mut i, mut j, mut d) = (0usize, 0usize, 0f64);
        while i < n && j < m {
            if xs[i] <= ys[j] {
                i += 1;
            } else {
                j += 1;
            }
            d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
        }
        d
    }

    #[test]
    fn left_translation_invariance_ks() {
        // |(UV)_{11}|² for fixed U has the same law as |V_{11}|².
        let n = 4;
        let samples = 10_000u64;
        let u = haar_unitary(n, &mut sample_rng(5150, 0));
        let translated: Vec<f64> = (0..samples)
            .map(|i| {
                let v = haar_unitary(n, &mut sample_rng(5151, i));
                u.mul(&v)[(0, 0)].norm_sqr()
            })
            .collect();
        let plain: Vec<f64> = (0..samples)
            .map(|i| haar_unitary(n, &mut sample_rng(5152, i))[(0, 0)].norm_sqr())
            .collect();
        let d = ks_statistic(translated, plain);
        // 1% critical value: 1.628 sqrt((n+m)/(nm))
        let crit = 1.628 * ((2.0 * samples as f64) / (samples as f64 * samples as f64)).sqrt();
        assert!(d < crit, "KS = {d}, critical = {crit}");
    }

    // -- sentinels for broken samplers ------------------------------------

    /// Wrong sampler A: real orthogonal with random column phases. The
    /// modulus of every entry is that of a real Haar matrix, so
    /// <|U_11|^4> = 3/(N(N+2)) instead of 2/(N(N+1)).
    fn naive_phased_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let o = haar_orthogonal(n, rng);
        let phases: Vec<Complex64> = (0..n)
            .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        ComplexMatrix::from_fn(n, n, |i, j| o[(i, j)] * phases[j])
    }

    /// Wrong sampler B: textbook complex Householder QR, returning Q with
    /// whatever phases the reflections produce. The first column is still a
    /// uniform direction up to a deterministic phase, so the modulus moments
    /// pass — but Q_11 = -|a_11|/‖a_1‖ is real negative, and the mean moment
    /// catches it.
    fn naive_householder_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let a = ComplexMatrix::from_fn(n, n, |_, _| {
            Complex64::new(standard_normal(rng), standard_normal(rng))
        });
        let mut r = a.clone();
        let mut q = ComplexMatrix::identity(n);
        for k in 0..n {
            let norm: f64 = (k..n).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                continue;
            }
            let x0 = r[(k, k)];
            let phase = if x0 == Complex64::ZERO {
                Complex64::ONE
            } else {
                x0 / x0.norm()
            };
            let alpha = -phase * norm;
            // v = x - alpha e_k, normalized
            let mut v: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
            v[0] -= alpha;
            let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if vnorm == 0.0 {
                continue;
            }
            for z in &mut v {
                *z /= vnorm;
            }
            // r <- H r, q <- q H with H = I - 2 v v† embedded at (k..n)
            for j in 0..n {
                let mut dot = Complex64::ZERO;
                for i in k..n {
                    dot += v[i - k].conj() * r[(i, j)];
                }
                for i in k..n {
                    let sub = 2.0 * v[i - k] * dot;
                    r[(i, j)] -= sub;
                }
            }
            for i in 0..n {
                let mut dot = Complex64::ZERO;
                for j in k..n {
                    dot += q[(i, j)] * v[j - k];
                }
                for j in k..n {
                    let sub = 2.0 * dot * v[j - k].conj();
                    q[(i, j)] -= sub;
                }
            }
        }
        q
    }

    #[test]
    fn sentinel_detects_naive_samplers() {
        let n = 4;
        let samples = 100_000u64;
        let exact_quartic = to_f64(&unitary_per_4(1, n as i64).unwrap()); // 2/(N(N+1))

        // Production sampler passes the quartic and mean checks.
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        let mut mean_re = 0.0;
        for i in 0..samples {
            let u = haar_unitary(n, &mut sample_rng(31337, i));
            let x = u[(0, 0)].norm_sqr().powi(2);
            sum += x;
            sum_sq += x * x;
            mean_re += u[(0, 0)].re;
        }
        let m = sum / samples as f64;
        let sd = ((sum_sq - sum * sum / samples as f64) / (samples - 1) as f64).sqrt();
        let se = sd / (samples as f64).sqrt();
        assert!(((m - exact_quartic) / se).abs() < 4.0, "good sampler flagged");
        assert!((mean_re / samples as f64).abs() < 0.01, "good sampler has zero mean");

        // Sampler A fails the quartic moment loudly.
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for i in 0..samples {
            let u = naive_phased_orthogonal(n, &mut sample_rng(31338, i));
            let x = u[(0, 0)].norm_sqr().powi(2);
            sum += x;
            sum_sq += x * x;
        }
        let m = sum / samples as f64;
        let sd = ((sum_sq - sum * sum / samples as f64) / (samples - 1) as f64).sqrt();
        let se = sd / (samples as f64).sqrt();
        let z = (m - exact_quartic) / se;
        assert!(z.abs() > 4.0, "sentinel missed sampler A: z = {z}");

        // Sampler B's modulus moments are exactly Haar (uniform first
        // column), so the quartic check cannot flag it; the first-moment
        // check does, decisively.
        let samples = 20_000u64;
        let (mut sum_re, mut sum_re_sq, mut sum_q) = (0.0, 0.0, 0.0);
        for i in 0..samples {
            let u = naive_householder_unitary(n, &mut sample_rng(31339, i));
            assert!(u.unitarity_residual() < 1e-12);
            sum_re += u[(0, 0)].re;
            sum_re_sq += u[(0, 0)].re * u[(0, 0)].re;
            sum_q += u[(0, 0)].norm_sqr().powi(2);
        }
        let m_re = sum_re / samples as f64;
        let sd_re =
            ((sum_re_sq - sum_re * sum_re / samples as f64) / (samples - 1) as f64).sqrt();
        let z_mean = m_re / (sd_re / (samples as f64).sqrt());
        assert!(z_mean.abs() > 10.0, "sentinel missed sampler B: z = {z_mean}");
        // and indeed its quartic moment is consistent with Haar
        let m_q = sum_q / samples as f64;
        assert!((m_q - exact_quartic).abs() / exact_quartic < 0.15);
    }

    // -- entry-moment expansions vs Monte Carlo ----------------------------

    #[test]
    fn entry_correlations_match_weingarten_expansions() {
        let big_n = 6usize;
        let samples = 20_000u64;
        let idx = [0usize, 1]; // index alphabet for patterns

        // unitary, n = 2: <U_{a1 b1} U_{a2 b2} U*_{c1 d1} U*_{c2 d2}>
        let perms2 = crate::symgroup::all_permutations(2).unwrap();
        let us: Vec<ComplexMatrix> = (0..samples)
            .map(|i| haar_unitary(big_n, &mut sample_rng(9000, i)))
            .collect();
        for &a1 in &idx {
            for &a2 in &idx {
                for &b1 in &idx {
                    for &b2 in &idx {
                        for &c1 in &idx {
                            for &c2 in &idx {
                                for &d1 in &idx {
                                    for &d2 in &idx {
                                        let mut exact = crate::rational::Rat::from_integer(0.into());
                                        for sigma in &perms2 {
                                            if !delta_match(sigma, &[a1, a2], &[c1, c2]) {
                                                continue;
                                            }
                                            for tau in &perms2 {
                                                if !delta_match(tau, &[b1, b2], &[d1, d2]) {
                                                    continue;
                                                }
                                                exact += wg_unitary_perm(
                                                    &sigma.inverse().compose(tau),
                                                    big_n as i64,
                                                )
                                                .unwrap();
                                            }
                                        }
                                        let exact = to_f64(&exact);
                                        let (mut s, mut s2) = (Complex64::ZERO, 0.0);
                                        for u in &us {
                                            let v = u[(a1, b1)] * u[(a2, b2)]
                                                * (u[(c1, d1)] * u[(c2, d2)]).conj();
                                            s += v;
                                            s2 += v.re * v.re;
                                        }
                                        let mean = s / samples as f64;
                                        let sd = ((s2 - s.re * s.re / samples as f64)
                                            / (samples - 1) as f64)
                                            .sqrt();
                                        let se = sd / (samples as f64).sqrt();
                                        assert!(
                                            ((mean.re - exact) / se.max(1e-12)).abs() < 4.0,
                                            "unitary pattern ({a1}{a2},{b1}{b2},{c1}{c2},{d1}{d2})"
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        // orthogonal, n = 2: <O_{i1 j1} O_{i2 j2} O_{i3 j3} O_{i4 j4}>
        let reps2 = crate::matchings::matching_representatives(2).unwrap();
        let os: Vec<ComplexMatrix> = (0..samples)
            .map(|i| haar_orthogonal(big_n, &mut sample_rng(9001, i)))
            .collect();
        let tuples: Vec<[usize; 4]> = {
            let mut v = Vec::new();
            for &a in &idx {
                for &b in &idx {
                    for &c in &idx {
                        for &d in &idx {
                            v.push([a, b, c, d]);
                        }
                    }
                }
            }
            v
        };
        for rows in &tuples {
            for cols in &tuples {
                let mut exact = crate::rational::Rat::from_integer(0.into());
                for sigma in &reps2 {
                    if !pair_match(sigma, rows) {
                        continue;
                    }
                    for tau in &reps2 {
                        if !pair_match(tau, cols) {
                            continue;
                        }
                        exact +=
                            wg_orthogonal_perm(&sigma.inverse().compose(tau), big_n as i64)
                                .unwrap();
                    }
                }
                let exact = to_f64(&exact);
                let (mut s, mut s2) = (0.0, 0.0);
                for o in &os {
                    let v = o[(rows[0], cols[0])].re
                        * o[(rows[1], cols[1])].re
                        * o[(rows[2], cols[2])].re
                        * o[(rows[3], cols[3])].re;
                    s += v;
                    s2 += v * v;
                }
                let mean = s / samples as f64;
                let sd = ((s2 - s * s / samples as f64) / (samples - 1) as f64).sqrt();
                let se = sd / (samples as f64).sqrt();
                assert!(
                    ((mean - exact) / se.max(1e-12)).abs() < 4.0,
                    "orthogonal pattern {rows:?} {cols:?}"
                );
            }
        }

        // COE, n = 1: <V_{a1 a2} V*_{b1 b2}> with W_O at N + 1
        let perms_s2 = crate::symgroup::all_permutations(2).unwrap();
        let vs: Vec<ComplexMatrix> = (0..samples)
            .map(|i| coe_sample(big_n, &mut sample_rng(9002, i)))
            .collect();
        for &a1 in &idx {
            for &a2 in &idx {
                for &b1 in &idx {
                    for &b2 in &idx {
                        let mut exact = crate::rational::Rat::from_integer(0.into());
                        for sigma in &perms_s2 {
                            if delta_match(sigma, &[a1, a2], &[b1, b2]) {
                                exact += crate::weingarten::wg_coe_perm(sigma, big_n as i64)
                                    .unwrap();
                            }
                        }
                        let exact = to_f64(&exact);
                        let (mut s, mut s2) = (Complex64::ZERO, 0.0);
                        for v in &vs {
                            let x = v[(a1, a2)] * v[(b1, b2)].conj();
                            s += x;
                            s2 += x.re * x.re;
                        }
                        let mean = s / samples as f64;
                        let sd = ((s2 - s.re * s.re / samples as f64) / (samples - 1) as f64)
                            .sqrt();
                        let se = sd / (samples as f64).sqrt();
                        assert!(
                            ((mean.re - exact) / se.max(1e-12)).abs() < 4.0,
                            "coe pattern ({a1}{a2},{b1}{b2})"
                        );
                    }
                }
            }
        }
    }
}
