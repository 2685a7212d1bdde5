//! Perfect matchings on `{1..2n}`, coset types, the hyperoctahedral group
//! `H_n`, zonal spherical functions `ω_λ(μ)`, and the derived sums `g_λ` and
//! `G_{λ,γ}`.
//!
//! A matching is represented canonically by the unique permutation
//! `σ ∈ M_n` with `σ(t) = m`, `σ(2k-1) < σ(2k)` and
//! `σ(1) < σ(3) < ... < σ(2n-1)`, where `t = {{1,2},{3,4},...}` is the
//! trivial matching. The coset type of `σ ∈ S_{2n}` is read off the graph
//! whose edges are the blocks of `σ(t)` and of `t`: its connected components
//! are even cycles, and the parts are half their edge counts.
//!
//! `ω_λ(μ) = (1/|H_n|) Σ_{ξ ∈ H_n} χ_{2λ}(τ ξ)` for any `τ` of coset type
//! `μ`; we evaluate it with the fixed representative `τ_μ = lift_odd(π_μ)`
//! (coset type of `π_o` equals the cycle type of `π`), tallying the cycle
//! types of `τ_μ ξ` over `H_n` once per `μ` and contracting against the
//! character table. Everything is cached; the full `ω` table for `n = 6`
//! is 11 x 11.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::partitions::{
    class_size, dim_sn, double_coset_size, double_partition, partitions_of, Partition,
};
use crate::rational::{factorial, rat, rat_big, Rat};
use crate::symgroup::{canonical_of_cycle_type, character, permutations, Permutation};
use crate::Result;

/// Bound for materializing `H_n` ([`hyperoctahedral`]).
pub const MAX_HYPEROCTAHEDRAL_N: usize = 6;
/// Bound for the lazy `H_n` sweep behind [`zonal_spherical`].
pub const MAX_ZONAL_N: usize = 8;
/// Bound for enumerating all `(2n-1)!!` matchings.
pub const MAX_MATCHING_ENUM_N: usize = 8;

/// A perfect matching of `{1..2n}`: `n` disjoint unordered pairs, stored
/// 0-based with each pair `(a, b)` satisfying `a < b`, sorted by `a`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Normalizes and validates: pairs must be disjoint and cover `{0..2n-1}`.
    pub fn from_pairs(pairs: Vec<(usize, usize)>) -> Self {
        let two_n = 2 * pairs.len();
        let mut seen = vec![false; two_n];
        let mut norm: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(a, b)| {
                assert!(a != b && a < two_n && b < two_n, "bad pair ({a}, {b})");
                assert!(!seen[a] && !seen[b], "pairs are not disjoint");
                seen[a] = true;
                seen[b] = true;
                (a.min(b), a.max(b))
            })
            .collect();
        norm.sort_unstable();
        Matching { pairs: norm }
    }

    /// The trivial matching `{{1,2},{3,4},...,{2n-1,2n}}`.
    pub fn trivial(n: usize) -> Self {
        Matching {
            pairs: (0..n).map(|k| (2 * k, 2 * k + 1)).collect(),
        }
    }

    /// Number of blocks.
    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Partner array: `partner[a] = b` for every block `{a, b}`.
    pub fn partners(&self) -> Vec<usize> {
        let mut partner = vec![0; 2 * self.pairs.len()];
        for &(a, b) in &self.pairs {
            partner[a] = b;
            partner[b] = a;
        }
        partner
    }

    /// Image matching: block `{a,b}` maps to `{σ(a), σ(b)}`.
    pub fn apply_perm(&self, sigma: &Permutation) -> Matching {
        assert_eq!(sigma.degree(), 2 * self.n(), "apply_perm: degree mismatch");
        Matching::from_pairs(
            self.pairs
                .iter()
                .map(|&(a, b)| (sigma.apply(a), sigma.apply(b)))
                .collect(),
        )
    }

    /// The canonical representative `σ ∈ M_n` with `σ(t) = self`.
    pub fn canonical_rep(&self) -> Permutation {
        let mut images = Vec::with_capacity(2 * self.pairs.len());
        for &(a, b) in &self.pairs {
            images.push(a);
            images.push(b);
        }
        Permutation::from_images(images)
    }
}

impl fmt::Display for Matching {
    /// Sorted 1-based pair list, e.g. `1-2,3-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(a, b) in &self.pairs {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}-{}", a + 1, b + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// All `(2n-1)!!` matchings, in the deterministic order produced by always
/// pairing the smallest free point first.
pub fn all_matchings(n: usize) -> Result<Vec<Matching>> {
    if n > MAX_MATCHING_ENUM_N {
        return Err(Error::BoundExceeded {
            what: "matching enumeration",
            requested: n,
            maximum: MAX_MATCHING_ENUM_N,
        });
    }
    let mut out = Vec::new();
    let free: Vec<usize> = (0..2 * n).collect();
    let mut acc = Vec::new();
    pair_up(&free, &mut acc, &mut out);
    Ok(out)
}

fn pair_up(free: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
    if free.is_empty() {
        out.push(Matching { pairs: acc.clone() });
        return;
    }
    let a = free[0];
    for idx in 1..free.len() {
        let b = free[idx];
        let mut rest: Vec<usize> = free[1..].to_vec();
        rest.remove(idx - 1);
        acc.push((a, b));
        pair_up(&rest, acc, out);
        acc.pop();
    }
}

/// The canonical permutations `M_n` representing all matchings.
pub fn matching_representatives(n: usize) -> Result<Vec<Permutation>> {
    Ok(all_matchings(n)?
        .iter()
        .map(Matching::canonical_rep)
        .collect())
}

/// Coset type of `σ ∈ S_{2n}`: half the edge counts of the components of the
/// graph with edge sets `σ(t)` and `t`.
pub fn coset_type(sigma: &Permutation) -> Partition {
    let two_n = sigma.degree();
    assert!(two_n % 2 == 0, "coset type needs even degree");
    let mut partner = vec![0usize; two_n];
    for k in 0..two_n / 2 {
        let a = sigma.apply(2 * k);
        let b = sigma.apply(2 * k + 1);
        partner[a] = b;
        partner[b] = a;
    }
    let mut seen = vec![false; two_n];
    let mut parts = Vec::new();
    for start in 0..two_n {
        if seen[start] {
            continue;
        }
        let mut edges = 0usize;
        let mut i = start;
        loop {
            seen[i] = true;
            let j = i ^ 1; // trivial-matching partner
            seen[j] = true;
            edges += 2; // one trivial edge, one σ(t) edge
            i = partner[j];
            if i == start {
                break;
            }
        }
        parts.push(edges / 2);
    }
    Partition::from_lengths(parts)
}

/// `π_o ∈ S_{2n}`: `π` acting on the odd points `1,3,...,2n-1`, fixing the
/// even ones.
pub fn lift_odd(pi: &Permutation) -> Permutation {
    let n = pi.degree();
    let mut images: Vec<usize> = (0..2 * n).collect();
    for k in 0..n {
        images[2 * k] = 2 * pi.apply(k);
    }
    Permutation::from_images(images)
}

/// `π_e ∈ S_{2n}`: `π` acting on the even points `2,4,...,2n`.
pub fn lift_even(pi: &Permutation) -> Permutation {
    let n = pi.degree();
    let mut images: Vec<usize> = (0..2 * n).collect();
    for k in 0..n {
        images[2 * k + 1] = 2 * pi.apply(k) + 1;
    }
    Permutation::from_images(images)
}

/// `p = (1 2)(3 4)...(2n-1 2n)`, conjugating `π_o` into `π_e`.
pub fn block_flip_all(n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..2 * n).collect();
    for k in 0..n {
        images.swap(2 * k, 2 * k + 1);
    }
    Permutation::from_images(images)
}

/// The element of `S_2^{⊗n}` flipping block `k` for every set bit of `mask`.
fn flips_from_mask(n: usize, mask: u32) -> Permutation {
    let mut images: Vec<usize> = (0..2 * n).collect();
    for k in 0..n {
        if mask >> k & 1 == 1 {
            images.swap(2 * k, 2 * k + 1);
        }
    }
    Permutation::from_images(images)
}

/// The hyperoctahedral group `H_n`, the stabilizer of the trivial matching:
/// all `2^n n!` products `π_e π_o ξ` with `π ∈ S_n`, `ξ ∈ S_2^{⊗n}`.
pub fn hyperoctahedral(n: usize) -> Result<Vec<Permutation>> {
    if n > MAX_HYPEROCTAHEDRAL_N {
        return Err(Error::BoundExceeded {
            what: "hyperoctahedral enumeration",
            requested: n,
            maximum: MAX_HYPEROCTAHEDRAL_N,
        });
    }
    let mut out = Vec::with_capacity((1usize << n) * factorial_usize(n));
    for pi in permutations(n).expect("n <= 6") {
        let base = lift_even(&pi).compose(&lift_odd(&pi));
        for mask in 0..1u32 << n {
            out.push(base.compose(&flips_from_mask(n, mask)));
        }
    }
    Ok(out)
}

fn factorial_usize(n: usize) -> usize {
    (2..=n).product::<usize>().max(1)
}

// ---------------------------------------------------------------------------
// Zonal spherical functions
// ---------------------------------------------------------------------------

type DistKey = (usize, Partition);
type Dist = Vec<(Partition, u64)>;

fn dist_cache() -> &'static RwLock<HashMap<DistKey, Dist>> {
    static CACHE: OnceLock<RwLock<HashMap<DistKey, Dist>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn zonal_cache() -> &'static RwLock<HashMap<(Partition, Partition), Rat>> {
    static CACHE: OnceLock<RwLock<HashMap<(Partition, Partition), Rat>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Cycle type of `i -> comp(ξ(i))` without materializing the permutation.
fn cycle_type_flipped(comp: &Permutation, mask: u32) -> Partition {
    let m = comp.degree();
    let flip = |i: usize| -> usize {
        if mask >> (i / 2) & 1 == 1 {
            i ^ 1
        } else {
            i
        }
    };
    let mut seen = vec![false; m];
    let mut lengths = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = comp.apply(flip(i));
            len += 1;
        }
        lengths.push(len);
    }
    Partition::from_lengths(lengths)
}

/// Tally of `cycle_type(τ_μ ξ)` over `ξ ∈ H_n`, cached per `(n, μ)`.
fn coset_type_distribution(mu: &Partition) -> Dist {
    let n = mu.n();
    let key = (n, mu.clone());
    if let Some(d) = dist_cache().read().unwrap().get(&key) {
        return d.clone();
    }

    let tau = lift_odd(&canonical_of_cycle_type(mu));
    let mut tally: HashMap<Partition, u64> = HashMap::new();
    for pi in permutations(n).expect("zonal bound enforced by caller") {
        let base = lift_even(&pi).compose(&lift_odd(&pi));
        let comp = tau.compose(&base);
        for mask in 0..1u32 << n {
            *tally.entry(cycle_type_flipped(&comp, mask)).or_default() += 1;
        }
    }
    let mut dist: Dist = tally.into_iter().collect();
    dist.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    dist_cache().write().unwrap().insert(key, dist.clone());
    dist
}

/// Zonal spherical function `ω_λ(μ)` of the Gelfand pair `(S_{2n}, H_n)`:
/// the `H_n`-average of `χ_{2λ}` at any permutation of coset type `μ`.
/// Exact rational; panics unless `|λ| = |μ| <= MAX_ZONAL_N`.
pub fn zonal_spherical(lambda: &Partition, mu: &Partition) -> Rat {
    let n = lambda.n();
    assert_eq!(n, mu.n(), "zonal_spherical: |λ| != |μ|");
    assert!(n <= MAX_ZONAL_N, "zonal_spherical bound is {MAX_ZONAL_N}");
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = zonal_cache().read().unwrap().get(&key) {
        return v.clone();
    }

    let doubled = double_partition(lambda);
    let mut sum = BigInt::zero();
    for (ty, count) in coset_type_distribution(mu) {
        sum += BigInt::from(character(&doubled, &ty)) * count;
    }
    let order = BigInt::from(2).pow(n as u32) * factorial(n); // |H_n|
    let value = Rat::new(sum, order);
    zonal_cache().write().unwrap().insert(key, value.clone());
    value
}

/// `ω_λ` evaluated at a permutation, through its coset type.
pub fn zonal_spherical_perm(lambda: &Partition, sigma: &Permutation) -> Rat {
    zonal_spherical(lambda, &coset_type(sigma))
}

// ---------------------------------------------------------------------------
// g and G
// ---------------------------------------------------------------------------

/// Closed form for `g_λ = Σ_μ |C_μ| ω_λ(μ)`: zero unless `λ` has at most two
/// parts, in which case `(2λ_2)! λ_1! / (4^{λ_2} λ_2!)`.
pub fn g_value(lambda: &Partition) -> Rat {
    if lambda.len() > 2 {
        return Rat::zero();
    }
    let l1 = lambda.part(1);
    let l2 = lambda.part(2);
    let num = factorial(2 * l2) * factorial(l1);
    let den = BigInt::from(4).pow(l2 as u32) * factorial(l2);
    Rat::new(num, den)
}

/// `g_λ` from its defining sum over classes; the oracle for [`g_value`].
pub fn g_value_from_sum(lambda: &Partition) -> Rat {
    partitions_of(lambda.n())
        .iter()
        .map(|mu| rat_big(class_size(mu)) * zonal_spherical(lambda, mu))
        .sum()
}

fn g_big_cache() -> &'static RwLock<HashMap<(Partition, Partition), Rat>> {
    static CACHE: OnceLock<RwLock<HashMap<(Partition, Partition), Rat>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `G_{λ,γ} = Σ_{μ ⊢ n} |C_μ| ω_λ(μ) χ_γ(μ)`.
pub fn g_weighted(lambda: &Partition, gamma: &Partition) -> Rat {
    assert_eq!(lambda.n(), gamma.n(), "G: |λ| != |γ|");
    let key = (lambda.clone(), gamma.clone());
    if let Some(v) = g_big_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let value: Rat = partitions_of(lambda.n())
        .iter()
        .map(|mu| {
            rat_big(class_size(mu)) * zonal_spherical(lambda, mu) * rat(character(gamma, mu))
        })
        .sum();
    g_big_cache().write().unwrap().insert(key, value.clone());
    value
}

// ---------------------------------------------------------------------------
// Factorization counts
// ---------------------------------------------------------------------------

/// Which group the factors live in: conjugacy classes of `S_n` or
/// hyperoctahedral double cosets of `S_{2n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorizationMode {
    Character,
    Zonal,
}

/// Number of solutions of `π_1 π_2 ... π_r = 1` with `π_i` constrained to
/// the class `C_{α_i}` (`Character`) or the double coset `K_{α_i}` (`Zonal`).
pub fn count_factorizations(alphas: &[Partition], mode: FactorizationMode) -> Rat {
    assert!(!alphas.is_empty(), "need at least one factor");
    let n = alphas[0].n();
    assert!(
        alphas.iter().all(|a| a.n() == n),
        "factor classes must share n"
    );
    let r = alphas.len() as i64;

    match mode {
        FactorizationMode::Character => {
            let mut prefactor = Rat::new(BigInt::one(), factorial(n));
            for a in alphas {
                prefactor *= rat_big(class_size(a));
            }
            let sum: Rat = partitions_of(n)
                .iter()
                .map(|beta| {
                    let mut chi_prod = BigInt::one();
                    for a in alphas {
                        chi_prod *= BigInt::from(character(beta, a));
                    }
                    let d = dim_sn(beta);
                    // χ-product divided by d^(r-2); r = 1 multiplies by d.
                    if r >= 2 {
                        Rat::new(chi_prod, d.pow((r - 2) as u32))
                    } else {
                        rat_big(chi_prod) * rat_big(d.pow((2 - r) as u32))
                    }
                })
                .sum();
            prefactor * sum
        }
        FactorizationMode::Zonal => {
            let mut prefactor = Rat::new(BigInt::one(), factorial(2 * n));
            for a in alphas {
                prefactor *= rat_big(double_coset_size(a));
            }
            let sum: Rat = partitions_of(n)
                .iter()
                .map(|beta| {
                    let mut term = rat_big(dim_sn(&double_partition(beta)));
                    for a in alphas {
                        term *= zonal_spherical(beta, a);
                    }
                    term
                })
                .sum();
            prefactor * sum
        }
    }
}
