//! Weingarten functions for U(N), O(N) and COE(N), plus the index-matching
//! delta machinery used by the raw moment expansions.
//!
//! Values are computed per class label — cycle type for the unitary family,
//! coset type for the orthogonal family — and memoized as a full table per
//! `(n, N)`. Callers holding a permutation convert through
//! [`crate::symgroup::Permutation::cycle_type`] or
//! [`crate::matchings::coset_type`] first (thin `_perm` wrappers are
//! provided). Evaluation at an `N` where any `[N]` denominator of the table
//! vanishes is a typed error naming the offending shape; for these two
//! polynomial families that can only happen at `N < n`, where the one-column
//! shape is always among the vanishing ones and its coefficient never is.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::matchings::{coset_type, zonal_spherical};
use crate::partitions::{
    dim_sn, double_partition, partitions_of, poly_one, poly_two, Partition,
};
use crate::rational::{factorial, rat, rat_big, Rat};
use crate::symgroup::Permutation;
use crate::Result;

/// A sequence of matrix indices (1-based values when used against a matrix).
pub type IndexSequence = Vec<usize>;

/// `δ_τ[j, m] = prod_k δ_{j_k, m_{τ(k)}}`: 1 iff the sequences match up to
/// the permutation `τ`. Panics unless lengths equal the degree of `τ`.
pub fn delta_match(tau: &Permutation, j: &[usize], m: &[usize]) -> bool {
    assert!(
        j.len() == tau.degree() && m.len() == tau.degree(),
        "delta_match: length mismatch"
    );
    (0..j.len()).all(|k| j[k] == m[tau.apply(k)])
}

/// `Δ_σ[i] = prod_k δ_{i_{σ(2k-1)}, i_{σ(2k)}}`: 1 iff the entries of `i`
/// are pairwise equal according to the matching `σ(t)`.
pub fn pair_match(sigma: &Permutation, indices: &[usize]) -> bool {
    assert_eq!(
        indices.len(),
        sigma.degree(),
        "pair_match: length mismatch"
    );
    (0..indices.len() / 2).all(|k| indices[sigma.apply(2 * k)] == indices[sigma.apply(2 * k + 1)])
}

/// Interleave: `(i_1, j_1, i_2, j_2, ...)`. Panics on length mismatch.
pub fn interleave(i: &[usize], j: &[usize]) -> IndexSequence {
    assert_eq!(i.len(), j.len(), "interleave: length mismatch");
    let mut out = Vec::with_capacity(2 * i.len());
    for (a, b) in i.iter().zip(j) {
        out.push(*a);
        out.push(*b);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Family {
    Unitary,
    Orthogonal,
}

type TableKey = (Family, usize, i64);

fn table_cache() -> &'static RwLock<HashMap<TableKey, HashMap<Partition, Rat>>> {
    static CACHE: OnceLock<RwLock<HashMap<TableKey, HashMap<Partition, Rat>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn unitary_table(n: usize, big_n: i64) -> Result<HashMap<Partition, Rat>> {
    let key = (Family::Unitary, n, big_n);
    if let Some(t) = table_cache().read().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let shapes = partitions_of(n);
    // Precompute the denominators, failing on any pole that can contribute.
    let mut denoms = Vec::with_capacity(shapes.len());
    for lam in &shapes {
        let d = poly_one(lam, big_n);
        if d.is_zero() {
            return Err(Error::Pole {
                family: "[N]^(1)",
                shape: lam.clone(),
                point: big_n,
            });
        }
        denoms.push(d);
    }
    let nfact = rat_big(factorial(n));
    let mut table = HashMap::new();
    for mu in &shapes {
        let mut sum = Rat::zero();
        for (lam, denom) in shapes.iter().zip(&denoms) {
            let chi = crate::symgroup::character(lam, mu);
            if chi != 0 {
                sum += rat_big(dim_sn(lam)) * rat(chi) / denom;
            }
        }
        table.insert(mu.clone(), sum / &nfact);
    }
    table_cache().write().unwrap().insert(key, table.clone());
    Ok(table)
}

fn orthogonal_table(n: usize, big_n: i64) -> Result<HashMap<Partition, Rat>> {
    let key = (Family::Orthogonal, n, big_n);
    if let Some(t) = table_cache().read().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let shapes = partitions_of(n);
    let mut denoms = Vec::with_capacity(shapes.len());
    for lam in &shapes {
        let d = poly_two(lam, big_n);
        if d.is_zero() {
            return Err(Error::Pole {
                family: "[N]^(2)",
                shape: lam.clone(),
                point: big_n,
            });
        }
        denoms.push(d);
    }
    let prefactor = Rat::new(
        BigInt::from(2).pow(n as u32) * factorial(n),
        factorial(2 * n),
    );
    let mut table = HashMap::new();
    for mu in &shapes {
        let mut sum = Rat::zero();
        for (lam, denom) in shapes.iter().zip(&denoms) {
            sum += rat_big(dim_sn(&double_partition(lam))) * zonal_spherical(lam, mu) / denom;
        }
        table.insert(mu.clone(), &prefactor * sum);
    }
    table_cache().write().unwrap().insert(key, table.clone());
    Ok(table)
}

/// Unitary Weingarten function at cycle type `μ ⊢ n`:
/// `(1/n!) Σ_{λ⊢n} d_λ χ_λ(μ) / [N]^(1)_λ`.
pub fn wg_unitary(mu: &Partition, big_n: i64) -> Result<Rat> {
    Ok(unitary_table(mu.n(), big_n)?[mu].clone())
}

/// Orthogonal Weingarten function at coset type `μ ⊢ n`:
/// `(2^n n!/(2n)!) Σ_{λ⊢n} d_{2λ} ω_λ(μ) / [N]^(2)_λ`.
pub fn wg_orthogonal(mu: &Partition, big_n: i64) -> Result<Rat> {
    Ok(orthogonal_table(mu.n(), big_n)?[mu].clone())
}

/// COE Weingarten function: the orthogonal one at `N + 1`.
pub fn wg_coe(mu: &Partition, big_n: i64) -> Result<Rat> {
    wg_orthogonal(mu, big_n + 1)
}

/// Unitary Weingarten of a permutation, through its cycle type.
pub fn wg_unitary_perm(sigma: &Permutation, big_n: i64) -> Result<Rat> {
    wg_unitary(&sigma.cycle_type(), big_n)
}

/// Orthogonal Weingarten of `σ ∈ S_{2n}`, through its coset type.
pub fn wg_orthogonal_perm(sigma: &Permutation, big_n: i64) -> Result<Rat> {
    wg_orthogonal(&coset_type(sigma), big_n)
}

/// COE Weingarten of `σ ∈ S_{2n}`, through its coset type.
pub fn wg_coe_perm(sigma: &Permutation, big_n: i64) -> Result<Rat> {
    wg_coe(&coset_type(sigma), big_n)
}

/// Exact limit of `N^n * W_U((1^n), N)` as `N -> ∞`: each summand of the
/// Weingarten sum is a constant over a monic degree-`n` polynomial, so the
/// limit is the sum of the constants, `(1/n!) Σ_λ d_λ²`.
pub fn wg_unitary_identity_leading(n: usize) -> Rat {
    let sum: BigInt = partitions_of(n).iter().map(|lam| dim_sn(lam).pow(2)).sum();
    Rat::new(sum, factorial(n))
}
