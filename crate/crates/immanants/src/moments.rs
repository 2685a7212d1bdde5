//! Closed-form moment formulas for immanants of the upper-left `n x n`
//! block, and the raw Weingarten-sum oracles that validate them.
//!
//! Closed forms:
//!
//! ```text
//! <|Imm_γ(U)|²>_U(N)    = n! / [N]^(1)_γ
//! <|Per_n(U)|⁴>_U(N)    = ((2^n n!)²/(2n)!) Σ_λ d_{2λ} g_λ² / [N]^(1)_{2λ}
//! <|Imm_γ(V)|²>_COE(N)  = (4^n n!/(2n)!)    Σ_λ d_{2λ} G_{λ,γ}² / [N+1]^(2)_λ
//! <Imm_γ(O)²>_O(N)      = (n!/d_γ)(2^n n!/(2n)!) Σ_λ d_{2λ} G_{λ,γ} / [N]^(2)_λ
//! ```
//!
//! Each oracle expands the matrix-entry moment at the earliest point of the
//! corresponding derivation — sums over permutations or matchings with
//! explicit index-delta constraints and per-element Weingarten values — so
//! no character or zonal orthogonality is shared with the closed form it
//! checks. All values are exact rationals; agreement means exact equality.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Error;
use crate::matchings::{g_value, g_weighted, matching_representatives};
use crate::partitions::{
    dim_sn, double_partition, partitions_of, poly_alpha_zeros, poly_one, poly_two, Partition,
};
use crate::rational::{binomial, factorial, rat, rat_big, Rat};
use crate::symgroup::{all_permutations, character_perm, Permutation};
use crate::weingarten::{delta_match, pair_match, wg_orthogonal_perm, wg_unitary_perm};
use crate::Result;

/// The three matrix ensembles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    Unitary,
    Orthogonal,
    Coe,
}

impl std::fmt::Display for Ensemble {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ensemble::Unitary => "unitary",
            Ensemble::Orthogonal => "orthogonal",
            Ensemble::Coe => "coe",
        })
    }
}

impl std::str::FromStr for Ensemble {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "unitary" => Ok(Ensemble::Unitary),
            "orthogonal" => Ok(Ensemble::Orthogonal),
            "coe" => Ok(Ensemble::Coe),
            other => Err(format!("unknown ensemble {other:?}")),
        }
    }
}

/// Carrier for a single evaluated moment.
#[derive(Clone, Debug, Serialize)]
pub struct MomentResult {
    pub ensemble: Ensemble,
    pub gamma: Partition,
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: i64,
    /// Exact value, `p/q`.
    pub value: String,
}

impl MomentResult {
    pub fn new(ensemble: Ensemble, gamma: Partition, big_n: i64, value: &Rat) -> Self {
        MomentResult {
            ensemble,
            n: gamma.n(),
            gamma,
            big_n,
            value: crate::rational::format_rat(value),
        }
    }
}

// ---------------------------------------------------------------------------
// Closed forms (Propositions 1-5)
// ---------------------------------------------------------------------------

/// `<|Imm_γ(U)|²>` over U(N): `n!/[N]^(1)_γ`.
pub fn unitary_imm_sq(gamma: &Partition, big_n: i64) -> Result<Rat> {
    let denom = poly_one(gamma, big_n);
    if denom.is_zero() {
        return Err(Error::Pole {
            family: "[N]^(1)",
            shape: gamma.clone(),
            point: big_n,
        });
    }
    Ok(rat_big(factorial(gamma.n())) / denom)
}

/// `<|Per_n(U)|⁴>` over U(N).
pub fn unitary_per_4(n: usize, big_n: i64) -> Result<Rat> {
    let prefactor = Rat::new(
        (BigInt::from(2).pow(n as u32) * factorial(n)).pow(2),
        factorial(2 * n),
    );
    let mut sum = Rat::zero();
    for lam in partitions_of(n) {
        let g = g_value(&lam);
        if g.is_zero() {
            continue;
        }
        let doubled = double_partition(&lam);
        let denom = poly_one(&doubled, big_n);
        if denom.is_zero() {
            return Err(Error::Pole {
                family: "[N]^(1)",
                shape: doubled,
                point: big_n,
            });
        }
        sum += rat_big(dim_sn(&doubled)) * (&g * &g) / denom;
    }
    Ok(prefactor * sum)
}

/// `<|Imm_γ(V)|²>` over COE(N).
pub fn coe_imm_sq(gamma: &Partition, big_n: i64) -> Result<Rat> {
    let n = gamma.n();
    let prefactor = Rat::new(
        BigInt::from(4).pow(n as u32) * factorial(n),
        factorial(2 * n),
    );
    let mut sum = Rat::zero();
    for lam in partitions_of(n) {
        let g = g_weighted(&lam, gamma);
        if g.is_zero() {
            continue;
        }
        let denom = poly_two(&lam, big_n + 1);
        if denom.is_zero() {
            return Err(Error::Pole {
                family: "[N+1]^(2)",
                shape: lam,
                point: big_n,
            });
        }
        sum += rat_big(dim_sn(&double_partition(&lam))) * (&g * &g) / denom;
    }
    Ok(prefactor * sum)
}

/// `<Imm_γ(O)²>` over O(N).
pub fn orth_imm_sq(gamma: &Partition, big_n: i64) -> Result<Rat> {
    let n = gamma.n();
    let prefactor = Rat::new(factorial(n), dim_sn(gamma))
        * Rat::new(
            BigInt::from(2).pow(n as u32) * factorial(n),
            factorial(2 * n),
        );
    let mut sum = Rat::zero();
    for lam in partitions_of(n) {
        let g = g_weighted(&lam, gamma);
        if g.is_zero() {
            continue;
        }
        let denom = poly_two(&lam, big_n);
        if denom.is_zero() {
            return Err(Error::Pole {
                family: "[N]^(2)",
                shape: lam,
                point: big_n,
            });
        }
        sum += rat_big(dim_sn(&double_partition(&lam))) * g / denom;
    }
    Ok(prefactor * sum)
}

/// Coefficients of `<Per_n(U - z₁) Per_n(U† - z₂)>` over U(N) or O(N):
/// entry `m` is the coefficient of `(z₁z₂)^{n-m}`, equal to
/// `C(n,m) <|Per_m|²>`.
pub fn perm_poly_quad(n: usize, big_n: i64, ensemble: Ensemble) -> Result<Vec<Rat>> {
    let moment = |m: usize| -> Result<Rat> {
        match ensemble {
            Ensemble::Unitary => unitary_imm_sq(&Partition::row(m), big_n),
            Ensemble::Orthogonal => orth_imm_sq(&Partition::row(m), big_n),
            Ensemble::Coe => Err(Error::InvalidCombination(
                "permanent polynomials are defined for the unitary and orthogonal groups".into(),
            )),
        }
    };
    (0..=n)
        .map(|m| Ok(rat_big(binomial(n, m)) * moment(m)?))
        .collect()
}

// ---------------------------------------------------------------------------
// Pole sets
// ---------------------------------------------------------------------------

/// Integer poles of `unitary_imm_sq(γ, ·)`.
pub fn poles_unitary_imm_sq(gamma: &Partition) -> BTreeSet<i64> {
    poly_alpha_zeros(gamma, 1)
}

/// Integer poles of `unitary_per_4(n, ·)` (contributing shapes only).
pub fn poles_unitary_per_4(n: usize) -> BTreeSet<i64> {
    let mut zeros = BTreeSet::new();
    for lam in partitions_of(n) {
        if !g_value(&lam).is_zero() {
            zeros.extend(poly_alpha_zeros(&double_partition(&lam), 1));
        }
    }
    zeros
}

/// Integer poles of `coe_imm_sq(γ, ·)`.
pub fn poles_coe_imm_sq(gamma: &Partition) -> BTreeSet<i64> {
    let mut zeros = BTreeSet::new();
    for lam in partitions_of(gamma.n()) {
        if !g_weighted(&lam, gamma).is_zero() {
            // zeros of [N+1]^(2)_λ, shifted to N
            zeros.extend(poly_alpha_zeros(&lam, 2).iter().map(|z| z - 1));
        }
    }
    zeros
}

/// Integer poles of `orth_imm_sq(γ, ·)`.
pub fn poles_orth_imm_sq(gamma: &Partition) -> BTreeSet<i64> {
    let mut zeros = BTreeSet::new();
    for lam in partitions_of(gamma.n()) {
        if !g_weighted(&lam, gamma).is_zero() {
            zeros.extend(poly_alpha_zeros(&lam, 2));
        }
    }
    zeros
}

// ---------------------------------------------------------------------------
// Oracles: raw delta-constrained Weingarten sums
// ---------------------------------------------------------------------------

const ORACLE_PROP1_MAX_N: usize = 4;
const ORACLE_PROP2_MAX_N: usize = 2;
const ORACLE_COE_MAX_N: usize = 3;
const ORACLE_ORTH_MAX_N: usize = 4;
const ORACLE_PROP5_MAX_N: usize = 3;

fn check_bound(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::BoundExceeded {
            what,
            requested: n,
            maximum: max,
        });
    }
    Ok(())
}

/// Proposition 1 oracle: `Σ_{π₁,π₂ ∈ S_n} χ_γ(π₁) χ_γ(π₂) W_U(π₂⁻¹ π₁)`,
/// the expansion before character orthogonality is applied.
pub fn oracle_prop1(gamma: &Partition, big_n: i64) -> Result<Rat> {
    let n = gamma.n();
    check_bound("oracle_prop1", n, ORACLE_PROP1_MAX_N)?;
    let group = all_permutations(n)?;
    let mut sum = Rat::zero();
    for p1 in &group {
        let c1 = character_perm(gamma, p1);
        if c1 == 0 {
            continue;
        }
        for p2 in &group {
            let c2 = character_perm(gamma, p2);
            if c2 == 0 {
                continue;
            }
            sum += rat(c1 * c2) * wg_unitary_perm(&p2.inverse().compose(p1), big_n)?;
        }
    }
    Ok(sum)
}

/// The index sequence `(0, 1, ..., n-1)`; values are labels, only equality
/// patterns matter to the deltas.
fn base_indices(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn apply_to_indices(p: &Permutation, v: &[usize]) -> Vec<usize> {
    (0..v.len()).map(|i| v[p.apply(i)]).collect()
}

/// Proposition 2 oracle: the raw quartic-permanent sum over
/// `a,b,c,d ∈ S_n` and `σ,τ ∈ S_{2n}` with interleaved delta constraints,
/// `Σ δ_σ[a(n)◇b(n), n◇n] δ_τ[n◇n, c(n)◇d(n)] W_U(σ⁻¹τ)`.
pub fn oracle_prop2(n: usize, big_n: i64) -> Result<Rat> {
    check_bound("oracle_prop2", n, ORACLE_PROP2_MAX_N)?;
    let small = all_permutations(n)?;
    let big = all_permutations(2 * n)?;
    let base = base_indices(n);
    let doubled = crate::weingarten::interleave(&base, &base);

    // σ candidates per (a, b) and τ candidates per (c, d).
    let mut left: Vec<Vec<&Permutation>> = Vec::new();
    let mut right: Vec<Vec<&Permutation>> = Vec::new();
    for x in &small {
        for y in &small {
            let seq = crate::weingarten::interleave(
                &apply_to_indices(x, &base),
                &apply_to_indices(y, &base),
            );
            left.push(big.iter().filter(|s| delta_match(s, &seq, &doubled)).collect());
            right.push(big.iter().filter(|t| delta_match(t, &doubled, &seq)).collect());
        }
    }

    let mut sum = Rat::zero();
    for sigmas in &left {
        for taus in &right {
            for sigma in sigmas {
                for tau in taus {
                    sum += wg_unitary_perm(&sigma.inverse().compose(tau), big_n)?;
                }
            }
        }
    }
    Ok(sum)
}

/// Proposition 3 oracle: raw COE sum
/// `Σ_{a,b} χ_γ(a) χ_γ(b) Σ_{τ ∈ S_{2n}} δ_τ[a(n)◇n, n◇b(n)] W_O^{N+1}(τ)`.
pub fn oracle_coe(gamma: &Partition, big_n: i64) -> Result<Rat> {
    let n = gamma.n();
    check_bound("oracle_coe", n, ORACLE_COE_MAX_N)?;
    let small = all_permutations(n)?;
    let big = all_permutations(2 * n)?;
    let base = base_indices(n);

    let mut sum = Rat::zero();
    for a in &small {
        let ca = character_perm(gamma, a);
        if ca == 0 {
            continue;
        }
        let i_seq = crate::weingarten::interleave(&apply_to_indices(a, &base), &base);
        for b in &small {
            let cb = character_perm(gamma, b);
            if cb == 0 {
                continue;
            }
            let j_seq = crate::weingarten::interleave(&base, &apply_to_indices(b, &base));
            let mut inner = Rat::zero();
            for tau in &big {
                if delta_match(tau, &i_seq, &j_seq) {
                    inner += wg_orthogonal_perm(tau, big_n + 1)?;
                }
            }
            sum += rat(ca * cb) * inner;
        }
    }
    Ok(sum)
}

/// Proposition 4 oracle: raw orthogonal-group sum over matchings,
/// `Σ_{a,b} χ_γ(a) χ_γ(b) Σ_{σ,τ ∈ M_n} Δ_σ[n◇n] Δ_τ[a(n)◇b(n)] W_O(σ⁻¹τ)`.
pub fn oracle_orth(gamma: &Partition, big_n: i64) -> Result<Rat> {
    let n = gamma.n();
    check_bound("oracle_orth", n, ORACLE_ORTH_MAX_N)?;
    let small = all_permutations(n)?;
    let reps = matching_representatives(n)?;
    let base = base_indices(n);
    let rows = crate::weingarten::interleave(&base, &base);
    let row_sigmas: Vec<&Permutation> =
        reps.iter().filter(|s| pair_match(s, &rows)).collect();

    let mut sum = Rat::zero();
    for a in &small {
        let ca = character_perm(gamma, a);
        if ca == 0 {
            continue;
        }
        for b in &small {
            let cb = character_perm(gamma, b);
            if cb == 0 {
                continue;
            }
            let cols = crate::weingarten::interleave(
                &apply_to_indices(a, &base),
                &apply_to_indices(b, &base),
            );
            let mut inner = Rat::zero();
            for sigma in &row_sigmas {
                for tau in &reps {
                    if pair_match(tau, &cols) {
                        inner += wg_orthogonal_perm(&sigma.inverse().compose(tau), big_n)?;
                    }
                }
            }
            sum += rat(ca * cb) * inner;
        }
    }
    Ok(sum)
}

/// Proposition 5 oracle: expands `<Per_n(U - z₁) Per_n(U† - z₂)>` over
/// explicit subset pairs `(P₁, P₂)`, computing every cross moment from the
/// raw entry-level Weingarten expansion. Returns the full coefficient
/// matrix of `z₁^{e₁} z₂^{e₂}` (indices `e₁, e₂ = 0..n`); the closed form
/// predicts a diagonal matrix.
pub fn oracle_prop5(n: usize, big_n: i64, ensemble: Ensemble) -> Result<Vec<Vec<Rat>>> {
    check_bound("oracle_prop5", n, ORACLE_PROP5_MAX_N)?;
    if ensemble == Ensemble::Coe {
        return Err(Error::InvalidCombination(
            "permanent polynomials are defined for the unitary and orthogonal groups".into(),
        ));
    }
    let mut coeffs = vec![vec![Rat::zero(); n + 1]; n + 1];
    let subsets: Vec<Vec<usize>> = (0..1u32 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    for p1 in &subsets {
        for p2 in &subsets {
            let moment = subset_cross_moment(p1, p2, big_n, ensemble)?;
            if moment.is_zero() {
                continue;
            }
            let (e1, e2) = (n - p1.len(), n - p2.len());
            // (-z₁)^{e₁} (-z₂)^{e₂} prefactors
            let sign = if (e1 + e2) % 2 == 0 { 1 } else { -1 };
            coeffs[e1][e2] += rat(sign) * moment;
        }
    }
    Ok(coeffs)
}

/// `<Per_{P₁}(U) conj(Per_{P₂}(U))>` (unitary) or `<Per_{P₁} Per_{P₂}>`
/// (orthogonal) from the raw entry-moment expansions.
fn subset_cross_moment(
    p1: &[usize],
    p2: &[usize],
    big_n: i64,
    ensemble: Ensemble,
) -> Result<Rat> {
    let (m1, m2) = (p1.len(), p2.len());
    match ensemble {
        Ensemble::Unitary => {
            // Mismatched U / U* counts average to zero by the U(1) phase
            // symmetry of Haar measure; the Weingarten expansion covers the
            // balanced case.
            if m1 != m2 {
                return Ok(Rat::zero());
            }
            let m = m1;
            if m == 0 {
                return Ok(rat(1));
            }
            let perms = all_permutations(m)?;
            let mut sum = Rat::zero();
            for pi1 in &perms {
                let c1: Vec<usize> = (0..m).map(|i| p1[pi1.apply(i)]).collect();
                for pi2 in &perms {
                    let c2: Vec<usize> = (0..m).map(|i| p2[pi2.apply(i)]).collect();
                    for sigma in &perms {
                        if !delta_match(sigma, p1, p2) {
                            continue;
                        }
                        for tau in &perms {
                            if !delta_match(tau, &c1, &c2) {
                                continue;
                            }
                            sum += wg_unitary_perm(&sigma.inverse().compose(tau), big_n)?;
                        }
                    }
                }
            }
            Ok(sum)
        }
        Ensemble::Orthogonal => {
            if (m1 + m2) % 2 == 1 {
                return Ok(Rat::zero()); // odd number of factors
            }
            if m1 + m2 == 0 {
                return Ok(rat(1));
            }
            let k = (m1 + m2) / 2;
            let reps = matching_representatives(k)?;
            let rows: Vec<usize> = p1.iter().chain(p2.iter()).copied().collect();
            let perms1 = all_permutations(m1)?;
            let perms2 = all_permutations(m2)?;
            let mut sum = Rat::zero();
            for pi1 in &perms1 {
                let c1: Vec<usize> = (0..m1).map(|i| p1[pi1.apply(i)]).collect();
                for pi2 in &perms2 {
                    let c2: Vec<usize> = (0..m2).map(|i| p2[pi2.apply(i)]).collect();
                    let cols: Vec<usize> = c1.iter().chain(c2.iter()).copied().collect();
                    for sigma in &reps {
                        if !pair_match(sigma, &rows) {
                            continue;
                        }
                        for tau in &reps {
                            if !pair_match(tau, &cols) {
                                continue;
                            }
                            sum += wg_orthogonal_perm(&sigma.inverse().compose(tau), big_n)?;
                        }
                    }
                }
            }
            Ok(sum)
        }
        Ensemble::Coe => unreachable!("rejected by caller"),
    }
}

// ---------------------------------------------------------------------------
// Large-N asymptotics
// ---------------------------------------------------------------------------

/// Which asymptotic family to extract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsymptoticFamily {
    /// Leading coefficient of `N^{2n} P_n(N)`; must be `n!(n+1)!`.
    UnitaryQuartic,
    /// Leading coefficient of `N^n I^C_(n)(N)`; must be `(n+1)!`.
    Coe,
    /// Leading coefficient of `N^n I^O_γ(N)`; the same `n!` for every `γ`.
    Orthogonal,
}

/// Exact leading coefficient of the large-`N` expansion. Every summand of
/// the closed forms is a constant over a monic polynomial in `N` (degree
/// `2n` for the quartic family, `n` otherwise), so the limit is the exact
/// sum of the constants — no floating point, no truncation.
pub fn asymptotic_check(which: AsymptoticFamily, n: usize) -> Rat {
    assert!(n <= 5, "asymptotic_check bound is 5");
    match which {
        AsymptoticFamily::UnitaryQuartic => {
            let prefactor = Rat::new(
                (BigInt::from(2).pow(n as u32) * factorial(n)).pow(2),
                factorial(2 * n),
            );
            let sum: Rat = partitions_of(n)
                .iter()
                .map(|lam| {
                    let g = g_value(lam);
                    rat_big(dim_sn(&double_partition(lam))) * &g * &g
                })
                .sum();
            prefactor * sum
        }
        AsymptoticFamily::Coe => {
            let prefactor = Rat::new(
                BigInt::from(4).pow(n as u32) * factorial(n),
                factorial(2 * n),
            );
            let sum: Rat = partitions_of(n)
                .iter()
                .map(|lam| {
                    let g = g_value(lam);
                    rat_big(dim_sn(&double_partition(lam))) * &g * &g
                })
                .sum();
            prefactor * sum
        }
        AsymptoticFamily::Orthogonal => {
            let shapes = partitions_of(n);
            let mut common: Option<Rat> = None;
            for gamma in &shapes {
                let prefactor = Rat::new(factorial(n), dim_sn(gamma))
                    * Rat::new(
                        BigInt::from(2).pow(n as u32) * factorial(n),
                        factorial(2 * n),
                    );
                let sum: Rat = shapes
                    .iter()
                    .map(|lam| rat_big(dim_sn(&double_partition(lam))) * g_weighted(lam, gamma))
                    .sum();
                let value = prefactor * sum;
                match &common {
                    None => common = Some(value),
                    Some(c) => assert_eq!(c, &value, "orthogonal leading term differs at {gamma:?}"),
                }
            }
            common.expect("at least one shape")
        }
    }
}
