//! Integer partitions and the polynomial families evaluated at integer `N`.
//!
//! Partitions label everything in this crate: conjugacy classes and
//! irreducible representations of `S_n`, and hyperoctahedral double cosets of
//! `S_{2n}`. The two product families
//!
//! ```text
//! [N]_λ^(α) = prod over boxes (i,j) of λ of  (N + α(j-1) - i + 1)
//! {N}_λ     = prod over boxes (i,j) of λ of  (N - 1 + e(i,j))
//! ```
//!
//! are the identity-point values of Schur functions (`α = 1`), zonal
//! polynomials (`α = 2`) and orthogonal-group characters (`{N}`), up to the
//! dimension factors handled by the callers. `e(i,j)` is piecewise in the
//! row/column position of the box:
//!
//! ```text
//! e(i,j) = λ_i + λ_j - i - j + 1        if i <= j
//!          -λ~_i - λ~_j + i + j - 1     if i >  j      (λ~ the conjugate)
//! ```
//!
//! with parts beyond the length of the partition read as zero.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::rational::{factorial, rat, rat_big, Rat};

/// Enumeration guard for [`partitions_of`]; `2n <= 24` covers every doubled
/// shape the character machinery needs.
pub const MAX_PARTITION_N: usize = 24;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts.
    /// Panics if the sequence increases anywhere or contains a zero.
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        assert!(
            parts.iter().all(|&p| p > 0),
            "partition parts must be positive: {parts:?}"
        );
        Partition { parts }
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Sorts arbitrary positive lengths into a partition. Zeros are dropped.
    pub fn from_lengths(mut lengths: Vec<usize>) -> Self {
        lengths.retain(|&l| l > 0);
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: lengths }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of non-zero parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts, `|λ|`.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `i`-th part, 1-indexed, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1, "parts are 1-indexed");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Multiplicity of `j` as a part.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&p| p == j).count()
    }
}

impl fmt::Display for Partition {
    /// Comma-separated part list, e.g. `3,1,1`. The empty partition prints
    /// as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl FromStr for Partition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: usize = tok
                .trim()
                .parse()
                .map_err(|_| format!("bad partition part {tok:?}"))?;
            if p == 0 {
                return Err("partition parts must be positive".into());
            }
            parts.push(p);
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(format!("parts not weakly decreasing: {s:?}"));
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions of `n` in reverse-lexicographic order, e.g. for `n = 4`:
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`. `n = 0` yields the single empty
/// partition.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    assert!(
        n <= MAX_PARTITION_N,
        "partitions_of bound is {MAX_PARTITION_N}, got {n}"
    );
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend(n, n, &mut stack, &mut out);
    out
}

fn descend(remaining: usize, max_part: usize, stack: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        stack.push(part);
        descend(remaining - part, part, stack, out);
        stack.pop();
    }
}

/// Conjugate (transposed Young diagram): column lengths of `λ`.
pub fn conjugate(lambda: &Partition) -> Partition {
    if lambda.is_empty() {
        return Partition::empty();
    }
    let cols = lambda.parts[0];
    let parts = (1..=cols)
        .map(|j| lambda.parts.iter().filter(|&&p| p >= j).count())
        .collect();
    Partition { parts }
}

/// Centralizer size `z_λ = prod_j j^{v_j} v_j!` where `v_j` is the
/// multiplicity of `j`.
pub fn z_of(lambda: &Partition) -> BigInt {
    let mut acc = BigInt::one();
    let mut j = 0usize;
    let mut run = 0usize;
    for &p in lambda.parts.iter().chain(std::iter::once(&0)) {
        if p == j {
            run += 1;
        } else {
            if j > 0 {
                acc *= BigInt::from(j).pow(run as u32) * factorial(run);
            }
            j = p;
            run = 1;
        }
    }
    acc
}

/// Size of the conjugacy class of cycle type `λ` in `S_n`: `n!/z_λ`.
pub fn class_size(lambda: &Partition) -> BigInt {
    factorial(lambda.n()) / z_of(lambda)
}

/// Dimension `d_λ` of the irreducible representation of `S_n` labelled by
/// `λ`; equals the number of standard Young tableaux of that shape.
pub fn dim_sn(lambda: &Partition) -> BigInt {
    let ell = lambda.len();
    let n = lambda.n();
    // d_λ = n! * prod_{i<j} (m_i - m_j) / prod_i m_i!  with  m_i = λ_i - i + ℓ.
    let m: Vec<i64> = (1..=ell)
        .map(|i| lambda.part(i) as i64 - i as i64 + ell as i64)
        .collect();
    let mut num = factorial(n);
    for i in 0..ell {
        for j in (i + 1)..ell {
            num *= m[i] - m[j];
        }
    }
    let mut den = BigInt::one();
    for &mi in &m {
        den *= factorial(mi as usize);
    }
    num / den
}

/// `[N]_λ^(α)`: product over boxes `(i,j)` of `N + α(j-1) - i + 1`.
pub fn poly_alpha(lambda: &Partition, n_point: i64, alpha: &Rat) -> Rat {
    let mut acc = Rat::one();
    for (i, &row) in lambda.parts.iter().enumerate() {
        let i = i as i64 + 1;
        for j in 1..=row as i64 {
            acc *= rat(n_point) + alpha * rat(j - 1) - rat(i) + rat(1);
        }
    }
    acc
}

/// `[N]_λ^(1)`, the Schur-function point value up to `d_λ/n!`.
pub fn poly_one(lambda: &Partition, n_point: i64) -> Rat {
    poly_alpha(lambda, n_point, &rat(1))
}

/// `[N]_λ^(2)`, the zonal-polynomial value at the identity.
pub fn poly_two(lambda: &Partition, n_point: i64) -> Rat {
    poly_alpha(lambda, n_point, &rat(2))
}

/// The piecewise box exponent of the `{N}_λ` family.
fn brace_e(lambda: &Partition, conj: &Partition, i: usize, j: usize) -> i64 {
    if i <= j {
        lambda.part(i) as i64 + lambda.part(j) as i64 - i as i64 - j as i64 + 1
    } else {
        -(conj.part(i) as i64) - conj.part(j) as i64 + i as i64 + j as i64 - 1
    }
}

/// `{N}_λ`: product over boxes `(i,j)` of `N - 1 + e(i,j)`.
pub fn poly_brace(lambda: &Partition, n_point: i64) -> Rat {
    let conj = conjugate(lambda);
    let mut acc = BigInt::one();
    for (i, &row) in lambda.parts.iter().enumerate() {
        let i = i + 1;
        for j in 1..=row {
            acc *= n_point - 1 + brace_e(lambda, &conj, i, j);
        }
    }
    rat_big(acc)
}

/// Integer zeros of `[N]_λ^(α)` in `N`, for integer `α`.
pub fn poly_alpha_zeros(lambda: &Partition, alpha: i64) -> BTreeSet<i64> {
    let mut zeros = BTreeSet::new();
    for (i, &row) in lambda.parts.iter().enumerate() {
        let i = i as i64 + 1;
        for j in 1..=row as i64 {
            zeros.insert(i - 1 - alpha * (j - 1));
        }
    }
    zeros
}

/// Integer zeros of `{N}_λ` in `N`.
pub fn poly_brace_zeros(lambda: &Partition) -> BTreeSet<i64> {
    let conj = conjugate(lambda);
    let mut zeros = BTreeSet::new();
    for (i, &row) in lambda.parts.iter().enumerate() {
        let i = i + 1;
        for j in 1..=row {
            zeros.insert(1 - brace_e(lambda, &conj, i, j));
        }
    }
    zeros
}

/// `2λ`: every part doubled.
pub fn double_partition(lambda: &Partition) -> Partition {
    Partition {
        parts: lambda.parts.iter().map(|&p| 2 * p).collect(),
    }
}

/// Size of the hyperoctahedral double coset `K_λ` in `S_{2n}`:
/// `4^n n! |C_λ| / 2^{ℓ(λ)}`.
pub fn double_coset_size(lambda: &Partition) -> BigInt {
    let n = lambda.n();
    let num = BigInt::from(4).pow(n as u32) * factorial(n) * class_size(lambda);
    num / BigInt::from(2).pow(lambda.len() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet as Set;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    /// Independent enumeration: all compositions of `n` (2^(n-1) of them),
    /// sorted descending, deduplicated.
    fn partitions_by_compositions(n: usize) -> Set<Vec<usize>> {
        let mut acc = Set::new();
        if n == 0 {
            acc.insert(Vec::new());
            return acc;
        }
        // Compositions from the (n-1)-bit cut pattern.
        for mask in 0u32..(1 << (n - 1)) {
            let mut comp = Vec::new();
            let mut run = 1usize;
            for bit in 0..n - 1 {
                if mask >> bit & 1 == 1 {
                    comp.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            comp.push(run);
            comp.sort_unstable_by(|a, b| b.cmp(a));
            acc.insert(comp);
        }
        acc
    }

    #[test]
    fn partitions_of_small() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(1), vec![p(&[1])]);
        assert_eq!(
            partitions_of(4),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        assert_eq!(partitions_of(6).len(), 11);
    }

    #[test]
    fn partitions_of_matches_composition_oracle() {
        for n in 0..=10 {
            let got: Set<Vec<usize>> = partitions_of(n)
                .into_iter()
                .map(|q| q.parts().to_vec())
                .collect();
            assert_eq!(got, partitions_by_compositions(n), "n = {n}");
            assert_eq!(got.len(), partitions_of(n).len(), "duplicates at n = {n}");
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&p(&[5])), p(&[1, 1, 1, 1, 1]));
        assert_eq!(conjugate(&p(&[3, 1])), p(&[2, 1, 1]));
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
    }

    #[test]
    fn conjugate_is_involution() {
        for n in 0..=10 {
            for lam in partitions_of(n) {
                assert_eq!(conjugate(&conjugate(&lam)), lam);
            }
        }
    }

    #[test]
    fn z_and_class_sizes() {
        assert_eq!(z_of(&p(&[1, 1, 1])), BigInt::from(6));
        assert_eq!(z_of(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(z_of(&p(&[3, 2, 2, 1])), BigInt::from(24));
        assert_eq!(class_size(&Partition::column(4)), BigInt::one());
        assert_eq!(class_size(&p(&[2, 1])), BigInt::from(3));
        for n in 0..=8 {
            let total: BigInt = partitions_of(n).iter().map(class_size).sum();
            assert_eq!(total, factorial(n), "classes must partition S_{n}");
        }
    }

    /// Brute-force count of standard Young tableaux by backtracking over the
    /// placement of 1..n.
    fn syt_count(shape: &[usize]) -> u64 {
        fn fill(shape: &[usize], rows: &mut Vec<usize>, placed: usize, n: usize) -> u64 {
            if placed == n {
                return 1;
            }
            let mut total = 0;
            for r in 0..shape.len() {
                let c = rows[r];
                if c < shape[r] && (r == 0 || rows[r - 1] > c) {
                    rows[r] += 1;
                    total += fill(shape, rows, placed + 1, n);
                    rows[r] -= 1;
                }
            }
            total
        }
        let n: usize = shape.iter().sum();
        fill(shape, &mut vec![0; shape.len()], 0, n)
    }

    #[test]
    fn dim_matches_tableaux_count() {
        assert_eq!(dim_sn(&p(&[5])), BigInt::one());
        assert_eq!(dim_sn(&p(&[2, 1])), BigInt::from(2));
        for n in 1..=7 {
            for lam in partitions_of(n) {
                assert_eq!(
                    dim_sn(&lam),
                    BigInt::from(syt_count(lam.parts())),
                    "shape {lam:?}"
                );
            }
        }
    }

    #[test]
    fn dim_squares_sum_to_factorial() {
        for n in 0..=8 {
            let total: BigInt = partitions_of(n).iter().map(|l| dim_sn(l).pow(2)).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn poly_alpha_small_shapes() {
        use crate::rational::ratio;
        let n = 7;
        assert_eq!(poly_one(&p(&[1]), n), rat(7));
        assert_eq!(poly_one(&p(&[2]), n), rat(7 * 8));
        assert_eq!(poly_one(&p(&[1, 1]), n), rat(7 * 6));
        assert_eq!(poly_two(&p(&[2]), n), rat(7 * 9));
        assert_eq!(poly_alpha(&p(&[2]), 4, &ratio(1, 2)), rat(4) * ratio(9, 2));
        assert_eq!(poly_one(&Partition::empty(), 3), rat(1));
    }

    #[test]
    fn poly_one_vanishes_iff_too_few_rows() {
        use num_traits::Zero;
        for n in 1..=6 {
            for lam in partitions_of(n) {
                for big_n in 0..=8i64 {
                    let v = poly_one(&lam, big_n);
                    assert_eq!(
                        v.is_zero(),
                        (big_n as usize) < lam.len(),
                        "lambda {lam:?} N {big_n}"
                    );
                }
            }
        }
    }

    #[test]
    fn poly_brace_examples() {
        for n_pt in [-3i64, 0, 1, 4, 9] {
            assert_eq!(poly_brace(&p(&[1]), n_pt), rat(n_pt));
            assert_eq!(poly_brace(&p(&[2]), n_pt), rat((n_pt + 2) * (n_pt - 1)));
            assert_eq!(poly_brace(&p(&[1, 1]), n_pt), rat(n_pt * (n_pt - 1)));
        }
    }

    #[test]
    fn poly_brace_on_columns_is_falling_factorial() {
        use crate::rational::falling;
        for n in 1..=6 {
            for n_pt in [n as i64, n as i64 + 1, n as i64 + 5, 20] {
                assert_eq!(
                    poly_brace(&Partition::column(n), n_pt),
                    rat_big(falling(n_pt, n)),
                    "n = {n}, N = {n_pt}"
                );
            }
        }
    }

    #[test]
    fn zero_sets_match_evaluation() {
        use num_traits::Zero;
        for n in 1..=5 {
            for lam in partitions_of(n) {
                for pt in -12..=12i64 {
                    assert_eq!(
                        poly_two(&lam, pt).is_zero(),
                        poly_alpha_zeros(&lam, 2).contains(&pt)
                    );
                    assert_eq!(
                        poly_brace(&lam, pt).is_zero(),
                        poly_brace_zeros(&lam).contains(&pt)
                    );
                }
            }
        }
    }

    #[test]
    fn doubling() {
        assert_eq!(double_partition(&p(&[1])), p(&[2]));
        assert_eq!(double_partition(&p(&[2, 1])), p(&[4, 2]));
        assert_eq!(double_partition(&p(&[1, 1, 1])), p(&[2, 2, 2]));
    }

    #[test]
    fn double_coset_sizes() {
        for n in 1..=6 {
            let ident = double_coset_size(&Partition::column(n));
            assert_eq!(ident, BigInt::from(2).pow(n as u32) * factorial(n));
        }
        assert_eq!(double_coset_size(&p(&[2])), BigInt::from(16));
        for n in 1..=6 {
            let total: BigInt = partitions_of(n).iter().map(double_coset_size).sum();
            assert_eq!(total, factorial(2 * n), "double cosets partition S_{}", 2 * n);
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p(&[3, 1, 1]).to_string(), "3,1,1");
        assert_eq!("3,1,1".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,3".parse::<Partition>().is_err());
        assert!("0".parse::<Partition>().is_err());
    }
}
