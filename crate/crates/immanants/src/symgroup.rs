//! Permutations of `S_n`, cycle types, and irreducible characters `χ_λ(μ)`.
//!
//! Composition is right-to-left everywhere: `compose(p, q)` is the
//! permutation `i -> p(q(i))`. Characters are computed by the
//! Murnaghan–Nakayama rule over first-column hook lengths (beta numbers),
//! memoized globally on `(shape, remaining cycle lengths)` — the table for
//! `S_12` (shapes `2λ`, `λ ⊢ 6`) is far out of reach of enumeration.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::Error;
use crate::partitions::Partition;
use crate::Result;

/// Guard for [`all_permutations`]; `m!` past this is not worth enumerating.
pub const MAX_ENUM_DEGREE: usize = 10;

/// A permutation of `{1..m}` stored 0-based in one-line notation:
/// `images[i]` is the image of point `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    /// From 0-based images; panics unless a bijection.
    pub fn from_images(images: Vec<usize>) -> Self {
        let m = images.len();
        let mut seen = vec![false; m];
        for &im in &images {
            assert!(im < m && !seen[im], "not a bijection: {images:?}");
            seen[im] = true;
        }
        Permutation { images }
    }

    /// From 1-based one-line notation, e.g. `[3, 1, 2]`.
    pub fn from_one_line(line: &[usize]) -> Self {
        Permutation::from_images(line.iter().map(|&x| x - 1).collect())
    }

    /// From disjoint cycles over 1-based points, e.g. `(1 3)(2 5 4)` is
    /// `&[&[1, 3], &[2, 5, 4]]`. Points absent from every cycle are fixed.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (0..m).collect();
        for cycle in cycles {
            for k in 0..cycle.len() {
                let from = cycle[k] - 1;
                let to = cycle[(k + 1) % cycle.len()] - 1;
                assert!(from < m && images[from] == from, "overlapping cycles");
                images[from] = to;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// `self ∘ other`: apply `other` first. Panics on degree mismatch.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "compose: degree mismatch {} vs {}",
            self.degree(),
            other.degree()
        );
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im] = i;
        }
        Permutation { images: inv }
    }

    /// Cycle type as a partition of the degree.
    pub fn cycle_type(&self) -> Partition {
        let m = self.degree();
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
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        Partition::from_lengths(lengths)
    }
}

impl fmt::Display for Permutation {
    /// One-line notation over `{1..m}`, comma-separated: `3,1,2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &im in &self.images {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", im + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// The permutation with one cycle per part of `μ`, laid out consecutively:
/// `μ = (3,2)` gives `(1 2 3)(4 5)`. The canonical class representative.
pub fn canonical_of_cycle_type(mu: &Partition) -> Permutation {
    let m = mu.n();
    let mut images: Vec<usize> = (0..m).collect();
    let mut base = 0;
    for &part in mu.parts() {
        for k in 0..part {
            images[base + k] = base + (k + 1) % part;
        }
        base += part;
    }
    Permutation { images }
}

/// Iterator over all of `S_m` in lexicographic one-line order.
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let out = Permutation {
            images: current.clone(),
        };
        self.next = next_lex(current);
        Some(out)
    }
}

fn next_lex(mut v: Vec<usize>) -> Option<Vec<usize>> {
    let n = v.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    Some(v)
}

/// Lazy enumeration of `S_m`; errors past degree [`MAX_ENUM_DEGREE`].
pub fn permutations(m: usize) -> Result<Permutations> {
    if m > MAX_ENUM_DEGREE {
        return Err(Error::BoundExceeded {
            what: "permutation enumeration",
            requested: m,
            maximum: MAX_ENUM_DEGREE,
        });
    }
    Ok(Permutations {
        next: Some((0..m).collect()),
    })
}

/// All of `S_m` as a vector, lexicographic order.
pub fn all_permutations(m: usize) -> Result<Vec<Permutation>> {
    Ok(permutations(m)?.collect())
}

/// Uniformly random permutation (Fisher–Yates).
pub fn random_permutation<R: rand::Rng>(m: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        let j = rng.random_range(0..=i);
        images.swap(i, j);
    }
    Permutation { images }
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

type CharKey = (Vec<usize>, Vec<usize>);

fn char_memo() -> &'static RwLock<HashMap<CharKey, i64>> {
    static MEMO: OnceLock<RwLock<HashMap<CharKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `χ_λ(μ)`: character of the class `μ` in the irreducible representation
/// `λ`. Panics unless `|λ| = |μ|`.
pub fn character(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(
        lambda.n(),
        mu.n(),
        "character: |λ| = {} but |μ| = {}",
        lambda.n(),
        mu.n()
    );
    mn_recurse(lambda.parts(), mu.parts())
}

/// Character of a permutation: `χ_λ(cycle_type(p))`.
pub fn character_perm(lambda: &Partition, p: &Permutation) -> i64 {
    character(lambda, &p.cycle_type())
}

/// Dimension via the character at the identity class.
pub fn dim_from_character(lambda: &Partition) -> i64 {
    character(lambda, &Partition::column(lambda.n()))
}

fn mn_recurse(shape: &[usize], cycles: &[usize]) -> i64 {
    if cycles.is_empty() {
        return 1; // empty shape; sizes stay matched through the recursion
    }
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(&v) = char_memo().read().unwrap().get(&key) {
        return v;
    }

    // Remove one border strip of length `cycles[0]` in every possible way,
    // working on the beta numbers b_i = λ_i + ℓ - i.
    let t = cycles[0] as i64;
    let ell = shape.len();
    let betas: Vec<i64> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (ell - 1 - i) as i64)
        .collect();
    let rest = &cycles[1..];

    let mut total = 0i64;
    for (i, &b) in betas.iter().enumerate() {
        let target = b - t;
        if target < 0 || betas.contains(&target) {
            continue;
        }
        // Height of the strip = number of beta values jumped over.
        let crossed = betas.iter().filter(|&&x| target < x && x < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };

        let mut new_betas = betas.clone();
        new_betas[i] = target;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        let new_ell = new_betas.len();
        let mut new_shape: Vec<usize> = new_betas
            .iter()
            .enumerate()
            .map(|(k, &bk)| (bk - (new_ell - 1 - k) as i64) as usize)
            .collect();
        while new_shape.last() == Some(&0) {
            new_shape.pop();
        }
        total += sign * mn_recurse(&new_shape, rest);
    }

    char_memo().write().unwrap().insert(key, total);
    total
}
