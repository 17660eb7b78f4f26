//! Permutation and signed-permutation images of words.
//!
//! Everything composes **left to right**: `(p·q)(x) = q(p(x))`. Points are
//! 1-based in the public API and 0-based internally.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::diagrams::Presentation;
use crate::word_core::{Gen, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("generator `{0}` has no assigned image")]
    Unassigned(String),
    #[error("assignment is empty")]
    EmptyAssignment,
}

/// A group element that words can be evaluated into.
pub trait GroupElement: Clone + Eq {
    /// Left-to-right composition: apply `self`, then `other`.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// The identity of the same degree/shape as `self`.
    fn identity_like(&self) -> Self;

    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }
}

/// A permutation of `1..=degree`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm {
    img: Vec<u32>, // img[i] = image of point i, 0-based
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            img: (0..degree as u32).collect(),
        }
    }

    /// The transposition `(i j)` on `1..=degree` (1-based, `i != j`).
    pub fn transposition(degree: usize, i: u32, j: u32) -> Perm {
        assert!(i != j && 1 <= i && i as usize <= degree && 1 <= j && j as usize <= degree);
        let mut p = Perm::identity(degree);
        p.img[(i - 1) as usize] = j - 1;
        p.img[(j - 1) as usize] = i - 1;
        p
    }

    /// Build from a 0-based image table.
    pub fn from_images(img: Vec<u32>) -> Perm {
        let mut seen = vec![false; img.len()];
        for &v in &img {
            assert!((v as usize) < img.len() && !seen[v as usize], "not a permutation");
            seen[v as usize] = true;
        }
        Perm { img }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of a 1-based point.
    pub fn image_of(&self, point: u32) -> u32 {
        self.img[(point - 1) as usize] + 1
    }

    /// 0-based image table.
    pub fn images(&self) -> &[u32] {
        &self.img
    }

    /// Disjoint cycle notation on 1-based points, e.g. `(1 2)(3 5 4)`;
    /// the identity prints as `()`.
    pub fn cycle_notation(&self) -> String {
        let n = self.img.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.img[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.img[start] as usize;
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.img[cur] as usize;
            }
            out.push('(');
            out.push_str(
                &cyc.iter()
                    .map(|p| (p + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl GroupElement for Perm {
    fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            img: self.img.iter().map(|&v| other.img[v as usize]).collect(),
        }
    }

    fn inverse(&self) -> Perm {
        let mut img = vec![0u32; self.img.len()];
        for (i, &v) in self.img.iter().enumerate() {
            img[v as usize] = i as u32;
        }
        Perm { img }
    }

    fn identity_like(&self) -> Perm {
        Perm::identity(self.degree())
    }
}

/// A signed permutation: each point maps to a point with a sign in `{+1,-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPerm {
    img: Vec<(u32, i8)>, // img[i] = (image point 0-based, sign)
}

impl SignedPerm {
    pub fn identity(degree: usize) -> SignedPerm {
        SignedPerm {
            img: (0..degree as u32).map(|i| (i, 1)).collect(),
        }
    }

    /// The signed transposition swapping `i` and `j` (1-based) with the given
    /// sign on both moved points.
    pub fn transposition(degree: usize, i: u32, j: u32, sign: i8) -> SignedPerm {
        assert!(sign == 1 || sign == -1);
        assert!(i != j && 1 <= i && i as usize <= degree && 1 <= j && j as usize <= degree);
        let mut p = SignedPerm::identity(degree);
        p.img[(i - 1) as usize] = (j - 1, sign);
        p.img[(j - 1) as usize] = (i - 1, sign);
        p
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn entries(&self) -> &[(u32, i8)] {
        &self.img
    }

    /// Number of `-1` signs; the signed permutations arising here always
    /// have an even count.
    pub fn negative_count(&self) -> usize {
        self.img.iter().filter(|(_, s)| *s == -1).count()
    }

    /// Signed one-line notation on 1-based points, e.g. `[2, -1, 3]`.
    pub fn signed_images(&self) -> Vec<i64> {
        self.img
            .iter()
            .map(|&(p, s)| (p as i64 + 1) * s as i64)
            .collect()
    }
}

impl GroupElement for SignedPerm {
    fn compose(&self, other: &SignedPerm) -> SignedPerm {
        debug_assert_eq!(self.degree(), other.degree());
        SignedPerm {
            img: self
                .img
                .iter()
                .map(|&(p, s)| {
                    let (p2, s2) = other.img[p as usize];
                    (p2, s * s2)
                })
                .collect(),
        }
    }

    fn inverse(&self) -> SignedPerm {
        let mut img = vec![(0u32, 1i8); self.img.len()];
        for (i, &(p, s)) in self.img.iter().enumerate() {
            img[p as usize] = (i as u32, s);
        }
        SignedPerm { img }
    }

    fn identity_like(&self) -> SignedPerm {
        SignedPerm::identity(self.degree())
    }
}

/// A generator-to-element assignment.
pub type Assignment<E> = BTreeMap<Gen, E>;

/// Evaluate a word under an assignment (left-to-right composition).
pub fn evaluate<E: GroupElement>(assign: &Assignment<E>, w: &Word) -> Result<E, EvalError> {
    let mut acc = assign
        .values()
        .next()
        .ok_or(EvalError::EmptyAssignment)?
        .identity_like();
    for l in w.letters() {
        let img = assign
            .get(&l.gen)
            .ok_or_else(|| EvalError::Unassigned(l.gen.to_string()))?;
        if l.sign == 1 {
            acc = acc.compose(img);
        } else {
            acc = acc.compose(&img.inverse());
        }
    }
    Ok(acc)
}

/// The symmetric-group assignment for the n-gon generators:
/// `a_i ↦ (i, i+1)` for `i < n`, `a_n ↦ (1, n)`.
pub fn sigma_assignment(n: u32) -> Assignment<Perm> {
    let d = n as usize;
    let mut a = Assignment::new();
    for i in 1..n {
        a.insert(Gen::new('a', i), Perm::transposition(d, i, i + 1));
    }
    a.insert(Gen::new('a', n), Perm::transposition(d, 1, n));
    a
}

/// The signed-permutation assignment for the n-gon generators: like
/// `sigma_assignment` but `a_n` maps to the *negative* transposition `{1,n}`.
pub fn ngon_signed_assignment(n: u32) -> Assignment<SignedPerm> {
    let d = n as usize;
    let mut a = Assignment::new();
    for i in 1..n {
        a.insert(Gen::new('a', i), SignedPerm::transposition(d, i, i + 1, 1));
    }
    a.insert(Gen::new('a', n), SignedPerm::transposition(d, 1, n, -1));
    debug_assert!(a.values().all(|p| p.negative_count() % 2 == 0));
    a
}

/// The signed-permutation assignment for the fork generators:
/// `x_1 ↦` negative transposition `{1,2}`, `x_i ↦ (i−1, i)` for `i >= 2`.
pub fn dn_signed_assignment(n: u32) -> Assignment<SignedPerm> {
    let d = n as usize;
    let mut a = Assignment::new();
    a.insert(Gen::new('x', 1), SignedPerm::transposition(d, 1, 2, -1));
    for i in 2..=n {
        a.insert(Gen::new('x', i), SignedPerm::transposition(d, i - 1, i, 1));
    }
    debug_assert!(a.values().all(|p| p.negative_count() % 2 == 0));
    a
}

/// Check every relation and relator of `p` under `assign`. Returns
/// human-readable failure descriptions; an empty vector means all pass.
pub fn check_presentation<E: GroupElement>(
    p: &Presentation,
    assign: &Assignment<E>,
) -> Result<Vec<String>, EvalError> {
    let mut failures = Vec::new();
    for (l, r) in &p.relations {
        if evaluate(assign, l)? != evaluate(assign, r)? {
            failures.push(format!("relation violated: {l} = {r}"));
        }
    }
    for w in &p.relators {
        if !evaluate(assign, w)?.is_identity() {
            failures.push(format!("relator not killed: {w}"));
        }
    }
    Ok(failures)
}

/// Unordered pairs `{k,l}` of `1..=n` in lexicographic order.
pub fn pair_list(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity((n * (n - 1) / 2) as usize);
    for k in 1..=n {
        for l in k + 1..=n {
            out.push((k, l));
        }
    }
    out
}

/// Index of the pair `(k,l)` (with `k < l`) in `pair_list(n)`.
pub fn pair_index(n: u32, k: u32, l: u32) -> usize {
    debug_assert!(1 <= k && k < l && l <= n);
    let k = k as usize;
    let l = l as usize;
    let n = n as usize;
    (k - 1) * n - k * (k - 1) / 2 + (l - k - 1)
}

/// The induced action of the n-gon generators on unordered pairs, as a
/// degree-`n(n−1)/2` permutation assignment.
pub fn pair_action(n: u32) -> Assignment<Perm> {
    let sigma = sigma_assignment(n);
    let pairs = pair_list(n);
    let mut out = Assignment::new();
    for (g, p) in &sigma {
        let img: Vec<u32> = pairs
            .iter()
            .map(|&(k, l)| {
                let (i, j) = (p.image_of(k), p.image_of(l));
                let (i, j) = if i < j { (i, j) } else { (j, i) };
                pair_index(n, i, j) as u32
            })
            .collect();
        out.insert(*g, Perm::from_images(img));
    }
    out
}

/// Size of the group generated by `gens` under left-to-right composition,
/// or `None` if it exceeds `cap`.
pub fn closure_order<E: GroupElement + std::hash::Hash>(gens: &[E], cap: usize) -> Option<usize> {
    if gens.is_empty() {
        return Some(1);
    }
    let id = gens[0].identity_like();
    let mut seen: HashSet<E> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for el in &frontier {
            for g in gens {
                let e2 = el.compose(g);
                if seen.insert(e2.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    next.push(e2);
                }
            }
        }
        frontier = next;
    }
    Some(seen.len())
}
