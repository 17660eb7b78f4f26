//! Abelianization of finitely presented groups via exact integer
//! Smith normal form.
//!
//! All arithmetic is arbitrary-precision (`num_bigint::BigInt`); no floating
//! point or fixed-width overflow can corrupt an invariant.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::diagrams::{ngon_presentation, DiagramError, Presentation, Quotient};
use crate::schreier::{
    bfs_transversal, generic_subgroup_presentation, pair_coset_table, pair_subgroup_presentation,
    pair_transversal, point_coset_table, SchreierError,
};
use crate::word_core::{Gen, Word};

#[derive(Debug, Error)]
pub enum AbelianError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Schreier(#[from] SchreierError),
}

/// Abelian invariants: `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with
/// `d_1 | d_2 | … | d_k` (each `d_i > 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> AbelianInvariants {
        AbelianInvariants { free_rank, torsion }
    }

    /// Convenience constructor from small integers.
    pub fn from_small(free_rank: usize, torsion: &[u64]) -> AbelianInvariants {
        AbelianInvariants {
            free_rank,
            torsion: torsion.iter().map(|&d| BigInt::from(d)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// The torsion part split into prime powers, sorted by prime then power.
    pub fn primary_decomposition(&self) -> Vec<BigInt> {
        let mut parts: Vec<(BigInt, u32)> = Vec::new();
        for d in &self.torsion {
            let mut rest = d.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= rest {
                if (&rest % &p).is_zero() {
                    let mut e = 0u32;
                    while (&rest % &p).is_zero() {
                        rest /= &p;
                        e += 1;
                    }
                    parts.push((p.clone(), e));
                }
                p += 1;
            }
            if rest > BigInt::one() {
                parts.push((rest, 1));
            }
        }
        parts.sort();
        parts
            .into_iter()
            .map(|(p, e)| p.pow(e))
            .collect()
    }

    /// Primary-decomposition form, e.g. `Z/2 ⊕ Z/4 ⊕ Z^2`.
    pub fn format_primary(&self) -> String {
        let mut parts: Vec<String> = self
            .primary_decomposition()
            .iter()
            .map(|q| format!("Z/{q}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|d| match u64::try_from(d) {
                Ok(v) => serde_json::json!(v),
                Err(_) => serde_json::json!(d.to_string()),
            })
            .collect();
        serde_json::json!({
            "free_rank": self.free_rank,
            "torsion": torsion,
        })
    }
}

impl fmt::Display for AbelianInvariants {
    /// Invariant-factor (divisibility-chain) form, e.g. `Z/2 ⊕ Z/4 ⊕ Z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Normalize a row so its first nonzero entry is positive; used to dedupe
/// rows that differ only by sign.
fn sign_normalized(row: &[BigInt]) -> Vec<BigInt> {
    let negate = row
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    if negate {
        row.iter().map(|x| -x).collect()
    } else {
        row.to_vec()
    }
}

/// Diagonal of the Smith normal form (absolute values, zeros omitted).
/// Rows that are zero or duplicates up to sign are discarded first; the
/// pivot is always a globally smallest nonzero entry, which keeps
/// intermediate entries small on the sparse matrices produced here.
pub fn smith_diagonal(rows: &[Vec<BigInt>], ncols: usize) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = Vec::new();
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    for r in rows {
        assert_eq!(r.len(), ncols, "ragged row");
        if r.iter().all(|x| x.is_zero()) {
            continue;
        }
        let key = sign_normalized(r);
        if seen.insert(key.clone()) {
            m.push(key);
        }
    }
    let mut ncols = ncols;
    let mut diag: Vec<BigInt> = Vec::new();
    while !m.is_empty() && ncols > 0 {
        // Move a globally smallest nonzero entry to position (0,0).
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero()
                    && best
                        .map(|(bi, bj)| v.abs() < m[bi][bj].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(0, bi);
        if bj != 0 {
            for row in m.iter_mut() {
                row.swap(0, bj);
            }
        }
        // Clear the first column and row. After any swap the pivot strictly
        // shrinks in absolute value, so restarting terminates.
        'clear: loop {
            for i in 1..m.len() {
                if m[i][0].is_zero() {
                    continue;
                }
                let q = &m[i][0] / &m[0][0];
                if !q.is_zero() {
                    let pivot_row = m[0].clone();
                    for (x, p) in m[i].iter_mut().zip(pivot_row.iter()) {
                        *x -= &q * p;
                    }
                }
                if !m[i][0].is_zero() {
                    m.swap(0, i);
                    continue 'clear;
                }
            }
            for j in 1..ncols {
                if m[0][j].is_zero() {
                    continue;
                }
                let q = &m[0][j] / &m[0][0];
                if !q.is_zero() {
                    for row in m.iter_mut() {
                        let sub = &q * &row[0];
                        row[j] -= sub;
                    }
                }
                if !m[0][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(0, j);
                    }
                    continue 'clear;
                }
            }
            break;
        }
        // Divisibility fixup: the pivot must divide every remaining entry.
        let p = m[0][0].abs();
        let mut bad = None;
        'find: for (i, row) in m.iter().enumerate().skip(1) {
            for v in row.iter().skip(1) {
                if !(v % &p).is_zero() {
                    bad = Some(i);
                    break 'find;
                }
            }
        }
        if let Some(i) = bad {
            let addend = m[i].clone();
            for (x, a) in m[0].iter_mut().zip(addend.iter()) {
                *x += a;
            }
            continue;
        }
        diag.push(p);
        m.remove(0);
        for row in m.iter_mut() {
            row.remove(0);
        }
        ncols -= 1;
        m.retain(|row| row.iter().any(|x| !x.is_zero()));
    }
    diag
}

/// Abelian invariants of `Z^ncols` modulo the row space of `rows`.
pub fn smith_invariants(rows: &[Vec<BigInt>], ncols: usize) -> AbelianInvariants {
    let diag = smith_diagonal(rows, ncols);
    let rank = diag.len();
    let mut torsion: Vec<BigInt> = diag.into_iter().filter(|d| *d > BigInt::one()).collect();
    torsion.sort();
    AbelianInvariants {
        free_rank: ncols - rank,
        torsion,
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc: i128 = 0;
    for (j, &top) in m[0].iter().enumerate() {
        if top == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * top * det(&minor);
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Reference implementation via determinantal divisors: the gcd `d_k` of all
/// `k×k` minors determines the invariant factors `f_k = d_k / d_{k-1}`.
/// Exponential in the matrix size — only for cross-checking small matrices.
pub fn invariants_by_minors(rows: &[Vec<i64>], ncols: usize) -> AbelianInvariants {
    assert!(rows.len() <= 8 && ncols <= 8, "oracle is exponential");
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let maxk = m.len().min(ncols);
    let mut dprev: i128 = 1;
    let mut torsion = Vec::new();
    let mut rank = 0usize;
    for k in 1..=maxk {
        let mut g: i128 = 0;
        for ri in combinations(m.len(), k) {
            for ci in combinations(ncols, k) {
                let sub: Vec<Vec<i128>> = ri
                    .iter()
                    .map(|&i| ci.iter().map(|&j| m[i][j]).collect())
                    .collect();
                g = num_integer::gcd(g, det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        let f = (g / dprev).unsigned_abs();
        rank = k;
        if f > 1 {
            torsion.push(BigInt::from(f));
        }
        dprev = g;
    }
    torsion.sort();
    AbelianInvariants {
        free_rank: ncols - rank,
        torsion,
    }
}

/// Exponent vector of `w` over the ordered generator list.
pub fn exponent_row(w: &Word, gens: &[Gen]) -> Vec<BigInt> {
    let idx: BTreeMap<Gen, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut row = vec![BigInt::zero(); gens.len()];
    for l in w.letters() {
        let i = *idx
            .get(&l.gen)
            .unwrap_or_else(|| panic!("undeclared generator {}", l.gen));
        row[i] += l.sign as i64;
    }
    row
}

/// The relation matrix of a presentation: one row `exp(L) - exp(R)` per
/// defining relation and one row `exp(r)` per relator, over the declared
/// generator order.
pub fn exponent_matrix(p: &Presentation) -> (Vec<Vec<BigInt>>, Vec<Gen>) {
    let gens = p.generators.clone();
    let mut rows = Vec::with_capacity(p.relations.len() + p.relators.len());
    for (l, r) in &p.relations {
        let a = exponent_row(l, &gens);
        let b = exponent_row(r, &gens);
        rows.push(a.iter().zip(b.iter()).map(|(x, y)| x - y).collect());
    }
    for w in &p.relators {
        rows.push(exponent_row(w, &gens));
    }
    (rows, gens)
}

/// Abelian invariants of the group presented by `p`.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let (rows, gens) = exponent_matrix(p);
    smith_invariants(&rows, gens.len())
}

/// Abelianization of the pair stabilizer via the closed-form rewriting table.
pub fn pair_subgroup_abelianization(n: u32, q: Quotient) -> Result<AbelianInvariants, AbelianError> {
    let base = ngon_presentation(n, q)?;
    let sub = pair_subgroup_presentation(n, &base)?;
    Ok(abelianization(&sub))
}

/// Abelianization of the pair stabilizer via the generic Schreier path with
/// the closed-form transversal — an independent cross-check of the table.
pub fn pair_subgroup_abelianization_generic(
    n: u32,
    q: Quotient,
) -> Result<AbelianInvariants, AbelianError> {
    let base = ngon_presentation(n, q)?;
    let table = pair_coset_table(n);
    let trans = pair_transversal(n);
    let sub = generic_subgroup_presentation(&base, &table, &trans)?;
    Ok(abelianization(&sub))
}

/// Abelianization of the stabilizer of the point 1 in the natural action,
/// via the generic Schreier path with a breadth-first transversal.
pub fn point_subgroup_abelianization(
    n: u32,
    q: Quotient,
) -> Result<AbelianInvariants, AbelianError> {
    let base = ngon_presentation(n, q)?;
    let table = point_coset_table(n);
    let trans = bfs_transversal(&table);
    let sub = generic_subgroup_presentation(&base, &table, &trans)?;
    Ok(abelianization(&sub))
}

/// Lift small integer rows to arbitrary precision.
pub fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

/// Closed-form binding rows over `z_1..z_{n+1}` (the abelianized subgroup
/// generators): the rows that present the free part of the untwisted
/// stabilizer.
pub fn h_basis_rows(n: u32) -> Vec<Vec<i64>> {
    let c = (n + 1) as usize;
    let mut rows = Vec::new();
    for j in 2..=n.saturating_sub(3) {
        let mut r = vec![0i64; c];
        r[(j - 1) as usize] = 1;
        r[j as usize] = -1;
        rows.push(r);
    }
    let mut r = vec![0i64; c];
    r[(n - 2) as usize] = 1;
    r[(n - 1) as usize] = -1;
    rows.push(r);
    rows
}

/// The closed-form extra row contributed by the cycle commutator.
pub fn h0_row(n: u32) -> Vec<i64> {
    let c = (n + 1) as usize;
    let mut r = vec![0i64; c];
    r[0] = -2;
    for i in 2..=n - 2 {
        r[(i - 1) as usize] = 2;
    }
    r[(n - 2) as usize] = 3;
    r[(n - 1) as usize] = 1;
    r[n as usize] = -2;
    r
}

/// The two closed-form extra rows contributed by the twisted commutator
/// with parameter `t` (`1 <= t <= n-3`).
pub fn twisted_rows(n: u32, t: u32) -> (Vec<i64>, Vec<i64>) {
    assert!((1..=n - 3).contains(&t));
    let c = (n + 1) as usize;
    let mut ra = vec![0i64; c];
    for i in 1..=t + 1 {
        ra[(i - 1) as usize] = -2;
    }
    for i in t + 2..=n - 2 {
        ra[(i - 1) as usize] = 2;
    }
    ra[(n - 2) as usize] = 2 * t as i64 + 3;
    ra[(n - 1) as usize] = 1;
    ra[n as usize] = -2;
    let mut rb = vec![0i64; c];
    rb[0] = 2;
    for i in 2..=t {
        rb[(i - 1) as usize] = -2;
    }
    for i in t + 1..=n - 2 {
        rb[(i - 1) as usize] = 2;
    }
    rb[(n - 2) as usize] = 2 * t as i64 - 1;
    rb[(n - 1) as usize] = 1;
    rb[n as usize] = -2;
    (ra, rb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{chain_presentation, dn_presentation};
    use crate::perm_eval::pair_list;
    use crate::word_core::parse_word;

    fn inv(free: usize, tors: &[u64]) -> AbelianInvariants {
        AbelianInvariants::from_small(free, tors)
    }

    #[test]
    fn smith_small_matrices() {
        let rows = big_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_diagonal(&rows, 2), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(smith_invariants(&rows, 2), inv(0, &[6]));

        let zero = big_rows(&[vec![0, 0, 0]]);
        assert_eq!(smith_invariants(&zero, 3), inv(3, &[]));

        let id = big_rows(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(smith_invariants(&id, 2), inv(0, &[]));

        // duplicate and negated rows collapse
        let dup = big_rows(&[vec![1, 2], vec![-1, -2], vec![1, 2]]);
        assert_eq!(smith_invariants(&dup, 2), inv(1, &[]));
    }

    #[test]
    fn smith_matches_minor_oracle_on_fixed_cases() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, 4], vec![6, 8]],
            vec![vec![2, 0, 0], vec![0, 0, 4]],
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
            vec![vec![4, -2], vec![2, 2], vec![0, 3]],
            vec![vec![-3, 1, 5, 2], vec![2, -4, 0, 1]],
        ];
        for rows in cases {
            let ncols = rows[0].len();
            assert_eq!(
                smith_invariants(&big_rows(&rows), ncols),
                invariants_by_minors(&rows, ncols),
                "mismatch on {rows:?}"
            );
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(inv(4, &[]).to_string(), "Z^4");
        assert_eq!(inv(1, &[]).to_string(), "Z");
        assert_eq!(inv(0, &[]).to_string(), "0");
        assert_eq!(inv(3, &[2]).to_string(), "Z/2 ⊕ Z^3");
        assert_eq!(inv(2, &[2, 4]).to_string(), "Z/2 ⊕ Z/4 ⊕ Z^2");
        assert_eq!(inv(0, &[6]).to_string(), "Z/6");
        assert_eq!(inv(0, &[6]).format_primary(), "Z/2 ⊕ Z/3");
        assert_eq!(inv(2, &[2, 4]).format_primary(), "Z/2 ⊕ Z/4 ⊕ Z^2");
        assert_eq!(inv(0, &[2, 60]).format_primary(), "Z/2 ⊕ Z/4 ⊕ Z/3 ⊕ Z/5");
        assert_eq!(
            inv(1, &[2]).to_json(),
            serde_json::json!({"free_rank": 1, "torsion": [2]})
        );
    }

    #[test]
    fn braid_and_commuting_rows() {
        let p = chain_presentation(3).unwrap();
        let (rows, gens) = exponent_matrix(&p);
        assert_eq!(gens.len(), 3);
        // braid rows abelianize to e_i - e_j, commuting rows to zero
        let braid: Vec<Vec<BigInt>> = rows
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        assert_eq!(braid.len(), 2);
        for r in &braid {
            let mut sorted: Vec<BigInt> = r.clone();
            sorted.sort();
            assert_eq!(sorted, big_rows(&[vec![-1, 0, 1]])[0]);
        }
        // a connected diagram abelianizes to Z
        assert_eq!(abelianization(&p), inv(1, &[]));
    }

    #[test]
    fn artin_groups_abelianize_to_z() {
        for n in 4..=8 {
            assert_eq!(
                abelianization(&ngon_presentation(n, Quotient::None).unwrap()),
                inv(1, &[])
            );
            assert_eq!(abelianization(&dn_presentation(n).unwrap()), inv(1, &[]));
            // the quotient relators have exponent sum zero in every generator
            assert_eq!(
                abelianization(&ngon_presentation(n, Quotient::Cycle).unwrap()),
                inv(1, &[])
            );
            assert_eq!(
                abelianization(&ngon_presentation(n, Quotient::Twisted(1)).unwrap()),
                inv(1, &[])
            );
        }
    }

    #[test]
    fn displayed_rows_give_the_three_headline_groups() {
        for n in 5..=9u32 {
            let ncols = (n + 1) as usize;
            let h = big_rows(&h_basis_rows(n));
            assert_eq!(smith_invariants(&h, ncols), inv(4, &[]), "H at n={n}");

            let mut h0 = h.clone();
            h0.push(big_rows(&[h0_row(n)])[0].clone());
            assert_eq!(smith_invariants(&h0, ncols), inv(3, &[2]), "H0 at n={n}");

            for t in 1..=n - 3 {
                let (ra, rb) = twisted_rows(n, t);
                let mut ht = h.clone();
                ht.extend(big_rows(&[ra, rb]));
                assert_eq!(
                    smith_invariants(&ht, ncols),
                    inv(2, &[2, 4]),
                    "H_t at n={n}, t={t}"
                );
            }
        }
    }

    #[test]
    fn relator_rows_follow_the_coset_pattern() {
        for (n, t) in [(5u32, 1u32), (6, 2), (7, 3)] {
            let ncols = (n + 1) as usize;
            let pairs = pair_list(n);
            // cycle quotient: relator rows are 0 at k>2 and at (1,2), and
            // ±h0 elsewhere
            let base = ngon_presentation(n, Quotient::Cycle).unwrap();
            let sub = pair_subgroup_presentation(n, &base).unwrap();
            assert_eq!(sub.relators.len(), pairs.len());
            let h0 = big_rows(&[h0_row(n)])[0].clone();
            for (idx, &(k, l)) in pairs.iter().enumerate() {
                let row = exponent_row(&sub.relators[idx], &sub.generators);
                assert_eq!(row.len(), ncols);
                if k > 2 || (k, l) == (1, 2) {
                    assert!(row.iter().all(|x| x.is_zero()), "cc row at ({k},{l})");
                } else {
                    assert_eq!(sign_normalized(&row), sign_normalized(&h0), "cc row at ({k},{l})");
                }
            }
            // twisted quotient: ±rowB for l <= t+2, ±rowA for l >= t+3
            let base = ngon_presentation(n, Quotient::Twisted(t)).unwrap();
            let sub = pair_subgroup_presentation(n, &base).unwrap();
            let (ra, rb) = twisted_rows(n, t);
            let (ra, rb) = (
                big_rows(&[ra])[0].clone(),
                big_rows(&[rb])[0].clone(),
            );
            for (idx, &(k, l)) in pairs.iter().enumerate() {
                let row = exponent_row(&sub.relators[idx], &sub.generators);
                if k > 2 || (k, l) == (1, 2) {
                    assert!(row.iter().all(|x| x.is_zero()), "tc row at ({k},{l})");
                } else if l <= t + 2 {
                    assert_eq!(sign_normalized(&row), sign_normalized(&rb), "tc row at ({k},{l})");
                } else {
                    assert_eq!(sign_normalized(&row), sign_normalized(&ra), "tc row at ({k},{l})");
                }
            }
        }
    }

    #[test]
    fn pair_subgroup_pipeline_small() {
        let n = 5;
        assert_eq!(
            pair_subgroup_abelianization(n, Quotient::None).unwrap(),
            inv(4, &[])
        );
        assert_eq!(
            pair_subgroup_abelianization(n, Quotient::Cycle).unwrap(),
            inv(3, &[2])
        );
        assert_eq!(
            pair_subgroup_abelianization(n, Quotient::Twisted(1)).unwrap(),
            inv(2, &[2, 4])
        );
        assert_eq!(
            pair_subgroup_abelianization(n, Quotient::Twisted(2)).unwrap(),
            inv(2, &[2, 4])
        );
        // t = n-2 matches the cycle quotient
        assert_eq!(
            pair_subgroup_abelianization(n, Quotient::Twisted(3)).unwrap(),
            inv(3, &[2])
        );
    }

    #[test]
    fn generic_paths_agree_small() {
        let n = 5;
        for q in [Quotient::None, Quotient::Cycle, Quotient::Twisted(1)] {
            assert_eq!(
                pair_subgroup_abelianization_generic(n, q).unwrap(),
                pair_subgroup_abelianization(n, q).unwrap(),
                "generic vs closed-form at {q:?}"
            );
        }
    }

    #[test]
    fn point_subgroup_pipeline_small() {
        let n = 5;
        assert_eq!(
            point_subgroup_abelianization(n, Quotient::Cycle).unwrap(),
            inv(2, &[2])
        );
        for t in 1..=n - 2 {
            assert_eq!(
                point_subgroup_abelianization(n, Quotient::Twisted(t)).unwrap(),
                inv(2, &[2]),
                "point stabilizer at t={t}"
            );
        }
    }

    #[test]
    fn exponent_rows() {
        let w = parse_word("a1^2*a2^-1*a1").unwrap();
        let gens = vec![Gen::new('a', 1), Gen::new('a', 2), Gen::new('a', 3)];
        assert_eq!(exponent_row(&w, &gens), big_rows(&[vec![3, -1, 0]])[0]);
    }
}
