//! Low-index subgroup enumeration: a depth-first backtracking search over
//! partial coset tables, returning one complete table per conjugacy class
//! of subgroups of index at most a bound.
//!
//! Symbols are `2*g` for generator number `g` acting forward and `2*g + 1`
//! for its inverse; a coset table row holds one entry per symbol. Coset 0 is
//! the subgroup. Deductions made while scanning relators are recorded on a
//! trail and undone on contradiction, so the search state stays exact.

use std::collections::BTreeMap;

use crate::diagrams::Presentation;
use crate::word_core::Word;

/// Strip inverse first/last letter pairs (the word stays freely reduced).
fn cyclic_reduce(w: &Word) -> Word {
    let mut ls = w.letters().to_vec();
    while ls.len() >= 2 {
        let (first, last) = (ls[0], ls[ls.len() - 1]);
        if first.gen == last.gen && first.sign == -last.sign {
            ls.remove(0);
            ls.pop();
        } else {
            break;
        }
    }
    Word::from_letters(ls)
}

/// Convert every defining relation `L = R` (as `L R^-1`) and every relator
/// to a cyclically reduced symbol word. Empty words are dropped.
pub fn relator_symbols(p: &Presentation) -> Vec<Vec<u32>> {
    let idx: BTreeMap<_, u32> = p
        .generators
        .iter()
        .enumerate()
        .map(|(i, &g)| (g, i as u32))
        .collect();
    let to_syms = |w: &Word| -> Vec<u32> {
        w.letters()
            .iter()
            .map(|l| 2 * idx[&l.gen] + if l.sign == 1 { 0 } else { 1 })
            .collect()
    };
    let mut out = Vec::new();
    for (l, r) in &p.relations {
        out.push(to_syms(&cyclic_reduce(&l.concat(&r.inverse()))));
    }
    for w in &p.relators {
        out.push(to_syms(&cyclic_reduce(w)));
    }
    out.retain(|w| !w.is_empty());
    out
}

struct Search {
    nsym: usize,
    rws: Vec<Vec<u32>>,
    max_index: usize,
    table: Vec<Vec<Option<u32>>>,
    found: Vec<Vec<Vec<u32>>>,
}

impl Search {
    /// Scan every relator at every coset, applying forced deductions until
    /// stable. Returns the deduction trail, or `None` after undoing it all
    /// on a contradiction.
    fn scan_all(&mut self) -> Option<Vec<(usize, usize)>> {
        let mut trail: Vec<(usize, usize)> = Vec::new();
        let mut changed = true;
        while changed {
            changed = false;
            for c0 in 0..self.table.len() {
                for wi in 0..self.rws.len() {
                    let len = self.rws[wi].len();
                    let mut f = c0;
                    let mut i = 0usize;
                    while i < len {
                        let s = self.rws[wi][i] as usize;
                        match self.table[f][s] {
                            Some(next) => {
                                f = next as usize;
                                i += 1;
                            }
                            None => break,
                        }
                    }
                    if i == len {
                        if f != c0 {
                            self.undo(&trail);
                            return None;
                        }
                        continue;
                    }
                    let mut bck = c0;
                    let mut j = len as i64 - 1;
                    while j >= i as i64 {
                        let s = (self.rws[wi][j as usize] ^ 1) as usize;
                        match self.table[bck][s] {
                            Some(prev) => {
                                bck = prev as usize;
                                j -= 1;
                            }
                            None => break,
                        }
                    }
                    if j == i as i64 - 1 {
                        if f != bck {
                            self.undo(&trail);
                            return None;
                        }
                        continue;
                    }
                    if j == i as i64 {
                        let s = self.rws[wi][i] as usize;
                        self.table[f][s] = Some(bck as u32);
                        self.table[bck][s ^ 1] = Some(f as u32);
                        trail.push((f, s));
                        trail.push((bck, s ^ 1));
                        changed = true;
                    }
                }
            }
        }
        Some(trail)
    }

    fn undo(&mut self, trail: &[(usize, usize)]) {
        for &(c, s) in trail {
            self.table[c][s] = None;
        }
    }

    /// Canonicity filter: the complete table is kept only when no move of
    /// the base point to another coset yields a lexicographically smaller
    /// relabeled table.
    fn first_in_class(&self) -> bool {
        let n = self.table.len();
        for delta in 1..n {
            let mut mu: Vec<Option<u32>> = vec![None; n];
            let mut nu: Vec<Option<u32>> = vec![None; n];
            mu[delta] = Some(0);
            nu[0] = Some(delta as u32);
            let mut nxt = 1u32;
            'delta: for newc in 0..n {
                let orig = nu[newc].expect("relabeling discovers cosets in order") as usize;
                for s in 0..self.nsym {
                    let tgt = self.table[orig][s].expect("table is complete") as usize;
                    if mu[tgt].is_none() {
                        mu[tgt] = Some(nxt);
                        nu[nxt as usize] = Some(tgt as u32);
                        nxt += 1;
                    }
                    let cand = mu[tgt].unwrap();
                    let base = self.table[newc][s].expect("table is complete");
                    if cand < base {
                        return false;
                    }
                    if cand > base {
                        break 'delta;
                    }
                }
            }
        }
        true
    }

    fn rec(&mut self) {
        let mut pos = None;
        'find: for ci in 0..self.table.len() {
            for s in 0..self.nsym {
                if self.table[ci][s].is_none() {
                    pos = Some((ci, s));
                    break 'find;
                }
            }
        }
        let Some((ci, s)) = pos else {
            if self.first_in_class() {
                self.found.push(
                    self.table
                        .iter()
                        .map(|row| row.iter().map(|e| e.unwrap()).collect())
                        .collect(),
                );
            }
            return;
        };
        let cur_len = self.table.len();
        let mut cands: Vec<usize> = (0..cur_len).collect();
        if cur_len < self.max_index {
            cands.push(cur_len);
        }
        for beta in cands {
            let is_new = beta == cur_len;
            if is_new {
                self.table.push(vec![None; self.nsym]);
            }
            if self.table[beta][s ^ 1].is_none() {
                self.table[ci][s] = Some(beta as u32);
                self.table[beta][s ^ 1] = Some(ci as u32);
                if let Some(trail) = self.scan_all() {
                    self.rec();
                    self.undo(&trail);
                }
                self.table[ci][s] = None;
                self.table[beta][s ^ 1] = None;
            }
            if is_new {
                self.table.pop();
            }
        }
    }
}

/// All complete coset tables on at most `max_index` cosets satisfying the
/// presentation, one per conjugacy class of subgroups, in deterministic
/// search order. Each table has one row per coset and one column per symbol.
pub fn low_index_tables(p: &Presentation, max_index: usize) -> Vec<Vec<Vec<u32>>> {
    assert!(max_index >= 1);
    let nsym = 2 * p.generators.len();
    let mut search = Search {
        nsym,
        rws: relator_symbols(p),
        max_index,
        table: vec![vec![None; nsym]],
        found: Vec::new(),
    };
    search.rec();
    search.found
}

/// Number of classes for each index `1..=max_index`.
pub fn classes_by_index(p: &Presentation, max_index: usize) -> BTreeMap<usize, usize> {
    let mut out: BTreeMap<usize, usize> = (1..=max_index).map(|k| (k, 0)).collect();
    for t in low_index_tables(p, max_index) {
        *out.get_mut(&t.len()).unwrap() += 1;
    }
    out
}

/// Number of classes of subgroups of index exactly `index`.
pub fn count_classes_of_index(p: &Presentation, index: usize) -> usize {
    low_index_tables(p, index)
        .iter()
        .filter(|t| t.len() == index)
        .count()
}

/// Replay check: the table is complete, involutive (`c·s = d` implies
/// `d·s^-1 = c`), transitive, and every relator traces back to its start
/// from every coset.
pub fn table_satisfies(p: &Presentation, table: &[Vec<u32>]) -> bool {
    let n = table.len();
    let nsym = 2 * p.generators.len();
    if table.iter().any(|row| row.len() != nsym) {
        return false;
    }
    for (c, row) in table.iter().enumerate() {
        for (s, &d) in row.iter().enumerate() {
            if d as usize >= n || table[d as usize][s ^ 1] as usize != c {
                return false;
            }
        }
    }
    // transitivity from coset 0
    let mut reach = vec![false; n];
    reach[0] = true;
    let mut stack = vec![0usize];
    while let Some(c) = stack.pop() {
        for &d in &table[c] {
            if !reach[d as usize] {
                reach[d as usize] = true;
                stack.push(d as usize);
            }
        }
    }
    if !reach.iter().all(|&b| b) {
        return false;
    }
    for w in relator_symbols(p) {
        for c0 in 0..n {
            let mut f = c0;
            for &s in &w {
                f = table[f][s as usize] as usize;
            }
            if f != c0 {
                return false;
            }
        }
    }
    true
}

/// Relabel a complete table by discovery order with the base point moved to
/// `delta` (row-major breadth of symbols at each new coset).
fn relabel_from(table: &[Vec<u32>], delta: usize) -> Vec<Vec<u32>> {
    let n = table.len();
    let nsym = table[0].len();
    let mut mu: Vec<Option<u32>> = vec![None; n];
    let mut nu: Vec<usize> = Vec::with_capacity(n);
    mu[delta] = Some(0);
    nu.push(delta);
    let mut out = vec![vec![0u32; nsym]; n];
    let mut newc = 0usize;
    while newc < nu.len() {
        let orig = nu[newc];
        for s in 0..nsym {
            let tgt = table[orig][s] as usize;
            if mu[tgt].is_none() {
                mu[tgt] = Some(nu.len() as u32);
                nu.push(tgt);
            }
            out[newc][s] = mu[tgt].unwrap();
        }
        newc += 1;
    }
    out
}

/// Whether two complete tables of the same presentation describe conjugate
/// subgroups: some base-point move of one reproduces the normal form of the
/// other.
pub fn tables_equivalent(t1: &[Vec<u32>], t2: &[Vec<u32>]) -> bool {
    if t1.len() != t2.len() {
        return false;
    }
    let norm2 = relabel_from(t2, 0);
    (0..t1.len()).any(|delta| relabel_from(t1, delta) == norm2)
}
