//! Reidemeister–Schreier machinery for finite-index subgroups.
//!
//! Two independent paths are provided:
//!
//! * a **closed-form path** for the stabilizer of the pair `{1,2}` under the
//!   induced action of the n-gon generators on unordered pairs, with an
//!   explicit transversal `t_{k,l}`, subgroup generators `ξ_1..ξ_{n+1}`
//!   (exposed as `y_1..y_{n+1}`), and a 12-case rewriting table `ρ`;
//! * a **generic path** that works for any permutation action: one abstract
//!   generator per (coset, generator) pair, Schreier rewriting, and
//!   definition relations tying the abstract generators to transversal
//!   conjugates.
//!
//! Cosets are 0-based internally; coset 0 is the subgroup itself.

use thiserror::Error;

use crate::diagrams::Presentation;
use crate::perm_eval::{
    evaluate, ngon_signed_assignment, pair_action, pair_list, sigma_assignment, Assignment,
    GroupElement, Perm,
};
use crate::word_core::{Gen, Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchreierError {
    #[error("pair ({k},{l}) is not a pair 1 <= k < l <= {n}")]
    PairRange { k: u32, l: u32, n: u32 },
    #[error("generator index {m} is out of range 1..={n}")]
    GenRange { m: u32, n: u32 },
    #[error("n = {0} is too small; need n >= 4")]
    NTooSmall(u32),
    #[error("letter `{0}` is not in the expected alphabet")]
    Alphabet(String),
    #[error("coset {0} is out of range")]
    CosetRange(usize),
}

fn a(i: u32) -> Word {
    Word::generator(Gen::new('a', i))
}

fn y(i: u32) -> Word {
    Word::generator(Gen::new('y', i))
}

/// The transversal word `t_{k,l} = (a_2 … a_{l-1}) · (a_1 … a_{k-1})`,
/// carrying the base pair `{1,2}` to `{k,l}`.
pub fn t_word(k: u32, l: u32) -> Word {
    debug_assert!(k < l);
    let mut ws: Vec<Word> = (2..l).map(a).collect();
    ws.extend((1..k).map(a));
    Word::product(ws.iter())
}

/// The subgroup generators `ξ_1..ξ_{n+1}` of the pair stabilizer, as words
/// in `a_1..a_n`; entry `i-1` is `ξ_i`.
///
/// `ξ_1 = a_1`, `ξ_i = a_{i+1}` for `2 <= i <= n-2`, `ξ_{n-1} = a_2^2`,
/// `ξ_n = a_n^2`, `ξ_{n+1} = a_2 a_1 a_3 a_4 … a_n`.
pub fn xi_generators(n: u32) -> Vec<Word> {
    assert!(n >= 4);
    let mut xs = Vec::with_capacity(n as usize + 1);
    xs.push(a(1));
    for i in 2..=n - 2 {
        xs.push(a(i + 1));
    }
    xs.push(a(2).pow(2));
    xs.push(a(n).pow(2));
    let mut tail: Vec<Word> = vec![a(2), a(1)];
    tail.extend((3..=n).map(a));
    xs.push(Word::product(tail.iter()));
    xs
}

fn yprod(lo: u32, hi: u32) -> Word {
    if lo > hi {
        return Word::empty();
    }
    Word::product((lo..=hi).map(y).collect::<Vec<_>>().iter())
}

/// One row of the rewriting table: `ρ(t_{k,l}, a_m)` as a word in
/// `y_1..y_{n+1}`, together with the pair reached, so that
/// `t_{k,l} · a_m = ρ(t_{k,l}, a_m) · t_{k',l'}` in the pair stabilizer's
/// overgroup.
pub fn rho_step(n: u32, k: u32, l: u32, m: u32) -> Result<(Word, (u32, u32)), SchreierError> {
    if n < 4 {
        return Err(SchreierError::NTooSmall(n));
    }
    if !(1 <= k && k < l && l <= n) {
        return Err(SchreierError::PairRange { k, l, n });
    }
    if !(1 <= m && m <= n) {
        return Err(SchreierError::GenRange { m, n });
    }
    let row = if m < n {
        if l < m {
            (y(m - 1), (k, l))
        } else if l == m {
            (Word::empty(), (k, l + 1))
        } else if m == l - 1 {
            if k == m {
                (y(1), (k, l))
            } else {
                (y(n - 1).conjugate_by(&yprod(2, l - 2)), (k, l - 1))
            }
        } else if k == m {
            (Word::empty(), (k + 1, l))
        } else if k < m {
            (y(m), (k, l))
        } else if k == m + 1 {
            (y(n - 1).conjugate_by(&yprod(1, k - 1)), (k - 1, l))
        } else {
            (y(m + 1), (k, l))
        }
    } else if k == 1 && l == n {
        (y(1).conjugate_by(&y(n + 1).inverse()), (k, l))
    } else if k == 1 {
        (y(n).concat(&y(n + 1).inverse()), (l, n))
    } else if l == n {
        (y(n + 1), (1, k))
    } else {
        (y(n - 2).conjugate_by(&y(n + 1).inverse()), (k, l))
    };
    Ok(row)
}

/// Image of the pair `{k,l}` under the transposition assigned to `a_m`
/// (`(m, m+1)` for `m < n`, `(1, n)` for `m = n`).
pub fn pair_image(n: u32, pair: (u32, u32), m: u32) -> (u32, u32) {
    let swap = |p: u32| -> u32 {
        if m < n {
            if p == m {
                m + 1
            } else if p == m + 1 {
                m
            } else {
                p
            }
        } else if p == 1 {
            n
        } else if p == n {
            1
        } else {
            p
        }
    };
    let (i, j) = (swap(pair.0), swap(pair.1));
    (i.min(j), i.max(j))
}

/// Rewrite `t_{start} · w` as a word in `y_1..y_{n+1}` times a transversal
/// element, returning the `y`-word and the pair reached. `w` must be a word
/// in `a_1..a_n`.
pub fn rho_extend(
    n: u32,
    start: (u32, u32),
    w: &Word,
) -> Result<(Word, (u32, u32)), SchreierError> {
    let mut cur = start;
    let mut out = Word::empty();
    for letter in w.letters() {
        if letter.gen.base() != 'a' {
            return Err(SchreierError::Alphabet(letter.gen.to_string()));
        }
        let m = letter.gen.index();
        if !(1 <= m && m <= n) {
            return Err(SchreierError::GenRange { m, n });
        }
        if letter.sign == 1 {
            let (rw, next) = rho_step(n, cur.0, cur.1, m)?;
            out = out.concat(&rw);
            cur = next;
        } else {
            // The generator images are involutions, so the pair we came from
            // is the image of the current pair under a_m.
            let prev = pair_image(n, cur, m);
            let (rw, next) = rho_step(n, prev.0, prev.1, m)?;
            debug_assert_eq!(next, cur);
            out = out.concat(&rw.inverse());
            cur = prev;
        }
    }
    Ok((out, cur))
}

/// Substitute `y_i ↦ ξ_i` in a word over `y_1..y_{n+1}`, producing a word
/// in `a_1..a_n`.
pub fn xi_expand(n: u32, w: &Word) -> Result<Word, SchreierError> {
    let xs = xi_generators(n);
    let mut out = Word::empty();
    for letter in w.letters() {
        if letter.gen.base() != 'y' {
            return Err(SchreierError::Alphabet(letter.gen.to_string()));
        }
        let i = letter.gen.index();
        if !(1 <= i && i <= n + 1) {
            return Err(SchreierError::GenRange { m: i, n: n + 1 });
        }
        let xi = &xs[(i - 1) as usize];
        out = out.concat(&if letter.sign == 1 { xi.clone() } else { xi.inverse() });
    }
    Ok(out)
}

/// Check one ρ-row semantically: the σ- and signed-permutation images of
/// `t_{k,l} · a_m · t_{k',l'}^{-1}` must equal those of the expanded ρ-word.
pub fn rho_row_verified(n: u32, k: u32, l: u32, m: u32) -> Result<bool, SchreierError> {
    let (rw, (k2, l2)) = rho_step(n, k, l, m)?;
    let lhs = t_word(k, l)
        .concat(&a(m))
        .concat(&t_word(k2, l2).inverse());
    let rhs = xi_expand(n, &rw)?;
    let sigma = sigma_assignment(n);
    let signed = ngon_signed_assignment(n);
    let ok = evaluate(&sigma, &lhs).unwrap() == evaluate(&sigma, &rhs).unwrap()
        && evaluate(&signed, &lhs).unwrap() == evaluate(&signed, &rhs).unwrap();
    Ok(ok)
}

/// A complete coset table for a permutation action: `forward[c][g]` is the
/// coset reached from `c` by generator number `g`.
#[derive(Clone, Debug)]
pub struct CosetTable {
    gens: Vec<Gen>,
    forward: Vec<Vec<u32>>,
    backward: Vec<Vec<u32>>,
    description: String,
}

impl CosetTable {
    /// Build the table from a permutation assignment; cosets are the points
    /// of the action (0-based).
    pub fn from_assignment(assign: &Assignment<Perm>, description: &str) -> CosetTable {
        let gens: Vec<Gen> = assign.keys().copied().collect();
        assert!(!gens.is_empty());
        let degree = assign[&gens[0]].degree();
        let mut forward = vec![vec![0u32; gens.len()]; degree];
        let mut backward = vec![vec![0u32; gens.len()]; degree];
        for (gi, g) in gens.iter().enumerate() {
            let p = &assign[g];
            assert_eq!(p.degree(), degree);
            let pinv = p.inverse();
            for c in 0..degree {
                forward[c][gi] = p.images()[c];
                backward[c][gi] = pinv.images()[c];
            }
        }
        CosetTable {
            gens,
            forward,
            backward,
            description: description.to_string(),
        }
    }

    pub fn num_cosets(&self) -> usize {
        self.forward.len()
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn gen_index(&self, g: Gen) -> Option<usize> {
        self.gens.iter().position(|&h| h == g)
    }

    pub fn step(&self, coset: usize, gen_idx: usize) -> u32 {
        self.forward[coset][gen_idx]
    }

    pub fn step_back(&self, coset: usize, gen_idx: usize) -> u32 {
        self.backward[coset][gen_idx]
    }

    /// Trace a word through the table from `start`.
    pub fn trace(&self, start: usize, w: &Word) -> Result<u32, SchreierError> {
        if start >= self.num_cosets() {
            return Err(SchreierError::CosetRange(start));
        }
        let mut c = start as u32;
        for letter in w.letters() {
            let gi = self
                .gen_index(letter.gen)
                .ok_or_else(|| SchreierError::Alphabet(letter.gen.to_string()))?;
            c = if letter.sign == 1 {
                self.forward[c as usize][gi]
            } else {
                self.backward[c as usize][gi]
            };
        }
        Ok(c)
    }
}

/// A transversal: one representative word per coset, with `rep(0)` empty.
#[derive(Clone, Debug)]
pub struct Transversal {
    reps: Vec<Word>,
}

impl Transversal {
    pub fn new(reps: Vec<Word>) -> Transversal {
        assert!(reps[0].is_empty(), "rep of coset 0 must be the empty word");
        Transversal { reps }
    }

    pub fn rep(&self, coset: usize) -> &Word {
        &self.reps[coset]
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// The coset table of the induced action on unordered pairs, in the order
/// of `pair_list(n)`; coset 0 is the base pair `{1,2}`.
pub fn pair_coset_table(n: u32) -> CosetTable {
    CosetTable::from_assignment(
        &pair_action(n),
        &format!("unordered pairs of 1..={n} under the n-gon generators"),
    )
}

/// The closed-form transversal `t_{k,l}` in pair order.
pub fn pair_transversal(n: u32) -> Transversal {
    Transversal::new(pair_list(n).iter().map(|&(k, l)| t_word(k, l)).collect())
}

/// The coset table of the natural action on points `1..=n`; coset 0 is the
/// point 1, so the subgroup is the stabilizer of 1.
pub fn point_coset_table(n: u32) -> CosetTable {
    CosetTable::from_assignment(
        &sigma_assignment(n),
        &format!("points 1..={n} under the n-gon generators"),
    )
}

/// Breadth-first transversal over a coset table: shortest positive words,
/// generators tried in table order.
pub fn bfs_transversal(table: &CosetTable) -> Transversal {
    let mut reps: Vec<Option<Word>> = vec![None; table.num_cosets()];
    reps[0] = Some(Word::empty());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for (gi, g) in table.gens().iter().enumerate() {
            let c2 = table.step(c, gi) as usize;
            if reps[c2].is_none() {
                let w = reps[c].as_ref().unwrap().concat(&Word::generator(*g));
                reps[c2] = Some(w);
                queue.push_back(c2);
            }
        }
    }
    Transversal::new(
        reps.into_iter()
            .map(|r| r.expect("action must be transitive"))
            .collect(),
    )
}

/// The abstract generator standing for (coset `c`, generator index `gi`).
pub fn generic_gen(table: &CosetTable, c: usize, gi: usize) -> Gen {
    Gen::new('w', (c * table.gens().len() + gi + 1) as u32)
}

/// Inverse of `generic_gen`: (coset, generator index).
pub fn generic_gen_decode(table: &CosetTable, g: Gen) -> Result<(usize, usize), SchreierError> {
    if g.base() != 'w' || g.index() == 0 {
        return Err(SchreierError::Alphabet(g.to_string()));
    }
    let idx = (g.index() - 1) as usize;
    let ng = table.gens().len();
    let (c, gi) = (idx / ng, idx % ng);
    if c >= table.num_cosets() {
        return Err(SchreierError::CosetRange(c));
    }
    Ok((c, gi))
}

/// Schreier rewriting along the table: rewrite `w` read from coset `start`
/// as a word in the abstract generators, returning it with the end coset.
pub fn generic_rewrite(
    table: &CosetTable,
    start: usize,
    w: &Word,
) -> Result<(Word, u32), SchreierError> {
    if start >= table.num_cosets() {
        return Err(SchreierError::CosetRange(start));
    }
    let mut c = start as u32;
    let mut letters = Vec::with_capacity(w.len());
    for letter in w.letters() {
        let gi = table
            .gen_index(letter.gen)
            .ok_or_else(|| SchreierError::Alphabet(letter.gen.to_string()))?;
        if letter.sign == 1 {
            letters.push(Letter::new(generic_gen(table, c as usize, gi), 1));
            c = table.step(c as usize, gi);
        } else {
            let c2 = table.step_back(c as usize, gi);
            letters.push(Letter::new(generic_gen(table, c2 as usize, gi), -1));
            c = c2;
        }
    }
    Ok((Word::from_letters(letters), c))
}

/// The definition word of an abstract generator: `rep(c) · g · rep(c·g)^{-1}`
/// in the base alphabet.
pub fn generic_definition(
    table: &CosetTable,
    trans: &Transversal,
    c: usize,
    gi: usize,
) -> Word {
    let g = table.gens()[gi];
    let c2 = table.step(c, gi) as usize;
    trans
        .rep(c)
        .concat(&Word::generator(g))
        .concat(&trans.rep(c2).inverse())
}

/// Substitute every abstract generator in `w` by its definition word.
pub fn generic_expand(
    table: &CosetTable,
    trans: &Transversal,
    w: &Word,
) -> Result<Word, SchreierError> {
    let mut out = Word::empty();
    for letter in w.letters() {
        let (c, gi) = generic_gen_decode(table, letter.gen)?;
        let def = generic_definition(table, trans, c, gi);
        out = out.concat(&if letter.sign == 1 { def } else { def.inverse() });
    }
    Ok(out)
}

/// Subgroup presentation for the pair stabilizer via the closed-form path:
/// generators `y_1..y_{n+1}`; for every coset `t` and every defining
/// relation `L = R` of `p` the relation `ρ(t,L) = ρ(t,R)`; for every coset
/// and every relator `r` of `p` the relator `ρ(t,r)`; and the definition
/// relations `ρ(ε, ξ_i) = y_i`.
///
/// `p` must be a presentation on the n-gon generators `a_1..a_n`.
pub fn pair_subgroup_presentation(n: u32, p: &Presentation) -> Result<Presentation, SchreierError> {
    let gens: Vec<Gen> = (1..=n + 1).map(|i| Gen::new('y', i)).collect();
    let mut relations = Vec::new();
    let mut relators = Vec::new();
    for &(k, l) in &pair_list(n) {
        for (lh, rh) in &p.relations {
            let (wl, el) = rho_extend(n, (k, l), lh)?;
            let (wr, er) = rho_extend(n, (k, l), rh)?;
            debug_assert_eq!(el, er);
            relations.push((wl, wr));
        }
        for r in &p.relators {
            let (w, e) = rho_extend(n, (k, l), r)?;
            debug_assert_eq!(e, (k, l));
            relators.push(w);
        }
    }
    for (i, xi) in xi_generators(n).iter().enumerate() {
        let (w, e) = rho_extend(n, (1, 2), xi)?;
        debug_assert_eq!(e, (1, 2));
        relations.push((w, y(i as u32 + 1)));
    }
    let out = Presentation {
        generators: gens,
        relations,
        relators,
    };
    debug_assert!(out.check_declared().is_ok());
    Ok(out)
}

/// Subgroup presentation via the generic path: abstract generators
/// `w_1..w_{M·|gens|}`, rewritten relations and relators per coset, and one
/// definition relation per abstract generator tying it to the rewrite of
/// `rep(c) · g · rep(c·g)^{-1}` from coset 0.
pub fn generic_subgroup_presentation(
    p: &Presentation,
    table: &CosetTable,
    trans: &Transversal,
) -> Result<Presentation, SchreierError> {
    let ncos = table.num_cosets();
    let ng = table.gens().len();
    let mut gens = Vec::with_capacity(ncos * ng);
    for c in 0..ncos {
        for gi in 0..ng {
            gens.push(generic_gen(table, c, gi));
        }
    }
    let mut relations = Vec::new();
    let mut relators = Vec::new();
    for c in 0..ncos {
        for (lh, rh) in &p.relations {
            let (wl, el) = generic_rewrite(table, c, lh)?;
            let (wr, er) = generic_rewrite(table, c, rh)?;
            debug_assert_eq!(el, er);
            relations.push((wl, wr));
        }
        for r in &p.relators {
            let (w, e) = generic_rewrite(table, c, r)?;
            debug_assert_eq!(e as usize, c);
            relators.push(w);
        }
    }
    for c in 0..ncos {
        for gi in 0..ng {
            let phi = generic_definition(table, trans, c, gi);
            let (w, e) = generic_rewrite(table, 0, &phi)?;
            debug_assert_eq!(e, 0);
            relations.push((w, Word::generator(generic_gen(table, c, gi))));
        }
    }
    let out = Presentation {
        generators: gens,
        relations,
        relators,
    };
    debug_assert!(out.check_declared().is_ok());
    Ok(out)
}
