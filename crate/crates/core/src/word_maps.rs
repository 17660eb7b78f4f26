//! Explicit generator maps between the presented groups, verified in
//! finite permutation quotients, plus a suite of word identities used by
//! the verification command.
//!
//! Verification here is evidence, not proof: a map is checked by pulling a
//! faithful-looking finite assignment back along it and confirming that all
//! defining relations hold, all relators die, and both round trips fix every
//! generator in the finite images.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::diagrams::{
    chain_presentation, delta_presentation, dn_presentation, ngon_presentation, DiagramError,
    Presentation, Quotient,
};
use crate::perm_eval::{
    check_presentation, dn_signed_assignment, evaluate, ngon_signed_assignment, sigma_assignment,
    Assignment, EvalError, GroupElement,
};
use crate::word_core::{
    cycle_commutator, twisted_cycle_commutator, Gen, Letter, Word, WordError,
};

#[derive(Debug, Error)]
pub enum MapError {
    #[error("no image for generator `{0}`")]
    UnknownGenerator(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapDirection {
    Forward,
    Backward,
}

impl MapDirection {
    pub fn token(self) -> &'static str {
        match self {
            MapDirection::Forward => "forward",
            MapDirection::Backward => "backward",
        }
    }
}

/// A homomorphism candidate given by generator images.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    pub name: String,
    pub source: Presentation,
    pub target: Presentation,
    pub images: std::collections::BTreeMap<Gen, Word>,
}

impl GeneratorMap {
    /// Apply the map letter by letter; the result is freely reduced.
    pub fn apply(&self, w: &Word) -> Result<Word, MapError> {
        let mut out = Word::empty();
        for l in w.letters() {
            let img = self
                .images
                .get(&l.gen)
                .ok_or_else(|| MapError::UnknownGenerator(l.gen.to_string()))?;
            out = out.concat(&if l.sign == 1 { img.clone() } else { img.inverse() });
        }
        Ok(out)
    }

    /// Pull a target assignment back along the map: each source generator is
    /// sent to the evaluation of its image word.
    pub fn image_assignment<E: GroupElement>(
        &self,
        target: &Assignment<E>,
    ) -> Result<Assignment<E>, MapError> {
        let mut out = Assignment::new();
        for (g, w) in &self.images {
            out.insert(*g, evaluate(target, w)?);
        }
        Ok(out)
    }

    /// Compose with a second map (`self` first, then `other`).
    pub fn compose(&self, other: &GeneratorMap) -> Result<GeneratorMap, MapError> {
        let mut images = std::collections::BTreeMap::new();
        for (g, w) in &self.images {
            images.insert(*g, other.apply(w)?);
        }
        Ok(GeneratorMap {
            name: format!("{} then {}", self.name, other.name),
            source: self.source.clone(),
            target: other.target.clone(),
            images,
        })
    }
}

/// Check that a map is a homomorphism into the given finite quotient of its
/// target: pull the assignment back and test every source relation and
/// relator. Returns failure descriptions (empty = pass).
pub fn verify_in_quotient<E: GroupElement>(
    m: &GeneratorMap,
    target_assign: &Assignment<E>,
) -> Result<Vec<String>, MapError> {
    let mut failures = Vec::new();
    for g in &m.source.generators {
        if !m.images.contains_key(g) {
            failures.push(format!("no image for generator {g}"));
        }
    }
    if !failures.is_empty() {
        return Ok(failures);
    }
    let pulled = m.image_assignment(target_assign)?;
    failures.extend(check_presentation(&m.source, &pulled)?);
    Ok(failures)
}

/// Check that `m2 ∘ m1` fixes every generator of `m1.source` in the finite
/// image given by `assign` (an assignment on `m1.source`'s generators).
pub fn verify_mutual_inverse<E: GroupElement>(
    m1: &GeneratorMap,
    m2: &GeneratorMap,
    assign: &Assignment<E>,
) -> Result<Vec<String>, MapError> {
    let mut failures = Vec::new();
    for g in &m1.source.generators {
        let gw = Word::generator(*g);
        let round = m2.apply(&m1.apply(&gw)?)?;
        if evaluate(assign, &round)? != evaluate(assign, &gw)? {
            failures.push(format!("round trip moves generator {g} (image {round})"));
        }
    }
    Ok(failures)
}

fn aw(i: u32) -> Word {
    Word::generator(Gen::new('a', i))
}
fn bw(i: u32) -> Word {
    Word::generator(Gen::new('b', i))
}
fn cw(i: u32) -> Word {
    Word::generator(Gen::new('c', i))
}
fn xw(i: u32) -> Word {
    Word::generator(Gen::new('x', i))
}

/// `f(lo) f(lo+1) … f(hi)`; empty when `lo > hi`.
fn asc(f: fn(u32) -> Word, lo: u32, hi: u32) -> Word {
    if lo > hi {
        return Word::empty();
    }
    Word::product((lo..=hi).map(f).collect::<Vec<_>>().iter())
}

/// `f(hi) f(hi-1) … f(lo)`; empty when `hi < lo`.
fn desc(f: fn(u32) -> Word, hi: u32, lo: u32) -> Word {
    if hi < lo {
        return Word::empty();
    }
    Word::product((lo..=hi).rev().map(f).collect::<Vec<_>>().iter())
}

/// `f(lo)^-1 f(lo+1)^-1 … f(hi)^-1`; empty when `lo > hi`.
fn asc_inv(f: fn(u32) -> Word, lo: u32, hi: u32) -> Word {
    if lo > hi {
        return Word::empty();
    }
    Word::product(
        (lo..=hi)
            .map(|i| f(i).inverse())
            .collect::<Vec<_>>()
            .iter(),
    )
}

fn sandwich(pre: &Word, mid: &Word) -> Word {
    pre.concat(mid).concat(&pre.inverse())
}

/// The map between the cycle-commutator quotient on the n-gon generators
/// and the Artin group of the fork diagram.
pub fn ngon_dn_map(n: u32, dir: MapDirection) -> Result<GeneratorMap, MapError> {
    if n < 4 {
        return Err(MapError::Range(format!("ngon-d needs n >= 4, got {n}")));
    }
    let src = ngon_presentation(n, Quotient::Cycle)?;
    let tgt = dn_presentation(n)?;
    let mut fwd = std::collections::BTreeMap::new();
    fwd.insert(Gen::new('a', 1), xw(1));
    for i in 2..n {
        fwd.insert(Gen::new('a', i), xw(i + 1));
    }
    // a_n ↦ x_n^-1 … x_3^-1 x_2 x_3 … x_n
    let an = asc(xw, 3, n).inverse().concat(&xw(2)).concat(&asc(xw, 3, n));
    fwd.insert(Gen::new('a', n), an);

    let mut bwd = std::collections::BTreeMap::new();
    bwd.insert(Gen::new('x', 1), aw(1));
    bwd.insert(
        Gen::new('x', 2),
        sandwich(&asc(aw, 2, n - 1), &aw(n)),
    );
    for i in 3..=n {
        bwd.insert(Gen::new('x', i), aw(i - 1));
    }
    Ok(match dir {
        MapDirection::Forward => GeneratorMap {
            name: format!("ngon-d {}", dir.token()),
            source: src,
            target: tgt,
            images: fwd,
        },
        MapDirection::Backward => GeneratorMap {
            name: format!("ngon-d {}", dir.token()),
            source: tgt,
            target: src,
            images: bwd,
        },
    })
}

/// The map between the cycle-commutator quotient on the square-with-arm
/// diagram (`t = 1`) and the Artin group of the fork diagram.
pub fn square_dn_map(n: u32, dir: MapDirection) -> Result<GeneratorMap, MapError> {
    if n < 4 {
        return Err(MapError::Range(format!("square-d needs n >= 4, got {n}")));
    }
    let src = delta_presentation(n, 1, Quotient::Cycle)?;
    let tgt = dn_presentation(n)?;
    let mut fwd = std::collections::BTreeMap::new();
    fwd.insert(Gen::new('b', 1), xw(4));
    fwd.insert(Gen::new('b', 2), xw(3));
    fwd.insert(Gen::new('b', 3), xw(1));
    fwd.insert(
        Gen::new('b', 4),
        xw(1)
            .inverse()
            .concat(&xw(3).inverse())
            .concat(&xw(2))
            .concat(&xw(3))
            .concat(&xw(1)),
    );
    for k in 5..=n {
        fwd.insert(Gen::new('b', k), xw(k));
    }
    let mut bwd = std::collections::BTreeMap::new();
    bwd.insert(Gen::new('x', 1), bw(3));
    bwd.insert(
        Gen::new('x', 2),
        sandwich(&bw(2).concat(&bw(3)), &bw(4)),
    );
    bwd.insert(Gen::new('x', 3), bw(2));
    bwd.insert(Gen::new('x', 4), bw(1));
    for k in 5..=n {
        bwd.insert(Gen::new('x', k), bw(k));
    }
    Ok(match dir {
        MapDirection::Forward => GeneratorMap {
            name: format!("square-d {}", dir.token()),
            source: src,
            target: tgt,
            images: fwd,
        },
        MapDirection::Backward => GeneratorMap {
            name: format!("square-d {}", dir.token()),
            source: tgt,
            target: src,
            images: bwd,
        },
    })
}

/// The map between the cycle-commutator quotients on the square-with-arms
/// diagrams with parameters `t` and `1` (sliding the second arm around the
/// square onto the first).
pub fn arm_slide_map(n: u32, t: u32, dir: MapDirection) -> Result<GeneratorMap, MapError> {
    if n < 4 || t < 1 || t > n - 3 {
        return Err(MapError::Range(format!(
            "arm-slide needs n >= 4 and 1 <= t <= n-3, got n={n}, t={t}"
        )));
    }
    let src = delta_presentation(n, t, Quotient::Cycle)?;
    let tgt = delta_presentation(n, 1, Quotient::Cycle)?;
    let r = n - 3 - t;
    let (fwd, bwd) = if t == 1 {
        let id: std::collections::BTreeMap<Gen, Word> =
            (1..=n).map(|i| (Gen::new('b', i), bw(i))).collect();
        (id.clone(), id)
    } else {
        let mut fwd = std::collections::BTreeMap::new();
        for i in 1..=4 + r {
            fwd.insert(Gen::new('b', i), bw(i));
        }
        let pre = desc(bw, 5 + r, 5).concat(&bw(1)).concat(&bw(2));
        fwd.insert(Gen::new('c', 5 + r), sandwich(&pre, &bw(3)));
        for k in 6 + r..=n {
            fwd.insert(Gen::new('c', k), bw(k));
        }
        let mut bwd = std::collections::BTreeMap::new();
        for i in 1..=4 + r {
            bwd.insert(Gen::new('b', i), bw(i));
        }
        let pre2 = desc(bw, 4 + r, 5)
            .concat(&bw(1))
            .concat(&bw(2))
            .concat(&bw(3));
        bwd.insert(Gen::new('b', 5 + r), sandwich(&pre2, &cw(5 + r)));
        for k in 6 + r..=n {
            bwd.insert(Gen::new('b', k), cw(k));
        }
        (fwd, bwd)
    };
    Ok(match dir {
        MapDirection::Forward => GeneratorMap {
            name: format!("arm-slide {}", dir.token()),
            source: src,
            target: tgt,
            images: fwd,
        },
        MapDirection::Backward => GeneratorMap {
            name: format!("arm-slide {}", dir.token()),
            source: tgt,
            target: src,
            images: bwd,
        },
    })
}

/// The map between the twisted quotient on the square-with-arms diagram
/// (twist on the square) and the twisted quotient on the n-gon.
pub fn twisted_equivalence_map(n: u32, t: u32, dir: MapDirection) -> Result<GeneratorMap, MapError> {
    if n < 4 || t < 1 || t > n - 3 {
        return Err(MapError::Range(format!(
            "twisted needs n >= 4 and 1 <= t <= n-3, got n={n}, t={t}"
        )));
    }
    let src = delta_presentation(n, t, Quotient::Twisted(1))?;
    let tgt = ngon_presentation(n, Quotient::Twisted(t))?;
    let r = n - 3 - t;
    let (fwd, bwd) = if n == 4 {
        let fwd: std::collections::BTreeMap<Gen, Word> =
            (1..=4).map(|i| (Gen::new('b', i), aw(i))).collect();
        let bwd: std::collections::BTreeMap<Gen, Word> =
            (1..=4).map(|i| (Gen::new('a', i), bw(i))).collect();
        (fwd, bwd)
    } else {
        let mut fwd = std::collections::BTreeMap::new();
        let cj1 = asc(aw, 2, r + 1);
        fwd.insert(Gen::new('b', 1), sandwich(&cj1, &aw(r + 2)));
        let cj2 = asc(aw, 2, r + 2).concat(&asc_inv(aw, r + 3, n - 1));
        fwd.insert(Gen::new('b', 2), sandwich(&cj2, &aw(n)));
        let cj3 = asc_inv(aw, r + 4, n - 1);
        fwd.insert(Gen::new('b', 3), sandwich(&cj3, &aw(n)));
        fwd.insert(Gen::new('b', 4), aw(1));
        for k in 5..=r + 4 {
            fwd.insert(Gen::new('b', k), aw(r + 7 - k));
        }
        for k in 5 + r..=n {
            fwd.insert(Gen::new('c', k), aw(k - 1));
        }
        let mut bwd = std::collections::BTreeMap::new();
        bwd.insert(Gen::new('a', 1), bw(4));
        let cjb = desc(bw, r + 4, 5);
        bwd.insert(Gen::new('a', 2), sandwich(&cjb, &bw(1)));
        for k in 3..=r + 2 {
            bwd.insert(Gen::new('a', k), bw(r + 7 - k));
        }
        bwd.insert(
            Gen::new('a', r + 3),
            bw(1)
                .inverse()
                .concat(&bw(2))
                .concat(&bw(3))
                .concat(&bw(2).inverse())
                .concat(&bw(1)),
        );
        for k in r + 4..=n - 1 {
            bwd.insert(Gen::new('a', k), cw(k + 1));
        }
        let cjc = desc(cw, n, r + 5);
        bwd.insert(Gen::new('a', n), sandwich(&cjc, &bw(3)));
        (fwd, bwd)
    };
    Ok(match dir {
        MapDirection::Forward => GeneratorMap {
            name: format!("twisted {}", dir.token()),
            source: src,
            target: tgt,
            images: fwd,
        },
        MapDirection::Backward => GeneratorMap {
            name: format!("twisted {}", dir.token()),
            source: tgt,
            target: src,
            images: bwd,
        },
    })
}

/// The four map families, by CLI token.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapFamily {
    NgonD,
    SquareD,
    ArmSlide,
    Twisted,
}

impl MapFamily {
    pub fn token(self) -> &'static str {
        match self {
            MapFamily::NgonD => "ngon-d",
            MapFamily::SquareD => "square-d",
            MapFamily::ArmSlide => "arm-slide",
            MapFamily::Twisted => "twisted",
        }
    }

    pub fn parse(s: &str) -> Option<MapFamily> {
        match s {
            "ngon-d" => Some(MapFamily::NgonD),
            "square-d" => Some(MapFamily::SquareD),
            "arm-slide" => Some(MapFamily::ArmSlide),
            "twisted" => Some(MapFamily::Twisted),
            _ => None,
        }
    }

    pub fn all() -> [MapFamily; 4] {
        [
            MapFamily::NgonD,
            MapFamily::SquareD,
            MapFamily::ArmSlide,
            MapFamily::Twisted,
        ]
    }

    /// Whether the family takes a `t` parameter.
    pub fn uses_t(self) -> bool {
        matches!(self, MapFamily::ArmSlide | MapFamily::Twisted)
    }

    pub fn maps(self, n: u32, t: u32) -> Result<(GeneratorMap, GeneratorMap), MapError> {
        let (f, b) = match self {
            MapFamily::NgonD => (
                ngon_dn_map(n, MapDirection::Forward)?,
                ngon_dn_map(n, MapDirection::Backward)?,
            ),
            MapFamily::SquareD => (
                square_dn_map(n, MapDirection::Forward)?,
                square_dn_map(n, MapDirection::Backward)?,
            ),
            MapFamily::ArmSlide => (
                arm_slide_map(n, t, MapDirection::Forward)?,
                arm_slide_map(n, t, MapDirection::Backward)?,
            ),
            MapFamily::Twisted => (
                twisted_equivalence_map(n, t, MapDirection::Forward)?,
                twisted_equivalence_map(n, t, MapDirection::Backward)?,
            ),
        };
        Ok((f, b))
    }
}

/// Outcome of the standard verification of one map family instance.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub family: MapFamily,
    pub n: u32,
    /// `0` when the family does not take a `t` parameter.
    pub t: u32,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn corrupt_map(m: &mut GeneratorMap) {
    let g = *m.images.keys().next().unwrap();
    let w = m.images[&g].clone();
    let letters: Vec<Letter> = w.letters()[..w.len() - 1].to_vec();
    m.images.insert(g, Word::from_letters(letters));
}

fn prefixed(prefix: &str, fails: Vec<String>) -> Vec<String> {
    fails
        .into_iter()
        .map(|f| format!("[{prefix}] {f}"))
        .collect()
}

/// Run the standard battery of finite-quotient checks for one family:
/// forward and backward homomorphism checks against the canonical signed
/// (and, where applicable, unsigned) assignments, plus both round trips.
/// `corrupt` deliberately damages the forward map first, as a negative
/// control — the report must then contain failures naming a relation.
pub fn standard_verification(
    family: MapFamily,
    n: u32,
    t: u32,
    corrupt: bool,
) -> Result<VerificationReport, MapError> {
    let (mut fwd, bwd) = family.maps(n, t)?;
    if corrupt {
        corrupt_map(&mut fwd);
    }
    let mut failures = Vec::new();
    let mut checks = 0usize;
    let size = |p: &Presentation| p.relations.len() + p.relators.len();
    match family {
        MapFamily::NgonD => {
            let dass = dn_signed_assignment(n);
            let sg = ngon_signed_assignment(n);
            let si = sigma_assignment(n);
            checks += size(&fwd.source) + 2 * size(&bwd.source) + 3 * fwd.source.generators.len();
            failures.extend(prefixed("forward signed", verify_in_quotient(&fwd, &dass)?));
            failures.extend(prefixed("backward signed", verify_in_quotient(&bwd, &sg)?));
            failures.extend(prefixed("backward perm", verify_in_quotient(&bwd, &si)?));
            failures.extend(prefixed(
                "round trip on source, signed",
                verify_mutual_inverse(&fwd, &bwd, &sg)?,
            ));
            failures.extend(prefixed(
                "round trip on source, perm",
                verify_mutual_inverse(&fwd, &bwd, &si)?,
            ));
            failures.extend(prefixed(
                "round trip on target, signed",
                verify_mutual_inverse(&bwd, &fwd, &dass)?,
            ));
        }
        MapFamily::SquareD => {
            let dass = dn_signed_assignment(n);
            checks += size(&fwd.source) + size(&bwd.source) + 2 * fwd.source.generators.len();
            failures.extend(prefixed("forward signed", verify_in_quotient(&fwd, &dass)?));
            let q1 = fwd.image_assignment(&dass)?;
            failures.extend(prefixed("backward signed", verify_in_quotient(&bwd, &q1)?));
            failures.extend(prefixed(
                "round trip on source",
                verify_mutual_inverse(&fwd, &bwd, &q1)?,
            ));
            failures.extend(prefixed(
                "round trip on target",
                verify_mutual_inverse(&bwd, &fwd, &dass)?,
            ));
        }
        MapFamily::ArmSlide => {
            let dass = dn_signed_assignment(n);
            let square = square_dn_map(n, MapDirection::Forward)?;
            let q1 = square.image_assignment(&dass)?;
            checks += size(&fwd.source) + size(&bwd.source) + 2 * fwd.source.generators.len();
            failures.extend(prefixed("forward signed", verify_in_quotient(&fwd, &q1)?));
            let q2 = fwd.image_assignment(&q1)?;
            failures.extend(prefixed("backward signed", verify_in_quotient(&bwd, &q2)?));
            failures.extend(prefixed(
                "round trip on source",
                verify_mutual_inverse(&fwd, &bwd, &q2)?,
            ));
            failures.extend(prefixed(
                "round trip on target",
                verify_mutual_inverse(&bwd, &fwd, &q1)?,
            ));
        }
        MapFamily::Twisted => {
            let sg = ngon_signed_assignment(n);
            let si = sigma_assignment(n);
            checks += 2 * size(&fwd.source) + size(&bwd.source) + 3 * fwd.source.generators.len();
            failures.extend(prefixed("forward signed", verify_in_quotient(&fwd, &sg)?));
            failures.extend(prefixed("forward perm", verify_in_quotient(&fwd, &si)?));
            let q = fwd.image_assignment(&sg)?;
            failures.extend(prefixed("backward signed", verify_in_quotient(&bwd, &q)?));
            failures.extend(prefixed(
                "round trip on source",
                verify_mutual_inverse(&fwd, &bwd, &q)?,
            ));
            failures.extend(prefixed(
                "round trip on target, signed",
                verify_mutual_inverse(&bwd, &fwd, &sg)?,
            ));
            failures.extend(prefixed(
                "round trip on target, perm",
                verify_mutual_inverse(&bwd, &fwd, &si)?,
            ));
        }
    }
    Ok(VerificationReport {
        family,
        n,
        t: if family.uses_t() { t } else { 0 },
        checks,
        failures,
    })
}

/// One identity to be checked in the images of its context presentation.
#[derive(Clone, Debug)]
pub struct LemmaInstance {
    pub tag: &'static str,
    pub label: String,
    pub lhs: Word,
    pub rhs: Word,
    pub context: Presentation,
}

fn braid_pair(u: &Word, v: &Word) -> (Word, Word) {
    (
        u.concat(v).concat(u),
        v.concat(u).concat(v),
    )
}

fn commute_pair(u: &Word, v: &Word) -> (Word, Word) {
    (u.concat(v), v.concat(u))
}

/// `[a_1, u a_n u^-1]` where `u = a_2^{e_2} … a_{n-1}^{e_{n-1}}` and
/// `e_i = -1` exactly for `i ∈ negatives`.
fn signed_tail_commutator(n: u32, negatives: &BTreeSet<u32>) -> Word {
    let parts: Vec<Word> = (2..n)
        .map(|i| {
            if negatives.contains(&i) {
                aw(i).inverse()
            } else {
                aw(i)
            }
        })
        .collect();
    let u = Word::product(parts.iter());
    crate::word_core::commutator(&aw(1), &sandwich(&u, &aw(n)))
}

fn subsets_lex(candidates: &[u32], size: usize, cap: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(size);
    fn rec(
        cands: &[u32],
        start: usize,
        size: usize,
        cap: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if out.len() >= cap {
            return;
        }
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..cands.len() {
            cur.push(cands[i]);
            rec(cands, i + 1, size, cap, cur, out);
            cur.pop();
            if out.len() >= cap {
                return;
            }
        }
    }
    rec(candidates, 0, size, cap, &mut cur, &mut out);
    out
}

/// The suite of word identities exercised by the verification command.
/// Each instance carries the presentation it is claimed to hold in; the
/// checker evaluates both sides in that presentation's canonical finite
/// images.
pub fn lemma_identity_suite(n: u32) -> Result<Vec<LemmaInstance>, MapError> {
    if n < 4 {
        return Err(MapError::Range(format!("lemma suite needs n >= 4, got {n}")));
    }
    let chain = chain_presentation(n - 1)?;
    let mut out: Vec<LemmaInstance> = Vec::new();
    let mut push = |tag: &'static str, label: String, pair: (Word, Word), ctx: &Presentation| {
        out.push(LemmaInstance {
            tag,
            label,
            lhs: pair.0,
            rhs: pair.1,
            context: ctx.clone(),
        });
    };

    // Conjugates across a length-3 braid chain again braid or commute.
    for i in 1..=n - 3 {
        let f = aw(i);
        let g = aw(i + 1);
        let h = aw(i + 2);
        let ghg = sandwich(&g, &h);
        let gihg = h.conjugate_by(&g); // g^-1 h g
        let fghgf = sandwich(&f, &ghg);
        push(
            "braid-conj-braid",
            format!("i={i} braid(f, g h g^-1)"),
            braid_pair(&f, &ghg),
            &chain,
        );
        push(
            "braid-conj-braid",
            format!("i={i} braid(f, g^-1 h g)"),
            braid_pair(&f, &gihg),
            &chain,
        );
        push(
            "braid-conj-braid",
            format!("i={i} braid(f, f g h g^-1 f^-1)"),
            braid_pair(&f, &fghgf),
            &chain,
        );
        push(
            "braid-conj-braid",
            format!("i={i} commute(g, f g h g^-1 f^-1)"),
            commute_pair(&g, &fghgf),
            &chain,
        );
        push(
            "braid-conj-braid",
            format!("i={i} commute(f^-1 g f, h^-1 g h)"),
            commute_pair(&g.conjugate_by(&f), &g.conjugate_by(&h)),
            &chain,
        );
        push(
            "braid-conj-braid",
            format!("i={i} commute(f g f^-1, h g h^-1)"),
            commute_pair(&sandwich(&f, &g), &sandwich(&h, &g)),
            &chain,
        );
    }

    // The long conjugate w = (a_1 … a_{k-1}) a_k (a_1 … a_{k-1})^-1.
    for k in 2..=n - 1 {
        let pre = asc(aw, 1, k - 1);
        let w = sandwich(&pre, &aw(k));
        let alt = aw(1).conjugate_by(&asc(aw, 2, k)); // a_k^-1 … a_2^-1 a_1 a_2 … a_k
        push(
            "long-conjugation",
            format!("k={k} two spellings"),
            (w.clone(), alt),
            &chain,
        );
        push(
            "long-conjugation",
            format!("k={k} braid(a1, w)"),
            braid_pair(&aw(1), &w),
            &chain,
        );
        push(
            "long-conjugation",
            format!("k={k} braid(a{k}, w)"),
            braid_pair(&aw(k), &w),
            &chain,
        );
        if k >= 3 {
            let v = aw(1).conjugate_by(&asc(aw, 2, k - 1));
            push(
                "long-conjugation",
                format!("k={k} braid(a{k}, v)"),
                braid_pair(&aw(k), &v),
                &chain,
            );
        }
        for i in 2..=k - 1 {
            push(
                "long-conjugation",
                format!("k={k} commute(a{i}, w)"),
                commute_pair(&aw(i), &w),
                &chain,
            );
        }
    }

    // Every rotation of the cycle commutator dies in the cycle quotient.
    let g0 = ngon_presentation(n, Quotient::Cycle)?;
    for j in 0..n {
        let ys: Vec<Word> = (0..n).map(|s| aw(((j + s) % n) + 1)).collect();
        push(
            "cycle-rotation",
            format!("start a{}", j + 1),
            (cycle_commutator(&ys)?, Word::empty()),
            &g0,
        );
    }

    for t in 1..=n - 2 {
        let gt = ngon_presentation(n, Quotient::Twisted(t))?;
        // Every rotation of the twisted commutator dies in its quotient.
        for j in 0..n {
            let ys: Vec<Word> = (0..n).map(|s| aw(((j + s) % n) + 1)).collect();
            push(
                "twist-rotation",
                format!("t={t} start a{}", j + 1),
                (twisted_cycle_commutator(&ys, t as usize)?, Word::empty()),
                &gt,
            );
        }
        // Any size-t choice of inverted middle letters gives the same
        // quotient relator.
        if t <= n - 3 {
            let candidates: Vec<u32> = (2..=n - 2).collect();
            for s in subsets_lex(&candidates, t as usize, 25) {
                let set: BTreeSet<u32> = s.iter().copied().collect();
                push(
                    "twist-subset",
                    format!("t={t} S={{{}}}", s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")),
                    (signed_tail_commutator(n, &set), Word::empty()),
                    &gt,
                );
            }
        }
        if n == 6 && t == 2 {
            // An instance beyond the stated index range that still holds.
            let set: BTreeSet<u32> = [3u32, 5].into_iter().collect();
            push(
                "twist-subset",
                "t=2 S={3,5} extended".to_string(),
                (signed_tail_commutator(n, &set), Word::empty()),
                &gt,
            );
        }
    }

    // A square absorbed through a product of chain generators.
    for k in 2..=n - 1 {
        let lhs = aw(1)
            .inverse()
            .concat(&asc(aw, 2, k - 1))
            .concat(&aw(k).pow(2))
            .concat(&asc(aw, 1, k));
        let rhs = asc(aw, 2, k - 1)
            .concat(&asc(aw, 1, k - 2))
            .concat(&aw(k))
            .concat(&aw(k - 1).pow(2));
        push(
            "square-reduction",
            format!("k={k}"),
            (lhs, rhs),
            &chain,
        );
    }

    Ok(out)
}

/// Evaluate every suite instance in the σ- and signed-permutation images;
/// returns failure descriptions (empty = everything holds).
pub fn verify_lemma_suite(n: u32) -> Result<Vec<String>, MapError> {
    let sigma = sigma_assignment(n);
    let signed = ngon_signed_assignment(n);
    let mut failures = Vec::new();
    for inst in lemma_identity_suite(n)? {
        if evaluate(&sigma, &inst.lhs)? != evaluate(&sigma, &inst.rhs)? {
            failures.push(format!("{} {}: sides differ under perm image", inst.tag, inst.label));
        }
        if evaluate(&signed, &inst.lhs)? != evaluate(&signed, &inst.rhs)? {
            failures.push(format!(
                "{} {}: sides differ under signed image",
                inst.tag, inst.label
            ));
        }
    }
    Ok(failures)
}

/// The six substitution patterns generated by one braid relation `ghg = hgh`:
/// each pair rewrites a length-3 factor into an equivalent one.
fn braid_patterns(g: Gen, h: Gen) -> Vec<(Vec<Letter>, Vec<Letter>)> {
    let p = |gn: Gen, s: i8| Letter::new(gn, s);
    vec![
        (
            vec![p(g, 1), p(h, 1), p(g, 1)],
            vec![p(h, 1), p(g, 1), p(h, 1)],
        ),
        (
            vec![p(g, -1), p(h, -1), p(g, -1)],
            vec![p(h, -1), p(g, -1), p(h, -1)],
        ),
        (
            vec![p(g, 1), p(h, 1), p(g, -1)],
            vec![p(h, -1), p(g, 1), p(h, 1)],
        ),
        (
            vec![p(h, 1), p(g, 1), p(h, -1)],
            vec![p(g, -1), p(h, 1), p(g, 1)],
        ),
        (
            vec![p(g, 1), p(h, -1), p(g, -1)],
            vec![p(h, -1), p(g, -1), p(h, 1)],
        ),
        (
            vec![p(h, 1), p(g, -1), p(h, -1)],
            vec![p(g, -1), p(h, -1), p(g, 1)],
        ),
    ]
}

/// Breadth-first search in the rewriting graph whose moves replace one
/// length-3 braid factor (for some braided pair in `edges`) by its
/// equivalent, followed by free reduction. Returns the least number of
/// substitutions carrying `start` to `goal`, or `None` within `max_depth`.
pub fn braid_rewrite_search(
    start: &Word,
    goal: &Word,
    edges: &[(Gen, Gen)],
    max_depth: usize,
) -> Option<usize> {
    if start == goal {
        return Some(0);
    }
    let mut patterns = Vec::new();
    for &(g, h) in edges {
        for (a, b) in braid_patterns(g, h) {
            patterns.push((a.clone(), b.clone()));
            patterns.push((b, a));
        }
    }
    let mut seen: HashSet<Word> = HashSet::from([start.clone()]);
    let mut queue: VecDeque<(Word, usize)> = VecDeque::from([(start.clone(), 0)]);
    while let Some((w, d)) = queue.pop_front() {
        if d == max_depth {
            continue;
        }
        let letters = w.letters();
        for (pat, rep) in &patterns {
            if letters.len() < pat.len() {
                continue;
            }
            for i in 0..=letters.len() - pat.len() {
                if &letters[i..i + pat.len()] == pat.as_slice() {
                    let mut next: Vec<Letter> = letters[..i].to_vec();
                    next.extend(rep.iter().copied());
                    next.extend(letters[i + pat.len()..].iter().copied());
                    let next = Word::from_letters(next);
                    if next == *goal {
                        return Some(d + 1);
                    }
                    if seen.insert(next.clone()) {
                        queue.push_back((next, d + 1));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_core::parse_word;

    #[test]
    fn map_image_examples() {
        let m = ngon_dn_map(5, MapDirection::Forward).unwrap();
        assert_eq!(m.images[&Gen::new('a', 1)].to_string(), "x1");
        assert_eq!(m.images[&Gen::new('a', 3)].to_string(), "x4");
        assert_eq!(
            m.images[&Gen::new('a', 5)].to_string(),
            "x5^-1*x4^-1*x3^-1*x2*x3*x4*x5"
        );
        let b = ngon_dn_map(5, MapDirection::Backward).unwrap();
        assert_eq!(
            b.images[&Gen::new('x', 2)].to_string(),
            "a2*a3*a4*a5*a4^-1*a3^-1*a2^-1"
        );
        let s = square_dn_map(6, MapDirection::Forward).unwrap();
        assert_eq!(s.images[&Gen::new('b', 1)].to_string(), "x4");
        assert_eq!(
            s.images[&Gen::new('b', 4)].to_string(),
            "x1^-1*x3^-1*x2*x3*x1"
        );
        assert_eq!(s.images[&Gen::new('b', 6)].to_string(), "x6");
    }

    #[test]
    fn every_image_has_exponent_sum_one() {
        for n in 4..=8u32 {
            let mut maps = vec![
                ngon_dn_map(n, MapDirection::Forward).unwrap(),
                ngon_dn_map(n, MapDirection::Backward).unwrap(),
                square_dn_map(n, MapDirection::Forward).unwrap(),
                square_dn_map(n, MapDirection::Backward).unwrap(),
            ];
            for t in 1..=n - 3 {
                maps.push(arm_slide_map(n, t, MapDirection::Forward).unwrap());
                maps.push(arm_slide_map(n, t, MapDirection::Backward).unwrap());
                maps.push(twisted_equivalence_map(n, t, MapDirection::Forward).unwrap());
                maps.push(twisted_equivalence_map(n, t, MapDirection::Backward).unwrap());
            }
            for m in maps {
                for (g, w) in &m.images {
                    let total: i64 = w.support().iter().map(|&h| w.exponent_sum(h)).sum();
                    assert_eq!(total, 1, "{}: image of {g} is {w}", m.name);
                }
            }
        }
    }

    #[test]
    fn apply_is_functorial() {
        let m = ngon_dn_map(5, MapDirection::Forward).unwrap();
        let u = parse_word("a1*a2^-1*a5").unwrap();
        let v = parse_word("a3*a5^2").unwrap();
        assert_eq!(
            m.apply(&u.concat(&v)).unwrap(),
            m.apply(&u).unwrap().concat(&m.apply(&v).unwrap())
        );
        assert_eq!(m.apply(&u.inverse()).unwrap(), m.apply(&u).unwrap().inverse());
        // evaluating the image equals evaluating under the pullback
        let dass = dn_signed_assignment(5);
        let pulled = m.image_assignment(&dass).unwrap();
        assert_eq!(
            evaluate(&dass, &m.apply(&u).unwrap()).unwrap(),
            evaluate(&pulled, &u).unwrap()
        );
    }

    #[test]
    fn all_families_verify_small() {
        for n in 4..=6u32 {
            for family in MapFamily::all() {
                let ts: Vec<u32> = if family.uses_t() {
                    (1..=n - 3).collect()
                } else {
                    vec![0]
                };
                for t in ts {
                    let rep = standard_verification(family, n, t, false).unwrap();
                    assert!(
                        rep.ok(),
                        "{} n={n} t={t}: {:?}",
                        family.token(),
                        rep.failures
                    );
                    assert!(rep.checks > 0);
                }
            }
        }
    }

    #[test]
    fn corruption_is_detected_and_names_a_relation() {
        let rep = standard_verification(MapFamily::NgonD, 5, 0, true).unwrap();
        assert!(!rep.ok());
        assert!(
            rep.failures.iter().any(|f| f.contains("relation violated")
                || f.contains("relator not killed")
                || f.contains("round trip")),
            "{:?}",
            rep.failures
        );
        let rep = standard_verification(MapFamily::Twisted, 6, 2, true).unwrap();
        assert!(!rep.ok());
    }

    #[test]
    fn t1_and_n4_special_cases_are_renamings() {
        let m = arm_slide_map(6, 1, MapDirection::Forward).unwrap();
        for (g, w) in &m.images {
            assert_eq!(&Word::generator(*g), w);
        }
        let m = twisted_equivalence_map(4, 1, MapDirection::Forward).unwrap();
        for i in 1..=4 {
            assert_eq!(m.images[&Gen::new('b', i)], aw(i));
        }
    }

    #[test]
    fn composite_through_the_fork_group_fixes_generators() {
        let n = 6;
        let fwd = ngon_dn_map(n, MapDirection::Forward).unwrap();
        let bwd = ngon_dn_map(n, MapDirection::Backward).unwrap();
        let comp = fwd.compose(&bwd).unwrap();
        let sg = ngon_signed_assignment(n);
        let si = sigma_assignment(n);
        for g in &comp.source.generators {
            let w = comp.apply(&Word::generator(*g)).unwrap();
            assert_eq!(
                evaluate(&sg, &w).unwrap(),
                evaluate(&sg, &Word::generator(*g)).unwrap()
            );
            assert_eq!(
                evaluate(&si, &w).unwrap(),
                evaluate(&si, &Word::generator(*g)).unwrap()
            );
        }
    }

    #[test]
    fn lemma_suite_passes_small() {
        for n in 4..=6u32 {
            let fails = verify_lemma_suite(n).unwrap();
            assert!(fails.is_empty(), "n={n}: {fails:?}");
        }
    }

    #[test]
    fn lemma_suite_contains_all_tags() {
        let suite = lemma_identity_suite(6).unwrap();
        for tag in [
            "braid-conj-braid",
            "long-conjugation",
            "cycle-rotation",
            "twist-rotation",
            "twist-subset",
            "square-reduction",
        ] {
            assert!(suite.iter().any(|i| i.tag == tag), "missing {tag}");
        }
        // the extended subset instance is present at n=6
        assert!(suite
            .iter()
            .any(|i| i.tag == "twist-subset" && i.label.contains("extended")));
        // subsets are capped
        let per: usize = suite
            .iter()
            .filter(|i| i.tag == "twist-subset" && i.label.starts_with("t=2 S=") && !i.label.contains("extended"))
            .count();
        assert!(per <= 25);
    }

    #[test]
    fn braid_search_finds_the_two_step_reduction_and_not_one() {
        // a1^-1 a2^2 a1 a2  ->  a2 a1^2 needs exactly two substitutions
        let start = parse_word("a1^-1*a2^2*a1*a2").unwrap();
        let goal = parse_word("a2*a1^2").unwrap();
        let edges = [(Gen::new('a', 1), Gen::new('a', 2))];
        assert_eq!(braid_rewrite_search(&start, &goal, &edges, 1), None);
        assert_eq!(braid_rewrite_search(&start, &goal, &edges, 4), Some(2));
    }

    #[test]
    fn braid_search_depth_one_examples() {
        let edges = [(Gen::new('a', 1), Gen::new('a', 2))];
        let s = parse_word("a2*a1*a2").unwrap();
        let g = parse_word("a1*a2*a1").unwrap();
        assert_eq!(braid_rewrite_search(&s, &g, &edges, 3), Some(1));
        let s = parse_word("a1^-1*a2*a1").unwrap();
        let g = parse_word("a2*a1*a2^-1").unwrap();
        assert_eq!(braid_rewrite_search(&s, &g, &edges, 3), Some(1));
    }
}
