//! Diagram families, Artin/Coxeter presentations, and the studied one-relator
//! quotients.
//!
//! Three diagram families are built in:
//!
//! * `dn(n)` — the fork: edges `{1,3}, {2,3}, {3,4}, …, {n−1,n}`; generators
//!   `x1..xn`.
//! * `ngon(n)` — the n-gon: edges `{i,i+1}` plus `{1,n}`; generators `a1..an`.
//! * `delta(n,t)` — a 4-cycle `{1,2},{2,3},{3,4},{1,4}` with an arm of length
//!   `r = n−3−t` attached at vertex 1 (vertices `5..4+r`) and an arm of length
//!   `s = t−1` attached at vertex 3 (vertices `5+r..n`); generators `b1..b{4+r}`
//!   then `c{5+r}..cn`. The diagram always has exactly `n` vertices and `n`
//!   edges.
//!
//! A [`Presentation`] is a generator list plus relations `lhs = rhs` plus
//! extra relators (words set equal to the identity). The Artin presentation
//! of a diagram has a braid relation `g·h·g = h·g·h` per edge and a commuting
//! relation `g·h = h·g` per non-edge.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::word_core::{
    cycle_commutator, parse_word, twisted_cycle_commutator, Gen, Word, WordError,
};

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("n={n} out of range for {family}: need n >= {min}")]
    NRange {
        family: &'static str,
        n: u32,
        min: u32,
    },
    #[error("t={t} out of range for n={n}: need {range}")]
    TRange {
        t: u32,
        n: u32,
        range: &'static str,
    },
    #[error("word uses generator `{0}` that the presentation does not declare")]
    Undeclared(String),
    #[error("import: {0}")]
    Import(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Which family a diagram belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiagramFamily {
    /// The fork diagram on `n` vertices (generators `x_i`).
    Dn,
    /// The n-gon (generators `a_i`).
    Ngon,
    /// The square with two arms, parametrized by the twist `t`
    /// (generators `b_i` on the square and the vertex-1 arm, `c_i` on the
    /// vertex-3 arm).
    Delta { t: u32 },
    /// A simple path on `k` vertices (generators `a_i`); used as the ambient
    /// context for chain-based word identities.
    Chain,
}

impl DiagramFamily {
    pub fn name(&self) -> &'static str {
        match self {
            DiagramFamily::Dn => "dn",
            DiagramFamily::Ngon => "ngon",
            DiagramFamily::Delta { .. } => "delta",
            DiagramFamily::Chain => "chain",
        }
    }
}

/// An undirected simple graph on vertices `1..=n` with named generators.
#[derive(Clone, Debug)]
pub struct Diagram {
    n: u32,
    family: DiagramFamily,
    edges: BTreeSet<(u32, u32)>,
}

impl Diagram {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn family(&self) -> DiagramFamily {
        self.family
    }

    /// Edges as ordered pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: u32, j: u32) -> bool {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.edges.contains(&(i, j))
    }

    /// The generator attached to vertex `v` (1-based).
    pub fn generator(&self, v: u32) -> Gen {
        debug_assert!(1 <= v && v <= self.n);
        match self.family {
            DiagramFamily::Dn => Gen::new('x', v),
            DiagramFamily::Ngon | DiagramFamily::Chain => Gen::new('a', v),
            DiagramFamily::Delta { t } => {
                let r = self.n - 3 - t;
                if v <= 4 + r {
                    Gen::new('b', v)
                } else {
                    Gen::new('c', v)
                }
            }
        }
    }

    pub fn generators(&self) -> Vec<Gen> {
        (1..=self.n).map(|v| self.generator(v)).collect()
    }
}

/// The fork diagram on `n >= 4` vertices: edges `{1,3}, {2,3}, {i,i+1}` for
/// `3 <= i < n`.
pub fn diagram_dn(n: u32) -> Result<Diagram, DiagramError> {
    if n < 4 {
        return Err(DiagramError::NRange {
            family: "dn",
            n,
            min: 4,
        });
    }
    let mut edges = BTreeSet::from([(1, 3), (2, 3)]);
    for i in 3..n {
        edges.insert((i, i + 1));
    }
    Ok(Diagram {
        n,
        family: DiagramFamily::Dn,
        edges,
    })
}

/// The n-gon on `n >= 3` vertices.
pub fn diagram_ngon(n: u32) -> Result<Diagram, DiagramError> {
    if n < 3 {
        return Err(DiagramError::NRange {
            family: "ngon",
            n,
            min: 3,
        });
    }
    let mut edges: BTreeSet<(u32, u32)> = (1..n).map(|i| (i, i + 1)).collect();
    edges.insert((1, n));
    Ok(Diagram {
        n,
        family: DiagramFamily::Ngon,
        edges,
    })
}

/// The square with two arms: `n >= 4`, `1 <= t <= n−3`.
pub fn diagram_delta(n: u32, t: u32) -> Result<Diagram, DiagramError> {
    if n < 4 {
        return Err(DiagramError::NRange {
            family: "delta",
            n,
            min: 4,
        });
    }
    if t < 1 || t > n - 3 {
        return Err(DiagramError::TRange {
            t,
            n,
            range: "1 <= t <= n-3",
        });
    }
    let r = n - 3 - t;
    let s = t - 1;
    let mut edges = BTreeSet::from([(1, 2), (2, 3), (3, 4), (1, 4)]);
    if r >= 1 {
        edges.insert((1, 5));
        for i in 5..4 + r {
            edges.insert((i, i + 1));
        }
    }
    if s >= 1 {
        edges.insert((3, 5 + r));
        for i in 5 + r..n {
            edges.insert((i, i + 1));
        }
    }
    debug_assert_eq!(edges.len() as u32, n);
    Ok(Diagram {
        n,
        family: DiagramFamily::Delta { t },
        edges,
    })
}

/// A simple path on `k >= 2` vertices with generators `a1..ak`.
pub fn diagram_chain(k: u32) -> Result<Diagram, DiagramError> {
    if k < 2 {
        return Err(DiagramError::NRange {
            family: "chain",
            n: k,
            min: 2,
        });
    }
    Ok(Diagram {
        n: k,
        family: DiagramFamily::Chain,
        edges: (1..k).map(|i| (i, i + 1)).collect(),
    })
}

/// A finite presentation: generators, relations `lhs = rhs`, and extra
/// relators (words equal to the identity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Gen>,
    pub relations: Vec<(Word, Word)>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn declares(&self, g: Gen) -> bool {
        self.generators.contains(&g)
    }

    /// Check that every relation and relator uses only declared generators.
    pub fn check_declared(&self) -> Result<(), DiagramError> {
        let declared: BTreeSet<Gen> = self.generators.iter().copied().collect();
        let check = |w: &Word| -> Result<(), DiagramError> {
            for g in w.support() {
                if !declared.contains(&g) {
                    return Err(DiagramError::Undeclared(g.to_string()));
                }
            }
            Ok(())
        };
        for (l, r) in &self.relations {
            check(l)?;
            check(r)?;
        }
        for w in &self.relators {
            check(w)?;
        }
        Ok(())
    }

    /// Extend with extra relators (validating that they are over declared
    /// generators).
    pub fn with_relators(&self, extra: Vec<Word>) -> Result<Presentation, DiagramError> {
        let mut p = self.clone();
        p.relators.extend(extra);
        p.check_declared()?;
        Ok(p)
    }

    /// All relations and relators as relators (`lhs·rhs⁻¹` for relations).
    pub fn all_relators(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self
            .relations
            .iter()
            .map(|(l, r)| l.concat(&r.inverse()))
            .collect();
        out.extend(self.relators.iter().cloned());
        out
    }

    /// JSON document (see `from_json` for the inverse).
    pub fn to_json(&self) -> Value {
        json!({
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|(l, r)| json!({
                "lhs": l.to_string(),
                "rhs": r.to_string(),
            })).collect::<Vec<_>>(),
            "relators": self.relators.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        })
    }

    /// Parse the JSON produced by [`Presentation::to_json`].
    pub fn from_json(v: &Value) -> Result<Presentation, DiagramError> {
        let get = |key: &str| -> Result<&Vec<Value>, DiagramError> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| DiagramError::Import(format!("missing array field `{key}`")))
        };
        let mut generators = Vec::new();
        for g in get("generators")? {
            let s = g
                .as_str()
                .ok_or_else(|| DiagramError::Import("generator entries must be strings".into()))?;
            generators.push(Gen::parse(s)?);
        }
        let mut relations = Vec::new();
        for rel in get("relations")? {
            let side = |key: &str| -> Result<Word, DiagramError> {
                let s = rel.get(key).and_then(Value::as_str).ok_or_else(|| {
                    DiagramError::Import(format!("relation entries need string `{key}`"))
                })?;
                Ok(parse_word(s)?)
            };
            relations.push((side("lhs")?, side("rhs")?));
        }
        let mut relators = Vec::new();
        for w in get("relators")? {
            let s = w
                .as_str()
                .ok_or_else(|| DiagramError::Import("relator entries must be strings".into()))?;
            relators.push(parse_word(s)?);
        }
        let p = Presentation {
            generators,
            relations,
            relators,
        };
        p.check_declared()?;
        Ok(p)
    }

    /// GAP-readable text defining the presented group as `G`:
    ///
    /// ```text
    /// F := FreeGroup( "a1", "a2", ... );;
    /// AssignGeneratorVariables( F );;
    /// rels := [ lhs * (rhs)^-1, ..., relator, ... ];;
    /// G := F / rels;;
    /// ```
    pub fn to_gap(&self) -> String {
        let gens = self
            .generators
            .iter()
            .map(|g| format!("\"{g}\""))
            .collect::<Vec<_>>()
            .join(", ");
        let mut lines = Vec::new();
        lines.push(format!("F := FreeGroup( {gens} );;"));
        lines.push("AssignGeneratorVariables( F );;".to_string());
        lines.push("rels := [".to_string());
        let mut items: Vec<String> = Vec::new();
        for (l, r) in &self.relations {
            items.push(format!("  {} * ({})^-1", gap_word(l), gap_word(r)));
        }
        for w in &self.relators {
            items.push(format!("  {}", gap_word(w)));
        }
        lines.push(items.join(",\n"));
        lines.push("];;".to_string());
        lines.push("G := F / rels;;".to_string());
        lines.join("\n")
    }
}

fn gap_word(w: &Word) -> String {
    if w.is_empty() {
        "One(F)".to_string()
    } else {
        w.to_string()
    }
}

/// Artin presentation of a diagram: braid relation per edge, commuting
/// relation per non-edge, in lexicographic order over vertex pairs `i < j`.
pub fn artin_presentation(d: &Diagram) -> Presentation {
    let n = d.n();
    let mut relations = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let gi = Word::generator(d.generator(i));
            let gj = Word::generator(d.generator(j));
            if d.has_edge(i, j) {
                relations.push((
                    Word::product([&gi, &gj, &gi]),
                    Word::product([&gj, &gi, &gj]),
                ));
            } else {
                relations.push((gi.concat(&gj), gj.concat(&gi)));
            }
        }
    }
    Presentation {
        generators: d.generators(),
        relations,
        relators: Vec::new(),
    }
}

/// Coxeter presentation: the Artin presentation plus a relator `g²` per
/// generator.
pub fn coxeter_presentation(d: &Diagram) -> Presentation {
    let mut p = artin_presentation(d);
    for g in d.generators() {
        let gw = Word::generator(g);
        p.relators.push(gw.concat(&gw));
    }
    p
}

/// Selector for the studied one-relator quotients.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Quotient {
    /// The plain Artin group.
    None,
    /// Kill the cycle commutator.
    Cycle,
    /// Kill the `t`-twisted cycle commutator.
    Twisted(u32),
}

/// Generator words `g_1..g_n` of a diagram, in vertex order.
fn generator_words(d: &Diagram) -> Vec<Word> {
    d.generators().into_iter().map(Word::generator).collect()
}

/// `A(ngon(n))` with an optional relator: `Quotient::Cycle` kills
/// `cc(a_1..a_n)`; `Quotient::Twisted(t)` (with `1 <= t <= n−2`) kills
/// `tc_t(a_1..a_n)`.
pub fn ngon_presentation(n: u32, q: Quotient) -> Result<Presentation, DiagramError> {
    let d = diagram_ngon(n)?;
    let base = artin_presentation(&d);
    let ys = generator_words(&d);
    match q {
        Quotient::None => Ok(base),
        Quotient::Cycle => base.with_relators(vec![cycle_commutator(&ys)?]),
        Quotient::Twisted(t) => {
            base.with_relators(vec![twisted_cycle_commutator(&ys, t as usize)?])
        }
    }
}

/// `A(delta(n,t))` with an optional relator over the square generators
/// `b_1..b_4`: `Quotient::Cycle` kills `cc(b_1..b_4)`; `Quotient::Twisted(s)`
/// (with `s ∈ {1,2}`; the studied group uses `s = 1`) kills `tc_s(b_1..b_4)`.
pub fn delta_presentation(n: u32, t: u32, q: Quotient) -> Result<Presentation, DiagramError> {
    let d = diagram_delta(n, t)?;
    let base = artin_presentation(&d);
    let square: Vec<Word> = (1..=4).map(|i| Word::generator(Gen::new('b', i))).collect();
    match q {
        Quotient::None => Ok(base),
        Quotient::Cycle => base.with_relators(vec![cycle_commutator(&square)?]),
        Quotient::Twisted(s) => {
            base.with_relators(vec![twisted_cycle_commutator(&square, s as usize)?])
        }
    }
}

/// `A(dn(n))` (no quotients are studied on this side).
pub fn dn_presentation(n: u32) -> Result<Presentation, DiagramError> {
    Ok(artin_presentation(&diagram_dn(n)?))
}

/// Artin presentation of the path on `k` vertices.
pub fn chain_presentation(k: u32) -> Result<Presentation, DiagramError> {
    Ok(artin_presentation(&diagram_chain(k)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dn_edges() {
        let d = diagram_dn(6).unwrap();
        let expect = [(1, 3), (2, 3), (3, 4), (4, 5), (5, 6)];
        assert_eq!(d.edges().collect::<Vec<_>>(), expect);
        assert_eq!(d.generator(1), Gen::new('x', 1));
        assert!(diagram_dn(3).is_err());
    }

    #[test]
    fn ngon_edges() {
        let d = diagram_ngon(5).unwrap();
        let expect = [(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)];
        assert_eq!(d.edges().collect::<Vec<_>>(), expect);
    }

    #[test]
    fn delta_edges_and_names() {
        // n=7, t=2: r=2, s=1. Square 1-2-3-4, arm 5,6 at vertex 1, arm 7 at 3.
        let d = diagram_delta(7, 2).unwrap();
        let expect = [(1, 2), (1, 4), (1, 5), (2, 3), (3, 4), (3, 7), (5, 6)];
        assert_eq!(d.edges().collect::<Vec<_>>(), expect);
        assert_eq!(d.edge_count(), 7); // always n edges
        let names: Vec<String> = d.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["b1", "b2", "b3", "b4", "b5", "b6", "c7"]);
        // t=1: no c generators.
        let d1 = diagram_delta(7, 1).unwrap();
        let names1: Vec<String> = d1.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(names1, ["b1", "b2", "b3", "b4", "b5", "b6", "b7"]);
        // t=n-3: no b-arm, all-c arm at vertex 3.
        let d4 = diagram_delta(7, 4).unwrap();
        let names4: Vec<String> = d4.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(names4, ["b1", "b2", "b3", "b4", "c5", "c6", "c7"]);
        assert!(diagram_delta(7, 0).is_err());
        assert!(diagram_delta(7, 5).is_err());
        // n=4: only the square.
        let d40 = diagram_delta(4, 1).unwrap();
        assert_eq!(d40.edge_count(), 4);
    }

    #[test]
    fn delta_edge_count_is_n_for_all_params() {
        for n in 4..=12 {
            for t in 1..=n - 3 {
                let d = diagram_delta(n, t).unwrap();
                assert_eq!(d.edge_count() as u32, n, "n={n} t={t}");
                assert_eq!(d.generators().len() as u32, n);
            }
        }
    }

    #[test]
    fn artin_relation_counts() {
        for n in [4u32, 6, 9] {
            let p = artin_presentation(&diagram_ngon(n).unwrap());
            assert_eq!(p.relations.len() as u32, n * (n - 1) / 2);
            assert!(p.relators.is_empty());
            p.check_declared().unwrap();
        }
    }

    #[test]
    fn braid_and_commuting_shapes() {
        let p = artin_presentation(&diagram_ngon(4).unwrap());
        // first relation is the edge {1,2}: braid
        let (l, r) = &p.relations[0];
        assert_eq!(l.to_string(), "a1*a2*a1");
        assert_eq!(r.to_string(), "a2*a1*a2");
        // relation for {1,3}: commuting
        let (l, r) = &p.relations[1];
        assert_eq!(l.to_string(), "a1*a3");
        assert_eq!(r.to_string(), "a3*a1");
    }

    #[test]
    fn quotient_relators() {
        let p = ngon_presentation(5, Quotient::Cycle).unwrap();
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0].len(), 16);
        let p = ngon_presentation(5, Quotient::Twisted(2)).unwrap();
        assert_eq!(p.relators[0].len(), 16);
        assert!(ngon_presentation(5, Quotient::Twisted(4)).is_err());
        let p = delta_presentation(7, 2, Quotient::Twisted(1)).unwrap();
        assert_eq!(p.relators.len(), 1);
        for g in p.relators[0].support() {
            assert_eq!(g.base(), 'b');
            assert!(g.index() <= 4);
        }
    }

    #[test]
    fn json_roundtrip() {
        let p = ngon_presentation(6, Quotient::Twisted(2)).unwrap();
        let v = p.to_json();
        let q = Presentation::from_json(&v).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn gap_export_mentions_everything() {
        let p = ngon_presentation(4, Quotient::Cycle).unwrap();
        let text = p.to_gap();
        assert!(text.contains("FreeGroup( \"a1\", \"a2\", \"a3\", \"a4\" )"));
        assert!(text.contains("a1*a2*a1 * (a2*a1*a2)^-1"));
        assert!(text.contains("G := F / rels;;"));
    }

    #[test]
    fn coxeter_adds_involutions() {
        let p = coxeter_presentation(&diagram_ngon(4).unwrap());
        assert_eq!(p.relators.len(), 4);
        assert_eq!(p.relators[0].to_string(), "a1^2");
    }
}
