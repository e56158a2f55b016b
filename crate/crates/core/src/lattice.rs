//! The easterly-wind order on reduced forests.
//!
//! A cover move detaches the subterm rooted at some internal node and grafts
//! it onto the rightmost leaf of its immediate left brother. The brother is
//! either the previous child of the same parent (possibly a bare leaf) or the
//! previous term of the forest. Moves keep the degree and the preorder word of
//! decorations, so the forests sharing a decoration word form a finite poset.
//!
//! ```
//! use nhopf::lattice::EasterlyWind;
//! use nhopf::Signature;
//!
//! let wind = EasterlyWind::new(Signature::parse_inline("a:1,b:2,c:3").unwrap()).unwrap();
//! let interval = wind.interval(&["c", "a", "b"]).unwrap();
//! assert_eq!(interval.len(), 11);
//! assert_eq!(interval.cover_pairs().len(), 14);
//! ```

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde_json::json;

use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::term::{Forest, NodeId, Term};
use crate::word::Word;

/// Where a cover move sends the detached subterm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveTarget {
    /// The moved node was the `slot`-th child (`slot ≥ 2`) of `parent`.
    WithinTerm { parent: NodeId, slot: usize },
    /// The moved node was the root of term `term + 1` (1-based), grafted onto term `term`.
    BetweenTerms { term: usize },
}

/// One elementary step `source ⇀ result`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverMove {
    pub source: Forest,
    pub moved_node: NodeId,
    pub target: MoveTarget,
    pub result: Forest,
}

fn subterm<'a>(t: &'a Term, path: &[usize]) -> &'a Term {
    path.iter().fold(t, |t, &i| &t.children()[i])
}

fn replace_at(t: &Term, path: &[usize], new: Term) -> Term {
    match path.split_first() {
        None => new,
        Some((&i, rest)) => {
            let mut children = t.children().to_vec();
            children[i] = replace_at(&children[i], rest, new);
            Term::node(t.label().expect("path runs through internal nodes").clone(), children)
        }
    }
}

/// Paths (relative to `t`) of the internal nodes on the last-child chain.
fn rightmost_chain(t: &Term) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut cur = t;
    while !cur.is_leaf() {
        out.push(path.clone());
        match cur.children().len() {
            0 => break,
            n => {
                path.push(n - 1);
                cur = &cur.children()[n - 1];
            }
        }
    }
    out
}

/// Visits every internal node of `t` with its path and 0-based preorder position.
fn for_each_node(t: &Term, f: &mut dyn FnMut(&[usize], usize)) {
    fn go(t: &Term, path: &mut Vec<usize>, pos: &mut usize, f: &mut dyn FnMut(&[usize], usize)) {
        if t.is_leaf() {
            return;
        }
        f(path, *pos);
        *pos += 1;
        for (i, c) in t.children().iter().enumerate() {
            path.push(i);
            go(c, path, pos, f);
            path.pop();
        }
    }
    go(t, &mut Vec::new(), &mut 0, f);
}

fn preorder_position(t: &Term, path: &[usize]) -> usize {
    let mut pos = 0;
    let mut cur = t;
    for &i in path {
        pos += 1 + cur.children()[..i].iter().map(Term::degree).sum::<usize>();
        cur = &cur.children()[i];
    }
    pos
}

fn with_term(f: &Forest, k: usize, t: Term) -> Forest {
    let mut terms = f.letters().to_vec();
    terms[k] = t;
    Word::new(terms)
}

/// The easterly-wind order over a positive signature.
#[derive(Debug, Clone)]
pub struct EasterlyWind {
    sig: Signature,
}

impl EasterlyWind {
    pub fn new(sig: Signature) -> Result<Self> {
        sig.require_positive("the easterly-wind order")?;
        Ok(EasterlyWind { sig })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    fn check(&self, f: &Forest) -> Result<()> {
        f.check(&self.sig)?;
        if !f.is_reduced() {
            return Err(Error::domain(format!("forest `{f}` is not reduced")));
        }
        Ok(())
    }

    pub fn cover_moves(&self, f: &Forest) -> Result<Vec<CoverMove>> {
        self.check(f)?;
        Ok(cover_moves_unchecked(f))
    }

    /// Upper covers, sorted and deduplicated.
    pub fn covers(&self, f: &Forest) -> Result<Vec<Forest>> {
        self.check(f)?;
        Ok(covers_unchecked(f))
    }

    /// Lower covers: all `g` with `g ⇀ f`, sorted.
    pub fn lower_covers(&self, f: &Forest) -> Result<Vec<Forest>> {
        self.check(f)?;
        Ok(lower_covers_unchecked(f))
    }

    pub fn less_equal(&self, f: &Forest, g: &Forest) -> Result<bool> {
        self.check(f)?;
        self.check(g)?;
        if f.degree() != g.degree() || f.preorder_decorations() != g.preorder_decorations() {
            return Ok(false);
        }
        Ok(reachable(f, covers_unchecked).contains(g))
    }

    /// All `g` with `f ≼ g`.
    pub fn up_set(&self, f: &Forest) -> Result<FinitePoset> {
        self.check(f)?;
        Ok(FinitePoset::from_set(reachable(f, covers_unchecked)))
    }

    /// All `g` with `g ≼ f`.
    pub fn down_set(&self, f: &Forest) -> Result<FinitePoset> {
        self.check(f)?;
        Ok(FinitePoset::from_set(reachable(f, lower_covers_unchecked)))
    }

    /// Möbius function of the global order.
    pub fn moebius(&self, f: &Forest, g: &Forest) -> Result<i64> {
        let up = self.up_set(f)?;
        self.check(g)?;
        let j = up
            .index_of(g)
            .ok_or_else(|| Error::domain(format!("`{f}` is not below `{g}`")))?;
        Ok(up.moebius_from(0)[j])
    }

    fn letters(&self, word: &[&str]) -> Result<Vec<Arc<str>>> {
        if word.is_empty() {
            return Err(Error::domain("the interval of the empty word is not defined"));
        }
        word.iter()
            .map(|x| {
                self.sig
                    .name_handle(x)
                    .ok_or_else(|| Error::UnknownGenerator((*x).to_string()))
            })
            .collect()
    }

    /// The forest of single-node terms `ι(w_1) … ι(w_ℓ)`.
    pub fn f_min(&self, word: &[&str]) -> Result<Forest> {
        let names = self.letters(word)?;
        Ok(names
            .iter()
            .map(|x| Term::corolla(self.sig.get(x).expect("validated")))
            .collect())
    }

    /// The single term `ι(w_1) ∘_1 … ∘_1 ι(w_ℓ)`.
    pub fn f_max(&self, word: &[&str]) -> Result<Forest> {
        let names = self.letters(word)?;
        let mut acc: Option<Term> = None;
        for x in names.iter().rev() {
            let g = Term::corolla(self.sig.get(x).expect("validated"));
            acc = Some(match acc {
                None => g,
                Some(inner) => g.partial_compose(1, &inner)?,
            });
        }
        Ok(Word::single(acc.expect("nonempty word")))
    }

    /// All reduced forests whose preorder decoration word is `word`.
    pub fn word_class(&self, word: &[&str]) -> Result<Vec<Forest>> {
        let names = self.letters(word)?;
        let arities: Vec<usize> = names.iter().map(|x| self.sig.arity(x).expect("validated")).collect();
        let mut out = Vec::new();
        forests_from(&names, &arities, 0, &mut Vec::new(), &mut out);
        out.sort();
        Ok(out)
    }

    pub fn interval(&self, word: &[&str]) -> Result<Interval> {
        let bottom = self.f_min(word)?;
        let top = self.f_max(word)?;
        let up = reachable(&bottom, covers_unchecked);
        let down = reachable(&top, lower_covers_unchecked);
        let elements: BTreeSet<Forest> = up.intersection(&down).cloned().collect();
        let word_class_size = self.word_class(word)?.len();
        Ok(Interval {
            word: self.letters(word)?,
            poset: FinitePoset::from_set(elements),
            bottom,
            top,
            word_class_size,
        })
    }
}

/// Terms starting at letter `pos`, together with the position after them.
fn terms_from(names: &[Arc<str>], arities: &[usize], pos: usize) -> Vec<(Term, usize)> {
    fn fill(
        names: &[Arc<str>],
        arities: &[usize],
        pos: usize,
        remaining: usize,
        acc: &mut Vec<Term>,
        label: &Arc<str>,
        out: &mut Vec<(Term, usize)>,
    ) {
        if remaining == 0 {
            out.push((Term::node(label.clone(), acc.clone()), pos));
            return;
        }
        acc.push(Term::Leaf);
        fill(names, arities, pos, remaining - 1, acc, label, out);
        acc.pop();
        if pos < names.len() {
            for (t, next) in terms_from(names, arities, pos) {
                acc.push(t);
                fill(names, arities, next, remaining - 1, acc, label, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    fill(names, arities, pos + 1, arities[pos], &mut Vec::new(), &names[pos], &mut out);
    out
}

fn forests_from(
    names: &[Arc<str>],
    arities: &[usize],
    pos: usize,
    acc: &mut Vec<Term>,
    out: &mut Vec<Forest>,
) {
    if pos == names.len() {
        out.push(Word::new(acc.clone()));
        return;
    }
    for (t, next) in terms_from(names, arities, pos) {
        acc.push(t);
        forests_from(names, arities, next, acc, out);
        acc.pop();
    }
}

fn cover_moves_unchecked(f: &Forest) -> Vec<CoverMove> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (k, t) in f.iter().enumerate() {
        for_each_node(t, &mut |path, pos| {
            let Some((&j, parent)) = path.split_last() else {
                return;
            };
            if j == 0 {
                return;
            }
            let moved = subterm(t, path).clone();
            let brother = subterm(t, parent).children()[j - 1].clone();
            let Some(grafted) = brother.graft_rightmost(&moved) else {
                return;
            };
            let parent_term = subterm(t, parent);
            let mut children = parent_term.children().to_vec();
            children[j - 1] = grafted;
            children[j] = Term::Leaf;
            let new_parent = Term::node(parent_term.label().expect("internal").clone(), children);
            out.push(CoverMove {
                source: f.clone(),
                moved_node: NodeId(offset + pos + 1),
                target: MoveTarget::WithinTerm {
                    parent: NodeId(offset + preorder_position(t, parent) + 1),
                    slot: j + 1,
                },
                result: with_term(f, k, replace_at(t, parent, new_parent)),
            });
        });
        if k > 0 {
            if let Some(grafted) = f.letters()[k - 1].graft_rightmost(t) {
                let mut terms = f.letters().to_vec();
                terms[k - 1] = grafted;
                terms.remove(k);
                out.push(CoverMove {
                    source: f.clone(),
                    moved_node: NodeId(offset + 1),
                    target: MoveTarget::BetweenTerms { term: k },
                    result: Word::new(terms),
                });
            }
        }
        offset += t.degree();
    }
    out
}

fn covers_unchecked(f: &Forest) -> Vec<Forest> {
    let set: BTreeSet<Forest> = cover_moves_unchecked(f).into_iter().map(|m| m.result).collect();
    set.into_iter().collect()
}

fn lower_covers_unchecked(f: &Forest) -> Vec<Forest> {
    let mut set = BTreeSet::new();
    for (k, t) in f.iter().enumerate() {
        // Undo a within-term move: a subterm on the last-child chain of child j
        // goes back to slot j + 1, which must currently be a leaf.
        for_each_node(t, &mut |path, _| {
            let node = subterm(t, path);
            let ch = node.children();
            for j in 0..ch.len().saturating_sub(1) {
                if !ch[j + 1].is_leaf() {
                    continue;
                }
                for r in rightmost_chain(&ch[j]) {
                    let moved = subterm(&ch[j], &r).clone();
                    let mut children = ch.to_vec();
                    children[j] = replace_at(&ch[j], &r, Term::Leaf);
                    children[j + 1] = moved;
                    let new_node = Term::node(node.label().expect("internal").clone(), children);
                    set.insert(with_term(f, k, replace_at(t, path, new_node)));
                }
            }
        });
        // Undo a between-terms move: split off a non-root subterm of the chain.
        for r in rightmost_chain(t).into_iter().skip(1) {
            let moved = subterm(t, &r).clone();
            let mut terms = f.letters().to_vec();
            terms[k] = replace_at(t, &r, Term::Leaf);
            terms.insert(k + 1, moved);
            set.insert(Word::new(terms));
        }
    }
    set.into_iter().collect()
}

fn reachable(start: &Forest, step: fn(&Forest) -> Vec<Forest>) -> BTreeSet<Forest> {
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(f) = queue.pop_front() {
        for g in step(&f) {
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    seen
}

/// A finite, convex piece of the easterly-wind order with its reachability
/// relation materialized.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    elements: Vec<Forest>,
    index: HashMap<Forest, usize>,
    covers: Vec<Vec<usize>>,
    above: Vec<FixedBitSet>,
    linear: Vec<usize>,
}

impl FinitePoset {
    fn from_set(set: BTreeSet<Forest>) -> Self {
        let elements: Vec<Forest> = set.into_iter().collect();
        let n = elements.len();
        let index: HashMap<Forest, usize> =
            elements.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        let covers: Vec<Vec<usize>> = elements
            .iter()
            .map(|f| covers_unchecked(f).iter().filter_map(|g| index.get(g).copied()).collect())
            .collect();

        let mut above: Vec<Option<FixedBitSet>> = vec![None; n];
        fn close(i: usize, covers: &[Vec<usize>], above: &mut [Option<FixedBitSet>], n: usize) {
            if above[i].is_some() {
                return;
            }
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(i);
            for &c in &covers[i] {
                close(c, covers, above, n);
                set.union_with(above[c].as_ref().expect("closed"));
            }
            above[i] = Some(set);
        }
        for i in 0..n {
            close(i, &covers, &mut above, n);
        }
        let above: Vec<FixedBitSet> = above.into_iter().map(|s| s.expect("closed")).collect();

        // Larger up-sets come first in any linear extension.
        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&i| std::cmp::Reverse(above[i].count_ones(..)));

        FinitePoset {
            elements,
            index,
            covers,
            above,
            linear,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in canonical (serialization) order.
    pub fn elements(&self) -> &[Forest] {
        &self.elements
    }

    pub fn index_of(&self, f: &Forest) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// Index pairs `(i, j)` with `elements[i] ⇀ elements[j]`, sorted.
    pub fn cover_index_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .covers
            .iter()
            .enumerate()
            .flat_map(|(i, cs)| cs.iter().map(move |&j| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let mut common = self.above[i].clone();
        common.intersect_with(&self.above[j]);
        common.ones().find(|&u| common.is_subset(&self.above[u]))
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&k| self.leq(k, i) && self.leq(k, j)).collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&k| self.leq(k, m)))
    }

    /// `μ(i, j)` for every `j` (zero when `i ⋠ j`).
    pub fn moebius_from(&self, i: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        for &j in &self.linear {
            if !self.leq(i, j) {
                continue;
            }
            mu[j] = if j == i {
                1
            } else {
                -(0..self.len())
                    .filter(|&k| k != j && self.leq(i, k) && self.leq(k, j))
                    .map(|k| mu[k])
                    .sum::<i64>()
            };
        }
        mu
    }

    /// `μ(i, j)` for every `i` (zero when `i ⋠ j`).
    pub fn moebius_to(&self, j: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        for &i in self.linear.iter().rev() {
            if !self.leq(i, j) {
                continue;
            }
            mu[i] = if i == j {
                1
            } else {
                -(0..self.len())
                    .filter(|&k| k != i && self.leq(i, k) && self.leq(k, j))
                    .map(|k| mu[k])
                    .sum::<i64>()
            };
        }
        mu
    }
}

/// Hasse diagram output formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HasseFormat {
    Dot,
    Json,
}

impl std::str::FromStr for HasseFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(HasseFormat::Dot),
            "json" => Ok(HasseFormat::Json),
            other => Err(Error::domain(format!("unknown Hasse format `{other}`"))),
        }
    }
}

/// The interval `[f_min, f_max]` of a generator word.
#[derive(Debug, Clone)]
pub struct Interval {
    word: Vec<Arc<str>>,
    poset: FinitePoset,
    bottom: Forest,
    top: Forest,
    word_class_size: usize,
}

impl Interval {
    pub fn word(&self) -> &[Arc<str>] {
        &self.word
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn elements(&self) -> &[Forest] {
        self.poset.elements()
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn bottom(&self) -> &Forest {
        &self.bottom
    }

    pub fn top(&self) -> &Forest {
        &self.top
    }

    /// Number of reduced forests with this decoration word, whether or not
    /// they lie in the interval.
    pub fn word_class_size(&self) -> usize {
        self.word_class_size
    }

    pub fn contains(&self, f: &Forest) -> bool {
        self.poset.index_of(f).is_some()
    }

    pub fn cover_pairs(&self) -> Vec<(Forest, Forest)> {
        let e = self.elements();
        self.poset
            .cover_index_pairs()
            .into_iter()
            .map(|(i, j)| (e[i].clone(), e[j].clone()))
            .collect()
    }

    fn idx(&self, f: &Forest) -> Result<usize> {
        self.poset
            .index_of(f)
            .ok_or_else(|| Error::domain(format!("`{f}` is not in the interval")))
    }

    pub fn less_equal(&self, f: &Forest, g: &Forest) -> Result<bool> {
        Ok(self.poset.leq(self.idx(f)?, self.idx(g)?))
    }

    pub fn join(&self, f: &Forest, g: &Forest) -> Result<Forest> {
        let k = self
            .poset
            .join(self.idx(f)?, self.idx(g)?)
            .ok_or_else(|| Error::domain(format!("`{f}` and `{g}` have no join")))?;
        Ok(self.elements()[k].clone())
    }

    pub fn meet(&self, f: &Forest, g: &Forest) -> Result<Forest> {
        let k = self
            .poset
            .meet(self.idx(f)?, self.idx(g)?)
            .ok_or_else(|| Error::domain(format!("`{f}` and `{g}` have no meet")))?;
        Ok(self.elements()[k].clone())
    }

    pub fn moebius(&self, f: &Forest, g: &Forest) -> Result<i64> {
        let (i, j) = (self.idx(f)?, self.idx(g)?);
        if !self.poset.leq(i, j) {
            return Err(Error::domain(format!("`{f}` is not below `{g}`")));
        }
        Ok(self.poset.moebius_from(i)[j])
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("// format_version 1\ndigraph hasse {\n");
        for f in self.elements() {
            out.push_str(&format!("  \"{f}\";\n"));
        }
        for (f, g) in self.cover_pairs() {
            out.push_str(&format!("  \"{f}\" -> \"{g}\";\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "format_version": 1,
            "word": self.word.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "bottom": self.bottom.to_string(),
            "top": self.top.to_string(),
            "word_class_size": self.word_class_size,
            "vertices": self.elements().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "edges": self.cover_pairs().iter()
                .map(|(f, g)| [f.to_string(), g.to_string()])
                .collect::<Vec<_>>(),
        })
    }

    pub fn hasse_export(&self, format: HasseFormat) -> String {
        match format {
            HasseFormat::Dot => self.to_dot(),
            HasseFormat::Json => {
                serde_json::to_string_pretty(&self.to_json()).expect("json values serialize")
            }
        }
    }
}
