//! Planar decorated terms, forests and the free operad composition.
//!
//! A [`Term`] is either the leaf `*` or a node `g[t1,...,tn]` whose decoration
//! `g` is a generator of arity `n`. A [`Forest`] is a word of terms. The text
//! form used everywhere (parsing, printing, ordering) is
//!
//! ```text
//! c[a[*],*,b[a[*],*]] b[*,b[a[*],*]]
//! ```
//!
//! Generators of arity 0 print as a bare name.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::signature::{valid_name, Generator, Signature};
use crate::word::Word;

/// A word of terms.
pub type Forest = Word<Term>;

#[derive(Clone)]
pub enum Term {
    Leaf,
    Node(Arc<Node>),
}

pub struct Node {
    label: Arc<str>,
    children: Vec<Term>,
    degree: usize,
    arity: usize,
}

/// 1-based position of an internal node in the left-to-right preorder
/// traversal of a forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An internal node of a forest, as seen from the preorder numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeInfo {
    pub id: NodeId,
    pub label: Arc<str>,
    /// Parent node and the 1-based slot this node occupies under it.
    pub parent: Option<(NodeId, usize)>,
    /// Index (0-based) of the term of the forest containing this node.
    pub term: usize,
}

/// An edge `parent ->^slot child` between internal nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub parent: NodeId,
    pub slot: usize,
    pub child: NodeId,
}

impl Term {
    pub fn leaf() -> Term {
        Term::Leaf
    }

    /// Builds a node without checking the children count against a signature.
    pub fn node(label: impl Into<Arc<str>>, children: Vec<Term>) -> Term {
        let degree = 1 + children.iter().map(Term::degree).sum::<usize>();
        let arity = children.iter().map(Term::arity).sum();
        Term::Node(Arc::new(Node {
            label: label.into(),
            children,
            degree,
            arity,
        }))
    }

    /// The single-node term of a generator, all of whose children are leaves.
    pub fn corolla(g: &Generator) -> Term {
        Term::node(g.name.clone(), vec![Term::Leaf; g.arity])
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Term::Leaf)
    }

    pub fn label(&self) -> Option<&Arc<str>> {
        match self {
            Term::Leaf => None,
            Term::Node(n) => Some(&n.label),
        }
    }

    pub fn children(&self) -> &[Term] {
        match self {
            Term::Leaf => &[],
            Term::Node(n) => &n.children,
        }
    }

    /// Number of internal nodes.
    pub fn degree(&self) -> usize {
        match self {
            Term::Leaf => 0,
            Term::Node(n) => n.degree,
        }
    }

    /// Number of leaves.
    pub fn arity(&self) -> usize {
        match self {
            Term::Leaf => 1,
            Term::Node(n) => n.arity,
        }
    }

    pub fn parse(text: &str) -> Result<Term> {
        Parser::new(text, None).whole_term()
    }

    pub fn parse_with(text: &str, sig: &Signature) -> Result<Term> {
        Parser::new(text, Some(sig)).whole_term()
    }

    /// Grafts `args[k]` onto the `k`-th leaf of `self`.
    pub fn full_compose(&self, args: &[Term]) -> Result<Term> {
        if args.len() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                found: args.len(),
            });
        }
        let mut it = args.iter();
        Ok(self.substitute_leaves(&mut |_| it.next().cloned().unwrap_or(Term::Leaf)))
    }

    /// Grafts `s` onto the `i`-th (1-based) leaf of `self`.
    pub fn partial_compose(&self, i: usize, s: &Term) -> Result<Term> {
        let n = self.arity();
        if i == 0 || i > n {
            return Err(Error::OutOfRange { index: i, max: n });
        }
        let mut k = 0;
        Ok(self.substitute_leaves(&mut |_| {
            k += 1;
            if k == i {
                s.clone()
            } else {
                Term::Leaf
            }
        }))
    }

    /// Replaces each leaf, in left-to-right order, by the next output of `f`.
    pub(crate) fn substitute_leaves(&self, f: &mut dyn FnMut(usize) -> Term) -> Term {
        fn go(t: &Term, f: &mut dyn FnMut(usize) -> Term, counter: &mut usize) -> Term {
            match t {
                Term::Leaf => {
                    let k = *counter;
                    *counter += 1;
                    f(k)
                }
                Term::Node(n) => {
                    if n.arity == 0 {
                        return t.clone();
                    }
                    let children = n.children.iter().map(|c| go(c, f, counter)).collect();
                    Term::node(n.label.clone(), children)
                }
            }
        }
        let mut counter = 0;
        go(self, f, &mut counter)
    }

    /// Grafts `s` onto the rightmost leaf. Returns `None` when the term has no
    /// leaf at all.
    pub fn graft_rightmost(&self, s: &Term) -> Option<Term> {
        match self {
            Term::Leaf => Some(s.clone()),
            Term::Node(n) => {
                let last = n.children.last()?;
                let grafted = last.graft_rightmost(s)?;
                let mut children = n.children.clone();
                *children.last_mut().unwrap() = grafted;
                Some(Term::node(n.label.clone(), children))
            }
        }
    }

    /// Decorations in preorder.
    pub fn preorder_labels(&self) -> Vec<Arc<str>> {
        let mut out = Vec::with_capacity(self.degree());
        fn go(t: &Term, out: &mut Vec<Arc<str>>) {
            if let Term::Node(n) = t {
                out.push(n.label.clone());
                for c in &n.children {
                    go(c, out);
                }
            }
        }
        go(self, &mut out);
        out
    }

    fn chars(&self) -> Chars<'_> {
        Chars {
            stack: vec![Item::Term(self)],
        }
    }
}

enum Item<'a> {
    Term(&'a Term),
    Char(char),
    Str(std::str::Chars<'a>),
}

/// Streams the canonical serialization without allocating a string.
struct Chars<'a> {
    stack: Vec<Item<'a>>,
}

impl Iterator for Chars<'_> {
    type Item = char;

    fn next(&mut self) -> Option<char> {
        loop {
            match self.stack.pop()? {
                Item::Char(c) => return Some(c),
                Item::Str(mut it) => {
                    if let Some(c) = it.next() {
                        self.stack.push(Item::Str(it));
                        return Some(c);
                    }
                }
                Item::Term(Term::Leaf) => return Some('*'),
                Item::Term(Term::Node(n)) => {
                    if !n.children.is_empty() {
                        self.stack.push(Item::Char(']'));
                        for (i, c) in n.children.iter().enumerate().rev() {
                            self.stack.push(Item::Term(c));
                            if i > 0 {
                                self.stack.push(Item::Char(','));
                            }
                        }
                        self.stack.push(Item::Char('['));
                    }
                    self.stack.push(Item::Str(n.label.chars()));
                }
            }
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Term::Leaf, Term::Leaf) => true,
            (Term::Node(a), Term::Node(b)) => {
                Arc::ptr_eq(a, b)
                    || (a.degree == b.degree
                        && a.arity == b.arity
                        && a.label == b.label
                        && a.children == b.children)
            }
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Term::Leaf => state.write_u8(0),
            Term::Node(n) => {
                state.write_u8(1);
                n.label.hash(state);
                n.children.hash(state);
            }
        }
    }
}

/// Lexicographic order of the canonical serializations.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Term::Node(a), Term::Node(b)) = (self, other) {
            if Arc::ptr_eq(a, b) {
                return Ordering::Equal;
            }
        }
        self.chars().cmp(other.chars())
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use fmt::Write;
        for c in self.chars() {
            f.write_char(c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

impl Forest {
    pub fn parse(text: &str) -> Result<Forest> {
        Parser::new(text, None).forest()
    }

    pub fn parse_with(text: &str, sig: &Signature) -> Result<Forest> {
        Parser::new(text, Some(sig)).forest()
    }

    pub fn degree(&self) -> usize {
        self.iter().map(Term::degree).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.iter().all(|t| !t.is_leaf())
    }

    /// Removes every bare-leaf term.
    pub fn reduce(&self) -> Forest {
        self.iter().filter(|t| !t.is_leaf()).cloned().collect()
    }

    pub fn preorder_decorations(&self) -> Vec<Arc<str>> {
        self.iter().flat_map(Term::preorder_labels).collect()
    }

    /// Internal nodes in preorder, with their parents.
    pub fn nodes(&self) -> Vec<NodeInfo> {
        fn go(
            t: &Term,
            parent: Option<(NodeId, usize)>,
            term: usize,
            out: &mut Vec<NodeInfo>,
        ) {
            if let Term::Node(n) = t {
                let id = NodeId(out.len() + 1);
                out.push(NodeInfo {
                    id,
                    label: n.label.clone(),
                    parent,
                    term,
                });
                for (j, c) in n.children.iter().enumerate() {
                    go(c, Some((id, j + 1)), term, out);
                }
            }
        }
        let mut out = Vec::with_capacity(self.degree());
        for (k, t) in self.iter().enumerate() {
            go(t, None, k, &mut out);
        }
        out
    }

    /// All edges between internal nodes, ordered by child.
    pub fn edges(&self) -> Vec<Edge> {
        self.nodes()
            .into_iter()
            .filter_map(|n| {
                n.parent.map(|(parent, slot)| Edge {
                    parent,
                    slot,
                    child: n.id,
                })
            })
            .collect()
    }

    /// Validates decorations and child counts against `sig`.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        fn go(t: &Term, sig: &Signature) -> Result<()> {
            if let Term::Node(n) = t {
                let arity = sig
                    .arity(&n.label)
                    .ok_or_else(|| Error::UnknownGenerator(n.label.to_string()))?;
                if arity != n.children.len() {
                    return Err(Error::Arity {
                        expected: arity,
                        found: n.children.len(),
                    });
                }
                for c in &n.children {
                    go(c, sig)?;
                }
            }
            Ok(())
        }
        self.iter().try_for_each(|t| go(t, sig))
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    sig: Option<&'a Signature>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: Option<&'a Signature>) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            sig,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(Error::parse(self.column(), format!("expected `{c}`, found `{d}`"))),
            None => Err(Error::parse(self.column(), format!("expected `{c}`, found end of input"))),
        }
    }

    fn whole_term(&mut self) -> Result<Term> {
        self.skip_ws();
        let t = self.term()?;
        self.skip_ws();
        if let Some(c) = self.peek() {
            return Err(Error::parse(self.column(), format!("unexpected `{c}`")));
        }
        Ok(t)
    }

    fn forest(&mut self) -> Result<Forest> {
        self.skip_ws();
        if self.peek() == Some('ε') {
            self.pos += 1;
            self.skip_ws();
            if let Some(c) = self.peek() {
                return Err(Error::parse(self.column(), format!("unexpected `{c}`")));
            }
            return Ok(Forest::empty());
        }
        let mut terms = Vec::new();
        while self.peek().is_some() {
            terms.push(self.term()?);
            let before = self.pos;
            self.skip_ws();
            if self.peek().is_some() && self.pos == before {
                let c = self.peek().unwrap();
                return Err(Error::parse(self.column(), format!("unexpected `{c}`")));
            }
        }
        Ok(Word(terms))
    }

    fn term(&mut self) -> Result<Term> {
        let start = self.column();
        match self.peek() {
            None => Err(Error::parse(start, "expected a term, found end of input")),
            Some('*') => {
                self.pos += 1;
                Ok(Term::Leaf)
            }
            Some(c) if valid_name(&c.to_string()) => {
                let mut name = String::new();
                while let Some(c) = self.peek().filter(|c| valid_name(&c.to_string())) {
                    name.push(c);
                    self.pos += 1;
                }
                let mut children = Vec::new();
                if self.peek() == Some('[') {
                    self.pos += 1;
                    if self.peek() == Some(']') {
                        self.pos += 1;
                    } else {
                        loop {
                            children.push(self.term()?);
                            match self.peek() {
                                Some(',') => self.pos += 1,
                                Some(']') => {
                                    self.pos += 1;
                                    break;
                                }
                                _ => self.expect(']')?,
                            }
                        }
                    }
                }
                let label: Arc<str> = match self.sig {
                    Some(sig) => {
                        let arity = sig.arity(&name).ok_or_else(|| {
                            Error::parse(start, format!("unknown generator `{name}`"))
                        })?;
                        if arity != children.len() {
                            return Err(Error::parse(
                                start,
                                format!(
                                    "generator `{name}` has arity {arity} but {} children were given",
                                    children.len()
                                ),
                            ));
                        }
                        sig.name_handle(&name).unwrap()
                    }
                    None => Arc::from(name.as_str()),
                };
                Ok(Term::node(label, children))
            }
            Some(c) => Err(Error::parse(start, format!("unexpected `{c}`"))),
        }
    }
}

/// All terms of degree exactly `degree`, sorted by canonical serialization.
pub fn enumerate_terms(sig: &Signature, degree: usize) -> Vec<Term> {
    let mut table = terms_up_to(sig, degree);
    table.pop().unwrap_or_default()
}

/// `table[k]` = sorted terms of degree `k`, for `k <= degree`.
pub(crate) fn terms_up_to(sig: &Signature, degree: usize) -> Vec<Vec<Term>> {
    let mut table: Vec<Vec<Term>> = vec![vec![Term::Leaf]];
    for d in 1..=degree {
        let mut level = Vec::new();
        for g in sig.generators() {
            for parts in weak_compositions(d - 1, g.arity) {
                let choices: Vec<&[Term]> = parts.iter().map(|&k| table[k].as_slice()).collect();
                for_each_product(&choices, &mut |children| {
                    level.push(Term::node(g.name.clone(), children.to_vec()));
                });
            }
        }
        level.sort();
        table.push(level);
    }
    table
}

/// All reduced forests of degree exactly `degree`, sorted.
pub fn enumerate_reduced_forests(sig: &Signature, degree: usize) -> Vec<Forest> {
    let table = terms_up_to(sig, degree);
    let mut out = Vec::new();
    for parts in compositions(degree) {
        let choices: Vec<&[Term]> = parts.iter().map(|&k| table[k].as_slice()).collect();
        for_each_product(&choices, &mut |terms| out.push(Word(terms.to_vec())));
    }
    out.sort();
    out
}

/// Compositions of `n` into positive parts (one empty composition for 0).
pub(crate) fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Weak compositions of `n` into exactly `k` nonnegative parts.
pub(crate) fn weak_compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in weak_compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Calls `f` on every element of the cartesian product of `choices`.
pub(crate) fn for_each_product<T: Clone>(choices: &[&[T]], f: &mut dyn FnMut(&[T])) {
    fn go<T: Clone>(choices: &[&[T]], acc: &mut Vec<T>, f: &mut dyn FnMut(&[T])) {
        match choices.split_first() {
            None => f(acc),
            Some((first, rest)) => {
                for x in first.iter() {
                    acc.push(x.clone());
                    go(rest, acc, f);
                    acc.pop();
                }
            }
        }
    }
    go(choices, &mut Vec::with_capacity(choices.len()), f);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn se() -> Signature {
        Signature::parse_inline("a:1,b:2,c:3").unwrap()
    }

    fn t(s: &str) -> Term {
        Term::parse_with(s, &se()).unwrap()
    }

    fn f(s: &str) -> Forest {
        Forest::parse_with(s, &se()).unwrap()
    }

    const SEVEN_NODES: &str = "c[a[*],*,b[a[*],*]] b[*,b[a[*],*]]";

    #[test]
    fn full_compose_examples() {
        assert_eq!(Term::Leaf.full_compose(&[t("b[*,*]")]).unwrap(), t("b[*,*]"));
        assert_eq!(
            t("b[*,*]").full_compose(&[t("a[*]"), Term::Leaf]).unwrap(),
            t("b[a[*],*]")
        );
        assert_eq!(
            t("c[*,*,*]")
                .full_compose(&[t("a[*]"), Term::Leaf, t("b[*,*]")])
                .unwrap(),
            t("c[a[*],*,b[*,*]]")
        );
        assert_eq!(
            t("c[*,*,*]").full_compose(&[Term::Leaf]),
            Err(Error::Arity {
                expected: 3,
                found: 1
            })
        );
    }

    #[test]
    fn partial_compose_examples() {
        let c1 = t("c[*,*,*]").partial_compose(1, &t("a[*]")).unwrap();
        assert_eq!(c1, t("c[a[*],*,*]"));
        assert_eq!(c1.partial_compose(1, &t("b[*,*]")).unwrap(), t("c[a[b[*,*]],*,*]"));
        assert_eq!(t("a[*]").partial_compose(1, &t("a[*]")).unwrap(), t("a[a[*]]"));
        assert_eq!(
            t("a[*]").partial_compose(2, &t("a[*]")),
            Err(Error::OutOfRange { index: 2, max: 1 })
        );
        assert!(t("a[*]").partial_compose(0, &t("a[*]")).is_err());
    }

    #[test]
    fn reduce_examples() {
        let with_leaves = f(&format!("* {} * {}", "c[a[*],*,b[a[*],*]]", "b[*,b[a[*],*]]"));
        assert_eq!(with_leaves.reduce(), f(SEVEN_NODES));
        assert_eq!(Forest::empty().reduce(), Forest::empty());
        assert_eq!(f("a[*] b[*,*]").reduce(), f("a[*] b[*,*]"));
    }

    #[test]
    fn preorder_and_edges_of_seven_nodes() {
        let forest = f(SEVEN_NODES);
        assert_eq!(forest.degree(), 7);
        let word: Vec<String> = forest.preorder_decorations().iter().map(|s| s.to_string()).collect();
        assert_eq!(word, ["c", "a", "b", "a", "b", "b", "a"]);
        let edges = forest.edges();
        for (p, j, c) in [(1, 1, 2), (1, 3, 3), (5, 2, 6), (3, 1, 4), (6, 1, 7)] {
            assert!(edges.contains(&Edge {
                parent: NodeId(p),
                slot: j,
                child: NodeId(c)
            }));
        }
        assert_eq!(edges.len(), 5);
        assert!(f("a[*]").edges().is_empty());
        assert!(Forest::empty().preorder_decorations().is_empty());
        let word: Vec<String> = f("c[*,*,*] a[*] b[*,*]")
            .preorder_decorations()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(word, ["c", "a", "b"]);
        let e: Vec<_> = f("b[a[*],b[*,*]]")
            .edges()
            .iter()
            .map(|e| (e.parent.0, e.slot, e.child.0))
            .collect();
        assert_eq!(e, [(1, 1, 2), (1, 2, 3)]);
    }

    #[test]
    fn parse_errors_report_columns() {
        let sig = se();
        match Forest::parse_with("c[*,*,]", &sig) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
        match Forest::parse_with("a[*] q[*]", &sig) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        assert!(Forest::parse_with("b[*]", &sig).is_err());
        assert!(Forest::parse("a[*]b[*,*]").is_err());
        assert_eq!(Forest::parse("ε").unwrap(), Forest::empty());
        assert_eq!(Forest::parse("  ").unwrap(), Forest::empty());
    }

    #[test]
    fn nullary_nodes_print_bare() {
        let t = Term::parse("x[y,z[]]").unwrap();
        assert_eq!(t.to_string(), "x[y,z]");
        assert_eq!(t.arity(), 0);
        assert_eq!(t.degree(), 3);
    }

    #[test]
    fn enumeration_small_cases() {
        let sig = se();
        assert_eq!(enumerate_terms(&sig, 0), vec![Term::Leaf]);
        assert_eq!(enumerate_terms(&sig, 2).len(), 18);
        let one: Vec<String> = enumerate_reduced_forests(&sig, 1)
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(one, ["a[*]", "b[*,*]", "c[*,*,*]"]);
    }

    #[test]
    fn order_matches_serialization() {
        let sig = se();
        let mut forests = enumerate_reduced_forests(&sig, 3);
        forests.extend(enumerate_reduced_forests(&sig, 2));
        let mut by_string = forests.clone();
        by_string.sort_by_key(|f| f.to_string());
        forests.sort();
        assert_eq!(forests, by_string);
    }
}
