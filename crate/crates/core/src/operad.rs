//! Graded, finitely factorizable nonsymmetric operads.
//!
//! Three instances are provided: the free operad on a signature
//! ([`FreeOperad`]), the associative operad ([`AssociativeOperad`]) and the
//! multiset realization of the multi-multiassociative operad
//! ([`MultisetOperad`]). The coproduct of the natural Hopf algebra is driven
//! entirely by [`Operad::factorizations`].

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::rc::Rc;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::term::{compositions, enumerate_terms, for_each_product, weak_compositions, Forest, Term};
use crate::word::Word;

/// A decomposition `x = outer<inner[0], ..., inner[n-1]>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization<E> {
    pub outer: E,
    pub inner: Vec<E>,
}

pub trait Operad {
    type Elem: Clone + Eq + Hash + Ord + fmt::Display + fmt::Debug;

    fn unit(&self) -> Self::Elem;

    fn arity(&self, x: &Self::Elem) -> usize;

    /// A grading: zero exactly on the unit, additive under composition.
    fn degree(&self, x: &Self::Elem) -> usize;

    fn is_unit(&self, x: &Self::Elem) -> bool {
        self.degree(x) == 0
    }

    fn compose(&self, outer: &Self::Elem, inner: &[Self::Elem]) -> Result<Self::Elem>;

    /// Every pair `(y, w)` with `compose(y, w) == x`, each exactly once.
    fn factorizations(&self, x: &Self::Elem) -> Result<Vec<Factorization<Self::Elem>>>;

    /// All elements of the given degree.
    fn elements_of_degree(&self, degree: usize) -> Result<Vec<Self::Elem>>;

    fn parse_elem(&self, text: &str) -> Result<Self::Elem>;

    /// Parses a whitespace-separated word of elements.
    fn parse_word(&self, text: &str) -> Result<Word<Self::Elem>> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for piece in text.split(' ') {
            if !piece.trim().is_empty() && piece.trim() != "ε" {
                letters.push(self.parse_elem(piece.trim()).map_err(|e| match e {
                    Error::Parse { column, message } => Error::Parse {
                        column: column + offset,
                        message,
                    },
                    other => other,
                })?);
            }
            offset += piece.chars().count() + 1;
        }
        Ok(Word::new(letters))
    }

    fn word_degree(&self, w: &Word<Self::Elem>) -> usize {
        w.iter().map(|x| self.degree(x)).sum()
    }

    /// Drops unit letters.
    fn reduce_word(&self, w: &[Self::Elem]) -> Word<Self::Elem> {
        w.iter().filter(|x| !self.is_unit(x)).cloned().collect()
    }

    /// All reduced words of the given total degree, sorted.
    fn reduced_words_of_degree(&self, degree: usize) -> Result<Vec<Word<Self::Elem>>> {
        let table = (0..=degree)
            .map(|d| self.elements_of_degree(d))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        for parts in compositions(degree) {
            let choices: Vec<&[Self::Elem]> = parts.iter().map(|&k| table[k].as_slice()).collect();
            for_each_product(&choices, &mut |letters| out.push(Word::new(letters.to_vec())));
        }
        out.sort();
        Ok(out)
    }
}

/// The free operad on a signature: terms under grafting.
#[derive(Debug, Clone)]
pub struct FreeOperad {
    sig: Signature,
}

impl FreeOperad {
    pub fn new(sig: Signature) -> Self {
        FreeOperad { sig }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn parse_forest(&self, text: &str) -> Result<Forest> {
        Forest::parse_with(text, &self.sig)
    }
}

/// Upper-prefix factorizations of `t`, memoized on subterms.
fn prefix_factorizations(
    t: &Term,
    memo: &mut HashMap<Term, Rc<Vec<Factorization<Term>>>>,
) -> Rc<Vec<Factorization<Term>>> {
    if let Some(hit) = memo.get(t) {
        return hit.clone();
    }
    let mut out = vec![Factorization {
        outer: Term::Leaf,
        inner: vec![t.clone()],
    }];
    if let Term::Node(_) = t {
        let label = t.label().unwrap().clone();
        let per_child: Vec<Rc<Vec<Factorization<Term>>>> = t
            .children()
            .iter()
            .map(|c| prefix_factorizations(c, memo))
            .collect();
        let choices: Vec<&[Factorization<Term>]> = per_child.iter().map(|v| v.as_slice()).collect();
        for_each_product(&choices, &mut |picked| {
            let outer = Term::node(label.clone(), picked.iter().map(|p| p.outer.clone()).collect());
            let inner = picked.iter().flat_map(|p| p.inner.iter().cloned()).collect();
            out.push(Factorization { outer, inner });
        });
    }
    let out = Rc::new(out);
    memo.insert(t.clone(), out.clone());
    out
}

impl Operad for FreeOperad {
    type Elem = Term;

    fn unit(&self) -> Term {
        Term::Leaf
    }

    fn arity(&self, x: &Term) -> usize {
        x.arity()
    }

    fn degree(&self, x: &Term) -> usize {
        x.degree()
    }

    fn compose(&self, outer: &Term, inner: &[Term]) -> Result<Term> {
        outer.full_compose(inner)
    }

    fn factorizations(&self, x: &Term) -> Result<Vec<Factorization<Term>>> {
        let mut memo = HashMap::new();
        Ok(prefix_factorizations(x, &mut memo).as_ref().clone())
    }

    fn elements_of_degree(&self, degree: usize) -> Result<Vec<Term>> {
        Ok(enumerate_terms(&self.sig, degree))
    }

    fn parse_elem(&self, text: &str) -> Result<Term> {
        Term::parse_with(text, &self.sig)
    }

    fn parse_word(&self, text: &str) -> Result<Forest> {
        Forest::parse_with(text, &self.sig)
    }
}

/// An element `alpha_n` of the associative operad, `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AsElem(usize);

impl AsElem {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            Err(Error::domain("alpha_n requires n >= 1"))
        } else {
            Ok(AsElem(n))
        }
    }

    pub fn n(self) -> usize {
        self.0
    }
}

impl fmt::Display for AsElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha_{}", self.0)
    }
}

impl Ord for AsElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl PartialOrd for AsElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The associative operad: one element `alpha_n` per arity `n >= 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AssociativeOperad;

impl Operad for AssociativeOperad {
    type Elem = AsElem;

    fn unit(&self) -> AsElem {
        AsElem(1)
    }

    fn arity(&self, x: &AsElem) -> usize {
        x.0
    }

    fn degree(&self, x: &AsElem) -> usize {
        x.0 - 1
    }

    fn compose(&self, outer: &AsElem, inner: &[AsElem]) -> Result<AsElem> {
        if inner.len() != outer.0 {
            return Err(Error::Arity {
                expected: outer.0,
                found: inner.len(),
            });
        }
        Ok(AsElem(inner.iter().map(|x| x.0).sum()))
    }

    fn factorizations(&self, x: &AsElem) -> Result<Vec<Factorization<AsElem>>> {
        Ok(compositions(x.0)
            .into_iter()
            .map(|parts| Factorization {
                outer: AsElem(parts.len()),
                inner: parts.into_iter().map(AsElem).collect(),
            })
            .collect())
    }

    fn elements_of_degree(&self, degree: usize) -> Result<Vec<AsElem>> {
        Ok(vec![AsElem(degree + 1)])
    }

    fn parse_elem(&self, text: &str) -> Result<AsElem> {
        let digits = text
            .strip_prefix("alpha_")
            .ok_or_else(|| Error::parse(1, format!("expected `alpha_<n>`, got `{text}`")))?;
        let n = digits
            .parse::<usize>()
            .map_err(|_| Error::parse(7, format!("invalid index `{digits}`")))?;
        if n == 0 {
            return Err(Error::parse(7, "alpha_n requires n >= 1"));
        }
        Ok(AsElem(n))
    }
}

/// A finite multiset of generator names, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Multiset(Vec<Arc<str>>);

impl Multiset {
    pub fn new(mut names: Vec<Arc<str>>) -> Self {
        names.sort();
        Multiset(names)
    }

    pub fn empty() -> Self {
        Multiset(Vec::new())
    }

    /// The multiset of decorations of a term.
    pub fn of_term(t: &Term) -> Self {
        Multiset::new(t.preorder_labels())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[Arc<str>] {
        &self.0
    }

    pub fn union(&self, other: &Multiset) -> Multiset {
        let mut names = self.0.clone();
        names.extend_from_slice(&other.0);
        Multiset::new(names)
    }

    /// `(name, multiplicity)` pairs in sorted order.
    pub fn counts(&self) -> Vec<(Arc<str>, usize)> {
        let mut out: Vec<(Arc<str>, usize)> = Vec::new();
        for n in &self.0 {
            match out.last_mut() {
                Some((last, c)) if last == n => *c += 1,
                _ => out.push((n.clone(), 1)),
            }
        }
        out
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(n)?;
        }
        f.write_str("}")
    }
}

impl Ord for Multiset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl PartialOrd for Multiset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Multisets of generators with union as composition: the
/// multi-multiassociative operad on a signature.
#[derive(Debug, Clone)]
pub struct MultisetOperad {
    sig: Signature,
}

impl MultisetOperad {
    /// Factorizations are only enumerated over positive signatures.
    pub fn new(sig: Signature) -> Result<Self> {
        sig.require_positive("the multiset operad")?;
        Ok(MultisetOperad { sig })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// `sum of arities - size + 1`, or `None` when negative.
    pub fn checked_arity(&self, m: &Multiset) -> Option<usize> {
        let total: usize = m.0.iter().map(|g| self.sig.arity(g).unwrap_or(0)).sum();
        (total + 1).checked_sub(m.len())
    }

    fn build(&self, names: Vec<Arc<str>>) -> Result<Multiset> {
        for n in &names {
            if self.sig.get(n).is_none() {
                return Err(Error::UnknownGenerator(n.to_string()));
            }
        }
        let m = Multiset::new(names);
        if self.checked_arity(&m).is_none() {
            return Err(Error::domain(format!("{m} has negative arity")));
        }
        Ok(m)
    }

    pub fn multiset(&self, names: &[&str]) -> Result<Multiset> {
        self.build(
            names
                .iter()
                .map(|n| self.sig.name_handle(n).unwrap_or_else(|| Arc::from(*n)))
                .collect(),
        )
    }
}

impl Operad for MultisetOperad {
    type Elem = Multiset;

    fn unit(&self) -> Multiset {
        Multiset::empty()
    }

    fn arity(&self, x: &Multiset) -> usize {
        self.checked_arity(x).expect("multiset elements have nonnegative arity")
    }

    fn degree(&self, x: &Multiset) -> usize {
        x.len()
    }

    fn compose(&self, outer: &Multiset, inner: &[Multiset]) -> Result<Multiset> {
        let n = self.arity(outer);
        if inner.len() != n {
            return Err(Error::Arity {
                expected: n,
                found: inner.len(),
            });
        }
        Ok(inner.iter().fold(outer.clone(), |acc, m| acc.union(m)))
    }

    fn factorizations(&self, x: &Multiset) -> Result<Vec<Factorization<Multiset>>> {
        let counts = x.counts();
        let mut out = Vec::new();
        // Sub-multisets as multiplicity vectors.
        let ranges: Vec<Vec<usize>> = counts.iter().map(|(_, c)| (0..=*c).collect()).collect();
        let ranges: Vec<&[usize]> = ranges.iter().map(|r| r.as_slice()).collect();
        for_each_product(&ranges, &mut |take| {
            let mut outer = Vec::new();
            for ((name, _), &k) in counts.iter().zip(take) {
                outer.extend(std::iter::repeat_n(name.clone(), k));
            }
            let outer = Multiset::new(outer);
            let Some(slots) = self.checked_arity(&outer) else {
                return;
            };
            // For every distinct letter, a weak composition of what remains
            // into `slots` parts.
            let per_letter: Vec<Vec<Vec<usize>>> = counts
                .iter()
                .zip(take)
                .map(|((_, c), &k)| weak_compositions(c - k, slots))
                .collect();
            let per_letter: Vec<&[Vec<usize>]> = per_letter.iter().map(|v| v.as_slice()).collect();
            for_each_product(&per_letter, &mut |dist| {
                let inner = (0..slots)
                    .map(|s| {
                        let mut names = Vec::new();
                        for ((name, _), parts) in counts.iter().zip(dist) {
                            names.extend(std::iter::repeat_n(name.clone(), parts[s]));
                        }
                        Multiset::new(names)
                    })
                    .collect();
                out.push(Factorization {
                    outer: outer.clone(),
                    inner,
                });
            });
        });
        Ok(out)
    }

    fn elements_of_degree(&self, degree: usize) -> Result<Vec<Multiset>> {
        let gens: Vec<Arc<str>> = self.sig.generators().iter().map(|g| g.name.clone()).collect();
        let mut out = Vec::new();
        for parts in weak_compositions(degree, gens.len()) {
            let mut names = Vec::new();
            for (g, k) in gens.iter().zip(parts) {
                names.extend(std::iter::repeat_n(g.clone(), k));
            }
            let m = Multiset::new(names);
            if self.checked_arity(&m).is_some() {
                out.push(m);
            }
        }
        out.sort();
        Ok(out)
    }

    fn parse_elem(&self, text: &str) -> Result<Multiset> {
        let body = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::parse(1, format!("expected `{{g,...}}`, got `{text}`")))?;
        let mut names = Vec::new();
        let mut column = 2;
        for name in body.split(',').filter(|s| !s.trim().is_empty()) {
            let handle = self
                .sig
                .name_handle(name.trim())
                .ok_or_else(|| Error::parse(column, format!("unknown generator `{}`", name.trim())))?;
            names.push(handle);
            column += name.len() + 1;
        }
        self.build(names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(n: usize) -> AsElem {
        AsElem::new(n).unwrap()
    }

    #[test]
    fn associative_composition() {
        let asop = AssociativeOperad;
        assert_eq!(asop.compose(&alpha(2), &[alpha(2), alpha(3)]).unwrap(), alpha(5));
        assert!(asop.compose(&alpha(2), &[alpha(2)]).is_err());
        assert_eq!(asop.factorizations(&alpha(4)).unwrap().len(), 8);
    }

    #[test]
    fn multiset_composition_is_union() {
        let sig = Signature::parse_inline("a:2,b:2").unwrap();
        let mas = MultisetOperad::new(sig).unwrap();
        let a = mas.parse_elem("{a}").unwrap();
        let b = mas.parse_elem("{b}").unwrap();
        let ab = mas.compose(&a, &[b, Multiset::empty()]).unwrap();
        assert_eq!(ab.to_string(), "{a,b}");
        assert_eq!(mas.arity(&ab), 3);
        assert!(mas.compose(&ab, &[]).is_err());
    }

    #[test]
    fn multiset_refuses_nullary_generators() {
        let sig = Signature::parse_inline("a:2,z:0").unwrap();
        assert!(matches!(MultisetOperad::new(sig), Err(Error::Unsupported(_))));
    }

    #[test]
    fn free_corolla_has_two_factorizations() {
        let sig = Signature::parse_inline("a:1,b:2,c:3").unwrap();
        let free = FreeOperad::new(sig);
        let g = free.parse_elem("c[*,*,*]").unwrap();
        let mut fs = free.factorizations(&g).unwrap();
        fs.sort();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].outer, Term::Leaf);
        assert_eq!(fs[0].inner, vec![g.clone()]);
        assert_eq!(fs[1].outer, g);
        assert_eq!(fs[1].inner, vec![Term::Leaf; 3]);
    }

    #[test]
    fn free_composition_example() {
        let sig = Signature::parse_inline("a:1,b:2,c:3").unwrap();
        let free = FreeOperad::new(sig);
        let c = free.parse_elem("c[*,*,*]").unwrap();
        let a = free.parse_elem("a[*]").unwrap();
        assert_eq!(
            free.compose(&c, &[a, Term::Leaf, Term::Leaf]).unwrap().to_string(),
            "c[a[*],*,*]"
        );
    }

    #[test]
    fn parse_word_reports_offsets() {
        match AssociativeOperad.parse_word("alpha_2 beta") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 9),
            other => panic!("{other:?}"),
        }
        assert_eq!(AssociativeOperad.parse_word("alpha_2 alpha_3").unwrap().len(), 2);
    }
}
