//! Decorated forests and the noncommutative Connes–Kreimer Hopf algebra.
//!
//! A decorated forest uses the term syntax without leaves: `3[2,3[2,3,1]] 1[2]`
//! is a forest of two trees whose vertices carry decorations. It corresponds
//! to the leaf-free forest over the signature `S_D` in which a vertex
//! decorated `d` with `n` children becomes the generator `alpha_d_n`.
//!
//! ```
//! use nhopf::special::nck::{from_decorated, nck_coproduct, parse_decorated};
//!
//! let chain = parse_decorated("1[2]").unwrap();
//! assert_eq!(from_decorated(&chain).to_string(), "alpha_1_1[alpha_2_0]");
//! assert_eq!(nck_coproduct(&chain).len(), 3);
//! ```

use std::collections::BTreeSet;

use num_traits::One;

use crate::error::{Error, Result};
use crate::hopf::{Basis, HopfElement, NaturalHopf, TensorElement};
use crate::linear::{Coeff, LinComb};
use crate::operad::FreeOperad;
use crate::realization::RelatedAlphabet;
use crate::signature::Signature;
use crate::term::{Forest, Term};
use crate::word::Word;

/// Name of the generator for a `d`-vertex with `n` children.
pub fn generator_name(d: &str, n: usize) -> String {
    format!("alpha_{d}_{n}")
}

/// Splits `alpha_d_n` into `(d, n)`.
pub fn split_generator(name: &str) -> Option<(&str, usize)> {
    let rest = name.strip_prefix("alpha_")?;
    let (d, n) = rest.rsplit_once('_')?;
    if d.is_empty() {
        return None;
    }
    Some((d, n.parse().ok()?))
}

/// The finite part of `S_D` with at most `max_children` children per vertex.
pub fn sd_signature(decorations: &[&str], max_children: usize) -> Result<Signature> {
    let mut gens = Vec::new();
    for d in decorations {
        for n in 0..=max_children {
            gens.push((generator_name(d, n), n));
        }
    }
    Signature::new(gens)
}

/// Parses a decorated forest; leaves are not allowed.
pub fn parse_decorated(text: &str) -> Result<Forest> {
    let f = Forest::parse(text)?;
    if f.iter().any(has_leaf) {
        return Err(Error::domain("decorated forests have no leaves"));
    }
    Ok(f)
}

fn has_leaf(t: &Term) -> bool {
    t.is_leaf() || t.children().iter().any(has_leaf)
}

/// Decorated forest to `S_D`-forest.
pub fn from_decorated(f: &Forest) -> Forest {
    fn go(t: &Term) -> Term {
        let d = t.label().expect("decorated forests have no leaves");
        Term::node(generator_name(d, t.children().len()), t.children().iter().map(go).collect())
    }
    f.iter().map(go).collect()
}

/// Leaf-free `S_D`-forest to decorated forest.
pub fn to_decorated(f: &Forest) -> Result<Forest> {
    fn go(t: &Term) -> Result<Term> {
        let Some(name) = t.label() else {
            return Err(Error::domain("forest has leaves; it is not the image of a decorated forest"));
        };
        let (d, n) = split_generator(name)
            .ok_or_else(|| Error::domain(format!("`{name}` is not a generator alpha_d_n")))?;
        if n != t.children().len() {
            return Err(Error::Arity {
                expected: n,
                found: t.children().len(),
            });
        }
        Ok(Term::node(d, t.children().iter().map(go).collect::<Result<_>>()?))
    }
    f.iter().map(go).collect()
}

/// Forgets the leaves of an `S_D`-forest: `alpha_d_n` with `k` internal
/// children becomes a `d`-vertex with `k` children.
pub fn strip_leaves(f: &Forest) -> Result<Forest> {
    fn go(t: &Term) -> Result<Term> {
        let name = t.label().expect("only internal nodes are visited");
        let (d, _) = split_generator(name)
            .ok_or_else(|| Error::domain(format!("`{name}` is not a generator alpha_d_n")))?;
        let children = t
            .children()
            .iter()
            .filter(|c| !c.is_leaf())
            .map(go)
            .collect::<Result<_>>()?;
        Ok(Term::node(d, children))
    }
    f.iter().filter(|t| !t.is_leaf()).map(go).collect()
}

/// Admissible-cut coproduct: sum over vertex sets closed under taking
/// parents of `trunk ⊗ pruned`, where the trunk is the kept rooted part and
/// the pruned forest lists the removed subtrees in preorder.
pub fn nck_coproduct(f: &Forest) -> LinComb<(Forest, Forest)> {
    let mut acc: LinComb<(Forest, Forest)> = LinComb::single((Word::empty(), Word::empty()));
    for tree in f {
        let mut cuts = LinComb::zero();
        cuts.add_term((Word::empty(), Word::single(tree.clone())), Coeff::one());
        for (trunk, pruned) in rooted_cuts(tree) {
            cuts.add_term((Word::single(trunk), Word::new(pruned)), Coeff::one());
        }
        let mut next = LinComb::zero();
        for ((a, b), c) in &acc {
            for ((p, q), d) in &cuts {
                next.add_term((a.concat(p), b.concat(q)), c * d);
            }
        }
        acc = next;
    }
    acc
}

/// All ways to keep a nonempty rooted part of `t`, with the removed subtrees.
fn rooted_cuts(t: &Term) -> Vec<(Term, Vec<Term>)> {
    let label = t.label().expect("decorated trees have no leaves").clone();
    // Each child is either removed whole or cut recursively.
    let mut partial: Vec<(Vec<Term>, Vec<Term>)> = vec![(Vec::new(), Vec::new())];
    for c in t.children() {
        let mut next = Vec::new();
        for (kept, removed) in &partial {
            let mut r = removed.clone();
            r.push(c.clone());
            next.push((kept.clone(), r));
            for (sub, sub_removed) in rooted_cuts(c) {
                let mut k = kept.clone();
                k.push(sub);
                let mut r = removed.clone();
                r.extend(sub_removed);
                next.push((k, r));
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(kept, removed)| (Term::node(label.clone(), kept), removed))
        .collect()
}

/// The coproduct of the natural Hopf algebra of the free operad on `S_D`,
/// transported to decorated forests.
pub fn transported_coproduct(f: &Forest) -> Result<LinComb<(Forest, Forest)>> {
    let sd = from_decorated(f);
    let max_children = max_children(f);
    let decorations: BTreeSet<String> = f.preorder_decorations().iter().map(|d| d.to_string()).collect();
    let decorations: Vec<&str> = decorations.iter().map(String::as_str).collect();
    let hopf = NaturalHopf::new(FreeOperad::new(sd_signature(&decorations, max_children)?));
    let delta: TensorElement<Term> = hopf.coproduct(&HopfElement::from_terms(Basis::E, LinComb::single(sd)))?;
    let mut out = LinComb::zero();
    for ((a, b), c) in &delta {
        out.add_term((strip_leaves(a)?, strip_leaves(b)?), c.clone());
    }
    Ok(out)
}

fn max_children(f: &Forest) -> usize {
    fn go(t: &Term) -> usize {
        t.children().iter().map(go).max().unwrap_or(0).max(t.children().len())
    }
    f.iter().map(go).max().unwrap_or(0)
}

/// All decorated forests with `n` vertices over `decorations`.
pub fn decorated_forests(decorations: &[&str], n: usize) -> Vec<Forest> {
    fn trees(decorations: &[&str], n: usize) -> Vec<Term> {
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for children in forests(decorations, n - 1) {
            for d in decorations {
                out.push(Term::node(*d, children.letters().to_vec()));
            }
        }
        out
    }
    fn forests(decorations: &[&str], n: usize) -> Vec<Forest> {
        if n == 0 {
            return vec![Word::empty()];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for t in trees(decorations, first) {
                for rest in forests(decorations, n - first) {
                    let mut v = vec![t.clone()];
                    v.extend(rest.letters().iter().cloned());
                    out.push(Word::new(v));
                }
            }
        }
        out
    }
    let mut out = forests(decorations, n);
    out.sort();
    out
}

/// The level alphabet `A_{D,N}` truncated to indices below `bound`, over the
/// part of `S_D` with at most `max_children` children.
pub fn decorated_alphabet(decorations: &[&str], max_children: usize, bound: usize) -> Result<RelatedAlphabet> {
    let sig = sd_signature(decorations, max_children)?;
    Ok(RelatedAlphabet::leveled(&sig, bound, |name| {
        split_generator(name).expect("generated name").0.to_string()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str) -> Forest {
        parse_decorated(s).unwrap()
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(from_decorated(&dec("2")).to_string(), "alpha_2_0");
        let f = dec("3[2,3[2,3,1]] 1[2]");
        let sd = from_decorated(&f);
        assert_eq!(
            sd.to_string(),
            "alpha_3_2[alpha_2_0,alpha_3_3[alpha_2_0,alpha_3_0,alpha_1_0]] alpha_1_1[alpha_2_0]"
        );
        assert_eq!(to_decorated(&sd).unwrap(), f);
        assert!(to_decorated(&Forest::parse("alpha_1_1[*]").unwrap()).is_err());
        assert!(to_decorated(&Forest::parse("beta[*]").unwrap()).is_err());
        assert!(parse_decorated("1[*]").is_err());
    }

    #[test]
    fn coproduct_small_cases() {
        let d = nck_coproduct(&dec("1"));
        assert_eq!(d.len(), 2);
        let d = nck_coproduct(&dec("1[2]"));
        assert_eq!(d.coeff(&(dec("1"), dec("2"))), Coeff::one());
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn generator_names() {
        assert_eq!(split_generator("alpha_3_2"), Some(("3", 2)));
        assert_eq!(split_generator("alpha_x_y_10"), Some(("x_y", 10)));
        assert_eq!(split_generator("alpha__1"), None);
        assert_eq!(decorated_forests(&["1", "2"], 2).len(), 8);
    }
}
