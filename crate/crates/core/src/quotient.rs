//! Operad congruences of free operads and the class-sum subalgebras they
//! define.
//!
//! For a congruence compatible with the degree and of finite type, the sums
//! `E_[f] = Σ_{f′ ≡ f} E_{f′}` span a Hopf subalgebra isomorphic to the natural
//! Hopf algebra of the quotient operad. [`MasCongruence`] is the congruence
//! `g ∘_i g′ ≡ g′ ∘_{i′} g` whose quotient is the multiset operad.
//!
//! ```
//! use nhopf::quotient::{MasCongruence, Quotient};
//! use nhopf::{Forest, Signature};
//!
//! let sig = Signature::parse_inline("a:2,b:2").unwrap();
//! let q = Quotient::new(sig.clone(), MasCongruence::new(sig).unwrap());
//! let class = q.class_elements(&Forest::parse("a[b[*,*],*]").unwrap()).unwrap();
//! assert_eq!(class.len(), 4);
//! ```

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::One;

use crate::error::{Error, Result};
use crate::hopf::{concat_product, Basis, HopfElement, NaturalHopf};
use crate::linear::{Coeff, LinComb};
use crate::operad::{FreeOperad, Multiset};
use crate::signature::Signature;
use crate::term::{enumerate_reduced_forests, for_each_product, Forest, Term};
use crate::word::Word;

/// Default bound on the size of an equivalence class before closure gives up.
pub const DEFAULT_CLASS_CAP: usize = 100_000;

/// An operad congruence, given by a canonical key and elementary rewrites.
pub trait Congruence {
    type Key: Clone + Ord + Hash + Debug;

    /// A key constant on equivalence classes.
    fn canonical_form(&self, t: &Term) -> Self::Key;

    /// Terms reachable from `t` by one elementary rewrite at one position.
    fn generating_moves(&self, t: &Term) -> Vec<Term>;
}

/// Equality: every class is a singleton.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialCongruence;

impl Congruence for TrivialCongruence {
    type Key = Term;

    fn canonical_form(&self, t: &Term) -> Term {
        t.clone()
    }

    fn generating_moves(&self, _: &Term) -> Vec<Term> {
        Vec::new()
    }
}

/// `g ∘_i g′ ≡ g′ ∘_{i′} g` for all generators `g, g′` and slots `i, i′`.
#[derive(Debug, Clone)]
pub struct MasCongruence {
    sig: Signature,
}

impl MasCongruence {
    pub fn new(sig: Signature) -> Result<Self> {
        sig.require_positive("the multiset congruence")?;
        Ok(MasCongruence { sig })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }
}

impl Congruence for MasCongruence {
    type Key = Multiset;

    fn canonical_form(&self, t: &Term) -> Multiset {
        Multiset::of_term(t)
    }

    fn generating_moves(&self, t: &Term) -> Vec<Term> {
        let mut out = Vec::new();
        mas_moves(t, &mut |new| out.push(new));
        out.sort();
        out.dedup();
        out
    }
}

/// Rewrites every edge of `t`, reporting each rewritten whole term.
fn mas_moves(t: &Term, emit: &mut dyn FnMut(Term)) {
    let Some(label) = t.label() else { return };
    let ch = t.children();
    for (i, child) in ch.iter().enumerate() {
        let Some(inner_label) = child.label() else { continue };
        let d = child.children();
        // Subtrees hanging from the pattern, left to right.
        let hanging: Vec<Term> = ch[..i]
            .iter()
            .chain(d.iter())
            .chain(ch[i + 1..].iter())
            .cloned()
            .collect();
        let (n, m) = (ch.len(), d.len());
        for ip in 0..m {
            let lower = Term::node(label.clone(), hanging[ip..ip + n].to_vec());
            let mut upper: Vec<Term> = hanging[..ip].to_vec();
            upper.push(lower);
            upper.extend_from_slice(&hanging[ip + n..]);
            emit(Term::node(inner_label.clone(), upper));
        }
    }
    for (i, child) in ch.iter().enumerate() {
        mas_moves(child, &mut |new| {
            let mut children = ch.to_vec();
            children[i] = new;
            emit(Term::node(label.clone(), children));
        });
    }
}

/// A free operad together with a congruence.
#[derive(Debug, Clone)]
pub struct Quotient<C> {
    sig: Signature,
    cong: C,
    cap: usize,
}

impl<C: Congruence> Quotient<C> {
    pub fn new(sig: Signature, cong: C) -> Self {
        Quotient {
            sig,
            cong,
            cap: DEFAULT_CLASS_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn congruence(&self) -> &C {
        &self.cong
    }

    /// The class of a term, sorted, by closure under the generating moves.
    pub fn term_class(&self, t: &Term) -> Result<Vec<Term>> {
        let key = self.cong.canonical_form(t);
        let mut seen = HashSet::from([t.clone()]);
        let mut queue = VecDeque::from([t.clone()]);
        while let Some(u) = queue.pop_front() {
            for v in self.cong.generating_moves(&u) {
                if seen.contains(&v) {
                    continue;
                }
                if v.degree() != t.degree() {
                    return Err(Error::domain(format!(
                        "rewrite `{u}` -> `{v}` changes the degree"
                    )));
                }
                if self.cong.canonical_form(&v) != key {
                    return Err(Error::domain(format!(
                        "rewrite `{u}` -> `{v}` changes the canonical form"
                    )));
                }
                seen.insert(v.clone());
                if seen.len() > self.cap {
                    return Err(Error::FiniteTypeViolation(self.cap));
                }
                queue.push_back(v);
            }
        }
        let mut out: Vec<Term> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// The class of a forest, term by term.
    pub fn class_elements(&self, f: &Forest) -> Result<Vec<Forest>> {
        let classes = f.iter().map(|t| self.term_class(t)).collect::<Result<Vec<_>>>()?;
        let size = classes.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
        if size.is_none_or(|s| s > self.cap) {
            return Err(Error::FiniteTypeViolation(self.cap));
        }
        let refs: Vec<&[Term]> = classes.iter().map(Vec::as_slice).collect();
        let mut out = Vec::new();
        for_each_product(&refs, &mut |ts| out.push(Word::new(ts.to_vec())));
        out.sort();
        Ok(out)
    }

    pub fn class_key(&self, f: &Forest) -> Vec<C::Key> {
        f.iter().map(|t| self.cong.canonical_form(t)).collect()
    }

    /// `E_[f]`.
    pub fn e_class(&self, f: &Forest) -> Result<HopfElement<Term>> {
        let terms = self
            .class_elements(f)?
            .into_iter()
            .map(|g| (g, Coeff::one()))
            .collect();
        Ok(HopfElement::from_terms(Basis::E, terms))
    }

    /// The classes of reduced forests of each degree up to `max_degree`.
    pub fn classes_up_to(&self, max_degree: usize) -> Result<Vec<Vec<Forest>>> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut seen = HashSet::new();
            for f in enumerate_reduced_forests(&self.sig, d) {
                if seen.contains(&f) {
                    continue;
                }
                let class = self.class_elements(&f)?;
                seen.extend(class.iter().cloned());
                out.push(class);
            }
        }
        Ok(out)
    }

    /// Checks that class sums up to `max_degree` span a subalgebra and a
    /// subcoalgebra, collecting the structure constants on the way.
    pub fn subalgebra_check(&self, max_degree: usize) -> Result<SubalgebraReport<C::Key>> {
        self.sig.require_positive("the class-sum check")?;
        let classes = self.classes_up_to(max_degree)?;
        let mut class_of: HashMap<Forest, usize> = HashMap::new();
        for (id, class) in classes.iter().enumerate() {
            for f in class {
                class_of.insert(f.clone(), id);
            }
        }
        let keys: Vec<Vec<C::Key>> = classes.iter().map(|c| self.class_key(&c[0])).collect();
        let sums: Vec<LinComb<Forest>> = classes
            .iter()
            .map(|c| c.iter().map(|f| (f.clone(), Coeff::one())).collect())
            .collect();
        let hopf = NaturalHopf::new(FreeOperad::new(self.sig.clone()));
        let mut report = SubalgebraReport {
            max_degree,
            classes: classes.len(),
            products_checked: 0,
            coproducts_checked: 0,
            failure: None,
            product_constants: BTreeMap::new(),
            coproduct_constants: BTreeMap::new(),
        };

        let degree = |id: usize| classes[id][0].degree();
        for a in 0..classes.len() {
            for b in 0..classes.len() {
                if degree(a) + degree(b) > max_degree {
                    continue;
                }
                report.products_checked += 1;
                let prod = concat_product(&sums[a], &sums[b]);
                match regroup(&prod, |f| class_of.get(f).copied(), |&id| classes[id].len()) {
                    Ok(by_class) => {
                        let lin = by_class.map_keys(|&id| keys[id].clone());
                        report.product_constants.insert((keys[a].clone(), keys[b].clone()), lin);
                    }
                    Err(why) => {
                        report.failure.get_or_insert(format!(
                            "E[{}] * E[{}]: {why}",
                            classes[a][0], classes[b][0]
                        ));
                    }
                }
            }
        }

        for a in 0..classes.len() {
            report.coproducts_checked += 1;
            let delta = hopf.coproduct(&HopfElement::from_terms(Basis::E, sums[a].clone()))?;
            let grouped = regroup_tensor(&delta, &class_of, &classes);
            match grouped {
                Ok(by_class) => {
                    let lin = by_class.map_keys(|&(x, y)| (keys[x].clone(), keys[y].clone()));
                    report.coproduct_constants.insert(keys[a].clone(), lin);
                }
                Err(why) => {
                    report
                        .failure
                        .get_or_insert(format!("Δ E[{}]: {why}", classes[a][0]));
                }
            }
        }
        Ok(report)
    }
}

/// Regroups a combination into class sums, failing unless the coefficient is
/// constant on each class that appears.
fn regroup<K: Ord + Clone, Id: Ord + Clone + Debug>(
    x: &LinComb<K>,
    class_of: impl Fn(&K) -> Option<Id>,
    class_size: impl Fn(&Id) -> usize,
) -> std::result::Result<LinComb<Id>, String> {
    let mut seen: BTreeMap<Id, (Coeff, usize)> = BTreeMap::new();
    for (k, c) in x {
        let id = class_of(k).ok_or("term outside the enumerated classes")?;
        let entry = seen.entry(id.clone()).or_insert_with(|| (c.clone(), 0));
        if &entry.0 != c {
            return Err(format!("coefficients {} and {c} differ on class {id:?}", entry.0));
        }
        entry.1 += 1;
    }
    let mut out = LinComb::zero();
    for (id, (c, n)) in seen {
        if n != class_size(&id) {
            return Err(format!("class {id:?} only partially present"));
        }
        out.add_term(id, c);
    }
    Ok(out)
}

fn regroup_tensor(
    t: &LinComb<(Forest, Forest)>,
    class_of: &HashMap<Forest, usize>,
    classes: &[Vec<Forest>],
) -> std::result::Result<LinComb<(usize, usize)>, String> {
    regroup(
        t,
        |(u, v)| Some((*class_of.get(u)?, *class_of.get(v)?)),
        |&(x, y)| classes[x].len() * classes[y].len(),
    )
}

/// Result of [`Quotient::subalgebra_check`].
#[derive(Debug, Clone)]
pub struct SubalgebraReport<K: Ord> {
    pub max_degree: usize,
    pub classes: usize,
    pub products_checked: usize,
    pub coproducts_checked: usize,
    /// First counterexample, if any.
    pub failure: Option<String>,
    /// `E[x] · E[y] = Σ c E[z]`, classes named by their keys.
    pub product_constants: BTreeMap<(Vec<K>, Vec<K>), LinComb<Vec<K>>>,
    /// `Δ E[x] = Σ c E[y] ⊗ E[z]`.
    pub coproduct_constants: BTreeMap<Vec<K>, LinComb<(Vec<K>, Vec<K>)>>,
}

impl<K: Ord> SubalgebraReport<K> {
    pub fn is_success(&self) -> bool {
        self.failure.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mas(sig: &str) -> Quotient<MasCongruence> {
        let sig = Signature::parse_inline(sig).unwrap();
        Quotient::new(sig.clone(), MasCongruence::new(sig).unwrap())
    }

    fn f(s: &str) -> Forest {
        Forest::parse(s).unwrap()
    }

    #[test]
    fn two_node_class() {
        let q = mas("a:2,b:2");
        let class = q.class_elements(&f("a[b[*,*],*]")).unwrap();
        let expect: Vec<Forest> = ["a[*,b[*,*]]", "a[b[*,*],*]", "b[*,a[*,*]]", "b[a[*,*],*]"]
            .iter()
            .map(|s| f(s))
            .collect();
        assert_eq!(class, expect);
    }

    #[test]
    fn three_node_class_size() {
        let q = mas("a:2,b:2");
        assert_eq!(q.class_elements(&f("a[a[b[*,*],*],*]")).unwrap().len(), 15);
        assert_eq!(q.class_elements(&f("a[*,*]")).unwrap(), vec![f("a[*,*]")]);
    }

    #[test]
    fn e_class_sum() {
        let q = mas("a:2");
        let e = q.e_class(&f("a[a[*,*],*]")).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coeff(&f("a[*,a[*,*]]")), Coeff::one());
    }

    #[test]
    fn cap_triggers() {
        let q = mas("a:2").with_cap(3);
        assert!(matches!(
            q.class_elements(&f("a[a[a[*,*],*],*]")),
            Err(Error::FiniteTypeViolation(3))
        ));
    }

    #[test]
    fn trivial_congruence_is_a_subalgebra() {
        let sig = Signature::parse_inline("a:1,b:2").unwrap();
        let report = Quotient::new(sig, TrivialCongruence).subalgebra_check(2).unwrap();
        assert!(report.is_success(), "{:?}", report.failure);
    }

    #[test]
    fn mas_is_a_subalgebra() {
        let report = mas("a:2,b:2").subalgebra_check(2).unwrap();
        assert!(report.is_success(), "{:?}", report.failure);
    }
}
