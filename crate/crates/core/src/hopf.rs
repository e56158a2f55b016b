//! The natural Hopf algebra of an operad.
//!
//! Basis elements are reduced words over the operad. The product concatenates
//! words, and the coproduct of a single letter `x` sums
//! `E_{rd(y)} ⊗ E_{rd(w)}` over all factorizations `x = y<w>`. On words the
//! coproduct is extended multiplicatively.
//!
//! ```
//! use nhopf::hopf::NaturalHopf;
//! use nhopf::operad::{AssociativeOperad, Operad};
//!
//! let h = NaturalHopf::new(AssociativeOperad);
//! let x = h.element(&AssociativeOperad.parse_word("alpha_4").unwrap()).unwrap();
//! let delta = h.coproduct(&x).unwrap();
//! assert_eq!(delta.len(), 5);
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linear::{Coeff, LinComb};
use crate::operad::Operad;
use crate::word::Word;

/// Which basis a [`HopfElement`] is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Elementary basis.
    E,
    /// Fundamental basis (free operads only).
    F,
    /// Homogeneous basis (free operads only).
    H,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::E => "E",
            Basis::F => "F",
            Basis::H => "H",
        })
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Basis> {
        match s {
            "E" | "e" => Ok(Basis::E),
            "F" | "f" => Ok(Basis::F),
            "H" | "h" => Ok(Basis::H),
            other => Err(Error::domain(format!("unknown basis `{other}`"))),
        }
    }
}

/// A linear combination of reduced words, tagged by basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HopfElement<E: Ord> {
    basis: Basis,
    terms: LinComb<Word<E>>,
}

pub type TensorElement<E> = LinComb<(Word<E>, Word<E>)>;

impl<E: Ord + Clone> HopfElement<E> {
    pub fn zero(basis: Basis) -> Self {
        HopfElement {
            basis,
            terms: LinComb::zero(),
        }
    }

    /// Wraps a linear combination. Keys are assumed reduced.
    pub fn from_terms(basis: Basis, terms: LinComb<Word<E>>) -> Self {
        HopfElement { basis, terms }
    }

    pub fn unit() -> Self {
        HopfElement {
            basis: Basis::E,
            terms: LinComb::single(Word::empty()),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &LinComb<Word<E>> {
        &self.terms
    }

    pub fn into_terms(self) -> LinComb<Word<E>> {
        self.terms
    }

    pub fn coeff(&self, w: &Word<E>) -> Coeff {
        self.terms.coeff(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_basis(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                expected: self.basis.to_string(),
                found: other.basis.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        Ok(HopfElement {
            basis: self.basis,
            terms: self.terms.add(&other.terms),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        Ok(HopfElement {
            basis: self.basis,
            terms: self.terms.sub(&other.terms),
        })
    }

    pub fn scale(&self, s: &Coeff) -> Self {
        HopfElement {
            basis: self.basis,
            terms: self.terms.scale(s),
        }
    }

    /// Concatenation product, valid in the E-basis only.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        require_e(self)?;
        Ok(HopfElement {
            basis: Basis::E,
            terms: concat_product(&self.terms, &other.terms),
        })
    }
}

fn require_e<E: Ord>(x: &HopfElement<E>) -> Result<()> {
    if x.basis != Basis::E {
        return Err(Error::BasisMismatch {
            expected: "E".into(),
            found: x.basis.to_string(),
        });
    }
    Ok(())
}

/// Concatenation product of two combinations of words.
pub fn concat_product<E: Ord + Clone>(
    x: &LinComb<Word<E>>,
    y: &LinComb<Word<E>>,
) -> LinComb<Word<E>> {
    let mut out = LinComb::zero();
    for (u, a) in x {
        for (v, b) in y {
            out.add_term(u.concat(v), a * b);
        }
    }
    out
}

/// Product in `H ⊗ H`, componentwise concatenation.
pub fn tensor_product<E: Ord + Clone>(x: &TensorElement<E>, y: &TensorElement<E>) -> TensorElement<E> {
    let mut out = LinComb::zero();
    for ((a, b), c) in x {
        for ((p, q), d) in y {
            out.add_term((a.concat(p), b.concat(q)), c * d);
        }
    }
    out
}

impl<E: Ord + Clone + fmt::Display> fmt::Display for HopfElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            write_coeff(f, c, i == 0)?;
            write!(f, "{}({})", self.basis, w)?;
        }
        Ok(())
    }
}

pub(crate) fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Coeff, first: bool) -> fmt::Result {
    let neg = c < &Coeff::zero();
    let abs = if neg { -c.clone() } else { c.clone() };
    match (first, neg) {
        (true, false) => {}
        (true, true) => f.write_str("-")?,
        (false, false) => f.write_str(" + ")?,
        (false, true) => f.write_str(" - ")?,
    }
    if !abs.is_one() {
        write!(f, "{abs} ")?;
    }
    Ok(())
}

/// Renders a tensor as `c E(left) ⊗ E(right) + ...`.
pub fn format_tensor<E: Ord + Clone + fmt::Display>(t: &TensorElement<E>, basis: Basis) -> String {
    struct Show<'a, E: Ord>(&'a TensorElement<E>, Basis);
    impl<E: Ord + Clone + fmt::Display> fmt::Display for Show<'_, E> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.0.is_zero() {
                return f.write_str("0");
            }
            for (i, ((a, b), c)) in self.0.iter().enumerate() {
                write_coeff(f, c, i == 0)?;
                write!(f, "{}({}) ⊗ {}({})", self.1, a, self.1, b)?;
            }
            Ok(())
        }
    }
    Show(t, basis).to_string()
}

fn word_json<E: fmt::Display>(w: &Word<E>) -> Value {
    Value::Array(w.iter().map(|x| Value::String(x.to_string())).collect())
}

impl<E: Ord + Clone + fmt::Display> HopfElement<E> {
    /// `{format_version, basis, terms: [{word: [...], coeff: "..."}]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "format_version": 1,
            "basis": self.basis.to_string(),
            "terms": self.terms.iter().map(|(w, c)| json!({
                "word": word_json(w),
                "coeff": c.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn tensor_to_json<E: Ord + Clone + fmt::Display>(t: &TensorElement<E>, basis: Basis) -> Value {
    json!({
        "format_version": 1,
        "basis": basis.to_string(),
        "terms": t.iter().map(|((a, b), c)| json!({
            "left": word_json(a),
            "right": word_json(b),
            "coeff": c.to_string(),
        })).collect::<Vec<_>>(),
    })
}

/// The natural Hopf algebra `N·O` of an operad `O`.
#[derive(Debug, Clone)]
pub struct NaturalHopf<O> {
    operad: O,
}

impl<O: Operad> NaturalHopf<O> {
    pub fn new(operad: O) -> Self {
        NaturalHopf { operad }
    }

    pub fn operad(&self) -> &O {
        &self.operad
    }

    /// `E_w`; fails if `w` contains a unit letter.
    pub fn element(&self, w: &Word<O::Elem>) -> Result<HopfElement<O::Elem>> {
        if let Some(x) = w.iter().find(|x| self.operad.is_unit(x)) {
            return Err(Error::domain(format!("word is not reduced: contains the unit {x}")));
        }
        Ok(HopfElement {
            basis: Basis::E,
            terms: LinComb::single(w.clone()),
        })
    }

    /// Coproduct of a single operad element.
    pub fn letter_coproduct(&self, x: &O::Elem) -> Result<TensorElement<O::Elem>> {
        let mut out = LinComb::zero();
        if self.operad.is_unit(x) {
            out.add_term((Word::empty(), Word::empty()), Coeff::one());
            return Ok(out);
        }
        for fac in self.operad.factorizations(x)? {
            let left = self.operad.reduce_word(std::slice::from_ref(&fac.outer));
            let right = self.operad.reduce_word(&fac.inner);
            out.add_term((left, right), Coeff::one());
        }
        Ok(out)
    }

    fn word_coproduct(
        &self,
        w: &Word<O::Elem>,
        memo: &mut HashMap<O::Elem, TensorElement<O::Elem>>,
    ) -> Result<TensorElement<O::Elem>> {
        let mut acc: TensorElement<O::Elem> = LinComb::single((Word::empty(), Word::empty()));
        for x in w {
            if !memo.contains_key(x) {
                let d = self.letter_coproduct(x)?;
                memo.insert(x.clone(), d);
            }
            acc = tensor_product(&acc, &memo[x]);
        }
        Ok(acc)
    }

    pub fn coproduct(&self, x: &HopfElement<O::Elem>) -> Result<TensorElement<O::Elem>> {
        require_e(x)?;
        let mut memo = HashMap::new();
        let mut out = LinComb::zero();
        for (w, c) in x.terms() {
            out.add_assign_scaled(&self.word_coproduct(w, &mut memo)?, c);
        }
        Ok(out)
    }

    /// Coefficient of `E_ε`.
    pub fn counit(&self, x: &HopfElement<O::Elem>) -> Result<Coeff> {
        require_e(x)?;
        Ok(x.coeff(&Word::empty()))
    }

    pub fn antipode(&self, x: &HopfElement<O::Elem>) -> Result<HopfElement<O::Elem>> {
        require_e(x)?;
        let mut memo = HashMap::new();
        let mut delta_memo = HashMap::new();
        let mut out = LinComb::zero();
        for (w, c) in x.terms() {
            let s = self.word_antipode(w, &mut memo, &mut delta_memo)?;
            out.add_assign_scaled(&s, c);
        }
        Ok(HopfElement {
            basis: Basis::E,
            terms: out,
        })
    }

    /// `S(w) = -Σ S(a)·b` over the terms `(a, b) ≠ (w, ε)` of `Δ E_w`.
    fn word_antipode(
        &self,
        w: &Word<O::Elem>,
        memo: &mut HashMap<Word<O::Elem>, LinComb<Word<O::Elem>>>,
        delta_memo: &mut HashMap<O::Elem, TensorElement<O::Elem>>,
    ) -> Result<LinComb<Word<O::Elem>>> {
        if let Some(hit) = memo.get(w) {
            return Ok(hit.clone());
        }
        if w.is_empty() {
            return Ok(LinComb::single(Word::empty()));
        }
        let delta = self.word_coproduct(w, delta_memo)?;
        let lead = delta.coeff(&(w.clone(), Word::empty()));
        // The leading coefficient is always 1, so no division is needed.
        if !lead.is_one() {
            return Err(Error::domain(format!(
                "coefficient of E_w ⊗ E_ε is {lead}, antipode would need division"
            )));
        }
        let mut acc = LinComb::zero();
        for ((a, b), c) in &delta {
            if a == w && b.is_empty() {
                continue;
            }
            let sa = self.word_antipode(a, memo, delta_memo)?;
            acc.add_assign_scaled(&concat_product(&sa, &LinComb::single(b.clone())), c);
        }
        let result = acc.scale(&-Coeff::one());
        memo.insert(w.clone(), result.clone());
        Ok(result)
    }

    pub fn degree_components(
        &self,
        x: &HopfElement<O::Elem>,
    ) -> BTreeMap<usize, HopfElement<O::Elem>> {
        let mut out: BTreeMap<usize, HopfElement<O::Elem>> = BTreeMap::new();
        for (w, c) in x.terms() {
            out.entry(self.operad.word_degree(w))
                .or_insert_with(|| HopfElement::zero(x.basis))
                .terms
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// `(Δ ⊗ id)` applied to a tensor.
    pub fn coproduct_left(
        &self,
        t: &TensorElement<O::Elem>,
    ) -> Result<LinComb<(Word<O::Elem>, Word<O::Elem>, Word<O::Elem>)>> {
        let mut memo = HashMap::new();
        let mut out = LinComb::zero();
        for ((a, b), c) in t {
            for ((p, q), d) in &self.word_coproduct(a, &mut memo)? {
                out.add_term((p.clone(), q.clone(), b.clone()), c * d);
            }
        }
        Ok(out)
    }

    /// `(id ⊗ Δ)` applied to a tensor.
    pub fn coproduct_right(
        &self,
        t: &TensorElement<O::Elem>,
    ) -> Result<LinComb<(Word<O::Elem>, Word<O::Elem>, Word<O::Elem>)>> {
        let mut memo = HashMap::new();
        let mut out = LinComb::zero();
        for ((a, b), c) in t {
            for ((p, q), d) in &self.word_coproduct(b, &mut memo)? {
                out.add_term((a.clone(), p.clone(), q.clone()), c * d);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{AsElem, AssociativeOperad, FreeOperad};
    use crate::signature::Signature;

    fn alpha_word(ns: &[usize]) -> Word<AsElem> {
        ns.iter().map(|&n| AsElem::new(n).unwrap()).collect()
    }

    #[test]
    fn coproduct_of_alpha_4() {
        let h = NaturalHopf::new(AssociativeOperad);
        let d = h.coproduct(&h.element(&alpha_word(&[4])).unwrap()).unwrap();
        let expect: TensorElement<AsElem> = [
            ((alpha_word(&[]), alpha_word(&[4])), 1),
            ((alpha_word(&[2]), alpha_word(&[3])), 2),
            ((alpha_word(&[2]), alpha_word(&[2, 2])), 1),
            ((alpha_word(&[3]), alpha_word(&[2])), 3),
            ((alpha_word(&[4]), alpha_word(&[])), 1),
        ]
        .into_iter()
        .map(|(k, c)| (k, Coeff::from(c)))
        .collect();
        assert_eq!(d, expect);
    }

    #[test]
    fn unit_and_counit() {
        let h = NaturalHopf::new(AssociativeOperad);
        let one = HopfElement::unit();
        let d = h.coproduct(&one).unwrap();
        assert_eq!(d, LinComb::single((Word::empty(), Word::empty())));
        assert_eq!(h.counit(&one).unwrap(), Coeff::one());
        assert!(h.counit(&h.element(&alpha_word(&[4])).unwrap()).unwrap().is_zero());
        let x = one
            .scale(&Coeff::from(3))
            .add(&h.element(&alpha_word(&[2])).unwrap().scale(&Coeff::from(2)))
            .unwrap();
        assert_eq!(h.counit(&x).unwrap(), Coeff::from(3));
    }

    #[test]
    fn antipode_examples() {
        let h = NaturalHopf::new(AssociativeOperad);
        assert_eq!(h.antipode(&HopfElement::unit()).unwrap(), HopfElement::unit());
        let a3 = h.element(&alpha_word(&[3])).unwrap();
        let expect = a3
            .scale(&Coeff::from(-1))
            .add(&h.element(&alpha_word(&[2, 2])).unwrap().scale(&Coeff::from(2)))
            .unwrap();
        assert_eq!(h.antipode(&a3).unwrap(), expect);

        let free = NaturalHopf::new(FreeOperad::new(Signature::parse_inline("a:1,b:2").unwrap()));
        let g = free.element(&free.operad().parse_forest("b[*,*]").unwrap()).unwrap();
        assert_eq!(free.antipode(&g).unwrap(), g.scale(&Coeff::from(-1)));
    }

    #[test]
    fn product_concatenates_and_checks_basis() {
        let h = NaturalHopf::new(AssociativeOperad);
        let x = h.element(&alpha_word(&[2])).unwrap();
        let y = h.element(&alpha_word(&[3])).unwrap();
        assert_eq!(x.product(&y).unwrap(), h.element(&alpha_word(&[2, 3])).unwrap());
        assert_eq!(HopfElement::unit().product(&x).unwrap(), x);
        let f = HopfElement::from_terms(Basis::F, LinComb::single(alpha_word(&[2])));
        assert!(matches!(x.product(&f), Err(Error::BasisMismatch { .. })));
        assert!(h.element(&alpha_word(&[1])).is_err());
    }

    #[test]
    fn degree_components_split() {
        let free = NaturalHopf::new(FreeOperad::new(Signature::parse_inline("a:1").unwrap()));
        let a = free.element(&free.operad().parse_forest("a[*]").unwrap()).unwrap();
        let aa = free.element(&free.operad().parse_forest("a[a[*]]").unwrap()).unwrap();
        let parts = free.degree_components(&a.add(&aa).unwrap());
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1], a);
        assert_eq!(parts[&2], aa);
        let unit_parts = free.degree_components(&HopfElement::unit());
        assert_eq!(unit_parts[&0], HopfElement::unit());
    }

    #[test]
    fn display_formats() {
        let h = NaturalHopf::new(AssociativeOperad);
        let d = h.coproduct(&h.element(&alpha_word(&[3])).unwrap()).unwrap();
        assert_eq!(
            format_tensor(&d, Basis::E),
            "E() ⊗ E(alpha_3) + 2 E(alpha_2) ⊗ E(alpha_2) + E(alpha_3) ⊗ E()"
        );
        let s = h.antipode(&h.element(&alpha_word(&[3])).unwrap()).unwrap();
        assert_eq!(s.to_string(), "2 E(alpha_2 alpha_2) - E(alpha_3)");
    }
}
