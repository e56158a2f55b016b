//! Fundamental (F) and homogeneous (H) bases of the free natural Hopf algebra.
//!
//! With `≼` the easterly-wind order and `μ` its Möbius function,
//!
//! * `F_f = Σ_{f ≼ f′} μ(f, f′) E_{f′}`, equivalently `E_f = Σ_{f ≼ f′} F_{f′}`;
//! * `H_f = Σ_{f′ ≼ f} F_{f′}`.
//!
//! Products become `H_f · H_g = H_{f ∖ g}` (the *under* forest) and
//! `F_f · F_g = Σ F_h` over `f ∕ g ≼ h ≼ f ∖ g`.
//!
//! ```
//! use nhopf::bases::under;
//! use nhopf::Forest;
//!
//! let f = Forest::parse("c[*,*,*]").unwrap();
//! let g = Forest::parse("a[*] b[*,*]").unwrap();
//! assert_eq!(under(&f, &g).to_string(), "c[a[*],b[*,*],*]");
//! ```

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hopf::{concat_product, Basis, HopfElement};
use crate::lattice::EasterlyWind;
use crate::linear::{Coeff, LinComb};
use crate::signature::Signature;
use crate::term::{Forest, Term};
use crate::word::Word;

/// 1-based indices of the leaves of `t` not followed by any internal node in
/// preorder.
pub fn extremal_leaves(t: &Term) -> Result<Vec<usize>> {
    if t.is_leaf() {
        return Err(Error::domain("a bare leaf has no extremal leaves"));
    }
    // Preorder events: true for a leaf, false for an internal node.
    fn go(t: &Term, out: &mut Vec<bool>) {
        out.push(t.is_leaf());
        for c in t.children() {
            go(c, out);
        }
    }
    let mut events = Vec::new();
    go(t, &mut events);
    let last_node = events.iter().rposition(|leaf| !leaf).expect("not a leaf");
    let mut out = Vec::new();
    let mut leaf_index = 0;
    for (pos, &is_leaf) in events.iter().enumerate() {
        if is_leaf {
            leaf_index += 1;
            if pos > last_node {
                out.push(leaf_index);
            }
        }
    }
    Ok(out)
}

/// `f ∕ g`: concatenation.
pub fn over(f: &Forest, g: &Forest) -> Forest {
    f.concat(g)
}

/// `f ∖ g`: the terms of `g` are grafted, in order, onto the extremal leaves
/// of the last term of `f`; terms of `g` left over stay as trailing terms.
pub fn under(f: &Forest, g: &Forest) -> Forest {
    let (Some(last), false) = (f.last(), g.is_empty()) else {
        return f.concat(g);
    };
    let extremal = extremal_leaves(last).expect("reduced forests have no bare leaves");
    let used = extremal.len().min(g.len());
    let grafted = last.substitute_leaves(&mut |k| {
        match extremal[..used].iter().position(|&e| e == k + 1) {
            Some(i) => g.letters()[i].clone(),
            None => Term::Leaf,
        }
    });
    let mut terms = f.letters()[..f.len() - 1].to_vec();
    terms.push(grafted);
    terms.extend_from_slice(&g.letters()[used..]);
    Word::new(terms)
}

/// Conversions and products among the E, F and H bases.
#[derive(Debug, Clone)]
pub struct Bases {
    wind: EasterlyWind,
}

impl Bases {
    pub fn new(sig: Signature) -> Result<Self> {
        Ok(Bases {
            wind: EasterlyWind::new(sig)?,
        })
    }

    pub fn wind(&self) -> &EasterlyWind {
        &self.wind
    }

    /// `F_f` expanded in the E-basis.
    pub fn f_to_e(&self, f: &Forest) -> Result<LinComb<Forest>> {
        let up = self.wind.up_set(f)?;
        let i = up.index_of(f).expect("f lies in its own up-set");
        let mu = up.moebius_from(i);
        Ok(up
            .elements()
            .iter()
            .zip(mu)
            .map(|(g, m)| (g.clone(), Coeff::from(m)))
            .collect())
    }

    /// `E_f` expanded in the F-basis.
    pub fn e_to_f(&self, f: &Forest) -> Result<LinComb<Forest>> {
        let up = self.wind.up_set(f)?;
        Ok(up.elements().iter().map(|g| (g.clone(), Coeff::from(1))).collect())
    }

    /// `H_f` expanded in the F-basis.
    pub fn h_to_f(&self, f: &Forest) -> Result<LinComb<Forest>> {
        let down = self.wind.down_set(f)?;
        Ok(down.elements().iter().map(|g| (g.clone(), Coeff::from(1))).collect())
    }

    /// `F_f` expanded in the H-basis.
    pub fn f_to_h(&self, f: &Forest) -> Result<LinComb<Forest>> {
        let down = self.wind.down_set(f)?;
        let j = down.index_of(f).expect("f lies in its own down-set");
        let mu = down.moebius_to(j);
        Ok(down
            .elements()
            .iter()
            .zip(mu)
            .map(|(g, m)| (g.clone(), Coeff::from(m)))
            .collect())
    }

    fn step(&self, terms: &LinComb<Forest>, map: fn(&Self, &Forest) -> Result<LinComb<Forest>>) -> Result<LinComb<Forest>> {
        let mut out = LinComb::zero();
        for (f, c) in terms {
            out.add_assign_scaled(&map(self, f)?, c);
        }
        Ok(out)
    }

    /// Re-expresses `x` in the basis `to`.
    pub fn convert(&self, x: &HopfElement<Term>, to: Basis) -> Result<HopfElement<Term>> {
        use Basis::*;
        let t = x.terms();
        let terms = match (x.basis(), to) {
            (a, b) if a == b => t.clone(),
            (E, F) => self.step(t, Self::e_to_f)?,
            (F, E) => self.step(t, Self::f_to_e)?,
            (H, F) => self.step(t, Self::h_to_f)?,
            (F, H) => self.step(t, Self::f_to_h)?,
            (E, H) => self.step(&self.step(t, Self::e_to_f)?, Self::f_to_h)?,
            (H, E) => self.step(&self.step(t, Self::h_to_f)?, Self::f_to_e)?,
            _ => unreachable!("all basis pairs are covered"),
        };
        Ok(HopfElement::from_terms(to, terms))
    }

    /// `F_f · F_g` as a sum of F-basis elements.
    pub fn f_product(&self, f: &Forest, g: &Forest) -> Result<LinComb<Forest>> {
        let lo = over(f, g);
        let hi = under(f, g);
        let up: BTreeSet<Forest> = self.wind.up_set(&lo)?.elements().iter().cloned().collect();
        let down = self.wind.down_set(&hi)?;
        if !up.contains(&hi) {
            return Err(Error::domain(format!("`{lo}` is not below `{hi}`")));
        }
        Ok(down
            .elements()
            .iter()
            .filter(|h| up.contains(*h))
            .map(|h| (h.clone(), Coeff::from(1)))
            .collect())
    }

    /// Product of two elements given in the same basis, computed by the
    /// basis-specific rule.
    pub fn product(&self, x: &HopfElement<Term>, y: &HopfElement<Term>) -> Result<HopfElement<Term>> {
        if x.basis() != y.basis() {
            return Err(Error::BasisMismatch {
                expected: x.basis().to_string(),
                found: y.basis().to_string(),
            });
        }
        let terms = match x.basis() {
            Basis::E => concat_product(x.terms(), y.terms()),
            Basis::H => {
                let mut out = LinComb::zero();
                for (f, a) in x.terms() {
                    for (g, b) in y.terms() {
                        out.add_term(under(f, g), a * b);
                    }
                }
                out
            }
            Basis::F => {
                let mut out = LinComb::zero();
                for (f, a) in x.terms() {
                    for (g, b) in y.terms() {
                        out.add_assign_scaled(&self.f_product(f, g)?, &(a * b));
                    }
                }
                out
            }
        };
        Ok(HopfElement::from_terms(x.basis(), terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Forest {
        Forest::parse(s).unwrap()
    }

    fn t(s: &str) -> Term {
        Term::parse(s).unwrap()
    }

    fn bases() -> Bases {
        Bases::new(Signature::parse_inline("a:1,b:2,c:3").unwrap()).unwrap()
    }

    fn comb(items: &[(&str, i64)]) -> LinComb<Forest> {
        items.iter().map(|(s, c)| (f(s), Coeff::from(*c))).collect()
    }

    #[test]
    fn extremal_leaf_examples() {
        assert_eq!(extremal_leaves(&t("c[*,*,*]")).unwrap(), vec![1, 2, 3]);
        assert_eq!(extremal_leaves(&t("c[*,a[*],*]")).unwrap(), vec![2, 3]);
        assert_eq!(extremal_leaves(&t("b[*,a[*]]")).unwrap(), vec![2]);
        assert!(extremal_leaves(&Term::Leaf).is_err());
    }

    #[test]
    fn under_and_over() {
        assert_eq!(under(&f("c[*,*,*]"), &f("a[*] b[*,*]")), f("c[a[*],b[*,*],*]"));
        assert_eq!(
            under(&under(&f("c[*,*,*]"), &f("a[*]")), &f("b[*,*]")),
            f("c[a[b[*,*]],*,*]")
        );
        assert_eq!(under(&Forest::empty(), &f("a[*]")), f("a[*]"));
        assert_eq!(under(&f("a[*]"), &Forest::empty()), f("a[*]"));
        assert_eq!(under(&f("b[*,a[*]]"), &f("a[*] a[*]")), f("b[*,a[a[*]]] a[*]"));
        assert_eq!(over(&f("c[*,*,*]"), &f("a[*] b[*,*]")), f("c[*,*,*] a[*] b[*,*]"));
    }

    #[test]
    fn conversion_examples() {
        let b = bases();
        assert_eq!(
            b.f_to_e(&f("c[*,a[*],*] b[*,*]")).unwrap(),
            comb(&[
                ("c[*,a[*],*] b[*,*]", 1),
                ("c[*,a[*],b[*,*]]", -1),
                ("c[a[*],*,*] b[*,*]", -1),
                ("c[a[*],*,b[*,*]]", 1),
            ])
        );
        assert_eq!(
            b.h_to_f(&f("c[*,a[*],*] b[*,*]")).unwrap(),
            comb(&[
                ("c[*,*,*] a[*] b[*,*]", 1),
                ("c[*,*,a[*]] b[*,*]", 1),
                ("c[*,a[*],*] b[*,*]", 1),
            ])
        );
        assert_eq!(b.f_to_e(&f("a[*] a[*]")).unwrap(), comb(&[("a[*] a[*]", 1), ("a[a[*]]", -1)]));
        assert_eq!(b.f_to_e(&f("b[*,*]")).unwrap(), comb(&[("b[*,*]", 1)]));
    }

    #[test]
    fn product_rules() {
        let b = bases();
        let h = |s: &str| HopfElement::from_terms(Basis::H, LinComb::single(f(s)));
        assert_eq!(b.product(&h("c[*,*,*]"), &h("a[*]")).unwrap(), h("c[a[*],*,*]"));
        let fe = |s: &str| HopfElement::from_terms(Basis::F, LinComb::single(f(s)));
        let p = b.product(&fe("c[*,*,*]"), &fe("a[*] b[*,*]")).unwrap();
        assert_eq!(p.len(), 7);
        assert!(b.product(&fe("a[*]"), &h("a[*]")).is_err());
    }
}
