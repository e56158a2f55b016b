//! The Faà di Bruno family `FdB_{r,s}`: the natural Hopf algebra of the
//! multiset operad on `s` generators of arity `r + 1`, modelled by class sums
//! in the free operad and realized over a level alphabet.
//!
//! ```
//! use nhopf::special::fdb::FdB;
//!
//! let fdb = FdB::new(1, 2).unwrap();
//! let word = fdb.parse_word("{a,a,b} {a}").unwrap();
//! let groups = fdb.expand(&word, 4).unwrap();
//! let coeffs: Vec<String> = groups.iter().map(|g| g.coeff.to_string()).collect();
//! assert_eq!(coeffs, ["4", "4", "4", "1", "1", "1"]);
//! ```

use std::collections::HashMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::hopf::HopfElement;
use crate::linear::{Coeff, LinComb};
use crate::operad::{Multiset, MultisetOperad, Operad};
use crate::quotient::{MasCongruence, Quotient};
use crate::realization::{realize_forest, NCPolynomial, RelatedAlphabet};
use crate::signature::Signature;
use crate::term::{Forest, Term};
use crate::word::Word;

/// Largest supported number of generators (named `a` … `z`).
pub const MAX_GENERATORS: usize = 26;

/// `FdB_{r,s}`.
#[derive(Debug, Clone)]
pub struct FdB {
    r: usize,
    s: usize,
    operad: MultisetOperad,
    quotient: Quotient<MasCongruence>,
}

/// Forests of a class sum sharing one realized polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationGroup {
    /// Smallest forest of the group.
    pub representative: Forest,
    /// Number of forests in the group.
    pub coeff: Coeff,
    pub members: Vec<Forest>,
    pub polynomial: NCPolynomial,
}

impl FdB {
    pub fn new(r: usize, s: usize) -> Result<Self> {
        if s > MAX_GENERATORS {
            return Err(Error::domain(format!("at most {MAX_GENERATORS} generators are supported")));
        }
        let sig = Signature::new((0..s).map(|i| (((b'a' + i as u8) as char).to_string(), r + 1)))?;
        Ok(FdB {
            r,
            s,
            operad: MultisetOperad::new(sig.clone())?,
            quotient: Quotient::new(sig.clone(), MasCongruence::new(sig)?),
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn signature(&self) -> &Signature {
        self.operad.signature()
    }

    pub fn operad(&self) -> &MultisetOperad {
        &self.operad
    }

    pub fn quotient(&self) -> &Quotient<MasCongruence> {
        &self.quotient
    }

    /// Space-separated multisets, e.g. `{a,a,b} {a}`.
    pub fn parse_word(&self, text: &str) -> Result<Word<Multiset>> {
        let w = self.operad.parse_word(text)?;
        if let Some(x) = w.iter().find(|x| x.is_empty()) {
            return Err(Error::domain(format!("`{x}` is the unit; words must be reduced")));
        }
        Ok(w)
    }

    /// A term in the class of `m`: its generators chained through slot 1.
    pub fn representative_term(&self, m: &Multiset) -> Result<Term> {
        let mut acc: Option<Term> = None;
        for name in m.names().iter().rev() {
            let g = Term::corolla(self.signature().get(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?);
            acc = Some(match acc {
                None => g,
                Some(inner) => g.partial_compose(1, &inner)?,
            });
        }
        acc.ok_or_else(|| Error::domain("the empty multiset has no representative"))
    }

    pub fn representative(&self, w: &Word<Multiset>) -> Result<Forest> {
        w.iter().map(|m| self.representative_term(m)).collect()
    }

    /// `E_[w]` in the free operad.
    pub fn class_sum(&self, w: &Word<Multiset>) -> Result<HopfElement<crate::term::Term>> {
        self.quotient.e_class(&self.representative(w)?)
    }

    /// Level alphabet with indices below `bound`.
    pub fn level_alphabet(&self, bound: usize) -> RelatedAlphabet {
        RelatedAlphabet::leveled(self.signature(), bound, str::to_string)
    }

    /// Realizes the class sum of `w` over the level alphabet and groups the
    /// forests of the class by their realized polynomial. Groups are listed
    /// by decreasing size, then by representative.
    pub fn expand(&self, w: &Word<Multiset>, bound: usize) -> Result<Vec<RealizationGroup>> {
        let alphabet = self.level_alphabet(bound);
        let class = self.quotient.class_elements(&self.representative(w)?)?;
        let mut groups: HashMap<NCPolynomial, Vec<Forest>> = HashMap::new();
        for f in class {
            groups.entry(realize_forest(&f, &alphabet)?).or_default().push(f);
        }
        let mut out: Vec<RealizationGroup> = groups
            .into_iter()
            .map(|(polynomial, mut members)| {
                members.sort();
                RealizationGroup {
                    representative: members[0].clone(),
                    coeff: Coeff::from(members.len()),
                    members,
                    polynomial,
                }
            })
            .collect();
        out.sort_by(|a, b| b.coeff.cmp(&a.coeff).then_with(|| a.representative.cmp(&b.representative)));
        Ok(out)
    }

    /// Realized polynomial of the class sum of `w`.
    pub fn realize(&self, w: &Word<Multiset>, bound: usize) -> Result<NCPolynomial> {
        let alphabet = self.level_alphabet(bound);
        let mut out = LinComb::zero();
        for f in self.quotient.class_elements(&self.representative(w)?)? {
            out.add_assign_scaled(&realize_forest(&f, &alphabet)?, &Coeff::one());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_regrouping() {
        let fdb = FdB::new(1, 2).unwrap();
        let w = fdb.parse_word("{a,a,b} {a}").unwrap();
        let groups = fdb.expand(&w, 4).unwrap();
        let sizes: Vec<usize> = groups.iter().map(|g| g.members.len()).collect();
        assert_eq!(sizes, [4, 4, 4, 1, 1, 1]);
        assert_eq!(groups.iter().map(|g| g.members.len()).sum::<usize>(), 15);
    }

    #[test]
    fn signature_profile() {
        let fdb = FdB::new(2, 3).unwrap();
        assert_eq!(fdb.signature().to_string(), "a:3,b:3,c:3");
        assert!(FdB::new(0, 27).is_err());
        assert!(fdb.parse_word("{}").is_err());
    }
}
