//! Word quasi-symmetric functions through their polynomial realization.
//!
//! ```
//! use nhopf::special::wqsym::{pack, wqsym_expansion};
//! use nhopf::Forest;
//!
//! assert_eq!(pack(&[4, 2, 3, 4, 4, 7, 3]).to_string(), "3123342");
//! let f = Forest::parse("b[a[*],b[*,*]]").unwrap();
//! let m: Vec<String> = wqsym_expansion(&f).keys().map(|u| u.to_string()).collect();
//! assert_eq!(m, ["122", "123", "132"]);
//! ```

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linear::{Coeff, LinComb};
use crate::realization::{Letter, NCPolynomial};
use crate::term::Forest;
use crate::word::Word;

/// A word `u` of positive integers with `pack(u) = u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedWord(Vec<usize>);

impl PackedWord {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if pack(&letters).0 != letters {
            return Err(Error::domain(format!(
                "`{}` is not packed",
                letters.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            )));
        }
        Ok(PackedWord(letters))
    }

    /// Digits (`2113`) or comma-separated values (`1,10,2,...`).
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let letters: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::parse(1, format!("bad letter `{x}`"))))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .enumerate()
                .map(|(i, c)| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::parse(i + 1, format!("expected a digit, found `{c}`")))
                })
                .collect::<Result<_>>()?
        };
        PackedWord::new(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct letters.
    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// Digits when every letter is at most 9, otherwise comma-separated.
impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&x| x <= 9) {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// Replaces each letter by the number of distinct letters at most it.
pub fn pack<T: Ord>(w: &[T]) -> PackedWord {
    let distinct: BTreeSet<&T> = w.iter().collect();
    let ranks: Vec<&T> = distinct.into_iter().collect();
    PackedWord(
        w.iter()
            .map(|x| ranks.binary_search(&x).expect("letter present") + 1)
            .collect(),
    )
}

/// `u ⊢ f`: one letter per node, strictly increasing along every edge.
pub fn wqsym_compatible(u: &PackedWord, f: &Forest) -> bool {
    u.len() == f.degree()
        && f.edges()
            .iter()
            .all(|e| u.0[e.parent.0 - 1] < u.0[e.child.0 - 1])
}

/// All packed words of length `n`.
pub fn packed_words(n: usize) -> Vec<PackedWord> {
    fn go(n: usize, acc: &mut Vec<usize>, out: &mut Vec<PackedWord>) {
        if acc.len() == n {
            let max = acc.iter().copied().max().unwrap_or(0);
            let mut seen = vec![false; max + 1];
            for &x in acc.iter() {
                seen[x] = true;
            }
            if seen[1..].iter().all(|&s| s) {
                out.push(PackedWord(acc.clone()));
            }
            return;
        }
        for x in 1..=n {
            acc.push(x);
            go(n, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `E_f = Σ_{u ⊢ f} M_u`, found by labelling nodes in preorder.
pub fn wqsym_expansion(f: &Forest) -> LinComb<PackedWord> {
    let nodes = f.nodes();
    let n = nodes.len();
    let mut out = LinComb::zero();
    fn go(k: usize, nodes: &[crate::term::NodeInfo], acc: &mut Vec<usize>, out: &mut LinComb<PackedWord>) {
        let n = nodes.len();
        if k == n {
            let u = pack(acc);
            if u.0 == *acc {
                out.add_term(u, Coeff::one());
            }
            return;
        }
        let low = nodes[k].parent.map_or(1, |(p, _)| acc[p.0 - 1] + 1);
        for x in low..=n {
            acc.push(x);
            go(k + 1, nodes, acc, out);
            acc.pop();
        }
    }
    go(0, &nodes, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `r_A(M_u)`: all words over the ordered `letters` whose packing is `u`.
pub fn wqsym_realize(u: &PackedWord, letters: &[Letter]) -> NCPolynomial {
    let k = u.max_letter();
    let mut out = NCPolynomial::zero();
    fn choose(start: usize, k: usize, n: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        for i in start..n {
            acc.push(i);
            choose(i + 1, k, n, acc, f);
            acc.pop();
        }
    }
    choose(0, k, letters.len(), &mut Vec::new(), &mut |pick| {
        let w: Word<Letter> = u.0.iter().map(|&x| letters[pick[x - 1]].clone()).collect();
        out.add_term(w, Coeff::one());
    });
    out
}

/// `Σ c r_A(M_u)` for a combination of packed words.
pub fn realize_expansion(x: &LinComb<PackedWord>, letters: &[Letter]) -> NCPolynomial {
    x.map_linear(|u| wqsym_realize(u, letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn seven_nodes() -> Forest {
        Forest::parse("c[a[*],*,b[a[*],*]] b[*,b[a[*],*]]").unwrap()
    }

    #[test]
    fn packing() {
        assert_eq!(pack(&[4, 2, 3, 4, 4, 7, 3]), PackedWord(vec![3, 1, 2, 3, 3, 4, 2]));
        assert_eq!(pack(&[7]), PackedWord(vec![1]));
        assert!(PackedWord::new(vec![1, 3]).is_err());
        assert_eq!(PackedWord::parse("1525346").unwrap().max_letter(), 6);
    }

    #[test]
    fn seven_node_compatibility() {
        for (u, ok) in [("1223123", true), ("1525346", true), ("1111111", false)] {
            assert_eq!(wqsym_compatible(&PackedWord::parse(u).unwrap(), &seven_nodes()), ok, "{u}");
        }
    }

    #[test]
    fn packed_word_counts() {
        let counts: Vec<usize> = (0..5).map(|n| packed_words(n).len()).collect();
        assert_eq!(counts, [1, 1, 3, 13, 75]);
    }

    #[test]
    fn realization_examples() {
        let xy: Vec<Letter> = vec![Arc::from("x"), Arc::from("y")];
        assert_eq!(wqsym_realize(&PackedWord::parse("1").unwrap(), &xy).len(), 2);
        let p = wqsym_realize(&PackedWord::parse("11").unwrap(), &xy);
        let words: Vec<String> = p.keys().map(|w| w.to_string()).collect();
        assert_eq!(words, ["x x", "y y"]);
        let a: Vec<Letter> = (0..4).map(|i| Arc::from(format!("a{i}"))).collect();
        let p = wqsym_realize(&PackedWord::parse("2113").unwrap(), &a);
        let w: Word<Letter> = ["a2", "a1", "a1", "a3"].iter().map(|s| Arc::from(*s)).collect();
        assert_eq!(p.coeff(&w), Coeff::one());
    }
}
