//! Polynomial realizations over forest-like related alphabets.
//!
//! A related alphabet carries a set of roots, one decoration set per
//! generator and one binary relation `⇢_j` per child slot. A word `w` is
//! compatible with a forest `f` when node `i` of `f` can be labelled `w_i`
//! respecting all three kinds of constraint; `r_A(E_f)` is the sum of all
//! compatible words and extends to an algebra morphism.
//!
//! ```
//! use nhopf::realization::{realize_forest, RelatedAlphabet};
//! use nhopf::{Forest, Signature};
//!
//! let sig = Signature::parse_inline("a:1").unwrap();
//! let alphabet = RelatedAlphabet::canonical(&sig, 1, 3);
//! let p = realize_forest(&Forest::parse("a[a[*]]").unwrap(), &alphabet).unwrap();
//! assert_eq!(p.len(), 6);
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::hopf::{write_coeff, Basis, HopfElement};
use crate::linear::{Coeff, LinComb};
use crate::signature::Signature;
use crate::term::{Forest, Term};
use crate::word::Word;

pub type Letter = Arc<str>;

/// A noncommutative polynomial with integer coefficients.
pub type NCPolynomial = LinComb<Word<Letter>>;

/// A finite related alphabet.
///
/// Edge relations are stored for slots `1..=slots`; slots beyond that relate
/// nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatedAlphabet {
    letters: Vec<Letter>,
    index: HashMap<Letter, usize>,
    roots: FixedBitSet,
    decorations: BTreeMap<Letter, FixedBitSet>,
    edges: Vec<Vec<FixedBitSet>>,
}

/// On-disk form of a related alphabet.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphabetFile {
    pub letters: Vec<String>,
    #[serde(default)]
    pub roots: Vec<String>,
    #[serde(default)]
    pub decorations: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub edges: BTreeMap<usize, Vec<(String, String)>>,
}

impl RelatedAlphabet {
    /// An alphabet with the given letters and no relations at all.
    pub fn with_letters<I, S>(letters: I, slots: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<Letter>,
    {
        let letters: Vec<Letter> = letters.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, x) in letters.iter().enumerate() {
            if index.insert(x.clone(), i).is_some() {
                return Err(Error::domain(format!("letter `{x}` listed twice")));
            }
        }
        let n = letters.len();
        Ok(RelatedAlphabet {
            letters,
            index,
            roots: FixedBitSet::with_capacity(n),
            decorations: BTreeMap::new(),
            edges: vec![vec![FixedBitSet::with_capacity(n); n]; slots],
        })
    }

    fn idx(&self, x: &str) -> Result<usize> {
        self.index
            .get(x)
            .copied()
            .ok_or_else(|| Error::domain(format!("unknown letter `{x}`")))
    }

    pub fn add_root(&mut self, x: &str) -> Result<()> {
        let i = self.idx(x)?;
        self.roots.insert(i);
        Ok(())
    }

    pub fn add_decoration(&mut self, g: &str, x: &str) -> Result<()> {
        let i = self.idx(x)?;
        let n = self.letters.len();
        self.decorations
            .entry(Arc::from(g))
            .or_insert_with(|| FixedBitSet::with_capacity(n))
            .insert(i);
        Ok(())
    }

    /// Adds `x ⇢_j y`, growing the slot range if needed.
    pub fn add_edge(&mut self, j: usize, x: &str, y: &str) -> Result<()> {
        if j == 0 {
            return Err(Error::domain("edge slots are numbered from 1"));
        }
        let (a, b) = (self.idx(x)?, self.idx(y)?);
        let n = self.letters.len();
        while self.edges.len() < j {
            self.edges.push(vec![FixedBitSet::with_capacity(n); n]);
        }
        self.edges[j - 1][a].insert(b);
        Ok(())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn slots(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, x: &str) -> bool {
        self.index.contains_key(x)
    }

    /// Position of `x` in the letter list, used as its rank in ordered alphabets.
    pub fn position(&self, x: &str) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn is_root(&self, x: &str) -> bool {
        self.index.get(x).is_some_and(|&i| self.roots.contains(i))
    }

    pub fn in_decoration(&self, g: &str, x: &str) -> bool {
        match (self.decorations.get(g), self.index.get(x)) {
            (Some(set), Some(&i)) => set.contains(i),
            _ => false,
        }
    }

    pub fn related(&self, j: usize, x: &str, y: &str) -> bool {
        match (self.index.get(x), self.index.get(y)) {
            (Some(&a), Some(&b)) if j >= 1 && j <= self.edges.len() => self.edges[j - 1][a].contains(b),
            _ => false,
        }
    }

    pub fn from_file(file: &AlphabetFile) -> Result<Self> {
        let slots = file.edges.keys().copied().max().unwrap_or(0);
        let mut a = RelatedAlphabet::with_letters(file.letters.iter().map(String::as_str), slots)?;
        for x in &file.roots {
            a.add_root(x)?;
        }
        for (g, xs) in &file.decorations {
            for x in xs {
                a.add_decoration(g, x)?;
            }
        }
        for (&j, pairs) in &file.edges {
            for (x, y) in pairs {
                a.add_edge(j, x, y)?;
            }
        }
        Ok(a)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let file: AlphabetFile = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.column(), format!("alphabet file: {e}")))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> AlphabetFile {
        let names = |set: &FixedBitSet| set.ones().map(|i| self.letters[i].to_string()).collect();
        let mut edges = BTreeMap::new();
        for (j, rel) in self.edges.iter().enumerate() {
            let pairs: Vec<(String, String)> = rel
                .iter()
                .enumerate()
                .flat_map(|(a, set)| {
                    set.ones()
                        .map(move |b| (self.letters[a].to_string(), self.letters[b].to_string()))
                })
                .collect();
            if !pairs.is_empty() {
                edges.insert(j + 1, pairs);
            }
        }
        AlphabetFile {
            letters: self.letters.iter().map(|x| x.to_string()).collect(),
            roots: names(&self.roots),
            decorations: self
                .decorations
                .iter()
                .map(|(g, set)| (g.to_string(), names(set)))
                .collect(),
            edges,
        }
    }

    /// Truncation of the canonical alphabet: letters `g:u` for every
    /// generator `g` and address `u` of length at most `max_len` with entries
    /// at most `max(max_label, max arity)`. The empty address prints as `g:`.
    pub fn canonical(sig: &Signature, max_label: usize, max_len: usize) -> Self {
        let bound = max_label.max(sig.max_arity());
        let mut addresses: Vec<Vec<usize>> = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|u: &Vec<usize>| {
                    (0..=bound).map(move |x| {
                        let mut v = u.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
            addresses.extend(layer.iter().cloned());
        }
        let address_name = |u: &[usize]| {
            u.iter().map(ToString::to_string).collect::<Vec<_>>().join(".")
        };
        let mut letters = Vec::new();
        for g in sig.generators() {
            for u in &addresses {
                letters.push(format!("{}:{}", g.name, address_name(u)));
            }
        }
        let mut a = RelatedAlphabet::with_letters(letters, bound).expect("distinct letters");
        let positions: HashMap<Vec<usize>, usize> =
            addresses.iter().enumerate().map(|(i, u)| (u.clone(), i)).collect();
        let per_gen = addresses.len();
        for (gi, g) in sig.generators().iter().enumerate() {
            for (ui, u) in addresses.iter().enumerate() {
                let me = gi * per_gen + ui;
                if u.iter().all(|&x| x == 0) {
                    a.roots.insert(me);
                }
                let n = a.letters.len();
                a.decorations
                    .entry(g.name.clone())
                    .or_insert_with(|| FixedBitSet::with_capacity(n))
                    .insert(me);
                for j in 1..=bound {
                    let mut v = u.clone();
                    v.push(j);
                    while v.len() <= max_len {
                        let vi = positions[&v];
                        for gj in 0..sig.len() {
                            a.edges[j - 1][me].insert(gj * per_gen + vi);
                        }
                        v.push(0);
                    }
                }
            }
        }
        a
    }

    /// A totally ordered alphabet in which every letter is a root, carries
    /// every decoration, and `x ⇢_j y` iff `x` comes strictly before `y`.
    pub fn ordered<S: Into<Letter>>(sig: &Signature, names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut a = RelatedAlphabet::with_letters(names, sig.max_arity())?;
        let n = a.len();
        a.roots.insert_range(..);
        for g in sig.generators() {
            let mut all = FixedBitSet::with_capacity(n);
            all.insert_range(..);
            a.decorations.insert(g.name.clone(), all);
        }
        for rel in &mut a.edges {
            for (x, set) in rel.iter_mut().enumerate() {
                set.insert_range(x + 1..);
            }
        }
        Ok(a)
    }

    /// Level alphabet: letters `c_i` for every group `c` and `0 ≤ i < bound`,
    /// all roots; generator `g` is decorated by the letters of `group(g)`;
    /// `c_i ⇢_j c′_{i′}` iff `i < i′`.
    pub fn leveled(sig: &Signature, bound: usize, group: impl Fn(&str) -> String) -> Self {
        let mut groups: Vec<String> = sig.generators().iter().map(|g| group(&g.name)).collect();
        groups.sort();
        groups.dedup();
        let letters: Vec<(usize, String)> = groups
            .iter()
            .flat_map(|c| (0..bound).map(move |i| (i, format!("{c}_{i}"))))
            .collect();
        let mut a = RelatedAlphabet::with_letters(letters.iter().map(|(_, s)| s.as_str()), sig.max_arity())
            .expect("distinct letters");
        a.roots.insert_range(..);
        for g in sig.generators() {
            let c = group(&g.name);
            for i in 0..bound {
                a.add_decoration(&g.name, &format!("{c}_{i}")).expect("letter exists");
            }
        }
        for rel in &mut a.edges {
            for (x, (lx, _)) in letters.iter().enumerate() {
                for (y, (ly, _)) in letters.iter().enumerate() {
                    if lx < ly {
                        rel[x].insert(y);
                    }
                }
            }
        }
        a
    }

    /// Every relation is drawn independently with probability 1/2.
    pub fn random(sig: &Signature, letters: usize, prefix: &str, rng: &mut impl Rng) -> Self {
        let names: Vec<String> = (0..letters).map(|i| format!("{prefix}{i}")).collect();
        let mut a = RelatedAlphabet::with_letters(names, sig.max_arity()).expect("distinct letters");
        for i in 0..letters {
            if rng.gen_bool(0.5) {
                a.roots.insert(i);
            }
        }
        for g in sig.generators() {
            let mut set = FixedBitSet::with_capacity(letters);
            for i in 0..letters {
                if rng.gen_bool(0.5) {
                    set.insert(i);
                }
            }
            a.decorations.insert(g.name.clone(), set);
        }
        for rel in &mut a.edges {
            for set in rel.iter_mut() {
                for y in 0..letters {
                    if rng.gen_bool(0.5) {
                        set.insert(y);
                    }
                }
            }
        }
        a
    }

    /// `A ⧺ A′`: both alphabets side by side, plus `x ⇢_j y` for every
    /// `x ∈ A`, every slot `j` and every root `y` of `A′`.
    pub fn disjoint_sum(&self, other: &RelatedAlphabet) -> Result<Self> {
        if let Some(x) = other.letters.iter().find(|x| self.contains(x)) {
            return Err(Error::domain(format!("letter `{x}` occurs in both alphabets")));
        }
        let n = self.len();
        let slots = self.slots().max(other.slots());
        let mut a = RelatedAlphabet::with_letters(
            self.letters.iter().chain(&other.letters).cloned(),
            slots,
        )?;
        for i in self.roots.ones() {
            a.roots.insert(i);
        }
        for i in other.roots.ones() {
            a.roots.insert(n + i);
        }
        let total = a.len();
        for (src, offset) in [(self, 0), (other, n)] {
            for (g, set) in &src.decorations {
                let dst = a
                    .decorations
                    .entry(g.clone())
                    .or_insert_with(|| FixedBitSet::with_capacity(total));
                for i in set.ones() {
                    dst.insert(offset + i);
                }
            }
            for (j, rel) in src.edges.iter().enumerate() {
                for (x, set) in rel.iter().enumerate() {
                    for y in set.ones() {
                        a.edges[j][offset + x].insert(offset + y);
                    }
                }
            }
        }
        for rel in &mut a.edges {
            for set in rel.iter_mut().take(n) {
                for y in other.roots.ones() {
                    set.insert(n + y);
                }
            }
        }
        Ok(a)
    }

    /// The same alphabet with every letter prefixed.
    pub fn renamed(&self, prefix: &str) -> Self {
        let mut a = self.clone();
        a.letters = self.letters.iter().map(|x| Arc::from(format!("{prefix}{x}"))).collect();
        a.index = a.letters.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        a
    }
}

/// Whether `w` labels the nodes of `f` compatibly.
pub fn compatible(w: &[Letter], f: &Forest, a: &RelatedAlphabet) -> bool {
    let nodes = f.nodes();
    if w.len() != nodes.len() {
        return false;
    }
    nodes.iter().all(|n| {
        let x = &w[n.id.0 - 1];
        a.in_decoration(&n.label, x)
            && match n.parent {
                None => a.is_root(x),
                Some((p, j)) => a.related(j, &w[p.0 - 1], x),
            }
    })
}

/// `r_A(E_f)`: all compatible words, found node by node in preorder.
pub fn realize_forest(f: &Forest, a: &RelatedAlphabet) -> Result<NCPolynomial> {
    let nodes = f.nodes();
    let n = a.len();
    let empty = FixedBitSet::with_capacity(n);
    // Candidates ignoring the parent: roots/decorations.
    let base: Vec<FixedBitSet> = nodes
        .iter()
        .map(|node| {
            let mut set = a.decorations.get(&node.label).unwrap_or(&empty).clone();
            if node.parent.is_none() {
                set.intersect_with(&a.roots);
            }
            set
        })
        .collect();
    let mut out = NCPolynomial::zero();
    let mut chosen = vec![0usize; nodes.len()];
    fn go(
        k: usize,
        nodes: &[crate::term::NodeInfo],
        base: &[FixedBitSet],
        a: &RelatedAlphabet,
        chosen: &mut Vec<usize>,
        out: &mut NCPolynomial,
    ) {
        if k == nodes.len() {
            let w: Word<Letter> = chosen.iter().map(|&i| a.letters[i].clone()).collect();
            out.add_term(w, Coeff::one());
            return;
        }
        let mut cand = base[k].clone();
        if let Some((p, j)) = nodes[k].parent {
            match a.edges.get(j - 1) {
                Some(rel) => cand.intersect_with(&rel[chosen[p.0 - 1]]),
                None => return,
            }
        }
        for x in cand.ones() {
            chosen[k] = x;
            go(k + 1, nodes, base, a, chosen, out);
        }
    }
    go(0, &nodes, &base, a, &mut chosen, &mut out);
    Ok(out)
}

/// `r_A` on an E-basis element.
pub fn realize(x: &HopfElement<Term>, a: &RelatedAlphabet) -> Result<NCPolynomial> {
    if x.basis() != Basis::E {
        return Err(Error::BasisMismatch {
            expected: "E".into(),
            found: x.basis().to_string(),
        });
    }
    let mut out = NCPolynomial::zero();
    for (f, c) in x.terms() {
        out.add_assign_scaled(&realize_forest(f, a)?, c);
    }
    Ok(out)
}

/// `θ(w) = w|_A ⊗ w|_{A′}` where `in_left` decides membership in `A`.
pub fn theta_split(p: &NCPolynomial, in_left: impl Fn(&Letter) -> bool) -> LinComb<(Word<Letter>, Word<Letter>)> {
    p.map_keys(|w| {
        let (l, r): (Vec<Letter>, Vec<Letter>) = w.iter().cloned().partition(|x| in_left(x));
        (Word::new(l), Word::new(r))
    })
}

/// `(r_A ⊗ r_{A′})` applied to a tensor of forests.
pub fn realize_tensor(
    t: &LinComb<(Forest, Forest)>,
    left: &RelatedAlphabet,
    right: &RelatedAlphabet,
) -> Result<LinComb<(Word<Letter>, Word<Letter>)>> {
    let mut out = LinComb::zero();
    for ((f, g), c) in t {
        let pf = realize_forest(f, left)?;
        let pg = realize_forest(g, right)?;
        for (u, a) in &pf {
            for (v, b) in &pg {
                out.add_term((u.clone(), v.clone()), c * a * b);
            }
        }
    }
    Ok(out)
}

pub fn polynomial_to_json(p: &NCPolynomial) -> serde_json::Value {
    json!({
        "format_version": 1,
        "monomials": p.iter().map(|(w, c)| json!({
            "word": w.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "coeff": c.to_string(),
        })).collect::<Vec<_>>(),
    })
}

/// Text rendering `c x y + ...`; the empty word prints as `1`.
pub fn format_polynomial(p: &NCPolynomial) -> String {
    struct Show<'a>(&'a NCPolynomial);
    impl fmt::Display for Show<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.0.is_zero() {
                return f.write_str("0");
            }
            for (i, (w, c)) in self.0.iter().enumerate() {
                if w.is_empty() {
                    // A bare constant must print its value even when it is ±1.
                    match (i == 0, c.sign()) {
                        (true, _) => write!(f, "{c}")?,
                        (false, num_bigint::Sign::Minus) => write!(f, " - {}", -c)?,
                        (false, _) => write!(f, " + {c}")?,
                    }
                    continue;
                }
                write_coeff(f, c, i == 0)?;
                write!(f, "{w}")?;
            }
            Ok(())
        }
    }
    Show(p).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn letters(s: &str) -> Vec<Letter> {
        s.split_whitespace().map(Arc::from).collect()
    }

    #[test]
    fn canonical_small_truncations() {
        let sig = Signature::parse_inline("a:1,b:2").unwrap();
        let a = RelatedAlphabet::canonical(&sig, 0, 0);
        assert_eq!(a.letters(), &letters("a: b:")[..]);
        assert!(a.is_root("a:") && a.is_root("b:"));
        let a = RelatedAlphabet::canonical(&sig, 1, 2);
        assert!(a.related(1, "a:", "b:1"));
        assert!(a.related(1, "a:", "a:1.0"));
        assert!(a.related(2, "b:0", "a:0.2"));
        assert!(!a.related(1, "a:", "a:0.1"));
        assert!(a.is_root("b:0.0"));
        assert!(!a.is_root("b:1"));
        assert!(a.in_decoration("b", "b:1.2"));
        assert!(!a.in_decoration("a", "b:1.2"));
    }

    #[test]
    fn realize_single_node() {
        let mut a = RelatedAlphabet::with_letters(["x", "y", "z"], 1).unwrap();
        a.add_root("x").unwrap();
        a.add_root("y").unwrap();
        a.add_decoration("a", "y").unwrap();
        a.add_decoration("a", "z").unwrap();
        let p = realize_forest(&Forest::parse("a[*]").unwrap(), &a).unwrap();
        assert_eq!(p, NCPolynomial::single(Word::new(letters("y"))));
        let p = realize_forest(&Forest::empty(), &a).unwrap();
        assert_eq!(p, NCPolynomial::single(Word::empty()));
    }

    #[test]
    fn theta_splits_subwords() {
        let p = NCPolynomial::single(Word::new(letters("p r q")));
        let t = theta_split(&p, |x| &**x != "r");
        assert_eq!(t, LinComb::single((Word::new(letters("p q")), Word::new(letters("r")))));
    }

    #[test]
    fn disjoint_sum_cross_edges() {
        let sig = Signature::parse_inline("a:1,b:2").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a = RelatedAlphabet::random(&sig, 3, "x", &mut rng);
        let b = RelatedAlphabet::random(&sig, 3, "y", &mut rng);
        let s = a.disjoint_sum(&b).unwrap();
        assert_eq!(s.len(), 6);
        for x in a.letters() {
            for y in b.letters() {
                for j in 1..=2 {
                    assert_eq!(s.related(j, x, y), b.is_root(y));
                    assert!(!s.related(j, y, x));
                }
            }
        }
        assert!(a.disjoint_sum(&a).is_err());
        let empty = RelatedAlphabet::with_letters(Vec::<String>::new(), 0).unwrap();
        assert_eq!(a.disjoint_sum(&empty).unwrap(), a);
    }

    #[test]
    fn json_round_trip() {
        let sig = Signature::parse_inline("a:1,b:2").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let a = RelatedAlphabet::random(&sig, 3, "x", &mut rng);
        let text = serde_json::to_string(&a.to_file()).unwrap();
        let back = RelatedAlphabet::parse_json(&text).unwrap();
        assert_eq!(back.to_file().edges, a.to_file().edges);
        assert_eq!(back.to_file().roots, a.to_file().roots);
    }

    #[test]
    fn polynomial_text() {
        let mut p = NCPolynomial::single(Word::empty());
        p.add_term(Word::new(letters("x y")), Coeff::from(-2));
        assert_eq!(format_polynomial(&p), "1 - 2 x y");
    }
}
