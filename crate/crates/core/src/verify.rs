//! Exhaustive and randomized checks of the algebraic identities, bounded by
//! degree. Each check returns a [`SuiteReport`] rather than panicking, so the
//! CLI can print a table and tests can assert on it.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bases::{over, under, Bases};
use crate::error::Result;
use crate::hopf::{concat_product, tensor_product, Basis, HopfElement, NaturalHopf, TensorElement};
use crate::lattice::EasterlyWind;
use crate::linear::{Coeff, LinComb};
use crate::operad::{AsElem, AssociativeOperad, FreeOperad, Multiset, MultisetOperad, Operad};
use crate::quotient::{Congruence, MasCongruence, Quotient};
use crate::realization::{realize_forest, realize_tensor, theta_split, Letter, NCPolynomial, RelatedAlphabet};
use crate::signature::Signature;
use crate::special::fdb::FdB;
use crate::special::nck::{decorated_forests, from_decorated, nck_coproduct, to_decorated, transported_coproduct};
use crate::special::wqsym::{realize_expansion, wqsym_expansion};
use crate::term::{enumerate_reduced_forests, enumerate_terms, Forest, Term};
use crate::word::Word;

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Extra observations that are reported but not pass/fail.
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: impl Into<String>) -> Self {
        SuiteReport {
            name: name.into(),
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

/// The signature `a:1,b:2,c:3` used throughout the examples.
pub fn example_signature() -> Signature {
    Signature::parse_inline("a:1,b:2,c:3").expect("valid signature")
}

fn all_words<O: Operad>(op: &O, max_degree: usize) -> Result<Vec<Word<O::Elem>>> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        out.extend(op.reduced_words_of_degree(d)?);
    }
    Ok(out)
}

/// `m ∘ (S ⊗ id)` or `m ∘ (id ⊗ S)` applied to a tensor.
fn antipode_convolution<O: Operad>(
    h: &NaturalHopf<O>,
    t: &TensorElement<O::Elem>,
    left: bool,
) -> Result<LinComb<Word<O::Elem>>> {
    let mut out = LinComb::zero();
    for ((a, b), c) in t {
        let (sa, sb) = if left {
            (h.antipode(&h.element(a)?)?.into_terms(), LinComb::single(b.clone()))
        } else {
            (LinComb::single(a.clone()), h.antipode(&h.element(b)?)?.into_terms())
        };
        out.add_assign_scaled(&concat_product(&sa, &sb), c);
    }
    Ok(out)
}

/// Coassociativity, counit, bialgebra compatibility and antipode identities on
/// every reduced word up to `max_degree` (pairs for compatibility).
pub fn hopf_identities<O: Operad>(name: &str, h: &NaturalHopf<O>, max_degree: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(name);
    let words = all_words(h.operad(), max_degree)?;
    let mut deltas = BTreeMap::new();
    for w in &words {
        let x = h.element(w)?;
        let delta = h.coproduct(&x)?;
        report.check(h.coproduct_left(&delta)? == h.coproduct_right(&delta)?, || format!("coassociativity fails on {w}"));

        let left_counit: LinComb<Word<O::Elem>> = delta
            .iter()
            .filter(|((a, _), _)| a.is_empty())
            .map(|((_, b), c)| (b.clone(), c.clone()))
            .collect();
        let right_counit: LinComb<Word<O::Elem>> = delta
            .iter()
            .filter(|((_, b), _)| b.is_empty())
            .map(|((a, _), c)| (a.clone(), c.clone()))
            .collect();
        report.check(left_counit == *x.terms() && right_counit == *x.terms(), || format!("counit fails on {w}"));

        let eps = if w.is_empty() { LinComb::single(Word::empty()) } else { LinComb::zero() };
        report.check(antipode_convolution(h, &delta, true)? == eps, || format!("m(S⊗id)Δ fails on {w}"));
        report.check(antipode_convolution(h, &delta, false)? == eps, || format!("m(id⊗S)Δ fails on {w}"));
        deltas.insert(w.clone(), delta);
    }
    for u in &words {
        for v in &words {
            if h.operad().word_degree(u) + h.operad().word_degree(v) > max_degree {
                continue;
            }
            let uv = h.element(&u.concat(v))?;
            let lhs = h.coproduct(&uv)?;
            let rhs = tensor_product(&deltas[u], &deltas[v]);
            report.check(lhs == rhs, || format!("Δ(xy) ≠ Δ(x)Δ(y) for x = {u}, y = {v}"));
        }
    }
    Ok(report)
}

fn forests_up_to(sig: &Signature, max_degree: usize) -> Vec<Forest> {
    (0..=max_degree).flat_map(|d| enumerate_reduced_forests(sig, d)).collect()
}

fn words_over(sig: &Signature, max_len: usize) -> Vec<Vec<Arc<str>>> {
    let names: Vec<Arc<str>> = sig.generators().iter().map(|g| g.name.clone()).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Arc<str>>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                names.iter().map(move |x| {
                    let mut v = w.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Partial-order axioms, cover moves, lattice property, Möbius zero-sums and
/// the covering relation as transitive reduction.
pub fn lattice_properties(sig: &Signature, max_degree: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lattice");
    let wind = EasterlyWind::new(sig.clone())?;
    let forests = forests_up_to(sig, max_degree);
    let mut ups: BTreeMap<Forest, BTreeSet<Forest>> = BTreeMap::new();
    for f in &forests {
        let up: BTreeSet<Forest> = wind.up_set(f)?.elements().iter().cloned().collect();
        ups.insert(f.clone(), up);
    }
    for f in &forests {
        for m in wind.cover_moves(f)? {
            report.check(
                m.result.degree() == f.degree()
                    && m.result.preorder_decorations() == f.preorder_decorations()
                    && m.result.is_reduced(),
                || format!("move {f} -> {} changes degree or decorations", m.result),
            );
        }
        let up = &ups[f];
        report.check(up.contains(f), || format!("{f} is not below itself"));
        for g in up {
            let up_g = &ups[g];
            report.check(up_g.is_subset(up), || format!("transitivity fails through {f} ≼ {g}"));
            report.check(g == f || !up_g.contains(f), || format!("antisymmetry fails on {f}, {g}"));
        }
        // Covers are exactly the minimal strict upper bounds.
        let strict: Vec<&Forest> = up.iter().filter(|g| *g != f).collect();
        let minimal: BTreeSet<Forest> = strict
            .iter()
            .filter(|g| !strict.iter().any(|h| h != *g && ups[*h].contains(**g)))
            .map(|g| (*g).clone())
            .collect();
        let covers: BTreeSet<Forest> = wind.covers(f)?.into_iter().collect();
        report.check(covers == minimal, || format!("covers of {f} differ from the transitive reduction"));
    }

    for w in words_over(sig, max_degree) {
        let names: Vec<&str> = w.iter().map(|x| &**x).collect();
        let interval = wind.interval(&names)?;
        let p = interval.poset();
        let label = names.join("");
        if interval.len() != interval.word_class_size() {
            report.notes.push(format!(
                "word {label}: interval has {} elements, word class has {}",
                interval.len(),
                interval.word_class_size()
            ));
        }
        report.check(p.index_of(interval.bottom()).is_some() && p.index_of(interval.top()).is_some(), || {
            format!("interval of {label} misses an endpoint")
        });
        for i in 0..p.len() {
            for j in 0..p.len() {
                report.check(p.join(i, j).is_some() && p.meet(i, j).is_some(), || {
                    format!("no meet or join in interval {label}")
                });
            }
            let mu = p.moebius_from(i);
            for j in 0..p.len() {
                if i != j && p.leq(i, j) {
                    let sum: i64 = (0..p.len()).filter(|&k| p.leq(k, j)).map(|k| mu[k]).sum();
                    report.check(sum == 0, || format!("Möbius sum nonzero in interval {label}"));
                }
            }
        }
    }
    Ok(report)
}

fn single(basis: Basis, f: &Forest) -> HopfElement<Term> {
    HopfElement::from_terms(basis, LinComb::single(f.clone()))
}

/// F- and H-basis products given by the over/under formulas against the
/// E-basis product transported through the conversions.
pub fn basis_products(sig: &Signature, max_degree: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("bases-products");
    let bases = Bases::new(sig.clone())?;
    let forests = forests_up_to(sig, max_degree);
    let f_to_e: BTreeMap<Forest, HopfElement<Term>> = forests
        .iter()
        .map(|f| Ok((f.clone(), bases.convert(&single(Basis::F, f), Basis::E)?)))
        .collect::<Result<_>>()?;
    let h_to_e: BTreeMap<Forest, HopfElement<Term>> = forests
        .iter()
        .map(|f| Ok((f.clone(), bases.convert(&single(Basis::H, f), Basis::E)?)))
        .collect::<Result<_>>()?;
    for f in &forests {
        for g in &forests {
            let wind = bases.wind();
            report.check(wind.less_equal(&over(f, g), &under(f, g))?, || format!("over({f}, {g}) ⋠ under"));
            for (basis, table) in [(Basis::F, &f_to_e), (Basis::H, &h_to_e)] {
                let formula = bases.product(&single(basis, f), &single(basis, g))?;
                let through_e = table[f].product(&table[g])?;
                let expected = bases.convert(&through_e, basis)?;
                report.check(formula == expected, || format!("{basis}-product of {f} and {g} disagrees with the E-basis"));
            }
        }
    }
    Ok(report)
}

/// Round trips between the three bases.
pub fn basis_round_trips(sig: &Signature, max_degree: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("bases-round-trips");
    let bases = Bases::new(sig.clone())?;
    for f in forests_up_to(sig, max_degree) {
        for (from, via) in [(Basis::E, Basis::F), (Basis::F, Basis::E), (Basis::F, Basis::H), (Basis::H, Basis::F), (Basis::E, Basis::H)] {
            let x = single(from, &f);
            let back = bases.convert(&bases.convert(&x, via)?, from)?;
            report.check(back == x, || format!("{from} -> {via} -> {from} is not the identity on {f}"));
        }
    }
    Ok(report)
}

/// `θ ∘ r_{A⧺A′} = (r_A ⊗ r_{A′}) ∘ Δ` over random alphabet pairs.
pub fn alphabet_doubling(sig: &Signature, max_degree: usize, pairs: usize, max_letters: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("alphabet-doubling");
    let hopf = NaturalHopf::new(FreeOperad::new(sig.clone()));
    let forests = forests_up_to(sig, max_degree);
    let deltas: Vec<TensorElement<Term>> = forests
        .iter()
        .map(|f| hopf.coproduct(&single(Basis::E, f)))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..pairs {
        let n1 = 1 + k % max_letters;
        let n2 = 1 + (k / max_letters) % max_letters;
        let a = RelatedAlphabet::random(sig, n1, "x", &mut rng);
        let b = RelatedAlphabet::random(sig, n2, "y", &mut rng);
        let sum = a.disjoint_sum(&b)?;
        for (f, delta) in forests.iter().zip(&deltas) {
            let lhs = theta_split(&realize_forest(f, &sum)?, |x| a.contains(x));
            let rhs = realize_tensor(delta, &a, &b)?;
            report.check(lhs == rhs, || format!("doubling identity fails on {f} for alphabet pair {k}"));
        }
    }
    Ok(report)
}

/// `r_A(x y) = r_A(x) r_A(y)` on products of basis elements.
pub fn realization_morphism(sig: &Signature, max_degree: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("realization-morphism");
    let forests = forests_up_to(sig, max_degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..trials {
        let a = RelatedAlphabet::random(sig, 4, "x", &mut rng);
        let polys: Vec<NCPolynomial> = forests.iter().map(|f| realize_forest(f, &a)).collect::<Result<_>>()?;
        for (f, pf) in forests.iter().zip(&polys) {
            for (g, pg) in forests.iter().zip(&polys) {
                let lhs = realize_forest(&f.concat(g), &a)?;
                report.check(lhs == concat_product(pf, pg), || format!("r(E_f E_g) ≠ r(E_f) r(E_g) for {f}, {g} (trial {k})"));
            }
        }
    }
    Ok(report)
}

/// Distinct forests realize to distinct polynomials over the canonical
/// truncation with `M = max_degree` and `L = max arity`.
pub fn truncated_injectivity(sig: &Signature, max_degree: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("truncated-injectivity");
    let alphabet = RelatedAlphabet::canonical(sig, sig.max_arity(), max_degree);
    let mut seen: BTreeMap<Vec<(Word<Letter>, Coeff)>, Forest> = BTreeMap::new();
    for f in forests_up_to(sig, max_degree) {
        let p: Vec<(Word<Letter>, Coeff)> = realize_forest(&f, &alphabet)?.into_iter().collect();
        let clash = seen.insert(p, f.clone());
        report.check(clash.is_none(), || format!("{f} and {} realize identically", clash.clone().unwrap_or_default()));
    }
    Ok(report)
}

/// Class closure agrees with the multiset canonical form.
pub fn mas_classes(sig: &Signature, max_degree: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("mas-classes");
    let q = Quotient::new(sig.clone(), MasCongruence::new(sig.clone())?);
    for d in 1..=max_degree {
        let terms = enumerate_terms(sig, d);
        let mut by_key: BTreeMap<Multiset, BTreeSet<Term>> = BTreeMap::new();
        for t in &terms {
            by_key.entry(q.congruence().canonical_form(t)).or_default().insert(t.clone());
        }
        for t in &terms {
            let key = q.congruence().canonical_form(t);
            for u in q.congruence().generating_moves(t) {
                report.check(q.congruence().canonical_form(&u) == key, || format!("move from {t} changes the multiset"));
            }
            let class: BTreeSet<Term> = q.term_class(t)?.into_iter().collect();
            report.check(class == by_key[&key], || format!("class of {t} is not all terms with multiset {key}"));
        }
    }
    Ok(report)
}

/// Class sums form a sub-bialgebra whose constants are those of the
/// multiset operad; for a single binary generator they are those of `As`.
pub fn mas_subalgebra(sig: &Signature, max_degree: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(format!("mas-subalgebra[{sig}]"));
    let q = Quotient::new(sig.clone(), MasCongruence::new(sig.clone())?);
    let check = q.subalgebra_check(max_degree)?;
    report.check(check.is_success(), || check.failure.clone().unwrap_or_default());
    let mas = NaturalHopf::new(MultisetOperad::new(sig.clone())?);
    for (key, constants) in &check.coproduct_constants {
        let w: Word<Multiset> = Word::new(key.clone());
        let direct = mas.coproduct(&mas.element(&w)?)?;
        let transported: TensorElement<Multiset> =
            constants.map_keys(|(a, b)| (Word::new(a.clone()), Word::new(b.clone())));
        report.check(direct == transported, || format!("Δ E[{w}] differs from the multiset operad"));
    }
    for ((a, b), constants) in &check.product_constants {
        let direct = Word::new(a.clone()).concat(&Word::new(b.clone()));
        report.check(*constants == LinComb::single(direct.letters().to_vec()), || {
            format!("product of classes {a:?}, {b:?} is not the concatenated class")
        });
    }
    let single_binary = sig.len() == 1 && sig.generators()[0].arity == 2;
    if single_binary {
        let as_hopf = NaturalHopf::new(AssociativeOperad);
        let to_as = |m: &Multiset| AsElem::new(m.len() + 1).expect("positive");
        for (key, constants) in &check.coproduct_constants {
            let w: Word<AsElem> = key.iter().map(to_as).collect();
            let direct = as_hopf.coproduct(&as_hopf.element(&w)?)?;
            let transported: TensorElement<AsElem> = constants.map_keys(|(a, b)| {
                (a.iter().map(to_as).collect(), b.iter().map(to_as).collect())
            });
            report.check(direct == transported, || format!("Δ E[{w}] differs from the associative operad"));
        }
    }
    Ok(report)
}

/// `r_{A_N}(E_f) = Σ_{u ⊢ f} r_A(M_u)` over ordered alphabets of each size.
pub fn wqsym_consistency(sig: &Signature, max_degree: usize, max_letters: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("wqsym");
    for n in 1..=max_letters {
        let names: Vec<Letter> = (0..n).map(|i| Arc::from(format!("x{i}"))).collect();
        let alphabet = RelatedAlphabet::ordered(sig, names.iter().cloned())?;
        for f in forests_up_to(sig, max_degree) {
            let lhs = realize_forest(&f, &alphabet)?;
            let rhs = realize_expansion(&wqsym_expansion(&f), &names);
            report.check(lhs == rhs, || format!("WQSym expansion of {f} disagrees over {n} letters"));
        }
    }
    Ok(report)
}

/// Admissible cuts against the transported operadic coproduct.
pub fn nck_agreement(decorations: &[&str], max_vertices: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("nck");
    for n in 0..=max_vertices {
        for f in decorated_forests(decorations, n) {
            report.check(to_decorated(&from_decorated(&f))? == f, || format!("bijection round trip fails on {f}"));
            report.check(nck_coproduct(&f) == transported_coproduct(&f)?, || format!("coproducts disagree on {f}"));
        }
    }
    Ok(report)
}

/// Distinct class sums of `FdB_{r,s}` realize to distinct polynomials.
pub fn fdb_distinctness(r: usize, s: usize, max_degree: usize, bound: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(format!("fdb-distinct[{r},{s}]"));
    let fdb = FdB::new(r, s)?;
    let mut seen: BTreeMap<Vec<(Word<Letter>, Coeff)>, Word<Multiset>> = BTreeMap::new();
    for d in 1..=max_degree {
        for w in fdb.operad().reduced_words_of_degree(d)? {
            let p = fdb.realize(&w, bound)?;
            report.check(!p.is_zero(), || format!("E[{w}] realizes to zero"));
            let clash = seen.insert(p.into_iter().collect(), w.clone());
            report.check(clash.is_none(), || format!("E[{w}] and E[{}] realize identically", clash.clone().unwrap_or_default()));
        }
    }
    Ok(report)
}

/// Names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "hopf", "lattice", "bases", "realization", "quotient", "wqsym", "nck", "fdb",
];

/// Runs one named suite (or `all`) with every bound derived from `max_degree`.
pub fn run_suite(name: &str, max_degree: usize) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        let mut out = Vec::new();
        for s in SUITES {
            out.extend(run_suite(s, max_degree)?);
        }
        return Ok(out);
    }
    let sig = example_signature();
    let d = max_degree;
    let small = d.min(2);
    let reports = match name {
        "hopf" => vec![
            hopf_identities("hopf[a:1,b:2,c:3]", &NaturalHopf::new(FreeOperad::new(sig)), d)?,
            hopf_identities("hopf[As]", &NaturalHopf::new(AssociativeOperad), d + 1)?,
            hopf_identities("hopf[Mas a:2,b:2]", &NaturalHopf::new(MultisetOperad::new(Signature::parse_inline("a:2,b:2")?)?), d)?,
        ],
        "lattice" => vec![lattice_properties(&sig, d)?],
        "bases" => vec![basis_products(&sig, small)?, basis_round_trips(&sig, d)?],
        "realization" => vec![
            alphabet_doubling(&sig, d, 20, 4, 1)?,
            realization_morphism(&sig, small, 3, 2)?,
            truncated_injectivity(&sig, d)?,
        ],
        "quotient" => {
            let mut classes = mas_classes(&Signature::parse_inline("a:2,b:2")?, d)?;
            classes.absorb(mas_classes(&Signature::parse_inline("a:1,b:2")?, d)?);
            vec![
                classes,
                mas_subalgebra(&Signature::parse_inline("a:2")?, d)?,
                mas_subalgebra(&Signature::parse_inline("a:2,b:2")?, d)?,
            ]
        }
        "wqsym" => vec![wqsym_consistency(&sig, d, 4)?],
        "nck" => vec![nck_agreement(&["1", "2"], d)?],
        "fdb" => vec![
            fdb_distinctness(1, 1, small, 3)?,
            fdb_distinctness(1, 2, small, 3)?,
            mas_subalgebra(FdB::new(2, 1)?.signature(), d)?,
        ],
        other => {
            return Err(crate::error::Error::domain(format!(
                "unknown suite `{other}` (expected one of {} or all)",
                SUITES.join(", ")
            )))
        }
    };
    Ok(reports)
}
