use std::collections::BTreeSet;

use nhopf::bases::{under, Bases};
use nhopf::lattice::{EasterlyWind, HasseFormat};
use nhopf::quotient::{MasCongruence, Quotient, TrivialCongruence};
use nhopf::realization::{format_polynomial, realize_forest, RelatedAlphabet};
use nhopf::special::nck::{nck_coproduct, parse_decorated, transported_coproduct};
use nhopf::special::wqsym::{wqsym_compatible, wqsym_realize, PackedWord};
use nhopf::{
    AssociativeOperad, Basis, Coeff, Forest, HopfElement, LinComb, MultisetOperad, NaturalHopf, Operad, Signature, Term,
};

fn se() -> Signature {
    Signature::parse_inline("a:1,b:2,c:3").unwrap()
}

fn f(s: &str) -> Forest {
    Forest::parse(s).unwrap()
}

fn seven_nodes() -> Forest {
    f("c[a[*],*,b[a[*],*]] b[*,b[a[*],*]]")
}

fn in_basis(basis: Basis, s: &str) -> HopfElement<Term> {
    HopfElement::from_terms(basis, LinComb::single(f(s)))
}

#[test]
fn f_product_shuffles_between_over_and_under() {
    let bases = Bases::new(se()).unwrap();
    let x = in_basis(Basis::F, "c[*,*,*] b[*,b[*,*]]");
    let y = in_basis(Basis::F, "c[*,a[*],*] a[*] b[*,*]");
    let got: Vec<String> = bases.product(&x, &y).unwrap().terms().keys().map(ToString::to_string).collect();
    assert_eq!(
        got,
        [
            "c[*,*,*] b[*,b[*,*]] c[*,a[*],*] a[*] b[*,*]",
            "c[*,*,*] b[*,b[*,c[*,a[*],*]]] a[*] b[*,*]",
            "c[*,*,*] b[*,b[c[*,a[*],*],*]] a[*] b[*,*]",
            "c[*,*,*] b[*,b[c[*,a[*],*],a[*]]] b[*,*]",
        ]
    );
}

#[test]
fn under_skips_the_non_extremal_leaf() {
    // The first leaf of the outer `b` is not extremal, so it receives nothing.
    assert_eq!(
        under(&f("c[*,*,*] b[*,b[*,*]]"), &f("c[*,a[*],*] a[*] b[*,*]")),
        f("c[*,*,*] b[*,b[c[*,a[*],*],a[*]]] b[*,*]")
    );
}

#[test]
fn h_product_is_under() {
    let bases = Bases::new(se()).unwrap();
    let p = bases.product(&in_basis(Basis::H, "c[*,*,*]"), &in_basis(Basis::H, "a[*] b[*,*]")).unwrap();
    assert_eq!(p, in_basis(Basis::H, "c[a[*],b[*,*],*]"));
}

#[test]
fn antipode_of_alpha_3() {
    let h = NaturalHopf::new(AssociativeOperad);
    let x = h.element(&h.operad().parse_word("alpha_3").unwrap()).unwrap();
    // S(α3) = -α3 + 2 α2 α2 from the recursion with Δα3 = 1⊗α3 + 2 α2⊗α2 + α3⊗1.
    assert_eq!(h.antipode(&x).unwrap().to_string(), "2 E(alpha_2 alpha_2) - E(alpha_3)");
}

#[test]
fn cab_hasse_diagram_exports() {
    let wind = EasterlyWind::new(se()).unwrap();
    let i = wind.interval(&["c", "a", "b"]).unwrap();
    let dot = i.hasse_export(HasseFormat::Dot);
    assert_eq!(dot.matches(" -> ").count(), 14);
    assert_eq!(dot.lines().filter(|l| l.ends_with("\";") && !l.contains("->")).count(), 11);
    let json: serde_json::Value = serde_json::from_str(&i.hasse_export(HasseFormat::Json)).unwrap();
    assert_eq!(json["format_version"], 1);
    assert_eq!(json["vertices"].as_array().unwrap().len(), 11);
    let mu = i.moebius(i.bottom(), i.top()).unwrap();
    let sum: i64 = i.elements().iter().map(|g| i.moebius(i.bottom(), g).unwrap()).sum();
    assert_eq!(sum, 0, "μ(bottom, top) = {mu}");
}

#[test]
fn seven_node_realization_over_canonical_truncation() {
    const M: usize = 4;
    let alphabet = RelatedAlphabet::canonical(&se(), 3, M);
    let p = realize_forest(&seven_nodes(), &alphabet).unwrap();
    let addr = |parts: &[&[usize]]| -> String {
        parts.iter().flat_map(|p| p.iter()).map(ToString::to_string).collect::<Vec<_>>().join(".")
    };
    let zeros = |n: usize| vec![0; n];
    let mut want = BTreeSet::new();
    for l1 in 0..=M {
        for l2 in 0..=M {
            for l3 in 0..=M {
                for l4 in 0..=M {
                    for l5 in 0..=M {
                        for l6 in 0..=M {
                            for l7 in 0..=M {
                                if l1 + 1 + l2 > M || l1 + 2 + l3 + l4 > M || l5 + 2 + l6 + l7 > M {
                                    continue;
                                }
                                let word = [
                                    format!("c:{}", addr(&[&zeros(l1)])),
                                    format!("a:{}", addr(&[&zeros(l1), &[1], &zeros(l2)])),
                                    format!("b:{}", addr(&[&zeros(l1), &[3], &zeros(l3)])),
                                    format!("a:{}", addr(&[&zeros(l1), &[3], &zeros(l3), &[1], &zeros(l4)])),
                                    format!("b:{}", addr(&[&zeros(l5)])),
                                    format!("b:{}", addr(&[&zeros(l5), &[2], &zeros(l6)])),
                                    format!("a:{}", addr(&[&zeros(l5), &[2], &zeros(l6), &[1], &zeros(l7)])),
                                ];
                                want.insert(word.to_vec());
                            }
                        }
                    }
                }
            }
        }
    }
    let got: BTreeSet<Vec<String>> = p
        .iter()
        .map(|(w, c)| {
            assert_eq!(*c, Coeff::from(1));
            w.iter().map(ToString::to_string).collect()
        })
        .collect();
    assert_eq!(got, want);
}

#[test]
fn single_node_realizations() {
    let alphabet = RelatedAlphabet::canonical(&se(), 1, 1);
    let p = realize_forest(&f("a[*]"), &alphabet).unwrap();
    assert_eq!(format_polynomial(&p), "a: + a:0");
}

#[test]
fn wqsym_compatibility_and_monomials() {
    for (u, ok) in [("1223123", true), ("1111111", false), ("1324212", false)] {
        assert_eq!(wqsym_compatible(&PackedWord::parse(u).unwrap(), &seven_nodes()), ok, "{u}");
    }
    let xy = ["x", "y"].map(std::sync::Arc::from).to_vec();
    assert_eq!(format_polynomial(&wqsym_realize(&PackedWord::parse("12").unwrap(), &xy)), "x y");
}

#[test]
fn nck_chain_and_forest() {
    let chain = parse_decorated("1[2]").unwrap();
    let got = nck_coproduct(&chain);
    let want: LinComb<(Forest, Forest)> = [("", "1[2]"), ("1", "2"), ("1[2]", "")]
        .iter()
        .map(|(a, b)| ((f(a), f(b)), Coeff::from(1)))
        .collect();
    assert_eq!(got, want);
    let big = parse_decorated("3[2,3[2,3,1]] 1[2]").unwrap();
    assert_eq!(nck_coproduct(&big), transported_coproduct(&big).unwrap());
}

#[test]
fn mas_classes_match_multisets() {
    let sig = Signature::parse_inline("a:2,b:2").unwrap();
    let q = Quotient::new(sig.clone(), MasCongruence::new(sig).unwrap());
    let class: BTreeSet<String> = q
        .term_class(&Term::parse("a[b[*,*],*]").unwrap())
        .unwrap()
        .iter()
        .map(ToString::to_string)
        .collect();
    assert_eq!(
        class,
        ["a[b[*,*],*]", "a[*,b[*,*]]", "b[a[*,*],*]", "b[*,a[*,*]]"].map(String::from).into_iter().collect()
    );
    let sig = Signature::parse_inline("a:2").unwrap();
    let q = Quotient::new(sig.clone(), MasCongruence::new(sig).unwrap());
    let e = q.e_class(&f("a[a[*,*],*]")).unwrap();
    assert_eq!(e.to_string(), "E(a[*,a[*,*]]) + E(a[a[*,*],*])");
}

#[test]
fn trivial_congruence_is_a_subalgebra() {
    let q = Quotient::new(se(), TrivialCongruence);
    assert!(q.subalgebra_check(2).unwrap().is_success());
}

#[test]
fn mas_coproduct_of_a_pair() {
    let h = NaturalHopf::new(MultisetOperad::new(Signature::parse_inline("a:2").unwrap()).unwrap());
    let x = h.element(&h.operad().parse_word("{a,a}").unwrap()).unwrap();
    assert_eq!(
        nhopf::hopf::format_tensor(&h.coproduct(&x).unwrap(), Basis::E),
        "E() ⊗ E({a,a}) + E({a,a}) ⊗ E() + 2 E({a}) ⊗ E({a})"
    );
}

#[test]
fn alphabet_files_round_trip() {
    let a = RelatedAlphabet::canonical(&se(), 1, 2);
    let text = serde_json::to_string(&a.to_file()).unwrap();
    let b = RelatedAlphabet::parse_json(&text).unwrap();
    assert_eq!(realize_forest(&seven_nodes(), &a).unwrap(), realize_forest(&seven_nodes(), &b).unwrap());
}
