use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nhopf::bases::{over, under, Bases};
use nhopf::hopf::concat_product;
use nhopf::lattice::EasterlyWind;
use nhopf::quotient::{Congruence, MasCongruence};
use nhopf::realization::{realize_forest, realize_tensor, theta_split, RelatedAlphabet};
use nhopf::special::wqsym::{pack, wqsym_compatible, wqsym_expansion};
use nhopf::{
    enumerate_reduced_forests, enumerate_terms, Basis, Coeff, Forest, FreeOperad, HopfElement, LinComb, NaturalHopf,
    Signature,
};

fn se() -> Signature {
    Signature::parse_inline("a:1,b:2,c:3").unwrap()
}

fn forests() -> &'static [Forest] {
    static CELL: OnceLock<Vec<Forest>> = OnceLock::new();
    CELL.get_or_init(|| (0..=3).flat_map(|d| enumerate_reduced_forests(&se(), d)).collect())
}

fn bases() -> &'static Bases {
    static CELL: OnceLock<Bases> = OnceLock::new();
    CELL.get_or_init(|| Bases::new(se()).unwrap())
}

fn forest() -> impl Strategy<Value = Forest> {
    (0..forests().len()).prop_map(|i| forests()[i].clone())
}

fn small_forest() -> impl Strategy<Value = Forest> {
    forest().prop_filter("degree ≤ 2", |f| f.degree() <= 2)
}

fn single(basis: Basis, f: &Forest) -> HopfElement<nhopf::Term> {
    HopfElement::from_terms(basis, LinComb::single(f.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parse_round_trip(f in forest()) {
        prop_assert_eq!(Forest::parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn conversions_invert(f in forest(), from in 0usize..3, to in 0usize..3) {
        let b = [Basis::E, Basis::F, Basis::H];
        let x = single(b[from], &f);
        let there = bases().convert(&x, b[to]).unwrap();
        prop_assert_eq!(bases().convert(&there, b[from]).unwrap(), x);
    }

    #[test]
    fn triangularity(f in forest()) {
        // E_f = F_f + (strictly greater terms); H_f = F_f + (strictly smaller terms).
        let wind = bases().wind();
        let e = bases().e_to_f(&f).unwrap();
        prop_assert_eq!(e.coeff(&f), Coeff::from(1));
        for g in e.keys() {
            prop_assert!(wind.less_equal(&f, g).unwrap());
        }
        for g in bases().h_to_f(&f).unwrap().keys() {
            prop_assert!(wind.less_equal(g, &f).unwrap());
        }
    }

    #[test]
    fn over_below_under(f in forest(), g in forest()) {
        let (o, u) = (over(&f, &g), under(&f, &g));
        prop_assert_eq!(o.preorder_decorations(), u.preorder_decorations());
        prop_assert!(bases().wind().less_equal(&o, &u).unwrap());
    }

    #[test]
    fn h_product_rule(f in small_forest(), g in small_forest()) {
        let p = bases().product(&single(Basis::H, &f), &single(Basis::H, &g)).unwrap();
        prop_assert_eq!(p, single(Basis::H, &under(&f, &g)));
    }

    #[test]
    fn order_is_antisymmetric(f in forest(), g in forest()) {
        let wind = EasterlyWind::new(se()).unwrap();
        if f != g {
            prop_assert!(!(wind.less_equal(&f, &g).unwrap() && wind.less_equal(&g, &f).unwrap()));
        }
    }

    #[test]
    fn counit_and_degree(f in forest()) {
        let h = NaturalHopf::new(FreeOperad::new(se()));
        let x = single(Basis::E, &f);
        let delta = h.coproduct(&x).unwrap();
        for ((a, b), _) in &delta {
            prop_assert_eq!(a.degree() + b.degree(), f.degree());
        }
        prop_assert_eq!(delta.coeff(&(Forest::empty(), f.clone())), Coeff::from(1));
        prop_assert_eq!(delta.coeff(&(f.clone(), Forest::empty())), Coeff::from(1));
    }

    #[test]
    fn realization_is_multiplicative(f in small_forest(), g in small_forest(), seed in any::<u64>()) {
        let a = RelatedAlphabet::random(&se(), 3, "x", &mut ChaCha8Rng::seed_from_u64(seed));
        let lhs = realize_forest(&f.concat(&g), &a).unwrap();
        let rhs = concat_product(&realize_forest(&f, &a).unwrap(), &realize_forest(&g, &a).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn doubling_identity(f in forest(), seed in any::<u64>(), n in 1usize..=4, m in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = RelatedAlphabet::random(&se(), n, "x", &mut rng);
        let b = RelatedAlphabet::random(&se(), m, "y", &mut rng);
        let sum = a.disjoint_sum(&b).unwrap();
        let h = NaturalHopf::new(FreeOperad::new(se()));
        let delta = h.coproduct(&single(Basis::E, &f)).unwrap();
        let lhs = theta_split(&realize_forest(&f, &sum).unwrap(), |x| a.contains(x));
        prop_assert_eq!(lhs, realize_tensor(&delta, &a, &b).unwrap());
    }

    #[test]
    fn packing_is_idempotent(w in proptest::collection::vec(0u8..6, 0..8)) {
        let u = pack(&w);
        prop_assert_eq!(pack(u.letters()), u.clone());
        prop_assert_eq!(u.len(), w.len());
    }

    #[test]
    fn wqsym_terms_are_compatible(f in forest()) {
        for u in wqsym_expansion(&f).keys() {
            prop_assert!(wqsym_compatible(u, &f));
        }
    }

    #[test]
    fn mas_moves_preserve_multiset(d in 1usize..=3, pick in any::<prop::sample::Index>()) {
        let sig = Signature::parse_inline("a:2,b:1").unwrap();
        let terms = enumerate_terms(&sig, d);
        let t = &terms[pick.index(terms.len())];
        let cong = MasCongruence::new(sig).unwrap();
        let key = cong.canonical_form(t);
        for u in cong.generating_moves(t) {
            prop_assert_eq!(cong.canonical_form(&u), key.clone());
            prop_assert_eq!(u.degree(), t.degree());
        }
    }

    #[test]
    fn lincomb_sub_cancels(xs in proptest::collection::vec((0u8..5, -3i64..4), 0..8)) {
        let c: LinComb<u8> = xs.iter().map(|(k, v)| (*k, Coeff::from(*v))).collect();
        prop_assert!(c.sub(&c).is_zero());
        prop_assert_eq!(c.add(&c), c.scale(&Coeff::from(2)));
    }
}
