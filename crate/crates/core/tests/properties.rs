use std::collections::BTreeSet;

use proptest::prelude::*;

use garside_core::bkl::CanonicalFactor;
use garside_core::dynamics::{delete_strands, exponent_sum, linking_number};
use garside_core::summit::{self, cycling, UssOptions};
use garside_core::{ArtinGroup, BklGroup, BklWord, BraidWord, GarsideStructure, NormalForm, UssSummary};

fn word(max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_n).prop_flat_map(move |n| {
        let letter = (1..n as i64).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        proptest::collection::vec(letter, 0..=max_len).prop_map(move |s| BraidWord::from_signed(n, &s).unwrap())
    })
}

fn bkl_word(max_n: usize, max_len: usize) -> impl Strategy<Value = BklWord> {
    (2..=max_n).prop_flat_map(move |n| {
        let band = (2..=n).prop_flat_map(|t| (Just(t), 1..t));
        let letter = (band, any::<bool>()).prop_map(|((t, s), p)| format!("{}({t},{s})", if p { "" } else { "-" }));
        proptest::collection::vec(letter, 0..=max_len).prop_map(move |v| BklWord::parse(n, &v.join(";")).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_cancels(w in word(7, 20)) {
        let g = ArtinGroup::new(w.strands()).unwrap();
        prop_assert!(g.normal_form(&w.concat(&w.inverse()).unwrap()).unwrap().is_identity());
        prop_assert!(g.normal_form(&w.inverse().concat(&w).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn normal_forms_are_valid_and_round_trip(w in word(6, 20)) {
        let g = ArtinGroup::new(w.strands()).unwrap();
        let nf = g.normal_form(&w).unwrap();
        prop_assert!(nf.is_valid(&g));
        prop_assert_eq!(g.normal_form(&g.to_word(&nf)).unwrap(), nf.clone());
        prop_assert_eq!(NormalForm::parse(&g, &nf.serialize(&g)).unwrap(), nf.clone());
        prop_assert_eq!(nf.inverse(&g), g.normal_form(&w.inverse()).unwrap());
    }

    #[test]
    fn multiplication_matches_concatenation(u in word(5, 12), v in word(5, 12)) {
        prop_assume!(u.strands() == v.strands());
        let g = ArtinGroup::new(u.strands()).unwrap();
        let (a, b) = (g.normal_form(&u).unwrap(), g.normal_form(&v).unwrap());
        prop_assert_eq!(a.mul(&g, &b), g.normal_form(&u.concat(&v).unwrap()).unwrap());
    }

    #[test]
    fn braid_relations_hold(w in word(6, 10), pos in 0usize..10, i in 1usize..5) {
        let n = w.strands();
        prop_assume!(i + 1 < n);
        let g = ArtinGroup::new(n).unwrap();
        let cut = pos.min(w.len());
        let (head, tail) = (&w.signed()[..cut], &w.signed()[cut..]);
        let with = |mid: &[i64]| {
            let s: Vec<i64> = head.iter().chain(mid).chain(tail).copied().collect();
            BraidWord::from_signed(n, &s).unwrap()
        };
        let (a, b) = (i as i64, i as i64 + 1);
        prop_assert!(g.equals(&with(&[a, b, a]), &with(&[b, a, b])).unwrap());
        prop_assert!(g.equals(&with(&[]), &with(&[a, -a])).unwrap());
        if i + 2 < n {
            prop_assert!(g.equals(&with(&[a, b + 1]), &with(&[b + 1, a])).unwrap());
        }
    }

    #[test]
    fn cycling_stays_in_conjugacy_class(w in word(5, 12)) {
        let g = ArtinGroup::new(w.strands()).unwrap();
        let nf = g.normal_form(&w).unwrap();
        let c = summit::cycling_conjugator(&g, &nf);
        prop_assert_eq!(cycling(&g, &nf), nf.conjugate_by_simple(&g, &c));
        let sss = summit::sss_representative(&g, &nf, w.len()).unwrap();
        prop_assert!(sss.inf >= nf.inf);
        prop_assert!(sss.sup() <= nf.sup());
    }

    #[test]
    fn uss_profile_is_uniform(w in word(4, 8)) {
        let g = ArtinGroup::new(w.strands()).unwrap();
        let r = summit::uss_enumerate(&g, &g.normal_form(&w).unwrap(), UssOptions::default()).unwrap();
        for x in &r.elements {
            prop_assert_eq!((x.inf, x.factors.len()), (r.inf(), r.canonical_length()));
            prop_assert!(r.contains(&cycling(&g, x)));
        }
        let summary = UssSummary::new(&g, &r);
        let back = UssSummary::from_json(&summary.to_json()).unwrap();
        let elems: BTreeSet<_> = back.elements(&g).unwrap().into_iter().collect();
        prop_assert_eq!(elems, r.elements.clone());
    }

    #[test]
    fn bkl_agrees_with_artin(u in bkl_word(6, 10), v in bkl_word(6, 10)) {
        prop_assume!(u.strands() == v.strands());
        let n = u.strands();
        let (b, a) = (BklGroup::new(n).unwrap(), ArtinGroup::new(n).unwrap());
        prop_assert_eq!(b.equals(&u, &v).unwrap(), a.equals(&u.to_artin(), &v.to_artin()).unwrap());
        prop_assert!(b.equals(&u, &b.to_word(&b.normal_form(&u).unwrap())).unwrap());
        prop_assert!(b.normal_form(&u.concat(&u.inverse()).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn bkl_factors_are_canonical(w in bkl_word(6, 12)) {
        let g = BklGroup::new(w.strands()).unwrap();
        let nf = g.normal_form(&w).unwrap();
        prop_assert!(nf.is_valid(&g));
        for f in &nf.factors {
            prop_assert!(CanonicalFactor::from_permutation(*f.permutation()).is_some());
            prop_assert!(!g.is_identity(f) && !g.is_garside_element(f));
        }
    }

    #[test]
    fn exponent_sum_is_additive(u in word(5, 15), v in word(5, 15)) {
        prop_assume!(u.strands() == v.strands());
        prop_assert_eq!(exponent_sum(&u.concat(&v).unwrap()), exponent_sum(&u) + exponent_sum(&v));
        prop_assert_eq!(exponent_sum(&u.concat(&u.inverse()).unwrap()), 0);
        // exponent sum is an invariant of the braid
        let g = ArtinGroup::new(u.strands()).unwrap();
        prop_assert_eq!(exponent_sum(&g.to_word(&g.normal_form(&u).unwrap())), exponent_sum(&u));
    }

    #[test]
    fn deletion_respects_concatenation(u in word(5, 10), v in word(5, 10), mask in 1u32..32) {
        prop_assume!(u.strands() == v.strands());
        let n = u.strands();
        let keep: BTreeSet<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        prop_assume!(!keep.is_empty());
        // strands of v are renamed by where u leaves them
        let mut perm = (1..=n).collect::<Vec<_>>();
        for l in u.letters() {
            perm.swap(l.generator - 1, l.generator);
        }
        let keep_v: BTreeSet<usize> = (1..=n).filter(|&p| keep.contains(&perm[p - 1])).collect();
        let whole = delete_strands(&u.concat(&v).unwrap(), &keep).unwrap();
        let parts = delete_strands(&u, &keep).unwrap().concat(&delete_strands(&v, &keep_v).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn linking_symmetry(w in word(5, 15), i in 1usize..6, j in 1usize..6) {
        let n = w.strands();
        prop_assume!(i != j && i <= n && j <= n);
        let l = linking_number(&w, i, j).unwrap();
        prop_assert_eq!(l, linking_number(&w, j, i).unwrap());
        // the inverse word runs the strands backwards from their end positions
        let mut pos = (1..=n).collect::<Vec<_>>();
        for x in w.letters() {
            pos.swap(x.generator - 1, x.generator);
        }
        let end = |s: usize| pos.iter().position(|&t| t == s).unwrap() + 1;
        prop_assert_eq!(linking_number(&w.inverse(), end(i), end(j)).unwrap().twice, -l.twice);
    }

    #[test]
    fn pure_braids_split_exponent_sum(w in word(4, 8)) {
        // the power of w whose permutation is trivial is pure
        let n = w.strands();
        let mut pos = (1..=n).collect::<Vec<_>>();
        for x in w.letters() {
            pos.swap(x.generator - 1, x.generator);
        }
        let mut order = 1;
        let mut p = pos.clone();
        while p.iter().enumerate().any(|(k, &s)| s != k + 1) {
            let mut q = vec![0; n];
            for k in 0..n {
                q[k] = p[pos[k] - 1];
            }
            p = q;
            order += 1;
        }
        let pure = w.pow(order);
        let total: i64 = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .map(|(i, j)| linking_number(&pure, i, j).unwrap().twice)
            .sum();
        prop_assert_eq!(exponent_sum(&pure), total);
    }
}
