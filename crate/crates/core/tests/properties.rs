use proptest::prelude::*;

use vspread::decomposition::{facets_oracle, facets_theorem, primary_decomposition};
use vspread::duality::{alexander_dual, dual_by_facets, dual_by_supports, is_vertex_splittable, QuotientOrder};
use vspread::ideal::minimalize;
use vspread::powers::{ordinary_power, symbolic_power, symbolic_power_of_ideal};
use vspread::relation_graph::{linear_relation_graph, linear_relation_graph_naive};
use vspread::sweep::{enumerate_instances, SweepConfig};
use vspread::{borel_gens, BorelInstance, Limits, Monomial, MonomialIdeal, PrimeSupport, VarSet};

fn monomial(n: usize, max_exp: u16) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, n).prop_map(|e| Monomial::new(e).unwrap())
}

fn monomials(n: usize, max_exp: u16, len: usize) -> impl Strategy<Value = Vec<Monomial>> {
    prop::collection::vec(monomial(n, max_exp), 0..=len)
}

fn squarefree_ideal(n: usize, len: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(1u64..(1u64 << n), 1..=len).prop_map(move |masks| {
        minimalize(n, masks.into_iter().map(|m| Monomial::from_support(n, VarSet::from_bits(m))))
    })
}

fn instance() -> impl Strategy<Value = BorelInstance> {
    let all = enumerate_instances(&SweepConfig { n_max: 7, d_max: 4, t_max: 3, ..SweepConfig::default() });
    prop::sample::select(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn minimalize_is_canonical(ms in monomials(4, 3, 10)) {
        let a = minimalize(4, ms.clone());
        let mut rev = ms.clone();
        rev.reverse();
        prop_assert_eq!(&a, &minimalize(4, rev));
        prop_assert_eq!(&a, &minimalize(4, a.gens().to_vec()));
        for (i, g) in a.gens().iter().enumerate() {
            for (j, h) in a.gens().iter().enumerate() {
                prop_assert!(i == j || !g.divides(h));
            }
        }
        for m in &ms {
            prop_assert!(a.contains(m));
        }
    }

    #[test]
    fn intersection_membership(a in monomials(4, 2, 5), b in monomials(4, 2, 5), m in monomial(4, 3)) {
        let i = minimalize(4, a);
        let j = minimalize(4, b);
        let meet = i.intersect(&j).unwrap();
        prop_assert_eq!(meet.contains(&m), i.contains(&m) && j.contains(&m));
        let sum = i.sum(&j).unwrap();
        prop_assert_eq!(sum.contains(&m), i.contains(&m) || j.contains(&m));
        let prod = i.product(&j).unwrap();
        prop_assert!(!prod.contains(&m) || (i.contains(&m) && j.contains(&m)));
    }

    #[test]
    fn colon_membership(a in monomials(4, 2, 6), w in monomial(4, 2), m in monomial(4, 3)) {
        let i = minimalize(4, a);
        let c = i.colon(&w).unwrap();
        prop_assert_eq!(c.contains(&m), i.contains(&m.mul(&w).unwrap()));
    }

    #[test]
    fn dual_is_an_involution(i in squarefree_ideal(6, 6)) {
        let l = Limits::default();
        prop_assume!(!i.is_unit());
        let d = alexander_dual(&i, &l).unwrap();
        prop_assert_eq!(&d, &dual_by_facets(&i, &l).unwrap());
        prop_assert_eq!(&d, &dual_by_supports(&i, &l).unwrap());
        prop_assert_eq!(alexander_dual(&d, &l).unwrap(), i);
    }

    #[test]
    fn dual_exchanges_meet_and_sum(i in squarefree_ideal(5, 4), j in squarefree_ideal(5, 4)) {
        let l = Limits::default();
        prop_assume!(!i.is_unit() && !j.is_unit());
        let lhs = alexander_dual(&i.intersect(&j).unwrap(), &l).unwrap();
        let rhs = alexander_dual(&i, &l).unwrap().sum(&alexander_dual(&j, &l).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // I ⊆ I + J reverses under duality
        let s = i.sum(&j).unwrap();
        prop_assert!(alexander_dual(&s, &l).unwrap().is_subideal_of(&alexander_dual(&i, &l).unwrap()));
    }

    #[test]
    fn associated_primes_are_facet_complements(i in squarefree_ideal(6, 5)) {
        prop_assume!(!i.is_unit());
        let l = Limits::default();
        let facets = facets_oracle(&i, &l).unwrap();
        let mut comps: Vec<PrimeSupport> =
            facets.facets.iter().map(|f| PrimeSupport::new(f.complement(6)).unwrap()).collect();
        comps.sort_unstable();
        let ass: Vec<PrimeSupport> = i.associated_primes().unwrap().into_iter().collect();
        prop_assert_eq!(ass, comps);
        for f in &facets.facets {
            prop_assert!(!i.contains(&Monomial::from_support(6, *f)));
            for v in f.complement(6).iter() {
                let mut g = *f;
                g.insert(v);
                prop_assert!(i.contains(&Monomial::from_support(6, g)));
            }
        }
    }

    #[test]
    fn relation_graph_matches_scan(ms in monomials(5, 2, 8)) {
        let i = minimalize(5, ms);
        prop_assert_eq!(linear_relation_graph(&i), linear_relation_graph_naive(&i));
    }

    #[test]
    fn splitting_certificates_verify(i in squarefree_ideal(5, 5)) {
        if let Some(tree) = is_vertex_splittable(&i) {
            tree.verify(&i).unwrap();
            prop_assert_eq!(tree.ideal(5), i.clone());
            let q = QuotientOrder { order: tree.induced_order(5) };
            prop_assert_eq!(q.verify(&i), Ok(()));
        }
    }

    #[test]
    fn instance_facets_and_powers(inst in instance()) {
        let l = Limits::default();
        let ideal = borel_gens(&inst);
        prop_assert_eq!(facets_theorem(&inst).unwrap(), facets_oracle(&ideal, &l).unwrap());
        let dec = primary_decomposition(&inst, &l).unwrap();
        prop_assert_eq!(dec.min_height(), inst.u()[0]);
        for k in 1..=2 {
            let ord = ordinary_power(&ideal, k, &l).unwrap();
            let sym = symbolic_power(&inst, k, &l).unwrap();
            prop_assert!(ord.is_subideal_of(&sym));
            if inst.n() <= 6 {
                prop_assert_eq!(&sym, &symbolic_power_of_ideal(&ideal, k, &l).unwrap());
            }
        }
    }

    #[test]
    fn serde_round_trips(inst in instance()) {
        let text = serde_json::to_string(&inst).unwrap();
        prop_assert_eq!(&serde_json::from_str::<BorelInstance>(&text).unwrap(), &inst);
        let ideal = borel_gens(&inst);
        let text = serde_json::to_string(&ideal).unwrap();
        prop_assert_eq!(serde_json::from_str::<MonomialIdeal>(&text).unwrap(), ideal);
    }
}
