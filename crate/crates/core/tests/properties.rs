mod common;

use num_rational::BigRational;
use posetlab::chains::{count_2chains, kleitman_lower_bound, lubell_mass, pair_count};
use posetlab::embed::{build_inclusion_bigraph, creates_copy_through, min_degree_subgraph};
use posetlab::numbers::factorial;
use posetlab::poset::Coloring;
use posetlab::{find_copy, FreenessMode, Mask, Poset, SetFamily};
use proptest::prelude::*;

fn poset_strategy(max_len: usize) -> impl Strategy<Value = Poset> {
    (1..=max_len).prop_flat_map(|len| {
        prop::collection::vec(any::<bool>(), len * (len - 1) / 2).prop_map(move |rel| {
            let labels: Vec<String> = (0..len).map(|i| format!("e{i}")).collect();
            let mut covers = Vec::new();
            let mut k = 0;
            for i in 0..len {
                for j in i + 1..len {
                    if rel[k] {
                        covers.push((labels[i].clone(), labels[j].clone()));
                    }
                    k += 1;
                }
            }
            Poset::from_covers(&labels, &covers).unwrap()
        })
    })
}

fn family_strategy(max_n: u32) -> impl Strategy<Value = SetFamily> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0..1u32 << n, 0..=(1usize << n).min(12))
            .prop_map(move |masks| SetFamily::new(n, masks).unwrap())
    })
}

fn mode_strategy() -> impl Strategy<Value = FreenessMode> {
    prop_oneof![
        Just(FreenessMode::Weak),
        Just(FreenessMode::Induced),
        Just(FreenessMode::RankPreserving),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dual_is_an_involution(p in poset_strategy(6)) {
        prop_assert!(p.dual().dual().same_order(&p));
        for x in 0..p.len() {
            for y in 0..p.len() {
                prop_assert_eq!(p.lt(x, y), p.dual().lt(y, x));
            }
        }
    }

    #[test]
    fn reduction_is_idempotent(p in poset_strategy(6)) {
        let covers: Vec<(String, String)> = p.cover_labels().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        let again = Poset::from_covers(p.labels(), &covers).unwrap();
        prop_assert_eq!(again.covers(), p.covers());
        // Adding every comparable pair as a "cover" reduces to the same diagram.
        let mut all = Vec::new();
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.lt(x, y) {
                    all.push((p.label(x).to_string(), p.label(y).to_string()));
                }
            }
        }
        let closed = Poset::from_covers(p.labels(), &all).unwrap();
        prop_assert_eq!(closed.covers(), p.covers());
    }

    #[test]
    fn poset_json_round_trip(p in poset_strategy(6)) {
        let back = Poset::from_json(&p.to_json()).unwrap();
        prop_assert!(back.same_order(&p));
        prop_assert_eq!(back.to_json(), p.to_json());
    }

    #[test]
    fn family_text_round_trip(f in family_strategy(6)) {
        let text = f.to_text();
        let back = SetFamily::parse(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn detector_matches_brute_force(f in family_strategy(4), p in poset_strategy(4), mode in mode_strategy()) {
        let fast = find_copy(&f, &p, &mode);
        let slow = common::has_copy(f.members(), &p, &mode);
        match (fast, slow) {
            (Ok(Some(e)), Some(true)) => prop_assert!(common::is_copy(&p, &mode, e.images())),
            (Ok(None), Some(false)) => {}
            (Err(_), None) => {}
            (fast, slow) => prop_assert!(false, "detector {:?} vs brute force {:?}", fast, slow),
        }
    }

    #[test]
    fn mode_hierarchy(f in family_strategy(5), p in poset_strategy(4)) {
        let weak = find_copy(&f, &p, &FreenessMode::Weak).unwrap().is_some();
        let induced = find_copy(&f, &p, &FreenessMode::Induced).unwrap().is_some();
        prop_assert!(!induced || weak);
        let ranks = p.rank_assignment();
        if ranks.graded {
            let rp = find_copy(&f, &p, &FreenessMode::RankPreserving).unwrap().is_some();
            prop_assert!(!rp || weak);
            let colored = find_copy(&f, &p, &FreenessMode::Colored(ranks.to_coloring())).unwrap().is_some();
            prop_assert_eq!(rp, colored);
        }
        // Distinct colors impose nothing beyond a weak copy.
        let rainbow = Coloring::new((0..p.len()).collect());
        let colored = find_copy(&f, &p, &FreenessMode::Colored(rainbow)).unwrap().is_some();
        prop_assert_eq!(colored, weak);
    }

    #[test]
    fn copies_survive_adding_sets(f in family_strategy(5), extra in prop::collection::vec(0..32u32, 0..6), p in poset_strategy(4), mode in mode_strategy()) {
        let n = f.n();
        let bigger = SetFamily::new(n, f.iter().chain(extra.iter().map(|&m| m & ((1 << n) - 1)))).unwrap();
        if let Ok(Some(_)) = find_copy(&f, &p, &mode) {
            prop_assert!(find_copy(&bigger, &p, &mode).unwrap().is_some());
        }
    }

    #[test]
    fn copy_through_matches_brute_force(f in family_strategy(4), s in 0..16u32, p in poset_strategy(4), mode in mode_strategy()) {
        let s = s & ((1 << f.n()) - 1);
        prop_assume!(!f.contains(s));
        let fast = creates_copy_through(&f, &p, &mode, s);
        let slow = common::has_copy_through(f.members(), &p, &mode, s);
        match (fast, slow) {
            (Ok(Some(e)), Some(true)) => {
                prop_assert!(e.uses(s));
                prop_assert!(common::is_copy(&p, &mode, e.images()));
            }
            (Ok(None), Some(false)) => {}
            (Err(_), None) => {}
            (fast, slow) => prop_assert!(false, "detector {:?} vs brute force {:?}", fast, slow),
        }
    }

    #[test]
    fn pair_count_is_scaled_lubell_mass(f in family_strategy(8)) {
        let scaled = lubell_mass(&f) * BigRational::from_integer(factorial(f.n() as u64).into());
        prop_assert_eq!(scaled, BigRational::from_integer(pair_count(&f).into()));
    }

    #[test]
    fn kleitman_bound_holds(n in 1..=6u32, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let members = common::random_members(&mut rng, n);
        let f = SetFamily::new(n, members.iter().copied()).unwrap();
        let count = count_2chains(&f);
        prop_assert_eq!(count, common::naive_2chains(&members));
        prop_assert!(num_bigint::BigUint::from(count) >= kleitman_lower_bound(f.len() as u64, n));
    }

    #[test]
    fn dense_graphs_have_cores(n in 3..=7u32, i in 0..6u32, gap in 1..=3u32, d in 1..=4usize, seed in any::<u64>()) {
        let j = i + gap;
        prop_assume!(j <= n);
        let mut rng = common::rng(seed);
        let members: Vec<Mask> = common::random_members(&mut rng, n)
            .into_iter()
            .filter(|m| m.count_ones() == i || m.count_ones() == j)
            .collect();
        let f = SetFamily::new(n, members).unwrap();
        let g = build_inclusion_bigraph(&f, i, j).unwrap();
        let core = min_degree_subgraph(&g, d);
        if let Some(avg) = g.average_degree() {
            if avg > (2 * (d - 1)).into() {
                prop_assert!(!core.is_empty());
            }
        }
        if !core.is_empty() {
            prop_assert!(core.min_degree().unwrap() >= d);
        }
    }
}
