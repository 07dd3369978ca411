use std::collections::BTreeSet;

use parakl::combinatorics::all_paths;
use parakl::dyck::{all_partitions, configurations, q_rule_ii, satisfies_rule_ii, Rule};
use parakl::linkage::{all_linkages, expand_monomial, l_set, substitute_c_basis};
use parakl::hecke::{p_plus_table, PlusRoute};
use parakl::ls_tree::{build_tree, config_to_labelling, enumerate_labellings, geometric_capacity, labelling_to_config, string_capacity};
use parakl::{ModElem, Path, Sign};

fn comparable_pairs(n: usize, k: usize) -> Vec<(Path, Path)> {
    let paths = all_paths(n, k).unwrap();
    let mut out = Vec::new();
    for lo in &paths {
        for hi in &paths {
            if lo.is_below(hi) {
                out.push((*lo, *hi));
            }
        }
    }
    out
}

fn shapes(max_n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=max_n).flat_map(|n| (0..=n).map(move |k| (n, k)))
}

#[test]
fn labellings_biject_onto_rule_i_configurations() {
    for (n, k) in shapes(8) {
        for (lo, hi) in comparable_pairs(n, k) {
            let tree = build_tree(&lo, &hi).unwrap();
            let mut images = BTreeSet::new();
            for nu in enumerate_labellings(&tree) {
                let c = labelling_to_config(&lo, &hi, &nu).unwrap();
                assert_eq!(config_to_labelling(&c).unwrap(), nu);
                images.insert(format!("{c:?}"));
            }
            let conf: BTreeSet<_> = configurations(&lo, &hi, Rule::I).unwrap().iter().map(|c| format!("{c:?}")).collect();
            assert_eq!(images, conf, "{lo} / {hi}");
        }
    }
}

#[test]
fn capacities_agree_with_string_formula() {
    for (n, k) in shapes(8) {
        for (lo, hi) in comparable_pairs(n, k) {
            let (a, b) = (lo.to_binary(Sign::Plus), hi.to_binary(Sign::Plus));
            for i in 0..=n {
                assert_eq!(geometric_capacity(&lo, &hi, i), string_capacity(&a, &b, i));
            }
        }
    }
}

#[test]
fn rule_ii_configurations_are_unique() {
    for (n, k) in shapes(8) {
        for (lo, hi) in comparable_pairs(n, k) {
            assert!(configurations(&lo, &hi, Rule::II).unwrap().len() <= 1);
            assert!(q_rule_ii::<i64>(&lo, &hi).is_ok());
        }
    }
}

#[test]
fn pruned_enumeration_matches_filtering() {
    for (n, k) in shapes(6) {
        for (lo, hi) in comparable_pairs(n, k) {
            let all = all_partitions(&lo, &hi).unwrap();
            let filtered: BTreeSet<_> = all.iter().filter(|c| satisfies_rule_ii(c)).map(|c| format!("{c:?}")).collect();
            let pruned: BTreeSet<_> = configurations(&lo, &hi, Rule::II).unwrap().iter().map(|c| format!("{c:?}")).collect();
            assert_eq!(filtered, pruned);
        }
    }
}

#[test]
fn linkage_expansion_for_every_k() {
    for (n, k) in shapes(8) {
        let plus = p_plus_table::<i64>(n, k, PlusRoute::Inversion).unwrap();
        for beta in all_paths(n, k).unwrap() {
            let s = beta.to_binary(Sign::Plus);
            assert!(!all_linkages(&s).is_empty());
            let support = l_set(&s).unwrap();
            assert!(support.contains_key(&beta) && support[&beta] == 0);
            let e: ModElem = expand_monomial(&beta).unwrap();
            assert_eq!(substitute_c_basis(&e, &plus).unwrap(), ModElem::basis(beta, Sign::Plus), "N={n} K={k} {beta}");
        }
    }
}
