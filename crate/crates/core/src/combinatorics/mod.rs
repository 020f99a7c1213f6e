//! Permutations, ordered and set partitions of `{1..n}`, compositions,
//! partitions, multipartitions and symmetric-group characters.
//!
//! Text forms: permutations `[2 1 3]`, ordered partitions `{1,3|2|}`,
//! partitions `(2,1)`, multipartitions `((2),(1))`.

mod characters;
mod ordered;
mod perm;
mod young;

pub use characters::{sn_character, sn_character_at};
pub use ordered::{
    count_classes, enumerate_ordered, ordered_with_composition, set_partitions, OrderedPartition,
    SetPartition,
};
pub use perm::{reduced_word, Permutation, SymmetricGroup};
pub use young::{
    compositions, e_regular, hook_dim, multinomial, multipartitions, multipartitions_of,
    partitions, quantum_characteristic, standard_tableaux, Composition, MultiPartition, Partition,
    QuantumChar, StandardTableau,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatoricsError {
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("labels {pos:?} are not all in 1..={d}")]
    LabelOutOfRange { d: usize, pos: Vec<usize> },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// The cyclic subgroup of `S_d` generated by `σ_{d/p}`, in order of powers.
pub fn cyclic_shifts(d: usize, p: usize) -> Vec<Permutation> {
    assert!(p >= 1 && d.is_multiple_of(p), "p must divide d");
    (0..p).map(|k| Permutation::shift(d, k * (d / p))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn actions_commute_and_compose() {
        for d in 1..=3 {
            for n in 1..=3 {
                let sd = SymmetricGroup::get(d);
                let sn = SymmetricGroup::get(n);
                for i in enumerate_ordered(d, n) {
                    for s in sd.elements() {
                        for t in sd.elements() {
                            assert_eq!(i.act_sd(s).act_sd(t), i.act_sd(&t.compose(s)));
                        }
                        for pi in sn.elements() {
                            assert_eq!(i.act_sd(s).act_sn(pi), i.act_sn(pi).act_sd(s));
                        }
                    }
                    for a in sn.elements() {
                        for b in sn.elements() {
                            assert_eq!(i.act_sn(b).act_sn(a), i.act_sn(&a.compose(b)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sd_action_is_injective_and_classes_are_orbits() {
        for d in 1..=3 {
            for n in 1..=3 {
                let sd = SymmetricGroup::get(d);
                let all = enumerate_ordered(d, n);
                for s in sd.elements() {
                    let mut images: Vec<_> = all.iter().map(|i| i.act_sd(s)).collect();
                    images.sort();
                    images.dedup();
                    assert_eq!(images.len(), all.len());
                }
                for i in &all {
                    for j in &all {
                        let same_orbit = sd.elements().iter().any(|s| i.act_sd(s) == *j);
                        assert_eq!(i.orbit_class() == j.orbit_class(), same_orbit);
                    }
                }
            }
        }
    }

    #[test]
    fn stabilizers_can_be_nontrivial() {
        // d = 3, n = 1: swapping the two empty parts fixes ({1}, ∅, ∅).
        let i: OrderedPartition = "{1||}".parse().unwrap();
        assert_eq!(i.act_sd(&Permutation::transposition(3, 2, 3)), i);
    }
}
