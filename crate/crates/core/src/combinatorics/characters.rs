use super::perm::Permutation;
use super::young::Partition;

/// `χ^λ` at a permutation with cycle type `rho`, by the Murnaghan–Nakayama
/// rule on beta-sets.
pub fn sn_character(lambda: &Partition, rho: &[usize]) -> i64 {
    assert_eq!(
        lambda.size(),
        rho.iter().sum::<usize>(),
        "character argument has the wrong degree"
    );
    let k = lambda.parts().len();
    let beta: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (k - 1 - i))
        .collect();
    mn(beta, rho)
}

fn mn(beta: Vec<usize>, rho: &[usize]) -> i64 {
    let Some((&r, rest)) = rho.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        // Each bead strictly between the two positions is one hook row crossed.
        let crossed = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * mn(next, rest);
    }
    total
}

/// `χ^λ(w)`.
pub fn sn_character_at(lambda: &Partition, w: &Permutation) -> i64 {
    sn_character(lambda, &w.cycle_type())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::young::partitions;

    #[test]
    fn s3_table() {
        let triv = Partition::new(vec![3]);
        let sign = Partition::new(vec![1, 1, 1]);
        let std = Partition::new(vec![2, 1]);
        assert_eq!(sn_character(&triv, &[2, 1]), 1);
        assert_eq!(sn_character(&sign, &[2, 1]), -1);
        assert_eq!(sn_character(&sign, &[3]), 1);
        assert_eq!(sn_character(&std, &[1, 1, 1]), 2);
        assert_eq!(sn_character(&std, &[2, 1]), 0);
        assert_eq!(sn_character(&std, &[3]), -1);
    }

    #[test]
    fn identity_values_are_dimensions_and_rows_are_orthonormal() {
        for m in 1..=5usize {
            let g = crate::combinatorics::SymmetricGroup::get(m);
            let parts = partitions(m);
            for a in &parts {
                assert_eq!(sn_character(a, &vec![1; m]), a.hook_dim() as i64);
                for b in &parts {
                    let inner: i64 = g
                        .elements()
                        .iter()
                        .map(|w| sn_character_at(a, w) * sn_character_at(b, w))
                        .sum();
                    let expected = if a == b { g.order() as i64 } else { 0 };
                    assert_eq!(inner, expected);
                }
            }
        }
    }
}
