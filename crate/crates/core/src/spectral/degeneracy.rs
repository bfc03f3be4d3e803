/// `C(N + n − 1, N − 1)`.
pub fn degeneracy_count(n_dim: u32, n: u32) -> u128 {
    let k = u128::from(n_dim.saturating_sub(1));
    let top = u128::from(n_dim) + u128::from(n) - 1;
    (0..k).fold(1u128, |acc, i| acc * (top - i) / (i + 1))
}

/// Number of `(n_1..n_N)` with `n_i ≥ 0` and `Σ n_i = n`, by explicit enumeration.
pub fn degeneracy_bruteforce(n_dim: u32, n: u32) -> u128 {
    fn rec(parts: u32, remaining: u32) -> u128 {
        if parts == 1 {
            return 1;
        }
        (0..=remaining).map(|v| rec(parts - 1, remaining - v)).sum()
    }
    if n_dim == 0 {
        return u128::from(n == 0);
    }
    rec(n_dim, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(degeneracy_count(3, 2), 6);
        assert_eq!(degeneracy_bruteforce(3, 2), 6);
        for n in 0..12 {
            assert_eq!(degeneracy_count(1, n), 1);
        }
    }

    #[test]
    fn binomial_equals_enumeration() {
        for dim in 1..=6 {
            for n in 0..=10 {
                assert_eq!(
                    degeneracy_count(dim, n),
                    degeneracy_bruteforce(dim, n),
                    "N={dim} n={n}"
                );
            }
        }
    }
}
