//! Optimal multiset pairing under Euclidean distance (exact assignment via
//! bitmask dynamic programming; sizes here are small).

use num_complex::Complex64;

/// Minimum-total-cost assignment of `a[i]` to `b[perm[i]]`.
/// Returns the permutation. Panics if lengths differ or exceed 20.
pub fn optimal_assignment(a: &[Complex64], b: &[Complex64]) -> Vec<usize> {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    assert!(n <= 20, "assignment sizes here are desk-scale");
    if n == 0 {
        return Vec::new();
    }
    let full = 1usize << n;
    let mut cost = vec![f64::INFINITY; full];
    let mut choice = vec![usize::MAX; full];
    cost[0] = 0.0;
    for mask in 0..full {
        if cost[mask].is_infinite() {
            continue;
        }
        let i = (mask as u32).count_ones() as usize;
        if i == n {
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) == 0 {
                let c = cost[mask] + (a[i] - b[j]).norm();
                let next = mask | (1 << j);
                if c < cost[next] {
                    cost[next] = c;
                    choice[next] = j;
                }
            }
        }
    }
    let mut perm = vec![0usize; n];
    let mut mask = full - 1;
    for i in (0..n).rev() {
        let j = choice[mask];
        perm[i] = j;
        mask &= !(1 << j);
    }
    perm
}

/// Largest paired distance under the optimal assignment; infinite when the
/// multisets have different sizes.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let perm = optimal_assignment(a, b);
    a.iter()
        .enumerate()
        .map(|(i, &x)| (x - b[perm[i]]).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permuted_points_match_exactly() {
        let a = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.5),
        ];
        let b = [a[2], a[0], a[1]];
        assert_eq!(multiset_distance(&a, &b), 0.0);
    }

    #[test]
    fn greedy_trap_handled() {
        // nearest-neighbor matching would pair a[0] with b[0] and pay a lot
        let a = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let b = [Complex64::new(0.4, 0.0), Complex64::new(-0.5, 0.0)];
        let perm = optimal_assignment(&a, &b);
        assert_eq!(perm, vec![1, 0]);
    }

    #[test]
    fn size_mismatch_is_infinite() {
        let a = [Complex64::new(0.0, 0.0)];
        assert!(multiset_distance(&a, &[]).is_infinite());
    }
}
