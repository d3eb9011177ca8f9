//! Residue arithmetic in `Z_n`.

use num_integer::Integer;

pub fn gcd(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Additive order of `r` in `Z_n`.
pub fn order(r: u32, n: u32) -> u32 {
    n / gcd(r % n, n)
}

/// Residues of exact additive order `q` in `Z_n` (empty unless `q | n`).
pub fn elements_of_order(q: u32, n: u32) -> Vec<u32> {
    if q == 0 || !n.is_multiple_of(q) {
        return Vec::new();
    }
    (0..n).filter(|&r| order(r, n) == q).collect()
}

/// The unit group `(Z_n)^*`, ascending.
pub fn units(n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&u| gcd(u, n) == 1).collect()
}

/// Whether the residues generate `Z_n`.
pub fn generates(residues: impl IntoIterator<Item = u32>, n: u32) -> bool {
    residues.into_iter().fold(n, |g, r| gcd(g, r % n)) == 1
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn neg(r: u32, n: u32) -> u32 {
    (n - r % n) % n
}

/// Solve `x * d = y` in `Z_n` for `x` modulo `n / gcd(n, d)`, if solvable.
pub fn discrete_div(y: u32, d: u32, n: u32) -> Option<u32> {
    let m = n / gcd(d, n);
    (0..m).find(|&x| (x as u64 * d as u64 % n as u64) as u32 == y % n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_units() {
        assert_eq!(order(0, 6), 1);
        assert_eq!(order(4, 6), 3);
        assert_eq!(elements_of_order(4, 8), vec![2, 6]);
        assert_eq!(units(12), vec![1, 5, 7, 11]);
        assert!(generates([4, 5], 10));
        assert!(!generates([4, 6], 10));
        assert!(!generates([2, 4], 6));
        assert_eq!(discrete_div(6, 2, 8), Some(3));
        assert_eq!(discrete_div(3, 2, 8), None);
    }
}
