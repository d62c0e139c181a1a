//! Subset and multiset enumeration in lexicographic order.

/// All `k`-subsets of `0..n`, each sorted, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations { n, current: if k <= n { Some((0..k).collect()) } else { None } }
}

pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// All non-decreasing `k`-tuples over `0..n` (multisets), lexicographic.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(n, k, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 || k == 0 {
        go(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Binomial coefficient; `0` when `k > n`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Distinct orderings of a sorted tuple, in lexicographic order.
pub fn distinct_permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    // next-permutation on a multiset visits each distinct arrangement once
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Number of distinct orderings of a sorted tuple: `k! / Π mult!`.
pub fn arrangement_count(sorted: &[usize]) -> u64 {
    let fact = |m: usize| (1..=m as u64).product::<u64>();
    let mut denom = 1u64;
    let mut i = 0;
    while i < sorted.len() {
        let j = (i..sorted.len()).find(|&j| sorted[j] != sorted[i]).unwrap_or(sorted.len());
        denom *= fact(j - i);
        i = j;
    }
    fact(sorted.len()) / denom
}

pub fn is_strictly_increasing(t: &[usize]) -> bool {
    t.windows(2).all(|w| w[0] < w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(combinations(5, 3).count(), 10);
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(multisets(7, 3).len(), 84);
        assert_eq!(multisets(3, 0).len(), 1);
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(distinct_permutations(&[1, 1, 2]).len(), 3);
        assert_eq!(distinct_permutations(&[0, 1, 2]).len(), 6);
        assert_eq!(arrangement_count(&[1, 1, 2]), 3);
        assert_eq!(arrangement_count(&[4, 4, 4, 4]), 1);
    }

    #[test]
    fn lexicographic() {
        let v: Vec<_> = combinations(4, 2).collect();
        assert_eq!(v, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
