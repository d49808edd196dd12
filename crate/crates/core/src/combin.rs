//! Lexicographic combination iterators and binomial counts.

/// All `k`-subsets of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let cur = self.current.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All non-decreasing sequences of length `k` over `0..n` (multisets), in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct Multisets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Multisets {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if n > 0 || k == 0 { Some(vec![0; k]) } else { None };
        Multisets { n, current }
    }

    /// Multisets whose first entry is fixed to `first`.
    pub fn with_first(n: usize, k: usize, first: usize) -> impl Iterator<Item = Vec<usize>> {
        assert!(k >= 1 && first < n);
        Multisets::new(n - first, k - 1)
            .map(move |rest| std::iter::once(first).chain(rest.into_iter().map(|x| x + first)).collect())
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        match cur.iter().rposition(|&x| x + 1 < self.n) {
            Some(i) => {
                let v = cur[i] + 1;
                for x in cur[i..].iter_mut() {
                    *x = v;
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_order() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(10, 5).count() as u128, binomial(10, 5));
    }

    #[test]
    fn multisets_in_order() {
        let all: Vec<_> = Multisets::new(3, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2], vec![2, 2]]);
        assert_eq!(Multisets::new(9, 5).count() as u128, binomial(13, 5));
        let firsts: Vec<_> = Multisets::with_first(3, 2, 1).collect();
        assert_eq!(firsts, vec![vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(500, 250), u128::MAX);
    }
}
