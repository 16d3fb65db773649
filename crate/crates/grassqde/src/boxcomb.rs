//! Partitions in the k x (n-k) box, frames (k-subsets) and rook strips.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of exactly k nonnegative parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty(k: usize) -> Partition {
        Partition(vec![0; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn in_box(&self, n: usize) -> bool {
        n >= self.k() && self.first() as usize <= n - self.k()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Partition> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad partition {s:?}")))?;
        Partition::new(parts)
    }
}

/// Strictly increasing k-subset of {1..n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KSubset(pub Vec<usize>);

impl KSubset {
    pub fn elems(&self) -> &[usize] {
        &self.0
    }

    /// Spin-chain state index with site i contributing 2^(i-1).
    pub fn state_index(&self) -> usize {
        self.0.iter().map(|&i| 1usize << (i - 1)).sum()
    }
}

fn check_shape(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidShape(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    Ok(())
}

/// All partitions in the k x (n-k) box in lexicographic order.
pub fn enumerate_partitions(k: usize, n: usize) -> Result<Vec<Partition>> {
    check_shape(k, n)?;
    let w = (n - k) as u32;
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(i: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == cur.len() {
            out.push(Partition(cur.clone()));
            return;
        }
        for v in 0..=max {
            cur[i] = v;
            rec(i + 1, v, cur, out);
        }
    }
    rec(0, w, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

/// r_i = lambda_{k+1-i} + i.
pub fn partition_to_subset(lambda: &Partition, n: usize) -> Result<KSubset> {
    let k = lambda.k();
    if !lambda.in_box(n) {
        return Err(Error::OutOfBox(lambda.0.clone(), k, n.saturating_sub(k)));
    }
    Ok(KSubset((1..=k).map(|i| lambda.0[k - i] as usize + i).collect()))
}

pub fn subset_to_partition(r: &KSubset, n: usize) -> Result<Partition> {
    let k = r.0.len();
    let valid = r.0.windows(2).all(|w| w[0] < w[1])
        && r.0.first().is_none_or(|&a| a >= 1)
        && r.0.last().is_none_or(|&b| b <= n);
    if !valid {
        return Err(Error::InvalidShape(format!("{:?} is not a k-subset of 1..{n}", r.0)));
    }
    Ok(Partition((1..=k).map(|j| (r.0[k - j] - (k + 1 - j)) as u32).collect()))
}

/// Partitions with their frames, both in lexicographic partition order.
pub fn frames(k: usize, n: usize) -> Result<Vec<(Partition, KSubset)>> {
    enumerate_partitions(k, n)?
        .into_iter()
        .map(|p| {
            let r = partition_to_subset(&p, n)?;
            Ok((p, r))
        })
        .collect()
}

/// A rook-strip successor together with its sign (-1)^{|nu/lambda|}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub nu: Partition,
    pub sign: i32,
}

/// All nu containing lambda such that nu/lambda has at most one box in each
/// row and column. `bound` caps nu_1 (use n-k for the bounded variant).
pub fn rook_strip_successors(lambda: &Partition, bound: Option<u32>) -> Vec<Strip> {
    let k = lambda.k();
    // Row i can take a box iff it is the first row or the row above is longer;
    // two added boxes in rows with equal parts would share a column.
    let rows: Vec<usize> = (0..k)
        .filter(|&i| i == 0 || lambda.0[i - 1] > lambda.0[i])
        .filter(|&i| i != 0 || bound.is_none_or(|b| lambda.0[0] < b))
        .collect();
    let mut out = Vec::with_capacity(1 << rows.len());
    for mask in 0..(1u32 << rows.len()) {
        let mut nu = lambda.0.clone();
        for (bit, &i) in rows.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                nu[i] += 1;
            }
        }
        let added = mask.count_ones() as i32;
        out.push(Strip { nu: Partition(nu), sign: if added % 2 == 0 { 1 } else { -1 } });
    }
    out.sort_by(|a, b| a.nu.cmp(&b.nu));
    out
}

/// Drops the first row and the first column: (nu_2 - 1, ..., nu_k - 1, 0),
/// where zero parts stay zero.
pub fn hat_bar(nu: &Partition) -> Partition {
    let k = nu.k();
    let mut out: Vec<u32> = nu.0.iter().skip(1).map(|&p| p.saturating_sub(1)).collect();
    out.resize(k, 0);
    Partition(out)
}

/// (nu_1 + 1, nu_2, ..., nu_k).
pub fn nu_a(nu: &Partition) -> Partition {
    let mut out = nu.0.clone();
    if let Some(f) = out.first_mut() {
        *f += 1;
    }
    Partition(out)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All compositions of `m` into `k` nonnegative parts, lexicographically decreasing.
pub fn compositions(m: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for v in (0..=left).rev() {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
    }
    if k == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, m, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition(v.to_vec())
    }

    #[test]
    fn gr24_order() {
        let ps = enumerate_partitions(2, 4).unwrap();
        let expect = [[0, 0], [1, 0], [1, 1], [2, 0], [2, 1], [2, 2]];
        assert_eq!(ps, expect.iter().map(|v| p(v)).collect::<Vec<_>>());
        let fs: Vec<Vec<usize>> = ps.iter().map(|l| partition_to_subset(l, 4).unwrap().0).collect();
        assert_eq!(fs, vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4], vec![3, 4]]);
    }

    #[test]
    fn frame_of_figure_partition() {
        let r = partition_to_subset(&p(&[4, 2, 1, 1, 0]), 9).unwrap();
        assert_eq!(r.0, vec![1, 3, 4, 6, 9]);
        assert_eq!(subset_to_partition(&r, 9).unwrap(), p(&[4, 2, 1, 1, 0]));
        assert!(matches!(partition_to_subset(&p(&[3, 0]), 4), Err(Error::OutOfBox(..))));
    }

    #[test]
    fn counts() {
        let ps = enumerate_partitions(3, 5).unwrap();
        assert_eq!(ps.len(), 10);
        assert_eq!(ps[0], p(&[0, 0, 0]));
        assert_eq!(ps[9], p(&[2, 2, 2]));
        assert!(matches!(enumerate_partitions(3, 2), Err(Error::InvalidShape(_))));
    }

    #[test]
    fn strips_of_one_box() {
        let s = rook_strip_successors(&p(&[1, 0]), Some(2));
        let got: Vec<(Vec<u32>, i32)> = s.iter().map(|x| (x.nu.0.clone(), x.sign)).collect();
        assert_eq!(
            got,
            vec![(vec![1, 0], 1), (vec![1, 1], -1), (vec![2, 0], -1), (vec![2, 1], 1)]
        );
        assert_eq!(rook_strip_successors(&p(&[2, 2]), Some(2)).len(), 1);
        assert_eq!(rook_strip_successors(&p(&[0]), None).len(), 2);
    }

    #[test]
    fn surgeries() {
        assert_eq!(hat_bar(&p(&[2, 1])), p(&[0, 0]));
        assert_eq!(hat_bar(&p(&[2, 2])), p(&[1, 0]));
        assert_eq!(hat_bar(&p(&[1, 0])), p(&[0, 0]));
        assert_eq!(nu_a(&p(&[2, 2])), p(&[3, 2]));
        assert_eq!(nu_a(&p(&[0, 0])), p(&[1, 0]));
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
    }
}
