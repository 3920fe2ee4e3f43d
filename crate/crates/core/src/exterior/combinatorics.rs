//! Index-set combinatorics for exterior powers of R^n (n <= 31), with
//! subsets encoded as bitmasks.

/// All k-subsets of {0, .., n-1}, ordered lexicographically as sorted tuples.
pub fn k_subsets(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n.saturating_sub(k) {
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

pub fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn from_indices(idx: &[usize]) -> u32 {
    idx.iter().fold(0, |m, i| m | (1 << i))
}

pub fn complement(n: usize, mask: u32) -> u32 {
    !mask & ((1u32 << n) - 1)
}

/// Sign `s` with `e_I ^ e_J = s e_{I u J}`, or `None` when I and J meet.
pub fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    // Count pairs (i in a, j in b) with i > j.
    let inversions: u32 = indices(b).iter().map(|&j| (a >> (j + 1)).count_ones()).sum();
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Action of the elementary matrix `E_ab` (sending `e_b` to `e_a`) on `e_I`:
/// returns the sign and the new index set, or `None` when the result is 0.
pub fn elementary_action(a: usize, b: usize, mask: u32) -> Option<(i64, u32)> {
    if mask & (1 << b) == 0 {
        return None;
    }
    if a == b {
        return Some((1, mask));
    }
    if mask & (1 << a) != 0 {
        return None;
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let between = (mask & (((1u32 << hi) - 1) & !((1u32 << (lo + 1)) - 1))).count_ones();
    let sign = if between % 2 == 0 { 1 } else { -1 };
    Some((sign, (mask & !(1 << b)) | (1 << a)))
}

/// Position lookup for the k-subsets of an n-set.
#[derive(Clone, Debug)]
pub struct SubsetIndex {
    pub n: usize,
    pub k: usize,
    subsets: Vec<u32>,
    position: Vec<u32>,
}

impl SubsetIndex {
    pub fn new(n: usize, k: usize) -> Self {
        let subsets = k_subsets(n, k);
        let mut position = vec![u32::MAX; 1 << n];
        for (p, s) in subsets.iter().enumerate() {
            position[*s as usize] = p as u32;
        }
        SubsetIndex { n, k, subsets, position }
    }
    pub fn len(&self) -> usize {
        self.subsets.len()
    }
    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }
    pub fn subset(&self, p: usize) -> u32 {
        self.subsets[p]
    }
    pub fn subsets(&self) -> &[u32] {
        &self.subsets
    }
    pub fn position(&self, mask: u32) -> Option<usize> {
        let p = *self.position.get(mask as usize)?;
        (p != u32::MAX).then_some(p as usize)
    }
    /// Label such as `e1234` (1-based indices) with a prefix.
    pub fn label(&self, p: usize, prefix: &str) -> String {
        let digits: String = indices(self.subsets[p]).iter().map(|i| (i + 1).to_string()).collect();
        format!("{prefix}{digits}")
    }
}
