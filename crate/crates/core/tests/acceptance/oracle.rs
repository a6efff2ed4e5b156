//! Independent reference arithmetic on windows `[w(1), ..., w(n)]`, written
//! from the definitions and used to cross-check the library.

use std::collections::{BTreeSet, VecDeque};

pub type Win = Vec<i32>;

pub fn eval(w: &[i32], i: i32) -> i32 {
    if i > 0 {
        w[i as usize - 1]
    } else {
        -w[(-i) as usize - 1]
    }
}

/// `(x·y)(i) = x(y(i))`.
pub fn compose(x: &[i32], y: &[i32]) -> Win {
    (1..=x.len() as i32).map(|i| eval(x, eval(y, i))).collect()
}

pub fn product(factors: &[Win]) -> Win {
    let n = factors[0].len();
    factors.iter().fold(identity(n), |acc, f| compose(&acc, f))
}

pub fn invert(w: &[i32]) -> Win {
    let mut out = vec![0; w.len()];
    for (i, &v) in w.iter().enumerate() {
        let i = i as i32 + 1;
        if v > 0 {
            out[v as usize - 1] = i;
        } else {
            out[(-v) as usize - 1] = -i;
        }
    }
    out
}

pub fn identity(n: usize) -> Win {
    (1..=n as i32).collect()
}

pub fn s(i: usize, n: usize) -> Win {
    let mut w = identity(n);
    w.swap(i - 1, i);
    w
}

pub fn t(n: usize) -> Win {
    let mut w = identity(n);
    w[0] = -1;
    w
}

/// The sign change at position `i`.
pub fn t_at(i: usize, n: usize) -> Win {
    let mut w = identity(n);
    w[i - 1] = -(i as i32);
    w
}

pub fn r(i: usize, n: usize) -> Win {
    (1..=n as i32)
        .map(|j| match j {
            1 => -(i as i32),
            j if j <= i as i32 => j - 1,
            j => j,
        })
        .collect()
}

pub fn a(l: usize, n: usize) -> Win {
    let l = l as i32;
    (1..=n as i32).map(|i| if i <= l { i - 1 - l } else { i }).collect()
}

pub fn longest(n: usize) -> Win {
    (1..=n as i32).map(|i| -i).collect()
}

/// Reverses the block `[i, j]`; identity when `j < i`.
pub fn sigma_interval(i: usize, j: usize, n: usize) -> Win {
    let mut w = identity(n);
    if i <= j {
        w[i - 1..j].reverse();
    }
    w
}

/// Longest element of `𝔖_{l,n-l}`.
pub fn sigma_young(l: usize, n: usize) -> Win {
    compose(&sigma_interval(1, l, n), &sigma_interval(l + 1, n, n))
}

pub fn permutations(n: usize) -> Vec<Win> {
    fn go(prefix: &mut Win, rest: &mut Vec<i32>, out: &mut Vec<Win>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            prefix.push(v);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(k, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut identity(n), &mut out);
    out
}

pub fn signed_permutations(n: usize) -> Vec<Win> {
    let mut out = Vec::new();
    for p in permutations(n) {
        for mask in 0u32..1 << n {
            out.push(
                p.iter()
                    .enumerate()
                    .map(|(k, &v)| if mask >> k & 1 == 1 { -v } else { v })
                    .collect(),
            );
        }
    }
    out.sort();
    out
}

/// `inv(w) + Σ_{w(j) < 0} |w(j)|`.
pub fn length(w: &[i32]) -> usize {
    let mut inv = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                inv += 1;
            }
        }
    }
    inv + w.iter().filter(|&&v| v < 0).map(|v| v.unsigned_abs() as usize).sum::<usize>()
}

/// Number of `t` letters in the reduced word obtained by stripping right
/// descents, `t` first.
pub fn ell_t(w: &[i32]) -> usize {
    let mut w = w.to_vec();
    let mut count = 0;
    loop {
        if w[0] < 0 {
            w[0] = -w[0];
            count += 1;
        } else if let Some(i) = (0..w.len() - 1).find(|&i| w[i] > w[i + 1]) {
            w.swap(i, i + 1);
        } else {
            return count;
        }
    }
}

/// `w[i, j] = |{a ∈ [-n, n] : a ≤ i, w(a) ≥ j}|`, indexed from `-n`.
fn rank_matrix(w: &[i32]) -> Vec<u16> {
    let n = w.len() as i32;
    let size = (2 * n + 1) as usize;
    let mut m = vec![0u16; size * size];
    for (ii, i) in (-n..=n).enumerate() {
        for (jj, j) in (-n..=n).enumerate() {
            m[ii * size + jj] = (-n..=i)
                .filter(|&a| a != 0 && eval(w, a) >= j)
                .count() as u16;
        }
    }
    m
}

/// Bruhat order through rank matrices.
pub struct BruhatOracle {
    matrices: Vec<Vec<u16>>,
}

impl BruhatOracle {
    pub fn new(elements: &[Win]) -> Self {
        BruhatOracle { matrices: elements.iter().map(|w| rank_matrix(w)).collect() }
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.matrices[x].iter().zip(&self.matrices[y]).all(|(a, b)| a <= b)
    }
}

/// The directed relation `w ⌣1 w s_i`.
pub fn smile1(w: &[i32]) -> Vec<Win> {
    let n = w.len();
    let at = |i: usize| w[i - 1];
    let mut out = Vec::new();
    for i in 1..n {
        let first = i >= 2 && at(i) < at(i - 1) && at(i - 1) < at(i + 1);
        let second = i + 2 <= n && at(i) < at(i + 2) && at(i + 2) < at(i + 1);
        if first || second {
            out.push(compose(w, &s(i, n)));
        }
    }
    out
}

pub fn smile2(w: &[i32], r: usize) -> Vec<Win> {
    let n = w.len();
    (1..=r.min(n - 1))
        .filter(|&i| w[i - 1] * w[i] < 0)
        .map(|i| compose(w, &s(i, n)))
        .collect()
}

pub fn in_e(w: &[i32], r: usize) -> bool {
    let n = w.len();
    if r + 1 >= n {
        return false;
    }
    let tail = &w[1..r + 2];
    if tail.iter().any(|v| v.abs() >= w[0].abs()) {
        return false;
    }
    let pos: Vec<i32> = tail.iter().copied().filter(|&v| v > 0).collect();
    let neg: Vec<i32> = tail.iter().copied().filter(|&v| v < 0).collect();
    pos.windows(2).all(|p| p[0] > p[1]) && neg.windows(2).all(|p| p[0] < p[1])
}

pub fn smile3(w: &[i32], r: usize) -> Option<Win> {
    in_e(w, r).then(|| compose(w, &t(w.len())))
}

/// Union-find over `0..n` with path halving.
pub struct Classes {
    parent: Vec<usize>,
}

impl Classes {
    pub fn new(n: usize) -> Self {
        Classes { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Blocks as sorted index sets.
    pub fn blocks(&mut self) -> BTreeSet<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..n {
            let root = self.find(x);
            by_root.entry(root).or_default().push(x);
        }
        by_root.into_values().collect()
    }
}

/// Mutual-reachability classes of a digraph, by one BFS per vertex.
pub fn mutual_reachability(adjacency: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let n = adjacency.len();
    let reach: Vec<Vec<bool>> = (0..n)
        .map(|v| {
            let mut seen = vec![false; n];
            seen[v] = true;
            let mut queue = VecDeque::from([v]);
            while let Some(u) = queue.pop_front() {
                for &w in &adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            seen
        })
        .collect();
    let mut classes = Classes::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if reach[u][v] && reach[v][u] {
                classes.union(u, v);
            }
        }
    }
    classes.blocks()
}

pub fn reaches(adjacency: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut seen = vec![false; adjacency.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            return true;
        }
        for &w in &adjacency[u] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

/// `w` is positive and of minimal length in its coset `w 𝔖_{l,n-l}`,
/// where `young` lists that subgroup.
pub fn young_minimal_by_search(w: &[i32], young: &[Win]) -> bool {
    w.iter().all(|&v| v > 0) && young.iter().all(|u| length(&compose(w, u)) >= length(w))
}

/// Positive permutations stabilising `[1, l]`.
pub fn young_subgroup(l: usize, n: usize) -> Vec<Win> {
    permutations(n)
        .into_iter()
        .filter(|p| p[..l].iter().all(|&v| v as usize <= l))
        .collect()
}
