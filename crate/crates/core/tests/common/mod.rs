//! Independent oracles for the integration and acceptance tests. Nothing here
//! calls into the library's algorithms; only raw tables and integers.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use fagroup::FiniteGroup;
use fagroup::presentation::IntMatrix;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smith diagonal by naive reduction: diagonalise with first-nonzero pivots
/// and Euclidean row/column steps, then normalise pairs to (gcd, lcm).
pub fn naive_snf_diagonal(rows: &[Vec<i64>]) -> Vec<i128> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let k = m.min(n);
    for t in 0..k {
        let Some((pi, pj)) = (t..n).flat_map(|j| (t..m).map(move |i| (i, j))).find(|&(i, j)| a[i][j] != 0)
        else {
            break;
        };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..m {
                while a[i][t] != 0 {
                    let q = a[i][t] / a[t][t];
                    for j in 0..n {
                        a[i][j] -= q * a[t][j];
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                    }
                    changed = true;
                }
            }
            for j in t + 1..n {
                while a[t][j] != 0 {
                    let q = a[t][j] / a[t][t];
                    for i in 0..m {
                        a[i][j] -= q * a[i][t];
                    }
                    if a[t][j] != 0 {
                        for r in a.iter_mut() {
                            r.swap(t, j);
                        }
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
    let mut d: Vec<i128> = (0..k).map(|i| a[i][i].abs()).collect();
    // zeros last, then enforce the chain
    d.sort_by_key(|&x| (x == 0, x));
    for i in 0..k {
        for j in i + 1..k {
            let (x, y) = (d[i], d[j]);
            if x == 0 && y == 0 {
                continue;
            }
            let g = gcd(x, y);
            let l = if x == 0 || y == 0 { 0 } else { x / g * y };
            d[i] = g;
            d[j] = l;
        }
    }
    d.sort_by_key(|&x| (x == 0, x));
    d
}

fn det(a: &[Vec<i128>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return a[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * a[0][j] * det(&minor)
        })
        .sum()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Smith diagonal from determinantal divisors: `d_k = D_k / D_{k-1}` where
/// `D_k` is the gcd of all k x k minors.
pub fn determinantal_diagonal(rows: &[Vec<i64>]) -> Vec<i128> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=m.min(n) {
        let mut g = 0i128;
        for rs in combinations(m, k) {
            for cs in combinations(n, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                g = gcd(g, det(&sub));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat_n(0, m.min(n) - k + 1));
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

pub fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).try_into().unwrap()).collect())
        .collect()
}

pub fn matmul(a: &[Vec<i128>], b: &[Vec<i128>], inner: usize, cols: usize) -> Vec<Vec<i128>> {
    a.iter()
        .map(|r| (0..cols).map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum()).collect())
        .collect()
}

/// Raw table access without the library's helpers.
pub struct Table {
    pub n: usize,
    pub t: Vec<u32>,
}

impl Table {
    pub fn of(g: &FiniteGroup) -> Table {
        Table {
            n: g.order(),
            t: g.table().to_vec(),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.t[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.mul(a, b) == 0).unwrap()
    }

    /// Subgroup generated by `seeds`, by closing under multiplication
    /// (enough for finite groups).
    pub fn closure(&self, seeds: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            for &s in seeds {
                let y = self.mul(list[i], s);
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        inside
    }

    pub fn normal_closure(&self, seeds: &[usize]) -> Vec<bool> {
        let mut conj = Vec::new();
        for &s in seeds {
            for x in 0..self.n {
                conj.push(self.mul(self.mul(x, s), self.inv(x)));
            }
        }
        self.closure(&conj)
    }

    pub fn generates_normally(&self, seeds: &[usize]) -> bool {
        self.normal_closure(seeds).iter().all(|&b| b)
    }

    /// Every `k`-subset has a proper normal closure. `k = 1` is F-A.
    pub fn naive_nfa(&self, k: usize) -> bool {
        if self.n == 1 || k >= self.n {
            return false;
        }
        combinations(self.n, k).iter().all(|s| !self.generates_normally(s))
    }

    /// Least k such that some k-subset normally generates; 0 for the trivial group.
    pub fn naive_weight(&self) -> usize {
        if self.n == 1 {
            return 0;
        }
        (1..=self.n)
            .find(|&k| combinations(self.n, k).iter().any(|s| self.generates_normally(s)))
            .unwrap()
    }

    /// All normal subgroups by checking every subset closed under products
    /// and conjugation; only for tiny groups.
    pub fn naive_normal_subgroup_count(&self) -> usize {
        assert!(self.n <= 12);
        let mut count = 0;
        for bits in 0u32..(1 << self.n) {
            if bits & 1 == 0 {
                continue;
            }
            let has = |x: usize| bits >> x & 1 == 1;
            let closed = (0..self.n).all(|a| {
                !has(a)
                    || (0..self.n).all(|b| {
                        (!has(b) || has(self.mul(a, b))) && has(self.mul(self.mul(b, a), self.inv(b)))
                    })
            });
            if closed {
                count += 1;
            }
        }
        count
    }

    /// Element-order profile of `G/G'`: derived subgroup by closing all
    /// commutators, then for each coset the least k with `x^k` in it.
    pub fn abelianisation_profile(&self) -> BTreeMap<u64, u64> {
        let mut comms = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                comms.push(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        let d = self.closure(&comms);
        let mut seen = vec![false; self.n];
        let mut profile = BTreeMap::new();
        for x in 0..self.n {
            if seen[x] {
                continue;
            }
            for y in 0..self.n {
                if d[y] {
                    seen[self.mul(x, y)] = true;
                }
            }
            let (mut p, mut k) = (x, 1u64);
            while !d[p] {
                p = self.mul(p, x);
                k += 1;
            }
            *profile.entry(k).or_insert(0) += 1;
        }
        profile
    }
}

/// Element-order profile of `C_d1 x ... x C_dk`, by enumerating tuples.
pub fn cyclic_product_profile(factors: &[u64]) -> BTreeMap<u64, u64> {
    fn lcm(a: u64, b: u64) -> u64 {
        a / gcd(a as i128, b as i128) as u64 * b
    }
    let mut orders: Vec<u64> = vec![1];
    for &d in factors {
        let mut next = Vec::with_capacity(orders.len() * d as usize);
        for &o in &orders {
            for x in 0..d {
                let ox = d / gcd(x as i128, d as i128) as u64;
                next.push(lcm(o, ox));
            }
        }
        orders = next;
    }
    let mut profile = BTreeMap::new();
    for o in orders {
        *profile.entry(o).or_insert(0) += 1;
    }
    profile
}
