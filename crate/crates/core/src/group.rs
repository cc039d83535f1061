//! Finite groups stored as complete multiplication tables.
//!
//! Element `0` is always the identity. Groups built from generators number
//! their elements in breadth-first order from the identity, extending by the
//! generators in list order, so the same input always gives the same table.

use std::collections::HashMap;
use std::hash::Hash;

use crate::abelian::is_prime;
use crate::error::{Error, Result};

/// Tables up to this order get the full O(n³) associativity check; larger
/// ones are checked with Light's test over a generating set.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 256;

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Build a group from a table without any validation.
    ///
    /// The inverse table is filled in where a right inverse exists; callers
    /// must run [`FiniteGroup::validate`] before trusting the result.
    pub fn from_table_unchecked(name: impl Into<String>, order: usize, table: Vec<u32>) -> Self {
        assert_eq!(table.len(), order * order, "table must be order x order");
        let mut inv = vec![0u32; order];
        for (a, slot) in inv.iter_mut().enumerate() {
            if let Some(b) = (0..order).find(|&b| table[a * order + b] == 0) {
                *slot = b as u32;
            }
        }
        FiniteGroup {
            name: name.into(),
            order,
            table,
            inv,
            generators: Vec::new(),
        }
    }

    pub(crate) fn with_generators(mut self, generators: Vec<usize>) -> Self {
        self.generators = generators;
        self
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table_unchecked("C1", 1, vec![0])
    }

    /// Cyclic group of order `n` with element `k` standing for the `k`-th power of
    /// the generator.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        FiniteGroup::from_table_unchecked(format!("C{n}"), n, table).with_generators(gens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x g x⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xy = self.mul(x, y);
        self.mul(self.mul(xy, self.inv(x)), self.inv(y))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Element ids of the generators the group was built from (empty for raw tables).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|g| self.element_order(g)).collect()
    }

    /// `g^k` for any integer `k`, by square-and-multiply.
    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut e = k.unsigned_abs();
        let (mut acc, mut sq) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Check every group axiom on the table.
    ///
    /// Associativity is checked on all triples for orders up to
    /// [`FULL_ASSOCIATIVITY_LIMIT`] (O(n³)); beyond that Light's test is run
    /// against a generating set, which is equivalent once the table is a
    /// Latin square with identity.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if let Some(x) = self.table.iter().find(|&&x| x as usize >= n) {
            return Err(Error::NotAGroup(format!("entry {x} out of range 0..{n}")));
        }
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::NotAGroup(format!(
                    "element 0 is not the identity (fails at {x})"
                )));
            }
        }
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] == a {
                    return Err(Error::NotAGroup(format!("row {a} is not a permutation")));
                }
                seen[c] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let c = self.mul(a, b);
                if seen[c] == b {
                    return Err(Error::NotAGroup(format!(
                        "column {b} is not a permutation"
                    )));
                }
                seen[c] = b;
            }
        }
        for a in 0..n {
            if self.mul(a, self.inv(a)) != 0 {
                return Err(Error::NotAGroup(format!("inverse table wrong at {a}")));
            }
        }
        let middles: Vec<usize> = if n <= FULL_ASSOCIATIVITY_LIMIT {
            (0..n).collect()
        } else {
            self.greedy_generating_set()
        };
        for a in 0..n {
            for &b in &middles {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Generating set built by adding the smallest element outside the
    /// current closure; assumes a Latin-square table.
    fn greedy_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        while let Some(g) = (0..self.order).find(|&g| !inside[g]) {
            gens.push(g);
            inside.fill(false);
            inside[0] = true;
            let mut members = vec![0usize];
            let mut i = 0;
            while i < members.len() {
                for &s in &gens {
                    let y = self.mul(members[i], s);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                    }
                }
                i += 1;
            }
        }
        gens
    }

    /// Validated construction from a square table.
    pub fn from_cayley_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::NotAGroup(format!("entry {x} out of range 0..{n}")));
                }
                table.push(x as u32);
            }
        }
        let g = FiniteGroup::from_table_unchecked(name, n, table);
        g.validate()?;
        Ok(g)
    }

    /// Close `generators` under `mul`, numbering elements breadth-first from
    /// `identity` and filling the full table.
    pub fn from_generators<T, F>(
        name: impl Into<String>,
        identity: T,
        generators: &[T],
        mul: F,
        cap: usize,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in generators {
                let y = mul(&elems[i], g);
                if !index.contains_key(&y) {
                    if elems.len() == cap {
                        return Err(Error::ClosureExceedsCap { cap });
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&mul(a, b)] as u32);
            }
        }
        let gens = generators.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup::from_table_unchecked(name, n, table).with_generators(gens))
    }
}

/// A permutation of `0..degree`, stored as its image list.
pub type Permutation = Vec<u32>;

/// Parse disjoint-cycle notation such as `(0 1)(2 3)` into a permutation of the given degree.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    let cycles = parse_cycle_list(text)?;
    cycles_to_permutation(&cycles, degree)
}

pub(crate) fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let bad = |m: String| Error::InvalidPermutation(m);
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(bad(format!("expected `(` in `{text}`")));
        };
        let Some(close) = body.find(')') else {
            return Err(bad(format!("unclosed cycle in `{text}`")));
        };
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(bad(format!("nested `(` in `{text}`")));
        }
        let points = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad(format!("bad point `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(points);
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

pub(crate) fn cycles_to_permutation(cycles: &[Vec<usize>], degree: usize) -> Result<Permutation> {
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    for cycle in cycles {
        for (k, &p) in cycle.iter().enumerate() {
            if p >= degree {
                return Err(Error::InvalidPermutation(format!(
                    "point {p} outside degree {degree}"
                )));
            }
            if used[p] {
                return Err(Error::InvalidPermutation(format!(
                    "point {p} appears twice"
                )));
            }
            used[p] = true;
            perm[p] = cycle[(k + 1) % cycle.len()] as u32;
        }
    }
    Ok(perm)
}

/// Group generated by permutations of `0..degree`.
///
/// Products compose left to right: `(p*q)(x) = q(p(x))`.
pub fn build_from_permutations(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<FiniteGroup> {
    if degree == 0 {
        return Err(Error::InvalidPermutation("degree must be positive".into()));
    }
    for (i, g) in generators.iter().enumerate() {
        if g.len() != degree {
            return Err(Error::InvalidPermutation(format!(
                "generator {i} has length {}, expected {degree}",
                g.len()
            )));
        }
        let mut seen = vec![false; degree];
        for &x in g {
            let x = x as usize;
            if x >= degree || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "generator {i} is not a bijection"
                )));
            }
        }
    }
    let identity: Permutation = (0..degree as u32).collect();
    FiniteGroup::from_generators(
        format!("perm{degree}"),
        identity,
        generators,
        |p, q| p.iter().map(|&x| q[x as usize]).collect(),
        cap,
    )
}

/// Square matrix over `F_p`, row-major with entries in `0..p`.
pub type ModMatrix = Vec<u32>;

fn det_mod_p(m: &[u32], d: usize, p: u64) -> u64 {
    let mut a: Vec<u64> = m.iter().map(|&x| x as u64 % p).collect();
    let mut det = 1u64;
    for col in 0..d {
        let Some(piv) = (col..d).find(|&r| a[r * d + col] != 0) else {
            return 0;
        };
        if piv != col {
            for c in 0..d {
                a.swap(piv * d + c, col * d + c);
            }
            det = (p - det) % p;
        }
        let pv = a[col * d + col];
        det = det * pv % p;
        let pinv = pow_mod(pv, p - 2, p);
        for r in col + 1..d {
            let f = a[r * d + col] * pinv % p;
            for c in col..d {
                a[r * d + c] = (a[r * d + c] + p * p - f * a[col * d + c] % p) % p;
            }
        }
    }
    det
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Group generated by invertible `d x d` matrices over `F_p`.
///
/// Entries may be given as any integers; they are reduced mod `p`.
pub fn build_from_matrix_generators(
    p: u64,
    d: usize,
    generators: &[Vec<i64>],
    cap: usize,
) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
    }
    let mut gens: Vec<ModMatrix> = Vec::with_capacity(generators.len());
    for (i, g) in generators.iter().enumerate() {
        if g.len() != d * d {
            return Err(Error::InvalidArgument(format!(
                "generator {i} has {} entries, expected {}",
                g.len(),
                d * d
            )));
        }
        let m: ModMatrix = g.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        if det_mod_p(&m, d, p) == 0 {
            return Err(Error::SingularGenerator { index: i, prime: p });
        }
        gens.push(m);
    }
    let mut identity = vec![0u32; d * d];
    for i in 0..d {
        identity[i * d + i] = 1 % p as u32;
    }
    FiniteGroup::from_generators(
        format!("GL({d},{p})-subgroup"),
        identity,
        &gens,
        |a, b| {
            let mut c = vec![0u32; d * d];
            for i in 0..d {
                for j in 0..d {
                    let s: u64 = (0..d)
                        .map(|k| a[i * d + k] as u64 * b[k * d + j] as u64)
                        .sum();
                    c[i * d + j] = (s % p) as u32;
                }
            }
            c
        },
        cap,
    )
}

/// `G × H` with `(g, h)` stored at id `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let (m, n) = (g.order(), h.order());
    let order = m
        .checked_mul(n)
        .filter(|&o| o <= cap)
        .ok_or(Error::ClosureExceedsCap { cap })?;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (ag, ah) = (a / n, a % n);
        for b in 0..order {
            let (bg, bh) = (b / n, b % n);
            table.push((g.mul(ag, bg) * n + h.mul(ah, bh)) as u32);
        }
    }
    let gens = g
        .generators()
        .iter()
        .map(|&x| x * n)
        .chain(h.generators().iter().copied())
        .collect();
    Ok(
        FiniteGroup::from_table_unchecked(format!("{}x{}", g.name(), h.name()), order, table)
            .with_generators(gens),
    )
}
