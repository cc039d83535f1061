//! Subgroup structure of finite groups: closures, conjugacy classes, normal
//! subgroups, quotients and brute-force weight.

use std::collections::{HashMap, HashSet};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::set::{ElementSet, Mask, SetKind};

fn close(g: &FiniteGroup, seeds: &[usize], kind: SetKind) -> ElementSet {
    let mut mask = Mask::empty(g.order());
    mask.insert(0);
    let mut members = vec![0usize];
    let mut i = 0;
    while i < members.len() {
        for &s in seeds {
            let y = g.mul(members[i], s);
            if mask.insert(y) {
                members.push(y);
            }
        }
        i += 1;
    }
    ElementSet::new(mask, kind)
}

/// Smallest subgroup containing `seeds`.
pub fn subgroup_closure(g: &FiniteGroup, seeds: &[usize]) -> ElementSet {
    close(g, seeds, SetKind::Subgroup)
}

/// Smallest normal subgroup containing `seeds`.
pub fn normal_closure(g: &FiniteGroup, seeds: &[usize]) -> ElementSet {
    let mut conjugates = Mask::empty(g.order());
    for &s in seeds {
        for x in g.elements() {
            conjugates.insert(g.conj(s, x));
        }
    }
    let gens: Vec<usize> = conjugates.iter().collect();
    close(g, &gens, SetKind::Normal)
}

/// Conjugacy classes, each sorted, listed by smallest member (identity first).
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut classes = Vec::new();
    for a in g.elements() {
        if seen[a] {
            continue;
        }
        let mut class: Vec<usize> = g.elements().map(|x| g.conj(a, x)).collect();
        class.sort_unstable();
        class.dedup();
        for &c in &class {
            seen[c] = true;
        }
        classes.push(class);
    }
    classes
}

pub fn is_normal(g: &FiniteGroup, set: &ElementSet) -> bool {
    let m = set.mask();
    if !m.contains(0) {
        return false;
    }
    let members: Vec<usize> = m.iter().collect();
    members
        .iter()
        .all(|&a| members.iter().all(|&b| m.contains(g.mul(a, b))))
        && members
            .iter()
            .all(|&a| g.elements().all(|x| m.contains(g.conj(a, x))))
}

/// `N·M` for normal subgroups `N`, `M`; the product is again normal.
fn join_normal(g: &FiniteGroup, n: &Mask, m: &Mask) -> Mask {
    let ms: Vec<usize> = m.iter().collect();
    let mut out = Mask::empty(g.order());
    for a in n.iter() {
        for &b in &ms {
            out.insert(g.mul(a, b));
        }
    }
    out
}

fn check_cap(g: &FiniteGroup, cap: usize, operation: &'static str) -> Result<()> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap,
            operation,
        });
    }
    Ok(())
}

/// Every normal subgroup of `g`, sorted by size then canonical mask.
///
/// Starts from the normal closures of single conjugacy classes and closes
/// under joins with those, so no subset scan is needed.
pub fn normal_subgroups(g: &FiniteGroup, caps: &Caps) -> Result<Vec<ElementSet>> {
    check_cap(g, caps.normal, "normal subgroup enumeration")?;
    let class_closures: Vec<Mask> = {
        let mut seen = HashSet::new();
        conjugacy_classes(g)
            .into_iter()
            .skip(1)
            .map(|c| normal_closure(g, &c[..1]).mask().clone())
            .filter(|m| seen.insert(m.clone()))
            .collect()
    };
    let trivial = Mask::from_ids(g.order(), [0]);
    let mut found: HashSet<Mask> = HashSet::from([trivial.clone()]);
    let mut frontier = vec![trivial];
    while let Some(n) = frontier.pop() {
        for c in &class_closures {
            if c.is_subset(&n) {
                continue;
            }
            let j = join_normal(g, &n, c);
            if found.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let mut out: Vec<ElementSet> = found
        .into_iter()
        .map(|m| ElementSet::new(m, SetKind::Normal))
        .collect();
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Proper normal subgroups that are maximal among proper normal subgroups,
/// sorted by canonical mask. Empty for the trivial group.
pub fn maximal_normal_subgroups(g: &FiniteGroup, caps: &Caps) -> Result<Vec<ElementSet>> {
    let all = normal_subgroups(g, caps)?;
    Ok(maximal_among_proper(&all))
}

pub(crate) fn maximal_among_proper(all: &[ElementSet]) -> Vec<ElementSet> {
    let proper: Vec<&ElementSet> = all.iter().filter(|n| !n.is_everything()).collect();
    let mut out: Vec<ElementSet> = proper
        .iter()
        .filter(|n| {
            !proper
                .iter()
                .any(|m| m.size() > n.size() && n.is_subset(m))
        })
        .map(|n| (*n).clone())
        .collect();
    out.sort();
    out
}

/// `G / N`, cosets numbered by their smallest member so the identity coset is 0.
pub fn quotient(g: &FiniteGroup, n: &ElementSet) -> Result<FiniteGroup> {
    if n.mask().len() != g.order() || !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let members = n.elements();
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for a in g.elements() {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        for &m in &members {
            coset_of[g.mul(a, m)] = id;
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[g.mul(a, b)] as u32);
        }
    }
    let gens = g.generators().iter().map(|&x| coset_of[x]).collect();
    Ok(
        FiniteGroup::from_table_unchecked(format!("{}/N{}", g.name(), members.len()), k, table)
            .with_generators(gens),
    )
}

/// Normal closure of all commutators.
pub fn derived_subgroup(g: &FiniteGroup) -> ElementSet {
    let mut comms = Mask::empty(g.order());
    for x in g.elements() {
        for y in g.elements() {
            comms.insert(g.commutator(x, y));
        }
    }
    let seeds: Vec<usize> = comms.iter().collect();
    normal_closure(g, &seeds)
}

/// `G / G'`
pub fn abelianisation(g: &FiniteGroup) -> FiniteGroup {
    let d = derived_subgroup(g);
    quotient(g, &d)
        .expect("derived subgroup is normal")
        .with_name(format!("{}^ab", g.name()))
}

pub fn is_perfect(g: &FiniteGroup) -> bool {
    derived_subgroup(g).is_everything()
}

/// Weight together with the witnessing tuple of class representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightWitness {
    pub weight: usize,
    /// Smallest members of the chosen conjugacy classes, lexicographically first.
    pub elements: Vec<usize>,
}

/// Least `k` such that `g` is the normal closure of `k` elements; 0 for the trivial group.
pub fn weight_bruteforce(g: &FiniteGroup, caps: &Caps) -> Result<usize> {
    weight_witness(g, caps).map(|w| w.weight)
}

/// Brute-force weight search over tuples of conjugacy-class representatives,
/// by increasing tuple size; the first generating tuple in lexicographic
/// order is returned.
pub fn weight_witness(g: &FiniteGroup, caps: &Caps) -> Result<WeightWitness> {
    check_cap(g, caps.weight, "weight")?;
    if g.is_trivial() {
        return Ok(WeightWitness {
            weight: 0,
            elements: vec![],
        });
    }
    let reps: Vec<usize> = conjugacy_classes(g)
        .into_iter()
        .skip(1)
        .map(|c| c[0])
        .collect();
    let closures: Vec<Mask> = reps
        .iter()
        .map(|&r| normal_closure(g, &[r]).mask().clone())
        .collect();
    let full = g.order();
    for k in 1..=reps.len() {
        let mut chosen = Vec::with_capacity(k);
        let start = Mask::from_ids(full, [0]);
        if weight_dfs(g, &closures, k, 0, &start, &mut chosen, full) {
            return Ok(WeightWitness {
                weight: k,
                elements: chosen.iter().map(|&i| reps[i]).collect(),
            });
        }
    }
    unreachable!("all class representatives together generate the group")
}

fn weight_dfs(
    g: &FiniteGroup,
    closures: &[Mask],
    k: usize,
    from: usize,
    current: &Mask,
    chosen: &mut Vec<usize>,
    full: usize,
) -> bool {
    if chosen.len() == k {
        return current.count() == full;
    }
    let need = k - chosen.len();
    for i in from..closures.len() {
        if closures.len() - i < need {
            break;
        }
        // an element already inside the closure adds nothing; such a tuple
        // would have been found at a smaller size
        if closures[i].is_subset(current) {
            continue;
        }
        let next = join_normal(g, current, &closures[i]);
        chosen.push(i);
        if weight_dfs(g, closures, k, i + 1, &next, chosen, full) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Isomorphism-free sanity map from element order to count, used to compare
/// groups up to renumbering in tests and reports.
pub fn order_statistics(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for o in g.element_orders() {
        *counts.entry(o).or_default() += 1;
    }
    let mut v: Vec<_> = counts.into_iter().collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_from_matrix_generators, build_from_permutations, direct_product, parse_cycles};

    fn perm_group(degree: usize, gens: &[&str]) -> FiniteGroup {
        let gens: Vec<_> = gens.iter().map(|c| parse_cycles(c, degree).unwrap()).collect();
        build_from_permutations(degree, &gens, 1024).unwrap()
    }

    fn s3() -> FiniteGroup {
        perm_group(3, &["(0 1 2)", "(0 1)"])
    }

    fn s5() -> FiniteGroup {
        perm_group(5, &["(0 1)", "(0 1 2 3 4)"])
    }

    fn a5() -> FiniteGroup {
        perm_group(5, &["(0 1 2)", "(0 1 3)", "(0 1 4)"])
    }

    fn klein() -> FiniteGroup {
        direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2), 1024).unwrap()
    }

    fn q8() -> FiniteGroup {
        build_from_matrix_generators(3, 2, &[vec![0, -1, 1, 0], vec![1, 1, 1, -1]], 1024).unwrap()
    }

    fn sl25() -> FiniteGroup {
        build_from_matrix_generators(5, 2, &[vec![1, 1, 0, 1], vec![0, -1, 1, 0]], 1024).unwrap()
    }

    #[test]
    fn subgroup_closures() {
        let g = s3();
        assert_eq!(subgroup_closure(&g, &[]).elements(), vec![0]);
        // element 1 is the 3-cycle
        assert_eq!(subgroup_closure(&g, &[1]).size(), 3);
        let all: Vec<usize> = g.elements().collect();
        assert!(subgroup_closure(&g, &all).is_everything());
    }

    #[test]
    fn normal_closures() {
        let g = s3();
        assert_eq!(g.element_order(2), 2);
        assert!(normal_closure(&g, &[2]).is_everything());
        let v = klein();
        assert_eq!(normal_closure(&v, &[1]).size(), 2);
        let a = a5();
        for x in 1..a.order() {
            assert!(normal_closure(&a, &[x]).is_everything());
        }
    }

    #[test]
    fn class_sizes() {
        let mut sizes: Vec<usize> = conjugacy_classes(&s3()).iter().map(Vec::len).collect();
        assert_eq!(sizes[0], 1);
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let mut sizes: Vec<usize> = conjugacy_classes(&q8()).iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert!(conjugacy_classes(&FiniteGroup::cyclic(6)).iter().all(|c| c.len() == 1));
    }

    #[test]
    fn normal_subgroup_lists() {
        let caps = Caps::default();
        assert_eq!(normal_subgroups(&FiniteGroup::cyclic(7), &caps).unwrap().len(), 2);
        assert_eq!(normal_subgroups(&klein(), &caps).unwrap().len(), 5);
        let sizes: Vec<usize> = normal_subgroups(&s5(), &caps)
            .unwrap()
            .iter()
            .map(ElementSet::size)
            .collect();
        assert_eq!(sizes, vec![1, 60, 120]);
        let big = direct_product(&s5(), &FiniteGroup::cyclic(2), 1024).unwrap();
        assert!(matches!(
            normal_subgroups(&big, &caps),
            Err(Error::OrderCapExceeded { order: 240, cap: 128, .. })
        ));
    }

    #[test]
    fn maximal_normals() {
        let caps = Caps::default();
        let mut sizes: Vec<usize> = maximal_normal_subgroups(&FiniteGroup::cyclic(6), &caps)
            .unwrap()
            .iter()
            .map(ElementSet::size)
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3]);
        let m = maximal_normal_subgroups(&klein(), &caps).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.iter().all(|n| n.size() == 2));
        let m = maximal_normal_subgroups(&a5(), &caps).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].size(), 1);
        assert!(maximal_normal_subgroups(&FiniteGroup::trivial(), &caps)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn quotients() {
        let g = s5();
        let e = normal_closure(&g, &[]);
        let same = quotient(&g, &e).unwrap();
        assert_eq!(same.table(), g.table());
        let all: Vec<usize> = g.elements().collect();
        let whole = subgroup_closure(&g, &all);
        assert!(quotient(&g, &whole).unwrap().is_trivial());
        let a5 = derived_subgroup(&g);
        assert_eq!(a5.size(), 60);
        let c2 = quotient(&g, &a5).unwrap();
        assert_eq!(c2.order(), 2);
        c2.validate().unwrap();
        let not_normal = subgroup_closure(&g, &[1]);
        assert!(matches!(quotient(&g, &not_normal), Err(Error::NotNormal)));
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(derived_subgroup(&FiniteGroup::cyclic(12)).size(), 1);
        assert_eq!(derived_subgroup(&s3()).size(), 3);
        assert!(is_perfect(&sl25()));
        assert!(!is_perfect(&s3()));
    }

    #[test]
    fn weights() {
        let caps = Caps::default();
        assert_eq!(weight_bruteforce(&FiniteGroup::trivial(), &caps).unwrap(), 0);
        assert_eq!(weight_bruteforce(&a5(), &caps).unwrap(), 1);
        let w = weight_witness(&klein(), &caps).unwrap();
        assert_eq!(w.weight, 2);
        assert_eq!(w.elements, vec![1, 2]);
        assert_eq!(weight_bruteforce(&s5(), &caps).unwrap(), 1);
        assert_eq!(weight_bruteforce(&sl25(), &caps).unwrap(), 1);
    }
}
