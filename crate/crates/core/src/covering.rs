//! Exhaustive covering checks for finite groups.
//!
//! A finite group is F-A exactly when it is the union of its maximal normal
//! proper subgroups, and n-F-A when every n-subset lies inside one of them.
//! The trivial group is neither, by convention.

use serde::Serialize;

use crate::abelian::{abelian_invariants_finite, elementary_p_rank, prime_factors, AbelianInvariants};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::set::{ElementSet, Mask};
use crate::structure::{
    abelianisation, is_perfect, maximal_among_proper, normal_closure, normal_subgroups,
    weight_bruteforce,
};

/// Which covering property a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    /// Every element lies in a proper normal subgroup.
    Fa,
    /// Every n-subset lies in a common proper normal subgroup.
    Nfa(usize),
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Property::Fa => f.write_str("F-A"),
            Property::Nfa(n) => write!(f, "{n}-F-A"),
        }
    }
}

/// Outcome of a covering check.
#[derive(Debug, Clone)]
pub struct CoverReport {
    pub group: String,
    pub property: Property,
    pub verdict: bool,
    /// All maximal normal proper subgroups, in canonical mask order.
    pub cover: Vec<ElementSet>,
    /// Lexicographically least uncovered element (or n-subset) when the verdict is false.
    pub uncovered: Vec<usize>,
    /// Greedy subcover, filled in by [`CoverReport::with_subcover`].
    pub subcover: Option<Vec<ElementSet>>,
}

#[derive(Serialize)]
struct CoverReportJson<'a> {
    group: &'a str,
    property: String,
    verdict: bool,
    cover: Vec<String>,
    uncovered: &'a [usize],
    #[serde(skip_serializing_if = "Option::is_none")]
    subcover: Option<Vec<String>>,
}

impl CoverReport {
    /// Attach a greedy subcover: subgroups taken by descending size (ties in
    /// canonical mask order), each kept only if it covers something new.
    pub fn with_subcover(mut self) -> Self {
        if self.verdict {
            self.subcover = Some(greedy_subcover(&self.cover));
        }
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        let hex = |v: &[ElementSet]| v.iter().map(ElementSet::to_hex).collect::<Vec<_>>();
        serde_json::to_value(CoverReportJson {
            group: &self.group,
            property: self.property.to_string(),
            verdict: self.verdict,
            cover: hex(&self.cover),
            uncovered: &self.uncovered,
            subcover: self.subcover.as_deref().map(hex),
        })
        .expect("report serialises")
    }
}

pub fn greedy_subcover(cover: &[ElementSet]) -> Vec<ElementSet> {
    let Some(first) = cover.first() else {
        return vec![];
    };
    let len = first.mask().len();
    let mut sorted: Vec<&ElementSet> = cover.iter().collect();
    sorted.sort_by(|a, b| b.size().cmp(&a.size()).then_with(|| a.cmp(b)));
    let mut covered = Mask::empty(len);
    let mut out = Vec::new();
    for s in sorted {
        if covered.count() == len {
            break;
        }
        if !s.mask().is_subset(&covered) {
            covered.union_with(s.mask());
            out.push(s.clone());
        }
    }
    out
}

/// True if the sets cover every element of the parent group.
pub fn covers_group(sets: &[ElementSet], order: usize) -> bool {
    let mut covered = Mask::empty(order);
    for s in sets {
        covered.union_with(s.mask());
    }
    covered.count() == order
}

pub fn is_fa_finite(g: &FiniteGroup, caps: &Caps) -> Result<CoverReport> {
    is_nfa_finite(g, 1, caps).map(|mut r| {
        r.property = Property::Fa;
        r
    })
}

/// Is every n-subset of `g` contained in one maximal normal proper subgroup?
///
/// Tuples with repeated entries collapse to smaller sets, and a set that is
/// covered has every subset covered, so only sets of size `min(n, |G|)` are
/// enumerated. When `n ≥ |G|` the whole group is such a tuple and the answer
/// is no.
pub fn is_nfa_finite(g: &FiniteGroup, n: usize, caps: &Caps) -> Result<CoverReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let all = normal_subgroups(g, caps)?;
    let cover = maximal_among_proper(&all);
    let order = g.order();
    let mut report = CoverReport {
        group: g.name().to_string(),
        property: Property::Nfa(n),
        verdict: false,
        cover,
        uncovered: vec![],
        subcover: None,
    };
    if g.is_trivial() {
        return Ok(report);
    }
    if n >= order {
        report.uncovered = g.elements().collect();
        return Ok(report);
    }
    // containing[x] = which cover members contain element x
    let containing: Vec<Mask> = g
        .elements()
        .map(|x| {
            Mask::from_ids(
                report.cover.len(),
                report
                    .cover
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| m.contains(x))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    let mut chosen = Vec::with_capacity(n);
    let everyone = Mask::full(report.cover.len());
    match first_uncovered(&containing, n, 0, &everyone, &mut chosen) {
        Some(tuple) => report.uncovered = tuple,
        None => report.verdict = true,
    }
    Ok(report)
}

/// Depth-first search in lexicographic order for the first n-subset whose
/// members share no cover member.
fn first_uncovered(
    containing: &[Mask],
    n: usize,
    from: usize,
    alive: &Mask,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let order = containing.len();
    if alive.is_empty() {
        // lexicographically first completion of this prefix
        let mut t = chosen.clone();
        t.extend(from..from + (n - chosen.len()));
        return Some(t);
    }
    if chosen.len() == n {
        return None;
    }
    for x in from..order {
        if order - x < n - chosen.len() {
            break;
        }
        let mut next = alive.clone();
        next.intersect_with(&containing[x]);
        chosen.push(x);
        let found = first_uncovered(containing, n, x + 1, &next, chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// A maximal normal proper subgroup containing `x`, smallest mask first.
pub fn fa_witness_finite(g: &FiniteGroup, x: usize, caps: &Caps) -> Result<Option<ElementSet>> {
    if g.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    if x >= g.order() {
        return Err(Error::InvalidArgument(format!(
            "element {x} outside group of order {}",
            g.order()
        )));
    }
    let all = normal_subgroups(g, caps)?;
    Ok(maximal_among_proper(&all).into_iter().find(|m| m.contains(x)))
}

/// Every element lies in a maximal normal subgroup.
///
/// Computed independently of [`is_fa_finite`]: an element lies in a maximal
/// normal subgroup iff its normal closure is proper.
pub fn is_simple_annihilated_finite(g: &FiniteGroup, caps: &Caps) -> Result<bool> {
    if g.order() > caps.normal {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap: caps.normal,
            operation: "simple-annihilation check",
        });
    }
    if g.is_trivial() {
        return Ok(false);
    }
    Ok(g
        .elements()
        .all(|x| !normal_closure(g, &[x]).is_everything()))
}

/// One theorem instance checked on one group.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

/// All finite-case cross-checks for a single group.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub group: String,
    pub order: usize,
    pub abelianisation: AbelianInvariants,
    pub fa: bool,
    pub weight: Option<usize>,
    pub checks: Vec<TheoremCheck>,
}

impl TheoremReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Options for [`verify_finite_theorems`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// n-F-A criterion checked for each n in this range.
    pub nfa_range: std::ops::RangeInclusive<usize>,
    /// Run the weight checks (needs `|G| ≤ caps.weight`).
    pub weight: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            nfa_range: 1..=3,
            weight: true,
        }
    }
}

/// Compare the brute-force covering answers with the abelianisation criteria.
///
/// Checks, each reported separately:
/// - `fa-vs-noncyclic`: F-A iff the abelianisation needs ≥ 2 generators;
/// - `fa-vs-elementary-rank`: F-A iff some p-rank of the abelianisation is ≥ 2;
/// - `nfa-n`: n-F-A iff the abelianisation needs ≥ n+1 generators;
/// - `nfa-monotone`: n-F-A implies k-F-A for k ≤ n;
/// - `union-equals-maximal-union`: all proper normals and the maximal ones cover the same set;
/// - `simple-annihilated`: the closure-based check agrees with F-A;
/// - `weight`: weight equals the abelianisation weight when that is ≥ 2, else ≤ 1;
/// - `perfect-weight-one`: a nontrivial perfect group has weight 1.
pub fn verify_finite_theorems(
    g: &FiniteGroup,
    caps: &Caps,
    opts: &VerifyOptions,
) -> Result<TheoremReport> {
    let ab = abelianisation(g);
    let inv = abelian_invariants_finite(&ab)?;
    let ab_weight = inv.weight();
    let fa = is_fa_finite(g, caps)?;
    let mut checks = Vec::new();
    let mut check = |name: String, holds: bool, detail: String| {
        checks.push(TheoremCheck { name, holds, detail })
    };

    check(
        "fa-vs-noncyclic".into(),
        fa.verdict == (ab_weight >= 2),
        format!("F-A={} abelianisation={inv}", fa.verdict),
    );

    let mut best = (0u64, 0usize);
    for p in prime_factors(ab.order() as u64) {
        let r = elementary_p_rank(&inv, p)?;
        if r > best.1 {
            best = (p, r);
        }
    }
    check(
        "fa-vs-elementary-rank".into(),
        fa.verdict == (best.1 >= 2),
        format!("F-A={} max p-rank {} at p={}", fa.verdict, best.1, best.0),
    );

    let mut nfa_verdicts = Vec::new();
    for n in opts.nfa_range.clone() {
        let r = is_nfa_finite(g, n, caps)?;
        check(
            format!("nfa-{n}"),
            r.verdict == (ab_weight > n),
            format!("{n}-F-A={} abelianisation weight {ab_weight}", r.verdict),
        );
        nfa_verdicts.push((n, r.verdict));
    }
    let monotone = nfa_verdicts
        .iter()
        .all(|&(n, v)| !v || nfa_verdicts.iter().all(|&(k, vk)| k > n || vk));
    check(
        "nfa-monotone".into(),
        monotone,
        format!("{nfa_verdicts:?}"),
    );

    let all = normal_subgroups(g, caps)?;
    let proper: Vec<ElementSet> = all.iter().filter(|n| !n.is_everything()).cloned().collect();
    let union_all = union(&proper, g.order());
    let union_max = union(&fa.cover, g.order());
    check(
        "union-equals-maximal-union".into(),
        union_all == union_max,
        format!(
            "{} proper normal subgroups, {} maximal",
            proper.len(),
            fa.cover.len()
        ),
    );

    let sa = is_simple_annihilated_finite(g, caps)?;
    check(
        "simple-annihilated".into(),
        sa == fa.verdict,
        format!("closure check {sa}, cover check {}", fa.verdict),
    );

    if fa.verdict {
        let sub = greedy_subcover(&fa.cover);
        check(
            "subcover-covers".into(),
            covers_group(&sub, g.order()),
            format!("greedy subcover of size {}", sub.len()),
        );
    }

    let mut weight = None;
    if opts.weight {
        let w = weight_bruteforce(g, caps)?;
        weight = Some(w);
        let ok = if ab_weight >= 2 { w == ab_weight } else { w <= 1 };
        check(
            "weight".into(),
            ok,
            format!("w(G)={w} w(G^ab)={ab_weight}"),
        );
        if !g.is_trivial() && is_perfect(g) {
            check(
                "perfect-weight-one".into(),
                w == 1,
                format!("perfect, w(G)={w}"),
            );
        }
    }

    Ok(TheoremReport {
        group: g.name().to_string(),
        order: g.order(),
        abelianisation: inv,
        fa: fa.verdict,
        weight,
        checks,
    })
}

fn union(sets: &[ElementSet], order: usize) -> Mask {
    let mut m = Mask::empty(order);
    for s in sets {
        m.union_with(s.mask());
    }
    m
}
