//! Verdicts for finitely presented groups.
//!
//! A surjection onto `C_p × C_p` (visible in the abelianisation) proves F-A
//! for every finitely generated group. The converse needs the group to lie in
//! one of a handful of classes, which cannot be decided from a presentation,
//! so the caller supplies the class as a trusted [`Hint`]. A wrong hint voids
//! the verdict. Hints only ever justify a negative answer.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::Presentation;
use crate::abelian::{max_elementary_rank, AbelianInvariants};
use crate::error::{Error, Result};

/// Caller-asserted class membership of the presented group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Hint {
    #[default]
    None,
    Free,
    Abelian,
    Solvable,
    Finite,
    FinitelyManyFiniteSimpleQuotients,
    Simple,
    TwoGeneratorCoprimeTorsion,
}

impl Hint {
    pub const ALL: [Hint; 8] = [
        Hint::None,
        Hint::Free,
        Hint::Abelian,
        Hint::Solvable,
        Hint::Finite,
        Hint::FinitelyManyFiniteSimpleQuotients,
        Hint::Simple,
        Hint::TwoGeneratorCoprimeTorsion,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Hint::None => "none",
            Hint::Free => "free",
            Hint::Abelian => "abelian",
            Hint::Solvable => "solvable",
            Hint::Finite => "finite",
            Hint::FinitelyManyFiniteSimpleQuotients => "finitely-many-finite-simple-quotients",
            Hint::Simple => "simple",
            Hint::TwoGeneratorCoprimeTorsion => "two-generator-coprime-torsion",
        }
    }

    /// Classes in which F-A (and n-F-A) is decided by the abelianisation alone.
    fn abelianisation_decides(self) -> bool {
        matches!(
            self,
            Hint::Simple
                | Hint::Free
                | Hint::Abelian
                | Hint::Solvable
                | Hint::Finite
                | Hint::FinitelyManyFiniteSimpleQuotients
        )
    }
}

impl FromStr for Hint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Hint::ALL
            .into_iter()
            .find(|h| h.as_str() == s)
            .ok_or_else(|| Error::InvalidHint(s.to_string()))
    }
}

impl fmt::Display for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Hint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    #[serde(rename = "FA")]
    Fa,
    #[serde(rename = "NotFA")]
    NotFa,
    Unknown,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Fa => "FA",
            VerdictKind::NotFa => "NotFA",
            VerdictKind::Unknown => "Unknown",
        })
    }
}

/// The rule that produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Abelianisation surjects onto an elementary abelian p-group of rank ≥ n+1.
    ElementaryQuotient,
    /// The presentation simplifies to the trivial group, which is never F-A.
    TrivialGroup,
    /// Nontrivial simple groups are never F-A.
    SimpleHint,
    /// Hinted class where the abelianisation decides, and it is too small.
    AbelianisationDecides,
    /// Exactly `⟨x, y | x^m, y^n⟩` with `gcd(m, n) = 1`: weight 1.
    CoprimeTorsion,
    /// Caller asserts two torsion generators of coprime order.
    CoprimeTorsionHint,
    /// Not F-A, so not n-F-A for any larger n either.
    NotFaImpliesNotNfa,
    /// Small cyclic abelianisation, no applicable class.
    NoApplicableRule,
    /// Abelianisation non-cyclic (abelian-annihilation).
    NonCyclicAbelianisation,
    /// Abelianisation cyclic (abelian-annihilation).
    CyclicAbelianisation,
    /// Free rank of the abelianisation ≥ 2 (free-annihilation).
    FreeRankAtLeastTwo,
    /// Free rank of the abelianisation < 2 (free-annihilation).
    FreeRankBelowTwo,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::ElementaryQuotient => "elementary-quotient",
            Rule::TrivialGroup => "trivial-group",
            Rule::SimpleHint => "simple-hint",
            Rule::AbelianisationDecides => "abelianisation-decides",
            Rule::CoprimeTorsion => "coprime-torsion",
            Rule::CoprimeTorsionHint => "coprime-torsion-hint",
            Rule::NotFaImpliesNotNfa => "not-fa-implies-not-nfa",
            Rule::NoApplicableRule => "no-applicable-rule",
            Rule::NonCyclicAbelianisation => "non-cyclic-abelianisation",
            Rule::CyclicAbelianisation => "cyclic-abelianisation",
            Rule::FreeRankAtLeastTwo => "free-rank-at-least-two",
            Rule::FreeRankBelowTwo => "free-rank-below-two",
        }
    }
}

/// Outcome of a classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    /// 1 for plain F-A.
    pub n: usize,
    pub rule: Rule,
    pub reason: String,
    /// The group surjects onto `C_p × C_p` for some prime `p`.
    pub easily_fa: bool,
}

impl Verdict {
    fn new(verdict: VerdictKind, n: usize, rule: Rule, reason: String, easily_fa: bool) -> Self {
        Verdict {
            verdict,
            n,
            rule,
            reason,
            easily_fa,
        }
    }

    pub fn is_fa(&self) -> bool {
        self.verdict == VerdictKind::Fa
    }

    pub fn is_not_fa(&self) -> bool {
        self.verdict == VerdictKind::NotFa
    }

    pub fn property(&self) -> String {
        if self.n == 1 {
            "F-A".into()
        } else {
            format!("{}-F-A", self.n)
        }
    }
}

/// `⟨x, y | x^m, y^n⟩` (in either relator order) with `gcd(m, n) = 1`, read
/// literally off the relators.
fn coprime_torsion_shape(p: &Presentation) -> Option<(i64, i64)> {
    if p.generators().len() != 2 || p.relators().len() != 2 {
        return None;
    }
    let mut exps = [0i64; 2];
    for r in p.relators() {
        let [s] = r.syllables() else { return None };
        if exps[s.gen] != 0 {
            return None;
        }
        exps[s.gen] = s.exp.abs();
    }
    let [m, n] = exps;
    (m >= 1 && n >= 1 && m.gcd(&n) == 1).then_some((m, n))
}

pub fn classify_fa(p: &Presentation, hint: Hint) -> Verdict {
    classify_with(p, 1, hint, &p.abelian_invariants())
}

/// n-F-A classification; `n = 1` is plain F-A.
pub fn classify_nfa(p: &Presentation, n: usize, hint: Hint) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(classify_with(p, n, hint, &p.abelian_invariants()))
}

fn classify_with(p: &Presentation, n: usize, hint: Hint, inv: &AbelianInvariants) -> Verdict {
    use VerdictKind::*;
    let (prime, rank) = max_elementary_rank(inv);
    let easily_fa = rank >= 2;
    if rank > n {
        return Verdict::new(
            Fa,
            n,
            Rule::ElementaryQuotient,
            if n == 1 {
                format!("abelianisation {inv} surjects onto (C_{prime})^{rank}; every element lies in a proper normal subgroup of finite index")
            } else {
                format!("abelianisation {inv} surjects onto (C_{prime})^{rank}; every {n} elements lie together in a proper normal subgroup of finite index")
            },
            easily_fa,
        );
    }
    let not_fa = |rule: Rule, why: String| {
        let (rule, why) = if n == 1 {
            (rule, why)
        } else {
            (
                Rule::NotFaImpliesNotNfa,
                format!("{why}; a group that is not F-A is not {n}-F-A"),
            )
        };
        Verdict::new(NotFa, n, rule, why, easily_fa)
    };
    if p.is_obviously_trivial() {
        return not_fa(
            Rule::TrivialGroup,
            "presentation collapses to the trivial group, which is not F-A by convention".into(),
        );
    }
    if hint == Hint::Simple && n == 1 {
        return not_fa(
            Rule::SimpleHint,
            "a nontrivial simple group is the normal closure of any nontrivial element".into(),
        );
    }
    if let Some((a, b)) = coprime_torsion_shape(p) {
        return not_fa(
            Rule::CoprimeTorsion,
            format!("free product C_{a} * C_{b} with coprime orders has weight 1"),
        );
    }
    if hint == Hint::TwoGeneratorCoprimeTorsion {
        return not_fa(
            Rule::CoprimeTorsionHint,
            "two torsion generators of coprime order: a quotient of a weight-1 free product".into(),
        );
    }
    if hint.abelianisation_decides() {
        return Verdict::new(
            NotFa,
            n,
            Rule::AbelianisationDecides,
            format!(
                "for {hint} groups the abelianisation decides; {inv} has weight {} < {}",
                inv.weight(),
                n + 1
            ),
            easily_fa,
        );
    }
    let mut reason = format!(
        "abelianisation {inv} has elementary rank {rank} ≤ {n}; without a class hint this does not decide: groups with cyclic abelianisation can still be F-A (e.g. <x,y,z | x^2, y^3, z^5>)"
    );
    if inv.is_trivial() {
        reason.push_str("; group is perfect, weight unknown");
    }
    Verdict::new(Unknown, n, Rule::NoApplicableRule, reason, easily_fa)
}

/// Abelian-annihilation and free-annihilation verdicts; both are decided by
/// the abelianisation for any finitely generated group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoVerdicts {
    pub abelian_a: Verdict,
    pub free_a_including_z: Verdict,
}

pub fn rho_annihilated_checks(p: &Presentation) -> RhoVerdicts {
    rho_from_invariants(&p.abelian_invariants())
}

pub(crate) fn rho_from_invariants(inv: &AbelianInvariants) -> RhoVerdicts {
    let easily_fa = max_elementary_rank(inv).1 >= 2;
    let abelian_a = if inv.is_cyclic() {
        Verdict::new(
            VerdictKind::NotFa,
            1,
            Rule::CyclicAbelianisation,
            format!("abelianisation {inv} is cyclic"),
            easily_fa,
        )
    } else {
        Verdict::new(
            VerdictKind::Fa,
            1,
            Rule::NonCyclicAbelianisation,
            format!("abelianisation {inv} is non-cyclic"),
            easily_fa,
        )
    };
    let free_a_including_z = if inv.free_rank >= 2 {
        Verdict::new(
            VerdictKind::Fa,
            1,
            Rule::FreeRankAtLeastTwo,
            format!("free rank {} ≥ 2: surjects onto Z × Z", inv.free_rank),
            easily_fa,
        )
    } else {
        Verdict::new(
            VerdictKind::NotFa,
            1,
            Rule::FreeRankBelowTwo,
            format!("free rank {} < 2", inv.free_rank),
            easily_fa,
        )
    };
    RhoVerdicts {
        abelian_a,
        free_a_including_z,
    }
}

/// Everything `analyze` reports about a presentation.
#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub presentation: String,
    pub hint: Hint,
    pub property: String,
    pub verdict: VerdictKind,
    pub rule: Rule,
    pub reason: String,
    pub invariants: AbelianInvariants,
    pub easily_fa: bool,
    pub perfect: bool,
    pub abelian_a: VerdictKind,
    pub free_a: VerdictKind,
}

pub fn analyze(p: &Presentation, n: usize, hint: Hint) -> Result<Analysis> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let inv = p.abelian_invariants();
    let v = classify_with(p, n, hint, &inv);
    let rho = rho_from_invariants(&inv);
    Ok(Analysis {
        presentation: p.render(),
        hint,
        property: v.property(),
        verdict: v.verdict,
        rule: v.rule,
        reason: v.reason,
        perfect: inv.is_trivial(),
        invariants: inv,
        easily_fa: v.easily_fa,
        abelian_a: rho.abelian_a.verdict,
        free_a: rho.free_a_including_z.verdict,
    })
}
