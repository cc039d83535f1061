//! Finite-quotient witnesses for finitely presented groups.
//!
//! A witness for a word `w` is a surjection from the presented group onto a
//! nontrivial finite group that sends `w` to the identity. Targets come from a
//! fixed list (see [`search_targets`]), which is not every group of a given
//! order, so finding nothing up to a bound proves nothing.

use std::ops::ControlFlow;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::presentation::classify::{classify_fa, Hint, VerdictKind};
use crate::presentation::{Presentation, Syllable, Word};
use crate::structure::subgroup_closure;

/// Largest target order available to the search.
pub const SEARCH_MAX_ORDER: usize = 60;

/// Human-readable description of the target list.
pub const SEARCH_CATALOG: &str = "cyclic C2..C60, elementary abelian (C2^2..C2^5, C3^2, C3^3, C5^2, C7^2), \
dihedral D4..D30, S3, S4, A4, A5, Q8, SL(2,3)";

/// Every search target, sorted by (order, name).
pub fn search_targets() -> &'static [FiniteGroup] {
    static TARGETS: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    TARGETS.get_or_init(|| {
        let cap = SEARCH_MAX_ORDER;
        let mut t: Vec<FiniteGroup> = (2..=cap).map(FiniteGroup::cyclic).collect();
        let build = |f, p: &[u64]| catalog::build_member(f, p, cap).expect("search target");
        use catalog::Family::*;
        for p in [[2, 2], [2, 3], [2, 4], [2, 5], [3, 2], [3, 3], [5, 2], [7, 2]] {
            t.push(build(Elementary, &p));
        }
        // D3 is S3
        for n in 4..=cap as u64 / 2 {
            t.push(build(Dihedral, &[n]));
        }
        t.push(build(Symmetric, &[3]));
        t.push(build(Symmetric, &[4]));
        t.push(build(Alternating, &[4]));
        t.push(build(Alternating, &[5]));
        t.push(catalog::quaternion());
        t.push(build(SpecialLinear, &[3]));
        t.sort_by(|a, b| (a.order(), a.name()).cmp(&(b.order(), b.name())));
        t
    })
}

/// Targets of order at most `bound`.
pub fn targets_up_to(bound: usize) -> Result<&'static [FiniteGroup]> {
    if bound > SEARCH_MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "order bound {bound} exceeds the search catalog maximum {SEARCH_MAX_ORDER}"
        )));
    }
    let t = search_targets();
    Ok(&t[..t.partition_point(|g| g.order() <= bound)])
}

/// Image of `w` under the map sending generator `i` to `images[i]`, using
/// `orders` to reduce exponents.
fn eval_reduced(h: &FiniteGroup, orders: &[usize], images: &[usize], w: &Word) -> usize {
    w.syllables().iter().fold(0, |acc, s| {
        let x = images[s.gen];
        let e = s.exp.rem_euclid(orders[x] as i64);
        h.mul(acc, h.pow(x, e))
    })
}

/// Image of `w` under a generator assignment.
pub fn evaluate(h: &FiniteGroup, images: &[usize], w: &Word) -> usize {
    w.syllables()
        .iter()
        .fold(0, |acc, s| h.mul(acc, h.pow(images[s.gen], s.exp)))
}

/// Per generator, the gcd of the exponents `m` of relators that are cyclically `g^m`.
fn power_constraints(p: &Presentation) -> Vec<u64> {
    let mut m = vec![0u64; p.generators().len()];
    for r in p.relators() {
        if let [Syllable { gen, exp }] = r.cyclically_reduce().syllables() {
            m[*gen] = num_integer::gcd(m[*gen], exp.unsigned_abs());
        }
    }
    m
}

/// Call `f` on every surjection `P ↠ H`, as generator images in
/// lexicographic order, until it breaks.
///
/// A generator constrained by a relator `g^m` only ranges over elements of
/// order dividing `m`; each relator is checked as soon as all its generators
/// have images.
pub fn for_each_surjection<F>(p: &Presentation, h: &FiniteGroup, caps: &Caps, mut f: F) -> Result<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = p.generators().len();
    let orders = h.element_orders();
    let candidates: Vec<Vec<usize>> = power_constraints(p)
        .into_iter()
        .map(|m| {
            h.elements()
                .filter(|&x| m == 0 || m % orders[x] as u64 == 0)
                .collect()
        })
        .collect();
    let size = candidates
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if size > caps.search_budget {
        return Err(Error::SearchBudgetExceeded {
            size,
            budget: caps.search_budget,
        });
    }
    let mut ready: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in p.relators() {
        if let Some(g) = r.max_generator() {
            ready[g].push(r);
        }
    }
    let mut images = vec![0usize; n];
    let mut stack = vec![0usize; n];
    let mut depth = 0usize;
    if n == 0 {
        if h.is_trivial() {
            let _ = f(&images);
        }
        return Ok(());
    }
    // iterative backtracking: stack[d] is the next candidate index at depth d
    loop {
        if stack[depth] == candidates[depth].len() {
            if depth == 0 {
                return Ok(());
            }
            stack[depth] = 0;
            depth -= 1;
            continue;
        }
        images[depth] = candidates[depth][stack[depth]];
        stack[depth] += 1;
        let ok = ready[depth]
            .iter()
            .all(|r| eval_reduced(h, &orders, &images, r) == 0);
        if !ok {
            continue;
        }
        if depth + 1 < n {
            depth += 1;
            continue;
        }
        if subgroup_closure(h, &images).is_everything() && f(&images).is_break() {
            return Ok(());
        }
    }
}

/// All surjections `P ↠ H` in lexicographic order of images.
pub fn enumerate_surjections(p: &Presentation, h: &FiniteGroup, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_surjection(p, h, caps, |imgs| {
        out.push(imgs.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Result of re-checking a witness from scratch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub relators_trivial: bool,
    pub surjective: bool,
    pub word_trivial: bool,
    pub target_nontrivial: bool,
    pub transcript: Vec<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.relators_trivial && self.surjective && self.word_trivial && self.target_nontrivial
    }
}

/// A surjection onto a nontrivial finite group that kills a word.
#[derive(Debug, Clone)]
pub struct Witness {
    pub source: Presentation,
    pub word: Word,
    pub target: FiniteGroup,
    /// Image of each generator, as an element id of `target`.
    pub images: Vec<usize>,
    pub check: Verification,
}

impl Witness {
    fn new(source: &Presentation, word: &Word, target: &FiniteGroup, images: &[usize]) -> Witness {
        let mut w = Witness {
            source: source.clone(),
            word: word.clone(),
            target: target.clone(),
            images: images.to_vec(),
            check: Verification {
                relators_trivial: false,
                surjective: false,
                word_trivial: false,
                target_nontrivial: false,
                transcript: vec![],
            },
        };
        w.check = w.verify();
        w
    }

    /// Re-evaluate every relator and the word letter by letter, and rebuild
    /// the image subgroup by breadth-first search.
    pub fn verify(&self) -> Verification {
        let h = &self.target;
        let mut transcript = Vec::new();
        let letter_eval = |w: &Word| {
            let mut acc = 0usize;
            for s in w.syllables() {
                let x = self.images.get(s.gen).copied().unwrap_or(usize::MAX);
                if x >= h.order() {
                    return None;
                }
                let step = if s.exp < 0 { h.inv(x) } else { x };
                // square-and-multiply on |exp| copies of `step`
                let (mut e, mut sq, mut part) = (s.exp.unsigned_abs(), step, 0usize);
                while e > 0 {
                    if e & 1 == 1 {
                        part = h.mul(part, sq);
                    }
                    sq = h.mul(sq, sq);
                    e >>= 1;
                }
                acc = h.mul(acc, part);
            }
            Some(acc)
        };
        let arity_ok = self.images.len() == self.source.generators().len();
        let mut relators_trivial = arity_ok;
        for r in self.source.relators() {
            let v = letter_eval(r);
            relators_trivial &= v == Some(0);
            transcript.push(format!(
                "relator {} -> {}",
                self.source.render_word(r),
                v.map_or("undefined".into(), |x| x.to_string())
            ));
        }
        let mut seen = vec![false; h.order()];
        let mut queue = vec![0usize];
        seen[0] = true;
        let mut i = 0;
        while i < queue.len() {
            for &g in &self.images {
                if g < h.order() {
                    let y = h.mul(queue[i], g);
                    if !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                    }
                }
            }
            i += 1;
        }
        let surjective = arity_ok && queue.len() == h.order();
        transcript.push(format!(
            "images generate {} of {} elements of {}",
            queue.len(),
            h.order(),
            h.name()
        ));
        let wv = letter_eval(&self.word);
        let word_trivial = wv == Some(0);
        transcript.push(format!(
            "word {} -> {}",
            self.source.render_word(&self.word),
            wv.map_or("undefined".into(), |x| x.to_string())
        ));
        let target_nontrivial = h.order() > 1;
        transcript.push(format!("target order {}", h.order()));
        Verification {
            relators_trivial,
            surjective,
            word_trivial,
            target_nontrivial,
            transcript,
        }
    }

    pub fn to_json(&self) -> Value {
        let images: serde_json::Map<String, Value> = self
            .source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, &x)| (g.clone(), json!(x)))
            .collect();
        json!({
            "target": {"name": self.target.name(), "order": self.target.order()},
            "images": images,
            "word": self.source.render_word(&self.word),
            "verified": self.check.ok(),
            "check": self.check.transcript,
        })
    }
}

/// First witness for `w` over the given targets, in target order, then
/// lexicographic image order.
pub fn find_annihilator_in(
    p: &Presentation,
    w: &Word,
    targets: &[FiniteGroup],
    caps: &Caps,
) -> Result<Option<Witness>> {
    for h in targets.iter().filter(|h| !h.is_trivial()) {
        let orders = h.element_orders();
        let mut found = None;
        for_each_surjection(p, h, caps, |imgs| {
            if eval_reduced(h, &orders, imgs, w) == 0 {
                found = Some(imgs.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if let Some(imgs) = found {
            return Ok(Some(checked(Witness::new(p, w, h, &imgs))));
        }
    }
    Ok(None)
}

fn checked(w: Witness) -> Witness {
    assert!(
        w.check.ok(),
        "search produced a witness that fails re-verification: {:?}",
        w.check
    );
    w
}

/// First witness for `w` among search targets of order at most `bound`.
pub fn find_annihilator(p: &Presentation, w: &Word, bound: usize, caps: &Caps) -> Result<Option<Witness>> {
    find_annihilator_in(p, w, targets_up_to(bound)?, caps)
}

/// First surjection onto a nontrivial target of order at most `bound`.
pub fn nontrivial_quotient_exists(p: &Presentation, bound: usize, caps: &Caps) -> Result<Option<Witness>> {
    find_annihilator(p, &Word::empty(), bound, caps)
}

/// Freely reduced words of length at most `max_len` in shortlex order, with
/// letters ordered `g0, g0⁻¹, g1, g1⁻¹, …`.
pub fn reduced_words(generators: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer: Vec<Vec<(usize, i8)>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..generators {
                for s in [1i8, -1] {
                    if w.last() == Some(&(g, -s)) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push((g, s));
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().map(|l| Word::from_letters(l)));
        layer = next;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordStatus {
    Witnessed,
    /// No witness among the searched targets; says nothing beyond the bound.
    Unwitnessed,
    /// Unwitnessed, but the group is known to be F-A, so a larger bound would find one.
    BoundTooSmall,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanEntry {
    pub word: String,
    pub status: WordStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip)]
    pub target: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub presentation: String,
    pub max_length: usize,
    pub bound: usize,
    pub verdict: VerdictKind,
    pub searched: Vec<String>,
    pub witnessed: usize,
    pub unwitnessed: usize,
    pub entries: Vec<ScanEntry>,
}

/// Run [`find_annihilator`] on every freely reduced word up to `max_len`.
///
/// Surjections onto each target are enumerated once and shared by all words.
pub fn fa_scan(p: &Presentation, max_len: usize, bound: usize, caps: &Caps) -> Result<ScanReport> {
    let targets = targets_up_to(bound)?;
    let surjections = targets
        .par_iter()
        .map(|h| enumerate_surjections(p, h, caps))
        .collect::<Result<Vec<_>>>()?;
    let orders: Vec<Vec<usize>> = targets.iter().map(|h| h.element_orders()).collect();
    let verdict = classify_fa(p, Hint::None).verdict;
    let words = reduced_words(p.generators().len(), max_len);
    let entries: Vec<ScanEntry> = words
        .par_iter()
        .map(|w| {
            let hit = targets.iter().enumerate().find_map(|(t, h)| {
                surjections[t]
                    .iter()
                    .find(|imgs| eval_reduced(h, &orders[t], imgs, w) == 0)
                    .map(|imgs| (h, imgs))
            });
            match hit {
                Some((h, imgs)) => {
                    let wit = checked(Witness::new(p, w, h, imgs));
                    ScanEntry {
                        word: p.render_word(w),
                        status: WordStatus::Witnessed,
                        witness: Some(wit.to_json()),
                        target: Some(h.name().to_string()),
                    }
                }
                None => ScanEntry {
                    word: p.render_word(w),
                    status: if verdict == VerdictKind::Fa {
                        WordStatus::BoundTooSmall
                    } else {
                        WordStatus::Unwitnessed
                    },
                    witness: None,
                    target: None,
                },
            }
        })
        .collect();
    let witnessed = entries
        .iter()
        .filter(|e| e.status == WordStatus::Witnessed)
        .count();
    Ok(ScanReport {
        presentation: p.render(),
        max_length: max_len,
        bound,
        verdict,
        searched: targets.iter().map(|h| h.name().to_string()).collect(),
        witnessed,
        unwitnessed: entries.len() - witnessed,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    const K235: &str = "< x,y,z | x^2, y^3, z^5 >";
    const HIGMAN: &str =
        "< a,b,c,d | a b a^-1 = b^2, b c b^-1 = c^2, c d c^-1 = d^2, d a d^-1 = a^2 >";

    fn p(s: &str) -> Presentation {
        parse_presentation(s).unwrap()
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn target_list() {
        let t = search_targets();
        assert!(t.windows(2).all(|w| (w[0].order(), w[0].name()) < (w[1].order(), w[1].name())));
        let first: Vec<&str> = t.iter().take(6).map(|g| g.name()).collect();
        assert_eq!(first, ["C2", "C3", "C2^2", "C4", "C5", "C6"]);
        assert!(t.iter().any(|g| g.name() == "A5"));
        assert!(t.iter().all(|g| g.order() <= SEARCH_MAX_ORDER && g.order() > 1));
        assert!(targets_up_to(61).is_err());
        assert!(targets_up_to(1).unwrap().is_empty());
    }

    #[test]
    fn surjection_counts() {
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(enumerate_surjections(&p("< x | x^2 >"), &c2, &caps()).unwrap(), vec![vec![1]]);
        let c3 = FiniteGroup::cyclic(3);
        let s = enumerate_surjections(&p(K235), &c3, &caps()).unwrap();
        assert_eq!(s, vec![vec![0, 1, 0], vec![0, 2, 0]]);
        let h = p(HIGMAN);
        for g in targets_up_to(30).unwrap() {
            assert!(enumerate_surjections(&h, g, &caps()).unwrap().is_empty(), "{}", g.name());
        }
    }

    #[test]
    fn budget() {
        let tiny = Caps {
            search_budget: 10,
            ..Caps::default()
        };
        let r = enumerate_surjections(&p("< a, b | >"), &FiniteGroup::cyclic(4), &tiny);
        assert!(matches!(r, Err(Error::SearchBudgetExceeded { size: 16, budget: 10 })));
    }

    #[test]
    fn annihilators() {
        let k = p(K235);
        let x = k.parse_word("x").unwrap();
        let w = find_annihilator(&k, &x, 5, &caps()).unwrap().unwrap();
        assert_eq!(w.target.name(), "C3");
        assert_eq!(w.images, [0, 1, 0]);
        let y = k.parse_word("y").unwrap();
        let w = find_annihilator(&k, &y, 5, &caps()).unwrap().unwrap();
        assert_eq!(w.target.name(), "C2");
        assert_eq!(w.images, [1, 0, 0]);
        let j = w.to_json();
        assert_eq!(j["target"]["order"], 2);
        assert_eq!(j["images"]["x"], 1);
        assert_eq!(j["verified"], true);

        let c2 = p("< a | a^2 >");
        assert!(find_annihilator(&c2, &Word::generator(0), 60, &caps()).unwrap().is_none());
        let free2 = p("< a, b | >");
        let w = find_annihilator(&free2, &Word::generator(0), 4, &caps()).unwrap().unwrap();
        assert_eq!((w.target.name(), &w.images[..]), ("C2", &[0, 1][..]));
    }

    #[test]
    fn quotients() {
        assert!(nontrivial_quotient_exists(&p(HIGMAN), 30, &caps()).unwrap().is_none());
        let w = nontrivial_quotient_exists(&p("< a,b | [a,b] >"), 2, &caps()).unwrap().unwrap();
        assert_eq!(w.target.name(), "C2");
        assert!(nontrivial_quotient_exists(&Presentation::trivial(), 60, &caps()).unwrap().is_none());
    }

    #[test]
    fn verification_catches_tampering() {
        let k = p(K235);
        let mut w = find_annihilator(&k, &k.parse_word("x").unwrap(), 5, &caps()).unwrap().unwrap();
        assert!(w.verify().ok());
        w.images = vec![1, 1, 0];
        let v = w.verify();
        assert!(!v.relators_trivial && !v.word_trivial);
        w.images = vec![0, 0, 0];
        assert!(!w.verify().surjective);
        w.images = vec![0, 1];
        assert!(!w.verify().ok());
    }

    #[test]
    fn shortlex_words() {
        let ws = reduced_words(2, 2);
        assert_eq!(ws.len(), 1 + 4 + 12);
        let names = ["a".to_string(), "b".to_string()];
        let r: Vec<String> = ws[..7].iter().map(|w| w.render(&names)).collect();
        assert_eq!(r, ["1", "a", "a^-1", "b", "b^-1", "a^2", "a b"]);
        assert_eq!(reduced_words(3, 6).len(), 1 + 6 + 30 + 150 + 750 + 3750 + 18750);
        assert_eq!(reduced_words(0, 3).len(), 1);
    }

    #[test]
    fn scans() {
        let r = fa_scan(&p(K235), 1, 5, &caps()).unwrap();
        assert_eq!(r.entries.len(), 7);
        assert_eq!(r.unwitnessed, 0);
        let r = fa_scan(&p("< a | a^2 >"), 1, 60, &caps()).unwrap();
        let statuses: Vec<WordStatus> = r.entries.iter().map(|e| e.status).collect();
        assert_eq!(statuses, [WordStatus::Witnessed, WordStatus::Unwitnessed, WordStatus::Unwitnessed]);
        let r = fa_scan(&p("< a,b | [a,b] >"), 1, 1, &caps()).unwrap();
        assert!(r.entries.iter().any(|e| e.status == WordStatus::BoundTooSmall));
        let r = fa_scan(&Presentation::trivial(), 0, 60, &caps()).unwrap();
        assert_eq!(r.entries[0].status, WordStatus::Unwitnessed);
    }
}
