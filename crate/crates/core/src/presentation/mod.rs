//! Finite presentations `⟨X | R⟩`, their abelianisation, and the
//! classification rules built on it.
//!
//! Text form:
//!
//! ```text
//! presentation := '<' genlist '|' relist '>'
//! genlist      := name (',' name)* | ε
//! relist       := relator (',' relator)* | ε
//! relator      := word | word '=' word
//! word         := term+ | '1'
//! term         := name ('^' int)? | '[' word ',' word ']' | '(' word ')' ('^' int)?
//! int          := '-'? digit+
//! ```
//!
//! Whitespace only separates tokens. `[u,v]` expands to `u v u⁻¹ v⁻¹` and
//! `u = v` to `u v⁻¹`.

pub mod classify;
mod parse;
pub mod snf;
mod word;

use std::fmt;

use num_bigint::BigInt;

pub use parse::parse_presentation;
pub use snf::{smith_normal_form, IntMatrix, SnfResult};
pub use word::{free_reduce, Syllable, Word, MAX_EXPANDED_LETTERS};

use crate::abelian::AbelianInvariants;
use crate::error::{Error, Result};

/// Generators and relators of a finitely presented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !valid_name(g) {
                return Err(Error::InvalidArgument(format!("bad generator name `{g}`")));
            }
            if generators[..i].contains(g) {
                return Err(Error::InvalidArgument(format!("duplicate generator `{g}`")));
            }
        }
        if let Some(r) = relators
            .iter()
            .find(|r| r.max_generator().is_some_and(|m| m >= generators.len()))
        {
            return Err(Error::InvalidArgument(format!(
                "relator {r} uses an undeclared generator"
            )));
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// `⟨ | ⟩`
    pub fn trivial() -> Self {
        Presentation {
            generators: vec![],
            relators: vec![],
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parse a word over this presentation's generators (same term grammar).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse::parse_word(text, &self.generators)
    }

    pub fn render_word(&self, w: &Word) -> String {
        w.render(&self.generators)
    }

    /// Canonical text: `< a, b | a^2, a b a^-1 b^-1 >`.
    pub fn render(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.render_word(r)).collect();
        let gens = self.generators.join(", ");
        match (gens.is_empty(), rels.is_empty()) {
            (true, true) => "< | >".into(),
            (false, true) => format!("< {gens} | >"),
            (true, false) => format!("< | {} >", rels.join(", ")),
            (false, false) => format!("< {gens} | {} >", rels.join(", ")),
        }
    }

    /// Row `i`, column `j`: exponent sum of generator `j` in relator `i`.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let cols = self.generators.len();
        let data = self
            .relators
            .iter()
            .flat_map(|r| r.exponent_sums(cols).into_iter().map(BigInt::from))
            .collect();
        IntMatrix::from_vec(self.relators.len(), cols, data)
    }

    /// Invariants of `G^ab` from the Smith normal form of the exponent matrix.
    pub fn abelian_invariants(&self) -> AbelianInvariants {
        let snf = smith_normal_form(&self.exponent_matrix());
        let diag = snf.diagonal();
        let nonzero = diag.iter().filter(|d| !num_traits::Zero::is_zero(*d)).count();
        let factors = diag
            .into_iter()
            .filter(|d| *d > BigInt::from(1))
            .map(|d| d.to_biguint().expect("diagonal is nonnegative"))
            .collect();
        AbelianInvariants::new(self.generators.len() - nonzero, factors)
            .expect("Smith form diagonal is a divisibility chain")
    }

    /// Disjoint union of generators (clashing names of `other` get a `_2`,
    /// `_3`, … suffix) and concatenated relators.
    pub fn free_product(&self, other: &Presentation) -> Presentation {
        let mut generators = self.generators.clone();
        for g in &other.generators {
            let mut name = g.clone();
            let mut k = 2;
            while generators.contains(&name) || (name != *g && other.generators.contains(&name)) {
                name = format!("{g}_{k}");
                k += 1;
            }
            generators.push(name);
        }
        let shift = self.generators.len();
        let relators = self
            .relators
            .iter()
            .cloned()
            .chain(other.relators.iter().map(|r| r.shift_generators(shift)))
            .collect();
        Presentation {
            generators,
            relators,
        }
    }

    /// Free product plus every commutator `[g, h]` between the two generator sets.
    pub fn direct_product(&self, other: &Presentation) -> Presentation {
        let mut p = self.free_product(other);
        let shift = self.generators.len();
        for g in 0..shift {
            for h in 0..other.generators.len() {
                p.relators.push(Word::commutator(
                    &Word::generator(g),
                    &Word::generator(shift + h),
                ));
            }
        }
        p
    }

    /// Repeatedly cyclically reduce relators and delete any generator that
    /// equals a relator `g^±1`, until nothing changes. Empty relators are dropped.
    pub fn simplify_trivial_relators(&self) -> Simplified {
        let mut generators = self.generators.clone();
        let mut relators: Vec<Word> = self.relators.clone();
        let mut killed = Vec::new();
        loop {
            relators = relators
                .iter()
                .map(Word::cyclically_reduce)
                .filter(|r| !r.is_empty())
                .collect();
            let victim = relators.iter().find_map(|r| match r.syllables() {
                [s] if s.exp.abs() == 1 => Some(s.gen),
                _ => None,
            });
            let Some(gen) = victim else { break };
            killed.push(generators.remove(gen));
            relators = relators.iter().map(|r| r.delete_generator(gen)).collect();
        }
        let collapsed = generators.is_empty();
        Simplified {
            presentation: Presentation {
                generators,
                relators,
            },
            killed,
            collapsed,
        }
    }

    /// True when the presentation is `⟨ | ⟩` after simplification.
    pub fn is_obviously_trivial(&self) -> bool {
        self.simplify_trivial_relators().collapsed
    }
}

/// Result of [`Presentation::simplify_trivial_relators`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: Presentation,
    /// Deleted generators, in deletion order.
    pub killed: Vec<String>,
    /// No generators remain: the group is trivial.
    pub collapsed: bool,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::str::FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_presentation(s)
    }
}
