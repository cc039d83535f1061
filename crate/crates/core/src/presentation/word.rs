use std::fmt;

/// Longest word a power of a multi-syllable word may expand to.
pub const MAX_EXPANDED_LETTERS: u64 = 1 << 24;

/// One block `g^e` of a word, `e ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

/// A word in the generators and their inverses, stored as syllables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Build from raw syllables, freely reducing.
    pub fn from_syllables(syllables: impl IntoIterator<Item = Syllable>) -> Self {
        let mut w = Word::empty();
        for s in syllables {
            w.push(s);
        }
        w
    }

    pub fn generator(gen: usize) -> Self {
        Word::power(gen, 1)
    }

    pub fn power(gen: usize, exp: i64) -> Self {
        Word::from_syllables([Syllable { gen, exp }])
    }

    /// Build from letters, `(g, +1)` for `g` and `(g, -1)` for `g⁻¹`.
    pub fn from_letters(letters: &[(usize, i8)]) -> Self {
        Word::from_syllables(letters.iter().map(|&(gen, s)| Syllable {
            gen,
            exp: s as i64,
        }))
    }

    /// Append a syllable, merging with the tail so the word stays freely reduced.
    pub fn push(&mut self, s: Syllable) {
        if s.exp == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.gen == s.gen => {
                last.exp += s.exp;
                if last.exp == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(s),
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Length in letters, `Σ|e|`.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &s in &other.syllables {
            w.push(s);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::from_syllables(self.syllables.iter().rev().map(|s| Syllable {
            gen: s.gen,
            exp: -s.exp,
        }))
    }

    /// `w^k`; `None` if an exponent overflows or the expansion would exceed
    /// [`MAX_EXPANDED_LETTERS`].
    pub fn pow(&self, k: i64) -> Option<Word> {
        if k == 0 || self.is_empty() {
            return Some(Word::empty());
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        // a single syllable scales without repetition
        if let [s] = base.syllables[..] {
            return s
                .exp
                .checked_mul(k.unsigned_abs().try_into().ok()?)
                .map(|exp| Word::power(s.gen, exp));
        }
        let times = usize::try_from(k.unsigned_abs()).ok()?;
        if (base.length() as u128) * (times as u128) > MAX_EXPANDED_LETTERS as u128 {
            return None;
        }
        let mut w = Word::empty();
        for _ in 0..times {
            w = w.concat(&base);
        }
        Some(w)
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Remove matching first/last syllables (conjugating), merging equal generators.
    pub fn cyclically_reduce(&self) -> Word {
        let mut s = self.syllables.clone();
        loop {
            if s.len() < 2 {
                break;
            }
            let (first, last) = (s[0], s[s.len() - 1]);
            if first.gen != last.gen {
                break;
            }
            // g^a … g^b  ~  g^(a+b) …
            s.pop();
            let merged = first.exp + last.exp;
            if merged == 0 {
                s.remove(0);
            } else {
                s[0].exp = merged;
                if s.len() == 1 {
                    break;
                }
            }
        }
        Word { syllables: s }
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0i64; generators];
        for s in &self.syllables {
            v[s.gen] += s.exp;
        }
        v
    }

    pub fn uses(&self, gen: usize) -> bool {
        self.syllables.iter().any(|s| s.gen == gen)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.gen).max()
    }

    /// Drop every occurrence of `gen` and shift higher indices down by one.
    pub(crate) fn delete_generator(&self, gen: usize) -> Word {
        Word::from_syllables(self.syllables.iter().filter(|s| s.gen != gen).map(|s| {
            Syllable {
                gen: if s.gen > gen { s.gen - 1 } else { s.gen },
                exp: s.exp,
            }
        }))
    }

    pub(crate) fn shift_generators(&self, by: usize) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .map(|s| Syllable {
                    gen: s.gen + by,
                    exp: s.exp,
                })
                .collect(),
        }
    }

    /// Render with the given generator names; the empty word is `1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_empty() {
            return "1".into();
        }
        self.syllables
            .iter()
            .map(|s| {
                let name = &names[s.gen];
                if s.exp == 1 {
                    name.clone()
                } else {
                    format!("{name}^{}", s.exp)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Freely reduce a word. [`Word`] values are kept reduced on construction,
/// so this re-runs the reduction over the syllables.
pub fn free_reduce(w: &Word) -> Word {
    Word::from_syllables(w.syllables.iter().copied())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{}", s.gen)?;
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syl(gen: usize, exp: i64) -> Syllable {
        Syllable { gen, exp }
    }

    #[test]
    fn reduction_examples() {
        assert!(Word::from_syllables([syl(0, 1), syl(0, -1)]).is_empty());
        assert_eq!(
            Word::from_syllables([syl(0, 2), syl(0, -3)]),
            Word::power(0, -1)
        );
        assert_eq!(
            Word::from_syllables([syl(0, 1), syl(1, 1), syl(1, -1), syl(0, 1)]),
            Word::power(0, 2)
        );
    }

    #[test]
    fn cyclic_reduction() {
        // b a^2 b^-1 -> a^2
        let w = Word::from_syllables([syl(1, 1), syl(0, 2), syl(1, -1)]);
        assert_eq!(w.cyclically_reduce(), Word::power(0, 2));
        // a b a -> a^2 b
        let w = Word::from_syllables([syl(0, 1), syl(1, 1), syl(0, 1)]);
        assert_eq!(
            w.cyclically_reduce(),
            Word::from_syllables([syl(0, 2), syl(1, 1)])
        );
        let c = Word::commutator(&Word::generator(0), &Word::generator(1));
        assert_eq!(c.cyclically_reduce(), c);
    }

    #[test]
    fn powers_and_inverse() {
        let ab = Word::from_letters(&[(0, 1), (1, 1)]);
        assert_eq!(ab.pow(2).unwrap().length(), 4);
        assert_eq!(ab.pow(-1).unwrap(), ab.inverse());
        assert!(ab.concat(&ab.inverse()).is_empty());
        assert_eq!(Word::power(0, 3).pow(4).unwrap(), Word::power(0, 12));
        assert!(Word::power(0, i64::MAX).pow(2).is_none());
    }
}
