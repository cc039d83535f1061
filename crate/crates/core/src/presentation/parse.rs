use super::{valid_name, Presentation, Syllable, Word};
use crate::error::{Error, Result};

/// Exponents beyond this magnitude are rejected so syllable sums stay in `i64`.
const MAX_EXPONENT: i64 = 1 << 53;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lt,
    Gt,
    Bar,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Caret,
    Eq,
    Minus,
    Name(String),
    Digits(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let single = match c {
            '<' => Some(Tok::Lt),
            '>' => Some(Tok::Gt),
            '|' => Some(Tok::Bar),
            ',' => Some(Tok::Comma),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '^' => Some(Tok::Caret),
            '=' => Some(Tok::Eq),
            '-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, start));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Name(text[start..i].to_string()), start));
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Digits(text[start..i].to_string()), start));
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(Error::Syntax {
                pos: start,
                msg: format!("unexpected character `{ch}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn at_term_start(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Name(_) | Tok::LBracket | Tok::LParen)
        )
    }

    fn word(&mut self) -> Result<Word> {
        if let Some(Tok::Digits(d)) = self.peek() {
            if d == "1" {
                self.pos += 1;
                return Ok(Word::empty());
            }
            return self.err("only `1` may stand for a word");
        }
        if !self.at_term_start() {
            return self.err("expected a word");
        }
        let mut w = Word::empty();
        while self.at_term_start() {
            let t = self.term()?;
            w = w.concat(&t);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word> {
        match self.peek().cloned() {
            Some(Tok::Name(name)) => {
                let at = self.offset();
                self.pos += 1;
                let gen = self
                    .names
                    .iter()
                    .position(|g| *g == name)
                    .ok_or(Error::UnknownGenerator { name, pos: at })?;
                let exp = self.exponent()?.unwrap_or(1);
                Ok(Word::from_syllables([Syllable { gen, exp }]))
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(Tok::Comma, "`,` in commutator")?;
                let v = self.word()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Word::commutator(&u, &v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                let at = self.offset();
                match self.exponent()? {
                    None => Ok(u),
                    Some(k) => u.pow(k).ok_or(Error::Syntax {
                        pos: at,
                        msg: "power too large".into(),
                    }),
                }
            }
            _ => self.err("expected a generator, `[` or `(`"),
        }
    }

    fn exponent(&mut self) -> Result<Option<i64>> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let Some(Tok::Digits(d)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        let value = match d.parse::<i64>() {
            Ok(v) if v <= MAX_EXPONENT => v,
            _ => return self.err("exponent too large"),
        };
        self.pos += 1;
        Ok(Some(if neg { -value } else { value }))
    }

    fn relator(&mut self) -> Result<Word> {
        let u = self.word()?;
        if self.peek() == Some(&Tok::Eq) {
            self.pos += 1;
            let v = self.word()?;
            return Ok(u.concat(&v.inverse()));
        }
        Ok(u)
    }
}

/// Parse the text form described in the module docs.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let toks = lex(text)?;
    let mut gens: Vec<String> = Vec::new();
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        names: &[],
    };
    p.expect(Tok::Lt, "`<`")?;
    if let Some(Tok::Name(_)) = p.peek() {
        loop {
            let at = p.offset();
            let Some(Tok::Name(name)) = p.peek().cloned() else {
                return p.err("expected a generator name");
            };
            debug_assert!(valid_name(&name));
            if gens.contains(&name) {
                return Err(Error::Syntax {
                    pos: at,
                    msg: format!("duplicate generator `{name}`"),
                });
            }
            gens.push(name);
            p.pos += 1;
            if p.peek() == Some(&Tok::Comma) {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect(Tok::Bar, "`|`")?;
    let mut relators = Vec::new();
    let mut p = Parser {
        toks: p.toks,
        pos: p.pos,
        end: p.end,
        names: &gens,
    };
    if p.peek() != Some(&Tok::Gt) {
        if gens.is_empty() {
            return Err(Error::EmptyGeneratorList);
        }
        loop {
            relators.push(p.relator()?);
            if p.peek() == Some(&Tok::Comma) {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect(Tok::Gt, "`>`")?;
    if p.pos != p.toks.len() {
        return p.err("trailing input after `>`");
    }
    Presentation::new(gens, relators)
}

/// Parse a single word over `names`.
pub(crate) fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
        names,
    };
    let w = p.word()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input after word");
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_with_sugar() {
        let p = parse_presentation("< a, b | a^2, b^2, [a,b] >").unwrap();
        assert_eq!(p.generators(), &["a", "b"]);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.render_word(&p.relators()[2]), "a b a^-1 b^-1");
    }

    #[test]
    fn fixtures() {
        let k = parse_presentation("< x,y,z | x^2, y^3, z^5 >").unwrap();
        assert_eq!(k.render(), "< x, y, z | x^2, y^3, z^5 >");
        let h = parse_presentation(
            "< a,b,c,d | a b a^-1 = b^2, b c b^-1 = c^2, c d c^-1 = d^2, d a d^-1 = a^2 >",
        )
        .unwrap();
        assert_eq!(h.relators().len(), 4);
        assert_eq!(h.render_word(&h.relators()[0]), "a b a^-1 b^-2");
    }

    #[test]
    fn parens_powers_and_one() {
        let p = parse_presentation("<a,b|(a b)^2, 1, (a)^-3 = 1>").unwrap();
        assert_eq!(p.render(), "< a, b | a b a b, 1, a^-3 >");
        let p = parse_presentation("<a|a^-2 a^2>").unwrap();
        assert!(p.relators()[0].is_empty());
        let p = parse_presentation("<ab, a_1 | ab a_1>").unwrap();
        assert_eq!(p.generators().len(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_presentation("< a | b >"),
            Err(Error::UnknownGenerator { ref name, pos: 6 }) if name == "b"
        ));
        assert!(matches!(
            parse_presentation("< a | a^ >"),
            Err(Error::Syntax { pos: 9, .. })
        ));
        assert!(matches!(parse_presentation("< | 1 >"), Err(Error::EmptyGeneratorList)));
        assert!(parse_presentation("< | >").unwrap().generators().is_empty());
        assert!(matches!(parse_presentation("< a, a | >"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("< a | a > x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("< a | [a] >"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("< a | 2 >"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("< a | a $ >"), Err(Error::Syntax { pos: 8, .. })));
        assert!(matches!(
            parse_presentation("< a | a^99999999999999999999 >"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(parse_presentation("< a | a"), Err(Error::Syntax { pos: 7, .. })));
    }
}
