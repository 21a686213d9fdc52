//! Tokenizer for `.prk` sources. Accepts the ASCII notation and the Unicode
//! glyphs used by the printer for types.

use crate::syntax::{Mode, Sign};

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// A term keyword immediately followed by its sign, e.g. `wlam+`.
    Signed(String, Sign),
    Mode(Mode),
    Int(usize),
    Sym(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub const SIGNED_KEYWORDS: &[&str] = &[
    "wlam", "wapp", "pair", "proj1", "proj2", "inj1", "inj2", "case", "lam", "app", "copair", "colam", "negi", "nege",
    "tlam", "tapp", "pack", "unpack",
];

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '⊥'
}

fn ident_cont(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let (tline, tcol) = (line, col);
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Token { tok, line: tline, col: tcol });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '-' if next == Some('-') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '-' if next == Some('>') => push(Tok::Sym("->"), 2, &mut i, &mut col),
            '-' if next == Some('x') && !chars.get(i + 2).is_some_and(|c| ident_cont(*c)) => {
                push(Tok::Sym("-x"), 2, &mut i, &mut col)
            }
            '-' => push(Tok::Sym("-"), 1, &mut i, &mut col),
            '/' if next == Some('\\') => push(Tok::Sym("/\\"), 2, &mut i, &mut col),
            '\\' if next == Some('/') => push(Tok::Sym("\\/"), 2, &mut i, &mut col),
            '|' if next == Some('-') => push(Tok::Sym("|-"), 2, &mut i, &mut col),
            '!' | '?' if matches!(next, Some('+') | Some('-')) => {
                let sign = if next == Some('+') { Sign::Pos } else { Sign::Neg };
                let mode = if c == '!' { Mode::strong(sign) } else { Mode::weak(sign) };
                push(Tok::Mode(mode), 2, &mut i, &mut col)
            }
            '⁺' | '⁻' | '⊕' | '⊖' => {
                let mode = match c {
                    '⁺' => Mode::STRONG_POS,
                    '⁻' => Mode::STRONG_NEG,
                    '⊕' => Mode::WEAK_POS,
                    _ => Mode::WEAK_NEG,
                };
                push(Tok::Mode(mode), 1, &mut i, &mut col)
            }
            '∧' => push(Tok::Sym("/\\"), 1, &mut i, &mut col),
            '∨' => push(Tok::Sym("\\/"), 1, &mut i, &mut col),
            '→' => push(Tok::Sym("->"), 1, &mut i, &mut col),
            '⋉' => push(Tok::Sym("-x"), 1, &mut i, &mut col),
            '¬' | '~' => push(Tok::Sym("~"), 1, &mut i, &mut col),
            '⊢' => push(Tok::Sym("|-"), 1, &mut i, &mut col),
            '∀' => push(Tok::Ident("forall".into()), 1, &mut i, &mut col),
            '∃' => push(Tok::Ident("exists".into()), 1, &mut i, &mut col),
            '(' | ')' | '[' | ']' | ',' | ';' | '.' | ':' | '=' => {
                let s = match c {
                    '(' => "(",
                    ')' => ")",
                    '[' => "[",
                    ']' => "]",
                    ',' => ",",
                    ';' => ";",
                    '.' => ".",
                    ':' => ":",
                    _ => "=",
                };
                push(Tok::Sym(s), 1, &mut i, &mut col)
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text.parse().map_err(|_| ParseError::new(tline, tcol, "integer out of range"))?;
                col += i - start;
                out.push(Token { tok: Tok::Int(n), line: tline, col: tcol });
            }
            c if ident_start(c) => {
                let start = i;
                i += 1;
                while i < chars.len() && ident_cont(chars[i]) {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                col += i - start;
                let sign = match chars.get(i) {
                    Some('+') | Some('⁺') => Some(Sign::Pos),
                    Some('-') | Some('⁻') if chars.get(i + 1) != Some(&'>') => Some(Sign::Neg),
                    _ => None,
                };
                match sign {
                    Some(g) if SIGNED_KEYWORDS.contains(&text.as_str()) => {
                        i += 1;
                        col += 1;
                        out.push(Token { tok: Tok::Signed(text, g), line: tline, col: tcol });
                    }
                    _ => out.push(Token { tok: Tok::Ident(text), line: tline, col: tcol }),
                }
            }
            _ => return Err(ParseError::new(tline, tcol, format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn signs_attach_to_keywords_only() {
        assert_eq!(toks("wlam+ a-x b"), vec![
            Tok::Signed("wlam".into(), Sign::Pos),
            Tok::Ident("a".into()),
            Tok::Sym("-x"),
            Tok::Ident("b".into())
        ]);
        assert_eq!(toks("and-e1"), vec![Tok::Ident("and".into()), Tok::Sym("-"), Tok::Ident("e1".into())]);
    }

    #[test]
    fn modes_and_comments() {
        assert_eq!(toks("a ?- -- note\n!+"), vec![
            Tok::Ident("a".into()),
            Tok::Mode(Mode::WEAK_NEG),
            Tok::Mode(Mode::STRONG_POS)
        ]);
    }
}
