//! Formula grammar, loosest binding first:
//!
//! ```text
//! iff     := implies ("<->" implies)*
//! implies := or ("->" implies)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | atom | "true" | "false" | "(" iff ")"
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use crate::error::{Error, Result};
use crate::logic::{Atom, Formula};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str, first_line: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (first_line, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        let mut push = |tok: Tok, width: usize, i: &mut usize, column: &mut usize| {
            out.push(Spanned {
                tok,
                line: tl,
                column: tc,
            });
            *i += width;
            *column += width;
        };
        match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
            }
            c if c.is_whitespace() => {
                column += 1;
                i += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '!' => push(Tok::Not, 1, &mut i, &mut column),
            '&' => push(Tok::And, 1, &mut i, &mut column),
            '|' => push(Tok::Or, 1, &mut i, &mut column),
            '(' => push(Tok::LParen, 1, &mut i, &mut column),
            ')' => push(Tok::RParen, 1, &mut i, &mut column),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Implies, 2, &mut i, &mut column),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                push(Tok::Iff, 3, &mut i, &mut column)
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                column += i - start;
                let tok = match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                };
                out.push(Spanned {
                    tok,
                    line: tl,
                    column: tc,
                });
            }
            other => {
                return Err(Error::Syntax {
                    line: tl,
                    column: tc,
                    message: format!("unknown token `{other}`"),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: String) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax {
            line: t.line,
            column: t.column,
            message,
        })
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            lhs = lhs.iff(self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            return Ok(lhs.implies(self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                let Ok(atom) = Atom::new(&name) else {
                    return self.error(format!("invalid atom name `{name}`"));
                };
                self.bump();
                Ok(Formula::Atom(atom))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return self.error(format!("expected `)`, found {}", self.peek().describe()));
                }
                self.bump();
                Ok(inner)
            }
            other => self.error(format!("expected a formula, found {}", other.describe())),
        }
    }
}

pub(crate) fn parse_at(text: &str, first_line: usize) -> Result<Formula> {
    let mut p = Parser {
        toks: tokenize(text, first_line)?,
        pos: 0,
    };
    let f = p.iff()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {}", p.peek().describe()));
    }
    Ok(f)
}

/// Parses a single formula.
pub fn parse_formula(text: &str) -> Result<Formula> {
    parse_at(text, 1)
}

/// Strips a trailing `#` comment.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses a theory file: one formula per line, blank and comment-only lines ignored.
pub fn parse_theory(text: &str) -> Result<Vec<Formula>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let body = strip_comment(line);
        if body.trim().is_empty() {
            continue;
        }
        out.push(parse_at(body, idx + 1)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Formula {
        Formula::atom(name)
    }

    #[test]
    fn negation_binds_tighter_than_implication() {
        assert_eq!(
            parse_formula("!p -> q").unwrap(),
            v("p").not().implies(v("q"))
        );
    }

    #[test]
    fn conjunction_binds_tighter_than_disjunction() {
        assert_eq!(
            parse_formula("p & q | r").unwrap(),
            v("p").and(v("q")).or(v("r"))
        );
    }

    #[test]
    fn parenthesized_implication_under_iff() {
        assert_eq!(
            parse_formula("p <-> (q -> r)").unwrap(),
            v("p").iff(v("q").implies(v("r")))
        );
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse_formula("p -> q -> r").unwrap(),
            v("p").implies(v("q").implies(v("r")))
        );
        assert_eq!(
            parse_formula("p & q & r").unwrap(),
            v("p").and(v("q")).and(v("r"))
        );
    }

    #[test]
    fn constants_and_comments() {
        assert_eq!(
            parse_formula("true | false # note").unwrap(),
            Formula::True.or(Formula::False)
        );
    }

    #[test]
    fn unknown_token_reports_position() {
        match parse_formula("p &\n  q $ r") {
            Err(Error::Syntax {
                line,
                column,
                message,
            }) => {
                assert_eq!((line, column), (2, 5));
                assert!(message.contains("unknown token"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_formula("p &"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("(p"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("p q"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("p - q"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn theory_lines_keep_file_positions() {
        let t = parse_theory("# header\np | q\n\n!p\n").unwrap();
        assert_eq!(t, vec![v("p").or(v("q")), v("p").not()]);
        match parse_theory("p\n\nq &") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
