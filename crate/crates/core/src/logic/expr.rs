//! Recursive-descent parser for sum-of-products style boolean expressions.
//!
//! ```text
//! expr   := term { ("+" | "|") term } ;
//! term   := factor { ("&" | "*" | ".") factor } ;
//! factor := ("!" | "~") factor | atom ;
//! atom   := identifier | "0" | "1" | "(" expr ")" ;
//! ```

use super::{check_variables, LogicError, TruthTable, MAX_ARITY};

/// Parsed expression. Variables are referenced by position in the
/// variable list the expression was resolved against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(bool),
    Var(usize),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

impl Expr {
    pub fn eval(&self, assignment: &[bool]) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Var(i) => assignment[*i],
            Expr::Not(e) => !e.eval(assignment),
            Expr::And(es) => es.iter().all(|e| e.eval(assignment)),
            Expr::Or(es) => es.iter().any(|e| e.eval(assignment)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Zero,
    One,
    Or,
    And,
    Not,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Returns the next token and the byte offset it starts at.
    fn next(&mut self) -> Result<(Tok<'a>, usize), LogicError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start));
        };
        let single = |tok| Ok((tok, start));
        let tok = match c {
            '+' | '|' => Tok::Or,
            '&' | '*' | '.' => Tok::And,
            '!' | '~' => Tok::Not,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = rest
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(rest.len());
                self.pos += len;
                return Ok((Tok::Ident(&rest[..len]), start));
            }
            c if c.is_ascii_digit() => {
                let len = rest
                    .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
                    .unwrap_or(rest.len());
                let lit = &rest[..len];
                self.pos += len;
                return match lit {
                    "0" => single(Tok::Zero),
                    "1" => single(Tok::One),
                    _ => Err(LogicError::Syntax {
                        position: start,
                        message: format!("invalid literal `{lit}`, only 0 and 1 are constants"),
                    }),
                };
            }
            other => {
                return Err(LogicError::Syntax {
                    position: start,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        self.pos += c.len_utf8();
        single(tok)
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: (Tok<'a>, usize),
    names: Vec<String>,
    fixed: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, names: Vec<String>, fixed: bool) -> Result<Self, LogicError> {
        let mut lexer = Lexer { src, pos: 0 };
        let peeked = lexer.next()?;
        Ok(Self {
            lexer,
            peeked,
            names,
            fixed,
        })
    }

    fn bump(&mut self) -> Result<(Tok<'a>, usize), LogicError> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.peeked, next))
    }

    fn expr(&mut self) -> Result<Expr, LogicError> {
        let mut terms = vec![self.term()?];
        while self.peeked.0 == Tok::Or {
            self.bump()?;
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Or(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, LogicError> {
        let mut factors = vec![self.factor()?];
        while self.peeked.0 == Tok::And {
            self.bump()?;
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::And(factors)
        })
    }

    fn factor(&mut self) -> Result<Expr, LogicError> {
        if self.peeked.0 == Tok::Not {
            self.bump()?;
            return Ok(Expr::Not(Box::new(self.factor()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, LogicError> {
        let (tok, position) = self.bump()?;
        match tok {
            Tok::Zero => Ok(Expr::Const(false)),
            Tok::One => Ok(Expr::Const(true)),
            Tok::Ident(name) => self.resolve(name).map(Expr::Var),
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump()? {
                    (Tok::RParen, _) => Ok(inner),
                    (_, position) => Err(LogicError::Syntax {
                        position,
                        message: "expected `)`".into(),
                    }),
                }
            }
            Tok::End => Err(LogicError::Syntax {
                position,
                message: "unexpected end of expression".into(),
            }),
            _ => Err(LogicError::Syntax {
                position,
                message: "expected identifier, constant or `(`".into(),
            }),
        }
    }

    fn resolve(&mut self, name: &str) -> Result<usize, LogicError> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Ok(i);
        }
        if self.fixed {
            return Err(LogicError::UnknownVariable(name.to_owned()));
        }
        self.names.push(name.to_owned());
        if self.names.len() > MAX_ARITY {
            return Err(LogicError::TooManyVariables(self.names.len()));
        }
        Ok(self.names.len() - 1)
    }
}

/// Parses `text` into an [`Expr`] plus the variable order it was resolved
/// against (the given list, or first appearance when `variables` is `None`).
pub(crate) fn parse_expr<S: AsRef<str>>(
    text: &str,
    variables: Option<&[S]>,
) -> Result<(Expr, Vec<String>), LogicError> {
    let (names, fixed) = match variables {
        Some(vs) => {
            let names: Vec<String> = vs.iter().map(|s| s.as_ref().to_owned()).collect();
            check_variables(&names)?;
            (names, true)
        }
        None => (Vec::new(), false),
    };
    let mut parser = Parser::new(text, names, fixed)?;
    let expr = parser.expr()?;
    let (tok, position) = parser.peeked;
    if tok != Tok::End {
        return Err(LogicError::Syntax {
            position,
            message: "unexpected trailing input".into(),
        });
    }
    Ok((expr, parser.names))
}

/// Parses an expression and tabulates it.
///
/// With `variables == None` the order is that of first appearance; an
/// expression with no identifiers at all then has no variables and is
/// rejected, so constant functions need an explicit list.
pub fn parse_expression<S: AsRef<str>>(
    text: &str,
    variables: Option<&[S]>,
) -> Result<TruthTable, LogicError> {
    let (expr, names) = parse_expr(text, variables)?;
    check_variables(&names)?;
    let n = names.len();
    let mut assignment = vec![false; n];
    let outputs = (0..1usize << n)
        .map(|row| {
            for (j, slot) in assignment.iter_mut().enumerate() {
                *slot = (row >> (n - 1 - j)) & 1 == 1;
            }
            expr.eval(&assignment)
        })
        .collect();
    TruthTable::new(names, outputs)
}
