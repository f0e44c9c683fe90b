//! Expression parsing for the command line: infix polynomial arithmetic over
//! x and y with Gaussian-rational coefficients, 1-forms as "P*dx + Q*dy",
//! vector fields as "P*Dx + Q*Dy", and the differential sugar "d(P)".

use crate::error::{Error, Result};
use crate::germ::FoliationGerm;
use crate::jet2::Jet2;
use crate::scalar::{ExactScalar, Q};
use num::BigInt;

#[derive(Clone, Debug, PartialEq)]
enum TokKind {
    Num(Q),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Tok {
    kind: TokKind,
    line: usize,
    col: usize,
}

fn step(c: char, line: &mut usize, col: &mut usize) {
    if c == '\n' {
        *line += 1;
        *col = 1;
    } else {
        *col += 1;
    }
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, co) = (line, col);
        if c.is_whitespace() {
            chars.next();
            step(c, &mut line, &mut col);
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                chars.next();
                step(d, &mut line, &mut col);
                digits.push(d);
            }
            let n: BigInt = digits.parse().unwrap();
            toks.push(Tok { kind: TokKind::Num(Q::from_integer(n)), line: l, col: co });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_alphanumeric() && d != '_' {
                    break;
                }
                chars.next();
                step(d, &mut line, &mut col);
                name.push(d);
            }
            toks.push(Tok { kind: TokKind::Ident(name), line: l, col: co });
            continue;
        }
        let kind = match c {
            '+' => TokKind::Plus,
            '-' => TokKind::Minus,
            '*' => TokKind::Star,
            '/' => TokKind::Slash,
            '^' => TokKind::Caret,
            '(' => TokKind::LParen,
            ')' => TokKind::RParen,
            other => {
                return Err(Error::Parse {
                    line: l,
                    col: co,
                    msg: format!("unexpected character '{}'", other),
                })
            }
        };
        chars.next();
        step(c, &mut line, &mut col);
        toks.push(Tok { kind, line: l, col: co });
    }
    Ok(toks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Basis {
    Form,
    Field,
}

/// Intermediate value: scalar polynomial part plus, when a differential or
/// field symbol is involved, the two component polynomials.
#[derive(Clone)]
struct Val {
    s: Jet2,
    cx: Jet2,
    cy: Jet2,
    basis: Option<Basis>,
}

impl Val {
    fn scalar(s: Jet2, order: usize) -> Self {
        let z = Jet2::constant(ExactScalar::zero(), order);
        Val { s, cx: z.clone(), cy: z, basis: None }
    }

    fn is_scalar(&self) -> bool {
        self.basis.is_none()
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    order: usize,
}

fn err(tok: Option<&Tok>, msg: impl Into<String>) -> Error {
    match tok {
        Some(t) => Error::Parse { line: t.line, col: t.col, msg: msg.into() },
        None => Error::Parse { line: 1, col: 1, msg: format!("{} at end of input", msg.into()) },
    }
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.next() {
            Some(t) if t.kind == TokKind::RParen => Ok(()),
            t => Err(err(t.as_ref(), "expected ')'")),
        }
    }

    fn zero(&self) -> Jet2 {
        Jet2::constant(ExactScalar::zero(), self.order)
    }

    fn one(&self) -> Jet2 {
        Jet2::one(self.order)
    }

    fn atom(&mut self) -> Result<Val> {
        let t = self.next().ok_or_else(|| err(None, "expected expression"))?;
        match &t.kind {
            TokKind::Num(q) => Ok(Val::scalar(
                Jet2::constant(ExactScalar::from_rational(q.clone()), self.order),
                self.order,
            )),
            TokKind::Ident(name) => match name.as_str() {
                "x" => Ok(Val::scalar(Jet2::var_x(self.order), self.order)),
                "y" => Ok(Val::scalar(Jet2::var_y(self.order), self.order)),
                "i" => Ok(Val::scalar(
                    Jet2::constant(ExactScalar::i(), self.order),
                    self.order,
                )),
                "dx" | "dy" | "Dx" | "Dy" => {
                    let basis = if name.starts_with('d') { Basis::Form } else { Basis::Field };
                    let (cx, cy) = if name.ends_with('x') {
                        (self.one(), self.zero())
                    } else {
                        (self.zero(), self.one())
                    };
                    Ok(Val { s: self.zero(), cx, cy, basis: Some(basis) })
                }
                "d" => {
                    match self.next() {
                        Some(p) if p.kind == TokKind::LParen => {}
                        p => return Err(err(p.as_ref(), "expected '(' after d")),
                    }
                    let inner = self.expr(0)?;
                    self.expect_rparen()?;
                    if !inner.is_scalar() {
                        return Err(err(
                            Some(&t),
                            "d(...) applies to a polynomial, not a differential",
                        ));
                    }
                    Ok(Val {
                        s: self.zero(),
                        cx: inner.s.partial_x(),
                        cy: inner.s.partial_y(),
                        basis: Some(Basis::Form),
                    })
                }
                other => Err(err(Some(&t), format!("unknown identifier '{}'", other))),
            },
            TokKind::LParen => {
                let inner = self.expr(0)?;
                self.expect_rparen()?;
                Ok(inner)
            }
            TokKind::Minus => {
                let v = self.expr(25)?;
                Ok(Val {
                    s: v.s.neg(),
                    cx: v.cx.neg(),
                    cy: v.cy.neg(),
                    basis: v.basis,
                })
            }
            _ => Err(err(Some(&t), "expected expression")),
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Val> {
        let mut lhs = self.atom()?;
        loop {
            let Some(op) = self.peek().cloned() else { break };
            let (lbp, rbp) = match op.kind {
                TokKind::Plus | TokKind::Minus => (10, 11),
                TokKind::Star | TokKind::Slash => (20, 21),
                TokKind::Caret => (30, 29),
                _ => break,
            };
            if lbp < min_bp {
                break;
            }
            self.pos += 1;
            let rhs = self.expr(rbp)?;
            lhs = self.apply(&op, lhs, rhs)?;
        }
        Ok(lhs)
    }

    fn apply(&self, op: &Tok, l: Val, r: Val) -> Result<Val> {
        match op.kind {
            TokKind::Plus | TokKind::Minus => {
                let basis = match (l.basis, r.basis) {
                    (a, None) => a,
                    (None, b) => b,
                    (Some(a), Some(b)) if a == b => Some(a),
                    _ => {
                        return Err(err(
                            Some(op),
                            "cannot mix form and field symbols in one expression",
                        ))
                    }
                };
                let f = |u: &Jet2, v: &Jet2| {
                    if op.kind == TokKind::Plus { u.add(v) } else { u.sub(v) }
                };
                Ok(Val { s: f(&l.s, &r.s), cx: f(&l.cx, &r.cx), cy: f(&l.cy, &r.cy), basis })
            }
            TokKind::Star => {
                if l.basis.is_some() && r.basis.is_some() {
                    return Err(err(Some(op), "cannot multiply two differentials"));
                }
                let (sc, v) = if l.basis.is_some() { (r, l) } else { (l, r) };
                if !sc.is_scalar() {
                    return Err(err(Some(op), "cannot multiply two differentials"));
                }
                Ok(Val {
                    s: sc.s.mul(&v.s),
                    cx: sc.s.mul(&v.cx),
                    cy: sc.s.mul(&v.cy),
                    basis: v.basis,
                })
            }
            TokKind::Slash => {
                let c = self.constant_of(&r).ok_or_else(|| {
                    err(Some(op), "division is only allowed by a nonzero constant")
                })?;
                if c.is_zero() {
                    return Err(err(Some(op), "division by zero"));
                }
                let inv = c.inv();
                Ok(Val {
                    s: l.s.scale(&inv),
                    cx: l.cx.scale(&inv),
                    cy: l.cy.scale(&inv),
                    basis: l.basis,
                })
            }
            TokKind::Caret => {
                if !l.is_scalar() {
                    return Err(err(Some(op), "exponentiation applies to polynomials only"));
                }
                let c = self.constant_of(&r).ok_or_else(|| {
                    err(Some(op), "exponent must be a non-negative integer")
                })?;
                let n = c
                    .as_rational()
                    .filter(|q| q.is_integer() && !q.numer().sign().eq(&num::bigint::Sign::Minus))
                    .and_then(|q| u32::try_from(q.to_integer()).ok())
                    .ok_or_else(|| err(Some(op), "exponent must be a non-negative integer"))?;
                Ok(Val::scalar(l.s.pow(n as usize), self.order))
            }
            _ => unreachable!(),
        }
    }

    fn constant_of(&self, v: &Val) -> Option<ExactScalar> {
        if !v.is_scalar() {
            return None;
        }
        let c = v.s.coeff(0, 0);
        if v.s.sub(&Jet2::constant(c.clone(), self.order)).is_zero() {
            Some(c)
        } else {
            None
        }
    }
}

fn parse_value(text: &str, order: usize) -> Result<Val> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, order };
    let v = p.expr(0)?;
    if let Some(t) = p.peek() {
        return Err(err(Some(t), "unexpected trailing input"));
    }
    Ok(v)
}

/// Parses a 1-form "P*dx + Q*dy", a vector field "P*Dx + Q*Dy", or an exact
/// differential "d(P)" into a normalized foliation germ at the given working
/// order.
pub fn parse_expression(text: &str, order: usize) -> Result<FoliationGerm> {
    let v = parse_value(text, order)?;
    let Some(basis) = v.basis else {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "expression must be a 1-form (dx, dy) or a vector field (Dx, Dy)".into(),
        });
    };
    if !v.s.is_zero() {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "expression mixes a plain polynomial with differential terms".into(),
        });
    }
    match basis {
        Basis::Form => FoliationGerm::new(v.cx, v.cy),
        Basis::Field => FoliationGerm::from_vector_field(v.cx, v.cy),
    }
}

/// Parses a plain polynomial in x, y (used for map components).
pub fn parse_polynomial(text: &str, order: usize) -> Result<Jet2> {
    let v = parse_value(text, order)?;
    if !v.is_scalar() {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "expected a plain polynomial without differential symbols".into(),
        });
    }
    Ok(v.s)
}

/// Canonical printed form of a germ; re-parsing yields the identical germ.
pub fn germ_to_expression(f: &FoliationGerm) -> String {
    format!("({})*dx + ({})*dy", f.a(), f.b())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::{linear_classify, LinearClassTag};

    #[test]
    fn linear_forms_parse() {
        let f = parse_expression("x*dy - 2*y*dx", 12).unwrap();
        let c = linear_classify(&f).unwrap();
        assert_eq!(c.tag, LinearClassTag::NonReduced);
        let f = parse_expression("x*dy + y*dx", 12).unwrap();
        let c = linear_classify(&f).unwrap();
        assert_eq!(c.lambda, Some(ExactScalar::from_int(-1)));
    }

    #[test]
    fn cusp_and_resonant_candidates_parse() {
        parse_expression("2*y*dy - 3*x^2*dx", 12).unwrap();
        let f = parse_expression("x*dy - (-1/2 + x*y)*y*dx", 12).unwrap();
        assert_eq!(f.a().coeff(0, 1), ExactScalar::from_ratio(1, 2));
        assert_eq!(f.a().coeff(1, 2), ExactScalar::from_int(-1));
    }

    #[test]
    fn differential_sugar_matches_explicit_form() {
        let f = parse_expression("d(y + x^3)", 12).unwrap();
        let g = parse_expression("3*x^2*dx + dy", 12).unwrap();
        assert_eq!(f.a(), g.a());
        assert_eq!(f.b(), g.b());
    }

    #[test]
    fn vector_field_parse() {
        let f = parse_expression("x*Dx + 2*y*Dy", 12).unwrap();
        let g = FoliationGerm::from_vector_field(
            Jet2::var_x(12),
            Jet2::var_y(12).scale(&ExactScalar::from_int(2)),
        )
        .unwrap();
        assert_eq!(f.a(), g.a());
        assert_eq!(f.b(), g.b());
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            "x*dy - 2*y*dx",
            "2*y*dy - 3*x^2*dx",
            "x*dy - (-1/2 + x*y)*y*dx",
            "(1/3 + 2*i)*x^2*dx + (y - x*y^2)*dy",
            "x*Dx + (y^2 - x*y)*Dy",
        ] {
            let f = parse_expression(text, 12).unwrap();
            let printed = germ_to_expression(&f);
            let g = parse_expression(&printed, 12).unwrap();
            assert_eq!(f.a(), g.a(), "{}", printed);
            assert_eq!(f.b(), g.b(), "{}", printed);
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expression("x*dy + * y", 12) {
            Err(Error::Parse { line: 1, col: 8, .. }) => {}
            other => panic!("unexpected: {:?}", other),
        }
        match parse_expression("x*dy +\n  z*dx", 12) {
            Err(Error::Parse { line: 2, col: 3, .. }) => {}
            other => panic!("unexpected: {:?}", other),
        }
        assert!(matches!(
            parse_expression("dx*dy", 12),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_expression("x + y", 12),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_expression("x*dx / y", 12),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn zero_form_is_rejected() {
        assert!(matches!(
            parse_expression("0*dx + 0*dy", 12),
            Err(Error::ZeroForm)
        ));
    }
}
