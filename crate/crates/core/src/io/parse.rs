//! Text syntax for polynomials, 1-forms, points, lines and matrices.
//!
//! ```text
//! form   := sum-with-differentials | expr ';' expr ';' expr
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)* [['*'] ('dx'|'dy'|'dz')]
//! factor := '-' factor | atom ['^' integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are `x`, `y`, `z` or parameter names bound by the caller.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebra::linalg::Mat3;
use crate::algebra::{MultiPoly, Rational, Scalar};
use crate::error::{Error, Result};
use crate::foliation::FoliationForm;
use crate::geometry::{ProjectiveLine, ProjectivePoint};

/// Named rational parameters substituted while parsing.
pub type Params = BTreeMap<String, Rational>;

const RESERVED: [&str; 6] = ["x", "y", "z", "dx", "dy", "dz"];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Marker(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semi,
    End,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((Tok::Num(s.parse().unwrap()), pos));
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|c| c.1).collect();
            let tok = match s.as_str() {
                "dx" => Tok::Marker(0),
                "dy" => Tok::Marker(1),
                "dz" => Tok::Marker(2),
                _ => Tok::Ident(s),
            };
            out.push((tok, pos));
            continue;
        }
        return Err(syntax(pos, format!("unexpected character '{ch}'")));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    params: &'a Params,
}

type Term = (MultiPoly, Option<usize>);

impl<'a> Parser<'a> {
    fn new(text: &str, params: &'a Params) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            params,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            t => Err(syntax(self.offset(), format!("unexpected {}", describe(t)))),
        }
    }

    /// A signed sum of terms; markers are allowed only when `markers` is set.
    fn sum(&mut self, markers: bool) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negate = false;
        match self.peek() {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        loop {
            let (p, m) = self.term(markers)?;
            terms.push((if negate { -p } else { p }, m));
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok(terms)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let terms = self.sum(false)?;
        Ok(terms
            .into_iter()
            .fold(MultiPoly::zero(3), |acc, (p, _)| &acc + &p))
    }

    fn term(&mut self, markers: bool) -> Result<Term> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    if let Tok::Marker(i) = *self.peek() {
                        if !markers {
                            return Err(syntax(self.offset(), "differential not allowed here"));
                        }
                        self.bump();
                        return Ok((acc, Some(i)));
                    }
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                Tok::Slash => {
                    let at = self.offset();
                    self.bump();
                    let rhs = self.factor()?;
                    if !rhs.is_constant() || rhs.is_zero() {
                        let what = if rhs.is_zero() {
                            "division by zero"
                        } else {
                            "division by a non-constant"
                        };
                        return Err(syntax(at, what));
                    }
                    acc = acc.scale(&rhs.constant_term().inv().unwrap());
                }
                Tok::Marker(i) => {
                    let i = *i;
                    if !markers {
                        return Err(syntax(self.offset(), "differential not allowed here"));
                    }
                    self.bump();
                    return Ok((acc, Some(i)));
                }
                _ => return Ok((acc, None)),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Tok::Num(n) => {
                    let e = n
                        .to_u32()
                        .filter(|&e| e <= 1000)
                        .ok_or_else(|| syntax(at, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                t => return Err(syntax(at, format!("expected an exponent, found {}", describe(&t)))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(MultiPoly::constant(3, Scalar::from(Rational::from_integer(n)))),
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(MultiPoly::var(3, 0)),
                "y" => Ok(MultiPoly::var(3, 1)),
                "z" => Ok(MultiPoly::var(3, 2)),
                _ => match self.params.get(&name) {
                    Some(v) => Ok(MultiPoly::constant(3, Scalar::from(v.clone()))),
                    None => Err(syntax(at, format!("unknown identifier '{name}'"))),
                },
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    Tok::Marker(_) => Err(syntax(close, "differential inside parentheses")),
                    t => Err(syntax(close, format!("expected ')', found {}", describe(&t)))),
                }
            }
            t => Err(syntax(at, format!("expected an expression, found {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier '{s}'"),
        Tok::Marker(i) => format!("'{}'", ["dx", "dy", "dz"][*i]),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Semi => "';'".into(),
        Tok::End => "end of input".into(),
    }
}

fn check_params(params: &Params) -> Result<()> {
    for name in params.keys() {
        let valid = name.chars().next().map_or(false, |c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !valid || RESERVED.contains(&name.as_str()) {
            return Err(syntax(0, format!("invalid parameter name '{name}'")));
        }
    }
    Ok(())
}

/// A polynomial in `x, y, z`.
pub fn parse_poly(text: &str, params: &Params) -> Result<MultiPoly> {
    check_params(params)?;
    let mut p = Parser::new(text, params)?;
    let out = p.expr()?;
    p.expect_end()?;
    Ok(out)
}

/// The three coefficients of a form, before validation, and which
/// differentials were written explicitly.
pub fn parse_form_coeffs(text: &str, params: &Params) -> Result<([MultiPoly; 3], [bool; 3])> {
    check_params(params)?;
    let mut p = Parser::new(text, params)?;
    if p.toks.iter().any(|(t, _)| *t == Tok::Semi) {
        let mut out = Vec::new();
        for k in 0..3 {
            out.push(p.expr()?);
            if k < 2 {
                let at = p.offset();
                match p.bump() {
                    Tok::Semi => {}
                    t => return Err(syntax(at, format!("expected ';', found {}", describe(&t)))),
                }
            }
        }
        p.expect_end()?;
        let [a, b, c]: [MultiPoly; 3] = out.try_into().unwrap();
        return Ok(([a, b, c], [true; 3]));
    }
    let start = p.offset();
    let terms = p.sum(true)?;
    p.expect_end()?;
    let mut coeffs = [MultiPoly::zero(3), MultiPoly::zero(3), MultiPoly::zero(3)];
    let mut seen = [false; 3];
    for (poly, marker) in terms {
        match marker {
            Some(i) => {
                coeffs[i] = &coeffs[i] + &poly;
                seen[i] = true;
            }
            None => {
                return Err(syntax(
                    start,
                    "every term needs a differential dx, dy or dz (or use 'a; b; c')",
                ))
            }
        }
    }
    Ok((coeffs, seen))
}

/// A foliation from `a dx + b dy + c dz` or `a; b; c`.
pub fn parse_form(text: &str, params: &Params) -> Result<FoliationForm> {
    let ([a, b, c], seen) = parse_form_coeffs(text, params)?;
    FoliationForm::new(a, b, c).map_err(|e| match e {
        Error::EulerFailure { residual, .. } => {
            let missing: Vec<&str> = ["dx", "dy", "dz"]
                .iter()
                .zip(seen)
                .filter(|(_, s)| !s)
                .map(|(n, _)| *n)
                .collect();
            let note = if missing.is_empty() {
                String::new()
            } else {
                format!(" (no {} term given; taken as 0)", missing.join(", "))
            };
            Error::EulerFailure { residual, note }
        }
        other => other,
    })
}

/// Drops `#` comments so input files can carry a note.
pub fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split('#').next().unwrap())
        .collect::<Vec<_>>()
        .join("\n")
}

/// A rational number `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let p = parse_poly(text, &Params::new())?;
    if !p.is_constant() {
        return Err(syntax(0, format!("expected a rational number, found '{text}'")));
    }
    Ok(p.constant_term().as_rational().unwrap().clone())
}

/// `name=value` pairs, e.g. `lambda=2`.
pub fn parse_param(text: &str) -> Result<(String, Rational)> {
    let Some((name, value)) = text.split_once('=') else {
        return Err(syntax(0, format!("expected name=value, found '{text}'")));
    };
    let name = name.trim().to_string();
    let value = parse_rational(value.trim())?;
    let mut p = Params::new();
    p.insert(name.clone(), value.clone());
    check_params(&p)?;
    Ok((name, value))
}

fn split_numbers(text: &str, seps: &[char]) -> Result<Vec<Scalar>> {
    text.split(|c| seps.contains(&c))
        .map(|s| parse_rational(s.trim()).map(Scalar::from))
        .collect()
}

/// A line given by its equation (`x + y + z`, optionally `= 0`) or by its
/// coefficients (`1,1,1`).
pub fn parse_line(text: &str) -> Result<ProjectiveLine> {
    let body = text.trim();
    let body = body.strip_suffix("= 0").or_else(|| body.strip_suffix("=0")).unwrap_or(body);
    let body = body.trim().trim_start_matches('[').trim_end_matches(']');
    let coeffs: [Scalar; 3] = if body.contains(',') {
        let v = split_numbers(body, &[','])?;
        v.try_into()
            .map_err(|_| syntax(0, "a line needs three coefficients"))?
    } else {
        let p = parse_poly(body, &Params::new())?;
        if !p.is_homogeneous() || p.total_degree() != Some(1) {
            return Err(Error::InvalidLine(format!("'{text}' is not a linear form")));
        }
        std::array::from_fn(|i| p.coeff(&crate::algebra::Monomial::var(i, 1)))
    };
    ProjectiveLine::new(coeffs)
}

/// A point `(x:y:z)` or `x,y,z`.
pub fn parse_point(text: &str) -> Result<ProjectivePoint> {
    let body = text.trim().trim_start_matches('(').trim_end_matches(')');
    let v = split_numbers(body, &[':', ','])?;
    let coords: [Scalar; 3] = v
        .try_into()
        .map_err(|_| syntax(0, "a point needs three coordinates"))?;
    ProjectivePoint::new(coords)
}

/// A 3×3 matrix as `a,b,c; d,e,f; g,h,i` (rows).
pub fn parse_matrix(text: &str) -> Result<Mat3> {
    let rows: Vec<Vec<Scalar>> = text
        .split(';')
        .map(|r| split_numbers(r, &[',']))
        .collect::<Result<_>>()?;
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(syntax(0, "a matrix needs three rows of three entries"));
    }
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j].clone())))
}

/// Convenience for tests and examples: parse with no parameters, panicking
/// on error.
pub fn poly(text: &str) -> MultiPoly {
    parse_poly(text, &Params::new()).unwrap_or_else(|e| panic!("bad polynomial '{text}': {e}"))
}

/// Convenience for tests and examples: parse a form with no parameters,
/// panicking on error.
pub fn form(text: &str) -> FoliationForm {
    parse_form(text, &Params::new()).unwrap_or_else(|e| panic!("bad form '{text}': {e}"))
}

/// The single-parameter family `λyz dx + xz dy − (1+λ)xy dz`.
pub fn lambda_family(lambda: &Rational) -> Result<FoliationForm> {
    let mut p = Params::new();
    p.insert("lambda".into(), lambda.clone());
    parse_form("lambda*y*z dx + x*z dy - (1+lambda)*x*y dz", &p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn polynomial_syntax() {
        let p = poly("-3/2*x^2*y - z + 5*(x - x)");
        assert_eq!(p.to_string(), "-3/2*x^2*y - z");
        assert_eq!(poly("(x+y)^2").to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(poly("--x").to_string(), "x");
    }

    #[test]
    fn lambda_example_parses() {
        let f = lambda_family(&rat(2)).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.to_string(), "(2*y*z) dx + (x*z) dy + (-3*x*y) dz");
    }

    #[test]
    fn pencil_with_explicit_zero() {
        let f = form("y dx - x dy + 0 dz");
        assert_eq!(f.degree(), 0);
    }

    #[test]
    fn semicolon_form() {
        assert_eq!(form("y; -x; 0"), form("y dx - x dy"));
    }

    #[test]
    fn missing_differential_reported_with_residual() {
        match parse_form("x dx + y dy", &Params::new()) {
            Err(Error::EulerFailure { residual, note }) => {
                assert_eq!(residual, "x^2 + y^2");
                assert!(note.contains("dz"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_form("y dx - q*x dy", &Params::new()) {
            Err(Error::Syntax { position, message }) => {
                assert_eq!(position, 7);
                assert!(message.contains("'q'"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("x +", &Params::new()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x / y", &Params::new()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_form("(x dx)", &Params::new()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_form("x dx + y", &Params::new()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn inhomogeneous_rejected() {
        assert!(matches!(
            parse_form("y dx - x^2 dy", &Params::new()),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn lines_points_matrices() {
        assert_eq!(parse_line("x + y + z").unwrap(), ProjectiveLine::from_ints([1, 1, 1]).unwrap());
        assert_eq!(parse_line("2*y = 0").unwrap(), ProjectiveLine::coordinate(1));
        assert_eq!(parse_line("0,0,3").unwrap(), ProjectiveLine::coordinate(2));
        assert_eq!(parse_point("(1:0:1)").unwrap(), ProjectivePoint::from_ints([1, 0, 1]).unwrap());
        let m = parse_matrix("1,0,0; 0,0,1; 0,1,0").unwrap();
        assert_eq!(m[1][2], Scalar::one());
        assert_eq!(parse_param("lambda = 3/2").unwrap().1, Rational::new(3.into(), 2.into()));
    }
}
