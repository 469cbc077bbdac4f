//! Polynomial and divisor expression parsers.

use std::collections::BTreeMap;
use std::fmt;

use kstab_core::gitcubic::CubicForm;
use kstab_core::lattice::{DivClass, SurfaceModel};
use kstab_core::localvol::QuotientSing;
use kstab_core::valuative::PlaneCurveGerm;
use kstab_core::Rat;

pub const VARS: [char; 4] = ['x', 'y', 'z', 'w'];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

/// Polynomial syntax tree over `x, y, z, w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Num(Rat),
    Var(usize),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    /// Division, only by a nonzero constant.
    Div(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

pub type Terms = BTreeMap<[u32; 4], Rat>;

impl PolyExpr {
    pub fn expand(&self) -> Result<Terms, String> {
        Ok(match self {
            PolyExpr::Num(r) => clean(BTreeMap::from([([0; 4], r.clone())])),
            PolyExpr::Var(i) => {
                let mut e = [0; 4];
                e[*i] = 1;
                BTreeMap::from([(e, Rat::one())])
            }
            PolyExpr::Neg(a) => a.expand()?.into_iter().map(|(e, c)| (e, -c)).collect(),
            PolyExpr::Add(a, b) => add(a.expand()?, b.expand()?, false),
            PolyExpr::Sub(a, b) => add(a.expand()?, b.expand()?, true),
            PolyExpr::Mul(a, b) => mul(&a.expand()?, &b.expand()?),
            PolyExpr::Div(a, b) => {
                let d = b.expand()?;
                let c = match d.len() {
                    1 if d.contains_key(&[0; 4]) => d[&[0; 4]].clone(),
                    0 => return Err("division by zero".into()),
                    _ => return Err("division by a non-constant polynomial".into()),
                };
                let inv = c.recip().expect("nonzero constant");
                a.expand()?.into_iter().map(|(e, v)| (e, v * &inv)).collect()
            }
            PolyExpr::Pow(a, k) => {
                let base = a.expand()?;
                let mut acc = BTreeMap::from([([0; 4], Rat::one())]);
                for _ in 0..*k {
                    acc = mul(&acc, &base);
                }
                acc
            }
        })
    }
}

fn clean(mut t: Terms) -> Terms {
    t.retain(|_, c| !c.is_zero());
    t
}

fn add(mut a: Terms, b: Terms, subtract: bool) -> Terms {
    for (e, c) in b {
        let c = if subtract { -c } else { c };
        *a.entry(e).or_insert_with(Rat::zero) += c;
    }
    clean(a)
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
            *out.entry(e).or_insert_with(Rat::zero) += ca * cb;
        }
    }
    clean(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let mut it = src.char_indices().peekable();
        while let Some(&(pos, ch)) = it.peek() {
            if ch.is_whitespace() {
                it.next();
                continue;
            }
            if ch.is_ascii_digit() {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    it.next();
                }
                lx.toks.push((Tok::Int(s), pos));
                continue;
            }
            let tok = match ch {
                '+' => Tok::Plus,
                '-' | '\u{2212}' => Tok::Minus,
                '*' | '\u{00b7}' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                c => match VARS.iter().position(|&v| v == c) {
                    Some(i) => Tok::Var(i),
                    None => return Err(error_at(src, pos, format!("unexpected character '{c}'"))),
                },
            };
            lx.toks.push((tok, pos));
            it.next();
        }
        lx.toks.push((Tok::End, lx.src.len()));
        Ok(lx.toks)
    }
}

fn error_at(src: &str, pos: usize, message: String) -> SyntaxError {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    SyntaxError { line, column, message }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, msg: &str) -> Result<T, SyntaxError> {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            _ => format!("'{}'", self.src[self.pos()..].chars().next().unwrap_or(' ')),
        };
        Err(error_at(self.src, self.pos(), format!("{msg}, found {found}")))
    }

    fn expr(&mut self) -> Result<PolyExpr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    /// Products, explicit or by juxtaposition (`3xy`, `2(x+y)`).
    fn term(&mut self) -> Result<PolyExpr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = PolyExpr::Div(Box::new(lhs), Box::new(self.power()?));
                }
                Tok::Int(_) | Tok::Var(_) | Tok::LParen => {
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyExpr, SyntaxError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(PolyExpr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyExpr, SyntaxError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(s) => {
                let k: u32 = s.parse().or_else(|_| self.fail("exponent too large"))?;
                if k > 64 {
                    return self.fail("exponent above 64");
                }
                self.bump();
                Ok(PolyExpr::Pow(Box::new(base), k))
            }
            Tok::Minus => self.fail("negative exponents are not polynomial"),
            _ => self.fail("expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<PolyExpr, SyntaxError> {
        match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                Ok(PolyExpr::Num(s.parse::<Rat>().map_err(|e| error_at(self.src, self.pos(), e.to_string()))?))
            }
            Tok::Var(i) => {
                self.bump();
                Ok(PolyExpr::Var(i))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.fail("expected ')'");
                }
                self.bump();
                Ok(e)
            }
            _ => self.fail("expected a number, variable or '('"),
        }
    }
}

pub fn parse_poly(src: &str) -> Result<PolyExpr, SyntaxError> {
    let toks = Lexer::run(src)?;
    let mut p = Parser { src, toks, at: 0 };
    if *p.peek() == Tok::End {
        return p.fail("empty expression");
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("unexpected input");
    }
    Ok(e)
}

/// Parses and expands; the error carries the position for syntax errors.
pub fn poly_terms(src: &str) -> Result<Terms, String> {
    parse_poly(src).map_err(|e| e.to_string())?.expand()
}

pub fn parse_cubic(src: &str) -> Result<CubicForm, String> {
    let terms = poly_terms(src)?;
    CubicForm::new(terms.into_iter().map(|(e, c)| (e.map(|k| k as u8), c))).map_err(|e| e.to_string())
}

/// A germ in `x, y` at the origin.
pub fn parse_germ(src: &str) -> Result<PlaneCurveGerm, String> {
    let terms = poly_terms(src)?;
    if terms.keys().any(|e| e[2] != 0 || e[3] != 0) {
        return Err("a plane curve germ may only use x and y".into());
    }
    PlaneCurveGerm::new(terms.into_iter().map(|(e, c)| ((e[0], e[1]), c))).map_err(|e| e.to_string())
}

/// `x^a*y^b...` with `+`/`-` and rational coefficients, lowest first.
pub fn format_terms(t: &Terms) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in t.iter().rev().enumerate() {
        let mag = c.abs();
        out.push_str(match (k, c.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let mut f: Vec<String> = Vec::new();
        if mag != Rat::one() || e.iter().all(|&k| k == 0) {
            f.push(if mag.is_integer() { mag.to_string() } else { format!("({mag})") });
        }
        for (i, &p) in e.iter().enumerate() {
            match p {
                0 => {}
                1 => f.push(VARS[i].to_string()),
                p => f.push(format!("{}^{p}", VARS[i])),
            }
        }
        out.push_str(&f.join("*"));
    }
    out
}

/// A linear combination of basis labels, curve labels and `K`, e.g.
/// `3H - E1 - E2`, `-K - 2*L12`, `1/2 Q`. Symbols match longest first, so
/// labels may contain `-`.
pub fn parse_divisor(m: &SurfaceModel, src: &str) -> Result<DivClass, String> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty divisor expression".into());
    }
    let mut symbols: Vec<(String, DivClass)> = vec![("K".to_string(), m.canonical.clone())];
    symbols.extend(m.basis.iter().enumerate().map(|(i, b)| (b.clone(), DivClass::basis(m.rank(), i))));
    symbols.extend(m.curve_labels().into_iter().filter_map(|l| m.curve(&l).map(|c| (l, c))));
    symbols.sort_by_key(|(l, _)| std::cmp::Reverse(l.len()));

    let mut acc = DivClass::zero(m.rank());
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = Rat::one();
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            sign = -sign;
        } else if !first {
            return Err(format!("expected '+' or '-' before '{rest}'"));
        }
        first = false;
        let split = rest.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(rest.len());
        let (num, tail) = rest.split_at(split);
        let tail = tail.strip_prefix('*').unwrap_or(tail);
        let coeff: Rat = if num.is_empty() { Rat::one() } else { parse_rat(num)? };
        let Some((label, class)) = symbols.iter().find(|(l, _)| tail.starts_with(l.as_str())) else {
            let word: String = tail.chars().take_while(|c| *c != '+' && *c != '-').collect();
            return Err(if word.is_empty() {
                format!("term '{num}' has no divisor")
            } else {
                format!("unknown divisor '{word}' on {}", m.name)
            });
        };
        rest = &tail[label.len()..];
        acc = acc.add_scaled(class, &(sign * coeff));
    }
    Ok(acc)
}

/// `smooth`, `A3`, `1/4(1,1)`, or `1/n(a,b)` in general.
pub fn parse_sing(src: &str) -> Result<QuotientSing, String> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "smooth" {
        return Ok(QuotientSing::smooth());
    }
    if let Some(k) = s.strip_prefix('A') {
        let k: u32 = k.parse().map_err(|_| format!("bad A_k type '{src}'"))?;
        if k == 0 {
            return Err("A0 is not a singularity; use 'smooth'".into());
        }
        return Ok(QuotientSing::a_type(k));
    }
    let bad = || format!("expected 1/n(a,b), A<k> or smooth, got '{src}'");
    let body = s.strip_prefix("1/").ok_or_else(bad)?;
    let (n, ws) = body.split_once('(').ok_or_else(bad)?;
    let ws = ws.strip_suffix(')').ok_or_else(bad)?;
    let (a, b) = ws.split_once(',').ok_or_else(bad)?;
    let p = |t: &str| t.parse::<u32>().map_err(|_| bad());
    QuotientSing::new(p(n)?, p(a)?, p(b)?).map_err(|e| e.to_string())
}

/// Comma-separated list of items parsed by `f`.
pub fn parse_list<T>(src: &str, f: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    src.split(',').map(|t| f(t.trim())).collect()
}

pub fn parse_rat(src: &str) -> Result<Rat, String> {
    src.trim().parse::<Rat>().map_err(|e| format!("'{src}': {e}"))
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_matrix(src: &str) -> Result<Vec<Vec<Rat>>, String> {
    src.split(';').map(|row| parse_list(row, parse_rat)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use kstab_core::exactnum::q;

    #[test]
    fn cusp() {
        let t = poly_terms("y^2 - x^3").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[&[0, 2, 0, 0]], Rat::one());
        assert_eq!(t[&[3, 0, 0, 0]], Rat::int(-1));
    }

    #[test]
    fn juxtaposition_and_rationals() {
        assert_eq!(poly_terms("3xy").unwrap(), poly_terms("3*x*y").unwrap());
        assert_eq!(poly_terms("x/2 + x/2").unwrap(), poly_terms("x").unwrap());
        assert_eq!(poly_terms("(x+y)^2").unwrap(), poly_terms("x^2 + 2xy + y^2").unwrap());
        assert_eq!(poly_terms("x - x").unwrap(), Terms::new());
        assert_eq!(poly_terms("1/3 x").unwrap()[&[1, 0, 0, 0]], q(1, 3));
    }

    #[test]
    fn errors_are_positioned() {
        let e = parse_poly("y^2 - x^").unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
        let e = parse_poly("x +\n  * y").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse_poly("x^-1").is_err());
        assert!(parse_poly("x + q").is_err());
        assert!(poly_terms("1/x").is_err());
        assert!(parse_poly("(x + y").is_err());
        assert!(parse_poly("").is_err());
    }

    #[test]
    fn formatting_round_trips() {
        for s in ["y^2 - x^3", "x*y*z - w^3", "x^3 + y^3 + z^3 + w^3", "-(1/2)*x + 3"] {
            let t = poly_terms(s).unwrap();
            assert_eq!(poly_terms(&format_terms(&t)).unwrap(), t, "{s}");
        }
    }

    #[test]
    fn divisors() {
        let dp7 = kstab_core::lattice::catalog("dP7").unwrap();
        assert_eq!(parse_divisor(&dp7, "3H - E1 - E2").unwrap(), dp7.anticanonical());
        assert_eq!(parse_divisor(&dp7, "-K").unwrap(), dp7.anticanonical());
        assert_eq!(parse_divisor(&dp7, "anticanonical-curve - 2*L12").unwrap(), DivClass::from_ints(&[1, 1, 1]));
        assert_eq!(parse_divisor(&dp7, "1/2 H").unwrap(), DivClass::new(vec![q(1, 2), Rat::zero(), Rat::zero()]));
        assert!(parse_divisor(&dp7, "3H + G").is_err());
        assert!(parse_divisor(&dp7, "3").is_err());
        assert!(parse_divisor(&dp7, "").is_err());
    }

    #[test]
    fn singularities() {
        assert!(parse_sing("A2").unwrap().equivalent(&QuotientSing::a_type(2)));
        assert_eq!(parse_sing("1/3(1,1)").unwrap(), QuotientSing::cone(3));
        assert!(parse_sing("1/4(2,2)").is_err());
        assert!(parse_sing("B2").is_err());
    }
}
