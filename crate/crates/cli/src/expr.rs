//! Sheaf expression language.
//!
//! ```text
//! expr    := ext | sum
//! ext     := "ext" "(" sum ";" sum ")" twist*
//! sum     := term ("+" term)*
//! term    := [int "*"] atom twist*
//! atom    := "O" "(" divisor ")" | "O" "(" int "," int ")"
//!          | "Omega" "(" divisor ")" | "Omega" "(" int "," int ")" | "L"
//! divisor := [sign] dterm (sign dterm)*
//! dterm   := int ["*"] ("F" | "L" | "H") | ("F" | "L" | "H") | int
//! twist   := "(" [sign] int ")"
//! ```
//!
//! A bare integer inside a divisor means that many copies of `H = F + L`.
//! Twists are applied while parsing, so the tree holds twist-free blocks.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use segre_acm_core::{BuildingBlock, DivisorClass, ExtensionSheaf, FormalSheaf, Sheaf};
use thiserror::Error;

/// `mult` copies of `block`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mult: BigInt,
    pub block: BuildingBlock,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SheafExpr {
    Sum(Vec<Term>),
    Ext { sub: Vec<Term>, quot: Vec<Term> },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {}, found {}", list(.expected), .found.as_deref().unwrap_or("end of input"))]
pub struct ParseError {
    pub offset: usize,
    /// Sorted and deduplicated.
    pub expected: Vec<String>,
    pub found: Option<String>,
}

fn list(items: &[String]) -> String {
    match items {
        [one] => one.clone(),
        _ => format!("one of {}", items.join(", ")),
    }
}

fn formal(terms: &[Term]) -> FormalSheaf {
    let pairs = terms.iter().map(|t| (t.block, t.mult.clone())).collect();
    FormalSheaf::new(pairs).expect("parser only admits positive multiplicities")
}

impl SheafExpr {
    pub fn to_sheaf(&self) -> Sheaf {
        match self {
            SheafExpr::Sum(terms) => Sheaf::Formal(formal(terms)),
            SheafExpr::Ext { sub, quot } => {
                Sheaf::Extension(ExtensionSheaf::new(formal(sub), formal(quot)))
            }
        }
    }

    /// The summands when this is a direct sum.
    pub fn as_sum(&self) -> Option<&[Term]> {
        match self {
            SheafExpr::Sum(terms) => Some(terms),
            SheafExpr::Ext { .. } => None,
        }
    }
}

pub fn parse(input: &str) -> Result<SheafExpr, ParseError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.ws();
    if p.pos < p.src.len() {
        return Err(p.fail(&["`+`", "`(`", "end of input"]));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn fail(&mut self, expected: &[&str]) -> ParseError {
        self.ws();
        let mut expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        expected.sort();
        expected.dedup();
        let found = std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|rest| rest.chars().next())
            .map(|c| format!("`{c}`"));
        ParseError {
            offset: self.pos,
            expected,
            found,
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, label: &str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.fail(&[label]))
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.ws();
        let start = self.pos;
        let len = self.src[start..]
            .iter()
            .take_while(|b| b.is_ascii_alphabetic())
            .count();
        if len == 0 {
            return None;
        }
        let src: &'a [u8] = self.src;
        let word = std::str::from_utf8(&src[start..start + len]).expect("ascii");
        Some((start, word))
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.ws();
        let len = self.src[self.pos..]
            .iter()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if len == 0 {
            return None;
        }
        let src: &'a [u8] = self.src;
        let s = std::str::from_utf8(&src[self.pos..self.pos + len]).expect("ascii");
        self.pos += len;
        Some(s)
    }

    fn small(&mut self, start: usize, digits: &str) -> Result<i64, ParseError> {
        digits.parse::<i32>().map(i64::from).map_err(|_| {
            self.pos = start;
            self.fail(&["integer below 2^31"])
        })
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.ws();
        let start = self.pos;
        let Some(d) = self.digits() else {
            return Err(self.fail(&["integer"]));
        };
        let v = self.small(start, d)?;
        Ok(if neg { -v } else { v })
    }

    fn twists(&mut self) -> Result<i64, ParseError> {
        let mut total = 0i64;
        while self.eat(b'(') {
            let t = self.signed_int()?;
            self.expect(b')', "`)`")?;
            total = total
                .checked_add(t)
                .ok_or_else(|| self.fail(&["smaller twist"]))?;
        }
        Ok(total)
    }

    fn expr(&mut self) -> Result<SheafExpr, ParseError> {
        if let Some((start, "ext")) = self.ident() {
            self.pos = start + 3;
            self.expect(b'(', "`(`")?;
            let sub = self.sum()?;
            self.expect(b';', "`;`")?;
            let quot = self.sum()?;
            self.expect(b')', "`)`")?;
            let t = self.twists()?;
            let shift = |terms: Vec<Term>| twist_terms(terms, t);
            return Ok(SheafExpr::Ext {
                sub: shift(sub),
                quot: shift(quot),
            });
        }
        Ok(SheafExpr::Sum(self.sum()?))
    }

    fn sum(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.ws();
        let start = self.pos;
        let mult = match self.digits() {
            Some(d) => {
                let m: BigInt = d.parse().expect("digits");
                if m.is_zero() {
                    self.pos = start;
                    return Err(self.fail(&["positive multiplicity"]));
                }
                self.expect(b'*', "`*`")?;
                m
            }
            None => BigInt::one(),
        };
        let block = self.atom()?;
        let t = self.twists()?;
        Ok(Term {
            mult,
            block: block.twist(t),
        })
    }

    fn atom(&mut self) -> Result<BuildingBlock, ParseError> {
        const ATOMS: [&str; 3] = ["`O`", "`Omega`", "`L`"];
        let Some((start, word)) = self.ident() else {
            return Err(self.fail(&ATOMS));
        };
        let omega = match word {
            "O" => false,
            "Omega" => true,
            "L" => {
                self.pos = start + 1;
                return Ok(BuildingBlock::LineBundle(DivisorClass::new(1, -1)));
            }
            _ => return Err(self.fail(&ATOMS)),
        };
        self.pos = start + word.len();
        self.expect(b'(', "`(`")?;
        let d = self.divisor()?;
        self.expect(b')', "`)`")?;
        Ok(if omega {
            BuildingBlock::OmegaPi(d)
        } else {
            BuildingBlock::LineBundle(d)
        })
    }

    /// A divisor, or the pair form `a,b` when the first part is a bare integer.
    fn divisor(&mut self) -> Result<DivisorClass, ParseError> {
        const START: [&str; 5] = ["integer", "`-`", "`F`", "`L`", "`H`"];
        let (mut f, mut l) = (0i64, 0i64);
        let mut first = true;
        let mut bare_int = None;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            self.ws();
            let start = self.pos;
            let coeff = match self.digits() {
                Some(d) => Some(self.small(start, d)?),
                None => None,
            };
            let star = coeff.is_some() && self.eat(b'*');
            let letter = match self.ident() {
                Some((at, w @ ("F" | "L" | "H"))) => {
                    self.pos = at + 1;
                    Some(w.as_bytes()[0])
                }
                Some(_) => return Err(self.fail(&START[2..])),
                None => None,
            };
            let (df, dl) = match (coeff, letter) {
                (None, None) => return Err(self.fail(&START[..])),
                (Some(_), None) if star => return Err(self.fail(&START[2..])),
                (c, Some(b'F')) => (c.unwrap_or(1), 0),
                (c, Some(b'L')) => (0, c.unwrap_or(1)),
                (c, Some(_)) => (c.unwrap_or(1), c.unwrap_or(1)),
                (Some(c), None) => (c, c),
            };
            let sign = if neg { -1 } else { 1 };
            if first && letter.is_none() {
                bare_int = Some(sign * coeff.expect("checked"));
            }
            if !first {
                bare_int = None;
            }
            f += sign * df;
            l += sign * dl;
            first = false;
        }
        if let Some(a) = bare_int {
            if self.eat(b',') {
                let b = self.signed_int()?;
                return Ok(DivisorClass::new(a, b));
            }
        }
        Ok(DivisorClass::new(f, l))
    }
}

fn twist_terms(terms: Vec<Term>, t: i64) -> Vec<Term> {
    terms
        .into_iter()
        .map(|term| Term {
            block: term.block.twist(t),
            ..term
        })
        .collect()
}

/// `aF+bL` with unit coefficients elided, `0` for the zero class.
pub fn format_divisor(d: DivisorClass) -> String {
    fn part(c: i64, letter: char, lead: bool) -> String {
        let sign = if c < 0 {
            "-"
        } else if lead {
            ""
        } else {
            "+"
        };
        match c.unsigned_abs() {
            1 => format!("{sign}{letter}"),
            n => format!("{sign}{n}{letter}"),
        }
    }
    match (d.f, d.l) {
        (0, 0) => "0".into(),
        (f, 0) => part(f, 'F', true),
        (0, l) => part(l, 'L', true),
        (f, l) => format!("{}{}", part(f, 'F', true), part(l, 'L', false)),
    }
}

pub fn format_block(b: &BuildingBlock) -> String {
    match b {
        BuildingBlock::LineBundle(d) => format!("O({})", format_divisor(*d)),
        BuildingBlock::OmegaPi(d) => format!("Omega({})", format_divisor(*d)),
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, terms: &[Term]) -> fmt::Result {
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        if !t.mult.is_one() {
            debug_assert!(t.mult.is_positive());
            write!(f, "{}*", t.mult)?;
        }
        f.write_str(&format_block(&t.block))?;
    }
    Ok(())
}

impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafExpr::Sum(terms) => write_sum(f, terms),
            SheafExpr::Ext { sub, quot } => {
                f.write_str("ext(")?;
                write_sum(f, sub)?;
                f.write_str("; ")?;
                write_sum(f, quot)?;
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(a: i64, b: i64) -> BuildingBlock {
        BuildingBlock::LineBundle(DivisorClass::new(a, b))
    }

    fn single(e: &SheafExpr) -> BuildingBlock {
        match e {
            SheafExpr::Sum(t) if t.len() == 1 && t[0].mult.is_one() => t[0].block,
            _ => panic!("not a single block: {e:?}"),
        }
    }

    #[test]
    fn atoms() {
        assert_eq!(single(&parse("O(-F)").unwrap()), line(-1, 0));
        assert_eq!(single(&parse("O(2,-3)").unwrap()), line(2, -3));
        assert_eq!(single(&parse("O(-2)").unwrap()), line(-2, -2));
        assert_eq!(single(&parse("L").unwrap()), line(1, -1));
        assert_eq!(single(&parse("O(F-L)").unwrap()), line(1, -1));
        assert_eq!(single(&parse("O(2F+3L)").unwrap()), line(2, 3));
        assert_eq!(single(&parse("O(H-F)").unwrap()), line(0, 1));
        assert_eq!(single(&parse("O(0)").unwrap()), line(0, 0));
        assert_eq!(single(&parse("O(1+F)").unwrap()), line(2, 1));
    }

    #[test]
    fn omega_twist() {
        let b = single(&parse("Omega(L)(1)").unwrap());
        assert_eq!(b, BuildingBlock::OmegaPi(DivisorClass::new(1, 2)));
    }

    #[test]
    fn extension() {
        let e = parse("ext(2*O(-F); 5*O(F-L))").unwrap();
        let SheafExpr::Ext { sub, quot } = &e else {
            panic!("expected ext");
        };
        assert_eq!(sub[0].mult, BigInt::from(2));
        assert_eq!(quot[0].mult, BigInt::from(5));
        assert_eq!(e.to_sheaf(), Sheaf::from(ExtensionSheaf::ulrich(2, 5)));
    }

    #[test]
    fn ext_twist_applies_to_both_sides() {
        let e = parse("ext(O(-F);L)(-1)").unwrap();
        assert_eq!(e, parse("ext(O(-F-1);O(F-L-1))").unwrap());
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            parse(" ext ( 2 * O ( - F ) ; 5*O(F - L) ) ").unwrap(),
            parse("ext(2*O(-F);5*O(F-L))").unwrap()
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse("O(-F) + ").unwrap_err();
        assert_eq!(e.offset, 8);
        assert!(e.expected.contains(&"`O`".to_string()));
        let e = parse("0*O(F)").unwrap_err();
        assert_eq!(e.offset, 0);
        let e = parse("O(F").unwrap_err();
        assert_eq!((e.offset, e.found.clone()), (3, None));
        let e = parse("Q").unwrap_err();
        assert_eq!(e.found.as_deref(), Some("`Q`"));
        assert!(parse("").is_err());
        assert!(parse("O(F)x").is_err());
        assert!(parse("O(99999999999999999999)").is_err());
        assert!(parse("O(2*)").is_err());
    }

    #[test]
    fn printing() {
        let e = parse("2*O(-F) + Omega(L) + L").unwrap();
        assert_eq!(e.to_string(), "2*O(-F) + Omega(L) + O(F-L)");
        assert_eq!(parse("O(0,0)").unwrap().to_string(), "O(0)");
    }
}
