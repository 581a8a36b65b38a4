//! Ring, module and element expressions with a positioned recursive-descent
//! parser.
//!
//! ```text
//! ring   := "Z/" INT | "GF(" INT ")" | "GF(" INT ")[x]/(" poly ")"
//!         | "triv(" ring "," module ")" | "prod(" ring ("," ring)+ ")"
//!         | "series(" INT "," INT ")"
//! module := "quot(" ideal ")" | "free(" INT ")" | "pres(" matrix ")"
//! ideal  := "(" elem ("," elem)* ")"
//! matrix := "[" row ("," row)* "]"      row := "[" elem ("," elem)* "]"
//! elem   := poly | "[" INT ("," INT)* "]" | "(" elem ("," elem)* ")"
//! poly   := mono ("+" mono)*            mono := INT | [INT "*"] "x" ["^" INT]
//! ```

use std::fmt;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use trivext::arith::poly;
use trivext::module::{ModuleSpec, PresentationMatrix};
use trivext::ring::{ElemExpr, ModuleDescriptor, Ring, RingDescriptor};
use trivext::Elem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingExpr {
    ZMod { n: u64 },
    Gf { p: u64 },
    /// Modulus coefficients ascending.
    GfPoly { p: u64, modulus: Vec<u64> },
    Triv { base: Box<RingExpr>, module: ModuleExpr },
    Prod { factors: Vec<RingExpr> },
    Series { p: u64, precision: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleExpr {
    Quot {
        #[serde(serialize_with = "elems_as_text")]
        ideal: Vec<ElemExpr>,
    },
    Free {
        rank: usize,
    },
    /// Rows are generators, columns are relations.
    Pres {
        #[serde(serialize_with = "matrix_as_text")]
        matrix: Vec<Vec<ElemExpr>>,
    },
}

fn elems_as_text<S: Serializer>(elems: &[ElemExpr], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(elems.len()))?;
    for e in elems {
        seq.serialize_element(&e.to_string())?;
    }
    seq.end()
}

fn matrix_as_text<S: Serializer>(rows: &[Vec<ElemExpr>], s: S) -> Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(ElemExpr::to_string).collect()).collect();
    text.serialize(s)
}

impl RingExpr {
    pub fn to_descriptor(&self) -> RingDescriptor {
        match self {
            RingExpr::ZMod { n } => RingDescriptor::ZMod(*n),
            RingExpr::Gf { p } => RingDescriptor::PrimeField(*p),
            RingExpr::GfPoly { p, modulus } => RingDescriptor::PolyQuotient { p: *p, modulus: modulus.clone() },
            RingExpr::Triv { base, module } => {
                RingDescriptor::TrivialExt { base: Box::new(base.to_descriptor()), module: module.to_descriptor() }
            }
            RingExpr::Prod { factors } => RingDescriptor::Product(factors.iter().map(RingExpr::to_descriptor).collect()),
            RingExpr::Series { p, precision } => RingDescriptor::SeriesTrunc { p: *p, precision: *precision },
        }
    }
}

impl ModuleExpr {
    pub fn to_descriptor(&self) -> ModuleDescriptor {
        match self {
            ModuleExpr::Quot { ideal } => ModuleDescriptor::Quot(ideal.iter().map(ElemExpr::to_encoding_hint).collect()),
            ModuleExpr::Free { rank } => ModuleDescriptor::Free(*rank),
            ModuleExpr::Pres { matrix } => {
                ModuleDescriptor::Pres(matrix.iter().map(|r| r.iter().map(ElemExpr::to_encoding_hint).collect()).collect())
            }
        }
    }

    /// The module over `ring` itself: `R/I`, `R^n`, or the cokernel.
    pub fn to_module(&self, ring: &Ring) -> trivext::Result<ModuleSpec> {
        Ok(match self {
            ModuleExpr::Quot { ideal } => ModuleSpec::cyclic_quotient(ring, &elements(ring, ideal)?),
            ModuleExpr::Free { rank } => ModuleSpec::free(ring, *rank),
            ModuleExpr::Pres { matrix } => {
                let rows: Vec<Vec<Elem>> = matrix.iter().map(|r| elements(ring, r)).collect::<trivext::Result<_>>()?;
                ModuleSpec::presented(PresentationMatrix::from_rows(ring, &rows)?)
            }
        })
    }
}

pub fn elements(ring: &Ring, exprs: &[ElemExpr]) -> trivext::Result<Vec<Elem>> {
    exprs.iter().map(|e| ring.element(e)).collect()
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{it}")?;
    }
    Ok(())
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::ZMod { n } => write!(f, "Z/{n}"),
            RingExpr::Gf { p } => write!(f, "GF({p})"),
            RingExpr::GfPoly { p, modulus } => write!(f, "GF({p})[x]/({})", poly::render(modulus)),
            RingExpr::Triv { base, module } => write!(f, "triv({base}, {module})"),
            RingExpr::Prod { factors } => {
                f.write_str("prod(")?;
                write_list(f, factors, ", ")?;
                f.write_str(")")
            }
            RingExpr::Series { p, precision } => write!(f, "series({p}, {precision})"),
        }
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Quot { ideal } => {
                f.write_str("quot(")?;
                write_ideal(f, ideal)?;
                f.write_str(")")
            }
            ModuleExpr::Free { rank } => write!(f, "free({rank})"),
            ModuleExpr::Pres { matrix } => {
                f.write_str("pres([")?;
                for (i, row) in matrix.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("[")?;
                    write_list(f, row, ", ")?;
                    f.write_str("]")?;
                }
                f.write_str("])")
            }
        }
    }
}

fn write_ideal(f: &mut fmt::Formatter<'_>, ideal: &[ElemExpr]) -> fmt::Result {
    f.write_str("(")?;
    write_list(f, ideal, ", ")?;
    f.write_str(")")
}

/// Renders an ideal the way [`parse_ideal`] reads it.
pub fn render_ideal(ideal: &[ElemExpr]) -> String {
    struct Ideal<'a>(&'a [ElemExpr]);
    impl fmt::Display for Ideal<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_ideal(f, self.0)
        }
    }
    Ideal(ideal).to_string()
}

/// 1-based position of the offending input and the tokens that would have
/// been accepted there.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at line {line}, column {col}: expected {}", .expected.join(" or "))]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
}

pub fn parse_ring_expr(text: &str) -> Result<RingExpr, SyntaxError> {
    Parser::new(text).complete(Parser::ring)
}

pub fn parse_module_expr(text: &str) -> Result<ModuleExpr, SyntaxError> {
    Parser::new(text).complete(Parser::module)
}

pub fn parse_ideal(text: &str) -> Result<Vec<ElemExpr>, SyntaxError> {
    Parser::new(text).complete(Parser::ideal)
}

pub fn parse_elem(text: &str) -> Result<ElemExpr, SyntaxError> {
    Parser::new(text).complete(Parser::elem)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn complete<T>(mut self, rule: fn(&mut Self) -> PResult<T>) -> PResult<T> {
        let out = rule(&mut self)?;
        self.ws();
        if self.pos < self.src.len() {
            return Err(self.error(&["end of input"]));
        }
        Ok(out)
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        SyntaxError { line, col, expected: expected.iter().map(|s| format!("{s:?}")).collect() }
    }

    fn ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.ws();
        if self.src[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> PResult<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(&[lit]))
        }
    }

    fn int(&mut self) -> PResult<u64> {
        self.ws();
        let digits = self.src[self.pos..].bytes().take_while(u8::is_ascii_digit).count();
        let value = self.src[self.pos..self.pos + digits].parse().map_err(|_| self.error(&["integer"]))?;
        self.pos += digits;
        Ok(value)
    }

    fn ring(&mut self) -> PResult<RingExpr> {
        if self.eat("Z/") {
            return Ok(RingExpr::ZMod { n: self.int()? });
        }
        if self.eat("GF(") {
            let p = self.int()?;
            self.expect(")")?;
            if self.eat("[x]/(") {
                let modulus = self.poly()?;
                self.expect(")")?;
                return Ok(RingExpr::GfPoly { p, modulus });
            }
            return Ok(RingExpr::Gf { p });
        }
        if self.eat("triv(") {
            let base = self.ring()?;
            self.expect(",")?;
            let module = self.module()?;
            self.expect(")")?;
            return Ok(RingExpr::Triv { base: Box::new(base), module });
        }
        if self.eat("prod(") {
            let mut factors = vec![self.ring()?];
            self.expect(",")?;
            factors.push(self.ring()?);
            while self.eat(",") {
                factors.push(self.ring()?);
            }
            if !self.eat(")") {
                return Err(self.error(&[",", ")"]));
            }
            return Ok(RingExpr::Prod { factors });
        }
        if self.eat("series(") {
            let p = self.int()?;
            self.expect(",")?;
            let precision = self.int()? as usize;
            self.expect(")")?;
            return Ok(RingExpr::Series { p, precision });
        }
        Err(self.error(&["Z/", "GF(", "triv(", "prod(", "series("]))
    }

    fn module(&mut self) -> PResult<ModuleExpr> {
        if self.eat("quot(") {
            let ideal = self.ideal()?;
            self.expect(")")?;
            return Ok(ModuleExpr::Quot { ideal });
        }
        if self.eat("free(") {
            let rank = self.int()? as usize;
            self.expect(")")?;
            return Ok(ModuleExpr::Free { rank });
        }
        if self.eat("pres(") {
            self.expect("[")?;
            let mut matrix = vec![self.row()?];
            while self.eat(",") {
                matrix.push(self.row()?);
            }
            if !self.eat("]") {
                return Err(self.error(&[",", "]"]));
            }
            self.expect(")")?;
            return Ok(ModuleExpr::Pres { matrix });
        }
        Err(self.error(&["quot(", "free(", "pres("]))
    }

    fn row(&mut self) -> PResult<Vec<ElemExpr>> {
        self.expect("[")?;
        let row = self.list("]")?;
        Ok(row)
    }

    fn ideal(&mut self) -> PResult<Vec<ElemExpr>> {
        self.expect("(")?;
        self.list(")")
    }

    /// `elem ("," elem)* close`
    fn list(&mut self, close: &str) -> PResult<Vec<ElemExpr>> {
        let mut items = vec![self.elem()?];
        while self.eat(",") {
            items.push(self.elem()?);
        }
        if !self.eat(close) {
            return Err(self.error(&[",", close]));
        }
        Ok(items)
    }

    fn elem(&mut self) -> PResult<ElemExpr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let mut items = self.list(")")?;
                Ok(if items.len() == 1 { items.pop().unwrap() } else { ElemExpr::Tuple(items) })
            }
            Some('[') => {
                self.pos += 1;
                let mut coeffs = vec![self.int()?];
                while self.eat(",") {
                    coeffs.push(self.int()?);
                }
                if !self.eat("]") {
                    return Err(self.error(&[",", "]"]));
                }
                Ok(ElemExpr::Poly(coeffs))
            }
            _ => {
                let start = self.pos;
                let coeffs = self.poly()?;
                let has_x = self.src[start..self.pos].contains('x');
                Ok(if !has_x && coeffs.len() == 1 { ElemExpr::Int(coeffs[0]) } else { ElemExpr::Poly(coeffs) })
            }
        }
    }

    fn poly(&mut self) -> PResult<Vec<u64>> {
        let mut coeffs: Vec<u64> = Vec::new();
        loop {
            let (c, k) = self.monomial()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] += c;
            if !self.eat("+") {
                return Ok(coeffs);
            }
        }
    }

    fn monomial(&mut self) -> PResult<(u64, usize)> {
        let c = match self.peek() {
            Some('x') => 1,
            Some(d) if d.is_ascii_digit() => {
                let c = self.int()?;
                if !self.eat("*") {
                    return Ok((c, 0));
                }
                c
            }
            _ => return Err(self.error(&["integer", "x"])),
        };
        self.expect("x")?;
        let k = if self.eat("^") { self.int()? as usize } else { 1 };
        Ok((c, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_forms() {
        let r = parse_ring_expr("triv(Z/4, quot((2)))").unwrap();
        assert_eq!(
            r,
            RingExpr::Triv { base: Box::new(RingExpr::ZMod { n: 4 }), module: ModuleExpr::Quot { ideal: vec![ElemExpr::Int(2)] } }
        );
        assert_eq!(
            r.to_descriptor(),
            RingDescriptor::TrivialExt {
                base: Box::new(RingDescriptor::ZMod(4)),
                module: ModuleDescriptor::Quot(vec![trivext::Encoding::Int(2)])
            }
        );
        let p = parse_ring_expr("prod(Z/4, GF(2))").unwrap();
        assert!(matches!(p, RingExpr::Prod { ref factors } if factors.len() == 2));
        assert_eq!(parse_ring_expr("series(2,8)").unwrap(), RingExpr::Series { p: 2, precision: 8 });
        assert_eq!(parse_ring_expr("GF(2)[x]/(x^4)").unwrap(), RingExpr::GfPoly { p: 2, modulus: vec![0, 0, 0, 0, 1] });
        assert_eq!(parse_ring_expr(" GF(3)[x]/(x^2 + 2*x + 1) ").unwrap().to_string(), "GF(3)[x]/(x^2+2*x+1)");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_ring_expr("triv(Z/4").unwrap_err();
        assert_eq!((e.line, e.col), (1, 9));
        assert_eq!(e.expected, vec!["\",\""]);
        let e = parse_ring_expr("prod(Z/4)").unwrap_err();
        assert_eq!((e.line, e.col, e.expected.len()), (1, 9, 1));
        let e = parse_ring_expr("triv(Z/4,\n  quot(2))").unwrap_err();
        assert_eq!((e.line, e.col), (2, 8));
        let e = parse_ring_expr("Q/4").unwrap_err();
        assert_eq!((e.line, e.col, e.expected.len()), (1, 1, 5));
        let e = parse_ring_expr("Z/4 junk").unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        assert_eq!(e.to_string(), "syntax error at line 1, column 5: expected \"end of input\"");
    }

    #[test]
    fn modules_and_ideals() {
        let m = parse_module_expr("pres([[(0,1)]])").unwrap();
        assert_eq!(m, ModuleExpr::Pres { matrix: vec![vec![ElemExpr::Tuple(vec![ElemExpr::Int(0), ElemExpr::Int(1)])]] });
        assert_eq!(m.to_string(), "pres([[(0,1)]])");
        assert_eq!(parse_ideal("(x, 2*x^2+1)").unwrap(), vec![ElemExpr::Poly(vec![0, 1]), ElemExpr::Poly(vec![1, 0, 2])]);
        assert_eq!(parse_elem("[1,0,1]").unwrap(), ElemExpr::Poly(vec![1, 0, 1]));
        assert_eq!(parse_elem("((2))").unwrap(), ElemExpr::Int(2));
    }

    #[test]
    fn modules_over_rings() {
        let r = trivext::construct_ring(&parse_ring_expr("triv(Z/4, quot((2)))").unwrap().to_descriptor()).unwrap();
        let m = parse_module_expr("pres([[(0,1)]])").unwrap().to_module(&r).unwrap();
        assert_eq!(m.card().unwrap(), 4);
        let q = parse_module_expr("quot(((2,0),(0,1)))").unwrap().to_module(&r).unwrap();
        assert_eq!(q.card().unwrap(), 2);
        assert!(parse_module_expr("quot(((1,1,1)))").unwrap().to_module(&r).is_err());
    }
}
