use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{is_prime, poly};
use crate::error::{Error, Result};

/// Structural description of a commutative ring. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingDescriptor {
    ZMod(u64),
    PrimeField(u64),
    /// GF(p)[x]/(modulus); `modulus` is monic, coefficients ascending.
    PolyQuotient { p: u64, modulus: Vec<u64> },
    Product(Vec<RingDescriptor>),
    TrivialExt { base: Box<RingDescriptor>, module: ModuleDescriptor },
    /// GF(p)[[x]] truncated at x^precision.
    SeriesTrunc { p: u64, precision: usize },
    /// The ring `e·R` for a primitive idempotent `e` of the ambient ring.
    /// Produced by local-factor decomposition when no structural factor exists.
    Corner { ambient: Box<RingDescriptor>, idempotent: Encoding },
}

/// A finitely presented module over the base ring of a trivial extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleDescriptor {
    /// The cyclic module A/I, I generated by the listed elements.
    Quot(Vec<Encoding>),
    Free(usize),
    /// Cokernel of the matrix; rows are generators, columns are relations.
    Pres(Vec<Vec<Encoding>>),
}

impl ModuleDescriptor {
    pub fn rank(&self) -> usize {
        match self {
            ModuleDescriptor::Quot(_) => 1,
            ModuleDescriptor::Free(n) => *n,
            ModuleDescriptor::Pres(rows) => rows.len(),
        }
    }
}

impl RingDescriptor {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDescriptor(msg));
        match self {
            RingDescriptor::ZMod(n) if *n < 2 => bad(format!("Z/{n} needs n >= 2")),
            RingDescriptor::ZMod(_) => Ok(()),
            RingDescriptor::PrimeField(p) if !is_prime(*p) => bad(format!("GF({p}) needs a prime")),
            RingDescriptor::PrimeField(_) => Ok(()),
            RingDescriptor::PolyQuotient { p, modulus } => {
                if !is_prime(*p) {
                    return bad(format!("polynomial base GF({p}) needs a prime"));
                }
                if modulus.iter().any(|c| c >= p) {
                    return bad("modulus coefficients must be reduced mod p".into());
                }
                match poly::degree(modulus) {
                    None | Some(0) => bad("modulus must be nonconstant".into()),
                    Some(d) if modulus[d] != 1 || modulus.len() != d + 1 => {
                        bad("modulus must be monic".into())
                    }
                    Some(_) => Ok(()),
                }
            }
            RingDescriptor::Product(fs) if fs.is_empty() => bad("empty product".into()),
            RingDescriptor::Product(fs) => fs.iter().try_for_each(|f| f.validate()),
            RingDescriptor::TrivialExt { base, module } => {
                base.validate()?;
                if let ModuleDescriptor::Pres(rows) = module {
                    let width = rows.first().map_or(0, |r| r.len());
                    if rows.iter().any(|r| r.len() != width) {
                        return bad("ragged presentation matrix".into());
                    }
                }
                Ok(())
            }
            RingDescriptor::SeriesTrunc { p, .. } if !is_prime(*p) => {
                bad(format!("series base GF({p}) needs a prime"))
            }
            RingDescriptor::SeriesTrunc { precision, .. } if *precision < 1 => {
                bad("series precision must be >= 1".into())
            }
            RingDescriptor::SeriesTrunc { .. } => Ok(()),
            RingDescriptor::Corner { ambient, .. } => ambient.validate(),
        }
    }

    /// True when the ring models an untruncated power-series domain somewhere
    /// in its structure.
    pub fn involves_series(&self) -> bool {
        match self {
            RingDescriptor::SeriesTrunc { .. } => true,
            RingDescriptor::Product(fs) => fs.iter().any(|f| f.involves_series()),
            RingDescriptor::TrivialExt { base, .. } => base.involves_series(),
            RingDescriptor::Corner { ambient, .. } => ambient.involves_series(),
            _ => false,
        }
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{it}")?;
    }
    Ok(())
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::ZMod(n) => write!(f, "Z/{n}"),
            RingDescriptor::PrimeField(p) => write!(f, "GF({p})"),
            RingDescriptor::PolyQuotient { p, modulus } => {
                write!(f, "GF({p})[x]/({})", poly::render(modulus))
            }
            RingDescriptor::Product(fs) => {
                write!(f, "prod(")?;
                write_list(f, fs)?;
                write!(f, ")")
            }
            RingDescriptor::TrivialExt { base, module } => write!(f, "triv({base}, {module})"),
            RingDescriptor::SeriesTrunc { p, precision } => write!(f, "series({p}, {precision})"),
            RingDescriptor::Corner { ambient, idempotent } => {
                write!(f, "corner({ambient}, {idempotent})")
            }
        }
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleDescriptor::Quot(gens) => {
                write!(f, "quot((")?;
                write_list(f, gens)?;
                write!(f, "))")
            }
            ModuleDescriptor::Free(n) => write!(f, "free({n})"),
            ModuleDescriptor::Pres(rows) => {
                write!(f, "pres([")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[")?;
                    write_list(f, row)?;
                    write!(f, "]")?;
                }
                write!(f, "])")
            }
        }
    }
}

/// Canonical encoding of a ring element. Two elements of one ring are equal
/// iff their encodings are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Encoding {
    /// Residue in `[0, n)`.
    Int(u64),
    /// Coefficient vector, ascending degree, fixed length.
    Coeffs(Vec<u64>),
    /// Component encodings of a product element, or of a vector in a
    /// module of rank > 1.
    Tuple(Vec<Encoding>),
    /// `(a, e)` in a trivial extension.
    Pair(Box<Encoding>, Box<Encoding>),
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Encoding::Int(n) => write!(f, "{n}"),
            Encoding::Coeffs(c) => write!(f, "{}", poly::render(c)),
            Encoding::Tuple(items) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
            Encoding::Pair(a, e) => write!(f, "({a},{e})"),
        }
    }
}

impl Serialize for Encoding {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Encoding {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        ElemExpr::parse(&text)
            .map(|e| e.to_encoding_hint())
            .map_err(serde::de::Error::custom)
    }
}

/// Untyped element syntax; interpreted against a ring by [`crate::Ring::element`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElemExpr {
    Int(u64),
    /// Polynomial in `x`, ascending coefficients, not yet reduced.
    Poly(Vec<u64>),
    Tuple(Vec<ElemExpr>),
}

impl From<&Encoding> for ElemExpr {
    fn from(e: &Encoding) -> Self {
        match e {
            Encoding::Int(n) => ElemExpr::Int(*n),
            Encoding::Coeffs(c) => ElemExpr::Poly(c.clone()),
            Encoding::Tuple(items) => ElemExpr::Tuple(items.iter().map(ElemExpr::from).collect()),
            Encoding::Pair(a, e) => ElemExpr::Tuple(vec![ElemExpr::from(&**a), ElemExpr::from(&**e)]),
        }
    }
}

impl fmt::Display for ElemExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemExpr::Int(n) => write!(f, "{n}"),
            ElemExpr::Poly(c) => write!(f, "{}", poly::render(c)),
            ElemExpr::Tuple(items) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl ElemExpr {
    /// Best-effort encoding without ring context: tuples of two stay tuples.
    pub fn to_encoding_hint(&self) -> Encoding {
        match self {
            ElemExpr::Int(n) => Encoding::Int(*n),
            ElemExpr::Poly(c) => Encoding::Coeffs(c.clone()),
            ElemExpr::Tuple(items) => Encoding::Tuple(items.iter().map(|i| i.to_encoding_hint()).collect()),
        }
    }

    /// Parse element syntax: integers, polynomials in `x` such as `x^2+2*x+1`,
    /// coefficient lists `[1,0,1]` (ascending), and parenthesised tuples.
    pub fn parse(text: &str) -> std::result::Result<ElemExpr, String> {
        let mut p = ElemParser { s: text.as_bytes(), pos: 0 };
        let e = p.elem()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(format!("unexpected input at offset {}", p.pos));
        }
        Ok(e)
    }
}

/// Standalone element parser; the CLI grammar uses its own positioned parser.
struct ElemParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl ElemParser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn int(&mut self) -> std::result::Result<u64, String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| format!("expected integer at offset {start}"))
    }

    fn elem(&mut self) -> std::result::Result<ElemExpr, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let mut items = vec![self.elem()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    items.push(self.elem()?);
                }
                if self.peek() != Some(b')') {
                    return Err(format!("expected ')' at offset {}", self.pos));
                }
                self.pos += 1;
                Ok(if items.len() == 1 { items.pop().unwrap() } else { ElemExpr::Tuple(items) })
            }
            Some(b'[') => {
                self.pos += 1;
                let mut coeffs = vec![self.int()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    coeffs.push(self.int()?);
                }
                if self.peek() != Some(b']') {
                    return Err(format!("expected ']' at offset {}", self.pos));
                }
                self.pos += 1;
                Ok(ElemExpr::Poly(coeffs))
            }
            _ => self.poly(),
        }
    }

    fn poly(&mut self) -> std::result::Result<ElemExpr, String> {
        let mut coeffs: Vec<u64> = Vec::new();
        let mut saw_x = false;
        loop {
            let (c, k, has_x) = self.monomial()?;
            saw_x |= has_x;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] += c;
            if self.peek() == Some(b'+') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if !saw_x && coeffs.len() == 1 {
            Ok(ElemExpr::Int(coeffs[0]))
        } else {
            Ok(ElemExpr::Poly(coeffs))
        }
    }

    fn monomial(&mut self) -> std::result::Result<(u64, usize, bool), String> {
        let mut c = 1;
        match self.peek() {
            Some(b'x') => {}
            Some(d) if d.is_ascii_digit() => {
                c = self.int()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                } else {
                    return Ok((c, 0, false));
                }
            }
            _ => return Err(format!("expected monomial at offset {}", self.pos)),
        }
        if self.peek() != Some(b'x') {
            return Err(format!("expected 'x' at offset {}", self.pos));
        }
        self.pos += 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.int()? as usize;
            Ok((c, k, true))
        } else {
            Ok((c, 1, true))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_validation() {
        assert!(RingDescriptor::ZMod(1).validate().is_err());
        assert!(RingDescriptor::PrimeField(4).validate().is_err());
        assert!(RingDescriptor::Product(vec![]).validate().is_err());
        let non_monic = RingDescriptor::PolyQuotient { p: 3, modulus: vec![1, 0, 2] };
        assert!(non_monic.validate().is_err());
        let constant = RingDescriptor::PolyQuotient { p: 2, modulus: vec![1] };
        assert!(constant.validate().is_err());
        assert!(RingDescriptor::SeriesTrunc { p: 2, precision: 0 }.validate().is_err());
        assert!(RingDescriptor::ZMod(4).validate().is_ok());
    }

    #[test]
    fn element_syntax() {
        assert_eq!(ElemExpr::parse("3").unwrap(), ElemExpr::Int(3));
        assert_eq!(ElemExpr::parse("x^2+1").unwrap(), ElemExpr::Poly(vec![1, 0, 1]));
        assert_eq!(ElemExpr::parse("2*x").unwrap(), ElemExpr::Poly(vec![0, 2]));
        assert_eq!(ElemExpr::parse("[1,1]").unwrap(), ElemExpr::Poly(vec![1, 1]));
        assert_eq!(
            ElemExpr::parse("(2, (x,0))").unwrap(),
            ElemExpr::Tuple(vec![
                ElemExpr::Int(2),
                ElemExpr::Tuple(vec![ElemExpr::Poly(vec![0, 1]), ElemExpr::Int(0)])
            ])
        );
        assert!(ElemExpr::parse("(1,").is_err());
    }

    #[test]
    fn rendering() {
        let d = RingDescriptor::TrivialExt {
            base: Box::new(RingDescriptor::ZMod(4)),
            module: ModuleDescriptor::Quot(vec![Encoding::Int(2)]),
        };
        assert_eq!(d.to_string(), "triv(Z/4, quot((2)))");
        let e = Encoding::Pair(Box::new(Encoding::Coeffs(vec![1, 1, 0])), Box::new(Encoding::Int(1)));
        assert_eq!(e.to_string(), "(x+1,1)");
    }
}
