//! Line-oriented text format for lists of polynomials.
//!
//! ```text
//! # module=M6 dims=3,3,4 degree=6
//! poly 0 filling=(2,2,2):[1,1;2,2;3,3]|(2,2,2):[1,1;2,2;3,3]|(3,1,1,1):[1,1,1;2;3;4] via=symmetrizer
//! +1 x[1,1,1] x[2,2,2]^2 ...
//! -2 ...
//!
//! ```
//! Monomial lines list factors in canonical variable order (exponent suffix omitted
//! when 1) and are sorted ascending in the monomial order. Every polynomial ends with
//! a blank line. Optional `# note <text>` lines may follow the header.

use std::fmt::Write as _;

use num_bigint::BigInt;

use super::monomial::Monomial;
use super::poly::SparsePolynomial;
use super::var::{Dims, VariableIndex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRecord {
    pub id: usize,
    pub filling: String,
    pub via: Option<String>,
    pub poly: SparsePolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialFile {
    pub module: String,
    pub dims: Dims,
    pub degree: u32,
    pub notes: Vec<String>,
    pub polys: Vec<PolyRecord>,
}

impl PolynomialFile {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# module={} dims={} degree={}",
            self.module, self.dims, self.degree
        )
        .unwrap();
        for note in &self.notes {
            writeln!(out, "# note {note}").unwrap();
        }
        for rec in &self.polys {
            write!(out, "poly {} filling={}", rec.id, rec.filling).unwrap();
            if let Some(via) = &rec.via {
                write!(out, " via={via}").unwrap();
            }
            out.push('\n');
            for (m, c) in rec.poly.terms() {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(out, "{c}").unwrap();
                } else {
                    write!(out, "+{c}").unwrap();
                }
                for &(v, e) in m.powers() {
                    write!(out, " x[{},{},{}]", v.i, v.j, v.k).unwrap();
                    if e != 1 {
                        write!(out, "^{e}").unwrap();
                    }
                }
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().peekable();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty input"))?;
        let (module, dims, degree) = parse_header(header)?;
        let mut notes = Vec::new();
        while let Some((_, l)) = lines.peek() {
            match l.strip_prefix("# note ") {
                Some(note) => {
                    notes.push(note.to_string());
                    lines.next();
                }
                None => break,
            }
        }
        let mut polys = Vec::new();
        while let Some((n, line)) = lines.next() {
            let lineno = n + 1;
            if line.is_empty() {
                continue;
            }
            let rest = line
                .strip_prefix("poly ")
                .ok_or_else(|| Error::parse(lineno, format!("expected 'poly', got '{line}'")))?;
            let mut parts = rest.split(' ');
            let id: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::parse(lineno, "missing polynomial id"))?;
            let filling = parts
                .next()
                .and_then(|s| s.strip_prefix("filling="))
                .ok_or_else(|| Error::parse(lineno, "missing filling="))?
                .to_string();
            let via = match parts.next() {
                Some(s) => Some(
                    s.strip_prefix("via=")
                        .ok_or_else(|| Error::parse(lineno, format!("unexpected token '{s}'")))?
                        .to_string(),
                ),
                None => None,
            };
            let mut terms = Vec::new();
            let mut terminated = false;
            for (m, l) in lines.by_ref() {
                if l.is_empty() {
                    terminated = true;
                    break;
                }
                terms.push(parse_term(l, m + 1)?);
            }
            if !terminated {
                return Err(Error::parse(lineno, "polynomial not terminated by a blank line"));
            }
            let sorted = terms.windows(2).all(|w| w[0].0 < w[1].0);
            if !sorted {
                return Err(Error::parse(lineno, "monomials not in canonical order"));
            }
            let poly = SparsePolynomial::from_terms(dims, terms)
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
            if !poly.is_zero() && poly.degree() != degree {
                return Err(Error::parse(lineno, "polynomial degree differs from header"));
            }
            polys.push(PolyRecord {
                id,
                filling,
                via,
                poly,
            });
        }
        Ok(PolynomialFile {
            module,
            dims,
            degree,
            notes,
            polys,
        })
    }
}

fn parse_header(line: &str) -> Result<(String, Dims, u32)> {
    let rest = line
        .strip_prefix("# ")
        .ok_or_else(|| Error::parse(1, "header must start with '# '"))?;
    let mut module = None;
    let mut dims = None;
    let mut degree = None;
    for tok in rest.split(' ') {
        if let Some(v) = tok.strip_prefix("module=") {
            module = Some(v.to_string());
        } else if let Some(v) = tok.strip_prefix("dims=") {
            dims = Some(v.parse::<Dims>().map_err(|e| Error::parse(1, e.to_string()))?);
        } else if let Some(v) = tok.strip_prefix("degree=") {
            degree = Some(v.parse::<u32>().map_err(|e| Error::parse(1, e.to_string()))?);
        } else {
            return Err(Error::parse(1, format!("unknown header field '{tok}'")));
        }
    }
    match (module, dims, degree) {
        (Some(m), Some(d), Some(g)) => Ok((m, d, g)),
        _ => Err(Error::parse(1, "header needs module=, dims= and degree=")),
    }
}

fn parse_term(line: &str, lineno: usize) -> Result<(Monomial, BigInt)> {
    let mut toks = line.split(' ');
    let coeff_tok = toks.next().unwrap_or("");
    let coeff: BigInt = coeff_tok
        .strip_prefix('+')
        .unwrap_or(coeff_tok)
        .parse()
        .map_err(|_| Error::parse(lineno, format!("bad coefficient '{coeff_tok}'")))?;
    let mut powers = Vec::new();
    let mut prev: Option<VariableIndex> = None;
    for tok in toks {
        let (var, exp) = parse_factor(tok).ok_or_else(|| {
            Error::parse(lineno, format!("bad factor '{tok}'"))
        })?;
        if prev.is_some_and(|p| p >= var) {
            return Err(Error::parse(lineno, "factors not in canonical variable order"));
        }
        prev = Some(var);
        powers.push((var, exp));
    }
    Ok((Monomial::from_powers(powers), coeff))
}

fn parse_factor(tok: &str) -> Option<(VariableIndex, u32)> {
    let body = tok.strip_prefix("x[")?;
    let (idx, tail) = body.split_once(']')?;
    let exp = if tail.is_empty() {
        1
    } else {
        let e: u32 = tail.strip_prefix('^')?.parse().ok()?;
        if e < 2 {
            return None;
        }
        e
    };
    let mut it = idx.split(',').map(|s| s.parse::<u8>().ok());
    let (i, j, k) = (it.next()??, it.next()??, it.next()??);
    if it.next().is_some() {
        return None;
    }
    Some((VariableIndex::new(i, j, k), exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_file() -> PolynomialFile {
        let dims = Dims::new(3, 3, 4);
        let x = VariableIndex::new;
        let p = SparsePolynomial::from_terms(
            dims,
            [
                (Monomial::from_vars([x(1, 1, 1), x(1, 1, 1)]), BigInt::from(3)),
                (Monomial::from_vars([x(2, 3, 4), x(1, 2, 1)]), BigInt::from(-12)),
            ],
        )
        .unwrap();
        PolynomialFile {
            module: "test".into(),
            dims,
            degree: 2,
            notes: vec!["demo file".into()],
            polys: vec![PolyRecord {
                id: 0,
                filling: "(2):[1,1]|(2):[1,1]|(2):[1,1]".into(),
                via: Some("symmetrizer".into()),
                poly: p,
            }],
        }
    }

    #[test]
    fn emits_exact_layout() {
        let text = sample_file().to_text();
        assert_eq!(
            text,
            "# module=test dims=3,3,4 degree=2\n\
             # note demo file\n\
             poly 0 filling=(2):[1,1]|(2):[1,1]|(2):[1,1] via=symmetrizer\n\
             +3 x[1,1,1]^2\n\
             -12 x[1,2,1] x[2,3,4]\n\
             \n"
        );
    }

    #[test]
    fn parse_round_trip_is_byte_identical() {
        let f = sample_file();
        let text = f.to_text();
        let parsed = PolynomialFile::parse(&text).unwrap();
        assert_eq!(parsed, f);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(PolynomialFile::parse("").is_err());
        assert!(PolynomialFile::parse("# module=x dims=3,3 degree=1\n").is_err());
        let unterminated = "# module=x dims=3,3,3 degree=1\npoly 0 filling=f\n+1 x[1,1,1]";
        assert!(PolynomialFile::parse(unterminated).is_err());
        let unsorted = "# module=x dims=3,3,3 degree=1\npoly 0 filling=f\n+1 x[1,1,2]\n+1 x[1,1,1]\n\n";
        assert!(PolynomialFile::parse(unsorted).is_err());
        let bad_var = "# module=x dims=3,3,3 degree=1\npoly 0 filling=f\n+1 x[4,1,1]\n\n";
        assert!(PolynomialFile::parse(bad_var).is_err());
    }
}
