//! Text form of polynomials: a sum of terms `c * x1^a1*x2^a2*...` with
//! rational coefficients written as `p/q` (the `/1` omitted). Parsing accepts
//! anything `Display` produces, plus redundant whitespace, `+`/`-` signs and
//! explicit `1 *` coefficients, so the round trip is exact.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_rational, PolyError, Polynomial, Rational};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // graded lex: higher total degree first, then lex descending
        let mut terms: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().sum();
            let db: u32 = eb.iter().sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        for (i, (exps, coeff)) in terms.iter().enumerate() {
            let neg = coeff.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            let mono = monomial_text(exps);
            match mono {
                None => write!(f, "{}", format_rational(&mag))?,
                Some(m) => {
                    if mag.is_one() {
                        write!(f, "{m}")?;
                    } else {
                        write!(f, "{} * {m}", format_rational(&mag))?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn monomial_text(exps: &[u32]) -> Option<String> {
    if exps.iter().all(|&e| e == 0) {
        return None;
    }
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect();
    Some(parts.join("*"))
}

/// Parse the textual form back into a polynomial over `num_vars` variables.
pub fn parse_polynomial(input: &str, num_vars: usize) -> Result<Polynomial, PolyError> {
    let mut parser = Parser {
        chars: input.chars().collect(),
        pos: 0,
        num_vars,
    };
    parser.parse()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    num_vars: usize,
}

impl Parser {
    fn parse(&mut self) -> Result<Polynomial, PolyError> {
        let mut poly = Polynomial::zero(self.num_vars);
        self.skip_ws();
        if self.pos == self.chars.len() {
            return Err(PolyError::Parse("empty input".into()));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos == self.chars.len() {
                break;
            }
            let sign = match self.peek() {
                Some('+') if !first => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => {
                    return Err(PolyError::Parse(format!(
                        "expected '+' or '-' at position {}, found '{c}'",
                        self.pos
                    )))
                }
                None => break,
            };
            let (exps, coeff) = self.parse_term()?;
            let signed = if sign < 0 { -coeff } else { coeff };
            poly = poly.try_add(&Polynomial::from_terms(self.num_vars, [(exps, signed)])?)?;
            first = false;
        }
        Ok(poly)
    }

    fn parse_term(&mut self) -> Result<(Vec<u32>, Rational), PolyError> {
        self.skip_ws();
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; self.num_vars];

        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.parse_rational_literal()?;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                // bare constant
                return Ok((exps, coeff));
            }
        }

        loop {
            self.skip_ws();
            match self.peek() {
                Some('x') => {
                    self.pos += 1;
                    let idx = self.parse_usize()?;
                    if idx == 0 || idx > self.num_vars {
                        return Err(PolyError::Parse(format!(
                            "variable x{idx} out of range for {} variables",
                            self.num_vars
                        )));
                    }
                    let mut exp = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        exp = self.parse_usize()? as u32;
                    }
                    exps[idx - 1] += exp;
                    self.skip_ws();
                    if self.peek() == Some('*') {
                        self.pos += 1;
                        continue;
                    }
                    break;
                }
                other => {
                    return Err(PolyError::Parse(format!(
                        "expected variable at position {}, found {:?}",
                        self.pos, other
                    )))
                }
            }
        }
        Ok((exps, coeff))
    }

    fn parse_rational_literal(&mut self) -> Result<Rational, PolyError> {
        let numer = self.parse_bigint()?;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let denom = self.parse_bigint()?;
            if denom.is_zero() {
                return Err(PolyError::Parse("zero denominator".into()));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn parse_bigint(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Parse(format!(
                "expected number at position {start}"
            )));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| PolyError::Parse(format!("bad integer `{s}`")))
    }

    fn parse_usize(&mut self) -> Result<usize, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Parse(format!(
                "expected index at position {start}"
            )));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| PolyError::Parse(format!("bad index `{s}`")))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{LinearForm, Rational};
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn display_canonical_forms() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        assert_eq!(Polynomial::zero(2).to_string(), "0");
        assert_eq!((&(&x * &x) - &(&y * &y)).to_string(), "x1^2 - x2^2");
        assert_eq!((&x * &y).scalar_mul(&rat(4, 1)).to_string(), "4 * x1*x2");
        assert_eq!(x.scalar_mul(&rat(-1, 3)).to_string(), "-1/3 * x1");
        assert_eq!(Polynomial::constant(3, rat(7, 2)).to_string(), "7/2");
    }

    #[test]
    fn parse_round_trip_examples() {
        for (text, n) in [
            ("x1^2 - x2^2", 2),
            ("4 * x1*x2", 2),
            ("x2^5 - 1/3 * x1", 2),
            ("0", 3),
            ("2/3", 1),
            ("x1*x2*x3 - 2 * x3^3", 3),
        ] {
            let p = parse_polynomial(text, n).unwrap();
            assert_eq!(p.to_string(), text);
            assert_eq!(parse_polynomial(&p.to_string(), n).unwrap(), p);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_polynomial("", 2).is_err());
        assert!(parse_polynomial("x3", 2).is_err());
        assert!(parse_polynomial("1/0", 2).is_err());
        assert!(parse_polynomial("x1 ++ x2", 2).is_err());
        assert!(parse_polynomial("y1", 2).is_err());
    }

    #[test]
    fn parse_accepts_redundant_forms() {
        let x = Polynomial::variable(2, 0);
        assert_eq!(parse_polynomial("1 * x1", 2).unwrap(), x);
        assert_eq!(
            parse_polynomial("x1^1", 2).unwrap(),
            parse_polynomial("x1", 2).unwrap()
        );
        // repeated variables multiply together
        assert_eq!(
            parse_polynomial("x1*x1", 2).unwrap(),
            parse_polynomial("x1^2", 2).unwrap()
        );
    }

    #[test]
    fn linear_form_display_uses_same_conventions() {
        let f = LinearForm::new(vec![2, -1]).unwrap();
        assert_eq!(f.to_string(), "2 * x1 - x2");
    }

    proptest::proptest! {
        #[test]
        fn display_parse_round_trip(
            spec in proptest::collection::vec(
                ((-9i64..=9, 1i64..=4), proptest::collection::vec(0u32..=3, 3)),
                0..6
            )
        ) {
            let mut p = Polynomial::zero(3);
            for ((num, den), exps) in spec {
                let t = Polynomial::from_terms(3, [(exps, rat(num, den))]).unwrap();
                p = p.try_add(&t).unwrap();
            }
            let back = parse_polynomial(&p.to_string(), 3).unwrap();
            proptest::prop_assert_eq!(back, p);
        }
    }
}
