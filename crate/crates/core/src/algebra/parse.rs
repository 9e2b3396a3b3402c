use super::{AlgebraError, Coefficient, Generator, LaurentPolynomial, Monomial};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> AlgebraError {
        AlgebraError::Parse { pos: self.pos, msg: what.to_string() }
    }

    fn digits(&mut self) -> Result<&'a str, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn signed(&mut self) -> Result<i64, AlgebraError> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let v: i64 = d.parse().map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn index(&mut self) -> Result<u32, AlgebraError> {
        let d = self.digits()?;
        d.parse().map_err(|_| self.err("index out of range"))
    }

    fn generator(&mut self) -> Result<Generator, AlgebraError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                if self.s.get(self.pos) == Some(&b'\'') {
                    self.pos += 1;
                    Ok(Generator::XPrime(self.index()?))
                } else {
                    Ok(Generator::X(self.index()?))
                }
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Generator::FormalY(self.index()?))
            }
            Some(b'Y') => {
                self.pos += 1;
                if !self.eat(b'[') {
                    return Err(self.err("expected '['"));
                }
                let i = self.index()?;
                if !self.eat(b',') {
                    return Err(self.err("expected ','"));
                }
                let r = self.signed()?;
                if !self.eat(b']') {
                    return Err(self.err("expected ']'"));
                }
                Ok(Generator::Y(i, r as i32))
            }
            _ => Err(self.err("expected a generator")),
        }
    }
}

fn parse_term<C: Coefficient>(cur: &mut Cursor<'_>) -> Result<(Monomial, C), AlgebraError> {
    let mut coeff = C::one();
    let mut pairs = Vec::new();
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d = cur.digits()?;
                let v: C = d.parse().map_err(|_| cur.err("bad coefficient"))?;
                coeff = coeff * v;
            }
            _ => {
                let g = cur.generator()?;
                let e = if cur.eat(b'^') { cur.signed()? } else { 1 };
                pairs.push((g, e as i32));
            }
        }
        if !cur.eat(b'*') {
            break;
        }
    }
    Ok((Monomial::from_pairs(pairs), coeff))
}

pub(crate) fn parse_polynomial<C: Coefficient>(s: &str) -> Result<LaurentPolynomial<C>, AlgebraError> {
    let mut cur = Cursor { s: s.as_bytes(), pos: 0 };
    let mut out = LaurentPolynomial::zero();
    if cur.peek() == Some(b'0') && s.trim() == "0" {
        return Ok(out);
    }
    let mut neg = cur.eat(b'-');
    loop {
        let (m, c): (Monomial, C) = parse_term(&mut cur)?;
        out.add_term(m, if neg { -c } else { c });
        if cur.eat(b'+') {
            neg = false;
        } else if cur.eat(b'-') {
            neg = true;
        } else {
            break;
        }
    }
    if cur.peek().is_some() {
        return Err(cur.err("trailing input"));
    }
    Ok(out)
}

/// Parses a monomial such as `x1^2*x'3^-1` or `Y[1,-3]Y[3,-7]`.
///
/// Factors may be juxtaposed or separated by `*`.
pub fn parse_monomial(s: &str) -> Result<Monomial, AlgebraError> {
    let mut cur = Cursor { s: s.as_bytes(), pos: 0 };
    let mut pairs = Vec::new();
    if s.trim() == "1" {
        return Ok(Monomial::one());
    }
    while cur.peek().is_some() {
        let g = cur.generator()?;
        let e = if cur.eat(b'^') { cur.signed()? } else { 1 };
        pairs.push((g, e as i32));
        cur.eat(b'*');
    }
    if pairs.is_empty() {
        return Err(cur.err("empty monomial"));
    }
    Ok(Monomial::from_pairs(pairs))
}
