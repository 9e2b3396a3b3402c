use super::{AlgebraError, Generator, Monomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Integer coefficient ring for [`LaurentPolynomial`].
pub trait Coefficient:
    Integer + Signed + Clone + fmt::Debug + fmt::Display + FromStr + std::hash::Hash + Send + Sync
{
}

impl Coefficient for BigInt {}
impl Coefficient for i64 {}

/// Sparse Laurent polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial<C: Coefficient = BigInt> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Default for LaurentPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> LaurentPolynomial<C> {
    pub fn zero() -> Self {
        LaurentPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, C::one())
    }

    pub fn var(g: Generator) -> Self {
        Self::monomial(Monomial::var(g))
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&Monomial::one()).is_one()
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    /// Largest term in the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Smallest term in the monomial order.
    pub fn trailing_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next()
    }

    /// Maximal total degree over the terms.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Sum of all coefficients, i.e. the value at all generators equal to 1.
    pub fn coefficient_sum(&self) -> C {
        self.terms.values().fold(C::zero(), |a, c| a + c.clone())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Minimal exponent of `g` over all terms (0 for the zero polynomial).
    pub fn min_exponent(&self, g: Generator) -> i32 {
        self.terms.keys().map(|m| m.exponent(g)).min().unwrap_or(0)
    }

    pub fn max_exponent(&self, g: Generator) -> i32 {
        self.terms.keys().map(|m| m.exponent(g)).max().unwrap_or(0)
    }

    /// Single monomial with coefficient, if the polynomial has exactly one term.
    pub fn as_term(&self) -> Option<(&Monomial, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial { terms: self.terms.iter().map(|(m, d)| (m.clone(), d.clone() * c.clone())).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Self {
        self.mul_monomial(&m.inv())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`.
    ///
    /// Lex leading terms multiply, so the quotient is peeled off term by term.
    /// A quotient term falling below `trailing(self)/trailing(d)` proves
    /// non-divisibility.
    pub fn div_exact(&self, d: &Self) -> Result<Self, AlgebraError> {
        let (dl_m, dl_c) = d.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((m, c)) = d.as_term() {
            let (q, r) = self.div_rem_coeff(c);
            if !r {
                return Err(AlgebraError::NotDivisible);
            }
            return Ok(q.div_monomial(m));
        }
        let floor = self.trailing_term().unwrap().0.div(d.trailing_term().unwrap().0);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let (qc, r) = rc.div_rem(dl_c);
            if !r.is_zero() {
                return Err(AlgebraError::NotDivisible);
            }
            let qm = rm.div(dl_m);
            if qm < floor {
                return Err(AlgebraError::NotDivisible);
            }
            for (m, c) in d.terms.iter() {
                rem.add_term(m.mul(&qm), -(c.clone() * qc.clone()));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    fn div_rem_coeff(&self, c: &C) -> (Self, bool) {
        let mut ok = true;
        let terms = self
            .terms
            .iter()
            .map(|(m, d)| {
                let (q, r) = d.div_rem(c);
                ok &= r.is_zero();
                (m.clone(), q)
            })
            .collect();
        (LaurentPolynomial { terms }, ok)
    }

    /// Ring homomorphism sending each generator through `image`.
    ///
    /// Generators mapped to `None` are kept. A negative power needs a
    /// monomial image, since only monomials are units.
    pub fn substitute<F>(&self, image: F) -> Result<Self, AlgebraError>
    where
        F: Fn(Generator) -> Option<Self>,
    {
        let mut out = Self::zero();
        for (m, c) in self.terms.iter() {
            let mut acc = Self::constant(c.clone());
            let mut kept = Vec::new();
            for (g, e) in m.iter() {
                match image(g) {
                    None => kept.push((g, e)),
                    Some(p) => {
                        let base = if e < 0 {
                            match p.as_term() {
                                Some((pm, pc)) if pc.is_one() => Self::monomial(pm.inv()),
                                Some((pm, pc)) if (-pc.clone()).is_one() => Self::term(pm.inv(), -C::one()),
                                _ => return Err(AlgebraError::NonInvertibleSubstitution(g.to_string())),
                            }
                        } else {
                            p
                        };
                        acc = &acc * &base.pow(e.unsigned_abs());
                    }
                }
            }
            out = &out + &acc.mul_monomial(&Monomial::from_pairs(kept));
        }
        Ok(out)
    }

    /// Maps coefficients into another coefficient ring.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentPolynomial<D> {
        LaurentPolynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl<C: Coefficient> Add for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn add(self, rhs: Self) -> LaurentPolynomial<C> {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in small.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn sub(self, rhs: Self) -> LaurentPolynomial<C> {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coefficient> Mul for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn mul(self, rhs: Self) -> LaurentPolynomial<C> {
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * rhs.len());
        for (a, c) in self.terms.iter() {
            for (b, d) in rhs.terms.iter() {
                let v = c.clone() * d.clone();
                match acc.entry(a.mul(b)) {
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        let s = o.get().clone() + v;
                        *o.get_mut() = s;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(v);
                    }
                }
            }
        }
        LaurentPolynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl<C: Coefficient> Neg for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn neg(self) -> LaurentPolynomial<C> {
        LaurentPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<C: Coefficient> $tr for LaurentPolynomial<C> {
            type Output = LaurentPolynomial<C>;
            fn $f(self, rhs: Self) -> LaurentPolynomial<C> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> From<Monomial> for LaurentPolynomial<C> {
    fn from(m: Monomial) -> Self {
        Self::monomial(m)
    }
}

/// Canonical text: terms in descending monomial order, e.g. `-3*x1^2*x'3^-1 + 1`.
impl<C: Coefficient> fmt::Display for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> FromStr for LaurentPolynomial<C> {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, AlgebraError> {
        super::parse::parse_polynomial(s)
    }
}
