use super::{AlgebraError, Coefficient, Generator, LaurentPolynomial, Monomial};
use std::collections::BTreeMap;
use std::fmt;

/// Element of the tropical semifield on a set of generators.
///
/// Multiplication adds exponents; `oplus` takes the componentwise minimum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TropicalElement(BTreeMap<Generator, i64>);

impl TropicalElement {
    pub fn one() -> Self {
        TropicalElement(BTreeMap::new())
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        TropicalElement(m.iter().map(|(g, e)| (g, e as i64)).collect())
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|(&g, &e)| (g, e as i32)))
    }

    pub fn exponent(&self, g: Generator) -> i64 {
        self.0.get(&g).copied().unwrap_or(0)
    }

    pub fn otimes(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (&g, &e) in other.0.iter() {
            *out.entry(g).or_insert(0) += e;
        }
        out.retain(|_, e| *e != 0);
        TropicalElement(out)
    }

    pub fn inv(&self) -> Self {
        TropicalElement(self.0.iter().map(|(&g, &e)| (g, -e)).collect())
    }

    pub fn oplus(&self, other: &Self) -> Self {
        let mut out = BTreeMap::new();
        for g in self.0.keys().chain(other.0.keys()) {
            let e = self.exponent(*g).min(other.exponent(*g));
            if e != 0 {
                out.insert(*g, e);
            }
        }
        TropicalElement(out)
    }

    /// Casts a polynomial that is a single monomial with coefficient 1.
    pub fn from_polynomial<C: Coefficient>(p: &LaurentPolynomial<C>) -> Result<Self, AlgebraError> {
        match p.as_term() {
            Some((m, c)) if c.is_one() => Ok(Self::from_monomial(m)),
            _ => Err(AlgebraError::NotSingleTerm),
        }
    }
}

/// Tropical sum of a nonempty family.
pub fn tropical_sum<'a, I>(items: I) -> Result<TropicalElement, AlgebraError>
where
    I: IntoIterator<Item = &'a TropicalElement>,
{
    let mut it = items.into_iter();
    let first = it.next().ok_or(AlgebraError::EmptyTropicalSum)?.clone();
    Ok(it.fold(first, |acc, t| acc.oplus(t)))
}

impl fmt::Display for TropicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_monomial())
    }
}
