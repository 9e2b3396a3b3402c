use super::Generator;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Laurent monomial: generators with nonzero integer exponents, sorted by generator.
///
/// `Ord` is the lexicographic group order on exponent vectors (absent
/// generators count as exponent 0), so `a < b` implies `a*c < b*c`. This is
/// what makes leading terms multiplicative and exact division terminate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(Vec<(Generator, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(g: Generator) -> Self {
        Monomial(vec![(g, 1)])
    }

    pub fn power(g: Generator, e: i32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(vec![(g, e)])
        }
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (Generator, i32)>>(pairs: I) -> Self {
        let mut v: Vec<(Generator, i32)> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut out: Vec<(Generator, i32)> = Vec::with_capacity(v.len());
        for (g, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == g => last.1 += e,
                _ => out.push((g, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Generator, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: Generator) -> i32 {
        match self.0.binary_search_by_key(&g, |p| p.0) {
            Ok(k) => self.0[k].1,
            Err(_) => 0,
        }
    }

    /// Sum of exponents.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    fn merge(&self, other: &Monomial, sign: i32) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, sign * b[j].1));
                j += 1;
            } else {
                let e = a[i].1 + sign * b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, 1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge(other, -1)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Self::one();
        }
        Monomial(self.0.iter().map(|&(g, e)| (g, e * k)).collect())
    }

    /// Keeps only the generators accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(Generator) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| keep(p.0)).collect())
    }

    /// Part with positive exponents.
    pub fn positive_part(&self) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| p.1 > 0).collect())
    }

    /// Part with negative exponents, as a monomial with negative exponents.
    pub fn negative_part(&self) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| p.1 < 0).collect())
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|p| p.1 > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(g, e)), Some(&(h, f))) => {
                    if g < h {
                        return e.cmp(&0);
                    } else if h < g {
                        return 0.cmp(&f);
                    } else if e != f {
                        return e.cmp(&f);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}
