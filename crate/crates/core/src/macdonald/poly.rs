use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::WeightVector;
use crate::points::PointSet;
use crate::rational::{format_rational, parse_rational};

/// A Laurent polynomial in `x_1, …, x_n` with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    n: usize,
    terms: BTreeMap<WeightVector, BigRational>,
}

impl SparsePolynomial {
    pub fn zero(n: usize) -> Self {
        SparsePolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(WeightVector::zero(n), BigRational::one())
    }

    pub fn monomial(exponent: WeightVector, coefficient: BigRational) -> Self {
        let mut p = Self::zero(exponent.len());
        p.add_term(exponent, coefficient).expect("length matches");
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&WeightVector, &BigRational)> {
        self.terms.iter()
    }

    /// `⟨x^α⟩ p`.
    pub fn coefficient(&self, exponent: &WeightVector) -> BigRational {
        self.terms.get(exponent).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exponent: WeightVector, coefficient: BigRational) -> Result<()> {
        if exponent.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: exponent.len(),
            });
        }
        if coefficient.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(exponent).or_insert_with(BigRational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigRational) -> SparsePolynomial {
        if factor.is_zero() {
            return Self::zero(self.n);
        }
        SparsePolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    /// Multiply by the monomial `x^by`.
    pub fn shift(&self, by: &WeightVector) -> Result<SparsePolynomial> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.checked_add(by)?, c.clone());
        }
        Ok(SparsePolynomial { n: self.n, terms })
    }

    /// Multiply by `(x_1 ⋯ x_n)^m`.
    pub fn shift_all(&self, m: i64) -> SparsePolynomial {
        SparsePolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.shift(m), c.clone())).collect(),
        }
    }

    /// The exponent set.
    pub fn support(&self) -> PointSet {
        let mut s = PointSet::empty(self.n);
        for e in self.terms.keys() {
            s.insert(e.clone()).expect("same length");
        }
        s
    }

    /// `ψ(x^a) = q^{−a_n} x^{(a_n, a_1, …, a_{n−1})}`, extended linearly.
    pub fn psi(&self, q: &BigRational) -> SparsePolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let last = *e.entries().last().expect("n >= 1");
                (e.rotate_right(), c * rational_pow(q, -last))
            })
            .collect();
        SparsePolynomial { n: self.n, terms }
    }
}

/// `x^k` for any integer `k`; `x` must be non-zero when `k < 0`.
pub fn rational_pow(x: &BigRational, k: i64) -> BigRational {
    let p: BigRational = Pow::pow(x, k.unsigned_abs());
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponent: WeightVector,
    #[serde(with = "crate::rational::serde_rational")]
    coefficient: BigRational,
}

impl Serialize for SparsePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(e, c)| TermRepr {
                exponent: e.clone(),
                coefficient: c.clone(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparsePolynomial {
    /// The variable count is taken from the exponents; an empty list cannot
    /// carry it and is rejected.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let n = terms
            .first()
            .map(|t| t.exponent.len())
            .ok_or_else(|| D::Error::custom("polynomial has no terms"))?;
        let mut p = SparsePolynomial::zero(n);
        for t in terms {
            p.add_term(t.exponent, t.coefficient).map_err(D::Error::custom)?;
        }
        Ok(p)
    }
}

/// Specialisation point for `(q, t)`, restricted to `0 < q, t < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QTParams {
    #[serde(with = "crate::rational::serde_rational")]
    q: BigRational,
    #[serde(with = "crate::rational::serde_rational")]
    t: BigRational,
}

impl QTParams {
    pub fn new(q: BigRational, t: BigRational) -> Result<Self> {
        let inside = |x: &BigRational| x.is_positive() && *x < BigRational::one();
        if !inside(&q) || !inside(&t) {
            return Err(Error::NonGenericParams {
                q: format_rational(&q),
                t: format_rational(&t),
            });
        }
        Ok(QTParams { q, t })
    }

    /// Parse `"p/q"` strings.
    pub fn parse(q: &str, t: &str) -> Result<Self> {
        QTParams::new(parse_rational(q)?, parse_rational(t)?)
    }

    pub fn from_ratios(q: (i64, i64), t: (i64, i64)) -> Result<Self> {
        let r = |(a, b): (i64, i64)| BigRational::new(BigInt::from(a), BigInt::from(b));
        QTParams::new(r(q), r(t))
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn t(&self) -> &BigRational {
        &self.t
    }
}

impl Default for QTParams {
    /// `q = t = 1/2`.
    fn default() -> Self {
        QTParams::from_ratios((1, 2), (1, 2)).expect("1/2 is generic")
    }
}
