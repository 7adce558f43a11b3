//! Laurent polynomials in a single variable with integer exponents.

use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use super::series::Coeff;

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<C> {
    var: String,
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero(var: &str) -> Self {
        LaurentPoly {
            var: var.to_string(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(var: &str, exp: i64, c: C) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, &c);
        p
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, c: &C) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp).or_insert_with(C::zero);
        e.add_assign(c);
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(&self.var);
        for (e, c) in &self.terms {
            out.add_term(*e, &c.scale(r));
        }
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut out = LaurentPoly::zero(&self.var);
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c));
        }
        out
    }

    /// Exponents at which two polynomials differ.
    pub fn mismatches(&self, other: &Self) -> Vec<i64> {
        let mut exps: Vec<i64> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        exps.sort_unstable();
        exps.dedup();
        exps.into_iter()
            .filter(|&e| self.coeff(e) != other.coeff(e))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!({ "exp": e, "coeff": c.to_json() }))
            .collect();
        serde_json::json!({ "var": self.var, "terms": terms })
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}^{e}", self.var)?;
        }
        Ok(())
    }
}
