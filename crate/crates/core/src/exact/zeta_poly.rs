//! The graded ring ℚ[ζ₂, ζ₃, ζ₅, ζ₇, …] of formal zeta symbols.
//!
//! Even zetas are never independent symbols: ζ(2k) enters as r_k ζ₂^k, so the
//! normal form of every element is unique.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rug::Rational;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use super::rational::{even_zeta_ratio, format_rational};
use crate::error::{Error, Result};

/// Product of zeta symbols, stored as sorted `(index, exponent)` pairs with
/// nonzero exponents. Allowed indices are 2 and the odd integers ≥ 3.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZetaMonomial(Vec<(u32, u32)>);

pub fn is_symbol_index(index: u32) -> bool {
    index == 2 || (index >= 3 && index % 2 == 1)
}

impl ZetaMonomial {
    pub fn one() -> Self {
        ZetaMonomial(Vec::new())
    }

    /// A single symbol ζ_index; panics on an index that is not a ring generator.
    pub fn symbol(index: u32) -> Self {
        assert!(is_symbol_index(index), "ζ{index} is not a generator");
        ZetaMonomial(vec![(index, 1)])
    }

    pub fn from_exponents<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, e) in pairs {
            if !is_symbol_index(i) {
                return Err(Error::InvalidArgument(format!("ζ{i} is not a generator")));
            }
            *map.entry(i).or_insert(0) += e;
        }
        Ok(ZetaMonomial(map.into_iter().filter(|&(_, e)| e > 0).collect()))
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn exponent(&self, index: u32) -> u32 {
        self.0
            .iter()
            .find(|&&(i, _)| i == index)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|&(i, e)| i * e).sum()
    }

    /// Number of odd-zeta factors counted with multiplicity.
    pub fn odd_degree(&self) -> u32 {
        self.0.iter().filter(|&&(i, _)| i % 2 == 1).map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ZetaMonomial(out)
    }
}

impl fmt::Display for ZetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, &(i, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "ζ{i}")?;
            } else {
                write!(f, "ζ{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in zeta symbols with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZetaPoly {
    terms: BTreeMap<ZetaMonomial, Rational>,
}

impl ZetaPoly {
    pub fn zero() -> Self {
        ZetaPoly::default()
    }

    pub fn one() -> Self {
        ZetaPoly::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        ZetaPoly::monomial(ZetaMonomial::one(), c)
    }

    pub fn monomial(m: ZetaMonomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        ZetaPoly { terms }
    }

    /// ζ(k) for k ≥ 2 in normal form: a symbol for k = 2 or k odd, otherwise
    /// r_{k/2} ζ₂^{k/2}.
    pub fn zeta(k: u32) -> Self {
        assert!(k >= 2, "ζ({k}) diverges");
        if is_symbol_index(k) {
            ZetaPoly::monomial(ZetaMonomial::symbol(k), Rational::from(1))
        } else {
            even_zeta_normal_form(k / 2)
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ZetaMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &ZetaMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The rational value if this element has no zeta symbols.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::new()),
            1 => self.terms.get(&ZetaMonomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn weights(&self) -> BTreeSet<u32> {
        self.terms.keys().map(ZetaMonomial::weight).collect()
    }

    /// True when every term has weight `w` (vacuously true for zero).
    pub fn is_homogeneous_of(&self, w: u32) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    pub fn homogeneous_weight(&self) -> Option<u32> {
        let ws = self.weights();
        if ws.len() == 1 {
            ws.into_iter().next()
        } else {
            None
        }
    }

    /// True when some monomial contains ζ₂.
    pub fn involves_zeta2(&self) -> bool {
        self.terms.keys().any(|m| m.exponent(2) > 0)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if *r == 0 {
            return ZetaPoly::zero();
        }
        ZetaPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from(c * r)))
                .collect(),
        }
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: &ZetaMonomial, c: &Rational) {
        if *c == 0 {
            return;
        }
        match self.terms.get_mut(m) {
            Some(v) => {
                *v += c;
                if *v == 0 {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    /// self += a·b without materializing the product.
    pub fn add_mul(&mut self, a: &ZetaPoly, b: &ZetaPoly) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = Rational::from(ca * cb);
                match self.terms.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        self.terms.insert(m, c);
                    }
                }
            }
        }
        self.terms.retain(|_, c| *c != 0);
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ZetaPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Applies a coefficientwise map on monomials, collecting like terms.
    pub fn map_monomials<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&ZetaMonomial, &Rational) -> Option<(ZetaMonomial, Rational)>,
    {
        let mut out = ZetaPoly::zero();
        for (m, c) in &self.terms {
            if let Some((m2, c2)) = f(m, c) {
                out.add_term(&m2, &c2);
            }
        }
        out
    }
}

/// ζ(2k) = r_k ζ₂^k.
pub fn even_zeta_normal_form(k: u32) -> ZetaPoly {
    ZetaPoly::monomial(
        ZetaMonomial::from_exponents([(2, k)]).expect("ζ2 is a generator"),
        even_zeta_ratio(k),
    )
}

impl From<Rational> for ZetaPoly {
    fn from(r: Rational) -> Self {
        ZetaPoly::constant(r)
    }
}

impl From<i64> for ZetaPoly {
    fn from(n: i64) -> Self {
        ZetaPoly::constant(Rational::from(n))
    }
}

impl AddAssign<&ZetaPoly> for ZetaPoly {
    fn add_assign(&mut self, rhs: &ZetaPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&ZetaPoly> for ZetaPoly {
    fn sub_assign(&mut self, rhs: &ZetaPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m, &Rational::from(-c));
        }
    }
}

impl Add for &ZetaPoly {
    type Output = ZetaPoly;
    fn add(self, rhs: &ZetaPoly) -> ZetaPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ZetaPoly {
    type Output = ZetaPoly;
    fn sub(self, rhs: &ZetaPoly) -> ZetaPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &ZetaPoly {
    type Output = ZetaPoly;
    fn mul(self, rhs: &ZetaPoly) -> ZetaPoly {
        let mut out = ZetaPoly::zero();
        out.add_mul(self, rhs);
        out
    }
}

impl Neg for &ZetaPoly {
    type Output = ZetaPoly;
    fn neg(self) -> ZetaPoly {
        self.scale(&Rational::from(-1))
    }
}

impl Add for ZetaPoly {
    type Output = ZetaPoly;
    fn add(mut self, rhs: ZetaPoly) -> ZetaPoly {
        self += &rhs;
        self
    }
}

impl Sub for ZetaPoly {
    type Output = ZetaPoly;
    fn sub(mut self, rhs: ZetaPoly) -> ZetaPoly {
        self -= &rhs;
        self
    }
}

impl Mul for ZetaPoly {
    type Output = ZetaPoly;
    fn mul(self, rhs: ZetaPoly) -> ZetaPoly {
        &self * &rhs
    }
}

impl Neg for ZetaPoly {
    type Output = ZetaPoly;
    fn neg(self) -> ZetaPoly {
        -&self
    }
}

impl fmt::Display for ZetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            let abs = Rational::from(c.abs_ref());
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

struct MonoJson<'a>(&'a ZetaMonomial);

impl Serialize for MonoJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0 .0.len()))?;
        for (i, e) in &self.0 .0 {
            map.serialize_entry(&i.to_string(), e)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    coeff: String,
    mono: MonoJson<'a>,
}

impl Serialize for ZetaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermJson {
                coeff: format_rational(c),
                mono: MonoJson(m),
            })?;
        }
        seq.end()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use proptest::prelude::*;

    fn z(k: u32) -> ZetaPoly {
        ZetaPoly::zeta(k)
    }

    #[test]
    fn even_normal_forms() {
        assert_eq!(even_zeta_normal_form(1), z(2));
        assert_eq!(z(4), z(2).pow(2).scale(&rat(2, 5)));
        assert_eq!(z(6), z(2).pow(3).scale(&rat(8, 35)));
        for k in 1..=12 {
            assert!(even_zeta_normal_form(k).is_homogeneous_of(2 * k));
            assert_eq!(even_zeta_normal_form(k).homogeneous_weight(), Some(2 * k));
        }
    }

    #[test]
    fn display_and_json() {
        let p = &z(3) * &z(2) + z(5).scale(&rat(5, 1)) - ZetaPoly::from(1);
        assert_eq!(p.to_string(), "-1 + ζ2*ζ3 + 5*ζ5");
        let json = serde_json::to_string(&z(4)).unwrap();
        assert_eq!(json, r#"[{"coeff":"2/5","mono":{"2":2}}]"#);
    }

    #[test]
    fn rejects_even_generators() {
        assert!(ZetaMonomial::from_exponents([(4, 1)]).is_err());
        assert!(ZetaMonomial::from_exponents([(1, 1)]).is_err());
    }

    pub(crate) fn arb_poly() -> impl Strategy<Value = ZetaPoly> {
        let gens = prop::sample::select(vec![2u32, 3, 5, 7]);
        let mono = prop::collection::vec((gens, 0u32..3), 0..3);
        let term = (mono, -5i64..6, 1i64..4);
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            let mut p = ZetaPoly::zero();
            for (m, n, d) in ts {
                let m = ZetaMonomial::from_exponents(m).unwrap();
                p.add_term(&m, &rat(n, d));
            }
            p
        })
    }

    fn arb_homogeneous() -> impl Strategy<Value = (ZetaPoly, u32)> {
        // Homogeneous elements built from weight-w monomials ζ2^a ζ3^b with 2a + 3b = w.
        (2u32..12).prop_flat_map(|w| {
            let monos: Vec<(u32, u32)> = (0..=w / 2)
                .filter(|a| (w - 2 * a) % 3 == 0)
                .map(|a| (a, (w - 2 * a) / 3))
                .collect();
            let n = monos.len();
            (prop::collection::vec(-4i64..5, n), Just(monos), Just(w))
        })
        .prop_map(|(cs, monos, w)| {
            let mut p = ZetaPoly::zero();
            for (c, (a, b)) in cs.into_iter().zip(monos) {
                let m = ZetaMonomial::from_exponents([(2, a), (3, b)]).unwrap();
                p.add_term(&m, &Rational::from(c));
            }
            (p, w)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(&a * &ZetaPoly::one(), a.clone());
        }

        #[test]
        fn weight_is_additive((a, wa) in arb_homogeneous(), (b, wb) in arb_homogeneous()) {
            let ab = &a * &b;
            prop_assert!(ab.is_homogeneous_of(wa + wb));
        }
    }
}
