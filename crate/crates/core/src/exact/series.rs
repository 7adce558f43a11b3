//! Dense truncated power series in one or two variables.
//!
//! Truncation is by (weighted) total degree: a term x^i y^j is kept when
//! `w0·i + w1·j ≤ order`. Binary operations on series of different order
//! return a result at the smaller order.

use std::fmt;

use rug::Rational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::rational::format_rational;
use super::zeta_poly::ZetaPoly;
use crate::error::{Error, Result};

/// Coefficient ring interface shared by ℚ and ℚ[ζ].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn add_assign(&mut self, o: &Self);
    fn sub_assign(&mut self, o: &Self);
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Inverse when the element is a unit of the ring.
    fn try_inverse(&self) -> Option<Self>;
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            self.add_assign(&a.mul(b));
        }
    }
    fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }
    fn to_json(&self) -> serde_json::Value;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn scale(&self, r: &Rational) -> Self {
        Rational::from(self * r)
    }
    fn try_inverse(&self) -> Option<Self> {
        (*self != 0).then(|| Rational::from(self.recip_ref()))
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += Rational::from(a * b);
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
}

impl Coeff for ZetaPoly {
    fn zero() -> Self {
        ZetaPoly::zero()
    }
    fn one() -> Self {
        ZetaPoly::one()
    }
    fn is_zero(&self) -> bool {
        ZetaPoly::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        ZetaPoly::constant(r)
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, r: &Rational) -> Self {
        ZetaPoly::scale(self, r)
    }
    fn try_inverse(&self) -> Option<Self> {
        let r = self.as_rational()?;
        (r != 0).then(|| ZetaPoly::constant(r.recip()))
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        ZetaPoly::add_mul(self, a, b);
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("zeta polynomial serializes")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C> {
    nvars: u8,
    weights: [u32; 2],
    order: u32,
    row_start: Vec<usize>,
    coeffs: Vec<C>,
}

/// Multiplication or division selector for [`series_mul_div`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulDiv {
    Mul,
    Div,
}

impl<C: Coeff> TruncSeries<C> {
    /// Zero series; `nvars` is 1 or 2, and in one variable `weights[1]` is ignored.
    pub fn zero_weighted(nvars: u8, weights: [u32; 2], order: u32) -> Self {
        assert!(nvars == 1 || nvars == 2, "series support one or two variables");
        assert!(weights[0] > 0 && weights[1] > 0, "weights must be positive");
        let rows = (order / weights[0]) as usize + 1;
        let mut row_start = Vec::with_capacity(rows + 1);
        let mut total = 0;
        for i in 0..rows {
            row_start.push(total);
            total += if nvars == 1 {
                1
            } else {
                ((order - weights[0] * i as u32) / weights[1]) as usize + 1
            };
        }
        row_start.push(total);
        TruncSeries {
            nvars,
            weights,
            order,
            row_start,
            coeffs: vec![C::zero(); total],
        }
    }

    pub fn zero(nvars: u8, order: u32) -> Self {
        Self::zero_weighted(nvars, [1, 1], order)
    }

    /// Zero series with the same variables and weights as `self`.
    pub fn zero_like(&self, order: u32) -> Self {
        Self::zero_weighted(self.nvars, self.weights, order)
    }

    pub fn constant(nvars: u8, order: u32, c: C) -> Self {
        let mut s = Self::zero(nvars, order);
        s.set(0, 0, c);
        s
    }

    pub fn one(nvars: u8, order: u32) -> Self {
        Self::constant(nvars, order, C::one())
    }

    /// The variable x (index 0) or y (index 1) with unit weights.
    pub fn var(nvars: u8, index: u8, order: u32) -> Self {
        let mut s = Self::zero(nvars, order);
        if order >= 1 {
            if index == 0 {
                s.set(1, 0, C::one());
            } else {
                assert!(nvars == 2 && index == 1, "variable index out of range");
                s.set(0, 1, C::one());
            }
        }
        s
    }

    /// a·x + b·y as a two-variable series.
    pub fn linear(a: C, b: C, order: u32) -> Self {
        let mut s = Self::zero(2, order);
        if order >= 1 {
            s.set(1, 0, a);
            s.set(0, 1, b);
        }
        s
    }

    pub fn nvars(&self) -> u8 {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn weights(&self) -> [u32; 2] {
        self.weights
    }

    pub fn degree(&self, i: usize, j: usize) -> u32 {
        self.weights[0] * i as u32 + self.weights[1] * j as u32
    }

    fn row_len(&self, i: usize) -> usize {
        if i + 1 < self.row_start.len() {
            self.row_start[i + 1] - self.row_start[i]
        } else {
            0
        }
    }

    fn index(&self, i: usize, j: usize) -> Option<usize> {
        (j < self.row_len(i)).then(|| self.row_start[i] + j)
    }

    pub fn in_range(&self, i: usize, j: usize) -> bool {
        self.index(i, j).is_some()
    }

    /// Coefficient of x^i y^j; zero outside the truncation window.
    pub fn coeff(&self, i: usize, j: usize) -> C {
        self.index(i, j)
            .map_or_else(C::zero, |k| self.coeffs[k].clone())
    }

    pub fn coeff_ref(&self, i: usize, j: usize) -> Option<&C> {
        self.index(i, j).map(|k| &self.coeffs[k])
    }

    /// Sets a coefficient; panics outside the truncation window.
    pub fn set(&mut self, i: usize, j: usize, c: C) {
        let k = self
            .index(i, j)
            .unwrap_or_else(|| panic!("x^{i} y^{j} beyond order {}", self.order));
        self.coeffs[k] = c;
    }

    pub fn add_to(&mut self, i: usize, j: usize, c: &C) {
        if let Some(k) = self.index(i, j) {
            self.coeffs[k].add_assign(c);
        }
    }

    /// All exponent pairs in the window, row by row.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for i in 0..self.row_start.len() - 1 {
            for j in 0..self.row_len(i) {
                out.push((i, j));
            }
        }
        out
    }

    /// Nonzero terms as `(i, j, coeff)`, row by row.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &C)> + '_ {
        self.positions()
            .into_iter()
            .map(move |(i, j)| (i, j, &self.coeffs[self.row_start[i] + j]))
            .filter(|(_, _, c)| !c.is_zero())
    }

    fn positions_by_degree(&self) -> Vec<(usize, usize)> {
        let mut p = self.positions();
        p.sort_by_key(|&(i, j)| (self.degree(i, j), i));
        p
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.weights != other.weights {
            return Err(Error::ShapeMismatch(format!(
                "{} vars weights {:?} vs {} vars weights {:?}",
                self.nvars, self.weights, other.nvars, other.weights
            )));
        }
        Ok(())
    }

    /// Restriction to a lower order.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        let mut out = self.zero_like(order);
        for (i, j) in out.positions() {
            out.set(i, j, self.coeff(i, j));
        }
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries {
            nvars: self.nvars,
            weights: self.weights,
            order: self.order,
            row_start: self.row_start.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other).expect("series shapes agree");
        let mut out = self.truncate(self.order.min(other.order));
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            let (i, j) = out_pos(&out.row_start, k);
            if let Some(o) = other.coeff_ref(i, j) {
                c.add_assign(o);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = c.scale(r);
        }
        out
    }

    pub fn mul_coeff(&self, a: &C) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = c.mul(a);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_shape(other).expect("series shapes agree");
        let order = self.order.min(other.order);
        let mut out = self.zero_like(order);
        let [w0, w1] = self.weights;
        for (i1, j1, a) in self.terms() {
            let d1 = self.degree(i1, j1);
            if d1 > order {
                continue;
            }
            let rest = order - d1;
            for i2 in 0..=(rest / w0) as usize {
                let jmax = if self.nvars == 1 {
                    0
                } else {
                    ((rest - w0 * i2 as u32) / w1) as usize
                };
                for j2 in 0..=jmax {
                    if let Some(b) = other.coeff_ref(i2, j2) {
                        if !b.is_zero() {
                            let k = out.index(i1 + i2, j1 + j2).expect("in window");
                            out.coeffs[k].add_mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one_like(self);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    fn one_like(&self) -> Self {
        let mut s = self.zero_like(self.order);
        s.set(0, 0, C::one());
        s
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeff(0, 0).try_inverse().ok_or(Error::NotInvertible)?;
        let mut q = self.zero_like(self.order);
        for (i, j) in self.positions_by_degree() {
            let mut acc = if i == 0 && j == 0 { C::one() } else { C::zero() };
            for a in 0..=i {
                for b in 0..=j {
                    if (a, b) == (0, 0) {
                        continue;
                    }
                    if let Some(f) = self.coeff_ref(a, b) {
                        if !f.is_zero() {
                            let g = q.coeff(i - a, j - b);
                            acc.sub_assign(&f.mul(&g));
                        }
                    }
                }
            }
            q.set(i, j, acc.mul(&inv0));
        }
        Ok(q)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.mul(&other.inverse()?))
    }

    /// exp of a series with zero constant term, via E(g) = E(f)·g for the
    /// weighted Euler operator E.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0, 0).is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let mut g = self.zero_like(self.order);
        g.set(0, 0, C::one());
        for (i, j) in self.positions_by_degree().into_iter().skip(1) {
            let d = self.degree(i, j);
            let mut acc = C::zero();
            for a in 0..=i {
                for b in 0..=j {
                    if (a, b) == (0, 0) {
                        continue;
                    }
                    if let Some(f) = self.coeff_ref(a, b) {
                        if !f.is_zero() {
                            let w = Rational::from(self.degree(a, b));
                            acc.add_mul(&f.scale(&w), &g.coeff(i - a, j - b));
                        }
                    }
                }
            }
            g.set(i, j, acc.scale(&Rational::from((1, d))));
        }
        Ok(g)
    }

    /// log of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        if self.coeff(0, 0) != C::one() {
            return Err(Error::InvalidArgument(
                "log needs constant term 1".into(),
            ));
        }
        let mut h = self.zero_like(self.order);
        for (i, j) in self.positions_by_degree().into_iter().skip(1) {
            let d = self.degree(i, j);
            let mut acc = self.coeff(i, j).scale(&Rational::from(d));
            for a in 0..=i {
                for b in 0..=j {
                    if (a, b) == (0, 0) || (a, b) == (i, j) {
                        continue;
                    }
                    let ha = h.coeff(a, b);
                    if !ha.is_zero() {
                        let w = Rational::from(self.degree(a, b));
                        acc.sub_assign(&ha.scale(&w).mul(&self.coeff(i - a, j - b)));
                    }
                }
            }
            h.set(i, j, acc.scale(&Rational::from((1, d))));
        }
        Ok(h)
    }

    /// Multiplies the coefficient of x^i y^j by a^i b^j.
    pub fn scale_vars(&self, a: &Rational, b: &Rational) -> Self {
        let mut out = self.clone();
        for (i, j) in self.positions() {
            let f = a.pow_ref_i(i) * b.pow_ref_i(j);
            let k = out.index(i, j).expect("in window");
            out.coeffs[k] = out.coeffs[k].scale(&f);
        }
        out
    }

    /// Swaps the two variables of a unit-weight series.
    pub fn swap_vars(&self) -> Self {
        assert!(self.nvars == 2 && self.weights == [1, 1]);
        let mut out = self.zero_like(self.order);
        for (i, j) in self.positions() {
            out.set(j, i, self.coeff(i, j));
        }
        out
    }

    /// Exact division by x; fails when a term free of x is present.
    pub fn div_by_x(&self) -> Result<Self> {
        if self.weights[0] > self.order {
            return Ok(self.zero_like(0));
        }
        let mut out = self.zero_like(self.order - self.weights[0]);
        for j in 0..self.row_len(0) {
            if !self.coeff(0, j).is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "y^{j} term is not divisible by x"
                )));
            }
        }
        for (i, j) in out.positions() {
            out.set(i, j, self.coeff(i + 1, j));
        }
        Ok(out)
    }

    /// f(g) for a one-variable `self` and a series `g` without constant term.
    pub fn compose(&self, g: &TruncSeries<C>) -> Result<TruncSeries<C>> {
        assert_eq!(self.nvars, 1, "outer series must have one variable");
        if !g.coeff(0, 0).is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let n = self.order as usize;
        let mut acc = g.zero_like(g.order);
        acc.set(0, 0, self.coeff(n, 0));
        for i in (0..n).rev() {
            acc = acc.mul(g);
            acc.add_to(0, 0, &self.coeff(i, 0));
        }
        Ok(acc)
    }

    /// f(l1, l2) for a two-variable unit-weight `self` and series l1, l2
    /// without constant terms.
    pub fn substitute(&self, l1: &TruncSeries<C>, l2: &TruncSeries<C>) -> Result<TruncSeries<C>> {
        assert!(self.nvars == 2 && self.weights == [1, 1]);
        l1.check_shape(l2)?;
        if !l1.coeff(0, 0).is_zero() || !l2.coeff(0, 0).is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let order = l1.order.min(l2.order);
        let mut p1 = vec![l1.one_like().truncate(order)];
        let mut p2 = vec![l2.one_like().truncate(order)];
        for k in 1..=self.order as usize {
            p1.push(p1[k - 1].mul(l1));
            p2.push(p2[k - 1].mul(l2));
        }
        let mut out = l1.zero_like(order);
        for (i, j, c) in self.terms() {
            out = out.add(&p1[i].mul(&p2[j]).mul_coeff(c));
        }
        Ok(out)
    }

    /// Positions where `self` and `other` differ, up to the smaller order.
    pub fn mismatches(&self, other: &Self) -> Vec<(usize, usize)> {
        let order = self.order.min(other.order);
        self.zero_like(order)
            .positions()
            .into_iter()
            .filter(|&(i, j)| self.coeff(i, j) != other.coeff(i, j))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|(i, j, c)| {
                let exp = if self.nvars == 1 {
                    serde_json::json!([i])
                } else {
                    serde_json::json!([i, j])
                };
                serde_json::json!({ "exp": exp, "coeff": c.to_json() })
            })
            .collect();
        let mut obj = serde_json::json!({ "order": self.order, "terms": terms });
        if self.weights != [1, 1] {
            obj["weights"] = serde_json::json!(self.weights);
        }
        obj
    }
}

fn out_pos(row_start: &[usize], k: usize) -> (usize, usize) {
    let i = row_start.partition_point(|&s| s <= k) - 1;
    (i, k - row_start[i])
}

trait PowI {
    fn pow_ref_i(&self, n: usize) -> Rational;
}

impl PowI for Rational {
    fn pow_ref_i(&self, n: usize) -> Rational {
        let mut acc = Rational::from(1);
        for _ in 0..n {
            acc *= self;
        }
        acc
    }
}

impl<C: Coeff> Serialize for TruncSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v = self.to_json();
        let mut st = s.serialize_struct("TruncSeries", 3)?;
        st.serialize_field("order", &v["order"])?;
        if let Some(w) = v.get("weights") {
            st.serialize_field("weights", w)?;
        }
        st.serialize_field("terms", &v["terms"])?;
        st.end()
    }
}

/// Multiplies or divides two series after checking that their shapes agree.
pub fn series_mul_div<C: Coeff>(
    a: &TruncSeries<C>,
    b: &TruncSeries<C>,
    mode: MulDiv,
) -> Result<TruncSeries<C>> {
    a.check_shape(b)?;
    match mode {
        MulDiv::Mul => Ok(a.mul(b)),
        MulDiv::Div => a.div(b),
    }
}

/// exp for [`MulDiv`]-style free-function access.
pub fn series_exp<C: Coeff>(f: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    f.exp()
}

pub fn series_log<C: Coeff>(f: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    f.log()
}

/// Coefficients of the one-variable series sin(πx)/(πx) over ℚ[ζ₂], using π² = 6ζ₂.
pub fn sinc_pi(order: u32) -> TruncSeries<ZetaPoly> {
    let mut s = TruncSeries::zero(1, order);
    let six_z2 = ZetaPoly::zeta(2).scale(&Rational::from(6));
    let mut pow = ZetaPoly::one();
    let mut fact = rug::Integer::from(1);
    for m in 0..=(order / 2) {
        if m > 0 {
            pow = &pow * &six_z2;
            fact *= (2 * m) * (2 * m + 1);
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        s.set(2 * m as usize, 0, pow.scale(&Rational::from((sign, fact.clone()))));
    }
    s
}
