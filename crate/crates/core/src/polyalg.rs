//! Sparse multivariate polynomials on g x g with exact coefficients.
//!
//! The ring has 2n variables x_1..x_n, y_1..y_n in a fixed graded-lex term
//! order. Pencil substitution temporarily extends the ring by two formal
//! variables (a, b) and collects (a, b)-coefficients, mirroring the defining
//! expansion p(ax + by) = sum a^m b^n p_{m,n}(x, y).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::{Field, PrimeField, Rationals};

/// Exponent vector in the ambient variable order.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // graded-lex: total degree first, then lexicographic on exponents
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the field `F`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<F: Field> {
    pub field: F,
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        MultiPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !p.field.is_zero(&c) {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(field: F, nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut exps = vec![0u16; nvars];
        exps[index] = 1;
        let one = field.one();
        let mut p = Self::zero(field, nvars);
        p.terms.insert(Monomial(exps), one);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = self.field.add(&old, &c);
                if !self.field.is_zero(&sum) {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.field.same_domain(&other.field)?;
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        if self.field.is_zero(c) {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), self.field.mul(v, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(self.field.clone(), self.nvars, self.field.one());
        for _ in 0..e {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// Exact formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            let factor = self.field.from_i64(e as i64);
            out.add_term(Monomial(exps), self.field.mul(c, &factor));
        }
        out
    }

    /// Exact evaluation at a point with one scalar per variable.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = f.mul(&term, &point[i]);
                }
            }
            acc = f.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Total degree of every term when homogeneous, else `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.total_degree();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg.or(Some(0))
    }

    /// For a polynomial on g x g (2n variables), the common (x-degree,
    /// y-degree) of all terms when bihomogeneous, else `None`.
    pub fn bidegree(&self, n: usize) -> Option<(u32, u32)> {
        assert_eq!(self.nvars, 2 * n);
        let mut bideg = None;
        for m in self.terms.keys() {
            let a: u32 = m.0[..n].iter().map(|&e| e as u32).sum();
            let b: u32 = m.0[n..].iter().map(|&e| e as u32).sum();
            match bideg {
                None => bideg = Some((a, b)),
                Some(prev) if prev != (a, b) => return None,
                _ => {}
            }
        }
        bideg.or(Some((0, 0)))
    }

    /// Textual form `coeff*x1^a1*...*yn^bn` with ` + ` separators, leading
    /// term first; variables named for the g x g ring with n = nvars/2.
    pub fn to_text(&self) -> String
    where
        F::Elem: std::fmt::Display,
    {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        assert_eq!(self.nvars % 2, 0, "textual format is for the g x g ring");
        let n = self.nvars / 2;
        let mut pieces = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut s = String::new();
            write!(s, "{c}").unwrap();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if i < n {
                    format!("x{}", i + 1)
                } else {
                    format!("y{}", i + 1 - n)
                };
                if e == 1 {
                    write!(s, "*{name}").unwrap();
                } else {
                    write!(s, "*{name}^{e}").unwrap();
                }
            }
            pieces.push(s);
        }
        pieces.join(" + ")
    }
}

impl MultiPoly<Rationals> {
    /// Image under coefficient-wise reduction mod p.
    pub fn reduce_mod(&self, fp: &PrimeField) -> Result<MultiPoly<PrimeField>> {
        let mut out = MultiPoly::zero(*fp, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), fp.reduce_rat(c)?);
        }
        Ok(out)
    }
}

/// All exponent vectors over 2n variables with x-degree `a` and y-degree `b`,
/// in the ambient term order. Count is C(a+n-1, a) * C(b+n-1, b).
pub fn monomial_basis(n: usize, bidegree: (u32, u32)) -> Vec<Monomial> {
    let xs = compositions(bidegree.0, n);
    let ys = compositions(bidegree.1, n);
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for x in &xs {
        for y in &ys {
            let mut exps = Vec::with_capacity(2 * n);
            exps.extend_from_slice(x);
            exps.extend_from_slice(y);
            out.push(Monomial(exps));
        }
    }
    out.sort();
    out
}

/// All ways to write `total` as an ordered sum of `parts` naturals.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u16>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut current = vec![0u16; parts];
    fn rec(out: &mut Vec<Vec<u16>>, current: &mut Vec<u16>, idx: usize, remaining: u32) {
        if idx + 1 == current.len() {
            current[idx] = remaining as u16;
            out.push(current.clone());
            return;
        }
        for v in 0..=remaining {
            current[idx] = v as u16;
            rec(out, current, idx + 1, remaining - v);
        }
    }
    rec(&mut out, &mut current, 0, total);
    out
}

/// Pencil expansion of a homogeneous polynomial in the x-variables:
/// p(ax + by) = sum_{m,n} a^m b^n p_{m,n}(x, y). Returns the nonzero
/// components keyed by (m, n).
pub fn substitute_pencil<F: Field>(p: &MultiPoly<F>) -> Result<BTreeMap<(u32, u32), MultiPoly<F>>> {
    let nv = p.nvars;
    assert_eq!(nv % 2, 0);
    let n = nv / 2;
    for m in p.terms.keys() {
        if m.0[n..].iter().any(|&e| e != 0) {
            return Err(Error::InvalidArgument(
                "pencil substitution expects a polynomial in the x-variables".into(),
            ));
        }
    }
    if p.homogeneous_degree().is_none() {
        return Err(Error::Inhomogeneous);
    }
    // Extended ring: variables (a, b, x_1..x_n, y_1..y_n).
    let ext = nv + 2;
    let f = p.field.clone();
    let mut pencil_vars = Vec::with_capacity(n);
    for i in 0..n {
        // a*x_i + b*y_i
        let mut s = MultiPoly::zero(f.clone(), ext);
        let mut ax = vec![0u16; ext];
        ax[0] = 1;
        ax[2 + i] = 1;
        s.add_term(Monomial(ax), f.one());
        let mut by = vec![0u16; ext];
        by[1] = 1;
        by[2 + n + i] = 1;
        s.add_term(Monomial(by), f.one());
        pencil_vars.push(s);
    }
    let mut substituted = MultiPoly::zero(f.clone(), ext);
    for (m, c) in &p.terms {
        let mut term = MultiPoly::constant(f.clone(), ext, c.clone());
        for (i, &e) in m.0[..n].iter().enumerate() {
            if e > 0 {
                term = term.mul(&pencil_vars[i].pow(e as u32))?;
            }
        }
        substituted = substituted.add(&term)?;
    }
    // Collect coefficients of a^m b^n back into the 2n-variable ring.
    let mut components: BTreeMap<(u32, u32), MultiPoly<F>> = BTreeMap::new();
    for (m, c) in &substituted.terms {
        let key = (m.0[0] as u32, m.0[1] as u32);
        let inner = Monomial(m.0[2..].to_vec());
        components
            .entry(key)
            .or_insert_with(|| MultiPoly::zero(f.clone(), nv))
            .add_term(inner, c.clone());
    }
    components.retain(|_, poly| !poly.is_zero());
    Ok(components)
}

/// Vector of polynomials: an element of S(g) tensor S(g) tensor g.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyVector<F: Field> {
    pub coords: Vec<MultiPoly<F>>,
}

impl<F: Field> PolyVector<F> {
    pub fn zero(field: F, n: usize) -> Self {
        PolyVector {
            coords: (0..n).map(|_| MultiPoly::zero(field.clone(), 2 * n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.coords.iter().map(|p| p.evaluate(point)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|p| p.is_zero())
    }
}

/// Subset of basis indices as a bitmask, the wedge part of a term.
pub type WedgeSubset = u32;

pub fn subset_from_indices(indices: &[usize]) -> WedgeSubset {
    let mut s = 0u32;
    for &i in indices {
        assert!(i < 32);
        assert!(s & (1 << i) == 0, "duplicate index in wedge subset");
        s |= 1 << i;
    }
    s
}

pub fn subset_indices(s: WedgeSubset) -> Vec<usize> {
    (0..32).filter(|i| s & (1 << i) != 0).collect()
}

/// Sign of merging two disjoint increasing subsets: (-1)^inversions, where
/// an inversion is a pair (s, t) with s in S, t in T and s > t.
pub fn shuffle_sign(s: WedgeSubset, t: WedgeSubset) -> i64 {
    debug_assert_eq!(s & t, 0);
    let mut inversions = 0u32;
    for i in subset_indices(s) {
        inversions += (t & ((1u32 << i) - 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Polynomial-coefficient element of the exterior algebra on g.
#[derive(Clone, PartialEq, Debug)]
pub struct WedgePoly<F: Field> {
    pub field: F,
    pub n: usize,
    pub parts: BTreeMap<WedgeSubset, MultiPoly<F>>,
}

impl<F: Field> WedgePoly<F> {
    pub fn zero(field: F, n: usize) -> Self {
        WedgePoly {
            field,
            n,
            parts: BTreeMap::new(),
        }
    }

    pub fn scalar(field: F, n: usize, p: MultiPoly<F>) -> Self {
        let mut w = Self::zero(field, n);
        if !p.is_zero() {
            w.parts.insert(0, p);
        }
        w
    }

    /// Wedge-degree-1 element from a polynomial vector.
    pub fn from_vector(field: F, v: &PolyVector<F>) -> Self {
        let n = v.dim();
        let mut w = Self::zero(field, n);
        for (i, coord) in v.coords.iter().enumerate() {
            if !coord.is_zero() {
                w.parts.insert(1 << i, coord.clone());
            }
        }
        w
    }

    pub fn add_part(&mut self, s: WedgeSubset, p: MultiPoly<F>) {
        if p.is_zero() {
            return;
        }
        match self.parts.remove(&s) {
            Some(old) => {
                let sum = old.add(&p).expect("same ring");
                if !sum.is_zero() {
                    self.parts.insert(s, sum);
                }
            }
            None => {
                self.parts.insert(s, p);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Graded-commutative exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.field.same_domain(&other.field)?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = Self::zero(self.field.clone(), self.n);
        for (&s, f) in &self.parts {
            for (&t, g) in &other.parts {
                if s & t != 0 {
                    continue;
                }
                let sign = shuffle_sign(s, t);
                let mut prod = f.mul(g)?;
                if sign < 0 {
                    prod = prod.neg();
                }
                out.add_part(s | t, prod);
            }
        }
        Ok(out)
    }

    /// Homogeneous wedge degrees present.
    pub fn wedge_degrees(&self) -> Vec<u32> {
        let mut degs: Vec<u32> = self.parts.keys().map(|s| s.count_ones()).collect();
        degs.sort_unstable();
        degs.dedup();
        degs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Rationals};

    fn xvar(n: usize, i: usize) -> MultiPoly<Rationals> {
        MultiPoly::var(Rationals, 2 * n, i)
    }

    fn yvar(n: usize, i: usize) -> MultiPoly<Rationals> {
        MultiPoly::var(Rationals, 2 * n, n + i)
    }

    #[test]
    fn product_of_variables() {
        let n = 2;
        let p = xvar(n, 0).mul(&yvar(n, 0)).unwrap();
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.bidegree(n), Some((1, 1)));
    }

    #[test]
    fn square_of_binomial() {
        let n = 1;
        let p = xvar(n, 0).add(&yvar(n, 0)).unwrap();
        let sq = p.pow(2);
        // x^2 + 2xy + y^2
        assert_eq!(sq.terms.len(), 3);
        assert_eq!(sq.to_text(), "1*x1^2 + 2*x1*y1 + 1*y1^2");
    }

    #[test]
    fn zero_annihilates() {
        let n = 2;
        let z = MultiPoly::zero(Rationals, 2 * n);
        let p = xvar(n, 1);
        assert!(p.mul(&z).unwrap().is_zero());
    }

    #[test]
    fn derivative_examples() {
        let n = 2;
        let p = xvar(n, 0).pow(2);
        assert_eq!(p.partial_derivative(0).to_text(), "2*x1");
        assert!(yvar(n, 0).partial_derivative(0).is_zero());
        let q = xvar(n, 0).mul(&yvar(n, 1)).unwrap();
        assert_eq!(q.partial_derivative(n + 1).to_text(), "1*x1");
    }

    #[test]
    fn monomial_basis_counts() {
        assert_eq!(monomial_basis(3, (1, 1)).len(), 9);
        assert_eq!(monomial_basis(3, (0, 0)).len(), 1);
        assert_eq!(monomial_basis(3, (2, 0)).len(), 6);
    }

    #[test]
    fn pencil_expansion_of_a_square() {
        // p = x1^2 over n = 1: p(ax+by) = a^2 x^2 + 2ab xy + b^2 y^2
        let n = 1;
        let p = xvar(n, 0).pow(2);
        let comps = substitute_pencil(&p).unwrap();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[&(2, 0)].to_text(), "1*x1^2");
        assert_eq!(comps[&(1, 1)].to_text(), "2*x1*y1");
        assert_eq!(comps[&(0, 2)].to_text(), "1*y1^2");
    }

    #[test]
    fn pencil_rejects_inhomogeneous_and_y_terms() {
        let n = 1;
        let p = xvar(n, 0).add(&xvar(n, 0).pow(2)).unwrap();
        assert!(matches!(substitute_pencil(&p), Err(Error::Inhomogeneous)));
        let q = yvar(n, 0);
        assert!(substitute_pencil(&q).is_err());
    }

    #[test]
    fn wedge_basics() {
        let n = 3;
        let one = MultiPoly::constant(Rationals, 2 * n, rat_int(1));
        let mut e1 = WedgePoly::zero(Rationals, n);
        e1.add_part(1 << 0, one.clone());
        let mut e2 = WedgePoly::zero(Rationals, n);
        e2.add_part(1 << 1, one.clone());
        let w = e1.wedge(&e2).unwrap();
        assert_eq!(w.parts.len(), 1);
        assert_eq!(w.parts[&0b11].to_text(), "1");
        assert!(e1.wedge(&e1).unwrap().is_zero());
        // anticommutativity in degree 1
        let ba = e2.wedge(&e1).unwrap();
        assert_eq!(ba.parts[&0b11].to_text(), "-1");
        // associativity
        let mut e3 = WedgePoly::zero(Rationals, n);
        e3.add_part(1 << 2, one);
        let left = e1.wedge(&e2).unwrap().wedge(&e3).unwrap();
        let right = e1.wedge(&e2.wedge(&e3).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}
