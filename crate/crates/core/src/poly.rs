//! Sparse multivariate polynomials in `x_1..x_v` over three coefficient
//! domains, plus grid interpolation and Chinese-remainder reconstruction.
//!
//! * [`ModPoly`]: residues modulo a single-precision prime.
//! * [`IntPoly`]: nonnegative arbitrary-precision integers (counts).
//! * [`ZPoly`]: signed arbitrary-precision integers (matrix entries and
//!   general determinants).
//!
//! Terms live in a `BTreeMap` keyed by [`ExponentVector`], so iteration is in
//! lexicographic exponent order and zero coefficients are never stored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modp::{add_mod, inv_mod, mul_mod, pow_mod, reduce_bigint, reduce_biguint, sub_mod};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn zero(vars: usize) -> Self {
        Self(vec![0; vars])
    }

    /// `x_var` as an exponent vector (0-based variable index).
    pub fn unit(vars: usize, var: usize) -> Self {
        let mut e = vec![0; vars];
        e[var] = 1;
        Self(e)
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn max_degree(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        self.0
            .iter()
            .zip(point)
            .fold(1 % p, |acc, (&e, &x)| mul_mod(acc, pow_mod(x, u64::from(e), p), p))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// Polynomial with coefficients in `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    vars: usize,
    modulus: u64,
    terms: BTreeMap<ExponentVector, u64>,
}

impl ModPoly {
    pub fn zero(vars: usize, modulus: u64) -> Self {
        Self {
            vars,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    /// Collects terms, reducing coefficients mod `modulus` and summing
    /// repeated monomials.
    pub fn from_terms<I>(vars: usize, modulus: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, u64)>,
    {
        let mut poly = Self::zero(vars, modulus);
        for (exp, c) in terms {
            poly.add_term(exp, c % modulus);
        }
        poly
    }

    fn add_term(&mut self, exp: ExponentVector, c: u64) {
        assert_eq!(exp.vars(), self.vars, "exponent vector length mismatch");
        let p = self.modulus;
        let slot = self.terms.entry(exp.clone()).or_insert(0);
        *slot = add_mod(*slot, c, p);
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> u64 {
        self.terms.get(&ExponentVector(exp.to_vec())).copied().unwrap_or(0)
    }

    /// Value at `point` (one residue per variable).
    pub fn eval(&self, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.vars, "point length mismatch");
        let p = self.modulus;
        self.terms.iter().fold(0, |acc, (exp, &c)| {
            add_mod(acc, mul_mod(c, exp.eval_mod(point, p), p), p)
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        let mut out = self.clone();
        for (exp, &c) in &other.terms {
            out.add_term(exp.clone(), c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        let p = self.modulus;
        let mut out = Self::zero(self.vars, p);
        for (ea, &a) in &self.terms {
            for (eb, &b) in &other.terms {
                out.add_term(ea.mul(eb), mul_mod(a, b, p));
            }
        }
        out
    }
}

/// Polynomial with nonnegative arbitrary-precision integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    vars: usize,
    terms: BTreeMap<ExponentVector, BigUint>,
}

impl IntPoly {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, BigUint)>,
    {
        let mut out = Self::zero(vars);
        for (exp, c) in terms {
            assert_eq!(exp.vars(), vars, "exponent vector length mismatch");
            if c.is_zero() {
                continue;
            }
            *out.terms.entry(exp).or_default() += c;
        }
        out
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigUint> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^alpha`, zero when the monomial is absent.
    pub fn coeff(&self, alpha: &[u32]) -> BigUint {
        self.terms
            .get(&ExponentVector(alpha.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Sum of all coefficients, i.e. the value at `x = (1, ..., 1)`.
    pub fn coefficient_sum(&self) -> BigUint {
        self.terms.values().sum()
    }

    pub fn max_coefficient(&self) -> BigUint {
        self.terms.values().max().cloned().unwrap_or_default()
    }

    pub fn reduce_mod(&self, p: u64) -> ModPoly {
        ModPoly::from_terms(
            self.vars,
            p,
            self.terms.iter().map(|(e, c)| (e.clone(), reduce_biguint(c, p))),
        )
    }
}

impl fmt::Display for IntPoly {
    /// Terms in ascending exponent order, rendered `C * x1^a1 * x2^a2` with
    /// zero-exponent factors omitted; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (exp, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (var, &e) in exp.as_slice().iter().enumerate() {
                if e > 0 {
                    write!(f, " * x{}^{}", var + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// Polynomial with signed arbitrary-precision coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPoly {
    vars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl ZPoly {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: impl Into<BigInt>) -> Self {
        Self::from_terms(vars, [(ExponentVector::zero(vars), c.into())])
    }

    pub fn from_terms<I>(vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut out = Self::zero(vars);
        for (exp, c) in terms {
            out.add_term(exp, c);
        }
        out
    }

    pub fn add_term(&mut self, exp: ExponentVector, c: BigInt) {
        assert_eq!(exp.vars(), self.vars, "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> BigInt {
        self.terms
            .get(&ExponentVector(exp.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Largest exponent of any single variable across all terms.
    pub fn max_var_degree(&self) -> u32 {
        self.terms.keys().map(ExponentVector::max_degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars);
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                out.add_term(ea.mul(eb), a * b);
            }
        }
        out
    }

    pub fn reduce_mod(&self, p: u64) -> ModPoly {
        ModPoly::from_terms(
            self.vars,
            p,
            self.terms.iter().map(|(e, c)| (e.clone(), reduce_bigint(c, p))),
        )
    }

    /// Substitutes `x_c := value` for every variable.
    pub fn eval_int(&self, point: &[i64]) -> BigInt {
        assert_eq!(point.len(), self.vars, "point length mismatch");
        self.terms
            .iter()
            .map(|(exp, c)| {
                exp.as_slice()
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, &x)| acc * BigInt::from(x).pow(e))
            })
            .sum()
    }

    pub fn to_nonnegative(&self) -> Option<IntPoly> {
        if self.terms.values().any(Signed::is_negative) {
            return None;
        }
        Some(IntPoly::from_terms(
            self.vars,
            self.terms
                .iter()
                .map(|(e, c)| (e.clone(), c.magnitude().clone())),
        ))
    }
}

impl From<&IntPoly> for ZPoly {
    fn from(p: &IntPoly) -> Self {
        Self::from_terms(
            p.vars,
            p.terms.iter().map(|(e, c)| (e.clone(), BigInt::from(c.clone()))),
        )
    }
}

/// Tensor-product grid of evaluation points, one list of distinct residues
/// per variable. Grid points are enumerated row-major with the last
/// variable varying fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalGrid {
    modulus: u64,
    axes: Vec<Vec<u64>>,
}

impl EvalGrid {
    pub fn new(axes: Vec<Vec<u64>>, modulus: u64) -> Result<Self> {
        for (var, axis) in axes.iter().enumerate() {
            if modulus as u128 <= axis.len() as u128 {
                return Err(Error::ModulusTooSmall {
                    modulus,
                    points: axis.len(),
                });
            }
            let distinct: BTreeSet<u64> = axis.iter().map(|x| x % modulus).collect();
            if distinct.len() != axis.len() || axis.is_empty() {
                return Err(Error::RepeatedPoint { var, modulus });
            }
        }
        let axes = axes
            .into_iter()
            .map(|a| a.into_iter().map(|x| x % modulus).collect())
            .collect();
        Ok(Self { modulus, axes })
    }

    /// `points` residues `0, 1, ..., points - 1` on every one of `vars` axes.
    pub fn standard(vars: usize, points: usize, modulus: u64) -> Result<Self> {
        Self::new(vec![(0..points as u64).collect(); vars], modulus)
    }

    pub fn vars(&self) -> usize {
        self.axes.len()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Vec::len).collect()
    }

    /// Number of grid points (1 when there are no variables).
    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinates of the grid point with the given flat index.
    pub fn point(&self, mut flat: usize) -> Vec<u64> {
        let mut out = vec![0; self.axes.len()];
        for (var, axis) in self.axes.iter().enumerate().rev() {
            out[var] = axis[flat % axis.len()];
            flat /= axis.len();
        }
        out
    }

    /// Values of `poly` at every grid point, in flat-index order.
    pub fn evaluate(&self, poly: &ModPoly) -> Vec<u64> {
        (0..self.len()).map(|i| poly.eval(&self.point(i))).collect()
    }
}

/// Coefficient matrix of the Lagrange basis on `xs`: row `i` holds the
/// monomial coefficients of the polynomial that is 1 at `xs[i]` and 0 at
/// the other nodes.
fn lagrange_basis(xs: &[u64], p: u64) -> Vec<Vec<u64>> {
    let d = xs.len();
    // master = prod (x - x_j), coefficients low to high, degree d
    let mut master = vec![0u64; d + 1];
    master[0] = 1;
    for &xj in xs {
        let neg = sub_mod(0, xj, p);
        for k in (0..=d).rev() {
            let shifted = if k > 0 { master[k - 1] } else { 0 };
            master[k] = add_mod(shifted, mul_mod(master[k], neg, p), p);
        }
    }
    xs.iter()
        .enumerate()
        .map(|(i, &xi)| {
            // synthetic division of master by (x - xi)
            let mut quot = vec![0u64; d];
            let mut carry = 0u64;
            for k in (0..d).rev() {
                carry = add_mod(master[k + 1], mul_mod(carry, xi, p), p);
                quot[k] = carry;
            }
            let denom = xs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(1 % p, |acc, (_, &xj)| mul_mod(acc, sub_mod(xi, xj, p), p));
            let scale = inv_mod(denom, p).expect("grid points are distinct mod p");
            quot.iter().map(|&c| mul_mod(c, scale, p)).collect()
        })
        .collect()
}

/// Recovers the unique polynomial whose degree in each variable is below the
/// grid's axis length and which takes `values` on the grid. Runs one
/// univariate Lagrange pass per variable over the dense value tensor.
pub fn interpolate(values: &[u64], grid: &EvalGrid) -> Result<ModPoly> {
    if values.len() != grid.len() {
        return Err(Error::Shape(format!(
            "{} values for a grid of {} points",
            values.len(),
            grid.len()
        )));
    }
    let p = grid.modulus;
    let shape = grid.shape();
    let mut tensor: Vec<u64> = values.iter().map(|v| v % p).collect();
    let mut fiber = Vec::new();
    for (var, axis) in grid.axes.iter().enumerate() {
        let d = axis.len();
        let basis = lagrange_basis(axis, p);
        let stride: usize = shape[var + 1..].iter().product();
        let block = stride * d;
        for start in (0..tensor.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                fiber.clear();
                fiber.extend((0..d).map(|k| tensor[base + k * stride]));
                for k in 0..d {
                    let c = fiber
                        .iter()
                        .zip(&basis)
                        .fold(0, |acc, (&v, row)| add_mod(acc, mul_mod(v, row[k], p), p));
                    tensor[base + k * stride] = c;
                }
            }
        }
    }
    let vars = grid.vars();
    let mut out = ModPoly::zero(vars, p);
    for (flat, &c) in tensor.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut exps = vec![0u32; vars];
        let mut rest = flat;
        for var in (0..vars).rev() {
            exps[var] = (rest % shape[var]) as u32;
            rest /= shape[var];
        }
        out.terms.insert(ExponentVector(exps), c);
    }
    Ok(out)
}

/// Per-monomial CRT state: incremental Garner-style accumulation.
fn crt_merge(residues: &[ModPoly]) -> Result<(usize, BigUint, BTreeMap<ExponentVector, BigUint>)> {
    let Some(first) = residues.first() else {
        return Err(Error::Shape("CRT needs at least one residue polynomial".into()));
    };
    let vars = first.vars;
    let mut seen = BTreeSet::new();
    for r in residues {
        if r.vars != vars {
            return Err(Error::Shape("residue polynomials differ in variable count".into()));
        }
        if !seen.insert(r.modulus) {
            return Err(Error::DuplicateModulus(r.modulus));
        }
    }
    let monomials: BTreeSet<&ExponentVector> =
        residues.iter().flat_map(|r| r.terms.keys()).collect();

    let mut product = BigUint::one();
    let mut acc: BTreeMap<ExponentVector, BigUint> =
        monomials.iter().map(|&e| (e.clone(), BigUint::zero())).collect();
    for r in residues {
        let p = r.modulus;
        let prod_inv = inv_mod(reduce_biguint(&product, p), p)
            .ok_or_else(|| Error::Shape(format!("modulus {p} is not coprime to the others")))?;
        for (exp, x) in acc.iter_mut() {
            let target = r.terms.get(exp).copied().unwrap_or(0);
            let t = mul_mod(sub_mod(target, reduce_biguint(x, p), p), prod_inv, p);
            *x += &product * t;
        }
        product *= p;
    }
    Ok((vars, product, acc))
}

/// Combines residue polynomials modulo distinct primes into the polynomial
/// whose coefficients are the canonical representatives in `[0, prod p_i)`.
pub fn crt_combine(residues: &[ModPoly]) -> Result<IntPoly> {
    let (vars, _, acc) = crt_merge(residues)?;
    Ok(IntPoly::from_terms(vars, acc))
}

/// Like [`crt_combine`] but maps each coefficient into the symmetric range
/// `(-P/2, P/2]`, `P = prod p_i`.
pub fn crt_combine_signed(residues: &[ModPoly]) -> Result<ZPoly> {
    let (vars, product, acc) = crt_merge(residues)?;
    let half = &product >> 1usize;
    Ok(ZPoly::from_terms(
        vars,
        acc.into_iter().map(|(e, x)| {
            let c = if x > half {
                BigInt::from(x) - BigInt::from(product.clone())
            } else {
                BigInt::from(x)
            };
            (e, c)
        }),
    ))
}

/// Largest `k` with `r^k | c`.
pub fn valuation(c: &BigUint, r: u64) -> Result<u32> {
    if c.is_zero() {
        return Err(Error::ZeroValuation);
    }
    assert!(r >= 2, "valuation base must be at least 2");
    let r = BigUint::from(r);
    let mut k = 0;
    let mut rest = c.clone();
    loop {
        let (q, rem) = rest.div_rem(&r);
        if !rem.is_zero() {
            return Ok(k);
        }
        rest = q;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    #[test]
    fn eval_examples() {
        let p = ModPoly::from_terms(1, 7, [(ev(&[1]), 1), (ev(&[0]), 2)]);
        assert_eq!(p.eval(&[3]), 5);
        assert_eq!(ModPoly::zero(2, 7).eval(&[3, 4]), 0);
        let xy = ModPoly::from_terms(2, 5, [(ev(&[1, 1]), 1)]);
        assert_eq!(xy.eval(&[2, 3]), 1);
    }

    #[test]
    fn no_zero_terms_stored() {
        let p = ModPoly::from_terms(1, 7, [(ev(&[1]), 3), (ev(&[1]), 4), (ev(&[0]), 14)]);
        assert!(p.is_zero());
        let z = ZPoly::from_terms(1, [(ev(&[1]), BigInt::from(3)), (ev(&[1]), BigInt::from(-3))]);
        assert!(z.is_zero());
    }

    #[test]
    fn interpolate_examples() {
        let grid = EvalGrid::new(vec![vec![0, 1]], 101).unwrap();
        let p = interpolate(&[1, 2], &grid).unwrap();
        assert_eq!(p, ModPoly::from_terms(1, 101, [(ev(&[1]), 1), (ev(&[0]), 1)]));

        let grid = EvalGrid::standard(2, 3, 101).unwrap();
        let p = interpolate(&[9; 9], &grid).unwrap();
        assert_eq!(p, ModPoly::from_terms(2, 101, [(ev(&[0, 0]), 9)]));

        // x1*x2 + 3, values computed by direct evaluation on {0,1}^2
        let target = ModPoly::from_terms(2, 101, [(ev(&[1, 1]), 1), (ev(&[0, 0]), 3)]);
        let grid = EvalGrid::standard(2, 2, 101).unwrap();
        let values = grid.evaluate(&target);
        assert_eq!(values, vec![3, 3, 3, 4]);
        assert_eq!(interpolate(&values, &grid).unwrap(), target);

        assert!(matches!(interpolate(&[1, 2, 3], &grid), Err(Error::Shape(_))));
    }

    #[test]
    fn interpolate_without_variables() {
        let grid = EvalGrid::standard(0, 5, 11).unwrap();
        assert_eq!(grid.len(), 1);
        let p = interpolate(&[7], &grid).unwrap();
        assert_eq!(p.coeff(&[]), 7);
    }

    #[test]
    fn grid_validation() {
        assert!(matches!(
            EvalGrid::new(vec![vec![1, 8]], 7),
            Err(Error::RepeatedPoint { var: 0, .. })
        ));
        assert!(matches!(
            EvalGrid::standard(1, 7, 7),
            Err(Error::ModulusTooSmall { .. })
        ));
    }

    #[test]
    fn crt_examples() {
        let a = ModPoly::from_terms(0, 3, [(ev(&[]), 2)]);
        let b = ModPoly::from_terms(0, 5, [(ev(&[]), 3)]);
        assert_eq!(crt_combine(&[a.clone(), b.clone()]).unwrap().coeff(&[]), BigUint::from(8u32));
        assert_eq!(crt_combine_signed(&[a.clone(), b]).unwrap().coeff(&[]), BigInt::from(-7));

        let zeros = [ModPoly::zero(1, 3), ModPoly::zero(1, 5)];
        assert!(crt_combine(&zeros).unwrap().is_zero());

        assert_eq!(crt_combine(&[a.clone(), a]), Err(Error::DuplicateModulus(3)));
    }

    #[test]
    fn coeff_examples() {
        let p = IntPoly::from_terms(
            1,
            [(ev(&[1]), BigUint::from(3u32)), (ev(&[0]), BigUint::from(5u32))],
        );
        assert_eq!(p.coeff(&[1]), BigUint::from(3u32));
        assert_eq!(p.coeff(&[7]), BigUint::zero());
        assert_eq!(p.to_string(), "5 + 3 * x1^1");
        assert_eq!(IntPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn valuation_examples() {
        let c = BigUint::from(12u32);
        assert_eq!(valuation(&c, 2), Ok(2));
        assert_eq!(valuation(&c, 3), Ok(1));
        assert_eq!(valuation(&c, 5), Ok(0));
        assert_eq!(valuation(&BigUint::zero(), 5), Err(Error::ZeroValuation));
    }

    #[test]
    fn lagrange_rows_are_indicators() {
        let xs = [0u64, 1, 2, 5];
        let p = 13;
        let basis = lagrange_basis(&xs, p);
        for (i, row) in basis.iter().enumerate() {
            let poly = ModPoly::from_terms(
                1,
                p,
                row.iter().enumerate().map(|(k, &c)| (ev(&[k as u32]), c)),
            );
            for (j, &x) in xs.iter().enumerate() {
                assert_eq!(poly.eval(&[x]), u64::from(i == j));
            }
        }
    }
}
