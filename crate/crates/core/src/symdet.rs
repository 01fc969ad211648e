//! Exact determinants of symbolic matrices by evaluation and interpolation.
//!
//! For each prime of a [`PrimeBasis`] the matrix is evaluated at every point
//! of a standard grid, a scalar determinant is taken mod p at each point, and
//! the values are interpolated into a [`ModPoly`]. The per-prime results are
//! then merged with the Chinese remainder theorem. The (prime, point) grid
//! is an embarrassingly parallel map run on the [`Engine`]'s thread pool.

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::laplacian::SymbolicMatrix;
use crate::modp::{inv_mod, mul_mod, next_prime, reduce_bigint, sub_mod};
use crate::poly::{crt_combine, crt_combine_signed, interpolate, EvalGrid, IntPoly, ModPoly, ZPoly};

/// Worker pool for the determinant engine. One worker means everything runs
/// on the calling thread.
pub struct Engine {
    workers: usize,
    pool: Option<rayon::ThreadPool>,
}

impl Engine {
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::Workers);
        }
        let pool = if workers > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .map_err(|_| Error::Workers)?,
            )
        } else {
            None
        };
        Ok(Self { workers, pool })
    }

    pub fn sequential() -> Self {
        Self {
            workers: 1,
            pool: None,
        }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// `(0..count).map(f)` with results in index order regardless of the
    /// worker count.
    pub fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match &self.pool {
            Some(pool) => pool.install(|| (0..count).into_par_iter().map(f).collect()),
            None => (0..count).map(f).collect(),
        }
    }
}

impl Default for Engine {
    fn default() -> Self {
        Self::sequential()
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").field("workers", &self.workers).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeBasis {
    primes: Vec<u64>,
    product: BigUint,
}

impl PrimeBasis {
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn product(&self) -> &BigUint {
        &self.product
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// The shortest run of consecutive primes above `lower_bound` whose product
/// exceeds `coeff_bound`.
pub fn select_primes(lower_bound: u64, coeff_bound: &BigUint) -> Result<PrimeBasis> {
    let mut primes = Vec::new();
    let mut product = BigUint::one();
    let mut last = lower_bound.max(2);
    while &product <= coeff_bound || primes.is_empty() {
        last = next_prime(last).ok_or(Error::PrimesExhausted { lower_bound })?;
        primes.push(last);
        product *= last;
    }
    Ok(PrimeBasis { primes, product })
}

/// Determinant of a `dim x dim` row-major matrix over `Z_p` by Gaussian
/// elimination, pivoting on the first nonzero entry of each column.
pub fn det_mod_p(mut a: Vec<u64>, dim: usize, p: u64) -> u64 {
    assert_eq!(a.len(), dim * dim, "matrix is not square");
    let mut det = 1 % p;
    for col in 0..dim {
        let Some(pivot_row) = (col..dim).find(|&r| a[r * dim + col] != 0) else {
            return 0;
        };
        if pivot_row != col {
            for k in col..dim {
                a.swap(col * dim + k, pivot_row * dim + k);
            }
            det = sub_mod(0, det, p);
        }
        let pivot = a[col * dim + col];
        det = mul_mod(det, pivot, p);
        let inv = inv_mod(pivot, p).expect("p is prime");
        for r in col + 1..dim {
            let factor = mul_mod(a[r * dim + col], inv, p);
            if factor == 0 {
                continue;
            }
            for k in col..dim {
                let sub = mul_mod(factor, a[col * dim + k], p);
                a[r * dim + k] = sub_mod(a[r * dim + k], sub, p);
            }
        }
    }
    det
}

/// Matrix entries reduced mod p, each a list of (variables present, coeff).
/// Entries are multilinear so a monomial is just the set of its variables.
struct ResidueMatrix {
    dim: usize,
    p: u64,
    entries: Vec<Vec<(Vec<usize>, u64)>>,
}

impl ResidueMatrix {
    fn new(m: &SymbolicMatrix, p: u64) -> Self {
        let entries = m
            .entries()
            .iter()
            .map(|e| {
                e.terms()
                    .iter()
                    .filter_map(|(exp, c)| {
                        let c = reduce_bigint(c, p);
                        let vars = exp
                            .as_slice()
                            .iter()
                            .enumerate()
                            .filter(|(_, &d)| d > 0)
                            .map(|(v, _)| v)
                            .collect();
                        (c != 0).then_some((vars, c))
                    })
                    .collect()
            })
            .collect();
        Self {
            dim: m.dim(),
            p,
            entries,
        }
    }

    fn det_at(&self, point: &[u64]) -> u64 {
        let p = self.p;
        let scalar = self
            .entries
            .iter()
            .map(|terms| {
                terms.iter().fold(0, |acc, (vars, c)| {
                    let mono = vars.iter().fold(*c, |m, &v| mul_mod(m, point[v], p));
                    (acc + mono) % p
                })
            })
            .collect();
        det_mod_p(scalar, self.dim, p)
    }
}

/// Per-variable evaluation points needed for a `dim x dim` matrix with
/// multilinear entries: the determinant has degree at most `dim` in each
/// variable.
pub fn points_for(m: &SymbolicMatrix) -> usize {
    m.dim() + 1
}

/// `det(m) mod p` as a polynomial, from `points` grid values per variable.
pub fn det_poly_mod_p(m: &SymbolicMatrix, p: u64, points: usize) -> Result<ModPoly> {
    let grid = EvalGrid::standard(m.vars(), points, p)?;
    let residues = ResidueMatrix::new(m, p);
    let values: Vec<u64> = (0..grid.len()).map(|i| residues.det_at(&grid.point(i))).collect();
    interpolate(&values, &grid)
}

fn residue_dets(m: &SymbolicMatrix, basis: &PrimeBasis, engine: &Engine) -> Result<Vec<ModPoly>> {
    let points = points_for(m);
    let grids = basis
        .primes
        .iter()
        .map(|&p| EvalGrid::standard(m.vars(), points, p))
        .collect::<Result<Vec<_>>>()?;
    let residues: Vec<ResidueMatrix> = basis.primes.iter().map(|&p| ResidueMatrix::new(m, p)).collect();
    let per_prime = grids.first().map_or(1, EvalGrid::len);

    let values = engine.map(basis.len() * per_prime, |task| {
        let (pi, gi) = (task / per_prime, task % per_prime);
        residues[pi].det_at(&grids[pi].point(gi))
    });
    engine
        .map(basis.len(), |pi| {
            interpolate(&values[pi * per_prime..(pi + 1) * per_prime], &grids[pi])
        })
        .into_iter()
        .collect()
}

/// Exact determinant over a caller-chosen prime basis. The true coefficients
/// must be nonnegative and below the basis product.
pub fn det_poly_over(m: &SymbolicMatrix, basis: &PrimeBasis, engine: &Engine) -> Result<IntPoly> {
    crt_combine(&residue_dets(m, basis, engine)?)
}

/// Default prime floor for a matrix: twice the number of grid points.
fn prime_floor(m: &SymbolicMatrix) -> u64 {
    2 * points_for(m) as u64
}

/// Exact determinant whose coefficients are known to lie in `[0, bound]`.
pub fn det_poly(m: &SymbolicMatrix, coeff_bound: &BigUint, engine: &Engine) -> Result<IntPoly> {
    let basis = select_primes(prime_floor(m), coeff_bound)?;
    det_poly_over(m, &basis, engine)
}

/// Exact determinant whose coefficients lie in `[-bound, bound]`.
pub fn det_poly_signed(m: &SymbolicMatrix, coeff_bound: &BigUint, engine: &Engine) -> Result<ZPoly> {
    let doubled = coeff_bound * 2u32 + 1u32;
    let basis = select_primes(prime_floor(m), &doubled)?;
    crt_combine_signed(&residue_dets(m, &basis, engine)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExponentVector;
    use num_bigint::BigInt;

    fn lin(vars: usize, terms: &[(&[u32], i64)]) -> ZPoly {
        ZPoly::from_terms(
            vars,
            terms
                .iter()
                .map(|(e, c)| (ExponentVector::new(e.to_vec()), BigInt::from(*c))),
        )
    }

    #[test]
    fn select_primes_examples() {
        let b = select_primes(10, &BigUint::from(100u32)).unwrap();
        assert_eq!(b.primes(), &[11, 13]);
        assert_eq!(b.product(), &BigUint::from(143u32));
        assert_eq!(select_primes(2, &BigUint::one()).unwrap().primes(), &[3]);
        let b = select_primes(8, &BigUint::from(6u32).pow(4)).unwrap();
        assert_eq!(&b.primes()[..2], &[11, 13]);
        assert!(matches!(
            select_primes(4294967290, &BigUint::from(u64::MAX)),
            Err(Error::PrimesExhausted { .. })
        ));
    }

    #[test]
    fn det_mod_p_examples() {
        assert_eq!(det_mod_p(vec![2, 1, 1, 2], 2, 5), 3);
        assert_eq!(det_mod_p(vec![1, 0, 0, 0, 1, 0, 0, 0, 1], 3, 7), 1);
        assert_eq!(det_mod_p(vec![1, 1, 1, 1], 2, 7), 0);
        assert_eq!(det_mod_p(vec![], 0, 7), 1);
        // needs a row swap: [[0,1],[1,0]] has det -1
        assert_eq!(det_mod_p(vec![0, 1, 1, 0], 2, 7), 6);
    }

    #[test]
    fn det_poly_mod_p_examples() {
        let m = SymbolicMatrix::new(1, 1, vec![lin(1, &[(&[1], 1), (&[0], 2)])]).unwrap();
        let d = det_poly_mod_p(&m, 101, 2).unwrap();
        assert_eq!(d, lin(1, &[(&[1], 1), (&[0], 2)]).reduce_mod(101));

        let x = lin(1, &[(&[1], 1)]);
        let one = lin(1, &[(&[0], 1)]);
        let m = SymbolicMatrix::new(2, 1, vec![x.clone(), one.clone(), one, x]).unwrap();
        let d = det_poly_mod_p(&m, 101, 3).unwrap();
        assert_eq!(d.coeff(&[2]), 1);
        assert_eq!(d.coeff(&[0]), 100);
        assert_eq!(d.coeff(&[1]), 0);

        assert!(matches!(
            det_poly_mod_p(&m, 3, 3),
            Err(Error::ModulusTooSmall { .. })
        ));
    }

    #[test]
    fn det_poly_examples() {
        let engine = Engine::sequential();
        let m = SymbolicMatrix::new(1, 0, vec![ZPoly::constant(0, 5)]).unwrap();
        let d = det_poly(&m, &BigUint::from(10u32), &engine).unwrap();
        assert_eq!(d.coeff(&[]), BigUint::from(5u32));

        let empty = SymbolicMatrix::zeros(0, 2);
        let d = det_poly(&empty, &BigUint::one(), &engine).unwrap();
        assert_eq!(d.coeff(&[0, 0]), BigUint::one());
        assert_eq!(d.terms().len(), 1);
    }

    #[test]
    fn signed_determinant() {
        let engine = Engine::new(3).unwrap();
        let c = |v: i64| ZPoly::constant(0, v);
        let m = SymbolicMatrix::new(2, 0, vec![c(1), c(2), c(3), c(4)]).unwrap();
        let d = det_poly_signed(&m, &BigUint::from(100u32), &engine).unwrap();
        assert_eq!(d.coeff(&[]), BigInt::from(-2));
    }

    #[test]
    fn engine_rejects_zero_workers() {
        assert_eq!(Engine::new(0).unwrap_err(), Error::Workers);
        let e = Engine::new(4).unwrap();
        assert_eq!(e.map(10, |i| i * i), (0..10).map(|i| i * i).collect::<Vec<_>>());
    }
}
