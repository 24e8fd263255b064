//! Exact linear algebra over a field: reduced echelon forms, kernels,
//! solving and canonical subspaces.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{GaussScalar, Rational};
use crate::error::{Error, Result};

pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl Field for Rational {}
impl Field for GaussScalar {}

/// Row-major matrix.
pub type Matrix<F> = Vec<Vec<F>>;

pub fn zeros<F: Field>(rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![F::zero(); cols]; rows]
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    let mut m = zeros(n, n);
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = F::one();
    }
    m
}

pub fn transpose<F: Field>(a: &Matrix<F>, cols: usize) -> Matrix<F> {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "inner dimensions differ");
            (0..cols)
                .map(|j| {
                    let mut s = F::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            s = s + x.clone() * b[k][j].clone();
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(F::zero(), |s, (x, y)| {
                if x.is_zero() || y.is_zero() {
                    s
                } else {
                    s + x.clone() * y.clone()
                }
            })
        })
        .collect()
}

pub fn mat_add<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.clone() + y.clone()).collect())
        .collect()
}

pub fn mat_scale<F: Field>(a: &Matrix<F>, c: &F) -> Matrix<F> {
    a.iter().map(|r| r.iter().map(|x| x.clone() * c.clone()).collect()).collect()
}

pub fn mat_neg<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    a.iter().map(|r| r.iter().map(|x| -x.clone()).collect()).collect()
}

pub fn is_skew<F: Field>(a: &Matrix<F>) -> bool {
    let n = a.len();
    a.iter().all(|r| r.len() == n)
        && (0..n).all(|i| (0..n).all(|j| (a[i][j].clone() + a[j][i].clone()).is_zero()))
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |s, (x, y)| s + x.clone() * y.clone())
}

/// Brings `rows` to reduced row echelon form in place, dropping zero rows.
/// Columns are scanned in the order given by `cols`; returns the pivot columns.
pub fn rref_in_order<F: Field>(rows: &mut Matrix<F>, cols: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Reduced row echelon form with leftmost pivots.
pub fn rref<F: Field>(rows: &mut Matrix<F>, width: usize) -> Vec<usize> {
    let cols: Vec<usize> = (0..width).collect();
    rref_in_order(rows, &cols)
}

pub fn rank<F: Field>(a: &Matrix<F>, width: usize) -> usize {
    let mut m = a.clone();
    rref(&mut m, width).len()
}

/// Basis of `{x : a·x = 0}`, one vector per free column.
pub fn nullspace<F: Field>(a: &Matrix<F>, width: usize) -> Matrix<F> {
    let mut m = a.clone();
    let pivots = rref(&mut m, width);
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); width];
        v[free] = F::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `a·x = b`, eliminating columns in the order `cols`
/// and setting free variables to zero.
pub fn solve_in_order<F: Field>(a: &Matrix<F>, b: &[F], width: usize, cols: &[usize]) -> Option<Vec<F>> {
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let pivots = rref_in_order(&mut aug, cols);
    let mut x = vec![F::zero(); width];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[width].clone();
    }
    (mat_vec(a, &x) == b).then_some(x)
}

pub fn solve<F: Field>(a: &Matrix<F>, b: &[F], width: usize) -> Option<Vec<F>> {
    let cols: Vec<usize> = (0..width).collect();
    solve_in_order(a, b, width, &cols)
}

pub fn inverse<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.len();
    let mut aug: Matrix<F> = a
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if j == k { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    let pivots = rref_in_order(&mut aug, &cols);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Subspace of `F^ambient` held as a reduced echelon basis, so that equality
/// of subspaces is equality of values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn from_generators(ambient: usize, gens: Matrix<F>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != ambient) {
            return Err(Error::Dimension(format!("generator of length {} in ambient dimension {ambient}", g.len())));
        }
        let mut basis = gens;
        rref(&mut basis, ambient);
        Ok(Subspace { ambient, basis })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: identity(ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut m = self.basis.clone();
        m.push(v.to_vec());
        rank(&m, self.ambient) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut g = self.basis.clone();
        g.extend(other.basis.iter().cloned());
        Self::from_generators(self.ambient, g).expect("same ambient")
    }

    /// `{w : w·v = 0 for all v}` under the bilinear dot product.
    pub fn annihilator(&self) -> Self {
        Self::from_generators(self.ambient, nullspace(&self.basis, self.ambient)).expect("same ambient")
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut eqs = self.annihilator().basis;
        eqs.extend(other.annihilator().basis);
        Self::from_generators(self.ambient, nullspace(&eqs, self.ambient)).expect("same ambient")
    }

    /// Image under `x ↦ a·x`, where `a` has `out` rows.
    pub fn image(&self, a: &Matrix<F>, out: usize) -> Self {
        let gens = self.basis.iter().map(|v| mat_vec(a, v)).collect();
        Self::from_generators(out, gens).expect("image dimension")
    }

    /// Coordinates `c` with `v = Σ c_k basis_k`, if `v` lies in the span.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let at = transpose(&self.basis, self.ambient);
        solve(&at, v, self.dim())
    }
}
