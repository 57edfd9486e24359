//! Arithmetic and dense linear algebra over the prime field Z/pZ.
//!
//! Vectors are plain `Vec<u32>` with entries in `0..p`. Matrices are stored
//! as lists of rows. Subspaces are kept in reduced row echelon form so that
//! membership tests and coordinates are a single pass over the pivots.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0} is not a prime")]
pub struct NotPrime(pub u32);

/// The prime field `Z/pZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(p: u32) -> Result<Self, NotPrime> {
        if is_prime(p) {
            Ok(Fp { p })
        } else {
            Err(NotPrime(p))
        }
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in Z/{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    /// `y += c * x`
    pub fn axpy(&self, y: &mut [u32], c: u32, x: &[u32]) {
        if c == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = self.add(*yi, self.mul(c, xi));
            }
        }
    }

    pub fn scale(&self, c: u32, x: &[u32]) -> Vec<u32> {
        x.iter().map(|&xi| self.mul(c, xi)).collect()
    }

    pub fn vsub(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| self.sub(a, b)).collect()
    }

    pub fn vadd(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| self.add(a, b)).collect()
    }

    /// Brings `rows` into reduced row echelon form in place and returns the
    /// pivot columns. Zero rows are dropped.
    pub fn rref(&self, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, sel);
            let inv = self.inv(rows[r][col]);
            if inv != 1 {
                for x in rows[r].iter_mut() {
                    *x = self.mul(*x, inv);
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[col] != 0 {
                    let c = self.neg(row[col]);
                    self.axpy(row, c, &pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        pivots
    }

    pub fn rank(&self, rows: &[Vec<u32>]) -> usize {
        let mut m = rows.to_vec();
        self.rref(&mut m).len()
    }

    /// Basis of `{x : A x = 0}` where `A` has the given rows and `ncols` columns.
    pub fn kernel(&self, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
        let mut m: Vec<Vec<u32>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
        let pivots = self.rref(&mut m);
        let mut is_pivot = vec![None; ncols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut basis = Vec::new();
        for free in 0..ncols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![0u32; ncols];
            v[free] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = self.neg(m[i][free]);
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `A x = b`. Returns a particular solution and a basis of the
    /// homogeneous solutions, or `None` when the system is inconsistent.
    pub fn solve(&self, rows: &[Vec<u32>], b: &[u32], ncols: usize) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
        let mut aug: Vec<Vec<u32>> = rows
            .iter()
            .zip(b)
            .map(|(r, &bi)| {
                let mut v = r.clone();
                v.push(bi);
                v
            })
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let pivots = self.rref(&mut aug);
        if pivots.last() == Some(&ncols) {
            return None;
        }
        let mut x = vec![0u32; ncols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug[i][ncols];
        }
        let homogeneous: Vec<Vec<u32>> = aug.iter().map(|r| r[..ncols].to_vec()).collect();
        Some((x, self.kernel(&homogeneous, ncols)))
    }
}

/// A subspace of `F_p^n`, stored as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Fp,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span<I>(field: Fp, ambient: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut rows: Vec<Vec<u32>> = gens.into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = field.rref(&mut rows);
        Subspace {
            field,
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c: Vec<u32> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut rest = v.to_vec();
        for (b, &ci) in self.basis.iter().zip(&c) {
            self.field.axpy(&mut rest, self.field.neg(ci), b);
        }
        rest.iter().all(|&x| x == 0).then_some(c)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coords(v).is_some()
    }

    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.ambient];
        for (b, &c) in self.basis.iter().zip(coords) {
            self.field.axpy(&mut v, c, b);
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// All vectors of the subspace, in the order of their coordinate vectors
    /// read as base-`p` numbers (first coordinate least significant).
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let p = self.field.modulus() as usize;
        let k = self.dim();
        let count = p.pow(k as u32);
        (0..count)
            .map(|mut n| {
                let mut c = vec![0u32; k];
                for ci in c.iter_mut() {
                    *ci = (n % p) as u32;
                    n /= p;
                }
                self.combine(&c)
            })
            .collect()
    }

    /// Index of `v` in [`Subspace::elements`].
    pub fn element_index(&self, v: &[u32]) -> Option<usize> {
        let c = self.coords(v)?;
        let p = self.field.modulus() as usize;
        Some(c.iter().rev().fold(0usize, |acc, &ci| acc * p + ci as usize))
    }
}
