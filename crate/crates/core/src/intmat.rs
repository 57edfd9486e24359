//! Integer lattices: Hermite and Smith normal forms.
//!
//! Everything here works with row lattices: a matrix stands for the
//! subgroup of `Z^n` generated by its rows. Finite abelian groups are
//! presented as `Z^n / L` and the Smith form yields their invariant factors
//! together with explicit coordinate changes in both directions.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("integer overflow during lattice reduction")]
    Overflow,
    #[error("vector does not lie in the lattice")]
    NotInLattice,
}

pub type Int = i128;
type Res<T> = Result<T, LatticeError>;

fn mul(a: Int, b: Int) -> Res<Int> {
    a.checked_mul(b).ok_or(LatticeError::Overflow)
}

fn sub_mul(a: Int, q: Int, b: Int) -> Res<Int> {
    a.checked_sub(mul(q, b)?).ok_or(LatticeError::Overflow)
}

fn add_mul(a: Int, q: Int, b: Int) -> Res<Int> {
    a.checked_add(mul(q, b)?).ok_or(LatticeError::Overflow)
}

/// `target -= q * src` on rows.
fn row_sub(target: &mut [Int], q: Int, src: &[Int]) -> Res<()> {
    if q == 0 {
        return Ok(());
    }
    for (t, &s) in target.iter_mut().zip(src) {
        *t = sub_mul(*t, q, s)?;
    }
    Ok(())
}

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are removed.
/// Returns the rows together with their pivot columns.
pub fn hermite(mut rows: Vec<Vec<Int>>, ncols: usize) -> Res<(Vec<Vec<Int>>, Vec<usize>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].unsigned_abs());
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][col] != 0 {
                    let q = rows[i][col].div_euclid(rows[r][col]);
                    let (head, tail) = rows.split_at_mut(i);
                    row_sub(&mut tail[0], q, &head[r])?;
                    if rows[i][col] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][col] == 0 {
            continue;
        }
        if rows[r][col] < 0 {
            for x in rows[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = rows[i][col].div_euclid(rows[r][col]);
            let (head, tail) = rows.split_at_mut(r);
            row_sub(&mut head[i], q, &tail[0])?;
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    Ok((rows, pivots))
}

/// Coefficients of `v` with respect to an echelon basis (as produced by
/// [`hermite`]).
pub fn echelon_coords(basis: &[Vec<Int>], pivots: &[usize], v: &[Int]) -> Res<Vec<Int>> {
    let mut rest = v.to_vec();
    let mut c = Vec::with_capacity(basis.len());
    for (b, &p) in basis.iter().zip(pivots) {
        if rest[p] % b[p] != 0 {
            return Err(LatticeError::NotInLattice);
        }
        let q = rest[p] / b[p];
        row_sub(&mut rest, q, b)?;
        c.push(q);
    }
    if rest.iter().any(|&x| x != 0) {
        return Err(LatticeError::NotInLattice);
    }
    Ok(c)
}

/// Basis of `{ x in Z^a : D x = 0 mod target_moduli }` where `d` has one row
/// per target coordinate and one column per source coordinate. The result
/// is an echelon basis of the kernel lattice (rows of length `a`).
pub fn kernel_mod(
    d: &[Vec<Int>],
    target_moduli: &[Int],
    source_moduli: &[Int],
) -> Res<(Vec<Vec<Int>>, Vec<usize>)> {
    let a_t = target_moduli.len();
    let a = source_moduli.len();
    let width = a_t + a;
    let mut gens = Vec::with_capacity(a + a_t + a);
    for j in 0..a {
        let mut row = vec![0; width];
        for k in 0..a_t {
            row[k] = d[k][j];
        }
        row[a_t + j] = 1;
        gens.push(row);
    }
    for (k, &m) in target_moduli.iter().enumerate() {
        let mut row = vec![0; width];
        row[k] = m;
        gens.push(row);
    }
    for (j, &m) in source_moduli.iter().enumerate() {
        let mut row = vec![0; width];
        row[a_t + j] = m;
        gens.push(row);
    }
    let (h, piv) = hermite(gens, width)?;
    let mut basis = Vec::new();
    let mut pivots = Vec::new();
    for (row, &p) in h.iter().zip(&piv) {
        if p >= a_t {
            basis.push(row[a_t..].to_vec());
            pivots.push(p - a_t);
        }
    }
    Ok((basis, pivots))
}

/// The quotient `Z^n / L`, diagonalised.
///
/// `diag[i]` are the Smith invariants (`diag[i] | diag[i+1]`, zeros for a
/// rank-deficient lattice). A vector `y` has Smith coordinates `y V` read
/// modulo `diag`; `V^{-1}` maps back.
#[derive(Clone, Debug)]
pub struct SmithQuotient {
    pub diag: Vec<Int>,
    v: Vec<Vec<Int>>,
    v_inv: Vec<Vec<Int>>,
}

impl SmithQuotient {
    pub fn new(relations: &[Vec<Int>], ncols: usize) -> Res<Self> {
        let mut a: Vec<Vec<Int>> = relations.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
        let nrows = a.len();
        let mut v: Vec<Vec<Int>> = (0..ncols).map(|i| (0..ncols).map(|j| Int::from(i == j)).collect()).collect();
        let mut v_inv = v.clone();

        let swap_cols = |a: &mut Vec<Vec<Int>>, v: &mut Vec<Vec<Int>>, v_inv: &mut Vec<Vec<Int>>, x: usize, y: usize| {
            if x == y {
                return;
            }
            for row in a.iter_mut() {
                row.swap(x, y);
            }
            for row in v.iter_mut() {
                row.swap(x, y);
            }
            v_inv.swap(x, y);
        };
        // col_j -= q col_t
        let col_sub = |a: &mut Vec<Vec<Int>>, v: &mut Vec<Vec<Int>>, v_inv: &mut Vec<Vec<Int>>, j: usize, q: Int, t: usize| -> Res<()> {
            for row in a.iter_mut() {
                row[j] = sub_mul(row[j], q, row[t])?;
            }
            for row in v.iter_mut() {
                row[j] = sub_mul(row[j], q, row[t])?;
            }
            let src = v_inv[j].clone();
            for (x, &s) in v_inv[t].iter_mut().zip(&src) {
                *x = add_mul(*x, q, s)?;
            }
            Ok(())
        };

        let steps = nrows.min(ncols);
        for t in 0..steps {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].unsigned_abs() < a[bi][bj].unsigned_abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            swap_cols(&mut a, &mut v, &mut v_inv, t, bj);
            loop {
                let mut clean = true;
                for i in t + 1..nrows {
                    if a[i][t] != 0 {
                        let q = a[i][t].div_euclid(a[t][t]);
                        let (head, tail) = a.split_at_mut(i);
                        row_sub(&mut tail[0], q, &head[t])?;
                        clean &= a[i][t] == 0;
                    }
                }
                for j in t + 1..ncols {
                    if a[t][j] != 0 {
                        let q = a[t][j].div_euclid(a[t][t]);
                        col_sub(&mut a, &mut v, &mut v_inv, j, q, t)?;
                        clean &= a[t][j] == 0;
                    }
                }
                if !clean {
                    // bring the smallest remaining entry of row/column t to the pivot
                    let mut bi = t;
                    let mut bj = t;
                    let mut bv = a[t][t].unsigned_abs();
                    for i in t + 1..nrows {
                        if a[i][t] != 0 && a[i][t].unsigned_abs() < bv {
                            (bi, bj, bv) = (i, t, a[i][t].unsigned_abs());
                        }
                    }
                    for j in t + 1..ncols {
                        if a[t][j] != 0 && a[t][j].unsigned_abs() < bv {
                            (bi, bj, bv) = (t, j, a[t][j].unsigned_abs());
                        }
                    }
                    a.swap(t, bi);
                    swap_cols(&mut a, &mut v, &mut v_inv, t, bj);
                    continue;
                }
                let piv = a[t][t];
                let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % piv != 0));
                match bad {
                    Some(i) => {
                        let (head, tail) = a.split_at_mut(i);
                        let src = &tail[0];
                        for (x, &s) in head[t].iter_mut().zip(src) {
                            *x = x.checked_add(s).ok_or(LatticeError::Overflow)?;
                        }
                    }
                    None => break,
                }
            }
            if a[t][t] < 0 {
                for x in a[t].iter_mut() {
                    *x = -*x;
                }
            }
        }
        let diag = (0..ncols).map(|i| if i < nrows { a[i][i] } else { 0 }).collect();
        Ok(SmithQuotient { diag, v, v_inv })
    }

    pub fn ncols(&self) -> usize {
        self.diag.len()
    }

    /// Smith coordinates of `y`, reduced modulo the nonzero invariants.
    pub fn coords(&self, y: &[Int]) -> Res<Vec<Int>> {
        let n = self.ncols();
        let mut z = vec![0; n];
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0 {
                continue;
            }
            for j in 0..n {
                z[j] = add_mul(z[j], yi, self.v[i][j])?;
            }
        }
        for (zj, &d) in z.iter_mut().zip(&self.diag) {
            if d != 0 {
                *zj = zj.rem_euclid(d);
            }
        }
        Ok(z)
    }

    /// A preimage in `Z^n` of the Smith coordinate vector `z`.
    pub fn lift(&self, z: &[Int]) -> Res<Vec<Int>> {
        let n = self.ncols();
        let mut y = vec![0; n];
        for (i, &zi) in z.iter().enumerate() {
            if zi == 0 {
                continue;
            }
            for j in 0..n {
                y[j] = add_mul(y[j], zi, self.v_inv[i][j])?;
            }
        }
        Ok(y)
    }

    /// Indices of the invariants that are not units (the cyclic factors).
    pub fn nontrivial(&self) -> Vec<usize> {
        (0..self.ncols()).filter(|&i| self.diag[i] != 1).collect()
    }

    /// Orders of the nontrivial cyclic factors; `0` marks a free factor.
    pub fn factors(&self) -> Vec<Int> {
        self.nontrivial().into_iter().map(|i| self.diag[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_diagonal_2_3() {
        let q = SmithQuotient::new(&[vec![2, 0], vec![0, 3]], 2).unwrap();
        assert_eq!(q.factors(), vec![6]);
    }

    #[test]
    fn smith_of_klein_four() {
        let q = SmithQuotient::new(&[vec![2, 0], vec![0, 2]], 2).unwrap();
        assert_eq!(q.factors(), vec![2, 2]);
    }

    #[test]
    fn smith_coordinates_invert() {
        let rel = vec![vec![4, 6, 2], vec![2, 2, 8], vec![0, 6, 4]];
        let q = SmithQuotient::new(&rel, 3).unwrap();
        for y in [[1, 0, 0], [0, 1, 0], [3, -2, 5]] {
            let z = q.coords(&y).unwrap();
            let back = q.lift(&z).unwrap();
            // back - y must be a relation: its coordinates vanish
            let diff: Vec<Int> = back.iter().zip(&y).map(|(a, b)| a - b).collect();
            assert!(q.coords(&diff).unwrap().iter().all(|&x| x == 0));
        }
        // every relation has zero coordinates
        for r in &rel {
            assert!(q.coords(r).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn hermite_and_membership() {
        let (h, piv) = hermite(vec![vec![4, 2], vec![6, 4]], 2).unwrap();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(h[0][0] * h[1][1], 4);
        assert!(echelon_coords(&h, &piv, &[10, 6]).is_ok());
        assert_eq!(echelon_coords(&h, &piv, &[1, 0]), Err(LatticeError::NotInLattice));
    }

    #[test]
    fn kernel_mod_of_doubling() {
        // x -> 2x from Z/4 to Z/4 has kernel {0, 2}
        let (k, piv) = kernel_mod(&[vec![2]], &[4], &[4]).unwrap();
        assert_eq!(piv, vec![0]);
        assert_eq!(k, vec![vec![2]]);
    }
}
