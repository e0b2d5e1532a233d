//! Dense exact linear algebra: rank, right-kernel bases, and row-span
//! membership over a prime field or the rationals.
//!
//! Pivoting is deterministic (leftmost nonzero column, topmost row), so
//! kernel bases are reproducible and can be frozen in golden files. The
//! rational path clears denominators per row and runs fraction-free
//! Bareiss elimination; fractions only reappear in the final
//! back-substitution for kernels. Largest matrix in this crate is about
//! 40 x 84, so everything is textbook-dense on purpose.

use crate::error::Error;
use crate::scalar::{FieldSpec, Rational, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    dat: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, dat: Vec<Scalar>) -> Result<Self, Error> {
        if dat.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: dat.len() });
        }
        if !dat.iter().all(|x| field.owns(x)) {
            return Err(Error::MixedField);
        }
        Ok(Matrix { rows, cols, field, dat })
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, got: bad.len() });
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, dat: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.dat[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(self.field.owns(&v), "entry outside the matrix field");
        self.dat[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.dat[i * self.cols..(i + 1) * self.cols]
    }

    pub fn with_row_appended(&self, v: &[Scalar]) -> Result<Matrix, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut dat = self.dat.clone();
        dat.extend_from_slice(v);
        Matrix::new(self.field, self.rows + 1, self.cols, dat)
    }

    pub fn without_row(&self, i: usize) -> Matrix {
        assert!(i < self.rows);
        let mut dat = Vec::with_capacity((self.rows - 1) * self.cols);
        for r in 0..self.rows {
            if r != i {
                dat.extend_from_slice(self.row(r));
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols, field: self.field, dat }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut dat = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            dat.extend_from_slice(self.row(r));
        }
        Matrix { rows: idx.len(), cols: self.cols, field: self.field, dat }
    }

    pub fn transpose(&self) -> Matrix {
        let mut dat = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                dat.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, field: self.field, dat }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = f.add(&acc, &f.mul(a, b));
                }
                acc
            })
            .collect())
    }

    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let f = &self.field;
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }
}

/// Row-reduced echelon data over F_p: rank, pivot columns, and the reduced
/// grid (pivot entries 1, zeros above and below).
fn fp_rref(p: u64, grid: &mut [Vec<u64>]) -> (usize, Vec<usize>) {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| grid[i][c] != 0) else { continue };
        grid.swap(r, pr);
        let inv = inv_mod(grid[r][c], p);
        for j in c..cols {
            grid[r][j] = mul_mod(grid[r][j], inv, p);
        }
        for i in 0..rows {
            if i != r && grid[i][c] != 0 {
                let f = grid[i][c];
                for j in c..cols {
                    let sub = mul_mod(f, grid[r][j], p);
                    grid[i][j] = (grid[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime throughout this crate.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn to_fp_grid(m: &Matrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| match x {
                    Scalar::Fp(v) => *v,
                    Scalar::Rat(_) => unreachable!("rational entry in prime-field matrix"),
                })
                .collect()
        })
        .collect()
}

/// Clears denominators row by row (kernel, rank and row span are invariant
/// under scaling a row by a nonzero scalar).
fn to_int_grid(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let mut lcm = BigInt::one();
            for x in row {
                if let Scalar::Rat(r) = x {
                    lcm = lcm.lcm(r.denom());
                }
            }
            row.iter()
                .map(|x| match x {
                    Scalar::Rat(r) => r.numer() * (&lcm / r.denom()),
                    Scalar::Fp(_) => unreachable!("prime-field entry in rational matrix"),
                })
                .collect()
        })
        .collect()
}

/// Fraction-free Bareiss forward elimination; returns (rank, pivot columns)
/// and leaves `grid` in integer row-echelon form.
fn bareiss_echelon(grid: &mut [Vec<BigInt>]) -> (usize, Vec<usize>) {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !grid[i][c].is_zero()) else { continue };
        grid.swap(r, pr);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &grid[r][c] * &grid[i][j] - &grid[i][c] * &grid[r][j];
                // Exact by the Bareiss identity; division keeps growth linear
                // in the minors rather than exponential.
                grid[i][j] = num / &prev;
            }
            grid[i][c] = BigInt::zero();
        }
        prev = grid[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    match m.field() {
        FieldSpec::Prime(p) => {
            let mut grid = to_fp_grid(m);
            fp_rref(*p, &mut grid).0
        }
        FieldSpec::Rationals => {
            let mut grid = to_int_grid(m);
            bareiss_echelon(&mut grid).0
        }
    }
}

/// Basis of the right kernel, in the canonical reduced-echelon shape: one
/// vector per free column (ascending), each with 1 at its own free column
/// and 0 at every other free column. Size is always cols - rank.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let field = *m.field();
    let cols = m.cols();
    if cols == 0 {
        return Vec::new();
    }
    if m.rows() == 0 {
        let mut basis = Vec::with_capacity(cols);
        for fcol in 0..cols {
            let mut v = vec![field.zero(); cols];
            v[fcol] = field.one();
            basis.push(v);
        }
        return basis;
    }
    match field {
        FieldSpec::Prime(p) => {
            let mut grid = to_fp_grid(m);
            let (rank, pivots) = fp_rref(p, &mut grid);
            let is_pivot: Vec<bool> = {
                let mut b = vec![false; cols];
                for &c in &pivots {
                    b[c] = true;
                }
                b
            };
            let mut basis = Vec::with_capacity(cols - rank);
            for fcol in (0..cols).filter(|&c| !is_pivot[c]) {
                let mut v = vec![0u64; cols];
                v[fcol] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - grid[i][fcol]) % p;
                }
                basis.push(v.into_iter().map(Scalar::Fp).collect());
            }
            basis
        }
        FieldSpec::Rationals => {
            let mut grid = to_int_grid(m);
            let (rank, pivots) = bareiss_echelon(&mut grid);
            // Back-substitute the integer echelon into rational RREF; only
            // the first `rank` rows carry information.
            let q = FieldSpec::Rationals;
            let mut rr: Vec<Vec<Scalar>> = grid[..rank]
                .iter()
                .map(|row| {
                    row.iter().map(|x| Scalar::Rat(Rational::from_bigint(x.clone()))).collect()
                })
                .collect();
            for i in (0..rank).rev() {
                let pc = pivots[i];
                let inv = q.inv(&rr[i][pc]).expect("pivot is nonzero");
                for j in pc..cols {
                    rr[i][j] = q.mul(&rr[i][j], &inv);
                }
                for k in 0..i {
                    if !rr[k][pc].is_zero() {
                        let f = rr[k][pc].clone();
                        for j in pc..cols {
                            let sub = q.mul(&f, &rr[i][j]);
                            rr[k][j] = q.sub(&rr[k][j], &sub);
                        }
                    }
                }
            }
            let is_pivot: Vec<bool> = {
                let mut b = vec![false; cols];
                for &c in &pivots {
                    b[c] = true;
                }
                b
            };
            let mut basis = Vec::with_capacity(cols - rank);
            for fcol in (0..cols).filter(|&c| !is_pivot[c]) {
                let mut v = vec![q.zero(); cols];
                v[fcol] = q.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = q.neg(&rr[i][fcol]);
                }
                basis.push(v);
            }
            basis
        }
    }
}

/// True iff appending v leaves the rank unchanged.
pub fn in_row_span(m: &Matrix, v: &[Scalar]) -> Result<bool, Error> {
    let appended = m.with_row_appended(v)?;
    Ok(rank(&appended) == rank(m))
}

/// Inverse of a square matrix by Gauss-Jordan on the augmented identity.
/// Only (n+1) x (n+1) coordinate changes come through here.
pub fn inverse(m: &Matrix) -> Result<Matrix, Error> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
    }
    let f = *m.field();
    let n = m.rows();
    let mut grid: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !grid[i][c].is_zero()) else {
            return Err(Error::Singular);
        };
        grid.swap(c, pr);
        let inv = f.inv(&grid[c][c]).expect("pivot nonzero");
        for j in c..2 * n {
            grid[c][j] = f.mul(&grid[c][j], &inv);
        }
        for i in 0..n {
            if i != c && !grid[i][c].is_zero() {
                let factor = grid[i][c].clone();
                for j in c..2 * n {
                    let sub = f.mul(&factor, &grid[c][j]);
                    grid[i][j] = f.sub(&grid[i][j], &sub);
                }
            }
        }
    }
    Matrix::from_rows(f, grid.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant of a square matrix, by elimination with exact division.
/// Only small matrices (projectivities, Sylvester blocks) come through here.
pub fn det(m: &Matrix) -> Scalar {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let f = *m.field();
    let n = m.rows();
    let mut grid: Vec<Vec<Scalar>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut acc = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !grid[i][c].is_zero()) else {
            return f.zero();
        };
        if pr != c {
            grid.swap(c, pr);
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &grid[c][c]);
        let inv = f.inv(&grid[c][c]).expect("pivot nonzero");
        for i in c + 1..n {
            if grid[i][c].is_zero() {
                continue;
            }
            let factor = f.mul(&grid[i][c], &inv);
            for j in c..n {
                let sub = f.mul(&factor, &grid[c][j]);
                grid[i][j] = f.sub(&grid[i][j], &sub);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::SplitMix;
    use proptest::prelude::*;

    fn fp(field: &FieldSpec, vals: &[i64]) -> Vec<Scalar> {
        vals.iter().map(|&v| field.from_i64(v)).collect()
    }

    #[test]
    fn identity_has_full_rank() {
        let f = FieldSpec::default_prime();
        assert_eq!(rank(&Matrix::identity(f, 4)), 4);
        assert!(kernel_basis(&Matrix::identity(f, 5)).is_empty());
    }

    #[test]
    fn proportional_rows_over_f7() {
        let f = FieldSpec::Prime(7);
        let m = Matrix::from_rows(f, vec![fp(&f, &[1, 2]), fp(&f, &[2, 4])]).unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn product_of_rank3_factors_has_rank_3() {
        // 5x9 = (5x3)(3x9) with both factors checked full-rank.
        let f = FieldSpec::default_prime();
        let mut rng = SplitMix::new(2024);
        loop {
            let a = Matrix::from_rows(
                f,
                (0..5).map(|_| (0..3).map(|_| f.sample(&mut rng)).collect()).collect(),
            )
            .unwrap();
            let b = Matrix::from_rows(
                f,
                (0..3).map(|_| (0..9).map(|_| f.sample(&mut rng)).collect()).collect(),
            )
            .unwrap();
            if rank(&a) != 3 || rank(&b) != 3 {
                continue;
            }
            let m = a.mat_mul(&b).unwrap();
            assert_eq!(rank(&m), 3);
            assert_eq!(kernel_basis(&m).len(), 6);
            break;
        }
    }

    #[test]
    fn kernel_of_ones_row_over_f5() {
        let f = FieldSpec::Prime(5);
        let m = Matrix::from_rows(f, vec![fp(&f, &[1, 1, 1])]).unwrap();
        let k = kernel_basis(&m);
        // Canonical reduced-echelon kernel: free columns 1 and 2.
        assert_eq!(
            k,
            vec![
                vec![Scalar::Fp(4), Scalar::Fp(1), Scalar::Fp(0)],
                vec![Scalar::Fp(4), Scalar::Fp(0), Scalar::Fp(1)],
            ]
        );
    }

    #[test]
    fn empty_and_degenerate_shapes() {
        let f = FieldSpec::default_prime();
        let none = Matrix::zero(f, 0, 4);
        assert_eq!(rank(&none), 0);
        assert_eq!(kernel_basis(&none).len(), 4);
        let wide = Matrix::zero(f, 3, 0);
        assert_eq!(rank(&wide), 0);
        assert!(kernel_basis(&wide).is_empty());
    }

    #[test]
    fn in_row_span_examples() {
        let f = FieldSpec::default_prime();
        let m = Matrix::from_rows(f, vec![fp(&f, &[1, 0])]).unwrap();
        assert!(in_row_span(&m, &fp(&f, &[0, 0])).unwrap());
        assert!(!in_row_span(&m, &fp(&f, &[0, 1])).unwrap());
        assert!(in_row_span(&m, &fp(&f, &[5, 0])).unwrap());
        assert!(matches!(
            in_row_span(&m, &fp(&f, &[1, 2, 3])),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn rational_rank_with_fractions() {
        let q = FieldSpec::Rationals;
        let half = Scalar::Rat(Rational::new(BigInt::from(1), BigInt::from(2)).unwrap());
        let third = Scalar::Rat(Rational::new(BigInt::from(1), BigInt::from(3)).unwrap());
        // rows: (1/2, 1/3), (3, 2) -- proportional (x6)
        let m = Matrix::from_rows(
            q,
            vec![vec![half.clone(), third.clone()], vec![q.from_i64(3), q.from_i64(2)]],
        )
        .unwrap();
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        // kernel of (1/2, 1/3): v = (-2/3, 1)
        assert_eq!(
            k[0],
            vec![Scalar::Rat(Rational::new(BigInt::from(-2), BigInt::from(3)).unwrap()), q.one()]
        );
    }

    #[test]
    fn bareiss_agrees_with_fp_on_integer_matrices() {
        let q = FieldSpec::Rationals;
        let f = FieldSpec::default_prime();
        let mut rng = SplitMix::new(11);
        for _ in 0..25 {
            let rows = 2 + (rng.next_below(5) as usize);
            let cols = 2 + (rng.next_below(6) as usize);
            let ints: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.next_below(19) as i64 - 9).collect())
                .collect();
            let mq = Matrix::from_rows(
                q,
                ints.iter().map(|r| r.iter().map(|&v| q.from_i64(v)).collect()).collect(),
            )
            .unwrap();
            let mf = Matrix::from_rows(
                f,
                ints.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect(),
            )
            .unwrap();
            // Reduction mod p can only lose rank; for entries this small
            // at p = 32003 it never does.
            assert_eq!(rank(&mq), rank(&mf));
            for v in kernel_basis(&mq) {
                assert!(mq.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn determinants() {
        let f = FieldSpec::Prime(101);
        assert_eq!(det(&Matrix::identity(f, 4)), Scalar::Fp(1));
        let m = Matrix::from_rows(f, vec![fp(&f, &[2, 0, 0]), fp(&f, &[0, 3, 0]), fp(&f, &[0, 0, 5])])
            .unwrap();
        assert_eq!(det(&m), Scalar::Fp(30));
        let sing = Matrix::from_rows(f, vec![fp(&f, &[1, 2]), fp(&f, &[2, 4])]).unwrap();
        assert_eq!(det(&sing), Scalar::Fp(0));
        // swap sign
        let sw = Matrix::from_rows(f, vec![fp(&f, &[0, 1]), fp(&f, &[1, 0])]).unwrap();
        assert_eq!(det(&sw), Scalar::Fp(100));
    }

    fn arb_fp_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..7, any::<u64>()).prop_map(|(r, c, seed)| {
            let f = FieldSpec::Prime(101);
            let mut rng = SplitMix::new(seed);
            Matrix::from_rows(
                f,
                (0..r).map(|_| (0..c).map(|_| f.sample(&mut rng)).collect()).collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_annihilation(m in arb_fp_matrix()) {
            let r = rank(&m);
            prop_assert!(r <= m.rows().min(m.cols()));
            let k = kernel_basis(&m);
            prop_assert_eq!(r + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
            }
            prop_assert_eq!(r, rank(&m.transpose()));
        }

        #[test]
        fn rank_invariant_under_row_scaling_and_permutation(m in arb_fp_matrix(), seed in any::<u64>()) {
            let f = *m.field();
            let mut rng = SplitMix::new(seed);
            let mut rows: Vec<Vec<Scalar>> =
                (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
            for row in rows.iter_mut() {
                let s = f.sample_nonzero(&mut rng);
                for x in row.iter_mut() {
                    *x = f.mul(x, &s);
                }
            }
            // Fisher-Yates with the split stream
            for i in (1..rows.len()).rev() {
                let j = rng.next_below(i as u64 + 1) as usize;
                rows.swap(i, j);
            }
            let m2 = Matrix::from_rows(f, rows).unwrap();
            prop_assert_eq!(rank(&m), rank(&m2));
        }
    }
}
