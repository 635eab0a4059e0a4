//! Exact integer lattice algebra: Hermite and Smith normal forms,
//! saturation, integer kernels and integer linear solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

type Grid = Vec<Vec<BigInt>>;

fn grid_zero(r: usize, c: usize) -> Grid {
    vec![vec![BigInt::zero(); c]; r]
}

fn grid_identity(n: usize) -> Grid {
    let mut g = grid_zero(n, n);
    for i in 0..n {
        g[i][i] = BigInt::one();
    }
    g
}

fn swap_cols(g: &mut Grid, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in g.iter_mut() {
        row.swap(a, b);
    }
}

/// col_a -= q * col_b
fn addmul_col(g: &mut Grid, a: usize, b: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in g.iter_mut() {
        let t = &row[b] * q;
        row[a] -= t;
    }
}

fn negate_col(g: &mut Grid, a: usize) {
    for row in g.iter_mut() {
        let v = -row[a].clone();
        row[a] = v;
    }
}

/// Column-style Hermite normal form: returns (H, U) with H = M * U and
/// U unimodular. Pivot entries are positive; entries in a pivot row to the
/// left of the pivot are reduced into [0, pivot); columns to the right of
/// a pivot are zero in its row. Zero columns are collected at the right.
pub fn hnf(m: &Matrix) -> Result<(Matrix, Matrix)> {
    let mut h = m.to_bigint()?;
    let rows = m.rows;
    let cols = m.cols;
    let mut u = grid_identity(cols);
    let mut next = 0usize;
    for row in 0..rows {
        if next == cols {
            break;
        }
        // gcd elimination among columns >= next in this row
        loop {
            let mut best: Option<usize> = None;
            for j in next..cols {
                if !h[row][j].is_zero() {
                    match best {
                        None => best = Some(j),
                        Some(b) => {
                            if h[row][j].abs() < h[row][b].abs() {
                                best = Some(j);
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            swap_cols(&mut h, next, b);
            swap_cols(&mut u, next, b);
            let mut reduced_all = true;
            let pivot = h[row][next].clone();
            for j in next + 1..cols {
                if !h[row][j].is_zero() {
                    let q = h[row][j].div_floor(&pivot);
                    addmul_col(&mut h, j, next, &q);
                    addmul_col(&mut u, j, next, &q);
                    if !h[row][j].is_zero() {
                        reduced_all = false;
                    }
                }
            }
            if reduced_all {
                break;
            }
        }
        if h[row][next].is_zero() {
            continue;
        }
        if h[row][next].is_negative() {
            negate_col(&mut h, next);
            negate_col(&mut u, next);
        }
        // reduce earlier columns in this row into [0, pivot)
        let pivot = h[row][next].clone();
        for j in 0..next {
            let q = h[row][j].div_floor(&pivot);
            addmul_col(&mut h, j, next, &q);
            addmul_col(&mut u, j, next, &q);
        }
        next += 1;
    }
    Ok((Matrix::from_bigint(&h), Matrix::from_bigint(&u)))
}

/// Smith normal form: returns (S, U, V) with U * M * V = S, S diagonal with
/// positive entries s_1 | s_2 | ..., and U, V unimodular.
pub fn snf(m: &Matrix) -> Result<(Matrix, Matrix, Matrix)> {
    let mut s = m.to_bigint()?;
    let rows = m.rows;
    let cols = m.cols;
    let mut u = grid_identity(rows);
    let mut v = grid_identity(cols);

    let swap_rows = |g: &mut Grid, a: usize, b: usize| {
        if a != b {
            g.swap(a, b);
        }
    };
    // row_a -= q * row_b
    let addmul_row = |g: &mut Grid, a: usize, b: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        let src = g[b].clone();
        for (x, y) in g[a].iter_mut().zip(src.iter()) {
            *x -= y * q;
        }
    };
    let negate_row = |g: &mut Grid, a: usize| {
        for x in g[a].iter_mut() {
            let t = -x.clone();
            *x = t;
        }
    };

    let mut t = 0usize;
    'outer: while t < rows && t < cols {
        // locate the minimal nonzero entry in the trailing submatrix
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !s[i][j].is_zero() {
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if s[i][j].abs() < s[bi][bj].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(&mut s, t, bi);
        swap_rows(&mut u, t, bi);
        swap_cols(&mut s, t, bj);
        swap_cols(&mut v, t, bj);

        // clear row t and column t
        let mut dirty = false;
        for i in t + 1..rows {
            if !s[i][t].is_zero() {
                let q = s[i][t].div_floor(&s[t][t]);
                addmul_row(&mut s, i, t, &q);
                addmul_row(&mut u, i, t, &q);
                if !s[i][t].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in t + 1..cols {
            if !s[t][j].is_zero() {
                let q = s[t][j].div_floor(&s[t][t]);
                addmul_col(&mut s, j, t, &q);
                addmul_col(&mut v, j, t, &q);
                if !s[t][j].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue 'outer;
        }
        // enforce divisibility of the trailing block by the pivot
        for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&s[i][j] % &s[t][t]).is_zero() {
                    // fold row i into row t and restart the pivot step
                    let one = BigInt::from(-1);
                    addmul_row(&mut s, t, i, &one);
                    addmul_row(&mut u, t, i, &one);
                    continue 'outer;
                }
            }
        }
        if s[t][t].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    Ok((Matrix::from_bigint(&s), Matrix::from_bigint(&u), Matrix::from_bigint(&v)))
}

/// Inverse of a unimodular integer matrix, exactly.
pub fn int_inverse(m: &Matrix) -> Result<Matrix> {
    if m.rows != m.cols {
        return Err(Error::invalid("not square"));
    }
    let inv = m
        .solve_matrix(&Matrix::identity(m.rows))
        .ok_or_else(|| Error::invalid("matrix is singular"))?;
    if !inv.is_integer() {
        return Err(Error::invalid("matrix is not unimodular"));
    }
    Ok(inv)
}

/// Solve M x = b with x integral. `b` must be an integer vector.
pub fn solve_integer(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let (s, u, v) = snf(m)?;
    let ub = u.mul_vec(b);
    let mut y = vec![Scalar::zero(); m.cols];
    for i in 0..m.rows {
        let si = if i < m.cols { s[(i, i)].clone() } else { Scalar::zero() };
        if si.is_zero() {
            if !ub[i].is_zero() {
                return Ok(None);
            }
        } else {
            let q = ub[i].clone() / si;
            if !q.is_integer() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    Ok(Some(v.mul_vec(&y)))
}

/// Basis of the integer kernel {x in Z^c : M x = 0}; saturated by construction.
pub fn kernel_integer(m: &Matrix) -> Result<Matrix> {
    let (s, _, v) = snf(m)?;
    let rank = (0..m.cols.min(m.rows)).take_while(|&i| !s[(i, i)].is_zero()).count();
    let cols: Vec<usize> = (rank..m.cols).collect();
    Ok(v.submatrix_cols(&cols))
}

/// Canonical basis (column HNF, zero columns dropped) of the lattice
/// generated by the columns of M over Z.
pub fn image_lattice(m: &Matrix) -> Result<Matrix> {
    let (h, _) = hnf(m)?;
    let nonzero: Vec<usize> = (0..h.cols)
        .filter(|&j| (0..h.rows).any(|i| !h[(i, j)].is_zero()))
        .collect();
    Ok(h.submatrix_cols(&nonzero))
}

/// Saturation of the column span: (Q-span of M) intersected with Z^n.
pub fn saturate(m: &Matrix) -> Result<Matrix> {
    let (s, u, _) = snf(m)?;
    let rank = (0..m.cols.min(m.rows)).take_while(|&i| !s[(i, i)].is_zero()).count();
    let uinv = int_inverse(&u)?;
    let cols: Vec<usize> = (0..rank).collect();
    image_lattice(&uinv.submatrix_cols(&cols))
}

/// Integral points of the Q-span of a rational matrix, as a saturated basis.
pub fn saturate_rational_span(m: &Matrix) -> Result<Matrix> {
    saturate(&m.clear_denominators()?)
}

/// True when the columns of `sub` all lie in the lattice spanned by `lat`.
pub fn lattice_contains(lat: &Matrix, sub: &Matrix) -> Result<bool> {
    for j in 0..sub.cols {
        if solve_integer(lat, &sub.col(j))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality of lattices via the canonical Hermite basis.
pub fn lattices_equal(a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(image_lattice(a)? == image_lattice(b)?)
}

/// The index [sat(L) : L] as the product of elementary divisors of the
/// coordinates of L in its saturation; None when L is not of finite index
/// (never happens for equal spans).
pub fn saturation_index(l: &Matrix) -> Result<BigInt> {
    let sat = saturate(l)?;
    let mut coords = Vec::new();
    for j in 0..l.cols {
        let c = solve_integer(&sat, &l.col(j))?
            .ok_or_else(|| Error::Inconsistency("lattice not inside its saturation".into()))?;
        coords.push(c);
    }
    let coord_mat = Matrix::from_cols(sat.cols, coords);
    let (s, _, _) = snf(&coord_mat)?;
    let mut idx = BigInt::one();
    for i in 0..s.rows.min(s.cols) {
        if !s[(i, i)].is_zero() {
            idx *= s[(i, i)].as_integer().unwrap();
        }
    }
    Ok(idx)
}

/// A lattice basis: independent integer columns in Z^n, with the Hermite
/// canonical form kept alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub ambient: usize,
    pub basis: Matrix,
    pub hermite: Matrix,
}

impl LatticeBasis {
    pub fn new(basis: Matrix) -> Result<Self> {
        if !basis.is_integer() {
            return Err(Error::invalid("lattice basis must be integral"));
        }
        if basis.rank() != basis.cols {
            return Err(Error::invalid("lattice basis columns must be independent"));
        }
        let hermite = image_lattice(&basis)?;
        Ok(LatticeBasis { ambient: basis.rows, basis, hermite })
    }

    pub fn rank(&self) -> usize {
        self.basis.cols
    }

    pub fn saturate(&self) -> Result<LatticeBasis> {
        LatticeBasis::new(saturate(&self.basis)?)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(solve_integer(&self.basis, v)?.is_some())
    }
}
