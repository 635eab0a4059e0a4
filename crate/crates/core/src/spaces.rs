//! Subspace algebra over the scalar field and membership tests in
//! subgroups of the form S + L (field subspace plus integer lattice).
//!
//! The integer and mixed solvers expand every coordinate over the Q-basis
//! {1, i, sqrt(d), i*sqrt(d)} and run exact rational or integer linear
//! algebra on the stacked system.

use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice;
use crate::matrix::{expand_vec, unit_expansions, Matrix};
use crate::scalar::{Rat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersect,
    KernelOf,
    ImageOf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipMode {
    Strict,
    Isogeny,
}

impl Default for MembershipMode {
    fn default() -> Self {
        MembershipMode::Isogeny
    }
}

pub fn sum(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.rows != b.rows {
        return Err(Error::invalid("ambient dimension mismatch"));
    }
    Ok(a.hcat(b).image())
}

pub fn intersect(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.rows != b.rows {
        return Err(Error::invalid("ambient dimension mismatch"));
    }
    // kernel of [A | -B]: the A-part of each kernel vector spans A ∩ B
    let k = a.hcat(&b.neg()).kernel();
    let mut cols = Vec::new();
    for j in 0..k.cols {
        let coeffs: Vec<Scalar> = (0..a.cols).map(|i| k[(i, j)].clone()).collect();
        cols.push(a.mul_vec(&coeffs));
    }
    Ok(Matrix::from_cols(a.rows, cols).image())
}

pub fn subspace_op(a: &Matrix, b: &Matrix, op: SubspaceOp) -> Result<Matrix> {
    match op {
        SubspaceOp::Sum => sum(a, b),
        SubspaceOp::Intersect => intersect(a, b),
        SubspaceOp::KernelOf => Ok(a.kernel()),
        SubspaceOp::ImageOf => Ok(a.image()),
    }
}

pub fn span_contains(a: &Matrix, v: &[Scalar]) -> bool {
    a.solve(v).is_some()
}

pub fn spans_equal(a: &Matrix, b: &Matrix) -> bool {
    if a.rows != b.rows {
        return false;
    }
    let ra = a.rank();
    let rb = b.rank();
    ra == rb && a.hcat(b).rank() == ra
}

pub fn span_subset(a: &Matrix, b: &Matrix) -> bool {
    // span(a) ⊆ span(b)
    b.solve_matrix(a).is_some()
}

/// Rows spanning the left annihilator {p : p * M = 0}.
pub fn left_annihilator(m: &Matrix) -> Matrix {
    m.transpose().kernel().transpose()
}

/// Rational points of a field subspace: a Q-basis of span(V) ∩ Q^n.
pub fn rational_points(v: &Matrix) -> Matrix {
    if v.cols == 0 {
        return Matrix::zero(v.rows, 0);
    }
    let ann = left_annihilator(v);
    if ann.rows == 0 {
        return Matrix::identity(v.rows);
    }
    // a rational vector is annihilated iff all four components of each
    // constraint row annihilate it
    ann.expand_rows().kernel()
}

/// Integral points of a field subspace, as a saturated lattice basis.
pub fn integral_points(v: &Matrix) -> Result<Matrix> {
    let q = rational_points(v);
    if q.cols == 0 {
        return Ok(Matrix::zero(v.rows, 0));
    }
    lattice::saturate_rational_span(&q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    /// Coefficients range over the full scalar field.
    Field,
    /// Coefficients range over Q.
    Rational,
    /// Coefficients range over Z.
    Integer,
}

/// One block of unknowns: the columns of `basis` with coefficients of the
/// stated kind.
pub struct Block<'a> {
    pub basis: &'a Matrix,
    pub kind: VarKind,
}

/// Scale rational rows of [M | b] to integers, rowwise.
fn clear_rows(m: &Matrix, b: &[Scalar]) -> (Matrix, Vec<Scalar>) {
    let mut out = m.clone();
    let mut rhs = b.to_vec();
    for i in 0..m.rows {
        let mut lcm = num_bigint::BigInt::one();
        for j in 0..m.cols {
            lcm = lcm.lcm(out[(i, j)].as_rational().unwrap().denom());
        }
        lcm = lcm.lcm(rhs[i].as_rational().unwrap().denom());
        let f = Scalar::from_rat(Rat::from_integer(lcm));
        for j in 0..m.cols {
            out[(i, j)] = out[(i, j)].clone() * f.clone();
        }
        rhs[i] = rhs[i].clone() * f.clone();
    }
    (out, rhs)
}

fn expanded_block(block: &Block<'_>, d: u64) -> Matrix {
    match block.kind {
        VarKind::Field => {
            let mut cols = Vec::new();
            for j in 0..block.basis.cols {
                cols.extend(unit_expansions(&block.basis.col(j), d));
            }
            Matrix::from_cols(4 * block.basis.rows, cols)
        }
        VarKind::Rational | VarKind::Integer => {
            let mut cols = Vec::new();
            for j in 0..block.basis.cols {
                cols.push(expand_vec(&block.basis.col(j)));
            }
            Matrix::from_cols(4 * block.basis.rows, cols)
        }
    }
}

fn fold_field_coeffs(raw: &[Scalar], d: u64) -> Vec<Scalar> {
    raw.chunks(4)
        .map(|ch| {
            Scalar::new(
                ch[0].as_rational().unwrap().clone(),
                ch[1].as_rational().unwrap().clone(),
                ch[2].as_rational().unwrap().clone(),
                ch[3].as_rational().unwrap().clone(),
                d,
            )
        })
        .collect()
}

/// Solve sum_k B_k x_k = v where each block's coefficients are constrained
/// per its kind. Returns per-block coefficient vectors, or None.
pub fn solve_mixed(blocks: &[Block<'_>], v: &[Scalar], d: u64) -> Result<Option<Vec<Vec<Scalar>>>> {
    let n = v.len();
    for b in blocks {
        if b.basis.rows != n {
            return Err(Error::invalid("ambient dimension mismatch"));
        }
    }
    let ve = expand_vec(v);
    let free_mats: Vec<Matrix> = blocks
        .iter()
        .filter(|b| b.kind != VarKind::Integer)
        .map(|b| expanded_block(b, d))
        .collect();
    let int_mats: Vec<Matrix> = blocks
        .iter()
        .filter(|b| b.kind == VarKind::Integer)
        .map(|b| expanded_block(b, d))
        .collect();

    let a_free = free_mats
        .iter()
        .fold(Matrix::zero(4 * n, 0), |acc, m| acc.hcat(m));
    let b_int = int_mats
        .iter()
        .fold(Matrix::zero(4 * n, 0), |acc, m| acc.hcat(m));

    // solve the integer part first, modulo the image of the free part
    let int_sol: Vec<Scalar> = if b_int.cols > 0 {
        let p = if a_free.cols > 0 {
            left_annihilator(&a_free)
        } else {
            Matrix::identity(4 * n)
        };
        let pb = p.mul(&b_int);
        let pv = p.mul_vec(&ve);
        let (pb_i, pv_i) = clear_rows(&pb, &pv);
        match lattice::solve_integer(&pb_i, &pv_i)? {
            None => return Ok(None),
            Some(x) => x,
        }
    } else {
        Vec::new()
    };

    // residual must lie in the image of the free part
    let residual: Vec<Scalar> = if b_int.cols > 0 {
        let bn = b_int.mul_vec(&int_sol);
        ve.iter().zip(bn.iter()).map(|(x, y)| x.clone() - y.clone()).collect()
    } else {
        ve.clone()
    };
    let free_sol: Vec<Scalar> = if a_free.cols > 0 {
        match a_free.solve(&residual) {
            None => return Ok(None),
            Some(x) => x,
        }
    } else {
        if residual.iter().any(|s| !s.is_zero()) {
            return Ok(None);
        }
        Vec::new()
    };

    // split the stacked solutions back into per-block coefficient vectors
    let mut out = Vec::with_capacity(blocks.len());
    let mut f_off = 0usize;
    let mut i_off = 0usize;
    for b in blocks {
        match b.kind {
            VarKind::Field => {
                let w = 4 * b.basis.cols;
                out.push(fold_field_coeffs(&free_sol[f_off..f_off + w], d));
                f_off += w;
            }
            VarKind::Rational => {
                let w = b.basis.cols;
                out.push(free_sol[f_off..f_off + w].to_vec());
                f_off += w;
            }
            VarKind::Integer => {
                let w = b.basis.cols;
                out.push(int_sol[i_off..i_off + w].to_vec());
                i_off += w;
            }
        }
    }
    Ok(Some(out))
}

pub struct Membership {
    pub inside: bool,
    /// Field coefficients on the subspace basis, when inside.
    pub subspace_coefficients: Option<Vec<Scalar>>,
    /// Lattice coefficients (integers in strict mode, rationals in isogeny
    /// mode), when inside.
    pub lattice_coefficients: Option<Vec<Scalar>>,
}

/// Decide v ∈ S + L where S is a field subspace and L an integer lattice.
/// Strict mode requires integer lattice coefficients; isogeny mode allows
/// rational ones.
pub fn subgroup_member(
    v: &[Scalar],
    s: &Matrix,
    l: &Matrix,
    mode: MembershipMode,
    d: u64,
) -> Result<Membership> {
    if s.rows != v.len() || l.rows != v.len() {
        return Err(Error::invalid("ambient dimension mismatch"));
    }
    let lat_kind = match mode {
        MembershipMode::Strict => VarKind::Integer,
        MembershipMode::Isogeny => VarKind::Rational,
    };
    let blocks = [
        Block { basis: s, kind: VarKind::Field },
        Block { basis: l, kind: lat_kind },
    ];
    match solve_mixed(&blocks, v, d)? {
        None => Ok(Membership { inside: false, subspace_coefficients: None, lattice_coefficients: None }),
        Some(mut coeffs) => {
            let lat = coeffs.pop().unwrap();
            let sub = coeffs.pop().unwrap();
            Ok(Membership {
                inside: true,
                subspace_coefficients: Some(sub),
                lattice_coefficients: Some(lat),
            })
        }
    }
}

/// The sublattice {x in Z^h : R x ∈ U} where U is spanned by the free
/// blocks plus (in strict mode) integer combinations of `lattice_gens`.
/// Strict mode returns the genuine subgroup; isogeny mode returns the
/// saturated kernel of the induced rational map.
pub fn kernel_into_subgroup(
    r: &Matrix,
    free_gens: &[&Matrix],
    lattice_gens: &Matrix,
    mode: MembershipMode,
    d: u64,
) -> Result<Matrix> {
    let n4 = 4 * r.rows;
    let mut r_cols = Vec::new();
    for j in 0..r.cols {
        r_cols.push(expand_vec(&r.col(j)));
    }
    let re = Matrix::from_cols(n4, r_cols);

    let mut free = Matrix::zero(n4, 0);
    for g in free_gens {
        let b = Block { basis: g, kind: VarKind::Field };
        free = free.hcat(&expanded_block(&b, d));
    }

    match mode {
        MembershipMode::Isogeny => {
            let lat_b = Block { basis: lattice_gens, kind: VarKind::Rational };
            let free_all = free.hcat(&expanded_block(&lat_b, d));
            let p = if free_all.cols > 0 {
                left_annihilator(&free_all)
            } else {
                Matrix::identity(n4)
            };
            let pr = p.mul(&re);
            let k = pr.kernel();
            if k.cols == 0 {
                return Ok(Matrix::zero(r.cols, 0));
            }
            lattice::saturate_rational_span(&k)
        }
        MembershipMode::Strict => {
            let lat_b = Block { basis: lattice_gens, kind: VarKind::Integer };
            let le = expanded_block(&lat_b, d);
            let p = if free.cols > 0 { left_annihilator(&free) } else { Matrix::identity(n4) };
            let pr = p.mul(&re);
            let pl = p.mul(&le);
            let joint = pr.hcat(&pl.neg());
            let zero = vec![Scalar::zero(); joint.rows];
            let (joint_i, _) = clear_rows(&joint, &zero);
            let k = lattice::kernel_integer(&joint_i)?;
            // project onto the x-part and take the generated subgroup
            let rows: Vec<usize> = (0..r.cols).collect();
            let proj = Matrix::from_cols(
                r.cols,
                (0..k.cols)
                    .map(|j| rows.iter().map(|&i| k[(i, j)].clone()).collect())
                    .collect(),
            );
            lattice::image_lattice(&proj)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(cols: Vec<Vec<i64>>, rows: usize) -> Matrix {
        Matrix::from_cols(
            rows,
            cols.into_iter()
                .map(|c| c.into_iter().map(Scalar::from_int).collect())
                .collect(),
        )
    }

    #[test]
    fn intersect_of_axes_is_zero() {
        let a = span(vec![vec![1, 0]], 2);
        let b = span(vec![vec![0, 1]], 2);
        assert_eq!(intersect(&a, &b).unwrap().cols, 0);
    }

    #[test]
    fn sum_spans_plane() {
        let a = span(vec![vec![1, 0]], 2);
        let b = span(vec![vec![1, 1]], 2);
        assert_eq!(sum(&a, &b).unwrap().cols, 2);
    }

    #[test]
    fn sqrt2_vector_is_outside() {
        // v = (sqrt(2), 0), S = span{(1, i)}, L = Z^2: outside in both modes
        let v = vec![Scalar::sqrt_d(2), Scalar::zero()];
        let s = Matrix::from_cols(2, vec![vec![Scalar::one(), Scalar::i()]]);
        let l = Matrix::identity(2);
        for mode in [MembershipMode::Strict, MembershipMode::Isogeny] {
            let m = subgroup_member(&v, &s, &l, mode, 2).unwrap();
            assert!(!m.inside);
        }
    }

    #[test]
    fn zero_vector_is_inside() {
        let v = vec![Scalar::zero(), Scalar::zero()];
        let s = Matrix::from_cols(2, vec![vec![Scalar::one(), Scalar::i()]]);
        let l = Matrix::identity(2);
        let m = subgroup_member(&v, &s, &l, MembershipMode::Strict, 1).unwrap();
        assert!(m.inside);
        assert!(m.lattice_coefficients.unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn half_i_isogeny_witness() {
        // v = (i/2, 0) = (i/2)(1, i) + (0, 1/2) in isogeny mode
        let half_i = Scalar::i() * Scalar::from_rat(crate::scalar::rat(1, 2));
        let v = vec![half_i.clone(), Scalar::zero()];
        let s = Matrix::from_cols(2, vec![vec![Scalar::one(), Scalar::i()]]);
        let l = Matrix::identity(2);
        let m = subgroup_member(&v, &s, &l, MembershipMode::Isogeny, 1).unwrap();
        assert!(m.inside);
        // verify the witness reassembles v
        let sc = m.subspace_coefficients.unwrap();
        let lc = m.lattice_coefficients.unwrap();
        let rebuilt: Vec<Scalar> = (0..2)
            .map(|i| s[(i, 0)].clone() * sc[0].clone() + l[(i, 0)].clone() * lc[0].clone() + l[(i, 1)].clone() * lc[1].clone())
            .collect();
        assert_eq!(rebuilt, v);
        // and strict mode rejects it
        let strict = subgroup_member(&v, &s, &l, MembershipMode::Strict, 1).unwrap();
        assert!(!strict.inside);
    }

    #[test]
    fn rational_points_of_conjugate_stable_plane() {
        // span{(1, i), (1, -i)} is all of C^2, so rational points = Q^2
        let s = Matrix::from_cols(
            2,
            vec![vec![Scalar::one(), Scalar::i()], vec![Scalar::one(), -Scalar::i()]],
        );
        let q = rational_points(&s);
        assert_eq!(q.rank(), 2);
        // span{(1, i)} alone contains no nonzero rational vector
        let line = Matrix::from_cols(2, vec![vec![Scalar::one(), Scalar::i()]]);
        assert_eq!(rational_points(&line).cols, 0);
    }
}
