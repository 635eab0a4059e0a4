//! Extension classes of weight-two-step structures, intermediate Jacobian
//! tori, and the Hodge 1-motive [N -> A] attached to a mixed Hodge
//! structure at a level p: the largest part of the (p,p) classes of
//! gr^W_2p whose extension class lands in the abelian subtorus of J^p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice;
use crate::matrix::Matrix;
use crate::mhs::{graded_piece_analyzed, quotient_mhs, sub_mhs, GradedData, Mhs, Pure};
use crate::scalar::Scalar;
use crate::spaces::{self, Block, MembershipMode, VarKind};

/// A complex torus presented as (Z^rank, F) with C^rank = F ⊕ conj(F):
/// the torus is C^rank / (F + Z^rank).
#[derive(Clone, Debug)]
pub struct TorusPresentation {
    pub rank: usize,
    /// rank x (rank/2) field basis of F.
    pub f_basis: Matrix,
    pub d: u64,
}

#[derive(Clone, Debug)]
pub struct TorusPoint {
    pub rep: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl TorusPresentation {
    pub fn new(rank: usize, f_basis: Matrix, d: u64) -> Result<Self> {
        if f_basis.rows != rank {
            return Err(Error::invalid("torus F-basis has wrong ambient dimension"));
        }
        if 2 * f_basis.cols != rank {
            return Err(Error::invalid("torus F-basis must span half the ambient dimension"));
        }
        if f_basis.rank() != f_basis.cols {
            return Err(Error::invalid("torus F-basis columns are dependent"));
        }
        if spaces::intersect(&f_basis, &f_basis.conj())?.cols != 0 {
            return Err(Error::invalid("torus F-basis meets its conjugate"));
        }
        Ok(TorusPresentation { rank, f_basis, d })
    }

    pub fn trivial(d: u64) -> Self {
        TorusPresentation { rank: 0, f_basis: Matrix::zero(0, 0), d }
    }

    pub fn dim(&self) -> usize {
        self.rank / 2
    }

    pub fn point(&self, rep: Vec<Scalar>) -> Result<TorusPoint> {
        if rep.len() != self.rank {
            return Err(Error::invalid("torus point has wrong ambient dimension"));
        }
        Ok(TorusPoint { rep })
    }

    pub fn zero_point(&self) -> TorusPoint {
        TorusPoint { rep: vec![Scalar::zero(); self.rank] }
    }

    pub fn is_zero(&self, p: &TorusPoint) -> Result<bool> {
        if self.rank == 0 {
            return Ok(true);
        }
        let m = spaces::subgroup_member(
            &p.rep,
            &self.f_basis,
            &Matrix::identity(self.rank),
            MembershipMode::Strict,
            self.d,
        )?;
        Ok(m.inside)
    }

    pub fn points_equal(&self, a: &TorusPoint, b: &TorusPoint) -> Result<bool> {
        let diff: Vec<Scalar> = a
            .rep
            .iter()
            .zip(b.rep.iter())
            .map(|(x, y)| x.clone() - y.clone())
            .collect();
        self.is_zero(&TorusPoint { rep: diff })
    }

    /// Rank of the subgroup generated by the given points, up to torsion:
    /// the dimension they add over Q to F + lattice ⊗ Q.
    pub fn rank_modulo(&self, points: &[TorusPoint]) -> Result<usize> {
        if self.rank == 0 || points.is_empty() {
            return Ok(0);
        }
        let mut cols = Vec::new();
        for j in 0..self.f_basis.cols {
            cols.extend(crate::matrix::unit_expansions(&self.f_basis.col(j), self.d));
        }
        for i in 0..self.rank {
            let mut e = vec![Scalar::zero(); self.rank];
            e[i] = Scalar::one();
            cols.push(crate::matrix::expand_vec(&e));
        }
        let base = Matrix::from_cols(4 * self.rank, cols);
        let base_rank = base.rank();
        let mut all = base;
        for p in points {
            let exp = crate::matrix::expand_vec(&p.rep);
            all = all.hcat(&Matrix::from_cols(4 * self.rank, vec![exp]));
        }
        Ok(all.rank() - base_rank)
    }

    /// Order of a point in the torus group; `Infinite` when the point is
    /// not in the isogeny-saturation of the lattice.
    pub fn point_order(&self, p: &TorusPoint) -> Result<Order> {
        if self.rank == 0 {
            return Ok(Order::Finite(BigInt::one()));
        }
        let m = spaces::subgroup_member(
            &p.rep,
            &self.f_basis,
            &Matrix::identity(self.rank),
            MembershipMode::Isogeny,
            self.d,
        )?;
        if !m.inside {
            return Ok(Order::Infinite);
        }
        let mut l = BigInt::one();
        for c in m.lattice_coefficients.unwrap() {
            let r = c
                .as_rational()
                .ok_or_else(|| Error::Inconsistency("non-rational lattice coefficient".into()))?
                .clone();
            l = l.lcm(r.denom());
        }
        Ok(Order::Finite(l))
    }
}

/// Everything needed to evaluate the extension class map e^p of a mixed
/// Hodge structure: the two adjacent graded pieces, the induced F^p on the
/// odd one, and a section of F^p ∩ W_2p over the even graded piece.
pub struct ExtensionData {
    pub p: i64,
    pub d: u64,
    pub odd: GradedData,
    pub even: GradedData,
    pub odd_pure: Pure,
    pub even_pure: Pure,
    /// Induced F^p on gr^W_{2p-1}, in gr coordinates.
    pub f_odd: Matrix,
    pub jacobian: TorusPresentation,
    /// Saturated lattice of (p,p) integral classes of gr^W_2p.
    pub hodge_basis: Matrix,
    f_even_w: Matrix,
    f_even_w_proj: Matrix,
}

pub fn extension_data(h: &Mhs, p: i64) -> Result<ExtensionData> {
    let analysis = h.analyze()?;
    let (odd_pure, odd) = graded_piece_analyzed(h, &analysis, 2 * p - 1)?;
    let (even_pure, even) = graded_piece_analyzed(h, &analysis, 2 * p)?;
    let f_odd = odd_pure.mhs.hodge_space(p);
    let jacobian = if odd.rank == 0 {
        TorusPresentation::trivial(h.d)
    } else {
        TorusPresentation::new(odd.rank, f_odd.clone(), h.d)?
    };
    let f_even = even_pure.mhs.hodge_space(p);
    let a_pp = spaces::intersect(&f_even, &f_even.conj())?;
    let hodge_basis = spaces::integral_points(&a_pp)?;
    let f_even_w = spaces::intersect(&h.hodge_space(p), &h.weight_space(2 * p))?;
    let f_even_w_proj = even
        .project_matrix(&f_even_w)
        .ok_or_else(|| Error::Inconsistency("F^p ∩ W_2p escapes W_2p".into()))?;
    Ok(ExtensionData {
        p,
        d: h.d,
        odd,
        even,
        odd_pure,
        even_pure,
        f_odd,
        jacobian,
        hodge_basis,
        f_even_w,
        f_even_w_proj,
    })
}

impl ExtensionData {
    /// e^p(x) for x in gr^W_2p coordinates: lift x integrally, lift it into
    /// F^p ∩ W_2p, and project the difference to gr^W_{2p-1}.
    pub fn extension_class(&self, x: &[Scalar]) -> Result<TorusPoint> {
        if x.len() != self.even.rank {
            return Err(Error::invalid("class vector has wrong graded dimension"));
        }
        if self.odd.rank == 0 {
            return Ok(self.jacobian.zero_point());
        }
        let c = self
            .f_even_w_proj
            .solve(x)
            .ok_or_else(|| Error::invalid("class is not represented by F^p ∩ W_2p"))?;
        let x_f = self.f_even_w.mul_vec(&c);
        let x_z = self.even.embed(x);
        let v: Vec<Scalar> = x_f
            .iter()
            .zip(x_z.iter())
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        let rep = self
            .odd
            .project(&v)
            .ok_or_else(|| Error::Inconsistency("lift difference escapes W_{2p-1}".into()))?;
        self.jacobian.point(rep)
    }
}

pub fn jacobian_torus(h: &Mhs, p: i64) -> Result<TorusPresentation> {
    Ok(extension_data(h, p)?.jacobian)
}

/// The largest abelian subtorus of J^p: the rational points of
/// A^{p,p-1} ⊕ A^{p-1,p} inside gr^W_{2p-1} with the induced F.
pub struct AbelianPart {
    /// Saturated integral basis inside the gr^W_{2p-1} lattice.
    pub lattice: Matrix,
    /// The abelian part as a pure weight 2p-1 structure in lattice coords.
    pub pure: Pure,
    pub torus: TorusPresentation,
    /// Field span of A^{p,p-1} ⊕ A^{p-1,p} in gr coordinates.
    pub span: Matrix,
}

pub fn abelian_part(h: &Mhs, p: i64) -> Result<AbelianPart> {
    let analysis = h.analyze()?;
    let k = 2 * p - 1;
    let (zero_span, pieces) = match analysis.weights.get(&k) {
        Some(wa) => (false, wa.pieces.clone()),
        None => (true, Default::default()),
    };
    let r = analysis.weights.get(&k).map_or(0, |wa| wa.graded.rank);
    let mut span = Matrix::zero(r, 0);
    if !zero_span {
        for key in [(p, p - 1), (p - 1, p)] {
            if let Some(b) = pieces.get(&key) {
                span = span.hcat(b);
            }
        }
        span = span.image();
    }
    let lattice = if span.cols == 0 {
        Matrix::zero(r, 0)
    } else {
        spaces::integral_points(&span)?
    };
    let a = lattice.cols;
    let (pure, torus) = if a == 0 {
        (Pure::new(Mhs::zero(h.d), k)?, TorusPresentation::trivial(h.d))
    } else {
        let f_odd = analysis
            .weights
            .get(&k)
            .map(|wa| wa.induced_hodge.get(&p).cloned())
            .flatten()
            .unwrap_or_else(|| Matrix::zero(r, 0));
        let f_in_span = spaces::intersect(&f_odd, &lattice)?;
        let f_a = lattice
            .solve_matrix(&f_in_span)
            .ok_or_else(|| Error::Inconsistency("F-part escapes the abelian span".into()))?;
        let mhs = Mhs::new(
            a,
            h.d,
            vec![(k, Matrix::identity(a))],
            vec![(p - 1, Matrix::identity(a)), (p, f_a.clone())],
        );
        let rep = mhs.validate();
        if !rep.is_valid() {
            return Err(Error::Inconsistency(format!(
                "abelian part is not a pure structure: {}",
                rep.issues.join("; ")
            )));
        }
        (Pure::new(mhs, k)?, TorusPresentation::new(a, f_a, h.d)?)
    };
    Ok(AbelianPart { lattice, pure, torus, span })
}

/// The data of a 1-motive [L -> A]: a lattice mapping to an abelian torus.
pub struct OneMotive {
    pub p: i64,
    /// Columns span the lattice part inside the gr^W_2p lattice.
    pub lattice_basis: Matrix,
    pub abelian: Pure,
    pub torus: TorusPresentation,
    /// Value of the map on each lattice basis column, in abelian coords.
    pub values: Vec<TorusPoint>,
}

pub struct HodgeMotive {
    pub motive: OneMotive,
    pub jacobian: TorusPresentation,
    pub hodge_basis: Matrix,
    /// e^p of each Hodge-class basis column.
    pub class_points: Vec<TorusPoint>,
    /// Two-step structure over the abelian part with the motive's values.
    pub h_hodge: Mhs,
    /// Two-step structure over all of gr^W_{2p-1} with the e^p values of
    /// all Hodge classes.
    pub h_ext: Mhs,
    /// Strict kernel of e^p, a subgroup of the gr^W_2p lattice (columns).
    pub kernel_e: Matrix,
}

/// Extract the Hodge 1-motive of H at level p. In isogeny mode the lattice
/// part is saturated; in strict mode it is the genuine subgroup of classes
/// whose extension class lies on the abelian subtorus.
pub fn hodge_motive(h: &Mhs, p: i64, mode: MembershipMode) -> Result<HodgeMotive> {
    let ext = extension_data(h, p)?;
    let ab = abelian_part(h, p)?;
    let m = ext.odd.rank;
    let hd = ext.hodge_basis.cols;

    let mut class_points = Vec::with_capacity(hd);
    let mut rep_cols = Vec::with_capacity(hd);
    for j in 0..hd {
        let pt = ext.extension_class(&ext.hodge_basis.col(j))?;
        rep_cols.push(pt.rep.clone());
        class_points.push(pt);
    }
    let reps = Matrix::from_cols(m, rep_cols);

    let ident = Matrix::identity(m);
    let n_coords = if m == 0 {
        Matrix::identity(hd)
    } else {
        spaces::kernel_into_subgroup(&reps, &[&ab.lattice, &ext.f_odd], &ident, mode, ext.d)?
    };
    let lattice_basis = ext.hodge_basis.mul(&n_coords);

    let mut values = Vec::with_capacity(n_coords.cols);
    for j in 0..n_coords.cols {
        if m == 0 {
            values.push(ab.torus.zero_point());
            continue;
        }
        let rep = reps.mul_vec(&n_coords.col(j));
        let blocks = [
            Block { basis: &ab.lattice, kind: VarKind::Field },
            Block { basis: &ext.f_odd, kind: VarKind::Field },
            Block {
                basis: &ident,
                kind: match mode {
                    MembershipMode::Strict => VarKind::Integer,
                    MembershipMode::Isogeny => VarKind::Rational,
                },
            },
        ];
        let sol = spaces::solve_mixed(&blocks, &rep, ext.d)?
            .ok_or_else(|| Error::Inconsistency("motive value escapes the abelian subtorus".into()))?;
        values.push(ab.torus.point(sol[0].clone())?);
    }

    let kernel_e = if m == 0 {
        ext.hodge_basis.clone()
    } else {
        let k = spaces::kernel_into_subgroup(&reps, &[&ext.f_odd], &ident, MembershipMode::Strict, ext.d)?;
        ext.hodge_basis.mul(&k)
    };

    let value_reps: Vec<Vec<Scalar>> = values.iter().map(|v| v.rep.clone()).collect();
    let h_hodge = assemble_two_step(&ab.pure, &value_reps, p)?;
    let all_reps: Vec<Vec<Scalar>> = class_points.iter().map(|v| v.rep.clone()).collect();
    let h_ext = assemble_two_step(&ext.odd_pure, &all_reps, p)?;

    let motive = OneMotive {
        p,
        lattice_basis,
        abelian: ab.pure.clone(),
        torus: ab.torus.clone(),
        values,
    };
    Ok(HodgeMotive {
        motive,
        jacobian: ext.jacobian,
        hodge_basis: ext.hodge_basis,
        class_points,
        h_hodge,
        h_ext,
        kernel_e,
    })
}

/// Build the two-step mixed Hodge structure with gr^W_{2p-1} = A and
/// gr^W_2p = Z^r pure of type (p,p), glued so that the extension class of
/// the j-th graded lattice generator is `values[j]`.
pub fn assemble_two_step(a: &Pure, values: &[Vec<Scalar>], p: i64) -> Result<Mhs> {
    if a.weight != 2 * p - 1 {
        return Err(Error::invalid(format!(
            "two-step assembly at level {} needs a pure part of weight {}",
            p,
            2 * p - 1
        )));
    }
    let m = a.rank();
    let r = values.len();
    for v in values {
        if v.len() != m {
            return Err(Error::invalid("extension value has wrong dimension"));
        }
    }
    let n = m + r;
    let pad = |b: &Matrix| -> Matrix {
        let mut cols = Vec::new();
        for j in 0..b.cols {
            let mut v = vec![Scalar::zero(); n];
            for i in 0..m {
                v[i] = b[(i, j)].clone();
            }
            cols.push(v);
        }
        Matrix::from_cols(n, cols)
    };
    let weight = vec![
        (2 * p - 1, pad(&Matrix::identity(m))),
        (2 * p, Matrix::identity(n)),
    ];
    let mut levels: Vec<i64> = a.mhs.hodge_levels();
    for q in [p, p + 1] {
        if !levels.contains(&q) {
            levels.push(q);
        }
    }
    levels.sort();
    let mut hodge = Vec::new();
    for q in levels {
        let mut basis = pad(&a.mhs.hodge_space(q));
        if q <= p {
            let mut cols = Vec::new();
            for (j, v) in values.iter().enumerate() {
                let mut col = vec![Scalar::zero(); n];
                for i in 0..m {
                    col[i] = v[i].clone();
                }
                col[m + j] = Scalar::one();
                cols.push(col);
            }
            basis = basis.hcat(&Matrix::from_cols(n, cols));
        }
        hodge.push((q, basis));
    }
    Ok(Mhs::new(n, a.mhs.d, weight, hodge))
}

/// Realize a 1-motive [Z^r -> A] as a two-step mixed Hodge structure.
/// The pure part must be of abelian type: only (p,p-1) and (p-1,p).
pub fn realize_one_motive(abelian: &Pure, values: &[Vec<Scalar>], p: i64) -> Result<Mhs> {
    let hn = crate::mhs::hodge_numbers(&abelian.mhs)?;
    for (&(a, b), _) in &hn {
        if (a, b) != (p, p - 1) && (a, b) != (p - 1, p) {
            return Err(Error::unsupported(format!(
                "pure part has a class of type ({}, {}); not of abelian type at level {}",
                a, b, p
            )));
        }
    }
    assemble_two_step(abelian, values, p)
}

/// The Hodge 1-motive computed through the sub-quotient route, without
/// ever evaluating e^p on graded pieces.
pub struct MotivePath {
    /// Hodge cycles Hom(Z(-p), H''/H') as a subgroup of the gr^W_2p
    /// lattice (columns; strict, not saturated).
    pub lattice: Matrix,
    /// Strict kernel of h^p, in the same coordinates.
    pub kernel: Matrix,
    /// h^p of each lattice column, in abelian-part coordinates.
    pub values: Vec<TorusPoint>,
    pub torus: TorusPresentation,
}

/// Compute the map h^p of the extension 0 -> H'/W_{2p-2} -> H^e -> H''/H' -> 0
/// directly: H'' is the preimage of the (p,p) classes in W_2p, H' the
/// preimage of the abelian part in W_{2p-1}, and H^e = H''/W_{2p-2}.
/// Integral F^p-points of M = H''/H' are lifted to H^e both integrally and
/// inside F^p; the difference is a point of the abelian subtorus.
pub fn motive_via_quotients(h: &Mhs, p: i64) -> Result<MotivePath> {
    let ext = extension_data(h, p)?;
    let ab = abelian_part(h, p)?;
    let n = h.rank;
    if ext.hodge_basis.cols == 0 {
        return Ok(MotivePath {
            lattice: Matrix::zero(ext.even.rank, 0),
            kernel: Matrix::zero(ext.even.rank, 0),
            values: Vec::new(),
            torus: ab.torus,
        });
    }

    let a = ab.lattice.cols;
    let ab_lifts = if a == 0 {
        Matrix::zero(n, 0)
    } else {
        ext.odd.lift.mul(&ab.lattice)
    };
    // Z-bases of H' and H'': saturated lattices below plus integral lifts
    // of saturated graded lattices are already Z-bases of the pullbacks
    let l0 = ext.odd.lattice_below.clone();
    let hodge_lifts = ext.even.lift.mul(&ext.hodge_basis);
    let b2 = ext.even.lattice_below.hcat(&hodge_lifts);

    let h2 = sub_mhs(h, &b2)?;
    let c0 = if l0.cols == 0 {
        Matrix::zero(b2.cols, 0)
    } else {
        b2.solve_matrix(&l0)
            .ok_or_else(|| Error::Inconsistency("W_{2p-2} escapes H''".into()))?
    };
    let he = quotient_mhs(&h2, &c0)?;

    // abelian lattice inside H^e, columns matching ab.lattice columns
    let a_in_e = if a == 0 {
        Matrix::zero(he.mhs.rank, 0)
    } else {
        let c = b2
            .solve_matrix(&ab_lifts)
            .ok_or_else(|| Error::Inconsistency("abelian lifts escape H''".into()))?;
        he.projection.mul(&c)
    };
    let mq = quotient_mhs(&he.mhs, &a_in_e)?;

    // Hodge cycles: integral points of F^p on M = H''/H'
    let nz = spaces::integral_points(&mq.mhs.hodge_space(p))?;
    let f_e = he.mhs.hodge_space(p);
    let f_e_proj = mq.projection.mul(&f_e);

    let mut values = Vec::with_capacity(nz.cols);
    let mut rep_cols = Vec::with_capacity(nz.cols);
    for j in 0..nz.cols {
        let x = nz.col(j);
        let y_z = mq.section.mul_vec(&x);
        let c = f_e_proj
            .solve(&x)
            .ok_or_else(|| Error::Inconsistency("Hodge cycle is not represented by F^p of H^e".into()))?;
        let y_f = f_e.mul_vec(&c);
        let diff: Vec<Scalar> = y_f
            .iter()
            .zip(y_z.iter())
            .map(|(u, v)| u.clone() - v.clone())
            .collect();
        let rep = if a == 0 {
            if diff.iter().any(|s| !s.is_zero()) {
                return Err(Error::Inconsistency("lift difference escapes the abelian part".into()));
            }
            Vec::new()
        } else {
            a_in_e
                .solve(&diff)
                .ok_or_else(|| Error::Inconsistency("lift difference escapes the abelian part".into()))?
        };
        rep_cols.push(rep.clone());
        values.push(ab.torus.point(rep)?);
    }

    // strict kernel of h^p among the Hodge cycles
    let kern_n = if a == 0 {
        Matrix::identity(nz.cols)
    } else {
        let reps = Matrix::from_cols(a, rep_cols);
        spaces::kernel_into_subgroup(
            &reps,
            &[&ab.torus.f_basis],
            &Matrix::identity(a),
            MembershipMode::Strict,
            ext.d,
        )?
    };

    // map M-classes to gr^W_2p of the original structure
    let to_gr = |cols_in_m: &Matrix| -> Result<Matrix> {
        let mut cols = Vec::new();
        for j in 0..cols_in_m.cols {
            let in_e = mq.section.mul_vec(&cols_in_m.col(j));
            let in_h2 = he.section.mul_vec(&in_e);
            let in_amb = b2.mul_vec(&in_h2);
            let g = ext
                .even
                .project(&in_amb)
                .ok_or_else(|| Error::Inconsistency("cycle lift escapes W_2p".into()))?;
            cols.push(g);
        }
        Ok(Matrix::from_cols(ext.even.rank, cols))
    };
    let lattice_cols = to_gr(&nz)?;
    let kernel_cols = to_gr(&nz.mul(&kern_n))?;
    let lattice = if lattice_cols.cols == 0 {
        lattice_cols
    } else {
        lattice::image_lattice(&lattice_cols)?
    };
    let kernel = if kernel_cols.cols == 0 {
        kernel_cols
    } else {
        lattice::image_lattice(&kernel_cols)?
    };
    Ok(MotivePath { lattice, kernel, values, torus: ab.torus })
}
