//! Cochain complexes of mixed Hodge structures and of lattices: cohomology
//! with induced filtrations, simplicial row complexes with alternating-sum
//! differentials, weight-graded pieces of total cohomology, snake-lemma
//! connecting maps, torus-valued boundary maps from cycle annotations, and
//! the commuting-square verifier for the cycle class map.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice;
use crate::matrix::Matrix;
use crate::mhs::{self, check_morphism, quotient_mhs, sub_mhs, Mhs, Morphism, Pure, Quotient};
use crate::motive::{self, TorusPoint, TorusPresentation};
use crate::scalar::Scalar;
use crate::spaces::{self, Block, MembershipMode, VarKind};

#[derive(Clone, Debug)]
pub struct MhsComplex {
    pub d: u64,
    pub terms: BTreeMap<i64, Mhs>,
    /// diffs[i] maps terms[i] to terms[i+1].
    pub diffs: BTreeMap<i64, Matrix>,
}

impl MhsComplex {
    pub fn term(&self, i: i64) -> Mhs {
        self.terms.get(&i).cloned().unwrap_or_else(|| Mhs::zero(self.d))
    }

    pub fn diff(&self, i: i64) -> Matrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.term(i + 1).rank, self.term(i).rank))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.terms
            .iter()
            .map(|(&i, t)| if i.rem_euclid(2) == 0 { t.rank as i64 } else { -(t.rank as i64) })
            .sum()
    }

    pub fn validate(&self) -> Result<()> {
        for (&i, m) in &self.terms {
            let rep = m.validate();
            if !rep.is_valid() {
                return Err(Error::invalid(format!(
                    "term in degree {} is not a mixed Hodge structure: {}",
                    i,
                    rep.issues.join("; ")
                )));
            }
        }
        for (&i, dm) in &self.diffs {
            let src = self.term(i);
            let tgt = self.term(i + 1);
            if dm.rows != tgt.rank || dm.cols != src.rank {
                return Err(Error::invalid(format!("differential in degree {} has wrong shape", i)));
            }
            let f = Morphism { source: src, target: tgt, matrix: dm.clone() };
            let rep = check_morphism(&f);
            if !rep.is_morphism() {
                return Err(Error::invalid(format!(
                    "differential in degree {} is not a morphism: {}",
                    i,
                    rep.issues.join("; ")
                )));
            }
        }
        let lo = self.terms.keys().min().copied().unwrap_or(0);
        let hi = self.terms.keys().max().copied().unwrap_or(0);
        for i in lo..hi {
            let dd = self.diff(i + 1).mul(&self.diff(i));
            if !dd.is_zero() {
                return Err(Error::invalid(format!(
                    "differential does not square to zero at degrees ({}, {})",
                    i,
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// H^i of a complex of mixed Hodge structures, modulo torsion, together
/// with enough data to move between ambient cycles and their classes.
pub struct CohomologyData {
    pub mhs: Mhs,
    /// Saturated ambient basis of ker d_i.
    pub cycles: Matrix,
    pub quotient: Quotient,
}

impl CohomologyData {
    pub fn rank(&self) -> usize {
        self.mhs.rank
    }

    /// Class coordinates of an ambient (field) cycle; None if it is not a
    /// cycle.
    pub fn class_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.cycles.cols == 0 {
            return if v.iter().all(|s| s.is_zero()) { Some(Vec::new()) } else { None };
        }
        let c = self.cycles.solve(v)?;
        Some(self.quotient.projection.mul_vec(&c))
    }

    /// An ambient integral cycle representing the given class.
    pub fn lift(&self, class: &[Scalar]) -> Vec<Scalar> {
        self.cycles.mul_vec(&self.quotient.section.mul_vec(class))
    }
}

pub fn cohomology_mhs(c: &MhsComplex, i: i64) -> Result<CohomologyData> {
    c.validate()?;
    let a = c.term(i);
    if a.rank == 0 {
        return Ok(CohomologyData {
            mhs: Mhs::zero(c.d),
            cycles: Matrix::zero(0, 0),
            quotient: Quotient { mhs: Mhs::zero(c.d), projection: Matrix::zero(0, 0), section: Matrix::zero(0, 0) },
        });
    }
    let dout = c.diff(i);
    let z = if dout.rows == 0 || dout.is_zero() {
        Matrix::identity(a.rank)
    } else {
        lattice::kernel_integer(&dout)?
    };
    let sub = sub_mhs(&a, &z)?;
    let din = c.diff(i - 1);
    let b_in_z = if din.cols == 0 || din.is_zero() || z.cols == 0 {
        Matrix::zero(z.cols, 0)
    } else {
        let coords = z
            .solve_matrix(&din)
            .ok_or_else(|| Error::Inconsistency(format!("boundaries escape cycles in degree {}", i)))?;
        if coords.is_zero() {
            Matrix::zero(z.cols, 0)
        } else {
            lattice::saturate(&lattice::image_lattice(&coords)?)?
        }
    };
    let quotient = quotient_mhs(&sub, &b_in_z)?;
    Ok(CohomologyData { mhs: quotient.mhs.clone(), cycles: z, quotient })
}

/// Degreewise cohomology data of a smooth proper simplicial scheme: pure
/// structures H^t(X_s) with face maps H^t(X_s) -> H^t(X_{s+1}), plus
/// optional cycle annotations.
#[derive(Clone, Debug)]
pub struct SimplicialDatum {
    pub d: u64,
    /// components[s] holds the pure structures of X_s, keyed by degree t.
    pub components: Vec<BTreeMap<i64, Pure>>,
    /// faces[s][t][k] = face map H^t(X_s) -> H^t(X_{s+1}), 0 <= k <= s+1.
    pub faces: Vec<BTreeMap<i64, Vec<Matrix>>>,
    pub cycle_data: Option<CycleData>,
}

/// Algebraic-cycle annotation: a lattice complex standing in for (NS^p)*,
/// with class maps into the even cohomology lattices and Abel-Jacobi
/// values of boundary lifts in the odd cohomology of the next component.
#[derive(Clone, Debug)]
pub struct CycleData {
    pub p: i64,
    pub ns: LatticeComplex,
    /// class_maps[s]: rank H^2p(X_s) x rank NS^s integer matrix.
    pub class_maps: BTreeMap<i64, Matrix>,
    /// aj[s]: rank H^{2p-1}(X_{s+1}) x rank NS^s field matrix; column j is
    /// the Abel-Jacobi value of the boundary of a cycle lift of the j-th
    /// NS generator. A missing entry means all values vanish.
    pub aj: BTreeMap<i64, Matrix>,
}

impl SimplicialDatum {
    pub fn term(&self, s: usize, t: i64) -> Pure {
        self.components
            .get(s)
            .and_then(|m| m.get(&t))
            .cloned()
            .unwrap_or_else(|| Pure { mhs: Mhs::zero(self.d), weight: t })
    }

    pub fn size(&self) -> usize {
        self.components.len()
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.components.iter().flat_map(|m| m.keys().copied()).collect()
    }

    fn face_maps(&self, s: usize, t: i64) -> Vec<Matrix> {
        let src = self.term(s, t).rank();
        let tgt = self.term(s + 1, t).rank();
        match self.faces.get(s).and_then(|m| m.get(&t)) {
            Some(v) => v.clone(),
            None => vec![Matrix::zero(tgt, src); s + 2],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (s, comp) in self.components.iter().enumerate() {
            for (&t, h) in comp {
                if h.weight != t {
                    return Err(Error::invalid(format!(
                        "component {} carries weight {} in degree {}",
                        s, h.weight, t
                    )));
                }
                let rep = h.mhs.validate();
                if !rep.is_valid() {
                    return Err(Error::invalid(format!(
                        "component {} degree {}: {}",
                        s,
                        t,
                        rep.issues.join("; ")
                    )));
                }
            }
        }
        for s in 0..self.faces.len() {
            for (&t, maps) in &self.faces[s] {
                if maps.len() != s + 2 {
                    return Err(Error::invalid(format!(
                        "component {} degree {} needs {} face maps, found {}",
                        s,
                        t,
                        s + 2,
                        maps.len()
                    )));
                }
                let src = self.term(s, t);
                let tgt = self.term(s + 1, t);
                for (k, m) in maps.iter().enumerate() {
                    if m.rows != tgt.rank() || m.cols != src.rank() {
                        return Err(Error::invalid(format!(
                            "face map {} of component {} degree {} has wrong shape",
                            k, s, t
                        )));
                    }
                    let f = Morphism { source: src.mhs.clone(), target: tgt.mhs.clone(), matrix: m.clone() };
                    let rep = check_morphism(&f);
                    if !rep.is_morphism() {
                        return Err(Error::invalid(format!(
                            "face map {} of component {} degree {} is not a morphism: {}",
                            k,
                            s,
                            t,
                            rep.issues.join("; ")
                        )));
                    }
                }
            }
        }
        for t in self.degrees() {
            row_complex(self, t)?;
        }
        Ok(())
    }
}

/// The degree-t row (H^t)* with alternating-sum differentials.
pub fn row_complex(datum: &SimplicialDatum, t: i64) -> Result<MhsComplex> {
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    let n = datum.size();
    for s in 0..n {
        let h = datum.term(s, t);
        if h.rank() > 0 || s == 0 {
            terms.insert(s as i64, h.mhs.clone());
        }
        if s + 1 < n {
            let maps = datum.face_maps(s, t);
            let mut dm = Matrix::zero(datum.term(s + 1, t).rank(), datum.term(s, t).rank());
            for (k, m) in maps.iter().enumerate() {
                dm = if k % 2 == 0 { dm.add(m) } else { dm.sub(m) };
            }
            diffs.insert(s as i64, dm);
        }
    }
    let c = MhsComplex { d: datum.d, terms, diffs };
    c.validate()?;
    Ok(c)
}

/// gr^W_t H^{t+i}(X) = H^i((H^t)*), pure of weight t.
pub fn weight_graded(datum: &SimplicialDatum, t: i64, i: i64) -> Result<(Pure, CohomologyData)> {
    let row = row_complex(datum, t)?;
    let co = cohomology_mhs(&row, i)?;
    let pure = Pure::new(co.mhs.clone(), t)?;
    Ok((pure, co))
}

#[derive(Clone, Debug)]
pub struct LatticeComplex {
    pub ranks: BTreeMap<i64, usize>,
    /// diffs[i] maps degree i to degree i+1.
    pub diffs: BTreeMap<i64, Matrix>,
}

impl LatticeComplex {
    pub fn rank(&self, i: i64) -> usize {
        self.ranks.get(&i).copied().unwrap_or(0)
    }

    pub fn diff(&self, i: i64) -> Matrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.rank(i + 1), self.rank(i)))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.ranks.keys().copied().collect()
    }

    pub fn validate(&self) -> Result<()> {
        for (&i, m) in &self.diffs {
            if m.rows != self.rank(i + 1) || m.cols != self.rank(i) {
                return Err(Error::invalid(format!("lattice differential in degree {} has wrong shape", i)));
            }
            if !m.is_integer() {
                return Err(Error::invalid(format!("lattice differential in degree {} is not integral", i)));
            }
        }
        let lo = self.ranks.keys().min().copied().unwrap_or(0);
        let hi = self.ranks.keys().max().copied().unwrap_or(0);
        for i in lo..hi {
            if !self.diff(i + 1).mul(&self.diff(i)).is_zero() {
                return Err(Error::invalid(format!(
                    "lattice differential does not square to zero at degrees ({}, {})",
                    i,
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// H^i of a lattice complex, with full torsion information.
pub struct LatticeHomology {
    pub rank: usize,
    /// Invariant factors > 1 of the torsion subgroup.
    pub torsion: Vec<BigInt>,
    /// Saturated ambient basis of ker d_i.
    pub cycles: Matrix,
    /// Ambient representatives of the free generators.
    pub reps: Matrix,
    /// Cycle coordinates -> adapted coordinates; last `rank` entries are
    /// free-part coordinates.
    transform: Matrix,
    boundary_rank: usize,
}

impl LatticeHomology {
    /// Free-part class coordinates of an integral ambient cycle.
    pub fn free_class(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.cycles.cols == 0 {
            if v.iter().any(|s| !s.is_zero()) {
                return Err(Error::invalid("vector is not a cycle"));
            }
            return Ok(Vec::new());
        }
        let x = lattice::solve_integer(&self.cycles, v)?
            .ok_or_else(|| Error::invalid("vector is not an integral cycle"))?;
        let y = self.transform.mul_vec(&x);
        Ok(y[self.boundary_rank..].to_vec())
    }
}

pub fn lattice_homology(c: &LatticeComplex, i: i64) -> Result<LatticeHomology> {
    c.validate()?;
    let n = c.rank(i);
    if n == 0 {
        return Ok(LatticeHomology {
            rank: 0,
            torsion: Vec::new(),
            cycles: Matrix::zero(0, 0),
            reps: Matrix::zero(0, 0),
            transform: Matrix::zero(0, 0),
            boundary_rank: 0,
        });
    }
    let dout = c.diff(i);
    let z = if dout.rows == 0 || dout.is_zero() {
        Matrix::identity(n)
    } else {
        lattice::kernel_integer(&dout)?
    };
    let zc = z.cols;
    let din = c.diff(i - 1);
    let coords = if din.cols == 0 || din.is_zero() || zc == 0 {
        Matrix::zero(zc, 0)
    } else {
        let mut cols = Vec::new();
        for j in 0..din.cols {
            let col = din.col(j);
            let x = lattice::solve_integer(&z, &col)?
                .ok_or_else(|| Error::Inconsistency(format!("boundaries escape cycles in degree {}", i)))?;
            cols.push(x);
        }
        Matrix::from_cols(zc, cols)
    };
    if coords.cols == 0 {
        return Ok(LatticeHomology {
            rank: zc,
            torsion: Vec::new(),
            cycles: z.clone(),
            reps: z,
            transform: Matrix::identity(zc),
            boundary_rank: 0,
        });
    }
    let (s, u, _) = lattice::snf(&coords)?;
    let r = (0..s.rows.min(s.cols)).take_while(|&k| !s[(k, k)].is_zero()).count();
    let mut torsion = Vec::new();
    for k in 0..r {
        let dk = s[(k, k)].as_integer().unwrap();
        if dk > BigInt::one() {
            torsion.push(dk);
        }
    }
    let uinv = lattice::int_inverse(&u)?;
    let adapted = z.mul(&uinv);
    let free_cols: Vec<usize> = (r..zc).collect();
    let reps = adapted.submatrix_cols(&free_cols);
    Ok(LatticeHomology { rank: zc - r, torsion, cycles: z, reps, transform: u, boundary_rank: r })
}

/// A degreewise short exact sequence of lattice complexes
/// 0 -> sub -> mid -> quo -> 0.
pub struct LatticeSes {
    pub sub: LatticeComplex,
    pub mid: LatticeComplex,
    pub quo: LatticeComplex,
    pub inject: BTreeMap<i64, Matrix>,
    pub project: BTreeMap<i64, Matrix>,
}

impl LatticeSes {
    fn inj(&self, i: i64) -> Matrix {
        self.inject
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.mid.rank(i), self.sub.rank(i)))
    }

    fn proj(&self, i: i64) -> Matrix {
        self.project
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.quo.rank(i), self.mid.rank(i)))
    }

    pub fn validate(&self) -> Result<()> {
        self.sub.validate()?;
        self.mid.validate()?;
        self.quo.validate()?;
        let mut degs: BTreeSet<i64> = BTreeSet::new();
        degs.extend(self.sub.degrees());
        degs.extend(self.mid.degrees());
        degs.extend(self.quo.degrees());
        for &i in &degs {
            let f = self.inj(i);
            let g = self.proj(i);
            if self.sub.rank(i) > 0 && lattice::kernel_integer(&f)?.cols != 0 {
                return Err(Error::invalid(format!("inclusion is not injective in degree {}", i)));
            }
            // surjectivity over Z: SNF invariant factors of g are all 1
            if self.quo.rank(i) > 0 {
                let (s, _, _) = lattice::snf(&g)?;
                let full = (0..self.quo.rank(i)).all(|k| k < s.cols && s[(k, k)] == Scalar::one());
                if !full {
                    return Err(Error::invalid(format!("projection is not surjective in degree {}", i)));
                }
            }
            // exactness in the middle: im f = ker g as subgroups
            let imf = if f.cols == 0 || f.is_zero() {
                Matrix::zero(self.mid.rank(i), 0)
            } else {
                lattice::image_lattice(&f)?
            };
            let kerg = if self.mid.rank(i) == 0 {
                Matrix::zero(0, 0)
            } else if g.rows == 0 || g.is_zero() {
                Matrix::identity(self.mid.rank(i))
            } else {
                lattice::kernel_integer(&g)?
            };
            if !lattice::lattices_equal(&imf, &kerg)? {
                return Err(Error::invalid(format!("sequence is not exact in degree {}", i)));
            }
            // compatibility with the differentials
            if self.sub.rank(i) > 0 {
                let lhs = self.mid.diff(i).mul(&f);
                let rhs = self.inj(i + 1).mul(&self.sub.diff(i));
                if lhs != rhs {
                    return Err(Error::invalid(format!("inclusion does not commute with d in degree {}", i)));
                }
            }
            if self.mid.rank(i) > 0 {
                let lhs = self.quo.diff(i).mul(&g);
                let rhs = self.proj(i + 1).mul(&self.mid.diff(i));
                if lhs != rhs {
                    return Err(Error::invalid(format!("projection does not commute with d in degree {}", i)));
                }
            }
        }
        Ok(())
    }
}

/// Snake-lemma connecting homomorphism H^i(quo) -> H^{i+1}(sub) on the
/// free parts.
pub fn connecting_map(ses: &LatticeSes, i: i64) -> Result<Matrix> {
    ses.validate()?;
    let hq = lattice_homology(&ses.quo, i)?;
    let ha = lattice_homology(&ses.sub, i + 1)?;
    let mut cols = Vec::new();
    for j in 0..hq.rank {
        let z = hq.reps.col(j);
        let y = lattice::solve_integer(&ses.proj(i), &z)?
            .ok_or_else(|| Error::Inconsistency(format!("cannot lift a cycle through degree {}", i)))?;
        let w = ses.mid.diff(i).mul_vec(&y);
        let a = lattice::solve_integer(&ses.inj(i + 1), &w)?
            .ok_or_else(|| Error::Inconsistency(format!("boundary escapes the sub-complex in degree {}", i + 1)))?;
        cols.push(ha.free_class(&a)?);
    }
    Ok(Matrix::from_cols(ha.rank, cols))
}

/// The boundary map of cycle classes into the torus of the next
/// weight-graded odd piece, evaluated on the free generators of
/// H^i((NS^p)*).
pub struct LambdaTable {
    pub p: i64,
    pub degree: i64,
    pub homology: LatticeHomology,
    pub torus: TorusPresentation,
    pub values: Vec<TorusPoint>,
    pub odd_graded: Pure,
    pub odd_cohomology: CohomologyData,
    /// Rank of the subgroup generated by the values, up to torsion.
    pub image_rank: usize,
}

pub fn extension_connecting(datum: &SimplicialDatum, i: i64) -> Result<LambdaTable> {
    let cd = datum
        .cycle_data
        .as_ref()
        .ok_or_else(|| Error::unsupported("no cycle-data annotation present"))?;
    let p = cd.p;
    let hom = lattice_homology(&cd.ns, i)?;
    let (odd_graded, odd_co) = weight_graded(datum, 2 * p - 1, i + 1)?;
    let m = odd_graded.rank();
    let torus = if m == 0 {
        TorusPresentation::trivial(datum.d)
    } else {
        TorusPresentation::new(m, odd_graded.mhs.hodge_space(p), datum.d)?
    };
    let mut values = Vec::with_capacity(hom.rank);
    for j in 0..hom.rank {
        let z = hom.reps.col(j);
        let rep = lambda_value(datum, cd, i, &z)?;
        let class = odd_co
            .class_of(&rep)
            .ok_or_else(|| Error::Inconsistency("corrected boundary is not a cycle".into()))?;
        values.push(torus.point(class)?);
    }
    let image_rank = torus.rank_modulo(&values)?;
    Ok(LambdaTable {
        p,
        degree: i,
        homology: hom,
        torus,
        values,
        odd_graded,
        odd_cohomology: odd_co,
        image_rank,
    })
}

/// Abel-Jacobi boundary of an NS-cycle z of degree i, corrected to an
/// exact cycle of the odd row, as an ambient vector over H^{2p-1}(X_{i+1}).
fn lambda_value(datum: &SimplicialDatum, cd: &CycleData, i: i64, z: &[Scalar]) -> Result<Vec<Scalar>> {
    let p = cd.p;
    let amb = datum.term((i + 1) as usize, 2 * p - 1);
    let aj = match cd.aj.get(&i) {
        Some(m) => m.clone(),
        None => Matrix::zero(amb.rank(), cd.ns.rank(i)),
    };
    if aj.rows != amb.rank() || aj.cols != cd.ns.rank(i) {
        return Err(Error::invalid(format!("Abel-Jacobi table at degree {} has wrong shape", i)));
    }
    let w = aj.mul_vec(z);
    if amb.rank() == 0 {
        return Ok(w);
    }
    // correct w by an element of F^p + Lambda_Q so that it becomes an
    // exact cycle of the odd row complex
    let row = row_complex(datum, 2 * p - 1)?;
    let delta = row.diff(i + 1);
    if delta.rows == 0 {
        return Ok(w);
    }
    let dw = delta.mul_vec(&w);
    if dw.iter().all(|s| s.is_zero()) {
        return Ok(w);
    }
    let f = amb.mhs.hodge_space(p);
    let df = delta.mul(&f);
    let dl = delta.clone();
    let blocks = [
        Block { basis: &df, kind: VarKind::Field },
        Block { basis: &dl, kind: VarKind::Rational },
    ];
    let sol = spaces::solve_mixed(&blocks, &dw, datum.d)?
        .ok_or_else(|| Error::invalid("Abel-Jacobi annotation does not define a torus cycle"))?;
    let corr_f = f.mul_vec(&sol[0]);
    let corr_l = sol[1].clone();
    let out: Vec<Scalar> = w
        .iter()
        .zip(corr_f.iter().zip(corr_l.iter()))
        .map(|(a, (b, c))| a.clone() - b.clone() - c.clone())
        .collect();
    Ok(out)
}

/// The two-step mixed Hodge structure H^e of H^{2p+i}(X) assembled from
/// the weight-graded pieces and the cycle annotation: gr^W_{2p-1} in full,
/// and the (p,p) classes of gr^W_2p with extension values derived from
/// Abel-Jacobi data of representing algebraic cycles.
pub struct AssembledExtension {
    pub mhs: Mhs,
    pub odd_graded: Pure,
    pub even_graded: Pure,
    pub even_cohomology: CohomologyData,
    /// Hodge classes of gr^W_2p, columns in graded coordinates.
    pub hodge_basis: Matrix,
    /// Extension value of each Hodge-class column, in odd graded coords.
    pub table: Vec<Vec<Scalar>>,
}

pub fn assemble_extension(datum: &SimplicialDatum, p: i64, i: i64) -> Result<AssembledExtension> {
    let cd = datum
        .cycle_data
        .as_ref()
        .ok_or_else(|| Error::unsupported("no cycle-data annotation present"))?;
    if cd.p != p {
        return Err(Error::unsupported(format!(
            "cycle-data annotation is at level {}, requested {}",
            cd.p, p
        )));
    }
    let (odd_graded, odd_co) = weight_graded(datum, 2 * p - 1, i + 1)?;
    let (even_graded, even_co) = weight_graded(datum, 2 * p, i)?;
    let hodge_basis = mhs::hodge_classes(&even_graded.mhs, p)?;
    let class_map = match cd.class_maps.get(&i) {
        Some(m) => m.clone(),
        None => Matrix::zero(datum.term(i as usize, 2 * p).rank(), cd.ns.rank(i)),
    };
    let even_row = row_complex(datum, 2 * p)?;
    let boundary = even_row.diff(i - 1);
    let mut table = Vec::with_capacity(hodge_basis.cols);
    for j in 0..hodge_basis.cols {
        if odd_graded.rank() == 0 {
            table.push(Vec::new());
            continue;
        }
        let cls = hodge_basis.col(j);
        let ambient = even_co.lift(&cls);
        // express the cycle through the NS classes, up to boundaries and
        // isogeny (rational coefficients)
        let blocks = [
            Block { basis: &class_map, kind: VarKind::Rational },
            Block { basis: &boundary, kind: VarKind::Rational },
        ];
        let sol = spaces::solve_mixed(&blocks, &ambient, datum.d)?.ok_or_else(|| {
            Error::unsupported(format!(
                "Hodge class {} of gr^W_{} is not represented by the cycle annotation",
                j,
                2 * p
            ))
        })?;
        let rep = lambda_value(datum, cd, i, &sol[0])?;
        let class = odd_co
            .class_of(&rep)
            .ok_or_else(|| Error::Inconsistency("corrected boundary is not a cycle".into()))?;
        table.push(class);
    }
    let mhs = motive::assemble_two_step(&odd_graded, &table, p)?;
    Ok(AssembledExtension {
        mhs,
        odd_graded,
        even_graded,
        even_cohomology: even_co,
        hodge_basis,
        table,
    })
}

/// Verdict of the commuting-square verifier: the boundary map on NS
/// homology against the extension class map on the assembled structure.
pub struct SquareReport {
    pub commutes: bool,
    /// Generators where the two paths disagree, with both values.
    pub witnesses: Vec<(usize, TorusPoint, TorusPoint)>,
    pub lambda: LambdaTable,
    pub kernel_rank: usize,
}

pub fn motivic_square_check(datum: &SimplicialDatum, p: i64, i: i64) -> Result<SquareReport> {
    let cd = datum
        .cycle_data
        .as_ref()
        .ok_or_else(|| Error::unsupported("no cycle-data annotation present"))?;
    if cd.p != p {
        return Err(Error::unsupported(format!(
            "cycle-data annotation is at level {}, requested {}",
            cd.p, p
        )));
    }
    let lambda = extension_connecting(datum, i)?;
    let asm = assemble_extension(datum, p, i)?;
    let ext = motive::extension_data(&asm.mhs, p)?;
    let class_map = match cd.class_maps.get(&i) {
        Some(m) => m.clone(),
        None => Matrix::zero(datum.term(i as usize, 2 * p).rank(), cd.ns.rank(i)),
    };
    let m_odd = asm.odd_graded.rank();
    let mut witnesses = Vec::new();
    for j in 0..lambda.homology.rank {
        let z = lambda.homology.reps.col(j);
        // cycle-class path: class in gr^W_2p, then e^p on the assembly
        let ambient = class_map.mul_vec(&z);
        let cls = asm
            .even_cohomology
            .class_of(&ambient)
            .ok_or_else(|| Error::Inconsistency("NS class map does not send cycles to cycles".into()))?;
        let in_hodge = asm
            .hodge_basis
            .solve(&cls)
            .ok_or_else(|| Error::Inconsistency("NS image is not a Hodge class".into()))?;
        // coordinates of the class inside gr^W_2p of the assembled H
        let n = asm.mhs.rank;
        let mut amb2 = vec![Scalar::zero(); n];
        for (k, c) in in_hodge.iter().enumerate() {
            amb2[m_odd + k] = c.clone();
        }
        let gr_coords = ext
            .even
            .project(&amb2)
            .ok_or_else(|| Error::Inconsistency("class lift escapes W_2p".into()))?;
        let via_e = ext.extension_class(&gr_coords)?;
        let via_lambda = &lambda.values[j];
        // both live in the torus of the odd graded piece; the assembled
        // odd graded lattice is the identity on the first block
        let equal = lambda.torus.points_equal(via_lambda, &via_e)?;
        if !equal {
            witnesses.push((j, via_lambda.clone(), via_e.clone()));
        }
        let _ = z;
    }
    // kernel of the boundary map on NS homology, as a subgroup
    let m = lambda.torus.rank;
    let reps = Matrix::from_cols(
        m,
        lambda.values.iter().map(|v| v.rep.clone()).collect(),
    );
    let ident = Matrix::identity(m);
    let kernel = spaces::kernel_into_subgroup(
        &reps,
        &[&lambda.torus.f_basis],
        &ident,
        MembershipMode::Strict,
        datum.d,
    )?;
    let kernel_rank = kernel.cols;
    Ok(SquareReport { commutes: witnesses.is_empty(), witnesses, lambda, kernel_rank })
}
