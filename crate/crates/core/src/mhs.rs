//! Finite-dimensional mixed Hodge structures: the triple (lattice, W, F),
//! opposedness validation, graded pieces, Tate twists, morphisms with
//! strictness checks, kernels/cokernels, and Hodge-class lattices.
//!
//! Filtrations are stored sparsely as jump lists. Absent weight indices
//! inherit from below, absent Hodge levels inherit from above; below the
//! lowest weight jump W is zero, above the highest Hodge level F is zero.
//! The top weight jump and the lowest Hodge level must be the full space.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::spaces;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mhs {
    pub rank: usize,
    pub d: u64,
    /// Increasing weight filtration: (weight, rational basis of W_k), sorted.
    pub weight: Vec<(i64, Matrix)>,
    /// Decreasing Hodge filtration: (level, field basis of F^p), sorted by level.
    pub hodge: Vec<(i64, Matrix)>,
}

impl Mhs {
    pub fn new(rank: usize, d: u64, mut weight: Vec<(i64, Matrix)>, mut hodge: Vec<(i64, Matrix)>) -> Self {
        weight.sort_by_key(|&(k, _)| k);
        hodge.sort_by_key(|&(p, _)| p);
        Mhs { rank, d, weight, hodge }
    }

    pub fn zero(d: u64) -> Self {
        Mhs { rank: 0, d, weight: Vec::new(), hodge: Vec::new() }
    }

    /// The Tate structure Z(m): rank 1, weight -2m, type (-m, -m).
    pub fn tate(m: i64, d: u64) -> Self {
        Mhs::new(1, d, vec![(-2 * m, Matrix::identity(1))], vec![(-m, Matrix::identity(1))])
    }

    pub fn weight_space(&self, k: i64) -> Matrix {
        self.weight
            .iter()
            .rev()
            .find(|&&(j, _)| j <= k)
            .map(|(_, b)| b.clone())
            .unwrap_or_else(|| Matrix::zero(self.rank, 0))
    }

    pub fn hodge_space(&self, p: i64) -> Matrix {
        self.hodge
            .iter()
            .find(|&&(q, _)| q >= p)
            .map(|(_, b)| b.clone())
            .unwrap_or_else(|| Matrix::zero(self.rank, 0))
    }

    pub fn weight_jumps(&self) -> Vec<i64> {
        self.weight.iter().map(|&(k, _)| k).collect()
    }

    pub fn hodge_levels(&self) -> Vec<i64> {
        self.hodge.iter().map(|&(p, _)| p).collect()
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.weight.first().map(|&(k, _)| k)
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.weight.last().map(|&(k, _)| k)
    }

    /// W_k(H(m)) = W_{k+2m}(H), F^p(H(m)) = F^{p+m}(H).
    pub fn tate_twist(&self, m: i64) -> Mhs {
        Mhs::new(
            self.rank,
            self.d,
            self.weight.iter().map(|(k, b)| (k - 2 * m, b.clone())).collect(),
            self.hodge.iter().map(|(p, b)| (p - m, b.clone())).collect(),
        )
    }

    /// Direct sum, block diagonal.
    pub fn direct_sum(&self, other: &Mhs) -> Mhs {
        let n = self.rank + other.rank;
        let embed = |b: &Matrix, top: bool| -> Matrix {
            let mut cols = Vec::new();
            for j in 0..b.cols {
                let mut v = vec![Scalar::zero(); n];
                for i in 0..b.rows {
                    let idx = if top { i } else { self.rank + i };
                    v[idx] = b[(i, j)].clone();
                }
                cols.push(v);
            }
            Matrix::from_cols(n, cols)
        };
        let keys: BTreeSet<i64> = self
            .weight_jumps()
            .into_iter()
            .chain(other.weight_jumps())
            .collect();
        let weight = keys
            .iter()
            .map(|&k| (k, embed(&self.weight_space(k), true).hcat(&embed(&other.weight_space(k), false)).image()))
            .collect();
        let keys: BTreeSet<i64> = self
            .hodge_levels()
            .into_iter()
            .chain(other.hodge_levels())
            .collect();
        let hodge = keys
            .iter()
            .map(|&p| (p, embed(&self.hodge_space(p), true).hcat(&embed(&other.hodge_space(p), false)).image()))
            .collect();
        let d = if self.d == 1 { other.d } else { self.d };
        Mhs::new(n, d, weight, hodge)
    }

    /// Change of lattice basis by a unimodular integer matrix U: the new
    /// structure has coordinates x' with old = U x'.
    pub fn change_basis(&self, u: &Matrix) -> Result<Mhs> {
        let uinv = lattice::int_inverse(u)?;
        let tr = |b: &Matrix| uinv.mul(b);
        Ok(Mhs::new(
            self.rank,
            self.d,
            self.weight.iter().map(|(k, b)| (*k, tr(b))).collect(),
            self.hodge.iter().map(|(p, b)| (*p, tr(b))).collect(),
        ))
    }

    pub fn validate(&self) -> ValidationReport {
        validate_mhs(self)
    }

    pub fn analyze(&self) -> Result<Analysis> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::invalid(format!(
                "not a mixed Hodge structure: {}",
                report.issues.join("; ")
            )));
        }
        Ok(report.analysis.unwrap())
    }
}

/// Integral data of one weight-graded piece: lifts of a lattice basis of
/// gr^W_k and the projection of W_k onto gr coordinates.
#[derive(Clone, Debug)]
pub struct GradedData {
    pub weight: i64,
    pub rank: usize,
    /// n x rank integral matrix; columns lift a basis of the graded lattice.
    pub lift: Matrix,
    /// Saturated lattice of W_{k-1}.
    pub lattice_below: Matrix,
    /// [basis of W_{k-1} | lift]; inverting against it computes the projection.
    full_basis: Matrix,
    ambient: usize,
}

impl GradedData {
    /// Coordinates in gr^W_k of a vector of W_k (x) C; None outside W_k.
    pub fn project(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.rank == 0 {
            return if self.full_basis.cols == 0 {
                // W_k itself may be nonzero; membership is not checked then
                Some(Vec::new())
            } else {
                self.full_basis.solve(v).map(|_| Vec::new())
            };
        }
        let x = self.full_basis.solve(v)?;
        let off = self.full_basis.cols - self.rank;
        Some(x[off..].to_vec())
    }

    pub fn project_matrix(&self, m: &Matrix) -> Option<Matrix> {
        let mut cols = Vec::new();
        for j in 0..m.cols {
            cols.push(self.project(&m.col(j))?);
        }
        Some(Matrix::from_cols(self.rank, cols))
    }

    /// Embed gr-coordinates back into the ambient space via the integral lifts.
    pub fn embed(&self, v: &[Scalar]) -> Vec<Scalar> {
        if self.rank == 0 {
            return vec![Scalar::zero(); self.ambient];
        }
        self.lift.mul_vec(v)
    }
}

fn graded_data(h: &Mhs, k: i64) -> Result<GradedData> {
    let wk = h.weight_space(k);
    let wk1 = h.weight_space(k - 1);
    let lk = if wk.cols == 0 {
        Matrix::zero(h.rank, 0)
    } else {
        lattice::saturate_rational_span(&wk)?
    };
    let lk1 = if wk1.cols == 0 {
        Matrix::zero(h.rank, 0)
    } else {
        lattice::saturate_rational_span(&wk1)?
    };
    let r = lk.cols - lk1.cols;
    if lk.cols == 0 {
        return Ok(GradedData {
            weight: k,
            rank: 0,
            lift: Matrix::zero(h.rank, 0),
            lattice_below: lk1,
            full_basis: Matrix::zero(h.rank, 0),
            ambient: h.rank,
        });
    }
    // complete a basis of L_{k-1} to one of L_k; SNF of the coordinate
    // matrix has all invariants 1 because L_{k-1} is saturated
    let lift = if r == 0 {
        Matrix::zero(h.rank, 0)
    } else if lk1.cols == 0 {
        lk.clone()
    } else {
        let mut coords = Vec::new();
        for j in 0..lk1.cols {
            let c = lattice::solve_integer(&lk, &lk1.col(j))?
                .ok_or_else(|| Error::Inconsistency("W_{k-1} lattice escapes W_k lattice".into()))?;
            coords.push(c);
        }
        let cmat = Matrix::from_cols(lk.cols, coords);
        let (_, u, _) = lattice::snf(&cmat)?;
        let uinv = lattice::int_inverse(&u)?;
        let b = lk.mul(&uinv);
        let idx: Vec<usize> = (lk1.cols..lk.cols).collect();
        b.submatrix_cols(&idx)
    };
    let full_basis = wk1.hcat(&lift);
    Ok(GradedData {
        weight: k,
        rank: r,
        lift,
        lattice_below: lk1,
        full_basis,
        ambient: h.rank,
    })
}

#[derive(Clone, Debug)]
pub struct WeightAnalysis {
    pub graded: GradedData,
    /// Induced Hodge filtration on gr^W_k, per level of interest.
    pub induced_hodge: BTreeMap<i64, Matrix>,
    /// A^{p,q} bases on gr^W_k, keyed by (p, q), nonzero only.
    pub pieces: BTreeMap<(i64, i64), Matrix>,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub weights: BTreeMap<i64, WeightAnalysis>,
}

impl Analysis {
    pub fn hodge_numbers(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for wa in self.weights.values() {
            for (&pq, basis) in &wa.pieces {
                if basis.cols > 0 {
                    *out.entry(pq).or_insert(0) += basis.cols;
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub issues: Vec<String>,
    /// Per weight: (weight, gr rank, [(p, q, dim)]).
    pub weight_bookkeeping: Vec<(i64, usize, Vec<(i64, i64, usize)>)>,
    pub analysis: Option<Analysis>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

pub fn validate_mhs(h: &Mhs) -> ValidationReport {
    let mut rep = ValidationReport::default();
    if h.rank == 0 {
        rep.analysis = Some(Analysis { weights: BTreeMap::new() });
        return rep;
    }

    // shape checks
    for (k, b) in &h.weight {
        if b.rows != h.rank {
            rep.issues.push(format!("W_{} basis has wrong ambient dimension", k));
        } else if !b.is_rational() {
            rep.issues.push(format!("W_{} basis is not rational", k));
        } else if b.rank() != b.cols {
            rep.issues.push(format!("W_{} basis columns are dependent", k));
        }
    }
    for (p, b) in &h.hodge {
        if b.rows != h.rank {
            rep.issues.push(format!("F^{} basis has wrong ambient dimension", p));
        } else if b.rank() != b.cols {
            rep.issues.push(format!("F^{} basis columns are dependent", p));
        }
    }
    if !rep.issues.is_empty() {
        return rep;
    }

    // nesting and exhaustiveness
    match h.weight.last() {
        None => rep.issues.push("weight filtration is empty on a positive-rank lattice".into()),
        Some((k, b)) => {
            if b.cols != h.rank {
                rep.issues.push(format!("weight filtration is not exhaustive: top jump W_{} has dimension {} < {}", k, b.cols, h.rank));
            }
        }
    }
    for w in h.weight.windows(2) {
        let (k0, b0) = &w[0];
        let (k1, b1) = &w[1];
        if !spaces::span_subset(b0, b1) {
            rep.issues.push(format!("weight filtration not nested: W_{} is not inside W_{}", k0, k1));
        }
    }
    match h.hodge.first() {
        None => rep.issues.push("Hodge filtration is empty on a positive-rank lattice".into()),
        Some((p, b)) => {
            if b.cols != h.rank {
                rep.issues.push(format!("Hodge filtration is not exhaustive: lowest level F^{} has dimension {} < {}", p, b.cols, h.rank));
            }
        }
    }
    for w in h.hodge.windows(2) {
        let (p0, b0) = &w[0];
        let (p1, b1) = &w[1];
        if !spaces::span_subset(b1, b0) {
            rep.issues.push(format!("Hodge filtration not nested: F^{} is not inside F^{}", p1, p0));
        }
    }
    if !rep.issues.is_empty() {
        return rep;
    }

    // opposedness, weight by weight
    let f_hi = h.hodge_levels().last().copied().unwrap_or(0);
    let mut weights = BTreeMap::new();
    let kmin = h.min_weight().unwrap();
    let kmax = h.max_weight().unwrap();
    for k in kmin..=kmax {
        let graded = match graded_data(h, k) {
            Ok(g) => g,
            Err(e) => {
                rep.issues.push(format!("graded piece at weight {}: {}", k, e));
                continue;
            }
        };
        let r = graded.rank;
        if r == 0 {
            continue;
        }
        let wk_field = h.weight_space(k);
        let mut induced = BTreeMap::new();
        let mut pieces = BTreeMap::new();
        let mut bookkeeping = Vec::new();
        let p_lo = k - f_hi;
        for p in p_lo..=f_hi {
            let fw = match spaces::intersect(&h.hodge_space(p), &wk_field) {
                Ok(m) => m,
                Err(e) => {
                    rep.issues.push(format!("F^{} ∩ W_{}: {}", p, k, e));
                    continue;
                }
            };
            match graded.project_matrix(&fw) {
                Some(proj) => {
                    induced.insert(p, proj.image());
                }
                None => {
                    rep.issues.push(format!("projection of F^{} ∩ W_{} failed", p, k));
                }
            }
        }
        if !rep.issues.is_empty() {
            return rep;
        }
        let mut total = 0usize;
        let mut concat = Matrix::zero(r, 0);
        for p in p_lo..=f_hi {
            let q = k - p;
            let fp = induced.get(&p).cloned().unwrap_or_else(|| Matrix::zero(r, 0));
            let fq = induced.get(&q).cloned().unwrap_or_else(|| Matrix::zero(r, 0));
            let a_pq = spaces::intersect(&fp, &fq.conj()).unwrap();
            if a_pq.cols > 0 {
                total += a_pq.cols;
                concat = concat.hcat(&a_pq);
                bookkeeping.push((p, q, a_pq.cols));
                pieces.insert((p, q), a_pq);
            }
        }
        if total != r || concat.rank() != r {
            rep.issues.push(format!(
                "weight {}: A^(p,q) pieces have total dimension {} with span of rank {}, expected {} (opposedness fails)",
                k, total, concat.rank(), r
            ));
        }
        for (&(p, q), a) in &pieces {
            match pieces.get(&(q, p)) {
                Some(b) => {
                    if !spaces::spans_equal(&a.conj(), b) {
                        rep.issues.push(format!("conj(A^({},{})) differs from A^({},{}) at weight {}", p, q, q, p, k));
                    }
                }
                None => rep.issues.push(format!("A^({},{}) present but A^({},{}) missing at weight {}", p, q, q, p, k)),
            }
        }
        rep.weight_bookkeeping.push((k, r, bookkeeping));
        weights.insert(k, WeightAnalysis { graded, induced_hodge: induced, pieces });
    }
    if rep.issues.is_empty() {
        rep.analysis = Some(Analysis { weights });
    }
    rep
}

pub fn hodge_numbers(h: &Mhs) -> Result<BTreeMap<(i64, i64), usize>> {
    Ok(h.analyze()?.hodge_numbers())
}

/// A pure Hodge structure: an MHS whose weight filtration jumps once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pure {
    pub mhs: Mhs,
    pub weight: i64,
}

impl Pure {
    pub fn new(mhs: Mhs, weight: i64) -> Result<Self> {
        if mhs.rank > 0 {
            let nontrivial: Vec<i64> = mhs
                .weight
                .iter()
                .filter(|(_, b)| b.cols > 0)
                .map(|&(k, _)| k)
                .collect();
            let distinct_dims: BTreeSet<usize> = mhs.weight.iter().map(|(_, b)| b.cols).collect();
            if nontrivial.iter().any(|&k| k > weight) || distinct_dims.iter().any(|&d| d != 0 && d != mhs.rank) {
                return Err(Error::invalid(format!("weight filtration jumps more than once or above {}", weight)));
            }
            if mhs.weight_space(weight).cols != mhs.rank || mhs.weight_space(weight - 1).cols != 0 {
                return Err(Error::invalid(format!("structure is not pure of weight {}", weight)));
            }
        }
        Ok(Pure { mhs, weight })
    }

    pub fn rank(&self) -> usize {
        self.mhs.rank
    }
}

/// The weight-k graded piece with its saturated integral lattice and
/// induced Hodge filtration, as a pure structure in gr coordinates.
pub fn graded_piece(h: &Mhs, k: i64) -> Result<(Pure, GradedData)> {
    let analysis = h.analyze()?;
    graded_piece_analyzed(h, &analysis, k)
}

pub fn graded_piece_analyzed(h: &Mhs, analysis: &Analysis, k: i64) -> Result<(Pure, GradedData)> {
    let (graded, induced): (GradedData, BTreeMap<i64, Matrix>) = match analysis.weights.get(&k) {
        Some(wa) => (wa.graded.clone(), wa.induced_hodge.clone()),
        None => (graded_data(h, k)?, BTreeMap::new()),
    };
    let r = graded.rank;
    if r == 0 {
        return Ok((Pure { mhs: Mhs::zero(h.d), weight: k }, graded));
    }
    let mut hodge: Vec<(i64, Matrix)> = Vec::new();
    for (&p, basis) in &induced {
        hodge.push((p, basis.clone()));
    }
    // guarantee exhaustiveness at the low end
    if hodge.first().map_or(true, |(_, b)| b.cols != r) {
        let lo = hodge.first().map(|&(p, _)| p - 1).unwrap_or(0);
        hodge.insert(0, (lo, Matrix::identity(r)));
    }
    let mhs = Mhs::new(r, h.d, vec![(k, Matrix::identity(r))], hodge);
    Ok((Pure::new(mhs, k)?, graded))
}

/// Basis of the saturated lattice of (p,p) Hodge classes F^p ∩ W_2p ∩ Z^n.
pub fn hodge_classes(h: &Mhs, p: i64) -> Result<Matrix> {
    let v = spaces::intersect(&h.hodge_space(p), &h.weight_space(2 * p))?;
    spaces::integral_points(&v)
}

#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Mhs,
    pub target: Mhs,
    /// Integer matrix on lattices, target.rank x source.rank.
    pub matrix: Matrix,
}

#[derive(Clone, Debug, Default)]
pub struct MorphismReport {
    pub w_compatible: bool,
    pub f_compatible: bool,
    pub strict: bool,
    pub issues: Vec<String>,
}

impl MorphismReport {
    pub fn is_morphism(&self) -> bool {
        self.issues.is_empty() && self.w_compatible && self.f_compatible && self.strict
    }
}

pub fn check_morphism(f: &Morphism) -> MorphismReport {
    let mut rep = MorphismReport { w_compatible: true, f_compatible: true, strict: true, issues: Vec::new() };
    if f.matrix.rows != f.target.rank || f.matrix.cols != f.source.rank {
        rep.issues.push("matrix shape does not match source/target ranks".into());
        rep.w_compatible = false;
        rep.f_compatible = false;
        rep.strict = false;
        return rep;
    }
    if !f.matrix.is_integer() {
        rep.issues.push("morphism matrix must be integral".into());
        return rep;
    }
    let jumps: BTreeSet<i64> = f
        .source
        .weight_jumps()
        .into_iter()
        .chain(f.target.weight_jumps())
        .collect();
    for &k in &jumps {
        let img = f.matrix.mul(&f.source.weight_space(k));
        if !spaces::span_subset(&img, &f.target.weight_space(k)) {
            rep.w_compatible = false;
            rep.issues.push(format!("image of W_{} escapes W_{} of the target", k, k));
        }
    }
    let levels: BTreeSet<i64> = f
        .source
        .hodge_levels()
        .into_iter()
        .chain(f.target.hodge_levels())
        .collect();
    for &p in &levels {
        let img = f.matrix.mul(&f.source.hodge_space(p));
        if !spaces::span_subset(&img, &f.target.hodge_space(p)) {
            rep.f_compatible = false;
            rep.issues.push(format!("image of F^{} escapes F^{} of the target", p, p));
        }
    }
    if rep.w_compatible && rep.f_compatible {
        // strictness: f(H) ∩ W_k = f(W_k H), and the same for F
        let full_img = f.matrix.image();
        for &k in &jumps {
            let lhs = spaces::intersect(&full_img, &f.target.weight_space(k)).unwrap();
            let rhs = f.matrix.mul(&f.source.weight_space(k)).image();
            if !spaces::spans_equal(&lhs, &rhs) {
                rep.strict = false;
                rep.issues.push(format!("not strict at W_{}", k));
            }
        }
        for &p in &levels {
            let lhs = spaces::intersect(&full_img, &f.target.hodge_space(p)).unwrap();
            let rhs = f.matrix.mul(&f.source.hodge_space(p)).image();
            if !spaces::spans_equal(&lhs, &rhs) {
                rep.strict = false;
                rep.issues.push(format!("not strict at F^{}", p));
            }
        }
    }
    rep
}

/// The induced structure on a saturated integral sublattice, in the
/// coordinates of the given basis columns.
pub fn sub_mhs(h: &Mhs, basis: &Matrix) -> Result<Mhs> {
    if basis.cols == 0 {
        return Ok(Mhs::zero(h.d));
    }
    let coords = |space: &Matrix| -> Result<Matrix> {
        let inter = spaces::intersect(&basis.clone(), space)?;
        basis
            .solve_matrix(&inter)
            .ok_or_else(|| Error::Inconsistency("intersection escaped the sublattice span".into()))
    };
    let mut weight = Vec::new();
    for (k, b) in &h.weight {
        weight.push((*k, coords(b)?));
    }
    let mut hodge = Vec::new();
    for (p, b) in &h.hodge {
        hodge.push((*p, coords(b)?));
    }
    Ok(Mhs::new(basis.cols, h.d, weight, hodge))
}

/// Quotient by a saturated integral sublattice, with the integral
/// projection and a section (quotient-basis lifts).
pub struct Quotient {
    pub mhs: Mhs,
    /// (n - s) x n integral projection onto quotient coordinates.
    pub projection: Matrix,
    /// n x (n - s) integral section: lifts of the quotient basis.
    pub section: Matrix,
}

pub fn quotient_mhs(h: &Mhs, sub: &Matrix) -> Result<Quotient> {
    let n = h.rank;
    let s = sub.cols;
    if s == 0 {
        return Ok(Quotient { mhs: h.clone(), projection: Matrix::identity(n), section: Matrix::identity(n) });
    }
    if s == n {
        return Ok(Quotient { mhs: Mhs::zero(h.d), projection: Matrix::zero(0, n), section: Matrix::zero(n, 0) });
    }
    let (smat, u, _) = lattice::snf(sub)?;
    for i in 0..s {
        if smat[(i, i)] != Scalar::one() {
            return Err(Error::invalid("quotient by a non-saturated sublattice"));
        }
    }
    let uinv = lattice::int_inverse(&u)?;
    let sect_cols: Vec<usize> = (s..n).collect();
    let section = uinv.submatrix_cols(&sect_cols);
    // projection = last n - s rows of U
    let proj = {
        let mut rows = Vec::new();
        for i in s..n {
            rows.push((0..n).map(|j| u[(i, j)].clone()).collect());
        }
        Matrix::from_rows(rows)
    };
    let weight = h
        .weight
        .iter()
        .map(|(k, b)| (*k, proj.mul(b).image()))
        .collect();
    let hodge = h
        .hodge
        .iter()
        .map(|(p, b)| (*p, proj.mul(b).image()))
        .collect();
    Ok(Quotient { mhs: Mhs::new(n - s, h.d, weight, hodge), projection: proj, section })
}

pub struct MorphismHomology {
    pub kernel: Mhs,
    pub kernel_basis: Matrix,
    pub image: Mhs,
    pub image_basis: Matrix,
    pub cokernel: Quotient,
}

/// Kernel and cokernel (modulo torsion) of a strict morphism, with induced
/// filtrations.
pub fn morphism_homology(f: &Morphism) -> Result<MorphismHomology> {
    let rep = check_morphism(f);
    if !rep.is_morphism() {
        return Err(Error::invalid(format!("not a strict morphism: {}", rep.issues.join("; "))));
    }
    let k = lattice::kernel_integer(&f.matrix)?;
    let kernel = sub_mhs(&f.source, &k)?;
    let img = if f.matrix.is_zero() {
        Matrix::zero(f.target.rank, 0)
    } else {
        lattice::saturate(&lattice::image_lattice(&f.matrix)?)?
    };
    let image = sub_mhs(&f.target, &img)?;
    let cokernel = quotient_mhs(&f.target, &img)?;
    Ok(MorphismHomology { kernel, kernel_basis: k, image, image_basis: img, cokernel })
}
