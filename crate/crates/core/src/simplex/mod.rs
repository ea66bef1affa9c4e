//! Simplices in dimensions 2 to 4: volumes, facet normals, dihedral cosines,
//! congruence and similarity, plus the angle bookkeeping used by the tetrahedron
//! case analysis.

mod angles;
mod io;

pub use angles::{
    greedy_indivisible_basis, integer_combination_pi, positive_rational_combination_pi, Angle, AngleMultiset,
};
pub use io::{write_obj, ObjWriter, SimplexJson};

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};

use crate::algebra::{
    identity, inverse, mat_mul, mat_vec, rational_determinant, rational_to_f64, transcendental,
    AlgebraicReal, Interval, RatMatrix, Rational,
};
use crate::error::{Error, Result};

/// Coordinates of the vertices.
#[derive(Clone, Debug, PartialEq)]
pub enum Coordinates {
    /// Rational coordinates; lengths are measured with the rational Gram matrix
    /// `gram` (the identity for Cartesian coordinates).
    Exact { vertices: Vec<Vec<Rational>>, gram: RatMatrix },
    /// Floating-point coordinates, each known to within `radius`.
    Float { vertices: Vec<Vec<f64>>, radius: f64 },
}

/// A nondegenerate simplex with `dim + 1` vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    dim: usize,
    coords: Coordinates,
}

/// Dihedral cosines indexed by facets (facet `i` is opposite vertex `i`, diagonal `-1`)
/// and squared edge lengths indexed by vertices.
#[derive(Clone, Debug)]
pub struct DihedralData {
    pub cos: Vec<Vec<AlgebraicReal>>,
    pub squared_lengths: Vec<Vec<Rational>>,
}

impl DihedralData {
    pub fn dim(&self) -> usize {
        self.cos.len() - 1
    }

    /// The pair of vertices naming the ridge where facets `i` and `j` meet: its
    /// complement for tetrahedra, otherwise `(i, j)` itself.
    pub fn edge_of(&self, i: usize, j: usize) -> (usize, usize) {
        if self.dim() == 3 {
            let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
            (rest[0], rest[1])
        } else {
            (i.min(j), i.max(j))
        }
    }

    /// Every off-diagonal facet pair `(i, j)`, `i < j`, with its cosine.
    pub fn facet_pairs(&self) -> Vec<((usize, usize), &AlgebraicReal)> {
        let n = self.cos.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push(((i, j), &self.cos[i][j]));
            }
        }
        out
    }

    /// Dihedral cosine keyed by edge for tetrahedra.
    pub fn edge_cosines(&self) -> Vec<((usize, usize), AlgebraicReal)> {
        let mut out: Vec<_> = self.facet_pairs().into_iter().map(|((i, j), c)| (self.edge_of(i, j), c.clone())).collect();
        out.sort_by_key(|a| a.0);
        out
    }

    pub fn cos_f64(&self) -> Vec<Vec<f64>> {
        self.cos.iter().map(|r| r.iter().map(AlgebraicReal::to_f64).collect()).collect()
    }
}

/// Result of a similarity test.
#[derive(Clone, Debug, PartialEq)]
pub enum Ratio {
    Exact(AlgebraicReal),
    Approx(f64),
}

impl Ratio {
    pub fn approx(&self) -> f64 {
        match self {
            Ratio::Exact(r) => r.to_f64(),
            Ratio::Approx(r) => *r,
        }
    }
}

/// Per-vertex comparison of the adjacent dihedral angle sum with pi.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexAngleSum {
    pub vertex: usize,
    pub cosines: Vec<AlgebraicReal>,
    pub verdict: Ordering,
    pub approx: f64,
}

/// Relative tolerance for float-mode comparisons.
pub const FLOAT_TOLERANCE: f64 = 1e-10;

fn check_shape<T>(vertices: &[Vec<T>]) -> Result<usize> {
    let n = vertices.len();
    if !(3..=5).contains(&n) {
        return Err(Error::DegenerateSimplex(format!("need 3 to 5 vertices, got {n}")));
    }
    let dim = n - 1;
    if vertices.iter().any(|v| v.len() != dim) {
        return Err(Error::DegenerateSimplex(format!("every vertex needs {dim} coordinates")));
    }
    Ok(dim)
}

/// Columns are the edge vectors `v_k - v_0`.
fn edge_matrix(vertices: &[Vec<Rational>]) -> RatMatrix {
    let d = vertices.len() - 1;
    (0..d).map(|r| (1..=d).map(|c| &vertices[c][r] - &vertices[0][r]).collect()).collect()
}

/// Signed determinant of the edge matrix of arbitrary points; zero for degenerate input.
pub fn signed_volume_factor(vertices: &[Vec<Rational>]) -> Result<Rational> {
    check_shape(vertices)?;
    rational_determinant(&edge_matrix(vertices))
}

/// Coordinate volume `|det(edge matrix)| / d!` of arbitrary points, zero when degenerate.
pub fn volume_of_points(vertices: &[Vec<Rational>]) -> Result<Rational> {
    let d = check_shape(vertices)?;
    let fact: u64 = (1..=d as u64).product();
    Ok(signed_volume_factor(vertices)?.abs() / Rational::from_integer(fact.into()))
}

fn float_matrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), rows.first().map_or(0, Vec::len), |r, c| rows[r][c])
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    heap(n, &mut current, &mut out);
    out.sort();
    out.dedup();
    out
}

impl Simplex {
    /// Exact simplex with Cartesian rational coordinates.
    pub fn new(vertices: Vec<Vec<Rational>>) -> Result<Self> {
        let d = check_shape(&vertices)?;
        Self::with_gram(vertices, identity(d))
    }

    /// Exact simplex whose coordinates are measured with a positive definite Gram matrix.
    pub fn with_gram(vertices: Vec<Vec<Rational>>, gram: RatMatrix) -> Result<Self> {
        let dim = check_shape(&vertices)?;
        if gram.len() != dim || gram.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidMatrix(format!("Gram matrix must be {dim}x{dim}")));
        }
        for i in 0..dim {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidMatrix("Gram matrix is not symmetric".into()));
                }
            }
        }
        // leading principal minors positive
        for k in 1..=dim {
            let block: RatMatrix = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !rational_determinant(&block)?.is_positive() {
                return Err(Error::InvalidMatrix("Gram matrix is not positive definite".into()));
            }
        }
        if signed_volume_factor(&vertices)?.is_zero() {
            return Err(Error::DegenerateSimplex("vertices are affinely dependent".into()));
        }
        Ok(Simplex { dim, coords: Coordinates::Exact { vertices, gram } })
    }

    pub fn from_integers(vertices: &[&[i64]]) -> Result<Self> {
        Self::new(vertices.iter().map(|v| v.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
    }

    /// Float simplex; the edge determinant must exceed what the coordinate error could cancel.
    pub fn from_f64(vertices: Vec<Vec<f64>>, radius: f64) -> Result<Self> {
        let dim = check_shape(&vertices)?;
        if vertices.iter().flatten().any(|x| !x.is_finite()) || !(radius >= 0.0) {
            return Err(Error::DegenerateSimplex("non-finite coordinates".into()));
        }
        let s = Simplex { dim, coords: Coordinates::Float { vertices, radius } };
        let det = s.float_edge_matrix().determinant();
        let scale = s.max_coordinate().max(1.0);
        let margin = 4.0 * (dim as f64) * radius.max(f64::EPSILON) * scale.powi(dim as i32 - 1) * 2f64.powi(dim as i32);
        if det.abs() <= margin {
            return Err(Error::DegenerateSimplex(format!("edge determinant {det:e} within error margin {margin:e}")));
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &Coordinates {
        &self.coords
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coords, Coordinates::Exact { .. })
    }

    pub fn exact_vertices(&self) -> Option<&[Vec<Rational>]> {
        match &self.coords {
            Coordinates::Exact { vertices, .. } => Some(vertices),
            Coordinates::Float { .. } => None,
        }
    }

    pub fn gram(&self) -> Option<&RatMatrix> {
        match &self.coords {
            Coordinates::Exact { gram, .. } => Some(gram),
            Coordinates::Float { .. } => None,
        }
    }

    pub fn radius(&self) -> f64 {
        match &self.coords {
            Coordinates::Exact { .. } => 0.0,
            Coordinates::Float { radius, .. } => *radius,
        }
    }

    fn exact(&self) -> Result<(&[Vec<Rational>], &RatMatrix)> {
        match &self.coords {
            Coordinates::Exact { vertices, gram } => Ok((vertices, gram)),
            Coordinates::Float { .. } => Err(Error::Invalid("operation needs exact coordinates".into())),
        }
    }

    /// Vertices as floats, in the stored coordinate system.
    pub fn vertices_f64(&self) -> Vec<Vec<f64>> {
        match &self.coords {
            Coordinates::Exact { vertices, .. } => {
                vertices.iter().map(|v| v.iter().map(rational_to_f64).collect()).collect()
            }
            Coordinates::Float { vertices, .. } => vertices.clone(),
        }
    }

    /// Vertices in Cartesian coordinates: exact vertices are mapped through the
    /// Cholesky factor of the Gram matrix.
    pub fn cartesian_f64(&self) -> Vec<Vec<f64>> {
        let verts = self.vertices_f64();
        let Some(gram) = self.gram() else { return verts };
        if *gram == identity(self.dim) {
            return verts;
        }
        let g = float_matrix(&gram.iter().map(|r| r.iter().map(rational_to_f64).collect()).collect::<Vec<_>>());
        let l = g.cholesky().expect("Gram matrix is positive definite").l();
        let lt = l.transpose();
        verts
            .iter()
            .map(|v| {
                let x = &lt * nalgebra::DVector::from_column_slice(v);
                x.iter().copied().collect()
            })
            .collect()
    }

    fn max_coordinate(&self) -> f64 {
        self.vertices_f64().iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    fn float_edge_matrix(&self) -> DMatrix<f64> {
        let v = self.vertices_f64();
        DMatrix::from_fn(self.dim, self.dim, |r, c| v[c + 1][r] - v[0][r])
    }

    fn float_gram(&self) -> DMatrix<f64> {
        match self.gram() {
            Some(g) => float_matrix(&g.iter().map(|r| r.iter().map(rational_to_f64).collect()).collect::<Vec<_>>()),
            None => DMatrix::identity(self.dim, self.dim),
        }
    }

    /// Exact squared lengths `|v_i - v_j|^2`.
    pub fn squared_lengths(&self) -> Result<Vec<Vec<Rational>>> {
        let (v, g) = self.exact()?;
        let n = v.len();
        let mut out = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let diff: Vec<Rational> = v[i].iter().zip(&v[j]).map(|(a, b)| a - b).collect();
                let gd = mat_vec(g, &diff);
                let l: Rational = diff.iter().zip(&gd).map(|(a, b)| a * b).sum();
                out[i][j] = l.clone();
                out[j][i] = l;
            }
        }
        Ok(out)
    }

    pub fn squared_lengths_f64(&self) -> Vec<Vec<f64>> {
        if let Ok(l) = self.squared_lengths() {
            return l.iter().map(|r| r.iter().map(rational_to_f64).collect()).collect();
        }
        let v = self.vertices_f64();
        let g = self.float_gram();
        let n = v.len();
        let mut out = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let diff = nalgebra::DVector::from_iterator(self.dim, v[i].iter().zip(&v[j]).map(|(a, b)| a - b));
                out[i][j] = diff.dot(&(&g * &diff));
            }
        }
        out
    }

    /// Coordinate volume `|det E| / d!`; equals the volume when the Gram matrix has determinant 1.
    pub fn coordinate_volume(&self) -> Result<Rational> {
        let (v, _) = self.exact()?;
        volume_of_points(v)
    }

    /// Exact volume `sqrt(det G) |det E| / d!`.
    pub fn volume(&self) -> Result<AlgebraicReal> {
        let (_, g) = self.exact()?;
        let base = self.coordinate_volume()?;
        let det_g = rational_determinant(g)?;
        Ok(AlgebraicReal::sqrt_rational(&det_g)?.mul_rational(&base))
    }

    pub fn volume_f64(&self) -> f64 {
        let fact: f64 = (1..=self.dim).map(|k| k as f64).product();
        self.float_edge_matrix().determinant().abs() * self.float_gram().determinant().sqrt() / fact
    }

    /// Sign of the edge determinant.
    pub fn orientation(&self) -> Ordering {
        match self.exact() {
            Ok((v, _)) => signed_volume_factor(v).map(|d| d.cmp(&Rational::zero())).unwrap_or(Ordering::Equal),
            Err(_) => self.float_edge_matrix().determinant().partial_cmp(&0.0).unwrap_or(Ordering::Equal),
        }
    }

    /// Barycentric gradients: row `i` is the inward normal covector of facet `i`.
    pub fn facet_covectors(&self) -> Result<RatMatrix> {
        let (v, _) = self.exact()?;
        let inv = inverse(&edge_matrix(v))?;
        let d = self.dim;
        let mut rows = Vec::with_capacity(d + 1);
        rows.push((0..d).map(|c| -inv.iter().map(|r| &r[c]).sum::<Rational>()).collect());
        rows.extend(inv);
        Ok(rows)
    }

    /// `N G^-1 N^T` for the facet covectors `N`: inner products of inward normals
    /// scaled by the facet areas.
    pub fn normal_gram(&self) -> Result<RatMatrix> {
        let (_, g) = self.exact()?;
        let n = self.facet_covectors()?;
        let ginv = inverse(g)?;
        let nt: RatMatrix = (0..self.dim).map(|c| n.iter().map(|r| r[c].clone()).collect()).collect();
        Ok(mat_mul(&mat_mul(&n, &ginv), &nt))
    }

    /// Exact dihedral cosines `-<u_i, u_j>` and squared edge lengths.
    pub fn dihedral_data(&self) -> Result<DihedralData> {
        let m = self.normal_gram()?;
        let n = self.dim + 1;
        let mut cos = vec![vec![AlgebraicReal::from_integer(-1); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let c = if m[i][j].is_zero() {
                    AlgebraicReal::zero()
                } else {
                    let sq = &m[i][j] * &m[i][j] / (&m[i][i] * &m[j][j]);
                    let root = AlgebraicReal::sqrt_rational(&sq)?;
                    if m[i][j].is_positive() {
                        root.neg()
                    } else {
                        root
                    }
                };
                cos[i][j] = c.clone();
                cos[j][i] = c;
            }
        }
        Ok(DihedralData { cos, squared_lengths: self.squared_lengths()? })
    }

    /// Dihedral cosines in floating point, available in both modes.
    pub fn dihedral_cosines_f64(&self) -> Vec<Vec<f64>> {
        if let Ok(d) = self.dihedral_data() {
            return d.cos_f64();
        }
        let e = self.float_edge_matrix();
        let inv = e.try_inverse().expect("nondegenerate simplex");
        let d = self.dim;
        let mut n = DMatrix::zeros(d + 1, d);
        for c in 0..d {
            let s: f64 = (0..d).map(|r| inv[(r, c)]).sum();
            n[(0, c)] = -s;
            for r in 0..d {
                n[(r + 1, c)] = inv[(r, c)];
            }
        }
        let ginv = self.float_gram().try_inverse().expect("positive definite");
        let m = &n * ginv * n.transpose();
        (0..=d)
            .map(|i| (0..=d).map(|j| if i == j { -1.0 } else { -m[(i, j)] / (m[(i, i)] * m[(j, j)]).sqrt() }).collect())
            .collect()
    }

    /// Uniform scaling about the origin.
    pub fn scaled(&self, r: &Rational) -> Result<Self> {
        let (v, g) = self.exact()?;
        Self::with_gram(v.iter().map(|p| p.iter().map(|x| x * r).collect()).collect(), g.clone())
    }

    pub fn translated(&self, t: &[Rational]) -> Result<Self> {
        let (v, g) = self.exact()?;
        Self::with_gram(v.iter().map(|p| p.iter().zip(t).map(|(x, y)| x + y).collect()).collect(), g.clone())
    }

    /// Image under the linear map `x -> A x` (Cartesian coordinates).
    pub fn transformed(&self, a: &[Vec<Rational>]) -> Result<Self> {
        let (v, g) = self.exact()?;
        Self::with_gram(v.iter().map(|p| mat_vec(a, p)).collect(), g.clone())
    }

    /// Same simplex with the vertices reordered by `perm` (`new[k] = old[perm[k]]`).
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        match &self.coords {
            Coordinates::Exact { vertices, gram } => {
                Self::with_gram(perm.iter().map(|&k| vertices[k].clone()).collect(), gram.clone())
            }
            Coordinates::Float { vertices, radius } => {
                Self::from_f64(perm.iter().map(|&k| vertices[k].clone()).collect(), *radius)
            }
        }
    }

    /// Whether a rational point satisfies every facet inequality (closed simplex).
    pub fn contains_point(&self, x: &[Rational]) -> Result<bool> {
        let (v, _) = self.exact()?;
        let n = self.facet_covectors()?;
        let diff: Vec<Rational> = x.iter().zip(&v[0]).map(|(a, b)| a - b).collect();
        let lambdas: Vec<Rational> = n[1..].iter().map(|row| row.iter().zip(&diff).map(|(a, b)| a * b).sum()).collect();
        let l0 = Rational::one() - lambdas.iter().sum::<Rational>();
        Ok(!l0.is_negative() && lambdas.iter().all(|l| !l.is_negative()))
    }

    /// Per-vertex test that the dihedral angles at the edges through the vertex sum to more than pi.
    pub fn vertex_angle_check(&self) -> Result<Vec<VertexAngleSum>> {
        if self.dim != 3 {
            return Err(Error::Invalid("vertex angle sums are defined for tetrahedra".into()));
        }
        let cos_f = self.dihedral_cosines_f64();
        let exact = self.dihedral_data().ok();
        let mut out = Vec::new();
        for v in 0..4 {
            // edges (v, w): dihedral angle between the facets opposite the other two vertices
            let pairs: Vec<(usize, usize)> = (0..4)
                .filter(|&w| w != v)
                .map(|w| {
                    let rest: Vec<usize> = (0..4).filter(|&k| k != v && k != w).collect();
                    (rest[0], rest[1])
                })
                .collect();
            let approx: f64 = pairs.iter().map(|&(i, j)| cos_f[i][j].clamp(-1.0, 1.0).acos()).sum();
            let (verdict, cosines) = match &exact {
                Some(d) => {
                    let cs: Vec<AlgebraicReal> = pairs.iter().map(|&(i, j)| d.cos[i][j].clone()).collect();
                    (transcendental::compare_arccos_sum(&cs, &Rational::one())?, cs)
                }
                None => (self.float_angle_sum_sign(&pairs, &cos_f)?, Vec::new()),
            };
            out.push(VertexAngleSum { vertex: v, cosines, verdict, approx });
        }
        Ok(out)
    }

    fn float_angle_sum_sign(&self, pairs: &[(usize, usize)], cos: &[Vec<f64>]) -> Result<Ordering> {
        let tol = FLOAT_TOLERANCE;
        let mut acc = Interval::point(Rational::zero());
        for &(i, j) in pairs {
            let c = cos[i][j];
            let iv = Interval::new(
                crate::algebra::rational_from_f64(c - tol).unwrap_or_else(|| -Rational::one()),
                crate::algebra::rational_from_f64(c + tol).unwrap_or_else(Rational::one),
            )?;
            acc = &acc + &transcendental::arccos_interval(&iv, 60)?;
        }
        let diff = &acc - &transcendental::pi_enclosure(60);
        if diff.lo.is_positive() {
            Ok(Ordering::Greater)
        } else if diff.hi.is_negative() {
            Ok(Ordering::Less)
        } else {
            Err(Error::Inconclusive("float-mode angle sum within tolerance of pi".into()))
        }
    }

    /// Distinct squared lengths of the edges whose dihedral cosine equals `cos` exactly.
    pub fn edge_length_classes_by_angle(&self, cos: &AlgebraicReal) -> Result<Vec<Rational>> {
        let d = self.dihedral_data()?;
        let mut lengths: Vec<Rational> = d
            .facet_pairs()
            .into_iter()
            .filter(|(_, c)| *c == cos)
            .map(|((i, j), _)| {
                let (a, b) = d.edge_of(i, j);
                d.squared_lengths[a][b].clone()
            })
            .collect();
        if lengths.is_empty() {
            return Err(Error::Invalid(format!("no edge has dihedral cosine {cos}")));
        }
        lengths.sort();
        lengths.dedup();
        Ok(lengths)
    }
}

fn matching_permutation(a: &Simplex, matches: &dyn Fn(usize, usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    permutations(a.dim + 1).into_iter().find(|perm| {
        let n = perm.len();
        (0..n).all(|i| (i + 1..n).all(|j| matches(perm[i], perm[j], i, j)))
    })
}

/// Squared similarity ratio candidates are read off from the longest edges.
fn exact_similarity(a: &Simplex, b: &Simplex, orientation: bool) -> Result<Option<(Rational, Vec<usize>)>> {
    let la = a.squared_lengths()?;
    let lb = b.squared_lengths()?;
    let mut sa: Vec<&Rational> = la.iter().enumerate().flat_map(|(i, r)| r[i + 1..].iter()).collect();
    let mut sb: Vec<&Rational> = lb.iter().enumerate().flat_map(|(i, r)| r[i + 1..].iter()).collect();
    sa.sort();
    sb.sort();
    let r2 = sb.last().copied().cloned().unwrap_or_else(Rational::one) / sa.last().copied().cloned().unwrap_or_else(Rational::one);
    if sa.iter().zip(&sb).any(|(x, y)| &(*x * &r2) != *y) {
        return Ok(None);
    }
    let n = a.dim + 1;
    let perm = permutations(n).into_iter().find(|perm| {
        (0..n).all(|i| (i + 1..n).all(|j| &la[perm[i]][perm[j]] * &r2 == lb[i][j]))
            && (!orientation || a.relabeled(perm).map(|s| s.orientation()).ok() == Some(b.orientation()))
    });
    Ok(perm.map(|p| (r2, p)))
}

fn float_similarity(a: &Simplex, b: &Simplex) -> Option<f64> {
    let la = a.squared_lengths_f64();
    let lb = b.squared_lengths_f64();
    let max_a = la.iter().flatten().fold(0.0f64, |m, x| m.max(*x));
    let max_b = lb.iter().flatten().fold(0.0f64, |m, x| m.max(*x));
    let r2 = max_b / max_a;
    let tol = FLOAT_TOLERANCE.max(10.0 * (a.radius() + b.radius())) * max_b.max(1.0);
    matching_permutation(a, &|pi, pj, i, j| (la[pi][pj] * r2 - lb[i][j]).abs() <= tol).map(|_| r2.sqrt())
}

/// Ratio `r` with `b` congruent to `a` scaled by `r`, reflections allowed.
pub fn similar(a: &Simplex, b: &Simplex) -> Result<Option<Ratio>> {
    if a.dim != b.dim {
        return Err(Error::Invalid("simplices of different dimension".into()));
    }
    if a.is_exact() && b.is_exact() {
        return match exact_similarity(a, b, false)? {
            Some((r2, _)) => Ok(Some(Ratio::Exact(AlgebraicReal::sqrt_rational(&r2)?))),
            None => Ok(None),
        };
    }
    Ok(float_similarity(a, b).map(Ratio::Approx))
}

/// Congruence with reflections allowed.
pub fn congruent(a: &Simplex, b: &Simplex) -> Result<bool> {
    congruent_with(a, b, true)
}

/// Congruence; with `allow_reflections = false` the matching must preserve orientation.
pub fn congruent_with(a: &Simplex, b: &Simplex, allow_reflections: bool) -> Result<bool> {
    if a.dim != b.dim {
        return Err(Error::Invalid("simplices of different dimension".into()));
    }
    if a.is_exact() && b.is_exact() {
        return Ok(matches!(exact_similarity(a, b, !allow_reflections)?, Some((r2, _)) if r2.is_one()));
    }
    Ok(float_similarity(a, b).is_some_and(|r| (r - 1.0).abs() <= FLOAT_TOLERANCE.max(10.0 * (a.radius() + b.radius()))))
}

/// Whether the congruence between `a` and `b` (if any) reverses orientation.
pub fn is_mirrored(a: &Simplex, b: &Simplex) -> Result<Option<bool>> {
    let direct = exact_similarity(a, b, true)?;
    if direct.is_some() {
        return Ok(Some(false));
    }
    Ok(exact_similarity(a, b, false)?.map(|_| true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_real, rat};

    fn regular() -> Simplex {
        Simplex::from_integers(&[&[1, 1, 1], &[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1]]).unwrap()
    }

    fn orthoscheme() -> Simplex {
        Simplex::from_integers(&[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0], &[1, 1, 1]]).unwrap()
    }

    #[test]
    fn regular_tetrahedron_cosines_and_volume() {
        let s = regular();
        let d = s.dihedral_data().unwrap();
        for (_, c) in d.facet_pairs() {
            assert_eq!(c, &AlgebraicReal::from_rational(rat(1, 3)));
        }
        assert_eq!(s.coordinate_volume().unwrap(), rat(8, 3));
        assert_eq!(s.volume().unwrap(), AlgebraicReal::from_rational(rat(8, 3)));
    }

    #[test]
    fn orthoscheme_cosines() {
        let d = orthoscheme().dihedral_data().unwrap();
        let mut cs: Vec<AlgebraicReal> = d.facet_pairs().into_iter().map(|(_, c)| c.clone()).collect();
        cs.sort();
        let expect: Vec<AlgebraicReal> =
            ["0", "0", "0", "1/2", "sqrt(2)/2", "sqrt(2)/2"].iter().map(|s| parse_real(s).unwrap()).collect();
        assert_eq!(cs, expect);
        assert_eq!(orthoscheme().coordinate_volume().unwrap(), rat(1, 6));
    }

    #[test]
    fn right_triangle_angles() {
        let t = Simplex::from_integers(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let d = t.dihedral_data().unwrap();
        let mut cs: Vec<AlgebraicReal> = d.facet_pairs().into_iter().map(|(_, c)| c.clone()).collect();
        cs.sort();
        let h = parse_real("sqrt(2)/2").unwrap();
        assert_eq!(cs, vec![AlgebraicReal::zero(), h.clone(), h]);
    }

    #[test]
    fn degenerate_rejected() {
        let flat = [vec![int(0), int(0), int(0)], vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)], vec![int(1), int(1), int(0)]];
        assert_eq!(volume_of_points(&flat).unwrap(), int(0));
        assert!(matches!(Simplex::new(flat.to_vec()), Err(Error::DegenerateSimplex(_))));
    }

    #[test]
    fn congruence_and_similarity() {
        let s = orthoscheme();
        let mirror = s.transformed(&[vec![int(-1), int(0), int(0)], vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]]).unwrap();
        assert!(congruent(&s, &mirror).unwrap());
        assert!(!congruent_with(&s, &mirror, false).unwrap());
        assert_eq!(is_mirrored(&s, &mirror).unwrap(), Some(true));
        let double = s.scaled(&int(2)).unwrap();
        assert!(!congruent(&s, &double).unwrap());
        assert_eq!(similar(&double, &s).unwrap(), Some(Ratio::Exact(AlgebraicReal::from_rational(rat(1, 2)))));
        assert_eq!(similar(&s, &regular()).unwrap(), None);
    }

    #[test]
    fn vertex_sums_exceed_pi() {
        for v in regular().vertex_angle_check().unwrap() {
            assert_eq!(v.verdict, Ordering::Greater);
            assert!((v.approx - 3.0 * (1.0f64 / 3.0).acos()).abs() < 1e-12);
        }
        let sums = orthoscheme().vertex_angle_check().unwrap();
        assert!(sums.iter().all(|v| v.verdict == Ordering::Greater));
        let pi = std::f64::consts::PI;
        let expect = [13.0 * pi / 12.0, 5.0 * pi / 4.0, 5.0 * pi / 4.0, 13.0 * pi / 12.0];
        for (v, e) in sums.iter().zip(expect) {
            assert!((v.approx - e).abs() < 1e-12);
        }
    }

    #[test]
    fn length_classes() {
        let s = orthoscheme();
        let right = s.edge_length_classes_by_angle(&AlgebraicReal::zero()).unwrap();
        assert_eq!(right, vec![int(1), int(2)]);
        assert!(s.edge_length_classes_by_angle(&AlgebraicReal::from_rational(rat(7, 9))).is_err());
    }

    #[test]
    fn float_mode_agrees() {
        let s = orthoscheme();
        let f = Simplex::from_f64(s.vertices_f64(), 1e-12).unwrap();
        assert!((f.volume_f64() - 1.0 / 6.0).abs() < 1e-12);
        let a = s.dihedral_cosines_f64();
        let b = f.dihedral_cosines_f64();
        for i in 0..4 {
            for j in 0..4 {
                assert!((a[i][j] - b[i][j]).abs() < 1e-12);
            }
        }
        assert!(congruent(&s, &f).unwrap());
        assert!(f.vertex_angle_check().unwrap().iter().all(|v| v.verdict == Ordering::Greater));
    }

    #[test]
    fn gram_coordinates() {
        // lattice coordinates with pairwise cosine 1/2 between unit basis vectors
        let g = vec![vec![int(1), rat(1, 2)], vec![rat(1, 2), int(1)]];
        let t = Simplex::with_gram(vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(0), int(1)]], g).unwrap();
        let d = t.dihedral_data().unwrap();
        for (_, c) in d.facet_pairs() {
            assert_eq!(c, &AlgebraicReal::from_rational(rat(1, 2)));
        }
        assert_eq!(t.edge_length_classes_by_angle(&AlgebraicReal::from_rational(rat(1, 2))).unwrap(), vec![int(1)]);
        let cart = t.cartesian_f64();
        assert!((cart[2][0] - 0.5).abs() < 1e-12 && (cart[2][1] - 0.75f64.sqrt()).abs() < 1e-12);
    }
}
