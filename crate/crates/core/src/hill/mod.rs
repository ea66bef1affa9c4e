//! Hill simplices and their `m^d` self-similar dissections.
//!
//! Points are written in the coordinates `x` of the basis `b_1, ..., b_d`. The Hill simplex
//! is then `1 >= x_1 >= ... >= x_d >= 0`, and the dissection is the Kuhn triangulation of
//! the `1/m` grid restricted to it. Permuting coordinates preserves the Gram matrix of an
//! equiangular basis, so every cell is congruent to the scaled parent.

mod grow;
pub mod separation;

pub use grow::{grow_space_tiling, GrowthReport};

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{fmt_rational, int, mat_mul, parse_rational, rat, rational_to_f64, transpose, AlgebraicReal, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::simplex::{congruent, is_mirrored, permutations, similar, Coordinates, Ratio, Simplex, FLOAT_TOLERANCE};
use separation::{barycentric_functions, separate, verify_separation};

/// Common cosine of the angle between two basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub enum PairCos {
    Exact(Rational),
    Approx(f64),
}

impl PairCos {
    pub fn approx(&self) -> f64 {
        match self {
            PairCos::Exact(c) => rational_to_f64(c),
            PairCos::Approx(c) => *c,
        }
    }
}

/// `d` vectors of equal length with a common pairwise angle in `(0, 2pi/3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HillSpec {
    dim: usize,
    pair_cos: PairCos,
    /// Explicit Cartesian basis, one vector per row; unit vectors with the given Gram
    /// matrix are used when absent.
    basis: Option<RatMatrix>,
}

impl HillSpec {
    pub fn orthonormal(dim: usize) -> Result<Self> {
        Self::with_cos(dim, Rational::zero())
    }

    pub fn with_cos(dim: usize, c: Rational) -> Result<Self> {
        let spec = HillSpec { dim, pair_cos: PairCos::Exact(c), basis: None };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_cos_f64(dim: usize, c: f64) -> Result<Self> {
        let spec = HillSpec { dim, pair_cos: PairCos::Approx(c), basis: None };
        spec.validate()?;
        Ok(spec)
    }

    /// Spec from explicit rational basis vectors, which must have equal lengths and equal
    /// pairwise inner products.
    pub fn from_basis(basis: RatMatrix) -> Result<Self> {
        let dim = basis.len();
        if basis.iter().any(|b| b.len() != dim) {
            return Err(Error::InvalidHill(format!("need {dim} vectors of length {dim}")));
        }
        let g = mat_mul(&basis, &transpose(&basis));
        let len = g[0][0].clone();
        if len.is_zero() {
            return Err(Error::InvalidHill("zero basis vector".into()));
        }
        let pair = if dim > 1 { g[0][1].clone() } else { Rational::zero() };
        for i in 0..dim {
            if g[i][i] != len {
                return Err(Error::InvalidHill(format!("basis vector {i} has a different length")));
            }
            for j in 0..i {
                if g[i][j] != pair {
                    return Err(Error::InvalidHill(format!("basis vectors {j} and {i} meet at a different angle")));
                }
            }
        }
        let spec = HillSpec { dim, pair_cos: PairCos::Exact(pair / len), basis: Some(basis) };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if !(2..=4).contains(&self.dim) {
            return Err(Error::InvalidHill(format!("dimension {} is outside 2..=4", self.dim)));
        }
        let c = self.pair_cos.approx();
        let in_range = match &self.pair_cos {
            PairCos::Exact(c) => c > &rat(-1, 2) && c < &int(1),
            PairCos::Approx(c) => c.is_finite() && *c > -0.5 && *c < 1.0,
        };
        if !in_range {
            return Err(Error::InvalidHill(format!("pair cosine {c} is outside (-1/2, 1)")));
        }
        // (1 - c) I + c J is positive definite iff c > -1/(d - 1)
        let pd = match &self.pair_cos {
            PairCos::Exact(c) => c * int(self.dim as i64 - 1) > int(-1),
            PairCos::Approx(c) => c * (self.dim as f64 - 1.0) > -1.0,
        };
        if !pd {
            return Err(Error::InvalidHill("Gram matrix is not positive definite".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pair_cos(&self) -> &PairCos {
        &self.pair_cos
    }

    pub fn basis(&self) -> Option<&RatMatrix> {
        self.basis.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.pair_cos, PairCos::Exact(_))
    }

    /// Gram matrix of the basis.
    pub fn gram(&self) -> Option<RatMatrix> {
        if let Some(b) = &self.basis {
            return Some(mat_mul(b, &transpose(b)));
        }
        let PairCos::Exact(c) = &self.pair_cos else { return None };
        Some((0..self.dim).map(|i| (0..self.dim).map(|j| if i == j { Rational::one() } else { c.clone() }).collect()).collect())
    }

    fn gram_f64(&self) -> DMatrix<f64> {
        let c = self.pair_cos.approx();
        DMatrix::from_fn(self.dim, self.dim, |i, j| if i == j { 1.0 } else { c })
    }

    /// Simplex with the given vertices in basis coordinates.
    pub fn simplex_at(&self, lattice: Vec<Vec<Rational>>) -> Result<Simplex> {
        if let Some(b) = &self.basis {
            let cart = lattice
                .iter()
                .map(|x| (0..self.dim).map(|k| x.iter().zip(b).fold(Rational::zero(), |acc, (xi, bi)| acc + xi * &bi[k])).collect())
                .collect();
            return Simplex::new(cart);
        }
        match &self.pair_cos {
            PairCos::Exact(_) => Simplex::with_gram(lattice, self.gram().expect("exact spec")),
            PairCos::Approx(_) => {
                let l = self.gram_f64().cholesky().ok_or_else(|| Error::InvalidHill("Gram matrix is not positive definite".into()))?.l();
                let pts: Vec<Vec<f64>> = lattice
                    .iter()
                    .map(|x| (0..self.dim).map(|k| x.iter().enumerate().map(|(i, xi)| rational_to_f64(xi) * l[(i, k)]).sum()).collect())
                    .collect();
                let scale = pts.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
                Simplex::from_f64(pts, 1e-14 * scale)
            }
        }
    }
}

/// Vertices `0, b_1, b_1 + b_2, ..., b_1 + ... + b_d` in basis coordinates.
pub fn hill_vertices(dim: usize) -> Vec<Vec<Rational>> {
    (0..=dim).map(|k| (0..dim).map(|i| if i < k { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn hill_simplex(spec: &HillSpec) -> Result<Simplex> {
    spec.simplex_at(hill_vertices(spec.dim))
}

/// A Kuhn cell of the integer grid: `corner + e_{perm[0]} + ... + e_{perm[k-1]}` for `k = 0..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub corner: Vec<i64>,
    pub perm: Vec<usize>,
}

impl Cell {
    pub fn vertices(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.corner.len() + 1);
        let mut p = self.corner.clone();
        out.push(p.clone());
        for &i in &self.perm {
            p[i] += 1;
            out.push(p.clone());
        }
        out
    }

    pub fn scaled_vertices(&self, m: i64) -> Vec<Vec<Rational>> {
        self.vertices().iter().map(|v| v.iter().map(|&x| rat(x, m)).collect()).collect()
    }

    /// Whether the cell lies in `n >= x_1 >= ... >= x_d >= 0`, decided at its centroid.
    fn in_region(&self, n: i64) -> bool {
        let d = self.corner.len();
        let mut pos = vec![0usize; d];
        for (k, &i) in self.perm.iter().enumerate() {
            pos[i] = k;
        }
        // centroid_i = corner_i + (d - pos_i) / (d + 1)
        let key = |i: usize| (self.corner[i], d - pos[i]);
        if self.corner[0] >= n || self.corner[d - 1] < 0 {
            return false;
        }
        (0..d - 1).all(|i| key(i) > key(i + 1))
    }
}

/// Kuhn cells of the `n`-grid filling `n >= x_1 >= ... >= x_d >= 0`, in a fixed order.
pub fn region_cells(dim: usize, n: i64) -> impl Iterator<Item = Cell> {
    let perms = permutations(dim);
    nonincreasing(dim, n).into_iter().flat_map(move |corner| {
        perms
            .clone()
            .into_iter()
            .map(move |perm| Cell { corner: corner.clone(), perm })
            .filter(move |c| c.in_region(n))
    })
}

fn nonincreasing(dim: usize, n: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::new();
        for v in &out {
            let top = v.last().copied().unwrap_or(n - 1);
            for x in 0..=top {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Parent simplex and its pieces, each expected similar to it with ratio `1/m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Subdivision {
    pub parent: Simplex,
    pub pieces: Vec<Simplex>,
    pub ratio: Rational,
}

pub fn subdivide(spec: &HillSpec, m: u32) -> Result<Subdivision> {
    if m < 2 {
        return Err(Error::InvalidHill(format!("subdivision factor {m} must be at least 2")));
    }
    let parent = hill_simplex(spec)?;
    let pieces = region_cells(spec.dim, m as i64)
        .map(|c| spec.simplex_at(c.scaled_vertices(m as i64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subdivision { parent, pieces, ratio: rat(1, m as i64) })
}

#[derive(Serialize, Deserialize)]
struct SubdivisionJson {
    ratio: String,
    parent: Simplex,
    pieces: Vec<Simplex>,
}

impl Serialize for Subdivision {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubdivisionJson { ratio: fmt_rational(&self.ratio), parent: self.parent.clone(), pieces: self.pieces.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subdivision {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SubdivisionJson::deserialize(d)?;
        let ratio = parse_rational(&j.ratio).map_err(serde::de::Error::custom)?;
        Ok(Subdivision { parent: j.parent, pieces: j.pieces, ratio })
    }
}

/// One verifier verdict with an optional witness.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub ok: bool,
    pub detail: String,
    pub witness: Option<Value>,
}

impl Check {
    fn pass(detail: impl Into<String>) -> Self {
        Check { ok: true, detail: detail.into(), witness: None }
    }

    fn fail(detail: impl Into<String>, witness: Value) -> Self {
        Check { ok: false, detail: detail.into(), witness: Some(witness) }
    }

    pub fn to_json(&self) -> Value {
        json!({"ok": self.ok, "detail": self.detail, "witness": self.witness})
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReptileReport {
    pub pieces: usize,
    pub volume: Check,
    pub similarity: Check,
    pub measured_ratio: Option<f64>,
    pub congruence: Check,
    pub disjointness: Check,
    pub containment: Check,
    pub union: Check,
    /// Pieces directly congruent and mirror congruent to the scaled parent.
    pub chirality: Option<(usize, usize)>,
    pub exact: bool,
}

impl ReptileReport {
    pub fn all_ok(&self) -> bool {
        [&self.volume, &self.similarity, &self.congruence, &self.disjointness, &self.containment, &self.union]
            .iter()
            .all(|c| c.ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pieces": self.pieces,
            "exact": self.exact,
            "volume": self.volume.to_json(),
            "similarity": self.similarity.to_json(),
            "measured_ratio": self.measured_ratio,
            "congruence": self.congruence.to_json(),
            "disjointness": self.disjointness.to_json(),
            "containment": self.containment.to_json(),
            "union": self.union.to_json(),
            "chirality": self.chirality.map(|(d, m)| json!({"direct": d, "mirrored": m})),
            "ok": self.all_ok(),
        })
    }
}

/// Nearest rational within `tol` found by continued fractions.
fn snap(x: f64, tol: f64) -> Option<Rational> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let a = a as i64;
        let h = a.checked_mul(h1)?.checked_add(h0)?;
        let k = a.checked_mul(k1)?.checked_add(k0)?;
        (h0, h1, k0, k1) = (h1, h, k1, k);
        if (x - h as f64 / k as f64).abs() <= tol {
            return Some(rat(h, k));
        }
        let frac = r - a as f64;
        if frac.abs() < 1e-300 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// Barycentric coordinates of every piece vertex with respect to the parent, dropping
/// the first. Disjointness and containment are affine notions, so this chart is exact for
/// any metric. Float pieces are snapped to nearby rationals.
fn parent_chart(sub: &Subdivision) -> Result<std::result::Result<Vec<Vec<Vec<Rational>>>, String>> {
    if let (Coordinates::Exact { vertices, .. }, true) = (sub.parent.coords(), sub.pieces.iter().all(Simplex::is_exact)) {
        let f = barycentric_functions(vertices)?;
        return Ok(Ok(sub
            .pieces
            .iter()
            .map(|p| p.exact_vertices().expect("exact").iter().map(|x| f[1..].iter().map(|a| a.eval(x)).collect()).collect())
            .collect()));
    }
    let pv = sub.parent.vertices_f64();
    let d = sub.parent.dim();
    let e = DMatrix::from_fn(d, d, |r, c| pv[c + 1][r] - pv[0][r]);
    let inv = e.try_inverse().ok_or_else(|| Error::DegenerateSimplex("parent is degenerate".into()))?;
    let mut out = Vec::with_capacity(sub.pieces.len());
    for (k, p) in sub.pieces.iter().enumerate() {
        let mut verts = Vec::with_capacity(d + 1);
        for v in p.vertices_f64() {
            let rel = nalgebra::DVector::from_fn(d, |r, _| v[r] - pv[0][r]);
            let b = &inv * rel;
            let snapped: Option<Vec<Rational>> = b.iter().map(|&x| snap(x, 1e-10)).collect();
            match snapped {
                Some(s) => verts.push(s),
                None => return Ok(Err(format!("piece {k} has a vertex with no rational barycentric coordinates within 1e-10"))),
            }
        }
        out.push(verts);
    }
    Ok(Ok(out))
}

/// Pairs of pieces whose interiors are not certified disjoint, with the certificate count.
pub fn overlapping_pairs(chart: &[Vec<Vec<Rational>>]) -> Result<Vec<(usize, usize)>> {
    let n = chart.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let results: Vec<Result<Option<(usize, usize)>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let sep = separate(&chart[i], &chart[j])?;
            Ok(match sep {
                Some(s) if verify_separation(&chart[i], &chart[j], &s)? => None,
                _ => Some((i, j)),
            })
        })
        .collect();
    let mut bad = Vec::new();
    for r in results {
        if let Some(p) = r? {
            bad.push(p);
        }
    }
    bad.sort();
    Ok(bad)
}

/// Checks in order: volume sum, similarity with the expected ratio, mutual congruence,
/// pairwise interior-disjointness, containment in the parent, and the union they imply.
pub fn verify_reptile(sub: &Subdivision) -> Result<ReptileReport> {
    let exact = sub.parent.is_exact() && sub.pieces.iter().all(Simplex::is_exact);
    let n = sub.pieces.len();
    if n == 0 {
        return Err(Error::InvalidHill("subdivision has no pieces".into()));
    }
    if sub.pieces.iter().any(|p| p.dim() != sub.parent.dim()) {
        return Err(Error::InvalidHill("pieces and parent differ in dimension".into()));
    }

    let volume = if exact {
        let total = sub.pieces.iter().try_fold(AlgebraicReal::zero(), |acc, p| acc.add(&p.volume()?))?;
        let parent = sub.parent.volume()?;
        if total == parent {
            Check::pass(format!("sum of {n} piece volumes equals parent volume {parent}"))
        } else {
            Check::fail("volume sum differs from parent volume", json!({"sum": total.to_string(), "parent": parent.to_string()}))
        }
    } else {
        let total: f64 = sub.pieces.iter().map(Simplex::volume_f64).sum();
        let parent = sub.parent.volume_f64();
        if (total - parent).abs() <= FLOAT_TOLERANCE * parent.max(1.0) {
            Check::pass(format!("volume sum {total} matches parent {parent} within 1e-10"))
        } else {
            Check::fail("volume sum differs from parent volume", json!({"sum": total, "parent": parent}))
        }
    };

    let expected = AlgebraicReal::from_rational(sub.ratio.clone());
    let mut measured_ratio = None;
    let mut similarity = Check::pass(format!("every piece is similar to the parent with ratio {}", fmt_rational(&sub.ratio)));
    for (k, p) in sub.pieces.iter().enumerate() {
        let r = similar(&sub.parent, p)?;
        let good = match &r {
            Some(Ratio::Exact(x)) => x == &expected,
            Some(Ratio::Approx(x)) => (x - rational_to_f64(&sub.ratio)).abs() <= FLOAT_TOLERANCE,
            None => false,
        };
        if measured_ratio.is_none() {
            measured_ratio = r.as_ref().map(Ratio::approx);
        }
        if !good {
            similarity = Check::fail(
                format!("piece {k} is not similar to the parent with ratio {}", fmt_rational(&sub.ratio)),
                json!({"piece": k, "measured": r.as_ref().map(Ratio::approx)}),
            );
            break;
        }
    }

    let mut congruence = Check::pass("all pieces are mutually congruent");
    for (k, p) in sub.pieces.iter().enumerate().skip(1) {
        if !congruent(&sub.pieces[0], p)? {
            congruence = Check::fail(format!("piece {k} is not congruent to piece 0"), json!({"pair": [0, k]}));
            break;
        }
    }

    let chirality = if exact {
        let model = sub.parent.scaled(&sub.ratio)?;
        let mut direct = 0;
        let mut mirrored = 0;
        for p in &sub.pieces {
            match is_mirrored(&model, p)? {
                Some(false) => direct += 1,
                Some(true) => mirrored += 1,
                None => {}
            }
        }
        Some((direct, mirrored))
    } else {
        None
    };

    let (disjointness, containment) = match parent_chart(sub)? {
        Err(msg) => {
            let c = Check::fail(msg.clone(), json!({"reason": msg}));
            (c.clone(), c)
        }
        Ok(chart) => {
            let bad = overlapping_pairs(&chart)?;
            let disjoint = match bad.first() {
                None => Check::pass(format!("all {} pairs have certified disjoint interiors", n * (n - 1) / 2)),
                Some(&(i, j)) => Check::fail(
                    format!("{} pairs overlap, first ({i}, {j})", bad.len()),
                    json!({"pair": [i, j], "overlapping_pairs": bad.len()}),
                ),
            };
            let mut contain = Check::pass("every piece vertex satisfies the parent's facet inequalities");
            'outer: for (k, verts) in chart.iter().enumerate() {
                for (v, b) in verts.iter().enumerate() {
                    let first = Rational::one() - b.iter().sum::<Rational>();
                    if first.is_negative() || b.iter().any(Signed::is_negative) {
                        contain = Check::fail(format!("vertex {v} of piece {k} lies outside the parent"), json!({"piece": k, "vertex": v}));
                        break 'outer;
                    }
                }
            }
            (disjoint, contain)
        }
    };

    let union = if volume.ok && disjointness.ok && containment.ok {
        Check::pass("pieces cover the parent: contained, interior-disjoint and of equal total volume")
    } else {
        Check::fail("union not established", json!({"volume": volume.ok, "disjointness": disjointness.ok, "containment": containment.ok}))
    };

    Ok(ReptileReport {
        pieces: n,
        volume,
        similarity,
        measured_ratio,
        congruence,
        disjointness,
        containment,
        union,
        chirality,
        exact,
    })
}

/// Orientation of a cell relative to the parent: even permutations are direct copies.
pub fn cell_orientation(cell: &Cell) -> Ordering {
    let mut p = cell.perm.clone();
    let mut swaps = 0;
    for i in 0..p.len() {
        while p[i] != i {
            let j = p[i];
            p.swap(i, j);
            swaps += 1;
        }
    }
    if swaps % 2 == 0 { Ordering::Greater } else { Ordering::Less }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hill_simplex_is_orthoscheme() {
        let s = hill_simplex(&HillSpec::orthonormal(3).unwrap()).unwrap();
        let o = Simplex::from_integers(&[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0], &[1, 1, 1]]).unwrap();
        assert!(congruent(&s, &o).unwrap());
        assert!(HillSpec::with_cos(3, rat(-1, 2)).is_err());
        assert!(HillSpec::with_cos(4, rat(-2, 5)).is_err());
        assert!(HillSpec::with_cos(3, rat(1, 2)).is_ok());
    }

    #[test]
    fn cell_counts() {
        for d in 2..=4 {
            for m in 1..=3i64 {
                assert_eq!(region_cells(d, m).count() as i64, m.pow(d as u32));
            }
        }
    }

    #[test]
    fn eight_reptile() {
        let sub = subdivide(&HillSpec::orthonormal(3).unwrap(), 2).unwrap();
        assert_eq!(sub.pieces.len(), 8);
        for p in &sub.pieces {
            assert_eq!(p.coordinate_volume().unwrap(), rat(1, 48));
        }
        let r = verify_reptile(&sub).unwrap();
        assert!(r.all_ok(), "{r:?}");
        let (direct, mirrored) = r.chirality.unwrap();
        assert_eq!(direct + mirrored, 8);
    }

    #[test]
    fn triangles_and_skew_bases() {
        let sub = subdivide(&HillSpec::orthonormal(2).unwrap(), 3).unwrap();
        assert_eq!(sub.pieces.len(), 9);
        assert!(verify_reptile(&sub).unwrap().all_ok());
        let sub = subdivide(&HillSpec::with_cos(3, rat(1, 2)).unwrap(), 2).unwrap();
        assert!(verify_reptile(&sub).unwrap().all_ok());
        let basis = vec![vec![int(2), int(1), int(2)], vec![int(2), int(2), int(1)], vec![int(1), int(2), int(2)]];
        let sub = subdivide(&HillSpec::from_basis(basis).unwrap(), 2).unwrap();
        assert!(verify_reptile(&sub).unwrap().all_ok());
    }

    #[test]
    fn float_basis() {
        let spec = HillSpec::with_cos_f64(3, 0.5f64.sqrt() - 0.5).unwrap();
        let sub = subdivide(&spec, 2).unwrap();
        let r = verify_reptile(&sub).unwrap();
        assert!(r.all_ok(), "{r:?}");
        assert!(!r.exact);
    }

    #[test]
    fn corrupted_piece_fails() {
        let mut sub = subdivide(&HillSpec::orthonormal(3).unwrap(), 2).unwrap();
        let Coordinates::Exact { vertices, gram } = sub.pieces[3].coords().clone() else { unreachable!() };
        let mut v = vertices;
        v[1][0] += rat(1, 7);
        sub.pieces[3] = Simplex::with_gram(v, gram).unwrap();
        let r = verify_reptile(&sub).unwrap();
        assert!(!r.all_ok());
        assert!(!r.disjointness.ok || !r.containment.ok);
        assert!(!r.union.ok);
    }

    #[test]
    fn json_round_trip() {
        let sub = subdivide(&HillSpec::orthonormal(2).unwrap(), 2).unwrap();
        let text = serde_json::to_string(&sub).unwrap();
        let back: Subdivision = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sub);
    }

    #[test]
    fn snapping() {
        assert_eq!(snap(0.25 + 1e-13, 1e-10), Some(rat(1, 4)));
        assert_eq!(snap(-2.0 / 3.0, 1e-10), Some(rat(-2, 3)));
    }
}
