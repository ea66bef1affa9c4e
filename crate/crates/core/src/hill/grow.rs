use std::collections::HashMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::separation::{separate, verify_separation};
use super::{region_cells, Cell, HillSpec};
use crate::algebra::{int, Rational};
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// Summary of a streamed space tiling.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub generations: u32,
    pub m: u32,
    pub expected_cells: u64,
    pub cells: u64,
    pub truncated: bool,
    /// Sum of cell volumes in basis coordinates, `cells / d!`.
    pub coordinate_volume: Rational,
    pub interior_facets: u64,
    pub boundary_facets: u64,
    pub sampled_pairs: usize,
    pub sampled_disjoint: bool,
}

impl GrowthReport {
    pub fn to_json(&self) -> Value {
        json!({
            "generations": self.generations,
            "m": self.m,
            "expected_cells": self.expected_cells,
            "cells": self.cells,
            "truncated": self.truncated,
            "coordinate_volume": crate::algebra::fmt_rational(&self.coordinate_volume),
            "adjacency": {"interior_facets": self.interior_facets, "boundary_facets": self.boundary_facets},
            "verification": {"mode": "sampled", "pairs": self.sampled_pairs, "disjoint": self.sampled_disjoint},
        })
    }
}

/// Tiles `m^g` times the Hill simplex by `m^(d g)` copies of it, passing each cell to
/// `sink` as it is produced. At most `budget` cells are emitted; interior-disjointness is
/// checked exactly on `samples` random pairs drawn with `seed`.
pub fn grow_space_tiling(
    spec: &HillSpec,
    m: u32,
    generations: u32,
    budget: u64,
    samples: usize,
    seed: u64,
    sink: &mut dyn FnMut(&Simplex) -> Result<()>,
) -> Result<GrowthReport> {
    if generations == 0 || m < 2 {
        return Err(Error::InvalidHill("need at least one generation and m >= 2".into()));
    }
    let d = spec.dim();
    let n = (m as i64)
        .checked_pow(generations)
        .ok_or_else(|| Error::InvalidHill("tiling size overflows".into()))?;
    let expected = (n as u64).checked_pow(d as u32).ok_or_else(|| Error::InvalidHill("tiling size overflows".into()))?;
    let mut kept: Vec<Cell> = Vec::new();
    let mut facets: HashMap<Vec<Vec<i64>>, u8> = HashMap::new();
    let mut truncated = false;
    for cell in region_cells(d, n) {
        if kept.len() as u64 >= budget {
            truncated = true;
            break;
        }
        let verts = cell.vertices();
        let lattice: Vec<Vec<Rational>> = verts.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
        sink(&spec.simplex_at(lattice)?)?;
        for skip in 0..=d {
            let mut f: Vec<Vec<i64>> = verts.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, v)| v.clone()).collect();
            f.sort();
            *facets.entry(f).or_insert(0) += 1;
        }
        kept.push(cell);
    }
    let cells = kept.len() as u64;
    let fact: i64 = (1..=d as i64).product();
    let interior = facets.values().filter(|&&c| c >= 2).count() as u64;
    let boundary = facets.values().filter(|&&c| c == 1).count() as u64;

    let total_pairs = kept.len() * kept.len().saturating_sub(1) / 2;
    let take = samples.min(total_pairs);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disjoint = true;
    for idx in sample(&mut rng, total_pairs.max(1), take.min(total_pairs.max(1))).into_iter() {
        if total_pairs == 0 {
            break;
        }
        let (i, j) = unrank_pair(idx, kept.len());
        let p: Vec<Vec<Rational>> = kept[i].vertices().iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
        let q: Vec<Vec<Rational>> = kept[j].vertices().iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
        match separate(&p, &q)? {
            Some(s) if verify_separation(&p, &q, &s)? => {}
            _ => {
                disjoint = false;
                break;
            }
        }
    }
    Ok(GrowthReport {
        generations,
        m,
        expected_cells: expected,
        cells,
        truncated,
        coordinate_volume: Rational::new((cells as i64).into(), fact.into()),
        interior_facets: interior,
        boundary_facets: boundary,
        sampled_pairs: take,
        sampled_disjoint: disjoint,
    })
}

/// The `idx`-th pair `(i, j)`, `i < j`, in row-major order.
fn unrank_pair(mut idx: usize, n: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - i - 1;
        if idx < row {
            return (i, i + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("pair index out of range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::hill::subdivide;

    #[test]
    fn one_generation_matches_subdivision() {
        let spec = HillSpec::orthonormal(3).unwrap();
        let mut cells = Vec::new();
        let r = grow_space_tiling(&spec, 2, 1, 1000, 10, 0, &mut |s| {
            cells.push(s.scaled(&rat(1, 2))?);
            Ok(())
        })
        .unwrap();
        assert_eq!(r.cells, 8);
        assert_eq!(cells, subdivide(&spec, 2).unwrap().pieces);
    }

    #[test]
    fn growth_counts_and_truncation() {
        let spec = HillSpec::orthonormal(3).unwrap();
        let mut vol = Rational::from_integer(0.into());
        let r = grow_space_tiling(&spec, 2, 2, 1000, 50, 1, &mut |s| {
            vol += s.coordinate_volume()?;
            Ok(())
        })
        .unwrap();
        assert_eq!(r.cells, 64);
        assert_eq!(vol, rat(64, 6));
        assert_eq!(r.coordinate_volume, rat(64, 6));
        assert!(r.sampled_disjoint && !r.truncated);
        // each cell has 4 facets: 2 * interior + boundary = 4 * 64
        assert_eq!(2 * r.interior_facets + r.boundary_facets, 256);
        let t = grow_space_tiling(&spec, 2, 3, 100, 0, 0, &mut |_| Ok(())).unwrap();
        assert!(t.truncated);
        assert_eq!(t.cells, 100);
        assert_eq!(unrank_pair(0, 4), (0, 1));
        assert_eq!(unrank_pair(5, 4), (2, 3));
    }
}
