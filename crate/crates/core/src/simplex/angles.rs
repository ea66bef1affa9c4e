use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::DihedralData;
use crate::algebra::{transcendental, AlgebraicReal, Interval, Rational};
use crate::error::{Error, Result};
use crate::trig::{cosine_of, match_rational_angle, RationalAngle};

/// An angle in `[0, pi]`, either a rational multiple of pi or given by its exact cosine.
#[derive(Clone, Debug)]
pub enum Angle {
    Rational(RationalAngle),
    Cosine(AlgebraicReal),
}

impl Angle {
    /// From an exact cosine, recognizing rational angles.
    pub fn from_cosine(c: &AlgebraicReal) -> Result<Self> {
        Ok(match match_rational_angle(c)? {
            Some(a) => Angle::Rational(a),
            None => Angle::Cosine(c.clone()),
        })
    }

    pub fn cosine(&self) -> AlgebraicReal {
        match self {
            Angle::Rational(a) => cosine_of(a),
            Angle::Cosine(c) => c.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<RationalAngle> {
        match self {
            Angle::Rational(a) => Some(*a),
            Angle::Cosine(_) => None,
        }
    }

    /// Radian enclosure of width at most `width`.
    pub fn enclosure(&self, width: &Rational) -> Result<Interval> {
        match self {
            Angle::Rational(a) => {
                let m = a.as_pi_multiple();
                let bits = bits_for(&(width / (m.abs() + Rational::one())));
                Ok(&transcendental::pi_enclosure(bits) * &Interval::point(m))
            }
            Angle::Cosine(c) => transcendental::arccos(c, width),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            Angle::Rational(a) => crate::algebra::rational_to_f64(&a.as_pi_multiple()) * std::f64::consts::PI,
            Angle::Cosine(c) => c.to_f64().clamp(-1.0, 1.0).acos(),
        }
    }
}

fn bits_for(width: &Rational) -> u32 {
    let mut b = 0;
    let mut s = Rational::one();
    while &s > width {
        s /= Rational::from_integer(2.into());
        b += 1;
    }
    b
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Angle {}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Angle {
    /// Angles in `[0, pi]` order opposite to their cosines.
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Angle::Rational(a), Angle::Rational(b)) = (self, other) {
            return a.canonical().as_pi_multiple().cmp(&b.canonical().as_pi_multiple());
        }
        other.cosine().cmp(&self.cosine())
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Rational(a) => write!(f, "{a}"),
            Angle::Cosine(c) => write!(f, "arccos({c})"),
        }
    }
}

/// Distinct angles with multiplicities.
#[derive(Clone, Debug, Default)]
pub struct AngleMultiset {
    pub entries: Vec<(Angle, usize)>,
}

impl AngleMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one copy, merging with an exactly equal angle.
    pub fn insert(&mut self, angle: Angle) {
        match self.entries.iter_mut().find(|(a, _)| *a == angle) {
            Some((_, k)) => *k += 1,
            None => {
                self.entries.push((angle, 1));
                self.entries.sort_by(|a, b| a.0.cmp(&b.0));
            }
        }
    }

    pub fn from_angles(angles: impl IntoIterator<Item = Angle>) -> Self {
        let mut m = Self::new();
        for a in angles {
            m.insert(a);
        }
        m
    }

    /// The set of dihedral angles of a simplex.
    pub fn from_dihedral(d: &DihedralData) -> Result<Self> {
        let mut m = Self::new();
        for (_, c) in d.facet_pairs() {
            m.insert(Angle::from_cosine(c)?);
        }
        Ok(m)
    }

    /// Distinct angles in increasing order.
    pub fn distinct(&self) -> Vec<Angle> {
        self.entries.iter().map(|(a, _)| a.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn all_rational(&self) -> Option<Vec<RationalAngle>> {
        self.entries.iter().map(|(a, _)| a.as_rational()).collect()
    }
}

fn upper_multiple(target: &Angle, unit: &Angle) -> u64 {
    if let (Some(t), Some(u)) = (target.as_rational(), unit.as_rational()) {
        return (t.as_pi_multiple() / u.as_pi_multiple()).floor().to_integer().to_u64().unwrap_or(0);
    }
    (target.approx() / unit.approx() + 1e-6).floor().max(0.0) as u64
}

/// `cos` and `sin` of an angle in `[0, pi]`, exact.
fn cos_sin(a: &Angle) -> Result<(AlgebraicReal, AlgebraicReal)> {
    let c = a.cosine();
    let s = AlgebraicReal::one().sub(&c.square()?)?.sqrt()?;
    Ok((c, s))
}

fn combination_equals(target: &Angle, gens: &[Angle], coeffs: &[u64]) -> Result<bool> {
    if let (Some(t), Some(gs)) = (target.as_rational(), gens.iter().map(Angle::as_rational).collect::<Option<Vec<_>>>()) {
        let sum: Rational = gs.iter().zip(coeffs).map(|(g, &k)| g.as_pi_multiple() * Rational::from_integer(k.into())).sum();
        return Ok(sum == t.as_pi_multiple());
    }
    // separate numerically first
    let total: u64 = coeffs.iter().sum::<u64>() + 1;
    let decided = transcendental::decide_sign(|w| {
        let each = w / Rational::from_integer(BigInt::from(total));
        let mut acc = -&target.enclosure(&each)?;
        for (g, &k) in gens.iter().zip(coeffs) {
            if k > 0 {
                acc = &acc + &(&g.enclosure(&each)? * &Interval::point(Rational::from_integer(k.into())));
            }
        }
        Ok(acc)
    });
    match decided {
        Ok(Ordering::Equal) => Ok(true),
        Ok(_) => Ok(false),
        Err(Error::Inconclusive(_)) => {
            // equal cosine and sine of the sum, with the sum known to be within pi of the target
            let (mut c, mut s) = (AlgebraicReal::one(), AlgebraicReal::zero());
            for (g, &k) in gens.iter().zip(coeffs) {
                let (gc, gs) = cos_sin(g)?;
                for _ in 0..k {
                    let nc = c.mul(&gc)?.sub(&s.mul(&gs)?)?;
                    let ns = s.mul(&gc)?.add(&c.mul(&gs)?)?;
                    c = nc;
                    s = ns;
                }
            }
            let (tc, ts) = cos_sin(target)?;
            Ok(c == tc && s == ts)
        }
        Err(e) => Err(e),
    }
}

/// Nonnegative integer coefficients with `sum k_i g_i = target`, if any.
pub(crate) fn find_combination(target: &Angle, gens: &[Angle]) -> Result<Option<Vec<u64>>> {
    let bounds: Vec<u64> = gens.iter().map(|g| upper_multiple(target, g)).collect();
    let mut coeffs = vec![0u64; gens.len()];
    loop {
        let approx: f64 = gens.iter().zip(&coeffs).map(|(g, &k)| g.approx() * k as f64).sum();
        if (approx - target.approx()).abs() < 1e-6 && combination_equals(target, gens, &coeffs)? {
            return Ok(Some(coeffs));
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return Ok(None);
            }
            if coeffs[i] < bounds[i] {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// Greedy selection `b1 < b2 < ...`: each next angle is the smallest element of `d` that
/// is not a nonnegative integer combination of those already selected. Each selected
/// angle is re-verified to be no combination of the other (smaller) elements of `d`.
pub fn greedy_indivisible_basis(d: &AngleMultiset) -> Result<Vec<Angle>> {
    let all = d.distinct();
    let mut basis: Vec<Angle> = Vec::new();
    for beta in &all {
        if find_combination(beta, &basis)?.is_none() {
            basis.push(beta.clone());
        }
    }
    for beta in &basis {
        let smaller: Vec<Angle> = all.iter().filter(|a| *a < beta).cloned().collect();
        if find_combination(beta, &smaller)?.is_some() {
            return Err(Error::Invalid(format!("selected angle {beta} is divisible")));
        }
    }
    Ok(basis)
}

fn rational_angles(d: &AngleMultiset) -> Result<Vec<RationalAngle>> {
    d.all_rational().ok_or_else(|| Error::Domain("angle set contains an angle that is not a rational multiple of pi".into()))
}

/// Nonnegative integers `i_a` with `sum i_a a = pi`, by bounded enumeration; the
/// coefficients follow the increasing order of the distinct angles.
pub fn integer_combination_pi(d: &AngleMultiset) -> Result<Option<Vec<u64>>> {
    rational_angles(d)?;
    let pi = Angle::Rational(RationalAngle::new(1, 1)?);
    find_combination(&pi, &d.distinct())
}

/// Strictly positive rationals `q_a` with `sum q_a a = pi`; all equal to `1 / sum(a / pi)`.
pub fn positive_rational_combination_pi(d: &AngleMultiset) -> Result<Option<Vec<Rational>>> {
    let angles = rational_angles(d)?;
    if angles.is_empty() {
        return Ok(None);
    }
    let total: Rational = angles.iter().map(RationalAngle::as_pi_multiple).sum();
    if !total.is_positive() {
        return Ok(None);
    }
    let q = total.recip();
    let out = vec![q; angles.len()];
    debug_assert!(angles.iter().zip(&out).map(|(a, q)| a.as_pi_multiple() * q).sum::<Rational>().is_one());
    Ok(Some(out))
}

impl From<RationalAngle> for Angle {
    fn from(a: RationalAngle) -> Self {
        Angle::Rational(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn ra(p: i64, q: i64) -> Angle {
        Angle::Rational(RationalAngle::new(p, q).unwrap())
    }

    #[test]
    fn greedy_basis() {
        let d = AngleMultiset::from_angles([ra(1, 4), ra(1, 2), ra(3, 4)]);
        assert_eq!(greedy_indivisible_basis(&d).unwrap(), vec![ra(1, 4)]);
        let beta = Angle::Cosine(AlgebraicReal::from_rational(rat(1, 3)));
        let d = AngleMultiset::from_angles([ra(1, 3), beta.clone()]);
        assert_eq!(greedy_indivisible_basis(&d).unwrap(), vec![ra(1, 3), beta]);
        let d = AngleMultiset::from_angles([ra(1, 7), ra(2, 7), ra(3, 7)]);
        assert_eq!(greedy_indivisible_basis(&d).unwrap(), vec![ra(1, 7)]);
    }

    #[test]
    fn cosine_angles_merge_with_rational_ones() {
        let a = Angle::from_cosine(&AlgebraicReal::from_rational(rat(1, 2))).unwrap();
        assert_eq!(a.as_rational(), Some(RationalAngle::new(1, 3).unwrap()));
        let mut m = AngleMultiset::new();
        m.insert(a);
        m.insert(ra(1, 3));
        assert_eq!(m.entries[0].1, 2);
    }

    #[test]
    fn combinations_of_pi() {
        let d = AngleMultiset::from_angles([ra(1, 4), ra(1, 2)]);
        let c = integer_combination_pi(&d).unwrap().unwrap();
        assert_eq!(rat(c[0] as i64, 4) + rat(c[1] as i64, 2), rat(1, 1));
        assert_eq!(integer_combination_pi(&AngleMultiset::from_angles([ra(1, 3), ra(1, 5)])).unwrap(), Some(vec![5, 0]));
        assert_eq!(integer_combination_pi(&AngleMultiset::from_angles([ra(2, 3), ra(2, 5)])).unwrap(), None);
        assert_eq!(integer_combination_pi(&AngleMultiset::from_angles([ra(2, 5)])).unwrap(), None);
        let beta = Angle::Cosine(AlgebraicReal::from_rational(rat(1, 3)));
        assert!(integer_combination_pi(&AngleMultiset::from_angles([beta])).is_err());
    }

    #[test]
    fn positive_combinations() {
        assert_eq!(positive_rational_combination_pi(&AngleMultiset::from_angles([ra(1, 2)])).unwrap(), Some(vec![rat(2, 1)]));
        let q = positive_rational_combination_pi(&AngleMultiset::from_angles([ra(1, 3), ra(1, 4)])).unwrap().unwrap();
        assert_eq!(&q[0] * rat(1, 3) + &q[1] * rat(1, 4), rat(1, 1));
        assert_eq!(positive_rational_combination_pi(&AngleMultiset::new()).unwrap(), None);
    }

    #[test]
    fn irrational_combination_detected_exactly() {
        // arccos(1/3) + arccos(-1/3) = pi
        let a = Angle::Cosine(AlgebraicReal::from_rational(rat(1, 3)));
        let b = Angle::Cosine(AlgebraicReal::from_rational(rat(-1, 3)));
        let pi = ra(1, 1);
        assert_eq!(find_combination(&pi, &[a.clone(), b]).unwrap(), Some(vec![1, 1]));
        assert_eq!(find_combination(&pi, &[a]).unwrap(), None);
    }
}
