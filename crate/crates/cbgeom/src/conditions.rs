//! Conditions a point set imposes on forms of a given degree, the two
//! cohomology-style counts derived from that rank, and the per-point
//! Cayley-Bacharach test.

use crate::geometry::{eval_matrix, monomial_count, PointSet};
use crate::linalg::rank;

/// Number of independent conditions the points impose on degree-d forms:
/// the rank of the evaluation matrix. Empty sets impose none.
pub fn conditions_imposed(ps: &PointSet, d: u32) -> usize {
    rank(&eval_matrix(ps, d))
}

/// Dimension of the space of degree-d forms through every point.
pub fn h0_ideal(ps: &PointSet, d: u32) -> usize {
    monomial_count(ps.ambient_dim(), d) - conditions_imposed(ps, d)
}

/// Failure of the points to impose independent conditions in degree d:
/// |P| minus the rank. Zero exactly when conditions are independent.
pub fn h1_ideal(ps: &PointSet, d: u32) -> usize {
    ps.len() - conditions_imposed(ps, d)
}

pub fn is_independent(ps: &PointSet, d: u32) -> bool {
    h1_ideal(ps, d) == 0
}

/// Outcome of the degree-m Cayley-Bacharach test on a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbReport {
    pub m: u32,
    /// True when every degree-m form through all but one point also passes
    /// through the remaining one, for each choice of omitted point.
    pub satisfied: bool,
    /// Indices of points whose omission enlarges the space of forms.
    pub failing_points: Vec<usize>,
    /// dim of degree-m forms through the whole set.
    pub h0_full: usize,
    /// Per point: h0 through the set minus that point, minus h0_full.
    /// Each entry is 0 (point is forced) or 1 (point is missable).
    pub h0_drops: Vec<usize>,
}

/// Degree-m Cayley-Bacharach test: for each point p, compare the forms
/// through P minus p with the forms through P. The set satisfies CB(m)
/// when no omission changes the space. Empty sets pass vacuously.
pub fn is_cb(ps: &PointSet, m: u32) -> CbReport {
    let full_rank = conditions_imposed(ps, m);
    let h0_full = monomial_count(ps.ambient_dim(), m) - full_rank;
    let mut failing_points = Vec::new();
    let mut h0_drops = Vec::with_capacity(ps.len());
    for i in 0..ps.len() {
        let r = conditions_imposed(&ps.without_point(i), m);
        // Deleting one row lowers the rank by 0 or 1, never more.
        let drop = full_rank - r;
        debug_assert!(drop <= 1);
        if drop > 0 {
            failing_points.push(i);
        }
        h0_drops.push(drop);
    }
    CbReport { m, satisfied: failing_points.is_empty(), failing_points, h0_full, h0_drops }
}

/// Splits a set into (subset at `idx`, complement), both keeping the
/// original order. Indices must be distinct and in range.
pub fn residual_split(ps: &PointSet, idx: &[usize]) -> (PointSet, PointSet) {
    let chosen: Vec<bool> = {
        let mut b = vec![false; ps.len()];
        for &i in idx {
            assert!(!b[i], "repeated index in split");
            b[i] = true;
        }
        b
    };
    let rest: Vec<usize> = (0..ps.len()).filter(|&i| !chosen[i]).collect();
    (ps.subset(idx), ps.subset(&rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ProjPoint;
    use crate::scalar::FieldSpec;

    fn set(f: FieldSpec, n: usize, coords: &[&[i64]]) -> PointSet {
        PointSet::new(
            f,
            n,
            coords.iter().map(|c| ProjPoint::from_ints(f, c).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn twelve_coplanar_points() {
        let f = FieldSpec::default_prime();
        let pairs: [(i64, i64); 12] = [
            (0, 0), (1, 0), (2, 0), (3, 1), (4, 1), (5, 1),
            (0, 2), (1, 2), (2, 3), (3, 3), (4, 5), (5, 7),
        ];
        let coords: Vec<Vec<i64>> = pairs.iter().map(|&(a, b)| vec![1, a, b, 0]).collect();
        let refs: Vec<&[i64]> = coords.iter().map(Vec::as_slice).collect();
        let ps = set(f, 3, &refs);
        assert_eq!(conditions_imposed(&ps, 3), 10);
        assert_eq!(h0_ideal(&ps, 3), 10);
        assert_eq!(h1_ideal(&ps, 3), 2);
        assert!(!is_independent(&ps, 3));
        let rep = is_cb(&ps, 3);
        assert!(rep.satisfied);
        assert_eq!(rep.h0_full, 10);
        assert!(rep.h0_drops.iter().all(|&d| d == 0));
    }

    #[test]
    fn twelve_conic_points() {
        // (1, t, t^2, 0) for t = 1..12: cubics restrict to a 7-dim space
        let f = FieldSpec::default_prime();
        let coords: Vec<Vec<i64>> = (1..=12i64).map(|t| vec![1, t, t * t, 0]).collect();
        let refs: Vec<&[i64]> = coords.iter().map(Vec::as_slice).collect();
        let ps = set(f, 3, &refs);
        assert_eq!(conditions_imposed(&ps, 3), 7);
        assert!(is_cb(&ps, 3).satisfied);
    }

    #[test]
    fn eleven_cuspidal_cubic_points() {
        // (t, 1, t^3, 0) for t = 1..11 on the cuspidal plane cubic
        let f = FieldSpec::default_prime();
        let coords: Vec<Vec<i64>> = (1..=11i64).map(|t| vec![t, 1, t * t * t, 0]).collect();
        let refs: Vec<&[i64]> = coords.iter().map(Vec::as_slice).collect();
        let ps = set(f, 3, &refs);
        assert_eq!(conditions_imposed(&ps, 3), 9);
        assert_eq!(h0_ideal(&ps, 3), 11);
        assert!(is_cb(&ps, 3).satisfied);
    }

    #[test]
    fn collinear_triple_passes_cb1_general_triple_fails() {
        let f = FieldSpec::Prime(13);
        let col = set(f, 2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        let rep = is_cb(&col, 1);
        assert!(rep.satisfied);
        assert_eq!(conditions_imposed(&col, 1), 2);
        assert_eq!(rep.h0_full, 1);

        let gen = set(f, 2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let rep = is_cb(&gen, 1);
        assert!(!rep.satisfied);
        assert_eq!(rep.failing_points, vec![0, 1, 2]);
        assert_eq!(rep.h0_drops, vec![1, 1, 1]);
    }

    #[test]
    fn degree_zero_edge_cases() {
        let f = FieldSpec::Prime(13);
        let one = set(f, 2, &[&[1, 2, 3]]);
        let rep = is_cb(&one, 0);
        assert!(!rep.satisfied);
        assert_eq!(rep.failing_points, vec![0]);
        let two = set(f, 2, &[&[1, 2, 3], &[1, 1, 1]]);
        assert!(is_cb(&two, 0).satisfied);
        let empty = PointSet::empty(f, 2);
        assert!(is_cb(&empty, 0).satisfied);
        assert_eq!(conditions_imposed(&empty, 2), 0);
        assert_eq!(h0_ideal(&empty, 2), 6);
    }

    #[test]
    fn split_preserves_order_and_partition() {
        let f = FieldSpec::Prime(13);
        let ps = set(f, 2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]]);
        let (sub, rest) = residual_split(&ps, &[3, 0]);
        assert_eq!(sub.points(), &[ps.point(3).clone(), ps.point(0).clone()]);
        assert_eq!(rest.points(), &[ps.point(1).clone(), ps.point(2).clone(), ps.point(4).clone()]);
    }
}
