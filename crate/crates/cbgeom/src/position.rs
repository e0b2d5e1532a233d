//! Special-position detection: how many points share a line or a plane,
//! maximal collinear/coplanar groups, the independence hypothesis built
//! from those counts, and the growth signature that forces a point set
//! onto a rational normal cubic.

use crate::conditions::{conditions_imposed, is_independent};
use crate::error::Error;
use crate::geometry::{forms_through, span_rank, Form, PointSet};
use crate::scalar::{FieldSpec, Scalar};

/// Rank of a selection of points' coordinate rows. Prime-field sets in
/// P^2/P^3 run allocation-free on stack buffers; rational sets fall back
/// to the generic exact path. The group searches below call this O(k^4)
/// times, which is why the fast path exists.
struct SpanRanker<'a> {
    ps: &'a PointSet,
    fp: Option<(u64, Vec<[u64; 4]>)>,
}

impl<'a> SpanRanker<'a> {
    fn new(ps: &'a PointSet) -> Self {
        let fp = match ps.field() {
            FieldSpec::Prime(p) if ps.ambient_dim() <= 3 => {
                let rows = ps
                    .points()
                    .iter()
                    .map(|pt| {
                        let mut r = [0u64; 4];
                        for (k, c) in pt.coords().iter().enumerate() {
                            r[k] = match c {
                                Scalar::Fp(v) => *v,
                                Scalar::Rat(_) => unreachable!("prime-field point set"),
                            };
                        }
                        r
                    })
                    .collect();
                Some((*p, rows))
            }
            _ => None,
        };
        SpanRanker { ps, fp }
    }

    fn rank(&self, idx: &[usize]) -> usize {
        debug_assert!(idx.len() <= 4);
        match &self.fp {
            Some((p, rows)) => {
                let mut buf = [[0u64; 4]; 4];
                for (k, &i) in idx.iter().enumerate() {
                    buf[k] = rows[i];
                }
                tiny_rank(*p, &mut buf[..idx.len()])
            }
            None => {
                let pts: Vec<_> = idx.iter().map(|&i| self.ps.point(i)).collect();
                span_rank(*self.ps.field(), &pts)
            }
        }
    }
}

/// Forward elimination on at most 4 rows of 4 columns over F_p.
fn tiny_rank(p: u64, rows: &mut [[u64; 4]]) -> usize {
    let mut r = 0usize;
    for c in 0..4 {
        if r == rows.len() {
            break;
        }
        let Some(pi) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pi);
        for i in r + 1..rows.len() {
            if rows[i][c] != 0 {
                // rows[i] <- rows[r][c]*rows[i] - rows[i][c]*rows[r]; scaling a
                // row by a nonzero constant keeps the rank.
                let (a, b) = (rows[r][c] as u128, rows[i][c] as u128);
                let pp = p as u128;
                for j in c..4 {
                    let pos = a * rows[i][j] as u128 % pp;
                    let neg = b * rows[r][j] as u128 % pp;
                    rows[i][j] = ((pos + pp - neg) % pp) as u64;
                }
            }
        }
        r += 1;
    }
    r
}

/// Size of the largest collinear subset. Sets of at most two points return
/// their own size.
pub fn max_collinear(ps: &PointSet) -> usize {
    collinear_groups(ps, 3).first().map_or_else(|| ps.len().min(2), Vec::len)
}

/// Maximal collinear groups of at least `min_size` (>= 3) points, each
/// given as ascending point indices, ordered by size descending then
/// lexicographically. Every returned group is the full trace of its line.
pub fn collinear_groups(ps: &PointSet, min_size: usize) -> Vec<Vec<usize>> {
    let k = ps.len();
    let min_size = min_size.max(3);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    if k < min_size {
        return groups;
    }
    let ranker = SpanRanker::new(ps);
    for i in 0..k {
        for j in i + 1..k {
            if groups.iter().any(|g| g.binary_search(&i).is_ok() && g.binary_search(&j).is_ok()) {
                continue; // this line is already recorded
            }
            if ranker.rank(&[i, j]) < 2 {
                continue;
            }
            let members: Vec<usize> =
                (0..k).filter(|&x| ranker.rank(&[i, j, x]) <= 2).collect();
            if members.len() >= min_size {
                groups.push(members);
            }
        }
    }
    groups.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    groups
}

/// Size of the largest coplanar subset (ambient P^3). In the plane every
/// point is coplanar, so n = 2 returns the full count; so does a set whose
/// points are all collinear.
pub fn max_coplanar(ps: &PointSet) -> usize {
    let k = ps.len();
    if ps.ambient_dim() <= 2 || k <= 3 {
        return k;
    }
    if max_collinear(ps) == k {
        return k;
    }
    coplanar_groups(ps, 4).first().map_or(3, Vec::len)
}

/// Maximal coplanar groups of at least `min_size` (>= 4) points in P^3,
/// ascending indices, ordered by size descending then lexicographically.
/// Each group is the full trace of its plane on the set.
pub fn coplanar_groups(ps: &PointSet, min_size: usize) -> Vec<Vec<usize>> {
    assert_eq!(ps.ambient_dim(), 3, "coplanar groups live in P^3");
    let k = ps.len();
    let min_size = min_size.max(4);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    if k < min_size {
        return groups;
    }
    let ranker = SpanRanker::new(ps);
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                if groups.iter().any(|g| {
                    g.binary_search(&i).is_ok()
                        && g.binary_search(&j).is_ok()
                        && g.binary_search(&l).is_ok()
                }) {
                    continue; // plane already recorded
                }
                if ranker.rank(&[i, j, l]) != 3 {
                    continue;
                }
                let members: Vec<usize> =
                    (0..k).filter(|&x| ranker.rank(&[i, j, l, x]) == 3).collect();
                if members.len() >= min_size {
                    groups.push(members);
                }
            }
        }
    }
    groups.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    groups
}

/// Hypothesis guaranteeing independent conditions in degree d (ambient P^3,
/// d >= 2): at most d + 1 points on any line and at most 2d + 1 on any plane.
pub fn de_hypothesis(ps: &PointSet, d: u32) -> Result<bool, Error> {
    if ps.ambient_dim() != 3 {
        return Err(Error::InvalidSpec(format!(
            "independence hypothesis needs ambient P^3, got P^{}",
            ps.ambient_dim()
        )));
    }
    if d < 2 {
        return Err(Error::InvalidSpec(format!("independence hypothesis needs degree >= 2, got {d}")));
    }
    Ok(max_collinear(ps) <= d as usize + 1 && max_coplanar(ps) <= 2 * d as usize + 1)
}

/// Growth signature that pins at least 9 points in linear general position
/// to a rational normal cubic: the conditions imposed in degree m must hit
/// min(|P|, 3m + 1) for every m up to the first with 3m + 1 >= |P|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnSignature {
    pub holds: bool,
    /// Linear general position: no 3 on a line, no 4 on a plane.
    pub lgp: bool,
    /// conditions imposed in degrees 1..=m0
    pub profile: Vec<usize>,
    /// min(|P|, 3m + 1) in the same degrees
    pub expected: Vec<usize>,
}

pub fn castelnuovo_signature(ps: &PointSet) -> Result<CnSignature, Error> {
    if ps.ambient_dim() != 3 {
        return Err(Error::InvalidSpec(format!(
            "cubic-curve signature needs ambient P^3, got P^{}",
            ps.ambient_dim()
        )));
    }
    let k = ps.len();
    let lgp = max_collinear(ps) <= 2 && max_coplanar(ps) <= 3;
    let m0 = {
        let mut m = 1u32;
        while 3 * m as usize + 1 < k {
            m += 1;
        }
        m
    };
    let profile: Vec<usize> = (1..=m0).map(|m| conditions_imposed(ps, m)).collect();
    let expected: Vec<usize> = (1..=m0).map(|m| k.min(3 * m as usize + 1)).collect();
    let holds = k >= 9 && lgp && profile == expected;
    Ok(CnSignature { holds, lgp, profile, expected })
}

/// Quadrics through every point, as the canonical kernel basis.
pub fn quadrics_through(ps: &PointSet) -> Vec<Form> {
    forms_through(ps, 2)
}

/// Summary of a set's special-position data, as printed by the analyzer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionReport {
    pub n_points: usize,
    pub max_collinear: usize,
    pub max_coplanar: usize,
    /// For degrees 2..=5 (ambient P^3 only): degree, hypothesis verdict,
    /// actual independence of conditions.
    pub de: Vec<(u32, bool, bool)>,
    /// dim of quadrics through the set.
    pub quadric_count: usize,
    pub castelnuovo: Option<CnSignature>,
}

pub fn position_report(ps: &PointSet) -> PositionReport {
    let mc = max_collinear(ps);
    let mp = max_coplanar(ps);
    let de = if ps.ambient_dim() == 3 {
        (2..=5u32)
            .map(|d| {
                let hyp = mc <= d as usize + 1 && mp <= 2 * d as usize + 1;
                (d, hyp, is_independent(ps, d))
            })
            .collect()
    } else {
        Vec::new()
    };
    let castelnuovo = if ps.ambient_dim() == 3 {
        castelnuovo_signature(ps).ok()
    } else {
        None
    };
    PositionReport {
        n_points: ps.len(),
        max_collinear: mc,
        max_coplanar: mp,
        de,
        quadric_count: quadrics_through(ps).len(),
        castelnuovo,
    }
}
