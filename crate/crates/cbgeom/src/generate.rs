//! Seeded construction of test configurations: standard rational curves
//! moved into general position, point samples on them, sextics through
//! prescribed points, complete intersections of two plane cubics, and the
//! five recognized multi-component configuration shapes with witnesses.
//!
//! Everything here is a pure function of (spec, seed): the same inputs
//! reproduce the same bytes. Degenerate random draws are resampled a bounded
//! number of times and then reported as hard errors, never looped silently.

use crate::classify::{verify_cover, ComponentWitness};
use crate::error::Error;
use crate::geometry::{
    forms_through, monomial_count, restrict_to_curve, restrict_to_plane, span_rank, Form,
    PointSet, ProjPoint, Projectivity, RationalCurve,
};
use crate::linalg::{det, Matrix};
use crate::position::castelnuovo_signature;
use crate::scalar::{
    lagrange_fp, BinaryForm, FieldSpec, ParamP1, PolyFp, Scalar, Seed, SplitMix,
};

const MAX_RETRIES: usize = 100;
/// Per-draw rejection budget inside one retry (distinct parameters, distinct
/// points); generous for the smallest admissible field p = 19.
const DRAW_BUDGET: usize = 10_000;

/// The rational curves the generators know how to sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Line,
    PlaneConic,
    TwistedCubic,
    CuspidalPlaneCubic,
}

impl CurveKind {
    pub fn degree(self) -> u32 {
        match self {
            CurveKind::Line => 1,
            CurveKind::PlaneConic => 2,
            CurveKind::TwistedCubic | CurveKind::CuspidalPlaneCubic => 3,
        }
    }

    /// Largest sample usable as curve ∩ sextic (Bezout against degree 6).
    pub fn capacity(self) -> usize {
        6 * self.degree() as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Line => "line",
            CurveKind::PlaneConic => "conic",
            CurveKind::TwistedCubic => "twisted-cubic",
            CurveKind::CuspidalPlaneCubic => "plane-cubic",
        }
    }
}

/// The standard model of each curve kind:
/// line (s, t, 0, 0); conic (s², st, t², 0); twisted cubic (s³, s²t, st², t³);
/// cuspidal plane cubic (s²t, s³, t³, 0), which satisfies x₀³ = x₁²x₂ on the
/// plane x₃ = 0 with its cusp at parameter (0:1).
pub fn standard_curve(field: FieldSpec, kind: CurveKind) -> RationalCurve {
    let (one, zero) = (field.one(), field.zero());
    let monomial = |deg: usize, idx: usize| {
        let mut c = vec![zero.clone(); deg + 1];
        c[idx] = one.clone();
        BinaryForm::new(c)
    };
    let zero_form = |deg: usize| BinaryForm::zero(&field, deg);
    let forms = match kind {
        CurveKind::Line => vec![monomial(1, 0), monomial(1, 1), zero_form(1), zero_form(1)],
        CurveKind::PlaneConic => {
            vec![monomial(2, 0), monomial(2, 1), monomial(2, 2), zero_form(2)]
        }
        CurveKind::TwistedCubic => {
            vec![monomial(3, 0), monomial(3, 1), monomial(3, 2), monomial(3, 3)]
        }
        CurveKind::CuspidalPlaneCubic => {
            vec![monomial(3, 1), monomial(3, 0), monomial(3, 3), zero_form(3)]
        }
    };
    RationalCurve::new(field, forms).expect("standard model is a curve")
}

/// The parameter excluded from sampling on each kind: the cusp of the
/// cuspidal cubic (its parametrization is defined there, but the image is
/// the singular point, which the incidence arguments avoid).
pub(crate) fn excluded_param(field: &FieldSpec, kind: CurveKind) -> Option<ParamP1> {
    match kind {
        CurveKind::CuspidalPlaneCubic => Some(ParamP1::infinity(field)),
        _ => None,
    }
}

/// A random invertible change of coordinates of P^3, by rejection.
pub fn random_projectivity(field: FieldSpec, seed: Seed) -> Result<Projectivity, Error> {
    let mut rng = SplitMix::new(seed);
    projectivity_from(field, 3, &mut rng)
}

fn projectivity_from(
    field: FieldSpec,
    n: usize,
    rng: &mut SplitMix,
) -> Result<Projectivity, Error> {
    for _ in 0..MAX_RETRIES {
        let rows: Vec<Vec<Scalar>> = (0..=n)
            .map(|_| (0..=n).map(|_| field.sample(rng)).collect())
            .collect();
        let m = Matrix::from_rows(field, rows).expect("square sample");
        if let Ok(g) = Projectivity::new(m) {
            return Ok(g);
        }
    }
    Err(Error::Internal("random matrices kept coming out singular"))
}

/// Image of a parametrized curve under a projectivity: each new coordinate
/// form is the matrix row applied to the old form vector.
pub fn moved_curve(curve: &RationalCurve, g: &Projectivity) -> RationalCurve {
    let field = *curve.field();
    let m = g.matrix();
    let deg = curve.degree() as usize;
    let forms: Vec<BinaryForm> = (0..m.rows())
        .map(|i| {
            let mut acc = BinaryForm::zero(&field, deg);
            for (j, f) in curve.forms().iter().enumerate() {
                acc = acc.add(&field, &f.scale(&field, m.get(i, j)));
            }
            acc
        })
        .collect();
    RationalCurve::new(field, forms).expect("projectivity image of a curve")
}

/// One uniform parameter of P^1: all p + 1 points over F_p, small affine
/// values over Q.
fn draw_param(field: &FieldSpec, rng: &mut SplitMix) -> ParamP1 {
    match field.modulus() {
        Some(p) => {
            let u = rng.next_below(p + 1);
            if u == p {
                ParamP1::infinity(field)
            } else {
                ParamP1 { s: field.one(), t: Scalar::Fp(u) }
            }
        }
        None => {
            let t = field.sample(rng);
            ParamP1 { s: field.one(), t }
        }
    }
}

/// `count` points at distinct parameters of a rational curve. With
/// `for_sextic` set, the count is held to the curve ∩ sextic capacity.
pub fn sample_on_curve(
    curve: &RationalCurve,
    count: usize,
    seed: Seed,
    for_sextic: bool,
) -> Result<(Vec<ParamP1>, PointSet), Error> {
    sample_on_curve_avoiding(curve, count, seed, for_sextic, &[])
}

/// Like `sample_on_curve`, but never draws a parameter from `avoid`
/// (used to keep the cuspidal cubic's cusp out of samples).
pub fn sample_on_curve_avoiding(
    curve: &RationalCurve,
    count: usize,
    seed: Seed,
    for_sextic: bool,
    avoid: &[ParamP1],
) -> Result<(Vec<ParamP1>, PointSet), Error> {
    let field = *curve.field();
    if for_sextic {
        let capacity = 6 * curve.degree() as usize;
        if count > capacity {
            return Err(Error::CapacityExceeded { capacity, requested: count });
        }
    }
    if let Some(p) = field.modulus() {
        let pool = p as usize + 1 - avoid.len();
        if count > pool {
            return Err(Error::TooFew { need: count, got: pool });
        }
    }
    let mut rng = SplitMix::new(seed);
    let mut params: Vec<ParamP1> = Vec::with_capacity(count);
    let mut points: Vec<ProjPoint> = Vec::with_capacity(count);
    let mut budget = DRAW_BUDGET;
    while params.len() < count {
        if budget == 0 {
            return Err(Error::RetriesExhausted("distinct parameter sampling"));
        }
        budget -= 1;
        let t = draw_param(&field, &mut rng);
        if avoid.contains(&t) || params.contains(&t) {
            continue;
        }
        let pt = curve.point_at(&t)?;
        params.push(t);
        points.push(pt);
    }
    let ps = PointSet::new(field, curve.ambient_dim(), points)?;
    Ok((params, ps))
}

/// A random sextic through all given points: a PRNG combination of the
/// canonical kernel basis with every coefficient nonzero.
pub fn sextic_through(points: &PointSet, seed: Seed) -> Result<Form, Error> {
    let field = *points.field();
    let n = points.ambient_dim();
    let space = monomial_count(n, 6);
    if points.len() >= space {
        return Err(Error::CapacityExceeded { capacity: space - 1, requested: points.len() });
    }
    let basis = forms_through(points, 6);
    if basis.is_empty() {
        // Unreachable for |P| < dim of the degree-6 space over a field.
        return Err(Error::EmptyKernel);
    }
    let mut rng = SplitMix::new(seed);
    let mut acc = Form::zero(field, n, 6);
    for b in &basis {
        acc = acc.add(&b.scale(&field.sample_nonzero(&mut rng)));
    }
    debug_assert!(acc.vanishes_on(points));
    Ok(acc)
}

/// Configuration shapes the generator can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigCase {
    /// Twisted cubic and two mutually skew lines.
    CaseI,
    /// Twisted cubic and a plane conic.
    CaseII,
    /// Twisted cubic and three pairwise skew lines.
    CaseIII,
    /// Twisted cubic, a line, and a plane conic.
    CaseIV,
    /// Twisted cubic and a plane cubic.
    CaseV,
    /// Points on one plane.
    OnPlane,
    /// Points on one plane conic.
    OnConic,
    /// Points on one plane cubic.
    OnPlaneCubic,
    /// Points on one twisted cubic.
    OnTwistedCubic,
    /// The nine base points of a pencil of plane cubics (ambient P^2).
    CI33,
}

impl ConfigCase {
    pub fn name(self) -> &'static str {
        match self {
            ConfigCase::CaseI => "case-i",
            ConfigCase::CaseII => "case-ii",
            ConfigCase::CaseIII => "case-iii",
            ConfigCase::CaseIV => "case-iv",
            ConfigCase::CaseV => "case-v",
            ConfigCase::OnPlane => "on-plane",
            ConfigCase::OnConic => "on-conic",
            ConfigCase::OnPlaneCubic => "on-plane-cubic",
            ConfigCase::OnTwistedCubic => "on-twisted-cubic",
            ConfigCase::CI33 => "ci33",
        }
    }

    pub fn from_name(name: &str) -> Option<ConfigCase> {
        Some(match name {
            "case-i" => ConfigCase::CaseI,
            "case-ii" => ConfigCase::CaseII,
            "case-iii" => ConfigCase::CaseIII,
            "case-iv" => ConfigCase::CaseIV,
            "case-v" => ConfigCase::CaseV,
            "on-plane" => ConfigCase::OnPlane,
            "on-conic" => ConfigCase::OnConic,
            "on-plane-cubic" => ConfigCase::OnPlaneCubic,
            "on-twisted-cubic" => ConfigCase::OnTwistedCubic,
            "ci33" => ConfigCase::CI33,
            _ => return None,
        })
    }

    /// Component shapes, in emission order. Empty for CI33 (intrinsic).
    fn components(self) -> Vec<ComponentShape> {
        use ComponentShape::{Curve, Plane};
        use CurveKind::*;
        match self {
            ConfigCase::CaseI => vec![Curve(TwistedCubic), Curve(Line), Curve(Line)],
            ConfigCase::CaseII => vec![Curve(TwistedCubic), Curve(PlaneConic)],
            ConfigCase::CaseIII => {
                vec![Curve(TwistedCubic), Curve(Line), Curve(Line), Curve(Line)]
            }
            ConfigCase::CaseIV => vec![Curve(TwistedCubic), Curve(Line), Curve(PlaneConic)],
            ConfigCase::CaseV => vec![Curve(TwistedCubic), Curve(CuspidalPlaneCubic)],
            ConfigCase::OnPlane => vec![Plane],
            ConfigCase::OnConic => vec![Curve(PlaneConic)],
            ConfigCase::OnPlaneCubic => vec![Curve(CuspidalPlaneCubic)],
            ConfigCase::OnTwistedCubic => vec![Curve(TwistedCubic)],
            ConfigCase::CI33 => vec![],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ComponentShape {
    Curve(CurveKind),
    Plane,
}

impl ComponentShape {
    /// Admissible per-component point counts. Curve maxima are the
    /// curve ∩ sextic capacities; minima are what the emitted witness
    /// needs to be verifiable (a spanning pair/triple always exists, the
    /// cubic-growth signature needs 9 points).
    fn count_range(self) -> (usize, usize) {
        match self {
            ComponentShape::Curve(CurveKind::Line) => (2, 6),
            ComponentShape::Curve(CurveKind::PlaneConic) => (3, 12),
            ComponentShape::Curve(CurveKind::CuspidalPlaneCubic) => (4, 18),
            ComponentShape::Curve(CurveKind::TwistedCubic) => (9, 18),
            ComponentShape::Plane => (3, 83),
        }
    }

}

/// A validated generation request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigSpec {
    pub case: ConfigCase,
    pub lengths: Vec<usize>,
    pub field: FieldSpec,
    pub seed: Seed,
}

impl ConfigSpec {
    pub fn new(
        case: ConfigCase,
        lengths: Option<Vec<usize>>,
        field: FieldSpec,
        seed: Seed,
    ) -> Result<ConfigSpec, Error> {
        let lengths = lengths.unwrap_or_else(|| default_lengths(case));
        let spec = ConfigSpec { case, lengths, field, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.case == ConfigCase::CI33 {
            if !(self.lengths.is_empty() || self.lengths == [9]) {
                return Err(Error::InvalidSpec(
                    "ci33 has exactly 9 intrinsic points; omit lengths or pass 9".into(),
                ));
            }
            return Ok(());
        }
        let shapes = self.case.components();
        if self.lengths.len() != shapes.len() {
            return Err(Error::InvalidSpec(format!(
                "{} takes {} component lengths, got {}",
                self.case.name(),
                shapes.len(),
                self.lengths.len()
            )));
        }
        for (shape, &len) in shapes.iter().zip(&self.lengths) {
            let (lo, hi) = shape.count_range();
            if len < lo {
                return Err(Error::TooFew { need: lo, got: len });
            }
            if len > hi {
                return Err(Error::CapacityExceeded { capacity: hi, requested: len });
            }
        }
        let total: usize = self.lengths.iter().sum();
        if total > 83 {
            return Err(Error::CapacityExceeded { capacity: 83, requested: total });
        }
        Ok(())
    }

    pub fn total(&self) -> usize {
        if self.case == ConfigCase::CI33 {
            9
        } else {
            self.lengths.iter().sum()
        }
    }
}

/// Default component lengths per case: the multi-component cases sit at
/// their length thresholds (27 for I/II, 30 for III/IV/V) with the cubic
/// core as large as possible; the single-component cases use the counts the
/// standard checks read off them.
pub fn default_lengths(case: ConfigCase) -> Vec<usize> {
    match case {
        ConfigCase::CaseI | ConfigCase::CaseII => {
            case_lengths_for_total(case, 27).expect("threshold split is valid")
        }
        ConfigCase::CaseIII | ConfigCase::CaseIV | ConfigCase::CaseV => {
            case_lengths_for_total(case, 30).expect("threshold split is valid")
        }
        ConfigCase::OnPlane | ConfigCase::OnConic | ConfigCase::OnTwistedCubic => vec![12],
        ConfigCase::OnPlaneCubic => vec![11],
        ConfigCase::CI33 => vec![],
    }
}

/// Splits a total length over the components of a multi-component case:
/// secondary components are first held at comfortable minimums (line 5,
/// conic 7, plane cubic 9), the cubic core takes as much of the rest as its
/// capacity allows, and any remainder tops up the secondary components in
/// order.
pub fn case_lengths_for_total(case: ConfigCase, total: usize) -> Result<Vec<usize>, Error> {
    let shapes = case.components();
    if !matches!(
        case,
        ConfigCase::CaseI
            | ConfigCase::CaseII
            | ConfigCase::CaseIII
            | ConfigCase::CaseIV
            | ConfigCase::CaseV
    ) {
        return Err(Error::InvalidSpec(format!(
            "{} is not a multi-component case",
            case.name()
        )));
    }
    let floor = |shape: &ComponentShape| match shape {
        ComponentShape::Curve(CurveKind::Line) => 5usize,
        ComponentShape::Curve(CurveKind::PlaneConic) => 7,
        ComponentShape::Curve(CurveKind::CuspidalPlaneCubic) => 9,
        _ => 0,
    };
    let reserve: usize = shapes[1..].iter().map(floor).sum();
    if total < reserve + 9 {
        return Err(Error::TooFew { need: reserve + 9, got: total });
    }
    let core = (total - reserve).min(18);
    let mut lengths = vec![core];
    lengths.extend(shapes[1..].iter().map(floor));
    let mut rem = total - core - reserve;
    for (i, shape) in shapes[1..].iter().enumerate() {
        if rem == 0 {
            break;
        }
        let (_, hi) = shape.count_range();
        let add = rem.min(hi - lengths[i + 1]);
        lengths[i + 1] += add;
        rem -= add;
    }
    if rem > 0 {
        let capacity: usize = 18 + shapes[1..]
            .iter()
            .map(|s| s.count_range().1)
            .sum::<usize>();
        return Err(Error::CapacityExceeded { capacity, requested: total });
    }
    Ok(lengths)
}

/// One sampled rational-curve component: the moved curve, the parameters
/// chosen on it, and the indices its points occupy in the full set.
#[derive(Debug, Clone)]
pub struct CurveTrace {
    pub kind: CurveKind,
    pub curve: RationalCurve,
    pub params: Vec<ParamP1>,
    pub covered: Vec<usize>,
}

/// A generated configuration: the points, witnesses verifying the intended
/// component structure, a sextic through every point, and the sampled
/// rational-curve components.
#[derive(Debug, Clone)]
pub struct GeneratedConfig {
    pub points: PointSet,
    pub witnesses: Vec<ComponentWitness>,
    pub sextic: Form,
    pub curves: Vec<CurveTrace>,
}

pub fn sample_config(spec: &ConfigSpec) -> Result<GeneratedConfig, Error> {
    spec.validate()?;
    match spec.case {
        ConfigCase::CI33 => sample_ci33_config(spec),
        _ => sample_component_config(spec),
    }
}

fn sample_component_config(spec: &ConfigSpec) -> Result<GeneratedConfig, Error> {
    let field = spec.field;
    let shapes = spec.case.components();
    let mut rng = SplitMix::new(spec.seed);
    'config: for _ in 0..MAX_RETRIES {
        // Each component gets its own random position.
        let mut curves: Vec<CurveTrace> = Vec::new();
        let mut plane_points: Option<(Projectivity, Vec<usize>)> = None;
        let mut all: Vec<ProjPoint> = Vec::new();
        for (shape, &count) in shapes.iter().zip(&spec.lengths) {
            let g = projectivity_from(field, 3, &mut rng)?;
            let offset = all.len();
            match shape {
                ComponentShape::Curve(kind) => {
                    let curve = moved_curve(&standard_curve(field, *kind), &g);
                    let avoid: Vec<ParamP1> =
                        excluded_param(&field, *kind).into_iter().collect();
                    let (params, pts) = sample_on_curve_avoiding(
                        &curve,
                        count,
                        rng.next_u64(),
                        true,
                        &avoid,
                    )?;
                    all.extend(pts.points().iter().cloned());
                    curves.push(CurveTrace {
                        kind: *kind,
                        curve,
                        params,
                        covered: (offset..offset + count).collect(),
                    });
                }
                ComponentShape::Plane => {
                    let mut chosen: Vec<ProjPoint> = Vec::with_capacity(count);
                    let mut budget = DRAW_BUDGET;
                    while chosen.len() < count {
                        if budget == 0 {
                            continue 'config;
                        }
                        budget -= 1;
                        let coords = vec![
                            field.sample(&mut rng),
                            field.sample(&mut rng),
                            field.sample(&mut rng),
                            field.zero(),
                        ];
                        let Ok(base) = ProjPoint::new(field, coords) else { continue };
                        let img = g.apply(&base);
                        if !chosen.contains(&img) {
                            chosen.push(img);
                        }
                    }
                    all.extend(chosen);
                    plane_points = Some((g, (offset..offset + count).collect()));
                }
            }
        }
        let Ok(points) = PointSet::new(field, 3, all) else {
            continue; // cross-component coincidence
        };

        // Case demands: lines pairwise skew where more than one is present.
        let line_traces: Vec<&CurveTrace> =
            curves.iter().filter(|t| t.kind == CurveKind::Line).collect();
        for i in 0..line_traces.len() {
            for j in i + 1..line_traces.len() {
                let pts: Vec<&ProjPoint> = line_traces[i].covered[..2]
                    .iter()
                    .chain(&line_traces[j].covered[..2])
                    .map(|&ix| points.point(ix))
                    .collect();
                if span_rank(field, &pts) != 4 {
                    continue 'config;
                }
            }
        }

        let Some(witnesses) = component_witnesses(&points, &curves, &plane_points) else {
            continue;
        };
        if !verify_cover(&points, &witnesses) {
            continue;
        }

        // One sextic through everything, proper on every curve component.
        for _ in 0..MAX_RETRIES {
            let sextic = sextic_through(&points, rng.next_u64())?;
            if curves
                .iter()
                .all(|t| !restrict_to_curve(&sextic, &t.curve).is_zero())
                && plane_points
                    .as_ref()
                    .map_or(true, |(g, _)| !plane_inside_sextic(&sextic, g))
            {
                return Ok(GeneratedConfig { points, witnesses, sextic, curves });
            }
        }
        return Err(Error::RetriesExhausted("sextic proper on all components"));
    }
    Err(Error::RetriesExhausted("configuration sampling"))
}

/// Witnesses for the constructed components; None on a degenerate sample
/// (callers resample).
fn component_witnesses(
    points: &PointSet,
    curves: &[CurveTrace],
    plane_points: &Option<(Projectivity, Vec<usize>)>,
) -> Option<Vec<ComponentWitness>> {
    let mut witnesses = Vec::new();
    for trace in curves {
        let covered = trace.covered.clone();
        let w = match trace.kind {
            CurveKind::TwistedCubic => {
                let sig = castelnuovo_signature(&points.subset(&covered)).ok()?;
                if !sig.holds {
                    return None;
                }
                ComponentWitness::RationalCubicSignature { covered, profile: sig.profile }
            }
            CurveKind::Line => {
                let spanning = [covered[0], covered[1]];
                ComponentWitness::Line { covered, spanning }
            }
            CurveKind::PlaneConic | CurveKind::CuspidalPlaneCubic => {
                let degree = if trace.kind == CurveKind::PlaneConic { 2 } else { 3 };
                let spanning = spanning_triple(points, &covered)?;
                let (a, b, c) = (
                    points.point(spanning[0]),
                    points.point(spanning[1]),
                    points.point(spanning[2]),
                );
                let restricted = restrict_to_plane(&points.subset(&covered), a, b, c).ok()?;
                let form = forms_through(&restricted, degree).into_iter().next()?;
                if degree == 2 {
                    ComponentWitness::PlaneConic { covered, plane: Some(spanning), form }
                } else {
                    ComponentWitness::PlaneCubic { covered, plane: Some(spanning), form }
                }
            }
        };
        witnesses.push(w);
    }
    if let Some((_, covered)) = plane_points {
        let spanning = spanning_triple(points, covered)?;
        witnesses.push(ComponentWitness::Plane { covered: covered.clone(), spanning });
    }
    Some(witnesses)
}

/// First triple of the covered indices spanning a plane, scanning in order.
fn spanning_triple(points: &PointSet, covered: &[usize]) -> Option<[usize; 3]> {
    let field = *points.field();
    let a = *covered.first()?;
    let b = *covered.iter().find(|&&i| {
        i != a && span_rank(field, &[points.point(a), points.point(i)]) == 2
    })?;
    let c = *covered.iter().find(|&&i| {
        i != a
            && i != b
            && span_rank(field, &[points.point(a), points.point(b), points.point(i)]) == 3
    })?;
    Some([a, b, c])
}

/// Whether the moved plane x₃ = 0 lies inside the sextic's zero locus,
/// decided exactly: a nonzero plane sextic vanishes on at most 6 lines, so
/// vanishing on 7 distinct lines of the plane means vanishing on the plane.
pub(crate) fn plane_inside_sextic(sextic: &Form, g: &Projectivity) -> bool {
    let field = *sextic.field();
    for j in 0..7i64 {
        // the pencil line (s : t : j*t : 0), moved by g
        let line = RationalCurve::new(
            field,
            vec![
                BinaryForm::new(vec![field.one(), field.zero()]),
                BinaryForm::new(vec![field.zero(), field.one()]),
                BinaryForm::new(vec![field.zero(), field.from_i64(j)]),
                BinaryForm::zero(&field, 1),
            ],
        )
        .expect("pencil line");
        if !restrict_to_curve(sextic, &moved_curve(&line, g)).is_zero() {
            return false;
        }
    }
    true
}

fn sample_ci33_config(spec: &ConfigSpec) -> Result<GeneratedConfig, Error> {
    let points = ci33_p2(spec.field, spec.seed)?;
    let pencil = forms_through(&points, 3);
    debug_assert_eq!(pencil.len(), 2);
    let covered: Vec<usize> = (0..points.len()).collect();
    let witnesses: Vec<ComponentWitness> = pencil
        .iter()
        .map(|form| ComponentWitness::PlaneCubic {
            covered: covered.clone(),
            plane: None,
            form: form.clone(),
        })
        .collect();
    // No properness demand here: the intersection curves carry no rational
    // parametrization to restrict to.
    let mut rng = SplitMix::new(spec.seed);
    let sextic = sextic_through(&points, rng.next_u64())?;
    if !verify_cover(&points, &witnesses) {
        return Err(Error::Internal("pencil witnesses failed verification"));
    }
    Ok(GeneratedConfig { points, witnesses, sextic, curves: Vec::new() })
}

/// The nine base points of a pencil of plane cubics, found exactly: eight
/// random points determine the pencil; the ninth point is recovered from the
/// resultant of the two generators with respect to the last variable (a
/// degree-9 binary form whose roots are the projections of all nine), by
/// dividing out the eight known root factors and intersecting the two
/// univariate specializations at the remaining root.
pub fn ci33_p2(field: FieldSpec, seed: Seed) -> Result<PointSet, Error> {
    let Some(p) = field.modulus() else {
        return Err(Error::PrimeFieldOnly("ci33_p2"));
    };
    let mut rng = SplitMix::new(seed);
    'attempt: for _ in 0..MAX_RETRIES {
        // Eight distinct points, no two sharing an (x₀ : x₁) projection and
        // none at the projection center (0 : 0 : 1).
        let mut pts: Vec<ProjPoint> = Vec::with_capacity(8);
        let mut projections: Vec<ParamP1> = Vec::with_capacity(8);
        let mut budget = DRAW_BUDGET;
        while pts.len() < 8 {
            if budget == 0 {
                continue 'attempt;
            }
            budget -= 1;
            let coords: Vec<Scalar> = (0..3).map(|_| field.sample(&mut rng)).collect();
            let Ok(pt) = ProjPoint::new(field, coords) else { continue };
            let Ok(proj) =
                ParamP1::new(&field, pt.coords()[0].clone(), pt.coords()[1].clone())
            else {
                continue;
            };
            if projections.contains(&proj) {
                continue;
            }
            pts.push(pt);
            projections.push(proj);
        }
        let eight = PointSet::new(field, 2, pts).expect("distinct projections");
        let pencil = forms_through(&eight, 3);
        if pencil.len() != 2 {
            continue; // the eight points must impose independent conditions
        }
        let zc1 = z_coefficients(&pencil[0]);
        let zc2 = z_coefficients(&pencil[1]);

        // Interpolate the degree-9 resultant from 10 specializations.
        let nodes: Vec<u64> = (0..10).collect();
        let mut values = Vec::with_capacity(nodes.len());
        for &t in &nodes {
            let at = ParamP1 { s: field.one(), t: Scalar::Fp(t) };
            let a: Vec<Scalar> = zc1.iter().map(|f| f.eval(&field, &at)).collect();
            let b: Vec<Scalar> = zc2.iter().map(|f| f.eval(&field, &at)).collect();
            values.push(as_fp(&det(&sylvester_cubic_pair(field, &a, &b))));
        }
        let rpoly = lagrange_fp(p, &nodes, &values);
        if rpoly.is_zero() {
            continue; // shared component
        }
        let mut coeffs = vec![field.zero(); 10];
        for (i, &v) in rpoly.c.iter().enumerate() {
            coeffs[i] = Scalar::Fp(v);
        }
        let mut quotient = BinaryForm::new(coeffs);
        for proj in &projections {
            match quotient.divide_linear(&field, proj) {
                Some(q) => quotient = q,
                None => continue 'attempt, // repeated-root degeneracy
            }
        }
        debug_assert_eq!(quotient.degree(), 1);
        if quotient.is_zero() {
            continue;
        }
        // root of c0*s + c1*t is (c1 : -c0)
        let ninth_proj = ParamP1::new(
            &field,
            quotient.coeffs()[1].clone(),
            field.neg(&quotient.coeffs()[0]),
        )
        .expect("nonzero linear form has a root");
        if projections.contains(&ninth_proj) {
            continue;
        }
        let g1 = specialize_in_z(p, &field, &zc1, &ninth_proj);
        let g2 = specialize_in_z(p, &field, &zc2, &ninth_proj);
        let common = g1.gcd(&g2);
        if common.degree() != 1 {
            continue; // no unique last coordinate
        }
        let z0 = (p - common.c[0] % p) % p;
        let ninth = ProjPoint::new(
            field,
            vec![ninth_proj.s.clone(), ninth_proj.t.clone(), Scalar::Fp(z0)],
        )
        .expect("projection coordinates are nonzero");
        if !pencil[0].eval(&ninth).is_zero() || !pencil[1].eval(&ninth).is_zero() {
            continue;
        }
        let mut all = eight.points().to_vec();
        all.push(ninth);
        match PointSet::new(field, 2, all) {
            Ok(ps) => return Ok(ps),
            Err(_) => continue,
        }
    }
    Err(Error::RetriesExhausted("base-point recovery for the cubic pencil"))
}

/// Coefficients of a plane cubic as a polynomial in x₂: entry j is the
/// binary form in (x₀, x₁) multiplying x₂^j.
fn z_coefficients(form: &Form) -> Vec<BinaryForm> {
    let field = *form.field();
    assert_eq!(form.ambient_dim(), 2);
    assert_eq!(form.degree(), 3);
    let mut rows: Vec<Vec<Scalar>> =
        (0..4).map(|j| vec![field.zero(); 4 - j]).collect();
    for (c, expts) in form
        .coeffs()
        .iter()
        .zip(crate::geometry::monomials(2, 3))
    {
        rows[expts[2] as usize][expts[1] as usize] = c.clone();
    }
    rows.into_iter().map(BinaryForm::new).collect()
}

/// Sylvester matrix of two cubics in one variable, coefficients ascending.
fn sylvester_cubic_pair(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Matrix {
    assert!(a.len() == 4 && b.len() == 4);
    let mut rows = Vec::with_capacity(6);
    for c in [a, b] {
        for shift in 0..3 {
            let mut row = vec![field.zero(); 6];
            for (j, v) in c.iter().enumerate() {
                row[shift + 3 - j] = v.clone();
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(field, rows).expect("uniform rows")
}

fn as_fp(s: &Scalar) -> u64 {
    match s {
        Scalar::Fp(v) => *v,
        Scalar::Rat(_) => panic!("prime-field scalar expected"),
    }
}

/// Univariate specialization in the last variable at a fixed (x₀ : x₁).
fn specialize_in_z(p: u64, field: &FieldSpec, zc: &[BinaryForm], at: &ParamP1) -> PolyFp {
    let c: Vec<u64> = zc.iter().map(|f| as_fp(&f.eval(field, at))).collect();
    PolyFp::new(p, c)
}

/// Points on the two rulings of a smooth quadric surface in random position,
/// plus the quadric through them: `count` images of random parameter pairs
/// under a moved Segre embedding (u, v) x (w, x) -> (uw, ux, vw, vx).
pub fn quadric_config(
    field: FieldSpec,
    count: usize,
    seed: Seed,
) -> Result<(PointSet, Form), Error> {
    if count > 83 {
        return Err(Error::CapacityExceeded { capacity: 83, requested: count });
    }
    let mut rng = SplitMix::new(seed);
    'attempt: for _ in 0..MAX_RETRIES {
        let g = projectivity_from(field, 3, &mut rng)?;
        let mut pairs: Vec<(ParamP1, ParamP1)> = Vec::with_capacity(count);
        let mut pts: Vec<ProjPoint> = Vec::with_capacity(count);
        let mut budget = DRAW_BUDGET;
        while pairs.len() < count {
            if budget == 0 {
                continue 'attempt;
            }
            budget -= 1;
            let u = draw_param(&field, &mut rng);
            let w = draw_param(&field, &mut rng);
            if pairs.contains(&(u.clone(), w.clone())) {
                continue;
            }
            let coords = vec![
                field.mul(&u.s, &w.s),
                field.mul(&u.s, &w.t),
                field.mul(&u.t, &w.s),
                field.mul(&u.t, &w.t),
            ];
            let base = ProjPoint::new(field, coords).expect("Segre image is a point");
            pts.push(g.apply(&base));
            pairs.push((u, w));
        }
        let Ok(points) = PointSet::new(field, 3, pts) else {
            continue;
        };
        let Some(quadric) = forms_through(&points, 2).into_iter().next() else {
            continue; // cannot happen: the moved Segre quadric holds them all
        };
        return Ok((points, quadric));
    }
    Err(Error::RetriesExhausted("quadric configuration sampling"))
}
