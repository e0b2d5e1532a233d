//! Projective geometry over an exact field: normalized points, ordered
//! distinct point sets, graded-lex monomial bases, evaluation matrices,
//! parametrized rational curves, plane restriction, and projectivities.

use crate::error::Error;
use crate::linalg::{self, Matrix};
use crate::scalar::{BinaryForm, FieldSpec, ParamP1, Scalar};

/// Point of P^n with coordinates normalized so the first nonzero entry is 1.
/// Equality of normalized coordinate vectors is equality of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    field: FieldSpec,
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(field: FieldSpec, coords: Vec<Scalar>) -> Result<Self, Error> {
        if !coords.iter().all(|c| field.owns(c)) {
            return Err(Error::MixedField);
        }
        let Some(lead) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(Error::ZeroPoint);
        };
        let inv = field.inv(lead)?;
        let coords = coords.iter().map(|c| field.mul(c, &inv)).collect();
        Ok(ProjPoint { field, coords })
    }

    pub fn from_ints(field: FieldSpec, coords: &[i64]) -> Result<Self, Error> {
        ProjPoint::new(field, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Ambient dimension n (coords has n + 1 entries).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }
}

/// Ordered, duplicate-free list of points of a common P^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    field: FieldSpec,
    n: usize,
    points: Vec<ProjPoint>,
}

impl PointSet {
    pub fn new(field: FieldSpec, n: usize, points: Vec<ProjPoint>) -> Result<Self, Error> {
        for p in &points {
            if *p.field() != field {
                return Err(Error::MixedField);
            }
            if p.dim() != n {
                return Err(Error::DimensionMismatch { expected: n + 1, got: p.dim() + 1 });
            }
        }
        for j in 1..points.len() {
            if let Some(i) = (0..j).find(|&i| points[i] == points[j]) {
                return Err(Error::DuplicatePoint { first: i, second: j });
            }
        }
        Ok(PointSet { field, n, points })
    }

    pub fn empty(field: FieldSpec, n: usize) -> Self {
        PointSet { field, n, points: Vec::new() }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &ProjPoint {
        &self.points[i]
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }

    pub fn position_of(&self, p: &ProjPoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn without_point(&self, i: usize) -> PointSet {
        assert!(i < self.points.len());
        let mut points = self.points.clone();
        points.remove(i);
        PointSet { field: self.field, n: self.n, points }
    }

    /// Subset by index list; order follows `idx`. Indices must be distinct.
    pub fn subset(&self, idx: &[usize]) -> PointSet {
        let points: Vec<ProjPoint> = idx.iter().map(|&i| self.points[i].clone()).collect();
        PointSet { field: self.field, n: self.n, points }
    }

    pub fn with_point_appended(&self, p: ProjPoint) -> Result<PointSet, Error> {
        let mut points = self.points.clone();
        points.push(p);
        PointSet::new(self.field, self.n, points)
    }

    /// Coordinate rows stacked into a matrix (|P| x (n+1)).
    pub fn coord_matrix(&self) -> Matrix {
        let rows: Vec<Vec<Scalar>> =
            self.points.iter().map(|p| p.coords().to_vec()).collect();
        Matrix::from_rows(self.field, rows).expect("uniform coordinate rows")
    }
}

/// binom(n + d, n): number of degree-d monomials in n + 1 variables.
pub fn monomial_count(n: usize, d: u32) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for k in 1..=n as u128 {
        num *= d as u128 + k;
        den *= k;
    }
    (num / den) as usize
}

/// Exponent vectors of all degree-d monomials in x0..xn, graded-lex with
/// x0 > x1 > ... > xn, descending: x0^d first, xn^d last. Every matrix and
/// coefficient vector in this crate uses this column order.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(var: usize, n: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if var == n {
            cur[var] = rem;
            out.push(cur.clone());
            cur[var] = 0;
            return;
        }
        for e in (0..=rem).rev() {
            cur[var] = e;
            rec(var + 1, n, rem - e, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::with_capacity(monomial_count(n, d));
    let mut cur = vec![0u32; n + 1];
    rec(0, n, d, &mut cur, &mut out);
    out
}

fn eval_monomial(field: &FieldSpec, coords: &[Scalar], expts: &[u32]) -> Scalar {
    let mut acc = field.one();
    for (c, &e) in coords.iter().zip(expts) {
        if e > 0 {
            acc = field.mul(&acc, &field.pow(c, e));
        }
    }
    acc
}

/// Homogeneous form of fixed degree, coefficients in `monomials` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    field: FieldSpec,
    n: usize,
    degree: u32,
    coeffs: Vec<Scalar>,
}

impl Form {
    pub fn new(field: FieldSpec, n: usize, degree: u32, coeffs: Vec<Scalar>) -> Result<Self, Error> {
        let want = monomial_count(n, degree);
        if coeffs.len() != want {
            return Err(Error::DimensionMismatch { expected: want, got: coeffs.len() });
        }
        if !coeffs.iter().all(|c| field.owns(c)) {
            return Err(Error::MixedField);
        }
        Ok(Form { field, n, degree, coeffs })
    }

    pub fn zero(field: FieldSpec, n: usize, degree: u32) -> Self {
        Form { field, n, degree, coeffs: vec![field.zero(); monomial_count(n, degree)] }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn eval(&self, p: &ProjPoint) -> Scalar {
        assert_eq!(p.dim(), self.n, "point/form ambient mismatch");
        let mut acc = self.field.zero();
        for (c, expts) in self.coeffs.iter().zip(monomials(self.n, self.degree)) {
            if !c.is_zero() {
                let m = eval_monomial(&self.field, p.coords(), &expts);
                acc = self.field.add(&acc, &self.field.mul(c, &m));
            }
        }
        acc
    }

    pub fn vanishes_on(&self, ps: &PointSet) -> bool {
        ps.points().iter().all(|p| self.eval(p).is_zero())
    }

    pub fn scale(&self, s: &Scalar) -> Form {
        let coeffs = self.coeffs.iter().map(|c| self.field.mul(c, s)).collect();
        Form { coeffs, ..self.clone() }
    }

    pub fn add(&self, other: &Form) -> Form {
        assert!(self.n == other.n && self.degree == other.degree && self.field == other.field);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Form { coeffs, ..self.clone() }
    }
}

/// |P| x binom(d+n, n) matrix of degree-d monomials evaluated at the points.
/// Its rank is the number of conditions the points impose in degree d; its
/// right kernel is the space of degree-d forms through all of them.
pub fn eval_matrix(ps: &PointSet, d: u32) -> Matrix {
    let cols = monomials(ps.ambient_dim(), d);
    let field = *ps.field();
    let rows: Vec<Vec<Scalar>> = ps
        .points()
        .iter()
        .map(|p| cols.iter().map(|e| eval_monomial(&field, p.coords(), e)).collect())
        .collect();
    if rows.is_empty() {
        Matrix::zero(field, 0, cols.len())
    } else {
        Matrix::from_rows(field, rows).expect("uniform rows")
    }
}

/// Degree-d forms vanishing on all of `ps`, as the canonical kernel basis
/// of the evaluation matrix.
pub fn forms_through(ps: &PointSet, d: u32) -> Vec<Form> {
    linalg::kernel_basis(&eval_matrix(ps, d))
        .into_iter()
        .map(|coeffs| Form { field: *ps.field(), n: ps.ambient_dim(), degree: d, coeffs })
        .collect()
}

/// Rank of the stacked coordinate matrix of the given points: 1 for a single
/// point, 2 for a pencil of collinear points, and so on.
pub fn span_rank(field: FieldSpec, pts: &[&ProjPoint]) -> usize {
    let rows: Vec<Vec<Scalar>> = pts.iter().map(|p| p.coords().to_vec()).collect();
    match Matrix::from_rows(field, rows) {
        Ok(m) => linalg::rank(&m),
        Err(_) => 0,
    }
}

/// x lies on the line through distinct points a, b.
pub fn on_line(x: &ProjPoint, a: &ProjPoint, b: &ProjPoint) -> Result<bool, Error> {
    let field = *a.field();
    if span_rank(field, &[a, b]) < 2 {
        return Err(Error::DegenerateSpan);
    }
    Ok(span_rank(field, &[a, b, x]) == 2)
}

/// Coordinates of x in the plane spanned by the independent triple (a, b, c),
/// as a point of P^2. Errors with DegenerateSpan if the triple is dependent
/// or x lies outside the plane.
pub fn plane_coords(
    x: &ProjPoint,
    a: &ProjPoint,
    b: &ProjPoint,
    c: &ProjPoint,
) -> Result<ProjPoint, Error> {
    let field = *a.field();
    let n = a.dim();
    // Columns a | b | c | x. If the triple is independent and x is in its
    // span, the kernel is a single line (l0, l1, l2, mu) with mu != 0 and
    // x = -(l0 a + l1 b + l2 c)/mu, so (l0 : l1 : l2) are x's plane coords.
    let cols = [a, b, c, x];
    let mut m = Matrix::zero(field, n + 1, 4);
    for (j, p) in cols.iter().enumerate() {
        for i in 0..=n {
            m.set(i, j, p.coords()[i].clone());
        }
    }
    let ker = linalg::kernel_basis(&m);
    if ker.len() != 1 {
        return Err(Error::DegenerateSpan);
    }
    let v = &ker[0];
    if v[3].is_zero() {
        // A relation among a, b, c alone: the spanning triple is dependent.
        return Err(Error::DegenerateSpan);
    }
    ProjPoint::new(field, v[..3].to_vec()).map_err(|_| Error::DegenerateSpan)
}

/// Maps a point set lying in the plane spanned by (a, b, c) to its P^2
/// coordinate image, preserving order. Distinctness survives because the
/// map is a linear isomorphism of the plane.
pub fn restrict_to_plane(
    ps: &PointSet,
    a: &ProjPoint,
    b: &ProjPoint,
    c: &ProjPoint,
) -> Result<PointSet, Error> {
    let mapped: Result<Vec<ProjPoint>, Error> =
        ps.points().iter().map(|x| plane_coords(x, a, b, c)).collect();
    PointSet::new(*ps.field(), 2, mapped?)
}

/// Rational curve P^1 -> P^n given by n + 1 binary forms of a common degree.
#[derive(Debug, Clone)]
pub struct RationalCurve {
    field: FieldSpec,
    n: usize,
    degree: u32,
    forms: Vec<BinaryForm>,
}

impl RationalCurve {
    pub fn new(field: FieldSpec, forms: Vec<BinaryForm>) -> Result<Self, Error> {
        if forms.len() < 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: forms.len() });
        }
        let degree = forms[0].degree() as u32;
        if forms.iter().any(|f| f.degree() as u32 != degree) {
            return Err(Error::DimensionMismatch {
                expected: degree as usize + 1,
                got: forms.iter().map(|f| f.coeffs().len()).max().unwrap_or(0),
            });
        }
        if forms.iter().all(BinaryForm::is_zero) {
            return Err(Error::ZeroForm);
        }
        Ok(RationalCurve { field, n: forms.len() - 1, degree, forms })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Degree of the parametrization (1 line, 2 conic, 3 cubic).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn forms(&self) -> &[BinaryForm] {
        &self.forms
    }

    pub fn point_at(&self, t: &ParamP1) -> Result<ProjPoint, Error> {
        let coords: Vec<Scalar> =
            self.forms.iter().map(|f| f.eval(&self.field, t)).collect();
        ProjPoint::new(self.field, coords).map_err(|e| match e {
            Error::ZeroPoint => Error::BasePoint,
            other => other,
        })
    }
}

/// Restriction of a degree-k form to a parametrized curve: substitute the
/// parametrization into each monomial. Result is a binary form of degree
/// k * deg(curve); it is zero exactly when the curve lies inside the form's
/// zero locus.
pub fn restrict_to_curve(form: &Form, curve: &RationalCurve) -> BinaryForm {
    assert_eq!(form.ambient_dim(), curve.ambient_dim(), "ambient mismatch");
    let field = *form.field();
    let out_deg = (form.degree() * curve.degree()) as usize;
    let mut acc = BinaryForm::zero(&field, out_deg);
    for (c, expts) in form.coeffs().iter().zip(monomials(form.ambient_dim(), form.degree())) {
        if c.is_zero() {
            continue;
        }
        let mut term = BinaryForm::new(vec![field.one()]);
        for (f, &e) in curve.forms().iter().zip(&expts) {
            if e > 0 {
                term = term.mul(&field, &f.pow(&field, e));
            }
        }
        debug_assert_eq!(term.degree(), out_deg);
        acc = acc.add(&field, &term.scale(&field, c));
    }
    acc
}

/// Invertible linear change of coordinates of P^n.
#[derive(Debug, Clone)]
pub struct Projectivity {
    m: Matrix,
    inv: Matrix,
}

impl Projectivity {
    pub fn new(m: Matrix) -> Result<Self, Error> {
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
        }
        let inv = linalg::inverse(&m)?;
        Ok(Projectivity { m, inv })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn inverse(&self) -> Projectivity {
        Projectivity { m: self.inv.clone(), inv: self.m.clone() }
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let coords = self.m.mul_vec(p.coords()).expect("dimension checked");
        // Invertibility keeps the image nonzero.
        ProjPoint::new(*p.field(), coords).expect("projectivity image is a point")
    }

    pub fn apply_set(&self, ps: &PointSet) -> PointSet {
        let points = ps.points().iter().map(|p| self.apply(p)).collect();
        // Injectivity keeps distinctness.
        PointSet::new(*ps.field(), ps.ambient_dim(), points).expect("injective image")
    }
}
