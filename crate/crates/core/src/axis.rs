//! Two-sided axes: joint eigenspaces, fusion rules, Jordan labels, primitivity.

use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, Element, Subspace};
use crate::linalg::{minimal_polynomial, Matrix, Polynomial, Scalar};

/// A joint eigenvalue pair `(μ, ν)`: left eigenvalue μ, right eigenvalue ν.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EigenvaluePair {
    pub mu: Scalar,
    pub nu: Scalar,
}

impl EigenvaluePair {
    pub fn new(mu: Scalar, nu: Scalar) -> EigenvaluePair {
        EigenvaluePair { mu, nu }
    }

    pub fn is_commutative(&self) -> bool {
        self.mu == self.nu
    }

    pub fn transposed(&self) -> EigenvaluePair {
        EigenvaluePair::new(self.nu.clone(), self.mu.clone())
    }

    fn is_one_one(&self) -> bool {
        self.mu.is_one() && self.nu.is_one()
    }

    fn is_zero_zero(&self) -> bool {
        self.mu.is_zero() && self.nu.is_zero()
    }
}

impl fmt::Display for EigenvaluePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.mu, self.nu)
    }
}

/// The recorded joint eigenspace for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenPair {
    pub pair: EigenvaluePair,
    pub space: Subspace,
}

/// One summand of the decomposition `A = A_1 ⊕ A_0 ⊕ Σ A_{μ,ν}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    One,
    Zero,
    Pair(EigenvaluePair),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::One => write!(f, "A_1"),
            Component::Zero => write!(f, "A_0"),
            Component::Pair(p) => write!(f, "A_{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotAxisReason {
    ZeroElement,
    NotIdempotent,
    /// The minimal polynomial of `L_a` has a repeated or out-of-field root.
    LeftNotDiagonalizable(Polynomial),
    RightNotDiagonalizable(Polynomial),
    OperatorsDoNotCommute,
}

impl fmt::Display for NotAxisReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotAxisReason::ZeroElement => write!(f, "zero element"),
            NotAxisReason::NotIdempotent => write!(f, "not idempotent"),
            NotAxisReason::LeftNotDiagonalizable(p) => {
                write!(
                    f,
                    "left multiplication not diagonalizable in the field (minimal polynomial {p})"
                )
            }
            NotAxisReason::RightNotDiagonalizable(p) => {
                write!(
                    f,
                    "right multiplication not diagonalizable in the field (minimal polynomial {p})"
                )
            }
            NotAxisReason::OperatorsDoNotCommute => {
                write!(f, "left and right multiplications do not commute")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FusionRule {
    /// `(A_1 + A_0)² ⊆ A_1 + A_0`.
    A,
    /// `A_{μ,ν}` is a two-sided `A_1 + A_0` module.
    B,
    /// `A_{μ,ν} A_{μ',ν'} ⊆ δ_{μμ'} δ_{νν'} (A_1 + A_0)`.
    C,
}

impl fmt::Display for FusionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FusionRule::A => "a",
            FusionRule::B => "b",
            FusionRule::C => "c",
        };
        write!(f, "({s})")
    }
}

/// A product of two eigenspace basis vectors that leaves the allowed subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionViolation {
    pub rule: FusionRule,
    pub left: (Component, usize),
    pub right: (Component, usize),
    /// The part of the product lying outside the allowed components.
    pub offending: Element,
}

impl fmt::Display for FusionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rule {}: {}[{}] * {}[{}] has offending component {}",
            self.rule, self.left.0, self.left.1, self.right.0, self.right.1, self.offending
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JordanLabel {
    Eta(Scalar),
    EmptySet,
    ZeroOne,
    Unclassified,
}

impl fmt::Display for JordanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JordanLabel::Eta(e) => write!(f, "{e}"),
            JordanLabel::EmptySet => write!(f, "empty"),
            JordanLabel::ZeroOne => write!(f, "{{0,1}}"),
            JordanLabel::Unclassified => write!(f, "none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxisError {
    #[error("element is not an axis: {0}")]
    NotAnAxis(NotAxisReason),
    #[error("axis violates the fusion rules")]
    FusionFailed,
    #[error("axis is not weakly primitive")]
    NotWeaklyPrimitive,
    #[error("pair {0} is not in the support of the axis")]
    PairOutsideSupport(EigenvaluePair),
    #[error("witness {0} is not idempotent")]
    NonIdempotentWitness(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Eigenbasis {
    /// Columns are the concatenated canonical bases of the components.
    change: Matrix,
    coordinates: Matrix,
    blocks: Vec<(Component, usize, usize)>,
}

/// Everything known about a candidate axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisReport {
    pub element: Element,
    pub is_axis: bool,
    pub reason: Option<NotAxisReason>,
    pub left_minimal_polynomial: Option<Polynomial>,
    pub right_minimal_polynomial: Option<Polynomial>,
    /// `S_L`, the eigenvalues of left multiplication.
    pub left_eigenvalues: Vec<Scalar>,
    pub right_eigenvalues: Vec<Scalar>,
    /// Every pair with a nonzero joint eigenspace, including `(1,1)` and `(0,0)`.
    pub spaces: Vec<EigenPair>,
    pub s_circ: Vec<EigenvaluePair>,
    pub s_dagger: Vec<EigenvaluePair>,
    pub s_comm: Vec<EigenvaluePair>,
    pub weakly_primitive: bool,
    pub left_primitive: bool,
    pub right_primitive: bool,
    pub fusion_ok: bool,
    pub fusion_violations: Vec<FusionViolation>,
    pub jordan_condition: bool,
    eigenbasis: Option<Eigenbasis>,
}

/// `y = y1 + y0 + Σ parts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub y1: Element,
    pub y0: Element,
    pub parts: Vec<(EigenvaluePair, Element)>,
    /// Coefficient of the axis in `y1`, present for weakly primitive axes.
    pub phi: Option<Scalar>,
}

impl Decomposition {
    pub fn component(&self, c: &Component) -> Option<&Element> {
        match c {
            Component::One => Some(&self.y1),
            Component::Zero => Some(&self.y0),
            Component::Pair(p) => self.parts.iter().find(|(q, _)| q == p).map(|(_, e)| e),
        }
    }

    pub fn total(&self) -> Element {
        let mut t = &self.y1 + &self.y0;
        for (_, e) in &self.parts {
            t = &t + e;
        }
        t
    }
}

impl Eigenbasis {
    /// Selected eigenbasis coordinates of `y`, touching only its nonzero entries.
    fn coordinates_at(&self, y: &Element, rows: &[usize]) -> Vec<(usize, Scalar)> {
        let support: Vec<(usize, &Scalar)> = y.coords().iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        rows.iter()
            .map(|&k| {
                let row = self.coordinates.row(k);
                let mut acc = self.change.field().zero();
                for (j, x) in &support {
                    if !row[*j].is_zero() {
                        acc += &(&row[*j] * *x);
                    }
                }
                (k, acc)
            })
            .collect()
    }
}

impl AxisReport {
    fn not_axis(a: &Element, reason: NotAxisReason) -> AxisReport {
        AxisReport {
            element: a.clone(),
            is_axis: false,
            reason: Some(reason),
            left_minimal_polynomial: None,
            right_minimal_polynomial: None,
            left_eigenvalues: Vec::new(),
            right_eigenvalues: Vec::new(),
            spaces: Vec::new(),
            s_circ: Vec::new(),
            s_dagger: Vec::new(),
            s_comm: Vec::new(),
            weakly_primitive: false,
            left_primitive: false,
            right_primitive: false,
            fusion_ok: false,
            fusion_violations: Vec::new(),
            jordan_condition: false,
            eigenbasis: None,
        }
    }

    fn require_axis(&self) -> Result<&Eigenbasis, AxisError> {
        match (&self.eigenbasis, &self.reason) {
            (Some(e), _) => Ok(e),
            (None, Some(r)) => Err(AxisError::NotAnAxis(r.clone())),
            (None, None) => unreachable!("non-axis reports carry a reason"),
        }
    }

    /// `S = S_L × S_R \ {(0,0),(1,1)}`, whether or not the joint space is nonzero.
    pub fn s_set(&self) -> Vec<EigenvaluePair> {
        let mut out = Vec::new();
        for mu in &self.left_eigenvalues {
            for nu in &self.right_eigenvalues {
                let p = EigenvaluePair::new(mu.clone(), nu.clone());
                if !p.is_one_one() && !p.is_zero_zero() {
                    out.push(p);
                }
            }
        }
        out.sort();
        out
    }

    pub fn space(&self, c: &Component) -> Subspace {
        let target = match c {
            Component::One => EigenvaluePair::new(self.one(), self.one()),
            Component::Zero => EigenvaluePair::new(self.zero(), self.zero()),
            Component::Pair(p) => p.clone(),
        };
        self.spaces
            .iter()
            .find(|e| e.pair == target)
            .map(|e| e.space.clone())
            .unwrap_or_else(|| Subspace::zero(self.field(), self.element.dim()))
    }

    fn field(&self) -> crate::linalg::FieldSpec {
        self.element.coords()[0].field()
    }

    fn one(&self) -> Scalar {
        self.field().one()
    }

    fn zero(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_space(&self) -> Subspace {
        self.space(&Component::One)
    }

    pub fn zero_space(&self) -> Subspace {
        self.space(&Component::Zero)
    }

    pub fn pair_space(&self, p: &EigenvaluePair) -> Subspace {
        self.space(&Component::Pair(p.clone()))
    }

    pub fn is_primitive(&self) -> bool {
        self.left_primitive && self.right_primitive
    }

    /// `A_1`, `A_0` and then each pair of `S°` in order.
    pub fn components(&self) -> Vec<Component> {
        let mut c = vec![Component::One, Component::Zero];
        c.extend(self.s_circ.iter().cloned().map(Component::Pair));
        c
    }

    /// `A_1 ⊕ A_0 ⊕ Σ_{S'} A_{μ,ν}`.
    pub fn sum_space(&self, pairs: &[EigenvaluePair]) -> Subspace {
        let mut w = self.one_space().sum(&self.zero_space());
        for p in pairs {
            w = w.sum(&self.pair_space(p));
        }
        w
    }

    /// `Z_a = Σ_{S†} A_{μ,ν}`.
    pub fn z_space(&self) -> Subspace {
        let mut w = Subspace::zero(self.field(), self.element.dim());
        for p in &self.s_dagger {
            w = w.sum(&self.pair_space(p));
        }
        w
    }

    pub fn decompose(&self, y: &Element) -> Result<Decomposition, AxisError> {
        let eb = self.require_axis()?;
        let c = eb.coordinates.mul_vec(y.coords());
        let n = y.dim();
        let field = self.field();
        let mut y1 = Element::zero(field, n);
        let mut y0 = Element::zero(field, n);
        let mut parts = Vec::new();
        for (comp, start, len) in &eb.blocks {
            let mut part = Element::zero(field, n);
            for (k, x) in c.iter().enumerate().skip(*start).take(*len) {
                if !x.is_zero() {
                    part = part.add_scaled(x, &Element::new(eb.change.column(k)));
                }
            }
            match comp {
                Component::One => y1 = part,
                Component::Zero => y0 = part,
                Component::Pair(p) => parts.push((p.clone(), part)),
            }
        }
        let phi = self
            .phi_functional()
            .map(|f| crate::linalg::matrix::dot(&f, y.coords(), field));
        Ok(Decomposition { y1, y0, parts, phi })
    }

    /// The row vector `f` with `φ_a(y) = f·y`, for weakly primitive axes.
    pub fn phi_functional(&self) -> Option<Vec<Scalar>> {
        let eb = self.eigenbasis.as_ref()?;
        if !self.weakly_primitive {
            return None;
        }
        let (_, start, _) = eb.blocks.iter().find(|(c, _, _)| *c == Component::One)?;
        // The canonical basis vector of A_1 is a / a[k] with k the leading index.
        let k = self.element.leading_index()?;
        let lead = &self.element.coords()[k];
        Some(eb.coordinates.row(*start).iter().map(|x| x / lead).collect())
    }

    pub fn phi(&self, y: &Element) -> Option<Scalar> {
        self.phi_functional()
            .map(|f| crate::linalg::matrix::dot(&f, y.coords(), self.field()))
    }

    /// The linear map acting as `-1` on the listed pairs and `+1` elsewhere.
    pub(crate) fn sign_matrix(&self, flipped: &[EigenvaluePair]) -> Result<Matrix, AxisError> {
        let eb = self.require_axis()?;
        for p in flipped {
            if !self.s_circ.contains(p) {
                return Err(AxisError::PairOutsideSupport(p.clone()));
            }
        }
        let n = self.element.dim();
        let field = self.field();
        let mut d = Matrix::identity(field, n);
        for (comp, start, len) in &eb.blocks {
            if let Component::Pair(p) = comp {
                if flipped.contains(p) {
                    for k in *start..start + len {
                        d.set(k, k, -field.one());
                    }
                }
            }
        }
        Ok(eb.change.mul(&d).mul(&eb.coordinates))
    }
}

/// Full analysis of `a`. Non-axes produce a report with `is_axis = false` and a reason.
pub fn axis_check(alg: &Algebra, a: &Element) -> AxisReport {
    alg.check(a).expect("axis candidate from another algebra");
    if a.is_zero() {
        return AxisReport::not_axis(a, NotAxisReason::ZeroElement);
    }
    if !alg.is_idempotent(a) {
        return AxisReport::not_axis(a, NotAxisReason::NotIdempotent);
    }
    let field = alg.field();
    let n = alg.dim();
    let l = alg.left_mult_matrix(a);
    let r = alg.right_mult_matrix(a);
    let ml = minimal_polynomial(&l);
    let mr = minimal_polynomial(&r);
    let with_polys = |reason| {
        let mut rep = AxisReport::not_axis(a, reason);
        rep.left_minimal_polynomial = Some(ml.clone());
        rep.right_minimal_polynomial = Some(mr.clone());
        rep
    };
    if !ml.splits_squarefree() {
        return with_polys(NotAxisReason::LeftNotDiagonalizable(ml.clone()));
    }
    if !mr.splits_squarefree() {
        return with_polys(NotAxisReason::RightNotDiagonalizable(mr.clone()));
    }
    if l.mul(&r) != r.mul(&l) {
        return with_polys(NotAxisReason::OperatorsDoNotCommute);
    }
    let s_l = ml.roots_in_field();
    let s_r = mr.roots_in_field();
    let left_spaces: Vec<Subspace> = s_l
        .iter()
        .map(|mu| Subspace::column_span(&l.shift(mu).kernel()))
        .collect();
    let right_spaces: Vec<Subspace> = s_r
        .iter()
        .map(|nu| Subspace::column_span(&r.shift(nu).kernel()))
        .collect();

    let mut spaces = Vec::new();
    for (mu, ls) in s_l.iter().zip(&left_spaces) {
        for (nu, rs) in s_r.iter().zip(&right_spaces) {
            let joint = ls.intersection(rs);
            if !joint.is_zero() {
                spaces.push(EigenPair {
                    pair: EigenvaluePair::new(mu.clone(), nu.clone()),
                    space: joint,
                });
            }
        }
    }
    spaces.sort_by(|x, y| x.pair.cmp(&y.pair));
    debug_assert_eq!(spaces.iter().map(|e| e.space.dim()).sum::<usize>(), n);

    let s_circ: Vec<EigenvaluePair> = spaces
        .iter()
        .map(|e| e.pair.clone())
        .filter(|p| !p.is_one_one() && !p.is_zero_zero())
        .collect();
    let s_dagger = s_circ.iter().filter(|p| !p.is_commutative()).cloned().collect();
    let s_comm = s_circ.iter().filter(|p| p.is_commutative()).cloned().collect();

    let one = field.one();
    let left_one_dim = s_l
        .iter()
        .zip(&left_spaces)
        .find(|(m, _)| **m == one)
        .map_or(0, |(_, s)| s.dim());
    let right_one_dim = s_r
        .iter()
        .zip(&right_spaces)
        .find(|(m, _)| **m == one)
        .map_or(0, |(_, s)| s.dim());

    let mut report = AxisReport {
        element: a.clone(),
        is_axis: true,
        reason: None,
        left_minimal_polynomial: Some(ml),
        right_minimal_polynomial: Some(mr),
        left_eigenvalues: s_l,
        right_eigenvalues: s_r,
        spaces,
        s_circ,
        s_dagger,
        s_comm,
        weakly_primitive: false,
        left_primitive: left_one_dim == 1,
        right_primitive: right_one_dim == 1,
        fusion_ok: false,
        fusion_violations: Vec::new(),
        jordan_condition: false,
        eigenbasis: None,
    };
    report.weakly_primitive = report.one_space().dim() == 1;

    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for comp in report.components() {
        let s = report.space(&comp);
        blocks.push((comp, cols.len(), s.dim()));
        cols.extend(s.basis().iter().map(|v| v.coords().to_vec()));
    }
    let refs: Vec<&[Scalar]> = cols.iter().map(Vec::as_slice).collect();
    let change = Matrix::from_columns(field, n, &refs);
    let coordinates = change.inverse().expect("joint eigenspaces form a direct sum");
    report.eigenbasis = Some(Eigenbasis {
        change,
        coordinates,
        blocks,
    });

    report.fusion_violations = fusion_violations(alg, &report);
    report.fusion_ok = report.fusion_violations.is_empty();
    report.jordan_condition = jordan_condition(alg, &report);
    report
}

fn fusion_violations(alg: &Algebra, report: &AxisReport) -> Vec<FusionViolation> {
    let eb = report.eigenbasis.as_ref().expect("report is an axis");
    let field = report.field();
    let n = eb.change.rows();
    let columns = eb.change.columns();
    let vectors: Vec<Element> = columns.iter().map(|c| Element::new(c.clone())).collect();
    let is_base = |c: &Component| matches!(c, Component::One | Component::Zero);
    let mut out = Vec::new();
    for (cl, ls, ll) in &eb.blocks {
        for (cr, rs, rl) in &eb.blocks {
            let (rule, allowed): (FusionRule, Vec<&Component>) = match (cl, cr) {
                (l, r) if is_base(l) && is_base(r) => (FusionRule::A, vec![&Component::One, &Component::Zero]),
                (l, Component::Pair(_)) if is_base(l) => (FusionRule::B, vec![cr]),
                (Component::Pair(_), r) if is_base(r) => (FusionRule::B, vec![cl]),
                (Component::Pair(p), Component::Pair(q)) if p == q => {
                    (FusionRule::C, vec![&Component::One, &Component::Zero])
                }
                _ => (FusionRule::C, Vec::new()),
            };
            let forbidden: Vec<usize> = eb
                .blocks
                .iter()
                .filter(|(c, _, _)| !allowed.contains(&c))
                .flat_map(|(_, s, l)| *s..s + l)
                .collect();
            if forbidden.is_empty() {
                continue;
            }
            for i in 0..*ll {
                for j in 0..*rl {
                    let prod = alg.mul(&vectors[ls + i], &vectors[rs + j]);
                    let coords = eb.coordinates_at(&prod, &forbidden);
                    if coords.iter().all(|(_, c)| c.is_zero()) {
                        continue;
                    }
                    let mut offending = vec![field.zero(); n];
                    for (k, c) in coords.iter().filter(|(_, c)| !c.is_zero()) {
                        for (o, x) in offending.iter_mut().zip(&columns[*k]) {
                            *o += &(c * x);
                        }
                    }
                    out.push(FusionViolation {
                        rule,
                        left: (cl.clone(), i),
                        right: (cr.clone(), j),
                        offending: Element::new(offending),
                    });
                }
            }
        }
    }
    out
}

/// Whether `A_0(a)² ⊆ A_0(a)`. False for non-axes.
pub fn jordan_condition(alg: &Algebra, report: &AxisReport) -> bool {
    let Some(eb) = report.eigenbasis.as_ref() else {
        return false;
    };
    let Some((_, start, len)) = eb.blocks.iter().find(|(c, _, _)| *c == Component::Zero) else {
        return true;
    };
    let outside: Vec<usize> = (0..eb.change.rows())
        .filter(|k| k < start || *k >= start + len)
        .collect();
    let zero: Vec<Element> = (*start..start + len)
        .map(|k| Element::new(eb.change.column(k)))
        .collect();
    zero.iter().all(|u| {
        zero.iter().all(|v| {
            eb.coordinates_at(&alg.mul(u, v), &outside)
                .iter()
                .all(|(_, c)| c.is_zero())
        })
    })
}

/// Recomputes the fusion verdict for an existing report.
pub fn fusion_check(alg: &Algebra, report: &AxisReport) -> (bool, Vec<FusionViolation>) {
    if !report.is_axis {
        return (false, Vec::new());
    }
    let v = fusion_violations(alg, report);
    (v.is_empty(), v)
}

/// The Jordan-type label. The `{0,1}`-style cases need to know whether the axis
/// together with `partner` generates the whole algebra; without a partner only
/// the other cases are decided.
pub fn jordan_label(alg: &Algebra, report: &AxisReport, partner: Option<&Element>) -> JordanLabel {
    if !report.is_axis || !report.fusion_ok {
        return JordanLabel::Unclassified;
    }
    let field = alg.field();
    if let [p] = report.s_comm.as_slice() {
        if report.jordan_condition {
            return JordanLabel::Eta(p.mu.clone());
        }
    }
    let generates = partner.is_some_and(|b| alg.subalgebra_closure(&[report.element.clone(), b.clone()]).is_full());
    let d1 = report.one_space().dim();
    let d0 = report.zero_space().dim();
    if generates && report.s_comm.is_empty() && report.jordan_condition {
        if d0 == 2 && d1 == 1 {
            return JordanLabel::Eta(field.zero());
        }
        if d1 == 2 && d0 == 1 {
            return JordanLabel::Eta(field.one());
        }
    }
    if report.s_comm.is_empty() && report.weakly_primitive {
        return JordanLabel::EmptySet;
    }
    if generates && d0 == 2 && d1 == 2 {
        return JordanLabel::ZeroOne;
    }
    JordanLabel::Unclassified
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialReport {
    pub relative_special: bool,
    pub failing_witness: Option<usize>,
    /// `dim(A_0(a) ∩ ⟨⟨a, b⟩⟩)` per witness.
    pub dimensions: Vec<usize>,
}

/// Specialness relative to the supplied idempotent witnesses only.
pub fn special_check(alg: &Algebra, report: &AxisReport, witnesses: &[Element]) -> Result<SpecialReport, AxisError> {
    report.require_axis()?;
    if !report.fusion_ok {
        return Err(AxisError::FusionFailed);
    }
    if !report.weakly_primitive {
        return Err(AxisError::NotWeaklyPrimitive);
    }
    let z = report.zero_space();
    let mut dimensions = Vec::with_capacity(witnesses.len());
    let mut failing = None;
    for (i, b) in witnesses.iter().enumerate() {
        if !alg.is_idempotent(b) {
            return Err(AxisError::NonIdempotentWitness(i));
        }
        let sub = alg.subalgebra_closure(&[report.element.clone(), b.clone()]);
        let d = z.intersection(&sub).dim();
        if d > 1 && failing.is_none() {
            failing = Some(i);
        }
        dimensions.push(d);
    }
    Ok(SpecialReport {
        relative_special: failing.is_none(),
        failing_witness: failing,
        dimensions,
    })
}

/// Whether `A_1 ⊕ A_0 ⊕ Σ_{S'} A_{μ,ν}` is closed under multiplication.
pub fn subalgebra_sum_check(alg: &Algebra, report: &AxisReport, s_prime: &[EigenvaluePair]) -> Result<bool, AxisError> {
    report.require_axis()?;
    if !report.fusion_ok {
        return Err(AxisError::FusionFailed);
    }
    if let Some(p) = s_prime.iter().find(|p| !report.s_circ.contains(p)) {
        return Err(AxisError::PairOutsideSupport(p.clone()));
    }
    Ok(alg.is_subalgebra(&report.sum_space(s_prime)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rational;

    /// `a` idempotent, `e` with `ae = ea = e/2` and `e·e = e/2`, so `e²` has a
    /// nonzero half-component and rule (c) fails.
    fn bad_fusion() -> Algebra {
        let h = Q.ratio(1, 2);
        let mut b = AlgebraBuilder::new(Q, ["a", "e", "f"]).unwrap();
        b.product("a", "a", &[("a", Q.one())]).unwrap();
        b.symmetric("a", "e", &[("e", h.clone())]).unwrap();
        b.symmetric("a", "f", &[]).unwrap();
        b.product("e", "e", &[("e", h)]).unwrap();
        b.fill_zero();
        b.build().unwrap()
    }

    #[test]
    fn rule_c_violation_is_reported() {
        let alg = bad_fusion();
        let a = alg.named("a").unwrap();
        let rep = axis_check(&alg, &a);
        assert!(rep.is_axis);
        assert!(!rep.fusion_ok);
        let v = &rep.fusion_violations[0];
        assert_eq!(v.rule, FusionRule::C);
        // Confirm with an independent decomposition of e·e.
        let e = alg.named("e").unwrap();
        let dec = rep.decompose(&alg.mul(&e, &e)).unwrap();
        let half = EigenvaluePair::new(Q.ratio(1, 2), Q.ratio(1, 2));
        assert!(!dec.component(&Component::Pair(half)).unwrap().is_zero());
    }

    #[test]
    fn non_axes_carry_reasons() {
        let alg = bad_fusion();
        assert_eq!(axis_check(&alg, &alg.zero()).reason, Some(NotAxisReason::ZeroElement));
        let e = alg.named("e").unwrap();
        assert_eq!(axis_check(&alg, &e).reason, Some(NotAxisReason::NotIdempotent));
    }

    #[test]
    fn nilpotent_action_is_not_diagonalizable() {
        // a·n = n but n·a = 0 and a·m = n: L_a has a Jordan block.
        let mut b = AlgebraBuilder::new(Q, ["a", "m", "n"]).unwrap();
        b.product("a", "a", &[("a", Q.one())]).unwrap();
        b.product("a", "m", &[("n", Q.one())]).unwrap();
        b.fill_zero();
        let alg = b.build().unwrap();
        let rep = axis_check(&alg, &alg.named("a").unwrap());
        assert!(matches!(rep.reason, Some(NotAxisReason::LeftNotDiagonalizable(_))));
    }

    #[test]
    fn field_as_algebra_is_primitive() {
        let mut b = AlgebraBuilder::new(Q, ["a"]).unwrap();
        b.product("a", "a", &[("a", Q.one())]).unwrap();
        let alg = b.build().unwrap();
        let a = alg.named("a").unwrap();
        let rep = axis_check(&alg, &a);
        assert!(rep.is_axis && rep.is_primitive() && rep.weakly_primitive && rep.fusion_ok);
        assert!(rep.jordan_condition);
        assert_eq!(jordan_label(&alg, &rep, None), JordanLabel::EmptySet);
        let dec = rep.decompose(&a).unwrap();
        assert_eq!(dec.y1, a);
        assert_eq!(dec.phi, Some(Q.one()));
        let sp = special_check(&alg, &rep, std::slice::from_ref(&a)).unwrap();
        assert!(sp.relative_special);
    }
}
