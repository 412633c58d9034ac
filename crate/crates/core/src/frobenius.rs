//! The Frobenius form `(a, y) = φ_a(y)` on an algebra generated by axes,
//! its verification, its radical and the `Z_a` checks.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{Algebra, Element, Subspace};
use crate::axis::{axis_check, AxisError, AxisReport, Component, EigenvaluePair};
use crate::linalg::matrix::dot;
use crate::linalg::{Matrix, Scalar};
use crate::miyamoto::{axis_closure, is_automorphism, AxisOrbit, MiyamotoError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error("axis {index} is not an axis")]
    NotAxis { index: usize },
    #[error("axis {index} violates the fusion rules")]
    FusionFailed { index: usize },
    #[error("axis {index} is not weakly primitive")]
    NotWeaklyPrimitive { index: usize },
    #[error("axes {first} and {second} are not homogeneous: their supports differ even after transposing")]
    NonHomogeneous { first: usize, second: usize },
    #[error("the closure spans only {rank} of {dim} dimensions{}", if *.capped { " (closure was capped)" } else { "" })]
    ClosureDoesNotSpan { rank: usize, dim: usize, capped: bool },
    #[error("closure generator {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("phi is not symmetric on the axis basis: phi_{i}({j}) = {forward} but phi_{j}({i}) = {backward}")]
    PhiAsymmetry {
        i: usize,
        j: usize,
        forward: Scalar,
        backward: Scalar,
    },
    #[error("closure member {member} has a projection functional that disagrees with the form")]
    PhiMismatch { member: usize },
    #[error(transparent)]
    Closure(#[from] MiyamotoError),
    #[error(transparent)]
    Axis(#[from] AxisError),
}

/// A bilinear form determined by a basis of closure axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusForm {
    pub basis_axes: Vec<Element>,
    /// Positions of `basis_axes` within `orbit.members`.
    pub basis_indices: Vec<usize>,
    /// Entry `(i, j)` is `φ_{b_i}(b_j)`.
    pub gram_on_basis: Matrix,
    /// The same form in the algebra's own basis.
    pub gram_ambient: Matrix,
    pub radical: Subspace,
    /// False when the form was built from a capped closure that already spanned.
    pub closure_complete: bool,
    pub orbit: AxisOrbit,
    functionals: Vec<Vec<Scalar>>,
}

impl FrobeniusForm {
    pub fn pairing(&self, x: &Element, y: &Element) -> Scalar {
        let gy = self.gram_ambient.mul_vec(y.coords());
        dot(x.coords(), &gy, self.gram_ambient.field())
    }

    /// `φ_m` as a row vector, for the `m`-th orbit member.
    pub fn functional(&self, member: usize) -> &[Scalar] {
        &self.functionals[member]
    }

    /// A copy with `δ` added to the `(i, j)` and `(j, i)` entries of the
    /// axis-basis Gram matrix. Used to confirm that verification notices.
    pub fn perturbed(&self, i: usize, j: usize, delta: &Scalar) -> FrobeniusForm {
        let mut g = self.gram_on_basis.clone();
        g.set(i, j, g.get(i, j) + delta);
        if i != j {
            g.set(j, i, g.get(j, i) + delta);
        }
        let amb = ambient_gram(&self.basis_axes, &g);
        let mut out = self.clone();
        out.radical = Subspace::column_span(&amb.kernel());
        out.gram_on_basis = g;
        out.gram_ambient = amb;
        out
    }
}

fn basis_matrix(field: crate::linalg::FieldSpec, basis: &[Element]) -> Matrix {
    let cols: Vec<&[Scalar]> = basis.iter().map(Element::coords).collect();
    Matrix::from_columns(field, basis[0].dim(), &cols)
}

/// `P^{-T} G_B P^{-1}` with `P` the matrix whose columns are the basis axes.
fn ambient_gram(basis: &[Element], g: &Matrix) -> Matrix {
    let p = basis_matrix(g.field(), basis);
    let pinv = p.inverse().expect("basis axes are independent");
    pinv.transpose().mul(g).mul(&pinv)
}

/// `S°(b) = S°(c)` or `S°(b)` is the transpose of `S°(c)`.
pub fn homogeneous_pair(b: &AxisReport, c: &AxisReport) -> bool {
    let sb: BTreeSet<EigenvaluePair> = b.s_circ.iter().cloned().collect();
    let sc: BTreeSet<EigenvaluePair> = c.s_circ.iter().cloned().collect();
    let sct: BTreeSet<EigenvaluePair> = c.s_circ.iter().map(EigenvaluePair::transposed).collect();
    sb == sc || sb == sct
}

fn seed_reports(alg: &Algebra, seeds: &[Element]) -> Result<Vec<AxisReport>, FrobeniusError> {
    let mut reports = Vec::with_capacity(seeds.len());
    for (index, s) in seeds.iter().enumerate() {
        let r = axis_check(alg, s);
        if !r.is_axis {
            return Err(FrobeniusError::NotAxis { index });
        }
        if !r.fusion_ok {
            return Err(FrobeniusError::FusionFailed { index });
        }
        if !r.weakly_primitive {
            return Err(FrobeniusError::NotWeaklyPrimitive { index });
        }
        reports.push(r);
    }
    for i in 0..reports.len() {
        for j in i + 1..reports.len() {
            if !homogeneous_pair(&reports[i], &reports[j]) {
                return Err(FrobeniusError::NonHomogeneous { first: i, second: j });
            }
        }
    }
    Ok(reports)
}

/// Greedy choice of independent members, visiting `order`.
fn greedy_basis(alg: &Algebra, members: &[Element], order: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut span = Subspace::zero(alg.field(), alg.dim());
    for i in order {
        if span.is_full() {
            break;
        }
        if !span.contains(&members[i]) {
            span = span.sum(&Subspace::span(alg.field(), alg.dim(), [&members[i]]));
            chosen.push(i);
        }
    }
    chosen
}

fn gram_from(functionals: &[Vec<Scalar>], members: &[Element], idx: &[usize]) -> Result<Matrix, FrobeniusError> {
    let field = members[0].coords()[0].field();
    let k = idx.len();
    let mut g = Matrix::zeros(field, k, k);
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            g.set(r, c, dot(&functionals[i], members[j].coords(), field));
        }
    }
    for r in 0..k {
        for c in r + 1..k {
            if g.get(r, c) != g.get(c, r) {
                return Err(FrobeniusError::PhiAsymmetry {
                    i: idx[r],
                    j: idx[c],
                    forward: g.get(r, c).clone(),
                    backward: g.get(c, r).clone(),
                });
            }
        }
    }
    Ok(g)
}

/// Builds the form from the closure of `seeds`.
///
/// A capped closure is accepted as long as it already spans the algebra; the
/// result then has `closure_complete = false`.
pub fn build_form(alg: &Algebra, seeds: &[Element], cap: usize) -> Result<FrobeniusForm, FrobeniusError> {
    let reports = seed_reports(alg, seeds)?;
    let orbit = axis_closure(alg, seeds, cap)?;
    let span = orbit.span(alg);
    if !span.is_full() {
        return Err(FrobeniusError::ClosureDoesNotSpan {
            rank: span.dim(),
            dim: alg.dim(),
            capped: orbit.capped,
        });
    }
    for (g, map) in orbit.generators.iter().enumerate() {
        if !is_automorphism(alg, &map.matrix) {
            return Err(FrobeniusError::NotAutomorphism(g));
        }
    }

    // φ_{τ(m)}(y) = φ_m(τ y) for an involutive automorphism τ, so the
    // functional of each member is transported from its parent.
    let mut functionals: Vec<Vec<Scalar>> = Vec::with_capacity(orbit.members.len());
    for (i, prov) in orbit.provenance.iter().enumerate() {
        let f = match prov {
            None => {
                let seed_pos = seeds.iter().position(|s| *s == orbit.members[i]).expect("seed member");
                reports[seed_pos].phi_functional().expect("weakly primitive")
            }
            Some((parent, g)) => orbit.generators[*g].matrix.transpose().mul_vec(&functionals[*parent]),
        };
        functionals.push(f);
    }

    let idx = greedy_basis(alg, &orbit.members, 0..orbit.members.len());
    let g = gram_from(&functionals, &orbit.members, &idx)?;
    let basis_axes: Vec<Element> = idx.iter().map(|&i| orbit.members[i].clone()).collect();
    let amb = ambient_gram(&basis_axes, &g);
    for (m, f) in functionals.iter().enumerate() {
        if amb.mul_vec(orbit.members[m].coords()) != *f {
            return Err(FrobeniusError::PhiMismatch { member: m });
        }
    }
    Ok(FrobeniusForm {
        basis_axes,
        basis_indices: idx,
        gram_on_basis: g,
        radical: Subspace::column_span(&amb.kernel()),
        gram_ambient: amb,
        closure_complete: orbit.is_complete(),
        orbit,
        functionals,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityFailure {
    pub axis: Element,
    pub left: Component,
    pub right: Component,
}

/// Findings of [`verify_form`]; every list empty and `symmetric` means success.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormVerification {
    /// Basis triples `(i, j, k)` with `(e_i e_j, e_k) ≠ (e_i, e_j e_k)`.
    pub associativity_failures: Vec<(usize, usize, usize)>,
    /// Basis triples with `(e_i e_j, e_k) ≠ (e_j e_i, e_k)`.
    pub commutation_failures: Vec<(usize, usize, usize)>,
    pub symmetric: bool,
    /// Closure generators `ψ` with `(ψu, ψv) ≠ (u, v)`.
    pub invariance_failures: Vec<usize>,
    pub orthogonality_failures: Vec<OrthogonalityFailure>,
    /// Closure members `m` with `(m, m) ≠ 1`.
    pub unit_norm_failures: Vec<usize>,
    /// Closure members `m` where `(m, ·)` differs from `φ_m`.
    pub phi_failures: Vec<usize>,
    pub triples_checked: usize,
}

impl FormVerification {
    pub fn passed(&self) -> bool {
        self.symmetric
            && self.associativity_failures.is_empty()
            && self.commutation_failures.is_empty()
            && self.invariance_failures.is_empty()
            && self.orthogonality_failures.is_empty()
            && self.unit_norm_failures.is_empty()
            && self.phi_failures.is_empty()
    }
}

/// Exhaustive verification on basis triples, closure generators and the
/// eigenspaces of the seeds and basis axes.
pub fn verify_form(alg: &Algebra, form: &FrobeniusForm) -> FormVerification {
    let n = alg.dim();
    let field = alg.field();
    let g = &form.gram_ambient;
    let gt = g.transpose();
    let mut out = FormVerification {
        symmetric: g.is_symmetric(),
        triples_checked: n * n * n,
        ..Default::default()
    };

    // left[i][j] = G^T (e_i e_j) gives (e_i e_j, e_k) at k; right[j][k] = G (e_j e_k) gives (e_i, e_j e_k) at i.
    let mut left = Vec::with_capacity(n * n);
    let mut right = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let p = alg.product_of_basis(i, j).coords();
            left.push(gt.mul_vec(p));
            right.push(g.mul_vec(p));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let xy_z = &left[i * n + j][k];
                if *xy_z != right[j * n + k][i] {
                    out.associativity_failures.push((i, j, k));
                }
                if *xy_z != left[j * n + i][k] {
                    out.commutation_failures.push((i, j, k));
                }
            }
        }
    }

    for (idx, map) in form.orbit.generators.iter().enumerate() {
        let m = &map.matrix;
        if m.transpose().mul(g).mul(m) != *g {
            out.invariance_failures.push(idx);
        }
    }

    for (i, m) in form.orbit.members.iter().enumerate() {
        let gm = g.mul_vec(m.coords());
        if !dot(m.coords(), &gm, field).is_one() {
            out.unit_norm_failures.push(i);
        }
        if gt.mul_vec(m.coords()) != form.functionals[i] {
            out.phi_failures.push(i);
        }
    }

    let mut checked: Vec<&Element> = Vec::new();
    for a in form.orbit.seeds.iter().chain(&form.basis_axes) {
        if checked.contains(&a) {
            continue;
        }
        checked.push(a);
        let rep = axis_check(alg, a);
        let comps = rep.components();
        for (x, cx) in comps.iter().enumerate() {
            for cy in &comps[x + 1..] {
                let sx = rep.space(cx);
                let sy = rep.space(cy);
                let orthogonal = sx
                    .basis()
                    .iter()
                    .all(|u| sy.basis().iter().all(|v| form.pairing(u, v).is_zero()));
                if !orthogonal {
                    out.orthogonality_failures.push(OrthogonalityFailure {
                        axis: a.clone(),
                        left: cx.clone(),
                        right: cy.clone(),
                    });
                }
            }
        }
    }
    out
}

/// The vanishing statement for one pair: if `A_{μ,ν} A_{ν,μ} = 0` then the
/// form vanishes between `A_{μ,ν}` and `A_{ν,μ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransposePairing {
    pub pair: EigenvaluePair,
    pub product_vanishes: bool,
    pub form_vanishes: bool,
}

impl TransposePairing {
    pub fn holds(&self) -> bool {
        !self.product_vanishes || self.form_vanishes
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZReport {
    pub axis: Element,
    /// `Z_a`, the sum of the eigenspaces for pairs with `μ ≠ ν`.
    pub z: Subspace,
    pub z_in_radical: bool,
    pub z_squared_zero: bool,
    /// Every element of `Z_a²` is killed by right multiplication with `a`.
    pub z_squared_times_axis_zero: bool,
    pub z_is_ideal: bool,
    pub transpose_pairings: Vec<TransposePairing>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalReport {
    pub radical: Subspace,
    pub radical_is_ideal: bool,
    pub annihilator: Subspace,
    pub annihilator_in_radical: bool,
    pub z_reports: Vec<ZReport>,
}

impl RadicalReport {
    /// Containment statements that must hold for any Frobenius form.
    pub fn containments_hold(&self) -> bool {
        self.annihilator_in_radical
            && self.radical_is_ideal
            && self
                .z_reports
                .iter()
                .all(|z| z.z_in_radical && z.transpose_pairings.iter().all(TransposePairing::holds))
    }
}

pub fn radical_report(alg: &Algebra, form: &FrobeniusForm, axes: &[Element]) -> Result<RadicalReport, FrobeniusError> {
    let radical = form.radical.clone();
    let annihilator = alg.annihilator();
    let mut z_reports = Vec::new();
    for (index, a) in axes.iter().enumerate() {
        let rep = axis_check(alg, a);
        if !rep.is_axis {
            return Err(FrobeniusError::NotAxis { index });
        }
        if !rep.fusion_ok {
            return Err(FrobeniusError::FusionFailed { index });
        }
        let z = rep.z_space();
        let z2 = alg.product_space(&z, &z);
        let z2a_zero = z2.basis().iter().all(|w| alg.mul(w, a).is_zero());

        let zero = alg.field().zero();
        let mut candidates: Vec<EigenvaluePair> = rep.s_circ.clone();
        candidates.push(EigenvaluePair::new(zero.clone(), zero));
        let mut pairings = Vec::new();
        for p in &candidates {
            let t = p.transposed();
            if !candidates.contains(&t) || (p.mu.is_zero() && p.nu.is_zero()) {
                continue;
            }
            let u = rep.space(&to_component(p));
            let v = rep.space(&to_component(&t));
            let product_vanishes = alg.product_space(&u, &v).is_zero();
            let form_vanishes = u
                .basis()
                .iter()
                .all(|x| v.basis().iter().all(|y| form.pairing(x, y).is_zero()));
            pairings.push(TransposePairing {
                pair: p.clone(),
                product_vanishes,
                form_vanishes,
            });
        }
        z_reports.push(ZReport {
            axis: a.clone(),
            z_in_radical: z.is_subspace_of(&radical),
            z_squared_zero: z2.is_zero(),
            z_squared_times_axis_zero: z2a_zero,
            z_is_ideal: alg.is_ideal(&z),
            z,
            transpose_pairings: pairings,
        });
    }
    Ok(RadicalReport {
        radical_is_ideal: alg.is_ideal(&radical),
        annihilator_in_radical: annihilator.is_subspace_of(&radical),
        annihilator,
        radical,
        z_reports,
    })
}

fn to_component(p: &EigenvaluePair) -> Component {
    if p.mu.is_zero() && p.nu.is_zero() {
        Component::Zero
    } else {
        Component::Pair(p.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniqueness {
    /// Another axis basis gives the same ambient Gram matrix.
    Identical {
        alternative: Vec<usize>,
    },
    Differs {
        alternative: Vec<usize>,
    },
    /// The closure has no second independent spanning subset.
    NoAlternative,
}

/// Rebuilds the form from a different basis of closure axes and compares.
pub fn uniqueness_check(alg: &Algebra, form: &FrobeniusForm) -> Result<Uniqueness, FrobeniusError> {
    let members = &form.orbit.members;
    let original: BTreeSet<usize> = form.basis_indices.iter().copied().collect();
    let mut alternative = greedy_basis(alg, members, (0..members.len()).rev());
    if alternative.iter().copied().collect::<BTreeSet<_>>() == original {
        alternative.clear();
        for &skip in &form.basis_indices {
            let cand = greedy_basis(alg, members, (0..members.len()).filter(|&i| i != skip));
            if cand.len() == alg.dim() {
                alternative = cand;
                break;
            }
        }
    }
    if alternative.len() != alg.dim() {
        return Ok(Uniqueness::NoAlternative);
    }
    let g = gram_from(&form.functionals, members, &alternative)?;
    let basis: Vec<Element> = alternative.iter().map(|&i| members[i].clone()).collect();
    if ambient_gram(&basis, &g) == form.gram_ambient {
        Ok(Uniqueness::Identical { alternative })
    } else {
        Ok(Uniqueness::Differs { alternative })
    }
}

/// The statement that `A_C² ⊆ A_0(a)` whenever `A_C² ⊆ ff·a + A_0(a)` and `(a,a) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareIntoZero {
    pub component: Component,
    pub applicable: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A0sReport {
    pub norm: Scalar,
    /// `(a,a) ≠ 0`, so `a` must satisfy the Jordan condition.
    pub jordan_required: bool,
    pub jordan_condition: bool,
    pub squares: Vec<SquareIntoZero>,
}

impl A0sReport {
    pub fn holds(&self) -> bool {
        (!self.jordan_required || self.jordan_condition) && self.squares.iter().all(|s| s.holds)
    }
}

pub fn a0s_check(alg: &Algebra, form: &FrobeniusForm, report: &AxisReport) -> Result<A0sReport, FrobeniusError> {
    if !report.is_axis {
        return Err(FrobeniusError::NotAxis { index: 0 });
    }
    if !report.fusion_ok {
        return Err(FrobeniusError::FusionFailed { index: 0 });
    }
    if !report.weakly_primitive {
        return Err(FrobeniusError::NotWeaklyPrimitive { index: 0 });
    }
    let a = &report.element;
    let norm = form.pairing(a, a);
    let nonzero = !norm.is_zero();
    let a0 = report.zero_space();
    let a0_plus_a = a0.sum(&Subspace::span(alg.field(), alg.dim(), [a]));
    let mut comps = vec![Component::Zero];
    comps.extend(report.s_dagger.iter().cloned().map(Component::Pair));
    let squares = comps
        .into_iter()
        .map(|c| {
            let s = report.space(&c);
            let sq = alg.product_space(&s, &s);
            let applicable = nonzero && sq.is_subspace_of(&a0_plus_a);
            SquareIntoZero {
                holds: !applicable || sq.is_subspace_of(&a0),
                applicable,
                component: c,
            }
        })
        .collect();
    Ok(A0sReport {
        jordan_required: nonzero,
        jordan_condition: report.jordan_condition,
        norm,
        squares,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;
    use crate::linalg::FieldSpec;
    use crate::miyamoto::DEFAULT_CAP;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn one_dimensional_form() {
        let mut b = AlgebraBuilder::new(Q, ["a"]).unwrap();
        b.product("a", "a", &[("a", Q.one())]).unwrap();
        let alg = b.build().unwrap();
        let a = alg.named("a").unwrap();
        let form = build_form(&alg, std::slice::from_ref(&a), DEFAULT_CAP).unwrap();
        assert!(form.pairing(&a, &a).is_one());
        assert!(form.radical.is_zero());
        assert!(verify_form(&alg, &form).passed());
        assert_eq!(uniqueness_check(&alg, &form).unwrap(), Uniqueness::NoAlternative);
        let rep = axis_check(&alg, &a);
        assert!(a0s_check(&alg, &form, &rep).unwrap().holds());
    }

    #[test]
    fn rejects_non_spanning_closure() {
        // a and a second orthogonal idempotent e: the closure of {a} misses e.
        let mut b = AlgebraBuilder::new(Q, ["a", "e"]).unwrap();
        b.product("a", "a", &[("a", Q.one())]).unwrap();
        b.product("e", "e", &[("e", Q.one())]).unwrap();
        b.fill_zero();
        let alg = b.build().unwrap();
        let err = build_form(&alg, &[alg.named("a").unwrap()], 16).unwrap_err();
        assert_eq!(
            err,
            FrobeniusError::ClosureDoesNotSpan {
                rank: 1,
                dim: 2,
                capped: false
            }
        );
    }
}
