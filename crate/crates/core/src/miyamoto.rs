//! Miyamoto involutions and the axis closure they generate.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, Element, Subspace};
use crate::axis::{axis_check, AxisError, AxisReport, Component, EigenvaluePair};
use crate::linalg::Matrix;

pub const DEFAULT_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MiyamotoError {
    #[error(transparent)]
    Axis(#[from] AxisError),
    #[error("seed {index} is not an axis")]
    SeedNotAxis { index: usize },
    #[error("seed {index} violates the fusion rules")]
    SeedFusion { index: usize },
    #[error("closure member {index} is not a fusion-satisfying axis")]
    MemberNotAxis { index: usize },
    #[error("the closure needs at least one seed")]
    NoSeeds,
    #[error("cap must be positive")]
    ZeroCap,
}

/// `τ_{a;S'}`: negates `A_{S'}(a)` and fixes the remaining summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiyamotoMap {
    pub axis: Element,
    pub flipped: Vec<EigenvaluePair>,
    pub matrix: Matrix,
}

impl MiyamotoMap {
    pub fn apply(&self, y: &Element) -> Element {
        Element::new(self.matrix.mul_vec(y.coords()))
    }

    pub fn is_involution(&self) -> bool {
        self.matrix.mul(&self.matrix).is_identity()
    }
}

impl fmt::Display for MiyamotoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flips: Vec<String> = self.flipped.iter().map(ToString::to_string).collect();
        write!(f, "tau[{}; {{{}}}]", self.axis, flips.join(", "))
    }
}

pub fn miyamoto_map(report: &AxisReport, flipped: &[EigenvaluePair]) -> Result<MiyamotoMap, MiyamotoError> {
    let mut flipped = flipped.to_vec();
    flipped.sort();
    flipped.dedup();
    let matrix = report.sign_matrix(&flipped)?;
    Ok(MiyamotoMap {
        axis: report.element.clone(),
        flipped,
        matrix,
    })
}

/// The involutions used to generate the closure: one per pair of `S°`,
/// plus the full flip when `S°` has more than one pair.
pub fn generating_maps(report: &AxisReport) -> Result<Vec<MiyamotoMap>, MiyamotoError> {
    let mut out = Vec::new();
    for p in &report.s_circ {
        out.push(miyamoto_map(report, std::slice::from_ref(p))?);
    }
    if report.s_circ.len() > 1 {
        out.push(miyamoto_map(report, &report.s_circ)?);
    }
    Ok(out)
}

/// Whether `m` is invertible and multiplicative on all basis pairs.
pub fn is_automorphism(alg: &Algebra, m: &Matrix) -> bool {
    let n = alg.dim();
    if m.rows() != n || m.cols() != n || m.inverse().is_none() {
        return false;
    }
    let images: Vec<Element> = (0..n).map(|i| Element::new(m.column(i))).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = Element::new(m.mul_vec(alg.product_of_basis(i, j).coords()));
            if lhs != alg.mul(&images[i], &images[j]) {
                return false;
            }
        }
    }
    true
}

/// Compares `τ_{ρ(a);S'}` with `ρ τ_{a;S'} ρ⁻¹`, both as matrices acting on
/// column vectors. Returns false when `ρ(a)` has a different support.
pub fn conjugation_check(
    alg: &Algebra,
    report: &AxisReport,
    rho: &Matrix,
    flipped: &[EigenvaluePair],
) -> Result<bool, MiyamotoError> {
    let tau = miyamoto_map(report, flipped)?;
    let image = Element::new(rho.mul_vec(report.element.coords()));
    let image_report = axis_check(alg, &image);
    if !image_report.is_axis || image_report.s_circ != report.s_circ {
        return Ok(false);
    }
    let moved = miyamoto_map(&image_report, flipped)?;
    let rho_inv = match rho.inverse() {
        Some(r) => r,
        None => return Ok(false),
    };
    Ok(moved.matrix == rho.mul(&tau.matrix).mul(&rho_inv))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClosureMode {
    /// Only the seeds' involutions act. They generate the same group as the
    /// involutions of every member, since those are conjugates.
    #[default]
    SeedInvolutions,
    /// Every member's involutions act, added as members appear.
    AllMembers,
}

/// The orbit of the seeds under the group generated by Miyamoto involutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisOrbit {
    pub seeds: Vec<Element>,
    /// Seeds first, then breadth-first layers, each layer in canonical order.
    pub members: Vec<Element>,
    pub generators: Vec<MiyamotoMap>,
    /// `(parent member, generator)` for each non-seed member.
    pub provenance: Vec<Option<(usize, usize)>>,
    pub capped: bool,
    pub cap: usize,
}

impl AxisOrbit {
    pub fn is_complete(&self) -> bool {
        !self.capped
    }

    pub fn span(&self, alg: &Algebra) -> Subspace {
        Subspace::span(alg.field(), alg.dim(), &self.members)
    }
}

pub fn axis_closure(alg: &Algebra, seeds: &[Element], cap: usize) -> Result<AxisOrbit, MiyamotoError> {
    axis_closure_with(alg, seeds, cap, ClosureMode::SeedInvolutions)
}

pub fn axis_closure_with(
    alg: &Algebra,
    seeds: &[Element],
    cap: usize,
    mode: ClosureMode,
) -> Result<AxisOrbit, MiyamotoError> {
    if seeds.is_empty() {
        return Err(MiyamotoError::NoSeeds);
    }
    if cap == 0 {
        return Err(MiyamotoError::ZeroCap);
    }
    let mut members: Vec<Element> = Vec::new();
    let mut index: HashMap<Element, usize> = HashMap::new();
    let mut provenance = Vec::new();
    let mut generators: Vec<MiyamotoMap> = Vec::new();
    let mut capped = false;

    for (i, s) in seeds.iter().enumerate() {
        let rep = axis_check(alg, s);
        if !rep.is_axis {
            return Err(MiyamotoError::SeedNotAxis { index: i });
        }
        if !rep.fusion_ok {
            return Err(MiyamotoError::SeedFusion { index: i });
        }
        if index.contains_key(s) {
            continue;
        }
        if members.len() == cap {
            capped = true;
            break;
        }
        index.insert(s.clone(), members.len());
        members.push(s.clone());
        provenance.push(None);
        push_new_maps(&mut generators, generating_maps(&rep)?);
    }

    match mode {
        ClosureMode::SeedInvolutions => {
            let mut frontier: Vec<usize> = (0..members.len()).collect();
            while !frontier.is_empty() && !capped {
                let mut layer: Vec<(Element, usize, usize)> = Vec::new();
                for &m in &frontier {
                    for (g, map) in generators.iter().enumerate() {
                        let img = map.apply(&members[m]);
                        if !index.contains_key(&img) {
                            layer.push((img, m, g));
                        }
                    }
                }
                layer.sort();
                layer.dedup_by(|x, y| x.0 == y.0);
                frontier.clear();
                for (img, parent, g) in layer {
                    if members.len() == cap {
                        capped = true;
                        break;
                    }
                    index.insert(img.clone(), members.len());
                    frontier.push(members.len());
                    members.push(img);
                    provenance.push(Some((parent, g)));
                }
            }
        }
        ClosureMode::AllMembers => {
            // Work queue of (member, generator) pairs still to apply.
            let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
            for m in 0..members.len() {
                for g in 0..generators.len() {
                    queue.push_back((m, g));
                }
            }
            while let Some((m, g)) = queue.pop_front() {
                let img = generators[g].apply(&members[m]);
                if index.contains_key(&img) {
                    continue;
                }
                if members.len() == cap {
                    capped = true;
                    break;
                }
                let rep = axis_check(alg, &img);
                if !rep.is_axis || !rep.fusion_ok {
                    return Err(MiyamotoError::MemberNotAxis { index: members.len() });
                }
                let new_idx = members.len();
                index.insert(img.clone(), new_idx);
                members.push(img);
                provenance.push(Some((m, g)));
                let before = generators.len();
                push_new_maps(&mut generators, generating_maps(&rep)?);
                for g2 in 0..generators.len() {
                    queue.push_back((new_idx, g2));
                }
                for g2 in before..generators.len() {
                    for m2 in 0..new_idx {
                        queue.push_back((m2, g2));
                    }
                }
            }
        }
    }

    Ok(AxisOrbit {
        seeds: seeds.to_vec(),
        members,
        generators,
        provenance,
        capped,
        cap,
    })
}

fn push_new_maps(into: &mut Vec<MiyamotoMap>, maps: Vec<MiyamotoMap>) {
    for m in maps {
        if m.matrix.is_identity() || into.iter().any(|g| g.matrix == m.matrix) {
            continue;
        }
        into.push(m);
    }
}

/// Outcome of a check whose failure may only reflect a truncated orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail,
    /// Failed on a capped orbit; the full orbit might still pass.
    Inconclusive,
}

impl CheckOutcome {
    fn judge(ok: bool, complete: bool) -> CheckOutcome {
        match (ok, complete) {
            (true, _) => CheckOutcome::Pass,
            (false, true) => CheckOutcome::Fail,
            (false, false) => CheckOutcome::Inconclusive,
        }
    }

    pub fn passed(&self) -> bool {
        *self == CheckOutcome::Pass
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckOutcome::Pass => "pass",
            CheckOutcome::Fail => "fail",
            CheckOutcome::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningReport {
    pub orbit_complete: bool,
    /// The orbit spans the algebra.
    pub span: CheckOutcome,
    /// The least subspace containing the seeds and stable under their
    /// left and right multiplications is the whole algebra.
    pub module_closure: CheckOutcome,
    /// For each component `C` of the chosen axis, `C` is spanned by the
    /// `C`-components of the orbit members.
    pub eigenspace_sums: Vec<(Component, CheckOutcome)>,
    /// For each pair of `S°`, `A_{μ,ν}²` is spanned by products of
    /// `(μ,ν)`-components of orbit members.
    pub eigenspace_squares: Vec<(EigenvaluePair, CheckOutcome)>,
}

impl SpanningReport {
    pub fn all_pass(&self) -> bool {
        self.span.passed()
            && self.module_closure.passed()
            && self.eigenspace_sums.iter().all(|(_, o)| o.passed())
            && self.eigenspace_squares.iter().all(|(_, o)| o.passed())
    }
}

/// Smallest subspace containing `seeds` and closed under `L_x`, `R_x` for each seed.
pub fn module_closure(alg: &Algebra, seeds: &[Element]) -> Subspace {
    let ops: Vec<Matrix> = seeds
        .iter()
        .flat_map(|x| [alg.left_mult_matrix(x), alg.right_mult_matrix(x)])
        .collect();
    let mut w = Subspace::span(alg.field(), alg.dim(), seeds);
    loop {
        let images: Vec<Element> = w
            .basis()
            .iter()
            .flat_map(|v| ops.iter().map(move |m| Element::new(m.mul_vec(v.coords()))))
            .collect();
        let next = w.sum(&Subspace::span(alg.field(), alg.dim(), images));
        if next.dim() == w.dim() {
            return w;
        }
        w = next;
    }
}

/// The spanning statements for the orbit, evaluated against `axis` for the
/// eigenspace checks. Passes on a capped orbit are conclusive, failures are not.
pub fn spanning_checks(alg: &Algebra, orbit: &AxisOrbit, axis: &AxisReport) -> Result<SpanningReport, MiyamotoError> {
    if !axis.is_axis {
        return Err(AxisError::NotAnAxis(axis.reason.clone().expect("non-axis has a reason")).into());
    }
    let complete = orbit.is_complete();
    let span = CheckOutcome::judge(orbit.span(alg).is_full(), complete);
    let module = if module_closure(alg, &orbit.seeds).is_full() {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail
    };

    let decs: Vec<_> = orbit
        .members
        .iter()
        .map(|m| axis.decompose(m))
        .collect::<Result<_, _>>()?;

    let mut sums = Vec::new();
    for comp in axis.components() {
        let target = axis.space(&comp);
        let got = Subspace::span(alg.field(), alg.dim(), decs.iter().filter_map(|d| d.component(&comp)));
        let outcome = if !got.is_subspace_of(&target) {
            CheckOutcome::Fail
        } else {
            CheckOutcome::judge(got == target, complete)
        };
        sums.push((comp, outcome));
    }

    let mut squares = Vec::new();
    for p in &axis.s_circ {
        let comp = Component::Pair(p.clone());
        let space = axis.space(&comp);
        let target = alg.product_space(&space, &space);
        let parts = Subspace::span(alg.field(), alg.dim(), decs.iter().filter_map(|d| d.component(&comp)));
        let got = alg.product_space(&parts, &parts);
        let outcome = if !got.is_subspace_of(&target) {
            CheckOutcome::Fail
        } else {
            CheckOutcome::judge(got == target, complete)
        };
        squares.push((p.clone(), outcome));
    }

    Ok(SpanningReport {
        orbit_complete: complete,
        span,
        module_closure: module,
        eigenspace_sums: sums,
        eigenspace_squares: squares,
    })
}

/// Checks `a·b = φ_a(b) a + Σ_{(μ,ν) ∈ S°(a)} (μ/2)(b − τ_{a;{(μ,ν)}}(b))` for a
/// weakly primitive axis `a`.
pub fn ab_identity_holds(alg: &Algebra, a: &AxisReport, b: &Element) -> Result<bool, MiyamotoError> {
    let phi = match a.phi(b) {
        Some(p) => p,
        None => return Err(AxisError::NotWeaklyPrimitive.into()),
    };
    let two = alg.field().from_i64(2);
    let mut rhs = a.element.scale(&phi);
    for p in &a.s_circ {
        let tau = miyamoto_map(a, std::slice::from_ref(p))?;
        let diff = b - &tau.apply(b);
        rhs = rhs.add_scaled(&(&p.mu / &two), &diff);
    }
    Ok(alg.mul(&a.element, b) == rhs)
}
