//! Class ideals of `L` and `A`, and the claims about them.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::connections::{root_partition, weight_partition, ConnectionPartition};
use crate::ideals::{annihilator_z, center_za, compute_j, ideal_closure, is_a_ideal, is_ideal};
use crate::linalg::{complement, format_vector, unit_vector, Subspace};
use crate::model::{Check, CheckReport, CheckStatus, HlrAlgebra};
use crate::roots::{RootDecomposition, RootFunctional, WeightDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("empty class")]
    EmptyClass,
    #[error("root decomposition is not split")]
    NotSplit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootClassIdeal {
    pub class_label: Vec<RootFunctional>,
    /// `L_{0,[g]}`.
    pub l0_part: Subspace,
    /// `L_{[g]}`, the sum of the root spaces of the class.
    pub lgamma_part: Subspace,
    pub total: Subspace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightClassIdeal {
    pub class_label: Vec<RootFunctional>,
    pub a0_part: Subspace,
    pub aalpha_part: Subspace,
    pub total: Subspace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub root_partition: ConnectionPartition,
    pub weight_partition: ConnectionPartition,
    pub root_ideals: Vec<RootClassIdeal>,
    pub weight_ideals: Vec<WeightClassIdeal>,
    /// Complement `U` in `H`; `None` when the inner sum leaves `H`.
    pub u: Option<Subspace>,
    /// Complement `V` in `A_0`; `None` when the inner sum leaves `A_0`.
    pub v: Option<Subspace>,
    pub claims: CheckReport,
}

pub fn format_class(cls: &[RootFunctional]) -> String {
    let items: Vec<String> = cls.iter().map(|f| f.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

pub(crate) fn claim(id: &str, description: &str, ok: bool, note: Option<String>) -> Check {
    let c = Check::pass(id, description);
    let c = if ok { c } else { c.with_status(CheckStatus::Fail) };
    match note {
        Some(n) => c.with_note(n),
        None => c,
    }
}

/// Every root space and weight space has dimension one.
pub fn is_maximal_length(rd: &RootDecomposition, wd: &WeightDecomposition) -> bool {
    rd.roots.values().all(|s| s.dim() == 1) && wd.weights.values().all(|s| s.dim() == 1)
}

/// `sum A_{-g} L_g + sum [L_{-g}, L_g]` over `g` in `roots`.
pub fn root_generation_sum(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, roots: &[RootFunctional]) -> Subspace {
    let mut parts = Vec::new();
    for g in roots {
        let neg = -g;
        if wd.contains(&neg) {
            parts.push(h.action_space(&wd.space(&neg), &rd.space(g)));
        }
        if rd.contains(&neg) {
            parts.push(h.bracket_space(&rd.space(&neg), &rd.space(g)));
        }
    }
    Subspace::sum_all(h.dim_l(), &parts)
}

/// `sum rho(L_{-a})(A_a)` over `a` with `-a` a root, plus `sum A_{-a} A_a`.
pub fn weight_generation_sum(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, weights: &[RootFunctional]) -> Subspace {
    let mut parts = Vec::new();
    for a in weights {
        let neg = -a;
        if rd.contains(&neg) {
            parts.push(h.anchor_space(&rd.space(&neg), &wd.space(a)));
        }
        if wd.contains(&neg) {
            parts.push(h.a.product_space(&wd.space(&neg), &wd.space(a)));
        }
    }
    Subspace::sum_all(h.dim_a(), &parts)
}

pub fn build_root_ideal(
    cls: &[RootFunctional],
    h: &HlrAlgebra,
    rd: &RootDecomposition,
    wd: &WeightDecomposition,
) -> Result<RootClassIdeal, DecompositionError> {
    if cls.is_empty() {
        return Err(DecompositionError::EmptyClass);
    }
    let l0_part = root_generation_sum(h, rd, wd, cls);
    let spaces: Vec<Subspace> = cls.iter().map(|g| rd.space(g)).collect();
    let lgamma_part = Subspace::sum_all(h.dim_l(), &spaces);
    let total = l0_part.sum(&lgamma_part);
    Ok(RootClassIdeal {
        class_label: cls.to_vec(),
        l0_part,
        lgamma_part,
        total,
    })
}

pub fn build_weight_ideal(
    cls: &[RootFunctional],
    h: &HlrAlgebra,
    rd: &RootDecomposition,
    wd: &WeightDecomposition,
) -> Result<WeightClassIdeal, DecompositionError> {
    if cls.is_empty() {
        return Err(DecompositionError::EmptyClass);
    }
    let a0_part = weight_generation_sum(h, rd, wd, cls);
    let spaces: Vec<Subspace> = cls.iter().map(|a| wd.space(a)).collect();
    let aalpha_part = Subspace::sum_all(h.dim_a(), &spaces);
    let total = a0_part.sum(&aalpha_part);
    Ok(WeightClassIdeal {
        class_label: cls.to_vec(),
        a0_part,
        aalpha_part,
        total,
    })
}

/// First class whose ideal fails `ok`, as a note.
fn first_bad<T, F: Fn(&T) -> bool>(items: &[T], label: impl Fn(&T) -> String, ok: F) -> Option<String> {
    items.iter().find(|x| !ok(x)).map(|x| format!("fails for class {}", label(x)))
}

fn pairwise_bad<T, F: Fn(&T, &T) -> bool>(items: &[T], label: impl Fn(&T) -> String, ok: F) -> Option<String> {
    for (i, x) in items.iter().enumerate() {
        for (j, y) in items.iter().enumerate() {
            if i != j && !ok(x, y) {
                return Some(format!("fails for classes {} and {}", label(x), label(y)));
            }
        }
    }
    None
}

pub fn verify_prop_3_3(ideals: &[RootClassIdeal], h: &HlrAlgebra) -> CheckReport {
    let label = |i: &RootClassIdeal| format_class(&i.class_label);
    let full_a = h.full_a();
    let full_l = h.full_l();
    let mut report = CheckReport::default();
    let n = first_bad(ideals, label, |i| i.total.contains_space(&h.bracket_space(&i.total, &i.total)));
    report.push(claim("prop3.3.1", "[I, I] in I", n.is_none(), n));
    let n = first_bad(ideals, label, |i| h.psi().matrix().image_of(&i.total) == i.total);
    report.push(claim("prop3.3.2", "psi(I) = I", n.is_none(), n));
    let n = first_bad(ideals, label, |i| i.total.contains_space(&h.action_space(&full_a, &i.total)));
    report.push(claim("prop3.3.3", "A I in I", n.is_none(), n));
    let n = first_bad(ideals, label, |i| {
        let coeffs = h.anchor_space(&i.total, &full_a);
        i.total.contains_space(&h.action_space(&coeffs, &full_l))
    });
    report.push(claim("prop3.3.4", "rho(I)(A) L in I", n.is_none(), n));
    let n = pairwise_bad(ideals, label, |x, y| h.bracket_space(&x.total, &y.total).is_zero());
    report.push(claim("prop3.3.5", "[I_g, I_d] = 0 for distinct classes", n.is_none(), n));
    let n = first_bad(ideals, label, |i| is_ideal(h, &i.total).passed() && ideal_closure(h, &i.total).space == i.total);
    report.push(claim("thm3.5.1", "I_[g] is an ideal of L", n.is_none(), n));
    report
}

pub fn verify_prop_4_3(ideals: &[WeightClassIdeal], h: &HlrAlgebra) -> CheckReport {
    let label = |i: &WeightClassIdeal| format_class(&i.class_label);
    let mut report = CheckReport::default();
    let n = first_bad(ideals, label, |i| i.total.contains_space(&h.a.product_space(&i.total, &i.total)));
    report.push(claim("prop4.3.1", "A_[a] A_[a] in A_[a]", n.is_none(), n));
    let n = pairwise_bad(ideals, label, |x, y| h.a.product_space(&x.total, &y.total).is_zero());
    report.push(claim("prop4.3.2", "A_[a] A_[b] = 0 for distinct classes", n.is_none(), n));
    let n = first_bad(ideals, label, |i| is_a_ideal(&h.a, &i.total));
    report.push(claim("thm4.4.1", "A_[a] is an ideal of A", n.is_none(), n));
    report
}

/// Complement of `inner` in `outer` when `inner` lies in `outer`.
fn checked_complement(inner: &Subspace, outer: &Subspace) -> Option<Subspace> {
    if outer.contains_space(inner) {
        complement(inner, outer).ok()
    } else {
        None
    }
}

/// `L = U + sum I_[g]`.
pub fn verify_theorem_3_6(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, ideals: &[RootClassIdeal]) -> (Option<Subspace>, Check) {
    let inner = root_generation_sum(h, rd, wd, &rd.gamma());
    let Some(u) = checked_complement(&inner, &rd.h) else {
        return (None, claim("thm3.6", "L = U + sum I_[g]", false, Some("inner sum is not contained in H".into())));
    };
    let spaces: Vec<&Subspace> = std::iter::once(&u).chain(ideals.iter().map(|i| &i.total)).collect();
    let total = Subspace::sum_all(h.dim_l(), spaces);
    let note = format!("U = {u}");
    (Some(u), claim("thm3.6", "L = U + sum I_[g]", total.is_full(), Some(note)))
}

/// `A = V + sum A_[a]`.
pub fn verify_theorem_4_5(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, ideals: &[WeightClassIdeal]) -> (Option<Subspace>, Check) {
    let inner = weight_generation_sum(h, rd, wd, &wd.lambda());
    let Some(v) = checked_complement(&inner, &wd.a0) else {
        return (None, claim("thm4.5", "A = V + sum A_[a]", false, Some("inner sum is not contained in A_0".into())));
    };
    let spaces: Vec<&Subspace> = std::iter::once(&v).chain(ideals.iter().map(|i| &i.total)).collect();
    let total = Subspace::sum_all(h.dim_a(), spaces);
    let note = format!("V = {v}");
    (Some(v), claim("thm4.5", "A = V + sum A_[a]", total.is_full(), Some(note)))
}

/// Directness of `sum` of `parts` and equality with the ambient space.
fn direct_and_full(ambient: usize, parts: &[&Subspace]) -> bool {
    let total = Subspace::sum_all(ambient, parts.iter().copied());
    total.is_full() && parts.iter().map(|p| p.dim()).sum::<usize>() == ambient
}

pub fn verify_cor_3_8(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, ideals: &[RootClassIdeal]) -> Check {
    let desc = "L is the direct sum of the I_[g]";
    let mut unmet = Vec::new();
    if !annihilator_z(h).is_zero() {
        unmet.push("Z(L) != 0");
    }
    if root_generation_sum(h, rd, wd, &rd.gamma()) != rd.h {
        unmet.push("H != sum A_{-g} L_g + sum [L_{-g}, L_g]");
    }
    if !unmet.is_empty() {
        return Check::pass("cor3.8", desc)
            .with_status(CheckStatus::Info)
            .with_note(format!("hypotheses not met: {}", unmet.join("; ")));
    }
    let parts: Vec<&Subspace> = ideals.iter().map(|i| &i.total).collect();
    claim("cor3.8", desc, direct_and_full(h.dim_l(), &parts), None)
}

pub fn verify_cor_4_6(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, ideals: &[WeightClassIdeal]) -> Check {
    let desc = "A is the direct sum of the A_[a]";
    let mut unmet = Vec::new();
    if !center_za(&h.a).is_zero() {
        unmet.push("Z(A) != 0");
    }
    if weight_generation_sum(h, rd, wd, &wd.lambda()) != wd.a0 {
        unmet.push("A_0 != sum rho(L_{-a})(A_a) + sum A_{-a} A_a");
    }
    if !unmet.is_empty() {
        return Check::pass("cor4.6", desc)
            .with_status(CheckStatus::Info)
            .with_note(format!("hypotheses not met: {}", unmet.join("; ")));
    }
    let parts: Vec<&Subspace> = ideals.iter().map(|i| &i.total).collect();
    claim("cor4.6", desc, direct_and_full(h.dim_a(), &parts), None)
}

/// Ideal of `A` generated by `s`: `s + A s`.
fn a_ideal_generated(h: &HlrAlgebra, s: &Subspace) -> Subspace {
    s.sum(&h.a.product_space(&h.full_a(), s))
}

/// Simplicity of `A` over a candidate family: ideals generated by basis
/// vectors, weight spaces and `A_0`.
pub fn a_is_simple(h: &HlrAlgebra, wd: &WeightDecomposition) -> bool {
    let n = h.dim_a();
    if n == 0 || h.a.product_space(&h.full_a(), &h.full_a()).is_zero() {
        return false;
    }
    let mut seeds: Vec<Subspace> = (0..n).map(|i| Subspace::span(n, [unit_vector(n, i)])).collect();
    seeds.push(wd.a0.clone());
    seeds.extend(wd.weights.values().cloned());
    seeds
        .iter()
        .filter(|s| !s.is_zero())
        .all(|s| a_ideal_generated(h, s).is_full())
}

/// Informational: the weight-side simplicity consequences.
pub fn verify_thm_4_4_2(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, partition: &ConnectionPartition) -> Check {
    let desc = "A simple implies one weight class and A_0 generated";
    if !a_is_simple(h, wd) {
        return Check::pass("thm4.4.2", desc)
            .with_status(CheckStatus::Info)
            .with_note("hypothesis not met: A is not simple");
    }
    let one_class = partition.classes.len() <= 1;
    let generated = weight_generation_sum(h, rd, wd, &wd.lambda()) == wd.a0;
    Check::pass("thm4.4.2", desc)
        .with_status(CheckStatus::Info)
        .with_note(format!("A is simple; one class: {one_class}; A_0 generated: {generated}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealSearch {
    /// Every `(part of H) + sum of root spaces` over a candidate lattice.
    Complete,
    /// Closures of root spaces and class ideals only.
    Incomplete,
}

impl IdealSearch {
    pub fn as_str(self) -> &'static str {
        match self {
            IdealSearch::Complete => "complete",
            IdealSearch::Incomplete => "incomplete search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport {
    pub ll_nonzero: bool,
    pub aa_nonzero: bool,
    pub al_nonzero: bool,
    pub search: IdealSearch,
    pub ideals: Vec<Subspace>,
    /// First ideal outside `{0, J, L, ker rho}`.
    pub offending: Option<Subspace>,
    pub simple: bool,
    pub claims: CheckReport,
}

/// Largest `|Gamma|` for which all subsets of roots are enumerated.
pub const MAX_SUBSET_ROOTS: usize = 12;

fn intersection_closure(mut parts: BTreeSet<Subspace>) -> BTreeSet<Subspace> {
    loop {
        let list: Vec<Subspace> = parts.iter().cloned().collect();
        let mut grew = false;
        for (i, x) in list.iter().enumerate() {
            for y in &list[i + 1..] {
                if parts.insert(x.intersection(y)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return parts;
        }
    }
}

/// Candidate ideals of `L`, and whether the search is complete.
pub fn candidate_ideals(
    h: &HlrAlgebra,
    rd: &RootDecomposition,
    class_ideals: &[RootClassIdeal],
    maximal_length: bool,
) -> (IdealSearch, Vec<Subspace>) {
    let nl = h.dim_l();
    let gamma = rd.gamma();
    let mut found: BTreeSet<Subspace> = BTreeSet::new();
    found.insert(Subspace::zero(nl));
    found.insert(h.full_l());
    if maximal_length && gamma.len() <= MAX_SUBSET_ROOTS {
        let subsets: Vec<Subspace> = (0u32..1 << gamma.len())
            .map(|mask| {
                let spaces: Vec<Subspace> = gamma
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, g)| rd.space(g))
                    .collect();
                Subspace::sum_all(nl, &spaces)
            })
            .collect();
        let mut parts: BTreeSet<Subspace> = BTreeSet::new();
        parts.insert(Subspace::zero(nl));
        parts.insert(rd.h.clone());
        for s in &subsets {
            parts.insert(ideal_closure(h, s).space.intersection(&rd.h));
        }
        for b in rd.h.basis() {
            parts.insert(ideal_closure(h, &Subspace::span(nl, [b.clone()])).space.intersection(&rd.h));
        }
        for special in [annihilator_z(h), compute_j(h).space().clone(), h.anchor_kernel()] {
            parts.insert(special.intersection(&rd.h));
        }
        for p in intersection_closure(parts) {
            for s in &subsets {
                let v = p.sum(s);
                if is_ideal(h, &v).passed() {
                    found.insert(v);
                }
            }
        }
        (IdealSearch::Complete, found.into_iter().collect())
    } else {
        for g in &gamma {
            found.insert(ideal_closure(h, &rd.space(g)).space);
        }
        for c in class_ideals {
            found.insert(ideal_closure(h, &c.total).space);
        }
        (IdealSearch::Incomplete, found.into_iter().collect())
    }
}

pub fn simplicity_check(
    h: &HlrAlgebra,
    rd: &RootDecomposition,
    wd: &WeightDecomposition,
    partition: &ConnectionPartition,
    class_ideals: &[RootClassIdeal],
) -> SimplicityReport {
    let full_l = h.full_l();
    let full_a = h.full_a();
    let ll_nonzero = !h.bracket_space(&full_l, &full_l).is_zero();
    let aa_nonzero = !h.a.product_space(&full_a, &full_a).is_zero();
    let al_nonzero = !h.action_space(&full_a, &full_l).is_zero();
    let (search, ideals) = candidate_ideals(h, rd, class_ideals, is_maximal_length(rd, wd));
    let allowed = [
        Subspace::zero(h.dim_l()),
        compute_j(h).space().clone(),
        full_l.clone(),
        h.anchor_kernel(),
    ];
    let offending = ideals.iter().find(|i| !allowed.contains(i)).cloned();
    let simple = ll_nonzero && aa_nonzero && al_nonzero && offending.is_none();

    let mut claims = CheckReport::default();
    let mut note = format!(
        "[L,L] != 0: {ll_nonzero}; AA != 0: {aa_nonzero}; AL != 0: {al_nonzero}; {} ideals ({})",
        ideals.len(),
        search.as_str()
    );
    if let Some(o) = &offending {
        note.push_str(&format!("; ideal outside {{0, J, L, ker rho}}: {o}"));
    }
    claims.push(
        Check::pass("def3.4", if simple { "L is simple" } else { "L is not simple" })
            .with_status(CheckStatus::Info)
            .with_note(note),
    );
    let desc = "L simple implies one root class and H generated";
    if simple {
        let one_class = partition.classes.len() <= 1;
        let generated = root_generation_sum(h, rd, wd, &rd.gamma()) == rd.h;
        claims.push(
            Check::pass("thm3.5.2", desc)
                .with_status(CheckStatus::Info)
                .with_note(format!("L is simple; one class: {one_class}; H generated: {generated}")),
        );
    } else {
        claims.push(
            Check::pass("thm3.5.2", desc)
                .with_status(CheckStatus::Info)
                .with_note("hypothesis not met: L is not simple"),
        );
    }
    SimplicityReport {
        ll_nonzero,
        aa_nonzero,
        al_nonzero,
        search,
        ideals,
        offending,
        simple,
        claims,
    }
}

/// Partitions, class ideals and every decomposition claim.
pub fn decompose(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition) -> Result<DecompositionReport, DecompositionError> {
    if !rd.split {
        return Err(DecompositionError::NotSplit);
    }
    let rp = root_partition(rd, wd);
    let wp = weight_partition(wd, rd);
    let root_ideals = rp
        .classes
        .iter()
        .map(|c| build_root_ideal(c, h, rd, wd))
        .collect::<Result<Vec<_>, _>>()?;
    let weight_ideals = wp
        .classes
        .iter()
        .map(|c| build_weight_ideal(c, h, rd, wd))
        .collect::<Result<Vec<_>, _>>()?;
    let mut claims = verify_prop_3_3(&root_ideals, h);
    let (u, c) = verify_theorem_3_6(h, rd, wd, &root_ideals);
    claims.push(c);
    claims.push(verify_cor_3_8(h, rd, wd, &root_ideals));
    claims.checks.extend(verify_prop_4_3(&weight_ideals, h).checks);
    claims.push(verify_thm_4_4_2(h, rd, wd, &wp));
    let (v, c) = verify_theorem_4_5(h, rd, wd, &weight_ideals);
    claims.push(c);
    claims.push(verify_cor_4_6(h, rd, wd, &weight_ideals));
    let simplicity = simplicity_check(h, rd, wd, &rp, &root_ideals);
    claims.checks.extend(simplicity.claims.checks);
    Ok(DecompositionReport {
        root_partition: rp,
        weight_partition: wp,
        root_ideals,
        weight_ideals,
        u,
        v,
        claims,
    })
}

/// Basis vectors of a subspace, one per line, for witnesses.
pub fn describe_basis(s: &Subspace) -> String {
    s.basis().iter().map(|v| format_vector(v)).collect::<Vec<_>>().join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::int;
    use crate::roots::{root_decomposition, weight_decomposition};

    fn rf(xs: &[i64]) -> RootFunctional {
        RootFunctional(xs.iter().map(|&x| int(x)).collect())
    }

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::span(n, vs.iter().map(|v| v.iter().map(|&x| int(x)).collect()))
    }

    fn run(h: &HlrAlgebra) -> (RootDecomposition, WeightDecomposition, DecompositionReport) {
        let cartan = h.declared_h.clone().unwrap();
        let rd = root_decomposition(h, &cartan).unwrap();
        let wd = weight_decomposition(h, &cartan).unwrap();
        let rep = decompose(h, &rd, &wd).unwrap();
        (rd, wd, rep)
    }

    fn status(rep: &DecompositionReport, id: &str) -> CheckStatus {
        rep.claims.get(id).unwrap_or_else(|| panic!("missing {id}")).status
    }

    #[test]
    fn fix_b_class_ideal_is_span_e() {
        let h = fixtures::fix_b();
        let (rd, wd, rep) = run(&h);
        let i = build_root_ideal(&[rf(&[1])], &h, &rd, &wd).unwrap();
        assert!(i.l0_part.is_zero());
        assert_eq!(i.total, span(2, &[&[0, 1]]));
        assert_eq!(rep.u, Some(span(2, &[&[1, 0]])));
        assert_eq!(status(&rep, "thm3.6"), CheckStatus::Pass);
        let cor = rep.claims.get("cor3.8").unwrap();
        assert_eq!(cor.status, CheckStatus::Info);
        assert!(cor.note.as_ref().unwrap().contains("H !="));
    }

    #[test]
    fn fix_e_single_class_covers_l() {
        let h = fixtures::fix_e();
        let (rd, wd, rep) = run(&h);
        assert_eq!(rep.root_ideals.len(), 1);
        let i = &rep.root_ideals[0];
        assert!(i.l0_part.contains(&unit_vector(3, 0)));
        assert!(i.total.is_full());
        assert!(rep.u.as_ref().unwrap().is_zero());
        assert!(rep.claims.passed(), "{:?}", rep.claims.first_failure());
        assert_eq!(status(&rep, "cor3.8"), CheckStatus::Pass);
        let w = build_weight_ideal(&[rf(&[1])], &h, &rd, &wd).unwrap();
        assert_eq!(w.aalpha_part, span(2, &[&[0, 1]]));
        // rho(f)(t) = 0, so the A_0 part vanishes.
        assert!(w.a0_part.is_zero());
    }

    #[test]
    fn empty_class_is_rejected() {
        let h = fixtures::fix_b();
        let (rd, wd, _) = run(&h);
        assert_eq!(build_root_ideal(&[], &h, &rd, &wd), Err(DecompositionError::EmptyClass));
        assert_eq!(build_weight_ideal(&[], &h, &rd, &wd), Err(DecompositionError::EmptyClass));
    }

    #[test]
    fn fix_a_trivial_decomposition() {
        let (_, _, rep) = run(&fixtures::fix_a());
        assert!(rep.root_ideals.is_empty());
        assert!(rep.u.as_ref().unwrap().is_full());
        assert!(rep.v.as_ref().unwrap().is_full());
        assert!(rep.claims.get("cor3.8").unwrap().note.as_ref().unwrap().contains("Z(L) != 0"));
        assert!(rep.claims.get("def3.4").unwrap().description.contains("not simple"));
    }

    #[test]
    fn two_blocks_are_orthogonal() {
        let (_, _, rep) = run(&fixtures::two_block_b());
        assert_eq!(rep.root_ideals.len(), 2);
        assert_eq!(status(&rep, "prop3.3.5"), CheckStatus::Pass);
        let (_, _, rep) = run(&fixtures::two_block_w());
        assert_eq!(rep.weight_ideals.len(), 2);
        assert_eq!(status(&rep, "prop4.3.2"), CheckStatus::Pass);
        assert!(rep.claims.passed());
    }

    #[test]
    fn every_split_fixture_satisfies_the_claims() {
        for (name, h) in fixtures::split_named() {
            let (_, _, rep) = run(&h);
            assert!(rep.claims.passed(), "{name}: {:?}", rep.claims.first_failure());
            for i in &rep.root_ideals {
                assert_eq!(ideal_closure(&h, &i.total).space, i.total, "{name}");
            }
        }
    }

    #[test]
    fn simplicity_examples() {
        let h = fixtures::fix_e();
        let (rd, wd, rep) = run(&h);
        let s = simplicity_check(&h, &rd, &wd, &rep.root_partition, &rep.root_ideals);
        assert_eq!(s.search, IdealSearch::Complete);
        assert!(s.simple);
        let c = s.claims.get("thm3.5.2").unwrap();
        assert!(c.note.as_ref().unwrap().ends_with("one class: true; H generated: true"));

        let h = fixtures::fix_b();
        let (rd, wd, rep) = run(&h);
        let s = simplicity_check(&h, &rd, &wd, &rep.root_partition, &rep.root_ideals);
        assert!(!s.simple);
        assert_eq!(s.offending, Some(span(2, &[&[0, 1]])));

        let h = fixtures::fix_a();
        let (rd, wd, rep) = run(&h);
        let s = simplicity_check(&h, &rd, &wd, &rep.root_partition, &rep.root_ideals);
        assert!(!s.ll_nonzero && !s.simple);
    }

    #[test]
    fn fix_w_is_simple_without_generated_h() {
        // Its ideals are 0, span{e} = ker rho and L, but no root is opposite another.
        let h = fixtures::fix_w();
        let (rd, wd, rep) = run(&h);
        let s = simplicity_check(&h, &rd, &wd, &rep.root_partition, &rep.root_ideals);
        assert!(s.simple);
        assert_eq!(s.ideals.len(), 3);
        let c = s.claims.get("thm3.5.2").unwrap();
        assert_eq!(c.status, CheckStatus::Info);
        assert!(c.note.as_ref().unwrap().ends_with("H generated: false"));
    }

    #[test]
    fn weight_side_of_q_is_refuted_informationally() {
        // A = Q is simple with no weights, yet A_0 = Q is not generated.
        let (_, _, rep) = run(&fixtures::fix_b());
        let c = rep.claims.get("thm4.4.2").unwrap();
        assert_eq!(c.status, CheckStatus::Info);
        assert!(c.note.as_ref().unwrap().contains("A_0 generated: false"));
    }

    #[test]
    fn non_split_is_refused() {
        let h = fixtures::fix_b();
        let cartan = span(2, &[&[0, 1]]);
        let rd = root_decomposition(&h, &cartan).unwrap();
        let wd = weight_decomposition(&h, &cartan).unwrap();
        assert_eq!(decompose(&h, &rd, &wd), Err(DecompositionError::NotSplit));
    }
}
