//! The `J`-split of the roots, multiplicativity, tightness and the
//! component theorems built on them.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::connections::{restricted_root_partition, weight_partition, ConnectionPartition};
use crate::decomposition::{
    build_root_ideal, build_weight_ideal, candidate_ideals, claim, format_class, is_maximal_length,
    root_generation_sum, IdealSearch,
};
use crate::ideals::{annihilator_z, center_za, compute_j, is_ideal, two_sided_annihilator, JIdeal};
use crate::linalg::Subspace;
use crate::model::{Check, CheckReport, CheckStatus, HlrAlgebra};
use crate::roots::{compose_psi_power, RootDecomposition, RootFunctional, WeightDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("the ideal is not contained in J")]
    NotInJ,
}

/// A property that may or may not hold; failure is informational.
fn property(id: &str, description: &str, holds: bool, note: Option<String>) -> Check {
    let c = Check::pass(id, description);
    let c = if holds { c } else { c.with_status(CheckStatus::Info) };
    match note {
        Some(n) => c.with_note(n),
        None => c,
    }
}

fn unmet(id: &str, description: &str, reasons: &[String]) -> Check {
    Check::pass(id, description)
        .with_status(CheckStatus::Info)
        .with_note(format!("hypotheses not met: {}", reasons.join("; ")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JSplit {
    pub gamma_j: Vec<RootFunctional>,
    pub gamma_not_j: Vec<RootFunctional>,
    pub j: JIdeal,
}

impl JSplit {
    pub fn j_space(&self) -> &Subspace {
        self.j.space()
    }
}

pub fn j_split(h: &HlrAlgebra, rd: &RootDecomposition) -> JSplit {
    let j = compute_j(h);
    let (gamma_j, gamma_not_j) = rd
        .gamma()
        .into_iter()
        .partition(|g| !j.space().intersection(&rd.space(g)).is_zero());
    JSplit { gamma_j, gamma_not_j, j }
}

/// Each ideal equals `(I n H) + sum (I n L_g)`.
pub fn lemma_5_1(h: &HlrAlgebra, rd: &RootDecomposition, ideals: &[Subspace]) -> Check {
    let bad = ideals.iter().find(|i| {
        let mut parts = vec![i.intersection(&rd.h)];
        parts.extend(rd.roots.values().map(|s| i.intersection(s)));
        Subspace::sum_all(h.dim_l(), &parts) != **i
    });
    claim(
        "lem5.1",
        "ideals are sums of their H part and root parts",
        bad.is_none(),
        bad.map(|i| format!("not a weight module: {i}")),
    )
}

/// With `Z(L) = 0`, an ideal inside `H` is zero.
pub fn lemma_5_2(h: &HlrAlgebra, rd: &RootDecomposition, ideals: &[Subspace]) -> Check {
    let desc = "with Z(L) = 0 an ideal inside H is zero";
    if !annihilator_z(h).is_zero() {
        return unmet("lem5.2", desc, &["Z(L) != 0".to_string()]);
    }
    let bad = ideals.iter().find(|i| rd.h.contains_space(i) && !i.is_zero());
    claim("lem5.2", desc, bad.is_none(), bad.map(|i| format!("nonzero ideal inside H: {i}")))
}

fn symmetric(set: &[RootFunctional]) -> bool {
    set.iter().all(|f| set.contains(&-f))
}

/// One report per clause of root-multiplicativity.
pub fn root_multiplicativity(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, js: &JSplit) -> CheckReport {
    let psi_sum = |a: &RootFunctional, b: &RootFunctional| compose_psi_power(&(a + b), -1, rd);
    let bracket_nonzero = |a: &RootFunctional, b: &RootFunctional| !h.bracket_space(&rd.space(a), &rd.space(b)).is_zero();
    let gamma = rd.gamma();
    let lambda = wd.lambda();
    let mut report = CheckReport::default();

    let mut push = |id: &str, desc: &str, applicable: usize, violation: Option<String>| {
        let note = match &violation {
            Some(v) => format!("{applicable} applicable; first violation {v}"),
            None => format!("{applicable} applicable"),
        };
        report.push(property(id, desc, violation.is_none(), Some(note)));
    };

    let (mut n, mut bad) = (0, None);
    for g in &js.gamma_not_j {
        for d in &js.gamma_not_j {
            if rd.contains(&psi_sum(g, d)) {
                n += 1;
                if bad.is_none() && !bracket_nonzero(g, d) {
                    bad = Some(format!("g = {g}, d = {d}"));
                }
            }
        }
    }
    push("def5.3.1", "[L_g, L_d] != 0 for notJ roots with (g + d) psi^-1 a root", n, bad);

    let (mut n, mut bad) = (0, None);
    for g in &js.gamma_j {
        for d in &js.gamma_not_j {
            if js.gamma_j.contains(&psi_sum(g, d)) {
                n += 1;
                if bad.is_none() && !bracket_nonzero(g, d) {
                    bad = Some(format!("g = {g}, d = {d}"));
                }
            }
        }
    }
    push("def5.3.2", "[L_g, L_d] != 0 for g in J roots, d in notJ roots, sum in J roots", n, bad);

    let (mut n, mut bad) = (0, None);
    for a in &lambda {
        for g in &gamma {
            if rd.contains(&(a + g)) {
                n += 1;
                if bad.is_none() && h.action_space(&wd.space(a), &rd.space(g)).is_zero() {
                    bad = Some(format!("a = {a}, g = {g}"));
                }
            }
        }
    }
    push("def5.3.3", "A_a L_g != 0 when a + g is a root", n, bad);

    let (mut n, mut bad) = (0, None);
    for a in &lambda {
        for b in &lambda {
            if wd.contains(&(a + b)) {
                n += 1;
                if bad.is_none() && h.a.product_space(&wd.space(a), &wd.space(b)).is_zero() {
                    bad = Some(format!("a = {a}, b = {b}"));
                }
            }
        }
    }
    push("def5.3.4", "A_a A_b != 0 when a + b is a weight", n, bad);
    report
}

/// `H + sum of the notJ root spaces`.
fn h_plus_not_j(h: &HlrAlgebra, rd: &RootDecomposition, js: &JSplit) -> Subspace {
    let mut parts = vec![rd.h.clone()];
    parts.extend(js.gamma_not_j.iter().map(|g| rd.space(g)));
    Subspace::sum_all(h.dim_l(), &parts)
}

pub fn lie_annihilator(h: &HlrAlgebra, rd: &RootDecomposition, js: &JSplit) -> Subspace {
    two_sided_annihilator(h, &h_plus_not_j(h, rd, js), true)
}

/// `A_0` generation with roots restricted to the notJ roots.
fn weight_generation_not_j(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, js: &JSplit) -> Subspace {
    let mut parts = Vec::new();
    for a in wd.lambda() {
        let neg = -&a;
        if js.gamma_not_j.contains(&neg) {
            parts.push(h.anchor_space(&rd.space(&neg), &wd.space(&a)));
        }
        if wd.contains(&neg) {
            parts.push(h.a.product_space(&wd.space(&neg), &wd.space(&a)));
        }
    }
    Subspace::sum_all(h.dim_a(), &parts)
}

pub fn tightness(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, js: &JSplit) -> CheckReport {
    let full_a = h.full_a();
    let full_l = h.full_l();
    let mut r = CheckReport::default();
    let z_lie = lie_annihilator(h, rd, js);
    r.push(property("tight.1", "Z_Lie(L) = 0", z_lie.is_zero(), (!z_lie.is_zero()).then(|| format!("Z_Lie(L) = {z_lie}"))));
    let za = center_za(&h.a);
    r.push(property("tight.2", "Z(A) = 0", za.is_zero(), (!za.is_zero()).then(|| format!("Z(A) = {za}"))));
    let aa = h.a.product_space(&full_a, &full_a);
    r.push(property("tight.3", "AA = A", aa.is_full(), None));
    let al = h.action_space(&full_a, &full_l);
    r.push(property("tight.4", "AL = L", al.is_full(), None));
    let hs = root_generation_sum(h, rd, wd, &js.gamma_not_j);
    r.push(property("tight.5", "H generated over the notJ roots", hs == rd.h, Some(format!("sum = {hs}"))));
    let a0s = weight_generation_not_j(h, rd, wd, js);
    r.push(property("tight.6", "A_0 generated over the notJ roots", a0s == wd.a0, Some(format!("sum = {a0s}"))));
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureProfile {
    pub maximal_length: bool,
    pub root_multiplicative: [bool; 4],
    pub tight: [bool; 6],
    pub z_lie: Subspace,
    pub symmetric_lambda: bool,
    pub symmetric_gamma_j: bool,
    pub symmetric_gamma_not_j: bool,
    /// Every pair of notJ roots is notJ-connected.
    pub not_j_connected: bool,
    /// Every pair of weights is connected.
    pub weights_connected: bool,
    pub not_j_partition: ConnectionPartition,
    pub weight_partition: ConnectionPartition,
}

fn holds_all(report: &CheckReport, prefix: &str, n: usize) -> Vec<bool> {
    (1..=n)
        .map(|i| report.get(&format!("{prefix}{i}")).is_some_and(|c| c.status == CheckStatus::Pass))
        .collect()
}

pub fn profile(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, js: &JSplit) -> StructureProfile {
    let rm = holds_all(&root_multiplicativity(h, rd, wd, js), "def5.3.", 4);
    let tt = holds_all(&tightness(h, rd, wd, js), "tight.", 6);
    let not_j_partition = restricted_root_partition(&js.gamma_not_j, rd, wd);
    let weight_partition = weight_partition(wd, rd);
    StructureProfile {
        maximal_length: is_maximal_length(rd, wd),
        root_multiplicative: [rm[0], rm[1], rm[2], rm[3]],
        tight: [tt[0], tt[1], tt[2], tt[3], tt[4], tt[5]],
        z_lie: lie_annihilator(h, rd, js),
        symmetric_lambda: symmetric(&wd.lambda()),
        symmetric_gamma_j: symmetric(&js.gamma_j),
        symmetric_gamma_not_j: symmetric(&js.gamma_not_j),
        not_j_connected: not_j_partition.classes.len() <= 1,
        weights_connected: weight_partition.classes.len() <= 1,
        not_j_partition,
        weight_partition,
    }
}

impl StructureProfile {
    pub fn is_tight(&self) -> bool {
        self.tight.iter().all(|&b| b)
    }

    pub fn is_root_multiplicative(&self) -> bool {
        self.root_multiplicative.iter().all(|&b| b)
    }

    /// Failed hypotheses shared by the component theorems.
    fn common_unmet(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, &b) in self.tight.iter().enumerate() {
            if !b {
                out.push(format!("tight.{} fails", i + 1));
            }
        }
        if !self.maximal_length {
            out.push("not of maximal length".into());
        }
        for (i, &b) in self.root_multiplicative.iter().enumerate() {
            if !b {
                out.push(format!("def5.3.{} fails", i + 1));
            }
        }
        if !self.symmetric_gamma_j {
            out.push("J roots not symmetric".into());
        }
        if !self.symmetric_gamma_not_j {
            out.push("notJ roots not symmetric".into());
        }
        if !self.not_j_connected {
            out.push("notJ roots not all notJ-connected".into());
        }
        out
    }

    pub fn thm_5_12_unmet(&self) -> Vec<String> {
        self.common_unmet()
    }

    pub fn cor_5_13_unmet(&self) -> Vec<String> {
        let mut out = self.common_unmet();
        if !self.weights_connected {
            out.push("weights not all connected".into());
        }
        out
    }
}

/// Every candidate ideal not inside `H + J` is `L`, under its hypotheses.
pub fn prop_5_5(rd: &RootDecomposition, js: &JSplit, prof: &StructureProfile, ideals: &[Subspace], search: IdealSearch) -> Check {
    let desc = "an ideal not inside H + J is L";
    let mut reasons = Vec::new();
    if !prof.tight[4] {
        reasons.push("H not generated over the notJ roots".to_string());
    }
    if !prof.tight[0] {
        reasons.push("Z_Lie(L) != 0".to_string());
    }
    if !prof.is_root_multiplicative() {
        reasons.push("not root-multiplicative".to_string());
    }
    if !prof.not_j_connected {
        reasons.push("notJ roots not all notJ-connected".to_string());
    }
    if !reasons.is_empty() {
        return unmet("prop5.5", desc, &reasons);
    }
    let hj = rd.h.sum(js.j_space());
    let bad = ideals.iter().find(|i| !hj.contains_space(i) && !i.is_full());
    let note = match bad {
        Some(i) => format!("counterexample {i} ({})", search.as_str()),
        None => format!("{} candidate ideals ({})", ideals.len(), search.as_str()),
    };
    claim("prop5.5", desc, bad.is_none(), Some(note))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Thm512Branch {
    /// Some `d` with `d` and `-d` both meeting `I`.
    Equal,
    Split { i_prime: Subspace },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm512Outcome {
    pub gamma_ji: Vec<RootFunctional>,
    pub branch: Thm512Branch,
    /// The conclusion of the chosen branch holds.
    pub conclusion: bool,
    pub forced: bool,
    pub check: Check,
}

/// Applies the `I = J` or `J = I + I'` dichotomy to an ideal `I` inside `J`.
/// Without `force` the computation runs only when the hypotheses hold.
pub fn verify_theorem_5_12(
    h: &HlrAlgebra,
    rd: &RootDecomposition,
    wd: &WeightDecomposition,
    js: &JSplit,
    prof: &StructureProfile,
    i: &Subspace,
    force: bool,
) -> Result<Option<Thm512Outcome>, StructureError> {
    let desc = "an ideal inside J is J or has a complementary ideal in J";
    let j = js.j_space();
    if !j.contains_space(i) {
        return Err(StructureError::NotInJ);
    }
    let reasons = prof.thm_5_12_unmet();
    if !reasons.is_empty() && !force {
        return Ok(None);
    }
    let gamma_ji: Vec<RootFunctional> = js
        .gamma_j
        .iter()
        .filter(|g| !i.intersection(&rd.space(g)).is_zero())
        .cloned()
        .collect();
    let paired = gamma_ji.iter().any(|d| gamma_ji.contains(&-d));
    let (branch, conclusion, mut note) = if paired {
        let ok = i == j;
        (Thm512Branch::Equal, ok, format!("branch I = J: {ok}"))
    } else if i.is_zero() {
        let ok = is_ideal(h, j).passed();
        (
            Thm512Branch::Split { i_prime: j.clone() },
            ok,
            format!("degenerate seed I = 0, I' = J; ideal: {ok}"),
        )
    } else {
        let mut parts = Vec::new();
        for g in &gamma_ji {
            let neg = -g;
            if wd.contains(g) {
                parts.push(h.action_space(&wd.space(g), &rd.space(&neg)));
            }
            parts.push(rd.space(&neg));
        }
        let i_prime = Subspace::sum_all(h.dim_l(), &parts);
        let ideal = is_ideal(h, &i_prime).passed();
        let direct = i.sum(&i_prime) == *j && i.dim() + i_prime.dim() == j.dim();
        (
            Thm512Branch::Split { i_prime: i_prime.clone() },
            ideal && direct,
            format!("I' = {i_prime}; ideal: {ideal}; J = I + I' directly: {direct}"),
        )
    };
    let check = if reasons.is_empty() {
        claim("thm5.12", desc, conclusion, Some(note))
    } else {
        note = format!("forced, hypotheses not met ({}); {note}", reasons.join("; "));
        Check::pass("thm5.12", desc).with_status(CheckStatus::Info).with_note(note)
    };
    Ok(Some(Thm512Outcome {
        gamma_ji,
        branch,
        conclusion,
        forced: !reasons.is_empty(),
        check,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub class_label: Vec<RootFunctional>,
    pub space: Subspace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cor513Outcome {
    pub l_components: Vec<Component>,
    pub a_components: Vec<Component>,
    /// For each `L` component, the `A` components acting on it nontrivially.
    pub pairing: Vec<Vec<usize>>,
    pub forced: bool,
    pub check: Check,
}

/// Component decomposition of `L` and `A` with the acting-factor pairing.
pub fn verify_cor_5_13(
    h: &HlrAlgebra,
    rd: &RootDecomposition,
    wd: &WeightDecomposition,
    prof: &StructureProfile,
    force: bool,
) -> Option<Cor513Outcome> {
    let desc = "L and A split into simple components with a unique acting factor";
    let reasons = prof.cor_5_13_unmet();
    if !reasons.is_empty() && !force {
        return None;
    }
    let l_components: Vec<Component> = prof
        .not_j_partition
        .classes
        .iter()
        .filter_map(|c| build_root_ideal(c, h, rd, wd).ok())
        .map(|i| Component { class_label: i.class_label, space: i.total })
        .collect();
    let a_components: Vec<Component> = prof
        .weight_partition
        .classes
        .iter()
        .filter_map(|c| build_weight_ideal(c, h, rd, wd).ok())
        .map(|i| Component { class_label: i.class_label, space: i.total })
        .collect();
    let l_spaces: Vec<&Subspace> = l_components.iter().map(|c| &c.space).collect();
    let a_spaces: Vec<&Subspace> = a_components.iter().map(|c| &c.space).collect();
    let l_direct = Subspace::sum_all(h.dim_l(), l_spaces.iter().copied()).is_full()
        && l_spaces.iter().map(|s| s.dim()).sum::<usize>() == h.dim_l();
    let a_direct = Subspace::sum_all(h.dim_a(), a_spaces.iter().copied()).is_full()
        && a_spaces.iter().map(|s| s.dim()).sum::<usize>() == h.dim_a();
    let l_orth = l_spaces.iter().enumerate().all(|(i, x)| {
        l_spaces.iter().enumerate().all(|(j, y)| i == j || h.bracket_space(x, y).is_zero())
    });
    let a_orth = a_spaces.iter().enumerate().all(|(i, x)| {
        a_spaces.iter().enumerate().all(|(j, y)| i == j || h.a.product_space(x, y).is_zero())
    });
    let (search, ideals) = candidate_ideals(h, rd, &[], prof.maximal_length);
    let j = compute_j(h);
    let ker = h.anchor_kernel();
    let l_simple = l_spaces.iter().all(|li| {
        ideals.iter().filter(|i| li.contains_space(i)).all(|i| {
            i.is_zero() || i == *li || *i == j.space().intersection(li) || *i == ker.intersection(li)
        })
    });
    let pairing: Vec<Vec<usize>> = l_spaces
        .iter()
        .map(|li| {
            a_spaces
                .iter()
                .enumerate()
                .filter(|(_, aj)| !h.action_space(aj, li).is_zero())
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let unique = pairing.iter().all(|p| p.len() == 1);
    let ok = l_direct && a_direct && l_orth && a_orth && l_simple && unique;
    let mut note = format!(
        "{} L components, {} A components; L direct: {l_direct}; A direct: {a_direct}; \
         [L_i, L_k] = 0: {l_orth}; A_j A_k = 0: {a_orth}; components simple ({}): {l_simple}; unique acting factor: {unique}",
        l_components.len(),
        a_components.len(),
        search.as_str()
    );
    let check = if reasons.is_empty() {
        claim("cor5.13", desc, ok, Some(note))
    } else {
        note = format!("forced, hypotheses not met ({}); {note}", reasons.join("; "));
        Check::pass("cor5.13", desc).with_status(CheckStatus::Info).with_note(note)
    };
    Some(Cor513Outcome {
        l_components,
        a_components,
        pairing,
        forced: !reasons.is_empty(),
        check,
    })
}

/// Zero and nonzero products `A_[a] I_[g]` per notJ root class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingCounts {
    pub class_label: Vec<RootFunctional>,
    pub zero: usize,
    pub nonzero: usize,
}

pub fn verify_pairing_5_9(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, prof: &StructureProfile) -> (Vec<PairingCounts>, Check) {
    let weight_ideals: Vec<Subspace> = prof
        .weight_partition
        .classes
        .iter()
        .filter_map(|c| build_weight_ideal(c, h, rd, wd).ok())
        .map(|w| w.total)
        .collect();
    let counts: Vec<PairingCounts> = prof
        .not_j_partition
        .classes
        .iter()
        .filter_map(|c| build_root_ideal(c, h, rd, wd).ok())
        .map(|i| {
            let zero = weight_ideals
                .iter()
                .filter(|w| h.action_space(w, &i.total).is_zero())
                .count();
            PairingCounts {
                zero,
                nonzero: weight_ideals.len() - zero,
                class_label: i.class_label,
            }
        })
        .collect();
    let summary: Vec<String> = counts
        .iter()
        .map(|c| format!("{}: zero {}, nonzero {}", format_class(&c.class_label), c.zero, c.nonzero))
        .collect();
    let mut note = if summary.is_empty() {
        "no notJ root classes".to_string()
    } else {
        summary.join("; ")
    };
    if !prof.is_tight() {
        note = format!("not tight; {note}");
    }
    let check = Check::pass("prop5.9", "products of weight class ideals with root class ideals")
        .with_status(CheckStatus::Info)
        .with_note(note);
    (counts, check)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub js: JSplit,
    pub profile: StructureProfile,
    pub search: IdealSearch,
    pub ideals: Vec<Subspace>,
    pub pairing: Vec<PairingCounts>,
    pub claims: CheckReport,
}

/// Every structure check, with the theorem checks on candidate ideals.
pub fn analyze(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition, force: bool) -> AnalysisReport {
    let js = j_split(h, rd);
    let prof = profile(h, rd, wd, &js);
    let (search, ideals) = candidate_ideals(h, rd, &[], prof.maximal_length);
    let mut with_j: BTreeSet<Subspace> = ideals.iter().cloned().collect();
    with_j.insert(js.j_space().clone());
    let ideal_list: Vec<Subspace> = with_j.into_iter().collect();

    let mut claims = CheckReport::default();
    claims.push(lemma_5_1(h, rd, &ideal_list));
    claims.push(lemma_5_2(h, rd, &ideal_list));
    claims.checks.extend(root_multiplicativity(h, rd, wd, &js).checks);
    claims.push(property(
        "def5.4",
        "root and weight spaces are lines",
        prof.maximal_length,
        None,
    ));
    claims.push(prop_5_5(rd, &js, &prof, &ideal_list, search));
    let z = annihilator_z(h);
    let mut def56 = claim(
        "def5.6",
        "Z(L) inside Z_Lie(L)",
        prof.z_lie.contains_space(&z),
        Some(format!("Z_Lie(L) = {}", prof.z_lie)),
    );
    if !prof.maximal_length {
        def56.note = Some(format!("{}; computed without maximal length", def56.note.unwrap_or_default()));
    }
    claims.push(def56);
    claims.checks.extend(tightness(h, rd, wd, &js).checks);

    let thm_desc = "an ideal inside J is J or has a complementary ideal in J";
    let inside_j: Vec<&Subspace> = ideal_list.iter().filter(|i| js.j_space().contains_space(i)).collect();
    let reasons = prof.thm_5_12_unmet();
    if reasons.is_empty() || force {
        let outcomes: Vec<Thm512Outcome> = inside_j
            .iter()
            .filter_map(|i| verify_theorem_5_12(h, rd, wd, &js, &prof, i, force).ok().flatten())
            .collect();
        let failed = outcomes.iter().find(|o| !o.conclusion);
        let mut c = match failed {
            Some(o) => o.check.clone(),
            None => outcomes
                .first()
                .map(|o| o.check.clone())
                .unwrap_or_else(|| Check::pass("thm5.12", thm_desc)),
        };
        c.note = Some(format!("{} ideals inside J; {}", outcomes.len(), c.note.unwrap_or_default()));
        claims.push(c);
    } else {
        claims.push(unmet("thm5.12", thm_desc, &reasons));
    }
    match verify_cor_5_13(h, rd, wd, &prof, force) {
        Some(o) => claims.push(o.check),
        None => claims.push(unmet(
            "cor5.13",
            "L and A split into simple components with a unique acting factor",
            &prof.cor_5_13_unmet(),
        )),
    }
    let (pairing, c) = verify_pairing_5_9(h, rd, wd, &prof);
    claims.push(c);
    AnalysisReport {
        js,
        profile: prof,
        search,
        ideals: ideal_list,
        pairing,
        claims,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{int, unit_vector};
    use crate::roots::{root_decomposition, weight_decomposition};

    fn rf(xs: &[i64]) -> RootFunctional {
        RootFunctional(xs.iter().map(|&x| int(x)).collect())
    }

    fn setup(h: &HlrAlgebra) -> (RootDecomposition, WeightDecomposition, JSplit) {
        let cartan = h.declared_h.clone().unwrap();
        let rd = root_decomposition(h, &cartan).unwrap();
        let wd = weight_decomposition(h, &cartan).unwrap();
        let js = j_split(h, &rd);
        (rd, wd, js)
    }

    #[test]
    fn j_split_examples() {
        let (rd, _, js) = setup(&fixtures::fix_b());
        assert!(js.gamma_j.is_empty());
        assert_eq!(js.gamma_not_j, rd.gamma());
        let (_, _, js) = setup(&fixtures::fix_c_split());
        assert_eq!(js.gamma_j, vec![rf(&[2])]);
        assert_eq!(js.gamma_not_j, vec![rf(&[1])]);
        let (_, _, js) = setup(&fixtures::fix_a());
        assert!(js.gamma_j.is_empty() && js.gamma_not_j.is_empty());
    }

    #[test]
    fn lemmas_hold_on_fixtures() {
        for (name, h) in fixtures::split_named() {
            let (rd, _, js) = setup(&h);
            let ideals = vec![js.j_space().clone()];
            assert!(lemma_5_1(&h, &rd, &ideals).holds(), "{name}");
            assert!(lemma_5_2(&h, &rd, &ideals).holds(), "{name}");
        }
    }

    #[test]
    fn lie_annihilator_examples() {
        let h = fixtures::fix_b();
        let (rd, _, js) = setup(&h);
        assert!(lie_annihilator(&h, &rd, &js).is_zero());
        let h = fixtures::fix_a();
        let (rd, _, js) = setup(&h);
        assert!(lie_annihilator(&h, &rd, &js).is_full());
        let h = fixtures::fix_c_split();
        let (rd, _, js) = setup(&h);
        // y has root 2, so [h, y] = 2y keeps it out.
        assert!(!lie_annihilator(&h, &rd, &js).contains(&unit_vector(3, 2)));
        assert!(lie_annihilator(&h, &rd, &js).is_zero());
    }

    #[test]
    fn z_is_inside_z_lie() {
        for (name, h) in fixtures::split_named() {
            let (rd, _, js) = setup(&h);
            assert!(lie_annihilator(&h, &rd, &js).contains_space(&annihilator_z(&h)), "{name}");
        }
    }

    #[test]
    fn maximal_length_examples() {
        let (rd, wd, _) = setup(&fixtures::fix_b());
        assert!(is_maximal_length(&rd, &wd));
        let (rd, wd, _) = setup(&fixtures::fix_e());
        assert!(is_maximal_length(&rd, &wd));
    }

    #[test]
    fn multiplicativity_vacuous_and_violated() {
        let h = fixtures::fix_a();
        let (rd, wd, js) = setup(&h);
        assert!(root_multiplicativity(&h, &rd, &wd, &js).checks.iter().all(|c| c.status == CheckStatus::Pass));
        // FIX-J: u + w = 0 is not a root; two-block-b: roots never add to roots.
        // FIX-C-split: 1 + 1 = 2 is a root but 2 lies in J, so clause 1 sees it with [x, x] = y != 0.
        let h = fixtures::fix_c_split();
        let (rd, wd, js) = setup(&h);
        let r = root_multiplicativity(&h, &rd, &wd, &js);
        assert_eq!(r.get("def5.3.1").unwrap().status, CheckStatus::Pass);
        assert!(r.get("def5.3.1").unwrap().note.as_ref().unwrap().starts_with("1 applicable"));
    }

    #[test]
    fn multiplicativity_clause_one_violation() {
        // FIX-C-split with [x, x] = 0 keeps the root 2 but kills the product.
        let mut h = fixtures::fix_c_split();
        h.l.bracket.set(1, 1, 2, int(0));
        let (rd, wd, js) = setup(&h);
        let r = root_multiplicativity(&h, &rd, &wd, &js);
        let c = r.get("def5.3.1").unwrap();
        assert_eq!(c.status, CheckStatus::Info);
        assert!(c.note.as_ref().unwrap().contains("g = (1), d = (1)"));
    }

    #[test]
    fn tightness_examples() {
        let h = fixtures::fix_a();
        let (rd, wd, js) = setup(&h);
        assert_eq!(tightness(&h, &rd, &wd, &js).get("tight.1").unwrap().status, CheckStatus::Info);
        let h = fixtures::fix_b();
        let (rd, wd, js) = setup(&h);
        assert_eq!(tightness(&h, &rd, &wd, &js).get("tight.5").unwrap().status, CheckStatus::Info);
        let h = fixtures::fix_e();
        let (rd, wd, js) = setup(&h);
        let t: Vec<bool> = tightness(&h, &rd, &wd, &js)
            .checks
            .iter()
            .map(|c| c.status == CheckStatus::Pass)
            .collect();
        // Z_Lie = 0, Z(A) = 0, AA = A, AL = L, H = [e, f]; A_0 = span{1} is not generated.
        assert_eq!(t, vec![true, true, true, true, true, false]);
    }

    #[test]
    fn no_fixture_is_tight() {
        for (name, h) in fixtures::split_named() {
            let (rd, wd, js) = setup(&h);
            assert!(!profile(&h, &rd, &wd, &js).is_tight(), "{name}");
        }
    }

    #[test]
    fn thm_5_12_refuses_without_hypotheses() {
        let h = fixtures::fix_c_split();
        let (rd, wd, js) = setup(&h);
        let prof = profile(&h, &rd, &wd, &js);
        let j = js.j_space().clone();
        assert_eq!(verify_theorem_5_12(&h, &rd, &wd, &js, &prof, &j, false), Ok(None));
        assert_eq!(
            verify_theorem_5_12(&h, &rd, &wd, &js, &prof, &h.full_l(), false),
            Err(StructureError::NotInJ)
        );
    }

    #[test]
    fn thm_5_12_forced_branches() {
        let h = fixtures::fix_c_split();
        let (rd, wd, js) = setup(&h);
        let prof = profile(&h, &rd, &wd, &js);
        let j = js.j_space().clone();
        // J = span{y} = L_2; -2 is not a root, so the split branch runs with I' = 0.
        let o = verify_theorem_5_12(&h, &rd, &wd, &js, &prof, &j, true).unwrap().unwrap();
        assert!(o.forced);
        assert_eq!(o.gamma_ji, vec![rf(&[2])]);
        assert_eq!(o.branch, Thm512Branch::Split { i_prime: Subspace::zero(3) });
        assert!(o.conclusion);
        assert_eq!(o.check.status, CheckStatus::Info);
        assert!(o.check.note.as_ref().unwrap().starts_with("forced"));
        let o = verify_theorem_5_12(&h, &rd, &wd, &js, &prof, &Subspace::zero(3), true).unwrap().unwrap();
        assert_eq!(o.branch, Thm512Branch::Split { i_prime: j });
    }

    #[test]
    fn cor_5_13_refuses_and_forces() {
        let h = fixtures::two_block_w();
        let (rd, wd, js) = setup(&h);
        let prof = profile(&h, &rd, &wd, &js);
        assert!(verify_cor_5_13(&h, &rd, &wd, &prof, false).is_none());
        let o = verify_cor_5_13(&h, &rd, &wd, &prof, true).unwrap();
        assert!(o.forced);
        assert_eq!(o.l_components.len(), 2);
        assert_eq!(o.a_components.len(), 2);
        // Each block's t_i acts by zero, so no weight ideal acts on a root ideal.
        assert!(o.pairing.iter().all(|p| p.is_empty()));
    }

    #[test]
    fn pairing_counts() {
        let h = fixtures::two_block_w();
        let (rd, wd, js) = setup(&h);
        let prof = profile(&h, &rd, &wd, &js);
        let (counts, c) = verify_pairing_5_9(&h, &rd, &wd, &prof);
        assert_eq!(counts.len(), 2);
        assert!(counts.iter().all(|p| p.zero == 2 && p.nonzero == 0));
        assert_eq!(c.status, CheckStatus::Info);
        let h = fixtures::fix_b();
        let (rd, wd, js) = setup(&h);
        let prof = profile(&h, &rd, &wd, &js);
        let (counts, _) = verify_pairing_5_9(&h, &rd, &wd, &prof);
        assert_eq!((counts[0].zero, counts[0].nonzero), (0, 0));
    }

    #[test]
    fn analysis_passes_on_split_fixtures() {
        for (name, h) in fixtures::split_named() {
            let (rd, wd, _) = setup(&h);
            let r = analyze(&h, &rd, &wd, false);
            assert!(r.claims.passed(), "{name}: {:?}", r.claims.first_failure());
            for id in ["lem5.1", "lem5.2", "def5.4", "prop5.5", "def5.6", "thm5.12", "cor5.13", "prop5.9"] {
                assert!(r.claims.get(id).is_some(), "{name} {id}");
            }
        }
    }
}
