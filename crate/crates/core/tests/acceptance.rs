//! One PASS/FAIL line per acceptance criterion.

use std::path::{Path, PathBuf};
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hlr::connections::{
    brute_force_connected, replay, roots_connected, state_count, weights_connected, ConnectionPartition,
    ConnectionSets, Mode,
};
use hlr::construct::twist_by_endomorphism;
use hlr::decomposition::{decompose, is_maximal_length};
use hlr::fixtures;
use hlr::ideals::{annihilator_z, compute_j};
use hlr::linalg::{frac, int, Matrix, Scalar};
use hlr::model::{
    validate_hlr, CheckStatus, CommutativeAlgebra, Flags, HlrAlgebra, HomLeibnizAlgebra, Strictness,
};
use hlr::roots::{root_decomposition, weight_decomposition, RootDecomposition, RootFunctional, WeightDecomposition};
use hlr::structure::{analyze, verify_cor_5_13, verify_theorem_5_12, Thm512Branch};
use hlr::tensor::StructureConstants;

type Outcome = Result<String, String>;

fn decompositions(h: &HlrAlgebra) -> (RootDecomposition, WeightDecomposition) {
    let cartan = h.declared_h.clone().expect("split fixture");
    (
        root_decomposition(h, &cartan).expect("root decomposition"),
        weight_decomposition(h, &cartan).expect("weight decomposition"),
    )
}

fn detected(h: &HlrAlgebra) -> bool {
    !validate_hlr(h, Strictness::Strict).passed() || !compute_j(h).left_annihilated.holds()
}

fn mutants(h: &HlrAlgebra) -> Vec<(String, HlrAlgebra)> {
    let mut out = Vec::new();
    let tensors: [(&str, fn(&mut HlrAlgebra) -> &mut StructureConstants); 4] = [
        ("bracket", |h| &mut h.l.bracket),
        ("mul", |h| &mut h.a.mul),
        ("action", |h| &mut h.action),
        ("anchor", |h| &mut h.anchor),
    ];
    for (name, field) in tensors {
        let mut probe = h.clone();
        let entries: Vec<(usize, usize, usize, Scalar)> =
            field(&mut probe).entries().map(|(i, j, k, x)| (i, j, k, x.clone())).collect();
        for (i, j, k, x) in entries {
            let mut m = h.clone();
            field(&mut m).set(i, j, k, x + int(1));
            out.push((format!("{name}[{i}][{j}][{k}]"), m));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let five = [
        ("fix-a", fixtures::fix_a(), Strictness::Strict),
        ("fix-b", fixtures::fix_b(), Strictness::Strict),
        ("fix-c", fixtures::fix_c(), Strictness::Strict),
        ("fix-d", fixtures::fix_d(), Strictness::Strict),
        ("fix-e", fixtures::fix_e(), Strictness::Lenient),
    ];
    for (name, h, s) in &five {
        if !validate_hlr(h, *s).passed() {
            return Err(format!("{name} does not validate"));
        }
    }
    let mut total = 0;
    let mut missed = Vec::new();
    for (name, h) in [("fix-b", fixtures::fix_b()), ("fix-c", fixtures::fix_c())] {
        for (at, m) in mutants(&h) {
            total += 1;
            if !detected(&m) {
                missed.push(format!("{name} {at}"));
            }
        }
    }
    if missed.is_empty() {
        Ok(format!("five fixtures validate; {total} mutations detected"))
    } else {
        Err(format!(
            "{} of {total} mutations undetected: {}",
            missed.len(),
            missed.join(", ")
        ))
    }
}

/// `L = span{h_1.., e_1..}` with `h`'s acting diagonally on the `e`'s, either
/// skew (Lie) or one-sided (Leibniz), over `A = Q` or the dual numbers with
/// `rho(h_a)(t) = d_a t`. Returns the algebra and a diagonal automorphism `(g, f)`.
fn random_instance(rng: &mut ChaCha8Rng) -> (HlrAlgebra, Matrix, Matrix) {
    let nh = rng.gen_range(1..=2);
    let ne = rng.gen_range(1..=3);
    let nl = nh + ne;
    let lie = rng.gen_bool(0.5);
    let dual = rng.gen_bool(0.5);
    let na = if dual { 2 } else { 1 };
    let mut bracket = StructureConstants::zeros(nl, nl, nl);
    for a in 0..nh {
        for i in nh..nl {
            let c = int(rng.gen_range(-3..=3));
            bracket.set(a, i, i, c.clone());
            if lie {
                bracket.set(i, a, i, -c);
            }
        }
    }
    let mut mul = StructureConstants::zeros(na, na, na);
    mul.set(0, 0, 0, int(1));
    if dual {
        mul.set(0, 1, 1, int(1));
        mul.set(1, 0, 1, int(1));
    }
    let mut action = StructureConstants::zeros(na, nl, nl);
    for j in 0..nl {
        action.set(0, j, j, int(1));
    }
    let mut anchor = StructureConstants::zeros(nl, na, na);
    if dual {
        for a in 0..nh {
            anchor.set(a, 1, 1, int(rng.gen_range(-2..=2)));
        }
    }
    let a = CommutativeAlgebra::new(mul, Matrix::identity(na)).unwrap();
    let l = HomLeibnizAlgebra::new(bracket, Matrix::identity(nl)).unwrap();
    let flags = Flags {
        regular: true,
        unital: true,
    };
    let h = HlrAlgebra::new(a, l, action, anchor, flags).unwrap();
    let mut nonzero = || {
        let p = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let q = rng.gen_range(1..=3);
        frac(p, q)
    };
    let f: Vec<Scalar> = (0..nl).map(|i| if i < nh { int(1) } else { nonzero() }).collect();
    let g: Vec<Scalar> = (0..na).map(|i| if i == 0 { int(1) } else { nonzero() }).collect();
    (h, Matrix::diagonal(&g), Matrix::diagonal(&f))
}

fn criterion_2() -> Outcome {
    let (eg, ef) = fixtures::fix_e_automorphism();
    let mut cases = vec![
        ("fix-b".to_string(), fixtures::fix_b(), Matrix::identity(1), Matrix::diagonal(&[int(1), int(2)]), Strictness::Strict),
        ("fix-e".to_string(), fixtures::fix_e(), eg, ef, Strictness::Lenient),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c52);
    for n in 0..20 {
        let (h, g, f) = random_instance(&mut rng);
        if !validate_hlr(&h, Strictness::Strict).passed() {
            return Err(format!("random instance {n} is not valid"));
        }
        cases.push((format!("random {n}"), h, g, f, Strictness::Strict));
    }
    for (name, h, g, f, s) in &cases {
        let t = twist_by_endomorphism(h, g, f).map_err(|e| format!("{name}: {e}"))?;
        if let Some(c) = validate_hlr(&t, *s).first_failure() {
            return Err(format!("twist of {name} fails {}", c.id));
        }
    }
    Ok(format!("{} twists validate", cases.len()))
}

fn criterion_3() -> Outcome {
    let mut n = 0;
    for (name, h) in fixtures::split_named() {
        let (rd, wd) = decompositions(&h);
        let r = hlr::roots::verify_lemma_closures(&h, &rd, &wd);
        if let Some(c) = r.first_failure() {
            return Err(format!("{name}: {} fails", c.id));
        }
        if r.get("closure.psi_shift").is_none() {
            return Err(format!("{name}: psi shift not checked"));
        }
        n += r.checks.len();
    }
    Ok(format!("{n} closure checks on the split fixtures"))
}

fn criterion_4() -> Outcome {
    let mut pairs = 0;
    for (name, h) in fixtures::split_named() {
        let (rd, wd) = decompositions(&h);
        let max_len = state_count(&rd, &wd) + 2;
        let root_sets = ConnectionSets::roots(&rd, &wd);
        let weight_sets = ConnectionSets::weights(&rd, &wd);
        for a in rd.gamma() {
            for b in rd.gamma() {
                let (fast, chain) = roots_connected(&a, &b, &rd, &wd).unwrap();
                let slow = brute_force_connected(&a, &b, max_len, Mode::Root, &rd, &root_sets);
                if fast != slow {
                    return Err(format!("{name}: roots {a} -> {b}: search {fast}, brute force {slow}"));
                }
                if let Some(c) = chain {
                    if !replay(&c, Mode::Root, &rd, &root_sets) {
                        return Err(format!("{name}: witness {a} -> {b} does not replay"));
                    }
                }
                pairs += 1;
            }
        }
        for a in wd.lambda() {
            for b in wd.lambda() {
                let (fast, chain) = weights_connected(&a, &b, &wd, &rd).unwrap();
                let slow = brute_force_connected(&a, &b, max_len, Mode::Weight, &rd, &weight_sets);
                if fast != slow {
                    return Err(format!("{name}: weights {a} -> {b}: search {fast}, brute force {slow}"));
                }
                if let Some(c) = chain {
                    if !replay(&c, Mode::Weight, &rd, &weight_sets) {
                        return Err(format!("{name}: witness {a} -> {b} does not replay"));
                    }
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs agree"))
}

fn relation_is_equivalence(
    elements: &[RootFunctional],
    related: impl Fn(&RootFunctional, &RootFunctional) -> bool,
) -> Result<(), String> {
    for a in elements {
        if !related(a, a) {
            return Err(format!("{a} not related to itself"));
        }
        for b in elements {
            if related(a, b) != related(b, a) {
                return Err(format!("asymmetric at {a}, {b}"));
            }
            for c in elements {
                if related(a, b) && related(b, c) && !related(a, c) {
                    return Err(format!("intransitive at {a}, {b}, {c}"));
                }
            }
        }
    }
    Ok(())
}

fn partition_sound(p: &ConnectionPartition) -> Result<(), String> {
    let covered: usize = p.classes.iter().map(Vec::len).sum();
    if covered != p.elements.len() || p.elements.iter().any(|e| p.class_of(e).is_none()) {
        return Err("classes do not partition the elements".into());
    }
    relation_is_equivalence(&p.elements, |a, b| p.same_class(a, b))
}

fn criterion_5() -> Outcome {
    let mut n = 0;
    for (name, h) in fixtures::split_named() {
        let (rd, wd) = decompositions(&h);
        let d = decompose(&h, &rd, &wd).unwrap();
        for (kind, p) in [("root", &d.root_partition), ("weight", &d.weight_partition)] {
            partition_sound(p).map_err(|e| format!("{name} {kind} partition: {e}"))?;
            if !p.relation_symmetric || !p.relation_transitive {
                return Err(format!("{name}: raw {kind} relation is not an equivalence"));
            }
        }
        relation_is_equivalence(&rd.gamma(), |a, b| roots_connected(a, b, &rd, &wd).unwrap().0)
            .map_err(|e| format!("{name} root connection: {e}"))?;
        relation_is_equivalence(&wd.lambda(), |a, b| weights_connected(a, b, &wd, &rd).unwrap().0)
            .map_err(|e| format!("{name} weight connection: {e}"))?;
        n += 1;
    }
    Ok(format!("partitions and relations are equivalences on {n} fixtures"))
}

const DECOMPOSITION_CLAIMS: [&str; 11] = [
    "prop3.3.1", "prop3.3.2", "prop3.3.3", "prop3.3.4", "prop3.3.5", "thm3.5.1", "thm3.6", "prop4.3.1",
    "prop4.3.2", "thm4.4.1", "thm4.5",
];

fn criterion_6() -> Outcome {
    let (mut verified, mut refused) = (0, 0);
    for (name, h) in fixtures::split_named() {
        let (rd, wd) = decompositions(&h);
        let d = decompose(&h, &rd, &wd).map_err(|e| format!("{name}: {e}"))?;
        for id in DECOMPOSITION_CLAIMS {
            match d.claims.get(id) {
                Some(c) if c.status == CheckStatus::Pass => {}
                Some(c) => return Err(format!("{name}: {id} is {}", c.status.as_str())),
                None => return Err(format!("{name}: {id} missing")),
            }
        }
        for id in ["cor3.8", "cor4.6"] {
            let c = d.claims.get(id).ok_or(format!("{name}: {id} missing"))?;
            match c.status {
                CheckStatus::Pass => verified += 1,
                CheckStatus::Info => {
                    let note = c.note.as_deref().unwrap_or("");
                    let named = note.strip_prefix("hypotheses not met: ").is_some_and(|r| !r.is_empty());
                    if !named {
                        return Err(format!("{name}: {id} refused without naming a hypothesis"));
                    }
                    refused += 1;
                }
                other => return Err(format!("{name}: {id} is {}", other.as_str())),
            }
        }
    }
    Ok(format!("all claims pass; directness verified {verified} times, refused {refused} times"))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut satisfying = 0;
    for (name, h) in fixtures::split_named() {
        let (rd, wd) = decompositions(&h);
        let a = analyze(&h, &rd, &wd, false);
        let js = &a.js;
        let gamma = rd.gamma();
        let disjoint = js.gamma_j.iter().all(|g| !js.gamma_not_j.contains(g));
        let covers = js.gamma_j.len() + js.gamma_not_j.len() == gamma.len();
        let classified = js.gamma_j.iter().all(|g| js.j_space().contains_space(&rd.space(g)))
            && js.gamma_not_j.iter().all(|g| js.j_space().intersection(&rd.space(g)).is_zero());
        if !(disjoint && covers && classified) {
            failures.push(format!("{name}: j_split inconsistent"));
        }
        if !a.profile.z_lie.contains_space(&annihilator_z(&h)) {
            failures.push(format!("{name}: Z(L) not inside Z_Lie(L)"));
        }
        let weight_dims: usize = wd.weights.values().map(|s| s.dim()).sum();
        let by_dims = h.dim_l() - rd.h.dim() == gamma.len() && weight_dims == wd.lambda().len();
        if is_maximal_length(&rd, &wd) != by_dims || a.profile.maximal_length != by_dims {
            failures.push(format!("{name}: maximal-length flag disagrees with dimensions"));
        }
        let unmet = a.profile.thm_5_12_unmet();
        if unmet.is_empty() {
            satisfying += 1;
            for i in a.ideals.iter().filter(|i| js.j_space().contains_space(i)) {
                let o = verify_theorem_5_12(&h, &rd, &wd, js, &a.profile, i, false)
                    .unwrap()
                    .expect("hypotheses hold");
                let dims = match &o.branch {
                    Thm512Branch::Equal => i == js.j_space(),
                    Thm512Branch::Split { i_prime } => i.dim() + i_prime.dim() == js.j_space().dim(),
                };
                if !o.conclusion || !dims {
                    failures.push(format!("{name}: thm5.12 branch fails for {i}"));
                }
            }
            match verify_cor_5_13(&h, &rd, &wd, &a.profile, false) {
                Some(c) => {
                    let l: usize = c.l_components.iter().map(|x| x.space.dim()).sum();
                    let aa: usize = c.a_components.iter().map(|x| x.space.dim()).sum();
                    let functional = c.pairing.iter().all(|p| p.len() == 1);
                    if l != h.dim_l() || aa != h.dim_a() || !functional {
                        failures.push(format!("{name}: cor5.13 components do not account for L and A"));
                    }
                }
                None if a.profile.cor_5_13_unmet().is_empty() => {
                    failures.push(format!("{name}: cor5.13 refused although its hypotheses hold"));
                }
                None => {}
            }
        } else {
            let j = js.j_space().clone();
            let refused = verify_theorem_5_12(&h, &rd, &wd, js, &a.profile, &j, false).unwrap().is_none()
                && verify_cor_5_13(&h, &rd, &wd, &a.profile, false).is_none()
                && a.claims.get("thm5.12").is_some_and(|c| c.status == CheckStatus::Info)
                && a.claims.get("cor5.13").is_some_and(|c| c.status == CheckStatus::Info);
            if !refused {
                failures.push(format!("{name}: hypothesis refusal path not taken"));
            }
            let forced_t = verify_theorem_5_12(&h, &rd, &wd, js, &a.profile, &j, true).unwrap();
            let forced_c = verify_cor_5_13(&h, &rd, &wd, &a.profile, true);
            if !forced_t.is_some_and(|o| o.forced) || !forced_c.is_some_and(|o| o.forced) {
                failures.push(format!("{name}: forced computation not labelled"));
            }
        }
    }
    notes.push(format!("{satisfying} fixtures satisfy the thm5.12 hypotheses"));
    if satisfying == 0 {
        failures.push(
            "no instance satisfies the thm5.12 hypotheses: AA = A and A_0 generated over the roots cannot hold together"
                .into(),
        );
    }
    if failures.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn criterion_8() -> Outcome {
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_hlr")).args(args).output().unwrap();
    let mut runs = 0;
    for (name, _) in fixtures::named() {
        let file = fixture_path(name);
        let file = file.to_str().unwrap();
        for cmd in ["validate", "decompose", "analyze", "connect", "j"] {
            for format in ["text", "json"] {
                let args = ["--format", format, cmd, file];
                let (a, b) = (run(&args), run(&args));
                if a.stdout != b.stdout || a.status != b.status {
                    return Err(format!("{cmd} --format {format} on {name} differs between runs"));
                }
                runs += 1;
            }
        }
        let args = ["twist", file, "--psi", "id", "--phi", "id"];
        if run(&args).stdout != run(&args).stdout {
            return Err(format!("twist on {name} differs between runs"));
        }
    }
    Ok(format!("{runs} report pairs byte-identical"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("axiom soundness and mutation sensitivity", criterion_1),
        ("twisted instances validate", criterion_2),
        ("root and weight space closures", criterion_3),
        ("connection search agrees with brute force", criterion_4),
        ("connection relations are equivalences", criterion_5),
        ("class ideal decomposition claims", criterion_6),
        ("J split, annihilators and component theorems", criterion_7),
        ("CLI determinism", criterion_8),
    ];
    let mut failed = 0;
    for (n, (title, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {}: {title} ({detail})", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}: {title} ({detail})", n + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
