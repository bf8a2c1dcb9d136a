//! Morphism checks, twisting by an endomorphism, and the fibered product.

use crate::linalg::{self, unit_vector, Matrix, Scalar, Subspace, Vector};
use crate::model::{
    identity_check, Check, CheckReport, CheckStatus, CommutativeAlgebra, Flags, HlrAlgebra,
    HomLeibnizAlgebra, Labels, ModelError,
};
use crate::tensor::StructureConstants;

/// `g: A -> B` and `f: L -> L'` as matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismPair {
    pub g: Matrix,
    pub f: Matrix,
}

impl MorphismPair {
    pub fn identity(h: &HlrAlgebra) -> Self {
        MorphismPair {
            g: Matrix::identity(h.dim_a()),
            f: Matrix::identity(h.dim_l()),
        }
    }
}

/// Checks the morphism conditions on basis elements, plus that `g` is an
/// algebra map and sends unit to unit when both sides are unital.
pub fn check_morphism(p: &MorphismPair, src: &HlrAlgebra, dst: &HlrAlgebra) -> Result<CheckReport, ModelError> {
    let (na, nl) = (src.dim_a(), src.dim_l());
    let (nb, nm) = (dst.dim_a(), dst.dim_l());
    if (p.g.rows(), p.g.cols()) != (nb, na) {
        return Err(ModelError::DimensionMismatch {
            what: "g".into(),
            expected: nb * na,
            found: p.g.rows() * p.g.cols(),
        });
    }
    if (p.f.rows(), p.f.cols()) != (nm, nl) {
        return Err(ModelError::DimensionMismatch {
            what: "f".into(),
            expected: nm * nl,
            found: p.f.rows() * p.f.cols(),
        });
    }
    let ea = |i| unit_vector(na, i);
    let el = |i| unit_vector(nl, i);
    let g_a: Vec<Vector> = (0..na).map(|i| p.g.column(i)).collect();
    let f_l: Vec<Vector> = (0..nl).map(|i| p.f.column(i)).collect();
    let pairs = |n1: usize, n2: usize| (0..n1).flat_map(move |i| (0..n2).map(move |j| (i, j)));
    let mut report = CheckReport::default();
    report.push(identity_check(
        "morphism.g_multiplicative",
        "g(a_i a_j) = g(a_i) g(a_j)",
        CheckStatus::Fail,
        pairs(na, na).map(|(i, j)| {
            (
                vec![i, j],
                p.g.apply(&src.a.mul(&ea(i), &ea(j))),
                dst.a.mul(&g_a[i], &g_a[j]),
            )
        }),
    ));
    let mut unit_check = Check::pass("morphism.g_unit", "g(1) = 1 when both algebras are unital");
    match (src.flags.unital, dst.flags.unital, src.a.unit(), dst.a.unit()) {
        (true, true, Some(u), Some(v)) => {
            let image = p.g.apply(&u);
            if image != v {
                unit_check = identity_check(
                    "morphism.g_unit",
                    "g(1) = 1 when both algebras are unital",
                    CheckStatus::Fail,
                    [(vec![], image, v)],
                );
            }
        }
        _ => unit_check = unit_check.with_status(CheckStatus::Info).with_note("not both unital"),
    }
    report.push(unit_check);
    report.push(identity_check(
        "morphism.1",
        "f(a_i . x_j) = g(a_i) . f(x_j)",
        CheckStatus::Fail,
        pairs(na, nl).map(|(i, j)| {
            (
                vec![i, j],
                p.f.apply(&src.act(&ea(i), &el(j))),
                dst.act(&g_a[i], &f_l[j]),
            )
        }),
    ));
    report.push(identity_check(
        "morphism.2",
        "f[x_i, x_j] = [f x_i, f x_j]",
        CheckStatus::Fail,
        pairs(nl, nl).map(|(i, j)| {
            (
                vec![i, j],
                p.f.apply(&src.bracket(&el(i), &el(j))),
                dst.bracket(&f_l[i], &f_l[j]),
            )
        }),
    ));
    report.push(identity_check(
        "morphism.3",
        "f(psi x_i) = psi'(f x_i)",
        CheckStatus::Fail,
        (0..nl).map(|i| {
            (
                vec![i],
                p.f.apply(&src.psi().apply(&el(i))),
                dst.psi().apply(&f_l[i]),
            )
        }),
    ));
    report.push(identity_check(
        "morphism.4",
        "g(phi a_i) = phi'(g a_i)",
        CheckStatus::Fail,
        (0..na).map(|i| {
            (
                vec![i],
                p.g.apply(&src.phi().apply(&ea(i))),
                dst.phi().apply(&g_a[i]),
            )
        }),
    ));
    report.push(identity_check(
        "morphism.5",
        "g(rho(x_i)(a_j)) = rho'(f x_i)(g a_j)",
        CheckStatus::Fail,
        pairs(nl, na).map(|(i, j)| {
            (
                vec![i, j],
                p.g.apply(&src.anchor_apply(&el(i), &ea(j))),
                dst.anchor_apply(&f_l[i], &g_a[j]),
            )
        }),
    ));
    Ok(report)
}

/// Twists an untwisted algebra by an endomorphism `(g, f)`: bracket
/// `f . [,]`, anchor `g . rho`, `psi = f`, `phi = g`.
pub fn twist_by_endomorphism(h: &HlrAlgebra, g_end: &Matrix, f_end: &Matrix) -> Result<HlrAlgebra, ModelError> {
    if !h.psi().is_identity() || !h.phi().is_identity() {
        return Err(ModelError::Precondition(
            "twisting needs psi and phi to be identities".into(),
        ));
    }
    let pair = MorphismPair {
        g: g_end.clone(),
        f: f_end.clone(),
    };
    let report = check_morphism(&pair, h, h)?;
    if let Some(failed) = report.first_failure() {
        let detail = match &failed.violation {
            Some(v) => format!(
                "at {:?}: {} != {}",
                v.indices,
                linalg::format_vector(&v.lhs),
                linalg::format_vector(&v.rhs)
            ),
            None => failed.note.clone().unwrap_or_default(),
        };
        return Err(ModelError::NotEndomorphism {
            clause: failed.id.clone(),
            detail,
        });
    }
    let bracket = h.l.bracket.map_outputs(f_end);
    let anchor = h.anchor.map_outputs(g_end);
    let l = HomLeibnizAlgebra::new(bracket, f_end.clone())?;
    let a = CommutativeAlgebra::new(h.a.mul.clone(), g_end.clone())?;
    let flags = Flags {
        regular: l.psi.is_invertible() && a.phi.is_invertible(),
        unital: h.flags.unital,
    };
    Ok(HlrAlgebra::new(a, l, h.action.clone(), anchor, flags)?
        .with_labels(h.labels.clone())
        .with_declared_h(h.declared_h.clone()))
}

/// `{(l, m) : rho_L(l) = rho_M(m)}` inside `L (+) M`, with basis in RREF.
pub fn fiber_subspace(h1: &HlrAlgebra, h2: &HlrAlgebra) -> Subspace {
    let (n1, n2, na) = (h1.dim_l(), h2.dim_l(), h1.dim_a());
    // Row (j, k): coefficient of a_k in rho(l)(a_j) - rho(m)(a_j).
    let mut m = Matrix::zeros(na * na, n1 + n2);
    for j in 0..na {
        for k in 0..na {
            for i in 0..n1 {
                m.set(j * na + k, i, h1.anchor.get(i, j, k).clone());
            }
            for i in 0..n2 {
                m.set(j * na + k, n1 + i, -h2.anchor.get(i, j, k).clone());
            }
        }
    }
    m.nullspace()
}

/// The fibered product over the common base `(A, phi)`.
pub fn fiber_product(h1: &HlrAlgebra, h2: &HlrAlgebra) -> Result<HlrAlgebra, ModelError> {
    if h1.a != h2.a {
        return Err(ModelError::Precondition(
            "both algebras must share the same presentation of (A, phi)".into(),
        ));
    }
    let (n1, na) = (h1.dim_l(), h1.dim_a());
    let k = fiber_subspace(h1, h2);
    let d = k.dim();
    let split = |v: &[Scalar]| (v[..n1].to_vec(), v[n1..].to_vec());
    let join = |a: Vector, b: Vector| {
        let mut v = a;
        v.extend(b);
        v
    };
    let coords = |what: &str, indices: String, v: &Vector| -> Result<Vector, ModelError> {
        k.coordinates(v).ok_or_else(|| ModelError::Structural {
            what: what.to_string(),
            witness: format!("{indices} gives {} outside the fibered product", linalg::format_vector(v)),
        })
    };
    let mut bracket = StructureConstants::zeros(d, d, d);
    for (i, u) in k.basis().iter().enumerate() {
        for (j, w) in k.basis().iter().enumerate() {
            let (ul, um) = split(u);
            let (wl, wm) = split(w);
            let v = join(h1.bracket(&ul, &wl), h2.bracket(&um, &wm));
            let c = coords("bracket", format!("[k{i}, k{j}]"), &v)?;
            bracket.set_basis_product(i, j, &c);
        }
    }
    let mut action = StructureConstants::zeros(na, d, d);
    for i in 0..na {
        let a = unit_vector(na, i);
        for (j, w) in k.basis().iter().enumerate() {
            let (wl, wm) = split(w);
            let v = join(h1.act(&a, &wl), h2.act(&a, &wm));
            let c = coords("action", format!("a{i} . k{j}"), &v)?;
            action.set_basis_product(i, j, &c);
        }
    }
    let mut psi = Matrix::zeros(d, d);
    for (j, w) in k.basis().iter().enumerate() {
        let (wl, wm) = split(w);
        let v = join(h1.psi().apply(&wl), h2.psi().apply(&wm));
        let c = coords("psi", format!("psi(k{j})"), &v)?;
        for (i, x) in c.into_iter().enumerate() {
            psi.set(i, j, x);
        }
    }
    let mut anchor = StructureConstants::zeros(d, na, na);
    for (i, w) in k.basis().iter().enumerate() {
        let (wl, _) = split(w);
        for j in 0..na {
            anchor.set_basis_product(i, j, &h1.anchor_apply(&wl, &unit_vector(na, j)));
        }
    }
    let l = HomLeibnizAlgebra::new(bracket, psi)?;
    let flags = Flags {
        regular: l.psi.is_invertible() && h1.phi().is_invertible(),
        unital: h1.flags.unital,
    };
    let labels = Labels {
        l: (0..d).map(|i| format!("k{i}")).collect(),
        a: h1.labels.a.clone(),
    };
    Ok(HlrAlgebra::new(h1.a.clone(), l, action, anchor, flags)?.with_labels(labels))
}
