//! Root and weight decompositions relative to a chosen Cartan subalgebra.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{self, joint_eigenspaces, LinearOperator, Matrix, Scalar, Subspace};
use crate::model::{Check, CheckReport, CheckStatus, HlrAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("H is not a subspace of L (ambient {found}, expected {expected})")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("H is not abelian: [{i}, {j}] = {value}")]
    NotAbelian { i: usize, j: usize, value: String },
    #[error("psi(H) != H")]
    NotPsiStable,
    #[error("{0} is not invertible")]
    NotInvertible(&'static str),
    #[error("H is not a splitting Cartan subalgebra: L_0 = {l0} but H = {h}")]
    NotSplittingCartan { l0: String, h: String },
    #[error("no Cartan subalgebra given and none declared")]
    NoCartan,
}

/// A linear functional on `H`, as its values on the RREF basis of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootFunctional(pub Vec<Scalar>);

impl RootFunctional {
    pub fn zero(dim: usize) -> Self {
        RootFunctional(linalg::zero_vector(dim))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn values(&self) -> &[Scalar] {
        &self.0
    }
}

impl Neg for &RootFunctional {
    type Output = RootFunctional;
    fn neg(self) -> RootFunctional {
        RootFunctional(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for RootFunctional {
    type Output = RootFunctional;
    fn neg(self) -> RootFunctional {
        -&self
    }
}

impl Add for &RootFunctional {
    type Output = RootFunctional;
    fn add(self, other: &RootFunctional) -> RootFunctional {
        RootFunctional(linalg::add_vectors(&self.0, &other.0))
    }
}

impl fmt::Display for RootFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(linalg::format_scalar).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDecomposition {
    pub h: Subspace,
    /// `L_gamma` for every nonzero root.
    pub roots: BTreeMap<RootFunctional, Subspace>,
    /// `L_0`, equal to `H` whenever the decomposition was produced.
    pub l0: Subspace,
    /// Part of `L` not covered by `H` and the root spaces.
    pub remainder: Subspace,
    pub split: bool,
    /// `psi` restricted to `H`, in coordinates of the basis of `H`.
    pub psi_on_h: LinearOperator,
}

impl RootDecomposition {
    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    pub fn gamma(&self) -> Vec<RootFunctional> {
        self.roots.keys().cloned().collect()
    }

    pub fn contains(&self, f: &RootFunctional) -> bool {
        self.roots.contains_key(f)
    }

    /// `L_f`, with `L_0 = H` and the zero space for non-roots.
    pub fn space(&self, f: &RootFunctional) -> Subspace {
        if f.is_zero() {
            return self.l0.clone();
        }
        self.roots
            .get(f)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.h.ambient_dim()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDecomposition {
    pub a0: Subspace,
    pub weights: BTreeMap<RootFunctional, Subspace>,
    pub remainder: Subspace,
    pub split: bool,
    /// `phi(A_alpha)` lies in `A_alpha` for every weight, and `phi(A_0)` in `A_0`.
    pub phi_stable: bool,
}

impl WeightDecomposition {
    pub fn lambda(&self) -> Vec<RootFunctional> {
        self.weights.keys().cloned().collect()
    }

    pub fn contains(&self, f: &RootFunctional) -> bool {
        self.weights.contains_key(f)
    }

    /// `A_f`, with `A_0` for the zero functional and the zero space for non-weights.
    pub fn space(&self, f: &RootFunctional) -> Subspace {
        if f.is_zero() {
            return self.a0.clone();
        }
        self.weights
            .get(f)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.a0.ambient_dim()))
    }
}

/// Resolves `--cartan` or the declared Cartan subalgebra.
pub fn cartan_or_declared(h: &HlrAlgebra, cartan: Option<&Subspace>) -> Result<Subspace, RootError> {
    cartan
        .cloned()
        .or_else(|| h.declared_h.clone())
        .ok_or(RootError::NoCartan)
}

/// `L_gamma = {v : [x, psi v] = gamma(x) psi v for x in H}`, computed as
/// `psi^-1` of the joint eigenspaces of `ad x` over the basis of `H`.
pub fn root_decomposition(h: &HlrAlgebra, cartan: &Subspace) -> Result<RootDecomposition, RootError> {
    let nl = h.dim_l();
    if cartan.ambient_dim() != nl {
        return Err(RootError::AmbientMismatch {
            expected: nl,
            found: cartan.ambient_dim(),
        });
    }
    let hb = cartan.basis();
    for (i, x) in hb.iter().enumerate() {
        for (j, y) in hb.iter().enumerate() {
            let v = h.bracket(x, y);
            if !linalg::is_zero_vector(&v) {
                return Err(RootError::NotAbelian {
                    i,
                    j,
                    value: linalg::format_vector(&v),
                });
            }
        }
    }
    let psi = h.psi().matrix();
    if cartan.image(psi) != *cartan {
        return Err(RootError::NotPsiStable);
    }
    let psi_inv = h.psi().inverse().ok_or(RootError::NotInvertible("psi"))?.clone();
    let ops: Vec<LinearOperator> = hb
        .iter()
        .map(|x| LinearOperator::new(h.l.bracket.left_matrix(x)).expect("square"))
        .collect();
    let je = joint_eigenspaces(nl, &ops).expect("operators share the ambient space");
    let mut roots = BTreeMap::new();
    let mut l0 = Subspace::zero(nl);
    for (values, space) in je.classes {
        let pulled = space.image(&psi_inv);
        let f = RootFunctional(values);
        if f.is_zero() {
            l0 = pulled;
        } else {
            roots.insert(f, pulled);
        }
    }
    if l0 != *cartan {
        return Err(RootError::NotSplittingCartan {
            l0: l0.to_string(),
            h: cartan.to_string(),
        });
    }
    let psi_on_h = restrict(psi, cartan);
    Ok(RootDecomposition {
        h: cartan.clone(),
        roots,
        l0,
        split: je.remainder.is_zero(),
        remainder: je.remainder,
        psi_on_h,
    })
}

/// Matrix of `m` restricted to an invariant subspace, in its basis coordinates.
fn restrict(m: &Matrix, space: &Subspace) -> LinearOperator {
    let d = space.dim();
    let mut out = Matrix::zeros(d, d);
    for (j, v) in space.basis().iter().enumerate() {
        let c = space.coordinates(&m.apply(v)).expect("invariant subspace");
        for (i, x) in c.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    LinearOperator::new(out).expect("square")
}

/// `A_alpha = {a : rho(x)(a) = alpha(x) phi(a) for x in H}` via the
/// eigenspaces of `phi^-1 rho(x)`.
pub fn weight_decomposition(h: &HlrAlgebra, cartan: &Subspace) -> Result<WeightDecomposition, RootError> {
    let na = h.dim_a();
    if cartan.ambient_dim() != h.dim_l() {
        return Err(RootError::AmbientMismatch {
            expected: h.dim_l(),
            found: cartan.ambient_dim(),
        });
    }
    let phi_inv = h.phi().inverse().ok_or(RootError::NotInvertible("phi"))?.clone();
    let ops: Vec<LinearOperator> = cartan
        .basis()
        .iter()
        .map(|x| LinearOperator::new(phi_inv.mul(&h.anchor_matrix(x))).expect("square"))
        .collect();
    let je = joint_eigenspaces(na, &ops).expect("operators share the ambient space");
    let mut weights = BTreeMap::new();
    let mut a0 = Subspace::zero(na);
    for (values, space) in je.classes {
        let f = RootFunctional(values);
        if f.is_zero() {
            a0 = space;
        } else {
            weights.insert(f, space);
        }
    }
    if cartan.is_zero() {
        // No operators: every element has weight zero.
        a0 = Subspace::full(na);
    }
    let phi = h.phi().matrix();
    let phi_stable = std::iter::once(&a0)
        .chain(weights.values())
        .all(|s| s.contains_space(&s.image(phi)));
    Ok(WeightDecomposition {
        a0,
        weights,
        split: je.remainder.is_zero(),
        remainder: je.remainder,
        phi_stable,
    })
}

/// `f . psi^z` restricted to `H`.
pub fn compose_psi_power(f: &RootFunctional, z: i64, d: &RootDecomposition) -> RootFunctional {
    let p = d
        .psi_on_h
        .matrix()
        .pow(z)
        .expect("psi restricted to H is invertible");
    RootFunctional(p.transpose().apply(&f.0))
}

/// The cycle `f, f psi^-1, f psi^-2, ...` up to the first repetition.
pub fn psi_orbit(f: &RootFunctional, d: &RootDecomposition) -> Result<Vec<RootFunctional>, RootFunctional> {
    let mut orbit = vec![f.clone()];
    loop {
        let next = compose_psi_power(orbit.last().expect("nonempty"), -1, d);
        if orbit.contains(&next) {
            return Ok(orbit);
        }
        if !d.contains(&next) {
            return Err(next);
        }
        orbit.push(next);
    }
}

fn closure_check(id: &str, description: &str, failures: Vec<String>) -> Check {
    let c = Check::pass(id, description);
    match failures.into_iter().next() {
        None => c,
        Some(first) => c.with_status(CheckStatus::Fail).with_note(first),
    }
}

/// Verifies the six closure properties of root and weight spaces.
pub fn verify_lemma_closures(h: &HlrAlgebra, rd: &RootDecomposition, wd: &WeightDecomposition) -> CheckReport {
    let dh = rd.dim_h();
    let zero = RootFunctional::zero(dh);
    let gamma0: Vec<RootFunctional> = std::iter::once(zero.clone()).chain(rd.gamma()).collect();
    let lambda0: Vec<RootFunctional> = std::iter::once(zero.clone()).chain(wd.lambda()).collect();
    let in_gamma0 = |f: &RootFunctional| f.is_zero() || rd.contains(f);
    let in_lambda0 = |f: &RootFunctional| f.is_zero() || wd.contains(f);
    let mut report = CheckReport::default();

    let mut fails = Vec::new();
    if rd.l0 != rd.h {
        fails.push(format!("L_0 = {} differs from H = {}", rd.l0, rd.h));
    }
    report.push(closure_check("closure.l0_is_h", "L_0 = H", fails));

    let psi = h.psi().matrix();
    let psi_inv = h.psi().inverse().cloned();
    let mut fails = Vec::new();
    for (g, space) in &rd.roots {
        let shifted = compose_psi_power(g, -1, rd);
        if space.image(psi) != rd.space(&shifted) || !rd.contains(&shifted) {
            fails.push(format!("psi(L_{g}) != L_{shifted}"));
        }
        let back = compose_psi_power(g, 1, rd);
        if let Some(inv) = &psi_inv {
            if space.image(inv) != rd.space(&back) || !rd.contains(&back) {
                fails.push(format!("psi^-1(L_{g}) != L_{back}"));
            }
        }
    }
    report.push(closure_check(
        "closure.psi_shift",
        "psi(L_g) = L_{g psi^-1} and psi^-1(L_g) = L_{g psi}",
        fails,
    ));

    let mut fails = Vec::new();
    for g in &gamma0 {
        for x in &gamma0 {
            let prod = h.bracket_space(&rd.space(g), &rd.space(x));
            if prod.is_zero() {
                continue;
            }
            let target = &compose_psi_power(g, -1, rd) + &compose_psi_power(x, -1, rd);
            if !in_gamma0(&target) {
                fails.push(format!("[L_{g}, L_{x}] != 0 but {target} is not a root"));
            } else if !rd.space(&target).contains_space(&prod) {
                fails.push(format!("[L_{g}, L_{x}] not inside L_{target}"));
            }
        }
    }
    report.push(closure_check(
        "closure.bracket",
        "[L_g, L_x] inside L_{g psi^-1 + x psi^-1}",
        fails,
    ));

    let mut fails = Vec::new();
    for a in &lambda0 {
        for b in &lambda0 {
            let prod = h.a.product_space(&wd.space(a), &wd.space(b));
            if prod.is_zero() {
                continue;
            }
            let target = a + b;
            if !in_lambda0(&target) {
                fails.push(format!("A_{a} A_{b} != 0 but {target} is not a weight"));
            } else if !wd.space(&target).contains_space(&prod) {
                fails.push(format!("A_{a} A_{b} not inside A_{target}"));
            }
        }
    }
    report.push(closure_check("closure.mul", "A_a A_b inside A_{a+b}", fails));

    let mut fails = Vec::new();
    for a in &lambda0 {
        for g in &gamma0 {
            let prod = h.action_space(&wd.space(a), &rd.space(g));
            if prod.is_zero() {
                continue;
            }
            let target = a + g;
            if !in_gamma0(&target) {
                fails.push(format!("A_{a} L_{g} != 0 but {target} is not a root"));
            } else if !rd.space(&target).contains_space(&prod) {
                fails.push(format!("A_{a} L_{g} not inside L_{target}"));
            }
        }
    }
    report.push(closure_check("closure.action", "A_a L_g inside L_{a+g}", fails));

    let mut fails = Vec::new();
    for g in &gamma0 {
        for a in &lambda0 {
            let prod = h.anchor_space(&rd.space(g), &wd.space(a));
            if prod.is_zero() {
                continue;
            }
            let target = a + g;
            if !in_lambda0(&target) {
                fails.push(format!("rho(L_{g}) A_{a} != 0 but {target} is not a weight"));
            } else if !wd.space(&target).contains_space(&prod) {
                fails.push(format!("rho(L_{g}) A_{a} not inside A_{target}"));
            }
        }
    }
    report.push(closure_check("closure.anchor", "rho(L_g) A_a inside A_{a+g}", fails));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::twist_by_endomorphism;
    use crate::fixtures;
    use crate::linalg::{frac, int, unit_vector};

    fn rf(xs: &[Scalar]) -> RootFunctional {
        RootFunctional(xs.to_vec())
    }

    fn decompose(h: &HlrAlgebra) -> (RootDecomposition, WeightDecomposition) {
        let cartan = h.declared_h.clone().unwrap();
        (
            root_decomposition(h, &cartan).unwrap(),
            weight_decomposition(h, &cartan).unwrap(),
        )
    }

    #[test]
    fn fix_b_roots() {
        let (rd, wd) = decompose(&fixtures::fix_b());
        assert!(rd.split);
        assert_eq!(rd.gamma(), vec![rf(&[int(1)])]);
        assert_eq!(rd.space(&rf(&[int(1)])), Subspace::span(2, [unit_vector(2, 1)]));
        assert!(wd.weights.is_empty());
        assert!(wd.a0.is_full());
    }

    #[test]
    fn fix_a_has_no_roots() {
        let (rd, wd) = decompose(&fixtures::fix_a());
        assert!(rd.split && rd.roots.is_empty());
        assert!(wd.weights.is_empty());
    }

    #[test]
    fn fix_d_root_is_two() {
        // [h, psi e]' = psi([h, 2e]) = 4e = 2 (2e).
        let (rd, _) = decompose(&fixtures::fix_d());
        assert_eq!(rd.gamma(), vec![rf(&[int(2)])]);
    }

    #[test]
    fn fix_e_roots_and_weights() {
        let (rd, wd) = decompose(&fixtures::fix_e());
        assert_eq!(rd.gamma(), vec![rf(&[int(-1)]), rf(&[int(1)])]);
        assert_eq!(wd.lambda(), vec![rf(&[int(1)])]);
        assert_eq!(wd.space(&rf(&[int(1)])), Subspace::span(2, [unit_vector(2, 1)]));
        assert_eq!(wd.a0, Subspace::span(2, [unit_vector(2, 0)]));
        assert!(wd.phi_stable && wd.split);
    }

    #[test]
    fn wrong_cartan_is_not_split() {
        // ad e kills e and sends h to -e: L_0 = span{e} = H, but h is left over.
        let b = fixtures::fix_b();
        let e = Subspace::span(2, [unit_vector(2, 1)]);
        let rd = root_decomposition(&b, &e).unwrap();
        assert!(!rd.split);
        assert!(rd.roots.is_empty());
        assert_eq!(rd.remainder, Subspace::span(2, [unit_vector(2, 0)]));
    }

    #[test]
    fn too_small_cartan_is_rejected() {
        // H = 0 in FIX-A leaves L_0 = L.
        let a = fixtures::fix_a();
        assert!(matches!(
            root_decomposition(&a, &Subspace::zero(2)),
            Err(RootError::NotSplittingCartan { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        let (rd, _) = decompose(&fixtures::fix_b());
        let g = rf(&[int(1)]);
        assert_eq!(compose_psi_power(&g, 0, &rd), g);
        assert_eq!(compose_psi_power(&g, 5, &rd), g);
        let mut scaled = rd.clone();
        scaled.psi_on_h = LinearOperator::new(Matrix::diagonal(&[int(2)])).unwrap();
        assert_eq!(compose_psi_power(&g, -1, &scaled), rf(&[frac(1, 2)]));
    }

    #[test]
    fn orbit_examples() {
        let (rd, _) = decompose(&fixtures::fix_b());
        assert_eq!(psi_orbit(&rf(&[int(1)]), &rd).unwrap(), vec![rf(&[int(1)])]);
        let (mut rd, _) = decompose(&fixtures::fix_e());
        rd.psi_on_h = LinearOperator::new(Matrix::diagonal(&[int(-1)])).unwrap();
        assert_eq!(
            psi_orbit(&rf(&[int(1)]), &rd).unwrap(),
            vec![rf(&[int(1)]), rf(&[int(-1)])]
        );
    }

    #[test]
    fn closures_hold_on_split_fixtures() {
        for (name, h) in fixtures::split_named() {
            let (rd, wd) = decompose(&h);
            let r = verify_lemma_closures(&h, &rd, &wd);
            assert!(r.passed(), "{name}: {:?}", r.first_failure());
        }
    }

    #[test]
    fn twisted_sl2_breaks_bracket_closure() {
        // psi(e) = 2e, psi(f) = f/2 over A = Q with zero anchor.
        let mut e = fixtures::fix_e();
        e.anchor = crate::tensor::StructureConstants::zeros(3, 2, 2);
        let (g, f) = fixtures::fix_e_automorphism();
        let t = twist_by_endomorphism(&e, &g, &f).unwrap();
        let (rd, wd) = decompose(&t);
        assert_eq!(rd.gamma(), vec![rf(&[frac(-1, 2)]), rf(&[int(2)])]);
        let r = verify_lemma_closures(&t, &rd, &wd);
        assert_eq!(r.first_failure().unwrap().id, "closure.bracket");
    }
}
