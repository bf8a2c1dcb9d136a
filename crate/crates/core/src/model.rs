//! Structure-constant presentations and axiom validation.

use num_traits::One;
use thiserror::Error;

use crate::linalg::{
    self, add_vectors, is_zero_vector, scale_vector, sub_vectors, unit_vector, zero_vector,
    LinalgError, LinearOperator, Matrix, Scalar, Subspace, Vector,
};
use crate::tensor::StructureConstants;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("not an endomorphism: {clause} fails ({detail})")]
    NotEndomorphism { clause: String, detail: String },
    #[error("{what} does not close: {witness}")]
    Structural { what: String, witness: String },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Whether the representation axioms count as failures or warnings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    Strict,
    #[default]
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckStatus {
    Pass,
    Info,
    Warn,
    Fail,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Info => "info",
            CheckStatus::Warn => "warn",
            CheckStatus::Fail => "fail",
        }
    }
}

/// First violating index tuple with both sides of the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub indices: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub status: CheckStatus,
    pub violation: Option<Violation>,
    pub note: Option<String>,
}

impl Check {
    pub fn pass(id: &str, description: &str) -> Self {
        Check {
            id: id.to_string(),
            description: description.to_string(),
            status: CheckStatus::Pass,
            violation: None,
            note: None,
        }
    }

    pub fn with_status(mut self, status: CheckStatus) -> Self {
        self.status = status;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// An ordered list of checks; the report fails iff some check fails.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::holds)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == CheckStatus::Fail)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }
}

pub type ValidationReport = CheckReport;

/// Runs `pairs` in order and records the first one whose sides differ.
pub(crate) fn identity_check<I>(id: &str, description: &str, on_fail: CheckStatus, cases: I) -> Check
where
    I: IntoIterator<Item = (Vec<usize>, Vector, Vector)>,
{
    for (indices, lhs, rhs) in cases {
        if lhs != rhs {
            return Check {
                id: id.to_string(),
                description: description.to_string(),
                status: on_fail,
                violation: Some(Violation { indices, lhs, rhs }),
                note: None,
            };
        }
    }
    Check::pass(id, description)
}

fn pairs(n1: usize, n2: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n1).flat_map(move |i| (0..n2).map(move |j| (i, j)))
}

fn triples(n1: usize, n2: usize, n3: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n1).flat_map(move |i| (0..n2).flat_map(move |j| (0..n3).map(move |k| (i, j, k))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeAlgebra {
    pub mul: StructureConstants,
    pub phi: LinearOperator,
}

impl CommutativeAlgebra {
    pub fn new(mul: StructureConstants, phi: Matrix) -> Result<Self, ModelError> {
        let (n1, n2, n3) = mul.dims();
        if n1 != n2 || n2 != n3 {
            return Err(ModelError::DimensionMismatch {
                what: "multiplication constants".into(),
                expected: n1,
                found: n2.max(n3),
            });
        }
        let phi = LinearOperator::new(phi)?;
        if phi.dim() != n1 {
            return Err(ModelError::DimensionMismatch {
                what: "phi".into(),
                expected: n1,
                found: phi.dim(),
            });
        }
        Ok(CommutativeAlgebra { mul, phi })
    }

    pub fn dim(&self) -> usize {
        self.mul.dims().0
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        self.mul.product(a, b)
    }

    /// The unit element, when one exists.
    pub fn unit(&self) -> Option<Vector> {
        let n = self.dim();
        // Unknown e: sum_i e_i m[i][j][k] = delta_jk for all j, k.
        let mut m = Matrix::zeros(n * n, n);
        let mut b = zero_vector(n * n);
        for (j, k) in pairs(n, n) {
            for i in 0..n {
                m.set(j * n + k, i, self.mul.get(i, j, k).clone());
            }
            if j == k {
                b[j * n + k] = Scalar::one();
            }
        }
        linalg::solve(&m, &b)
    }

    /// Span of all products `u * v` with `u` in `x`, `v` in `y`.
    pub fn product_space(&self, x: &Subspace, y: &Subspace) -> Subspace {
        Subspace::span(
            self.dim(),
            x.basis()
                .iter()
                .flat_map(|u| y.basis().iter().map(move |v| self.mul(u, v))),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLeibnizAlgebra {
    pub bracket: StructureConstants,
    pub psi: LinearOperator,
}

impl HomLeibnizAlgebra {
    pub fn new(bracket: StructureConstants, psi: Matrix) -> Result<Self, ModelError> {
        let (n1, n2, n3) = bracket.dims();
        if n1 != n2 || n2 != n3 {
            return Err(ModelError::DimensionMismatch {
                what: "bracket constants".into(),
                expected: n1,
                found: n2.max(n3),
            });
        }
        let psi = LinearOperator::new(psi)?;
        if psi.dim() != n1 {
            return Err(ModelError::DimensionMismatch {
                what: "psi".into(),
                expected: n1,
                found: psi.dim(),
            });
        }
        Ok(HomLeibnizAlgebra { bracket, psi })
    }

    pub fn dim(&self) -> usize {
        self.bracket.dims().0
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.bracket.product(x, y)
    }

    pub fn bracket_space(&self, x: &Subspace, y: &Subspace) -> Subspace {
        Subspace::span(
            self.dim(),
            x.basis()
                .iter()
                .flat_map(|u| y.basis().iter().map(move |v| self.bracket(u, v))),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub regular: bool,
    pub unital: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Labels {
    pub l: Vec<String>,
    pub a: Vec<String>,
}

impl Labels {
    pub fn default_for(dim_l: usize, dim_a: usize) -> Self {
        Labels {
            l: (0..dim_l).map(|i| format!("x{i}")).collect(),
            a: (0..dim_a).map(|i| format!("a{i}")).collect(),
        }
    }
}

/// The full tuple: `A` with `phi`, `L` with bracket and `psi`, the
/// `A`-action on `L`, and the anchor `rho: L -> End(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HlrAlgebra {
    pub a: CommutativeAlgebra,
    pub l: HomLeibnizAlgebra,
    /// `a_i . x_j = sum_k t[i][j][k] x_k`
    pub action: StructureConstants,
    /// `rho(x_i)(a_j) = sum_k r[i][j][k] a_k`
    pub anchor: StructureConstants,
    pub flags: Flags,
    pub labels: Labels,
    pub declared_h: Option<Subspace>,
}

impl HlrAlgebra {
    pub fn new(
        a: CommutativeAlgebra,
        l: HomLeibnizAlgebra,
        action: StructureConstants,
        anchor: StructureConstants,
        flags: Flags,
    ) -> Result<Self, ModelError> {
        let (na, nl) = (a.dim(), l.dim());
        let expect = |what: &str, got: (usize, usize, usize), want: (usize, usize, usize)| {
            if got == want {
                Ok(())
            } else {
                Err(ModelError::DimensionMismatch {
                    what: what.to_string(),
                    expected: want.0 * want.1 * want.2,
                    found: got.0 * got.1 * got.2,
                })
            }
        };
        expect("action constants", action.dims(), (na, nl, nl))?;
        expect("anchor constants", anchor.dims(), (nl, na, na))?;
        Ok(HlrAlgebra {
            a,
            l,
            action,
            anchor,
            flags,
            labels: Labels::default_for(nl, na),
            declared_h: None,
        })
    }

    pub fn with_labels(mut self, labels: Labels) -> Self {
        self.labels = labels;
        self
    }

    pub fn with_declared_h(mut self, h: Option<Subspace>) -> Self {
        self.declared_h = h;
        self
    }

    pub fn dim_l(&self) -> usize {
        self.l.dim()
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.l.bracket(x, y)
    }

    pub fn act(&self, a: &[Scalar], x: &[Scalar]) -> Vector {
        self.action.product(a, x)
    }

    /// `rho(x)(a)`
    pub fn anchor_apply(&self, x: &[Scalar], a: &[Scalar]) -> Vector {
        self.anchor.product(x, a)
    }

    /// Matrix of `rho(x)` on `A`.
    pub fn anchor_matrix(&self, x: &[Scalar]) -> Matrix {
        self.anchor.left_matrix(x)
    }

    pub fn psi(&self) -> &LinearOperator {
        &self.l.psi
    }

    pub fn phi(&self) -> &LinearOperator {
        &self.a.phi
    }

    pub fn full_l(&self) -> Subspace {
        Subspace::full(self.dim_l())
    }

    pub fn full_a(&self) -> Subspace {
        Subspace::full(self.dim_a())
    }

    /// Span of `a . x` for `a` in `x_a`, `x` in `x_l`.
    pub fn action_space(&self, x_a: &Subspace, x_l: &Subspace) -> Subspace {
        Subspace::span(
            self.dim_l(),
            x_a.basis()
                .iter()
                .flat_map(|a| x_l.basis().iter().map(move |x| self.act(a, x))),
        )
    }

    /// Span of `rho(x)(a)` for `x` in `x_l`, `a` in `x_a`.
    pub fn anchor_space(&self, x_l: &Subspace, x_a: &Subspace) -> Subspace {
        Subspace::span(
            self.dim_a(),
            x_l.basis()
                .iter()
                .flat_map(|x| x_a.basis().iter().map(move |a| self.anchor_apply(x, a))),
        )
    }

    pub fn bracket_space(&self, x: &Subspace, y: &Subspace) -> Subspace {
        self.l.bracket_space(x, y)
    }

    /// Kernel of the anchor, as a subspace of `L`.
    pub fn anchor_kernel(&self) -> Subspace {
        let na = self.dim_a();
        let maps: Vec<Matrix> = (0..na)
            .map(|j| self.anchor.right_matrix(&unit_vector(na, j)))
            .collect();
        linalg::common_kernel(self.dim_l(), &maps)
    }
}

/// Checks every axiom on basis tuples; see [`Strictness`] for the
/// representation axioms.
pub fn validate_hlr(h: &HlrAlgebra, strictness: Strictness) -> ValidationReport {
    let na = h.dim_a();
    let nl = h.dim_l();
    let psi = h.psi().matrix();
    let phi = h.phi().matrix();
    let ea = |i: usize| unit_vector(na, i);
    let el = |i: usize| unit_vector(nl, i);
    let psi_l: Vec<Vector> = (0..nl).map(|i| psi.column(i)).collect();
    let phi_a: Vec<Vector> = (0..na).map(|i| phi.column(i)).collect();
    let mul = |i: usize, j: usize| h.a.mul.basis_product(i, j).to_vec();
    let br = |i: usize, j: usize| h.l.bracket.basis_product(i, j).to_vec();
    let act = |i: usize, j: usize| h.action.basis_product(i, j).to_vec();
    let rho = |i: usize, j: usize| h.anchor.basis_product(i, j).to_vec();
    let rep_status = match strictness {
        Strictness::Strict => CheckStatus::Fail,
        Strictness::Lenient => CheckStatus::Warn,
    };
    let mut report = CheckReport::default();

    report.push(identity_check(
        "A.commutative",
        "a_i a_j = a_j a_i",
        CheckStatus::Fail,
        pairs(na, na).map(|(i, j)| (vec![i, j], mul(i, j), mul(j, i))),
    ));
    report.push(identity_check(
        "A.associative",
        "(a_i a_j) a_k = a_i (a_j a_k)",
        CheckStatus::Fail,
        triples(na, na, na).map(|(i, j, k)| {
            (
                vec![i, j, k],
                h.a.mul(&mul(i, j), &ea(k)),
                h.a.mul(&ea(i), &mul(j, k)),
            )
        }),
    ));
    report.push(identity_check(
        "phi.multiplicative",
        "phi(a_i a_j) = phi(a_i) phi(a_j)",
        CheckStatus::Fail,
        pairs(na, na).map(|(i, j)| {
            (
                vec![i, j],
                phi.apply(&mul(i, j)),
                h.a.mul(&phi_a[i], &phi_a[j]),
            )
        }),
    ));
    report.push(identity_check(
        "L.hom_leibniz",
        "[psi x_i, [x_j, x_k]] = [[x_i, x_j], psi x_k] + [psi x_j, [x_i, x_k]]",
        CheckStatus::Fail,
        triples(nl, nl, nl).map(|(i, j, k)| {
            let lhs = h.bracket(&psi_l[i], &br(j, k));
            let rhs = add_vectors(
                &h.bracket(&br(i, j), &psi_l[k]),
                &h.bracket(&psi_l[j], &br(i, k)),
            );
            (vec![i, j, k], lhs, rhs)
        }),
    ));
    report.push(identity_check(
        "psi.multiplicative",
        "psi[x_i, x_j] = [psi x_i, psi x_j]",
        CheckStatus::Fail,
        pairs(nl, nl).map(|(i, j)| {
            (
                vec![i, j],
                psi.apply(&br(i, j)),
                h.bracket(&psi_l[i], &psi_l[j]),
            )
        }),
    ));
    let skew = identity_check(
        "L.skew_symmetric",
        "[x_i, x_j] = -[x_j, x_i] (informational)",
        CheckStatus::Info,
        pairs(nl, nl).map(|(i, j)| {
            (
                vec![i, j],
                br(i, j),
                scale_vector(&-Scalar::one(), &br(j, i)),
            )
        }),
    );
    report.push(skew);
    report.push(identity_check(
        "module.associative",
        "(a_i a_j) . x_k = a_i . (a_j . x_k)",
        CheckStatus::Fail,
        triples(na, na, nl).map(|(i, j, k)| {
            (
                vec![i, j, k],
                h.act(&mul(i, j), &el(k)),
                h.act(&ea(i), &act(j, k)),
            )
        }),
    ));
    report.push(identity_check(
        "psi.action",
        "psi(a_i . x_j) = phi(a_i) . psi(x_j)",
        CheckStatus::Fail,
        pairs(na, nl).map(|(i, j)| {
            (
                vec![i, j],
                psi.apply(&act(i, j)),
                h.act(&phi_a[i], &psi_l[j]),
            )
        }),
    ));
    report.push(identity_check(
        "anchor.phi_derivation",
        "rho(x_i)(a_j a_k) = phi(a_j) rho(x_i)(a_k) + phi(a_k) rho(x_i)(a_j)",
        CheckStatus::Fail,
        triples(nl, na, na).map(|(i, j, k)| {
            let lhs = h.anchor_apply(&el(i), &mul(j, k));
            let rhs = add_vectors(
                &h.a.mul(&phi_a[j], &rho(i, k)),
                &h.a.mul(&phi_a[k], &rho(i, j)),
            );
            (vec![i, j, k], lhs, rhs)
        }),
    ));
    report.push(identity_check(
        "anchor.a_linear",
        "rho(a_i . x_j)(a_k) = phi(a_i) rho(x_j)(a_k)",
        CheckStatus::Fail,
        triples(na, nl, na).map(|(i, j, k)| {
            (
                vec![i, j, k],
                h.anchor_apply(&act(i, j), &ea(k)),
                h.a.mul(&phi_a[i], &rho(j, k)),
            )
        }),
    ));
    report.push(identity_check(
        "leibniz_rule",
        "[x_i, a_j . x_k] = phi(a_j) . [x_i, x_k] + rho(x_i)(a_j) . psi(x_k)",
        CheckStatus::Fail,
        triples(nl, na, nl).map(|(i, j, k)| {
            let lhs = h.bracket(&el(i), &act(j, k));
            let rhs = add_vectors(
                &h.act(&phi_a[j], &br(i, k)),
                &h.act(&rho(i, j), &psi_l[k]),
            );
            (vec![i, j, k], lhs, rhs)
        }),
    ));
    report.push(identity_check(
        "rep.twist",
        "rho(psi x_i)(phi a_j) = phi(rho(x_i)(a_j))",
        rep_status,
        pairs(nl, na).map(|(i, j)| {
            (
                vec![i, j],
                h.anchor_apply(&psi_l[i], &phi_a[j]),
                phi.apply(&rho(i, j)),
            )
        }),
    ));
    report.push(identity_check(
        "rep.bracket",
        "rho([x_i, x_j])(phi a_k) = rho(psi x_i)(rho(x_j)(a_k)) - rho(psi x_j)(rho(x_i)(a_k))",
        rep_status,
        triples(nl, nl, na).map(|(i, j, k)| {
            let lhs = h.anchor_apply(&br(i, j), &phi_a[k]);
            let rhs = sub_vectors(
                &h.anchor_apply(&psi_l[i], &rho(j, k)),
                &h.anchor_apply(&psi_l[j], &rho(i, k)),
            );
            (vec![i, j, k], lhs, rhs)
        }),
    ));

    let mut regular = Check::pass("regular", "psi and phi invertible when flagged regular");
    if h.flags.regular {
        let mut missing = Vec::new();
        if !h.psi().is_invertible() {
            missing.push("psi");
        }
        if !h.phi().is_invertible() {
            missing.push("phi");
        }
        if !missing.is_empty() {
            regular = regular
                .with_status(CheckStatus::Fail)
                .with_note(format!("{} not invertible", missing.join(" and ")));
        }
    } else {
        regular = regular
            .with_status(CheckStatus::Info)
            .with_note("not flagged regular");
    }
    report.push(regular);

    let mut unital = Check::pass("A.unit", "A has a unit when flagged unital");
    if h.flags.unital {
        if h.a.unit().is_none() {
            unital = unital
                .with_status(CheckStatus::Fail)
                .with_note("no unit element exists");
        }
    } else {
        unital = unital
            .with_status(CheckStatus::Info)
            .with_note("not flagged unital");
    }
    report.push(unital);
    report
}

/// `true` if every vector of `space` is sent into `target` by `m`.
pub fn maps_into(m: &Matrix, space: &Subspace, target: &Subspace) -> bool {
    space.basis().iter().all(|v| target.contains(&m.apply(v)))
}

/// Helper for reports: first vector of `vectors` outside `target`.
pub fn first_outside<'a, I>(target: &Subspace, vectors: I) -> Option<(Vec<usize>, Vector)>
where
    I: IntoIterator<Item = (Vec<usize>, Vector)> + 'a,
{
    vectors
        .into_iter()
        .find(|(_, v)| !is_zero_vector(v) && !target.contains(v))
}
