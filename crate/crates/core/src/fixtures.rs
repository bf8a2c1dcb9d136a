//! Bundled example algebras.

use crate::construct::twist_by_endomorphism;
use crate::linalg::{frac, int, unit_vector, Matrix, Subspace};
use crate::model::{CommutativeAlgebra, Flags, HlrAlgebra, HomLeibnizAlgebra, Labels};
use crate::tensor::StructureConstants;

type Entry = (usize, usize, usize, i64);

fn constants(n1: usize, n2: usize, n3: usize, entries: &[Entry]) -> StructureConstants {
    let mut t = StructureConstants::zeros(n1, n2, n3);
    for &(i, j, k, x) in entries {
        t.set(i, j, k, int(x));
    }
    t
}

struct Spec<'a> {
    l: &'a [&'a str],
    a: &'a [&'a str],
    bracket: &'a [Entry],
    mul: &'a [Entry],
    action: &'a [Entry],
    anchor: &'a [Entry],
    h: Option<&'a [usize]>,
}

fn build(spec: Spec<'_>) -> HlrAlgebra {
    let (nl, na) = (spec.l.len(), spec.a.len());
    let a = CommutativeAlgebra::new(constants(na, na, na, spec.mul), Matrix::identity(na))
        .expect("fixture dimensions");
    let l = HomLeibnizAlgebra::new(constants(nl, nl, nl, spec.bracket), Matrix::identity(nl))
        .expect("fixture dimensions");
    let flags = Flags {
        regular: true,
        unital: a.unit().is_some(),
    };
    let h = spec
        .h
        .map(|idx| Subspace::span(nl, idx.iter().map(|&i| unit_vector(nl, i))));
    HlrAlgebra::new(
        a,
        l,
        constants(na, nl, nl, spec.action),
        constants(nl, na, na, spec.anchor),
        flags,
    )
    .expect("fixture dimensions")
    .with_labels(Labels {
        l: spec.l.iter().map(|s| s.to_string()).collect(),
        a: spec.a.iter().map(|s| s.to_string()).collect(),
    })
    .with_declared_h(h)
}

/// `1 . x = x` on every basis vector of a one-dimensional `A`.
fn unit_action(nl: usize) -> Vec<Entry> {
    (0..nl).map(|j| (0, j, j, 1)).collect()
}

/// Two-dimensional abelian `L` over `A = Q`.
pub fn fix_a() -> HlrAlgebra {
    build(Spec {
        l: &["x", "y"],
        a: &["1"],
        bracket: &[],
        mul: &[(0, 0, 0, 1)],
        action: &unit_action(2),
        anchor: &[],
        h: Some(&[0, 1]),
    })
}

/// `[h, e] = e`, `[e, h] = -e` over `A = Q`.
pub fn fix_b() -> HlrAlgebra {
    build(Spec {
        l: &["h", "e"],
        a: &["1"],
        bracket: &[(0, 1, 1, 1), (1, 0, 1, -1)],
        mul: &[(0, 0, 0, 1)],
        action: &unit_action(2),
        anchor: &[],
        h: Some(&[0]),
    })
}

/// Non-Lie Leibniz algebra `[x, x] = y`.
pub fn fix_c() -> HlrAlgebra {
    build(Spec {
        l: &["x", "y"],
        a: &["1"],
        bracket: &[(0, 0, 1, 1)],
        mul: &[(0, 0, 0, 1)],
        action: &unit_action(2),
        anchor: &[],
        h: None,
    })
}

/// [`fix_b`] twisted by `psi = diag(1, 2)`.
pub fn fix_d() -> HlrAlgebra {
    let f = Matrix::diagonal(&[int(1), int(2)]);
    twist_by_endomorphism(&fix_b(), &Matrix::identity(1), &f).expect("diagonal twist is an endomorphism")
}

/// `sl2` over the dual numbers `Q[t]/(t^2)` with `rho(h)(t) = t`.
pub fn fix_e() -> HlrAlgebra {
    build(Spec {
        l: &["h", "e", "f"],
        a: &["1", "t"],
        bracket: &[
            (0, 1, 1, 1),
            (1, 0, 1, -1),
            (0, 2, 2, -1),
            (2, 0, 2, 1),
            (1, 2, 0, 1),
            (2, 1, 0, -1),
        ],
        mul: &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
        action: &unit_action(3),
        anchor: &[(0, 1, 1, 1)],
        h: Some(&[0]),
    })
}

/// A diagonal automorphism `(g, f)` of [`fix_e`]: `g(t) = 3t`, `f = diag(1, 2, 1/2)`.
pub fn fix_e_automorphism() -> (Matrix, Matrix) {
    (
        Matrix::diagonal(&[int(1), int(3)]),
        Matrix::diagonal(&[int(1), int(2), frac(1, 2)]),
    )
}

/// A split extension of [`fix_c`]: `h` acts on `x` with weight 1 and on `y = [x, x]` with weight 2.
pub fn fix_c_split() -> HlrAlgebra {
    build(Spec {
        l: &["h", "x", "y"],
        a: &["1"],
        bracket: &[(0, 1, 1, 1), (1, 0, 1, -1), (1, 1, 2, 1), (0, 2, 2, 2)],
        mul: &[(0, 0, 0, 1)],
        action: &unit_action(3),
        anchor: &[],
        h: Some(&[0]),
    })
}

/// Hemisemidirect product: `[h, u] = u`, `[h, w] = -w`, everything else zero.
pub fn fix_j() -> HlrAlgebra {
    build(Spec {
        l: &["h", "u", "w"],
        a: &["1"],
        bracket: &[(0, 1, 1, 1), (0, 2, 2, -1)],
        mul: &[(0, 0, 0, 1)],
        action: &unit_action(3),
        anchor: &[],
        h: Some(&[0]),
    })
}

/// [`fix_b`] over the dual numbers with `rho(h)(t) = t` and `t` acting by zero.
pub fn fix_w() -> HlrAlgebra {
    build(Spec {
        l: &["h", "e"],
        a: &["1", "t"],
        bracket: &[(0, 1, 1, 1), (1, 0, 1, -1)],
        mul: &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
        action: &unit_action(2),
        anchor: &[(0, 1, 1, 1)],
        h: Some(&[0]),
    })
}

/// Two commuting copies of [`fix_b`] over `A = Q`.
pub fn two_block_b() -> HlrAlgebra {
    build(Spec {
        l: &["h1", "e1", "h2", "e2"],
        a: &["1"],
        bracket: &[(0, 1, 1, 1), (1, 0, 1, -1), (2, 3, 3, 1), (3, 2, 3, -1)],
        mul: &[(0, 0, 0, 1)],
        action: &unit_action(4),
        anchor: &[],
        h: Some(&[0, 2]),
    })
}

/// [`fix_w`] twice, over the product of two copies of the dual numbers.
pub fn two_block_w() -> HlrAlgebra {
    build(Spec {
        l: &["h1", "e1", "h2", "e2"],
        a: &["1_1", "t_1", "1_2", "t_2"],
        bracket: &[(0, 1, 1, 1), (1, 0, 1, -1), (2, 3, 3, 1), (3, 2, 3, -1)],
        mul: &[
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (1, 0, 1, 1),
            (2, 2, 2, 1),
            (2, 3, 3, 1),
            (3, 2, 3, 1),
        ],
        action: &[(0, 0, 0, 1), (0, 1, 1, 1), (2, 2, 2, 1), (2, 3, 3, 1)],
        anchor: &[(0, 1, 1, 1), (2, 3, 3, 1)],
        h: Some(&[0, 2]),
    })
}

/// Every bundled fixture with its name.
pub fn named() -> Vec<(&'static str, HlrAlgebra)> {
    vec![
        ("fix-a", fix_a()),
        ("fix-b", fix_b()),
        ("fix-c", fix_c()),
        ("fix-d", fix_d()),
        ("fix-e", fix_e()),
        ("fix-c-split", fix_c_split()),
        ("fix-j", fix_j()),
        ("fix-w", fix_w()),
        ("two-block-b", two_block_b()),
        ("two-block-w", two_block_w()),
    ]
}

pub fn all() -> Vec<HlrAlgebra> {
    named().into_iter().map(|(_, h)| h).collect()
}

pub fn by_name(name: &str) -> Option<HlrAlgebra> {
    named().into_iter().find(|(n, _)| *n == name).map(|(_, h)| h)
}

/// Fixtures with a declared Cartan subalgebra.
pub fn split_named() -> Vec<(&'static str, HlrAlgebra)> {
    named().into_iter().filter(|(_, h)| h.declared_h.is_some()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_hlr, Strictness};

    #[test]
    fn every_fixture_validates_leniently() {
        for (name, h) in named() {
            let r = validate_hlr(&h, Strictness::Lenient);
            assert!(r.passed(), "{name}: {:?}", r.first_failure());
        }
    }

    #[test]
    fn only_fix_e_needs_leniency() {
        for (name, h) in named() {
            let strict = validate_hlr(&h, Strictness::Strict).passed();
            assert_eq!(strict, name != "fix-e", "{name}");
        }
    }

    #[test]
    fn fix_d_has_doubled_bracket() {
        let d = fix_d();
        assert_eq!(d.l.bracket.get(0, 1, 1), &int(2));
        assert_eq!(d.psi().matrix(), &Matrix::diagonal(&[int(1), int(2)]));
    }
}
