//! Connections of roots and of weights, by graph search and by literal enumeration.
//!
//! For roots, the partial sums obey `s_1 = z_1`, `s_{i+1} = (s_i + z_{i+1}) psi^-1`,
//! so a connection is a walk whose intermediate states stay in the allowed
//! set. A shortest walk never repeats a state, which bounds chain length by
//! the number of states plus one.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::roots::{compose_psi_power, RootDecomposition, RootFunctional, WeightDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("{0} is not in the {1} set")]
    NotInSet(RootFunctional, &'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConnectionKind {
    /// `to = sign * from psi^start_exponent` (roots) or `to = sign * from` (weights).
    Direct,
    /// A family `elements` of length at least two.
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Root,
    Weight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionChain {
    pub from: RootFunctional,
    pub to: RootFunctional,
    pub kind: ConnectionKind,
    pub elements: Vec<RootFunctional>,
    /// Sign of the endpoint match.
    pub sign: i8,
    /// `k` with `elements[0] = from psi^k`, or `z` for a direct match.
    pub start_exponent: i64,
    /// `m` with final sum `sign * to psi^-m`.
    pub end_exponent: i64,
}

/// Allowed steps and allowed intermediate sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSets {
    pub steps: BTreeSet<RootFunctional>,
    pub intermediate: BTreeSet<RootFunctional>,
}

fn plus_minus<'a, I: IntoIterator<Item = &'a RootFunctional>>(xs: I) -> BTreeSet<RootFunctional> {
    xs.into_iter().flat_map(|x| [x.clone(), -x]).collect()
}

impl ConnectionSets {
    /// Steps in `+-Lambda u +-Gamma`, intermediate sums in `+-Gamma`.
    pub fn roots(rd: &RootDecomposition, wd: &WeightDecomposition) -> Self {
        Self::roots_restricted(&rd.gamma(), wd)
    }

    /// Same with `Gamma` replaced by a subset (used for the not-J variant).
    pub fn roots_restricted(subset: &[RootFunctional], wd: &WeightDecomposition) -> Self {
        let intermediate = plus_minus(subset);
        let mut steps = plus_minus(wd.weights.keys());
        steps.extend(intermediate.iter().cloned());
        ConnectionSets { steps, intermediate }
    }

    /// Steps and intermediate sums in `+-Lambda u +-Gamma`.
    pub fn weights(rd: &RootDecomposition, wd: &WeightDecomposition) -> Self {
        let mut all = plus_minus(wd.weights.keys());
        all.extend(plus_minus(rd.roots.keys()));
        ConnectionSets {
            steps: all.clone(),
            intermediate: all,
        }
    }
}

/// Exponents `0, 1, -1, 2, -2, ...` up to `n`.
fn exponents(n: i64) -> Vec<i64> {
    let mut out = vec![0];
    for k in 1..=n {
        out.push(k);
        out.push(-k);
    }
    out
}

/// Bound on psi-exponents: every psi-orbit inside `Gamma` has at most `|Gamma|` elements.
pub fn exponent_bound(rd: &RootDecomposition) -> i64 {
    rd.roots.len().max(1) as i64
}

/// Graph search for a root connection from `gamma` to `xi` under `sets`.
pub fn root_connection(
    gamma: &RootFunctional,
    xi: &RootFunctional,
    rd: &RootDecomposition,
    sets: &ConnectionSets,
) -> Option<ConnectionChain> {
    let n = exponent_bound(rd);
    for z in exponents(n) {
        let moved = compose_psi_power(gamma, z, rd);
        for sign in [1i8, -1] {
            let candidate = if sign == 1 { moved.clone() } else { -&moved };
            if candidate == *xi {
                return Some(ConnectionChain {
                    from: gamma.clone(),
                    to: xi.clone(),
                    kind: ConnectionKind::Direct,
                    elements: Vec::new(),
                    sign,
                    start_exponent: z,
                    end_exponent: 0,
                });
            }
        }
    }
    // Targets: sign * xi psi^-m.
    let mut targets: BTreeMap<RootFunctional, (i8, i64)> = BTreeMap::new();
    for m in exponents(n) {
        let t = compose_psi_power(xi, -m, rd);
        targets.entry(t.clone()).or_insert((1, m));
        targets.entry(-&t).or_insert((-1, m));
    }
    // State -> (previous state, step taken); start states carry their exponent.
    let mut parent: BTreeMap<RootFunctional, Option<(RootFunctional, RootFunctional)>> = BTreeMap::new();
    let mut start_k: BTreeMap<RootFunctional, i64> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for k in exponents(n) {
        let s = compose_psi_power(gamma, k, rd);
        if !parent.contains_key(&s) {
            parent.insert(s.clone(), None);
            start_k.insert(s.clone(), k);
            queue.push_back(s);
        }
    }
    while let Some(state) = queue.pop_front() {
        for step in &sets.steps {
            let next = compose_psi_power(&(&state + step), -1, rd);
            if let Some(&(sign, m)) = targets.get(&next) {
                let mut elements = vec![step.clone()];
                let mut cur = state.clone();
                while let Some(Some((prev, z))) = parent.get(&cur) {
                    elements.push(z.clone());
                    cur = prev.clone();
                }
                elements.push(cur.clone());
                elements.reverse();
                return Some(ConnectionChain {
                    from: gamma.clone(),
                    to: xi.clone(),
                    kind: ConnectionKind::Chain,
                    elements,
                    sign,
                    start_exponent: start_k[&cur],
                    end_exponent: m,
                });
            }
            if sets.intermediate.contains(&next) && !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((state.clone(), step.clone())));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Graph search for a weight connection from `alpha` to `beta`.
pub fn weight_connection(
    alpha: &RootFunctional,
    beta: &RootFunctional,
    sets: &ConnectionSets,
) -> Option<ConnectionChain> {
    for sign in [1i8, -1] {
        let candidate = if sign == 1 { alpha.clone() } else { -alpha };
        if candidate == *beta {
            return Some(ConnectionChain {
                from: alpha.clone(),
                to: beta.clone(),
                kind: ConnectionKind::Direct,
                elements: Vec::new(),
                sign,
                start_exponent: 0,
                end_exponent: 0,
            });
        }
    }
    let neg_beta = -beta;
    let mut parent: BTreeMap<RootFunctional, Option<(RootFunctional, RootFunctional)>> = BTreeMap::new();
    parent.insert(alpha.clone(), None);
    let mut queue = VecDeque::from([alpha.clone()]);
    while let Some(state) = queue.pop_front() {
        for step in &sets.steps {
            let next = &state + step;
            if next == *beta || next == neg_beta {
                let mut elements = vec![step.clone()];
                let mut cur = state.clone();
                while let Some(Some((prev, z))) = parent.get(&cur) {
                    elements.push(z.clone());
                    cur = prev.clone();
                }
                elements.push(cur);
                elements.reverse();
                return Some(ConnectionChain {
                    from: alpha.clone(),
                    to: beta.clone(),
                    kind: ConnectionKind::Chain,
                    elements,
                    sign: if next == *beta { 1 } else { -1 },
                    start_exponent: 0,
                    end_exponent: 0,
                });
            }
            if sets.intermediate.contains(&next) && !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((state.clone(), step.clone())));
                queue.push_back(next);
            }
        }
    }
    None
}

pub fn roots_connected(
    gamma: &RootFunctional,
    xi: &RootFunctional,
    rd: &RootDecomposition,
    wd: &WeightDecomposition,
) -> Result<(bool, Option<ConnectionChain>), ConnectionError> {
    for f in [gamma, xi] {
        if !rd.contains(f) {
            return Err(ConnectionError::NotInSet(f.clone(), "root"));
        }
    }
    let chain = root_connection(gamma, xi, rd, &ConnectionSets::roots(rd, wd));
    Ok((chain.is_some(), chain))
}

pub fn weights_connected(
    alpha: &RootFunctional,
    beta: &RootFunctional,
    wd: &WeightDecomposition,
    rd: &RootDecomposition,
) -> Result<(bool, Option<ConnectionChain>), ConnectionError> {
    for f in [alpha, beta] {
        if !wd.contains(f) {
            return Err(ConnectionError::NotInSet(f.clone(), "weight"));
        }
    }
    let chain = weight_connection(alpha, beta, &ConnectionSets::weights(rd, wd));
    Ok((chain.is_some(), chain))
}

/// `i`-th partial sum of a root family, recomputed from scratch:
/// `z_1 psi^-i + z_2 psi^-i + z_3 psi^-(i-1) + ... + z_{i+1} psi^-1`.
fn literal_partial_sum(zetas: &[RootFunctional], i: usize, rd: &RootDecomposition) -> RootFunctional {
    let i = i as i64;
    let mut sum = compose_psi_power(&zetas[0], -i, rd);
    for (j, z) in zetas.iter().enumerate().skip(1).take(i as usize) {
        // zeta_{j+1} (1-based) carries psi^-(i + 1 - j).
        let e = i + 1 - j as i64;
        sum = &sum + &compose_psi_power(z, -e.max(1), rd);
    }
    sum
}

/// Literal check of a root family against both clauses, with exponents in `[-n, n]`.
pub fn literal_root_family(
    gamma: &RootFunctional,
    xi: &RootFunctional,
    zetas: &[RootFunctional],
    rd: &RootDecomposition,
    sets: &ConnectionSets,
) -> bool {
    let n = exponent_bound(rd);
    let len = zetas.len();
    if len < 2 || !zetas[1..].iter().all(|z| sets.steps.contains(z)) {
        return false;
    }
    if !(-n..=n).any(|k| compose_psi_power(gamma, k, rd) == zetas[0]) {
        return false;
    }
    for i in 1..len - 1 {
        if !sets.intermediate.contains(&literal_partial_sum(zetas, i, rd)) {
            return false;
        }
    }
    let last = literal_partial_sum(zetas, len - 1, rd);
    (-n..=n).any(|m| {
        let t = compose_psi_power(xi, -m, rd);
        last == t || last == -&t
    })
}

/// Literal check of a weight family.
pub fn literal_weight_family(
    alpha: &RootFunctional,
    beta: &RootFunctional,
    sigmas: &[RootFunctional],
    sets: &ConnectionSets,
) -> bool {
    if sigmas.len() < 2 || sigmas[0] != *alpha || !sigmas.iter().all(|s| sets.steps.contains(s)) {
        return false;
    }
    let mut sum = sigmas[0].clone();
    for (i, s) in sigmas.iter().enumerate().skip(1) {
        sum = &sum + s;
        if i < sigmas.len() - 1 && !sets.intermediate.contains(&sum) {
            return false;
        }
    }
    sum == *beta || sum == -beta
}

/// Replays a witness chain through the literal clause checks.
pub fn replay(chain: &ConnectionChain, mode: Mode, rd: &RootDecomposition, sets: &ConnectionSets) -> bool {
    match (mode, chain.kind) {
        (Mode::Root, ConnectionKind::Direct) => {
            let moved = compose_psi_power(&chain.from, chain.start_exponent, rd);
            let moved = if chain.sign == 1 { moved } else { -moved };
            moved == chain.to
        }
        (Mode::Weight, ConnectionKind::Direct) => {
            (chain.sign == 1 && chain.from == chain.to) || (chain.sign == -1 && -&chain.from == chain.to)
        }
        (Mode::Root, ConnectionKind::Chain) => literal_root_family(&chain.from, &chain.to, &chain.elements, rd, sets),
        (Mode::Weight, ConnectionKind::Chain) => literal_weight_family(&chain.from, &chain.to, &chain.elements, sets),
    }
}

/// Exhaustive enumeration of families of length at most `max_len`,
/// checking every clause verbatim with all psi-powers recomputed.
pub fn brute_force_connected(
    from: &RootFunctional,
    to: &RootFunctional,
    max_len: usize,
    mode: Mode,
    rd: &RootDecomposition,
    sets: &ConnectionSets,
) -> bool {
    let n = exponent_bound(rd);
    match mode {
        Mode::Root => {
            for z in -n..=n {
                let moved = compose_psi_power(from, z, rd);
                if moved == *to || -&moved == *to {
                    return true;
                }
            }
            let firsts: BTreeSet<RootFunctional> = (-n..=n).map(|k| compose_psi_power(from, k, rd)).collect();
            let steps: Vec<RootFunctional> = sets.steps.iter().cloned().collect();
            firsts.into_iter().any(|first| {
                let mut family = vec![first];
                extend_root(from, to, &mut family, max_len, &steps, rd, sets)
            })
        }
        Mode::Weight => {
            if from == to || -from == *to {
                return true;
            }
            let steps: Vec<RootFunctional> = sets.steps.iter().cloned().collect();
            let mut family = vec![from.clone()];
            extend_weight(from, to, &mut family, max_len, &steps, sets)
        }
    }
}

fn extend_root(
    gamma: &RootFunctional,
    xi: &RootFunctional,
    family: &mut Vec<RootFunctional>,
    max_len: usize,
    steps: &[RootFunctional],
    rd: &RootDecomposition,
    sets: &ConnectionSets,
) -> bool {
    if family.len() >= max_len {
        return false;
    }
    for s in steps {
        family.push(s.clone());
        if literal_root_family(gamma, xi, family, rd, sets) {
            family.pop();
            return true;
        }
        // The new prefix may continue only if its last partial sum is allowed.
        let i = family.len() - 1;
        if sets.intermediate.contains(&literal_partial_sum(family, i, rd))
            && extend_root(gamma, xi, family, max_len, steps, rd, sets)
        {
            family.pop();
            return true;
        }
        family.pop();
    }
    false
}

fn extend_weight(
    alpha: &RootFunctional,
    beta: &RootFunctional,
    family: &mut Vec<RootFunctional>,
    max_len: usize,
    steps: &[RootFunctional],
    sets: &ConnectionSets,
) -> bool {
    if family.len() >= max_len {
        return false;
    }
    for s in steps {
        family.push(s.clone());
        if literal_weight_family(alpha, beta, family, sets) {
            family.pop();
            return true;
        }
        let sum = family.iter().skip(1).fold(family[0].clone(), |acc, x| &acc + x);
        if sets.intermediate.contains(&sum) && extend_weight(alpha, beta, family, max_len, steps, sets) {
            family.pop();
            return true;
        }
        family.pop();
    }
    false
}

/// Equivalence classes generated by a pairwise relation, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionPartition {
    pub elements: Vec<RootFunctional>,
    pub classes: Vec<Vec<RootFunctional>>,
    /// Direct witness for every related ordered pair.
    pub direct: BTreeMap<(RootFunctional, RootFunctional), ConnectionChain>,
    /// For every ordered pair in one class, a path of direct witnesses.
    pub witnesses: BTreeMap<(RootFunctional, RootFunctional), Vec<ConnectionChain>>,
    pub relation_symmetric: bool,
    pub relation_transitive: bool,
}

impl ConnectionPartition {
    pub fn class_of(&self, f: &RootFunctional) -> Option<&Vec<RootFunctional>> {
        self.classes.iter().find(|c| c.contains(f))
    }

    pub fn same_class(&self, a: &RootFunctional, b: &RootFunctional) -> bool {
        self.class_of(a).is_some_and(|c| c.contains(b))
    }

    fn build<F>(elements: Vec<RootFunctional>, mut relate: F) -> Self
    where
        F: FnMut(&RootFunctional, &RootFunctional) -> Option<ConnectionChain>,
    {
        let mut direct = BTreeMap::new();
        for a in &elements {
            for b in &elements {
                if let Some(c) = relate(a, b) {
                    direct.insert((a.clone(), b.clone()), c);
                }
            }
        }
        let related = |a: &RootFunctional, b: &RootFunctional| direct.contains_key(&(a.clone(), b.clone()));
        let relation_symmetric = elements
            .iter()
            .all(|a| elements.iter().all(|b| !related(a, b) || related(b, a)));
        let relation_transitive = elements.iter().all(|a| {
            elements.iter().all(|b| {
                !related(a, b) || elements.iter().all(|c| !related(b, c) || related(a, c))
            })
        });
        // Components of the symmetrized relation, with BFS paths as witnesses.
        let mut classes: Vec<Vec<RootFunctional>> = Vec::new();
        let mut witnesses = BTreeMap::new();
        let mut seen: BTreeSet<RootFunctional> = BTreeSet::new();
        for start in &elements {
            if seen.contains(start) {
                continue;
            }
            let mut class = Vec::new();
            let mut queue = VecDeque::from([start.clone()]);
            seen.insert(start.clone());
            while let Some(u) = queue.pop_front() {
                class.push(u.clone());
                for v in &elements {
                    if !seen.contains(v) && (related(&u, v) || related(v, &u)) {
                        seen.insert(v.clone());
                        queue.push_back(v.clone());
                    }
                }
            }
            class.sort();
            for a in &class {
                let paths = bfs_paths(a, &class, &direct);
                for (b, path) in paths {
                    witnesses.insert((a.clone(), b), path);
                }
            }
            classes.push(class);
        }
        classes.sort();
        ConnectionPartition {
            elements,
            classes,
            direct,
            witnesses,
            relation_symmetric,
            relation_transitive,
        }
    }
}

fn bfs_paths(
    from: &RootFunctional,
    class: &[RootFunctional],
    direct: &BTreeMap<(RootFunctional, RootFunctional), ConnectionChain>,
) -> BTreeMap<RootFunctional, Vec<ConnectionChain>> {
    let mut paths: BTreeMap<RootFunctional, Vec<ConnectionChain>> = BTreeMap::new();
    paths.insert(from.clone(), Vec::new());
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(u) = queue.pop_front() {
        for v in class {
            if paths.contains_key(v) {
                continue;
            }
            let edge = direct
                .get(&(u.clone(), v.clone()))
                .or_else(|| direct.get(&(v.clone(), u.clone())));
            if let Some(chain) = edge {
                let mut p = paths[&u].clone();
                p.push(chain.clone());
                paths.insert(v.clone(), p);
                queue.push_back(v.clone());
            }
        }
    }
    paths
}

pub fn root_partition(rd: &RootDecomposition, wd: &WeightDecomposition) -> ConnectionPartition {
    let sets = ConnectionSets::roots(rd, wd);
    ConnectionPartition::build(rd.gamma(), |a, b| root_connection(a, b, rd, &sets))
}

/// Partition of `subset` under the restricted relation.
pub fn restricted_root_partition(
    subset: &[RootFunctional],
    rd: &RootDecomposition,
    wd: &WeightDecomposition,
) -> ConnectionPartition {
    let sets = ConnectionSets::roots_restricted(subset, wd);
    ConnectionPartition::build(subset.to_vec(), |a, b| root_connection(a, b, rd, &sets))
}

pub fn weight_partition(wd: &WeightDecomposition, rd: &RootDecomposition) -> ConnectionPartition {
    let sets = ConnectionSets::weights(rd, wd);
    ConnectionPartition::build(wd.lambda(), |a, b| weight_connection(a, b, &sets))
}

/// Number of distinct states available to a search, `|+-Gamma u +-Lambda|`.
pub fn state_count(rd: &RootDecomposition, wd: &WeightDecomposition) -> usize {
    let mut all = plus_minus(rd.roots.keys());
    all.extend(plus_minus(wd.weights.keys()));
    all.len()
}
