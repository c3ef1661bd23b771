//! The decision procedures: the unit subgroup `H`, the graph of `f`,
//! the Azumaya / hereditary / maximal verdicts, restriction and
//! localization, and the left-order computation used as an independent
//! check on the hereditary criterion.

use crate::group::{GaloisSetup, GroupError, IdealAction, Subgroup};
use crate::valuation::{radical_profile, lemma_check, CocycleError, RadicalProfile, ValCocycle, ValVector};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("SubgroupClosureFailure: H is not closed (internal inconsistency)")]
    SubgroupClosureFailure,
    #[error("NotPartialOrder: the coset relation violates {axiom}")]
    NotPartialOrder { axiom: &'static str },
    #[error("NotWellDefined: relation depends on coset representatives")]
    NotWellDefined,
    #[error("NotDVR: operation requires r = 1, setup has r = {r}")]
    NotDVR { r: usize },
    #[error("PrimaryNotAsserted: caller must assert primarity")]
    PrimaryNotAsserted,
    #[error("NotAnOrbit: the ideal set is not an orbit of the subgroup")]
    NotAnOrbit,
    #[error("InternalInconsistency: {left} and {right} disagree")]
    InternalInconsistency { left: &'static str, right: &'static str },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

/// `H = {sigma : f(sigma, sigma^{-1}) in U(S)}`.
pub fn compute_h(f: &ValCocycle) -> Result<Subgroup, ClassifyError> {
    let members: Vec<usize> = (0..f.order())
        .filter(|&sigma| f.vals[sigma][f.setup.group.inverse(sigma)].is_zero())
        .collect();
    Subgroup::validate(members, &f.setup.group).map_err(|_| ClassifyError::SubgroupClosureFailure)
}

/// The partial order on `G/H` with `sigma H <= tau H` iff
/// `f(sigma, sigma^{-1} tau)` is a unit of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfF {
    /// Left cosets of `H`, each sorted; the canonical representative of a
    /// coset is its smallest member. Coset 0 is `H` itself.
    pub cosets: Vec<Vec<usize>>,
    pub leq: Vec<Vec<bool>>,
    /// Cover edges `(lower, upper)` of the Hasse diagram, transitively
    /// reduced, sorted.
    pub hasse: Vec<(usize, usize)>,
}

impl GraphOfF {
    pub fn least(&self) -> usize {
        0
    }
}

pub fn graph_of_f(f: &ValCocycle) -> Result<GraphOfF, ClassifyError> {
    let h = compute_h(f)?;
    let group = &f.setup.group;
    let cosets = h.left_cosets(group);
    let k = cosets.len();
    let rel = |a: usize, b: usize| {
        let ainv = group.inverse(a);
        f.vals[a][group.mul(ainv, b)].is_zero()
    };
    let mut leq = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            let expected = rel(cosets[i][0], cosets[j][0]);
            // Well-definedness: every representative pair must agree.
            for &a in &cosets[i] {
                for &b in &cosets[j] {
                    if rel(a, b) != expected {
                        return Err(ClassifyError::NotWellDefined);
                    }
                }
            }
            leq[i][j] = expected;
        }
    }
    for i in 0..k {
        if !leq[i][i] {
            return Err(ClassifyError::NotPartialOrder { axiom: "reflexivity" });
        }
        if !leq[0][i] {
            return Err(ClassifyError::NotPartialOrder { axiom: "least element" });
        }
        for j in 0..k {
            if i != j && leq[i][j] && leq[j][i] {
                return Err(ClassifyError::NotPartialOrder { axiom: "antisymmetry" });
            }
            for l in 0..k {
                if leq[i][j] && leq[j][l] && !leq[i][l] {
                    return Err(ClassifyError::NotPartialOrder { axiom: "transitivity" });
                }
            }
        }
    }
    let mut hasse = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j || !leq[i][j] {
                continue;
            }
            let covered = (0..k).any(|l| l != i && l != j && leq[i][l] && leq[l][j]);
            if !covered {
                hasse.push((i, j));
            }
        }
    }
    hasse.sort_unstable();
    Ok(GraphOfF { cosets, leq, hasse })
}

/// `A_f` is Azumaya over `V` exactly when every cocycle value is a unit.
pub fn is_azumaya(f: &ValCocycle) -> Result<bool, ClassifyError> {
    Ok(compute_h(f)?.order() == f.order())
}

/// The square-free criterion: hereditary iff `f(tau, tau^{-1})` is not in
/// `M^2` for any `tau` and `M`. On failure returns the smallest witness
/// `(tau, m)` with exponent at least 2.
pub fn is_hereditary(f: &ValCocycle) -> (bool, Option<(usize, usize)>) {
    for tau in 0..f.order() {
        let inv = f.setup.group.inverse(tau);
        for m in 0..f.ideal_count() {
            if f.vals[tau][inv].0[m] >= 2 {
                return (false, Some((tau, m)));
            }
        }
    }
    (true, None)
}

/// The all-pairs form: every entry of the table square-free.
pub fn is_hereditary_allpairs(f: &ValCocycle) -> bool {
    f.vals
        .iter()
        .flatten()
        .all(|v| v.0.iter().all(|&e| e <= 1))
}

/// Maximality: hereditary, and for every ideal `M` each right coset of
/// `D_M` contains a representative `g` with `f(g, g^{-1})` a unit at `M`.
/// On failure returns the smallest failing `(m, coset)`.
pub fn is_maximal(f: &ValCocycle) -> (bool, Option<(usize, Vec<usize>)>) {
    let (hered, w) = is_hereditary(f);
    if !hered {
        let (tau, m) = w.unwrap();
        return (false, Some((m, vec![tau])));
    }
    for m in 0..f.ideal_count() {
        let dm = f.setup.decomposition_group(m);
        for coset in dm.right_cosets(&f.setup.group) {
            let ok = coset
                .iter()
                .any(|&g| f.vals[g][f.setup.group.inverse(g)].0[m] == 0);
            if !ok {
                return (false, Some((m, coset)));
            }
        }
    }
    (true, None)
}

/// The DVR special case: requires `r = 1`.
pub fn is_maximal_dvr(f: &ValCocycle) -> Result<bool, ClassifyError> {
    if f.ideal_count() != 1 {
        return Err(ClassifyError::NotDVR { r: f.ideal_count() });
    }
    Ok(is_hereditary(f).0)
}

/// Maximality under a caller-supplied primarity assertion: some ideal `M`
/// has `f(tau, tau^{-1})` square-free at `M` for all `tau` in `D_M`.
pub fn is_maximal_given_primary(f: &ValCocycle, primary: bool) -> Result<bool, ClassifyError> {
    if !primary {
        return Err(ClassifyError::PrimaryNotAsserted);
    }
    for m in 0..f.ideal_count() {
        let dm = f.setup.decomposition_group(m);
        if dm.members.iter().all(|&tau| {
            f.vals[tau][f.setup.group.inverse(tau)].0[m] <= 1
        }) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Restriction of `f` to a subgroup acting on one of its ideal orbits;
/// the valuation-level image of passing to an intermediate field.
pub fn restrict(f: &ValCocycle, sub: &Subgroup, orbit: &[usize]) -> Result<ValCocycle, ClassifyError> {
    let expected = f.setup.orbit(orbit.first().copied().ok_or(ClassifyError::NotAnOrbit)?, sub);
    let mut sorted = orbit.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted != expected {
        return Err(ClassifyError::NotAnOrbit);
    }
    let group = &f.setup.group;
    let k = sub.order();
    // Reindex the subgroup: member order is sorted, so identity stays 0.
    let table: Vec<Vec<usize>> = sub
        .members
        .iter()
        .map(|&a| {
            sub.members
                .iter()
                .map(|&b| sub.members.binary_search(&group.mul(a, b)).expect("subgroup closed"))
                .collect()
        })
        .collect();
    let names = sub.members.iter().map(|&g| group.names[g].clone()).collect();
    let new_group = crate::group::FiniteGroup::validate(k, names, table)?;
    let perms: Vec<Vec<usize>> = sub
        .members
        .iter()
        .map(|&g| {
            sorted
                .iter()
                .map(|&m| sorted.binary_search(&f.setup.ideals.perms[g][m]).expect("orbit is stable"))
                .collect()
        })
        .collect();
    let ideals = IdealAction::validate(sorted.len(), perms, &new_group)?;
    let new_setup = GaloisSetup { group: new_group, ideals };
    let vals: Vec<Vec<ValVector>> = sub
        .members
        .iter()
        .map(|&a| {
            sub.members
                .iter()
                .map(|&b| ValVector(sorted.iter().map(|&m| f.vals[a][b].0[m]).collect()))
                .collect()
        })
        .collect();
    Ok(ValCocycle::validate(new_setup, vals)?)
}

/// `f_M`: restriction of `f` to the decomposition group of `M` localized
/// at `M`; the resulting setup is a DVR case (`r = 1`).
pub fn localize_at_ideal(f: &ValCocycle, m: usize) -> Result<ValCocycle, ClassifyError> {
    let dm = f.setup.decomposition_group(m);
    restrict(f, &dm, &[m])
}

/// Per-grade lower bounds for the left order of `J(A_f)`: the least
/// admissible `v_M(k)` for `k x_tau` to multiply the radical into itself.
/// Always `<= 0`; identically zero exactly when `O_l(J(A_f)) = A_f`.
pub fn left_order_exponents(f: &ValCocycle) -> Vec<ValVector> {
    let n = f.order();
    let r = f.ideal_count();
    let profile = radical_profile(f);
    (0..n)
        .map(|tau| {
            let tau_inv = f.setup.group.inverse(tau);
            ValVector(
                (0..r)
                    .map(|m| {
                        (0..n)
                            .map(|gamma| {
                                let tg = f.setup.group.mul(tau, gamma);
                                profile.iexps[tg].0[m]
                                    - profile.iexps[gamma].0[f.setup.ideals.perms[tau_inv][m]]
                                    - f.vals[tau][gamma].0[m]
                            })
                            .max()
                            .expect("group is nonempty")
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Independent oracle for the hereditary criterion, following the
/// left-order construction: hereditary iff the left order of the radical
/// is `A_f` itself.
pub fn hereditary_oracle(f: &ValCocycle) -> bool {
    left_order_exponents(f).iter().all(|v| v.is_zero())
}

/// Verdict for one localization `f_M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationVerdict {
    pub ideal: usize,
    pub decomposition_group: Subgroup,
    pub maximal: bool,
}

/// Everything the criteria produce for one cocycle, with the internal
/// cross-checks already run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub h: Subgroup,
    pub graph: GraphOfF,
    pub azumaya: bool,
    pub hereditary: bool,
    pub maximal: bool,
    pub radical: RadicalProfile,
    pub localizations: Vec<LocalizationVerdict>,
    pub hereditary_witness: Option<(usize, usize)>,
    pub maximal_witness: Option<(usize, Vec<usize>)>,
}

/// Runs every decision procedure and the cross-checks (all-pairs
/// equivalence, left-order oracle, radical lemma). A cross-check failure
/// on validated input is a bug and is reported as such.
pub fn classify(f: &ValCocycle) -> Result<ClassificationReport, ClassifyError> {
    let h = compute_h(f)?;
    let graph = graph_of_f(f)?;
    let azumaya = is_azumaya(f)?;
    let (hereditary, hereditary_witness) = is_hereditary(f);
    let (maximal, maximal_witness) = is_maximal(f);
    let radical = radical_profile(f);

    if is_hereditary_allpairs(f) != hereditary {
        return Err(ClassifyError::InternalInconsistency {
            left: "valuation criterion",
            right: "all-pairs criterion",
        });
    }
    if hereditary_oracle(f) != hereditary {
        return Err(ClassifyError::InternalInconsistency {
            left: "valuation criterion",
            right: "left-order oracle",
        });
    }
    if lemma_check(f).is_err() {
        return Err(ClassifyError::InternalInconsistency {
            left: "radical profile",
            right: "galois action",
        });
    }
    if maximal && !hereditary {
        return Err(ClassifyError::InternalInconsistency {
            left: "maximal",
            right: "hereditary",
        });
    }

    let localizations = (0..f.ideal_count())
        .map(|m| {
            let local = localize_at_ideal(f, m)?;
            Ok(LocalizationVerdict {
                ideal: m,
                decomposition_group: f.setup.decomposition_group(m),
                maximal: is_maximal_dvr(&local)?,
            })
        })
        .collect::<Result<Vec<_>, ClassifyError>>()?;

    Ok(ClassificationReport {
        h,
        graph,
        azumaya,
        hereditary,
        maximal,
        radical,
        localizations,
        hereditary_witness,
        maximal_witness,
    })
}
