//! Coboundary verification and the valuation-level cohomology solver.
//!
//! Whether two cocycles can be related by a coboundary with `c_sigma` drawn
//! from `K^#` is, at valuation level, an integer linear feasibility
//! question. The solver works over the exact integers, so an "infeasible"
//! answer certifies that no valuation profile of any `{c_sigma}` works.
//! The module also enumerates the integer lattice of all valid valuation
//! cocycles and samples it for test corpora.

use crate::group::GaloisSetup;
use crate::hnf;
use crate::valuation::{galois_act, CocycleError, ValCocycle, ValVector};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("SetupMismatch: cocycles live over different setups")]
    SetupMismatch,
    #[error("Infeasible: the pinned integer system has no solution")]
    Infeasible,
    #[error("CapExhausted: only {got} of {want} requested cocycles found")]
    CapExhausted { got: usize, want: usize },
    #[error("witness has wrong shape for the setup")]
    BadWitnessShape,
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

/// A family `{c_sigma}` of valuation vectors with `c_1 = 0`, certifying a
/// cohomology relation at valuation level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoboundaryWitness {
    pub cvecs: Vec<ValVector>,
}

impl CoboundaryWitness {
    pub fn validate(cvecs: Vec<ValVector>, setup: &GaloisSetup) -> Result<Self, CohomologyError> {
        if cvecs.len() != setup.order() || cvecs.iter().any(|v| v.len() != setup.ideal_count()) {
            return Err(CohomologyError::BadWitnessShape);
        }
        if !cvecs[0].is_zero() {
            return Err(CohomologyError::BadWitnessShape);
        }
        Ok(CoboundaryWitness { cvecs })
    }

    pub fn zero(setup: &GaloisSetup) -> Self {
        CoboundaryWitness {
            cvecs: vec![ValVector::zero(setup.ideal_count()); setup.order()],
        }
    }
}

/// Additive form of `c_sigma sigma(c_tau) c_{sigma tau}^{-1}`:
/// `table[sigma][tau] = c_sigma + sigma(c_tau) - c_{sigma tau}`.
pub fn coboundary_of(w: &CoboundaryWitness, setup: &GaloisSetup) -> Vec<Vec<ValVector>> {
    let n = setup.order();
    (0..n)
        .map(|sigma| {
            (0..n)
                .map(|tau| {
                    let st = setup.group.mul(sigma, tau);
                    w.cvecs[sigma]
                        .add(&galois_act(sigma, &w.cvecs[tau], setup))
                        .sub(&w.cvecs[st])
                })
                .collect()
        })
        .collect()
}

/// True iff the valuation tables agree entrywise: the necessary condition
/// for cohomology over `S` visible at valuation level (units vanish here).
pub fn is_cohomologous_s_valuation(f: &ValCocycle, g: &ValCocycle) -> Result<bool, CohomologyError> {
    if f.setup != g.setup {
        return Err(CohomologyError::SetupMismatch);
    }
    Ok(f.vals == g.vals)
}

// Variable layout for the coboundary system: c[sigma][m] for sigma in
// 1..n, index (sigma-1)*r + m; c[0] is pinned to zero.
fn witness_var_count(setup: &GaloisSetup) -> usize {
    (setup.order() - 1) * setup.ideal_count()
}

fn witness_rows(setup: &GaloisSetup) -> Vec<Vec<BigInt>> {
    let n = setup.order();
    let r = setup.ideal_count();
    let cols = witness_var_count(setup);
    let mut rows = Vec::new();
    for sigma in 0..n {
        let sigma_inv = setup.group.inverse(sigma);
        for tau in 0..n {
            let st = setup.group.mul(sigma, tau);
            for m in 0..r {
                let mut row = vec![BigInt::zero(); cols];
                let mut bump = |elem: usize, ideal: usize, delta: i64| {
                    if elem != 0 {
                        row[(elem - 1) * r + ideal] += delta;
                    }
                };
                bump(sigma, m, 1);
                bump(tau, setup.ideals.perms[sigma_inv][m], 1);
                bump(st, m, -1);
                rows.push(row);
            }
        }
    }
    rows
}

/// Solves `coboundary_of(w) = g - f` over the integers. A witness certifies
/// the valuation shadow of cohomology over `K`; `None` certifies that no
/// valuation profile of any `{c_sigma}` works.
///
/// The returned witness is the canonical representative of the solution
/// coset (coordinates reduced against the kernel lattice in HNF), so
/// output is reproducible.
pub fn is_cohomologous_k_valuation(
    f: &ValCocycle,
    g: &ValCocycle,
) -> Result<Option<CoboundaryWitness>, CohomologyError> {
    if f.setup != g.setup {
        return Err(CohomologyError::SetupMismatch);
    }
    let setup = &f.setup;
    let n = setup.order();
    let r = setup.ideal_count();
    let rows = witness_rows(setup);
    let mut target = Vec::with_capacity(rows.len());
    for sigma in 0..n {
        for tau in 0..n {
            for m in 0..r {
                target.push(BigInt::from(g.vals[sigma][tau].0[m] - f.vals[sigma][tau].0[m]));
            }
        }
    }
    let cols = witness_var_count(setup);
    let Some(x) = hnf::solve(&rows, &target, cols) else {
        return Ok(None);
    };
    let kernel = hnf::kernel_basis(&rows, cols);
    let x = hnf::reduce_mod_lattice(x, &kernel);
    let mut cvecs = vec![ValVector::zero(r)];
    for sigma in 1..n {
        cvecs.push(ValVector(
            (0..r)
                .map(|m| x[(sigma - 1) * r + m].to_i64().expect("witness exponent fits in i64"))
                .collect(),
        ));
    }
    let witness = CoboundaryWitness::validate(cvecs, setup)?;
    // Solver soundness: the witness must reproduce the difference exactly.
    let table = coboundary_of(&witness, setup);
    for sigma in 0..n {
        for tau in 0..n {
            debug_assert_eq!(
                table[sigma][tau],
                g.vals[sigma][tau].sub(&f.vals[sigma][tau])
            );
        }
    }
    Ok(Some(witness))
}

/// Integer basis of the solution lattice of the additive cocycle identity
/// with normalization pinned, plus (when `pin` is given) a particular
/// coboundary witness for the pinned difference table.
#[derive(Debug, Clone)]
pub struct CocycleLattice {
    pub setup: GaloisSetup,
    /// Each basis element is a full n x n table satisfying the identity
    /// and normalization exactly; entries may be negative.
    pub basis: Vec<Vec<Vec<ValVector>>>,
    pub particular: Option<CoboundaryWitness>,
}

// Variable layout for cocycle tables: vals[sigma][tau][m] for sigma, tau
// in 1..n, index ((sigma-1)*(n-1) + (tau-1))*r + m; normalized entries are
// not variables at all.
fn table_var_count(setup: &GaloisSetup) -> usize {
    let n = setup.order();
    (n - 1) * (n - 1) * setup.ideal_count()
}

fn table_var(setup: &GaloisSetup, sigma: usize, tau: usize, m: usize) -> Option<usize> {
    if sigma == 0 || tau == 0 {
        return None;
    }
    let n = setup.order();
    Some(((sigma - 1) * (n - 1) + (tau - 1)) * setup.ideal_count() + m)
}

fn identity_rows(setup: &GaloisSetup) -> Vec<Vec<BigInt>> {
    let n = setup.order();
    let r = setup.ideal_count();
    let cols = table_var_count(setup);
    let mut rows = Vec::new();
    for sigma in 0..n {
        let sigma_inv = setup.group.inverse(sigma);
        for tau in 0..n {
            for gamma in 0..n {
                let tg = setup.group.mul(tau, gamma);
                let st = setup.group.mul(sigma, tau);
                for m in 0..r {
                    let mut row = vec![BigInt::zero(); cols];
                    let mut bump = |var: Option<usize>, delta: i64| {
                        if let Some(v) = var {
                            row[v] += delta;
                        }
                    };
                    // act(sigma, vals[tau][gamma]) + vals[sigma][tau*gamma]
                    //   - vals[sigma][tau] - vals[sigma*tau][gamma] = 0
                    bump(table_var(setup, tau, gamma, setup.ideals.perms[sigma_inv][m]), 1);
                    bump(table_var(setup, sigma, tg, m), 1);
                    bump(table_var(setup, sigma, tau, m), -1);
                    bump(table_var(setup, st, gamma, m), -1);
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    rows
}

fn vector_to_table(setup: &GaloisSetup, x: &[BigInt]) -> Vec<Vec<ValVector>> {
    let n = setup.order();
    let r = setup.ideal_count();
    (0..n)
        .map(|sigma| {
            (0..n)
                .map(|tau| match table_var(setup, sigma, tau, 0) {
                    None => ValVector::zero(r),
                    Some(base) => ValVector(
                        (0..r)
                            .map(|m| x[base + m].to_i64().expect("lattice exponent fits in i64"))
                            .collect(),
                    ),
                })
                .collect()
        })
        .collect()
}

/// Kernel of the normalized additive cocycle identity, computed by exact
/// unimodular elimination; with `pin` set, additionally solves the
/// coboundary system for that difference table.
pub fn cocycle_lattice(
    setup: &GaloisSetup,
    pin: Option<&[Vec<ValVector>]>,
) -> Result<CocycleLattice, CohomologyError> {
    let rows = identity_rows(setup);
    let cols = table_var_count(setup);
    let kernel = hnf::kernel_basis(&rows, cols);
    let basis = kernel.iter().map(|x| vector_to_table(setup, x)).collect();
    let particular = match pin {
        None => None,
        Some(diff) => {
            let f = ValCocycle {
                setup: setup.clone(),
                vals: vec![vec![ValVector::zero(setup.ideal_count()); setup.order()]; setup.order()],
            };
            let g = ValCocycle {
                setup: setup.clone(),
                vals: diff.to_vec(),
            };
            match is_cohomologous_k_valuation(&f, &g)? {
                Some(w) => Some(w),
                None => return Err(CohomologyError::Infeasible),
            }
        }
    };
    Ok(CocycleLattice {
        setup: setup.clone(),
        basis,
        particular,
    })
}

/// Deterministically samples integer combinations of the lattice basis,
/// keeping the distinct combinations that are S-valued with all exponents
/// at most `max_exponent`. The trivial cocycle is always the first sample.
pub fn sample_cocycles(
    setup: &GaloisSetup,
    max_exponent: i64,
    count: usize,
    seed: u64,
) -> Result<Vec<ValCocycle>, CohomologyError> {
    let lattice = cocycle_lattice(setup, None)?;
    let rank = lattice.basis.len();
    let n = setup.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<Vec<Vec<ValVector>>> = HashSet::new();
    let mut out = Vec::new();

    let mut push = |vals: Vec<Vec<ValVector>>, out: &mut Vec<ValCocycle>| {
        let in_range = vals
            .iter()
            .flatten()
            .flat_map(|v| v.0.iter())
            .all(|&e| e >= 0 && e <= max_exponent);
        if in_range && seen.insert(vals.clone()) {
            let f = ValCocycle::validate(setup.clone(), vals).expect("lattice combination is a valid cocycle");
            out.push(f);
        }
    };

    push(vec![vec![ValVector::zero(setup.ideal_count()); n]; n], &mut out);

    let amplitude = max_exponent.max(1);
    let cap = 400 * count + 4000;
    let mut attempts = 0;
    while out.len() < count && attempts < cap && rank > 0 {
        attempts += 1;
        // Sparse coefficients keep the combination inside the bounded cone
        // often enough to be useful on the larger setups.
        let nonzero = rng.gen_range(1..=rank.min(4));
        let mut coeffs = vec![0i64; rank];
        for _ in 0..nonzero {
            let idx = rng.gen_range(0..rank);
            coeffs[idx] = rng.gen_range(-amplitude..=amplitude);
        }
        let mut vals = vec![vec![ValVector::zero(setup.ideal_count()); n]; n];
        for (c, table) in coeffs.iter().zip(&lattice.basis) {
            if *c == 0 {
                continue;
            }
            for sigma in 0..n {
                for tau in 0..n {
                    for m in 0..setup.ideal_count() {
                        vals[sigma][tau].0[m] += c * table[sigma][tau].0[m];
                    }
                }
            }
        }
        push(vals, &mut out);
    }
    if out.len() < count {
        return Err(CohomologyError::CapExhausted {
            got: out.len(),
            want: count,
        });
    }
    out.truncate(count);
    Ok(out)
}
