//! Elements of `K^#` seen only through their valuations at the `r` maximal
//! ideals of `S`, and two-cocycles in that representation.
//!
//! Forgetting units is deliberate: membership in `U(S)`, `M`, and `M^2` is
//! decidable from exponents alone, and that is all the classification
//! criteria consume.

use crate::group::GaloisSetup;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("cocycle table must be {n}x{n}x{r}")]
    BadShape { n: usize, r: usize },
    #[error("NotNormalized at ({sigma},{tau})")]
    NotNormalized { sigma: usize, tau: usize },
    #[error("NotSValued at ({sigma},{tau}) component {m}: exponent {exp} < 0")]
    NotSValued {
        sigma: usize,
        tau: usize,
        m: usize,
        exp: i64,
    },
    #[error("CocycleIdentityViolated at ({sigma},{tau},{gamma}) component {m}")]
    CocycleIdentityViolated {
        sigma: usize,
        tau: usize,
        gamma: usize,
        m: usize,
    },
}

/// Valuation vector of an element of `K^#`: `exps[m] = v_{M_m}(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ValVector(pub Vec<i64>);

impl ValVector {
    pub fn zero(r: usize) -> Self {
        ValVector(vec![0; r])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &ValVector) -> ValVector {
        ValVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ValVector) -> ValVector {
        ValVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// The Galois action on valuation vectors: `v_M(sigma(x)) = v_{sigma^{-1}(M)}(x)`.
pub fn galois_act(sigma: usize, v: &ValVector, setup: &GaloisSetup) -> ValVector {
    let inv = setup.group.inverse(sigma);
    ValVector((0..v.len()).map(|m| v.0[setup.ideals.perms[inv][m]]).collect())
}

/// A normalized `S`-valued two-cocycle in the valuation representation.
///
/// `vals[sigma][tau]` is the valuation vector of `f(sigma, tau)`; together
/// with the setup this is the full description of the order `A_f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValCocycle {
    pub setup: GaloisSetup,
    pub vals: Vec<Vec<ValVector>>,
}

impl ValCocycle {
    /// Checks normalization, `S`-valuedness and the additive cocycle
    /// identity; reports the lexicographically first violation.
    pub fn validate(setup: GaloisSetup, vals: Vec<Vec<ValVector>>) -> Result<Self, CocycleError> {
        let n = setup.order();
        let r = setup.ideal_count();
        let shape_ok = vals.len() == n && vals.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == r));
        if !shape_ok {
            return Err(CocycleError::BadShape { n, r });
        }
        for sigma in 0..n {
            for tau in 0..n {
                if (sigma == 0 || tau == 0) && !vals[sigma][tau].is_zero() {
                    return Err(CocycleError::NotNormalized { sigma, tau });
                }
            }
        }
        for sigma in 0..n {
            for tau in 0..n {
                for m in 0..r {
                    let exp = vals[sigma][tau].0[m];
                    if exp < 0 {
                        return Err(CocycleError::NotSValued { sigma, tau, m, exp });
                    }
                }
            }
        }
        for sigma in 0..n {
            for tau in 0..n {
                for gamma in 0..n {
                    let lhs = galois_act(sigma, &vals[tau][gamma], &setup)
                        .add(&vals[sigma][setup.group.mul(tau, gamma)]);
                    let rhs = vals[sigma][tau].add(&vals[setup.group.mul(sigma, tau)][gamma]);
                    for m in 0..r {
                        if lhs.0[m] != rhs.0[m] {
                            return Err(CocycleError::CocycleIdentityViolated { sigma, tau, gamma, m });
                        }
                    }
                }
            }
        }
        Ok(ValCocycle { setup, vals })
    }

    /// The trivial cocycle: every value a unit of `S`.
    pub fn trivial(setup: GaloisSetup) -> Self {
        let n = setup.order();
        let r = setup.ideal_count();
        ValCocycle {
            vals: vec![vec![ValVector::zero(r); n]; n],
            setup,
        }
    }

    /// Valuation vector of `f(sigma, tau)`, the structure constant in
    /// `x_sigma x_tau = f(sigma,tau) x_{sigma tau}`.
    pub fn product_exponents(&self, sigma: usize, tau: usize) -> &ValVector {
        &self.vals[sigma][tau]
    }

    pub fn order(&self) -> usize {
        self.setup.order()
    }

    pub fn ideal_count(&self) -> usize {
        self.setup.ideal_count()
    }
}

/// Exponent vectors of the ideals `I_tau` making up the Jacobson radical
/// `J(A_f) = sum_tau I_tau x_tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalProfile {
    pub iexps: Vec<ValVector>,
}

/// `M` divides `I_tau` exactly when `f(tau, tau^{-1})` is a unit at `M`.
pub fn radical_profile(f: &ValCocycle) -> RadicalProfile {
    let n = f.order();
    let iexps = (0..n)
        .map(|tau| {
            let inv = f.setup.group.inverse(tau);
            ValVector(
                f.vals[tau][inv]
                    .0
                    .iter()
                    .map(|&e| if e == 0 { 1 } else { 0 })
                    .collect(),
            )
        })
        .collect();
    RadicalProfile { iexps }
}

/// Checks `I_tau^{tau^{-1}} = I_{tau^{-1}}` for every `tau`; returns the
/// first failing element. A failure on a validated cocycle is a bug.
pub fn lemma_check(f: &ValCocycle) -> Result<(), usize> {
    let profile = radical_profile(f);
    for tau in 0..f.order() {
        let inv = f.setup.group.inverse(tau);
        let acted = galois_act(inv, &profile.iexps[tau], &f.setup);
        if acted != profile.iexps[inv] {
            return Err(tau);
        }
    }
    Ok(())
}

/// The two cocycle valuation tables of the built-in C2 example:
/// `(1,1)` and `(2,2)` at `(sigma, sigma)` respectively.
pub fn example_profile(double: bool) -> ValCocycle {
    let setup = GaloisSetup::builtin_example();
    let e = if double { 2 } else { 1 };
    let mut vals = vec![vec![ValVector::zero(2); 2]; 2];
    vals[1][1] = ValVector(vec![e, e]);
    ValCocycle::validate(setup, vals).expect("example profile is a valid cocycle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, IdealAction};

    fn c2_dvr() -> GaloisSetup {
        let g = FiniteGroup::cyclic(2);
        let a = IdealAction::trivial(&g);
        GaloisSetup::new(g, a).unwrap()
    }

    #[test]
    fn act_swaps_components() {
        let setup = GaloisSetup::builtin_example();
        let v = ValVector(vec![1, 0]);
        assert_eq!(galois_act(1, &v, &setup), ValVector(vec![0, 1]));
        assert_eq!(galois_act(0, &v, &setup), v);
        let c = ValVector(vec![3, 3]);
        assert_eq!(galois_act(1, &c, &setup), c);
    }

    #[test]
    fn act_composes() {
        let s3 = FiniteGroup::symmetric_3();
        let setup = GaloisSetup::new(s3.clone(), IdealAction::on_cosets(&s3, &[0, 1])).unwrap();
        let v = ValVector(vec![5, -2, 7]);
        for s in 0..6 {
            for t in 0..6 {
                let st = setup.group.mul(s, t);
                assert_eq!(
                    galois_act(s, &galois_act(t, &v, &setup), &setup),
                    galois_act(st, &v, &setup)
                );
            }
        }
    }

    #[test]
    fn example_cocycles_validate() {
        let f1 = example_profile(false);
        assert_eq!(f1.product_exponents(1, 1), &ValVector(vec![1, 1]));
        assert_eq!(f1.product_exponents(0, 1), &ValVector(vec![0, 0]));
        let f2 = example_profile(true);
        assert_eq!(f2.product_exponents(1, 1), &ValVector(vec![2, 2]));
    }

    #[test]
    fn trivial_cocycle_validates() {
        let setup = GaloisSetup::builtin_example();
        let f = ValCocycle::trivial(setup.clone());
        assert!(ValCocycle::validate(setup, f.vals).is_ok());
    }

    #[test]
    fn asymmetric_value_violates_identity() {
        let setup = GaloisSetup::builtin_example();
        let mut vals = vec![vec![ValVector::zero(2); 2]; 2];
        vals[1][1] = ValVector(vec![1, 0]);
        let err = ValCocycle::validate(setup, vals).unwrap_err();
        assert_eq!(
            err,
            CocycleError::CocycleIdentityViolated {
                sigma: 1,
                tau: 1,
                gamma: 1,
                m: 0
            }
        );
    }

    #[test]
    fn negative_exponent_rejected() {
        let setup = c2_dvr();
        let mut vals = vec![vec![ValVector::zero(1); 2]; 2];
        vals[1][1] = ValVector(vec![-1]);
        let err = ValCocycle::validate(setup, vals).unwrap_err();
        assert!(matches!(err, CocycleError::NotSValued { .. }));
    }

    #[test]
    fn unnormalized_rejected() {
        let setup = c2_dvr();
        let mut vals = vec![vec![ValVector::zero(1); 2]; 2];
        vals[0][1] = ValVector(vec![1]);
        let err = ValCocycle::validate(setup, vals).unwrap_err();
        assert_eq!(err, CocycleError::NotNormalized { sigma: 0, tau: 1 });
    }

    #[test]
    fn radical_profiles_of_examples() {
        let f1 = example_profile(false);
        let p = radical_profile(&f1);
        assert_eq!(p.iexps[0], ValVector(vec![1, 1]));
        assert_eq!(p.iexps[1], ValVector(vec![0, 0]));

        let f2 = example_profile(true);
        let p = radical_profile(&f2);
        assert_eq!(p.iexps[0], ValVector(vec![1, 1]));
        assert_eq!(p.iexps[1], ValVector(vec![0, 0]));

        let trivial = ValCocycle::trivial(GaloisSetup::builtin_example());
        let p = radical_profile(&trivial);
        assert!(p.iexps.iter().all(|v| *v == ValVector(vec![1, 1])));
    }

    #[test]
    fn lemma_holds_on_examples() {
        assert_eq!(lemma_check(&example_profile(false)), Ok(()));
        assert_eq!(lemma_check(&example_profile(true)), Ok(()));
        assert_eq!(
            lemma_check(&ValCocycle::trivial(GaloisSetup::builtin_example())),
            Ok(())
        );
    }
}
