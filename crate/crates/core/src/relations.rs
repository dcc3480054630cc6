//! Judgements on strategy types: well-formedness, domains, genericity,
//! negation, composition, greatest lower bounds and application.

use crate::context::{wf_term_type, Context};
use crate::error::{RuleError, TypeError};
use crate::types::{StrategyType, TermType};

pub fn wf_strategy_type(ctx: &Context, pi: &StrategyType) -> Result<(), RuleError> {
    match pi {
        StrategyType::Arrow(a, b) => {
            wf_term_type(ctx, a)?;
            wf_term_type(ctx, b)
        }
        StrategyType::TP => Ok(()),
        StrategyType::TU(t) => wf_term_type(ctx, t),
        StrategyType::Amp(..) => {
            let branches = pi.branches();
            for b in &branches {
                if b.is_generic() {
                    return Err(RuleError::new("pi.4", TypeError::GenericInAmp(pi.clone())));
                }
                wf_strategy_type(ctx, b)?;
            }
            let doms = domains(pi)?;
            for (i, d) in doms.iter().enumerate() {
                if doms[..i].contains(d) {
                    return Err(RuleError::new("pi.4", TypeError::OverlappingAmpDomains(pi.clone())));
                }
            }
            Ok(())
        }
    }
}

/// Domains of a non-generic type, one entry per branch.
pub fn domains(pi: &StrategyType) -> Result<Vec<TermType>, RuleError> {
    pi.branches()
        .into_iter()
        .map(|b| match b {
            StrategyType::Arrow(a, _) => Ok(a.clone()),
            _ => Err(RuleError::new("dom", TypeError::GenericDomainUndefined(pi.clone()))),
        })
        .collect()
}

/// Strict genericity `pi ≺ pi2`. Both types are assumed well-formed.
pub fn generically_less(pi: &StrategyType, pi2: &StrategyType) -> bool {
    if pi.is_generic() || pi.equiv(pi2) {
        return false;
    }
    let branches = pi.branches();
    match pi2 {
        StrategyType::Arrow(..) => false,
        StrategyType::TP => branches.iter().all(|b| matches!(b, StrategyType::Arrow(a, c) if a == c)),
        StrategyType::TU(u) => branches.iter().all(|b| matches!(b, StrategyType::Arrow(_, c) if c == u)),
        StrategyType::Amp(..) => {
            let mut pool = pi2.branches();
            for b in branches {
                match pool.iter().position(|p| *p == b) {
                    Some(i) => {
                        pool.swap_remove(i);
                    }
                    None => return false,
                }
            }
            !pool.is_empty()
        }
    }
}

/// Reflexive closure of [`generically_less`], modulo AC of `&`.
pub fn less_or_equiv(pi: &StrategyType, pi2: &StrategyType) -> bool {
    pi.equiv(pi2) || generically_less(pi, pi2)
}

pub fn negatable(pi: &StrategyType) -> Result<StrategyType, RuleError> {
    match pi {
        StrategyType::Arrow(a, _) => Ok(StrategyType::arrow(a.clone(), a.clone())),
        StrategyType::TP | StrategyType::TU(_) => Ok(StrategyType::TP),
        StrategyType::Amp(..) => Err(RuleError::new("neg", TypeError::NotNegatable(pi.clone()))),
    }
}

pub fn composable(pi1: &StrategyType, pi2: &StrategyType) -> Result<StrategyType, RuleError> {
    use StrategyType::*;
    let fail = || RuleError::new("seq", TypeError::NotComposable(pi1.clone(), pi2.clone()));
    match (pi1, pi2) {
        (Arrow(a, b), Arrow(c, d)) if b == c => Ok(Arrow(a.clone(), d.clone())),
        (TP, g) if g.is_generic() => Ok(g.clone()),
        (Arrow(..), TP) => Ok(pi1.clone()),
        (TP, Arrow(..)) => Ok(pi2.clone()),
        (TU(u), Arrow(c, d)) if u == c => Ok(TU(d.clone())),
        // The TU operand is used at its instance b -> u.
        (Arrow(a, _), TU(u)) => Ok(Arrow(a.clone(), u.clone())),
        (Amp(..), Amp(..)) => {
            let left = pi1.branches();
            let mut right = pi2.branches();
            if left.len() != right.len() {
                return Err(fail());
            }
            let mut out = Vec::with_capacity(left.len());
            for l in left {
                let StrategyType::Arrow(_, mid) = l else { return Err(fail()) };
                let i = right
                    .iter()
                    .position(|r| matches!(r, StrategyType::Arrow(d, _) if d == mid))
                    .ok_or_else(fail)?;
                let r = right.swap_remove(i);
                out.push(composable(l, r).map_err(|_| fail())?);
            }
            Ok(StrategyType::amp_all(out).expect("non-empty"))
        }
        _ => Err(fail()),
    }
}

/// Greatest lower bound with respect to `≼`.
pub fn glb(pi1: &StrategyType, pi2: &StrategyType) -> Result<StrategyType, RuleError> {
    use StrategyType::*;
    let none = || RuleError::new("choice", TypeError::NoLowerBound(pi1.clone(), pi2.clone()));
    if pi1.equiv(pi2) {
        return Ok(pi1.clone());
    }
    let kept: Vec<StrategyType> = match (pi1, pi2) {
        (TP, TU(u)) | (TU(u), TP) => vec![Arrow(u.clone(), u.clone())],
        (TU(_), TU(_)) => Vec::new(),
        (TP, _) | (TU(_), _) => {
            pi2.branches().into_iter().filter(|b| generically_less(b, pi1)).cloned().collect()
        }
        (_, TP) | (_, TU(_)) => {
            pi1.branches().into_iter().filter(|b| generically_less(b, pi2)).cloned().collect()
        }
        _ => {
            let other = pi2.branches();
            pi1.branches().into_iter().filter(|b| other.contains(b)).cloned().collect()
        }
    };
    StrategyType::amp_all(kept).ok_or_else(none)
}

/// The unique `t2` with `t -> t2 ≼ pi`.
pub fn application_type(pi: &StrategyType, t: &TermType) -> Result<TermType, RuleError> {
    let none = || RuleError::new("apply", TypeError::InapplicableType(pi.clone(), t.clone()));
    match pi {
        StrategyType::TP => Ok(t.clone()),
        StrategyType::TU(u) => Ok(u.clone()),
        StrategyType::Arrow(..) | StrategyType::Amp(..) => pi
            .branches()
            .into_iter()
            .find_map(|b| match b {
                StrategyType::Arrow(a, c) if a == t => Some(c.clone()),
                _ => None,
            })
            .ok_or_else(none),
    }
}
