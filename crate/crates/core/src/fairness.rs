//! Decision procedures for average envy-freeness and its relaxations.
//!
//! All variants compare *average* bundle values `u_i(S) = v_i(S)/|S|`
//! (empty bundles average to zero) over every ordered pair of distinct
//! agents. The one-item relaxations ask for a single item `g` drawn from
//! either bundle of the pair whose removal kills the envy; removing `g`
//! from a bundle that does not contain it changes nothing.

use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::{integer, Rational};
use num::{One, Zero};

/// A concrete envy that certifies a failed check: agent `envious` prefers
/// `envied`'s bundle on average. For a plain average-envy failure
/// `removed_item` is `None` and `margin == u_i(A_h) - u_i(A_i) > 0`. For a
/// one-removal failure, `margin` is the smallest residual envy over every
/// permitted removal and `removed_item` is a removal attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvyWitness {
    pub envious: usize,
    pub envied: usize,
    pub removed_item: Option<usize>,
    pub margin: Rational,
}

/// Per-pair certificate that one removal repairs the pair: after deleting
/// `removed_item` (from whichever of the two bundles contains it), `agent`
/// values its own bundle at least as much as `other`'s on average.
/// `removed_item` is `None` when both bundles are empty and the pair holds
/// vacuously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalCertificate {
    pub agent: usize,
    pub other: usize,
    pub removed_item: Option<usize>,
}

/// Outcome of the exact average-envy-freeness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AefVerdict {
    Aef,
    NotAef(EnvyWitness),
}

impl AefVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, AefVerdict::Aef)
    }
}

/// Outcome of the one-removal check: certificates for every ordered pair,
/// or a witness for the lexicographically first failing pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Aef1Verdict {
    Aef1(Vec<RemovalCertificate>),
    NotAef1(EnvyWitness),
}

impl Aef1Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Aef1Verdict::Aef1(_))
    }
}

/// Largest multiplier against which an allocation is approximately fair, see
/// [`max_alpha`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaxAlpha {
    Bounded(Rational),
    Unbounded,
}

/// Per-pair data shared by all the pairwise checks.
struct Pairwise {
    bundles: Vec<Vec<usize>>,
    /// `sums[i][h]` = value of bundle `h` through agent `i`'s valuation.
    sums: Vec<Vec<Rational>>,
}

fn pairwise(inst: &Instance, alloc: &Allocation) -> Result<Pairwise> {
    if alloc.items() != inst.items() {
        return Err(Error::AllocationLength {
            expected: inst.items(),
            got: alloc.items(),
        });
    }
    let n = inst.agents();
    let bundles = alloc.bundles(n)?;
    let sums = (0..n)
        .map(|i| {
            bundles
                .iter()
                .map(|b| inst.bundle_value(i, b))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Pairwise { bundles, sums })
}

fn avg(sum: &Rational, len: usize) -> Rational {
    if len == 0 {
        Rational::zero()
    } else {
        sum / integer(len as i64)
    }
}

/// One permitted removal for an ordered pair: deleting `item` leaves the
/// observing agent's own bundle averaging `own` and the other bundle
/// averaging `other`.
struct Removal {
    item: usize,
    own: Rational,
    other: Rational,
}

/// All removal options for the ordered pair `(i, h)`, in increasing item
/// order across the union of the two bundles. Empty exactly when both
/// bundles are empty.
fn removal_options(inst: &Instance, data: &Pairwise, i: usize, h: usize) -> Vec<Removal> {
    let own = &data.bundles[i];
    let other = &data.bundles[h];
    let own_sum = &data.sums[i][i];
    let other_sum = &data.sums[i][h];
    let mut options = Vec::with_capacity(own.len() + other.len());
    let (mut a, mut b) = (0, 0);
    while a < own.len() || b < other.len() {
        let from_own = b == other.len() || (a < own.len() && own[a] < other[b]);
        if from_own {
            let g = own[a];
            a += 1;
            options.push(Removal {
                item: g,
                own: avg(&(own_sum - inst.value(i, g)), own.len() - 1),
                other: avg(other_sum, other.len()),
            });
        } else {
            let g = other[b];
            b += 1;
            options.push(Removal {
                item: g,
                own: avg(own_sum, own.len()),
                other: avg(&(other_sum - inst.value(i, g)), other.len() - 1),
            });
        }
    }
    options
}

fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&h| h != i).map(move |h| (i, h)))
}

/// Exact check: is the allocation average envy-free? On failure, reports the
/// lexicographically first ordered pair `(envious, envied)` that breaks it.
pub fn is_aef(inst: &Instance, alloc: &Allocation) -> Result<AefVerdict> {
    let data = pairwise(inst, alloc)?;
    for (i, h) in ordered_pairs(inst.agents()) {
        let own = avg(&data.sums[i][i], data.bundles[i].len());
        let other = avg(&data.sums[i][h], data.bundles[h].len());
        if own < other {
            return Ok(AefVerdict::NotAef(EnvyWitness {
                envious: i,
                envied: h,
                removed_item: None,
                margin: other - own,
            }));
        }
    }
    Ok(AefVerdict::Aef)
}

/// One-removal check: for every ordered pair, some single item from the
/// union of the two bundles can be deleted so the pair's average comparison
/// holds. Returns one certificate per pair (the smallest-index item that
/// works), or a witness for the first failing pair.
pub fn is_aef1(inst: &Instance, alloc: &Allocation) -> Result<Aef1Verdict> {
    let data = pairwise(inst, alloc)?;
    let mut certificates = Vec::new();
    for (i, h) in ordered_pairs(inst.agents()) {
        let options = removal_options(inst, &data, i, h);
        if options.is_empty() {
            certificates.push(RemovalCertificate {
                agent: i,
                other: h,
                removed_item: None,
            });
            continue;
        }
        let mut worst: Option<(Rational, usize)> = None;
        let mut fixed = None;
        for opt in &options {
            if opt.own >= opt.other {
                fixed = Some(opt.item);
                break;
            }
            let residual = &opt.other - &opt.own;
            if worst.as_ref().is_none_or(|(w, _)| residual < *w) {
                worst = Some((residual, opt.item));
            }
        }
        match fixed {
            Some(item) => certificates.push(RemovalCertificate {
                agent: i,
                other: h,
                removed_item: Some(item),
            }),
            None => {
                let (margin, item) = worst.expect("failing pair has at least one option");
                return Ok(Aef1Verdict::NotAef1(EnvyWitness {
                    envious: i,
                    envied: h,
                    removed_item: Some(item),
                    margin,
                }));
            }
        }
    }
    Ok(Aef1Verdict::Aef1(certificates))
}

/// Slack variant: every pair admits a removal whose residual envy is at most
/// `eps`. `eps` must be non-negative; `eps = 0` coincides with [`is_aef1`].
pub fn is_eps_aef1(inst: &Instance, alloc: &Allocation, eps: &Rational) -> Result<bool> {
    if eps < &Rational::zero() {
        return Err(Error::NegativeEpsilon(eps.clone()));
    }
    let data = pairwise(inst, alloc)?;
    for (i, h) in ordered_pairs(inst.agents()) {
        let options = removal_options(inst, &data, i, h);
        if options.is_empty() {
            continue;
        }
        if !options.iter().any(|o| o.own >= &o.other - eps) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiplicative variant: every pair admits a removal with
/// `own >= alpha * other`. `alpha` must lie in `(0, 1]`; `alpha = 1`
/// coincides with [`is_aef1`].
pub fn is_alpha_aef1(inst: &Instance, alloc: &Allocation, alpha: &Rational) -> Result<bool> {
    if alpha <= &Rational::zero() || alpha > &Rational::one() {
        return Err(Error::AlphaRange(alpha.clone()));
    }
    let data = pairwise(inst, alloc)?;
    for (i, h) in ordered_pairs(inst.agents()) {
        let options = removal_options(inst, &data, i, h);
        if options.is_empty() {
            continue;
        }
        if !options.iter().any(|o| o.own >= alpha * &o.other) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The largest `alpha` for which the multiplicative check would pass. Each
/// pair contributes its best ratio `own/other` over all removals; a removal
/// with `other == 0` makes the pair unconstrained. The result is the minimum
/// over constrained pairs, or [`MaxAlpha::Unbounded`] when no pair constrains
/// (then every `alpha` in `(0, 1]` passes). The bound can exceed 1: any
/// average-envy-free allocation yields at least 1.
pub fn max_alpha(inst: &Instance, alloc: &Allocation) -> Result<MaxAlpha> {
    let data = pairwise(inst, alloc)?;
    let mut best: Option<Rational> = None;
    for (i, h) in ordered_pairs(inst.agents()) {
        let options = removal_options(inst, &data, i, h);
        if options.is_empty() {
            continue;
        }
        let mut pair_bound: Option<Rational> = None;
        let mut unconstrained = false;
        for opt in &options {
            if opt.other.is_zero() {
                unconstrained = true;
                break;
            }
            let ratio = &opt.own / &opt.other;
            if pair_bound.as_ref().is_none_or(|b| ratio > *b) {
                pair_bound = Some(ratio);
            }
        }
        if unconstrained {
            continue;
        }
        let bound = pair_bound.expect("constrained pair has at least one option");
        if best.as_ref().is_none_or(|b| bound < *b) {
            best = Some(bound);
        }
    }
    Ok(match best {
        Some(bound) => MaxAlpha::Bounded(bound),
        None => MaxAlpha::Unbounded,
    })
}

/// Rescales every valuation by the globally largest item value so the
/// maximum becomes exactly 1. Labels are preserved. Errors when every value
/// is zero. Rescaling by a positive constant preserves all the verdicts in
/// this module.
pub fn normalize(inst: &Instance) -> Result<Instance> {
    let mut max: Option<&Rational> = None;
    for row in inst.values() {
        for v in row {
            if max.is_none_or(|m| v > m) {
                max = Some(v);
            }
        }
    }
    let max = max.filter(|m| !m.is_zero()).ok_or(Error::AllZero)?.clone();
    let scaled: Vec<Vec<Rational>> = inst
        .values()
        .iter()
        .map(|row| row.iter().map(|v| v / &max).collect())
        .collect();
    match inst.item_labels() {
        Some(labels) => Instance::with_labels(scaled, labels.to_vec()),
        None => Instance::new(scaled),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    /// Two agents with identical values (1, 1, 1/2); first two items to
    /// agent 0, the small item to agent 1.
    fn skewed_pair() -> (Instance, Allocation) {
        let row = vec![integer(1), integer(1), ratio(1, 2)];
        let inst = Instance::new(vec![row.clone(), row]).unwrap();
        let alloc = Allocation::from_owners(vec![0, 0, 1]);
        (inst, alloc)
    }

    #[test]
    fn average_envy_is_reported_with_margin() {
        let (inst, alloc) = skewed_pair();
        assert_eq!(
            is_aef(&inst, &alloc).unwrap(),
            AefVerdict::NotAef(EnvyWitness {
                envious: 1,
                envied: 0,
                removed_item: None,
                margin: ratio(1, 2),
            })
        );
    }

    #[test]
    fn no_single_removal_repairs_the_skewed_split() {
        let (inst, alloc) = skewed_pair();
        match is_aef1(&inst, &alloc).unwrap() {
            Aef1Verdict::NotAef1(w) => {
                assert_eq!((w.envious, w.envied), (1, 0));
                // Best attempt deletes the first big item and still leaves
                // residual envy of 1/2.
                assert_eq!(w.removed_item, Some(0));
                assert_eq!(w.margin, ratio(1, 2));
            }
            verdict => panic!("expected failure, got {verdict:?}"),
        }
    }

    #[test]
    fn rebalanced_split_is_one_removal_fair() {
        let (inst, _) = skewed_pair();
        let alloc = Allocation::from_owners(vec![0, 1, 0]);
        match is_aef1(&inst, &alloc).unwrap() {
            Aef1Verdict::Aef1(certs) => {
                assert_eq!(
                    certs,
                    vec![
                        RemovalCertificate {
                            agent: 0,
                            other: 1,
                            removed_item: Some(1),
                        },
                        RemovalCertificate {
                            agent: 1,
                            other: 0,
                            removed_item: Some(0),
                        },
                    ]
                );
            }
            verdict => panic!("expected success, got {verdict:?}"),
        }
    }

    #[test]
    fn slack_threshold_is_exactly_the_residual() {
        let (inst, alloc) = skewed_pair();
        assert!(is_eps_aef1(&inst, &alloc, &ratio(1, 2)).unwrap());
        assert!(!is_eps_aef1(&inst, &alloc, &ratio(1, 4)).unwrap());
        assert_eq!(
            is_eps_aef1(&inst, &alloc, &ratio(-1, 2)),
            Err(Error::NegativeEpsilon(ratio(-1, 2)))
        );
    }

    #[test]
    fn multiplicative_threshold_is_exactly_one_half() {
        let (inst, alloc) = skewed_pair();
        assert!(is_alpha_aef1(&inst, &alloc, &ratio(1, 2)).unwrap());
        assert!(!is_alpha_aef1(&inst, &alloc, &ratio(2, 3)).unwrap());
        assert_eq!(
            max_alpha(&inst, &alloc).unwrap(),
            MaxAlpha::Bounded(ratio(1, 2))
        );
    }

    #[test]
    fn alpha_domain_is_half_open() {
        let (inst, alloc) = skewed_pair();
        assert!(is_alpha_aef1(&inst, &alloc, &integer(1)).is_ok());
        assert_eq!(
            is_alpha_aef1(&inst, &alloc, &integer(0)),
            Err(Error::AlphaRange(integer(0)))
        );
        assert_eq!(
            is_alpha_aef1(&inst, &alloc, &ratio(3, 2)),
            Err(Error::AlphaRange(ratio(3, 2)))
        );
    }

    #[test]
    fn single_agent_is_unconstrained() {
        let inst = Instance::new(vec![vec![integer(5), integer(1)]]).unwrap();
        let alloc = Allocation::from_owners(vec![0, 0]);
        assert!(is_aef(&inst, &alloc).unwrap().holds());
        assert_eq!(max_alpha(&inst, &alloc).unwrap(), MaxAlpha::Unbounded);
    }

    #[test]
    fn empty_bundles_hold_vacuously() {
        let inst = Instance::new(vec![vec![], vec![]]).unwrap();
        let alloc = Allocation::unassigned(0);
        assert!(is_aef(&inst, &alloc).unwrap().holds());
        match is_aef1(&inst, &alloc).unwrap() {
            Aef1Verdict::Aef1(certs) => {
                assert_eq!(certs.len(), 2);
                assert!(certs.iter().all(|c| c.removed_item.is_none()));
            }
            verdict => panic!("expected success, got {verdict:?}"),
        }
        assert_eq!(max_alpha(&inst, &alloc).unwrap(), MaxAlpha::Unbounded);
    }

    #[test]
    fn balanced_identical_split_is_average_envy_free() {
        let inst = Instance::new(vec![vec![integer(1); 2], vec![integer(1); 2]]).unwrap();
        let alloc = Allocation::from_owners(vec![0, 1]);
        assert!(is_aef(&inst, &alloc).unwrap().holds());
        // An average-envy-free allocation always reaches multiplier 1.
        match max_alpha(&inst, &alloc).unwrap() {
            MaxAlpha::Bounded(b) => assert!(b >= integer(1)),
            MaxAlpha::Unbounded => {}
        }
    }

    #[test]
    fn normalize_divides_by_global_maximum() {
        let inst = Instance::new(vec![
            vec![integer(4), integer(2)],
            vec![integer(1), integer(3)],
        ])
        .unwrap();
        let normalized = normalize(&inst).unwrap();
        assert_eq!(
            normalized.values(),
            &[
                vec![integer(1), ratio(1, 2)],
                vec![ratio(1, 4), ratio(3, 4)],
            ]
        );
        assert_eq!(normalize(&normalized).unwrap(), normalized);

        let zero = Instance::new(vec![vec![integer(0)]]).unwrap();
        assert_eq!(normalize(&zero), Err(Error::AllZero));
    }
}
