//! Picking scheme: a linear number of steps, always one-removal fair.
//!
//! With at most as many items as agents, the first `m` agents pick their
//! favorite remaining item in index order and everyone else gets nothing.
//! With more items than agents, agents `0..n-1` pick in turn and the last
//! agent takes everything left over. Either way the result admits, for every
//! ordered pair, a single removal that kills the average envy — early
//! pickers hold one item they weakly preferred at their turn, and against
//! the big leftover pile it suffices to delete the one item a picker missed.

use crate::allocation::Allocation;
use crate::instance::Instance;

/// Runs the picking scheme. Ties on "favorite item" break toward the lowest
/// item index, which makes the output a deterministic function of the
/// instance. The result is always complete and always passes
/// [`crate::fairness::is_aef1`]; quotas are not considered.
pub fn solve_aef1_picking(inst: &Instance) -> Allocation {
    let n = inst.agents();
    let m = inst.items();
    let mut alloc = Allocation::unassigned(m);
    let mut taken = vec![false; m];
    let pickers = if m <= n { m } else { n - 1 };
    for agent in 0..pickers {
        let mut favorite = None;
        for (g, taken) in taken.iter().enumerate() {
            if *taken {
                continue;
            }
            let better = match favorite {
                None => true,
                Some(best) => inst.value(agent, g) > inst.value(agent, best),
            };
            if better {
                favorite = Some(g);
            }
        }
        let g = favorite.expect("pickers never outnumber items");
        taken[g] = true;
        alloc.assign(g, agent);
    }
    if m > n {
        for (g, taken) in taken.iter().enumerate() {
            if !taken {
                alloc.assign(g, n - 1);
            }
        }
    }
    alloc
}
