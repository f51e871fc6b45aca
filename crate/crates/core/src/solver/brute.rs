use super::{candidate_window, finish, oracle_for, Engine, SolverOptions, StepResult};
use crate::error::{Error, Result};
use crate::lattice::{lattice_perimeter, LatticeSet, Point};
use crate::norms::NormSpec;
use crate::scalar::Scalar;

/// Exhaustive minimization over all subsets of the free window (Gray-code
/// order, one toggle per subset).
///
/// Ties within `tol` go to the set with fewest cells, then to the
/// lexicographically smallest sorted cell list.
pub fn step_brute<S: Scalar>(
    n: &NormSpec,
    alpha: &S,
    eprev: &LatticeSet,
    constrained: bool,
    opts: &SolverOptions<S>,
) -> Result<StepResult<S>> {
    if *alpha <= S::zero() {
        return Err(Error::InvalidArgument("alpha must be positive".into()));
    }
    let oracle = oracle_for(n, alpha, eprev)?;
    let window = candidate_window(&oracle, n, alpha, constrained, &opts.tol)?;
    let cells: Vec<Point> = window.free.iter().collect();
    let m = cells.len();
    if m > opts.brute_cap || m > 40 {
        return Err(Error::WindowTooLarge { free: m, cap: opts.brute_cap });
    }

    // per-cell constants, derived independently of the min-cut model
    let mut base = Vec::with_capacity(m);
    let mut nb_mask = vec![0u64; m];
    for (k, &p) in cells.iter().enumerate() {
        let fixed = p.neighbors4().iter().filter(|q| window.fixed_in.contains(**q)).count() as i64;
        let signed = if eprev.contains(p) { -oracle.to_complement(p)? } else { oracle.to_set(p)? };
        base.push(S::from_i64(2 * fixed - 4) + alpha.clone() * signed);
        for (j, &q) in cells.iter().enumerate() {
            if (p - q).l1() == 1 {
                nb_mask[k] |= 1 << j;
            }
        }
    }

    let start = crate::energy::dissipation_with(&oracle, &window.fixed_in)?;
    let mut energy = alpha.clone() * start - S::from_i64(lattice_perimeter(&window.fixed_in) as i64);
    let mut mask = 0u64;
    let mut best_mask = 0u64;
    let mut best = energy.clone();
    let mut ties = 1usize;
    let tol = &opts.tol;

    let materialize = |mask: u64| -> Vec<Point> {
        let mut v: Vec<Point> = window.fixed_in.iter().collect();
        v.extend((0..m).filter(|k| mask >> k & 1 == 1).map(|k| cells[k]));
        v.sort_unstable();
        v
    };

    for g in 1u64..(1u64 << m) {
        let k = g.trailing_zeros() as usize;
        let add = base[k].clone() + S::from_i64(2 * (mask & nb_mask[k]).count_ones() as i64);
        if mask >> k & 1 == 1 {
            energy = energy - add;
        } else {
            energy = energy + add;
        }
        mask ^= 1 << k;

        if energy < best.clone() - tol.clone() {
            best = energy.clone();
            best_mask = mask;
            ties = 1;
        } else if energy.near(&best, tol) {
            ties += 1;
            let (a, b) = (mask.count_ones(), best_mask.count_ones());
            if a < b || (a == b && materialize(mask) < materialize(best_mask)) {
                if energy < best {
                    best = energy.clone();
                }
                best_mask = mask;
            }
        }
    }

    let minimizer: LatticeSet = materialize(best_mask).into_iter().collect();
    finish(&oracle, alpha, &window, minimizer, Engine::Brute, tol, ties > 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn opts() -> SolverOptions<Rational64> {
        SolverOptions::default()
    }

    #[test]
    fn brute_examples() {
        let q = LatticeSet::origin();
        let r = step_brute(&NormSpec::linf(), &Rational64::from_integer(3), &q, true, &opts()).unwrap();
        assert_eq!(r.minimizer, LatticeSet::from_pairs(&[(0, 0), (1, 1), (1, -1), (-1, 1), (-1, -1)]));
        assert_eq!(r.energy.total, Rational64::from_integer(-8));
        assert!(r.unique);

        let r = step_brute(&NormSpec::linf(), &Rational64::from_integer(5), &q, true, &opts()).unwrap();
        assert_eq!(r.minimizer, q);

        let r = step_brute(&NormSpec::linf(), &Rational64::from_integer(4), &q, true, &opts()).unwrap();
        assert!(!r.unique);
        assert_eq!(r.zero_margin_cells.len(), 8);
        assert!(r.zero_margin_cells.iter().all(|p| p.linf() == 1));
        // fewest cells wins the tie
        assert_eq!(r.minimizer, q);
    }

    #[test]
    fn window_cap_is_enforced() {
        let small = SolverOptions { tol: Rational64::from_integer(0), brute_cap: 4 };
        let e = step_brute(&NormSpec::linf(), &Rational64::from_integer(3), &LatticeSet::origin(), true, &small);
        assert_eq!(e, Err(Error::WindowTooLarge { free: 8, cap: 4 }));
    }
}
