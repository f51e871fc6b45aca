use super::{candidate_window, finish, oracle_for, Engine, FlowNetwork, QuadraticModel, SolverOptions, StepResult};
use crate::energy::dissipation_with;
use crate::error::{Error, Result};
use crate::lattice::{lattice_perimeter, LatticeSet, Parity};
use crate::norms::{is_singular, NormSpec};
use crate::scalar::Scalar;

/// Exact minimization by one s-t min cut.
///
/// The pair term `2xᵢxⱼ` between grid neighbors is supermodular; flipping the
/// variable on odd cells (`zᵢ = 1 − xᵢ`) turns it into `2zᵢ(1 − zⱼ)` with `i`
/// even, which is a cut edge `j → i`. Nodes on the sink side have `z = 1`.
pub fn step_mincut<S: Scalar>(
    n: &NormSpec,
    alpha: &S,
    eprev: &LatticeSet,
    constrained: bool,
    opts: &SolverOptions<S>,
) -> Result<StepResult<S>> {
    if *alpha <= S::zero() {
        return Err(Error::InvalidArgument("alpha must be positive".into()));
    }
    let tol = &opts.tol;
    let oracle = oracle_for(n, alpha, eprev)?;
    let window = candidate_window(&oracle, n, alpha, constrained, tol)?;
    let model = QuadraticModel::build(&oracle, alpha, &window)?;
    let m = model.cells.len();
    let (s, t) = (m, m + 1);
    let eps = if S::EXACT { S::zero() } else { S::from_real(1e-13).expect("float") };
    let mut g = FlowNetwork::new(m + 2, eps.clone());
    let mut constant = S::zero();
    let even: Vec<bool> = model.cells.iter().map(|p| p.parity() == Parity::Even).collect();

    for (k, a) in model.unary.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let positive = *a > S::zero();
        // even: a·z; odd: a·(1 − z)
        match (even[k], positive) {
            (true, true) => g.add_edge(s, k, a.clone()),
            (true, false) => {
                constant = constant + a.clone();
                g.add_edge(k, t, -a.clone());
            }
            (false, true) => g.add_edge(k, t, a.clone()),
            (false, false) => {
                constant = constant + a.clone();
                g.add_edge(s, k, -a.clone());
            }
        }
    }
    for &(i, j) in &model.pairs {
        let (e, o) = if even[i] { (i, j) } else { (j, i) };
        debug_assert!(even[e] && !even[o]);
        g.add_edge(o, e, S::from_i64(2));
    }

    let cut = g.max_flow(s, t);
    let source = g.source_side(s);
    let mut minimizer = window.fixed_in.clone();
    for k in 0..m {
        let z = !source[k];
        let x = if even[k] { z } else { !z };
        if x {
            minimizer.insert(model.cells[k]);
        }
    }

    // the cut value must reproduce the energy difference to the fixed part
    let base = alpha.clone() * dissipation_with(&oracle, &window.fixed_in)?
        - S::from_i64(lattice_perimeter(&window.fixed_in) as i64);
    let direct = alpha.clone() * dissipation_with(&oracle, &minimizer)?
        - S::from_i64(lattice_perimeter(&minimizer) as i64);
    let predicted = base + constant + cut;
    let slack = tol.clone() * S::from_i64(m as i64 + 1);
    if !predicted.near(&direct, &slack) {
        return Err(Error::SolverInvariant(format!(
            "cut value {} disagrees with recomputed energy {}",
            predicted.to_f64(),
            direct.to_f64()
        )));
    }

    let tied = !g.unique_min_cut(s, t, if S::EXACT { &eps } else { tol });
    let result = finish(&oracle, alpha, &window, minimizer, Engine::Mincut, tol, tied)?;
    if !S::EXACT {
        if let Some(&cell) = result.zero_margin_cells.first() {
            if is_singular(n, alpha, tol)? {
                let margin = crate::energy::toggle_delta(&oracle, alpha, &result.minimizer, cell)?;
                return Err(Error::NumericalMargin { cell, margin: margin.to_f64() });
            }
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{ball_points, BallLattice};
    use num_rational::Rational64;

    #[test]
    fn first_step_l2_is_even_ball() {
        let q = LatticeSet::origin();
        let alpha = 0.85f64;
        let r = step_mincut(&NormSpec::l2(), &alpha, &q, true, &SolverOptions::default()).unwrap();
        let ball = ball_points(&NormSpec::l2(), &(4.0 / alpha), BallLattice::Z2Even, true).unwrap();
        assert_eq!(r.minimizer, ball);
        assert!(r.unique);
    }

    #[test]
    fn agrees_with_brute_on_small_cases() {
        let o = SolverOptions::<Rational64>::default();
        for (num, den) in [(3, 1), (5, 2), (7, 2), (11, 5), (5, 1)] {
            let a = Rational64::new(num, den);
            for n in [NormSpec::linf(), NormSpec::l1()] {
                for constrained in [true, false] {
                    let q = LatticeSet::origin();
                    let x = step_mincut(&n, &a, &q, constrained, &o).unwrap();
                    let y = super::super::step_brute(&n, &a, &q, constrained, &o).unwrap();
                    assert_eq!(x.energy.total, y.energy.total, "{n} {a} {constrained}");
                    assert_eq!(x.minimizer, y.minimizer);
                }
            }
        }
    }

    #[test]
    fn float_zero_margin_at_singular_alpha_is_an_error() {
        let r = step_mincut(&NormSpec::l2(), &(2.0 * 2f64.sqrt()), &LatticeSet::origin(), true, &SolverOptions::default());
        assert!(matches!(r, Err(Error::NumericalMargin { .. })), "{r:?}");
    }
}
