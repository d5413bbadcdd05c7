//! Named root-finding strategies behind a common trait object.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::UnivariateEquation;
use crate::radical::{solve_by_radicals, solve_closed_form, solve_cubic_cardano, solve_quartic_two_squares, RootSet};

pub trait RootSolver: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn solve(&self, eq: &UnivariateEquation, prec: usize) -> Result<RootSet>;
}

fn require_degree(eq: &UnivariateEquation, ok: impl Fn(usize) -> bool, what: &str) -> Result<()> {
    if ok(eq.degree()) {
        Ok(())
    } else {
        Err(Error::Degree(format!("{what}, got degree {}", eq.degree())))
    }
}

pub struct CenterSolver;

impl RootSolver for CenterSolver {
    fn name(&self) -> &'static str {
        "center"
    }
    fn description(&self) -> &'static str {
        "completing powers along the center of the homogenized form"
    }
    fn solve(&self, eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
        solve_by_radicals(eq, prec)
    }
}

pub struct CardanoSolver;

impl RootSolver for CardanoSolver {
    fn name(&self) -> &'static str {
        "cardano"
    }
    fn description(&self) -> &'static str {
        "Cardano's formula for cubics"
    }
    fn solve(&self, eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
        require_degree(eq, |d| d == 3, "cardano solves cubics")?;
        solve_cubic_cardano(eq, prec)
    }
}

pub struct TwoSquaresSolver;

impl RootSolver for TwoSquaresSolver {
    fn name(&self) -> &'static str {
        "two-squares"
    }
    fn description(&self) -> &'static str {
        "quartic as a sum of two squares via the resolvent cubic"
    }
    fn solve(&self, eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
        require_degree(eq, |d| d == 4, "two-squares solves quartics")?;
        solve_quartic_two_squares(eq, prec)
    }
}

pub struct ClosedFormSolver;

impl RootSolver for ClosedFormSolver {
    fn name(&self) -> &'static str {
        "closed-form"
    }
    fn description(&self) -> &'static str {
        "linear and quadratic formulas"
    }
    fn solve(&self, eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
        solve_closed_form(eq, prec)
    }
}

/// Closed forms below degree 3, the center method above, and the quartic
/// resolvent when a quartic has a trivial center.
pub struct AutoSolver;

impl RootSolver for AutoSolver {
    fn name(&self) -> &'static str {
        "auto"
    }
    fn description(&self) -> &'static str {
        "closed-form, then center, then two-squares for quartics"
    }
    fn solve(&self, eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
        if eq.degree() <= 2 {
            return solve_closed_form(eq, prec);
        }
        match solve_by_radicals(eq, prec) {
            Err(Error::NoRadicalMethod(_)) if eq.degree() == 4 => solve_quartic_two_squares(eq, prec),
            other => other,
        }
    }
}

#[derive(Clone, Default)]
pub struct SolverRegistry {
    solvers: BTreeMap<&'static str, Arc<dyn RootSolver>>,
}

impl SolverRegistry {
    pub fn empty() -> Self {
        SolverRegistry::default()
    }

    pub fn with_defaults() -> Self {
        let mut r = SolverRegistry::empty();
        r.register(Arc::new(AutoSolver));
        r.register(Arc::new(CenterSolver));
        r.register(Arc::new(CardanoSolver));
        r.register(Arc::new(TwoSquaresSolver));
        r.register(Arc::new(ClosedFormSolver));
        r
    }

    /// Adds or replaces the solver under its name.
    pub fn register(&mut self, solver: Arc<dyn RootSolver>) {
        self.solvers.insert(solver.name(), solver);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn RootSolver>> {
        self.solvers
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownSolver(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.keys().copied().collect()
    }

    pub fn solve(&self, name: &str, eq: &UnivariateEquation, prec: usize) -> Result<RootSet> {
        self.get(name)?.solve(eq, prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radical::Method;

    #[test]
    fn defaults_and_lookup() {
        let r = SolverRegistry::with_defaults();
        assert_eq!(r.names(), vec!["auto", "cardano", "center", "closed-form", "two-squares"]);
        assert!(matches!(r.get("ferrari"), Err(Error::UnknownSolver(n)) if n == "ferrari"));
    }

    #[test]
    fn auto_dispatch() {
        let r = SolverRegistry::with_defaults();
        let quad = UnivariateEquation::from_i64(&[1, 0, -2]).unwrap();
        assert_eq!(r.solve("auto", &quad, 64).unwrap().method, Method::ClosedForm);
        let hard = UnivariateEquation::from_i64(&[1, 0, 0, 1, 1]).unwrap();
        assert_eq!(r.solve("auto", &hard, 64).unwrap().method, Method::TwoSquares);
        assert!(matches!(r.solve("center", &hard, 64), Err(Error::NoRadicalMethod(_))));
        assert!(matches!(r.solve("cardano", &hard, 64), Err(Error::Degree(_))));
    }

    struct Fixed;

    impl RootSolver for Fixed {
        fn name(&self) -> &'static str {
            "center"
        }
        fn description(&self) -> &'static str {
            "stub"
        }
        fn solve(&self, _: &UnivariateEquation, _: usize) -> Result<RootSet> {
            Err(Error::ResolventFailure)
        }
    }

    #[test]
    fn registration_replaces_by_name() {
        let mut r = SolverRegistry::with_defaults();
        r.register(Arc::new(Fixed));
        let eq = UnivariateEquation::from_i64(&[1, 0, 0, -8]).unwrap();
        assert!(matches!(r.solve("center", &eq, 64), Err(Error::ResolventFailure)));
        assert_eq!(r.names().len(), 5);
    }
}
