use num_traits::Zero;

use crate::center::{binary_rank, center_generator, d_invariants};
use crate::error::{Error, Result};
use crate::forms::{BinaryForm, LinearForm, PowerSumDecomposition};
use crate::scalar::{rat, Quadratic, Rational};

/// Coordinates where the pivot `D1` is nonzero: `F(x, y + c x)` for the
/// first `c` in `0, 1, -1, 2, -2, ...` that works, else `F(y, x)`.
enum Coordinates {
    Shear(Rational),
    Swap,
}

fn pivot_coordinates(f: &BinaryForm) -> Option<(BinaryForm, Coordinates)> {
    let ok = |g: &BinaryForm| !g.normalized()[0].is_zero() && !d_invariants(g.normalized()).0.is_zero();
    for c in [0, 1, -1, 2, -2, 3, -3, 4, -4] {
        let c = rat(c);
        let g = if c.is_zero() { f.clone() } else { f.sheared(&c) };
        if ok(&g) {
            return Some((g, Coordinates::Shear(c)));
        }
    }
    let s = f.swapped();
    ok(&s).then_some((s, Coordinates::Swap))
}

/// `F = c1 (x + (l1/D1) y)^d + c2 (x + (l2/D1) y)^d` over `Q(sqrt(disc))`,
/// read off the eigenvalues of the center generator.
pub fn complete_powers(f: &BinaryForm) -> Result<PowerSumDecomposition<Quadratic>> {
    let d = f.degree();
    if d < 3 {
        return Err(Error::Degree(format!("completion needs degree >= 3, got {d}")));
    }
    let r = binary_rank(f)?;
    if r != 2 {
        return Err(Error::CenterRank { rank: r });
    }
    let (g, coords) = pivot_coordinates(f).ok_or(Error::Pivot)?;
    let gen = center_generator(&g)?;
    if gen.discriminant.is_zero() {
        return Err(Error::RepeatedEigenvalue);
    }
    let a0 = Quadratic::from_rational(g.normalized()[0].clone());
    let a1 = Quadratic::from_rational(g.normalized()[1].clone());
    let d1 = Quadratic::from_rational(gen.d1.clone());
    let (l1, l2) = (gen.lambda1.clone(), gen.lambda2.clone());
    let c1 = (l2.clone() * a0.clone() - d1.clone() * a1.clone()) / (l2.clone() - l1.clone());
    let c2 = (l1.clone() * a0 - d1.clone() * a1) / (l1.clone() - l2.clone());
    let one = Quadratic::from_rational(rat(1));
    let forms = [(one.clone(), l1 / d1.clone()), (one, l2 / d1)];
    // undo the change of coordinates on each linear form
    let back = |(alpha, beta): (Quadratic, Quadratic)| match &coords {
        Coordinates::Shear(c) => {
            let c = Quadratic::from_rational(c.clone());
            LinearForm::new(vec![alpha - beta.clone() * c, beta])
        }
        Coordinates::Swap => LinearForm::new(vec![beta, alpha]),
    };
    let [f1, f2] = forms;
    Ok(PowerSumDecomposition::new(
        d as u32,
        vec![(c1, back(f1)), (c2, back(f2))],
    ))
}

/// The cubic case of [`complete_powers`].
pub fn complete_cube(f: &BinaryForm) -> Result<PowerSumDecomposition<Quadratic>> {
    if f.degree() != 3 {
        return Err(Error::Degree(format!("expected a cubic, got degree {}", f.degree())));
    }
    complete_powers(f)
}
