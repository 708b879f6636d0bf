use super::{Field, Poly, Rational};
use crate::error::KernelError;

/// Newton interpolation through `points` with degree at most `degree_bound`.
///
/// The first `degree_bound + 1` points determine the polynomial; any further
/// points are checked against it.
pub fn poly_interpolate<F: Field>(
    points: &[(Rational, F)],
    degree_bound: usize,
) -> Result<Poly<F>, KernelError> {
    let needed = degree_bound + 1;
    if points.len() < needed {
        return Err(KernelError::InsufficientPoints { needed, got: points.len() });
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(KernelError::DuplicateAbscissa(x.to_string()));
        }
    }
    let (head, tail) = points.split_at(needed);
    let xs: Vec<F> = head.iter().map(|(x, _)| F::from_rational(x)).collect();
    let mut dd: Vec<F> = head.iter().map(|(_, y)| y.clone()).collect();
    for k in 1..needed {
        for i in (k..needed).rev() {
            let num = dd[i].clone() - dd[i - 1].clone();
            dd[i] = num.try_div(&(xs[i].clone() - xs[i - k].clone()))?;
        }
    }
    let mut p = Poly::constant(dd[needed - 1].clone());
    for k in (0..needed - 1).rev() {
        let lin = Poly::new(vec![-xs[k].clone(), F::one()]);
        p = p * lin + Poly::constant(dd[k].clone());
    }
    for (x, y) in tail {
        if p.eval(&F::from_rational(x)) != *y {
            return Err(KernelError::InconsistentData { bound: degree_bound, x: x.to_string() });
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;

    #[test]
    fn quadratic_through_three_points() {
        let pts = vec![(int(0), int(1)), (int(1), int(2)), (int(2), int(5))];
        let p = poly_interpolate(&pts, 2).unwrap();
        assert_eq!(p, Poly::new(vec![int(1), int(0), int(1)]));
    }

    #[test]
    fn constant_and_errors() {
        let pts = vec![(int(0), int(3)), (int(4), int(3)), (int(9), int(3))];
        assert_eq!(poly_interpolate(&pts, 2).unwrap().degree(), Some(0));
        let dup = vec![(int(1), int(1)), (int(1), int(2))];
        assert!(matches!(poly_interpolate(&dup, 1), Err(KernelError::DuplicateAbscissa(_))));
        let bad = vec![(int(0), int(0)), (int(1), int(1)), (int(2), int(4))];
        assert!(matches!(poly_interpolate(&bad, 1), Err(KernelError::InconsistentData { .. })));
    }
}
