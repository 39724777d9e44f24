use specden::diffop::Family;
use specden::exactq::Rational;
use specden::resolvent::{check_printed_level_equations, expansion_coefficients};

fn main() {
    let ri = Rational::from_int;
    let z = Rational::zero();
    for (family, beta, a1, a2) in [
        (Family::Gaussian, ri(1), z.clone(), z.clone()),
        (Family::Gaussian, ri(4), z.clone(), z.clone()),
        (Family::Gaussian, Rational::new(2, 3), z.clone(), z.clone()),
        (Family::Gaussian, ri(6), z.clone(), z.clone()),
        (Family::Laguerre, ri(2), ri(1), z.clone()),
        (Family::Laguerre, ri(1), ri(1), z.clone()),
        (Family::Laguerre, ri(4), ri(1), z.clone()),
        (Family::Jacobi, ri(2), ri(1), ri(1)),
        (Family::Jacobi, ri(2), z.clone(), z.clone()),
    ] {
        let stack = expansion_coefficients(family, &beta, &a1, &a2, 6, 25).unwrap();
        let reports = check_printed_level_equations(&stack).unwrap();
        for r in reports {
            println!(
                "{:?} beta={beta} a1={a1}: {} -> {}",
                family,
                r.id,
                if r.ok() { "ok".to_string() } else { r.violations.join("; ") }
            );
        }
    }
}
