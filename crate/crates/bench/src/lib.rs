//! Fixtures shared by the criterion benches.

use su11_core::{rat, ModuleSpec, Parity, Rational};

/// The λ grid `{1/4, 1/2, …, 19/4}` minus the reduction points of `parity`.
pub fn lambda_grid(parity: Parity) -> Vec<Rational> {
    (1..=19)
        .map(|q| rat(q, 4))
        .filter(|l| !parity.reduces_at(l))
        .collect()
}

pub fn sweep_specs() -> Vec<ModuleSpec> {
    let mut specs = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for l in lambda_grid(parity) {
            specs.push(ModuleSpec::principal(l, parity).expect("dominant"));
        }
    }
    for m in 0..=4 {
        specs.push(ModuleSpec::point(m, su11_core::Orbit::AtZero));
        specs.push(ModuleSpec::point(m, su11_core::Orbit::AtInfinity));
    }
    specs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_skip_reduction_points() {
        assert_eq!(lambda_grid(Parity::Even).len(), 17);
        assert_eq!(lambda_grid(Parity::Odd).len(), 17);
        assert!(sweep_specs().iter().all(ModuleSpec::is_irreducible));
    }
}
