//! Stock integration domains used by the check suites and tests.

use kn_polar_core::zeta::{Domain, KnAtom};

/// The unit cube [0,1]^N.
pub fn cube(n: usize) -> Domain {
    let mut atoms = Vec::new();
    for i in 1..=n {
        atoms.push(KnAtom::Ge0(i));
        atoms.push(KnAtom::Le1(i));
    }
    Domain::KnAtoms { n, atoms }
}

/// The ordered simplex { 0 <= x1 <= ... <= xN <= 1 }.
pub fn ordered_simplex(n: usize) -> Domain {
    let mut atoms = vec![KnAtom::Ge0(1)];
    for i in 1..n {
        atoms.push(KnAtom::Ge(i + 1, i));
    }
    atoms.push(KnAtom::Le1(n));
    Domain::KnAtoms { n, atoms }
}

/// All of R^N (no constraints).
pub fn whole_space(n: usize) -> Domain {
    Domain::KnAtoms { n, atoms: Vec::new() }
}
