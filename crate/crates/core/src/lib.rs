//! Exact computation of Kac polynomials, refined Donaldson–Thomas invariants
//! of symmetric quivers and Hall-pairing polynomials `H^s_μ(q)` extracted
//! from a Hall–Littlewood generalization of Hua's generating function.

pub mod exactalg;
pub mod partitions;
pub mod symfunc;
pub mod plethlog;
pub mod quiver;
pub mod invariants;
pub mod oracle;
pub mod cache;
pub mod selftest;
