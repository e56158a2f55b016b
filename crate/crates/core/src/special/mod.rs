//! Classical Hopf algebras recovered as realizations: word quasi-symmetric
//! functions, noncommutative decorated Connes–Kreimer forests, and the
//! two-parameter Faà di Bruno family.

pub mod fdb;
pub mod nck;
pub mod wqsym;
