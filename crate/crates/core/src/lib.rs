pub mod bound;
pub mod check;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod par;
pub mod poly;
pub mod random;
pub mod rees;
pub mod stabilization;

pub use bound::Bound;
pub use check::{Check, Relation, Verdict};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use groebner::{groebner, GroebnerBasis};
pub use ideal::{Ideal, IdealSpec};
pub use monomial::Monomial;
pub use par::Exec;
pub use poly::Polynomial;
pub use stabilization::{stabilization_report, StabOptions, StabReport};
