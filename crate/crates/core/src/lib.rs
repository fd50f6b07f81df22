pub mod bench;
pub mod corrector;
pub mod error;
pub mod eval;
pub mod field;
pub mod instance;
pub mod interp;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod probe;

pub use error::{Error, Result};
pub use field::{Fe, FieldContext, DEFAULT_PRIME};
pub use matrix::{mat_mul, plan_mul, Kernel, Matrix, MulPlan, Operand, SparseMatrix};
