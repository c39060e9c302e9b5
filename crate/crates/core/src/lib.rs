//! Set-theoretic Yang-Baxter homology of finite biquandles: operators and
//! their axioms, the YB/degenerate/normalized chain complexes, exact sparse
//! integer linear algebra, and (co)homology with verifiers for the cyclic
//! family.

pub mod biquandle;
pub mod complex;
pub mod homology;
pub mod intlinalg;
