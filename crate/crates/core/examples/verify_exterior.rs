//! Build the two-variable quantum exterior algebra over F_5 with q = 1,
//! solve for the splitting coefficients, and run the full axiom suite.

use qci_core::algebra::{AlgebraSpec, QMatrix};
use qci_core::bifrobenius::{
    primitive_coproduct, solve_g, top_dual_pair, verify_bifrobenius,
    BiFrobeniusCandidate,
};
use qci_core::scalar::{FieldDescriptor, FieldScalar};

fn main() -> Result<(), qci_core::QciError> {
    let field = FieldDescriptor::prime_field(5)?;
    let q = QMatrix::constant(2, &FieldScalar::one(field))?;
    let spec = AlgebraSpec::new(field, vec![2, 2], q)?;

    let g = solve_g(&spec)?.assignment;
    let table = primitive_coproduct(&spec, &g)?;
    let (phi, t) = top_dual_pair(&spec)?;
    let candidate = BiFrobeniusCandidate::new(table, phi, t)?;
    let report = verify_bifrobenius(&candidate)?;
    assert!(report.overall_pass());
    println!("{report}");
    Ok(())
}
