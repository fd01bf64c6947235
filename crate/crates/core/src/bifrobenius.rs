//! Bi-Frobenius structure on the algebra: coproduct constructors, the
//! g-coefficient solver, the induced antipode S(a) = sum phi(t_1 a) t_2,
//! the axiom suite, and the two exhaustive searches (over g-assignments
//! and over the two-variable coefficient system).
//!
//! A candidate structure is the quadruple (A, phi, t, S) where S is always
//! derived from the other three pieces; the axiom suite checks that the
//! counit is an algebra map, 1 is group-like, phi is a Frobenius
//! homomorphism, t makes the coalgebra Frobenius, and S is an
//! anti-homomorphism of both structures.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{
    is_frobenius_functional, mono_mul, AlgElem, AlgebraSpec, ExponentVec,
};
use crate::coalgebra::{
    check_counit_algebra_map, dual_right_action, grouplike_check, is_frobenius_coalgebra,
    CoproductTable, TensorElem,
};
use crate::error::QciError;
use crate::linalg::Matrix;
use crate::report::{CheckReport, VerificationReport, Witness};
use crate::scalar::FieldScalar;

/// The coefficient family g_{v, a-1-v}, keyed by the first subscript:
/// `value(v)` is the coefficient of x_v (x) x_{a-1-v} in the image of the
/// top monomial. All values are nonzero and the two boundary values (at 0
/// and at a-1) are fixed to 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GAssignment {
    spec: Arc<AlgebraSpec>,
    values: BTreeMap<ExponentVec, FieldScalar>,
}

impl GAssignment {
    pub fn new(
        spec: &Arc<AlgebraSpec>,
        values: BTreeMap<ExponentVec, FieldScalar>,
    ) -> Result<Self, QciError> {
        let basis = spec.basis();
        if values.len() != basis.len() || basis.iter().any(|v| !values.contains_key(v)) {
            return Err(QciError::InvalidGAssignment(
                "one value per basis vector is required".into(),
            ));
        }
        for (v, g) in &values {
            if g.descriptor() != spec.field() {
                return Err(QciError::DescriptorMismatch {
                    left: spec.field().to_string(),
                    right: g.descriptor().to_string(),
                });
            }
            if g.is_zero() {
                return Err(QciError::InvalidGAssignment(format!(
                    "value at v={v} is zero"
                )));
            }
        }
        let zero = ExponentVec::zeros(spec.generators());
        for boundary in [&zero, &spec.top()] {
            if !values[boundary].is_one() {
                return Err(QciError::InvalidGAssignment(format!(
                    "boundary value at v={boundary} must be 1, got {}",
                    values[boundary]
                )));
            }
        }
        Ok(GAssignment {
            spec: Arc::clone(spec),
            values,
        })
    }

    /// The assignment with every free value equal to 1.
    pub fn all_ones(spec: &Arc<AlgebraSpec>) -> Self {
        let values = spec
            .basis()
            .into_iter()
            .map(|v| (v, FieldScalar::one(spec.field())))
            .collect();
        GAssignment::new(spec, values).expect("constant 1 assignment is valid")
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn value(&self, v: &ExponentVec) -> &FieldScalar {
        &self.values[v]
    }

    pub fn values(&self) -> impl Iterator<Item = (&ExponentVec, &FieldScalar)> {
        self.values.iter()
    }
}

/// Coproduct in which every basis vector other than 1 and the top monomial
/// is primitive, and the top monomial splits as
/// sum_v g_{v, a-1-v} x_v (x) x_{a-1-v}.
pub fn primitive_coproduct(
    spec: &Arc<AlgebraSpec>,
    g: &GAssignment,
) -> Result<CoproductTable, QciError> {
    if g.spec() != spec {
        return Err(QciError::SpecMismatch);
    }
    let zero = ExponentVec::zeros(spec.generators());
    let top = spec.top();
    let one = FieldScalar::one(spec.field());
    let mut images = Vec::with_capacity(spec.dim());
    for v in spec.basis() {
        let image = if v == zero {
            TensorElem::from_terms(spec, [(zero.clone(), zero.clone(), one.clone())])?
        } else if v == top {
            TensorElem::from_terms(
                spec,
                spec.basis().into_iter().map(|w| {
                    let rest = top.checked_sub(&w).expect("w <= top inside the basis");
                    (w.clone(), rest, g.value(&w).clone())
                }),
            )?
        } else {
            TensorElem::from_terms(
                spec,
                [
                    (zero.clone(), v.clone(), one.clone()),
                    (v.clone(), zero.clone(), one.clone()),
                ],
            )?
        };
        images.push(image);
    }
    CoproductTable::new(spec, images)
}

/// Coproduct splitting each monomial over all additive decompositions:
/// delta(x_v) = sum_{v1 + v2 = v} x_{v1} (x) x_{v2}.
pub fn path_coproduct(spec: &Arc<AlgebraSpec>) -> Result<CoproductTable, QciError> {
    let one = FieldScalar::one(spec.field());
    let mut images = Vec::with_capacity(spec.dim());
    for v in spec.basis() {
        let mut terms = Vec::new();
        for v1 in vectors_below(&v) {
            let v2 = v.checked_sub(&v1).expect("v1 <= v by construction");
            terms.push((v1, v2, one.clone()));
        }
        images.push(TensorElem::from_terms(spec, terms)?);
    }
    CoproductTable::new(spec, images)
}

/// Signed inclusion-exclusion coproduct:
/// delta(x_v) = sum over v1, v2 <= v with v <= v1 + v2 of
/// (-1)^{|v1 + v2 - v|} x_{v1} (x) x_{v2}.
pub fn signed_coproduct(spec: &Arc<AlgebraSpec>) -> Result<CoproductTable, QciError> {
    let one = FieldScalar::one(spec.field());
    let minus_one = FieldScalar::minus_one(spec.field());
    let mut images = Vec::with_capacity(spec.dim());
    for v in spec.basis() {
        let mut terms = Vec::new();
        for v1 in vectors_below(&v) {
            for v2 in vectors_below(&v) {
                let sum = v1.add(&v2);
                if !v.le(&sum) {
                    continue;
                }
                let excess = sum
                    .checked_sub(&v)
                    .expect("v <= v1 + v2 was just checked")
                    .degree();
                let sign = if excess % 2 == 0 { &one } else { &minus_one };
                terms.push((v1.clone(), v2.clone(), sign.clone()));
            }
        }
        images.push(TensorElem::from_terms(spec, terms)?);
    }
    CoproductTable::new(spec, images)
}

/// All exponent vectors w <= v, in lexicographic order.
fn vectors_below(v: &ExponentVec) -> Vec<ExponentVec> {
    let n = v.len();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        out.push(ExponentVec::new(cur.clone()));
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] <= v.get(i) {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// A g-assignment produced by the solver, together with the sign vector h
/// chosen to balance the boundary constraint.
#[derive(Clone, Debug)]
pub struct GSolution {
    pub assignment: GAssignment,
    pub h: Vec<i8>,
}

/// Solve for a g-assignment satisfying the multiplicativity and
/// square-matching conditions, when one exists.
///
/// Requires every commutation entry to square to 1, and either a square
/// root of -1 in the field or the fully commutative matrix (all entries
/// -1), in which case no root is needed. The per-generator seed is
/// h_i prod_j sqrt(-q_{ij})^{a_j - 1}; the sign vector h flips the
/// smallest even-bound index exactly when the global parity demands it,
/// and the rest of the assignment extends multiplicatively from the seeds.
pub fn solve_g(spec: &Arc<AlgebraSpec>) -> Result<GSolution, QciError> {
    let q = spec.q_matrix();
    let n = spec.generators();
    let field = spec.field();
    for i in 0..n {
        for j in 0..n {
            if !q.entry(i, j).mul_raw(q.entry(i, j)).is_one() {
                return Err(QciError::Precondition(format!(
                    "q[{},{}] = {} does not square to 1, so no coproduct of \
                     this form admits an antipode",
                    i + 1,
                    j + 1,
                    q.entry(i, j)
                )));
            }
        }
    }
    if !field.has_sqrt_minus_one() && !q.is_all_minus_one() {
        return Err(QciError::FieldLacksSqrtMinusOne(field.to_string()));
    }

    // Global parity P = prod_{i<j} (-q_{ij})^{(a_i-1)(a_j-1)}; it is +-1.
    let mut parity = FieldScalar::one(field);
    for i in 0..n {
        for j in (i + 1)..n {
            let e = (spec.bounds()[i] - 1) as i64 * (spec.bounds()[j] - 1) as i64;
            parity = parity.mul_raw(&q.entry(i, j).neg().pow(e)?);
        }
    }
    let mut h = vec![1i8; n];
    if parity == FieldScalar::minus_one(field) && !parity.is_one() {
        let Some(i0) = (0..n).find(|&i| spec.bounds()[i].is_multiple_of(2)) else {
            return Err(QciError::InternalInconsistency(
                "negative parity with all exponent bounds odd should be \
                 impossible: each parity factor then has an even exponent"
                    .into(),
            ));
        };
        h[i0] = -1;
    }

    // Seeds g_{a-1-e_i, e_i} = h_i prod_j sqrt(-q_{ij})^{a_j - 1}.
    let mut seeds = Vec::with_capacity(n);
    for (i, &hi) in h.iter().enumerate() {
        let mut acc = if hi == 1 {
            FieldScalar::one(field)
        } else {
            FieldScalar::minus_one(field)
        };
        for j in 0..n {
            let root = q
                .entry(i, j)
                .neg()
                .sqrt()?
                .ok_or_else(|| QciError::FieldLacksSqrtMinusOne(field.to_string()))?;
            acc = acc.mul_raw(&root.pow((spec.bounds()[j] - 1) as i64)?);
        }
        seeds.push(acc);
    }

    // The boundary product prod_i seed_i^{a_i - 1} must come out to 1.
    let mut boundary = FieldScalar::one(field);
    for (i, seed) in seeds.iter().enumerate() {
        boundary = boundary.mul_raw(&seed.pow((spec.bounds()[i] - 1) as i64)?);
    }
    if !boundary.is_one() {
        return Err(QciError::InternalInconsistency(format!(
            "sign balancing failed: the boundary product is {boundary}, not 1"
        )));
    }

    // Extend multiplicatively: the value keyed by w = a-1-v is
    // prod_i seed_i^{(a-1-w)_i}.
    let top = spec.top();
    let mut values = BTreeMap::new();
    for w in spec.basis() {
        let v = top.checked_sub(&w).expect("w <= top inside the basis");
        let mut acc = FieldScalar::one(field);
        for (i, seed) in seeds.iter().enumerate() {
            acc = acc.mul_raw(&seed.pow(v.get(i) as i64)?);
        }
        values.insert(w, acc);
    }
    let assignment = GAssignment::new(spec, values)?;

    let conditions = check_g_conditions(spec, &assignment)?;
    if !conditions.all_pass() {
        return Err(QciError::InternalInconsistency(format!(
            "solver output violates its own conditions: {conditions:?}"
        )));
    }
    for (v, g) in assignment.values() {
        let sq = g.mul_raw(g);
        if !sq.is_one() && sq != FieldScalar::minus_one(field) {
            return Err(QciError::InternalInconsistency(format!(
                "g^2 at v={v} is {sq}, expected 1 or -1"
            )));
        }
    }
    Ok(GSolution { assignment, h })
}

/// The three conditions a g-assignment must satisfy for the induced
/// antipode to be an anti-homomorphism of both structures.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GConditions {
    /// q_{ij}^2 = 1 for all i, j.
    pub squares: CheckReport,
    /// g_{a-1-(u+v), u+v} = g_{a-1-u, u} g_{a-1-v, v} whenever u + v stays
    /// inside the basis index set.
    pub multiplicativity: CheckReport,
    /// g_{v, a-1-v}^2 equals the inverse bracket product
    /// q^{-<v|a-1-v>} q^{-<a-1-v|v>}.
    pub bracket_match: CheckReport,
}

impl GConditions {
    pub fn all_pass(&self) -> bool {
        self.squares.passed() && self.multiplicativity.passed() && self.bracket_match.passed()
    }
}

pub fn check_g_conditions(
    spec: &Arc<AlgebraSpec>,
    g: &GAssignment,
) -> Result<GConditions, QciError> {
    if g.spec() != spec {
        return Err(QciError::SpecMismatch);
    }
    let q = spec.q_matrix();
    let n = spec.generators();

    let mut squares = CheckReport::pass("q-entries-square-to-one");
    'sq: for i in 0..n {
        for j in 0..n {
            let sq = q.entry(i, j).mul_raw(q.entry(i, j));
            if !sq.is_one() {
                squares = CheckReport::fail(
                    "q-entries-square-to-one",
                    Witness::new(
                        format!("i={}, j={}", i + 1, j + 1),
                        format!("q^2 = {sq}"),
                        "1",
                    ),
                );
                break 'sq;
            }
        }
    }

    let top = spec.top();
    let basis = spec.basis();
    let mut multiplicativity = CheckReport::pass("g-multiplicativity");
    'mult: for u in &basis {
        for v in &basis {
            let sum = u.add(v);
            if !sum.le(&top) {
                continue;
            }
            let lhs = g.value(&top.checked_sub(&sum).expect("sum <= top"));
            let rhs = g
                .value(&top.checked_sub(u).expect("u <= top"))
                .mul_raw(g.value(&top.checked_sub(v).expect("v <= top")));
            if *lhs != rhs {
                multiplicativity = CheckReport::fail(
                    "g-multiplicativity",
                    Witness::new(format!("u={u}, v={v}"), lhs, rhs),
                );
                break 'mult;
            }
        }
    }

    let mut bracket_match = CheckReport::pass("g-square-matches-bracket");
    for v in &basis {
        let rest = top.checked_sub(v).expect("v <= top");
        let lhs = g.value(v).mul_raw(g.value(v));
        let rhs = spec
            .q_bracket(v, &rest)
            .inv()?
            .mul_raw(&spec.q_bracket(&rest, v).inv()?);
        if lhs != rhs {
            bracket_match = CheckReport::fail(
                "g-square-matches-bracket",
                Witness::new(format!("v={v}"), lhs, rhs),
            );
            break;
        }
    }

    Ok(GConditions {
        squares,
        multiplicativity,
        bracket_match,
    })
}

/// The antipode as a matrix on the monomial basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AntipodeMap {
    spec: Arc<AlgebraSpec>,
    matrix: Matrix,
}

impl AntipodeMap {
    pub fn identity(spec: &Arc<AlgebraSpec>) -> Self {
        AntipodeMap {
            spec: Arc::clone(spec),
            matrix: Matrix::identity(spec.dim(), spec.field()),
        }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn apply(&self, x: &AlgElem) -> Result<AlgElem, QciError> {
        if x.spec() != &self.spec {
            return Err(QciError::SpecMismatch);
        }
        let image = self.matrix.mul_vec(&x.to_coeff_vec())?;
        AlgElem::from_coeff_vec(&self.spec, &image)
    }

    pub fn apply_basis(&self, v: &ExponentVec) -> Result<AlgElem, QciError> {
        self.apply(&AlgElem::basis_elem(&self.spec, v)?)
    }
}

/// The map a -> sum phi(t_1 a) t_2 induced by a functional, an element, and
/// a coproduct table, as a matrix on the monomial basis.
pub fn antipode(
    phi: &AlgElem,
    t: &AlgElem,
    d: &CoproductTable,
) -> Result<AntipodeMap, QciError> {
    let spec = d.spec();
    if phi.spec() != spec || t.spec() != spec {
        return Err(QciError::SpecMismatch);
    }
    let delta_t = d.delta(t)?;
    let dim = spec.dim();
    let mut matrix = Matrix::zero(dim, dim, spec.field());
    for (col, v) in spec.basis().iter().enumerate() {
        let mut image = AlgElem::zero(spec);
        for ((t1, t2), c) in delta_t.terms() {
            let prod = mono_mul(spec, t1, v)?;
            let weight = phi.pair_dual(&prod)?.mul_raw(c);
            image = image.add(&AlgElem::from_terms(spec, [(t2.clone(), weight)])?)?;
        }
        for (u, coeff) in image.terms() {
            matrix.set_entry(spec.index_of(u)?, col, coeff.clone());
        }
    }
    Ok(AntipodeMap {
        spec: Arc::clone(spec),
        matrix,
    })
}

/// Check that S is an algebra anti-homomorphism: S(1) = 1 and
/// S(x_u x_v) = S(x_v) S(x_u) over all basis pairs.
pub fn check_anti_algebra_hom(s: &AntipodeMap) -> Result<CheckReport, QciError> {
    let name = "s-anti-algebra";
    let spec = s.spec();
    let one = AlgElem::unit(spec);
    let s_one = s.apply(&one)?;
    if s_one != one {
        return Ok(CheckReport::fail(
            name,
            Witness::new("S(1)", &s_one, &one),
        ));
    }
    let basis = spec.basis();
    for u in &basis {
        for v in &basis {
            let lhs = s.apply(&mono_mul(spec, u, v)?)?;
            let rhs = s.apply_basis(v)?.mul(&s.apply_basis(u)?)?;
            if lhs != rhs {
                return Ok(CheckReport::fail(
                    name,
                    Witness::new(format!("u={u}, v={v}"), &lhs, &rhs),
                ));
            }
        }
    }
    Ok(CheckReport::pass(name))
}

/// Check that S is a coalgebra anti-homomorphism: eps(S(x)) = eps(x) and
/// delta(S(x)) = (S (x) S)(twist(delta(x))) over the basis.
pub fn check_anti_coalgebra_hom(
    s: &AntipodeMap,
    d: &CoproductTable,
) -> Result<CheckReport, QciError> {
    let name = "s-anti-coalgebra";
    let spec = d.spec();
    if s.spec() != spec {
        return Err(QciError::SpecMismatch);
    }
    for v in spec.basis() {
        let sv = s.apply_basis(&v)?;
        let eps_sv = d.counit(&sv)?;
        let eps_v = d.counit_at(spec.index_of(&v)?).clone();
        if eps_sv != eps_v {
            return Ok(CheckReport::fail(
                name,
                Witness::new(format!("v={v} (counit)"), eps_sv, eps_v),
            ));
        }
        let lhs = d.delta(&sv)?;
        let mut rhs = TensorElem::zero(spec);
        for ((t1, t2), c) in d.image(&v)?.terms() {
            let swapped = TensorElem::product(&s.apply_basis(t2)?, &s.apply_basis(t1)?)?;
            rhs = rhs.add(&swapped.scale(c))?;
        }
        if lhs != rhs {
            return Ok(CheckReport::fail(
                name,
                Witness::new(format!("v={v}"), &lhs, &rhs),
            ));
        }
    }
    Ok(CheckReport::pass(name))
}

/// Whether the antipode's fourth power is the identity matrix.
pub fn s_fourth_power_check(s: &AntipodeMap) -> Result<bool, QciError> {
    Ok(s.matrix().pow(4)?.is_identity())
}

/// A full candidate structure. The antipode is always derived from
/// (phi, t, coproduct), never supplied independently.
#[derive(Clone, Debug)]
pub struct BiFrobeniusCandidate {
    coproduct: CoproductTable,
    phi: AlgElem,
    t: AlgElem,
    s: AntipodeMap,
}

impl BiFrobeniusCandidate {
    pub fn new(
        coproduct: CoproductTable,
        phi: AlgElem,
        t: AlgElem,
    ) -> Result<Self, QciError> {
        let s = antipode(&phi, &t, &coproduct)?;
        Ok(BiFrobeniusCandidate {
            coproduct,
            phi,
            t,
            s,
        })
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        self.coproduct.spec()
    }

    pub fn coproduct(&self) -> &CoproductTable {
        &self.coproduct
    }

    pub fn phi(&self) -> &AlgElem {
        &self.phi
    }

    pub fn integral(&self) -> &AlgElem {
        &self.t
    }

    pub fn antipode(&self) -> &AntipodeMap {
        &self.s
    }
}

/// The canonical functional/element pair ((x_top)^*, x_top).
pub fn top_dual_pair(spec: &Arc<AlgebraSpec>) -> Result<(AlgElem, AlgElem), QciError> {
    let top = AlgElem::basis_elem(spec, &spec.top())?;
    Ok((top.clone(), top))
}

/// The pair (sum_v x_v^*, x_top) used with the signed coproduct.
pub fn full_support_pair(spec: &Arc<AlgebraSpec>) -> Result<(AlgElem, AlgElem), QciError> {
    let one = FieldScalar::one(spec.field());
    let phi = AlgElem::from_terms(
        spec,
        spec.basis().into_iter().map(|v| (v, one.clone())),
    )?;
    let t = AlgElem::basis_elem(spec, &spec.top())?;
    Ok((phi, t))
}

/// Run the complete axiom suite. The overall verdict is the conjunction of
/// the coalgebra-hypothesis checks (coassociativity, counit identities) and
/// the six structural checks; integral, cointegral, and fourth-power checks
/// are reported as informational. Every check runs even after a failure, so
/// the report always carries the full picture.
pub fn verify_bifrobenius(candidate: &BiFrobeniusCandidate) -> Result<VerificationReport, QciError> {
    let spec = candidate.spec();
    let d = candidate.coproduct();
    let phi = candidate.phi();
    let t = candidate.integral();
    let s = candidate.antipode();
    let mut report = VerificationReport::new();

    report.push(crate::coalgebra::check_coassociativity(d)?);
    report.push(crate::coalgebra::check_counit(d)?);
    report.push(check_counit_algebra_map(d)?);

    let one = AlgElem::unit(spec);
    if grouplike_check(d, &one)? {
        report.push(CheckReport::pass("unit-grouplike"));
    } else {
        let image = d.delta(&one)?;
        let square = TensorElem::product(&one, &one)?;
        report.push(CheckReport::fail(
            "unit-grouplike",
            Witness::new("delta(1)", &image, &square),
        ));
    }

    let frob = is_frobenius_functional(phi)?;
    if frob.nondegenerate {
        report.push(CheckReport::pass("frobenius-algebra"));
    } else {
        report.push(CheckReport::fail(
            "frobenius-algebra",
            Witness::new(
                "bilinear form phi(xy)",
                format!("rank {}", frob.form_rank),
                format!("rank {}", spec.dim()),
            ),
        ));
    }

    let cofrob = is_frobenius_coalgebra(d, t)?;
    if cofrob.spans {
        report.push(CheckReport::pass("frobenius-coalgebra"));
    } else {
        report.push(CheckReport::fail(
            "frobenius-coalgebra",
            Witness::new(
                "span of t <- x_v^*",
                format!("rank {}", cofrob.rank),
                format!("rank {}", spec.dim()),
            ),
        ));
    }

    report.push(check_anti_algebra_hom(s)?);
    report.push(check_anti_coalgebra_hom(s, d)?);

    report.push(right_integral_check(d, t)?.informational());
    report.push(right_cointegral_check(d, phi)?.informational());

    let s4 = s_fourth_power_check(s)?;
    report.push(
        if s4 {
            CheckReport::pass("s4-identity")
        } else {
            CheckReport::fail(
                "s4-identity",
                Witness::new("S^4", "not the identity matrix", "identity matrix"),
            )
        }
        .informational(),
    );

    if spec.field().characteristic() == 2 {
        report.note(
            "the field has characteristic 2, where -1 = 1 and the defining \
             relations degenerate to the commutative case",
        );
    }
    Ok(report)
}

/// t x = eps(x) t on the basis.
fn right_integral_check(d: &CoproductTable, t: &AlgElem) -> Result<CheckReport, QciError> {
    let name = "t-right-integral";
    let spec = d.spec();
    for v in spec.basis() {
        let x = AlgElem::basis_elem(spec, &v)?;
        let lhs = t.mul(&x)?;
        let rhs = t.scale(d.counit_at(spec.index_of(&v)?))?;
        if lhs != rhs {
            return Ok(CheckReport::fail(
                name,
                Witness::new(format!("v={v}"), &lhs, &rhs),
            ));
        }
    }
    Ok(CheckReport::pass(name))
}

/// x <- phi = phi(x) 1 on the basis.
fn right_cointegral_check(d: &CoproductTable, phi: &AlgElem) -> Result<CheckReport, QciError> {
    let name = "phi-right-cointegral";
    let spec = d.spec();
    let one = AlgElem::unit(spec);
    for v in spec.basis() {
        let x = AlgElem::basis_elem(spec, &v)?;
        let lhs = dual_right_action(&x, phi, d)?;
        let rhs = one.scale(&phi.pair_dual(&x)?)?;
        if lhs != rhs {
            return Ok(CheckReport::fail(
                name,
                Witness::new(format!("v={v}"), &lhs, &rhs),
            ));
        }
    }
    Ok(CheckReport::pass(name))
}

/// Outcome of the exhaustive search over free g-values.
#[derive(Clone, Debug)]
pub struct GSearch {
    /// Number of assignments examined: (p-1)^(dim - 2).
    pub examined: u128,
    /// Assignments whose induced candidate passes the full suite, in
    /// lexicographic order of the free values.
    pub passing: Vec<GAssignment>,
}

/// Try every assignment of nonzero values to the free g-slots over a prime
/// field, building the coproduct, deriving the antipode, and running the
/// full suite. The search refuses to start when the space exceeds `bound`.
pub fn exhaustive_g_search(
    spec: &Arc<AlgebraSpec>,
    bound: u128,
) -> Result<GSearch, QciError> {
    let Some(p) = spec.field().prime_modulus() else {
        return Err(QciError::Precondition(
            "the exhaustive g-search enumerates a prime field".into(),
        ));
    };
    let zero = ExponentVec::zeros(spec.generators());
    let top = spec.top();
    let free: Vec<ExponentVec> = spec
        .basis()
        .into_iter()
        .filter(|v| *v != zero && *v != top)
        .collect();
    let size = (p as u128 - 1)
        .checked_pow(free.len() as u32)
        .unwrap_or(u128::MAX);
    if size > bound {
        return Err(QciError::SearchSpaceTooLarge { size, bound });
    }

    let field = spec.field();
    let (phi, t) = top_dual_pair(spec)?;
    let mut passing = Vec::new();
    // Odometer over residues 1..p per free slot, last slot fastest, which
    // is lexicographic order on the value tuples.
    let mut digits = vec![1u64; free.len()];
    let mut examined: u128 = 0;
    loop {
        examined += 1;
        let mut values = BTreeMap::new();
        values.insert(zero.clone(), FieldScalar::one(field));
        values.insert(top.clone(), FieldScalar::one(field));
        for (slot, v) in free.iter().enumerate() {
            values.insert(v.clone(), FieldScalar::from_residue(field, digits[slot])?);
        }
        let g = GAssignment::new(spec, values)?;
        let table = primitive_coproduct(spec, &g)?;
        let candidate = BiFrobeniusCandidate::new(table, phi.clone(), t.clone())?;
        if verify_bifrobenius(&candidate)?.overall_pass() {
            passing.push(g);
        }

        let mut slot = free.len();
        loop {
            if slot == 0 {
                debug_assert_eq!(examined, size);
                return Ok(GSearch { examined, passing });
            }
            slot -= 1;
            digits[slot] += 1;
            if digits[slot] < p {
                break;
            }
            digits[slot] = 1;
        }
    }
}

/// Scope statement attached to every coefficient-system report: the system
/// is a set of necessary conditions for a bi-Frobenius structure on the
/// two-variable quantum exterior algebra, not a search over all coalgebra
/// structures.
pub const CIJ_SCOPE_NOTE: &str = "the enumeration solves the derived coefficient system for \
     the coproduct of the top monomial on A(q,2,2): an empty solution set \
     refutes every bi-Frobenius structure, while membership certifies only \
     these necessary conditions";

/// One solution of the coefficient system: (c11, c12, c21, c22).
pub type CijTuple = [FieldScalar; 4];

/// Enumerate all (c11, c12, c21, c22) in F_p^4 satisfying the coefficient
/// system the two-variable quantum exterior algebra forces on the coproduct
/// of its top monomial. Results are in lexicographic residue order.
pub fn aq_cij_solutions(q: &FieldScalar) -> Result<Vec<CijTuple>, QciError> {
    let desc = q.descriptor();
    let Some(p) = desc.prime_modulus() else {
        return Err(QciError::Precondition(
            "the coefficient-system enumeration runs over a prime field".into(),
        ));
    };
    if q.is_zero() {
        return Err(QciError::Precondition(
            "the commutation parameter q must be nonzero".into(),
        ));
    }
    let one = FieldScalar::one(desc);
    let q_inv = q.inv()?;
    let q_inv2 = q_inv.mul_raw(&q_inv);
    let q_sq = q.mul_raw(q);
    let one_minus_q = one.sub_raw(q);

    let mut solutions = Vec::new();
    let residues: Vec<FieldScalar> = (0..p)
        .map(|r| FieldScalar::from_residue(desc, r))
        .collect::<Result<_, _>>()?;
    for c11 in &residues {
        for c12 in &residues {
            for c21 in &residues {
                for c22 in &residues {
                    if cij_satisfies(
                        (c11, c12, c21, c22),
                        (&q_inv, &q_inv2, q, &q_sq, &one_minus_q),
                    ) {
                        solutions.push([
                            c11.clone(),
                            c12.clone(),
                            c21.clone(),
                            c22.clone(),
                        ]);
                    }
                }
            }
        }
    }
    Ok(solutions)
}

/// The three fixed-point equations plus the four side conditions.
fn cij_satisfies(
    c: (&FieldScalar, &FieldScalar, &FieldScalar, &FieldScalar),
    params: (
        &FieldScalar,
        &FieldScalar,
        &FieldScalar,
        &FieldScalar,
        &FieldScalar,
    ),
) -> bool {
    let (c11, c12, c21, c22) = c;
    let (q_inv, q_inv2, q, q_sq, one_minus_q) = params;
    let c21_sq = c21.mul_raw(c21);
    let c12_sq = c12.mul_raw(c12);

    // c11 = (1/q^2) c11 c21^2 - (1/q) c11 c12 c21 - (1/q) c11 c21^2
    //       + c22 c11^2
    let eq1 = q_inv2
        .mul_raw(c11)
        .mul_raw(&c21_sq)
        .sub_raw(&q_inv.mul_raw(c11).mul_raw(c12).mul_raw(c21))
        .sub_raw(&q_inv.mul_raw(c11).mul_raw(&c21_sq))
        .add_raw(&c22.mul_raw(c11).mul_raw(c11));
    if *c11 != eq1 {
        return false;
    }

    // c12 = (1/q^2) c11 c21 c22 - (1/q) c11 c12 c22 - (1/q) c12 c21^2
    //       + c22 c11 c12
    let eq2 = q_inv2
        .mul_raw(c11)
        .mul_raw(c21)
        .mul_raw(c22)
        .sub_raw(&q_inv.mul_raw(c11).mul_raw(c12).mul_raw(c22))
        .sub_raw(&q_inv.mul_raw(c12).mul_raw(&c21_sq))
        .add_raw(&c22.mul_raw(c11).mul_raw(c12));
    if *c12 != eq2 {
        return false;
    }

    // c21 = (1/q^2) c11 c21 c22 - (1/q) c21 c12^2 - (1/q) c11 c21 c22
    //       + c11 c12 c22
    let eq3 = q_inv2
        .mul_raw(c11)
        .mul_raw(c21)
        .mul_raw(c22)
        .sub_raw(&q_inv.mul_raw(c21).mul_raw(&c12_sq))
        .sub_raw(&q_inv.mul_raw(c11).mul_raw(c21).mul_raw(c22))
        .add_raw(&c11.mul_raw(c12).mul_raw(c22));
    if *c21 != eq3 {
        return false;
    }

    // (i) the 2x2 block is invertible
    if c11.mul_raw(c22) == c12.mul_raw(c21) {
        return false;
    }
    // (ii) (c21 c22)(1 - q) = 0
    if !c21.mul_raw(c22).mul_raw(one_minus_q).is_zero() {
        return false;
    }
    // (iii) c11 c12 (1 - q) = 0
    if !c11.mul_raw(c12).mul_raw(one_minus_q).is_zero() {
        return false;
    }
    // (iv) c12 c21 - q c11 c22 = q^2
    c12.mul_raw(c21).sub_raw(&q.mul_raw(c11).mul_raw(c22)) == *q_sq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QMatrix;
    use crate::coalgebra::{check_coassociativity, check_counit, primitive_space};
    use crate::scalar::FieldDescriptor;

    fn fp(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime_field(p).unwrap()
    }

    fn q_field() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn spec_uniform(desc: FieldDescriptor, a: &[u32], q: i64) -> Arc<AlgebraSpec> {
        let qm = QMatrix::constant(a.len(), &FieldScalar::from_integer(desc, q)).unwrap();
        AlgebraSpec::new(desc, a.to_vec(), qm).unwrap()
    }

    fn ev(components: &[u32]) -> ExponentVec {
        ExponentVec::new(components.to_vec())
    }

    #[test]
    fn primitive_coproduct_images() {
        let spec = spec_uniform(q_field(), &[2, 2], -1);
        let table = primitive_coproduct(&spec, &GAssignment::all_ones(&spec)).unwrap();
        let one = FieldScalar::one(q_field());

        let top_image = table.image(&ev(&[1, 1])).unwrap();
        let expected = TensorElem::from_terms(
            &spec,
            [
                (ev(&[0, 0]), ev(&[1, 1]), one.clone()),
                (ev(&[1, 1]), ev(&[0, 0]), one.clone()),
                (ev(&[0, 1]), ev(&[1, 0]), one.clone()),
                (ev(&[1, 0]), ev(&[0, 1]), one.clone()),
            ],
        )
        .unwrap();
        assert_eq!(*top_image, expected);

        let x1_image = table.image(&ev(&[1, 0])).unwrap();
        let expected = TensorElem::from_terms(
            &spec,
            [
                (ev(&[0, 0]), ev(&[1, 0]), one.clone()),
                (ev(&[1, 0]), ev(&[0, 0]), one.clone()),
            ],
        )
        .unwrap();
        assert_eq!(*x1_image, expected);

        for (i, v) in spec.basis().iter().enumerate() {
            assert_eq!(*table.counit_at(i), spec.counit_value(v));
        }
    }

    #[test]
    fn path_coproduct_images() {
        let spec = spec_uniform(q_field(), &[2, 2], -1);
        let table = path_coproduct(&spec).unwrap();
        assert_eq!(table.image(&ev(&[0, 0])).unwrap().term_count(), 1);
        let x1 = table.image(&ev(&[1, 0])).unwrap();
        assert_eq!(x1.term_count(), 2);
        // All four splits of (1,1).
        let top = table.image(&ev(&[1, 1])).unwrap();
        assert_eq!(top.term_count(), 4);
        for (v1, v2) in [
            (ev(&[0, 0]), ev(&[1, 1])),
            (ev(&[1, 1]), ev(&[0, 0])),
            (ev(&[1, 0]), ev(&[0, 1])),
            (ev(&[0, 1]), ev(&[1, 0])),
        ] {
            assert!(top.coeff(&v1, &v2).is_one());
        }
    }

    #[test]
    fn signed_coproduct_images() {
        let spec = spec_uniform(q_field(), &[2, 2], -1);
        let table = signed_coproduct(&spec).unwrap();
        assert_eq!(table.image(&ev(&[0, 0])).unwrap().term_count(), 1);
        let x1 = table.image(&ev(&[1, 0])).unwrap();
        let one = FieldScalar::one(q_field());
        let expected = TensorElem::from_terms(
            &spec,
            [
                (ev(&[0, 0]), ev(&[1, 0]), one.clone()),
                (ev(&[1, 0]), ev(&[0, 0]), one.clone()),
                (ev(&[1, 0]), ev(&[1, 0]), one.neg()),
            ],
        )
        .unwrap();
        assert_eq!(*x1, expected);
        assert!(check_counit(&table).unwrap().passed());
        assert!(check_coassociativity(&table).unwrap().passed());
    }

    #[test]
    fn solver_commutative_case_gives_all_ones() {
        let spec = spec_uniform(q_field(), &[2, 2], -1);
        let sol = solve_g(&spec).unwrap();
        assert_eq!(sol.h, vec![1, 1]);
        for (_, g) in sol.assignment.values() {
            assert!(g.is_one());
        }
    }

    #[test]
    fn solver_balances_signs_over_f5() {
        let spec = spec_uniform(fp(5), &[2, 2], 1);
        let sol = solve_g(&spec).unwrap();
        assert_eq!(sol.h, vec![-1, 1]);
        // Seeds: the value keyed by e2 is the first seed (top - e1 = e2).
        assert_eq!(sol.assignment.value(&ev(&[0, 1])).residue(), Some(3));
        assert_eq!(sol.assignment.value(&ev(&[1, 0])).residue(), Some(2));
        // Their product is the boundary value 1.
        let prod = sol
            .assignment
            .value(&ev(&[0, 1]))
            .mul(sol.assignment.value(&ev(&[1, 0])))
            .unwrap();
        assert!(prod.is_one());
        assert!(check_g_conditions(&spec, &sol.assignment)
            .unwrap()
            .all_pass());
    }

    #[test]
    fn solver_rejects_non_square_parameters() {
        // q = 2 has order 4 in F_5, so q^2 != 1.
        let desc = fp(5);
        let qm = QMatrix::new(vec![
            vec![
                FieldScalar::minus_one(desc),
                FieldScalar::from_integer(desc, 2),
            ],
            vec![
                FieldScalar::from_integer(desc, 3),
                FieldScalar::minus_one(desc),
            ],
        ])
        .unwrap();
        let spec = AlgebraSpec::new(desc, vec![2, 3], qm).unwrap();
        assert!(matches!(solve_g(&spec), Err(QciError::Precondition(_))));
    }

    #[test]
    fn solver_requires_a_root_when_not_commutative() {
        // q = 1 over Q needs sqrt(-1), which Q lacks.
        let spec = spec_uniform(q_field(), &[2, 2], 1);
        assert!(matches!(
            solve_g(&spec),
            Err(QciError::FieldLacksSqrtMinusOne(_))
        ));
        // The commutative case goes through over Q and F_3.
        assert!(solve_g(&spec_uniform(q_field(), &[2, 2], -1)).is_ok());
        assert!(solve_g(&spec_uniform(fp(3), &[3, 3], -1)).is_ok());
    }

    #[test]
    fn g_conditions_flag_bad_assignments() {
        // All-ones fails the square-matching condition when q = 1.
        let spec = spec_uniform(fp(5), &[2, 2], 1);
        let conditions = check_g_conditions(&spec, &GAssignment::all_ones(&spec)).unwrap();
        assert!(conditions.squares.passed());
        assert!(conditions.multiplicativity.passed());
        assert!(!conditions.bracket_match.passed());

        // Solver output passes everything (here over a=(3,3), q=-1).
        let spec = spec_uniform(q_field(), &[3, 3], -1);
        let sol = solve_g(&spec).unwrap();
        let conditions = check_g_conditions(&spec, &sol.assignment).unwrap();
        assert!(conditions.all_pass());
        for (_, g) in sol.assignment.values() {
            assert!(g.is_one());
        }
    }

    #[test]
    fn antipode_is_diagonal_with_bracket_weights() {
        let spec = spec_uniform(fp(5), &[2, 2], 1);
        let sol = solve_g(&spec).unwrap();
        let table = primitive_coproduct(&spec, &sol.assignment).unwrap();
        let (phi, t) = top_dual_pair(&spec).unwrap();
        let s = antipode(&phi, &t, &table).unwrap();
        let top = spec.top();
        for (col, v) in spec.basis().iter().enumerate() {
            let rest = top.checked_sub(v).unwrap();
            let expected = sol
                .assignment
                .value(&rest)
                .mul_raw(&spec.q_bracket(&rest, v));
            for (row, _) in spec.basis().iter().enumerate() {
                let entry = s.matrix().entry(row, col);
                if row == col {
                    assert_eq!(*entry, expected, "diagonal at v={v}");
                } else {
                    assert!(entry.is_zero(), "off-diagonal at ({row},{col})");
                }
            }
        }
        // S fixes 1 and the top monomial.
        assert_eq!(
            s.apply(&AlgElem::unit(&spec)).unwrap(),
            AlgElem::unit(&spec)
        );
        let top_elem = AlgElem::basis_elem(&spec, &top).unwrap();
        assert_eq!(s.apply(&top_elem).unwrap(), top_elem);
    }

    #[test]
    fn full_suite_passes_for_solved_assignments() {
        for (desc, a, q) in [
            (q_field(), &[2u32, 3][..], -1),
            (fp(5), &[2, 2][..], 1),
            (FieldDescriptor::gaussian_rationals(), &[2, 2, 2][..], 1),
        ] {
            let spec = spec_uniform(desc, a, q);
            let sol = solve_g(&spec).unwrap();
            let table = primitive_coproduct(&spec, &sol.assignment).unwrap();
            let (phi, t) = top_dual_pair(&spec).unwrap();
            let candidate = BiFrobeniusCandidate::new(table, phi, t).unwrap();
            let report = verify_bifrobenius(&candidate).unwrap();
            assert!(report.overall_pass(), "a={a:?} q={q} over {desc}:\n{report}");
            assert!(report.find("s4-identity").unwrap().passed());
            assert!(report.find("t-right-integral").unwrap().passed());
            assert!(report.find("phi-right-cointegral").unwrap().passed());
        }
    }

    #[test]
    fn anti_coalgebra_check_fails_for_all_ones_when_q_is_one() {
        let spec = spec_uniform(fp(5), &[2, 2], 1);
        let table = primitive_coproduct(&spec, &GAssignment::all_ones(&spec)).unwrap();
        let (phi, t) = top_dual_pair(&spec).unwrap();
        let s = antipode(&phi, &t, &table).unwrap();
        let report = check_anti_coalgebra_hom(&s, &table).unwrap();
        assert!(!report.passed());
        assert!(report.witness.is_some());
    }

    #[test]
    fn identity_antipode_fits_the_commutative_coproducts() {
        let spec = spec_uniform(q_field(), &[2, 3], -1);
        let table = path_coproduct(&spec).unwrap();
        let id = AntipodeMap::identity(&spec);
        assert!(check_anti_algebra_hom(&id).unwrap().passed());
        assert!(check_anti_coalgebra_hom(&id, &table).unwrap().passed());
    }

    #[test]
    fn path_coproduct_verifies_with_identity_antipode() {
        let spec = spec_uniform(q_field(), &[2, 3], -1);
        let table = path_coproduct(&spec).unwrap();
        let (phi, t) = top_dual_pair(&spec).unwrap();
        let candidate = BiFrobeniusCandidate::new(table, phi, t).unwrap();
        assert!(candidate.antipode().is_identity());
        let report = verify_bifrobenius(&candidate).unwrap();
        assert!(report.overall_pass(), "{report}");
        assert_eq!(
            primitive_space(candidate.coproduct()).unwrap().dim,
            spec.generators()
        );
    }

    #[test]
    fn signed_coproduct_verifies_on_exterior_algebras() {
        let spec = spec_uniform(q_field(), &[2, 2, 2], -1);
        let table = signed_coproduct(&spec).unwrap();
        let (phi, t) = full_support_pair(&spec).unwrap();
        let candidate = BiFrobeniusCandidate::new(table, phi, t).unwrap();
        assert!(candidate.antipode().is_identity());
        let report = verify_bifrobenius(&candidate).unwrap();
        assert!(report.overall_pass(), "{report}");
        assert_eq!(primitive_space(candidate.coproduct()).unwrap().dim, 0);
    }

    #[test]
    fn signed_coproduct_fails_beyond_exterior_bounds() {
        // a = (2,3): S(1) = 1 + x2^2, so S is not unital.
        let spec = spec_uniform(q_field(), &[2, 3], -1);
        let table = signed_coproduct(&spec).unwrap();
        let (phi, t) = full_support_pair(&spec).unwrap();
        let candidate = BiFrobeniusCandidate::new(table, phi, t).unwrap();
        let s_one = candidate
            .antipode()
            .apply(&AlgElem::unit(&spec))
            .unwrap();
        assert_eq!(s_one.to_string(), "1 + x2^2");
        let report = verify_bifrobenius(&candidate).unwrap();
        assert!(!report.overall_pass());
        let failed = report.find("s-anti-algebra").unwrap();
        assert!(!failed.passed());
        let witness = failed.witness.as_ref().unwrap();
        assert_eq!(witness.location, "S(1)");
        assert_eq!(witness.lhs, "1 + x2^2");
        assert_eq!(witness.rhs, "1");
    }

    #[test]
    fn exhaustive_search_matches_the_square_criterion() {
        // q = 2 squares to 4 != 1 over F_5: no assignment can pass.
        let desc = fp(5);
        let qm = QMatrix::new(vec![
            vec![
                FieldScalar::minus_one(desc),
                FieldScalar::from_integer(desc, 2),
            ],
            vec![
                FieldScalar::from_integer(desc, 3),
                FieldScalar::minus_one(desc),
            ],
        ])
        .unwrap();
        let spec = AlgebraSpec::new(desc, vec![2, 2], qm).unwrap();
        let search = exhaustive_g_search(&spec, 1_000_000).unwrap();
        assert_eq!(search.examined, 16);
        assert!(search.passing.is_empty());

        // q = 1: exactly the assignments with g^2 = -1 and product 1 pass.
        let spec = spec_uniform(desc, &[2, 2], 1);
        let search = exhaustive_g_search(&spec, 1_000_000).unwrap();
        assert_eq!(search.examined, 16);
        assert_eq!(search.passing.len(), 2);
        let solved = solve_g(&spec).unwrap().assignment;
        assert!(search.passing.contains(&solved));

        // q = -1 over F_3 (no sqrt(-1) needed in the commutative case).
        let spec = spec_uniform(fp(3), &[2, 2], -1);
        let search = exhaustive_g_search(&spec, 1_000_000).unwrap();
        assert_eq!(search.examined, 4);
        assert!(!search.passing.is_empty());
    }

    #[test]
    fn search_bound_is_enforced() {
        let spec = spec_uniform(fp(5), &[2, 2], 1);
        assert!(matches!(
            exhaustive_g_search(&spec, 10),
            Err(QciError::SearchSpaceTooLarge { size: 16, bound: 10 })
        ));
    }

    #[test]
    fn enumerations_require_a_prime_field() {
        let spec = spec_uniform(q_field(), &[2, 2], -1);
        assert!(matches!(
            exhaustive_g_search(&spec, 1_000_000),
            Err(QciError::Precondition(_))
        ));
        let q_rational = FieldScalar::one(q_field());
        assert!(matches!(
            aq_cij_solutions(&q_rational),
            Err(QciError::Precondition(_))
        ));
        let zero = FieldScalar::zero(fp(5));
        assert!(matches!(
            aq_cij_solutions(&zero),
            Err(QciError::Precondition(_))
        ));
    }

    #[test]
    fn cij_solutions_match_hand_analysis() {
        // q = 1 over F_3: c12^2 = -1 has no solution.
        let q1_f3 = FieldScalar::from_integer(fp(3), 1);
        assert!(aq_cij_solutions(&q1_f3).unwrap().is_empty());

        // q = 1 over F_5: c11 = 0, c21^2 = -1, c12 = -c21; the listed
        // equations leave c22 unconstrained.
        let q1_f5 = FieldScalar::from_integer(fp(5), 1);
        let sols = aq_cij_solutions(&q1_f5).unwrap();
        assert!(!sols.is_empty());
        let as_residues: Vec<[u64; 4]> = sols
            .iter()
            .map(|t| [0, 1, 2, 3].map(|k| t[k].residue().unwrap()))
            .collect();
        assert!(as_residues.contains(&[0, 2, 3, 0]));
        assert!(as_residues.contains(&[0, 3, 2, 0]));
        for [c11, c12, c21, _] in &as_residues {
            assert_eq!(*c11, 0);
            assert_eq!((c12 * c21) % 5, 1);
            assert_eq!((c12 * c12) % 5, 4);
        }

        // q = 2 over F_5 squares to 4 != 1: empty.
        let q2_f5 = FieldScalar::from_integer(fp(5), 2);
        assert!(aq_cij_solutions(&q2_f5).unwrap().is_empty());

        // q = -1 over F_5: both diagonal and antidiagonal families appear.
        let qm1_f5 = FieldScalar::from_integer(fp(5), -1);
        let sols = aq_cij_solutions(&qm1_f5).unwrap();
        assert_eq!(sols.len(), 6);
    }

    #[test]
    fn fourth_power_of_derived_antipodes() {
        let spec = spec_uniform(q_field(), &[2, 3], -1);
        let sol = solve_g(&spec).unwrap();
        let table = primitive_coproduct(&spec, &sol.assignment).unwrap();
        let (phi, t) = top_dual_pair(&spec).unwrap();
        let s = antipode(&phi, &t, &table).unwrap();
        assert!(s_fourth_power_check(&s).unwrap());
        assert!(s_fourth_power_check(&AntipodeMap::identity(&spec)).unwrap());

        let spec = spec_uniform(fp(5), &[2, 2], 1);
        let sol = solve_g(&spec).unwrap();
        let table = primitive_coproduct(&spec, &sol.assignment).unwrap();
        let (phi, t) = top_dual_pair(&spec).unwrap();
        let s = antipode(&phi, &t, &table).unwrap();
        assert!(s_fourth_power_check(&s).unwrap());
    }

    #[test]
    fn rescaling_preserves_the_antipode_and_the_verdict() {
        let spec = spec_uniform(fp(5), &[2, 2], -1);
        let sol = solve_g(&spec).unwrap();
        let table = primitive_coproduct(&spec, &sol.assignment).unwrap();
        let (phi, t) = top_dual_pair(&spec).unwrap();
        let base = BiFrobeniusCandidate::new(table.clone(), phi.clone(), t.clone()).unwrap();
        for c in [2i64, 3, 4] {
            let c = FieldScalar::from_integer(fp(5), c);
            let scaled = BiFrobeniusCandidate::new(
                table.clone(),
                phi.scale(&c).unwrap(),
                t.scale(&c.inv().unwrap()).unwrap(),
            )
            .unwrap();
            assert_eq!(scaled.antipode().matrix(), base.antipode().matrix());
            assert!(verify_bifrobenius(&scaled).unwrap().overall_pass());
        }
    }
}
